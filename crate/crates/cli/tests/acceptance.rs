//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use uniform_bounds::asymptotic::{theta_bound, RateKind};
use uniform_bounds::closed_form::{
    closed_form_k_bound, defect2_check, min_n_scan, two_support_check, Parity,
};
use uniform_bounds::enumerators::shadow_transform;
use uniform_bounds::exact::{binomial, int, Rational};
use uniform_bounds::lp::{
    build_primal, solve_primal, two_support_certificate, verify_farkas, verify_point,
    FeasibilityResult, SolveOptions,
};
use uniform_bounds::shadow::{
    alpha_i0, alpha_i0_oracle, alpha_offdiag, gleason_from_weight, lagrange_burmann_oracle,
    scan_refinement, shadow_from_gleason, GleasonCoefficients,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn within(limit: Duration, elapsed: Duration, o: Outcome) -> Outcome {
    if o.ok && elapsed > limit {
        fail(format!(
            "{} but took {elapsed:.2?} (limit {limit:?})",
            o.detail
        ))
    } else {
        o
    }
}

// (q, l, n even, n odd)
const DEFECT_12: [(u32, u32, u32, u32); 8] = [
    (4, 1, 66, 83),
    (4, 2, 100, 125),
    (5, 1, 102, 123),
    (5, 2, 154, 185),
    (6, 1, 146, 171),
    (6, 2, 220, 257),
    (7, 1, 198, 227),
    (7, 2, 298, 341),
];

const DEFECT_34: [(u32, u32, u32, u32); 8] = [
    (4, 3, 144, 169),
    (4, 4, 190, 215),
    (5, 3, 224, 261),
    (5, 4, 296, 333),
    (6, 3, 322, 373),
    (6, 4, 428, 477),
    (7, 3, 438, 505),
    (7, 4, 582, 647),
];

fn threshold_table(rows: &[(u32, u32, u32, u32)]) -> Outcome {
    let mut mismatches = Vec::new();
    for &(q, l, even, odd) in rows {
        for (parity, want) in [(Parity::Even, even), (Parity::Odd, odd)] {
            match min_n_scan(q, l, parity) {
                Ok(s) if s.n == want => {}
                Ok(s) => mismatches.push(format!("q={q} l={l} {parity:?}: {} != {want}", s.n)),
                Err(e) => mismatches.push(format!("q={q} l={l} {parity:?}: {e}")),
            }
        }
    }
    if mismatches.is_empty() {
        pass(format!(
            "{}/{} thresholds exact",
            rows.len() * 2,
            rows.len() * 2
        ))
    } else {
        fail(mismatches.join("; "))
    }
}

fn criterion_1() -> Outcome {
    threshold_table(&DEFECT_12)
}

fn criterion_2() -> Outcome {
    threshold_table(&DEFECT_34)
}

fn criterion_3() -> Outcome {
    let want = ["0.479", "0.487", "0.491", "0.494", "0.495", "0.496"];
    let mut bad = Vec::new();
    for (q, w) in (4..=9u32).zip(want) {
        match theta_bound(q, 3) {
            Ok(b) => {
                let certified = b.kind == RateKind::Certified
                    && b.margin().is_some_and(|m| m > &Rational::zero())
                    && b.below_theta
                        .as_ref()
                        .is_some_and(|iv| iv.hi < Rational::zero());
                if b.theta_decimal() != w || !certified {
                    bad.push(format!(
                        "q={q}: {} (certified: {certified})",
                        b.theta_decimal()
                    ));
                }
            }
            Err(e) => bad.push(format!("q={q}: {e}")),
        }
    }
    if bad.is_empty() {
        pass("6/6 values with certified sign on both sides")
    } else {
        fail(bad.join("; "))
    }
}

const IMPROVE5: [(u32, u32); 15] = [
    (180, 87),
    (182, 88),
    (185, 89),
    (187, 90),
    (224, 108),
    (226, 109),
    (228, 110),
    (261, 126),
    (263, 127),
    (265, 128),
    (267, 129),
    (269, 130),
    (271, 131),
    (273, 132),
    (275, 133),
];

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    for (n, want) in IMPROVE5 {
        let decided = if n <= 187 {
            defect2_check(n, 5).map(|v| v.is_nonexistent() && n / 2 - 3 == want)
        } else {
            let fires = two_support_check(n, want + 1, 5).map(|v| v.is_nonexistent());
            let silent = two_support_check(n, want, 5).map(|v| !v.is_nonexistent());
            fires.and_then(|a| silent.map(|b| a && b))
        };
        let combined = closed_form_k_bound(n, 5).map(|(k, _)| k);
        match (decided, combined) {
            (Ok(true), Ok(k)) if k == want => {}
            (d, c) => bad.push(format!(
                "n={n}: deciding rule {d:?}, combined bound {c:?}, want {want}"
            )),
        }
    }
    if bad.is_empty() {
        pass("15/15 bounds exact")
    } else {
        fail(bad.join("; "))
    }
}

// (q, l, minimal m per residue)
const SHADOW_ROWS: [(u32, u32, &[u32]); 4] = [
    (3, 0, &[3, 4, 6, 7, 10, 3, 5, 6, 7, 11, 3, 5, 6, 8]),
    (
        3,
        2,
        &[14, 23, 34, 45, 57, 16, 26, 37, 48, 60, 19, 29, 41, 52],
    ),
    (4, 0, &[6, 5, 4, 5, 7, 5, 4, 4, 6, 5, 4, 4, 5, 5, 4, 3, 4]),
    (
        4,
        2,
        &[
            9, 17, 27, 36, 46, 15, 24, 34, 43, 12, 21, 31, 41, 10, 19, 28, 38,
        ],
    ),
];

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    let mut cells = 0;
    for (q, l, want) in SHADOW_ROWS {
        for (r, &m) in want.iter().enumerate() {
            cells += 1;
            match scan_refinement(q, r as u32, l, 60) {
                Ok(s) if s.minimal_m == Some(m) => {}
                Ok(s) => bad.push(format!("q={q} l={l} r={r}: {:?} != {m}", s.minimal_m)),
                Err(e) => bad.push(format!("q={q} l={l} r={r}: {e}")),
            }
        }
    }
    if bad.is_empty() {
        pass(format!("{cells}/{cells} cells exact at m_max = 60"))
    } else {
        fail(bad.join("; "))
    }
}

fn criterion_6() -> Outcome {
    let mut grid = 0;
    for q in 2..=7u32 {
        for n in 2..=60u32 {
            for i in 1..=n / 2 {
                grid += 1;
                if alpha_i0(n, q, i).ok() != alpha_i0_oracle(n, q, i).ok() {
                    return fail(format!("alpha_i0 mismatch at n={n} q={q} i={i}"));
                }
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..50 {
        let n = rng.gen_range(6..=80u32);
        let q = rng.gen_range(2..=9u32);
        let k = rng.gen_range(0..=n / 2 - 2);
        if alpha_offdiag(n, q, k).ok() != lagrange_burmann_oracle(n, q, k).ok() {
            return fail(format!("off-diagonal mismatch at n={n} q={q} k={k}"));
        }
    }
    for _ in 0..200 {
        let n = rng.gen_range(1..=16usize);
        let q = rng.gen_range(2..=6u32);
        let c = (0..=n / 2)
            .map(|_| Rational::new(rng.gen_range(-40..=40).into(), rng.gen_range(1..=8).into()))
            .collect();
        let a = GleasonCoefficients::new(n, q, c).and_then(|g| g.to_weight());
        let same = a.as_ref().ok().and_then(|a| {
            let via = gleason_from_weight(a)
                .and_then(|g| shadow_from_gleason(&g))
                .ok()?;
            Some(via == shadow_transform(a).ok()?)
        });
        if same != Some(true) {
            return fail(format!("shadow pipeline mismatch at n={n} q={q}"));
        }
    }
    pass(format!(
        "{grid} alpha grid points, 50 off-diagonal triples, 200 enumerators: 0 mismatches"
    ))
}

fn criterion_7() -> Outcome {
    let opts = SolveOptions::default();
    // Rows i = 5, 6 of U(8,4,2) are equalities with unit diagonal:
    // A_5 = 3 C(8,5) and A_6 = 15 C(8,6) - C(3,1) A_5.
    let a5 = int(3) * binomial(8, 5);
    let a6 = int(15) * binomial(8, 6) - int(3) * &a5;
    let lp = build_primal(8, 4, 2).unwrap();
    let mut x = vec![Rational::zero(); lp.num_vars];
    for (r, row) in lp.rows.iter().enumerate() {
        let partial: Rational = (0..r).map(|j| &row.coeffs[j] * &x[j]).sum();
        x[r] = (&row.rhs - partial) / &row.coeffs[r];
    }
    if a6 != int(-84) || x[..2] != [a5, a6] {
        return fail(format!("U(8,4,2) forced values {:?}", &x[..2]));
    }
    if solve_primal(8, 4, 2, &opts).map(|r| r.is_feasible()).ok() != Some(false) {
        return fail("U(8,4,2) not reported infeasible");
    }
    for (n, k) in [(5, 2), (6, 3)] {
        if solve_primal(n, k, 2, &opts).map(|r| r.is_feasible()).ok() != Some(true) {
            return fail(format!("U({n},{k},2) not reported feasible"));
        }
    }
    let mut programs = 0;
    let mut dual_checked = 0;
    for q in [2u32, 3] {
        for n in 1..=40u32 {
            for k in 0..=n / 2 {
                programs += 1;
                let lp = build_primal(n, k, q).unwrap();
                let verdict = match solve_primal(n, k, q, &opts) {
                    Ok(v) => v,
                    Err(e) => return fail(format!("U({n},{k},{q}): {e}")),
                };
                let ok = match &verdict {
                    FeasibilityResult::Feasible { point } => {
                        verify_point(&lp, point).unwrap_or(false)
                    }
                    FeasibilityResult::Infeasible { certificate } => {
                        verify_farkas(&lp, certificate)
                            .map(|s| s.is_valid())
                            .unwrap_or(false)
                    }
                };
                if !ok {
                    return fail(format!("U({n},{k},{q}) witness does not re-verify"));
                }
                if let Ok(out) = two_support_certificate(n, k, q) {
                    if out.certificate.is_some() {
                        dual_checked += 1;
                        if verdict.is_feasible() {
                            return fail(format!(
                                "dual certificate but feasible LP at ({n},{k},{q})"
                            ));
                        }
                    }
                }
            }
        }
    }
    pass(format!("{programs} programs re-verified, {dual_checked} dual certificates consistent, 0 contradictions"))
}

fn criterion_8() -> Result<Outcome, String> {
    let bin = env!("CARGO_BIN_EXE_uniform-bounds");
    let dir =
        std::env::temp_dir().join(format!("uniform-bounds-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let cert = dir.join("cert-224-109-5.json");
    let emit = Command::new(bin)
        .args([
            "check",
            "--q",
            "5",
            "--n",
            "224",
            "--k",
            "109",
            "--method",
            "dual",
            "--certificate-out",
        ])
        .arg(&cert)
        .output()
        .map_err(|e| e.to_string())?;
    if emit.status.code() != Some(10) {
        return Ok(fail(format!("check exited with {:?}", emit.status.code())));
    }
    let start = Instant::now();
    let verify = Command::new(bin)
        .args(["verify", "--certificate"])
        .arg(&cert)
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let _ = std::fs::remove_dir_all(&dir);
    if verify.status.code() != Some(0) {
        return Ok(fail(format!(
            "verify exited with {:?}: {}",
            verify.status.code(),
            String::from_utf8_lossy(&verify.stdout)
        )));
    }
    Ok(within(
        Duration::from_secs(1),
        elapsed,
        pass(format!("fresh-process verify in {elapsed:.2?}")),
    ))
}

type Criterion = (&'static str, Duration, Box<dyn Fn() -> Outcome>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            "1 defect l in {1,2} thresholds",
            Duration::from_secs(1),
            Box::new(criterion_1),
        ),
        (
            "2 defect l in {3,4} thresholds",
            Duration::from_secs(1),
            Box::new(criterion_2),
        ),
        (
            "3 asymptotic rate bounds",
            Duration::from_secs(5),
            Box::new(criterion_3),
        ),
        (
            "4 q=5 improvement row",
            Duration::from_secs(60),
            Box::new(criterion_4),
        ),
        (
            "5 shadow tables at desk scale",
            Duration::from_secs(600),
            Box::new(criterion_5),
        ),
        (
            "6 oracle equivalences",
            Duration::from_secs(600),
            Box::new(criterion_6),
        ),
        (
            "7 LP soundness and weak duality",
            Duration::from_secs(1200),
            Box::new(criterion_7),
        ),
        (
            "8 certificate audit path",
            Duration::from_secs(60),
            Box::new(|| criterion_8().unwrap_or_else(fail)),
        ),
    ];
    let mut failures = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let outcome = within(limit, start.elapsed(), outcome);
        let tag = if outcome.ok { "PASS" } else { "FAIL" };
        if !outcome.ok {
            failures += 1;
        }
        println!(
            "[{tag}] criterion {name}: {} ({:.2?})",
            outcome.detail,
            start.elapsed()
        );
    }
    println!("acceptance: {failures} failed");
    if failures > 0 {
        std::process::exit(1);
    }
}
