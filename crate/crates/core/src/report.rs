//! Aggregation of every applicable method into one report per query.

use serde::{Deserialize, Serialize};

use crate::closed_form::{
    corollary_l_check, defect1_check, defect2_check, scott_check, singleton_check,
    two_support_check, BoundVerdict, Method, Outcome,
};
use crate::error::{Error, Result};
use crate::lp::{
    solve_primal, CertificateJson, CertificateStatus, FeasibilityResult, SolveOptions,
};
use crate::shadow::prop1_check;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    Singleton,
    Scott,
    Defect,
    Corollary,
    Dual,
    Lp,
    Shadow,
    All,
}

impl MethodChoice {
    pub const EACH: [MethodChoice; 7] = [
        MethodChoice::Singleton,
        MethodChoice::Scott,
        MethodChoice::Defect,
        MethodChoice::Corollary,
        MethodChoice::Dual,
        MethodChoice::Lp,
        MethodChoice::Shadow,
    ];

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "singleton" => MethodChoice::Singleton,
            "scott" => MethodChoice::Scott,
            "defect" => MethodChoice::Defect,
            "corollary" => MethodChoice::Corollary,
            "dual" => MethodChoice::Dual,
            "lp" => MethodChoice::Lp,
            "shadow" => MethodChoice::Shadow,
            "all" => MethodChoice::All,
            other => return Err(Error::Malformed(format!("unknown method {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Query {
    pub n: u32,
    pub k: u32,
    pub q: u32,
}

impl Query {
    pub fn new(n: u32, k: u32, q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::OutOfRange {
                what: "q",
                value: q as i64,
                range: "[2, inf)".into(),
            });
        }
        if n < 1 {
            return Err(Error::OutOfRange {
                what: "n",
                value: n as i64,
                range: "[1, inf)".into(),
            });
        }
        Ok(Query { n, k, q })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub method: Method,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub query: Query,
    pub verdicts: Vec<BoundVerdict>,
    /// First method, in evaluation order, that proved non-existence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub best: Option<Method>,
    pub certificates: Vec<CertificateJson>,
    pub provenance: Vec<Provenance>,
}

impl BoundReport {
    pub fn is_nonexistent(&self) -> bool {
        self.best.is_some()
    }

    pub fn best_label(&self) -> String {
        match self.best {
            Some(m) => format!("nonexistent ({})", method_name(m)),
            None => "inconclusive".into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    /// Re-checks every embedded certificate without any solver.
    pub fn verify_certificates(&self) -> Result<Vec<CertificateStatus>> {
        self.certificates
            .iter()
            .map(CertificateJson::verify)
            .collect()
    }

    pub fn to_text(&self) -> String {
        let Query { n, k, q } = self.query;
        let mut out = format!("n = {n}, k = {k}, q = {q}: {}\n", self.best_label());
        for v in &self.verdicts {
            out.push_str(&format!(
                "  {:<14} {}",
                method_name(v.method),
                outcome_name(v.outcome)
            ));
            if let Some(r) = &v.reason {
                out.push_str(&format!(" ({r})"));
            }
            out.push('\n');
            for t in &v.trace {
                out.push_str(&format!("      {} = {}\n", t.label, t.value));
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "k", "q", "method", "outcome", "reason"])
            .expect("in-memory write");
        for v in &self.verdicts {
            w.write_record([
                v.n.to_string(),
                v.k.to_string(),
                v.q.to_string(),
                method_name(v.method).to_string(),
                outcome_name(v.outcome).to_string(),
                v.reason.clone().unwrap_or_default(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("fields are UTF-8")
    }
}

pub fn method_name(m: Method) -> &'static str {
    match m {
        Method::Singleton => "singleton",
        Method::Scott => "scott",
        Method::Defect1 => "defect1",
        Method::Defect2 => "defect2",
        Method::CorollaryL => "corollary",
        Method::TwoSupport => "dual",
        Method::ShadowProp1 => "shadow",
        Method::LinearProgram => "lp",
    }
}

pub fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Nonexistent => "nonexistent",
        Outcome::Inconclusive => "inconclusive",
        Outcome::NotApplicable => "not-applicable",
        Outcome::Undecided => "undecided",
    }
}

fn not_applicable(query: Query, method: Method, reason: &str) -> BoundVerdict {
    BoundVerdict::new(query.n, query.k, query.q, method, Outcome::NotApplicable).with_reason(reason)
}

fn lp_verdict(query: Query, opts: &SolveOptions) -> Result<BoundVerdict> {
    let Query { n, k, q } = query;
    let base = |outcome| BoundVerdict::new(n, k, q, Method::LinearProgram, outcome);
    match solve_primal(n, k, q, opts) {
        Ok(FeasibilityResult::Infeasible { certificate }) => {
            let mut v = base(Outcome::Nonexistent).with_reason("Farkas certificate");
            v.certificate = Some(CertificateJson::from_farkas(n, k, q, &certificate));
            Ok(v)
        }
        Ok(FeasibilityResult::Feasible { .. }) => {
            Ok(base(Outcome::Inconclusive).with_reason("LP feasible"))
        }
        Err(Error::Budget { limit }) => {
            Ok(base(Outcome::Undecided)
                .with_reason(format!("budget: pivot limit {limit} exhausted")))
        }
        Err(Error::OutOfRange { what: "n", .. }) => Ok(base(Outcome::Undecided).with_reason(
            format!("budget: n = {n} above the LP size cap {}", opts.max_n),
        )),
        Err(e) => Err(e),
    }
}

fn run(query: Query, choice: MethodChoice, opts: &SolveOptions) -> Result<Vec<BoundVerdict>> {
    let Query { n, k, q } = query;
    let half = n / 2;
    if choice == MethodChoice::Singleton {
        let mut v = singleton_check(n, k);
        v.q = q;
        return Ok(vec![v]);
    }
    if k > half {
        let method = match choice {
            MethodChoice::Scott => Method::Scott,
            MethodChoice::Defect => Method::Defect1,
            MethodChoice::Corollary => Method::CorollaryL,
            MethodChoice::Dual => Method::TwoSupport,
            MethodChoice::Lp => Method::LinearProgram,
            _ => Method::ShadowProp1,
        };
        return Ok(vec![not_applicable(query, method, "k exceeds floor(n/2)")]);
    }
    let l = half - k;
    Ok(match choice {
        MethodChoice::Scott if l == 0 => vec![scott_check(n, q)?],
        MethodChoice::Scott => vec![not_applicable(query, Method::Scott, "k below floor(n/2)")],
        MethodChoice::Defect => match l {
            1 => vec![defect1_check(n, q)?],
            2 => vec![defect2_check(n, q)?],
            _ => vec![not_applicable(
                query,
                Method::Defect1,
                "defect must be 1 or 2",
            )],
        },
        MethodChoice::Corollary => vec![corollary_l_check(n, q, l)?],
        MethodChoice::Dual => vec![two_support_check(n, k, q)?],
        MethodChoice::Lp => vec![lp_verdict(query, opts)?],
        MethodChoice::Shadow => vec![prop1_check(n, k, q)],
        MethodChoice::Singleton | MethodChoice::All => unreachable!(),
    })
}

/// Runs the requested methods in a fixed order and aggregates them.
pub fn evaluate(
    query: Query,
    methods: &[MethodChoice],
    opts: &SolveOptions,
) -> Result<BoundReport> {
    let mut chosen: Vec<MethodChoice> = if methods.contains(&MethodChoice::All) {
        MethodChoice::EACH.to_vec()
    } else {
        MethodChoice::EACH
            .iter()
            .copied()
            .filter(|m| methods.contains(m))
            .collect()
    };
    chosen.dedup();
    let mut verdicts = Vec::new();
    for choice in chosen {
        verdicts.extend(run(query, choice, opts)?);
    }
    let best = verdicts
        .iter()
        .find(|v| v.is_nonexistent())
        .map(|v| v.method);
    let certificates = verdicts
        .iter()
        .filter_map(|v| v.certificate.clone())
        .collect();
    let provenance = verdicts
        .iter()
        .map(|v| Provenance {
            method: v.method,
            source: v.method.provenance().to_string(),
        })
        .collect();
    Ok(BoundReport {
        query,
        verdicts,
        best,
        certificates,
        provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(n: u32, k: u32, q: u32, m: MethodChoice) -> BoundReport {
        evaluate(Query::new(n, k, q).unwrap(), &[m], &SolveOptions::default()).unwrap()
    }

    #[test]
    fn ame8_qubits_by_scott_and_lp() {
        let r = report(8, 4, 2, MethodChoice::All);
        assert_eq!(r.best, Some(Method::Scott));
        let lp = r
            .verdicts
            .iter()
            .find(|v| v.method == Method::LinearProgram)
            .unwrap();
        assert!(lp.is_nonexistent());
        assert_eq!(r.certificates.len(), 1);
        assert!(r
            .verify_certificates()
            .unwrap()
            .iter()
            .all(CertificateStatus::is_valid));
    }

    #[test]
    fn dual_report_round_trips() {
        let r = report(224, 109, 5, MethodChoice::Dual);
        assert_eq!(r.best, Some(Method::TwoSupport));
        let back = BoundReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(back.verify_certificates().unwrap()[0].is_valid());
    }

    #[test]
    fn shadow_report() {
        let r = report(42, 19, 3, MethodChoice::Shadow);
        assert_eq!(r.best, Some(Method::ShadowProp1));
        assert!(r.to_text().contains("nonexistent (shadow)"));
    }

    #[test]
    fn inconclusive_and_caps() {
        let r = report(6, 3, 2, MethodChoice::All);
        assert!(!r.is_nonexistent());
        assert_eq!(r.best_label(), "inconclusive");
        let capped = evaluate(
            Query::new(140, 60, 2).unwrap(),
            &[MethodChoice::Lp],
            &SolveOptions::default(),
        )
        .unwrap();
        assert_eq!(capped.verdicts[0].outcome, Outcome::Undecided);
        let csv = r.to_csv();
        assert!(csv.starts_with("n,k,q,method,outcome,reason\n"));
        assert_eq!(csv.lines().count(), r.verdicts.len() + 1);
    }

    #[test]
    fn singleton_violations() {
        let r = report(4, 3, 2, MethodChoice::All);
        assert_eq!(r.best, Some(Method::Singleton));
        assert!(r.verdicts[1..]
            .iter()
            .all(|v| v.outcome == Outcome::NotApplicable));
        assert!(Query::new(4, 1, 1).is_err());
        assert!(MethodChoice::parse("nope").is_err());
    }
}
