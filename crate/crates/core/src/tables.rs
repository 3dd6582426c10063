//! Regeneration of the published tables from the engine.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotic::{theta_bound, RateKind};
use crate::closed_form::{closed_form_k_bound, min_n_scan, Parity};
use crate::error::{Error, Result};
use crate::exact::rational_json;
use crate::report::method_name;
use crate::shadow::{modulus, refinement_depth, scan_refinement, ScanOutcome};

/// The `m` bound the published shadow tables were computed to.
pub const FULL_M_MAX: u32 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableName {
    Defect12,
    Defect34,
    Asymptotic,
    Shadow3,
    Shadow4,
    Shadow5,
    Improve5,
    Improve4,
}

impl TableName {
    pub const ALL: [TableName; 8] = [
        TableName::Defect12,
        TableName::Defect34,
        TableName::Asymptotic,
        TableName::Shadow3,
        TableName::Shadow4,
        TableName::Shadow5,
        TableName::Improve5,
        TableName::Improve4,
    ];

    pub fn parse(s: &str) -> Result<Self> {
        TableName::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown table {s:?}")))
    }

    pub fn name(self) -> &'static str {
        match self {
            TableName::Defect12 => "defect12",
            TableName::Defect34 => "defect34",
            TableName::Asymptotic => "asymptotic",
            TableName::Shadow3 => "shadow3",
            TableName::Shadow4 => "shadow4",
            TableName::Shadow5 => "shadow5",
            TableName::Improve5 => "improve5",
            TableName::Improve4 => "improve4",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Markdown,
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "markdown" | "md" | "text" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Malformed(format!("unknown format {other:?}"))),
        }
    }
}

/// A rendered table: a grid for Markdown plus flat records for CSV.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
    pub csv_header: Vec<String>,
    pub records: Vec<Vec<String>>,
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Markdown => self.to_markdown(),
            Format::Csv => self.to_csv(),
            Format::Json => serde_json::to_string_pretty(self).expect("table serializes") + "\n",
        }
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("### {}\n\n", self.title);
        out.push_str(&format!("| {} |\n", self.header.join(" | ")));
        out.push_str(&format!("|{}\n", "---|".repeat(self.header.len())));
        for row in &self.rows {
            out.push_str(&format!("| {} |\n", row.join(" | ")));
        }
        for note in &self.notes {
            out.push_str(&format!("\n{note}\n"));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.csv_header).expect("in-memory write");
        for r in &self.records {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("fields are UTF-8")
    }

    /// Cell at (row label, column header), for tests and audits.
    pub fn cell(&self, row: &str, column: &str) -> Option<&str> {
        let c = self.header.iter().position(|h| h == column)?;
        let r = self.rows.iter().find(|r| r[0] == row)?;
        r.get(c).map(String::as_str)
    }
}

fn strs<const N: usize>(a: [&str; N]) -> Vec<String> {
    a.iter().map(|s| s.to_string()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableOptions {
    /// Upper end of the `m` scan for shadow tables.
    pub m_max: u32,
    /// Deepest `l` row for shadow tables; `None` means the published rows.
    pub l_max: Option<u32>,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            m_max: FULL_M_MAX,
            l_max: None,
        }
    }
}

pub fn generate(name: TableName, opts: &TableOptions) -> Result<Table> {
    match name {
        TableName::Defect12 => defect_table(name, &[1, 2]),
        TableName::Defect34 => defect_table(name, &[3, 4]),
        TableName::Asymptotic => asymptotic_table(4..=9),
        TableName::Shadow3 => shadow_table(3, opts),
        TableName::Shadow4 => shadow_table(4, opts),
        TableName::Shadow5 => shadow_table(5, opts),
        TableName::Improve5 => improve5_table(),
        TableName::Improve4 => improve4_table(),
    }
}

fn defect_table(name: TableName, ls: &[u32]) -> Result<Table> {
    let cells: Vec<(u32, u32, Parity)> = (4..=7u32)
        .flat_map(|q| {
            ls.iter()
                .flat_map(move |&l| [(q, l, Parity::Even), (q, l, Parity::Odd)])
        })
        .collect();
    let scans = cells
        .par_iter()
        .map(|&(q, l, p)| min_n_scan(q, l, p))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for pair in scans.chunks(2) {
        let (even, odd) = (&pair[0], &pair[1]);
        rows.push(vec![
            even.q.to_string(),
            even.l.to_string(),
            format!("n >= {}", even.n),
            format!("n >= {}", odd.n),
        ]);
        for s in [even, odd] {
            records.push(vec![
                s.q.to_string(),
                s.l.to_string(),
                if s.parity == Parity::Even {
                    "even"
                } else {
                    "odd"
                }
                .to_string(),
                s.n.to_string(),
                method_name(s.method).to_string(),
            ]);
        }
    }
    let range = if ls[0] == 1 { "{1,2}" } else { "{3,4}" };
    Ok(Table {
        name: name.name().into(),
        title: format!("Non-existence of AME states of defect l in {range}"),
        header: strs(["q", "l", "n even", "n odd"]),
        rows,
        notes: vec![
            "Each entry is the smallest n of that parity from which on the state cannot exist."
                .into(),
        ],
        csv_header: strs(["q", "l", "parity", "n_min", "method"]),
        records,
    })
}

pub fn asymptotic_table(qs: std::ops::RangeInclusive<u32>) -> Result<Table> {
    let qs: Vec<u32> = qs.collect();
    let bounds = qs
        .par_iter()
        .map(|&q| theta_bound(q, 3))
        .collect::<Result<Vec<_>>>()?;
    let mut header = vec!["q".to_string()];
    let mut row = vec!["k/n <=".to_string()];
    let mut records = Vec::new();
    for b in &bounds {
        header.push(b.q.to_string());
        row.push(b.theta_decimal());
        let (margin, error) = match (b.margin(), b.error()) {
            (Some(m), Some(e)) => (rational_json::display(m), rational_json::display(&e)),
            _ => (String::new(), String::new()),
        };
        records.push(vec![
            b.q.to_string(),
            b.theta_decimal(),
            if b.kind == RateKind::Certified {
                "certified"
            } else {
                "trivial"
            }
            .to_string(),
            margin,
            error,
            b.weaker_than_shadow.to_string(),
        ]);
    }
    Ok(Table {
        name: TableName::Asymptotic.name().into(),
        title: "Asymptotic bounds on k-uniform states".into(),
        header,
        rows: vec![row],
        notes: vec![],
        csv_header: strs([
            "q",
            "theta",
            "kind",
            "margin",
            "error",
            "weaker_than_shadow",
        ]),
        records,
    })
}

fn default_l_max(q: u32) -> u32 {
    match q {
        3 => 8,
        4 => 10,
        _ => 6,
    }
}

/// Renders a missing minimal `m`: unfinished when the scan stopped short
/// of the published range, blank otherwise.
fn empty_cell(m_max: u32) -> &'static str {
    if m_max < FULL_M_MAX {
        "pending"
    } else {
        "--"
    }
}

pub fn shadow_table(q: u32, opts: &TableOptions) -> Result<Table> {
    let md = modulus(q)?;
    let l_max = opts.l_max.unwrap_or_else(|| default_l_max(q));
    let ls: Vec<u32> = (0..=l_max).step_by(2).collect();
    let cells: Vec<(u32, u32)> = ls
        .iter()
        .flat_map(|&l| (0..md).map(move |r| (l, r)))
        .collect();
    let scans: Vec<ScanOutcome> = cells
        .par_iter()
        .map(|&(l, r)| scan_refinement(q, r, l, opts.m_max))
        .collect::<Result<Vec<_>>>()?;
    let mut header = vec!["m >=".to_string()];
    header.extend((0..md).map(|r| format!("r={r}")));
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for (li, l) in ls.iter().enumerate() {
        let mut row = vec![format!("l={l}")];
        for scan in &scans[li * md as usize..(li + 1) * md as usize] {
            row.push(match scan.minimal_m {
                Some(m) => m.to_string(),
                None => empty_cell(opts.m_max).to_string(),
            });
            for r in &scan.rows {
                records.push(vec![
                    q.to_string(),
                    scan.r.to_string(),
                    l.to_string(),
                    r.m.to_string(),
                    r.n.to_string(),
                    r.k.map(|k| k.to_string()).unwrap_or_default(),
                    if r.fired {
                        "nonexistent".to_string()
                    } else {
                        r.note.clone()
                    },
                ]);
            }
        }
        rows.push(row);
    }
    let mut notes = vec![format!(
        "Entry (l, r): smallest m such that (S_{q}(n) - l)-uniform states are excluded for n = {md}m + r and every m up to {}.",
        opts.m_max
    )];
    if q >= 4 {
        notes.push(format!(
            "Baseline S_{q}(n) is conjectured; the exclusion step itself is unconditional."
        ));
    }
    Ok(Table {
        name: format!("shadow{q}"),
        title: format!("Improvement on shadow bounds for k-uniform states, q = {q}, n = {md}m + r"),
        header,
        rows,
        notes,
        csv_header: strs(["q", "r", "l", "m", "n", "k", "verdict"]),
        records,
    })
}

pub const IMPROVE5_N: [u32; 15] = [
    180, 182, 185, 187, 224, 226, 228, 261, 263, 265, 267, 269, 271, 273, 275,
];
/// Earlier bounds on `k` for the same `n`, quoted for comparison.
pub const IMPROVE5_PRIOR: [u32; 15] = [
    89, 89, 91, 91, 111, 111, 111, 129, 129, 131, 131, 133, 133, 135, 135,
];

fn improve5_table() -> Result<Table> {
    let results = IMPROVE5_N
        .par_iter()
        .map(|&n| closed_form_k_bound(n, 5))
        .collect::<Result<Vec<_>>>()?;
    let mut header = vec!["n".to_string()];
    let mut ours = vec!["k <= (this engine)".to_string()];
    let mut prior = vec!["k <= (prior)".to_string()];
    let mut records = Vec::new();
    for ((n, (k, fired)), p) in IMPROVE5_N.iter().zip(&results).zip(IMPROVE5_PRIOR) {
        header.push(n.to_string());
        ours.push(k.to_string());
        prior.push(p.to_string());
        let method = fired
            .last()
            .map(|v| method_name(v.method))
            .unwrap_or("none");
        records.push(vec![
            n.to_string(),
            k.to_string(),
            method.to_string(),
            p.to_string(),
        ]);
    }
    Ok(Table {
        name: TableName::Improve5.name().into(),
        title: "Improvement on bounds of k-uniform states, q = 5".into(),
        header,
        rows: vec![ours, prior],
        notes: vec![
            "The first bound row is the largest k not excluded by the closed-form rules.".into(),
        ],
        csv_header: strs(["n", "k_bound", "deciding_method", "prior_k_bound"]),
        records,
    })
}

pub const IMPROVE4_N: [u32; 10] = [82, 83, 86, 87, 88, 91, 92, 96, 97, 100];
/// Previously tabulated upper bounds on `d` for the same `n`.
pub const IMPROVE4_PRIOR: [u32; 10] = [40, 40, 42, 42, 42, 44, 44, 46, 46, 48];

fn improve4_table() -> Result<Table> {
    let depths = IMPROVE4_N
        .par_iter()
        .map(|&n| refinement_depth(4, n))
        .collect::<Result<Vec<_>>>()?;
    let mut header = vec!["n".to_string()];
    let mut ours = vec!["d <= (this engine)".to_string()];
    let mut prior = vec!["d <= (prior)".to_string()];
    let mut records = Vec::new();
    for (d, p) in depths.iter().zip(IMPROVE4_PRIOR) {
        header.push(d.n.to_string());
        ours.push(d.d_bound.to_string());
        prior.push(p.to_string());
        records.push(vec![
            d.n.to_string(),
            d.shadow_bound.to_string(),
            d.l.map(|l| l.to_string()).unwrap_or_default(),
            d.d_bound.to_string(),
            p.to_string(),
        ]);
    }
    Ok(Table {
        name: TableName::Improve4.name().into(),
        title: "Upper bounds on the minimum distance of ((n,1,d))_4 codes".into(),
        header,
        rows: vec![ours, prior],
        notes: vec!["d - 1 = k; the bound is S_4(n) - l for the deepest excluded l.".into()],
        csv_header: strs(["n", "shadow_bound", "l", "d_bound", "prior_d_bound"]),
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defect12_cells() {
        let t = generate(TableName::Defect12, &TableOptions::default()).unwrap();
        assert_eq!(t.rows.len(), 8);
        assert_eq!(t.rows[0], strs(["4", "1", "n >= 66", "n >= 83"]));
        assert_eq!(t.rows[7], strs(["7", "2", "n >= 298", "n >= 341"]));
    }

    #[test]
    fn improve5_rows() {
        let t = generate(TableName::Improve5, &TableOptions::default()).unwrap();
        let ours: Vec<u32> = t.rows[0][1..].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(
            ours,
            vec![87, 88, 89, 90, 108, 109, 110, 126, 127, 128, 129, 130, 131, 132, 133]
        );
    }

    #[test]
    fn pending_cells_and_formats() {
        let opts = TableOptions {
            m_max: 12,
            l_max: Some(2),
        };
        let t = generate(TableName::Shadow3, &opts).unwrap();
        assert_eq!(t.cell("l=0", "r=0"), Some("3"));
        assert_eq!(t.cell("l=2", "r=0"), Some("pending"));
        let md = t.render(Format::Markdown);
        assert!(md.contains("| m >= | r=0 |"));
        let csv = t.render(Format::Csv);
        assert!(csv.starts_with("q,r,l,m,n,k,verdict\n"));
        assert_eq!(csv.lines().count(), 1 + 2 * 14 * 12);
        let json: Table = serde_json::from_str(&t.render(Format::Json)).unwrap();
        assert_eq!(json, t);
        assert_eq!(empty_cell(200), "--");
    }

    #[test]
    fn names_round_trip() {
        for t in TableName::ALL {
            assert_eq!(TableName::parse(t.name()).unwrap(), t);
        }
        assert!(TableName::parse("table9").is_err());
        assert!(Format::parse("xml").is_err());
    }
}
