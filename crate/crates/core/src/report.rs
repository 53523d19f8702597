//! Per-run records and their CSV / markdown rendering.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

pub const CSV_HEADER: &str = "instance,algo,hop,seed,obj,cpu_seconds,iterations,open_count";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Hs,
    Ghs,
    Hybrid,
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Hs, Algorithm::Ghs, Algorithm::Hybrid, Algorithm::Oracle];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Hs => "hs",
            Algorithm::Ghs => "ghs",
            Algorithm::Hybrid => "hybrid",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Algorithm::ALL.into_iter().find(|a| a.as_str() == s).ok_or_else(|| {
            Error::InvalidParams(format!("unknown algorithm `{s}` (expected hs, ghs, hybrid or oracle)"))
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub instance: String,
    pub algorithm: Algorithm,
    pub hop: usize,
    pub seed: u64,
    pub objective: f64,
    /// `None` when timing is suppressed for reproducible output.
    pub cpu_seconds: Option<f64>,
    pub iterations: usize,
    pub open_count: usize,
}

fn sorted(records: &[RunRecord]) -> Vec<&RunRecord> {
    let mut rows: Vec<&RunRecord> = records.iter().collect();
    rows.sort_by(|a, b| {
        (&a.instance, a.algorithm, a.hop, a.seed)
            .cmp(&(&b.instance, b.algorithm, b.hop, b.seed))
            .then(a.objective.total_cmp(&b.objective))
    });
    rows
}

/// Consecutive runs of the same instance, algorithm and hop limit.
fn groups<'r>(rows: &[&'r RunRecord]) -> Vec<Vec<&'r RunRecord>> {
    let mut out: Vec<Vec<&RunRecord>> = Vec::new();
    for &r in rows {
        match out.last_mut() {
            Some(g) if g[0].instance == r.instance && g[0].algorithm == r.algorithm && g[0].hop == r.hop => g.push(r),
            _ => out.push(vec![r]),
        }
    }
    out
}

/// Lowest objective of a group; ties go to the smaller seed.
pub fn best_of<'r>(group: &[&'r RunRecord]) -> &'r RunRecord {
    group
        .iter()
        .copied()
        .min_by(|a, b| a.objective.total_cmp(&b.objective).then(a.seed.cmp(&b.seed)))
        .expect("non-empty group")
}

fn cpu(r: &RunRecord) -> String {
    r.cpu_seconds.map_or_else(|| "NA".to_string(), |s| format!("{s:.3}"))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_row(r: &RunRecord, seed: &str) -> String {
    format!(
        "{},{},{},{},{:.2},{},{},{}\n",
        csv_field(&r.instance),
        r.algorithm,
        r.hop,
        seed,
        r.objective,
        cpu(r),
        r.iterations,
        r.open_count
    )
}

/// CSV with one row per record, sorted, plus a `best` row after every group
/// of two or more runs.
pub fn report_csv(records: &[RunRecord]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for group in groups(&sorted(records)) {
        for r in &group {
            out.push_str(&csv_row(r, &r.seed.to_string()));
        }
        if group.len() > 1 {
            out.push_str(&csv_row(best_of(&group), "best"));
        }
    }
    out
}

/// Table in the style of the published result tables: one line per
/// (instance, algorithm, hop) with best and mean objective.
pub fn report_markdown(records: &[RunRecord]) -> String {
    let mut out = String::from(
        "| Instance | Algo | Hop | Runs | Best obj | Mean obj | Mean CPU (s) | Open |\n\
         |---|---|---:|---:|---:|---:|---:|---:|\n",
    );
    for group in groups(&sorted(records)) {
        let best = best_of(&group);
        let n = group.len() as f64;
        let mean = group.iter().map(|r| r.objective).sum::<f64>() / n;
        let cpu = if group.iter().all(|r| r.cpu_seconds.is_some()) {
            format!("{:.3}", group.iter().filter_map(|r| r.cpu_seconds).sum::<f64>() / n)
        } else {
            "NA".into()
        };
        out.push_str(&format!(
            "| {} | {} | {} | {} | {:.2} | {:.2} | {} | {} |\n",
            best.instance,
            best.algorithm,
            best.hop,
            group.len(),
            best.objective,
            mean,
            cpu,
            best.open_count
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(seed: u64, obj: f64) -> RunRecord {
        RunRecord {
            instance: "C5mp1".into(),
            algorithm: Algorithm::Ghs,
            hop: 3,
            seed,
            objective: obj,
            cpu_seconds: Some(0.3141),
            iterations: 1200,
            open_count: 4,
        }
    }

    #[test]
    fn empty_and_single() {
        assert_eq!(report_csv(&[]), format!("{CSV_HEADER}\n"));
        let csv = report_csv(&[rec(1, 3188.664)]);
        assert_eq!(csv.lines().count(), 2);
        assert_eq!(csv.lines().nth(1).unwrap(), "C5mp1,ghs,3,1,3188.66,0.314,1200,4");
    }

    #[test]
    fn repeats_get_a_best_row() {
        let records: Vec<_> = [5.0, 3.0, 4.0, 3.0, 6.0]
            .iter()
            .enumerate()
            .map(|(i, &o)| rec(10 - i as u64, o))
            .collect();
        let csv = report_csv(&records);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 7);
        assert!(lines[1].starts_with("C5mp1,ghs,3,6,"));
        assert_eq!(lines[6], "C5mp1,ghs,3,best,3.00,0.314,1200,4");
    }

    #[test]
    fn untimed_rows() {
        let mut r = rec(1, 2.0);
        r.cpu_seconds = None;
        assert!(report_csv(&[r.clone()]).contains(",NA,"));
        assert!(report_markdown(&[r]).contains("| NA |"));
    }

    #[test]
    fn algorithm_names() {
        for a in Algorithm::ALL {
            assert_eq!(a.as_str().parse::<Algorithm>().unwrap(), a);
        }
        assert!("tabu".parse::<Algorithm>().is_err());
    }
}
