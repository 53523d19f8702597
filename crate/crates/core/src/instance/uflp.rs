//! Uncapacitated facility location files.
//!
//! Two layouts are accepted and told apart by the header:
//!
//! * OR-Library `cap` layout: a `<facilities> <customers>` header, then one
//!   `<capacity> <opening cost>` pair per facility, then for every customer its
//!   demand followed by one cost per facility. Values may wrap across lines.
//!   Capacities and demands are ignored.
//! * UflLib simple layout: an optional `FILE: <name>` line, a
//!   `<facilities> <customers> 0` header, then one line per facility holding
//!   `<index> <opening cost> <cost to customer 1> ... <cost to customer n>`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UflpLayout {
    OrLibCap,
    UflLibSimple,
}

/// Facility-side data read from a UFLP file.
#[derive(Debug, Clone, PartialEq)]
pub struct UflpData {
    pub layout: UflpLayout,
    pub opening_costs: Vec<f64>,
    /// One row per facility, one column per customer.
    pub assignment_costs: Vec<Vec<f64>>,
}

impl UflpData {
    pub fn facility_count(&self) -> usize {
        self.opening_costs.len()
    }

    pub fn customer_count(&self) -> usize {
        self.assignment_costs.first().map_or(0, Vec::len)
    }
}

fn cost(line: usize, tok: &str, what: &str) -> Result<f64> {
    let v: f64 = tok
        .parse()
        .map_err(|_| Error::parse(line, format!("bad {what} '{tok}'")))?;
    if !v.is_finite() || v < 0.0 {
        return Err(Error::parse(line, format!("{what} must be nonnegative, got {v}")));
    }
    Ok(v)
}

fn count(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("bad {what} '{tok}'")))
}

pub fn parse_uflp(text: &str) -> Result<UflpData> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();
    let Some(&(_, first)) = lines.peek() else {
        return Err(Error::parse(1, "empty UFLP file"));
    };
    if first.starts_with("FILE:") {
        lines.next();
        return parse_simple(lines);
    }
    match first.split_whitespace().count() {
        2 => parse_cap(lines),
        3 => parse_simple(lines),
        _ => Err(Error::parse(
            lines.peek().map_or(1, |l| l.0),
            "unrecognised UFLP header",
        )),
    }
}

fn parse_cap<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<UflpData> {
    let mut tokens = lines.flat_map(|(n, l)| l.split_whitespace().map(move |t| (n, t)));
    let mut last = 1;
    let mut next = |what: &str| -> Result<(usize, &'a str)> {
        match tokens.next() {
            Some(t) => {
                last = t.0;
                Ok(t)
            }
            None => Err(Error::parse(last, format!("unexpected end of file, missing {what}"))),
        }
    };

    let (l, t) = next("facility count")?;
    let facilities = count(l, t, "facility count")?;
    let (l, t) = next("customer count")?;
    let customers = count(l, t, "customer count")?;
    if facilities == 0 {
        return Err(Error::parse(l, "no facilities"));
    }

    let mut opening_costs = Vec::with_capacity(facilities);
    for _ in 0..facilities {
        next("facility capacity")?;
        let (l, t) = next("opening cost")?;
        opening_costs.push(cost(l, t, "opening cost")?);
    }
    let mut assignment_costs = vec![Vec::with_capacity(customers); facilities];
    for k in 0..customers {
        let (l, t) = next(&format!("demand of customer {}", k + 1))?;
        t.parse::<f64>()
            .map_err(|_| Error::parse(l, format!("bad demand '{t}'")))?;
        for row in assignment_costs.iter_mut() {
            let (l, t) = next(&format!("cost row of customer {}", k + 1))?;
            row.push(cost(l, t, "assignment cost")?);
        }
    }
    if let Some((l, t)) = tokens.next() {
        return Err(Error::parse(l, format!("unexpected trailing value '{t}'")));
    }
    Ok(UflpData {
        layout: UflpLayout::OrLibCap,
        opening_costs,
        assignment_costs,
    })
}

fn parse_simple<'a>(mut lines: impl Iterator<Item = (usize, &'a str)>) -> Result<UflpData> {
    let (l, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing '<facilities> <customers> 0' header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() < 2 {
        return Err(Error::parse(l, "expected '<facilities> <customers> 0' header"));
    }
    let facilities = count(l, toks[0], "facility count")?;
    let customers = count(l, toks[1], "customer count")?;
    if facilities == 0 {
        return Err(Error::parse(l, "no facilities"));
    }

    let mut opening_costs = vec![f64::NAN; facilities];
    let mut assignment_costs = vec![Vec::new(); facilities];
    let mut seen = vec![false; facilities];
    let mut last = l;
    for _ in 0..facilities {
        let (l, row) = lines
            .next()
            .ok_or_else(|| Error::parse(last + 1, format!("expected {facilities} facility rows")))?;
        last = l;
        let toks: Vec<&str> = row.split_whitespace().collect();
        if toks.len() != customers + 2 {
            return Err(Error::parse(
                l,
                format!("ragged row: expected {} values, found {}", customers + 2, toks.len()),
            ));
        }
        let idx = count(l, toks[0], "facility index")?;
        if idx == 0 || idx > facilities || seen[idx - 1] {
            return Err(Error::parse(l, format!("bad or repeated facility index {idx}")));
        }
        seen[idx - 1] = true;
        opening_costs[idx - 1] = cost(l, toks[1], "opening cost")?;
        assignment_costs[idx - 1] = toks[2..]
            .iter()
            .map(|t| cost(l, t, "assignment cost"))
            .collect::<Result<_>>()?;
    }
    if let Some((l, _)) = lines.next() {
        return Err(Error::parse(l, "unexpected extra row"));
    }
    Ok(UflpData {
        layout: UflpLayout::UflLibSimple,
        opening_costs,
        assignment_costs,
    })
}
