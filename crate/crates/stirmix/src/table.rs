//! Grids of `S(n, k, r)` and bounded Stirling numbers, as CSV or aligned
//! text.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::str::FromStr;

use stirmix_core::bounded::stirling_bounded;
use stirmix_core::mixed::s_mixed;
use stirmix_core::{MixedAlgorithm, MixedParams, Nat, SizeBand};

/// Inclusive range written `a..b`, or a single value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span(pub RangeInclusive<usize>);

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad range bound `{t}`: {e}"))
        };
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if a > b {
            return Err(format!("empty range `{s}`"));
        }
        Ok(Span(a..=b))
    }
}

/// What the table holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// `S(n, k, r)` over `n` and `k` at fixed `r`.
    MixedFixedR(usize),
    /// `S(n, k, r)` over `n` and `r` at fixed `k`.
    MixedFixedK(usize),
    /// `{n, k}` under the band, over `n` and `k`.
    Stirling,
}

impl Layout {
    pub fn column_name(self) -> &'static str {
        match self {
            Layout::MixedFixedK(_) => "r",
            _ => "k",
        }
    }
}

#[derive(Debug, Clone)]
pub struct TableSpec {
    pub layout: Layout,
    pub rows: Span,
    pub columns: Span,
    pub band: SizeBand,
    pub include_zeros: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub n: usize,
    pub column: usize,
    pub value: Nat,
}

/// Row-major entries; zeros are dropped unless `include_zeros` is set.
pub fn build(spec: &TableSpec) -> Result<Vec<Entry>, String> {
    let mut out = Vec::new();
    for n in spec.rows.0.clone() {
        for column in spec.columns.0.clone() {
            let value = match spec.layout {
                Layout::MixedFixedR(r) => mixed(n, column, r, spec.band)?,
                Layout::MixedFixedK(k) => mixed(n, k, column, spec.band)?,
                Layout::Stirling => stirling_bounded(n, column, spec.band),
            };
            if spec.include_zeros || value != Nat::from(0u8) {
                out.push(Entry { n, column, value });
            }
        }
    }
    Ok(out)
}

fn mixed(n: usize, k: usize, r: usize, band: SizeBand) -> Result<Nat, String> {
    let p = MixedParams::new(n, k, r, band).map_err(|e| e.to_string())?;
    Ok(s_mixed(p, MixedAlgorithm::ClosedForm))
}

pub fn render_csv(spec: &TableSpec, entries: &[Entry]) -> String {
    let mut out = format!("n,{},value\n", spec.layout.column_name());
    for e in entries {
        let _ = writeln!(out, "{},{},{}", e.n, e.column, e.value);
    }
    out
}

/// Rows are `n`, columns the varying parameter; omitted entries are blank.
pub fn render_text(spec: &TableSpec, entries: &[Entry]) -> String {
    let columns: Vec<usize> = spec.columns.0.clone().collect();
    let rows: Vec<usize> = spec.rows.0.clone().collect();
    let cell = |n: usize, c: usize| {
        entries
            .iter()
            .find(|e| e.n == n && e.column == c)
            .map(|e| e.value.to_string())
            .unwrap_or_default()
    };
    let head = format!("n\\{}", spec.layout.column_name());
    let first = rows
        .iter()
        .map(|n| n.to_string().len())
        .max()
        .unwrap_or(1)
        .max(head.len());
    let widths: Vec<usize> = columns
        .iter()
        .map(|&c| {
            rows.iter()
                .map(|&n| cell(n, c).len())
                .max()
                .unwrap_or(0)
                .max(c.to_string().len())
        })
        .collect();

    let mut out = String::new();
    let mut line = format!("{head:<first$}");
    for (c, w) in columns.iter().zip(&widths) {
        let _ = write!(line, "  {c:>w$}");
    }
    out.push_str(line.trim_end());
    out.push('\n');
    for &n in &rows {
        let mut line = format!("{n:<first$}");
        for (&c, w) in columns.iter().zip(&widths) {
            let _ = write!(line, "  {:>w$}", cell(n, c));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans_parse() {
        assert_eq!("3..7".parse::<Span>().unwrap(), Span(3..=7));
        assert_eq!("3..=7".parse::<Span>().unwrap(), Span(3..=7));
        assert_eq!("4".parse::<Span>().unwrap(), Span(4..=4));
        assert!("7..3".parse::<Span>().is_err());
        assert!("x..3".parse::<Span>().is_err());
    }

    #[test]
    fn text_leaves_zeros_blank() {
        let spec = TableSpec {
            layout: Layout::MixedFixedR(2),
            rows: Span(2..=4),
            columns: Span(1..=3),
            band: SizeBand::UNBOUNDED,
            include_zeros: false,
        };
        let text = render_text(&spec, &build(&spec).unwrap());
        assert_eq!(
            text,
            "n\\k  1   2   3\n2    1\n3    3   3\n4    7  18  12\n"
        );
    }
}
