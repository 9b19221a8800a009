//! Parser for the embedded Tits-class tables.

use std::sync::OnceLock;

use super::expr::{eval, Vars};
use crate::error::{Error, Result};
use crate::rootsys::{DynkinType, Family};

pub const EMBEDDED: &str = include_str!("../../data/tits_tables.txt");
pub const SUPPORTED_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
struct RankPattern {
    parity: Option<usize>,
    min: usize,
    exact: bool,
}

impl RankPattern {
    fn matches(&self, n: usize) -> bool {
        self.parity.is_none_or(|p| n % 2 == p) && if self.exact { n == self.min } else { n >= self.min }
    }
}

#[derive(Clone, Debug)]
struct Row {
    line: usize,
    family: Family,
    ranks: RankPattern,
    flip: bool,
    range: Option<(String, String)>,
    label: String,
    flags: Vec<(String, Option<String>)>,
    t: Vec<(String, String)>,
}

/// One table row instantiated for a concrete type and parameter value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub label: String,
    /// Whether the inner class is the standard nontrivial involution.
    pub flip: bool,
    pub split: bool,
    pub quasi_split: bool,
    /// The t column as signs on detecting minuscule weights (0-based nodes).
    pub t: Vec<(usize, i8)>,
}

#[derive(Clone, Debug)]
pub struct TitsTable {
    pub version: u32,
    rows: Vec<Row>,
}

fn fmt_err(line: usize, msg: impl Into<String>) -> Error {
    Error::TableFormat { line, msg: msg.into() }
}

fn parse_ranks(line: usize, s: &str) -> Result<RankPattern> {
    let (parity, rest) = if let Some(r) = s.strip_prefix("even") {
        (Some(0), r)
    } else if let Some(r) = s.strip_prefix("odd") {
        (Some(1), r)
    } else {
        (None, s)
    };
    let (exact, num) = if let Some(r) = rest.strip_prefix(">=") {
        (false, r)
    } else if let Some(r) = rest.strip_prefix('=') {
        (true, r)
    } else {
        return Err(fmt_err(line, format!("bad rank pattern {s:?}")));
    };
    let min = num.trim().parse().map_err(|_| fmt_err(line, format!("bad rank pattern {s:?}")))?;
    Ok(RankPattern { parity, min, exact })
}

impl TitsTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut version = None;
        let mut rows = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            if let Some(v) = l.strip_prefix("version") {
                let v: u32 = v.trim().parse().map_err(|_| fmt_err(line, "bad version"))?;
                if v != SUPPORTED_VERSION {
                    return Err(fmt_err(line, format!("unsupported version {v}")));
                }
                version = Some(v);
                continue;
            }
            let cols: Vec<&str> = l.split('|').map(str::trim).collect();
            if cols.len() != 7 {
                return Err(fmt_err(line, format!("expected 7 columns, found {}", cols.len())));
            }
            let family = cols[0]
                .chars()
                .next()
                .and_then(Family::from_letter)
                .filter(|_| cols[0].len() == 1)
                .ok_or_else(|| fmt_err(line, format!("bad family {:?}", cols[0])))?;
            let ranks = parse_ranks(line, cols[1])?;
            let flip = match cols[2] {
                "id" => false,
                "flip" => true,
                other => return Err(fmt_err(line, format!("bad inner class {other:?}"))),
            };
            let range = match cols[3] {
                "-" => None,
                r => {
                    let (lo, hi) = r.split_once("..").ok_or_else(|| fmt_err(line, "bad range"))?;
                    Some((lo.trim().to_string(), hi.trim().to_string()))
                }
            };
            let flags = match cols[5] {
                "-" => Vec::new(),
                f => f
                    .split(',')
                    .map(|x| {
                        let x = x.trim();
                        match x.split_once('?') {
                            Some((name, e)) => (name.trim().to_string(), Some(e.trim().to_string())),
                            None => (x.to_string(), None),
                        }
                    })
                    .collect(),
            };
            for (name, _) in &flags {
                if name != "split" && name != "qs" {
                    return Err(fmt_err(line, format!("unknown flag {name:?}")));
                }
            }
            let t = match cols[6] {
                "-" => Vec::new(),
                t => t
                    .split(',')
                    .map(|x| {
                        x.split_once('=')
                            .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
                            .ok_or_else(|| fmt_err(line, format!("bad sign entry {x:?}")))
                    })
                    .collect::<Result<_>>()?,
            };
            rows.push(Row { line, family, ranks, flip, range, label: cols[4].to_string(), flags, t });
        }
        let version = version.ok_or_else(|| fmt_err(0, "missing version line"))?;
        Ok(TitsTable { version, rows })
    }

    pub fn embedded() -> &'static TitsTable {
        static TABLE: OnceLock<TitsTable> = OnceLock::new();
        TABLE.get_or_init(|| TitsTable::parse(EMBEDDED).expect("embedded Tits table is well formed"))
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// All entries for a canonical type, in table order.
    pub fn entries(&self, t: DynkinType) -> Result<Vec<TableEntry>> {
        let n = t.rank();
        let mut out = Vec::new();
        for row in self.rows.iter().filter(|r| r.family == t.family() && r.ranks.matches(n)) {
            let e = |src: &str, s: i64| {
                eval(src, Vars { n: n as i64, s }).map_err(|m| fmt_err(row.line, format!("{src:?}: {m}")))
            };
            let params: Vec<i64> = match &row.range {
                None => vec![0],
                Some((lo, hi)) => (e(lo, 0)?..=e(hi, 0)?).collect(),
            };
            for s in params {
                let label = canonical_label(&expand_template(&row.label, |x| e(x, s))?);
                let flag = |name: &str| -> Result<bool> {
                    match row.flags.iter().find(|(f, _)| f == name) {
                        None => Ok(false),
                        Some((_, None)) => Ok(true),
                        Some((_, Some(x))) => Ok(e(x, s)? != 0),
                    }
                };
                let split = flag("split")?;
                let quasi_split = split || flag("qs")?;
                let mut signs = Vec::new();
                for (node, sign) in &row.t {
                    let k = e(node, s)?;
                    let v = e(sign, s)?;
                    if k < 1 || k as usize > n || (v != 1 && v != -1) {
                        return Err(fmt_err(row.line, format!("bad sign entry {node}={sign}")));
                    }
                    signs.push((k as usize - 1, v as i8));
                }
                out.push(TableEntry { label, flip: row.flip, split, quasi_split, t: signs });
            }
        }
        Ok(out)
    }
}

fn expand_template(tpl: &str, mut f: impl FnMut(&str) -> Result<i64>) -> Result<String> {
    let mut out = String::new();
    let mut rest = tpl;
    while let Some(start) = rest.find('{') {
        out.push_str(&rest[..start]);
        let end = rest[start..].find('}').map(|e| start + e).ok_or_else(|| fmt_err(0, "unclosed '{'"))?;
        out.push_str(&f(&rest[start + 1..end])?.to_string());
        rest = &rest[end + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

/// Canonical spelling of a real form name: `p >= q` in `SU(p,q)`,
/// `Spin(p,q)`, `Sp(p,q)`; compact forms as `SU(n)`, `Spin(n)`, `Sp(n)`;
/// `SL(1,H)` as `SU(2)`.
pub fn canonical_label(label: &str) -> String {
    let label = label.trim().replace(' ', "");
    if label == "SL(1,H)" {
        return "SU(2)".into();
    }
    for name in ["SU", "Spin", "Sp"] {
        let Some(args) = label.strip_prefix(name).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')'))
        else {
            continue;
        };
        let parts: Vec<&str> = args.split(',').collect();
        if parts.len() != 2 {
            continue;
        }
        let (Ok(p), Ok(q)) = (parts[0].parse::<i64>(), parts[1].parse::<i64>()) else {
            continue;
        };
        let (p, q) = if p >= q { (p, q) } else { (q, p) };
        return if q == 0 { format!("{name}({p})") } else { format!("{name}({p},{q})") };
    }
    label
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(s: &str) -> Vec<String> {
        let t: DynkinType = s.parse().unwrap();
        TitsTable::embedded().entries(t).unwrap().into_iter().map(|e| e.label).collect()
    }

    #[test]
    fn canonical_labels() {
        assert_eq!(canonical_label("SU(1,2)"), "SU(2,1)");
        assert_eq!(canonical_label("Spin(0,5)"), "Spin(5)");
        assert_eq!(canonical_label("SU(4,0)"), "SU(4)");
        assert_eq!(canonical_label("Sp(4,R)"), "Sp(4,R)");
        assert_eq!(canonical_label("SL(1,H)"), "SU(2)");
        assert_eq!(canonical_label("E7(-25)"), "E7(-25)");
    }

    #[test]
    fn rows_expand() {
        assert_eq!(labels("A2"), ["SL(3,R)", "SU(2,1)", "SU(3)"]);
        assert_eq!(labels("A3"), ["SL(4,R)", "SL(2,H)", "SU(2,2)", "SU(3,1)", "SU(4)"]);
        assert_eq!(labels("A1"), ["SL(2,R)", "SU(2)"]);
        assert_eq!(labels("B3"), ["Spin(6,1)", "Spin(4,3)", "Spin(5,2)", "Spin(7)"]);
        assert_eq!(labels("D4"), ["Spin(4,4)", "Spin(6,2)", "Spin(8)", "Spin(5,3)", "Spin(7,1)"]);
        assert_eq!(labels("C3"), ["Sp(6,R)", "Sp(3)", "Sp(2,1)"]);
        assert_eq!(labels("G2"), ["G2(2)", "G2(-14)"]);
    }

    #[test]
    fn version_and_errors() {
        assert_eq!(TitsTable::embedded().version, 1);
        assert!(TitsTable::parse("A | >=1 | id | - | X | - | -").is_err());
        assert!(TitsTable::parse("version 2\n").is_err());
        let bad = "version 1\nA | >=1 | sideways | - | X | - | -\n";
        assert!(matches!(TitsTable::parse(bad), Err(Error::TableFormat { line: 2, .. })));
        let bad = "version 1\nQ | >=1 | id | - | X | - | -\n";
        assert!(TitsTable::parse(bad).is_err());
    }
}
