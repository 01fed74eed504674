//! The `.alg` text format.
//!
//! ```text
//! # comment
//! kind=monoid            # nary | binary | monoid
//! order=4
//! names=p q a e          # optional
//! neutral=3              # monoid only
//! table=
//! 0 0 0 0
//! 1 1 1 1
//! 1 0 3 2
//! 0 1 2 3
//! ```
//!
//! `arity=<n>` is required for `nary` and absent otherwise. A binary file
//! may carry a bitranslation as `left=<order indices>` and
//! `right=<order indices>`. The values of `table=`, `left=` and `right=`
//! may continue over following lines up to the next `key=` line. Tables
//! are row-major with the first argument most significant.

use std::fmt::Write as _;
use std::path::Path;

use polyadic_core::wmonoid::Bitranslation;
use polyadic_core::{AlgError, BinaryOpDesc, FiniteNaryOp, MonoidDesc, Universe};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Missing(String),
    #[error("{0}")]
    Invalid(#[from] AlgError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("expected a {expected} file, found kind={found}")]
    WrongKind { expected: &'static str, found: Kind },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Nary,
    Binary,
    Monoid,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::Nary => "nary",
            Kind::Binary => "binary",
            Kind::Monoid => "monoid",
        })
    }
}

/// A parsed `.alg` file, checked for shape and ranges but not for any
/// algebraic law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgFile {
    pub kind: Kind,
    pub arity: usize,
    pub universe: Universe,
    pub neutral: Option<usize>,
    pub table: Vec<u16>,
    pub left: Option<Vec<usize>>,
    pub right: Option<Vec<usize>>,
}

const KEYS: [&str; 8] = ["kind", "arity", "order", "names", "neutral", "table", "left", "right"];

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

fn numbers(line: usize, key: &str, tokens: &[&str]) -> Result<Vec<usize>, FormatError> {
    tokens
        .iter()
        .map(|t| t.parse::<usize>().map_err(|_| syntax(line, format!("`{}` in {} is not a non-negative integer", t, key))))
        .collect()
}

fn single(line: usize, key: &str, tokens: &[&str]) -> Result<usize, FormatError> {
    match numbers(line, key, tokens)?.as_slice() {
        [v] => Ok(*v),
        _ => Err(syntax(line, format!("{} takes exactly one integer", key))),
    }
}

pub fn parse(text: &str) -> Result<AlgFile, FormatError> {
    // key -> (line of the header, tokens)
    let mut fields: Vec<(&str, usize, Vec<&str>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some((key, rest)) = content.split_once('=') {
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(syntax(line, format!("unknown header `{}`", key)));
            }
            if fields.iter().any(|(k, _, _)| *k == key) {
                return Err(syntax(line, format!("duplicate header `{}`", key)));
            }
            fields.push((key, line, rest.split_whitespace().collect()));
        } else {
            match fields.last_mut() {
                Some((key, _, tokens)) if matches!(*key, "table" | "left" | "right") => {
                    tokens.extend(content.split_whitespace())
                }
                _ => return Err(syntax(line, "values outside a table, left or right block")),
            }
        }
    }
    let get = |key: &str| fields.iter().find(|(k, _, _)| *k == key).map(|(_, l, t)| (*l, t.as_slice()));

    let (line, kind) = get("kind").ok_or_else(|| FormatError::Missing("missing kind= header".into()))?;
    let kind = match kind {
        ["nary"] => Kind::Nary,
        ["binary"] => Kind::Binary,
        ["monoid"] => Kind::Monoid,
        _ => return Err(syntax(line, "kind must be nary, binary or monoid")),
    };
    let arity = match (kind, get("arity")) {
        (Kind::Nary, Some((l, t))) => single(l, "arity", t)?,
        (Kind::Nary, None) => return Err(FormatError::Missing("kind=nary needs an arity= header".into())),
        (_, Some((l, _))) => return Err(syntax(l, format!("arity= is not allowed for kind={}", kind))),
        (_, None) => 2,
    };
    let (line, order) = get("order").ok_or_else(|| FormatError::Missing("missing order= header".into()))?;
    let order = single(line, "order", order)?;
    let universe = match get("names") {
        Some((line, names)) => {
            if names.len() != order {
                return Err(syntax(line, format!("names= lists {} names for order {}", names.len(), order)));
            }
            Universe::with_names(order, names.iter().map(|s| s.to_string()).collect())?
        }
        None => Universe::new(order)?,
    };
    let in_range = |line: usize, key: &str, v: usize| {
        if v >= order {
            Err(syntax(line, format!("{} value {} is out of range for order {}", key, v, order)))
        } else {
            Ok(v)
        }
    };
    let neutral = match (kind, get("neutral")) {
        (Kind::Monoid, Some((l, t))) => Some(in_range(l, "neutral", single(l, "neutral", t)?)?),
        (Kind::Monoid, None) => return Err(FormatError::Missing("kind=monoid needs a neutral= header".into())),
        (_, Some((l, _))) => return Err(syntax(l, "neutral= is only allowed for kind=monoid")),
        (_, None) => None,
    };
    let (line, cells) = get("table").ok_or_else(|| FormatError::Missing("missing table= block".into()))?;
    let expected = (order as u128).checked_pow(arity as u32).unwrap_or(u128::MAX);
    if cells.len() as u128 != expected {
        return Err(syntax(line, format!("table has {} entries, expected {}^{} = {}", cells.len(), order, arity, expected)));
    }
    let table = numbers(line, "table", cells)?
        .into_iter()
        .map(|v| in_range(line, "table", v).map(|v| v as u16))
        .collect::<Result<Vec<u16>, _>>()?;
    let map = |key: &str| -> Result<Option<Vec<usize>>, FormatError> {
        let Some((line, t)) = get(key) else { return Ok(None) };
        if kind != Kind::Binary {
            return Err(syntax(line, format!("{}= is only allowed for kind=binary", key)));
        }
        if t.len() != order {
            return Err(syntax(line, format!("{} has {} entries, expected {}", key, t.len(), order)));
        }
        let values = numbers(line, key, t)?;
        values.into_iter().map(|v| in_range(line, key, v)).collect::<Result<Vec<_>, _>>().map(Some)
    };
    let left = map("left")?;
    let right = map("right")?;
    if left.is_some() != right.is_some() {
        return Err(FormatError::Missing("left= and right= must be given together".into()));
    }
    // validates arity and caps
    FiniteNaryOp::new(universe.clone(), arity, table.clone())?;
    Ok(AlgFile { kind, arity, universe, neutral, table, left, right })
}

pub fn read(path: &Path) -> Result<AlgFile, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text)
}

impl AlgFile {
    /// Any kind, read as an operation of its arity.
    pub fn nary(&self) -> FiniteNaryOp {
        FiniteNaryOp::new(self.universe.clone(), self.arity, self.table.clone()).expect("validated when parsed")
    }

    /// A `binary` or `monoid` file as a binary operation.
    pub fn binary(&self) -> Result<BinaryOpDesc, FormatError> {
        if self.kind == Kind::Nary {
            return Err(FormatError::WrongKind { expected: "binary or monoid", found: self.kind });
        }
        Ok(BinaryOpDesc::new(self.universe.clone(), self.table.clone())?)
    }

    /// A `monoid` file; associativity and neutrality are checked.
    pub fn monoid(&self) -> Result<MonoidDesc, FormatError> {
        if self.kind != Kind::Monoid {
            return Err(FormatError::WrongKind { expected: "monoid", found: self.kind });
        }
        Ok(MonoidDesc::new(self.binary()?, self.neutral.expect("monoid files have a neutral"))?)
    }

    pub fn bitranslation(&self) -> Result<Bitranslation, FormatError> {
        match (&self.left, &self.right) {
            (Some(l), Some(r)) => Ok(Bitranslation::new(self.binary()?, l.clone(), r.clone())?),
            _ => Err(FormatError::Missing("a bitranslation needs left= and right= lines".into())),
        }
    }
}

fn header(out: &mut String, kind: Kind, arity: Option<usize>, universe: &Universe) {
    writeln!(out, "kind={}", kind).unwrap();
    if let Some(n) = arity {
        writeln!(out, "arity={}", n).unwrap();
    }
    writeln!(out, "order={}", universe.order()).unwrap();
    if let Some(names) = universe.names() {
        writeln!(out, "names={}", names.join(" ")).unwrap();
    }
}

fn rows(out: &mut String, order: usize, table: &[u16]) {
    out.push_str("table=\n");
    for row in table.chunks(order.max(1)) {
        let row: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

fn list(values: &[usize]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_nary(f: &FiniteNaryOp) -> String {
    let mut out = String::new();
    header(&mut out, Kind::Nary, Some(f.arity()), f.universe());
    rows(&mut out, f.order(), f.table());
    out
}

pub fn write_binary(b: &BinaryOpDesc) -> String {
    let mut out = String::new();
    header(&mut out, Kind::Binary, None, b.universe());
    rows(&mut out, b.order(), b.table());
    out
}

pub fn write_monoid(m: &MonoidDesc) -> String {
    let mut out = String::new();
    header(&mut out, Kind::Monoid, None, m.op().universe());
    writeln!(out, "neutral={}", m.neutral()).unwrap();
    rows(&mut out, m.order(), m.op().table());
    out
}

pub fn write_bitranslation(bt: &Bitranslation) -> String {
    let mut out = write_binary(bt.carrier());
    writeln!(out, "left={}", list(bt.left())).unwrap();
    writeln!(out, "right={}", list(bt.right())).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyadic_core::fixtures;

    #[test]
    fn roundtrips() {
        let f = fixtures::aff3();
        assert_eq!(parse(&write_nary(&f)).unwrap().nary(), f);
        let s3 = fixtures::s3();
        let back = parse(&write_monoid(&s3)).unwrap();
        assert_eq!(back.monoid().unwrap(), s3);
        assert_eq!(back.universe.name(1), "021");
        let bt = fixtures::ex46_bitranslation();
        assert_eq!(parse(&write_bitranslation(&bt)).unwrap().bitranslation().unwrap(), bt);
    }

    #[test]
    fn table_on_one_line_and_comments() {
        let f = parse("# lz\nkind=binary  # left zero\norder=2\ntable= 0 0\n 1 1 # row 1\n").unwrap();
        assert_eq!(f.binary().unwrap(), fixtures::lz2());
    }

    fn err(text: &str) -> String {
        parse(text).unwrap_err().to_string()
    }

    #[test]
    fn rejections() {
        assert!(err("kind=binary\norder=2\ntable=0 0 1\n").contains("3 entries"));
        assert!(err("kind=binary\norder=2\ntable=0 0 1 1 0\n").contains("5 entries"));
        assert!(err("kind=binary\norder=2\ntable=0 0 1 2\n").contains("out of range"));
        assert!(err("kind=binary\norder=2\norder=2\ntable=0 0 1 1\n").contains("duplicate"));
        assert!(err("kind=nary\norder=2\ntable=0 0 1 1\n").contains("arity"));
        assert!(err("kind=binary\narity=2\norder=2\ntable=0 0 1 1\n").contains("arity"));
        assert!(err("kind=monoid\norder=2\ntable=0 1 1 0\n").contains("neutral"));
        assert!(err("kind=monoid\norder=2\nneutral=2\ntable=0 1 1 0\n").contains("out of range"));
        assert!(err("kind=binary\norder=2\ntable=0 0 1 x\n").contains("`x`"));
        assert!(err("kind=ring\norder=2\ntable=0 0 1 1\n").contains("kind"));
        assert!(err("kind=binary\norder=2\nnames=a a\ntable=0 0 1 1\n").contains("names"));
        assert!(err("kind=binary\norder=2\ncolour=red\ntable=0 0 1 1\n").contains("unknown"));
        assert!(err("0 1\nkind=binary\n").contains("line 1"));
        assert!(err("kind=binary\norder=2\ntable=0 0 1 1\nleft=1 0\n").contains("together"));
        assert!(err("kind=binary\norder=0\ntable=\n").contains("at least one"));
    }

    #[test]
    fn kind_mismatch() {
        let f = parse(&write_nary(&fixtures::aff3())).unwrap();
        assert!(matches!(f.monoid(), Err(FormatError::WrongKind { .. })));
        let b = parse(&write_binary(&fixtures::z2())).unwrap();
        assert!(matches!(b.monoid(), Err(FormatError::WrongKind { .. })));
    }
}
