//! Line-oriented text formats for Lie rings, post-Lie rings, groups and skew braces.
//!
//! Every file starts with `format 1`, then a header line naming the kind.
//! Blank lines and `#` comments are ignored.
//!
//! ```text
//! format 1
//! postlie 5 1 1
//! triangle 1 1 0 1
//! ```
//!
//! Lie and post-Lie headers give `p` and the exponents of the abelian group.
//! `bracket i j c…` sets `[g_i, g_j]` for `i < j` and `triangle i j c…` sets
//! `g_i ▷ g_j`, generators counted from 1. Group files have the header
//! `group <n> identity <idx>` followed by `n` table rows; skew brace files have
//! `skewbrace <n>`, an optional `carrier p e…` line, then `dot` and `circ` tables.

use std::fmt::Write;

use lazard_core::liering::{FinGroup, LieRingSC};
use lazard_core::modarith::{PShape, PVec, Shape};
use lazard_core::postlie::PostLieRing;
use lazard_core::skewbrace::SkewBrace;
use thiserror::Error;

pub const VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ParseError {
    /// The text does not follow the format.
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    /// The text is well formed but the data is not a valid structure.
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: lazard_core::Error },
}

#[derive(Clone, Debug)]
pub enum Structure {
    Lie(LieRingSC),
    PostLie(PostLieRing),
    Group(FinGroup),
    Brace(SkewBrace),
}

struct Lines<'a> {
    items: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Lines<'a> {
        let items = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
            .filter(|(_, t)| !t.is_empty())
            .collect();
        Lines { items, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let item = self.items.get(self.pos).cloned();
        self.pos += 1;
        item
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.items.get(self.pos)
    }

    fn last_line(&self) -> usize {
        self.items.last().map_or(0, |(l, _)| *l)
    }

    fn expect(&mut self) -> Result<(usize, Vec<&'a str>), ParseError> {
        let end = self.last_line();
        self.next().ok_or_else(|| err(end, "unexpected end of file"))
    }
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

fn invalid(line: usize) -> impl Fn(lazard_core::Error) -> ParseError {
    move |source| ParseError::Invalid { line, source }
}

fn num<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T, ParseError> {
    tok.parse().map_err(|_| err(line, format!("expected an integer, found `{tok}`")))
}

fn parse_shape(line: usize, toks: &[&str]) -> Result<Shape, ParseError> {
    let (p, exps) = toks.split_first().ok_or_else(|| err(line, "missing prime"))?;
    let exps = exps.iter().map(|t| num(line, t)).collect::<Result<Vec<u32>, _>>()?;
    PShape::new(num(line, p)?, exps).map_err(|e| err(line, e.to_string()))
}

fn parse_entry(line: usize, toks: &[&str], shape: &Shape) -> Result<(usize, usize, PVec), ParseError> {
    let r = shape.rank();
    if toks.len() != 2 + r {
        return Err(err(line, format!("expected two generator indices and {r} coordinates")));
    }
    let i: usize = num(line, toks[0])?;
    let j: usize = num(line, toks[1])?;
    if !(1..=r).contains(&i) || !(1..=r).contains(&j) {
        return Err(err(line, format!("generator index outside 1..={r}")));
    }
    let coords = toks[2..].iter().map(|t| num(line, t)).collect::<Result<Vec<i64>, _>>()?;
    let v = PVec::new(shape, &coords).map_err(invalid(line))?;
    Ok((i - 1, j - 1, v))
}

fn parse_table(lines: &mut Lines, n: usize) -> Result<Vec<u32>, ParseError> {
    let mut table = Vec::with_capacity(n * n);
    for _ in 0..n {
        let (line, toks) = lines.expect()?;
        if toks.len() != n {
            return Err(err(line, format!("expected {n} entries, found {}", toks.len())));
        }
        for t in toks {
            let x: u32 = num(line, t)?;
            if x as usize >= n {
                return Err(err(line, format!("entry {x} outside 0..{n}")));
            }
            table.push(x);
        }
    }
    Ok(table)
}

fn table_group(line: usize, n: usize, table: Vec<u32>) -> Result<FinGroup, ParseError> {
    let id = (0..n).find(|&e| (0..n).all(|x| table[e * n + x] as usize == x)).ok_or_else(|| invalid(line)(lazard_core::Error::NotAGroup("table has no identity".into())))?;
    FinGroup::new(n, table, id).map_err(invalid(line))
}

fn keyword(lines: &mut Lines, word: &str) -> Result<(), ParseError> {
    let (line, toks) = lines.expect()?;
    if toks != [word] {
        return Err(err(line, format!("expected `{word}`")));
    }
    Ok(())
}

pub fn parse(text: &str) -> Result<Structure, ParseError> {
    let mut lines = Lines::new(text);
    let (line, toks) = lines.next().ok_or_else(|| err(1, "empty file"))?;
    if toks.len() != 2 || toks[0] != "format" {
        return Err(err(line, "expected `format <version>`"));
    }
    let v: u32 = num(line, toks[1])?;
    if v != VERSION {
        return Err(err(line, format!("unsupported format version {v}")));
    }
    let (line, head) = lines.expect()?;
    let s = match head[0] {
        "lie" | "postlie" => {
            let shape = parse_shape(line, &head[1..])?;
            let (mut brackets, mut tri) = (Vec::new(), Vec::new());
            while let Some((line, toks)) = lines.next() {
                let target = match toks[0] {
                    "bracket" => &mut brackets,
                    "triangle" if head[0] == "postlie" => &mut tri,
                    other => return Err(err(line, format!("unexpected `{other}`"))),
                };
                let (i, j, v) = parse_entry(line, &toks[1..], &shape)?;
                if toks[0] == "bracket" && i >= j {
                    return Err(err(line, "bracket entries need i < j"));
                }
                target.push((i, j, v));
            }
            let base = LieRingSC::new(&shape, brackets).map_err(invalid(line))?;
            if head[0] == "lie" {
                Structure::Lie(base)
            } else {
                Structure::PostLie(PostLieRing::new(base, tri).map_err(invalid(line))?)
            }
        }
        "group" => {
            if head.len() != 4 || head[2] != "identity" {
                return Err(err(line, "expected `group <n> identity <idx>`"));
            }
            let n: usize = num(line, head[1])?;
            let id: usize = num(line, head[3])?;
            let table = parse_table(&mut lines, n)?;
            Structure::Group(FinGroup::new(n, table, id).map_err(invalid(line))?)
        }
        "skewbrace" => {
            if head.len() != 2 {
                return Err(err(line, "expected `skewbrace <n>`"));
            }
            let n: usize = num(line, head[1])?;
            let mut carrier = None;
            if let Some((l, toks)) = lines.peek() {
                if toks[0] == "carrier" {
                    carrier = Some(parse_shape(*l, &toks[1..])?);
                    lines.next();
                }
            }
            keyword(&mut lines, "dot")?;
            let dot = parse_table(&mut lines, n)?;
            keyword(&mut lines, "circ")?;
            let circ = parse_table(&mut lines, n)?;
            let b = SkewBrace::new(table_group(line, n, dot)?, table_group(line, n, circ)?).map_err(invalid(line))?;
            match carrier {
                Some(shape) => Structure::Brace(b.with_carrier(shape).map_err(invalid(line))?),
                None => Structure::Brace(b),
            }
        }
        other => return Err(err(line, format!("unknown structure kind `{other}`"))),
    };
    if let Some((line, _)) = lines.next() {
        return Err(err(line, "trailing content"));
    }
    Ok(s)
}

fn write_shape(out: &mut String, shape: &Shape) {
    write!(out, " {}", shape.p()).unwrap();
    for e in shape.exps() {
        write!(out, " {e}").unwrap();
    }
}

fn write_entry(out: &mut String, kind: &str, i: usize, j: usize, v: &PVec) {
    write!(out, "{kind} {} {}", i + 1, j + 1).unwrap();
    for c in v.coords() {
        write!(out, " {c}").unwrap();
    }
    out.push('\n');
}

fn write_brackets(out: &mut String, l: &LieRingSC) {
    let r = l.shape().rank();
    for i in 0..r {
        for j in i + 1..r {
            let v = l.structure(i, j);
            if !v.is_zero() {
                write_entry(out, "bracket", i, j, v);
            }
        }
    }
}

fn write_table(out: &mut String, n: usize, table: &[u32]) {
    for row in table.chunks(n) {
        let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", r.join(" ")).unwrap();
    }
}

pub fn write(s: &Structure) -> String {
    let mut out = format!("format {VERSION}\n");
    match s {
        Structure::Lie(l) => {
            out.push_str("lie");
            write_shape(&mut out, l.shape());
            out.push('\n');
            write_brackets(&mut out, l);
        }
        Structure::PostLie(p) => {
            out.push_str("postlie");
            write_shape(&mut out, p.shape());
            out.push('\n');
            write_brackets(&mut out, p.base());
            let r = p.shape().rank();
            for i in 0..r {
                for j in 0..r {
                    let v = p.product(i, j);
                    if !v.is_zero() {
                        write_entry(&mut out, "triangle", i, j, v);
                    }
                }
            }
        }
        Structure::Group(g) => {
            writeln!(out, "group {} identity {}", g.order(), g.identity()).unwrap();
            write_table(&mut out, g.order(), g.table());
        }
        Structure::Brace(b) => {
            writeln!(out, "skewbrace {}", b.order()).unwrap();
            if let Some(shape) = b.carrier() {
                out.push_str("carrier");
                write_shape(&mut out, shape);
                out.push('\n');
            }
            out.push_str("dot\n");
            write_table(&mut out, b.order(), b.dot().table());
            out.push_str("circ\n");
            write_table(&mut out, b.order(), b.circ().table());
        }
    }
    out
}
