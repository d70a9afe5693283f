use std::fmt::Write;
use std::sync::OnceLock;

use super::lyndon::LyndonBasis;
use super::tensor::Word;
use super::words::{bch_table, derive_inverse_words, GroupWord, LieSeries};
use crate::error::{Error, Result};
use crate::modarith::PScalar;

pub const FORMAT_VERSION: u32 = 1;

const EMBEDDED: &str = include_str!("../../data/words_c6.txt");

/// BCH series and inverse words P, Q at a common class bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordTables {
    pub c: usize,
    pub bch: LieSeries,
    pub p: GroupWord,
    pub q: GroupWord,
}

impl WordTables {
    pub fn derive(c: usize) -> Result<WordTables> {
        let basis = LyndonBasis::new(c)?;
        let bch = bch_table(&basis)?;
        let (p, q) = derive_inverse_words(c)?;
        Ok(WordTables { c, bch, p, q })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "lazard-words {FORMAT_VERSION}").unwrap();
        writeln!(s, "class {}", self.c).unwrap();
        writeln!(s, "basis lyndon-standard-bracketing").unwrap();
        writeln!(s, "commutator g^-1 h^-1 g h").unwrap();
        let mut section = |name: &str, letters: [char; 2], rows: &[(Word, PScalar)]| {
            writeln!(s, "section {name}").unwrap();
            for (w, q) in rows {
                writeln!(s, "{}\t{}\t{}/{}", w.len(), w.bracketed(letters), q.num(), q.den()).unwrap();
            }
        };
        section("BCH", ['x', 'y'], &self.bch.terms);
        section("P", ['g', 'h'], &self.p.factors);
        section("Q", ['g', 'h'], &self.q.factors);
        s
    }

    pub fn parse(text: &str) -> Result<WordTables> {
        let bad = |n: usize, m: &str| Error::InvalidArgument(format!("word table line {}: {m}", n + 1));
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (n, head) = lines.next().ok_or_else(|| bad(0, "empty"))?;
        if head.trim() != format!("lazard-words {FORMAT_VERSION}") {
            return Err(bad(n, "unsupported header"));
        }
        let mut c = 0usize;
        let mut rows: [Vec<(Word, PScalar)>; 3] = Default::default();
        let mut current: Option<usize> = None;
        for (n, line) in lines {
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() == 1 {
                let mut it = line.split_whitespace();
                match (it.next(), it.next()) {
                    (Some("class"), Some(v)) => c = v.parse().map_err(|_| bad(n, "bad class"))?,
                    (Some("basis"), Some("lyndon-standard-bracketing")) => {}
                    (Some("commutator"), _) => {}
                    (Some("section"), Some(name)) => {
                        current = Some(match name {
                            "BCH" => 0,
                            "P" => 1,
                            "Q" => 2,
                            _ => return Err(bad(n, "unknown section")),
                        })
                    }
                    _ => return Err(bad(n, "unrecognized line")),
                }
                continue;
            }
            let sec = current.ok_or_else(|| bad(n, "row outside a section"))?;
            if fields.len() != 3 {
                return Err(bad(n, "expected three tab-separated fields"));
            }
            let letters = if sec == 0 { ['x', 'y'] } else { ['g', 'h'] };
            let w = parse_bracket(fields[1], letters).ok_or_else(|| bad(n, "bad bracket word"))?;
            let degree: usize = fields[0].parse().map_err(|_| bad(n, "bad degree"))?;
            if degree != w.len() {
                return Err(bad(n, "degree does not match word"));
            }
            let q: PScalar = fields[2].parse().map_err(|_| bad(n, "bad rational"))?;
            rows[sec].push((w, q));
        }
        let [bch, p, q] = rows;
        Ok(WordTables {
            c,
            bch: LieSeries { c, terms: bch },
            p: GroupWord { c, factors: p },
            q: GroupWord { c, factors: q },
        })
    }
}

/// Parses a standard bracketing such as `[g,[g,h]]` back to its Lyndon word.
pub fn parse_bracket(s: &str, letters: [char; 2]) -> Option<Word> {
    fn leaves(s: &str, letters: [char; 2], out: &mut Vec<u8>) -> Option<()> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let mut depth = 0i32;
            let split = inner.char_indices().find(|&(_, ch)| {
                match ch {
                    '[' => depth += 1,
                    ']' => depth -= 1,
                    _ => {}
                }
                ch == ',' && depth == 0
            })?;
            leaves(&inner[..split.0], letters, out)?;
            leaves(&inner[split.0 + 1..], letters, out)
        } else {
            for ch in s.chars() {
                out.push(letters.iter().position(|&l| l == ch)? as u8);
            }
            Some(())
        }
    }
    let mut out = Vec::new();
    leaves(s, letters, &mut out)?;
    if out.is_empty() || out.len() > 15 {
        return None;
    }
    let w = Word::from_letters(&out);
    (w.is_lyndon() && w.bracketed(letters) == s.trim()).then_some(w)
}

/// The shipped class-6 tables.
pub fn tables() -> &'static WordTables {
    static TABLES: OnceLock<WordTables> = OnceLock::new();
    TABLES.get_or_init(|| WordTables::parse(EMBEDDED).expect("embedded word table is well-formed"))
}
