//! Command implementations; each returns the text to print.

use std::fmt::Write;

use lazard_core::freelie::{self_inverts, TruncTensor, Word, WordTables};
use lazard_core::lazcorr::{construct_l, construct_s_capped, root_diff_triangle, round_trip_brace};
use lazard_core::liering::{FinGroup, LieRingSC, Report};
use lazard_core::modarith::{PShape, PVec, Shape};
use lazard_core::postlie::{aff_search, pre_lie_structures, PostLieRing, Substructures};
use lazard_core::skewbrace::{isomorphic, lambda_search, p_automorphisms, regular_subgroups, SkewBrace};
use lazard_core::subset::Subset;
use lazard_core::Error;
use thiserror::Error;

use crate::catalog::additive_group;
use crate::format::{self, ParseError, Structure};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("refused: {0}")]
    Refused(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Refused(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::NotLazard(_) | Error::CapExceeded { .. } | Error::BoundTooLarge { .. } => CliError::Refused(e.to_string()),
            Error::InvalidArgument(_) | Error::InvalidShape(_) | Error::ShapeMismatch => CliError::Parse(e.to_string()),
            _ => CliError::Verify(e.to_string()),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> CliError {
        match e {
            ParseError::Syntax { .. } => CliError::Parse(e.to_string()),
            ParseError::Invalid { .. } => CliError::Verify(e.to_string()),
        }
    }
}

pub type CliResult = Result<String, CliError>;

fn report(r: Report) -> Result<(), CliError> {
    if r.ok() {
        Ok(())
    } else {
        Err(CliError::Verify(r.failures.join("; ")))
    }
}

fn check_cap(order: usize, cap: usize) -> Result<(), CliError> {
    if order > cap {
        return Err(Error::CapExceeded { order, cap }.into());
    }
    Ok(())
}

fn describe_shape(s: &Shape) -> String {
    let e: Vec<String> = s.exps().iter().map(|e| e.to_string()).collect();
    format!("({}; [{}])", s.p(), e.join(", "))
}

fn lazard_note(k: Option<usize>, p: u64, what: &str) -> String {
    match k {
        None => format!("not {what}-nilpotent"),
        Some(k) if (k as u64) < p => format!("{what}-class {k}, Lazard (p={p})"),
        Some(k) => format!("{what}-class {k}, not Lazard (class {k} ≥ p = {p})"),
    }
}

fn list(out: &mut String, name: &str, s: &Subset, show: impl Fn(usize) -> String) {
    let m: Vec<String> = s.members().map(show).collect();
    writeln!(out, "{name} ({}): {}", s.len(), m.join(" ")).unwrap();
}

fn substructures(out: &mut String, sub: &Substructures, show: impl Fn(usize) -> String + Copy) {
    list(out, "Fix", &sub.fix, show);
    list(out, "Soc", &sub.soc, show);
    list(out, "Ann", &sub.ann, show);
}

fn series_orders(terms: &[Subset]) -> String {
    let mut v: Vec<String> = terms.iter().map(|t| t.len().to_string()).collect();
    v.push("1".into());
    v.dedup();
    v.join(" ")
}

fn check_lie(l: &LieRingSC) -> CliResult {
    report(l.verify())?;
    let p = l.shape().p();
    let lcs = l.lower_central_series();
    let mut out = match lcs.class {
        Some(c) if (c as u64) < p => format!("Lie ring, class {c}, Lazard (p={p})\n"),
        Some(c) => format!("Lie ring, class {c}, not Lazard (class {c} ≥ p = {p})\n"),
        None => "Lie ring, not nilpotent\n".to_string(),
    };
    writeln!(out, "order {} on {}", l.order(), describe_shape(l.shape())).unwrap();
    if lcs.class.is_some() {
        writeln!(out, "lower central series orders: {}", series_orders(&lcs.terms)).unwrap();
    }
    Ok(out)
}

fn check_post_lie(p: &PostLieRing) -> CliResult {
    report(p.verify())?;
    let s = p.shape().clone();
    let kind = if p.is_pre_lie() { "pre-Lie" } else { "post-Lie" };
    let mut out = format!("post-Lie ring ({kind}), {}\n", lazard_note(p.l_class(), s.p(), "L"));
    writeln!(out, "order {} on {}", p.order(), describe_shape(&s)).unwrap();
    let d = p.nilpotency_decomposition()?;
    writeln!(out, "left nilpotent: {}, base nilpotent: {}, right nilpotent: {}", d.left_nilpotent, d.base_nilpotent, p.right_nilpotent()).unwrap();
    let l = p.l_series();
    if l.class.is_some() {
        writeln!(out, "L-series orders: {}", series_orders(&l.terms)).unwrap();
        let (k, c) = p.circ_nilpotency_bound()?;
        writeln!(out, "adjoint ring class {c} (bound {k})").unwrap();
    }
    let sub = p.substructures()?;
    substructures(&mut out, &sub, |i| PVec::from_index(&s, i).to_string());
    Ok(out)
}

fn check_group(g: &FinGroup) -> CliResult {
    let mut out = match (g.prime(), g.lower_central_series().class) {
        (Some(p), Some(c)) if (c as u64) < p => format!("group, class {c}, Lazard (p={p})\n"),
        (Some(p), Some(c)) => format!("group, class {c}, not Lazard (class {c} ≥ p = {p})\n"),
        (None, _) => "group, order is not a prime power\n".to_string(),
        (Some(_), None) => "group, not nilpotent\n".to_string(),
    };
    writeln!(out, "order {}, abelian: {}, exponent {}", g.order(), g.is_abelian(), g.exponent()).unwrap();
    Ok(out)
}

fn check_brace(b: &SkewBrace) -> CliResult {
    report(b.verify())?;
    b.check_lambda()?;
    let kind = if b.is_brace() { "brace" } else { "skew brace" };
    let p = b.prime().ok_or_else(|| CliError::Refused("order is not a prime power".into()))?;
    let mut out = format!("skew brace ({kind}), {}\n", lazard_note(b.l_class(), p, "L"));
    writeln!(out, "order {}", b.order()).unwrap();
    let l = b.l_series();
    if l.class.is_some() {
        writeln!(out, "L-series orders: {}", series_orders(&l.terms)).unwrap();
        let (k, c) = b.circ_nilpotency_bound()?;
        writeln!(out, "(A, ∘) class {c} (bound {k})").unwrap();
    }
    writeln!(out, "right nilpotent: {}", b.right_nilpotent()).unwrap();
    let sub = b.substructures()?;
    substructures(&mut out, &sub, |i| i.to_string());
    Ok(out)
}

pub fn read(text: &str, cap: usize) -> Result<Structure, CliError> {
    let s = format::parse(text)?;
    let order = match &s {
        Structure::Lie(l) => l.order(),
        Structure::PostLie(p) => p.order(),
        Structure::Group(g) => g.order(),
        Structure::Brace(b) => b.order(),
    };
    check_cap(order, cap)?;
    Ok(s)
}

pub fn check(text: &str, cap: usize) -> CliResult {
    match read(text, cap)? {
        Structure::Lie(l) => check_lie(&l),
        Structure::PostLie(p) => check_post_lie(&p),
        Structure::Group(g) => check_group(&g),
        Structure::Brace(b) => check_brace(&b),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Brace,
    PostLie,
}

fn as_post_lie(s: Structure) -> Result<PostLieRing, CliError> {
    match s {
        Structure::PostLie(p) => Ok(p),
        Structure::Lie(l) => Ok(PostLieRing::trivial(l)),
        _ => Err(CliError::Parse("expected a Lie or post-Lie ring file".into())),
    }
}

fn as_brace(s: Structure) -> Result<SkewBrace, CliError> {
    match s {
        Structure::Brace(b) => Ok(b),
        Structure::Group(g) => Ok(SkewBrace::trivial(g)),
        _ => Err(CliError::Parse("expected a skew brace or group file".into())),
    }
}

fn to_brace(p: &PostLieRing, cap: usize) -> Result<SkewBrace, CliError> {
    report(p.verify())?;
    Ok(construct_s_capped(p, cap)?)
}

fn to_post_lie(b: &SkewBrace) -> Result<PostLieRing, CliError> {
    report(b.verify())?;
    Ok(construct_l(b)?.post)
}

pub fn convert(text: &str, to: Direction, cap: usize) -> CliResult {
    let s = read(text, cap)?;
    Ok(match to {
        Direction::Brace => format::write(&Structure::Brace(to_brace(&as_post_lie(s)?, cap)?)),
        Direction::PostLie => format::write(&Structure::PostLie(to_post_lie(&as_brace(s)?)?)),
    })
}

pub fn roundtrip(text: &str, cap: usize) -> CliResult {
    match read(text, cap)? {
        s @ (Structure::Lie(_) | Structure::PostLie(_)) => {
            let p = as_post_lie(s)?;
            let b = to_brace(&p, cap)?;
            let back = to_post_lie(&b)?;
            if back != p {
                return Err(CliError::Verify("construction L does not return the input ring".into()));
            }
            Ok(format!("post-Lie ring of order {} → skew brace → post-Lie ring: identical\n", p.order()))
        }
        s => {
            let b = as_brace(s)?;
            report(b.verify())?;
            if round_trip_brace(&b)? != b {
                return Err(CliError::Verify("construction S does not return the input brace".into()));
            }
            Ok(format!("skew brace of order {} → post-Lie ring → skew brace: identical\n", b.order()))
        }
    }
}

pub fn root_diff(text: &str, cap: usize) -> CliResult {
    let b = match read(text, cap)? {
        s @ (Structure::Lie(_) | Structure::PostLie(_)) => to_brace(&as_post_lie(s)?, cap)?,
        s => as_brace(s)?,
    };
    report(b.verify())?;
    let (rows, c) = root_diff_triangle(&b)?;
    let post = PostLieRing::from_matrix(c.post.base().clone(), rows)?;
    let mut out = format::write(&Structure::PostLie(post.clone()));
    let verdict = if post == c.post { "exact" } else { "differs" };
    writeln!(out, "# agreement with construction L: {verdict}").unwrap();
    Ok(out)
}

pub fn bch_words(class: usize, check: bool) -> CliResult {
    let t = WordTables::derive(class)?;
    let mut out = t.to_text();
    if check {
        let (x, y) = (TruncTensor::word(class, Word::X), TruncTensor::word(class, Word::Y));
        let ok = self_inverts(&t.p, &x.add(&y))? && self_inverts(&t.q, &x.commutator(&y))?;
        if !ok {
            return Err(CliError::Verify(format!("inverse words fail self-inversion at class {class}")));
        }
        writeln!(out, "# self-inversion verified at class {class}").unwrap();
    }
    Ok(out)
}

/// `p:e1,e2,…`, e.g. `3:1,1`.
pub fn parse_shape(spec: &str) -> Result<Shape, CliError> {
    let bad = || CliError::Parse(format!("expected a shape like `3:1,1`, found `{spec}`"));
    let (p, exps) = spec.split_once(':').ok_or_else(bad)?;
    let p: u64 = p.trim().parse().map_err(|_| bad())?;
    let exps = exps.split(',').map(|e| e.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?;
    Ok(PShape::new(p, exps)?)
}

pub enum EnumerateInput {
    Shape(Shape),
    Group(String),
}

fn dedup(braces: &[SkewBrace]) -> usize {
    let mut reps: Vec<&SkewBrace> = Vec::new();
    for b in braces {
        if !reps.iter().any(|r| isomorphic(r, b)) {
            reps.push(b);
        }
    }
    reps.len()
}

pub fn enumerate(input: EnumerateInput, iso_dedup: bool, pre_lie: bool, cap: usize) -> CliResult {
    let (dot, shape) = match input {
        EnumerateInput::Shape(s) => {
            check_cap(s.order(), cap)?;
            (additive_group(&s), Some(s))
        }
        EnumerateInput::Group(text) => match read(&text, cap)? {
            Structure::Group(g) => (g, None),
            _ => return Err(CliError::Parse("expected a group file".into())),
        },
    };
    let n = dot.order();
    let p = dot.prime().ok_or_else(|| CliError::Refused(format!("order {n} is not a prime power")))?;
    let k = n.ilog(p as usize);
    if k as u64 >= p {
        return Err(CliError::Refused(format!("order {p}^{k} needs k<p")));
    }
    let auts = p_automorphisms(&dot);
    let by_lambda = lambda_search(&dot, &auts)?;
    let by_subgroups = regular_subgroups(&dot, &auts, cap)?;
    if by_lambda != by_subgroups {
        return Err(CliError::Verify("the two brace enumerations disagree".into()));
    }
    let mut out = format!("order {n}{}\n", shape.as_ref().map(|s| format!(" on {}", describe_shape(s))).unwrap_or_default());
    writeln!(out, "skew braces (λ-backtracking): {}", by_lambda.len()).unwrap();
    writeln!(out, "skew braces (holomorph subgroups): {}", by_subgroups.len()).unwrap();
    if iso_dedup {
        writeln!(out, "skew braces up to isomorphism: {}", dedup(&by_lambda)).unwrap();
    }
    if pre_lie {
        let s = shape.ok_or_else(|| CliError::Parse("--pre-lie needs --shape".into()))?;
        let by_constants = pre_lie_structures(&s)?;
        let by_aff = aff_search(&s)?;
        if by_constants.len() != by_aff.len() || !by_constants.iter().all(|x| by_aff.contains(x)) {
            return Err(CliError::Verify("the two pre-Lie enumerations disagree".into()));
        }
        writeln!(out, "pre-Lie rings (structure constants): {}", by_constants.len()).unwrap();
        writeln!(out, "pre-Lie rings (affine search): {}", by_aff.len()).unwrap();
        let mut hit = vec![false; by_lambda.len()];
        for q in &by_constants {
            let b = construct_s_capped(q, cap)?;
            let i = by_lambda
                .iter()
                .position(|x| *x == b)
                .ok_or_else(|| CliError::Verify("a constructed brace is missing from the enumeration".into()))?;
            if hit[i] {
                return Err(CliError::Verify("two pre-Lie rings give the same brace".into()));
            }
            hit[i] = true;
            if construct_l(&by_lambda[i].clone().with_carrier(s.clone())?)?.post != *q {
                return Err(CliError::Verify("construction L does not invert construction S".into()));
            }
        }
        let paired = hit.iter().filter(|&&h| h).count();
        writeln!(out, "paired through constructions S and L: {paired} of {}", by_lambda.len()).unwrap();
        if paired != by_lambda.len() {
            return Err(CliError::Verify("the correspondence is not a bijection on this catalog".into()));
        }
        if iso_dedup {
            writeln!(out, "pre-Lie rings up to isomorphism: {}", dedup(&by_constants.iter().map(|q| construct_s_capped(q, cap)).collect::<Result<Vec<_>, _>>()?)).unwrap();
        }
    }
    Ok(out)
}
