use super::construct_s;
use crate::error::{Error, Result};
use crate::liering::FinGroup;
use crate::modarith::PVec;
use crate::postlie::{IdealType, PostLieRing};
use crate::skewbrace::SkewBrace;
use crate::subset::Subset;

#[derive(Clone, Debug)]
pub struct TransferReport {
    pub brace: SkewBrace,
    /// Every subset examined, with its common classification.
    pub classes: Vec<(Subset, IdealType)>,
    /// (post-Lie, brace) right nilpotency, when the base is nilpotent.
    pub right_nilpotent: Option<(bool, bool)>,
}

/// Compares substructures and subgroup classifications of `p` and `construct_s(p)` on the shared carrier.
pub fn transfer_check(p: &PostLieRing, cap: usize) -> Result<TransferReport> {
    let n = p.order();
    if n > cap {
        return Err(Error::CapExceeded { order: n, cap });
    }
    let brace = construct_s(p)?;
    let (sp, sb) = (p.substructures()?, brace.substructures()?);
    if sp != sb {
        return Err(Error::TheoremViolation(format!("substructures differ: {sp:?} vs {sb:?}")));
    }
    let shape = p.shape();
    let add = FinGroup::from_fn(n, 0, |a, b| (&PVec::from_index(shape, a) + &PVec::from_index(shape, b)).index())?;
    let mut subsets = add.all_subgroups();
    subsets.extend(brace.dot().all_subgroups());
    subsets.sort_by_key(|s| (s.len(), s.members().collect::<Vec<_>>()));
    subsets.dedup();
    let mut classes = Vec::with_capacity(subsets.len());
    for s in subsets {
        let (tp, tb) = (p.ideal_type(&s), brace.ideal_type(&s));
        if tp != tb {
            return Err(Error::TheoremViolation(format!("{s:?} is a {tp} of the post-Lie ring but a {tb} of the brace")));
        }
        classes.push((s, tp));
    }
    let right_nilpotent = p.base().class().map(|_| (p.right_nilpotent(), brace.right_nilpotent()));
    if let Some((x, y)) = right_nilpotent {
        if x != y {
            return Err(Error::TheoremViolation(format!("right nilpotency differs: {x} vs {y}")));
        }
    }
    Ok(TransferReport { brace, classes, right_nilpotent })
}
