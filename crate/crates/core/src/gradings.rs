//! Short and balanced gradings `g = g_- + g_0 + g_+` defined by a height map `sigma_i`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootcore::{Family, RootDatum};
use crate::weyl::{apply_word_root, longest_element, w0_node_involution};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingReport {
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
    pub node: usize,
    pub short: bool,
    /// Only present for short gradings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub balanced: Option<bool>,
    /// `[dim g_-, dim g_0, dim g_+]`.
    pub dims: [usize; 3],
}

fn require_irreducible(datum: &RootDatum) -> Result<()> {
    if datum.dynkin().is_irreducible() {
        Ok(())
    } else {
        Err(Error::Reducible(datum.dynkin().to_string()))
    }
}

/// Every root has `sigma_i` in `{-1, 0, 1}`. Cross-checked against the
/// coefficient of `alpha_i` in the highest root.
pub fn is_short(datum: &RootDatum, i: usize) -> Result<bool> {
    require_irreducible(datum)?;
    let p = datum.idx(i)?;
    let by_roots = datum.roots().iter().all(|b| b.0[p].abs() <= 1);
    let by_highest = datum.highest_root()?.0[p] == 1;
    if by_roots != by_highest {
        return Err(Error::Inconsistent(format!(
            "shortness of sigma_{i} on {}: root scan {by_roots}, highest root {by_highest}",
            datum.dynkin()
        )));
    }
    Ok(by_roots)
}

/// `sigma_i(w0 beta) = -sigma_i(beta)` for every root, cross-checked against
/// the node `i` being fixed by the opposition involution.
pub fn is_balanced(datum: &RootDatum, i: usize) -> Result<bool> {
    if !is_short(datum, i)? {
        return Err(Error::NotShort { ty: datum.dynkin().to_string(), node: i });
    }
    let p = datum.idx(i)?;
    let w0 = longest_element(datum);
    let mut by_roots = true;
    for beta in datum.roots() {
        let image = apply_word_root(datum, &w0, beta)?;
        if image.0[p] != -beta.0[p] {
            by_roots = false;
            break;
        }
    }
    let by_diagram = w0_node_involution(datum)?[&i] == i;
    if by_roots != by_diagram {
        return Err(Error::Inconsistent(format!(
            "balancedness of sigma_{i} on {}: root test {by_roots}, diagram test {by_diagram}",
            datum.dynkin()
        )));
    }
    Ok(by_roots)
}

pub fn grading_dims(datum: &RootDatum, i: usize) -> Result<[usize; 3]> {
    let p = datum.idx(i)?;
    let mut dims = [0, datum.rank(), 0];
    for beta in datum.roots() {
        dims[(beta.0[p].signum() + 1) as usize] += 1;
    }
    Ok(dims)
}

pub fn grading_report(datum: &RootDatum, i: usize) -> Result<GradingReport> {
    let short = is_short(datum, i)?;
    let comp = &datum.dynkin().components[0];
    Ok(GradingReport {
        family: comp.family,
        rank: comp.rank,
        node: i,
        short,
        balanced: if short { Some(is_balanced(datum, i)?) } else { None },
        dims: grading_dims(datum, i)?,
    })
}

/// One report per node of every simple type of the family with rank in the
/// inclusive range.
pub fn classify(family: Family, rank_min: usize, rank_max: usize) -> Result<Vec<GradingReport>> {
    for r in [rank_min, rank_max] {
        if !family.valid_rank(r) {
            return Err(Error::InvalidType { family, rank: r });
        }
    }
    let mut out = vec![];
    for rank in rank_min..=rank_max {
        if !family.valid_rank(rank) {
            return Err(Error::InvalidType { family, rank });
        }
        let datum = RootDatum::simple(family, rank)?;
        for i in 1..=rank {
            out.push(grading_report(&datum, i)?);
        }
    }
    Ok(out)
}
