//! Decomposition of weight multisets into irreducible characters by peeling
//! off highest weights, with the irreducible characters computed by
//! Freudenthal's multiplicity formula.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::Zero;
use serde::Serialize;

use super::WeightMultiset;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{q, Q};
use crate::rootcore::{RootDatum, Weight};

pub const PEEL_MAX_RANK: usize = 7;
pub const PEEL_MAX_MODULE: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Irreducible {
    pub highest: Weight,
    pub multiplicity: usize,
    pub dim: usize,
}

/// Weights of the irreducible module with the given highest weight, as
/// offsets `c` with `mu = lambda - sum_m c_m alpha_m`, and multiplicities.
fn freudenthal(datum: &RootDatum, lambda: &[i64]) -> Result<Vec<(Vec<i64>, i64)>> {
    let r = datum.rank();
    if lambda.iter().any(|&c| c < 0) {
        return Err(Error::NotACharacter(format!("highest weight {lambda:?} is not dominant")));
    }
    let cartan = datum.cartan();
    let d: Vec<i64> = datum.normsq().iter().map(|n| n / 2).collect();
    let positive: Vec<(Vec<i64>, Vec<i64>)> = datum
        .positive_roots()
        .iter()
        .map(|a| (a.0.clone(), datum.root_to_weight(a).0))
        .collect();
    let weight_at = |c: &[i64]| -> Vec<i64> {
        (0..r).map(|j| lambda[j] - (0..r).map(|m| c[m] * cartan[m][j]).sum::<i64>()).collect()
    };
    // (x, alpha) for x in fundamental coordinates and alpha in root coordinates
    let pair = |x: &[i64], a: &[i64]| -> i64 { (0..r).map(|j| a[j] * x[j] * d[j]).sum() };

    let mut mult: HashMap<Vec<i64>, i64> = HashMap::from([(vec![0; r], 1)]);
    let mut out = vec![(vec![0; r], 1)];
    let mut total = 1i64;
    let mut level = vec![vec![0; r]];
    while !level.is_empty() {
        let mut candidates = BTreeSet::new();
        for c in &level {
            for j in 0..r {
                let mut n = c.clone();
                n[j] += 1;
                candidates.insert(n);
            }
        }
        let mut next = vec![];
        for c in candidates {
            let mu = weight_at(&c);
            let coeff: i64 = (0..r).map(|j| c[j] * (lambda[j] + mu[j] + 2) * d[j]).sum();
            let mut rhs = 0i64;
            for (a, aw) in &positive {
                let mut shifted_c = c.clone();
                let mut shifted_mu = mu.clone();
                loop {
                    for j in 0..r {
                        shifted_c[j] -= a[j];
                        shifted_mu[j] += aw[j];
                    }
                    if shifted_c.iter().any(|&x| x < 0) {
                        break;
                    }
                    if let Some(&m) = mult.get(&shifted_c) {
                        rhs += 2 * m * pair(&shifted_mu, a);
                    }
                }
            }
            let m = if coeff == 0 {
                if rhs != 0 {
                    return Err(Error::Inconsistent(format!("Freudenthal recursion broke down at {mu:?}")));
                }
                0
            } else if rhs % coeff != 0 || rhs / coeff < 0 {
                return Err(Error::Inconsistent(format!("non-integral multiplicity {rhs}/{coeff} at {mu:?}")));
            } else {
                rhs / coeff
            };
            if m > 0 {
                total += m;
                if total as usize > PEEL_MAX_MODULE {
                    return Err(Error::ModuleCap { rank: total as usize, cap: PEEL_MAX_MODULE });
                }
                mult.insert(c.clone(), m);
                out.push((c.clone(), m));
                next.push(c);
            }
        }
        level = next;
    }
    Ok(out)
}

/// Character of the irreducible module of the full group of `datum`.
pub fn irreducible_character(datum: &RootDatum, highest: &Weight) -> Result<WeightMultiset> {
    check_caps(datum, 0)?;
    let mut out = WeightMultiset::new(datum.rank());
    for (c, m) in freudenthal(datum, &highest.0)? {
        let w = (0..datum.rank())
            .map(|j| highest.0[j] - (0..datum.rank()).map(|p| c[p] * datum.cartan()[p][j]).sum::<i64>())
            .collect();
        out.insert(Weight(w), m as usize);
    }
    Ok(out)
}

fn check_caps(datum: &RootDatum, module: usize) -> Result<()> {
    if datum.rank() > PEEL_MAX_RANK {
        return Err(Error::RankCap { rank: datum.rank(), cap: PEEL_MAX_RANK });
    }
    if module > PEEL_MAX_MODULE {
        return Err(Error::ModuleCap { rank: module, cap: PEEL_MAX_MODULE });
    }
    Ok(())
}

pub fn decompose_character(datum: &RootDatum, weights: &WeightMultiset) -> Result<Vec<Irreducible>> {
    decompose_levi(datum, datum.labels(), weights)
}

/// Decompose a character of the full torus of `datum` into irreducible
/// modules of the reductive subgroup generated by the nodes `levi`.
pub fn decompose_levi(datum: &RootDatum, levi: &[usize], weights: &WeightMultiset) -> Result<Vec<Irreducible>> {
    check_caps(datum, weights.total())?;
    if weights.dim() != datum.rank() {
        return Err(Error::Malformed(format!(
            "weights have {} coordinates, expected {}",
            weights.dim(),
            datum.rank()
        )));
    }
    let sub = datum.subdatum(levi)?;
    let pos: Vec<usize> = sub.labels().iter().map(|&l| datum.idx(l)).collect::<Result<_>>()?;
    for (&label, &p) in sub.labels().iter().zip(&pos) {
        if weights.reflected(datum, p) != *weights {
            return Err(Error::NotInvariant { reflection: label });
        }
    }
    let r = sub.rank();
    let cinv = Matrix::from_i64(sub.cartan()).inverse().expect("Cartan matrices are invertible");
    let height = |w: &Weight| -> Q {
        let mut h = Q::zero();
        for a in 0..r {
            for b in 0..r {
                h += q(w.0[pos[a]]) * &cinv[(a, b)];
            }
        }
        h
    };

    let mut remaining: BTreeMap<Weight, i64> = weights.entries().iter().map(|(w, &m)| (w.clone(), m as i64)).collect();
    let mut out = vec![];
    while !remaining.is_empty() {
        let top = remaining
            .keys()
            .map(|w| (height(w), w))
            .max()
            .map(|(_, w)| w.clone())
            .expect("nonempty");
        let restricted: Vec<i64> = pos.iter().map(|&p| top.0[p]).collect();
        if restricted.iter().any(|&c| c < 0) {
            return Err(Error::NotACharacter(format!("maximal weight {:?} is not dominant", top.0)));
        }
        let m = remaining[&top];
        let mut dim = 0;
        for (c, mult) in freudenthal(&sub, &restricted)? {
            let mut w = top.0.clone();
            for (a, &p) in pos.iter().enumerate() {
                if c[a] != 0 {
                    for (x, y) in w.iter_mut().zip(&datum.cartan()[p]) {
                        *x -= c[a] * y;
                    }
                }
            }
            let w = Weight(w);
            let left = remaining.get(&w).copied().unwrap_or(0) - m * mult;
            if left < 0 {
                return Err(Error::NotACharacter(format!("weight {:?} is short by {}", w.0, -left)));
            }
            if left == 0 {
                remaining.remove(&w);
            } else {
                remaining.insert(w, left);
            }
            dim += mult as usize;
        }
        out.push(Irreducible { highest: top, multiplicity: m as usize, dim });
    }
    Ok(out)
}
