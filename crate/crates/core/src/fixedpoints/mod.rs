//! Fixed-point components of the `H_i`-action on `D(k) = G/P_k` for a short
//! grading `sigma_i`.
//!
//! The torus-fixed points of `D(k)` are the weights `w(omega_k)`. A fixed
//! component is an orbit of the Weyl group `W^perp` of the diagram with node
//! `i` deleted, isomorphic to `D^perp(J)` where `J` is the support of its
//! dominant member. Its linearization weight is
//! `mu = sigma_i(omega_k - w(omega_k))`, so the identity coset (the sink) has
//! `mu = 0`.
//!
//! Tangent directions at `w P_k` are the root spaces `w(beta)` with
//! `sigma_k(beta) < 0`; their `sigma_i`-height decides whether they are
//! tangent to the component (0), or normal of negative (-1) or positive (+1)
//! weight. With this sign rule the sink carries only negative normal
//! directions and the source only positive ones.

pub mod character;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gradings::is_short;
use crate::rootcore::{restrict_weight, rh_dimension, Root, RootDatum, Weight};
use crate::weyl::{
    apply_word, apply_word_root, longest_element, reflect_at, subgroup_orbit, weight_orbit_capped, WeylWord,
    DEFAULT_ORBIT_CAP,
};

pub use character::{decompose_character, decompose_levi, irreducible_character, Irreducible};

/// Multiset of torus weights.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WeightMultiset {
    dim: usize,
    #[serde(serialize_with = "entries_as_list")]
    entries: BTreeMap<Weight, usize>,
}

fn entries_as_list<S: Serializer>(m: &BTreeMap<Weight, usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.iter())
}

impl WeightMultiset {
    pub fn new(dim: usize) -> WeightMultiset {
        WeightMultiset { dim, entries: BTreeMap::new() }
    }

    pub fn from_weights(dim: usize, weights: impl IntoIterator<Item = Weight>) -> WeightMultiset {
        let mut m = WeightMultiset::new(dim);
        for w in weights {
            m.insert(w, 1);
        }
        m
    }

    pub fn insert(&mut self, w: Weight, mult: usize) {
        assert_eq!(w.0.len(), self.dim, "weight of the wrong length");
        if mult > 0 {
            *self.entries.entry(w).or_insert(0) += mult;
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn get(&self, w: &Weight) -> usize {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<Weight, usize> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Image under the reflection at coordinate position `p`.
    pub fn reflected(&self, datum: &RootDatum, p: usize) -> WeightMultiset {
        let mut out = WeightMultiset::new(self.dim);
        for (w, &m) in &self.entries {
            let mut v = w.0.clone();
            reflect_at(datum, p, &mut v);
            out.insert(Weight(v), m);
        }
        out
    }

    pub fn union(&self, o: &WeightMultiset) -> WeightMultiset {
        let mut out = self.clone();
        for (w, &m) in &o.entries {
            out.insert(w.clone(), m);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedComponent {
    #[serde(rename = "J")]
    pub marking: BTreeSet<usize>,
    /// `D^perp(J)` in the notation `A2(1) x pt`.
    #[serde(rename = "type")]
    pub name: String,
    pub mu: i64,
    pub dim: usize,
    pub nu_minus: usize,
    pub nu_plus: usize,
    #[serde(rename = "fixed_points")]
    pub orbit_size: usize,
    pub rep_word: WeylWord,
    #[serde(skip)]
    pub rep_weight: Weight,
    /// The `W^perp`-dominant member.
    #[serde(skip)]
    pub dominant: Weight,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ambient {
    #[serde(rename = "type")]
    pub name: String,
    pub rank: usize,
    pub k: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ActionReport {
    pub ambient: Ambient,
    pub i: usize,
    /// Type of the diagram with node `i` deleted.
    pub perp: String,
    pub ambient_dim: usize,
    pub delta: i64,
    /// Sorted by `(mu, J)`.
    pub components: Vec<FixedComponent>,
}

impl ActionReport {
    pub fn sink(&self) -> &FixedComponent {
        &self.components[0]
    }

    pub fn source(&self) -> &FixedComponent {
        self.components.last().expect("at least one component")
    }

    pub fn total_fixed_points(&self) -> usize {
        self.components.iter().map(|c| c.orbit_size).sum()
    }
}

/// `sigma_i(omega_k - w(omega_k))`, accumulated along the word.
fn mu_along(datum: &RootDatum, pi: usize, word: &WeylWord, seed: &Weight) -> Result<i64> {
    let mut v = seed.0.clone();
    let mut mu = 0;
    for &j in word.letters.iter().rev() {
        let p = datum.idx(j)?;
        if p == pi {
            mu += v[p];
        }
        reflect_at(datum, p, &mut v);
    }
    Ok(mu)
}

fn require_short(datum: &RootDatum, i: usize) -> Result<()> {
    if is_short(datum, i)? {
        Ok(())
    } else {
        Err(Error::NotShort { ty: datum.dynkin().to_string(), node: i })
    }
}

pub fn enumerate_components(datum: &RootDatum, i: usize, k: usize) -> Result<ActionReport> {
    enumerate_components_capped(datum, i, k, DEFAULT_ORBIT_CAP)
}

pub fn enumerate_components_capped(datum: &RootDatum, i: usize, k: usize, cap: usize) -> Result<ActionReport> {
    require_short(datum, i)?;
    let pi = datum.idx(i)?;
    let pk = datum.idx(k)?;
    let perp = datum.delete_node(i)?;
    let ambient_dim = rh_dimension(datum, &BTreeSet::from([k]))?;
    let seed = datum.fundamental_weight(k)?;
    let orbit = weight_orbit_capped(datum, &seed, cap)?;
    let perp_gens: Vec<usize> = perp.labels().to_vec();
    let tangent: Vec<&Root> = datum.roots().iter().filter(|b| b.0[pk] < 0).collect();

    let mut assigned = vec![false; orbit.len()];
    let mut components = vec![];
    for (e, (lambda, word)) in orbit.elements.iter().enumerate() {
        if assigned[e] {
            continue;
        }
        let members = subgroup_orbit(datum, lambda, &perp_gens, cap)?;
        let mu = mu_along(datum, pi, word, &seed)?;
        let mut dominant = None;
        for (m, _) in &members.elements {
            let pos = orbit
                .position(m)
                .ok_or_else(|| Error::Inconsistent("W-perp orbit leaves the W-orbit".into()))?;
            assigned[pos] = true;
            if mu_along(datum, pi, &orbit.elements[pos].1, &seed)? != mu {
                return Err(Error::Inconsistent(format!("mu is not constant on the component of {lambda:?}")));
            }
            if m.0.iter().enumerate().all(|(p, &c)| p == pi || c >= 0) {
                dominant = Some(m.clone());
            }
        }
        let dominant = dominant.ok_or_else(|| Error::Inconsistent("component without dominant member".into()))?;
        let marking: BTreeSet<usize> = perp_gens
            .iter()
            .copied()
            .filter(|&j| dominant.0[datum.idx(j).expect("own label")] > 0)
            .collect();

        let (mut dim, mut nu_minus, mut nu_plus) = (0, 0, 0);
        for beta in &tangent {
            match apply_word_root(datum, word, beta)?.0[pi] {
                0 => dim += 1,
                -1 => nu_minus += 1,
                1 => nu_plus += 1,
                h => return Err(Error::Inconsistent(format!("tangent weight of sigma_{i}-height {h}"))),
            }
        }
        let expected = rh_dimension(&perp, &marking)?;
        if dim != expected || dim + nu_minus + nu_plus != ambient_dim {
            return Err(Error::Inconsistent(format!(
                "component {marking:?}: dim {dim} (expected {expected}), normal ranks {nu_minus}+{nu_plus}, ambient {ambient_dim}"
            )));
        }
        components.push(FixedComponent {
            name: perp.dynkin().marked_name(&marking),
            marking,
            mu,
            dim,
            nu_minus,
            nu_plus,
            orbit_size: members.len(),
            rep_word: word.clone(),
            rep_weight: lambda.clone(),
            dominant,
        });
    }
    components.sort_by(|a, b| (a.mu, &a.marking).cmp(&(b.mu, &b.marking)));

    let delta = components.last().map_or(0, |c| c.mu);
    let at = |m: i64| components.iter().filter(|c| c.mu == m).count();
    if components[0].mu != 0 || at(0) != 1 || at(delta) != 1 {
        return Err(Error::Inconsistent("sink or source is not a single component".into()));
    }
    let w0_seed = apply_word(datum, &longest_element(datum), &seed)?;
    let source_members = subgroup_orbit(datum, &w0_seed, &perp_gens, cap)?;
    if !source_members.contains(&components.last().expect("nonempty").rep_weight) {
        return Err(Error::Inconsistent("maximal-mu component does not contain w0(omega_k)".into()));
    }

    let comp = &datum.dynkin().components[0];
    Ok(ActionReport {
        ambient: Ambient { name: comp.name(), rank: comp.rank, k },
        i,
        perp: perp.dynkin().to_string(),
        ambient_dim,
        delta,
        components,
    })
}

/// `delta = mu(Y_+) - mu(Y_-)`.
pub fn chamber_count(datum: &RootDatum, i: usize, k: usize) -> Result<i64> {
    Ok(enumerate_components(datum, i, k)?.delta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Sink,
    Source,
}

/// Weights of the normal bundle of the sink or source at its base fixed
/// point, restricted to the torus of the deleted diagram.
pub fn normal_weights(datum: &RootDatum, i: usize, k: usize, side: Side) -> Result<WeightMultiset> {
    require_short(datum, i)?;
    let pi = datum.idx(i)?;
    let pk = datum.idx(k)?;
    let w0 = longest_element(datum);
    let mut out = WeightMultiset::new(datum.rank() - 1);
    for beta in datum.positive_roots().iter().filter(|b| b.0[pi] > 0) {
        let w = match side {
            Side::Sink if beta.0[pk] > 0 => -&datum.root_to_weight(beta),
            Side::Source if apply_word_root(datum, &w0, beta)?.0[pk] < 0 => datum.root_to_weight(beta),
            _ => continue,
        };
        out.insert(restrict_weight(datum, i, &w)?, 1);
    }
    Ok(out)
}

/// Nodes of the deleted diagram whose reflections fix the base point of the
/// sink or source: the Levi factor acting on the normal fibre.
pub fn normal_levi(datum: &RootDatum, i: usize, k: usize, side: Side) -> Result<Vec<usize>> {
    let mut base = datum.fundamental_weight(k)?;
    if side == Side::Source {
        base = apply_word(datum, &longest_element(datum), &base)?;
    }
    Ok(datum
        .labels()
        .iter()
        .copied()
        .filter(|&j| j != i && base.0[datum.idx(j).expect("own label")] == 0)
        .collect())
}

/// Decomposition of the normal fibre into irreducible modules of the Levi factor.
pub fn peel_normal(datum: &RootDatum, i: usize, k: usize, side: Side) -> Result<Vec<Irreducible>> {
    let perp = datum.delete_node(i)?;
    let weights = normal_weights(datum, i, k, side)?;
    let levi = normal_levi(datum, i, k, side)?;
    decompose_levi(&perp, &levi, &weights)
}
