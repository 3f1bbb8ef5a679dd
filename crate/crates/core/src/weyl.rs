//! The Weyl group acting on weights and roots through words in simple reflections.
//!
//! A word `[j1, j2, ..., jm]` stands for `s_{j1} s_{j2} ... s_{jm}` and acts
//! right-to-left: `s_{jm}` is applied first.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootcore::{Root, RootDatum, Weight};

pub const DEFAULT_ORBIT_CAP: usize = 10_000_000;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeylWord {
    pub letters: Vec<usize>,
}

impl WeylWord {
    pub fn identity() -> WeylWord {
        WeylWord::default()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `s_j * self`.
    pub fn prepend(&self, j: usize) -> WeylWord {
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        letters.push(j);
        letters.extend_from_slice(&self.letters);
        WeylWord { letters }
    }

    pub fn inverse(&self) -> WeylWord {
        WeylWord { letters: self.letters.iter().rev().copied().collect() }
    }

    /// `self * other`.
    pub fn compose(&self, other: &WeylWord) -> WeylWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        WeylWord { letters }
    }
}

/// Reflection at the node in coordinate position `p`.
pub(crate) fn reflect_at(datum: &RootDatum, p: usize, lambda: &mut [i64]) {
    let c = lambda[p];
    if c != 0 {
        for (x, a) in lambda.iter_mut().zip(datum.simple_root_weight_at(p)) {
            *x -= c * a;
        }
    }
}

/// `s_j(lambda) = lambda - <lambda, alpha_j^vee> alpha_j`.
pub fn reflect(datum: &RootDatum, j: usize, lambda: &Weight) -> Result<Weight> {
    let p = datum.idx(j)?;
    let mut v = lambda.0.clone();
    reflect_at(datum, p, &mut v);
    Ok(Weight(v))
}

pub fn apply_word(datum: &RootDatum, w: &WeylWord, lambda: &Weight) -> Result<Weight> {
    let pos: Vec<usize> = w.letters.iter().map(|&j| datum.idx(j)).collect::<Result<_>>()?;
    let mut v = lambda.0.clone();
    for &p in pos.iter().rev() {
        reflect_at(datum, p, &mut v);
    }
    Ok(Weight(v))
}

/// Action on a root in simple-root coordinates.
pub fn apply_word_root(datum: &RootDatum, w: &WeylWord, beta: &Root) -> Result<Root> {
    let pos: Vec<usize> = w.letters.iter().map(|&j| datum.idx(j)).collect::<Result<_>>()?;
    let mut v = beta.0.clone();
    for &p in pos.iter().rev() {
        let c = datum.pairing_at(&v, p);
        v[p] -= c;
    }
    Ok(Root(v))
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightOrbit {
    pub seed: Weight,
    pub elements: Vec<(Weight, WeylWord)>,
    #[serde(skip)]
    index: HashMap<Weight, usize>,
}

impl WeightOrbit {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, lambda: &Weight) -> Option<usize> {
        self.index.get(lambda).copied()
    }

    pub fn contains(&self, lambda: &Weight) -> bool {
        self.index.contains_key(lambda)
    }

    pub fn word_of(&self, lambda: &Weight) -> Option<&WeylWord> {
        self.position(lambda).map(|p| &self.elements[p].1)
    }
}

pub fn weight_orbit(datum: &RootDatum, seed: &Weight) -> Result<WeightOrbit> {
    weight_orbit_capped(datum, seed, DEFAULT_ORBIT_CAP)
}

pub fn weight_orbit_capped(datum: &RootDatum, seed: &Weight, cap: usize) -> Result<WeightOrbit> {
    let gens: Vec<usize> = datum.labels().to_vec();
    subgroup_orbit(datum, seed, &gens, cap)
}

/// Orbit of the parabolic subgroup generated by the reflections at `gens`,
/// found breadth-first so that every stored word has minimal length.
pub fn subgroup_orbit(datum: &RootDatum, seed: &Weight, gens: &[usize], cap: usize) -> Result<WeightOrbit> {
    if seed.0.len() != datum.rank() {
        return Err(Error::Malformed(format!(
            "weight has {} coordinates, expected {}",
            seed.0.len(),
            datum.rank()
        )));
    }
    let mut gens: Vec<(usize, usize)> =
        gens.iter().map(|&j| datum.idx(j).map(|p| (j, p))).collect::<Result<_>>()?;
    gens.sort_unstable();
    let mut elements = vec![(seed.clone(), WeylWord::identity())];
    let mut index = HashMap::from([(seed.clone(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(e) = queue.pop_front() {
        for &(j, p) in &gens {
            if elements[e].0 .0[p] == 0 {
                continue;
            }
            let mut v = elements[e].0 .0.clone();
            reflect_at(datum, p, &mut v);
            let v = Weight(v);
            if index.contains_key(&v) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::OrbitCap { cap });
            }
            let word = elements[e].1.prepend(j);
            index.insert(v.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push((v, word));
        }
    }
    Ok(WeightOrbit { seed: seed.clone(), elements, index })
}

/// A reduced word for the longest element, found by driving `rho` to the
/// antidominant chamber.
pub fn longest_element(datum: &RootDatum) -> WeylWord {
    let mut v = vec![1; datum.rank()];
    let mut applied = vec![];
    while let Some(p) = v.iter().position(|&c| c > 0) {
        reflect_at(datum, p, &mut v);
        applied.push(datum.label(p));
    }
    applied.reverse();
    WeylWord { letters: applied }
}

/// The permutation `j -> j'` with `w0(alpha_j) = -alpha_{j'}`, for any datum.
pub(crate) fn opposition_involution(datum: &RootDatum) -> BTreeMap<usize, usize> {
    let w0 = longest_element(datum);
    let mut perm = BTreeMap::new();
    for &j in datum.labels() {
        let img = apply_word_root(datum, &w0, &datum.simple_root(j).expect("own label"))
            .expect("own word");
        let p = img.0.iter().position(|&c| c == -1).expect("w0 sends simple roots to negative simple roots");
        perm.insert(j, datum.label(p));
    }
    perm
}

pub fn w0_node_involution(datum: &RootDatum) -> Result<BTreeMap<usize, usize>> {
    if !datum.dynkin().is_irreducible() {
        return Err(Error::Reducible(datum.dynkin().to_string()));
    }
    Ok(opposition_involution(datum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootcore::Family;
    use proptest::prelude::*;

    fn weyl_order(f: Family, r: usize) -> u64 {
        let fact = |n: u64| (1..=n).product::<u64>();
        match f {
            Family::A => fact(r as u64 + 1),
            Family::B | Family::C => (1u64 << r) * fact(r as u64),
            Family::D => (1u64 << (r - 1)) * fact(r as u64),
            Family::E => [51_840, 2_903_040, 696_729_600][r - 6],
            Family::F => 1152,
            Family::G => 12,
        }
    }

    #[test]
    fn reflection_examples() {
        let a2 = RootDatum::simple(Family::A, 2).unwrap();
        let w1 = a2.fundamental_weight(1).unwrap();
        assert_eq!(reflect(&a2, 1, &w1).unwrap().0, vec![-1, 1]);
        assert_eq!(reflect(&a2, 2, &w1).unwrap(), w1);
        assert!(reflect(&a2, 3, &w1).is_err());
    }

    #[test]
    fn orbit_sizes() {
        for n in 2..=6 {
            let d = RootDatum::simple(Family::A, n - 1).unwrap();
            let o = weight_orbit(&d, &d.fundamental_weight(1).unwrap()).unwrap();
            assert_eq!(o.len(), n);
        }
        let e7 = RootDatum::simple(Family::E, 7).unwrap();
        assert_eq!(weight_orbit(&e7, &e7.fundamental_weight(7).unwrap()).unwrap().len(), 56);
        let o4 = weight_orbit(&e7, &e7.fundamental_weight(4).unwrap()).unwrap();
        // stabilizer of omega_4 is W(A2 x A3 x A1) = 6 * 24 * 2
        assert_eq!(o4.len() as u64, 2_903_040 / (6 * 24 * 2));
        assert_eq!(o4.len(), 10080);
        assert!(matches!(
            weight_orbit_capped(&e7, &e7.fundamental_weight(4).unwrap(), 100),
            Err(Error::OrbitCap { cap: 100 })
        ));
    }

    #[test]
    fn orbit_words_and_closure() {
        let types = [
            (Family::A, 4),
            (Family::B, 3),
            (Family::C, 4),
            (Family::D, 5),
            (Family::E, 6),
            (Family::F, 4),
            (Family::G, 2),
        ];
        for (f, r) in types {
            let d = RootDatum::simple(f, r).unwrap();
            for k in 1..=r {
                let seed = d.fundamental_weight(k).unwrap();
                let o = weight_orbit(&d, &seed).unwrap();
                assert_eq!(weyl_order(f, r) % o.len() as u64, 0);
                assert_eq!(o.elements[0].1, WeylWord::identity());
                for (lambda, w) in &o.elements {
                    assert_eq!(&apply_word(&d, w, &seed).unwrap(), lambda);
                    for j in 1..=r {
                        assert!(o.contains(&reflect(&d, j, lambda).unwrap()));
                    }
                }
            }
            // rho has trivial stabilizer: its orbit is all of W
            if weyl_order(f, r) < 100_000 {
                let rho = Weight(vec![1; r]);
                assert_eq!(weight_orbit(&d, &rho).unwrap().len() as u64, weyl_order(f, r));
            }
        }
    }

    #[test]
    fn longest_elements() {
        let a1 = RootDatum::simple(Family::A, 1).unwrap();
        assert_eq!(longest_element(&a1).letters, vec![1]);
        let a2 = RootDatum::simple(Family::A, 2).unwrap();
        assert_eq!(longest_element(&a2).len(), 3);
        let e7 = RootDatum::simple(Family::E, 7).unwrap();
        assert_eq!(longest_element(&e7).len(), 63);
        for (f, r) in [(Family::B, 4), (Family::D, 5), (Family::E, 6), (Family::F, 4), (Family::G, 2)] {
            let d = RootDatum::simple(f, r).unwrap();
            let w0 = longest_element(&d);
            assert_eq!(w0.len(), d.positive_roots().len());
            for beta in d.positive_roots() {
                assert!(!apply_word_root(&d, &w0, beta).unwrap().is_positive());
            }
        }
    }

    #[test]
    fn involutions() {
        let perm = |d: &RootDatum| w0_node_involution(d).unwrap().into_iter().collect::<Vec<_>>();
        let a3 = RootDatum::simple(Family::A, 3).unwrap();
        assert_eq!(perm(&a3), vec![(1, 3), (2, 2), (3, 1)]);
        let d4 = RootDatum::simple(Family::D, 4).unwrap();
        assert!(perm(&d4).iter().all(|(a, b)| a == b));
        let e6 = RootDatum::simple(Family::E, 6).unwrap();
        assert_eq!(perm(&e6), vec![(1, 6), (2, 2), (3, 5), (4, 4), (5, 3), (6, 1)]);
        let d5 = RootDatum::simple(Family::D, 5).unwrap();
        assert_eq!(perm(&d5)[3..], [(4, 5), (5, 4)]);
        for (f, r) in [(Family::B, 3), (Family::C, 3), (Family::E, 7), (Family::E, 8), (Family::F, 4), (Family::G, 2)] {
            let d = RootDatum::simple(f, r).unwrap();
            assert!(perm(&d).iter().all(|(a, b)| a == b), "{f:?}{r}");
        }
        for (f, r) in [(Family::A, 5), (Family::D, 5), (Family::E, 6)] {
            let d = RootDatum::simple(f, r).unwrap();
            let s = w0_node_involution(&d).unwrap();
            for a in 1..=r {
                for b in 1..=r {
                    assert_eq!(d.cartan()[s[&a] - 1][s[&b] - 1], d.cartan()[a - 1][b - 1]);
                }
            }
        }
        let sub = RootDatum::simple(Family::A, 5).unwrap().delete_node(3).unwrap();
        assert!(w0_node_involution(&sub).is_err());
        let s = opposition_involution(&sub);
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![(1, 2), (2, 1), (4, 5), (5, 4)]);
    }

    proptest! {
        #[test]
        fn reflections_are_involutions(coords in proptest::collection::vec(-20i64..20, 5), j in 1usize..=5) {
            let d = RootDatum::simple(Family::D, 5).unwrap();
            let lambda = Weight(coords);
            let once = reflect(&d, j, &lambda).unwrap();
            prop_assert_eq!(reflect(&d, j, &once).unwrap(), lambda.clone());
            prop_assert_eq!(once == lambda, lambda.0[j - 1] == 0);
        }

        #[test]
        fn word_inverse_undoes(coords in proptest::collection::vec(-5i64..5, 4), letters in proptest::collection::vec(1usize..=4, 0..12)) {
            let d = RootDatum::simple(Family::F, 4).unwrap();
            let w = WeylWord { letters };
            let lambda = Weight(coords);
            let there = apply_word(&d, &w, &lambda).unwrap();
            prop_assert_eq!(apply_word(&d, &w.inverse(), &there).unwrap(), lambda);
        }
    }
}
