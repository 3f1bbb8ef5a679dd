//! Root systems of (possibly reducible) Dynkin types in exact integer arithmetic.
//!
//! Conventions, fixed for the whole crate:
//!
//! * Nodes are numbered following Bourbaki within each simple component. A
//!   datum built from a [`DynkinType`] labels its nodes `1..=n`; sub-data
//!   obtained by deleting nodes keep the labels of the parent diagram.
//! * Roots are stored in simple-root coordinates, weights in
//!   fundamental-weight coordinates.
//! * `cartan[a][b] = <alpha_a, alpha_b^vee>`, so row `a` of the Cartan matrix
//!   is the simple root `alpha_a` written in fundamental-weight coordinates.
//!
//! | family | simple-root lengths (squared)          | diagram                         |
//! |--------|----------------------------------------|---------------------------------|
//! | A_n    | all 2                                  | 1 - 2 - ... - n                 |
//! | B_n    | 1..n-1: 4, n: 2                        | 1 - ... - (n-1) => n            |
//! | C_n    | 1..n-1: 2, n: 4                        | 1 - ... - (n-1) <= n            |
//! | D_n    | all 2                                  | 1 - ... - (n-2) - {n-1, n}      |
//! | E_n    | all 2                                  | 1 - 3 - 4 - 5 - ... - n, 2 - 4  |
//! | F_4    | 1,2: 4, 3,4: 2                         | 1 - 2 => 3 - 4                  |
//! | G_2    | 1: 2, 2: 6                             | 1 <= 2 (triple bond)            |

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    pub fn parse(s: &str) -> Result<Family> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(Error::Malformed(format!("unknown Dynkin family {s:?}"))),
        }
    }

    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// One simple factor of a Dynkin type. `nodes[b]` is the global label of the
/// Bourbaki node `b + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinComponent {
    pub family: Family,
    pub rank: usize,
    pub nodes: Vec<usize>,
}

impl DynkinComponent {
    pub fn name(&self) -> String {
        format!("{}{}", self.family.letter(), self.rank)
    }

    /// Bourbaki index (1-based) of a global label inside this component.
    pub fn local_index(&self, label: usize) -> Option<usize> {
        self.nodes.iter().position(|&l| l == label).map(|p| p + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinType {
    pub components: Vec<DynkinComponent>,
}

impl DynkinType {
    /// A product of simple types, labelled consecutively from 1.
    pub fn new(parts: &[(Family, usize)]) -> Result<DynkinType> {
        let mut next = 1;
        let mut components = Vec::with_capacity(parts.len());
        for &(family, rank) in parts {
            if !family.valid_rank(rank) {
                return Err(Error::InvalidType { family, rank });
            }
            components.push(DynkinComponent {
                family,
                rank,
                nodes: (next..next + rank).collect(),
            });
            next += rank;
        }
        Ok(DynkinType { components })
    }

    pub fn simple(family: Family, rank: usize) -> Result<DynkinType> {
        Self::new(&[(family, rank)])
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    pub fn component_of(&self, label: usize) -> Option<&DynkinComponent> {
        self.components.iter().find(|c| c.nodes.contains(&label))
    }

    /// Name of the flag variety `D(J)` for a set of marked global labels, e.g.
    /// `A2(1) x pt`. Unmarked factors are points.
    pub fn marked_name(&self, marked: &BTreeSet<usize>) -> String {
        if self.components.is_empty() {
            return "pt".to_string();
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let mut local: Vec<usize> = marked.iter().filter_map(|&l| c.local_index(l)).collect();
                local.sort_unstable();
                if local.is_empty() {
                    "pt".to_string()
                } else {
                    let idx: Vec<String> = local.iter().map(|b| b.to_string()).collect();
                    format!("{}({})", c.name(), idx.join(","))
                }
            })
            .collect();
        if parts.iter().all(|p| p == "pt") {
            "pt".to_string()
        } else {
            parts.join(" x ")
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "pt");
        }
        let names: Vec<String> = self.components.iter().map(|c| c.name()).collect();
        write!(f, "{}", names.join("x"))
    }
}

/// Edges (0-based Bourbaki indices) and squared lengths of the simple roots.
fn standard_diagram(family: Family, rank: usize) -> (Vec<(usize, usize)>, Vec<i64>) {
    let chain = |r: usize| (0..r.saturating_sub(1)).map(|a| (a, a + 1)).collect::<Vec<_>>();
    match family {
        Family::A => (chain(rank), vec![2; rank]),
        Family::B => {
            let mut ns = vec![4; rank];
            ns[rank - 1] = 2;
            (chain(rank), ns)
        }
        Family::C => {
            let mut ns = vec![2; rank];
            ns[rank - 1] = 4;
            (chain(rank), ns)
        }
        Family::D => {
            let mut edges = chain(rank - 1);
            edges.push((rank - 3, rank - 1));
            (edges, vec![2; rank])
        }
        Family::E => {
            let all = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
            let edges = all.into_iter().filter(|&(a, b)| a < rank && b < rank).collect();
            (edges, vec![2; rank])
        }
        Family::F => (chain(4), vec![4, 4, 2, 2]),
        Family::G => (chain(2), vec![2, 6]),
    }
}

fn cartan_from_diagram(edges: &[(usize, usize)], normsq: &[i64]) -> Vec<Vec<i64>> {
    let n = normsq.len();
    let mut c = vec![vec![0; n]; n];
    for (a, row) in c.iter_mut().enumerate() {
        row[a] = 2;
    }
    for &(a, b) in edges {
        let ip = -normsq[a].max(normsq[b]) / 2;
        c[a][b] = 2 * ip / normsq[b];
        c[b][a] = 2 * ip / normsq[a];
    }
    c
}

/// Cartan matrix of a simple type in Bourbaki numbering.
pub fn standard_cartan(family: Family, rank: usize) -> Result<Vec<Vec<i64>>> {
    if !family.valid_rank(rank) {
        return Err(Error::InvalidType { family, rank });
    }
    let (edges, ns) = standard_diagram(family, rank);
    Ok(cartan_from_diagram(&edges, &ns))
}

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

impl Neg for &Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Weight {
        Weight(vec![0; n])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

/// The height map `sigma_J`: the sum of the simple-root coefficients at the
/// marked nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightMap {
    marked: BTreeSet<usize>,
}

impl HeightMap {
    pub fn new(datum: &RootDatum, marked: impl IntoIterator<Item = usize>) -> Result<HeightMap> {
        let marked: BTreeSet<usize> = marked.into_iter().collect();
        if marked.is_empty() {
            return Err(Error::Malformed("height map needs at least one marked node".into()));
        }
        for &m in &marked {
            datum.idx(m)?;
        }
        Ok(HeightMap { marked })
    }

    pub fn single(datum: &RootDatum, node: usize) -> Result<HeightMap> {
        Self::new(datum, [node])
    }

    pub fn marked(&self) -> &BTreeSet<usize> {
        &self.marked
    }

    pub fn eval(&self, datum: &RootDatum, beta: &Root) -> i64 {
        self.marked
            .iter()
            .map(|&m| beta.0[datum.idx(m).expect("validated on construction")])
            .sum()
    }
}

/// The root system of a Dynkin type: Cartan matrix, roots and node labels.
#[derive(Debug, Clone, Serialize)]
pub struct RootDatum {
    #[serde(rename = "type")]
    dynkin: DynkinType,
    labels: Vec<usize>,
    cartan: Vec<Vec<i64>>,
    #[serde(skip)]
    normsq: Vec<i64>,
    /// Positive roots (by height, then reverse-lexicographically) followed by their negatives.
    roots: Vec<Root>,
    #[serde(skip)]
    n_pos: usize,
    #[serde(skip)]
    root_index: HashMap<Vec<i64>, usize>,
    #[serde(skip)]
    label_index: HashMap<usize, usize>,
}

pub fn build_root_datum(ty: &DynkinType) -> Result<RootDatum> {
    RootDatum::new(ty)
}

impl RootDatum {
    pub fn new(ty: &DynkinType) -> Result<RootDatum> {
        let n = ty.rank();
        let mut cartan = vec![vec![0; n]; n];
        let mut normsq = vec![0; n];
        let mut labels = vec![0; n];
        for comp in &ty.components {
            if !comp.family.valid_rank(comp.rank) || comp.nodes.len() != comp.rank {
                return Err(Error::InvalidType { family: comp.family, rank: comp.rank });
            }
            let (edges, ns) = standard_diagram(comp.family, comp.rank);
            let c = cartan_from_diagram(&edges, &ns);
            for a in 0..comp.rank {
                let ga = comp.nodes[a] - 1;
                labels[ga] = comp.nodes[a];
                normsq[ga] = ns[a];
                for b in 0..comp.rank {
                    cartan[ga][comp.nodes[b] - 1] = c[a][b];
                }
            }
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted != (1..=n).collect::<Vec<_>>() {
            return Err(Error::Malformed("node labels must be exactly 1..n".into()));
        }
        Ok(Self::from_parts(ty.clone(), labels, cartan, normsq))
    }

    pub fn simple(family: Family, rank: usize) -> Result<RootDatum> {
        Self::new(&DynkinType::simple(family, rank)?)
    }

    fn from_parts(dynkin: DynkinType, labels: Vec<usize>, cartan: Vec<Vec<i64>>, normsq: Vec<i64>) -> RootDatum {
        let positive = positive_roots_from_cartan(&cartan);
        let n_pos = positive.len();
        let mut roots: Vec<Root> = positive.iter().map(|c| Root(c.clone())).collect();
        roots.extend(positive.iter().map(|c| Root(c.iter().map(|x| -x).collect())));
        let root_index = roots.iter().enumerate().map(|(i, r)| (r.0.clone(), i)).collect();
        let label_index = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        RootDatum { dynkin, labels, cartan, normsq, roots, n_pos, root_index, label_index }
    }

    pub fn dynkin(&self) -> &DynkinType {
        &self.dynkin
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn normsq(&self) -> &[i64] {
        &self.normsq
    }

    /// Position of a node label in coordinate vectors.
    pub fn idx(&self, label: usize) -> Result<usize> {
        self.label_index.get(&label).copied().ok_or(Error::UnknownNode { node: label })
    }

    pub fn label(&self, idx: usize) -> usize {
        self.labels[idx]
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.n_pos]
    }

    pub fn is_root(&self, coeffs: &[i64]) -> bool {
        self.root_index.contains_key(coeffs)
    }

    pub fn simple_root(&self, label: usize) -> Result<Root> {
        let j = self.idx(label)?;
        let mut c = vec![0; self.rank()];
        c[j] = 1;
        Ok(Root(c))
    }

    pub fn fundamental_weight(&self, label: usize) -> Result<Weight> {
        let j = self.idx(label)?;
        let mut c = vec![0; self.rank()];
        c[j] = 1;
        Ok(Weight(c))
    }

    /// `<beta, alpha_j^vee>` for the node at position `j`.
    pub fn pairing_at(&self, coeffs: &[i64], j: usize) -> i64 {
        coeffs.iter().zip(&self.cartan).map(|(c, row)| c * row[j]).sum()
    }

    pub fn root_to_weight(&self, beta: &Root) -> Weight {
        Weight((0..self.rank()).map(|j| self.pairing_at(&beta.0, j)).collect())
    }

    /// The simple root at position `j`, as a weight (row `j` of the Cartan matrix).
    pub fn simple_root_weight_at(&self, j: usize) -> &[i64] {
        &self.cartan[j]
    }

    /// The highest root of an irreducible datum.
    pub fn highest_root(&self) -> Result<Root> {
        if !self.dynkin.is_irreducible() {
            return Err(Error::Reducible(self.dynkin.to_string()));
        }
        Ok(self.positive_roots().last().expect("nonempty").clone())
    }

    /// Principal sub-datum on the given node labels (kept in ascending order).
    pub fn subdatum(&self, keep: &[usize]) -> Result<RootDatum> {
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let pos: Vec<usize> = keep.iter().map(|&l| self.idx(l)).collect::<Result<_>>()?;
        let cartan: Vec<Vec<i64>> =
            pos.iter().map(|&a| pos.iter().map(|&b| self.cartan[a][b]).collect()).collect();
        let normsq = pos.iter().map(|&a| self.normsq[a]).collect();
        let dynkin = identify_components(&keep, &cartan)?;
        Ok(Self::from_parts(dynkin, keep, cartan, normsq))
    }

    /// The diagram with node `i` removed.
    pub fn delete_node(&self, i: usize) -> Result<RootDatum> {
        self.idx(i)?;
        let keep: Vec<usize> = self.labels.iter().copied().filter(|&l| l != i).collect();
        self.subdatum(&keep)
    }
}

/// Closure of the simple roots under root strings.
fn positive_roots_from_cartan(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            e
        })
        .collect();
    let mut seen: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut next = 0;
    while next < roots.len() {
        let beta = roots[next].clone();
        next += 1;
        for j in 0..n {
            let pairing: i64 = beta.iter().zip(cartan).map(|(c, row)| c * row[j]).sum();
            // p = length of the string below beta
            let mut p = 0;
            let mut probe = beta.clone();
            loop {
                probe[j] -= 1;
                if seen.contains(&probe) {
                    p += 1;
                } else {
                    break;
                }
            }
            if p - pairing > 0 {
                let mut up = beta.clone();
                up[j] += 1;
                if seen.insert(up.clone()) {
                    roots.push(up);
                }
            }
        }
    }
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    roots
}

/// Recognise the simple factors of a Cartan matrix whose rows carry `labels`,
/// choosing the Bourbaki numbering that is lexicographically smallest along
/// ascending labels.
fn identify_components(labels: &[usize], cartan: &[Vec<i64>]) -> Result<DynkinType> {
    let n = labels.len();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(a) = queue.pop_front() {
            comp.push(a);
            for b in 0..n {
                if !seen[b] && cartan[a][b] != 0 {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        comp.sort_unstable();
        let r = comp.len();
        let mut best: Option<(Vec<usize>, Family)> = None;
        for family in Family::ALL {
            if !family.valid_rank(r) {
                continue;
            }
            let std = standard_cartan(family, r)?;
            let mut assign = vec![usize::MAX; r];
            let mut used = vec![false; r];
            if match_diagram(&comp, cartan, &std, 0, &mut assign, &mut used)
                && best.as_ref().is_none_or(|(m, _)| assign < *m)
            {
                best = Some((assign, family));
            }
        }
        let (assign, family) = best
            .ok_or_else(|| Error::Inconsistent("sub-diagram is not of finite type".into()))?;
        let mut nodes = vec![0; r];
        for (p, &b) in assign.iter().enumerate() {
            nodes[b] = labels[comp[p]];
        }
        components.push(DynkinComponent { family, rank: r, nodes });
    }
    components.sort_by_key(|c| *c.nodes.iter().min().unwrap());
    Ok(DynkinType { components })
}

fn match_diagram(
    comp: &[usize],
    cartan: &[Vec<i64>],
    std: &[Vec<i64>],
    p: usize,
    assign: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if p == comp.len() {
        return true;
    }
    for b in 0..comp.len() {
        if used[b] {
            continue;
        }
        let ok = (0..p).all(|q| {
            let bq = assign[q];
            std[b][bq] == cartan[comp[p]][comp[q]] && std[bq][b] == cartan[comp[q]][comp[p]]
        });
        if ok {
            assign[p] = b;
            used[b] = true;
            if match_diagram(comp, cartan, std, p + 1, assign, used) {
                return true;
            }
            used[b] = false;
            assign[p] = usize::MAX;
        }
    }
    false
}

/// `sigma(beta)` for a height map.
pub fn height(datum: &RootDatum, sigma: &HeightMap, beta: &Root) -> i64 {
    sigma.eval(datum, beta)
}

/// Dimension of `D(J)`: the number of positive roots with positive
/// `sigma_J`-height. The empty marking gives a point.
pub fn rh_dimension(datum: &RootDatum, marked: &BTreeSet<usize>) -> Result<usize> {
    let pos: Vec<usize> = marked.iter().map(|&l| datum.idx(l)).collect::<Result<_>>()?;
    Ok(datum
        .positive_roots()
        .iter()
        .filter(|b| pos.iter().map(|&p| b.0[p]).sum::<i64>() > 0)
        .count())
}

/// Restriction of characters to the torus of the diagram with node `i`
/// deleted: drop the `i`-th fundamental-weight coordinate.
pub fn restrict_weight(datum: &RootDatum, i: usize, lambda: &Weight) -> Result<Weight> {
    let p = datum.idx(i)?;
    Ok(Weight(
        lambda.0.iter().enumerate().filter(|&(q, _)| q != p).map(|(_, &c)| c).collect(),
    ))
}
