//! Matrix models of the classical equalized actions on (isotropic) Grassmannians.
//!
//! Points are column spans of `d x k` rational matrices. The torus acts on
//! coordinate `r` with weight `w_r`:
//!
//! * split action on `C^{2n}`: `(t x_0, ..., t x_{n-1}, x_n, ..., x_{2n-1})`,
//! * quadric action on `C^{2n}` or `C^{2n+1}`: `x_0 -> t x_0`, `x_n -> t^{-1} x_n`.
//!
//! `V_-` is the block of the largest weight, `V_+` the block of the smallest
//! and `V_0` the rest (empty for the split action). The sink is reached by
//! `lim_{t -> 0} t^{-1} p` and the source by `lim_{t -> 0} t p`.
//!
//! | model | ambient     | form                               | actions        |
//! |-------|-------------|------------------------------------|----------------|
//! | A     | `2n`        | none                               | split          |
//! | B     | `2n+1`      | `[[0, I, 0], [I, 0, 0], [0, 0, 1]]`| quadric        |
//! | C     | `2n`        | `[[0, I], [-I, 0]]`                | split          |
//! | D     | `2n`        | `[[0, I], [I, 0]]`                 | split, quadric |

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{q, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Model {
    A,
    B,
    C,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Split,
    Quadric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    /// `lim_{t -> 0} t^{-1} p`, landing in the sink.
    Zero,
    /// `lim_{t -> 0} t p`, landing in the source.
    Infinity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowSpec {
    pub model: Model,
    pub action: Action,
    pub n: usize,
    pub weights: Vec<i64>,
}

impl FlowSpec {
    pub fn new(model: Model, action: Action, n: usize) -> Result<FlowSpec> {
        let ok = matches!(
            (model, action),
            (Model::A | Model::C | Model::D, Action::Split) | (Model::B | Model::D, Action::Quadric)
        );
        if !ok {
            return Err(Error::Malformed(format!("model {model:?} does not carry the {action:?} action")));
        }
        let min_n = match (model, action) {
            (Model::D, Action::Quadric) => 3,
            (Model::B, _) | (Model::D, _) => 2,
            _ => 1,
        };
        if n < min_n {
            return Err(Error::Malformed(format!("model {model:?} needs n >= {min_n}")));
        }
        let dim = if model == Model::B { 2 * n + 1 } else { 2 * n };
        let weights = match action {
            Action::Split => (0..dim).map(|r| i64::from(r < n)).collect(),
            Action::Quadric => (0..dim).map(|r| if r == 0 { 1 } else if r == n { -1 } else { 0 }).collect(),
        };
        Ok(FlowSpec { model, action, n, weights })
    }

    /// The action each model is usually paired with; `D` defaults to the split one.
    pub fn standard(model: Model, n: usize) -> Result<FlowSpec> {
        let action = if model == Model::B { Action::Quadric } else { Action::Split };
        Self::new(model, action, n)
    }

    pub fn ambient_dim(&self) -> usize {
        self.weights.len()
    }

    /// Gram matrix of the invariant form, if any.
    pub fn form(&self) -> Option<Matrix> {
        let n = self.n;
        let mut g = Matrix::zeros(self.ambient_dim(), self.ambient_dim());
        let (sym, skew) = match self.model {
            Model::A => return None,
            Model::C => (false, true),
            Model::B | Model::D => (true, false),
        };
        for i in 0..n {
            g[(i, n + i)] = q(1);
            g[(n + i, i)] = if skew { q(-1) } else { q(1) };
        }
        if sym && self.model == Model::B {
            g[(2 * n, 2 * n)] = q(1);
        }
        Some(g)
    }

    /// Node of the grading in the Dynkin diagram of the model.
    pub fn grading_node(&self) -> usize {
        match self.action {
            Action::Split => self.n,
            Action::Quadric => 1,
        }
    }

    fn blocks(&self) -> [Vec<usize>; 3] {
        let max = *self.weights.iter().max().expect("nonempty");
        let min = *self.weights.iter().min().expect("nonempty");
        let pick = |f: &dyn Fn(i64) -> bool| (0..self.weights.len()).filter(|&r| f(self.weights[r])).collect();
        [pick(&|w| w == max), pick(&|w| w != max && w != min), pick(&|w| w == min)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassPoint {
    basis: Matrix,
}

impl GrassPoint {
    /// Validates the ambient dimension, full column rank and isotropy.
    pub fn new(spec: &FlowSpec, basis: Matrix) -> Result<GrassPoint> {
        if basis.rows() != spec.ambient_dim() {
            return Err(Error::Malformed(format!(
                "basis has {} rows, the model needs {}",
                basis.rows(),
                spec.ambient_dim()
            )));
        }
        if basis.cols() == 0 || basis.rank() != basis.cols() {
            return Err(Error::Malformed("basis must have full column rank".into()));
        }
        if let Some(g) = spec.form() {
            if !basis.transpose().mul(&g).mul(&basis).is_zero() {
                return Err(Error::Malformed("subspace is not isotropic".into()));
            }
            if basis.cols() > spec.ambient_dim() / 2 {
                return Err(Error::Malformed("isotropic subspaces have dimension at most half the ambient".into()));
            }
        }
        Ok(GrassPoint { basis })
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn k(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// Same subspace.
    pub fn same_span(&self, o: &GrassPoint) -> bool {
        self.basis.same_column_span(&o.basis)
    }
}

/// `t . p`, scaling coordinate `r` by `t^{w_r}`.
pub fn act(p: &GrassPoint, f: &FlowSpec, t: &Q) -> GrassPoint {
    let mut b = p.basis.clone();
    for r in 0..b.rows() {
        let s = match f.weights[r] {
            1 => t.clone(),
            -1 => t.recip(),
            _ => continue,
        };
        for c in 0..b.cols() {
            b[(r, c)] *= &s;
        }
    }
    GrassPoint { basis: b }
}

pub fn is_fixed(p: &GrassPoint, f: &FlowSpec) -> bool {
    p.basis.same_column_span(&act(p, f, &q(2)).basis)
}

/// Exact limit of the flow line through `p`.
///
/// Rows are ordered by the exponent of `t` they acquire; echelonizing the
/// transposed basis in that order exposes, for every vector of `p`, its
/// leading power of `t`. The limit is spanned by the leading parts.
pub fn flow_limit(p: &GrassPoint, f: &FlowSpec, dir: Direction) -> GrassPoint {
    let exps: Vec<i64> = f.weights.iter().map(|w| if dir == Direction::Zero { -w } else { *w }).collect();
    let mut order: Vec<usize> = (0..exps.len()).collect();
    order.sort_by_key(|&r| exps[r]);
    let permuted = p.basis.select(&order, &(0..p.k()).collect::<Vec<_>>());
    let (ech, pivots) = permuted.transpose().rref();
    let mut limit = Matrix::zeros(p.ambient_dim(), p.k());
    for (c, &piv) in pivots.iter().enumerate() {
        let level = exps[order[piv]];
        for (pos, &r) in order.iter().enumerate() {
            if exps[r] == level {
                limit[(r, c)] = ech[(c, pos)].clone();
            }
        }
    }
    GrassPoint { basis: limit }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Membership {
    /// `dim(p & V_-), dim(p & V_0), dim(p & V_+)`.
    pub profile: [usize; 3],
    pub mu: i64,
    /// Marking of the fixed component, in the labels of the parent diagram.
    #[serde(rename = "J")]
    pub marking: BTreeSet<usize>,
}

fn intersection_dim(p: &GrassPoint, rows: &[usize]) -> usize {
    let outside: Vec<usize> = (0..p.ambient_dim()).filter(|r| !rows.contains(r)).collect();
    p.k() - p.basis.select(&outside, &(0..p.k()).collect::<Vec<_>>()).rank()
}

/// The fixed component containing a fixed point, read off from how the
/// subspace meets the weight blocks.
pub fn component_membership(p: &GrassPoint, f: &FlowSpec) -> Result<Membership> {
    if !is_fixed(p, f) {
        return Err(Error::NotFixed);
    }
    let blocks = f.blocks();
    let profile = [
        intersection_dim(p, &blocks[0]),
        intersection_dim(p, &blocks[1]),
        intersection_dim(p, &blocks[2]),
    ];
    let [dm, d0, dp] = profile.map(|d| d as i64);
    let (n, k) = (f.n as i64, p.k() as i64);
    let keep = |v: Vec<i64>, lo: i64, hi: i64| -> BTreeSet<usize> {
        v.into_iter().filter(|&x| (lo..=hi).contains(&x)).map(|x| x as usize).collect()
    };
    let spinor = f.model == Model::D && k == n;
    if f.model == Model::D && k == n - 1 {
        return Err(Error::Malformed("D model points of dimension n-1 are flags, not supported".into()));
    }
    let (mu, marking) = match f.action {
        Action::Split => match f.model {
            Model::A => {
                let mut j = keep(vec![k - dp], 1, n - 1);
                if (1..n).contains(&dp) {
                    j.insert((n + dp) as usize);
                }
                (dp - (k - n).max(0), j)
            }
            _ if spinor => (dp / 2, keep(vec![n - dp], 1, n - 1)),
            _ => (dp, keep(vec![k - dp, n - dp], 1, n - 1)),
        },
        Action::Quadric => {
            let raw = 1 + dp - dm;
            if spinor {
                (raw / 2, if dm == 1 { BTreeSet::from([n as usize]) } else { BTreeSet::from([n as usize - 1]) })
            } else if f.model == Model::D && d0 == n - 2 {
                (raw, BTreeSet::from([n as usize - 1, n as usize]))
            } else if f.model == Model::B && k == n {
                (raw / 2, keep(vec![1 + d0], 2, n))
            } else {
                (raw, keep(vec![1 + d0], 2, n))
            }
        }
    };
    Ok(Membership { profile, mu, marking })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChartCheck {
    /// `B` invertible: the source-chart coordinate of `span[I; B]`.
    Inverse { coordinate: Matrix, matches_inverse: bool },
    /// `B` singular: the point leaves the source chart; the source-side
    /// limit meets `V_+` in dimension `rank B < n`.
    Indeterminate { rank: usize, limit: Membership },
}

/// Takes `p = span[I_n; B]` in the sink chart and re-expresses it as
/// `span[C; I_n]` in the source chart.
pub fn chart_inverse_check(b: &Matrix, model: Model, n: usize) -> Result<ChartCheck> {
    if b.rows() != n || b.cols() != n {
        return Err(Error::Malformed(format!("chart coordinate must be {n} x {n}")));
    }
    match model {
        Model::A => {}
        Model::C if b.is_symmetric() => {}
        Model::D if b.is_skew() && n.is_multiple_of(2) => {}
        Model::B => return Err(Error::Malformed("the chart check covers models A, C and D".into())),
        _ => return Err(Error::Malformed(format!("chart coordinate does not fit model {model:?}"))),
    }
    let spec = FlowSpec::new(model, Action::Split, n)?;
    let p = GrassPoint::new(&spec, Matrix::identity(n).vcat(b))?;
    // bottom block first, then reduce columns to [I; C]
    let order: Vec<usize> = (n..2 * n).chain(0..n).collect();
    let (ech, pivots) = p.basis.select(&order, &(0..n).collect::<Vec<_>>()).transpose().rref();
    if pivots.iter().all(|&c| c < n) && pivots.len() == n {
        let coordinate = ech.select(&(0..n).collect::<Vec<_>>(), &(n..2 * n).collect::<Vec<_>>()).transpose();
        let matches_inverse = b.inverse().is_some_and(|inv| inv == coordinate);
        return Ok(ChartCheck::Inverse { coordinate, matches_inverse });
    }
    let limit = flow_limit(&p, &spec, Direction::Infinity);
    Ok(ChartCheck::Indeterminate { rank: b.rank(), limit: component_membership(&limit, &spec)? })
}
