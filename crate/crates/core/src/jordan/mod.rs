//! The simple Jordan algebras attached to balanced short gradings, with their
//! inversion `j(x) = x^{-1}` and its polynomial (adjoint) lift, the Cremona map.
//!
//! | variant        | product                        | unit | norm            | adjoint `x^#`              |
//! |----------------|--------------------------------|------|-----------------|----------------------------|
//! | `FullMatrix`   | `(xy + yx)/2`                  | `I`  | `det`           | adjugate                   |
//! | `SymMatrix`    | `(xy + yx)/2`                  | `I`  | `det`           | adjugate                   |
//! | `SkewMatrix`   | `(x W^-1 y + y W^-1 x)/2`      | `W`  | `Pf(x)/Pf(W)`   | `W padj(x) W / Pf(W)`      |
//! | `SpinFactor`   | `(ab + u.v, av + bu)`          | `(1,0)` | `a^2 - u.u`  | `(a, -u)`                  |
//! | `Albert`       | `(XY + YX)/2`                  | `I`  | cubic norm      | `X^2 - T(X) X + S(X) I`    |
//!
//! `W = [[0, I], [-I, 0]]` and `padj(x) = Pf(x) x^{-1}`, the Pfaffian adjugate.
//! In every case `x^# = N(x) x^{-1}` and `(x^#)^# = N(x)^{d-2} x` with `d` the
//! degree of the norm.

pub mod octonion;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{format_q, parse_q, q, qf, Q};
use octonion::Octonion;

/// A 3x3 Hermitian octonion matrix
/// `[[xi1, x3, conj(x2)], [conj(x3), xi2, x1], [x2, conj(x1), xi3]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Albert {
    pub diag: [Q; 3],
    pub off: [Octonion; 3],
}

type OMatrix = [[Octonion; 3]; 3];

/// Real part of a product.
fn re_mul(x: &Octonion, y: &Octonion) -> Q {
    let mut r = &x.0[0] * &y.0[0];
    for i in 1..8 {
        r -= &x.0[i] * &y.0[i];
    }
    r
}

impl Albert {
    pub fn diagonal(a: Q, b: Q, c: Q) -> Albert {
        Albert { diag: [a, b, c], off: std::array::from_fn(|_| Octonion::zero()) }
    }

    /// `xi1, xi2, xi3, x1[0..8], x2[0..8], x3[0..8]`.
    pub fn from_coords(v: &[Q]) -> Result<Albert> {
        if v.len() != 27 {
            return Err(Error::Malformed(format!("an Albert element has 27 coordinates, got {}", v.len())));
        }
        Ok(Albert {
            diag: std::array::from_fn(|i| v[i].clone()),
            off: std::array::from_fn(|i| Octonion::from_slice(&v[3 + 8 * i..11 + 8 * i])),
        })
    }

    pub fn coords(&self) -> Vec<Q> {
        let mut v: Vec<Q> = self.diag.to_vec();
        for x in &self.off {
            v.extend(x.0.iter().cloned());
        }
        v
    }

    fn to_matrix(&self) -> OMatrix {
        let [x1, x2, x3] = &self.off;
        let r = |i: usize| Octonion::real(self.diag[i].clone());
        [[r(0), x3.clone(), x2.conj()], [x3.conj(), r(1), x1.clone()], [x2.clone(), x1.conj(), r(2)]]
    }

    #[cfg(test)]
    fn trace(&self) -> Q {
        self.diag.iter().sum()
    }

    fn map(&self, f: impl Fn(&Q) -> Q) -> Albert {
        Albert::from_coords(&self.coords().iter().map(f).collect::<Vec<_>>()).expect("27 coordinates")
    }

    #[cfg(test)]
    fn zip(&self, o: &Albert, f: impl Fn(&Q, &Q) -> Q) -> Albert {
        let v: Vec<Q> = self.coords().iter().zip(o.coords().iter()).map(|(a, b)| f(a, b)).collect();
        Albert::from_coords(&v).expect("27 coordinates")
    }

    /// Only the diagonal and the three upper entries of `XY + YX` are formed.
    fn product(&self, o: &Albert) -> Albert {
        let (a, b) = (self.to_matrix(), o.to_matrix());
        let (da, db) = (&self.diag, &o.diag);
        let half = qf(1, 2);
        let diag = std::array::from_fn(|i| {
            let s: Q = (0..3).map(|k| re_mul(&a[i][k], &b[k][i]) + re_mul(&b[i][k], &a[k][i])).sum();
            s * &half
        });
        let entry = |i: usize, j: usize| {
            let k = 3 - i - j;
            let ab = &(&b[i][j].scale(&da[i]) + &a[i][j].scale(&db[j])) + &(&a[i][k] * &b[k][j]);
            let ba = &(&a[i][j].scale(&db[i]) + &b[i][j].scale(&da[j])) + &(&b[i][k] * &a[k][j]);
            (&ab + &ba).scale(&half)
        };
        Albert { diag, off: [entry(1, 2), entry(2, 0), entry(0, 1)] }
    }

    /// `X^# = X^2 - T(X) X + S(X) I`, expanded entrywise.
    fn sharp(&self) -> Albert {
        let [e1, e2, e3] = &self.diag;
        let [x1, x2, x3] = &self.off;
        Albert {
            diag: [e2 * e3 - x1.norm(), e3 * e1 - x2.norm(), e1 * e2 - x3.norm()],
            off: [
                &(x2 * x3).conj() - &x1.scale(e1),
                &(x3 * x1).conj() - &x2.scale(e2),
                &(x1 * x2).conj() - &x3.scale(e3),
            ],
        }
    }

    /// Cubic norm, `X o X^# = N(X) I`.
    fn norm(&self) -> Q {
        let [e1, e2, e3] = &self.diag;
        let [x1, x2, x3] = &self.off;
        e1 * e2 * e3 - e1 * x1.norm() - e2 * x2.norm() - e3 * x3.norm() + re_mul(&(x1 * x2), x3) * q(2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ElementJson", into = "ElementJson")]
#[allow(clippy::large_enum_variant)]
pub enum JordanElement {
    FullMatrix(Matrix),
    SymMatrix(Matrix),
    /// Even size `2m`.
    SkewMatrix(Matrix),
    SpinFactor { scalar: Q, vec: Vec<Q> },
    Albert(Albert),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Full,
    Sym,
    Skew,
    Spin,
    Albert,
}

/// The symplectic unit `[[0, I_m], [-I_m, 0]]`.
pub fn symplectic_unit(m: usize) -> Matrix {
    let mut w = Matrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        w[(i, m + i)] = q(1);
        w[(m + i, i)] = q(-1);
    }
    w
}

impl JordanElement {
    pub fn full(m: Matrix) -> Result<JordanElement> {
        if !m.is_square() || m.rows() == 0 {
            return Err(Error::Malformed("a full matrix element must be square and nonempty".into()));
        }
        Ok(JordanElement::FullMatrix(m))
    }

    pub fn sym(m: Matrix) -> Result<JordanElement> {
        if !m.is_symmetric() || m.rows() == 0 {
            return Err(Error::Malformed("a symmetric element must be a nonempty symmetric matrix".into()));
        }
        Ok(JordanElement::SymMatrix(m))
    }

    pub fn skew(m: Matrix) -> Result<JordanElement> {
        if !m.is_skew() || m.rows() == 0 || m.rows() % 2 == 1 {
            return Err(Error::Malformed("a skew element must be a skew-symmetric matrix of even size".into()));
        }
        Ok(JordanElement::SkewMatrix(m))
    }

    pub fn spin(scalar: Q, vec: Vec<Q>) -> JordanElement {
        JordanElement::SpinFactor { scalar, vec }
    }

    pub fn kind(&self) -> Kind {
        match self {
            JordanElement::FullMatrix(_) => Kind::Full,
            JordanElement::SymMatrix(_) => Kind::Sym,
            JordanElement::SkewMatrix(_) => Kind::Skew,
            JordanElement::SpinFactor { .. } => Kind::Spin,
            JordanElement::Albert(_) => Kind::Albert,
        }
    }

    /// Matrix size, vector length, or 3 for Albert.
    pub fn size(&self) -> usize {
        match self {
            JordanElement::FullMatrix(m) | JordanElement::SymMatrix(m) | JordanElement::SkewMatrix(m) => m.rows(),
            JordanElement::SpinFactor { vec, .. } => vec.len(),
            JordanElement::Albert(_) => 3,
        }
    }

    /// Dimension of the ambient Jordan algebra.
    pub fn algebra_dim(&self) -> usize {
        let n = self.size();
        match self.kind() {
            Kind::Full => n * n,
            Kind::Sym => n * (n + 1) / 2,
            Kind::Skew => n * (n - 1) / 2,
            Kind::Spin => n + 1,
            Kind::Albert => 27,
        }
    }

    /// Degree of the generic norm.
    pub fn degree(&self) -> usize {
        match self.kind() {
            Kind::Full | Kind::Sym => self.size(),
            Kind::Skew => self.size() / 2,
            Kind::Spin => 2,
            Kind::Albert => 3,
        }
    }

    /// Exponent `p` in `cremona(cremona(x)) = norm(x)^p x`.
    pub fn norm_power(&self) -> i64 {
        self.degree() as i64 - 2
    }

    pub fn unit_like(&self) -> JordanElement {
        let n = self.size();
        match self {
            JordanElement::FullMatrix(_) => JordanElement::FullMatrix(Matrix::identity(n)),
            JordanElement::SymMatrix(_) => JordanElement::SymMatrix(Matrix::identity(n)),
            JordanElement::SkewMatrix(_) => JordanElement::SkewMatrix(symplectic_unit(n / 2)),
            JordanElement::SpinFactor { .. } => JordanElement::SpinFactor { scalar: q(1), vec: vec![Q::zero(); n] },
            JordanElement::Albert(_) => JordanElement::Albert(Albert::diagonal(q(1), q(1), q(1))),
        }
    }

    pub fn scale(&self, s: &Q) -> JordanElement {
        match self {
            JordanElement::FullMatrix(m) => JordanElement::FullMatrix(m.scale(s)),
            JordanElement::SymMatrix(m) => JordanElement::SymMatrix(m.scale(s)),
            JordanElement::SkewMatrix(m) => JordanElement::SkewMatrix(m.scale(s)),
            JordanElement::SpinFactor { scalar, vec } => {
                JordanElement::SpinFactor { scalar: scalar * s, vec: vec.iter().map(|x| x * s).collect() }
            }
            JordanElement::Albert(a) => JordanElement::Albert(a.map(|x| x * s)),
        }
    }

    fn check_same(&self, o: &JordanElement) -> Result<()> {
        if self.kind() != o.kind() || self.size() != o.size() {
            return Err(Error::Mismatch(format!(
                "{:?} of size {} against {:?} of size {}",
                self.kind(),
                self.size(),
                o.kind(),
                o.size()
            )));
        }
        Ok(())
    }

    pub fn norm(&self) -> Result<Q> {
        Ok(match self {
            JordanElement::FullMatrix(m) | JordanElement::SymMatrix(m) => m.det(),
            JordanElement::SkewMatrix(m) => m.pfaffian() / symplectic_unit(m.rows() / 2).pfaffian(),
            JordanElement::SpinFactor { scalar, vec } => scalar * scalar - dot(vec, vec),
            JordanElement::Albert(a) => a.norm(),
        })
    }

    /// The adjoint `x^#`: polynomial, everywhere defined, zero on the
    /// indeterminacy locus of the inversion.
    pub fn cremona(&self) -> JordanElement {
        match self {
            JordanElement::FullMatrix(m) => JordanElement::FullMatrix(m.adjugate()),
            JordanElement::SymMatrix(m) => JordanElement::SymMatrix(m.adjugate()),
            JordanElement::SkewMatrix(m) => {
                let w = symplectic_unit(m.rows() / 2);
                let pw = w.pfaffian();
                JordanElement::SkewMatrix(w.mul(&m.pfaffian_adjugate()).mul(&w).scale(&pw.recip()))
            }
            JordanElement::SpinFactor { scalar, vec } => {
                JordanElement::SpinFactor { scalar: scalar.clone(), vec: vec.iter().map(|x| -x).collect() }
            }
            JordanElement::Albert(a) => JordanElement::Albert(a.sharp()),
        }
    }

    pub fn jinvert(&self) -> Result<JordanElement> {
        let n = self.norm()?;
        if n.is_zero() {
            return Err(Error::Singular { norm: format_q(&n) });
        }
        Ok(match self {
            JordanElement::FullMatrix(m) => JordanElement::FullMatrix(m.inverse().expect("nonzero determinant")),
            JordanElement::SymMatrix(m) => JordanElement::SymMatrix(m.inverse().expect("nonzero determinant")),
            JordanElement::SkewMatrix(m) => {
                let w = symplectic_unit(m.rows() / 2);
                JordanElement::SkewMatrix(w.mul(&m.inverse().expect("nonzero Pfaffian")).mul(&w))
            }
            _ => self.cremona().scale(&n.recip()),
        })
    }

    pub fn jordan_product(&self, o: &JordanElement) -> Result<JordanElement> {
        self.check_same(o)?;
        let half = qf(1, 2);
        Ok(match (self, o) {
            (JordanElement::FullMatrix(a), JordanElement::FullMatrix(b)) => {
                JordanElement::FullMatrix(a.mul(b).add(&b.mul(a)).scale(&half))
            }
            (JordanElement::SymMatrix(a), JordanElement::SymMatrix(b)) => {
                JordanElement::SymMatrix(a.mul(b).add(&b.mul(a)).scale(&half))
            }
            (JordanElement::SkewMatrix(a), JordanElement::SkewMatrix(b)) => {
                let winv = symplectic_unit(a.rows() / 2).scale(&q(-1));
                JordanElement::SkewMatrix(a.mul(&winv).mul(b).add(&b.mul(&winv).mul(a)).scale(&half))
            }
            (
                JordanElement::SpinFactor { scalar: a, vec: u },
                JordanElement::SpinFactor { scalar: b, vec: v },
            ) => JordanElement::SpinFactor {
                scalar: a * b + dot(u, v),
                vec: u.iter().zip(v).map(|(x, y)| a * y + b * x).collect(),
            },
            (JordanElement::Albert(a), JordanElement::Albert(b)) => JordanElement::Albert(a.product(b)),
            _ => unreachable!("kinds checked above"),
        })
    }

    pub fn square(&self) -> JordanElement {
        self.jordan_product(self).expect("same element")
    }

    /// `j(t x) = t^{-1} j(x)`.
    pub fn equivariance_check(&self, t: &Q) -> Result<bool> {
        if t.is_zero() {
            return Err(Error::Malformed("the scalar t must be nonzero".into()));
        }
        Ok(self.scale(t).jinvert()? == self.jinvert()?.scale(&t.recip()))
    }

    pub fn is_unit(&self) -> bool {
        *self == self.unit_like()
    }
}

fn dot(u: &[Q], v: &[Q]) -> Q {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Outcome of the axiom suite on one element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub kind: Kind,
    pub norm: String,
    pub involution: bool,
    pub inverse: bool,
    pub power_inverse: bool,
    pub adjugate_coherent: bool,
    pub cremona_square: bool,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.involution && self.inverse && self.power_inverse && self.adjugate_coherent && self.cremona_square
    }
}

/// `j(j(x)) = x`, `x o j(x) = 1`, `x^2 o j(x) = x`, `N(x) j(x) = x^#` and
/// `(x^#)^# = N(x)^p x`, for an invertible `x`.
pub fn check_axioms(x: &JordanElement) -> Result<AxiomReport> {
    let n = x.norm()?;
    let inv = x.jinvert()?;
    let sharp = x.cremona();
    let mut power = Q::one();
    for _ in 0..x.norm_power().unsigned_abs() {
        power *= &n;
    }
    if x.norm_power() < 0 {
        power = power.recip();
    }
    Ok(AxiomReport {
        kind: x.kind(),
        norm: format_q(&n),
        involution: inv.jinvert()? == *x,
        inverse: x.jordan_product(&inv)?.is_unit(),
        power_inverse: x.square().jordan_product(&inv)? == *x,
        adjugate_coherent: inv.scale(&n) == sharp,
        cremona_square: sharp.cremona() == x.scale(&power),
    })
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Entries {
    Matrix(Vec<Vec<String>>),
    Flat(Vec<String>),
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    kind: Kind,
    entries: Entries,
}

fn parse_all(v: &[String]) -> Result<Vec<Q>> {
    v.iter().map(|s| parse_q(s)).collect()
}

impl TryFrom<ElementJson> for JordanElement {
    type Error = Error;
    fn try_from(j: ElementJson) -> Result<JordanElement> {
        match (j.kind, j.entries) {
            (Kind::Full | Kind::Sym | Kind::Skew, Entries::Matrix(rows)) => {
                let m = Matrix::from_rows(rows.iter().map(|r| parse_all(r)).collect::<Result<_>>()?)?;
                match j.kind {
                    Kind::Full => JordanElement::full(m),
                    Kind::Sym => JordanElement::sym(m),
                    _ => JordanElement::skew(m),
                }
            }
            (Kind::Spin, Entries::Flat(v)) if !v.is_empty() => {
                let v = parse_all(&v)?;
                Ok(JordanElement::spin(v[0].clone(), v[1..].to_vec()))
            }
            (Kind::Albert, Entries::Flat(v)) => Ok(JordanElement::Albert(Albert::from_coords(&parse_all(&v)?)?)),
            (kind, _) => Err(Error::Malformed(format!("entries do not fit the {kind:?} layout"))),
        }
    }
}

impl From<JordanElement> for ElementJson {
    fn from(x: JordanElement) -> ElementJson {
        let fmt = |v: &[Q]| v.iter().map(format_q).collect::<Vec<_>>();
        let kind = x.kind();
        let entries = match x {
            JordanElement::FullMatrix(m) | JordanElement::SymMatrix(m) | JordanElement::SkewMatrix(m) => {
                Entries::Matrix(m.to_rows().iter().map(|r| fmt(r)).collect())
            }
            JordanElement::SpinFactor { scalar, vec } => {
                let mut v = vec![scalar];
                v.extend(vec);
                Entries::Flat(fmt(&v))
            }
            JordanElement::Albert(a) => Entries::Flat(fmt(&a.coords())),
        };
        ElementJson { kind, entries }
    }
}
