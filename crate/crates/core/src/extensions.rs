//! One-dimensional central extensions: cocycles, coboundaries, extensions
//! and the unital splitting.
//!
//! A type I extension adjoins an odd central `z`, a type II extension an even
//! one. Cocycles are stored as full `n × n` tables `C(e_i, e_j)`: symmetric
//! and supported on mixed-parity pairs for type I, symmetric on even pairs
//! and skew on odd pairs for type II.

use thiserror::Error;

use crate::algebra::{canonical, center, quotient, unital_split_of, AlgebraError, BasisElem, Builder, GradedAlgebra, Parity, UnitalSplit};
use crate::linalg::{Matrix, QMatrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtensionError {
    #[error("cocycle identity fails: {0}")]
    NotACocycle(String),
    #[error("algebra has no unit in its even part")]
    NotUnital,
    #[error("central element must span a one-dimensional central ideal")]
    NotCentral,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtType {
    /// Odd central adjunct.
    I,
    /// Even central adjunct.
    II,
}

impl ExtType {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtType::I => "I",
            ExtType::II => "II",
        }
    }

    pub fn adjunct_parity(self) -> Parity {
        match self {
            ExtType::I => Parity::Odd,
            ExtType::II => Parity::Even,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cocycle {
    pub kind: ExtType,
    pub table: QMatrix,
}

impl Cocycle {
    pub fn zero(kind: ExtType, n: usize) -> Cocycle {
        Cocycle { kind, table: QMatrix::zeros(n, n) }
    }

    /// Bilinear evaluation.
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut s = Scalar::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    s = &s + &(&(xi * yj) * self.table.get(i, j));
                }
            }
        }
        s
    }
}

/// Independent coordinates of a cocycle of the given type.
pub fn cocycle_pairs(a: &GradedAlgebra, kind: ExtType) -> Vec<(usize, usize)> {
    let n = a.dim();
    let mut out = Vec::new();
    match kind {
        ExtType::I => {
            for i in a.even_indices() {
                for j in a.odd_indices() {
                    out.push((i, j));
                }
            }
        }
        ExtType::II => {
            for i in 0..n {
                for j in i..n {
                    let (p, q) = (a.parity(i), a.parity(j));
                    if p == q && (p == Parity::Even || i < j) {
                        out.push((i, j));
                    }
                }
            }
        }
    }
    out
}

/// Cocycle with the given coordinates on [`cocycle_pairs`].
pub fn cocycle_from_coords(a: &GradedAlgebra, kind: ExtType, coords: &[Scalar]) -> Cocycle {
    let mut c = Cocycle::zero(kind, a.dim());
    for (&(i, j), x) in cocycle_pairs(a, kind).iter().zip(coords) {
        c.table.set(i, j, x.clone());
        let mirrored = if kind == ExtType::II && a.parity(i).is_odd() { -x } else { x.clone() };
        c.table.set(j, i, mirrored);
    }
    c
}

/// Coordinates of a cocycle table on [`cocycle_pairs`].
pub fn cocycle_coords(a: &GradedAlgebra, c: &Cocycle) -> Vec<Scalar> {
    cocycle_pairs(a, c.kind).iter().map(|&(i, j)| c.table.get(i, j).clone()).collect()
}

/// One linear identity instance: coefficients on the cocycle coordinates.
type Row = Vec<Scalar>;

/// Linear functional `C(x, y)` in cocycle coordinates.
fn functional(a: &GradedAlgebra, kind: ExtType, pairs: &[(usize, usize)], x: &[Scalar], y: &[Scalar]) -> Row {
    let mut row = vec![Scalar::zero(); pairs.len()];
    for (u, &(i, j)) in pairs.iter().enumerate() {
        // C(x, y) = Σ x_i y_j C_ij + mirrored term for i ≠ j
        let mut c = &x[i] * &y[j];
        if i != j {
            let sign = if kind == ExtType::II && a.parity(i).is_odd() { Scalar::from_int(-1) } else { Scalar::one() };
            c = &c + &(&sign * &(&x[j] * &y[i]));
        }
        row[u] = c;
    }
    row
}

fn rsub(x: &Row, y: &Row) -> Row {
    x.iter().zip(y).map(|(p, q)| p - q).collect()
}

fn radd(x: &Row, y: &Row) -> Row {
    x.iter().zip(y).map(|(p, q)| p + q).collect()
}

fn rscale(c: &Scalar, x: &Row) -> Row {
    x.iter().map(|p| c * p).collect()
}

/// Identity instances with a human-readable tag, each required to vanish.
fn identity_rows(a: &GradedAlgebra, kind: ExtType) -> Vec<(String, Row)> {
    let pairs = cocycle_pairs(a, kind);
    let e = |i: usize| a.unit_vector(i);
    let m = |i: usize, j: usize| a.mul(&e(i), &e(j));
    let f = |x: &[Scalar], y: &[Scalar]| functional(a, kind, &pairs, x, y);
    let ev = a.even_indices();
    let od = a.odd_indices();
    let half = Scalar::from_ratio(1, 2);
    let mut rows = Vec::new();
    match kind {
        ExtType::I => {
            for &al in &ev {
                for &be in &ev {
                    for &x in &od {
                        let l = &a.basis;
                        let tag = format!("({}, {}, {})", l[al].label, l[be].label, l[x].label);
                        // C(α, βa) = C(β, αa) = ½ C(αβ, a)
                        let c1 = f(&e(al), &m(be, x));
                        let c2 = f(&e(be), &m(al, x));
                        let c3 = rscale(&half, &f(&m(al, be), &e(x)));
                        rows.push((format!("C(α,βa) = C(β,αa) at {tag}"), rsub(&c1, &c2)));
                        rows.push((format!("C(β,αa) = ½C(αβ,a) at {tag}"), rsub(&c2, &c3)));
                    }
                }
            }
            for &x in &od {
                for &y in &od {
                    for &z in &od {
                        let l = &a.basis;
                        let r = radd(&radd(&f(&m(x, y), &e(z)), &f(&m(y, z), &e(x))), &f(&m(z, x), &e(y)));
                        rows.push((format!("cyclic sum at ({}, {}, {})", l[x].label, l[y].label, l[z].label), r));
                    }
                }
            }
        }
        ExtType::II => {
            for &al in &ev {
                for &x in &od {
                    for &y in &od {
                        let l = &a.basis;
                        // C(α, ab) = C(αa, b) + C(a, αb)
                        let r = rsub(&f(&e(al), &m(x, y)), &radd(&f(&m(al, x), &e(y)), &f(&e(x), &m(al, y))));
                        rows.push((format!("C(α,ab) = C(αa,b) + C(a,αb) at ({}, {}, {})", l[al].label, l[x].label, l[y].label), r));
                    }
                }
            }
            for &al in &ev {
                for &be in &ev {
                    for &ga in &ev {
                        let l = &a.basis;
                        let r = rsub(&f(&m(al, be), &e(ga)), &f(&e(al), &m(be, ga)));
                        rows.push((format!("C(αβ,γ) = C(α,βγ) at ({}, {}, {})", l[al].label, l[be].label, l[ga].label), r));
                    }
                }
            }
        }
    }
    rows.retain(|(_, r)| r.iter().any(|c| !c.is_zero()));
    rows
}

/// Coboundary `C_f(x, y) = f(x·y)` for `f` the dual basis functional of `e_k`.
fn coboundary_of(a: &GradedAlgebra, kind: ExtType, k: usize) -> Vec<Scalar> {
    let pairs = cocycle_pairs(a, kind);
    pairs
        .iter()
        .map(|&(i, j)| a.mul(&a.unit_vector(i), &a.unit_vector(j))[k].clone())
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CocycleSpace {
    pub kind: ExtType,
    pub pairs: Vec<(usize, usize)>,
    /// Cocycles, canonical row-reduced basis in [`cocycle_pairs`] coordinates.
    pub z: Vec<Vec<Scalar>>,
    /// Coboundaries, same coordinates.
    pub b: Vec<Vec<Scalar>>,
}

impl CocycleSpace {
    pub fn dim_z(&self) -> usize {
        self.z.len()
    }

    pub fn dim_b(&self) -> usize {
        self.b.len()
    }

    pub fn dim_h(&self) -> usize {
        self.z.len() - self.b.len()
    }
}

/// Z as the solution space of the identity system, B as the image of
/// `f ↦ C_f` (f on 𝔞₁ for type I, on 𝔞₀ for type II).
pub fn cocycle_space(a: &GradedAlgebra, kind: ExtType) -> Result<CocycleSpace, AlgebraError> {
    a.require_total()?;
    let pairs = cocycle_pairs(a, kind);
    let np = pairs.len();
    let rows: Vec<Row> = identity_rows(a, kind).into_iter().map(|(_, r)| r).collect();
    let z = if rows.is_empty() {
        QMatrix::zeros(0, np).kernel()
    } else {
        Matrix::from_rows(rows, np, &Scalar::zero()).kernel()
    };
    let domain = match kind {
        ExtType::I => a.odd_indices(),
        ExtType::II => a.even_indices(),
    };
    let b_gens: Vec<Vec<Scalar>> = domain.iter().map(|&k| coboundary_of(a, kind, k)).collect();
    Ok(CocycleSpace { kind, pairs, z: canonical(&z, np), b: canonical(&b_gens, np) })
}

/// First violated identity instance, if any.
pub fn cocycle_defect(a: &GradedAlgebra, c: &Cocycle) -> Option<String> {
    let coords = cocycle_coords(a, c);
    if cocycle_from_coords(a, c.kind, &coords) != *c {
        return Some("table is not of the required symmetry/support".into());
    }
    identity_rows(a, c.kind).into_iter().find_map(|(tag, r)| {
        let v = r.iter().zip(&coords).fold(Scalar::zero(), |s, (x, y)| &s + &(x * y));
        (!v.is_zero()).then_some(tag)
    })
}

/// 𝔞 ⊕ 𝕂z with `x·y = (x·y)_𝔞 + C(x, y) z` and `z` central.
pub fn extend_central(a: &GradedAlgebra, c: &Cocycle, label: &str) -> Result<GradedAlgebra, ExtensionError> {
    a.require_total()?;
    if let Some(w) = cocycle_defect(a, c) {
        return Err(ExtensionError::NotACocycle(w));
    }
    let n = a.dim();
    let mut basis = a.basis.clone();
    basis.push(BasisElem::new(label, c.kind.adjunct_parity()));
    let mut b = Builder::new(format!("{}+{}", a.name, label), basis).field(a.field);
    for i in 0..n {
        for j in i..n {
            let mut t: Vec<(usize, Scalar)> = a.mul_basis(i, j).expect("total").clone();
            let cz = c.table.get(i, j);
            if !cz.is_zero() {
                t.push((n, cz.clone()));
            }
            b.set(i, j, t);
        }
    }
    Ok(b.build()?)
}

/// Reads off `(𝔞/𝕂z, C)` for a central element `z` spanning an ideal.
pub fn cocycle_of_extension(a: &GradedAlgebra, z: &[Scalar]) -> Result<(GradedAlgebra, Cocycle), ExtensionError> {
    let zc = canonical(&[z.to_vec()], a.dim());
    let [zrow] = zc.as_slice() else { return Err(ExtensionError::NotCentral) };
    let ctr = center(a)?;
    if !crate::linalg::in_span(&ctr, zrow, &Scalar::zero()) {
        return Err(ExtensionError::NotCentral);
    }
    let kind = match crate::algebra::homogeneous_parity(a, zrow) {
        Some(Parity::Odd) => ExtType::I,
        Some(Parity::Even) => ExtType::II,
        None => return Err(ExtensionError::NotCentral),
    };
    let (q, _) = quotient(a, &zc)?;
    let pivot = zrow.iter().position(|x| !x.is_zero()).expect("nonzero");
    let keep: Vec<usize> = (0..a.dim()).filter(|&k| k != pivot).collect();
    let mut c = Cocycle::zero(kind, q.dim());
    for (qi, &i) in keep.iter().enumerate() {
        for (qj, &j) in keep.iter().enumerate() {
            let prod = a.mul(&a.unit_vector(i), &a.unit_vector(j));
            c.table.set(qi, qj, prod[pivot].clone());
        }
    }
    Ok((q, c))
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitalDecomposition {
    pub split: UnitalSplit,
    pub center: Vec<Vec<Scalar>>,
    /// Whether the 0-eigenspace of `ad_ε` on 𝔞₁ equals the center.
    pub zero_is_center: bool,
    /// 𝔞 / Z(𝔞).
    pub reduced: GradedAlgebra,
    pub type_i: CocycleSpace,
    pub type_ii: CocycleSpace,
}

impl UnitalDecomposition {
    /// No nontrivial central extension of the reduced algebra.
    pub fn certified(&self) -> bool {
        self.zero_is_center && self.split.half_projector && self.type_i.dim_h() == 0 && self.type_ii.dim_h() == 0
    }
}

pub fn unital_split(a: &GradedAlgebra) -> Result<UnitalDecomposition, ExtensionError> {
    a.require_total()?;
    let split = unital_split_of(a)?.ok_or(ExtensionError::NotUnital)?;
    let ctr = center(a)?;
    let zero_is_center = canonical(&split.zero, a.dim()) == ctr;
    let (reduced, _) = quotient(a, &ctr)?;
    let type_i = cocycle_space(&reduced, ExtType::I)?;
    let type_ii = cocycle_space(&reduced, ExtType::II)?;
    Ok(UnitalDecomposition { split, center: ctr, zero_is_center, reduced, type_i, type_ii })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::check_antialgebra;
    use crate::catalog::{aaf, ah, ah_hat, ah_hat_hat, k3, k3c};

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn ah1_type_i() {
        let s = cocycle_space(&ah(1), ExtType::I).unwrap();
        assert_eq!((s.dim_z(), s.dim_b(), s.dim_h()), (2, 0, 2));
    }

    #[test]
    fn ah_n_type_i_vanishes() {
        for n in [2, 3] {
            assert_eq!(cocycle_space(&ah(n), ExtType::I).unwrap().dim_z(), 0);
        }
    }

    #[test]
    fn unital_have_no_extensions() {
        for a in [k3(), k3c(), aaf(1), aaf(2), aaf(3)] {
            for t in [ExtType::I, ExtType::II] {
                let s = cocycle_space(&a, t).unwrap();
                assert_eq!(s.dim_h(), 0, "{} type {}", a.name, t.as_str());
            }
        }
    }

    #[test]
    fn coboundaries_are_cocycles() {
        for a in crate::catalog::total_antialgebras() {
            for t in [ExtType::I, ExtType::II] {
                let s = cocycle_space(&a, t).unwrap();
                for v in &s.b {
                    assert!(crate::linalg::in_span(&s.z, v, &Scalar::zero()), "{}", a.name);
                }
            }
        }
    }

    #[test]
    fn hat_from_ah1() {
        let a = ah(1);
        let c = cocycle_from_coords(&a, ExtType::I, &[q(1), q(0)]);
        let e = extend_central(&a, &c, "z").unwrap();
        assert_eq!(e.upper_entries(), ah_hat().upper_entries());
        assert!(check_antialgebra(&e).clean());
        let (back, c2) = cocycle_of_extension(&e, &e.unit_vector(3)).unwrap();
        assert_eq!(back.upper_entries(), a.upper_entries());
        assert_eq!(c2, c);
    }

    #[test]
    fn hat_hat_from_hat() {
        let a = ah_hat();
        // C(α, b) = 1
        let mut c = Cocycle::zero(ExtType::I, 4);
        c.table.set(0, 2, q(1));
        c.table.set(2, 0, q(1));
        assert!(cocycle_defect(&a, &c).is_none());
        let e = extend_central(&a, &c, "z2").unwrap();
        let hh = ah_hat_hat();
        assert_eq!(e.upper_entries(), hh.upper_entries());
    }

    #[test]
    fn non_cocycle_rejected() {
        // C(α, α) on ah₁ is not of type I support
        let mut c = Cocycle::zero(ExtType::I, 3);
        c.table.set(0, 0, q(1));
        assert!(matches!(extend_central(&ah(1), &c, "z"), Err(ExtensionError::NotACocycle(_))));
        // type II on K₃: C(a,b) = 1 alone breaks C(ε,ab) = C(εa,b) + C(a,εb)
        let a = k3();
        let c = cocycle_from_coords(&a, ExtType::II, &[q(0), q(1)]);
        assert!(cocycle_defect(&a, &c).is_some());
    }

    #[test]
    fn zero_cocycle_is_direct_sum() {
        let a = k3();
        let e = extend_central(&a, &Cocycle::zero(ExtType::II, 3), "z").unwrap();
        assert_eq!(e.dims(), (2, 2));
        assert_eq!(center(&e).unwrap(), vec![e.unit_vector(3)]);
    }

    #[test]
    fn split_of_aaf_plus_center() {
        let a = aaf(2);
        let e = extend_central(&a, &Cocycle::zero(ExtType::I, 3), "c").unwrap();
        let d = unital_split(&e).unwrap();
        assert!(d.certified());
        assert_eq!(d.center, vec![e.unit_vector(3)]);
        assert_eq!(d.reduced.upper_entries(), a.upper_entries());
        assert_eq!(d.split.half.len(), 2);
    }

    #[test]
    fn split_of_k3() {
        let d = unital_split(&k3()).unwrap();
        assert!(d.certified());
        assert!(d.center.is_empty());
        assert!(matches!(unital_split(&ah(1)), Err(ExtensionError::NotUnital)));
    }
}
