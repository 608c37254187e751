//! Grassmann/Laurent polynomials, polyvector fields and the brackets they
//! define: Poisson bracket, odd antibracket, Lie derivatives, homogeneous
//! lifts, tangent fields on 𝕂^{1|1} and the canonical odd bivector Λ_𝔞.
//!
//! Polyvectors are stored in the shifted picture: the derivation ∂_u becomes a
//! variable θ_u of parity p(u) + 1, so a polyvector field is a polynomial in
//! the coordinates and the θ's. The Schouten bracket is then the canonical odd
//! bracket pairing x_u with θ_u, and Lie derivatives and function brackets are
//! derived brackets. Sign conventions are calibrated on the order-1 bracket
//! tables of 𝕂^{2|1}.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, BasisElem, Builder, GradedAlgebra, Parity, SuperLinearMap, Terms, WindowOp};
use crate::catalog::Grid;
use crate::linalg::QMatrix;
use crate::reps::Representation;
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("unsupported dimensions {0}|{1}")]
    UnsupportedDims(usize, usize),
    #[error("exponent {0} is not an integer")]
    NonIntegralExponent(String),
    #[error("expected a polynomial in one even and one odd variable")]
    NotOnLine,
    #[error("polyvector is not linear")]
    NotLinear,
    #[error("inhomogeneous input")]
    Inhomogeneous,
    #[error("no structure named {0} in this dimension")]
    UnknownStructure(String),
    #[error("negative exponent in a linear substitution")]
    NegativeExponent,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `x^e τ_S` with Laurent exponents on the even variables and `S` a bitmask.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub even: Vec<i64>,
    pub odd: u64,
}

impl Monomial {
    pub fn parity(&self) -> Parity {
        if self.odd.count_ones() % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// Sign and product of two monomials, `None` if an odd variable repeats.
    pub fn mul(&self, o: &Monomial) -> Option<(bool, Monomial)> {
        if self.odd & o.odd != 0 {
            return None;
        }
        let mut neg = false;
        let mut t = o.odd;
        while t != 0 {
            let j = t.trailing_zeros();
            if (self.odd >> (j + 1)).count_ones() % 2 == 1 {
                neg = !neg;
            }
            t &= t - 1;
        }
        let even = self.even.iter().zip(&o.even).map(|(a, b)| a + b).collect();
        Some((neg, Monomial { even, odd: self.odd | o.odd }))
    }
}

/// Polynomial in `n_even` Laurent variables and `n_odd` Grassmann variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrassmannPoly {
    pub n_even: usize,
    pub n_odd: usize,
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl GrassmannPoly {
    pub fn zero(n_even: usize, n_odd: usize) -> GrassmannPoly {
        GrassmannPoly { n_even, n_odd, terms: BTreeMap::new() }
    }

    pub fn constant(n_even: usize, n_odd: usize, c: Scalar) -> GrassmannPoly {
        GrassmannPoly::monomial(n_even, n_odd, vec![0; n_even], 0, c)
    }

    pub fn monomial(n_even: usize, n_odd: usize, even: Vec<i64>, odd: u64, c: Scalar) -> GrassmannPoly {
        let mut p = GrassmannPoly::zero(n_even, n_odd);
        if !c.is_zero() {
            p.terms.insert(Monomial { even, odd }, c);
        }
        p
    }

    pub fn even_var(n_even: usize, n_odd: usize, i: usize) -> GrassmannPoly {
        let mut e = vec![0; n_even];
        e[i] = 1;
        GrassmannPoly::monomial(n_even, n_odd, e, 0, Scalar::one())
    }

    pub fn odd_var(n_even: usize, n_odd: usize, k: usize) -> GrassmannPoly {
        GrassmannPoly::monomial(n_even, n_odd, vec![0; n_even], 1 << k, Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &GrassmannPoly) -> GrassmannPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.insert(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &GrassmannPoly) -> GrassmannPoly {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> GrassmannPoly {
        let mut r = GrassmannPoly::zero(self.n_even, self.n_odd);
        for (m, x) in &self.terms {
            r.insert(m.clone(), x * c);
        }
        r
    }

    pub fn mul(&self, o: &GrassmannPoly) -> GrassmannPoly {
        let mut r = GrassmannPoly::zero(self.n_even, self.n_odd);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if let Some((neg, m)) = m1.mul(m2) {
                    let c = c1 * c2;
                    r.insert(m, if neg { -c } else { c });
                }
            }
        }
        r
    }

    /// Parity of a homogeneous polynomial (zero counts as even).
    pub fn parity(&self) -> Option<Parity> {
        let mut ps = self.terms.keys().map(|m| m.parity());
        let first = ps.next().unwrap_or(Parity::Even);
        ps.all(|p| p == first).then_some(first)
    }

    /// Even and odd components.
    pub fn split(&self) -> (GrassmannPoly, GrassmannPoly) {
        let mut e = GrassmannPoly::zero(self.n_even, self.n_odd);
        let mut o = e.clone();
        for (m, c) in &self.terms {
            if m.parity().is_odd() { &mut o } else { &mut e }.insert(m.clone(), c.clone());
        }
        (e, o)
    }

    /// `∂/∂x_i`.
    pub fn d_even(&self, i: usize) -> GrassmannPoly {
        let mut r = GrassmannPoly::zero(self.n_even, self.n_odd);
        for (m, c) in &self.terms {
            let e = m.even[i];
            if e != 0 {
                let mut m2 = m.clone();
                m2.even[i] -= 1;
                r.insert(m2, c * &Scalar::from_int(e));
            }
        }
        r
    }

    /// Left derivative `∂/∂τ_k`.
    pub fn d_odd(&self, k: usize) -> GrassmannPoly {
        let mut r = GrassmannPoly::zero(self.n_even, self.n_odd);
        for (m, c) in &self.terms {
            if m.odd >> k & 1 == 1 {
                let neg = (m.odd & ((1u64 << k) - 1)).count_ones() % 2 == 1;
                let m2 = Monomial { even: m.even.clone(), odd: m.odd & !(1 << k) };
                r.insert(m2, if neg { -c } else { c.clone() });
            }
        }
        r
    }

    /// Total degree of every term, if all agree.
    pub fn degree(&self) -> Option<i64> {
        let mut ds = self.terms.keys().map(|m| m.even.iter().sum::<i64>() + m.odd.count_ones() as i64);
        let first = ds.next()?;
        ds.all(|d| d == first).then_some(first)
    }

    /// Same polynomial in a larger variable set (new variables appended).
    fn pad(&self, n_even: usize, even_at: usize, n_odd: usize, odd_at: usize) -> GrassmannPoly {
        let mut r = GrassmannPoly::zero(n_even, n_odd);
        for (m, c) in &self.terms {
            let mut e = vec![0; n_even];
            e[even_at..even_at + self.n_even].copy_from_slice(&m.even);
            r.insert(Monomial { even: e, odd: m.odd << odd_at }, c.clone());
        }
        r
    }

    /// Whether all odd-variable degrees are ≤ 1 (always) and even exponents are nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.even.iter().all(|&e| e >= 0))
    }
}

impl fmt::Debug for GrassmannPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*x{:?}*t{:b}", m.even, m.odd)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Coordinate of a superspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Coord {
    Even(usize),
    Odd(usize),
}

impl Coord {
    pub fn parity(self) -> Parity {
        match self {
            Coord::Even(_) => Parity::Even,
            Coord::Odd(_) => Parity::Odd,
        }
    }
}

/// Coordinate names of 𝕂^{m|k}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    pub even: Vec<String>,
    pub odd: Vec<String>,
}

impl Space {
    pub fn new(even: &[&str], odd: &[&str]) -> Space {
        Space { even: even.iter().map(|s| s.to_string()).collect(), odd: odd.iter().map(|s| s.to_string()).collect() }
    }

    pub fn m(&self) -> usize {
        self.even.len()
    }

    pub fn k(&self) -> usize {
        self.odd.len()
    }

    pub fn coords(&self) -> Vec<Coord> {
        (0..self.m()).map(Coord::Even).chain((0..self.k()).map(Coord::Odd)).collect()
    }

    pub fn name(&self, c: Coord) -> &str {
        match c {
            Coord::Even(i) => &self.even[i],
            Coord::Odd(k) => &self.odd[k],
        }
    }

    pub fn zero(&self) -> GrassmannPoly {
        GrassmannPoly::zero(self.m(), self.k())
    }

    pub fn constant(&self, c: Scalar) -> GrassmannPoly {
        GrassmannPoly::constant(self.m(), self.k(), c)
    }

    /// Coordinate function.
    pub fn var(&self, c: Coord) -> GrassmannPoly {
        match c {
            Coord::Even(i) => GrassmannPoly::even_var(self.m(), self.k(), i),
            Coord::Odd(k) => GrassmannPoly::odd_var(self.m(), self.k(), k),
        }
    }

    /// `c·Π x_i^{e_i}·Π_{k∈S} τ_k`.
    pub fn mono(&self, c: Scalar, even: &[i64], odd: &[usize]) -> GrassmannPoly {
        let mut p = GrassmannPoly::monomial(self.m(), self.k(), even.to_vec(), 0, Scalar::one());
        for &k in odd {
            p = p.mul(&self.var(Coord::Odd(k)));
        }
        p.scale(&c)
    }

    pub fn partial(&self, f: &GrassmannPoly, c: Coord) -> GrassmannPoly {
        match c {
            Coord::Even(i) => f.d_even(i),
            Coord::Odd(k) => f.d_odd(k),
        }
    }

    // shifted variables: even = [x_1..x_m, θ_{τ_1}..θ_{τ_k}], odd = [τ_1..τ_k, θ_{x_1}..θ_{x_m}]
    fn ext_dims(&self) -> (usize, usize) {
        (self.m() + self.k(), self.k() + self.m())
    }

    fn theta(&self, c: Coord) -> GrassmannPoly {
        let (ne, no) = self.ext_dims();
        match c {
            Coord::Even(i) => GrassmannPoly::odd_var(ne, no, self.k() + i),
            Coord::Odd(k) => GrassmannPoly::even_var(ne, no, self.m() + k),
        }
    }

    fn embed(&self, f: &GrassmannPoly) -> GrassmannPoly {
        let (ne, no) = self.ext_dims();
        f.pad(ne, 0, no, 0)
    }

    fn ext_partial_x(&self, a: &GrassmannPoly, c: Coord) -> GrassmannPoly {
        match c {
            Coord::Even(i) => a.d_even(i),
            Coord::Odd(k) => a.d_odd(k),
        }
    }

    fn ext_partial_theta(&self, a: &GrassmannPoly, c: Coord) -> GrassmannPoly {
        match c {
            Coord::Even(i) => a.d_odd(self.k() + i),
            Coord::Odd(k) => a.d_even(self.m() + k),
        }
    }

    /// Splits an extended monomial into its function part and θ-part; the
    /// canonical variable order puts function variables first, so no sign.
    fn split_mono(&self, m: &Monomial) -> (Monomial, Vec<(Coord, i64)>) {
        let (mm, kk) = (self.m(), self.k());
        let f = Monomial { even: m.even[..mm].to_vec(), odd: m.odd & ((1u64 << kk) - 1) };
        let mut th = Vec::new();
        for i in 0..mm {
            if m.odd >> (kk + i) & 1 == 1 {
                th.push((Coord::Even(i), 1));
            }
        }
        for k in 0..kk {
            let e = m.even[mm + k];
            if e != 0 {
                th.push((Coord::Odd(k), e));
            }
        }
        (f, th)
    }
}

/// Polyvector field stored in the shifted picture (see module docs).
#[derive(Clone, PartialEq, Eq)]
pub struct PolyVector {
    pub space: Space,
    pub poly: GrassmannPoly,
}

impl fmt::Debug for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// One term `coeff · monomial · ∂_{u_1}∧…∧∂_{u_d}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WedgeTerm {
    pub coeff: Scalar,
    pub even: Vec<i64>,
    pub odd: Vec<usize>,
    pub wedge: Vec<Coord>,
}

impl PolyVector {
    pub fn zero(space: &Space) -> PolyVector {
        let (ne, no) = space.ext_dims();
        PolyVector { space: space.clone(), poly: GrassmannPoly::zero(ne, no) }
    }

    /// A function, viewed as a degree-0 polyvector.
    pub fn function(space: &Space, f: &GrassmannPoly) -> PolyVector {
        PolyVector { space: space.clone(), poly: space.embed(f) }
    }

    /// `∂/∂u`.
    pub fn partial(space: &Space, c: Coord) -> PolyVector {
        PolyVector { space: space.clone(), poly: space.theta(c) }
    }

    /// `Σ f_u ∂_u`.
    pub fn vector_field(space: &Space, comps: &[(Coord, GrassmannPoly)]) -> PolyVector {
        let mut p = PolyVector::zero(space);
        for (c, f) in comps {
            p = p.add(&PolyVector { space: space.clone(), poly: space.embed(f).mul(&space.theta(*c)) });
        }
        p
    }

    /// `f · ∂_u∧∂_v`. Wedge products are products of the shifted variables,
    /// so `∂_u∧∂_v = (−1)^{(p(u)+1)(p(v)+1)} ∂_v∧∂_u`.
    pub fn bivector_term(space: &Space, f: &GrassmannPoly, u: Coord, v: Coord) -> PolyVector {
        PolyVector { space: space.clone(), poly: space.embed(f).mul(&space.theta(u)).mul(&space.theta(v)) }
    }

    /// `A∧B`.
    pub fn wedge(a: &PolyVector, b: &PolyVector) -> PolyVector {
        PolyVector { space: a.space.clone(), poly: a.poly.mul(&b.poly) }
    }

    pub fn add(&self, o: &PolyVector) -> PolyVector {
        PolyVector { space: self.space.clone(), poly: self.poly.add(&o.poly) }
    }

    pub fn sub(&self, o: &PolyVector) -> PolyVector {
        PolyVector { space: self.space.clone(), poly: self.poly.sub(&o.poly) }
    }

    pub fn scale(&self, c: &Scalar) -> PolyVector {
        PolyVector { space: self.space.clone(), poly: self.poly.scale(c) }
    }

    /// Multiplication by a function on the left.
    pub fn times(&self, f: &GrassmannPoly) -> PolyVector {
        PolyVector { space: self.space.clone(), poly: self.space.embed(f).mul(&self.poly) }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Number of derivations per term, if all agree.
    pub fn degree(&self) -> Option<usize> {
        let mut ds = self.poly.terms.keys().map(|m| self.space.split_mono(m).1.iter().map(|(_, e)| *e as usize).sum::<usize>());
        let first = ds.next()?;
        ds.all(|d| d == first).then_some(first)
    }

    /// Total parity (coefficient parity plus derivation parities).
    pub fn parity(&self) -> Option<Parity> {
        let total = self.poly.parity()?;
        // θ_u has parity p(u)+1, ∂_u has p(u): the two differ by the degree
        let d = self.degree().unwrap_or(0);
        Some(if d % 2 == 1 { total.add(Parity::Odd) } else { total })
    }

    /// Components `f_u` of a vector field `Σ f_u ∂_u`.
    pub fn components(&self) -> Vec<(Coord, GrassmannPoly)> {
        let sp = &self.space;
        let mut out: BTreeMap<Coord, GrassmannPoly> = BTreeMap::new();
        for (m, c) in &self.poly.terms {
            let (f, th) = sp.split_mono(m);
            assert!(th.len() == 1 && th[0].1 == 1, "not a vector field");
            let entry = out.entry(th[0].0).or_insert_with(|| sp.zero());
            *entry = entry.add(&GrassmannPoly::monomial(sp.m(), sp.k(), f.even, f.odd, c.clone()));
        }
        out.into_iter().collect()
    }

    /// `X(F) = Σ f_u ∂_u F` for a vector field.
    pub fn apply(&self, f: &GrassmannPoly) -> GrassmannPoly {
        let mut r = self.space.zero();
        for (u, c) in self.components() {
            r = r.add(&c.mul(&self.space.partial(f, u)));
        }
        r
    }

    /// Function value of a degree-0 polyvector.
    pub fn as_function(&self) -> GrassmannPoly {
        let sp = &self.space;
        let mut r = sp.zero();
        for (m, c) in &self.poly.terms {
            let (f, th) = sp.split_mono(m);
            assert!(th.is_empty(), "not a function");
            r = r.add(&GrassmannPoly::monomial(sp.m(), sp.k(), f.even, f.odd, c.clone()));
        }
        r
    }

    /// Terms with wedge factors in canonical order (even ∂s before odd ∂s, by index).
    pub fn terms(&self) -> Vec<WedgeTerm> {
        let sp = &self.space;
        let mut out = Vec::new();
        for (m, c) in &self.poly.terms {
            let (f, th) = sp.split_mono(m);
            let mut wedge = Vec::new();
            for (u, e) in &th {
                for _ in 0..*e {
                    wedge.push(*u);
                }
            }
            let odd: Vec<usize> = (0..sp.k()).filter(|k| f.odd >> k & 1 == 1).collect();
            out.push(WedgeTerm { coeff: c.clone(), even: f.even, odd, wedge });
        }
        out.sort_by(|a, b| (&a.wedge, &a.odd, &a.even).cmp(&(&b.wedge, &b.odd, &b.even)));
        out
    }

    /// Human-readable form, e.g. `1/2*tau*d/dp^d/dq`.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let sp = &self.space;
        let parts: Vec<String> = self
            .terms()
            .iter()
            .map(|t| {
                let mut s = vec![t.coeff.to_string()];
                for (i, e) in t.even.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => s.push(sp.even[i].clone()),
                        _ => s.push(format!("{}^{e}", sp.even[i])),
                    }
                }
                for k in &t.odd {
                    s.push(sp.odd[*k].clone());
                }
                let w: Vec<String> = t.wedge.iter().map(|u| format!("d/d{}", sp.name(*u))).collect();
                if !w.is_empty() {
                    s.push(w.join("^"));
                }
                s.join("*")
            })
            .collect();
        parts.join(" + ")
    }
}

/// Canonical odd bracket of the shifted picture:
/// `(A, B) = Σ_u (−1)^{p(u)(p(A)+1)} ∂_{x_u}A·∂_{θ_u}B − (−1)^{(p(u)+1)(p(A)+1)} ∂_{θ_u}A·∂_{x_u}B`.
pub fn schouten(a: &PolyVector, b: &PolyVector) -> PolyVector {
    let sp = &a.space;
    let (ae, ao) = a.poly.split();
    let mut r = PolyVector::zero(sp).poly;
    for (part, pa) in [(ae, 0i64), (ao, 1i64)] {
        if part.is_zero() {
            continue;
        }
        for u in sp.coords() {
            let pu = if u.parity().is_odd() { 1 } else { 0 };
            let s1 = if pu * (pa + 1) % 2 == 1 { -1 } else { 1 };
            let s2 = if (pu + 1) * (pa + 1) % 2 == 1 { -1 } else { 1 };
            let t1 = sp.ext_partial_x(&part, u).mul(&sp.ext_partial_theta(&b.poly, u)).scale(&Scalar::from_int(s1));
            let t2 = sp.ext_partial_theta(&part, u).mul(&sp.ext_partial_x(&b.poly, u)).scale(&Scalar::from_int(s2));
            r = r.add(&t1).sub(&t2);
        }
    }
    PolyVector { space: sp.clone(), poly: r }
}

/// `L_X A`; on functions this is `X(f)` and on vector fields the commutator.
pub fn lie_derivative(x: &PolyVector, a: &PolyVector) -> PolyVector {
    schouten(x, a).scale(&Scalar::from_int(-1))
}

/// Sign rule for [`vf_commutator`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VfSign {
    /// `XY − (−1)^{p(X)p(Y)} YX`.
    SuperCommutator,
    /// `fD∘gD + (−1)^{(p(f)+1)(p(g)+1)} gD∘fD` for tangent fields (parity of X is p(f)+1).
    Anticommutator,
}

/// Graded commutator of vector fields, computed from their action on
/// coordinates; `None` for the anticommutator when the result is not first
/// order.
pub fn vf_commutator(x: &PolyVector, y: &PolyVector, sign: VfSign) -> Option<PolyVector> {
    let sp = &x.space;
    let px = x.parity()?;
    let py = y.parity()?;
    let s = crate::algebra::koszul(px, py);
    let s = match sign {
        VfSign::SuperCommutator => -s,
        VfSign::Anticommutator => s,
    };
    // a second-order operator X∘Y + s·Y∘X is first order iff it kills products
    // correctly; first compute the candidate from coordinates, then verify
    let comps: Vec<(Coord, GrassmannPoly)> = sp
        .coords()
        .into_iter()
        .map(|u| {
            let v = sp.var(u);
            (u, x.apply(&y.apply(&v)).add(&y.apply(&x.apply(&v)).scale(&s)))
        })
        .collect();
    let cand = PolyVector::vector_field(sp, &comps);
    if sign == VfSign::SuperCommutator {
        return Some(cand);
    }
    for u in sp.coords() {
        for w in sp.coords() {
            let f = sp.var(u).mul(&sp.var(w));
            let lhs = x.apply(&y.apply(&f)).add(&y.apply(&x.apply(&f)).scale(&s));
            if lhs != cand.apply(&f) {
                return None;
            }
        }
    }
    Some(cand)
}

/// Bracket convention for [`bracket_from_bivector`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketKind {
    /// Odd antibracket `]F,G[`.
    Odd,
    /// Poisson bracket `{F,G} = ⟨P, dF∧dG⟩`.
    Even,
}

/// Derived bracket `((Λ, G), F)` of functions, normalized so that the
/// canonical structures give `]p,q[ = ½τ`, `]p,τ[ = ½p`, `]τ,τ[ = τ` and
/// `{p,q} = 1`, `{τ,τ} = 1`. The sign `(−1)^{p(F)}` of the odd contraction is
/// already carried by the derived bracket; the even one needs
/// `(−1)^{(p(F)+1)p(G)}` to become `F_pG_q − F_qG_p − (−1)^{p(F)}∂_τF∂_τG`.
pub fn bracket_from_bivector(bv: &PolyVector, f: &GrassmannPoly, g: &GrassmannPoly, kind: BracketKind) -> GrassmannPoly {
    let sp = &bv.space;
    let derived = |f: &GrassmannPoly, g: &GrassmannPoly| {
        let inner = schouten(bv, &PolyVector::function(sp, g));
        schouten(&inner, &PolyVector::function(sp, f)).as_function()
    };
    match kind {
        BracketKind::Odd => derived(f, g).scale(&Scalar::from_ratio(1, 2)),
        BracketKind::Even => {
            let (fe, fo) = f.split();
            let (ge, go) = g.split();
            derived(&fe, &ge).add(&derived(&fo, &ge)).add(&derived(&fo, &go)).sub(&derived(&fe, &go))
        }
    }
}

/// Hamiltonian vector field `X_h = {h, ·}` of a Poisson bivector.
pub fn hamiltonian_field(poisson: &PolyVector, h: &GrassmannPoly) -> PolyVector {
    let sp = &poisson.space;
    let comps: Vec<(Coord, GrassmannPoly)> = sp.coords().into_iter().map(|u| (u, bracket_from_bivector(poisson, h, &sp.var(u), BracketKind::Even))).collect();
    PolyVector::vector_field(sp, &comps)
}

/// Linear-coefficient bivector ansatz of the given total parity.
pub fn bivector_ansatz(space: &Space, parity: Parity, max_coeff_degree: usize) -> Vec<PolyVector> {
    let coords = space.coords();
    let mut coeffs = vec![space.constant(Scalar::one())];
    if max_coeff_degree >= 1 {
        coeffs.extend(coords.iter().map(|&c| space.var(c)));
    }
    let mut out = Vec::new();
    for (a, &u) in coords.iter().enumerate() {
        for &v in &coords[a..] {
            if u == v && !u.parity().is_odd() {
                continue;
            }
            let dpar = u.parity().add(v.parity());
            for f in &coeffs {
                if f.parity().unwrap_or(Parity::Even).add(dpar) == parity {
                    out.push(PolyVector::bivector_term(space, f, u, v));
                }
            }
        }
    }
    out
}

/// Basis of the bivectors in the ansatz killed by `L_X` for every `X`.
pub fn invariant_bivector_space(action: &[PolyVector], space: &Space, parity: Parity, max_coeff_degree: usize) -> Vec<PolyVector> {
    let ansatz = bivector_ansatz(space, parity, max_coeff_degree);
    let mut eqs: BTreeMap<(usize, Monomial), Vec<Scalar>> = BTreeMap::new();
    for (xi, x) in action.iter().enumerate() {
        for (k, b) in ansatz.iter().enumerate() {
            for (m, c) in &lie_derivative(x, b).poly.terms {
                let row = eqs.entry((xi, m.clone())).or_insert_with(|| vec![Scalar::zero(); ansatz.len()]);
                row[k] = &row[k] + c;
            }
        }
    }
    let mat: Vec<Vec<Scalar>> = eqs.into_values().collect();
    let kernel = if mat.is_empty() {
        QMatrix::zeros(0, ansatz.len()).kernel()
    } else {
        QMatrix::from_rows(mat, ansatz.len(), &Scalar::zero()).kernel()
    };
    kernel
        .into_iter()
        .map(|v| v.iter().zip(&ansatz).fold(PolyVector::zero(space), |acc, (c, b)| acc.add(&b.scale(c))))
        .collect()
}

fn half() -> Scalar {
    Scalar::from_ratio(1, 2)
}

/// Coordinates `(p, q; τ)` of 𝕂^{2|1}.
pub fn plane() -> Space {
    Space::new(&["p", "q"], &["tau"])
}

/// Coordinates `(x; ξ)` of 𝕂^{1|1}.
pub fn line() -> Space {
    Space::new(&["x"], &["xi"])
}

/// Coordinates `(p₁, q₁, p₂, q₂; τ₁, τ₂)` of 𝕂^{4|2}.
pub fn plane2() -> Space {
    Space::new(&["p1", "q1", "p2", "q2"], &["tau1", "tau2"])
}

/// `Σ y_u ∂_u`.
pub fn euler_field(space: &Space) -> PolyVector {
    let comps: Vec<(Coord, GrassmannPoly)> = space.coords().into_iter().map(|u| (u, space.var(u))).collect();
    PolyVector::vector_field(space, &comps)
}

/// `∂_τ∧ℰ + τ ∂_p∧∂_q` on 𝕂^{2|1}.
pub fn canonical_lambda() -> PolyVector {
    let sp = plane();
    let t = Coord::Odd(0);
    PolyVector::wedge(&PolyVector::partial(&sp, t), &euler_field(&sp)).add(&PolyVector::bivector_term(&sp, &sp.var(t), Coord::Even(0), Coord::Even(1)))
}

/// `∂_p∧∂_q + ½ ∂_τ∧∂_τ` on 𝕂^{2|1}.
pub fn canonical_poisson() -> PolyVector {
    let sp = plane();
    let t = Coord::Odd(0);
    PolyVector::bivector_term(&sp, &sp.constant(Scalar::one()), Coord::Even(0), Coord::Even(1)).add(&PolyVector::bivector_term(&sp, &sp.constant(half()), t, t))
}

/// Contact field `D = ½(∂_ξ + ξ∂_x)` on 𝕂^{1|1}.
pub fn contact_field() -> PolyVector {
    let sp = line();
    let xi = Coord::Odd(0);
    PolyVector::vector_field(&sp, &[(xi, sp.constant(half())), (Coord::Even(0), sp.var(xi).scale(&half()))])
}

/// Quadratic Hamiltonians `p², pq, q², τp, τq` generating osp(1|2) on 𝕂^{2|1}.
pub fn osp_hamiltonians() -> Vec<(String, GrassmannPoly)> {
    let sp = plane();
    let (p, q, t) = (sp.var(Coord::Even(0)), sp.var(Coord::Even(1)), sp.var(Coord::Odd(0)));
    vec![
        ("p^2".into(), p.mul(&p)),
        ("pq".into(), p.mul(&q)),
        ("q^2".into(), q.mul(&q)),
        ("tau*p".into(), t.mul(&p)),
        ("tau*q".into(), t.mul(&q)),
    ]
}

/// Linear vector fields of the osp(1|2) action on 𝕂^{2|1}.
pub fn osp_fields() -> Vec<PolyVector> {
    let pois = canonical_poisson();
    osp_hamiltonians().iter().map(|(_, h)| hamiltonian_field(&pois, h)).collect()
}

/// Complex structure `𝒥` on 𝕂^{4|2}.
pub fn complex_structure_field() -> PolyVector {
    let sp = plane2();
    let v = |i: usize| sp.var(Coord::Even(i));
    let neg = |f: GrassmannPoly| f.scale(&Scalar::from_int(-1));
    let (p1, q1, p2, q2) = (Coord::Even(0), Coord::Even(1), Coord::Even(2), Coord::Even(3));
    let (t1, t2) = (Coord::Odd(0), Coord::Odd(1));
    PolyVector::vector_field(
        &sp,
        &[
            (p1, v(3)),
            (q1, v(2)),
            (p2, neg(v(1))),
            (q2, neg(v(0))),
            (t1, sp.var(t2)),
            (t2, neg(sp.var(t1))),
        ],
    )
}

/// `π_ε = ∂_{p₁}∧∂_{q₁} + ∂_{p₂}∧∂_{q₂}`.
pub fn pi_eps() -> PolyVector {
    let sp = plane2();
    let one = sp.constant(Scalar::one());
    PolyVector::bivector_term(&sp, &one, Coord::Even(0), Coord::Even(1)).add(&PolyVector::bivector_term(&sp, &one, Coord::Even(2), Coord::Even(3)))
}

/// `π_σ = ∂_{p₁}∧∂_{p₂} − ∂_{q₁}∧∂_{q₂}`.
pub fn pi_sigma() -> PolyVector {
    let sp = plane2();
    let one = sp.constant(Scalar::one());
    PolyVector::bivector_term(&sp, &one, Coord::Even(0), Coord::Even(2)).sub(&PolyVector::bivector_term(&sp, &one, Coord::Even(1), Coord::Even(3)))
}

/// `Λ^C = ∂_{τ₁}∧ℰ + ∂_{τ₂}∧𝒥 + τ₁π_ε + τ₂π_σ` on 𝕂^{4|2}.
pub fn lambda_c() -> PolyVector {
    let sp = plane2();
    let (t1, t2) = (Coord::Odd(0), Coord::Odd(1));
    PolyVector::wedge(&PolyVector::partial(&sp, t1), &euler_field(&sp))
        .add(&PolyVector::wedge(&PolyVector::partial(&sp, t2), &complex_structure_field()))
        .add(&pi_eps().times(&sp.var(t1)))
        .add(&pi_sigma().times(&sp.var(t2)))
}

/// Poisson bivector inverse to `ω_ε = dp₁∧dq₁ + dp₂∧dq₂ + ½(dτ₁∧dτ₁ − dτ₂∧dτ₂)`.
pub fn poisson_eps() -> PolyVector {
    let sp = plane2();
    let (t1, t2) = (Coord::Odd(0), Coord::Odd(1));
    pi_eps()
        .add(&PolyVector::bivector_term(&sp, &sp.constant(half()), t1, t1))
        .sub(&PolyVector::bivector_term(&sp, &sp.constant(half()), t2, t2))
}

/// The six even and four odd quadratic Hamiltonians of the osp(1|2,ℂ) action on 𝕂^{4|2}.
pub fn complex_osp_hamiltonians() -> Vec<GrassmannPoly> {
    let sp = plane2();
    let v = |i: usize| sp.var(Coord::Even(i));
    let (p1, q1, p2, q2) = (v(0), v(1), v(2), v(3));
    let (t1, t2) = (sp.var(Coord::Odd(0)), sp.var(Coord::Odd(1)));
    vec![
        p1.mul(&p1).sub(&q2.mul(&q2)),
        p2.mul(&p2).sub(&q1.mul(&q1)),
        p1.mul(&p2).add(&q1.mul(&q2)),
        p1.mul(&q1).sub(&p2.mul(&q2)),
        p1.mul(&q2),
        q1.mul(&p2),
        p1.mul(&t1).sub(&q2.mul(&t2)),
        p2.mul(&t1).add(&q1.mul(&t2)),
        q1.mul(&t1).sub(&p2.mul(&t2)),
        q2.mul(&t1).add(&p1.mul(&t2)),
    ]
}

/// Named canonical structures of 𝕂^{2|1}, 𝕂^{1|1} or 𝕂^{4|2}.
pub fn canonical_structures(m: usize, k: usize) -> Result<Vec<(String, PolyVector)>, GeometryError> {
    match (m, k) {
        (2, 1) => {
            let mut out = vec![("Lambda".to_string(), canonical_lambda()), ("P".to_string(), canonical_poisson()), ("E".to_string(), euler_field(&plane()))];
            for ((name, _), x) in osp_hamiltonians().into_iter().zip(osp_fields()) {
                out.push((format!("X[{name}]"), x));
            }
            Ok(out)
        }
        (1, 1) => Ok(vec![("D".to_string(), contact_field()), ("E".to_string(), euler_field(&line()))]),
        (4, 2) => Ok(vec![
            ("Lambda_C".to_string(), lambda_c()),
            ("E".to_string(), euler_field(&plane2())),
            ("J".to_string(), complex_structure_field()),
            ("pi_eps".to_string(), pi_eps()),
            ("pi_sigma".to_string(), pi_sigma()),
            ("P_eps".to_string(), poisson_eps()),
        ]),
        _ => Err(GeometryError::UnsupportedDims(m, k)),
    }
}

/// One structure from [`canonical_structures`] by name.
pub fn canonical_structure(m: usize, k: usize, which: &str) -> Result<PolyVector, GeometryError> {
    canonical_structures(m, k)?
        .into_iter()
        .find(|(n, _)| n == which)
        .map(|(_, v)| v)
        .ok_or_else(|| GeometryError::UnknownStructure(which.to_string()))
}

/// Homogeneous lift `F^λ_f = p^λ f(q/p, τ/p)` of a function on 𝕂^{1|1};
/// `lambda2` is 2λ and must be even.
pub fn lift(f: &GrassmannPoly, lambda2: i64) -> Result<GrassmannPoly, GeometryError> {
    if f.n_even != 1 || f.n_odd != 1 {
        return Err(GeometryError::NotOnLine);
    }
    if lambda2 % 2 != 0 {
        return Err(GeometryError::NonIntegralExponent(format!("{lambda2}/2")));
    }
    let lam = lambda2 / 2;
    let mut r = GrassmannPoly::zero(2, 1);
    for (m, c) in &f.terms {
        let a = m.even[0];
        let e = m.odd as i64;
        r.insert(Monomial { even: vec![lam - a - e, a], odd: m.odd }, c.clone());
    }
    Ok(r)
}

/// Inverse of [`lift`] on functions homogeneous of degree λ.
pub fn unlift(f: &GrassmannPoly, lambda2: i64) -> Result<GrassmannPoly, GeometryError> {
    if f.n_even != 2 || f.n_odd != 1 {
        return Err(GeometryError::UnsupportedDims(f.n_even, f.n_odd));
    }
    if lambda2 % 2 != 0 {
        return Err(GeometryError::NonIntegralExponent(format!("{lambda2}/2")));
    }
    let mut r = GrassmannPoly::zero(1, 1);
    for (m, c) in &f.terms {
        if m.even[0] + m.even[1] + m.odd as i64 != lambda2 / 2 {
            return Err(GeometryError::Inhomogeneous);
        }
        r.insert(Monomial { even: vec![m.even[1]], odd: m.odd }, c.clone());
    }
    Ok(r)
}

/// Function on 𝕂^{1|1} of a window basis element of 𝒜𝒦(1): `ε_n ↦ ξxⁿ`, `a_i ↦ x^{i+½}`.
pub fn ak1_line_function(grid: &Grid, pos: usize) -> GrassmannPoly {
    match grid.index_at(pos) {
        (Parity::Even, n) => GrassmannPoly::monomial(1, 1, vec![n], 1, Scalar::one()),
        (Parity::Odd, two_i) => GrassmannPoly::monomial(1, 1, vec![(two_i + 1) / 2], 0, Scalar::one()),
    }
}

/// Function on 𝕂^{1|1} of a window basis element of 𝒦(1): `x_n ↦ ½x^{n+1}`, `ξ_i ↦ ξx^{i+½}`.
pub fn k1_line_function(grid: &Grid, pos: usize) -> GrassmannPoly {
    match grid.index_at(pos) {
        (Parity::Even, n) => GrassmannPoly::monomial(1, 1, vec![n + 1], 0, half()),
        (Parity::Odd, two_i) => GrassmannPoly::monomial(1, 1, vec![(two_i + 1) / 2], 1, Scalar::one()),
    }
}

/// Taylor basis of the 𝒜𝒦(1) window: degree-1 lifts, `ε_n = τ(q/p)ⁿ`, `a_i = p(q/p)^{i+½}`.
pub fn ak1_taylor_basis(n: i64) -> Vec<GrassmannPoly> {
    let g = Grid::symmetric(n);
    (0..g.dim()).map(|k| lift(&ak1_line_function(&g, k), 2).expect("line function")).collect()
}

/// Degree-2 lifts of the 𝒦(1) window: `x_n = ½p²(q/p)^{n+1}`, `ξ_i = τp(q/p)^{i+½}`.
pub fn k1_taylor_basis(n: i64) -> Vec<GrassmannPoly> {
    let g = Grid::symmetric(n);
    (0..g.dim()).map(|k| lift(&k1_line_function(&g, k), 4).expect("line function")).collect()
}

/// Closed-form antibracket on 𝕂^{2|1}:
/// `]F,G[ = ((−1)^{p(F)}/2)(−∂_τF·ℰ(G) + (−1)^{p(F)}ℰ(F)·∂_τG + τ(F_pG_q − F_qG_p))`.
pub fn explicit_antibracket(f: &GrassmannPoly, g: &GrassmannPoly) -> GrassmannPoly {
    let sp = plane();
    let (p, q, t) = (Coord::Even(0), Coord::Even(1), Coord::Odd(0));
    let euler = euler_field(&sp);
    let (fe, fo) = f.split();
    let mut r = sp.zero();
    for (part, s) in [(fe, 1i64), (fo, -1i64)] {
        if part.is_zero() {
            continue;
        }
        let a = sp.partial(&part, t).mul(&euler.apply(g)).scale(&Scalar::from_int(-1));
        let b = euler.apply(&part).mul(&sp.partial(g, t)).scale(&Scalar::from_int(s));
        let c = sp.var(t).mul(&sp.partial(&part, p).mul(&sp.partial(g, q)).sub(&sp.partial(&part, q).mul(&sp.partial(g, p))));
        r = r.add(&a.add(&b).add(&c).scale(&Scalar::from_ratio(s, 2)));
    }
    r
}

/// Outcome of comparing a bracket of functions with a structure table.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BracketCheck {
    pub checked: usize,
    pub skipped: usize,
    /// Basis pairs where the bracket disagrees with the table.
    pub failures: Vec<(usize, usize)>,
}

impl BracketCheck {
    pub fn passed(&self) -> bool {
        self.checked > 0 && self.failures.is_empty()
    }
}

fn combine(terms: &Terms, basis: &[GrassmannPoly], zero: &GrassmannPoly) -> GrassmannPoly {
    terms.iter().fold(zero.clone(), |acc, (k, c)| acc.add(&basis[*k].scale(c)))
}

/// Compares `br(B_i, B_j)` with the table of `alg` on every defined pair.
pub fn check_table_realization(alg: &GradedAlgebra, basis: &[GrassmannPoly], br: impl Fn(&GrassmannPoly, &GrassmannPoly) -> GrassmannPoly) -> BracketCheck {
    let zero = GrassmannPoly::zero(basis[0].n_even, basis[0].n_odd);
    let mut out = BracketCheck::default();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            match alg.mul_basis(i, j) {
                None => out.skipped += 1,
                Some(t) => {
                    out.checked += 1;
                    if br(&basis[i], &basis[j]) != combine(t, basis, &zero) {
                        out.failures.push((i, j));
                    }
                }
            }
        }
    }
    out
}

/// Compares `act(H_h, F_f)` with operator `h` of a windowed action on every defined column.
pub fn check_action_realization(
    ops: &[WindowOp],
    acting: &[GrassmannPoly],
    carrier: &[GrassmannPoly],
    act: impl Fn(&GrassmannPoly, &GrassmannPoly) -> GrassmannPoly,
) -> BracketCheck {
    let zero = GrassmannPoly::zero(carrier[0].n_even, carrier[0].n_odd);
    let mut out = BracketCheck::default();
    for (h, op) in ops.iter().enumerate() {
        for (f, col) in op.cols.iter().enumerate() {
            match col {
                None => out.skipped += 1,
                Some(t) => {
                    out.checked += 1;
                    if act(&acting[h], &carrier[f]) != combine(t, carrier, &zero) {
                        out.failures.push((h, f));
                    }
                }
            }
        }
    }
    out
}

/// Brackets of lifted window bases compared with the algebra tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationReport {
    /// Antibracket of degree-1 lifts against the 𝒜𝒦(1) table, with every a_i rescaled by √2.
    pub antibracket: BracketCheck,
    /// Antibracket against the 𝒜𝒦(1) table on the unscaled Taylor basis.
    pub antibracket_literal: BracketCheck,
    /// Pairs where the closed-form antibracket disagrees with the derived one.
    pub explicit_formula: BracketCheck,
    /// Poisson bracket of degree-2 lifts against the 𝒦(1) table, with every ξ_i rescaled by 1/√2.
    pub poisson: BracketCheck,
    /// Poisson bracket against the 𝒦(1) table on the unscaled basis.
    pub poisson_literal: BracketCheck,
    /// `{H, F}` against the tabulated 𝒦(1)-action on 𝒜𝒦(1), unscaled bases.
    pub action: BracketCheck,
    /// `χ_f(g) = ]F¹_f, F⁰_g[` for window f and g = xᵏ, ξxᵏ.
    pub contraction: BracketCheck,
}

impl RealizationReport {
    pub fn passed(&self) -> bool {
        self.antibracket.passed() && self.explicit_formula.passed() && self.poisson.passed() && self.action.passed() && self.contraction.passed()
    }
}

/// Checks the Taylor-basis realizations of the windows of size `n` over ℚ(√2).
pub fn realize_brackets(n: i64) -> RealizationReport {
    let ak = crate::catalog::ak1(n);
    let k = crate::catalog::k1(n);
    let grid = Grid::symmetric(n);
    let lam = canonical_lambda();
    let pois = canonical_poisson();
    let anti = |f: &GrassmannPoly, g: &GrassmannPoly| bracket_from_bivector(&lam, f, g, BracketKind::Odd);
    let pb = |f: &GrassmannPoly, g: &GrassmannPoly| bracket_from_bivector(&pois, f, g, BracketKind::Even);
    let r2 = Scalar::sqrt(2).expect("2 is not a square");
    let taylor = ak1_taylor_basis(n);
    let scaled: Vec<GrassmannPoly> = taylor.iter().enumerate().map(|(i, f)| if ak.parity(i).is_odd() { f.scale(&r2) } else { f.clone() }).collect();
    let ktaylor = k1_taylor_basis(n);
    let kscaled: Vec<GrassmannPoly> = ktaylor.iter().enumerate().map(|(i, f)| if k.parity(i).is_odd() { f.scale(&r2.inv()) } else { f.clone() }).collect();

    let mut explicit = BracketCheck::default();
    for (i, f) in taylor.iter().enumerate() {
        for (j, g) in taylor.iter().enumerate() {
            explicit.checked += 1;
            if anti(f, g) != explicit_antibracket(f, g) {
                explicit.failures.push((i, j));
            }
        }
    }

    let mut contraction = BracketCheck::default();
    let big = 2 * n;
    let probes: Vec<GrassmannPoly> = (-big..=big)
        .flat_map(|e| [GrassmannPoly::monomial(1, 1, vec![e], 0, Scalar::one()), GrassmannPoly::monomial(1, 1, vec![e], 1, Scalar::one())])
        .collect();
    for i in 0..grid.dim() {
        let f = ak1_line_function(&grid, i);
        let chi = contact_tangent(&f);
        for (j, g) in probes.iter().enumerate() {
            contraction.checked += 1;
            let lhs = lift(&chi.apply(g), 0).expect("line function");
            let rhs = anti(&lift(&f, 2).expect("line function"), &lift(g, 0).expect("line function"));
            if lhs != rhs {
                contraction.failures.push((i, j));
            }
        }
    }

    RealizationReport {
        antibracket: check_table_realization(&ak, &scaled, anti),
        antibracket_literal: check_table_realization(&ak, &taylor, anti),
        explicit_formula: explicit,
        poisson: check_table_realization(&k, &kscaled, pb),
        poisson_literal: check_table_realization(&k, &ktaylor, pb),
        action: check_action_realization(&crate::catalog::k1_action(n), &ktaylor, &taylor, pb),
        contraction,
    }
}

/// Tangent field `χ_f = f·D` on 𝕂^{1|1}.
pub fn contact_tangent(f: &GrassmannPoly) -> PolyVector {
    contact_field().times(f)
}

/// Product on functions of 𝕂^{1|1}:
/// `(α + ξa)(β + ξb) = αβ + ab′ − a′b + ½ξ(αb + βa)`.
pub fn ak1_smooth_product(f: &GrassmannPoly, g: &GrassmannPoly) -> GrassmannPoly {
    let sp = line();
    let xi = Coord::Odd(0);
    let body = |h: &GrassmannPoly| {
        let mut r = sp.zero();
        for (m, c) in &h.terms {
            if m.odd == 0 {
                r.insert(m.clone(), c.clone());
            }
        }
        r
    };
    let (alpha, a) = (body(f), sp.partial(f, xi));
    let (beta, b) = (body(g), sp.partial(g, xi));
    let d = |h: &GrassmannPoly| h.d_even(0);
    alpha
        .mul(&beta)
        .add(&a.mul(&d(&b)))
        .sub(&d(&a).mul(&b))
        .add(&sp.var(xi).mul(&alpha.mul(&b).add(&beta.mul(&a))).scale(&half()))
}

/// Antialgebra product of two functions on 𝕂^{1|1} transported from the
/// antibracket of their degree-1 lifts.
pub fn lifted_product(f: &GrassmannPoly, g: &GrassmannPoly) -> Result<GrassmannPoly, GeometryError> {
    let lam = canonical_lambda();
    unlift(&bracket_from_bivector(&lam, &lift(f, 2)?, &lift(g, 2)?, BracketKind::Odd), 2)
}

/// Checks `[χ_f, χ_g]₊ = χ_{f·g}` on all pairs of the 𝒜𝒦(1) window of size `n`,
/// with `f·g` from [`lifted_product`].
pub fn check_tangent_anticommutator(n: i64) -> BracketCheck {
    let grid = Grid::symmetric(n);
    let mut out = BracketCheck::default();
    for i in 0..grid.dim() {
        for j in 0..grid.dim() {
            let (f, g) = (ak1_line_function(&grid, i), ak1_line_function(&grid, j));
            out.checked += 1;
            let lhs = vf_commutator(&contact_tangent(&f), &contact_tangent(&g), VfSign::Anticommutator);
            let ok = match (lhs, lifted_product(&f, &g)) {
                (Some(l), Ok(fg)) => l == contact_tangent(&fg),
                _ => false,
            };
            if !ok {
                out.failures.push((i, j));
            }
        }
    }
    out
}

/// Carrier `xᵏ` then `ξxᵏ` for `|k| ≤ m` of [`tangent_representation`].
pub fn tangent_carrier(m: i64) -> Vec<GrassmannPoly> {
    let mut out: Vec<GrassmannPoly> = (-m..=m).map(|k| GrassmannPoly::monomial(1, 1, vec![k], 0, Scalar::one())).collect();
    out.extend((-m..=m).map(|k| GrassmannPoly::monomial(1, 1, vec![k], 1, Scalar::one())));
    out
}

/// Coordinates of `f` in a basis of scaled distinct monomials, `None` if it leaves the span.
fn express(f: &GrassmannPoly, basis: &[GrassmannPoly]) -> Option<Terms> {
    let mut out = Vec::new();
    for (m, c) in &f.terms {
        let (k, (_, b)) = basis.iter().enumerate().find_map(|(k, b)| b.terms.iter().next().filter(|(bm, _)| *bm == m).map(|t| (k, t)))?;
        out.push((k, c * &b.inv()));
    }
    out.sort_by_key(|(k, _)| *k);
    Some(out)
}

/// Tangent fields as a windowed representation of the 𝒜𝒦(1) window of size
/// `n` on the functions `xᵏ, ξxᵏ` (`|k| ≤ m`): `a_i ↦ c·x^{i+½}D`, `ε_n ↦ ξxⁿD`.
pub fn tangent_representation(n: i64, m: i64, c: &Scalar) -> Representation {
    let grid = Grid::symmetric(n);
    let carrier = tangent_carrier(m);
    let parities: Vec<Parity> = carrier.iter().map(|f| f.parity().unwrap_or(Parity::Even)).collect();
    let ops = (0..grid.dim())
        .map(|pos| {
            let (par, _) = grid.index_at(pos);
            let f = ak1_line_function(&grid, pos);
            let field = contact_tangent(&if par.is_odd() { f.scale(c) } else { f });
            WindowOp { parity: par, cols: carrier.iter().map(|g| express(&field.apply(g), &carrier)).collect() }
        })
        .collect();
    Representation { carrier: parities, ops }
}

/// Linear odd bivector on Π𝔞* together with the algebra basis it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearBivector {
    pub bivector: PolyVector,
    pub provenance: String,
    /// Basis labels and parities of the algebra, in algebra order.
    pub basis: Vec<BasisElem>,
    /// Coordinate dual to each algebra basis element.
    pub coords: Vec<Coord>,
    pub field: Field,
}

impl LinearBivector {
    /// Wraps a linear bivector; coordinate `u` stands for a basis element of parity `p(u) + 1`.
    pub fn from_bivector(bivector: PolyVector, provenance: impl Into<String>) -> LinearBivector {
        let sp = &bivector.space;
        let mut basis = Vec::new();
        let mut coords = Vec::new();
        for k in 0..sp.k() {
            basis.push(BasisElem::new(sp.odd[k].clone(), Parity::Even));
            coords.push(Coord::Odd(k));
        }
        for i in 0..sp.m() {
            basis.push(BasisElem::new(sp.even[i].clone(), Parity::Odd));
            coords.push(Coord::Even(i));
        }
        let field = bivector.poly.terms.values().find_map(|c| c.tag()).map_or(Field::Q, |d| Field::sqrt(d).expect("tagged scalar"));
        LinearBivector { bivector, provenance: provenance.into(), basis, coords, field }
    }

    fn linear(&self, v: &[Scalar]) -> GrassmannPoly {
        let sp = &self.bivector.space;
        v.iter().zip(&self.coords).fold(sp.zero(), |acc, (c, u)| acc.add(&sp.var(*u).scale(c)))
    }

    /// Linear vector field `Σ_u ℓ(φ(e_u)) ∂_u` of a linear map `φ` of the algebra.
    pub fn linear_field(&self, phi: &QMatrix) -> PolyVector {
        let comps: Vec<(Coord, GrassmannPoly)> = (0..self.basis.len()).map(|u| (self.coords[u], self.linear(&phi.column(u)))).collect();
        PolyVector::vector_field(&self.bivector.space, &comps)
    }

    /// Linear field of a homogeneous derivation `D`:
    /// `Σ_u (−1)^{p(D)p(e_u)} ℓ(D e_u) ∂_u`.
    pub fn derivation_field(&self, d: &SuperLinearMap) -> PolyVector {
        let mut m = d.matrix.clone();
        if d.parity.is_odd() {
            for (u, b) in self.basis.iter().enumerate() {
                if b.parity.is_odd() {
                    for r in 0..m.rows {
                        let v = -m.get(r, u).clone();
                        m.set(r, u, v);
                    }
                }
            }
        }
        self.linear_field(&m)
    }
}

/// Canonical odd bivector `Λ_𝔞 = Σᵢ ∂_{τᵢ}∧Aᵢ + τᵢπᵢ` of a total antialgebra.
/// `τᵢ` is dual to the i-th even basis element, `Aᵢ` is the linear field of
/// `ad` on 𝔞₀ and `2ad` on 𝔞₁, and `πᵢ = Σ_{k<l} 2ωᵢ(a_k, a_l) ∂_k∧∂_l`.
pub fn lambda_of_algebra(a: &GradedAlgebra) -> Result<LinearBivector, GeometryError> {
    a.require_total()?;
    let evens = a.even_indices();
    let odds = a.odd_indices();
    let odd_names: Vec<String> = evens.iter().map(|&i| format!("t_{}", a.basis[i].label)).collect();
    let even_names: Vec<String> = odds.iter().map(|&i| format!("x_{}", a.basis[i].label)).collect();
    let sp = Space { even: even_names, odd: odd_names };
    let mut coords = vec![Coord::Even(0); a.dim()];
    for (k, &i) in evens.iter().enumerate() {
        coords[i] = Coord::Odd(k);
    }
    for (k, &i) in odds.iter().enumerate() {
        coords[i] = Coord::Even(k);
    }
    let mut lb = LinearBivector { bivector: PolyVector::zero(&sp), provenance: format!("lambda({})", a.name), basis: a.basis.clone(), coords, field: a.field };
    let mut total = PolyVector::zero(&sp);
    for (t, &i) in evens.iter().enumerate() {
        let mut ad = a.left_mult(&a.unit_vector(i));
        for &u in &odds {
            for r in 0..a.dim() {
                let v = ad.get(r, u) * &Scalar::from_int(2);
                ad.set(r, u, v);
            }
        }
        let tau = Coord::Odd(t);
        total = total.add(&PolyVector::wedge(&PolyVector::partial(&sp, tau), &lb.linear_field(&ad)));
        let mut pi = PolyVector::zero(&sp);
        for (x, &k) in odds.iter().enumerate() {
            for (y, &l) in odds.iter().enumerate().skip(x + 1) {
                let w = a.mul_basis(k, l).and_then(|t| t.iter().find(|(e, _)| *e == i).map(|(_, c)| c.clone()));
                if let Some(w) = w {
                    pi = pi.add(&PolyVector::bivector_term(&sp, &sp.constant(&w * &Scalar::from_int(2)), Coord::Even(x), Coord::Even(y)));
                }
            }
        }
        total = total.add(&pi.times(&sp.var(tau)));
    }
    lb.bivector = total;
    Ok(lb)
}

/// Antialgebra of linear functions under the antibracket of a linear bivector.
pub fn recover_algebra(lb: &LinearBivector) -> Result<GradedAlgebra, GeometryError> {
    let sp = &lb.bivector.space;
    let index: BTreeMap<Coord, usize> = lb.coords.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut b = Builder::new(format!("rec({})", lb.provenance), lb.basis.clone()).field(lb.field);
    let n = lb.basis.len();
    for u in 0..n {
        for v in u..n {
            let r = bracket_from_bivector(&lb.bivector, &sp.var(lb.coords[u]), &sp.var(lb.coords[v]), BracketKind::Odd);
            let mut terms = Vec::new();
            for (m, c) in &r.terms {
                let ones: Vec<usize> = m.even.iter().enumerate().filter(|(_, e)| **e != 0).map(|(i, _)| i).collect();
                let coord = match (ones.as_slice(), m.odd.count_ones()) {
                    ([i], 0) if m.even[*i] == 1 => Coord::Even(*i),
                    ([], 1) => Coord::Odd(m.odd.trailing_zeros() as usize),
                    _ => return Err(GeometryError::NotLinear),
                };
                terms.push((index[&coord], c.clone()));
            }
            b.set(u, v, terms);
        }
    }
    Ok(b.build()?)
}

impl PolyVector {
    /// Rewrites a polyvector given in primed linear coordinates
    /// `y'_v = Σ_u m[u][v] y_u` (indices in [`Space::coords`] order) in the
    /// unprimed ones; the derivations transform contragrediently.
    pub fn linear_substitution(&self, m: &QMatrix) -> Result<PolyVector, GeometryError> {
        let sp = &self.space;
        let coords = sp.coords();
        let minv = m.inverse().ok_or(GeometryError::NotLinear)?;
        let (ne, no) = sp.ext_dims();
        let img_coord = |v: usize| coords.iter().enumerate().fold(GrassmannPoly::zero(ne, no), |acc, (u, c)| acc.add(&sp.embed(&sp.var(*c)).scale(m.get(u, v))));
        let img_theta = |v: usize| coords.iter().enumerate().fold(GrassmannPoly::zero(ne, no), |acc, (u, c)| acc.add(&sp.theta(*c).scale(minv.get(v, u))));
        let pos = |c: Coord| coords.iter().position(|x| *x == c).expect("coordinate");
        let (mm, kk) = (sp.m(), sp.k());
        let mut out = GrassmannPoly::zero(ne, no);
        for (mono, c) in &self.poly.terms {
            let mut term = GrassmannPoly::constant(ne, no, c.clone());
            for (e, &exp) in mono.even.iter().enumerate() {
                if exp < 0 {
                    return Err(GeometryError::NegativeExponent);
                }
                let img = if e < mm { img_coord(pos(Coord::Even(e))) } else { img_theta(pos(Coord::Odd(e - mm))) };
                for _ in 0..exp {
                    term = term.mul(&img);
                }
            }
            for o in 0..no {
                if mono.odd >> o & 1 == 1 {
                    let img = if o < kk { img_coord(pos(Coord::Odd(o))) } else { img_theta(pos(Coord::Even(o - kk))) };
                    term = term.mul(&img);
                }
            }
            out = out.add(&term);
        }
        Ok(PolyVector { space: sp.clone(), poly: out })
    }
}

/// Runs the realization and invariance battery on windows of size `n`;
/// returns one named verdict per check.
pub fn self_test(n: i64) -> Vec<(&'static str, bool)> {
    let lam = canonical_lambda();
    let pois = canonical_poisson();
    let sp = plane();
    let unique = |parity: Parity, target: &PolyVector| {
        let sol = invariant_bivector_space(&osp_fields(), &sp, parity, 1);
        sol.len() == 1 && target.poly.terms.iter().next().is_some_and(|(m, c)| sol[0].poly.terms.get(m).is_some_and(|d| sol[0].scale(&(c * &d.inv())) == *target))
    };
    let r = realize_brackets(n);
    let r2 = Scalar::sqrt(2).expect("2 is not a square");
    let ak = crate::catalog::ak1(n);
    let tangent = crate::reps::check_representation(&ak, &tangent_representation(n, n + 4, &r2)).is_ok_and(|rep| rep.passed());
    let k1_fields = k1_taylor_basis(n).iter().all(|h| {
        let x = hamiltonian_field(&pois, h);
        lie_derivative(&x, &lam).is_zero() && vf_commutator(&euler_field(&sp), &x, VfSign::SuperCommutator).is_some_and(|c| c.is_zero())
    });
    let round_trip = crate::catalog::total_antialgebras().iter().all(|a| {
        lambda_of_algebra(a).and_then(|lb| recover_algebra(&lb)).is_ok_and(|b| (0..a.dim()).all(|i| (0..a.dim()).all(|j| a.mul_basis(i, j) == b.mul_basis(i, j))))
    });
    let k3 = lambda_of_algebra(&crate::catalog::k3()).is_ok_and(|lb| lb.bivector.poly == lam.poly);
    vec![
        ("osp_preserves_lambda", osp_fields().iter().all(|x| lie_derivative(x, &lam).is_zero())),
        ("osp_preserves_poisson", osp_fields().iter().all(|x| lie_derivative(x, &pois).is_zero())),
        ("odd_invariant_unique", unique(Parity::Odd, &lam)),
        ("even_invariant_unique", unique(Parity::Even, &pois)),
        ("antibracket_table", r.antibracket.passed()),
        ("explicit_antibracket", r.explicit_formula.passed()),
        ("poisson_table", r.poisson.passed()),
        ("k1_action", r.action.passed()),
        ("contraction", r.contraction.passed()),
        ("k1_fields_preserve_lambda", k1_fields),
        ("tangent_representation", tangent),
        ("tangent_anticommutator", check_tangent_anticommutator(n).passed()),
        ("lambda_of_k3", k3),
        ("lambda_round_trip", round_trip),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_linear_map, MapKind};
    use crate::axioms::check_antialgebra;
    use crate::bridge::compute_der;
    use crate::catalog::{ak1, dual_numbers, k3, k3c, total_antialgebras};
    use crate::reps::check_representation;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    fn pqt() -> (Space, GrassmannPoly, GrassmannPoly, GrassmannPoly) {
        let sp = plane();
        let (p, qq, t) = (sp.var(Coord::Even(0)), sp.var(Coord::Even(1)), sp.var(Coord::Odd(0)));
        (sp, p, qq, t)
    }

    fn random_poly(sp: &Space, rng: &mut ChaCha8Rng, laurent: bool) -> GrassmannPoly {
        let mut f = sp.zero();
        for _ in 0..rng.gen_range(1..4) {
            let lo = if laurent { -2 } else { 0 };
            let even: Vec<i64> = (0..sp.m()).map(|_| rng.gen_range(lo..3)).collect();
            let odd: Vec<usize> = (0..sp.k()).filter(|_| rng.gen_bool(0.5)).collect();
            f = f.add(&sp.mono(Scalar::from_int(rng.gen_range(-3..4)), &even, &odd));
        }
        f
    }

    fn same_table(a: &GradedAlgebra, b: &GradedAlgebra) -> bool {
        a.dim() == b.dim() && (0..a.dim()).all(|i| (0..a.dim()).all(|j| a.mul_basis(i, j) == b.mul_basis(i, j)))
    }

    #[test]
    fn polynomial_arithmetic() {
        let sp = plane2();
        let (t1, t2) = (sp.var(Coord::Odd(0)), sp.var(Coord::Odd(1)));
        assert!(t1.mul(&t2).add(&t2.mul(&t1)).is_zero());
        assert!(t1.mul(&t1).is_zero());
        let (sp, p, qq, t) = pqt();
        assert_eq!(sp.partial(&t.mul(&p), Coord::Odd(0)), p);
        let lhs = p.add(&t.mul(&qq)).mul(&p.sub(&t.mul(&qq)));
        assert_eq!(lhs, p.mul(&p));
    }

    #[test]
    fn order_one_tables() {
        let (_, p, qq, t) = pqt();
        let lam = canonical_lambda();
        let pois = canonical_poisson();
        let ob = |f: &GrassmannPoly, g: &GrassmannPoly| bracket_from_bivector(&lam, f, g, BracketKind::Odd);
        let eb = |f: &GrassmannPoly, g: &GrassmannPoly| bracket_from_bivector(&pois, f, g, BracketKind::Even);
        assert_eq!(ob(&p, &qq), t.scale(&q(1, 2)));
        assert_eq!(ob(&qq, &p), t.scale(&q(-1, 2)));
        assert_eq!(ob(&p, &t), p.scale(&q(1, 2)));
        assert_eq!(ob(&t, &p), p.scale(&q(1, 2)));
        assert_eq!(ob(&qq, &t), qq.scale(&q(1, 2)));
        assert_eq!(ob(&t, &t), t);
        assert!(ob(&p, &p).is_zero());
        let one = plane().constant(Scalar::one());
        assert_eq!(eb(&p, &qq), one);
        assert_eq!(eb(&qq, &p), one.scale(&q(-1, 1)));
        assert_eq!(eb(&t, &t), one);
        assert!(eb(&p, &t).is_zero());
    }

    #[test]
    fn derived_brackets_match_closed_forms() {
        let sp = plane();
        let lam = canonical_lambda();
        let pois = canonical_poisson();
        let (p, qq, t) = (Coord::Even(0), Coord::Even(1), Coord::Odd(0));
        // {F,G} = F_pG_q − F_qG_p − (−1)^{p(F)}∂_τF∂_τG, term by parity of F
        let poisson = |f: &GrassmannPoly, g: &GrassmannPoly| {
            let (fe, fo) = f.split();
            let mut r = sp.zero();
            for (part, s) in [(fe, -1), (fo, 1)] {
                let main = sp.partial(&part, p).mul(&sp.partial(g, qq)).sub(&sp.partial(&part, qq).mul(&sp.partial(g, p)));
                r = r.add(&main).add(&sp.partial(&part, t).mul(&sp.partial(g, t)).scale(&Scalar::from_int(s)));
            }
            r
        };
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let f = random_poly(&sp, &mut rng, true);
            let g = random_poly(&sp, &mut rng, true);
            assert_eq!(bracket_from_bivector(&lam, &f, &g, BracketKind::Odd), explicit_antibracket(&f, &g), "{f:?} {g:?}");
            assert_eq!(bracket_from_bivector(&pois, &f, &g, BracketKind::Even), poisson(&f, &g), "{f:?} {g:?}");
        }
    }

    #[test]
    fn hamiltonian_fields_act_by_the_bracket() {
        let sp = plane();
        let pois = canonical_poisson();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let h = random_poly(&sp, &mut rng, false);
            let (he, ho) = h.split();
            let f = random_poly(&sp, &mut rng, true);
            for part in [he, ho] {
                assert_eq!(hamiltonian_field(&pois, &part).apply(&f), bracket_from_bivector(&pois, &part, &f, BracketKind::Even));
            }
        }
        let (_, p, qq, t) = pqt();
        let x = hamiltonian_field(&pois, &t.mul(&p));
        assert_eq!(x, PolyVector::vector_field(&sp, &[(Coord::Even(1), t.clone()), (Coord::Odd(0), p.clone())]));
        let x = hamiltonian_field(&pois, &t.mul(&qq));
        assert_eq!(x, PolyVector::vector_field(&sp, &[(Coord::Even(0), t.scale(&q(-1, 1))), (Coord::Odd(0), qq.clone())]));
    }

    #[test]
    fn vector_field_commutators() {
        let (sp, p, _, t) = pqt();
        let dp = PolyVector::partial(&sp, Coord::Even(0));
        let pdq = PolyVector::vector_field(&sp, &[(Coord::Even(1), p.clone())]);
        let dq = PolyVector::partial(&sp, Coord::Even(1));
        assert_eq!(vf_commutator(&dp, &pdq, VfSign::SuperCommutator), Some(dq));
        let x = PolyVector::vector_field(&sp, &[(Coord::Even(0), t)]);
        assert!(vf_commutator(&x, &x, VfSign::SuperCommutator).unwrap().is_zero());
    }

    #[test]
    fn lie_derivative_extends_the_commutator() {
        let sp = plane();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let field = |rng: &mut ChaCha8Rng| {
            let comps: Vec<(Coord, GrassmannPoly)> = sp.coords().into_iter().map(|u| (u, random_poly(&sp, rng, false))).collect();
            let x = PolyVector::vector_field(&sp, &comps);
            // keep one parity
            let (e, _) = x.poly.split();
            PolyVector { space: sp.clone(), poly: e }
        };
        for _ in 0..10 {
            let x = field(&mut rng);
            let y = field(&mut rng);
            let f = random_poly(&sp, &mut rng, true);
            assert_eq!(lie_derivative(&x, &PolyVector::function(&sp, &f)).as_function(), x.apply(&f));
            if let (Some(_), Some(_)) = (x.parity(), y.parity()) {
                assert_eq!(Some(lie_derivative(&x, &y)), vf_commutator(&x, &y, VfSign::SuperCommutator));
            }
        }
        let e = PolyVector::vector_field(&sp, &[(Coord::Even(0), sp.var(Coord::Even(0))), (Coord::Even(1), sp.var(Coord::Even(1)))]);
        let pq = PolyVector::bivector_term(&sp, &sp.constant(Scalar::one()), Coord::Even(0), Coord::Even(1));
        assert_eq!(lie_derivative(&e, &pq), pq.scale(&q(-2, 1)));
    }

    #[test]
    fn osp_preserves_both_bivectors() {
        let (lam, pois) = (canonical_lambda(), canonical_poisson());
        for x in osp_fields() {
            assert!(lie_derivative(&x, &lam).is_zero());
            assert!(lie_derivative(&x, &pois).is_zero());
        }
        // the even generators are 2p∂_q, q∂_q − p∂_p, −2q∂_p up to the order of the Hamiltonians
        let sp = plane();
        let xs = osp_fields();
        assert_eq!(xs[0], PolyVector::vector_field(&sp, &[(Coord::Even(1), sp.var(Coord::Even(0)).scale(&q(2, 1)))]));
        assert_eq!(xs[2], PolyVector::vector_field(&sp, &[(Coord::Even(0), sp.var(Coord::Even(1)).scale(&q(-2, 1)))]));
    }

    #[test]
    fn invariant_bivectors_are_unique() {
        let sp = plane();
        let odd = invariant_bivector_space(&osp_fields(), &sp, Parity::Odd, 1);
        assert_eq!(odd.len(), 1);
        let lam = canonical_lambda();
        let c = lam.poly.terms.iter().next().map(|(m, c)| c * &odd[0].poly.terms[m].inv()).unwrap();
        assert_eq!(odd[0].scale(&c), lam);
        let even = invariant_bivector_space(&osp_fields(), &sp, Parity::Even, 1);
        assert_eq!(even.len(), 1);
        let pois = canonical_poisson();
        let c = pois.poly.terms.iter().next().map(|(m, c)| c * &even[0].poly.terms[m].inv()).unwrap();
        assert_eq!(even[0].scale(&c), pois);
        assert!(invariant_bivector_space(&osp_fields()[..1], &sp, Parity::Odd, 1).len() > 1);
        // every linear-coefficient bivector has ℰ-weight −1
        assert!(invariant_bivector_space(&[euler_field(&sp)], &sp, Parity::Odd, 1).is_empty());
    }

    #[test]
    fn canonical_structure_shapes() {
        let d = canonical_structure(1, 1, "D").unwrap();
        let sp = line();
        assert_eq!(d.components(), vec![(Coord::Even(0), sp.var(Coord::Odd(0)).scale(&q(1, 2))), (Coord::Odd(0), sp.constant(q(1, 2)))]);
        let e = canonical_structure(2, 1, "E").unwrap();
        assert_eq!(e.components().len(), 3);
        assert_eq!(e.display(), "1/1*p*d/dp + 1/1*q*d/dq + 1/1*tau*d/dtau");
        let lam = canonical_structure(2, 1, "Lambda").unwrap();
        assert_eq!(lam.degree(), Some(2));
        assert_eq!(lam.parity(), Some(Parity::Odd));
        assert_eq!(canonical_structure(2, 1, "P").unwrap().parity(), Some(Parity::Even));
        assert_eq!(canonical_structures(3, 1), Err(GeometryError::UnsupportedDims(3, 1)));
        assert!(matches!(canonical_structure(2, 1, "nope"), Err(GeometryError::UnknownStructure(_))));
        // D² = ¼∂_x
        let x = sp.var(Coord::Even(0));
        let f = x.mul(&x).mul(&x).add(&sp.var(Coord::Odd(0)).mul(&x));
        assert_eq!(d.apply(&d.apply(&f)), sp.partial(&f, Coord::Even(0)).scale(&q(1, 4)));
    }

    #[test]
    fn lifts_are_homogeneous() {
        let sp = line();
        let one = sp.constant(Scalar::one());
        let (_, p, qq, t) = pqt();
        assert_eq!(lift(&one, 2).unwrap(), p);
        assert!(matches!(lift(&one, 1), Err(GeometryError::NonIntegralExponent(_))));
        assert_eq!(lift(&p, 2), Err(GeometryError::NotOnLine));
        let e = euler_field(&plane());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for lambda in -2..3 {
            let f = random_poly(&sp, &mut rng, true);
            let big = lift(&f, 2 * lambda).unwrap();
            assert_eq!(e.apply(&big), big.scale(&Scalar::from_int(lambda)));
            assert_eq!(unlift(&big, 2 * lambda).unwrap(), f);
        }
        assert_eq!(unlift(&p.add(&p.mul(&qq)), 2), Err(GeometryError::Inhomogeneous));
        // Taylor basis of the window N = 1: ε_0 = τ, ε_1 = τq/p, a_{1/2} = q, x_0 = ½pq, ξ_{1/2} = τq
        let ak = ak1_taylor_basis(1);
        let g = Grid::symmetric(1);
        assert_eq!(ak[g.even_idx(0).unwrap()], t);
        assert_eq!(ak[g.even_idx(1).unwrap()], plane().mono(Scalar::one(), &[-1, 1], &[0]));
        assert_eq!(ak[g.odd_idx(1).unwrap()], qq);
        let kb = k1_taylor_basis(1);
        assert_eq!(kb[g.even_idx(0).unwrap()], p.mul(&qq).scale(&q(1, 2)));
        assert_eq!(kb[g.odd_idx(1).unwrap()], t.mul(&qq));
    }

    #[test]
    fn window_realizations() {
        let r = realize_brackets(2);
        assert!(r.passed(), "{r:?}");
        assert!(!r.antibracket_literal.passed());
        assert!(!r.poisson_literal.passed());
        assert!(r.action.skipped > 0 && r.contraction.checked > 0);
    }

    #[test]
    fn lifted_k1_fields_preserve_lambda() {
        let lam = canonical_lambda();
        let pois = canonical_poisson();
        for h in k1_taylor_basis(2) {
            let x = hamiltonian_field(&pois, &h);
            assert!(lie_derivative(&x, &lam).is_zero());
            assert!(vf_commutator(&euler_field(&plane()), &x, VfSign::SuperCommutator).unwrap().is_zero());
        }
    }

    #[test]
    fn odd_hamiltonian_identity() {
        // L_{X_{τH₁}}Λ = X_{H₁}∧E + H₁P₀ − X_{τK}∧∂_τ with K = E(H₁) − H₁
        let (sp, _, _, t) = pqt();
        let lam = canonical_lambda();
        let pois = canonical_poisson();
        let p0 = PolyVector::bivector_term(&sp, &sp.constant(Scalar::one()), Coord::Even(0), Coord::Even(1));
        let e = PolyVector::vector_field(&sp, &[(Coord::Even(0), sp.var(Coord::Even(0))), (Coord::Even(1), sp.var(Coord::Even(1)))]);
        assert!(PolyVector::wedge(&p0, &e).is_zero());
        let dt = PolyVector::partial(&sp, Coord::Odd(0));
        for a in 0..4 {
            for b in 0..(4 - a) {
                let h1 = sp.mono(Scalar::one(), &[a, b], &[]);
                let lhs = lie_derivative(&hamiltonian_field(&pois, &t.mul(&h1)), &lam);
                let k = e.apply(&h1).sub(&h1);
                let rhs = PolyVector::wedge(&hamiltonian_field(&pois, &h1), &e)
                    .add(&p0.times(&h1))
                    .sub(&PolyVector::wedge(&hamiltonian_field(&pois, &t.mul(&k)), &dt));
                assert_eq!(lhs, rhs, "H1 = p^{a} q^{b}");
                assert_eq!(lhs.is_zero(), a + b == 1);
            }
        }
    }

    #[test]
    fn tangent_fields_represent_the_window() {
        let a = ak1(2);
        let r2 = Scalar::sqrt(2).unwrap();
        let good = check_representation(&a, &tangent_representation(2, 6, &r2)).unwrap();
        assert!(good.passed() && good.checked > 0);
        let literal = check_representation(&a, &tangent_representation(2, 6, &Scalar::one())).unwrap();
        assert!(!literal.passed());
        assert!(check_tangent_anticommutator(2).passed());
    }

    #[test]
    fn smooth_product_matches_table() {
        let sp = line();
        let (x, xi) = (sp.var(Coord::Even(0)), sp.var(Coord::Odd(0)));
        let one = sp.constant(Scalar::one());
        assert_eq!(ak1_smooth_product(&one, &xi), xi.scale(&q(1, 2)));
        assert_eq!(ak1_smooth_product(&x, &x.mul(&x)), x.mul(&x).mul(&x));
        // odd parts xˢ, xᵗ give (t − s)x^{s+t−1}
        let (s, t) = (sp.mono(Scalar::one(), &[2], &[0]), sp.mono(Scalar::one(), &[-1], &[0]));
        assert_eq!(ak1_smooth_product(&s, &t), sp.mono(Scalar::from_int(-3), &[0], &[]));
        let a = ak1(2);
        let g = Grid::symmetric(2);
        let basis: Vec<GrassmannPoly> = (0..g.dim())
            .map(|pos| match g.index_at(pos) {
                (Parity::Even, n) => GrassmannPoly::monomial(1, 1, vec![n], 0, Scalar::one()),
                (Parity::Odd, two_i) => GrassmannPoly::monomial(1, 1, vec![(two_i + 1) / 2], 1, Scalar::one()),
            })
            .collect();
        assert!(check_table_realization(&a, &basis, ak1_smooth_product).passed());
    }

    #[test]
    fn lambda_of_k3_is_canonical() {
        let lb = lambda_of_algebra(&k3()).unwrap();
        assert_eq!(lb.bivector.poly, canonical_lambda().poly);
        assert!(lambda_of_algebra(&ak1(1)).is_err());
    }

    #[test]
    fn self_test_battery_passes() {
        for (name, ok) in self_test(2) {
            assert!(ok, "{name}");
        }
    }

    #[test]
    fn lambda_round_trip() {
        for a in total_antialgebras() {
            let lb = lambda_of_algebra(&a).unwrap();
            assert!(lb.bivector.terms().iter().all(|t| t.even.iter().sum::<i64>() + t.odd.len() as i64 <= 1));
            let rec = recover_algebra(&lb).unwrap();
            assert!(same_table(&a, &rec), "{}", a.name);
        }
    }

    #[test]
    fn commutative_lambda_from_structure_constants() {
        let a = dual_numbers();
        let lb = lambda_of_algebra(&a).unwrap();
        let sp = lb.bivector.space.clone();
        let mut want = PolyVector::zero(&sp);
        for i in 0..a.dim() {
            for u in 0..a.dim() {
                for (k, c) in a.mul_basis(i, u).unwrap() {
                    want = want.add(&PolyVector::bivector_term(&sp, &sp.var(Coord::Odd(*k)).scale(c), Coord::Odd(i), Coord::Odd(u)));
                }
            }
        }
        assert_eq!(lb.bivector, want);
    }

    #[test]
    fn lambda_is_basis_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut done = 0;
        for a in total_antialgebras().into_iter().filter(|a| !a.even_indices().is_empty()) {
            let lb = lambda_of_algebra(&a).unwrap();
            let evens = a.even_indices();
            for _ in 0..10 {
                let mut p = QMatrix::identity(a.dim());
                for &i in &evens {
                    for &j in &evens {
                        p.set(i, j, Scalar::from_int(rng.gen_range(-2..3)));
                    }
                }
                let Some(b) = a.change_basis(&p).ok() else { continue };
                let lb2 = lambda_of_algebra(&b).unwrap();
                // y'_j ↔ f_j = Σ_i P_ij e_i
                let coords = lb.bivector.space.coords();
                let pos = |c: Coord| coords.iter().position(|x| *x == c).unwrap();
                let mut m = QMatrix::zeros(a.dim(), a.dim());
                for j in 0..a.dim() {
                    for i in 0..a.dim() {
                        m.set(pos(lb.coords[i]), pos(lb2.coords[j]), p.get(i, j).clone());
                    }
                }
                let moved = lb2.bivector.linear_substitution(&m).unwrap();
                assert_eq!(moved.poly, lb.bivector.poly, "{}", a.name);
                done += 1;
            }
        }
        assert!(done >= 10);
    }

    #[test]
    fn derivations_preserve_lambda() {
        for a in total_antialgebras() {
            let lb = lambda_of_algebra(&a).unwrap();
            for d in compute_der(&a).unwrap().ops {
                assert!(lie_derivative(&lb.derivation_field(&d), &lb.bivector).is_zero(), "{}", a.name);
            }
        }
    }

    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for k in 0..n {
                let mut r = p.clone();
                r.insert(k, n - 1);
                out.push(r);
            }
        }
        out
    }

    #[test]
    fn complex_lambda() {
        let lc = lambda_c();
        let pe = poisson_eps();
        for h in complex_osp_hamiltonians() {
            assert!(lie_derivative(&hamiltonian_field(&pe, &h), &lc).is_zero());
        }
        let lb = LinearBivector::from_bivector(lc.clone(), "Lambda_C");
        let rec = recover_algebra(&lb).unwrap();
        assert!(check_antialgebra(&rec).clean());
        let der = compute_der(&rec).unwrap();
        assert_eq!(der.ops.len(), 10);
        for d in &der.ops {
            assert!(lie_derivative(&lb.derivation_field(d), &lc).is_zero());
        }
        // signed-permutation isomorphism from K₃ ⊗ ℚ(i), then transport of its Λ
        let a = k3c();
        let (ea, oa, eb, ob) = (a.even_indices(), a.odd_indices(), rec.even_indices(), rec.odd_indices());
        let mut iso = None;
        'search: for pe in perms(2) {
            for se in 0..4u32 {
                for po in perms(4) {
                    for so in 0..16u32 {
                        let mut m = QMatrix::zeros(6, 6);
                        let sign = |bits: u32, k: usize| Scalar::from_int(if bits >> k & 1 == 1 { -1 } else { 1 });
                        for k in 0..2 {
                            m.set(eb[pe[k]], ea[k], sign(se, k));
                        }
                        for k in 0..4 {
                            m.set(ob[po[k]], oa[k], sign(so, k));
                        }
                        let f = SuperLinearMap::new(Parity::Even, m.clone());
                        if check_linear_map(&f, &a, &rec, MapKind::Homomorphism).unwrap().passed() {
                            iso = Some(m);
                            break 'search;
                        }
                    }
                }
            }
        }
        let phi = iso.expect("isomorphic to K3 over Q(i)");
        let la = lambda_of_algebra(&a).unwrap();
        let (ca, cb) = (la.bivector.space.coords(), lc.space.coords());
        let mut m = QMatrix::zeros(6, 6);
        for i in 0..6 {
            for j in 0..6 {
                let v = phi.get(j, i).clone();
                if !v.is_zero() {
                    m.set(cb.iter().position(|c| *c == lb.coords[j]).unwrap(), ca.iter().position(|c| *c == la.coords[i]).unwrap(), v);
                }
            }
        }
        assert_eq!(la.bivector.linear_substitution(&m).unwrap().poly, lc.poly);
    }
}
