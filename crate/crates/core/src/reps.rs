//! Representations (anticommutator homomorphisms with commuting even
//! images), their extension to 𝔤_𝔞, Casimir elements, tensor densities and
//! modules via semidirect products.
//!
//! Operators are [`WindowOp`]s so the same code handles truncated carriers:
//! an identity instance is counted only when every composition it needs stays
//! inside the carrier window, otherwise it is skipped.

use thiserror::Error;

use crate::algebra::{koszul, AlgebraError, BasisElem, Builder, GradedAlgebra, Parity, PairCheck, Terms, WindowOp};
use crate::axioms::{check_antialgebra, AxiomReport};
use crate::bridge::BridgeResult;
use crate::catalog::Grid;
use crate::linalg::{Matrix, QMatrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error("expected {expected} operators, got {got}")]
    OperatorCount { expected: usize, got: usize },
    #[error("operator {0} has the wrong size or parity")]
    BadOperator(usize),
    #[error("input is not a representation: {0}")]
    NotARepresentation(String),
    #[error("no invariant form")]
    NoInvariantForm,
    #[error("every invariant form is degenerate")]
    DegenerateForm,
    #[error("algebra is not {0}")]
    WrongAlgebra(&'static str),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Operators χ on a graded carrier, one per algebra basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    pub carrier: Vec<Parity>,
    pub ops: Vec<WindowOp>,
}

impl Representation {
    pub fn zero(alg: &GradedAlgebra, carrier: Vec<Parity>) -> Representation {
        let n = carrier.len();
        Representation { ops: alg.parities().into_iter().map(|p| WindowOp::zero(p, n)).collect(), carrier }
    }

    /// Total representation from dense matrices.
    pub fn from_matrices(alg: &GradedAlgebra, carrier: Vec<Parity>, mats: &[QMatrix]) -> Representation {
        let ops = mats.iter().zip(alg.parities()).map(|(m, p)| WindowOp::from_matrix(p, m)).collect();
        Representation { carrier, ops }
    }

    fn validate(&self, alg: &GradedAlgebra) -> Result<(), RepError> {
        if self.ops.len() != alg.dim() {
            return Err(RepError::OperatorCount { expected: alg.dim(), got: self.ops.len() });
        }
        let n = self.carrier.len();
        for (i, op) in self.ops.iter().enumerate() {
            if op.dim() != n || op.parity != alg.parity(i) {
                return Err(RepError::BadOperator(i));
            }
            for (j, col) in op.cols.iter().enumerate() {
                for (k, c) in col.iter().flatten() {
                    if *k >= n || (!c.is_zero() && self.carrier[*k] != self.carrier[j].add(op.parity)) {
                        return Err(RepError::BadOperator(i));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `a ∘ b`; a column is defined when every step stays in the window.
pub fn op_compose(a: &WindowOp, b: &WindowOp) -> WindowOp {
    let n = b.dim();
    let cols = b
        .cols
        .iter()
        .map(|col| {
            let v = crate::algebra::dense(col.as_ref()?, n);
            a.apply(&v).map(|w| crate::algebra::sparse(&w))
        })
        .collect();
    WindowOp { parity: a.parity.add(b.parity), cols }
}

/// `Σ c_k ops_k`, defined where every contributing operator is.
pub fn op_combination(coeffs: &[Scalar], ops: &[WindowOp], parity: Parity, dim: usize) -> WindowOp {
    let mut cols: Vec<Option<Vec<Scalar>>> = vec![Some(vec![Scalar::zero(); dim]); dim];
    for (c, op) in coeffs.iter().zip(ops) {
        if c.is_zero() {
            continue;
        }
        for (j, col) in cols.iter_mut().enumerate() {
            let Some(acc) = col.as_mut() else { continue };
            match &op.cols[j] {
                None => *col = None,
                Some(t) => {
                    for (k, x) in t {
                        acc[*k] = &acc[*k] + &(c * x);
                    }
                }
            }
        }
    }
    WindowOp { parity, cols: cols.into_iter().map(|c| c.map(|v| crate::algebra::sparse(&v))).collect() }
}

/// `AB + (−1)^{p(A)p(B)} BA` (sign `+1`) or `AB − (−1)^{p(A)p(B)} BA` (sign `−1`).
fn graded(a: &WindowOp, b: &WindowOp, sign: i64) -> WindowOp {
    let s = &Scalar::from_int(sign) * &koszul(a.parity, b.parity);
    let n = a.dim();
    op_combination(&[Scalar::one(), s], &[op_compose(a, b), op_compose(b, a)], a.parity.add(b.parity), n)
}

/// Anticommutator `[A, B]₊ = AB + (−1)^{p(A)p(B)} BA`.
pub fn anticommutator(a: &WindowOp, b: &WindowOp) -> WindowOp {
    graded(a, b, 1)
}

/// Super-commutator `[A, B] = AB − (−1)^{p(A)p(B)} BA`.
pub fn commutator(a: &WindowOp, b: &WindowOp) -> WindowOp {
    graded(a, b, -1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepWitness {
    pub relation: String,
    pub pair: (usize, usize),
    /// Carrier basis vector on which the two sides differ.
    pub vector: usize,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepReport {
    pub checked: usize,
    pub skipped: usize,
    pub witness: Option<RepWitness>,
}

impl RepReport {
    fn new() -> RepReport {
        RepReport { checked: 0, skipped: 0, witness: None }
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    /// Compares two operators column by column on the common domain.
    fn compare(&mut self, relation: &str, pair: (usize, usize), lhs: &WindowOp, rhs: &WindowOp) {
        for (j, (l, r)) in lhs.cols.iter().zip(&rhs.cols).enumerate() {
            match (l, r) {
                (Some(l), Some(r)) => {
                    self.checked += 1;
                    let n = lhs.dim();
                    let (l, r) = (crate::algebra::dense(l, n), crate::algebra::dense(r, n));
                    if l != r && self.witness.is_none() {
                        self.witness = Some(RepWitness { relation: relation.to_string(), pair, vector: j, lhs: l, rhs: r });
                    }
                }
                _ => self.skipped += 1,
            }
        }
    }
}

/// `χ_{e_i e_j} = [χ_i, χ_j]₊` on every defined pair and `χ_αχ_β = χ_βχ_α`
/// on even pairs, column by column on the carrier.
pub fn check_representation(alg: &GradedAlgebra, rep: &Representation) -> Result<RepReport, RepError> {
    rep.validate(alg)?;
    let n = rep.carrier.len();
    let mut out = RepReport::new();
    for i in 0..alg.dim() {
        for j in i..alg.dim() {
            let Some(prod) = alg.mul_basis(i, j) else {
                out.skipped += n;
                continue;
            };
            let lhs = op_combination(&crate::algebra::dense(prod, alg.dim()), &rep.ops, alg.parity(i).add(alg.parity(j)), n);
            let rhs = anticommutator(&rep.ops[i], &rep.ops[j]);
            out.compare("χ(xy) = [χx, χy]₊", (i, j), &lhs, &rhs);
            if !alg.parity(i).is_odd() && !alg.parity(j).is_odd() && i != j {
                let ab = op_compose(&rep.ops[i], &rep.ops[j]);
                let ba = op_compose(&rep.ops[j], &rep.ops[i]);
                out.compare("χαχβ = χβχα", (i, j), &ab, &ba);
            }
        }
    }
    Ok(out)
}

/// Checks `χ_{[u,v]} = [χ_u, χ_v]` for a bracket algebra.
pub fn check_lie_representation(g: &GradedAlgebra, rep: &Representation) -> Result<RepReport, RepError> {
    rep.validate(g)?;
    let n = rep.carrier.len();
    let mut out = RepReport::new();
    for i in 0..g.dim() {
        for j in i..g.dim() {
            let Some(br) = g.mul_basis(i, j) else {
                out.skipped += n;
                continue;
            };
            let lhs = op_combination(&crate::algebra::dense(br, g.dim()), &rep.ops, g.parity(i).add(g.parity(j)), n);
            out.compare("χ[u,v] = [χu, χv]", (i, j), &lhs, &commutator(&rep.ops[i], &rep.ops[j]));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedRep {
    pub rep: Representation,
    /// Relators of the symmetric square mapped to zero.
    pub well_defined: RepReport,
    pub homomorphism: RepReport,
}

/// χ on 𝔤_𝔞: odd part unchanged, `χ_{a⊙b} = χ_aχ_b + χ_bχ_a`.
///
/// The bracket homomorphism holds for a bridge built with
/// [`Convention::Representation`](crate::bridge::Convention); on the
/// derivation form it fails on even-odd pairs and the report says so.
pub fn extend_to_ga(alg: &GradedAlgebra, rep: &Representation, bridge: &BridgeResult) -> Result<ExtendedRep, RepError> {
    let pre = check_representation(alg, rep)?;
    if let Some(w) = pre.witness {
        return Err(RepError::NotARepresentation(format!("{} at pair {:?}", w.relation, w.pair)));
    }
    let sq = &bridge.presentation;
    let n = rep.carrier.len();
    // χ on an arbitrary generator-space vector
    let chi_gen = |coeffs: &[Scalar]| -> WindowOp {
        let ops: Vec<WindowOp> = (0..sq.n_gens())
            .map(|g| {
                let (s, t) = sq.gens[g];
                let (x, y) = (&rep.ops[sq.odd[s]], &rep.ops[sq.odd[t]]);
                op_combination(&[Scalar::one(), Scalar::one()], &[op_compose(x, y), op_compose(y, x)], Parity::Even, n)
            })
            .collect();
        op_combination(coeffs, &ops, Parity::Even, n)
    };
    let mut well_defined = RepReport::new();
    let zero = WindowOp::zero(Parity::Even, n);
    for (r, rel) in sq.relators.iter().enumerate() {
        well_defined.compare("χ(relator) = 0", (r, r), &chi_gen(rel), &zero);
    }
    let mut ops = Vec::new();
    for &g in &sq.quotient.keep {
        let mut unit = vec![Scalar::zero(); sq.n_gens()];
        unit[g] = Scalar::one();
        ops.push(chi_gen(&unit));
    }
    for &o in &sq.odd {
        ops.push(rep.ops[o].clone());
    }
    let ext = Representation { carrier: rep.carrier.clone(), ops };
    let homomorphism = check_lie_representation(&bridge.superalgebra, &ext)?;
    Ok(ExtendedRep { rep: ext, well_defined, homomorphism })
}

/// Even supersymmetric invariant bilinear forms `B([x,y],z) = B(x,[y,z])`.
pub fn invariant_forms(g: &GradedAlgebra) -> Result<Vec<QMatrix>, RepError> {
    g.require_total()?;
    let n = g.dim();
    // unknowns B_ij, i ≤ j, same parity
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).filter(|&(i, j)| g.parity(i) == g.parity(j)).collect();
    let entry = |i: usize, j: usize| -> Option<(usize, Scalar)> {
        let (a, b, s) = if i <= j { (i, j, Scalar::one()) } else { (j, i, koszul(g.parity(i), g.parity(j))) };
        pairs.iter().position(|&p| p == (a, b)).map(|u| (u, s))
    };
    let mut rows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let xy = g.mul(&g.unit_vector(x), &g.unit_vector(y));
            for z in 0..n {
                let yz = g.mul(&g.unit_vector(y), &g.unit_vector(z));
                let mut row = vec![Scalar::zero(); pairs.len()];
                for (k, c) in xy.iter().enumerate() {
                    if let (false, Some((u, s))) = (c.is_zero(), entry(k, z)) {
                        row[u] = &row[u] + &(c * &s);
                    }
                }
                for (k, c) in yz.iter().enumerate() {
                    if let (false, Some((u, s))) = (c.is_zero(), entry(x, k)) {
                        row[u] = &row[u] - &(c * &s);
                    }
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sols = if rows.is_empty() { QMatrix::zeros(0, pairs.len()).kernel() } else { Matrix::from_rows(rows, pairs.len(), &Scalar::zero()).kernel() };
    Ok(sols
        .into_iter()
        .map(|v| {
            let mut m = QMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    if let Some((u, s)) = entry(i, j) {
                        m.set(i, j, &v[u] * &s);
                    }
                }
            }
            m
        })
        .collect())
}

/// Quadratic Casimir `C = Σ c^{ij} X_i X_j` with `c = B⁻¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct Casimir {
    pub form: QMatrix,
    pub coeffs: QMatrix,
}

pub fn casimir_element(g: &GradedAlgebra) -> Result<Casimir, RepError> {
    let forms = invariant_forms(g)?;
    if forms.is_empty() {
        return Err(RepError::NoInvariantForm);
    }
    let form = forms.into_iter().find(|b| b.inverse().is_some()).ok_or(RepError::DegenerateForm)?;
    let coeffs = form.inverse().expect("nondegenerate");
    Ok(Casimir { form, coeffs })
}

impl Casimir {
    /// `Σ c^{ij} χ_i χ_j`, defined on the columns where every term is.
    pub fn evaluate(&self, rep: &Representation) -> WindowOp {
        let n = rep.carrier.len();
        let mut coeffs = Vec::new();
        let mut terms = Vec::new();
        for i in 0..self.coeffs.rows {
            for j in 0..self.coeffs.cols {
                let c = self.coeffs.get(i, j);
                if !c.is_zero() {
                    coeffs.push(c.clone());
                    terms.push(op_compose(&rep.ops[i], &rep.ops[j]));
                }
            }
        }
        op_combination(&coeffs, &terms, Parity::Even, n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CasimirValue {
    pub operator: WindowOp,
    /// Defined columns all vanish.
    pub vanishes: bool,
    pub defined_columns: usize,
    /// Commutes with every χ on the defined instances.
    pub central: RepReport,
}

pub fn casimir(g: &GradedAlgebra, rep: &Representation) -> Result<CasimirValue, RepError> {
    rep.validate(g)?;
    let c = casimir_element(g)?;
    let operator = c.evaluate(rep);
    let defined_columns = operator.cols.iter().filter(|c| c.is_some()).count();
    let vanishes = operator.cols.iter().flatten().all(|t| t.iter().all(|(_, x)| x.is_zero()));
    let mut central = RepReport::new();
    let zero = WindowOp::zero(Parity::Even, rep.carrier.len());
    for (k, op) in rep.ops.iter().enumerate() {
        central.compare("[C, χ] = 0", (k, k), &commutator(&operator, op), &zero);
    }
    Ok(CasimirValue { operator, vanishes, defined_columns, central })
}

/// Adjoint representation `ad_x y = [x, y]`; undefined window products
/// give undefined columns.
pub fn adjoint(g: &GradedAlgebra) -> Representation {
    let ops = (0..g.dim()).map(|i| WindowOp { parity: g.parity(i), cols: (0..g.dim()).map(|j| g.mul_basis(i, j).cloned()).collect() }).collect();
    Representation { carrier: g.parities(), ops }
}

#[derive(Debug, Clone, PartialEq)]
pub struct K3Relations {
    /// `(relation, holds)` for the four displayed relations with ℰ = 2χ_ε, A = 2χ_a, B = 2χ_b.
    pub relations: Vec<(&'static str, RepReport)>,
    /// ℰ vanishes on the even carrier and is the identity on the odd one.
    pub projector_form: bool,
    /// ℰ is the identity on the even carrier and vanishes on the odd one.
    pub inverse_projector_form: bool,
}

impl K3Relations {
    pub fn all_hold(&self) -> bool {
        self.relations.iter().all(|(_, r)| r.passed())
    }
}

/// `AB − BA = ℰ`, `Aℰ + ℰA = A`, `Bℰ + ℰB = B`, `ℰ² = ℰ` for the doubled
/// operators ℰ = 2χ_ε, A = 2χ_a, B = 2χ_b (the scale at which K₃ with
/// `ab = ½ε`, `εa = ½a` yields these relations).
pub fn k3_rep_relations(alg: &GradedAlgebra, rep: &Representation) -> Result<K3Relations, RepError> {
    rep.validate(alg)?;
    let labels: Vec<&str> = alg.basis.iter().map(|b| b.label.as_str()).collect();
    if labels != ["eps", "a", "b"] {
        return Err(RepError::WrongAlgebra("K3 with basis (eps; a, b)"));
    }
    let n = rep.carrier.len();
    let two = Scalar::from_int(2);
    let dbl = |op: &WindowOp| op_combination(std::slice::from_ref(&two), std::slice::from_ref(op), op.parity, n);
    let (e, a, b) = (dbl(&rep.ops[0]), dbl(&rep.ops[1]), dbl(&rep.ops[2]));
    let one = Scalar::one();
    let m1 = Scalar::from_int(-1);
    let sum = |x: &WindowOp, y: &WindowOp, s: &Scalar, p: Parity| op_combination(&[one.clone(), s.clone()], &[x.clone(), y.clone()], p, n);
    let mut relations = Vec::new();
    let mut check = |name: &'static str, l: WindowOp, r: &WindowOp| {
        let mut rep = RepReport::new();
        rep.compare(name, (0, 0), &l, r);
        relations.push((name, rep));
    };
    check("AB − BA = ℰ", sum(&op_compose(&a, &b), &op_compose(&b, &a), &m1, Parity::Even), &e);
    check("Aℰ + ℰA = A", sum(&op_compose(&a, &e), &op_compose(&e, &a), &one, Parity::Odd), &a);
    check("Bℰ + ℰB = B", sum(&op_compose(&b, &e), &op_compose(&e, &b), &one, Parity::Odd), &b);
    check("ℰ² = ℰ", op_compose(&e, &e), &e);
    let diag = |j: usize| -> Option<Scalar> {
        let col = e.cols[j].as_ref()?;
        let v = crate::algebra::dense(col, n);
        v.iter().enumerate().all(|(k, x)| k == j || x.is_zero()).then(|| v[j].clone())
    };
    let form = |even_val: &Scalar, odd_val: &Scalar| {
        (0..n).all(|j| match diag(j) {
            Some(d) => d == if rep.carrier[j].is_odd() { odd_val.clone() } else { even_val.clone() },
            None => e.cols[j].is_none(),
        })
    };
    let projector_form = form(&Scalar::zero(), &Scalar::one());
    let inverse_projector_form = form(&Scalar::one(), &Scalar::zero());
    Ok(K3Relations { relations, projector_form, inverse_projector_form })
}

/// Which half of ℱ_λ carries integer indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    /// f_n (n ∈ ℤ), φ_i (i ∈ ℤ+½).
    Standard,
    /// f_m (m ∈ ℤ+½), φ_n (n ∈ ℤ).
    Shifted,
}

/// Window of the tensor-density module ℱ_λ with the 𝒦(1)-action
/// χ_{x_n} f_m = (m+λn) f_{n+m}, χ_{x_n} φ_i = (i+(λ+½)n) φ_{n+i},
/// χ_{ξ_i} f_n = (n/2+λi) φ_{i+n}, χ_{ξ_i} φ_j = f_{i+j}.
///
/// Carrier order follows [`Grid::symmetric`]: integer-indexed vectors first.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityModule {
    pub lambda: Scalar,
    pub sector: Sector,
    pub grid: Grid,
    pub carrier: Vec<Parity>,
    /// One operator per 𝒦(1) window basis element.
    pub k1: Vec<WindowOp>,
    /// Candidate 𝒜𝒦(1) operators, one per 𝒜𝒦(1) window basis element.
    pub ak1: Representation,
}

impl DensityModule {
    pub fn labels(&self) -> Vec<String> {
        let (int, half) = match self.sector {
            Sector::Standard => ("f", "phi"),
            Sector::Shifted => ("phi", "f"),
        };
        self.grid.basis(int, half).into_iter().map(|b| b.label).collect()
    }
}

/// Builds ℱ_λ on the window N; `inverse_parity` swaps carrier parities.
///
/// The 𝒜𝒦(1) candidate is χ_{a_i} = χ_{ξ_i} and χ_{ε_n} = ½(j−i)⁻¹[χ_{ξ_i}, χ_{ξ_j}]₊
/// (i + j = n), which gives χ_{ε_n} f_m = λ f_{n+m}, χ_{ε_n} φ_k = (½−λ) φ_{n+k}.
pub fn density_rep(lambda: Scalar, n: i64, sector: Sector, inverse_parity: bool) -> DensityModule {
    let grid = Grid::symmetric(n);
    let dim = grid.dim();
    let half = Scalar::from_ratio(1, 2);
    // doubled index → carrier position, for f and φ
    let (f_pos, phi_pos): (Box<dyn Fn(i64) -> Option<usize>>, Box<dyn Fn(i64) -> Option<usize>>) = match sector {
        Sector::Standard => (Box::new(move |m2| if m2 % 2 == 0 { grid.even_idx(m2 / 2) } else { None }), Box::new(move |i2| grid.odd_idx(i2))),
        Sector::Shifted => (Box::new(move |m2| grid.odd_idx(m2)), Box::new(move |i2| if i2 % 2 == 0 { grid.even_idx(i2 / 2) } else { None })),
    };
    // (is_f, doubled index) of each carrier slot
    let slots: Vec<(bool, i64)> = (0..dim)
        .map(|p| {
            let (par, idx) = grid.index_at(p);
            let idx2 = if par.is_odd() { idx } else { 2 * idx };
            let is_f = (sector == Sector::Standard) != par.is_odd();
            (is_f, idx2)
        })
        .collect();
    let carrier: Vec<Parity> = slots
        .iter()
        .map(|&(is_f, _)| {
            let p = if is_f { Parity::Even } else { Parity::Odd };
            if inverse_parity {
                p.add(Parity::Odd)
            } else {
                p
            }
        })
        .collect();
    let hv = |x2: i64| Scalar::from_ratio(x2, 2);
    let target = |is_f: bool, idx2: i64| if is_f { f_pos(idx2) } else { phi_pos(idx2) };
    let mk = |parity: Parity, f: &dyn Fn(bool, i64) -> Option<(bool, i64, Scalar)>| -> WindowOp {
        let cols = slots
            .iter()
            .map(|&(is_f, idx2)| {
                let (tf, t2, c) = f(is_f, idx2)?;
                let k = target(tf, t2)?;
                Some(if c.is_zero() { Vec::new() } else { vec![(k, c)] })
            })
            .collect();
        WindowOp { parity, cols }
    };
    let mut k1 = Vec::new();
    for xn in grid.evens() {
        let n2 = 2 * xn;
        k1.push(mk(Parity::Even, &|is_f, i2| {
            if is_f {
                Some((true, i2 + n2, &hv(i2) + &(&lambda * &Scalar::from_int(xn))))
            } else {
                Some((false, i2 + n2, &hv(i2) + &(&(&lambda + &half) * &Scalar::from_int(xn))))
            }
        }));
    }
    for xi2 in grid.odds() {
        k1.push(mk(Parity::Odd, &|is_f, i2| {
            if is_f {
                Some((false, i2 + xi2, &(&hv(i2) * &half) + &(&lambda * &hv(xi2))))
            } else {
                Some((true, i2 + xi2, Scalar::one()))
            }
        }));
    }
    let mut ak1_ops = Vec::new();
    let mu = &half - &lambda;
    for en in grid.evens() {
        let n2 = 2 * en;
        ak1_ops.push(mk(Parity::Even, &|is_f, i2| Some((is_f, i2 + n2, if is_f { lambda.clone() } else { mu.clone() }))));
    }
    ak1_ops.extend(k1[grid.n_even()..].iter().cloned());
    let ak1 = Representation { carrier: carrier.clone(), ops: ak1_ops };
    DensityModule { lambda, sector, grid, carrier, k1, ak1 }
}

/// Restriction of a representation to the algebra basis indices `sub`,
/// rescaled by `scale` per element (used for K₃ copies in 𝒜𝒦(1)).
pub fn restrict(rep: &Representation, sub: &[(usize, Scalar)]) -> Representation {
    let n = rep.carrier.len();
    let ops = sub.iter().map(|(i, c)| op_combination(std::slice::from_ref(c), std::slice::from_ref(&rep.ops[*i]), rep.ops[*i].parity, n)).collect();
    Representation { carrier: rep.carrier.clone(), ops }
}

/// Copy {ε₀; a_{−1/2}, ½a_{1/2}} of K₃ inside an 𝒜𝒦(1) window representation.
pub fn k3_copy(rep: &Representation, n: i64) -> Representation {
    let g = Grid::symmetric(n);
    restrict(
        rep,
        &[
            (g.even_idx(0).expect("window"), Scalar::one()),
            (g.odd_idx(-1).expect("window"), Scalar::one()),
            (g.odd_idx(1).expect("window"), Scalar::from_ratio(1, 2)),
        ],
    )
}

/// Odd derivation check of a partial operator on a windowed algebra:
/// `D(xy) = D(x)y + (−1)^{p(D)p(x)} xD(y)` where all terms are defined.
pub fn check_window_derivation(alg: &GradedAlgebra, d: &WindowOp) -> Result<PairCheck, AlgebraError> {
    let n = alg.dim();
    let mut out = PairCheck { checked: 0, skipped: 0, witness: None };
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (alg.unit_vector(i), alg.unit_vector(j));
            let lhs = alg.product(&ei, &ej)?.and_then(|p| d.apply(&p));
            let di = d.apply(&ei);
            let dj = d.apply(&ej);
            let rhs = match (di, dj) {
                (Some(di), Some(dj)) => match (alg.product(&di, &ej)?, alg.product(&ei, &dj)?) {
                    (Some(u), Some(v)) => {
                        let s = koszul(d.parity, alg.parity(i));
                        Some(u.iter().zip(&v).map(|(x, y)| x + &(&s * y)).collect::<Vec<_>>())
                    }
                    _ => None,
                },
                _ => None,
            };
            match (lhs, rhs) {
                (Some(l), Some(r)) => {
                    out.checked += 1;
                    if l != r && out.witness.is_none() {
                        out.witness = Some(((i, j), l, r));
                    }
                }
                _ => out.skipped += 1,
            }
        }
    }
    Ok(out)
}

/// Right multiplication `x ↦ x·e_i` as a partial operator.
pub fn right_multiplication(alg: &GradedAlgebra, i: usize) -> WindowOp {
    WindowOp { parity: alg.parity(i), cols: (0..alg.dim()).map(|j| alg.mul_basis(j, i).cloned()).collect() }
}

/// Module structure ρ: 𝔞 → End(V), one dense operator per basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleAction {
    pub carrier: Vec<Parity>,
    pub ops: Vec<QMatrix>,
}

/// 𝔞 ⋉ V with `(a,v)(b,w) = (ab, ρ_a w + (−1)^{p(b)p(v)} ρ_b v)`.
pub fn semidirect(alg: &GradedAlgebra, m: &ModuleAction) -> Result<GradedAlgebra, RepError> {
    alg.require_total()?;
    if m.ops.len() != alg.dim() {
        return Err(RepError::OperatorCount { expected: alg.dim(), got: m.ops.len() });
    }
    let n = alg.dim();
    let v = m.carrier.len();
    let mut basis = alg.basis.clone();
    basis.extend(m.carrier.iter().enumerate().map(|(k, p)| BasisElem::new(format!("v{k}"), *p)));
    let mut b = Builder::new(format!("{}|x V", alg.name), basis).field(alg.field);
    for i in 0..n {
        for j in i..n {
            b.set(i, j, alg.mul_basis(i, j).expect("total").clone());
        }
        for k in 0..v {
            let col: Terms = crate::algebra::sparse(&m.ops[i].column(k)).into_iter().map(|(t, c)| (n + t, c)).collect();
            b.set(i, n + k, col);
        }
    }
    Ok(b.build()?)
}

/// Runs the antialgebra axioms on 𝔞 ⋉ V.
pub fn check_module(alg: &GradedAlgebra, m: &ModuleAction) -> Result<AxiomReport, RepError> {
    Ok(check_antialgebra(&semidirect(alg, m)?))
}

/// ρ_x = left multiplication.
pub fn adjoint_action(alg: &GradedAlgebra) -> ModuleAction {
    ModuleAction { carrier: alg.parities(), ops: (0..alg.dim()).map(|i| alg.left_mult(&alg.unit_vector(i))).collect() }
}

/// ρ_x φ = (−1)^{p(x)p(φ)} φ∘ad_x on the dual basis (`signed = false` drops the sign).
pub fn coadjoint_action(alg: &GradedAlgebra, signed: bool) -> ModuleAction {
    let n = alg.dim();
    let ops = (0..n)
        .map(|i| {
            let t = alg.left_mult(&alg.unit_vector(i)).transpose();
            let mut m = QMatrix::zeros(n, n);
            for r in 0..n {
                for c in 0..n {
                    let s = if signed { koszul(alg.parity(i), alg.parity(c)) } else { Scalar::one() };
                    m.set(r, c, &s * t.get(r, c));
                }
            }
            m
        })
        .collect();
    ModuleAction { carrier: alg.parities(), ops }
}

/// Adjoint action viewed as a candidate representation.
pub fn adjoint_as_rep(alg: &GradedAlgebra) -> Representation {
    let m = adjoint_action(alg);
    Representation::from_matrices(alg, m.carrier, &m.ops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bridge::{build_ga, build_ga_with, Convention};
    use crate::catalog::{ak1, k1, k3, osp12};

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    #[test]
    fn zero_rep_passes() {
        let a = k3();
        let r = Representation::zero(&a, vec![Parity::Even, Parity::Odd]);
        assert!(check_representation(&a, &r).unwrap().passed());
    }

    #[test]
    fn density_lambda_selects_reps() {
        let a = ak1(2);
        for (l, ok) in [(q(0, 1), true), (q(1, 2), true), (q(1, 1), false), (q(-1, 2), false)] {
            let d = density_rep(l.clone(), 2, Sector::Standard, false);
            let r = check_representation(&a, &d.ak1).unwrap();
            assert_eq!(r.passed(), ok, "λ = {l}: {:?}", r.witness);
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn density_minus_one_is_adjoint() {
        let g = k1(2);
        let d = density_rep(q(-1, 1), 2, Sector::Standard, false);
        let ad = adjoint(&g);
        let mut checked = 0;
        for (x, y) in d.k1.iter().zip(&ad.ops) {
            for (c1, c2) in x.cols.iter().zip(&y.cols) {
                if let (Some(c1), Some(c2)) = (c1, c2) {
                    assert_eq!(c1, c2);
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn density_is_k1_module() {
        for l in [q(0, 1), q(1, 2), q(-1, 1), q(3, 7)] {
            for sector in [Sector::Standard, Sector::Shifted] {
                let d = density_rep(l.clone(), 2, sector, false);
                let rep = Representation { carrier: d.carrier.clone(), ops: d.k1.clone() };
                let r = check_lie_representation(&k1(2), &rep).unwrap();
                assert!(r.passed(), "{l} {sector:?} {:?}", r.witness);
            }
        }
    }

    #[test]
    fn k3_copy_relations_and_casimir() {
        let a = k3();
        let d = density_rep(q(1, 2), 3, Sector::Standard, false);
        let r = k3_copy(&d.ak1, 3);
        assert!(check_representation(&a, &r).unwrap().passed());
        let rel = k3_rep_relations(&a, &r).unwrap();
        assert!(rel.all_hold());
        assert!(rel.inverse_projector_form);
        let d0 = density_rep(q(0, 1), 3, Sector::Standard, false);
        let rel0 = k3_rep_relations(&a, &k3_copy(&d0.ak1, 3)).unwrap();
        assert!(rel0.all_hold() && rel0.projector_form);
        let br = build_ga_with(&a, Convention::Representation).unwrap();
        let ext = extend_to_ga(&a, &r, &br).unwrap();
        assert!(ext.well_defined.passed());
        assert!(ext.homomorphism.passed(), "{:?}", ext.homomorphism.witness);
        let other = extend_to_ga(&a, &r, &build_ga(&a).unwrap()).unwrap();
        assert!(!other.homomorphism.passed());
        let c = casimir(&br.superalgebra, &ext.rep).unwrap();
        assert!(c.defined_columns > 0);
        assert!(c.vanishes);
    }

    #[test]
    fn adjoint_casimir_nonzero() {
        let g = osp12();
        let c = casimir(&g, &adjoint(&g)).unwrap();
        assert!(!c.vanishes);
        assert!(c.central.passed(), "{:?}", c.central.witness);
    }

    #[test]
    fn perturbed_relations_fail() {
        let a = k3();
        let d = density_rep(q(1, 2), 3, Sector::Standard, false);
        let mut r = k3_copy(&d.ak1, 3);
        r.ops[0] = op_combination(&[q(3, 1)], std::slice::from_ref(&r.ops[0]), Parity::Even, r.carrier.len());
        let rel = k3_rep_relations(&a, &r).unwrap();
        assert!(!rel.relations[3].1.passed());
        assert!(extend_to_ga(&a, &r, &build_ga(&a).unwrap()).is_err());
    }

    #[test]
    fn modules_versus_representations() {
        let a = k3();
        assert!(check_module(&a, &adjoint_action(&a)).unwrap().clean());
        assert!(!check_representation(&a, &adjoint_as_rep(&a)).unwrap().passed());
        assert!(check_module(&a, &coadjoint_action(&a, true)).unwrap().clean());
        assert!(!check_module(&a, &coadjoint_action(&a, false)).unwrap().clean());
    }

    #[test]
    fn literal_action_is_not_a_k1_rep() {
        let g = k1(2);
        let rep = Representation { carrier: ak1(2).parities(), ops: crate::catalog::k1_action(2) };
        let r = check_lie_representation(&g, &rep).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn literal_action_breaks_leibniz() {
        for n in 1..=3 {
            let a = ak1(n);
            let ops = crate::catalog::k1_action(n);
            let g = Grid::symmetric(n);
            let even_ok = ops[..g.n_even()].iter().all(|d| check_window_derivation(&a, d).unwrap().passed());
            assert!(even_ok, "N = {n}");
            let odd_fail = ops[g.n_even()..].iter().any(|d| !check_window_derivation(&a, d).unwrap().passed());
            assert!(odd_fail, "N = {n}");
        }
    }

    #[test]
    fn right_multiplications_are_derivations() {
        let a = ak1(3);
        let g = Grid::symmetric(3);
        for i in g.odds() {
            let t = right_multiplication(&a, g.odd_idx(i).unwrap());
            let r = check_window_derivation(&a, &t).unwrap();
            assert!(r.passed() && r.checked > 0, "{:?}", r.witness);
        }
    }

    #[test]
    fn minus_half_density_matches_action_up_to_scale() {
        // ℱ₋½ in the shifted sector with inverse parity sits on the same
        // positions as the 𝒜𝒦(1) window: φ_n ↔ ε_n, f_m ↔ a_m.
        let n = 3;
        let d = density_rep(q(-1, 2), n, Sector::Shifted, true);
        assert_eq!(d.carrier, ak1(n).parities());
        let lit = crate::catalog::k1_action(n);
        let ne = d.grid.n_even();
        for (k, (x, y)) in d.k1.iter().zip(&lit).enumerate() {
            for (j, (c1, c2)) in x.cols.iter().zip(&y.cols).enumerate() {
                let (Some(c1), Some(c2)) = (c1, c2) else { continue };
                let want: Terms = if k < ne || j < ne { c2.clone() } else { c2.iter().map(|(t, c)| (*t, c * &q(1, 2))).collect() };
                assert_eq!(c1, &want, "op {k} col {j}");
            }
        }
    }
}
