//! ℤ₂-graded algebras given by structure constants.
//!
//! Products are stored for every ordered pair of basis indices; pairs outside
//! an index window are undefined, and anything that needs them reports
//! `None` rather than guessing. Brackets (Lie superalgebras) are stored in
//! the same table with the super-anticommutative sign rule.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::linalg::{span_basis, QMatrix};
use crate::scalar::{Field, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operation needs a total algebra, {0} is windowed")]
    Windowed(String),
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("subspace is not graded")]
    NotGraded,
    #[error("product e{i}·e{j} has a term of the wrong parity")]
    BadGrading { i: usize, j: usize },
    #[error("product table violates the commutativity sign rule at ({i}, {j})")]
    NotSuperCommutative { i: usize, j: usize },
    #[error("right factor must be purely even")]
    NotPurelyEven,
    #[error("right factor must be commutative and associative")]
    NotCommutativeAssociative,
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("map parity does not match its block structure")]
    ParityMismatch,
    #[error("field: {0}")]
    Field(#[from] ScalarError),
    #[error("algebra is over {0:?} but a coefficient lies outside it")]
    ForeignCoefficient(Field),
}

/// ℤ₂ parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u8) -> Parity {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn add(self, o: Parity) -> Parity {
        Parity::from_bit(self.bit() + o.bit())
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

/// `(−1)^{p q}`.
pub fn koszul(p: Parity, q: Parity) -> Scalar {
    if p.is_odd() && q.is_odd() {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElem {
    pub label: String,
    pub parity: Parity,
}

impl BasisElem {
    pub fn new(label: impl Into<String>, parity: Parity) -> BasisElem {
        BasisElem { label: label.into(), parity }
    }
}

/// Index window of a truncated infinite algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Window {
    /// Even generators ε_n with |n| ≤ 2N and odd a_i with |i| ≤ N.
    Ak1 { n: i64 },
    /// Nonnegative part of the above: ε_n with 0 ≤ n ≤ 2N, a_i with −½ ≤ i ≤ N.
    Ak1Positive { n: i64 },
    /// Even x_n with |n| ≤ 2N and odd ξ_i with |i| ≤ N.
    K1 { n: i64 },
}

impl Window {
    pub fn kind(&self) -> &'static str {
        match self {
            Window::Ak1 { .. } => "ak1",
            Window::Ak1Positive { .. } => "ak1-pos",
            Window::K1 { .. } => "k1",
        }
    }

    pub fn size(&self) -> i64 {
        match self {
            Window::Ak1 { n } | Window::Ak1Positive { n } | Window::K1 { n } => *n,
        }
    }
}

/// Sparse vector: sorted `(index, coefficient)` pairs with nonzero coefficients.
pub type Terms = Vec<(usize, Scalar)>;

pub fn dense(terms: &Terms, n: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    for (k, c) in terms {
        v[*k] = &v[*k] + c;
    }
    v
}

pub fn sparse(v: &[Scalar]) -> Terms {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

fn normalize_terms(terms: Terms) -> Terms {
    let mut m: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (k, c) in terms {
        let e = m.entry(k).or_insert_with(Scalar::zero);
        *e = &*e + &c;
    }
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradedAlgebra {
    pub name: String,
    pub field: Field,
    pub basis: Vec<BasisElem>,
    /// Row-major `n × n`; `None` marks an undefined (out-of-window) product.
    table: Vec<Option<Terms>>,
    pub bracket: bool,
    pub window: Option<Window>,
}

/// Incremental construction of a structure table.
#[derive(Debug, Clone)]
pub struct Builder {
    name: String,
    field: Field,
    basis: Vec<BasisElem>,
    entries: BTreeMap<(usize, usize), Terms>,
    bracket: bool,
    window: Option<Window>,
}

impl Builder {
    pub fn new(name: impl Into<String>, basis: Vec<BasisElem>) -> Builder {
        Builder { name: name.into(), field: Field::Q, basis, entries: BTreeMap::new(), bracket: false, window: None }
    }

    pub fn field(mut self, f: Field) -> Builder {
        self.field = f;
        self
    }

    pub fn bracket(mut self) -> Builder {
        self.bracket = true;
        self
    }

    pub fn window(mut self, w: Window) -> Builder {
        self.window = Some(w);
        self
    }

    /// Sets `e_i · e_j`; the mirrored pair follows from the sign rule.
    pub fn set(&mut self, i: usize, j: usize, terms: Terms) {
        let (i, j, terms) = if i <= j {
            (i, j, terms)
        } else {
            let s = self.swap_sign(i, j);
            (j, i, terms.into_iter().map(|(k, c)| (k, &c * &s)).collect())
        };
        self.entries.insert((i, j), normalize_terms(terms));
    }

    /// Adds to `e_i · e_j` (accumulating).
    pub fn add(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        let (a, b, c) = if i <= j { (i, j, c) } else { (j, i, &c * &self.swap_sign(i, j)) };
        let e = self.entries.entry((a, b)).or_default();
        e.push((k, c));
        let t = std::mem::take(e);
        *e = normalize_terms(t);
    }

    /// Marks a pair as defined with zero product (needed inside windows).
    pub fn define(&mut self, i: usize, j: usize) {
        let key = (i.min(j), i.max(j));
        self.entries.entry(key).or_default();
    }

    fn swap_sign(&self, i: usize, j: usize) -> Scalar {
        let s = koszul(self.basis[i].parity, self.basis[j].parity);
        if self.bracket {
            -s
        } else {
            s
        }
    }

    pub fn index(&self, label: &str) -> usize {
        self.basis.iter().position(|b| b.label == label).unwrap_or_else(|| panic!("no basis label {label}"))
    }

    pub fn build(self) -> Result<GradedAlgebra, AlgebraError> {
        GradedAlgebra::from_upper(self.name, self.field, self.basis, self.entries, self.bracket, self.window)
    }
}

impl GradedAlgebra {
    /// Builds from the entries with `i ≤ j`; missing pairs are zero for total
    /// algebras and undefined for windowed ones.
    pub fn from_upper(
        name: String,
        field: Field,
        basis: Vec<BasisElem>,
        upper: BTreeMap<(usize, usize), Terms>,
        bracket: bool,
        window: Option<Window>,
    ) -> Result<GradedAlgebra, AlgebraError> {
        let n = basis.len();
        for (i, b) in basis.iter().enumerate() {
            if basis[..i].iter().any(|c| c.label == b.label) {
                return Err(AlgebraError::DuplicateLabel(b.label.clone()));
            }
        }
        let mut table: Vec<Option<Terms>> = vec![if window.is_some() { None } else { Some(Vec::new()) }; n * n];
        for ((i, j), terms) in upper {
            if i >= n || j >= n {
                return Err(AlgebraError::IndexOutOfRange(i.max(j)));
            }
            let terms = normalize_terms(terms);
            let want = basis[i].parity.add(basis[j].parity);
            for (k, c) in &terms {
                if *k >= n {
                    return Err(AlgebraError::IndexOutOfRange(*k));
                }
                if basis[*k].parity != want {
                    return Err(AlgebraError::BadGrading { i, j });
                }
                if !field.admits(c) {
                    return Err(AlgebraError::ForeignCoefficient(field));
                }
            }
            let mut s = koszul(basis[i].parity, basis[j].parity);
            if bracket {
                s = -s;
            }
            if i == j && s == Scalar::from_int(-1) && !terms.is_empty() {
                return Err(AlgebraError::NotSuperCommutative { i, j });
            }
            let mirrored: Terms = terms.iter().map(|(k, c)| (*k, c * &s)).collect();
            table[j * n + i] = Some(mirrored);
            table[i * n + j] = Some(terms);
        }
        Ok(GradedAlgebra { name, field, basis, table, bracket, window })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `(dim 𝔞₀, dim 𝔞₁)`.
    pub fn dims(&self) -> (usize, usize) {
        let e = self.basis.iter().filter(|b| b.parity == Parity::Even).count();
        (e, self.dim() - e)
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].parity
    }

    pub fn parities(&self) -> Vec<Parity> {
        self.basis.iter().map(|b| b.parity).collect()
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity(i) == Parity::Even).collect()
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity(i) == Parity::Odd).collect()
    }

    pub fn is_total(&self) -> bool {
        self.window.is_none()
    }

    pub fn require_total(&self) -> Result<(), AlgebraError> {
        if self.is_total() {
            Ok(())
        } else {
            Err(AlgebraError::Windowed(self.name.clone()))
        }
    }

    pub fn index_of(&self, label: &str) -> Result<usize, AlgebraError> {
        self.basis.iter().position(|b| b.label == label).ok_or_else(|| AlgebraError::UnknownLabel(label.to_string()))
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    /// `e_i · e_j`, or `None` outside the window.
    pub fn mul_basis(&self, i: usize, j: usize) -> Option<&Terms> {
        self.table[i * self.dim() + j].as_ref()
    }

    pub fn is_defined(&self, i: usize, j: usize) -> bool {
        self.mul_basis(i, j).is_some()
    }

    /// Bilinear product of coordinate vectors; `Ok(None)` when a needed
    /// basis product is undefined.
    pub fn product(&self, u: &[Scalar], v: &[Scalar]) -> Result<Option<Vec<Scalar>>, AlgebraError> {
        let n = self.dim();
        for w in [u, v] {
            if w.len() != n {
                return Err(AlgebraError::DimensionMismatch { expected: n, got: w.len() });
            }
        }
        let mut out = vec![Scalar::zero(); n];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let Some(t) = self.mul_basis(i, j) else {
                    return Ok(None);
                };
                if t.is_empty() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in t {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        Ok(Some(out))
    }

    /// Product of total-algebra vectors (panics on undefined or bad shapes).
    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.product(u, v).expect("shape").expect("product defined")
    }

    /// Product of a basis element with a vector, `None` if undefined.
    pub fn mul_basis_vec(&self, i: usize, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.product(&self.unit_vector(i), v).expect("shape")
    }

    /// Matrix of `L_x : y ↦ x·y` (total algebras).
    pub fn left_mult(&self, x: &[Scalar]) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for j in 0..n {
            let col = self.mul(x, &self.unit_vector(j));
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Matrix of `R_x : y ↦ y·x` (total algebras).
    pub fn right_mult(&self, x: &[Scalar]) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for j in 0..n {
            let col = self.mul(&self.unit_vector(j), x);
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Stored pairs `i ≤ j` (defined ones), for serialization.
    pub fn upper_entries(&self) -> Vec<(usize, usize, &Terms)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                if let Some(t) = self.mul_basis(i, j) {
                    if !t.is_empty() || self.window.is_some() {
                        out.push((i, j, t));
                    }
                }
            }
        }
        out
    }

    /// Re-asserts the sign rule and grading on the stored table.
    pub fn check_table(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let (Some(a), Some(b)) = (self.mul_basis(i, j), self.mul_basis(j, i)) else {
                    if self.is_defined(i, j) != self.is_defined(j, i) {
                        return Err(AlgebraError::NotSuperCommutative { i, j });
                    }
                    continue;
                };
                let mut s = koszul(self.parity(i), self.parity(j));
                if self.bracket {
                    s = -s;
                }
                let mirrored: Terms = b.iter().map(|(k, c)| (*k, c * &s)).collect();
                if *a != mirrored {
                    return Err(AlgebraError::NotSuperCommutative { i, j });
                }
                let want = self.parity(i).add(self.parity(j));
                if a.iter().any(|(k, _)| self.parity(*k) != want) {
                    return Err(AlgebraError::BadGrading { i, j });
                }
            }
        }
        Ok(())
    }

    /// Same algebra with a new name.
    pub fn renamed(mut self, name: impl Into<String>) -> GradedAlgebra {
        self.name = name.into();
        self
    }

    /// Algebra whose basis is the columns of the invertible matrix `p`
    /// (new basis vector j = Σ_i p[i][j] e_i); columns must be homogeneous.
    pub fn change_basis(&self, p: &QMatrix) -> Result<GradedAlgebra, AlgebraError> {
        self.require_total()?;
        let n = self.dim();
        let pinv = p.inverse().ok_or(AlgebraError::NotGraded)?;
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| p.column(j)).collect();
        let mut basis = Vec::new();
        for (j, c) in cols.iter().enumerate() {
            let par = homogeneous_parity(self, c).ok_or(AlgebraError::NotGraded)?;
            basis.push(BasisElem::new(format!("f{j}"), par));
        }
        let mut b = Builder::new(self.name.clone(), basis).field(self.field);
        if self.bracket {
            b = b.bracket();
        }
        for i in 0..n {
            for j in i..n {
                let prod = self.mul(&cols[i], &cols[j]);
                b.set(i, j, sparse(&pinv.apply(&prod)));
            }
        }
        b.build()
    }
}

/// Parity of a nonzero homogeneous vector.
pub fn homogeneous_parity(alg: &GradedAlgebra, v: &[Scalar]) -> Option<Parity> {
    let mut par = None;
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let p = alg.parity(i);
        match par {
            None => par = Some(p),
            Some(q) if q != p => return None,
            _ => {}
        }
    }
    par
}

impl fmt::Display for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (e, o) = self.dims();
        writeln!(f, "{} ({}|{})", self.name, e, o)?;
        let op = if self.bracket { "," } else { "·" };
        for (i, j, t) in self.upper_entries() {
            if t.is_empty() {
                continue;
            }
            let rhs: Vec<String> = t.iter().map(|(k, c)| format!("{c} {}", self.basis[*k].label)).collect();
            if self.bracket {
                writeln!(f, "  [{}{op}{}] = {}", self.basis[i].label, self.basis[j].label, rhs.join(" + "))?;
            } else {
                writeln!(f, "  {}{op}{} = {}", self.basis[i].label, self.basis[j].label, rhs.join(" + "))?;
            }
        }
        Ok(())
    }
}

pub fn vadd(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn vsub(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn vscale(c: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|a| c * a).collect()
}

/// Canonical basis of a subspace (RREF rows).
pub fn canonical(vectors: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
    let nz: Vec<Vec<Scalar>> = vectors.iter().filter(|v| v.iter().any(|c| !c.is_zero())).cloned().collect();
    span_basis(&nz, dim, &Scalar::zero())
}

/// Closure modes for [`closure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureMode {
    Ideal,
    Subalgebra,
}

/// Smallest ideal (or subalgebra) containing `seed`, in canonical form.
pub fn closure(alg: &GradedAlgebra, seed: &[Vec<Scalar>], mode: ClosureMode) -> Result<Vec<Vec<Scalar>>, AlgebraError> {
    alg.require_total()?;
    let n = alg.dim();
    let mut cur = canonical(seed, n);
    loop {
        let mut gens = cur.clone();
        match mode {
            ClosureMode::Ideal => {
                for v in &cur {
                    for i in 0..n {
                        gens.push(alg.mul(&alg.unit_vector(i), v));
                    }
                }
            }
            ClosureMode::Subalgebra => {
                for u in &cur {
                    for v in &cur {
                        gens.push(alg.mul(u, v));
                    }
                }
            }
        }
        let next = canonical(&gens, n);
        if next.len() == cur.len() {
            return Ok(next);
        }
        cur = next;
    }
}

/// Whether a subspace is closed under multiplication by the whole algebra.
pub fn is_ideal(alg: &GradedAlgebra, sub: &[Vec<Scalar>]) -> bool {
    match closure(alg, sub, ClosureMode::Ideal) {
        Ok(c) => c.len() == canonical(sub, alg.dim()).len(),
        Err(_) => false,
    }
}

/// Whether the span of `sub` is spanned by homogeneous vectors.
pub fn is_graded(alg: &GradedAlgebra, sub: &[Vec<Scalar>]) -> bool {
    let n = alg.dim();
    let mut parts = Vec::new();
    for v in sub {
        let (mut e, mut o) = (vec![Scalar::zero(); n], vec![Scalar::zero(); n]);
        for (i, c) in v.iter().enumerate() {
            if alg.parity(i) == Parity::Even {
                e[i] = c.clone();
            } else {
                o[i] = c.clone();
            }
        }
        parts.push(e);
        parts.push(o);
    }
    canonical(&parts, n).len() == canonical(sub, n).len()
}

/// Partial linear operator on a windowed carrier: column `j` is the image
/// of basis vector `j`, or `None` when it leaves the window.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowOp {
    pub parity: Parity,
    pub cols: Vec<Option<Terms>>,
}

impl WindowOp {
    pub fn zero(parity: Parity, dim: usize) -> WindowOp {
        WindowOp { parity, cols: vec![Some(Vec::new()); dim] }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    /// Image of a vector, `None` if it needs an out-of-window column.
    pub fn apply(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, t) in self.cols[j].as_ref()? {
                out[*k] = &out[*k] + &(c * t);
            }
        }
        Some(out)
    }

    /// Dense matrix with undefined columns set to zero.
    pub fn to_matrix(&self) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for (j, col) in self.cols.iter().enumerate() {
            for (k, c) in col.iter().flatten() {
                m.set(*k, j, c.clone());
            }
        }
        m
    }

    pub fn from_matrix(parity: Parity, m: &QMatrix) -> WindowOp {
        WindowOp { parity, cols: (0..m.cols).map(|j| Some(sparse(&m.column(j)))).collect() }
    }
}

/// Parity-graded linear map; `matrix` is `target_dim × source_dim` with
/// column j the image of source basis vector j.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperLinearMap {
    pub parity: Parity,
    pub matrix: QMatrix,
}

impl SuperLinearMap {
    pub fn new(parity: Parity, matrix: QMatrix) -> SuperLinearMap {
        SuperLinearMap { parity, matrix }
    }

    /// Checks the block structure against source and target parities.
    pub fn check_blocks(&self, src: &[Parity], tgt: &[Parity]) -> Result<(), AlgebraError> {
        if self.matrix.cols != src.len() {
            return Err(AlgebraError::DimensionMismatch { expected: src.len(), got: self.matrix.cols });
        }
        if self.matrix.rows != tgt.len() {
            return Err(AlgebraError::DimensionMismatch { expected: tgt.len(), got: self.matrix.rows });
        }
        for (i, pt) in tgt.iter().enumerate() {
            for (j, ps) in src.iter().enumerate() {
                if !self.matrix.get(i, j).is_zero() && ps.add(self.parity) != *pt {
                    return Err(AlgebraError::ParityMismatch);
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Homomorphism,
    Derivation,
}

/// Outcome of an identity scan over basis instances.
#[derive(Debug, Clone, PartialEq)]
pub struct PairCheck {
    pub checked: usize,
    pub skipped: usize,
    /// First failing basis pair with both sides.
    pub witness: Option<((usize, usize), Vec<Scalar>, Vec<Scalar>)>,
}

impl PairCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks that `f : A → B` is a homomorphism, or (with `A = B`) a derivation
/// of parity `f.parity`, on every defined basis pair.
pub fn check_linear_map(f: &SuperLinearMap, a: &GradedAlgebra, b: &GradedAlgebra, kind: MapKind) -> Result<PairCheck, AlgebraError> {
    f.check_blocks(&a.parities(), &b.parities())?;
    if kind == MapKind::Derivation && a != b {
        return Err(AlgebraError::DimensionMismatch { expected: a.dim(), got: b.dim() });
    }
    let n = a.dim();
    let imgs: Vec<Vec<Scalar>> = (0..n).map(|j| f.matrix.column(j)).collect();
    let mut out = PairCheck { checked: 0, skipped: 0, witness: None };
    for i in 0..n {
        for j in 0..n {
            let Some(xy) = a.product(&a.unit_vector(i), &a.unit_vector(j))? else {
                out.skipped += 1;
                continue;
            };
            let lhs = f.apply(&xy);
            let rhs = match kind {
                MapKind::Homomorphism => b.product(&imgs[i], &imgs[j])?,
                MapKind::Derivation => {
                    let s = koszul(f.parity, a.parity(i));
                    match (a.product(&imgs[i], &a.unit_vector(j))?, a.product(&a.unit_vector(i), &imgs[j])?) {
                        (Some(u), Some(v)) => Some(u.iter().zip(&v).map(|(x, y)| x + &(&s * y)).collect()),
                        _ => None,
                    }
                }
            };
            let Some(rhs) = rhs else {
                out.skipped += 1;
                continue;
            };
            out.checked += 1;
            if lhs != rhs && out.witness.is_none() {
                out.witness = Some(((i, j), lhs, rhs));
            }
        }
    }
    Ok(out)
}

/// Quotient by a graded ideal: the basis is the complement of the ideal's
/// pivot columns, and the projection reduces modulo the ideal's RREF rows.
pub fn quotient(alg: &GradedAlgebra, ideal: &[Vec<Scalar>]) -> Result<(GradedAlgebra, SuperLinearMap), AlgebraError> {
    alg.require_total()?;
    let n = alg.dim();
    let rows = canonical(ideal, n);
    if !is_graded(alg, &rows) {
        return Err(AlgebraError::NotGraded);
    }
    if !is_ideal(alg, &rows) {
        return Err(AlgebraError::NotAnIdeal);
    }
    let pivots: Vec<usize> = rows.iter().map(|r| r.iter().position(|c| !c.is_zero()).expect("nonzero row")).collect();
    let keep: Vec<usize> = (0..n).filter(|k| !pivots.contains(k)).collect();
    let reduce = |v: &[Scalar]| -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (r, &p) in rows.iter().zip(&pivots) {
            let c = w[p].clone();
            if !c.is_zero() {
                for (x, y) in w.iter_mut().zip(r) {
                    *x = &*x - &(&c * y);
                }
            }
        }
        keep.iter().map(|&k| w[k].clone()).collect()
    };
    let basis: Vec<BasisElem> = keep.iter().map(|&k| alg.basis[k].clone()).collect();
    let mut b = Builder::new(format!("{}/I", alg.name), basis).field(alg.field);
    if alg.bracket {
        b = b.bracket();
    }
    for (qi, &i) in keep.iter().enumerate() {
        for (qj, &j) in keep.iter().enumerate().skip(qi) {
            let prod = alg.mul(&alg.unit_vector(i), &alg.unit_vector(j));
            b.set(qi, qj, sparse(&reduce(&prod)));
        }
    }
    let quot = b.build()?;
    let mut m = QMatrix::zeros(keep.len(), n);
    for j in 0..n {
        for (i, c) in reduce(&alg.unit_vector(j)).into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Ok((quot, SuperLinearMap::new(Parity::Even, m)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComposeMode {
    DirectSum,
    TensorCommutative,
}

/// Direct sum `A ⊕ B`, or `A ⊗ B` for a purely even commutative associative `B`.
pub fn compose(mode: ComposeMode, a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra, AlgebraError> {
    a.require_total()?;
    b.require_total()?;
    let field = match (a.field, b.field) {
        (x, Field::Q) => x,
        (Field::Q, y) => y,
        (x, y) if x == y => x,
        (Field::Sqrt(x), Field::Sqrt(y)) => return Err(ScalarError::FieldMismatch(x, y).into()),
    };
    let (na, nb) = (a.dim(), b.dim());
    match mode {
        ComposeMode::DirectSum => {
            let mut basis: Vec<BasisElem> = a.basis.iter().map(|e| BasisElem::new(format!("{}_1", e.label), e.parity)).collect();
            basis.extend(b.basis.iter().map(|e| BasisElem::new(format!("{}_2", e.label), e.parity)));
            let mut bl = Builder::new(format!("{}+{}", a.name, b.name), basis).field(field);
            if a.bracket {
                bl = bl.bracket();
            }
            for (i, j, t) in a.upper_entries() {
                bl.set(i, j, t.clone());
            }
            for (i, j, t) in b.upper_entries() {
                bl.set(na + i, na + j, t.iter().map(|(k, c)| (na + k, c.clone())).collect());
            }
            bl.build()
        }
        ComposeMode::TensorCommutative => {
            if b.dims().1 != 0 {
                return Err(AlgebraError::NotPurelyEven);
            }
            for s in 0..nb {
                for t in 0..nb {
                    let st = b.mul(&b.unit_vector(s), &b.unit_vector(t));
                    if st != b.mul(&b.unit_vector(t), &b.unit_vector(s)) {
                        return Err(AlgebraError::NotCommutativeAssociative);
                    }
                    for u in 0..nb {
                        let l = b.mul(&st, &b.unit_vector(u));
                        let r = b.mul(&b.unit_vector(s), &b.mul(&b.unit_vector(t), &b.unit_vector(u)));
                        if l != r {
                            return Err(AlgebraError::NotCommutativeAssociative);
                        }
                    }
                }
            }
            let idx = |i: usize, s: usize| i * nb + s;
            let mut basis = Vec::new();
            for e in &a.basis {
                for f in &b.basis {
                    basis.push(BasisElem::new(format!("{}*{}", e.label, f.label), e.parity));
                }
            }
            let mut bl = Builder::new(format!("{}*{}", a.name, b.name), basis).field(field);
            if a.bracket {
                bl = bl.bracket();
            }
            for i in 0..na {
                for j in 0..na {
                    let Some(xy) = a.mul_basis(i, j) else { continue };
                    for s in 0..nb {
                        for t in 0..nb {
                            if idx(i, s) > idx(j, t) {
                                continue;
                            }
                            let Some(st) = b.mul_basis(s, t) else { continue };
                            let mut terms = Vec::new();
                            for (k, c) in xy {
                                for (u, d) in st {
                                    terms.push((idx(*k, *u), c * d));
                                }
                            }
                            bl.set(idx(i, s), idx(j, t), terms);
                        }
                    }
                }
            }
            bl.build()
        }
    }
}

/// Skew form on 𝔞₁ from one even coordinate of the odd-odd product.
#[derive(Debug, Clone, PartialEq)]
pub struct PencilForm {
    pub even_index: usize,
    pub matrix: QMatrix,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitalSplit {
    pub unit: Vec<Scalar>,
    /// ½-eigenspace of `ad_ε` on 𝔞₁.
    pub half: Vec<Vec<Scalar>>,
    /// 0-eigenspace of `ad_ε` on 𝔞₁.
    pub zero: Vec<Vec<Scalar>>,
    /// Whether `ad_ε² = ½ ad_ε` on 𝔞₁.
    pub half_projector: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fingerprint {
    pub dims: (usize, usize),
    pub pencil_ranks: Vec<usize>,
    pub center_dims: (usize, usize),
    pub ample: bool,
    pub nilpotent_even: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructureReport {
    pub rank: usize,
    pub pencil: Vec<PencilForm>,
    pub kernel_ideal: Vec<Vec<Scalar>>,
    pub center: Vec<Vec<Scalar>>,
    pub ample: bool,
    pub unital: Option<UnitalSplit>,
    pub fingerprint: Fingerprint,
}

/// Solves `x·e_j = 0` for all `j` over the coordinates of `x`.
pub fn center(alg: &GradedAlgebra) -> Result<Vec<Vec<Scalar>>, AlgebraError> {
    alg.require_total()?;
    let n = alg.dim();
    // rows: for each j and each output coordinate k, Σ_i x_i c_{ij}^k = 0
    let mut rows = Vec::new();
    for j in 0..n {
        let mut block = vec![vec![Scalar::zero(); n]; n];
        for (i, _) in alg.basis.iter().enumerate() {
            for (k, c) in alg.mul_basis(i, j).expect("total") {
                block[*k][i] = &block[*k][i] + c;
            }
        }
        rows.extend(block);
    }
    let m = crate::linalg::Matrix::from_rows(rows, n, &Scalar::zero());
    Ok(canonical(&m.kernel(), n))
}

/// Unit of the commutative algebra 𝔞₀, if any.
pub fn even_unit(alg: &GradedAlgebra) -> Result<Option<Vec<Scalar>>, AlgebraError> {
    alg.require_total()?;
    let n = alg.dim();
    let ev = alg.even_indices();
    if ev.is_empty() {
        return Ok(None);
    }
    // unknown u = Σ u_k e_k (k even); u·e_j = e_j for all even j
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for &j in &ev {
        for out in 0..n {
            let mut row = vec![Scalar::zero(); ev.len()];
            for (c, &k) in ev.iter().enumerate() {
                for (o, s) in alg.mul_basis(k, j).expect("total") {
                    if *o == out {
                        row[c] = &row[c] + s;
                    }
                }
            }
            rows.push(row);
            rhs.push(if out == j { Scalar::one() } else { Scalar::zero() });
        }
    }
    let m = crate::linalg::Matrix::from_rows(rows, ev.len(), &Scalar::zero());
    Ok(m.solve_q(&rhs).map(|u| {
        let mut v = vec![Scalar::zero(); n];
        for (c, &k) in ev.iter().enumerate() {
            v[k] = u[c].clone();
        }
        v
    }))
}

/// Restriction of a square operator to the odd coordinates.
fn odd_block(alg: &GradedAlgebra, m: &QMatrix) -> QMatrix {
    let odd = alg.odd_indices();
    let mut out = QMatrix::zeros(odd.len(), odd.len());
    for (a, &i) in odd.iter().enumerate() {
        for (b, &j) in odd.iter().enumerate() {
            out.set(a, b, m.get(i, j).clone());
        }
    }
    out
}

fn embed_odd(alg: &GradedAlgebra, v: &[Scalar]) -> Vec<Scalar> {
    let mut w = vec![Scalar::zero(); alg.dim()];
    for (c, &i) in alg.odd_indices().iter().enumerate() {
        w[i] = v[c].clone();
    }
    w
}

/// Eigenspace of an odd-block operator for eigenvalue `lam`, embedded.
fn odd_eigenspace(alg: &GradedAlgebra, op: &QMatrix, lam: &Scalar) -> Vec<Vec<Scalar>> {
    let q = op.rows;
    if q == 0 {
        return Vec::new();
    }
    let shifted = op.sub(&QMatrix::identity(q).scale(lam));
    let ker = shifted.kernel();
    canonical(&ker.iter().map(|v| embed_odd(alg, v)).collect::<Vec<_>>(), alg.dim())
}

pub fn unital_split_of(alg: &GradedAlgebra) -> Result<Option<UnitalSplit>, AlgebraError> {
    let Some(unit) = even_unit(alg)? else { return Ok(None) };
    let ad = odd_block(alg, &alg.left_mult(&unit));
    let half = odd_eigenspace(alg, &ad, &Scalar::from_ratio(1, 2));
    let zero = odd_eigenspace(alg, &ad, &Scalar::zero());
    let half_projector = ad.rows == 0 || ad.mul(&ad) == ad.scale(&Scalar::from_ratio(1, 2));
    Ok(Some(UnitalSplit { unit, half, zero, half_projector }))
}

fn is_nilpotent(m: &QMatrix) -> bool {
    let n = m.rows;
    if n == 0 {
        return true;
    }
    let mut p = m.clone();
    for _ in 0..n {
        if p.is_zero() {
            return true;
        }
        p = p.mul(m);
    }
    p.is_zero()
}

/// Pencil, kernel ideal, center, ampleness, unit split and fingerprint.
pub fn analyze(alg: &GradedAlgebra) -> Result<StructureReport, AlgebraError> {
    alg.require_total()?;
    let n = alg.dim();
    let ev = alg.even_indices();
    let odd = alg.odd_indices();
    let mut pencil = Vec::new();
    for &k in &ev {
        let mut m = QMatrix::zeros(odd.len(), odd.len());
        for (a, &i) in odd.iter().enumerate() {
            for (b, &j) in odd.iter().enumerate() {
                for (o, c) in alg.mul_basis(i, j).expect("total") {
                    if *o == k {
                        m.set(a, b, c.clone());
                    }
                }
            }
        }
        let rank = if odd.is_empty() { 0 } else { m.rank() };
        pencil.push(PencilForm { even_index: k, matrix: m, rank });
    }
    // joint kernel of the pencil
    let kernel_ideal = if odd.is_empty() {
        Vec::new()
    } else {
        let mut rows = Vec::new();
        for f in &pencil {
            for r in 0..f.matrix.rows {
                rows.push(f.matrix.row(r).to_vec());
            }
        }
        let ker = if rows.is_empty() {
            QMatrix::zeros(0, odd.len()).kernel()
        } else {
            crate::linalg::Matrix::from_rows(rows, odd.len(), &Scalar::zero()).kernel()
        };
        canonical(&ker.iter().map(|v| embed_odd(alg, v)).collect::<Vec<_>>(), n)
    };
    let center = center(alg)?;
    let mut prods = Vec::new();
    for &i in &odd {
        for &j in &odd {
            prods.push(alg.mul(&alg.unit_vector(i), &alg.unit_vector(j)));
        }
    }
    let ample = canonical(&prods, n).len() == ev.len();
    let unital = unital_split_of(alg)?;
    let mut pencil_ranks: Vec<usize> = pencil.iter().map(|f| f.rank).collect();
    pencil_ranks.sort();
    let ce = center.iter().filter(|v| homogeneous_parity(alg, v) == Some(Parity::Even)).count();
    let fingerprint = Fingerprint {
        dims: alg.dims(),
        pencil_ranks,
        center_dims: (ce, center.len() - ce),
        ample,
        nilpotent_even: ev.iter().map(|&k| is_nilpotent(&alg.left_mult(&alg.unit_vector(k)))).collect(),
    };
    Ok(StructureReport { rank: ev.len(), pencil, kernel_ideal, center, ample, unital, fingerprint })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Simplicity {
    Simple { prime: u64 },
    NotSimple { ideal: Vec<Vec<Scalar>>, reason: String },
    Unknown,
}

/// Simplicity: cheap exact ideal witnesses first, then irreducibility of the
/// multiplication module modulo each usable prime.
pub fn is_simple(alg: &GradedAlgebra, primes: &[u64]) -> Result<Simplicity, AlgebraError> {
    use crate::meataxe::{module_irreducible, Irreducibility};
    alg.require_total()?;
    let n = alg.dim();
    let proper = |v: &Vec<Vec<Scalar>>| !v.is_empty() && v.len() < n;
    let mut prods = Vec::new();
    for i in 0..n {
        for j in 0..n {
            prods.push(alg.mul(&alg.unit_vector(i), &alg.unit_vector(j)));
        }
    }
    let derived = canonical(&prods, n);
    if derived.is_empty() {
        // every subspace is an ideal; a line is a proper one unless n ≤ 1
        let ideal = if n > 1 { vec![alg.unit_vector(0)] } else { derived };
        return Ok(Simplicity::NotSimple { ideal, reason: "zero product".into() });
    }
    if derived.len() < n {
        return Ok(Simplicity::NotSimple { ideal: derived, reason: "proper derived ideal".into() });
    }
    let c = center(alg)?;
    if proper(&c) || (!c.is_empty() && n > 1) {
        return Ok(Simplicity::NotSimple { ideal: c, reason: "nonzero center".into() });
    }
    let rep = analyze(alg)?;
    if !rep.kernel_ideal.is_empty() {
        let k = closure(alg, &rep.kernel_ideal, ClosureMode::Ideal)?;
        if proper(&k) {
            return Ok(Simplicity::NotSimple { ideal: k, reason: "kernel ideal".into() });
        }
    }
    for i in 0..n {
        let k = closure(alg, &[alg.unit_vector(i)], ClosureMode::Ideal)?;
        if proper(&k) {
            return Ok(Simplicity::NotSimple { ideal: k, reason: format!("ideal generated by {}", alg.basis[i].label) });
        }
    }
    let ops: Vec<QMatrix> = (0..n).map(|i| alg.left_mult(&alg.unit_vector(i))).collect();
    'primes: for &p in primes {
        let mut gens = Vec::new();
        for m in &ops {
            let mut data = Vec::with_capacity(m.data.len());
            for x in &m.data {
                match x.reduce_mod(p) {
                    Ok(g) => data.push(g),
                    Err(_) => continue 'primes,
                }
            }
            gens.push(crate::linalg::Matrix { rows: n, cols: n, data });
        }
        match module_irreducible(&gens, n, p) {
            Irreducibility::Irreducible => return Ok(Simplicity::Simple { prime: p }),
            Irreducibility::Reducible(sub) => {
                let lifted: Vec<Vec<Scalar>> = sub.iter().map(|v| v.iter().map(|g| lift_gf(g, alg.field)).collect()).collect();
                let k = closure(alg, &lifted, ClosureMode::Ideal)?;
                if proper(&k) {
                    return Ok(Simplicity::NotSimple { ideal: k, reason: format!("lifted invariant subspace mod {p}") });
                }
            }
            Irreducibility::Inconclusive => {}
        }
    }
    Ok(Simplicity::Unknown)
}

/// Symmetric-residue lift of a finite-field element back to ℚ(√d).
fn lift_gf(g: &crate::scalar::Gf, field: Field) -> Scalar {
    let sym = |x: u64| -> i64 {
        let x = x as i64;
        let p = g.p as i64;
        if x > p / 2 {
            x - p
        } else {
            x
        }
    };
    let a = Scalar::from_int(sym(g.a));
    match (field, g.b) {
        (_, 0) => a,
        (Field::Sqrt(d), b) => &a + &(&Scalar::from_int(sym(b)) * &Scalar::sqrt(d).expect("valid tag")),
        (Field::Q, _) => a,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> GradedAlgebra {
        let basis = vec![BasisElem::new("eps", Parity::Even), BasisElem::new("a", Parity::Odd), BasisElem::new("b", Parity::Odd)];
        let mut b = Builder::new("k3", basis);
        let h = Scalar::from_ratio(1, 2);
        b.set(0, 0, vec![(0, Scalar::one())]);
        b.set(0, 1, vec![(1, h.clone())]);
        b.set(0, 2, vec![(2, h.clone())]);
        b.set(1, 2, vec![(0, h)]);
        b.build().unwrap()
    }

    #[test]
    fn sign_rule_mirrors() {
        let a = k3();
        assert_eq!(a.mul_basis(2, 1).unwrap(), &vec![(0, Scalar::from_ratio(-1, 2))]);
        assert_eq!(a.mul_basis(1, 0).unwrap(), &vec![(1, Scalar::from_ratio(1, 2))]);
        a.check_table().unwrap();
    }

    #[test]
    fn odd_square_must_vanish() {
        let basis = vec![BasisElem::new("e", Parity::Even), BasisElem::new("a", Parity::Odd)];
        let mut b = Builder::new("bad", basis);
        b.set(1, 1, vec![(0, Scalar::one())]);
        assert!(matches!(b.build(), Err(AlgebraError::NotSuperCommutative { .. })));
    }

    #[test]
    fn grading_enforced() {
        let basis = vec![BasisElem::new("e", Parity::Even), BasisElem::new("a", Parity::Odd)];
        let mut b = Builder::new("bad", basis);
        b.set(0, 0, vec![(1, Scalar::one())]);
        assert!(matches!(b.build(), Err(AlgebraError::BadGrading { .. })));
    }

    #[test]
    fn k3_ideal_closure_is_everything() {
        let a = k3();
        let c = closure(&a, &[a.unit_vector(1)], ClosureMode::Ideal).unwrap();
        assert_eq!(c.len(), 3);
        assert!(closure(&a, &[], ClosureMode::Ideal).unwrap().is_empty());
    }

    #[test]
    fn k3_report() {
        let r = analyze(&k3()).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pencil[0].rank, 2);
        assert!(r.kernel_ideal.is_empty());
        assert!(r.center.is_empty());
        assert!(r.ample);
        let u = r.unital.unwrap();
        assert_eq!(u.half.len(), 2);
        assert!(u.zero.is_empty());
        assert!(u.half_projector);
    }

    #[test]
    fn right_multiplication_by_odd_is_a_derivation() {
        let a = k3();
        let t = SuperLinearMap::new(Parity::Odd, a.right_mult(&a.unit_vector(1)));
        assert!(check_linear_map(&t, &a, &a, MapKind::Derivation).unwrap().passed());
        let te = SuperLinearMap::new(Parity::Even, a.right_mult(&a.unit_vector(0)));
        let r = check_linear_map(&te, &a, &a, MapKind::Derivation).unwrap();
        let ((i, j), lhs, rhs) = r.witness.unwrap();
        // T_ε(ε·ε) = ε while T_ε(ε)·ε + ε·T_ε(ε) = 2ε
        assert_eq!((i, j), (0, 0));
        assert_eq!(lhs[0], Scalar::one());
        assert_eq!(rhs[0], Scalar::from_int(2));
    }

    #[test]
    fn zero_map_into_zero_algebra() {
        let z = Builder::new("zero", vec![]).build().unwrap();
        let f = SuperLinearMap::new(Parity::Even, QMatrix::zeros(0, 3));
        assert!(check_linear_map(&f, &k3(), &z, MapKind::Homomorphism).unwrap().passed());
    }

    #[test]
    fn quotient_by_zero_is_identity() {
        let a = k3();
        let (q, p) = quotient(&a, &[]).unwrap();
        assert_eq!(q.upper_entries(), a.upper_entries());
        assert_eq!(p.matrix, QMatrix::identity(3));
    }

    #[test]
    fn non_ideal_rejected() {
        let a = k3();
        assert_eq!(quotient(&a, &[a.unit_vector(1)]).unwrap_err(), AlgebraError::NotAnIdeal);
    }

    #[test]
    fn direct_sum_dims() {
        let s = compose(ComposeMode::DirectSum, &k3(), &k3()).unwrap();
        assert_eq!(s.dims(), (2, 4));
        assert!(!is_simple(&s, &[5]).unwrap().eq(&Simplicity::Simple { prime: 5 }));
    }

    #[test]
    fn k3_simple() {
        assert!(matches!(is_simple(&k3(), &[5, 7]).unwrap(), Simplicity::Simple { .. }));
    }

    #[test]
    fn unit_line_simple_zero_line_not() {
        let mut b = Builder::new("unit", vec![BasisElem::new("e", Parity::Even)]);
        b.set(0, 0, vec![(0, Scalar::one())]);
        assert!(matches!(is_simple(&b.build().unwrap(), &[5]).unwrap(), Simplicity::Simple { .. }));
        let z = Builder::new("zero", vec![BasisElem::new("e", Parity::Even)]).build().unwrap();
        assert!(matches!(is_simple(&z, &[5]).unwrap(), Simplicity::NotSimple { .. }));
    }
}
