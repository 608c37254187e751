//! From a Lie antialgebra to Lie superalgebras: 𝔤_𝔞 on 𝔞₁ ⊕ (𝔞₁ ⊙_{𝔞₀} 𝔞₁),
//! its action `T` on 𝔞, and the full derivation superalgebra Der(𝔞).

use thiserror::Error;

use crate::algebra::{check_linear_map, koszul, sparse, vadd, AlgebraError, BasisElem, Builder, GradedAlgebra, MapKind, Parity, SuperLinearMap};
use crate::axioms::check_antialgebra;
use crate::linalg::{Complement, Matrix, QMatrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BridgeError {
    #[error("input fails the antialgebra identity {0}")]
    AxiomFailure(&'static str),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Formal generators `e_s ⊙ e_t` (s ≤ t over the odd basis) modulo the
/// relators `(α·a)⊙b − a⊙(α·b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricSquare {
    /// Algebra indices of the odd basis.
    pub odd: Vec<usize>,
    /// Generator `g` is `odd[gens[g].0] ⊙ odd[gens[g].1]`.
    pub gens: Vec<(usize, usize)>,
    pub relators: Vec<Vec<Scalar>>,
    pub quotient: Complement,
}

impl SymmetricSquare {
    pub fn new(a: &GradedAlgebra) -> SymmetricSquare {
        let odd = a.odd_indices();
        let mut gens = Vec::new();
        for s in 0..odd.len() {
            for t in s..odd.len() {
                gens.push((s, t));
            }
        }
        let mut sq = SymmetricSquare { odd, gens, relators: Vec::new(), quotient: Complement::new(&[], 0) };
        let mut rel = Vec::new();
        for al in a.even_indices() {
            for &x in &sq.odd {
                for &y in &sq.odd {
                    let ax = a.mul(&a.unit_vector(al), &a.unit_vector(x));
                    let ay = a.mul(&a.unit_vector(al), &a.unit_vector(y));
                    let r: Vec<Scalar> = sq.odot(&ax, &a.unit_vector(y)).iter().zip(sq.odot(&a.unit_vector(x), &ay)).map(|(p, q)| p - &q).collect();
                    if r.iter().any(|c| !c.is_zero()) {
                        rel.push(r);
                    }
                }
            }
        }
        sq.quotient = Complement::new(&rel, sq.gens.len());
        sq.relators = rel;
        sq
    }

    pub fn n_gens(&self) -> usize {
        self.gens.len()
    }

    fn gen_index(&self, s: usize, t: usize) -> usize {
        let (s, t) = if s <= t { (s, t) } else { (t, s) };
        self.gens.iter().position(|&g| g == (s, t)).expect("generator exists")
    }

    /// `a ⊙ b` for algebra vectors (only odd coordinates matter).
    pub fn odot(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.n_gens()];
        for (s, &x) in self.odd.iter().enumerate() {
            if a[x].is_zero() {
                continue;
            }
            for (t, &y) in self.odd.iter().enumerate() {
                if b[y].is_zero() {
                    continue;
                }
                let g = self.gen_index(s, t);
                out[g] = &out[g] + &(&a[x] * &b[y]);
            }
        }
        out
    }

    /// Representative pair `(a, b)` of a generator as algebra vectors.
    pub fn pair(&self, a: &GradedAlgebra, g: usize) -> (Vec<Scalar>, Vec<Scalar>) {
        let (s, t) = self.gens[g];
        (a.unit_vector(self.odd[s]), a.unit_vector(self.odd[t]))
    }

    pub fn dim_quotient(&self) -> usize {
        self.quotient.keep.len()
    }
}

/// Sign of the even-odd clause. The two choices give superalgebras that are
/// isomorphic over ℂ (even ↦ −even, odd ↦ i·odd) but not over ℚ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `[a⊙b, c] = (c·a)·b + (c·b)·a`: T is a homomorphism into Der(𝔞).
    Derivation,
    /// `[a⊙b, c] = a(bc) + b(ac)`: χ_{a⊙b} = χ_aχ_b + χ_bχ_a extends representations.
    Representation,
}

/// Even-even clause `[a⊙b, c⊙d] = [a⊙b, c]⊙d + c⊙[a⊙b, d]`.
fn br_even_even(a: &GradedAlgebra, sq: &SymmetricSquare, conv: Convention, p: (&[Scalar], &[Scalar]), q: (&[Scalar], &[Scalar])) -> Vec<Scalar> {
    let (c, d) = q;
    let t1 = sq.odot(&br_even_odd_with(a, conv, p, c), d);
    let t2 = sq.odot(c, &br_even_odd_with(a, conv, p, d));
    vadd(&t1, &t2)
}

/// Variant `a(bc)⊙d + b(ac)⊙d − c(da)⊙b − d(ca)⊙b`, antisymmetric but not
/// a Lie superbracket; kept to exhibit the Jacobi failure.
pub fn mixed_even_even(a: &GradedAlgebra, sq: &SymmetricSquare, p: (&[Scalar], &[Scalar]), q: (&[Scalar], &[Scalar])) -> Vec<Scalar> {
    let (x, y) = p;
    let (c, d) = q;
    let m = |u: &[Scalar], v: &[Scalar]| a.mul(u, v);
    let t1 = sq.odot(&m(x, &m(y, c)), d);
    let t2 = sq.odot(&m(y, &m(x, c)), d);
    let t3 = sq.odot(&m(c, &m(d, x)), y);
    let t4 = sq.odot(&m(d, &m(c, x)), y);
    t1.iter().zip(&t2).zip(t3.iter().zip(&t4)).map(|((u, v), (w, z))| &(u + v) - &(w + z)).collect()
}

/// Even-odd clause `[a⊙b, c] = (c·a)·b + (c·b)·a`, i.e. the action `T_{a⊙b}` on `c`.
fn br_even_odd(a: &GradedAlgebra, p: (&[Scalar], &[Scalar]), c: &[Scalar]) -> Vec<Scalar> {
    let (x, y) = p;
    vadd(&a.mul(&a.mul(c, x), y), &a.mul(&a.mul(c, y), x))
}

fn br_even_odd_with(a: &GradedAlgebra, conv: Convention, p: (&[Scalar], &[Scalar]), c: &[Scalar]) -> Vec<Scalar> {
    match conv {
        Convention::Derivation => br_even_odd(a, p, c),
        Convention::Representation => left_even_odd(a, p, c),
    }
}

/// `a(bc) + b(ac)`: the negative of [`br_even_odd`].
pub fn left_even_odd(a: &GradedAlgebra, p: (&[Scalar], &[Scalar]), c: &[Scalar]) -> Vec<Scalar> {
    let (x, y) = p;
    vadd(&a.mul(x, &a.mul(y, c)), &a.mul(y, &a.mul(x, c)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BridgeResult {
    /// Bracket table: even basis = kept generators, then the odd basis of 𝔞.
    pub superalgebra: GradedAlgebra,
    pub presentation: SymmetricSquare,
    pub convention: Convention,
}

impl BridgeResult {
    pub fn n_even(&self) -> usize {
        self.presentation.dim_quotient()
    }
}

/// Builds 𝔤_𝔞 in the [`Convention::Derivation`] form.
pub fn build_ga(a: &GradedAlgebra) -> Result<BridgeResult, BridgeError> {
    build_ga_with(a, Convention::Derivation)
}

/// Builds 𝔤_𝔞 with brackets evaluated on representatives and projected.
pub fn build_ga_with(a: &GradedAlgebra, conv: Convention) -> Result<BridgeResult, BridgeError> {
    a.require_total()?;
    let rep = check_antialgebra(a);
    for r in &rep.results[..4] {
        if !r.status().clean() {
            return Err(BridgeError::AxiomFailure(r.identity.name()));
        }
    }
    let sq = SymmetricSquare::new(a);
    let keep = sq.quotient.keep.clone();
    let ne = keep.len();
    let mut basis = Vec::new();
    for &g in &keep {
        let (s, t) = sq.gens[g];
        basis.push(BasisElem::new(format!("{}.{}", a.basis[sq.odd[s]].label, a.basis[sq.odd[t]].label), Parity::Even));
    }
    for &x in &sq.odd {
        basis.push(BasisElem::new(a.basis[x].label.clone(), Parity::Odd));
    }
    let odd_coords = |v: &[Scalar]| -> Vec<(usize, Scalar)> {
        sq.odd.iter().enumerate().filter(|(_, &x)| !v[x].is_zero()).map(|(s, &x)| (ne + s, v[x].clone())).collect()
    };
    let even_coords = |v: &[Scalar]| sparse(&sq.quotient.project(v));
    let mut b = Builder::new(format!("g[{}]", a.name), basis).field(a.field).bracket();
    for (p, &g) in keep.iter().enumerate() {
        let (x, y) = sq.pair(a, g);
        for (q, &h) in keep.iter().enumerate().skip(p) {
            let (c, d) = sq.pair(a, h);
            b.set(p, q, even_coords(&br_even_even(a, &sq, conv, (&x, &y), (&c, &d))));
        }
        for (s, &o) in sq.odd.iter().enumerate() {
            b.set(p, ne + s, odd_coords(&br_even_odd_with(a, conv, (&x, &y), &a.unit_vector(o))));
        }
    }
    for (s, &x) in sq.odd.iter().enumerate() {
        for (t, &y) in sq.odd.iter().enumerate().skip(s) {
            b.set(ne + s, ne + t, even_coords(&sq.odot(&a.unit_vector(x), &a.unit_vector(y))));
        }
    }
    Ok(BridgeResult { superalgebra: b.build()?, presentation: sq, convention: conv })
}

/// Failure of the bracket to descend to the quotient.
#[derive(Debug, Clone, PartialEq)]
pub struct CompatReport {
    pub checked: usize,
    pub witness: Option<String>,
}

/// Checks that the bracket clauses respect ⊙-symmetry and the relators:
/// `[r, u]` lies in the relator span for even `u` and vanishes for odd `u`.
pub fn relator_compatibility(a: &GradedAlgebra, sq: &SymmetricSquare) -> CompatReport {
    let mut rep = CompatReport { checked: 0, witness: None };
    let gens: Vec<(Vec<Scalar>, Vec<Scalar>)> = (0..sq.n_gens()).map(|g| sq.pair(a, g)).collect();
    let note = |ok: bool, what: String, rep: &mut CompatReport| {
        rep.checked += 1;
        if !ok && rep.witness.is_none() {
            rep.witness = Some(what);
        }
    };
    // bracket of a generator-space vector with a representative pair
    let lin_ee = |r: &[Scalar], q: (&[Scalar], &[Scalar])| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); sq.n_gens()];
        for (g, c) in r.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = br_even_even(a, sq, Convention::Derivation, (&gens[g].0, &gens[g].1), q);
            for (o, x) in out.iter_mut().zip(&v) {
                *o = &*o + &(c * x);
            }
        }
        out
    };
    for (ri, r) in sq.relators.iter().enumerate() {
        for (h, (c, d)) in gens.iter().enumerate() {
            let v = lin_ee(r, (c, d));
            note(sq.quotient.contains(&v), format!("[relator {ri}, generator {h}]"), &mut rep);
        }
        for &o in &sq.odd {
            let mut acc = vec![Scalar::zero(); a.dim()];
            for (g, coef) in r.iter().enumerate() {
                if !coef.is_zero() {
                    let v = br_even_odd(a, (&gens[g].0, &gens[g].1), &a.unit_vector(o));
                    acc = acc.iter().zip(&v).map(|(x, y)| x + &(coef * y)).collect();
                }
            }
            note(acc.iter().all(|x| x.is_zero()), format!("[relator {ri}, {}]", a.basis[o].label), &mut rep);
        }
    }
    // swapping the factors of either argument changes nothing modulo relators
    for (g, (x, y)) in gens.iter().enumerate() {
        for (h, (c, d)) in gens.iter().enumerate() {
            let base = br_even_even(a, sq, Convention::Derivation, (x, y), (c, d));
            for alt in [br_even_even(a, sq, Convention::Derivation, (y, x), (c, d)), br_even_even(a, sq, Convention::Derivation, (x, y), (d, c))] {
                let diff: Vec<Scalar> = base.iter().zip(&alt).map(|(p, q)| p - q).collect();
                note(sq.quotient.contains(&diff), format!("symmetry of [generator {g}, generator {h}]"), &mut rep);
            }
        }
    }
    rep
}

/// `T_u` for every 𝔤_𝔞 basis element: `T_c = R_c` on odd `c`, and
/// `T_{a⊙b} x = (x·a)·b + (x·b)·a`.
pub fn t_operators(a: &GradedAlgebra, bridge: &BridgeResult) -> Vec<SuperLinearMap> {
    let sq = &bridge.presentation;
    let n = a.dim();
    let mut ops = Vec::new();
    for &g in &sq.quotient.keep {
        let (x, y) = sq.pair(a, g);
        let mut m = QMatrix::zeros(n, n);
        for j in 0..n {
            let e = a.unit_vector(j);
            let col = vadd(&a.mul(&a.mul(&e, &x), &y), &a.mul(&a.mul(&e, &y), &x));
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        ops.push(SuperLinearMap::new(Parity::Even, m));
    }
    for &o in &sq.odd {
        ops.push(SuperLinearMap::new(Parity::Odd, a.right_mult(&a.unit_vector(o))));
    }
    ops
}

/// Super-commutator of operators.
pub fn supercommutator(x: &SuperLinearMap, y: &SuperLinearMap) -> SuperLinearMap {
    let s = koszul(x.parity, y.parity);
    let xy = x.matrix.mul(&y.matrix);
    let yx = y.matrix.mul(&x.matrix).scale(&s);
    SuperLinearMap::new(x.parity.add(y.parity), xy.sub(&yx))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TReport {
    pub ops: Vec<SuperLinearMap>,
    /// First basis index whose image is not a derivation.
    pub non_derivation: Option<usize>,
    /// First basis pair breaking `T_{[u,v]} = [T_u, T_v]`.
    pub non_homomorphic: Option<(usize, usize)>,
    /// Rank of the linear map `T`.
    pub rank: usize,
}

impl TReport {
    pub fn passed(&self) -> bool {
        self.non_derivation.is_none() && self.non_homomorphic.is_none()
    }
}

pub fn t_homomorphism(a: &GradedAlgebra, bridge: &BridgeResult) -> TReport {
    let g = &bridge.superalgebra;
    let ops = t_operators(a, bridge);
    let non_derivation = ops.iter().position(|t| !check_linear_map(t, a, a, MapKind::Derivation).map(|r| r.passed()).unwrap_or(false));
    let combine = |v: &[Scalar]| -> QMatrix {
        let n = a.dim();
        let mut m = QMatrix::zeros(n, n);
        for (c, t) in v.iter().zip(&ops) {
            if !c.is_zero() {
                m = m.add(&t.matrix.scale(c));
            }
        }
        m
    };
    let mut non_homomorphic = None;
    'outer: for u in 0..g.dim() {
        for v in 0..g.dim() {
            let br = g.mul(&g.unit_vector(u), &g.unit_vector(v));
            if combine(&br) != supercommutator(&ops[u], &ops[v]).matrix {
                non_homomorphic = Some((u, v));
                break 'outer;
            }
        }
    }
    let rank = flatten(&ops).rank();
    TReport { ops, non_derivation, non_homomorphic, rank }
}

/// Matrix whose columns are the flattened operators.
pub fn flatten(ops: &[SuperLinearMap]) -> QMatrix {
    let len = ops.first().map_or(0, |o| o.matrix.data.len());
    let mut m = QMatrix::zeros(len, ops.len());
    for (j, o) in ops.iter().enumerate() {
        for (i, c) in o.matrix.data.iter().enumerate() {
            m.set(i, j, c.clone());
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerResult {
    /// Bracket table on the derivation basis (even ones first).
    pub algebra: GradedAlgebra,
    pub ops: Vec<SuperLinearMap>,
}

impl DerResult {
    /// Coordinates of an operator in the derivation basis, if it is one.
    pub fn coordinates(&self, op: &QMatrix) -> Option<Vec<Scalar>> {
        let m = flatten(&self.ops);
        if m.cols == 0 {
            return op.is_zero().then(Vec::new);
        }
        m.solve_q(&op.data)
    }
}

/// Derivations of parity `par`, as a basis of the solution space.
pub fn derivations_of_parity(a: &GradedAlgebra, par: Parity) -> Result<Vec<SuperLinearMap>, AlgebraError> {
    a.require_total()?;
    let n = a.dim();
    // unknown (k, l): coefficient of e_k in D(e_l), allowed when p(k) = p(l) + par
    let unknowns: Vec<(usize, usize)> = (0..n).flat_map(|l| (0..n).map(move |k| (k, l))).filter(|&(k, l)| a.parity(k) == a.parity(l).add(par)).collect();
    if unknowns.is_empty() {
        return Ok(Vec::new());
    }
    let prods: Vec<Vec<Vec<Scalar>>> = (0..n).map(|i| (0..n).map(|j| a.mul(&a.unit_vector(i), &a.unit_vector(j))).collect()).collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let s = koszul(par, a.parity(i));
            let mut block = vec![vec![Scalar::zero(); unknowns.len()]; n];
            for (u, &(k, l)) in unknowns.iter().enumerate() {
                // D(e_i e_j)
                let c = &prods[i][j][l];
                if !c.is_zero() {
                    block[k][u] = &block[k][u] + c;
                }
                // −D(e_i)·e_j
                if l == i {
                    for (o, x) in prods[k][j].iter().enumerate() {
                        block[o][u] = &block[o][u] - x;
                    }
                }
                // −(−1)^{p(D)p(i)} e_i·D(e_j)
                if l == j {
                    for (o, x) in prods[i][k].iter().enumerate() {
                        block[o][u] = &block[o][u] - &(&s * x);
                    }
                }
            }
            rows.extend(block.into_iter().filter(|r| r.iter().any(|c| !c.is_zero())));
        }
    }
    let sols = if rows.is_empty() {
        QMatrix::zeros(0, unknowns.len()).kernel()
    } else {
        Matrix::from_rows(rows, unknowns.len(), &Scalar::zero()).kernel()
    };
    Ok(sols
        .into_iter()
        .map(|v| {
            let mut m = QMatrix::zeros(n, n);
            for (x, &(k, l)) in v.iter().zip(&unknowns) {
                m.set(k, l, x.clone());
            }
            SuperLinearMap::new(par, m)
        })
        .collect())
}

/// Der(𝔞) with its super-commutator bracket table.
pub fn compute_der(a: &GradedAlgebra) -> Result<DerResult, AlgebraError> {
    let mut ops = derivations_of_parity(a, Parity::Even)?;
    let ne = ops.len();
    ops.extend(derivations_of_parity(a, Parity::Odd)?);
    let mut basis = Vec::new();
    for (i, o) in ops.iter().enumerate() {
        basis.push(BasisElem::new(format!("D{i}"), o.parity));
    }
    let mut b = Builder::new(format!("der[{}]", a.name), basis).field(a.field).bracket();
    let flat = flatten(&ops);
    for i in 0..ops.len() {
        for j in i..ops.len() {
            let c = supercommutator(&ops[i], &ops[j]);
            let coords = flat.solve_q(&c.matrix.data).ok_or(AlgebraError::NotAnIdeal)?;
            b.set(i, j, sparse(&coords));
        }
    }
    debug_assert!(ops[..ne].iter().all(|o| o.parity == Parity::Even));
    Ok(DerResult { algebra: b.build()?, ops })
}

/// Explicit map osp(1|2) → Der(K₃) in the [`compute_der`] basis:
/// ξ_{1/2} ↦ T_a, ξ_{−1/2} ↦ 2T_b, x_1 ↦ 2T_a², x_{−1} ↦ 8T_b², x_0 ↦ 2(T_aT_b + T_bT_a).
/// Columns follow the [`crate::catalog::osp12`] basis order.
pub fn k3_osp_map(k3: &GradedAlgebra, der: &DerResult) -> Option<SuperLinearMap> {
    let ta = k3.right_mult(&k3.unit_vector(k3.index_of("a").ok()?));
    let tb = k3.right_mult(&k3.unit_vector(k3.index_of("b").ok()?));
    let two = Scalar::from_int(2);
    let h = ta.mul(&tb).add(&tb.mul(&ta));
    let images = [tb.mul(&tb).scale(&Scalar::from_int(8)), h.scale(&two), ta.mul(&ta).scale(&two), tb.scale(&two), ta];
    let n = der.ops.len();
    let mut m = QMatrix::zeros(n, images.len());
    for (j, img) in images.iter().enumerate() {
        for (i, c) in der.coordinates(img)?.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Some(SuperLinearMap::new(Parity::Even, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::check_superalgebra;
    use crate::catalog::{abelian, ah, k3};

    #[test]
    fn ga_of_k3() {
        let a = k3();
        let br = build_ga(&a).unwrap();
        assert_eq!(br.superalgebra.dims(), (3, 2));
        assert!(br.presentation.relators.is_empty());
        assert!(check_superalgebra(&br.superalgebra).clean());
        let t = t_homomorphism(&a, &br);
        assert!(t.passed());
        assert_eq!(t.rank, 5);
        assert!(relator_compatibility(&a, &br.presentation).witness.is_none());
    }

    #[test]
    fn mixed_even_clause_breaks_jacobi_on_k3() {
        let a = k3();
        let sq = SymmetricSquare::new(&a);
        let (ea, eb) = (a.unit_vector(1), a.unit_vector(2));
        // [a⊙b, b⊙b]: with the left clause sign Jacobi forces ½ b⊙b (the
        // derivation form with the right clause gives −½), the mixed variant ¾
        let good = br_even_even(&a, &sq, Convention::Derivation, (&ea, &eb), (&eb, &eb));
        let bad = mixed_even_even(&a, &sq, (&ea, &eb), (&eb, &eb));
        let bb = sq.odot(&eb, &eb);
        assert_eq!(good, crate::algebra::vscale(&Scalar::from_ratio(-1, 2), &bb));
        assert_eq!(bad, crate::algebra::vscale(&Scalar::from_ratio(3, 4), &bb));
    }

    #[test]
    fn left_clause_makes_t_reverse_brackets() {
        let a = k3();
        let br = build_ga(&a).unwrap();
        let sq = &br.presentation;
        let ops = t_operators(&a, &br);
        for (p, &g) in sq.quotient.keep.iter().enumerate() {
            let (x, y) = sq.pair(&a, g);
            for (s, &o) in sq.odd.iter().enumerate() {
                let c = a.unit_vector(o);
                let left = left_even_odd(&a, (&x, &y), &c);
                assert_eq!(left, crate::algebra::vscale(&Scalar::from_int(-1), &br_even_odd(&a, (&x, &y), &c)));
                // T of the left clause is [T_c, T_{a⊙b}], not [T_{a⊙b}, T_c]
                let t_left = a.right_mult(&left);
                let n_even = sq.dim_quotient();
                assert_eq!(t_left, supercommutator(&ops[n_even + s], &ops[p]).matrix);
            }
        }
    }

    #[test]
    fn osp_maps_onto_der_k3() {
        let a = k3();
        let der = compute_der(&a).unwrap();
        let osp = crate::catalog::osp12();
        let f = k3_osp_map(&a, &der).unwrap();
        let r = check_linear_map(&f, &osp, &der.algebra, MapKind::Homomorphism).unwrap();
        assert!(r.passed(), "{:?}", r.witness);
        assert_eq!(f.matrix.rank(), 5);
    }

    #[test]
    fn ga_of_abelian() {
        for n in 1..=3 {
            let a = abelian(0, n);
            let br = build_ga(&a).unwrap();
            assert_eq!(br.superalgebra.dims(), (n * (n + 1) / 2, n));
            let t = t_homomorphism(&a, &br);
            assert_eq!(t.rank, 0);
        }
    }

    #[test]
    fn der_dims() {
        assert_eq!(compute_der(&k3()).unwrap().algebra.dims(), (3, 2));
        assert_eq!(compute_der(&abelian(0, 2)).unwrap().algebra.dims(), (4, 0));
        let d = compute_der(&ah(1)).unwrap();
        assert!(check_superalgebra(&d.algebra).clean());
    }

    #[test]
    fn ga_of_ah1_maps_into_der() {
        let a = ah(1);
        let br = build_ga(&a).unwrap();
        assert!(check_superalgebra(&br.superalgebra).clean());
        let t = t_homomorphism(&a, &br);
        assert!(t.passed());
        let d = compute_der(&a).unwrap();
        for op in &t.ops {
            assert!(d.coordinates(&op.matrix).is_some());
        }
    }
}
