//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's linear algebra, cocycle or meataxe code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use antialgebra::algebra::{BasisElem, GradedAlgebra, Parity, Terms};
use antialgebra::extensions::ExtType;
use antialgebra::linalg::Matrix;
use antialgebra::scalar::{Field, Gf, Scalar};

/// Rank by plain Gaussian elimination.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv();
        let pivot: Vec<Scalar> = m[r].iter().map(|x| x * &inv).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        m[r] = pivot;
        r += 1;
    }
    r
}

fn product(a: &GradedAlgebra, i: usize, j: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); a.dim()];
    for (k, c) in a.mul_basis(i, j).expect("total algebra") {
        v[*k] = &v[*k] + c;
    }
    v
}

/// Unknowns of a cocycle: the free entries of the bilinear form, in the
/// order (even, odd) pairs for type I and same-parity pairs i ≤ j (i < j
/// for odd) for type II.
fn unknowns(a: &GradedAlgebra, kind: ExtType) -> Vec<(usize, usize)> {
    let n = a.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (p, q) = (a.parity(i), a.parity(j));
            let keep = match kind {
                ExtType::I => p == Parity::Even && q == Parity::Odd,
                ExtType::II => p == q && (i < j || (i == j && p == Parity::Even)),
            };
            if keep {
                out.push((i, j));
            }
        }
    }
    out
}

/// C(e_i, e_j) as a linear form in the unknowns.
fn entry(a: &GradedAlgebra, kind: ExtType, u: &[(usize, usize)], i: usize, j: usize) -> Vec<Scalar> {
    let mut f = vec![Scalar::zero(); u.len()];
    if let Some(k) = u.iter().position(|&x| x == (i, j)) {
        f[k] = Scalar::one();
    } else if let Some(k) = u.iter().position(|&x| x == (j, i)) {
        let odd_pair = kind == ExtType::II && a.parity(i) == Parity::Odd;
        f[k] = if odd_pair { -&Scalar::one() } else { Scalar::one() };
    }
    f
}

/// C(e_i, v) as a linear form.
fn entry_vec(a: &GradedAlgebra, kind: ExtType, u: &[(usize, usize)], i: usize, v: &[Scalar]) -> Vec<Scalar> {
    let mut f = vec![Scalar::zero(); u.len()];
    for (j, c) in v.iter().enumerate() {
        if !c.is_zero() {
            for (x, y) in f.iter_mut().zip(entry(a, kind, u, i, j)) {
                *x = &*x + &(c * &y);
            }
        }
    }
    f
}

fn combine(terms: &[(Scalar, Vec<Scalar>)]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); terms[0].1.len()];
    for (c, f) in terms {
        for (x, y) in out.iter_mut().zip(f) {
            *x = &*x + &(c * y);
        }
    }
    out
}

/// z-component of `x(yw)` in the extension `x·y + C(x,y)z`.
fn zxyw(a: &GradedAlgebra, kind: ExtType, u: &[(usize, usize)], x: usize, y: usize, w: usize) -> Vec<Scalar> {
    entry_vec(a, kind, u, x, &product(a, y, w))
}

/// z-component of `(xy)w`, i.e. C(xy, w).
fn zxy_w(a: &GradedAlgebra, kind: ExtType, u: &[(usize, usize)], x: usize, y: usize, w: usize) -> Vec<Scalar> {
    let xy = product(a, x, y);
    let mut f = vec![Scalar::zero(); u.len()];
    for (k, c) in xy.iter().enumerate() {
        if !c.is_zero() {
            for (s, t) in f.iter_mut().zip(entry(a, kind, u, k, w)) {
                *s = &*s + &(c * &t);
            }
        }
    }
    f
}

/// Cocycle constraints obtained by demanding that the one-dimensional
/// central extension satisfies the four antialgebra identities.
pub fn cocycle_constraints(a: &GradedAlgebra, kind: ExtType) -> (Vec<(usize, usize)>, Vec<Vec<Scalar>>) {
    let u = unknowns(a, kind);
    let (ev, od) = (a.even_indices(), a.odd_indices());
    let one = Scalar::one();
    let m1 = -&one;
    let half = Scalar::from_ratio(-1, 2);
    let mut rows = Vec::new();
    for &x in &ev {
        for &y in &ev {
            for &w in &ev {
                rows.push(combine(&[(one.clone(), zxyw(a, kind, &u, x, y, w)), (m1.clone(), zxy_w(a, kind, &u, x, y, w))]));
            }
            for &w in &od {
                rows.push(combine(&[(one.clone(), zxyw(a, kind, &u, x, y, w)), (half.clone(), zxy_w(a, kind, &u, x, y, w))]));
            }
        }
        for &p in &od {
            for &q in &od {
                // α(ab) = (αa)b + a(αb); a(αb) = x(yw) with x = a, y = α, w = b
                rows.push(combine(&[
                    (one.clone(), zxyw(a, kind, &u, x, p, q)),
                    (m1.clone(), zxy_w(a, kind, &u, x, p, q)),
                    (m1.clone(), zxyw(a, kind, &u, p, x, q)),
                ]));
            }
        }
    }
    for &p in &od {
        for &q in &od {
            for &r in &od {
                rows.push(combine(&[
                    (one.clone(), zxyw(a, kind, &u, p, q, r)),
                    (one.clone(), zxyw(a, kind, &u, q, r, p)),
                    (one.clone(), zxyw(a, kind, &u, r, p, q)),
                ]));
            }
        }
    }
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    (u, rows)
}

/// Coboundaries C_f(x, y) = f(x·y), f ranging over coordinate functionals
/// on the odd part (type I) or the even part (type II).
pub fn coboundaries(a: &GradedAlgebra, kind: ExtType) -> Vec<Vec<Scalar>> {
    let u = unknowns(a, kind);
    let support = match kind {
        ExtType::I => a.odd_indices(),
        ExtType::II => a.even_indices(),
    };
    support.iter().map(|&k| u.iter().map(|&(i, j)| product(a, i, j)[k].clone()).collect()).collect()
}

pub struct NaiveCocycles {
    pub dim_z: usize,
    pub dim_b: usize,
    pub constraints: Vec<Vec<Scalar>>,
    pub b: Vec<Vec<Scalar>>,
}

pub fn naive_cocycles(a: &GradedAlgebra, kind: ExtType) -> NaiveCocycles {
    let (u, constraints) = cocycle_constraints(a, kind);
    let b = coboundaries(a, kind);
    NaiveCocycles { dim_z: u.len() - rank(&constraints), dim_b: rank(&b), constraints, b }
}

/// Compares the library's cocycle space with the naive one: equal
/// dimensions, library cocycles satisfy the naive identities, equal
/// coboundary spans.
pub fn cocycles_agree(a: &GradedAlgebra, kind: ExtType) -> Result<(), String> {
    let lib = antialgebra::extensions::cocycle_space(a, kind).map_err(|e| e.to_string())?;
    let naive = naive_cocycles(a, kind);
    if lib.pairs != unknowns(a, kind) {
        return Err("coordinate orders differ".into());
    }
    if lib.dim_z() != naive.dim_z || lib.dim_b() != naive.dim_b {
        return Err(format!("dims Z {} vs {}, B {} vs {}", lib.dim_z(), naive.dim_z, lib.dim_b(), naive.dim_b));
    }
    for z in &lib.z {
        for row in &naive.constraints {
            let s = row.iter().zip(z).fold(Scalar::zero(), |s, (x, y)| &s + &(x * y));
            if !s.is_zero() {
                return Err("library cocycle violates a naive identity".into());
            }
        }
    }
    let mut both = lib.b.clone();
    both.extend(naive.b.iter().cloned());
    if rank(&both) != naive.dim_b {
        return Err("coboundary spans differ".into());
    }
    Ok(())
}

/// Random super-commutative table of dims `p|q` with integer entries in
/// taken cyclically from `entries`; not an antialgebra in general.
pub fn random_table(p: usize, q: usize, entries: &[i64]) -> GradedAlgebra {
    let n = p + q;
    let par = |i: usize| if i < p { Parity::Even } else { Parity::Odd };
    let basis: Vec<BasisElem> = (0..n).map(|i| BasisElem::new(format!("e{i}"), par(i))).collect();
    let mut it = entries.iter().cycle();
    let mut upper: BTreeMap<(usize, usize), Terms> = BTreeMap::new();
    for i in 0..n {
        for j in i..n {
            if i == j && par(i) == Parity::Odd {
                continue;
            }
            let target = if par(i) == par(j) { Parity::Even } else { Parity::Odd };
            let terms: Terms = (0..n).filter(|&k| par(k) == target).map(|k| (k, Scalar::from_int(*it.next().unwrap()))).filter(|(_, c)| !c.is_zero()).collect();
            upper.insert((i, j), terms);
        }
    }
    GradedAlgebra::from_upper("random".into(), Field::Q, basis, upper, false, None).expect("graded table")
}

fn gf_apply(g: &Matrix<Gf>, v: &[u64], p: u64) -> Vec<u64> {
    (0..g.rows).map(|i| (0..g.cols).map(|j| g.get(i, j).a * v[j]).sum::<u64>() % p).collect()
}

fn gf_span(vs: &[Vec<u64>], p: u64, dim: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![0; dim]];
    for v in vs {
        let mut next = Vec::new();
        for w in &out {
            for c in 0..p {
                let x: Vec<u64> = w.iter().zip(v).map(|(a, b)| (a + c * b) % p).collect();
                if !next.contains(&x) {
                    next.push(x);
                }
            }
        }
        out = next;
    }
    out
}

/// Exhaustive search for a proper nonzero invariant subspace of GF(p)^dim,
/// dim ≤ 3, by enumerating spans of one and two vectors.
pub fn has_invariant_subspace(gens: &[Matrix<Gf>], dim: usize, p: u64) -> bool {
    assert!(dim <= 3);
    let vectors: Vec<Vec<u64>> = (1..p.pow(dim as u32)).map(|k| (0..dim).map(|i| (k / p.pow(i as u32)) % p).collect()).collect();
    let invariant = |s: &Vec<Vec<u64>>| s.iter().all(|v| gens.iter().all(|g| s.contains(&gf_apply(g, v, p))));
    let full = p.pow(dim as u32) as usize;
    for (i, v) in vectors.iter().enumerate() {
        let s = gf_span(std::slice::from_ref(v), p, dim);
        if s.len() < full && invariant(&s) {
            return true;
        }
        for w in &vectors[i + 1..] {
            let s = gf_span(&[v.clone(), w.clone()], p, dim);
            if s.len() < full && invariant(&s) {
                return true;
            }
        }
    }
    false
}

/// Checks that a claimed witness subspace is proper, nonzero and invariant.
pub fn is_invariant_witness(gens: &[Matrix<Gf>], basis: &[Vec<Gf>], dim: usize, p: u64) -> bool {
    let vs: Vec<Vec<u64>> = basis.iter().map(|v| v.iter().map(|x| x.a).collect()).collect();
    let s = gf_span(&vs, p, dim);
    let full = p.pow(dim as u32) as usize;
    s.len() > 1 && s.len() < full && s.iter().all(|v| gens.iter().all(|g| s.contains(&gf_apply(g, v, p))))
}

pub fn gf_matrix(p: u64, dim: usize, entries: &[u64]) -> Matrix<Gf> {
    let rows = (0..dim).map(|i| (0..dim).map(|j| Gf::new(p, entries[i * dim + j])).collect()).collect();
    Matrix::from_rows(rows, dim, &Gf::new(p, 0))
}
