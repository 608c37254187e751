//! Irreducibility of matrix modules over finite fields.
//!
//! Uses Norton's criterion: pick a singular element θ of the enveloping
//! algebra; if every nonzero vector of ker θ generates the whole space, and
//! every nonzero vector of ker θᵀ generates the whole dual space under the
//! transposed action, the module is irreducible. Any vector that fails to
//! generate yields an invariant subspace directly.
//!
//! Edge cases:
//! - no generators on a space of dimension ≥ 2 gives a coordinate line;
//! - after the retry budget the search falls back to exhaustive vector
//!   enumeration for dimension ≤ 4, otherwise reports `Inconclusive`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{FieldElem, Matrix};
use crate::scalar::Gf;

pub const DEFAULT_RETRIES: usize = 50;
const SEED: u64 = 0x5eed_a17e;
/// Largest number of projective points scanned in one kernel.
const MAX_POINTS: u64 = 4096;

#[derive(Clone, Debug, PartialEq)]
pub enum Irreducibility {
    Irreducible,
    /// Canonical (RREF) basis of a proper nonzero invariant subspace.
    Reducible(Vec<Vec<Gf>>),
    Inconclusive,
}

/// Field descriptor: characteristic and non-residue (0 for the prime field).
#[derive(Clone, Copy, Debug, PartialEq)]
struct Fq {
    p: u64,
    nr: u64,
}

impl Fq {
    fn of(gens: &[Matrix<Gf>], p: u64) -> Fq {
        let nr = gens.iter().flat_map(|g| g.data.iter()).map(|x| x.nr).find(|&n| n != 0).unwrap_or(0);
        Fq { p, nr }
    }

    fn order(&self) -> u64 {
        if self.nr == 0 {
            self.p
        } else {
            self.p * self.p
        }
    }

    fn elem(&self, k: u64) -> Gf {
        if self.nr == 0 {
            Gf::new(self.p, k)
        } else {
            let (a, b) = (k % self.p, k / self.p);
            if b == 0 {
                Gf::new(self.p, a)
            } else {
                Gf { p: self.p, nr: self.nr, a, b }
            }
        }
    }

    fn zero(&self) -> Gf {
        Gf::new(self.p, 0)
    }
}

/// Decides irreducibility of the module generated by `gens` acting on
/// GF(p)^dim (or GF(p²)^dim when entries need the extension).
pub fn module_irreducible(gens: &[Matrix<Gf>], dim: usize, p: u64) -> Irreducibility {
    module_irreducible_with(gens, dim, p, DEFAULT_RETRIES)
}

pub fn module_irreducible_with(gens: &[Matrix<Gf>], dim: usize, p: u64, retries: usize) -> Irreducibility {
    for g in gens {
        assert!(g.rows == dim && g.cols == dim, "generator shape mismatch");
    }
    let f = Fq::of(gens, p);
    if dim == 0 {
        return Irreducibility::Reducible(Vec::new());
    }
    if dim == 1 {
        return Irreducibility::Irreducible;
    }
    if gens.is_empty() {
        let mut v = vec![f.zero(); dim];
        v[0] = Gf::new(p, 1);
        return Irreducibility::Reducible(vec![v]);
    }
    let gens_t: Vec<Matrix<Gf>> = gens.iter().map(|g| g.transpose()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let ident = Matrix::identity_like(dim, &f.zero());
    for _ in 0..retries {
        let a = random_element(gens, &ident, &f, &mut rng);
        for k in 0..f.order() {
            let lam = f.elem(k);
            let theta = a.sub(&ident.scale(&lam));
            let ker = theta.rref().nullspace;
            if ker.is_empty() {
                continue;
            }
            let ker_t = theta.transpose().rref().nullspace;
            let (Some(pts), Some(pts_t)) = (points(&ker, &f), points(&ker_t, &f)) else {
                continue;
            };
            for v in &pts {
                let s = spin(v, gens);
                if s.len() < dim {
                    return Irreducibility::Reducible(s);
                }
            }
            for w in &pts_t {
                let s = spin(w, &gens_t);
                if s.len() < dim {
                    return Irreducibility::Reducible(annihilator(&s, dim, &f));
                }
            }
            return Irreducibility::Irreducible;
        }
    }
    if dim <= 4 {
        exhaustive(gens, dim, p, f.nr)
    } else {
        Irreducibility::Inconclusive
    }
}

/// Exhaustive check: every projective point is spun; any proper spin is a witness.
pub fn exhaustive_irreducible(gens: &[Matrix<Gf>], dim: usize, p: u64) -> Irreducibility {
    let f = Fq::of(gens, p);
    exhaustive(gens, dim, p, f.nr)
}

fn exhaustive(gens: &[Matrix<Gf>], dim: usize, p: u64, nr: u64) -> Irreducibility {
    let f = Fq { p, nr };
    if dim == 0 {
        return Irreducibility::Reducible(Vec::new());
    }
    let mut basis = Vec::new();
    for i in 0..dim {
        let mut v = vec![f.zero(); dim];
        v[i] = Gf::new(p, 1);
        basis.push(v);
    }
    let pts = all_points(&basis, &f);
    for v in &pts {
        let s = spin(v, gens);
        if s.len() < dim {
            return Irreducibility::Reducible(s);
        }
    }
    Irreducibility::Irreducible
}

fn random_element(gens: &[Matrix<Gf>], ident: &Matrix<Gf>, f: &Fq, rng: &mut ChaCha8Rng) -> Matrix<Gf> {
    // random combination of random words of length ≤ 3 in the generators
    let mut acc = ident.scale(&f.elem(rng.gen_range(0..f.order())));
    for _ in 0..4 {
        let len = rng.gen_range(1..=3);
        let mut w = ident.clone();
        for _ in 0..len {
            w = w.mul(&gens[rng.gen_range(0..gens.len())]);
        }
        let c = f.elem(rng.gen_range(1..f.order()));
        acc = acc.add(&w.scale(&c));
    }
    acc
}

/// Representatives of the projective points of span(basis), or `None` when too many.
fn points(basis: &[Vec<Gf>], f: &Fq) -> Option<Vec<Vec<Gf>>> {
    let q = f.order();
    let k = basis.len() as u32;
    let count = (q.checked_pow(k)? - 1) / (q - 1);
    if count > MAX_POINTS {
        return None;
    }
    Some(all_points(basis, f))
}

fn all_points(basis: &[Vec<Gf>], f: &Fq) -> Vec<Vec<Gf>> {
    let q = f.order();
    let k = basis.len();
    let dim = basis.first().map_or(0, |b| b.len());
    let mut out = Vec::new();
    // leading coefficient 1 at position `lead`, arbitrary coefficients after it
    for lead in 0..k {
        let tail = k - lead - 1;
        let total = q.pow(tail as u32);
        for mut code in 0..total {
            let mut v = basis[lead].clone();
            for t in 0..tail {
                let c = f.elem(code % q);
                code /= q;
                if !c.is_zero() {
                    for (x, b) in v.iter_mut().zip(&basis[lead + 1 + t]) {
                        *x = x.fadd(&c.fmul(b));
                    }
                }
            }
            debug_assert_eq!(v.len(), dim);
            out.push(v);
        }
    }
    out
}

/// Canonical basis of the smallest invariant subspace containing `v`.
pub fn spin(v: &[Gf], gens: &[Matrix<Gf>]) -> Vec<Vec<Gf>> {
    let z = v[0].fzero();
    let dim = v.len();
    let mut ech: Vec<(usize, Vec<Gf>)> = Vec::new();
    let mut queue = vec![v.to_vec()];
    while let Some(w) = queue.pop() {
        if let Some(r) = reduce(&ech, &w) {
            ech.push(r.clone());
            for g in gens {
                queue.push(g.apply(&w));
            }
        }
    }
    let rows: Vec<Vec<Gf>> = ech.into_iter().map(|(_, r)| r).collect();
    crate::linalg::span_basis(&rows, dim, &z)
}

/// Reduces `w` against an echelon list; returns the normalized remainder if nonzero.
fn reduce(ech: &[(usize, Vec<Gf>)], w: &[Gf]) -> Option<(usize, Vec<Gf>)> {
    let mut w = w.to_vec();
    for (piv, r) in ech {
        let c = w[*piv];
        if !c.is_zero() {
            for (x, y) in w.iter_mut().zip(r) {
                *x = x.fsub(&c.fmul(y));
            }
        }
    }
    let piv = w.iter().position(|x| !x.is_zero())?;
    let inv = w[piv].finv();
    for x in w.iter_mut() {
        *x = x.fmul(&inv);
    }
    Some((piv, w))
}

fn annihilator(rows: &[Vec<Gf>], dim: usize, f: &Fq) -> Vec<Vec<Gf>> {
    let m = Matrix::from_rows(rows.to_vec(), dim, &f.zero());
    let ker = m.rref().nullspace;
    crate::linalg::span_basis(&ker, dim, &f.zero())
}
