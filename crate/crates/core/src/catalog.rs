//! Named algebras: small total examples and index windows of the infinite ones.
//!
//! Half-integer indices i ∈ ℤ+½ are stored as the odd integer 2i, both in
//! labels (`a1` is a_{1/2}, `xi-3` is ξ_{−3/2}) and in [`Grid`] lookups.

use thiserror::Error;

use crate::algebra::{compose, AlgebraError, BasisElem, Builder, ComposeMode, GradedAlgebra, Parity, Terms, Window, WindowOp};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("unknown algebra {0:?}")]
    UnknownName(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d)
}

fn one() -> Scalar {
    Scalar::one()
}

/// Index window: even indices in `even.0..=even.1`, odd encodings (2i) in
/// `odd.0..=odd.1` stepping by 2. Evens come first in the basis order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub even: (i64, i64),
    pub odd: (i64, i64),
}

impl Grid {
    /// ε_n for |n| ≤ 2N, a_i for |i| ≤ N.
    pub fn symmetric(n: i64) -> Grid {
        Grid { even: (-2 * n, 2 * n), odd: (-(2 * n - 1), 2 * n - 1) }
    }

    pub fn positive(n: i64) -> Grid {
        Grid { even: (0, 2 * n), odd: (-1, 2 * n - 1) }
    }

    pub fn n_even(&self) -> usize {
        (self.even.1 - self.even.0 + 1) as usize
    }

    pub fn n_odd(&self) -> usize {
        ((self.odd.1 - self.odd.0) / 2 + 1) as usize
    }

    pub fn dim(&self) -> usize {
        self.n_even() + self.n_odd()
    }

    pub fn even_idx(&self, m: i64) -> Option<usize> {
        (self.even.0..=self.even.1).contains(&m).then(|| (m - self.even.0) as usize)
    }

    /// Position of the odd element with doubled index `two_i`.
    pub fn odd_idx(&self, two_i: i64) -> Option<usize> {
        (two_i.rem_euclid(2) == 1 && (self.odd.0..=self.odd.1).contains(&two_i))
            .then(|| self.n_even() + ((two_i - self.odd.0) / 2) as usize)
    }

    pub fn evens(&self) -> impl Iterator<Item = i64> {
        self.even.0..=self.even.1
    }

    pub fn odds(&self) -> impl Iterator<Item = i64> {
        (self.odd.0..=self.odd.1).step_by(2)
    }

    /// Index of a basis position: `(Even, n)` or `(Odd, 2i)`.
    pub fn index_at(&self, pos: usize) -> (Parity, i64) {
        if pos < self.n_even() {
            (Parity::Even, self.even.0 + pos as i64)
        } else {
            (Parity::Odd, self.odd.0 + 2 * (pos - self.n_even()) as i64)
        }
    }

    pub fn basis(&self, even: &str, odd: &str) -> Vec<BasisElem> {
        let mut b: Vec<BasisElem> = self.evens().map(|m| BasisElem::new(format!("{even}{m}"), Parity::Even)).collect();
        b.extend(self.odds().map(|i| BasisElem::new(format!("{odd}{i}"), Parity::Odd)));
        b
    }
}

fn basis(even: &[&str], odd: &[&str]) -> Vec<BasisElem> {
    let mut b: Vec<BasisElem> = even.iter().map(|l| BasisElem::new(*l, Parity::Even)).collect();
    b.extend(odd.iter().map(|l| BasisElem::new(*l, Parity::Odd)));
    b
}

fn build(b: Builder) -> GradedAlgebra {
    b.build().expect("catalog tables are well formed")
}

/// K₃: εε = ε, εa = ½a, εb = ½b, ab = ½ε.
pub fn k3() -> GradedAlgebra {
    let mut b = Builder::new("k3", basis(&["eps"], &["a", "b"]));
    b.set(0, 0, vec![(0, one())]);
    b.set(0, 1, vec![(1, q(1, 2))]);
    b.set(0, 2, vec![(2, q(1, 2))]);
    b.set(1, 2, vec![(0, q(1, 2))]);
    build(b)
}

/// ℚ(i) as a two-dimensional even ℚ-algebra with basis {1, i}.
pub fn gaussian() -> GradedAlgebra {
    let mut b = Builder::new("Q(i)", basis(&["1", "i"], &[]));
    b.set(0, 0, vec![(0, one())]);
    b.set(0, 1, vec![(1, one())]);
    b.set(1, 1, vec![(0, q(-1, 1))]);
    build(b)
}

/// ℚ[t]/(t²) with basis {1, t}.
pub fn dual_numbers() -> GradedAlgebra {
    let mut b = Builder::new("Q[t]/(t^2)", basis(&["1", "t"], &[]));
    b.set(0, 0, vec![(0, one())]);
    b.set(0, 1, vec![(1, one())]);
    build(b)
}

/// K₃ with complex coefficients, realified over ℚ (dims 2|4).
pub fn k3c() -> GradedAlgebra {
    compose(ComposeMode::TensorCommutative, &k3(), &gaussian()).expect("even commutative factor").renamed("k3c")
}

/// Heisenberg antialgebra ah_n: basis α; a_1, b_1, …, a_n, b_n with a_i·b_j = δ_ij α.
pub fn ah(n: usize) -> GradedAlgebra {
    let mut odd = Vec::new();
    for i in 1..=n {
        odd.push(format!("a{i}"));
        odd.push(format!("b{i}"));
    }
    let odd_refs: Vec<&str> = odd.iter().map(|s| s.as_str()).collect();
    let mut b = Builder::new(format!("ah{n}"), basis(&["alpha"], &odd_refs));
    for i in 0..n {
        b.set(1 + 2 * i, 2 + 2 * i, vec![(0, one())]);
    }
    build(b)
}

/// Twisted Heisenberg antialgebra: ab = α, αa = κb.
pub fn ah_twisted(kappa: i64) -> GradedAlgebra {
    let name = if kappa > 0 { "ah1~+" } else { "ah1~-" };
    let mut b = Builder::new(name, basis(&["alpha"], &["a", "b"]));
    b.set(1, 2, vec![(0, one())]);
    b.set(0, 1, vec![(2, Scalar::from_int(kappa))]);
    build(b)
}

/// Affine antialgebra aaf(n): εε = ε, εa_i = ½a_i, a_i a_j = 0.
pub fn aaf(n: usize) -> GradedAlgebra {
    let odd: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    let odd_refs: Vec<&str> = odd.iter().map(|s| s.as_str()).collect();
    let mut b = Builder::new(format!("aaf{n}"), basis(&["eps"], &odd_refs));
    b.set(0, 0, vec![(0, one())]);
    for i in 1..=n {
        b.set(0, i, vec![(i, q(1, 2))]);
    }
    build(b)
}

/// ab = α, αa = z.
pub fn ah_hat() -> GradedAlgebra {
    let mut b = Builder::new("ah1^", basis(&["alpha"], &["a", "b", "z"]));
    b.set(1, 2, vec![(0, one())]);
    b.set(0, 1, vec![(3, one())]);
    build(b)
}

/// ab = α, αa = z₁, αb = z₂.
pub fn ah_hat_hat() -> GradedAlgebra {
    let mut b = Builder::new("ah1^^", basis(&["alpha"], &["a", "b", "z1", "z2"]));
    b.set(1, 2, vec![(0, one())]);
    b.set(0, 1, vec![(3, one())]);
    b.set(0, 2, vec![(4, one())]);
    build(b)
}

/// Rank one, ω = 0, with the nonzero square-zero operator αa = b.
pub fn b2_representative() -> GradedAlgebra {
    let mut b = Builder::new("b2", basis(&["alpha"], &["a", "b"]));
    b.set(0, 1, vec![(2, one())]);
    build(b)
}

/// Zero product on dims p|q.
pub fn abelian(p: usize, q_: usize) -> GradedAlgebra {
    let even: Vec<String> = (1..=p).map(|i| format!("e{i}")).collect();
    let odd: Vec<String> = (1..=q_).map(|i| format!("o{i}")).collect();
    let e: Vec<&str> = even.iter().map(|s| s.as_str()).collect();
    let o: Vec<&str> = odd.iter().map(|s| s.as_str()).collect();
    build(Builder::new(format!("abelian{p}|{q_}"), basis(&e, &o)))
}

/// Zero bracket on dims p|q.
pub fn abelian_bracket(p: usize, q_: usize) -> GradedAlgebra {
    let mut a = abelian(p, q_);
    a.bracket = true;
    a
}

fn ak1_on(grid: Grid, name: String, window: Window) -> GradedAlgebra {
    let mut b = Builder::new(name, grid.basis("e", "a")).window(window);
    for n in grid.evens() {
        for m in grid.evens().filter(|&m| m >= n) {
            if let Some(k) = grid.even_idx(n + m) {
                b.set(grid.even_idx(n).unwrap(), grid.even_idx(m).unwrap(), vec![(k, one())]);
            }
        }
        for i in grid.odds() {
            if let Some(k) = grid.odd_idx(2 * n + i) {
                b.set(grid.even_idx(n).unwrap(), grid.odd_idx(i).unwrap(), vec![(k, q(1, 2))]);
            }
        }
    }
    for i in grid.odds() {
        for j in grid.odds().filter(|&j| j >= i) {
            // a_i a_j = (j − i) ε_{i+j}, indices doubled
            if (i + j) % 2 == 0 {
                if let Some(k) = grid.even_idx((i + j) / 2) {
                    let (x, y) = (grid.odd_idx(i).unwrap(), grid.odd_idx(j).unwrap());
                    b.define(x, y);
                    b.set(x, y, vec![(k, q(j - i, 2))]);
                }
            }
        }
    }
    build(b)
}

/// Window of 𝒜𝒦(1): ε_n (|n| ≤ 2N), a_i (|i| ≤ N); products leaving the
/// window are undefined.
pub fn ak1(n: i64) -> GradedAlgebra {
    ak1_on(Grid::symmetric(n), format!("ak1[N={n}]"), Window::Ak1 { n })
}

/// Window of the nonnegative subalgebra {ε_0, ε_1, …; a_{−1/2}, a_{1/2}, …}.
pub fn ak1_positive(n: i64) -> GradedAlgebra {
    ak1_on(Grid::positive(n), format!("ak1+[N={n}]"), Window::Ak1Positive { n })
}

/// Window of 𝒦(1): [x_n,x_m] = (m−n)x_{n+m}, [x_n,ξ_i] = (i−n/2)ξ_{i+n}, [ξ_i,ξ_j] = x_{i+j}.
pub fn k1(n: i64) -> GradedAlgebra {
    let grid = Grid::symmetric(n);
    let mut b = Builder::new(format!("k1[N={n}]"), grid.basis("x", "xi")).bracket().window(Window::K1 { n });
    k1_table(&grid, &mut b);
    build(b)
}

fn k1_table(grid: &Grid, b: &mut Builder) {
    for n in grid.evens() {
        for m in grid.evens().filter(|&m| m >= n) {
            if let Some(k) = grid.even_idx(n + m) {
                let (x, y) = (grid.even_idx(n).unwrap(), grid.even_idx(m).unwrap());
                b.define(x, y);
                b.set(x, y, vec![(k, Scalar::from_int(m - n))]);
            }
        }
        for i in grid.odds() {
            if let Some(k) = grid.odd_idx(2 * n + i) {
                let (x, y) = (grid.even_idx(n).unwrap(), grid.odd_idx(i).unwrap());
                b.define(x, y);
                b.set(x, y, vec![(k, q(i - n, 2))]);
            }
        }
    }
    for i in grid.odds() {
        for j in grid.odds().filter(|&j| j >= i) {
            if let Some(k) = grid.even_idx((i + j) / 2) {
                b.set(grid.odd_idx(i).unwrap(), grid.odd_idx(j).unwrap(), vec![(k, one())]);
            }
        }
    }
}

/// osp(1|2) as the span of x_{−1}, x_0, x_1, ξ_{−1/2}, ξ_{1/2} in 𝒦(1).
pub fn osp12() -> GradedAlgebra {
    let grid = Grid { even: (-1, 1), odd: (-1, 1) };
    let mut b = Builder::new("osp12", grid.basis("x", "xi")).bracket();
    k1_table(&grid, &mut b);
    build(b)
}

/// Action of the 𝒦(1) window on the 𝒜𝒦(1) window, one operator per 𝒦(1)
/// basis element (same basis order as [`k1`]):
/// x_n(a_i) = (i−n/2)a_{n+i}, x_n(ε_m) = mε_{n+m}, ξ_i(a_j) = (j−i)ε_{i+j}, ξ_i(ε_n) = a_{i+n}.
pub fn k1_action(n: i64) -> Vec<WindowOp> {
    let grid = Grid::symmetric(n);
    let dim = grid.dim();
    let mut ops = Vec::new();
    for xn in grid.evens() {
        let mut cols: Vec<Option<Terms>> = vec![None; dim];
        for m in grid.evens() {
            cols[grid.even_idx(m).unwrap()] = grid.even_idx(xn + m).map(|k| vec![(k, Scalar::from_int(m))]).map(nz);
        }
        for i in grid.odds() {
            cols[grid.odd_idx(i).unwrap()] = grid.odd_idx(2 * xn + i).map(|k| nz(vec![(k, q(i - xn, 2))]));
        }
        ops.push(WindowOp { parity: Parity::Even, cols });
    }
    for xi in grid.odds() {
        let mut cols: Vec<Option<Terms>> = vec![None; dim];
        for m in grid.evens() {
            cols[grid.even_idx(m).unwrap()] = grid.odd_idx(xi + 2 * m).map(|k| vec![(k, one())]);
        }
        for j in grid.odds() {
            cols[grid.odd_idx(j).unwrap()] = grid.even_idx((xi + j) / 2).map(|k| nz(vec![(k, q(j - xi, 2))]));
        }
        ops.push(WindowOp { parity: Parity::Odd, cols });
    }
    ops
}

fn nz(t: Terms) -> Terms {
    t.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Named builders used by the command line.
pub fn builtin(name: &str, n: Option<i64>, big_n: Option<i64>, kappa: Option<i64>, pq: Option<(usize, usize)>) -> Result<GradedAlgebra, CatalogError> {
    let need_n = |v: Option<i64>, what: &str| -> Result<i64, CatalogError> {
        match v {
            Some(x) if x >= 1 => Ok(x),
            Some(x) => Err(CatalogError::BadParams(format!("{what} must be ≥ 1, got {x}"))),
            None => Err(CatalogError::BadParams(format!("{what} is required"))),
        }
    };
    Ok(match name {
        "k3" => k3(),
        "k3c" => k3c(),
        "ak1" => ak1(need_n(big_n, "N")?),
        "ak1-pos" => ak1_positive(need_n(big_n, "N")?),
        "k1" => k1(need_n(big_n, "N")?),
        "osp12" => osp12(),
        "ah" => ah(need_n(n, "n")? as usize),
        "ah-twisted" => match kappa.unwrap_or(1) {
            k @ (1 | -1) => ah_twisted(k),
            k => return Err(CatalogError::BadParams(format!("kappa must be ±1, got {k}"))),
        },
        "aaf" => aaf(need_n(n, "n")? as usize),
        "ah-hat" => ah_hat(),
        "ah-hathat" => ah_hat_hat(),
        "b2" => b2_representative(),
        "abelian" => {
            let (p, q_) = pq.ok_or_else(|| CatalogError::BadParams("abelian needs --p and --q".into()))?;
            abelian(p, q_)
        }
        "dual-numbers" => dual_numbers(),
        "gaussian" => gaussian(),
        other => return Err(CatalogError::UnknownName(other.to_string())),
    })
}

/// Total antialgebras used for catalog-wide checks.
pub fn total_antialgebras() -> Vec<GradedAlgebra> {
    vec![
        k3(),
        k3c(),
        ah(1),
        ah(2),
        ah(3),
        ah_twisted(1),
        ah_twisted(-1),
        aaf(1),
        aaf(2),
        aaf(3),
        ah_hat(),
        ah_hat_hat(),
        b2_representative(),
        abelian(1, 2),
        abelian(0, 2),
    ]
}
