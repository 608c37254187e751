//! Identity scans for Lie antialgebras and Lie superalgebras.
//!
//! Every identity is checked on basis instances of the right parities. An
//! instance whose evaluation needs an undefined product is skipped and
//! counted; the first failing instance in lexicographic order is kept.

use std::fmt;

use crate::algebra::{analyze, koszul, vadd, vscale, GradedAlgebra, Parity};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    AssocEven,
    HalfAction,
    OddLeibniz,
    OddJacobi,
    WeakHalfAction,
    EvenMultCommute,
    TaDerivation,
    SuperJacobi,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::AssocEven => "assoc_even",
            Identity::HalfAction => "half_action",
            Identity::OddLeibniz => "odd_leibniz",
            Identity::OddJacobi => "odd_jacobi",
            Identity::WeakHalfAction => "weak_half_action",
            Identity::EvenMultCommute => "even_mult_commute",
            Identity::TaDerivation => "Ta_derivation",
            Identity::SuperJacobi => "super_jacobi",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Partial,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Partial => "partial",
            Status::Fail => "fail",
        }
    }

    pub fn clean(self) -> bool {
        self != Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub triple: [usize; 3],
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityResult {
    pub identity: Identity,
    pub checked: usize,
    pub skipped: usize,
    pub witness: Option<Witness>,
}

impl IdentityResult {
    pub fn status(&self) -> Status {
        if self.witness.is_some() {
            Status::Fail
        } else if self.skipped > 0 {
            Status::Partial
        } else {
            Status::Pass
        }
    }
}

impl fmt::Display for IdentityResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<18} {:<7} checked {} skipped {}", self.identity.name(), self.status().as_str(), self.checked, self.skipped)?;
        if let Some(w) = &self.witness {
            write!(f, " witness {:?}", w.triple)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub results: Vec<IdentityResult>,
}

impl AxiomReport {
    pub fn get(&self, id: Identity) -> &IdentityResult {
        self.results.iter().find(|r| r.identity == id).expect("identity scanned")
    }

    /// Clean iff the four defining identities have no failure.
    pub fn overall(&self) -> Status {
        let core = [Identity::AssocEven, Identity::HalfAction, Identity::OddLeibniz, Identity::OddJacobi];
        let mut st = Status::Pass;
        for id in core {
            match self.get(id).status() {
                Status::Fail => return Status::Fail,
                Status::Partial => st = Status::Partial,
                Status::Pass => {}
            }
        }
        st
    }

    pub fn clean(&self) -> bool {
        self.overall().clean()
    }
}

type Vector = Vec<Scalar>;

struct Ctx<'a> {
    alg: &'a GradedAlgebra,
}

impl Ctx<'_> {
    fn e(&self, i: usize) -> Vector {
        self.alg.unit_vector(i)
    }

    fn m(&self, u: &[Scalar], v: &[Scalar]) -> Option<Vector> {
        self.alg.product(u, v).expect("shapes agree")
    }

    fn of(&self, p: Parity) -> Vec<usize> {
        match p {
            Parity::Even => self.alg.even_indices(),
            Parity::Odd => self.alg.odd_indices(),
        }
    }

    fn scan<F>(&self, id: Identity, pars: [Parity; 3], eval: F) -> IdentityResult
    where
        F: Fn(usize, usize, usize) -> Option<(Vector, Vector)>,
    {
        let mut r = IdentityResult { identity: id, checked: 0, skipped: 0, witness: None };
        let (xs, ys, zs) = (self.of(pars[0]), self.of(pars[1]), self.of(pars[2]));
        for &i in &xs {
            for &j in &ys {
                for &k in &zs {
                    match eval(i, j, k) {
                        None => r.skipped += 1,
                        Some((lhs, rhs)) => {
                            r.checked += 1;
                            if lhs != rhs && r.witness.is_none() {
                                r.witness = Some(Witness { triple: [i, j, k], lhs, rhs });
                            }
                        }
                    }
                }
            }
        }
        r
    }
}

fn half() -> Scalar {
    Scalar::from_ratio(1, 2)
}

/// Scans all seven antialgebra identities.
pub fn check_antialgebra(alg: &GradedAlgebra) -> AxiomReport {
    use Parity::{Even as E, Odd as O};
    let c = Ctx { alg };
    let mut results = Vec::new();
    results.push(c.scan(Identity::AssocEven, [E, E, E], |i, j, k| {
        let l = c.m(&c.e(i), &c.m(&c.e(j), &c.e(k))?)?;
        let r = c.m(&c.m(&c.e(i), &c.e(j))?, &c.e(k))?;
        Some((l, r))
    }));
    results.push(c.scan(Identity::HalfAction, [E, E, O], |i, j, k| {
        let l = c.m(&c.e(i), &c.m(&c.e(j), &c.e(k))?)?;
        let r = vscale(&half(), &c.m(&c.m(&c.e(i), &c.e(j))?, &c.e(k))?);
        Some((l, r))
    }));
    results.push(c.scan(Identity::OddLeibniz, [E, O, O], |i, j, k| {
        let l = c.m(&c.e(i), &c.m(&c.e(j), &c.e(k))?)?;
        let r1 = c.m(&c.m(&c.e(i), &c.e(j))?, &c.e(k))?;
        let r2 = c.m(&c.e(j), &c.m(&c.e(i), &c.e(k))?)?;
        Some((l, vadd(&r1, &r2)))
    }));
    results.push(c.scan(Identity::OddJacobi, [O, O, O], |i, j, k| {
        let t1 = c.m(&c.e(i), &c.m(&c.e(j), &c.e(k))?)?;
        let t2 = c.m(&c.e(j), &c.m(&c.e(k), &c.e(i))?)?;
        let t3 = c.m(&c.e(k), &c.m(&c.e(i), &c.e(j))?)?;
        Some((vadd(&vadd(&t1, &t2), &t3), vec![Scalar::zero(); alg.dim()]))
    }));
    results.push(c.scan(Identity::WeakHalfAction, [E, E, O], |i, j, k| {
        let l = c.m(&c.m(&c.e(i), &c.e(j))?, &c.e(k))?;
        let r1 = c.m(&c.e(i), &c.m(&c.e(j), &c.e(k))?)?;
        let r2 = c.m(&c.e(j), &c.m(&c.e(i), &c.e(k))?)?;
        Some((l, vadd(&r1, &r2)))
    }));
    results.push(c.scan(Identity::EvenMultCommute, [E, E, O], |i, j, k| {
        let l = c.m(&c.e(i), &c.m(&c.e(j), &c.e(k))?)?;
        let r = c.m(&c.e(j), &c.m(&c.e(i), &c.e(k))?)?;
        Some((l, r))
    }));
    results.push(ta_derivation(&c));
    AxiomReport { results }
}

/// `T_c(x) = x·c` is an odd derivation for every odd basis `c`; triples are
/// `(x, y, c)` over all basis `x, y`.
fn ta_derivation(c: &Ctx<'_>) -> IdentityResult {
    let alg = c.alg;
    let n = alg.dim();
    let mut r = IdentityResult { identity: Identity::TaDerivation, checked: 0, skipped: 0, witness: None };
    for i in 0..n {
        for j in 0..n {
            for k in alg.odd_indices() {
                let eval = || -> Option<(Vector, Vector)> {
                    let l = c.m(&c.m(&c.e(i), &c.e(j))?, &c.e(k))?;
                    let r1 = c.m(&c.m(&c.e(i), &c.e(k))?, &c.e(j))?;
                    let r2 = c.m(&c.e(i), &c.m(&c.e(j), &c.e(k))?)?;
                    let s = koszul(Parity::Odd, alg.parity(i));
                    Some((l, vadd(&r1, &vscale(&s, &r2))))
                };
                match eval() {
                    None => r.skipped += 1,
                    Some((lhs, rhs)) => {
                        r.checked += 1;
                        if lhs != rhs && r.witness.is_none() {
                            r.witness = Some(Witness { triple: [i, j, k], lhs, rhs });
                        }
                    }
                }
            }
        }
    }
    r
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    /// weak_half_action, odd_leibniz and odd_jacobi all clean.
    pub identities_hold: bool,
    /// Every `T_a` is an odd derivation.
    pub ta_derivations: bool,
    pub ample: Option<bool>,
    pub assoc_even: bool,
    /// `ample ∧ (half_action, odd_leibniz, odd_jacobi clean) ⇒ assoc_even`.
    pub ample_implication: bool,
}

impl EquivalenceReport {
    pub fn equivalence_holds(&self) -> bool {
        self.identities_hold == self.ta_derivations
    }
}

pub fn check_equivalences(alg: &GradedAlgebra) -> EquivalenceReport {
    let rep = check_antialgebra(alg);
    let ok = |id| rep.get(id).status().clean();
    let identities_hold = ok(Identity::WeakHalfAction) && ok(Identity::OddLeibniz) && ok(Identity::OddJacobi);
    let ta_derivations = ok(Identity::TaDerivation);
    let ample = analyze(alg).ok().map(|r| r.ample);
    let assoc_even = ok(Identity::AssocEven);
    let premise = ample == Some(true) && ok(Identity::HalfAction) && ok(Identity::OddLeibniz) && ok(Identity::OddJacobi);
    EquivalenceReport { identities_hold, ta_derivations, ample, assoc_even, ample_implication: !premise || assoc_even }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuperReport {
    pub antisymmetric: bool,
    pub jacobi: IdentityResult,
}

impl SuperReport {
    pub fn clean(&self) -> bool {
        self.antisymmetric && self.jacobi.status().clean()
    }
}

/// Super-Jacobi `[x,[y,z]] = [[x,y],z] + (−1)^{p(x)p(y)} [y,[x,z]]` on all
/// basis triples, plus the stored sign rule.
pub fn check_superalgebra(alg: &GradedAlgebra) -> SuperReport {
    let c = Ctx { alg };
    let n = alg.dim();
    let antisymmetric = alg.bracket && alg.check_table().is_ok();
    let mut r = IdentityResult { identity: Identity::SuperJacobi, checked: 0, skipped: 0, witness: None };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let eval = || -> Option<(Vector, Vector)> {
                    let l = c.m(&c.e(i), &c.m(&c.e(j), &c.e(k))?)?;
                    let r1 = c.m(&c.m(&c.e(i), &c.e(j))?, &c.e(k))?;
                    let r2 = c.m(&c.e(j), &c.m(&c.e(i), &c.e(k))?)?;
                    let s = koszul(alg.parity(i), alg.parity(j));
                    Some((l, vadd(&r1, &vscale(&s, &r2))))
                };
                match eval() {
                    None => r.skipped += 1,
                    Some((lhs, rhs)) => {
                        r.checked += 1;
                        if lhs != rhs && r.witness.is_none() {
                            r.witness = Some(Witness { triple: [i, j, k], lhs, rhs });
                        }
                    }
                }
            }
        }
    }
    SuperReport { antisymmetric, jacobi: r }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BasisElem, Builder};

    /// K₃ with `ε·a = ea·a` and `a·b = ab·ε`.
    fn k3_with(ea: Scalar, ab: Scalar) -> GradedAlgebra {
        let basis = vec![BasisElem::new("eps", Parity::Even), BasisElem::new("a", Parity::Odd), BasisElem::new("b", Parity::Odd)];
        let mut b = Builder::new("k3", basis);
        let h = Scalar::from_ratio(1, 2);
        b.set(0, 0, vec![(0, Scalar::one())]);
        b.set(0, 1, vec![(1, ea)]);
        b.set(0, 2, vec![(2, h)]);
        b.set(1, 2, vec![(0, ab)]);
        b.build().unwrap()
    }

    fn k3() -> GradedAlgebra {
        k3_with(Scalar::from_ratio(1, 2), Scalar::from_ratio(1, 2))
    }

    #[test]
    fn k3_all_pass() {
        let r = check_antialgebra(&k3());
        for x in &r.results {
            assert_eq!(x.status(), Status::Pass, "{x}");
        }
        assert_eq!(r.overall(), Status::Pass);
    }

    #[test]
    fn perturbed_k3_fails_with_witness() {
        let a = k3_with(Scalar::one(), Scalar::from_ratio(1, 2));
        let r = check_antialgebra(&a);
        assert_eq!(r.overall(), Status::Fail);
        let w = r.get(Identity::HalfAction).witness.clone().unwrap();
        // ε(ε·a) = a but ½(ε·ε)·a = ½a
        assert_eq!(w.triple, [0, 0, 1]);
        assert_eq!(r.get(Identity::OddLeibniz).status(), Status::Fail);
        let eq = check_equivalences(&a);
        assert!(!eq.identities_hold);
        assert!(!eq.ta_derivations);
    }

    #[test]
    fn k3_equivalence() {
        let eq = check_equivalences(&k3());
        assert!(eq.identities_hold && eq.ta_derivations && eq.ample_implication);
    }

    #[test]
    fn doubled_odd_product_is_still_an_antialgebra() {
        // a·b = ε is K₃ again after a ↦ a/2
        assert_eq!(check_antialgebra(&k3_with(Scalar::from_ratio(1, 2), Scalar::one())).overall(), Status::Pass);
    }

    #[test]
    fn abelian_bracket_is_superalgebra() {
        let basis = vec![BasisElem::new("x", Parity::Even), BasisElem::new("y", Parity::Odd)];
        let a = Builder::new("ab", basis).bracket().build().unwrap();
        assert!(check_superalgebra(&a).clean());
    }
}
