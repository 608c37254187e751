//! The antibracket and Poisson bracket on 𝕂^{2|1}: order-one brackets,
//! invariance under osp(1|2), and realizations of the 𝒜𝒦(1) and 𝒦(1)
//! windows by homogeneous functions.

use antialgebra::geometry::*;

fn main() {
    let (lam, pois) = (canonical_lambda(), canonical_poisson());
    println!("Lambda = {}", lam.display());
    println!("P      = {}", pois.display());
    let sp = plane();
    let names = ["p", "q", "tau"];
    for (i, u) in sp.coords().into_iter().enumerate() {
        for (j, v) in sp.coords().into_iter().enumerate().skip(i) {
            let (f, g) = (sp.var(u), sp.var(v));
            let anti = bracket_from_bivector(&lam, &f, &g, BracketKind::Odd);
            let even = bracket_from_bivector(&pois, &f, &g, BracketKind::Even);
            let show = |h: &GrassmannPoly| if h.is_zero() { "0".to_string() } else { PolyVector::function(&sp, h).display() };
            println!("]{0},{1}[ = {2:<12} {{{0},{1}}} = {3}", names[i], names[j], show(&anti), show(&even));
        }
    }
    let inv = osp_fields().iter().all(|x| lie_derivative(x, &lam).is_zero() && lie_derivative(x, &pois).is_zero());
    println!("osp(1|2) preserves both: {inv}");
    println!("invariant odd bivectors: {}", invariant_bivector_space(&osp_fields(), &sp, antialgebra::algebra::Parity::Odd, 1).len());

    let r = realize_brackets(3);
    let show = |name: &str, c: &BracketCheck| println!("{name:<28} checked {:>4}  failures {}", c.checked, c.failures.len());
    show("antibracket (scaled)", &r.antibracket);
    show("antibracket (literal)", &r.antibracket_literal);
    show("closed-form antibracket", &r.explicit_formula);
    show("Poisson (scaled)", &r.poisson);
    show("Poisson (literal)", &r.poisson_literal);
    show("K(1) action", &r.action);
    show("contraction", &r.contraction);
    for (name, ok) in self_test(3) {
        println!("{name:<28} {}", if ok { "ok" } else { "FAILED" });
    }
}
