//! Density modules and tangent fields as representations of an 𝒜𝒦(1)
//! window, and the Casimir element on a K₃ copy.

use antialgebra::bridge::{build_ga_with, Convention};
use antialgebra::catalog::{ak1, k3, osp12};
use antialgebra::geometry::tangent_representation;
use antialgebra::reps::{adjoint, casimir, check_representation, density_rep, extend_to_ga, k3_copy, Sector};
use antialgebra::scalar::Scalar;

fn main() {
    let a = ak1(2);
    for (n, d) in [(0, 1), (1, 2), (1, 1), (-1, 2)] {
        let l = Scalar::from_ratio(n, d);
        let rep = density_rep(l.clone(), 2, Sector::Standard, false);
        let r = check_representation(&a, &rep.ak1).expect("shapes");
        let why = r.witness.as_ref().map(|w| format!(", fails {} at {:?}", w.relation, w.pair)).unwrap_or_default();
        println!("F_{l}: representation {} ({} instances{why})", r.passed(), r.checked);
    }
    for c in [Scalar::one(), Scalar::sqrt(2).expect("2 is not a square")] {
        let r = check_representation(&a, &tangent_representation(2, 6, &c)).expect("shapes");
        println!("tangent fields with a_i -> ({c}) x^(i+1/2) D: representation {}", r.passed());
    }

    let k = k3();
    let copy = k3_copy(&density_rep(Scalar::from_ratio(1, 2), 3, Sector::Standard, false).ak1, 3);
    let br = build_ga_with(&k, Convention::Representation).expect("K3 is an antialgebra");
    let ext = extend_to_ga(&k, &copy, &br).expect("K3 copy extends");
    let c = casimir(&br.superalgebra, &ext.rep).expect("invariant form");
    println!("Casimir on the K3 copy in F_1/2 vanishes: {}", c.vanishes);
    let g = osp12();
    println!("Casimir on the osp(1|2) adjoint vanishes: {}", casimir(&g, &adjoint(&g)).expect("invariant form").vanishes);
}
