//! The odd bivector of an antialgebra: K₃ gives the canonical Λ of 𝕂^{2|1},
//! and the algebra is recovered from the bivector.

use antialgebra::catalog::{k3, total_antialgebras};
use antialgebra::geometry::{canonical_lambda, lambda_of_algebra, lie_derivative, recover_algebra};
use antialgebra::json::polyvector_latex;
use antialgebra::bridge::compute_der;

fn main() {
    let lb = lambda_of_algebra(&k3()).expect("K3 is total");
    println!("Lambda_K3 = {}", lb.bivector.display());
    println!("LaTeX: {}", polyvector_latex(&lb.bivector));
    println!("equals the canonical Lambda: {}", lb.bivector.poly == canonical_lambda().poly);
    for a in total_antialgebras() {
        let lb = lambda_of_algebra(&a).expect("total");
        let back = recover_algebra(&lb).expect("linear bivector");
        let preserved = compute_der(&a).expect("total").ops.iter().all(|d| lie_derivative(&lb.derivation_field(d), &lb.bivector).is_zero());
        println!("{:<12} terms {:>2}  round trip {}  derivations preserve it {}", a.name, lb.bivector.terms().len(), back.upper_entries() == a.upper_entries(), preserved);
    }
}
