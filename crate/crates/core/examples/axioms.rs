//! Checks the antialgebra identities on K₃ and on a perturbed copy, printing
//! the first failing basis triple.

use antialgebra::algebra::Builder;
use antialgebra::axioms::check_antialgebra;
use antialgebra::catalog::k3;
use antialgebra::scalar::Scalar;

fn main() {
    let good = k3();
    report("K3", &good);

    // ε·a = a instead of ½a
    let mut b = Builder::new("K3 perturbed", good.basis.clone());
    for (i, j, t) in good.upper_entries() {
        b.set(i, j, t.clone());
    }
    b.set(0, 1, vec![(1, Scalar::one())]);
    report("perturbed", &b.build().expect("graded table"));
}

fn report(title: &str, a: &antialgebra::algebra::GradedAlgebra) {
    let r = check_antialgebra(a);
    println!("{title}: {}", r.overall().as_str());
    for id in &r.results {
        let w = id.witness.as_ref().map(|w| format!(" witness {:?}: {} vs {}", w.triple, fmt(&w.lhs), fmt(&w.rhs))).unwrap_or_default();
        println!("  {:<18} {:<7} checked {:>3}{w}", id.identity.name(), id.status().as_str(), id.checked);
    }
}

fn fmt(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}
