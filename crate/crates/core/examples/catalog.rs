//! Lists the built-in algebras with their dimensions and axiom verdicts.

use antialgebra::axioms::check_antialgebra;
use antialgebra::catalog::{ak1, k1, osp12, total_antialgebras};

fn main() {
    println!("{:<14} {:>6}  verdict", "name", "dims");
    for a in total_antialgebras().into_iter().chain([ak1(2)]) {
        let (p, q) = a.dims();
        println!("{:<14} {:>6}  {}", a.name, format!("{p}|{q}"), check_antialgebra(&a).overall().as_str());
    }
    for g in [osp12(), k1(2)] {
        let (p, q) = g.dims();
        println!("{:<14} {:>6}  Lie superalgebra", g.name, format!("{p}|{q}"));
    }
}
