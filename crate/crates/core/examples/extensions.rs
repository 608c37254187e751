//! Cocycle and coboundary spaces, and the central extensions of the
//! Heisenberg antialgebra.

use antialgebra::catalog::{ah, ah_hat, total_antialgebras};
use antialgebra::extensions::{cocycle_from_coords, cocycle_space, extend_central, ExtType};
use antialgebra::scalar::Scalar;

fn main() {
    for a in total_antialgebras() {
        let line: Vec<String> = [ExtType::I, ExtType::II]
            .into_iter()
            .map(|t| {
                let s = cocycle_space(&a, t).expect("total algebra");
                format!("{}: Z {} B {} H {}", t.as_str(), s.dim_z(), s.dim_b(), s.dim_h())
            })
            .collect();
        println!("{:<12} {}", a.name, line.join("   "));
    }
    let base = ah(1);
    let c = cocycle_from_coords(&base, ExtType::I, &[Scalar::one(), Scalar::zero()]);
    let e = extend_central(&base, &c, "z").expect("a cocycle");
    println!("ah1 extended by C(alpha, a) = 1 equals {}: {}", ah_hat().name, e.upper_entries() == ah_hat().upper_entries());
}
