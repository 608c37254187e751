//! Structure reports and simplicity certificates across the catalog.

use antialgebra::algebra::{analyze, is_simple, Simplicity};
use antialgebra::catalog::total_antialgebras;

fn main() {
    for a in total_antialgebras() {
        let r = analyze(&a).expect("total algebra");
        let verdict = match is_simple(&a, &[5, 7, 11, 13]).expect("total algebra") {
            Simplicity::Simple { prime } => format!("simple (irreducible mod {prime})"),
            Simplicity::NotSimple { ideal, reason } => format!("not simple: {reason}, ideal of dim {}", ideal.len()),
            Simplicity::Unknown => "unknown".into(),
        };
        println!(
            "{:<12} rank {} ample {:<5} unital {:<5} center {:?}  {verdict}",
            a.name,
            r.rank,
            r.ample,
            r.unital.is_some(),
            r.fingerprint.center_dims,
        );
    }
}
