//! Builds the Lie superalgebra of an antialgebra and compares it with the
//! derivations: for K₃ both are osp(1|2).

use antialgebra::algebra::{check_linear_map, MapKind};
use antialgebra::axioms::check_superalgebra;
use antialgebra::bridge::{build_ga, compute_der, k3_osp_map, t_homomorphism};
use antialgebra::catalog::{ah, k3, osp12, total_antialgebras};

fn main() {
    let a = k3();
    let br = build_ga(&a).expect("K3 is an antialgebra");
    let der = compute_der(&a).expect("total algebra");
    println!("g_K3 dims {:?}, Der(K3) dims {:?}", br.superalgebra.dims(), der.algebra.dims());
    let t = t_homomorphism(&a, &br);
    println!("T: rank {}, homomorphism into Der: {}", t.rank, t.passed());
    let f = k3_osp_map(&a, &der).expect("osp(1|2) map");
    let ok = check_linear_map(&f, &osp12(), &der.algebra, MapKind::Homomorphism).expect("shapes").passed();
    println!("osp(1|2) -> Der(K3) is a homomorphism of rank {}: {ok}", f.matrix.rank());

    let h = ah(2);
    let g = build_ga(&h).expect("ah_2 is an antialgebra");
    println!("g_{} dims {:?}, Der dims {:?}", h.name, g.superalgebra.dims(), compute_der(&h).expect("total").algebra.dims());

    for a in total_antialgebras() {
        let g = build_ga(&a).expect("catalog entries are antialgebras");
        println!("{:<12} g_a dims {:?} super-Jacobi {}", a.name, g.superalgebra.dims(), check_superalgebra(&g.superalgebra).clean());
    }
}
