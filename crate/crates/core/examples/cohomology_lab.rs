// Class-3 Čech complex, Künneth vanishing, and the E1 edge maps.

use serre_sing::cohomology::{
    cech_class3, cech_class3_stable, e1_cokernel_rank_all3, e1_cokernel_rank_star, h1_fiber_scan,
    koszul_vanishing_pattern,
};
use serre_sing::field::FieldSpec;
use serre_sing::shapes::ChartClass;

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let k = FieldSpec::prime(5)?;
    for sum in -2..=2 {
        let r = cech_class3(k, sum, 4, 8)?;
        println!(
            "sum {sum:>2}: generated {} relations complete {} (missing {}), h1 {}, stable {}",
            r.h0_generated,
            r.relations_complete,
            r.missing_syzygies,
            r.h1_dim,
            cech_class3_stable(k, sum, 4, 8)?
        );
    }
    let s = h1_fiber_scan(FieldSpec::new(5, 2)?, 2, 50, 3)?;
    println!("H^1 fiber: origin {}, max off origin {}", s.origin_rank, s.off_origin_max_rank);

    use ChartClass::*;
    for classes in [[Three, Three], [Three, Four]] {
        println!("R^2 Gamma(wedge^2 E) nonzero on {classes:?}: {}", koszul_vanishing_pattern(&classes, 2, 2)?);
    }

    for f in 1..=3 {
        let r = e1_cokernel_rank_all3(k, f)?;
        println!("all-3 f={f}: {} -> {}, cokernel {}", r.domain_dim, r.codomain_dim, r.cokernel_rank);
    }
    let min = e1_cokernel_rank_star(k, 5, 20, 11)?.iter().map(|r| r.cokernel_rank).min();
    println!("star l=5: min cokernel {min:?}");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
