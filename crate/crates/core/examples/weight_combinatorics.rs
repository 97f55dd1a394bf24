// From a Serre weight to gamma, the maximal intervals and the type profile.

use serre_sing::weights::{compute_m, gamma_from_weight, origin_rotation, profile_for_weight, SerreWeight};

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let w = SerreWeight::from_n(7, &[0, 5, 6])?;
    let g = gamma_from_weight(&w);
    println!("{w}: gamma = {:?}, hypothesis {}", g.gamma, g.hypothesis_ok);
    let m = compute_m(&g)?;
    println!("intervals {:?}, rotation {:?}", m.intervals, origin_rotation(&g));

    let (shift, profile) = profile_for_weight(&w).ok_or("no admissible relabelling")?;
    println!("relabelled by {shift}");
    for (j, e) in profile.entries.iter().enumerate() {
        println!("  j={j}: k={} s={} side={:?}", e.k, e.s.name(), e.side);
    }
    assert!(profile.check_invariants());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
