// Chart classes per shape tuple and the decomposition into sequences.

use serre_sing::shapes::{build_t_decomposition, min_star_length, shape_table, ChartClass};
use serre_sing::weights::{profile_for_weight, SerreWeight};

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let w = SerreWeight::from_n(5, &[0, 3, 4])?;
    let (_, profile) = profile_for_weight(&w).ok_or("not applicable")?;
    for (shape, classes, dec) in shape_table(&profile)? {
        let names: Vec<_> = shape.iter().map(|s| s.name()).collect();
        let cls: Vec<_> = classes.iter().map(|c| c.to_string()).collect();
        match dec {
            Some(d) => println!("{names:?} -> {cls:?}, star {:?}", d.star),
            None => println!("{names:?} -> {cls:?}, empty chart"),
        }
    }
    println!("min star length - 1: {:?}", min_star_length(&profile)?);

    use ChartClass::*;
    let d = build_t_decomposition(&[Two, Three, Three, Five])?;
    assert_eq!(d.star.len(), 1);
    assert_eq!(d.star[0].len, 4);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
