// Sampled checks of the local chart tables, and the Jacobian scans.

use serre_sing::charts::{all_three_dimension_count, cone_scan, verify_table_row, LocalChartCase};
use serre_sing::field::FieldSpec;
use serre_sing::weights::Side;

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let k = FieldSpec::prime(7)?;
    for case in LocalChartCase::all(2) {
        for side in [Side::L, Side::R] {
            let r = verify_table_row(&case, side, k, 40, 7)?;
            println!("{case} {side:?}: class {} matches {}/{}", r.class, r.matches, r.trials);
            assert!(r.passed());
        }
    }

    let cone = cone_scan(FieldSpec::prime(5)?)?;
    println!("cone over F_5: {} points, singular {:?}, codim {}", cone.points, cone.singular, cone.codim);
    let d = all_three_dimension_count(2, FieldSpec::new(5, 2)?, 10, 1)?;
    println!("all-3 chart, f=2: dim {} non-normal {} codim {}", d.chart_dim, d.nonnormal_dim, d.codim);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
