// Verdicts by the closed-form rule and by chart shapes, then a census.

use std::collections::BTreeMap;

use serre_sing::classify::{classify_via_charts, classify_weight, enumerate_weights, DEFAULT_BOUND};
use serre_sing::weights::SerreWeight;

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (p, n) in [(5, vec![3, 3]), (5, vec![4, 4]), (7, vec![0, 5, 6]), (5, vec![0, 4])] {
        let w = SerreWeight::from_n(p, &n)?;
        let rule = classify_weight(&w);
        let charts = classify_via_charts(&w)?;
        println!("{w}: {} via {:?}; charts {:?}", rule.verdict.name(), rule.rule, charts.map(|c| c.verdict.name()));
    }

    let mut hist = BTreeMap::new();
    for row in enumerate_weights(5, 2, DEFAULT_BOUND, None)? {
        *hist.entry(row.rule.verdict.name()).or_insert(0) += 1;
    }
    println!("p=5 f=2: {hist:?}");
    assert_eq!(hist.values().sum::<i32>(), 25);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
