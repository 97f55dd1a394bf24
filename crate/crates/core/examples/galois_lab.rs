// Extensions of rank-one modules, the non-CM basis reduction, and base change.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serre_sing::field::FieldSpec;
use serre_sing::galois::{
    base_change_split_check, ext_matrix, frobenius_exponents, noncm_basis_reduction, random_noncm_frame,
    split_extension, ExtensionProblem, SplitOutcome,
};

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let k = FieldSpec::new(5, 2)?;
    let (a, b) = (k.int(2), k.generator());
    println!("det ext_matrix(4) = {}, a - b = {}", ext_matrix(k, 4, a, b)?.determinant()?, a - b);

    let one = k.one();
    for lpp0 in [k.int(3), one] {
        let prob = ExtensionProblem::new(vec![one, k.int(2)], vec![lpp0, k.int(2)], vec![one, k.int(4)])?;
        match split_extension(&prob)? {
            SplitOutcome::Split { alpha } => println!("lambda''_0 = {lpp0}: split, alpha = {alpha:?}"),
            SplitOutcome::NonSplit1Dim { obstruction } => println!("lambda''_0 = {lpp0}: obstruction {obstruction}"),
        }
    }

    let d = frobenius_exponents(3, 5)?;
    println!("l0 = {}, l1 = {}", d.l0, d.l1);

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f5 = FieldSpec::prime(5)?;
    let r = noncm_basis_reduction(&random_noncm_frame(f5, 3, &mut rng))?;
    println!("alpha_0 = {} (over F_5^{}), top-right zero: {}", r.alpha0, r.field.degree(), r.top_right_zero);

    assert!(base_change_split_check(f5.int(3), f5.one(), 2, &[1, 2])?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
