// Finite fields, matrices over them, and 2x2 Laurent matrices.

use serre_sing::field::FieldSpec;
use serre_sing::laurent::{is_in_a_eta, LaurentPoly, Mat2Laurent};
use serre_sing::linalg::{kernel_basis, matrix_rank, GFMatrix};

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let k = FieldSpec::new(5, 2)?;
    let g = k.generator();
    println!("F_25: g^24 = {}, g^12 = {}", g.pow(24), g.pow(12));

    let m = GFMatrix::from_ints(k, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
    let ker = kernel_basis(&m);
    println!("rank {} nullity {}", matrix_rank(&m), ker.len());
    assert_eq!(matrix_rank(&m) + ker.len(), 3);

    // [[v, 1], [0, 1]] has determinant v and lies in A(eta)
    let v = LaurentPoly::v_pow(k, 1);
    let one = LaurentPoly::one(k);
    let w = Mat2Laurent::new(v.clone(), one.clone(), LaurentPoly::zero(k), one);
    println!("det = {}, v-valuation {}", w.det(), w.det().v_valuation()?);
    assert!(is_in_a_eta(&w));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
