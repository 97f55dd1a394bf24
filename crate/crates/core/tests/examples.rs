//! Every example runs to completion.

macro_rules! example {
    ($name:ident, $file:literal) => {
        mod $name {
            #![allow(dead_code)]
            include!($file);

            #[test]
            fn runs() {
                run_example().unwrap();
            }
        }
    };
}

example!(exact_algebra, "../examples/exact_algebra.rs");
example!(weight_combinatorics, "../examples/weight_combinatorics.rs");
example!(shape_classes, "../examples/shape_classes.rs");
example!(classify_weights, "../examples/classify_weights.rs");
example!(chart_lab, "../examples/chart_lab.rs");
example!(cohomology_lab, "../examples/cohomology_lab.rs");
example!(galois_lab, "../examples/galois_lab.rs");
example!(cli_report, "../examples/cli_report.rs");
