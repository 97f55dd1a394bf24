// Driving the command-line front end in process.

use serre_sing::cli;

fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(["serre-sing", "classify", "--p", "7", "--n", "0,5,6", "--format", "csv"], &mut out, &mut err);
    print!("{}", String::from_utf8(out)?);
    assert_eq!(code, 0);

    let mut out = Vec::new();
    let code =
        cli::run(["serre-sing", "enumerate", "--p", "5", "--f", "2", "--format", "markdown"], &mut out, &mut err);
    let text = String::from_utf8(out)?;
    println!("{}", text.lines().filter(|l| l.starts_with("- ")).collect::<Vec<_>>().join("\n"));
    assert_eq!(code, 0);

    let code = cli::run(["serre-sing", "enumerate", "--p", "13", "--f", "6"], &mut Vec::new(), &mut err);
    println!("over the bound: exit {code}");
    assert_eq!(code, 3);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
