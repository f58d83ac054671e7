// Drives the command line in-process: writes a norm table as CSV and plots
// three of its columns as SVG.
use siegel_norms::cli::run_with;

fn main() {
    let dir = std::env::temp_dir().join("siegel-norms-example");
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("norms.csv");
    let svg = dir.join("norms.svg");

    let mut stderr = std::io::stderr();
    let args = ["siegel-norms", "--command", "norms", "--n", "1", "--out", csv.to_str().unwrap()];
    let code = run_with(args, None, &mut std::io::stdout(), &mut stderr);
    println!("norms exited with {code}; wrote {}", csv.display());

    let args = [
        "siegel-norms",
        "--command",
        "plot",
        "--input",
        csv.to_str().unwrap(),
        "--x",
        "p",
        "--columns",
        "lower,upper,conjectured",
        "--out",
        svg.to_str().unwrap(),
    ];
    let code = run_with(args, None, &mut std::io::stdout(), &mut stderr);
    println!("plot exited with {code}; wrote {}", svg.display());
    print!("{}", std::fs::read_to_string(&csv).unwrap().lines().take(6).collect::<Vec<_>>().join("\n"));
    println!();
}
