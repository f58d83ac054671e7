// Closed-form norms and bounds over a grid of exponents.
use siegel_norms::cli::default_p_grid;
use siegel_norms::norms::{norm_table, TableSelection};

fn main() {
    for n in 0..3 {
        println!("n = {n}");
        println!("{:>8} {:>10} {:>12} {:>12} {:>12}", "p", "source", "lower", "upper", "conjectured");
        let grid: Vec<f64> = default_p_grid().into_iter().step_by(4).collect();
        for row in norm_table(n, &grid, TableSelection::all(Some(0.5))).unwrap() {
            let opt = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.6}"));
            println!(
                "{:>8.4} {:>12} {:>12.6} {:>12} {:>12}",
                row.p,
                row.source.as_str(),
                row.lower,
                opt(row.upper),
                opt(row.conjectured)
            );
        }
        println!();
    }
}
