use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use superharm_cli::acceptance::{run_all, Grid, MAX_M, MAX_N};

/// Runs the acceptance criteria over m ≤ 4, n ≤ 3 and prints one line each.
#[derive(Parser)]
struct Args {
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let start = Instant::now();
    let grid = Grid::new(MAX_M, MAX_N);
    let results = superharm_cli::pool(args.jobs).install(|| {
        run_all(&grid, |c| {
            println!("{c}  [{:.1?}]", start.elapsed());
        })
    });
    let passed = results.iter().filter(|c| c.passed).count();
    println!(
        "{passed}/{} criteria passed in {:.1?}",
        results.len(),
        start.elapsed()
    );
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
