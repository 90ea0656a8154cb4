//! GV, its asymptotic form, Plotkin and the best certified number-field bound
//! over a δ grid, printed as CSV.
//!
//!     cargo run --release --example bounds_table -- 4398046511104

use gvforge::bounds::{bound_sweep, gv_asymptotic, parse_delta_grid, write_csv};
use gvforge::numtheory::SIEVE_CAPACITY;

fn main() -> gvforge::Result<()> {
    let q: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("q must be an integer"))
        .unwrap_or(1 << 42);
    let deltas = parse_delta_grid("0.05:0.95:0.05")?;
    let rows = bound_sweep(&[q], &deltas, 64, SIEVE_CAPACITY)?;
    write_csv(&rows, std::io::stdout())?;

    // the asymptotic form is within O(1/(q ln q)) of the exact one
    eprintln!("\nδ      gv − gv_asymptotic");
    for (row, d) in rows.iter().zip(&deltas) {
        let gap = &row.gv - &gv_asymptotic(q, d)?;
        eprintln!("{:<6} {:+.3e}", row.delta, gap.to_f64());
    }
    Ok(())
}
