//! Certify every inequality of the Theorem-2 schedule at one q.
//!
//!     cargo run --release --example theorem2_certificate -- 4398046511104

use gvforge::bounds::{certify_theorem2, final_inequality_scan, threshold_q};

fn main() -> gvforge::Result<()> {
    let q: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("q must be an integer"))
        .unwrap_or(1 << 42);
    println!("Q = ⌈e^29⌉ = {}", threshold_q());
    let cert = certify_theorem2(q)?;
    let w = &cert.witness;
    println!("q = {q}: r = {}, ℓ = {}, k = {}, p_ℓ = {}, N_q = {}", w.r, w.ell, w.k, w.p_ell, w.nq);
    for c in &cert.checks {
        let fmt = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.6}"));
        println!(
            "{:<26} {:>18} {} {:<18} margin {:<14} {}",
            c.name,
            fmt(c.lhs),
            c.relation,
            fmt(c.rhs),
            fmt(c.margin),
            c.status
        );
    }
    for w in &cert.warnings {
        println!("warning: {w}");
    }
    println!("overall: {}", cert.overall);

    let scan = final_inequality_scan(125, 100_000)?;
    println!(
        "final inequality on [125, 1e5]: holds = {}, smallest margin {:.3} at ℓ = {}",
        scan.holds, scan.min_margin, scan.argmin
    );
    Ok(())
}
