//! Build a punctured Lenstra code, verify it by brute force and write it out.
//!
//!     cargo run --release --example lenstra_code -- -4 9 13 1

use gvforge::lenstra::{build_code, norm_gap_check, verify_code, write_code};
use gvforge::quadfield::make_field_i64;

fn main() -> gvforge::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .map(|s| s.parse().expect("arguments are integers"))
        .collect();
    let (disc, r, q, g) = match args.as_slice() {
        [d, r, q, g] => (*d, *r as u64, *q as u64, *g as u32),
        _ => (-4, 9, 13, 1),
    };
    let field = make_field_i64(disc)?;
    let code = build_code(&field, r, q, g, 0)?;
    println!("K = Q(√{}), ω = {}", field.disc(), field.omega_spec());
    for p in &code.ideals {
        println!("  P above {:<4} {:?} norm {}", p.p, p.split_type, p.norm);
    }
    println!("τ = ({}, {})", code.tau.0, code.tau.1);

    let rep = verify_code(&code)?;
    println!(
        "n = {}  M = {} (≥ {})  d = {} (≥ {})  {}",
        rep.n,
        rep.m,
        rep.m_bound,
        rep.d,
        rep.d_bound,
        if rep.ok { "ok" } else { "VIOLATED" }
    );
    let chain = norm_gap_check(&code)?;
    println!("norm chain: {} pairs, {} violations", chain.pairs_checked, chain.violations);

    println!();
    write_code(&code, std::io::stdout())?;
    Ok(())
}
