//! π(x; 4, 3) from the sieve against the explicit envelope
//! |π(x;4,3) − Li(x)/2| < 0.53 x/(ln x)², plus θ and the primorial.

use gvforge::numtheory::{chebyshev_theta, log_integral_many, nth_prime, primorial_d, sieve_primes};
use gvforge::HighReal;

fn main() -> gvforge::Result<()> {
    let limit = 2_000_000u64;
    let table = sieve_primes(limit)?;
    println!("π({limit}) = {}, π({limit}; 4, 3) = {}", table.pi(limit)?, table.pi_3mod4(limit)?);

    let xs: Vec<u64> = (1..=20).map(|i| i * limit / 20).collect();
    let li = log_integral_many(&xs.iter().map(|&x| HighReal::from_u64(x)).collect::<Vec<_>>())?;
    println!("{:>9} {:>8} {:>12} {:>10} {:>10}", "x", "π(x;4,3)", "Li(x)/2", "|diff|", "envelope");
    for (&x, li) in xs.iter().zip(&li) {
        let pi = table.pi_3mod4(x)? as f64;
        let half = li.to_f64() / 2.0;
        let env = 0.53 * x as f64 / (x as f64).ln().powi(2);
        println!("{x:>9} {pi:>8} {half:>12.2} {:>10.2} {env:>10.1}", (pi - half).abs());
    }

    let p = nth_prime(125)?;
    let theta = chebyshev_theta(p)?;
    let (d, ln_d) = primorial_d(125)?;
    println!("\np_125 = {p}, θ(p_125) = {theta:.12}");
    println!("(1 + 3/ln p)p = {:.6}", (1.0 + 3.0 / (p as f64).ln()) * p as f64);
    println!("D = 4·p₁⋯p₁₂₅ has {} digits, ln D = {ln_d:.12}", d.to_string().len());
    Ok(())
}
