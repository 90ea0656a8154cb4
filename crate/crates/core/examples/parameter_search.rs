//! Search (r, ℓ, k) for the largest certified R_NFC and compare it with the
//! fixed Theorem-2 schedule and with GV.

use gvforge::bounds::{certify_theorem2, check_conditions, nfc_bound, search_params, Delta};

fn main() -> gvforge::Result<()> {
    let q = 1u64 << 42;
    let half = Delta::half();
    for budget in [4, 16, 64] {
        let res = search_params(q, &half, budget)?;
        let w = &res.witness;
        println!(
            "budget {budget:>3}: r = {:<14} ℓ = {:<4} k = {:<5} nfc = {:.8}  gv = {:.8}  beats GV: {} ({} candidates)",
            w.r(),
            w.ell(),
            w.k(),
            res.nfc.to_f64(),
            res.gv.to_f64(),
            res.beats_gv,
            res.candidates
        );
    }
    let cert = certify_theorem2(q)?;
    let s = &cert.witness;
    let sched = check_conditions(q, s.r, s.ell, s.k as u64)?;
    println!("schedule: r = {} ℓ = {} k = {} nfc = {:.8}", s.r, s.ell, s.k, nfc_bound(q, &half, &sched)?.to_f64());

    for q in [100u64, 1 << 20, 1 << 30] {
        match search_params(q, &half, 64) {
            Ok(res) => println!("q = {q}: nfc = {:.6}, gv = {:.6}, beats GV: {}", res.nfc.to_f64(), res.gv.to_f64(), res.beats_gv),
            Err(e) => println!("q = {q}: {e}"),
        }
    }
    Ok(())
}
