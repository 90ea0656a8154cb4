//! The finite-q stand-in ln(1/(1 − δ − R))/ln q for η(δ), from GV and from the
//! searched number-field bound. A trend over q, not a limit.

use gvforge::bounds::{growth_proxy, gv_bound, search_params, Delta};

fn main() -> gvforge::Result<()> {
    let half = Delta::half();
    println!("{:>16} {:>12} {:>12}", "q", "η from GV", "η from NFC");
    for e in [24u32, 30, 36, 42, 48, 54, 60] {
        let q = 1u64 << e;
        let gv = growth_proxy(q, &half, &gv_bound(q, &half)?)?;
        let nfc = match search_params(q, &half, 32) {
            Ok(res) => growth_proxy(q, &half, &res.nfc).map(|v| format!("{:.5}", v.to_f64())),
            Err(e) => Ok(format!("({e})")),
        }?;
        println!("{:>16} {:>12.5} {:>12}", format!("2^{e}"), gv.to_f64(), nfc);
    }
    Ok(())
}
