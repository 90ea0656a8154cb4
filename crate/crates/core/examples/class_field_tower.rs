//! Class groups from reduced forms and the Golod–Shafarevich test.

use gvforge::quadfield::{
    class_group_imaginary, genus_two_rank_lower, golod_shafarevich_check, make_field_i64,
    QuadraticField,
};

fn main() -> gvforge::Result<()> {
    for d in [-4i64, -23, -84, -420, -19399380] {
        let k = make_field_i64(d)?;
        let cg = class_group_imaginary(&k)?;
        let gs = golod_shafarevich_check(&k, cg.two_rank, 0);
        println!(
            "Δ = {d:<10} h = {:<6} d₂ = {} (genus bound {})  2+2√(0+1+1) = {:.4}  tower infinite: {}",
            cg.h,
            cg.two_rank,
            genus_two_rank_lower(&k),
            gs.threshold.to_f64(),
            gs.passes
        );
    }

    // the Theorem-2 field at ℓ = 125 only has the genus bound; the margin is thin
    for negative in [true, false] {
        let k = QuadraticField::primorial(125, negative)?;
        let d2 = genus_two_rank_lower(&k);
        for sc in [3657u64, 3658, 3659] {
            let gs = golod_shafarevich_check(&k, d2, sc);
            println!(
                "{}D, d₂ ≥ {d2}, |S_c| = {sc}: threshold {}  passes {}",
                if negative { "−" } else { "+" },
                gs.threshold.to_interval_string(10),
                gs.passes
            );
        }
    }
    Ok(())
}
