//! A majorization violation that no Tsallis index sees, caught by the peaked family
//! at the recommended alpha = p_j^A.
//!
//! ```text
//! cargo run --example tsallis_blind_spot -- 0.35
//! ```

use majorlens::criteria::{self, jittered_alphas, QGrid, ALPHA_JITTER};
use majorlens::families::{self, FamilySpec};
use majorlens::Side;

fn main() -> majorlens::Result<()> {
    let x: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(0.35);
    let rho = families::build(&FamilySpec::new(3, vec![x, x])?)?;

    let (report, _) = criteria::disorder_check(&rho);
    println!("x = {x}: violated inequalities {:?}", report.violated_indices);

    let ts = criteria::tsallis_sweep(&rho, Side::A, &QGrid::default())?;
    println!("tsallis: detected={} min difference {:.3e} at {:?}", ts.detected, ts.margin, ts.best);

    for &j in &report.violated_indices {
        let alpha = criteria::recommend_alpha(&rho, Side::A, j)?;
        let v = criteria::peaked_search(&rho, Side::A, &jittered_alphas(&[alpha], ALPHA_JITTER), &[1e2, 1e3, 1e4])?;
        println!(
            "peaked, j = {j}, alpha = p_j^A = {alpha:.4}: detected={} margin {:.3e} witness {:?}",
            v.detected, v.margin, v.witness
        );
    }
    Ok(())
}
