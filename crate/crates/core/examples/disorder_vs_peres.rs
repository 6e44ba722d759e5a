//! Majorization against the partial transpose on the d = 3 family, with the
//! closed-form predictions and the explicit separable decomposition.
//!
//! ```text
//! cargo run --example disorder_vs_peres
//! ```

use majorlens::criteria;
use majorlens::families::{self, FamilySpec};

fn main() -> majorlens::Result<()> {
    println!("{:>14} {:>10} {:>10} {:>10} {:>10}", "x", "sigma", "peres", "violated", "predicted");
    for x in [[0.05, 0.05], [0.1, 0.1], [0.2, 0.0], [0.3, 0.3], [0.35, 0.35], [0.4, 0.0], [0.6, -0.05], [0.5, 0.5]] {
        let spec = FamilySpec::new(3, x.to_vec())?;
        let rho = families::build(&spec)?;
        let (a, _) = criteria::disorder_check(&rho);
        println!(
            "{:>14} {:>10.5} {:>10.5} {:>10} {:>10}",
            format!("{:?}", x),
            families::sigma_min_pt(&spec),
            criteria::peres_check(&rho),
            format!("{:?}", a.violated_indices),
            format!("{:?}", families::violation_predictor(&spec)?),
        );
    }

    let spec = FamilySpec::new(3, vec![0.08, 0.03])?;
    if let Some(w) = families::separability_witness(&spec) {
        println!("\n(0.08, 0.03) is separable: weights {:?}, slacks {:?}", w.weights, w.slacks);
    }

    // depletion: negative weights entangle at d = 6 without any majorization violation
    let dep = FamilySpec::new(6, vec![-1.0 / 31.0; 5])?;
    let rho = families::build(&dep)?;
    println!(
        "d=6, x_i = -1/31: sigma {:.5}, violations {:?}",
        families::sigma_min_pt(&dep),
        criteria::disorder_check(&rho).0.violated_indices
    );
    Ok(())
}
