//! The four entropic families and conditional differences S_f(rho) - S_f(rho_A).
//!
//! ```text
//! cargo run --example entropic_forms
//! ```

use majorlens::entropy::{self, conditional, EntropicFamily};
use majorlens::families::{self, FamilySpec};
use majorlens::{BipartiteDensity, Side, Spectrum};

fn main() -> majorlens::Result<()> {
    let forms = [
        EntropicFamily::VonNeumann,
        EntropicFamily::tsallis(0.5)?,
        EntropicFamily::tsallis(3.0)?,
        EntropicFamily::peaked(0.28, 10.0)?,
        EntropicFamily::peaked(0.28, 1e3)?,
        EntropicFamily::peaked_limit(0.28)?,
    ];

    println!("f(p) on a few points");
    for f in &forms {
        let row: Vec<String> = [0.0, 0.1, 0.28, 0.5, 0.9, 1.0]
            .iter()
            .map(|&p| format!("{:7.4}", f.f(p).unwrap()))
            .collect();
        println!("  {:<26} {}", f.name(), row.join(" "));
    }

    let p = Spectrum::from_values(vec![0.5, 0.3, 0.15, 0.05]);
    println!("\nentropies of {:?}", p.values());
    for f in &forms {
        println!("  {:<26} {:.6}", f.name(), entropy::entropy(f, &p)?);
    }

    let spec = FamilySpec::new(3, vec![0.4, 0.4])?;
    let rho = families::build(&spec)?;
    println!("\nconditional differences at d=3, x=(0.4, 0.4)");
    for f in &forms {
        let r = conditional(f, &rho, Side::A)?;
        println!("  {:<26} {:+.6}  normalized {:+.6}", f.name(), r.difference, r.normalized);
    }

    // small t: peaked entropy / (t/4) approaches the Tsallis q = 2 entropy
    let mixed = BipartiteDensity::maximally_mixed((3, 3));
    for t in [1e-2, 5e-3, 2.5e-3] {
        let err = entropy::tsallis_q2_limit_check(&mixed, 0.5, t)?;
        println!("t = {t:<7} small-t deviation {err:.2e}");
    }
    Ok(())
}
