//! Conditional entropy as a function of q, alpha and t at d = 3, x_1 = x_2 = x.
//! Prints a coarse table; `majorlens curve` writes the full CSV.
//!
//! ```text
//! cargo run --example curves
//! ```

use majorlens::families::FamilySpec;
use majorlens::scan::{curve_sweep, linspace, logspace, CurveAxis};

fn main() -> majorlens::Result<()> {
    let qs = logspace(0.1, 100.0, 13);
    println!("normalized Tsallis difference against q");
    for x in [0.30, 0.36, 0.40] {
        let rows = curve_sweep(&FamilySpec::new(3, vec![x, x])?, CurveAxis::Q, &qs, 0.0, 0.0)?;
        let cells: Vec<String> = rows.iter().map(|r| format!("{:+.3}", r.normalized)).collect();
        println!("  x={x:.2} {}", cells.join(" "));
    }

    println!("\npeaked difference against alpha, x = 0.4, t = 1e3");
    let spec = FamilySpec::new(3, vec![0.4, 0.4])?;
    for r in curve_sweep(&spec, CurveAxis::Alpha, &linspace(0.1, 0.5, 9), 0.0, 1e3)? {
        println!("  alpha={:.2} {:+.5}", r.parameter, r.difference);
    }

    println!("\npeaked difference against t, x = 0.4, alpha = 0.28");
    for r in curve_sweep(&spec, CurveAxis::T, &logspace(0.1, 1e4, 6), 0.28, 0.0)? {
        println!("  t={:<8.1} {:+.5}", r.parameter, r.difference);
    }
    Ok(())
}
