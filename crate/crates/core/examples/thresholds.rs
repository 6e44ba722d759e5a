//! Closed-form thresholds against numeric bisection along rays.
//!
//! ```text
//! cargo run --release --example thresholds
//! ```

use majorlens::families;
use majorlens::scan::{bisect_threshold, Criterion, RaySpec, ScanOptions};

fn onset(ray: &RaySpec, c: Criterion) -> majorlens::Result<String> {
    Ok(match bisect_threshold(ray, c, 1e-7, &ScanOptions::default())?.value() {
        Some(v) => format!("{v:.6}"),
        None => "none".into(),
    })
}

fn main() -> majorlens::Result<()> {
    for (d, n) in [(2, 1), (3, 2), (4, 3), (6, 5)] {
        let t = families::thresholds(d, n)?;
        println!("d={d} n={n} delta={:.4}", t.delta);
        let axis = RaySpec::axis(d, n, 0)?;
        let diag = RaySpec::diagonal(d, n)?;
        println!("  peres axis      {:.6}  bisected {}", t.peres_axis, onset(&axis, Criterion::Peres)?);
        println!("  peres diagonal  {:.6}  bisected {}", t.peres_diagonal, onset(&diag, Criterion::Peres)?);
        println!("  disorder axis   {:.6}  bisected {}", t.disorder_i1, onset(&axis, Criterion::Disorder)?);
        println!("  disorder diag   {:.6}  bisected {}", t.disorder_in, onset(&diag, Criterion::Disorder)?);
        for c in [Criterion::VonNeumann, Criterion::Tsallis] {
            println!("  {:<15} {:>8}  bisected {}", format!("{c:?}"), "", onset(&diag, c)?);
        }
    }
    Ok(())
}
