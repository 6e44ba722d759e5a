//! Densities, spectra, reduced states and the partial transpose.
//!
//! ```text
//! cargo run --example spectra
//! ```

use majorlens::bipartite::{partial_trace, partial_transpose};
use majorlens::hermitian::{self, HermitianOperator};
use majorlens::{BipartiteDensity, Side};
use num_complex::Complex64;

fn show(label: &str, values: &[f64]) {
    let v: Vec<String> = values.iter().map(|x| format!("{x:.4}")).collect();
    println!("  {label:<10} [{}]", v.join(", "));
}

fn main() -> majorlens::Result<()> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let c = |re| Complex64::new(re, 0.0);

    // (|00> + |11>)/sqrt 2
    let bell = BipartiteDensity::pure(&[c(h), c(0.0), c(0.0), c(h)], (2, 2))?;
    println!("Bell state");
    show("rho", bell.spectrum().values());
    show("rho_A", bell.reduced_spectrum(Side::A).values());
    show("rho^T_B", hermitian::eigenvalues(&partial_transpose(&bell)).values());

    let a = HermitianOperator::diagonal(&[0.7, 0.3]);
    let b = HermitianOperator::diagonal(&[0.5, 0.25, 0.25]);
    let prod = BipartiteDensity::product(&a, &b)?;
    println!("product 2x3");
    show("rho", prod.spectrum().values());
    show("rho_A", prod.reduced_spectrum(Side::A).values());
    show("rho_B", prod.reduced_spectrum(Side::B).values());
    println!("  Tr_B rho = a: {}", partial_trace(&prod, Side::A).max_abs_diff(&a) < 1e-15);

    // a complex Hermitian matrix and its eigenvectors
    let m = HermitianOperator::from_rows(&[
        vec![c(2.0), Complex64::new(0.0, 1.0)],
        vec![Complex64::new(0.0, -1.0), c(2.0)],
    ])?;
    let eig = hermitian::eigen_decomposition(&m);
    show("eig", eig.spectrum.values());
    println!("  reconstruction error {:.1e}", eig.reconstruct().max_abs_diff(&m));

    // the JSON exchange format used by `majorlens analyze --density`
    let json = serde_json::to_string(&bell.to_json())?;
    println!("{json}");
    let back = BipartiteDensity::from_json(&serde_json::from_str(&json)?)?;
    assert_eq!(back, bell);
    Ok(())
}
