//! The d = 6, n = 5 section x_1 = .. = x_4 = x against x_5: area shares by first
//! violated inequality, and the peaked alpha windows on two edges of the section.
//!
//! ```text
//! cargo run --release --example five_component_section
//! ```

use majorlens::families::FamilySpec;
use majorlens::scan::{self, classify_point, AlphaChoice, GridSpec, ScanOptions};

fn alpha_window(spec: &FamilySpec, alphas: &[f64]) -> Option<(f64, f64)> {
    let hits: Vec<f64> = alphas
        .iter()
        .copied()
        .filter(|&a| {
            let opts = ScanOptions {
                tsallis: false,
                alphas: AlphaChoice::Fixed(vec![a]),
                ts: vec![1e4],
                ..ScanOptions::default()
            };
            classify_point(spec, &opts).is_ok_and(|r| r.peaked.is_some_and(|v| v.detected))
        })
        .collect();
    Some((*hits.first()?, *hits.last()?))
}

fn main() -> majorlens::Result<()> {
    for steps in [150, 300, 600] {
        let s = scan::area_fractions(&GridSpec::five_component_section(6, steps, steps))?;
        let shares: Vec<String> = s
            .first_violation_share
            .iter()
            .map(|(j, f)| format!("i={j}: {:.4}", f.value))
            .collect();
        println!(
            "{steps:>4}^2 cells: separable {:.4}, disorder coverage {:.4}, first violation {}",
            s.separable.value,
            s.disorder_coverage.value,
            shares.join(", ")
        );
    }

    let alphas = scan::linspace(0.0, 0.5, 1001);
    println!("\nx5 = x (fifth inequality)");
    for x in [0.176, 0.185, 0.195, 0.1995] {
        println!("  x = {x:<7} alpha window {:?}", alpha_window(&FamilySpec::new(6, vec![x; 5])?, &alphas));
    }
    println!("x5 = 0 (fourth inequality)");
    for x in [0.205, 0.22, 0.24, 0.249] {
        println!("  x = {x:<7} alpha window {:?}", alpha_window(&FamilySpec::new(6, vec![x, x, x, x, 0.0])?, &alphas));
    }
    Ok(())
}
