//! Sector map of the d = 3 triangle as CSV, plus cell-counted area fractions.
//!
//! ```text
//! cargo run --release --example region_map -- 201 triangle.csv
//! ```

use majorlens::scan::{self, GridSpec, ScanOptions, Sector};
use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufWriter;

fn main() -> majorlens::Result<()> {
    let mut args = std::env::args().skip(1);
    let steps: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(101);
    let out = args.next();

    let grid = GridSpec::triangle(3, steps);
    let opts = ScanOptions::default();
    let records = scan::grid_scan(&grid, &opts)?;

    let mut sectors: BTreeMap<String, usize> = BTreeMap::new();
    for r in records.iter().filter(|r| r.sector != Sector::Outside) {
        *sectors.entry(r.sector.to_string()).or_default() += 1;
    }
    for (s, n) in &sectors {
        println!("{s:<22} {n}");
    }

    let summary = scan::area_fractions(&grid)?;
    println!("entangled / region  {:.4} +- {:.4}", summary.entangled.value, summary.entangled.std_error);
    println!("disorder / entangled {:.4} +- {:.4}", summary.disorder_coverage.value, summary.disorder_coverage.std_error);

    if let Some(path) = out {
        let mut header = vec![format!("grid {}", grid.describe())];
        header.extend(opts.describe());
        scan::write_csv(&mut BufWriter::new(File::create(&path)?), &header, &records)?;
        println!("wrote {path}");
    }
    Ok(())
}
