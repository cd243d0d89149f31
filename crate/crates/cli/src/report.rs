//! Output writers: fixed-format CSV for plotting/regression and a JSON run
//! manifest capturing everything needed to reproduce the run.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use unobs_core::StudySeries;

/// One CSV row, 17 significant digits, LF line endings. Wall-clock timings
/// are deliberately excluded so identical runs produce identical bytes;
/// they live in the manifest instead.
fn csv_value(x: f64) -> String {
    format!("{x:.16e}")
}

/// Column labels per experiment; the wave sweep repurposes the record
/// fields (see the core wave module).
pub fn csv_header(model: &str) -> &'static str {
    match model {
        "wave" => "n,energy0,boundary_energy,ratio",
        _ => "n,sigma_min,epsilon,index",
    }
}

pub fn write_csv(path: &Path, series: &StudySeries) -> std::io::Result<()> {
    let mut out = String::new();
    out.push_str(csv_header(&series.model));
    out.push('\n');
    for r in &series.records {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            csv_value(r.sigma_min),
            csv_value(r.epsilon),
            csv_value(r.index)
        ));
    }
    let mut file = std::fs::File::create(path)?;
    file.write_all(out.as_bytes())
}

#[derive(Serialize)]
struct ManifestRecord {
    n: usize,
    sigma_min: f64,
    epsilon: f64,
    index: f64,
    wall_time_s: f64,
}

#[derive(Serialize)]
pub struct Manifest {
    pub command: String,
    pub crate_version: String,
    pub resolved_config: BTreeMap<String, String>,
    records: Vec<ManifestRecord>,
    failures: Vec<(usize, String)>,
    pub warnings: Vec<String>,
    pub error: Option<String>,
    pub total_wall_time_s: f64,
}

impl Manifest {
    pub fn new(command: &str, resolved_config: BTreeMap<String, String>) -> Self {
        Manifest {
            command: command.to_string(),
            crate_version: env!("CARGO_PKG_VERSION").to_string(),
            resolved_config,
            records: Vec::new(),
            failures: Vec::new(),
            warnings: Vec::new(),
            error: None,
            total_wall_time_s: 0.0,
        }
    }

    pub fn record_series(&mut self, series: &StudySeries) {
        self.records = series
            .records
            .iter()
            .map(|r| ManifestRecord {
                n: r.n,
                sigma_min: r.sigma_min,
                epsilon: r.epsilon,
                index: r.index,
                wall_time_s: r.wall_time_s,
            })
            .collect();
        self.failures = series.failures.clone();
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let json = serde_json::to_string_pretty(self).expect("manifest serializes");
        let mut file = std::fs::File::create(path)?;
        file.write_all(json.as_bytes())?;
        file.write_all(b"\n")
    }
}

pub fn print_summary(series: &StudySeries, warnings: &[String]) {
    println!("model: {}  method: {}", series.model, series.method);
    println!("{}", csv_header(&series.model));
    for r in &series.records {
        println!(
            "{},{},{},{}",
            r.n,
            csv_value(r.sigma_min),
            csv_value(r.epsilon),
            csv_value(r.index)
        );
    }
    for (n, e) in &series.failures {
        println!("failed n={n}: {e}");
    }
    for w in warnings {
        println!("note: {w}");
    }
}
