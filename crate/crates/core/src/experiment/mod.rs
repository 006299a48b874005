//! Experiment documents, orchestration and result files.

mod record;
mod spec;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::channel::{run_bler, simulate_multiuser, user_bit_budgets};
use crate::code::{Code, SchemeKind};
use crate::decoding::Decoder;
use crate::dictionary::GramBudget;
use crate::error::{Error, Result};

pub use record::{append_csv, read_csv, SimRecord, CSV_VERSION_LINE};
pub use spec::{parse_spec, DecoderList, DictFamily, ExperimentSpec, SimMode, Sweep};

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Overrides the experiment's output directory.
    pub out_dir: Option<PathBuf>,
    /// Validate and build the code, but simulate nothing.
    pub dry_run: bool,
}

/// Wall time spent on one sweep point.
#[derive(Debug, Clone, Serialize)]
pub struct PointTiming {
    pub ebn0_db: f64,
    pub wall_time_s: f64,
}

/// What an experiment produced.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub digest: String,
    pub library_version: String,
    pub code: String,
    pub n_bits: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub user_bits: Option<Vec<usize>>,
    pub dry_run: bool,
    pub records: Vec<SimRecord>,
    pub timings: Vec<PointTiming>,
    pub wall_time_s: f64,
    pub files: Vec<PathBuf>,
}

/// Runs the simulation a spec describes and writes its result files.
pub fn run_experiment(spec: &ExperimentSpec, opts: &RunOptions) -> Result<ExperimentReport> {
    let start = Instant::now();
    spec.validate()?;
    let code = spec.code_spec().build(GramBudget::default())?;
    let decoders = spec.decoders()?;
    let sweep = spec.sweep.points()?;
    let digest = spec.digest();
    let multiuser = spec.multiuser();
    let user_bits = multiuser.as_ref().map(|mu| user_bit_budgets(&code, mu)).transpose()?;
    if code.n_bits() == 0 {
        return Err(Error::config("the code carries no message bits"));
    }
    if decoders.contains(&Decoder::Ml) && code.k() != 1 {
        return Err(Error::config("the exhaustive decoder needs K = 1"));
    }

    let mut report = ExperimentReport {
        digest: digest.clone(),
        library_version: env!("CARGO_PKG_VERSION").to_string(),
        code: code_label(spec, &code),
        n_bits: code.n_bits(),
        user_bits,
        dry_run: opts.dry_run,
        records: Vec::new(),
        timings: Vec::new(),
        wall_time_s: 0.0,
        files: Vec::new(),
    };
    if opts.dry_run {
        report.wall_time_s = start.elapsed().as_secs_f64();
        return Ok(report);
    }

    let mode = serde_json::to_value(spec.mode).expect("mode serializes");
    let base = |decoder: Decoder, ebn0_db: f64, trials: u64, errors: u64, per_user: &[u64]| SimRecord {
        mode: mode.as_str().unwrap_or_default().to_string(),
        scheme: match spec.scheme {
            SchemeKind::Sse => "sse".into(),
            SchemeKind::Sfe => "sfe".into(),
        },
        dict: code.dict().label().to_string(),
        n: code.dict().rows(),
        l: code.dict().cols(),
        k: code.k(),
        m: code.modulation().max_size(),
        decoder: decoder.to_string(),
        t: match decoder {
            Decoder::Pmad { paths } => paths,
            _ => 1,
        },
        ebn0_db,
        trials,
        errors,
        bler: errors as f64 / trials as f64,
        seed: spec.seed,
        digest: digest.clone(),
        max_trials: spec.max_trials,
        max_errors: spec.max_errors,
        per_user_errors: record::join_counts(per_user),
    };

    for &ebn0_db in &sweep {
        let t0 = Instant::now();
        match &multiuser {
            None => {
                let p = run_bler(&code, &decoders, &[ebn0_db], spec.budget(), spec.seed)?.remove(0);
                for (d, &dec) in decoders.iter().enumerate() {
                    report.records.push(base(dec, ebn0_db, p.trials, p.errors[d], &[]));
                }
            }
            Some(mu) => {
                let p = simulate_multiuser(&code, mu, decoders[0], &[ebn0_db], spec.budget(), spec.seed)?
                    .remove(0);
                report
                    .records
                    .push(base(decoders[0], ebn0_db, p.trials, p.any_errors, &p.per_user_errors));
            }
        }
        let wall = t0.elapsed().as_secs_f64();
        log::info!("{} dB done in {wall:.1} s", ebn0_db);
        report.timings.push(PointTiming {
            ebn0_db,
            wall_time_s: wall,
        });
    }
    report.wall_time_s = start.elapsed().as_secs_f64();

    let out = opts.out_dir.clone().or_else(|| spec.output.as_ref().map(PathBuf::from));
    if let Some(dir) = out {
        report.files = write_outputs(&dir, spec, &report)?;
    }
    Ok(report)
}

fn code_label(spec: &ExperimentSpec, code: &Code) -> String {
    format!(
        "({},{}) {} {} K={} M={}{}",
        code.real_dimensions(),
        code.n_bits(),
        code.dict().label(),
        match spec.scheme {
            SchemeKind::Sse => "sse",
            SchemeKind::Sfe => "sfe",
        },
        code.k(),
        spec.m,
        if spec.offset { " offset" } else { "" }
    )
}

#[derive(Serialize)]
struct Manifest<'a> {
    digest: &'a str,
    library_version: &'a str,
    code: &'a str,
    spec: serde_json::Value,
    timings: &'a [PointTiming],
    wall_time_s: f64,
}

#[derive(Serialize)]
struct JsonResults<'a> {
    format: &'a str,
    digest: &'a str,
    records: &'a [SimRecord],
}

/// Writes `results.csv` (appended), `results.json`, `manifest.json`,
/// `bler.dat` and `bler.gp` into `dir`.
pub fn write_outputs(dir: &Path, spec: &ExperimentSpec, report: &ExperimentReport) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let write = |name: &str, body: String| -> Result<PathBuf> {
        let p = dir.join(name);
        std::fs::write(&p, body).map_err(|e| Error::io(&p, e))?;
        Ok(p)
    };
    let csv_path = dir.join("results.csv");
    append_csv(&csv_path, &report.records)?;
    let json = JsonResults {
        format: CSV_VERSION_LINE.trim_start_matches("# "),
        digest: &report.digest,
        records: &report.records,
    };
    let manifest = Manifest {
        digest: &report.digest,
        library_version: &report.library_version,
        code: &report.code,
        spec: serde_json::from_str(&spec.canonical_json()).expect("canonical JSON parses"),
        timings: &report.timings,
        wall_time_s: report.wall_time_s,
    };
    let (dat, gp) = gnuplot(&report.records, &report.code);
    Ok(vec![
        csv_path,
        write("results.json", pretty(&json))?,
        write("manifest.json", pretty(&manifest))?,
        write("bler.dat", dat)?,
        write("bler.gp", gp)?,
    ])
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializes");
    s.push('\n');
    s
}

/// One data block per decoder (`ebn0_db bler trials errors`) and a script
/// plotting them on a log scale.
fn gnuplot(records: &[SimRecord], title: &str) -> (String, String) {
    let mut decoders: Vec<&str> = Vec::new();
    for r in records {
        if !decoders.contains(&r.decoder.as_str()) {
            decoders.push(&r.decoder);
        }
    }
    let mut dat = String::new();
    for (i, d) in decoders.iter().enumerate() {
        if i > 0 {
            dat.push_str("\n\n");
        }
        let _ = writeln!(dat, "# {d}\n# ebn0_db bler trials errors");
        for r in records.iter().filter(|r| r.decoder == *d) {
            let _ = writeln!(dat, "{} {:e} {} {}", r.ebn0_db, r.bler, r.trials, r.errors);
        }
    }
    let mut gp = String::new();
    let _ = writeln!(gp, "set title \"{}\"", title.replace('"', "'"));
    gp.push_str("set xlabel \"Eb/N0 (dB)\"\nset ylabel \"BLER\"\nset logscale y\nset grid\n");
    let plots: Vec<String> = decoders
        .iter()
        .enumerate()
        .map(|(i, d)| format!("'bler.dat' index {i} using 1:2 with linespoints title \"{d}\""))
        .collect();
    let _ = writeln!(gp, "plot {}", plots.join(", \\\n     "));
    (dat, gp)
}
