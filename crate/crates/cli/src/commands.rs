use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use gsparc::code::DictionarySpec;
use gsparc::decoding::{check_recovery_guarantee, mad_decode_traced};
use gsparc::dictionary::{build_mub_dictionary, CensusEntry};
use gsparc::encoding::{bits_from_hex, bits_to_hex};
use gsparc::experiment::{run_experiment, ExperimentSpec, RunOptions, SimMode};
use gsparc::{Code, CodeSpec, Decoder, Error, GramBudget, Result, SparseCodeword};
use num_complex::Complex64;
use serde::Serialize;

use crate::input;
use crate::SimArgs;

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Format(e.to_string()))?;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        // A closed pipe (e.g. `| head`) is not worth an error.
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::io("<stdout>", e)),
        _ => Ok(()),
    }
}

fn load_code(arg: &str) -> Result<Code> {
    let text = input::json_text(arg)?;
    let spec: CodeSpec =
        serde_json::from_str(&text).map_err(|e| Error::config(format!("code description: {e}")))?;
    spec.build(GramBudget::default())
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Family {
    Gold,
    Mub,
}

#[derive(Args)]
pub struct DictArgs {
    #[arg(long, value_enum)]
    kind: Family,
    /// Sequence degree (gold: 3, 5, 7, 9; mub: 2..=9).
    #[arg(long)]
    n: u32,
    /// Keep only the first COLUMNS columns.
    #[arg(long)]
    columns: Option<usize>,
    /// Append the standard basis vector with this index.
    #[arg(long)]
    identity_column: Option<usize>,
    /// Write the matrix row-major as little-endian f64 (re, im for complex).
    #[arg(long)]
    dump: Option<PathBuf>,
    /// Skip the pairwise census, which is quadratic in L.
    #[arg(long)]
    no_census: bool,
    /// Check every cross-basis phase of a MUB dictionary.
    #[arg(long)]
    check_phases: bool,
}

#[derive(Serialize)]
struct DictReport {
    label: String,
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "L")]
    l: usize,
    field: gsparc::Field,
    mu: Option<f64>,
    alphabet: Vec<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    census: Option<Vec<CensusEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phases: Option<gsparc::dictionary::MubPhaseReport>,
}

pub fn dict(a: DictArgs) -> Result<()> {
    let spec = CodeSpec {
        dict: match a.kind {
            Family::Gold => DictionarySpec::Gold { n: a.n },
            Family::Mub => DictionarySpec::Mub { n: a.n },
        },
        columns: a.columns,
        identity_column: a.identity_column,
        scheme: gsparc::code::SchemeKind::Sse,
        k: 1,
        m: 1,
        offset: false,
        partition: None,
    };
    let d = spec.build_dictionary()?;
    if let Some(path) = &a.dump {
        let f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        d.write_binary(BufWriter::new(f)).map_err(|e| Error::io(path, e))?;
    }
    let phases = if a.check_phases {
        if !matches!(a.kind, Family::Mub) {
            return Err(Error::config("--check-phases applies to mub dictionaries"));
        }
        let full = build_mub_dictionary(a.n)?;
        Some(full.check_mub_phases()?)
    } else {
        None
    };
    let census = (!a.no_census).then(|| d.correlation_census(0..d.cols()));
    let mu = census
        .as_ref()
        .map(|c| c.iter().map(|e| e.value.norm()).fold(0.0, f64::max));
    print_json(&DictReport {
        label: d.label().to_string(),
        n: d.rows(),
        l: d.cols(),
        field: d.field(),
        mu,
        alphabet: d.entry_alphabet(),
        census,
        phases,
    })
}

#[derive(Args)]
pub struct EncodeArgs {
    /// Code description: a JSON file or inline JSON.
    #[arg(long)]
    code: String,
    /// Message bits as hex (most significant first).
    #[arg(long)]
    bits: String,
    /// Also print the length-N codeword `A x`.
    #[arg(long)]
    codeword: bool,
}

#[derive(Serialize)]
struct EncodeReport {
    n_bits: usize,
    bits: String,
    support: Vec<usize>,
    symbols: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    codeword: Option<Vec<Complex64>>,
}

pub fn encode(a: EncodeArgs) -> Result<()> {
    let code = load_code(&a.code)?;
    let bits = bits_from_hex(&a.bits, code.n_bits())?;
    let word = code.encode(&bits)?;
    print_json(&EncodeReport {
        n_bits: code.n_bits(),
        bits: bits_to_hex(&bits),
        support: word.support().to_vec(),
        symbols: word.symbol_indices().to_vec(),
        codeword: a.codeword.then(|| word.codeword(code.dict())),
    })
}

#[derive(Args)]
pub struct DecodeBitsArgs {
    #[arg(long)]
    code: String,
    /// Selected columns, comma separated.
    #[arg(long)]
    support: String,
    /// Constellation indices aligned with the support, comma separated.
    #[arg(long)]
    symbols: String,
}

#[derive(Serialize)]
struct BitsReport {
    n_bits: usize,
    bits: String,
}

fn codeword_from_indices(code: &Code, support: &[usize], symbols: &[usize]) -> Result<SparseCodeword> {
    if support.len() != symbols.len() {
        return Err(Error::invalid(format!(
            "{} columns but {} symbols",
            support.len(),
            symbols.len()
        )));
    }
    let entries = support
        .iter()
        .zip(symbols)
        .map(|(&col, &m)| {
            let c = code
                .constellation_of(col)
                .ok_or_else(|| Error::invalid(format!("column {col} carries no message")))?;
            if m >= c.len() {
                return Err(Error::invalid(format!("symbol {m} is outside the {}-point alphabet", c.len())));
            }
            Ok((col, m, c.symbol(m)))
        })
        .collect::<Result<_>>()?;
    SparseCodeword::new(entries)
}

pub fn decode_bits(a: DecodeBitsArgs) -> Result<()> {
    let code = load_code(&a.code)?;
    let word = codeword_from_indices(&code, &input::index_list(&a.support)?, &input::index_list(&a.symbols)?)?;
    let bits = code.decode_bits(&word)?;
    print_json(&BitsReport {
        n_bits: code.n_bits(),
        bits: bits_to_hex(&bits),
    })
}

#[derive(Args)]
pub struct DecodeArgs {
    #[arg(long)]
    code: String,
    /// Observation file: a JSON array of numbers or [re, im] pairs, or
    /// text with one `re [im]` per line.
    #[arg(long)]
    observation: PathBuf,
    /// mad, pmad-<T>, omp or ml.
    #[arg(long, default_value = "mad")]
    decoder: String,
    /// Report every greedy decision (mad only).
    #[arg(long)]
    trace: bool,
}

#[derive(Serialize)]
struct DecodeReport {
    decoder: String,
    n_bits: usize,
    bits: String,
    support: Vec<usize>,
    symbols: Vec<usize>,
    residual_norm: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<gsparc::decoding::TraceStep>>,
}

pub fn decode(a: DecodeArgs) -> Result<()> {
    let code = load_code(&a.code)?;
    let decoder: Decoder = a.decoder.parse()?;
    let y = input::observation(&a.observation)?;
    let (word, trace) = if a.trace {
        if decoder != Decoder::Mad {
            return Err(Error::config("--trace is only available for the mad decoder"));
        }
        let (w, t) = mad_decode_traced(&y, &code, None)?;
        (w, Some(t))
    } else {
        (decoder.decode(&y, &code)?, None)
    };
    let s = word.codeword(code.dict());
    let residual_norm = y.iter().zip(&s).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
    let bits = code.decode_bits(&word)?;
    print_json(&DecodeReport {
        decoder: decoder.to_string(),
        n_bits: code.n_bits(),
        bits: bits_to_hex(&bits),
        support: word.support().to_vec(),
        symbols: word.symbol_indices().to_vec(),
        residual_norm,
        trace,
    })
}

#[derive(Clone, Copy)]
pub enum SimKind {
    Bler,
    Mac,
    Interference,
}

pub fn simulate(a: SimArgs, kind: SimKind) -> Result<()> {
    // Validation waits until the subcommand has settled the mode.
    let mut spec: ExperimentSpec = serde_json::from_str(&input::json_text(&a.spec)?)
        .map_err(|e| Error::config(format!("experiment spec: {e}")))?;
    spec.mode = match (kind, spec.mode) {
        (SimKind::Bler, SimMode::Single) => SimMode::Single,
        (SimKind::Mac, SimMode::Single | SimMode::Mac) => SimMode::Mac,
        (SimKind::Interference, m @ (SimMode::Interference | SimMode::Broadcast)) => m,
        (_, m) => {
            let name = serde_json::to_value(m).ok().and_then(|v| v.as_str().map(String::from));
            return Err(Error::config(format!(
                "spec mode '{}' does not fit this subcommand",
                name.unwrap_or_default()
            )));
        }
    };
    if let Some(seed) = a.seed {
        spec.seed = seed;
    }
    spec.validate()?;
    let report = run_experiment(
        &spec,
        &RunOptions {
            out_dir: a.out,
            dry_run: a.dry_run,
        },
    )?;
    print_json(&report)
}

#[derive(Args)]
pub struct GuaranteeArgs {
    /// Take mu, gamma and K from a code description.
    #[arg(long, conflicts_with_all = ["mu", "gamma"])]
    code: Option<String>,
    /// Dictionary coherence.
    #[arg(long, requires = "gamma")]
    mu: Option<f64>,
    /// Constellation coherence.
    #[arg(long, requires = "mu", allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Sparsity; defaults to the code's K.
    #[arg(long)]
    k: Option<usize>,
}

pub fn guarantee(a: GuaranteeArgs) -> Result<()> {
    let (mu, gamma, k) = match (&a.code, a.mu, a.gamma) {
        (Some(c), _, _) => {
            let code = load_code(c)?;
            (code.dict().coherence(), code.modulation().gamma(), a.k.unwrap_or(code.k()))
        }
        (None, Some(mu), Some(gamma)) => {
            let k = a.k.ok_or_else(|| Error::config("--k is required with --mu and --gamma"))?;
            (mu, gamma, k)
        }
        _ => return Err(Error::config("give either --code or both --mu and --gamma")),
    };
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(Error::config(format!("mu = {mu} is outside (0, 1]")));
    }
    print_json(&check_recovery_guarantee(mu, gamma, k))
}
