//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! `cargo test -p gsparc --test acceptance` runs everything (tens of
//! minutes on one core); append criterion numbers after `--` to run a subset.

use std::collections::HashMap;
use std::time::Instant;

use gsparc::channel::{
    clopper_pearson, draw_multiuser_trial, draw_trial, is_non_increasing, run_bler, simulate_multiuser,
    user_bit_budgets, MultiUserConfig, MultiUserMode, PointResult, TrialBudget,
};
use gsparc::decoding::check_recovery_guarantee;
use gsparc::encoding::{binom, partition_subblocks, sfe_bit_budget, sfe_rank, sfe_unrank, Constellation};
use gsparc::experiment::{parse_spec, run_experiment, RunOptions};
use gsparc::{Code, CodeSpec, Decoder, GramBudget};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{DiscreteCDF, Hypergeometric};

const TOL: f64 = 1e-12;
const ALPHA: f64 = 0.05;

type Outcome = Result<(), String>;

fn check(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn code(json: &str) -> Code {
    serde_json::from_str::<CodeSpec>(json)
        .expect("code description")
        .build(GramBudget::default())
        .expect("code builds")
}

fn random_bits(rng: &mut ChaCha8Rng, n: usize) -> Vec<bool> {
    (0..n).map(|_| rng.random()).collect()
}

// ---------------------------------------------------------------------------

fn dictionary_structure() -> Outcome {
    let gold = CodeSpec {
        dict: gsparc::code::DictionarySpec::Gold { n: 7 },
        columns: None,
        identity_column: None,
        scheme: gsparc::code::SchemeKind::Sse,
        k: 1,
        m: 1,
        offset: false,
        partition: None,
    }
    .build_dictionary()
    .map_err(|e| e.to_string())?;
    check(gold.rows() == 127 && gold.cols() == 16384, || {
        format!("gold(7) is {} x {}", gold.rows(), gold.cols())
    })?;
    check((gold.coherence() - 17.0 / 127.0).abs() < TOL, || {
        format!("gold(7) mu = {}", gold.coherence())
    })?;
    // The last column is e_0; the Gold sequences and their shifts come first.
    let census = gold.correlation_census(0..gold.cols() - 1);
    let values: Vec<f64> = census.iter().map(|e| e.value.re).collect();
    let expected = [-17.0 / 127.0, -1.0 / 127.0, 15.0 / 127.0];
    check(
        values.len() == 3
            && values.iter().zip(expected).all(|(v, x)| (v - x).abs() < TOL)
            && census.iter().all(|e| e.value.im == 0.0),
        || format!("gold(7) correlation values {values:?}"),
    )?;
    println!(
        "    gold(7): N=127 L=16384 mu=17/127, values {{-17,-1,15}}/127 with counts {:?}",
        census.iter().map(|e| e.count).collect::<Vec<_>>()
    );

    for n in 2..=6u32 {
        let d = gsparc::dictionary::build_mub_dictionary(n).map_err(|e| e.to_string())?;
        let dim = 1usize << n;
        let mu = 1.0 / (dim as f64).sqrt();
        check(d.rows() == dim && d.cols() == dim * dim, || format!("mub({n}) shape"))?;
        check((d.coherence() - mu).abs() < TOL, || format!("mub({n}) mu = {}", d.coherence()))?;
        let r = d.check_mub_phases().map_err(|e| e.to_string())?;
        let roots = if n % 2 == 1 { 8 } else { 4 };
        check(r.holds() && r.roots == roots && r.max_magnitude_error < TOL, || {
            format!("mub({n}) phase report {r:?}")
        })?;
        println!("    mub({n}): N={dim} mu=1/sqrt(N), {} pairs in the {roots}-root set", r.checked_pairs);
    }
    Ok(())
}

// ---------------------------------------------------------------------------

/// All K-subsets of 0..L in lexicographic order, by the successor rule.
fn lexicographic_subsets(l: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] < l - k + i) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

fn combinatorial_map() -> Outcome {
    let table: [[usize; 3]; 10] = [
        [0, 1, 2],
        [0, 1, 3],
        [0, 1, 4],
        [0, 2, 3],
        [0, 2, 4],
        [0, 3, 4],
        [1, 2, 3],
        [1, 2, 4],
        [1, 3, 4],
        [2, 3, 4],
    ];
    for (d, comb) in table.iter().enumerate() {
        let got = sfe_unrank(&BigUint::from(d), 5, 3).map_err(|e| e.to_string())?;
        check(got == comb, || format!("index {d}: {got:?} instead of {comb:?}"))?;
        check(sfe_rank(comb, 5).ok() == Some(BigUint::from(d)), || format!("rank of {comb:?}"))?;
    }

    let mut count = 0u64;
    for l in 1..=12 {
        for k in 1..=l {
            let all = lexicographic_subsets(l, k);
            check(BigUint::from(all.len()) == binom(l, k), || format!("C({l},{k})"))?;
            for (d, comb) in all.iter().enumerate() {
                let got = sfe_unrank(&BigUint::from(d), l, k).map_err(|e| e.to_string())?;
                check(&got == comb, || format!("L={l} K={k} d={d}: {got:?}"))?;
                check(sfe_rank(comb, l).ok() == Some(BigUint::from(d)), || format!("rank L={l} K={k} d={d}"))?;
                count += 1;
            }
        }
    }
    println!("    exhaustive L <= 12: {count} combinations");

    check(sfe_bit_budget(4096, 5, &Constellation::qpsk()) == 63, || "SFE (4096, 5) budget".into())?;
    let total = binom(4096, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10_000 {
        let d = BigUint::from_bytes_le(&rng.random::<[u8; 8]>()) % &total;
        let comb = sfe_unrank(&d, 4096, 5).map_err(|e| e.to_string())?;
        check(comb.windows(2).all(|w| w[0] < w[1]) && comb[4] < 4096, || format!("{comb:?}"))?;
        check(sfe_rank(&comb, 4096).ok() == Some(d.clone()), || format!("rank of unrank({d})"))?;
        if &d + 1u32 < total {
            let next = sfe_unrank(&(&d + 1u32), 4096, 5).map_err(|e| e.to_string())?;
            check(next > comb, || format!("order broken after {d}"))?;
        }
    }
    let sfe = code(r#"{"dict":{"kind":"mub","n":6},"scheme":"sfe","k":5,"m":4}"#);
    check(sfe.n_bits() == 63, || format!("(128,{}) instead of (128,63)", sfe.n_bits()))?;
    for _ in 0..10_000 {
        let bits = random_bits(&mut rng, 63);
        let word = sfe.encode(&bits).map_err(|e| e.to_string())?;
        check(sfe.decode_bits(&word).ok() == Some(bits), || "SFE message round trip".into())?;
    }
    println!("    (4096, 5): 10^4 random ranks and 10^4 random 63-bit messages round-trip");
    Ok(())
}

// ---------------------------------------------------------------------------

/// Best `sum log2 L_k` over `k` powers of two summing to at most `l`.
fn best_index_bits(l: usize, k: usize, memo: &mut HashMap<(usize, usize), Option<u32>>) -> Option<u32> {
    if k == 0 {
        return Some(0);
    }
    if let Some(&v) = memo.get(&(l, k)) {
        return v;
    }
    let mut best = None;
    let mut e = 0;
    while (1usize << e) <= l {
        if let Some(rest) = best_index_bits(l - (1 << e), k - 1, memo) {
            best = best.max(Some(rest + e));
        }
        e += 1;
    }
    memo.insert((l, k), best);
    best
}

fn partitioning() -> Outcome {
    let p = partition_subblocks(23, 3).map_err(|e| e.to_string())?;
    check(p.sizes() == [4, 8, 8], || format!("(23,3) -> {:?}", p.sizes()))?;

    let mub = code(r#"{"dict":{"kind":"mub","n":6},"scheme":"sse","k":6,"m":4,"offset":true}"#);
    check(mub.n_bits() == 68 && mub.real_dimensions() == 128, || {
        format!("({},{}) instead of (128,68)", mub.real_dimensions(), mub.n_bits())
    })?;
    let gold = code(r#"{"dict":{"kind":"gold","n":7},"scheme":"sse","k":5,"m":2}"#);
    check(gold.n_bits() == 63 && gold.real_dimensions() == 127, || {
        format!("({},{}) instead of (127,63)", gold.real_dimensions(), gold.n_bits())
    })?;
    println!(
        "    (4096,6) -> {:?} gives (128,68); (16384,5) -> {:?} gives (127,63)",
        mub.partition().unwrap().sizes(),
        gold.partition().unwrap().sizes()
    );

    let mut memo = HashMap::new();
    for l in 1..=64 {
        for k in 1..=l {
            let p = partition_subblocks(l, k).map_err(|e| e.to_string())?;
            let best = best_index_bits(l, k, &mut memo).unwrap();
            check(p.total_index_bits() == best && p.used_columns() <= l, || {
                format!("L={l} K={k}: {:?} gives {} bits, best is {best}", p.sizes(), p.total_index_bits())
            })?;
        }
    }
    println!("    optimal for every K <= L <= 64");
    Ok(())
}

// ---------------------------------------------------------------------------

fn mad_equals_ml() -> Outcome {
    for json in [
        r#"{"dict":{"kind":"mub","n":3},"scheme":"sse","k":1,"m":4}"#,
        r#"{"dict":{"kind":"gold","n":5},"scheme":"sse","k":1,"m":2}"#,
    ] {
        let c = code(json);
        let sweep = [-4.0, -2.0, 0.0, 2.0, 4.0];
        let mut errors = 0;
        for t in 0..100_000u64 {
            let trial = draw_trial(&c, 4, t, sweep[(t % 5) as usize]).map_err(|e| e.to_string())?;
            let mad = Decoder::Mad.decode(&trial.y, &c).map_err(|e| e.to_string())?;
            let ml = Decoder::Ml.decode(&trial.y, &c).map_err(|e| e.to_string())?;
            check(mad.support() == ml.support() && mad.symbol_indices() == ml.symbol_indices(), || {
                format!("{} trial {t}: MAD {:?} vs ML {:?}", c.dict().label(), mad.support(), ml.support())
            })?;
            errors += u64::from(!mad.same_message(&trial.word));
        }
        println!(
            "    ({},{}) {}: 10^5 trials, 0 mismatches ({errors} block errors)",
            c.real_dimensions(),
            c.n_bits(),
            c.dict().label()
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------

fn noiseless_recovery() -> Outcome {
    for json in [
        r#"{"dict":{"kind":"mub","n":6},"scheme":"sse","k":4,"m":4}"#,
        r#"{"dict":{"kind":"mub","n":6},"scheme":"sse","k":4,"m":4,"offset":true}"#,
        r#"{"dict":{"kind":"mub","n":6},"scheme":"sfe","k":4,"m":4}"#,
        r#"{"dict":{"kind":"mub","n":6},"scheme":"sse","k":2,"m":8}"#,
        r#"{"dict":{"kind":"gold","n":7},"scheme":"sse","k":4,"m":2}"#,
    ] {
        let c = code(json);
        let g = check_recovery_guarantee(c.dict().coherence(), c.modulation().gamma(), c.k());
        check(g.guaranteed, || format!("{json}: K = {} is not below {}", c.k(), g.bound))?;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for i in 0..10_000 {
            let bits = random_bits(&mut rng, c.n_bits());
            let word = c.encode(&bits).map_err(|e| e.to_string())?;
            let y = word.codeword(c.dict());
            let got = Decoder::Mad.decode(&y, &c).map_err(|e| e.to_string())?;
            check(c.decode_bits(&got).ok() == Some(bits), || format!("{json}: message {i} not recovered"))?;
        }
        println!(
            "    ({},{}) {} {}{} K={} bound {:.4}: 10^4 messages, 0 failures",
            c.real_dimensions(),
            c.n_bits(),
            c.dict().label(),
            if json.contains("sfe") { "sfe" } else { "sse" },
            if json.contains("offset") { " offset" } else { "" },
            c.k(),
            g.bound
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------

/// Eb/N0 where the BLER curve crosses `target`, interpolating log10(BLER)
/// linearly between the bracketing points.
fn crossing(ebn0: &[f64], bler: &[f64], target: f64) -> Option<f64> {
    (0..ebn0.len() - 1).find_map(|i| {
        let (a, b) = (bler[i], bler[i + 1]);
        (a >= target && b < target && b > 0.0).then(|| {
            let f = (a.log10() - target.log10()) / (a.log10() - b.log10());
            ebn0[i] + f * (ebn0[i + 1] - ebn0[i])
        })
    })
}

struct OrderingRun {
    points: Vec<PointResult>,
}

fn decoder_ordering(shared: &mut Option<OrderingRun>) -> Outcome {
    let c = code(r#"{"dict":{"kind":"mub","n":6},"scheme":"sse","k":6,"m":4,"offset":true}"#);
    let decoders = [Decoder::Omp, Decoder::Mad, Decoder::Pmad { paths: 16 }, Decoder::Pmad { paths: 100 }];
    let sweep: Vec<f64> = (2..=12).map(|i| f64::from(i) / 2.0).collect();
    // Every point runs the full 10^4 trials; no early stop.
    let budget = TrialBudget {
        max_trials: 10_000,
        max_errors: u64::MAX,
    };
    let points = run_bler(&c, &decoders, &sweep, budget, 6).map_err(|e| e.to_string())?;

    println!("    Eb/N0   OMP      MAD      16-PMAD  100-PMAD  (errors / 10^4; sign-test p for each adjacent pair)");
    let mut failures = Vec::new();
    for p in &points {
        let pairs: Vec<_> = (0..3).map(|i| p.compare(i + 1, i)).collect();
        println!(
            "    {:4.1}    {:<8} {:<8} {:<8} {:<8}  p = {:.2e}, {:.2e}, {:.2e}",
            p.ebn0_db,
            p.errors[0],
            p.errors[1],
            p.errors[2],
            p.errors[3],
            pairs[0].p_value,
            pairs[1].p_value,
            pairs[2].p_value
        );
        for (i, cmp) in pairs.iter().enumerate() {
            if !(p.errors[i] >= p.errors[i + 1] && cmp.significant(ALPHA)) {
                failures.push(format!("{} >= {} at {} dB (p = {:.3})", decoders[i], decoders[i + 1], p.ebn0_db, cmp.p_value));
            }
        }
    }

    let bler = |d: usize| points.iter().map(|p| p.bler(d)).collect::<Vec<_>>();
    let mad_at = crossing(&sweep, &bler(1), 1e-2);
    let pmad_at = crossing(&sweep, &bler(2), 1e-2);
    let gap = mad_at.zip(pmad_at).map(|(m, p)| m - p);
    println!(
        "    BLER 1e-2 reached at: MAD {}, 16-PMAD {}; gap {}",
        fmt_db(mad_at),
        fmt_db(pmad_at),
        fmt_db(gap)
    );
    match gap {
        Some(g) if g >= 2.0 => {}
        _ => failures.push(format!("16-PMAD gain over MAD at BLER 1e-2 is {} (need >= 2 dB)", fmt_db(gap))),
    }
    *shared = Some(OrderingRun { points });
    check(failures.is_empty(), || failures.join("; "))
}

fn fmt_db(x: Option<f64>) -> String {
    x.map_or_else(|| "not bracketed".into(), |v| format!("{v:.2} dB"))
}

// ---------------------------------------------------------------------------

/// One-sided Fisher exact test: probability, given the pooled error total,
/// that the first sample has at most `e1` errors.
fn fisher_lower_tail(e1: u64, n1: u64, e2: u64, n2: u64) -> f64 {
    let h = Hypergeometric::new(n1 + n2, e1 + e2, n1).unwrap();
    h.cdf(e1)
}

fn sparsity_effect() -> Outcome {
    let k6 = code(r#"{"dict":{"kind":"mub","n":6},"scheme":"sse","k":6,"m":4,"offset":true}"#);
    let k8 = code(r#"{"dict":{"kind":"mub","n":6},"columns":512,"scheme":"sse","k":8,"m":4,"offset":true}"#);
    check(k8.n_bits() == 64 && k6.n_bits() == 68, || "code sizes".into())?;
    let compare = |decoder: Decoder, sweep: &[f64], trials: u64| -> Result<Vec<(f64, f64)>, String> {
        let budget = TrialBudget {
            max_trials: trials,
            max_errors: u64::MAX,
        };
        let a = run_bler(&k6, &[decoder], sweep, budget, 7).map_err(|e| e.to_string())?;
        let b = run_bler(&k8, &[decoder], sweep, budget, 8).map_err(|e| e.to_string())?;
        Ok(a.iter()
            .zip(&b)
            .map(|(p6, p8)| {
                let p = fisher_lower_tail(p6.errors[0], p6.trials, p8.errors[0], p8.trials);
                println!(
                    "    {decoder} {:.1} dB: (128,68) K=6 {}/{}, (128,64) K=8 {}/{}, one-sided p = {p:.2e}",
                    p6.ebn0_db, p6.errors[0], p6.trials, p8.errors[0], p8.trials
                );
                (p6.ebn0_db, if p6.bler(0) < p8.bler(0) { p } else { 1.0 })
            })
            .collect())
    };
    // MAD leaves enough errors at these Eb/N0 to resolve the difference.
    let gated = compare(Decoder::Mad, &[6.0, 7.0], 50_000)?;
    // 16-PMAD sits near 1e-4 for both codes here; shown for reference only.
    compare(Decoder::Pmad { paths: 16 }, &[6.0], 20_000)?;
    let failures: Vec<String> = gated
        .iter()
        .filter(|(_, p)| *p >= ALPHA)
        .map(|(db, p)| format!("K=6 not better at {db} dB (p = {p:.3})"))
        .collect();
    check(failures.is_empty(), || failures.join("; "))
}

// ---------------------------------------------------------------------------

fn multiuser_consistency() -> Outcome {
    let c = code(r#"{"dict":{"kind":"gold","n":7},"scheme":"sse","k":6,"m":2}"#);
    check(c.n_bits() == 74 && c.real_dimensions() == 127, || format!("(127,{})", c.n_bits()))?;
    let cfg = MultiUserConfig::one_block_each(6, MultiUserMode::Mac);
    let budgets = user_bit_budgets(&c, &cfg).map_err(|e| e.to_string())?;
    check(budgets.iter().all(|&b| b == 12 || b == 13) && budgets.iter().sum::<usize>() == 74, || {
        format!("user budgets {budgets:?}")
    })?;
    println!("    (127,74) gold(7) K=6: user budgets {budgets:?}");

    let seed = 8;
    for t in 0..500u64 {
        let ebn0 = [0.0, 3.0, 6.0][(t % 3) as usize];
        let mu = draw_multiuser_trial(&c, &cfg, seed, t, ebn0).map_err(|e| e.to_string())?;
        let su = draw_trial(&c, seed, t, ebn0).map_err(|e| e.to_string())?;
        let same = mu.bits == su.bits
            && mu.observations[0].len() == su.y.len()
            && mu.observations[0].iter().zip(&su.y).all(|(a, b)| {
                a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits()
            });
        check(same, || format!("received signal differs at trial {t}"))?;
    }
    println!("    received signal bit-identical on 500 trials");

    let sweep = [3.0, 5.0];
    let budget = TrialBudget {
        max_trials: 1000,
        max_errors: 100,
    };
    let single = run_bler(&c, &[Decoder::Mad], &sweep, budget, seed).map_err(|e| e.to_string())?;
    let multi = simulate_multiuser(&c, &cfg, Decoder::Mad, &sweep, budget, seed).map_err(|e| e.to_string())?;
    for (s, m) in single.iter().zip(&multi) {
        println!(
            "    {:.1} dB: single-user {}/{}, any-user {}/{}, per user {:?}",
            s.ebn0_db, s.errors[0], s.trials, m.any_errors, m.trials, m.per_user_errors
        );
        check(s.trials == m.trials && s.errors[0] == m.any_errors, || {
            format!("{} dB: error statistics differ", s.ebn0_db)
        })?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------

const REPRO_SPEC: &str = r#"{
    "dict": "mub", "n": 4, "scheme": "sse", "K": 3, "M": 4,
    "decoder": ["mad", "pmad-8", "omp"],
    "sweep": {"start": 0, "stop": 8, "step": 2},
    "max_trials": 4000, "max_errors": 150, "seed": 9
}"#;

fn monotone_and_reproducible(shared: &Option<OrderingRun>) -> Outcome {
    let spec = parse_spec(REPRO_SPEC).map_err(|e| e.to_string())?;
    let root = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut files: Vec<(usize, String, String)> = Vec::new();
    for threads in [1, 2, 4, 4] {
        let dir = root.path().join(format!("run{}", files.len()));
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| e.to_string())?;
        let opts = RunOptions {
            out_dir: Some(dir.clone()),
            dry_run: false,
        };
        pool.install(|| run_experiment(&spec, &opts)).map_err(|e| e.to_string())?;
        let read = |f: &str| std::fs::read_to_string(dir.join(f)).map_err(|e| e.to_string());
        files.push((threads, read("results.csv")?, read("results.json")?));
    }
    for (threads, csv, json) in &files[1..] {
        check(csv == &files[0].1 && json == &files[0].2, || {
            format!("rows differ between 1 and {threads} threads")
        })?;
    }
    println!("    results.csv and results.json byte-identical across 1, 2, 4, 4 threads");

    let records = gsparc::experiment::read_csv(&root.path().join("run0/results.csv")).map_err(|e| e.to_string())?;
    let mut curves: Vec<(String, Vec<(u64, u64)>)> = Vec::new();
    for r in &records {
        match curves.iter_mut().find(|(d, _)| d == &r.decoder) {
            Some((_, v)) => v.push((r.errors, r.trials)),
            None => curves.push((r.decoder.clone(), vec![(r.errors, r.trials)])),
        }
    }
    if let Some(run) = shared {
        for (d, name) in ["omp", "mad", "pmad-16", "pmad-100"].iter().enumerate() {
            curves.push((
                format!("{name} (128,68)"),
                run.points.iter().map(|p| (p.errors[d], p.trials)).collect(),
            ));
        }
    }
    for (name, pts) in &curves {
        let bounds: Vec<String> = pts
            .iter()
            .map(|&(e, n)| {
                let (lo, hi) = clopper_pearson(e, n, ALPHA);
                format!("[{lo:.1e},{hi:.1e}]")
            })
            .collect();
        println!("    {name}: {}", bounds.join(" "));
        check(is_non_increasing(pts, ALPHA), || format!("{name} BLER increases with Eb/N0"))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------

fn main() {
    let wanted: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let run = |n: u32| wanted.is_empty() || wanted.contains(&n);
    let mut shared = None;
    let mut failed = Vec::new();

    let mut report = |n: u32, name: &str, f: &mut dyn FnMut() -> Outcome| {
        if !run(n) {
            return;
        }
        println!("criterion {n}: {name}");
        let t = Instant::now();
        let result = f();
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS criterion {n}: {name} ({secs:.1} s)"),
            Err(e) => {
                println!("FAIL criterion {n}: {name} ({secs:.1} s): {e}");
                failed.push(n);
            }
        }
    };

    report(1, "dictionary structure", &mut dictionary_structure);
    report(2, "combinatorial map", &mut combinatorial_map);
    report(3, "sub-block partitioning", &mut partitioning);
    report(4, "MAD equals ML at K=1", &mut mad_equals_ml);
    report(5, "noiseless recovery below the bound", &mut noiseless_recovery);
    report(6, "decoder ordering on the (128,68) code", &mut || decoder_ordering(&mut shared));
    report(7, "K=6 beats K=8 at matched Eb/N0", &mut sparsity_effect);
    report(8, "multi-user consistency", &mut multiuser_consistency);
    report(9, "monotonicity and reproducibility", &mut || monotone_and_reproducible(&shared));

    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
