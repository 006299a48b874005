use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gsparc::channel::{draw_trial, trial_rng};
use gsparc::encoding::sfe_unrank;
use gsparc::{Code, CodeSpec, Decoder, GramBudget};
use num_bigint::BigUint;
use rand::Rng;

fn code(json: &str) -> Code {
    serde_json::from_str::<CodeSpec>(json).unwrap().build(GramBudget::default()).unwrap()
}

const MUB6: &str = r#"{"dict":{"kind":"mub","n":6},"scheme":"sse","k":6,"m":4,"offset":true}"#;
const GOLD7: &str = r#"{"dict":{"kind":"gold","n":7},"scheme":"sse","k":6,"m":2}"#;

fn correlation(c: &mut Criterion) {
    let mut g = c.benchmark_group("correlate");
    for (name, json) in [("mub6", MUB6), ("gold7", GOLD7)] {
        let code = code(json);
        let y = draw_trial(&code, 1, 0, 6.0).unwrap().y;
        let mut out = vec![Default::default(); code.dict().cols()];
        g.bench_function(name, |b| b.iter(|| code.dict().correlate(black_box(&y), &mut out)));
    }
    g.finish();
}

fn gram(c: &mut Criterion) {
    let spec: CodeSpec = serde_json::from_str(MUB6).unwrap();
    let dict = spec.build_dictionary().unwrap();
    let mut g = c.benchmark_group("gram");
    g.sample_size(10);
    g.bench_function("mub6", |b| b.iter(|| dict.gram(GramBudget::default()).unwrap()));
    g.finish();
}

fn decoders(c: &mut Criterion) {
    let mut g = c.benchmark_group("decode");
    for (name, json) in [("mub6", MUB6), ("gold7", GOLD7)] {
        let code = code(json);
        let trials: Vec<_> = (0..32).map(|t| draw_trial(&code, 1, t, 6.0).unwrap().y).collect();
        for dec in [Decoder::Mad, Decoder::Omp, Decoder::Pmad { paths: 16 }] {
            g.bench_with_input(BenchmarkId::new(name, dec), &dec, |b, dec| {
                let mut i = 0;
                b.iter(|| {
                    i = (i + 1) % trials.len();
                    dec.decode(black_box(&trials[i]), &code).unwrap()
                })
            });
        }
    }
    g.finish();
}

fn unrank(c: &mut Criterion) {
    let mut g = c.benchmark_group("unrank");
    let l = 4096;
    for k in [2, 5, 8] {
        let total = gsparc::encoding::binom(l, k);
        let mut rng = trial_rng(9, 0);
        let ranks: Vec<BigUint> = (0..64)
            .map(|_| BigUint::from_bytes_le(&rng.random::<[u8; 16]>()) % &total)
            .collect();
        g.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            let mut i = 0;
            b.iter(|| {
                i = (i + 1) % ranks.len();
                sfe_unrank(black_box(&ranks[i]), l, k).unwrap()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, correlation, gram, decoders, unrank);
criterion_main!(benches);
