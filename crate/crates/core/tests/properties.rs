use gsparc::encoding::{
    binom, partition_subblocks, sfe_bit_budget, sfe_decode_bits, sfe_encode, sfe_rank, sfe_unrank,
    sse_bit_budget, sse_decode_bits, sse_encode, Constellation, Modulation,
};
use gsparc::experiment::{parse_spec, DecoderList, DictFamily, ExperimentSpec, SimMode, Sweep};
use gsparc::code::SchemeKind;
use num_bigint::BigUint;
use proptest::prelude::*;

fn psk() -> impl Strategy<Value = Constellation> {
    (0u32..=4, 0.0f64..1.0).prop_map(|(b, rot)| Constellation::psk(1 << b, rot).unwrap())
}

proptest! {
    #[test]
    fn partition_invariants(l in 1usize..5000, k_frac in 0.0f64..1.0) {
        let k = 1 + ((l.min(40) - 1) as f64 * k_frac) as usize;
        let p = partition_subblocks(l, k).unwrap();
        let s = p.sizes();
        prop_assert_eq!(s.len(), k);
        prop_assert!(s.iter().all(|x| x.is_power_of_two()));
        prop_assert!(s.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(s[k - 1] <= 2 * s[0]);
        prop_assert_eq!(p.used_columns() + p.unused(), l);
    }

    #[test]
    fn sse_round_trip(l in 2usize..3000, k_frac in 0.0f64..1.0, c in psk(), seed: u64) {
        let k = 1 + ((l.min(12) - 1) as f64 * k_frac) as usize;
        let p = partition_subblocks(l, k).unwrap();
        let m = Modulation::Uniform(c);
        let nb = sse_bit_budget(&p, &m) as usize;
        let bits: Vec<bool> = (0..nb).map(|i| seed.rotate_left(i as u32 % 64) & 1 == 1 || i % 3 == 0).collect();
        let w = sse_encode(&bits, &p, &m).unwrap();
        prop_assert_eq!(w.len(), k);
        prop_assert_eq!(sse_decode_bits(&w, &p, &m).unwrap(), bits);
    }

    #[test]
    fn sfe_round_trip(l in 2usize..5000, k_frac in 0.0f64..1.0, c in psk(), bits_seed in proptest::collection::vec(any::<bool>(), 200)) {
        let k = 1 + ((l.min(8) - 1) as f64 * k_frac) as usize;
        let nb = sfe_bit_budget(l, k, &c) as usize;
        let bits = bits_seed[..nb].to_vec();
        let w = sfe_encode(&bits, l, k, &c).unwrap();
        prop_assert!(w.support().windows(2).all(|p| p[0] < p[1]));
        prop_assert_eq!(sfe_decode_bits(&w, l, &c).unwrap(), bits);
    }

    #[test]
    fn rank_unrank_inverse(k in 1usize..=8, bytes in proptest::collection::vec(any::<u8>(), 16)) {
        let l = 4096;
        let d = BigUint::from_bytes_le(&bytes) % binom(l, k);
        let comb = sfe_unrank(&d, l, k).unwrap();
        prop_assert_eq!(sfe_rank(&comb, l).unwrap(), d);
    }
}

fn spec_strategy() -> impl Strategy<Value = ExperimentSpec> {
    let code = (
        prop_oneof![(Just(DictFamily::Mub), 2u32..=6), (Just(DictFamily::Gold), prop_oneof![Just(3u32), Just(5)])],
        prop_oneof![Just(SchemeKind::Sse), Just(SchemeKind::Sfe)],
        1usize..=6,
        prop_oneof![Just(1usize), Just(2), Just(4), Just(8)],
        any::<bool>(),
    );
    let run = (
        prop_oneof![
            Just(DecoderList::One("mad".into())),
            Just(DecoderList::One("pmad".into())),
            Just(DecoderList::Many(vec!["omp".into(), "mad".into(), "pmad-100".into()])),
        ],
        proptest::option::of(1usize..200),
        prop_oneof![
            proptest::collection::vec(-5.0f64..15.0, 1..5).prop_map(Sweep::Points),
            (-2i32..5, 0i32..8, 1u32..4).prop_map(|(a, b, s)| Sweep::Range {
                start: a as f64,
                stop: (a + b) as f64,
                step: s as f64 * 0.5,
            }),
        ],
        1u64..1_000_000,
        1u64..1000,
        any::<u64>(),
        proptest::option::of("[a-z]{1,8}"),
    );
    (code, run).prop_map(|((dict, scheme, k, m, offset), (decoder, t, sweep, max_trials, max_errors, seed, output))| {
        ExperimentSpec {
            dict: dict.0,
            n: dict.1,
            columns: None,
            identity_column: None,
            scheme,
            k,
            m: if offset { 4 } else { m },
            offset: offset && scheme == SchemeKind::Sse,
            partition: None,
            decoder,
            t,
            sweep,
            max_trials,
            max_errors,
            seed,
            mode: SimMode::Single,
            users: None,
            gains: None,
            common_noise: false,
            output,
        }
    })
}

proptest! {
    #[test]
    fn spec_serialization_round_trips(spec in spec_strategy()) {
        let text = serde_json::to_string(&spec).unwrap();
        let back = parse_spec(&text).unwrap();
        prop_assert_eq!(&back, &spec);
        prop_assert_eq!(back.digest(), spec.digest());
        // Normalizing twice changes nothing.
        let again = serde_json::to_string(&back).unwrap();
        prop_assert_eq!(again, text);
    }
}
