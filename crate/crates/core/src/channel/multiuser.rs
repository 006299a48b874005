use std::ops::Range;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::awgn::{awgn, ChannelConfig};
use super::engine::{run_trials, trial_rng, TrialBudget};
use crate::code::Code;
use crate::decoding::Decoder;
use crate::encoding::{sse_encode_blocks, Modulation, SubBlockPartition};
use crate::error::{Error, Result};

/// Which multi-user channel is simulated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase", deny_unknown_fields)]
pub enum MultiUserMode {
    /// Users transmit independently; one receiver decodes everyone.
    Mac,
    /// One transmitter sends every user's blocks; each user has its own
    /// receiver and noise.
    Broadcast,
    /// Transmitter `j` reaches receiver `i` with real gain `gains[i][j]`
    /// (`gains[i][i] = 1`); receiver `i` decodes every visible codeword.
    Interference { gains: Vec<Vec<f64>> },
}

/// Assignment of sub-blocks to users.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiUserConfig {
    /// `users[i]` lists the sub-blocks of user `i`, in that user's order.
    pub users: Vec<Vec<usize>>,
    #[serde(flatten)]
    pub mode: MultiUserMode,
    /// Receivers share one noise realization (broadcast and interference).
    #[serde(default)]
    pub common_noise: bool,
}

impl MultiUserConfig {
    /// One sub-block per user.
    pub fn one_block_each(k: usize, mode: MultiUserMode) -> Self {
        MultiUserConfig {
            users: (0..k).map(|b| vec![b]).collect(),
            mode,
            common_noise: false,
        }
    }

    pub fn users(&self) -> usize {
        self.users.len()
    }

    /// Checks that the groups partition the code's sub-blocks and that the
    /// gain matrix has the right shape.
    pub fn validate(&self, code: &Code) -> Result<()> {
        let Some(p) = code.partition() else {
            return Err(Error::config("multi-user channels need the sse scheme"));
        };
        let k = p.blocks();
        let p_users = self.users.len();
        if p_users == 0 || p_users > k {
            return Err(Error::config(format!("{p_users} users for {k} sub-blocks")));
        }
        let mut owner = vec![None; k];
        for (i, group) in self.users.iter().enumerate() {
            if group.is_empty() {
                return Err(Error::config(format!("user {i} has no sub-block")));
            }
            for &b in group {
                match owner.get_mut(b) {
                    None => return Err(Error::config(format!("sub-block {b} does not exist"))),
                    Some(Some(j)) => {
                        return Err(Error::config(format!("sub-block {b} assigned to users {j} and {i}")));
                    }
                    Some(o) => *o = Some(i),
                }
            }
        }
        if let Some(b) = owner.iter().position(Option::is_none) {
            return Err(Error::config(format!("sub-block {b} has no user")));
        }
        if let MultiUserMode::Interference { gains } = &self.mode {
            if gains.len() != p_users || gains.iter().any(|r| r.len() != p_users) {
                return Err(Error::config(format!("gain matrix must be {p_users} x {p_users}")));
            }
            if let Some(i) = (0..p_users).find(|&i| gains[i][i] != 1.0) {
                return Err(Error::config(format!("direct gain h[{i}][{i}] must be 1")));
            }
            if gains.iter().flatten().any(|g| !g.is_finite()) {
                return Err(Error::config("gains must be finite"));
            }
        }
        Ok(())
    }

    /// Owner of each sub-block.
    fn owners(&self, k: usize) -> Vec<usize> {
        let mut owner = vec![0; k];
        for (i, g) in self.users.iter().enumerate() {
            for &b in g {
                owner[b] = i;
            }
        }
        owner
    }

    /// Gains seen by receiver `r` (all ones outside interference mode).
    fn gains_at(&self, r: usize) -> Vec<f64> {
        match &self.mode {
            MultiUserMode::Interference { gains } => gains[r].clone(),
            _ => vec![1.0; self.users.len()],
        }
    }

    /// Number of receivers.
    fn receivers(&self) -> usize {
        match self.mode {
            MultiUserMode::Mac => 1,
            _ => self.users.len(),
        }
    }
}

/// Message bits of each user: `sum over its sub-blocks of log2 L_k + log2 M_k`.
pub fn user_bit_budgets(code: &Code, cfg: &MultiUserConfig) -> Result<Vec<usize>> {
    cfg.validate(code)?;
    let ranges = code.block_bit_ranges().expect("validated sse");
    Ok(cfg.users.iter().map(|g| g.iter().map(|&b| ranges[b].len()).sum()).collect())
}

/// Splits a message in block order into per-user messages.
fn split_bits(bits: &[bool], ranges: &[Range<usize>], groups: &[Vec<usize>]) -> Vec<Vec<bool>> {
    groups
        .iter()
        .map(|g| g.iter().flat_map(|&b| bits[ranges[b].clone()].iter().copied()).collect())
        .collect()
}

/// One multi-user transmission: each user's bits and codeword.
#[derive(Debug, Clone)]
pub struct MultiUserTrial {
    /// All message bits in sub-block order.
    pub bits: Vec<bool>,
    pub user_bits: Vec<Vec<bool>>,
    /// `s_i`, each produced by user `i`'s own encoder.
    pub user_signals: Vec<Vec<Complex64>>,
    /// Observation at each receiver.
    pub observations: Vec<Vec<Complex64>>,
}

/// Draws trial `trial`: all message bits in sub-block order (as in the
/// single-user code), then noise for receiver 0, 1, ... (or one shared draw).
pub fn draw_multiuser_trial(
    code: &Code,
    cfg: &MultiUserConfig,
    seed: u64,
    trial: u64,
    ebn0_db: f64,
) -> Result<MultiUserTrial> {
    let p = code.partition().ok_or_else(|| Error::config("multi-user channels need the sse scheme"))?;
    let ranges = code.block_bit_ranges().expect("sse");
    let mut rng = trial_rng(seed, trial);
    let bits: Vec<bool> = (0..code.n_bits()).map(|_| rng.random()).collect();
    let user_bits = split_bits(&bits, &ranges, &cfg.users);
    let user_signals = user_bits
        .iter()
        .zip(&cfg.users)
        .map(|(b, g)| {
            sse_encode_blocks(b, p, code.modulation(), g).map(|w| w.codeword(code.dict()))
        })
        .collect::<Result<Vec<_>>>()?;
    let channel = ChannelConfig::for_code(code, ebn0_db);
    let receivers = cfg.receivers();
    let mut observations = Vec::with_capacity(receivers);
    let mut shared_noise: Option<Vec<Complex64>> = None;
    for r in 0..receivers {
        let gains = cfg.gains_at(r);
        let mut s = vec![Complex64::new(0.0, 0.0); code.dict().rows()];
        for (sig, &h) in user_signals.iter().zip(&gains) {
            if h == 1.0 {
                s.iter_mut().zip(sig).for_each(|(a, b)| *a += b);
            } else if h != 0.0 {
                s.iter_mut().zip(sig).for_each(|(a, b)| *a += b * h);
            }
        }
        let y = if cfg.common_noise {
            let noise = shared_noise.get_or_insert_with(|| {
                let zero = vec![Complex64::new(0.0, 0.0); s.len()];
                awgn(&zero, &channel, &mut rng)
            });
            s.iter().zip(noise.iter()).map(|(a, b)| a + b).collect()
        } else {
            awgn(&s, &channel, &mut rng)
        };
        observations.push(y);
    }
    Ok(MultiUserTrial {
        bits,
        user_bits,
        user_signals,
        observations,
    })
}

/// Errors of one multi-user sweep point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiUserPoint {
    pub ebn0_db: f64,
    pub trials: u64,
    /// Trials in which at least one user (or receiver) was in error.
    pub any_errors: u64,
    /// MAC: per user. Broadcast and interference: per receiver.
    pub per_user_errors: Vec<u64>,
}

/// Receiver-side view of the code: sub-block alphabets scaled by the gain of
/// their owner.
fn receiver_code(code: &Code, p: &SubBlockPartition, owners: &[usize], gains: &[f64]) -> Result<Code> {
    if gains.iter().all(|&g| g == 1.0) {
        return Ok(code.clone());
    }
    let scaled = (0..p.blocks())
        .map(|k| code.modulation().for_block(k).scaled(Complex64::new(gains[owners[k]], 0.0)))
        .collect();
    code.with_modulation(Modulation::PerBlock(scaled))
}

/// Simulates a multi-user channel with joint decoding at every receiver.
///
/// In the MAC the event counted is "some user decoded wrongly". In the
/// broadcast and interference channels receiver `i` succeeds when it
/// recovers every codeword it can see (nonzero gain); the event counted is
/// "some receiver failed".
pub fn simulate_multiuser(
    code: &Code,
    cfg: &MultiUserConfig,
    decoder: Decoder,
    sweep: &[f64],
    budget: TrialBudget,
    seed: u64,
) -> Result<Vec<MultiUserPoint>> {
    cfg.validate(code)?;
    let p = code.partition().expect("validated sse");
    let owners = cfg.owners(p.blocks());
    let ranges = code.block_bit_ranges().expect("sse");
    let receivers: Vec<(Code, Vec<f64>)> = (0..cfg.receivers())
        .map(|r| {
            let g = cfg.gains_at(r);
            receiver_code(code, p, &owners, &g).map(|c| (c, g))
        })
        .collect::<Result<_>>()?;
    let counters = match cfg.mode {
        MultiUserMode::Mac => cfg.users(),
        _ => receivers.len(),
    };
    let mut points = Vec::with_capacity(sweep.len());
    for &ebn0_db in sweep {
        let outcomes = run_trials(budget, 1, |t| {
            let trial = draw_multiuser_trial(code, cfg, seed, t, ebn0_db).expect("valid configuration");
            let mut flags = vec![false; counters + 1];
            for (r, ((rx_code, gains), y)) in receivers.iter().zip(&trial.observations).enumerate() {
                let decoded = decoder.decode(y, rx_code).and_then(|w| rx_code.decode_bits(&w)).ok();
                let user_wrong = |u: usize| match &decoded {
                    Some(bits) => split_bits(bits, &ranges, &cfg.users[u..=u])[0] != trial.user_bits[u],
                    None => true,
                };
                match cfg.mode {
                    MultiUserMode::Mac => {
                        for u in 0..cfg.users() {
                            flags[1 + u] = user_wrong(u);
                        }
                    }
                    _ => {
                        flags[1 + r] = (0..cfg.users()).any(|u| gains[u] != 0.0 && user_wrong(u));
                    }
                }
            }
            flags[0] = flags[1..].iter().any(|&f| f);
            flags
        });
        let mut per = vec![0u64; counters];
        let mut any = 0;
        for o in &outcomes {
            any += u64::from(o[0]);
            for (c, &f) in per.iter_mut().zip(&o[1..]) {
                *c += u64::from(f);
            }
        }
        points.push(MultiUserPoint {
            ebn0_db,
            trials: outcomes.len() as u64,
            any_errors: any,
            per_user_errors: per,
        });
    }
    Ok(points)
}
