use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A finite symbol alphabet with Gray labelling.
///
/// Symbol `m` carries the label `m ^ (m >> 1)`, so neighbouring PSK points
/// differ in one bit.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    symbols: Vec<Complex64>,
    half_energy: Vec<f64>,
    gamma: f64,
}

impl Constellation {
    /// `M`-PSK rotated counter-clockwise by `rotation` radians:
    /// `b_m = e^(j (rotation + 2 pi m / M))`. `M = 1` gives `{e^(j rotation)}`.
    pub fn psk(m: usize, rotation: f64) -> Result<Self> {
        if !m.is_power_of_two() {
            return Err(Error::config(format!("constellation size {m} is not a power of 2")));
        }
        let rot = Complex64::from_polar(1.0, rotation);
        let rot = if rotation == 0.0 { Complex64::new(1.0, 0.0) } else { rot };
        let symbols = (0..m)
            .map(|i| {
                // Exact values on the axes keep BPSK/QPSK free of 1e-17 residue.
                let base = match (4 * i) % m {
                    0 if m <= 4 => [
                        Complex64::new(1.0, 0.0),
                        Complex64::new(0.0, 1.0),
                        Complex64::new(-1.0, 0.0),
                        Complex64::new(0.0, -1.0),
                    ][4 * i / m],
                    _ => Complex64::from_polar(1.0, 2.0 * PI * i as f64 / m as f64),
                };
                rot * base
            })
            .collect();
        Ok(Self::from_symbols(symbols))
    }

    pub fn bpsk() -> Self {
        Self::psk(2, 0.0).unwrap()
    }

    pub fn qpsk() -> Self {
        Self::psk(4, 0.0).unwrap()
    }

    /// An arbitrary alphabet. Its size must be a power of two so that every
    /// symbol carries a whole number of bits.
    pub fn from_symbols(symbols: Vec<Complex64>) -> Self {
        assert!(symbols.len().is_power_of_two(), "alphabet size must be a power of 2");
        let half_energy = symbols.iter().map(|b| b.norm_sqr() / 2.0).collect();
        let mut gamma = f64::NEG_INFINITY;
        for (i, a) in symbols.iter().enumerate() {
            for (m, b) in symbols.iter().enumerate() {
                if i != m {
                    gamma = gamma.max((a.conj() * b).re);
                }
            }
        }
        // A single symbol has no competing pair; -1 is the smallest value
        // a PSK alphabet can have and leaves the recovery bound unchanged.
        if symbols.len() == 1 {
            gamma = -1.0;
        }
        // Normalizes -0.0 (e.g. from QPSK) so reports print 0.
        let gamma = gamma + 0.0;
        Constellation {
            symbols,
            half_energy,
            gamma,
        }
    }

    /// Every symbol multiplied by `gain`, e.g. a channel coefficient.
    pub fn scaled(&self, gain: Complex64) -> Self {
        let symbols: Vec<Complex64> = self.symbols.iter().map(|b| b * gain).collect();
        let half_energy = symbols.iter().map(|b| b.norm_sqr() / 2.0).collect();
        Constellation {
            symbols,
            half_energy,
            gamma: self.gamma * gain.norm_sqr(),
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Complex64] {
        &self.symbols
    }

    pub fn symbol(&self, m: usize) -> Complex64 {
        self.symbols[m]
    }

    /// `|b_m|^2 / 2` for every symbol.
    pub(crate) fn half_energies(&self) -> &[f64] {
        &self.half_energy
    }

    pub fn bits_per_symbol(&self) -> u32 {
        self.symbols.len().ilog2()
    }

    /// Coherence `max_{i != m} Re{conj(b_i) b_m}`.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Minimum distance between distinct symbols.
    pub fn min_distance(&self) -> f64 {
        let mut d = f64::INFINITY;
        for (i, a) in self.symbols.iter().enumerate() {
            for b in &self.symbols[i + 1..] {
                d = d.min((a - b).norm());
            }
        }
        d
    }

    /// Gray label carried by symbol `m`.
    pub fn label(&self, m: usize) -> u64 {
        (m ^ (m >> 1)) as u64
    }

    /// Symbol index carrying Gray label `g`.
    pub fn index_of_label(&self, g: u64) -> usize {
        let mut m = g;
        let mut shift = g >> 1;
        while shift != 0 {
            m ^= shift;
            shift >>= 1;
        }
        m as usize
    }

    /// Nearest symbol to `z`; ties go to the lowest index.
    pub fn nearest(&self, z: Complex64) -> usize {
        let mut best = (0, f64::INFINITY);
        for (m, b) in self.symbols.iter().enumerate() {
            let d = (z - b).norm_sqr();
            if d < best.1 {
                best = (m, d);
            }
        }
        best.0
    }
}

/// Offset QPSK family: sub-block `k` (0-based) uses QPSK rotated by
/// `k * pi / (2 K)`.
pub fn make_offset_qpsk(k: usize) -> Result<Vec<Constellation>> {
    if k == 0 {
        return Err(Error::config("offset QPSK needs at least one sub-block"));
    }
    (0..k)
        .map(|i| Constellation::psk(4, i as f64 * PI / (2.0 * k as f64)))
        .collect()
}

/// How symbols are chosen for each selected column.
#[derive(Debug, Clone, PartialEq)]
pub enum Modulation {
    /// One alphabet for every column.
    Uniform(Constellation),
    /// One alphabet per sub-block (sub-block structured encoding only).
    PerBlock(Vec<Constellation>),
}

impl Modulation {
    /// Alphabet used by sub-block `k` (or by every selected column).
    pub fn for_block(&self, k: usize) -> &Constellation {
        match self {
            Modulation::Uniform(c) => c,
            Modulation::PerBlock(v) => &v[k],
        }
    }

    /// Largest alphabet size in use.
    pub fn max_size(&self) -> usize {
        match self {
            Modulation::Uniform(c) => c.len(),
            Modulation::PerBlock(v) => v.iter().map(Constellation::len).max().unwrap_or(0),
        }
    }

    /// Largest constellation coherence in use.
    pub fn gamma(&self) -> f64 {
        match self {
            Modulation::Uniform(c) => c.gamma(),
            Modulation::PerBlock(v) => v.iter().map(Constellation::gamma).fold(f64::NEG_INFINITY, f64::max),
        }
    }
}
