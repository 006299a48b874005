use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::code::Code;
use crate::dictionary::Field;

/// Noise calibration for one Eb/N0 point, with codeword energy `E_s = K`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelConfig {
    pub ebn0_db: f64,
    pub n_bits: usize,
    pub k: usize,
    pub field: Field,
}

impl ChannelConfig {
    pub fn new(ebn0_db: f64, n_bits: usize, k: usize, field: Field) -> Self {
        ChannelConfig {
            ebn0_db,
            n_bits,
            k,
            field,
        }
    }

    pub fn for_code(code: &Code, ebn0_db: f64) -> Self {
        Self::new(ebn0_db, code.n_bits(), code.k(), code.signal_field())
    }

    /// `E_b = K / N_b`.
    pub fn energy_per_bit(&self) -> f64 {
        self.k as f64 / self.n_bits as f64
    }

    /// `N_0 = E_b 10^(-ebn0_db / 10)`; zero at `+inf` dB.
    pub fn n0(&self) -> f64 {
        if self.ebn0_db == f64::INFINITY {
            return 0.0;
        }
        self.energy_per_bit() * 10f64.powf(-self.ebn0_db / 10.0)
    }

    /// `N_0 / 2`.
    pub fn noise_variance_per_real_dim(&self) -> f64 {
        self.n0() / 2.0
    }
}

/// `y = s + v`. A real signal gets noise on the real part only; a complex
/// one gets independent real and imaginary parts.
///
/// The same number of normal draws is taken at every noise level, so one
/// random stream yields the same noise shape across an Eb/N0 sweep.
pub fn awgn<R: Rng + ?Sized>(s: &[Complex64], cfg: &ChannelConfig, rng: &mut R) -> Vec<Complex64> {
    let sigma = cfg.noise_variance_per_real_dim().sqrt();
    s.iter()
        .map(|&z| {
            let re: f64 = rng.sample(StandardNormal);
            match cfg.field {
                Field::Real => z + Complex64::new(sigma * re, 0.0),
                Field::Complex => {
                    let im: f64 = rng.sample(StandardNormal);
                    z + Complex64::new(sigma * re, sigma * im)
                }
            }
        })
        .collect()
}
