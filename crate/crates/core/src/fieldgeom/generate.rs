use std::collections::HashSet;

use super::config::{structural_issues, Config};
use super::field::{primitive_nth_root, FieldElement, PrimeField};
use super::stabilizer::check_genericity;
use super::FieldGeomError;
use crate::blowup::Blowup;

pub const DEFAULT_RETRY_CAP: usize = 1000;

/// 64-bit linear congruential generator.
///
/// `state <- 6364136223846793005 * state + 1442695040888963407 (mod 2^64)`,
/// seeded with `state = seed`; each draw returns the high 31 bits
/// `state >> 33` of the updated state.
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        self.state >> 33
    }

    /// Uniform-ish draw from `0..bound` (`bound > 0`) by reduction.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// Draw from the inclusive range `lo..=hi`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// Samples base coordinates until the configuration is generic.
///
/// Each attempt walks the axes in order; on each axis it draws
/// `z = 1 + (x mod (q-1))` repeatedly and keeps `z` when its `mu_n`-orbit
/// is not yet used on that axis, until `s_i` orbits are chosen. The
/// attempt is accepted when every axis stabilizer is exactly `mu_n`.
pub fn generate_config(
    n: u64,
    r: usize,
    s: &[usize],
    q: u64,
    seed: u64,
) -> Result<Config, FieldGeomError> {
    generate_config_with_cap(n, r, s, q, seed, DEFAULT_RETRY_CAP)
}

pub fn generate_config_with_cap(
    n: u64,
    r: usize,
    s: &[usize],
    q: u64,
    seed: u64,
    cap: usize,
) -> Result<Config, FieldGeomError> {
    if let Some(e) = structural_issues(n, r, s, q).into_iter().next() {
        return Err(e);
    }
    let available = ((q - 1) / n) as usize;
    for (axis, &si) in s.iter().enumerate() {
        if si > available {
            return Err(FieldGeomError::TooSmallField {
                axis,
                needed: si,
                available,
            });
        }
    }
    let field = PrimeField::new(q)?;
    let zeta = primitive_nth_root(q, n)?;
    let roots: Vec<FieldElement> = (0..n).map(|k| zeta.pow(k)).collect();
    let mut rng = Lcg::new(seed);
    for _ in 0..cap {
        let mut base = Vec::with_capacity(r);
        for &si in s {
            let mut used: HashSet<u64> = HashSet::new();
            let mut row = Vec::with_capacity(si);
            while row.len() < si {
                let z = 1 + rng.below(q - 1);
                if used.contains(&z) {
                    continue;
                }
                let z_el = field.element(z);
                used.extend(roots.iter().map(|&mu| (mu * z_el).value()));
                row.push(z);
            }
            base.push(row);
        }
        let config = Config::new(n, r, s.to_vec(), q, base, Some(seed))?;
        let blowup = Blowup::new(config)?;
        if check_genericity(&blowup).is_ok() {
            return Ok(blowup.config().clone());
        }
    }
    Err(FieldGeomError::ExhaustedRetries { attempts: cap })
}
