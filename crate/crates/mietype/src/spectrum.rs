//! Closed-form energy eigenvalues and level degeneracies.
//!
//! The bound spectrum is E = C - 2 mu A^2 / (hbar^2 K^2) with
//! K = 2 n_r + 2 nu + N - 1 = 2 n_r + 2v + 2. Setting C = 0 recovers the
//! Kratzer-Fues levels and B = C = 0 the Coulombic ones. Degeneracies are
//! counted through hyperspherical-harmonic multiplicities.

use crate::error::{Error, Result};
use crate::model::{Channel, PotentialParams};
use serde::Serialize;

/// One bound level. `principal_n` = n_r + nu + 1 is generically
/// non-integer when B != 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyLevel {
    pub channel: Channel,
    pub energy: f64,
    pub principal_n: f64,
    pub k: f64,
}

/// Bound-state energy of the general potential.
pub fn energy(params: &PotentialParams, ch: &Channel) -> Result<EnergyLevel> {
    let d = params.derive(ch)?;
    let denom = params.hbar * params.hbar * d.k * d.k;
    Ok(EnergyLevel {
        channel: *ch,
        energy: params.c - 2.0 * params.mu * params.a * params.a / denom,
        principal_n: ch.n_r as f64 + d.nu + 1.0,
        k: d.k,
    })
}

/// Kratzer-Fues specialization: identical to [`energy`] but insists on
/// C = 0 so callers cannot silently pass a shifted well.
pub fn energy_kratzer_fues(params: &PotentialParams, ch: &Channel) -> Result<EnergyLevel> {
    if params.c != 0.0 {
        return Err(Error::Precondition(format!(
            "Kratzer-Fues levels require C = 0, got C = {}",
            params.c
        )));
    }
    energy(params, ch)
}

/// Coulombic specialization (B = C = 0), where the effective angular index
/// collapses to the integer orbital angular momentum.
pub fn energy_coulomb(params: &PotentialParams, ch: &Channel) -> Result<EnergyLevel> {
    if params.b != 0.0 || params.c != 0.0 {
        return Err(Error::Precondition(format!(
            "Coulombic levels require B = C = 0, got B = {}, C = {}",
            params.b, params.c
        )));
    }
    let k = 2.0 * ch.n_r as f64 + 2.0 * ch.ell as f64 + ch.n_dim as f64 - 1.0;
    let denom = params.hbar * params.hbar * k * k;
    Ok(EnergyLevel {
        channel: *ch,
        energy: -2.0 * params.mu * params.a * params.a / denom,
        principal_n: ch.n_r as f64 + ch.ell as f64 + 1.0,
        k,
    })
}

/// Energy with the orbital angular momentum treated as a continuous
/// variable. This is what Hellmann-Feynman differentiation with respect to
/// l means; it is exposed for the derivative cross-checks.
pub fn energy_continuous_ell(params: &PotentialParams, n_dim: u32, ell: f64, n_r: u32) -> f64 {
    let base = 2.0 * ell + n_dim as f64 - 2.0;
    let radicand = base * base + params.inverse_square_strength();
    let k = 2.0 * n_r as f64 + 1.0 + radicand.sqrt();
    params.c - 2.0 * params.mu * params.a * params.a / (params.hbar * params.hbar * k * k)
}

/// Degeneracy table for one dimension: rows of (principal number n, count).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegeneracyTable {
    pub n_dim: u32,
    pub rows: Vec<(u32, u64)>,
}

impl DegeneracyTable {
    pub fn build(n_dim: u32, n_max: u32) -> Result<Self> {
        let rows = (1..=n_max)
            .map(|n| Ok((n, degeneracy(n, n_dim)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n_dim, rows })
    }
}

/// Multiplicity of hyperspherical harmonics of degree `nu` in `n_dim`
/// dimensions: (2 nu + N - 2) (nu + N - 3)! / (nu! (N - 2)!).
fn harmonic_multiplicity(nu: u32, n_dim: u32) -> u128 {
    let n = n_dim as u128;
    let nu = nu as u128;
    // (nu + N - 3)! / nu! = product of nu+1 ..= nu+N-3
    let rising: u128 = (nu + 1..=nu + n - 3).product();
    let fact_n2: u128 = (1..=n - 2).product();
    (2 * nu + n - 2) * rising / fact_n2
}

/// Number of independent states sharing the principal level `n`, i.e. the
/// sum of harmonic multiplicities for degrees 0 through n-1.
pub fn degeneracy(n: u32, n_dim: u32) -> Result<u64> {
    if n < 1 {
        return Err(Error::Domain(format!("principal number must be >= 1, got {n}")));
    }
    if n_dim < 3 {
        return Err(Error::Domain(format!(
            "degeneracy counting is defined for N >= 3, got {n_dim}"
        )));
    }
    let total: u128 = (0..n).map(|nu| harmonic_multiplicity(nu, n_dim)).sum();
    u64::try_from(total).map_err(|_| Error::Domain("degeneracy exceeds u64".into()))
}

/// Literal enumeration of the angular quantum-number chains
/// nu >= m_1 >= m_2 >= ... >= m_{N-3} >= |m_{N-2}|, as an independent
/// cross-check of [`degeneracy`]. Guarded to 3 <= N <= 8, 1 <= n <= 6 to
/// keep the enumeration small.
pub fn degeneracy_enumerated(n: u32, n_dim: u32) -> Result<u64> {
    if !(3..=8).contains(&n_dim) || !(1..=6).contains(&n) {
        return Err(Error::Domain(format!(
            "enumeration guard requires 3 <= N <= 8 and 1 <= n <= 6, got N = {n_dim}, n = {n}"
        )));
    }
    Ok(enumerate_chains(n, n_dim))
}

pub(crate) fn enumerate_chains(n: u32, n_dim: u32) -> u64 {
    // chain positions m_1 ..= m_{N-2}; the final index ranges over
    // -upper ..= upper, all earlier ones over 0 ..= upper descending
    fn count(levels_left: u32, upper: u32) -> u64 {
        if levels_left == 1 {
            return 2 * upper as u64 + 1;
        }
        (0..=upper).map(|m| count(levels_left - 1, m)).sum()
    }
    (0..n).map(|nu| count(n_dim - 2, nu)).sum()
}
