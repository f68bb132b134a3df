//! Normalized radial eigenfunctions.
//!
//! A bound state is R(r) = C_n r^nu e^{-eps r} L_n^{2v+1}(2 eps r). The
//! normalization constant
//!
//! ```text
//! C_n = sqrt( n! (2 eps)^{2v+3} / (2 (n+v+1) Gamma(n+2v+2)) )
//! ```
//!
//! is assembled in log space: Gamma(n+2v+2) overflows doubles well inside
//! the supported quantum-number range. Factorials with non-integer
//! arguments are read as Gamma(x+1) throughout, which is the continuation
//! under which the normalization integral closes.
//!
//! Ladder recurrences connect members of a family sharing one decay rate,
//! while physical eigenstates carry an n_r-dependent rate; both are
//! represented by [`RadialState`] through `epsilon_override`.

use crate::error::{Error, Result};
use crate::laguerre::{self, log_gamma};
use crate::model::{Channel, DerivedParams, PotentialParams};

/// A radial eigenfunction, either physical (own decay rate) or a member of
/// a fixed-decay-rate family (`epsilon_override` set).
#[derive(Debug, Clone, PartialEq)]
pub struct RadialState {
    pub channel: Channel,
    pub params: PotentialParams,
    pub derived: DerivedParams,
    pub epsilon_override: Option<f64>,
    log_norm: f64,
}

/// Normalization constant of the physical state for (params, channel).
pub fn normalization_constant(params: &PotentialParams, ch: &Channel) -> Result<f64> {
    Ok(RadialState::new(params, ch)?.norm_constant())
}

impl RadialState {
    /// Physical eigenstate: decay rate from the channel's own energy.
    pub fn new(params: &PotentialParams, ch: &Channel) -> Result<Self> {
        Self::build(params, ch, None)
    }

    /// Family member with the decay rate pinned to `epsilon`.
    pub fn with_epsilon(params: &PotentialParams, ch: &Channel, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) {
            return Err(Error::Domain(format!(
                "decay rate must be positive, got {epsilon}"
            )));
        }
        Self::build(params, ch, Some(epsilon))
    }

    fn build(params: &PotentialParams, ch: &Channel, epsilon: Option<f64>) -> Result<Self> {
        let derived = params.derive(ch)?;
        let eps = epsilon.unwrap_or(derived.epsilon);
        let n = ch.n_r as f64;
        let v = derived.v;
        let log_norm = 0.5
            * (log_gamma(n + 1.0)? + (2.0 * v + 3.0) * (2.0 * eps).ln()
                - std::f64::consts::LN_2
                - (n + v + 1.0).ln()
                - log_gamma(n + 2.0 * v + 2.0)?);
        Ok(Self {
            channel: *ch,
            params: *params,
            derived,
            epsilon_override: epsilon,
            log_norm,
        })
    }

    /// Active decay rate: the override when present, the physical rate
    /// otherwise.
    pub fn epsilon(&self) -> f64 {
        self.epsilon_override.unwrap_or(self.derived.epsilon)
    }

    /// C_n, always positive.
    pub fn norm_constant(&self) -> f64 {
        self.log_norm.exp()
    }

    /// Power of r at the origin (equals nu).
    pub fn origin_exponent(&self) -> f64 {
        self.derived.nu
    }

    /// Laguerre superscript 2v + 1.
    pub fn laguerre_superscript(&self) -> f64 {
        2.0 * self.derived.v + 1.0
    }

    fn domain_check(&self, r: f64) -> Result<()> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!(
                "radial evaluation requires r > 0, got {r}"
            )));
        }
        Ok(())
    }

    /// Everything in front of the Laguerre polynomial:
    /// C_n r^nu e^{-eps r}, evaluated in log space.
    fn prefactor(&self, r: f64) -> f64 {
        let eps = self.epsilon();
        (self.log_norm + self.derived.nu * r.ln() - eps * r).exp()
    }

    /// C_n L_n^{2v+1}(2 eps r): the full state divided by r^nu e^{-eps r}.
    /// Inner products integrate this smooth part against an explicit
    /// weight.
    pub(crate) fn polynomial_part(&self, r: f64) -> f64 {
        let x = 2.0 * self.epsilon() * r;
        self.norm_constant() * laguerre::laguerre_value(self.channel.n_r, self.laguerre_superscript(), x)
    }

    /// Smooth part of r R'(r), i.e. r R'(r) / (r^nu e^{-eps r}):
    /// (nu - eps r) C_n L_n + C_n x L_n' with x = 2 eps r.
    pub(crate) fn polynomial_part_rderiv(&self, r: f64) -> f64 {
        let eps = self.epsilon();
        let x = 2.0 * eps * r;
        let a = self.laguerre_superscript();
        let n = self.channel.n_r;
        let c = self.norm_constant();
        let value = laguerre::laguerre_value(n, a, x);
        // x L' = n L_n - (n + a) L_{n-1}
        let x_dl = if n == 0 {
            0.0
        } else {
            n as f64 * value - (n as f64 + a) * laguerre::laguerre_value(n - 1, a, x)
        };
        c * ((self.derived.nu - eps * r) * value + x_dl)
    }

    /// R(r).
    pub fn eval(&self, r: f64) -> Result<f64> {
        self.domain_check(r)?;
        let x = 2.0 * self.epsilon() * r;
        Ok(self.prefactor(r) * laguerre::laguerre_value(self.channel.n_r, self.laguerre_superscript(), x))
    }

    /// dR/dr, assembled from the exact Laguerre derivative
    /// d/dx L_n^a = -L_{n-1}^{a+1}.
    pub fn eval_derivative(&self, r: f64) -> Result<f64> {
        self.domain_check(r)?;
        let eps = self.epsilon();
        let x = 2.0 * eps * r;
        let a = self.laguerre_superscript();
        let n = self.channel.n_r;
        let value = laguerre::laguerre_value(n, a, x);
        let dpoly = if n == 0 {
            0.0
        } else {
            -laguerre::laguerre_value(n - 1, a + 1.0, x)
        };
        let g1 = self.derived.nu / r - eps;
        Ok(self.prefactor(r) * (g1 * value + 2.0 * eps * dpoly))
    }

    /// d²R/dr².
    pub fn eval_second_derivative(&self, r: f64) -> Result<f64> {
        self.domain_check(r)?;
        let eps = self.epsilon();
        let x = 2.0 * eps * r;
        let a = self.laguerre_superscript();
        let n = self.channel.n_r;
        let value = laguerre::laguerre_value(n, a, x);
        let d1 = if n == 0 {
            0.0
        } else {
            -laguerre::laguerre_value(n - 1, a + 1.0, x)
        };
        let d2 = if n < 2 {
            0.0
        } else {
            laguerre::laguerre_value(n - 2, a + 2.0, x)
        };
        let nu = self.derived.nu;
        let g1 = nu / r - eps;
        let g2 = -nu / (r * r);
        Ok(self.prefactor(r)
            * ((g1 * g1 + g2) * value + 4.0 * eps * g1 * d1 + 4.0 * eps * eps * d2))
    }

    /// Reduced one-dimensional wavefunction U(r) = r^{(N-1)/2} R(r).
    pub fn reduced(&self, r: f64) -> Result<f64> {
        let value = self.eval(r)?;
        Ok(r.powf((self.channel.n_dim as f64 - 1.0) / 2.0) * value)
    }

    /// Element-wise evaluation over a grid.
    pub fn eval_grid(&self, nodes: &[f64]) -> Result<GridFunction> {
        if nodes.is_empty() {
            return Err(Error::EmptyGrid);
        }
        for w in nodes.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::Domain("grid nodes must be strictly increasing".into()));
            }
        }
        let values = nodes
            .iter()
            .map(|&r| self.eval(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(GridFunction {
            nodes: nodes.to_vec(),
            values,
        })
    }
}

/// A sampled function: strictly increasing positive nodes with one value
/// per node.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
}

impl GridFunction {
    /// Number of strict sign changes, ignoring exact zeros.
    pub fn sign_changes(&self) -> usize {
        let mut count = 0;
        let mut prev = 0.0f64;
        for &v in &self.values {
            if v == 0.0 {
                continue;
            }
            if prev != 0.0 && v.signum() != prev.signum() {
                count += 1;
            }
            prev = v;
        }
        count
    }
}

/// `count` logarithmically spaced nodes on [lo, hi].
pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && count >= 2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// `count` linearly spaced nodes on [lo, hi].
pub fn linear_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(hi > lo && count >= 2);
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}
