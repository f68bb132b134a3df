//! Physical parameterization of the inverse-power diatomic potential family
//!
//! The potential is V(r) = -A/r + B/r^2 + C with A > 0. The Kratzer-Fues
//! well and its dissociation-shifted variant are special cases, reachable
//! through [`KratzerForm`]. Every per-channel quantity used downstream
//! (effective angular index, decay rate, quantization constant) is derived
//! here and nowhere else.

use crate::error::{Error, Result};
use serde::Serialize;

/// Parameters of the potential V(r) = -A/r + B/r^2 + C.
///
/// `A` carries units of energy·length, `B` energy·length², `C` energy.
/// `mu` is the reduced mass and `hbar` the action scale; both default to 1
/// in the natural units used throughout the test suite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub mu: f64,
    pub hbar: f64,
}

impl PotentialParams {
    /// Validated constructor. `A`, `mu` and `hbar` must be positive; `B`
    /// may be any real (channels that make the centrifugal radicand
    /// non-positive are rejected later, in [`PotentialParams::derive`]).
    pub fn new(a: f64, b: f64, c: f64, mu: f64, hbar: f64) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::NonPositiveCoupling(a));
        }
        if !(mu > 0.0) {
            return Err(Error::NonPositiveMass {
                name: "mu",
                value: mu,
            });
        }
        if !(hbar > 0.0) {
            return Err(Error::NonPositiveMass {
                name: "hbar",
                value: hbar,
            });
        }
        Ok(Self { a, b, c, mu, hbar })
    }

    /// Natural-unit constructor (mu = hbar = 1).
    pub fn natural(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(a, b, c, 1.0, 1.0)
    }

    /// Maps a Kratzer-type well onto the (A, B, C) parameterization.
    ///
    /// The mapping is fixed by pointwise equality with the source form, not
    /// by convention: `KratzerFues` gives (2·kappa·r_e, kappa·r_e², 0) and
    /// the dissociation-shifted variant gives (2·kappa·r_e, kappa·r_e²,
    /// kappa), i.e. the well kappa·((r-r_e)/r)² that vanishes at r_e and
    /// tends to +kappa at dissociation.
    pub fn from_kratzer(form: &KratzerForm) -> Result<Self> {
        let KratzerForm { kappa, r_e, variant } = *form;
        match variant {
            KratzerVariant::KratzerFues => {
                Self::natural(2.0 * kappa * r_e, kappa * r_e * r_e, 0.0)
            }
            KratzerVariant::ModifiedKratzer => {
                Self::natural(2.0 * kappa * r_e, kappa * r_e * r_e, kappa)
            }
        }
    }

    /// Potential value at hyperradius `r`.
    pub fn evaluate(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("potential requires r > 0, got {r}")));
        }
        Ok(-self.a / r + self.b / (r * r) + self.c)
    }

    /// Strength of the inverse-square part in the radial equation,
    /// 8·mu·B/hbar².
    pub(crate) fn inverse_square_strength(&self) -> f64 {
        8.0 * self.mu * self.b / (self.hbar * self.hbar)
    }

    /// All secondary per-channel quantities. Fails with
    /// [`Error::UnphysicalChannel`] when the centrifugal radicand
    /// (2l+N-2)² + 8·mu·B/hbar² is not positive.
    pub fn derive(&self, ch: &Channel) -> Result<DerivedParams> {
        let base = 2.0 * ch.ell as f64 + ch.n_dim as f64 - 2.0;
        let radicand = base * base + self.inverse_square_strength();
        if !(radicand > 0.0) {
            return Err(Error::UnphysicalChannel { radicand });
        }
        let root = radicand.sqrt();
        let v = 0.5 * (root - 1.0);
        let half_shift = 0.5 * (ch.n_dim as f64 - 3.0);
        let nu = v - half_shift;
        let k = 2.0 * ch.n_r as f64 + 2.0 * v + 2.0;
        // With E_n = C - 2 mu A^2 / (hbar K)^2 the decay rate
        // sqrt(2 mu (C - E_n)) / hbar collapses to 2 mu A / (hbar^2 K).
        let epsilon = 2.0 * self.mu * self.a / (self.hbar * self.hbar * k);
        let alpha = 0.5 * k;
        Ok(DerivedParams {
            radicand,
            v,
            nu,
            epsilon,
            alpha,
            k,
        })
    }
}

/// Which Kratzer-type well a [`KratzerForm`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KratzerVariant {
    /// -kappa (2 r_e / r - r_e² / r²): minimum -kappa at r_e, zero at infinity.
    KratzerFues,
    /// kappa ((r - r_e)/r)²: zero at r_e, +kappa at infinity.
    ModifiedKratzer,
}

/// A Kratzer-type well given by its interaction energy and equilibrium
/// distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KratzerForm {
    pub kappa: f64,
    pub r_e: f64,
    pub variant: KratzerVariant,
}

impl KratzerForm {
    pub fn new(kappa: f64, r_e: f64, variant: KratzerVariant) -> Result<Self> {
        if !(kappa > 0.0) {
            return Err(Error::Domain(format!("kappa must be positive, got {kappa}")));
        }
        if !(r_e > 0.0) {
            return Err(Error::Domain(format!("r_e must be positive, got {r_e}")));
        }
        Ok(Self { kappa, r_e, variant })
    }

    /// Direct evaluation of the source form, independent of the (A, B, C)
    /// mapping. Used to cross-check `from_kratzer` pointwise.
    pub fn evaluate(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("potential requires r > 0, got {r}")));
        }
        Ok(match self.variant {
            KratzerVariant::KratzerFues => {
                -self.kappa * (2.0 * self.r_e / r - (self.r_e / r).powi(2))
            }
            KratzerVariant::ModifiedKratzer => self.kappa * ((r - self.r_e) / r).powi(2),
        })
    }
}

/// Quantum numbers labeling one radial problem: spatial dimension N >= 2,
/// orbital angular momentum l >= 0 and hyperradial quantum number n_r >= 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Channel {
    pub n_dim: u32,
    pub ell: u32,
    pub n_r: u32,
}

impl Channel {
    pub fn new(n_dim: u32, ell: u32, n_r: u32) -> Result<Self> {
        if n_dim < 2 {
            return Err(Error::Domain(format!(
                "dimension must be at least 2, got {n_dim}"
            )));
        }
        Ok(Self { n_dim, ell, n_r })
    }

}

/// Per-channel derived quantities.
///
/// `radicand` is (2l+N-2)² + 8·mu·B/hbar². `v` = (sqrt(radicand)-1)/2 is the
/// Laguerre-exponent form of the effective angular index; `nu` = v-(N-3)/2
/// solves nu(nu+N-2) = l(l+N-2) + 2·mu·B/hbar² and is the power of r at the
/// origin. `k` = 2 n_r + 2v + 2 is the quantization constant entering the
/// energy denominator, `epsilon` the exponential decay rate of the bound
/// eigenfunction and `alpha` = k/2 the quantized value of the confluent
/// parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedParams {
    pub radicand: f64,
    pub v: f64,
    pub nu: f64,
    pub epsilon: f64,
    pub alpha: f64,
    pub k: f64,
}
