//! Generalized Gauss-Laguerre quadrature and the radial inner products
//! built on it.
//!
//! Everything this crate integrates has the shape
//! (polynomial) · r^p · e^{-s r}, so a rule whose weight matches the origin
//! exponent and decay scale of the integrand is exact up to roundoff. Rules
//! are generated by Newton iteration on the recurrence; order escalation
//! (64 -> 128 -> 256) guards against the one thing that can still go
//! wrong, a mismatched exponent.

use crate::error::{Error, Result};
use crate::laguerre::log_gamma;
use crate::spectrum;
use crate::wavefunction::RadialState;

/// Nodes and weights integrating f against x^alpha e^{-x} on [0, inf).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub alpha: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    /// Builds the `order`-point rule for weight x^alpha e^{-x}.
    ///
    /// Nodes are the roots of L_order^alpha found by Newton iteration from
    /// the classical initial guesses; weights follow from
    /// Gamma(n+alpha+1) / (n! x_i L'(x_i)^2), assembled in log space so
    /// large orders cannot overflow.
    pub fn gauss_laguerre(alpha: f64, order: usize) -> Result<Self> {
        if !(alpha > -1.0) {
            return Err(Error::Domain(format!(
                "quadrature weight exponent must exceed -1, got {alpha}"
            )));
        }
        if !(1..=400).contains(&order) {
            return Err(Error::Domain(format!(
                "rule order must lie in 1..=400, got {order}"
            )));
        }
        let n = order as f64;
        let mut nodes = Vec::with_capacity(order);
        let mut weights = Vec::with_capacity(order);
        let log_norm = log_gamma(n + alpha + 1.0)? - log_gamma(n + 1.0)?;

        let mut x = 0.0f64;
        for i in 0..order {
            // classical initial guesses, then Newton
            x = match i {
                0 => (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * n + 1.8 * alpha),
                1 => x + (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * n),
                _ => {
                    let ai = (i - 1) as f64;
                    x + ((1.0 + 2.55 * ai) / (1.9 * ai)
                        + 1.26 * ai * alpha / (1.0 + 3.5 * ai))
                        * (x - nodes[i - 2])
                        / (1.0 + 0.3 * alpha)
                }
            };
            let floor = nodes.last().map_or(0.0, |&p: &f64| p);
            let mut converged = false;
            let mut last_step = f64::INFINITY;
            for _ in 0..100 {
                let (p, dp, _) = scaled_laguerre_with_derivative(order, alpha, x);
                let step = p / dp;
                let mut next = x - step;
                // keep iterates inside (previous root, +inf)
                if next <= floor {
                    next = 0.5 * (x + floor);
                }
                let delta = step.abs();
                if delta <= 1e-14 * x.max(1.0) {
                    x = next;
                    converged = true;
                    break;
                }
                // rounding noise in the recurrence makes Newton dither in
                // a few-ulp limit cycle near the root; once steps stop
                // shrinking at that scale, the node is as good as it gets
                if delta >= last_step && last_step <= 1e-11 * x.max(1.0) {
                    converged = true;
                    break;
                }
                last_step = delta;
                x = next;
            }
            if !converged {
                return Err(Error::Convergence(format!(
                    "Laguerre node {i} of order {order} (alpha = {alpha}) did not settle"
                )));
            }
            let (_, dp, scale) = scaled_laguerre_with_derivative(order, alpha, x);
            let log_w = log_norm - x.ln() - 2.0 * (dp.abs().ln() + scale);
            nodes.push(x);
            // tail weights of very large rules underflow; clamp so the
            // stored weights stay strictly positive
            weights.push(log_w.exp().max(f64::MIN_POSITIVE));
        }

        let rule = Self {
            alpha,
            nodes,
            weights,
        };
        // zeroth moment must reproduce Gamma(alpha + 1)
        let total: f64 = rule.weights.iter().sum();
        let expected = log_gamma(alpha + 1.0)?.exp();
        if !((total / expected - 1.0).abs() < 1e-10) {
            return Err(Error::Convergence(format!(
                "rule of order {order}, alpha {alpha}: weight sum {total} vs Gamma {expected}"
            )));
        }
        Ok(rule)
    }

    /// Integral of f(x) x^alpha e^{-x} over [0, inf).
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }
}

/// Value and derivative of L_n^alpha at x, rescaled on the fly so large
/// orders never overflow. Returns (p, p', log_scale) where the true values
/// are p·e^{log_scale} and p'·e^{log_scale}.
fn scaled_laguerre_with_derivative(n: usize, alpha: f64, x: f64) -> (f64, f64, f64) {
    let mut prev = 0.0f64;
    let mut cur = 1.0f64;
    let mut log_scale = 0.0f64;
    for k in 0..n {
        let kf = k as f64;
        let next = ((2.0 * kf + alpha + 1.0 - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        let mag = cur.abs().max(prev.abs());
        if mag > 1e250 {
            prev /= 1e250;
            cur /= 1e250;
            log_scale += 250.0 * std::f64::consts::LN_10;
        }
    }
    // x L_n' = n L_n - (n + alpha) L_{n-1}
    let nf = n as f64;
    let deriv = (nf * cur - (nf + alpha) * prev) / x;
    (cur, deriv, log_scale)
}

const ESCALATION_ORDERS: [usize; 3] = [64, 128, 256];

/// Integral of r^{origin_exponent} e^{-decay r} smooth(r) dr over
/// [0, inf), by mapping z = decay·r onto a matched Gauss-Laguerre rule.
/// Escalates the order until two successive rules agree to 1e-11 relative.
pub fn integrate_radial<F: Fn(f64) -> f64>(
    origin_exponent: f64,
    decay: f64,
    smooth: F,
) -> Result<f64> {
    if !(origin_exponent > -1.0) {
        return Err(Error::Domain(format!(
            "integrand diverges at the origin: combined exponent {origin_exponent} <= -1"
        )));
    }
    if !(decay > 0.0) {
        return Err(Error::Domain(format!(
            "integrand needs a positive decay rate, got {decay}"
        )));
    }
    let jacobian = (-(origin_exponent + 1.0) * decay.ln()).exp();
    let mut previous: Option<(f64, f64)> = None;
    for &order in &ESCALATION_ORDERS {
        let rule = QuadratureRule::gauss_laguerre(origin_exponent, order)?;
        let value = jacobian * rule.integrate(|z| smooth(z / decay));
        let magnitude = jacobian * rule.integrate(|z| smooth(z / decay).abs());
        if let Some((prev_value, prev_mag)) = previous {
            let scale = magnitude.abs().max(prev_mag.abs());
            if (value - prev_value).abs() <= (1e-11 * value.abs()).max(1e-13 * scale) {
                return Ok(value);
            }
        }
        previous = Some((value, magnitude));
    }
    Err(Error::Convergence(
        "radial integral did not stabilize under order escalation".into(),
    ))
}

/// Inner product of two radial states sharing a dimension:
/// integral of f(r) g(r) r^power r^{measure_exponent} dr.
///
/// `measure_exponent` is N-1 for the physical volume measure or N-2 for
/// the measure under which a fixed-decay-rate family is orthogonal.
pub fn radial_inner_product(
    f: &RadialState,
    g: &RadialState,
    power: i32,
    measure_exponent: i32,
) -> Result<f64> {
    if f.channel.n_dim != g.channel.n_dim {
        return Err(Error::Domain(format!(
            "states live in different dimensions: {} vs {}",
            f.channel.n_dim, g.channel.n_dim
        )));
    }
    if power < -2 {
        return Err(Error::Domain(format!(
            "inverse powers below r^-2 are not supported, got {power}"
        )));
    }
    let n_dim = f.channel.n_dim as i32;
    if measure_exponent != n_dim - 1 && measure_exponent != n_dim - 2 {
        return Err(Error::Domain(format!(
            "measure exponent must be N-1 or N-2, got {measure_exponent}"
        )));
    }
    let origin = f.origin_exponent() + g.origin_exponent() + (power + measure_exponent) as f64;
    let decay = f.epsilon() + g.epsilon();
    integrate_radial(origin, decay, |r| f.polynomial_part(r) * g.polynomial_part(r))
}

/// Expectation value of the full potential -A/r + B/r^2 + C in `state`.
pub fn potential_expectation(state: &RadialState) -> Result<f64> {
    let p = &state.params;
    let n1 = state.channel.n_dim as i32 - 1;
    let inv_r = radial_inner_product(state, state, -1, n1)?;
    let inv_r2 = radial_inner_product(state, state, -2, n1)?;
    Ok(-p.a * inv_r + p.b * inv_r2 + p.c)
}

/// Kinetic expectation through the eigenvalue: <T> = E_n - <V>. This stays
/// clear of numerical second derivatives entirely.
pub fn kinetic_expectation(state: &RadialState) -> Result<f64> {
    let level = spectrum::energy(&state.params, &state.channel)?;
    Ok(level.energy - potential_expectation(state)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Channel, PotentialParams};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn hydrogen_state(ell: u32, n_r: u32) -> RadialState {
        let p = PotentialParams::natural(1.0, 0.0, 0.0).unwrap();
        RadialState::new(&p, &Channel::new(3, ell, n_r).unwrap()).unwrap()
    }

    #[test]
    fn one_point_rule() {
        let rule = QuadratureRule::gauss_laguerre(0.0, 1).unwrap();
        assert_relative_eq!(rule.nodes[0], 1.0, max_relative = 1e-13);
        assert_relative_eq!(rule.weights[0], 1.0, max_relative = 1e-13);
    }

    #[test]
    fn two_point_rule_nodes() {
        let rule = QuadratureRule::gauss_laguerre(0.0, 2).unwrap();
        assert_relative_eq!(rule.nodes[0], 2.0 - 2.0f64.sqrt(), max_relative = 1e-13);
        assert_relative_eq!(rule.nodes[1], 2.0 + 2.0f64.sqrt(), max_relative = 1e-13);
        assert_relative_eq!(rule.weights[0], (2.0 + 2.0f64.sqrt()) / 4.0, max_relative = 1e-12);
        assert_relative_eq!(rule.weights[1], (2.0 - 2.0f64.sqrt()) / 4.0, max_relative = 1e-12);
    }

    #[test]
    fn fractional_weight_moment() {
        // integral of x^{1.7} e^{-x} x^5 dx = Gamma(7.7)
        let rule = QuadratureRule::gauss_laguerre(1.7, 64).unwrap();
        let value = rule.integrate(|x| x.powi(5));
        let expected = log_gamma(7.7).unwrap().exp();
        assert_relative_eq!(value, expected, max_relative = 1e-11);
    }

    #[test]
    fn large_order_rule_is_sane() {
        let rule = QuadratureRule::gauss_laguerre(3.2, 256).unwrap();
        assert_eq!(rule.order(), 256);
        assert!(rule.nodes.windows(2).all(|w| w[1] > w[0]));
        assert!(rule.nodes[0] > 0.0);
        assert!(rule.weights.iter().all(|&w| w > 0.0));
    }

    #[test]
    fn hydrogen_moments() {
        let s = hydrogen_state(0, 0);
        let n1 = 2;
        assert_relative_eq!(radial_inner_product(&s, &s, 0, n1).unwrap(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(radial_inner_product(&s, &s, -1, n1).unwrap(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(radial_inner_product(&s, &s, -2, n1).unwrap(), 2.0, max_relative = 1e-12);
        assert_relative_eq!(radial_inner_product(&s, &s, 1, n1).unwrap(), 1.5, max_relative = 1e-12);
    }

    #[test]
    fn hydrogen_kinetic_energies() {
        assert_relative_eq!(kinetic_expectation(&hydrogen_state(0, 0)).unwrap(), 0.5, max_relative = 1e-11);
        assert_relative_eq!(kinetic_expectation(&hydrogen_state(1, 0)).unwrap(), 0.125, max_relative = 1e-10);
    }

    #[test]
    fn coulomb_virial_for_b_zero() {
        for (ell, n_r) in [(0u32, 0u32), (0, 2), (1, 1), (2, 0)] {
            let s = hydrogen_state(ell, n_r);
            let e = spectrum::energy(&s.params, &s.channel).unwrap().energy;
            let t = kinetic_expectation(&s).unwrap();
            assert_relative_eq!(t, -e, max_relative = 1e-9);
        }
    }

    #[test]
    fn inner_product_symmetry() {
        let p = PotentialParams::natural(2.0, 1.0, 0.0).unwrap();
        let f = RadialState::new(&p, &Channel::new(4, 1, 0).unwrap()).unwrap();
        let g = RadialState::new(&p, &Channel::new(4, 1, 2).unwrap()).unwrap();
        let fg = radial_inner_product(&f, &g, 1, 3).unwrap();
        let gf = radial_inner_product(&g, &f, 1, 3).unwrap();
        assert_relative_eq!(fg, gf, max_relative = 1e-14, epsilon = 1e-15);
    }

    #[test]
    fn laguerre_orthogonality_under_matched_weight() {
        // integral of e^{-z} z^a L_n^a L_m^a dz = delta_{nm} Gamma(n+a+1)/n!,
        // and with one extra power of z the diagonal grows to
        // (2n+a+1) Gamma(n+a+1)/n!
        for &alpha in &[0.5f64, 1.0, 2.7] {
            let rule = QuadratureRule::gauss_laguerre(alpha, 64).unwrap();
            let rule_up = QuadratureRule::gauss_laguerre(alpha + 1.0, 64).unwrap();
            for n in 0..=10u32 {
                for m in 0..=10u32 {
                    let value = rule.integrate(|z| {
                        crate::laguerre::laguerre_value(n, alpha, z)
                            * crate::laguerre::laguerre_value(m, alpha, z)
                    });
                    let diag = (log_gamma(n as f64 + alpha + 1.0).unwrap()
                        - log_gamma(n as f64 + 1.0).unwrap())
                    .exp();
                    let expected = if n == m { diag } else { 0.0 };
                    assert!(
                        (value - expected).abs() <= 1e-10 * diag.max(1.0),
                        "alpha={alpha} n={n} m={m}: {value} vs {expected}"
                    );
                    if n == m {
                        let weighted = rule_up.integrate(|z| {
                            crate::laguerre::laguerre_value(n, alpha, z).powi(2)
                        });
                        let expected = (2.0 * n as f64 + alpha + 1.0) * diag;
                        assert_relative_eq!(weighted, expected, max_relative = 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn divergent_origin_rejected() {
        let s = hydrogen_state(0, 0);
        // nu = 0 for the 1s channel, so r^-2 with measure N-2 hits r^0 at
        // the origin exactly on the divergence boundary
        assert!(radial_inner_product(&s, &s, -2, 1).is_err());
        assert!(radial_inner_product(&s, &s, -3, 2).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        // rule integrates monomials x^k exactly for k <= 2 order - 1
        #[test]
        fn polynomial_exactness(
            alpha in -0.9f64..6.0,
            order in 1usize..48,
            k_frac in 0.0f64..1.0,
        ) {
            let k = ((2 * order - 1) as f64 * k_frac).floor() as i32;
            let rule = QuadratureRule::gauss_laguerre(alpha, order).unwrap();
            let value = rule.integrate(|x| x.powi(k));
            let expected = log_gamma(alpha + k as f64 + 1.0).unwrap().exp();
            prop_assert!(
                (value / expected - 1.0).abs() < 1e-11,
                "alpha={} order={} k={}: {} vs {}", alpha, order, k, value, expected
            );
        }
    }
}
