//! Floating-point demonstrations of the two analytic statements: the
//! unitary limit `β → 0` of the rime parameters and the exponential
//! formulas `e^{hr} = I + (1 − e^{−h})r`, `e^{h r₀} = I + h r₀`.

use num_traits::Zero;

use crate::constructors::MuVector;
use crate::error::{Error, Result};
use crate::operator::{Arity, Operator};
use crate::rational::{self, Rational};

/// Default absolute tolerance for float comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct LimitCurve {
    pub betas: Vec<f64>,
    /// Per β, `max_{i≠j} |β_ij(β) − β⁰_ij|`.
    pub deviations: Vec<f64>,
    /// Least-squares slope of `ln deviation` against `ln β`.
    pub slope: f64,
}

/// Sets `φ_i = 1 + βμ_i` and measures how far `β_ij = βφ_i/(φ_i − φ_j)` is
/// from `β⁰_ij = 1/(μ_i − μ_j)` for each β.
pub fn unitary_limit_curve(mu: &MuVector, betas: &[f64]) -> Result<LimitCurve> {
    if betas.is_empty() {
        return Err(Error::InvalidParameter("no beta values".into()));
    }
    if betas.iter().any(|&b| !(b > 0.0 && b.is_finite())) {
        return Err(Error::InvalidParameter(
            "beta values must be positive".into(),
        ));
    }
    if betas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidParameter(
            "beta values must be strictly decreasing".into(),
        ));
    }
    let mu: Vec<f64> = mu.values().iter().map(rational::to_f64).collect();
    let n = mu.len();
    let mut deviations = Vec::with_capacity(betas.len());
    for &beta in betas {
        let phi: Vec<f64> = mu.iter().map(|m| 1.0 + beta * m).collect();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let gap = phi[i] - phi[j];
                if gap == 0.0 || phi[i] == 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "phi collision at beta = {beta:e}"
                    )));
                }
                let deformed = beta * phi[i] / gap;
                let limit = 1.0 / (mu[i] - mu[j]);
                worst = worst.max((deformed - limit).abs());
            }
        }
        deviations.push(worst);
    }
    let slope = log_log_slope(betas, &deviations);
    Ok(LimitCurve {
        betas: betas.to_vec(),
        deviations,
        slope,
    })
}

/// Least-squares slope through `(ln x, ln y)`, skipping non-positive `y`.
/// `NaN` when fewer than two usable points remain.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let points: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(_, &y)| y > 0.0)
        .map(|(&x, &y)| (x.ln(), y.ln()))
        .collect();
    if points.len() < 2 {
        return f64::NAN;
    }
    let len = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / len;
    let my = points.iter().map(|p| p.1).sum::<f64>() / len;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// `β(h) = 1 − e^{−h}`.
pub fn renormalized_beta(h: f64) -> f64 {
    -(-h).exp_m1()
}

/// Dense float matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
struct FloatMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl FloatMatrix {
    fn from_operator(op: &Operator) -> Self {
        FloatMatrix {
            dim: op.dim(),
            data: op.entries().iter().map(rational::to_f64).collect(),
        }
    }

    fn identity(dim: usize) -> Self {
        let mut data = vec![0.0; dim * dim];
        for d in 0..dim {
            data[d * dim + d] = 1.0;
        }
        FloatMatrix { dim, data }
    }

    fn mul(&self, other: &FloatMatrix) -> FloatMatrix {
        let dim = self.dim;
        let mut data = vec![0.0; dim * dim];
        for r in 0..dim {
            for k in 0..dim {
                let a = self.data[r * dim + k];
                if a == 0.0 {
                    continue;
                }
                for c in 0..dim {
                    data[r * dim + c] += a * other.data[k * dim + c];
                }
            }
        }
        FloatMatrix { dim, data }
    }

    fn axpy(&self, factor: f64, other: &FloatMatrix) -> FloatMatrix {
        FloatMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + factor * b)
                .collect(),
        }
    }

    fn max_abs_diff(&self, other: &FloatMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Sums `Σ_{k=0}^{terms} (h r)^k / k!` in floating point and returns the
/// largest entrywise deviation from the closed form: `I + (1 − e^{−h}) r`
/// when `r² = −r`, `I + h r` when `r² = 0`. Both conditions are checked
/// exactly first; any other input is rejected.
pub fn exp_formula_check(r: &Operator, h: f64, terms: usize) -> Result<f64> {
    r.expect_arity(Arity::Two)?;
    let square = r * r;
    let coefficient = if square.is_zero() {
        h
    } else if (&square + r).is_zero() {
        renormalized_beta(h)
    } else {
        return Err(Error::InvalidParameter(
            "exponential formula needs r^2 = -r or r^2 = 0".into(),
        ));
    };
    let rf = FloatMatrix::from_operator(r);
    let id = FloatMatrix::identity(rf.dim);
    let hr = FloatMatrix {
        dim: rf.dim,
        data: rf.data.iter().map(|v| v * h).collect(),
    };
    let mut sum = id.clone();
    let mut term = id.clone();
    for k in 1..=terms {
        term = term.mul(&hr);
        let scale = 1.0 / k as f64;
        term.data.iter_mut().for_each(|v| *v *= scale);
        sum = sum.axpy(1.0, &term);
    }
    let target = id.axpy(coefficient, &rf);
    Ok(sum.max_abs_diff(&target))
}

/// Exact deviation `|β_ij(β) − β⁰_ij|` for rational β, cast to float.
pub fn exact_limit_deviation(mu: &MuVector, beta: &Rational) -> Result<f64> {
    let n = mu.n();
    let phi: Vec<Rational> = mu
        .values()
        .iter()
        .map(|m| rational::int(1) + beta * m)
        .collect();
    let mut worst = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let gap = &phi[i] - &phi[j];
            let deformed = rational::checked_div(&(beta * &phi[i]), &gap)?;
            let limit = (&mu.values()[i] - &mu.values()[j]).recip();
            let d = rational::abs(&(deformed - limit));
            if d > worst {
                worst = d;
            }
        }
    }
    Ok(rational::to_f64(&worst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{classical_rime_r, classical_unitary_r0, PhiVector};
    use crate::rational::{int, ratio};

    fn mu(values: &[i64]) -> MuVector {
        MuVector::new(values.iter().map(|&v| int(v)).collect()).unwrap()
    }

    #[test]
    fn two_point_limit_closed_form() {
        let curve = unitary_limit_curve(&mu(&[0, 1]), &[1e-2]).unwrap();
        // β₁₂ = −1 exactly, β₂₁ = 1 + β
        assert!((curve.deviations[0] - 1e-2).abs() < 1e-12);
    }

    #[test]
    fn deviation_is_linear_in_beta() {
        let curve = unitary_limit_curve(&mu(&[0, 1]), &[1e-2, 1e-3, 1e-4]).unwrap();
        assert!((curve.slope - 1.0).abs() < 0.1, "slope {}", curve.slope);
    }

    #[test]
    fn deviations_decrease_monotonically() {
        let curve = unitary_limit_curve(&mu(&[0, 1, 3]), &[1e-1, 1e-2, 1e-3, 1e-4]).unwrap();
        assert!(curve.deviations.windows(2).all(|w| w[1] <= w[0]));
        for beta in [ratio(1, 10).unwrap(), ratio(1, 1000).unwrap()] {
            let exact = exact_limit_deviation(&mu(&[0, 1, 3]), &beta).unwrap();
            let curve = unitary_limit_curve(&mu(&[0, 1, 3]), &[rational::to_f64(&beta)]).unwrap();
            assert!((exact - curve.deviations[0]).abs() < 1e-9);
        }
    }

    #[test]
    fn invalid_beta_sequences() {
        assert!(unitary_limit_curve(&mu(&[0, 1]), &[1e-3, 1e-2]).is_err());
        assert!(unitary_limit_curve(&mu(&[0, 1]), &[0.0]).is_err());
        assert!(unitary_limit_curve(&mu(&[0, 1]), &[]).is_err());
        // 1 + βμ collides with 0 at β = 1 for μ = −1
        assert!(unitary_limit_curve(&mu(&[0, -1]), &[1.0]).is_err());
    }

    #[test]
    fn exponential_of_idempotent() {
        let phi = PhiVector::new(vec![int(2), int(1)]).unwrap();
        let r = classical_rime_r(&phi).unwrap();
        assert!(exp_formula_check(&r, 0.5, 30).unwrap() <= 1e-12);
    }

    #[test]
    fn exponential_of_nilpotent_and_zero() {
        let r0 = classical_unitary_r0(&mu(&[0, 1])).unwrap();
        assert!(exp_formula_check(&r0, 1.0, 30).unwrap() <= 1e-12);
        let zero = Operator::zeros(2, Arity::Two);
        assert_eq!(exp_formula_check(&zero, 1.0, 30).unwrap(), 0.0);
    }

    #[test]
    fn exponential_rejects_other_inputs() {
        let p = crate::operator::permutation(2);
        assert!(exp_formula_check(&p, 1.0, 30).is_err());
    }

    #[test]
    fn renormalization_semigroup() {
        for (h1, h2) in [(0.5, 0.25), (1.0, 2.0), (0.1, 3.0)] {
            let (a, b) = (renormalized_beta(h1), renormalized_beta(h2));
            assert!((renormalized_beta(h1 + h2) - (a + b - a * b)).abs() <= 1e-12);
        }
    }

    #[test]
    fn log_log_slope_of_power_law() {
        let xs = [1.0, 2.0, 4.0, 8.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powi(2)).collect();
        assert!((log_log_slope(&xs, &ys) - 2.0).abs() < 1e-12);
        assert!(log_log_slope(&[1.0], &[1.0]).is_nan());
    }
}
