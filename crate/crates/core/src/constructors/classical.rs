//! Classical r-matrices.
//!
//! `classical_cg_r` expands its defining double sum with the matrix units of
//! [`matrix_unit`]. The rime-basis matrices `r`, `r₀` and the boundary
//! solution `b` are written with `e^i_j` read as the unit sending `e_i` to
//! `e_j`; in the row/column convention used here that is the transpose of
//! the literal expansion. Under this reading `P·R̂ = I + βr`,
//! `r = Ad_X ⊗ Ad_X (r_CG)`, `R₀ = I + r₀` and `r₀ = Ad_X(μ) ⊗ Ad_X(μ) (b)`
//! hold exactly.

use super::{MuVector, PhiVector};
use crate::error::{Error, Result};
use crate::operator::{kron, matrix_unit, wedge, Arity, Operator};

fn unit(i: usize, j: usize, n: usize) -> Operator {
    matrix_unit(i, j, n).expect("indices checked by caller")
}

/// `Z^i_j = e^i_j − e^j_j` for `i ≠ j`.
pub fn z_generator(i: usize, j: usize, n: usize) -> Result<Operator> {
    if i == j {
        return Err(Error::InvalidParameter(format!(
            "Z^{i}_{j} needs distinct indices"
        )));
    }
    matrix_unit(i, j, n)?.checked_sub(&matrix_unit(j, j, n)?)
}

/// Non-skew-symmetric rime r-matrix, the classical limit of the rime solution:
/// transpose of `Σ_{i≠j} (φ_i e^i_j − φ_j e^j_j) ⊗ (e^j_i − e^i_i) / (φ_i − φ_j)`.
pub fn classical_rime_r(phi: &PhiVector) -> Result<Operator> {
    if !phi.is_strict() {
        return Err(Error::InvalidParameter(
            "classical rime r-matrix needs every phi_i nonzero".into(),
        ));
    }
    let n = phi.n();
    let mut sum = Operator::zeros(n, Arity::Two);
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let (pi, pj) = (phi.get(i), phi.get(j));
            let left = &unit(i, j, n).scale(pi) - &unit(j, j, n).scale(pj);
            let right = &unit(j, i, n) - &unit(i, i, n);
            let coeff = (pi - pj).recip();
            sum = &sum + &kron(&left, &right)?.scale(&coeff);
        }
    }
    Ok(sum.transpose())
}

/// `r_CG = Σ_{i<j} Σ_{s=1}^{j−i} (e^j_{i+s−1} ⊗ e^i_{j−s+1} − e^i_{i+s−1} ⊗ e^j_{j−s+1})`.
pub fn classical_cg_r(n: usize) -> Result<Operator> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let mut sum = Operator::zeros(n, Arity::Two);
    for i in 1..=n {
        for j in i + 1..=n {
            for s in 1..=j - i {
                let plus = kron(&unit(j, i + s - 1, n), &unit(i, j - s + 1, n))?;
                let minus = kron(&unit(i, i + s - 1, n), &unit(j, j - s + 1, n))?;
                sum = &(&sum + &plus) - &minus;
            }
        }
    }
    Ok(sum)
}

/// Skew-symmetric rime r-matrix: transpose of `Σ_{i<j} β⁰_ij Z^i_j ∧ Z^j_i`
/// with `β⁰_ij = 1/(μ_i − μ_j)`.
pub fn classical_unitary_r0(mu: &MuVector) -> Result<Operator> {
    let n = mu.n();
    let mut sum = Operator::zeros(n, Arity::Two);
    for i in 1..=n {
        for j in i + 1..=n {
            let coeff = (mu.get(i) - mu.get(j)).recip();
            let w = wedge(&z_generator(i, j, n)?, &z_generator(j, i, n)?)?;
            sum = &sum + &w.scale(&coeff);
        }
    }
    Ok(sum.transpose())
}

/// Cremmer–Gervais boundary solution: transpose of
/// `Σ_{i<j} Σ_{k=1}^{j−i} e^{i+k}_i ∧ e^{j−k+1}_j`.
pub fn boundary_b(n: usize) -> Result<Operator> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let mut sum = Operator::zeros(n, Arity::Two);
    for i in 1..=n {
        for j in i + 1..=n {
            for k in 1..=j - i {
                sum = &sum + &wedge(&unit(i + k, i, n), &unit(j - k + 1, j, n))?;
            }
        }
    }
    Ok(sum.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{flip21, permutation};
    use crate::rational::{int, Rational};
    use num_traits::Zero;

    fn column_sums(x: &Operator) -> Vec<Rational> {
        let n = x.dim();
        (0..n)
            .map(|c| (0..n).map(|r| x.entry(r, c).clone()).sum())
            .collect()
    }

    fn phi(values: &[i64]) -> PhiVector {
        PhiVector::new(values.iter().map(|&v| int(v)).collect()).unwrap()
    }

    fn mu(values: &[i64]) -> MuVector {
        MuVector::new(values.iter().map(|&v| int(v)).collect()).unwrap()
    }

    #[test]
    fn rime_r_two_dimensional_expansion() {
        let n = 2;
        // (2e^1_2 − e^2_2)⊗(e^2_1 − e^1_1) + (2e^1_1 − e^2_1)⊗(e^1_2 − e^2_2), transposed
        let a = kron(
            &(&unit(1, 2, n).scale(&int(2)) - &unit(2, 2, n)),
            &(&unit(2, 1, n) - &unit(1, 1, n)),
        )
        .unwrap();
        let b = kron(
            &(&unit(1, 1, n).scale(&int(2)) - &unit(2, 1, n)),
            &(&unit(1, 2, n) - &unit(2, 2, n)),
        )
        .unwrap();
        let literal = &a + &b;
        assert_eq!(
            classical_rime_r(&phi(&[2, 1])).unwrap(),
            literal.transpose()
        );
    }

    #[test]
    fn rime_r_requires_strict_phi() {
        assert!(classical_rime_r(&phi(&[0, 1])).is_err());
    }

    #[test]
    fn rime_r_non_skew_part() {
        for values in [&[2, 1][..], &[3, -1, 5], &[1, 2, -4, 6]] {
            let r = classical_rime_r(&phi(values)).unwrap();
            let n = values.len();
            let target = &permutation(n) - &Operator::identity(n, Arity::Two);
            assert_eq!(&r + &flip21(&r).unwrap(), target);
        }
    }

    #[test]
    fn cg_r_small_cases() {
        assert!(classical_cg_r(1).unwrap().is_zero());
        let n = 2;
        let expected = &kron(&unit(2, 1, n), &unit(1, 2, n)).unwrap()
            - &kron(&unit(1, 1, n), &unit(2, 2, n)).unwrap();
        assert_eq!(classical_cg_r(2).unwrap(), expected);
    }

    #[test]
    fn z_generator_examples() {
        assert_eq!(
            z_generator(1, 2, 2).unwrap(),
            Operator::from_int_rows(2, Arity::One, &[&[0, 1], &[0, -1]]).unwrap()
        );
        assert!(z_generator(2, 2, 3).is_err());
        for (i, j) in [(1, 2), (2, 1), (1, 3), (3, 2)] {
            let z = z_generator(i, j, 3).unwrap();
            assert!(column_sums(&z).iter().all(Zero::is_zero));
        }
        // adding e^1_1 + e^2_2 contributes exactly the identity's column sums
        let sum = &(&z_generator(1, 2, 2).unwrap() + &z_generator(2, 1, 2).unwrap())
            + &(&unit(1, 1, 2) + &unit(2, 2, 2));
        assert_eq!(column_sums(&sum), vec![int(1), int(1)]);
    }

    /// Brute-force span membership: every product of two Z's is a
    /// combination of Z's (solved coefficientwise, since Z^a_b is the only
    /// generator with a nonzero (a,b) entry off the diagonal).
    #[test]
    fn z_generators_close_under_multiplication() {
        let n = 3;
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|a| (1..=n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        for &(i, j) in &pairs {
            for &(k, l) in &pairs {
                let prod = &z_generator(i, j, n).unwrap() * &z_generator(k, l, n).unwrap();
                let mut rebuilt = Operator::zeros(n, Arity::One);
                for &(a, b) in &pairs {
                    let c = prod.get(&[a], &[b]).unwrap().clone();
                    if !c.is_zero() {
                        rebuilt = &rebuilt + &z_generator(a, b, n).unwrap().scale(&c);
                    }
                }
                assert_eq!(rebuilt, prod, "Z^{i}_{j} Z^{k}_{l} left the span");
            }
        }
    }

    #[test]
    fn unitary_r0_two_dimensional() {
        let w = wedge(
            &z_generator(1, 2, 2).unwrap(),
            &z_generator(2, 1, 2).unwrap(),
        )
        .unwrap();
        assert_eq!(
            classical_unitary_r0(&mu(&[0, 1])).unwrap(),
            (-&w).transpose()
        );
    }

    #[test]
    fn unitary_r0_is_skew_and_nilpotent() {
        for values in [&[0, 1][..], &[0, 1, 3], &[2, -1, 5, 4]] {
            let r0 = classical_unitary_r0(&mu(values)).unwrap();
            assert!((&r0 + &flip21(&r0).unwrap()).is_zero());
            assert!((&r0 * &r0).is_zero());
        }
    }

    #[test]
    fn boundary_small_cases() {
        assert!(boundary_b(1).unwrap().is_zero());
        let w = wedge(&unit(2, 1, 2), &unit(2, 2, 2)).unwrap();
        assert_eq!(boundary_b(2).unwrap(), w.transpose());
        assert_eq!(
            w.transpose(),
            wedge(&unit(1, 2, 2), &unit(2, 2, 2)).unwrap()
        );
    }
}
