use num_traits::{One, Zero};

use super::PhiVector;
use crate::error::{Error, Result};
use crate::operator::{Arity, Operator};
use crate::rational::{self, Rational};

/// Two-parameter Cremmer–Gervais matrix, rescaled to eigenvalues `1` and
/// `−q^{−2}`. `q2inv` is `q^{−2}` itself.
///
/// ```text
/// R̂^{ij}_{kl} = q^{−2θ_ij} p^{i−j} δ^i_l δ^j_k
///             + (1−q^{−2}) Σ_{i≤s<j} p^{i−s} δ^s_k δ^{i+j−s}_l
///             − (1−q^{−2}) Σ_{j<s<i} p^{i−s} δ^s_k δ^{i+j−s}_l
/// ```
pub fn cremmer_gervais(n: usize, q2inv: &Rational, p: &Rational) -> Result<Operator> {
    if q2inv.is_zero() {
        return Err(Error::InvalidParameter("q2inv must be nonzero".into()));
    }
    cremmer_gervais_unchecked(n, q2inv, p)
}

/// Same formula without the `q2inv ≠ 0` guard; the `q2inv = 0` matrix is
/// singular but still the basis-change partner of the `β = 1` rime matrix.
pub(crate) fn cremmer_gervais_unchecked(
    n: usize,
    q2inv: &Rational,
    p: &Rational,
) -> Result<Operator> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if p.is_zero() {
        return Err(Error::InvalidParameter("p must be nonzero".into()));
    }
    let beta = Rational::one() - q2inv;
    let dim = n * n;
    let mut entries = vec![Rational::zero(); dim * dim];
    let offset = |a: usize, b: usize| (a - 1) * n + (b - 1);
    for i in 1..=n {
        for j in 1..=n {
            let row = offset(i, j);
            let step = if i > j {
                q2inv.clone()
            } else {
                Rational::one()
            };
            entries[row * dim + offset(j, i)] += step * rational::pow(p, i as i64 - j as i64)?;
            for s in i..j {
                let l = i + j - s;
                assert!((1..=n).contains(&l), "i+j-s left 1..=n");
                entries[row * dim + offset(s, l)] += &beta * rational::pow(p, i as i64 - s as i64)?;
            }
            for s in j + 1..i {
                let l = i + j - s;
                assert!((1..=n).contains(&l), "i+j-s left 1..=n");
                entries[row * dim + offset(s, l)] -= &beta * rational::pow(p, i as i64 - s as i64)?;
            }
        }
    }
    Operator::from_rows(
        n,
        Arity::Two,
        entries.chunks(dim).map(<[_]>::to_vec).collect(),
    )
}

/// Elementary symmetric polynomials `e_0..=e_m` of `values`.
pub fn elementary_symmetric(values: &[Rational]) -> Vec<Rational> {
    // coefficients of ∏ (1 + x t)
    let mut e = vec![Rational::one()];
    for x in values {
        e.push(Rational::zero());
        for d in (1..e.len()).rev() {
            let t = &e[d - 1] * x;
            e[d] += t;
        }
    }
    e
}

/// `X^k_j(φ) = e_{j−1}(φ₁,…,φ̂_k,…,φₙ)`: row `k`, column `j`.
pub fn x_matrix(phi: &PhiVector) -> Result<Operator> {
    let n = phi.n();
    let rows: Vec<Vec<Rational>> = (1..=n)
        .map(|k| {
            let rest: Vec<Rational> = phi
                .values()
                .iter()
                .enumerate()
                .filter(|&(idx, _)| idx + 1 != k)
                .map(|(_, v)| v.clone())
                .collect();
            elementary_symmetric(&rest)
        })
        .collect();
    Operator::from_rows(n, Arity::One, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{inverse, permutation};
    use crate::rational::{int, ratio};

    fn phi(values: &[i64]) -> PhiVector {
        PhiVector::new(values.iter().map(|&v| int(v)).collect()).unwrap()
    }

    #[test]
    fn trivial_deformation_is_the_flip() {
        for n in 1..=4 {
            assert_eq!(
                cremmer_gervais(n, &int(1), &int(1)).unwrap(),
                permutation(n)
            );
        }
    }

    #[test]
    fn two_dimensional_expansion() {
        let m = cremmer_gervais(2, &int(-2), &int(1)).unwrap();
        let expected = Operator::from_int_rows(
            2,
            Arity::Two,
            &[&[1, 0, 0, 0], &[0, 3, 1, 0], &[0, -2, 0, 0], &[0, 0, 0, 1]],
        )
        .unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn p_weights_the_flip_term() {
        // with q2inv = 1 only the weighted flip survives: p^{i−j} at ((i,j),(j,i))
        let p = ratio(2, 3).unwrap();
        let m = cremmer_gervais(3, &int(1), &p).unwrap();
        assert_eq!(m.nonzero_count(), 9);
        assert_eq!(m.get(&[1, 3], &[3, 1]).unwrap(), &ratio(9, 4).unwrap());
        assert_eq!(m.get(&[3, 1], &[1, 3]).unwrap(), &ratio(4, 9).unwrap());
    }

    #[test]
    fn middle_entry_breaks_the_rime_pattern_at_n3() {
        let m = cremmer_gervais(3, &int(-2), &int(1)).unwrap();
        assert_eq!(m.get(&[1, 3], &[2, 2]).unwrap(), &int(3));
    }

    #[test]
    fn rejects_zero_parameters() {
        assert!(cremmer_gervais(2, &int(0), &int(1)).is_err());
        assert!(cremmer_gervais(2, &int(1), &int(0)).is_err());
        assert!(cremmer_gervais_unchecked(2, &int(0), &int(1)).is_ok());
    }

    #[test]
    fn elementary_symmetric_small() {
        let e = elementary_symmetric(&[int(1), int(2), int(3)]);
        assert_eq!(e, vec![int(1), int(6), int(11), int(6)]);
        assert_eq!(elementary_symmetric(&[]), vec![int(1)]);
    }

    #[test]
    fn x_matrix_examples() {
        let x = x_matrix(&phi(&[2, 1])).unwrap();
        assert_eq!(
            x,
            Operator::from_int_rows(2, Arity::One, &[&[1, 1], &[1, 2]]).unwrap()
        );
        assert_eq!(x.determinant(), int(1));
        assert_eq!(
            x_matrix(&phi(&[5])).unwrap(),
            Operator::identity(1, Arity::One)
        );
    }

    #[test]
    fn x_matrix_columns_scale_with_degree() {
        let base = phi(&[3, -1, 4, 7]);
        let doubled = PhiVector::new(base.values().iter().map(|v| v * int(2)).collect()).unwrap();
        let x = x_matrix(&base).unwrap();
        let y = x_matrix(&doubled).unwrap();
        for k in 1..=4 {
            for j in 1..=4 {
                let factor = rational::pow(&int(2), j as i64 - 1).unwrap();
                assert_eq!(
                    y.get(&[k], &[j]).unwrap(),
                    &(x.get(&[k], &[j]).unwrap() * factor)
                );
            }
        }
    }

    #[test]
    fn x_matrix_inverse_round_trip() {
        for values in [&[2, 1][..], &[3, -2, 5], &[1, 4, -3, 7, 2]] {
            let x = x_matrix(&phi(values)).unwrap();
            let n = values.len();
            assert_eq!(
                &inverse(&x).unwrap() * &x,
                Operator::identity(n, Arity::One)
            );
        }
    }
}
