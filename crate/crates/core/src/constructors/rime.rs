use num_traits::{One, Zero};

use super::{GeneralRimeData, MuVector, ParamTable, PhiVector, RimeParams};
use crate::error::Result;
use crate::operator::{Arity, Operator};
use crate::rational::Rational;

/// General rime matrix
/// `R̂^{ij}_{kl} = α_ij δ^i_l δ^j_k + β_ij δ^i_k δ^j_l + γ_ij δ^i_k δ^i_l + γ′_ij δ^j_k δ^j_l`
/// (no summation). Row `(i,j)` can only reach columns built from `{i,j}`.
pub fn rime_general(d: &GeneralRimeData) -> Result<Operator> {
    d.validate()?;
    let n = d.n();
    Ok(Operator::from_fn(n, Arity::Two, |row, col| {
        let (i, j, k, l) = (row[0], row[1], col[0], col[1]);
        let mut v = Rational::zero();
        if i == l && j == k {
            v += d.alpha.get(i, j);
        }
        if i == k && j == l {
            v += d.beta.get(i, j);
        }
        if i == k && i == l {
            v += d.gamma.get(i, j);
        }
        if j == k && j == l {
            v += d.gamma_prime.get(i, j);
        }
        v
    }))
}

/// `β_ij = βφ_i/(φ_i − φ_j)`.
pub fn beta_from_phi(beta: &Rational, phi: &PhiVector) -> RimeParams {
    let n = phi.n();
    let table = ParamTable::from_fn(n, |i, j| {
        if i == j {
            Rational::zero()
        } else {
            beta * phi.get(i) / (phi.get(i) - phi.get(j))
        }
    });
    RimeParams::new(table, beta.clone()).expect("beta_ij + beta_ji = beta holds identically")
}

/// `β⁰_ij = 1/(μ_i − μ_j)`, with scalar `β = 0`.
pub fn unitary_beta(mu: &MuVector) -> RimeParams {
    let n = mu.n();
    let table = ParamTable::from_fn(n, |i, j| {
        if i == j {
            Rational::zero()
        } else {
            (mu.get(i) - mu.get(j)).recip()
        }
    });
    RimeParams::new(table, Rational::zero()).expect("beta0 is antisymmetric")
}

/// The canonical strict rime solution
/// `R̂^{ij}_{kl} = (1−β_ji)δ^i_l δ^j_k + β_ij δ^i_k δ^j_l − β_ij δ^i_k δ^i_l + β_ji δ^j_k δ^j_l`,
/// i.e. the general form with `α_ij = 1−β_ji`, `γ_ij = −β_ij`, `γ′_ij = β_ji`.
pub fn rime_from_beta(p: &RimeParams) -> Result<Operator> {
    let n = p.n();
    let data = GeneralRimeData {
        alpha: ParamTable::from_fn(n, |i, j| Rational::one() - p.get(j, i)),
        beta: p.table().clone(),
        gamma: ParamTable::from_fn(n, |i, j| -p.get(i, j)),
        gamma_prime: ParamTable::from_fn(n, |i, j| p.get(j, i).clone()),
        require_invertible: false,
    };
    rime_general(&data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::permutation;
    use crate::rational::{int, ratio};

    fn table(n: usize, entries: &[((usize, usize), i64)]) -> ParamTable {
        let mut t = ParamTable::zeros(n);
        for &((i, j), v) in entries {
            t.set(i, j, int(v));
        }
        t
    }

    fn phi(values: &[i64]) -> PhiVector {
        PhiVector::new(values.iter().map(|&v| int(v)).collect()).unwrap()
    }

    fn example_matrix() -> Operator {
        Operator::from_int_rows(
            2,
            Arity::Two,
            &[
                &[1, 0, 0, 0],
                &[-6, 6, 4, -3],
                &[6, -5, -3, 3],
                &[0, 0, 0, 1],
            ],
        )
        .unwrap()
    }

    #[test]
    fn general_form_expansion() {
        let d = GeneralRimeData {
            alpha: table(2, &[((1, 1), 1), ((2, 2), 1), ((1, 2), 4), ((2, 1), -5)]),
            beta: table(2, &[((1, 2), 6), ((2, 1), -3)]),
            gamma: table(2, &[((1, 2), -6), ((2, 1), 3)]),
            gamma_prime: table(2, &[((1, 2), -3), ((2, 1), 6)]),
            require_invertible: true,
        };
        assert_eq!(rime_general(&d).unwrap(), example_matrix());
    }

    #[test]
    fn general_form_identity_like_block_and_zero() {
        let d = GeneralRimeData {
            alpha: table(2, &[((1, 1), 1), ((2, 2), 1)]),
            beta: ParamTable::zeros(2),
            gamma: ParamTable::zeros(2),
            gamma_prime: ParamTable::zeros(2),
            require_invertible: true,
        };
        let m = rime_general(&d).unwrap();
        // only the corner entries of the 4×4 block survive
        assert_eq!(m.nonzero_count(), 2);
        assert_eq!(m.get(&[1, 1], &[1, 1]).unwrap(), &int(1));
        assert_eq!(m.get(&[2, 2], &[2, 2]).unwrap(), &int(1));

        let zero = GeneralRimeData {
            alpha: ParamTable::zeros(3),
            beta: ParamTable::zeros(3),
            gamma: ParamTable::zeros(3),
            gamma_prime: ParamTable::zeros(3),
            require_invertible: false,
        };
        assert!(rime_general(&zero).unwrap().is_zero());
    }

    #[test]
    fn beta_from_phi_examples() {
        let p = beta_from_phi(&int(3), &phi(&[2, 1]));
        assert_eq!(p.get(1, 2), &int(6));
        assert_eq!(p.get(2, 1), &int(-3));
        let relaxed = beta_from_phi(&int(3), &phi(&[0, 1]));
        assert_eq!(relaxed.get(1, 2), &int(0));
        assert_eq!(relaxed.get(2, 1), &int(3));
    }

    #[test]
    fn beta_from_phi_is_projective() {
        let base = phi(&[3, -2, 5, 7]);
        let scaled = PhiVector::new(
            base.values()
                .iter()
                .map(|v| v * ratio(-5, 3).unwrap())
                .collect(),
        )
        .unwrap();
        let beta = ratio(2, 7).unwrap();
        assert_eq!(beta_from_phi(&beta, &base), beta_from_phi(&beta, &scaled));
    }

    #[test]
    fn unitary_beta_examples() {
        let mu = MuVector::new(vec![int(0), int(1)]).unwrap();
        let p = unitary_beta(&mu);
        assert_eq!(p.get(1, 2), &int(-1));
        assert_eq!(p.get(2, 1), &int(1));
        assert_eq!(p.beta(), &int(0));
        let mu3 = MuVector::new(vec![int(0), int(1), int(2)]).unwrap();
        assert_eq!(unitary_beta(&mu3).get(1, 3), &ratio(-1, 2).unwrap());
    }

    #[test]
    fn rime_from_beta_examples() {
        let p = beta_from_phi(&int(3), &phi(&[2, 1]));
        assert_eq!(rime_from_beta(&p).unwrap(), example_matrix());
        let zero = RimeParams::new(ParamTable::zeros(3), int(0)).unwrap();
        assert_eq!(rime_from_beta(&zero).unwrap(), permutation(3));
    }

    #[test]
    fn rime_from_beta_has_unit_diagonal_and_rime_pattern() {
        let p = beta_from_phi(&ratio(-2, 3).unwrap(), &phi(&[4, -1, 3, 9]));
        let m = rime_from_beta(&p).unwrap();
        for i in 1..=4 {
            assert_eq!(m.get(&[i, i], &[i, i]).unwrap(), &int(1));
        }
        for r in 0..m.dim() {
            for c in 0..m.dim() {
                if m.entry(r, c).is_zero() {
                    continue;
                }
                let (row, col) = (m.multi_index(r), m.multi_index(c));
                assert!(col.iter().all(|x| row.contains(x)));
            }
        }
    }
}
