use num_traits::{One, Zero};

use super::report::{Residual, VerificationReport};
use crate::constructors::{
    beta_from_phi, boundary_b, classical_cg_r, classical_rime_r, classical_unitary_r0,
    cremmer_gervais_unchecked, rime_from_beta, x_matrix, MuVector, PhiVector, RimeParams,
};
use crate::error::{Error, Result};
use crate::operator::{conjugate_pair, embed, flip21, permutation, Arity, Leg, Operator};
use crate::rational::{self, Rational};

/// `r₁₂, r₁₃, r₂₃` of an arity-2 operator.
struct Legs {
    r12: Operator,
    r13: Operator,
    r23: Operator,
}

impl Legs {
    fn of(r: &Operator) -> Result<Self> {
        Ok(Legs {
            r12: embed(r, Leg::L12)?,
            r13: embed(r, Leg::L13)?,
            r23: embed(r, Leg::L23)?,
        })
    }

    fn assoc(&self) -> Operator {
        let Legs { r12, r13, r23 } = self;
        &(&(r13 * r12) - &(r12 * r23)) + &(r23 * r13)
    }

    fn assoc_prime(&self) -> Operator {
        let Legs { r12, r13, r23 } = self;
        &(&(r12 * r13) - &(r23 * r12)) + &(r13 * r23)
    }
}

fn identity2(n: usize) -> Operator {
    Operator::identity(n, Arity::Two)
}

/// `(R̂⊗1)(1⊗R̂)(R̂⊗1) − (1⊗R̂)(R̂⊗1)(1⊗R̂)`.
pub fn check_ybe(rhat: &Operator) -> Result<VerificationReport> {
    let a = embed(rhat, Leg::L12)?;
    let b = embed(rhat, Leg::L23)?;
    let ab = &a * &b;
    let ba = &b * &a;
    let residual = &(&ab * &a) - &(&ba * &b);
    Ok(VerificationReport::from_residuals(
        "ybe",
        vec![Residual::of("ybe", &residual)],
    ))
}

/// `R̂² − βR̂ − (1−β)I`.
pub fn check_hecke(rhat: &Operator, beta: &Rational) -> Result<VerificationReport> {
    rhat.expect_arity(Arity::Two)?;
    let residual = &(&(rhat * rhat) - &rhat.scale(beta))
        - &identity2(rhat.n()).scale(&(Rational::one() - beta));
    Ok(VerificationReport::from_residuals(
        "hecke",
        vec![Residual::of("hecke", &residual)],
    ))
}

/// Multiplicities of the eigenvalues `1` and `β − 1` of a Hecke matrix, read
/// off from the trace of the projector `(R̂ − (β−1)I)/(2−β)`.
pub fn hecke_multiplicities(rhat: &Operator, beta: &Rational) -> Result<(usize, usize)> {
    let two = rational::int(2);
    if beta == &two {
        return Err(Error::NotApplicable {
            check: "multiplicities".into(),
            reason: "beta = 2 makes the two eigenvalues coincide".into(),
        });
    }
    if !check_hecke(rhat, beta)?.passed {
        return Err(Error::NotApplicable {
            check: "multiplicities".into(),
            reason: "matrix does not satisfy the Hecke relation".into(),
        });
    }
    let size = rhat.dim() as i64;
    let shift = beta - Rational::one();
    let m_plus = (rhat.trace() - &shift * rational::int(size)) / (&two - beta);
    if !m_plus.is_integer() || m_plus < Rational::zero() || m_plus > rational::int(size) {
        return Err(Error::NotApplicable {
            check: "multiplicities".into(),
            reason: format!("projector trace {m_plus} is not a multiplicity"),
        });
    }
    let m_plus: usize = m_plus.to_integer().try_into().expect("bounded by size");
    Ok((m_plus, size as usize - m_plus))
}

/// Compares the Hecke multiplicities with `(n(n+1)/2, n(n−1)/2)`.
pub fn check_multiplicities(rhat: &Operator, beta: &Rational) -> Result<VerificationReport> {
    let n = rhat.n();
    let expected = (n * (n + 1) / 2, n * (n - 1) / 2);
    let found = match hecke_multiplicities(rhat, beta) {
        Ok(found) => found,
        Err(Error::NotApplicable { reason, .. }) if *beta != rational::int(2) => {
            return Ok(VerificationReport::from_condition(
                "multiplicities",
                false,
                reason,
            ));
        }
        Err(e) => return Err(e),
    };
    Ok(VerificationReport::from_condition(
        "multiplicities",
        found == expected,
        format!(
            "eigenvalue 1 x{}, eigenvalue {} x{} (expected {}, {})",
            found.0,
            beta - Rational::one(),
            found.1,
            expected.0,
            expected.1
        ),
    ))
}

/// `A(r) = r₁₃r₁₂ − r₁₂r₂₃ + r₂₃r₁₃`.
pub fn assoc_a(r: &Operator) -> Result<Operator> {
    Ok(Legs::of(r)?.assoc())
}

/// `A′(r) = r₁₂r₁₃ − r₂₃r₁₂ + r₁₃r₂₃`.
pub fn assoc_aprime(r: &Operator) -> Result<Operator> {
    Ok(Legs::of(r)?.assoc_prime())
}

/// Classical Yang–Baxter residual in commutator form, together with the
/// splitting identity `cYB(r) = A′(r) − A(r)`.
pub fn check_cybe(r: &Operator) -> Result<VerificationReport> {
    let legs = Legs::of(r)?;
    let Legs { r12, r13, r23 } = &legs;
    let cybe = &(&r12.commutator(r23)? + &r12.commutator(r13)?) + &r13.commutator(r23)?;
    let split = &(&legs.assoc_prime() - &legs.assoc()) - &cybe;
    Ok(VerificationReport::from_residuals(
        "cybe",
        vec![
            Residual::of("cybe", &cybe),
            Residual::of("splitting", &split),
        ],
    ))
}

/// Homogeneous associative equation: `A(r) = 0` and `A′(r) = 0`.
pub fn check_homogeneous_acybe(r: &Operator) -> Result<VerificationReport> {
    let legs = Legs::of(r)?;
    Ok(VerificationReport::from_residuals(
        "acybe",
        vec![
            Residual::of("A(r)", &legs.assoc()),
            Residual::of("A'(r)", &legs.assoc_prime()),
        ],
    ))
}

/// `A(r) = −r₁₃` and `A′(r) = −r₁₃`, plus the companion `r + r₂₁ = P − I`.
pub fn check_nonhomogeneous_acybe(r: &Operator) -> Result<VerificationReport> {
    let legs = Legs::of(r)?;
    let n = r.n();
    let skew = &(r + &flip21(r)?) - &(&permutation(n) - &identity2(n));
    Ok(VerificationReport::from_residuals(
        "acybe-nh",
        vec![
            Residual::of("A(r)+r13", &(&legs.assoc() + &legs.r13)),
            Residual::of("A'(r)+r13", &(&legs.assoc_prime() + &legs.r13)),
            Residual::of("r+r21-(P-I)", &skew),
        ],
    ))
}

/// For `r̃ = r + ½I`: `A(r̃) = ¼ I⊗I⊗I` and `r̃ + r̃₂₁ = P`.
pub fn check_tilde_relations(r: &Operator) -> Result<VerificationReport> {
    r.expect_arity(Arity::Two)?;
    let n = r.n();
    let half = rational::ratio(1, 2)?;
    let quarter = rational::ratio(1, 4)?;
    let tilde = r + &identity2(n).scale(&half);
    let assoc = &assoc_a(&tilde)? - &Operator::identity(n, Arity::Three).scale(&quarter);
    let skew = &(&tilde + &flip21(&tilde)?) - &permutation(n);
    Ok(VerificationReport::from_residuals(
        "tilde",
        vec![
            Residual::of("A(r~)-I/4", &assoc),
            Residual::of("r~+r~21-P", &skew),
        ],
    ))
}

/// `r₁₂r₂₃r₁₂ = r₂₃r₁₂r₂₃` and `r₁₂r₁₃r₂₃ = r₂₃r₁₃r₁₂`.
pub fn check_braid_identities(r: &Operator) -> Result<VerificationReport> {
    let Legs { r12, r13, r23 } = Legs::of(r)?;
    let braid = &(&(&r12 * &r23) * &r12) - &(&(&r23 * &r12) * &r23);
    let ybe = &(&(&r12 * &r13) * &r23) - &(&(&r23 * &r13) * &r12);
    Ok(VerificationReport::from_residuals(
        "braid",
        vec![
            Residual::of("r12r23r12-r23r12r23", &braid),
            Residual::of("r12r13r23-r23r13r12", &ybe),
        ],
    ))
}

/// `r + r₂₁` against `target`: zero for skew-symmetric r-matrices, `P − I`
/// for the non-skew rime and Cremmer–Gervais ones.
pub fn check_skew(r: &Operator, target: &Operator) -> Result<VerificationReport> {
    let residual = (r + &flip21(r)?).checked_sub(target)?;
    Ok(VerificationReport::from_residuals(
        "skew",
        vec![Residual::of("r+r21-target", &residual)],
    ))
}

pub fn check_skew_symmetric(r: &Operator) -> Result<VerificationReport> {
    check_skew(r, &Operator::zeros(r.n(), Arity::Two))
}

/// `r² = −r`, and the semigroup law `(I+tr)(I+sr) = I + (t+s−ts)r` at
/// `t = 1/2`, `s = 1/3`, so that `e^{hr} = I + (1−e^{−h})r`.
pub fn check_idempotent_exponential(r: &Operator) -> Result<VerificationReport> {
    r.expect_arity(Arity::Two)?;
    let id = identity2(r.n());
    let t = rational::ratio(1, 2)?;
    let s = rational::ratio(1, 3)?;
    let idem = &(r * r) + r;
    let left = &(&id + &r.scale(&t)) * &(&id + &r.scale(&s));
    let right = &id + &r.scale(&(&t + &s - &t * &s));
    Ok(VerificationReport::from_residuals(
        "idempotent",
        vec![
            Residual::of("r^2+r", &idem),
            Residual::of("semigroup", &(&left - &right)),
        ],
    ))
}

/// `r₀² = 0` and `(I + r₀)(I − r₀) = I`.
pub fn check_nilpotent_exponential(r0: &Operator) -> Result<VerificationReport> {
    r0.expect_arity(Arity::Two)?;
    let id = identity2(r0.n());
    let square = r0 * r0;
    let inverse = &(&(&id + r0) * &(&id - r0)) - &id;
    Ok(VerificationReport::from_residuals(
        "nilpotent",
        vec![
            Residual::of("r0^2", &square),
            Residual::of("(I+r0)(I-r0)-I", &inverse),
        ],
    ))
}

/// `P·R̂ − I − β·r`. At `β = 0` the unitary family carries its parameter
/// in `μ` and the relation is `P·R̂₀ = I + r₀`.
pub fn check_quantization(
    rhat: &Operator,
    beta: &Rational,
    r: &Operator,
) -> Result<VerificationReport> {
    rhat.expect_arity(Arity::Two)?;
    r.expect_arity(Arity::Two)?;
    let coeff = if beta.is_zero() {
        Rational::one()
    } else {
        beta.clone()
    };
    let n = rhat.n();
    let residual = (&(&permutation(n) * rhat) - &identity2(n)).checked_sub(&r.scale(&coeff))?;
    Ok(VerificationReport::from_residuals(
        "quantization",
        vec![Residual::of("P*Rhat-I-beta*r", &residual)],
    ))
}

/// `(X⊗X) A (X⁻¹⊗X⁻¹) − target`.
pub fn check_conjugation(
    name: &str,
    a: &Operator,
    x: &Operator,
    target: &Operator,
) -> Result<VerificationReport> {
    let residual = conjugate_pair(a, x)?.checked_sub(target)?;
    Ok(VerificationReport::from_residuals(
        name,
        vec![Residual::of("conjugate-target", &residual)],
    ))
}

/// `det X(φ) − ∏_{j<k}(φ_j − φ_k)`.
pub fn determinant_residual(phi: &[Rational], x: &Operator) -> Residual {
    let mut product = Rational::one();
    for j in 0..phi.len() {
        for k in j + 1..phi.len() {
            product *= &phi[j] - &phi[k];
        }
    }
    Residual::scalar("detX-vandermonde", x.determinant() - product)
}

/// `(X⊗X) R̂_CG,1 (X⁻¹⊗X⁻¹) = R̂(βφ_i/(φ_i−φ_j))` with `q^{−2} = 1 − β`,
/// plus the determinant formula for `X(φ)`.
pub fn check_equivalence_quantum(phi: &PhiVector, beta: &Rational) -> Result<VerificationReport> {
    let target = rime_from_beta(&beta_from_phi(beta, phi))?;
    equivalence_quantum_against(phi, beta, &target)
}

/// As [`check_equivalence_quantum`], comparing against a supplied matrix.
pub fn equivalence_quantum_against(
    phi: &PhiVector,
    beta: &Rational,
    target: &Operator,
) -> Result<VerificationReport> {
    if !phi.is_strict() {
        return Err(Error::NotApplicable {
            check: "equivalence".into(),
            reason: "the change of basis is stated for strict phi".into(),
        });
    }
    let x = x_matrix(phi)?;
    let cg = cremmer_gervais_unchecked(phi.n(), &(Rational::one() - beta), &Rational::one())?;
    let mut report = check_conjugation("equivalence", &cg, &x, target)?;
    report
        .residuals
        .push(determinant_residual(phi.values(), &x));
    report.passed = report.residuals.iter().all(Residual::is_zero);
    Ok(report)
}

/// Which classical equivalence to check.
#[derive(Debug, Clone, Copy)]
pub enum ClassicalEquivalence<'a> {
    /// `r = Ad_X(φ) ⊗ Ad_X(φ) (r_CG)`
    Rime(&'a PhiVector),
    /// `r₀ = Ad_X(μ) ⊗ Ad_X(μ) (b)`
    Boundary(&'a MuVector),
}

pub fn check_equivalence_classical(which: ClassicalEquivalence<'_>) -> Result<VerificationReport> {
    let target = match which {
        ClassicalEquivalence::Rime(phi) => classical_rime_r(phi)?,
        ClassicalEquivalence::Boundary(mu) => classical_unitary_r0(mu)?,
    };
    equivalence_classical_against(which, &target)
}

pub fn equivalence_classical_against(
    which: ClassicalEquivalence<'_>,
    target: &Operator,
) -> Result<VerificationReport> {
    match which {
        ClassicalEquivalence::Rime(phi) => {
            let x = x_matrix(phi)?;
            check_conjugation("equivalence", &classical_cg_r(phi.n())?, &x, target)
        }
        ClassicalEquivalence::Boundary(mu) => {
            let x = x_matrix(&PhiVector::new(mu.values().to_vec())?)?;
            check_conjugation("equivalence", &boundary_b(mu.n())?, &x, target)
        }
    }
}

/// `β_ij + β_ji = β` for every pair `i < j`.
pub fn check_beta_constancy(p: &RimeParams) -> Result<VerificationReport> {
    let n = p.n();
    if n < 2 {
        return Err(Error::NotApplicable {
            check: "beta-constancy".into(),
            reason: "needs n >= 2".into(),
        });
    }
    let mut residual = Operator::zeros(n, Arity::One);
    for i in 1..=n {
        for j in i + 1..=n {
            let d = p.get(i, j) + p.get(j, i) - p.beta();
            if !d.is_zero() {
                residual = residual.with_entry(&[i], &[j], d)?;
            }
        }
    }
    Ok(VerificationReport::from_residuals(
        "beta-constancy",
        vec![Residual::of("beta_ij+beta_ji-beta", &residual)],
    ))
}
