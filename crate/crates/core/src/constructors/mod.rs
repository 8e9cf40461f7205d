//! Constructors for every matrix family: the general rime form, rime
//! solutions from φ and μ, Cremmer–Gervais, the change of basis X(φ), and
//! the classical r-matrices.

mod classical;
mod cremmer_gervais;
mod family;
mod rime;

pub use classical::{
    boundary_b, classical_cg_r, classical_rime_r, classical_unitary_r0, z_generator,
};
pub(crate) use cremmer_gervais::cremmer_gervais_unchecked;
pub use cremmer_gervais::{cremmer_gervais, elementary_symmetric, x_matrix};
pub use family::{build, Built, FamilyMetadata, FamilySpec, FamilyTag};
pub use rime::{beta_from_phi, rime_from_beta, rime_general, unitary_beta};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// An `n×n` table of rationals with 1-based access.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamTable {
    n: usize,
    values: Vec<Rational>,
}

impl ParamTable {
    pub fn zeros(n: usize) -> Self {
        ParamTable {
            n,
            values: vec![Rational::zero(); n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut t = Self::zeros(n);
        for i in 1..=n {
            for j in 1..=n {
                t.values[(i - 1) * n + (j - 1)] = f(i, j);
            }
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.values[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.values[(i - 1) * self.n + (j - 1)] = value;
    }

    fn diagonal_is_zero(&self) -> bool {
        (1..=self.n).all(|i| self.get(i, i).is_zero())
    }
}

/// Off-diagonal `β_ij` with `β_ii = 0` and the common sum `β = β_ij + β_ji`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RimeParams {
    beta_offdiag: ParamTable,
    beta: Rational,
}

impl RimeParams {
    pub fn new(beta_offdiag: ParamTable, beta: Rational) -> Result<Self> {
        let params = Self::new_unchecked(beta_offdiag, beta)?;
        let n = params.n();
        for i in 1..=n {
            for j in i + 1..=n {
                let sum = params.get(i, j) + params.get(j, i);
                if sum != params.beta {
                    return Err(Error::InvalidParameter(format!(
                        "beta_{i}{j} + beta_{j}{i} = {sum} differs from beta = {}",
                        params.beta
                    )));
                }
            }
        }
        Ok(params)
    }

    /// Skips the constant-sum check (still requires a zero diagonal); used to
    /// hand broken parameter sets to the verifier.
    pub fn new_unchecked(beta_offdiag: ParamTable, beta: Rational) -> Result<Self> {
        if !beta_offdiag.diagonal_is_zero() {
            return Err(Error::InvalidParameter("beta_ii must be zero".into()));
        }
        Ok(RimeParams { beta_offdiag, beta })
    }

    pub fn n(&self) -> usize {
        self.beta_offdiag.n()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.beta_offdiag.get(i, j)
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn table(&self) -> &ParamTable {
        &self.beta_offdiag
    }
}

/// Coefficients of the general rime form. Diagonals of `beta`, `gamma` and
/// `gamma_prime` are fixed to zero; `alpha`'s diagonal holds `α_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralRimeData {
    pub alpha: ParamTable,
    pub beta: ParamTable,
    pub gamma: ParamTable,
    pub gamma_prime: ParamTable,
    /// When set, every `α_i` must be nonzero.
    pub require_invertible: bool,
}

impl GeneralRimeData {
    pub fn n(&self) -> usize {
        self.alpha.n()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if [&self.beta, &self.gamma, &self.gamma_prime]
            .iter()
            .any(|t| t.n() != n)
        {
            return Err(Error::InvalidParameter(
                "rime coefficient tables have different sizes".into(),
            ));
        }
        for (name, t) in [
            ("beta", &self.beta),
            ("gamma", &self.gamma),
            ("gamma'", &self.gamma_prime),
        ] {
            if !t.diagonal_is_zero() {
                return Err(Error::InvalidParameter(format!("{name}_ii must be zero")));
            }
        }
        if self.require_invertible {
            if let Some(i) = (1..=n).find(|&i| self.alpha.get(i, i).is_zero()) {
                return Err(Error::InvalidParameter(format!(
                    "alpha_{i} = 0 but an invertible matrix was requested"
                )));
            }
        }
        Ok(())
    }

    /// True when `α_ij·γ_ij ≠ 0` for every `i ≠ j`.
    pub fn is_strict(&self) -> bool {
        let n = self.n();
        (1..=n).all(|i| {
            (1..=n).all(|j| {
                i == j || !(self.alpha.get(i, j).is_zero() || self.gamma.get(i, j).is_zero())
            })
        })
    }

    pub fn is_ice(&self) -> bool {
        self.gamma.values.iter().all(Zero::is_zero)
            && self.gamma_prime.values.iter().all(Zero::is_zero)
    }
}

fn check_distinct(values: &[Rational], what: &str) -> Result<()> {
    for (a, x) in values.iter().enumerate() {
        if let Some(b) = values[a + 1..].iter().position(|y| y == x) {
            return Err(Error::InvalidParameter(format!(
                "repeated {what} values: {what}_{} = {what}_{} = {x}",
                a + 1,
                a + b + 2
            )));
        }
    }
    Ok(())
}

/// Point `φ = (φ₁:…:φₙ)`, pairwise distinct with at most one zero coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiVector {
    phi: Vec<Rational>,
}

impl PhiVector {
    /// Accepts both strict points and the relaxed case with exactly one zero.
    pub fn new(phi: Vec<Rational>) -> Result<Self> {
        if phi.is_empty() {
            return Err(Error::InvalidParameter("phi must be non-empty".into()));
        }
        check_distinct(&phi, "phi")?;
        Ok(PhiVector { phi })
    }

    /// Requires every coordinate nonzero.
    pub fn strict(phi: Vec<Rational>) -> Result<Self> {
        let v = Self::new(phi)?;
        if !v.is_strict() {
            return Err(Error::InvalidParameter(
                "strict phi requires every phi_i to be nonzero".into(),
            ));
        }
        Ok(v)
    }

    pub fn is_strict(&self) -> bool {
        self.phi.iter().all(|p| !p.is_zero())
    }

    pub fn n(&self) -> usize {
        self.phi.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.phi
    }

    /// 1-based coordinate.
    pub fn get(&self, i: usize) -> &Rational {
        &self.phi[i - 1]
    }
}

/// Pairwise distinct `μ = (μ₁,…,μₙ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuVector {
    mu: Vec<Rational>,
}

impl MuVector {
    pub fn new(mu: Vec<Rational>) -> Result<Self> {
        if mu.is_empty() {
            return Err(Error::InvalidParameter("mu must be non-empty".into()));
        }
        check_distinct(&mu, "mu")?;
        Ok(MuVector { mu })
    }

    pub fn n(&self) -> usize {
        self.mu.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.mu
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.mu[i - 1]
    }
}
