use std::fmt;

use num_traits::{One, Zero};

use crate::constructors::{FamilySpec, FamilyTag, GeneralRimeData, ParamTable};
use crate::error::Result;
use crate::operator::{Arity, EntryWitness, Operator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureTag {
    Ice,
    StrictRime,
    Rime,
    None,
}

impl StructureTag {
    pub fn name(self) -> &'static str {
        match self {
            StructureTag::Ice => "ice",
            StructureTag::StrictRime => "strict-rime",
            StructureTag::Rime => "rime",
            StructureTag::None => "none",
        }
    }
}

impl fmt::Display for StructureTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureClass {
    pub tag: StructureTag,
    /// Coefficients of the general rime form; present for ice and rime.
    pub data: Option<GeneralRimeData>,
    /// First entry outside the rime pattern, when the tag is `None`.
    pub violation: Option<EntryWitness>,
}

/// Scans an arity-2 operator: ice when every nonzero `M^{ij}_{kl}` has
/// `{k,l} = {i,j}`, rime when `{k,l} ⊆ {i,j}`, strict-rime when rime and
/// `α_ij γ_ij ≠ 0` for all `i ≠ j`.
pub fn classify_structure(m: &Operator) -> Result<StructureClass> {
    m.expect_arity(Arity::Two)?;
    let mut ice = true;
    for r in 0..m.dim() {
        for c in 0..m.dim() {
            let v = m.entry(r, c);
            if v.is_zero() {
                continue;
            }
            let (upper, lower) = (m.multi_index(r), m.multi_index(c));
            if !lower.iter().all(|x| upper.contains(x)) {
                return Ok(StructureClass {
                    tag: StructureTag::None,
                    data: None,
                    violation: Some(EntryWitness {
                        row: upper,
                        col: lower,
                        value: v.clone(),
                    }),
                });
            }
            if !upper.iter().all(|x| lower.contains(x)) {
                ice = false;
            }
        }
    }
    let n = m.n();
    let at = |i: usize, j: usize, k: usize, l: usize| {
        m.get(&[i, j], &[k, l]).expect("indices in range").clone()
    };
    let off = |f: &dyn Fn(usize, usize) -> crate::rational::Rational| {
        ParamTable::from_fn(n, |i, j| if i == j { Zero::zero() } else { f(i, j) })
    };
    let data = GeneralRimeData {
        alpha: ParamTable::from_fn(n, |i, j| at(i, j, j, i)),
        beta: off(&|i, j| at(i, j, i, j)),
        gamma: off(&|i, j| at(i, j, i, i)),
        gamma_prime: off(&|i, j| at(i, j, j, j)),
        require_invertible: false,
    };
    let tag = if ice {
        StructureTag::Ice
    } else if data.is_strict() {
        StructureTag::StrictRime
    } else {
        StructureTag::Rime
    };
    Ok(StructureClass {
        tag,
        data: Some(data),
        violation: None,
    })
}

/// The class a family's matrix should have, or `None` when the family has
/// no structural prediction.
pub fn expected_structure(spec: &FamilySpec) -> Result<Option<StructureTag>> {
    let n = spec.n;
    let from_params = |params: &crate::constructors::RimeParams| {
        let mut ice = true;
        let mut strict = true;
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let gamma = params.get(i, j);
                let alpha = crate::rational::Rational::one() - params.get(j, i);
                if !gamma.is_zero() {
                    ice = false;
                }
                if gamma.is_zero() || alpha.is_zero() {
                    strict = false;
                }
            }
        }
        if ice {
            StructureTag::Ice
        } else if strict {
            StructureTag::StrictRime
        } else {
            StructureTag::Rime
        }
    };
    Ok(match spec.tag {
        FamilyTag::RimeQuantum => {
            let beta = spec.beta.clone().unwrap_or_default();
            Some(from_params(&crate::constructors::beta_from_phi(
                &beta,
                &spec.phi_vector()?,
            )))
        }
        FamilyTag::RimeUnitary => Some(from_params(&crate::constructors::unitary_beta(
            &spec.mu_vector()?,
        ))),
        FamilyTag::Cg => {
            let trivial = spec.q2inv.as_ref().is_some_and(One::is_one);
            Some(if n >= 3 && !trivial {
                StructureTag::None
            } else {
                StructureTag::Ice
            })
        }
        _ => None,
    })
}
