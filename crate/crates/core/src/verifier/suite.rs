use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;

use super::checks::*;
use super::report::VerificationReport;
use super::structure::{classify_structure, expected_structure};
use crate::constructors::{
    beta_from_phi, build, classical_rime_r, classical_unitary_r0, rime_from_beta, unitary_beta,
    FamilyMetadata, FamilySpec, FamilyTag,
};
use crate::error::{Error, Result};
use crate::operator::{permutation, Arity, Operator};
use crate::rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    BetaConstancy,
    Structure,
    Ybe,
    Hecke,
    Multiplicities,
    Quantization,
    Equivalence,
    Skew,
    Acybe,
    AcybeNh,
    Tilde,
    Cybe,
    Idempotent,
    Nilpotent,
    Braid,
}

impl CheckKind {
    pub const ALL: [CheckKind; 15] = [
        CheckKind::BetaConstancy,
        CheckKind::Structure,
        CheckKind::Ybe,
        CheckKind::Hecke,
        CheckKind::Multiplicities,
        CheckKind::Quantization,
        CheckKind::Equivalence,
        CheckKind::Skew,
        CheckKind::Acybe,
        CheckKind::AcybeNh,
        CheckKind::Tilde,
        CheckKind::Cybe,
        CheckKind::Idempotent,
        CheckKind::Nilpotent,
        CheckKind::Braid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::BetaConstancy => "beta-constancy",
            CheckKind::Structure => "structure",
            CheckKind::Ybe => "ybe",
            CheckKind::Hecke => "hecke",
            CheckKind::Multiplicities => "multiplicities",
            CheckKind::Quantization => "quantization",
            CheckKind::Equivalence => "equivalence",
            CheckKind::Skew => "skew",
            CheckKind::Acybe => "acybe",
            CheckKind::AcybeNh => "acybe-nh",
            CheckKind::Tilde => "tilde",
            CheckKind::Cybe => "cybe",
            CheckKind::Idempotent => "idempotent",
            CheckKind::Nilpotent => "nilpotent",
            CheckKind::Braid => "braid",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown check {s:?}")))
    }
}

/// The checks [`run_suite`] runs for a family, in their fixed order.
pub fn applicable_checks(spec: &FamilySpec) -> Vec<CheckKind> {
    use CheckKind::*;
    let strict_phi = spec
        .phi
        .as_ref()
        .is_some_and(|phi| phi.iter().all(|p| !p.is_zero()));
    let beta_is_two = spec.hecke_beta() == Some(rational::int(2));
    let mut kinds = match spec.tag {
        FamilyTag::RimeQuantum => {
            let mut k = vec![BetaConstancy, Structure, Ybe, Hecke, Multiplicities];
            if strict_phi {
                k.extend([Quantization, Equivalence]);
            }
            k
        }
        FamilyTag::RimeUnitary => {
            vec![
                BetaConstancy,
                Structure,
                Ybe,
                Hecke,
                Multiplicities,
                Quantization,
            ]
        }
        FamilyTag::Cg => vec![Structure, Ybe, Hecke, Multiplicities],
        FamilyTag::ClassicalRime => {
            vec![Skew, AcybeNh, Tilde, Cybe, Idempotent, Braid, Equivalence]
        }
        FamilyTag::ClassicalCg => vec![Skew, AcybeNh, Tilde, Cybe, Idempotent, Braid],
        FamilyTag::ClassicalUnitary => {
            vec![Skew, Acybe, Cybe, Nilpotent, Equivalence, Quantization]
        }
        FamilyTag::Boundary => vec![Skew, Acybe, Cybe, Nilpotent],
    };
    if beta_is_two {
        kinds.retain(|k| *k != Multiplicities);
    }
    if spec.n < 2 {
        kinds.retain(|k| *k != BetaConstancy);
    }
    kinds
}

fn not_applicable(kind: CheckKind, spec: &FamilySpec) -> Error {
    Error::NotApplicable {
        check: kind.name().into(),
        reason: format!("no {kind} check for family {}", spec.tag),
    }
}

fn is_quantum(tag: FamilyTag) -> bool {
    matches!(
        tag,
        FamilyTag::RimeQuantum | FamilyTag::RimeUnitary | FamilyTag::Cg
    )
}

/// Runs one check on `operator`, taking any auxiliary parameters (β, φ, μ)
/// from `spec`. The operator is what gets judged; it need not be the one
/// `spec` would build.
pub fn run_check(
    kind: CheckKind,
    spec: &FamilySpec,
    operator: &Operator,
) -> Result<VerificationReport> {
    use CheckKind::*;
    operator.expect_arity(Arity::Two)?;
    if operator.n() != spec.n {
        return Err(Error::DimensionMismatch {
            left: format!("family n={}", spec.n),
            right: format!("operator n={}", operator.n()),
        });
    }
    let n = spec.n;
    let tag = spec.tag;
    let hecke_beta = || spec.hecke_beta().ok_or_else(|| not_applicable(kind, spec));
    match kind {
        BetaConstancy => {
            let params = match tag {
                FamilyTag::RimeQuantum => beta_from_phi(&hecke_beta()?, &spec.phi_vector()?),
                FamilyTag::RimeUnitary => unitary_beta(&spec.mu_vector()?),
                _ => return Err(not_applicable(kind, spec)),
            };
            check_beta_constancy(&params)
        }
        Structure => {
            let expected = expected_structure(spec)?.ok_or_else(|| not_applicable(kind, spec))?;
            let class = classify_structure(operator)?;
            let mut detail = format!("class {} (expected {expected})", class.tag);
            if let Some(w) = &class.violation {
                detail.push_str(&format!("; outside pattern at {w}"));
            }
            Ok(VerificationReport::from_condition(
                "structure",
                class.tag == expected,
                detail,
            ))
        }
        Ybe if is_quantum(tag) => check_ybe(operator),
        Hecke if is_quantum(tag) => check_hecke(operator, &hecke_beta()?),
        Multiplicities if is_quantum(tag) => check_multiplicities(operator, &hecke_beta()?),
        Quantization => match tag {
            FamilyTag::RimeQuantum => check_quantization(
                operator,
                &hecke_beta()?,
                &classical_rime_r(&spec.phi_vector()?)?,
            ),
            FamilyTag::RimeUnitary => check_quantization(
                operator,
                &rational::int(0),
                &classical_unitary_r0(&spec.mu_vector()?)?,
            ),
            FamilyTag::ClassicalUnitary => check_quantization(
                &rime_from_beta(&unitary_beta(&spec.mu_vector()?))?,
                &rational::int(0),
                operator,
            ),
            _ => Err(not_applicable(kind, spec)),
        },
        Equivalence => match tag {
            FamilyTag::RimeQuantum => {
                equivalence_quantum_against(&spec.phi_vector()?, &hecke_beta()?, operator)
            }
            FamilyTag::ClassicalRime => equivalence_classical_against(
                ClassicalEquivalence::Rime(&spec.phi_vector()?),
                operator,
            ),
            FamilyTag::ClassicalUnitary => equivalence_classical_against(
                ClassicalEquivalence::Boundary(&spec.mu_vector()?),
                operator,
            ),
            _ => Err(not_applicable(kind, spec)),
        },
        Skew => match tag {
            FamilyTag::ClassicalRime | FamilyTag::ClassicalCg => check_skew(
                operator,
                &(&permutation(n) - &Operator::identity(n, Arity::Two)),
            ),
            FamilyTag::ClassicalUnitary | FamilyTag::Boundary => check_skew_symmetric(operator),
            _ => Err(not_applicable(kind, spec)),
        },
        Acybe | AcybeNh | Tilde | Cybe | Idempotent | Nilpotent | Braid if !is_quantum(tag) => {
            match kind {
                Acybe => check_homogeneous_acybe(operator),
                AcybeNh => check_nonhomogeneous_acybe(operator),
                Tilde => check_tilde_relations(operator),
                Cybe => check_cybe(operator),
                Idempotent => check_idempotent_exponential(operator),
                Nilpotent => check_nilpotent_exponential(operator),
                _ => check_braid_identities(operator),
            }
        }
        _ => Err(not_applicable(kind, spec)),
    }
}

fn metadata_map(meta: &FamilyMetadata) -> BTreeMap<String, String> {
    let mut map = meta.spec.params();
    map.insert("family".into(), meta.spec.tag.to_string());
    map.insert("n".into(), meta.spec.n.to_string());
    if let Some(strict) = meta.strict {
        map.insert("strict".into(), strict.to_string());
    }
    if let Some(inv) = meta.invertible {
        map.insert("invertible".into(), inv.to_string());
    }
    map
}

/// Runs `kinds` against `operator`, possibly concurrently; reports come
/// back in the order of `kinds`.
pub fn run_checks(
    spec: &FamilySpec,
    operator: &Operator,
    kinds: &[CheckKind],
) -> Result<Vec<VerificationReport>> {
    spec.validate()?;
    let meta = metadata_map(&FamilyMetadata {
        spec: spec.clone(),
        strict: None,
        invertible: None,
    });
    kinds
        .par_iter()
        .map(|&kind| Ok(run_check(kind, spec, operator)?.with_metadata(meta.clone())))
        .collect()
}

/// Builds the family's matrix and runs every applicable check on it.
pub fn run_suite(spec: &FamilySpec) -> Result<Vec<VerificationReport>> {
    let built = build(spec)?;
    let meta = metadata_map(&built.metadata);
    let reports = run_checks(spec, &built.operator, &applicable_checks(spec))?;
    Ok(reports
        .into_iter()
        .map(|r| r.with_metadata(meta.clone()))
        .collect())
}
