use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::{
    beta_from_phi, boundary_b, classical_cg_r, classical_rime_r, classical_unitary_r0,
    cremmer_gervais, rime_from_beta, unitary_beta, MuVector, PhiVector,
};
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    RimeQuantum,
    RimeUnitary,
    Cg,
    ClassicalRime,
    ClassicalCg,
    ClassicalUnitary,
    Boundary,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 7] = [
        FamilyTag::RimeQuantum,
        FamilyTag::RimeUnitary,
        FamilyTag::Cg,
        FamilyTag::ClassicalRime,
        FamilyTag::ClassicalCg,
        FamilyTag::ClassicalUnitary,
        FamilyTag::Boundary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::RimeQuantum => "rime-quantum",
            FamilyTag::RimeUnitary => "rime-unitary",
            FamilyTag::Cg => "cg",
            FamilyTag::ClassicalRime => "classical-rime",
            FamilyTag::ClassicalCg => "classical-cg",
            FamilyTag::ClassicalUnitary => "classical-unitary",
            FamilyTag::Boundary => "boundary",
        }
    }

    /// Parameter names the tag requires besides `n`.
    pub fn required(self) -> &'static [&'static str] {
        match self {
            FamilyTag::RimeQuantum => &["beta", "phi"],
            FamilyTag::RimeUnitary | FamilyTag::ClassicalUnitary => &["mu"],
            FamilyTag::Cg => &["q2inv", "p"],
            FamilyTag::ClassicalRime => &["phi"],
            FamilyTag::ClassicalCg | FamilyTag::Boundary => &[],
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    /// Accepts the canonical names plus the short aliases `rime` and `unitary`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rime" | "rime-quantum" => Ok(FamilyTag::RimeQuantum),
            "unitary" | "rime-unitary" => Ok(FamilyTag::RimeUnitary),
            other => FamilyTag::ALL
                .into_iter()
                .find(|t| t.name() == other)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown family {other:?}"))),
        }
    }
}

/// Which family to build, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub tag: FamilyTag,
    pub n: usize,
    pub beta: Option<Rational>,
    pub phi: Option<Vec<Rational>>,
    pub mu: Option<Vec<Rational>>,
    pub p: Option<Rational>,
    pub q2inv: Option<Rational>,
}

impl FamilySpec {
    pub fn bare(tag: FamilyTag, n: usize) -> Self {
        FamilySpec {
            tag,
            n,
            beta: None,
            phi: None,
            mu: None,
            p: None,
            q2inv: None,
        }
    }

    pub fn rime_quantum(beta: Rational, phi: Vec<Rational>) -> Self {
        FamilySpec {
            n: phi.len(),
            beta: Some(beta),
            phi: Some(phi),
            ..Self::bare(FamilyTag::RimeQuantum, 0)
        }
    }

    pub fn rime_unitary(mu: Vec<Rational>) -> Self {
        FamilySpec {
            n: mu.len(),
            mu: Some(mu),
            ..Self::bare(FamilyTag::RimeUnitary, 0)
        }
    }

    pub fn cg(n: usize, q2inv: Rational, p: Rational) -> Self {
        FamilySpec {
            q2inv: Some(q2inv),
            p: Some(p),
            ..Self::bare(FamilyTag::Cg, n)
        }
    }

    pub fn classical_rime(phi: Vec<Rational>) -> Self {
        FamilySpec {
            n: phi.len(),
            phi: Some(phi),
            ..Self::bare(FamilyTag::ClassicalRime, 0)
        }
    }

    pub fn classical_cg(n: usize) -> Self {
        Self::bare(FamilyTag::ClassicalCg, n)
    }

    pub fn classical_unitary(mu: Vec<Rational>) -> Self {
        FamilySpec {
            n: mu.len(),
            mu: Some(mu),
            ..Self::bare(FamilyTag::ClassicalUnitary, 0)
        }
    }

    pub fn boundary(n: usize) -> Self {
        Self::bare(FamilyTag::Boundary, n)
    }

    fn present(&self) -> Vec<&'static str> {
        let mut names = Vec::new();
        if self.beta.is_some() {
            names.push("beta");
        }
        if self.phi.is_some() {
            names.push("phi");
        }
        if self.mu.is_some() {
            names.push("mu");
        }
        if self.q2inv.is_some() {
            names.push("q2inv");
        }
        if self.p.is_some() {
            names.push("p");
        }
        names
    }

    /// Exactly the tag's parameters are present and vector lengths match `n`.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        let required = self.tag.required();
        let present = self.present();
        if let Some(missing) = required.iter().find(|r| !present.contains(r)) {
            return Err(Error::InvalidParameter(format!(
                "family {} requires --{missing}",
                self.tag
            )));
        }
        if let Some(extra) = present.iter().find(|p| !required.contains(p)) {
            return Err(Error::InvalidParameter(format!(
                "family {} does not take --{extra}",
                self.tag
            )));
        }
        for (name, v) in [("phi", &self.phi), ("mu", &self.mu)] {
            if let Some(v) = v {
                if v.len() != self.n {
                    return Err(Error::InvalidParameter(format!(
                        "{name} has {} entries but n = {}",
                        v.len(),
                        self.n
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn phi_vector(&self) -> Result<PhiVector> {
        PhiVector::new(self.phi.clone().ok_or_else(|| missing("phi"))?)
    }

    pub fn mu_vector(&self) -> Result<MuVector> {
        MuVector::new(self.mu.clone().ok_or_else(|| missing("mu"))?)
    }

    /// The Hecke parameter of the quantum families: `β`, `0` for the unitary
    /// family, `1 − q^{−2}` for Cremmer–Gervais.
    pub fn hecke_beta(&self) -> Option<Rational> {
        match self.tag {
            FamilyTag::RimeQuantum => self.beta.clone(),
            FamilyTag::RimeUnitary => Some(Rational::zero()),
            FamilyTag::Cg => self.q2inv.as_ref().map(|q| Rational::one() - q),
            _ => None,
        }
    }

    /// Canonical parameter strings, in a fixed order.
    pub fn params(&self) -> BTreeMap<String, String> {
        let list = |v: &[Rational]| v.iter().map(rational::format).collect::<Vec<_>>().join(",");
        let mut out = BTreeMap::new();
        if let Some(b) = &self.beta {
            out.insert("beta".into(), rational::format(b));
        }
        if let Some(v) = &self.phi {
            out.insert("phi".into(), list(v));
        }
        if let Some(v) = &self.mu {
            out.insert("mu".into(), list(v));
        }
        if let Some(q) = &self.q2inv {
            out.insert("q2inv".into(), rational::format(q));
        }
        if let Some(p) = &self.p {
            out.insert("p".into(), rational::format(p));
        }
        out
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", self.tag, self.n)?;
        for (k, v) in self.params() {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

fn missing(name: &str) -> Error {
    Error::InvalidParameter(format!("missing {name}"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMetadata {
    pub spec: FamilySpec,
    /// `Some(false)` for the relaxed one-zero `φ` point.
    pub strict: Option<bool>,
    /// `false` for the singular `β = 1` rime matrix.
    pub invertible: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Built {
    pub operator: Operator,
    pub metadata: FamilyMetadata,
}

pub fn build(spec: &FamilySpec) -> Result<Built> {
    spec.validate()?;
    let mut metadata = FamilyMetadata {
        spec: spec.clone(),
        strict: None,
        invertible: None,
    };
    let operator = match spec.tag {
        FamilyTag::RimeQuantum => {
            let phi = spec.phi_vector()?;
            let beta = spec.beta.clone().expect("validated");
            metadata.strict = Some(phi.is_strict());
            metadata.invertible = Some(spec.n == 1 || !beta.is_one());
            rime_from_beta(&beta_from_phi(&beta, &phi))?
        }
        FamilyTag::RimeUnitary => {
            metadata.invertible = Some(true);
            rime_from_beta(&unitary_beta(&spec.mu_vector()?))?
        }
        FamilyTag::Cg => cremmer_gervais(
            spec.n,
            spec.q2inv.as_ref().expect("validated"),
            spec.p.as_ref().expect("validated"),
        )?,
        FamilyTag::ClassicalRime => {
            let phi = spec.phi_vector()?;
            metadata.strict = Some(phi.is_strict());
            classical_rime_r(&phi)?
        }
        FamilyTag::ClassicalCg => classical_cg_r(spec.n)?,
        FamilyTag::ClassicalUnitary => classical_unitary_r0(&spec.mu_vector()?)?,
        FamilyTag::Boundary => boundary_b(spec.n)?,
    };
    Ok(Built { operator, metadata })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{matrix_unit, permutation, wedge};
    use crate::rational::int;

    #[test]
    fn dispatch_examples() {
        let built = build(&FamilySpec::rime_quantum(int(3), vec![int(2), int(1)])).unwrap();
        assert_eq!(built.operator.get(&[1, 2], &[2, 1]).unwrap(), &int(4));
        assert_eq!(built.metadata.strict, Some(true));
        assert_eq!(
            build(&FamilySpec::cg(2, int(1), int(1))).unwrap().operator,
            permutation(2)
        );
        let e21 = matrix_unit(2, 1, 2).unwrap();
        let e22 = matrix_unit(2, 2, 2).unwrap();
        assert_eq!(
            build(&FamilySpec::boundary(2)).unwrap().operator,
            wedge(&e21, &e22).unwrap().transpose()
        );
    }

    #[test]
    fn relaxed_and_singular_points_are_flagged() {
        let built = build(&FamilySpec::rime_quantum(int(1), vec![int(0), int(1)])).unwrap();
        assert_eq!(built.metadata.strict, Some(false));
        assert_eq!(built.metadata.invertible, Some(false));
    }

    #[test]
    fn missing_and_extra_parameters_are_rejected() {
        let mut spec = FamilySpec::cg(2, int(1), int(1));
        spec.p = None;
        assert!(build(&spec).is_err());
        let mut spec = FamilySpec::boundary(2);
        spec.beta = Some(int(1));
        assert!(build(&spec).is_err());
        let mut spec = FamilySpec::rime_quantum(int(3), vec![int(2), int(1)]);
        spec.n = 3;
        assert!(build(&spec).is_err());
        assert!(build(&FamilySpec::rime_quantum(int(3), vec![int(2), int(2)])).is_err());
    }

    #[test]
    fn tags_round_trip_through_names() {
        for tag in FamilyTag::ALL {
            assert_eq!(tag.name().parse::<FamilyTag>().unwrap(), tag);
        }
        assert_eq!("rime".parse::<FamilyTag>().unwrap(), FamilyTag::RimeQuantum);
        assert!("ice".parse::<FamilyTag>().is_err());
    }
}
