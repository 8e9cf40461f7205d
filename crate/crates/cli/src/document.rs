use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use rime_core::constructors::{FamilySpec, FamilyTag};
use rime_core::operator::{Arity, Operator};
use rime_core::rational;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    /// Entries only, tab separated.
    Tsv,
}

/// A dense operator with the family it came from. Field order is fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub n: usize,
    pub arity: usize,
    pub order: String,
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub entries: Vec<Vec<String>>,
}

pub fn order_for(arity: Arity) -> &'static str {
    match arity {
        Arity::One => "lexicographic i rows/cols",
        Arity::Two => "lexicographic (i,j) rows/cols",
        Arity::Three => "lexicographic (i,j,k) rows/cols",
    }
}

impl MatrixDocument {
    pub fn new(spec: &FamilySpec, op: &Operator) -> Self {
        MatrixDocument {
            n: op.n(),
            arity: op.arity().get(),
            order: order_for(op.arity()).to_string(),
            family: spec.tag.name().to_string(),
            params: spec.params(),
            entries: op
                .rows()
                .map(|row| row.iter().map(rational::format).collect())
                .collect(),
        }
    }

    pub fn operator(&self) -> Result<Operator, CliError> {
        let arity = Arity::new(self.arity)?;
        if self.order != order_for(arity) {
            return Err(CliError::Document(format!(
                "order {:?} does not match arity {} (expected {:?})",
                self.order,
                self.arity,
                order_for(arity)
            )));
        }
        let dim = self
            .n
            .checked_pow(self.arity as u32)
            .filter(|_| self.n > 0)
            .ok_or_else(|| CliError::Document(format!("unsupported n = {}", self.n)))?;
        if self.entries.len() != dim || self.entries.iter().any(|r| r.len() != dim) {
            return Err(CliError::Document(format!(
                "entries must be a {dim}x{dim} array for n = {} and arity {}",
                self.n, self.arity
            )));
        }
        let rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(|s| rational::parse(s)).collect())
            .collect::<rime_core::Result<Vec<Vec<_>>>>()?;
        Ok(Operator::from_rows(self.n, arity, rows)?)
    }

    /// The family recorded in the document, with its parameters.
    pub fn spec(&self) -> Result<FamilySpec, CliError> {
        let tag = FamilyTag::from_str(&self.family)?;
        let mut spec = FamilySpec::bare(tag, self.n);
        for (key, value) in &self.params {
            match key.as_str() {
                "beta" => spec.beta = Some(rational::parse(value)?),
                "p" => spec.p = Some(rational::parse(value)?),
                "q2inv" => spec.q2inv = Some(rational::parse(value)?),
                "phi" => spec.phi = Some(rational::parse_list(value)?),
                "mu" => spec.mu = Some(rational::parse_list(value)?),
                other => {
                    return Err(CliError::Document(format!("unknown parameter {other:?}")));
                }
            }
        }
        spec.validate()?;
        Ok(spec)
    }

    /// JSON with one matrix row per line.
    pub fn to_json(&self) -> String {
        let js = |v: &str| serde_json::to_string(v).expect("string serialization");
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"n\": {},", self.n);
        let _ = writeln!(out, "  \"arity\": {},", self.arity);
        let _ = writeln!(out, "  \"order\": {},", js(&self.order));
        let _ = writeln!(out, "  \"family\": {},", js(&self.family));
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{}: {}", js(k), js(v)))
            .collect();
        let _ = writeln!(out, "  \"params\": {{{}}},", params.join(", "));
        out.push_str("  \"entries\": [\n");
        for (i, row) in self.entries.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|c| js(c)).collect();
            let sep = if i + 1 == self.entries.len() { "" } else { "," };
            let _ = writeln!(out, "    [{}]{sep}", cells.join(", "));
        }
        out.push_str("  ]\n}\n");
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for row in &self.entries {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Tsv => self.to_tsv(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }
}
