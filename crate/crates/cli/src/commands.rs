use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use rime_core::constructors::{
    boundary_b, build, classical_rime_r, FamilySpec, FamilyTag, MuVector,
};
use rime_core::limits::{exp_formula_check, unitary_limit_curve};
use rime_core::rational::{self, int, ratio, Rational};
use rime_core::sample::Sampler;
use rime_core::verifier::{
    applicable_checks, run_checks, run_suite, CheckKind, VerificationReport,
};

use crate::document::{Format, MatrixDocument};
use crate::error::CliError;
use crate::{EXIT_FAIL, EXIT_PASS};

pub const DEFAULT_N_CAP: usize = 6;
/// Largest cap `RIME_MAX_N` may request.
pub const HARD_N_CAP: usize = 8;

pub const LIMIT_BETAS: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];
pub const LIMIT_MUS: [&[i64]; 2] = [&[0, 1], &[0, 1, 3]];
pub const LIMIT_FACTOR: f64 = 10.0;
pub const SLOPE_TOLERANCE: f64 = 0.1;
pub const EXP_H: f64 = 0.5;
pub const EXP_TERMS: usize = 30;
pub const EXP_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

/// Family parameters as given on the command line.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct SpecArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Comma-separated, e.g. `3,2,1`.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q2inv: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
}

impl SpecArgs {
    fn is_empty(&self) -> bool {
        self.n.is_none()
            && self.beta.is_none()
            && self.phi.is_none()
            && self.mu.is_none()
            && self.q2inv.is_none()
            && self.p.is_none()
    }

    pub fn to_spec(&self, family: &str) -> Result<FamilySpec, CliError> {
        let tag = FamilyTag::from_str(family)?;
        let one = |v: &Option<String>| v.as_deref().map(rational::parse).transpose();
        let list = |v: &Option<String>| v.as_deref().map(rational::parse_list).transpose();
        let phi = list(&self.phi)?;
        let mu = list(&self.mu)?;
        let n = self
            .n
            .or_else(|| phi.as_ref().or(mu.as_ref()).map(Vec::len))
            .ok_or_else(|| CliError::Usage(format!("family {tag} requires --n")))?;
        let spec = FamilySpec {
            tag,
            n,
            beta: one(&self.beta)?,
            phi,
            mu,
            p: one(&self.p)?,
            q2inv: one(&self.q2inv)?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn generate(family: &str, args: &SpecArgs, format: Format) -> Result<Output, CliError> {
    let spec = args.to_spec(family)?;
    let built = build(&spec)?;
    Ok(Output {
        stdout: MatrixDocument::new(&spec, &built.operator).render(format),
        code: EXIT_PASS,
    })
}

fn parse_checks(list: &str) -> Result<Vec<CheckKind>, CliError> {
    let kinds = list
        .split(',')
        .map(|s| CheckKind::from_str(s.trim()))
        .collect::<rime_core::Result<Vec<_>>>()?;
    if kinds.is_empty() {
        return Err(CliError::Usage("empty --checks list".into()));
    }
    Ok(kinds)
}

/// Runs checks on a family built from flags or on a document read from
/// `input`; exactly one source must be given.
pub fn verify(
    family: Option<&str>,
    input: Option<&Path>,
    args: &SpecArgs,
    checks: Option<&str>,
) -> Result<Output, CliError> {
    let (spec, operator) = match (family, input) {
        (Some(family), None) => {
            let spec = args.to_spec(family)?;
            let op = build(&spec)?.operator;
            (spec, op)
        }
        (None, Some(path)) => {
            if !args.is_empty() {
                return Err(CliError::Usage(
                    "family parameters come from the document when --input is given".into(),
                ));
            }
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            let doc = MatrixDocument::from_json(&text)?;
            (doc.spec()?, doc.operator()?)
        }
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --family or --input".into(),
            ))
        }
    };
    let kinds = match checks {
        Some(list) => parse_checks(list)?,
        None => applicable_checks(&spec),
    };
    let reports = run_checks(&spec, &operator, &kinds)?;
    let mut stdout = String::new();
    for r in &reports {
        let _ = writeln!(stdout, "{r}");
    }
    let code = if reports.iter().all(|r| r.passed) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    };
    Ok(Output { stdout, code })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportOptions {
    pub n_max: usize,
    pub seeds: usize,
    pub seed_value: u64,
    pub cap: usize,
}

/// Reads the cap override; `None` means the default.
pub fn resolve_cap(env: Option<&str>) -> Result<usize, CliError> {
    let Some(text) = env else {
        return Ok(DEFAULT_N_CAP);
    };
    match text.trim().parse::<usize>() {
        Ok(cap) if (2..=HARD_N_CAP).contains(&cap) => Ok(cap),
        _ => Err(CliError::Usage(format!(
            "RIME_MAX_N must be an integer in 2..={HARD_N_CAP}, got {text:?}"
        ))),
    }
}

pub fn trial_seed(seed_value: u64, n: usize, k: usize) -> u64 {
    seed_value
        .wrapping_mul(1_000_003)
        .wrapping_add((n as u64) * 1000 + k as u64)
}

const FAMILY_ROWS: [&str; 8] = [
    "rime-quantum",
    "rime-relaxed",
    "rime-unitary",
    "cg",
    "classical-rime",
    "classical-cg",
    "classical-unitary",
    "boundary",
];

enum Job {
    Suite {
        label: &'static str,
        spec: FamilySpec,
    },
    Exp {
        label: &'static str,
        spec: FamilySpec,
    },
}

struct Trial {
    n: usize,
    seed: u64,
    job: Job,
}

struct TrialResult {
    label: &'static str,
    n: usize,
    checks: usize,
    failures: Vec<String>,
    deviation: Option<f64>,
}

fn pick_beta(s: &mut Sampler) -> Rational {
    let fixed = [ratio(1, 2).expect("constant"), int(1), int(3), int(-2)];
    if s.range(2) == 0 {
        fixed[s.range(fixed.len())].clone()
    } else {
        s.nonzero_rational()
    }
}

fn trials(n: usize, k: usize, seed: u64) -> Vec<Trial> {
    let mut s = Sampler::new(seed);
    let beta = pick_beta(&mut s);
    let phi = s.strict_phi(n);
    let mut relaxed = phi.clone();
    relaxed[s.range(n)] = int(0);
    let mu = s.mu(n);
    let q2inv = s.nonzero_rational();
    let p = s.nonzero_rational();

    let mut jobs = vec![
        Job::Suite {
            label: "rime-quantum",
            spec: FamilySpec::rime_quantum(beta.clone(), phi.clone()),
        },
        Job::Suite {
            label: "rime-relaxed",
            spec: FamilySpec::rime_quantum(beta, relaxed),
        },
        Job::Suite {
            label: "rime-unitary",
            spec: FamilySpec::rime_unitary(mu.clone()),
        },
        Job::Suite {
            label: "cg",
            spec: FamilySpec::cg(n, q2inv, p),
        },
        Job::Suite {
            label: "classical-rime",
            spec: FamilySpec::classical_rime(phi.clone()),
        },
        Job::Suite {
            label: "classical-unitary",
            spec: FamilySpec::classical_unitary(mu),
        },
        Job::Exp {
            label: "exp classical-rime",
            spec: FamilySpec::classical_rime(phi),
        },
    ];
    if k == 0 {
        jobs.push(Job::Suite {
            label: "classical-cg",
            spec: FamilySpec::classical_cg(n),
        });
        jobs.push(Job::Suite {
            label: "boundary",
            spec: FamilySpec::boundary(n),
        });
        jobs.push(Job::Exp {
            label: "exp boundary",
            spec: FamilySpec::boundary(n),
        });
    }
    jobs.into_iter().map(|job| Trial { n, seed, job }).collect()
}

fn failure(seed: u64, spec: &FamilySpec, what: &str) -> String {
    format!("FAIL\tseed={seed}\t{spec}\t{what}")
}

fn run_trial(trial: &Trial) -> TrialResult {
    let label = match &trial.job {
        Job::Suite { label, .. } | Job::Exp { label, .. } => *label,
    };
    let mut result = TrialResult {
        label,
        n: trial.n,
        checks: 0,
        failures: Vec::new(),
        deviation: None,
    };
    match &trial.job {
        Job::Suite { spec, .. } => match run_suite(spec) {
            Ok(reports) => {
                result.checks = reports.len();
                result.failures = reports
                    .iter()
                    .filter(|r| !r.passed)
                    .map(|r: &VerificationReport| failure(trial.seed, spec, &r.to_string()))
                    .collect();
            }
            Err(e) => {
                result.checks = 1;
                result
                    .failures
                    .push(failure(trial.seed, spec, &e.to_string()));
            }
        },
        Job::Exp { spec, .. } => {
            result.checks = 1;
            let r = match spec.tag {
                FamilyTag::ClassicalRime => spec.phi_vector().and_then(|p| classical_rime_r(&p)),
                _ => boundary_b(spec.n),
            };
            match r.and_then(|r| exp_formula_check(&r, EXP_H, EXP_TERMS)) {
                Ok(dev) => {
                    result.deviation = Some(dev);
                    if dev.is_nan() || dev > EXP_TOLERANCE {
                        result.failures.push(failure(
                            trial.seed,
                            spec,
                            &format!("exp deviation {dev:.3e} above {EXP_TOLERANCE:.0e}"),
                        ));
                    }
                }
                Err(e) => result
                    .failures
                    .push(failure(trial.seed, spec, &e.to_string())),
            }
        }
    }
    result
}

struct LimitRow {
    mu: String,
    deviation: f64,
    slope: f64,
    passed: bool,
    error: Option<String>,
}

fn limit_row(values: &[i64]) -> LimitRow {
    let mu_text = values
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let curve = MuVector::new(values.iter().map(|&v| int(v)).collect())
        .and_then(|mu| unitary_limit_curve(&mu, &LIMIT_BETAS));
    match curve {
        Ok(curve) => {
            let beta = *LIMIT_BETAS.last().expect("nonempty");
            let deviation = *curve.deviations.last().expect("nonempty");
            let passed =
                deviation <= LIMIT_FACTOR * beta && (curve.slope - 1.0).abs() <= SLOPE_TOLERANCE;
            LimitRow {
                mu: mu_text,
                deviation,
                slope: curve.slope,
                passed,
                error: None,
            }
        }
        Err(e) => LimitRow {
            mu: mu_text,
            deviation: f64::NAN,
            slope: f64::NAN,
            passed: false,
            error: Some(e.to_string()),
        },
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Randomized sweep over every family; output depends only on the options.
pub fn report(opts: &ReportOptions) -> Result<Output, CliError> {
    if opts.n_max > opts.cap {
        return Err(CliError::Usage(format!(
            "n above supported cap ({} > {})",
            opts.n_max, opts.cap
        )));
    }
    if opts.n_max < 2 {
        return Err(CliError::Usage("--n-max must be at least 2".into()));
    }
    if opts.seeds == 0 {
        return Err(CliError::Usage("--seeds must be at least 1".into()));
    }

    let all: Vec<Trial> = (2..=opts.n_max)
        .flat_map(|n| (0..opts.seeds).map(move |k| (n, k)))
        .flat_map(|(n, k)| trials(n, k, trial_seed(opts.seed_value, n, k)))
        .collect();
    let results: Vec<TrialResult> = all.par_iter().map(run_trial).collect();
    let limits: Vec<LimitRow> = LIMIT_MUS.iter().map(|mu| limit_row(mu)).collect();

    #[derive(Default)]
    struct Row {
        runs: usize,
        checks: usize,
        failed: usize,
        max_dev: f64,
    }
    let mut rows: BTreeMap<(usize, usize), Row> = BTreeMap::new();
    let order = |label: &str| {
        FAMILY_ROWS
            .iter()
            .position(|f| *f == label)
            .unwrap_or(FAMILY_ROWS.len() + usize::from(label == "exp boundary"))
    };
    let mut failures = Vec::new();
    for r in &results {
        let row = rows.entry((order(r.label), r.n)).or_default();
        row.runs += 1;
        row.checks += r.checks;
        row.failed += r.failures.len();
        if let Some(d) = r.deviation {
            row.max_dev = row.max_dev.max(d);
        }
        failures.extend(r.failures.iter().cloned());
    }
    let label_of = |idx: usize| match FAMILY_ROWS.get(idx) {
        Some(l) => *l,
        None if idx == FAMILY_ROWS.len() => "exp classical-rime",
        None => "exp boundary",
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "rime report\tseed-value={}\tn-max={}\tseeds={}",
        opts.seed_value, opts.n_max, opts.seeds
    );
    let _ = writeln!(out, "family\tn\truns\tchecks\tfailed\tresult");
    let mut total_checks = 0;
    let mut total_failed = 0;
    for (&(idx, n), row) in rows.iter().filter(|((idx, _), _)| *idx < FAMILY_ROWS.len()) {
        total_checks += row.checks;
        total_failed += row.failed;
        let _ = writeln!(
            out,
            "{}\t{n}\t{}\t{}\t{}\t{}",
            label_of(idx),
            row.runs,
            row.checks,
            row.failed,
            verdict(row.failed == 0)
        );
    }
    let _ = writeln!(out, "exp\tn\truns\tmax deviation\tresult");
    for (&(idx, n), row) in rows
        .iter()
        .filter(|((idx, _), _)| *idx >= FAMILY_ROWS.len())
    {
        total_checks += row.checks;
        total_failed += row.failed;
        let _ = writeln!(
            out,
            "{}\t{n}\t{}\t{:.3e}\t{}",
            label_of(idx),
            row.runs,
            row.max_dev,
            verdict(row.failed == 0)
        );
    }
    let beta = LIMIT_BETAS.last().expect("nonempty");
    let _ = writeln!(
        out,
        "limit\tmu\tdeviation at beta={beta:.0e}\tslope\tresult"
    );
    for l in &limits {
        total_checks += 1;
        let _ = writeln!(
            out,
            "limit\t{}\t{:.3e}\t{:.4}\t{}",
            l.mu,
            l.deviation,
            l.slope,
            verdict(l.passed)
        );
        if !l.passed {
            total_failed += 1;
            failures.push(format!(
                "FAIL\tlimit mu={}\t{}",
                l.mu,
                l.error.clone().unwrap_or_else(|| format!(
                    "deviation {:.3e} (bound {:.1e}), slope {:.4}",
                    l.deviation,
                    LIMIT_FACTOR * beta,
                    l.slope
                ))
            ));
        }
    }
    for f in &failures {
        let _ = writeln!(out, "{f}");
    }
    let _ = writeln!(
        out,
        "total\t{total_checks} checks\t{total_failed} failed\t{}",
        verdict(total_failed == 0)
    );
    Ok(Output {
        stdout: out,
        code: if total_failed == 0 {
            EXIT_PASS
        } else {
            EXIT_FAIL
        },
    })
}
