//! Invariant selection shared by `eval`, `fuzz` and `degree-check`.

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use gaussforge_core::conway::{c2n_m, nabla_m};
use gaussforge_core::theta::{evaluate_formula, ThetaSpec};
use gaussforge_core::{lambda_m, serialize, Bound, GaussDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InvariantKind {
    /// Product of θ invariants given by `--spec`.
    Theta,
    /// One Conway coefficient `c_{2n}[m]`, with `n` from `--n`.
    C2n,
    /// The labelled Conway polynomial up to `--max-degree`.
    Nabla,
    /// The diagram with its `f^m` labels.
    Labels,
}

#[derive(Args, Clone, Debug)]
pub struct InvariantArgs {
    #[arg(long, value_enum)]
    pub invariant: InvariantKind,
    /// Label bound, a positive integer or `inf`.
    #[arg(long)]
    pub m: Option<Bound>,
    /// θ factors as `t@k,...`.
    #[arg(long)]
    pub spec: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long)]
    pub max_degree: Option<u32>,
}

/// A fully resolved invariant.
#[derive(Clone, Debug)]
pub enum Invariant {
    Theta(ThetaSpec),
    Coefficient { n: usize, m: Bound },
    Nabla { m: Bound, max_degree: u32 },
    Labels(Bound),
}

impl Invariant {
    pub fn resolve(args: &InvariantArgs, default_m: Bound, default_degree: u32) -> Result<Invariant> {
        let m = args.m.unwrap_or(default_m);
        Ok(match args.invariant {
            InvariantKind::Theta => {
                let Bound::Finite(m) = m else { bail!("θ needs a finite --m") };
                let spec = args.spec.as_deref().context("θ needs --spec t@k,...")?;
                Invariant::Theta(ThetaSpec::parse(m, spec)?)
            }
            InvariantKind::C2n => Invariant::Coefficient { n: args.n, m },
            InvariantKind::Nabla => {
                let max_degree = args.max_degree.unwrap_or(default_degree);
                if !max_degree.is_multiple_of(2) {
                    bail!("--max-degree must be even, got {max_degree}");
                }
                Invariant::Nabla { m, max_degree }
            }
            InvariantKind::Labels => Invariant::Labels(m),
        })
    }

    pub fn name(&self) -> String {
        match self {
            Invariant::Theta(spec) => spec.to_string(),
            Invariant::Coefficient { n, m } => format!("c{}[m={m}]", 2 * n),
            Invariant::Nabla { m, max_degree } => format!("nabla[m={m}] mod z^{}", max_degree + 2),
            Invariant::Labels(m) => format!("labels[m={m}]"),
        }
    }

    pub fn integer(&self, diagram: &GaussDiagram) -> Result<i64> {
        Ok(match self {
            Invariant::Theta(spec) => evaluate_formula(spec, &lambda_m(diagram, Bound::Finite(spec.m)))?,
            Invariant::Coefficient { n, m } => c2n_m(diagram, *n, *m)?,
            _ => bail!("{} is not integer valued", self.name()),
        })
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, Invariant::Theta(_) | Invariant::Coefficient { .. })
    }

    pub fn evaluate(&self, diagram: &GaussDiagram) -> Result<String> {
        Ok(match self {
            Invariant::Nabla { m, max_degree } => nabla_m(diagram, *m, *max_degree)?.to_string(),
            Invariant::Labels(m) => serialize(&lambda_m(diagram, *m).diagram),
            _ => self.integer(diagram)?.to_string(),
        })
    }

    pub fn json_value(&self, diagram: &GaussDiagram) -> Result<serde_json::Value> {
        Ok(match self {
            Invariant::Nabla { m, max_degree } => serde_json::to_value(nabla_m(diagram, *m, *max_degree)?)?,
            Invariant::Labels(_) => self.evaluate(diagram)?.into(),
            _ => self.integer(diagram)?.into(),
        })
    }
}
