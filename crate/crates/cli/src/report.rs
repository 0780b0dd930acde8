use std::time::Instant;

use clap::ValueEnum;
use fim_core::dual_constructor::{self, CaseTrace};
use fim_core::local_ratio::{self, Approximation, RatioCertificate};
use fim_core::rational::{self, Rational};
use fim_core::subcubic::{self, PdCertificate};
use fim_core::{lp, oracle, EdgeId, EdgeWeights, Graph};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algo {
    /// Both LPs, solved exactly.
    Lp,
    /// Constructive dual bound `Δn/(2Δ+1)`.
    Dual,
    /// Maximum induced matching by branch and bound.
    Exact,
    /// 7/3-approximation for maximum degree 3.
    Subcubic,
    /// `((1−ε)Δ + 1/2)`-approximation.
    Localratio,
    /// `subcubic` where it applies, `localratio` otherwise.
    Auto,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub oracle_cap: usize,
    /// Degree bound for `dual` and `localratio`; defaults to `Δ(G)` (at
    /// least 2, resp. 3).
    pub delta: Option<usize>,
    pub float: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            oracle_cap: crate::DEFAULT_ORACLE_CAP,
            delta: None,
            float: false,
        }
    }
}

/// Everything needed to re-check a run without re-running it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Lp {
        primal: EdgeWeights,
        dual: EdgeWeights,
    },
    Exact {
        matching: Vec<EdgeId>,
    },
    GoodDual {
        delta: usize,
        y: EdgeWeights,
        trace: CaseTrace,
    },
    Subcubic(PdCertificate),
    LocalRatio {
        delta: usize,
        certificate: Box<RatioCertificate>,
        /// Optimal solution of (D) with the same value as `certificate.x`.
        dual: EdgeWeights,
    },
}

/// Plain statement of the guarantee a run claims, and whether it held.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guarantee {
    pub statement: String,
    pub holds: bool,
}

/// Decimal views of the exact fields; never used by any check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Approximate {
    pub note: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu_s_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_total: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub instance: String,
    pub algorithm: Algo,
    /// The input in canonical edge-list form; edge ids below refer to it.
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu_s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu_s_star: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_total: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matching_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guarantee: Option<Guarantee>,
    pub wall_time_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<Approximate>,
    pub certificate: Certificate,
}

impl RunReport {
    fn new(instance: &str, algorithm: Algo, g: &Graph, certificate: Certificate) -> Self {
        Self {
            instance: instance.to_string(),
            algorithm,
            graph: g.serialize(),
            n: g.n(),
            m: g.m(),
            max_degree: g.max_degree(),
            nu_s: None,
            nu_s_star: None,
            dual_total: None,
            matching_size: None,
            guarantee: None,
            wall_time_ms: 0,
            approx: None,
            certificate,
        }
    }
}

fn subcubic_report(instance: &str, g: &Graph, cert: PdCertificate) -> RunReport {
    let (size, total, holds) = (cert.matching.size(), cert.y.total(), cert.ratio_ok);
    let mut r = RunReport::new(instance, Algo::Subcubic, g, Certificate::Subcubic(cert));
    r.matching_size = Some(size);
    r.dual_total = Some(rational::format(&total));
    r.guarantee = Some(Guarantee {
        statement: "y(E) <= 7/3 |M|".into(),
        holds,
    });
    r
}

fn local_ratio_report(instance: &str, g: &Graph, delta: usize, cert: RatioCertificate) -> Result<RunReport, CliError> {
    let dual = lp::solve_dual(g)?.weights;
    let size = cert.matching.size();
    let nu_s_star = rational::format(&cert.nu_s_star);
    let guarantee = Guarantee {
        statement: format!("f |M| >= nu_s_star with f = {}", rational::format(&cert.f)),
        holds: cert.ratio_ok,
    };
    let certificate = Certificate::LocalRatio {
        delta,
        certificate: Box::new(cert),
        dual,
    };
    let mut r = RunReport::new(instance, Algo::Localratio, g, certificate);
    r.matching_size = Some(size);
    r.nu_s_star = Some(nu_s_star);
    r.guarantee = Some(guarantee);
    Ok(r)
}

/// Runs one algorithm on `g` and packages the result with its certificate.
pub fn solve(g: &Graph, instance: &str, algo: Algo, opts: &SolveOptions) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let g = &g.canonical();
    let mut report = match algo {
        Algo::Lp => {
            let primal = lp::solve_primal(g)?;
            let dual = lp::solve_dual(g)?;
            if primal.objective != dual.objective {
                return Err(fim_core::Error::Internal("primal and dual optima differ".into()).into());
            }
            let mut r = RunReport::new(
                instance,
                algo,
                g,
                Certificate::Lp {
                    primal: primal.weights,
                    dual: dual.weights,
                },
            );
            r.nu_s_star = Some(rational::format(&primal.objective));
            r.dual_total = Some(rational::format(&dual.objective));
            r
        }
        Algo::Exact => {
            let (size, witness) = oracle::exact_nu_s(g, opts.oracle_cap)?;
            let mut r = RunReport::new(
                instance,
                algo,
                g,
                Certificate::Exact {
                    matching: witness.edges().to_vec(),
                },
            );
            r.nu_s = Some(size);
            r.matching_size = Some(size);
            r
        }
        Algo::Dual => {
            let delta = opts.delta.unwrap_or(g.max_degree().max(2));
            let (dual, trace) = dual_constructor::build_good_dual(g, delta)?;
            let bound = dual_constructor::theorem1_bound(g.n(), delta);
            let total = dual.total.clone();
            let certificate = Certificate::GoodDual {
                delta,
                y: dual.y,
                trace,
            };
            let mut r = RunReport::new(instance, algo, g, certificate);
            r.dual_total = Some(rational::format(&total));
            r.guarantee = Some(Guarantee {
                statement: format!("y(E) <= {delta} n / {} = {}", 2 * delta + 1, rational::format(&bound)),
                holds: total <= bound,
            });
            r
        }
        Algo::Subcubic => subcubic_report(instance, g, subcubic::subcubic_primal_dual(g)?),
        Algo::Localratio => {
            let delta = opts.delta.unwrap_or(g.max_degree().max(3));
            local_ratio_report(instance, g, delta, local_ratio::approximate_fim(g, delta)?)?
        }
        Algo::Auto => match local_ratio::approximate(g)? {
            Approximation::Subcubic(c) => subcubic_report(instance, g, c),
            Approximation::LocalRatio(c) => local_ratio_report(instance, g, g.max_degree().max(3), c)?,
        },
    };
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    if opts.float {
        let view = |s: &Option<String>| {
            s.as_deref()
                .and_then(rational::parse)
                .map(|r: Rational| rational::approx(&r))
        };
        report.approx = Some(Approximate {
            note: "floating-point approximations for reading only".into(),
            nu_s_star: view(&report.nu_s_star),
            dual_total: view(&report.dual_total),
        });
    }
    Ok(report)
}
