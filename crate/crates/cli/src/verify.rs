//! Re-checks a [`RunReport`] from its embedded graph and certificate.
//!
//! Deliberately shares nothing with the solvers beyond parsing: the edge
//! neighborhoods and conflict relation are rebuilt here from the raw edge
//! list by brute force.

use fim_core::rational::{self, int, ratio, Rational};
use fim_core::{EdgeId, EdgeWeights, Graph};

use crate::error::CliError;
use crate::report::{Algo, Certificate, RunReport};

struct Naive {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacent: Vec<Vec<bool>>,
}

impl Naive {
    fn new(g: &Graph) -> Self {
        let mut adjacent = vec![vec![false; g.n()]; g.n()];
        for &(u, v) in g.edges() {
            adjacent[u][v] = true;
            adjacent[v][u] = true;
        }
        Self {
            n: g.n(),
            edges: g.edges().to_vec(),
            adjacent,
        }
    }

    fn degree(&self, u: usize) -> usize {
        self.adjacent[u].iter().filter(|&&a| a).count()
    }

    fn touches(&self, e: EdgeId, f: EdgeId) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        a == c || a == d || b == c || b == d
    }

    /// `f ∈ C(e)`: shares an endpoint with `e` or is joined to it by an edge.
    fn conflicts(&self, e: EdgeId, f: EdgeId) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        self.touches(e, f) || [a, b].iter().any(|&x| self.adjacent[x][c] || self.adjacent[x][d])
    }

    fn load(&self, w: &[Rational], e: EdgeId) -> Rational {
        (0..self.edges.len())
            .filter(|&f| self.touches(e, f))
            .map(|f| &w[f])
            .sum()
    }

    fn at_vertex(&self, w: &[Rational], u: usize) -> Rational {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == u || b == u)
            .map(|(f, _)| &w[f])
            .sum()
    }

    fn name(&self, e: EdgeId) -> String {
        let (a, b) = self.edges[e];
        format!("edge {e} ({a}-{b})")
    }
}

struct Findings(Vec<String>);

impl Findings {
    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }
}

fn weights<'a>(g: &Naive, w: &'a EdgeWeights, label: &str, out: &mut Findings) -> Option<&'a [Rational]> {
    if w.len() != g.edges.len() {
        out.0
            .push(format!("{label} has {} entries for {} edges", w.len(), g.edges.len()));
        return None;
    }
    for (e, v) in w.values().iter().enumerate() {
        out.require(*v >= rational::zero(), || {
            format!("{label} is negative on {}", g.name(e))
        });
    }
    Some(w.values())
}

fn primal_feasible(g: &Naive, x: &EdgeWeights, label: &str, out: &mut Findings) {
    if let Some(x) = weights(g, x, label, out) {
        for e in 0..g.edges.len() {
            let load = g.load(x, e);
            out.require(load <= rational::one(), || {
                format!(
                    "{label}: packing constraint of {} is {} > 1",
                    g.name(e),
                    rational::format(&load)
                )
            });
        }
    }
}

fn dual_feasible(g: &Naive, y: &EdgeWeights, label: &str, out: &mut Findings) {
    if let Some(y) = weights(g, y, label, out) {
        for e in 0..g.edges.len() {
            let load = g.load(y, e);
            out.require(load >= rational::one(), || {
                format!(
                    "{label}: covering constraint of {} is {} < 1",
                    g.name(e),
                    rational::format(&load)
                )
            });
        }
    }
}

fn induced(g: &Naive, matching: &[EdgeId], out: &mut Findings) {
    for (i, &e) in matching.iter().enumerate() {
        if e >= g.edges.len() {
            out.0
                .push(format!("matching names edge {e}, graph has {}", g.edges.len()));
            return;
        }
        for &f in &matching[..i] {
            out.require(e != f && !g.conflicts(e, f), || {
                format!("matching is not induced: {} conflicts with {}", g.name(e), g.name(f))
            });
        }
    }
}

fn claimed(label: &str, value: &Option<String>, actual: &Rational, out: &mut Findings) {
    match value.as_deref().map(rational::parse) {
        None => {}
        Some(None) => out.0.push(format!("{label} is not a rational")),
        Some(Some(v)) => out.require(v == *actual, || {
            format!(
                "{label} claims {} but the certificate gives {}",
                rational::format(&v),
                rational::format(actual)
            )
        }),
    }
}

fn size_claim(report: &RunReport, actual: usize, out: &mut Findings) {
    if let Some(size) = report.matching_size {
        out.require(size == actual, || {
            format!("matching_size claims {size}, certificate has {actual}")
        });
    }
}

/// All violated checks, in a fixed order; empty means the report verifies.
pub fn check_report(report: &RunReport) -> Result<Vec<String>, CliError> {
    let graph = Graph::parse(&report.graph)?;
    let g = Naive::new(&graph);
    let mut out = Findings(Vec::new());
    out.require(report.n == g.n && report.m == g.edges.len(), || {
        "n or m disagrees with the embedded graph".into()
    });

    match &report.certificate {
        Certificate::Lp { primal, dual } => {
            primal_feasible(&g, primal, "primal", &mut out);
            dual_feasible(&g, dual, "dual", &mut out);
            let (p, d) = (primal.total(), dual.total());
            out.require(p == d, || {
                format!(
                    "primal value {} differs from dual value {}",
                    rational::format(&p),
                    rational::format(&d)
                )
            });
            claimed("nu_s_star", &report.nu_s_star, &p, &mut out);
            claimed("dual_total", &report.dual_total, &d, &mut out);
        }
        Certificate::Exact { matching } => {
            induced(&g, matching, &mut out);
            if let Some(nu_s) = report.nu_s {
                out.require(nu_s == matching.len(), || {
                    format!("nu_s claims {nu_s}, witness has {}", matching.len())
                });
            }
            size_claim(report, matching.len(), &mut out);
        }
        Certificate::GoodDual { delta, y, .. } => {
            dual_feasible(&g, y, "y", &mut out);
            let max_degree = (0..g.n).map(|u| g.degree(u)).max().unwrap_or(0);
            out.require(max_degree <= *delta, || {
                format!("maximum degree {max_degree} exceeds delta = {delta}")
            });
            if y.len() == g.edges.len() {
                for u in (0..g.n).filter(|&u| g.degree(u) < *delta) {
                    let at = g.at_vertex(y.values(), u);
                    out.require(at >= ratio(1, 2), || {
                        format!(
                            "vertex {u} of degree below delta carries {} < 1/2",
                            rational::format(&at)
                        )
                    });
                }
            }
            let total = y.total();
            let bound = int(*delta as i64) * int(g.n as i64) / int(2 * *delta as i64 + 1);
            out.require(total <= bound, || {
                format!(
                    "y(E) = {} exceeds {}",
                    rational::format(&total),
                    rational::format(&bound)
                )
            });
            claimed("dual_total", &report.dual_total, &total, &mut out);
        }
        Certificate::Subcubic(cert) => {
            let m = cert.matching.edges();
            induced(&g, m, &mut out);
            dual_feasible(&g, &cert.y, "y", &mut out);
            if cert.y.len() == g.edges.len() {
                for u in (0..g.n).filter(|&u| (1..=2).contains(&g.degree(u))) {
                    let at = g.at_vertex(cert.y.values(), u);
                    out.require(at >= ratio(1, 3), || {
                        format!("vertex {u} of degree at most 2 carries {} < 1/3", rational::format(&at))
                    });
                }
            }
            let total = cert.y.total();
            let holds = total <= ratio(7, 3) * int(m.len() as i64);
            out.require(holds, || {
                format!("y(E) = {} exceeds 7/3 per matched edge", rational::format(&total))
            });
            out.require(cert.ratio_ok == holds, || {
                "ratio_ok disagrees with the certificate".into()
            });
            claimed("dual_total", &report.dual_total, &total, &mut out);
            size_claim(report, m.len(), &mut out);
        }
        Certificate::LocalRatio {
            delta,
            certificate,
            dual,
        } => {
            let m = certificate.matching.edges();
            induced(&g, m, &mut out);
            primal_feasible(&g, &certificate.x, "x", &mut out);
            dual_feasible(&g, dual, "dual", &mut out);
            let (p, d) = (certificate.x.total(), dual.total());
            out.require(p == d, || {
                "x is not certified optimal: primal and dual values differ".into()
            });
            out.require(p == certificate.nu_s_star, || "nu_s_star differs from x(E)".into());
            let max_degree = (0..g.n).map(|u| g.degree(u)).max().unwrap_or(0);
            out.require(*delta >= 3 && max_degree <= *delta, || {
                format!("delta = {delta} is not a valid degree bound")
            });
            let f = (rational::one() - ratio(2005, 100000)) * int(*delta as i64) + ratio(1, 2);
            out.require(certificate.f == f, || format!("f should be {}", rational::format(&f)));
            let holds = &f * int(m.len() as i64) >= p;
            out.require(holds, || format!("f |M| < nu_s_star with |M| = {}", m.len()));
            out.require(certificate.ratio_ok == holds, || {
                "ratio_ok disagrees with the certificate".into()
            });
            for step in &certificate.preprocess_trace {
                out.require(step.charge <= f, || {
                    format!("preprocessing step at edge {} charges more than f", step.edge)
                });
                out.require(m.contains(&step.edge), || {
                    format!("preprocessing edge {} missing from the matching", step.edge)
                });
            }
            for e in &certificate.residual_matching {
                out.require(m.contains(e), || format!("residual edge {e} missing from the matching"));
            }
            claimed("nu_s_star", &report.nu_s_star, &p, &mut out);
            size_claim(report, m.len(), &mut out);
        }
    }
    let expected = match &report.certificate {
        Certificate::Lp { .. } => Algo::Lp,
        Certificate::Exact { .. } => Algo::Exact,
        Certificate::GoodDual { .. } => Algo::Dual,
        Certificate::Subcubic(_) => Algo::Subcubic,
        Certificate::LocalRatio { .. } => Algo::Localratio,
    };
    out.require(report.algorithm == expected, || {
        "algorithm tag does not match the certificate".into()
    });
    if let Some(guarantee) = &report.guarantee {
        out.require(guarantee.holds, || {
            format!("claimed guarantee does not hold: {}", guarantee.statement)
        });
    }
    Ok(out.0)
}

/// `Ok` iff every check passes.
pub fn verify(report: &RunReport) -> Result<(), CliError> {
    let problems = check_report(report)?;
    if problems.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(problems))
    }
}
