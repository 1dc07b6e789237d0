//! Command implementations. Each returns the text to print.

use std::fmt::{self, Write as _};

use fibertorsion::norm::{sfs_torsion, thurston_norm_sfs};
use fibertorsion::rational::{self, Rat};
use fibertorsion::{FiberHypothesis, Order, TorsionFunction};

use crate::error::{CliError, Result};
use crate::manifest::{check_grid, Manifest, Model, Resolved};

fn hypothesis(assert: bool) -> FiberHypothesis {
    if assert {
        FiberHypothesis::Assert
    } else {
        FiberHypothesis::Verify
    }
}

fn order_text(o: &Order) -> String {
    match o {
        Order::Infinite => "infinite".into(),
        Order::Finite(n) => n.to_string(),
    }
}

/// `x_M(φ)` for a Seifert or graph manifest.
pub fn norm_value(m: &Manifest, class: &str) -> Result<Rat> {
    let resolved = m.model.resolve()?;
    let phi = m.class(&resolved, class)?;
    match &resolved {
        Resolved::Seifert(s, _) => Ok(thurston_norm_sfs(s, &phi)?.norm),
        Resolved::Graph(a) => Ok(a.norm(&phi)?.total),
        Resolved::S1cw(_) => Err(CliError::Usage("norm needs a seifert or graph manifest".into())),
    }
}

pub fn norm(m: &Manifest, class: &str) -> Result<String> {
    let resolved = m.model.resolve()?;
    let mut out = String::new();
    match &resolved {
        Resolved::Seifert(s, _) => {
            let phi = m.class(&resolved, class)?;
            let r = thurston_norm_sfs(s, &phi)?;
            let _ = writeln!(out, "k_phi = {}", rational::format(&r.k_phi));
            let _ = writeln!(out, "chi_orb = {}", rational::format(&r.chi_orb));
            let _ = writeln!(out, "x = {}", rational::format(&r.norm));
            let status = if r.hypothesis_fiber_infinite_order {
                "holds (regular fiber has infinite order in H1)".to_string()
            } else {
                format!(
                    "not verified (regular fiber has order {} in H1)",
                    order_text(&s.fiber_order()?)
                )
            };
            let _ = writeln!(out, "hypothesis: {status}");
        }
        Resolved::Graph(a) => {
            let phi = m.class(&resolved, class)?;
            let n = a.norm(&phi)?;
            for w in a.warnings() {
                let _ = writeln!(out, "warning: {w}");
            }
            for (v, p) in n.pieces.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "piece {v}: k_phi = {}, chi_orb = {}, x = {}, fiber order = {}",
                    rational::format(&p.k_phi),
                    rational::format(&p.chi_orb),
                    rational::format(&p.norm),
                    order_text(&a.fiber_order(v)?)
                );
            }
            let _ = writeln!(out, "x = {}", rational::format(&n.total));
            let failing: Vec<usize> = (0..n.pieces.len())
                .filter(|&v| !n.pieces[v].hypothesis_fiber_infinite_order)
                .collect();
            if failing.is_empty() {
                let _ = writeln!(out, "hypothesis: holds (every regular fiber has infinite order in H1)");
            } else {
                let _ = writeln!(out, "hypothesis: not verified for pieces {failing:?}");
            }
        }
        Resolved::S1cw(_) => return Err(CliError::Usage("norm needs a seifert or graph manifest".into())),
    }
    Ok(out)
}

/// The torsion class; `assert` overrides the infinite-order check.
pub fn torsion_class(m: &Manifest, class: &str, assert: bool) -> Result<TorsionFunction> {
    let resolved = m.model.resolve()?;
    let hyp = hypothesis(assert || m.options.assert_hypothesis);
    Ok(match &resolved {
        Resolved::Seifert(s, _) => sfs_torsion(s, &m.class(&resolved, class)?, hyp)?,
        Resolved::Graph(a) => a.torsion(&m.class(&resolved, class)?, hyp)?,
        Resolved::S1cw(x) => {
            let k = &m.class_values(&resolved, class)?[0];
            x.torsion(k)
        }
    })
}

pub fn torsion(m: &Manifest, class: &str, assert: bool) -> Result<String> {
    let tau = torsion_class(m, class, assert)?;
    let mut out = format!("tau = {tau}\ndegree = {}\n", rational::format(tau.degree()));
    if assert || m.options.assert_hypothesis {
        out.push_str("hypothesis: asserted\n");
    }
    Ok(out)
}

/// Log-spaced grid from `t_min` to `t_max`; the endpoints are exact.
pub fn grid(t_min: &Rat, t_max: &Rat, steps: usize) -> Result<Vec<(f64, Option<Rat>)>> {
    check_grid(t_min, t_max, steps)?;
    let (a, b) = (rational::to_f64(t_min).ln(), rational::to_f64(t_max).ln());
    Ok((0..steps)
        .map(|i| {
            if i == 0 {
                (rational::to_f64(t_min), Some(t_min.clone()))
            } else if i == steps - 1 {
                (rational::to_f64(t_max), Some(t_max.clone()))
            } else {
                ((a + (b - a) * i as f64 / (steps - 1) as f64).exp(), None)
            }
        })
        .collect())
}

/// Decimal with 15 significant digits, trailing zeros dropped; scientific
/// outside `1e-5..1e15`.
pub fn format_15(x: f64) -> String {
    fn trim(s: &str) -> &str {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.')
        } else {
            s
        }
    }
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..15).contains(&e) {
        let s = format!("{:.*}", (14 - e) as usize, x);
        trim(&s).to_string()
    } else {
        let s = format!("{x:.14e}");
        let (mantissa, exp) = s.split_once('e').expect("scientific format");
        format!("{}e{exp}", trim(mantissa))
    }
}

/// CSV of the canonical representative (the class is only defined up to a
/// factor `t^r`; these values are for `r = 0`).
pub fn sample(
    m: &Manifest,
    class: &str,
    t_min: Option<Rat>,
    t_max: Option<Rat>,
    steps: Option<usize>,
    assert: bool,
) -> Result<String> {
    let defaults = m.options.sampling.as_ref();
    let missing = |what: &str| CliError::Usage(format!("no {what} given and the manifest has no sampling options"));
    let t_min = t_min
        .or_else(|| defaults.map(|s| s.t_min.0.clone()))
        .ok_or_else(|| missing("--t-min"))?;
    let t_max = t_max
        .or_else(|| defaults.map(|s| s.t_max.0.clone()))
        .ok_or_else(|| missing("--t-max"))?;
    let steps = steps
        .or_else(|| defaults.map(|s| s.steps))
        .ok_or_else(|| missing("--steps"))?;
    let points = grid(&t_min, &t_max, steps)?;
    let tau = torsion_class(m, class, assert)?;

    let mut out = String::from("t,value\n");
    for (t, exact) in points {
        let value = match exact {
            Some(r) => tau.evaluate_representative(&r)?.to_f64(),
            None => tau.evaluate_f64(t),
        };
        let _ = writeln!(out, "{},{}", format_15(t), format_15(value));
    }
    Ok(out)
}

pub fn homology(m: &Manifest) -> Result<String> {
    let resolved = m.model.resolve()?;
    let p = resolved
        .presentation()
        .ok_or_else(|| CliError::Usage("homology needs a seifert or graph manifest".into()))?;
    let c = p.cokernel();
    let torsion: Vec<String> = c.torsion.iter().map(ToString::to_string).collect();
    Ok(format!(
        "H1 = {c}\nrank = {}\ntorsion = [{}]\ngenerators = {}\n",
        c.free_rank,
        torsion.join(", "),
        p.generators().join(", ")
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Warn,
    Fail,
}

#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub items: Vec<(Status, String)>,
}

impl CheckReport {
    fn push(&mut self, status: Status, msg: impl Into<String>) {
        self.items.push((status, msg.into()));
    }

    pub fn passes(&self) -> bool {
        self.items.iter().all(|(s, _)| *s != Status::Fail)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, msg) in &self.items {
            let tag = match s {
                Status::Pass => "PASS",
                Status::Warn => "WARN",
                Status::Fail => "FAIL",
            };
            writeln!(f, "{tag} {msg}")?;
        }
        Ok(())
    }
}

fn fiber_status(report: &mut CheckReport, label: &str, order: &Order, asserted: bool) {
    match order {
        Order::Infinite => report.push(Status::Pass, format!("{label}regular fiber has infinite order in H1")),
        Order::Finite(n) if asserted => report.push(
            Status::Warn,
            format!("{label}regular fiber has order {n} in H1; the manifest asserts the hypothesis"),
        ),
        Order::Finite(n) => report.push(
            Status::Warn,
            format!("{label}regular fiber has order {n} in H1; torsion needs --assert-hypothesis"),
        ),
    }
}

pub fn check(m: &Manifest) -> CheckReport {
    let mut report = CheckReport::default();
    let asserted = m.options.assert_hypothesis;
    match &m.model {
        Model::Seifert(s) => {
            report.push(Status::Pass, "Seifert invariants are valid");
            let chi = rational::format(&s.chi_orb());
            match s.exclusion() {
                Some(ex) => report.push(Status::Fail, format!("excluded manifold: {ex}")),
                None => report.push(Status::Pass, "not S1xS2, S1xD2 or a projective-plane base"),
            }
            if s.has_infinite_fundamental_group() {
                report.push(Status::Pass, format!("infinite fundamental group (chi_orb = {chi})"));
            } else {
                report.push(
                    Status::Fail,
                    format!("finite fundamental group (closed, chi_orb = {chi} > 0)"),
                );
            }
            if s.exclusion().is_none() {
                match s.fiber_order() {
                    Ok(o) => fiber_status(&mut report, "", &o, asserted),
                    Err(e) => report.push(Status::Fail, e.to_string()),
                }
            }
        }
        Model::Graph(g) => {
            report.push(
                Status::Pass,
                format!(
                    "plumbing graph is valid ({} nodes, {} edges)",
                    g.nodes.len(),
                    g.edges.len()
                ),
            );
            match g.assemble() {
                Err(e) => report.push(Status::Fail, e.to_string()),
                Ok(a) => {
                    report.push(Status::Pass, "no excluded pieces");
                    for w in a.warnings() {
                        report.push(Status::Warn, w.clone());
                    }
                    for (v, node) in g.nodes.iter().enumerate() {
                        let label = format!("node {v}: ");
                        report.push(
                            Status::Pass,
                            format!("{label}chi_orb = {}", rational::format(&node.chi_orb())),
                        );
                        match a.fiber_order(v) {
                            Ok(o) => fiber_status(&mut report, &label, &o, asserted),
                            Err(e) => report.push(Status::Fail, format!("{label}{e}")),
                        }
                    }
                }
            }
        }
        Model::S1cw(x) => {
            report.push(
                Status::Pass,
                format!("{} orbit cells with finite isotropy", x.cells().len()),
            );
            report.push(Status::Pass, format!("chi_orb = {}", rational::format(&x.chi_orb())));
        }
    }
    if let Ok(resolved) = m.model.resolve() {
        for name in m.classes.keys() {
            match m.class_values(&resolved, name) {
                Ok(_) => report.push(Status::Pass, format!("class {name:?} is valid")),
                Err(e) => report.push(Status::Fail, e.to_string()),
            }
        }
    }
    report
}
