use anyhow::{bail, Result};
use padic_brownian::laws::{
    alpha, conditional_ball_prob, gamma_factor, radial_law, radial_mass, survival_maxnorm,
    survival_product, ProcessParams, RadialLaw, SeriesTolerance,
};
use padic_brownian::padic::{Norm, PadicVector, DEFAULT_WIDTH};
use padic_brownian::sim::{
    estimate_conditional, estimate_exit_survival, marginal_radial_histogram, ExitMethod, McConfig, ProcessKind,
};
use padic_brownian::stats::{chi_square_gof, compare_estimates, compare_proportion, LevelHistogram, TestVerdict, DEFAULT_Z};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Common, ConditionalArgs, DensityArgs, ExitArgs, KindArg, LimitArgs, MarginalArgs, MethodArg};
use crate::output::{Cell, Report};

fn params(c: &Common) -> Result<ProcessParams> {
    Ok(ProcessParams::new(c.p, c.d, c.b, c.sigma)?)
}

fn tolerance(c: &Common) -> Result<SeriesTolerance> {
    Ok(SeriesTolerance::new(c.eps, SeriesTolerance::default().max_terms)?)
}

fn mc(c: &Common, seed: u64) -> Result<McConfig> {
    Ok(McConfig {
        seed,
        workers: c.workers,
        width: DEFAULT_WIDTH,
        tol: tolerance(c)?,
    })
}

/// `{"command": name, ...common flags, ...subcommand flags}`.
fn config<A: Serialize>(name: &str, c: &Common, args: &A) -> Result<Value> {
    let mut obj = serde_json::Map::new();
    obj.insert("command".into(), json!(name));
    for part in [serde_json::to_value(c)?, serde_json::to_value(args)?] {
        if let Value::Object(m) = part {
            obj.extend(m);
        }
    }
    Ok(Value::Object(obj))
}

fn tail_rows(report: &mut Report, law: &RadialLaw, scale: f64, observed: Option<&LevelHistogram>) {
    let mut rows = Vec::new();
    let mut cum = law.lower_tail();
    let mut push = |label: Cell, mass: f64, obs: Option<u64>, cum: f64| {
        let mut row = vec![label];
        row.extend(obs.map(Cell::from));
        row.push((mass * scale).into());
        if observed.is_none() {
            row.push(cum.into());
        }
        rows.push(row);
    };
    push("below".into(), law.lower_tail(), observed.map(|h| h.below(law.k_min())), cum);
    for (k, m) in law.levels() {
        cum += m;
        push(k.into(), m, observed.map(|h| h.count(k)), cum);
    }
    cum += law.upper_tail();
    push("above".into(), law.upper_tail(), observed.map(|h| h.above(law.k_max())), cum);
    for row in rows {
        report.push(row);
    }
}

pub fn density(c: &Common, a: &DensityArgs) -> Result<Report> {
    let pr = params(c)?;
    let tol = tolerance(c)?;
    let cfg = config("density", c, a)?;
    if let Some(text) = &a.x {
        let x = PadicVector::parse_compact(text, c.p, DEFAULT_WIDTH)?;
        let value = padic_brownian::laws::density(&pr, a.t, &x, &tol)?;
        let level = match x.max_norm() {
            Norm::Zero => "zero".to_string(),
            Norm::Level(k) => k.to_string(),
        };
        let mut report = Report::new(cfg, vec!["point", "level", "density"]);
        report.push(vec![x.to_string().into(), level.into(), value.into()]);
        return Ok(report);
    }
    let law = radial_law(&pr, a.t, a.kmin, a.kmax, &tol)?;
    let mut report = Report::new(cfg, vec!["level", "mass", "cumulative"]);
    tail_rows(&mut report, &law, 1.0, None);
    report.verdicts.push(TestVerdict {
        name: "normalization".into(),
        statistic: (law.total() - 1.0).abs(),
        threshold: 1e-10,
        pass: (law.total() - 1.0).abs() <= 1e-10,
        details: format!("total mass {:.17}", law.total()),
    });
    Ok(report)
}

pub fn exit(c: &Common, a: &ExitArgs) -> Result<Report> {
    let pr = params(c)?;
    let method = match a.method {
        MethodArg::IncrementMax => ExitMethod::IncrementMax,
        MethodArg::FullPath => ExitMethod::FullPath,
    };
    let kinds: &[(ProcessKind, &str)] = match a.kind {
        KindArg::Maxnorm => &[(ProcessKind::MaxNorm, "maxnorm")],
        KindArg::Product => &[(ProcessKind::Product, "product")],
        KindArg::Both => &[(ProcessKind::MaxNorm, "maxnorm"), (ProcessKind::Product, "product")],
    };
    let mut report = Report::new(
        config("exit", c, a)?,
        vec![
            "kind",
            "estimate",
            "standard_error",
            "closed_form",
            "grid_closed_form",
            "n_samples",
            "n_grid",
            "pass",
        ],
    );
    let mut estimates = Vec::new();
    for &(kind, name) in kinds {
        // the product process runs on its own seed so `both` compares independent samples
        let seed = if kind == ProcessKind::Product { c.seed.wrapping_add(1) } else { c.seed };
        let e = estimate_exit_survival(kind, method, &pr, a.horizon, a.r_level, a.n_grid, a.n_samples, &mc(c, seed)?)?;
        let v = compare_proportion(
            &format!("{name} survival"),
            e.survival_estimate,
            e.n_samples,
            e.closed_form,
            DEFAULT_Z,
        );
        report.push(vec![
            name.into(),
            e.survival_estimate.into(),
            e.standard_error.into(),
            e.closed_form.into(),
            e.grid_closed_form.into(),
            e.n_samples.into(),
            e.grid_size.into(),
            v.pass.into(),
        ]);
        report.verdicts.push(v);
        estimates.push((e.survival_estimate, e.standard_error));
    }
    if estimates.len() == 2 && c.d == 1 {
        report
            .verdicts
            .push(compare_estimates("maxnorm vs product", estimates[0], estimates[1], DEFAULT_Z));
    }
    Ok(report)
}

pub fn conditional(c: &Common, a: &ConditionalArgs) -> Result<Report> {
    let pr = params(c)?;
    let tol = tolerance(c)?;
    let mut report = Report::new(
        config("conditional", c, a)?,
        vec![
            "t",
            "r",
            "R",
            "estimate",
            "standard_error",
            "n_conditioned",
            "closed_form",
            "ratio",
            "small_time_ratio",
            "gamma",
            "low_statistics",
        ],
    );
    let p_r = (c.p as f64).powi(a.r);
    for (i, &t) in a.t.iter().enumerate() {
        conditional_ball_prob(&pr, t, a.r, a.r_level, &tol)?;
        let acceptance = radial_mass(&pr.with_dim(c.d - 1)?, t, a.r_level, &tol)?;
        if acceptance * (a.n_samples as f64) < 100.0 {
            report.warnings.push(format!(
                "t={t}: acceptance rate {acceptance:.3e} leaves about {:.0} of {} samples",
                acceptance * a.n_samples as f64,
                a.n_samples
            ));
        }
        let e = estimate_conditional(&pr, t, a.r, a.r_level, a.n_samples, &mc(c, c.seed.wrapping_add(i as u64))?)?;
        if e.low_statistics {
            report
                .warnings
                .push(format!("t={t}: only {} accepted samples, standard error unreliable", e.n_conditioned));
        }
        report.push(vec![
            t.into(),
            a.r.into(),
            a.r_level.into(),
            e.estimate.into(),
            e.standard_error.into(),
            e.n_conditioned.into(),
            e.closed_form.into(),
            (e.estimate / p_r).into(),
            (e.small_time_limit / p_r).into(),
            gamma_factor(&pr).into(),
            e.low_statistics.into(),
        ]);
        report.verdicts.push(compare_proportion(
            &format!("conditional t={t}"),
            e.estimate,
            e.n_conditioned,
            e.closed_form,
            DEFAULT_Z,
        ));
    }
    Ok(report)
}

pub fn marginals(c: &Common, a: &MarginalArgs) -> Result<Report> {
    let pr = params(c)?;
    if a.component == 0 || a.component > c.d as usize {
        bail!("component must be in 1..={}, got {}", c.d, a.component);
    }
    let h = marginal_radial_histogram(&pr, a.t, a.component - 1, a.n_samples, &mc(c, c.seed)?)?;
    let (Some((&lo, _)), Some((&hi, _))) = (h.counts.first_key_value(), h.counts.last_key_value()) else {
        bail!("every sampled coordinate was zero");
    };
    let law = radial_law(&pr.with_dim(1)?, a.t, lo, hi, &tolerance(c)?)?;
    let mut report = Report::new(config("marginals", c, a)?, vec!["level", "observed", "expected"]);
    tail_rows(&mut report, &law, a.n_samples as f64, Some(&h));
    report
        .verdicts
        .push(chi_square_gof(&h, &law, a.pooling_min)?);
    Ok(report)
}

pub fn limits(c: &Common, a: &LimitArgs) -> Result<Report> {
    if a.dmin == 0 || a.dmin > a.dmax {
        bail!("need 1 <= dmin <= dmax, got {}..={}", a.dmin, a.dmax);
    }
    let mut report = Report::new(
        config("limits", c, a)?,
        vec!["d", "alpha", "gamma", "survival_maxnorm", "survival_product"],
    );
    for d in a.dmin..=a.dmax {
        let pr = ProcessParams::new(c.p, d, c.b, c.sigma)?;
        report.push(vec![
            d.into(),
            alpha(&pr, d)?.into(),
            gamma_factor(&pr).into(),
            survival_maxnorm(&pr, a.horizon, a.r_level)?.into(),
            survival_product(&pr, a.horizon, a.r_level)?.into(),
        ]);
    }
    Ok(report)
}
