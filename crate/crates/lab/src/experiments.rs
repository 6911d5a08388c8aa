//! Experiment drivers. Each returns sorted records, optional charts and a
//! JSON summary; nothing here touches the filesystem.

use std::time::Instant;

use entrotter_core::bounds::{
    commutator_entropy_raw, effective_entanglement, ent_bound_first, ent_bound_p, resource_rows,
    separation_ratio, standard_bound, BoundConstants, BoundParams, BoundReport,
};
use entrotter_core::dense::{exact_evolve, max_entropy, state_distance, DenseState, DENSE_LIMIT};
use entrotter_core::hamiltonian::{Geometry, HamiltonianModel};
use entrotter_core::mps::MpsState;
use entrotter_core::stats::log_log_fit;
use entrotter_core::trotter::{build_plan, execute, order_scaling_fit, Ordering};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::config::{ExperimentConfig, ExperimentKind, ModelFamily, ModelSpec};
use crate::error::{LabError, LabResult};
use crate::plot::{Chart, Scale, Series};
use crate::record::{sort_records, Record};
use crate::states::{controlled_entropy_state, mps_distance, quench_dense, quench_mps, scan_commutators};

pub const MEASURED: &str = "measured";
pub const MEASURED_MPS_REFERENCE: &str = "measured-mps-reference";
pub const BOUND: &str = "bound";
pub const RATIO: &str = "bound/measured";
pub const ANALYTIC: &str = "analytic";

/// One CSV file and its chart.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    /// File stem, e.g. `panel_a`.
    pub name: String,
    pub records: Vec<Record>,
    pub chart: Option<Chart>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub kind: ExperimentKind,
    pub outputs: Vec<Output>,
    pub summary: serde_json::Value,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Fill `runtime_ms`. Wall-clock times make the CSV differ between runs.
    pub timings: bool,
}

pub fn run(cfg: &ExperimentConfig, opts: RunOptions) -> LabResult<ExperimentResult> {
    cfg.validate()?;
    match cfg.experiment {
        ExperimentKind::Validate => run_validation(cfg, opts),
        ExperimentKind::Separation => run_separation(cfg, opts),
        ExperimentKind::Orders => run_order_sweep(cfg, opts),
        ExperimentKind::Resources => run_resource_table(cfg),
        ExperimentKind::Sweep => run_sweep(cfg, opts),
    }
}

struct Timer(Option<Instant>);

impl Timer {
    fn start(opts: RunOptions) -> Self {
        Timer(opts.timings.then(Instant::now))
    }

    fn ms(&self) -> Option<f64> {
        self.0.map(|s| s.elapsed().as_secs_f64() * 1e3)
    }
}

fn field_of(spec: &ModelSpec) -> Option<f64> {
    matches!(spec.family, ModelFamily::Tfim | ModelFamily::AllToAll).then_some(spec.field)
}

fn base_record(cfg: &ExperimentConfig, experiment: &str, spec: &ModelSpec, model: &HamiltonianModel) -> Record {
    let meta = model.metadata();
    Record {
        experiment: experiment.into(),
        model: spec.name().into(),
        geometry: model.geometry().name().into(),
        n: model.n(),
        l: Some(meta.term_count),
        j: Some(meta.max_norm),
        h: field_of(spec),
        d: Some(meta.max_degree),
        seed: Some(cfg.seed),
        ..Record::default()
    }
}

/// Fills `S_star` and the three bounds from the row's `(n, L, J, d)`.
fn fill_bounds(rec: &mut Record, consts: &BoundConstants, s_max: f64, t: f64, r: u64, p: u32) {
    let (l, j, d) = (rec.l.unwrap_or(0), rec.j.unwrap_or(0.0), rec.d.unwrap_or(0));
    let s_star = effective_entanglement(s_max, d, j, t, consts.c_growth);
    rec.s_star = Some(s_star);
    rec.bound_standard = standard_bound(l, j, t, r, p, consts).ok();
    rec.bound_ent_first = ent_bound_first(t, j, d, s_star, rec.n, r, consts.c1).ok();
    rec.bound_ent_p = if p >= 2 {
        ent_bound_p(t, j, d, s_star, rec.n, r, p, consts.cp_for(p)).ok()
    } else {
        None
    };
}

fn grid(cfg: &ExperimentConfig) -> Vec<(u32, u64)> {
    cfg.p.iter().flat_map(|&p| cfg.r.iter().map(move |&r| (p, r))).collect()
}

fn finish(name: &str, mut records: Vec<Record>, chart: Option<Chart>) -> Output {
    sort_records(&mut records);
    Output {
        name: name.into(),
        records,
        chart,
    }
}

// ---------------------------------------------------------------- validation

/// Measured error of every `(p, r)` at one `n`, from the area-law state.
#[derive(Debug, Clone)]
struct AreaLawRun {
    n: usize,
    s_max_initial: f64,
    dense: bool,
    rows: Vec<Record>,
}

fn area_law_run(cfg: &ExperimentConfig, n: usize, measure: bool, opts: RunOptions) -> LabResult<AreaLawRun> {
    let consts = cfg.bound_constants();
    let model = cfg.model.build(n, cfg.seed)?;
    let pattern = cfg.pattern(n)?;
    let ordering: Ordering = cfg.ordering.into();
    let base = base_record(cfg, "validate", &cfg.model, &model);
    let mut rows = Vec::new();
    if n <= DENSE_LIMIT {
        let psi0 = quench_dense(&model, &pattern, cfg.prep_time)?;
        let s0 = max_entropy(&psi0, cfg.cut_mode.into())?;
        if measure {
            let exact = exact_evolve(&psi0, &model, cfg.t)?;
            for (p, r) in grid(cfg) {
                let timer = Timer::start(opts);
                let plan = build_plan(&model, p, cfg.t, r, ordering)?;
                let approx = execute(&plan, &model, &psi0)?;
                let mut rec = Record {
                    t: Some(cfg.t),
                    p: Some(p),
                    r: Some(r),
                    backend: "dense".into(),
                    curve_provenance: MEASURED.into(),
                    s_max_initial: Some(s0),
                    error: Some(state_distance(&approx, &exact)?),
                    ..base.clone()
                };
                fill_bounds(&mut rec, &consts, s0, cfg.t, r, p);
                rec.runtime_ms = timer.ms();
                rows.push(rec);
            }
        }
        return Ok(AreaLawRun {
            n,
            s_max_initial: s0,
            dense: true,
            rows,
        });
    }
    let psi0 = quench_mps(&model, &pattern, cfg.prep_time, cfg.reference, cfg.chi_max, cfg.cutoff)?;
    let s0 = psi0.max_bond_entropy();
    if measure {
        let ref_plan = build_plan(&model, cfg.reference.p, cfg.t, cfg.reference.r, ordering)?;
        let reference: MpsState = execute(&ref_plan, &model, &psi0)?;
        for (p, r) in grid(cfg) {
            let timer = Timer::start(opts);
            let plan = build_plan(&model, p, cfg.t, r, ordering)?;
            let approx = execute(&plan, &model, &psi0)?;
            let mut rec = Record {
                t: Some(cfg.t),
                p: Some(p),
                r: Some(r),
                chi_max: Some(cfg.chi_max),
                cutoff: Some(cfg.cutoff),
                backend: "mps".into(),
                curve_provenance: MEASURED_MPS_REFERENCE.into(),
                s_max_initial: Some(s0),
                error: Some(mps_distance(&approx, &reference)?),
                discarded_weight: Some(approx.cum_discarded() + reference.cum_discarded() - psi0.cum_discarded()),
                ..base.clone()
            };
            fill_bounds(&mut rec, &consts, s0, cfg.t, r, p);
            rec.runtime_ms = timer.ms();
            rows.push(rec);
        }
    }
    Ok(AreaLawRun {
        n,
        s_max_initial: s0,
        dense: false,
        rows,
    })
}

fn volume_law_row(cfg: &ExperimentConfig, n: usize, p: u32, r: u64) -> LabResult<Record> {
    let model = cfg.model.build(n, cfg.seed)?;
    let s_vol = n as f64 / 2.0;
    let mut rec = Record {
        t: Some(cfg.t),
        p: Some(p),
        r: Some(r),
        backend: ANALYTIC.into(),
        curve_provenance: BOUND.into(),
        s_max_initial: Some(s_vol),
        ..base_record(cfg, "validate", &cfg.model, &model)
    };
    fill_bounds(&mut rec, &cfg.bound_constants(), s_vol, cfg.t, r, p);
    Ok(rec)
}

fn points<'a>(rows: impl Iterator<Item = &'a Record>, y: impl Fn(&Record) -> Option<f64>) -> Vec<(f64, f64)> {
    rows.filter_map(|r| y(r).map(|v| (r.n as f64, v))).collect()
}

/// Panels `a`–`d` of the validation study.
///
/// * `a`: `S_max` of the area-law initial state against `n`, with `n/2`.
/// * `b`: `max |⟨[a, b]⟩|` (in `error`) against the cut entropy
///   (`S_max_initial`) for controlled-entropy states, with `2·2^S` in
///   `bound_ent_first`.
/// * `c`: measured Trotter error against `n` with the worst-case bound and
///   the entanglement bound at the measured and the volume-law entropy.
/// * `d`: volume-law entanglement bound over measured error (`improvement`).
pub fn run_validation(cfg: &ExperimentConfig, opts: RunOptions) -> LabResult<ExperimentResult> {
    let want = |p: &str| cfg.panels.iter().any(|x| x == p);
    if cfg.panels.is_empty() {
        return Err(LabError::Empty("no validation panels requested".into()));
    }
    let measure = want("c") || want("d");
    let runs: Vec<AreaLawRun> = if want("a") || measure {
        cfg.n
            .par_iter()
            .map(|&n| area_law_run(cfg, n, measure, opts))
            .collect::<LabResult<_>>()?
    } else {
        Vec::new()
    };
    let mut outputs = Vec::new();
    let mut summary = serde_json::Map::new();

    if want("a") {
        let mut rows = Vec::new();
        for run in &runs {
            let model = cfg.model.build(run.n, cfg.seed)?;
            let base = Record {
                t: Some(cfg.prep_time),
                ..base_record(cfg, "validate", &cfg.model, &model)
            };
            let (backend, chi) = if run.dense { ("dense", None) } else { ("mps", Some(cfg.chi_max)) };
            rows.push(Record {
                backend: backend.into(),
                curve_provenance: MEASURED.into(),
                chi_max: chi,
                cutoff: chi.map(|_| cfg.cutoff),
                s_max_initial: Some(run.s_max_initial),
                ..base.clone()
            });
            rows.push(Record {
                backend: ANALYTIC.into(),
                curve_provenance: BOUND.into(),
                s_max_initial: Some(run.n as f64 / 2.0),
                ..base
            });
        }
        let measured = |r: &&Record| r.curve_provenance == MEASURED;
        let chart = Chart {
            title: "Maximal bipartite entropy".into(),
            x_label: "n".into(),
            y_label: "S_max (bits)".into(),
            x_scale: Scale::Log10,
            y_scale: Scale::Log10,
            series: vec![
                Series::line("area-law state", points(rows.iter().filter(measured), |r| r.s_max_initial)),
                Series::line("volume law n/2", points(rows.iter().filter(|r| r.curve_provenance == BOUND), |r| r.s_max_initial)),
            ],
        };
        summary.insert(
            "panel_a_s_max".into(),
            json!(runs.iter().map(|r| (r.n, r.s_max_initial)).collect::<Vec<_>>()),
        );
        outputs.push(finish("panel_a", rows, Some(chart)));
    }

    if want("b") {
        let n = cfg.controlled_n;
        let cut = n / 2;
        let rows: Vec<Record> = (0..cfg.controlled_states)
            .into_par_iter()
            .map(|k| -> LabResult<Record> {
                let timer = Timer::start(opts);
                let seed = cfg.seed.wrapping_mul(1_000_003).wrapping_add(k as u64);
                let psi = controlled_entropy_state(n, cut, k % (cut + 1), seed)?;
                let scan = scan_commutators(&psi, cut)?;
                Ok(Record {
                    experiment: "validate".into(),
                    model: "controlled_entropy".into(),
                    geometry: Geometry::Chain { len: n }.name().into(),
                    n,
                    seed: Some(seed),
                    backend: "dense".into(),
                    curve_provenance: MEASURED.into(),
                    s_max_initial: Some(scan.entropy),
                    error: Some(scan.max_commutator),
                    bound_ent_first: Some(commutator_entropy_raw(scan.entropy, 1.0, 1.0, None)),
                    runtime_ms: timer.ms(),
                    ..Record::default()
                })
            })
            .collect::<LabResult<_>>()?;
        let violations = rows
            .iter()
            .filter(|r| r.error.unwrap_or(0.0) > r.bound_ent_first.unwrap_or(f64::INFINITY))
            .count();
        summary.insert("panel_b_states".into(), json!(rows.len()));
        summary.insert("panel_b_violations".into(), json!(violations));
        let mut scatter: Vec<(f64, f64)> = rows.iter().map(|r| (r.s_max_initial.unwrap_or(0.0), r.error.unwrap_or(0.0))).collect();
        scatter.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let curve: Vec<(f64, f64)> = (0..=4 * cut)
            .map(|k| {
                let s = k as f64 / 4.0;
                (s, commutator_entropy_raw(s, 1.0, 1.0, None))
            })
            .collect();
        let chart = Chart {
            title: format!("Commutators across the middle cut, n = {n}"),
            x_label: "S (bits)".into(),
            y_label: "max |<[a,b]>|".into(),
            x_scale: Scale::Linear,
            y_scale: Scale::Linear,
            series: vec![Series::scatter("measured", scatter), Series::line("2*2^S", curve)],
        };
        outputs.push(finish("panel_b", rows, Some(chart)));
    }

    if measure {
        let measured: Vec<Record> = runs.iter().flat_map(|r| r.rows.iter().cloned()).collect();
        let mut volume = Vec::new();
        for &n in &cfg.n {
            for (p, r) in grid(cfg) {
                volume.push(volume_law_row(cfg, n, p, r)?);
            }
        }
        let unsound = measured
            .iter()
            .filter(|r| matches!((r.error, r.bound_ent_first), (Some(e), Some(b)) if e > b))
            .count();
        summary.insert("panel_c_measured".into(), json!(measured.len()));
        summary.insert("panel_c_ent_bound_violations".into(), json!(unsound));

        if want("c") {
            let (p0, r0) = grid(cfg)[0];
            let sel = |r: &&Record| r.p == Some(p0) && r.r == Some(r0);
            let chart = Chart {
                title: format!("Trotter error, p = {p0}, r = {r0}"),
                x_label: "n".into(),
                y_label: "error".into(),
                x_scale: Scale::Log10,
                y_scale: Scale::Log10,
                series: vec![
                    Series::line("measured (area law)", points(measured.iter().filter(sel), |r| r.error)),
                    Series::line("worst-case bound", points(volume.iter().filter(sel), |r| r.bound_standard)),
                    Series::line("entanglement bound, area law", points(measured.iter().filter(sel), |r| r.bound_ent_first)),
                    Series::line("entanglement bound, volume law", points(volume.iter().filter(sel), |r| r.bound_ent_first)),
                ],
            };
            let mut rows = measured.clone();
            rows.extend(volume.iter().cloned());
            outputs.push(finish("panel_c", rows, Some(chart)));
        }

        if want("d") {
            let rows: Vec<Record> = measured
                .iter()
                .filter_map(|m| {
                    let v = volume.iter().find(|v| v.n == m.n && v.p == m.p && v.r == m.r)?;
                    let ratio = v.bound_ent_first? / m.error?;
                    Some(Record {
                        curve_provenance: RATIO.into(),
                        s_star: v.s_star,
                        bound_ent_first: v.bound_ent_first,
                        improvement: Some(ratio),
                        runtime_ms: None,
                        ..m.clone()
                    })
                })
                .collect();
            let (p0, r0) = grid(cfg)[0];
            let chart = Chart {
                title: format!("Volume-law bound over measured error, p = {p0}, r = {r0}"),
                x_label: "n".into(),
                y_label: "ratio".into(),
                x_scale: Scale::Log10,
                y_scale: Scale::Log10,
                series: vec![Series::line(
                    "ratio",
                    points(rows.iter().filter(|r| r.p == Some(p0) && r.r == Some(r0)), |r| r.improvement),
                )],
            };
            outputs.push(finish("panel_d", rows, Some(chart)));
        }
    }
    Ok(ExperimentResult {
        kind: ExperimentKind::Validate,
        outputs,
        summary: serde_json::Value::Object(summary),
    })
}

// ---------------------------------------------------------------- separation

fn measure_dense(
    cfg: &ExperimentConfig,
    experiment: &str,
    spec: &ModelSpec,
    model: &HamiltonianModel,
    psi0: &DenseState,
    opts: RunOptions,
) -> LabResult<Vec<Record>> {
    let consts = cfg.bound_constants();
    let ordering: Ordering = cfg.ordering.into();
    let exact = exact_evolve(psi0, model, cfg.t)?;
    let s0 = max_entropy(psi0, cfg.cut_mode.into())?;
    let base = base_record(cfg, experiment, spec, model);
    grid(cfg)
        .into_iter()
        .map(|(p, r)| {
            let timer = Timer::start(opts);
            let plan = build_plan(model, p, cfg.t, r, ordering)?;
            let approx = execute(&plan, model, psi0)?;
            let mut rec = Record {
                t: Some(cfg.t),
                p: Some(p),
                r: Some(r),
                backend: "dense".into(),
                curve_provenance: MEASURED.into(),
                s_max_initial: Some(s0),
                error: Some(state_distance(&approx, &exact)?),
                ..base.clone()
            };
            fill_bounds(&mut rec, &consts, s0, cfg.t, r, p);
            rec.runtime_ms = timer.ms();
            Ok(rec)
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
struct FitSummary {
    model: String,
    p: u32,
    r: u64,
    slope: f64,
    slope_stderr: f64,
    interval_95: (f64, f64),
}

/// Area-law model against the contrast model on the same `n` grid.
///
/// The contrast slope is the log-log slope of error against `n`; the
/// area-law slope is taken after dividing the error by `log₂²n`.
/// `separation_ratio` rows carry `n/(J² log₂² n)` in `improvement`.
pub fn run_separation(cfg: &ExperimentConfig, opts: RunOptions) -> LabResult<ExperimentResult> {
    let sides = [(&cfg.model, false), (&cfg.contrast_model, true)];
    let jobs: Vec<(usize, usize)> = (0..2).flat_map(|s| cfg.n.iter().map(move |&n| (s, n))).collect();
    let batches: Vec<Vec<Record>> = jobs
        .par_iter()
        .map(|&(side, n)| {
            let (spec, contrast) = sides[side];
            let model = spec.build(n, cfg.seed)?;
            let pattern = if contrast { cfg.contrast_pattern(n)? } else { cfg.pattern(n)? };
            let psi0 = DenseState::from_product(n, &pattern)?;
            measure_dense(cfg, "separation", spec, &model, &psi0, opts)
        })
        .collect::<LabResult<_>>()?;
    let mut rows: Vec<Record> = batches.into_iter().flatten().collect();

    let mut fits = Vec::new();
    for (spec, contrast) in sides {
        for (p, r) in grid(cfg) {
            let pts: Vec<(f64, f64)> = rows
                .iter()
                .filter(|x| x.model == spec.name() && x.p == Some(p) && x.r == Some(r))
                .map(|x| {
                    let l = (x.n as f64).log2();
                    let e = x.error.unwrap_or(0.0);
                    (x.n as f64, if contrast { e } else { e / (l * l) })
                })
                .collect();
            if pts.len() < 2 {
                continue;
            }
            let (xs, ys): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
            let fit = log_log_fit(&xs, &ys)?;
            fits.push(FitSummary {
                model: if contrast { spec.name().to_string() } else { format!("{}/log2^2(n)", spec.name()) },
                p,
                r,
                slope: fit.slope,
                slope_stderr: fit.slope_stderr,
                interval_95: fit.interval(1.96),
            });
        }
    }

    let j = cfg.model.coupling;
    let mut ns: Vec<usize> = cfg.n.clone();
    ns.extend([100, 1000]);
    ns.sort_unstable();
    ns.dedup();
    for n in ns {
        rows.push(Record {
            experiment: "separation".into(),
            model: "ratio".into(),
            geometry: Geometry::Chain { len: n }.name().into(),
            n,
            j: Some(j),
            backend: ANALYTIC.into(),
            curve_provenance: BOUND.into(),
            improvement: Some(separation_ratio(n, j)),
            ..Record::default()
        });
    }

    let (p0, r0) = grid(cfg)[0];
    let series = [cfg.model.name(), cfg.contrast_model.name()]
        .into_iter()
        .map(|m| {
            Series::line(
                m,
                points(
                    rows.iter().filter(|x| x.model == m && x.p == Some(p0) && x.r == Some(r0)),
                    |x| x.error,
                ),
            )
        })
        .collect();
    let chart = Chart {
        title: format!("Error against n, p = {p0}, r = {r0}"),
        x_label: "n".into(),
        y_label: "error".into(),
        x_scale: Scale::Log10,
        y_scale: Scale::Log10,
        series,
    };
    Ok(ExperimentResult {
        kind: ExperimentKind::Separation,
        outputs: vec![finish("separation", rows, Some(chart))],
        summary: json!({ "fits": fits }),
    })
}

// ---------------------------------------------------------------- orders

/// Single-step error against `τ` for every `(n, p)`; slopes in the summary.
pub fn run_order_sweep(cfg: &ExperimentConfig, opts: RunOptions) -> LabResult<ExperimentResult> {
    let jobs: Vec<(usize, u32)> = cfg.n.iter().flat_map(|&n| cfg.p.iter().map(move |&p| (n, p))).collect();
    let results: Vec<(Vec<Record>, serde_json::Value)> = jobs
        .par_iter()
        .map(|&(n, p)| -> LabResult<_> {
            let timer = Timer::start(opts);
            let model = cfg.model.build(n, cfg.seed)?;
            let psi0 = DenseState::from_product(n, &cfg.pattern(n)?)?;
            let fit = order_scaling_fit(&model, &psi0, p, &cfg.taus, cfg.ordering.into())?;
            let base = base_record(cfg, "orders", &cfg.model, &model);
            let ms = timer.ms();
            let rows = fit
                .taus
                .iter()
                .zip(&fit.errors)
                .map(|(&tau, &e)| Record {
                    t: Some(tau),
                    p: Some(p),
                    r: Some(1),
                    backend: "dense".into(),
                    curve_provenance: MEASURED.into(),
                    s_max_initial: Some(0.0),
                    error: Some(e),
                    runtime_ms: ms,
                    ..base.clone()
                })
                .collect();
            let summary = json!({
                "n": n,
                "p": p,
                "expected_slope": p + 1,
                "degenerate": fit.degenerate(),
                "slope": fit.fit.map(|f| f.slope),
                "slope_stderr": fit.fit.map(|f| f.slope_stderr),
                "interval_95": fit.fit.map(|f| f.interval(1.96)),
                "points_used": fit.fit.map(|f| f.samples),
            });
            Ok((rows, summary))
        })
        .collect::<LabResult<_>>()?;
    let mut rows = Vec::new();
    let mut fits = Vec::new();
    for (r, s) in results {
        rows.extend(r);
        fits.push(s);
    }
    let n0 = cfg.n[0];
    let chart = Chart {
        title: format!("Single-step error, n = {n0}"),
        x_label: "tau".into(),
        y_label: "error".into(),
        x_scale: Scale::Log10,
        y_scale: Scale::Log10,
        series: cfg
            .p
            .iter()
            .map(|&p| {
                Series::line(
                    format!("p = {p}"),
                    rows.iter()
                        .filter(|x| x.n == n0 && x.p == Some(p))
                        .filter_map(|x| Some((x.t?, x.error?)))
                        .collect(),
                )
            })
            .collect(),
    };
    Ok(ExperimentResult {
        kind: ExperimentKind::Orders,
        outputs: vec![finish("orders", rows, Some(chart))],
        summary: json!({ "fits": fits }),
    })
}

// ---------------------------------------------------------------- resources

/// Step-count comparison per geometry in units of `t²J²/ε`: `bound_standard`
/// holds `n²`, `bound_ent_first` holds `S_geom·log₂²n`.
pub fn run_resource_table(cfg: &ExperimentConfig) -> LabResult<ExperimentResult> {
    let table = resource_rows(cfg.constants.geometry_c);
    let rows: Vec<Record> = table
        .iter()
        .map(|row| Record {
            experiment: "resources".into(),
            geometry: row.geometry.name().into(),
            n: row.n,
            backend: ANALYTIC.into(),
            curve_provenance: BOUND.into(),
            bound_standard: Some(row.worst_case),
            bound_ent_first: Some(row.entanglement),
            improvement: Some(row.improvement),
            ..Record::default()
        })
        .collect();
    let summary: Vec<_> = table
        .iter()
        .map(|row| {
            json!({
                "geometry": row.geometry.name(),
                "n": row.n,
                "worst_case": row.worst_case,
                "entanglement": row.entanglement,
                "improvement": row.improvement,
                "published": row.published,
                "within_factor_2": row.improvement / row.published <= 2.0 && row.published / row.improvement <= 2.0,
            })
        })
        .collect();
    let chart = Chart {
        title: "Improvement factor".into(),
        x_label: "n".into(),
        y_label: "n^2 / (S log2^2 n)".into(),
        x_scale: Scale::Log10,
        y_scale: Scale::Log10,
        series: vec![
            Series::scatter("computed", table.iter().map(|r| (r.n as f64, r.improvement)).collect()),
            Series::scatter("published", table.iter().map(|r| (r.n as f64, r.published)).collect()),
        ],
    };
    Ok(ExperimentResult {
        kind: ExperimentKind::Resources,
        outputs: vec![finish("resources", rows, Some(chart))],
        summary: json!({ "rows": summary }),
    })
}

// ---------------------------------------------------------------- sweep

fn sweep_point(cfg: &ExperimentConfig, n: usize, opts: RunOptions) -> LabResult<Vec<Record>> {
    let model = cfg.model.build(n, cfg.seed)?;
    let pattern = cfg.pattern(n)?;
    let ordering: Ordering = cfg.ordering.into();
    let meta = model.metadata();
    let report = |s0: f64, p: u32, r: u64| -> LabResult<BoundReport> {
        let mut params = BoundParams::new(n, meta.term_count, meta.max_norm, meta.max_degree, model.geometry());
        params.h = field_of(&cfg.model).unwrap_or(meta.max_norm);
        params.t = cfg.t;
        params.r = r;
        params.p = p;
        params.s_max = s0.min(n as f64 / 2.0);
        params.epsilon = cfg.epsilon;
        params.constants = cfg.bound_constants();
        Ok(BoundReport::evaluate(&params)?)
    };
    let mut rows = if n <= DENSE_LIMIT {
        let psi0 = DenseState::from_product(n, &pattern)?;
        measure_dense(cfg, "sweep", &cfg.model, &model, &psi0, opts)?
    } else {
        let psi0 = MpsState::from_product(n, &pattern, cfg.chi_max)?.with_cutoff(cfg.cutoff);
        let ref_plan = build_plan(&model, cfg.reference.p, cfg.t, cfg.reference.r, ordering)?;
        let reference = execute(&ref_plan, &model, &psi0)?;
        let base = base_record(cfg, "sweep", &cfg.model, &model);
        grid(cfg)
            .into_iter()
            .map(|(p, r)| -> LabResult<Record> {
                let timer = Timer::start(opts);
                let plan = build_plan(&model, p, cfg.t, r, ordering)?;
                let approx = execute(&plan, &model, &psi0)?;
                Ok(Record {
                    t: Some(cfg.t),
                    p: Some(p),
                    r: Some(r),
                    chi_max: Some(cfg.chi_max),
                    cutoff: Some(cfg.cutoff),
                    backend: "mps".into(),
                    curve_provenance: MEASURED_MPS_REFERENCE.into(),
                    s_max_initial: Some(psi0.max_bond_entropy()),
                    error: Some(mps_distance(&approx, &reference)?),
                    discarded_weight: Some(approx.cum_discarded() + reference.cum_discarded()),
                    runtime_ms: timer.ms(),
                    ..base.clone()
                })
            })
            .collect::<LabResult<_>>()?
    };
    for rec in &mut rows {
        let rep = report(rec.s_max_initial.unwrap_or(0.0), rec.p.unwrap_or(1), rec.r.unwrap_or(1))?;
        rec.s_star = Some(rep.s_star);
        rec.bound_standard = rep.standard_bound;
        rec.bound_ent_first = Some(rep.ent_bound_first);
        rec.bound_ent_p = rep.ent_bound_p;
        rec.improvement = rep.improvement_factor;
    }
    Ok(rows)
}

/// Measured error and every bound over the `n × p × r` grid.
pub fn run_sweep(cfg: &ExperimentConfig, opts: RunOptions) -> LabResult<ExperimentResult> {
    let batches: Vec<Vec<Record>> = cfg
        .n
        .par_iter()
        .map(|&n| sweep_point(cfg, n, opts))
        .collect::<LabResult<_>>()?;
    let rows: Vec<Record> = batches.into_iter().flatten().collect();
    let mut series = Vec::new();
    for &n in &cfg.n {
        for &p in &cfg.p {
            let pts: Vec<(f64, f64)> = rows
                .iter()
                .filter(|x| x.n == n && x.p == Some(p))
                .filter_map(|x| Some((x.r? as f64, x.error?)))
                .collect();
            series.push(Series::line(format!("n = {n}, p = {p}"), pts));
        }
    }
    let chart = Chart {
        title: format!("{} error against steps", cfg.model.name()),
        x_label: "r".into(),
        y_label: "error".into(),
        x_scale: Scale::Log10,
        y_scale: Scale::Log10,
        series,
    };
    Ok(ExperimentResult {
        kind: ExperimentKind::Sweep,
        outputs: vec![finish("sweep", rows, Some(chart))],
        summary: json!({}),
    })
}
