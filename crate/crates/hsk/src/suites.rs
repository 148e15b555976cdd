//! Seeded verification batteries behind the CLI subcommands.
//!
//! Every case draws from its own ChaCha stream `(seed, case)`, so results
//! do not depend on the order in which rayon finishes them.

use std::f64::consts::PI;

use hsk_core::balance::{verify_pvp, BalanceReport, EdgeTerm, FieldTriple};
use hsk_core::fields::MAX_DEGREE;
use hsk_core::invariance::{
    find_symmetry_witness, power_invariance_residual, skew_norm, traction_indifference_check, ObserverChange,
};
use hsk_core::sample;
use hsk_core::special::{
    classify_spherical, edge_scan, edge_scan_direct, maps_of, nsalpha_decompose, nsalpha_power_check, probe_edges,
    prove_spherical_from_zero_edges,
};
use hsk_core::traction::{
    edge_force, reconstruct_hyperstress, reconstruct_reduced_stress, reconstruct_stress, surface_traction,
};
use hsk_core::{OrthonormalBasis, Poly, Tensor2, Tensor3Sym, Tolerances, Vector3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::formats::{random_triple, NamedPart};

/// Size of the deliberate defect injected by `--inject-defect`.
pub const DEFECT: f64 = 1e-3;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
    pub degree: usize,
    pub tol: f64,
    pub inject_defect: bool,
    pub zero: bool,
}

impl SuiteConfig {
    pub fn tolerances(&self) -> Tolerances {
        Tolerances { pvp: self.tol, spherical: self.tol, edge_probe: self.tol, ..Tolerances::DEFAULT }
    }

    fn rng(&self, case: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(case as u64);
        rng
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Bound {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

/// One pass/fail line: the worst `value` over `cases` against `threshold`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub value: f64,
    pub bound: Bound,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    /// `max(values) ≤ threshold`; a NaN anywhere fails.
    pub fn at_most(name: &str, values: impl IntoIterator<Item = f64>, threshold: f64) -> Check {
        let (cases, worst) = fold(values, 0.0, f64::max);
        Check { name: name.into(), cases, value: worst, bound: Bound::AtMost, threshold, passed: worst <= threshold }
    }

    /// `min(values) ≥ threshold`.
    pub fn at_least(name: &str, values: impl IntoIterator<Item = f64>, threshold: f64) -> Check {
        let (cases, worst) = fold(values, f64::INFINITY, f64::min);
        let worst = if cases == 0 { threshold } else { worst };
        Check { name: name.into(), cases, value: worst, bound: Bound::AtLeast, threshold, passed: worst >= threshold }
    }
}

fn fold(values: impl IntoIterator<Item = f64>, init: f64, pick: fn(f64, f64) -> f64) -> (usize, f64) {
    let mut n = 0;
    let mut acc = init;
    let mut nan = false;
    for v in values {
        n += 1;
        nan |= v.is_nan();
        acc = pick(acc, v);
    }
    (n, if nan { f64::NAN } else { acc })
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    fn of_checks(checks: &[Check]) -> Table {
        let mut t = Table::new(&["check", "cases", "value", "bound", "threshold", "passed"]);
        for c in checks {
            let bound = match c.bound {
                Bound::AtMost => "<=",
                Bound::AtLeast => ">=",
            };
            t.rows.push(vec![
                c.name.clone(),
                c.cases.to_string(),
                c.value.to_string(),
                bound.into(),
                c.threshold.to_string(),
                c.passed.to_string(),
            ]);
        }
        t
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub details: serde_json::Value,
    #[serde(skip)]
    pub table: Table,
}

impl Outcome {
    fn summary(checks: Vec<Check>, details: impl Serialize) -> Self {
        let table = Table::of_checks(&checks);
        Outcome { checks, details: serde_json::to_value(details).expect("report data serializes"), table }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PvpCase {
    pub sample: usize,
    pub report: BalanceReport,
}

/// Virtual-power identity over every part and field sample.
///
/// With explicit `fields` a single sample is run. `--inject-defect` flips
/// the sign of every edge integral.
pub fn pvp(cfg: &SuiteConfig, parts: &[NamedPart], fields: Option<&FieldTriple>) -> Outcome {
    let tol = cfg.tolerances();
    let samples = if fields.is_some() || cfg.zero { 1 } else { cfg.samples };
    let triples: Vec<FieldTriple> = (0..samples)
        .map(|s| match fields {
            Some(f) => f.clone(),
            None if cfg.zero => FieldTriple::default(),
            None => random_triple(sample_seed(cfg.seed, s), cfg.degree),
        })
        .collect();
    let edge_term = if cfg.inject_defect { EdgeTerm::Negate } else { EdgeTerm::Include };
    let tasks: Vec<(usize, usize)> = (0..parts.len()).flat_map(|p| (0..samples).map(move |s| (p, s))).collect();
    let cases: Vec<PvpCase> = tasks
        .par_iter()
        .map(|&(p, s)| {
            let report = verify_pvp(&triples[s], &parts[p].part, &parts[p].name, edge_term, &tol)
                .expect("degrees are validated and part normals are unit");
            PvpCase { sample: s, report }
        })
        .collect();

    let checks = vec![Check::at_most("pvp_residual", cases.iter().map(|c| c.report.pvp_residual), cfg.tol)];
    let mut table = Table::new(&[
        "part",
        "sample",
        "internal_power",
        "external_power",
        "bulk_term",
        "pvp_residual",
        "bulk_residual_max",
        "global_force_residual",
        "passed",
    ]);
    for c in &cases {
        let r = &c.report;
        table.rows.push(vec![
            r.part.clone(),
            c.sample.to_string(),
            r.internal_power.to_string(),
            r.external_power.to_string(),
            r.bulk_term.to_string(),
            r.pvp_residual.to_string(),
            r.bulk_residual_max.to_string(),
            r.global_force_residual.norm().to_string(),
            r.passed.to_string(),
        ]);
    }
    let mut out = Outcome::summary(checks, &cases);
    out.table = table;
    out
}

/// Seed of the `s`-th random field triple.
pub fn sample_seed(seed: u64, s: usize) -> u64 {
    seed.wrapping_add(s as u64)
}

#[derive(Debug, Clone, Serialize)]
struct ReconstructDetails {
    roundtrips: usize,
    bases: usize,
    stress_points: usize,
    max_roundtrip_error: f64,
    max_cross_basis_error: f64,
    max_stress_error: f64,
}

/// Hyperstress and stress recovered from their own contact actions.
///
/// `--inject-defect` perturbs the edge-force map so that it depends on the
/// order of the frame's two pairs.
pub fn reconstruct(cfg: &SuiteConfig) -> Outcome {
    let tol = cfg.tolerances();
    let defect = if cfg.inject_defect { DEFECT } else { 0.0 };
    let rebuild = |h: &Tensor3Sym, basis: &OrthonormalBasis| {
        reconstruct_hyperstress(
            |n| h.contract_dyad(n, n),
            |e| edge_force(h, e, &tol).expect("coordinate frames are valid") + e.n_prime * defect,
            basis,
        )
    };
    let draw_h = |rng: &mut ChaCha8Rng| if cfg.zero { Tensor3Sym::ZERO } else { sample::tensor3sym(rng) };

    let roundtrip: Vec<f64> = (0..cfg.samples * 50)
        .into_par_iter()
        .map(|i| {
            let h = draw_h(&mut cfg.rng(i));
            (rebuild(&h, &OrthonormalBasis::STANDARD) - h).max_abs()
        })
        .collect();

    let h = draw_h(&mut cfg.rng(usize::MAX));
    let reference = rebuild(&h, &OrthonormalBasis::STANDARD);
    let cross: Vec<f64> = (0..cfg.samples * 5)
        .into_par_iter()
        .map(|i| {
            let basis = sample::basis(&mut cfg.rng(1_000_000 + i));
            (rebuild(&h, &basis) - reference).max_abs()
        })
        .collect();

    let stress: Vec<f64> = (0..cfg.samples)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut rng = cfg.rng(2_000_000 + i);
            let (t, hf) = if cfg.zero {
                (Poly::zero(), Poly::zero())
            } else {
                (sample::symmetric_stress_field(&mut rng, cfg.degree), sample::hyperstress_field(&mut rng, cfg.degree))
            };
            let basis = sample::basis(&mut rng);
            let points: Vec<Vector3> = (0..10).map(|_| sample::vector(&mut rng)).collect();
            points
                .into_iter()
                .map(|x| {
                    let reduced = reconstruct_reduced_stress(
                        |y, n| surface_traction(&t, &hf, y, n, &tol).expect("basis vectors are unit"),
                        &hf,
                        &x,
                        &basis,
                        &tol,
                    )
                    .expect("basis vectors are unit");
                    (reconstruct_stress(&reduced, &hf, &x) - t.eval(&x)).max_abs()
                })
                .collect::<Vec<_>>()
        })
        .collect();

    let checks = vec![
        Check::at_most("hyperstress_roundtrip", roundtrip.iter().copied(), cfg.tol),
        Check::at_most("cross_basis_agreement", cross.iter().copied(), cfg.tol),
        Check::at_most("stress_roundtrip", stress.iter().copied(), cfg.tol),
    ];
    let details = ReconstructDetails {
        roundtrips: roundtrip.len(),
        bases: cross.len(),
        stress_points: stress.len(),
        max_roundtrip_error: checks[0].value,
        max_cross_basis_error: checks[1].value,
        max_stress_error: checks[2].value,
    };
    Outcome::summary(checks, details)
}

#[derive(Debug, Clone, Serialize)]
struct ClassifyCase {
    spherical_input: bool,
    accepted: bool,
    residual: f64,
    rotated_probe: f64,
    deviation: f64,
}

/// Largest edge force over the two turned probe edges.
pub fn rotated_probe_magnitude(h: &Tensor3Sym) -> f64 {
    let (_, f_map) = maps_of(h);
    probe_edges(f_map).iter().filter(|p| p.rotated).map(|p| p.force.norm()).fold(0.0, f64::max)
}

/// `‖H − (H[I]/3) ⊗ I‖`, Frobenius over expanded components.
pub fn deviation_from_spherical(h: &Tensor3Sym) -> f64 {
    let fit = h.contract2(&Tensor2::IDENTITY) * (1.0 / 3.0);
    let d = *h - Tensor3Sym::spherical(&fit);
    d.inner(&d).sqrt()
}

/// Spherical hyperstresses pass the edge probes and the classification;
/// generic ones are caught by the turned probes.
///
/// `--inject-defect` adds a small non-spherical part to the spherical set.
pub fn classify(cfg: &SuiteConfig) -> Outcome {
    let tol = cfg.tolerances();
    let n = cfg.samples;
    let spherical: Vec<ClassifyCase> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = cfg.rng(i);
            let h = if cfg.zero { Vector3::ZERO } else { sample::vector(&mut rng) };
            let mut hs = Tensor3Sym::spherical(&h);
            if cfg.inject_defect {
                hs += Tensor3Sym::sym_dyad(&Vector3::unit(0), &Vector3::unit(1), &Vector3::unit(2)) * DEFECT;
            }
            let (hm, fm) = maps_of(&hs);
            let proof = prove_spherical_from_zero_edges(hm, fm, &tol);
            let c = classify_spherical(&hs, cfg.tol);
            let residual = match proof {
                Ok(found) => c.residual.max((found - h).max_abs()),
                Err(_) => f64::INFINITY,
            };
            ClassifyCase {
                spherical_input: true,
                accepted: c.spherical && residual <= cfg.tol,
                residual,
                rotated_probe: rotated_probe_magnitude(&hs),
                deviation: deviation_from_spherical(&hs),
            }
        })
        .collect();
    let generic: Vec<ClassifyCase> = if cfg.zero {
        Vec::new()
    } else {
        (0..n)
            .into_par_iter()
            .map(|i| {
                let h = sample::tensor3sym(&mut cfg.rng(1_000_000 + i));
                let (hm, fm) = maps_of(&h);
                let rejected = prove_spherical_from_zero_edges(hm, fm, &tol).is_err();
                let c = classify_spherical(&h, cfg.tol);
                ClassifyCase {
                    spherical_input: false,
                    accepted: !rejected || c.spherical,
                    residual: c.residual,
                    rotated_probe: rotated_probe_magnitude(&h),
                    deviation: deviation_from_spherical(&h),
                }
            })
            .collect()
    };
    let checks = vec![
        Check::at_most("spherical_accepted", spherical.iter().map(|c| c.residual), cfg.tol),
        Check::at_least(
            "generic_rejected_by_turned_probe",
            generic.iter().map(|c| if c.accepted { 0.0 } else { c.rotated_probe / (0.1 * c.deviation) }),
            1.0,
        ),
    ];
    let cases: Vec<ClassifyCase> = spherical.into_iter().chain(generic).collect();
    Outcome::summary(checks, cases)
}

/// Power invariance, the symmetry witness and indifference of contact
/// actions on random instances.
///
/// `--inject-defect` adds a skew part to the stresses that should be
/// symmetric.
pub fn invariance(cfg: &SuiteConfig) -> Outcome {
    let tol = cfg.tolerances();
    struct Case {
        symmetric: f64,
        pairing: f64,
        witness: f64,
        indifference: f64,
    }
    let cases: Vec<Case> = (0..cfg.samples * 25)
        .into_par_iter()
        .map(|i| {
            let mut rng = cfg.rng(i);
            let draw2 = |rng: &mut ChaCha8Rng| if cfg.zero { Tensor2::ZERO } else { sample::tensor2(rng) };
            let draw3 = |rng: &mut ChaCha8Rng| if cfg.zero { Tensor3Sym::ZERO } else { sample::tensor3sym(rng) };
            let t = draw2(&mut rng);
            let h = draw3(&mut rng);
            let g = draw2(&mut rng);
            let g2 = draw3(&mut rng);
            let q = sample::rotation(&mut rng);
            let w = sample::skew_tensor2(&mut rng);
            let obs = ObserverChange::new(sample::vector(&mut rng), q, w, tol.skew).expect("sampled spin is skew");

            let mut sym = t.sym();
            if cfg.inject_defect {
                sym += sample::skew_tensor2(&mut rng) * DEFECT;
            }
            let symmetric = power_invariance_residual(&sym, &h, &g, &g2, &obs);
            let expected = q.rotate2(&t).skew().dot(&w).abs();
            let pairing = (power_invariance_residual(&t, &h, &g, &g2, &obs) - expected).abs();
            let witness = match find_symmetry_witness(&t, &tol) {
                Some(w) => {
                    let still = ObserverChange::new(Vector3::ZERO, hsk_core::Rotation::IDENTITY, w, tol.skew)
                        .expect("witness is skew");
                    let r = power_invariance_residual(&t, &Tensor3Sym::ZERO, &Tensor2::ZERO, &Tensor3Sym::ZERO, &still);
                    (r - skew_norm(&t)).abs()
                }
                None if skew_norm(&t) >= 1e-6 => f64::INFINITY,
                None => 0.0,
            };
            let n = sample::unit_vector(&mut rng);
            let frame = sample::edge_frame(&mut rng);
            let indifference =
                traction_indifference_check(&t, &h, &n, &frame, &q, &tol).expect("sampled frames are valid").max();
            Case { symmetric, pairing, witness, indifference }
        })
        .collect();
    let checks = vec![
        Check::at_most("symmetric_stress_power_invariance", cases.iter().map(|c| c.symmetric), cfg.tol),
        Check::at_most("residual_equals_spin_pairing", cases.iter().map(|c| c.pairing), cfg.tol),
        Check::at_most("witness_exposes_skew_part", cases.iter().map(|c| c.witness), cfg.tol),
        Check::at_most("contact_action_indifference", cases.iter().map(|c| c.indifference), cfg.tol),
    ];
    Outcome::summary(checks, serde_json::json!({ "instances": cases.len() }))
}

/// Navier–Stokes-α identities.
///
/// `--inject-defect` evaluates the power side with a perturbed `g`.
pub fn nsalpha(cfg: &SuiteConfig) -> Outcome {
    let tol = cfg.tolerances();
    struct Case {
        full: f64,
        divergence_free: f64,
        active_spherical: f64,
        active_edge_force: f64,
    }
    let cases: Vec<Case> = (0..cfg.samples * 5)
        .into_par_iter()
        .map(|i| {
            let mut rng = cfg.rng(i);
            let degree = (i % 5).min(MAX_DEGREE);
            let (g, v, w) = if cfg.zero {
                (Vector3::ZERO, Poly::zero(), Poly::zero())
            } else {
                (
                    sample::vector(&mut rng),
                    sample::velocity_field(&mut rng, degree),
                    sample::divergence_free_velocity(&mut rng, degree),
                )
            };
            let x = sample::vector(&mut rng);
            let power_g = if cfg.inject_defect { g + Vector3::unit(0) * DEFECT } else { g };
            let hyper = nsalpha_decompose(&g).total();
            let curl_curl = v.curl().curl().eval(&x);
            let full = (hyper.inner(&v.grad2().eval(&x)) - power_g.dot(&curl_curl)).abs();
            let divergence_free = nsalpha_power_check(&g, &w, &x, &tol).divergence_free.unwrap_or(f64::INFINITY);
            let d = nsalpha_decompose(&g);
            let c = classify_spherical(&d.active, cfg.tol);
            let active_spherical = c.residual.max((c.h + g).max_abs());
            let frame = sample::edge_frame(&mut rng);
            let active_edge_force = edge_force(&d.active, &frame, &tol).expect("sampled frames are valid").norm();
            Case { full, divergence_free, active_spherical, active_edge_force }
        })
        .collect();
    let checks = vec![
        Check::at_most("power_equals_g_dot_curl_curl", cases.iter().map(|c| c.full), cfg.tol),
        Check::at_most("divergence_free_laplacian_form", cases.iter().map(|c| c.divergence_free), cfg.tol),
        Check::at_most("active_part_is_spherical", cases.iter().map(|c| c.active_spherical), cfg.tol),
        Check::at_most("active_part_has_no_edge_force", cases.iter().map(|c| c.active_edge_force), cfg.tol),
    ];
    Outcome::summary(checks, serde_json::json!({ "instances": cases.len() }))
}

#[derive(Debug, Clone, Serialize)]
struct ScanRow {
    theta: f64,
    force: Vector3,
    direct: Vector3,
}

/// Edge force on the `(i, j)` coordinate edge as the basis turns about
/// `e_axis`, sampled on `points` angles in `[0, π)`, against the direct
/// rotate-and-contract value.
///
/// `--inject-defect` shifts the closed form by a constant.
pub fn scan(cfg: &SuiteConfig, axis: usize, points: usize) -> Result<Outcome, String> {
    let mut rng = cfg.rng(0);
    let h = if cfg.zero { Tensor3Sym::ZERO } else { sample::tensor3sym(&mut rng) };
    let thetas: Vec<f64> = (0..points).map(|i| i as f64 * PI / points as f64).collect();
    let mut closed = edge_scan(&h, axis, &thetas).map_err(|e| e.to_string())?;
    if cfg.inject_defect {
        for c in &mut closed {
            c.force[0] += DEFECT;
        }
    }
    let direct = edge_scan_direct(&h, axis, &thetas).map_err(|e| e.to_string())?;
    let rows: Vec<ScanRow> =
        closed.iter().zip(&direct).map(|(c, d)| ScanRow { theta: c.theta, force: c.force, direct: d.force }).collect();
    let checks = vec![Check::at_most(
        "closed_form_matches_rotation",
        rows.iter().map(|r| (r.force - r.direct).max_abs()),
        cfg.tol,
    )];
    let mut table = Table::new(&["theta", "f1", "f2", "f3", "direct_f1", "direct_f2", "direct_f3"]);
    for r in &rows {
        let mut row = vec![r.theta.to_string()];
        row.extend(r.force.0.iter().chain(&r.direct.0).map(f64::to_string));
        table.rows.push(row);
    }
    let mut out = Outcome::summary(checks, serde_json::json!({ "axis": axis + 1, "hyperstress": h, "samples": rows }));
    out.table = table;
    Ok(out)
}
