//! `harmvol verify`: the exact sweeps and numeric checks as report suites.

use std::time::Instant;

use harmvol_core::analytic::{i_q0_table, Curve, Engine, HarmonicForm, Loop};
use harmvol_core::combinat::{count_two_distinct, kappa, kappa_prime, relation_kill_holds, HalfInt};
use harmvol_core::exactfield::Rational;
use harmvol_core::homology::{linalg, to_f_basis, Gen, HTensor, KBasis};
use harmvol_core::quadrature::{circle_distance, FormSpec, Letter, PathWord, Quadrature};
use harmvol_core::sample::{random_k_tensor, random_word, seeded_rng};
use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::render::Grid;
use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub case: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Suite {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub max_error: f64,
    /// Only filled with `--timings`, so that reports stay reproducible.
    pub seconds: Option<f64>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            failures: Vec::new(),
            max_error: 0.0,
            seconds: None,
        }
    }

    fn fail(&mut self, case: impl Into<String>, detail: impl Into<String>) {
        self.failures.push(Failure {
            case: case.into(),
            detail: detail.into(),
        });
    }

    /// Records one measured error against its bound.
    fn measure(&mut self, case: impl FnOnce() -> String, err: f64, bound: f64) {
        self.cases += 1;
        if err.is_nan() || err > bound {
            self.fail(case(), format!("error {err:.3e} exceeds {bound:.1e}"));
        }
        if err.is_nan() {
            self.max_error = f64::NAN;
        } else if !self.max_error.is_nan() {
            self.max_error = self.max_error.max(err);
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report<'a> {
    pub version: u32,
    pub config: &'a RunConfig,
    pub suites: Vec<Suite>,
}

impl Report<'_> {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures.is_empty())
    }
}

fn timed(cfg: &RunConfig, f: impl FnOnce() -> Suite) -> Suite {
    let t = Instant::now();
    let mut s = f();
    if cfg.timings {
        s.seconds = Some(t.elapsed().as_secs_f64());
    }
    s
}

pub fn run(cfg: &RunConfig) -> Result<Vec<Suite>, CliError> {
    let g = cfg.g;
    let curve = Curve::new(g)?;
    let kb = KBasis::new(g)?;
    let samples = cfg.samples.unwrap_or(1000);
    let e = cfg.engines;
    let mut suites = Vec::new();
    if e.any_exact() {
        suites.push(timed(cfg, || exact_engines(cfg, &curve, &kb, samples)));
        suites.push(timed(cfg, || structure(&curve, &kb)));
    }
    if e.combinatorial {
        suites.push(timed(cfg, || kappa_prime_sweep(cfg, &kb, samples)));
        suites.push(timed(cfg, || relation_kill(cfg, &kb)));
    }
    if e.numeric {
        let t = Instant::now();
        match Quadrature::new(&curve, cfg.quad_config()) {
            Ok(q) => {
                let mut setup = Suite::new("numeric-setup");
                let (el, ei) = q.error_estimates();
                setup.measure(|| "line".into(), el, cfg.tol_line);
                setup.measure(|| "iterated".into(), ei, cfg.tol_iterated);
                if cfg.timings {
                    setup.seconds = Some(t.elapsed().as_secs_f64());
                }
                suites.push(setup);
                suites.push(timed(cfg, || numeric_periods(cfg, &curve, &q)));
                suites.push(timed(cfg, || numeric_lemma(cfg, &curve, &q)));
                suites.push(timed(cfg, || numeric_ell(cfg, &curve, &q)));
                suites.push(timed(cfg, || numeric_i_q0(cfg, &curve, &kb, &q)));
                suites.push(timed(cfg, || chen_laws(cfg, &q)));
            }
            Err(err) => {
                let mut setup = Suite::new("numeric-setup");
                setup.cases = 1;
                setup.max_error = match err {
                    harmvol_core::Error::Convergence { achieved, .. } => achieved,
                    _ => f64::NAN,
                };
                setup.fail(
                    format!("g={g}, precision={} bits", cfg.precision),
                    err.to_string(),
                );
                if cfg.timings {
                    setup.seconds = Some(t.elapsed().as_secs_f64());
                }
                suites.push(setup);
            }
        }
    }
    Ok(suites)
}

/// Composed and table engines against κ on the basis and random tensors.
/// Every value must also land in {0, 1/2}.
fn exact_engines(cfg: &RunConfig, curve: &Curve, kb: &KBasis, samples: usize) -> Suite {
    let g = cfg.g;
    let mut inputs: Vec<HTensor> = kb
        .elements()
        .iter()
        .flat_map(|e| Gen::all(g).map(move |z| e.tensor.tensor_gen(z)))
        .collect();
    let mut rng = seeded_rng(cfg.seed);
    inputs.extend((0..samples).map(|_| random_k_tensor(kb, &mut rng, 6)));
    let e = cfg.engines;
    let failures: Vec<Failure> = inputs
        .par_iter()
        .flat_map_iter(|a| {
            cfg.nu.iter().filter_map(move |&nu| {
                let mut got: Vec<(&str, HalfInt)> = Vec::new();
                let mut run = |name, r: harmvol_core::Result<HalfInt>| match r {
                    Ok(v) => {
                        got.push((name, v));
                        None
                    }
                    Err(err) => Some(format!("{name}: {err}")),
                };
                let mut errs = Vec::new();
                errs.extend(run("κ", kappa(a, nu)));
                if e.composed {
                    errs.extend(run("composed", curve.harmonic_volume(kb, a, nu, Engine::Composed)));
                }
                if e.table {
                    errs.extend(run("table", curve.harmonic_volume(kb, a, nu, Engine::Table)));
                }
                if errs.is_empty() && got.windows(2).all(|w| w[0].1 == w[1].1) {
                    return None;
                }
                let vals: Vec<String> = got.iter().map(|(n, v)| format!("{n}={v}")).collect();
                errs.extend((!vals.is_empty()).then(|| vals.join(", ")));
                Some(Failure {
                    case: format!("ν={nu} A={a}"),
                    detail: errs.join("; "),
                })
            })
        })
        .collect();
    let mut s = Suite::new("exact-engines");
    s.cases = inputs.len() * cfg.nu.len();
    s.failures = failures;
    s
}

/// Rank of the K basis and the t_u identities.
fn structure(curve: &Curve, kb: &KBasis) -> Suite {
    let g = curve.genus();
    let mut s = Suite::new("structure");
    let m: Vec<Vec<Rational>> = kb
        .coordinate_matrix()
        .into_iter()
        .map(|r| r.into_iter().map(|x| Rational::from_integer(x.into())).collect())
        .collect();
    let rank = linalg::rank_q(&m);
    s.cases += 1;
    if rank != 4 * g * g - 1 {
        s.fail("rank of K basis", format!("{rank} ≠ 4g²−1 = {}", 4 * g * g - 1));
    }
    let n = curve.order() as i64;
    for u in -3 * n..=3 * n {
        s.cases += 1;
        if curve.t(u) != curve.t_power_sum(u) {
            s.fail(format!("t_{u}"), "case table ≠ power sum");
        }
        if u % 2 != 0 {
            if curve.t(-u) != -curve.t(u) {
                s.fail(format!("t_{u}"), "t_{−u} ≠ −t_u");
            }
            if !curve.t(u).real_part().is_zero() {
                s.fail(format!("t_{u}"), "Re t_u ≠ 0");
            }
        }
    }
    s
}

fn kappa_prime_sweep(cfg: &RunConfig, kb: &KBasis, samples: usize) -> Suite {
    let mut rng = seeded_rng(cfg.seed ^ 0x6b70);
    let inputs: Vec<HTensor> = (0..samples).map(|_| random_k_tensor(kb, &mut rng, 6)).collect();
    let failures: Vec<Failure> = inputs
        .par_iter()
        .flat_map_iter(|a| {
            cfg.nu.iter().filter_map(move |&nu| {
                let (k, kp) = (kappa(a, nu), kappa_prime(a, nu));
                (k != kp).then(|| Failure {
                    case: format!("ν={nu} A={a}"),
                    detail: format!("κ={k:?}, κ′={kp:?}"),
                })
            })
        })
        .collect();
    let mut s = Suite::new("kappa-prime");
    s.cases = inputs.len() * cfg.nu.len();
    s.failures = failures;
    s
}

/// ψ_ν kills the relation Σ f_p = 0, and κ ignores relabelling of the f's.
fn relation_kill(cfg: &RunConfig, kb: &KBasis) -> Suite {
    let g = cfg.g;
    let mut s = Suite::new("relation-kill");
    for &nu in &cfg.nu {
        s.cases += 1;
        if !relation_kill_holds(g, nu) {
            s.fail(format!("ν={nu}"), "relation sum does not vanish");
        }
    }
    let mut rng = seeded_rng(cfg.seed ^ 0x7e1a);
    for trial in 0..200 {
        let a = random_k_tensor(kb, &mut rng, 6);
        let nu = cfg.nu[trial % cfg.nu.len()];
        let orig: Vec<usize> = (0..2 * g + 2).filter(|&i| i != nu).collect();
        let mut shuffled = orig.clone();
        shuffled.shuffle(&mut rng);
        let mut sigma: Vec<usize> = (0..2 * g + 2).collect();
        for (f, t) in orig.iter().zip(&shuffled) {
            sigma[*f] = *t;
        }
        s.cases += 1;
        let ok = match (to_f_basis(&a, nu), kappa(&a, nu)) {
            (Ok(t), Ok(k)) => count_two_distinct(&t.relabel(&sigma), None) == k,
            _ => false,
        };
        if !ok {
            s.fail(format!("ν={nu} A={a} σ={sigma:?}"), "relabelling changes κ");
        }
    }
    s
}

fn numeric_periods(cfg: &RunConfig, curve: &Curve, q: &Quadrature) -> Suite {
    let g = cfg.g;
    let p = q.precision();
    let mut s = Suite::new("numeric-periods");
    for i in 1..=g {
        for j in 1..=g {
            for (name, w, exact) in [
                ("a", PathWord::a(g, j), curve.period_a(i, j)),
                ("b", PathWord::b(g, j), curve.period_b(i, j)),
            ] {
                let err = (|| -> harmvol_core::Result<f64> {
                    let v = q.word_line_integral(&w?, FormSpec::Omega(i))?;
                    Ok(v.dist(&exact?.embed(p)))
                })()
                .unwrap_or(f64::NAN);
                s.measure(|| format!("∫_{name}{j} ω{i}"), err, cfg.tol_line);
            }
        }
    }
    s
}

/// ∫ α_i β_j over every a_k and b_k against the closed forms.
fn numeric_lemma(cfg: &RunConfig, curve: &Curve, q: &Quadrature) -> Suite {
    let g = cfg.g;
    let p = q.precision();
    let mut s = Suite::new("numeric-iterated");
    for i in 1..=g {
        for j in 1..=g {
            for k in 1..=g {
                for lp in [Loop::A(k), Loop::B(k)] {
                    let err = (|| -> harmvol_core::Result<f64> {
                        let w = q.loop_word(lp)?;
                        let v = q.word_iterated_integral(&w, FormSpec::Alpha(i), FormSpec::Beta(j))?;
                        Ok(v.dist(&curve.iter_ab_closed(i, j, lp)?.embed(p)))
                    })()
                    .unwrap_or(f64::NAN);
                    s.measure(|| format!("∫_{lp:?} α{i}β{j}"), err, cfg.tol_iterated);
                }
            }
        }
    }
    s
}

fn numeric_ell(cfg: &RunConfig, curve: &Curve, q: &Quadrature) -> Suite {
    let mut s = Suite::new("numeric-ell");
    for &nu in &cfg.nu {
        for i in 1..=cfg.g {
            for h in [HarmonicForm::Alpha(i), HarmonicForm::Beta(i)] {
                let err = q
                    .ell_line_integral(nu, h.into())
                    .and_then(|v| {
                        let e = curve.ell_integral(h, nu)?;
                        let e: f64 = num_traits::ToPrimitive::to_f64(&e).unwrap_or(f64::NAN);
                        Ok((v.re.to_f64() - e).abs().max(v.im.to_f64().abs()))
                    })
                    .unwrap_or(f64::NAN);
                s.measure(|| format!("ν={nu} ∫ℓ {h:?}"), err, cfg.tol_line);
            }
        }
    }
    s
}

fn numeric_i_q0(cfg: &RunConfig, curve: &Curve, kb: &KBasis, q: &Quadrature) -> Suite {
    let mut s = Suite::new("numeric-i-q0");
    for e in kb.elements() {
        for third in Gen::all(cfg.g) {
            let exact = i_q0_table(curve, &e.case, third);
            let err = q
                .numeric_i_q0(&e.tensor, third)
                .map(|v| circle_distance(v.value, exact.to_f64()))
                .unwrap_or(f64::NAN);
            s.measure(|| format!("I_Q0({}⊗{third}) = {exact}", e.case), err, cfg.tol_modz);
        }
    }
    s
}

/// Shuffle on each segment, reversal on random words, and the trivial word.
fn chen_laws(cfg: &RunConfig, q: &Quadrature) -> Suite {
    let g = cfg.g;
    let forms: Vec<FormSpec> = (1..=g)
        .flat_map(|i| [FormSpec::Alpha(i), FormSpec::Beta(i), FormSpec::Omega(i)])
        .collect();
    let tol = cfg.tol_iterated;
    let mut s = Suite::new("chen-laws");
    for j in 0..2 * g + 2 {
        for iota in [false, true] {
            let w = PathWord::new(g, vec![Letter { j, iota, inverse: false }]).expect("single letter");
            let t = w.concat(&w.inverse()).expect("w·w⁻¹ composes");
            for &a in &forms {
                for &b in &forms {
                    let err = (|| -> harmvol_core::Result<f64> {
                        let ab = q.word_iterated_integral(&w, a, b)?;
                        let ba = q.word_iterated_integral(&w, b, a)?;
                        let prod = &q.word_line_integral(&w, a)? * &q.word_line_integral(&w, b)?;
                        Ok((&ab + &ba).dist(&prod))
                    })()
                    .unwrap_or(f64::NAN);
                    s.measure(|| format!("shuffle on {w} ({a:?}, {b:?})"), err, tol);
                    let err = q
                        .word_iterated_integral(&t, a, b)
                        .map(|v| v.abs().to_f64())
                        .unwrap_or(f64::NAN);
                    s.measure(|| format!("trivial word {t} ({a:?}, {b:?})"), err, tol);
                }
            }
        }
    }
    let mut rng = seeded_rng(cfg.seed ^ 0xc4e7);
    for trial in 0..200 {
        let w = random_word(g, &mut rng, 1 + trial % 6);
        let (a, b) = (forms[trial % forms.len()], forms[(trial / forms.len()) % forms.len()]);
        let err = (|| -> harmvol_core::Result<f64> {
            let fwd = q.word_iterated_integral(&w, b, a)?;
            let rev = q.word_iterated_integral(&w.inverse(), a, b)?;
            Ok(fwd.dist(&rev))
        })()
        .unwrap_or(f64::NAN);
        s.measure(|| format!("reversal on {w} ({a:?}, {b:?})"), err, tol);
    }
    s
}

pub fn render(cfg: &RunConfig, suites: Vec<Suite>) -> Result<(String, bool), CliError> {
    let report = Report {
        version: 1,
        config: cfg,
        suites,
    };
    let passed = report.passed();
    let text = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        f => {
            let mut g = Grid::new(["suite", "cases", "failures", "max_error", "seconds"]);
            for s in &report.suites {
                g.push(vec![
                    s.name.to_string(),
                    s.cases.to_string(),
                    s.failures.len().to_string(),
                    format!("{:.3e}", s.max_error),
                    s.seconds.map_or_else(String::new, |t| format!("{t:.3}")),
                ]);
            }
            if f == Format::Csv {
                g.csv()?
            } else {
                let mut out = format!("# verify g = {}\n\n{}", cfg.g, g.markdown());
                for s in &report.suites {
                    for fl in &s.failures {
                        out.push_str(&format!("\n- {} FAIL {}: {}", s.name, fl.case, fl.detail));
                    }
                }
                let verdict = if passed { "PASS" } else { "FAIL" };
                out.push_str(&format!("\n\n{verdict}\n"));
                out
            }
        }
    };
    Ok((text, passed))
}
