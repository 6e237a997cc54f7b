//! Seeded cross-method property suite.
//!
//! Trial `t` of property `p` draws from a ChaCha8 stream keyed by
//! `(seed, p, t)`, so every trial is independent of scheduling and of the
//! other properties, and a single failing trial can be replayed alone.

use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;

use crate::closedform::{self, build_meet_hypermatrix, GroundedFunction};
use crate::error::Result;
use crate::hyperdet::{self, FMap, Hypermatrix};
use crate::lattice::{poset_to_text, MeetSemilattice};
use crate::random::{self, Rng64, SeedableRng};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    pub nmax: usize,
    pub kmax: usize,
    /// Negative control: corrupts one comparison so the suite must fail.
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 42,
            trials: 50,
            nmax: 4,
            kmax: 4,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: usize,
    pub run: usize,
    pub skipped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub property: &'static str,
    pub trial: usize,
    pub detail: String,
    pub dump: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub results: Vec<PropertyResult>,
    pub failure: Option<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Deterministic text: no timings, no thread counts.
    pub fn render(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "verify seed={} trials={} nmax={} kmax={}\n",
            c.seed, c.trials, c.nmax, c.kmax
        );
        if c.trials == 0 {
            out.push_str("warning: --trials 0, no properties were run\n");
            return out;
        }
        for r in &self.results {
            if r.skipped {
                writeln!(out, "{:<26} skipped (needs larger --nmax/--kmax)", r.name).unwrap();
            } else {
                writeln!(out, "{:<26} {}/{}", r.name, r.passed, r.run).unwrap();
            }
        }
        match &self.failure {
            None => {
                let ran = self.results.iter().filter(|r| !r.skipped).count();
                writeln!(out, "all {ran} properties passed").unwrap();
            }
            Some(f) => {
                writeln!(out, "FAILED {} trial {}: {}", f.property, f.trial, f.detail).unwrap();
                writeln!(
                    out,
                    "reproducer: seed={} property={} trial={}",
                    c.seed, f.property, f.trial
                )
                .unwrap();
                out.push_str(&f.dump);
                if !f.dump.ends_with('\n') {
                    out.push('\n');
                }
            }
        }
        out
    }
}

struct Mismatch {
    detail: String,
    dump: String,
}

type Outcome = std::result::Result<(), Mismatch>;

#[derive(Clone, Copy)]
struct Ctx {
    nmax: usize,
    kmax: usize,
    fault: bool,
}

struct Property {
    name: &'static str,
    applies: fn(&Ctx) -> bool,
    trial: fn(&mut Rng64, &Ctx) -> Outcome,
}

const PROPERTIES: &[Property] = &[
    Property {
        name: "expansion-vs-brute",
        applies: |_| true,
        trial: expansion_vs_brute,
    },
    Property {
        name: "cayley-odd-vanishes",
        applies: |c| c.kmax >= 3 && c.nmax >= 2,
        trial: cayley_odd,
    },
    Property {
        name: "cayley-even-equals-det1",
        applies: |_| true,
        trial: cayley_even,
    },
    Property {
        name: "group-invariance",
        applies: |_| true,
        trial: invariance,
    },
    Property {
        name: "transforms-round-trip",
        applies: |_| true,
        trial: transforms,
    },
    Property {
        name: "lindstrom-det",
        applies: |_| true,
        trial: lindstrom_det,
    },
    Property {
        name: "lindstrom-fdet",
        applies: |c| c.kmax >= 3,
        trial: lindstrom_fdet,
    },
    Property {
        name: "meet-closed",
        applies: |_| true,
        trial: meet_closed,
    },
    Property {
        name: "hat-identity",
        applies: |_| true,
        trial: hat_identity,
    },
    Property {
        name: "factor-closed",
        applies: |_| true,
        trial: factor_closed,
    },
    Property {
        name: "li-expansion",
        applies: |_| true,
        trial: li_expansion,
    },
    Property {
        name: "ligen",
        applies: |_| true,
        trial: ligen,
    },
    Property {
        name: "genhauk",
        applies: |_| true,
        trial: genhauk,
    },
];

pub fn property_names() -> Vec<&'static str> {
    PROPERTIES.iter().map(|p| p.name).collect()
}

fn trial_rng(seed: u64, property: usize, trial: usize) -> Rng64 {
    let mut r = Rng64::seed_from_u64(seed);
    r.set_stream(((property as u64) << 32) | trial as u64);
    r
}

pub fn run(config: VerifyConfig) -> VerifyReport {
    assert!(config.nmax >= 1 && config.kmax >= 2, "need nmax ≥ 1 and kmax ≥ 2");
    let mut report = VerifyReport {
        config,
        results: Vec::new(),
        failure: None,
    };
    if config.trials == 0 {
        return report;
    }
    for (pi, prop) in PROPERTIES.iter().enumerate() {
        let ctx = Ctx {
            nmax: config.nmax,
            kmax: config.kmax,
            fault: config.inject_fault && pi == 0,
        };
        if !(prop.applies)(&ctx) {
            report.results.push(PropertyResult {
                name: prop.name,
                passed: 0,
                run: 0,
                skipped: true,
            });
            continue;
        }
        let outcomes: Vec<Outcome> = (0..config.trials)
            .into_par_iter()
            .map(|t| {
                let ctx = Ctx {
                    fault: ctx.fault && t == 0,
                    ..ctx
                };
                (prop.trial)(&mut trial_rng(config.seed, pi, t), &ctx)
            })
            .collect();
        let mut result = PropertyResult {
            name: prop.name,
            passed: 0,
            run: 0,
            skipped: false,
        };
        for (t, o) in outcomes.into_iter().enumerate() {
            match o {
                Ok(()) => {
                    result.run += 1;
                    result.passed += 1;
                }
                Err(m) => {
                    result.run += 1;
                    if report.failure.is_none() {
                        report.failure = Some(Failure {
                            property: prop.name,
                            trial: t,
                            detail: m.detail,
                            dump: m.dump,
                        });
                    }
                }
            }
        }
        report.results.push(result);
    }
    report
}

// ---- instance dumps, in the CLI's file formats ----

fn fmap_text(f: &FMap) -> String {
    match f.table_text() {
        Some(t) => format!("--- fmap table\n{t}"),
        None => format!("--- fmap {}\n", f.describe()),
    }
}

fn dump_hyper(m: &Hypermatrix, f: &FMap) -> String {
    format!("--- hypermatrix\n{}{}", m.to_text(), fmap_text(f))
}

fn dump_gf(gf: &GroundedFunction, k: usize, f: &FMap) -> String {
    format!(
        "--- instance.poset\n{}--- instance.gf (k = {k})\n{}{}",
        poset_to_text(gf.poset()),
        gf.to_text("instance.poset"),
        fmap_text(f)
    )
}

fn compare(label: &str, got: Result<Scalar>, want: Result<Scalar>, dump: impl FnOnce() -> String) -> Outcome {
    match (got, want) {
        (Ok(a), Ok(b)) if a == b => Ok(()),
        (a, b) => Err(Mismatch {
            detail: format!("{label}: {} ≠ {}", show(&a), show(&b)),
            dump: dump(),
        }),
    }
}

fn show(r: &Result<Scalar>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error ({e})"),
    }
}

fn random_fmap(rng: &mut Rng64, n: usize, k: usize) -> FMap {
    match rng.gen_range(0..3) {
        0 => FMap::SignProduct,
        1 => FMap::ConstantOne,
        _ => random::ftable(rng, n, k - 2, -3, 3),
    }
}

// ---- properties ----

fn expansion_vs_brute(rng: &mut Rng64, c: &Ctx) -> Outcome {
    let n = rng.gen_range(1..=c.nmax);
    let k = rng.gen_range(2..=c.kmax);
    let m = random::hypermatrix(rng, n, k, -5, 5);
    let f = random_fmap(rng, n, k);
    let mut got = hyperdet::fdet_expansion(&m, &f);
    if c.fault {
        got = got.map(|v| v + Scalar::one());
    }
    compare(
        "expansion vs brute force",
        got,
        hyperdet::fdet_bruteforce(&m, &f),
        || dump_hyper(&m, &f),
    )
}

/// `n ≥ 2`: a 1×1×1 hypermatrix has `Det M = M₁₁₁`.
fn cayley_odd(rng: &mut Rng64, c: &Ctx) -> Outcome {
    let n = rng.gen_range(2..=c.nmax);
    let m = random::hypermatrix(rng, n, 3, -5, 5);
    compare(
        "Cayley Det at k = 3",
        hyperdet::cayley_det(&m),
        Ok(Scalar::zero()),
        || dump_hyper(&m, &FMap::SignProduct),
    )
}

fn cayley_even(rng: &mut Rng64, c: &Ctx) -> Outcome {
    let n = rng.gen_range(1..=c.nmax.min(3));
    let k = if c.kmax >= 4 && rng.gen_bool(0.5) { 4 } else { 2 };
    let m = random::hypermatrix(rng, n, k, -5, 5);
    compare(
        "Cayley Det vs Det_1",
        hyperdet::cayley_det(&m),
        Ok(hyperdet::det1(&m)),
        || dump_hyper(&m, &FMap::SignProduct),
    )
}

fn invariance(rng: &mut Rng64, c: &Ctx) -> Outcome {
    let n = rng.gen_range(1..=c.nmax.min(3));
    let k = c.kmax.min(3);
    let m = random::hypermatrix(rng, n, k, -5, 5);
    let g = random::rational_matrix(rng, n, -4, 4, 3);
    let f = random_fmap(rng, n, k);
    let lhs = hyperdet::group_action(&g, &m).and_then(|gm| hyperdet::fdet_bruteforce(&gm, &f));
    let rhs = hyperdet::fdet_bruteforce(&m, &f).map(|v| &g.det() * &v);
    compare("Det_F(g.M) vs det(g) Det_F(M)", lhs, rhs, || {
        let rows: Vec<String> = (0..n)
            .map(|i| (0..n).map(|j| g.get(i, j).to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        format!("{}--- g\n{}\n", dump_hyper(&m, &f), rows.join("\n"))
    })
}

fn transforms(rng: &mut Rng64, c: &Ctx) -> Outcome {
    let n = rng.gen_range(1..=c.nmax + 2);
    let p = random::poset(rng, n);
    let f: Vec<Scalar> = (0..n).map(|_| random::int(rng, -9, 9)).collect();
    let back = closedform::mobius_transform(&p, &closedform::zeta_transform(&p, &f));
    let forth = closedform::zeta_transform(&p, &closedform::mobius_transform(&p, &f));
    if back == f && forth == f {
        return Ok(());
    }
    let vals: Vec<String> = f.iter().map(Scalar::to_string).collect();
    Err(Mismatch {
        detail: "Möbius and zeta transforms do not invert each other".into(),
        dump: format!("--- poset\n{}--- f\n{}\n", poset_to_text(&p), vals.join(" ")),
    })
}

fn semilattice(rng: &mut Rng64, max: usize) -> MeetSemilattice {
    let n = rng.gen_range(1..=max);
    random::semilattice(rng, n)
}

/// Grounds equal to the index set on even coin flips, lowered otherwise.
fn maybe_lower(rng: &mut Rng64, gf: GroundedFunction) -> GroundedFunction {
    if rng.gen_bool(0.5) {
        return gf;
    }
    match random::lowered_grounds(rng, &gf) {
        Some(g) => gf.with_grounds(&g).expect("grounds lie below"),
        None => gf,
    }
}

fn lindstrom_det(rng: &mut Rng64, c: &Ctx) -> Outcome {
    let sl = semilattice(rng, (c.nmax + 2).min(6));
    let gf = random::grounded(rng, &sl, (0..sl.len()).collect(), -5, 5);
    let gf = maybe_lower(rng, gf);
    let direct = build_meet_hypermatrix(&gf, 2)
        .and_then(|m| m.slice(&[]))
        .map(|m| m.det());
    let closed = closedform::lindstrom_det(&gf);
    if !gf.grounds_are_identity() && !matches!(&closed, Ok(v) if v.is_zero()) {
        return Err(Mismatch {
            detail: format!("zero branch returned {}", show(&closed)),
            dump: dump_gf(&gf, 2, &FMap::SignProduct),
        });
    }
    compare("Lindström closed form vs det", closed, direct, || {
        dump_gf(&gf, 2, &FMap::SignProduct)
    })
}

fn lindstrom_fdet(rng: &mut Rng64, c: &Ctx) -> Outcome {
    let sl = semilattice(rng, c.nmax);
    let k = rng.gen_range(3..=c.kmax);
    let gf = random::grounded(rng, &sl, (0..sl.len()).collect(), -5, 5);
    let gf = maybe_lower(rng, gf);
    let f = random_fmap(rng, gf.len(), k);
    let oracle = build_meet_hypermatrix(&gf, k).and_then(|m| hyperdet::fdet_bruteforce(&m, &f));
    compare(
        "F-determinant closed form vs brute force",
        closedform::lindstrom_fdet(&gf, k, &f),
        oracle,
        || dump_gf(&gf, k, &f),
    )
}

/// A random subset closed under `close`, of size at most `max`, drawn from
/// a semilattice on at most `max + 2` elements.
fn closed_subset(
    rng: &mut Rng64,
    max: usize,
    close: impl Fn(&MeetSemilattice, &[usize]) -> Vec<usize>,
) -> (MeetSemilattice, Vec<usize>) {
    loop {
        let sl = semilattice(rng, max + 2);
        let size = rng.gen_range(1..=max.min(sl.len()));
        let seed = random::subset(rng, sl.len(), size);
        let s = close(&sl, &seed);
        if s.len() <= max {
            return (sl, s);
        }
    }
}

fn meet_closed(rng: &mut Rng64, c: &Ctx) -> Outcome {
    let (sl, s) = closed_subset(rng, c.nmax, |sl, seed| sl.meet_closure(seed));
    let k = rng.gen_range(2..=c.kmax);
    let gf = random::grounded(rng, &sl, s, -5, 5);
    let f = random_fmap(rng, gf.len(), k);
    let oracle = build_meet_hypermatrix(&gf, k).and_then(|m| hyperdet::fdet_bruteforce(&m, &f));
    compare(
        "meet-closed closed form vs brute force",
        closedform::meet_closed_fdet(&gf, k, &f),
        oracle,
        || dump_gf(&gf, k, &f),
    )
}

fn hat_identity(rng: &mut Rng64, c: &Ctx) -> Outcome {
    let (sl, s) = closed_subset(rng, c.nmax, |sl, seed| sl.meet_closure(seed));
    let ordered: Vec<usize> = sl
        .poset()
        .linear_extension()
        .into_iter()
        .filter(|e| s.contains(e))
        .collect();
    let f: Vec<Scalar> = (0..sl.len()).map(|_| random::int(rng, -9, 9)).collect();
    let big_f = closedform::zeta_transform(sl.poset(), &f);
    let dump = || {
        let vals: Vec<String> = f.iter().map(Scalar::to_string).collect();
        let labels: Vec<String> = ordered.iter().map(|&e| sl.poset().label(e)).collect();
        format!(
            "--- poset\n{}--- subset {}\n--- f {}\n",
            poset_to_text(sl.poset()),
            labels.join(","),
            vals.join(" ")
        )
    };
    let hat = match closedform::hat_transform(&sl, &ordered, &f) {
        Ok(h) => h,
        Err(e) => {
            return Err(Mismatch {
                detail: e.to_string(),
                dump: dump(),
            })
        }
    };
    for (i, &y) in ordered.iter().enumerate() {
        let sum: Scalar = (0..=i).filter(|&j| sl.leq(ordered[j], y)).map(|j| &hat[j]).sum();
        if sum != big_f[y] {
            return Err(Mismatch {
                detail: format!("F({}) = {} but the hat sum is {sum}", sl.poset().label(y), big_f[y]),
                dump: dump(),
            });
        }
    }
    Ok(())
}

fn factor_closed(rng: &mut Rng64, c: &Ctx) -> Outcome {
    let (sl, s) = closed_subset(rng, c.nmax, |sl, seed| sl.poset().order_ideal_closure(seed));
    let k = rng.gen_range(2..=c.kmax);
    let gf = random::grounded(rng, &sl, s, -5, 5);
    let f = random_fmap(rng, gf.len(), k);
    let oracle = build_meet_hypermatrix(&gf, k).and_then(|m| hyperdet::fdet_bruteforce(&m, &f));
    compare(
        "factor-closed closed form vs brute force",
        closedform::factor_closed_fdet(&gf, k, &f),
        oracle,
        || dump_gf(&gf, k, &f),
    )
}

/// `|X| ≤ min(3, nmax)`, `|X̄| ≤ 7`, random grounds.
fn general_instance(rng: &mut Rng64, c: &Ctx, uniform: bool) -> GroundedFunction {
    loop {
        let sl = semilattice(rng, 7);
        let size = rng.gen_range(1..=c.nmax.min(3).min(sl.len()));
        let xs = random::subset(rng, sl.len(), size);
        if sl.poset().order_ideal_closure(&xs).len() > 7 {
            continue;
        }
        let gf = if uniform {
            random::uniform_grounded(rng, &sl, xs, -5, 5)
        } else {
            random::grounded(rng, &sl, xs, -5, 5)
        };
        let g = random::grounds(rng, &gf);
        return gf.with_grounds(&g).expect("grounds lie below");
    }
}

fn li_expansion(rng: &mut Rng64, c: &Ctx) -> Outcome {
    let gf = general_instance(rng, c, false);
    let direct = build_meet_hypermatrix(&gf, 2)
        .and_then(|m| m.slice(&[]))
        .map(|m| m.det());
    compare(
        "minor expansion vs det",
        Ok(closedform::li_expansion_det(&gf)),
        direct,
        || dump_gf(&gf, 2, &FMap::SignProduct),
    )
}

fn ligen(rng: &mut Rng64, c: &Ctx) -> Outcome {
    let gf = general_instance(rng, c, false);
    let k = rng.gen_range(2..=c.kmax);
    let f = random_fmap(rng, gf.len(), k);
    let oracle = build_meet_hypermatrix(&gf, k).and_then(|m| hyperdet::fdet_bruteforce(&m, &f));
    compare(
        "general expansion vs brute force",
        closedform::ligen_fdet(&gf, k, &f),
        oracle,
        || dump_gf(&gf, k, &f),
    )
}

fn genhauk(rng: &mut Rng64, c: &Ctx) -> Outcome {
    let gf = general_instance(rng, c, true);
    let k = rng.gen_range(2..=c.kmax);
    let f = random_fmap(rng, gf.len(), k);
    let oracle = build_meet_hypermatrix(&gf, k).and_then(|m| hyperdet::fdet_bruteforce(&m, &f));
    compare(
        "uniform-F expansion vs brute force",
        closedform::genhauk_fdet(&gf, k, &f),
        oracle,
        || dump_gf(&gf, k, &f),
    )
}
