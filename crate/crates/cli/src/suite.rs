//! Verification suites: seeded property checks with machine-readable
//! reports and replayable counterexample dumps.
//!
//! Every suite runs one check per trial on its own stream (seeded
//! `cfg.seed ^ trial`). A trial report carries the pass verdict plus a
//! `details` object; on failure (or on demand) the details embed a full
//! instance file and the metadata needed to re-run exactly the same
//! check through [`replay`].

use hopull_core::chain::{chain_homotopy, factorize, factorize_morphism, induce_same_homology};
use hopull_core::chain::{pullback, universal_into_pullback, ChainComplex, ChainMap};
use hopull_core::cospan::{
    fibrant_replace, is_cofibration_sigma, is_fibrant_sigma, is_weq_cospan, lift_replacements,
    lift_replacements_sampled, Cospan, CospanMorphism, Node, ReplaceMode, Replacement, SigmaTag,
};
use hopull_core::hopull::{
    cocone_oracle, homotopy_pullback, induced_pullback_map, is_homotopy_fiber_square,
    is_model_square_full, is_model_square_rp, paste, transfer_verdict, CommSquare, Leg,
    SquareConnectors,
};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::format::{resolve, InstanceBuilder, InstanceError, InstanceFile, Resolved};
use crate::gen::{retraction_of, ConfigError, Gen, GenConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Axioms,
    Sigma,
    Lifting,
    Fibersq,
    Pasting,
    Transfer,
    Rightproper,
    Corlur,
    Pastlem,
}

impl SuiteName {
    pub const ALL: [SuiteName; 9] = [
        SuiteName::Axioms,
        SuiteName::Sigma,
        SuiteName::Lifting,
        SuiteName::Fibersq,
        SuiteName::Pasting,
        SuiteName::Transfer,
        SuiteName::Rightproper,
        SuiteName::Corlur,
        SuiteName::Pastlem,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::Axioms => "axioms",
            SuiteName::Sigma => "sigma",
            SuiteName::Lifting => "lifting",
            SuiteName::Fibersq => "fibersq",
            SuiteName::Pasting => "pasting",
            SuiteName::Transfer => "transfer",
            SuiteName::Rightproper => "rightproper",
            SuiteName::Corlur => "corlur",
            SuiteName::Pastlem => "pastlem",
        }
    }

    pub fn parse(s: &str) -> Option<SuiteName> {
        SuiteName::ALL.iter().copied().find(|n| n.as_str() == s)
    }
}

pub fn sigma_str(sigma: SigmaTag) -> &'static str {
    match sigma {
        SigmaTag::Inj => "inj",
        SigmaTag::ReeI => "ree-i",
        SigmaTag::ReeD => "ree-d",
    }
}

pub fn sigma_parse(s: &str) -> Option<SigmaTag> {
    match s {
        "inj" => Some(SigmaTag::Inj),
        "ree-i" => Some(SigmaTag::ReeI),
        "ree-d" => Some(SigmaTag::ReeD),
        _ => None,
    }
}

pub fn mode_str(mode: ReplaceMode) -> &'static str {
    match mode {
        ReplaceMode::Functorial => "functorial",
        ReplaceMode::Local => "local",
    }
}

pub fn mode_parse(s: &str) -> Option<ReplaceMode> {
    match s {
        "functorial" => Some(ReplaceMode::Functorial),
        "local" => Some(ReplaceMode::Local),
        _ => None,
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("core error: {0}")]
    Core(#[from] hopull_core::Error),
    #[error("replay metadata: {0}")]
    Meta(String),
}

/// One executed trial: the verdict, the reproducing instance and the
/// metadata replay needs.
pub struct Trial {
    pub pass: bool,
    pub dump: InstanceFile,
    pub meta: Value,
}

/// The report row for one trial, serialized one JSON object per line.
#[derive(Debug, Serialize)]
pub struct TrialReport {
    pub suite: &'static str,
    pub trial: usize,
    pub seed: u64,
    pub pass: bool,
    pub details: Value,
}

/// Runs a suite. Trials are independent (seeded `cfg.seed ^ trial`) and
/// reported in order. When `dump_all` is false only failing trials embed
/// their instance.
pub fn run_suite(
    name: SuiteName,
    cfg: &GenConfig,
    dump_all: bool,
) -> Result<Vec<TrialReport>, SuiteError> {
    cfg.validate()?;
    let mut reports = Vec::with_capacity(cfg.trials);
    for trial in 0..cfg.trials {
        let t = run_trial(name, cfg, trial)?;
        let mut details = json!({ "meta": t.meta });
        if !t.pass || dump_all {
            details["instance"] = serde_json::to_value(&t.dump).expect("instance serializes");
        }
        reports.push(TrialReport {
            suite: name.as_str(),
            trial,
            seed: cfg.seed ^ trial as u64,
            pass: t.pass,
            details,
        });
    }
    Ok(reports)
}

pub fn run_trial(name: SuiteName, cfg: &GenConfig, trial: usize) -> Result<Trial, SuiteError> {
    match name {
        SuiteName::Axioms => check_axioms(cfg, trial),
        SuiteName::Sigma => check_sigma(cfg, trial),
        SuiteName::Lifting => check_lifting(cfg, trial),
        SuiteName::Fibersq => check_fibersq(cfg, trial),
        SuiteName::Pasting => check_pasting(cfg, trial),
        SuiteName::Transfer => check_transfer(cfg, trial),
        SuiteName::Rightproper => check_rightproper(cfg, trial),
        SuiteName::Corlur => check_corlur(cfg, trial),
        SuiteName::Pastlem => check_pastlem(cfg, trial),
    }
}

/// Re-runs the check recorded in a trial's details against the embedded
/// instance; returns the recomputed verdict.
pub fn replay(name: SuiteName, file: &InstanceFile, meta: &Value) -> Result<bool, SuiteError> {
    let r = resolve(file)?;
    match name {
        SuiteName::Axioms => replay_axioms(&r),
        SuiteName::Sigma => replay_sigma(&r, meta),
        SuiteName::Lifting => replay_lifting(&r, meta),
        SuiteName::Fibersq => replay_fibersq(&r, meta),
        SuiteName::Pasting => replay_pasting(&r),
        SuiteName::Transfer => replay_transfer(&r),
        SuiteName::Rightproper => replay_rightproper(&r),
        SuiteName::Corlur => replay_corlur(&r),
        SuiteName::Pastlem => replay_pastlem(&r),
    }
}

fn meta_str<'a>(meta: &'a Value, key: &str) -> Result<&'a str, SuiteError> {
    meta.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| SuiteError::Meta(format!("missing '{key}'")))
}

// ---------------------------------------------------------------------
// axioms: factorization system axioms, naturality, classifier
// containments
// ---------------------------------------------------------------------

fn fff_axioms_hold(f: &ChainMap) -> bool {
    let fac = factorize(f);
    fac.q.compose(&fac.i).map(|qi| qi == *f).unwrap_or(false)
        && fac.i.is_cofibration()
        && fac.i.is_weq()
        && fac.q.is_fibration()
}

fn naturality_holds(f: &ChainMap, f2: &ChainMap, a: &ChainMap, b: &ChainMap) -> bool {
    let Ok(m) = factorize_morphism(f, f2, a, b) else {
        return false;
    };
    let fac = factorize(f);
    let fac2 = factorize(f2);
    m.compose(&fac.i).unwrap() == fac2.i.compose(a).unwrap()
        && fac2.q.compose(&m).unwrap() == b.compose(&fac.q).unwrap()
}

fn classifier_containments_hold(m: &CospanMorphism, fibrant_pair: &Cospan) -> bool {
    for sigma in [SigmaTag::ReeI, SigmaTag::ReeD] {
        match is_cofibration_sigma(m, sigma) {
            Ok(true) => {
                for r in [Node::C, Node::D, Node::B] {
                    if !m.component(r).is_cofibration() {
                        return false;
                    }
                }
            }
            Ok(false) => {}
            Err(_) => return false,
        }
    }
    if is_fibrant_sigma(fibrant_pair, SigmaTag::Inj)
        && !(is_fibrant_sigma(fibrant_pair, SigmaTag::ReeI)
            && is_fibrant_sigma(fibrant_pair, SigmaTag::ReeD))
    {
        return false;
    }
    // the generated pair has both legs fibrations, so the premise is
    // non-vacuous
    is_fibrant_sigma(fibrant_pair, SigmaTag::Inj)
}

fn check_axioms(cfg: &GenConfig, trial: usize) -> Result<Trial, SuiteError> {
    let mut g = Gen::for_trial(cfg, trial)?;
    let x = g.complex();
    let y = g.complex();
    let f = g.map(&x, &y);
    let a = g.weq_from(&x);
    let b = g.weq_from(&y);
    let f2 = b.compose(&f).unwrap().compose(&retraction_of(&a)).unwrap();
    // classifier instances: a padding morphism (a genuine Reedy
    // cofibration) and an injectively fibrant cospan
    let base = g.cospan(None);
    let morphism = g.padding_morphism(&base);
    let d = g.complex();
    let fibrant_pair =
        Cospan::new(g.fibration_onto(&d), g.fibration_onto(&d)).expect("shared target");

    let fff = fff_axioms_hold(&f);
    let natural = naturality_holds(&f, &f2, &a, &b);
    let classifiers = classifier_containments_hold(&morphism, &fibrant_pair);
    let pass = fff && natural && classifiers;

    let mut builder = InstanceBuilder::new(cfg.p);
    builder
        .complex("X", &x)
        .complex("Y", &y)
        .map("f", "X", "Y", &f);
    builder.complex("X2", a.tgt()).complex("Y2", b.tgt());
    builder
        .map("a", "X", "X2", &a)
        .map("b", "Y", "Y2", &b)
        .map("f2", "X2", "Y2", &f2);
    morphism_full(&mut builder, "m", &morphism);
    builder.cospan_full("fibrant_pair", &fibrant_pair);
    Ok(Trial {
        pass,
        dump: builder.finish(),
        meta: json!({
            "fff": fff,
            "naturality": natural,
            "classifiers": classifiers,
        }),
    })
}

fn replay_axioms(r: &Resolved) -> Result<bool, SuiteError> {
    let f = r.map("f")?;
    let f2 = r.map("f2")?;
    let a = r.map("a")?;
    let b = r.map("b")?;
    let m = r.morphism("m")?;
    let pair = r.cospan("fibrant_pair")?;
    Ok(
        fff_axioms_hold(f)
            && naturality_holds(f, f2, a, b)
            && classifier_containments_hold(m, pair),
    )
}

// ---------------------------------------------------------------------
// sigma: structure- and mode-independence of the homotopy pullback,
// plus the loop-object instances
// ---------------------------------------------------------------------

fn sigma_independent(x: &Cospan) -> bool {
    let expected = cocone_oracle(x);
    for sigma in SigmaTag::ALL {
        for mode in [ReplaceMode::Functorial, ReplaceMode::Local] {
            match homotopy_pullback(x, sigma, mode) {
                Ok(r) => {
                    if r.homology != expected {
                        return false;
                    }
                }
                Err(_) => return false,
            }
        }
    }
    true
}

fn loop_cospan(p: u64, n: i64) -> Cospan {
    let ctx = hopull_core::linfp::FieldCtx::new(p).expect("valid prime");
    let s = ChainComplex::sphere(ctx, n);
    let zero = ChainComplex::zero(ctx);
    Cospan::new(
        ChainMap::zero(&zero, &s).unwrap(),
        ChainMap::zero(&zero, &s).unwrap(),
    )
    .unwrap()
}

/// The loop-object instance `0 -> S(n) <- 0`: its homotopy pullback has
/// one homology generator in degree `n - 1`, under every structure and
/// mode, matching the cocone homology.
pub fn loop_object_ok(p: u64, n: i64) -> bool {
    let x = loop_cospan(p, n);
    let mut expected = std::collections::BTreeMap::new();
    expected.insert(n - 1, 1usize);
    if cocone_oracle(&x) != expected {
        return false;
    }
    for sigma in SigmaTag::ALL {
        for mode in [ReplaceMode::Functorial, ReplaceMode::Local] {
            match homotopy_pullback(&x, sigma, mode) {
                Ok(r) => {
                    if r.homology != expected {
                        return false;
                    }
                }
                Err(_) => return false,
            }
        }
    }
    true
}

fn check_sigma(cfg: &GenConfig, trial: usize) -> Result<Trial, SuiteError> {
    let mut g = Gen::for_trial(cfg, trial)?;
    let x = match trial % 3 {
        0 => g.cospan(Some(Leg::Second)),
        1 => g.cospan(Some(Leg::First)),
        _ => g.cospan(None),
    };
    let loop_n = (trial % 4) as i64;
    let pass = sigma_independent(&x) && loop_object_ok(cfg.p, loop_n);
    let mut builder = InstanceBuilder::new(cfg.p);
    builder.cospan_full("X", &x);
    Ok(Trial {
        pass,
        dump: builder.finish(),
        meta: json!({ "loop_n": loop_n }),
    })
}

fn replay_sigma(r: &Resolved, meta: &Value) -> Result<bool, SuiteError> {
    let x = r.cospan("X")?;
    let loop_n = meta
        .get("loop_n")
        .and_then(Value::as_i64)
        .ok_or_else(|| SuiteError::Meta("missing 'loop_n'".into()))?;
    Ok(sigma_independent(x) && loop_object_ok(x.ctx().modulus(), loop_n))
}

// ---------------------------------------------------------------------
// lifting: lifts between replacements exist, induce weq comparisons and
// agree up to chain homotopy
// ---------------------------------------------------------------------

fn lifting_checks(
    x: &Cospan,
    r1: &Replacement,
    r2: &Replacement,
    coeffs: &[u64],
) -> Result<bool, SuiteError> {
    let l1 = lift_replacements(x, r1, r2)?;
    let l2 = lift_replacements_sampled(x, r1, r2, coeffs)?;
    for l in [&l1, &l2] {
        if l.compose(r1.map()).unwrap() != *r2.map() {
            return Ok(false);
        }
        if !is_weq_cospan(l) {
            return Ok(false);
        }
    }
    let lim1 = induced_pullback_map(&l1)?;
    let lim2 = induced_pullback_map(&l2)?;
    if !lim1.is_weq() || !lim2.is_weq() {
        return Ok(false);
    }
    if !induce_same_homology(&lim1, &lim2)? {
        return Ok(false);
    }
    for r in [Node::C, Node::D, Node::B] {
        if chain_homotopy(l1.component(r), l2.component(r))?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_lifting(cfg: &GenConfig, trial: usize) -> Result<Trial, SuiteError> {
    let mut g = Gen::for_trial(cfg, trial)?;
    let x = match trial % 3 {
        0 => g.cospan(Some(Leg::Second)),
        1 => g.cospan(Some(Leg::First)),
        _ => g.cospan(None),
    };
    let sigma = g.sigma();
    let r1 = fibrant_replace(&x, sigma, ReplaceMode::Functorial)?;
    // a genuinely different replacement of the same cospan: either the
    // twisted functorial target or (when fibrant) the local identity
    let r2 = if trial % 2 == 0 || !is_fibrant_sigma(&x, sigma) {
        g.twist_replacement(&r1)
    } else {
        fibrant_replace(&x, sigma, ReplaceMode::Local)?
    };
    let coeffs: Vec<u64> = (0..24).map(|_| g.rng().next_u64()).collect();
    let pass = lifting_checks(&x, &r1, &r2, &coeffs)?;
    let mut builder = InstanceBuilder::new(cfg.p);
    builder.cospan_full("X", &x);
    morphism_full(&mut builder, "r1", r1.map());
    morphism_full(&mut builder, "r2", r2.map());
    Ok(Trial {
        pass,
        dump: builder.finish(),
        meta: json!({
            "sigma": sigma_str(sigma),
            "mode1": mode_str(r1.mode()),
            "mode2": mode_str(r2.mode()),
            "coeffs": coeffs,
        }),
    })
}

fn replay_lifting(r: &Resolved, meta: &Value) -> Result<bool, SuiteError> {
    let x = r.cospan("X")?;
    let sigma = sigma_parse(meta_str(meta, "sigma")?)
        .ok_or_else(|| SuiteError::Meta("bad 'sigma'".into()))?;
    let mode1 = mode_parse(meta_str(meta, "mode1")?)
        .ok_or_else(|| SuiteError::Meta("bad 'mode1'".into()))?;
    let mode2 = mode_parse(meta_str(meta, "mode2")?)
        .ok_or_else(|| SuiteError::Meta("bad 'mode2'".into()))?;
    let coeffs: Vec<u64> = meta
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| SuiteError::Meta("missing 'coeffs'".into()))?
        .iter()
        .filter_map(Value::as_u64)
        .collect();
    let r1 = Replacement::new(r.morphism("r1")?.clone(), sigma, mode1)?;
    let r2 = Replacement::new(r.morphism("r2")?.clone(), sigma, mode2)?;
    lifting_checks(x, &r1, &r2, &coeffs)
}

// ---------------------------------------------------------------------
// fibersq: homotopy fiber square agrees with the model-square verdict
// and with the generator labels
// ---------------------------------------------------------------------

fn label_ground_truth_ok(s: &CommSquare, label: bool) -> bool {
    // negatives are certified by a homology mismatch against the oracle;
    // positives must match it
    let corner = s.corner().homology_dims();
    let oracle = cocone_oracle(s.cospan());
    if label {
        corner == oracle
    } else {
        corner != oracle
    }
}

fn fibersq_checks(s: &CommSquare, label: bool) -> Result<bool, SuiteError> {
    if !label_ground_truth_ok(s, label) {
        return Ok(false);
    }
    let full = is_model_square_full(s)?;
    let fiber = is_homotopy_fiber_square(s)?;
    Ok(full == label && fiber == label)
}

fn check_fibersq(cfg: &GenConfig, trial: usize) -> Result<Trial, SuiteError> {
    let mut g = Gen::for_trial(cfg, trial)?;
    let label = trial % 2 == 0;
    let s = if label {
        g.positive_square()
    } else {
        let base = g.positive_square();
        g.spoil_corner(&base)
    };
    let pass = fibersq_checks(&s, label)?;
    let mut builder = InstanceBuilder::new(cfg.p);
    builder.square_full("sq", &s);
    Ok(Trial {
        pass,
        dump: builder.finish(),
        meta: json!({ "label": label }),
    })
}

fn replay_fibersq(r: &Resolved, meta: &Value) -> Result<bool, SuiteError> {
    let s = r.square("sq")?;
    let label = meta
        .get("label")
        .and_then(Value::as_bool)
        .ok_or_else(|| SuiteError::Meta("missing 'label'".into()))?;
    fibersq_checks(s, label)
}

// ---------------------------------------------------------------------
// pasting: with the right square a model square, the left and the total
// square have the same verdict
// ---------------------------------------------------------------------

fn pasting_checks(left: &CommSquare, right: &CommSquare) -> Result<bool, SuiteError> {
    if !is_model_square_full(right)? {
        return Ok(false);
    }
    let total = paste(left, right)?;
    Ok(is_model_square_full(left)? == is_model_square_full(&total)?)
}

fn check_pasting(cfg: &GenConfig, trial: usize) -> Result<Trial, SuiteError> {
    let mut g = Gen::for_trial(cfg, trial)?;
    let right_x = g.cospan(Some(Leg::Second));
    let right = g.strict_square(&right_x);
    // left square over the shared middle column, corner either the
    // strict pullback (verdict true) or spoiled (verdict false)
    let middle = right.v().clone();
    let bottom_src = g.complex();
    let bottom = g.map(&bottom_src, middle.tgt());
    let left_x = Cospan::new(bottom, middle)?;
    let left_model = g.strict_square(&left_x);
    let left = if trial % 2 == 0 {
        left_model
    } else {
        g.spoil_corner(&left_model)
    };
    let pass = pasting_checks(&left, &right)?;
    let mut builder = InstanceBuilder::new(cfg.p);
    builder.square_full("left", &left);
    builder.square_full("right", &right);
    Ok(Trial {
        pass,
        dump: builder.finish(),
        meta: json!({}),
    })
}

fn replay_pasting(r: &Resolved) -> Result<bool, SuiteError> {
    pasting_checks(r.square("left")?, r.square("right")?)
}

// ---------------------------------------------------------------------
// transfer: parallel squares connected by weak equivalences share their
// verdict
// ---------------------------------------------------------------------

fn transfer_checks(
    s: &CommSquare,
    s2: &CommSquare,
    connectors: &SquareConnectors,
) -> Result<bool, SuiteError> {
    let verdict = transfer_verdict(s, s2, connectors)?;
    Ok(verdict == is_model_square_full(s2)? && verdict == is_model_square_full(s)?)
}

fn check_transfer(cfg: &GenConfig, trial: usize) -> Result<Trial, SuiteError> {
    let mut g = Gen::for_trial(cfg, trial)?;
    let base = if trial % 2 == 0 {
        g.positive_square()
    } else {
        let s = g.positive_square();
        g.spoil_corner(&s)
    };
    let (padded, connectors) = g.pad_square(&base);
    let pass = transfer_checks(&base, &padded, &connectors)?;
    let mut builder = InstanceBuilder::new(cfg.p);
    builder.square_full("sq", &base);
    builder.square_full("sq2", &padded);
    builder.map("w.a", "sq.A", "sq2.A", &connectors.on_a);
    builder.map("w.b", "sq.X.B", "sq2.X.B", &connectors.on_b);
    builder.map("w.c", "sq.X.C", "sq2.X.C", &connectors.on_c);
    builder.map("w.d", "sq.X.D", "sq2.X.D", &connectors.on_d);
    Ok(Trial {
        pass,
        dump: builder.finish(),
        meta: json!({}),
    })
}

fn replay_transfer(r: &Resolved) -> Result<bool, SuiteError> {
    let connectors = SquareConnectors {
        on_a: r.map("w.a")?.clone(),
        on_b: r.map("w.b")?.clone(),
        on_c: r.map("w.c")?.clone(),
        on_d: r.map("w.d")?.clone(),
    };
    transfer_checks(r.square("sq")?, r.square("sq2")?, &connectors)
}

// ---------------------------------------------------------------------
// rightproper: one-leg replacement agrees with the full verdict
// ---------------------------------------------------------------------

fn rightproper_checks(s: &CommSquare) -> Result<bool, SuiteError> {
    let full = is_model_square_full(s)?;
    Ok(is_model_square_rp(s, Leg::First)? == full && is_model_square_rp(s, Leg::Second)? == full)
}

fn check_rightproper(cfg: &GenConfig, trial: usize) -> Result<Trial, SuiteError> {
    let mut g = Gen::for_trial(cfg, trial)?;
    let s = if trial % 2 == 0 {
        g.positive_square()
    } else {
        let base = g.positive_square();
        g.spoil_corner(&base)
    };
    let pass = rightproper_checks(&s)?;
    let mut builder = InstanceBuilder::new(cfg.p);
    builder.square_full("sq", &s);
    Ok(Trial {
        pass,
        dump: builder.finish(),
        meta: json!({ "label": trial % 2 == 0 }),
    })
}

fn replay_rightproper(r: &Resolved) -> Result<bool, SuiteError> {
    rightproper_checks(r.square("sq")?)
}

// ---------------------------------------------------------------------
// corlur: the strict pullback over a cospan with a fibration leg is a
// model square
// ---------------------------------------------------------------------

fn corlur_checks(s: &CommSquare) -> Result<bool, SuiteError> {
    // one leg must actually be a fibration for the instance to count
    if !s.cospan().f().is_fibration() && !s.cospan().g().is_fibration() {
        return Ok(false);
    }
    Ok(is_model_square_full(s)?)
}

fn check_corlur(cfg: &GenConfig, trial: usize) -> Result<Trial, SuiteError> {
    let mut g = Gen::for_trial(cfg, trial)?;
    let leg = if trial % 2 == 0 {
        Leg::Second
    } else {
        Leg::First
    };
    let x = g.cospan(Some(leg));
    let s = g.strict_square(&x);
    let pass = corlur_checks(&s)?;
    let mut builder = InstanceBuilder::new(cfg.p);
    builder.square_full("sq", &s);
    Ok(Trial {
        pass,
        dump: builder.finish(),
        meta: json!({}),
    })
}

fn replay_corlur(r: &Resolved) -> Result<bool, SuiteError> {
    corlur_checks(r.square("sq")?)
}

// ---------------------------------------------------------------------
// pastlem: pulling a weak equivalence back along a fibration gives a
// weak equivalence
// ---------------------------------------------------------------------

fn pastlem_checks(fib: &ChainMap, h: &ChainMap, weq: &ChainMap) -> Result<bool, SuiteError> {
    if !fib.is_fibration() || !weq.is_weq() {
        return Ok(false);
    }
    let hb = h.compose(weq)?;
    let pb_b = pullback(fib, &hb)?;
    let pb_c = pullback(fib, h)?;
    let u = universal_into_pullback(&pb_b.to_first, &weq.compose(&pb_b.to_second)?, &pb_c)?;
    Ok(u.is_weq())
}

fn check_pastlem(cfg: &GenConfig, trial: usize) -> Result<Trial, SuiteError> {
    let mut g = Gen::for_trial(cfg, trial)?;
    let d = g.complex();
    let fib = g.fibration_onto(&d);
    let c = g.complex();
    let h = g.map(&c, &d);
    // weq : B -> C as the retraction of a padded inclusion of C
    let incl = g.weq_from(&c);
    let weq = retraction_of(&incl);
    let pass = pastlem_checks(&fib, &h, &weq)?;
    let mut builder = InstanceBuilder::new(cfg.p);
    builder
        .complex("A", fib.src())
        .complex("D", &d)
        .complex("C", &c)
        .complex("B", weq.src());
    builder
        .map("fib", "A", "D", &fib)
        .map("h", "C", "D", &h)
        .map("weq", "B", "C", &weq);
    Ok(Trial {
        pass,
        dump: builder.finish(),
        meta: json!({}),
    })
}

fn replay_pastlem(r: &Resolved) -> Result<bool, SuiteError> {
    pastlem_checks(r.map("fib")?, r.map("h")?, r.map("weq")?)
}

// ---------------------------------------------------------------------

/// Adds a cospan morphism with all its parts to a builder.
fn morphism_full(builder: &mut InstanceBuilder, name: &str, m: &CospanMorphism) {
    let (src, tgt) = (format!("{name}.src"), format!("{name}.tgt"));
    builder.cospan_full(&src, m.src());
    builder.cospan_full(&tgt, m.tgt());
    let (cn, dn, bn) = (
        format!("{name}.c"),
        format!("{name}.d"),
        format!("{name}.b"),
    );
    builder.map(&cn, &format!("{src}.C"), &format!("{tgt}.C"), m.phi_c());
    builder.map(&dn, &format!("{src}.D"), &format!("{tgt}.D"), m.phi_d());
    builder.map(&bn, &format!("{src}.B"), &format!("{tgt}.B"), m.phi_b());
    builder.morphism(name, &src, &tgt, &cn, &dn, &bn);
}

/// Summary of a report list: all pass?
pub fn all_pass(reports: &[TrialReport]) -> bool {
    reports.iter().all(|r| r.pass)
}
