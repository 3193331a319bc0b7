//! Theorem/conjecture verification harness.
//!
//! Each invariant of the library gets one `check_id`; a suite run instantiates
//! it over the configured types and Weyl elements and reports one
//! [`CheckResult`] per scope. Checks are classified: a `Theorem` failure is
//! fatal to the suite, a `Conjecture` failure is evidence to be surfaced
//! (with a witness), never an error. Jobs are independent and run on a
//! bounded worker pool; results are merged deterministically.
//!
//! Check ids:
//!
//! | id | what it sweeps |
//! |----|----------------|
//! | `cartan.pair_order` | orders of rank-2 reflection products match the Cartan matrix |
//! | `cartan.length_descent` | `l(w s_i)` steps by one, up iff `w(alpha_i) > 0` (rank <= 3) |
//! | `cartan.coset_fix` | equal images of `omega_i` force the coset to fix it (A3) |
//! | `yring.make_a_shift` | root monomials commute with the spectral shift |
//! | `yring.factor_roundtrip` | planted `A`-exponents are recovered exactly |
//! | `yring.factor_weight` | factor maps account for the weight gap |
//! | `braid.relations` | Chari generators satisfy the braid relations |
//! | `braid.intertwine` | `T_w` intertwines the Weyl action on weights |
//! | `braid.multiplicative` | `T_w` is multiplicative on monomials |
//! | `braid.extremal_well_defined` | `T_w(Y_{i,r})` depends only on `w(omega_i)` |
//! | `braid.qroot_closure` | `T_w` preserves the subgroup of root monomials |
//! | `fm.qchar_invariants` | unique dominant monomial, `A^{-1}`-positivity, W-invariant weights |
//! | `fm.shift_equivariance` | characters shift with the spectral parameter |
//! | `fm.decompose_all_colors` | color decompositions succeed with nonnegative coefficients |
//! | `fm.extremal_multiplicity` | every extremal monomial has multiplicity one |
//! | `lweight.restriction` | `T'` restricted to embedded `Y`-variables is `T` |
//! | `lweight.braid_relations` | extended generators satisfy the braid relations |
//! | `lweight.stabsig` | `sigma` permutes the extremal l-weights with the bar twist |
//! | `lweight.imom` | `Omega` inverts the extremal l-weights with the bar twist |
//! | `lweight.subs_vs_braid` | substitution and braid routes build the same l-weight |
//! | `xseries.route_agreement` | both X-series factorization routes agree |
//! | `xseries.extremal_normalization` | normalized eigenvalue at the extremal l-weight is 1 |
//! | `xseries.oracle_match` | structural eigenvalues match the series oracle exactly |
//! | `xseries.degree_law` | eigenvalue degree equals the twisted weight-gap coefficient |
//! | `xseries.weak_property` | every monomial factors over the twisted base point |
//! | `xseries.polynomiality` | eigenvalues have no poles (THEOREM for e, reflections, w0) |
//! | `verify.extremal_property` | twisted factor exponents are nonpositive (same classes) |

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid::Braid;
use crate::cartan::{CartanData, Node, TypeLabel, WeylElement};
use crate::error::Error;
use crate::fm::{cached_fundamental, decompose_k, fm_fundamental, FmOptions, QCharacter};
use crate::lweight::{
    embed_y, omega_involution, psi_extremal, psi_extremal_braid, sigma, t_prime, PsiMonomial,
};
use crate::xseries::{eigenvalue_on, expected_degree, x_factorization, OracleTables};
use crate::yring::{factor_in_a, make_a, YMonomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckClass {
    Theorem,
    Conjecture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    EvidencePass,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub scope: String,
    pub class: CheckClass,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub elapsed_ms: f64,
}

impl CheckResult {
    pub fn is_theorem_failure(&self) -> bool {
        self.class == CheckClass::Theorem && self.status == CheckStatus::Fail
    }

    pub fn is_failure(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Types swept over the full Weyl group.
    pub full_types: Vec<(TypeLabel, usize)>,
    /// Types swept over a sample of Weyl elements (identity, simple
    /// reflections, the longest element, plus seeded random elements).
    pub sampled_types: Vec<(TypeLabel, usize)>,
    /// Truncation order of the series oracle.
    pub truncation: usize,
    /// Oracle evaluation point, a rational > 1 that is not a root of unity.
    pub q_num: i64,
    pub q_den: i64,
    /// Worker pool size.
    pub jobs: usize,
    pub seed: u64,
    pub random_w_samples: usize,
    /// Cap on oracle comparisons per type.
    pub oracle_samples: usize,
    pub cache_dir: Option<PathBuf>,
    pub max_monomials: usize,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            full_types: vec![
                (TypeLabel::A, 1),
                (TypeLabel::A, 2),
                (TypeLabel::A, 3),
                (TypeLabel::B, 2),
                (TypeLabel::C, 2),
                (TypeLabel::G, 2),
            ],
            sampled_types: vec![(TypeLabel::B, 3), (TypeLabel::C, 3), (TypeLabel::D, 4)],
            truncation: 12,
            q_num: 2,
            q_den: 1,
            jobs: 8,
            seed: 0x71c4_a2be,
            random_w_samples: 50,
            oracle_samples: 200,
            cache_dir: None,
            max_monomials: 1_000_000,
        }
    }
}

impl SuiteConfig {
    /// Restrict the default sweep to an explicit list like `"A2,G2"`.
    /// Groups of order at most 48 get the full sweep.
    pub fn with_types(mut self, spec: &str) -> Result<SuiteConfig, Error> {
        let mut full = Vec::new();
        let mut sampled = Vec::new();
        for part in spec.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (lbl, rk) = part.split_at(1);
            let label = TypeLabel::parse(lbl).ok_or_else(|| Error::InvalidType {
                label: lbl.to_string(),
                rank: 0,
            })?;
            let mut ranks: Vec<usize> = Vec::new();
            if rk.is_empty() {
                // bare letter: every rank of that letter in the default sweep
                let defaults = SuiteConfig::default();
                for &(l, r) in defaults.full_types.iter().chain(&defaults.sampled_types) {
                    if l == label {
                        ranks.push(r);
                    }
                }
                if ranks.is_empty() {
                    return Err(Error::InvalidType {
                        label: lbl.to_string(),
                        rank: 0,
                    });
                }
            } else {
                ranks.push(rk.parse().map_err(|_| Error::InvalidType {
                    label: lbl.to_string(),
                    rank: 0,
                })?);
            }
            for rank in ranks {
                let cd = CartanData::new(label, rank)?;
                if cd.weyl_order() <= 48 {
                    full.push((label, rank));
                } else {
                    sampled.push((label, rank));
                }
            }
        }
        self.full_types = full;
        self.sampled_types = sampled;
        Ok(self)
    }

    fn q(&self) -> BigRational {
        BigRational::new(BigInt::from(self.q_num), BigInt::from(self.q_den))
    }
}

struct TypeData {
    cd: CartanData,
    /// Weyl elements swept for this type (all of W, or the sample).
    sweep: Vec<WeylElement>,
    full: bool,
    fundamentals: Vec<QCharacter>,
}

fn type_key(label: TypeLabel, rank: usize) -> String {
    format!("{label}{rank}")
}

fn build_type(
    label: TypeLabel,
    rank: usize,
    full: bool,
    config: &SuiteConfig,
) -> Result<TypeData, Error> {
    let cd = CartanData::new(label, rank)?;
    let target = config.random_w_samples + 2 + rank;
    // a sampled type whose group fits inside the sample budget just gets the
    // whole group
    let sweep = if full || cd.weyl_order() <= target as u64 {
        cd.enumerate_weyl()
    } else {
        let mut sweep = vec![cd.identity()];
        for i in cd.nodes() {
            sweep.push(cd.simple_reflection(i)?);
        }
        sweep.push(cd.longest_element().clone());
        let mut rng = ChaCha8Rng::seed_from_u64(
            config.seed ^ ((rank as u64) << 8) ^ (label.to_string().as_bytes()[0] as u64),
        );
        let max_len = cd.longest_element().len();
        let mut attempts = 0;
        while sweep.len() < target && attempts < 10_000 {
            attempts += 1;
            let len = rng.random_range(1..=max_len);
            let word: Vec<Node> = (0..len).map(|_| rng.random_range(1..=rank)).collect();
            let w = cd.reduce_word(&word)?;
            if !sweep.contains(&w) {
                sweep.push(w);
            }
        }
        sweep
    };
    let opts = FmOptions {
        max_monomials: config.max_monomials,
    };
    let mut fundamentals = Vec::new();
    for i in cd.nodes() {
        fundamentals.push(cached_fundamental(
            &cd,
            i,
            0,
            config.cache_dir.as_deref(),
            &opts,
        )?);
    }
    Ok(TypeData {
        cd,
        sweep,
        full,
        fundamentals,
    })
}

/// `w` classes for the extremal monomial property: proved for the identity,
/// the simple reflections and the longest element; conjectural otherwise.
pub fn extremal_class(cd: &CartanData, w: &WeylElement) -> CheckClass {
    if w.is_identity() || w.len() == 1 || w == cd.longest_element() {
        CheckClass::Theorem
    } else {
        CheckClass::Conjecture
    }
}

fn qc_scope(qc: &QCharacter) -> String {
    format!(
        "{}{}, node {}",
        qc.meta().label,
        qc.meta().rank,
        qc.meta().node
    )
}

fn finish(
    check_id: &str,
    scope: String,
    class: CheckClass,
    started: Instant,
    ok: bool,
    witness: Option<String>,
) -> CheckResult {
    let status = match (ok, class) {
        (true, CheckClass::Theorem) => CheckStatus::Pass,
        (true, CheckClass::Conjecture) => CheckStatus::EvidencePass,
        (false, _) => CheckStatus::Fail,
    };
    CheckResult {
        check_id: check_id.to_string(),
        scope,
        class,
        status,
        witness: if ok { None } else { witness },
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
    }
}

/// Extremal monomial property at `w`: every monomial of the character
/// factors over `T_w(highest)` with nonpositive twisted-root exponents.
/// THEOREM class for the identity, simple reflections and the longest
/// element; CONJECTURE class otherwise.
pub fn check_extremal_property(braid: &Braid<'_>, qc: &QCharacter, w: &WeylElement) -> CheckResult {
    let started = Instant::now();
    let cd = braid.cartan();
    let class = extremal_class(cd, w);
    let anchor = braid.t_w(w, qc.highest());
    let mut witness = None;
    let ok = qc
        .poly()
        .monomials()
        .all(|m| match braid.factor_in_aw(m, &anchor, w) {
            Some(e) if e.values().all(|&v| v <= 0) => true,
            _ => {
                witness = Some(m.to_string());
                false
            }
        });
    finish(
        "verify.extremal_property",
        format!("{}, w={w}", qc_scope(qc)),
        class,
        started,
        ok,
        witness,
    )
}

/// Weak (Laurent) property at `w`: every monomial factors over
/// `T_w(highest)` with twisted-root exponents of any sign. THEOREM class.
pub fn check_weak_property(braid: &Braid<'_>, qc: &QCharacter, w: &WeylElement) -> CheckResult {
    let started = Instant::now();
    let anchor = braid.t_w(w, qc.highest());
    let mut witness = None;
    let ok = qc.poly().monomials().all(|m| {
        if braid.factor_in_aw(m, &anchor, w).is_some() {
            true
        } else {
            witness = Some(m.to_string());
            false
        }
    });
    finish(
        "xseries.weak_property",
        format!("{}, w={w}", qc_scope(qc)),
        CheckClass::Theorem,
        started,
        ok,
        witness,
    )
}

/// Extremal multiplicity one: for every Weyl element, the extremal monomial
/// `T_w(highest)` occurs with coefficient exactly 1. THEOREM class. The
/// group is enumerated in full, so this is intended for desk-scale ranks.
pub fn check_extremal_multiplicity(braid: &Braid<'_>, qc: &QCharacter) -> CheckResult {
    let started = Instant::now();
    let cd = braid.cartan();
    let mut witness = None;
    let ok = cd.enumerate_weyl().iter().all(|w| {
        let extremal = braid.t_w(w, qc.highest());
        if qc.poly().coeff(&extremal) == 1 {
            true
        } else {
            witness = Some(format!("w={w}, T_w(highest)={extremal}"));
            false
        }
    });
    finish(
        "fm.extremal_multiplicity",
        qc_scope(qc),
        CheckClass::Theorem,
        started,
        ok,
        witness,
    )
}

type Outcome = (CheckStatus, Option<String>);
type JobBody<'a> = Box<dyn FnOnce() -> Outcome + Send + 'a>;
type RawResult = (usize, CheckStatus, Option<String>, Duration);

struct Job<'a> {
    check_id: String,
    scope: String,
    class: CheckClass,
    body: JobBody<'a>,
}

fn pass_or(class: CheckClass, ok: bool, witness: Option<String>) -> Outcome {
    if ok {
        match class {
            CheckClass::Theorem => (CheckStatus::Pass, None),
            CheckClass::Conjecture => (CheckStatus::EvidencePass, None),
        }
    } else {
        (CheckStatus::Fail, witness)
    }
}

fn random_monomial(cd: &CartanData, rng: &mut ChaCha8Rng) -> YMonomial {
    let mut m = YMonomial::one();
    let vars = rng.random_range(1..=4);
    for _ in 0..vars {
        let i = rng.random_range(1..=cd.rank());
        let r = rng.random_range(-4..=4);
        let e = loop {
            let e = rng.random_range(-3..=3);
            if e != 0 {
                break e;
            }
        };
        m.mul_var(i, r, e);
    }
    m
}

/// Run every registered check over the configured sweep.
///
/// Results come back sorted by `(check_id, scope)` regardless of worker
/// interleaving; reruns with the same config produce identical reports.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<CheckResult>, Error> {
    let mut data: Vec<TypeData> = Vec::new();
    for &(label, rank) in &config.full_types {
        data.push(build_type(label, rank, true, config)?);
    }
    for &(label, rank) in &config.sampled_types {
        data.push(build_type(label, rank, false, config)?);
    }

    let braids: Vec<Braid<'_>> = data.iter().map(|t| Braid::new(&t.cd)).collect();

    let mut jobs: Vec<Job<'_>> = Vec::new();
    for (t, braid) in data.iter().zip(&braids) {
        register_type_jobs(t, braid, config, &mut jobs);
    }

    let results = run_jobs(jobs, config.jobs.max(1));
    Ok(results)
}

fn run_jobs(jobs: Vec<Job<'_>>, workers: usize) -> Vec<CheckResult> {
    let metas: Vec<(String, String, CheckClass)> = jobs
        .iter()
        .map(|j| (j.check_id.clone(), j.scope.clone(), j.class))
        .collect();
    let slots: Vec<Mutex<Option<JobBody<'_>>>> =
        jobs.into_iter().map(|j| Mutex::new(Some(j.body))).collect();
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<RawResult>> = Mutex::new(Vec::new());

    std::thread::scope(|scope| {
        for _ in 0..workers.min(slots.len().max(1)) {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::SeqCst);
                if idx >= slots.len() {
                    break;
                }
                let body = slots[idx].lock().unwrap().take().expect("job taken once");
                let start = Instant::now();
                let (status, witness) = body();
                let elapsed = start.elapsed();
                results
                    .lock()
                    .unwrap()
                    .push((idx, status, witness, elapsed));
            });
        }
    });

    let mut raw = results.into_inner().unwrap();
    raw.sort_by_key(|(idx, ..)| *idx);
    let mut out: Vec<CheckResult> = raw
        .into_iter()
        .map(|(idx, status, witness, elapsed)| {
            let (check_id, scope, class) = metas[idx].clone();
            CheckResult {
                check_id,
                scope,
                class,
                status,
                witness,
                elapsed_ms: elapsed.as_secs_f64() * 1e3,
            }
        })
        .collect();
    out.sort_by(|a, b| (&a.check_id, &a.scope).cmp(&(&b.check_id, &b.scope)));
    out
}

fn register_type_jobs<'a>(
    t: &'a TypeData,
    braid: &'a Braid<'a>,
    config: &SuiteConfig,
    jobs: &mut Vec<Job<'a>>,
) {
    let cd = &t.cd;
    let key = type_key(cd.label(), cd.rank());
    let seed = config.seed;
    let truncation = config.truncation;
    let q = config.q();
    let oracle_samples = config.oracle_samples;

    let push =
        |jobs: &mut Vec<Job<'a>>, id: &str, scope: String, class: CheckClass, body: JobBody<'a>| {
            jobs.push(Job {
                check_id: id.to_string(),
                scope,
                class,
                body,
            });
        };

    // --- cartan ---

    push(
        jobs,
        "cartan.pair_order",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            for i in cd.nodes() {
                for j in cd.nodes() {
                    if i == j {
                        continue;
                    }
                    let expected = match cd.c(i, j) * cd.c(j, i) {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        3 => 6,
                        _ => return (CheckStatus::Fail, Some(format!("pair ({i},{j})"))),
                    };
                    let prod = cd.multiply(
                        &cd.simple_reflection(i).unwrap(),
                        &cd.simple_reflection(j).unwrap(),
                    );
                    let mut acc = cd.identity();
                    for _ in 0..expected {
                        acc = cd.multiply(&acc, &prod);
                    }
                    if !acc.is_identity() {
                        return (CheckStatus::Fail, Some(format!("pair ({i},{j})")));
                    }
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    if cd.rank() <= 3 && t.full {
        push(
            jobs,
            "cartan.length_descent",
            key.clone(),
            CheckClass::Theorem,
            Box::new(move || {
                for w in cd.enumerate_weyl() {
                    for i in cd.nodes() {
                        let ws = cd.multiply(&w, &cd.simple_reflection(i).unwrap());
                        let up = ws.len() == w.len() + 1;
                        let down = ws.len() + 1 == w.len();
                        if !(up || down) {
                            return (CheckStatus::Fail, Some(format!("w={w}, i={i}")));
                        }
                        if up != cd.sends_simple_root_positive(&w, i) {
                            return (CheckStatus::Fail, Some(format!("w={w}, i={i}")));
                        }
                    }
                }
                (CheckStatus::Pass, None)
            }),
        );
    }

    if cd.label() == TypeLabel::A && cd.rank() == 3 {
        push(
            jobs,
            "cartan.coset_fix",
            key.clone(),
            CheckClass::Theorem,
            Box::new(move || {
                let all = cd.enumerate_weyl();
                for i in cd.nodes() {
                    let omega = cd.fundamental_weight(i);
                    let mut by_image: HashMap<Vec<i64>, Vec<&WeylElement>> = HashMap::new();
                    for w in &all {
                        by_image
                            .entry(w.act(&omega).coords().to_vec())
                            .or_default()
                            .push(w);
                    }
                    for group in by_image.values() {
                        for pair in group.windows(2) {
                            let u = cd.multiply(&cd.inverse(pair[0]), pair[1]);
                            if u.act(&omega) != omega {
                                return (
                                    CheckStatus::Fail,
                                    Some(format!("w={}, w'={}", pair[0], pair[1])),
                                );
                            }
                        }
                    }
                }
                (CheckStatus::Pass, None)
            }),
        );
    }

    // --- yring ---

    push(
        jobs,
        "yring.make_a_shift",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            for i in cd.nodes() {
                for r in -2..=2 {
                    for s in -3..=3 {
                        if make_a(cd, i, r).shifted(s) != make_a(cd, i, r + s) {
                            return (CheckStatus::Fail, Some(format!("i={i}, r={r}, s={s}")));
                        }
                    }
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    push(
        jobs,
        "yring.factor_roundtrip",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xfac7);
            for _ in 0..25 {
                let m = random_monomial(cd, &mut rng);
                for i in cd.nodes() {
                    for k in [-3, -1, 1, 2, 3] {
                        let r = rng.random_range(-3..=3);
                        let shifted = m.mul(&make_a(cd, i, r).pow(k));
                        match factor_in_a(cd, &shifted, &m) {
                            Some(e) if e == [((i, r), k)].into_iter().collect() => {}
                            other => {
                                return (
                                    CheckStatus::Fail,
                                    Some(format!("m={m}, A_({i},{r})^{k}: got {other:?}")),
                                )
                            }
                        }
                    }
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    push(
        jobs,
        "yring.factor_weight",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            for qc in &t.fundamentals {
                for m in qc.poly().monomials() {
                    let Some(e) = factor_in_a(cd, m, qc.highest()) else {
                        return (CheckStatus::Fail, Some(m.to_string()));
                    };
                    let mut weight = qc.highest().weight(cd);
                    for ((i, _), c) in &e {
                        weight = weight.add(&cd.simple_root(*i).scaled(*c as i64));
                    }
                    if weight != m.weight(cd) {
                        return (CheckStatus::Fail, Some(m.to_string()));
                    }
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    // --- braid ---

    push(
        jobs,
        "braid.relations",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            for i in cd.nodes() {
                for j in cd.nodes() {
                    if i >= j {
                        continue;
                    }
                    let order = match cd.c(i, j) * cd.c(j, i) {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        3 => 6,
                        _ => unreachable!(),
                    };
                    for k in cd.nodes() {
                        for r in -4..=4 {
                            let m = YMonomial::var(k, r);
                            let mut lhs = m.clone();
                            let mut rhs = m.clone();
                            for step in 0..order {
                                let (gl, gr) = if step % 2 == 0 { (i, j) } else { (j, i) };
                                lhs = braid.t(gl, &lhs);
                                rhs = braid.t(gr, &rhs);
                            }
                            if lhs != rhs {
                                return (
                                    CheckStatus::Fail,
                                    Some(format!("pair ({i},{j}) on Y_({k},{r})")),
                                );
                            }
                        }
                    }
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    push(
        jobs,
        "braid.intertwine",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1b7e);
            let monomials: Vec<YMonomial> = (0..8).map(|_| random_monomial(cd, &mut rng)).collect();
            for w in &t.sweep {
                for m in &monomials {
                    if braid.t_w(w, m).weight(cd) != w.act(&m.weight(cd)) {
                        return (CheckStatus::Fail, Some(format!("w={w}, m={m}")));
                    }
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    push(
        jobs,
        "braid.multiplicative",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3u64);
            for w in &t.sweep {
                for _ in 0..4 {
                    let m = random_monomial(cd, &mut rng);
                    let n = random_monomial(cd, &mut rng);
                    if braid.t_w(w, &m.mul(&n)) != braid.t_w(w, &m).mul(&braid.t_w(w, &n)) {
                        return (CheckStatus::Fail, Some(format!("w={w}")));
                    }
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    if t.full {
        push(
            jobs,
            "braid.extremal_well_defined",
            key.clone(),
            CheckClass::Theorem,
            Box::new(move || {
                for i in cd.nodes() {
                    let omega = cd.fundamental_weight(i);
                    let mut images: HashMap<Vec<i64>, (WeylElement, YMonomial)> = HashMap::new();
                    for w in &t.sweep {
                        let target = w.act(&omega).coords().to_vec();
                        let value = braid.y_extremal(w, i, 0);
                        match images.get(&target) {
                            None => {
                                images.insert(target, (w.clone(), value));
                            }
                            Some((w0, expect)) => {
                                if *expect != value {
                                    return (
                                        CheckStatus::Fail,
                                        Some(format!("i={i}: T_{w0} vs T_{w}")),
                                    );
                                }
                            }
                        }
                    }
                }
                (CheckStatus::Pass, None)
            }),
        );
    }

    push(
        jobs,
        "braid.qroot_closure",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            for w in &t.sweep {
                for i in cd.nodes() {
                    for r in -2..=2 {
                        let tw = braid.twisted_root(w, i, r);
                        if factor_in_a(cd, &tw.value, &YMonomial::one()).is_none() {
                            return (CheckStatus::Fail, Some(format!("w={w}, A_({i},{r})")));
                        }
                    }
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    // --- fm ---

    push(
        jobs,
        "fm.qchar_invariants",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            for qc in &t.fundamentals {
                let dom = qc.dominant_monomials();
                if dom.len() != 1 || dom[0].0 != qc.highest() || dom[0].1 != 1 {
                    return (
                        CheckStatus::Fail,
                        Some(format!("node {}: dominant set", qc.meta().node)),
                    );
                }
                for m in qc.poly().monomials() {
                    match factor_in_a(cd, m, qc.highest()) {
                        Some(e) if e.values().all(|&v| v <= 0) => {}
                        _ => return (CheckStatus::Fail, Some(m.to_string())),
                    }
                }
                let weights = qc.weight_multiset(cd);
                for k in cd.nodes() {
                    let s = cd.simple_reflection(k).unwrap();
                    for (wt, mult) in &weights {
                        if weights.get(&s.act(wt)).copied().unwrap_or(0) != *mult {
                            return (
                                CheckStatus::Fail,
                                Some(format!("node {}: weight {wt}", qc.meta().node)),
                            );
                        }
                    }
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    push(
        jobs,
        "fm.shift_equivariance",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            let opts = FmOptions::default();
            for qc in &t.fundamentals {
                let i = qc.meta().node;
                let direct = match fm_fundamental(cd, i, 3, &opts) {
                    Ok(qc) => qc,
                    Err(e) => return (CheckStatus::Fail, Some(e.to_string())),
                };
                if direct.poly() != &qc.poly().shifted(3) {
                    return (CheckStatus::Fail, Some(format!("node {i}")));
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    push(
        jobs,
        "fm.decompose_all_colors",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            for qc in &t.fundamentals {
                for k in cd.nodes() {
                    match decompose_k(cd, qc.poly(), k) {
                        Ok(parts) => {
                            if parts.iter().any(|(_, l)| *l < 0) {
                                return (
                                    CheckStatus::Fail,
                                    Some(format!("node {}, color {k}", qc.meta().node)),
                                );
                            }
                        }
                        Err(e) => {
                            return (
                                CheckStatus::Fail,
                                Some(format!("node {}, color {k}: {e}", qc.meta().node)),
                            )
                        }
                    }
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    push(
        jobs,
        "fm.extremal_multiplicity",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            for qc in &t.fundamentals {
                let r = check_extremal_multiplicity(braid, qc);
                if r.is_failure() {
                    return (CheckStatus::Fail, r.witness);
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    // --- lweight ---

    push(
        jobs,
        "lweight.restriction",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            for i in cd.nodes() {
                for j in cd.nodes() {
                    for r in -2..=2 {
                        let y = YMonomial::var(j, r);
                        if t_prime(cd, i, &embed_y(cd, &y)) != embed_y(cd, &braid.t(i, &y)) {
                            return (CheckStatus::Fail, Some(format!("T'_{i} on Y_({j},{r})")));
                        }
                    }
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    push(
        jobs,
        "lweight.braid_relations",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            for i in cd.nodes() {
                for j in cd.nodes() {
                    if i >= j {
                        continue;
                    }
                    let order = match cd.c(i, j) * cd.c(j, i) {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        3 => 6,
                        _ => unreachable!(),
                    };
                    for k in cd.nodes() {
                        for r in -3..=3 {
                            let p = PsiMonomial::psi_var(k, r, cd.rank());
                            let mut lhs = p.clone();
                            let mut rhs = p.clone();
                            for step in 0..order {
                                let (gl, gr) = if step % 2 == 0 { (i, j) } else { (j, i) };
                                lhs = t_prime(cd, gl, &lhs);
                                rhs = t_prime(cd, gr, &rhs);
                            }
                            if lhs != rhs {
                                return (
                                    CheckStatus::Fail,
                                    Some(format!("pair ({i},{j}) on Psi_({k},{r})")),
                                );
                            }
                        }
                    }
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    push(
        jobs,
        "lweight.stabsig",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            let shift = (cd.r_vee() * cd.h_vee()) as i32;
            for w in &t.sweep {
                for i in cd.nodes() {
                    for r in [-1, 0, 2] {
                        let lhs = match psi_extremal(braid, w, i, r) {
                            Ok(p) => sigma(&p),
                            Err(e) => return (CheckStatus::Fail, Some(e.to_string())),
                        };
                        let ww0 = cd.multiply(w, cd.longest_element());
                        let rhs = match psi_extremal(braid, &ww0, cd.bar(i), -r + shift) {
                            Ok(p) => p,
                            Err(e) => return (CheckStatus::Fail, Some(e.to_string())),
                        };
                        if lhs != rhs {
                            return (CheckStatus::Fail, Some(format!("w={w}, i={i}, r={r}")));
                        }
                    }
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    push(
        jobs,
        "lweight.imom",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            let shift = (cd.r_vee() * cd.h_vee()) as i32;
            for w in &t.sweep {
                for i in cd.nodes() {
                    for r in [-1, 0, 2] {
                        let lhs = match psi_extremal(braid, w, i, r) {
                            Ok(p) => omega_involution(&p),
                            Err(e) => return (CheckStatus::Fail, Some(e.to_string())),
                        };
                        let ww0 = cd.multiply(w, cd.longest_element());
                        let rhs = match psi_extremal(braid, &ww0, cd.bar(i), -r + shift) {
                            Ok(p) => p.inverse(),
                            Err(e) => return (CheckStatus::Fail, Some(e.to_string())),
                        };
                        if lhs != rhs {
                            return (CheckStatus::Fail, Some(format!("w={w}, i={i}, r={r}")));
                        }
                    }
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    push(
        jobs,
        "lweight.subs_vs_braid",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            for w in &t.sweep {
                for i in cd.nodes() {
                    let subs = match psi_extremal(braid, w, i, 0) {
                        Ok(p) => p,
                        Err(e) => return (CheckStatus::Fail, Some(e.to_string())),
                    };
                    if subs != psi_extremal_braid(cd, w, i, 0) {
                        return (CheckStatus::Fail, Some(format!("w={w}, i={i}")));
                    }
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    // --- xseries ---

    push(
        jobs,
        "xseries.route_agreement",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            for w in &t.sweep {
                for i in cd.nodes() {
                    if let Err(e) = x_factorization(braid, w, i) {
                        return (CheckStatus::Fail, Some(e.to_string()));
                    }
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    push(
        jobs,
        "xseries.extremal_normalization",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            for qc in &t.fundamentals {
                for w in &t.sweep {
                    for i in cd.nodes() {
                        let ext = braid.t_w(w, qc.highest());
                        match eigenvalue_on(braid, w, i, &ext, qc.highest()) {
                            Some(rs) if rs.is_constant_one() => {}
                            _ => {
                                return (
                                    CheckStatus::Fail,
                                    Some(format!("node {}, w={w}, i={i}", qc.meta().node)),
                                )
                            }
                        }
                    }
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    push(
        jobs,
        "xseries.oracle_match",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            let e = cd.identity();
            let tables = match OracleTables::new(cd, &q, truncation) {
                Ok(t) => t,
                Err(err) => return (CheckStatus::Fail, Some(err.to_string())),
            };
            let mut triples = Vec::new();
            for qc in &t.fundamentals {
                for m in qc.poly().monomials() {
                    for i in cd.nodes() {
                        triples.push((qc, m, i));
                    }
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0bac1e);
            triples.shuffle(&mut rng);
            triples.truncate(oracle_samples);
            for (qc, m, i) in triples {
                let Some(rs) = eigenvalue_on(braid, &e, i, m, qc.highest()) else {
                    return (CheckStatus::Fail, Some(m.to_string()));
                };
                let structural = rs.expand(&q, truncation);
                let num = tables.pairing(i, m);
                let den = tables.pairing(i, qc.highest());
                if num.mul(&den.inverse()) != structural {
                    return (
                        CheckStatus::Fail,
                        Some(format!("node {}, i={i}, m={m}", qc.meta().node)),
                    );
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    push(
        jobs,
        "xseries.degree_law",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            for qc in &t.fundamentals {
                for w in &t.sweep {
                    for m in qc.poly().monomials() {
                        for i in cd.nodes() {
                            let Some(rs) = eigenvalue_on(braid, w, i, m, qc.highest()) else {
                                return (CheckStatus::Fail, Some(format!("w={w}, m={m}")));
                            };
                            let Some(deg) = expected_degree(braid, w, i, m, qc.highest()) else {
                                return (CheckStatus::Fail, Some(format!("w={w}, m={m}")));
                            };
                            if rs.degree() != deg {
                                return (CheckStatus::Fail, Some(format!("w={w}, i={i}, m={m}")));
                            }
                        }
                    }
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    push(
        jobs,
        "xseries.weak_property",
        key.clone(),
        CheckClass::Theorem,
        Box::new(move || {
            for qc in &t.fundamentals {
                for w in &t.sweep {
                    let r = check_weak_property(braid, qc, w);
                    if r.is_failure() {
                        return (CheckStatus::Fail, r.witness.map(|m| format!("w={w}, {m}")));
                    }
                }
            }
            (CheckStatus::Pass, None)
        }),
    );

    // --- extremal property / polynomiality, classified per w ---

    for w in &t.sweep {
        let class = extremal_class(cd, w);
        push(
            jobs,
            "verify.extremal_property",
            format!("{key}, w={w}"),
            class,
            Box::new(move || {
                for qc in &t.fundamentals {
                    let r = check_extremal_property(braid, qc, w);
                    if r.is_failure() {
                        let witness = r.witness.map(|m| format!("node {}, m={m}", qc.meta().node));
                        return pass_or(class, false, witness);
                    }
                }
                pass_or(class, true, None)
            }),
        );

        push(
            jobs,
            "xseries.polynomiality",
            format!("{key}, w={w}"),
            class,
            Box::new(move || {
                for qc in &t.fundamentals {
                    let report = crate::xseries::polynomiality_verdict(braid, w, qc);
                    if !report.all_polynomial {
                        let witness = report
                            .witnesses
                            .first()
                            .map(|m| format!("node {}, m={m}", qc.meta().node));
                        return pass_or(class, false, witness);
                    }
                }
                pass_or(class, true, None)
            }),
        );
    }
}

/// Does any THEOREM-class check fail?
pub fn has_theorem_failure(results: &[CheckResult]) -> bool {
    results.iter().any(|r| r.is_theorem_failure())
}

/// One JSON document per line, in report order.
pub fn render_jsonl(results: &[CheckResult]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&serde_json::to_string(r).expect("serializable"));
        out.push('\n');
    }
    out
}

/// Human-readable summary: one row per (check id, class), with failures
/// listed below.
pub fn render_summary(results: &[CheckResult]) -> String {
    let mut groups: Vec<(&str, CheckClass)> = results
        .iter()
        .map(|r| (r.check_id.as_str(), r.class))
        .collect();
    groups.sort();
    groups.dedup();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<32} {:<11} {:>5} {:>5} {:>9}",
        "check", "class", "pass", "fail", "time(ms)"
    );
    for (id, class) in groups {
        let rows: Vec<&CheckResult> = results
            .iter()
            .filter(|r| r.check_id == id && r.class == class)
            .collect();
        let label = match class {
            CheckClass::Theorem => "theorem",
            CheckClass::Conjecture => "conjecture",
        };
        let pass = rows.iter().filter(|r| !r.is_failure()).count();
        let fail = rows.len() - pass;
        let ms: f64 = rows.iter().map(|r| r.elapsed_ms).sum();
        let _ = writeln!(out, "{id:<32} {label:<11} {pass:>5} {fail:>5} {ms:>9.1}");
    }
    let failures: Vec<&CheckResult> = results.iter().filter(|r| r.is_failure()).collect();
    if failures.is_empty() {
        let _ = writeln!(out, "\nall checks passed");
    } else {
        let _ = writeln!(out, "\nfailures:");
        for f in failures {
            let _ = writeln!(
                out,
                "  [{}] {} ({}) witness: {}",
                match f.class {
                    CheckClass::Theorem => "THEOREM",
                    CheckClass::Conjecture => "CONJECTURE",
                },
                f.check_id,
                f.scope,
                f.witness.as_deref().unwrap_or("-")
            );
        }
    }
    out
}
