//! q-characters of fundamental representations.
//!
//! The closure algorithm works color by color: a `k`-dominant monomial lifts
//! to the character of the corresponding simple sl2 module (run in the
//! deformation parameter `q_k`), with each sl2 descent factor replaced by an
//! inverse root monomial `A_{k,b}^{-1}`. A worklist in decreasing weight
//! height assigns every monomial the maximum multiplicity demanded across
//! colors, then re-lifts the dominant residue. On fundamental highest
//! monomials the closure is finite and every color decomposition is
//! consistent.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanData, Node, TypeLabel, Weight};
use crate::error::Error;
use crate::yring::{make_a, YMonomial, YPolynomial};

/// Version stamp written into cache documents; bump when the construction
/// changes in any observable way.
pub const ALGORITHM_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QCharMeta {
    pub label: TypeLabel,
    pub rank: usize,
    pub node: Node,
    pub shift: i32,
}

/// The q-character of a fundamental representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QCharacter {
    highest: YMonomial,
    poly: YPolynomial,
    meta: QCharMeta,
}

impl QCharacter {
    /// Assemble a character from raw parts without validation. Intended for
    /// tests and for loading externally produced data; the invariants can be
    /// checked afterwards with the verification suite.
    pub fn from_parts(highest: YMonomial, poly: YPolynomial, meta: QCharMeta) -> QCharacter {
        QCharacter {
            highest,
            poly,
            meta,
        }
    }

    pub fn highest(&self) -> &YMonomial {
        &self.highest
    }

    pub fn poly(&self) -> &YPolynomial {
        &self.poly
    }

    pub fn meta(&self) -> &QCharMeta {
        &self.meta
    }

    /// Dimension of the underlying module: total multiplicity.
    pub fn dim(&self) -> i64 {
        self.poly.total_mult()
    }

    pub fn shifted(&self, s: i32) -> QCharacter {
        QCharacter {
            highest: self.highest.shifted(s),
            poly: self.poly.shifted(s),
            meta: QCharMeta {
                shift: self.meta.shift + s,
                ..self.meta.clone()
            },
        }
    }

    pub fn dominant_monomials(&self) -> Vec<(&YMonomial, i64)> {
        self.poly.iter().filter(|(m, _)| m.is_dominant()).collect()
    }

    /// Multiset of ordinary weights, as weight -> total multiplicity.
    pub fn weight_multiset(&self, cd: &CartanData) -> BTreeMap<Weight, i64> {
        let mut out: BTreeMap<Weight, i64> = BTreeMap::new();
        for (m, c) in self.poly.iter() {
            *out.entry(m.weight(cd)).or_insert(0) += c;
        }
        out
    }
}

/// Tunables for the closure run.
#[derive(Debug, Clone)]
pub struct FmOptions {
    /// Hard cap on the number of distinct monomials; exceeding it signals a
    /// non-fundamental input (or a bug) rather than a long computation.
    pub max_monomials: usize,
}

impl Default for FmOptions {
    fn default() -> FmOptions {
        FmOptions {
            max_monomials: 1_000_000,
        }
    }
}

/// Character of the length-`k` sl2 string starting at `q^r`:
/// `k+1` monomials obtained from `Y_{1,r} Y_{1,r+2} ... Y_{1,r+2(k-1)}` by
/// successively multiplying `A_{1,r+2(k-t)-1}^{-1}`.
pub fn sl2_string_char(r: i32, k: usize) -> YPolynomial {
    let mut m = YMonomial::one();
    for t in 0..k {
        m.mul_var(1, r + 2 * t as i32, 1);
    }
    let mut out = YPolynomial::zero();
    out.add_term(m.clone(), 1);
    for t in 0..k {
        // descent position for step t: r + 2(k - t) - 1
        let c = r + 2 * (k - t) as i32 - 1;
        m.mul_var(1, c - 1, -1);
        m.mul_var(1, c + 1, -1);
        out.add_term(m.clone(), 1);
    }
    out
}

fn extract_strings(params: &mut Vec<i32>, step: i32) -> Vec<(i32, usize)> {
    // greedy maximal-string extraction, lowest parameter first
    params.sort_unstable();
    let mut strings = Vec::new();
    while !params.is_empty() {
        let start = params[0];
        let mut len = 0usize;
        let mut next = start;
        while let Some(pos) = params.iter().position(|&p| p == next) {
            params.remove(pos);
            len += 1;
            next += step;
        }
        strings.push((start, len));
    }
    strings
}

/// q-character of the simple sl2 module with the given dominant monomial:
/// decompose the spectral parameters into maximal strings (pairwise in
/// general position) and multiply the string characters.
pub fn sl2_qchar(m: &YMonomial) -> Result<YPolynomial, Error> {
    if !m.is_dominant() {
        return Err(Error::NotDominant);
    }
    if m.iter().any(|(i, _, _)| i != 1) {
        return Err(Error::NotSingleNode { k: 1 });
    }
    let mut params: Vec<i32> = Vec::new();
    for (_, r, e) in m.iter() {
        for _ in 0..e {
            params.push(r);
        }
    }
    let mut out = YPolynomial::monomial(YMonomial::one());
    for (start, len) in extract_strings(&mut params, 2) {
        out = out.mul(&sl2_string_char(start, len));
    }
    Ok(out)
}

/// The lift `L_k(M)` of a `k`-dominant monomial: the color-`k` part is read
/// as a dominant monomial over `U_{q_k}(sl2-hat)` (strings step by `q_k^2`),
/// and every sl2 descent factor `(Y_{k,b q_k^{-1}} Y_{k,b q_k})^{-1}` is
/// replaced by `A_{k,b}^{-1}` of the ambient type.
pub fn lift_lk(cd: &CartanData, m: &YMonomial, k: Node) -> Result<YPolynomial, Error> {
    cd.check_node(k)?;
    if !m.is_k_dominant(k) {
        return Err(Error::NotKDominant { k });
    }
    let dk = cd.d(k) as i32;
    let mut params: Vec<i32> = Vec::new();
    for (i, r, e) in m.iter() {
        if i == k {
            for _ in 0..e {
                params.push(r);
            }
        }
    }
    let mut out = YPolynomial::monomial(YMonomial::one());
    for (start, len) in extract_strings(&mut params, 2 * dk) {
        let mut ladder = YPolynomial::zero();
        let mut desc = YMonomial::one();
        ladder.add_term(desc.clone(), 1);
        for t in 0..len {
            let c = start + (2 * (len - t) as i32 - 1) * dk;
            desc = desc.mul(&make_a(cd, k, c).inverse());
            ladder.add_term(desc.clone(), 1);
        }
        out = out.mul(&ladder);
    }
    Ok(out.mul_monomial(m))
}

/// Height functional used to order monomials top-down: the sum of the
/// alpha-basis coordinates of the weight (rational in general), which drops
/// by exactly 1 per inverse root monomial.
fn weight_height(cd: &CartanData, m: &YMonomial) -> num_rational::Ratio<i64> {
    cd.alpha_coords(&m.weight(cd))
        .expect("weights have rational alpha coordinates")
        .into_iter()
        .sum()
}

/// Decompose a polynomial as a nonnegative combination of lifts
/// `sum_M lambda_k(M) L_k(M)` over `k`-dominant `M`, by greedy top-down
/// subtraction. Fails on the first residual monomial that is not
/// `k`-dominant or has negative multiplicity.
pub fn decompose_k(
    cd: &CartanData,
    p: &YPolynomial,
    k: Node,
) -> Result<Vec<(YMonomial, i64)>, Error> {
    cd.check_node(k)?;
    let mut residual = p.clone();
    let mut out = Vec::new();
    while !residual.is_zero() {
        let top = residual
            .monomials()
            .max_by(|a, b| {
                weight_height(cd, a)
                    .cmp(&weight_height(cd, b))
                    .then_with(|| b.cmp(a))
            })
            .expect("nonempty polynomial")
            .clone();
        let lambda = residual.coeff(&top);
        if lambda < 0 || !top.is_k_dominant(k) {
            return Err(Error::Decomposition {
                witness: top.to_string(),
            });
        }
        let lift = lift_lk(cd, &top, k)?;
        residual = residual.sub(&lift.scaled(lambda));
        out.push((top, lambda));
    }
    Ok(out)
}

/// The q-character of the fundamental representation `L(Y_{i,q^r})`.
///
/// Worklist closure in decreasing weight height. A popped monomial gets the
/// maximum multiplicity demanded by the color lifts emitted so far; for each
/// color where it is dominant, the uncovered remainder is lifted and the
/// demands recorded. A non-`k`-dominant monomial must already be fully
/// covered in color `k`, otherwise the input was not fundamental.
pub fn fm_fundamental(
    cd: &CartanData,
    i: Node,
    r: i32,
    opts: &FmOptions,
) -> Result<QCharacter, Error> {
    cd.check_node(i)?;
    let top = YMonomial::var(i, r);
    let top_weight = top.weight(cd);

    let height_of = |m: &YMonomial| -> i64 {
        let diff = top_weight.sub(&m.weight(cd));
        cd.alpha_coords_integral(&diff)
            .expect("monomials of the closure differ from the top by roots")
            .into_iter()
            .sum()
    };

    let mut pending: BTreeSet<(i64, YMonomial)> = BTreeSet::new();
    let mut covered: Vec<HashMap<YMonomial, i64>> = vec![HashMap::new(); cd.rank()];
    let mut poly = YPolynomial::zero();
    pending.insert((0, top.clone()));

    while let Some(entry) = pending.iter().next().cloned() {
        pending.remove(&entry);
        let (_, m) = entry;
        let mult = if m == top {
            1
        } else {
            (1..=cd.rank())
                .map(|k| covered[k - 1].get(&m).copied().unwrap_or(0))
                .max()
                .unwrap_or(0)
        };
        if mult <= 0 {
            return Err(Error::Inconsistent {
                witness: m.to_string(),
            });
        }
        poly.add_term(m.clone(), mult);
        if poly.num_terms() > opts.max_monomials {
            return Err(Error::SizeCap(opts.max_monomials));
        }
        for k in cd.nodes() {
            let c = covered[k - 1].get(&m).copied().unwrap_or(0);
            if m.is_k_dominant(k) {
                let lambda = mult - c;
                if lambda < 0 {
                    return Err(Error::Inconsistent {
                        witness: m.to_string(),
                    });
                }
                if lambda == 0 {
                    continue;
                }
                let lift = lift_lk(cd, &m, k)?;
                for (n, coeff) in lift.iter() {
                    *covered[k - 1].entry(n.clone()).or_insert(0) += lambda * coeff;
                    if n != &m && poly.coeff(n) == 0 {
                        pending.insert((height_of(n), n.clone()));
                    }
                }
            } else if c != mult {
                return Err(Error::Inconsistent {
                    witness: m.to_string(),
                });
            }
        }
    }

    let qc = QCharacter {
        highest: top,
        poly,
        meta: QCharMeta {
            label: cd.label(),
            rank: cd.rank(),
            node: i,
            shift: r,
        },
    };
    // A fundamental character has a unique dominant monomial.
    let dom = qc.dominant_monomials();
    if dom.len() != 1 || dom[0].0 != &qc.highest || dom[0].1 != 1 {
        return Err(Error::Inconsistent {
            witness: qc.highest.to_string(),
        });
    }
    Ok(qc)
}

#[derive(Serialize, Deserialize)]
struct CacheDoc {
    label: TypeLabel,
    rank: usize,
    node: Node,
    generator_exponent: i32,
    algorithm_version: u32,
    highest: YMonomial,
    poly: YPolynomial,
}

fn cache_file(dir: &Path, cd: &CartanData, i: Node) -> PathBuf {
    dir.join(format!("qchar-{}{}-n{}.json", cd.label(), cd.rank(), i))
}

/// Compute `fm_fundamental` through a JSON disk cache keyed by
/// (type, rank, node); the cached document is always based at `q^0` and the
/// shift is applied on load. Stale versions are recomputed.
pub fn cached_fundamental(
    cd: &CartanData,
    i: Node,
    r: i32,
    cache_dir: Option<&Path>,
    opts: &FmOptions,
) -> Result<QCharacter, Error> {
    let Some(dir) = cache_dir else {
        return fm_fundamental(cd, i, r, opts);
    };
    let path = cache_file(dir, cd, i);
    if let Ok(bytes) = fs::read(&path) {
        if let Ok(doc) = serde_json::from_slice::<CacheDoc>(&bytes) {
            if doc.algorithm_version == ALGORITHM_VERSION
                && doc.label == cd.label()
                && doc.rank == cd.rank()
                && doc.node == i
                && doc.generator_exponent == 0
            {
                let base = QCharacter {
                    highest: doc.highest,
                    poly: doc.poly,
                    meta: QCharMeta {
                        label: doc.label,
                        rank: doc.rank,
                        node: doc.node,
                        shift: 0,
                    },
                };
                return Ok(base.shifted(r));
            }
        }
    }
    let base = fm_fundamental(cd, i, 0, opts)?;
    fs::create_dir_all(dir)?;
    let doc = CacheDoc {
        label: cd.label(),
        rank: cd.rank(),
        node: i,
        generator_exponent: 0,
        algorithm_version: ALGORITHM_VERSION,
        highest: base.highest.clone(),
        poly: base.poly.clone(),
    };
    let tmp = path.with_extension(format!("json.tmp.{}", std::process::id()));
    fs::write(&tmp, serde_json::to_vec_pretty(&doc)?)?;
    fs::rename(&tmp, &path)?;
    Ok(base.shifted(r))
}
