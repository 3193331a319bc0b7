//! X-series factorizations and normalized eigenvalues.
//!
//! `X_{w(omega_i)}(z)` is represented by its factorization into shifted
//! prefundamental series `X_j(z q^s)`; the normalized eigenvalue on an
//! l-weight of a q-character is a ratio of products of linear factors,
//! represented structurally as root/pole multisets over `q`-exponents. The
//! factorization is computed along two independent routes (the twisted-root
//! change of basis, and the l-weight substitution) which must agree exactly.
//!
//! An independent oracle evaluates the defining pairing as a truncated power
//! series with exact rational coefficients at a generic rational `q`, using
//! the inverse of the quantum Cartan matrix.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::braid::Braid;
use crate::cartan::{CartanData, Node, WeylElement};
use crate::error::Error;
use crate::lweight::psi_extremal;
use crate::series::{rat_pow, TruncatedSeries};
use crate::yring::{make_a, YMonomial};

/// Factorization `X_{w(omega_i)}(z) = prod_{j,s} X_j(z q^s)^{e(j,s)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XFactorization {
    pub w: WeylElement,
    pub i: Node,
    pub exps: BTreeMap<(Node, i32), i32>,
}

impl XFactorization {
    pub fn is_trivial_for(&self, i: Node) -> bool {
        self.exps == BTreeMap::from([((i, 0), 1)])
    }
}

impl std::fmt::Display for XFactorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|(&(j, s), &e)| {
                let arg = match s {
                    0 => "z".to_string(),
                    1 => "z*q".to_string(),
                    _ => format!("z*q^{s}"),
                };
                if e == 1 {
                    format!("X{j}({arg})")
                } else {
                    format!("X{j}({arg})^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Solve the twisted-root change of basis for the factorization of
/// `X_{w(omega_i)}(z)`, cross-checked against the l-weight substitution
/// route; the two must agree monomial-exactly.
pub fn x_factorization(
    braid: &Braid<'_>,
    w: &WeylElement,
    i: Node,
) -> Result<XFactorization, Error> {
    let cd = braid.cartan();
    cd.check_node(i)?;

    // Route 1: the exponent of X_j(z q^s) equals the exponent of
    // A^w_{i,q^{-s}} in the factorization of A_{j,1} over the twisted basis.
    let mut exps: BTreeMap<(Node, i32), i32> = BTreeMap::new();
    for j in cd.nodes() {
        let e_j = braid
            .factor_in_aw(&make_a(cd, j, 0), &YMonomial::one(), w)
            .ok_or_else(|| Error::RouteMismatch {
                i,
                word: w.word().to_vec(),
            })?;
        for ((k, t), c) in e_j {
            if k == i && c != 0 {
                *exps.entry((j, -t)).or_insert(0) += c;
            }
        }
    }
    exps.retain(|_, e| *e != 0);

    // Route 2: powers of X_j(zb) match powers of Psi_{j,b^{-1}} in the
    // extremal l-weight.
    let psi = psi_extremal(braid, w, i, 0)?;
    let mut exps2: BTreeMap<(Node, i32), i32> = BTreeMap::new();
    for (j, t, e) in psi.iter_psi() {
        *exps2.entry((j, -t)).or_insert(0) += e;
    }
    exps2.retain(|_, e| *e != 0);

    if exps != exps2 {
        return Err(Error::RouteMismatch {
            i,
            word: w.word().to_vec(),
        });
    }
    Ok(XFactorization {
        w: w.clone(),
        i,
        exps,
    })
}

/// The factorization of `U_i(z^{-1})` into shifted `X_j`.
///
/// Derived from the h-generator change of basis: the diagonal contributes
/// `X_i(z q_i) X_i(z q_i^{-1})` and a neighbour `j` contributes
/// `[C_{i,j}]_{q^m}`, i.e. the inverse of a spread of `X_j` factors.
pub fn u_factorization(cd: &CartanData, i: Node) -> BTreeMap<(Node, i32), i32> {
    let di = cd.d(i) as i32;
    let mut exps: BTreeMap<(Node, i32), i32> = BTreeMap::new();
    let mut add = |j: Node, s: i32, e: i32| {
        let slot = exps.entry((j, s)).or_insert(0);
        *slot += e;
        if *slot == 0 {
            exps.remove(&(j, s));
        }
    };
    add(i, di, 1);
    add(i, -di, 1);
    for j in cd.nodes() {
        match cd.c(i, j) {
            -1 => add(j, 0, -1),
            -2 => {
                add(j, -1, -1);
                add(j, 1, -1);
            }
            -3 => {
                add(j, -2, -1);
                add(j, 0, -1);
                add(j, 2, -1);
            }
            _ => {}
        }
    }
    exps
}

/// Rational function of `z` given by root/pole multisets: a root at `s`
/// is a factor `(1 - z q^{-s})`, a pole the inverse factor.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RootSeries {
    roots: BTreeMap<i32, u32>,
    poles: BTreeMap<i32, u32>,
}

impl RootSeries {
    pub fn empty() -> RootSeries {
        RootSeries::default()
    }

    /// Build from `(s, multiplicity)` pairs, positive for roots and negative
    /// for poles, cancelling any overlap so the representation is canonical.
    pub fn from_signed(entries: impl IntoIterator<Item = (i32, i64)>) -> RootSeries {
        let mut net: BTreeMap<i32, i64> = BTreeMap::new();
        for (s, m) in entries {
            *net.entry(s).or_insert(0) += m;
        }
        let mut out = RootSeries::empty();
        for (s, m) in net {
            match m.cmp(&0) {
                std::cmp::Ordering::Greater => {
                    out.roots.insert(s, m as u32);
                }
                std::cmp::Ordering::Less => {
                    out.poles.insert(s, (-m) as u32);
                }
                std::cmp::Ordering::Equal => {}
            }
        }
        out
    }

    pub fn is_constant_one(&self) -> bool {
        self.roots.is_empty() && self.poles.is_empty()
    }

    /// No poles: the eigenvalue is a polynomial in `z`.
    pub fn is_polynomial(&self) -> bool {
        self.poles.is_empty()
    }

    /// Root multiset, expanded, ascending.
    pub fn roots(&self) -> Vec<i32> {
        expand(&self.roots)
    }

    pub fn poles(&self) -> Vec<i32> {
        expand(&self.poles)
    }

    /// Degree of the rational function: #roots - #poles.
    pub fn degree(&self) -> i64 {
        let r: i64 = self.roots.values().map(|&m| m as i64).sum();
        let p: i64 = self.poles.values().map(|&m| m as i64).sum();
        r - p
    }

    /// Exact expansion at a rational `q` to the given truncation order.
    pub fn expand(&self, q: &BigRational, order: usize) -> TruncatedSeries {
        let mut out = TruncatedSeries::one(order);
        for (&s, &m) in &self.roots {
            let f = TruncatedSeries::linear_factor(rat_pow(q, -(s as i64)), order);
            for _ in 0..m {
                out = out.mul(&f);
            }
        }
        for (&s, &m) in &self.poles {
            let f = TruncatedSeries::linear_factor(rat_pow(q, -(s as i64)), order).inverse();
            for _ in 0..m {
                out = out.mul(&f);
            }
        }
        out
    }
}

fn expand(mults: &BTreeMap<i32, u32>) -> Vec<i32> {
    let mut out = Vec::new();
    for (&s, &m) in mults {
        for _ in 0..m {
            out.push(s);
        }
    }
    out
}

/// Eigenvalue of the normalized X-series `X^N_{w(omega_i)}(z)` on the
/// l-weight `M` of the simple module with highest monomial `anchor`.
///
/// Exponent `e` of `A^w_{i,q^s}` in `M` over `T_w(anchor)` contributes `|e|`
/// roots at `s` when `e < 0` and `|e|` poles when `e > 0`. Returns `None`
/// when `M` does not factor over the twisted base point.
pub fn eigenvalue_on(
    braid: &Braid<'_>,
    w: &WeylElement,
    i: Node,
    m: &YMonomial,
    anchor: &YMonomial,
) -> Option<RootSeries> {
    let tw_anchor = braid.t_w(w, anchor);
    let e = braid.factor_in_aw(m, &tw_anchor, w)?;
    Some(RootSeries::from_signed(
        e.into_iter()
            .filter(|&((k, _), _)| k == i)
            .map(|((_, s), c)| (s, -(c as i64))),
    ))
}

/// One eigenvalue record in a polynomiality report.
#[derive(Debug, Clone, Serialize)]
pub struct EigenvalueRecord {
    pub w: Vec<Node>,
    pub i: Node,
    pub monomial: YMonomial,
    pub roots: Vec<i32>,
    pub poles: Vec<i32>,
    pub polynomial: bool,
}

/// Verdict of the polynomiality scan of one q-character under one `w`.
#[derive(Debug, Clone, Serialize)]
pub struct PolynomialityReport {
    pub w: Vec<Node>,
    pub all_polynomial: bool,
    pub entries: Vec<EigenvalueRecord>,
    /// Monomials whose eigenvalue has a pole, if any.
    pub witnesses: Vec<YMonomial>,
}

/// Scan every monomial of the q-character and every node: the eigenvalue of
/// `X^N_{w(omega_i)}(z)` must be a polynomial for the extremal monomial
/// property to hold at `w`.
pub fn polynomiality_verdict(
    braid: &Braid<'_>,
    w: &WeylElement,
    qc: &crate::fm::QCharacter,
) -> PolynomialityReport {
    let cd = braid.cartan();
    let mut entries = Vec::new();
    let mut witnesses = Vec::new();
    let mut all_polynomial = true;
    for m in qc.poly().monomials() {
        for i in cd.nodes() {
            let record = match eigenvalue_on(braid, w, i, m, qc.highest()) {
                Some(rs) => EigenvalueRecord {
                    w: w.word().to_vec(),
                    i,
                    monomial: m.clone(),
                    roots: rs.roots(),
                    poles: rs.poles(),
                    polynomial: rs.is_polynomial(),
                },
                None => EigenvalueRecord {
                    w: w.word().to_vec(),
                    i,
                    monomial: m.clone(),
                    roots: Vec::new(),
                    poles: Vec::new(),
                    polynomial: false,
                },
            };
            if !record.polynomial {
                all_polynomial = false;
                if !witnesses.contains(m) {
                    witnesses.push(m.clone());
                }
            }
            entries.push(record);
        }
    }
    PolynomialityReport {
        w: w.word().to_vec(),
        all_polynomial,
        entries,
        witnesses,
    }
}

/// The `w(alpha_i)`-coefficient of the weight gap between the twisted base
/// point and `M`, i.e. the expected degree of the eigenvalue.
pub fn expected_degree(
    braid: &Braid<'_>,
    w: &WeylElement,
    i: Node,
    m: &YMonomial,
    anchor: &YMonomial,
) -> Option<i64> {
    let cd = braid.cartan();
    let gap = braid.t_w(w, anchor).weight(cd).sub(&m.weight(cd));
    let inv = cd.inverse(w);
    let coords = cd.alpha_coords_integral(&inv.act(&gap))?;
    Some(coords[i - 1])
}

/// The quantum Cartan matrix evaluated at a rational point `x`:
/// `[2]_{x^{d_i}}` on the diagonal and `[C_{i,j}]_x` off it.
fn quantum_cartan_at(cd: &CartanData, x: &BigRational) -> Vec<Vec<BigRational>> {
    let n = cd.rank();
    let mut c = vec![vec![BigRational::zero(); n]; n];
    for i in 1..=n {
        for j in 1..=n {
            c[i - 1][j - 1] = if i == j {
                rat_pow(x, cd.d(i)) + rat_pow(x, -cd.d(i))
            } else {
                q_integer(cd.c(i, j), x)
            };
        }
    }
    c
}

/// `[m]_x = (x^m - x^{-m}) / (x - x^{-1})` as a signed sum of powers.
fn q_integer(m: i64, x: &BigRational) -> BigRational {
    let a = m.abs();
    let mut acc = BigRational::zero();
    for t in 0..a {
        acc += rat_pow(x, a - 1 - 2 * t);
    }
    if m < 0 {
        -acc
    } else {
        acc
    }
}

fn invert_big(matrix: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = matrix.len();
    let mut aug: Vec<Vec<BigRational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
            }
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let p = aug[col][col].clone();
        for v in aug[col].iter_mut() {
            *v /= &p;
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let f = aug[r][col].clone();
            for j in 0..2 * n {
                let sub = &f * &aug[col][j];
                aug[r][j] -= sub;
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Precomputed inverse quantum Cartan matrices `Ctilde(q^r)`, `r = 1..=N`,
/// at a fixed rational evaluation point.
pub struct OracleTables {
    q: BigRational,
    order: usize,
    tilde: Vec<Vec<Vec<BigRational>>>,
}

impl OracleTables {
    pub fn new(cd: &CartanData, q: &BigRational, order: usize) -> Result<OracleTables, Error> {
        assert!(order >= 1);
        assert!(q.abs() > BigRational::one(), "need a generic |q| > 1");
        let mut tilde = Vec::with_capacity(order);
        for r in 1..=order {
            let x = rat_pow(q, r as i64);
            tilde.push(invert_big(&quantum_cartan_at(cd, &x)).ok_or(Error::SingularMatrix)?);
        }
        Ok(OracleTables {
            q: q.clone(),
            order,
            tilde,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    /// The pairing of `X_i(z)` with a Laurent monomial, as an exact truncated
    /// series: `exp( sum_{r>0} z^r / r * sum_{j,s} u_{j,s} q^{-sr}
    /// Ctilde_{i,j}(q^r) )`.
    pub fn pairing(&self, i: Node, m: &YMonomial) -> TruncatedSeries {
        let mut log = TruncatedSeries::zero(self.order);
        for r in 1..=self.order {
            let tilde = &self.tilde[r - 1];
            let mut acc = BigRational::zero();
            for (j, s, u) in m.iter() {
                if u == 0 {
                    continue;
                }
                acc += BigRational::from(BigInt::from(u))
                    * rat_pow(&self.q, -(s as i64) * r as i64)
                    * &tilde[i - 1][j - 1];
            }
            log.set_coeff(r, acc / BigRational::from(BigInt::from(r)));
        }
        log.exp()
    }
}

/// One-shot form of [`OracleTables::pairing`].
pub fn pairing_oracle(
    cd: &CartanData,
    i: Node,
    m: &YMonomial,
    order: usize,
    q: &BigRational,
) -> Result<TruncatedSeries, Error> {
    cd.check_node(i)?;
    Ok(OracleTables::new(cd, q, order)?.pairing(i, m))
}
