//! The Laurent ring `Y = Z[Y_{i,a}^{±1}]` with spectral parameters in `q^Z`.
//!
//! A [`YMonomial`] stores the (node, q-exponent) -> exponent map of a Laurent
//! monomial in the variables `Y_{i,q^r}`; a [`YPolynomial`] is a finite
//! integer combination of monomials. All arithmetic is exact; term order is
//! deterministic (sorted by `(i, r)`), so serialized output is reproducible.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cartan::{CartanData, Node, Weight};
use crate::error::Error;

/// Exponent map of a product of root monomials: `(i, r) -> e` stands for
/// `A_{i,q^r}^e`.
pub type AExpMap = BTreeMap<(Node, i32), i32>;

/// Sparse Laurent monomial in the variables `Y_{i,q^r}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YMonomial {
    exps: BTreeMap<(Node, i32), i32>,
}

impl YMonomial {
    pub fn one() -> YMonomial {
        YMonomial::default()
    }

    /// The single variable `Y_{i,q^r}`.
    pub fn var(i: Node, r: i32) -> YMonomial {
        let mut exps = BTreeMap::new();
        exps.insert((i, r), 1);
        YMonomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, i: Node, r: i32) -> i32 {
        self.exps.get(&(i, r)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Node, i32, i32)> + '_ {
        self.exps.iter().map(|(&(i, r), &e)| (i, r, e))
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn mul_var(&mut self, i: Node, r: i32, e: i32) {
        if e == 0 {
            return;
        }
        let slot = self.exps.entry((i, r)).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.exps.remove(&(i, r));
        }
    }

    pub fn mul(&self, other: &YMonomial) -> YMonomial {
        let mut out = self.clone();
        for (i, r, e) in other.iter() {
            out.mul_var(i, r, e);
        }
        out
    }

    pub fn inverse(&self) -> YMonomial {
        YMonomial {
            exps: self.exps.iter().map(|(&k, &e)| (k, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i32) -> YMonomial {
        if k == 0 {
            return YMonomial::one();
        }
        YMonomial {
            exps: self.exps.iter().map(|(&key, &e)| (key, e * k)).collect(),
        }
    }

    /// Shift every spectral parameter by `s` (multiply all `a` by `q^s`).
    pub fn shifted(&self, s: i32) -> YMonomial {
        YMonomial {
            exps: self
                .exps
                .iter()
                .map(|(&(i, r), &e)| ((i, r + s), e))
                .collect(),
        }
    }

    /// The weight map: `Y_{i,a} -> omega_i`, extended additively.
    pub fn weight(&self, cd: &CartanData) -> Weight {
        let mut coords = vec![0i64; cd.rank()];
        for (i, _, e) in self.iter() {
            coords[i - 1] += e as i64;
        }
        Weight::new(coords)
    }

    /// All `Y`-exponents nonnegative.
    pub fn is_dominant(&self) -> bool {
        self.exps.values().all(|&e| e > 0)
    }

    /// All exponents of the color-`k` variables nonnegative.
    pub fn is_k_dominant(&self, k: Node) -> bool {
        self.iter().all(|(i, _, e)| i != k || e > 0)
    }

    /// The color-`k` part (keep only `Y_{k,·}` factors).
    pub fn color_part(&self, k: Node) -> YMonomial {
        YMonomial {
            exps: self
                .exps
                .iter()
                .filter(|((i, _), _)| *i == k)
                .map(|(&key, &e)| (key, e))
                .collect(),
        }
    }

    /// Smallest and largest spectral parameter occurring, if any.
    pub fn spectral_range(&self) -> Option<(i32, i32)> {
        let mut it = self.exps.keys().map(|&(_, r)| r);
        let first = it.next()?;
        let (mut lo, mut hi) = (first, first);
        for r in it {
            lo = lo.min(r);
            hi = hi.max(r);
        }
        Some((lo, hi))
    }

    /// Parse the CLI literal grammar: `Y:i,r` and `A:i,r` atoms composed with
    /// `*` and `^k`; `1` is the identity.
    pub fn parse(cd: &CartanData, input: &str) -> Result<YMonomial, Error> {
        let s = input.trim();
        if s == "1" {
            return Ok(YMonomial::one());
        }
        let bad = || Error::MonomialSyntax(input.to_string());
        let mut out = YMonomial::one();
        for token in s.split('*') {
            let token = token.trim();
            let (atom, exp) = match token.split_once('^') {
                Some((a, k)) => (a.trim(), k.trim().parse::<i32>().map_err(|_| bad())?),
                None => (token, 1),
            };
            let (kind, rest) = atom.split_once(':').ok_or_else(bad)?;
            let (i_str, r_str) = rest.split_once(',').ok_or_else(bad)?;
            let i: Node = i_str.trim().parse().map_err(|_| bad())?;
            let r: i32 = r_str.trim().parse().map_err(|_| bad())?;
            cd.check_node(i)?;
            let base = match kind.trim() {
                "Y" | "y" => YMonomial::var(i, r),
                "A" | "a" => make_a(cd, i, r),
                _ => return Err(bad()),
            };
            out = out.mul(&base.pow(exp));
        }
        Ok(out)
    }
}

impl fmt::Display for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(i, r, e)| {
                if e == 1 {
                    format!("Y:{i},{r}")
                } else {
                    format!("Y:{i},{r}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl Serialize for YMonomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let flat: Vec<(Node, i32, i32)> = self.iter().collect();
        flat.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for YMonomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let flat = Vec::<(Node, i32, i32)>::deserialize(deserializer)?;
        let mut m = YMonomial::one();
        for (i, r, e) in flat {
            if e == 0 {
                return Err(D::Error::custom("zero exponent in monomial"));
            }
            m.mul_var(i, r, e);
        }
        Ok(m)
    }
}

/// Integer combination of monomials, e.g. a q-character.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct YPolynomial {
    terms: BTreeMap<YMonomial, i64>,
}

impl YPolynomial {
    pub fn zero() -> YPolynomial {
        YPolynomial::default()
    }

    pub fn monomial(m: YMonomial) -> YPolynomial {
        let mut p = YPolynomial::zero();
        p.add_term(m, 1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total dimension: sum of multiplicities.
    pub fn total_mult(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn coeff(&self, m: &YMonomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: YMonomial, mult: i64) {
        if mult == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(mult);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += mult;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &YPolynomial) -> YPolynomial {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &YPolynomial) -> YPolynomial {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scaled(&self, k: i64) -> YPolynomial {
        if k == 0 {
            return YPolynomial::zero();
        }
        YPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), c * k))
                .collect(),
        }
    }

    pub fn mul(&self, other: &YPolynomial) -> YPolynomial {
        let mut out = YPolynomial::zero();
        for (m, &cm) in &self.terms {
            for (n, &cn) in &other.terms {
                out.add_term(m.mul(n), cm * cn);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &YMonomial) -> YPolynomial {
        YPolynomial {
            terms: self.terms.iter().map(|(n, &c)| (n.mul(m), c)).collect(),
        }
    }

    pub fn shifted(&self, s: i32) -> YPolynomial {
        YPolynomial {
            terms: self.terms.iter().map(|(m, &c)| (m.shifted(s), c)).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&YMonomial, i64)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn monomials(&self) -> impl Iterator<Item = &YMonomial> + '_ {
        self.terms.keys()
    }
}

impl fmt::Display for YPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(m, c)| {
                if c == 1 {
                    format!("{m}")
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    monomial: YMonomial,
    mult: i64,
}

impl Serialize for YPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .iter()
            .map(|(m, c)| TermRepr {
                monomial: m.clone(),
                mult: c,
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for YPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(deserializer)?;
        let mut p = YPolynomial::zero();
        for t in terms {
            if t.mult == 0 {
                return Err(D::Error::custom("zero multiplicity in polynomial"));
            }
            p.add_term(t.monomial, t.mult);
        }
        Ok(p)
    }
}

/// The root monomial `A_{i,q^r}`:
/// `Y_{i,q^{r-d_i}} Y_{i,q^{r+d_i}}` divided by the product of the
/// neighbouring `Y_{j,·}` prescribed by the column `C_{j,i}`.
pub fn make_a(cd: &CartanData, i: Node, r: i32) -> YMonomial {
    let di = cd.d(i) as i32;
    let mut m = YMonomial::one();
    m.mul_var(i, r - di, 1);
    m.mul_var(i, r + di, 1);
    for j in cd.nodes() {
        match cd.c(j, i) {
            -1 => m.mul_var(j, r, -1),
            -2 => {
                m.mul_var(j, r - 1, -1);
                m.mul_var(j, r + 1, -1);
            }
            -3 => {
                m.mul_var(j, r - 2, -1);
                m.mul_var(j, r, -1);
                m.mul_var(j, r + 2, -1);
            }
            _ => {}
        }
    }
    m
}

/// Express `m = anchor * prod A_{i,q^r}^{e(i,r)}` in the root-monomial basis.
///
/// Returns `None` when `m * anchor^{-1}` is not in the subgroup generated by
/// the `A_{i,a}`. The scan eliminates the lowest spectral discrepancy first;
/// `A_{i,q^r}` is the unique generator whose lowest leg sits at `(i, r-d_i)`,
/// which makes the elimination order forced and the answer unique.
pub fn factor_in_a(cd: &CartanData, m: &YMonomial, anchor: &YMonomial) -> Option<AExpMap> {
    let mut g = m.mul(&anchor.inverse());
    if g.is_one() {
        return Some(AExpMap::new());
    }
    cd.alpha_coords_integral(&g.weight(cd))?;
    let (_, max_r) = g.spectral_range().expect("nonempty");
    let mut out = AExpMap::new();
    loop {
        if g.is_one() {
            return Some(out);
        }
        let (i, r, e) = g
            .iter()
            .min_by_key(|&(i, r, _)| (r, i))
            .expect("nonempty monomial");
        let di = cd.d(i) as i32;
        // A legitimate factorization never reaches above the top of g:
        // the highest leg over the support equals the largest spectral
        // parameter of g, so the generator clearing (i, r) must satisfy
        // r + 2 d_i <= max_r.
        if r + 2 * di > max_r {
            return None;
        }
        out.insert((i, r + di), e);
        g = g.mul(&make_a(cd, i, r + di).pow(-e));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::TypeLabel;

    fn cd(label: TypeLabel, rank: usize) -> CartanData {
        CartanData::new(label, rank).unwrap()
    }

    #[test]
    fn root_monomials() {
        let a1 = cd(TypeLabel::A, 1);
        let mut expect = YMonomial::var(1, -1);
        expect.mul_var(1, 1, 1);
        assert_eq!(make_a(&a1, 1, 0), expect);

        let a2 = cd(TypeLabel::A, 2);
        let mut expect = YMonomial::var(1, -1);
        expect.mul_var(1, 1, 1);
        expect.mul_var(2, 0, -1);
        assert_eq!(make_a(&a2, 1, 0), expect);

        // B2: A_{2,a} = Y_{2,aq^{-1}} Y_{2,aq} Y_{1,a}^{-1}, weight alpha_2
        let b2 = cd(TypeLabel::B, 2);
        let mut expect = YMonomial::var(2, -1);
        expect.mul_var(2, 1, 1);
        expect.mul_var(1, 0, -1);
        let a = make_a(&b2, 2, 0);
        assert_eq!(a, expect);
        assert_eq!(a.weight(&b2), b2.simple_root(2));
        assert_eq!(make_a(&b2, 1, 0).weight(&b2), b2.simple_root(1));
    }

    #[test]
    fn weights() {
        let g2 = cd(TypeLabel::G, 2);
        assert_eq!(YMonomial::var(1, 0).weight(&g2), g2.fundamental_weight(1));
        assert!(YMonomial::one().weight(&g2).is_zero());
        assert_eq!(
            make_a(&g2, 1, 5).pow(-2).weight(&g2),
            g2.simple_root(1).scaled(-2)
        );
    }

    #[test]
    fn dominance() {
        let a2 = cd(TypeLabel::A, 2);
        let m = YMonomial::var(1, 0).mul(&YMonomial::var(2, 3));
        assert!(m.is_dominant());

        let m = YMonomial::var(1, 0).mul(&YMonomial::var(1, 2).inverse());
        assert!(!m.is_dominant());
        assert!(!m.is_k_dominant(1));
        assert!(m.is_k_dominant(2));

        // middle monomial of the A2 fundamental character
        let m = YMonomial::var(1, 2).inverse().mul(&YMonomial::var(2, 1));
        assert!(!m.is_k_dominant(1));
        assert!(m.is_k_dominant(2));
        let _ = a2;
    }

    #[test]
    fn factoring() {
        let a2 = cd(TypeLabel::A, 2);
        let anchor = YMonomial::var(1, 0);
        assert_eq!(factor_in_a(&a2, &anchor, &anchor), Some(AExpMap::new()));

        let m = YMonomial::var(1, 2).inverse().mul(&YMonomial::var(2, 1));
        let e = factor_in_a(&a2, &m, &anchor).unwrap();
        assert_eq!(e, AExpMap::from([((1, 1), -1)]));

        let m = YMonomial::var(2, 3).inverse();
        let e = factor_in_a(&a2, &m, &anchor).unwrap();
        assert_eq!(e, AExpMap::from([((1, 1), -1), ((2, 2), -1)]));

        // not in the subgroup: weight outside the root lattice
        assert!(factor_in_a(&a2, &YMonomial::var(1, 0), &YMonomial::one()).is_none());
        // in the root lattice but not in the A-subgroup
        let m = YMonomial::var(1, 0).mul(&YMonomial::var(2, 0)); // weight alpha_1+alpha_2
        assert!(factor_in_a(&a2, &m, &YMonomial::one()).is_none());
    }

    #[test]
    fn shift_equivariance_of_a() {
        let b2 = cd(TypeLabel::B, 2);
        for i in 1..=2 {
            for r in -3..=3 {
                assert_eq!(make_a(&b2, i, r).shifted(5), make_a(&b2, i, r + 5));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let m = YMonomial::var(1, 2)
            .inverse()
            .mul(&YMonomial::var(2, 1).pow(3));
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[[1,2,-1],[2,1,3]]");
        let back: YMonomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);

        let mut p = YPolynomial::monomial(m);
        p.add_term(YMonomial::one(), 2);
        let s = serde_json::to_string(&p).unwrap();
        let back: YPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn literal_parsing() {
        let a2 = cd(TypeLabel::A, 2);
        let m = YMonomial::parse(&a2, "Y:1,2^-1*Y:2,1").unwrap();
        assert_eq!(m, YMonomial::var(1, 2).inverse().mul(&YMonomial::var(2, 1)));
        assert_eq!(YMonomial::parse(&a2, "1").unwrap(), YMonomial::one());
        assert_eq!(
            YMonomial::parse(&a2, "A:1,0^2").unwrap(),
            make_a(&a2, 1, 0).pow(2)
        );
        assert!(YMonomial::parse(&a2, "Y:9,0").is_err());
        assert!(YMonomial::parse(&a2, "Z:1,0").is_err());
    }
}
