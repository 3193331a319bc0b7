//! The extended monomial group of l-weights.
//!
//! A [`PsiMonomial`] is a Laurent monomial in the variables `Psi_{i,q^r}`
//! together with a weight prefactor `[omega]` (rational coordinates in the
//! fundamental-weight basis). The ring embeds the Laurent ring of
//! `Y`-variables via `Y_{i,a} = [omega_i] Psi_{i,aq_i^{-1}} Psi_{i,aq_i}^{-1}`
//! and carries the involutions `sigma`, `Omega` and the extended braid
//! operators `T'_i`, whose restriction back to `Y`-variables is the plain
//! braid action.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::braid::Braid;
use crate::cartan::{CartanData, Node, WeylElement};
use crate::error::Error;
use crate::yring::YMonomial;

type Rat = Ratio<i64>;

/// Element of the extended monomial group: `[omega] * prod Psi_{i,q^r}^e`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PsiMonomial {
    exps: BTreeMap<(Node, i32), i32>,
    omega: Vec<Rat>,
}

impl PsiMonomial {
    pub fn one(rank: usize) -> PsiMonomial {
        PsiMonomial {
            exps: BTreeMap::new(),
            omega: vec![Rat::from_integer(0); rank],
        }
    }

    /// The prefundamental variable `Psi_{i,q^r}`.
    pub fn psi_var(i: Node, r: i32, rank: usize) -> PsiMonomial {
        let mut p = PsiMonomial::one(rank);
        p.mul_psi(i, r, 1);
        p
    }

    /// The one-dimensional prefactor `[omega]`.
    pub fn weight_factor(omega: Vec<Rat>) -> PsiMonomial {
        PsiMonomial {
            exps: BTreeMap::new(),
            omega,
        }
    }

    pub fn rank(&self) -> usize {
        self.omega.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty() && self.omega.iter().all(|c| *c == Rat::from_integer(0))
    }

    pub fn psi_exponent(&self, i: Node, r: i32) -> i32 {
        self.exps.get(&(i, r)).copied().unwrap_or(0)
    }

    pub fn iter_psi(&self) -> impl Iterator<Item = (Node, i32, i32)> + '_ {
        self.exps.iter().map(|(&(i, r), &e)| (i, r, e))
    }

    pub fn omega(&self) -> &[Rat] {
        &self.omega
    }

    pub fn has_weight_factor(&self) -> bool {
        self.omega.iter().any(|c| *c != Rat::from_integer(0))
    }

    pub fn mul_psi(&mut self, i: Node, r: i32, e: i32) {
        if e == 0 {
            return;
        }
        let slot = self.exps.entry((i, r)).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.exps.remove(&(i, r));
        }
    }

    pub fn mul(&self, other: &PsiMonomial) -> PsiMonomial {
        let mut out = self.clone();
        for (i, r, e) in other.iter_psi() {
            out.mul_psi(i, r, e);
        }
        for (a, b) in out.omega.iter_mut().zip(&other.omega) {
            *a += *b;
        }
        out
    }

    pub fn inverse(&self) -> PsiMonomial {
        PsiMonomial {
            exps: self.exps.iter().map(|(&k, &e)| (k, -e)).collect(),
            omega: self.omega.iter().map(|c| -c).collect(),
        }
    }

    pub fn pow(&self, k: i32) -> PsiMonomial {
        if k == 0 {
            return PsiMonomial::one(self.rank());
        }
        PsiMonomial {
            exps: self.exps.iter().map(|(&key, &e)| (key, e * k)).collect(),
            omega: self
                .omega
                .iter()
                .map(|c| *c * Rat::from_integer(k as i64))
                .collect(),
        }
    }

    /// Spectral shift `z -> z q^s` on the l-weight: all parameters move by `s`.
    pub fn shifted(&self, s: i32) -> PsiMonomial {
        PsiMonomial {
            exps: self
                .exps
                .iter()
                .map(|(&(i, r), &e)| ((i, r + s), e))
                .collect(),
            omega: self.omega.clone(),
        }
    }
}

impl fmt::Display for PsiMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.has_weight_factor() {
            let coords: Vec<String> = self.omega.iter().map(|c| c.to_string()).collect();
            parts.push(format!("[{}]", coords.join(",")));
        }
        for (i, r, e) in self.iter_psi() {
            if e == 1 {
                parts.push(format!("Psi:{i},{r}"));
            } else {
                parts.push(format!("Psi:{i},{r}^{e}"));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PsiRepr {
    psi: Vec<(Node, i32, i32)>,
    omega: Vec<String>,
}

impl Serialize for PsiMonomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PsiRepr {
            psi: self.iter_psi().collect(),
            omega: self.omega.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PsiMonomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PsiRepr::deserialize(deserializer)?;
        let mut omega = Vec::with_capacity(repr.omega.len());
        for s in &repr.omega {
            omega.push(
                s.parse::<Rat>()
                    .map_err(|_| D::Error::custom("bad rational coordinate"))?,
            );
        }
        let mut p = PsiMonomial::weight_factor(omega);
        for (i, r, e) in repr.psi {
            if e == 0 {
                return Err(D::Error::custom("zero exponent in psi monomial"));
            }
            p.mul_psi(i, r, e);
        }
        Ok(p)
    }
}

fn rational_reflection(cd: &CartanData, k: Node, omega: &[Rat]) -> Vec<Rat> {
    // s_k(omega) = omega - omega_k * alpha_k, with alpha_k = column k of C.
    let lam_k = omega[k - 1];
    omega
        .iter()
        .enumerate()
        .map(|(row, &c)| c - lam_k * Rat::from_integer(cd.c(row + 1, k)))
        .collect()
}

/// The embedding `Y_{i,a} = [omega_i] Psi_{i,aq_i^{-1}} Psi_{i,aq_i}^{-1}`,
/// extended multiplicatively.
pub fn embed_y(cd: &CartanData, m: &YMonomial) -> PsiMonomial {
    let mut out = PsiMonomial::one(cd.rank());
    for (i, r, e) in m.iter() {
        let di = cd.d(i) as i32;
        out.mul_psi(i, r - di, e);
        out.mul_psi(i, r + di, -e);
        out.omega[i - 1] += Rat::from_integer(e as i64);
    }
    out
}

/// The element `tilde-Psi_{i,q^r}`.
pub fn tilde_psi(cd: &CartanData, i: Node, r: i32) -> PsiMonomial {
    let di = cd.d(i) as i32;
    let mut p = PsiMonomial::one(cd.rank());
    p.mul_psi(i, r, -1);
    for j in cd.nodes() {
        match cd.c(i, j) {
            -1 => p.mul_psi(j, r + di, 1),
            -2 => {
                p.mul_psi(j, r, 1);
                p.mul_psi(j, r + 2, 1);
            }
            -3 => {
                p.mul_psi(j, r - 1, 1);
                p.mul_psi(j, r + 1, 1);
                p.mul_psi(j, r + 3, 1);
            }
            _ => {}
        }
    }
    p
}

/// `sigma(Psi_{i,a}) = Psi_{i,a^{-1}}^{-1}`, fixing weight prefactors.
pub fn sigma(p: &PsiMonomial) -> PsiMonomial {
    PsiMonomial {
        exps: p.exps.iter().map(|(&(i, r), &e)| ((i, -r), -e)).collect(),
        omega: p.omega.clone(),
    }
}

/// `Omega(Psi_{i,a}) = Psi_{i,a^{-1}}`, fixing weight prefactors.
pub fn omega_involution(p: &PsiMonomial) -> PsiMonomial {
    PsiMonomial {
        exps: p.exps.iter().map(|(&(i, r), &e)| ((i, -r), e)).collect(),
        omega: p.omega.clone(),
    }
}

/// The extended braid generator `T'_i`.
pub fn t_prime(cd: &CartanData, i: Node, p: &PsiMonomial) -> PsiMonomial {
    let di = cd.d(i) as i32;
    let mut out = PsiMonomial::weight_factor(rational_reflection(cd, i, p.omega()));
    for (j, r, e) in p.iter_psi() {
        if j != i {
            out.mul_psi(j, r, e);
            continue;
        }
        // T'_i(Psi_{i,q^r}) = sigma(tilde-Psi_{i,q^{-r-2d_i}}^{-1})
        out.mul_psi(i, r + 2 * di, -e);
        for k in cd.nodes() {
            match cd.c(i, k) {
                -1 => out.mul_psi(k, r + di, e),
                -2 => {
                    out.mul_psi(k, r + 2 * di, e);
                    out.mul_psi(k, r + 2 * di - 2, e);
                }
                -3 => {
                    out.mul_psi(k, r + 2 * di + 1, e);
                    out.mul_psi(k, r + 2 * di - 1, e);
                    out.mul_psi(k, r + 2 * di - 3, e);
                }
                _ => {}
            }
        }
    }
    out
}

/// `T'_w` along the canonical reduced word.
pub fn t_prime_w(cd: &CartanData, w: &WeylElement, p: &PsiMonomial) -> PsiMonomial {
    let mut out = p.clone();
    for &i in w.word().iter().rev() {
        out = t_prime(cd, i, &out);
    }
    out
}

/// The l-weight `Psi_{w(omega_i),q^r}`, built by the substitution rules from
/// the factorization of the extremal variable `Y_{w(omega_i),1}`.
///
/// The variable-by-variable substitution depends only on the symmetrizers:
/// equal `d` substitutes directly, a strictly longer node spreads over `d_k`
/// parameters, and a strictly shorter node is first regrouped into rigid
/// `W`-blocks (ascending, which is forced since blocks are translates).
pub fn psi_extremal(
    braid: &Braid<'_>,
    w: &WeylElement,
    i: Node,
    r: i32,
) -> Result<PsiMonomial, Error> {
    let cd = braid.cartan();
    cd.check_node(i)?;
    let y = braid.y_extremal(w, i, 0);
    let d_i = cd.d(i);
    let d_max = cd.r_vee();
    let mut out = PsiMonomial::one(cd.rank());
    for k in cd.nodes() {
        let d_k = cd.d(k);
        let part = y.color_part(k);
        if part.is_one() {
            continue;
        }
        if d_k == d_i {
            for (_, b, e) in part.iter() {
                out.mul_psi(k, -b, e);
            }
        } else if d_k > d_i {
            // spread a longer-node variable over d_k parameters
            for (_, b, e) in part.iter() {
                for l in 0..d_k as i32 {
                    out.mul_psi(k, -b + (d_k as i32 - 1) - 2 * l, e);
                }
            }
        } else {
            // W-block regrouping for shorter nodes
            let offsets: &[i32] = match d_max - d_k {
                1 => &[-1, 1],
                2 => &[-2, 0, 2],
                _ => return Err(Error::Regrouping { k }),
            };
            let mut u: BTreeMap<i32, i32> = part.iter().map(|(_, b, e)| (b, e)).collect();
            let max_b = *u.keys().max().unwrap();
            while let Some((&b0, &c)) = u.iter().find(|(_, &e)| e != 0) {
                let center = b0 - offsets[0];
                if center + offsets[offsets.len() - 1] > max_b {
                    return Err(Error::Regrouping { k });
                }
                for &off in offsets {
                    let slot = u.entry(center + off).or_insert(0);
                    *slot -= c;
                    if *slot == 0 {
                        u.remove(&(center + off));
                    }
                }
                out.mul_psi(k, -center, c);
            }
        }
    }
    Ok(out.shifted(r))
}

/// The braid-route construction `sigma . T'_w . sigma (Psi_{i,q^r})`.
pub fn psi_extremal_braid(cd: &CartanData, w: &WeylElement, i: Node, r: i32) -> PsiMonomial {
    let p = PsiMonomial::psi_var(i, r, cd.rank());
    sigma(&t_prime_w(cd, w, &sigma(&p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::TypeLabel;

    fn cd(label: TypeLabel, rank: usize) -> CartanData {
        CartanData::new(label, rank).unwrap()
    }

    #[test]
    fn embedding() {
        let a1 = cd(TypeLabel::A, 1);
        let p = embed_y(&a1, &YMonomial::var(1, 0));
        let mut expect = PsiMonomial::psi_var(1, -1, 1);
        expect.mul_psi(1, 1, -1);
        expect.omega[0] = Rat::from_integer(1);
        assert_eq!(p, expect);

        assert_eq!(embed_y(&a1, &YMonomial::one()), PsiMonomial::one(1));

        // telescoping: Y_{1,0} Y_{1,2} -> [2 w1] Psi_{1,-1} Psi_{1,3}^{-1}
        let m = YMonomial::var(1, 0).mul(&YMonomial::var(1, 2));
        let p = embed_y(&a1, &m);
        let mut expect = PsiMonomial::psi_var(1, -1, 1);
        expect.mul_psi(1, 3, -1);
        expect.omega[0] = Rat::from_integer(2);
        assert_eq!(p, expect);
    }

    #[test]
    fn tilde_psi_values() {
        let a1 = cd(TypeLabel::A, 1);
        assert_eq!(
            tilde_psi(&a1, 1, 7),
            PsiMonomial::psi_var(1, 7, 1).inverse()
        );

        let a2 = cd(TypeLabel::A, 2);
        let mut expect = PsiMonomial::psi_var(1, 4, 2).inverse();
        expect.mul_psi(2, 5, 1);
        assert_eq!(tilde_psi(&a2, 1, 4), expect);

        // B2 row C_{2,.}: C_{2,1} = -2
        let b2 = cd(TypeLabel::B, 2);
        let mut expect = PsiMonomial::psi_var(2, 0, 2).inverse();
        expect.mul_psi(1, 0, 1);
        expect.mul_psi(1, 2, 1);
        assert_eq!(tilde_psi(&b2, 2, 0), expect);
    }

    #[test]
    fn involutions() {
        let p = PsiMonomial::psi_var(1, 3, 2);
        assert_eq!(sigma(&p), PsiMonomial::psi_var(1, -3, 2).inverse());
        let q = {
            let mut q = PsiMonomial::psi_var(1, -2, 2).pow(3);
            q.mul_psi(2, 5, -1);
            q.omega[0] = Rat::new(1, 2);
            q
        };
        assert_eq!(sigma(&sigma(&q)), q);
        assert_eq!(omega_involution(&omega_involution(&q)), q);
    }

    #[test]
    fn t_prime_generators() {
        let a1 = cd(TypeLabel::A, 1);
        // T'_1(Psi_{1,r}) = Psi_{1,r+2}^{-1}, no weight factor
        for r in -3..=3 {
            assert_eq!(
                t_prime(&a1, 1, &PsiMonomial::psi_var(1, r, 1)),
                PsiMonomial::psi_var(1, r + 2, 1).inverse()
            );
        }

        let a2 = cd(TypeLabel::A, 2);
        assert_eq!(
            t_prime(&a2, 1, &PsiMonomial::psi_var(2, 5, 2)),
            PsiMonomial::psi_var(2, 5, 2)
        );
        // T'_1 [w1] = [w1 - a1]
        let w1 = PsiMonomial::weight_factor(vec![Rat::from_integer(1), Rat::from_integer(0)]);
        assert_eq!(
            t_prime(&a2, 1, &w1),
            PsiMonomial::weight_factor(vec![Rat::from_integer(-1), Rat::from_integer(1)])
        );
    }

    #[test]
    fn restriction_to_y_is_chari_action() {
        for (label, rank) in [
            (TypeLabel::A, 2),
            (TypeLabel::B, 2),
            (TypeLabel::G, 2),
            (TypeLabel::A, 3),
        ] {
            let cdx = cd(label, rank);
            let braid = Braid::new(&cdx);
            for i in cdx.nodes() {
                for j in cdx.nodes() {
                    for r in -2..=2 {
                        let y = YMonomial::var(j, r);
                        assert_eq!(
                            t_prime(&cdx, i, &embed_y(&cdx, &y)),
                            embed_y(&cdx, &braid.t(i, &y)),
                            "restriction fails: {label}{rank}, T'_{i} on Y_({j},{r})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn psi_extremal_simple_reflection() {
        // Psi_{s_i(w_i),q^r} = tilde-Psi_{i,q^{r-2d_i}}
        for (label, rank) in [(TypeLabel::A, 2), (TypeLabel::B, 2), (TypeLabel::G, 2)] {
            let cdx = cd(label, rank);
            let braid = Braid::new(&cdx);
            for i in cdx.nodes() {
                let si = cdx.simple_reflection(i).unwrap();
                for r in [-1, 0, 2] {
                    let built = psi_extremal(&braid, &si, i, r).unwrap();
                    let expect = tilde_psi(&cdx, i, r - 2 * cdx.d(i) as i32);
                    assert_eq!(built, expect, "{label}{rank} node {i}");
                    assert_eq!(built, psi_extremal_braid(&cdx, &si, i, r));
                }
            }
        }
    }

    #[test]
    fn psi_extremal_identity_and_sl2() {
        let a1 = cd(TypeLabel::A, 1);
        let braid = Braid::new(&a1);
        let e = a1.identity();
        assert_eq!(
            psi_extremal(&braid, &e, 1, 5).unwrap(),
            PsiMonomial::psi_var(1, 5, 1)
        );
        let s1 = a1.simple_reflection(1).unwrap();
        assert_eq!(
            psi_extremal(&braid, &s1, 1, 0).unwrap(),
            PsiMonomial::psi_var(1, -2, 1).inverse()
        );
    }

    #[test]
    fn json_round_trip() {
        let mut p = PsiMonomial::psi_var(1, -4, 2).inverse();
        p.mul_psi(2, 0, 2);
        p.omega[1] = Rat::new(-3, 2);
        let s = serde_json::to_string(&p).unwrap();
        let back: PsiMonomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
