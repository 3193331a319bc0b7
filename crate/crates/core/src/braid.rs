//! The braid group action on monomials and twisted root monomials.
//!
//! The generator `T_i` sends `Y_{i,a}` to `Y_{i,a} A_{i,aq_i}^{-1}` and fixes
//! the other variables; `T_w` composes generators along the canonical reduced
//! word (the braid relations make it word-independent). Twisted root
//! monomials `A^w_{i,a} = T_w(A_{i,a})` give the `w`-twisted partial order,
//! and factorization in the `A^w`-basis is routed through `T_w^{-1}` plus the
//! untwisted elimination of [`crate::yring::factor_in_a`].

use std::collections::HashMap;
use std::sync::RwLock;

use crate::cartan::{CartanData, Node, WeylElement};
use crate::yring::{factor_in_a, make_a, AExpMap, YMonomial};

/// Outcome of comparing two monomials in the `w`-twisted order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// A twisted root monomial `A^w_{i,q^r} = T_w(A_{i,q^r})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedRoot {
    pub w: WeylElement,
    pub i: Node,
    pub r: i32,
    pub value: YMonomial,
}

type MemoKey = (Vec<Node>, Node, bool);

/// Braid action over a fixed Cartan datum, with memoized generator images.
///
/// The memo caches `T_w^{±1}(Y_{i,1})` per canonical word; images of shifted
/// variables follow by shift equivariance, images of products by
/// multiplicativity. Reads vastly outnumber writes in sweeps, hence the
/// `RwLock`.
pub struct Braid<'a> {
    cd: &'a CartanData,
    memo: RwLock<HashMap<MemoKey, YMonomial>>,
}

impl<'a> Braid<'a> {
    pub fn new(cd: &'a CartanData) -> Braid<'a> {
        Braid {
            cd,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn cartan(&self) -> &CartanData {
        self.cd
    }

    /// `T_i` on a monomial.
    pub fn t(&self, i: Node, m: &YMonomial) -> YMonomial {
        let di = self.cd.d(i) as i32;
        let mut out = m.clone();
        for (j, r, e) in m.iter() {
            if j == i {
                out = out.mul(&make_a(self.cd, i, r + di).pow(-e));
            }
        }
        out
    }

    /// `T_i^{-1}` on a monomial: `Y_{i,a} -> Y_{i,a} A_{i,aq_i^{-1}}^{-1}`.
    pub fn t_inv(&self, i: Node, m: &YMonomial) -> YMonomial {
        let di = self.cd.d(i) as i32;
        let mut out = m.clone();
        for (j, r, e) in m.iter() {
            if j == i {
                out = out.mul(&make_a(self.cd, i, r - di).pow(-e));
            }
        }
        out
    }

    fn generator_image(&self, w: &WeylElement, i: Node, inverse: bool) -> YMonomial {
        let key: MemoKey = (w.word().to_vec(), i, inverse);
        if let Some(hit) = self.memo.read().unwrap().get(&key) {
            return hit.clone();
        }
        let mut m = YMonomial::var(i, 0);
        if inverse {
            for &k in w.word() {
                m = self.t_inv(k, &m);
            }
        } else {
            for &k in w.word().iter().rev() {
                m = self.t(k, &m);
            }
        }
        self.memo.write().unwrap().insert(key, m.clone());
        m
    }

    /// `T_w` along the canonical reduced word of `w`.
    pub fn t_w(&self, w: &WeylElement, m: &YMonomial) -> YMonomial {
        let mut out = YMonomial::one();
        for (i, r, e) in m.iter() {
            out = out.mul(&self.generator_image(w, i, false).shifted(r).pow(e));
        }
        out
    }

    /// `T_w^{-1}`.
    pub fn t_w_inv(&self, w: &WeylElement, m: &YMonomial) -> YMonomial {
        let mut out = YMonomial::one();
        for (i, r, e) in m.iter() {
            out = out.mul(&self.generator_image(w, i, true).shifted(r).pow(e));
        }
        out
    }

    /// The extremal variable `Y_{w(omega_i),q^r} = T_w(Y_{i,q^r})`.
    pub fn y_extremal(&self, w: &WeylElement, i: Node, r: i32) -> YMonomial {
        self.generator_image(w, i, false).shifted(r)
    }

    /// `A^w_{i,q^r} = T_w(A_{i,q^r})`, with the weight invariant checked.
    pub fn twisted_root(&self, w: &WeylElement, i: Node, r: i32) -> TwistedRoot {
        let value = self.t_w(w, &make_a(self.cd, i, r));
        debug_assert_eq!(value.weight(self.cd), w.act(&self.cd.simple_root(i)));
        TwistedRoot {
            w: w.clone(),
            i,
            r,
            value,
        }
    }

    /// Express `m = anchor * prod (A^w_{i,q^r})^{e(i,r)}`.
    ///
    /// Computed as the untwisted factorization of the `T_w^{-1}` images; the
    /// twisted order is defined through exactly this equivalence.
    pub fn factor_in_aw(
        &self,
        m: &YMonomial,
        anchor: &YMonomial,
        w: &WeylElement,
    ) -> Option<AExpMap> {
        if w.is_identity() {
            return factor_in_a(self.cd, m, anchor);
        }
        factor_in_a(self.cd, &self.t_w_inv(w, m), &self.t_w_inv(w, anchor))
    }

    /// Compare in the `w`-twisted order: `m` is less when it sits below `m'`
    /// by inverse twisted root monomials.
    pub fn compare_w(&self, m: &YMonomial, m_prime: &YMonomial, w: &WeylElement) -> MonomialOrder {
        match self.factor_in_aw(m, m_prime, w) {
            None => MonomialOrder::Incomparable,
            Some(e) if e.is_empty() => MonomialOrder::Equal,
            Some(e) => {
                if e.values().all(|&v| v < 0) {
                    MonomialOrder::Less
                } else if e.values().all(|&v| v > 0) {
                    MonomialOrder::Greater
                } else {
                    MonomialOrder::Incomparable
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::TypeLabel;
    use crate::yring::AExpMap;

    fn cd(label: TypeLabel, rank: usize) -> CartanData {
        CartanData::new(label, rank).unwrap()
    }

    #[test]
    fn generator_on_variables() {
        let a1 = cd(TypeLabel::A, 1);
        let b = Braid::new(&a1);
        // T_1(Y_{1,0}) = Y_{1,0} A_{1,1}^{-1} = Y_{1,2}^{-1}
        assert_eq!(
            b.t(1, &YMonomial::var(1, 0)),
            YMonomial::var(1, 2).inverse()
        );

        let a2 = cd(TypeLabel::A, 2);
        let b = Braid::new(&a2);
        assert_eq!(b.t(1, &YMonomial::var(2, 5)), YMonomial::var(2, 5));
        // images of root monomials follow from the Y-action:
        // T_1(A_{2,0}) = A_{2,0} A_{1,1}
        assert_eq!(
            b.t(1, &make_a(&a2, 2, 0)),
            make_a(&a2, 2, 0).mul(&make_a(&a2, 1, 1))
        );
        // T_1(A_{1,0}) = A_{1,2}^{-1}
        assert_eq!(b.t(1, &make_a(&a2, 1, 0)), make_a(&a2, 1, 2).inverse());
    }

    #[test]
    fn inverse_images() {
        let a1 = cd(TypeLabel::A, 1);
        let b = Braid::new(&a1);
        assert_eq!(b.t_inv(1, &make_a(&a1, 1, 0)), make_a(&a1, 1, -2).inverse());

        let a2 = cd(TypeLabel::A, 2);
        let b = Braid::new(&a2);
        assert_eq!(
            b.t_inv(1, &make_a(&a2, 2, 0)),
            make_a(&a2, 2, 0).mul(&make_a(&a2, 1, -1))
        );

        let b2 = cd(TypeLabel::B, 2);
        let b = Braid::new(&b2);
        let m = YMonomial::var(1, 0)
            .mul(&YMonomial::var(2, 3).pow(-2))
            .mul(&YMonomial::var(1, -1));
        for i in 1..=2 {
            assert_eq!(b.t_inv(i, &b.t(i, &m)), m);
            assert_eq!(b.t(i, &b.t_inv(i, &m)), m);
        }
    }

    #[test]
    fn generator_images_of_root_monomials_in_laced_types() {
        // doubly laced branch: C_{2,1} = -2 in B2, so
        // T_2(A_{1,a}) = A_{1,a} A_{2,a} A_{2,aq^2} and
        // A_{1,a} = T_2(A_{1,a} A_{2,a} A_{2,aq^{-2}})
        let b2 = cd(TypeLabel::B, 2);
        let b = Braid::new(&b2);
        for r in -2..=2 {
            assert_eq!(
                b.t(2, &make_a(&b2, 1, r)),
                make_a(&b2, 1, r)
                    .mul(&make_a(&b2, 2, r))
                    .mul(&make_a(&b2, 2, r + 2))
            );
            assert_eq!(
                b.t_inv(2, &make_a(&b2, 1, r)),
                make_a(&b2, 1, r)
                    .mul(&make_a(&b2, 2, r))
                    .mul(&make_a(&b2, 2, r - 2))
            );
        }

        // triply laced branch: C_{2,1} = -3 in G2, so
        // T_2(A_{1,a}) = A_{1,a} A_{2,aq^{-1}} A_{2,aq} A_{2,aq^3}
        let g2 = cd(TypeLabel::G, 2);
        let b = Braid::new(&g2);
        for r in -2..=2 {
            assert_eq!(
                b.t(2, &make_a(&g2, 1, r)),
                make_a(&g2, 1, r)
                    .mul(&make_a(&g2, 2, r - 1))
                    .mul(&make_a(&g2, 2, r + 1))
                    .mul(&make_a(&g2, 2, r + 3))
            );
            assert_eq!(b.t_inv(2, &b.t(2, &make_a(&g2, 1, r))), make_a(&g2, 1, r));
            // diagonal branch with d_2 = 1: T_2(A_{2,a}) = A_{2,aq^2}^{-1}
            assert_eq!(b.t(2, &make_a(&g2, 2, r)), make_a(&g2, 2, r + 2).inverse());
            // and with d_1 = 3: T_1(A_{1,a}) = A_{1,aq^6}^{-1}
            assert_eq!(b.t(1, &make_a(&g2, 1, r)), make_a(&g2, 1, r + 6).inverse());
        }
    }

    #[test]
    fn longest_element_action_in_a2() {
        let a2 = cd(TypeLabel::A, 2);
        let b = Braid::new(&a2);
        let w0 = a2.longest_element();
        // T_{w0}(Y_{1,0}) = Y_{2,3}^{-1} (h_vee * r_vee = 3)
        assert_eq!(
            b.t_w(w0, &YMonomial::var(1, 0)),
            YMonomial::var(2, 3).inverse()
        );
    }

    #[test]
    fn extremal_variables() {
        let a2 = cd(TypeLabel::A, 2);
        let b = Braid::new(&a2);
        let s1 = a2.simple_reflection(1).unwrap();
        assert_eq!(
            b.y_extremal(&s1, 1, 0),
            YMonomial::var(1, 2).inverse().mul(&YMonomial::var(2, 1))
        );

        let b2 = cd(TypeLabel::B, 2);
        let br = Braid::new(&b2);
        let w = b2.reduce_word(&[1, 2]).unwrap();
        assert_eq!(
            br.y_extremal(&w, 2, 0),
            YMonomial::var(1, 5).inverse().mul(&YMonomial::var(2, 4))
        );
    }

    #[test]
    fn twisted_roots_match_worked_examples() {
        let a2 = cd(TypeLabel::A, 2);
        let b = Braid::new(&a2);
        let s1 = a2.simple_reflection(1).unwrap();
        assert_eq!(b.twisted_root(&s1, 1, 0).value, make_a(&a2, 1, 2).inverse());
        assert_eq!(
            b.twisted_root(&s1, 2, 0).value,
            make_a(&a2, 2, 0).mul(&make_a(&a2, 1, 1))
        );

        let b2 = cd(TypeLabel::B, 2);
        let br = Braid::new(&b2);
        let w = b2.reduce_word(&[1, 2]).unwrap();
        assert_eq!(
            br.twisted_root(&w, 2, 0).value,
            make_a(&b2, 2, 2)
                .inverse()
                .mul(&make_a(&b2, 1, 4).inverse())
        );
        assert_eq!(
            br.twisted_root(&w, 1, 0).value,
            make_a(&b2, 1, 2)
                .mul(&make_a(&b2, 2, 2))
                .mul(&make_a(&b2, 2, 0))
        );
        // identity twist is the untwisted root monomial
        let e = b2.identity();
        assert_eq!(br.twisted_root(&e, 1, 3).value, make_a(&b2, 1, 3));
    }

    #[test]
    fn factor_in_aw_on_the_a2_example() {
        let a2 = cd(TypeLabel::A, 2);
        let b = Braid::new(&a2);
        let s1 = a2.simple_reflection(1).unwrap();
        let anchor = b.y_extremal(&s1, 1, 0);

        let e = b.factor_in_aw(&YMonomial::var(1, 0), &anchor, &s1).unwrap();
        assert_eq!(e, AExpMap::from([((1, -1), -1)]));

        let e = b.factor_in_aw(&anchor, &anchor, &s1).unwrap();
        assert!(e.is_empty());

        let e = b
            .factor_in_aw(&YMonomial::var(2, 3).inverse(), &anchor, &s1)
            .unwrap();
        assert_eq!(e, AExpMap::from([((1, 1), -1), ((2, 2), -1)]));
    }

    #[test]
    fn twisted_order() {
        let a2 = cd(TypeLabel::A, 2);
        let b = Braid::new(&a2);
        let e = a2.identity();
        let m = YMonomial::var(1, 0);

        let lower = m.mul(&b.twisted_root(&e, 1, 1).value.inverse());
        assert_eq!(b.compare_w(&lower, &m, &e), MonomialOrder::Less);
        assert_eq!(b.compare_w(&m, &lower, &e), MonomialOrder::Greater);
        assert_eq!(b.compare_w(&m, &m, &e), MonomialOrder::Equal);

        // lowest vs highest monomial of the fundamental character
        assert_eq!(
            b.compare_w(&YMonomial::var(2, 3).inverse(), &m, &e),
            MonomialOrder::Less
        );

        // mixed signs are incomparable
        let mixed = m.mul(&make_a(&a2, 1, 1).inverse()).mul(&make_a(&a2, 2, 4));
        assert_eq!(b.compare_w(&mixed, &m, &e), MonomialOrder::Incomparable);

        // measuring against an unrelated monomial is incomparable
        assert_eq!(
            b.compare_w(&YMonomial::var(1, 0), &YMonomial::one(), &e),
            MonomialOrder::Incomparable
        );
    }

    #[test]
    fn braid_relations_rank_two() {
        for (label, m_order) in [(TypeLabel::A, 3usize), (TypeLabel::B, 4), (TypeLabel::G, 6)] {
            let cdx = cd(label, 2);
            let b = Braid::new(&cdx);
            for i in 1..=2usize {
                for r in -4..=4 {
                    let m = YMonomial::var(i, r);
                    let mut lhs = m.clone();
                    let mut rhs = m.clone();
                    for step in 0..m_order {
                        let (gl, gr) = if step % 2 == 0 { (1, 2) } else { (2, 1) };
                        lhs = b.t(gl, &lhs);
                        rhs = b.t(gr, &rhs);
                    }
                    assert_eq!(lhs, rhs, "braid relation fails in {label}2");
                }
            }
        }
    }

    #[test]
    fn intertwines_weight_action() {
        let b2 = cd(TypeLabel::B, 2);
        let b = Braid::new(&b2);
        let m = YMonomial::var(1, 0)
            .mul(&YMonomial::var(2, -1).pow(2))
            .mul(&YMonomial::var(1, 3).inverse());
        for w in b2.enumerate_weyl() {
            assert_eq!(b.t_w(&w, &m).weight(&b2), w.act(&m.weight(&b2)));
        }
    }
}
