//! Truncated formal power series over exact rationals.
//!
//! Used by the pairing oracle: series are truncated at a fixed order, all
//! coefficients are `BigRational`, and equality is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Power series `c_0 + c_1 z + ... + c_N z^N`, exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

/// `q^e` for a signed exponent.
pub fn rat_pow(q: &BigRational, e: i64) -> BigRational {
    if e == 0 {
        return BigRational::one();
    }
    let mut acc = BigRational::one();
    let base = if e > 0 { q.clone() } else { q.recip() };
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<BigRational>) -> TruncatedSeries {
        assert!(!coeffs.is_empty());
        TruncatedSeries { coeffs }
    }

    pub fn one(order: usize) -> TruncatedSeries {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = BigRational::one();
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    /// `1 - c z`.
    pub fn linear_factor(c: BigRational, order: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::one(order);
        if order >= 1 {
            s.coeffs[1] = -c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, v: BigRational) {
        self.coeffs[k] = v;
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..=n)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (a, ca) in self.coeffs.iter().enumerate().take(n + 1) {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate().take(n + 1 - a) {
                coeffs[a + b] += ca * cb;
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn inverse(&self) -> TruncatedSeries {
        assert!(
            !self.coeffs[0].is_zero(),
            "series must have unit constant term"
        );
        let n = self.order();
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = self.coeffs[0].recip();
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -acc / &self.coeffs[0];
        }
        TruncatedSeries { coeffs: out }
    }

    /// Formal exponential of a series with zero constant term, via the
    /// derivative recursion `k e_k = sum_{j=1..k} j a_j e_{k-j}`.
    pub fn exp(&self) -> TruncatedSeries {
        assert!(self.coeffs[0].is_zero(), "exp needs zero constant term");
        let n = self.order();
        let mut e = vec![BigRational::zero(); n + 1];
        e[0] = BigRational::one();
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                acc += BigRational::from(BigInt::from(j)) * &self.coeffs[j] * &e[k - j];
            }
            e[k] = acc / BigRational::from(BigInt::from(k));
        }
        TruncatedSeries { coeffs: e }
    }
}
