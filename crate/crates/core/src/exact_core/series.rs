use serde::{Deserialize, Serialize};
use std::fmt;

use super::scalar::Scalar;
use crate::Error;

/// Coefficient rings used by sparse vectors and polynomials: exact rationals or
/// truncated power series in the formal parameter.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

impl Coeff for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
}

/// Element of Q[h]/(h^N): `coeffs[r]` multiplies `h^r`, `coeffs.len() == N`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SeriesScalar {
    coeffs: Vec<Scalar>,
}

impl SeriesScalar {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "series order must be positive");
        SeriesScalar { coeffs: vec![Scalar::zero(); order] }
    }

    pub fn constant(c: Scalar, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Scalar::one(), order)
    }

    /// `c * h^r`, or zero when `r >= order`.
    pub fn monomial(c: Scalar, r: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if r < order {
            s.coeffs[r] = c;
        }
        s
    }

    /// Truncates or zero-pads `coeffs` to length `order`.
    pub fn from_coeffs(mut coeffs: Vec<Scalar>, order: usize) -> Self {
        assert!(order >= 1, "series order must be positive");
        coeffs.resize(order, Scalar::zero());
        SeriesScalar { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, r: usize) -> Scalar {
        self.coeffs.get(r).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order)
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn inverse(&self) -> Result<Self, Error> {
        let n = self.order();
        let c0inv = self.coeffs[0].inverse()?;
        let mut out = vec![Scalar::zero(); n];
        out[0] = c0inv.clone();
        for r in 1..n {
            let mut acc = Scalar::zero();
            for j in 1..=r {
                acc += &(&self.coeffs[j] * &out[r - j]);
            }
            out[r] = -(&acc * &c0inv);
        }
        Ok(SeriesScalar { coeffs: out })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = Coeff::mul(&acc, self);
        }
        acc
    }
}

/// `exp(s)` in Q[h]/(h^N); the constant term of `s` must vanish.
pub fn series_exp(s: &SeriesScalar) -> Result<SeriesScalar, Error> {
    if !s.coeffs[0].is_zero() {
        return Err(Error::NonNilpotentExponent);
    }
    let n = s.order();
    let mut out = SeriesScalar::one(n);
    let mut term = SeriesScalar::one(n);
    for r in 1..n {
        term = Coeff::mul(&term, s).scale(&Scalar::ratio(1, r as i64));
        out = Coeff::add(&out, &term);
    }
    Ok(out)
}

impl Coeff for SeriesScalar {
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        SeriesScalar { coeffs: (0..n).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect() }
    }

    /// Truncated Cauchy product at the smaller of the two orders.
    fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![Scalar::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        SeriesScalar { coeffs: out }
    }

    fn neg(&self) -> Self {
        SeriesScalar { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    fn scale(&self, s: &Scalar) -> Self {
        SeriesScalar { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }
}

impl fmt::Debug for SeriesScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(r, c)| if r == 0 { c.to_string() } else { format!("({c})h^{r}") })
            .collect();
        if terms.is_empty() {
            write!(f, "0 + O(h^{})", self.order())
        } else {
            write!(f, "{} + O(h^{})", terms.join(" + "), self.order())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ser(v: &[i64], n: usize) -> SeriesScalar {
        SeriesScalar::from_coeffs(v.iter().map(|&c| Scalar::from_int(c)).collect(), n)
    }

    #[test]
    fn truncated_product() {
        let a = ser(&[1, 1], 3);
        let sq = a.mul(&a);
        assert_eq!(sq, ser(&[1, 2, 1], 3));
        assert_eq!(sq.mul(&a), ser(&[1, 3, 3], 3));
    }

    #[test]
    fn inverse_of_one_minus_h() {
        let a = ser(&[1, -1], 4);
        assert_eq!(a.inverse().unwrap(), ser(&[1, 1, 1, 1], 4));
        assert!(ser(&[0, 1], 4).inverse().is_err());
    }

    #[test]
    fn exp_of_h() {
        let e = series_exp(&ser(&[0, 1], 4)).unwrap();
        let want = SeriesScalar::from_coeffs(
            vec![Scalar::one(), Scalar::one(), Scalar::ratio(1, 2), Scalar::ratio(1, 6)],
            4,
        );
        assert_eq!(e, want);
        assert!(matches!(series_exp(&ser(&[1], 4)), Err(Error::NonNilpotentExponent)));
    }
}
