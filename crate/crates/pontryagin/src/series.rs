//! Truncated formal power series with exact rational coefficients, and the
//! Möbius inversion that recovers graded Lie algebra dimensions from the
//! logarithm of a Hilbert-series denominator.

use crate::error::{Error, Result};
use crate::rational::Rational;
use std::fmt;

/// A univariate power series truncated at a fixed order `N`: exactly the
/// coefficients of `t^0 .. t^N` are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Builds a series from its coefficient list; the truncation order is
    /// `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Rational>) -> Series {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Series {
        Series {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Series {
        let mut s = Series::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// The series `1 + Σ c_k t^{e_k}` from sparse integer data, exponents
    /// beyond the truncation order silently dropped.
    pub fn from_terms(order: usize, terms: &[(usize, i64)]) -> Series {
        let mut s = Series::one(order);
        for &(e, c) in terms {
            if e == 0 {
                s.coeffs[0] += &Rational::from_int(c);
            } else if e <= order {
                s.coeffs[e] += &Rational::from_int(c);
            }
        }
        s
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn check_order(&self, other: &Series) -> Result<()> {
        if self.truncation_order() != other.truncation_order() {
            return Err(Error::Usage(format!(
                "mismatched truncation orders {} and {}",
                self.truncation_order(),
                other.truncation_order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Cauchy product truncated at the shared order.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        let n = self.truncation_order();
        let mut out = Series::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse by the standard coefficient recurrence;
    /// requires constant term 1.
    pub fn inverse(&self) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Usage(
                "series inverse requires constant term 1".into(),
            ));
        }
        let n = self.truncation_order();
        let mut b = Series::zero(n);
        b.coeffs[0] = Rational::one();
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &(&self.coeffs[k] * &b.coeffs[m - k]);
                }
            }
            b.coeffs[m] = -acc;
        }
        Ok(b)
    }

    /// Series logarithm; requires constant term 1, result has constant
    /// term 0. Uses the logarithmic-derivative recurrence
    /// `m a_m = Σ_{j=1..m} j η_j a_{m-j}`.
    pub fn log(&self) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Usage("series log requires constant term 1".into()));
        }
        let n = self.truncation_order();
        let mut eta = Series::zero(n);
        for m in 1..=n {
            let mut acc = &self.coeffs[m] * &Rational::from_int(m as i64);
            for j in 1..m {
                if !eta.coeffs[j].is_zero() && !self.coeffs[m - j].is_zero() {
                    acc -= &(&(&eta.coeffs[j] * &self.coeffs[m - j])
                        * &Rational::from_int(j as i64));
                }
            }
            eta.coeffs[m] = &acc / &Rational::from_int(m as i64);
        }
        Ok(eta)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{k}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Möbius function: 0 on numbers with a squared prime factor, otherwise
/// (-1)^(number of prime factors).
pub fn moebius(m: u64) -> Result<i64> {
    if m == 0 {
        return Err(Error::Domain("moebius(0) is undefined".into()));
    }
    let mut m = m;
    let mut res = 1i64;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return Ok(0);
            }
            res = -res;
        }
        p += 1;
    }
    if m > 1 {
        res = -res;
    }
    Ok(res)
}

/// Graded Lie algebra dimensions `L_1..L_n` recovered from a Hilbert-series
/// denominator `q` (in the loop-degree grading, constant term 1) via
/// `L_m = -Σ_{e|m} μ(e) η_{m/e} / e` with `η = log q`.
///
/// Every `L_m` is checked to be a non-negative integer; anything else means
/// the input was not the denominator of an enveloping algebra in this
/// grading and is reported as an inconsistency.
pub fn lie_dimensions(q: &Series, n: usize) -> Result<Vec<u64>> {
    if n > q.truncation_order() {
        return Err(Error::Usage(format!(
            "requested {n} dimensions from a series truncated at {}",
            q.truncation_order()
        )));
    }
    let eta = q.log()?;
    let mut out = Vec::with_capacity(n);
    for m in 1..=n {
        let mut acc = Rational::zero();
        for e in 1..=m {
            if m % e == 0 {
                let mu = moebius(e as u64)?;
                if mu != 0 {
                    acc -= &(&(&eta.coeffs[m / e] * &Rational::from_int(mu))
                        / &Rational::from_int(e as i64));
                }
            }
        }
        match acc.to_i64() {
            Some(v) if v >= 0 => out.push(v as u64),
            _ => {
                return Err(Error::Inconsistency(format!(
                    "Lie dimension at degree {m} is {acc}, not a non-negative integer"
                )))
            }
        }
    }
    Ok(out)
}

/// The truncated product `Π_m (1 - t^m)^{-L_m}`: the generating function of
/// the free commutative algebra on generators with `L_m` of them in each
/// degree `m`. Reconstructing the Hilbert series from Lie dimensions this
/// way is the generating-function form of the Poincaré–Birkhoff–Witt
/// theorem.
pub fn symmetric_algebra_series(lie_dims: &[u64], order: usize) -> Result<Series> {
    let mut acc = Series::one(order);
    for (i, &l) in lie_dims.iter().enumerate() {
        let m = i + 1;
        if m > order || l == 0 {
            continue;
        }
        let factor = Series::from_terms(order, &[(m, -1)]).inverse()?;
        for _ in 0..l {
            acc = acc.mul(&factor)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        crate::rational::Rational::new(
            num_bigint::BigInt::from(n),
            num_bigint::BigInt::from(d),
        )
    }

    fn ints(v: &[i64]) -> Series {
        Series::new(v.iter().map(|&x| Rational::from_int(x)).collect())
    }

    /// Independent oracle for the `1 - 3t + t^2` family: the inverse
    /// coefficients satisfy `a_m = 3 a_{m-1} - a_{m-2}`.
    fn fib_oracle(n: usize) -> Vec<i64> {
        let mut a = vec![1i64, 3];
        while a.len() <= n {
            let m = a.len();
            a.push(3 * a[m - 1] - a[m - 2]);
        }
        a.truncate(n + 1);
        a
    }

    /// Independent oracle for `1 - 2t^2 - 2t^3 + t^5`:
    /// `p_m = 2 p_{m-2} + 2 p_{m-3} - p_{m-5}`.
    fn y2_oracle(n: usize) -> Vec<i64> {
        let mut p = vec![0i64; n.max(5) + 1];
        p[0] = 1;
        for m in 1..=n {
            let get = |k: i64| if k < 0 { 0 } else { p[k as usize] };
            p[m] = 2 * get(m as i64 - 2) + 2 * get(m as i64 - 3) - get(m as i64 - 5);
        }
        p.truncate(n + 1);
        p
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = ints(&[1, 1, 0, 0, 0]);
        let b = ints(&[1, -1, 0, 0, 0]);
        assert_eq!(a.mul(&b).unwrap(), ints(&[1, 0, -1, 0, 0]));
    }

    #[test]
    fn mul_identity() {
        let a = ints(&[1, 7, -2, 5]);
        assert_eq!(a.mul(&Series::one(3)).unwrap(), a);
    }

    #[test]
    fn mul_against_recurrence_oracle() {
        let exp = fib_oracle(4);
        let inv = Series::new(exp.iter().map(|&x| Rational::from_int(x)).collect());
        let q = ints(&[1, -3, 1, 0, 0]);
        assert_eq!(q.mul(&inv).unwrap(), Series::one(4));
    }

    #[test]
    fn mul_order_mismatch_is_usage_error() {
        assert!(ints(&[1, 0]).mul(&ints(&[1, 0, 0])).is_err());
    }

    #[test]
    fn inverse_fibonacci_denominator() {
        let q = ints(&[1, -3, 1, 0, 0, 0]);
        let expect = fib_oracle(5);
        assert_eq!(expect, vec![1, 3, 8, 21, 55, 144]);
        assert_eq!(
            q.inverse().unwrap(),
            Series::new(expect.into_iter().map(Rational::from_int).collect())
        );
    }

    #[test]
    fn inverse_of_one() {
        assert_eq!(Series::one(7).inverse().unwrap(), Series::one(7));
    }

    #[test]
    fn inverse_mixed_degree_denominator() {
        let q = Series::from_terms(6, &[(2, -2), (3, -2), (5, 1)]);
        let expect = y2_oracle(6);
        assert_eq!(expect, vec![1, 0, 2, 2, 4, 7, 12]);
        assert_eq!(
            q.inverse().unwrap(),
            Series::new(expect.into_iter().map(Rational::from_int).collect())
        );
    }

    #[test]
    fn inverse_requires_unit_constant() {
        assert!(ints(&[2, 1]).inverse().is_err());
    }

    #[test]
    fn log_of_one_is_zero() {
        assert_eq!(Series::one(5).log().unwrap(), Series::zero(5));
    }

    #[test]
    fn log_against_direct_expansion() {
        // oracle: log(1 - s) = -s - s^2/2 - s^3/3 - s^4/4 with s = 3t - t^2
        let n = 4;
        let s = ints(&[0, 3, -1, 0, 0]);
        let mut oracle = Series::zero(n);
        let mut pw = Series::one(n);
        for k in 1..=n {
            pw = pw.mul(&s).unwrap();
            let scaled = Series::new(
                pw.coeffs()
                    .iter()
                    .map(|c| &(-c.clone()) / &Rational::from_int(k as i64))
                    .collect(),
            );
            oracle = oracle.add(&scaled).unwrap();
        }
        assert_eq!(
            oracle,
            Series::new(vec![q(0, 1), q(-3, 1), q(-7, 2), q(-6, 1), q(-47, 4)])
        );
        let a = ints(&[1, -3, 1, 0, 0]);
        assert_eq!(a.log().unwrap(), oracle);
    }

    #[test]
    fn moebius_values() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(4).unwrap(), 0);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(30).unwrap(), -1);
        assert_eq!(moebius(12).unwrap(), 0);
        assert!(moebius(0).is_err());
    }

    /// PBW oracle: the symmetric algebra on (3, 2, 5, L_4) generators must
    /// reproduce the Hilbert coefficients 1, 3, 8, 21, 55.
    #[test]
    fn lie_dims_fibonacci() {
        let q = ints(&[1, -3, 1, 0, 0]);
        let dims = lie_dimensions(&q, 4).unwrap();
        assert_eq!(dims, vec![3, 2, 5, 10]);
        let rebuilt = symmetric_algebra_series(&dims, 4).unwrap();
        assert_eq!(rebuilt, q.inverse().unwrap());
    }

    #[test]
    fn lie_dims_mixed_degrees() {
        let q = Series::from_terms(6, &[(2, -2), (3, -2), (5, 1)]);
        let dims = lie_dimensions(&q, 6).unwrap();
        assert_eq!(dims, vec![0, 2, 2, 1, 3, 3]);
        let rebuilt = symmetric_algebra_series(&dims, 6).unwrap();
        assert_eq!(rebuilt, q.inverse().unwrap());
    }

    #[test]
    fn lie_dims_single_free_generator() {
        let q = ints(&[1, -1, 0, 0]);
        assert_eq!(lie_dimensions(&q, 3).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn lie_dims_rejects_negative() {
        // 1 - t + t^2 inverts to a series with negative coefficients, so the
        // Möbius sums go negative; that must be flagged, not returned.
        let q = ints(&[1, -1, 1, 0]);
        assert!(matches!(
            lie_dimensions(&q, 3),
            Err(Error::Inconsistency(_))
        ));
    }

    fn unit_series(n: usize) -> impl Strategy<Value = Series> {
        proptest::collection::vec((-6i64..6, 1i64..4), n).prop_map(move |v| {
            let mut coeffs = vec![Rational::one()];
            coeffs.extend(v.into_iter().map(|(a, b)| q(a, b)));
            Series::new(coeffs)
        })
    }

    proptest! {
        #[test]
        fn mul_commutative_associative(a in unit_series(8), b in unit_series(8), c in unit_series(8)) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn inverse_is_right_inverse(a in unit_series(8)) {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(a.mul(&inv).unwrap(), Series::one(8));
        }

        #[test]
        fn log_is_homomorphism(a in unit_series(8), b in unit_series(8)) {
            let lhs = a.mul(&b).unwrap().log().unwrap();
            let rhs = a.log().unwrap().add(&b.log().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
