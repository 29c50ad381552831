//! Truncated formal power series in one variable.
//!
//! A `TruncatedSeries` stores coefficients 0..=N densely; everything through
//! degree N is exact and degrees above N do not exist, so precision loss is
//! always explicit. Binary operations require the same ring and variable and
//! truncate to the minimum of the two orders.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::ring::Ring;

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<R: Ring> {
    ring: R,
    var: String,
    coeffs: Vec<R::Elem>, // indices 0..=order
}

impl<R: Ring> TruncatedSeries<R> {
    pub fn zero(ring: &R, var: &str, order: usize) -> Self {
        TruncatedSeries {
            ring: ring.clone(),
            var: var.to_string(),
            coeffs: vec![ring.zero(); order + 1],
        }
    }

    pub fn constant(ring: &R, var: &str, order: usize, value: R::Elem) -> Self {
        let mut s = Self::zero(ring, var, order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(ring: &R, var: &str, order: usize) -> Self {
        Self::constant(ring, var, order, ring.one())
    }

    /// The identity series `t`.
    pub fn identity(ring: &R, var: &str, order: usize) -> Self {
        Self::monomial(ring, var, order, 1, ring.one())
    }

    /// `value * t^degree`, zero if `degree > order`.
    pub fn monomial(ring: &R, var: &str, order: usize, degree: usize, value: R::Elem) -> Self {
        let mut s = Self::zero(ring, var, order);
        if degree <= order {
            s.coeffs[degree] = value;
        }
        s
    }

    /// Builds from a dense coefficient list; the order is `len - 1`.
    pub fn from_coeffs(ring: &R, var: &str, coeffs: Vec<R::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        TruncatedSeries {
            ring: ring.clone(),
            var: var.to_string(),
            coeffs,
        }
    }

    pub fn from_rationals(ring: &R, var: &str, values: &[Rational]) -> Self {
        Self::from_coeffs(
            ring,
            var,
            values.iter().map(|q| ring.from_rational(q)).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// Coefficient of `t^n`; panics past the truncation order, where the
    /// value would be undefined rather than zero.
    pub fn coeff(&self, n: usize) -> &R::Elem {
        assert!(
            n <= self.order(),
            "coefficient {} requested but series is only exact through degree {}",
            n,
            self.order()
        );
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &R::Elem {
        &self.coeffs[0]
    }

    pub fn linear_coeff(&self) -> &R::Elem {
        self.coeff(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    pub fn set_coeff(&mut self, n: usize, value: R::Elem) {
        assert!(n <= self.order());
        self.coeffs[n] = value;
    }

    /// Restricts to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(
            order <= self.order(),
            "cannot extend a series from order {} to {}",
            self.order(),
            order
        );
        TruncatedSeries {
            ring: self.ring.clone(),
            var: self.var.clone(),
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.var != other.var {
            return Err(Error::VariableMismatch {
                left: self.var.clone(),
                right: other.var.clone(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| self.ring.add(&self.coeffs[n], &other.coeffs[n]))
            .collect();
        Ok(TruncatedSeries {
            ring: self.ring.clone(),
            var: self.var.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            ring: self.ring.clone(),
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(|c| self.ring.neg(c)).collect(),
        }
    }

    /// Cauchy product truncated at the minimum order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let order = self.order().min(other.order());
        let mut coeffs = vec![self.ring.zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if self.ring.is_zero(b) {
                    continue;
                }
                let prod = self.ring.mul(a, b);
                self.ring.add_assign(&mut coeffs[i + j], &prod);
            }
        }
        Ok(TruncatedSeries {
            ring: self.ring.clone(),
            var: self.var.clone(),
            coeffs,
        })
    }

    /// Multiplies every coefficient by a ring element.
    pub fn scale(&self, s: &R::Elem) -> Self {
        TruncatedSeries {
            ring: self.ring.clone(),
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(|c| self.ring.mul(c, s)).collect(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        TruncatedSeries {
            ring: self.ring.clone(),
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(|c| self.ring.scale(c, q)).collect(),
        }
    }

    /// Argument rescaling `f(t) -> f(a t)`.
    pub fn scale_argument(&self, a: &R::Elem) -> Self {
        let mut power = self.ring.one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    power = self.ring.mul(&power, a);
                }
                self.ring.mul(c, &power)
            })
            .collect();
        TruncatedSeries {
            ring: self.ring.clone(),
            var: self.var.clone(),
            coeffs,
        }
    }

    /// Termwise derivative; the result is exact only through order N-1.
    pub fn derivative(&self) -> Self {
        assert!(self.order() >= 1, "cannot differentiate an order-0 series");
        let coeffs = (1..=self.order())
            .map(|n| self.ring.scale(&self.coeffs[n], &Rational::from_int(n as i64)))
            .collect();
        TruncatedSeries {
            ring: self.ring.clone(),
            var: self.var.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, exp: u64) -> Self {
        let mut result = Self::one(&self.ring, &self.var, self.order());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same ring and variable");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring and variable");
            }
        }
        result
    }

    /// Multiplicative inverse `1/f`; requires a unit constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0_inv = self.ring.inverse(&self.coeffs[0]).map_err(|_| {
            Error::NotAUnit(format!(
                "constant term {} of the series",
                self.ring.to_string(&self.coeffs[0])
            ))
        })?;
        let order = self.order();
        let mut out = vec![self.ring.zero(); order + 1];
        out[0] = c0_inv.clone();
        for n in 1..=order {
            let mut acc = self.ring.zero();
            for k in 1..=n {
                if self.ring.is_zero(&self.coeffs[k]) {
                    continue;
                }
                let prod = self.ring.mul(&self.coeffs[k], &out[n - k]);
                self.ring.add_assign(&mut acc, &prod);
            }
            out[n] = self.ring.neg(&self.ring.mul(&c0_inv, &acc));
        }
        Ok(TruncatedSeries {
            ring: self.ring.clone(),
            var: self.var.clone(),
            coeffs: out,
        })
    }

    /// Substitution `f(g(t))`; `g` must have zero constant term. The result
    /// lives in `g`'s variable at the minimum of the two orders.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if self.ring != g.ring {
            return Err(Error::RingMismatch);
        }
        if !self.ring.is_zero(&g.coeffs[0]) {
            return Err(Error::ConstantTerm {
                expected: "0".to_string(),
                found: self.ring.to_string(&g.coeffs[0]),
            });
        }
        let order = self.order().min(g.order());
        let g = g.truncate(order);
        // Horner from the top coefficient down
        let mut result = TruncatedSeries::constant(
            &self.ring,
            &g.var,
            order,
            self.coeffs[order].clone(),
        );
        for n in (0..order).rev() {
            result = result.mul(&g)?;
            self.ring.add_assign(&mut result.coeffs[0], &self.coeffs[n]);
        }
        Ok(result)
    }

    /// Compositional inverse: the unique `g` with `f(g(t)) = g(f(t)) = t`
    /// through the truncation order. Solves the triangular system degree by
    /// degree, so it only needs the linear coefficient to be a unit.
    pub fn revert(&self) -> Result<Self> {
        if !self.ring.is_zero(&self.coeffs[0]) {
            return Err(Error::ConstantTerm {
                expected: "0".to_string(),
                found: self.ring.to_string(&self.coeffs[0]),
            });
        }
        let order = self.order();
        assert!(order >= 1, "reversion needs at least a linear term");
        let lin_inv = self.ring.inverse(&self.coeffs[1]).map_err(|_| {
            Error::NonInvertibleLinear(self.ring.to_string(&self.coeffs[1]))
        })?;

        // b[n] = [t^n] g; pows[k][n] = [t^n] g^k, filled in increasing n.
        let mut b = vec![self.ring.zero(); order + 1];
        b[1] = lin_inv.clone();
        let mut pows = vec![vec![self.ring.zero(); order + 1]; order + 1];
        if order >= 1 {
            pows[1][1] = b[1].clone();
        }
        #[allow(clippy::needless_range_loop)]
        for n in 2..=order {
            for k in 2..=n {
                let mut acc = self.ring.zero();
                for j in 1..n {
                    if self.ring.is_zero(&b[j]) || self.ring.is_zero(&pows[k - 1][n - j]) {
                        continue;
                    }
                    let prod = self.ring.mul(&b[j], &pows[k - 1][n - j]);
                    self.ring.add_assign(&mut acc, &prod);
                }
                pows[k][n] = acc;
            }
            // [t^n] f(g) = f_1 b_n + sum_{k>=2} f_k [t^n] g^k must vanish
            let mut s = self.ring.zero();
            for k in 2..=n {
                if self.ring.is_zero(&self.coeffs[k]) {
                    continue;
                }
                let prod = self.ring.mul(&self.coeffs[k], &pows[k][n]);
                self.ring.add_assign(&mut s, &prod);
            }
            b[n] = self.ring.neg(&self.ring.mul(&lin_inv, &s));
            pows[1][n] = b[n].clone();
        }
        Ok(TruncatedSeries {
            ring: self.ring.clone(),
            var: self.var.clone(),
            coeffs: b,
        })
    }

    /// Divided power `f^k / k!`.
    pub fn divided_power(&self, k: usize) -> Self {
        self.pow(k as u64).scale_rational(&Rational::inverse_factorial(k))
    }

    /// Classical exponential of a series with zero constant term:
    /// the finite sum of divided powers `sum f^k/k!`.
    pub fn exp(&self) -> Result<Self> {
        if !self.ring.is_zero(&self.coeffs[0]) {
            return Err(Error::ConstantTerm {
                expected: "0".to_string(),
                found: self.ring.to_string(&self.coeffs[0]),
            });
        }
        let order = self.order();
        let mut result = Self::one(&self.ring, &self.var, order);
        let mut power = Self::one(&self.ring, &self.var, order);
        for k in 1..=order {
            power = power.mul(self)?;
            result = result.add(&power.scale_rational(&Rational::inverse_factorial(k)))?;
        }
        Ok(result)
    }

    /// Classical logarithm of a series with constant term 1:
    /// `sum (-1)^{k+1} (f-1)^k / k`.
    pub fn log(&self) -> Result<Self> {
        let one = self.ring.one();
        if self.coeffs[0] != one {
            return Err(Error::ConstantTerm {
                expected: "1".to_string(),
                found: self.ring.to_string(&self.coeffs[0]),
            });
        }
        let order = self.order();
        let mut u = self.clone();
        u.coeffs[0] = self.ring.zero();
        let mut result = Self::zero(&self.ring, &self.var, order);
        let mut power = Self::one(&self.ring, &self.var, order);
        for k in 1..=order {
            power = power.mul(&u)?;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let q = Rational::new(sign, k as i64).expect("k >= 1");
            result = result.add(&power.scale_rational(&q))?;
        }
        Ok(result)
    }

    /// Applies a coefficient map into another ring.
    pub fn map_ring<S: Ring>(
        &self,
        target: &S,
        f: impl FnMut(&R::Elem) -> Result<S::Elem>,
    ) -> Result<TruncatedSeries<S>> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries {
            ring: target.clone(),
            var: self.var.clone(),
            coeffs,
        })
    }

    pub fn rename_variable(&self, var: &str) -> Self {
        let mut s = self.clone();
        s.var = var.to_string();
        s
    }

    /// First index at which the two series differ, checked through the
    /// smaller order.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let order = self.order().min(other.order());
        (0..=order).find(|&n| self.coeffs[n] != other.coeffs[n])
    }
}

impl<R: Ring> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, c) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            wrote = true;
            let cs = self.ring.to_string(c);
            match n {
                0 => write!(f, "{cs}")?,
                1 => write!(f, "({cs})*{}", self.var)?,
                _ => write!(f, "({cs})*{}^{}", self.var, n)?,
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order() + 1)
    }
}

impl<R: Ring> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
