//! Independent oracles for the acceptance suite.
//!
//! Everything here recomputes expected values through a different route
//! than the code under test: Lagrange inversion instead of triangular
//! solving, the Stirling triangle instead of the binomial moment
//! recurrence, and a locally written cumulant recursion.

use fglab::rational::Rational;
use fglab::ring::{Rationals, Ring};
use fglab::series::TruncatedSeries;

/// Compositional inverse through the Lagrange inversion formula:
/// `[t^n] g = (1/n) [t^{n-1}] (t/f)^n`.
pub fn lagrange_revert(f: &TruncatedSeries<Rationals>) -> TruncatedSeries<Rationals> {
    let order = f.order();
    assert!(f.coeff(0).is_zero() && !f.coeff(1).is_zero());
    // u = f/t, a unit series; t/f = 1/u
    let shifted: Vec<Rational> = (1..=order).map(|n| f.coeff(n).clone()).collect();
    let u = TruncatedSeries::from_rationals(&Rationals, f.var(), &shifted);
    let u_inv = u.inverse().expect("unit constant term");
    let mut coeffs = vec![Rational::zero(); order + 1];
    let mut power = TruncatedSeries::one(&Rationals, f.var(), order);
    for n in 1..=order {
        power = power.mul(&u_inv).expect("compatible");
        let c = power.coeff(n - 1);
        coeffs[n] = c * &Rational::new(1, n as i64).expect("n >= 1");
    }
    TruncatedSeries::from_rationals(&Rationals, f.var(), &coeffs)
}

/// Stirling numbers of the second kind by the triangle recurrence.
pub fn stirling2(n: usize, k: usize) -> Rational {
    if n == 0 && k == 0 {
        return Rational::one();
    }
    if k == 0 || k > n {
        return Rational::zero();
    }
    // S(n, k) = k S(n-1, k) + S(n-1, k-1)
    let mut row = vec![Rational::one()]; // S(0, 0)
    for m in 1..=n {
        let mut next = vec![Rational::zero(); m + 1];
        for j in 1..=m {
            let same = if j < row.len() {
                &row[j] * &Rational::from_int(j as i64)
            } else {
                Rational::zero()
            };
            let diag = row[j - 1].clone();
            next[j] = same + diag;
        }
        row = next;
    }
    row[k].clone()
}

/// Poisson raw moment via the Touchard expansion `m_n = sum_k S(n,k) mu^k`.
pub fn poisson_moment_by_stirling(mu: &Rational, n: usize) -> Rational {
    let mut total = Rational::zero();
    for k in 0..=n {
        total += &(&stirling2(n, k) * &mu.pow(k as i64).expect("k >= 0"));
    }
    total
}

/// Classical cumulant recursion, written out locally:
/// `kappa_n = m_n - sum_{k=1}^{n-1} C(n-1, k-1) kappa_k m_{n-k}`.
/// Input is `m_0 .. m_N` with `m_0 = 1`; output `kappa_1 .. kappa_N`.
pub fn cumulants_by_recursion(moments: &[Rational]) -> Vec<Rational> {
    let order = moments.len() - 1;
    let mut kappa: Vec<Rational> = Vec::with_capacity(order);
    for n in 1..=order {
        let mut value = moments[n].clone();
        for k in 1..n {
            let c = binomial(n - 1, k - 1);
            value -= &(&c * &(&kappa[k - 1] * &moments[n - k]));
        }
        kappa.push(value);
    }
    kappa
}

fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut num = Rational::one();
    for i in 0..k {
        num = &num * &Rational::from_int((n - i) as i64);
        num = &num / &Rational::from_int((i + 1) as i64);
    }
    num
}

/// The same cumulant recursion run over an arbitrary ring, for symbolic
/// comparisons.
pub fn cumulants_by_recursion_in<R: Ring>(ring: &R, moments: &[R::Elem]) -> Vec<R::Elem> {
    let order = moments.len() - 1;
    let mut kappa: Vec<R::Elem> = Vec::with_capacity(order);
    for n in 1..=order {
        let mut value = moments[n].clone();
        for k in 1..n {
            let c = binomial(n - 1, k - 1);
            let term = ring.scale(&ring.mul(&kappa[k - 1], &moments[n - k]), &c);
            value = ring.sub(&value, &term);
        }
        kappa.push(value);
    }
    kappa
}
