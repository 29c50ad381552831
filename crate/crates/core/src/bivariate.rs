//! Truncated series in two variables, with the three-variable support
//! needed to check associativity of group laws.
//!
//! Storage is sparse: only nonzero coefficients of `x^i y^j` with
//! `i + j <= order` are kept. All arithmetic is exact through the stated
//! total degree.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::ring::Ring;
use crate::series::TruncatedSeries;

#[derive(Clone, PartialEq)]
pub struct BivariateSeries<R: Ring> {
    ring: R,
    vars: (String, String),
    order: usize,
    terms: BTreeMap<(usize, usize), R::Elem>,
}

impl<R: Ring> BivariateSeries<R> {
    pub fn zero(ring: &R, vars: (&str, &str), order: usize) -> Self {
        BivariateSeries {
            ring: ring.clone(),
            vars: (vars.0.to_string(), vars.1.to_string()),
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        ring: &R,
        vars: (&str, &str),
        order: usize,
        terms: BTreeMap<(usize, usize), R::Elem>,
    ) -> Self {
        let mut s = Self::zero(ring, vars, order);
        for ((i, j), c) in terms {
            s.add_term(i, j, c);
        }
        s
    }

    /// Embeds a univariate series as a series in the first variable.
    pub fn from_univariate_x(s: &TruncatedSeries<R>, vars: (&str, &str), order: usize) -> Self {
        let mut out = Self::zero(s.ring(), vars, order);
        for n in 0..=s.order().min(order) {
            out.add_term(n, 0, s.coeff(n).clone());
        }
        out
    }

    /// Embeds a univariate series as a series in the second variable.
    pub fn from_univariate_y(s: &TruncatedSeries<R>, vars: (&str, &str), order: usize) -> Self {
        let mut out = Self::zero(s.ring(), vars, order);
        for n in 0..=s.order().min(order) {
            out.add_term(0, n, s.coeff(n).clone());
        }
        out
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn vars(&self) -> (&str, &str) {
        (&self.vars.0, &self.vars.1)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize, j: usize) -> R::Elem {
        assert!(
            i + j <= self.order,
            "coefficient ({i},{j}) requested but series is exact only through total degree {}",
            self.order
        );
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Nonzero terms in `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &R::Elem)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, i: usize, j: usize, c: R::Elem) {
        if i + j > self.order || self.ring.is_zero(&c) {
            return;
        }
        match self.terms.entry((i, j)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                self.ring.add_assign(o.get_mut(), &c);
                if self.ring.is_zero(o.get()) {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.vars != other.vars {
            return Err(Error::VariableMismatch {
                left: format!("({}, {})", self.vars.0, self.vars.1),
                right: format!("({}, {})", other.vars.0, other.vars.1),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let order = self.order.min(other.order);
        let mut out = Self::zero(&self.ring, self.vars(), order);
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, c.clone());
        }
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        BivariateSeries {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, self.ring.neg(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let order = self.order.min(other.order);
        let mut out = Self::zero(&self.ring, self.vars(), order);
        for (&(i1, j1), c1) in &self.terms {
            if i1 + j1 > order {
                continue;
            }
            for (&(i2, j2), c2) in &other.terms {
                if i1 + j1 + i2 + j2 > order {
                    continue;
                }
                out.add_term(i1 + i2, j1 + j2, self.ring.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        let mut out = Self::zero(&self.ring, self.vars(), self.order);
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, self.ring.mul(c, s));
        }
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        let mut out = Self::zero(&self.ring, self.vars(), self.order);
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, self.ring.scale(c, q));
        }
        out
    }

    pub fn pow(&self, exp: u64) -> Self {
        let mut result = {
            let mut one = Self::zero(&self.ring, self.vars(), self.order);
            one.add_term(0, 0, self.ring.one());
            one
        };
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same ring and variables");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring and variables");
            }
        }
        result
    }

    /// Exchanges the two variables: `F(x, y) -> F(y, x)`.
    pub fn swap_vars(&self) -> Self {
        BivariateSeries {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    /// Sets the second variable to zero, leaving a univariate series in the
    /// first.
    pub fn set_y_zero(&self, var: &str) -> TruncatedSeries<R> {
        let mut coeffs = vec![self.ring.zero(); self.order + 1];
        for (&(i, j), c) in &self.terms {
            if j == 0 {
                coeffs[i] = c.clone();
            }
        }
        TruncatedSeries::from_coeffs(&self.ring, var, coeffs)
    }

    /// Simultaneous substitution `F(gx, gy)`; both arguments must have zero
    /// constant term so the result is exact through the total-degree bound.
    pub fn substitute(&self, gx: &Self, gy: &Self) -> Result<Self> {
        gx.check_compatible(gy)?;
        if self.ring != gx.ring {
            return Err(Error::RingMismatch);
        }
        for (g, name) in [(gx, "first"), (gy, "second")] {
            if g.terms.contains_key(&(0, 0)) {
                return Err(Error::ConstantTerm {
                    expected: "0".to_string(),
                    found: format!("nonzero constant in the {name} substituted series"),
                });
            }
        }
        let order = self.order.min(gx.order).min(gy.order);
        let mut x_powers: Vec<BivariateSeries<R>> = Vec::with_capacity(order + 1);
        let mut y_powers: Vec<BivariateSeries<R>> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            if k == 0 {
                let mut one = Self::zero(&self.ring, gx.vars(), order);
                one.add_term(0, 0, self.ring.one());
                x_powers.push(one.clone());
                y_powers.push(one);
            } else {
                x_powers.push(x_powers[k - 1].mul(&gx.truncate(order))?);
                y_powers.push(y_powers[k - 1].mul(&gy.truncate(order))?);
            }
        }
        let mut out = Self::zero(&self.ring, gx.vars(), order);
        for (&(i, j), c) in &self.terms {
            if i + j > order {
                continue;
            }
            let term = x_powers[i].mul(&y_powers[j])?.scale(c);
            out = out.add(&term)?;
        }
        Ok(out)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order);
        let mut out = Self::zero(&self.ring, self.vars(), order);
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn map_ring<S: Ring>(
        &self,
        target: &S,
        mut f: impl FnMut(&R::Elem) -> Result<S::Elem>,
    ) -> Result<BivariateSeries<S>> {
        let mut out = BivariateSeries::zero(target, self.vars(), self.order);
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, f(c)?);
        }
        Ok(out)
    }

    /// First position (by total degree, then lexicographic) where the two
    /// series differ, through the smaller order.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        let order = self.order.min(other.order);
        let mut keys: Vec<(usize, usize)> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .copied()
            .filter(|&(i, j)| i + j <= order)
            .collect();
        keys.sort_by_key(|&(i, j)| (i + j, i));
        keys.dedup();
        keys.into_iter().find(|&(i, j)| {
            let a = self.terms.get(&(i, j));
            let b = other.terms.get(&(i, j));
            match (a, b) {
                (Some(x), Some(y)) => x != y,
                (Some(x), None) => !self.ring.is_zero(x),
                (None, Some(y)) => !self.ring.is_zero(y),
                (None, None) => false,
            }
        })
    }
}

/// `f(G)` for univariate `f` and bivariate `G` with zero constant term; the
/// constant term of `f` is allowed and lands at position `(0, 0)`.
pub fn univariate_at_bivariate<R: Ring>(
    f: &TruncatedSeries<R>,
    g: &BivariateSeries<R>,
) -> Result<BivariateSeries<R>> {
    if f.ring() != g.ring() {
        return Err(Error::RingMismatch);
    }
    if g.terms.contains_key(&(0, 0)) {
        return Err(Error::ConstantTerm {
            expected: "0".to_string(),
            found: "nonzero constant in the substituted series".to_string(),
        });
    }
    let ring = f.ring().clone();
    let order = f.order().min(g.order());
    let g = g.truncate(order);
    let mut result = BivariateSeries::zero(&ring, g.vars(), order);
    result.add_term(0, 0, f.coeff(order).clone());
    for n in (0..order).rev() {
        result = result.mul(&g)?;
        result.add_term(0, 0, f.coeff(n).clone());
    }
    Ok(result)
}

impl<R: Ring> fmt::Display for BivariateSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut entries: Vec<(usize, usize)> = self.terms.keys().copied().collect();
        entries.sort_by_key(|&(i, j)| (i + j, i));
        let mut wrote = false;
        for (i, j) in entries {
            let c = &self.terms[&(i, j)];
            if wrote {
                write!(f, " + ")?;
            }
            wrote = true;
            write!(f, "({})", self.ring.to_string(c))?;
            if i > 0 {
                write!(f, "*{}", self.vars.0)?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
            if j > 0 {
                write!(f, "*{}", self.vars.1)?;
                if j > 1 {
                    write!(f, "^{j}")?;
                }
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(deg {})", self.order + 1)
    }
}

impl<R: Ring> fmt::Debug for BivariateSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Three-variable truncation used for associativity checks.
#[derive(Clone, PartialEq)]
pub(crate) struct TrivariateSeries<R: Ring> {
    ring: R,
    order: usize,
    terms: BTreeMap<(usize, usize, usize), R::Elem>,
}

impl<R: Ring> TrivariateSeries<R> {
    pub fn zero(ring: &R, order: usize) -> Self {
        TrivariateSeries {
            ring: ring.clone(),
            order,
            terms: BTreeMap::new(),
        }
    }

    fn add_term(&mut self, key: (usize, usize, usize), c: R::Elem) {
        if key.0 + key.1 + key.2 > self.order || self.ring.is_zero(&c) {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                self.ring.add_assign(o.get_mut(), &c);
                if self.ring.is_zero(o.get()) {
                    o.remove();
                }
            }
        }
    }

    /// The variable x, y, or z by position.
    pub fn variable(ring: &R, order: usize, position: usize) -> Self {
        let mut s = Self::zero(ring, order);
        let key = match position {
            0 => (1, 0, 0),
            1 => (0, 1, 0),
            _ => (0, 0, 1),
        };
        s.add_term(key, ring.one());
        s
    }

    /// Embeds a bivariate series into variable slots `(a, b)` of the three.
    pub fn from_bivariate(f: &BivariateSeries<R>, slots: (usize, usize), order: usize) -> Self {
        let mut out = Self::zero(f.ring(), order);
        for ((i, j), c) in f.terms() {
            let mut key = [0usize; 3];
            key[slots.0] += i;
            key[slots.1] += j;
            out.add_term((key[0], key[1], key[2]), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(&self.ring, order);
        for (&(i1, j1, k1), c1) in &self.terms {
            if i1 + j1 + k1 > order {
                continue;
            }
            for (&(i2, j2, k2), c2) in &other.terms {
                if i1 + j1 + k1 + i2 + j2 + k2 > order {
                    continue;
                }
                out.add_term((i1 + i2, j1 + j2, k1 + k2), self.ring.mul(c1, c2));
            }
        }
        out
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        let mut out = Self::zero(&self.ring, self.order);
        for (&k, c) in &self.terms {
            out.add_term(k, self.ring.mul(c, s));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(&self.ring, order);
        for (&k, c) in &self.terms {
            out.add_term(k, c.clone());
        }
        for (&k, c) in &other.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.contains_key(&(0, 0, 0))
    }

    /// `F(p, q)` where `F` is bivariate and `p`, `q` are trivariate with zero
    /// constant term.
    pub fn substitute_bivariate(f: &BivariateSeries<R>, p: &Self, q: &Self) -> Self {
        assert!(!p.has_constant_term() && !q.has_constant_term());
        let ring = f.ring().clone();
        let order = f.order().min(p.order).min(q.order);
        let max_i = f.terms().map(|((i, _), _)| i).max().unwrap_or(0);
        let max_j = f.terms().map(|((_, j), _)| j).max().unwrap_or(0);
        let mut p_powers = vec![Self::one(&ring, order)];
        for i in 1..=max_i.min(order) {
            p_powers.push(p_powers[i - 1].mul(p));
        }
        let mut q_powers = vec![Self::one(&ring, order)];
        for j in 1..=max_j.min(order) {
            q_powers.push(q_powers[j - 1].mul(q));
        }
        let mut out = Self::zero(&ring, order);
        for ((i, j), c) in f.terms() {
            if i > order || j > order || i + j > order {
                continue;
            }
            out = out.add(&p_powers[i].mul(&q_powers[j]).scale(c));
        }
        out
    }

    fn one(ring: &R, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        s.add_term((0, 0, 0), ring.one());
        s
    }

    /// First differing coefficient position, with both values.
    #[allow(clippy::type_complexity)]
    pub fn first_difference(&self, other: &Self) -> Option<((usize, usize, usize), R::Elem, R::Elem)> {
        let order = self.order.min(other.order);
        let mut keys: Vec<(usize, usize, usize)> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .copied()
            .filter(|&(i, j, k)| i + j + k <= order)
            .collect();
        keys.sort_by_key(|&(i, j, k)| (i + j + k, i, j));
        keys.dedup();
        for key in keys {
            let zero = self.ring.zero();
            let a = self.terms.get(&key).unwrap_or(&zero);
            let b = other.terms.get(&key).unwrap_or(&zero);
            if a != b {
                return Some((key, a.clone(), b.clone()));
            }
        }
        None
    }
}
