//! Sparse multivariate polynomials over the rationals with named, weighted
//! generators.
//!
//! A `GradedPolynomial` stores `monomial -> coefficient` with no zero
//! coefficients; the empty monomial is the constant term. Every polynomial
//! carries a shared [`GeneratorTable`] and two polynomials combine only when
//! their tables agree. The weight of a monomial is the sum of
//! `exponent * generator weight`.
//!
//! Canonical term order is graded lexicographic: total degree first, then
//! exponent vectors compared in generator-table order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Ordered list of `(name, weight)` generator declarations.
#[derive(Debug, PartialEq, Eq)]
pub struct GeneratorTable {
    names: Vec<String>,
    weights: Vec<u64>,
}

impl GeneratorTable {
    /// Declares generators up front. Names must be unique.
    pub fn new(entries: &[(&str, u64)]) -> Result<Arc<Self>> {
        let mut names = Vec::with_capacity(entries.len());
        let mut weights = Vec::with_capacity(entries.len());
        for (name, weight) in entries {
            if names.iter().any(|n| n == name) {
                return Err(Error::DuplicateGenerator(name.to_string()));
            }
            names.push(name.to_string());
            weights.push(*weight);
        }
        Ok(Arc::new(GeneratorTable { names, weights }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn weight(&self, index: usize) -> u64 {
        self.weights[index]
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(|s| s.as_str())
    }
}

fn same_table(a: &Arc<GeneratorTable>, b: &Arc<GeneratorTable>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent vector, sparse: sorted `(generator index, exponent > 0)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(usize, u64)>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(index: usize) -> Self {
        Monomial(vec![(index, 1)])
    }

    /// Builds from possibly unsorted pairs, dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u64)>) -> Self {
        let mut map: BTreeMap<usize, u64> = BTreeMap::new();
        for (i, e) in pairs {
            if e > 0 {
                *map.entry(i).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[(usize, u64)] {
        &self.0
    }

    pub fn exponent_of(&self, index: usize) -> u64 {
        self.0
            .iter()
            .find(|(i, _)| *i == index)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn weight(&self, table: &GeneratorTable) -> u64 {
        self.0.iter().map(|(i, e)| table.weight(*i) * e).sum()
    }

    /// Product of monomials: exponents add.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, ea)), Some((ib, eb))) => {
                    if ia < ib {
                        out.push((*ia, *ea));
                        a.next();
                    } else if ib < ia {
                        out.push((*ib, *eb));
                        b.next();
                    } else {
                        out.push((*ia, ea + eb));
                        a.next();
                        b.next();
                    }
                }
                (Some(_), None) => {
                    out.extend(a.cloned());
                    break;
                }
                (None, Some(_)) => {
                    out.extend(b.cloned());
                    break;
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // graded lex: total degree, then larger exponent on an earlier
        // generator compares greater
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                let mut a = self.0.iter();
                let mut b = other.0.iter();
                loop {
                    match (a.next(), b.next()) {
                        (Some((ia, ea)), Some((ib, eb))) => {
                            // smaller index means an earlier generator appears
                            match ib.cmp(ia).then(ea.cmp(eb)) {
                                std::cmp::Ordering::Equal => continue,
                                ord => return ord,
                            }
                        }
                        (Some(_), None) => return std::cmp::Ordering::Greater,
                        (None, Some(_)) => return std::cmp::Ordering::Less,
                        (None, None) => return std::cmp::Ordering::Equal,
                    }
                }
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over [`Rational`] with weighted generators.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedPolynomial {
    table: Arc<GeneratorTable>,
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPolynomial {
    pub fn zero(table: Arc<GeneratorTable>) -> Self {
        GradedPolynomial {
            table,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(table: Arc<GeneratorTable>, value: Rational) -> Self {
        let mut p = GradedPolynomial::zero(table);
        if !value.is_zero() {
            p.terms.insert(Monomial::unit(), value);
        }
        p
    }

    pub fn one(table: Arc<GeneratorTable>) -> Self {
        GradedPolynomial::constant(table, Rational::one())
    }

    /// The generator named `name` as a polynomial.
    pub fn generator(table: Arc<GeneratorTable>, name: &str) -> Result<Self> {
        let index = table
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        let mut p = GradedPolynomial::zero(table);
        p.terms.insert(Monomial::generator(index), Rational::one());
        Ok(p)
    }

    pub fn from_terms(
        table: Arc<GeneratorTable>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = GradedPolynomial::zero(table);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::unit())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Some(c) when the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::unit()).cloned(),
            _ => None,
        }
    }

    pub fn coefficient(&self, monomial: &Monomial) -> Rational {
        self.terms.get(monomial).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::unit())
    }

    /// Terms in canonical (graded lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, monomial: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Termwise exact sum. Errors when the generator tables differ.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if !same_table(&self.table, &other.table) {
            return Err(Error::TableMismatch(
                "cannot add polynomials over different generator tables".into(),
            ));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        GradedPolynomial {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    /// Distributive exact product. Errors when the generator tables differ.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if !same_table(&self.table, &other.table) {
            return Err(Error::TableMismatch(
                "cannot multiply polynomials over different generator tables".into(),
            ));
        }
        let mut out = GradedPolynomial::zero(self.table.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return GradedPolynomial::zero(self.table.clone());
        }
        GradedPolynomial {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn pow(&self, exp: u64) -> Self {
        let mut result = GradedPolynomial::one(self.table.clone());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same table");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same table");
            }
        }
        result
    }

    /// Simultaneous substitution into a (possibly different) target table.
    ///
    /// Generators named in `assignment` are replaced by the given
    /// polynomials, which must live over `target`; generators left fixed
    /// must exist in `target` under the same name.
    pub fn substitute(
        &self,
        target: &Arc<GeneratorTable>,
        assignment: &BTreeMap<String, GradedPolynomial>,
    ) -> Result<GradedPolynomial> {
        for value in assignment.values() {
            if !same_table(value.table(), target) {
                return Err(Error::TableMismatch(
                    "substitution value lives over a different table than the target".into(),
                ));
            }
        }
        let mut out = GradedPolynomial::zero(target.clone());
        for (monomial, coeff) in &self.terms {
            let mut term = GradedPolynomial::constant(target.clone(), coeff.clone());
            for (index, exp) in monomial.exponents() {
                let name = self.table.name(*index);
                let factor = match assignment.get(name) {
                    Some(value) => value.pow(*exp),
                    None => {
                        let fixed = GradedPolynomial::generator(target.clone(), name)?;
                        fixed.pow(*exp)
                    }
                };
                term = term.mul(&factor)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Substitutes rational values for a subset of generators.
    pub fn substitute_scalars(
        &self,
        target: &Arc<GeneratorTable>,
        values: &BTreeMap<String, Rational>,
    ) -> Result<GradedPolynomial> {
        let assignment = values
            .iter()
            .map(|(name, v)| (name.clone(), GradedPolynomial::constant(target.clone(), v.clone())))
            .collect();
        self.substitute(target, &assignment)
    }

    /// Full evaluation: every generator that occurs must be assigned.
    pub fn evaluate(&self, values: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut total = Rational::zero();
        for (monomial, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (index, exp) in monomial.exponents() {
                let name = self.table.name(*index);
                let v = values
                    .get(name)
                    .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
                term *= &v.pow(*exp as i64).expect("nonnegative exponent");
            }
            total += &term;
        }
        Ok(total)
    }

    /// Largest monomial weight, 0 for the zero polynomial.
    pub fn max_weight(&self) -> u64 {
        self.terms
            .keys()
            .map(|m| m.weight(&self.table))
            .max()
            .unwrap_or(0)
    }

    /// True when every term has weight `w`. The zero polynomial is
    /// homogeneous of every weight.
    pub fn is_homogeneous_of_weight(&self, w: u64) -> bool {
        self.terms.keys().all(|m| m.weight(&self.table) == w)
    }

    /// The common weight of all terms, or an error for mixed weights.
    /// Zero polynomial reports weight 0.
    pub fn homogeneous_weight(&self) -> Result<u64> {
        let mut weights = self.terms.keys().map(|m| m.weight(&self.table));
        let first = match weights.next() {
            None => return Ok(0),
            Some(w) => w,
        };
        if weights.all(|w| w == first) {
            Ok(first)
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    fn fmt_monomial(&self, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (index, exp) in m.exponents() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.table.name(*index))?;
            if *exp > 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mag = c.abs();
            if m.is_unit() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                self.fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::ops::Add for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn add(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        GradedPolynomial::add(self, rhs).expect("generator table mismatch")
    }
}

impl std::ops::Sub for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn sub(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        GradedPolynomial::sub(self, rhs).expect("generator table mismatch")
    }
}

impl std::ops::Mul for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn mul(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        GradedPolynomial::mul(self, rhs).expect("generator table mismatch")
    }
}

impl std::ops::Neg for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        GradedPolynomial::neg(self)
    }
}
