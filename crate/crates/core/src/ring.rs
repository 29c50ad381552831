//! Coefficient rings for symbolic series.
//!
//! Everything here is a commutative Q-algebra: the rationals themselves and
//! polynomial rings `Q[generators]`. Series code is generic over [`Ring`];
//! a ring value carries whatever context its elements need (the generator
//! table, for polynomials) and all operations go through it.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{GeneratorTable, GradedPolynomial};
use crate::rational::Rational;

/// A commutative ring containing the rationals.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// Embedding of the rational scalars.
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, q: &Rational) -> Self::Elem;

    /// Multiplication by a rational scalar.
    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem {
        self.mul(a, &self.from_rational(q))
    }

    /// Multiplicative inverse when `a` is a unit, an error otherwise.
    fn inverse(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn pow(&self, a: &Self::Elem, exp: u64) -> Self::Elem {
        let mut result = self.one();
        let mut base = a.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    fn to_string(&self, a: &Self::Elem) -> String;

    /// Wire form of an element; rationals become `"num/den"` strings,
    /// polynomials become term arrays.
    fn elem_to_json(&self, a: &Self::Elem) -> serde_json::Value;

    fn elem_from_json(&self, v: &serde_json::Value) -> Result<Self::Elem>;
}

/// The field Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }

    fn inverse(&self, a: &Rational) -> Result<Rational> {
        a.inverse()
            .map_err(|_| Error::NotAUnit("0".to_string()))
    }

    fn to_string(&self, a: &Rational) -> String {
        a.to_string()
    }

    fn elem_to_json(&self, a: &Rational) -> serde_json::Value {
        serde_json::Value::String(a.to_string())
    }

    fn elem_from_json(&self, v: &serde_json::Value) -> Result<Rational> {
        match v {
            serde_json::Value::String(s) => s.parse(),
            other => Err(Error::Parse(format!("expected \"num/den\" string, got {other}"))),
        }
    }
}

/// The polynomial ring `Q[generators]` for a fixed generator table.
#[derive(Clone, Debug)]
pub struct PolyRing {
    table: Arc<GeneratorTable>,
}

impl PolyRing {
    pub fn new(table: Arc<GeneratorTable>) -> Self {
        PolyRing { table }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn constant(&self, q: Rational) -> GradedPolynomial {
        GradedPolynomial::constant(self.table.clone(), q)
    }

    pub fn generator(&self, name: &str) -> Result<GradedPolynomial> {
        GradedPolynomial::generator(self.table.clone(), name)
    }
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table) || self.table == other.table
    }
}

impl Ring for PolyRing {
    type Elem = GradedPolynomial;

    fn zero(&self) -> GradedPolynomial {
        GradedPolynomial::zero(self.table.clone())
    }

    fn one(&self) -> GradedPolynomial {
        GradedPolynomial::one(self.table.clone())
    }

    fn is_zero(&self, a: &GradedPolynomial) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &GradedPolynomial, b: &GradedPolynomial) -> GradedPolynomial {
        a.add(b).expect("elements of one PolyRing share a table")
    }

    fn neg(&self, a: &GradedPolynomial) -> GradedPolynomial {
        a.neg()
    }

    fn mul(&self, a: &GradedPolynomial, b: &GradedPolynomial) -> GradedPolynomial {
        a.mul(b).expect("elements of one PolyRing share a table")
    }

    fn from_rational(&self, q: &Rational) -> GradedPolynomial {
        self.constant(q.clone())
    }

    fn scale(&self, a: &GradedPolynomial, q: &Rational) -> GradedPolynomial {
        a.scale(q)
    }

    /// Units are the nonzero constants.
    fn inverse(&self, a: &GradedPolynomial) -> Result<GradedPolynomial> {
        match a.as_constant() {
            Some(c) if !c.is_zero() => Ok(self.constant(c.inverse()?)),
            _ => Err(Error::NotAUnit(a.to_string())),
        }
    }

    fn to_string(&self, a: &GradedPolynomial) -> String {
        a.to_string()
    }

    fn elem_to_json(&self, a: &GradedPolynomial) -> serde_json::Value {
        crate::json::poly_to_json(a)
    }

    fn elem_from_json(&self, v: &serde_json::Value) -> Result<GradedPolynomial> {
        crate::json::poly_from_json(&self.table, v)
    }
}

/// Builds the table `p_1 .. p_n` of power-sum generators, `p_k` of weight `k`.
pub fn power_sum_table(n: usize) -> Arc<GeneratorTable> {
    let names: Vec<String> = (1..=n).map(|k| format!("p_{k}")).collect();
    let entries: Vec<(&str, u64)> = names
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), (i + 1) as u64))
        .collect();
    GeneratorTable::new(&entries).expect("generated names are unique")
}

/// Builds `wp_2 .. wp_n` (weight 0) followed by `p_1` (weight 1): the ring
/// of normalized power sums with one scale generator.
pub fn wp_table(n: usize) -> Arc<GeneratorTable> {
    let names: Vec<String> = (2..=n).map(|k| format!("wp_{k}")).collect();
    let mut entries: Vec<(&str, u64)> = names.iter().map(|s| (s.as_str(), 0u64)).collect();
    entries.push(("p_1", 1));
    GeneratorTable::new(&entries).expect("generated names are unique")
}

/// Scalar substitution applied to every generator of a polynomial via a
/// name-indexed map; errors when a generator is missing from the map.
pub fn evaluate_poly(
    p: &GradedPolynomial,
    values: &BTreeMap<String, Rational>,
) -> Result<Rational> {
    p.evaluate(values)
}
