//! Symmetric-function generating series and the Newton identities.
//!
//! For a finite alphabet `x_1..x_k` the three classical generating
//! functions are
//!
//! ```text
//!   E(t) = prod (1 + x_i t)        elementary
//!   H(t) = 1 / E(-t)               complete homogeneous
//!   P(t) = H'(t)/H(t)              power sums, [t^{r-1}] P = p_r
//! ```
//!
//! Symbolically, `H(t) = exp(sum p_n t^n / n)` over `Q[p_*]`, and the
//! triangular Newton recurrences convert between the p, e, and h bases.
//! The normalized power sums `wp_n = p_n / p_1^n` (with `wp_1 = 1`) rewrite
//! any weight-homogeneous p-expression as a `wp`-polynomial times a power
//! of `p_1`; the linear variant `wp_n = p_n / p_1` is exposed separately
//! and the two are never mixed.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{GeneratorTable, GradedPolynomial, Monomial};
use crate::rational::Rational;
use crate::ring::{power_sum_table, wp_table, PolyRing, Rationals, Ring};
use crate::series::TruncatedSeries;

/// A finite list of rational values; signs are unconstrained here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    values: Vec<Rational>,
}

impl Alphabet {
    pub fn new(values: Vec<Rational>) -> Self {
        Alphabet { values }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `p_n = sum x_i^n`, `n >= 1`.
    pub fn power_sum(&self, n: usize) -> Rational {
        assert!(n >= 1, "power sums are indexed from 1");
        let mut total = Rational::zero();
        for v in &self.values {
            total += &v.pow(n as i64).expect("positive exponent");
        }
        total
    }

    /// Elementary symmetric value `e_n`, read off from `E(t)`.
    pub fn elementary(&self, n: usize) -> Rational {
        elementary_gf(self, n).coeff(n).clone()
    }

    /// Complete homogeneous value `h_n`, read off from `H(t)`.
    pub fn complete(&self, n: usize) -> Rational {
        complete_gf(self, n).coeff(n).clone()
    }
}

/// `E(t) = prod (1 + x_i t)` as a series truncated at `order`.
pub fn elementary_gf(alphabet: &Alphabet, order: usize) -> TruncatedSeries<Rationals> {
    let ring = Rationals;
    let mut out = TruncatedSeries::one(&ring, "t", order);
    for x in alphabet.values() {
        let mut factor = TruncatedSeries::one(&ring, "t", order);
        if order >= 1 {
            factor.set_coeff(1, x.clone());
        }
        out = out.mul(&factor).expect("same ring and variable");
    }
    out
}

/// `H(t) = 1 / E(-t)`.
pub fn complete_gf(alphabet: &Alphabet, order: usize) -> TruncatedSeries<Rationals> {
    let minus_one = Rational::from_int(-1);
    elementary_gf(alphabet, order)
        .scale_argument(&minus_one)
        .inverse()
        .expect("E(-t) has constant term 1")
}

/// `P(t) = H'(t)/H(t) = sum_{r >= 1} p_r t^{r-1}` through `order`.
pub fn power_sum_gf(alphabet: &Alphabet, order: usize) -> TruncatedSeries<Rationals> {
    let h = complete_gf(alphabet, order + 1);
    let derivative = h.derivative();
    let h_inv = h.truncate(order).inverse().expect("H has constant term 1");
    derivative.mul(&h_inv).expect("same ring and variable")
}

/// `H(t) = exp(sum p_n t^n / n)` over `Q[p_1..p_order]`; the coefficient of
/// `t^n` is the complete homogeneous `h_n` written in power sums.
pub fn complete_gf_in_power_sums(order: usize) -> TruncatedSeries<PolyRing> {
    let ring = PolyRing::new(power_sum_table(order));
    let mut arg = TruncatedSeries::zero(&ring, "t", order);
    for n in 1..=order {
        let p_n = ring.generator(&format!("p_{n}")).expect("generator exists");
        arg.set_coeff(n, p_n.scale(&Rational::new(1, n as i64).expect("n >= 1")));
    }
    arg.exp().expect("argument has zero constant term")
}

/// The three classical bases handled by [`convert`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymBasis {
    PowerSum,
    Elementary,
    Homogeneous,
}

impl SymBasis {
    pub fn prefix(self) -> &'static str {
        match self {
            SymBasis::PowerSum => "p",
            SymBasis::Elementary => "e",
            SymBasis::Homogeneous => "h",
        }
    }

    /// Generator table `prefix_1 .. prefix_n`, weight of `prefix_k` = k.
    pub fn table(self, n: usize) -> Arc<GeneratorTable> {
        match self {
            SymBasis::PowerSum => power_sum_table(n),
            _ => {
                let names: Vec<String> =
                    (1..=n).map(|k| format!("{}_{k}", self.prefix())).collect();
                let entries: Vec<(&str, u64)> = names
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.as_str(), (i + 1) as u64))
                    .collect();
                GeneratorTable::new(&entries).expect("generated names are unique")
            }
        }
    }
}

/// A polynomial expression tagged with the basis its generators belong to.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricExpr {
    pub basis: SymBasis,
    pub poly: GradedPolynomial,
}

impl SymmetricExpr {
    pub fn new(basis: SymBasis, poly: GradedPolynomial) -> Self {
        SymmetricExpr { basis, poly }
    }

    /// Numeric evaluation at an alphabet: each generator becomes the
    /// corresponding symmetric value of the alphabet.
    pub fn evaluate(&self, alphabet: &Alphabet) -> Result<Rational> {
        let mut values = BTreeMap::new();
        for name in self.poly.table().names() {
            let index = parse_generator_index(name, self.basis.prefix())?;
            let v = match self.basis {
                SymBasis::PowerSum => alphabet.power_sum(index),
                SymBasis::Elementary => alphabet.elementary(index),
                SymBasis::Homogeneous => alphabet.complete(index),
            };
            values.insert(name.to_string(), v);
        }
        self.poly.evaluate(&values)
    }
}

fn parse_generator_index(name: &str, prefix: &str) -> Result<usize> {
    name.strip_prefix(prefix)
        .and_then(|rest| rest.strip_prefix('_'))
        .and_then(|idx| idx.parse::<usize>().ok())
        .filter(|&idx| idx >= 1)
        .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
}

/// `e_n` written in power sums, via `n e_n = sum (-1)^{k-1} p_k e_{n-k}`.
fn elementary_in_power_sums(bound: usize, ring: &PolyRing) -> Vec<GradedPolynomial> {
    let mut e = vec![ring.one()];
    for n in 1..=bound {
        let mut acc = ring.zero();
        for k in 1..=n {
            let p_k = ring.generator(&format!("p_{k}")).expect("generator exists");
            let term = p_k.mul(&e[n - k]).expect("same table");
            let signed = if k % 2 == 1 { term } else { term.neg() };
            acc = acc.add(&signed).expect("same table");
        }
        e.push(acc.scale(&Rational::new(1, n as i64).expect("n >= 1")));
    }
    e
}

/// `h_n` written in power sums, via `n h_n = sum p_k h_{n-k}`.
fn homogeneous_in_power_sums(bound: usize, ring: &PolyRing) -> Vec<GradedPolynomial> {
    let mut h = vec![ring.one()];
    for n in 1..=bound {
        let mut acc = ring.zero();
        for k in 1..=n {
            let p_k = ring.generator(&format!("p_{k}")).expect("generator exists");
            acc = acc.add(&p_k.mul(&h[n - k]).expect("same table")).expect("same table");
        }
        h.push(acc.scale(&Rational::new(1, n as i64).expect("n >= 1")));
    }
    h
}

/// `p_n` written in the e- or h-basis by recursive back-substitution of the
/// Newton identities.
fn power_sums_in_basis(basis: SymBasis, bound: usize, ring: &PolyRing) -> Vec<GradedPolynomial> {
    let mut p: Vec<GradedPolynomial> = vec![ring.zero()]; // p_0 unused
    for n in 1..=bound {
        let gen_n = ring
            .generator(&format!("{}_{n}", basis.prefix()))
            .expect("generator exists");
        let mut acc = gen_n.scale(&Rational::from_int(n as i64));
        if basis == SymBasis::Elementary && n % 2 == 0 {
            acc = acc.neg();
        }
        for k in 1..n {
            let gen_k = ring
                .generator(&format!("{}_{k}", basis.prefix()))
                .expect("generator exists");
            let term = gen_k.mul(&p[n - k]).expect("same table");
            let signed = match basis {
                // p_n = sum_{k<n} (-1)^{k-1} e_k p_{n-k} + (-1)^{n-1} n e_n
                SymBasis::Elementary => {
                    if k % 2 == 1 {
                        term
                    } else {
                        term.neg()
                    }
                }
                // p_n = n h_n - sum_{k<n} h_k p_{n-k}
                SymBasis::Homogeneous => term.neg(),
                SymBasis::PowerSum => unreachable!(),
            };
            acc = acc.add(&signed).expect("same table");
        }
        p.push(acc);
    }
    p
}

/// Exact basis conversion through the Newton recurrences. The degree bound
/// must be at least the weight of the expression.
pub fn convert(expr: &SymmetricExpr, target: SymBasis, bound: usize) -> Result<SymmetricExpr> {
    let weight = expr.poly.max_weight();
    if weight > bound as u64 {
        return Err(Error::DegreeBound {
            bound: bound as u64,
            actual: weight,
        });
    }
    if expr.basis == target {
        return Ok(expr.clone());
    }

    // route through the power-sum basis
    let p_ring = PolyRing::new(SymBasis::PowerSum.table(bound));
    let in_p = if expr.basis == SymBasis::PowerSum {
        expr.poly.substitute(&p_ring.table().clone(), &BTreeMap::new())?
    } else {
        let expansions = power_sums_in_basis_inverse(expr.basis, bound, &p_ring);
        let assignment: BTreeMap<String, GradedPolynomial> = expr
            .poly
            .table()
            .names()
            .map(|name| {
                let index = parse_generator_index(name, expr.basis.prefix())?;
                Ok((name.to_string(), expansions[index].clone()))
            })
            .collect::<Result<_>>()?;
        expr.poly.substitute(&p_ring.table().clone(), &assignment)?
    };

    if target == SymBasis::PowerSum {
        return Ok(SymmetricExpr::new(target, in_p));
    }

    let t_ring = PolyRing::new(target.table(bound));
    let expansions = power_sums_in_basis(target, bound, &t_ring);
    let assignment: BTreeMap<String, GradedPolynomial> = in_p
        .table()
        .names()
        .map(|name| {
            let index = parse_generator_index(name, "p")?;
            Ok((name.to_string(), expansions[index].clone()))
        })
        .collect::<Result<_>>()?;
    let out = in_p.substitute(&t_ring.table().clone(), &assignment)?;
    Ok(SymmetricExpr::new(target, out))
}

/// e_n or h_n expanded in power sums, indexed by n.
fn power_sums_in_basis_inverse(
    basis: SymBasis,
    bound: usize,
    p_ring: &PolyRing,
) -> Vec<GradedPolynomial> {
    match basis {
        SymBasis::Elementary => elementary_in_power_sums(bound, p_ring),
        SymBasis::Homogeneous => homogeneous_in_power_sums(bound, p_ring),
        SymBasis::PowerSum => unreachable!(),
    }
}

/// Rewrites a weight-homogeneous p-polynomial with `p_n = wp_n p_1^n`
/// (`wp_1 = 1`): the result is a polynomial in `wp_2, wp_3, ...` times
/// `p_1^weight`.
pub fn wp_normalize(poly: &GradedPolynomial) -> Result<GradedPolynomial> {
    let weight = poly.homogeneous_weight()?;
    let bound = (weight as usize).max(1);
    wp_normalize_in(poly, &wp_table(bound))
}

/// As [`wp_normalize`], but lands in a caller-supplied `wp` table so that
/// several coefficients of one series share a ring.
pub fn wp_normalize_in(
    poly: &GradedPolynomial,
    target: &Arc<GeneratorTable>,
) -> Result<GradedPolynomial> {
    let weight = poly.homogeneous_weight()?;
    let out = wp_substitute(poly, target, |n| if n >= 2 { Some(n as u64) } else { None })?;
    debug_assert!(out.is_homogeneous_of_weight(weight));
    Ok(out)
}

/// The linear variant `p_n = p_1 wp_n` (so `wp_n = p_n / p_1`); no
/// homogeneity is required.
pub fn wp_normalize_linear(poly: &GradedPolynomial) -> Result<GradedPolynomial> {
    let bound = (poly.max_weight() as usize).max(1);
    let target = wp_table(bound);
    wp_substitute(poly, &target, |n| if n >= 2 { Some(1) } else { None })
}

/// Shared substitution: `p_n -> wp_n * p_1^{p1_exponent(n)}`, `p_1 -> p_1`.
fn wp_substitute(
    poly: &GradedPolynomial,
    target: &Arc<GeneratorTable>,
    p1_exponent: impl Fn(usize) -> Option<u64>,
) -> Result<GradedPolynomial> {
    let p1_index = target
        .index_of("p_1")
        .ok_or_else(|| Error::UnknownGenerator("p_1".to_string()))?;
    let mut out = GradedPolynomial::zero(target.clone());
    for (monomial, coeff) in poly.terms() {
        let mut pairs: Vec<(usize, u64)> = Vec::new();
        let mut p1_power: u64 = 0;
        for (index, exp) in monomial.exponents() {
            let name = poly.table().name(*index);
            let n = parse_generator_index(name, "p")?;
            match p1_exponent(n) {
                None => p1_power += exp, // p_1 itself
                Some(per_factor) => {
                    let wp_index = target
                        .index_of(&format!("wp_{n}"))
                        .ok_or_else(|| Error::UnknownGenerator(format!("wp_{n}")))?;
                    pairs.push((wp_index, *exp));
                    p1_power += per_factor * exp;
                }
            }
        }
        if p1_power > 0 {
            pairs.push((p1_index, p1_power));
        }
        let term = GradedPolynomial::from_terms(
            target.clone(),
            [(Monomial::from_pairs(pairs), coeff.clone())],
        );
        out = out.add(&term)?;
    }
    Ok(out)
}
