//! The universal one-dimensional formal group law over symbolic
//! coefficients, its modulus, and the Cartier character.
//!
//! Everything happens over `Q[CP_1 .. CP_{N-1}]`, optionally extended by a
//! scale generator `b` and a character generator `beta` (both weight 1).
//! The universal logarithm is `t + sum CP_{n-1} t^n / n` with `CP_0 = 1`;
//! its law specializes to the multiplicative law at `CP_n = 1` and to the
//! additive law at `CP_n = 0`. Identifying `b CP_{n-1}` with the power sum
//! `p_n` sends the coefficients of `1 - e^{-b log(t)}` into the symmetric
//! functions. The character `b(t) = exp(beta log(t))`, the divided-power
//! sum of `beta log(t)`, turns the group law into multiplication:
//! `b(F(t0, t1)) = b(t0) b(t1)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bivariate::{univariate_at_bivariate, BivariateSeries};
use crate::error::{Error, Result};
use crate::fgl::{CoefficientCheck, FormalGroupLaw, EXP_VAR};
use crate::poly::{GeneratorTable, GradedPolynomial, Monomial};
use crate::rational::Rational;
use crate::ring::{power_sum_table, PolyRing, Rationals, Ring};
use crate::series::TruncatedSeries;

/// Generator table `CP_1 .. CP_{order-1}` (weight n), optionally followed
/// by `b` and `beta` (weight 1).
pub fn universal_table(order: usize, with_b: bool, with_beta: bool) -> Arc<GeneratorTable> {
    let mut names: Vec<(String, u64)> = (1..order)
        .map(|n| (format!("CP_{n}"), n as u64))
        .collect();
    if with_b {
        names.push(("b".to_string(), 1));
    }
    if with_beta {
        names.push(("beta".to_string(), 1));
    }
    let entries: Vec<(&str, u64)> = names.iter().map(|(s, w)| (s.as_str(), *w)).collect();
    GeneratorTable::new(&entries).expect("generated names are unique")
}

/// Fixes the truncation order and the symbolic coefficient ring for the
/// universal computations.
#[derive(Clone, Debug)]
pub struct UniversalContext {
    order: usize,
    ring: PolyRing,
    has_b: bool,
    has_beta: bool,
}

impl UniversalContext {
    /// Plain context over `Q[CP_*]`.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "order must be at least 1");
        UniversalContext {
            order,
            ring: PolyRing::new(universal_table(order, false, false)),
            has_b: false,
            has_beta: false,
        }
    }

    /// Adds the scale generator `b`.
    pub fn with_b(mut self) -> Self {
        self.has_b = true;
        self.ring = PolyRing::new(universal_table(self.order, true, self.has_beta));
        self
    }

    /// Adds the character generator `beta`.
    pub fn with_beta(mut self) -> Self {
        self.has_beta = true;
        self.ring = PolyRing::new(universal_table(self.order, self.has_b, true));
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// The universal logarithm `t + sum_{n>=2} CP_{n-1} t^n / n`.
    pub fn log(&self) -> TruncatedSeries<PolyRing> {
        let mut s = TruncatedSeries::zero(&self.ring, EXP_VAR, self.order);
        s.set_coeff(1, self.ring.one());
        for n in 2..=self.order {
            let cp = self
                .ring
                .generator(&format!("CP_{}", n - 1))
                .expect("table covers CP_1 .. CP_{order-1}");
            s.set_coeff(n, cp.scale(&Rational::new(1, n as i64).expect("n >= 1")));
        }
        s
    }

    /// The universal law, exact through total degree `order`. Every
    /// coefficient of `x^i y^j` is weight-homogeneous of weight `i+j-1`.
    pub fn law(&self) -> Result<FormalGroupLaw<PolyRing>> {
        FormalGroupLaw::from_log(self.log())
    }

    /// `1 - e^{-b log(t)}`, the universal modulus; its linear coefficient
    /// is `b`. Requires the `b` generator.
    pub fn st_modulus(&self) -> Result<TruncatedSeries<PolyRing>> {
        if !self.has_b {
            return Err(Error::UnknownGenerator("b".to_string()));
        }
        let b = self.ring.generator("b")?;
        let scaled = self.log().scale(&b);
        let one = TruncatedSeries::one(&self.ring, EXP_VAR, self.order);
        one.sub(&scaled.neg().exp()?)
    }

    /// The character series `b(t) = exp(beta log(t)) = sum gamma^k(beta
    /// log(t))`, with constant term 1. Requires the `beta` generator.
    pub fn cartier_series(&self) -> Result<TruncatedSeries<PolyRing>> {
        if !self.has_beta {
            return Err(Error::UnknownGenerator("beta".to_string()));
        }
        let beta = self.ring.generator("beta")?;
        self.log().scale(&beta).exp()
    }

    /// Builds the character and verifies both of its defining identities
    /// through the context order: multiplicativity against the universal
    /// law, and the linearized form `log b(t) = beta log(t)`.
    pub fn cartier_character(&self) -> Result<CartierReport> {
        let series = self.cartier_series()?;
        let law = self.law()?;

        let lhs = univariate_at_bivariate(&series, law.law())?;
        let b_x = BivariateSeries::from_univariate_x(&series, ("x", "y"), self.order);
        let b_y = BivariateSeries::from_univariate_y(&series, ("x", "y"), self.order);
        let rhs = b_x.mul(&b_y)?;
        let multiplicativity = CoefficientCheck::compare_bivariate(&lhs, &rhs);

        let log_lhs = series.log()?;
        let log_rhs = self.log().scale(&self.ring.generator("beta")?);
        let log_identity = CoefficientCheck::compare_series(&log_lhs, &log_rhs);

        Ok(CartierReport {
            series,
            multiplicativity,
            log_identity,
        })
    }
}

/// Output of [`UniversalContext::cartier_character`].
#[derive(Clone, Debug)]
pub struct CartierReport {
    /// The character series `b(t)`.
    pub series: TruncatedSeries<PolyRing>,
    /// `b(F(t0, t1)) = b(t0) b(t1)` coefficientwise.
    pub multiplicativity: CoefficientCheck,
    /// `log b(t) = beta log(t)` coefficientwise.
    pub log_identity: CoefficientCheck,
}

impl CartierReport {
    pub fn all_pass(&self) -> bool {
        self.multiplicativity.pass && self.log_identity.pass
    }
}

/// Sends `b^k CP_{a_1} ... CP_{a_m}` (with `m <= k`) to
/// `p_{a_1+1} ... p_{a_m+1} p_1^{k-m}`: each CP factor pairs with one `b`,
/// unpaired `b`s become `p_1`. Rejects monomials with more CP factors than
/// `b`s. Weight is preserved.
pub fn hurewicz_substitute(p: &GradedPolynomial) -> Result<GradedPolynomial> {
    let bound = (p.max_weight() as usize).max(1);
    hurewicz_substitute_in(p, &power_sum_table(bound))
}

/// [`hurewicz_substitute`] into a caller-supplied power-sum table.
pub fn hurewicz_substitute_in(
    p: &GradedPolynomial,
    target: &Arc<GeneratorTable>,
) -> Result<GradedPolynomial> {
    let table = p.table();
    let mut out = GradedPolynomial::zero(target.clone());
    for (monomial, coeff) in p.terms() {
        let mut b_power: u64 = 0;
        let mut cp_indices: Vec<(usize, u64)> = Vec::new();
        for (index, exp) in monomial.exponents() {
            let name = table.name(*index);
            if name == "b" {
                b_power = *exp;
            } else if let Some(a) = name.strip_prefix("CP_").and_then(|s| s.parse::<usize>().ok()) {
                cp_indices.push((a, *exp));
            } else {
                return Err(Error::UnknownGenerator(name.to_string()));
            }
        }
        let cp_count: u64 = cp_indices.iter().map(|(_, e)| e).sum();
        if cp_count > b_power {
            return Err(Error::UnpairedFactor(format!("{monomial:?} in {p}")));
        }
        let mut pairs: Vec<(usize, u64)> = Vec::new();
        for (a, e) in cp_indices {
            let p_index = target
                .index_of(&format!("p_{}", a + 1))
                .ok_or_else(|| Error::UnknownGenerator(format!("p_{}", a + 1)))?;
            pairs.push((p_index, e));
        }
        let leftover = b_power - cp_count;
        if leftover > 0 {
            let p1 = target
                .index_of("p_1")
                .ok_or_else(|| Error::UnknownGenerator("p_1".to_string()))?;
            pairs.push((p1, leftover));
        }
        let term = GradedPolynomial::from_terms(
            target.clone(),
            [(Monomial::from_pairs(pairs), coeff.clone())],
        );
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Evaluates every generator of a symbolic series at one rational value.
pub fn specialize_series(
    series: &TruncatedSeries<PolyRing>,
    value: &Rational,
) -> Result<TruncatedSeries<Rationals>> {
    let values: BTreeMap<String, Rational> = series
        .ring()
        .table()
        .names()
        .map(|name| (name.to_string(), value.clone()))
        .collect();
    series.map_ring(&Rationals, |c| c.evaluate(&values))
}

/// Evaluates every generator of a symbolic bivariate series at one value.
pub fn specialize_bivariate(
    series: &BivariateSeries<PolyRing>,
    value: &Rational,
) -> Result<BivariateSeries<Rationals>> {
    let values: BTreeMap<String, Rational> = series
        .ring()
        .table()
        .names()
        .map(|name| (name.to_string(), value.clone()))
        .collect();
    series.map_ring(&Rationals, |c| c.evaluate(&values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::{gm_logarithm, FormalGroupLaw};
    use crate::rational::{rat, ratio};

    fn gen(ring: &PolyRing, name: &str) -> GradedPolynomial {
        ring.generator(name).unwrap()
    }

    #[test]
    fn universal_log_coefficients() {
        let ctx = UniversalContext::new(5);
        let log = ctx.log();
        let ring = ctx.ring();
        assert_eq!(log.coeff(1), &ring.one());
        assert_eq!(log.coeff(2), &gen(ring, "CP_1").scale(&ratio(1, 2)));
        assert_eq!(log.coeff(3), &gen(ring, "CP_2").scale(&ratio(1, 3)));
        assert_eq!(log.coeff(5), &gen(ring, "CP_4").scale(&ratio(1, 5)));
    }

    #[test]
    fn universal_log_specializations() {
        let ctx = UniversalContext::new(8);
        let log = ctx.log();
        // CP_n = 1 recovers -log(1 - t)
        let at_one = specialize_series(&log, &rat(1)).unwrap();
        assert_eq!(at_one, gm_logarithm(&Rationals, 8));
        // CP_n = 0 recovers the additive logarithm t
        let at_zero = specialize_series(&log, &rat(0)).unwrap();
        assert_eq!(at_zero, TruncatedSeries::identity(&Rationals, EXP_VAR, 8));
    }

    #[test]
    fn universal_law_degree_two_and_three() {
        let ctx = UniversalContext::new(4);
        let law = ctx.law().unwrap();
        let ring = ctx.ring();
        let cp1 = gen(ring, "CP_1");
        let cp2 = gen(ring, "CP_2");
        assert_eq!(law.coeff(1, 0), ring.one());
        assert_eq!(law.coeff(0, 1), ring.one());
        assert_eq!(law.coeff(2, 0), ring.zero());
        assert_eq!(law.coeff(1, 1), cp1.neg());
        // degree 3: [x y^2] = [x^2 y] = CP_1^2 - CP_2
        let c12 = cp1.pow(2).sub(&cp2).unwrap();
        assert_eq!(law.coeff(1, 2), c12);
        assert_eq!(law.coeff(2, 1), c12);
    }

    #[test]
    fn universal_law_specializes_to_multiplicative_and_additive() {
        let ctx = UniversalContext::new(6);
        let law = ctx.law().unwrap();
        let at_one = specialize_bivariate(law.law(), &rat(1)).unwrap();
        let gm = FormalGroupLaw::multiplicative(&Rationals, 6);
        assert!(at_one.first_difference(gm.law()).is_none());
        let at_zero = specialize_bivariate(law.law(), &rat(0)).unwrap();
        let additive = FormalGroupLaw::additive(&Rationals, 6);
        assert!(at_zero.first_difference(additive.law()).is_none());
    }

    #[test]
    fn universal_law_axioms_pass_symbolically() {
        let report = UniversalContext::new(5).law().unwrap().check_axioms();
        assert!(report.all_pass());
    }

    #[test]
    fn universal_law_is_weight_homogeneous() {
        let ctx = UniversalContext::new(6);
        let law = ctx.law().unwrap();
        for ((i, j), c) in law.law().terms() {
            assert!(
                c.is_homogeneous_of_weight((i + j - 1) as u64),
                "x^{i} y^{j} coefficient {c} is not of weight {}",
                i + j - 1
            );
        }
        let log = ctx.log();
        for n in 1..=6 {
            assert!(log.coeff(n).is_homogeneous_of_weight((n - 1) as u64));
        }
    }

    #[test]
    fn st_modulus_low_coefficients() {
        let ctx = UniversalContext::new(3).with_b();
        let st = ctx.st_modulus().unwrap();
        let ring = ctx.ring();
        let b = gen(ring, "b");
        let cp1 = gen(ring, "CP_1");
        let cp2 = gen(ring, "CP_2");
        assert_eq!(st.coeff(1), &b);
        // [t^2] = b CP_1/2 - b^2/2
        let c2 = b
            .mul(&cp1)
            .unwrap()
            .scale(&ratio(1, 2))
            .sub(&b.pow(2).scale(&ratio(1, 2)))
            .unwrap();
        assert_eq!(st.coeff(2), &c2);
        // [t^3] = b^3/6 - b^2 CP_1/2 + b CP_2/3
        let c3 = b
            .pow(3)
            .scale(&ratio(1, 6))
            .sub(&b.pow(2).mul(&cp1).unwrap().scale(&ratio(1, 2)))
            .unwrap()
            .add(&b.mul(&cp2).unwrap().scale(&ratio(1, 3)))
            .unwrap();
        assert_eq!(st.coeff(3), &c3);
    }

    #[test]
    fn st_modulus_collapses_at_unit_specialization() {
        // CP_n = 1, b = 1: exp_Gm(log_Gm(t)) = t
        let ctx = UniversalContext::new(7).with_b();
        let st = ctx.st_modulus().unwrap();
        let collapsed = specialize_series(&st, &rat(1)).unwrap();
        assert_eq!(collapsed, TruncatedSeries::identity(&Rationals, EXP_VAR, 7));
    }

    #[test]
    fn st_modulus_requires_b() {
        assert!(matches!(
            UniversalContext::new(4).st_modulus(),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn hurewicz_rule_examples() {
        let ctx = UniversalContext::new(4).with_b();
        let ring = ctx.ring();
        let b = gen(ring, "b");
        let cp1 = gen(ring, "CP_1");

        // b^2 CP_1 -> p_1 p_2
        let out = hurewicz_substitute(&b.pow(2).mul(&cp1).unwrap()).unwrap();
        let p_ring = PolyRing::new(power_sum_table(3));
        let expect = gen(&p_ring, "p_1").mul(&gen(&p_ring, "p_2")).unwrap();
        assert_eq!(out, expect);

        // b -> p_1
        let out = hurewicz_substitute(&b).unwrap();
        let p_ring1 = PolyRing::new(power_sum_table(1));
        assert_eq!(out, gen(&p_ring1, "p_1"));
    }

    #[test]
    fn hurewicz_image_of_st_quadratic_term() {
        // [t^2] of the modulus maps to (p_2 - p_1^2)/2, the quadratic Gibbs
        // coefficient
        let ctx = UniversalContext::new(3).with_b();
        let st = ctx.st_modulus().unwrap();
        let target = power_sum_table(2);
        let image = hurewicz_substitute_in(st.coeff(2), &target).unwrap();
        let p_ring = PolyRing::new(target);
        let expect = gen(&p_ring, "p_2")
            .sub(&gen(&p_ring, "p_1").pow(2))
            .unwrap()
            .scale(&ratio(1, 2));
        assert_eq!(image, expect);
        let gibbs = crate::boltzmann::gibbs_symbolic(2);
        assert_eq!(&image, gibbs.coeff(2));
    }

    #[test]
    fn hurewicz_rejects_unpaired_cp_factors() {
        let ctx = UniversalContext::new(4).with_b();
        let ring = ctx.ring();
        let bad = gen(ring, "b")
            .mul(&gen(ring, "CP_1"))
            .unwrap()
            .mul(&gen(ring, "CP_2"))
            .unwrap();
        assert!(matches!(
            hurewicz_substitute(&bad),
            Err(Error::UnpairedFactor(_))
        ));
    }

    #[test]
    fn cartier_series_low_coefficients() {
        let ctx = UniversalContext::new(3).with_beta();
        let b_t = ctx.cartier_series().unwrap();
        let ring = ctx.ring();
        let beta = gen(ring, "beta");
        let cp1 = gen(ring, "CP_1");
        let cp2 = gen(ring, "CP_2");
        assert_eq!(b_t.coeff(0), &ring.one());
        assert_eq!(b_t.coeff(1), &beta);
        // [t^2] = beta^2/2 + beta CP_1/2
        let c2 = beta
            .pow(2)
            .scale(&ratio(1, 2))
            .add(&beta.mul(&cp1).unwrap().scale(&ratio(1, 2)))
            .unwrap();
        assert_eq!(b_t.coeff(2), &c2);
        // [t^3] = beta^3/6 + beta^2 CP_1/2 + beta CP_2/3
        let c3 = beta
            .pow(3)
            .scale(&ratio(1, 6))
            .add(&beta.pow(2).mul(&cp1).unwrap().scale(&ratio(1, 2)))
            .unwrap()
            .add(&beta.mul(&cp2).unwrap().scale(&ratio(1, 3)))
            .unwrap();
        assert_eq!(b_t.coeff(3), &c3);
    }

    #[test]
    fn cartier_character_verifies_at_order_five() {
        let report = UniversalContext::new(5).with_beta().cartier_character().unwrap();
        assert!(report.multiplicativity.pass, "{:?}", report.multiplicativity.describe());
        assert!(report.log_identity.pass);
    }

    #[test]
    fn cartier_character_requires_beta() {
        assert!(UniversalContext::new(4).cartier_series().is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        /// Admissible monomials for the pairing rule: m CP factors, k >= m
        /// copies of b.
        fn arb_admissible() -> impl Strategy<Value = GradedPolynomial> {
            proptest::collection::vec(
                (proptest::collection::vec(1usize..4, 0..3), 0u64..3, -5i64..6),
                1..4,
            )
            .prop_map(|terms| {
                let table = universal_table(4, true, false);
                let ring = PolyRing::new(table.clone());
                let mut out = ring.zero();
                for (cps, extra_b, coeff) in terms {
                    let mut mono = ring.constant(Rational::from_int(coeff));
                    let b_needed = extra_b + cps.len() as u64;
                    for a in &cps {
                        mono = mono.mul(&ring.generator(&format!("CP_{a}")).unwrap()).unwrap();
                    }
                    if b_needed > 0 {
                        mono = mono.mul(&ring.generator("b").unwrap().pow(b_needed)).unwrap();
                    }
                    out = out.add(&mono).unwrap();
                }
                out
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn hurewicz_preserves_weight(p in arb_admissible()) {
                let target = power_sum_table(12);
                let image = hurewicz_substitute_in(&p, &target).unwrap();
                prop_assert_eq!(p.max_weight(), image.max_weight());
                if let Ok(w) = p.homogeneous_weight() {
                    prop_assert!(image.is_homogeneous_of_weight(w));
                }
            }

            #[test]
            fn hurewicz_commutes_with_ring_ops(p in arb_admissible(), q in arb_admissible()) {
                let target = power_sum_table(16);
                let hp = hurewicz_substitute_in(&p, &target).unwrap();
                let hq = hurewicz_substitute_in(&q, &target).unwrap();
                let sum = hurewicz_substitute_in(&p.add(&q).unwrap(), &target).unwrap();
                prop_assert_eq!(&sum, &hp.add(&hq).unwrap());
                let prod = hurewicz_substitute_in(&p.mul(&q).unwrap(), &target).unwrap();
                prop_assert_eq!(&prod, &hp.mul(&hq).unwrap());
            }
        }
    }
}
