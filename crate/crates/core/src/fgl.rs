//! One-dimensional formal group laws.
//!
//! A law is carried together with its exponential and logarithm, mutually
//! inverse series with `F(x, y) = exp(log x + log y)` through the
//! truncation order. The linear coefficient of the exponential only has to
//! be a unit of the coefficient ring, not 1; several laws built elsewhere
//! in the crate genuinely have non-unit leading terms.

use crate::bivariate::{univariate_at_bivariate, BivariateSeries, TrivariateSeries};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::ring::Ring;
use crate::series::TruncatedSeries;

pub const EXP_VAR: &str = "t";
pub const LAW_VARS: (&str, &str) = ("x", "y");

/// A formal group law `F(x, y)` with its exponential and logarithm.
#[derive(Clone, PartialEq, Debug)]
pub struct FormalGroupLaw<R: Ring> {
    ring: R,
    order: usize,
    exp: TruncatedSeries<R>,
    log: TruncatedSeries<R>,
    law: BivariateSeries<R>,
}

impl<R: Ring> FormalGroupLaw<R> {
    /// Builds the law from its logarithm: the exponential is the
    /// compositional inverse and `F = exp(log x + log y)`.
    pub fn from_log(log: TruncatedSeries<R>) -> Result<Self> {
        let exp = log.revert()?;
        Self::from_pair(exp, log)
    }

    /// Builds the law from its exponential.
    pub fn from_exp(exp: TruncatedSeries<R>) -> Result<Self> {
        let log = exp.revert()?;
        Self::from_pair(exp, log)
    }

    fn from_pair(exp: TruncatedSeries<R>, log: TruncatedSeries<R>) -> Result<Self> {
        let ring = exp.ring().clone();
        let order = exp.order().min(log.order());
        let exp = exp.truncate(order).rename_variable(EXP_VAR);
        let log = log.truncate(order).rename_variable(EXP_VAR);
        let log_x = BivariateSeries::from_univariate_x(&log, LAW_VARS, order);
        let log_y = BivariateSeries::from_univariate_y(&log, LAW_VARS, order);
        let law = univariate_at_bivariate(&exp, &log_x.add(&log_y)?)?;
        Ok(FormalGroupLaw {
            ring,
            order,
            exp,
            log,
            law,
        })
    }

    /// The multiplicative law `x + y - xy`, with exponential `1 - e^{-t}`
    /// and logarithm `-log(1 - t)`.
    pub fn multiplicative(ring: &R, order: usize) -> Self {
        Self::from_exp(gm_exponential(ring, order)).expect("unit linear coefficient")
    }

    /// The additive law `x + y`.
    pub fn additive(ring: &R, order: usize) -> Self {
        Self::from_exp(TruncatedSeries::identity(ring, EXP_VAR, order))
            .expect("unit linear coefficient")
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponential(&self) -> &TruncatedSeries<R> {
        &self.exp
    }

    pub fn logarithm(&self) -> &TruncatedSeries<R> {
        &self.log
    }

    pub fn law(&self) -> &BivariateSeries<R> {
        &self.law
    }

    /// Coefficient of `x^i y^j` in the law.
    pub fn coeff(&self, i: usize, j: usize) -> R::Elem {
        self.law.coeff(i, j)
    }

    /// Rescales coordinates so the exponential has linear coefficient 1.
    /// The law itself is unchanged.
    pub fn normalized(&self) -> Result<Self> {
        let a = self.exp.linear_coeff().clone();
        let a_inv = self.ring.inverse(&a)?;
        let exp = self.exp.scale_argument(&a_inv);
        let log = self.log.scale(&a);
        Ok(FormalGroupLaw {
            ring: self.ring.clone(),
            order: self.order,
            exp,
            log,
            law: self.law.clone(),
        })
    }

    /// Checks the unit, commutativity, and associativity axioms through the
    /// truncation order. Failures are reported, not raised.
    pub fn check_axioms(&self) -> AxiomReport<R> {
        let order = self.order;
        let ring = &self.ring;

        let unit = {
            let restricted = self.law.set_y_zero("x");
            let identity = TruncatedSeries::identity(ring, "x", order);
            match restricted.first_difference(&identity) {
                None => CoefficientCheck::pass(),
                Some(n) => CoefficientCheck::fail(
                    format!("x^{n}"),
                    ring.to_string(restricted.coeff(n)),
                    ring.to_string(identity.coeff(n)),
                ),
            }
        };

        let commutativity = {
            let swapped = self.law.swap_vars();
            match self.law.first_difference(&swapped) {
                None => CoefficientCheck::pass(),
                Some((i, j)) => CoefficientCheck::fail(
                    format!("x^{i} y^{j}"),
                    ring.to_string(&self.law.coeff(i, j)),
                    ring.to_string(&swapped.coeff(i, j)),
                ),
            }
        };

        let associativity = {
            let x = TrivariateSeries::variable(ring, order, 0);
            let z = TrivariateSeries::variable(ring, order, 2);
            let f_xy = TrivariateSeries::from_bivariate(&self.law, (0, 1), order);
            let f_yz = TrivariateSeries::from_bivariate(&self.law, (1, 2), order);
            let left = TrivariateSeries::substitute_bivariate(&self.law, &f_xy, &z);
            let right = TrivariateSeries::substitute_bivariate(&self.law, &x, &f_yz);
            match left.first_difference(&right) {
                None => CoefficientCheck::pass(),
                Some(((i, j, k), a, b)) => CoefficientCheck::fail(
                    format!("x^{i} y^{j} z^{k}"),
                    ring.to_string(&a),
                    ring.to_string(&b),
                ),
            }
        };

        AxiomReport {
            unit,
            commutativity,
            associativity,
            _marker: std::marker::PhantomData,
        }
    }
}

/// Exponential of the multiplicative group in this crate's convention:
/// `1 - e^{-t}`.
pub fn gm_exponential<R: Ring>(ring: &R, order: usize) -> TruncatedSeries<R> {
    let coeffs = (0..=order)
        .map(|n| {
            if n == 0 {
                Rational::zero()
            } else if n % 2 == 1 {
                Rational::inverse_factorial(n)
            } else {
                -Rational::inverse_factorial(n)
            }
        })
        .collect::<Vec<_>>();
    TruncatedSeries::from_rationals(ring, EXP_VAR, &coeffs)
}

/// Logarithm of the multiplicative group: `-log(1 - t) = sum t^n/n`.
pub fn gm_logarithm<R: Ring>(ring: &R, order: usize) -> TruncatedSeries<R> {
    let coeffs = (0..=order)
        .map(|n| {
            if n == 0 {
                Rational::zero()
            } else {
                Rational::new(1, n as i64).expect("n >= 1")
            }
        })
        .collect::<Vec<_>>();
    TruncatedSeries::from_rationals(ring, EXP_VAR, &coeffs)
}

/// Outcome of a coefficientwise identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientCheck {
    pub pass: bool,
    pub first_discrepancy: Option<Discrepancy>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub location: String,
    pub left: String,
    pub right: String,
}

impl CoefficientCheck {
    pub fn pass() -> Self {
        CoefficientCheck {
            pass: true,
            first_discrepancy: None,
        }
    }

    pub fn fail(location: String, left: String, right: String) -> Self {
        CoefficientCheck {
            pass: false,
            first_discrepancy: Some(Discrepancy { location, left, right }),
        }
    }

    /// Compares two univariate series coefficientwise.
    pub fn compare_series<R: Ring>(
        left: &TruncatedSeries<R>,
        right: &TruncatedSeries<R>,
    ) -> Self {
        match left.first_difference(right) {
            None => CoefficientCheck::pass(),
            Some(n) => CoefficientCheck::fail(
                format!("t^{n}"),
                left.ring().to_string(left.coeff(n)),
                right.ring().to_string(right.coeff(n)),
            ),
        }
    }

    pub fn compare_bivariate<R: Ring>(
        left: &BivariateSeries<R>,
        right: &BivariateSeries<R>,
    ) -> Self {
        match left.first_difference(right) {
            None => CoefficientCheck::pass(),
            Some((i, j)) => CoefficientCheck::fail(
                format!("x^{i} y^{j}"),
                left.ring().to_string(&left.coeff(i, j)),
                right.ring().to_string(&right.coeff(i, j)),
            ),
        }
    }

    pub fn describe(&self) -> Option<String> {
        self.first_discrepancy
            .as_ref()
            .map(|d| format!("at {}: {} != {}", d.location, d.left, d.right))
    }
}

/// Result of [`FormalGroupLaw::check_axioms`].
#[derive(Clone, Debug)]
pub struct AxiomReport<R: Ring> {
    pub unit: CoefficientCheck,
    pub commutativity: CoefficientCheck,
    pub associativity: CoefficientCheck,
    _marker: std::marker::PhantomData<R>,
}

impl<R: Ring> AxiomReport<R> {
    pub fn all_pass(&self) -> bool {
        self.unit.pass && self.commutativity.pass && self.associativity.pass
    }
}

/// Verifies that `phi` intertwines two laws: `phi(F(x, y)) = G(phi x, phi y)`
/// through the common truncation order. `phi` must kill the origin.
pub fn homomorphism_check<R: Ring>(
    phi: &TruncatedSeries<R>,
    source: &FormalGroupLaw<R>,
    target: &FormalGroupLaw<R>,
) -> Result<CoefficientCheck> {
    if !phi.ring().is_zero(phi.constant_term()) {
        return Err(Error::ConstantTerm {
            expected: "0".to_string(),
            found: phi.ring().to_string(phi.constant_term()),
        });
    }
    let order = phi.order().min(source.order()).min(target.order());
    let phi = phi.truncate(order);
    let left = univariate_at_bivariate(&phi, &source.law().truncate(order))?;
    let phi_x = BivariateSeries::from_univariate_x(&phi, LAW_VARS, order);
    let phi_y = BivariateSeries::from_univariate_y(&phi, LAW_VARS, order);
    let right = target.law().truncate(order).substitute(&phi_x, &phi_y)?;
    Ok(CoefficientCheck::compare_bivariate(&left, &right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::GeneratorTable;
    use crate::rational::{rat, ratio};
    use crate::ring::{PolyRing, Rationals};

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn additive_law_from_log_t() {
        let log = TruncatedSeries::identity(&q(), "t", 6);
        let f = FormalGroupLaw::from_log(log).unwrap();
        assert_eq!(f.coeff(1, 0), rat(1));
        assert_eq!(f.coeff(0, 1), rat(1));
        for ((i, j), c) in f.law().terms() {
            assert!((i, j) == (1, 0) || (i, j) == (0, 1), "unexpected term x^{i} y^{j} = {c:?}");
        }
    }

    #[test]
    fn multiplicative_law_is_forced_by_its_log() {
        let f = FormalGroupLaw::from_log(gm_logarithm(&q(), 8)).unwrap();
        assert_eq!(f.coeff(1, 1), rat(-1));
        assert_eq!(f.coeff(1, 0), rat(1));
        // all coefficients of total degree >= 3 vanish
        for ((i, j), _) in f.law().terms() {
            assert!(i + j <= 2);
        }
        assert_eq!(f, FormalGroupLaw::multiplicative(&q(), 8));
    }

    #[test]
    fn gm_exp_and_log_coefficients() {
        let f = FormalGroupLaw::multiplicative(&q(), 6);
        // exp: 1 - e^{-t} = t - t^2/2 + t^3/6 - t^4/24 ...
        assert_eq!(f.exponential().coeff(1), &rat(1));
        assert_eq!(f.exponential().coeff(2), &ratio(-1, 2));
        assert_eq!(f.exponential().coeff(3), &ratio(1, 6));
        assert_eq!(f.exponential().coeff(4), &ratio(-1, 24));
        // log: t + t^2/2 + t^3/3 + ...
        for n in 1..=6 {
            assert_eq!(f.logarithm().coeff(n), &ratio(1, n as i64));
        }
    }

    #[test]
    fn symbolic_order_two_law() {
        // log = t + c t^2/2 gives F = x + y - c xy + O(3)
        let table = GeneratorTable::new(&[("CP_1", 1)]).unwrap();
        let ring = PolyRing::new(table);
        let c = ring.generator("CP_1").unwrap();
        let log = TruncatedSeries::from_coeffs(
            &ring,
            "t",
            vec![ring.zero(), ring.one(), c.scale(&ratio(1, 2))],
        );
        let f = FormalGroupLaw::from_log(log).unwrap();
        assert_eq!(f.coeff(1, 1), c.neg());
        assert_eq!(f.coeff(1, 0), ring.one());
        assert_eq!(f.coeff(2, 0), ring.zero());
    }

    #[test]
    fn scaled_exponential_scales_law() {
        // exp = 2(1 - e^{-t}) gives F = x + y - xy/2
        let exp = gm_exponential(&q(), 8).scale_rational(&rat(2));
        let f = FormalGroupLaw::from_exp(exp).unwrap();
        assert_eq!(f.coeff(1, 1), ratio(-1, 2));
        for ((i, j), _) in f.law().terms() {
            assert!(i + j <= 2);
        }
    }

    #[test]
    fn axioms_pass_for_standard_laws() {
        for order in [4, 8] {
            assert!(FormalGroupLaw::multiplicative(&q(), order).check_axioms().all_pass());
            assert!(FormalGroupLaw::additive(&q(), order).check_axioms().all_pass());
        }
    }

    #[test]
    fn corrupted_law_fails_associativity_with_location() {
        // x + y + x^2 y is unital and fails associativity
        let mut f = FormalGroupLaw::additive(&q(), 5);
        let mut terms = std::collections::BTreeMap::new();
        terms.insert((1usize, 0usize), rat(1));
        terms.insert((0, 1), rat(1));
        terms.insert((2, 1), rat(1));
        f.law = BivariateSeries::from_terms(&q(), LAW_VARS, 5, terms);
        let report = f.check_axioms();
        assert!(report.unit.pass);
        assert!(!report.commutativity.pass);
        assert!(!report.associativity.pass);
        let disc = report.associativity.first_discrepancy.unwrap();
        // direct expansion: the association orders first differ in the
        // xyz coefficient, 2 on the left and 0 on the right
        assert_eq!(disc.location, "x^1 y^1 z^1");
        assert_eq!(disc.left, "2");
        assert_eq!(disc.right, "0");
    }

    #[test]
    fn exponential_is_homomorphism_from_additive() {
        let f = FormalGroupLaw::multiplicative(&q(), 8);
        let additive = FormalGroupLaw::additive(&q(), 8);
        let check = homomorphism_check(f.exponential(), &additive, &f).unwrap();
        assert!(check.pass, "{:?}", check.describe());
    }

    #[test]
    fn gm_log_is_homomorphism_to_additive() {
        let f = FormalGroupLaw::multiplicative(&q(), 8);
        let additive = FormalGroupLaw::additive(&q(), 8);
        let check = homomorphism_check(f.logarithm(), &f, &additive).unwrap();
        assert!(check.pass);
    }

    #[test]
    fn squaring_is_not_additive_homomorphism() {
        let additive = FormalGroupLaw::additive(&q(), 6);
        let phi = TruncatedSeries::monomial(&q(), "t", 6, 2, rat(1));
        let check = homomorphism_check(&phi, &additive, &additive).unwrap();
        assert!(!check.pass);
        assert!(check.first_discrepancy.is_some());
    }

    #[test]
    fn normalized_rescales_exponential() {
        let exp = gm_exponential(&q(), 6).scale_rational(&rat(3));
        let f = FormalGroupLaw::from_exp(exp).unwrap();
        let g = f.normalized().unwrap();
        assert_eq!(g.exponential().coeff(1), &rat(1));
        assert_eq!(g.law(), f.law());
        // exp and log stay mutually inverse
        let round = g.exponential().compose(g.logarithm()).unwrap();
        assert_eq!(round, TruncatedSeries::identity(&q(), "t", 6));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_log() -> impl Strategy<Value = TruncatedSeries<Rationals>> {
            proptest::collection::vec((-6i64..7, 1i64..4), 9).prop_map(|tail| {
                let mut coeffs = vec![rat(0), rat(1)];
                coeffs.extend(tail.into_iter().map(|(n, d)| ratio(n, d)));
                TruncatedSeries::from_coeffs(&Rationals, "t", coeffs)
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(12))]

            #[test]
            fn random_laws_satisfy_axioms(log in arb_log()) {
                let f = FormalGroupLaw::from_log(log).unwrap();
                prop_assert!(f.check_axioms().all_pass());
            }

            #[test]
            fn from_exp_of_exp_reproduces_law(log in arb_log()) {
                let f = FormalGroupLaw::from_log(log).unwrap();
                let g = FormalGroupLaw::from_exp(f.exponential().clone()).unwrap();
                prop_assert_eq!(f.law(), g.law());
            }
        }
    }
}
