//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its runtime. All comparisons are exact; there are no tolerances
//! anywhere.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

mod common;

use std::time::{Duration, Instant};

use fglab::boltzmann::{gibbs_series, gibbs_symbolic, EnergeticSet};
use fglab::fgl::FormalGroupLaw;
use fglab::prob::Distribution;
use fglab::rational::{rat, ratio, Rational};
use fglab::ring::{PolyRing, Rationals, Ring};
use fglab::series::TruncatedSeries;
use fglab::symfun::{
    complete_gf, complete_gf_in_power_sums, convert, elementary_gf, power_sum_gf, SymBasis,
    SymmetricExpr,
};
use fglab::universal::{specialize_bivariate, UniversalContext};
use fglab::verify::sampling;

fn finish(criterion: usize, what: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < budget,
        "criterion {criterion} took {elapsed:?}, budget {budget:?}"
    );
    println!("ACCEPTANCE {criterion}: PASS ({elapsed:?}) - {what}");
}

/// The seeded distribution panel shared by criteria 3 and 4: Poisson(1),
/// Bernoulli(1/2), and 20 random finite-support laws with nonzero mean.
fn distribution_panel() -> Vec<Distribution> {
    let mut rng = sampling::rng(20260810);
    let mut dists = vec![
        Distribution::poisson(rat(1)).unwrap(),
        Distribution::bernoulli(ratio(1, 2)).unwrap(),
    ];
    for _ in 0..20 {
        dists.push(sampling::distribution(&mut rng));
    }
    dists
}

#[test]
fn criterion_01_poisson_st_modulus() {
    let started = Instant::now();
    let st = Distribution::poisson(rat(1)).unwrap().st_modulus(12).unwrap();
    assert!(st.coeff(0).is_zero());
    for n in 1..=12 {
        assert_eq!(st.coeff(n), &ratio(1, n as i64), "coefficient of x^{n}");
    }
    finish(
        1,
        "Poisson(1) modulus is the logarithm series 1, 1/2, ..., 1/12",
        started,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_02_bernoulli_todd_law() {
    let started = Instant::now();
    // p = 1: exactly x + y - xy, all higher coefficients zero
    let todd = Distribution::bernoulli(rat(1)).unwrap().formal_group_law(12).unwrap();
    assert_eq!(todd.coeff(1, 0), rat(1));
    assert_eq!(todd.coeff(0, 1), rat(1));
    assert_eq!(todd.coeff(1, 1), rat(-1));
    assert_eq!(todd.law().terms().count(), 3);
    // general p: x + y - xy/p
    for p in [ratio(1, 2), ratio(2, 3), ratio(3, 4), ratio(1, 5)] {
        let law = Distribution::bernoulli(p.clone()).unwrap().formal_group_law(12).unwrap();
        assert_eq!(law.coeff(1, 1), -p.inverse().unwrap(), "at p = {p}");
        assert_eq!(law.law().terms().count(), 3, "at p = {p}");
    }
    finish(
        2,
        "Bernoulli(1) gives the Todd law x + y - xy; Bernoulli(p) divides the cross term by p",
        started,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_03_intertwining_identities() {
    let started = Instant::now();
    for (i, d) in distribution_panel().iter().enumerate() {
        let report = d.intertwining_report(12).unwrap();
        assert!(
            report.kappa_identity.pass,
            "kappa identity failed on panel member {i}: {:?}",
            report.kappa_identity.describe()
        );
        assert!(
            report.st_identity.pass,
            "st identity failed on panel member {i}: {:?}",
            report.st_identity.describe()
        );
    }
    finish(
        3,
        "both intertwining displays hold through order 12 on all 22 panel distributions",
        started,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_04_cumulant_oracle() {
    let started = Instant::now();
    for (i, d) in distribution_panel().iter().enumerate() {
        let series = d.cumulant_series(10).unwrap();
        let moments: Vec<Rational> = d.moments(10).moments().to_vec();
        let classical = common::cumulants_by_recursion(&moments);
        for n in 1..=10 {
            let engine = series.coeff(n) * &Rational::factorial(n);
            let oracle = if n % 2 == 1 {
                classical[n - 1].clone()
            } else {
                -classical[n - 1].clone()
            };
            assert_eq!(engine, oracle, "panel member {i}, n = {n}");
        }
    }
    finish(
        4,
        "n! [t^n] kappa_F = (-1)^(n+1) kappa_n against the local cumulant recursion, n <= 10",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_05_boltzmann_axioms() {
    let started = Instant::now();
    let set = EnergeticSet::new(vec![rat(1), rat(2), rat(3)]).unwrap();
    let report = set.formal_group_law(8).unwrap().check_axioms();
    assert!(report.unit.pass);
    assert!(report.commutativity.pass);
    assert!(
        report.associativity.pass,
        "{:?}",
        report.associativity.describe()
    );

    let mut rng = sampling::rng(5);
    let gm = FormalGroupLaw::multiplicative(&Rationals, 8);
    for i in 0..10 {
        let lambda = sampling::positive_rational(&mut rng, 20);
        let single = EnergeticSet::new(vec![lambda.clone()]).unwrap();
        let law = single.formal_group_law(8).unwrap();
        assert_eq!(law.law(), gm.law(), "sample {i} at level {lambda}");
        assert_eq!(law.law().terms().count(), 3);
    }
    finish(
        5,
        "law of {1,2,3} passes the axioms at order 8; 10 random single-level laws are x + y - xy",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_06_gibbs_series() {
    let started = Instant::now();
    // symbolic coefficients against the locally written cumulant recursion
    // with moments replaced by power sums
    let order = 8;
    let gibbs = gibbs_symbolic(order);
    let ring = gibbs.ring().clone();
    let mut p_moments = vec![ring.one()];
    for n in 1..=order {
        p_moments.push(ring.generator(&format!("p_{n}")).unwrap());
    }
    let oracle = common::cumulants_by_recursion_in(&ring, &p_moments);
    for n in 1..=order {
        let engine = gibbs.coeff(n).scale(&Rational::factorial(n));
        assert_eq!(engine, oracle[n - 1], "coefficient of x^{n}");
    }
    // numeric spot value
    let set = EnergeticSet::new(vec![rat(1), rat(2)]).unwrap();
    let numeric = gibbs_series(&set, order);
    assert_eq!(numeric.numeric.coeff(2), &rat(-2));
    finish(
        6,
        "symbolic Gibbs coefficients are the cumulant polynomials in power sums; [x^2] at {1,2} is -2",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_07_universal_law() {
    let started = Instant::now();
    let ctx = UniversalContext::new(5);
    let law = ctx.law().unwrap();
    let ring = ctx.ring();

    // degree-2 part: x + y - CP_1 xy
    let cp1 = ring.generator("CP_1").unwrap();
    assert_eq!(law.coeff(1, 0), ring.one());
    assert_eq!(law.coeff(0, 1), ring.one());
    assert_eq!(law.coeff(2, 0), ring.zero());
    assert_eq!(law.coeff(0, 2), ring.zero());
    assert_eq!(law.coeff(1, 1), cp1.neg());

    // axioms through total degree 5 over the symbolic ring
    let report = law.check_axioms();
    assert!(report.unit.pass);
    assert!(report.commutativity.pass);
    assert!(
        report.associativity.pass,
        "{:?}",
        report.associativity.describe()
    );

    // specializations reproduce the multiplicative and additive laws
    let gm = FormalGroupLaw::multiplicative(&Rationals, 5);
    let additive = FormalGroupLaw::additive(&Rationals, 5);
    let at_one = specialize_bivariate(law.law(), &rat(1)).unwrap();
    assert!(at_one.first_difference(gm.law()).is_none());
    let at_zero = specialize_bivariate(law.law(), &rat(0)).unwrap();
    assert!(at_zero.first_difference(additive.law()).is_none());
    finish(
        7,
        "universal law: degree-2 part, axioms through degree 5, multiplicative/additive specializations",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_08_cartier_character() {
    let started = Instant::now();
    // multiplicativity through total degree 6
    let report6 = UniversalContext::new(6).with_beta().cartier_character().unwrap();
    assert!(
        report6.multiplicativity.pass,
        "{:?}",
        report6.multiplicativity.describe()
    );
    // log identity through degree 8
    let report8 = UniversalContext::new(8).with_beta().cartier_character().unwrap();
    assert!(
        report8.log_identity.pass,
        "{:?}",
        report8.log_identity.describe()
    );
    finish(
        8,
        "b(F(t0,t1)) = b(t0) b(t1) through degree 6 and log b = beta log through degree 8",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_09_symmetric_function_suite() {
    let started = Instant::now();
    let order = 12;
    let mut rng = sampling::rng(9);
    let h_sym = complete_gf_in_power_sums(order);
    for i in 0..10 {
        let a = sampling::alphabet(&mut rng, 5);
        // H(t) E(-t) = 1
        let h = complete_gf(&a, order);
        let e_neg = elementary_gf(&a, order).scale_argument(&rat(-1));
        assert_eq!(
            h.mul(&e_neg).unwrap(),
            TruncatedSeries::one(&Rationals, "t", order),
            "H E(-t) != 1 on sample {i}"
        );
        // H' = P H
        let h_plus = complete_gf(&a, order + 1);
        let p = power_sum_gf(&a, order);
        assert_eq!(
            h_plus.derivative(),
            p.mul(&h_plus.truncate(order)).unwrap(),
            "H' != P H on sample {i}"
        );
        // the symbolic H evaluated at this alphabet's power sums
        let mut values = std::collections::BTreeMap::new();
        for n in 1..=order {
            values.insert(format!("p_{n}"), a.power_sum(n));
        }
        let evaluated = h_sym
            .map_ring(&Rationals, |c| c.evaluate(&values))
            .unwrap();
        assert_eq!(evaluated, h, "symbolic H mismatch on sample {i}");
    }
    // Newton round trips p -> e -> p and p -> h -> p up to degree 12
    let p_ring = PolyRing::new(SymBasis::PowerSum.table(order));
    for n in 1..=order {
        let p_n = p_ring.generator(&format!("p_{n}")).unwrap();
        let expr = SymmetricExpr::new(SymBasis::PowerSum, p_n.clone());
        for basis in [SymBasis::Elementary, SymBasis::Homogeneous] {
            let round = convert(&convert(&expr, basis, order).unwrap(), SymBasis::PowerSum, order)
                .unwrap();
            assert_eq!(round.poly, p_n, "p_{n} through {basis:?}");
        }
    }
    finish(
        9,
        "generating-function identities, Newton round trips to degree 12, symbolic H on 10 alphabets",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_10_engine_round_trips() {
    let started = Instant::now();
    let order = 12;
    let mut rng = sampling::rng(10);
    let identity = TruncatedSeries::identity(&Rationals, "t", order);
    for i in 0..100 {
        let f = sampling::reversible_series(&mut rng, order);
        let g = f.revert().unwrap();
        assert_eq!(f.compose(&g).unwrap(), identity, "f(g) != t on sample {i}");
        assert_eq!(g.compose(&f).unwrap(), identity, "g(f) != t on sample {i}");
        // independent reversion route
        assert_eq!(g, common::lagrange_revert(&f), "Lagrange mismatch on sample {i}");

        let p = sampling::pointed_series(&mut rng, order);
        assert_eq!(p.exp().unwrap().log().unwrap(), p, "exp/log on sample {i}");
    }
    // frozen Catalan example
    let mut f = TruncatedSeries::zero(&Rationals, "t", 7);
    f.set_coeff(1, rat(1));
    f.set_coeff(2, rat(-1));
    let g = f.revert().unwrap();
    for (n, c) in [1i64, 1, 2, 5, 14, 42, 132].iter().enumerate() {
        assert_eq!(g.coeff(n + 1), &rat(*c));
    }
    finish(
        10,
        "100 seeded reversion and exp/log round trips at order 12; Catalan reversion",
        started,
        Duration::from_secs(10),
    );
}

/// Bonus coverage used by the criteria above: the Poisson moment recurrence
/// agrees with the Stirling-triangle expansion.
#[test]
fn poisson_moments_cross_check() {
    let mu = ratio(3, 2);
    let d = Distribution::poisson(mu.clone()).unwrap();
    let m = d.moments(9);
    for n in 0..=9 {
        assert_eq!(m.moment(n), &common::poisson_moment_by_stirling(&mu, n));
    }
}
