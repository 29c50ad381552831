//! Boltzmann formal group laws of finite energy spectra and their Gibbs
//! free-energy series.
//!
//! An energetic set is a strictly increasing list of positive rational
//! levels `0 < lambda_1 < ... < lambda_l`. Its Boltzmann exponential is
//!
//! ```text
//!   exp_BE(t) = sum_i exp_Gm(-lambda_i t) = - sum_{n>=1} p_n(lambda) t^n/n!
//! ```
//!
//! with `p_n` the power sums of the levels. The linear coefficient `-p_1`
//! is a nonzero rational, so the exponential generates a formal group law.
//! The Gibbs series is `-log_Gm(exp_BE(x)) = log(1 + sum p_n x^n/n!)`,
//! whose symbolic coefficients are the classical cumulant polynomials with
//! moments replaced by power sums; spectra only enter through those power
//! sums. Infinite spectra do not exist here: every set is finite by
//! construction.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fgl::{FormalGroupLaw, EXP_VAR};
use crate::poly::GradedPolynomial;
use crate::rational::Rational;
use crate::ring::{power_sum_table, wp_table, PolyRing, Rationals, Ring};
use crate::series::TruncatedSeries;
use crate::symfun::{wp_normalize_in, Alphabet};

pub const GIBBS_VAR: &str = "x";

/// A finite energy spectrum `0 < lambda_1 < ... < lambda_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergeticSet {
    levels: Vec<Rational>,
}

impl EnergeticSet {
    pub fn new(levels: Vec<Rational>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidEnergeticSet("needs at least one level".into()));
        }
        if !levels[0].is_positive() {
            return Err(Error::InvalidEnergeticSet(format!(
                "level {} is not positive",
                levels[0]
            )));
        }
        for pair in levels.windows(2) {
            if !(&pair[1] - &pair[0]).is_positive() {
                return Err(Error::InvalidEnergeticSet(format!(
                    "levels must be strictly increasing, found {} then {}",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(EnergeticSet { levels })
    }

    /// Parses a comma-separated level list such as `1,3/2,2`.
    pub fn parse(s: &str) -> Result<Self> {
        let levels = s
            .split(',')
            .map(|part| part.trim().parse::<Rational>())
            .collect::<Result<Vec<_>>>()?;
        EnergeticSet::new(levels)
    }

    pub fn levels(&self) -> &[Rational] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the constructor guarantees at least one level
    }

    pub fn power_sum(&self, n: usize) -> Rational {
        Alphabet::new(self.levels.clone()).power_sum(n)
    }

    /// `exp_BE(t) = sum_i (1 - e^{lambda_i t}) = -sum p_n t^n/n!`.
    pub fn exponential(&self, order: usize) -> TruncatedSeries<Rationals> {
        let coeffs: Vec<Rational> = (0..=order)
            .map(|n| {
                if n == 0 {
                    Rational::zero()
                } else {
                    -(&self.power_sum(n) * &Rational::inverse_factorial(n))
                }
            })
            .collect();
        TruncatedSeries::from_rationals(&Rationals, EXP_VAR, &coeffs)
    }

    /// The Boltzmann law of the spectrum. Its exponential has the non-unit
    /// linear coefficient `-p_1`, nonzero by positivity of the levels.
    pub fn formal_group_law(&self, order: usize) -> Result<FormalGroupLaw<Rationals>> {
        FormalGroupLaw::from_exp(self.exponential(order))
    }
}

/// The Boltzmann exponential with the power sums left symbolic:
/// `-sum p_n t^n/n!` over `Q[p_1..p_order]`.
pub fn symbolic_exponential(order: usize) -> TruncatedSeries<PolyRing> {
    let ring = PolyRing::new(power_sum_table(order.max(1)));
    let mut s = TruncatedSeries::zero(&ring, EXP_VAR, order);
    for n in 1..=order {
        let p_n = ring.generator(&format!("p_{n}")).expect("generator exists");
        s.set_coeff(n, p_n.scale(&-Rational::inverse_factorial(n)));
    }
    s
}

/// The Gibbs series `-log_Gm(exp_BE(x)) = log(1 + sum p_n x^n/n!)` with the
/// power sums symbolic. Zero constant term; the coefficient of `x^n` is the
/// n-th cumulant polynomial in the `p_k`.
pub fn gibbs_symbolic(order: usize) -> TruncatedSeries<PolyRing> {
    let exp_be = symbolic_exponential(order);
    let ring = exp_be.ring().clone();
    // 1 - exp_BE = 1 + sum p_n t^n/n!
    let one = TruncatedSeries::one(&ring, EXP_VAR, order);
    let inner = one.sub(&exp_be).expect("same ring and variable");
    inner
        .log()
        .expect("constant term 1")
        .rename_variable(GIBBS_VAR)
}

/// The Gibbs series rewritten over `Q[wp_*, p_1]` via `p_n = wp_n p_1^n`:
/// the coefficient of `x^n` becomes a `wp`-polynomial times `p_1^n`.
pub fn gibbs_wp_normalized(order: usize) -> Result<TruncatedSeries<PolyRing>> {
    let symbolic = gibbs_symbolic(order);
    let target = PolyRing::new(wp_table(order.max(2)));
    symbolic.map_ring(&target, |c| wp_normalize_in(c, target.table()))
}

/// Numeric and symbolic forms of one Gibbs series; the numeric form is the
/// symbolic one evaluated at the spectrum's power sums.
#[derive(Clone, Debug)]
pub struct GibbsSeries {
    pub numeric: TruncatedSeries<Rationals>,
    pub symbolic: TruncatedSeries<PolyRing>,
}

impl GibbsSeries {
    pub fn order(&self) -> usize {
        self.numeric.order()
    }

    /// Re-evaluates the symbolic form at the given power sums and compares
    /// with the numeric form.
    pub fn is_consistent_with(&self, set: &EnergeticSet) -> bool {
        match evaluate_power_sum_series(&self.symbolic, set) {
            Ok(evaluated) => evaluated == self.numeric,
            Err(_) => false,
        }
    }
}

/// Both forms of the Gibbs series for a spectrum.
pub fn gibbs_series(set: &EnergeticSet, order: usize) -> GibbsSeries {
    let symbolic = gibbs_symbolic(order);
    let numeric = evaluate_power_sum_series(&symbolic, set)
        .expect("every generator p_n is assigned a power sum");
    GibbsSeries { numeric, symbolic }
}

/// Evaluates a series over `Q[p_*]` at `p_n = power_sum(levels, n)`.
pub fn evaluate_power_sum_series(
    series: &TruncatedSeries<PolyRing>,
    set: &EnergeticSet,
) -> Result<TruncatedSeries<Rationals>> {
    let mut values = BTreeMap::new();
    for name in series.ring().table().names() {
        let n: usize = name
            .strip_prefix("p_")
            .and_then(|idx| idx.parse().ok())
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        values.insert(name.to_string(), set.power_sum(n));
    }
    series.map_ring(&Rationals, |c: &GradedPolynomial| c.evaluate(&values))
}

/// The ensemble average of laws in the additive sense: the law whose
/// exponential is the weighted sum `sum w_i exp_{F_i}`. This matches the
/// Boltzmann construction, which sums rescaled multiplicative exponentials
/// with unit weights. See [`ensemble_mean_law`] for the normalized reading.
pub fn ensemble_average_law<R: Ring>(
    laws: &[FormalGroupLaw<R>],
    weights: &[Rational],
) -> Result<FormalGroupLaw<R>> {
    if laws.is_empty() || laws.len() != weights.len() {
        return Err(Error::InvalidArgument(format!(
            "need equally many laws and weights, got {} and {}",
            laws.len(),
            weights.len()
        )));
    }
    let order = laws.iter().map(|f| f.order()).min().expect("nonempty");
    let ring = laws[0].ring().clone();
    let mut total = TruncatedSeries::zero(&ring, EXP_VAR, order);
    for (law, w) in laws.iter().zip(weights) {
        total = total.add(&law.exponential().truncate(order).scale_rational(w))?;
    }
    FormalGroupLaw::from_exp(total)
}

/// The mean-normalized variant: the weighted sum of exponentials divided by
/// the total weight.
pub fn ensemble_mean_law<R: Ring>(
    laws: &[FormalGroupLaw<R>],
    weights: &[Rational],
) -> Result<FormalGroupLaw<R>> {
    let mut total_weight = Rational::zero();
    for w in weights {
        total_weight += w;
    }
    if total_weight.is_zero() {
        return Err(Error::InvalidArgument("total weight is zero".into()));
    }
    let summed = ensemble_average_law(laws, weights)?;
    let exp = summed
        .exponential()
        .scale_rational(&total_weight.inverse()?);
    FormalGroupLaw::from_exp(exp)
}
