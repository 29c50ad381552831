//! The dictionary between probability and formal groups.
//!
//! For a random variable X with exact rational moments, the expectation of
//! `1 - e^{-tX}` is a series with zero constant term and linear coefficient
//! E[X]; when the mean is nonzero it is the exponential of a formal group
//! law F. Two derived coordinates compare F with the multiplicative group:
//!
//! ```text
//!   kappa_F = log_Gm . exp_F     (a sign-twisted cumulant series)
//!   st_F    = exp_Gm . log_F     (the Schneider-Teitelbaum modulus)
//! ```
//!
//! As functions these are mutually inverse up to the intertwining
//! coordinate changes checked by [`Distribution::intertwining_report`].
//!
//! Moments are computed through exact recurrences, never sampling: the
//! identities realized here are formal, so the whole module stays in exact
//! rational arithmetic.

use crate::error::{Error, Result};
use crate::fgl::{gm_exponential, gm_logarithm, CoefficientCheck, FormalGroupLaw, EXP_VAR};
use crate::rational::Rational;
use crate::ring::Rationals;
use crate::series::TruncatedSeries;

/// A rational-parameter random variable with exact moments.
#[derive(Clone, Debug, PartialEq)]
pub enum Distribution {
    /// Finitely many atoms `(value, weight)`; weights are positive and sum
    /// to 1.
    FiniteSupport(Vec<(Rational, Rational)>),
    /// Poisson with mean `mu > 0`.
    Poisson(Rational),
    /// Bernoulli with success probability `p` in `[0, 1]`.
    Bernoulli(Rational),
}

impl Distribution {
    pub fn finite(atoms: Vec<(Rational, Rational)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidDistribution(
                "finite support needs at least one atom".into(),
            ));
        }
        let mut total = Rational::zero();
        for (_, w) in &atoms {
            if !w.is_positive() {
                return Err(Error::InvalidDistribution(format!(
                    "weight {w} is not positive"
                )));
            }
            total += w;
        }
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        Ok(Distribution::FiniteSupport(atoms))
    }

    pub fn poisson(mean: Rational) -> Result<Self> {
        if !mean.is_positive() {
            return Err(Error::InvalidDistribution(format!(
                "Poisson mean {mean} must be positive"
            )));
        }
        Ok(Distribution::Poisson(mean))
    }

    pub fn bernoulli(p: Rational) -> Result<Self> {
        if p.is_negative() || (&p - &Rational::one()).is_positive() {
            return Err(Error::InvalidDistribution(format!(
                "Bernoulli parameter {p} is outside [0, 1]"
            )));
        }
        Ok(Distribution::Bernoulli(p))
    }

    /// A unit mass at `c`, as a one-atom finite distribution.
    pub fn point_mass(c: Rational) -> Self {
        Distribution::FiniteSupport(vec![(c, Rational::one())])
    }

    /// Parses the literal syntax `poisson:MU`, `bernoulli:P`, or
    /// `finite:v1@w1,v2@w2,...` with rationals written `num/den`.
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, param) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("`{s}` is not of the form kind:parameters")))?;
        Self::from_kind_and_param(kind, param)
    }

    pub fn from_kind_and_param(kind: &str, param: &str) -> Result<Self> {
        match kind {
            "poisson" => Distribution::poisson(param.parse()?),
            "bernoulli" => Distribution::bernoulli(param.parse()?),
            "finite" => {
                let atoms = param
                    .split(',')
                    .map(|atom| {
                        let (v, w) = atom.split_once('@').ok_or_else(|| {
                            Error::Parse(format!("atom `{atom}` is not of the form value@weight"))
                        })?;
                        Ok((v.parse()?, w.parse()?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Distribution::finite(atoms)
            }
            other => Err(Error::Parse(format!(
                "unknown distribution kind `{other}` (expected poisson, bernoulli, or finite)"
            ))),
        }
    }

    /// The first moment E[X].
    pub fn mean(&self) -> Rational {
        self.moments(1).moment(1).clone()
    }

    /// Exact raw moments `m_0 .. m_order`.
    pub fn moments(&self, order: usize) -> MomentSequence {
        let mut m = Vec::with_capacity(order + 1);
        m.push(Rational::one());
        match self {
            Distribution::FiniteSupport(atoms) => {
                // running powers v^n per atom
                let mut powers: Vec<Rational> =
                    atoms.iter().map(|_| Rational::one()).collect();
                for _ in 1..=order {
                    let mut total = Rational::zero();
                    for (i, (v, w)) in atoms.iter().enumerate() {
                        powers[i] *= v;
                        total += &(&powers[i] * w);
                    }
                    m.push(total);
                }
            }
            Distribution::Poisson(mu) => {
                // m_{n+1} = mu * sum_{k<=n} C(n,k) m_k
                for n in 0..order {
                    let mut total = Rational::zero();
                    for (k, mk) in m.iter().enumerate().take(n + 1) {
                        total += &(&Rational::binomial(n, k) * mk);
                    }
                    m.push(mu * &total);
                }
            }
            Distribution::Bernoulli(p) => {
                for _ in 1..=order {
                    m.push(p.clone());
                }
            }
        }
        MomentSequence { moments: m }
    }

    /// The moment generating function `M(t) = sum m_n t^n / n!`.
    pub fn mgf(&self, order: usize) -> TruncatedSeries<Rationals> {
        self.moments(order).mgf()
    }

    /// `E[1 - e^{-tX}] = 1 - M(-t)`: the exponential-to-be of the
    /// associated law. Always defined; only the law construction needs an
    /// invertible linear term.
    pub fn exponential(&self, order: usize) -> TruncatedSeries<Rationals> {
        let m = self.moments(order);
        let coeffs: Vec<Rational> = (0..=order)
            .map(|n| {
                if n == 0 {
                    Rational::zero()
                } else {
                    // -(-1)^n m_n / n!
                    let c = m.moment(n) * &Rational::inverse_factorial(n);
                    if n % 2 == 1 {
                        c
                    } else {
                        -c
                    }
                }
            })
            .collect();
        TruncatedSeries::from_rationals(&Rationals, EXP_VAR, &coeffs)
    }

    /// The formal group law with exponential `E[1 - e^{-tX}]`. Rejects zero
    /// mean, where the exponential has no compositional inverse.
    pub fn formal_group_law(&self, order: usize) -> Result<FormalGroupLaw<Rationals>> {
        if self.mean().is_zero() {
            return Err(Error::ZeroMean);
        }
        FormalGroupLaw::from_exp(self.exponential(order))
    }

    /// The cumulant series `kappa_F = log_Gm . exp_F`; its n-th coefficient
    /// times n! is the classical cumulant up to the sign `(-1)^{n+1}`.
    pub fn cumulant_series(&self, order: usize) -> Result<TruncatedSeries<Rationals>> {
        if self.mean().is_zero() {
            return Err(Error::ZeroMean);
        }
        gm_logarithm(&Rationals, order).compose(&self.exponential(order))
    }

    /// The Schneider-Teitelbaum modulus `st_F = exp_Gm . log_F`.
    pub fn st_modulus(&self, order: usize) -> Result<TruncatedSeries<Rationals>> {
        let law = self.formal_group_law(order)?;
        gm_exponential(&Rationals, order)
            .compose(law.logarithm())
            .map(|s| s.rename_variable("x"))
    }

    /// Checks both intertwining identities coefficientwise:
    ///
    /// ```text
    ///   kappa_F = log_Gm . st^{-1} . exp_Gm
    ///   st_F    = exp_Gm . kappa^{-1} . log_Gm
    /// ```
    ///
    /// where the inverses are compositional reversions computed
    /// independently of the direct definitions.
    pub fn intertwining_report(&self, order: usize) -> Result<IntertwiningReport> {
        let ring = Rationals;
        let kappa = self.cumulant_series(order)?;
        let st = self.st_modulus(order)?.rename_variable(EXP_VAR);
        let exp_gm = gm_exponential(&ring, order);
        let log_gm = gm_logarithm(&ring, order);

        let st_inv = st.revert()?;
        let kappa_via_st = log_gm.compose(&st_inv.compose(&exp_gm)?)?;
        let kappa_identity = CoefficientCheck::compare_series(&kappa, &kappa_via_st);

        let kappa_inv = kappa.revert()?;
        let st_via_kappa = exp_gm.compose(&kappa_inv.compose(&log_gm)?)?;
        let st_identity = CoefficientCheck::compare_series(&st, &st_via_kappa);

        Ok(IntertwiningReport {
            kappa_identity,
            st_identity,
        })
    }
}

/// Raw moments `m_0 .. m_N` with `m_0 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence {
    moments: Vec<Rational>,
}

impl MomentSequence {
    /// From an explicit list `m_0 .. m_N`; `m_0` must be 1.
    pub fn from_raw(moments: Vec<Rational>) -> Result<Self> {
        match moments.first() {
            Some(m0) if m0.is_one() => Ok(MomentSequence { moments }),
            _ => Err(Error::InvalidArgument("moment sequence must start with m_0 = 1".into())),
        }
    }

    pub fn order(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn moment(&self, n: usize) -> &Rational {
        &self.moments[n]
    }

    pub fn moments(&self) -> &[Rational] {
        &self.moments
    }

    pub fn mgf(&self) -> TruncatedSeries<Rationals> {
        let coeffs: Vec<Rational> = self
            .moments
            .iter()
            .enumerate()
            .map(|(n, m)| m * &Rational::inverse_factorial(n))
            .collect();
        TruncatedSeries::from_rationals(&Rationals, EXP_VAR, &coeffs)
    }

    /// Classical cumulants `kappa_1 .. kappa_N` from the moment recursion.
    pub fn cumulants(&self) -> Vec<Rational> {
        cumulants_from_moments(&Rationals, &self.moments)
    }
}

/// Classical cumulant recursion over any coefficient ring:
/// `kappa_n = m_n - sum_{k=1}^{n-1} C(n-1, k-1) kappa_k m_{n-k}`,
/// for `moments = [m_0, m_1, ..]` with `m_0 = 1`. Returns `kappa_1 ..`.
pub fn cumulants_from_moments<R: crate::ring::Ring>(
    ring: &R,
    moments: &[R::Elem],
) -> Vec<R::Elem> {
    let order = moments.len() - 1;
    let mut kappa: Vec<R::Elem> = Vec::with_capacity(order);
    for n in 1..=order {
        let mut value = moments[n].clone();
        for k in 1..n {
            let c = Rational::binomial(n - 1, k - 1);
            let term = ring.scale(&ring.mul(&kappa[k - 1], &moments[n - k]), &c);
            value = ring.sub(&value, &term);
        }
        kappa.push(value);
    }
    kappa
}

/// Outcome of the two intertwining identity checks.
#[derive(Clone, Debug)]
pub struct IntertwiningReport {
    pub kappa_identity: CoefficientCheck,
    pub st_identity: CoefficientCheck,
}

impl IntertwiningReport {
    pub fn all_pass(&self) -> bool {
        self.kappa_identity.pass && self.st_identity.pass
    }
}
