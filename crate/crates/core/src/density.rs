//! Closed-form densities of primes whose index of appearance is divisible by
//! `t`, plus a direct series used to cross-check them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::kummer::{chi_decompose, ChiDecomposition, ConditionContext};
use crate::lucas::LucasParams;
use crate::numtheory::{divisors, euler_phi, gcd, is_squarefree, lcm, moebius, nu, trial_factorize};
use crate::rational::to_f64;

/// Artin's constant, `prod_p (1 - 1/(p(p-1)))`.
pub fn artin_constant() -> f64 {
    0.373_955_813_619_202_3
}

fn r(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn odd_prime_divisors(n: u64) -> impl Iterator<Item = u64> {
    trial_factorize(n).0.into_iter().map(|(p, _)| p).filter(|&p| p > 2)
}

/// `B_h = 2 prod_{p > 2, p | h} (1 - (p-1)/(p^2-p-1))`.
pub fn b_const(h: u64) -> BigRational {
    odd_prime_divisors(h).fold(r(2, 1), |acc, p| acc * (BigRational::one() - r(p - 1, p * p - p - 1)))
}

/// `F_h(t) = (t,h)/(phi(t) t) prod_{p > 2, p | t} (1 - (pt,h)/(p^2 (t,h))) / (1 - (p,h)/(p(p-1)))`.
pub fn big_f(h: u64, t: u64) -> BigRational {
    let th = gcd(t, h);
    odd_prime_divisors(t).fold(r(th, euler_phi(t) * t), |acc, p| {
        let num = BigRational::one() - r(gcd(p * t, h), p * p * th);
        let den = BigRational::one() - r(gcd(p, h), p * (p - 1));
        acc * num / den
    })
}

/// `f_h(t, n) = (nt, h) phi(t) / ((t, h) phi(nt) n)`, the relative weight of
/// `n` in the series for `t`.
pub fn f_direct(h: u64, t: u64, n: u64) -> BigRational {
    r(gcd(n * t, h) * euler_phi(t), gcd(t, h) * euler_phi(n * t) * n)
}

/// `f_h(t, p)` for prime `p`.
pub fn f_small(h: u64, t: u64, p: u64) -> BigRational {
    if t % p == 0 {
        if nu(p, t) < nu(p, h) {
            r(1, p)
        } else {
            r(1, p * p)
        }
    } else if h % p == 0 {
        r(1, p - 1)
    } else {
        r(1, p * (p - 1))
    }
}

/// `G~_{h,m}(t)`; zero unless `m` is squarefree.
pub fn g_tilde(h: u64, m: u64, t: u64) -> BigRational {
    if !is_squarefree(m) {
        return BigRational::zero();
    }
    let f2 = f_small(h, t, 2);
    let two_part = if m % 2 == 0 { -f2 } else { BigRational::one() - f2 };
    odd_prime_divisors(m).fold(two_part, |acc, p| {
        let f = f_small(h, t, p);
        acc / (BigRational::one() - f.recip())
    })
}

/// `G_{h,m}(t) = G~_{h, m/(m,t)}(t)`.
pub fn g_fun(h: u64, m: u64, t: u64) -> BigRational {
    g_tilde(h, m / gcd(m, t), t)
}

/// Density coefficient of `sum_{n} mu(n) (nt,h)/(phi(nt) nt) [m | nt]`,
/// divided by Artin's constant: `B_h F_h(t) G_{h,m}(t)`.
pub fn wagstaff(h: u64, m: u64, t: u64) -> BigRational {
    b_const(h) * big_f(h, t) * g_fun(h, m, t)
}

/// A density `coefficient * A`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityValue {
    pub t: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub coefficient: BigRational,
    pub value: f64,
}

fn ser_ratio<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::rational::format_ratio(x))
}

/// Truncated series with a bound on the omitted tail.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesValue {
    pub t: u64,
    pub terms: u64,
    pub value: f64,
    pub remainder_bound: f64,
}

/// Sup over `N >= 1` of `N * sum_{n > N} 1/(n phi(n))`, rounded up.
pub const SERIES_TAIL_CONSTANT: f64 = 2.0;

/// `sum_{n <= terms} mu(n) #C_{nt} / [K_{nt} : Q]`, evaluated from the
/// condition engine rather than from the closed form.
///
/// Each ratio is at most `2 (nt, 2h) / (phi(nt) nt) <= 4h / (n phi(n))`,
/// which gives the remainder bound.
pub fn delta_series(ctx: &ConditionContext, t: u64, terms: u64) -> SeriesValue {
    assert!(t >= 1 && terms >= 1);
    let value = (1..=terms)
        .filter(|&n| moebius(n) != 0)
        .map(|n| f64::from(moebius(n)) * to_f64(&ctx.degree_ratio(n * t)))
        .sum();
    let remainder_bound = SERIES_TAIL_CONSTANT * 4.0 * ctx.h() as f64 / terms as f64;
    SeriesValue { t, terms, value, remainder_bound }
}

/// Everything needed to produce densities for one sequence.
#[derive(Clone, Debug)]
pub struct DensityProfile {
    context: ConditionContext,
    chi: ChiDecomposition,
    period: u64,
    table: Vec<BigRational>,
}

impl DensityProfile {
    pub fn new(params: &LucasParams) -> Result<Self> {
        Self::from_context(ConditionContext::new(params)?)
    }

    pub fn from_context(context: ConditionContext) -> Result<Self> {
        let chi = chi_decompose(&context)?;
        let big_h = 2 * context.h();
        let full = lcm(chi.period, big_h);
        let values: Vec<BigRational> = (0..full).map(|i| gu_eval(&chi, big_h, if i == 0 { full } else { i })).collect();
        let period = divisors(full)
            .into_iter()
            .find(|&p| (0..full as usize).all(|i| values[i] == values[i % p as usize]))
            .expect("full period always works");
        let table = values[..period as usize].to_vec();
        Ok(DensityProfile { context, chi, period, table })
    }

    pub fn context(&self) -> &ConditionContext {
        &self.context
    }

    pub fn chi(&self) -> &ChiDecomposition {
        &self.chi
    }

    /// `2h`, the exponent the closed forms are taken at.
    pub fn big_h(&self) -> u64 {
        2 * self.context.h()
    }

    /// Minimal period of `t -> G_u(t)`.
    pub fn gu_period(&self) -> u64 {
        self.period
    }

    /// `G_u(t)` for `t >= 1`, from the periodic table.
    pub fn g_u(&self, t: u64) -> BigRational {
        assert!(t >= 1);
        self.table[(t % self.period) as usize].clone()
    }

    /// `G_u(t)` evaluated from the expansion.
    pub fn g_u_direct(&self, t: u64) -> BigRational {
        gu_eval(&self.chi, self.big_h(), t)
    }

    /// Residue classes mod the period grouped by `G_u` value, for display.
    pub fn gu_classes(&self) -> Vec<(BigRational, Vec<u64>)> {
        let mut groups: BTreeMap<BigRational, Vec<u64>> = BTreeMap::new();
        for (i, v) in self.table.iter().enumerate() {
            groups.entry(v.clone()).or_default().push(i as u64);
        }
        let mut out: Vec<_> = groups.into_iter().collect();
        out.sort_by_key(|(_, res)| res[0]);
        out
    }

    /// Density coefficient `F_{2h}(t) G_u(t)`, to be multiplied by `A`.
    pub fn delta_coefficient(&self, t: u64) -> BigRational {
        big_f(self.big_h(), t) * self.g_u(t)
    }

    pub fn delta(&self, t: u64) -> DensityValue {
        let coefficient = self.delta_coefficient(t);
        let value = to_f64(&coefficient) * artin_constant();
        DensityValue { t, coefficient, value }
    }

    pub fn delta_series(&self, t: u64, terms: u64) -> SeriesValue {
        delta_series(&self.context, t, terms)
    }
}

/// `G_u(t) = B_H sum_i c_i G_{H, m_i}(t)` with `H = 2h`.
fn gu_eval(chi: &ChiDecomposition, big_h: u64, t: u64) -> BigRational {
    let sum = chi
        .terms
        .iter()
        .fold(BigRational::zero(), |acc, (m, c)| acc + c * g_fun(big_h, *m, t));
    b_const(big_h) * sum
}
