//! Degrees of the Kummer extensions `K_n = K(zeta_n, gamma^(1/n))` and the
//! size of the set `C_n` of automorphisms inverting both `zeta_n` and
//! `gamma^(1/n)`.
//!
//! With `gamma = s gamma0^h`, `n' = n / (n, 2h)` and `h' = 2h / (n, 2h)`:
//!
//! * `[K_n : K(zeta_n)] = n'` if one of the conditions C1..C4 holds and
//!   `2 n'` otherwise;
//! * `[K(zeta_n) : Q] = phi(n)`, doubled unless `disc(K) | n`;
//! * `#C_n = 2` exactly when an extension of one of the two automorphisms
//!   of `K(zeta_n)` sending `zeta_n` to its inverse exists, which is decided
//!   by the matching D condition.
//!
//! Every ingredient depends on `n` only through divisibility by a finite set
//! of integers, so `#C_n / [K_n : Q]` expands as
//! `(n, 2h) / (phi(n) n) * sum_i c_i [m_i | n]`; [`chi_decompose`] recovers
//! that expansion.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lucas::LucasParams;
use crate::numtheory::{divisors, euler_phi, fundamental_discriminant, gcd, lcm, moebius, nu, rational_sqrt, rational_square_class};
use crate::quadfield::{gamma_decompose, qth_root_in_k, GammaDecomposition, QElem, QField};

/// When `sqrt(r)` lies in `Q(zeta_n)` for a nonzero rational `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CyclotomicSqrt {
    /// `r` is a rational square.
    Always,
    /// `sqrt(r)` is in `Q(zeta_n)` iff this (absolute) discriminant divides `n`.
    Divides(u64),
}

impl CyclotomicSqrt {
    pub fn of(r: &BigRational) -> Self {
        assert!(!r.is_zero(), "square root class of zero");
        if rational_sqrt(r).is_some() {
            return CyclotomicSqrt::Always;
        }
        let disc = fundamental_discriminant(&rational_square_class(r));
        CyclotomicSqrt::Divides(u64::try_from(disc.abs()).expect("discriminant fits in u64"))
    }

    pub fn holds(&self, n: u64) -> bool {
        match *self {
            CyclotomicSqrt::Always => true,
            CyclotomicSqrt::Divides(m) => n % m == 0,
        }
    }

    fn modulus(&self) -> Option<u64> {
        match *self {
            CyclotomicSqrt::Always => None,
            CyclotomicSqrt::Divides(m) => Some(m),
        }
    }
}

/// Whether `sqrt(r)` belongs to `Q(zeta_n)`.
pub fn sqrt_in_cyclotomic(r: &BigRational, n: u64) -> bool {
    CyclotomicSqrt::of(r).holds(n)
}

/// `c` or `d` from the square-root criterion, with its sign and cyclotomic
/// membership rule.
#[derive(Clone, Debug)]
struct SignedClass {
    positive: bool,
    rule: CyclotomicSqrt,
}

impl SignedClass {
    fn of(r: &BigRational) -> Self {
        SignedClass { positive: r.is_positive(), rule: CyclotomicSqrt::of(r) }
    }
}

#[derive(Clone, Debug)]
enum SqrtShape {
    /// `beta = root^2` with `root` in `K`.
    Square { root: QElem },
    /// `beta` rational but not a square in `K`.
    Rational { own: CyclotomicSqrt, over_disc: CyclotomicSqrt },
    /// `beta` outside `Q` and `K^2`; `sqrt(beta)` lies in `K(zeta_n)` iff
    /// `norm` is a rational square and `sqrt(c)` or `sqrt(d)` lies in
    /// `Q(zeta_n)`, with `c = (a - sqrt(norm))/2`, `d = c / disc`, and `a`
    /// the rational part of `beta`.
    General { norm: BigRational, classes: Option<(BigRational, SignedClass, SignedClass)> },
}

/// Precomputed answers to "is `sqrt(beta)` in `K(zeta_n)`?" for one element.
#[derive(Clone, Debug)]
pub struct SqrtData {
    elem: QElem,
    shape: SqrtShape,
}

impl SqrtData {
    pub fn new(beta: &QElem) -> Result<Self> {
        if beta.is_zero() {
            return Err(Error::InvalidArgument("square root data of zero".into()));
        }
        let field = beta.field();
        let disc = BigInt::from(field.disc());
        let shape = if let Some(root) = qth_root_in_k(beta, 2) {
            SqrtShape::Square { root }
        } else if beta.is_rational() {
            SqrtShape::Rational {
                own: CyclotomicSqrt::of(&beta.x),
                over_disc: CyclotomicSqrt::of(&(&beta.x / &disc)),
            }
        } else {
            let norm = beta.norm();
            if rational_sqrt(&(&norm * &disc)).is_some() {
                return Err(Error::Unsupported(format!(
                    "norm({beta}) * disc is a rational square; splitting field is cyclic of degree 4"
                )));
            }
            let classes = rational_sqrt(&norm).map(|root| {
                let c = (&beta.x - &root) / BigInt::from(2);
                let d = &c / &disc;
                (root, SignedClass::of(&c), SignedClass::of(&d))
            });
            SqrtShape::General { norm, classes }
        };
        Ok(SqrtData { elem: beta.clone(), shape })
    }

    pub fn elem(&self) -> &QElem {
        &self.elem
    }

    /// `sqrt(beta) in K(zeta_n)`.
    pub fn in_k_cyclotomic(&self, n: u64) -> bool {
        match &self.shape {
            SqrtShape::Square { .. } => true,
            SqrtShape::Rational { own, over_disc } => own.holds(n) || over_disc.holds(n),
            SqrtShape::General { classes, .. } => classes
                .as_ref()
                .is_some_and(|(_, c, d)| c.rule.holds(n) || d.rule.holds(n)),
        }
    }

    fn moduli(&self) -> Vec<u64> {
        match &self.shape {
            SqrtShape::Square { .. } => vec![],
            SqrtShape::Rational { own, over_disc } => [own, over_disc].iter().filter_map(|r| r.modulus()).collect(),
            SqrtShape::General { classes, .. } => classes
                .iter()
                .flat_map(|(_, c, d)| [c.rule.modulus(), d.rule.modulus()])
                .flatten()
                .collect(),
        }
    }

    /// Whether `sigma(sqrt(beta)) * sqrt(beta) == target` for one of the
    /// automorphisms of `K(zeta_n)` inverting `zeta_n`. Assumes
    /// `sqrt(beta) in K(zeta_n)`.
    fn sqrt_product_hits(&self, target: &BigRational, n: u64) -> bool {
        let field = self.elem.field();
        let sigma2 = sigma2_defined(field, n);
        match &self.shape {
            SqrtShape::Square { root } => {
                // sqrt(beta) = root lies in K, so only the action on K matters.
                let conj_hit = root.norm() == *target;
                let id_hit = self.elem.is_rational() && self.elem.x == *target;
                let (s1, s2) = if field.is_real() { (id_hit, conj_hit) } else { (conj_hit, id_hit) };
                s1 || (sigma2 && s2)
            }
            SqrtShape::General { norm, classes } => {
                // Complex conjugation gives |beta|, a target only for
                // imaginary K with norm(beta) = target^2.
                let s1 = !field.is_real() && *norm == target * target;
                // The other automorphism gives +-sqrt(norm) for real K and
                // +-beta (never rational) for imaginary K.
                let s2 = field.is_real()
                    && classes.as_ref().is_some_and(|(root, c, d)| {
                        let plus = (c.rule.holds(n) && !c.positive) || (d.rule.holds(n) && d.positive);
                        plus && root == target
                    });
                s1 || (sigma2 && s2)
            }
            SqrtShape::Rational { .. } => {
                unreachable!("D conditions never involve rational radicands for non-torsion gamma")
            }
        }
    }
}

/// `sqrt(beta) in K(zeta_n)` for nonzero `beta`.
pub fn sqrt_in_k_cyclotomic(beta: &QElem, n: u64) -> Result<bool> {
    Ok(SqrtData::new(beta)?.in_k_cyclotomic(n))
}

/// The second automorphism (acting on `sqrt(disc)` as minus complex
/// conjugation) is distinct from complex conjugation iff `sqrt(disc)` is not
/// in `Q(zeta_n)`.
fn sigma2_defined(field: QField, n: u64) -> bool {
    n % field.disc().unsigned_abs() != 0
}

/// `sigma(beta) = beta^(-1)` for one of the two automorphisms, `beta in K`.
/// Complex conjugation acts trivially on real `K` and as conjugation on
/// imaginary `K`; the second automorphism does the opposite.
fn inverts_in_k(beta: &QElem, n: u64) -> bool {
    let field = beta.field();
    let conj_hit = beta.norm().is_one();
    let id_hit = (beta * beta) == QElem::one(field);
    let (s1, s2) = if field.is_real() { (id_hit, conj_hit) } else { (conj_hit, id_hit) };
    s1 || (sigma2_defined(field, n) && s2)
}

/// Data attached to a single `h' | 2h`.
#[derive(Clone, Debug)]
struct PowerData {
    power: QElem,
    half: Option<QElem>,
    plus: SqrtData,
    minus: SqrtData,
    double: SqrtData,
}

/// Which of the degree conditions holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ConditionCase {
    /// `n` odd.
    C1,
    /// `s^n' = 1`, `n` even, `gamma0^h'` a square in `K(zeta_n)`.
    C2,
    /// `s = -1`, `nu_2(n) = 1`, `-gamma0^h'` a square in `K(zeta_n)`.
    C3,
    /// `s^n' = -1`, `nu_2(n) = 2`, `2 gamma0^h'` a square in `K(zeta_n)`.
    C4,
    None,
}

impl fmt::Display for ConditionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConditionCase::C1 => "C1",
            ConditionCase::C2 => "C2",
            ConditionCase::C3 => "C3",
            ConditionCase::C4 => "C4",
            ConditionCase::None => "none",
        };
        f.write_str(s)
    }
}

/// Everything needed to evaluate the degree and `#C_n` conditions for any `n`.
#[derive(Clone, Debug)]
pub struct ConditionContext {
    decomposition: GammaDecomposition,
    field: QField,
    powers: BTreeMap<u64, PowerData>,
}

impl ConditionContext {
    pub fn new(params: &LucasParams) -> Result<Self> {
        Self::from_gamma(&params.gamma())
    }

    /// Context for an arbitrary non-torsion `gamma` of norm 1 in a field
    /// with discriminant other than -3, -4.
    pub fn from_gamma(gamma: &QElem) -> Result<Self> {
        let field = gamma.field();
        if matches!(field.disc(), -3 | -4) {
            return Err(Error::UnsupportedDiscriminant(field.disc()));
        }
        if !gamma.norm().is_one() {
            return Err(Error::InvalidArgument(format!("norm of {gamma} is not 1")));
        }
        let decomposition = gamma_decompose(gamma)?;
        let two_h = 2 * decomposition.h;
        let mut powers = BTreeMap::new();
        for hp in divisors(two_h) {
            let power = decomposition.gamma0.pow(hp);
            if power.is_rational() {
                return Err(Error::Inconsistent(format!("gamma0^{hp} is rational")));
            }
            let half = (hp % 2 == 0).then(|| decomposition.gamma0.pow(hp / 2));
            let two = BigRational::from_integer(2.into());
            let data = PowerData {
                plus: SqrtData::new(&power)?,
                minus: SqrtData::new(&-&power)?,
                double: SqrtData::new(&power.scale(&two))?,
                half,
                power,
            };
            powers.insert(hp, data);
        }
        Ok(ConditionContext { decomposition, field, powers })
    }

    pub fn decomposition(&self) -> &GammaDecomposition {
        &self.decomposition
    }

    pub fn field(&self) -> QField {
        self.field
    }

    pub fn h(&self) -> u64 {
        self.decomposition.h
    }

    /// All discriminants whose divisibility the conditions depend on.
    pub fn relevant_moduli(&self) -> Vec<u64> {
        let mut out = vec![self.field.disc().unsigned_abs()];
        for data in self.powers.values() {
            for sq in [&data.plus, &data.minus, &data.double] {
                out.extend(sq.moduli());
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn split(&self, n: u64) -> (u64, u64, &PowerData) {
        let two_h = 2 * self.decomposition.h;
        let g = gcd(n, two_h);
        (n / g, two_h / g, &self.powers[&(two_h / g)])
    }

    /// First of C1..C4 that holds for `n` (they are mutually exclusive).
    pub fn condition_case(&self, n: u64) -> ConditionCase {
        assert!(n >= 1);
        if n % 2 == 1 {
            return ConditionCase::C1;
        }
        let (n_prime, _, data) = self.split(n);
        let s = self.decomposition.s;
        let s_pow = if s > 0 || n_prime % 2 == 0 { 1 } else { -1 };
        let v2 = nu(2, n);
        if s_pow == 1 && data.plus.in_k_cyclotomic(n) {
            ConditionCase::C2
        } else if s < 0 && v2 == 1 && data.minus.in_k_cyclotomic(n) {
            ConditionCase::C3
        } else if s_pow == -1 && v2 == 2 && data.double.in_k_cyclotomic(n) {
            ConditionCase::C4
        } else {
            ConditionCase::None
        }
    }

    /// Whether some automorphism of `K_n` inverts both `zeta_n` and
    /// `gamma^(1/n)`, given the matching condition case.
    pub fn sigma_exists(&self, n: u64, case: ConditionCase) -> bool {
        let (_, _, data) = self.split(n);
        let one = BigRational::one();
        let two = BigRational::from_integer(2.into());
        match case {
            ConditionCase::C1 => inverts_in_k(data.half.as_ref().expect("h' is even for odd n"), n),
            ConditionCase::C2 => data.plus.sqrt_product_hits(&one, n),
            ConditionCase::C3 => data.minus.sqrt_product_hits(&one, n),
            ConditionCase::C4 => data.double.sqrt_product_hits(&two, n),
            ConditionCase::None => inverts_in_k(&data.power, n),
        }
    }

    /// `#C_n`, either 1 or 2. For `n <= 2` the inverting automorphism is
    /// never the identity since `gamma^(2/n) != 1`.
    pub fn c_size(&self, n: u64) -> u64 {
        if self.sigma_exists(n, self.condition_case(n)) {
            2
        } else {
            1
        }
    }

    /// `[K_n : Q]`.
    pub fn field_degree(&self, n: u64) -> u64 {
        let (n_prime, _, _) = self.split(n);
        let kummer = if self.condition_case(n) == ConditionCase::None { 2 * n_prime } else { n_prime };
        let cyclotomic = if sigma2_defined(self.field, n) { 2 } else { 1 };
        kummer * cyclotomic * euler_phi(n)
    }

    /// `#C_n / [K_n : Q]`.
    pub fn degree_ratio(&self, n: u64) -> BigRational {
        BigRational::new(self.c_size(n).into(), self.field_degree(n).into())
    }

    /// `4 * #C_n / [K_n : Q] * phi(n) n / (n, 2h)`, an integer in {1, 2, 4, 8}.
    pub fn normalized_ratio_x4(&self, n: u64) -> i64 {
        let case = self.condition_case(n);
        let kummer = if case == ConditionCase::None { 2 } else { 1 };
        let cyclotomic = if sigma2_defined(self.field, n) { 2 } else { 1 };
        let c = if self.sigma_exists(n, case) { 2 } else { 1 };
        4 * c / (kummer * cyclotomic)
    }

    /// `#C_n / [K_n : Q] * phi(n) n / (n, 2h)`.
    pub fn normalized_ratio(&self, n: u64) -> BigRational {
        BigRational::new(self.normalized_ratio_x4(n).into(), 4.into())
    }

    pub fn diagnostics(&self, n: u64) -> ConditionRow {
        let case = self.condition_case(n);
        ConditionRow {
            n,
            case,
            c_size: self.c_size(n),
            field_degree: self.field_degree(n),
            ratio: self.degree_ratio(n),
            normalized: self.normalized_ratio(n),
        }
    }

    /// Powers `gamma0^h'` for every `h' | 2h`.
    pub fn powers(&self) -> impl Iterator<Item = (u64, &QElem)> {
        self.powers.iter().map(|(&hp, d)| (hp, &d.power))
    }
}

/// One row of the per-`n` diagnostic table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionRow {
    pub n: u64,
    pub case: ConditionCase,
    pub c_size: u64,
    pub field_degree: u64,
    pub ratio: BigRational,
    pub normalized: BigRational,
}

/// `r(n) = sum of c over terms (m, c) with m | n`, valid for all `n >= 1`,
/// where `r(n) = #C_n / [K_n : Q] * phi(n) n / (n, 2h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiDecomposition {
    pub period: u64,
    pub terms: Vec<(u64, BigRational)>,
}

impl ChiDecomposition {
    pub fn eval(&self, n: u64) -> BigRational {
        self.terms
            .iter()
            .filter(|(m, _)| n % m == 0)
            .fold(BigRational::zero(), |acc, (_, c)| acc + c)
    }
}

/// Period that captures every divisibility condition the engine tests.
pub fn decomposition_period(ctx: &ConditionContext) -> u64 {
    ctx.relevant_moduli().into_iter().fold(lcm(8, 4 * ctx.h()), lcm)
}

/// Expand `r(n)` over the characteristic functions of `m Z`, `m | P`.
///
/// Coefficients come from Moebius inversion over the divisors of `P`; the
/// expansion is re-checked against the condition engine for every
/// `n <= 10 P` before it is returned.
pub fn chi_decompose(ctx: &ConditionContext) -> Result<ChiDecomposition> {
    let period = decomposition_period(ctx);
    let divs = divisors(period);
    let r: BTreeMap<u64, i64> = divs.iter().map(|&m| (m, ctx.normalized_ratio_x4(m))).collect();
    let mut terms_x4 = Vec::new();
    for &m in &divs {
        let c: i64 = divisors(m)
            .into_iter()
            .map(|e| i64::from(moebius(m / e)) * r[&e])
            .sum();
        if c != 0 {
            terms_x4.push((m, c));
        }
    }
    for n in 1..=10 * period {
        let expected = ctx.normalized_ratio_x4(n);
        let got: i64 = terms_x4.iter().filter(|(m, _)| n % m == 0).map(|(_, c)| c).sum();
        if got != expected {
            return Err(Error::Inconsistent(format!(
                "chi expansion gives {got}/4 at n = {n}, condition engine gives {expected}/4"
            )));
        }
    }
    let terms = terms_x4
        .into_iter()
        .map(|(m, c)| (m, BigRational::new(c.into(), 4.into())))
        .collect();
    Ok(ChiDecomposition { period, terms })
}
