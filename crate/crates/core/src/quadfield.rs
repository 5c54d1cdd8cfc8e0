//! Exact arithmetic in a quadratic field `Q(sqrt(d))`.
//!
//! Elements are stored as `x + y sqrt(d)` with `d` the squarefree radicand,
//! not over `sqrt(disc)`. Where a formula wants coordinates over the field
//! discriminant, see [`QElem::disc_coordinates`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{fundamental_discriminant_i64, squarefree_part_i64};

/// The field `Q(sqrt(d))` for squarefree `d != 0, 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QField {
    d: i64,
    disc: i64,
}

impl QField {
    /// Field generated by `sqrt(m)` for any nonsquare nonzero `m`.
    pub fn from_radicand(m: i64) -> Self {
        let d = squarefree_part_i64(m);
        assert!(d != 1, "Q(sqrt({m})) = Q");
        QField { d, disc: fundamental_discriminant_i64(d) }
    }

    /// Squarefree radicand.
    pub fn d(&self) -> i64 {
        self.d
    }

    /// Field discriminant.
    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn is_real(&self) -> bool {
        self.d > 0
    }

    /// `sqrt(disc) = k sqrt(d)` with `k` in {1, 2}.
    pub fn disc_scale(&self) -> i64 {
        if self.disc == self.d {
            1
        } else {
            2
        }
    }
}

/// `x + y sqrt(d)` with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QElem {
    pub x: BigRational,
    pub y: BigRational,
    field: QField,
}

impl QElem {
    pub fn new(x: BigRational, y: BigRational, field: QField) -> Self {
        QElem { x, y, field }
    }

    pub fn from_rational(x: BigRational, field: QField) -> Self {
        QElem { x, y: BigRational::zero(), field }
    }

    pub fn from_ints(x: i64, y: i64, field: QField) -> Self {
        QElem::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()), field)
    }

    pub fn one(field: QField) -> Self {
        QElem::from_rational(BigRational::one(), field)
    }

    pub fn field(&self) -> QField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// The nontrivial automorphism `sqrt(d) -> -sqrt(d)`.
    pub fn conj(&self) -> Self {
        QElem::new(self.x.clone(), -&self.y, self.field)
    }

    pub fn norm(&self) -> BigRational {
        &self.x * &self.x - &self.y * &self.y * BigInt::from(self.field.d)
    }

    pub fn trace(&self) -> BigRational {
        &self.x * BigInt::from(2)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QElem::new(&self.x * r, &self.y * r, self.field)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let n = self.norm();
        QElem::new(&self.x / &n, -&self.y / &n, self.field)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = QElem::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coordinates `(a, b)` with `self = a + b sqrt(disc)`.
    pub fn disc_coordinates(&self) -> (BigRational, BigRational) {
        (self.x.clone(), &self.y / BigInt::from(self.field.disc_scale()))
    }

    /// Largest absolute numerator or denominator among the coordinates.
    pub fn height(&self) -> BigInt {
        [self.x.numer(), self.x.denom(), self.y.numer(), self.y.denom()]
            .into_iter()
            .map(|v| v.abs())
            .max()
            .unwrap()
    }

    /// Sign of the first nonzero coordinate.
    fn leading_sign(&self) -> i32 {
        if !self.x.is_zero() {
            if self.x.is_positive() {
                1
            } else {
                -1
            }
        } else if self.y.is_positive() {
            1
        } else if self.y.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Approximate value in the embedding `sqrt(d) > 0` (real fields) or
    /// `sqrt(d) = i sqrt(|d|)` (imaginary fields), as `(re, im)`.
    pub fn approx(&self) -> (f64, f64) {
        let x = self.x.to_f64().unwrap_or(f64::NAN);
        let y = self.y.to_f64().unwrap_or(f64::NAN);
        let r = (self.field.d.abs() as f64).sqrt();
        if self.field.is_real() {
            (x + y * r, 0.0)
        } else {
            (x, y * r)
        }
    }
}

impl fmt::Display for QElem {
    /// Common-denominator form, e.g. `(1 + sqrt(5))/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.x.denom().lcm(self.y.denom());
        let xn = self.x.numer() * (&den / self.x.denom());
        let yn = self.y.numer() * (&den / self.y.denom());
        let radical = format!("sqrt({})", self.field.d);
        let body = match (xn.is_zero(), yn.is_zero()) {
            (_, true) => xn.to_string(),
            (true, false) => match yn.abs().is_one() {
                true if yn.is_negative() => format!("-{radical}"),
                true => radical,
                false => format!("{yn}*{radical}"),
            },
            (false, false) => {
                let sign = if yn.is_negative() { '-' } else { '+' };
                let mag = yn.abs();
                if mag.is_one() {
                    format!("{xn} {sign} {radical}")
                } else {
                    format!("{xn} {sign} {mag}*{radical}")
                }
            }
        };
        if den.is_one() {
            write!(f, "{body}")
        } else if !xn.is_zero() && !yn.is_zero() {
            write!(f, "({body})/{den}")
        } else {
            write!(f, "{body}/{den}")
        }
    }
}

fn same_field(a: &QElem, b: &QElem) -> QField {
    assert_eq!(a.field, b.field, "mixing elements of different quadratic fields");
    a.field
}

impl Add for &QElem {
    type Output = QElem;
    fn add(self, rhs: &QElem) -> QElem {
        let field = same_field(self, rhs);
        QElem::new(&self.x + &rhs.x, &self.y + &rhs.y, field)
    }
}

impl Sub for &QElem {
    type Output = QElem;
    fn sub(self, rhs: &QElem) -> QElem {
        let field = same_field(self, rhs);
        QElem::new(&self.x - &rhs.x, &self.y - &rhs.y, field)
    }
}

impl Mul for &QElem {
    type Output = QElem;
    fn mul(self, rhs: &QElem) -> QElem {
        let field = same_field(self, rhs);
        let d = BigInt::from(field.d);
        QElem::new(
            &self.x * &rhs.x + &self.y * &rhs.y * d,
            &self.x * &rhs.y + &self.y * &rhs.x,
            field,
        )
    }
}

impl Neg for &QElem {
    type Output = QElem;
    fn neg(self) -> QElem {
        QElem::new(-&self.x, -&self.y, self.field)
    }
}

impl Neg for QElem {
    type Output = QElem;
    fn neg(self) -> QElem {
        -&self
    }
}

/// Integer pair `X + Y sqrt(d)` in `Z[sqrt(d)]`.
type IntPair = (BigInt, BigInt);

fn pair_mul(a: &IntPair, b: &IntPair, d: &BigInt) -> IntPair {
    (&a.0 * &b.0 + &a.1 * &b.1 * d, &a.0 * &b.1 + &a.1 * &b.0)
}

fn pair_pow(base: &IntPair, mut e: u32, d: &BigInt) -> IntPair {
    let mut acc = (BigInt::one(), BigInt::zero());
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = pair_mul(&acc, &b, d);
        }
        e >>= 1;
        if e > 0 {
            b = pair_mul(&b, &b, d);
        }
    }
    acc
}

/// Exact integer `q`-th root, if `n` is a perfect `q`-th power.
fn exact_nth_root(n: &BigInt, q: u32) -> Option<BigInt> {
    if n.is_negative() && q % 2 == 0 {
        return None;
    }
    let r = n.nth_root(q);
    (r.pow(q) == *n).then_some(r)
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    exact_nth_root(n, 2)
}

/// Fixed-point fraction bits used when approximating the real embedding.
const FIXED_POINT_BITS: usize = 64;

/// Solve `(X + Y sqrt(d))^q = a + b sqrt(d)` over the integers, `d > 0`.
fn int_root_real(a: &BigInt, b: &BigInt, d: i64, q: u32) -> Option<IntPair> {
    if (a.is_positive() && b.is_negative()) || (a.is_negative() && b.is_positive()) {
        // Work in the conjugate embedding so that |a + b sqrt(d)| is the larger one.
        return int_root_real(a, &-b, d, q).map(|(x, y)| (x, -y));
    }
    if a.is_negative() || b.is_negative() {
        if q % 2 == 0 {
            return None;
        }
        return int_root_real(&-a, &-b, d, q).map(|(x, y)| (-x, -y));
    }
    let dd = BigInt::from(d);
    let norm = a * a - b * b * &dd;
    let norm_root = exact_nth_root(&norm.abs(), q)?;
    let norms: Vec<BigInt> = if q % 2 == 1 {
        vec![if norm.is_negative() { -norm_root } else { norm_root }]
    } else if norm.is_negative() {
        return None;
    } else {
        vec![norm_root.clone(), -norm_root]
    };

    // R ~ rho * 2^P where rho = (a + b sqrt(d))^(1/q) >= 1.
    let p = FIXED_POINT_BITS;
    let shift = q as usize * p;
    let lambda = (a << shift) + ((b * b * &dd) << (2 * shift)).sqrt();
    let r = lambda.nth_root(q);
    if r.is_zero() {
        return None;
    }
    let target = (a.clone(), b.clone());
    for m in norms {
        // X = (rho + m / rho) / 2, rounded.
        let s = &r + (&m << (2 * p)).div_floor(&r);
        let x0 = (s + (BigInt::one() << p)) >> (p + 1);
        for dx in -1i32..=1 {
            let x = &x0 + dx;
            let t = &x * &x - &m;
            if !(&t % &dd).is_zero() {
                continue;
            }
            let Some(y) = exact_isqrt(&(t / &dd)) else { continue };
            for y in [y.clone(), -y] {
                let cand = (x.clone(), y);
                if pair_pow(&cand, q, &dd) == target {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// Solve `(X + Y sqrt(d))^q = a + b sqrt(d)` over the integers, `d < 0`,
/// by walking the lattice points of the ellipse `X^2 + |d| Y^2 = m`.
fn int_root_imag(a: &BigInt, b: &BigInt, d: i64, q: u32) -> Option<IntPair> {
    let dd = BigInt::from(d);
    let ad = BigInt::from(-d);
    let norm = a * a - b * b * &dd;
    let m = exact_nth_root(&norm, q)?;
    let target = (a.clone(), b.clone());
    let check = |x: BigInt, y: BigInt| -> Option<IntPair> {
        for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let cand = (&x * sx, &y * sy);
            if pair_pow(&cand, q, &dd) == target {
                return Some(cand);
            }
        }
        None
    };
    let xmax = m.sqrt();
    let ymax = (&m / &ad).sqrt();
    if ymax <= xmax {
        let ymax = ymax.to_u64().expect("root search range too large");
        for y in 0..=ymax {
            let y = BigInt::from(y);
            let t = &m - &ad * &y * &y;
            if let Some(x) = exact_isqrt(&t) {
                if let Some(found) = check(x, y) {
                    return Some(found);
                }
            }
        }
    } else {
        let xmax = xmax.to_u64().expect("root search range too large");
        for x in 0..=xmax {
            let x = BigInt::from(x);
            let t = &m - &x * &x;
            if !(&t % &ad).is_zero() {
                continue;
            }
            if let Some(y) = exact_isqrt(&(t / &ad)) {
                if let Some(found) = check(x, y) {
                    return Some(found);
                }
            }
        }
    }
    None
}

/// Some `delta` in the field with `delta^q == beta`, if one exists.
///
/// Any such root has coordinates in `Z / (2c)` where `c` is the common
/// denominator of `beta`, so the search runs over `Z[sqrt(d)]` after
/// scaling; every candidate is checked exactly before it is returned. For
/// real fields with even `q` the root with positive real value is returned.
pub fn qth_root_in_k(beta: &QElem, q: u32) -> Option<QElem> {
    assert!(q >= 2, "root degree must be at least 2");
    let field = beta.field;
    if beta.is_zero() {
        return Some(beta.clone());
    }
    let c = beta.x.denom().lcm(beta.y.denom());
    let scale: BigInt = c * 2u32;
    let scale_q = scale.pow(q);
    let a = (&beta.x * &scale_q).to_integer();
    let b = (&beta.y * &scale_q).to_integer();
    let root = if field.is_real() {
        int_root_real(&a, &b, field.d, q)
    } else {
        int_root_imag(&a, &b, field.d, q)
    }?;
    let inv_scale = BigRational::new(BigInt::one(), scale);
    Some(QElem::new(
        BigRational::from_integer(root.0) * &inv_scale,
        BigRational::from_integer(root.1) * &inv_scale,
        field,
    ))
}

pub fn is_square_in_k(beta: &QElem) -> bool {
    qth_root_in_k(beta, 2).is_some()
}

/// Whether `gamma` is a root of unity. Quadratic fields only contain roots
/// of unity of order dividing 4 or 6.
pub fn is_root_of_unity(gamma: &QElem) -> bool {
    !gamma.is_zero() && gamma.pow(12) == QElem::one(gamma.field)
}

/// `gamma = s * gamma0^h` with `gamma0` not a perfect power in the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaDecomposition {
    pub s: i8,
    pub h: u64,
    pub gamma0: QElem,
}

impl GammaDecomposition {
    pub fn reconstruct(&self) -> QElem {
        let p = self.gamma0.pow(self.h);
        if self.s < 0 {
            -p
        } else {
            p
        }
    }
}

/// Upper bound on prime exponents worth testing for an element of the
/// given height.
pub fn root_degree_bound(elem: &QElem) -> u32 {
    2 * elem.height().bits() as u32 + 2
}

fn primes_up_to(n: u32) -> impl Iterator<Item = u32> {
    (2..=n).filter(|&k| (2..k).take_while(|j| j * j <= k).all(|j| k % j != 0))
}

/// Split off the largest perfect power from a non-torsion element of norm +-1.
///
/// The base is normalized so that its first nonzero coordinate is positive.
pub fn gamma_decompose(gamma: &QElem) -> Result<GammaDecomposition> {
    if !gamma.norm().abs().is_one() {
        return Err(Error::InvalidArgument(format!("{gamma} does not have norm +-1")));
    }
    if is_root_of_unity(gamma) {
        return Err(Error::Degenerate);
    }
    let mut s: i8 = 1;
    let mut h: u64 = 1;
    let mut base = gamma.clone();
    'outer: loop {
        for q in primes_up_to(root_degree_bound(&base)) {
            if let Some(r) = qth_root_in_k(&base, q) {
                base = r;
                h *= u64::from(q);
                continue 'outer;
            }
            if let Some(r) = qth_root_in_k(&-&base, q) {
                // base = -r^q, so s base^h = s (-1)^h r^(qh)
                if h % 2 == 1 {
                    s = -s;
                }
                base = r;
                h *= u64::from(q);
                continue 'outer;
            }
        }
        break;
    }
    if base.leading_sign() < 0 {
        base = -base;
        if h % 2 == 1 {
            s = -s;
        }
    }
    Ok(GammaDecomposition { s, h, gamma0: base })
}
