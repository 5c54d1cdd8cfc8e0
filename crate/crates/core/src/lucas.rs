//! Lucas sequences modulo primes: rank and index of appearance.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::numtheory::{fundamental_discriminant_i64, is_perfect_square, legendre, SpfTable};
use crate::quadfield::{QElem, QField};

/// Largest accepted `|a1|`, `|a2|`; keeps `D_u` and the residues in range.
pub const MAX_COEFFICIENT: i64 = 1 << 28;

/// Coefficients of `u_n = a1 u_{n-1} + a2 u_{n-2}` together with the data
/// derived from them.
///
/// Only sequences usable by the density formulas can be constructed:
/// nonzero coefficients, nonsquare `D_u`, nondegenerate, and field
/// discriminant other than -3 and -4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LucasParams {
    a1: i64,
    a2: i64,
    discriminant: i64,
    field: QField,
}

/// Which validity conditions a coefficient pair satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamFlags {
    pub nonzero: bool,
    pub d_nonsquare: bool,
    pub nondegenerate: bool,
    pub disc_supported: bool,
}

impl ParamFlags {
    pub fn all(&self) -> bool {
        self.nonzero && self.d_nonsquare && self.nondegenerate && self.disc_supported
    }
}

/// `gamma + 1/gamma = (a1^2 + 2 a2) / (-a2)`; for an element of norm 1 this
/// trace lies in {0, +-1, +-2} exactly when it is a root of unity.
fn trace_is_torsion(a1: i64, a2: i64) -> bool {
    let num = i128::from(a1) * i128::from(a1) + 2 * i128::from(a2);
    let den = -i128::from(a2);
    (-2..=2).any(|k| num == k * den)
}

impl LucasParams {
    pub fn flags(a1: i64, a2: i64) -> ParamFlags {
        let nonzero = a1 != 0 && a2 != 0;
        let d = i128::from(a1) * i128::from(a1) + 4 * i128::from(a2);
        let d_nonsquare = !is_perfect_square(&BigInt::from(d));
        let nondegenerate = nonzero && !trace_is_torsion(a1, a2);
        let disc_supported = d_nonsquare
            && i64::try_from(d).is_ok_and(|d| !matches!(fundamental_discriminant_i64(d), -3 | -4));
        ParamFlags { nonzero, d_nonsquare, nondegenerate, disc_supported }
    }

    pub fn new(a1: i64, a2: i64) -> Result<Self> {
        if a1 == 0 || a2 == 0 {
            return Err(Error::ZeroCoefficient { a1, a2 });
        }
        if a1.abs() > MAX_COEFFICIENT || a2.abs() > MAX_COEFFICIENT {
            return Err(Error::CoefficientTooLarge(MAX_COEFFICIENT));
        }
        let discriminant = a1 * a1 + 4 * a2;
        if is_perfect_square(&BigInt::from(discriminant)) {
            return Err(Error::SquareDiscriminant(discriminant));
        }
        if trace_is_torsion(a1, a2) {
            return Err(Error::Degenerate);
        }
        let field = QField::from_radicand(discriminant);
        if matches!(field.disc(), -3 | -4) {
            return Err(Error::UnsupportedDiscriminant(field.disc()));
        }
        Ok(LucasParams { a1, a2, discriminant, field })
    }

    pub fn a1(&self) -> i64 {
        self.a1
    }

    pub fn a2(&self) -> i64 {
        self.a2
    }

    /// `D_u = a1^2 + 4 a2`.
    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    /// `K = Q(sqrt(D_u))`.
    pub fn field(&self) -> QField {
        self.field
    }

    /// `alpha = (a1 + sqrt(D_u)) / 2`, with positive `sqrt(d)` coordinate.
    pub fn alpha(&self) -> QElem {
        characteristic_root(self.a1, self.a2)
    }

    /// `gamma = alpha / beta = alpha^2 / (-a2)`.
    pub fn gamma(&self) -> QElem {
        root_ratio(self.a1, self.a2)
    }

    /// Whether `p` divides `2 a2 D_u`.
    pub fn is_excluded(&self, p: u64) -> bool {
        let p = i128::from(p);
        p == 2 || i128::from(self.a2) % p == 0 || i128::from(self.discriminant) % p == 0
    }

    /// `(D_u | p)`.
    pub fn legendre_d(&self, p: u64) -> i8 {
        legendre(self.discriminant, p)
    }
}

/// `(a1 + sqrt(D)) / 2` for nonsquare `D = a1^2 + 4 a2`.
pub(crate) fn characteristic_root(a1: i64, a2: i64) -> QElem {
    let disc = a1 * a1 + 4 * a2;
    let field = QField::from_radicand(disc);
    let f = BigInt::from(disc / field.d()).sqrt();
    QElem::new(BigRational::new(a1.into(), 2.into()), BigRational::new(f, 2.into()), field)
}

pub(crate) fn root_ratio(a1: i64, a2: i64) -> QElem {
    let a = characteristic_root(a1, a2);
    (&a * &a).scale(&BigRational::new(1.into(), (-a2).into()))
}

fn residue(a: i64, p: u64) -> u64 {
    i128::from(a).rem_euclid(i128::from(p)) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(p)) as u64
}

/// `u_n mod p`.
///
/// Squares the companion matrix `[[a1, a2], [1, 0]]`, tracking only the
/// pair `(u_k, u_{k+1})`:
/// `u_{2k} = u_k (2 u_{k+1} - a1 u_k)` and `u_{2k+1} = u_{k+1}^2 + a2 u_k^2`.
pub fn u_mod(n: u64, p: u64, params: &LucasParams) -> u64 {
    assert!(p >= 2);
    let a1 = residue(params.a1, p);
    let a2 = residue(params.a2, p);
    let (mut uk, mut uk1) = (0u64, 1 % p);
    for bit in (0..u64::BITS - n.leading_zeros()).rev() {
        let two_uk1 = (2 * u128::from(uk1) % u128::from(p)) as u64;
        let inner = (two_uk1 + p - mulmod(a1, uk, p)) % p;
        let u2k = mulmod(uk, inner, p);
        let u2k1 = (mulmod(uk1, uk1, p) + mulmod(a2, mulmod(uk, uk, p), p)) % p;
        if (n >> bit) & 1 == 1 {
            let u2k2 = (mulmod(a1, u2k1, p) + mulmod(a2, u2k, p)) % p;
            uk = u2k1;
            uk1 = u2k2;
        } else {
            uk = u2k;
            uk1 = u2k1;
        }
    }
    uk
}

fn check_prime(p: u64, params: &LucasParams, spf: &SpfTable) -> Result<()> {
    if p + 1 > spf.limit() {
        return Err(Error::InvalidArgument(format!(
            "prime {p} too large for sieve limit {}",
            spf.limit()
        )));
    }
    if !spf.is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if params.is_excluded(p) {
        return Err(Error::ExcludedPrime { p });
    }
    Ok(())
}

/// Smallest `k >= 1` with `p | u_k`, for a prime `p` not dividing `2 a2 D_u`.
///
/// Starts from `p - (D_u|p)`, which the rank divides, and strips prime
/// factors as long as the quotient is still a zero of the sequence.
pub fn rank_of_appearance(p: u64, params: &LucasParams, spf: &SpfTable) -> Result<u64> {
    check_prime(p, params, spf)?;
    Ok(rank_unchecked(p, params, spf))
}

pub(crate) fn rank_unchecked(p: u64, params: &LucasParams, spf: &SpfTable) -> u64 {
    let eps = params.legendre_d(p);
    let mut m = if eps > 0 { p - 1 } else { p + 1 };
    for q in spf.factorize(m).primes() {
        while m % q == 0 && u_mod(m / q, p, params) == 0 {
            m /= q;
        }
    }
    m
}

/// `(p - (D_u|p)) / rho(p)`.
pub fn index_of_appearance(p: u64, params: &LucasParams, spf: &SpfTable) -> Result<u64> {
    check_prime(p, params, spf)?;
    Ok(index_unchecked(p, params, spf))
}

pub(crate) fn index_unchecked(p: u64, params: &LucasParams, spf: &SpfTable) -> u64 {
    let m = if params.legendre_d(p) > 0 { p - 1 } else { p + 1 };
    m / rank_unchecked(p, params, spf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::build_spf;
    use crate::quadfield::is_root_of_unity;
    use proptest::prelude::*;

    fn fib() -> LucasParams {
        LucasParams::new(1, 1).unwrap()
    }

    fn naive_u(n: u64, p: u64, params: &LucasParams) -> u64 {
        let (a1, a2) = (residue(params.a1(), p), residue(params.a2(), p));
        let (mut u0, mut u1) = (0u64, 1 % p);
        for _ in 0..n {
            let next = (mulmod(a1, u1, p) + mulmod(a2, u0, p)) % p;
            u0 = u1;
            u1 = next;
        }
        u0
    }

    fn brute_rank(p: u64, params: &LucasParams) -> u64 {
        (1..).find(|&k| naive_u(k, p, params) == 0).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(LucasParams::new(0, 1), Err(Error::ZeroCoefficient { a1: 0, a2: 1 }));
        assert_eq!(LucasParams::new(2, -1), Err(Error::SquareDiscriminant(0)));
        assert_eq!(LucasParams::new(1, 2), Err(Error::SquareDiscriminant(9)));
        assert_eq!(LucasParams::new(1, -1), Err(Error::Degenerate));
        assert_eq!(LucasParams::new(2, -2), Err(Error::Degenerate));
        assert_eq!(LucasParams::new(2, -5), Err(Error::UnsupportedDiscriminant(-4)));
        assert_eq!(LucasParams::new(1, -7), Err(Error::UnsupportedDiscriminant(-3)));
        assert_eq!(LucasParams::new(3, -3), Err(Error::Degenerate));
        let p = LucasParams::new(10, 2).unwrap();
        assert_eq!(p.discriminant(), 108);
        assert_eq!(p.field().disc(), 12);
        assert!(LucasParams::new(1, -2).is_ok());
    }

    #[test]
    fn degeneracy_trace_test_matches_torsion() {
        for a1 in -12i64..=12 {
            for a2 in -12i64..=12 {
                let flags = LucasParams::flags(a1, a2);
                if !flags.nonzero || !flags.d_nonsquare {
                    continue;
                }
                let gamma = root_ratio(a1, a2);
                assert_eq!(flags.nondegenerate, !is_root_of_unity(&gamma), "({a1}, {a2})");
            }
        }
    }

    #[test]
    fn gamma_of_examples() {
        let q5 = fib().field();
        assert_eq!(
            fib().gamma(),
            QElem::new(BigRational::new((-3).into(), 2.into()), BigRational::new((-1).into(), 2.into()), q5)
        );
        let p = LucasParams::new(4, -1).unwrap();
        assert_eq!(p.gamma(), QElem::from_ints(7, 4, p.field()));
        let p = LucasParams::new(10, 2).unwrap();
        assert_eq!(p.gamma(), QElem::from_ints(-26, -15, p.field()));
        for (a1, a2) in [(1, 1), (4, -1), (10, 2), (1, -2), (3, 5)] {
            assert_eq!(LucasParams::new(a1, a2).unwrap().gamma().norm(), BigRational::from_integer(1.into()));
        }
    }

    #[test]
    fn u_mod_examples() {
        assert_eq!(u_mod(10, 11, &fib()), 0);
        assert_eq!(u_mod(8, 7, &fib()), 0);
        assert_eq!(u_mod(0, 13, &fib()), 0);
        assert_eq!(u_mod(1, 13, &fib()), 1);
        assert_eq!(u_mod(14, 1000, &fib()), 377);
    }

    #[test]
    fn rank_and_index_examples() {
        let spf = build_spf(2000).unwrap();
        let f = fib();
        assert_eq!(rank_of_appearance(11, &f, &spf), Ok(10));
        assert_eq!(rank_of_appearance(7, &f, &spf), Ok(8));
        assert_eq!(rank_of_appearance(29, &f, &spf), Ok(14));
        assert_eq!(index_of_appearance(11, &f, &spf), Ok(1));
        assert_eq!(index_of_appearance(29, &f, &spf), Ok(2));
        assert_eq!(index_of_appearance(7, &f, &spf), Ok(1));
        assert_eq!(rank_of_appearance(5, &f, &spf), Err(Error::ExcludedPrime { p: 5 }));
        assert_eq!(rank_of_appearance(2, &f, &spf), Err(Error::ExcludedPrime { p: 2 }));
        assert!(matches!(rank_of_appearance(9, &f, &spf), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn divisibility_law_for_small_primes() {
        let spf = build_spf(2000).unwrap();
        for (a1, a2) in [(1, 1), (4, -1), (10, 2), (1, -2), (3, 5), (-7, 3)] {
            let params = LucasParams::new(a1, a2).unwrap();
            for p in spf.primes().take_while(|&p| p <= 1000).filter(|&p| !params.is_excluded(p)) {
                let rho = rank_of_appearance(p, &params, &spf).unwrap();
                assert_eq!(rho, brute_rank(p, &params), "({a1},{a2}) p={p}");
                let eps = params.legendre_d(p);
                assert_eq!((p as i64 - i64::from(eps)) % rho as i64, 0);
                let (a1r, a2r) = (residue(a1, p), residue(a2, p));
                let (mut u0, mut u1) = (0u64, 1u64);
                for k in 0..=3 * (p + 1) {
                    assert_eq!(u0 == 0, k % rho == 0, "({a1},{a2}) p={p} k={k}");
                    let next = (mulmod(a1r, u1, p) + mulmod(a2r, u0, p)) % p;
                    u0 = u1;
                    u1 = next;
                }
            }
        }
    }

    proptest! {
        #[test]
        fn u_mod_matches_recurrence(n in 0u64..1000, p_idx in 0usize..150, a1 in -20i64..20, a2 in -20i64..20) {
            prop_assume!(LucasParams::new(a1, a2).is_ok());
            let params = LucasParams::new(a1, a2).unwrap();
            let spf = build_spf(1000).unwrap();
            let primes: Vec<u64> = spf.primes().collect();
            let p = primes[p_idx % primes.len()];
            prop_assert_eq!(u_mod(n, p, &params), naive_u(n, p, &params));
        }
    }
}
