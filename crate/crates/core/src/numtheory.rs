//! Elementary arithmetic: smallest-prime-factor sieve, factorization,
//! multiplicative functions, quadratic residue symbols and square classes.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Smallest prime factor for every integer in `2..=limit`.
///
/// Immutable once built; share it freely between threads.
#[derive(Clone, Debug)]
pub struct SpfTable {
    limit: u64,
    spf: Vec<u32>,
}

/// Largest sieve we are willing to allocate (one `u32` per integer).
pub const MAX_SIEVE_LIMIT: u64 = u32::MAX as u64 - 1;

/// Sieve the smallest prime factor of every `n <= limit`.
pub fn build_spf(limit: u64) -> Result<SpfTable> {
    if limit < 2 {
        return Err(Error::InvalidArgument(format!("sieve limit must be at least 2 (got {limit})")));
    }
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::Resource(format!("sieve limit {limit} exceeds {MAX_SIEVE_LIMIT}")));
    }
    let len = limit as usize + 1;
    let mut spf: Vec<u32> = Vec::new();
    spf.try_reserve_exact(len)
        .map_err(|e| Error::Resource(format!("cannot allocate sieve of {len} entries: {e}")))?;
    spf.resize(len, 0);
    spf[1] = 1;
    let mut i = 2usize;
    while i < len {
        if spf[i] == 0 {
            spf[i] = i as u32;
            if let Some(start) = i.checked_mul(i) {
                let mut j = start;
                while j < len {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        i += 1;
    }
    Ok(SpfTable { limit, spf })
}

impl SpfTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Smallest prime factor of `n`, for `2 <= n <= limit`.
    pub fn spf(&self, n: u64) -> u64 {
        assert!((2..=self.limit).contains(&n), "{n} outside sieve range 2..={}", self.limit);
        u64::from(self.spf[n as usize])
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.spf(n) == n
    }

    /// All primes up to the limit, in increasing order.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (2..=self.limit).filter(move |&n| self.spf[n as usize] as u64 == n)
    }

    /// Factor `n` with `1 <= n <= limit` by repeated lookups.
    pub fn factorize(&self, n: u64) -> Factorization {
        assert!(n >= 1 && n <= self.limit, "{n} outside factorization range 1..={}", self.limit);
        let mut out = Vec::new();
        let mut m = n;
        while m > 1 {
            let p = u64::from(self.spf[m as usize]);
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        Factorization(out)
    }
}

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing primes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization(pub Vec<(u64, u32)>);

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn product(&self) -> u64 {
        self.0.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

/// Factor by trial division. Intended for the small moduli that show up in
/// the density formulas, not for sieve-range work.
pub fn trial_factorize(mut n: u64) -> Factorization {
    assert!(n >= 1, "cannot factor 0");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Factorization(out)
}

pub fn euler_phi(n: u64) -> u64 {
    trial_factorize(n)
        .pairs()
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

pub fn moebius(n: u64) -> i8 {
    let f = trial_factorize(n);
    if f.pairs().iter().any(|&(_, e)| e > 1) {
        0
    } else if f.pairs().len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// p-adic valuation of `n >= 1`.
pub fn nu(p: u64, mut n: u64) -> u32 {
    assert!(p >= 2 && n >= 1);
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

pub fn is_squarefree(n: u64) -> bool {
    moebius(n) != 0
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, e) in trial_factorize(n).pairs() {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Legendre symbol `(a | p)` for an odd prime `p`.
///
/// Evaluated with the Jacobi reciprocity chain, so primality of `p` is the
/// caller's obligation; even `p` panics.
pub fn legendre(a: i64, p: u64) -> i8 {
    assert!(p > 2 && p % 2 == 1, "legendre symbol needs an odd prime, got {p}");
    let mut a = (i128::from(a).rem_euclid(i128::from(p))) as u64;
    let mut n = p;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Squarefree `d` with `m / d` a positive square.
pub fn squarefree_part(m: &BigInt) -> BigInt {
    assert!(!m.is_zero(), "squarefree part of 0 is undefined");
    let sign = m.sign();
    let mut n = m.magnitude().clone();
    let mut d = num_bigint::BigUint::one();
    if let Some(small) = n.to_u64() {
        for (p, e) in trial_factorize(small).0 {
            if e % 2 == 1 {
                d *= p;
            }
        }
    } else {
        let mut p = num_bigint::BigUint::from(2u32);
        while &p * &p <= n {
            let mut e = 0u32;
            while (&n % &p).is_zero() {
                n /= &p;
                e += 1;
            }
            if e % 2 == 1 {
                d *= &p;
            }
            p += 1u32;
        }
        d *= n;
    }
    BigInt::from_biguint(if sign == Sign::Minus { Sign::Minus } else { Sign::Plus }, d)
}

pub fn squarefree_part_i64(m: i64) -> i64 {
    squarefree_part(&BigInt::from(m)).to_i64().expect("squarefree part fits")
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

/// Discriminant of `Q(sqrt(m))`: `d` when `d = 1 (mod 4)`, else `4d`.
pub fn fundamental_discriminant(m: &BigInt) -> BigInt {
    assert!(!is_perfect_square(m) && !m.is_zero(), "Q(sqrt({m})) is not a quadratic field");
    let d = squarefree_part(m);
    if d.mod_floor(&BigInt::from(4)) == BigInt::one() {
        d
    } else {
        d * 4
    }
}

pub fn fundamental_discriminant_i64(m: i64) -> i64 {
    fundamental_discriminant(&BigInt::from(m)).to_i64().expect("discriminant fits")
}

/// Nonnegative square root of a rational square.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

/// Squarefree integer `m` with `r / m` a positive rational square.
pub fn rational_square_class(r: &BigRational) -> BigInt {
    squarefree_part(&(r.numer() * r.denom()))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    #[test]
    fn spf_small_values() {
        let t = build_spf(10).unwrap();
        assert_eq!(t.spf(9), 3);
        assert_eq!(t.spf(7), 7);
        assert_eq!(t.spf(10), 2);
        assert_eq!(t.primes().collect::<Vec<_>>(), vec![2, 3, 5, 7]);
    }

    #[test]
    fn spf_rejects_bad_limits() {
        assert!(matches!(build_spf(1), Err(Error::InvalidArgument(_))));
        assert!(matches!(build_spf(u64::MAX), Err(Error::Resource(_))));
    }

    #[test]
    fn millionth_prime_is_prime_in_sieve() {
        let t = build_spf(16_000_000).unwrap();
        assert_eq!(t.spf(15_485_863), 15_485_863);
        assert_eq!(t.primes().nth(999_999), Some(15_485_863));
    }

    #[test]
    fn factorize_examples() {
        let t = build_spf(16_000_000).unwrap();
        assert_eq!(t.factorize(12), Factorization(vec![(2, 2), (3, 1)]));
        assert_eq!(t.factorize(1), Factorization(vec![]));
        // trial division: 15485862 = 2 * 3 * 7^2 * 52673
        let expected = trial_factorize(15_485_862);
        assert_eq!(expected, Factorization(vec![(2, 1), (3, 1), (7, 2), (52673, 1)]));
        assert_eq!(t.factorize(15_485_862), expected);
    }

    #[test]
    #[should_panic]
    fn factorize_out_of_range_panics() {
        build_spf(10).unwrap().factorize(11);
    }

    #[test]
    fn factorizations_reconstruct() {
        let t = build_spf(10_000).unwrap();
        for n in 1..=10_000 {
            let f = t.factorize(n);
            assert_eq!(f.product(), n);
            assert!(f.pairs().windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.pairs().iter().all(|&(p, e)| e >= 1 && t.is_prime(p)));
            assert_eq!(f, trial_factorize(n));
        }
    }

    #[test]
    fn arithmetic_function_examples() {
        assert_eq!(euler_phi(20), 8);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(moebius(20), 0);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(1), 1);
        assert_eq!(nu(2, 24), 3);
        assert_eq!(nu(5, 24), 0);
        assert_eq!(divisors(24), vec![1, 2, 3, 4, 6, 8, 12, 24]);
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(5, 11), 1);
        assert_eq!(legendre(5, 7), -1);
        assert_eq!(legendre(14, 7), 0);
        assert_eq!(legendre(-1, 13), 1);
        assert_eq!(legendre(-1, 7), -1);
    }

    #[test]
    #[should_panic]
    fn legendre_rejects_two() {
        legendre(3, 2);
    }

    #[test]
    fn squarefree_and_discriminant_examples() {
        assert_eq!(squarefree_part(&big(12)), big(3));
        assert_eq!(squarefree_part(&big(-18)), big(-2));
        assert_eq!(squarefree_part(&big(5)), big(5));
        assert_eq!(fundamental_discriminant(&big(5)), big(5));
        assert_eq!(fundamental_discriminant(&big(12)), big(12));
        assert_eq!(fundamental_discriminant(&big(-1)), big(-4));
        assert_eq!(fundamental_discriminant(&big(108)), big(12));
        assert_eq!(fundamental_discriminant(&big(-7)), big(-7));
    }

    #[test]
    fn squarefree_part_large_input() {
        // 2^70 * 3 has squarefree part 3; exercises the BigUint path.
        let m = (BigInt::one() << 70u32) * 3;
        assert_eq!(squarefree_part(&m), big(3));
    }

    #[test]
    #[should_panic]
    fn discriminant_of_square_panics() {
        fundamental_discriminant(&big(9));
    }

    #[test]
    fn rational_sqrt_examples() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(0, 1)), Some(rat(0, 1)));
        assert_eq!(rational_sqrt(&rat(-4, 1)), None);
    }

    fn small_primes() -> Vec<u64> {
        build_spf(1000).unwrap().primes().filter(|&p| p > 2).collect()
    }

    proptest! {
        #[test]
        fn phi_and_mu_are_multiplicative(n in 1u64..1000, m in 1u64..1000) {
            prop_assume!(gcd(n, m) == 1);
            prop_assert_eq!(euler_phi(n * m), euler_phi(n) * euler_phi(m));
            prop_assert_eq!(moebius(n * m), moebius(n) * moebius(m));
        }

        #[test]
        fn legendre_matches_euler_criterion(a in -2000i64..2000, idx in 0usize..160) {
            let primes = small_primes();
            let p = primes[idx % primes.len()];
            let r = num_bigint::BigUint::from(a.rem_euclid(p as i64) as u64)
                .modpow(&num_bigint::BigUint::from((p - 1) / 2), &num_bigint::BigUint::from(p))
                .to_u64()
                .unwrap();
            let expected = if r == 0 { 0 } else if r == 1 { 1 } else { -1 };
            prop_assert_eq!(legendre(a, p), expected);
        }

        #[test]
        fn discriminant_is_zero_or_one_mod_four(m in -5000i64..5000) {
            let m = big(m);
            prop_assume!(!m.is_zero() && !is_perfect_square(&m));
            let disc = fundamental_discriminant(&m);
            let r = disc.mod_floor(&big(4));
            prop_assert!(r.is_zero() || r.is_one());
        }

        #[test]
        fn rational_sqrt_squares_back(n in 0i64..10_000, d in 1i64..10_000) {
            let r = rat(n, d);
            if let Some(s) = rational_sqrt(&r) {
                prop_assert!(!s.is_negative());
                prop_assert_eq!(&s * &s, r.clone());
            }
            let sq = &r * &r;
            prop_assert_eq!(rational_sqrt(&sq), Some(r));
        }
    }
}
