use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// p-adic valuation. Zero has valuation `Infinite`, never an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_positive(self) -> bool {
        match self {
            Valuation::Finite(v) => v > 0,
            Valuation::Infinite => true,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    let mut v = 0;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Exact p-adic valuation of a rational number.
pub fn valuation(n: &BigRational, p: u64) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if n.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let pb = BigInt::from(p);
    Ok(Valuation::Finite(int_valuation(n.numer(), &pb) - int_valuation(n.denom(), &pb)))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for d in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == d {
            return true;
        }
        if n % d == 0 {
            return false;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization `[(p, e)]` of `|n|` by trial division followed by
/// Pollard rho on the cofactor. `n` must be nonzero.
pub fn factor_integer(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.abs();
    if m.is_zero() {
        return out;
    }
    let push = |p: BigInt, out: &mut Vec<(BigInt, u32)>| match out.iter_mut().find(|(q, _)| *q == p) {
        Some(e) => e.1 += 1,
        None => out.push((p, 1)),
    };
    let mut d = 2u64;
    while d < 10_000 {
        let db = BigInt::from(d);
        if &db * &db > m {
            break;
        }
        while m.is_multiple_of(&db) {
            m /= &db;
            push(db.clone(), &mut out);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![m];
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if big_is_prime(&c) {
            push(c, &mut out);
            continue;
        }
        let f = pollard_rho(&c);
        stack.push(&c / &f);
        stack.push(f);
    }
    out.sort();
    out
}

/// Distinct primes dividing `n` (nonzero), ascending.
pub fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    factor_integer(n).into_iter().map(|(p, _)| p).collect()
}

fn big_is_prime(n: &BigInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut g = BigInt::one();
        while g.is_one() {
            x = f(&x);
            y = f(&f(&y));
            g = (&x - &y).abs().gcd(n);
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&q(8), 2).unwrap(), Valuation::Finite(3));
        assert_eq!(valuation(&q(1), 5).unwrap(), Valuation::Finite(0));
        assert_eq!(valuation(&q(2073), 691).unwrap(), Valuation::Finite(1));
        assert_eq!(valuation(&BigRational::new(3.into(), 8.into()), 2).unwrap(), Valuation::Finite(-3));
    }

    #[test]
    fn zero_is_the_infinite_sentinel() {
        let v = valuation(&q(0), 3).unwrap();
        assert_eq!(v, Valuation::Infinite);
        assert_eq!(v.finite(), None);
        assert!(v > Valuation::Finite(1_000_000));
    }

    #[test]
    fn non_prime_rejected() {
        assert!(matches!(valuation(&q(8), 4), Err(Error::NotPrime(_))));
    }

    #[test]
    fn factorization() {
        let f = factor_integer(&BigInt::from(-2073));
        assert_eq!(f, vec![(BigInt::from(3), 1), (BigInt::from(691), 1)]);
        let big = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64) * 4;
        assert_eq!(
            prime_divisors(&big),
            vec![BigInt::from(2), BigInt::from(1_000_003u64), BigInt::from(998_244_353u64)]
        );
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime(998_244_353));
        assert!(!is_prime(561));
    }
}
