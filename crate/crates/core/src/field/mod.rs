//! Exact fields: the rationals, prime fields and their extensions.
//!
//! Elements are plain values; the field object carries the context
//! (characteristic, defining polynomial) needed to combine them.

pub mod dense;

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::poly;

pub trait Field {
    type Elem: Clone + PartialEq + Eq + Ord + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `a` must be nonzero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn size(&self) -> Option<BigUint>;
    fn random(&self, rng: &mut ChaCha8Rng) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn size(&self) -> Option<BigUint> {
        None
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> BigRational {
        BigRational::from_integer(BigInt::from(rng.gen_range(-50i64..=50)))
    }
}

/// The prime field `F_p` with `u64` representatives in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(crate::linalg::is_prime(p));
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut b = a % self.p;
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn lift_symmetric(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(*a, self.p - 2)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a % self.p == 0
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn size(&self) -> Option<BigUint> {
        Some(BigUint::from(self.p))
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.gen_range(0..self.p)
    }
}

/// `F_{p^r} = F_p[x]/(g)` for a fixed monic irreducible `g` of degree `r`.
/// Elements are coefficient vectors of length `r`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionField {
    base: PrimeField,
    /// Monic, lowest degree first, length `r + 1`.
    modulus: Vec<u64>,
}

impl ExtensionField {
    /// The extension defined by the canonical modulus: the first monic
    /// irreducible of degree `r` when coefficient tuples `(c_0, …, c_{r-1})`
    /// are enumerated as base-`p` integers `Σ c_i p^i`.
    pub fn canonical(p: u64, r: usize) -> Self {
        assert!(r >= 1);
        let base = PrimeField::new(p);
        let mut k: u128 = 0;
        loop {
            let mut coeffs = Vec::with_capacity(r + 1);
            let mut t = k;
            for _ in 0..r {
                coeffs.push((t % p as u128) as u64);
                t /= p as u128;
            }
            coeffs.push(1);
            if poly::finite::is_irreducible(&base, &coeffs) {
                return ExtensionField { base, modulus: coeffs };
            }
            k += 1;
        }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn prime(&self) -> u64 {
        self.base.modulus()
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The class of `x`, a generator of the extension over `F_p` (when `r > 1`).
    pub fn generator(&self) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        if self.degree() > 1 {
            v[1] = 1;
        } else {
            // F_p[x]/(x - c): x is the constant c
            v[0] = self.base.neg(&self.modulus[0]);
        }
        v
    }

    pub fn from_base(&self, a: u64) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = a % self.prime();
        v
    }

    /// `Some(a)` if the element lies in the prime field.
    pub fn to_base(&self, e: &[u64]) -> Option<u64> {
        if e[1..].iter().all(|&c| c == 0) {
            Some(e[0])
        } else {
            None
        }
    }

    fn reduce(&self, mut prod: Vec<u64>) -> Vec<u64> {
        let r = self.degree();
        let p = &self.base;
        while prod.len() > r {
            let top = prod.pop().unwrap();
            if top != 0 {
                let base = prod.len() - r;
                for (i, &m) in self.modulus[..r].iter().enumerate() {
                    prod[base + i] = p.sub(&prod[base + i], &p.mul(&top, &m));
                }
            }
        }
        prod.resize(r, 0);
        prod
    }
}

impl Field for ExtensionField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        self.from_base(1)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let r = self.degree();
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = self.base.add(&prod[i + j], &self.base.mul(x, y));
            }
        }
        self.reduce(prod)
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn inv(&self, a: &Vec<u64>) -> Vec<u64> {
        // extended Euclid in F_p[x] against the modulus
        let f = &self.base;
        let a_poly = poly::trim(f, a.clone());
        assert!(!a_poly.is_empty(), "inverse of zero in F_(p^r)");
        let (g, s, _) = poly::ext_gcd(f, &a_poly, &self.modulus);
        debug_assert_eq!(g, vec![1]);
        let mut s = poly::rem(f, &s, &self.modulus);
        s.resize(self.degree(), 0);
        s
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&x| x == 0)
    }
    fn from_int(&self, n: &BigInt) -> Vec<u64> {
        self.from_base(self.base.from_int(n))
    }
    fn characteristic(&self) -> u64 {
        self.prime()
    }
    fn size(&self) -> Option<BigUint> {
        Some(BigUint::from(self.prime()).pow(self.degree() as u32))
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> Vec<u64> {
        (0..self.degree()).map(|_| self.base.random(rng)).collect()
    }
}

/// Size of the field as `Some(q)` when it fits in a `u64`.
pub fn small_size<F: Field>(f: &F) -> Option<u64> {
    f.size().and_then(|s| s.to_u64())
}

/// Enumerates every element of a finite field whose size fits in memory.
pub fn elements_of_extension(f: &ExtensionField) -> impl Iterator<Item = Vec<u64>> + '_ {
    let p = f.prime();
    let r = f.degree();
    let q = p.pow(r as u32);
    (0..q).map(move |mut k| {
        let mut v = Vec::with_capacity(r);
        for _ in 0..r {
            v.push(k % p);
            k /= p;
        }
        v
    })
}

/// A BigUint power of an element by square-and-multiply.
pub fn pow<F: Field>(f: &F, a: &F::Elem, e: &BigUint) -> F::Elem {
    let mut r = f.one();
    let bits = e.bits();
    for i in (0..bits).rev() {
        r = f.mul(&r, &r);
        if e.bit(i) {
            r = f.mul(&r, a);
        }
    }
    r
}

pub(crate) fn is_odd_size<F: Field>(f: &F) -> bool {
    f.size().map(|s| s.is_odd()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), 5);
        assert_eq!(f.from_int(&BigInt::from(-1)), 6);
        assert_eq!(f.lift_symmetric(6), -1);
    }

    #[test]
    fn canonical_quadratic_extension_of_f2() {
        // x^2 + x + 1 is the only irreducible quadratic over F_2
        let f = ExtensionField::canonical(2, 2);
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let x = f.generator();
        let x3 = f.mul(&f.mul(&x, &x), &x);
        assert_eq!(x3, f.one());
    }

    #[test]
    fn extension_inverse_round_trip() {
        let f = ExtensionField::canonical(5, 3);
        let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(1);
        for _ in 0..20 {
            let a = f.random(&mut rng);
            if f.is_zero(&a) {
                continue;
            }
            assert_eq!(f.mul(&a, &f.inv(&a)), f.one());
        }
    }

    #[test]
    fn frobenius_has_order_r() {
        let f = ExtensionField::canonical(3, 4);
        let x = f.generator();
        let q = f.size().unwrap();
        assert_eq!(pow(&f, &x, &q), x);
        assert_ne!(pow(&f, &x, &BigUint::from(9u32)), x);
    }

    #[test]
    fn degree_one_extension_is_the_prime_field() {
        let f = ExtensionField::canonical(7, 1);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.mul(&vec![3], &vec![5]), vec![1]);
    }
}
