//! Factorization and root finding over finite fields (distinct-degree
//! splitting followed by Cantor–Zassenhaus equal-degree splitting).

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{degree, divrem, gcd, monic, mul, powmod, rem, sub, trim, x};
use crate::field::{Field, PrimeField};

fn field_size<F: Field>(f: &F) -> BigUint {
    f.size().expect("finite field required")
}

/// Rabin's irreducibility test for a monic polynomial over `F_p`.
pub fn is_irreducible(f: &PrimeField, g: &[u64]) -> bool {
    let g = trim(f, g.to_vec());
    let Some(r) = degree(f, &g) else { return false };
    if r == 0 {
        return false;
    }
    if r == 1 {
        return true;
    }
    let p = BigUint::from(f.modulus());
    let frob = |k: usize| {
        let mut h = x(f);
        for _ in 0..k {
            h = powmod(f, &h, &p, &g);
        }
        h
    };
    if sub(f, &frob(r), &x(f)).iter().any(|&c| c != 0) {
        return false;
    }
    for s in prime_factors_small(r) {
        let h = sub(f, &frob(r / s), &x(f));
        if degree(f, &gcd(f, &h, &g)) != Some(0) {
            return false;
        }
    }
    true
}

fn prime_factors_small(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Divides out every copy of the factors of `g` from `f`.
fn strip<F: Field>(fld: &F, mut f: Vec<F::Elem>, g: &[F::Elem]) -> Vec<F::Elem> {
    let mut g = g.to_vec();
    while degree(fld, &g).unwrap_or(0) > 0 {
        let (q, r) = divrem(fld, &f, &g);
        debug_assert!(r.is_empty());
        f = q;
        g = gcd(fld, &f, &g);
    }
    f
}

/// For each degree `d`, the product of the distinct monic irreducible factors
/// of `f` of degree `d`. `f` need not be squarefree.
pub fn distinct_degree_split<F: Field>(fld: &F, f: &[F::Elem]) -> Vec<(Vec<F::Elem>, usize)> {
    let q = field_size(fld);
    let mut rest = monic(fld, f);
    let mut out = Vec::new();
    let mut h = x(fld);
    let mut i = 1;
    while degree(fld, &rest).unwrap_or(0) >= 2 * i {
        h = powmod(fld, &h, &q, &rest);
        let g = gcd(fld, &rest, &sub(fld, &h, &x(fld)));
        if degree(fld, &g).unwrap_or(0) > 0 {
            rest = strip(fld, rest, &g);
            h = rem(fld, &h, &rest);
            out.push((g, i));
        }
        i += 1;
    }
    if let Some(d) = degree(fld, &rest) {
        if d > 0 {
            // remaining part is a power of a single irreducible
            let r = radical_of_prime_power(fld, &rest, &mut h, i);
            let dr = degree(fld, &r).unwrap();
            out.push((r, dr));
        }
    }
    out.sort_by_key(|(_, d)| *d);
    out
}

/// `rest` is `g^k` with `g` irreducible of degree ≥ `start`; returns `g`.
fn radical_of_prime_power<F: Field>(
    fld: &F,
    rest: &[F::Elem],
    h: &mut Vec<F::Elem>,
    start: usize,
) -> Vec<F::Elem> {
    let q = field_size(fld);
    let n = degree(fld, rest).unwrap();
    let mut i = start;
    loop {
        if i > n {
            return rest.to_vec();
        }
        *h = powmod(fld, h, &q, rest);
        let g = gcd(fld, rest, &sub(fld, h, &x(fld)));
        if degree(fld, &g).unwrap_or(0) > 0 {
            return g;
        }
        i += 1;
    }
}

/// Splits a squarefree product of irreducibles of common degree `d`.
pub fn equal_degree_split<F: Field>(fld: &F, f: &[F::Elem], d: usize) -> Vec<Vec<F::Elem>> {
    let f = monic(fld, f);
    let n = degree(fld, &f).unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f];
    }
    let q = field_size(fld);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
    let odd = crate::field::is_odd_size(fld);
    let qd = q.pow(d as u32);
    let half = (&qd - BigUint::one()) >> 1;
    loop {
        let b: Vec<F::Elem> = trim(fld, (0..n).map(|_| fld.random(&mut rng)).collect());
        if degree(fld, &b).unwrap_or(0) == 0 {
            continue;
        }
        let c = if odd {
            sub(fld, &powmod(fld, &b, &half, &f), &[fld.one()])
        } else {
            // absolute trace map to F_2 composed over F_{q^d}
            let bits = (qd.bits() - 1) as usize;
            let mut t = rem(fld, &b, &f);
            let mut acc = t.clone();
            for _ in 1..bits {
                t = rem(fld, &mul(fld, &t, &t), &f);
                acc = super::add(fld, &acc, &t);
            }
            acc
        };
        let g = gcd(fld, &f, &c);
        let dg = degree(fld, &g).unwrap_or(0);
        if dg > 0 && dg < n {
            let (h, _) = divrem(fld, &f, &g);
            let mut out = equal_degree_split(fld, &g, d);
            out.extend(equal_degree_split(fld, &h, d));
            out.sort();
            return out;
        }
    }
}

/// Distinct roots of `f` in the field, sorted.
pub fn roots<F: Field>(fld: &F, f: &[F::Elem]) -> Vec<F::Elem> {
    let f = monic(fld, f);
    match degree(fld, &f) {
        None => panic!("roots of the zero polynomial"),
        Some(0) => return Vec::new(),
        _ => {}
    }
    let q = field_size(fld);
    let xq = powmod(fld, &x(fld), &q, &f);
    let g = gcd(fld, &f, &sub(fld, &xq, &x(fld)));
    let mut out: Vec<F::Elem> = equal_degree_split(fld, &g, 1)
        .into_iter()
        .map(|lin| fld.neg(&lin[0]))
        .collect();
    out.sort();
    out
}

/// Complete factorization of a squarefree polynomial into monic irreducibles.
pub fn factor_squarefree<F: Field>(fld: &F, f: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree_split(fld, f) {
        out.extend(equal_degree_split(fld, &g, d));
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Size of `F_p` as `u64`, used for quick checks.
pub fn prime_of(f: &PrimeField) -> u64 {
    f.size().and_then(|s| s.to_u64()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ExtensionField;
    use crate::poly::from_roots;

    #[test]
    fn rabin_test() {
        let f = PrimeField::new(2);
        assert!(is_irreducible(&f, &[1, 1, 1]));
        assert!(!is_irreducible(&f, &[1, 0, 1]));
        assert!(is_irreducible(&f, &[1, 1, 0, 1]));
        let f7 = PrimeField::new(7);
        assert!(!is_irreducible(&f7, &[5, 0, 1])); // x^2 - 2 has roots ±3
        assert!(is_irreducible(&f7, &[1, 0, 1])); // x^2 + 1, 7 ≡ 3 mod 4
    }

    #[test]
    fn square_roots_of_two_mod_seven() {
        let f = PrimeField::new(7);
        assert_eq!(roots(&f, &[5, 0, 1]), vec![3, 4]);
    }

    #[test]
    fn roots_in_extension() {
        // x^2 + 1 over F_9 has two roots
        let f = ExtensionField::canonical(3, 2);
        let poly = vec![f.one(), f.zero(), f.one()];
        let r = roots(&f, &poly);
        assert_eq!(r.len(), 2);
        for z in &r {
            assert!(f.is_zero(&crate::poly::eval(&f, &poly, z)));
        }
    }

    #[test]
    fn roots_in_characteristic_two_extension() {
        let f = ExtensionField::canonical(2, 4);
        let g = f.generator();
        let g2 = f.mul(&g, &g);
        let poly = from_roots(&f, &[g.clone(), g2.clone(), f.one()]);
        let mut expect = vec![g, g2, f.one()];
        expect.sort();
        assert_eq!(roots(&f, &poly), expect);
    }

    #[test]
    fn full_factorization_mod_p() {
        let f = PrimeField::new(5);
        // (x^2 + 2)(x - 1)(x - 3)
        let poly = mul(&f, &[2, 0, 1], &from_roots(&f, &[1, 3]));
        let facs = factor_squarefree(&f, &poly);
        assert_eq!(facs, vec![vec![2, 1], vec![4, 1], vec![2, 0, 1]]);
    }

    #[test]
    fn distinct_degree_with_repeated_factors() {
        let f = PrimeField::new(3);
        let q = vec![1, 0, 1]; // x^2 + 1 irreducible mod 3
        let poly = mul(&f, &mul(&f, &q, &q), &from_roots(&f, &[1, 1, 2]));
        let split = distinct_degree_split(&f, &poly);
        assert_eq!(split, vec![(from_roots(&f, &[1, 2]), 1), (q, 2)]);
    }
}
