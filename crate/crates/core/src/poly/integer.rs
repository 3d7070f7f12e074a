//! Integer and rational polynomials: squarefree parts, factorization of monic
//! polynomials over ℚ (Zassenhaus: factor mod p, Hensel lift, recombine),
//! resultants and discriminants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::finite::factor_squarefree;
use crate::field::{Field, PrimeField, Rationals};
use crate::linalg::{is_prime, IntMatrix, Matrix};

pub fn trim_int(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub fn to_rational(a: &[BigInt]) -> Vec<BigRational> {
    a.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

/// `Some` when every coefficient is integral.
pub fn to_integer(a: &[BigRational]) -> Option<Vec<BigInt>> {
    a.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
}

pub fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_int(out)
}

fn reduce_mod(a: &[BigInt], p: u64) -> Vec<u64> {
    let f = PrimeField::new(p);
    super::trim(&f, a.iter().map(|c| f.from_int(c)).collect())
}

fn lift(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn sym_mod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m >> 1;
    trim_int(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Exact division in ℤ[x] by a monic divisor, `None` if it does not divide.
pub fn div_exact_monic(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    debug_assert!(b.last().is_some_and(|c| c.is_one()));
    let mut r = trim_int(a.to_vec());
    if r.len() < b.len() {
        return r.is_empty().then(Vec::new);
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap().clone();
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        r.pop();
        r = trim_int(r);
    }
    r.is_empty().then(|| trim_int(q))
}

/// Monic radical of a monic polynomial over ℚ.
pub fn squarefree_part(f: &[BigRational]) -> Vec<BigRational> {
    let q = Rationals;
    let d = super::derivative(&q, f);
    if d.is_empty() {
        return super::monic(&q, f);
    }
    let g = super::gcd(&q, f, &d);
    super::monic(&q, &super::divrem(&q, f, &g).0)
}

/// Monic irreducible factors over ℚ of the radical of a monic rational
/// polynomial, ordered by degree and then coefficients.
pub fn factor_rational(f: &[BigRational]) -> Vec<Vec<BigRational>> {
    let q = Rationals;
    let f = squarefree_part(&super::monic(&q, f));
    let n = f.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    // substitute x -> x/D to clear denominators: D^n f(x/D) is monic integral
    let d = f.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled: Vec<BigInt> = f
        .iter()
        .enumerate()
        .map(|(i, c)| (c * BigRational::from_integer(num_traits::pow(d.clone(), n - i))).to_integer())
        .collect();
    let dr = BigRational::from_integer(d);
    let mut out: Vec<Vec<BigRational>> = factor_monic_squarefree(&scaled)
        .into_iter()
        .map(|g| {
            let k = g.len() - 1;
            g.iter()
                .enumerate()
                .map(|(i, c)| BigRational::from_integer(c.clone()) / num_traits::pow(dr.clone(), k - i))
                .collect()
        })
        .collect();
    sort_polys(&mut out);
    out
}

fn sort_polys<T: Ord>(v: &mut [Vec<T>]) {
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

/// Irreducible factors of a squarefree monic integer polynomial.
pub fn factor_monic_squarefree(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let f = trim_int(f.to_vec());
    let n = f.len() - 1;
    assert!(f[n].is_one(), "monic input expected");
    if n <= 1 {
        return vec![f];
    }
    // a prime keeping f squarefree mod p
    let p = (3u64..)
        .filter(|&p| is_prime(p))
        .find(|&p| {
            let fld = PrimeField::new(p);
            let fp = reduce_mod(&f, p);
            let g = super::gcd(&fld, &fp, &super::derivative(&fld, &fp));
            g.len() == 1
        })
        .unwrap();
    let fld = PrimeField::new(p);
    let modular = factor_squarefree(&fld, &reduce_mod(&f, p));
    if modular.len() == 1 {
        return vec![f];
    }
    // 2 * (Mignotte-style bound 2^n * |f|_2) + 1
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << (n + 1)) * (norm2.sqrt() + BigInt::one()) + BigInt::one();
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_lift_all(&f, &modular, p, k);
    recombine(&f, lifted, &pk)
}

/// Lifts `f ≡ ∏ g_i (mod p)` to a factorization modulo `p^k`.
fn hensel_lift_all(f: &[BigInt], factors: &[Vec<u64>], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![f.to_vec()];
    }
    let fld = PrimeField::new(p);
    let mid = factors.len() / 2;
    let left = factors[..mid].iter().fold(vec![1u64], |acc, g| super::mul(&fld, &acc, g));
    let right = factors[mid..].iter().fold(vec![1u64], |acc, g| super::mul(&fld, &acc, g));
    let (g, h) = hensel_lift_pair(f, &left, &right, p, k);
    let mut out = hensel_lift_all(&g, &factors[..mid], p, k);
    out.extend(hensel_lift_all(&h, &factors[mid..], p, k));
    out
}

/// Linear Hensel lifting of `f ≡ g·h (mod p)` with monic coprime `g, h`.
fn hensel_lift_pair(f: &[BigInt], g0: &[u64], h0: &[u64], p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let fld = PrimeField::new(p);
    let (one, s, t) = super::ext_gcd(&fld, g0, h0);
    debug_assert_eq!(one, vec![1]);
    let pb = BigInt::from(p);
    let mut g = lift(g0);
    let mut h = lift(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let pj1 = &pj * &pb;
        let diff = trim_int(
            f.iter()
                .zip(mul_int(&g, &h).iter().chain(std::iter::repeat(&BigInt::zero())))
                .map(|(a, b)| a - b)
                .collect(),
        );
        let e: Vec<BigInt> = diff.iter().map(|c| c / &pj).collect();
        let e = reduce_mod(&e, p);
        let (q, dg) = super::divrem(&fld, &super::mul(&fld, &e, &t), g0);
        let dh = super::add(&fld, &super::mul(&fld, &e, &s), &super::mul(&fld, &q, h0));
        g = sym_mod(&add_scaled(&g, &lift(&dg), &pj), &pj1);
        h = sym_mod(&add_scaled(&h, &lift(&dh), &pj), &pj1);
        pj = pj1;
    }
    (g, h)
}

fn add_scaled(a: &[BigInt], b: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim_int((0..n).map(|i| a.get(i).unwrap_or(&z) + c * b.get(i).unwrap_or(&z)).collect())
}

fn recombine(f: &[BigInt], mut lifted: Vec<Vec<BigInt>>, pk: &BigInt) -> Vec<Vec<BigInt>> {
    let mut f = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = None;
        for subset in subsets(lifted.len(), size) {
            let cand = subset
                .iter()
                .fold(vec![BigInt::one()], |acc, &i| sym_mod(&mul_int(&acc, &lifted[i]), pk));
            if let Some(q) = div_exact_monic(&f, &cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand);
                f = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    out.push(f);
    sort_polys(&mut out);
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Resultant via the Sylvester determinant.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let a = trim_int(a.to_vec());
    let b = trim_int(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m + n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut s: IntMatrix = Matrix::from_fn(size, size, |_, _| BigInt::zero());
    for i in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            s[(i, i + j)] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            s[(n + i, i + j)] = c.clone();
        }
    }
    s.det().expect("Sylvester matrix is square")
}

/// Discriminant of a monic polynomial, up to sign.
pub fn discriminant(f: &[BigInt]) -> BigInt {
    let df: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    resultant(f, &df).abs()
}

/// Characteristic polynomial of an integer matrix, integer coefficients.
pub fn charpoly_int(a: &IntMatrix) -> Vec<BigInt> {
    let cp = crate::field::dense::charpoly(&Rationals, &a.to_rational());
    to_integer(&cp).expect("integer matrix has integral characteristic polynomial")
}

/// Evaluates at an integer.
pub fn eval_int(a: &[BigInt], x: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Largest absolute coefficient, as `f64` for diagnostics only.
pub fn height(a: &[BigInt]) -> f64 {
    a.iter().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn factors_products_of_known_irreducibles() {
        // (x^2 - 2)(x^2 + x + 1)(x - 3)
        let f = mul_int(&mul_int(&zp(&[-2, 0, 1]), &zp(&[1, 1, 1])), &zp(&[-3, 1]));
        let facs = factor_monic_squarefree(&f);
        assert_eq!(facs, vec![zp(&[-3, 1]), zp(&[-2, 0, 1]), zp(&[1, 1, 1])]);
    }

    #[test]
    fn swinnerton_dyer_style_polynomial_stays_irreducible() {
        // x^4 - 10x^2 + 1 splits mod every prime but is irreducible over Q
        let f = zp(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_monic_squarefree(&f), vec![f.clone()]);
    }

    #[test]
    fn rational_factorization_with_denominators() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        // (x - 1/2)^2 (x^2 - 1/4 * 3)
        let lin = vec![q(-1, 2), q(1, 1)];
        let quad = vec![q(-3, 4), q(0, 1), q(1, 1)];
        let r = Rationals;
        let f = crate::poly::mul(&r, &crate::poly::mul(&r, &lin, &lin), &quad);
        assert_eq!(factor_rational(&f), vec![lin, quad]);
    }

    #[test]
    fn resultant_and_discriminant() {
        // disc(x^2 - 2) = 8, res(x - 1, x - 4) = -3 up to sign
        assert_eq!(discriminant(&zp(&[-2, 0, 1])), BigInt::from(8));
        assert_eq!(resultant(&zp(&[-1, 1]), &zp(&[-4, 1])).abs(), BigInt::from(3));
        assert_eq!(discriminant(&zp(&[1, 1, 0, 1])), BigInt::from(31));
    }

    #[test]
    fn exact_division() {
        let f = zp(&[-1, 0, 1]);
        assert_eq!(div_exact_monic(&f, &zp(&[1, 1])), Some(zp(&[-1, 1])));
        assert_eq!(div_exact_monic(&f, &zp(&[2, 1])), None);
    }
}
