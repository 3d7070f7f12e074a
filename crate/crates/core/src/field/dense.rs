//! Dense linear algebra over an arbitrary [`Field`]. Vectors are rows and
//! operators act on the right (`x ↦ x·A`).

use super::Field;
use crate::linalg::Matrix;

pub fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(rows, cols, |_, _| f.zero())
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
}

pub fn mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols(), b.rows(), "matrix product dimension mismatch");
    let mut out = zeros(f, a.rows(), b.cols());
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let x = &a[(i, k)];
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols() {
                let y = &b[(k, j)];
                if !f.is_zero(y) {
                    out[(i, j)] = f.add(&out[(i, j)], &f.mul(x, y));
                }
            }
        }
    }
    out
}

pub fn add<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| f.add(&a[(i, j)], &b[(i, j)]))
}

pub fn sub<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| f.sub(&a[(i, j)], &b[(i, j)]))
}

pub fn scale<F: Field>(f: &F, c: &F::Elem, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    a.map(|x| f.mul(c, x))
}

pub fn is_zero<F: Field>(f: &F, a: &Matrix<F::Elem>) -> bool {
    a.entries().iter().all(|x| f.is_zero(x))
}

/// Reduced row echelon form and pivot columns.
pub fn rref<F: Field>(f: &F, a: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&m[(i, c)])) else { continue };
        m.swap_rows(p, r);
        let inv = f.inv(&m[(r, c)]);
        for j in c..cols {
            m[(r, j)] = f.mul(&m[(r, j)], &inv);
        }
        for i in 0..rows {
            if i == r || f.is_zero(&m[(i, c)]) {
                continue;
            }
            let factor = m[(i, c)].clone();
            for j in c..cols {
                if !f.is_zero(&m[(r, j)]) {
                    let t = f.mul(&factor, &m[(r, j)]);
                    m[(i, j)] = f.sub(&m[(i, j)], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank<F: Field>(f: &F, a: &Matrix<F::Elem>) -> usize {
    rref(f, a).1.len()
}

/// Canonical basis (reduced echelon rows) of the row space.
pub fn row_space<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let (r, piv) = rref(f, a);
    r.select_rows(&(0..piv.len()).collect::<Vec<_>>())
}

/// Basis of the right null space `{y : A·y = 0}`, returned as rows.
pub fn right_kernel<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let cols = a.cols();
    let (r, pivots) = rref(f, a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = zeros(f, free.len(), cols);
    for (k, &fc) in free.iter().enumerate() {
        out[(k, fc)] = f.one();
        for (i, &pc) in pivots.iter().enumerate() {
            out[(k, pc)] = f.neg(&r[(i, fc)]);
        }
    }
    out
}

/// Basis of the left null space `{x : x·A = 0}`, as rows.
pub fn left_kernel<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    right_kernel(f, &a.transpose())
}

/// Some `X` with `X·A = B`, if one exists.
pub fn solve_left<F: Field>(
    f: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Option<Matrix<F::Elem>> {
    assert_eq!(a.cols(), b.cols());
    // Aᵀ Xᵀ = Bᵀ: reduce [Aᵀ | Bᵀ]
    let at = a.transpose();
    let bt = b.transpose();
    let aug = at.hstack(&bt).ok()?;
    let n = a.rows();
    let (r, pivots) = rref(f, &aug);
    if pivots.iter().any(|&c| c >= n) {
        return None;
    }
    let mut xt = zeros(f, n, b.rows());
    for (i, &pc) in pivots.iter().enumerate() {
        for j in 0..b.rows() {
            xt[(pc, j)] = r[(i, n + j)].clone();
        }
    }
    Some(xt.transpose())
}

pub fn inverse<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    if !a.is_square() {
        return None;
    }
    let n = a.rows();
    let aug = a.hstack(&identity(f, n)).ok()?;
    let (r, pivots) = rref(f, &aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(r.select_cols(&(n..2 * n).collect::<Vec<_>>()))
}

/// Determinant by Gaussian elimination.
pub fn det<F: Field>(f: &F, a: &Matrix<F::Elem>) -> F::Elem {
    assert!(a.is_square());
    let n = a.rows();
    let mut m = a.clone();
    let mut acc = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(&m[(i, c)])) else { return f.zero() };
        if p != c {
            m.swap_rows(p, c);
            acc = f.neg(&acc);
        }
        acc = f.mul(&acc, &m[(c, c)]);
        let inv = f.inv(&m[(c, c)]);
        for i in c + 1..n {
            if f.is_zero(&m[(i, c)]) {
                continue;
            }
            let u = f.mul(&m[(i, c)], &inv);
            for j in c..n {
                let t = f.mul(&u, &m[(c, j)]);
                m[(i, j)] = f.sub(&m[(i, j)], &t);
            }
        }
    }
    acc
}

/// Characteristic polynomial `det(x·I − A)`, monic, lowest degree first.
/// Hessenberg reduction followed by the standard recurrence.
pub fn charpoly<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Vec<F::Elem> {
    assert!(a.is_square());
    let n = a.rows();
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !f.is_zero(&h[(i, m - 1)])) else { continue };
        if i != m {
            h.swap_rows(i, m);
            h.swap_cols(i, m);
        }
        let pivot_inv = f.inv(&h[(m, m - 1)]);
        for i in m + 1..n {
            let u = f.mul(&h[(i, m - 1)], &pivot_inv);
            if f.is_zero(&u) {
                continue;
            }
            for j in 0..n {
                let t = f.mul(&u, &h[(m, j)]);
                h[(i, j)] = f.sub(&h[(i, j)], &t);
            }
            for j in 0..n {
                let t = f.mul(&u, &h[(j, i)]);
                h[(j, m)] = f.add(&h[(j, m)], &t);
            }
        }
    }
    // p[k] = char poly of the leading k×k block
    let mut p: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
    for m in 1..=n {
        // (x - h[m-1][m-1]) * p[m-1]
        let prev = &p[m - 1];
        let mut next = vec![f.zero(); m + 1];
        for (k, c) in prev.iter().enumerate() {
            next[k + 1] = f.add(&next[k + 1], c);
            next[k] = f.sub(&next[k], &f.mul(&h[(m - 1, m - 1)], c));
        }
        let mut t = f.one();
        for i in 1..m {
            t = f.mul(&t, &h[(m - i, m - i - 1)]);
            let coef = f.mul(&t, &h[(m - i - 1, m - 1)]);
            if f.is_zero(&coef) {
                continue;
            }
            for (k, c) in p[m - i - 1].iter().enumerate() {
                next[k] = f.sub(&next[k], &f.mul(&coef, c));
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}

/// `g(A)` by Horner's rule; `g` lowest degree first.
pub fn eval_poly<F: Field>(f: &F, g: &[F::Elem], a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let n = a.rows();
    let mut acc = zeros(f, n, n);
    for c in g.iter().rev() {
        acc = mul(f, &acc, a);
        for i in 0..n {
            acc[(i, i)] = f.add(&acc[(i, i)], c);
        }
    }
    acc
}

/// Matrix of `A` on the invariant subspace spanned by the rows of `w`:
/// the unique `M` with `w·A = M·w`.
pub fn restrict<F: Field>(
    f: &F,
    a: &Matrix<F::Elem>,
    w: &Matrix<F::Elem>,
) -> Option<Matrix<F::Elem>> {
    let wa = mul(f, w, a);
    solve_left(f, w, &wa)
}

pub fn matrix_pow<F: Field>(f: &F, a: &Matrix<F::Elem>, mut e: usize) -> Matrix<F::Elem> {
    let mut base = a.clone();
    let mut acc = identity(f, a.rows());
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(f, &acc, &base);
        }
        base = mul(f, &base, &base);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::linalg::RatMatrix;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn charpoly_matches_known_values() {
        let a = RatMatrix::from_i64(&[[0, 2], [1, 0]]);
        assert_eq!(charpoly(&Rationals, &a), vec![q(-2), q(0), q(1)]);
        let b = RatMatrix::from_i64(&[[2, 1, 0], [0, 2, 0], [0, 0, 3]]);
        // (x-2)^2 (x-3) = x^3 - 7x^2 + 16x - 12
        assert_eq!(charpoly(&Rationals, &b), vec![q(-12), q(16), q(-7), q(1)]);
        let c = RatMatrix::from_i64(&[[1, 2, 3], [4, 5, 6], [7, 8, 10]]);
        // trace 16, det -3; sum of principal 2-minors: (5-8)+(10-21)+(50-48) = -12
        assert_eq!(charpoly(&Rationals, &c), vec![q(3), q(-12), q(-16), q(1)]);
    }

    #[test]
    fn cayley_hamilton_mod_p() {
        let f = PrimeField::new(11);
        let a = crate::linalg::Matrix::from_fn(4, 4, |i, j| ((3 * i + 5 * j * j + 1) % 11) as u64);
        let cp = charpoly(&f, &a);
        assert!(is_zero(&f, &eval_poly(&f, &cp, &a)));
    }

    #[test]
    fn kernels_and_solves() {
        let a = RatMatrix::from_i64(&[[1, 1], [1, 1]]);
        let k = left_kernel(&Rationals, &a);
        assert_eq!(k.rows(), 1);
        assert!(is_zero(&Rationals, &mul(&Rationals, &k, &a)));
        let b = RatMatrix::from_i64(&[[2, 3], [1, 4]]);
        let inv = inverse(&Rationals, &b).unwrap();
        assert_eq!(mul(&Rationals, &inv, &b), identity(&Rationals, 2));
        let x = solve_left(&Rationals, &b, &RatMatrix::from_i64(&[[5, 7]])).unwrap();
        assert_eq!(mul(&Rationals, &x, &b), RatMatrix::from_i64(&[[5, 7]]));
        assert!(inverse(&Rationals, &a).is_none());
    }
}
