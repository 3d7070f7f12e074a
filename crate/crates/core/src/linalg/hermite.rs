use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Row-style Hermite normal form `H = T·A`.
///
/// Pivots are positive, pivot columns strictly increase down the rows, and
/// every entry above a pivot lies in `[0, pivot)`. Zero rows sit at the bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub t: IntMatrix,
    /// Number of nonzero rows of `h`.
    pub rank: usize,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    /// The nonzero rows of `H`, a basis of the row lattice.
    pub fn basis(&self) -> IntMatrix {
        self.h.select_rows(&(0..self.rank).collect::<Vec<_>>())
    }
}

fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        if !m[(src, j)].is_zero() {
            let v = &m[(src, j)] * q;
            m[(dst, j)] -= v;
        }
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for x in m.row_mut(i) {
        *x = -std::mem::take(x);
    }
}

pub fn hnf(a: &IntMatrix) -> HermiteForm {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut t = IntMatrix::identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        loop {
            // smallest nonzero entry at or below row r
            let best = (r..m)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&i, &j| h[(i, col)].abs().cmp(&h[(j, col)].abs()));
            let Some(p) = best else { break };
            h.swap_rows(p, r);
            t.swap_rows(p, r);
            let mut done = true;
            for i in r + 1..m {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = h[(i, col)].div_floor(&h[(r, col)]);
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut t, i, r, &q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, col)].is_zero() {
            continue;
        }
        if h[(r, col)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut t, r);
        }
        for i in 0..r {
            let q = h[(i, col)].div_floor(&h[(r, col)]);
            row_axpy(&mut h, i, r, &q);
            row_axpy(&mut t, i, r, &q);
        }
        pivots.push(col);
        r += 1;
    }
    HermiteForm { h, t, rank: r, pivots }
}

/// Basis (in Hermite form) of the saturated integer left kernel `{x : x·A = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let hf = hnf(a);
    let idx: Vec<usize> = (hf.rank..a.rows()).collect();
    let k = hf.t.select_rows(&idx);
    if k.rows() == 0 {
        return k;
    }
    hnf(&k).basis()
}

/// Basis of `span_Q(B) ∩ Z^n`. Rows of `B` must be rationally independent.
pub fn saturate(b: &IntMatrix) -> Result<IntMatrix> {
    let n = b.cols();
    let hf = hnf(b);
    if hf.rank < b.rows() {
        return Err(Error::DependentRows);
    }
    if b.rows() == 0 {
        return Ok(b.clone());
    }
    // annihilator of the row space, then its annihilator
    let perp = kernel_basis(&b.transpose());
    if perp.rows() == 0 {
        return Ok(IntMatrix::identity(n));
    }
    Ok(kernel_basis(&perp.transpose()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn hnf_already_reduced() {
        let a = m(&[&[1, 2], &[0, 3]]);
        assert_eq!(hnf(&a).h, a);
    }

    #[test]
    fn hnf_row_swap() {
        let hf = hnf(&m(&[&[0, 3], &[1, 2]]));
        assert_eq!(hf.h, m(&[&[1, 2], &[0, 3]]));
        assert_eq!(&hf.t * &m(&[&[0, 3], &[1, 2]]), hf.h);
    }

    #[test]
    fn hnf_with_dependent_rows() {
        let a = m(&[&[2, 0], &[0, 2], &[1, 1]]);
        let hf = hnf(&a);
        assert_eq!(hf.h, m(&[&[1, 1], &[0, 2], &[0, 0]]));
        assert_eq!(hf.rank, 2);
        assert_eq!(&hf.t * &a, hf.h);
        assert_eq!(hf.t.det().unwrap().abs(), BigInt::from(1));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&m(&[&[1], &[1]])), m(&[&[1, -1]]));
        assert_eq!(kernel_basis(&IntMatrix::identity(2)).rows(), 0);
        // saturated, not (2,-2)
        assert_eq!(kernel_basis(&m(&[&[2], &[2]])), m(&[&[1, -1]]));
    }

    #[test]
    fn saturate_examples() {
        assert_eq!(saturate(&m(&[&[2, 0]])).unwrap(), m(&[&[1, 0]]));
        assert_eq!(saturate(&IntMatrix::identity(2)).unwrap(), IntMatrix::identity(2));
        // full rank in Z^2, so the saturation is all of Z^2
        assert_eq!(saturate(&m(&[&[2, 2], &[0, 4]])).unwrap(), IntMatrix::identity(2));
        assert_eq!(saturate(&m(&[&[2, 4, 6], &[0, 3, 3]])).unwrap(), m(&[&[1, 0, 1], &[0, 1, 1]]));
        assert_eq!(saturate(&m(&[&[1, 1], &[2, 2]])), Err(Error::DependentRows));
    }
}
