use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{hnf, IntMatrix, RatMatrix};
use crate::error::{Error, Result};
use crate::field::{dense, Rationals};

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal with `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// The nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
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

fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        if !m[(i, src)].is_zero() {
            let v = &m[(i, src)] * q;
            m[(i, dst)] -= v;
        }
    }
}

/// Smith normal form with transforms. Pivots are chosen by minimal absolute
/// value at every step to keep coefficient growth in check.
pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // global minimum over the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &d[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // move the smallest remainder in row/column t onto the pivot
                let mut bi = t;
                let mut bj = t;
                for i in t + 1..m {
                    if !d[(i, t)].is_zero() && d[(i, t)].abs() < d[(bi, bj)].abs() {
                        bi = i;
                        bj = t;
                    }
                }
                for j in t + 1..n {
                    if !d[(t, j)].is_zero() && d[(t, j)].abs() < d[(bi, bj)].abs() {
                        bi = t;
                        bj = j;
                    }
                }
                d.swap_rows(t, bi);
                u.swap_rows(t, bi);
                d.swap_cols(t, bj);
                v.swap_cols(t, bj);
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)]))
            });
            match bad {
                Some(i) => {
                    row_axpy(&mut d, t, i, &-BigInt::one());
                    row_axpy(&mut u, t, i, &-BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            for x in d.row_mut(t) {
                *x = -std::mem::take(x);
            }
            for x in u.row_mut(t) {
                *x = -std::mem::take(x);
            }
        }
        t += 1;
    }
    SmithDecomposition { u, d, v, rank: t }
}

/// Elementary divisors `d₁ | d₂ | …` (all > 1) of `amb / sub`, where both
/// arguments are generating sets (rows) of integer lattices of equal rank.
pub fn elementary_divisors(sub: &IntMatrix, amb: &IntMatrix) -> Result<Vec<BigInt>> {
    if sub.cols() != amb.cols() {
        return Err(Error::Dimension("lattices live in different ambient spaces".into()));
    }
    let sb = hnf(sub).basis();
    let ab = hnf(amb);
    let ab_basis = ab.basis();
    if sb.rows() != ab_basis.rows() {
        return Err(Error::Dimension(format!(
            "rank {} sublattice in rank {} lattice",
            sb.rows(),
            ab_basis.rows()
        )));
    }
    if sb.rows() == 0 {
        return Ok(Vec::new());
    }
    // solve X·amb = sub on the pivot columns, then verify the full equation
    let q = Rationals;
    let a_sq = ab_basis.select_cols(&ab.pivots).to_rational();
    let s_sq = sb.select_cols(&ab.pivots).to_rational();
    let inv = dense::inverse(&q, &a_sq).ok_or_else(|| Error::Invariant("singular pivot block".into()))?;
    let x: RatMatrix = dense::mul(&q, &s_sq, &inv);
    let x = x.to_integer().ok_or_else(|| {
        Error::NotSublattice("coordinates in the ambient basis are not integral".into())
    })?;
    if &x * &ab_basis != sb {
        return Err(Error::NotSublattice("rows are not in the ambient row space".into()));
    }
    Ok(snf(&x)
        .invariant_factors()
        .into_iter()
        .filter(|d| !d.is_one())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    fn check(a: &IntMatrix) -> SmithDecomposition {
        let s = snf(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert_eq!(s.u.det().unwrap().abs(), BigInt::one());
        assert_eq!(s.v.det().unwrap().abs(), BigInt::one());
        s
    }

    #[test]
    fn snf_two_by_two() {
        let s = check(&m(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.d, m(&[&[2, 0], &[0, 4]]));
    }

    #[test]
    fn snf_identity_and_zero() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        assert_eq!(s.u, IntMatrix::identity(3));
        assert_eq!(s.v, IntMatrix::identity(3));
        let z = check(&IntMatrix::zeros(2, 2));
        assert!(z.d.is_zero());
        assert_eq!(z.rank, 0);
    }

    #[test]
    fn snf_rectangular_with_divisibility_fix() {
        let s = check(&m(&[&[2, 0, 0], &[0, 3, 0]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn elementary_divisor_examples() {
        let two = BigInt::from(2);
        assert_eq!(
            elementary_divisors(&m(&[&[2, 0], &[0, 2]]), &IntMatrix::identity(2)).unwrap(),
            vec![two.clone(), two.clone()]
        );
        assert!(elementary_divisors(&IntMatrix::identity(2), &IntMatrix::identity(2))
            .unwrap()
            .is_empty());
        assert_eq!(
            elementary_divisors(&m(&[&[1, 1], &[1, -1]]), &IntMatrix::identity(2)).unwrap(),
            vec![two]
        );
    }

    #[test]
    fn elementary_divisors_rejects_non_sublattice() {
        let r = elementary_divisors(&IntMatrix::identity(2), &m(&[&[2, 0], &[0, 1]]));
        assert!(matches!(r, Err(Error::NotSublattice(_))));
    }
}
