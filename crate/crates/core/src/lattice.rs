//! Lattices in rational vector spaces, bilinear pairings between two spaces,
//! duals, discriminants and pairing-compatible splittings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{dense, Rationals};
use crate::linalg::{elementary_divisors, hnf, kernel_basis, IntMatrix, Matrix, RatMatrix};

/// A ℤ-lattice spanned by rationally independent rows in `ℚ^n`.
///
/// The stored basis is canonical: the HNF of `d·B` divided by `d`, where `d`
/// is the least common denominator. Structural equality is lattice equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient_dim: usize,
    basis: RatMatrix,
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lattice({}, {:?})", self.ambient_dim, self.basis)
    }
}

fn from_integer_rows(m: &IntMatrix, d: &BigInt) -> RatMatrix {
    let d = BigRational::from_integer(d.clone());
    m.map(|x| BigRational::from_integer(x.clone()) / &d)
}

impl Lattice {
    /// Lattice with the given basis; rows must be rationally independent.
    pub fn new(basis: RatMatrix) -> Result<Self> {
        if dense::rank(&Rationals, &basis) != basis.rows() {
            return Err(Error::DependentRows);
        }
        Ok(Self::from_generators(&basis))
    }

    /// Lattice generated by arbitrary (possibly dependent) rational rows.
    pub fn from_generators(gens: &RatMatrix) -> Self {
        let (d, m) = gens.clear_denominators();
        let h = hnf(&m).basis();
        let basis = from_integer_rows(&h, &d);
        // the lcm of the canonical basis may be smaller than d; renormalize
        let (d2, m2) = basis.clear_denominators();
        let basis = from_integer_rows(&hnf(&m2).basis(), &d2);
        Lattice { ambient_dim: gens.cols(), basis }
    }

    pub fn from_integer(basis: &IntMatrix) -> Result<Self> {
        Self::new(basis.to_rational())
    }

    /// `ℤ^n`.
    pub fn standard(n: usize) -> Self {
        Lattice { ambient_dim: n, basis: RatMatrix::identity(n) }
    }

    pub fn zero(n: usize) -> Self {
        Lattice { ambient_dim: n, basis: RatMatrix::zeros(0, n) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient_dim
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_generators(&self.basis.scale(c))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        let row = Matrix::from_rows(vec![v.to_vec()], self.ambient_dim).ok()?;
        dense::solve_left(&Rationals, &self.basis, &row).map(|x| x.row(0).to_vec())
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.coordinates(v).is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }

    /// `other ⊆ self`.
    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.to_rows().iter().all(|r| self.contains(r))
    }

    /// `self + other`.
    pub fn sum(&self, other: &Lattice) -> Result<Self> {
        Ok(Self::from_generators(&self.basis.vstack(&other.basis)?))
    }

    /// Elementary divisors (> 1) of `self / sub`; both must have equal rank.
    pub fn quotient_divisors(&self, sub: &Lattice) -> Result<Vec<BigInt>> {
        let d = self.basis.denominator_lcm();
        let d = num_integer::Integer::lcm(&d, &sub.basis.denominator_lcm());
        let dq = BigRational::from_integer(d);
        let amb = self.basis.scale(&dq).to_integer().expect("cleared");
        let s = sub.basis.scale(&dq).to_integer().expect("cleared");
        elementary_divisors(&s, &amb)
    }

    /// Order of `self / sub`.
    pub fn index_of(&self, sub: &Lattice) -> Result<BigInt> {
        Ok(self.quotient_divisors(sub)?.iter().product())
    }

    /// The ℚ-span as an RREF basis.
    pub fn span(&self) -> RatMatrix {
        dense::row_space(&Rationals, &self.basis)
    }
}

/// A bilinear form `⟨v, w⟩ = v·G·wᵀ` between `V = ℚ^m` and `Ṽ = ℚ^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearPairing {
    gram: RatMatrix,
}

impl BilinearPairing {
    pub fn new(gram: RatMatrix) -> Self {
        BilinearPairing { gram }
    }

    /// The dot product on `ℚ^n`.
    pub fn standard(n: usize) -> Self {
        BilinearPairing { gram: RatMatrix::identity(n) }
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    /// The same form with the roles of the two spaces exchanged.
    pub fn transpose(&self) -> Self {
        BilinearPairing { gram: self.gram.transpose() }
    }

    pub fn pair(&self, v: &[BigRational], w: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in w.iter().enumerate() {
                acc += a * &self.gram[(i, j)] * b;
            }
        }
        acc
    }

    /// `A·G·Bᵀ` for row bases `A ⊆ V`, `B ⊆ Ṽ`.
    pub fn gram_between(&self, a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
        &(a * &self.gram) * &b.transpose()
    }
}

/// Dual of `M ⊆ Ṽ` inside `V`: `{v ∈ S : ⟨v, w⟩ ∈ ℤ for all w ∈ M}`.
///
/// `within` is a basis of the subspace `S ⊆ V` that is to carry the dual; by
/// default it is the span of `M·Gᵀ`. The pairing must be nondegenerate
/// between `S` and `span(M)`.
pub fn dual_lattice(m: &Lattice, pairing: &BilinearPairing, within: Option<&RatMatrix>) -> Result<Lattice> {
    let s = match within {
        Some(s) => dense::row_space(&Rationals, s),
        None => dense::row_space(&Rationals, &(m.basis() * &pairing.gram.transpose())),
    };
    let k = m.rank();
    if s.rows() != k {
        return Err(Error::DegeneratePairing(format!(
            "subspace of dimension {} cannot pair perfectly with a rank-{} lattice",
            s.rows(),
            k
        )));
    }
    let g = pairing.gram_between(&s, m.basis());
    let Some(ginv) = dense::inverse(&Rationals, &g) else {
        return Err(Error::DegeneratePairing("restricted Gram matrix is singular".into()));
    };
    Lattice::new(&ginv * &s)
}

/// Dual of `L ⊆ V` inside `Ṽ`.
pub fn dual_lattice_left(l: &Lattice, pairing: &BilinearPairing, within: Option<&RatMatrix>) -> Result<Lattice> {
    dual_lattice(l, &pairing.transpose(), within)
}

/// `L ∩ span(S)`, saturated in `L`.
pub fn intersect_with_subspace(l: &Lattice, s: &RatMatrix) -> Result<Lattice> {
    if s.cols() != l.ambient_dim() {
        return Err(Error::Dimension("subspace lives in a different ambient space".into()));
    }
    // annihilator N with S·N = 0; x·B ∈ span(S) iff x·B·N = 0
    let n = dense::right_kernel(&Rationals, s).transpose();
    if n.cols() == 0 {
        return Ok(l.clone());
    }
    let bn = l.basis() * &n;
    let (_, bn) = bn.clear_denominators();
    let x = kernel_basis(&bn);
    if x.rows() == 0 {
        return Ok(Lattice::zero(l.ambient_dim()));
    }
    Lattice::new(&x.to_rational() * l.basis())
}

/// Lattice generated by the images of a basis of `L` under `P`.
pub fn project(l: &Lattice, p: &RatMatrix) -> Lattice {
    Lattice::from_generators(&(l.basis() * p))
}

/// Determinant of the Gram matrix of the canonical bases, taken nonnegative
/// (the value is only defined up to a unit).
pub fn discriminant(l1: &Lattice, m1: &Lattice, pairing: &BilinearPairing) -> Result<BigRational> {
    if l1.rank() != m1.rank() {
        return Err(Error::Dimension(format!("ranks {} and {} differ", l1.rank(), m1.rank())));
    }
    let g = pairing.gram_between(l1.basis(), m1.basis());
    let d = dense::det(&Rationals, &g);
    if d.is_zero() {
        return Err(Error::DegeneratePairing("Gram matrix is singular".into()));
    }
    Ok(d.abs())
}

/// `L* = M` and `M* = L`, each dual taken inside the other lattice's span.
pub fn is_perfect(l: &Lattice, m: &Lattice, pairing: &BilinearPairing) -> bool {
    let Ok(m_dual) = dual_lattice(m, pairing, Some(&l.span())) else { return false };
    let Ok(l_dual) = dual_lattice_left(l, pairing, Some(&m.span())) else { return false };
    m_dual == *l && l_dual == *m
}

fn is_projector(p: &RatMatrix) -> bool {
    p.is_square() && (p * p) == *p
}

/// Complementary projector pairs on `V` and `Ṽ` respecting a pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitDecomposition {
    pub p1: RatMatrix,
    pub p2: RatMatrix,
    pub p1t: RatMatrix,
    pub p2t: RatMatrix,
}

impl SplitDecomposition {
    /// Validates idempotence, complementarity and orthogonality.
    pub fn new(
        p1: RatMatrix,
        p2: RatMatrix,
        p1t: RatMatrix,
        p2t: RatMatrix,
        pairing: &BilinearPairing,
    ) -> Result<Self> {
        for (name, p) in [("p1", &p1), ("p2", &p2), ("p1t", &p1t), ("p2t", &p2t)] {
            if !is_projector(p) {
                return Err(Error::InvalidProjector(format!("{name} is not idempotent")));
            }
        }
        if p1.rows() != pairing.gram.rows() || p1t.rows() != pairing.gram.cols() {
            return Err(Error::Dimension("projector size does not match the pairing".into()));
        }
        let id = RatMatrix::identity(p1.rows());
        let idt = RatMatrix::identity(p1t.rows());
        if &p1 + &p2 != id || &p1t + &p2t != idt {
            return Err(Error::InvalidProjector("projectors do not sum to the identity".into()));
        }
        if !(&p1 * &p2).is_zero() || !(&p1t * &p2t).is_zero() {
            return Err(Error::InvalidProjector("projectors are not mutually annihilating".into()));
        }
        if !pairing.gram_between(&p1, &p2t).is_zero() || !pairing.gram_between(&p2, &p1t).is_zero() {
            return Err(Error::InvalidProjector("splitting is not orthogonal for the pairing".into()));
        }
        Ok(SplitDecomposition { p1, p2, p1t, p2t })
    }

    /// Split from `p1` on `V`; the `Ṽ` side is the adjoint splitting
    /// `p̃ᵢ = (G⁻¹·pᵢ·G)ᵀ`, which needs a square invertible Gram matrix.
    pub fn from_projector(p1: RatMatrix, pairing: &BilinearPairing) -> Result<Self> {
        let g = &pairing.gram;
        if !is_projector(&p1) {
            return Err(Error::InvalidProjector("p1 is not idempotent".into()));
        }
        let Some(ginv) = dense::inverse(&Rationals, g) else {
            return Err(Error::DegeneratePairing("Gram matrix is singular".into()));
        };
        if p1.rows() != g.rows() {
            return Err(Error::Dimension("projector size does not match the pairing".into()));
        }
        let id = RatMatrix::identity(p1.rows());
        let p2 = &id - &p1;
        let p1t = (&(&ginv * &p1) * g).transpose();
        let p2t = &id - &p1t;
        Self::new(p1, p2, p1t, p2t, pairing)
    }

    /// Projector onto `span(v1)` along `span(v2)`; together they must span `V`.
    pub fn projector_from_subspaces(v1: &RatMatrix, v2: &RatMatrix) -> Result<RatMatrix> {
        let s = v1.vstack(v2)?;
        let Some(sinv) = dense::inverse(&Rationals, &s) else {
            return Err(Error::InvalidProjector("subspaces do not form a direct sum decomposition".into()));
        };
        let k = v1.rows();
        let e = Matrix::from_fn(s.rows(), s.rows(), |i, j| {
            if i == j && i < k {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        Ok(&(&sinv * &e) * &s)
    }

    pub fn image1(&self) -> RatMatrix {
        dense::row_space(&Rationals, &self.p1)
    }

    pub fn image2(&self) -> RatMatrix {
        dense::row_space(&Rationals, &self.p2)
    }

    pub fn image1t(&self) -> RatMatrix {
        dense::row_space(&Rationals, &self.p1t)
    }

    pub fn image2t(&self) -> RatMatrix {
        dense::row_space(&Rationals, &self.p2t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(rows: &[[i64; 2]]) -> Lattice {
        Lattice::from_integer(&IntMatrix::from_i64(rows)).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn duals_of_small_lattices() {
        let dot = BilinearPairing::standard(2);
        assert_eq!(dual_lattice(&Lattice::standard(2), &dot, None).unwrap(), Lattice::standard(2));
        let two = lat(&[[2, 0], [0, 2]]);
        assert_eq!(dual_lattice(&two, &dot, None).unwrap(), Lattice::standard(2).scale(&q(1, 2)));
        let m = lat(&[[1, 1], [1, -1]]);
        let expect = Lattice::new(Matrix::from_rows(vec![vec![q(1, 1), q(0, 1)], vec![q(1, 2), q(1, 2)]], 2).unwrap()).unwrap();
        let d = dual_lattice(&m, &dot, None).unwrap();
        assert_eq!(d, expect);
        assert!(is_perfect(&m, &d, &dot));
    }

    #[test]
    fn subspace_intersections() {
        let l = Lattice::standard(2);
        let s = Matrix::from_rows(vec![vec![q(1, 1), q(1, 2)]], 2).unwrap();
        assert_eq!(intersect_with_subspace(&l, &s).unwrap(), lat(&[[2, 1]]));
        assert_eq!(intersect_with_subspace(&l, &RatMatrix::identity(2)).unwrap(), l);
    }

    #[test]
    fn projection_onto_diagonal() {
        let v1 = RatMatrix::from_i64(&[[1, 1]]);
        let v2 = RatMatrix::from_i64(&[[1, -1]]);
        let p = SplitDecomposition::projector_from_subspaces(&v1, &v2).unwrap();
        let img = project(&Lattice::standard(2), &p);
        let expect = Lattice::new(Matrix::from_rows(vec![vec![q(1, 2), q(1, 2)]], 2).unwrap()).unwrap();
        assert_eq!(img, expect);
        assert_eq!(project(&lat(&[[1, 1]]), &p), lat(&[[1, 1]]));
    }

    #[test]
    fn discriminants() {
        let dot = BilinearPairing::standard(2);
        let l = lat(&[[1, 1]]);
        assert_eq!(discriminant(&l, &l, &dot).unwrap(), q(2, 1));
        let one = BilinearPairing::standard(1);
        let three = Lattice::from_integer(&IntMatrix::from_i64(&[[3]])).unwrap();
        assert_eq!(discriminant(&three, &Lattice::standard(1), &one).unwrap(), q(3, 1));
        assert!(matches!(discriminant(&l, &Lattice::standard(2), &dot), Err(Error::Dimension(_))));
    }

    #[test]
    fn perfectness() {
        let dot = BilinearPairing::standard(2);
        assert!(is_perfect(&Lattice::standard(2), &Lattice::standard(2), &dot));
        assert!(!is_perfect(&Lattice::standard(2), &lat(&[[2, 0], [0, 2]]), &dot));
    }

    #[test]
    fn canonical_form_decides_equality() {
        assert_eq!(lat(&[[1, 1], [0, 2]]), lat(&[[1, -1], [1, 1]]));
        assert_ne!(lat(&[[1, 0], [0, 2]]), lat(&[[2, 0], [0, 1]]));
    }
}
