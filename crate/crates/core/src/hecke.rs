//! Commuting integer operator systems on lattices: rational isotypic
//! decomposition, projectors, the integral operator algebra and
//! simultaneous eigensystems modulo p.
//!
//! Operators are integer matrices in the coordinates of the lattice basis and
//! act on row vectors from the right. All subspaces below live in that
//! coordinate space `ℚ^r`, in which the lattice is `ℤ^r`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{dense, ExtensionField, Field, PrimeField, Rationals};
use crate::lattice::{intersect_with_subspace, Lattice};
use crate::linalg::{hnf, is_prime, IntMatrix, Matrix, RatMatrix};
use crate::poly;
use crate::poly::finite::{distinct_degree_split, roots};
use crate::poly::integer::factor_rational;

/// Operator label: a prime-ideal tag with index `T_{l,j}`, or a free name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorLabel {
    Tag { l: u64, j: u32 },
    Name(String),
}

impl fmt::Display for OperatorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorLabel::Tag { l, j } => write!(f, "T({l},{j})"),
            OperatorLabel::Name(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator {
    pub label: OperatorLabel,
    pub matrix: IntMatrix,
    /// Power of the tag prime separating this operator from its renormalized
    /// integral version; carried as data, never computed.
    pub normalization_exponent: Option<i64>,
}

impl Operator {
    pub fn new(label: OperatorLabel, matrix: IntMatrix) -> Self {
        Operator { label, matrix, normalization_exponent: None }
    }

    pub fn named(name: &str, matrix: IntMatrix) -> Self {
        Self::new(OperatorLabel::Name(name.to_string()), matrix)
    }
}

/// A lattice with pairwise commuting integer operators in its basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeSystem {
    lattice: Lattice,
    operators: Vec<Operator>,
}

impl HeckeSystem {
    /// Validates dimensions and commutativity.
    pub fn new(lattice: Lattice, operators: Vec<Operator>) -> Result<Self> {
        let h = Self::new_unchecked(lattice, operators)?;
        if let Some((a, b)) = h.first_noncommuting_pair() {
            return Err(Error::NonCommuting(a.to_string(), b.to_string()));
        }
        Ok(h)
    }

    /// Validates dimensions only.
    pub fn new_unchecked(lattice: Lattice, operators: Vec<Operator>) -> Result<Self> {
        let r = lattice.rank();
        for op in &operators {
            if op.matrix.rows() != r || op.matrix.cols() != r {
                return Err(Error::Dimension(format!(
                    "operator {} is {}x{}, lattice rank is {}",
                    op.label,
                    op.matrix.rows(),
                    op.matrix.cols(),
                    r
                )));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for op in &operators {
            if !seen.insert(op.label.clone()) {
                return Err(Error::InvalidInput(format!("duplicate operator label {}", op.label)));
            }
        }
        Ok(HeckeSystem { lattice, operators })
    }

    /// System on `ℤ^n` with the given named matrices.
    pub fn from_matrices(mats: &[IntMatrix]) -> Result<Self> {
        let n = mats.first().map(|m| m.rows()).unwrap_or(0);
        let ops = mats.iter().enumerate().map(|(i, m)| Operator::named(&format!("T{}", i + 1), m.clone())).collect();
        Self::new(Lattice::standard(n), ops)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn operators(&self) -> &[Operator] {
        &self.operators
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn labels(&self) -> Vec<OperatorLabel> {
        self.operators.iter().map(|o| o.label.clone()).collect()
    }

    pub fn matrices(&self) -> Vec<IntMatrix> {
        self.operators.iter().map(|o| o.matrix.clone()).collect()
    }

    fn first_noncommuting_pair(&self) -> Option<(&OperatorLabel, &OperatorLabel)> {
        for (i, a) in self.operators.iter().enumerate() {
            for b in &self.operators[i + 1..] {
                if &a.matrix * &b.matrix != &b.matrix * &a.matrix {
                    return Some((&a.label, &b.label));
                }
            }
        }
        None
    }

    /// The same system with operators in a different order.
    pub fn reordered(&self, order: &[usize]) -> Self {
        HeckeSystem { lattice: self.lattice.clone(), operators: order.iter().map(|&i| self.operators[i].clone()).collect() }
    }
}

/// True iff all operators pairwise commute.
pub fn check_commuting(h: &HeckeSystem) -> bool {
    h.first_noncommuting_pair().is_none()
}

/// A minimal ℚ-rational subspace stable under all operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicComponent {
    /// Integral basis of the saturated lattice `W ∩ ℤ^r`, in Hermite form.
    pub basis: RatMatrix,
    /// Per operator: the monic irreducible polynomial whose power is its
    /// characteristic polynomial on the component.
    pub min_polys: Vec<(OperatorLabel, Vec<BigRational>)>,
    /// Projector onto this component along the sum of the others.
    pub projector: RatMatrix,
    /// Number of complex eigensystems in the Galois orbit.
    pub degree: usize,
    pub semisimple: bool,
}

impl IsotypicComponent {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Multiplicity of each complex eigensystem of the orbit.
    pub fn multiplicity(&self) -> usize {
        self.dim() / self.degree.max(1)
    }

    /// Eigenvalues when the orbit is a single rational eigensystem.
    pub fn rational_eigenvalues(&self) -> Option<Vec<BigRational>> {
        (self.degree == 1).then(|| self.min_polys.iter().map(|(_, g)| -g[0].clone()).collect())
    }
}

fn rat_ops(h: &HeckeSystem) -> Vec<RatMatrix> {
    h.operators.iter().map(|o| o.matrix.to_rational()).collect()
}

/// Subspace of `W` (rows) killed by `g(M)^dim`, where `M` is the operator on `W`.
fn primary_part<F: Field>(f: &F, w: &Matrix<F::Elem>, m: &Matrix<F::Elem>, g: &[F::Elem]) -> Matrix<F::Elem> {
    let gm = dense::eval_poly(f, g, m);
    let gp = dense::matrix_pow(f, &gm, m.rows());
    let y = dense::left_kernel(f, &gp);
    dense::mul(f, &y, w)
}

fn split_rational(w: &RatMatrix, op: &RatMatrix) -> Vec<RatMatrix> {
    let m = dense::restrict(&Rationals, op, w).expect("subspace is stable");
    let facs = factor_rational(&dense::charpoly(&Rationals, &m));
    if facs.len() <= 1 {
        return vec![w.clone()];
    }
    facs.iter().map(|g| primary_part(&Rationals, w, &m, g)).collect()
}

fn flatten(m: &RatMatrix) -> Vec<BigRational> {
    m.entries().to_vec()
}

/// Rational dimension of `A/rad A` for the algebra generated by `mats`: the
/// number of distinct complex eigensystems.
fn eigensystem_count(mats: &[RatMatrix], n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let basis = algebra_span(mats, n);
    let k = basis.len();
    let g = Matrix::from_fn(k, k, |i, j| (&basis[i] * &basis[j]).diagonal().into_iter().sum::<BigRational>());
    dense::rank(&Rationals, &g)
}

/// A ℚ-basis of the unital algebra generated by commuting `mats`.
fn algebra_span(mats: &[RatMatrix], n: usize) -> Vec<RatMatrix> {
    let mut basis = vec![RatMatrix::identity(n)];
    let mut rows = vec![flatten(&basis[0])];
    let mut frontier = basis.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for b in &frontier {
            for t in mats {
                let c = b * t;
                let mut trial = rows.clone();
                trial.push(flatten(&c));
                let mat = Matrix::from_rows(trial.clone(), n * n).expect("rectangular");
                if dense::rank(&Rationals, &mat) == trial.len() {
                    rows = trial;
                    basis.push(c.clone());
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    basis
}

fn combination(ops: &[RatMatrix], k: i64, n: usize) -> RatMatrix {
    let mut acc = RatMatrix::zeros(n, n);
    let mut c = BigRational::one();
    let kk = BigRational::from_integer(BigInt::from(k));
    for t in ops {
        acc = &acc + &t.scale(&c);
        c = &c * &kk;
    }
    acc
}

fn saturated_basis(w: &RatMatrix) -> RatMatrix {
    let l = intersect_with_subspace(&Lattice::standard(w.cols()), w).expect("dimensions agree");
    l.basis().clone()
}

/// Decomposition of `ℚ^r` into minimal operator-stable ℚ-subspaces.
///
/// Splits by the rational factorization of each operator's characteristic
/// polynomial, then by generic combinations `c_k = T_1 + k·T_2 + k²·T_3 + …`.
/// A piece is final once some `c_k` has characteristic polynomial `g^m` with
/// `deg g` equal to the number of distinct complex eigensystems on the piece.
pub fn isotypic_decomposition(h: &HeckeSystem) -> Vec<IsotypicComponent> {
    let r = h.rank();
    if r == 0 {
        return Vec::new();
    }
    let ops = rat_ops(h);
    let mut pieces = vec![RatMatrix::identity(r)];
    for t in &ops {
        pieces = pieces.iter().flat_map(|w| split_rational(w, t)).collect();
    }
    let mut done = Vec::new();
    let mut work = pieces;
    while let Some(w) = work.pop() {
        let dim = w.rows();
        let restricted: Vec<RatMatrix> =
            ops.iter().map(|t| dense::restrict(&Rationals, t, &w).expect("stable")).collect();
        let count = eigensystem_count(&restricted, dim);
        if count <= 1 || ops.len() <= 1 {
            done.push((w, count.max(1)));
            continue;
        }
        let bound = (4 * dim * dim + 8) as i64;
        let mut settled = false;
        for k in 1..=bound {
            let c = combination(&restricted, k, dim);
            let facs = factor_rational(&dense::charpoly(&Rationals, &c));
            if facs.len() > 1 {
                for g in &facs {
                    let sub = primary_part(&Rationals, &RatMatrix::identity(dim), &c, g);
                    work.push(dense::mul(&Rationals, &sub, &w));
                }
                settled = true;
                break;
            }
            if facs[0].len() - 1 == count {
                done.push((w.clone(), count));
                settled = true;
                break;
            }
        }
        if !settled {
            done.push((w, count));
        }
    }
    let mut comps: Vec<IsotypicComponent> = done
        .into_iter()
        .map(|(w, degree)| {
            let basis = saturated_basis(&w);
            let mut semisimple = true;
            let min_polys = h
                .operators
                .iter()
                .zip(&ops)
                .map(|(o, t)| {
                    let m = dense::restrict(&Rationals, t, &basis).expect("stable");
                    let facs = factor_rational(&dense::charpoly(&Rationals, &m));
                    debug_assert_eq!(facs.len(), 1);
                    let g = facs.into_iter().next().unwrap();
                    if !dense::is_zero(&Rationals, &dense::eval_poly(&Rationals, &g, &m)) {
                        semisimple = false;
                    }
                    (o.label.clone(), g)
                })
                .collect();
            IsotypicComponent { basis, min_polys, projector: RatMatrix::zeros(0, 0), degree, semisimple }
        })
        .collect();
    comps.sort_by(|a, b| {
        let ka: Vec<&Vec<BigRational>> = a.min_polys.iter().map(|(_, g)| g).collect();
        let kb: Vec<&Vec<BigRational>> = b.min_polys.iter().map(|(_, g)| g).collect();
        (a.basis.rows(), ka).cmp(&(b.basis.rows(), kb)).then_with(|| a.basis.entries().cmp(b.basis.entries()))
    });
    let stacked = comps
        .iter()
        .fold(RatMatrix::zeros(0, r), |acc, c| acc.vstack(&c.basis).expect("same width"));
    let sinv = dense::inverse(&Rationals, &stacked).expect("components span the space");
    let mut offset = 0;
    for c in &mut comps {
        let k = c.basis.rows();
        let e = Matrix::from_fn(r, r, |i, j| {
            if i == j && i >= offset && i < offset + k {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        c.projector = &(&sinv * &e) * &stacked;
        offset += k;
    }
    comps
}

/// `(e1, e2)`: the projector onto the selected components and its complement.
pub fn projector_pair(components: &[IsotypicComponent], selection: &[usize]) -> Result<(RatMatrix, RatMatrix)> {
    if selection.is_empty() {
        return Err(Error::InvalidSelection("empty selection".into()));
    }
    let mut sel: Vec<usize> = selection.to_vec();
    sel.sort_unstable();
    sel.dedup();
    if let Some(&bad) = sel.iter().find(|&&i| i >= components.len()) {
        return Err(Error::InvalidSelection(format!("component {bad} does not exist")));
    }
    if sel.len() == components.len() {
        return Err(Error::InvalidSelection("selection contains every component".into()));
    }
    let r = components[0].projector.rows();
    let e1 = sel.iter().fold(RatMatrix::zeros(r, r), |acc, &i| &acc + &components[i].projector);
    let e2 = &RatMatrix::identity(r) - &e1;
    Ok((e1, e2))
}

/// ℤ-basis (Hermite form, flattened `r×r` matrices as rows) of the unital
/// ring generated by the operators.
pub fn integral_algebra(h: &HeckeSystem) -> IntMatrix {
    let r = h.rank();
    let gens = h.matrices();
    let flat = |m: &IntMatrix| m.entries().to_vec();
    let mut basis = hnf(&Matrix::from_rows(vec![flat(&IntMatrix::identity(r))], r * r).expect("shape")).basis();
    loop {
        let mut rows = basis.to_rows();
        for b in basis.to_rows() {
            let bm = Matrix::from_vec(r, r, b).expect("shape");
            for t in &gens {
                rows.push(flat(&(&bm * t)));
            }
        }
        let next = hnf(&Matrix::from_rows(rows, r * r).expect("shape")).basis();
        if next == basis {
            return basis;
        }
        basis = next;
    }
}

/// Saturated block lattice `span(w) ∩ ℤ^r` and the operators restricted to it.
pub fn block(h: &HeckeSystem, w: &RatMatrix) -> Result<(IntMatrix, Vec<IntMatrix>)> {
    let x = saturated_basis(&dense::row_space(&Rationals, w));
    let mut mats = Vec::new();
    for op in &h.operators {
        let t = op.matrix.to_rational();
        let m = dense::restrict(&Rationals, &t, &x)
            .ok_or_else(|| Error::NotStable(op.label.to_string()))?;
        mats.push(m.to_integer().ok_or_else(|| Error::NotStable(op.label.to_string()))?);
    }
    Ok((x.to_integer().expect("saturated basis is integral"), mats))
}

/// A simultaneous eigensystem of the reduced operators with values in the
/// canonical field `F_{p^degree}`, where `degree` is the degree of the field
/// generated by the values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModPEigensystem {
    pub p: u64,
    pub degree: usize,
    /// Values, one per operator, as coefficient vectors over `F_p` in the
    /// canonical basis of `F_{p^degree}`.
    pub values: Vec<Vec<u64>>,
    pub labels: Vec<OperatorLabel>,
    /// Dimension of the simultaneous generalized eigenspace.
    pub multiplicity: usize,
}

impl ModPEigensystem {
    pub fn field(&self) -> ExtensionField {
        ExtensionField::canonical(self.p, self.degree)
    }

    /// Same residue character, ignoring multiplicity.
    pub fn same_character(&self, other: &ModPEigensystem) -> bool {
        self.p == other.p && self.degree == other.degree && self.values == other.values
    }

    /// Values in `F_p` when the degree is 1.
    pub fn prime_field_values(&self) -> Option<Vec<u64>> {
        (self.degree == 1).then(|| self.values.iter().map(|v| v[0]).collect())
    }
}

impl fmt::Display for ModPEigensystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self
            .labels
            .iter()
            .zip(&self.values)
            .map(|(l, v)| {
                if self.degree == 1 {
                    format!("{l}={}", v[0])
                } else {
                    format!("{l}={v:?}")
                }
            })
            .collect();
        write!(f, "F_{}^{}: {} (mult {})", self.p, self.degree, vals.join(", "), self.multiplicity)
    }
}

fn lcm_all(v: &[usize]) -> usize {
    v.iter().fold(1, |a, &b| a.lcm(&b))
}

/// Simultaneous eigensystems over `F̄_p` of integer matrices reduced mod p.
pub fn eigensystems_of_matrices(p: u64, mats: &[IntMatrix], labels: &[OperatorLabel]) -> Vec<ModPEigensystem> {
    let n = mats.first().map(|m| m.rows()).unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let fp = PrimeField::new(p);
    let red: Vec<Matrix<u64>> = mats.iter().map(|m| m.map(|x| fp.from_int(x))).collect();
    let mut pieces = vec![(dense::identity(&fp, n), Vec::<usize>::new())];
    for a in &red {
        let mut next = Vec::new();
        for (w, tags) in pieces {
            let m = dense::restrict(&fp, a, &w).expect("stable");
            for (g, d) in distinct_degree_split(&fp, &dense::charpoly(&fp, &m)) {
                let sub = primary_part(&fp, &w, &m, &g);
                let mut t = tags.clone();
                t.push(d);
                next.push((sub, t));
            }
        }
        pieces = next;
    }
    let mut out = Vec::new();
    for (w, tags) in pieces {
        let m = lcm_all(&tags);
        let ext = ExtensionField::canonical(p, m);
        let lifted: Vec<Matrix<Vec<u64>>> = red
            .iter()
            .map(|a| dense::restrict(&fp, a, &w).expect("stable").map(|&x| ext.from_base(x)))
            .collect();
        let mut spaces = vec![(dense::identity(&ext, w.rows()), Vec::<Vec<u64>>::new())];
        for a in &lifted {
            let mut next = Vec::new();
            for (u, vals) in spaces {
                let nmat = dense::restrict(&ext, a, &u).expect("stable");
                for lam in roots(&ext, &dense::charpoly(&ext, &nmat)) {
                    let shifted = dense::sub(&ext, &nmat, &dense::scale(&ext, &lam, &dense::identity(&ext, nmat.rows())));
                    let k = dense::left_kernel(&ext, &dense::matrix_pow(&ext, &shifted, nmat.rows()));
                    let mut v = vals.clone();
                    v.push(lam);
                    next.push((dense::mul(&ext, &k, &u), v));
                }
            }
            spaces = next;
        }
        for (u, values) in spaces {
            out.push(ModPEigensystem { p, degree: m, values, labels: labels.to_vec(), multiplicity: u.rows() });
        }
    }
    out.sort();
    out
}

/// All simultaneous eigensystems over `F_{p^m}` (any `m`) of the reduced
/// operators, optionally on the block cut out by a projector. Each is listed
/// once per Frobenius conjugate, ordered lexicographically.
pub fn mod_p_eigensystems(h: &HeckeSystem, p: u64, restrict: Option<&RatMatrix>) -> Result<Vec<ModPEigensystem>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let labels = h.labels();
    match restrict {
        None => Ok(eigensystems_of_matrices(p, &h.matrices(), &labels)),
        Some(e) => {
            if e.rows() != h.rank() || e.cols() != h.rank() {
                return Err(Error::Dimension("projector size does not match the lattice rank".into()));
            }
            let (x, mats) = block(h, e)?;
            if x.rows() == 0 {
                return Ok(Vec::new());
            }
            if mats.is_empty() {
                return Ok(vec![ModPEigensystem { p, degree: 1, values: Vec::new(), labels, multiplicity: x.rows() }]);
            }
            Ok(eigensystems_of_matrices(p, &mats, &labels))
        }
    }
}

/// Reduces a rational number into `F_p` (denominator must be prime to p).
pub fn reduce_rational(x: &BigRational, p: u64) -> Option<u64> {
    let f = PrimeField::new(p);
    let d = f.from_int(x.denom());
    (d != 0).then(|| f.mul(&f.from_int(x.numer()), &f.inv(&d)))
}

/// `true` when `e` lies in the ℚ-span of the operator algebra.
pub fn in_rational_algebra(h: &HeckeSystem, e: &RatMatrix) -> bool {
    let alg = integral_algebra(h).to_rational();
    let row = Matrix::from_rows(vec![e.entries().to_vec()], e.rows() * e.cols()).expect("shape");
    dense::solve_left(&Rationals, &alg, &row).is_some()
}

/// Degree of a rational polynomial (for reporting).
pub fn poly_degree(g: &[BigRational]) -> usize {
    poly::degree(&Rationals, g).unwrap_or(0)
}

/// Monic polynomial of `[BigRational]` evaluated at an integer matrix.
pub fn is_annihilated(g: &[BigRational], m: &IntMatrix) -> bool {
    let v = dense::eval_poly(&Rationals, g, &m.to_rational());
    v.entries().iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(mats: &[&[[i64; 2]]]) -> HeckeSystem {
        HeckeSystem::from_matrices(&mats.iter().map(|m| IntMatrix::from_i64(m)).collect::<Vec<_>>()).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn commutation() {
        assert!(check_commuting(&sys(&[&[[1, 0], [0, 2]], &[[3, 0], [0, 4]]])));
        let bad = HeckeSystem::new_unchecked(
            Lattice::standard(2),
            vec![
                Operator::named("A", IntMatrix::from_i64(&[[0, 1], [1, 0]])),
                Operator::named("B", IntMatrix::from_i64(&[[1, 1], [0, 1]])),
            ],
        )
        .unwrap();
        assert!(!check_commuting(&bad));
        assert!(check_commuting(&sys(&[&[[5, 1], [0, 5]]])));
    }

    #[test]
    fn swap_splits_into_eigenlines() {
        let h = sys(&[&[[0, 1], [1, 0]]]);
        let comps = isotypic_decomposition(&h);
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.dim() == 1 && c.degree == 1));
        let vals: Vec<BigRational> = comps.iter().map(|c| c.rational_eigenvalues().unwrap()[0].clone()).collect();
        assert_eq!(vals, vec![q(1, 1), q(-1, 1)]);
        let plus = comps.iter().position(|c| c.rational_eigenvalues().unwrap()[0] == q(1, 1)).unwrap();
        let (e1, e2) = projector_pair(&comps, &[plus]).unwrap();
        let half = q(1, 2);
        assert_eq!(e1, Matrix::from_fn(2, 2, |_, _| half.clone()));
        assert_eq!(&e1 + &e2, RatMatrix::identity(2));
    }

    #[test]
    fn irreducible_quadratic_is_one_orbit() {
        let comps = isotypic_decomposition(&sys(&[&[[0, 2], [1, 0]]]));
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].degree, 2);
        assert_eq!(comps[0].min_polys[0].1, vec![q(-2, 1), q(0, 1), q(1, 1)]);
    }

    #[test]
    fn identity_is_one_component() {
        let comps = isotypic_decomposition(&sys(&[&[[1, 0], [0, 1]]]));
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].dim(), 2);
        assert!(projector_pair(&comps, &[0]).is_err());
        assert!(projector_pair(&comps, &[]).is_err());
    }

    #[test]
    fn jordan_block_is_flagged() {
        let comps = isotypic_decomposition(&sys(&[&[[3, 1], [0, 3]]]));
        assert_eq!(comps.len(), 1);
        assert!(!comps[0].semisimple);
    }

    #[test]
    fn eigensystems_mod_p() {
        let e = mod_p_eigensystems(&sys(&[&[[0, 1], [1, 0]]]), 2, None).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!((e[0].values.clone(), e[0].multiplicity), (vec![vec![1]], 2));
        let e = mod_p_eigensystems(&sys(&[&[[1, 0], [0, 5]]]), 2, None).unwrap();
        assert_eq!((e[0].values.clone(), e[0].multiplicity), (vec![vec![1]], 2));
        let e = mod_p_eigensystems(&sys(&[&[[0, 2], [1, 0]]]), 7, None).unwrap();
        let vals: Vec<u64> = e.iter().map(|x| x.values[0][0]).collect();
        assert_eq!(vals, vec![3, 4]);
    }

    #[test]
    fn conjugate_eigensystems_over_extension() {
        // x^2 + 1 is irreducible mod 3: two conjugate eigensystems over F_9
        let e = mod_p_eigensystems(&sys(&[&[[0, -1], [1, 0]]]), 3, None).unwrap();
        assert_eq!(e.len(), 2);
        assert!(e.iter().all(|x| x.degree == 2 && x.multiplicity == 1));
        assert_ne!(e[0].values, e[1].values);
    }

    #[test]
    fn integral_algebra_of_swap() {
        let h = sys(&[&[[0, 1], [1, 0]]]);
        let alg = integral_algebra(&h);
        assert_eq!(alg.rows(), 2);
    }
}
