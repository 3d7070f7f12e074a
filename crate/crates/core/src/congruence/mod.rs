//! Congruence modules of lattices and of Hecke algebras, the discriminant
//! criterion, and lifting of residual eigensystems.

pub mod detect;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{dense, Field, Rationals};
use crate::hecke::{
    block, check_commuting, in_rational_algebra, integral_algebra, isotypic_decomposition, mod_p_eigensystems,
    HeckeSystem, ModPEigensystem,
};
use crate::lattice::{
    discriminant, dual_lattice, intersect_with_subspace, is_perfect, project, BilinearPairing, Lattice,
    SplitDecomposition,
};
use crate::linalg::{is_prime, prime_divisors, valuation, Matrix, RatMatrix};

/// A finite abelian group `⊕ ℤ/dᵢ` with `1 < d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceModule {
    pub elementary_divisors: Vec<BigInt>,
    pub order: BigInt,
    pub support: Vec<BigInt>,
}

impl CongruenceModule {
    pub fn from_divisors(divisors: Vec<BigInt>) -> Self {
        let elementary_divisors: Vec<BigInt> = divisors.into_iter().filter(|d| *d > BigInt::one()).collect();
        let order: BigInt = elementary_divisors.iter().product();
        let support = if order.is_one() { Vec::new() } else { prime_divisors(&order) };
        CongruenceModule { elementary_divisors, order, support }
    }

    pub fn trivial() -> Self {
        Self::from_divisors(Vec::new())
    }

    pub fn is_trivial(&self) -> bool {
        self.elementary_divisors.is_empty()
    }

    pub fn supported_at(&self, p: u64) -> bool {
        self.support.contains(&BigInt::from(p))
    }
}

/// The three isomorphic quotients attached to a lattice and a splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceQuotients {
    /// `(Λ₁ ⊕ Λ₂)/L`.
    pub module: CongruenceModule,
    /// `Λ₁/L₁`.
    pub first: CongruenceModule,
    /// `Λ₂/L₂`.
    pub second: CongruenceModule,
    pub lambda1: Lattice,
    pub lambda2: Lattice,
    pub l1: Lattice,
    pub l2: Lattice,
}

/// All three quotients, without asserting that they agree.
pub fn congruence_quotients(l: &Lattice, split: &SplitDecomposition) -> Result<CongruenceQuotients> {
    let n = l.ambient_dim();
    if split.p1.rows() != n || split.p1.cols() != n {
        return Err(Error::Dimension("projector does not act on the lattice's ambient space".into()));
    }
    if &split.p1 + &split.p2 != RatMatrix::identity(n) {
        return Err(Error::InvalidProjector("projectors do not sum to the identity".into()));
    }
    if !l.is_full_rank() {
        return Err(Error::Dimension("lattice must have full rank in its ambient space".into()));
    }
    let lambda1 = project(l, &split.p1);
    let lambda2 = project(l, &split.p2);
    let l1 = intersect_with_subspace(l, &split.image1())?;
    let l2 = intersect_with_subspace(l, &split.image2())?;
    let sum = lambda1.sum(&lambda2)?;
    let module = CongruenceModule::from_divisors(sum.quotient_divisors(l)?);
    let first = CongruenceModule::from_divisors(lambda1.quotient_divisors(&l1)?);
    let second = CongruenceModule::from_divisors(lambda2.quotient_divisors(&l2)?);
    Ok(CongruenceQuotients { module, first, second, lambda1, lambda2, l1, l2 })
}

/// `C(L; V₁, V₂) = (Λ₁ ⊕ Λ₂)/L`, checked against `Λ₁/L₁` and `Λ₂/L₂`.
pub fn congruence_module(l: &Lattice, split: &SplitDecomposition) -> Result<CongruenceModule> {
    let q = congruence_quotients(l, split)?;
    if q.module != q.first || q.module != q.second {
        return Err(Error::Invariant(format!(
            "congruence quotients disagree: {:?}, {:?}, {:?}",
            q.module.elementary_divisors, q.first.elementary_divisors, q.second.elementary_divisors
        )));
    }
    Ok(q.module)
}

/// Outcome of comparing the discriminant and the congruence module at `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiscOutcome {
    Decided { valuation_positive: bool, module_nontrivial_at_p: bool },
    /// The pairing is not perfect at `p`; `obstruction_primes` are the
    /// primes where `L*` and `M` differ.
    Excluded { obstruction_primes: Vec<BigInt> },
}

/// Primes at which `L* ≠ M` (empty for a perfect pairing).
pub fn obstruction_primes(l: &Lattice, m: &Lattice, pairing: &BilinearPairing) -> Result<Vec<BigInt>> {
    if is_perfect(l, m, pairing) {
        return Ok(Vec::new());
    }
    let l_dual = dual_lattice(l, &pairing.transpose(), Some(&m.span()))?;
    let sum = l_dual.sum(m)?;
    let mut primes = Vec::new();
    for sub in [&l_dual, m] {
        let order: BigInt = sum.quotient_divisors(sub)?.iter().product();
        if !order.is_one() {
            primes.extend(prime_divisors(&order));
        }
    }
    primes.sort();
    primes.dedup();
    Ok(primes)
}

/// `v_p(disc(L₁ × M₁)) > 0` against `p ∈ supp C(L; V₁, V₂)`, with
/// `L₁ = L ∩ V₁` and `M₁ = M ∩ Ṽ₁`.
pub fn disc_equivalence(
    l: &Lattice,
    m: &Lattice,
    pairing: &BilinearPairing,
    split: &SplitDecomposition,
    p: u64,
) -> Result<DiscOutcome> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let obstruction = obstruction_primes(l, m, pairing)?;
    if !obstruction.is_empty() && obstruction.contains(&BigInt::from(p)) {
        return Ok(DiscOutcome::Excluded { obstruction_primes: obstruction });
    }
    let l1 = intersect_with_subspace(l, &split.image1())?;
    let m1 = intersect_with_subspace(m, &split.image1t())?;
    let disc = discriminant(&l1, &m1, pairing)?;
    let valuation_positive = valuation(&disc, p)?.is_positive();
    let module = congruence_module(l, split)?;
    let module_nontrivial_at_p = module.supported_at(p);
    if valuation_positive != module_nontrivial_at_p {
        return Err(Error::Invariant(format!(
            "v_{p}(disc) > 0 is {valuation_positive} but p in supp(C) is {module_nontrivial_at_p}"
        )));
    }
    Ok(DiscOutcome::Decided { valuation_positive, module_nontrivial_at_p })
}

/// `π₁(L) = (M ∩ Ṽ₁)*`, the dual taken inside `V₁`.
pub fn projection_is_dual(l: &Lattice, m: &Lattice, pairing: &BilinearPairing, split: &SplitDecomposition) -> Result<bool> {
    let lambda1 = project(l, &split.p1);
    let m1 = intersect_with_subspace(m, &split.image1t())?;
    let dual = dual_lattice(&m1, pairing, Some(&split.image1()))?;
    Ok(lambda1 == dual)
}

fn check_projector_pair(h: &HeckeSystem, e1: &RatMatrix, e2: &RatMatrix) -> Result<()> {
    let r = h.rank();
    for e in [e1, e2] {
        if e.rows() != r || e.cols() != r {
            return Err(Error::Dimension("projector size does not match the lattice rank".into()));
        }
        if &(e * e) != e {
            return Err(Error::InvalidProjector("not idempotent".into()));
        }
    }
    if e1 + e2 != RatMatrix::identity(r) {
        return Err(Error::InvalidProjector("projectors do not sum to the identity".into()));
    }
    if !in_rational_algebra(h, e1) {
        return Err(Error::ProjectorOutsideAlgebra);
    }
    Ok(())
}

/// `Q(H°; e₁, e₂) = H°/(H°₁ ⊕ H°₂)` with `H°ᵢ = H° ∩ eᵢ·H°_ℚ`.
pub fn hecke_congruence_module(h: &HeckeSystem, e1: &RatMatrix, e2: &RatMatrix) -> Result<CongruenceModule> {
    if !check_commuting(h) {
        let ops = h.operators();
        for (i, a) in ops.iter().enumerate() {
            for b in &ops[i + 1..] {
                if &a.matrix * &b.matrix != &b.matrix * &a.matrix {
                    return Err(Error::NonCommuting(a.label.to_string(), b.label.to_string()));
                }
            }
        }
    }
    check_projector_pair(h, e1, e2)?;
    let r = h.rank();
    let alg = integral_algebra(h);
    let h0 = Lattice::from_integer(&alg)?;
    let mut parts = Vec::new();
    for e in [e1, e2] {
        let rows: Vec<Vec<BigRational>> = alg
            .to_rows()
            .into_iter()
            .map(|b| {
                let bm = Matrix::from_vec(r, r, b.into_iter().map(BigRational::from_integer).collect()).expect("shape");
                (e * &bm).entries().to_vec()
            })
            .collect();
        let span = Matrix::from_rows(rows, r * r)?;
        parts.push(intersect_with_subspace(&h0, &span)?);
    }
    let sub = parts[0].sum(&parts[1])?;
    Ok(CongruenceModule::from_divisors(h0.quotient_divisors(&sub)?))
}

/// `supp C(L; V₁, V₂) ⊆ supp Q(H°; e₁, e₂)`, the prime-by-prime form of
/// `C ≠ 0 ⟹ Q ≠ 0`.
pub fn strong_congruence_check(
    l: &Lattice,
    split: &SplitDecomposition,
    h: &HeckeSystem,
    e1: &RatMatrix,
    e2: &RatMatrix,
) -> Result<bool> {
    let c = congruence_module(l, split)?;
    let q = hecke_congruence_module(h, e1, e2)?;
    Ok(c.support.iter().all(|p| q.support.contains(p)) && (c.is_trivial() || !q.is_trivial()))
}

/// A characteristic-zero eigensystem reducing to a given residual one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharZeroLift {
    /// A rational eigensystem (component of degree 1).
    Rational { component: usize, values: Vec<BigRational> },
    /// A Galois orbit of eigensystems, given by the isotypic component and
    /// the irreducible polynomial of each operator on it.
    Orbit { component: usize, min_polys: Vec<Vec<BigRational>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftResult {
    pub residual: ModPEigensystem,
    pub lift: CharZeroLift,
}

/// Every eigensystem on `im e₂` congruent to `chi1` modulo a prime above
/// `p`, sorted by residues, each with a characteristic-zero lift.
pub fn deligne_serre_lift(
    h: &HeckeSystem,
    e1: &RatMatrix,
    e2: &RatMatrix,
    p: u64,
    chi1: &ModPEigensystem,
) -> Result<Vec<LiftResult>> {
    check_projector_pair(h, e1, e2)?;
    let first = mod_p_eigensystems(h, p, Some(e1))?;
    if !first.iter().any(|c| c.same_character(chi1)) {
        return Err(Error::InvalidInput("chi1 is not an eigensystem of the e1 block".into()));
    }
    let second = mod_p_eigensystems(h, p, Some(e2))?;
    let matches: Vec<&ModPEigensystem> = second.iter().filter(|c| c.same_character(chi1)).collect();
    if matches.is_empty() {
        return Err(Error::NoCongruentEigensystem(p));
    }
    let comps = isotypic_decomposition(h);
    let e2_space = dense::row_space(&Rationals, e2);
    let mut out = Vec::new();
    for (idx, comp) in comps.iter().enumerate() {
        let inside = dense::rank(&Rationals, &e2_space.vstack(&comp.basis)?) == e2_space.rows();
        if !inside {
            continue;
        }
        let (_, mats) = block(h, &comp.basis)?;
        let local = crate::hecke::eigensystems_of_matrices(p, &mats, &h.labels());
        for m in &matches {
            if local.iter().any(|c| c.same_character(m)) {
                let lift = match comp.rational_eigenvalues() {
                    Some(values) => CharZeroLift::Rational { component: idx, values },
                    None => CharZeroLift::Orbit {
                        component: idx,
                        min_polys: comp.min_polys.iter().map(|(_, g)| g.clone()).collect(),
                    },
                };
                out.push(LiftResult { residual: (*m).clone(), lift });
            }
        }
    }
    out.sort_by(|a, b| a.residual.cmp(&b.residual));
    Ok(out)
}

/// Independent check that a residual eigensystem has a common eigenvector
/// for the given integer matrices.
pub fn has_common_eigenvector(mats: &[crate::linalg::IntMatrix], chi: &ModPEigensystem) -> bool {
    let f = chi.field();
    let n = mats.first().map(|m| m.rows()).unwrap_or(0);
    if n == 0 {
        return false;
    }
    let base = f.base();
    let mut space = dense::identity(&f, n);
    for (m, lam) in mats.iter().zip(&chi.values) {
        let a = m.map(|x| f.from_base(base.from_int(x)));
        let restricted = dense::mul(&f, &space, &dense::sub(&f, &a, &dense::scale(&f, lam, &dense::identity(&f, n))));
        let k = dense::left_kernel(&f, &restricted);
        space = dense::mul(&f, &k, &space);
        if space.rows() == 0 {
            return false;
        }
    }
    space.rows() > 0 && !space.entries().iter().all(|x| f.is_zero(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::projector_pair;
    use crate::linalg::IntMatrix;

    fn split_diag() -> SplitDecomposition {
        let v1 = RatMatrix::from_i64(&[[1, 1]]);
        let v2 = RatMatrix::from_i64(&[[1, -1]]);
        let p1 = SplitDecomposition::projector_from_subspaces(&v1, &v2).unwrap();
        SplitDecomposition::from_projector(p1, &BilinearPairing::standard(2)).unwrap()
    }

    #[test]
    fn toy_mod_two_module() {
        let c = congruence_module(&Lattice::standard(2), &split_diag()).unwrap();
        assert_eq!(c.elementary_divisors, vec![BigInt::from(2)]);
        assert_eq!(c.support, vec![BigInt::from(2)]);
    }

    #[test]
    fn unimodular_split_is_trivial() {
        let v1 = RatMatrix::from_i64(&[[2, 1]]);
        let v2 = RatMatrix::from_i64(&[[1, 1]]);
        let p1 = SplitDecomposition::projector_from_subspaces(&v1, &v2).unwrap();
        let id = RatMatrix::identity(2);
        let split = SplitDecomposition { p2: &id - &p1, p1t: id.clone(), p2t: RatMatrix::zeros(2, 2), p1 };
        assert!(congruence_module(&Lattice::standard(2), &split).unwrap().is_trivial());
    }

    #[test]
    fn discriminant_criterion_on_toy_instance() {
        let l = Lattice::standard(2);
        let dot = BilinearPairing::standard(2);
        let s = split_diag();
        let two = disc_equivalence(&l, &l, &dot, &s, 2).unwrap();
        assert_eq!(two, DiscOutcome::Decided { valuation_positive: true, module_nontrivial_at_p: true });
        let three = disc_equivalence(&l, &l, &dot, &s, 3).unwrap();
        assert_eq!(three, DiscOutcome::Decided { valuation_positive: false, module_nontrivial_at_p: false });
        assert!(projection_is_dual(&l, &l, &dot, &s).unwrap());
    }

    #[test]
    fn imperfect_pairing_is_excluded() {
        let l = Lattice::standard(2);
        let m = Lattice::from_integer(&IntMatrix::from_i64(&[[2, 0], [0, 2]])).unwrap();
        let out = disc_equivalence(&l, &m, &BilinearPairing::standard(2), &split_diag(), 2).unwrap();
        assert_eq!(out, DiscOutcome::Excluded { obstruction_primes: vec![BigInt::from(2)] });
    }

    #[test]
    fn hecke_module_of_swap_and_diag() {
        let h = HeckeSystem::from_matrices(&[IntMatrix::from_i64(&[[0, 1], [1, 0]])]).unwrap();
        let comps = isotypic_decomposition(&h);
        let (e1, e2) = projector_pair(&comps, &[0]).unwrap();
        let q = hecke_congruence_module(&h, &e1, &e2).unwrap();
        assert_eq!(q.elementary_divisors, vec![BigInt::from(2)]);
        let d = HeckeSystem::from_matrices(&[IntMatrix::from_i64(&[[1, 0], [0, 3]])]).unwrap();
        let comps = isotypic_decomposition(&d);
        let (e1, e2) = projector_pair(&comps, &[0]).unwrap();
        assert_eq!(hecke_congruence_module(&d, &e1, &e2).unwrap().elementary_divisors, vec![BigInt::from(2)]);
    }

    #[test]
    fn lift_of_swap_eigensystem() {
        let h = HeckeSystem::from_matrices(&[IntMatrix::from_i64(&[[0, 1], [1, 0]])]).unwrap();
        let comps = isotypic_decomposition(&h);
        let plus = comps.iter().position(|c| c.rational_eigenvalues().unwrap()[0].is_one()).unwrap();
        let (e1, e2) = projector_pair(&comps, &[plus]).unwrap();
        let chi1 = mod_p_eigensystems(&h, 2, Some(&e1)).unwrap().remove(0);
        let lifts = deligne_serre_lift(&h, &e1, &e2, 2, &chi1).unwrap();
        assert_eq!(lifts.len(), 1);
        match &lifts[0].lift {
            CharZeroLift::Rational { values, .. } => assert_eq!(values[0], -BigRational::one()),
            other => panic!("unexpected lift {other:?}"),
        }
    }

    #[test]
    fn lift_fails_without_congruence() {
        let h = HeckeSystem::from_matrices(&[
            IntMatrix::from_i64(&[[1, 0], [0, 5]]),
            IntMatrix::from_i64(&[[2, 0], [0, 7]]),
        ])
        .unwrap();
        let comps = isotypic_decomposition(&h);
        for p in [2u64, 3, 5] {
            let (e1, e2) = projector_pair(&comps, &[0]).unwrap();
            let chi1 = mod_p_eigensystems(&h, p, Some(&e1)).unwrap().remove(0);
            assert_eq!(deligne_serre_lift(&h, &e1, &e2, p, &chi1), Err(Error::NoCongruentEigensystem(p)));
        }
    }
}
