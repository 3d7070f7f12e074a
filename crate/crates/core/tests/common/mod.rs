//! Independent oracles and instance suites shared by the integration tests
//! and the acceptance target.
#![allow(dead_code)]

use std::collections::BTreeMap;

use congruence_core::congruence::detect::PairingData;
use congruence_core::congruence::{
    congruence_quotients, deligne_serre_lift, disc_equivalence, has_common_eigenvector, hecke_congruence_module, projection_is_dual,
    CharZeroLift, DiscOutcome,
};
use congruence_core::hecke::{block, isotypic_decomposition, mod_p_eigensystems, projector_pair, reduce_rational, HeckeSystem};
use congruence_core::io::generate::random_system;
use congruence_core::lattice::SplitDecomposition;
use congruence_core::linalg::{prime_divisors, IntMatrix, RatMatrix};
use congruence_core::field::{dense, Rationals};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde_json::Value;

// ---- integer determinants -------------------------------------------------

/// Bareiss elimination on i128; every intermediate value is a minor.
pub fn det_i128(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all k×k minors.
pub fn minor_gcd(a: &[Vec<i64>], k: usize) -> i128 {
    let (m, n) = (a.len(), a[0].len());
    let mut g = 0i128;
    for rs in subsets(m, k) {
        for cs in subsets(n, k) {
            let sub: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j] as i128).collect()).collect();
            g = g.gcd(&det_i128(sub));
            if g == 1 {
                return 1;
            }
        }
    }
    g
}

// ---- residual eigensystems by exhaustion ----------------------------------

fn rank_mod_p(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][c] % p != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..a.len() {
            if i != rank && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p - f * a[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn to_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Every `(a₁, …, a_k) ∈ F_p^k` admitting a common row vector `x ≠ 0` with
/// `x·Tᵢ = aᵢ·x` mod p, by trying all tuples.
pub fn exhaustive_eigensystems(p: u64, mats: &[IntMatrix]) -> Vec<Vec<u64>> {
    let n = mats.first().map(|m| m.rows()).unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let k = mats.len();
    let reduced: Vec<Vec<Vec<u64>>> =
        mats.iter().map(|m| (0..n).map(|i| (0..n).map(|j| to_mod(&m[(i, j)], p)).collect()).collect()).collect();
    let mut out = Vec::new();
    let mut tuple = vec![0u64; k];
    loop {
        // rows of [T₁ − a₁ | … | T_k − a_k]; a nonzero left kernel means a common eigenvector
        let stacked: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut row = Vec::with_capacity(n * k);
                for (t, a) in reduced.iter().zip(&tuple) {
                    for j in 0..n {
                        let v = if i == j { (t[i][j] + p - a) % p } else { t[i][j] };
                        row.push(v);
                    }
                }
                row
            })
            .collect();
        if rank_mod_p(stacked, p) < n {
            out.push(tuple.clone());
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            tuple[i] += 1;
            if tuple[i] < p {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

// ---- modular curves and forms ---------------------------------------------

fn legendre_like(p: u64, d: i64) -> i64 {
    // (d/p) for p odd prime, or the Kronecker symbol at 2 for d ≡ 1 mod 4
    if p == 2 {
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let r = pow_mod(d.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
    match r {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn euler_phi(n: u64) -> u64 {
    factor(n).iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Genus of X₀(N) from the classical formula `1 + μ/12 − ν₂/4 − ν₃/3 − ν∞/2`.
pub fn genus_x0(n: u64) -> u64 {
    let fs = factor(n);
    let mu: u64 = fs.iter().fold(n, |acc, (p, _)| acc / p * (p + 1));
    let nu2: i64 = if n % 4 == 0 { 0 } else { fs.iter().map(|(p, _)| 1 + legendre_like(*p, -1) * (*p != 2) as i64).product() };
    let nu3: i64 = if n % 9 == 0 { 0 } else { fs.iter().map(|(p, _)| if *p == 3 { 1 } else { 1 + legendre_like(*p, -3) }).product() };
    let nuinf: u64 = (1..=n).filter(|d| n % d == 0).map(|d| euler_phi(d.gcd(&(n / d)))).sum();
    // 12g = 12 + μ − 3ν₂ − 4ν₃ − 6ν∞
    let twelve_g = 12 + mu as i64 - 3 * nu2 - 4 * nu3 - 6 * nuinf as i64;
    assert!(twelve_g >= 0 && twelve_g % 12 == 0, "genus formula for N = {n}");
    (twelve_g / 12) as u64
}

/// `a_p = p + 1 − #E(F_p)` for `y² + a₁xy + a₃y = x³ + a₂x² + a₄x + a₆`.
pub fn elliptic_ap(coeffs: [i64; 5], p: u64) -> i64 {
    let [a1, a2, a3, a4, a6] = coeffs.map(|c| c.rem_euclid(p as i64) as u64);
    let mut affine = 0u64;
    for x in 0..p {
        for y in 0..p {
            let lhs = (y * y + a1 * x % p * y + a3 * y) % p;
            let rhs = (x * x % p * x + a2 * x % p * x + a4 * x + a6) % p;
            if lhs == rhs {
                affine += 1;
            }
        }
    }
    p as i64 + 1 - (affine as i64 + 1)
}

/// Coefficients of `q·∏(1 − qᵏ)²⁴` up to `q^bound`.
pub fn ramanujan_tau(bound: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); bound + 1];
    c[1] = BigInt::from(1);
    for k in 1..=bound {
        for _ in 0..24 {
            for i in (k..=bound).rev() {
                let t = c[i - k].clone();
                c[i] -= t;
            }
        }
    }
    c
}

// ---- the paired-instance suite --------------------------------------------

pub struct SuiteInstance {
    pub seed: u64,
    pub system: HeckeSystem,
    pub pairing: PairingData,
    pub meta: BTreeMap<String, Value>,
}

/// Deterministic generated instances with perfect pairings.
pub fn paired_suite(count: u64) -> Vec<SuiteInstance> {
    (0..count)
        .map(|seed| {
            let dim = 2 + (seed % 5) as usize;
            let ops = 1 + (seed % 3) as usize;
            let plant = [None, Some(2), Some(3), Some(5), Some(7)][(seed % 5) as usize];
            let (system, pairing, meta) = random_system(1000 + seed, dim, ops, plant).expect("generator");
            SuiteInstance { seed, system, pairing, meta }
        })
        .collect()
}

/// Splits of one isotypic component against the rest: `(e₁, e₂)` in
/// lattice coordinates and the ambient splitting.
pub fn single_component_splits(inst: &SuiteInstance) -> Vec<(RatMatrix, RatMatrix, SplitDecomposition)> {
    let comps = isotypic_decomposition(&inst.system);
    if comps.len() < 2 {
        return Vec::new();
    }
    let b = inst.system.lattice().basis();
    let binv = dense::inverse(&Rationals, b).expect("full rank");
    (0..comps.len())
        .map(|i| {
            let (e1, e2) = projector_pair(&comps, &[i]).expect("valid selection");
            let ambient = &(&binv * &e1) * b;
            let split = SplitDecomposition::from_projector(ambient, &inst.pairing.pairing).expect("adjoint split");
            (e1, e2, split)
        })
        .collect()
}

/// Lattice lemma and disc criterion for one split; `Err` describes a failure.
pub fn check_lattice_lemma(inst: &SuiteInstance, split: &SplitDecomposition) -> Result<(), String> {
    let pd = &inst.pairing;
    if !projection_is_dual(&pd.lattice, &pd.dual, &pd.pairing, split).map_err(|e| e.to_string())? {
        return Err(format!("seed {}: projection is not the dual of the intersection", inst.seed));
    }
    let q = congruence_quotients(&pd.lattice, split).map_err(|e| e.to_string())?;
    let mut primes: Vec<BigInt> = [&q.module.order, &q.first.order, &q.second.order].iter().flat_map(|o| prime_divisors(o)).collect();
    primes.sort();
    primes.dedup();
    for p in primes {
        let p = p.to_u64().unwrap();
        match disc_equivalence(&pd.lattice, &pd.dual, &pd.pairing, split, p) {
            Ok(DiscOutcome::Decided { valuation_positive, module_nontrivial_at_p }) if valuation_positive == module_nontrivial_at_p => {}
            other => return Err(format!("seed {}: disc criterion at {p}: {other:?}", inst.seed)),
        }
    }
    Ok(())
}

/// Orders of `(Λ₁⊕Λ₂)/L`, `Λ₁/L₁`, `Λ₂/L₂` agree.
pub fn check_quotient_orders(inst: &SuiteInstance, split: &SplitDecomposition) -> Result<(), String> {
    let q = congruence_quotients(&inst.pairing.lattice, split).map_err(|e| e.to_string())?;
    if q.module.order != q.first.order || q.module.order != q.second.order {
        return Err(format!("seed {}: orders {} {} {}", inst.seed, q.module.order, q.first.order, q.second.order));
    }
    Ok(())
}

/// `C ≠ 0 ⟹ Q ≠ 0`, and for every `p ∈ supp Q` a lift exists whose
/// residues the exhaustive enumeration confirms on the `e₂` block.
pub fn check_strong_congruence(
    inst: &SuiteInstance,
    e1: &RatMatrix,
    e2: &RatMatrix,
    split: &SplitDecomposition,
) -> Result<usize, String> {
    let h = &inst.system;
    let seed = inst.seed;
    let c = congruence_quotients(&inst.pairing.lattice, split).map_err(|e| e.to_string())?.module;
    let q = hecke_congruence_module(h, e1, e2).map_err(|e| e.to_string())?;
    if !c.is_trivial() && q.is_trivial() {
        return Err(format!("seed {seed}: C = {} but Q is trivial", c.order));
    }
    let mut verified = 0;
    for p in &q.support {
        let p = p.to_u64().unwrap();
        let first = mod_p_eigensystems(h, p, Some(e1)).map_err(|e| e.to_string())?;
        let (_, block2) = block(h, e2).map_err(|e| e.to_string())?;
        let (_, block1) = block(h, e1).map_err(|e| e.to_string())?;
        let oracle2 = exhaustive_eigensystems(p, &block2);
        let oracle1 = exhaustive_eigensystems(p, &block1);
        let mut found = false;
        for chi1 in &first {
            let lifts = match deligne_serre_lift(h, e1, e2, p, chi1) {
                Ok(l) => l,
                Err(congruence_core::Error::NoCongruentEigensystem(_)) => continue,
                Err(e) => return Err(format!("seed {seed}: lift at {p}: {e}")),
            };
            for lift in &lifts {
                match lift.residual.prime_field_values() {
                    Some(vals) => {
                        if !oracle2.contains(&vals) || !oracle1.contains(&vals) {
                            return Err(format!("seed {seed}: residue {vals:?} at {p} not confirmed by enumeration"));
                        }
                        if let CharZeroLift::Rational { values, .. } = &lift.lift {
                            let red: Option<Vec<u64>> = values.iter().map(|v| reduce_rational(v, p)).collect();
                            if red.as_ref() != Some(&vals) {
                                return Err(format!("seed {seed}: lift {values:?} does not reduce to {vals:?} mod {p}"));
                            }
                        }
                    }
                    // residues beyond F_p are out of reach of the F_p search
                    None if !has_common_eigenvector(&block2, &lift.residual) => {
                        return Err(format!("seed {seed}: residue {} has no eigenvector on the e2 block", lift.residual));
                    }
                    None => {}
                }
                found = true;
            }
        }
        if !found {
            return Err(format!("seed {seed}: p = {p} in supp Q but no congruent eigensystem"));
        }
        verified += 1;
    }
    Ok(verified)
}
