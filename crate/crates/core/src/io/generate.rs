//! Seeded synthetic instances with known congruences.
//!
//! The operators are block diagonal: integer scalars on 1-dimensional blocks
//! and `u·I + v·C` on 2-dimensional blocks, `C` the companion matrix of an
//! irreducible quadratic. A planted prime `p` glues the first two scalar
//! blocks through `L = ℤ^d + ℤ·(e₀ + e₁)/p`, which the operators preserve
//! because the two blocks agree modulo `p`. Everything is then moved by a
//! random unimodular change of ambient coordinates and a random change of
//! lattice basis, and the standard pairing is transported along.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::instance::{instance_to_file, InstanceFile};
use crate::congruence::detect::PairingData;
use crate::error::{Error, Result};
use crate::field::{dense, Rationals};
use crate::hecke::{HeckeSystem, Operator, OperatorLabel};
use crate::lattice::{dual_lattice, BilinearPairing, Lattice};
use crate::linalg::{is_prime, prime_divisors, IntMatrix, RatMatrix};
use crate::poly::integer::{charpoly_int, discriminant, resultant};

/// Largest dimension the generator accepts.
pub const MAX_DIM: usize = 12;

#[derive(Clone, Debug)]
enum Block {
    Scalar(Vec<i64>),
    /// `x² − t·x + n` and per-operator `(u, v)`.
    Quadratic { t: i64, n: i64, coeffs: Vec<(i64, i64)> },
}

impl Block {
    fn size(&self) -> usize {
        match self {
            Block::Scalar(_) => 1,
            Block::Quadratic { .. } => 2,
        }
    }

    fn matrix(&self, k: usize) -> IntMatrix {
        match self {
            Block::Scalar(a) => IntMatrix::from_i64(&[[a[k]]]),
            Block::Quadratic { t, n, coeffs } => {
                let (u, v) = coeffs[k];
                IntMatrix::from_i64(&[[u, v], [-v * n, u + v * t]])
            }
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Block::Scalar(a) => json!({"size": 1, "eigenvalues": a}),
            Block::Quadratic { t, n, coeffs } => json!({
                "size": 2,
                "companion_of": format!("x^2 - ({t})x + ({n})"),
                "coefficients": coeffs.iter().map(|(u, v)| json!([u, v])).collect::<Vec<_>>(),
            }),
        }
    }
}

fn is_square(d: i64) -> bool {
    d >= 0 && Roots::sqrt(&d).pow(2) == d
}

fn random_quadratic(rng: &mut ChaCha8Rng, ops: usize) -> Block {
    loop {
        let t = rng.gen_range(-4..=4);
        let n = rng.gen_range(-6..=6);
        if is_square(t * t - 4 * n) {
            continue;
        }
        let mut coeffs = Vec::with_capacity(ops);
        for k in 0..ops {
            let u = rng.gen_range(-3..=3);
            let v = if k == 0 { [-2, -1, 1, 2][rng.gen_range(0..4)] } else { rng.gen_range(-2..=2) };
            coeffs.push((u, v));
        }
        return Block::Quadratic { t, n, coeffs };
    }
}

fn gcd_over_ops(blocks: &[Block], ops: usize, f: impl Fn(&[BigInt], &[BigInt]) -> BigInt, i: usize, j: usize) -> BigInt {
    (0..ops).fold(BigInt::zero(), |g, k| {
        let a = charpoly_int(&blocks[i].matrix(k));
        let b = charpoly_int(&blocks[j].matrix(k));
        g.gcd(&f(&a, &b))
    })
}

/// Primes at which two blocks share a root of every operator's
/// characteristic polynomial, or one quadratic block has a repeated root for
/// every operator. Congruences can only occur at these primes.
fn candidate_primes(blocks: &[Block], ops: usize) -> Option<Vec<BigInt>> {
    let mut primes = BTreeSet::new();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let g = gcd_over_ops(blocks, ops, resultant, i, j);
            if g.is_zero() {
                return None;
            }
            primes.extend(prime_divisors(&g));
        }
        if blocks[i].size() == 2 {
            let g = gcd_over_ops(blocks, ops, |a, _| discriminant(a), i, i);
            if g.is_zero() {
                return None;
            }
            primes.extend(prime_divisors(&g));
        }
    }
    Some(primes.into_iter().collect())
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    if n < 2 {
        return u;
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = BigInt::from([-2i64, -1, 1, 2][rng.gen_range(0..4)]);
        // row_i += c·row_j
        for col in 0..n {
            let add = &c * &u[(j, col)];
            u[(i, col)] += add;
        }
    }
    u
}

fn block_diagonal(blocks: &[Block], k: usize, dim: usize) -> IntMatrix {
    let mut d = IntMatrix::zeros(dim, dim);
    let mut at = 0;
    for b in blocks {
        let m = b.matrix(k);
        for i in 0..b.size() {
            for j in 0..b.size() {
                d[(at + i, at + j)] = m[(i, j)].clone();
            }
        }
        at += b.size();
    }
    d
}

/// A commuting system on a lattice of rank `dim` with `ops` operators,
/// together with its pairing data and ground-truth metadata.
pub fn random_system(seed: u64, dim: usize, ops: usize, plant: Option<u64>) -> Result<(HeckeSystem, PairingData, BTreeMap<String, Value>)> {
    if dim > MAX_DIM {
        return Err(Error::DeskScale(format!("dimension {dim} exceeds the desk-scale bound {MAX_DIM}")));
    }
    if dim == 0 || ops == 0 {
        return Err(Error::InvalidInput("dimension and operator count must be positive".into()));
    }
    if let Some(p) = plant {
        if !is_prime(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        if dim < 2 {
            return Err(Error::InvalidInput("planting a congruence needs dimension at least 2".into()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (blocks, candidates) = loop {
        let mut blocks = Vec::new();
        let mut used = 0;
        if let Some(p) = plant {
            let p = p as i64;
            let a: Vec<i64> = (0..ops).map(|_| rng.gen_range(-5..=5)).collect();
            let b: Vec<i64> = a.iter().map(|x| x + p * [-1, 1][rng.gen_range(0..2)]).collect();
            blocks.push(Block::Scalar(a));
            blocks.push(Block::Scalar(b));
            used = 2;
        }
        while used < dim {
            let b = if dim - used >= 2 && rng.gen_bool(0.4) {
                random_quadratic(&mut rng, ops)
            } else {
                Block::Scalar((0..ops).map(|_| rng.gen_range(-9..=9)).collect())
            };
            used += b.size();
            blocks.push(b);
        }
        if let Some(c) = candidate_primes(&blocks, ops) {
            break (blocks, c);
        }
    };

    let mut l0 = RatMatrix::identity(dim);
    if let Some(p) = plant {
        let inv = BigRational::new(1.into(), p.into());
        l0[(0, 0)] = inv.clone();
        l0[(0, 1)] = inv;
    }
    let u = random_unimodular(&mut rng, dim).to_rational();
    let uinv = dense::inverse(&Rationals, &u).expect("unimodular");
    let v = random_unimodular(&mut rng, dim).to_rational();
    let vinv = dense::inverse(&Rationals, &v).expect("unimodular");
    let l0inv = dense::inverse(&Rationals, &l0).expect("basis");

    // the lattice basis in the file is V·L₀·U
    let basis = &(&v * &l0) * &u;
    let mut operators = Vec::new();
    for k in 0..ops {
        let d = block_diagonal(&blocks, k, dim).to_rational();
        let t0 = &(&l0 * &d) * &l0inv;
        let t = (&(&v * &t0) * &vinv).to_integer().expect("blocks agree modulo the planted prime");
        operators.push(Operator::new(OperatorLabel::Name(format!("T{}", k + 1)), t));
    }
    let lattice = Lattice::new(basis.clone())?;
    // the file basis differs from the canonical one; carry operators over
    let w = dense::solve_left(&Rationals, &basis, lattice.basis()).expect("same lattice");
    let winv = dense::inverse(&Rationals, &w).expect("unimodular");
    let operators = operators
        .into_iter()
        .map(|op| {
            let t = (&(&w * &op.matrix.to_rational()) * &winv).to_integer().expect("unimodular change");
            Operator { matrix: t, ..op }
        })
        .collect();
    let system = HeckeSystem::new(lattice.clone(), operators)?;

    let gram = &uinv * &uinv.transpose();
    let pairing = BilinearPairing::new(gram);
    let dual0 = dual_lattice(&Lattice::new(l0)?, &BilinearPairing::standard(dim), None)?;
    let dual = Lattice::new(dual0.basis() * &u)?;

    let mut meta = BTreeMap::new();
    meta.insert("generator".into(), json!("block-diagonal"));
    meta.insert("seed".into(), json!(seed));
    meta.insert("dim".into(), json!(dim));
    meta.insert("ops".into(), json!(ops));
    meta.insert("planted_prime".into(), json!(plant));
    meta.insert("blocks".into(), Value::Array(blocks.iter().map(Block::to_json).collect()));
    meta.insert(
        "candidate_primes".into(),
        Value::Array(candidates.iter().filter(|p| p.is_positive()).map(|p| json!(p.to_string())).collect()),
    );
    Ok((system, PairingData { lattice, dual, pairing }, meta))
}

/// The instance document for [`random_system`].
pub fn random_instance(seed: u64, dim: usize, ops: usize, plant: Option<u64>) -> Result<InstanceFile> {
    let (h, pairing, meta) = random_system(seed, dim, ops, plant)?;
    Ok(instance_to_file(&h, Some(&pairing), meta))
}

/// Reads `candidate_primes` back from generator metadata.
pub fn candidate_primes_of(meta: &BTreeMap<String, Value>) -> Vec<u64> {
    meta.get("candidate_primes")
        .and_then(Value::as_array)
        .map(|a| a.iter().filter_map(|v| v.as_str().and_then(|s| s.parse().ok())).collect())
        .unwrap_or_default()
}
