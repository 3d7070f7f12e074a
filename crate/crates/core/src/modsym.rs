//! Weight-2 modular symbols for `Γ₀(N)` over ℚ via Manin symbols.
//!
//! Symbols are the points `(c : d)` of `P¹(ℤ/N)`. The quotient by the
//! relations `x + xσ = 0` and `x + xτ + xτ² = 0` is presented through a
//! Smith form; torsion is reported and the free quotient kept. The cuspidal
//! lattice is the saturated kernel of the boundary map, and `T_l` for
//! `l ∤ N` acts through Heilbronn matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{dense, Rationals};
use crate::hecke::{HeckeSystem, Operator, OperatorLabel};
use crate::lattice::Lattice;
use crate::linalg::{is_prime, kernel_basis, snf, IntMatrix, Matrix};

fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Presentation of weight-2 modular symbols for `Γ₀(N)`.
#[derive(Clone, Debug)]
pub struct ManinSymbolSpace {
    level: u64,
    symbols: Vec<(u64, u64)>,
    /// Index of each pair `(c, d)` with `0 ≤ c, d < N`, by `c·N + d`.
    index: Vec<Option<usize>>,
    /// Two- and three-term relations, one row each, in symbol coordinates.
    relations: IntMatrix,
    /// Each symbol is `sign·g` for a generator `g` after the two-term
    /// relations.
    generator_of: Vec<(usize, i64)>,
    /// Representative symbol of each generator.
    generator_rep: Vec<usize>,
    /// `V` of the Smith form of the reduced relations, and its inverse.
    v: IntMatrix,
    vinv: IntMatrix,
    rel_rank: usize,
    torsion: Vec<BigInt>,
}

impl ManinSymbolSpace {
    pub fn level(&self) -> u64 {
        self.level
    }

    /// Representatives `(c, d)` with `0 ≤ c, d < N`.
    pub fn symbols(&self) -> &[(u64, u64)] {
        &self.symbols
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn free_rank(&self) -> usize {
        self.generator_rep.len() - self.rel_rank
    }

    /// Invariant factors greater than 1 of the relation module.
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Index of the point `(c : d)`; `None` if `gcd(c, d, N) ≠ 1`.
    pub fn symbol_index(&self, c: i64, d: i64) -> Option<usize> {
        let n = self.level as i64;
        let (c, d) = (c.rem_euclid(n), d.rem_euclid(n));
        self.index[(c * n + d) as usize]
    }

    fn act(&self, s: usize, a: i64, b: i64, c: i64, d: i64) -> usize {
        let (u, v) = self.symbols[s];
        let (u, v) = (u as i64, v as i64);
        self.symbol_index(u * a + v * c, u * b + v * d).expect("SL2 and Heilbronn matrices preserve P1")
    }

    /// `x·σ` for `σ = [[0, −1], [1, 0]]`.
    pub fn sigma(&self, s: usize) -> usize {
        self.act(s, 0, -1, 1, 0)
    }

    /// `x·τ` for `τ = [[0, −1], [1, −1]]`.
    pub fn tau(&self, s: usize) -> usize {
        self.act(s, 0, -1, 1, -1)
    }

    /// Coordinates in the free quotient of a vector in symbol coordinates.
    pub fn free_coordinates(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut z = vec![BigInt::zero(); self.generator_rep.len()];
        for (s, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (g, e) = self.generator_of[s];
            z[g] += c * e;
        }
        (self.rel_rank..z.len())
            .map(|j| z.iter().enumerate().fold(BigInt::zero(), |acc, (i, zi)| acc + zi * &self.v[(i, j)]))
            .collect()
    }

    /// A symbol vector mapping to the `k`-th free basis vector.
    fn free_preimage(&self, k: usize) -> Vec<BigInt> {
        let row = self.rel_rank + k;
        let mut x = vec![BigInt::zero(); self.symbols.len()];
        for (g, &rep) in self.generator_rep.iter().enumerate() {
            x[rep] += &self.vinv[(row, g)];
        }
        x
    }
}

/// Number of points of `P¹(ℤ/N)`.
pub fn p1_size(n: u64) -> u64 {
    let mut m = n;
    let mut size = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            size = size / p * (p + 1);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        size = size / m * (m + 1);
    }
    size
}

pub fn build_space(level: u64) -> Result<ManinSymbolSpace> {
    if level == 0 {
        return Err(Error::InvalidInput("level must be at least 1".into()));
    }
    let n = level as i64;
    let units: Vec<i64> = (0..n).filter(|&u| gcd(u, n) == 1).collect();
    let units = if n == 1 { vec![0] } else { units };
    let mut index = vec![None; (n * n) as usize];
    let mut symbols = Vec::new();
    for c in 0..n {
        for d in 0..n {
            if gcd(gcd(c, d), n) != 1 || index[(c * n + d) as usize].is_some() {
                continue;
            }
            let i = symbols.len();
            symbols.push((c as u64, d as u64));
            for &u in &units {
                index[((u * c).rem_euclid(n) * n + (u * d).rem_euclid(n)) as usize] = Some(i);
            }
        }
    }
    let mut space = ManinSymbolSpace {
        level,
        symbols,
        index,
        relations: IntMatrix::zeros(0, 0),
        generator_of: Vec::new(),
        generator_rep: Vec::new(),
        v: IntMatrix::zeros(0, 0),
        vinv: IntMatrix::zeros(0, 0),
        rel_rank: 0,
        torsion: Vec::new(),
    };
    let count = space.symbols.len();

    // the full relation matrix, kept for inspection
    let mut rows = Vec::new();
    for s in 0..count {
        let mut r = vec![BigInt::zero(); count];
        r[s] += 1;
        r[space.sigma(s)] += 1;
        rows.push(r);
    }
    for s in 0..count {
        let t = space.tau(s);
        let mut r = vec![BigInt::zero(); count];
        r[s] += 1;
        r[t] += 1;
        r[space.tau(t)] += 1;
        rows.push(r);
    }
    space.relations = Matrix::from_rows(rows, count)?;

    // two-term relations identify x with −xσ
    let mut generator_of = vec![(usize::MAX, 0i64); count];
    let mut generator_rep = Vec::new();
    let mut reduced = Vec::new();
    for s in 0..count {
        if generator_of[s].0 != usize::MAX {
            continue;
        }
        let g = generator_rep.len();
        generator_rep.push(s);
        generator_of[s] = (g, 1);
        let t = space.sigma(s);
        if t == s {
            reduced.push(vec![(g, 2i64)]);
        } else {
            generator_of[t] = (g, -1);
        }
    }
    let mut seen = vec![false; count];
    for s in 0..count {
        if seen[s] {
            continue;
        }
        let t = space.tau(s);
        let u = space.tau(t);
        seen[s] = true;
        seen[t] = true;
        seen[u] = true;
        reduced.push([s, t, u].iter().map(|&x| generator_of[x]).collect());
    }
    let ngen = generator_rep.len();
    let rel_rows: Vec<Vec<BigInt>> = reduced
        .iter()
        .map(|terms| {
            let mut r = vec![BigInt::zero(); ngen];
            for &(g, e) in terms {
                r[g] += e;
            }
            r
        })
        .collect();
    let rel = Matrix::from_rows(rel_rows, ngen)?;
    let sd = snf(&rel);
    let vinv = dense::inverse(&Rationals, &sd.v.to_rational())
        .and_then(|m| m.to_integer())
        .ok_or_else(|| Error::Invariant("Smith transform is not unimodular".into()))?;
    space.torsion = sd.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
    space.rel_rank = sd.rank;
    space.v = sd.v;
    space.vinv = vinv;
    space.generator_of = generator_of;
    space.generator_rep = generator_rep;
    Ok(space)
}

/// `Γ₀(N)`-class of the cusp `a/c` (`gcd(a, c) = 1`): `(g, a·(c/g) mod h)`
/// with `g = gcd(c, N)` and `h = gcd(g, N/g)`.
pub fn cusp_class(a: i64, c: i64, n: i64) -> (i64, i64) {
    let g = gcd(c, n);
    let h = gcd(g, n / g);
    (g, (a * (c / g)).rem_euclid(h))
}

fn lift_to_sl2(c: i64, d: i64, n: i64) -> (i64, i64, i64, i64) {
    let c1 = if c == 0 { n } else { c };
    let mut d1 = d;
    while gcd(c1, d1) != 1 {
        d1 += n;
    }
    // a·d1 − b·c1 = 1
    let e = d1.extended_gcd(&c1);
    let (a, b) = if e.gcd == 1 { (e.x, -e.y) } else { (-e.x, e.y) };
    (a, b, c1, d1)
}

/// Saturated cuspidal sublattice of the free quotient with Hecke operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspidalLattice {
    pub level: u64,
    /// Rows: basis in free-quotient coordinates.
    pub basis: IntMatrix,
    /// `T_l` in the coordinates of `basis`.
    pub operators: BTreeMap<u64, IntMatrix>,
}

impl CuspidalLattice {
    pub fn rank(&self) -> usize {
        self.basis.rows()
    }
}

/// Boundary of each free basis vector, in cusp coordinates.
pub fn boundary_matrix(space: &ManinSymbolSpace) -> IntMatrix {
    let n = space.level as i64;
    let mut cusps: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    let mut per_symbol = Vec::with_capacity(space.symbols.len());
    for &(c, d) in &space.symbols {
        let (a, b, c1, d1) = lift_to_sl2(c as i64, d as i64, n);
        // the symbol is {b/d1, a/c1}
        let end = cusp_class(a, c1, n);
        let start = cusp_class(b, d1, n);
        let next = cusps.len();
        let e = *cusps.entry(end).or_insert(next);
        let next = cusps.len();
        let s = *cusps.entry(start).or_insert(next);
        per_symbol.push((e, s));
    }
    let f = space.free_rank();
    let mut m = IntMatrix::zeros(f, cusps.len());
    for k in 0..f {
        let x = space.free_preimage(k);
        for (sym, coeff) in x.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let (e, s) = per_symbol[sym];
            m[(k, e)] += coeff;
            m[(k, s)] -= coeff;
        }
    }
    m
}

pub fn cuspidal_lattice(space: &ManinSymbolSpace) -> CuspidalLattice {
    let basis = kernel_basis(&boundary_matrix(space));
    CuspidalLattice { level: space.level, basis, operators: BTreeMap::new() }
}

/// Nearest integer to `a/b`, halves rounded away from zero.
fn round_half_away(a: i64, b: i64) -> i64 {
    let (a, b) = if b < 0 { (-a, -b) } else { (a, b) };
    if a >= 0 {
        (2 * a + b) / (2 * b)
    } else {
        -((-2 * a + b) / (2 * b))
    }
}

/// Heilbronn matrices `[a, b, c, d]` of determinant `l`, in the
/// continued-fraction enumeration.
pub fn heilbronn_matrices(l: u64) -> Vec<[i64; 4]> {
    let p = l as i64;
    if p == 2 {
        return vec![[1, 0, 0, 2], [2, 0, 0, 1], [2, 1, 0, 1], [1, 0, 1, 2]];
    }
    let mut out = vec![[1, 0, 0, p]];
    for r in -((p - 1) / 2)..=(p - 1) / 2 {
        let (mut x1, mut x2, mut y1, mut y2) = (p, -r, 0i64, 1i64);
        let (mut a, mut b) = (-p, r);
        out.push([x1, x2, y1, y2]);
        while b != 0 {
            let q = round_half_away(a, b);
            let c = a - b * q;
            a = -b;
            b = c;
            let x3 = q * x2 - x1;
            x1 = x2;
            x2 = x3;
            let y3 = q * y2 - y1;
            y1 = y2;
            y2 = y3;
            out.push([x1, x2, y1, y2]);
        }
    }
    out
}

/// `T_l` on the free quotient, in free coordinates.
fn hecke_on_free(space: &ManinSymbolSpace, l: u64) -> IntMatrix {
    let hs = heilbronn_matrices(l);
    let f = space.free_rank();
    let mut rows = Vec::with_capacity(f);
    for k in 0..f {
        let x = space.free_preimage(k);
        let mut image = vec![BigInt::zero(); space.symbols.len()];
        for (s, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for h in &hs {
                image[space.act(s, h[0], h[1], h[2], h[3])] += c;
            }
        }
        rows.push(space.free_coordinates(&image));
    }
    Matrix::from_rows(rows, f).expect("square")
}

/// `T_l` on the cuspidal lattice; `l` prime and `l ∤ N`.
pub fn hecke_operator(space: &ManinSymbolSpace, lattice: &CuspidalLattice, l: u64) -> Result<IntMatrix> {
    if !is_prime(l) {
        return Err(Error::NotPrime(l.to_string()));
    }
    if space.level % l == 0 {
        return Err(Error::InvalidInput(format!("T_{l} at a prime dividing the level {} is not supported", space.level)));
    }
    let t = hecke_on_free(space, l);
    let k = lattice.basis.to_rational();
    let kt = &k * &t.to_rational();
    let m = dense::solve_left(&Rationals, &k, &kt).ok_or_else(|| Error::NotStable(format!("T_{l}")))?;
    m.to_integer().ok_or_else(|| Error::NotStable(format!("T_{l}")))
}

/// Operators `T(l, 1)` on the standard lattice of the cuspidal rank.
pub fn to_hecke_system(lattice: &CuspidalLattice, operators: &[(u64, IntMatrix)]) -> Result<HeckeSystem> {
    let ops = operators
        .iter()
        .map(|(l, m)| Operator::new(OperatorLabel::Tag { l: *l, j: 1 }, m.clone()))
        .collect();
    HeckeSystem::new(Lattice::standard(lattice.rank()), ops)
}

/// Index of `Γ₀(N)` in `SL₂(ℤ)`.
pub fn gamma0_index(n: u64) -> u64 {
    p1_size(n)
}

/// Primes `l ∤ N` up to `max(index/6, smallest such prime)`.
pub fn default_hecke_primes(n: u64) -> Vec<u64> {
    let bound = gamma0_index(n) / 6;
    let mut out: Vec<u64> = (2..=bound.max(2)).filter(|&l| is_prime(l) && n % l != 0).collect();
    if out.is_empty() {
        out.push((2..).find(|&l| is_prime(l) && n % l != 0).expect("infinitely many primes"));
    }
    out
}

/// Cuspidal Hecke system of level `N` with `T_l` for the given primes.
pub fn modular_system(level: u64, primes: &[u64]) -> Result<HeckeSystem> {
    let space = build_space(level)?;
    let mut lat = cuspidal_lattice(&space);
    let mut ops = Vec::new();
    for &l in primes {
        let t = hecke_operator(&space, &lat, l)?;
        lat.operators.insert(l, t.clone());
        ops.push((l, t));
    }
    to_hecke_system(&lat, &ops)
}
