//! Congruence detection between isotypic components of a Hecke system.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use super::{congruence_module, hecke_congruence_module, obstruction_primes, CongruenceModule};
use crate::error::{Error, Result};
use crate::hecke::{block, eigensystems_of_matrices, isotypic_decomposition, HeckeSystem, IsotypicComponent, ModPEigensystem};
use crate::io::json::{module_json, poly_json, rational_json};
use crate::lattice::{BilinearPairing, Lattice, SplitDecomposition};
use crate::linalg::{is_prime, RatMatrix};

/// How isotypic components are grouped before looking for congruences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitGrouping {
    /// Any congruence between eigensystems of the system counts (Case I).
    None,
    /// Components are Galois orbits; congruences across orbits are Case II,
    /// between conjugates inside one orbit Case III.
    Galois,
}

impl FromStr for OrbitGrouping {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(OrbitGrouping::None),
            "galois" => Ok(OrbitGrouping::Galois),
            other => Err(Error::InvalidInput(format!("unknown orbit grouping '{other}'"))),
        }
    }
}

impl fmt::Display for OrbitGrouping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitGrouping::None => "none",
            OrbitGrouping::Galois => "galois",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Case {
    I,
    II,
    III,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::I => "I",
            Case::II => "II",
            Case::III => "III",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Congruent,
    NotCongruent,
    Excluded,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Congruent => "congruent",
            Verdict::NotCongruent => "not congruent",
            Verdict::Excluded => "excluded",
        })
    }
}

/// A residual eigensystem shared by two components (or, for Case III, by
/// two conjugates inside one component).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruentPair {
    pub case: Case,
    pub first: usize,
    pub second: usize,
    pub residual: ModPEigensystem,
}

/// The pairing data used to decide whether `p` is an excluded prime.
#[derive(Clone, Debug)]
pub struct PairingData {
    pub lattice: Lattice,
    pub dual: Lattice,
    pub pairing: BilinearPairing,
}

#[derive(Clone, Debug)]
pub struct DetectionReport {
    pub p: u64,
    pub grouping: OrbitGrouping,
    pub ext_degree: Option<usize>,
    pub components: Vec<IsotypicComponent>,
    pub residual: Vec<Vec<ModPEigensystem>>,
    pub pairs: Vec<CongruentPair>,
    /// Per component taking part in a congruence: `C` and `Q` for the split
    /// of that component against the rest.
    pub modules: Vec<(usize, CongruenceModule, CongruenceModule)>,
    pub obstruction_primes: Vec<BigInt>,
    pub verdict: Verdict,
}

/// Searches for congruences modulo `p` between the isotypic components.
pub fn detect(
    h: &HeckeSystem,
    p: u64,
    grouping: OrbitGrouping,
    ext_degree: Option<usize>,
    pairing: Option<&PairingData>,
) -> Result<DetectionReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let components = isotypic_decomposition(h);
    let obstruction = match pairing {
        Some(d) => obstruction_primes(&d.lattice, &d.dual, &d.pairing)?,
        None => Vec::new(),
    };
    if obstruction.contains(&BigInt::from(p)) {
        return Ok(DetectionReport {
            p,
            grouping,
            ext_degree,
            components,
            residual: Vec::new(),
            pairs: Vec::new(),
            modules: Vec::new(),
            obstruction_primes: obstruction,
            verdict: Verdict::Excluded,
        });
    }
    let labels = h.labels();
    let mut residual = Vec::new();
    for c in &components {
        let (_, mats) = block(h, &c.basis)?;
        let mut eig = if mats.is_empty() {
            vec![ModPEigensystem { p, degree: 1, values: Vec::new(), labels: labels.clone(), multiplicity: c.dim() }]
        } else {
            eigensystems_of_matrices(p, &mats, &labels)
        };
        if let Some(m) = ext_degree {
            eig.retain(|e| e.degree <= m);
        }
        residual.push(eig);
    }
    let across = match grouping {
        OrbitGrouping::None => Case::I,
        OrbitGrouping::Galois => Case::II,
    };
    let within = match grouping {
        OrbitGrouping::None => Case::I,
        OrbitGrouping::Galois => Case::III,
    };
    let mut pairs = Vec::new();
    for i in 0..components.len() {
        for j in i + 1..components.len() {
            for a in &residual[i] {
                if residual[j].iter().any(|b| b.same_character(a)) {
                    pairs.push(CongruentPair { case: across, first: i, second: j, residual: a.clone() });
                }
            }
        }
        // two conjugates of the orbit share a reduction
        let mult = components[i].multiplicity();
        for a in &residual[i] {
            if components[i].degree > 1 && a.multiplicity > mult {
                pairs.push(CongruentPair { case: within, first: i, second: i, residual: a.clone() });
            }
        }
    }
    let mut involved: Vec<usize> = pairs.iter().flat_map(|pr| [pr.first, pr.second]).collect();
    involved.sort_unstable();
    involved.dedup();
    let mut modules = Vec::new();
    if components.len() > 1 {
        let r = h.rank();
        let standard = Lattice::standard(r);
        for &i in &involved {
            let e1 = components[i].projector.clone();
            let e2 = &RatMatrix::identity(r) - &e1;
            let split = SplitDecomposition::from_projector(e1.clone(), &BilinearPairing::standard(r))?;
            let c = congruence_module(&standard, &split)?;
            let q = hecke_congruence_module(h, &e1, &e2)?;
            modules.push((i, c, q));
        }
    }
    let verdict = if pairs.is_empty() { Verdict::NotCongruent } else { Verdict::Congruent };
    Ok(DetectionReport {
        p,
        grouping,
        ext_degree,
        components,
        residual,
        pairs,
        modules,
        obstruction_primes: obstruction,
        verdict,
    })
}

fn eigensystem_json(e: &ModPEigensystem) -> Value {
    let mut values = Map::new();
    for (l, v) in e.labels.iter().zip(&e.values) {
        let val = if e.degree == 1 { json!(v[0].to_string()) } else { json!(v.iter().map(|c| c.to_string()).collect::<Vec<_>>()) };
        values.insert(l.to_string(), val);
    }
    json!({ "degree": e.degree, "values": values, "multiplicity": e.multiplicity })
}

impl DetectionReport {
    pub fn to_json(&self) -> Value {
        let components: Vec<Value> = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut polys = Map::new();
                for (l, g) in &c.min_polys {
                    polys.insert(l.to_string(), poly_json(g));
                }
                let eig = match c.rational_eigenvalues() {
                    Some(vals) => {
                        let mut m = Map::new();
                        for ((l, _), v) in c.min_polys.iter().zip(vals) {
                            m.insert(l.to_string(), rational_json(&v));
                        }
                        Value::Object(m)
                    }
                    None => Value::Null,
                };
                json!({
                    "index": i,
                    "dim": c.dim(),
                    "orbit_size": c.degree,
                    "multiplicity": c.multiplicity(),
                    "semisimple": c.semisimple,
                    "min_polys": polys,
                    "eigenvalues": eig,
                    "residual_eigensystems": self.residual.get(i).map(|v| v.iter().map(eigensystem_json).collect::<Vec<_>>()).unwrap_or_default(),
                })
            })
            .collect();
        let pairs: Vec<Value> = self
            .pairs
            .iter()
            .map(|pr| {
                json!({
                    "case": pr.case.to_string(),
                    "components": [pr.first, pr.second],
                    "residues": eigensystem_json(&pr.residual),
                })
            })
            .collect();
        let modules: Vec<Value> = self
            .modules
            .iter()
            .map(|(i, c, q)| json!({ "component": i, "congruence_module": module_json(c), "hecke_congruence_module": module_json(q) }))
            .collect();
        json!({
            "prime": self.p,
            "orbit_grouping": self.grouping.to_string(),
            "ext_degree": self.ext_degree,
            "verdict": self.verdict.to_string(),
            "components": components,
            "congruences": pairs,
            "split_modules": modules,
            "obstruction_primes": self.obstruction_primes.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        })
    }
}
