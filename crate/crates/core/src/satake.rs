//! Unramified local data: Hecke eigenvalues `χ(T_{l,j})`, the elementary
//! symmetric functions of the Satake parameters, local L-polynomials, and
//! congruences between two eigensystems.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hecke::reduce_rational;
use crate::io::json::rational_json;
use crate::linalg::{factor_integer, is_prime, valuation};

/// Eigenvalues of `T_{l,1}, …, T_{l,n}` at one prime tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalEigenvalueData {
    pub tag: u64,
    /// Residue field cardinality `q_l`.
    pub q: u64,
    pub chi: Vec<BigRational>,
}

impl LocalEigenvalueData {
    pub fn new(tag: u64, q: u64, chi: Vec<BigRational>) -> Self {
        LocalEigenvalueData { tag, q, chi }
    }

    pub fn from_i64(tag: u64, q: u64, chi: &[i64]) -> Self {
        Self::new(tag, q, chi.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn n(&self) -> usize {
        self.chi.len()
    }
}

pub fn is_prime_power(q: u64) -> bool {
    q >= 2 && factor_integer(&BigInt::from(q)).len() == 1
}

/// `e_1, …, e_n` of the Satake parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeSymmetric {
    pub e: Vec<BigRational>,
    /// Set when `e_n = 0`, which an unramified parameter with invertible
    /// central value cannot produce.
    pub degenerate: bool,
}

fn q_power(q: u64, j: usize) -> BigRational {
    let exp = (j * (j.saturating_sub(1)) / 2) as u32;
    BigRational::from_integer(Pow::pow(BigInt::from(q), exp))
}

/// `e_j = q^{j(j−1)/2}·χ_j`.
pub fn hecke_to_symmetric(d: &LocalEigenvalueData) -> SatakeSymmetric {
    let e: Vec<BigRational> = d.chi.iter().enumerate().map(|(i, c)| q_power(d.q, i + 1) * c).collect();
    let degenerate = e.last().is_some_and(|x| x.is_zero());
    SatakeSymmetric { e, degenerate }
}

/// `Σ_j (−1)^j e_j X^j`, lowest degree first, trailing zeros dropped.
pub fn local_l_polynomial(d: &LocalEigenvalueData) -> Vec<BigRational> {
    let s = hecke_to_symmetric(d);
    let mut poly = vec![BigRational::one()];
    for (i, e) in s.e.into_iter().enumerate() {
        poly.push(if i % 2 == 0 { -e } else { e });
    }
    while poly.len() > 1 && poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    poly
}

/// One compared symmetric function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResiduePair {
    pub tag: u64,
    pub j: usize,
    pub a: BigRational,
    pub b: BigRational,
    /// Reductions into `F_p`; `None` when `p` divides the denominator.
    pub a_residue: Option<u64>,
    pub b_residue: Option<u64>,
    pub congruent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigensystemCongruenceReport {
    pub p: u64,
    pub ext_degree: usize,
    pub tested_tags: Vec<u64>,
    /// Tags left out, with the reason.
    pub excluded_tags: Vec<(u64, String)>,
    pub residues: Vec<ResiduePair>,
    pub congruent: bool,
}

impl EigensystemCongruenceReport {
    pub fn to_json(&self) -> Value {
        let residue = |r: Option<u64>| match r {
            Some(v) => json!(v.to_string()),
            None => Value::Null,
        };
        json!({
            "prime": self.p,
            "ext_degree": self.ext_degree,
            "verdict": if self.congruent { "congruent" } else { "not congruent" },
            "tags_tested": self.tested_tags,
            "tested_range": format!("{} tags tested", self.tested_tags.len()),
            "excluded_tags": self.excluded_tags.iter().map(|(l, why)| json!({"l": l, "reason": why})).collect::<Vec<_>>(),
            "residues": self.residues.iter().map(|r| json!({
                "l": r.tag,
                "j": r.j,
                "a": rational_json(&r.a),
                "b": rational_json(&r.b),
                "a_mod_p": residue(r.a_residue),
                "b_mod_p": residue(r.b_residue),
                "congruent": r.congruent,
            })).collect::<Vec<_>>(),
        })
    }
}

fn index_by_tag(data: &[LocalEigenvalueData], which: &str) -> Result<BTreeMap<u64, LocalEigenvalueData>> {
    let mut map = BTreeMap::new();
    for d in data {
        if map.insert(d.tag, d.clone()).is_some() {
            return Err(Error::InvalidInput(format!("duplicate prime tag {} in {which}", d.tag)));
        }
    }
    Ok(map)
}

/// `x ≡ y` modulo `p` in the valuation sense (both sides may carry
/// denominators prime to `p`, or matching ones).
fn congruent_mod(x: &BigRational, y: &BigRational, p: u64) -> bool {
    let diff = x - y;
    diff.is_zero() || valuation(&diff, p).map(|v| v.is_positive()).unwrap_or(false)
}

/// Compares `e_j(a, l)` and `e_j(b, l)` modulo `p` for all tags away from
/// `p` and from `excluded`.
///
/// The residues of rational data lie in `F_p`, so the verdict does not depend
/// on `ext_degree`; it is recorded in the report.
pub fn congruent_eigensystems(
    a: &[LocalEigenvalueData],
    b: &[LocalEigenvalueData],
    p: u64,
    ext_degree: usize,
    excluded: &BTreeSet<u64>,
) -> Result<EigensystemCongruenceReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if ext_degree == 0 {
        return Err(Error::InvalidInput("extension degree must be at least 1".into()));
    }
    let ma = index_by_tag(a, "first table")?;
    let mb = index_by_tag(b, "second table")?;
    let mut excluded_tags = Vec::new();
    let keep = |d: &LocalEigenvalueData, out: &mut Vec<(u64, String)>| -> bool {
        let reason = if d.q % p == 0 {
            Some(format!("p divides q = {}", d.q))
        } else if excluded.contains(&d.tag) {
            Some("ramified".to_string())
        } else {
            None
        };
        match reason {
            Some(r) => {
                if !out.iter().any(|(l, _)| *l == d.tag) {
                    out.push((d.tag, r));
                }
                false
            }
            None => true,
        }
    };
    let ka: BTreeMap<u64, &LocalEigenvalueData> =
        ma.iter().filter(|(_, d)| keep(d, &mut excluded_tags)).map(|(l, d)| (*l, d)).collect();
    let kb: BTreeMap<u64, &LocalEigenvalueData> =
        mb.iter().filter(|(_, d)| keep(d, &mut excluded_tags)).map(|(l, d)| (*l, d)).collect();
    excluded_tags.sort();
    if ka.keys().ne(kb.keys()) {
        let only_a: Vec<_> = ka.keys().filter(|l| !kb.contains_key(l)).collect();
        let only_b: Vec<_> = kb.keys().filter(|l| !ka.contains_key(l)).collect();
        return Err(Error::InvalidInput(format!(
            "prime-tag sets differ after exclusions: only in first {only_a:?}, only in second {only_b:?}"
        )));
    }
    let mut residues = Vec::new();
    for (tag, da) in &ka {
        let db = kb[tag];
        if da.n() != db.n() {
            return Err(Error::InvalidInput(format!("tag {tag}: n = {} against n = {}", da.n(), db.n())));
        }
        if da.q != db.q {
            return Err(Error::InvalidInput(format!("tag {tag}: q = {} against q = {}", da.q, db.q)));
        }
        let ea = hecke_to_symmetric(da).e;
        let eb = hecke_to_symmetric(db).e;
        for (j, (x, y)) in ea.into_iter().zip(eb).enumerate() {
            residues.push(ResiduePair {
                tag: *tag,
                j: j + 1,
                a_residue: reduce_rational(&x, p),
                b_residue: reduce_rational(&y, p),
                congruent: congruent_mod(&x, &y, p),
                a: x,
                b: y,
            });
        }
    }
    let congruent = residues.iter().all(|r| r.congruent);
    Ok(EigensystemCongruenceReport {
        p,
        ext_degree,
        tested_tags: ka.keys().copied().collect(),
        excluded_tags,
        residues,
        congruent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn symmetric_functions_by_substitution() {
        let e = hecke_to_symmetric(&LocalEigenvalueData::from_i64(7, 7, &[3, 5])).e;
        assert_eq!(e, vec![q(3), q(35)]);
        let e = hecke_to_symmetric(&LocalEigenvalueData::from_i64(2, 2, &[1, 1, 1])).e;
        assert_eq!(e, vec![q(1), q(2), q(8)]);
        let e = hecke_to_symmetric(&LocalEigenvalueData::from_i64(5, 5, &[9])).e;
        assert_eq!(e, vec![q(9)]);
    }

    #[test]
    fn l_polynomials() {
        assert_eq!(local_l_polynomial(&LocalEigenvalueData::from_i64(7, 7, &[3, 5])), vec![q(1), q(-3), q(35)]);
        assert_eq!(local_l_polynomial(&LocalEigenvalueData::from_i64(3, 3, &[4])), vec![q(1), q(-4)]);
        assert_eq!(local_l_polynomial(&LocalEigenvalueData::from_i64(3, 3, &[0, 0, 0])), vec![q(1)]);
    }

    #[test]
    fn degenerate_flag() {
        assert!(hecke_to_symmetric(&LocalEigenvalueData::from_i64(3, 3, &[1, 0])).degenerate);
        assert!(!hecke_to_symmetric(&LocalEigenvalueData::from_i64(3, 3, &[1, 1])).degenerate);
    }

    #[test]
    fn scalar_systems() {
        let a = [LocalEigenvalueData::from_i64(5, 5, &[5])];
        let b = [LocalEigenvalueData::from_i64(5, 5, &[8])];
        let none = BTreeSet::new();
        assert!(congruent_eigensystems(&a, &b, 3, 1, &none).unwrap().congruent);
        assert!(!congruent_eigensystems(&a, &b, 2, 1, &none).unwrap().congruent);
    }

    #[test]
    fn tags_above_p_and_ramified_tags_are_skipped() {
        let a = [LocalEigenvalueData::from_i64(2, 2, &[1]), LocalEigenvalueData::from_i64(3, 3, &[1])];
        let b = [LocalEigenvalueData::from_i64(2, 2, &[0]), LocalEigenvalueData::from_i64(3, 3, &[4])];
        let r = congruent_eigensystems(&a, &b, 3, 1, &BTreeSet::new()).unwrap();
        assert_eq!(r.tested_tags, vec![2]);
        assert!(!r.congruent);
        let r = congruent_eigensystems(&a, &b, 3, 1, &BTreeSet::from([2])).unwrap();
        assert!(r.tested_tags.is_empty());
        assert!(r.congruent);
    }

    #[test]
    fn mismatched_tags_are_an_error() {
        let a = [LocalEigenvalueData::from_i64(2, 2, &[1])];
        let b = [LocalEigenvalueData::from_i64(5, 5, &[1])];
        assert!(congruent_eigensystems(&a, &b, 3, 1, &BTreeSet::new()).is_err());
    }

    #[test]
    fn denominators_prime_to_p_reduce() {
        let half = BigRational::new(1.into(), 2.into());
        let a = [LocalEigenvalueData::new(5, 5, vec![half])];
        let b = [LocalEigenvalueData::from_i64(5, 5, &[2])];
        // 1/2 ≡ 2 mod 3
        let r = congruent_eigensystems(&a, &b, 3, 2, &BTreeSet::new()).unwrap();
        assert!(r.congruent);
        assert_eq!(r.residues[0].a_residue, Some(2));
    }
}
