//! Archimedean Γ-shapes of the adjoint L-function and criticality of `s = 1`.
//!
//! Half-integers are stored doubled (`Half(3)` is 3/2). Γ-factors are kept
//! as shift multisets and only their pole locations are used.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Half(pub i64);

impl Half {
    pub fn int(n: i64) -> Self {
        Half(2 * n)
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl std::ops::Add for Half {
    type Output = Half;
    fn add(self, o: Half) -> Half {
        Half(self.0 + o.0)
    }
}

impl std::ops::Sub for Half {
    type Output = Half;
    fn sub(self, o: Half) -> Half {
        Half(self.0 - o.0)
    }
}

impl std::ops::Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl std::str::FromStr for Half {
    type Err = Error;
    fn from_str(s: &str) -> Result<Half> {
        let bad = || Error::InvalidWeights(format!("'{s}' is not an integer or a half-integer n/2"));
        match s.split_once('/') {
            Some((n, "2")) => n.trim().parse::<i64>().map(Half).map_err(|_| bad()),
            Some(_) => Err(bad()),
            None => s.trim().parse::<i64>().map(Half::int).map_err(|_| bad()),
        }
    }
}

/// A summand of a semisimple representation of `W_ℝ` or `W_ℂ = ℂ^×`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WeilSummand {
    /// `z^a z̄^b` (dimension 1, complex place).
    ComplexCharacter { a: Half, b: Half },
    /// `I(χ_l)(t)`, induced from `z ↦ (z/|z|)^l` (dimension 2, real place).
    Induced { l: u64, twist: Half },
    /// `sgn(t)`.
    Sign { twist: Half },
    /// `1(t)`.
    Trivial { twist: Half },
}

impl WeilSummand {
    pub fn dimension(&self) -> usize {
        match self {
            WeilSummand::Induced { .. } => 2,
            _ => 1,
        }
    }

    /// The contragredient.
    pub fn dual(&self) -> WeilSummand {
        match *self {
            WeilSummand::ComplexCharacter { a, b } => WeilSummand::ComplexCharacter { a: -a, b: -b },
            WeilSummand::Induced { l, twist } => WeilSummand::Induced { l, twist: -twist },
            WeilSummand::Sign { twist } => WeilSummand::Sign { twist: -twist },
            WeilSummand::Trivial { twist } => WeilSummand::Trivial { twist: -twist },
        }
    }

    fn twist(&self) -> Half {
        match *self {
            WeilSummand::ComplexCharacter { .. } => Half(0),
            WeilSummand::Induced { twist, .. } | WeilSummand::Sign { twist } | WeilSummand::Trivial { twist } => twist,
        }
    }
}

impl fmt::Display for WeilSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tw = |t: Half| if t.0 == 0 { String::new() } else { format!("({t})") };
        match *self {
            WeilSummand::ComplexCharacter { a, b } => write!(f, "z^{a} zbar^{b}"),
            WeilSummand::Induced { l, twist } => write!(f, "I(chi_{l}){}", tw(twist)),
            WeilSummand::Sign { twist } => write!(f, "sgn{}", tw(twist)),
            WeilSummand::Trivial { twist } => write!(f, "1{}", tw(twist)),
        }
    }
}

/// Tensor product of two `W_ℝ` summands.
fn tensor_real(x: &WeilSummand, y: &WeilSummand) -> Result<Vec<WeilSummand>> {
    use WeilSummand::*;
    let t = x.twist() + y.twist();
    let out = match (*x, *y) {
        (Induced { l, .. }, Induced { l: m, .. }) => {
            let mut v = vec![Induced { l: l + m, twist: t }];
            let d = l.abs_diff(m);
            if d == 0 {
                v.push(Trivial { twist: t });
                v.push(Sign { twist: t });
            } else {
                v.push(Induced { l: d, twist: t });
            }
            v
        }
        (Induced { l, .. }, Sign { .. } | Trivial { .. }) | (Sign { .. } | Trivial { .. }, Induced { l, .. }) => {
            vec![Induced { l, twist: t }]
        }
        (Sign { .. }, Sign { .. }) | (Trivial { .. }, Trivial { .. }) => vec![Trivial { twist: t }],
        (Sign { .. }, Trivial { .. }) | (Trivial { .. }, Sign { .. }) => vec![Sign { twist: t }],
        _ => return Err(Error::InvalidWeights("complex characters are not W_R summands".into())),
    };
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignCharacter {
    Trivial,
    Sign,
}

impl std::str::FromStr for SignCharacter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triv" | "trivial" | "1" => Ok(SignCharacter::Trivial),
            "sgn" | "sign" => Ok(SignCharacter::Sign),
            _ => Err(Error::InvalidWeights(format!("unknown sign character '{s}'"))),
        }
    }
}

/// Archimedean weight data at one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaceWeights {
    /// `⊕ I(χ_{l_j})(−w/2)`, plus `ε(−w/2)` when `n` is odd.
    Real { l: Vec<u64>, w: i64, eps: Option<SignCharacter> },
    /// `⊕ z^{a_i} z̄^{b_i}`.
    Complex { a: Vec<Half>, b: Vec<Half> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Place {
    Real,
    Complex,
}

/// The parameter `r_L(π_v)` as a list of summands, after validation.
pub fn langlands_parameter(n: usize, weights: &PlaceWeights) -> Result<Vec<WeilSummand>> {
    if n == 0 {
        return Err(Error::InvalidWeights("n must be positive".into()));
    }
    match weights {
        PlaceWeights::Real { l, w, eps } => {
            if l.len() != n / 2 {
                return Err(Error::InvalidWeights(format!("a real place of GL_{n} needs {} values l_j, got {}", n / 2, l.len())));
            }
            if l.contains(&0) {
                return Err(Error::InvalidWeights("l_j must be at least 1".into()));
            }
            let mut sorted = l.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != l.len() {
                return Err(Error::InvalidWeights("l_j must be distinct".into()));
            }
            let twist = Half(-w);
            let mut out: Vec<WeilSummand> = l.iter().map(|&l| WeilSummand::Induced { l, twist }).collect();
            match (n % 2, eps) {
                (1, Some(SignCharacter::Trivial)) => out.push(WeilSummand::Trivial { twist }),
                (1, Some(SignCharacter::Sign)) => out.push(WeilSummand::Sign { twist }),
                (1, None) => return Err(Error::InvalidWeights(format!("odd n = {n} needs a sign character eps"))),
                (_, Some(_)) => return Err(Error::InvalidWeights(format!("even n = {n} takes no sign character"))),
                _ => {}
            }
            Ok(out)
        }
        PlaceWeights::Complex { a, b } => {
            if a.len() != n || b.len() != n {
                return Err(Error::InvalidWeights(format!("a complex place of GL_{n} needs {n} pairs (a_i, b_i)")));
            }
            let weight = a[0] + b[0];
            for (x, y) in a.iter().zip(b) {
                if *x + *y != weight {
                    return Err(Error::InvalidWeights("a_i + b_i is not constant".into()));
                }
                if !(*x - *y).is_integer() {
                    return Err(Error::InvalidWeights("a_i - b_i is not an integer".into()));
                }
            }
            Ok(a.iter().zip(b).map(|(&a, &b)| WeilSummand::ComplexCharacter { a, b }).collect())
        }
    }
}

/// `r_L(π_v) ⊗ r_L(π̃_v)` decomposed into irreducible summands.
pub fn ad_parameter(n: usize, weights: &PlaceWeights) -> Result<Vec<WeilSummand>> {
    let r = langlands_parameter(n, weights)?;
    let dual: Vec<WeilSummand> = r.iter().map(WeilSummand::dual).collect();
    let mut out = Vec::new();
    for x in &r {
        for y in &dual {
            match (x, y) {
                (WeilSummand::ComplexCharacter { a, b }, WeilSummand::ComplexCharacter { a: c, b: d }) => {
                    out.push(WeilSummand::ComplexCharacter { a: *a + *c, b: *b + *d })
                }
                _ => out.extend(tensor_real(x, y)?),
            }
        }
    }
    out.sort();
    Ok(out)
}

/// `Γ_ℝ(s + m)` or `Γ_ℂ(s + m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GammaFactor {
    Real(Half),
    Complex(Half),
}

impl GammaFactor {
    pub fn shift(&self) -> Half {
        match *self {
            GammaFactor::Real(m) | GammaFactor::Complex(m) => m,
        }
    }

    /// Poles at `s = −m − 2k` (real) or `s = −m − k` (complex), `k ≥ 0`.
    pub fn has_pole_at(&self, s: i64) -> bool {
        let d = Half::int(-s) - self.shift();
        match self {
            GammaFactor::Real(_) => d.0 >= 0 && d.0 % 4 == 0,
            GammaFactor::Complex(_) => d.0 >= 0 && d.0 % 2 == 0,
        }
    }

    /// Contribution to the total degree: 1 for `Γ_ℝ`, 2 for `Γ_ℂ`.
    pub fn degree(&self) -> usize {
        match self {
            GammaFactor::Real(_) => 1,
            GammaFactor::Complex(_) => 2,
        }
    }
}

impl fmt::Display for GammaFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, m) = match *self {
            GammaFactor::Real(m) => ("Gamma_R", m),
            GammaFactor::Complex(m) => ("Gamma_C", m),
        };
        if m.0 == 0 {
            write!(f, "{name}(s)")
        } else if m.0 > 0 {
            write!(f, "{name}(s+{m})")
        } else {
            write!(f, "{name}(s-{})", -m)
        }
    }
}

/// A multiset of Γ-factors, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GammaShape(pub Vec<GammaFactor>);

impl GammaShape {
    pub fn degree(&self) -> usize {
        self.0.iter().map(GammaFactor::degree).sum()
    }

    /// Removes one copy of `g`; false if absent.
    pub fn remove(&mut self, g: GammaFactor) -> bool {
        match self.0.iter().position(|x| *x == g) {
            Some(i) => {
                self.0.remove(i);
                true
            }
            None => false,
        }
    }

    pub fn poles_at(&self, s: i64) -> Vec<GammaFactor> {
        self.0.iter().copied().filter(|g| g.has_pole_at(s)).collect()
    }

    pub fn extend(&mut self, other: GammaShape) {
        self.0.extend(other.0);
        self.0.sort();
    }
}

impl fmt::Display for GammaShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Γ-factors via `1 → Γ_ℝ(s)`, `sgn → Γ_ℝ(s+1)`, `I(χ_l) → Γ_ℂ(s + l/2)`,
/// `z^p z̄^q → Γ_ℂ(s + max(p, q))`; a twist `(t)` shifts by `t`.
pub fn gamma_shape(summands: &[WeilSummand]) -> GammaShape {
    let mut v: Vec<GammaFactor> = summands
        .iter()
        .map(|s| match *s {
            WeilSummand::Trivial { twist } => GammaFactor::Real(twist),
            WeilSummand::Sign { twist } => GammaFactor::Real(Half::int(1) + twist),
            WeilSummand::Induced { l, twist } => GammaFactor::Complex(Half(l as i64) + twist),
            WeilSummand::ComplexCharacter { a, b } => GammaFactor::Complex(a.max(b)),
        })
        .collect();
    v.sort();
    GammaShape(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalityReport {
    pub critical: bool,
    /// Shape of `L_∞(s, π × π̃)` over all places.
    pub full_shape: GammaShape,
    /// Shape of `L_∞(s, Ad⁰, π)`.
    pub adjoint_shape: GammaShape,
    pub poles_at_0: Vec<GammaFactor>,
    pub poles_at_1: Vec<GammaFactor>,
    pub explanation: String,
}

impl CriticalityReport {
    pub fn to_json(&self) -> Value {
        let list = |v: &[GammaFactor]| v.iter().map(|g| g.to_string()).collect::<Vec<_>>();
        json!({
            "critical": self.critical,
            "rankin_selberg_shape": list(&self.full_shape.0),
            "adjoint_shape": list(&self.adjoint_shape.0),
            "poles_at_0": list(&self.poles_at_0),
            "poles_at_1": list(&self.poles_at_1),
            "explanation": self.explanation,
        })
    }
}

/// Whether `s = 1` is critical for `L(s, Ad⁰, π)` over a field with
/// signature `(r₁, r₂)`; `places` lists the real places first.
pub fn is_critical_at_1(signature: (usize, usize), places: &[PlaceWeights], n: usize) -> Result<CriticalityReport> {
    let (r1, r2) = signature;
    if r1 + 2 * r2 == 0 {
        return Err(Error::InvalidWeights("signature (0, 0) has no archimedean place".into()));
    }
    if places.len() != r1 + r2 {
        return Err(Error::InvalidWeights(format!("{} weight data for {} archimedean places", places.len(), r1 + r2)));
    }
    let mut full = GammaShape::default();
    for (i, w) in places.iter().enumerate() {
        let expect = if i < r1 { Place::Real } else { Place::Complex };
        let kind = match w {
            PlaceWeights::Real { .. } => Place::Real,
            PlaceWeights::Complex { .. } => Place::Complex,
        };
        if kind != expect {
            return Err(Error::InvalidWeights(format!("place {i} expects {expect:?} weight data")));
        }
        full.extend(gamma_shape(&ad_parameter(n, w)?));
    }
    // the Dedekind zeta factor of L(s, π × π̃)
    let mut adjoint = full.clone();
    for _ in 0..r1 {
        if !adjoint.remove(GammaFactor::Real(Half(0))) {
            return Err(Error::Invariant("no Gamma_R(s) to remove at a real place".into()));
        }
    }
    for _ in 0..r2 {
        if !adjoint.remove(GammaFactor::Complex(Half(0))) {
            return Err(Error::Invariant("no Gamma_C(s) to remove at a complex place".into()));
        }
    }
    let poles_at_0 = adjoint.poles_at(0);
    let poles_at_1 = adjoint.poles_at(1);
    let (critical, explanation) = if n == 1 {
        (false, "Ad⁰ of GL_1 is zero-dimensional; there is no adjoint L-function to be critical".to_string())
    } else if poles_at_0.is_empty() && poles_at_1.is_empty() {
        (true, format!("L_inf(s, Ad0) = {adjoint} is regular at s = 0 and s = 1"))
    } else {
        let culprits: Vec<String> = poles_at_0.iter().chain(&poles_at_1).map(|g| g.to_string()).collect();
        (false, format!("L_inf(s, Ad0) = {adjoint} has poles from {}", culprits.join(", ")))
    };
    Ok(CriticalityReport { critical, full_shape: full, adjoint_shape: adjoint, poles_at_0, poles_at_1, explanation })
}

/// Small weights satisfying all constraints, for exhaustive checks.
pub fn generic_weights(place: Place, n: usize) -> PlaceWeights {
    match place {
        Place::Real => PlaceWeights::Real {
            l: (0..n / 2).map(|j| 2 * j as u64 + 2).collect(),
            w: 0,
            eps: if n % 2 == 1 { Some(SignCharacter::Trivial) } else { None },
        },
        Place::Complex => {
            // a_i + b_i = 0 and a_i distinct
            let a: Vec<Half> = (0..n).map(|i| Half(2 * i as i64 - (n as i64 - 1))).collect();
            let b = a.iter().map(|x| -*x).collect();
            PlaceWeights::Complex { a, b }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(l: &[u64], eps: Option<SignCharacter>) -> PlaceWeights {
        PlaceWeights::Real { l: l.to_vec(), w: 3, eps }
    }

    #[test]
    fn real_gl2_adjoint() {
        let s = ad_parameter(2, &real(&[5], None)).unwrap();
        let mut expect = vec![
            WeilSummand::Induced { l: 10, twist: Half(0) },
            WeilSummand::Sign { twist: Half(0) },
            WeilSummand::Trivial { twist: Half(0) },
        ];
        expect.sort();
        assert_eq!(s, expect);
    }

    #[test]
    fn gl1_is_a_single_trivial_summand() {
        let s = ad_parameter(1, &real(&[], Some(SignCharacter::Sign))).unwrap();
        assert_eq!(s, vec![WeilSummand::Trivial { twist: Half(0) }]);
        let c = ad_parameter(1, &PlaceWeights::Complex { a: vec![Half(3)], b: vec![Half(1)] }).unwrap();
        assert_eq!(c, vec![WeilSummand::ComplexCharacter { a: Half(0), b: Half(0) }]);
    }

    #[test]
    fn complex_place_has_n_trivial_characters() {
        for n in 1..6 {
            let s = ad_parameter(n, &generic_weights(Place::Complex, n)).unwrap();
            assert_eq!(s.len(), n * n);
            let trivial = s.iter().filter(|x| **x == WeilSummand::ComplexCharacter { a: Half(0), b: Half(0) }).count();
            assert!(trivial >= n);
        }
    }

    #[test]
    fn dictionary() {
        assert_eq!(gamma_shape(&[WeilSummand::Trivial { twist: Half(0) }]).0, vec![GammaFactor::Real(Half(0))]);
        assert_eq!(gamma_shape(&[WeilSummand::Induced { l: 2, twist: Half(0) }]).0, vec![GammaFactor::Complex(Half(2))]);
        assert_eq!(
            gamma_shape(&[WeilSummand::ComplexCharacter { a: Half(0), b: Half(0) }]).0,
            vec![GammaFactor::Complex(Half(0))]
        );
    }

    #[test]
    fn poles() {
        assert!(GammaFactor::Real(Half(0)).has_pole_at(0));
        assert!(!GammaFactor::Real(Half(2)).has_pole_at(0));
        assert!(GammaFactor::Real(Half(4)).has_pole_at(-2));
        assert!(!GammaFactor::Real(Half(2)).has_pole_at(-2));
        assert!(GammaFactor::Complex(Half(2)).has_pole_at(-1));
        assert!(!GammaFactor::Complex(Half(1)).has_pole_at(-1));
        assert!(!GammaFactor::Complex(Half(0)).has_pole_at(1));
    }

    #[test]
    fn proposition_cases() {
        for l1 in 1..6 {
            let r = is_critical_at_1((1, 0), &[real(&[l1], None)], 2).unwrap();
            assert!(r.critical, "{}", r.explanation);
            assert_eq!(r.adjoint_shape.0, vec![GammaFactor::Real(Half(2)), GammaFactor::Complex(Half(2 * l1 as i64))]);
        }
        let r = is_critical_at_1((1, 0), &[real(&[2], Some(SignCharacter::Trivial))], 3).unwrap();
        assert!(!r.critical);
        assert!(r.poles_at_0.contains(&GammaFactor::Real(Half(0))));
        let r = is_critical_at_1((0, 1), &[generic_weights(Place::Complex, 2)], 2).unwrap();
        assert!(!r.critical);
    }

    #[test]
    fn validation() {
        assert!(ad_parameter(2, &real(&[0], None)).is_err());
        assert!(ad_parameter(4, &real(&[3, 3], None)).is_err());
        assert!(ad_parameter(3, &real(&[3], None)).is_err());
        assert!(ad_parameter(2, &real(&[3], Some(SignCharacter::Sign))).is_err());
        let bad_sum = PlaceWeights::Complex { a: vec![Half(2), Half(0)], b: vec![Half(0), Half(0)] };
        assert!(ad_parameter(2, &bad_sum).is_err());
        let bad_parity = PlaceWeights::Complex { a: vec![Half(1), Half(0)], b: vec![Half(0), Half(1)] };
        assert!(ad_parameter(2, &bad_parity).is_err());
        assert!(is_critical_at_1((0, 0), &[], 2).is_err());
        assert!(is_critical_at_1((2, 0), &[real(&[1], None)], 2).is_err());
    }

    #[test]
    fn half_parsing() {
        assert_eq!("3/2".parse::<Half>().unwrap(), Half(3));
        assert_eq!("-2".parse::<Half>().unwrap(), Half(-4));
        assert!("1/3".parse::<Half>().is_err());
        assert_eq!(Half(3).to_string(), "3/2");
    }
}
