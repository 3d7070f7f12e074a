//! The `--signature` and `--weights` mini-languages.

use congruence_core::criticality::{generic_weights, Half, Place, PlaceWeights, SignCharacter};
use congruence_core::Error;

pub fn parse_signature(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected r1,r2 but got '{s}'"))?;
    let r1 = a.trim().parse().map_err(|_| format!("'{a}' is not a count"))?;
    let r2 = b.trim().parse().map_err(|_| format!("'{b}' is not a count"))?;
    Ok((r1, r2))
}

fn invalid(msg: String) -> Error {
    Error::InvalidWeights(msg)
}

fn parse_place(spec: &str) -> Result<PlaceWeights, Error> {
    let mut ls: Vec<(usize, u64)> = Vec::new();
    let (mut w, mut eps) = (None, None);
    let (mut a, mut b) = (None, None);
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item.split_once('=').ok_or_else(|| invalid(format!("'{item}' is not key=value")))?;
        let (key, value) = (key.trim(), value.trim());
        let halves = |v: &str| -> Result<Vec<Half>, Error> { v.split(':').map(|x| x.trim().parse::<Half>()).collect() };
        match key {
            "w" => w = Some(value.parse::<i64>().map_err(|_| invalid(format!("w = '{value}' is not an integer")))?),
            "eps" => eps = Some(value.parse::<SignCharacter>()?),
            "a" => a = Some(halves(value)?),
            "b" => b = Some(halves(value)?),
            "l" => {
                for (i, x) in value.split(':').enumerate() {
                    ls.push((i + 1, x.trim().parse().map_err(|_| invalid(format!("l = '{x}' is not a positive integer")))?));
                }
            }
            _ => {
                let idx = key
                    .strip_prefix('l')
                    .and_then(|i| i.parse::<usize>().ok())
                    .ok_or_else(|| invalid(format!("unknown weight key '{key}'")))?;
                let l = value.parse().map_err(|_| invalid(format!("{key} = '{value}' is not a positive integer")))?;
                ls.push((idx, l));
            }
        }
    }
    match (a, b) {
        (None, None) => {
            ls.sort_unstable();
            for (k, (i, _)) in ls.iter().enumerate() {
                if *i != k + 1 {
                    return Err(invalid(format!("weights l1..l{} must be given exactly once each", ls.len())));
                }
            }
            Ok(PlaceWeights::Real { l: ls.into_iter().map(|(_, l)| l).collect(), w: w.unwrap_or(0), eps })
        }
        (Some(a), Some(b)) if ls.is_empty() && w.is_none() && eps.is_none() => Ok(PlaceWeights::Complex { a, b }),
        (Some(_), Some(_)) => Err(invalid("complex place mixes in real weight keys".into())),
        _ => Err(invalid("a complex place needs both a=... and b=...".into())),
    }
}

/// Weights for every place, real places first.
pub fn place_weights(n: usize, signature: (usize, usize), spec: Option<&str>) -> Result<Vec<PlaceWeights>, Error> {
    let (r1, r2) = signature;
    let kinds: Vec<Place> = std::iter::repeat(Place::Real).take(r1).chain(std::iter::repeat(Place::Complex).take(r2)).collect();
    let Some(spec) = spec else {
        return Ok(kinds.iter().map(|&k| generic_weights(k, n)).collect());
    };
    let given: Vec<PlaceWeights> = spec.split(';').map(str::trim).filter(|s| !s.is_empty()).map(parse_place).collect::<Result<_, _>>()?;
    let kind_of = |p: &PlaceWeights| match p {
        PlaceWeights::Real { .. } => Place::Real,
        PlaceWeights::Complex { .. } => Place::Complex,
    };
    let places = if given.len() == 1 && kinds.len() > 1 {
        if kinds.iter().any(|&k| k != kind_of(&given[0])) {
            return Err(invalid("a single weight entry can only describe places of one kind".into()));
        }
        vec![given[0].clone(); kinds.len()]
    } else {
        given
    };
    if places.len() != kinds.len() {
        return Err(invalid(format!("{} weight entries for {} places", places.len(), kinds.len())));
    }
    for (i, (p, k)) in places.iter().zip(&kinds).enumerate() {
        if kind_of(p) != *k {
            return Err(invalid(format!("entry {} must describe a {} place", i + 1, if *k == Place::Real { "real" } else { "complex" })));
        }
    }
    Ok(places)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_entry_is_shared_by_all_real_places() {
        let p = place_weights(2, (2, 0), Some("l1=4")).unwrap();
        assert_eq!(p, vec![PlaceWeights::Real { l: vec![4], w: 0, eps: None }; 2]);
    }

    #[test]
    fn complex_entry_uses_half_integers() {
        let p = place_weights(2, (0, 1), Some("a=1/2:-1/2,b=-1/2:1/2")).unwrap();
        assert_eq!(p, vec![PlaceWeights::Complex { a: vec![Half(1), Half(-1)], b: vec![Half(-1), Half(1)] }]);
    }

    #[test]
    fn keys_out_of_order_and_gaps() {
        let p = place_weights(5, (1, 0), Some("l2=6,l1=2,eps=sgn,w=2")).unwrap();
        assert_eq!(p[0], PlaceWeights::Real { l: vec![2, 6], w: 2, eps: Some(SignCharacter::Sign) });
        assert!(place_weights(4, (1, 0), Some("l1=2,l3=6")).is_err());
        assert!(place_weights(2, (1, 1), Some("l1=2")).is_err());
        assert!(place_weights(2, (1, 0), Some("q=2")).is_err());
    }

    #[test]
    fn signature_syntax() {
        assert_eq!(parse_signature("1,0"), Ok((1, 0)));
        assert!(parse_signature("1").is_err());
    }
}
