//! Series file format.
//!
//! One JSON object per file:
//!
//! ```json
//! {"ring":"Q","precision":3,"coeffs":["1","-1/2","3"]}
//! ```
//!
//! Ring tags are `Z`, `Q` and `Zmod:<m>`. Payloads are decimal strings,
//! `p/q` for non-integral rationals, and canonical residues. Emission is
//! canonical, so `parse(emit(a)) == a` and `emit(parse(s)) == s` for every
//! emitted `s`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::series::HurwitzSeries;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesFile {
    ring: Ring,
    precision: usize,
    coeffs: Vec<String>,
}

/// Canonical single-line encoding, newline terminated.
pub fn emit(a: &HurwitzSeries) -> String {
    let file = SeriesFile {
        ring: a.ring(),
        precision: a.precision(),
        coeffs: a.coeffs().iter().map(ToString::to_string).collect(),
    };
    let mut s = serde_json::to_string(&file).expect("series always serializes");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<HurwitzSeries> {
    let file: SeriesFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("series file: {e}")))?;
    if file.coeffs.len() != file.precision {
        return Err(Error::Parse(format!(
            "precision {} but {} coefficients",
            file.precision,
            file.coeffs.len()
        )));
    }
    let coeffs = file
        .coeffs
        .iter()
        .map(|c| file.ring.parse_value(c))
        .collect::<Result<Vec<_>>>()?;
    HurwitzSeries::new(file.ring, coeffs).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn emit_shape() {
        let ring = Ring::Rationals;
        let a = HurwitzSeries::new(
            ring,
            vec![ring.one(), ring.from_fraction(-1, 2).unwrap(), ring.from_i64(3)],
        )
        .unwrap();
        assert_eq!(emit(&a), "{\"ring\":\"Q\",\"precision\":3,\"coeffs\":[\"1\",\"-1/2\",\"3\"]}\n");
        assert_eq!(parse(&emit(&a)).unwrap(), a);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse("{\"ring\":\"Z\",\"precision\":2,\"coeffs\":[\"1\"]}").is_err());
        assert!(parse("{\"ring\":\"Zmod:1\",\"precision\":1,\"coeffs\":[\"1\"]}").is_err());
        assert!(parse("{\"ring\":\"Z\",\"precision\":1,\"coeffs\":[\"1/2\"]}").is_err());
        assert!(parse("{\"ring\":\"Z\",\"precision\":0,\"coeffs\":[]}").is_err());
        assert!(parse("{\"ring\":\"Z\",\"precision\":1,\"coeffs\":[\"1\"],\"x\":1}").is_err());
        assert!(parse("not json").is_err());
    }

    #[test]
    fn non_canonical_input_is_normalized() {
        let a = parse("{\"ring\":\"Q\",\"precision\":2,\"coeffs\":[\"2/4\",\"-3/-1\"]}").unwrap();
        assert_eq!(emit(&a), "{\"ring\":\"Q\",\"precision\":2,\"coeffs\":[\"1/2\",\"3\"]}\n");
        let m = parse("{\"ring\":\"Zmod:7\",\"precision\":1,\"coeffs\":[\"-1\"]}").unwrap();
        assert_eq!(emit(&m), "{\"ring\":\"Zmod:7\",\"precision\":1,\"coeffs\":[\"6\"]}\n");
    }

    proptest! {
        #[test]
        fn round_trip(v in prop::collection::vec((-1000i64..1000, 1i64..50), 1..20), tag in 0usize..3) {
            let ring = [Ring::Integers, Ring::Rationals, Ring::modular(97).unwrap()][tag];
            let coeffs = v.iter().map(|&(p, d)| match ring {
                Ring::Rationals => ring.from_fraction(p, d).unwrap(),
                _ => ring.from_i64(p),
            }).collect();
            let a = HurwitzSeries::new(ring, coeffs).unwrap();
            let text = emit(&a);
            prop_assert_eq!(parse(&text).unwrap(), a);
            prop_assert_eq!(emit(&parse(&text).unwrap()), text);
        }
    }
}
