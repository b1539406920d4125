//! JSON formats for surfaces and two-cylinder coordinates.

use std::path::Path;

use origami_sv_core::cylinders::{build_two_cylinder, TwoCylCoords};
use origami_sv_core::origami::Origami;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// `{"n":3,"sigma_h":[1,0,2],"sigma_v":[2,1,0]}` with 0-based square labels;
/// `sigma_h[i]` is the right neighbour and `sigma_v[i]` the upper neighbour
/// of square `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrigamiJson {
    pub n: usize,
    pub sigma_h: Vec<u32>,
    pub sigma_v: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordsJson {
    pub a: u64,
    pub b: u64,
    pub h: u64,
    pub y: u64,
    pub t1: u64,
    pub t2: u64,
}

pub fn parse_origami(text: &str) -> Result<Origami, CliError> {
    let raw: OrigamiJson =
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("origami JSON: {e}")))?;
    if raw.sigma_h.len() != raw.n || raw.sigma_v.len() != raw.n {
        return Err(CliError::Validation(format!(
            "origami JSON: n = {} but the permutations have lengths {} and {}",
            raw.n,
            raw.sigma_h.len(),
            raw.sigma_v.len()
        )));
    }
    Ok(Origami::from_images(raw.sigma_h, raw.sigma_v)?)
}

pub fn origami_to_json(o: &Origami) -> String {
    let raw = OrigamiJson {
        n: o.n(),
        sigma_h: o.sigma_h().images().to_vec(),
        sigma_v: o.sigma_v().images().to_vec(),
    };
    serde_json::to_string(&raw).expect("plain struct serializes")
}

pub fn parse_coords(text: &str) -> Result<TwoCylCoords, CliError> {
    let c: CoordsJson =
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("coordinates JSON: {e}")))?;
    Ok(TwoCylCoords::new(c.a, c.b, c.h, c.y, c.t1, c.t2)?)
}

pub fn coords_to_json(c: &TwoCylCoords) -> String {
    let raw = CoordsJson { a: c.a, b: c.b, h: c.h, y: c.y, t1: c.t1, t2: c.t2 };
    serde_json::to_string(&raw).expect("plain struct serializes")
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

/// Surface given either directly or by two-cylinder coordinates.
pub fn load_surface(origami: Option<&Path>, coords: Option<&Path>) -> Result<Origami, CliError> {
    match (origami, coords) {
        (Some(p), None) => parse_origami(&read(p)?),
        (None, Some(p)) => Ok(build_two_cylinder(&parse_coords(&read(p)?)?)?),
        _ => Err(CliError::Validation("give exactly one of --origami and --coords".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origami_round_trip() {
        let text = r#"{"n":3,"sigma_h":[1,0,2],"sigma_v":[2,1,0]}"#;
        let o = parse_origami(text).unwrap();
        assert_eq!(origami_to_json(&o), text);
    }

    #[test]
    fn coords_round_trip() {
        let text = r#"{"a":1,"b":2,"h":1,"y":1,"t1":0,"t2":1}"#;
        assert_eq!(coords_to_json(&parse_coords(text).unwrap()), text);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_origami(r#"{"n":2,"sigma_h":[1,0,2],"sigma_v":[2,1,0]}"#).is_err());
        assert!(parse_origami(r#"{"n":3,"sigma_h":[1,1,2],"sigma_v":[2,1,0]}"#).is_err());
        assert!(parse_origami(r#"{"n":3,"sigma_h":[1,0,2]}"#).is_err());
        let e = parse_coords(r#"{"a":2,"b":2,"h":1,"y":1,"t1":0,"t2":0}"#).unwrap_err();
        assert!(e.to_string().contains("a < b"), "{e}");
        assert_eq!(e.exit_code(), 2);
    }
}
