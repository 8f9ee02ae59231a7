//! JSON file formats.
//!
//! Numbers are written with 17 significant digits, enough to read back the
//! same `f64`. Output is assembled by hand so that byte layout is fixed;
//! input goes through `serde_json`.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use polyshape::transform::Frame;
use polyshape::{Polygon, WeightVector};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolygonFile {
    vertices: Vec<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightsFile {
    weights: Vec<Vec<f64>>,
}

/// `x` in scientific notation with 17 significant digits.
pub fn number(x: f64) -> String {
    format!("{x:.16e}")
}

fn pair_list(out: &mut String, values: &[Complex64]) {
    out.push('[');
    for (i, z) in values.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write!(out, "[{}, {}]", number(z.re), number(z.im)).unwrap();
    }
    out.push(']');
}

fn to_complex(field: &str, pairs: Vec<Vec<f64>>) -> Result<Vec<Complex64>, CliError> {
    if pairs.len() < 3 {
        return Err(CliError::parse(format!(
            "field `{field}`: need at least 3 entries, found {}",
            pairs.len()
        )));
    }
    pairs
        .into_iter()
        .enumerate()
        .map(|(i, pair)| match pair[..] {
            [re, im] if re.is_finite() && im.is_finite() => Ok(Complex64::new(re, im)),
            [_, _] => Err(CliError::parse(format!(
                "field `{field}`: entry {i} is not finite"
            ))),
            _ => Err(CliError::parse(format!(
                "field `{field}`: entry {i} has {} numbers, expected [re, im]",
                pair.len()
            ))),
        })
        .collect()
}

pub fn parse_polygon(text: &str) -> Result<Polygon, CliError> {
    let file: PolygonFile =
        serde_json::from_str(text).map_err(|e| CliError::parse(format!("polygon file: {e}")))?;
    let vertices = to_complex("vertices", file.vertices)?;
    Polygon::new(vertices).map_err(|e| CliError::from_core("field `vertices`", e))
}

pub fn parse_weights(text: &str) -> Result<WeightVector, CliError> {
    let file: WeightsFile =
        serde_json::from_str(text).map_err(|e| CliError::parse(format!("weights file: {e}")))?;
    let weights = to_complex("weights", file.weights)?;
    WeightVector::new(weights).map_err(|e| CliError::from_core("field `weights`", e))
}

pub fn polygon_json(p: &Polygon) -> String {
    let mut out = String::from("{\"vertices\": ");
    pair_list(&mut out, p.vertices());
    out.push_str("}\n");
    out
}

pub fn weights_json(w: &WeightVector) -> String {
    let mut out = String::from("{\"weights\": ");
    pair_list(&mut out, w.as_slice());
    out.push_str("}\n");
    out
}

/// One trajectory line, without the trailing newline.
pub fn frame_json(frame: &Frame) -> String {
    let mut out = format!("{{\"step\": {}, \"vertices\": ", frame.step);
    pair_list(&mut out, frame.shape.vertices());
    write!(
        out,
        ", \"log_scale\": {}, \"distance\": ",
        number(frame.log_scale)
    )
    .unwrap();
    match frame.distance_to_target {
        Some(d) => out.push_str(&number(d)),
        None => out.push_str("null"),
    }
    out.push('}');
    out
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))
}

pub fn read_polygon(path: &Path) -> Result<Polygon, CliError> {
    parse_polygon(&read(path)?)
        .map_err(|e| CliError::new(e.code, format!("{}: {e}", path.display())))
}

pub fn read_weights(path: &Path) -> Result<WeightVector, CliError> {
    parse_weights(&read(path)?)
        .map_err(|e| CliError::new(e.code, format!("{}: {e}", path.display())))
}

/// A complex number written `re,im` on the command line.
pub fn parse_complex_arg(s: &str) -> Result<Complex64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `re,im`, got `{s}`"))?;
    let part = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("`{t}` is not a finite number"))
    };
    Ok(Complex64::new(part(re)?, part(im)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::exit;

    #[test]
    fn polygon_round_trip_is_exact() {
        let p = Polygon::from_pairs(&[(0.1, -0.0), (1.0 / 3.0, 2e-300), (-7.5e12, 0.7)]).unwrap();
        let back = parse_polygon(&polygon_json(&p)).unwrap();
        for (a, b) in p.vertices().iter().zip(back.vertices()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn number_format() {
        assert_eq!(number(1.0), "1.0000000000000000e0");
        assert_eq!(number(-0.25), "-2.5000000000000000e-1");
    }

    #[test]
    fn rejects_bad_documents() {
        for (text, needle) in [
            ("{\"vertices\": [[0,0],[1,0]]}", "vertices"),
            ("{\"vertices\": [[0,0],[1,0],[0,1]]} x", "trailing"),
            ("{\"verts\": []}", "verts"),
            ("{\"vertices\": [[0,0],[1,0],[0]]}", "vertices"),
        ] {
            let err = parse_polygon(text).unwrap_err();
            assert_eq!(err.code, exit::PARSE, "{text}");
            assert!(err.message.contains(needle), "{}", err.message);
        }
    }

    #[test]
    fn weights_may_not_be_polygons() {
        assert!(parse_weights("{\"vertices\": [[0,0],[1,0],[0,1]]}").is_err());
        let w = parse_weights("{\"weights\": [[0,0],[1,0],[1,-1]]}").unwrap();
        assert_eq!(w.as_slice()[2], Complex64::new(1.0, -1.0));
    }

    #[test]
    fn complex_arguments() {
        assert_eq!(parse_complex_arg("1,-2.5"), Ok(Complex64::new(1.0, -2.5)));
        assert_eq!(parse_complex_arg(" 0 , 1 "), Ok(Complex64::new(0.0, 1.0)));
        assert!(parse_complex_arg("1").is_err());
        assert!(parse_complex_arg("a,1").is_err());
        assert!(parse_complex_arg("inf,1").is_err());
    }
}
