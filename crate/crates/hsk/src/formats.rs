//! JSON formats for parts and polynomial fields.
//!
//! Part file:
//!
//! ```json
//! { "name": "cube", "vertices": [[0,0,0], ...], "faces": [[0,4,6,2], ...] }
//! ```
//!
//! Face loops run counterclockwise seen from outside.
//!
//! Polynomial field:
//!
//! ```json
//! { "rank": 2, "terms": [ { "exp": [1,0,0], "coef": [1,0,0, 0,1,0, 0,0,1] } ] }
//! ```
//!
//! Coefficients are flattened row-major: 1, 3, 9 or 27 numbers for ranks
//! 0 to 3 (a bare number is accepted for rank 0). Rank-3 coefficients
//! describe a hyperstress and must satisfy `H_ijk = H_ikj`.

use std::fs;
use std::path::Path;

use hsk_core::balance::FieldTriple;
use hsk_core::fields::{Monomial, PolyField, MAX_DEGREE};
use hsk_core::geometry::canned;
use hsk_core::sample;
use hsk_core::{Error, PartSpec, Poly, PolyhedralPart, Tensor2, Tensor3, Tolerances, Vector3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::InputError;

/// Relative right-pair asymmetry accepted in rank-3 coefficients.
const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartFile {
    #[serde(default)]
    name: Option<String>,
    vertices: Vec<[f64; 3]>,
    faces: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct NamedPart {
    pub name: String,
    pub part: PolyhedralPart,
}

pub fn canned_parts(tol: &Tolerances) -> Vec<NamedPart> {
    canned::all()
        .into_iter()
        .map(|(name, spec)| NamedPart {
            name: name.to_string(),
            part: PolyhedralPart::build(&spec, tol).expect("canned parts are valid"),
        })
        .collect()
}

/// Parses and validates a part. `origin` labels diagnostics.
pub fn parse_part(text: &str, origin: &str, tol: &Tolerances) -> Result<NamedPart, InputError> {
    let file: PartFile = serde_json::from_str(text).map_err(|e| InputError::json(origin, e))?;
    let spec = PartSpec { vertices: file.vertices.iter().map(|&v| Vector3(v)).collect(), faces: file.faces };
    let part = PolyhedralPart::build(&spec, tol).map_err(|e| {
        let err = InputError::new(origin, e.to_string());
        match face_of(&e).and_then(|f| face_line(text, f)) {
            Some(line) => err.at(line, None),
            None => err,
        }
    })?;
    let name = file.name.unwrap_or_else(|| {
        Path::new(origin).file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| origin.to_string())
    });
    Ok(NamedPart { name, part })
}

pub fn load_part(path: &Path, tol: &Tolerances) -> Result<NamedPart, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError::io(path, e))?;
    parse_part(&text, &path.display().to_string(), tol)
}

/// Serializes a part description in the part-file format, one vertex
/// or face per line so that face diagnostics point somewhere useful.
pub fn part_to_json(name: &str, spec: &PartSpec) -> String {
    let rows = |items: Vec<String>| items.join(",\n    ");
    format!(
        "{{\n  \"name\": {},\n  \"vertices\": [\n    {}\n  ],\n  \"faces\": [\n    {}\n  ]\n}}\n",
        compact(name),
        rows(spec.vertices.iter().map(|v| compact(&v.0)).collect()),
        rows(spec.faces.iter().map(compact).collect()),
    )
}

fn compact<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn face_of(err: &Error) -> Option<usize> {
    match err {
        Error::NonPlanarFace { face, .. } | Error::DegenerateFace { face } | Error::BadVertexIndex { face, .. } => {
            Some(*face)
        }
        _ => None,
    }
}

/// 1-based line on which the `index`-th loop of the `"faces"` array opens.
fn face_line(text: &str, index: usize) -> Option<usize> {
    let key = text.find("\"faces\"")?;
    let open = key + text[key..].find('[')?;
    let mut depth = 0usize;
    let mut seen = 0usize;
    for (offset, ch) in text[open..].char_indices() {
        match ch {
            '[' => {
                depth += 1;
                if depth == 2 {
                    if seen == index {
                        let pos = open + offset;
                        return Some(text[..pos].matches('\n').count() + 1);
                    }
                    seen += 1;
                }
            }
            ']' => {
                depth = depth.checked_sub(1)?;
                if depth == 0 {
                    return None;
                }
            }
            _ => {}
        }
    }
    None
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum CoefJson {
    Scalar(f64),
    Flat(Vec<f64>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    exp: [u8; 3],
    coef: CoefJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    rank: usize,
    terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSpec {
    pub seed: u64,
    pub degree: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSource {
    Random { random: RandomSpec },
    Explicit(FieldJson),
}

/// Field-spec file: either `{"random": {...}}` for all three fields, or
/// per-field sources. A missing hyperstress means a simple continuum.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldsFile {
    Random {
        random: RandomSpec,
    },
    Explicit {
        stress: FieldSource,
        #[serde(default)]
        hyperstress: Option<FieldSource>,
        velocity: FieldSource,
    },
}

fn coefficient_len(rank: usize) -> Option<usize> {
    [1, 3, 9, 27].get(rank).copied()
}

pub fn field_from_json(field: &FieldJson) -> Result<PolyField, String> {
    let want = coefficient_len(field.rank).ok_or_else(|| format!("rank {} is not supported (0 to 3)", field.rank))?;
    let mut flat: Vec<(Monomial, Vec<f64>)> = Vec::with_capacity(field.terms.len());
    for (n, t) in field.terms.iter().enumerate() {
        let c = match &t.coef {
            CoefJson::Scalar(x) => vec![*x],
            CoefJson::Flat(v) => v.clone(),
        };
        if c.len() != want {
            return Err(format!("term {n}: rank-{} coefficient needs {want} numbers, got {}", field.rank, c.len()));
        }
        let m = Monomial(t.exp);
        if m.degree() > MAX_DEGREE {
            return Err(format!("term {n}: degree {} exceeds {MAX_DEGREE}", m.degree()));
        }
        flat.push((m, c));
    }
    let err = |e: Error| e.to_string();
    Ok(match field.rank {
        0 => PolyField::Scalar(Poly::from_terms(flat.into_iter().map(|(m, c)| (m, c[0]))).map_err(err)?),
        1 => PolyField::Vector(
            Poly::from_terms(flat.into_iter().map(|(m, c)| (m, Vector3([c[0], c[1], c[2]])))).map_err(err)?,
        ),
        2 => PolyField::Tensor(
            Poly::from_terms(flat.into_iter().map(|(m, c)| (m, Tensor2::from_fn(|i, j| c[3 * i + j])))).map_err(err)?,
        ),
        _ => {
            let mut terms = Vec::with_capacity(flat.len());
            for (n, (m, c)) in flat.into_iter().enumerate() {
                let full = Tensor3::from_fn(|i, j, k| c[9 * i + 3 * j + k]);
                let defect = full.symmetry_defect();
                if defect > SYMMETRY_TOL * full.max_abs().max(1.0) {
                    return Err(format!("term {n}: rank-3 coefficient violates H_ijk = H_ikj (defect {defect:e})"));
                }
                terms.push((m, full.sym_part()));
            }
            PolyField::Hyperstress(Poly::from_terms(terms).map_err(err)?)
        }
    })
}

pub fn field_to_json(field: &PolyField) -> FieldJson {
    fn terms<C: hsk_core::fields::Coefficient>(p: &Poly<C>, flat: impl Fn(&C) -> Vec<f64>) -> Vec<TermJson> {
        p.terms().map(|(m, c)| TermJson { exp: m.0, coef: CoefJson::Flat(flat(c)) }).collect()
    }
    let terms = match field {
        PolyField::Scalar(p) => terms(p, |c| vec![*c]),
        PolyField::Vector(p) => terms(p, |c| c.0.to_vec()),
        PolyField::Tensor(p) => terms(p, |c| c.0.iter().flatten().copied().collect()),
        PolyField::Tensor3(p) => terms(p, |c| c.0.iter().flatten().flatten().copied().collect()),
        PolyField::Hyperstress(p) => terms(p, |c| c.expand().0.iter().flatten().flatten().copied().collect()),
    };
    FieldJson { rank: field.rank(), terms }
}

/// `(T, H, v)` drawn from one seed: `T` and `H` of `degree`, `v` one
/// degree higher (capped at the supported maximum).
pub fn random_triple(seed: u64, degree: usize) -> FieldTriple {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stress = sample::stress_field(&mut rng, degree);
    let hyperstress = sample::hyperstress_field(&mut rng, degree);
    let velocity = sample::velocity_field(&mut rng, (degree + 1).min(MAX_DEGREE));
    FieldTriple::new(stress, hyperstress, velocity)
}

fn check_degree(degree: usize) -> Result<(), String> {
    if degree > MAX_DEGREE {
        return Err(format!("degree {degree} exceeds {MAX_DEGREE}"));
    }
    Ok(())
}

fn resolve(source: &FieldSource, rank: usize, slot: usize) -> Result<PolyField, String> {
    match source {
        FieldSource::Random { random } => {
            check_degree(random.degree)?;
            let t = random_triple(random.seed, random.degree);
            Ok(match slot {
                0 => PolyField::Tensor(t.stress),
                1 => PolyField::Hyperstress(t.hyperstress),
                _ => PolyField::Vector(t.velocity),
            })
        }
        FieldSource::Explicit(json) => {
            if json.rank != rank {
                return Err(format!("expected a rank-{rank} field, got rank {}", json.rank));
            }
            field_from_json(json)
        }
    }
}

pub fn parse_fields(text: &str, origin: &str) -> Result<FieldTriple, InputError> {
    let file: FieldsFile = serde_json::from_str(text).map_err(|e| InputError::json(origin, e))?;
    let fail = |slot: &'static str| move |msg: String| InputError::new(origin, format!("{slot}: {msg}"));
    match file {
        FieldsFile::Random { random } => {
            check_degree(random.degree).map_err(fail("random"))?;
            Ok(random_triple(random.seed, random.degree))
        }
        FieldsFile::Explicit { stress, hyperstress, velocity } => {
            let PolyField::Tensor(t) = resolve(&stress, 2, 0).map_err(fail("stress"))? else { unreachable!() };
            let h = match &hyperstress {
                Some(src) => match resolve(src, 3, 1).map_err(fail("hyperstress"))? {
                    PolyField::Hyperstress(h) => h,
                    _ => unreachable!(),
                },
                None => Poly::zero(),
            };
            let PolyField::Vector(v) = resolve(&velocity, 1, 2).map_err(fail("velocity"))? else { unreachable!() };
            Ok(FieldTriple::new(t, h, v))
        }
    }
}

pub fn load_fields(path: &Path) -> Result<FieldTriple, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError::io(path, e))?;
    parse_fields(&text, &path.display().to_string())
}

/// Serializes explicit fields in the field-spec format.
pub fn fields_to_json(fields: &FieldTriple) -> String {
    let src = |f: PolyField| FieldSource::Explicit(field_to_json(&f));
    let file = FieldsFile::Explicit {
        stress: src(PolyField::Tensor(fields.stress.clone())),
        hyperstress: Some(src(PolyField::Hyperstress(fields.hyperstress.clone()))),
        velocity: src(PolyField::Vector(fields.velocity.clone())),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}
