//! Input resolution: variety and skew-form files, catalog addresses, point
//! lists, and the degree cap that bounds runaway symbolic inputs.

use std::env;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use oscdual_core::bryant::BryantError;
use oscdual_core::catalog::{
    hypersurface_family_curve, monomial_curve, v_family, CatalogError, MonomialSpec,
};
use oscdual_core::contact::{ContactError, SkewForm};
use oscdual_core::exactmath::{parse_poly, parse_rational, ExactMathError};
use oscdual_core::osculation::OsculationError;
use oscdual_core::projective::ProjectiveError;
use oscdual_core::{MultiPoly, ParamVariety, ProjPoint, Rational};

pub const DEFAULT_MAX_DEGREE: u32 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("malformed JSON in {path}: {detail}")]
    Json { path: String, detail: String },
    #[error("not a rational number: `{text}`")]
    BadRational { text: String },
    #[error("a point needs at least two comma-separated coordinates, got `{text}`")]
    BadPoint { text: String },
    #[error("malformed catalog address `{address}`: expected monomial:a,b,c | hypersurface:n:F | vfamily:k")]
    BadAddress { address: String },
    #[error("variety file states ambient_dim = {stated} but lists {coords} coordinates")]
    AmbientMismatch { stated: usize, coords: usize },
    #[error("skew-form file states n = {n} but the matrix is {rows}x{cols}")]
    FormShape { n: usize, rows: usize, cols: usize },
    #[error("coordinate degree {got} exceeds OSCDUAL_MAX_DEGREE = {cap}")]
    DegreeCap { got: u32, cap: u32 },
    #[error("OSCDUAL_MAX_DEGREE must be a nonnegative integer, got `{value}`")]
    BadEnv { value: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Math(#[from] ExactMathError),
    #[error(transparent)]
    Projective(#[from] ProjectiveError),
    #[error(transparent)]
    Contact(#[from] ContactError),
    #[error(transparent)]
    Osculation(#[from] OsculationError),
    #[error(transparent)]
    Bryant(#[from] BryantError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })
}

fn rational(text: &str) -> Result<Rational, CliError> {
    parse_rational(text.trim()).map_err(|_| CliError::BadRational { text: text.trim().to_string() })
}

/// Parses a comma-separated list of rationals into a projective point.
pub fn parse_point(list: &str) -> Result<ProjPoint, CliError> {
    let coords: Vec<Rational> =
        list.split(',').map(rational).collect::<Result<_, _>>().map_err(|e| match e {
            CliError::BadRational { .. } => CliError::BadPoint { text: list.to_string() },
            other => other,
        })?;
    if coords.len() < 2 {
        return Err(CliError::BadPoint { text: list.to_string() });
    }
    Ok(ProjPoint::new(coords)?)
}

/// Variety file: `params` names the parameters, `coords` lists the coordinate
/// polynomials in the text grammar, and `ambient_dim` must equal the number
/// of coordinates minus one.
#[derive(Deserialize)]
struct VarietyFile {
    params: Vec<String>,
    coords: Vec<String>,
    ambient_dim: usize,
}

pub fn load_variety(path: &Path) -> Result<ParamVariety, CliError> {
    let text = read_text(path)?;
    let file: VarietyFile = serde_json::from_str(&text).map_err(|e| CliError::Json {
        path: path.display().to_string(),
        detail: e.to_string(),
    })?;
    if file.ambient_dim + 1 != file.coords.len() {
        return Err(CliError::AmbientMismatch {
            stated: file.ambient_dim,
            coords: file.coords.len(),
        });
    }
    let params: Vec<&str> = file.params.iter().map(String::as_str).collect();
    let coords: Vec<&str> = file.coords.iter().map(String::as_str).collect();
    Ok(ParamVariety::parse(&params, &coords)?)
}

/// Skew-form file: the half-dimension `n` and a `2n x 2n` matrix of rational
/// strings; antisymmetry is validated on load.
#[derive(Deserialize)]
struct SkewFormFile {
    n: usize,
    matrix: Vec<Vec<String>>,
}

pub fn load_skew_form(path: &Path) -> Result<SkewForm, CliError> {
    let text = read_text(path)?;
    let file: SkewFormFile = serde_json::from_str(&text).map_err(|e| CliError::Json {
        path: path.display().to_string(),
        detail: e.to_string(),
    })?;
    let size = 2 * file.n;
    if file.matrix.len() != size || file.matrix.iter().any(|row| row.len() != size) {
        return Err(CliError::FormShape {
            n: file.n,
            rows: file.matrix.len(),
            cols: file.matrix.iter().map(Vec::len).max().unwrap_or(0),
        });
    }
    let mut rows = Vec::with_capacity(size);
    for row in &file.matrix {
        rows.push(row.iter().map(|s| rational(s)).collect::<Result<Vec<_>, _>>()?);
    }
    Ok(SkewForm::new(rows)?)
}

/// A parsed catalog address. `hypersurface:n:F` reads `F` over the variables
/// `x2, ..., xn`, matching the coordinate layout of the constructed curve.
pub enum CatalogEntry {
    Monomial(MonomialSpec),
    Hypersurface { n: usize, f: MultiPoly },
    VFamily { k: usize },
}

pub fn parse_address(address: &str) -> Result<CatalogEntry, CliError> {
    let bad = || CliError::BadAddress { address: address.to_string() };
    let (kind, rest) = address.split_once(':').ok_or_else(bad)?;
    match kind {
        "monomial" => {
            let exps: Vec<u32> = rest
                .split(',')
                .map(|s| s.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| bad())?;
            let [a, b, c] = exps[..] else { return Err(bad()) };
            Ok(CatalogEntry::Monomial(MonomialSpec::new(a, b, c)?))
        }
        "hypersurface" => {
            let (n_text, f_text) = rest.split_once(':').ok_or_else(bad)?;
            let n: usize = n_text.trim().parse().map_err(|_| bad())?;
            if n < 2 {
                return Err(CatalogError::AmbientTooSmall { n }.into());
            }
            let names: Vec<String> = (2..=n).map(|i| format!("x{i}")).collect();
            let vars: Vec<&str> = names.iter().map(String::as_str).collect();
            let f = parse_poly(f_text, &vars)?;
            Ok(CatalogEntry::Hypersurface { n, f })
        }
        "vfamily" => {
            let k: usize = rest.trim().parse().map_err(|_| bad())?;
            Ok(CatalogEntry::VFamily { k })
        }
        _ => Err(bad()),
    }
}

impl CatalogEntry {
    pub fn variety(&self) -> Result<ParamVariety, CliError> {
        match self {
            CatalogEntry::Monomial(spec) => Ok(monomial_curve(spec)),
            CatalogEntry::Hypersurface { n, f } => Ok(hypersurface_family_curve(*n, f)?),
            CatalogEntry::VFamily { k } => Ok(v_family(*k)?),
        }
    }
}

pub fn catalog_variety(address: &str) -> Result<ParamVariety, CliError> {
    parse_address(address)?.variety()
}

fn degree_cap() -> Result<u32, CliError> {
    match env::var("OSCDUAL_MAX_DEGREE") {
        Ok(value) => value.trim().parse().map_err(|_| CliError::BadEnv { value }),
        Err(env::VarError::NotPresent) => Ok(DEFAULT_MAX_DEGREE),
        Err(env::VarError::NotUnicode(raw)) => {
            Err(CliError::BadEnv { value: raw.to_string_lossy().into_owned() })
        }
    }
}

/// Rejects inputs whose coordinates exceed the degree cap; every loaded
/// variety passes through here before any pipeline runs on it.
pub fn enforce_degree_cap(x: &ParamVariety) -> Result<(), CliError> {
    let cap = degree_cap()?;
    for coord in x.coords() {
        if let Some(d) = coord.total_degree() {
            if d > cap {
                return Err(CliError::DegreeCap { got: d, cap });
            }
        }
    }
    Ok(())
}
