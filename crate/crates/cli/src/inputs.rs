use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use reflex_core::algebra::DEFAULT_DEGREE_BOUND;
use reflex_core::free::parse_matrix;
use reflex_core::{AlgebraSpec, FreeModule, GradedAlgebra, ModuleMap, Presentation, Scalar};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub field: String,
    #[serde(default = "default_alpha")]
    pub alpha: String,
    pub variables: Vec<String>,
    pub relations: Vec<String>,
    #[serde(default)]
    pub degree_bound: Option<usize>,
}

fn default_alpha() -> String {
    "2".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    #[serde(default)]
    pub target_twists: Option<Vec<i64>>,
    pub matrix: Vec<Vec<String>>,
    #[serde(default)]
    pub source_twists: Option<Vec<i64>>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn load_ring(path: &Path, alpha_override: Option<&str>) -> Result<GradedAlgebra> {
    let file: RingFile = read_json(path)?;
    if file.field != "Q" {
        bail!("unsupported field `{}`; only Q is available", file.field);
    }
    let alpha: Scalar = alpha_override
        .unwrap_or(&file.alpha)
        .parse()
        .map_err(|e| anyhow::anyhow!("alpha: {e}"))?;
    let spec = AlgebraSpec::parse(
        &file.variables,
        &file.relations,
        alpha,
        file.degree_bound.unwrap_or(DEFAULT_DEGREE_BOUND),
    )?;
    Ok(GradedAlgebra::build(&spec)?)
}

pub fn load_ring_spec(path: &Path) -> Result<AlgebraSpec> {
    let file: RingFile = read_json(path)?;
    let alpha: Scalar = file.alpha.parse().map_err(|e| anyhow::anyhow!("alpha: {e}"))?;
    Ok(AlgebraSpec::parse(
        &file.variables,
        &file.relations,
        alpha,
        file.degree_bound.unwrap_or(DEFAULT_DEGREE_BOUND),
    )?)
}

pub fn load_module(alg: &GradedAlgebra, path: &Path) -> Result<Presentation> {
    let file: ModuleFile = read_json(path)?;
    let rows = file.matrix.len();
    if rows == 0 {
        bail!("the matrix has no rows");
    }
    let cols = file.matrix[0].len();
    if file.matrix.iter().any(|r| r.len() != cols) {
        bail!("the matrix is not rectangular");
    }
    let target = FreeModule::new(file.target_twists.unwrap_or_else(|| vec![0; rows]));
    if target.rank() != rows {
        bail!("{} target twists for {rows} rows", target.rank());
    }
    let entries = parse_matrix(alg, &file.matrix)?;
    let map = match file.source_twists {
        Some(t) => {
            if t.len() != cols {
                bail!("{} source twists for {cols} columns", t.len());
            }
            ModuleMap::new(FreeModule::new(t), target, entries)?
        }
        None => ModuleMap::with_inferred_source(target, entries)?,
    };
    Ok(Presentation::new(alg, map))
}
