use std::sync::Arc;

use monoalg::{AffineSemigroup, LatticeVector, MonomialIdeal};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub rank: usize,
    pub semigroup_generators: Vec<Vec<i64>>,
    pub ideal_generators: Vec<Vec<i64>>,
    #[serde(default)]
    pub bound: Option<i64>,
    /// Complement elements in the order matrices should be printed.
    #[serde(default)]
    pub basis_order_override: Option<Vec<Vec<i64>>>,
}

pub struct Problem {
    pub file: ProblemFile,
    pub semigroup: Arc<AffineSemigroup>,
    pub ideal: MonomialIdeal,
}

pub fn parse(text: &str) -> Result<ProblemFile, CliError> {
    let file: ProblemFile = serde_json::from_str(text).map_err(|e| {
        CliError::Input(format!("malformed problem file at line {}, column {}: {e}", e.line(), e.column()))
    })?;
    if file.semigroup_generators.is_empty() {
        return Err(CliError::Input("semigroup_generators must be nonempty".into()));
    }
    let lists = file
        .semigroup_generators
        .iter()
        .chain(&file.ideal_generators)
        .chain(file.basis_order_override.iter().flatten());
    for v in lists {
        if v.len() != file.rank {
            return Err(CliError::Input(format!("vector {v:?} does not have length {}", file.rank)));
        }
    }
    Ok(file)
}

pub fn load(text: &str) -> Result<Problem, CliError> {
    let file = parse(text)?;
    let gens = file.semigroup_generators.iter().map(|g| LatticeVector::from_i64s(g)).collect();
    let semigroup = Arc::new(AffineSemigroup::build(file.rank, gens)?);
    let ideal_gens = file.ideal_generators.iter().map(|g| LatticeVector::from_i64s(g)).collect();
    let ideal = MonomialIdeal::new(semigroup.clone(), ideal_gens)?;
    Ok(Problem { file, semigroup, ideal })
}
