//! From an extended-SMV file on disk to a game circuit.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::aig::{compile, AigerDoc, CompileError};
use crate::automata::{parse_gff, validate_for_role, AutomatonError, Monitor, Role};
use crate::smv::{flatten, parse_smv, resolve, AutomatonRef, Design, FlatModel, SmvError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Smv { path: PathBuf, source: SmvError },
    #[error("{path}: {source}")]
    Automaton {
        path: PathBuf,
        source: AutomatonError,
    },
    #[error("{path}: {source}")]
    Proposition { path: PathBuf, source: SmvError },
    #[error(transparent)]
    Compile(#[from] CompileError),
}

/// Everything derived from a specification before circuit compilation.
pub struct LoadedSpec {
    pub design: Design,
    pub model: FlatModel,
    pub sys: Vec<Monitor>,
    pub env: Vec<Monitor>,
}

fn read(path: &Path) -> Result<String, PipelineError> {
    fs::read_to_string(path).map_err(|source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_monitors(
    design: &Design,
    dir: &Path,
    refs: &[AutomatonRef],
    role: Role,
    names: &mut HashSet<String>,
) -> Result<Vec<Monitor>, PipelineError> {
    let mut out = Vec::new();
    for r in refs {
        let path = dir.join(&r.path);
        let wrap = |source| PipelineError::Automaton {
            path: path.clone(),
            source,
        };
        let text = read(&path)?;
        let mut a = parse_gff(&text).map_err(wrap)?;
        a = validate_for_role(&a, role, r.negated).map_err(wrap)?;
        design
            .check_propositions(a.props.iter().map(String::as_str))
            .map_err(|source| PipelineError::Proposition {
                path: path.clone(),
                source,
            })?;
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "automaton".into());
        let mut name = stem.clone();
        let mut k = 1;
        while !names.insert(name.clone()) {
            name = format!("{stem}_{k}");
            k += 1;
        }
        a.name = name;
        out.push(Monitor::from_automaton(&a));
    }
    Ok(out)
}

/// Parses, resolves and flattens the specification and loads its automata
/// (paths relative to the specification's directory).
pub fn load_spec(path: &Path) -> Result<LoadedSpec, PipelineError> {
    let smv_err = |source| PipelineError::Smv {
        path: path.to_path_buf(),
        source,
    };
    let text = read(path)?;
    let spec = parse_smv(&text).map_err(smv_err)?;
    let design = resolve(&spec).map_err(smv_err)?;
    let model = flatten(&design).map_err(smv_err)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut names = HashSet::new();
    let sys = load_monitors(&design, dir, &design.sys_automata, Role::Guarantee, &mut names)?;
    let env = load_monitors(&design, dir, &design.env_automata, Role::Assumption, &mut names)?;
    Ok(LoadedSpec {
        design,
        model,
        sys,
        env,
    })
}

/// The game circuit of the specification at `path`.
pub fn spec_to_game(path: &Path) -> Result<AigerDoc, PipelineError> {
    let s = load_spec(path)?;
    Ok(compile(&s.model, &s.sys, &s.env)?)
}
