//! Model, state and superoperator inputs.
//!
//! Files are UTF-8 JSON with complex entries written as `[re, im]`. Models and
//! states may also be given inline, e.g. `--model davies_qubit:a=1.5,b=1` or
//! `--state bloch:0.5,0,-0.8`, which is convenient for scripting.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use symmono::linalg::c;
use symmono::models::{bloch_to_state, davies_qubit, qubit_dephasing, BlochVector};
use symmono::superop::random_lindbladian;
use symmono::{CMatrix, DensityMatrix, HermitianMatrix, Lindbladian, Superoperator, C64};

use crate::error::CliError;

/// Relative Hermiticity tolerance for parsed Hamiltonians and states.
pub const INPUT_HERMITIAN_TOL: f64 = 1e-10;

/// Largest dimension accepted by the `random` preset.
const MAX_RANDOM_DIM: usize = 8;

pub type ComplexEntry = [f64; 2];
pub type MatrixRows = Vec<Vec<ComplexEntry>>;

/// Either a real number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum Amplitude {
    Real(f64),
    Complex(ComplexEntry),
}

impl Amplitude {
    fn value(self) -> C64 {
        match self {
            Amplitude::Real(x) => c(x, 0.0),
            Amplitude::Complex([re, im]) => c(re, im),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum Preset {
    QubitDephasing { g: f64 },
    DaviesQubit { a: Amplitude, b: Amplitude },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub dim: Option<usize>,
    pub hamiltonian: Option<MatrixRows>,
    #[serde(default)]
    pub jumps: Vec<MatrixRows>,
    pub preset: Option<Preset>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub bloch: Option<[f64; 3]>,
    pub matrix: Option<MatrixRows>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuperoperatorFile {
    pub dim: usize,
    /// `d² x d²` matrix acting on column-stacked operators.
    pub matrix: MatrixRows,
}

pub fn matrix_from_rows(rows: &MatrixRows, what: &str) -> Result<CMatrix, CliError> {
    let n = rows.len();
    if n == 0 {
        return Err(CliError::input(format!("{what}: empty matrix")));
    }
    if let Some(bad) = rows.iter().position(|r| r.len() != n) {
        return Err(CliError::input(format!(
            "{what}: row {bad} has {} entries, expected {n} (matrices must be square)",
            rows[bad].len()
        )));
    }
    let m = CMatrix::from_fn(n, n, |i, j| c(rows[i][j][0], rows[i][j][1]));
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(CliError::input(format!("{what}: non-finite entry")));
    }
    Ok(m)
}

pub fn matrix_to_rows(m: &CMatrix) -> MatrixRows {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path, what: &str) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("{what} {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{what} {}: {e}", path.display())))
}

/// Splits `key=value,key=value` into a map of numbers.
fn inline_params(spec: &str) -> Result<BTreeMap<String, f64>, CliError> {
    let mut params = BTreeMap::new();
    for part in spec.split(',').filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| CliError::input(format!("expected key=value, got `{part}`")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| CliError::input(format!("`{key}`: `{value}` is not a number")))?;
        params.insert(key.trim().to_string(), value);
    }
    Ok(params)
}

fn take_param(params: &mut BTreeMap<String, f64>, key: &str, preset: &str) -> Result<f64, CliError> {
    params
        .remove(key)
        .ok_or_else(|| CliError::input(format!("preset {preset} needs `{key}=`")))
}

fn no_leftovers(params: &BTreeMap<String, f64>, preset: &str) -> Result<(), CliError> {
    match params.keys().next() {
        Some(k) => Err(CliError::input(format!("preset {preset}: unknown parameter `{k}`"))),
        None => Ok(()),
    }
}

fn preset_model(preset: &Preset) -> Result<Lindbladian, CliError> {
    match *preset {
        Preset::QubitDephasing { g } => {
            if !g.is_finite() {
                return Err(CliError::input("qubit_dephasing: g must be finite"));
            }
            Ok(qubit_dephasing(g))
        }
        Preset::DaviesQubit { a, b } => Ok(davies_qubit(a.value(), b.value())?.lindbladian),
    }
}

/// Parses `name:params` presets; `None` if `arg` is not of that form.
fn inline_model(arg: &str, seed: u64) -> Option<Result<Lindbladian, CliError>> {
    let (name, rest) = arg.split_once(':').unwrap_or((arg, ""));
    let build = |name: &str| -> Result<Lindbladian, CliError> {
        let mut p = inline_params(rest)?;
        let model = match name {
            "qubit_dephasing" => {
                let g = take_param(&mut p, "g", name)?;
                preset_model(&Preset::QubitDephasing { g })?
            }
            "davies_qubit" => {
                let a = take_param(&mut p, "a", name)?;
                let b = take_param(&mut p, "b", name)?;
                preset_model(&Preset::DaviesQubit {
                    a: Amplitude::Real(a),
                    b: Amplitude::Real(b),
                })?
            }
            "random" => {
                let d = take_param(&mut p, "d", name)?;
                let jumps = p.remove("jumps").unwrap_or(1.0);
                if d.fract() != 0.0 || !(1.0..=MAX_RANDOM_DIM as f64).contains(&d) {
                    return Err(CliError::input(format!(
                        "random: d must be an integer in 1..={MAX_RANDOM_DIM}"
                    )));
                }
                if jumps.fract() != 0.0 || !(0.0..=16.0).contains(&jumps) {
                    return Err(CliError::input("random: jumps must be an integer in 0..=16"));
                }
                random_lindbladian(d as usize, jumps as usize, seed)
            }
            _ => unreachable!(),
        };
        no_leftovers(&p, name)?;
        Ok(model)
    };
    matches!(name, "qubit_dephasing" | "davies_qubit" | "random").then(|| build(name))
}

/// Loads a generator from a JSON file or an inline preset.
///
/// Inline presets: `qubit_dephasing:g=G`, `davies_qubit:a=A,b=B` (real
/// amplitudes), `random:d=D,jumps=K` (seeded by `--seed`).
pub fn load_model(arg: &str, seed: u64) -> Result<Lindbladian, CliError> {
    if let Some(model) = inline_model(arg, seed) {
        return model;
    }
    let file: ModelFile = read_json(Path::new(arg), "model")?;
    model_from_file(&file)
}

pub fn model_from_file(file: &ModelFile) -> Result<Lindbladian, CliError> {
    if let Some(preset) = &file.preset {
        if file.hamiltonian.is_some() || !file.jumps.is_empty() {
            return Err(CliError::input("model: give either a preset or matrices, not both"));
        }
        let l = preset_model(preset)?;
        if let Some(d) = file.dim {
            if d != l.dim() {
                return Err(CliError::input(format!(
                    "model: preset has dimension {}, file says {d}",
                    l.dim()
                )));
            }
        }
        return Ok(l);
    }
    let rows = file
        .hamiltonian
        .as_ref()
        .ok_or_else(|| CliError::input("model: missing `hamiltonian` (or `preset`)"))?;
    let h = matrix_from_rows(rows, "hamiltonian")?;
    let d = h.nrows();
    if let Some(declared) = file.dim {
        if declared != d {
            return Err(CliError::input(format!(
                "model: dim is {declared} but hamiltonian is {d}x{d}"
            )));
        }
    }
    let h = HermitianMatrix::with_tolerance(h, INPUT_HERMITIAN_TOL)
        .map_err(|e| CliError::input(format!("hamiltonian: {e}")))?;
    let mut jumps = Vec::with_capacity(file.jumps.len());
    for (k, rows) in file.jumps.iter().enumerate() {
        let j = matrix_from_rows(rows, &format!("jump {k}"))?;
        if j.nrows() != d {
            return Err(CliError::input(format!(
                "jump {k} is {0}x{0}, expected {d}x{d}",
                j.nrows()
            )));
        }
        jumps.push(j);
    }
    Ok(Lindbladian::new(h, jumps)?)
}

/// Loads a state from a JSON file or inline `bloch:x,y,z`.
pub fn load_state(arg: &str) -> Result<DensityMatrix, CliError> {
    if let Some(rest) = arg.strip_prefix("bloch:") {
        let parts: Vec<f64> = rest
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| CliError::input(format!("state `{arg}`: expected bloch:x,y,z")))?;
        let [x, y, z] = parts[..] else {
            return Err(CliError::input(format!("state `{arg}`: expected three coordinates")));
        };
        return bloch_state([x, y, z]);
    }
    let file: StateFile = read_json(Path::new(arg), "state")?;
    state_from_file(&file)
}

fn bloch_state([x, y, z]: [f64; 3]) -> Result<DensityMatrix, CliError> {
    if ![x, y, z].iter().all(|v| v.is_finite()) {
        return Err(CliError::input("bloch vector must be finite"));
    }
    Ok(bloch_to_state(&BlochVector::new(x, y, z))?)
}

pub fn state_from_file(file: &StateFile) -> Result<DensityMatrix, CliError> {
    match (&file.bloch, &file.matrix) {
        (Some(v), None) => bloch_state(*v),
        (None, Some(rows)) => {
            let m = matrix_from_rows(rows, "state")?;
            Ok(DensityMatrix::with_hermitian_tolerance(m, INPUT_HERMITIAN_TOL)?)
        }
        _ => Err(CliError::input("state: give exactly one of `bloch` or `matrix`")),
    }
}

pub fn load_superoperator(path: &Path, d: usize) -> Result<Superoperator, CliError> {
    let file: SuperoperatorFile = read_json(path, "symmetry")?;
    if file.dim != d {
        return Err(CliError::input(format!(
            "symmetry acts on dimension {}, model has {d}",
            file.dim
        )));
    }
    let m = matrix_from_rows(&file.matrix, "symmetry")?;
    Ok(Superoperator::from_matrix(d, m)?)
}

/// Parses `t0:t1:dt` into `t0, t0 + dt, …`, ending at the last grid point
/// within `dt/2` of `t1`.
pub fn parse_times(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [t0, t1, dt] = parts[..] else {
        return Err(CliError::input(format!("times `{spec}`: expected t0:t1:dt")));
    };
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| CliError::input(format!("times `{spec}`: `{s}` is not a finite number")))
    };
    let (t0, t1, dt) = (num(t0)?, num(t1)?, num(dt)?);
    if dt <= 0.0 {
        return Err(CliError::input("times: dt must be positive"));
    }
    if t0 < 0.0 || t1 < t0 {
        return Err(CliError::input("times: need 0 ≤ t0 ≤ t1"));
    }
    let steps = ((t1 - t0) / dt + 0.5).floor();
    if steps > 1e7 {
        return Err(CliError::input("times: more than 10^7 time points"));
    }
    Ok((0..=steps as usize).map(|k| t0 + k as f64 * dt).collect())
}
