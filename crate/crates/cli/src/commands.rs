use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value};
use symmono::linalg::NULL_SPACE_TOL;
use symmono::models::{contour_cell, grid_coordinate, state_to_bloch, ContourCell};
use symmono::monotone::{generator_spec_family, monotone_value_extended, WitnessKind};
use symmono::symmetry::{
    fixed_point_set, noether_basis, operator_commutant_basis_dim, superop_commutant_basis, symmetry_residual,
    SYMMETRY_TOL,
};
use symmono::{
    exclusion_certificate, CMatrix, DensityMatrix, Error, ExclusionSlack, Lindbladian, MonotoneSpec, Normalizer,
    Superoperator, Verdict,
};

use crate::error::CliError;
use crate::input::{load_superoperator, matrix_to_rows};
use crate::output::{fmt_cell, fmt_f64, json_f64, sink, write_json, Csv};

/// Which superoperator plays the role of `M`.
#[derive(Debug, Clone, PartialEq)]
pub enum SymChoice {
    /// `M = L`.
    Lindbladian,
    /// `M = −i[H, ·]`.
    Hamiltonian,
    /// A `d² x d²` matrix read from a JSON file.
    File(PathBuf),
}

impl FromStr for SymChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "lindbladian" => SymChoice::Lindbladian,
            "hamiltonian" => SymChoice::Hamiltonian,
            _ => SymChoice::File(PathBuf::from(s.strip_prefix("file:").unwrap_or(s))),
        })
    }
}

fn resolve_symmetry(l: &Lindbladian, choice: &SymChoice, tol: f64) -> Result<Superoperator, CliError> {
    let (name, m) = match choice {
        SymChoice::Lindbladian => ("the Lindbladian", l.superop().clone()),
        SymChoice::Hamiltonian => ("−i[H, ·]", l.hamiltonian_part().clone()),
        SymChoice::File(path) => ("the supplied superoperator", load_superoperator(path, l.dim())?),
    };
    let residual = symmetry_residual(l.superop(), &m);
    if residual > tol {
        return Err(CliError::input(format!(
            "{name} does not commute with the generator (residual {residual:.3e} > {tol:e})"
        )));
    }
    Ok(m)
}

fn element_header(d: usize) -> Vec<String> {
    let idx = |i: usize, j: usize| if d <= 10 { format!("{i}{j}") } else { format!("{i}_{j}") };
    let mut header = vec!["t".to_string()];
    for i in 0..d {
        for j in 0..d {
            header.push(format!("re_{}", idx(i, j)));
            header.push(format!("im_{}", idx(i, j)));
        }
    }
    if d == 2 {
        header.extend(["x", "y", "z"].map(String::from));
    }
    header
}

pub fn evolve(l: &Lindbladian, rho: &DensityMatrix, times: &[f64], out: Option<&Path>) -> Result<(), CliError> {
    let d = check_dims(l, rho)?;
    let mut rows = Vec::with_capacity(times.len());
    for &t in times {
        let state = l.evolve(rho, t)?;
        let m = state.matrix();
        let mut row = vec![fmt_f64(t)];
        for i in 0..d {
            for j in 0..d {
                row.push(fmt_f64(m[(i, j)].re));
                row.push(fmt_f64(m[(i, j)].im));
            }
        }
        if d == 2 {
            let v = state_to_bloch(&state)?;
            row.extend([v.x, v.y, v.z].map(fmt_f64));
        }
        rows.push(row);
    }
    write_csv(out, &element_header(d), &rows)
}

/// Output is only opened once every row has been computed, so failures never
/// leave a truncated file behind.
fn write_csv(out: Option<&Path>, header: &[String], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut csv = Csv::new(sink(out)?, header)?;
    for row in rows {
        csv.row(row)?;
    }
    Ok(csv.finish()?)
}

fn check_dims(l: &Lindbladian, rho: &DensityMatrix) -> Result<usize, CliError> {
    if rho.dim() != l.dim() {
        return Err(CliError::input(format!(
            "state has dimension {}, model has {}",
            rho.dim(),
            l.dim()
        )));
    }
    Ok(l.dim())
}

fn matrices(ms: &[CMatrix]) -> Value {
    Value::Array(ms.iter().map(|m| json!(matrix_to_rows(m))).collect())
}

pub fn symmetries(l: &Lindbladian, tol: Option<f64>, out: Option<&Path>) -> Result<(), CliError> {
    let tol = tol.unwrap_or(NULL_SPACE_TOL);
    let d = l.dim();
    let commutant = superop_commutant_basis(l, tol)?;
    let operator_commutant = operator_commutant_basis_dim(d, &l.generating_operators(), tol);
    let noether = noether_basis(l, tol);
    let fixed = fixed_point_set(l, tol)?;
    let superops: Vec<CMatrix> = commutant.elements.iter().map(|s| s.matrix().clone()).collect();
    let report = json!({
        "dim": d,
        "superoperator_commutant": { "dim": commutant.len(), "basis": matrices(&superops) },
        "operator_commutant": { "dim": operator_commutant.len(), "basis": matrices(&operator_commutant) },
        "noether": { "dim": noether.len(), "basis": matrices(&noether.operators) },
        "fixed_points": {
            "dim": fixed.len(),
            "basis": matrices(&fixed.operators),
            "f": matrix_to_rows(fixed.f.as_matrix()),
            "peripheral_eigenvalues": fixed.peripheral_eigenvalues.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        },
    });
    write_json(&mut *sink(out)?, &report)
}

/// Value at a possibly rank-deficient state; `None` where the monotone is
/// undefined (a `0/0` on the boundary of the state space).
fn value_at(rho: &DensityMatrix, spec: &MonotoneSpec) -> Result<Option<f64>, CliError> {
    match monotone_value_extended(rho, spec) {
        Ok(v) => Ok(Some(v)),
        Err(Error::Domain(_)) if !rho.is_full_rank() => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub struct MonotoneArgs<'a> {
    pub sym: &'a SymChoice,
    pub lambda: f64,
    pub tol: Option<f64>,
}

fn build_spec(l: &Lindbladian, args: &MonotoneArgs) -> Result<MonotoneSpec, CliError> {
    let m = resolve_symmetry(l, args.sym, args.tol.unwrap_or(SYMMETRY_TOL))?;
    Ok(MonotoneSpec::new(m, Normalizer::Identity, args.lambda)?)
}

pub fn monotone(
    l: &Lindbladian,
    rho: &DensityMatrix,
    times: &[f64],
    args: &MonotoneArgs,
    out: Option<&Path>,
) -> Result<(), CliError> {
    check_dims(l, rho)?;
    let spec = build_spec(l, args)?;
    let rows = times
        .iter()
        .map(|&t| Ok(vec![fmt_f64(t), fmt_cell(value_at(&l.evolve(rho, t)?, &spec)?)]))
        .collect::<Result<Vec<_>, CliError>>()?;
    write_csv(out, &["t".to_string(), "value".to_string()], &rows)
}

pub fn contour(
    l: &Lindbladian,
    rho: &DensityMatrix,
    args: &MonotoneArgs,
    plane: &str,
    n: usize,
    out: Option<&Path>,
) -> Result<(), CliError> {
    if plane != "xz" {
        return Err(CliError::input(format!(
            "unsupported plane `{plane}`; only xz is available"
        )));
    }
    if l.dim() != 2 {
        return Err(CliError::input("contour grids are defined for qubit models only"));
    }
    if n < 3 {
        return Err(CliError::input(format!("grid needs n ≥ 3, got {n}")));
    }
    check_dims(l, rho)?;
    let spec = build_spec(l, args)?;
    let threshold = value_at(rho, &spec)?;
    // Rows are computed in parallel; collecting an indexed iterator keeps
    // them in grid order.
    let rows: Vec<Vec<ContourCell>> = (0..n)
        .into_par_iter()
        .map(|iz| {
            (0..n)
                .map(|ix| contour_cell(&spec, grid_coordinate(ix, n), grid_coordinate(iz, n)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let threshold = fmt_cell(threshold);
    let rows: Vec<Vec<String>> = rows
        .iter()
        .flatten()
        .map(|cell| {
            vec![
                fmt_f64(cell.x),
                fmt_f64(cell.z),
                fmt_cell(cell.value),
                threshold.clone(),
            ]
        })
        .collect();
    write_csv(out, &["x", "z", "value", "threshold"].map(String::from), &rows)
}

pub fn exclude(
    l: &Lindbladian,
    from: &DensityMatrix,
    to: &DensityMatrix,
    lambdas: &[f64],
    tol: Option<f64>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    check_dims(l, from)?;
    check_dims(l, to)?;
    let full_rank = |rho: &DensityMatrix, which: &str| {
        rho.to_full_rank()
            .map_err(|_| CliError::input(format!("--{which} state must be full rank")))
    };
    let (source, target) = (full_rank(from, "from")?, full_rank(to, "to")?);
    if lambdas.is_empty() {
        return Err(CliError::input("--lambdas must list at least one value"));
    }
    let mut slack = ExclusionSlack::default();
    if let Some(rel) = tol {
        slack.relative = rel;
    }
    let specs = generator_spec_family(l, lambdas)?;
    let result = exclusion_certificate(l, &source, &target, &specs, slack)?;

    let witnesses: Vec<Value> = result
        .witnesses
        .iter()
        .map(|w| {
            let mut entry = match &w.kind {
                WitnessKind::Monotone {
                    spec_index,
                    description,
                } => json!({
                    "kind": "monotone",
                    "spec_index": spec_index,
                    "description": description,
                    "lambda": specs[*spec_index].lambda(),
                }),
                WitnessKind::Conserved {
                    operator_index,
                    operator,
                } => json!({
                    "kind": "conserved",
                    "operator_index": operator_index,
                    "operator": matrix_to_rows(operator),
                }),
            };
            entry["source_value"] = json_f64(w.source_value);
            entry["target_value"] = json_f64(w.target_value);
            entry["margin"] = json_f64(w.margin);
            entry
        })
        .collect();
    let verdict = match result.verdict {
        Verdict::Excluded => "EXCLUDED",
        Verdict::Inconclusive => "INCONCLUSIVE",
    };
    let report = json!({
        "verdict": verdict,
        "monotones_checked": specs.len(),
        "slack": { "relative": slack.relative, "absolute": slack.absolute },
        "witnesses": witnesses,
    });
    println!("{verdict}");
    write_json(&mut *sink(out)?, &report)
}
