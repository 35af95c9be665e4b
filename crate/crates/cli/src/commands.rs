use std::collections::BTreeMap;
use std::time::Instant;

use levi_schur_core::combinatorics::{orbit_reps, Parity, Shape};
use levi_schur_core::duality::{expected_levi_dim, verify_all, DualityReport, Workspace};
use levi_schur_core::enhanced::cross_parity;
use levi_schur_core::field::{Field, PrimeField, Rationals};
use levi_schur_core::hecke::{commutation_suite, d_algebra, relation_suite, RelationReport};
use levi_schur_core::linalg::Engine;
use levi_schur_core::schur::classical_duality;
use serde_json::{json, Map, Value};

use crate::config::{CliError, Command, FieldSpec, RunConfig};
use crate::report::{Check, Report, Role};

/// Validates `cfg` and runs its command.
pub fn execute(cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let start = Instant::now();
    let (dims, checks) = match cfg.field {
        FieldSpec::Rationals => run_field(cfg, Rationals, Role::Gated)?,
        FieldSpec::Prime(p) => {
            let (dims, mut checks) = run_field(cfg, PrimeField::new(p)?, Role::Informative)?;
            if matches!(cfg.command, Command::Verify | Command::Report) {
                checks.extend(compare_with_rationals(cfg, &dims)?);
            }
            (dims, checks)
        }
    };
    Ok(Report { config: *cfg, dims, checks, elapsed_ms: start.elapsed().as_millis() })
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Report, CliError> {
    execute(&RunConfig { command: Command::Verify, ..*cfg })
}

pub fn cmd_dims(cfg: &RunConfig) -> Result<Report, CliError> {
    execute(&RunConfig { command: Command::Dims, ..*cfg })
}

fn run_field<F: Field>(cfg: &RunConfig, field: F, role: Role) -> Result<(Value, Vec<Check>), CliError> {
    let mut dims = Map::new();
    let mut checks = Vec::new();
    let parities = cfg.vparity.parities();
    let demote = |r: Role| if r == Role::Gated { role } else { r };
    match cfg.command {
        Command::Orbits => {
            dims.insert("layers".into(), orbit_table(&cfg.shape(Parity::Even)?, true));
        }
        Command::Dims => {
            let s = cfg.shape(Parity::Even)?;
            dims.insert("layers".into(), orbit_table(&s, false));
            dims.insert("dim_levi".into(), json!(expected_levi_dim(&s)));
            dims.insert("ambient".into(), json!(cfg.ambient_dim()));
            let engine = Engine::new(field.clone()).with_size_cap(cfg.size_cap);
            let mut by_parity = Map::new();
            for &v in &parities {
                by_parity.insert(v.to_string(), json!(d_algebra(&engine, &cfg.shape(v)?)?.dimension()));
            }
            dims.insert("dim_d".into(), Value::Object(by_parity));
        }
        Command::Relations => {
            for &v in &parities {
                let s = cfg.shape(v)?;
                let rel = relation_suite(&field, &s)?;
                checks.extend(relation_checks(&rel, &field, &s, demote)?);
                dims.insert(v.to_string(), relation_json(&rel));
            }
        }
        Command::Verify | Command::Report => {
            for &v in &parities {
                let s = cfg.shape(v)?;
                let rel = relation_suite(&field, &s)?;
                checks.extend(relation_checks(&rel, &field, &s, demote)?);
                let mut ws = Workspace::new(Engine::new(field.clone()).with_size_cap(cfg.size_cap), s)?;
                let rep = verify_all(&mut ws)?;
                checks.extend(duality_checks(&rep, v, demote));
                let mut entry = duality_json(&rep);
                if cfg.command == Command::Report {
                    let obj = entry.as_object_mut().expect("duality report is an object");
                    obj.insert("relations".into(), relation_json(&rel));
                    obj.insert("orbits".into(), orbit_table(&s, false));
                }
                dims.insert(v.to_string(), entry);
            }
            if parities.len() == 2 {
                let cross = cross_parity(&field, &cfg.shape(Parity::Even)?)?;
                checks.push(Check::new(
                    "cross_parity_gauge",
                    "both",
                    demote(Role::Gated),
                    cross.gauge_equal,
                    "levi images agree after the sign gauge".into(),
                ));
                checks.push(Check::new(
                    "cross_parity_literal",
                    "both",
                    demote(Role::Observed),
                    cross.literal_equal,
                    "levi images agree entry by entry".into(),
                ));
            }
            if cfg.command == Command::Report {
                let s = cfg.shape(Parity::Even)?;
                let classical = classical_duality(&Engine::new(field.clone()).with_size_cap(cfg.size_cap), &s)?;
                checks.push(Check::new(
                    "classical_duality",
                    "none",
                    demote(Role::Gated),
                    classical.spans_equal,
                    format!(
                        "commutant of S_r has dim {}, schur algebra dim {}",
                        classical.dim_commutant_of_symmetric_group, classical.dim_schur
                    ),
                ));
                if let Some(equal) = classical.converse_equal {
                    checks.push(Check::new(
                        "classical_converse",
                        "none",
                        demote(Role::Gated),
                        equal,
                        format!(
                            "commutant of the schur algebra has dim {}, group algebra image dim {}",
                            classical.dim_commutant_of_schur.unwrap_or(0),
                            classical.dim_group_algebra_image.unwrap_or(0)
                        ),
                    ));
                }
                dims.insert(
                    "classical".into(),
                    json!({
                        "dim_commutant_of_symmetric_group": classical.dim_commutant_of_symmetric_group,
                        "dim_schur": classical.dim_schur,
                        "spans_equal": classical.spans_equal,
                        "converse_checked": classical.converse_checked,
                        "dim_commutant_of_schur": classical.dim_commutant_of_schur,
                        "dim_group_algebra_image": classical.dim_group_algebra_image,
                        "converse_equal": classical.converse_equal,
                    }),
                );
            }
        }
    }
    Ok((Value::Object(dims), checks))
}

fn orbit_table(s: &Shape, with_reps: bool) -> Value {
    let rows: Vec<Value> = (1..=s.r())
        .map(|l| {
            let reps = orbit_reps(s, l);
            let mut row = json!({ "layer": l, "orbits": reps.len() });
            if with_reps {
                row["representatives"] = reps.iter().map(|d| Value::String(d.to_string())).collect();
            }
            row
        })
        .collect();
    Value::Array(rows)
}

fn relation_checks<F: Field>(
    rel: &RelationReport,
    field: &F,
    s: &Shape,
    demote: impl Fn(Role) -> Role,
) -> Result<Vec<Check>, CliError> {
    let v = s.vparity();
    let comm = commutation_suite(field, s)?;
    let mut out = vec![
        Check::new(
            "relations",
            v,
            demote(Role::Gated),
            rel.all_pass(),
            format!("{}/{} instances", rel.passed(), rel.total()),
        ),
        Check::new(
            "commutation",
            v,
            demote(Role::Gated),
            comm.failures.is_empty(),
            format!("{}/{} pairs", comm.checked - comm.failures.len(), comm.checked),
        ),
    ];
    if !rel.boundary.is_empty() {
        let commuting = rel.boundary.iter().filter(|b| b.commutes).count();
        out.push(Check::new(
            "relations_boundary",
            v,
            demote(Role::Observed),
            commuting == rel.boundary.len(),
            format!("s_l commutes with x(sigma) at layer l in {commuting}/{} cases", rel.boundary.len()),
        ));
    }
    Ok(out)
}

fn relation_json(rel: &RelationReport) -> Value {
    let by_id: BTreeMap<_, _> = rel
        .by_id
        .iter()
        .map(|(id, (checked, passed))| (*id, json!({ "checked": checked, "passed": passed })))
        .collect();
    json!({
        "by_id": by_id,
        "failures": rel.failures,
        "boundary": rel.boundary.iter().map(|b| json!({
            "layer": b.layer,
            "sigma": b.sigma.to_string(),
            "commutes": b.commutes,
        })).collect::<Vec<_>>(),
    })
}

fn duality_checks(rep: &DualityReport, v: Parity, demote: impl Fn(Role) -> Role) -> Vec<Check> {
    let (first, second, layers) = (&rep.first, &rep.second, &rep.layers);
    let second_role = if second.gated { Role::Gated } else { Role::Observed };
    vec![
        Check::new(
            "levi_faithful",
            v,
            demote(Role::Gated),
            first.dim_levi == first.expected_dim_levi,
            format!("rank {} of expected {}", first.dim_levi, first.expected_dim_levi),
        ),
        Check::new(
            "first_isomorphism",
            v,
            demote(Role::Gated),
            first.holds && first.levi_in_commutant,
            format!("dim levi {} = dim End_D {}", first.dim_levi, first.dim_commutant_d),
        ),
        Check::new(
            "second_isomorphism",
            v,
            demote(second_role),
            second.holds && second.d_in_commutant,
            format!("dim D {} = dim End_levi {}", second.dim_d, second.dim_commutant_levi),
        ),
        Check::new(
            "layer_action_faithful",
            v,
            demote(Role::Gated),
            layers.layers.iter().all(|l| l.faithful),
            format!("{} layers", layers.layers.len()),
        ),
        Check::new(
            "layer_endomorphisms",
            v,
            demote(Role::Gated),
            layers.layers.iter().all(|l| l.equal) && layers.sum_equals_commutant,
            format!("sum of layer dims {}", layers.sum_of_dims),
        ),
        Check::new(
            "layer_decomposition",
            v,
            demote(Role::Gated),
            layers.decomposition_holds && layers.layers_orthogonal,
            "D is the orthogonal sum of its layers".into(),
        ),
    ]
}

/// Every field of a [`DualityReport`].
pub fn duality_json(rep: &DualityReport) -> Value {
    let (first, second, layers) = (&rep.first, &rep.second, &rep.layers);
    json!({
        "dim_ambient": rep.dim_ambient,
        "r_le_mplusn": rep.r_le_mplusn,
        "first": {
            "dim_levi": first.dim_levi,
            "expected_dim_levi": first.expected_dim_levi,
            "dim_commutant_d": first.dim_commutant_d,
            "holds": first.holds,
            "levi_in_commutant": first.levi_in_commutant,
        },
        "second": {
            "dim_d": second.dim_d,
            "dim_commutant_levi": second.dim_commutant_levi,
            "holds": second.holds,
            "gated": second.gated,
            "d_in_commutant": second.d_in_commutant,
        },
        "layers": {
            "layers": layers.layers.iter().map(|l| json!({
                "layer": l.layer,
                "space_dim": l.space_dim,
                "dim_d_layer": l.dim_d_layer,
                "dim_layer_endos": l.dim_layer_endos,
                "equal": l.equal,
                "faithful": l.faithful,
            })).collect::<Vec<_>>(),
            "sum_of_dims": layers.sum_of_dims,
            "sum_equals_commutant": layers.sum_equals_commutant,
            "decomposition_holds": layers.decomposition_holds,
            "layers_orthogonal": layers.layers_orthogonal,
        },
    })
}

fn compare_with_rationals(cfg: &RunConfig, dims: &Value) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for v in cfg.vparity.parities() {
        let mut ws = Workspace::new(Engine::new(Rationals).with_size_cap(cfg.size_cap), cfg.shape(v)?)?;
        let q = duality_json(&verify_all(&mut ws)?);
        let p = &dims[v.to_string()];
        let same = ["first", "second", "layers", "dim_ambient"].iter().all(|k| p[k] == q[k]);
        out.push(Check::new(
            "dims_agree_with_rationals",
            v,
            Role::Informative,
            same,
            "duality report over the prime field matches the rational one".into(),
        ));
    }
    Ok(out)
}
