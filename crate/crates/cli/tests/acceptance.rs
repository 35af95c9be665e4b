//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::process::{Command as Process, ExitCode};
use std::time::{Duration, Instant};

use levi_schur_core::combinatorics::{orbit_reps, sign_identity_holds, Parity, ParityVector, Permutation, Shape};
use levi_schur_core::duality::{expected_levi_dim, verify_all, verify_faithful_layer_action, DualityReport, Workspace};
use levi_schur_core::enhanced::{combine_levi, levi_basis, levi_product, rho_levi};
use levi_schur_core::field::Rationals;
use levi_schur_core::hecke::{all_relation_instances, commutation_suite, relation_suite};
use levi_schur_core::linalg::Engine;
use levi_schur_core::schur::classical_duality;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const Q: Rationals = Rationals;
const PARITIES: [Parity; 2] = [Parity::Even, Parity::Odd];
const RELATION_SHAPES: [(usize, usize); 3] = [(1, 1), (2, 1), (1, 2)];
const DUALITY_SHAPES: [(usize, usize, usize); 4] = [(1, 1, 2), (2, 1, 2), (1, 2, 2), (1, 1, 3)];

type Outcome = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, Box<dyn FnOnce(&mut Reports) -> Outcome>);

fn shape(m: usize, n: usize, r: usize, v: Parity) -> Shape {
    Shape::new(m, n, r, v).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_parity_vectors(len: usize) -> Vec<ParityVector> {
    (0..1u32 << len)
        .map(|mask| {
            let bits: Vec<u8> = (0..len).map(|k| ((mask >> k) & 1) as u8).collect();
            ParityVector::from_bits(&bits).unwrap()
        })
        .collect()
}

fn random_parity_vector(rng: &mut ChaCha8Rng, len: usize) -> ParityVector {
    let bits: Vec<u8> = (0..len).map(|_| rng.gen_range(0..2)).collect();
    ParityVector::from_bits(&bits).unwrap()
}

fn random_permutation(rng: &mut ChaCha8Rng, len: usize) -> Permutation {
    let mut images: Vec<usize> = (0..len).collect();
    images.shuffle(rng);
    Permutation::new(images).unwrap()
}

fn sign_identity() -> Outcome {
    let mut counts = Vec::new();
    for l in 0..=4 {
        let eps = all_parity_vectors(l);
        let perms = Permutation::all(l);
        let mut cases = 0usize;
        for a in &eps {
            for b in &eps {
                for w in &perms {
                    ensure(sign_identity_holds(a, b, w).unwrap(), || format!("fails at {a:?} {b:?} {w}"))?;
                    cases += 1;
                }
            }
        }
        ensure(cases == eps.len() * eps.len() * perms.len(), || format!("l={l}: {cases} cases enumerated"))?;
        counts.push(cases);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for l in [5, 6] {
        for _ in 0..1000 {
            let a = random_parity_vector(&mut rng, l);
            let b = random_parity_vector(&mut rng, l);
            let w = random_permutation(&mut rng, l);
            ensure(sign_identity_holds(&a, &b, &w).unwrap(), || format!("fails at {a:?} {b:?} {w}"))?;
        }
    }
    Ok(format!(
        "exhaustive l<=4 ({} triples at l=4, {} total), 1000 seeded cases each at l=5,6",
        counts[4],
        counts.iter().sum::<usize>()
    ))
}

fn relations() -> Outcome {
    let mut total = 0;
    for (m, n) in RELATION_SHAPES {
        for r in [2, 3] {
            for v in PARITIES {
                let s = shape(m, n, r, v);
                let rep = relation_suite(&Q, &s).map_err(|e| e.to_string())?;
                ensure(rep.all_pass(), || format!("{s}: {:?}", rep.failures))?;
                ensure(rep.total() == all_relation_instances(r).len(), || format!("{s}: instance count"))?;
                total += rep.total();
            }
        }
    }
    Ok(format!("{total} relation instances over 12 shape/parity pairs"))
}

fn homomorphism() -> Outcome {
    let mut pairs = 0;
    for (m, n) in [(1, 1), (2, 1)] {
        for v in PARITIES {
            let s = shape(m, n, 2, v);
            let basis = levi_basis(&s);
            let mats: Vec<_> = basis.iter().map(|b| rho_levi(&Q, b, &s).unwrap()).collect();
            for (a, ma) in basis.iter().zip(&mats) {
                for (b, mb) in basis.iter().zip(&mats) {
                    let expansion = combine_levi(&Q, &levi_product(a, b, &s).unwrap(), &s).unwrap();
                    ensure(expansion == ma.mul(mb, &Q).unwrap(), || format!("{a} * {b} at {s}"))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} ordered pairs at (1|1,2) and (2|1,2), both parities"))
}

fn commutation() -> Outcome {
    let mut total = 0;
    for (m, n) in RELATION_SHAPES {
        for r in [2, 3] {
            for v in PARITIES {
                let s = shape(m, n, r, v);
                let rep = commutation_suite(&Q, &s).map_err(|e| e.to_string())?;
                ensure(rep.failures.is_empty(), || format!("{s}: {:?}", rep.failures))?;
                total += rep.checked;
            }
        }
    }
    Ok(format!("{total} commutators vanish"))
}

struct Reports(BTreeMap<(usize, usize, usize, Parity), DualityReport>);

impl Reports {
    fn get(&mut self, m: usize, n: usize, r: usize, v: Parity) -> Result<&DualityReport, String> {
        match self.0.entry((m, n, r, v)) {
            Entry::Occupied(slot) => Ok(slot.into_mut()),
            Entry::Vacant(slot) => {
                let mut ws = Workspace::new(Engine::new(Q), shape(m, n, r, v)).map_err(|e| e.to_string())?;
                Ok(slot.insert(verify_all(&mut ws).map_err(|e| e.to_string())?))
            }
        }
    }
}

fn first_duality(reports: &mut Reports) -> Outcome {
    for (m, n, r) in DUALITY_SHAPES {
        for v in PARITIES {
            let rep = reports.get(m, n, r, v)?;
            ensure(rep.first.holds && rep.first.levi_in_commutant, || format!("fails at {}", rep.shape))?;
        }
    }
    let smallest = reports.get(1, 1, 2, Parity::Even)?.first.dim_levi;
    ensure(smallest == 13, || format!("dim at (1|1,2) is {smallest}"))?;
    Ok(format!("8 shape/parity pairs, dim at (1|1,2) = {smallest}"))
}

fn second_duality(reports: &mut Reports) -> Outcome {
    let mut shapes = Vec::new();
    for (m, n, r) in DUALITY_SHAPES.into_iter().chain([(1, 1, 1), (2, 1, 1), (2, 1, 3), (1, 2, 3)]) {
        if r > m + n {
            continue;
        }
        for v in PARITIES {
            let rep = reports.get(m, n, r, v)?;
            ensure(rep.second.gated && rep.second.holds && rep.second.d_in_commutant, || {
                format!("fails at {}: dim D {} vs {}", rep.shape, rep.second.dim_d, rep.second.dim_commutant_levi)
            })?;
        }
        shapes.push(format!("({m}|{n},{r})"));
    }
    Ok(format!("{} both parities", shapes.join(" ")))
}

fn classical() -> Outcome {
    let e = Engine::new(Q);
    let mut dims = Vec::new();
    for (m, n) in [(1, 1), (2, 1)] {
        let rep = classical_duality(&e, &shape(m, n, 2, Parity::Even)).map_err(|e| e.to_string())?;
        ensure(rep.spans_equal, || format!("commutant of S_2 differs at ({m}|{n},2)"))?;
        ensure(rep.converse_equal == Some(true) && rep.dim_commutant_of_schur == Some(2), || {
            format!("converse at ({m}|{n},2): {:?}", rep.dim_commutant_of_schur)
        })?;
        dims.push(rep.dim_schur);
    }
    ensure(dims[0] == 8, || format!("dim S(1|1,2) = {}", dims[0]))?;
    Ok(format!("dim S(1|1,2) = {}, dim S(2|1,2) = {}, converse dim 2! = 2", dims[0], dims[1]))
}

fn faithfulness(reports: &mut Reports) -> Outcome {
    let mut layers = 0;
    for (m, n, r) in DUALITY_SHAPES {
        for v in PARITIES {
            let s = shape(m, n, r, v);
            let expected = 1 + (1..=r).map(|l| orbit_reps(&s, l).len()).sum::<usize>();
            let rep = reports.get(m, n, r, v)?;
            ensure(rep.first.dim_levi == expected && expected == expected_levi_dim(&s), || {
                format!("rank {} vs {expected} at {s}", rep.first.dim_levi)
            })?;
            let ws = Workspace::new(Engine::new(Q), s).map_err(|e| e.to_string())?;
            for l in 1..=r {
                ensure(verify_faithful_layer_action(&ws, l).map_err(|e| e.to_string())?, || {
                    format!("layer {l} at {s}")
                })?;
                layers += 1;
            }
        }
    }
    Ok(format!("rank matches orbit count at 8 shape/parity pairs, {layers} layer actions faithful"))
}

fn decomposition(reports: &mut Reports) -> Outcome {
    let mut out = Vec::new();
    for (m, n) in [(1, 1), (2, 1)] {
        for v in PARITIES {
            let rep = reports.get(m, n, 2, v)?;
            let l = &rep.layers;
            ensure(l.decomposition_holds && l.layers_orthogonal && l.sum_equals_commutant, || {
                format!("direct sum fails at {}", rep.shape)
            })?;
            ensure(l.layers.iter().all(|x| x.equal), || format!("layer endomorphisms differ at {}", rep.shape))?;
            let dims: Vec<_> = l.layers.iter().map(|x| x.dim_d_layer.to_string()).collect();
            out.push(dims.join("+"));
        }
    }
    Ok(format!("layer dims {}", out.join(", ")))
}

fn determinism() -> Outcome {
    let run = || -> Result<String, String> {
        let out = Process::new(env!("CARGO_BIN_EXE_levi-schur"))
            .args(["verify", "--m", "2", "--n", "1", "--r", "2", "--vparity", "both", "--output", "json"])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || format!("exit status {:?}", out.status.code()))?;
        let mut v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        v.as_object_mut().ok_or("report is not an object")?.remove("timing").ok_or("no timing key")?;
        Ok(serde_json::to_string_pretty(&v).unwrap())
    };
    let (a, b) = (run()?, run()?);
    ensure(a == b, || "the two reports differ".into())?;
    Ok(format!("two runs give identical {}-byte reports", a.len()))
}

fn main() -> ExitCode {
    let mut reports = Reports(BTreeMap::new());
    let criteria: Vec<Criterion> = vec![
        ("sign identity", Some(Duration::from_secs(5)), Box::new(|_| sign_identity())),
        ("relations", Some(Duration::from_secs(30)), Box::new(|_| relations())),
        ("homomorphism oracle", Some(Duration::from_secs(60)), Box::new(|_| homomorphism())),
        ("commutation", None, Box::new(|_| commutation())),
        ("first duality", Some(Duration::from_secs(120)), Box::new(first_duality)),
        ("second duality", None, Box::new(second_duality)),
        ("classical duality", None, Box::new(|_| classical())),
        ("faithfulness", None, Box::new(faithfulness)),
        ("decomposition", None, Box::new(decomposition)),
        ("determinism", None, Box::new(|_| determinism())),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run(&mut reports);
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, limit) {
            if elapsed > limit {
                outcome = Err(format!("took {:.2} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs()));
            }
        }
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("{status} {:>2} {name}: {detail} ({:.2} s)", k + 1, elapsed.as_secs_f64());
        failed += usize::from(outcome.is_err());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
