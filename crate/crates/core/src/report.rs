//! End-to-end self check: every headline result recomputed and compared with
//! its reference value. Backs the `report` subcommand.

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::braid::{self, Level as BraidLevel};
use crate::colorlie::{self, build_algebra, creation_spectrum, tower_levels, Check};
use crate::cyclotomic::Cyclotomic;
use crate::error::Result;
use crate::exec::Exec;
use crate::fock::{self, compare_densities, find_local_maxima_with, symmetrized_density};
use crate::grading::{
    self, canonical_z2z3z3, canonical_z3z3, validate_table_with, FactorTable, Shape,
};
use crate::pascal::{self, specialize_row, triangle_row, w_factor, WordSystem, ZJ};

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub seconds: f64,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

pub const CHECK_NAMES: [&str; 10] = [
    "classification",
    "table fidelity",
    "algebra axioms",
    "structure constants",
    "nilpotency and cancellation",
    "spectra",
    "triangle",
    "densities",
    "braid",
    "cross-module truncation",
];

pub fn run_report(exec: Exec) -> Report {
    let checks: Vec<CheckOutcome> = (1..=10).map(|id| run_check(id, exec)).collect();
    Report {
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

/// Runs one numbered check; errors count as failures and are recorded in `detail`.
pub fn run_check(id: u32, exec: Exec) -> CheckOutcome {
    let start = Instant::now();
    let out = match id {
        1 => classification(exec),
        2 => table_fidelity(exec),
        3 => algebra_axioms(exec),
        4 => structure_constants(exec),
        5 => nilpotency(),
        6 => spectra(),
        7 => triangle(),
        8 => densities(exec),
        9 => braid_checks(),
        10 => cross_module(),
        _ => Ok((false, json!({"error": "unknown check"}))),
    };
    let seconds = start.elapsed().as_secs_f64();
    let (mut passed, detail) = out.unwrap_or_else(|e| (false, json!({"error": e.to_string()})));
    // wall-clock budgets
    if (id == 1 && seconds >= 60.0) || (id == 3 && seconds >= 120.0) {
        passed = false;
    }
    CheckOutcome {
        id,
        name: CHECK_NAMES
            .get(id as usize - 1)
            .copied()
            .unwrap_or("unknown"),
        passed,
        seconds,
        detail,
    }
}

type Outcome = Result<(bool, Value)>;

fn classification(exec: Exec) -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for (p, q, tables, classes) in [(0, 2, 3, 2), (1, 2, 6, 4)] {
        let found = grading::search_tables_with(p, q, 3, grading::DEFAULT_BUDGET, exec)?;
        let cls = grading::classify_inequivalent_with(&found, exec)?;
        ok &= found.len() == tables && cls.len() == classes;
        detail.push(json!({"p": p, "q": q, "tables": found.len(), "classes": cls.len()}));
    }
    Ok((ok, Value::Array(detail)))
}

/// `"1"`, `"j"`, `"j2"`, optionally prefixed by `d` for a factor of δ.
fn symbol(s: &str, j: &Cyclotomic, delta: &Cyclotomic) -> Cyclotomic {
    let (d, rest) = match s.strip_prefix('d') {
        Some(r) => (delta.clone(), r),
        None => (Cyclotomic::one(), s),
    };
    let base = match rest {
        "" | "1" => Cyclotomic::one(),
        "j" => j.clone(),
        "j2" => j.pow(2),
        _ => unreachable!("bad symbol {s}"),
    };
    &d * &base
}

// (row, column, printed entry)
const Z3Z3_SPOTS: [(&str, &str, &str); 10] = [
    ("01", "10", "j2"),
    ("01", "20", "j"),
    ("10", "01", "j"),
    ("11", "10", "j2"),
    ("11", "22", "1"),
    ("12", "11", "j2"),
    ("20", "02", "j"),
    ("21", "12", "1"),
    ("22", "20", "j2"),
    ("02", "00", "1"),
];

const Z2Z3Z3_SPOTS: [(&str, &str, &str); 10] = [
    ("1_10", "1_01", "dj"),
    ("1_01", "1_10", "dj2"),
    ("1_00", "1_00", "d"),
    ("0_11", "1_12", "j"),
    ("1_22", "0_21", "j"),
    ("1_12", "1_20", "dj2"),
    ("1_21", "1_11", "dj"),
    ("0_02", "1_20", "j2"),
    ("1_20", "1_22", "dj"),
    ("1_11", "1_21", "dj2"),
];

fn spot_check(
    t: &FactorTable,
    spots: &[(&str, &str, &str)],
    j: &Cyclotomic,
    delta: &Cyclotomic,
) -> Result<usize> {
    let mut bad = 0;
    for (a, b, s) in spots {
        if *t.eps(a, b)? != symbol(s, j, delta) {
            bad += 1;
        }
    }
    Ok(bad)
}

fn table_fidelity(exec: Exec) -> Outcome {
    let j = Cyclotomic::j1();
    let delta = Cyclotomic::from_int(-1);
    let t9 = canonical_z3z3(&j)?;
    let t18 = canonical_z2z3z3(&j, &delta)?;
    let v9 = validate_table_with(&t9, exec)?.violations.len();
    let v18 = validate_table_with(&t18, exec)?.violations.len();
    let s9 = spot_check(&t9, &Z3Z3_SPOTS, &j, &delta)?;
    let s18 = spot_check(&t18, &Z2Z3Z3_SPOTS, &j, &delta)?;
    let ok = v9 == 0 && v18 == 0 && s9 == 0 && s18 == 0 && t18.shape() == Shape::new(1, 2);
    Ok((
        ok,
        json!({"violations": [v9, v18], "spot_mismatches": [s9, s18]}),
    ))
}

fn algebra_axioms(exec: Exec) -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for name in ["hpf_s3", "hpf_s6"] {
        let alg = build_algebra(name, 6)?;
        let r = colorlie::run_checks(
            &alg,
            &[Check::Skew, Check::Jacobi, Check::Metaabelian],
            exec,
        );
        ok &= r.passed();
        detail.push(json!({
            "name": name,
            "skew": r.skew.len(),
            "jacobi": r.jacobi.len(),
            "metaabelian": r.metaabelian.len(),
        }));
    }
    Ok((ok, Value::Array(detail)))
}

fn structure_constants(exec: Exec) -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for name in ["hpb4", "hpf44"] {
        let alg = build_algebra(name, 6)?;
        let v = colorlie::check_expectations_with(&alg, exec);
        ok &= v.is_empty() && !alg.expectations.is_empty();
        detail
            .push(json!({"name": name, "declared": alg.expectations.len(), "violations": v.len()}));
    }
    Ok((ok, Value::Array(detail)))
}

fn nilpotency() -> Outcome {
    let mut ok = true;
    let mut squares = Vec::new();
    for name in ["hfer3", "hpf44", "hpf_s6", "hpf_star3", "hpf_s3"] {
        let alg = build_algebra(name, 6)?;
        for g in alg
            .generators
            .iter()
            .filter(|g| g.label.starts_with(['F', 'P']) && g.label.ends_with('†'))
        {
            let zero = g.op.mul(&g.op).is_zero_on(&alg.space);
            ok &= zero;
            squares.push(json!({"algebra": name, "generator": g.label, "square_zero": zero}));
        }
    }
    let j1 = Cyclotomic::j1();
    let w1 = w_factor(&j1, &j1, &j1.pow(2))?;
    let m = -&j1;
    let w2 = w_factor(&m, &m, &m)?;
    let expected = Cyclotomic::from_int(3) * (Cyclotomic::one() - j1.pow(2));
    ok &= w1.is_zero() && w2 == expected && !squares.is_empty();
    Ok((
        ok,
        json!({"squares": squares, "w_j1_j1_j1sq": w1.to_string(), "w_mj1": w2.to_string()}),
    ))
}

fn spectra() -> Outcome {
    let mut ok = true;
    let mut detail = serde_json::Map::new();
    for (name, tower) in [("hpf_s3", 3usize), ("hpf_s6", 4usize)] {
        let alg = build_algebra(name, 6)?;
        let deg: Vec<usize> = creation_spectrum(&alg, 4)?
            .iter()
            .map(|l| l.degeneracy)
            .collect();
        let levels = tower_levels(&alg, 6)?;
        let nondegenerate = levels.iter().all(|l| l.degeneracy == 1);
        ok &= deg == [1, 3, 3, 1] && levels.len() == tower && nondegenerate;
        detail.insert(
            name.into(),
            json!({"degeneracies": deg, "tower_levels": levels.len()}),
        );
    }
    let mut chain_ok = true;
    for n in 1..=8 {
        for s in (2..=8)
            .map(BraidLevel::Finite)
            .chain([BraidLevel::Infinite])
        {
            let top = match s {
                BraidLevel::Finite(s) => n.min(s as usize - 1),
                BraidLevel::Infinite => n,
            };
            chain_ok &= braid::chain_spectrum(n, s)?.levels == (0..=top).collect::<Vec<_>>();
        }
    }
    detail.insert("chain".into(), json!(chain_ok));
    Ok((ok && chain_ok, Value::Object(detail)))
}

/// Printed triangle rows, rebuilt from their `(j, z)` expressions.
pub fn reference_rows() -> Vec<Vec<ZJ>> {
    let (one, j, z) = (ZJ::ONE, ZJ::J, ZJ::Z);
    vec![
        vec![one],
        vec![one, one],
        vec![one, z - j, one],
        vec![one, z, z, one],
        vec![one, z + 1, z * (j + 1), z + 1, one],
        vec![
            one,
            z * 2 - j,
            z * (j * 2 + 1) + 1,
            z * (j * 2 + 1) + 1,
            z * 2 - j,
            one,
        ],
        vec![
            one,
            z * 2,
            z * (z * 2 - j),
            z * z + z * (j + 2) + 2,
            z * (z * 2 - j),
            z * 2,
            one,
        ],
    ]
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

fn triangle() -> Outcome {
    let rows = reference_rows();
    let symbolic = rows
        .iter()
        .enumerate()
        .all(|(n, r)| triangle_row(n).coeffs == *r);
    let mut bosonic = true;
    for n in 0..=10 {
        let row = specialize_row(&triangle_row(n), &Cyclotomic::one())?;
        bosonic &= row
            .iter()
            .enumerate()
            .all(|(k, c)| *c == Cyclotomic::from_int(binomial(n, k)));
    }
    let j1 = Cyclotomic::j1();
    let mid = specialize_row(&triangle_row(2), &j1)?[1].clone();
    let figure = mid == -&j1;
    // independent path: word expansion of (A1† + A2†)^n with a12 = j
    let mut words = true;
    for j in [Cyclotomic::one(), j1.clone(), j1.pow(2)] {
        let sys = WordSystem::uniform(2, &j, false)?;
        for n in 0..=10 {
            let p = sys.symmetrized_power(n);
            let row = specialize_row(&triangle_row(n), &j)?;
            words &= (0..=n).all(|k| {
                p.get(&vec![(n - k) as u32, k as u32])
                    .cloned()
                    .unwrap_or_default()
                    == row[k]
            });
        }
    }
    Ok((
        symbolic && bosonic && figure && words,
        json!({"symbolic": symbolic, "binomial": bosonic, "row2_middle": mid.to_string(), "word_expansion": words}),
    ))
}

fn densities(exec: Exec) -> Outcome {
    use num_rational::BigRational;
    let n_max = 8;
    let bos = symmetrized_density(2, &Cyclotomic::one(), n_max)?;
    let pb = symmetrized_density(2, &Cyclotomic::j1(), n_max)?;
    let origin_ok = bos.origin_times_pi() == BigRational::new(1.into(), 4.into())
        && pb.origin_times_pi() == BigRational::new(2.into(), 5.into());

    let seeds = fock::default_seeds();
    let near = |m: &fock::MaximaReport, x: f64, y: f64, v: f64| {
        m.maxima
            .iter()
            .any(|p| (p.x - x).abs() < 1e-4 && (p.y - y).abs() < 1e-4 && (p.value - v).abs() < 1e-4)
    };
    let mb = find_local_maxima_with(&bos, &seeds, exec);
    let mp = find_local_maxima_with(&pb, &seeds, exec);
    let (xb, vb, up, vp) = (1.05244, 0.098055, 1.53819, 0.089194);
    let maxima_ok = near(&mb, xb, xb, vb)
        && near(&mb, -xb, -xb, vb)
        && (near(&mp, up, 0.0, vp) || near(&mp, 0.0, up, vp))
        && (near(&mp, -up, 0.0, vp) || near(&mp, 0.0, -up, vp));

    let mut norm_ok = true;
    let mut paths_ok = true;
    let mut worst: f64 = 0.0;
    for j in [Cyclotomic::one(), Cyclotomic::j1()] {
        for n in 0..=3 {
            let f = symmetrized_density(n, &j, n_max)?;
            norm_ok &= f.exact_integral() == BigRational::from_integer(1.into())
                && (f.quadrature_integral() - 1.0).abs() < 1e-9;
            for k in 0..=40 {
                for l in 0..=40 {
                    let (x, y) = (-4.0 + 0.2 * k as f64, -4.0 + 0.2 * l as f64);
                    worst = worst.max((f.eval(x, y) - f.eval_hermite(x, y)).abs());
                }
            }
        }
    }
    paths_ok &= worst < 1e-12;
    let cmp: Vec<bool> = (0..=2)
        .map(|n| compare_densities(n, n_max).map(|c| c.equal))
        .collect::<Result<_>>()?;
    let cmp_ok = cmp == [true, true, false];
    Ok((
        origin_ok && maxima_ok && norm_ok && paths_ok && cmp_ok,
        json!({
            "origin_times_pi": [bos.origin_times_pi().to_string(), pb.origin_times_pi().to_string()],
            "maxima": {"bosonic": mb.maxima, "parabosonic": mp.maxima},
            "normalized": norm_ok,
            "path_difference": worst,
            "equal_n0_n1_n2": cmp,
        }),
    ))
}

fn braid_checks() -> Outcome {
    let symbolic = braid::braid_relation_symbolic();
    let sampled = braid::braid_sample_points()
        .iter()
        .map(braid::braid_relation_at)
        .collect::<Result<Vec<_>>>()?;
    let mut roots = true;
    for s in 2..=12u32 {
        let level = BraidLevel::Finite(s);
        let minus_t = -braid::t_s(level);
        roots &= braid::b_power_is_identity(s)?
            && minus_t.level()?.0 == s
            && braid::intertwining_factor(level)? == Some(minus_t);
    }
    let mut recon = Vec::new();
    let mut recon_ok = true;
    for s in [3, 6] {
        let r = braid::reconstruct_color_bracket(s)?;
        recon_ok &= r.passed();
        recon.push(json!({"s": s, "epsilon": r.epsilon, "passed": r.passed(), "half_pi_signs": r.half_pi_signs}));
    }
    let ok = symbolic && sampled.iter().all(|&b| b) && roots && recon_ok;
    Ok((
        ok,
        json!({"symbolic": symbolic, "sampled": sampled, "roots": roots, "reconstruction": recon}),
    ))
}

fn cross_module() -> Outcome {
    let mut ok = true;
    let mut rows = Vec::new();
    for n in 1..=6 {
        for s in 2..=6u32 {
            let level = BraidLevel::Finite(s);
            let top = *braid::chain_spectrum(n, level)?.levels.last().unwrap_or(&0);
            let (q, _) = braid::chain_exchange_factor(n.max(2), level)?;
            let q = q.unwrap_or_else(|| -braid::t_s(level));
            let sys = WordSystem::uniform(n, &q, true)?;
            let cut = pascal::truncation_point(&sys, n + 2);
            let agree = cut == Some(top + 1);
            ok &= agree;
            rows.push(json!([n, s, top, cut]));
        }
    }
    Ok((ok, json!({"n_s_chain_top_word_cut": rows})))
}
