//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use colorlie_core::braid::{self, Level};
use colorlie_core::colorlie::{self, build_algebra, Check};
use colorlie_core::fock::{self, symmetrized_density};
use colorlie_core::grading::{self, canonical_z2z3z3, canonical_z3z3, validate_table};
use colorlie_core::pascal::{self, specialize_row, triangle_row, w_factor, WordSystem, ZJ};
use colorlie_core::{Cyclotomic, Exec};
use num_rational::BigRational;

type Check10 = Result<(), String>;
type Criterion = (&'static str, fn() -> Check10);

fn ensure(ok: bool, msg: impl Into<String>) -> Check10 {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn j1() -> Cyclotomic {
    Cyclotomic::j1()
}

fn c1_classification() -> Check10 {
    let start = Instant::now();
    let t = grading::search_tables(0, 2, 3).map_err(|e| e.to_string())?;
    let c = grading::classify_inequivalent(&t).map_err(|e| e.to_string())?;
    ensure(
        t.len() == 3 && c.len() == 2,
        format!("Z3xZ3: {} tables / {} classes", t.len(), c.len()),
    )?;
    let t = grading::search_tables(1, 2, 3).map_err(|e| e.to_string())?;
    let c = grading::classify_inequivalent(&t).map_err(|e| e.to_string())?;
    ensure(
        t.len() == 6 && c.len() == 4,
        format!("Z2xZ3xZ3: {} tables / {} classes", t.len(), c.len()),
    )?;
    ensure(
        start.elapsed() < Duration::from_secs(60),
        format!("took {:?}", start.elapsed()),
    )
}

// entries as (power of j, carries δ)
fn c2_tables() -> Check10 {
    let j = j1();
    let delta = Cyclotomic::from_int(-1);
    let t9 = canonical_z3z3(&j).map_err(|e| e.to_string())?;
    let t18 = canonical_z2z3z3(&j, &delta).map_err(|e| e.to_string())?;
    ensure(
        validate_table(&t9).unwrap().is_valid(),
        "Z3xZ3 table invalid",
    )?;
    ensure(
        validate_table(&t18).unwrap().is_valid(),
        "Z2xZ3xZ3 table invalid",
    )?;
    let spot9: [(&str, &str, i64); 10] = [
        ("01", "10", 2),
        ("01", "11", 2),
        ("02", "21", 2),
        ("10", "12", 2),
        ("11", "01", 1),
        ("12", "10", 1),
        ("12", "21", 0),
        ("20", "22", 1),
        ("21", "10", 2),
        ("22", "11", 0),
    ];
    for (a, b, e) in spot9 {
        ensure(*t9.eps(a, b).unwrap() == j.pow(e), format!("ε({a},{b})"))?;
    }
    let spot18: [(&str, &str, i64, bool); 10] = [
        ("1_10", "1_01", 1, true),
        ("0_01", "1_10", 2, false),
        ("1_01", "0_10", 2, false),
        ("1_02", "1_10", 1, true),
        ("1_11", "1_12", 1, true),
        ("1_12", "1_21", 0, true),
        ("1_20", "1_01", 2, true),
        ("1_21", "1_02", 1, true),
        ("1_22", "1_11", 0, true),
        ("0_22", "1_21", 1, false),
    ];
    for (a, b, e, d) in spot18 {
        let want = if d { &delta * &j.pow(e) } else { j.pow(e) };
        ensure(*t18.eps(a, b).unwrap() == want, format!("ε({a},{b})"))?;
    }
    Ok(())
}

fn c3_axioms() -> Check10 {
    let start = Instant::now();
    for name in ["hpf_s3", "hpf_s6"] {
        let alg = build_algebra(name, 6).map_err(|e| e.to_string())?;
        let r = colorlie::run_checks(
            &alg,
            &[Check::Skew, Check::Jacobi, Check::Metaabelian],
            Exec::Parallel,
        );
        ensure(
            r.passed(),
            format!(
                "{name}: skew {} jacobi {} metaabelian {}",
                r.skew.len(),
                r.jacobi.len(),
                r.metaabelian.len()
            ),
        )?;
        ensure(
            alg.space.total_dim() == 72,
            format!("{name}: dimension {}", alg.space.total_dim()),
        )?;
    }
    ensure(
        start.elapsed() < Duration::from_secs(120),
        format!("took {:?}", start.elapsed()),
    )
}

fn c4_structure() -> Check10 {
    for name in ["hpb4", "hpf44"] {
        let alg = build_algebra(name, 6).map_err(|e| e.to_string())?;
        let v = colorlie::check_expectations(&alg);
        ensure(
            v.is_empty(),
            format!("{name}: {} bracket mismatches", v.len()),
        )?;
    }
    // ⟨A_I, A_J†⟩ = δ_IJ C, checked directly
    let alg = build_algebra("hpb4", 6).unwrap();
    let c = &alg.generators[alg.index_of("C").unwrap()].op;
    for i in 1..=4 {
        for k in 1..=4 {
            let a = alg.index_of(&format!("A{i}")).unwrap();
            let b = alg.index_of(&format!("A{k}†")).unwrap();
            let br = alg.bracket(a, b);
            let want = if i == k { br.sub(c) } else { br };
            ensure(want.is_zero_on(&alg.space), format!("<A{i},A{k}†>"))?;
        }
    }
    Ok(())
}

fn c5_nilpotency() -> Check10 {
    for name in ["hfer3", "hpf44", "hpf_s6", "hpf_star3", "hpf_s3"] {
        let alg = build_algebra(name, 6).map_err(|e| e.to_string())?;
        for g in &alg.generators {
            if g.label.ends_with('†') && (g.label.starts_with('F') || g.label.starts_with('P')) {
                ensure(
                    g.op.mul(&g.op).is_zero_on(&alg.space),
                    format!("{name}: ({})² ≠ 0", g.label),
                )?;
            }
        }
    }
    let j = j1();
    ensure(
        w_factor(&j, &j, &j.pow(2)).unwrap().is_zero(),
        "w(j1,j1,j1²) ≠ 0",
    )?;
    let m = -&j;
    let want = Cyclotomic::from_int(3) - Cyclotomic::from_int(3) * j.pow(2);
    ensure(w_factor(&m, &m, &m).unwrap() == want, "w(−j1,−j1,−j1)")
}

fn c6_spectra() -> Check10 {
    for (name, tower) in [("hpf_s3", 3), ("hpf_s6", 4)] {
        let alg = build_algebra(name, 6).map_err(|e| e.to_string())?;
        let deg: Vec<usize> = colorlie::creation_spectrum(&alg, 5)
            .unwrap()
            .iter()
            .map(|l| l.degeneracy)
            .collect();
        ensure(deg == [1, 3, 3, 1], format!("{name}: degeneracies {deg:?}"))?;
        let t = colorlie::tower_levels(&alg, 6).unwrap();
        ensure(
            t.len() == tower,
            format!("{name}: {} tower levels", t.len()),
        )?;
    }
    for n in 1..=8usize {
        for s in 2..=8u32 {
            let l = braid::chain_spectrum(n, Level::Finite(s)).unwrap().levels;
            ensure(
                l == (0..=n.min(s as usize - 1)).collect::<Vec<_>>(),
                format!("chain N={n} s={s}: {l:?}"),
            )?;
        }
        let l = braid::chain_spectrum(n, Level::Infinite).unwrap().levels;
        ensure(l == (0..=n).collect::<Vec<_>>(), format!("chain N={n} s=∞"))?;
    }
    Ok(())
}

fn c7_triangle() -> Check10 {
    let (l, j, z) = (ZJ::ONE, ZJ::J, ZJ::Z);
    let printed: Vec<Vec<ZJ>> = vec![
        vec![l],
        vec![l, l],
        vec![l, z - j, l],
        vec![l, z, z, l],
        vec![l, z + 1, z * (j + 1), z + 1, l],
        vec![
            l,
            z * 2 - j,
            z * (j * 2 + 1) + 1,
            z * (j * 2 + 1) + 1,
            z * 2 - j,
            l,
        ],
        vec![
            l,
            z * 2,
            z * (z * 2 - j),
            z * z + z * (j + 2) + 2,
            z * (z * 2 - j),
            z * 2,
            l,
        ],
    ];
    for (n, row) in printed.iter().enumerate() {
        ensure(triangle_row(n).coeffs == *row, format!("row {n}"))?;
    }
    let pascal_rows = [
        vec![1],
        vec![1, 1],
        vec![1, 2, 1],
        vec![1, 3, 3, 1],
        vec![1, 4, 6, 4, 1],
        vec![1, 5, 10, 10, 5, 1],
        vec![1, 6, 15, 20, 15, 6, 1],
    ];
    for (n, row) in pascal_rows.iter().enumerate() {
        let got = specialize_row(&triangle_row(n), &Cyclotomic::one()).unwrap();
        ensure(
            got == row
                .iter()
                .map(|&v| Cyclotomic::from_int(v))
                .collect::<Vec<_>>(),
            format!("bosonic row {n}"),
        )?;
    }
    let mid = specialize_row(&triangle_row(2), &j1()).unwrap()[1].clone();
    ensure(mid == -j1(), format!("row 2 middle = {mid}"))
}

fn c8_densities() -> Check10 {
    let bos = symmetrized_density(2, &Cyclotomic::one(), 8).map_err(|e| e.to_string())?;
    let pb = symmetrized_density(2, &j1(), 8).map_err(|e| e.to_string())?;
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    ensure(bos.origin_times_pi() == r(1, 4), "p_bos(0,0)·π")?;
    ensure(pb.origin_times_pi() == r(2, 5), "p_pb(0,0)·π")?;

    let mb = fock::find_local_maxima(&bos, &fock::default_seeds());
    let mp = fock::find_local_maxima(&pb, &fock::default_seeds());
    let hit = |m: &fock::MaximaReport, pos: f64, on_axis: bool, v: f64| {
        m.maxima.iter().any(|p| {
            let (a, b) = (p.x.abs().max(p.y.abs()), p.x.abs().min(p.y.abs()));
            let shape = if on_axis {
                b < 1e-4 && (a - pos).abs() < 1e-4
            } else {
                (a - pos).abs() < 1e-4 && (b - pos).abs() < 1e-4
            };
            shape && (p.value - v).abs() < 1e-4
        })
    };
    ensure(hit(&mb, 1.05244, false, 0.098055), "bosonic maximum")?;
    ensure(hit(&mp, 1.53819, true, 0.089194), "parabosonic maximum")?;

    for f in [&bos, &pb] {
        ensure(f.exact_integral() == r(1, 1), "exact normalization")?;
        ensure(
            (f.quadrature_integral() - 1.0).abs() < 1e-9,
            "quadrature normalization",
        )?;
        for k in 0..=50 {
            for l in 0..=50 {
                let (x, y) = (-5.0 + 0.2 * k as f64, -5.0 + 0.2 * l as f64);
                ensure(
                    (f.eval(x, y) - f.eval_hermite(x, y)).abs() < 1e-12,
                    format!("paths differ at ({x},{y})"),
                )?;
            }
        }
    }
    for (n, equal) in [(0, true), (1, true), (2, false)] {
        ensure(
            fock::compare_densities(n, 8).unwrap().equal == equal,
            format!("compare_densities n={n}"),
        )?;
    }
    Ok(())
}

fn c9_braid() -> Check10 {
    ensure(braid::braid_relation_symbolic(), "symbolic braid relation")?;
    for t in braid::braid_sample_points() {
        ensure(
            braid::braid_relation_at(&t).unwrap(),
            format!("braid relation at t = {t}"),
        )?;
    }
    for s in 2..=12u32 {
        let level = Level::Finite(s);
        let minus_t = -braid::t_s(level);
        ensure(braid::b_power_is_identity(s).unwrap(), format!("B^{s} ≠ I"))?;
        ensure(
            minus_t.level().map(|l| l.0) == Ok(s),
            format!("level(−t_{s})"),
        )?;
        ensure(
            braid::intertwining_factor(level).unwrap() == Some(minus_t),
            format!("Wγ at s={s}"),
        )?;
    }
    for (s, eps) in [(3, j1().pow(2)), (6, -j1())] {
        let r = braid::reconstruct_color_bracket(s).map_err(|e| e.to_string())?;
        ensure(
            r.passed() && braid::vartheta(s).epsilon() == eps,
            format!("reconstruction s={s}"),
        )?;
    }
    Ok(())
}

fn c10_cross_module() -> Check10 {
    for n in 1..=6usize {
        for s in 2..=6u32 {
            let level = Level::Finite(s);
            let top = *braid::chain_spectrum(n, level)
                .unwrap()
                .levels
                .last()
                .unwrap();
            let q = (-braid::t_s(level)).inv().unwrap();
            let sys = WordSystem::uniform(n, &q, true).unwrap();
            let cut = pascal::truncation_point(&sys, n + 3);
            ensure(
                cut == Some(top + 1),
                format!("N={n} s={s}: chain top {top}, word cut {cut:?}"),
            )?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("classification", c1_classification),
        ("table fidelity", c2_tables),
        ("algebra axioms", c3_axioms),
        ("structure constants", c4_structure),
        ("nilpotency and cancellation", c5_nilpotency),
        ("spectra", c6_spectra),
        ("triangle", c7_triangle),
        ("densities", c8_densities),
        ("braid", c9_braid),
        ("cross-module oracle", c10_cross_module),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match f() {
            Ok(()) => println!(
                "PASS {:>2} {name} ({:.2}s)",
                i + 1,
                start.elapsed().as_secs_f64()
            ),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
