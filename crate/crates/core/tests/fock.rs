use colorlie_core::fock::*;
use colorlie_core::{Cyclotomic, Exec};
use num_rational::BigRational;
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn j1() -> Cyclotomic {
    Cyclotomic::j1()
}

#[test]
fn origin_values() {
    assert_eq!(
        symmetrized_density(2, &Cyclotomic::one(), 8)
            .unwrap()
            .origin_times_pi(),
        rat(1, 4)
    );
    assert_eq!(
        symmetrized_density(2, &j1(), 8).unwrap().origin_times_pi(),
        rat(2, 5)
    );
}

#[test]
fn gaussian_moments() {
    assert_eq!(gaussian_moment(0), rat(1, 1));
    assert_eq!(gaussian_moment(1), rat(0, 1));
    assert_eq!(gaussian_moment(2), rat(1, 2));
    assert_eq!(gaussian_moment(4), rat(3, 4));
    assert_eq!(gaussian_moment(6), rat(15, 8));
}

#[test]
fn normalization() {
    for j in [Cyclotomic::one(), j1(), j1().pow(2)] {
        for n in 0..=6 {
            let f = symmetrized_density(n, &j, 8).unwrap();
            assert_eq!(f.exact_integral(), rat(1, 1), "n = {n}");
            assert!((f.quadrature_integral() - 1.0).abs() < 1e-9);
        }
    }
    // crude independent check on a grid
    let g = density_grid(&symmetrized_density(2, &j1(), 8).unwrap(), 6.0, 241).unwrap();
    assert!((g.riemann_sum() - 1.0).abs() < 1e-6);
}

#[test]
fn two_evaluation_paths_agree() {
    for j in [Cyclotomic::one(), j1()] {
        for n in 0..=4 {
            let f = symmetrized_density(n, &j, 8).unwrap();
            for k in 0..=30 {
                for l in 0..=30 {
                    let (x, y) = (-3.0 + 0.2 * k as f64, -3.0 + 0.2 * l as f64);
                    assert!((f.eval(x, y) - f.eval_hermite(x, y)).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn energy_eigenstates() {
    let m = build_oscillator_2d(&j1(), 8).unwrap();
    for n in 0..=6 {
        let s = symmetrized_state(n, &j1(), 8).unwrap().state;
        assert_eq!(m.hamiltonian(&s), s.scale(&Cyclotomic::from_int(n as i64)));
    }
}

#[test]
fn two_particle_state() {
    let s = symmetrized_state(2, &j1(), 8).unwrap();
    assert_eq!(s.norm2, rat(5, 1));
    let first = s.state.coeffs().values().next().unwrap();
    assert!(first.as_rational().is_some_and(|r| r > rat(0, 1)));
    let b = symmetrized_state(2, &Cyclotomic::one(), 8).unwrap();
    assert_ne!(b.state, s.state);
}

#[test]
fn small_truncation_is_rejected() {
    assert!(build_oscillator_2d(&j1(), 3).is_err());
    assert!(symmetrized_state(9, &j1(), 8).is_err());
}

fn grad(f: &DensityField, x: f64, y: f64) -> (f64, f64) {
    let h = 1e-5;
    (
        (f.eval(x + h, y) - f.eval(x - h, y)) / (2.0 * h),
        (f.eval(x, y + h) - f.eval(x, y - h)) / (2.0 * h),
    )
}

#[test]
fn bosonic_maxima() {
    let f = symmetrized_density(2, &Cyclotomic::one(), 8).unwrap();
    let r = find_local_maxima(&f, &default_seeds());
    assert!(r.failed.is_empty());
    let off: Vec<&LocalMax> = r.maxima.iter().filter(|m| m.x.abs() > 0.5).collect();
    assert_eq!(off.len(), 4);
    for m in off {
        assert!((m.x.abs() - 1.05244).abs() < 1e-4 && (m.y.abs() - 1.05244).abs() < 1e-4);
        assert!((m.value - 0.098055).abs() < 1e-4);
        let (gx, gy) = grad(&f, m.x, m.y);
        assert!(gx.abs() < 1e-6 && gy.abs() < 1e-6);
    }
}

#[test]
fn parabosonic_maxima() {
    let f = symmetrized_density(2, &j1(), 8).unwrap();
    let r = find_local_maxima(&f, &default_seeds());
    let axis: Vec<&LocalMax> = r.maxima.iter().filter(|m| m.x.hypot(m.y) > 0.5).collect();
    assert_eq!(axis.len(), 4);
    for m in axis {
        assert!((m.x.hypot(m.y) - 1.53819).abs() < 1e-4);
        assert!(m.x.abs().min(m.y.abs()) < 1e-4);
        assert!((m.value - 0.089194).abs() < 1e-4);
    }
    let origin = r.maxima.iter().find(|m| m.x.hypot(m.y) < 1e-6).unwrap();
    assert!((origin.value - 0.4 / std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn maxima_do_not_depend_on_policy() {
    let f = symmetrized_density(2, &j1(), 8).unwrap();
    let a = find_local_maxima_with(&f, &default_seeds(), Exec::Sequential);
    let b = find_local_maxima_with(&f, &default_seeds(), Exec::Parallel);
    assert_eq!(a.maxima, b.maxima);
}

#[test]
fn densities_split_at_two_particles() {
    let eq: Vec<bool> = (0..=3)
        .map(|n| compare_densities(n, 8).unwrap().equal)
        .collect();
    assert_eq!(eq, vec![true, true, false, false]);
}

#[test]
fn csv_format() {
    let g = density_grid(&symmetrized_density(1, &j1(), 8).unwrap(), 1.0, 3).unwrap();
    let csv = g.to_csv();
    assert!(csv.starts_with("x,y,p\n"));
    assert_eq!(csv.lines().count(), 10);
    assert!(!csv.contains('\r'));
    assert_eq!(fmt_g6(0.0795774715), "0.0795775");
    assert_eq!(fmt_g6(1.5e-7), "1.5e-07");
    assert_eq!(fmt_g6(-2.0), "-2");
    assert_eq!(fmt_g6(123456789.0), "1.23457e+08");
}

#[test]
fn j_parsing() {
    assert_eq!(parse_j("1").unwrap(), Cyclotomic::one());
    assert_eq!(parse_j("j1").unwrap(), j1());
    assert_eq!(parse_j("j2").unwrap(), j1().pow(2));
    assert!(parse_j("j4").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn density_is_nonnegative_and_even(x in -4.0f64..4.0, y in -4.0f64..4.0, n in 0usize..=3, pb in any::<bool>()) {
        let j = if pb { j1() } else { Cyclotomic::one() };
        let f = symmetrized_density(n, &j, 8).unwrap();
        let p = f.eval(x, y);
        prop_assert!(p >= -1e-15);
        prop_assert!((p - f.eval(-x, -y)).abs() < 1e-12);
        prop_assert!((p - f.eval_hermite(x, y)).abs() < 1e-12);
    }
}
