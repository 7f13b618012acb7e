//! Truncated Fock spaces of the 2d and 4d parabosonic matrix oscillators,
//! symmetrized states, exact probability densities and their maxima.
//!
//! Kets are unnormalized monomials `|n) = (a†)^n |0)` with `(n|n) = n!`, so every
//! amplitude stays in the cyclotomic field. Normalization is carried as an exact
//! squared norm and applied only when a [`DensityField`] is evaluated.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussHermite;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gmat::{c_matrix_variant, C02Form, Mat};

/// Key: internal index `0..9` first, then occupations.
pub type Ket = (u8, Vec<u8>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockState {
    modes: usize,
    n_max: usize,
    coeffs: BTreeMap<Ket, Cyclotomic>,
}

impl FockState {
    pub fn zero(modes: usize, n_max: usize) -> Self {
        FockState {
            modes,
            n_max,
            coeffs: BTreeMap::new(),
        }
    }

    /// `|0,…,0⟩ ⊗ v₁`.
    pub fn vacuum(modes: usize, n_max: usize) -> Self {
        let mut s = Self::zero(modes, n_max);
        s.coeffs.insert((0, vec![0; modes]), Cyclotomic::one());
        s
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn coeffs(&self) -> &BTreeMap<Ket, Cyclotomic> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn push(&mut self, key: Ket, v: Cyclotomic) {
        if v.is_zero() {
            return;
        }
        let e = self.coeffs.entry(key.clone()).or_default();
        *e += &v;
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn add(&self, other: &FockState) -> FockState {
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.push(k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, s: &Cyclotomic) -> FockState {
        let mut out = FockState::zero(self.modes, self.n_max);
        for (k, v) in &self.coeffs {
            out.push(k.clone(), v * s);
        }
        out
    }

    /// Total quanta when all kets share it.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self
            .coeffs
            .keys()
            .map(|(_, occ)| occ.iter().map(|&n| n as usize).sum::<usize>());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Exact `⟨self|other⟩` using `(n|n) = n!`.
    pub fn inner(&self, other: &FockState) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for (k, v) in &other.coeffs {
            if let Some(u) = self.coeffs.get(k) {
                let w = factorial_weight(&k.1);
                acc += &(&u.conj() * v).scale(&w);
            }
        }
        acc
    }

    pub fn norm2(&self) -> BigRational {
        self.inner(self).as_rational().expect("norms are rational")
    }

    /// Multiplies by a root of unity so that the first coefficient (lowest
    /// internal index, then lowest occupations) is a positive rational.
    pub fn phase_normalized(&self) -> FockState {
        let Some(c) = self.coeffs.values().next() else {
            return self.clone();
        };
        let m = c.order().max(1) * if c.order() % 2 == 0 { 1 } else { 2 };
        for e in 0..m as i64 {
            let u = Cyclotomic::root_of_unity(m, e);
            let r = c * &u;
            if r.as_rational().is_some_and(|q| q.is_positive()) {
                return self.scale(&u);
            }
        }
        self.clone()
    }
}

fn factorial_weight(occ: &[u8]) -> BigRational {
    let w: BigInt = occ
        .iter()
        .map(|&n| (1..=n as u64).map(BigInt::from).product::<BigInt>())
        .product();
    BigRational::from_integer(w)
}

/// `Σ A_I† A_I` oscillator with internal 9-dim space and `C_ij` dressing.
#[derive(Clone, Debug)]
pub struct OscillatorModel {
    pub j: Cyclotomic,
    pub n_max: usize,
    creators: Vec<Mat>,
    annihilators: Vec<Mat>,
    // mode whose oscillator the annihilator lowers
    lowers: Vec<usize>,
}

const MODE_C: [[(u8, u8); 2]; 4] = [
    [(2, 0), (1, 0)],
    [(2, 2), (1, 1)],
    [(2, 1), (1, 2)],
    [(0, 2), (0, 1)],
];

fn check_cube_root(j: &Cyclotomic) -> Result<()> {
    if !j.pow(3).is_one() {
        return Err(Error::Invalid(format!(
            "j = {j} is not a cube root of unity"
        )));
    }
    Ok(())
}

fn model(modes: usize, j: &Cyclotomic, n_max: usize, a4_from_a1: bool) -> Result<OscillatorModel> {
    check_cube_root(j)?;
    if n_max < 4 {
        return Err(Error::Invalid("n_max must be at least 4".into()));
    }
    let mut creators = Vec::new();
    let mut annihilators = Vec::new();
    for pair in &MODE_C[..modes] {
        annihilators.push(c_matrix_variant(pair[0].0, pair[0].1, j, C02Form::Adjoint)?.mat);
        creators.push(c_matrix_variant(pair[1].0, pair[1].1, j, C02Form::Adjoint)?.mat);
    }
    let mut lowers: Vec<usize> = (0..modes).collect();
    if a4_from_a1 && modes == 4 {
        lowers[3] = 0;
    }
    Ok(OscillatorModel {
        j: j.clone(),
        n_max,
        creators,
        annihilators,
        lowers,
    })
}

/// Two modes, `A₁† = C_10 a₁†`, `A₂† = C_11 a₂†`.
pub fn build_oscillator_2d(j: &Cyclotomic, n_max: usize) -> Result<OscillatorModel> {
    model(2, j, n_max, false)
}

/// Four modes, `A₄ = C_02 a₄` (or `C_02 a₁` when `a4_from_a1`).
pub fn build_oscillator_4d(
    j: &Cyclotomic,
    n_max: usize,
    a4_from_a1: bool,
) -> Result<OscillatorModel> {
    model(4, j, n_max, a4_from_a1)
}

impl OscillatorModel {
    pub fn modes(&self) -> usize {
        self.creators.len()
    }

    pub fn vacuum(&self) -> FockState {
        FockState::vacuum(self.modes(), self.n_max)
    }

    fn dressed(m: &Mat, i: u8) -> impl Iterator<Item = (u8, &Cyclotomic)> {
        (0..m.rows())
            .filter(move |&r| !m.get(r, i as usize).is_zero())
            .map(move |r| (r as u8, m.get(r, i as usize)))
    }

    /// `A_I†`; kets beyond `n_max` quanta are truncated away.
    pub fn create(&self, mode: usize, s: &FockState) -> FockState {
        let mut out = FockState::zero(s.modes, s.n_max);
        for ((i, occ), v) in &s.coeffs {
            if occ.iter().map(|&n| n as usize).sum::<usize>() >= self.n_max {
                continue;
            }
            let mut occ2 = occ.clone();
            occ2[mode] += 1;
            for (r, c) in Self::dressed(&self.creators[mode], *i) {
                out.push((r, occ2.clone()), v * c);
            }
        }
        out
    }

    /// `A_I`, using `a|n) = n|n−1)`.
    pub fn annihilate(&self, mode: usize, s: &FockState) -> FockState {
        let osc = self.lowers[mode];
        let mut out = FockState::zero(s.modes, s.n_max);
        for ((i, occ), v) in &s.coeffs {
            let n = occ[osc];
            if n == 0 {
                continue;
            }
            let mut occ2 = occ.clone();
            occ2[osc] -= 1;
            let w = v * &Cyclotomic::from_int(n as i64);
            for (r, c) in Self::dressed(&self.annihilators[mode], *i) {
                out.push((r, occ2.clone()), &w * c);
            }
        }
        out
    }

    pub fn hamiltonian(&self, s: &FockState) -> FockState {
        (0..self.modes()).fold(FockState::zero(s.modes, s.n_max), |acc, k| {
            acc.add(&self.create(k, &self.annihilate(k, s)))
        })
    }

    /// `Π_I (A_I†)^{n_I} |vac⟩`, unnormalized (squared norm `Π n_I!`).
    pub fn ket(&self, occ: &[u8]) -> FockState {
        let mut s = self.vacuum();
        for (k, &n) in occ.iter().enumerate().rev() {
            for _ in 0..n {
                s = self.create(k, &s);
            }
        }
        s
    }

    /// `(Σ_I A_I†)^n |vac⟩`, unnormalized.
    pub fn symmetrized_power(&self, n: usize) -> FockState {
        let mut s = self.vacuum();
        for _ in 0..n {
            s = (0..self.modes()).fold(FockState::zero(s.modes, s.n_max), |acc, k| {
                acc.add(&self.create(k, &s))
            });
        }
        s
    }
}

/// A symmetrized state kept exact: `|ψ⟩ = state / √norm2`.
#[derive(Clone, Debug)]
pub struct SymmetrizedState {
    pub n: usize,
    pub state: FockState,
    pub norm2: BigRational,
}

/// `|ψ_n⟩ ∝ (A₁†+A₂†)^n |0,0⟩` for the 2d model, phase-normalized.
pub fn symmetrized_state(n: usize, j: &Cyclotomic, n_max: usize) -> Result<SymmetrizedState> {
    if n > n_max {
        return Err(Error::Invalid(format!("n = {n} exceeds n_max = {n_max}")));
    }
    let m = build_oscillator_2d(j, n_max)?;
    let s = m.symmetrized_power(n);
    if s.is_zero() {
        return Err(Error::Invalid(format!("truncated to zero at n = {n}")));
    }
    let state = s.phase_normalized();
    let norm2 = state.norm2();
    Ok(SymmetrizedState { n, state, norm2 })
}

/// Dense 2d polynomial `Σ c[a][b] x^a y^b`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Poly2 {
    pub deg: usize,
    pub coeffs: Vec<f64>,
}

impl Poly2 {
    fn at(&self, a: usize, b: usize) -> f64 {
        self.coeffs[a * (self.deg + 1) + b]
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let mut acc = 0.0;
        for a in (0..=self.deg).rev() {
            let mut row = 0.0;
            for b in (0..=self.deg).rev() {
                row = row * y + self.at(a, b);
            }
            acc = acc * x + row;
        }
        acc
    }

    pub fn dx(&self) -> Poly2 {
        let mut c = vec![0.0; self.coeffs.len()];
        for a in 1..=self.deg {
            for b in 0..=self.deg {
                c[(a - 1) * (self.deg + 1) + b] = a as f64 * self.at(a, b);
            }
        }
        Poly2 {
            deg: self.deg,
            coeffs: c,
        }
    }

    pub fn dy(&self) -> Poly2 {
        let mut c = vec![0.0; self.coeffs.len()];
        for a in 0..=self.deg {
            for b in 1..=self.deg {
                c[a * (self.deg + 1) + b - 1] = b as f64 * self.at(a, b);
            }
        }
        Poly2 {
            deg: self.deg,
            coeffs: c,
        }
    }
}

// Physicists' Hermite polynomial coefficients, ascending powers.
fn hermite_coeffs(n: usize) -> Vec<BigInt> {
    let mut prev = vec![BigInt::one()];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::zero(), BigInt::from(2)];
    for k in 1..n {
        let mut next = vec![BigInt::zero(); k + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c * 2;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c * BigInt::from(2 * k);
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Hermite functions scaled as `(a†)^n φ₀ = √(n!) φ_n`, by the three-term recurrence.
pub fn raised_hermite_functions(n_max: usize, x: f64) -> Vec<f64> {
    let mut phi = vec![0.0; n_max + 1];
    phi[0] = PI.powf(-0.25) * (-x * x / 2.0).exp();
    if n_max >= 1 {
        phi[1] = 2f64.sqrt() * x * phi[0];
    }
    for n in 1..n_max {
        let nf = n as f64;
        phi[n + 1] = (2.0 / (nf + 1.0)).sqrt() * x * phi[n] - (nf / (nf + 1.0)).sqrt() * phi[n - 1];
    }
    let mut fact = 1.0f64;
    for (n, p) in phi.iter_mut().enumerate() {
        if n > 0 {
            fact *= n as f64;
        }
        *p *= fact.sqrt();
    }
    phi
}

/// `p(x,y) = (K/π) e^{−(x²+y²)} D(x,y)` with `D` a polynomial with rational
/// coefficients, plus the Hermite-function data for an independent evaluation.
#[derive(Clone, Debug)]
pub struct DensityField {
    /// `K` exactly; the closed form is `(K/π)·e^{−r²}·D`.
    pub prefactor: BigRational,
    pub exact_poly: Vec<Vec<BigRational>>,
    pub poly: Poly2,
    k_float: f64,
    // per internal component: (n, m, amplitude)
    components: Vec<Vec<(usize, usize, Complex64)>>,
    norm2: f64,
    max_n: usize,
}

impl DensityField {
    pub fn zero() -> Self {
        DensityField {
            prefactor: BigRational::zero(),
            exact_poly: vec![vec![BigRational::zero()]],
            poly: Poly2 {
                deg: 0,
                coeffs: vec![0.0],
            },
            k_float: 0.0,
            components: Vec::new(),
            norm2: 1.0,
            max_n: 0,
        }
    }

    /// Closed form.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.k_float / PI * (-(x * x + y * y)).exp() * self.poly.eval(x, y)
    }

    /// Squared norm of the 9-component wavefunction built from Hermite functions.
    pub fn eval_hermite(&self, x: f64, y: f64) -> f64 {
        if self.components.is_empty() {
            return 0.0;
        }
        let hx = raised_hermite_functions(self.max_n, x);
        let hy = raised_hermite_functions(self.max_n, y);
        let total: f64 = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|(n, m, c)| c * (hx[*n] * hy[*m]))
                    .sum::<Complex64>()
                    .norm_sqr()
            })
            .sum();
        total / self.norm2
    }

    /// `p(0,0)·π` as an exact rational.
    pub fn origin_times_pi(&self) -> BigRational {
        &self.prefactor * &self.exact_poly[0][0]
    }

    /// `∬ p` from Gaussian moments of the polynomial, exactly.
    pub fn exact_integral(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for (a, row) in self.exact_poly.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    acc += c * gaussian_moment(a) * gaussian_moment(b);
                }
            }
        }
        acc * &self.prefactor
    }

    /// `∬ p` by 64-node Gauss-Hermite quadrature on each axis.
    pub fn quadrature_integral(&self) -> f64 {
        let gh = GaussHermite::new(NonZeroUsize::new(64).unwrap());
        let k = self.k_float / PI;
        gh.integrate(|x| gh.integrate(|y| self.poly.eval(x, y))) * k
    }
}

/// `∫ x^a e^{−x²} dx / √π`.
pub fn gaussian_moment(a: usize) -> BigRational {
    if a % 2 == 1 {
        return BigRational::zero();
    }
    let k = a / 2;
    let double_fact: BigInt = (1..=k).map(|i| BigInt::from(2 * i - 1)).product();
    BigRational::new(double_fact, BigInt::one() << k)
}

fn rat_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Density of a symmetrized 2d state.
pub fn probability_density(s: &SymmetrizedState) -> Result<DensityField> {
    density_of(&s.state)
}

/// Density of any nonzero 2d state of homogeneous degree.
pub fn density_of(state: &FockState) -> Result<DensityField> {
    if state.is_zero() {
        return Ok(DensityField::zero());
    }
    if state.modes() != 2 {
        return Err(Error::Invalid(
            "densities are defined for the 2d model".into(),
        ));
    }
    let deg = state
        .degree()
        .ok_or_else(|| Error::Invalid("closed form needs a homogeneous state".into()))?;
    let norm2 = state.norm2();
    let herm: Vec<Vec<BigInt>> = (0..=deg).map(hermite_coeffs).collect();
    let size = deg + 1;

    // P_i = Σ c H_n(x) H_m(y) per internal index
    let mut by_comp: BTreeMap<u8, Vec<Cyclotomic>> = BTreeMap::new();
    let mut components: BTreeMap<u8, Vec<(usize, usize, Complex64)>> = BTreeMap::new();
    for ((i, occ), c) in state.coeffs() {
        let (n, m) = (occ[0] as usize, occ[1] as usize);
        components
            .entry(*i)
            .or_default()
            .push((n, m, c.to_complex()));
        let p = by_comp
            .entry(*i)
            .or_insert_with(|| vec![Cyclotomic::zero(); size * size]);
        for (a, ha) in herm[n].iter().enumerate() {
            for (b, hb) in herm[m].iter().enumerate() {
                let w = BigRational::from_integer(ha * hb);
                if !w.is_zero() {
                    p[a * size + b] += &c.scale(&w);
                }
            }
        }
    }
    // D = Σ_i P_i conj(P_i)
    let dsize = 2 * deg + 1;
    let mut d = vec![Cyclotomic::zero(); dsize * dsize];
    for p in by_comp.values() {
        let nz: Vec<(usize, &Cyclotomic)> =
            p.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (k1, c1) in &nz {
            for (k2, c2) in &nz {
                let (a, b) = (k1 / size + k2 / size, k1 % size + k2 % size);
                d[a * dsize + b] += &(*c1 * &c2.conj());
            }
        }
    }
    let mut exact_poly = vec![vec![BigRational::zero(); dsize]; dsize];
    for (k, c) in d.iter().enumerate() {
        exact_poly[k / dsize][k % dsize] = c
            .as_rational()
            .ok_or_else(|| Error::Inconsistent("density coefficient is not rational".into()))?;
    }
    let prefactor = BigRational::new(BigInt::one(), BigInt::one() << deg) / &norm2;
    let poly = Poly2 {
        deg: 2 * deg,
        coeffs: exact_poly.iter().flatten().map(rat_f64).collect(),
    };
    Ok(DensityField {
        k_float: rat_f64(&prefactor),
        prefactor,
        exact_poly,
        poly,
        components: components.into_values().collect(),
        norm2: rat_f64(&norm2),
        max_n: deg,
    })
}

/// Shorthand: density of `|ψ_n⟩` for a given `j`.
pub fn symmetrized_density(n: usize, j: &Cyclotomic, n_max: usize) -> Result<DensityField> {
    probability_density(&symmetrized_state(n, j, n_max)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct Grid {
    pub range: f64,
    pub resolution: usize,
    pub xs: Vec<f64>,
    /// Row-major: `values[iy * resolution + ix]`.
    pub values: Vec<f64>,
}

impl Grid {
    pub fn step(&self) -> f64 {
        2.0 * self.range / (self.resolution - 1) as f64
    }

    pub fn riemann_sum(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.step() * self.step()
    }

    /// `(x, y, value)` of the largest cell.
    pub fn argmax(&self) -> (f64, f64, f64) {
        let (k, v) = self
            .values
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |b, (k, &v)| if v > b.1 { (k, v) } else { b });
        (
            self.xs[k % self.resolution],
            self.xs[k / self.resolution],
            v,
        )
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,p\n");
        for (iy, y) in self.xs.iter().enumerate() {
            for (ix, x) in self.xs.iter().enumerate() {
                let p = self.values[iy * self.resolution + ix];
                out.push_str(&format!("{},{},{}\n", fmt_g6(*x), fmt_g6(*y), fmt_g6(p)));
            }
        }
        out
    }
}

/// C-style `%.6g`.
pub fn fmt_g6(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.5e}");
    let (mant, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if !(-4..6).contains(&exp) {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn density_grid(field: &DensityField, range: f64, resolution: usize) -> Result<Grid> {
    density_grid_with(field, range, resolution, Exec::default())
}

pub fn density_grid_with(
    field: &DensityField,
    range: f64,
    resolution: usize,
    exec: Exec,
) -> Result<Grid> {
    if resolution < 2 {
        return Err(Error::Invalid("resolution must be at least 2".into()));
    }
    let xs: Vec<f64> = (0..resolution)
        .map(|i| -range + 2.0 * range * i as f64 / (resolution - 1) as f64)
        .collect();
    let values = exec.map_range(resolution * resolution, |k| {
        field.eval(xs[k % resolution], xs[k / resolution])
    });
    Ok(Grid {
        range,
        resolution,
        xs,
        values,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LocalMax {
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MaximaReport {
    pub maxima: Vec<LocalMax>,
    /// Seeds that did not converge to a strict local maximum.
    pub failed: Vec<(f64, f64)>,
}

/// Lattice of step 0.5 over `[−3,3]²`.
pub fn default_seeds() -> Vec<(f64, f64)> {
    let pts: Vec<f64> = (0..13).map(|i| -3.0 + 0.5 * i as f64).collect();
    pts.iter()
        .flat_map(|&y| pts.iter().map(move |&x| (x, y)))
        .collect()
}

struct Derivs {
    p: Poly2,
    px: Poly2,
    py: Poly2,
    pxx: Poly2,
    pxy: Poly2,
    pyy: Poly2,
}

impl Derivs {
    fn new(p: &Poly2) -> Self {
        let px = p.dx();
        let py = p.dy();
        Derivs {
            pxx: px.dx(),
            pxy: px.dy(),
            pyy: py.dy(),
            px,
            py,
            p: p.clone(),
        }
    }

    // log f = log D − r² + const: value, gradient, Hessian
    fn log_parts(&self, x: f64, y: f64) -> (f64, [f64; 2], [[f64; 2]; 2]) {
        let d = self.p.eval(x, y);
        let (dx, dy) = (self.px.eval(x, y), self.py.eval(x, y));
        let (dxx, dxy, dyy) = (
            self.pxx.eval(x, y),
            self.pxy.eval(x, y),
            self.pyy.eval(x, y),
        );
        let v = d.ln() - x * x - y * y;
        let g = [dx / d - 2.0 * x, dy / d - 2.0 * y];
        let h = [
            [
                dxx / d - dx * dx / (d * d) - 2.0,
                dxy / d - dx * dy / (d * d),
            ],
            [
                dxy / d - dx * dy / (d * d),
                dyy / d - dy * dy / (d * d) - 2.0,
            ],
        ];
        (v, g, h)
    }
}

fn newton_ascent(field: &DensityField, der: &Derivs, seed: (f64, f64)) -> Option<LocalMax> {
    let (mut x, mut y) = seed;
    for _ in 0..500 {
        let (v, g, h) = der.log_parts(x, y);
        if !v.is_finite() {
            return None;
        }
        let f = field.eval(x, y);
        let grad_f = f * g[0].hypot(g[1]);
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        let neg_def = h[0][0] < 0.0 && det > 0.0;
        if grad_f < 1e-10 && neg_def {
            return Some(LocalMax { x, y, value: f });
        }
        let dir = if neg_def {
            [
                -(h[1][1] * g[0] - h[0][1] * g[1]) / det,
                -(-h[1][0] * g[0] + h[0][0] * g[1]) / det,
            ]
        } else {
            // climb along the gradient plus the direction of largest curvature
            let tr = h[0][0] + h[1][1];
            let lam = tr / 2.0 + ((h[0][0] - h[1][1]).powi(2) / 4.0 + h[0][1] * h[0][1]).sqrt();
            let mut e = if h[0][1].abs() > 1e-300 {
                [lam - h[1][1], h[0][1]]
            } else if h[0][0] >= h[1][1] {
                [1.0, 0.0]
            } else {
                [0.0, 1.0]
            };
            let en = e[0].hypot(e[1]);
            e = [e[0] / en, e[1] / en];
            let s = if e[0] * g[0] + e[1] * g[1] < 0.0 {
                -0.1
            } else {
                0.1
            };
            let gn = g[0].hypot(g[1]).max(1e-300);
            let gs = g[0].hypot(g[1]).min(1.0) / gn;
            [g[0] * gs + s * e[0], g[1] * gs + s * e[1]]
        };
        let mut t = 1.0;
        let mut moved = false;
        while t > 1e-12 {
            let (nx, ny) = (x + t * dir[0], y + t * dir[1]);
            let (nv, _, _) = der.log_parts(nx, ny);
            if nv.is_finite() && nv >= v {
                x = nx;
                y = ny;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if !moved {
            let f = field.eval(x, y);
            return (f * g[0].hypot(g[1]) < 1e-10 && neg_def).then_some(LocalMax {
                x,
                y,
                value: f,
            });
        }
    }
    None
}

pub fn find_local_maxima(field: &DensityField, seeds: &[(f64, f64)]) -> MaximaReport {
    find_local_maxima_with(field, seeds, Exec::default())
}

pub fn find_local_maxima_with(
    field: &DensityField,
    seeds: &[(f64, f64)],
    exec: Exec,
) -> MaximaReport {
    let der = Derivs::new(&field.poly);
    let results = exec.map(seeds, |&s| newton_ascent(field, &der, s));
    let mut maxima: Vec<LocalMax> = Vec::new();
    let mut failed = Vec::new();
    for (seed, r) in seeds.iter().zip(results) {
        match r {
            Some(m) => {
                if !maxima.iter().any(|o| (o.x - m.x).hypot(o.y - m.y) < 1e-6) {
                    maxima.push(m);
                }
            }
            None => failed.push(*seed),
        }
    }
    maxima.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    MaximaReport { maxima, failed }
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityComparison {
    pub n: usize,
    pub equal: bool,
    pub sup_diff: f64,
}

/// Compares the parabosonic (`j = j₁`) and bosonic (`j = 1`) densities of
/// `|ψ_n⟩` over a 201×201 grid on `[−4,4]²`.
pub fn compare_densities(n: usize, n_max: usize) -> Result<DensityComparison> {
    let pb = symmetrized_density(n, &Cyclotomic::j1(), n_max)?;
    let bos = symmetrized_density(n, &Cyclotomic::one(), n_max)?;
    let res = 201;
    let sup = (0..res * res)
        .map(|k| {
            let x = -4.0 + 8.0 * (k % res) as f64 / (res - 1) as f64;
            let y = -4.0 + 8.0 * (k / res) as f64 / (res - 1) as f64;
            (pb.eval(x, y) - bos.eval(x, y)).abs()
        })
        .fold(0.0, f64::max);
    Ok(DensityComparison {
        n,
        equal: sup < 1e-9,
        sup_diff: sup,
    })
}

/// Parses `1`, `j1`, `j2` (or `j3` for 1) into a cube root of unity.
pub fn parse_j(s: &str) -> Result<Cyclotomic> {
    match s {
        "1" | "j3" => Ok(Cyclotomic::one()),
        "j1" | "j" => Ok(Cyclotomic::j1()),
        "j2" => Ok(Cyclotomic::root_of_unity(3, 2)),
        _ => Err(Error::Unknown {
            kind: "cube root",
            name: s.into(),
        }),
    }
}
