//! Braided Majorana qubits: the `B_t` R-matrix, roots `t_s`, the intertwiner
//! `W`, N-site creation towers with level-`s` truncation, round brackets and the
//! color-bracket reconstruction for `s = 3, 6`.
//!
//! The braid relation is checked as an identity of integer polynomial matrices
//! in `t` ([`braid_relation_symbolic`]) and independently at exact sample
//! points ([`braid_relation_at`]).

use serde::Serialize;

use crate::colorlie::{build_algebra, AlgebraSpec};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::gmat::Mat;
use crate::op::TensorOp;

/// Braiding level: finite `s ≥ 2`, or the `t = −1` limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Level {
    Finite(u32),
    Infinite,
}

impl Level {
    pub fn parse(s: &str) -> Result<Level> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Level::Infinite),
            _ => {
                let v: u32 = s
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad level {s}")))?;
                if v < 2 {
                    return Err(Error::Invalid("level must be at least 2".into()));
                }
                Ok(Level::Finite(v))
            }
        }
    }
}

/// `t_s = e^{πi(2/s − 1)}`; `t_∞ = −1`.
pub fn t_s(level: Level) -> Cyclotomic {
    match level {
        Level::Finite(s) => Cyclotomic::root_of_unity(2 * s, 2 - s as i64),
        Level::Infinite => Cyclotomic::from_int(-1),
    }
}

pub fn b_matrix(t: &Cyclotomic) -> Result<Mat> {
    if t.is_zero() {
        return Err(Error::Invalid("t must be nonzero".into()));
    }
    let o = Cyclotomic::zero;
    let l = Cyclotomic::one;
    Mat::from_rows(vec![
        vec![l(), o(), o(), o()],
        vec![o(), l() - t, t.clone(), o()],
        vec![o(), l(), o(), o()],
        vec![o(), o(), o(), -t],
    ])
}

// Polynomials in t with integer coefficients, ascending powers.
type PolyT = Vec<i64>;

fn padd(a: &PolyT, b: &PolyT) -> PolyT {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

fn pmul(a: &PolyT, b: &PolyT) -> PolyT {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (k, y) in b.iter().enumerate() {
            out[i + k] += x * y;
        }
    }
    padd(&out, &vec![0])
}

type PMat = Vec<Vec<PolyT>>;

fn p_b() -> PMat {
    let c = |v: &[i64]| v.to_vec();
    vec![
        vec![c(&[1]), c(&[0]), c(&[0]), c(&[0])],
        vec![c(&[0]), c(&[1, -1]), c(&[0, 1]), c(&[0])],
        vec![c(&[0]), c(&[1]), c(&[0]), c(&[0])],
        vec![c(&[0]), c(&[0]), c(&[0]), c(&[0, -1])],
    ]
}

fn p_kron(a: &PMat, b: &PMat) -> PMat {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![vec![0]; n * m]; n * m];
    for r1 in 0..n {
        for c1 in 0..n {
            for r2 in 0..m {
                for c2 in 0..m {
                    out[r1 * m + r2][c1 * m + c2] = pmul(&a[r1][c1], &b[r2][c2]);
                }
            }
        }
    }
    out
}

fn p_id(n: usize) -> PMat {
    (0..n)
        .map(|r| (0..n).map(|c| vec![(r == c) as i64]).collect())
        .collect()
}

fn p_mm(a: &PMat, b: &PMat) -> PMat {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (0..n).fold(vec![0], |acc, k| padd(&acc, &pmul(&a[r][k], &b[k][c]))))
                .collect()
        })
        .collect()
}

/// `(B⊗I)(I⊗B)(B⊗I) = (I⊗B)(B⊗I)(I⊗B)` as polynomial matrices in `t`.
pub fn braid_relation_symbolic() -> bool {
    let b1 = p_kron(&p_b(), &p_id(2));
    let b2 = p_kron(&p_id(2), &p_b());
    p_mm(&p_mm(&b1, &b2), &b1) == p_mm(&p_mm(&b2, &b1), &b2)
}

/// The braid relation at an exact value of `t`.
pub fn braid_relation_at(t: &Cyclotomic) -> Result<bool> {
    let b = b_matrix(t)?;
    let i2 = Mat::identity(2);
    let b1 = b.kron(&i2);
    let b2 = i2.kron(&b);
    Ok(&(&b1 * &b2) * &b1 == &(&b2 * &b1) * &b2)
}

/// Five exact sample points. Each entry of both sides has degree at most 3
/// in `t`, so agreement at distinct points decides the identity.
pub fn braid_sample_points() -> Vec<Cyclotomic> {
    vec![
        Cyclotomic::from_int(2),
        Cyclotomic::from_int(-3),
        Cyclotomic::frac(1, 2),
        Cyclotomic::j1(),
        Cyclotomic::root_of_unity(5, 2),
    ]
}

/// `(B_{t_s})^s = I₄`.
pub fn b_power_is_identity(s: u32) -> Result<bool> {
    Ok(b_matrix(&t_s(Level::Finite(s)))?.pow(s)?.is_identity())
}

/// `W = diag(e^{−iπ/s}, e^{iπ/s})`, cross-checked against `cos(π/s) I − i sin(π/s) X`.
pub fn intertwiner(level: Level) -> Result<Mat> {
    let s = match level {
        Level::Finite(s) if s >= 2 => s,
        Level::Finite(_) => return Err(Error::Invalid("level must be at least 2".into())),
        Level::Infinite => return Ok(Mat::identity(2)),
    };
    let u = Cyclotomic::root_of_unity(2 * s, 1);
    let ui = u.inv()?;
    let half = Cyclotomic::frac(1, 2);
    let cos = &(&u + &ui) * &half;
    let isin = &(&u - &ui) * &half;
    let trig = Mat::diag(&[&cos - &isin, &cos + &isin]);
    let w = Mat::diag(&[ui, u]);
    if trig != w {
        return Err(Error::Inconsistent("intertwiner forms disagree".into()));
    }
    Ok(w)
}

fn gamma() -> Mat {
    Mat::from_ints(&[&[0, 0], &[1, 0]])
}

/// `Some(λ)` with `W γ = λ γ W`.
pub fn intertwining_factor(level: Level) -> Result<Option<Cyclotomic>> {
    let w = intertwiner(level)?;
    let g = gamma();
    Ok((&w * &g).ratio_to(&(&g * &w)))
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorCheck {
    pub ratio: Option<String>,
    pub expected: String,
    pub holds: bool,
    pub r_matrix_form: bool,
}

/// `(W⊗γ)(γ⊗I)` against `(γ⊗I)(W⊗γ)`: they differ by `−t_s`, which is also
/// the action of `B_{t_s}` on `γ⊗γ`.
pub fn braided_tensor_check(level: Level) -> Result<TensorCheck> {
    let w = intertwiner(level)?;
    let g = gamma();
    let i2 = Mat::identity(2);
    let lhs = &w.kron(&g) * &g.kron(&i2);
    let rhs = &g.kron(&i2) * &w.kron(&g);
    let minus_t = -t_s(level);
    let ratio = lhs.ratio_to(&rhs);
    let b = b_matrix(&t_s(level))?;
    Ok(TensorCheck {
        holds: ratio.as_ref() == Some(&minus_t),
        ratio: ratio.map(|r| r.to_string()),
        expected: minus_t.to_string(),
        r_matrix_form: lhs == &b * &rhs,
    })
}

/// `g_N = Σ_k W^{⊗(k−1)} ⊗ γ ⊗ I^{⊗(N−k)}` applied to a dense `2^N` state.
/// Site 1 is the most significant bit.
fn apply_site_op(
    sites: usize,
    k: usize,
    wdiag: &[Cyclotomic; 2],
    v: &[Cyclotomic],
) -> Vec<Cyclotomic> {
    let mut out = vec![Cyclotomic::zero(); v.len()];
    let bit = |b: usize, site: usize| (b >> (sites - 1 - site)) & 1;
    for (b, amp) in v.iter().enumerate() {
        if amp.is_zero() || bit(b, k) == 1 {
            continue;
        }
        let mut a = amp.clone();
        for l in 0..k {
            a = &a * &wdiag[bit(b, l)];
        }
        out[b | (1 << (sites - 1 - k))] = a;
    }
    out
}

fn w_diagonal(level: Level) -> Result<[Cyclotomic; 2]> {
    let w = intertwiner(level)?;
    Ok([w.get(0, 0).clone(), w.get(1, 1).clone()])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainSpectrum {
    pub levels: Vec<usize>,
    pub plateau: bool,
}

/// Energies of `g_N^n |0⟩`, `n = 0, 1, …` until the state vanishes. Each state
/// is checked to be an eigenvector of `H_N = Σ_k diag(0,1)_k`.
pub fn chain_spectrum(sites: usize, level: Level) -> Result<ChainSpectrum> {
    if !(1..=12).contains(&sites) {
        return Err(Error::Invalid("N must lie in 1..=12".into()));
    }
    let wd = w_diagonal(level)?;
    let dim = 1usize << sites;
    let mut v = vec![Cyclotomic::zero(); dim];
    v[0] = Cyclotomic::one();
    let mut levels = Vec::new();
    for n in 0..=sites + 1 {
        if v.iter().all(|x| x.is_zero()) {
            break;
        }
        // eigenvector of the number operator: support on weight-n basis states only
        if v.iter()
            .enumerate()
            .any(|(b, x)| !x.is_zero() && b.count_ones() as usize != n)
        {
            return Err(Error::Inconsistent(format!(
                "tower state {n} is not an energy eigenvector"
            )));
        }
        levels.push(n);
        let mut next = vec![Cyclotomic::zero(); dim];
        for k in 0..sites {
            for (b, x) in apply_site_op(sites, k, &wd, &v).into_iter().enumerate() {
                if !x.is_zero() {
                    next[b] += &x;
                }
            }
        }
        v = next;
    }
    let plateau = match level {
        Level::Finite(s) => sites >= s as usize,
        Level::Infinite => false,
    };
    Ok(ChainSpectrum { levels, plateau })
}

/// `λ` with `F̄_I F̄_J = λ F̄_J F̄_I` for all `I < J`, and whether every `F̄_I² = 0`;
/// checked on every basis vector.
pub fn chain_exchange_factor(sites: usize, level: Level) -> Result<(Option<Cyclotomic>, bool)> {
    let wd = w_diagonal(level)?;
    let dim = 1usize << sites;
    let basis = |b: usize| {
        let mut v = vec![Cyclotomic::zero(); dim];
        v[b] = Cyclotomic::one();
        v
    };
    let mut factor: Option<Cyclotomic> = None;
    let mut consistent = true;
    let mut nilpotent = true;
    for b in 0..dim {
        let e = basis(b);
        for i in 0..sites {
            let fi = apply_site_op(sites, i, &wd, &e);
            if apply_site_op(sites, i, &wd, &fi)
                .iter()
                .any(|x| !x.is_zero())
            {
                nilpotent = false;
            }
            for jj in i + 1..sites {
                let ij = apply_site_op(sites, i, &wd, &apply_site_op(sites, jj, &wd, &e));
                let ji = apply_site_op(sites, jj, &wd, &fi);
                let Some(p) = ji.iter().position(|x| !x.is_zero()) else {
                    consistent &= ij.iter().all(|x| x.is_zero());
                    continue;
                };
                let lam = &ij[p] / &ji[p];
                consistent &= ij.iter().zip(&ji).all(|(a, c)| *a == c * &lam);
                match &factor {
                    None => factor = Some(lam),
                    Some(f) => consistent &= *f == lam,
                }
            }
        }
    }
    Ok((factor.filter(|_| consistent), nilpotent))
}

/// Angle `θ = π·num/den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Angle {
    pub num: i64,
    pub den: u32,
}

impl Angle {
    pub fn pi_frac(num: i64, den: u32) -> Angle {
        Angle { num, den }
    }

    /// `e^{iθ}`.
    pub fn phase(self) -> Cyclotomic {
        Cyclotomic::root_of_unity(2 * self.den, self.num)
    }

    /// `ε(θ) = −e^{−2iθ}`.
    pub fn epsilon(self) -> Cyclotomic {
        -self.phase().pow(-2)
    }
}

impl std::ops::Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle {
            num: -self.num,
            den: self.den,
        }
    }
}

/// `ϑ_s = (s+2)π/(2s)`.
pub fn vartheta(s: u32) -> Angle {
    Angle::pi_frac(s as i64 + 2, 2 * s)
}

/// `(X,Y)_θ = i sinθ [X,Y] + cosθ {X,Y}`, cross-checked against `e^{iθ}(XY + e^{−2iθ}YX)`.
pub fn round_bracket(x: &Mat, y: &Mat, theta: Angle) -> Result<Mat> {
    let u = theta.phase();
    let ui = u.inv()?;
    let half = Cyclotomic::frac(1, 2);
    let (cos, isin) = (&(&u + &ui) * &half, &(&u - &ui) * &half);
    let xy = x.try_mul(y)?;
    let yx = y.try_mul(x)?;
    let trig = xy
        .try_sub(&yx)?
        .scale(&isin)
        .try_add(&xy.try_add(&yx)?.scale(&cos))?;
    let expo = xy.try_add(&yx.scale(&ui.pow(2)))?.scale(&u);
    if trig != expo {
        return Err(Error::Inconsistent("round bracket forms disagree".into()));
    }
    Ok(expo)
}

/// Round bracket of factored operators, both forms; `None` if they disagree.
pub fn round_bracket_ops(
    x: &TensorOp,
    y: &TensorOp,
    theta: Angle,
    alg: &AlgebraSpec,
) -> Option<TensorOp> {
    let u = theta.phase();
    let ui = u.inv().ok()?;
    let half = Cyclotomic::frac(1, 2);
    let (cos, isin) = (&(&u + &ui) * &half, &(&u - &ui) * &half);
    let xy = x.mul(y);
    let yx = y.mul(x);
    let trig = xy.sub(&yx).scale(&isin).add(&xy.add(&yx).scale(&cos));
    let expo = xy.add(&yx.scale(&ui.pow(2))).scale(&u);
    trig.sub(&expo).is_zero_on(&alg.space).then_some(expo)
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundCheck {
    pub bracket: String,
    pub theta: Angle,
    pub expected: String,
    pub holds: bool,
    /// The algebra's ε on the pair equals `−e^{−2iθ}`.
    pub table_agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Reconstruction {
    pub s: u32,
    pub epsilon: String,
    pub epsilon_expected: String,
    pub epsilon_matches: bool,
    pub checks: Vec<RoundCheck>,
    /// Whether the `(G₀, G_{±i})` brackets vanish with `θ = ±π/2` and with `θ = ∓π/2`.
    pub half_pi_signs: [bool; 2],
}

impl Reconstruction {
    pub fn passed(&self) -> bool {
        self.epsilon_matches
            && self.checks.iter().all(|c| c.holds)
            && self.half_pi_signs.iter().any(|&b| b)
    }
}

/// Builds `G₀, G_{±1}, G_{±2}` from the 72-dim `s = 3` or `s = 6` model and
/// verifies the round-bracket relations with angles `0, ±π/2, ±ϑ_s`.
pub fn reconstruct_color_bracket(s: u32) -> Result<Reconstruction> {
    let (alg, labels, expected_eps) = match s {
        3 => (
            build_algebra("hpf_s3", 6)?,
            ["C", "P2†", "P2", "P1†", "P1"],
            Cyclotomic::root_of_unity(3, 2),
        ),
        6 => (
            build_algebra("hpf_s6", 6)?,
            ["C", "F1†", "F1", "F2†", "F2"],
            -Cyclotomic::j1(),
        ),
        _ => {
            return Err(Error::Invalid(
                "reconstruction is available for s = 3 and s = 6".into(),
            ))
        }
    };
    // G indices: 0 → G0, (1, ±) → G±1, (2, ±) → G±2
    let idx: Vec<usize> = labels
        .iter()
        .map(|l| alg.index_of(l))
        .collect::<Result<_>>()?;
    let g0 = idx[0];
    let gp = |i: usize, plus: bool| idx[if plus { 2 * i - 1 } else { 2 * i }];
    let name = |i: usize, plus: bool| format!("G{}{}", if plus { '+' } else { '-' }, i);
    let th = vartheta(s);
    let zero = Angle::pi_frac(0, 1);
    let half = Angle::pi_frac(1, 2);
    let mut checks = Vec::new();
    let mut check = |a: usize, b: usize, an: String, bn: String, theta: Angle, to_g0: bool| {
        let ga = &alg.generators[a];
        let gb = &alg.generators[b];
        let holds = round_bracket_ops(&ga.op, &gb.op, theta, &alg).is_some_and(|r| {
            let target = if to_g0 {
                alg.generators[g0].op.clone()
            } else {
                TensorOp::zero(alg.space.slots())
            };
            r.sub(&target).is_zero_on(&alg.space)
        });
        checks.push(RoundCheck {
            bracket: format!("({an}, {bn})"),
            theta,
            expected: if to_g0 { "G0".into() } else { "0".into() },
            holds,
            table_agrees: *alg.eps(&ga.grade, &gb.grade) == theta.epsilon(),
        });
    };
    check(g0, g0, "G0".into(), "G0".into(), half, false);
    for i in [1, 2] {
        for plus in [true, false] {
            check(
                gp(i, plus),
                gp(i, !plus),
                name(i, plus),
                name(i, !plus),
                zero,
                true,
            );
            check(
                gp(i, plus),
                gp(i, plus),
                name(i, plus),
                name(i, plus),
                zero,
                false,
            );
        }
    }
    for plus in [true, false] {
        check(
            gp(1, plus),
            gp(2, plus),
            name(1, plus),
            name(2, plus),
            th,
            false,
        );
        check(
            gp(2, plus),
            gp(1, plus),
            name(2, plus),
            name(1, plus),
            -th,
            false,
        );
        check(
            gp(1, plus),
            gp(2, !plus),
            name(1, plus),
            name(2, !plus),
            -th,
            false,
        );
        check(
            gp(2, plus),
            gp(1, !plus),
            name(2, plus),
            name(1, !plus),
            th,
            false,
        );
    }
    // (G0, G±i) and (G±i, G0) at ±π/2, both sign conventions
    let mut signs = [true, true];
    for (k, flip) in [false, true].into_iter().enumerate() {
        for i in [1, 2] {
            for plus in [true, false] {
                let theta = if plus != flip { half } else { -half };
                let (a, b) = (&alg.generators[g0].op, &alg.generators[gp(i, plus)].op);
                for (x, y) in [(a, b), (b, a)] {
                    signs[k] &= round_bracket_ops(x, y, theta, &alg)
                        .is_some_and(|r| r.is_zero_on(&alg.space));
                }
            }
        }
    }
    let eps = th.epsilon();
    Ok(Reconstruction {
        s,
        epsilon: eps.to_string(),
        epsilon_expected: expected_eps.to_string(),
        epsilon_matches: eps == expected_eps,
        checks,
        half_pi_signs: signs,
    })
}
