//! Graded brackets, the ε-axiom checkers, and the concrete oscillator
//! (super)algebras built from the `C_ij` family.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gmat::{building_block_with, c_matrix_variant, C02Form, GradedMatrix, Mat};
use crate::grading::{
    canonical_z2z3z3, canonical_z3z3, z2_dot_table, FactorTable, GroupElement, Shape,
};
use crate::op::{lowering, raising, Space, State, TensorOp};

#[derive(Clone, Debug)]
pub struct Generator {
    pub label: String,
    pub grade: GroupElement,
    pub op: TensorOp,
}

/// Declared value of `⟨left, right⟩` as a combination of generators.
#[derive(Clone, Debug)]
pub struct Expectation {
    pub left: usize,
    pub right: usize,
    pub result: Vec<(Cyclotomic, usize)>,
}

/// `word(left) = coeff · word(right)`; an empty right word with zero
/// coefficient states nilpotency.
#[derive(Clone, Debug)]
pub struct Relation {
    pub left: Vec<usize>,
    pub coeff: Cyclotomic,
    pub right: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub name: String,
    pub table: FactorTable,
    pub space: Space,
    pub generators: Vec<Generator>,
    pub expectations: Vec<Expectation>,
    /// Brackets with no declared expectation (or skew partner of one) vanish.
    pub rest_zero: bool,
    pub relations: Vec<Relation>,
    /// `(annihilator, creator)` index pairs of the oscillator modes.
    pub modes: Vec<(usize, usize)>,
}

impl AlgebraSpec {
    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g.label == label)
            .ok_or_else(|| Error::Unknown {
                kind: "generator",
                name: label.to_string(),
            })
    }

    pub fn eps(&self, a: &GroupElement, b: &GroupElement) -> &Cyclotomic {
        self.table.get(a, b)
    }

    fn word(&self, w: &[usize]) -> TensorOp {
        w.iter()
            .fold(TensorOp::identity(self.space.slots()), |acc, &i| {
                acc.mul(&self.generators[i].op)
            })
    }

    fn combination(&self, parts: &[(Cyclotomic, usize)]) -> TensorOp {
        parts
            .iter()
            .fold(TensorOp::zero(self.space.slots()), |acc, (c, i)| {
                acc.add_scaled(c, &self.generators[*i].op)
            })
    }

    pub fn bracket(&self, a: usize, b: usize) -> TensorOp {
        let (ga, gb) = (&self.generators[a], &self.generators[b]);
        bracket_ops(&ga.op, &ga.grade, &gb.op, &gb.grade, &self.table)
    }
}

/// `⟨A,B⟩ = AB − ε(α,β)BA` on factored operators.
pub fn bracket_ops(
    a: &TensorOp,
    alpha: &GroupElement,
    b: &TensorOp,
    beta: &GroupElement,
    t: &FactorTable,
) -> TensorOp {
    a.mul(b).sub(&b.mul(a).scale(t.get(alpha, beta)))
}

/// The graded bracket of homogeneous matrices, computed as `ab − ε ba` and
/// cross-checked against `½(1+ε)[a,b] + ½(1−ε){a,b}`.
pub fn graded_bracket(a: &GradedMatrix, b: &GradedMatrix, t: &FactorTable) -> Result<GradedMatrix> {
    let (alpha, beta) = match (&a.grade, &b.grade) {
        (Some(x), Some(y)) => (x, y),
        _ => {
            return Err(Error::Invalid(
                "graded bracket needs homogeneous operands".into(),
            ))
        }
    };
    if alpha.shape() != t.shape() || beta.shape() != t.shape() {
        return Err(Error::Invalid(format!(
            "grades {alpha}, {beta} lie outside the table's group"
        )));
    }
    let eps = t.get(alpha, beta);
    let ab = a.mat.try_mul(&b.mat)?;
    let ba = b.mat.try_mul(&a.mat)?;
    let direct = ab.try_sub(&ba.scale(eps))?;
    let half = Cyclotomic::frac(1, 2);
    let one = Cyclotomic::one();
    let comm = ab.try_sub(&ba)?;
    let anti = ab.try_add(&ba)?;
    let mixed = comm
        .scale(&(&half * &(&one + eps)))
        .try_add(&anti.scale(&(&half * &(&one - eps))))?;
    if direct != mixed {
        return Err(Error::Inconsistent("bracket forms disagree".into()));
    }
    Ok(GradedMatrix::new(direct, Some(alpha.add(beta))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketViolation {
    pub check: String,
    pub labels: Vec<String>,
}

fn violation(check: &str, alg: &AlgebraSpec, idx: &[usize]) -> BracketViolation {
    BracketViolation {
        check: check.into(),
        labels: idx
            .iter()
            .map(|&i| alg.generators[i].label.clone())
            .collect(),
    }
}

fn pair_brackets(alg: &AlgebraSpec, exec: Exec) -> Vec<TensorOp> {
    let n = alg.generators.len();
    exec.map_range(n * n, |k| alg.bracket(k / n, k % n))
}

/// `⟨A,B⟩ + ε(α,β)⟨B,A⟩ = 0` for every generator pair.
pub fn check_epsilon_skew(alg: &AlgebraSpec) -> Vec<BracketViolation> {
    check_epsilon_skew_with(alg, Exec::default())
}

pub fn check_epsilon_skew_with(alg: &AlgebraSpec, exec: Exec) -> Vec<BracketViolation> {
    let n = alg.generators.len();
    let br = pair_brackets(alg, exec);
    let bad = exec.map_range(n * n, |k| {
        let (a, b) = (k / n, k % n);
        let eps = alg.eps(&alg.generators[a].grade, &alg.generators[b].grade);
        let s = br[a * n + b].add_scaled(eps, &br[b * n + a]);
        (!s.is_zero_on(&alg.space)).then(|| violation("skew", alg, &[a, b]))
    });
    bad.into_iter().flatten().collect()
}

/// `ε(γ,α)⟨A,⟨B,C⟩⟩ + ε(α,β)⟨B,⟨C,A⟩⟩ + ε(β,γ)⟨C,⟨A,B⟩⟩ = 0` for every triple.
pub fn check_epsilon_jacobi(alg: &AlgebraSpec) -> Vec<BracketViolation> {
    check_epsilon_jacobi_with(alg, Exec::default())
}

pub fn check_epsilon_jacobi_with(alg: &AlgebraSpec, exec: Exec) -> Vec<BracketViolation> {
    let n = alg.generators.len();
    let br = pair_brackets(alg, exec);
    let g = &alg.generators;
    let t = &alg.table;
    let bad = exec.map_range(n * n * n, |k| {
        let (a, b, c) = (k / (n * n), (k / n) % n, k % n);
        let outer = |x: usize, y: usize, z: usize| {
            bracket_ops(
                &g[x].op,
                &g[x].grade,
                &br[y * n + z],
                &g[y].grade.add(&g[z].grade),
                t,
            )
        };
        let sum = outer(a, b, c)
            .scale(t.get(&g[c].grade, &g[a].grade))
            .add_scaled(t.get(&g[a].grade, &g[b].grade), &outer(b, c, a))
            .add_scaled(t.get(&g[b].grade, &g[c].grade), &outer(c, a, b));
        (!sum.is_zero_on(&alg.space)).then(|| violation("jacobi", alg, &[a, b, c]))
    });
    bad.into_iter().flatten().collect()
}

/// `⟨X,⟨Y,Z⟩⟩ = 0` for every triple; the inner bracket has grade `β+γ`.
pub fn check_metaabelian(alg: &AlgebraSpec) -> Vec<BracketViolation> {
    check_metaabelian_with(alg, Exec::default())
}

pub fn check_metaabelian_with(alg: &AlgebraSpec, exec: Exec) -> Vec<BracketViolation> {
    let n = alg.generators.len();
    let br = pair_brackets(alg, exec);
    let g = &alg.generators;
    let bad = exec.map_range(n * n * n, |k| {
        let (x, y, z) = (k / (n * n), (k / n) % n, k % n);
        let v = bracket_ops(
            &g[x].op,
            &g[x].grade,
            &br[y * n + z],
            &g[y].grade.add(&g[z].grade),
            &alg.table,
        );
        (!v.is_zero_on(&alg.space)).then(|| violation("metaabelian", alg, &[x, y, z]))
    });
    bad.into_iter().flatten().collect()
}

/// Compares every bracket with the declared structure constants.
pub fn check_expectations(alg: &AlgebraSpec) -> Vec<BracketViolation> {
    check_expectations_with(alg, Exec::default())
}

pub fn check_expectations_with(alg: &AlgebraSpec, exec: Exec) -> Vec<BracketViolation> {
    let n = alg.generators.len();
    let mut declared: HashMap<(usize, usize), Vec<(Cyclotomic, usize)>> = HashMap::new();
    for e in &alg.expectations {
        declared.insert((e.left, e.right), e.result.clone());
        // skew partner: ⟨B,A⟩ = −ε(β,α) ⟨A,B⟩
        let eps = alg.eps(
            &alg.generators[e.right].grade,
            &alg.generators[e.left].grade,
        );
        let minus = -eps;
        declared
            .entry((e.right, e.left))
            .or_insert_with(|| e.result.iter().map(|(c, i)| (c * &minus, *i)).collect());
    }
    let bad = exec.map_range(n * n, |k| {
        let (a, b) = (k / n, k % n);
        let expected = match declared.get(&(a, b)) {
            Some(parts) => alg.combination(parts),
            None if alg.rest_zero => TensorOp::zero(alg.space.slots()),
            None => return None,
        };
        let diff = alg.bracket(a, b).sub(&expected);
        (!diff.is_zero_on(&alg.space)).then(|| violation("expectation", alg, &[a, b]))
    });
    bad.into_iter().flatten().collect()
}

/// Checks the declared product relations.
pub fn check_relations(alg: &AlgebraSpec) -> Vec<BracketViolation> {
    alg.relations
        .iter()
        .filter(|r| {
            let lhs = alg.word(&r.left);
            let rhs = if r.right.is_empty() {
                TensorOp::zero(alg.space.slots())
            } else {
                alg.word(&r.right)
            };
            !lhs.sub(&rhs.scale(&r.coeff)).is_zero_on(&alg.space)
        })
        .map(|r| {
            let mut idx = r.left.clone();
            idx.extend(&r.right);
            violation("relation", alg, &idx)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalReport {
    pub minimal: bool,
    pub occupied: usize,
    pub sectors: usize,
    pub counts: BTreeMap<String, usize>,
    pub empty: Vec<String>,
}

/// Per-sector generator counts. Minimal means every sector holds exactly one
/// generator; `empty` lists the unoccupied sectors.
pub fn check_minimal(alg: &AlgebraSpec) -> MinimalReport {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut per_index = vec![0usize; alg.table.order()];
    for g in &alg.generators {
        per_index[g.grade.index()] += 1;
        *counts.entry(g.grade.label()).or_default() += 1;
    }
    let empty: Vec<String> = alg
        .table
        .shape()
        .elements()
        .into_iter()
        .filter(|e| per_index[e.index()] == 0)
        .map(|e| e.label())
        .collect();
    MinimalReport {
        minimal: per_index.iter().all(|&c| c == 1),
        occupied: per_index.iter().filter(|&&c| c > 0).count(),
        sectors: per_index.len(),
        counts,
        empty,
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AlgebraReport {
    pub name: String,
    pub skew: Vec<BracketViolation>,
    pub jacobi: Vec<BracketViolation>,
    pub metaabelian: Vec<BracketViolation>,
    pub expectations: Vec<BracketViolation>,
    pub relations: Vec<BracketViolation>,
    pub minimal: Option<MinimalReport>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.skew.is_empty()
            && self.jacobi.is_empty()
            && self.metaabelian.is_empty()
            && self.expectations.is_empty()
            && self.relations.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Skew,
    Jacobi,
    Metaabelian,
    Expectations,
    Relations,
    Minimal,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Skew,
        Check::Jacobi,
        Check::Metaabelian,
        Check::Expectations,
        Check::Relations,
        Check::Minimal,
    ];

    pub fn parse(s: &str) -> Result<Vec<Check>> {
        Ok(match s {
            "all" => Self::ALL.to_vec(),
            "skew" => vec![Check::Skew],
            "jacobi" => vec![Check::Jacobi],
            "metaabelian" => vec![Check::Metaabelian],
            "expectations" | "brackets" => vec![Check::Expectations],
            "relations" => vec![Check::Relations],
            "minimal" => vec![Check::Minimal],
            _ => {
                return Err(Error::Unknown {
                    kind: "check",
                    name: s.into(),
                })
            }
        })
    }
}

pub fn run_checks(alg: &AlgebraSpec, checks: &[Check], exec: Exec) -> AlgebraReport {
    let mut r = AlgebraReport {
        name: alg.name.clone(),
        ..Default::default()
    };
    for c in checks {
        match c {
            Check::Skew => r.skew = check_epsilon_skew_with(alg, exec),
            Check::Jacobi => r.jacobi = check_epsilon_jacobi_with(alg, exec),
            Check::Metaabelian => r.metaabelian = check_metaabelian_with(alg, exec),
            Check::Expectations => r.expectations = check_expectations_with(alg, exec),
            Check::Relations => r.relations = check_relations(alg),
            Check::Minimal => r.minimal = Some(check_minimal(alg)),
        }
    }
    r
}

/// Instances accepted by [`build_algebra`].
pub const ALGEBRA_NAMES: &[&str] = &["hpb4", "hfer3", "hpf44", "hpf_s6", "hpf_star3", "hpf_s3"];

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub n_max: usize,
    pub j: Cyclotomic,
    /// Build `A₄` from `a₁` exactly as printed instead of from `a₄`.
    pub a4_from_a1: bool,
    pub c02: C02Form,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            n_max: 6,
            j: Cyclotomic::j1(),
            a4_from_a1: false,
            c02: C02Form::Adjoint,
        }
    }
}

pub fn build_algebra(name: &str, n_max: usize) -> Result<AlgebraSpec> {
    build_algebra_with(
        name,
        &BuildOptions {
            n_max,
            ..Default::default()
        },
    )
}

pub fn build_algebra_with(name: &str, opts: &BuildOptions) -> Result<AlgebraSpec> {
    let key = name
        .to_ascii_lowercase()
        .replace(['-', '(', ')', '|', ';'], "_");
    let key = key
        .trim_matches('_')
        .trim_start_matches("h_")
        .trim_start_matches('h');
    match key {
        "pb4" | "pb_4" | "pb" => hpb4(opts),
        "fer3" | "fer_3" => Ok(hfer3()),
        "pf44" | "pf_4_4" | "pf4_4" => hpf44(opts),
        "pf_s6" | "pf_s6_3" | "pfs6" => hpf_s(6, opts),
        "pf_star3" | "pf_star" | "pfstar3" => Ok(hpf_star3()),
        "pf_s3" | "pf_s3_3" | "pfs3" => hpf_s(3, opts),
        _ => Err(Error::Unknown {
            kind: "algebra",
            name: name.into(),
        }),
    }
}

/// `C_ij` indices of the annihilator and creator for oscillator mode `I`.
const MODE_C: [[(u8, u8); 2]; 4] = [
    [(2, 0), (1, 0)],
    [(2, 2), (1, 1)],
    [(2, 1), (1, 2)],
    [(0, 2), (0, 1)],
];

struct Builder {
    space: Space,
    gens: Vec<Generator>,
}

impl Builder {
    fn push(&mut self, label: &str, grade: GroupElement, parts: &[(usize, &Mat)]) -> Result<usize> {
        let op = TensorOp::pure(&self.space, Cyclotomic::one(), parts)?;
        self.gens.push(Generator {
            label: label.into(),
            grade,
            op,
        });
        Ok(self.gens.len() - 1)
    }
}

fn mat(name: &str) -> Mat {
    building_block_with(name, &Cyclotomic::j1())
        .expect("known block")
        .mat
}

fn trits(i: u8, j: u8) -> GroupElement {
    GroupElement::new(&[], &[i, j])
}

// Jordan-Wigner factors of mode k among `sites` fermionic slots starting at `first`.
fn jw(first: usize, k: usize, m: &Mat) -> Vec<(usize, Mat)> {
    let x = mat("X");
    let mut v: Vec<(usize, Mat)> = (0..k).map(|s| (first + s, x.clone())).collect();
    v.push((first + k, m.clone()));
    v
}

fn refs(v: &[(usize, Mat)]) -> Vec<(usize, &Mat)> {
    v.iter().map(|(s, m)| (*s, m)).collect()
}

// Structure constants ⟨ann_I, cre_J⟩ = δ_IJ · central.
fn heisenberg_expectations(modes: &[(usize, usize)], central: usize) -> Vec<Expectation> {
    let mut out = Vec::new();
    for (i, &(ann, _)) in modes.iter().enumerate() {
        for (k, &(_, cre)) in modes.iter().enumerate() {
            let result = if i == k {
                vec![(Cyclotomic::one(), central)]
            } else {
                Vec::new()
            };
            out.push(Expectation {
                left: ann,
                right: cre,
                result,
            });
        }
    }
    out
}

fn hpb4(opts: &BuildOptions) -> Result<AlgebraSpec> {
    if opts.n_max < 2 {
        return Err(Error::Invalid("bosonic instances need n_max >= 2".into()));
    }
    let j = &opts.j;
    let mut b = Builder {
        space: Space::with_oscillators(&[9], 4, opts.n_max),
        gens: Vec::new(),
    };
    let (a, ad) = (lowering(opts.n_max), raising(opts.n_max));
    let c00 = c_matrix_variant(0, 0, j, opts.c02)?.mat;
    let central = b.push("C", trits(0, 0), &[(0, &c00)])?;
    let mut modes = Vec::new();
    for (i, pair) in MODE_C.iter().enumerate() {
        let (ca, cc) = (
            c_matrix_variant(pair[0].0, pair[0].1, j, opts.c02)?,
            c_matrix_variant(pair[1].0, pair[1].1, j, opts.c02)?,
        );
        let ann_slot = if i == 3 && opts.a4_from_a1 { 1 } else { 1 + i };
        let ann = b.push(
            &format!("A{}", i + 1),
            ca.grade.clone().unwrap(),
            &[(0, &ca.mat), (ann_slot, &a)],
        )?;
        let cre = b.push(
            &format!("A{}†", i + 1),
            cc.grade.clone().unwrap(),
            &[(0, &cc.mat), (1 + i, &ad)],
        )?;
        modes.push((ann, cre));
    }
    Ok(AlgebraSpec {
        name: "hpb4".into(),
        table: canonical_z3z3(j)?,
        space: b.space,
        generators: b.gens,
        expectations: heisenberg_expectations(&modes, central),
        rest_zero: true,
        relations: Vec::new(),
        modes,
    })
}

fn hfer3() -> AlgebraSpec {
    let mut b = Builder {
        space: Space::finite(&[2, 2, 2]),
        gens: Vec::new(),
    };
    let bit = |x: u8| GroupElement::new(&[x], &[]);
    let central = b.push("c", bit(0), &[]).unwrap();
    let mut modes = Vec::new();
    for k in 0..3 {
        let ann = b
            .push(
                &format!("f{}", k + 1),
                bit(1),
                &refs(&jw(0, k, &mat("beta"))),
            )
            .unwrap();
        let cre = b
            .push(
                &format!("f{}†", k + 1),
                bit(1),
                &refs(&jw(0, k, &mat("gamma"))),
            )
            .unwrap();
        modes.push((ann, cre));
    }
    let relations = modes
        .iter()
        .map(|&(_, cre)| Relation {
            left: vec![cre, cre],
            coeff: Cyclotomic::zero(),
            right: vec![],
        })
        .collect();
    AlgebraSpec {
        name: "hfer3".into(),
        table: z2_dot_table(1),
        space: b.space,
        generators: b.gens,
        expectations: heisenberg_expectations(&modes, central),
        rest_zero: true,
        relations,
        modes,
    }
}

fn hpf44(opts: &BuildOptions) -> Result<AlgebraSpec> {
    if opts.n_max < 2 {
        return Err(Error::Invalid("bosonic instances need n_max >= 2".into()));
    }
    let j = &opts.j;
    // slots: 0 the Y factor, 1 the C_ij factor, 2..=5 fermions, 6..=9 oscillators
    let mut b = Builder {
        space: Space::with_oscillators(&[2, 9, 2, 2, 2, 2], 4, opts.n_max),
        gens: Vec::new(),
    };
    let (a, ad) = (lowering(opts.n_max), raising(opts.n_max));
    let (y, beta, gamma) = (mat("Y"), mat("beta"), mat("gamma"));
    let grade =
        |bit: u8, c: &GradedMatrix| GroupElement::new(&[bit], &c.grade.as_ref().unwrap().trits);
    let c00 = c_matrix_variant(0, 0, j, opts.c02)?;
    let central = b.push("C", grade(0, &c00), &[(1, &c00.mat)])?;
    let mut modes = Vec::new();
    for (i, pair) in MODE_C.iter().enumerate() {
        let (ca, cc) = (
            c_matrix_variant(pair[0].0, pair[0].1, j, opts.c02)?,
            c_matrix_variant(pair[1].0, pair[1].1, j, opts.c02)?,
        );
        let ann_slot = if i == 3 && opts.a4_from_a1 { 6 } else { 6 + i };
        let ann = b.push(
            &format!("A{}", i + 1),
            grade(0, &ca),
            &[(1, &ca.mat), (ann_slot, &a)],
        )?;
        let cre = b.push(
            &format!("A{}†", i + 1),
            grade(0, &cc),
            &[(1, &cc.mat), (6 + i, &ad)],
        )?;
        modes.push((ann, cre));
    }
    for (i, pair) in MODE_C.iter().enumerate() {
        let (ca, cc) = (
            c_matrix_variant(pair[0].0, pair[0].1, j, opts.c02)?,
            c_matrix_variant(pair[1].0, pair[1].1, j, opts.c02)?,
        );
        let mut pa = jw(2, i, &beta);
        pa.extend([(0, y.clone()), (1, ca.mat.clone())]);
        let mut pc = jw(2, i, &gamma);
        pc.extend([(0, y.clone()), (1, cc.mat.clone())]);
        let ann = b.push(&format!("F{}", i + 1), grade(1, &ca), &refs(&pa))?;
        let cre = b.push(&format!("F{}†", i + 1), grade(1, &cc), &refs(&pc))?;
        modes.push((ann, cre));
    }
    let relations = modes[4..]
        .iter()
        .map(|&(_, cre)| Relation {
            left: vec![cre, cre],
            coeff: Cyclotomic::zero(),
            right: vec![],
        })
        .collect();
    Ok(AlgebraSpec {
        name: "hpf44".into(),
        table: canonical_z2z3z3(j, &Cyclotomic::from_int(-1))?,
        space: b.space,
        generators: b.gens,
        expectations: heisenberg_expectations(&modes, central),
        rest_zero: true,
        relations,
        modes,
    })
}

fn hpf_star3() -> AlgebraSpec {
    let mut b = Builder {
        space: Space::finite(&[2, 2, 2]),
        gens: Vec::new(),
    };
    let unit = |k: usize| {
        let mut bits = [0u8; 3];
        bits[k] = 1;
        GroupElement::new(&bits, &[])
    };
    let central = b
        .push("c", GroupElement::identity(Shape::new(3, 0)), &[])
        .unwrap();
    let mut modes = Vec::new();
    for k in 0..3 {
        let ann = b
            .push(&format!("p{}", k + 1), unit(k), &[(k, &mat("beta"))])
            .unwrap();
        let cre = b
            .push(&format!("p{}†", k + 1), unit(k), &[(k, &mat("gamma"))])
            .unwrap();
        modes.push((ann, cre));
    }
    let relations = modes
        .iter()
        .map(|&(_, cre)| Relation {
            left: vec![cre, cre],
            coeff: Cyclotomic::zero(),
            right: vec![],
        })
        .collect();
    AlgebraSpec {
        name: "hpf_star3".into(),
        table: z2_dot_table(3),
        space: b.space,
        generators: b.gens,
        expectations: heisenberg_expectations(&modes, central),
        rest_zero: true,
        relations,
        modes,
    }
}

// The 72-dim models: three fermion-like sites tensored with C_ij, modes 1, 2 and 4
// of the C_ij pattern. s = 6 uses Jordan-Wigner fermions, s = 3 independent sites.
fn hpf_s(s: u32, opts: &BuildOptions) -> Result<AlgebraSpec> {
    let j = &opts.j;
    let pattern = [MODE_C[0], MODE_C[1], MODE_C[3]];
    let mut b = Builder {
        space: Space::finite(&[2, 2, 2, 9]),
        gens: Vec::new(),
    };
    let c00 = c_matrix_variant(0, 0, j, opts.c02)?;
    let (beta, gamma) = (mat("beta"), mat("gamma"));
    let grade = |k: usize, c: &GradedMatrix| {
        let trits = &c.grade.as_ref().unwrap().trits;
        if s == 6 {
            GroupElement::new(&[1], trits)
        } else {
            let mut bits = [0u8; 3];
            bits[k] = 1;
            GroupElement::new(&bits, trits)
        }
    };
    let zero_bits: &[u8] = if s == 6 { &[0] } else { &[0, 0, 0] };
    let central = b.push("C", GroupElement::new(zero_bits, &[0, 0]), &[(3, &c00.mat)])?;
    let mut modes = Vec::new();
    let sym = if s == 6 { "F" } else { "P" };
    for (k, pair) in pattern.iter().enumerate() {
        let (ca, cc) = (
            c_matrix_variant(pair[0].0, pair[0].1, j, opts.c02)?,
            c_matrix_variant(pair[1].0, pair[1].1, j, opts.c02)?,
        );
        let (mut pa, mut pc) = if s == 6 {
            (jw(0, k, &beta), jw(0, k, &gamma))
        } else {
            (vec![(k, beta.clone())], vec![(k, gamma.clone())])
        };
        pa.push((3, ca.mat.clone()));
        pc.push((3, cc.mat.clone()));
        let ann = b.push(&format!("{sym}{}", k + 1), grade(k, &ca), &refs(&pa))?;
        let cre = b.push(&format!("{sym}{}†", k + 1), grade(k, &cc), &refs(&pc))?;
        modes.push((ann, cre));
    }
    let (table, q) = if s == 6 {
        (canonical_z2z3z3(j, &Cyclotomic::from_int(-1))?, -j)
    } else {
        (z2_dot_table(3).product(&canonical_z3z3(j)?), j.clone())
    };
    let cre: Vec<usize> = modes.iter().map(|m| m.1).collect();
    let mut relations: Vec<Relation> = cre
        .iter()
        .map(|&c| Relation {
            left: vec![c, c],
            coeff: Cyclotomic::zero(),
            right: vec![],
        })
        .collect();
    relations.push(Relation {
        left: vec![cre[0], cre[1]],
        coeff: q.clone(),
        right: vec![cre[1], cre[0]],
    });
    relations.push(Relation {
        left: vec![cre[1], cre[2]],
        coeff: q.clone(),
        right: vec![cre[2], cre[1]],
    });
    // ordered 1 before 3 for both levels; the reverse order carries q⁻¹
    relations.push(Relation {
        left: vec![cre[0], cre[2]],
        coeff: q,
        right: vec![cre[2], cre[0]],
    });
    Ok(AlgebraSpec {
        name: format!("hpf_s{s}"),
        table,
        space: b.space,
        generators: b.gens,
        expectations: heisenberg_expectations(&modes, central),
        rest_zero: true,
        relations,
        modes,
    })
}

/// One fermionic oscillator `f, f†, 1` with plain commutators: the metaabelian
/// condition fails here.
pub fn contrast_single_fermion() -> AlgebraSpec {
    let mut b = Builder {
        space: Space::finite(&[2]),
        gens: Vec::new(),
    };
    let e = GroupElement::identity(Shape::new(0, 0));
    b.push("1", e.clone(), &[]).unwrap();
    let ann = b.push("f", e.clone(), &[(0, &mat("beta"))]).unwrap();
    let cre = b.push("f†", e, &[(0, &mat("gamma"))]).unwrap();
    AlgebraSpec {
        name: "single_fermion_commutators".into(),
        table: FactorTable::trivial(),
        space: b.space,
        generators: b.gens,
        expectations: Vec::new(),
        rest_zero: false,
        relations: Vec::new(),
        modes: vec![(ann, cre)],
    }
}

/// Vacuum: the lowest basis vector in every slot.
pub fn vacuum(alg: &AlgebraSpec) -> State {
    HashMap::from([(vec![0u16; alg.space.slots()], Cyclotomic::one())])
}

/// `H = Σ_I A_I† A_I` over the algebra's modes.
pub fn number_operator(alg: &AlgebraSpec) -> TensorOp {
    alg.modes
        .iter()
        .fold(TensorOp::zero(alg.space.slots()), |acc, &(ann, cre)| {
            acc.add(&alg.generators[cre].op.mul(&alg.generators[ann].op))
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Level {
    pub energy: usize,
    pub degeneracy: usize,
}

/// Levels of the span of all creation monomials on the vacuum, by number of
/// quanta, up to `max_level`. Each basis vector is checked to be an exact
/// eigenvector of the number operator.
pub fn creation_spectrum(alg: &AlgebraSpec, max_level: usize) -> Result<Vec<Level>> {
    let h = number_operator(alg);
    let mut layer = vec![vacuum(alg)];
    let mut out = Vec::new();
    for e in 0..=max_level {
        if layer.is_empty() {
            break;
        }
        for v in &layer {
            if !states_equal(
                &h.apply(v),
                &scale_state(v, &Cyclotomic::from_int(e as i64)),
            ) {
                return Err(Error::Inconsistent(format!(
                    "state at level {e} is not an eigenvector"
                )));
            }
        }
        out.push(Level {
            energy: e,
            degeneracy: layer.len(),
        });
        let next: Vec<State> = layer
            .iter()
            .flat_map(|v| {
                alg.modes
                    .iter()
                    .map(|&(_, c)| alg.generators[c].op.apply(v))
            })
            .collect();
        layer = independent(next);
    }
    Ok(out)
}

/// Number of nonzero vectors `(Σ_I A_I†)^n |0⟩`, `n = 0, 1, …` up to `max_level`;
/// each is an exact eigenvector with energy `n`.
pub fn tower_levels(alg: &AlgebraSpec, max_level: usize) -> Result<Vec<Level>> {
    let h = number_operator(alg);
    let g = alg
        .modes
        .iter()
        .fold(TensorOp::zero(alg.space.slots()), |acc, &(_, c)| {
            acc.add(&alg.generators[c].op)
        });
    let mut v = vacuum(alg);
    let mut out = Vec::new();
    for e in 0..=max_level {
        if v.is_empty() {
            break;
        }
        if !states_equal(
            &h.apply(&v),
            &scale_state(&v, &Cyclotomic::from_int(e as i64)),
        ) {
            return Err(Error::Inconsistent(format!(
                "tower state {e} is not an eigenvector"
            )));
        }
        out.push(Level {
            energy: e,
            degeneracy: 1,
        });
        v = g.apply(&v);
    }
    Ok(out)
}

pub fn scale_state(v: &State, s: &Cyclotomic) -> State {
    v.iter()
        .filter(|_| !s.is_zero())
        .map(|(k, x)| (k.clone(), x * s))
        .collect()
}

pub fn states_equal(a: &State, b: &State) -> bool {
    a.len() == b.len() && a.iter().all(|(k, v)| b.get(k) == Some(v))
}

// Reduced echelon basis of the span.
fn independent(vs: Vec<State>) -> Vec<State> {
    let mut basis: Vec<(Vec<u16>, State)> = Vec::new();
    for mut v in vs {
        for (pivot, b) in &basis {
            if let Some(c) = v.get(pivot).cloned() {
                for (k, x) in b {
                    *v.entry(k.clone()).or_default() += &(-(&c * x));
                }
                v.retain(|_, x| !x.is_zero());
            }
        }
        if let Some(pivot) = v.keys().min().cloned() {
            let inv = v[&pivot].inv().expect("nonzero pivot");
            let v = scale_state(&v, &inv);
            for (_, b) in basis.iter_mut() {
                if let Some(c) = b.get(&pivot).cloned() {
                    for (k, x) in &v {
                        *b.entry(k.clone()).or_default() += &(-(&c * x));
                    }
                    b.retain(|_, x| !x.is_zero());
                }
            }
            basis.push((pivot, v));
        }
    }
    basis.into_iter().map(|(_, v)| v).collect()
}
