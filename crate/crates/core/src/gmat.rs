//! Dense cyclotomic matrices, the graded 3x3 and 2x2 building blocks, and the
//! graded-abelian 9x9 family `C_ij`.
//!
//! Grades are stored labels. For 3x3 blocks the label agrees with the block
//! pattern (basis vectors carry trits `0, 2, 1`); for tensor products it is the
//! concatenation of the labels.
//!
//! `C_02` is taken as `N0'' ⊗ N2 = C_01†`, the choice for which `C_02 C_01 = I`
//! and which fits the `02` pattern. The form `N0'' ⊗ N0` is available through
//! [`c_matrix_variant`] with [`C02Form::NZero`].

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::grading::{GroupElement, Shape};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Cyclotomic::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Cyclotomic::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Cyclotomic::from_int(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn diag(d: &[Cyclotomic]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Cyclotomic {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Cyclotomic) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row_vecs(&self) -> Vec<Vec<Cyclotomic>> {
        self.data
            .chunks(self.cols.max(1))
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.get(r, c).is_one()
                    } else {
                        self.get(r, c).is_zero()
                    }
                })
            })
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, other: &Mat, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic) -> Result<Mat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn try_add(&self, other: &Mat) -> Result<Mat> {
        self.zip(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Mat) -> Result<Mat> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Cyclotomic) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn kron(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other.get(r2, c2);
                        if !b.is_zero() {
                            out.set(r1 * other.rows + r2, c1 * other.cols + c2, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut out = Mat::identity(self.rows);
        for _ in 0..e {
            out = out.try_mul(self)?;
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Cyclotomic::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect())
    }

    /// Position and value of the first nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, &Cyclotomic)> {
        self.data.iter().enumerate().find(|(_, x)| !x.is_zero())
    }

    /// `Some(λ)` when `self = λ·other` (with `other` nonzero).
    pub fn ratio_to(&self, other: &Mat) -> Option<Cyclotomic> {
        let (idx, b) = other.first_nonzero()?;
        let lambda = &self.data[idx] / b;
        (*self == other.scale(&lambda)).then_some(lambda)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.row_vecs().serialize(s)
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    pub mat: Mat,
    pub grade: Option<GroupElement>,
}

impl GradedMatrix {
    pub fn new(mat: Mat, grade: Option<GroupElement>) -> Self {
        GradedMatrix { mat, grade }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    /// Product; grade is the sum when both are known.
    pub fn try_mul(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        let mat = self.mat.try_mul(&other.mat)?;
        let grade = match (&self.grade, &other.grade) {
            (Some(a), Some(b)) if a.shape() == b.shape() => Some(a.add(b)),
            _ => None,
        };
        Ok(GradedMatrix { mat, grade })
    }

    /// Sum; grade survives only when both agree.
    pub fn try_add(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        let mat = self.mat.try_add(&other.mat)?;
        let grade = if self.grade == other.grade {
            self.grade.clone()
        } else {
            None
        };
        Ok(GradedMatrix { mat, grade })
    }

    pub fn try_sub(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        let mat = self.mat.try_sub(&other.mat)?;
        let grade = if self.grade == other.grade {
            self.grade.clone()
        } else {
            None
        };
        Ok(GradedMatrix { mat, grade })
    }

    pub fn scale(&self, s: &Cyclotomic) -> GradedMatrix {
        GradedMatrix {
            mat: self.mat.scale(s),
            grade: self.grade.clone(),
        }
    }

    pub fn dagger(&self) -> GradedMatrix {
        GradedMatrix {
            mat: self.mat.dagger(),
            grade: self.grade.as_ref().map(|g| g.neg()),
        }
    }

    pub fn pow(&self, e: u32) -> Result<GradedMatrix> {
        Ok(GradedMatrix {
            mat: self.mat.pow(e)?,
            grade: self.grade.as_ref().map(|g| g.scale(e)),
        })
    }

    /// Kronecker product, grades concatenated (bits, then trits).
    pub fn tensor(&self, other: &GradedMatrix) -> GradedMatrix {
        let grade = match (&self.grade, &other.grade) {
            (Some(a), Some(b)) => Some(a.concat(b)),
            _ => None,
        };
        GradedMatrix {
            mat: self.mat.kron(&other.mat),
            grade,
        }
    }
}

impl Serialize for GradedMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GradedMatrix", 3)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("grade", &self.grade.as_ref().map(|g| g.label()))?;
        st.serialize_field("entries", &self.mat)?;
        st.end()
    }
}

/// Names accepted by [`building_block`].
pub const BLOCK_NAMES: &[&str] = &[
    "N0", "N0p", "N0pp", "N1", "N2", "Q+1", "Q+2", "Q+3", "Q-1", "Q-2", "Q-3", "I2", "Y", "X",
    "beta", "gamma",
];

fn trit(t: u8) -> Option<GroupElement> {
    Some(GroupElement::new(&[], &[t]))
}

fn bit(b: u8) -> Option<GroupElement> {
    Some(GroupElement::new(&[b], &[]))
}

/// A named building block with `j = j₁`.
pub fn building_block(name: &str) -> Result<GradedMatrix> {
    building_block_with(name, &Cyclotomic::j1())
}

/// A named building block for a chosen cube root of unity `j`.
pub fn building_block_with(name: &str, j: &Cyclotomic) -> Result<GradedMatrix> {
    let o = Cyclotomic::zero;
    let l = Cyclotomic::one;
    let j1 = || j.clone();
    let j2 = || j.pow(2);
    let m3 = |rows: [[Cyclotomic; 3]; 3]| {
        Mat::from_rows(rows.into_iter().map(|r| r.to_vec()).collect()).unwrap()
    };
    let name = name.replace('−', "-");
    let (mat, grade) = match name.as_str() {
        "N0" => (Mat::identity(3), trit(0)),
        "N0p" | "N0'" => (Mat::diag(&[l(), j1(), j2()]), trit(0)),
        "N0pp" | "N0''" => (Mat::diag(&[l(), j2(), j1()]), trit(0)),
        "N1" => (
            m3([[o(), l(), o()], [o(), o(), l()], [l(), o(), o()]]),
            trit(1),
        ),
        "N2" => (
            m3([[o(), o(), l()], [l(), o(), o()], [o(), l(), o()]]),
            trit(2),
        ),
        "Q+1" => (
            m3([[o(), l(), o()], [o(), o(), j1()], [j2(), o(), o()]]),
            trit(1),
        ),
        "Q+2" => (
            m3([[o(), j1(), o()], [o(), o(), l()], [j2(), o(), o()]]),
            trit(1),
        ),
        "Q+3" => (
            m3([[o(), l(), o()], [o(), o(), l()], [l(), o(), o()]]),
            trit(1),
        ),
        "Q-1" => (
            m3([[o(), o(), j1()], [l(), o(), o()], [o(), j2(), o()]]),
            trit(2),
        ),
        "Q-2" => (
            m3([[o(), o(), j1()], [j2(), o(), o()], [o(), l(), o()]]),
            trit(2),
        ),
        "Q-3" => (
            m3([[o(), o(), l()], [l(), o(), o()], [o(), l(), o()]]),
            trit(2),
        ),
        "I2" | "I" => (Mat::identity(2), bit(0)),
        "Y" => (Mat::from_ints(&[&[0, 1], &[1, 0]]), bit(1)),
        "X" => (Mat::from_ints(&[&[1, 0], &[0, -1]]), bit(0)),
        "beta" => (Mat::from_ints(&[&[0, 1], &[0, 0]]), bit(1)),
        "gamma" => (Mat::from_ints(&[&[0, 0], &[1, 0]]), bit(1)),
        _ => {
            return Err(Error::Unknown {
                kind: "building block",
                name,
            })
        }
    };
    Ok(GradedMatrix { mat, grade })
}

const C_FACTORS: [[(&str, &str); 3]; 3] = [
    [("N0", "N0"), ("N0p", "N1"), ("N0pp", "N0")],
    [("Q+1", "N0"), ("Q+2", "N1"), ("Q+3", "N2")],
    [("Q-1", "N0"), ("Q-3", "N1"), ("Q-2", "N2")],
];

/// Second factor of `C_02`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum C02Form {
    /// `N0'' ⊗ N2`, the adjoint of `C_01`.
    #[default]
    Adjoint,
    /// `N0'' ⊗ N0`.
    NZero,
}

/// The 9x9 matrix `C_ij` with its grade `ij`.
pub fn c_matrix(i: u8, jj: u8) -> Result<GradedMatrix> {
    c_matrix_with(i, jj, &Cyclotomic::j1())
}

pub fn c_matrix_with(i: u8, jj: u8, j: &Cyclotomic) -> Result<GradedMatrix> {
    c_matrix_variant(i, jj, j, C02Form::Adjoint)
}

pub fn c_matrix_variant(i: u8, jj: u8, j: &Cyclotomic, form: C02Form) -> Result<GradedMatrix> {
    if i > 2 || jj > 2 {
        return Err(Error::Invalid(format!("C_{i}{jj}: indices must be trits")));
    }
    let (a, mut b) = C_FACTORS[i as usize][jj as usize];
    if (i, jj) == (0, 2) && form == C02Form::Adjoint {
        b = "N2";
    }
    let m = building_block_with(a, j)?.tensor(&building_block_with(b, j)?);
    Ok(GradedMatrix {
        mat: m.mat,
        grade: Some(GroupElement::new(&[], &[i, jj])),
    })
}

/// Parses `C_ij`, `Cij`, or a building-block name.
pub fn named_matrix(name: &str, j: &Cyclotomic) -> Result<GradedMatrix> {
    let digits = name.strip_prefix("C_").or_else(|| name.strip_prefix('C'));
    if let Some(d) = digits {
        let d: Vec<u8> = d
            .bytes()
            .filter(|b| b.is_ascii_digit())
            .map(|b| b - b'0')
            .collect();
        if d.len() == 2 {
            return c_matrix_with(d[0], d[1], j);
        }
    }
    building_block_with(name, j)
}

/// Trit carried by each basis vector of a 3-dim Z3-graded space.
pub const BASIS_TRITS: [u8; 3] = [0, 2, 1];

/// The grade read off the block pattern of a matrix acting on a tensor power
/// of 3-dim Z3-graded spaces, when the pattern is consistent with one grade.
pub fn pattern_grade(m: &Mat, factors: usize) -> Option<GroupElement> {
    let basis: Vec<Vec<u8>> = (0..m.rows())
        .map(|mut idx| {
            let mut t = vec![0u8; factors];
            for k in (0..factors).rev() {
                t[k] = BASIS_TRITS[idx % 3];
                idx /= 3;
            }
            t
        })
        .collect();
    let mut found: Option<Vec<u8>> = None;
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if m.get(r, c).is_zero() {
                continue;
            }
            let g: Vec<u8> = (0..factors)
                .map(|k| (basis[r][k] + 3 - basis[c][k]) % 3)
                .collect();
            match &found {
                None => found = Some(g),
                Some(f) if *f != g => return None,
                _ => {}
            }
        }
    }
    found.map(|t| GroupElement::new(&[], &t))
}

/// The graded shape of the `C_ij` family.
pub fn c_shape() -> Shape {
    Shape::new(0, 2)
}
