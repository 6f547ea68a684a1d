//! Dense matrices over `F_q` and `F_{q^m}`.
//!
//! A [`Matrix`] carries the field its entries live in. Matrices over the prime
//! field `F_q` are ordinary matrices whose field is [`ExtField::base`]; they mix
//! freely with matrices over the extension in products and sums since both use
//! the same codes for subfield elements.
//!
//! Row reduction scans columns left to right and takes the topmost usable row
//! as pivot, so the reduced form and the tracked transform are reproducible.

use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::finite_field::{ExtField, FieldEl};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: ExtField,
    rows: usize,
    cols: usize,
    data: Vec<FieldEl>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(field: &ExtField, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![FieldEl::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &ExtField, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = FieldEl::ONE;
        }
        m
    }

    pub fn from_elements(
        field: &ExtField,
        rows: usize,
        cols: usize,
        data: Vec<FieldEl>,
    ) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Format(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for e in &data {
            field.element(e.0)?;
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from rows of integer codes.
    pub fn from_codes<R: AsRef<[u32]>>(field: &ExtField, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Format("ragged rows".into()));
            }
            data.extend(r.iter().map(|&c| FieldEl(c)));
        }
        Matrix::from_elements(field, rows.len(), cols, data)
    }

    pub fn from_fn(
        field: &ExtField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldEl,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// A single-row matrix.
    pub fn row_vector(field: &ExtField, v: &[FieldEl]) -> Self {
        Matrix {
            field: field.clone(),
            rows: 1,
            cols: v.len(),
            data: v.to_vec(),
        }
    }

    #[inline]
    pub fn field(&self) -> &ExtField {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldEl {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldEl) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldEl] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn elements(&self) -> &[FieldEl] {
        &self.data
    }

    pub fn codes(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.0).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// True when every entry lies in the prime subfield.
    pub fn is_over_base(&self) -> bool {
        self.data.iter().all(|&e| self.field.is_base_element(e))
    }

    /// Reinterprets the entries as elements of `F_q`.
    pub fn to_base(&self) -> Result<Matrix> {
        if let Some(e) = self.data.iter().find(|&&e| !self.field.is_base_element(e)) {
            return Err(Error::NotSubfield(e.0));
        }
        Ok(Matrix {
            field: self.field.base(),
            ..self.clone()
        })
    }

    /// Embeds the entries into `field`, which must contain this matrix's field.
    pub fn lift(&self, field: &ExtField) -> Result<Matrix> {
        if !field.contains_field(&self.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix {
            field: field.clone(),
            ..self.clone()
        })
    }

    fn common_field(&self, other: &Matrix) -> Result<ExtField> {
        if self.field.contains_field(&other.field) {
            Ok(self.field.clone())
        } else if other.field.contains_field(&self.field) {
            Ok(other.field.clone())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let f = self.common_field(other)?;
        let mut out = Matrix::zeros(&f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(l);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = f.add(*d, f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        other: &Matrix,
        op: &'static str,
        g: impl Fn(&ExtField, FieldEl, FieldEl) -> FieldEl,
    ) -> Result<Matrix> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        let f = self.common_field(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| g(&f, a, b))
            .collect();
        Ok(Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, "add", |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, "sub", |f, a, b| f.sub(a, b))
    }

    pub fn scale(&self, c: FieldEl) -> Matrix {
        let f = &self.field;
        Matrix {
            data: self.data.iter().map(|&a| f.mul(c, a)).collect(),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let f = self.common_field(other)?;
        let c = self.cols;
        Ok(Matrix::from_fn(&f, self.rows, c + other.cols, |i, j| {
            if j < c {
                self.get(i, j)
            } else {
                other.get(i, j - c)
            }
        }))
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "vstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let f = self.common_field(other)?;
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: f,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// The block `rows × cols` (half-open ranges, zero-based).
    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Result<Matrix> {
        if rows.start > rows.end
            || cols.start > cols.end
            || rows.end > self.rows
            || cols.end > self.cols
        {
            return Err(Error::DimensionMismatch {
                op: "submatrix",
                left: self.shape(),
                right: (rows.end, cols.end),
            });
        }
        Ok(Matrix::from_fn(
            &self.field,
            rows.len(),
            cols.len(),
            |i, j| self.get(rows.start + i, cols.start + j),
        ))
    }

    /// Entrywise Frobenius power `M^{[i]}`.
    pub fn frobenius(&self, i: u32) -> Matrix {
        let f = &self.field;
        Matrix {
            data: self.data.iter().map(|&a| f.frobenius(a, i)).collect(),
            ..self.clone()
        }
    }

    /// Expands every entry into its `m` basis coordinates: row `i` becomes the
    /// `m` rows `i*m .. (i+1)*m` of the result, row `i*m + r` holding the
    /// coefficients of `α^r`. The result lives over `F_q`.
    pub fn ext_expand(&self) -> Matrix {
        let m = self.field.m() as usize;
        let base = self.field.base();
        Matrix::from_fn(&base, self.rows * m, self.cols, |i, j| {
            FieldEl(self.field.digit(self.get(i / m, j), i % m))
        })
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Echelon {
        let mut r = self.clone();
        let pivots = r.reduce_in_place(None);
        Echelon { reduced: r, pivots }
    }

    /// Reduced row echelon form `R` with an invertible `P` such that `P·M = R`.
    pub fn rref_with_transform(&self) -> (Matrix, Echelon) {
        let mut r = self.clone();
        let mut p = Matrix::identity(&self.field, self.rows);
        let pivots = r.reduce_in_place(Some(&mut p));
        (p, Echelon { reduced: r, pivots })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, i: usize, c: FieldEl) {
        let f = self.field.clone();
        for x in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *x = f.mul(*x, c);
        }
    }

    /// row[dst] -= c · row[src]
    fn axpy_row(&mut self, dst: usize, src: usize, c: FieldEl) {
        let f = self.field.clone();
        let cols = self.cols;
        for j in 0..cols {
            let s = self.data[src * cols + j];
            if !s.is_zero() {
                let d = &mut self.data[dst * cols + j];
                *d = f.sub(*d, f.mul(c, s));
            }
        }
    }

    fn reduce_in_place(&mut self, mut transform: Option<&mut Matrix>) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(sel) = (prow..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            self.swap_rows(prow, sel);
            let inv = f.inv(self.get(prow, col)).expect("pivot is nonzero");
            self.scale_row(prow, inv);
            if let Some(p) = transform.as_deref_mut() {
                p.swap_rows(prow, sel);
                p.scale_row(prow, inv);
            }
            for i in 0..self.rows {
                if i == prow {
                    continue;
                }
                let c = self.get(i, col);
                if !c.is_zero() {
                    self.axpy_row(i, prow, c);
                    if let Some(p) = transform.as_deref_mut() {
                        p.axpy_row(i, prow, c);
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        pivots
    }

    /// Rank over the matrix's own field (`F_{q^m}` for extension matrices).
    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Rank over `F_q`, i.e. the rank of [`Matrix::ext_expand`].
    pub fn rank_q(&self) -> usize {
        self.ext_expand().rank()
    }

    /// The nonzero rows of the reduced row echelon form: a canonical basis of the row space.
    pub fn canonical_basis(&self) -> Matrix {
        let e = self.rref();
        let r = e.rank();
        e.reduced
            .submatrix(0..r, 0..self.cols)
            .expect("rank <= rows")
    }

    /// Equality of row spaces over the matrix's own field.
    pub fn row_space_eq(&self, other: &Matrix) -> bool {
        self.cols == other.cols
            && self.field.q() == other.field.q()
            && self.canonical_basis().codes() == other.canonical_basis().codes()
    }

    /// Basis of `{v : M vᵀ = 0}` over the matrix's own field, in reduced row echelon form.
    pub fn right_kernel(&self) -> Matrix {
        let f = &self.field;
        let e = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        // For free column c the kernel vector has 1 at c and -R[i, c] at pivot p_i.
        let mut k = Matrix::zeros(f, free.len(), self.cols);
        for (row, &c) in free.iter().enumerate() {
            k.set(row, c, FieldEl::ONE);
            for (i, &p) in e.pivots.iter().enumerate() {
                k.set(row, p, f.neg(e.reduced.get(i, c)));
            }
        }
        // The basis built this way is already echelonized up to row order; rref fixes it.
        k.canonical_basis()
    }

    /// Basis of the dual space `{v ∈ F_qⁿ : B vᵀ = 0}` of the row space of an `F_q` matrix.
    pub fn orth_complement(&self) -> Result<Matrix> {
        Ok(self.to_base()?.right_kernel())
    }

    /// Solves `self · Xᵀ = rhs` for the unique `X`.
    ///
    /// `self` must have full column rank; otherwise the solution is not unique
    /// and [`Error::RankDeficient`] is returned.
    pub fn solve_right(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "solve_right",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let t = self.cols;
        let aug = self.hstack(rhs)?;
        let e = aug.rref();
        let coeff_rank = e.pivots.iter().filter(|&&p| p < t).count();
        if coeff_rank < t {
            return Err(Error::RankDeficient {
                rank: coeff_rank,
                needed: t,
            });
        }
        if e.pivots.iter().any(|&p| p >= t) {
            return Err(Error::Inconsistent);
        }
        // Full column rank: the top t rows read [I_t | Xᵀ].
        Ok(e.reduced.submatrix(0..t, t..aug.cols)?.transpose())
    }

    /// The matrix text format: `q m rows cols`, then one line of codes per row.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} {} {} {}\n",
            self.field.q(),
            self.field.m(),
            self.rows,
            self.cols
        );
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|e| e.0.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the matrix text format. If `field` is given the header must
    /// agree with it; otherwise the default modulus for `(q, m)` is used.
    pub fn parse_text(text: &str, field: Option<&ExtField>) -> Result<Matrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty matrix text".into()))?;
        let nums = parse_ints(header)?;
        let [q, m, rows, cols] = nums[..] else {
            return Err(Error::Format(format!("bad matrix header `{header}`")));
        };
        let field = match field {
            Some(f) => {
                if f.q() as u64 != q || f.m() as u64 != m {
                    return Err(Error::Format(format!(
                        "header field (q={q}, m={m}) disagrees with {f}"
                    )));
                }
                f.clone()
            }
            None => ExtField::with_default_modulus(q as u32, m as u32)?,
        };
        let (rows, cols) = (rows as usize, cols as usize);
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let vals = if cols == 0 {
                Vec::new()
            } else {
                let line = lines
                    .next()
                    .ok_or_else(|| Error::Format(format!("missing matrix row {r}")))?;
                parse_ints(line)?
            };
            if vals.len() != cols {
                return Err(Error::Format(format!(
                    "row {r} has {} entries, expected {cols}",
                    vals.len()
                )));
            }
            for v in vals {
                let code =
                    u32::try_from(v).map_err(|_| Error::Format(format!("code {v} too large")))?;
                data.push(
                    field
                        .element(code)
                        .map_err(|e| Error::Format(e.to_string()))?,
                );
            }
        }
        if lines.next().is_some() {
            return Err(Error::Format("trailing data after matrix".into()));
        }
        Matrix::from_elements(&field, rows, cols, data)
    }

    /// Human-readable rendering in α-power notation where available.
    pub fn pretty(&self) -> String {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|&e| self.field.alpha_notation(e))
                    .collect()
            })
            .collect();
        let w = cells.iter().flatten().map(|c| c.len()).max().unwrap_or(1);
        let mut s = String::new();
        for row in cells {
            s.push('[');
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>w$}")).collect();
            s.push_str(&padded.join(" "));
            s.push_str("]\n");
        }
        s
    }
}

fn parse_ints(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::Format(format!("`{t}` is not a non-negative integer")))
        })
        .collect()
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matrix[{}x{} over {}] {:?}",
            self.rows,
            self.cols,
            self.field,
            self.codes()
        )
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
