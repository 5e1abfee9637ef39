//! Dense matrices over a `FieldCtx`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::FieldCtx;

/// A dense row-major matrix whose entries are encoded elements of `ctx`.
#[derive(Clone)]
pub struct Mat {
    ctx: Arc<FieldCtx>,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && FieldCtx::same(&self.ctx, &other.ctx)
    }
}

impl Eq for Mat {}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over GF({})", self.rows, self.cols, self.ctx.order())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(ctx: &Arc<FieldCtx>, rows: usize, cols: usize) -> Mat {
        Mat {
            ctx: ctx.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(ctx: &Arc<FieldCtx>, n: usize) -> Mat {
        let mut m = Mat::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(ctx: &Arc<FieldCtx>, rows: usize, cols: usize, data: Vec<u32>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} values for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for &v in &data {
            ctx.check(v as u64)?;
        }
        Ok(Mat {
            ctx: ctx.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(ctx: &Arc<FieldCtx>, rows: &[Vec<u32>]) -> Result<Mat> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Mat::from_vec(ctx, rows.len(), cols, rows.concat())
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.ctx.order());
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn same_ctx(&self, other: &Mat) -> Result<()> {
        if FieldCtx::same(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.zip(other, |c, a, b| c.add(a, b))
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.zip(other, |c, a, b| c.sub(a, b))
    }

    fn zip(&self, other: &Mat, f: impl Fn(&FieldCtx, u32, u32) -> u32) -> Result<Mat> {
        self.same_ctx(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(&self.ctx, a, b))
            .collect();
        Ok(Mat {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.same_ctx(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ctx = &self.ctx;
        let mut out = Mat::zeros(ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let base = i * other.cols;
                for (j, &b) in orow.iter().enumerate() {
                    if b != 0 {
                        let cell = &mut out.data[base + j];
                        *cell = ctx.add(*cell, ctx.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self^e` for square matrices, `e >= 0`.
    pub fn pow(&self, mut e: u64) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = Mat::identity(&self.ctx, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(&self.ctx, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c);
            }
        }
        out
    }

    /// Columns `start..start + width` of every row.
    pub fn col_range(&self, start: usize, width: usize) -> Result<Mat> {
        if start + width > self.cols {
            return Err(Error::Shape("column range out of bounds".into()));
        }
        let data = (0..self.rows)
            .flat_map(|r| self.row(r)[start..start + width].iter().copied())
            .collect();
        Ok(Mat {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: width,
            data,
        })
    }

    /// Rows `start..start + height`.
    pub fn row_range(&self, start: usize, height: usize) -> Result<Mat> {
        if start + height > self.rows {
            return Err(Error::Shape("row range out of bounds".into()));
        }
        Ok(Mat {
            ctx: self.ctx.clone(),
            rows: height,
            cols: self.cols,
            data: self.data[start * self.cols..(start + height) * self.cols].to_vec(),
        })
    }

    /// Reduced row echelon form with zero rows removed, plus the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut work = self.data.clone();
        let pivots = eliminate(&self.ctx, &mut work, self.rows, self.cols, self.cols);
        let rank = pivots.len();
        work.truncate(rank * self.cols);
        (
            Mat {
                ctx: self.ctx.clone(),
                rows: rank,
                cols: self.cols,
                data: work,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        eliminate(&self.ctx, &mut work, self.rows, self.cols, self.cols).len()
    }

    /// The unique `x` with `self * x = b`. `self` must have full column rank;
    /// extra rows must be consistent with `b`.
    pub fn solve(&self, b: &Mat) -> Result<Mat> {
        self.same_ctx(b)?;
        if self.rows != b.rows {
            return Err(Error::Shape(format!(
                "system has {} rows but right-hand side has {}",
                self.rows, b.rows
            )));
        }
        let width = self.cols + b.cols;
        let aug = hstack(&[self, b])?;
        let mut work = aug.data;
        let pivots = eliminate(&self.ctx, &mut work, self.rows, width, self.cols);
        if pivots.len() < self.cols {
            return Err(Error::RankDeficient {
                rank: pivots.len(),
                cols: self.cols,
            });
        }
        // Rows below the pivots must have a zero right-hand side.
        for r in pivots.len()..self.rows {
            if work[r * width + self.cols..(r + 1) * width].iter().any(|&v| v != 0) {
                return Err(Error::Inconsistent);
            }
        }
        let data = (0..self.cols)
            .flat_map(|r| work[r * width + self.cols..(r + 1) * width].iter().copied())
            .collect();
        Ok(Mat {
            ctx: self.ctx.clone(),
            rows: self.cols,
            cols: b.cols,
            data,
        })
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        self.solve(&Mat::identity(&self.ctx, self.rows))
    }

    /// Text form: `rows cols` header, then one line of decimal entries per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the text form; tokens may be split over lines arbitrarily.
    pub fn from_text(ctx: &Arc<FieldCtx>, text: &str) -> Result<Mat> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mat = read_matrix(ctx, &mut lines)?;
        if let Some((n, l)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::parse(n, format!("trailing content {l:?}")));
        }
        Ok(mat)
    }
}

/// Reads one matrix in text form from a line stream; used by the file formats
/// that embed matrices.
pub(crate) fn read_matrix<'a>(
    ctx: &Arc<FieldCtx>,
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<Mat> {
    let (hline, header) = lines
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| Error::parse(0, "missing matrix header"))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::parse(hline, format!("bad dimension {t:?}"))))
        .collect::<Result<_>>()?;
    let [rows, cols] = dims[..] else {
        return Err(Error::parse(hline, "matrix header must be `rows cols`"));
    };
    let need = rows * cols;
    let mut data = Vec::with_capacity(need);
    let mut last = hline;
    while data.len() < need {
        let (n, line) = lines
            .next()
            .ok_or_else(|| Error::parse(last, format!("expected {need} entries, found {}", data.len())))?;
        last = n;
        for tok in line.split_whitespace() {
            let v: u64 = tok
                .parse()
                .map_err(|_| Error::parse(n, format!("bad entry {tok:?}")))?;
            data.push(ctx.check(v).map_err(|e| Error::parse(n, e.to_string()))?);
        }
        if data.len() > need {
            return Err(Error::parse(n, "too many matrix entries"));
        }
    }
    Mat::from_vec(ctx, rows, cols, data)
}

/// In-place Gauss-Jordan elimination on a `rows x width` buffer, choosing
/// pivots only in the first `pivot_cols` columns (first nonzero row wins).
/// Pivot rows are normalized and moved to the top. Returns pivot columns.
fn eliminate(ctx: &FieldCtx, work: &mut [u32], rows: usize, width: usize, pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..pivot_cols {
        if top == rows {
            break;
        }
        let Some(pr) = (top..rows).find(|&r| work[r * width + col] != 0) else {
            continue;
        };
        if pr != top {
            for c in 0..width {
                work.swap(pr * width + c, top * width + c);
            }
        }
        let lead = work[top * width + col];
        if lead != 1 {
            let inv = ctx.inv(lead).expect("pivot is nonzero");
            for c in col..width {
                let cell = &mut work[top * width + c];
                *cell = ctx.mul(*cell, inv);
            }
        }
        for r in 0..rows {
            if r == top {
                continue;
            }
            let f = work[r * width + col];
            if f == 0 {
                continue;
            }
            let nf = ctx.neg(f);
            for c in col..width {
                let pv = work[top * width + c];
                if pv != 0 {
                    let cell = r * width + c;
                    work[cell] = ctx.add(work[cell], ctx.mul(nf, pv));
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    pivots
}

fn check_ctx(mats: &[&Mat]) -> Result<Arc<FieldCtx>> {
    let first = mats
        .first()
        .ok_or_else(|| Error::Shape("empty block list".into()))?;
    for m in &mats[1..] {
        first.same_ctx(m)?;
    }
    Ok(first.ctx.clone())
}

/// Side-by-side concatenation; all blocks need the same row count.
pub fn hstack(mats: &[&Mat]) -> Result<Mat> {
    let ctx = check_ctx(mats)?;
    let rows = mats[0].rows;
    if mats.iter().any(|m| m.rows != rows) {
        return Err(Error::Shape("hstack with differing row counts".into()));
    }
    let cols = mats.iter().map(|m| m.cols).sum();
    let mut data = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for m in mats {
            data.extend_from_slice(m.row(r));
        }
    }
    Ok(Mat { ctx, rows, cols, data })
}

/// Top-to-bottom concatenation; all blocks need the same column count.
pub fn vstack(mats: &[&Mat]) -> Result<Mat> {
    let ctx = check_ctx(mats)?;
    let cols = mats[0].cols;
    if mats.iter().any(|m| m.cols != cols) {
        return Err(Error::Shape("vstack with differing column counts".into()));
    }
    let rows = mats.iter().map(|m| m.rows).sum();
    let mut data = Vec::with_capacity(rows * cols);
    for m in mats {
        data.extend_from_slice(&m.data);
    }
    Ok(Mat { ctx, rows, cols, data })
}

/// Assembles a grid of blocks, row of blocks by row of blocks.
pub fn block(grid: &[Vec<&Mat>]) -> Result<Mat> {
    let rows = grid
        .iter()
        .map(|row| hstack(row))
        .collect::<Result<Vec<_>>>()?;
    vstack(&rows.iter().collect::<Vec<_>>())
}
