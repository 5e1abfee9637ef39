//! Subspaces of F_q^n in canonical (reduced row echelon) form, Grassmannian
//! enumeration, and codes in which every `alpha` members span at least `D`
//! dimensions.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::arith::checked_pow;
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::linalg::{read_matrix, vstack, Mat};

/// Default cap on the number of subspaces an enumeration may produce.
pub const GRASSMANNIAN_CAP: u128 = 2_000_000;

/// A subspace, stored as its reduced row echelon basis without zero rows.
/// Two values are equal exactly when the row spaces are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Mat,
}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis.cols().hash(state);
        self.basis.data().hash(state);
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u32]> = (0..self.dim()).map(|r| self.basis.row(r)).collect();
        write!(f, "<{rows:?}>")
    }
}

impl Subspace {
    /// Row space of `m`.
    pub fn from_mat(m: &Mat) -> Subspace {
        Subspace { basis: m.rref().0 }
    }

    pub fn zero(ctx: &Arc<FieldCtx>, n: usize) -> Subspace {
        Subspace {
            basis: Mat::zeros(ctx, 0, n),
        }
    }

    pub fn full(ctx: &Arc<FieldCtx>, n: usize) -> Subspace {
        Subspace {
            basis: Mat::identity(ctx, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.basis.ctx()
    }

    /// Canonical basis, one row per basis vector.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::Shape(format!(
                "ambient dimensions {} and {}",
                self.ambient(),
                other.ambient()
            )));
        }
        if !FieldCtx::same(self.ctx(), other.ctx()) {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        Ok(Subspace::from_mat(&vstack(&[&self.basis, &other.basis])?))
    }

    /// `2 dim(U + V) - dim U - dim V`.
    pub fn distance(&self, other: &Subspace) -> Result<usize> {
        let s = self.sum(other)?.dim();
        Ok(2 * s - self.dim() - other.dim())
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        Ok(self.sum(other)?.dim() == self.dim())
    }
}

/// Dimension of the sum of the given subspaces.
pub fn span_dim(members: &[&Subspace]) -> Result<usize> {
    let Some(first) = members.first() else {
        return Ok(0);
    };
    for m in &members[1..] {
        first.same_ambient(m)?;
    }
    let bases: Vec<&Mat> = members.iter().map(|s| &s.basis).collect();
    Ok(vstack(&bases)?.rank())
}

/// Number of `k`-dimensional subspaces of F_q^n (q-Pascal recursion).
/// `None` if the value overflows `u128`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    // row[j] = [i choose j]_q for the current i
    let mut row = vec![0u128; k as usize + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=k.min(i) as usize).rev() {
            let qj = (q as u128).checked_pow(j as u32)?;
            row[j] = row[j - 1].checked_add(qj.checked_mul(row[j])?)?;
        }
    }
    Some(row[k as usize])
}

/// Lower and upper bounds on the largest constant-dimension code in
/// G_q(n, k) with minimum subspace distance `2 delta`.
pub fn aq_bounds(n: u32, k: u32, delta: u32, q: u64) -> Result<(u128, u128)> {
    if !(1 <= delta && delta <= k && k <= n) {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= delta <= k <= n, got n = {n}, k = {k}, delta = {delta}"
        )));
    }
    let lower = checked_pow(q as u128, ((n - k) * (k - delta + 1)) as u128, "A_q lower bound")?;
    let factor = if delta == 1 { 4 } else { 2 };
    let upper = lower
        .checked_mul(factor)
        .ok_or_else(|| Error::Overflow("A_q upper bound".into()))?;
    Ok((lower, upper))
}

/// All `k`-dimensional subspaces of F_q^n, each exactly once, ordered
/// lexicographically by their canonical matrices (row-major entries compared
/// as integers).
pub fn enumerate_grassmannian(n: usize, k: usize, q: u64) -> Result<Grassmannian> {
    enumerate_grassmannian_capped(n, k, q, GRASSMANNIAN_CAP)
}

pub type Grassmannian = std::vec::IntoIter<Subspace>;

pub fn enumerate_grassmannian_capped(n: usize, k: usize, q: u64, cap: u128) -> Result<Grassmannian> {
    let mut all: Vec<Subspace> = by_pivots(n, k, q, cap)?.collect();
    all.sort_unstable_by(|a, b| a.basis.data().cmp(b.basis.data()));
    Ok(all.into_iter())
}

/// Generator over pivot column sets in lexicographic order, then free entries
/// in lexicographic order (first free position most significant).
fn by_pivots(n: usize, k: usize, q: u64, cap: u128) -> Result<PivotOrder> {
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    let ctx = FieldCtx::of_order(q)?;
    let size = gaussian_binomial(n as u32, k as u32, q).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    let mut it = PivotOrder {
        ctx,
        n,
        k,
        pivots: (0..k).collect(),
        free: Vec::new(),
        values: Vec::new(),
        done: false,
    };
    it.reset_free();
    Ok(it)
}

struct PivotOrder {
    ctx: Arc<FieldCtx>,
    n: usize,
    k: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    values: Vec<u32>,
    done: bool,
}

impl PivotOrder {
    fn reset_free(&mut self) {
        self.free.clear();
        for (row, &p) in self.pivots.iter().enumerate() {
            for col in p + 1..self.n {
                if !self.pivots.contains(&col) {
                    self.free.push((row, col));
                }
            }
        }
        self.values = vec![0; self.free.len()];
    }

    fn advance_pivots(&mut self) -> bool {
        let (n, k) = (self.n, self.k);
        let Some(i) = (0..k).rev().find(|&i| self.pivots[i] < n - k + i) else {
            return false;
        };
        self.pivots[i] += 1;
        for j in i + 1..k {
            self.pivots[j] = self.pivots[j - 1] + 1;
        }
        true
    }

    fn advance_values(&mut self) -> bool {
        let q = self.ctx.order();
        for v in self.values.iter_mut().rev() {
            *v += 1;
            if *v < q {
                return true;
            }
            *v = 0;
        }
        false
    }
}

impl Iterator for PivotOrder {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let mut m = Mat::zeros(&self.ctx, self.k, self.n);
        for (row, &p) in self.pivots.iter().enumerate() {
            m.set(row, p, 1);
        }
        for (&(r, c), &v) in self.free.iter().zip(&self.values) {
            m.set(r, c, v);
        }
        if !self.advance_values() {
            if self.advance_pivots() {
                self.reset_free();
            } else {
                self.done = true;
            }
        }
        Some(Subspace { basis: m })
    }
}

/// Outcome of an `alpha`-cover check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCheck {
    pub holds: bool,
    /// Lexicographically first failing subset (member indices) and its span dimension.
    pub violation: Option<(Vec<usize>, usize)>,
    /// Number of subsets examined.
    pub checked: u64,
}

/// Checks that every `alpha`-subset of `set` spans at least `min_dim` dimensions.
pub fn alpha_cover_check(set: &[Subspace], alpha: usize, min_dim: usize) -> Result<CoverCheck> {
    if alpha == 0 || alpha > set.len() {
        return Err(Error::InvalidParameter(format!(
            "alpha = {alpha} must lie in 1..={}",
            set.len()
        )));
    }
    for s in &set[1..] {
        set[0].same_ambient(s)?;
    }
    let mut idx: Vec<usize> = (0..alpha).collect();
    let mut checked = 0u64;
    loop {
        checked += 1;
        let members: Vec<&Subspace> = idx.iter().map(|&i| &set[i]).collect();
        let d = span_dim(&members)?;
        if d < min_dim {
            return Ok(CoverCheck {
                holds: false,
                violation: Some((idx, d)),
                checked,
            });
        }
        if !next_combination(&mut idx, set.len()) {
            return Ok(CoverCheck {
                holds: true,
                violation: None,
                checked,
            });
        }
    }
}

/// Advances a strictly increasing index vector to the next lexicographic
/// combination of `0..n`; false when exhausted.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

/// A set of subspaces of F_q^n together with the cover parameters it is
/// meant to satisfy: every `alpha` members span at least `min_dim` dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCode {
    ctx: Arc<FieldCtx>,
    n: usize,
    members: Vec<Subspace>,
    alpha: usize,
    min_dim: usize,
}

impl CoverCode {
    pub fn new(ctx: &Arc<FieldCtx>, n: usize, members: Vec<Subspace>, alpha: usize, min_dim: usize) -> Result<CoverCode> {
        for m in &members {
            if m.ambient() != n {
                return Err(Error::Shape(format!("member in F^{} for ambient {n}", m.ambient())));
            }
            if !FieldCtx::same(ctx, m.ctx()) {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(CoverCode {
            ctx: ctx.clone(),
            n,
            members,
            alpha,
            min_dim,
        })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn min_dim(&self) -> usize {
        self.min_dim
    }

    /// Largest member dimension.
    pub fn member_dim(&self) -> usize {
        self.members.iter().map(Subspace::dim).max().unwrap_or(0)
    }

    /// Re-checks the defining property. Codes with fewer than `alpha`
    /// members hold vacuously.
    pub fn check(&self) -> Result<CoverCheck> {
        if self.members.len() < self.alpha {
            return Ok(CoverCheck {
                holds: true,
                violation: None,
                checked: 0,
            });
        }
        alpha_cover_check(&self.members, self.alpha, self.min_dim)
    }

    /// Certificate text: `n k q alpha D count`, then each member's canonical
    /// basis in matrix text form.
    pub fn to_certificate(&self) -> String {
        let mut s = format!(
            "{} {} {} {} {} {}\n",
            self.n,
            self.member_dim(),
            self.ctx.order(),
            self.alpha,
            self.min_dim,
            self.members.len()
        );
        for m in &self.members {
            s.push_str(&m.basis.to_text());
        }
        s
    }

    /// Parses a certificate. Member bases are re-canonicalized; each must
    /// have dimension at most the declared `k`. The cover property is not
    /// checked here.
    pub fn from_certificate(text: &str) -> Result<CoverCode> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (hline, header) = lines
            .find(|(_, l)| !l.trim().is_empty())
            .ok_or_else(|| Error::parse(0, "empty certificate"))?;
        let fields: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(hline, format!("bad header field {t:?}"))))
            .collect::<Result<_>>()?;
        let [n, k, q, alpha, min_dim, count] = fields[..] else {
            return Err(Error::parse(hline, "header must be `n k q alpha D count`"));
        };
        let ctx = FieldCtx::of_order(q).map_err(|e| Error::parse(hline, e.to_string()))?;
        let mut members = Vec::with_capacity(count as usize);
        for i in 0..count {
            let m = read_matrix(&ctx, &mut lines)?;
            if m.cols() as u64 != n {
                return Err(Error::parse(hline, format!("member {i} has {} columns, expected {n}", m.cols())));
            }
            let s = Subspace::from_mat(&m);
            if s.dim() as u64 > k {
                return Err(Error::parse(hline, format!("member {i} has dimension {} > {k}", s.dim())));
            }
            members.push(s);
        }
        if let Some((l, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::parse(l, format!("trailing content {extra:?}")));
        }
        CoverCode::new(&ctx, n as usize, members, alpha as usize, min_dim as usize)
    }
}

/// The 51 two-dimensional subspaces of F_2^6 in which any three span at least
/// four dimensions. With `beta` a root of `x^4 + x + 1`, the vector
/// `ab beta^i` is the bits `a, b` followed by the four coordinates of
/// `beta^i` (coefficient of 1 first). Members, in order:
/// `<01 b^i, 10 b^(i+1)>`, `<01 b^i, 10 b^(i+2)>`, `<01 b^i, 10 b^(i-1)>` for
/// `0 <= i <= 14`, then `<00 b^i, 00 b^(i+5)>` for `0 <= i <= 4`, then
/// `<100000, 010000>`.
pub fn binary_cover_51() -> CoverCode {
    let gf2 = FieldCtx::of_order(2).expect("GF(2)");
    let gf16 = FieldCtx::new(2, 4, Some(&[1, 1, 0, 0, 1])).expect("x^4 + x + 1 is primitive");
    let vector = |a: u32, b: u32, exp: Option<i64>| -> Vec<u32> {
        let tail = match exp {
            Some(e) => gf16.coefficients(gf16.primitive_power(e)),
            None => vec![0; 4],
        };
        let mut v = vec![a, b];
        v.extend(tail);
        v
    };
    let span = |rows: [Vec<u32>; 2]| Subspace::from_mat(&Mat::from_rows(&gf2, &rows).expect("binary rows"));
    let mut members = Vec::with_capacity(51);
    for shift in [1i64, 2, -1] {
        for i in 0..15i64 {
            members.push(span([vector(0, 1, Some(i)), vector(1, 0, Some(i + shift))]));
        }
    }
    for i in 0..5i64 {
        members.push(span([vector(0, 0, Some(i)), vector(0, 0, Some(i + 5))]));
    }
    members.push(span([vector(1, 0, None), vector(0, 1, None)]));
    CoverCode::new(&gf2, 6, members, 3, 4).expect("members live in F_2^6")
}
