//! Rank-metric codes used as coding coefficients.
//!
//! [`CompanionCode`] is the set `{0, I, C, C^2, ..., C^(q^t - 2)}` of powers of
//! the companion matrix of a primitive polynomial; it is an MRD code with
//! minimum rank distance `t` and is isomorphic to GF(q^t) via `alpha^i -> C^i`.
//! [`GabidulinCode`] gives general square MRD codes from linearized polynomials.

use std::sync::Arc;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{checked_pow, is_prime};
use crate::error::{Error, Result};
use crate::gf::{smallest_primitive, x_power_cycle, FieldCtx, DEFAULT_TABLE_LIMIT};
use crate::linalg::Mat;

/// Companion codes are fully materialized; `q^t` is capped at this size.
pub const COMPANION_LIMIT: u64 = 1 << 16;

/// The `t x t` companion matrix of the monic `poly` (coefficients low to high):
/// ones on the superdiagonal, last row `(-p_0, ..., -p_{t-1})`.
pub fn companion_matrix(base: &Arc<FieldCtx>, poly: &[u32]) -> Result<Mat> {
    let t = poly
        .len()
        .checked_sub(1)
        .filter(|&t| t >= 1)
        .ok_or_else(|| Error::BadPolynomial("degree must be at least 1".into()))?;
    if poly[t] != 1 || poly.iter().any(|&c| c >= base.order()) {
        return Err(Error::BadPolynomial(format!("{poly:?} is not monic over GF({})", base.order())));
    }
    if x_power_cycle(base.as_ref(), poly, DEFAULT_TABLE_LIMIT).is_none() {
        return Err(Error::NotPrimitive {
            q: base.order() as u64,
            coeffs: poly.to_vec(),
        });
    }
    let mut c = Mat::zeros(base, t, t);
    for i in 0..t - 1 {
        c.set(i, i + 1, 1);
    }
    for (j, &p) in poly[..t].iter().enumerate() {
        c.set(t - 1, j, base.neg(p));
    }
    Ok(c)
}

/// Default primitive polynomial of degree `t` over `base`: the smallest one
/// under the integer encoding used for field elements.
pub fn default_primitive_poly(base: &Arc<FieldCtx>, t: usize) -> Result<Vec<u32>> {
    smallest_primitive(base.as_ref(), t, DEFAULT_TABLE_LIMIT)
        .map(|(poly, _)| poly)
        .ok_or(Error::TableLimit {
            order: (base.order() as u128).saturating_pow(t as u32),
            limit: DEFAULT_TABLE_LIMIT,
        })
}

#[derive(Debug, Clone)]
pub struct CompanionCode {
    base: Arc<FieldCtx>,
    t: usize,
    poly: Vec<u32>,
    members: Vec<Mat>,
}

impl CompanionCode {
    /// `D_t` over GF(q) with the default primitive polynomial of degree `t`.
    pub fn new(q: u64, t: usize) -> Result<CompanionCode> {
        let base = FieldCtx::of_order(q)?;
        let poly = default_primitive_poly(&base, t)?;
        Self::with_poly(&base, &poly)
    }

    pub fn with_poly(base: &Arc<FieldCtx>, poly: &[u32]) -> Result<CompanionCode> {
        let t = poly.len().saturating_sub(1);
        let size = (base.order() as u128).checked_pow(t as u32).unwrap_or(u128::MAX);
        if size > COMPANION_LIMIT as u128 {
            return Err(Error::CapExceeded {
                size,
                cap: COMPANION_LIMIT as u128,
            });
        }
        let c = companion_matrix(base, poly)?;
        let size = size as usize;
        let mut members = Vec::with_capacity(size);
        members.push(Mat::zeros(base, t, t));
        let mut power = Mat::identity(base, t);
        for _ in 0..size - 1 {
            let next = power.mul(&c)?;
            members.push(power);
            power = next;
        }
        Ok(CompanionCode {
            base: base.clone(),
            t,
            poly: poly.to_vec(),
            members,
        })
    }

    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.t
    }

    pub fn poly(&self) -> &[u32] {
        &self.poly
    }

    pub fn companion(&self) -> &Mat {
        // members = [0, I, C, ...]; for q^t = 2 the code is {0, I} and C = I.
        self.members.get(2).unwrap_or(&self.members[1])
    }

    /// Members in order `0, I, C, C^2, ...`.
    pub fn members(&self) -> &[Mat] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `C^i`, exponent reduced mod `q^t - 1`.
    pub fn power(&self, i: i64) -> &Mat {
        let n = (self.members.len() - 1) as i64;
        &self.members[1 + i.rem_euclid(n) as usize]
    }

    /// Image of a GF(q^t) element (encoded in `ext`, whose polynomial must be
    /// this code's) under `alpha^i -> C^i`, `0 -> 0`.
    pub fn embed(&self, ext: &FieldCtx, a: u32) -> &Mat {
        match ext.log(a) {
            None => &self.members[0],
            Some(k) => self.power(k as i64),
        }
    }
}

/// Gabidulin code of `n x n` matrices over prime GF(q) with minimum rank
/// distance `delta`: codewords are the matrices of `f(x) = sum m_i x^(q^i)`,
/// `i < k = n - delta + 1`, in the polynomial basis `1, alpha, ..., alpha^(n-1)`
/// of GF(q^n). Row `j` holds the coordinates of `f(alpha^j)`.
#[derive(Debug, Clone)]
pub struct GabidulinCode {
    base: Arc<FieldCtx>,
    ext: Arc<FieldCtx>,
    n: usize,
    delta: usize,
    k: usize,
    size: u128,
}

impl GabidulinCode {
    pub fn new(q: u64, n: usize, delta: usize) -> Result<GabidulinCode> {
        if !is_prime(q) {
            return Err(Error::InvalidParameter(format!(
                "Gabidulin codes are built over prime fields only (q = {q})"
            )));
        }
        if n == 0 || delta == 0 || delta > n {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= delta <= n, got n = {n}, delta = {delta}"
            )));
        }
        let base = FieldCtx::of_order(q)?;
        let ext = FieldCtx::new(q, n as u32, None)?;
        let k = n - delta + 1;
        let size = checked_pow(ext.order() as u128, k as u128, "Gabidulin code size")?;
        Ok(GabidulinCode {
            base,
            ext,
            n,
            delta,
            k,
            size,
        })
    }

    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<FieldCtx> {
        &self.ext
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Number of message coefficients in GF(q^n).
    pub fn k(&self) -> usize {
        self.k
    }

    /// `q^(n * k)`.
    pub fn size(&self) -> u128 {
        self.size
    }

    /// Message digits of `index` in base `q^n`, digit `i` is `m_i`.
    pub fn message(&self, index: u128) -> Result<Vec<u32>> {
        if index >= self.size {
            return Err(Error::IndexOutOfRange {
                index,
                size: self.size,
            });
        }
        let big_q = self.ext.order() as u128;
        let mut rest = index;
        Ok((0..self.k)
            .map(|_| {
                let d = (rest % big_q) as u32;
                rest /= big_q;
                d
            })
            .collect())
    }

    pub fn codeword(&self, index: u128) -> Result<Mat> {
        let msg = self.message(index)?;
        let ext = &self.ext;
        let q = self.base.order() as i64;
        let mut out = Mat::zeros(&self.base, self.n, self.n);
        for j in 0..self.n {
            // f(alpha^j) = sum_i m_i * alpha^(j q^i)
            let mut value = 0;
            let mut frob = 1i64; // q^i mod (q^n - 1)
            let order = ext.order() as i64 - 1;
            for &m in &msg {
                if m != 0 {
                    let point = ext.primitive_power((j as i64 * frob) % order);
                    value = ext.add(value, ext.mul(m, point));
                }
                frob = (frob * q) % order;
            }
            for (c, digit) in ext.coefficients(value).into_iter().enumerate() {
                out.set(j, c, digit);
            }
        }
        Ok(out)
    }

    /// All codewords; only sensible for small codes.
    pub fn codewords(&self) -> Result<Vec<Mat>> {
        (0..self.size).map(|i| self.codeword(i)).collect()
    }
}

/// Minimum of `rank(A - B)` over distinct pairs.
pub fn min_rank_distance(codewords: &[Mat]) -> Result<usize> {
    check_shapes(codewords)?;
    let n = codewords.len();
    (0..n)
        .into_par_iter()
        .map(|i| {
            (i + 1..n)
                .map(|j| codewords[i].sub(&codewords[j]).map(|d| d.rank()))
                .try_fold(usize::MAX, |acc, r| r.map(|r| acc.min(r)))
        })
        .try_reduce(|| usize::MAX, |a, b| Ok(a.min(b)))
}

/// Minimum rank distance over `pairs` distinct pairs drawn uniformly with a
/// seeded generator (without replacement from the set of all pairs).
pub fn sampled_min_rank_distance(code: &GabidulinCode, pairs: usize, seed: u64) -> Result<usize> {
    let size = code.size();
    let total = size.saturating_mul(size.saturating_sub(1)) / 2;
    let pairs = (pairs as u128).min(total) as usize;
    if total <= usize::MAX as u128 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let picks = sample(&mut rng, total as usize, pairs);
        let mut best = usize::MAX;
        for p in picks.iter() {
            let (i, j) = unrank_pair(p as u128, size);
            best = best.min(code.codeword(i)?.sub(&code.codeword(j)?)?.rank());
        }
        Ok(best)
    } else {
        Err(Error::Overflow("pair count".into()))
    }
}

/// Pair `(i, j)`, `i < j < n`, at lexicographic position `p`.
fn unrank_pair(mut p: u128, n: u128) -> (u128, u128) {
    let mut i = 0;
    loop {
        let row = n - 1 - i;
        if p < row {
            return (i, i + 1 + p);
        }
        p -= row;
        i += 1;
    }
}

fn check_shapes(codewords: &[Mat]) -> Result<()> {
    if codewords.len() < 2 {
        return Err(Error::InvalidParameter("need at least two codewords".into()));
    }
    let (r, c) = (codewords[0].rows(), codewords[0].cols());
    if codewords.iter().any(|m| (m.rows(), m.cols()) != (r, c)) {
        return Err(Error::Shape("codewords differ in shape".into()));
    }
    Ok(())
}
