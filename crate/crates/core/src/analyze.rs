//! Field-size comparison between vector solutions and the best scalar
//! solutions for networks in which every receiver reads two middle nodes.

use std::fmt;

use crate::arith::{checked_pow, next_prime_power, prev_prime_power, prime_power};
use crate::error::{Error, Result};
use crate::network::{classify, Classification};
use crate::subspace::gaussian_binomial;

/// The four parameter regimes for vector solutions with `alpha = 2`, and the
/// number of middle nodes a vector solution over GF(q), dimension `t`,
/// reaches in each:
///
/// 1. `h - ell <= ell`, `eps = 0`: `q^(ell t)`
/// 2. `h - ell <= ell`, `eps > 0`: `q^(ell t (eps t + 1))`
/// 3. `h - ell >= ell`, `2 ell - h + eps = 0`: `q^((h - ell) t)`
/// 4. `h - ell >= ell`, `2 ell - h + eps > 0`: `q^((h - ell) t ((2 ell - h + eps) t + 1))`
pub fn vector_r_bound(h: usize, ell: usize, eps: usize, q: u64, t: usize) -> Result<(u8, u128)> {
    if classify(h, ell, eps, 2) != Classification::Normal {
        return Err(Error::InvalidParameter(format!(
            "(eps, ell) = ({eps}, {ell}) with h = {h} is not a normal two-node network"
        )));
    }
    if t == 0 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    let (h, ell, eps, t) = (h as u128, ell as u128, eps as u128, t as u128);
    let (case, exp) = if h - ell <= ell {
        if eps == 0 {
            (1, ell * t)
        } else {
            (2, ell * t * (eps * t + 1))
        }
    } else {
        let d = 2 * ell + eps - h;
        if d == 0 {
            (3, (h - ell) * t)
        } else {
            (4, (h - ell) * t * (d * t + 1))
        }
    };
    Ok((case, checked_pow(q as u128, exp, "vector r bound")?))
}

/// Network families whose smallest scalar field is known exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `N_{h,r,h}`: an MDS code of length `r` and dimension `h`.
    Combination { h: usize },
    /// `(1,2)-N_{4,r,5}`: `r <= (q^2 + 1)(q^2 + q + 1)`.
    OneTwoN4,
    /// `(ell-1,ell)-N_{2ell,r,3ell-1}`: `r <= [2ell choose ell]_q`.
    ExtraLinks { ell: usize },
    /// `(1,1)-N_{3,r,4}`: `r <= 2(q^2 + q + 1)`.
    ThreeMsg,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Combination { h } => write!(f, "N_{{{h},r,{h}}}"),
            Family::OneTwoN4 => f.write_str("(1,2)-N_{4,r,5}"),
            Family::ExtraLinks { ell } => write!(f, "({},{ell})-N_{{{},r,{}}}", ell - 1, 2 * ell, 3 * ell - 1),
            Family::ThreeMsg => f.write_str("(1,1)-N_{3,r,4}"),
        }
    }
}

fn is_power_of_two(n: u128) -> bool {
    n != 0 && n & (n - 1) == 0
}

/// Whether a scalar linear solution over GF(q_s) exists for `r` middle nodes.
pub fn scalar_bound_holds(family: Family, r: u128, q_s: u64) -> bool {
    let q = q_s as u128;
    match family {
        Family::Combination { h } => {
            let q_star = if h == 3 && r >= 3 && is_power_of_two(r - 2) { r - 2 } else { r.saturating_sub(1) };
            q >= q_star
        }
        Family::OneTwoN4 => scalar_bound_holds(Family::ExtraLinks { ell: 2 }, r, q_s),
        Family::ExtraLinks { ell } => gaussian_binomial(2 * ell as u32, ell as u32, q_s).is_none_or(|b| b >= r),
        Family::ThreeMsg => q
            .checked_mul(q)
            .and_then(|q2| q2.checked_add(q + 1))
            .and_then(|p| p.checked_mul(2))
            .is_none_or(|b| b >= r),
    }
}

/// Smallest prime power `q_s` with a scalar solution for `r` middle nodes.
pub fn min_scalar_field(family: Family, r: u128) -> u64 {
    let mut q = 2;
    while !scalar_bound_holds(family, r, q) {
        q = next_prime_power(q + 1);
    }
    q
}

/// How the scalar side of a row is known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarSide {
    /// Exact minimal field size for a family with a tight bound.
    Exact { family: Family, qs_min: u64 },
    /// Only the leading exponent `num/den` of `log_q(q_s) / t^2` is known.
    OrderOfMagnitude { num: u64, den: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapReport {
    pub h: usize,
    pub ell: usize,
    pub eps: usize,
    pub alpha: usize,
    pub q: u64,
    pub t: usize,
    pub case: u8,
    pub r: u128,
    pub scalar: ScalarSide,
}

impl GapReport {
    pub fn qs_min(&self) -> Option<u64> {
        match self.scalar {
            ScalarSide::Exact { qs_min, .. } => Some(qs_min),
            ScalarSide::OrderOfMagnitude { .. } => None,
        }
    }

    /// `log_q(q_s) / t^2` as a decimal.
    pub fn gap_exponent(&self) -> f64 {
        match self.scalar {
            ScalarSide::Exact { qs_min, .. } => (qs_min as f64).ln() / (self.q as f64).ln() / (self.t * self.t) as f64,
            ScalarSide::OrderOfMagnitude { num, den } => num as f64 / den as f64,
        }
    }

    /// Exact form of the gap exponent: `log_q(q_s)/t^2`, simplified to a
    /// fraction when `q_s` is a power of `q`; order-of-magnitude rows give
    /// the leading exponent prefixed with `~`.
    pub fn gap_expression(&self) -> String {
        let t2 = (self.t * self.t) as u64;
        match self.scalar {
            ScalarSide::Exact { qs_min, .. } => match log_exact(self.q, qs_min) {
                Some(k) => fraction(k, t2),
                None => format!("log_{}({qs_min})/{t2}", self.q),
            },
            ScalarSide::OrderOfMagnitude { num, den } => format!("~{}", fraction(num, den)),
        }
    }
}

/// `k` with `base^k = n`.
fn log_exact(base: u64, n: u64) -> Option<u64> {
    let (mut v, mut k) = (1u64, 0);
    while v < n {
        v = v.checked_mul(base)?;
        k += 1;
    }
    (v == n).then_some(k)
}

fn fraction(num: u64, den: u64) -> String {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    let g = gcd(num, den).max(1);
    if den / g == 1 {
        format!("{}", num / g)
    } else {
        format!("{}/{}", num / g, den / g)
    }
}

/// The networks giving the largest gap for `h` messages: for even `h`,
/// `(h/2 - 1, h/2)`; for odd `h`, `(ell - 2, ell)` with `ell = (h+1)/2` and
/// `(ell, ell)` with `ell = (h-1)/2`. Pairs that are not normal are dropped.
pub fn best_networks(h: usize) -> Vec<(usize, usize)> {
    let candidates = if h.is_multiple_of(2) {
        vec![(h / 2 - 1, h / 2)]
    } else {
        let big = h.div_ceil(2);
        let small = (h - 1) / 2;
        vec![(big.saturating_sub(2), big), (small, small)]
    };
    candidates
        .into_iter()
        .filter(|&(eps, ell)| ell >= 1 && classify(h, ell, eps, 2) == Classification::Normal)
        .collect()
}

/// Family with an exact scalar bound matching `(h, ell, eps)` at `alpha = 2`.
fn exact_family(h: usize, ell: usize, eps: usize) -> Option<Family> {
    match (h, ell, eps) {
        (2, 1, 0) => Some(Family::Combination { h: 2 }),
        (4, 2, 1) => Some(Family::OneTwoN4),
        _ if ell >= 2 && h == 2 * ell && eps == ell - 1 => Some(Family::ExtraLinks { ell }),
        _ => None,
    }
}

/// Leading exponent of `log_q(q_s)/t^2` for the given case.
fn leading_exponent(case: u8, h: usize, ell: usize, eps: usize) -> (u64, u64) {
    match case {
        2 => (eps as u64, eps as u64 + 1),
        4 => {
            let d = (2 * ell + eps - h) as u64;
            (d, d + 1)
        }
        _ => (0, 1),
    }
}

pub fn gap_report(h: usize, ell: usize, eps: usize, q: u64, t: usize) -> Result<GapReport> {
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    let (case, r) = vector_r_bound(h, ell, eps, q, t)?;
    let scalar = match exact_family(h, ell, eps) {
        Some(family) => ScalarSide::Exact {
            family,
            qs_min: min_scalar_field(family, r),
        },
        None => {
            let (num, den) = leading_exponent(case, h, ell, eps);
            ScalarSide::OrderOfMagnitude { num, den }
        }
    };
    Ok(GapReport {
        h,
        ell,
        eps,
        alpha: 2,
        q,
        t,
        case,
        r,
        scalar,
    })
}

/// One row per `(h, t)` and best network of [`best_networks`].
pub fn gap_table(hs: std::ops::RangeInclusive<usize>, q: u64, ts: std::ops::RangeInclusive<usize>) -> Result<Vec<GapReport>> {
    let mut rows = Vec::new();
    for h in hs {
        for (eps, ell) in best_networks(h) {
            for t in ts.clone() {
                rows.push(gap_report(h, ell, eps, q, t)?);
            }
        }
    }
    Ok(rows)
}

/// Checks a row against its scalar bound: holds at `q_s`, fails at the
/// previous prime power. Order-of-magnitude rows pass vacuously.
pub fn check_minimality(row: &GapReport) -> bool {
    match row.scalar {
        ScalarSide::Exact { family, qs_min } => {
            scalar_bound_holds(family, row.r, qs_min)
                && prev_prime_power(qs_min).is_none_or(|p| !scalar_bound_holds(family, row.r, p))
        }
        ScalarSide::OrderOfMagnitude { .. } => true,
    }
}

pub const CSV_HEADER: &str = "h,ell,eps,q,t,r,qs_min,gap_exponent";

pub fn to_csv(rows: &[GapReport]) -> String {
    let mut s = format!("{CSV_HEADER}\n");
    for row in rows {
        let qs = row.qs_min().map(|v| v.to_string()).unwrap_or_default();
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.h,
            row.ell,
            row.eps,
            row.q,
            row.t,
            row.r,
            qs,
            row.gap_expression()
        ));
    }
    s
}

/// Aligned table; the gap column shows the exact expression and a decimal.
pub fn to_table(rows: &[GapReport]) -> String {
    let header = ["h", "ell", "eps", "q", "t", "case", "r", "qs_min", "gap_exponent", "scalar side"];
    let body: Vec<[String; 10]> = rows
        .iter()
        .map(|row| {
            let side = match row.scalar {
                ScalarSide::Exact { family, .. } => format!("exact, {family}"),
                ScalarSide::OrderOfMagnitude { .. } => "order-of-magnitude only".to_string(),
            };
            [
                row.h.to_string(),
                row.ell.to_string(),
                row.eps.to_string(),
                row.q.to_string(),
                row.t.to_string(),
                row.case.to_string(),
                row.r.to_string(),
                row.qs_min().map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
                format!("{} (~{:.4})", row.gap_expression(), row.gap_exponent()),
                side,
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for line in &body {
        for (w, cell) in widths.iter_mut().zip(line) {
            *w = (*w).max(cell.len());
        }
    }
    let fmt_line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = fmt_line(header.to_vec());
    for line in &body {
        s.push_str(&fmt_line(line.iter().map(String::as_str).collect()));
    }
    s
}
