//! Finite fields GF(p^m) with log/antilog tables.
//!
//! An element is stored as an integer `0..q`: the coefficient vector of its
//! polynomial representation read as base-`p` digits, coefficient of `x^0`
//! least significant. `primitive_power(1)` is the root of the field's
//! primitive polynomial.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Largest field order for which tables are built unless a caller opts in.
pub const DEFAULT_TABLE_LIMIT: u64 = 1 << 20;

/// Minimal scalar interface used by the polynomial primitivity search, so the
/// same routine serves prime fields (before any table exists) and arbitrary
/// `FieldCtx` bases.
pub(crate) trait Scalars {
    fn order(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;
}

struct PrimeScalars(u32);

impl Scalars for PrimeScalars {
    fn order(&self) -> u32 {
        self.0
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }
    fn neg(&self, a: u32) -> u32 {
        (self.0 - a % self.0) % self.0
    }
}

/// Powers `x^0, x^1, ..., x^(Q-2)` modulo the monic polynomial `monic`
/// (coefficients low to high, leading 1 included) over `base`, encoded as
/// base-`|base|` integers. Returns `None` unless `x` has multiplicative order
/// exactly `Q - 1` with `Q = |base|^deg`, i.e. unless the polynomial is primitive.
pub(crate) fn x_power_cycle<S: Scalars>(base: &S, monic: &[u32], max_order: u64) -> Option<Vec<u32>> {
    let deg = monic.len().checked_sub(1)?;
    if deg == 0 || monic[deg] != 1 {
        return None;
    }
    let q = base.order() as u64;
    let order = (q as u128).checked_pow(deg as u32)?;
    if order > max_order as u128 {
        return None;
    }
    let order = order as u64;
    let encode = |s: &[u32]| s.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64) as u32;

    let mut state = vec![0u32; deg];
    state[0] = 1;
    let mut seq = Vec::with_capacity((order - 1) as usize);
    seq.push(1);
    for i in 1..order {
        let top = state[deg - 1];
        for j in (1..deg).rev() {
            state[j] = state[j - 1];
        }
        state[0] = 0;
        if top != 0 {
            let f = base.neg(top);
            for (j, s) in state.iter_mut().enumerate() {
                *s = base.add(*s, base.mul(f, monic[j]));
            }
        }
        let code = encode(&state);
        if code == 1 {
            return (i == order - 1).then_some(seq);
        }
        if code == 0 {
            return None;
        }
        seq.push(code);
    }
    None
}

/// Lexicographically smallest primitive monic polynomial of degree `deg` over
/// `base`, where candidates are ordered by their integer encoding (coefficient
/// of `x^0` least significant). Returns the coefficients and the power cycle.
pub(crate) fn smallest_primitive<S: Scalars>(base: &S, deg: usize, max_order: u64) -> Option<(Vec<u32>, Vec<u32>)> {
    let q = base.order() as u64;
    let count = q.checked_pow(deg as u32)?;
    (0..count).find_map(|v| {
        let mut coeffs: Vec<u32> = (0..deg)
            .map(|i| ((v / q.pow(i as u32)) % q) as u32)
            .collect();
        coeffs.push(1);
        x_power_cycle(base, &coeffs, max_order).map(|cycle| (coeffs, cycle))
    })
}

/// An immutable GF(p^m) context.
pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u32,
    poly: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; poly {:?})", self.p, self.m, self.poly)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.poly == other.poly
    }
}

impl Eq for FieldCtx {}

type CtxCache = Mutex<HashMap<(u64, u32), Arc<FieldCtx>>>;

static DEFAULT_CTX: OnceLock<CtxCache> = OnceLock::new();

impl FieldCtx {
    /// Builds GF(p^m). Without `poly` the deterministic default primitive
    /// polynomial is used and the context is shared through a process-wide cache.
    pub fn new(p: u64, m: u32, poly: Option<&[u32]>) -> Result<Arc<FieldCtx>> {
        match poly {
            Some(poly) => Self::with_limit(p, m, Some(poly), DEFAULT_TABLE_LIMIT).map(Arc::new),
            None => Self::cached(p, m),
        }
    }

    /// The field of order `q` (a prime power) with its default polynomial.
    pub fn of_order(q: u64) -> Result<Arc<FieldCtx>> {
        let (p, m) = crate::arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::cached(p, m)
    }

    fn cached(p: u64, m: u32) -> Result<Arc<FieldCtx>> {
        let cache = DEFAULT_CTX.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(ctx) = cache.lock().expect("field cache poisoned").get(&(p, m)) {
            return Ok(ctx.clone());
        }
        let ctx = Arc::new(Self::with_limit(p, m, None, DEFAULT_TABLE_LIMIT)?);
        cache
            .lock()
            .expect("field cache poisoned")
            .entry((p, m))
            .or_insert(ctx.clone());
        Ok(ctx)
    }

    pub fn with_limit(p: u64, m: u32, poly: Option<&[u32]>, limit: u64) -> Result<FieldCtx> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
        }
        let order = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if order > limit as u128 || order > u32::MAX as u128 {
            return Err(Error::TableLimit { order, limit });
        }
        let base = PrimeScalars(p as u32);
        let (poly, exp) = match poly {
            Some(poly) => {
                if poly.len() != m as usize + 1 || poly[m as usize] != 1 {
                    return Err(Error::BadPolynomial(format!(
                        "expected monic degree-{m} coefficients (low to high), got {poly:?}"
                    )));
                }
                if poly.iter().any(|&c| c as u64 >= p) {
                    return Err(Error::BadPolynomial(format!("coefficient not below {p}")));
                }
                let exp = x_power_cycle(&base, poly, limit).ok_or_else(|| Error::NotPrimitive {
                    q: p,
                    coeffs: poly.to_vec(),
                })?;
                (poly.to_vec(), exp)
            }
            None => smallest_primitive(&base, m as usize, limit)
                .expect("a primitive polynomial exists for every prime field extension"),
        };
        let q = order as u32;
        let mut log = vec![0u32; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        Ok(FieldCtx {
            p: p as u32,
            m,
            q,
            poly,
            exp,
            log,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Primitive polynomial coefficients, low degree first, monic.
    pub fn polynomial(&self) -> &[u32] {
        &self.poly
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        if self.m == 1 {
            return (self.p - a) % self.p;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] + self.log[b as usize];
        let n = self.q - 1;
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let n = self.q - 1;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    /// `a^e`; negative exponents require `a != 0`, and `0^0 = 1`.
    pub fn pow(&self, a: u32, e: i64) -> Result<u32> {
        if a == 0 {
            return match e {
                0 => Ok(1),
                e if e > 0 => Ok(0),
                _ => Err(Error::ZeroInverse),
            };
        }
        let n = (self.q - 1) as i64;
        let k = (self.log[a as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        Ok(self.exp[k as usize])
    }

    /// `alpha^i` for the primitive element alpha; `i` is reduced mod `q - 1`.
    pub fn primitive_power(&self, i: i64) -> u32 {
        self.exp[i.rem_euclid((self.q - 1) as i64) as usize]
    }

    /// Discrete logarithm to base alpha, `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn check(&self, v: u64) -> Result<u32> {
        if v < self.q as u64 {
            Ok(v as u32)
        } else {
            Err(Error::ElementRange {
                value: v,
                q: self.q,
            })
        }
    }

    /// Base-`p` coefficient vector of `a`, `x^0` first.
    pub fn coefficients(&self, a: u32) -> Vec<u32> {
        let mut a = a;
        (0..self.m)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    pub fn element(self: &Arc<Self>, v: u64) -> Result<FieldElement> {
        Ok(FieldElement {
            ctx: self.clone(),
            value: self.check(v)?,
        })
    }

    pub fn same(a: &Arc<FieldCtx>, b: &Arc<FieldCtx>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

impl Scalars for FieldCtx {
    fn order(&self) -> u32 {
        self.q
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        FieldCtx::add(self, a, b)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        FieldCtx::mul(self, a, b)
    }
    fn neg(&self, a: u32) -> u32 {
        FieldCtx::neg(self, a)
    }
}

/// A field element bound to its context.
#[derive(Clone)]
pub struct FieldElement {
    ctx: Arc<FieldCtx>,
    value: u32,
}

impl FieldElement {
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.with(self.ctx.inv(self.value)?))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        Ok(self.with(self.ctx.pow(self.value, e)?))
    }

    pub fn try_add(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same_ctx(rhs)?;
        Ok(self.with(self.ctx.add(self.value, rhs.value)))
    }

    pub fn try_mul(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same_ctx(rhs)?;
        Ok(self.with(self.ctx.mul(self.value, rhs.value)))
    }

    fn same_ctx(&self, rhs: &FieldElement) -> Result<()> {
        if FieldCtx::same(&self.ctx, &rhs.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn with(&self, value: u32) -> FieldElement {
        FieldElement {
            ctx: self.ctx.clone(),
            value,
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && FieldCtx::same(&self.ctx, &other.ctx)
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.value, self.ctx.q)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// Operators skip the context check in release builds; use `try_add` /
// `try_mul` where the operands may come from different fields.
macro_rules! binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl $tr for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                debug_assert!(FieldCtx::same(&self.ctx, &rhs.ctx), "field context mismatch");
                self.with(self.ctx.$op(self.value, rhs.value))
            }
        }
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.ctx.neg(self.value))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
