//! Network-code builders. Every builder returns an [`Assignment`]: the coding
//! matrix `G_i` ((ell t) x (h t)) carried by each middle node's parallel
//! links, and for networks with direct links the (eps t) x (h t) matrix `P`
//! of each receiver.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::linalg::{hstack, read_matrix, vstack, Mat};
use crate::network::{NetworkFile, NetworkSpec};
use crate::rankmetric::{CompanionCode, GabidulinCode};
use crate::subspace::{alpha_cover_check, enumerate_grassmannian, gaussian_binomial, CoverCode};

/// How the direct-link matrices of an assignment are obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DirectLinks {
    /// The network has no direct links.
    None,
    /// Computed on demand with [`completion_rows`] from the receiver's
    /// middle-node blocks.
    Completion,
    /// One matrix per receiver, in receiver order.
    Explicit(Vec<Mat>),
}

#[derive(Debug, Clone)]
pub struct Assignment {
    spec: NetworkSpec,
    ctx: Arc<FieldCtx>,
    t: usize,
    nodes: Vec<Mat>,
    direct: DirectLinks,
}

impl Assignment {
    /// Checks every shape. With `eps = 0` the direct links must be `None`.
    pub fn new(spec: NetworkSpec, ctx: &Arc<FieldCtx>, t: usize, nodes: Vec<Mat>, direct: DirectLinks) -> Result<Assignment> {
        if t == 0 {
            return Err(Error::InvalidParameter("t must be at least 1".into()));
        }
        let (rows, cols) = (spec.ell() * t, spec.h() * t);
        if nodes.len() != spec.r() {
            return Err(Error::Shape(format!("{} node matrices for r = {}", nodes.len(), spec.r())));
        }
        for (i, g) in nodes.iter().enumerate() {
            if !FieldCtx::same(g.ctx(), ctx) {
                return Err(Error::ContextMismatch);
            }
            if (g.rows(), g.cols()) != (rows, cols) {
                return Err(Error::Shape(format!(
                    "node {i} matrix is {}x{}, expected {rows}x{cols}",
                    g.rows(),
                    g.cols()
                )));
            }
        }
        match (&direct, spec.eps()) {
            (DirectLinks::None, 0) => {}
            (DirectLinks::None, _) => return Err(Error::Shape("network has direct links but none were given".into())),
            (_, 0) => return Err(Error::Shape("network has no direct links".into())),
            (DirectLinks::Completion, _) => {}
            (DirectLinks::Explicit(ps), eps) => {
                if ps.len() as u128 != spec.num_receivers() {
                    return Err(Error::Shape(format!(
                        "{} direct-link matrices for {} receivers",
                        ps.len(),
                        spec.num_receivers()
                    )));
                }
                for (j, p) in ps.iter().enumerate() {
                    if !FieldCtx::same(p.ctx(), ctx) {
                        return Err(Error::ContextMismatch);
                    }
                    if (p.rows(), p.cols()) != (eps * t, cols) {
                        return Err(Error::Shape(format!(
                            "receiver {j} matrix is {}x{}, expected {}x{cols}",
                            p.rows(),
                            p.cols(),
                            eps * t
                        )));
                    }
                }
            }
        }
        Ok(Assignment {
            spec,
            ctx: ctx.clone(),
            t,
            nodes,
            direct,
        })
    }

    pub fn spec(&self) -> &NetworkSpec {
        &self.spec
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn q(&self) -> u64 {
        self.ctx.order() as u64
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn nodes(&self) -> &[Mat] {
        &self.nodes
    }

    pub fn direct(&self) -> &DirectLinks {
        &self.direct
    }

    pub fn network_file(&self) -> NetworkFile {
        NetworkFile {
            spec: self.spec,
            q: self.q(),
            t: self.t,
        }
    }

    /// Direct-link matrix of receiver `index`; `stacked` is the vstack of the
    /// receiver's node matrices and is only read for computed completions.
    /// When a full-rank completion does not exist the best one is returned.
    pub fn direct_rows(&self, index: u128, stacked: &Mat) -> Result<Option<Mat>> {
        match &self.direct {
            DirectLinks::None => Ok(None),
            DirectLinks::Explicit(ps) => {
                let p = ps.get(index as usize).ok_or(Error::IndexOutOfRange {
                    index,
                    size: ps.len() as u128,
                })?;
                Ok(Some(p.clone()))
            }
            DirectLinks::Completion => {
                let target = self.spec.h() * self.t;
                Ok(Some(greedy_completion(stacked, target, self.spec.eps() * self.t).0))
            }
        }
    }

    /// Vstack of the node matrices of `nodes`, in the given order.
    pub fn stacked_nodes(&self, nodes: &[usize]) -> Result<Mat> {
        let blocks = nodes
            .iter()
            .map(|&i| {
                self.nodes.get(i).ok_or(Error::IndexOutOfRange {
                    index: i as u128,
                    size: self.nodes.len() as u128,
                })
            })
            .collect::<Result<Vec<&Mat>>>()?;
        vstack(&blocks)
    }

    /// Same assignment with every direct-link matrix stored explicitly.
    pub fn materialize(&self) -> Result<Assignment> {
        if self.direct != DirectLinks::Completion {
            return Ok(self.clone());
        }
        let n = usize::try_from(self.spec.num_receivers())
            .map_err(|_| Error::Overflow("receiver count".into()))?;
        let ps = (0..n)
            .into_par_iter()
            .map(|j| {
                let nodes = self.spec.receiver(j as u128)?;
                let stacked = self.stacked_nodes(&nodes)?;
                Ok(self.direct_rows(j as u128, &stacked)?.expect("direct links present"))
            })
            .collect::<Result<Vec<Mat>>>()?;
        Ok(Assignment {
            direct: DirectLinks::Explicit(ps),
            ..self.clone()
        })
    }

    /// Network header, then `node i` and its matrix for every node, then
    /// `receiver j` and its direct-link matrix for every receiver (when the
    /// network has direct links).
    pub fn to_text(&self) -> Result<String> {
        let mut s = self.network_file().to_text();
        for (i, g) in self.nodes.iter().enumerate() {
            s.push_str(&format!("node {i}\n"));
            s.push_str(&g.to_text());
        }
        let full = self.materialize()?;
        if let DirectLinks::Explicit(ps) = &full.direct {
            for (j, p) in ps.iter().enumerate() {
                s.push_str(&format!("receiver {j}\n"));
                s.push_str(&p.to_text());
            }
        }
        Ok(s)
    }

    pub fn from_text(text: &str) -> Result<Assignment> {
        let all: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
        let split = all
            .iter()
            .position(|(_, l)| l.trim_start().starts_with("node"))
            .unwrap_or(all.len());
        let header = NetworkFile::parse_lines(&all[..split])?;
        let ctx = FieldCtx::of_order(header.q).map_err(|e| Error::parse(1, e.to_string()))?;
        let spec = header.spec;
        let mut lines = all[split..].iter().copied();
        let end = all.len();
        let expect = |label: String, lines: &mut std::iter::Copied<std::slice::Iter<'_, (usize, &str)>>| -> Result<()> {
            match lines.find(|(_, l)| !l.trim().is_empty()) {
                Some((_, l)) if l.trim() == label => Ok(()),
                Some((n, l)) => Err(Error::parse(n, format!("expected {label:?}, found {:?}", l.trim()))),
                None => Err(Error::parse(end, format!("missing {label:?}"))),
            }
        };
        let mut nodes = Vec::with_capacity(spec.r());
        for i in 0..spec.r() {
            expect(format!("node {i}"), &mut lines)?;
            nodes.push(read_matrix(&ctx, &mut lines)?);
        }
        let direct = if spec.eps() == 0 {
            DirectLinks::None
        } else {
            let n = usize::try_from(spec.num_receivers()).map_err(|_| Error::Overflow("receiver count".into()))?;
            let mut ps = Vec::with_capacity(n);
            for j in 0..n {
                expect(format!("receiver {j}"), &mut lines)?;
                ps.push(read_matrix(&ctx, &mut lines)?);
            }
            DirectLinks::Explicit(ps)
        };
        if let Some((n, l)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::parse(n, format!("trailing content {l:?}")));
        }
        Assignment::new(spec, &ctx, header.t, nodes, direct)
    }
}

/// Greedy standard-basis completion: `e_0, e_1, ...` are appended while they
/// raise the rank, until `target` is reached; the remaining rows are zero.
/// Returns the rows and the rank reached.
fn greedy_completion(s: &Mat, target: usize, count: usize) -> (Mat, usize) {
    let ctx = s.ctx();
    let cols = s.cols();
    let mut basis = s.rref().0;
    let mut out = Mat::zeros(ctx, count, cols);
    let mut emitted = 0;
    for j in 0..cols {
        if emitted == count || basis.rows() >= target {
            break;
        }
        let mut e = Mat::zeros(ctx, 1, cols);
        e.set(0, j, 1);
        let grown = vstack(&[&basis, &e]).expect("same width").rref().0;
        if grown.rows() > basis.rows() {
            out.set(emitted, j, 1);
            emitted += 1;
            basis = grown;
        }
    }
    (out, basis.rows())
}

/// `count` rows of standard basis vectors that bring the rank of `s` up to
/// `target`, followed by zero rows once the target is reached.
pub fn completion_rows(s: &Mat, target: usize, count: usize) -> Result<Mat> {
    if target > s.cols() {
        return Err(Error::InvalidParameter(format!(
            "target rank {target} exceeds {} columns",
            s.cols()
        )));
    }
    let (rows, reached) = greedy_completion(s, target, count);
    if reached < target {
        return Err(Error::CompletionImpossible {
            rank: s.rank(),
            count,
            target,
        });
    }
    Ok(rows)
}

/// Nonzero elements follow zero in the order `alpha^0, alpha^1, ...`.
fn field_element(ctx: &FieldCtx, i: usize) -> u32 {
    if i == 0 {
        0
    } else {
        ctx.primitive_power(i as i64 - 1)
    }
}

/// Largest `r` with a scalar MDS solution of `N_{h,r,h}` over GF(q): `q + 1`,
/// or `q + 2` for `h = 3` and even `q`.
pub fn mds_max_r(h: usize, q: u64) -> u64 {
    if h == 3 && q.is_multiple_of(2) {
        q + 2
    } else {
        q + 1
    }
}

/// Extended Reed-Solomon coding vectors: `(1, a, ..., a^(h-1))` for the
/// first `r - 1` field elements and `e_h` last. For `h = 3`, even `q` and
/// `r = q + 2`, all `q` elements are used, then `e_3`, then `e_2`.
pub fn scalar_mds_solution(h: usize, r: usize, q_s: u64) -> Result<Assignment> {
    let spec = NetworkSpec::combination(h, r)?;
    let ctx = FieldCtx::of_order(q_s)?;
    let bound = mds_max_r(h, q_s);
    if r as u64 > bound {
        return Err(Error::BoundExceeded {
            what: format!("scalar MDS solution of N_{{{h},r,{h}}} over GF({q_s})"),
            r: r as u128,
            bound: bound as u128,
        });
    }
    let from_field = if r as u64 == q_s + 2 { q_s as usize } else { r - 1 };
    let nodes = (0..r)
        .map(|i| {
            let mut g = Mat::zeros(&ctx, 1, h);
            if i < from_field {
                let a = field_element(&ctx, i);
                let mut power = 1;
                for j in 0..h {
                    g.set(0, j, power);
                    power = ctx.mul(power, a);
                }
            } else if i == from_field {
                g.set(0, h - 1, 1);
            } else {
                g.set(0, 1, 1);
            }
            g
        })
        .collect();
    Assignment::new(spec, &ctx, 1, nodes, DirectLinks::None)
}

/// Blocks from the `ell`-dimensional subspaces of GF(q_s)^(2 ell) for the
/// `(ell-1, ell)-N_{2ell, r, 3ell-1}` network; possible exactly when `r` is
/// at most the Gaussian binomial `[2ell choose ell]_{q_s}`.
pub fn scalar_blocks_solution(ell: usize, q_s: u64, r: usize) -> Result<Assignment> {
    if ell < 2 {
        return Err(Error::InvalidParameter(format!("need ell >= 2, got {ell}")));
    }
    let spec = NetworkSpec::new(2 * ell, r, ell, ell - 1, 2)?;
    let ctx = FieldCtx::of_order(q_s)?;
    let bound = gaussian_binomial(2 * ell as u32, ell as u32, q_s)
        .ok_or_else(|| Error::Overflow(format!("[{} choose {ell}]_{q_s}", 2 * ell)))?;
    if r as u128 > bound {
        return Err(Error::BoundExceeded {
            what: format!("scalar solution of ({},{ell})-N_{{{},r,{}}} over GF({q_s})", ell - 1, 2 * ell, 3 * ell - 1),
            r: r as u128,
            bound,
        });
    }
    let nodes = enumerate_grassmannian(2 * ell, ell, q_s)?
        .take(r)
        .map(|s| s.basis().clone())
        .collect();
    Assignment::new(spec, &ctx, 1, nodes, DirectLinks::Completion)
}

/// Largest `r` with a scalar solution of `(1,1)-N_{3,r,4}` over GF(q_s).
pub fn three_msg_max_r(q_s: u64) -> Result<u128> {
    let q = q_s as u128;
    q.checked_mul(q)
        .and_then(|q2| q2.checked_add(q + 1))
        .and_then(|p| p.checked_mul(2))
        .ok_or_else(|| Error::Overflow("2(q^2 + q + 1)".into()))
}

/// `(1,1)-N_{3,r,4}` over GF(q_s): node `i` carries projective point
/// `i mod (q_s^2 + q_s + 1)`, so every point is used at most twice.
pub fn scalar_3msg_solution(r: usize, q_s: u64) -> Result<Assignment> {
    let spec = NetworkSpec::new(3, r, 1, 1, 3)?;
    let ctx = FieldCtx::of_order(q_s)?;
    let bound = three_msg_max_r(q_s)?;
    if r as u128 > bound {
        return Err(Error::BoundExceeded {
            what: format!("scalar solution of (1,1)-N_{{3,r,4}} over GF({q_s})"),
            r: r as u128,
            bound,
        });
    }
    let points: Vec<Mat> = enumerate_grassmannian(3, 1, q_s)?.map(|s| s.basis().clone()).collect();
    let nodes = (0..r).map(|i| points[i % points.len()].clone()).collect();
    Assignment::new(spec, &ctx, 1, nodes, DirectLinks::Completion)
}

/// Block row `[I | C | C^2 | ... | C^(h-1)]` for the companion-code member
/// with index `k` (members ordered `0, I, C, C^2, ...`).
fn vandermonde_row(code: &CompanionCode, k: usize, h: usize) -> Result<Mat> {
    let t = code.dim();
    let blocks: Vec<&Mat> = (0..h)
        .map(|j| {
            if j == 0 {
                code.power(0)
            } else if k == 0 {
                &code.members()[0]
            } else {
                code.power((k as i64 - 1) * j as i64)
            }
        })
        .collect();
    let row = hstack(&blocks)?;
    debug_assert_eq!(row.rows(), t);
    Ok(row)
}

/// `[0 | ... | I | ... | 0]` with the identity in block `pos`.
fn unit_block_row(ctx: &Arc<FieldCtx>, t: usize, h: usize, pos: usize) -> Mat {
    let mut m = Mat::zeros(ctx, t, h * t);
    for i in 0..t {
        m.set(i, pos * t + i, 1);
    }
    m
}

/// Vector solution of `N_{h,r,h}` from the companion code `D_t` over GF(q):
/// node `i < r - 1` sends `[I | C_i | ... | C_i^(h-1)]`, the last node sends
/// `x_h`. For `h = 3` and even `q^t` one more node sending `x_2` allows
/// `r = q^t + 2`.
pub fn vector_construction1(h: usize, q: u64, t: usize, r: usize) -> Result<Assignment> {
    let spec = NetworkSpec::combination(h, r)?;
    let code = CompanionCode::new(q, t)?;
    let big_q = code.len() as u64;
    let bound = mds_max_r(h, big_q);
    if r as u64 > bound {
        return Err(Error::BoundExceeded {
            what: format!("vector solution of N_{{{h},r,{h}}} with q^t = {big_q}"),
            r: r as u128,
            bound: bound as u128,
        });
    }
    let ctx = code.base().clone();
    let from_code = if r as u64 == big_q + 2 { big_q as usize } else { r - 1 };
    let nodes = (0..r)
        .map(|i| {
            if i < from_code {
                vandermonde_row(&code, i, h)
            } else if i == from_code {
                Ok(unit_block_row(&ctx, t, h, h - 1))
            } else {
                Ok(unit_block_row(&ctx, t, h, 1))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Assignment::new(spec, &ctx, t, nodes, DirectLinks::None)
}

/// Node `i` sends `[I_(ell t) | C_i]` with `C_i` the `i`-th codeword of a
/// Gabidulin code of `(ell t) x (ell t)` matrices with distance `delta`.
fn gabidulin_pairs(spec: NetworkSpec, q: u64, t: usize, delta: usize, what: String) -> Result<Assignment> {
    let n = spec.ell() * t;
    let code = GabidulinCode::new(q, n, delta)?;
    let r = spec.r();
    if r as u128 > code.size() {
        return Err(Error::BoundExceeded {
            what,
            r: r as u128,
            bound: code.size(),
        });
    }
    let ctx = code.base().clone();
    let id = Mat::identity(&ctx, n);
    let nodes = (0..r)
        .into_par_iter()
        .map(|i| hstack(&[&id, &code.codeword(i as u128)?]))
        .collect::<Result<Vec<_>>>()?;
    Assignment::new(spec, &ctx, t, nodes, DirectLinks::Completion)
}

/// Vector solution of `(1,2)-N_{4,r,5}` for `r <= q^(2t^2 + 2t)`, q prime.
pub fn vector_construction2(q: u64, t: usize, r: usize) -> Result<Assignment> {
    vector_one_direct(2, q, t, r)
}

/// `(1,ell)-N_{2ell,r,2ell+1}` from Gabidulin codes of `(ell t) x (ell t)`
/// matrices with distance `(ell-1) t`, `r <= q^(ell t (t+1))`. Extends the
/// `ell = 2` construction; any two nodes span `(2 ell - 1) t` dimensions and
/// `t` direct rows complete them.
pub fn vector_one_direct(ell: usize, q: u64, t: usize, r: usize) -> Result<Assignment> {
    if ell < 2 || t == 0 {
        return Err(Error::InvalidParameter(format!("need ell >= 2 and t >= 1 (ell = {ell}, t = {t})")));
    }
    let spec = NetworkSpec::new(2 * ell, r, ell, 1, 2)?;
    let what = format!("vector solution of (1,{ell})-N_{{{},r,{}}} over GF({q}), t = {t}", 2 * ell, 2 * ell + 1);
    gabidulin_pairs(spec, q, t, (ell - 1) * t, what)
}

/// `(ell-1,ell)-N_{2ell,r,3ell-1}` from Gabidulin codes of `(ell t) x (ell t)`
/// matrices with distance `t`, `r <= q^(ell(ell-1)t^2 + ell t)`, q prime.
pub fn vector_construction3(ell: usize, q: u64, t: usize, r: usize) -> Result<Assignment> {
    if ell < 2 || t == 0 {
        return Err(Error::InvalidParameter(format!("need ell >= 2 and t >= 1 (ell = {ell}, t = {t})")));
    }
    let spec = NetworkSpec::new(2 * ell, r, ell, ell - 1, 2)?;
    let what = format!(
        "vector solution of ({},{ell})-N_{{{},r,{}}} over GF({q}), t = {t}",
        ell - 1,
        2 * ell,
        3 * ell - 1
    );
    gabidulin_pairs(spec, q, t, t, what)
}

/// Node `i` sends the canonical basis of the `i`-th code member, padded with
/// zero rows to `ell t` rows. The code must live in GF(q)^(h t), have
/// members of dimension at most `ell t`, and satisfy the cover property for
/// `alpha` and `D = (h - eps) t` on its first `r` members.
pub fn vector_from_cover_code(spec: &NetworkSpec, code: &CoverCode, q: u64, t: usize) -> Result<Assignment> {
    let ctx = code.ctx().clone();
    if ctx.order() as u64 != q {
        return Err(Error::InvalidParameter(format!(
            "code is over GF({}), expected GF({q})",
            ctx.order()
        )));
    }
    let (h, ell, eps) = (spec.h(), spec.ell(), spec.eps());
    if code.ambient() != h * t {
        return Err(Error::Shape(format!("code ambient {} for h t = {}", code.ambient(), h * t)));
    }
    if code.member_dim() > ell * t {
        return Err(Error::Shape(format!(
            "member dimension {} exceeds ell t = {}",
            code.member_dim(),
            ell * t
        )));
    }
    let required = (h.saturating_sub(eps)) * t;
    if code.alpha() != spec.alpha() || code.min_dim() != required {
        return Err(Error::InvalidParameter(format!(
            "code has alpha = {}, D = {}; network needs alpha = {}, D = {required}",
            code.alpha(),
            code.min_dim(),
            spec.alpha()
        )));
    }
    let r = spec.r();
    if r > code.len() {
        return Err(Error::BoundExceeded {
            what: "cover code size".into(),
            r: r as u128,
            bound: code.len() as u128,
        });
    }
    let used = &code.members()[..r];
    let check = alpha_cover_check(used, spec.alpha(), required)?;
    if let Some((members, dim)) = check.violation {
        return Err(Error::CoverViolation { members, dim, required });
    }
    let nodes = used
        .iter()
        .map(|s| {
            let pad = Mat::zeros(&ctx, ell * t - s.dim(), h * t);
            vstack(&[s.basis(), &pad])
        })
        .collect::<Result<Vec<_>>>()?;
    let direct = if eps == 0 { DirectLinks::None } else { DirectLinks::Completion };
    Assignment::new(*spec, &ctx, t, nodes, direct)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Mds,
    Blocks,
    C1,
    C2,
    C3,
    Cover,
    ThreeMsg,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        Ok(match s {
            "mds" => Method::Mds,
            "blocks" => Method::Blocks,
            "c1" => Method::C1,
            "c2" => Method::C2,
            "c3" => Method::C3,
            "cover" => Method::Cover,
            "3msg" => Method::ThreeMsg,
            other => return Err(Error::InvalidParameter(format!("unknown method {other:?}"))),
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Mds => "mds",
            Method::Blocks => "blocks",
            Method::C1 => "c1",
            Method::C2 => "c2",
            Method::C3 => "c3",
            Method::Cover => "cover",
            Method::ThreeMsg => "3msg",
        })
    }
}

/// Runs the builder for `method` on the network and alphabet of `file`,
/// after checking that the network belongs to the builder's family.
pub fn solve(file: &NetworkFile, method: Method, cover: Option<&CoverCode>) -> Result<Assignment> {
    let spec = file.spec;
    let (h, r, ell, eps, alpha) = (spec.h(), spec.r(), spec.ell(), spec.eps(), spec.alpha());
    let family = |ok: bool, name: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("method {method} needs a {name} network, got {spec}")))
        }
    };
    let scalar = || {
        if file.t == 1 {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("method {method} is scalar; the network file has t = {}", file.t)))
        }
    };
    let combination = ell == 1 && eps == 0 && alpha == h;
    let pairs = alpha == 2 && h == 2 * ell && ell >= 2;
    match method {
        Method::Mds => {
            family(combination, "N_{h,r,h} combination")?;
            scalar()?;
            scalar_mds_solution(h, r, file.q)
        }
        Method::C1 => {
            family(combination, "N_{h,r,h} combination")?;
            vector_construction1(h, file.q, file.t, r)
        }
        Method::Blocks => {
            family(pairs && eps == ell - 1, "(ell-1,ell)-N_{2ell,r,3ell-1}")?;
            scalar()?;
            scalar_blocks_solution(ell, file.q, r)
        }
        Method::C2 => {
            family(pairs && eps == 1, "(1,ell)-N_{2ell,r,2ell+1}")?;
            vector_one_direct(ell, file.q, file.t, r)
        }
        Method::C3 => {
            family(pairs && eps == ell - 1, "(ell-1,ell)-N_{2ell,r,3ell-1}")?;
            vector_construction3(ell, file.q, file.t, r)
        }
        Method::ThreeMsg => {
            family(h == 3 && ell == 1 && eps == 1 && alpha == 3, "(1,1)-N_{3,r,4}")?;
            scalar()?;
            scalar_3msg_solution(r, file.q)
        }
        Method::Cover => {
            let code = cover.ok_or_else(|| Error::InvalidParameter("method cover needs a cover code".into()))?;
            vector_from_cover_code(&spec, code, file.q, file.t)
        }
    }
}
