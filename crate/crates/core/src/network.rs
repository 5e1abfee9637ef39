//! The three-layer generalized combination network: a source with `h`
//! messages, `r` middle nodes each fed by `ell` parallel links, and one
//! receiver per `alpha`-subset of middle nodes. Each receiver also has `eps`
//! direct links from the source.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::subspace::next_combination;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Normal,
    /// The parallel and direct links alone already carry `h` symbols.
    Trivial,
    /// Receiver in-degree below `h`.
    Unsolvable,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Normal => "normal",
            Classification::Trivial => "trivial",
            Classification::Unsolvable => "unsolvable",
        })
    }
}

/// Trivial when `ell + eps >= h`, unsolvable when `alpha*ell + eps < h`,
/// normal otherwise. Independent of `r`.
pub fn classify(h: usize, ell: usize, eps: usize, alpha: usize) -> Classification {
    if ell + eps >= h {
        Classification::Trivial
    } else if alpha * ell + eps < h {
        Classification::Unsolvable
    } else {
        Classification::Normal
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NetworkSpec {
    h: usize,
    r: usize,
    ell: usize,
    eps: usize,
    alpha: usize,
    receivers: u128,
}

impl NetworkSpec {
    pub fn new(h: usize, r: usize, ell: usize, eps: usize, alpha: usize) -> Result<NetworkSpec> {
        if h == 0 || ell == 0 || alpha == 0 {
            return Err(Error::InvalidParameter(format!(
                "need h, ell, alpha >= 1 (h = {h}, ell = {ell}, alpha = {alpha})"
            )));
        }
        if r < alpha {
            return Err(Error::InvalidParameter(format!("r = {r} is smaller than alpha = {alpha}")));
        }
        let receivers =
            binomial(r as u64, alpha as u64).ok_or_else(|| Error::Overflow(format!("C({r}, {alpha})")))?;
        Ok(NetworkSpec {
            h,
            r,
            ell,
            eps,
            alpha,
            receivers,
        })
    }

    /// The `N_{h,r,h}` combination network.
    pub fn combination(h: usize, r: usize) -> Result<NetworkSpec> {
        NetworkSpec::new(h, r, 1, 0, h)
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn eps(&self) -> usize {
        self.eps
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    /// Receiver in-degree `alpha*ell + eps`.
    pub fn s(&self) -> usize {
        self.alpha * self.ell + self.eps
    }

    /// Number of receivers, `C(r, alpha)`.
    pub fn num_receivers(&self) -> u128 {
        self.receivers
    }

    pub fn classification(&self) -> Classification {
        classify(self.h, self.ell, self.eps, self.alpha)
    }

    /// Same network with a different number of middle nodes.
    pub fn with_r(&self, r: usize) -> Result<NetworkSpec> {
        NetworkSpec::new(self.h, r, self.ell, self.eps, self.alpha)
    }

    /// Receivers in lexicographic order of their middle-node sets.
    pub fn receivers(&self) -> Receivers {
        Receivers {
            r: self.r,
            next: Some((0..self.alpha).collect()),
        }
    }

    /// Middle nodes of the receiver with lexicographic index `index`.
    pub fn receiver(&self, index: u128) -> Result<Vec<usize>> {
        if index >= self.receivers {
            return Err(Error::IndexOutOfRange {
                index,
                size: self.receivers,
            });
        }
        let mut rest = index;
        let mut out = Vec::with_capacity(self.alpha);
        let mut c = 0;
        for slot in 0..self.alpha {
            let left = (self.alpha - slot - 1) as u64;
            loop {
                // subsets whose next element is c
                let block = binomial((self.r - c - 1) as u64, left).expect("fits: bounded by C(r, alpha)");
                if rest < block {
                    break;
                }
                rest -= block;
                c += 1;
            }
            out.push(c);
            c += 1;
        }
        Ok(out)
    }

    /// Lexicographic index of a receiver given its sorted middle-node set.
    pub fn receiver_index(&self, nodes: &[usize]) -> Result<u128> {
        if nodes.len() != self.alpha || nodes.windows(2).any(|w| w[0] >= w[1]) || nodes.iter().any(|&i| i >= self.r) {
            return Err(Error::InvalidParameter(format!("{nodes:?} is not a receiver of this network")));
        }
        let mut index = 0u128;
        let mut c = 0;
        for (slot, &node) in nodes.iter().enumerate() {
            let left = (self.alpha - slot - 1) as u64;
            while c < node {
                index += binomial((self.r - c - 1) as u64, left).expect("fits");
                c += 1;
            }
            c += 1;
        }
        Ok(index)
    }
}

impl fmt::Display for NetworkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})-N_{{{},{},{}}} alpha={} receivers={}",
            self.eps,
            self.ell,
            self.h,
            self.r,
            self.s(),
            self.alpha,
            self.receivers
        )
    }
}

pub struct Receivers {
    r: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for Receivers {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if next_combination(&mut succ, self.r) {
            self.next = Some(succ);
        }
        Some(cur)
    }
}

/// A network together with its intended alphabet: vectors of length `t` over
/// GF(q), `t = 1` meaning scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetworkFile {
    pub spec: NetworkSpec,
    pub q: u64,
    pub t: usize,
}

const KEYS: [&str; 7] = ["h", "r", "ell", "eps", "alpha", "q", "t"];

impl NetworkFile {
    pub fn to_text(&self) -> String {
        let s = &self.spec;
        format!(
            "h: {}\nr: {}\nell: {}\neps: {}\nalpha: {}\nq: {}\nt: {}\n",
            s.h, s.r, s.ell, s.eps, s.alpha, self.q, self.t
        )
    }

    /// Parses `key: value` lines. Blank lines and `#` comments are skipped;
    /// every key is required exactly once.
    pub fn parse(text: &str) -> Result<NetworkFile> {
        let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
        NetworkFile::parse_lines(&lines)
    }

    pub(crate) fn parse_lines(lines: &[(usize, &str)]) -> Result<NetworkFile> {
        let mut values = BTreeMap::new();
        let mut last = 0;
        for &(n, raw) in lines {
            last = n;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(n, format!("expected `key: value`, found {line:?}")))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(Error::parse(n, format!("unknown key {key:?}")));
            }
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::parse(n, format!("bad value for {key}: {:?}", value.trim())))?;
            if values.insert(key, value).is_some() {
                return Err(Error::parse(n, format!("duplicate key {key:?}")));
            }
        }
        let get = |k: &str| values.get(k).copied().ok_or_else(|| Error::parse(last, format!("missing key {k:?}")));
        let spec = NetworkSpec::new(
            get("h")? as usize,
            get("r")? as usize,
            get("ell")? as usize,
            get("eps")? as usize,
            get("alpha")? as usize,
        )
        .map_err(|e| Error::parse(last, e.to_string()))?;
        let t = get("t")? as usize;
        if t == 0 {
            return Err(Error::parse(last, "t must be at least 1"));
        }
        Ok(NetworkFile { spec, q: get("q")?, t })
    }
}
