//! Searching for large cover codes: sets of `k`-dimensional subspaces of
//! F_q^n in which every `alpha` members span at least `min_dim` dimensions.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::linalg::vstack;
use crate::subspace::{enumerate_grassmannian, CoverCode, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Branch and bound over all candidates; tiny parameters only.
    Exhaustive,
    /// One pass in Grassmannian enumeration order.
    Greedy,
    /// One greedy pass over a seeded shuffle of the candidates.
    Randomized,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "greedy" => Ok(Strategy::Greedy),
            "randomized" => Ok(Strategy::Randomized),
            other => Err(Error::InvalidParameter(format!("unknown strategy {other:?}"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::Greedy => "greedy",
            Strategy::Randomized => "randomized",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchParams {
    pub n: usize,
    pub k: usize,
    pub alpha: usize,
    pub min_dim: usize,
    pub q: u64,
    pub strategy: Strategy,
    /// Candidate evaluations (greedy, randomized) or search nodes (exhaustive).
    pub budget: u64,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub code: CoverCode,
    pub params: SearchParams,
    /// True when the budget ran out before the search finished.
    pub exhausted: bool,
    pub steps: u64,
}

/// Span sums of every `j`-subset of the chosen members, `j = 1..alpha-1`.
/// Top-level sums that already reach `min_dim` are dropped: no member added
/// to them can violate the property.
#[derive(Clone)]
struct SumCache {
    alpha: usize,
    min_dim: usize,
    levels: Vec<Vec<Subspace>>,
    chosen: usize,
}

impl SumCache {
    fn new(alpha: usize, min_dim: usize) -> SumCache {
        SumCache {
            alpha,
            min_dim,
            levels: vec![Vec::new(); alpha.saturating_sub(1)],
            chosen: 0,
        }
    }

    fn admits(&self, cand: &Subspace) -> Result<bool> {
        if self.alpha == 1 {
            return Ok(cand.dim() >= self.min_dim);
        }
        if self.chosen + 1 < self.alpha {
            return Ok(true);
        }
        for s in &self.levels[self.alpha - 2] {
            if vstack(&[s.basis(), cand.basis()])?.rank() < self.min_dim {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn push(&mut self, cand: &Subspace) -> Result<()> {
        let top = self.levels.len();
        for j in (1..top).rev() {
            let extended = self.levels[j - 1]
                .iter()
                .map(|s| s.sum(cand))
                .collect::<Result<Vec<_>>>()?;
            let keep_all = j + 1 < top;
            self.levels[j].extend(extended.into_iter().filter(|s| keep_all || s.dim() < self.min_dim));
        }
        if top > 0
            && (top > 1 || cand.dim() < self.min_dim) {
                self.levels[0].push(cand.clone());
            }
        self.chosen += 1;
        Ok(())
    }
}

pub fn greedy_cover_search(params: SearchParams) -> Result<SearchOutcome> {
    let SearchParams { n, k, alpha, min_dim, q, .. } = params;
    if alpha == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need alpha >= 1 and k <= n (alpha = {alpha}, k = {k}, n = {n})"
        )));
    }
    let ctx = FieldCtx::of_order(q)?;
    let mut candidates: Vec<Subspace> = enumerate_grassmannian(n, k, q)?.collect();
    if params.strategy == Strategy::Randomized {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        candidates.shuffle(&mut rng);
    }
    let (chosen, exhausted, steps) = match params.strategy {
        Strategy::Greedy | Strategy::Randomized => greedy_pass(&candidates, alpha, min_dim, params.budget)?,
        Strategy::Exhaustive => branch_and_bound(&candidates, alpha, min_dim, params.budget)?,
    };
    let members = chosen.into_iter().map(|i| candidates[i].clone()).collect();
    Ok(SearchOutcome {
        code: CoverCode::new(&ctx, n, members, alpha, min_dim)?,
        params,
        exhausted,
        steps,
    })
}

fn greedy_pass(candidates: &[Subspace], alpha: usize, min_dim: usize, budget: u64) -> Result<(Vec<usize>, bool, u64)> {
    let mut cache = SumCache::new(alpha, min_dim);
    let mut chosen = Vec::new();
    let mut steps = 0;
    for (i, cand) in candidates.iter().enumerate() {
        if steps == budget {
            return Ok((chosen, true, steps));
        }
        steps += 1;
        if cache.admits(cand)? {
            cache.push(cand)?;
            chosen.push(i);
        }
    }
    Ok((chosen, false, steps))
}

struct Bnb<'a> {
    candidates: &'a [Subspace],
    best: Vec<usize>,
    budget: u64,
    steps: u64,
}

impl Bnb<'_> {
    fn visit(&mut self, next: usize, chosen: &mut Vec<usize>, cache: &SumCache) -> Result<bool> {
        if self.steps == self.budget {
            return Ok(false);
        }
        self.steps += 1;
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        for i in next..self.candidates.len() {
            if chosen.len() + (self.candidates.len() - i) <= self.best.len() {
                break;
            }
            let cand = &self.candidates[i];
            if !cache.admits(cand)? {
                continue;
            }
            let mut child = cache.clone();
            child.push(cand)?;
            chosen.push(i);
            let finished = self.visit(i + 1, chosen, &child)?;
            chosen.pop();
            if !finished {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn branch_and_bound(candidates: &[Subspace], alpha: usize, min_dim: usize, budget: u64) -> Result<(Vec<usize>, bool, u64)> {
    let mut bnb = Bnb {
        candidates,
        best: Vec::new(),
        budget,
        steps: 0,
    };
    let finished = bnb.visit(0, &mut Vec::new(), &SumCache::new(alpha, min_dim))?;
    Ok((bnb.best, !finished, bnb.steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binomial;
    use crate::subspace::alpha_cover_check;

    fn params(n: usize, k: usize, alpha: usize, min_dim: usize, q: u64, strategy: Strategy) -> SearchParams {
        SearchParams {
            n,
            k,
            alpha,
            min_dim,
            q,
            strategy,
            budget: 1_000_000,
            seed: 1,
        }
    }

    /// Largest subset of `set` with the cover property, by trying every subset.
    fn brute_max(set: &[Subspace], alpha: usize, min_dim: usize) -> usize {
        let n = set.len();
        (0u32..1 << n)
            .filter(|mask| {
                let members: Vec<Subspace> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| set[i].clone()).collect();
                members.len() < alpha || alpha_cover_check(&members, alpha, min_dim).unwrap().holds
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn exhaustive_lines_of_the_plane() {
        let out = greedy_cover_search(params(2, 1, 2, 2, 2, Strategy::Exhaustive)).unwrap();
        assert_eq!(out.code.len(), 3);
        assert!(!out.exhausted);
    }

    #[test]
    fn exhaustive_matches_brute_force() {
        // Points of PG(2,2) with no three collinear: the largest such set is an oval of size 4.
        let pts: Vec<Subspace> = enumerate_grassmannian(3, 1, 2).unwrap().collect();
        let brute = brute_max(&pts, 3, 3);
        assert_eq!(brute, 4);
        let out = greedy_cover_search(params(3, 1, 3, 3, 2, Strategy::Exhaustive)).unwrap();
        assert_eq!(out.code.len(), brute);
        assert!(out.code.check().unwrap().holds);

        // Pairs of lines of F_3^3 spanning everything: distinct points, all 13.
        let out = greedy_cover_search(params(3, 1, 2, 2, 3, Strategy::Exhaustive)).unwrap();
        assert_eq!(out.code.len(), 13);
    }

    #[test]
    fn pairwise_search_gives_distance_codes() {
        for strategy in [Strategy::Greedy, Strategy::Randomized] {
            let out = greedy_cover_search(params(6, 3, 2, 5, 2, strategy)).unwrap();
            let m = out.code.members();
            for i in 0..m.len() {
                for j in i + 1..m.len() {
                    assert!(m[i].distance(&m[j]).unwrap() >= 2 * (5 - 3));
                }
            }
            assert!(out.code.check().unwrap().holds);
        }
    }

    #[test]
    fn budget_cuts_the_search_short() {
        let mut p = params(4, 2, 2, 3, 2, Strategy::Greedy);
        p.budget = 10;
        let out = greedy_cover_search(p).unwrap();
        assert!(out.exhausted);
        assert_eq!(out.steps, 10);
        assert!(out.code.check().unwrap().holds);

        let mut p = params(4, 2, 3, 4, 2, Strategy::Exhaustive);
        p.budget = 50;
        let out = greedy_cover_search(p).unwrap();
        assert!(out.exhausted);
        assert!(out.code.check().unwrap().holds);
    }

    #[test]
    fn randomized_is_seed_deterministic() {
        let a = greedy_cover_search(params(5, 2, 3, 4, 2, Strategy::Randomized)).unwrap();
        let b = greedy_cover_search(params(5, 2, 3, 4, 2, Strategy::Randomized)).unwrap();
        assert_eq!(a.code, b.code);
        assert!(a.code.check().unwrap().holds);
    }

    #[test]
    fn greedy_triples_in_f2_6() {
        let out = greedy_cover_search(params(6, 2, 3, 4, 2, Strategy::Greedy)).unwrap();
        let check = out.code.check().unwrap();
        assert!(check.holds);
        assert_eq!(check.checked as u128, binomial(out.code.len() as u64, 3).unwrap());
    }

    #[test]
    fn strategy_names() {
        for s in [Strategy::Exhaustive, Strategy::Greedy, Strategy::Randomized] {
            assert_eq!(s.to_string().parse::<Strategy>().unwrap(), s);
        }
        assert!("best".parse::<Strategy>().is_err());
    }
}
