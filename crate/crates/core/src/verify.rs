//! Receiver-by-receiver checking of an [`Assignment`]: transfer-matrix ranks
//! and end-to-end decoding of simulated packets.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{hstack, vstack, Mat};
use crate::solver::Assignment;

/// Receiver count above which [`check_all`] samples when no sample is asked for.
pub const FULL_CHECK_LIMIT: u128 = 1_000_000;
/// Sample size used above [`FULL_CHECK_LIMIT`].
pub const DEFAULT_SAMPLE: u64 = 100_000;

/// A seeded uniform sample of receivers, drawn without replacement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sample {
    pub count: u64,
    pub seed: u64,
}

/// Transfer matrix of receiver `index`: its node matrices in ascending node
/// order, then its direct-link rows.
pub fn transfer_matrix(a: &Assignment, index: u128) -> Result<Mat> {
    let nodes = a.spec().receiver(index)?;
    let stacked = a.stacked_nodes(&nodes)?;
    match a.direct_rows(index, &stacked)? {
        Some(p) => vstack(&[&stacked, &p]),
        None => Ok(stacked),
    }
}

/// Receiver indices to visit, ascending.
fn selection(total: u128, sample_opt: Option<Sample>) -> Vec<u128> {
    let chosen = match sample_opt {
        Some(s) if (s.count as u128) < total => Some(s),
        Some(_) => None,
        None if total > FULL_CHECK_LIMIT => Some(Sample {
            count: DEFAULT_SAMPLE,
            seed: 0,
        }),
        None => None,
    };
    let Some(s) = chosen else {
        return (0..total).collect();
    };
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut picked: Vec<u128> = match usize::try_from(total) {
        Ok(n) => sample(&mut rng, n, s.count as usize).into_iter().map(|i| i as u128).collect(),
        Err(_) => {
            let mut set = BTreeSet::new();
            while (set.len() as u64) < s.count {
                set.insert(rng.gen_range(0..total));
            }
            set.into_iter().collect()
        }
    };
    picked.sort_unstable();
    picked
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub network: String,
    pub q: u64,
    pub t: usize,
    /// Rank a receiver needs, `h t`.
    pub target: usize,
    pub total: u128,
    pub sample: Option<Sample>,
    /// `(receiver, rank)` for every checked receiver, by receiver index.
    pub ranks: Vec<(u128, usize)>,
}

impl VerifyReport {
    pub fn checked(&self) -> u64 {
        self.ranks.len() as u64
    }

    pub fn passed(&self) -> u64 {
        self.ranks.iter().filter(|&&(_, k)| k == self.target).count() as u64
    }

    pub fn failures(&self) -> Vec<(u128, usize)> {
        self.ranks.iter().copied().filter(|&(_, k)| k != self.target).collect()
    }

    pub fn all_pass(&self) -> bool {
        self.ranks.iter().all(|&(_, k)| k == self.target)
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "network {}\nalphabet GF({})^{}\nreceivers checked {}/{}",
            self.network,
            self.q,
            self.t,
            self.checked(),
            self.total
        );
        if let Some(sm) = self.sample {
            let _ = write!(s, " (sample of {} with seed {})", sm.count, sm.seed);
        }
        let _ = write!(s, "\npassed {}/{}\n", self.passed(), self.checked());
        let failures = self.failures();
        if !failures.is_empty() {
            let _ = writeln!(s, "failures {}", failures.len());
            for (id, k) in failures {
                let _ = writeln!(s, "  receiver {id} rank {k} < {}", self.target);
            }
        }
        s
    }

    /// One `receiver <id> rank <k> <pass|fail>` line per checked receiver.
    pub fn lines(&self) -> String {
        let mut s = String::new();
        for &(id, k) in &self.ranks {
            let verdict = if k == self.target { "pass" } else { "fail" };
            let _ = writeln!(s, "receiver {id} rank {k} {verdict}");
        }
        s
    }
}

/// Rank of every receiver's transfer matrix (or of a seeded sample). Full
/// coverage up to [`FULL_CHECK_LIMIT`] receivers unless a smaller sample is
/// given.
pub fn check_all(a: &Assignment, sample_opt: Option<Sample>) -> Result<VerifyReport> {
    let total = a.spec().num_receivers();
    let ids = selection(total, sample_opt);
    let sample_used = if (ids.len() as u128) < total {
        Some(sample_opt.unwrap_or(Sample {
            count: DEFAULT_SAMPLE,
            seed: 0,
        }))
    } else {
        None
    };
    let ranks = ids
        .par_iter()
        .map(|&id| transfer_matrix(a, id).map(|m| (id, m.rank())))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        network: a.spec().to_string(),
        q: a.q(),
        t: a.t(),
        target: a.spec().h() * a.t(),
        total,
        sample: sample_used,
        ranks,
    })
}

/// A packet altered in transit: `delta` is added to row `row` of the packets
/// arriving at `receiver`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corruption {
    pub receiver: u128,
    pub row: usize,
    pub delta: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decoded {
    Exact,
    /// Decoded messages differ from the ones sent.
    Mismatch(Vec<Vec<u32>>),
    /// The received packets admit no solution.
    Inconsistent,
    /// Transfer matrix rank below `h t`.
    RankDeficient(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimReport {
    pub outcomes: Vec<(u128, Decoded)>,
}

impl SimReport {
    pub fn exact(&self) -> usize {
        self.outcomes.iter().filter(|(_, d)| *d == Decoded::Exact).count()
    }

    pub fn all_exact(&self) -> bool {
        self.exact() == self.outcomes.len()
    }

    pub fn failures(&self) -> Vec<&(u128, Decoded)> {
        self.outcomes.iter().filter(|(_, d)| *d != Decoded::Exact).collect()
    }
}

/// Sends `messages` (`h` vectors of length `t`) through the network: middle
/// nodes emit `G_i x`, direct links `P x`, and each receiver solves its
/// system. Receivers as in [`check_all`].
pub fn simulate(
    a: &Assignment,
    messages: &[Vec<u32>],
    sample_opt: Option<Sample>,
    corruption: Option<Corruption>,
) -> Result<SimReport> {
    let (h, t) = (a.spec().h(), a.t());
    if messages.len() != h || messages.iter().any(|m| m.len() != t) {
        return Err(Error::Shape(format!("expected {h} messages of length {t}")));
    }
    let ctx = a.ctx();
    let flat: Vec<u32> = messages
        .iter()
        .flatten()
        .map(|&v| ctx.check(v as u64))
        .collect::<Result<_>>()?;
    let x = Mat::from_vec(ctx, h * t, 1, flat.clone())?;
    let ids = selection(a.spec().num_receivers(), sample_opt);
    let outcomes = ids
        .par_iter()
        .map(|&id| {
            let m = transfer_matrix(a, id)?;
            let mut y = m.mul(&x)?;
            if let Some(c) = corruption.filter(|c| c.receiver == id) {
                if c.row >= y.rows() {
                    return Err(Error::Shape(format!("receiver {id} has {} packets", y.rows())));
                }
                let v = ctx.add(y.get(c.row, 0), ctx.check(c.delta as u64)?);
                y.set(c.row, 0, v);
            }
            let outcome = match m.solve(&y) {
                Ok(sol) if sol.data() == flat.as_slice() => Decoded::Exact,
                Ok(sol) => Decoded::Mismatch(sol.data().chunks(t).map(<[u32]>::to_vec).collect()),
                Err(Error::Inconsistent) => Decoded::Inconsistent,
                Err(Error::RankDeficient { rank, .. }) => Decoded::RankDeficient(rank),
                Err(e) => return Err(e),
            };
            Ok((id, outcome))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimReport { outcomes })
}

/// Uniformly random messages for `a`.
pub fn random_messages(a: &Assignment, rng: &mut impl Rng) -> Vec<Vec<u32>> {
    let q = a.ctx().order();
    (0..a.spec().h())
        .map(|_| (0..a.t()).map(|_| rng.gen_range(0..q)).collect())
        .collect()
}

/// Outcome of repeated simulations with random messages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialsReport {
    pub trials: usize,
    pub seed: u64,
    /// Receivers decoded per trial.
    pub receivers: usize,
    /// `(trial, receiver, outcome)` for every receiver that did not decode exactly.
    pub failures: Vec<(usize, u128, Decoded)>,
}

/// `trials` runs of [`simulate`] with messages drawn from a generator
/// seeded with `seed`.
pub fn simulate_trials(a: &Assignment, trials: usize, seed: u64, sample_opt: Option<Sample>) -> Result<TrialsReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut receivers = 0;
    for trial in 0..trials {
        let x = random_messages(a, &mut rng);
        let rep = simulate(a, &x, sample_opt, None)?;
        receivers = rep.outcomes.len();
        failures.extend(rep.outcomes.into_iter().filter(|(_, d)| *d != Decoded::Exact).map(|(id, d)| (trial, id, d)));
    }
    Ok(TrialsReport {
        trials,
        seed,
        receivers,
        failures,
    })
}

/// Block matrix with one block row `[I | C | C^2 | ... | C^(h-1)]` per member.
pub fn block_vandermonde(members: &[Mat], h: usize) -> Result<Mat> {
    let first = members
        .first()
        .ok_or_else(|| Error::InvalidParameter("no members".into()))?;
    let t = first.rows();
    let rows = members
        .iter()
        .map(|c| {
            if c.rows() != t || c.cols() != t {
                return Err(Error::Shape("members must be square of one size".into()));
            }
            let mut blocks = Vec::with_capacity(h);
            let mut power = Mat::identity(c.ctx(), t);
            for _ in 0..h {
                let next = power.mul(c)?;
                blocks.push(power);
                power = next;
            }
            let refs: Vec<&Mat> = blocks.iter().collect();
            hstack(&refs)
        })
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&Mat> = rows.iter().collect();
    vstack(&refs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::NetworkSpec;
    use crate::rankmetric::CompanionCode;
    use crate::solver::{
        scalar_3msg_solution, scalar_blocks_solution, scalar_mds_solution, vector_construction1, vector_construction2,
        vector_construction3, DirectLinks,
    };

    #[test]
    fn construction1_report() {
        let a = vector_construction1(3, 2, 2, 5).unwrap();
        let rep = check_all(&a, None).unwrap();
        assert_eq!((rep.passed(), rep.checked(), rep.total), (10, 10, 10));
        assert!(rep.all_pass());
        assert_eq!(rep.lines().lines().next().unwrap(), "receiver 0 rank 6 pass");
        assert!(rep.summary().contains("passed 10/10"));
    }

    #[test]
    fn transfer_matrix_shapes() {
        let a = vector_construction1(3, 2, 2, 5).unwrap();
        let m = transfer_matrix(&a, 0).unwrap();
        assert_eq!((m.rows(), m.cols()), (6, 6));
        let a = vector_construction2(2, 2, 5).unwrap();
        let m = transfer_matrix(&a, 3).unwrap();
        assert_eq!((m.rows(), m.cols()), (10, 8));
    }

    #[test]
    fn zeroed_node_fails_its_receivers() {
        let a = vector_construction2(2, 1, 8).unwrap();
        let mut nodes = a.nodes().to_vec();
        nodes[3] = Mat::zeros(a.ctx(), 2, 4);
        let bad = Assignment::new(*a.spec(), a.ctx(), 1, nodes, DirectLinks::Completion).unwrap();
        let rep = check_all(&bad, None).unwrap();
        let failed: Vec<Vec<usize>> = rep
            .failures()
            .iter()
            .map(|&(id, _)| bad.spec().receiver(id).unwrap())
            .collect();
        assert_eq!(failed.len(), 7);
        assert!(failed.iter().all(|rec| rec.contains(&3)));
        assert_eq!(rep.passed() + rep.failures().len() as u64, rep.checked());
    }

    #[test]
    fn sampling_is_seeded_and_sorted() {
        let a = scalar_blocks_solution(2, 2, 35).unwrap();
        let s = Some(Sample { count: 50, seed: 7 });
        let r1 = check_all(&a, s).unwrap();
        let r2 = check_all(&a, s).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(r1.checked(), 50);
        assert!(r1.ranks.windows(2).all(|w| w[0].0 < w[1].0));
        assert!(r1.summary().contains("sample of 50 with seed 7"));
        let full = check_all(&a, Some(Sample { count: 10_000, seed: 1 })).unwrap();
        assert_eq!(full.checked(), 595);
        assert_eq!(full.sample, None);
    }

    #[test]
    fn huge_receiver_counts_sample() {
        let ids = selection(1u128 << 100, Some(Sample { count: 30, seed: 3 }));
        assert_eq!(ids.len(), 30);
        assert!(ids.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(selection(2_000_000, None).len(), DEFAULT_SAMPLE as usize);
    }

    #[test]
    fn simulate_decodes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for a in [
            vector_construction1(3, 2, 2, 5).unwrap(),
            vector_construction2(2, 1, 16).unwrap(),
            vector_construction3(3, 2, 1, 12).unwrap(),
            scalar_mds_solution(3, 6, 4).unwrap(),
            scalar_3msg_solution(14, 2).unwrap(),
        ] {
            let zero = vec![vec![0; a.t()]; a.spec().h()];
            assert!(simulate(&a, &zero, None, None).unwrap().all_exact());
            for _ in 0..5 {
                let x = random_messages(&a, &mut rng);
                let rep = simulate(&a, &x, None, None).unwrap();
                assert_eq!(rep.exact() as u128, a.spec().num_receivers());
            }
        }
    }

    #[test]
    fn corrupted_packet_is_reported() {
        let a = vector_construction1(3, 2, 2, 5).unwrap();
        let x = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        let rep = simulate(&a, &x, None, Some(Corruption { receiver: 4, row: 2, delta: 1 })).unwrap();
        let bad = rep.failures();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].0, 4);
        assert!(matches!(bad[0].1, Decoded::Mismatch(_)));

        // redundant packets make a corruption detectable
        let a = vector_construction2(2, 1, 16).unwrap();
        let x = vec![vec![1], vec![0], vec![1], vec![1]];
        let rep = simulate(&a, &x, None, Some(Corruption { receiver: 0, row: 0, delta: 1 })).unwrap();
        assert_eq!(rep.failures().len(), 1);
        assert!(simulate(&a, &x[..3], None, None).is_err());
    }

    #[test]
    fn rank_deficient_receivers_do_not_panic() {
        let a = scalar_mds_solution(2, 3, 2).unwrap();
        let spec = NetworkSpec::combination(2, 3).unwrap();
        let mut nodes = a.nodes().to_vec();
        nodes[1] = nodes[0].clone();
        let bad = Assignment::new(spec, a.ctx(), 1, nodes, DirectLinks::None).unwrap();
        let rep = simulate(&bad, &[vec![1], vec![1]], None, None).unwrap();
        assert_eq!(rep.failures().len(), 1);
        assert_eq!(rep.failures()[0].1, Decoded::RankDeficient(1));
    }

    #[test]
    fn block_vandermonde_examples() {
        let code = CompanionCode::new(2, 2).unwrap();
        let m = block_vandermonde(&code.members()[1..4], 3).unwrap();
        assert_eq!((m.rows(), m.cols(), m.rank()), (6, 6, 6));
        let one = block_vandermonde(&code.members()[2..3], 1).unwrap();
        assert_eq!(one, Mat::identity(code.base(), 2));
        let rep = [code.members()[2].clone(), code.members()[2].clone(), code.members()[3].clone()];
        assert!(block_vandermonde(&rep, 3).unwrap().rank() < 6);
        assert!(block_vandermonde(&[], 2).is_err());
    }

    #[test]
    fn seeded_trials() {
        let a = vector_construction1(4, 2, 2, 5).unwrap();
        let rep = simulate_trials(&a, 20, 5, None).unwrap();
        assert_eq!((rep.trials, rep.receivers), (20, 5));
        assert!(rep.failures.is_empty());
        assert_eq!(rep, simulate_trials(&a, 20, 5, None).unwrap());
    }

    #[test]
    fn loaded_assignment_verifies_the_same() {
        let a = vector_construction2(2, 1, 10).unwrap();
        let b = Assignment::from_text(&a.to_text().unwrap()).unwrap();
        assert_eq!(check_all(&a, None).unwrap(), check_all(&b, None).unwrap());
    }
}
