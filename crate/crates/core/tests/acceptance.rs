//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{bit_rows, choose, gaussian_binomial_product, is_prime_power, oracle_rank, rank_gf2, subsets};
use vecnet_core::analyze::{gap_table, ScalarSide};
use vecnet_core::linalg::hstack;
use vecnet_core::network::{classify, Classification};
use vecnet_core::rankmetric::{min_rank_distance, CompanionCode, GabidulinCode};
use vecnet_core::search::{greedy_cover_search, SearchParams, Strategy};
use vecnet_core::solver::{
    scalar_blocks_solution, scalar_mds_solution, three_msg_max_r, vector_construction1, vector_construction2,
    vector_from_cover_code,
};
use vecnet_core::subspace::{alpha_cover_check, binary_cover_51};
use vecnet_core::verify::{block_vandermonde, check_all, random_messages, simulate, transfer_matrix, Sample};
use vecnet_core::{CoverCode, FieldCtx, Mat, NetworkSpec};

type Check = fn() -> Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Every triple of the 51 members spans at least 4 dimensions, by bit-mask rank.
fn triples_span_four(code: &CoverCode) -> bool {
    let bits: Vec<Vec<u64>> = code.members().iter().map(|m| bit_rows(m.basis())).collect();
    let n = bits.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let rows: Vec<u64> = bits[i].iter().chain(&bits[j]).chain(&bits[k]).copied().collect();
                if rank_gf2(&rows) < 4 {
                    return false;
                }
            }
        }
    }
    true
}

fn criterion1() -> Result<String, String> {
    let code = binary_cover_51();
    ensure!(code.len() == 51, "{} members", code.len());
    ensure!(code.members().iter().all(|m| m.dim() == 2), "a member is not 2-dimensional");
    ensure!(code.members().iter().collect::<HashSet<_>>().len() == 51, "members repeat");
    let check = alpha_cover_check(code.members(), 3, 4).map_err(|e| e.to_string())?;
    ensure!(check.holds, "violation {:?}", check.violation);
    ensure!(check.checked == choose(51, 3), "checked {} triples", check.checked);
    ensure!(triples_span_four(&code), "bit-mask oracle finds a deficient triple");
    Ok(format!("51 members, {} triples span >= 4", check.checked))
}

fn criterion2() -> Result<String, String> {
    let q_s = 4u128;
    let oracle = 2 * (q_s * q_s + q_s + 1);
    let bound = three_msg_max_r(4).map_err(|e| e.to_string())?;
    ensure!(bound == 42 && oracle == 42, "scalar bound {bound}");
    let code = binary_cover_51();
    let spec = NetworkSpec::new(3, 51, 1, 1, 3).map_err(|e| e.to_string())?;
    let a = vector_from_cover_code(&spec, &code, 2, 2).map_err(|e| e.to_string())?;
    let rep = check_all(&a, None).map_err(|e| e.to_string())?;
    ensure!(rep.total == 20_825 && rep.passed() == 20_825, "{}/{}", rep.passed(), rep.total);
    for id in (0..20_825u128).step_by(97) {
        let m = transfer_matrix(&a, id).map_err(|e| e.to_string())?;
        ensure!(rank_gf2(&bit_rows(&m)) == 6, "oracle rank fails at receiver {id}");
    }
    Ok(format!("r = 51 > {bound}, receivers {}/{}", rep.passed(), rep.total))
}

fn criterion3() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut parts = Vec::new();
    for (h, want) in [(3usize, 10u128), (4, 5)] {
        let a = vector_construction1(h, 2, 2, 5).map_err(|e| e.to_string())?;
        let rep = check_all(&a, None).map_err(|e| e.to_string())?;
        ensure!(rep.total == want && rep.passed() as u128 == want, "h={h}: {}/{}", rep.passed(), rep.total);
        for id in 0..want {
            let m = transfer_matrix(&a, id).map_err(|e| e.to_string())?;
            ensure!(oracle_rank(&m, 2) == 2 * h, "h={h} oracle rank fails at {id}");
        }
        for _ in 0..20 {
            let x = random_messages(&a, &mut rng);
            let sim = simulate(&a, &x, None, None).map_err(|e| e.to_string())?;
            ensure!(sim.all_exact(), "h={h}: decode failures {:?}", sim.failures());
        }
        parts.push(format!("h={h} {}/{}", rep.passed(), rep.total));
    }
    Ok(format!("{}, 20 decodes each", parts.join(", ")))
}

fn criterion4() -> Result<String, String> {
    let t = 1u32;
    let bound = 2u128.pow(2 * t * (t + 1));
    ensure!(bound == 16, "bound {bound}");
    let a = vector_construction2(2, 1, 16).map_err(|e| e.to_string())?;
    let rep = check_all(&a, None).map_err(|e| e.to_string())?;
    ensure!(rep.passed() == 120 && rep.total == 120, "{}/{}", rep.passed(), rep.total);
    for id in 0..120 {
        let m = transfer_matrix(&a, id).map_err(|e| e.to_string())?;
        ensure!(rank_gf2(&bit_rows(&m)) == 4, "oracle rank fails at {id}");
    }
    ensure!(vector_construction2(2, 1, 17).is_err(), "r = 17 accepted");
    Ok("120/120, r = 17 rejected".into())
}

fn criterion5() -> Result<String, String> {
    let bound2 = gaussian_binomial_product(4, 2, 2);
    ensure!(bound2 == 35, "[4 2]_2 = {bound2}");
    let a = scalar_blocks_solution(2, 2, 35).map_err(|e| e.to_string())?;
    let rep = check_all(&a, None).map_err(|e| e.to_string())?;
    ensure!(rep.passed() == 595 && rep.total == 595, "{}/{}", rep.passed(), rep.total);
    ensure!(scalar_blocks_solution(2, 2, 36).is_err(), "r = 36 accepted");
    let bound3 = gaussian_binomial_product(6, 3, 2);
    ensure!(bound3 == 1395, "[6 3]_2 = {bound3}");
    let a = scalar_blocks_solution(3, 2, 1395).map_err(|e| e.to_string())?;
    let rep = check_all(&a, Some(Sample { count: 10_000, seed: 5 })).map_err(|e| e.to_string())?;
    ensure!(rep.checked() == 10_000 && rep.all_pass(), "sample {}/{}", rep.passed(), rep.checked());
    ensure!(scalar_blocks_solution(3, 2, 1396).is_err(), "r = 1396 accepted");
    Ok(format!("595/595, r=36 rejected, r=1395 sample {}/{}", rep.passed(), rep.checked()))
}

/// Windows: every `l` block rows and `l` consecutive block
/// columns of the block Vandermonde matrix have rank `l t`.
fn windows_full_rank(m: &Mat, h: usize, t: usize, p: u64, nonzero: bool) -> bool {
    for l in 1..=h {
        for rows in subsets(h, l) {
            let starts = if nonzero { 0..=h - l } else { 0..=0 };
            for j in starts {
                let mut sub = Vec::new();
                for &br in &rows {
                    for i in 0..t {
                        let row = m.row(br * t + i);
                        sub.push(row[j * t..(j + l) * t].iter().map(|&v| v as u64).collect::<Vec<_>>());
                    }
                }
                if common::rank_mod_p(&sub, p) != l * t {
                    return false;
                }
            }
        }
    }
    true
}

fn criterion6() -> Result<String, String> {
    let mut checked = 0u64;
    for (q, t) in [(2u64, 2usize), (2, 3), (3, 2), (2, 4)] {
        let code = CompanionCode::new(q, t).map_err(|e| e.to_string())?;
        let members = code.members();
        ensure!(members.len() as u64 == q.pow(t as u32), "q^t members");
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                let d = members[i].sub(&members[j]).map_err(|e| e.to_string())?;
                ensure!(oracle_rank(&d, q) == t, "q={q} t={t}: rank(C_{i} - C_{j}) != t");
                checked += 1;
            }
        }
        for h in 2..=4usize {
            for set in subsets(members.len(), h) {
                let chosen: Vec<Mat> = set.iter().map(|&i| members[i].clone()).collect();
                let m = block_vandermonde(&chosen, h).map_err(|e| e.to_string())?;
                // windows off the first block column need nonzero members
                let nonzero = !set.contains(&0);
                ensure!(windows_full_rank(&m, h, t, q, nonzero), "q={q} t={t} h={h} members {set:?}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} difference and block checks"))
}

fn criterion7() -> Result<String, String> {
    let mut compared = 0;
    for t in 1..=3usize {
        let code = CompanionCode::new(2, t).map_err(|e| e.to_string())?;
        let ext = FieldCtx::new(2, t as u32, None).map_err(|e| e.to_string())?;
        ensure!(code.poly() == ext.polynomial(), "t={t}: polynomials differ");
        let big_q = 1usize << t;
        for h in 2..=3usize {
            let mut rs = vec![big_q + 1];
            if h == 3 && big_q >= 4 {
                rs.push(big_q + 2);
            }
            for r in rs {
                if r < h {
                    continue;
                }
                let scalar = scalar_mds_solution(h, r, big_q as u64).map_err(|e| e.to_string())?;
                let vector = vector_construction1(h, 2, t, r).map_err(|e| e.to_string())?;
                for (i, (g, v)) in scalar.nodes().iter().zip(vector.nodes()).enumerate() {
                    let blocks: Vec<&Mat> = g.row(0).iter().map(|&a| code.embed(&ext, a)).collect();
                    let mapped = hstack(&blocks).map_err(|e| e.to_string())?;
                    ensure!(mapped.to_text() == v.to_text(), "t={t} h={h} r={r} node {i} differs");
                    compared += 1;
                }
            }
        }
    }
    Ok(format!("{compared} node matrices equal after mapping"))
}

fn criterion8() -> Result<String, String> {
    let mut n = 0;
    for h in 1..=8usize {
        for ell in 1..=4usize {
            for eps in 0..=6usize {
                for alpha in [2usize, 3] {
                    let literal = if ell + eps >= h {
                        Classification::Trivial
                    } else if alpha * ell + eps < h {
                        Classification::Unsolvable
                    } else {
                        Classification::Normal
                    };
                    let spec = NetworkSpec::new(h, alpha + 2, ell, eps, alpha).map_err(|e| e.to_string())?;
                    ensure!(spec.classification() == literal, "h={h} ell={ell} eps={eps} alpha={alpha}");
                    ensure!(classify(h, ell, eps, alpha) == literal, "classify disagrees");
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} parameter sets, 0 disagreements"))
}

fn criterion9() -> Result<String, String> {
    let mut parts = Vec::new();
    for (q, n, delta) in [(2u64, 2usize, 1usize), (2, 3, 2), (2, 4, 2), (3, 2, 1)] {
        let code = GabidulinCode::new(q, n, delta).map_err(|e| e.to_string())?;
        let formula = (q as u128).pow((n * (n - delta + 1)) as u32);
        ensure!(formula <= 1 << 16, "size over the exhaustive limit");
        let words = code.codewords().map_err(|e| e.to_string())?;
        let distinct: HashSet<&[u32]> = words.iter().map(|w| w.data()).collect();
        ensure!(words.len() as u128 == formula && distinct.len() as u128 == formula, "({q},{n},{delta}): count");
        let d = min_rank_distance(&words).map_err(|e| e.to_string())?;
        ensure!(d == delta, "({q},{n},{delta}): distance {d}");
        if words.len() <= 81 {
            let mut oracle = usize::MAX;
            for i in 0..words.len() {
                for j in i + 1..words.len() {
                    oracle = oracle.min(oracle_rank(&words[i].sub(&words[j]).unwrap(), q));
                }
            }
            ensure!(oracle == delta, "oracle distance {oracle}");
        }
        parts.push(format!("({q},{n},{delta}) size {formula} d={d}"));
    }
    Ok(parts.join(", "))
}

fn criterion10() -> Result<String, String> {
    let rows = gap_table(4..=4, 2, 1..=3).map_err(|e| e.to_string())?;
    ensure!(rows.len() == 3, "{} rows", rows.len());
    let n4_bound = |q: u128| (q * q + 1) * (q * q + q + 1);
    let mut logs = Vec::new();
    for (row, t) in rows.iter().zip(1u32..) {
        ensure!((row.h, row.ell, row.eps) == (4, 2, 1), "wrong network");
        let want_r = 1u128 << (2 * t * t + 2 * t);
        ensure!(row.r == want_r, "t={t}: r = {}", row.r);
        let ScalarSide::Exact { qs_min, .. } = row.scalar else {
            return Err(format!("t={t}: no exact scalar side"));
        };
        ensure!(is_prime_power(qs_min), "q_s = {qs_min} not a prime power");
        ensure!(n4_bound(qs_min as u128) >= want_r, "bound fails at q_s = {qs_min}");
        let prev = (2..qs_min).rev().find(|&c| is_prime_power(c));
        if let Some(p) = prev {
            ensure!(n4_bound(p as u128) < want_r, "bound holds below q_s at {p}");
        }
        logs.push((qs_min as f64).log2());
    }
    ensure!(logs.windows(2).all(|w| w[1] > w[0]), "log2(q_s) not increasing: {logs:?}");
    let qs: Vec<String> = rows.iter().map(|r| r.qs_min().unwrap().to_string()).collect();
    Ok(format!("q_s = {} for t = 1, 2, 3", qs.join(", ")))
}

fn criterion11() -> Result<String, String> {
    let out = greedy_cover_search(SearchParams {
        n: 6,
        k: 2,
        alpha: 3,
        min_dim: 4,
        q: 2,
        strategy: Strategy::Greedy,
        budget: u64::MAX,
        seed: 0,
    })
    .map_err(|e| e.to_string())?;
    ensure!(!out.exhausted, "budget exhausted");
    ensure!(out.code.len() >= 43, "size {}", out.code.len());
    let cert = out.code.to_certificate();
    let loaded = CoverCode::from_certificate(&cert).map_err(|e| e.to_string())?;
    ensure!(loaded == out.code, "certificate round trip changed the code");
    let check = alpha_cover_check(loaded.members(), 3, 4).map_err(|e| e.to_string())?;
    ensure!(check.holds, "checkcover fails: {:?}", check.violation);
    ensure!(triples_span_four(&loaded), "bit-mask oracle finds a deficient triple");
    Ok(format!("greedy code of size {} > 42, certificate verified", loaded.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check, Duration); 11] = [
        ("51-subspace cover code", criterion1, Duration::from_secs(10)),
        ("vector beats scalar on (1,1)-N_{3,51,4}", criterion2, Duration::from_secs(60)),
        ("companion construction on N_{h,5,h}", criterion3, Duration::from_secs(1)),
        ("Gabidulin construction at its bound", criterion4, Duration::from_secs(60)),
        ("subspace-block scalar boundaries", criterion5, Duration::from_secs(60)),
        ("companion code and block Vandermonde ranks", criterion6, Duration::from_secs(120)),
        ("companion/field isomorphism", criterion7, Duration::from_secs(60)),
        ("network classification", criterion8, Duration::from_secs(60)),
        ("Gabidulin minimum distance and size", criterion9, Duration::from_secs(120)),
        ("gap table for (1,2)-N_4", criterion10, Duration::from_secs(5)),
        ("greedy search beats the scalar bound", criterion11, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let result = match result {
            Ok(detail) if took > *limit => Err(format!("{detail}; took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
