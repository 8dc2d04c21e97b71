//! Experiment harness over random pair-meeting instances, with CSV output.
//!
//! Instance `i` of a run with seed `s` is generated from seed `s + i`
//! (wrapping). Random start orders come from a separate stream of the same
//! seed, so adding or removing variants never changes the instances.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::approx::approx_sbcm;
use crate::error::{Error, Result};
use crate::exact::solve_bfs_with_budget;
use crate::gen::{gen_random_2sbcm, random_permutation, rng_from_seed};
use crate::greedy::{best_greedy, greedy, greedy_all_starts, heuristic_start};
use crate::model::{Permutation, StorylineInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Random,
    Heuristic,
    Best,
    Identity,
    Exact,
    Approx,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Random => "random",
            Variant::Heuristic => "heuristic",
            Variant::Best => "best",
            Variant::Identity => "identity",
            Variant::Exact => "exact",
            Variant::Approx => "approx",
        }
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "random" => Variant::Random,
            "heuristic" => Variant::Heuristic,
            "best" => Variant::Best,
            "identity" => Variant::Identity,
            "exact" => Variant::Exact,
            "approx" => Variant::Approx,
            _ => return Err(Error::Parse(format!("unknown variant {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchParams {
    pub k: usize,
    pub n: usize,
    pub instances: usize,
    pub seed: u64,
    pub variants: Vec<Variant>,
    pub state_budget: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub instance_id: usize,
    pub seed: u64,
    pub k: usize,
    pub n: usize,
    /// One entry per requested variant; `None` when it cannot run at this size.
    pub costs: Vec<Option<usize>>,
}

pub fn instance_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_add(i as u64)
}

pub fn random_start(k: usize, seed: u64) -> Permutation {
    let mut rng = rng_from_seed(seed);
    rng.set_stream(1);
    random_permutation(k, &mut rng)
}

/// Cost of one variant, `None` if a guard refuses it.
pub fn run_variant(inst: &StorylineInstance, seed: u64, v: Variant, state_budget: u128) -> Result<Option<usize>> {
    let res = match v {
        Variant::Random => greedy(inst, &random_start(inst.k, seed)).map(|s| s.cost()),
        Variant::Heuristic => heuristic_start(inst).and_then(|p| greedy(inst, &p)).map(|s| s.cost()),
        Variant::Best => best_greedy(inst).map(|s| s.cost()),
        Variant::Identity => greedy(inst, &Permutation::identity(inst.k)).map(|s| s.cost()),
        Variant::Exact => solve_bfs_with_budget(inst, None, state_budget).map(|s| s.stats.beta),
        Variant::Approx => approx_sbcm(inst, None, None).map(|a| a.report.cost),
    };
    match res {
        Ok(c) => Ok(Some(c)),
        Err(Error::Guard { .. } | Error::StateLimit { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn bench_rows(p: &BenchParams) -> Result<Vec<BenchRow>> {
    (0..p.instances)
        .into_par_iter()
        .map(|i| {
            let seed = instance_seed(p.seed, i);
            let inst = gen_random_2sbcm(p.k, p.n, seed)?;
            let costs = p.variants.iter().map(|&v| run_variant(&inst, seed, v, p.state_budget)).collect::<Result<_>>()?;
            Ok(BenchRow { instance_id: i, seed, k: p.k, n: p.n, costs })
        })
        .collect()
}

/// Header `instance_id,seed,k,n,<variant>_cost,..`; refused cells read `NA`.
pub fn bench_csv(p: &BenchParams) -> Result<String> {
    let rows = bench_rows(p)?;
    let mut out = String::from("instance_id,seed,k,n");
    for v in &p.variants {
        let _ = write!(out, ",{}_cost", v.name());
    }
    out.push('\n');
    for r in rows {
        let _ = write!(out, "{},{},{},{}", r.instance_id, r.seed, r.k, r.n);
        for c in r.costs {
            match c {
                Some(c) => {
                    let _ = write!(out, ",{c}");
                }
                None => out.push_str(",NA"),
            }
        }
        out.push('\n');
    }
    Ok(out)
}

/// Greedy cost of every start order of one random instance, as `cost,count`.
pub fn all_starts_csv(k: usize, n: usize, seed: u64) -> Result<String> {
    let inst = gen_random_2sbcm(k, n, seed)?;
    let costs = greedy_all_starts(&inst)?;
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for c in costs {
        *hist.entry(c).or_default() += 1;
    }
    let mut out = String::from("cost,count\n");
    for (c, m) in hist {
        let _ = writeln!(out, "{c},{m}");
    }
    Ok(out)
}

/// Mean wall time per instance, as `k,n,variant,instances,mean_ms`.
pub fn runtime_csv(k: usize, ns: &[usize], instances: usize, seed: u64, variants: &[Variant], state_budget: u128) -> Result<String> {
    let mut out = String::from("k,n,variant,instances,mean_ms\n");
    for &n in ns {
        let insts: Vec<(u64, StorylineInstance)> = (0..instances)
            .map(|i| {
                let s = instance_seed(seed, i);
                gen_random_2sbcm(k, n, s).map(|inst| (s, inst))
            })
            .collect::<Result<_>>()?;
        for &v in variants {
            let timer = Instant::now();
            let mut ran = true;
            for (s, inst) in &insts {
                ran &= run_variant(inst, *s, v, state_budget)?.is_some();
            }
            let ms = timer.elapsed().as_secs_f64() * 1e3 / instances.max(1) as f64;
            if ran {
                let _ = writeln!(out, "{k},{n},{},{instances},{ms:.3}", v.name());
            } else {
                let _ = writeln!(out, "{k},{n},{},{instances},NA", v.name());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::DEFAULT_STATE_BUDGET;

    #[test]
    fn table_is_deterministic() {
        let p = BenchParams {
            k: 5,
            n: 8,
            instances: 4,
            seed: 7,
            variants: vec![Variant::Random, Variant::Heuristic, Variant::Exact],
            state_budget: DEFAULT_STATE_BUDGET,
        };
        let a = bench_csv(&p).unwrap();
        assert_eq!(a, bench_csv(&p).unwrap());
        assert!(a.starts_with("instance_id,seed,k,n,random_cost,heuristic_cost,exact_cost\n"));
        assert_eq!(a.lines().count(), 5);
        for r in bench_rows(&p).unwrap() {
            let exact = r.costs[2].unwrap();
            assert!(r.costs[0].unwrap() >= exact && r.costs[1].unwrap() >= exact);
        }
    }

    #[test]
    fn guarded_cells_are_na() {
        let p = BenchParams { k: 10, n: 4, instances: 1, seed: 0, variants: vec![Variant::Best], state_budget: 1 };
        assert!(bench_csv(&p).unwrap().ends_with(",NA\n"));
    }

    #[test]
    fn histogram_counts_all_starts() {
        let csv = all_starts_csv(4, 10, 3).unwrap();
        let total: usize = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse::<usize>().unwrap()).sum();
        assert_eq!(total, 24);
    }
}
