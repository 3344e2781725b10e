//! Batch runs over generated instances, spread over all cores.

use std::fmt::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use biarc_core::diagram::Credit;
use biarc_core::graph::{enumerate_triangulations, kleetope, random_3tree, random_3tree_gd2, random_triangulation};

use crate::{draw_graph, finish_sequence, Algo, CmdError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Source {
    /// Random instances with seeds `seed, seed + 1, ...`.
    Random,
    /// Every enumerated triangulation with `n` in range (at most 8); the
    /// Kleetope of each for the degree-3 algorithm.
    Enum,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSpec {
    pub algo: Algo,
    pub lo: usize,
    pub hi: usize,
    pub count: usize,
    pub seed: u64,
    pub source: Source,
    pub chi: Credit,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub index: usize,
    /// Size parameter: vertices, or base vertices for Kleetopes.
    pub param: usize,
    pub seed: u64,
    pub n: usize,
    pub biarcs: usize,
    pub bound: usize,
    pub error: Option<String>,
    pub micros: u128,
}

impl Row {
    pub fn pass(&self) -> bool {
        self.error.is_none()
    }
}

/// Parses `a..b` or `a..=b` (both inclusive).
pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("bad range {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (usize, usize) = (a.parse().map_err(|_| format!("bad range {s:?}"))?, b.parse().map_err(|_| format!("bad range {s:?}"))?);
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

enum Job {
    Seeded(usize, u64),
    Enumerated(usize, usize),
}

fn jobs(spec: &SweepSpec) -> Result<Vec<Job>, CmdError> {
    match spec.source {
        Source::Random => {
            let c = spec.count.max(1);
            Ok((0..c)
                .map(|i| {
                    let n = if c == 1 { spec.lo } else { spec.lo + i * (spec.hi - spec.lo) / (c - 1) };
                    Job::Seeded(n, spec.seed + i as u64)
                })
                .collect())
        }
        Source::Enum => {
            if matches!(spec.algo, Algo::ThreeTree | Algo::Gd2) {
                return Err(CmdError::Input(String::from("enumeration covers triangulations, not 3-tree sequences")));
            }
            let mut out = Vec::new();
            for k in spec.lo.max(4)..=spec.hi.min(8) {
                let m = enumerate_triangulations(k).map_err(|e| CmdError::Input(e.to_string()))?.len();
                out.extend((0..m).map(|i| Job::Enumerated(k, i)));
            }
            Ok(out)
        }
    }
}

fn run_job(spec: &SweepSpec, index: usize, job: &Job) -> Row {
    let t = Instant::now();
    let (param, seed) = match *job {
        Job::Seeded(k, s) => (k, s),
        Job::Enumerated(k, i) => (k, i as u64),
    };
    let result = match spec.algo {
        Algo::General | Algo::Kleetope => {
            let base = match *job {
                Job::Seeded(k, s) => random_triangulation(k, s),
                Job::Enumerated(k, i) => enumerate_triangulations(k).expect("size checked")[i].clone(),
            };
            let g = if spec.algo == Algo::Kleetope { kleetope(&base) } else { base };
            draw_graph(&g, spec.algo, spec.chi)
        }
        Algo::ThreeTree | Algo::Gd2 => {
            let seq = if spec.algo == Algo::Gd2 { random_3tree_gd2(param, seed) } else { random_3tree(param, seed) };
            finish_sequence(&seq, spec.algo)
        }
    };
    let micros = t.elapsed().as_micros();
    match result {
        Ok(o) => Row { index, param, seed, n: o.n, biarcs: o.biarcs, bound: o.bound, error: None, micros },
        Err(e) => Row { index, param, seed, n: 0, biarcs: 0, bound: 0, error: Some(e.to_string()), micros },
    }
}

/// Runs every instance of the sweep; rows come back in instance order.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<Row>, CmdError> {
    if spec.lo < 4 && !matches!(spec.algo, Algo::ThreeTree | Algo::Gd2) {
        return Err(CmdError::Input(String::from("triangulations need n >= 4")));
    }
    if spec.lo < 3 {
        return Err(CmdError::Input(String::from("3-trees need n >= 3")));
    }
    let jobs = jobs(spec)?;
    let next = AtomicUsize::new(0);
    let rows: Mutex<Vec<Row>> = Mutex::new(Vec::with_capacity(jobs.len()));
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(i) else { break };
                let row = run_job(spec, i, job);
                rows.lock().expect("no worker panics while holding the lock").push(row);
            });
        }
    });
    let mut rows = rows.into_inner().expect("workers finished");
    rows.sort_by_key(|r| r.index);
    Ok(rows)
}

/// Tab-separated report: a header, one row per instance, a summary line.
pub fn report(rows: &[Row]) -> String {
    let mut s = String::from("index\tparam\tseed\tn\tbiarcs\tbound\tpass\tmicros\terror\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.index,
            r.param,
            r.seed,
            r.n,
            r.biarcs,
            r.bound,
            r.pass(),
            r.micros,
            r.error.as_deref().map_or(String::from("-"), |e| e.replace(['\t', '\n'], " "))
        );
    }
    let failed = rows.iter().filter(|r| !r.pass()).count();
    let _ = writeln!(s, "# instances={} failed={}", rows.len(), failed);
    s
}
