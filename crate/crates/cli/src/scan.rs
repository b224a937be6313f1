use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use cantor_core::automaton::BuildOptions;
use cantor_core::spectral::{hausdorff_dim, scc};

use crate::input::SetExpr;

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub multipliers: String,
    pub vertex_count: usize,
    pub scc_count: usize,
    pub beta: f64,
    pub dim: f64,
    pub error_bound: f64,
    pub elapsed_ms: u128,
    pub error: Option<String>,
}

impl ScanRow {
    fn failed(multipliers: &str, error: String) -> Self {
        ScanRow {
            multipliers: multipliers.to_string(),
            vertex_count: 0,
            scc_count: 0,
            beta: f64::NAN,
            dim: f64::NAN,
            error_bound: f64::NAN,
            elapsed_ms: 0,
            error: Some(error),
        }
    }
}

pub fn scan_one(entry: &str, opts: &BuildOptions, tol: f64) -> ScanRow {
    let t = Instant::now();
    let result = SetExpr::parse(entry)
        .and_then(|s| s.build(opts))
        .and_then(|g| Ok((hausdorff_dim(&g, tol)?, scc(&g).len(), g.vertex_count())));
    match result {
        Ok((d, sccs, vertices)) => ScanRow {
            multipliers: entry.to_string(),
            vertex_count: vertices,
            scc_count: sccs,
            beta: d.beta,
            dim: d.dim,
            error_bound: d.error_bound,
            elapsed_ms: t.elapsed().as_millis(),
            error: None,
        },
        Err(e) => ScanRow::failed(entry, e.to_string()),
    }
}

/// Rows in input order; `jobs` workers pull entries from a shared counter.
pub fn scan(entries: &[String], opts: &BuildOptions, tol: f64, jobs: usize) -> Vec<ScanRow> {
    let jobs = jobs.clamp(1, entries.len().max(1));
    if jobs == 1 {
        return entries.iter().map(|e| scan_one(e, opts, tol)).collect();
    }
    let next = AtomicUsize::new(0);
    let rows: Mutex<Vec<Option<ScanRow>>> = Mutex::new(vec![None; entries.len()]);
    std::thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(entry) = entries.get(i) else { break };
                let row = scan_one(entry, opts, tol);
                rows.lock().expect("worker panicked")[i] = Some(row);
            });
        }
    });
    rows.into_inner()
        .expect("worker panicked")
        .into_iter()
        .map(|r| r.expect("every entry scanned"))
        .collect()
}
