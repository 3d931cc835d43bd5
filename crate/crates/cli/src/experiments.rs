//! Exhaustive optimum statistics per number of lines.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use ropesweep::arrangement::{enumerate_parallel, EnumerationBudget};
use ropesweep::optimal::{optimal_rope_length_with, SearchBudget};
use ropesweep::{ArrangementGraph, WiringDiagram};
use serde::Serialize;

/// One CSV row. `seconds` is wall time and the only nondeterministic column.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub n: usize,
    pub types: u64,
    pub min: usize,
    pub max: usize,
    pub argmax_count_raw: u64,
    pub argmax_count_mod_symmetry: u64,
    pub seconds: f64,
    /// False when some arrangement exceeded the per-instance budget.
    pub complete: bool,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ExperimentOptions {
    pub search: SearchBudget,
    /// Per-instance wall-clock limit, applied as a deadline at each solve.
    pub instance_seconds: Option<f64>,
    pub max_types: Option<u64>,
}

#[derive(Default)]
struct Aggregate {
    min: usize,
    max: usize,
    argmax: Vec<WiringDiagram>,
    failures: u64,
    widths: Vec<u64>,
}

/// The full outcome for one `n`, including the classes attaining the
/// maximum.
#[derive(Clone, Debug)]
pub struct ExperimentResult {
    pub row: ExperimentRow,
    pub argmax: Vec<WiringDiagram>,
    /// `histogram[w]` counts classes with optimum `w`.
    pub histogram: Vec<u64>,
}

pub fn run_experiment(n: usize, opts: ExperimentOptions) -> Result<ExperimentResult, ropesweep::ArrangementError> {
    let start = Instant::now();
    let agg = Mutex::new(Aggregate {
        min: usize::MAX,
        ..Aggregate::default()
    });
    let budget = EnumerationBudget {
        max_count: opts.max_types,
        deadline: None,
    };
    let split = if n >= 7 { 6 } else { 0 };
    let types = enumerate_parallel(n, split, budget, |wd| {
        let g = ArrangementGraph::build(wd);
        let mut search = opts.search;
        if let Some(s) = opts.instance_seconds {
            search.deadline = Some(Instant::now() + Duration::from_secs_f64(s));
        }
        let result = optimal_rope_length_with(&g, search);
        let mut a = agg.lock().unwrap();
        match result {
            Ok(opt) => {
                let w = opt.width;
                if a.widths.len() <= w {
                    a.widths.resize(w + 1, 0);
                }
                a.widths[w] += 1;
                a.min = a.min.min(w);
                if w > a.max {
                    a.max = w;
                    a.argmax.clear();
                }
                if w == a.max {
                    a.argmax.push(wd.clone());
                }
            }
            Err(_) => a.failures += 1,
        }
    })?;
    let mut a = agg.into_inner().unwrap();
    a.argmax.sort();
    let mut reps: Vec<WiringDiagram> = a.argmax.iter().map(|wd| wd.symmetry_representative()).collect();
    reps.sort();
    reps.dedup();
    let row = ExperimentRow {
        n,
        types,
        min: if a.min == usize::MAX { 0 } else { a.min },
        max: a.max,
        argmax_count_raw: a.argmax.len() as u64,
        argmax_count_mod_symmetry: reps.len() as u64,
        seconds: start.elapsed().as_secs_f64(),
        complete: a.failures == 0,
    };
    Ok(ExperimentResult {
        row,
        argmax: a.argmax,
        histogram: a.widths,
    })
}

/// CSV with the fixed column order; `seconds` is zeroed when `timing` is off
/// so that reruns are byte-identical.
pub fn rows_to_csv(rows: &[ExperimentRow], timing: bool) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "n",
        "types",
        "min",
        "max",
        "argmax_count_raw",
        "argmax_count_mod_symmetry",
        "seconds",
        "complete",
    ])?;
    for r in rows {
        let seconds = if timing {
            format!("{:.3}", r.seconds)
        } else {
            "0".to_string()
        };
        w.write_record([
            r.n.to_string(),
            r.types.to_string(),
            r.min.to_string(),
            r.max.to_string(),
            r.argmax_count_raw.to_string(),
            r.argmax_count_mod_symmetry.to_string(),
            seconds,
            r.complete.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}
