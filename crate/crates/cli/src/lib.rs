//! Command implementations behind the `ropesweep` binary. Each command
//! returns its output as a string so that tests can drive them directly.

pub mod experiments;
pub mod render;

use std::path::Path;
use std::time::{Duration, Instant};

use ropesweep::constructions::{self, LowerBoundInstance, WorstCaseInstance};
use ropesweep::cutwidth::{self, SmallGraph};
use ropesweep::error::{ArrangementError, CutwidthError, OptimalError, ParseError, SweepError};
use ropesweep::optimal::{self, SearchBudget};
use ropesweep::sweep::{self, SweepOptions};
use ropesweep::{ArrangementGraph, WiringDiagram};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ArrangementError> for CliError {
    fn from(e: ArrangementError) -> Self {
        match e {
            ArrangementError::ResourceLimit(m) => CliError::Resource(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        CliError::Invariant(e.to_string())
    }
}

impl From<OptimalError> for CliError {
    fn from(e: OptimalError) -> Self {
        match e {
            OptimalError::ResourceLimit(m) => CliError::Resource(m),
            other => CliError::Invariant(other.to_string()),
        }
    }
}

impl From<CutwidthError> for CliError {
    fn from(e: CutwidthError) -> Self {
        match e {
            CutwidthError::TooLarge { .. } => CliError::Resource(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

/// How an arrangement argument is given.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum SeedFormat {
    /// Path to a file holding `n` and the swap word.
    #[default]
    File,
    /// Inline `n:p1,p2,...`, e.g. `3:1,2,1`.
    Inline,
}

pub fn read_arrangement(arg: &str, format: SeedFormat) -> Result<WiringDiagram, CliError> {
    match format {
        SeedFormat::File => {
            let text = std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
            Ok(text.parse()?)
        }
        SeedFormat::Inline => {
            let (n, word) = arg
                .split_once(':')
                .ok_or_else(|| CliError::Input(format!("expected `n:word`, found `{arg}`")))?;
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("bad line count `{n}`")))?;
            let swaps = word
                .split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| CliError::Input(format!("bad swap position `{t}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(WiringDiagram::new(n, &swaps)?)
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub ideals: Option<u64>,
    pub seconds: Option<f64>,
}

impl Budget {
    fn search(&self) -> SearchBudget {
        SearchBudget {
            max_ideals: self.ideals.or(Some(optimal::DEFAULT_MAX_IDEALS)),
            deadline: self.seconds.map(|s| Instant::now() + Duration::from_secs_f64(s)),
        }
    }
}

/// Largest `n` allowed without `--long` / `--very-long`.
pub fn check_scale(n: usize, long: bool, very_long: bool) -> Result<(), CliError> {
    let limit = if very_long {
        usize::MAX
    } else if long {
        8
    } else {
        7
    };
    if n > limit {
        let flag = if n == 8 { "--long" } else { "--very-long" };
        return Err(CliError::Resource(format!("n = {n} needs {flag}")));
    }
    Ok(())
}

/// Canonical words, one per line.
pub fn cmd_enumerate(n: usize, out: &mut dyn std::io::Write) -> Result<u64, CliError> {
    let mut io_err = None;
    let count = ropesweep::enumerate(n, |wd| {
        if io_err.is_none() {
            if let Err(e) = writeln!(out, "{}", wd.word_string()) {
                io_err = Some(e);
            }
        }
    })?;
    match io_err {
        Some(e) => Err(e.into()),
        None => Ok(count),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub n: usize,
    pub max_rope: usize,
    pub moves: usize,
}

pub fn cmd_sweep(wd: &WiringDiagram, verify: bool) -> Result<(SweepSummary, String), CliError> {
    let g = ArrangementGraph::build(wd);
    let trace = sweep::primal_dual_sweep_with(&g, SweepOptions { verify })?;
    let summary = SweepSummary {
        n: wd.n(),
        max_rope: trace.max_rope_len,
        moves: trace.moves.len(),
    };
    Ok((summary, trace.to_json_lines()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OptimalRecord {
    pub n: usize,
    pub canonical_word: String,
    pub optimal: usize,
    pub witness: Vec<usize>,
    pub primal_dual: usize,
    pub ideals_explored: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<usize>,
}

pub fn cmd_optimal(wd: &WiringDiagram, budget: Budget, oracle: bool) -> Result<OptimalRecord, CliError> {
    let g = ArrangementGraph::build(wd);
    let opt = optimal::optimal_rope_length_with(&g, budget.search())?;
    let primal_dual = sweep::primal_dual_max(&g)?;
    let oracle = if oracle {
        let w = optimal::rope_flip_search_with(&g, budget.search())?;
        if w != opt.width {
            return Err(CliError::Invariant(format!(
                "ideal search found {} but the rope-flip search found {w}",
                opt.width
            )));
        }
        Some(w)
    } else {
        None
    };
    Ok(OptimalRecord {
        n: wd.n(),
        canonical_word: wd.canonicalize().word_string(),
        optimal: opt.width,
        witness: opt.order,
        primal_dual,
        ideals_explored: opt.ideals_explored,
        oracle,
    })
}

pub fn optimal_csv(records: &[OptimalRecord]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Input(e.to_string());
    w.write_record([
        "n",
        "canonical_word",
        "optimal",
        "witness",
        "primal_dual",
        "ideals_explored",
    ])
    .map_err(err)?;
    for r in records {
        let witness = r.witness.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ");
        w.write_record([
            r.n.to_string(),
            r.canonical_word.clone(),
            r.optimal.to_string(),
            witness,
            r.primal_dual.to_string(),
            r.ideals_explored.to_string(),
        ])
        .map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutwidthReport {
    pub directed: bool,
    pub width: usize,
    pub order: Vec<usize>,
    pub cuts: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<Box<CutwidthReport>>,
}

impl CutwidthReport {
    /// Witness text: the order, then the cut sizes.
    pub fn witness_text(&self) -> String {
        let join = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        format!("{}\n{}\n", join(&self.order), join(&self.cuts))
    }
}

pub fn cmd_cutwidth(g: &SmallGraph, reduce: bool, limit: usize) -> Result<CutwidthReport, CliError> {
    let (width, lo) = if g.is_directed() {
        cutwidth::directed_cutwidth_exact_with_limit(g, limit)?
    } else {
        cutwidth::cutwidth_exact_with_limit(g, limit)?
    };
    let reduced = if reduce {
        if g.is_directed() {
            return Err(CliError::Input("--reduce expects an undirected graph".into()));
        }
        let red = cutwidth::reduce_to_dcw(g)?;
        let (w, hlo) = cutwidth::directed_cutwidth_exact(&red.h)?;
        Some(Box::new(CutwidthReport {
            directed: true,
            width: w,
            order: hlo.order,
            cuts: hlo.cuts,
            reduced: None,
        }))
    } else {
        None
    };
    Ok(CutwidthReport {
        directed: g.is_directed(),
        width,
        order: lo.order,
        cuts: lo.cuts,
        reduced,
    })
}

pub fn read_graph(path: &Path) -> Result<SmallGraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(text.parse()?)
}

/// Sidecar naming the landmark faces and lines of a generated instance.
#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct Sidecar {
    pub family: String,
    pub n: usize,
    pub faces: Vec<(String, usize)>,
    pub lines: Vec<(String, usize)>,
}

pub fn lower_bound_sidecar(inst: &LowerBoundInstance) -> Sidecar {
    let mut lines = vec![("c".to_string(), inst.c), ("c'".to_string(), inst.c_prime)];
    lines.extend(inst.reds.iter().enumerate().map(|(i, &l)| (format!("r{}", i + 1), l)));
    lines.extend(inst.blues.iter().enumerate().map(|(i, &l)| (format!("b{}", i + 1), l)));
    Sidecar {
        family: format!("lower-bound k={}", inst.k),
        n: inst.diagram.n(),
        faces: vec![
            ("F_l".into(), inst.f_left),
            ("F_c".into(), inst.f_center),
            ("F_r".into(), inst.f_right),
        ],
        lines,
    }
}

pub fn worst_case_sidecar(inst: &WorstCaseInstance) -> Sidecar {
    Sidecar {
        family: "worst-case".into(),
        n: inst.diagram.n(),
        faces: vec![("F".into(), inst.face)],
        lines: vec![("c1".into(), inst.c1)],
    }
}

/// Arrangement text plus pretty JSON sidecar for a generated family member.
pub fn cmd_gen_lower_bound(k: usize) -> Result<(String, String), CliError> {
    if k == 0 {
        return Err(CliError::Input("k must be at least 1".into()));
    }
    let inst = constructions::lower_bound_family(k);
    constructions::verify_lower_bound(&inst)
        .map_err(|v| CliError::Invariant(format!("generated instance fails verification: {v:?}")))?;
    Ok((
        inst.diagram.to_text(),
        serde_json::to_string_pretty(&lower_bound_sidecar(&inst))? + "\n",
    ))
}

pub fn cmd_gen_worst_case(n: usize) -> Result<(String, String), CliError> {
    if n < 3 {
        return Err(CliError::Input("n must be at least 3".into()));
    }
    let inst = constructions::worst_case_family(n);
    constructions::verify_worst_case(&inst.diagram, inst.c1)
        .map_err(|v| CliError::Invariant(format!("generated instance fails verification: {v:?}")))?;
    Ok((
        inst.diagram.to_text(),
        serde_json::to_string_pretty(&worst_case_sidecar(&inst))? + "\n",
    ))
}

/// Rope (as vertex ids) after trace step `step`; step 0 is the initial rope.
pub fn rope_at_step(trace_jsonl: &str, step: usize) -> Result<Vec<usize>, CliError> {
    for (i, line) in trace_jsonl.lines().filter(|l| !l.trim().is_empty()).enumerate() {
        let v: serde_json::Value =
            serde_json::from_str(line).map_err(|e| CliError::Input(format!("trace line {}: {e}", i + 1)))?;
        if v["step"].as_u64() == Some(step as u64) {
            return v["rope"]
                .as_array()
                .and_then(|a| a.iter().map(|x| x.as_u64().map(|x| x as usize)).collect())
                .ok_or_else(|| CliError::Input(format!("trace line {}: missing rope", i + 1)));
        }
    }
    Err(CliError::Input(format!("trace has no step {step}")))
}

pub fn cmd_render(
    wd: &WiringDiagram,
    trace: Option<&str>,
    step: Option<usize>,
    sidecar: Option<&Sidecar>,
) -> Result<String, CliError> {
    let g = ArrangementGraph::build(wd);
    let rope = match (trace, step) {
        (Some(t), Some(s)) => {
            let verts = rope_at_step(t, s)?;
            Some(
                render::rope_edges_from_vertices(&g, &verts)
                    .ok_or_else(|| CliError::Input(format!("step {s} rope is not a path of this arrangement")))?,
            )
        }
        (None, Some(_)) => return Err(CliError::Input("--step needs --trace".into())),
        _ => None,
    };
    let faces = match sidecar {
        Some(sc) => {
            for (name, f) in &sc.faces {
                if !g.is_inner_face(*f) {
                    return Err(CliError::Input(format!(
                        "sidecar face {name} = {f} is not an inner face"
                    )));
                }
            }
            sc.faces.iter().map(|(name, f)| (*f, name.clone())).collect()
        }
        None => Vec::new(),
    };
    Ok(render::render_svg(
        &g,
        &wd.swap_positions(),
        &render::RenderOptions { rope, faces },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_seeds() {
        let wd = read_arrangement("3:1,2,1", SeedFormat::Inline).unwrap();
        assert_eq!(wd.swap_positions(), vec![1, 2, 1]);
        assert_eq!(read_arrangement("3:1 2 1", SeedFormat::Inline).unwrap(), wd);
        assert_eq!(
            read_arrangement("3:1,1,2", SeedFormat::Inline).unwrap_err().exit_code(),
            2
        );
        assert_eq!(read_arrangement("121", SeedFormat::Inline).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn scale_gates() {
        assert!(check_scale(7, false, false).is_ok());
        assert_eq!(check_scale(8, false, false).unwrap_err().exit_code(), 3);
        assert!(check_scale(8, true, false).is_ok());
        assert!(check_scale(9, true, false).is_err());
        assert!(check_scale(9, false, true).is_ok());
    }

    #[test]
    fn enumerate_lines() {
        let mut buf = Vec::new();
        assert_eq!(cmd_enumerate(2, &mut buf).unwrap(), 1);
        assert_eq!(String::from_utf8(buf).unwrap(), "1\n");
        let mut buf = Vec::new();
        assert_eq!(cmd_enumerate(4, &mut buf).unwrap(), 8);
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 8);
    }

    #[test]
    fn sweep_two_lines() {
        let wd = WiringDiagram::new(2, &[1]).unwrap();
        let (summary, trace) = cmd_sweep(&wd, true).unwrap();
        assert_eq!(
            summary,
            SweepSummary {
                n: 2,
                max_rope: 2,
                moves: 3
            }
        );
        assert_eq!(trace.lines().count(), 4);
        assert_eq!(rope_at_step(&trace, 0).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn optimal_with_oracle() {
        let wd = WiringDiagram::new(3, &[2, 1, 2]).unwrap();
        let r = cmd_optimal(&wd, Budget::default(), true).unwrap();
        assert_eq!((r.optimal, r.oracle, r.primal_dual), (4, Some(4), 4));
        assert_eq!(r.canonical_word, "2 1 2");
        let tiny = Budget {
            ideals: Some(1),
            seconds: None,
        };
        assert_eq!(cmd_optimal(&wd, tiny, false).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn generated_files_round_trip() {
        let (text, sidecar) = cmd_gen_lower_bound(1).unwrap();
        let wd: WiringDiagram = text.parse().unwrap();
        assert_eq!(wd.n(), 7);
        let sc: Sidecar = serde_json::from_str(&sidecar).unwrap();
        assert_eq!(sc.faces.len(), 3);
        let svg = cmd_render(&wd, None, None, Some(&sc)).unwrap();
        assert_eq!(svg.matches("class=\"face\"").count(), 3);
        assert_eq!(cmd_gen_worst_case(2).unwrap_err().exit_code(), 2);
    }
}
