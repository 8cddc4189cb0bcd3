//! Machine-readable run reports and their plain-text rendering.

use std::fmt::Write as _;

use cbpsep_core::{
    Bounds, Graph, LevelTrace, OracleResult, Partition, PartitionError, SolveParams,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub la: u64,
    pub ua: u64,
    pub lb: u64,
    pub ub: u64,
}

impl From<Bounds> for BoundsReport {
    fn from(b: Bounds) -> Self {
        BoundsReport {
            la: b.la,
            ua: b.ua,
            lb: b.lb,
            ub: b.ub,
        }
    }
}

impl From<BoundsReport> for Bounds {
    fn from(b: BoundsReport) -> Self {
        Bounds {
            la: b.la,
            ua: b.ua,
            lb: b.lb,
            ub: b.ub,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsReport {
    pub ub_fraction: f64,
    pub lb: u64,
    pub coarsest_size: usize,
    pub gamma_steps: usize,
    pub multistarts: usize,
    pub seed: u64,
}

impl From<&SolveParams> for ParamsReport {
    fn from(p: &SolveParams) -> Self {
        ParamsReport {
            ub_fraction: p.ub_fraction,
            lb: p.la,
            coarsest_size: p.coarsest_size,
            gamma_steps: p.gamma_steps,
            multistarts: p.multistarts,
            seed: p.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    pub level: usize,
    pub n: usize,
    pub objective_before: f64,
    pub objective_after_refine: f64,
    pub objective_after_escape: f64,
    pub objective_after_rounding: f64,
    pub escapes: usize,
    pub separator_weight: u64,
}

impl From<&LevelTrace> for LevelReport {
    fn from(t: &LevelTrace) -> Self {
        LevelReport {
            level: t.level,
            n: t.n,
            objective_before: t.objective_before,
            objective_after_refine: t.objective_after_refine,
            objective_after_escape: t.objective_after_escape,
            objective_after_rounding: t.objective_after_rounding,
            escapes: t.escapes,
            separator_weight: t.separator_weight,
        }
    }
}

/// Result of one `solve` run. Vertex lists are 1-based, as in the input files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub input_path: String,
    pub n: usize,
    pub m: usize,
    pub params: ParamsReport,
    pub bounds: BoundsReport,
    pub separator_weight: u64,
    pub size_a: usize,
    pub size_b: usize,
    pub size_s: usize,
    pub separator: Vec<usize>,
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
    pub trace: Vec<LevelReport>,
    pub wall_time_ms: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("set sizes {0} + {1} + {2} do not add up to n = {3}")]
    SizeMismatch(usize, usize, usize, usize),
    #[error("vertex label {0} is outside 1..=n")]
    BadLabel(usize),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|&i| i + 1).collect()
}

fn zero_based(v: &[usize], n: usize) -> Result<Vec<usize>, ReportError> {
    v.iter()
        .map(|&i| {
            if i == 0 || i > n {
                Err(ReportError::BadLabel(i))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

impl RunReport {
    pub fn new(
        input_path: &str,
        g: &Graph,
        params: &SolveParams,
        bounds: Bounds,
        partition: &Partition,
        trace: &[LevelTrace],
        wall_time_ms: f64,
    ) -> Self {
        RunReport {
            input_path: input_path.to_string(),
            n: g.n(),
            m: g.edge_count(),
            params: params.into(),
            bounds: bounds.into(),
            separator_weight: partition.separator_weight,
            size_a: partition.a.len(),
            size_b: partition.b.len(),
            size_s: partition.separator.len(),
            separator: one_based(&partition.separator),
            side_a: one_based(&partition.a),
            side_b: one_based(&partition.b),
            trace: trace.iter().map(LevelReport::from).collect(),
            wall_time_ms,
        }
    }

    /// Re-checks the reported partition against `g` alone: the three sets
    /// cover every vertex once, no edge joins A and B, both sides respect the
    /// bounds and the weight matches the separator's cost.
    pub fn validate_against(&self, g: &Graph) -> Result<(), ReportError> {
        if self.size_a + self.size_b + self.size_s != self.n || self.n != g.n() {
            return Err(ReportError::SizeMismatch(
                self.size_a,
                self.size_b,
                self.size_s,
                g.n(),
            ));
        }
        let n = g.n();
        let partition = Partition {
            a: zero_based(&self.side_a, n)?,
            b: zero_based(&self.side_b, n)?,
            separator: zero_based(&self.separator, n)?,
            separator_weight: self.separator_weight,
        };
        if partition.a.len() != self.size_a
            || partition.b.len() != self.size_b
            || partition.separator.len() != self.size_s
        {
            return Err(ReportError::SizeMismatch(
                partition.a.len(),
                partition.b.len(),
                partition.separator.len(),
                n,
            ));
        }
        partition.validate(g, self.bounds.into())?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_plain(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "input: {}", self.input_path);
        let _ = writeln!(s, "n: {}", self.n);
        let _ = writeln!(s, "m: {}", self.m);
        let b = self.bounds;
        let _ = writeln!(
            s,
            "bounds: |A| in [{}, {}], |B| in [{}, {}]",
            b.la, b.ua, b.lb, b.ub
        );
        let _ = writeln!(s, "separator_weight: {}", self.separator_weight);
        let _ = writeln!(
            s,
            "sizes: |A| = {}, |B| = {}, |S| = {}",
            self.size_a, self.size_b, self.size_s
        );
        let _ = writeln!(s, "separator: {}", join(&self.separator));
        let _ = writeln!(s, "levels:");
        for t in &self.trace {
            let _ = writeln!(
                s,
                "  level {:>2}  n {:>7}  f {:.1} -> {:.1} (refine) -> {:.1} (escape, {} taken) -> {:.1}  |S| weight {}",
                t.level,
                t.n,
                t.objective_before,
                t.objective_after_refine,
                t.objective_after_escape,
                t.escapes,
                t.objective_after_rounding,
                t.separator_weight
            );
        }
        let _ = writeln!(s, "wall_time_ms: {:.1}", self.wall_time_ms);
        s
    }
}

/// Result of one `oracle` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub input_path: String,
    pub n: usize,
    pub m: usize,
    pub bounds: BoundsReport,
    pub feasible: bool,
    pub optimal_weight: Option<u64>,
    pub separator: Vec<usize>,
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

impl OracleReport {
    pub fn new(input_path: &str, g: &Graph, bounds: Bounds, result: &OracleResult) -> Self {
        let (feasible, optimal_weight, separator, side_a, side_b) = match result {
            OracleResult::Infeasible => (false, None, vec![], vec![], vec![]),
            OracleResult::Optimal { weight, witness } => (
                true,
                Some(*weight),
                one_based(&witness.separator),
                one_based(&witness.a),
                one_based(&witness.b),
            ),
        };
        OracleReport {
            input_path: input_path.to_string(),
            n: g.n(),
            m: g.edge_count(),
            bounds: bounds.into(),
            feasible,
            optimal_weight,
            separator,
            side_a,
            side_b,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_plain(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "input: {}", self.input_path);
        let _ = writeln!(s, "n: {}", self.n);
        let _ = writeln!(s, "m: {}", self.m);
        match self.optimal_weight {
            None => {
                let _ = writeln!(s, "infeasible");
            }
            Some(w) => {
                let _ = writeln!(s, "optimal_weight: {w}");
                let _ = writeln!(s, "separator: {}", join(&self.separator));
                let _ = writeln!(s, "side_a: {}", join(&self.side_a));
                let _ = writeln!(s, "side_b: {}", join(&self.side_b));
            }
        }
        s
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}
