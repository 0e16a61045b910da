//! Trace rendering: human-readable text and a stable JSON schema.
//!
//! External indices are 1-based to line up with the q1, q2, ... variable
//! numbering; levels are numbered from 0 (the input system), and the "step"
//! reported for a refutation is level + 1.

use serde::{Deserialize, Serialize};

use crate::gappoly::SamplingSummary;

use super::engine::{DinesTrace, EntryDomain, Level, Verdict};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PivotJson {
    /// 1-based row within the level.
    pub row: usize,
    /// 1-based columns with positive pivot entries.
    pub positive: Vec<usize>,
    /// 1-based columns with negative pivot entries.
    pub negative: Vec<usize>,
    /// 1-based zero pivot columns carried on the positive side.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub attached: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct LevelJson {
    pub rows: usize,
    pub cols: usize,
    /// Decided signs (-1/0/1), null for undecided symbolic entries.
    pub signs: Vec<Vec<Option<i8>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dropped_rows: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pivot: Option<PivotJson>,
    /// 1-based parent-column pair per column; absent on level 0.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ancestry: Option<Vec<[usize; 2]>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FailJson {
    pub level: usize,
    pub step: usize,
    /// 1-based offending row.
    pub row: usize,
    pub signs: Vec<i8>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct UndecidedJson {
    pub level: usize,
    /// 1-based position of the blocking entry.
    pub row: usize,
    pub col: usize,
    pub expression: String,
    pub samples: SamplingSummary,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TraceJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    pub mode: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fail: Option<FailJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub undecided: Option<UndecidedJson>,
    pub levels: Vec<LevelJson>,
}

fn level_json<T: EntryDomain>(level: &Level<T>) -> LevelJson {
    LevelJson {
        rows: level.matrix.len(),
        cols: level.matrix.first().map_or(0, Vec::len),
        signs: level.signs.clone(),
        dropped_rows: level.dropped_rows.iter().map(|r| r + 1).collect(),
        pivot: level.partition.as_ref().map(|p| PivotJson {
            row: p.pivot_row + 1,
            positive: p.positive.iter().map(|c| c + 1).collect(),
            negative: p.negative.iter().map(|c| c + 1).collect(),
            attached: p.attached_zero.iter().map(|c| c + 1).collect(),
        }),
        ancestry: level
            .ancestry
            .as_ref()
            .map(|pairs| pairs.iter().map(|&(i, j)| [i + 1, j + 1]).collect()),
    }
}

pub fn render_trace_json<T: EntryDomain>(
    case: Option<&str>,
    mode: &str,
    verdict: &Verdict,
    trace: &DinesTrace<T>,
) -> TraceJson {
    let (fail, undecided) = match verdict {
        Verdict::Feasible => (None, None),
        Verdict::Infeasible(info) => (
            Some(FailJson {
                level: info.level,
                step: info.level + 1,
                row: info.row + 1,
                signs: info.signs.clone(),
            }),
            None,
        ),
        Verdict::Indeterminate(info) => (
            None,
            Some(UndecidedJson {
                level: info.level,
                row: info.row + 1,
                col: info.col + 1,
                expression: info.expression.clone(),
                samples: info.samples.clone(),
            }),
        ),
    };
    TraceJson {
        case: case.map(str::to_owned),
        mode: mode.to_owned(),
        verdict: verdict.label().to_owned(),
        fail,
        undecided,
        levels: trace.levels.iter().map(level_json).collect(),
    }
}

fn sign_char(s: Option<i8>) -> char {
    match s {
        Some(-1) => '-',
        Some(0) => '0',
        Some(_) => '+',
        None => '?',
    }
}

pub fn render_trace_text<T: EntryDomain>(
    case: Option<&str>,
    mode: &str,
    verdict: &Verdict,
    trace: &DinesTrace<T>,
) -> String {
    let mut out = String::new();
    if let Some(name) = case {
        out.push_str(&format!("case {name} ({mode})\n"));
    }
    for (k, level) in trace.levels.iter().enumerate() {
        let cols = level.matrix.first().map_or(0, Vec::len);
        out.push_str(&format!(
            "level {k}: {} equation(s) x {} column(s)\n",
            level.matrix.len(),
            cols
        ));
        if let Some(pairs) = &level.ancestry {
            let rendered: Vec<String> = pairs
                .iter()
                .map(|&(i, j)| format!("({},{})", i + 1, j + 1))
                .collect();
            out.push_str(&format!("  columns: {}\n", rendered.join(" ")));
        }
        for row in &level.signs {
            let cells: Vec<String> = row.iter().map(|&s| sign_char(s).to_string()).collect();
            out.push_str(&format!("  signs: [ {} ]\n", cells.join(" ")));
        }
        if !level.dropped_rows.is_empty() {
            let rows: Vec<String> = level.dropped_rows.iter().map(|r| (r + 1).to_string()).collect();
            out.push_str(&format!("  vacuous rows dropped: {}\n", rows.join(", ")));
        }
        if let Some(p) = &level.partition {
            let fmt = |xs: &[usize]| {
                xs.iter()
                    .map(|c| (c + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            out.push_str(&format!(
                "  pivot row {}: I = {{{}}}, J = {{{}}}",
                p.pivot_row + 1,
                fmt(&p.positive),
                fmt(&p.negative)
            ));
            if !p.attached_zero.is_empty() {
                out.push_str(&format!(" (zero columns {} attached to I)", fmt(&p.attached_zero)));
            }
            out.push('\n');
        }
    }
    match verdict {
        Verdict::Feasible => out.push_str("verdict: feasible\n"),
        Verdict::Infeasible(info) => {
            let signs: Vec<String> = info.signs.iter().map(|s| s.to_string()).collect();
            out.push_str(&format!(
                "verdict: infeasible at level {} (step {}), row {}, signs [{}]\n",
                info.level,
                info.level + 1,
                info.row + 1,
                signs.join(", ")
            ));
        }
        Verdict::Indeterminate(info) => {
            out.push_str(&format!(
                "verdict: indeterminate at level {}, row {}, column {}\n  expression: {}\n  sampled signs: +{} -{} 0:{} ({:?})\n",
                info.level,
                info.row + 1,
                info.col + 1,
                info.expression,
                info.samples.positive,
                info.samples.negative,
                info.samples.zero,
                info.samples.classification
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dines::{decide, PivotPolicy, SignPolicy};
    use crate::exact::rat;

    #[test]
    fn json_round_trips() {
        let system = vec![
            vec![rat(1), rat(-1), rat(1)],
            vec![rat(2), rat(-3), rat(-1)],
        ];
        let (verdict, trace) = decide(system, PivotPolicy::FirstMixed, &SignPolicy::default());
        let doc = render_trace_json(Some("demo"), "instance", &verdict, &trace);
        let text = serde_json::to_string(&doc).unwrap();
        let back: TraceJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn text_mentions_partition() {
        let system = vec![
            vec![rat(1), rat(1), rat(-1)],
            vec![rat(2), rat(-1), rat(-1)],
        ];
        let (verdict, trace) = decide(system, PivotPolicy::FirstMixed, &SignPolicy::default());
        let text = render_trace_text(Some("demo"), "instance", &verdict, &trace);
        assert!(text.contains("pivot row 1"));
        assert!(text.contains("verdict: feasible"));
    }
}
