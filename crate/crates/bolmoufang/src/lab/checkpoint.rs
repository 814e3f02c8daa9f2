//! Plain-text checkpoints for resumable exhaustive campaigns.
//!
//! A checkpoint records the highest fully searched order and, for the order
//! in progress, the set of completed search-tree prefixes (assignments to
//! the first few free cells in row-major order). Certificates compose: a
//! resumed run only searches what the checkpoint does not already cover.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

const HEADER: &str = "b25-campaign-checkpoint v1";

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum CheckpointError {
    #[error("bad checkpoint header {0:?}")]
    BadHeader(String),
    #[error("checkpoint was taken for a different problem: {0:?}")]
    ProblemMismatch(String),
    #[error("corrupt checkpoint at line {line}: {text:?}")]
    Corrupt { line: usize, text: String },
}

/// Completed-work ledger for one campaign problem.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Checkpoint {
    /// Canonical description of the problem the certificates belong to.
    pub problem: String,
    /// Orders `2..=done_through` are fully searched.
    pub done_through: usize,
    /// Progress within order `done_through + 1`, if any: prefix depth and
    /// the completed prefixes.
    pub in_progress: Option<InProgress>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InProgress {
    pub order: usize,
    pub depth: usize,
    pub done_prefixes: BTreeSet<Vec<u8>>,
}

impl Checkpoint {
    pub fn fresh(problem: &str) -> Checkpoint {
        Checkpoint {
            problem: problem.to_string(),
            done_through: 1,
            in_progress: None,
        }
    }

    pub fn record_prefix(&mut self, order: usize, depth: usize, prefix: &[u8]) {
        let entry = self.in_progress.get_or_insert_with(|| InProgress {
            order,
            depth,
            done_prefixes: BTreeSet::new(),
        });
        debug_assert_eq!(entry.order, order);
        debug_assert_eq!(entry.depth, depth);
        entry.done_prefixes.insert(prefix.to_vec());
    }

    pub fn complete_order(&mut self, order: usize) {
        debug_assert!(order > self.done_through);
        self.done_through = order;
        self.in_progress = None;
    }

    /// Prefixes to skip when searching `order` at the given split depth.
    pub fn skip_set(&self, order: usize, depth: usize) -> BTreeSet<Vec<u8>> {
        match &self.in_progress {
            Some(p) if p.order == order && p.depth == depth => p.done_prefixes.clone(),
            _ => BTreeSet::new(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{HEADER}");
        let _ = writeln!(out, "problem: {}", self.problem);
        let _ = writeln!(out, "done-through-order: {}", self.done_through);
        if let Some(p) = &self.in_progress {
            let _ = writeln!(out, "order: {}", p.order);
            let _ = writeln!(out, "prefix-cells: {}", p.depth);
            for prefix in &p.done_prefixes {
                let rendered: Vec<String> = prefix.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "done-prefix: {}", rendered.join(" "));
            }
        }
        out
    }

    pub fn parse(text: &str, expected_problem: &str) -> Result<Checkpoint, CheckpointError> {
        let corrupt = |line: usize, text: &str| CheckpointError::Corrupt {
            line,
            text: text.to_string(),
        };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let (_, header) = lines
            .next()
            .ok_or_else(|| CheckpointError::BadHeader(String::new()))?;
        if header != HEADER {
            return Err(CheckpointError::BadHeader(header.to_string()));
        }
        let mut problem = None;
        let mut done_through = None;
        let mut order = None;
        let mut depth = None;
        let mut done_prefixes = BTreeSet::new();
        for (lineno, line) in lines {
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| corrupt(lineno, line))?;
            let value = value.trim();
            match key {
                "problem" => problem = Some(value.to_string()),
                "done-through-order" => {
                    done_through =
                        Some(value.parse::<usize>().map_err(|_| corrupt(lineno, line))?);
                }
                "order" => {
                    order = Some(value.parse::<usize>().map_err(|_| corrupt(lineno, line))?);
                }
                "prefix-cells" => {
                    depth = Some(value.parse::<usize>().map_err(|_| corrupt(lineno, line))?);
                }
                "done-prefix" => {
                    let prefix: Vec<u8> = value
                        .split_whitespace()
                        .map(|t| t.parse::<u8>())
                        .collect::<Result<_, _>>()
                        .map_err(|_| corrupt(lineno, line))?;
                    done_prefixes.insert(prefix);
                }
                _ => return Err(corrupt(lineno, line)),
            }
        }
        let problem = problem.ok_or_else(|| corrupt(0, "missing problem line"))?;
        if problem != expected_problem {
            return Err(CheckpointError::ProblemMismatch(problem));
        }
        let done_through = done_through.ok_or_else(|| corrupt(0, "missing done-through-order"))?;
        let in_progress = match (order, depth) {
            (Some(order), Some(depth)) => {
                if order != done_through + 1 {
                    return Err(corrupt(0, "in-progress order must follow the done orders"));
                }
                if done_prefixes.iter().any(|p| p.len() != depth) {
                    return Err(corrupt(0, "prefix width disagrees with prefix-cells"));
                }
                Some(InProgress {
                    order,
                    depth,
                    done_prefixes,
                })
            }
            (None, None) if done_prefixes.is_empty() => None,
            _ => return Err(corrupt(0, "incomplete in-progress section")),
        };
        Ok(Checkpoint {
            problem,
            done_through,
            in_progress,
        })
    }
}
