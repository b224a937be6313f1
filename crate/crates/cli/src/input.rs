//! Command-line set expressions.
//!
//! An expression is either `Y` or a comma-separated multiplier list. In
//! `scan`, any term may carry an inclusive range on its trailing integer,
//! `L:1..9`, `2^2..14/2` or `4..40/3`, and a list expands to the cartesian
//! product of its terms.

use cantor_core::automaton::{build_multi_with, BuildOptions};
use cantor_core::families::y_graph;
use cantor_core::ternary::parse_multipliers;
use cantor_core::{Error, Multiplier, PointedLabeledGraph, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetExpr {
    Y,
    Multipliers(Vec<Multiplier>),
}

impl SetExpr {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("y") {
            return Ok(SetExpr::Y);
        }
        Ok(SetExpr::Multipliers(parse_multipliers(s)?))
    }

    pub fn build(&self, opts: &BuildOptions) -> Result<PointedLabeledGraph> {
        match self {
            SetExpr::Y => Ok(y_graph()),
            SetExpr::Multipliers(ms) => build_multi_with(ms, opts),
        }
    }
}

fn parse_error(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

/// Expands one term such as `2^2..14/2` into `2^2, 2^4, …, 2^14`.
fn expand_term(term: &str) -> Result<Vec<String>> {
    let term = term.trim();
    let Some((head, tail)) = term.split_once("..") else {
        return Ok(vec![term.to_string()]);
    };
    let split = head
        .rfind(|c: char| !c.is_ascii_digit())
        .map_or(0, |i| i + 1);
    let (prefix, lo) = head.split_at(split);
    let (hi, step) = match tail.split_once('/') {
        Some((hi, step)) => (hi, step),
        None => (tail, "1"),
    };
    let num = |s: &str| {
        s.parse::<u64>()
            .map_err(|_| parse_error(term, format!("`{s}` is not a range bound")))
    };
    let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
    if step == 0 || lo > hi {
        return Err(parse_error(term, "empty range"));
    }
    Ok((lo..=hi)
        .step_by(step as usize)
        .map(|v| format!("{prefix}{v}"))
        .collect())
}

/// Expands a scan entry into the multiplier lists it stands for.
pub fn expand(entry: &str) -> Result<Vec<String>> {
    let mut out = vec![String::new()];
    for term in entry.split(',') {
        let values = expand_term(term)?;
        out = out
            .iter()
            .flat_map(|acc| {
                values.iter().map(move |v| {
                    if acc.is_empty() {
                        v.clone()
                    } else {
                        format!("{acc},{v}")
                    }
                })
            })
            .collect();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(expand("7").unwrap(), vec!["7"]);
        assert_eq!(expand("L:1..3").unwrap(), vec!["L:1", "L:2", "L:3"]);
        assert_eq!(
            expand("2^2..8/2").unwrap(),
            vec!["2^2", "2^4", "2^6", "2^8"]
        );
        assert_eq!(expand("4..10/3").unwrap(), vec!["4", "7", "10"]);
        assert_eq!(expand("7,19..22/3").unwrap(), vec!["7,19", "7,22"]);
        assert_eq!(expand("1..2,4..5").unwrap().len(), 4);
        assert!(expand("5..2").is_err());
        assert!(expand("L:1..x").is_err());
    }

    #[test]
    fn set_expressions() {
        assert_eq!(SetExpr::parse("Y").unwrap(), SetExpr::Y);
        assert!(matches!(SetExpr::parse("7,19").unwrap(), SetExpr::Multipliers(v) if v.len() == 2));
        assert!(SetExpr::parse("7,x").is_err());
    }
}
