//! Reader for the LP text the restricted master exports, so an export can
//! be re-solved and checked.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Result};
use mrp_core::master::{LinearProgram, RowKind};

enum Section {
    Objective,
    Constraints,
    Bounds,
}

/// Parses `+ a name` / `- a name` term lists; returns the terms and the
/// remainder after the last term.
fn terms(tokens: &[&str]) -> Result<Vec<(f64, String)>> {
    let mut out = Vec::new();
    let mut it = tokens.iter();
    while let Some(&sign) = it.next() {
        let s = match sign {
            "+" => 1.0,
            "-" => -1.0,
            _ => bail!("expected a sign, found {sign:?}"),
        };
        let coef: f64 = it.next().ok_or_else(|| anyhow!("dangling sign"))?.parse()?;
        let name = it.next().ok_or_else(|| anyhow!("missing variable"))?;
        out.push((s * coef, name.to_string()));
    }
    Ok(out)
}

fn note(name: &str, cost: &mut BTreeMap<String, f64>, order: &mut Vec<String>) {
    if !cost.contains_key(name) {
        cost.insert(name.to_string(), 0.0);
        order.push(name.to_string());
    }
}

/// Builds the program the text describes. Variables are nonnegative unless
/// a bound line says otherwise.
pub fn parse_lp(text: &str) -> Result<LinearProgram> {
    let mut section = None;
    let mut cost: BTreeMap<String, f64> = BTreeMap::new();
    let mut order: Vec<String> = Vec::new();
    let mut rows: Vec<(RowKind, f64, Vec<(f64, String)>)> = Vec::new();
    let mut upper: BTreeMap<String, f64> = BTreeMap::new();
    let mut objective = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        match line {
            "Minimize" => {
                section = Some(Section::Objective);
                continue;
            }
            "Subject To" => {
                section = Some(Section::Constraints);
                continue;
            }
            "Bounds" => {
                section = Some(Section::Bounds);
                continue;
            }
            "End" => break,
            _ => {}
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match section {
            Some(Section::Objective) => objective.extend(terms(&tokens[1..])?),
            Some(Section::Constraints) => {
                let n = tokens.len();
                if n < 3 {
                    bail!("short constraint line {line:?}");
                }
                let kind = match tokens[n - 2] {
                    "<=" => RowKind::Le,
                    "=" => RowKind::Eq,
                    op => bail!("unsupported relation {op:?}"),
                };
                let rhs: f64 = tokens[n - 1].parse()?;
                rows.push((kind, rhs, terms(&tokens[1..n - 2])?));
            }
            Some(Section::Bounds) => match tokens.as_slice() {
                [_, ">=", "0"] => {}
                [_, "<=", v] => {
                    upper.insert(tokens[0].to_string(), v.parse()?);
                }
                _ => bail!("unsupported bound {line:?}"),
            },
            None => bail!("text before the objective: {line:?}"),
        }
    }
    for (c, name) in &objective {
        note(name, &mut cost, &mut order);
        *cost.get_mut(name).unwrap() += c;
    }
    for (_, _, ts) in &rows {
        for (_, name) in ts {
            note(name, &mut cost, &mut order);
        }
    }
    let mut lp = LinearProgram::new();
    let mut entries: BTreeMap<&str, Vec<(usize, f64)>> = BTreeMap::new();
    for (kind, rhs, ts) in &rows {
        let i = lp.add_row(*kind, *rhs);
        for (a, name) in ts {
            if *a != 0.0 {
                entries.entry(name).or_default().push((i, *a));
            }
        }
    }
    for name in &order {
        let hi = upper.get(name).copied().unwrap_or(f64::INFINITY);
        lp.add_column(cost[name], 0.0, hi, entries.remove(name.as_str()).unwrap_or_default());
    }
    Ok(lp)
}

/// Optimal objective of an LP text.
pub fn solve_lp_text(text: &str) -> Result<f64> {
    let mut lp = parse_lp(text)?;
    lp.solve()?;
    Ok(lp.objective())
}
