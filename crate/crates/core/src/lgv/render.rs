use std::collections::HashMap;
use std::fmt::Write as _;

use super::{LatticePath, LatticePoint, PathSystemConfig};

/// Draws a path system, and optionally one family, as a character grid.
///
/// `A`/`E` mark start and end points, digits mark the points of path `i`
/// (mod 10), `/` marks lattice points on the boundary line, `+`, `-` and
/// `|` the axes.
pub fn render_ascii(config: &PathSystemConfig, family: Option<&[LatticePath]>) -> String {
    let mut marks: HashMap<LatticePoint, char> = HashMap::new();
    if let Some(family) = family {
        for (i, path) in family.iter().enumerate() {
            let digit = char::from_digit((i % 10) as u32, 10).expect("digit");
            for p in path.points() {
                marks.insert(p, digit);
            }
        }
    }
    for &p in &config.starts {
        marks.insert(p, 'A');
    }
    for &p in &config.ends {
        marks.insert(p, 'E');
    }

    let mut pts: Vec<LatticePoint> = marks.keys().copied().collect();
    pts.push(LatticePoint::new(0, 0));
    let min_x = pts.iter().map(|p| p.x).min().unwrap() - 1;
    let max_x = pts.iter().map(|p| p.x).max().unwrap() + 1;
    let min_y = pts.iter().map(|p| p.y).min().unwrap() - 1;
    let max_y = pts.iter().map(|p| p.y).max().unwrap() + 1;

    let mut out = String::new();
    match config.constraint {
        Some(c) => writeln!(out, "constraint: x >= {} y", c.mu()).unwrap(),
        None => writeln!(out, "constraint: none").unwrap(),
    }
    for (i, (a, e)) in config.starts.iter().zip(&config.ends).enumerate() {
        writeln!(out, "path {i}: {a} -> {e}").unwrap();
    }
    for y in (min_y..=max_y).rev() {
        let mut line = String::new();
        for x in min_x..=max_x {
            let p = LatticePoint::new(x, y);
            let ch = marks.get(&p).copied().unwrap_or_else(|| {
                if config
                    .constraint
                    .is_some_and(|c| x == i64::from(c.mu()) * y)
                {
                    '/'
                } else if x == 0 && y == 0 {
                    '+'
                } else if y == 0 {
                    '-'
                } else if x == 0 {
                    '|'
                } else {
                    '.'
                }
            });
            line.push(ch);
            line.push(' ');
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
