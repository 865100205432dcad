//! Dual paths for the reduced adjacent-index systems.
//!
//! Start at `S = (s + beta, h)`, one unit left of the first end point, and
//! walk down to `T = (n + beta, -n)`: step straight down unless the current
//! point lies on one of the family's paths, in which case step diagonally to
//! `(x + 1, y - 1)`. Every path is crossed exactly once, so the walk uses
//! `n - s` diagonal and `h + s` vertical steps, and the map from families to
//! such walks is a bijection.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{LatticePath, LatticePoint};
use crate::arith::{binomial_int, floor_div, Integer};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DualStep {
    Down,
    Diagonal,
}

fn endpoints(n: u32, s: u32, beta: u32, k: u32) -> Result<(LatticePoint, LatticePoint)> {
    if k < 2 || beta > k - 1 || s > n {
        return Err(Error::domain(format!(
            "dual paths need k >= 2, 0 <= beta <= k-1, 0 <= s <= n; got n={n} s={s} beta={beta} k={k}"
        )));
    }
    let (n, s, b) = (i64::from(n), i64::from(s), i64::from(beta));
    let height = floor_div(s + b, i64::from(k) - 1);
    Ok((
        LatticePoint::new(s + b, height),
        LatticePoint::new(n + b, -n),
    ))
}

/// `C(floor((s + beta)/(k-1)) + n, n - s)`: the number of down/diagonal walks
/// from `S` to `T`.
pub fn dual_path_count(n: u32, s: u32, beta: u32, k: u32) -> Result<Integer> {
    let (start, _) = endpoints(n, s, beta, k)?;
    let (n, s) = (i64::from(n), i64::from(s));
    Ok(binomial_int(start.y + n, n - s))
}

/// Counts walks from `from` to `to` using `(0, -1)` and `(1, -1)` steps by
/// exhaustive recursion.
pub fn count_dual_paths(from: LatticePoint, to: LatticePoint) -> u64 {
    if from == to {
        return 1;
    }
    if from.y <= to.y || from.x > to.x {
        return 0;
    }
    count_dual_paths(LatticePoint::new(from.x, from.y - 1), to)
        + count_dual_paths(LatticePoint::new(from.x + 1, from.y - 1), to)
}

/// The dual walk of a family of the reduced system with parameters
/// `(n, s, beta, k)`.
pub fn dual_path(
    n: u32,
    s: u32,
    beta: u32,
    k: u32,
    family: &[LatticePath],
) -> Result<Vec<DualStep>> {
    let (start, end) = endpoints(n, s, beta, k)?;
    let occupied: HashSet<LatticePoint> = family
        .iter()
        .flat_map(|p| p.points().collect::<Vec<_>>())
        .collect();
    let mut p = start;
    let mut steps = Vec::new();
    while p.y > end.y {
        if occupied.contains(&p) {
            steps.push(DualStep::Diagonal);
            p = LatticePoint::new(p.x + 1, p.y - 1);
        } else {
            steps.push(DualStep::Down);
            p = LatticePoint::new(p.x, p.y - 1);
        }
    }
    if p != end {
        return Err(Error::Contract(format!(
            "dual walk ended at {p}, expected {end}"
        )));
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::lgv::{
        adjacent_reduced_config, count_nonintersecting, enumerate_families, EnumerationCap, Step,
    };
    use crate::sequences::fibonacci;

    #[test]
    fn dual_count_examples() {
        for n in 0..=5 {
            assert_eq!(dual_path_count(n, n, 0, 3).unwrap(), int(1));
        }
        assert_eq!(dual_path_count(2, 0, 1, 3).unwrap(), int(1));
        for n in 0..=8u32 {
            let total: Integer = (0..=n).map(|s| dual_path_count(n, s, 0, 2).unwrap()).sum();
            assert_eq!(total, fibonacci(2 * u64::from(n)));
        }
        assert!(dual_path_count(2, 3, 0, 3).is_err());
        assert!(dual_path_count(2, 1, 2, 2).is_err());
    }

    #[test]
    fn dual_count_matches_brute_force() {
        for k in 2..=4u32 {
            for beta in 0..k {
                for n in 0..=4u32 {
                    for s in 0..=n {
                        let (from, to) = endpoints(n, s, beta, k).unwrap();
                        assert_eq!(
                            dual_path_count(n, s, beta, k).unwrap(),
                            int(count_dual_paths(from, to) as i64)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn worked_example_dual_walk() {
        // n = 4, k = 3, beta = 1, s = 2: two paths from (3,-2) and (3,-3)
        let p2 = LatticePath::new(
            LatticePoint::new(3, -2),
            vec![Step::Up, Step::Up, Step::Right, Step::Up],
        );
        let p3 = LatticePath::new(
            LatticePoint::new(3, -3),
            vec![
                Step::Right,
                Step::Up,
                Step::Right,
                Step::Up,
                Step::Up,
                Step::Up,
            ],
        );
        let walk = dual_path(4, 2, 1, 3, &[p2, p3]).unwrap();
        use DualStep::*;
        assert_eq!(walk, [Down, Diagonal, Down, Diagonal, Down]);
    }

    #[test]
    fn dual_walks_biject_with_families() {
        for k in 2..=3u32 {
            for beta in 0..k {
                for n in 1..=4u32 {
                    for s in 0..=n {
                        let cfg = adjacent_reduced_config(n, s, k, beta).unwrap();
                        let families = enumerate_families(&cfg, EnumerationCap::default()).unwrap();
                        let walks: HashSet<Vec<DualStep>> = families
                            .iter()
                            .map(|f| dual_path(n, s, beta, k, f).unwrap())
                            .collect();
                        assert_eq!(walks.len(), families.len(), "injective");
                        let expected = dual_path_count(n, s, beta, k).unwrap();
                        assert_eq!(
                            int(walks.len() as i64),
                            expected,
                            "n={n} s={s} beta={beta} k={k}"
                        );
                        assert_eq!(
                            count_nonintersecting(&cfg, EnumerationCap::default()).unwrap(),
                            expected
                        );
                    }
                }
            }
        }
    }
}
