//! Planar geometry of two-square decompositions: residues selected from a
//! Pisano cycle are mapped to lattice points (x, y) with x^2 + y^2 = r,
//! then measured with the Euclidean metric (extreme pairwise distance,
//! path lengths, and the path-order maximization).

use itertools::Itertools;

use crate::error::{domain, resource, Result};
use crate::fibonacci::pisano_period;

/// Cap on the number of selected residues; the path maximization tries
/// all permutations.
pub const MAX_SELECTION: usize = 8;

/// Guard for the decomposition scan, which is O(sqrt(v)).
pub const MAX_DECOMPOSE_VALUE: u64 = 1_000_000_000;

/// Relative tolerance when comparing candidate path lengths for ties.
const PATH_TIE_TOLERANCE: f64 = 1e-9;

/// A lattice point from a two-square decomposition, with x >= y.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanarPoint {
    pub x: u64,
    pub y: u64,
}

/// Geometry of one residue selection along a Pisano cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleGeometryReport {
    pub modulus: u64,
    pub selection: Vec<u64>,
    /// Decomposition of each selected residue, in selection order.
    pub points: Vec<PlanarPoint>,
    pub max_pairwise_distance: f64,
    /// Length of the longest path over any visiting order of the points.
    pub max_path_length: f64,
    /// The lexicographically smallest residue order attaining it.
    pub max_path_order: Vec<u64>,
    /// Length of the path taken in the order the residues were selected.
    pub given_order_length: f64,
}

/// Writes v = x^2 + y^2 with maximal x (equivalently minimal y), or None
/// when v is not a sum of two squares. The scan tries y = 0, 1, ... so
/// the first hit is the canonical decomposition; x >= y always holds.
pub fn decompose_point(v: u64) -> Result<Option<PlanarPoint>> {
    if v > MAX_DECOMPOSE_VALUE {
        return Err(resource(format!(
            "decomposition target {v} exceeds the guard {MAX_DECOMPOSE_VALUE}"
        )));
    }
    let mut y = 0u64;
    while 2 * y * y <= v {
        let rest = v - y * y;
        let x = rest.isqrt();
        if x * x == rest {
            return Ok(Some(PlanarPoint { x, y }));
        }
        y += 1;
    }
    Ok(None)
}

/// Euclidean distance.
pub fn distance(a: PlanarPoint, b: PlanarPoint) -> f64 {
    let dx = a.x as f64 - b.x as f64;
    let dy = a.y as f64 - b.y as f64;
    dx.hypot(dy)
}

/// Total length of the polyline visiting `points` in order.
pub fn path_length(points: &[PlanarPoint]) -> Result<f64> {
    if points.len() < 2 {
        return Err(domain(format!(
            "a path needs at least 2 points, got {}",
            points.len()
        )));
    }
    Ok(points
        .windows(2)
        .map(|w| distance(w[0], w[1]))
        .sum())
}

/// Full geometric report for a selection of residues from the Pisano
/// cycle mod `modulus`: every selected residue must occur in the cycle
/// and decompose as a sum of two squares.
pub fn cycle_geometry(modulus: u64, selection: &[u64]) -> Result<CycleGeometryReport> {
    if selection.len() < 2 {
        return Err(domain(format!(
            "select at least 2 residues, got {}",
            selection.len()
        )));
    }
    if selection.len() > MAX_SELECTION {
        return Err(resource(format!(
            "selection of {} residues exceeds the permutation guard {MAX_SELECTION}",
            selection.len()
        )));
    }
    let cycle = pisano_period(modulus)?;
    let mut points = Vec::with_capacity(selection.len());
    for &r in selection {
        if !cycle.residues.contains(&r) {
            return Err(domain(format!(
                "residue {r} does not occur in the Pisano cycle mod {modulus}"
            )));
        }
        match decompose_point(r)? {
            Some(pt) => points.push(pt),
            None => {
                return Err(domain(format!(
                    "residue {r} is not a sum of two squares"
                )))
            }
        }
    }

    let mut max_pairwise = 0f64;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            max_pairwise = max_pairwise.max(distance(points[i], points[j]));
        }
    }

    let given_order_length = path_length(&points)?;

    // Exhaustive path maximization; ties go to the lexicographically
    // smallest residue order.
    let mut best_length = f64::NEG_INFINITY;
    let mut best_order: Vec<u64> = Vec::new();
    for perm in (0..points.len()).permutations(points.len()) {
        let length: f64 = perm
            .windows(2)
            .map(|w| distance(points[w[0]], points[w[1]]))
            .sum();
        let order: Vec<u64> = perm.iter().map(|&i| selection[i]).collect();
        if best_order.is_empty() {
            best_length = length;
            best_order = order;
            continue;
        }
        let tol = PATH_TIE_TOLERANCE * (1.0 + best_length.abs());
        if length > best_length + tol {
            best_length = length;
            best_order = order;
        } else if length >= best_length - tol && order < best_order {
            best_length = best_length.max(length);
            best_order = order;
        }
    }

    Ok(CycleGeometryReport {
        modulus,
        selection: selection.to_vec(),
        points,
        max_pairwise_distance: max_pairwise,
        max_path_length: best_length,
        max_path_order: best_order,
        given_order_length,
    })
}

/// Named residue selections used in the worked examples: returns
/// (modulus, selection).
pub fn preset_selection(name: &str) -> Option<(u64, Vec<u64>)> {
    match name {
        "paper-mod4" => Some((4, vec![0, 1, 2])),
        "paper-mod8" => Some((8, vec![0, 1, 2, 5])),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: u64, y: u64) -> PlanarPoint {
        PlanarPoint { x, y }
    }

    #[test]
    fn decompositions_pick_maximal_x() {
        assert_eq!(decompose_point(0).unwrap(), Some(pt(0, 0)));
        assert_eq!(decompose_point(1).unwrap(), Some(pt(1, 0)));
        assert_eq!(decompose_point(2).unwrap(), Some(pt(1, 1)));
        assert_eq!(decompose_point(3).unwrap(), None);
        assert_eq!(decompose_point(5).unwrap(), Some(pt(2, 1)));
        // 25 = 25 + 0 beats 16 + 9.
        assert_eq!(decompose_point(25).unwrap(), Some(pt(5, 0)));
        assert_eq!(decompose_point(6).unwrap(), None);
        assert_eq!(decompose_point(7).unwrap(), None);
    }

    #[test]
    fn decompose_guard() {
        assert!(matches!(
            decompose_point(MAX_DECOMPOSE_VALUE + 1),
            Err(crate::Error::Resource(_))
        ));
    }

    #[test]
    fn metric_basics() {
        assert_eq!(distance(pt(0, 0), pt(3, 4)), 5.0);
        assert_eq!(distance(pt(7, 2), pt(7, 2)), 0.0);
        let l = path_length(&[pt(0, 0), pt(1, 0), pt(1, 1)]).unwrap();
        assert!((l - 2.0).abs() < 1e-12);
        assert!(matches!(
            path_length(&[pt(0, 0)]),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn mod4_preset_geometry() {
        let (modulus, selection) = preset_selection("paper-mod4").unwrap();
        let report = cycle_geometry(modulus, &selection).unwrap();
        assert_eq!(report.points, vec![pt(0, 0), pt(1, 0), pt(1, 1)]);
        assert!((report.max_pairwise_distance - 2f64.sqrt()).abs() < 1e-12);
        assert!((report.given_order_length - 2.0).abs() < 1e-12);
        // Longest of the six orders: 1 + sqrt(2), first attained (in lex
        // order) by [0, 2, 1].
        assert!((report.max_path_length - (1.0 + 2f64.sqrt())).abs() < 1e-12);
        assert_eq!(report.max_path_order, vec![0, 2, 1]);
    }

    #[test]
    fn mod8_preset_geometry() {
        let (modulus, selection) = preset_selection("paper-mod8").unwrap();
        let report = cycle_geometry(modulus, &selection).unwrap();
        assert_eq!(
            report.points,
            vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(2, 1)]
        );
        assert!((report.max_pairwise_distance - 5f64.sqrt()).abs() < 1e-12);
        assert!((report.given_order_length - 3.0).abs() < 1e-12);
        // Heaviest path chains the two sqrt(2) edges through the sqrt(5)
        // diagonal: 2 sqrt(2) + sqrt(5), reached first by [1, 5, 0, 2].
        let want = 2.0 * 2f64.sqrt() + 5f64.sqrt();
        assert!((report.max_path_length - want).abs() < 1e-12);
        assert_eq!(report.max_path_order, vec![1, 5, 0, 2]);
    }

    #[test]
    fn unknown_preset() {
        assert_eq!(preset_selection("paper-mod16"), None);
    }

    #[test]
    fn selection_validation() {
        assert!(matches!(
            cycle_geometry(4, &[0]),
            Err(crate::Error::Domain(_))
        ));
        assert!(matches!(
            cycle_geometry(4, &[0, 1, 1, 2, 0, 1, 1, 2, 0]),
            Err(crate::Error::Resource(_))
        ));
        // 4 is not among the residues of the cycle mod 4 ([0, 1, 1, 2, 3, 1]).
        assert!(matches!(
            cycle_geometry(4, &[0, 4]),
            Err(crate::Error::Domain(_))
        ));
        // 3 occurs mod 4 but is not a sum of two squares.
        assert!(matches!(
            cycle_geometry(4, &[0, 3]),
            Err(crate::Error::Domain(_))
        ));
        // Modulus validation comes from the Pisano machinery.
        assert!(matches!(
            cycle_geometry(1, &[0, 1]),
            Err(crate::Error::Domain(_))
        ));
    }
}
