//! Box-counting and information dimension of the planar curve traced by
//! the real interpolation of the Fibonacci sequence, rasterized to a
//! pixel rectangle. Grids are rotated through a sweep of angles and the
//! count-minimizing rotation is kept, which removes the axis-alignment
//! bias of a fixed grid.

use crate::error::{domain, resource, Result};
use crate::fibonacci::fib_real;

/// Guard on the sample count for rasterization.
pub const MAX_SAMPLES: usize = 10_000_000;

/// A rasterized point set inside [0, width] x [0, height].
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub points: Vec<(f64, f64)>,
    pub width_px: u32,
    pub height_px: u32,
}

/// Parameters of the dimension estimate: box sizes run from
/// `largest_box_px` downward by repeated division by `coef`, stopping at
/// `smallest_box_px`, and grids are retried at rotations
/// 0, rot_increment_deg, ... below 90 degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxParams {
    pub largest_box_px: f64,
    pub coef: f64,
    pub rot_increment_deg: f64,
    pub smallest_box_px: f64,
}

impl BoxParams {
    /// The configuration used throughout the worked examples:
    /// 343 px, coefficient 1.1, 15 degree sweep, 1 px floor.
    pub fn reference() -> Self {
        BoxParams {
            largest_box_px: 343.0,
            coef: 1.1,
            rot_increment_deg: 15.0,
            smallest_box_px: 1.0,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.smallest_box_px > 0.0 && self.smallest_box_px.is_finite()) {
            return Err(domain(format!(
                "smallest box size must be positive, got {}",
                self.smallest_box_px
            )));
        }
        if !(self.largest_box_px >= self.smallest_box_px && self.largest_box_px.is_finite()) {
            return Err(domain(format!(
                "largest box size must be finite and >= the smallest ({}), got {}",
                self.smallest_box_px, self.largest_box_px
            )));
        }
        if !(self.coef > 1.0 && self.coef.is_finite()) {
            return Err(domain(format!(
                "box shrink coefficient must be > 1, got {}",
                self.coef
            )));
        }
        if !(self.rot_increment_deg > 0.0 && self.rot_increment_deg <= 90.0) {
            return Err(domain(format!(
                "rotation increment must lie in (0, 90] degrees, got {}",
                self.rot_increment_deg
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimensionKind {
    Box,
    Information,
}

impl DimensionKind {
    pub fn label(&self) -> &'static str {
        match self {
            DimensionKind::Box => "box",
            DimensionKind::Information => "information",
        }
    }
}

/// A log-log regression summary: `series` holds (ln d, response) pairs,
/// the response being ln N(d) for the box dimension and the grid entropy
/// I(d) for the information dimension. The dimension is the negated
/// regression slope; `stderr` is the standard error of that slope.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionEstimate {
    pub kind: DimensionKind,
    pub series: Vec<(f64, f64)>,
    pub slope: f64,
    pub dimension: f64,
    pub stderr: f64,
}

impl PointCloud {
    pub fn new(points: Vec<(f64, f64)>, width_px: u32, height_px: u32) -> Result<Self> {
        if points.is_empty() {
            return Err(domain("a point cloud needs at least one point"));
        }
        if width_px == 0 || height_px == 0 {
            return Err(domain(format!(
                "pixel dimensions must be positive, got {width_px} x {height_px}"
            )));
        }
        for &(x, y) in &points {
            if !(x.is_finite() && y.is_finite()) {
                return Err(domain("point coordinates must be finite"));
            }
            if x < 0.0 || x > width_px as f64 || y < 0.0 || y > height_px as f64 {
                return Err(domain(format!(
                    "point ({x}, {y}) lies outside [0, {width_px}] x [0, {height_px}]"
                )));
            }
        }
        Ok(PointCloud {
            points,
            width_px,
            height_px,
        })
    }
}

/// Samples fib_real on [-a, a] at `samples` evenly spaced arguments and
/// maps the graph onto a `width_px` x `height_px` rectangle, scaling the
/// argument and value ranges independently. A degenerate value range
/// (constant curve) maps to the horizontal midline.
pub fn rasterize_fib(a: f64, samples: usize, width_px: u32, height_px: u32) -> Result<PointCloud> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(domain(format!("half-width a must be positive, got {a}")));
    }
    if samples < 2 {
        return Err(domain(format!("need at least 2 samples, got {samples}")));
    }
    if samples > MAX_SAMPLES {
        return Err(resource(format!(
            "sample count {samples} exceeds the guard {MAX_SAMPLES}"
        )));
    }
    let mut values = Vec::with_capacity(samples);
    let step = 2.0 * a / (samples - 1) as f64;
    for i in 0..samples {
        let x = -a + step * i as f64;
        values.push((x, fib_real(x)?));
    }
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(_, f) in &values {
        lo = lo.min(f);
        hi = hi.max(f);
    }
    let width = width_px as f64;
    let height = height_px as f64;
    let points = values
        .into_iter()
        .map(|(x, f)| {
            let px = ((x + a) / (2.0 * a) * width).clamp(0.0, width);
            let py = if hi > lo {
                ((f - lo) / (hi - lo) * height).clamp(0.0, height)
            } else {
                height / 2.0
            };
            (px, py)
        })
        .collect();
    PointCloud::new(points, width_px, height_px)
}

/// The default box-size range for a cloud: 10x the smallest positive
/// gap between consecutive samples up to a tenth of the cloud diameter.
/// Degenerate clouds (all points coincident, or so unevenly spread that
/// the lower bound exceeds the upper) are domain errors.
pub fn default_box_range(cloud: &PointCloud) -> Result<(f64, f64)> {
    if cloud.points.len() < 2 {
        return Err(domain("the box-size range needs at least 2 points"));
    }
    let mut min_gap = f64::INFINITY;
    for w in cloud.points.windows(2) {
        let glen = dist(w[0], w[1]);
        if glen > 0.0 {
            min_gap = min_gap.min(glen);
        }
    }
    if !min_gap.is_finite() {
        return Err(domain(
            "all consecutive samples coincide; the cloud has no length scale",
        ));
    }
    let diameter = cloud_diameter(&cloud.points);
    let d_min = 10.0 * min_gap;
    let d_max = diameter / 10.0;
    if d_min > d_max {
        return Err(domain(format!(
            "degenerate box-size range: lower bound {d_min} exceeds upper bound {d_max} \
             (min sample gap {min_gap}, diameter {diameter})"
        )));
    }
    Ok((d_min, d_max))
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// Exact diameter via the convex hull (Andrew's monotone chain) and a
/// scan over hull vertex pairs; hulls of rasterized curves are tiny, so
/// the quadratic scan is cheap and avoids rotating-calipers edge cases.
fn cloud_diameter(points: &[(f64, f64)]) -> f64 {
    let hull = convex_hull(points);
    let mut best = 0f64;
    for i in 0..hull.len() {
        for j in (i + 1)..hull.len() {
            best = best.max(dist(hull[i], hull[j]));
        }
    }
    best
}

fn convex_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(pts.len() * 2);
    for &p in pts.iter().chain(pts.iter().rev().skip(1)) {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Occupied-cell counts for grid size `d`, taken at the rotation (from
/// the sweep 0, inc, ... < 90 degrees about the centroid) that minimizes
/// the number of occupied cells; ties keep the smallest angle.
fn occupancy_at_best_rotation(cloud: &PointCloud, d: f64, rot_increment_deg: f64) -> Vec<usize> {
    assert!(d > 0.0 && d.is_finite(), "box size must be positive");
    assert!(
        rot_increment_deg > 0.0 && rot_increment_deg <= 90.0,
        "rotation increment must lie in (0, 90]"
    );
    let n = cloud.points.len() as f64;
    let (mut cx, mut cy) = (0f64, 0f64);
    for &(x, y) in &cloud.points {
        cx += x;
        cy += y;
    }
    cx /= n;
    cy /= n;

    let mut best: Option<Vec<usize>> = None;
    let mut k = 0u32;
    loop {
        let theta = rot_increment_deg * k as f64;
        if theta >= 90.0 {
            break;
        }
        let (sin, cos) = theta.to_radians().sin_cos();
        let rotated: Vec<(f64, f64)> = cloud
            .points
            .iter()
            .map(|&(x, y)| {
                let (dx, dy) = (x - cx, y - cy);
                (dx * cos - dy * sin, dx * sin + dy * cos)
            })
            .collect();
        let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
        let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for &(x, y) in &rotated {
            min_x = min_x.min(x);
            min_y = min_y.min(y);
            max_x = max_x.max(x);
            max_y = max_y.max(y);
        }
        // Anchor the grid at the bounding-box center: under a quarter-turn
        // or a reflection of the cloud the boundary set maps to itself, so
        // rotating the input by a sweep multiple cannot change the counts,
        // which a corner anchor does not guarantee.
        let mid_x = (min_x + max_x) / 2.0;
        let mid_y = (min_y + max_y) / 2.0;
        let mut cells: Vec<(i64, i64)> = rotated
            .iter()
            .map(|&(x, y)| {
                let ix = ((x - mid_x) / d + 0.5).floor() as i64;
                let iy = ((y - mid_y) / d + 0.5).floor() as i64;
                (ix, iy)
            })
            .collect();
        cells.sort_unstable();
        let mut counts = Vec::new();
        let mut run = 0usize;
        for i in 0..cells.len() {
            run += 1;
            if i + 1 == cells.len() || cells[i + 1] != cells[i] {
                counts.push(run);
                run = 0;
            }
        }
        let better = match &best {
            None => true,
            Some(b) => counts.len() < b.len(),
        };
        if better {
            best = Some(counts);
        }
        k += 1;
    }
    best.expect("the sweep always evaluates angle 0")
}

/// N(d): occupied cells of a grid of size `d`, minimized over the
/// rotation sweep.
pub fn box_count(cloud: &PointCloud, d: f64, rot_increment_deg: f64) -> usize {
    occupancy_at_best_rotation(cloud, d, rot_increment_deg).len()
}

/// Shannon grid entropy I(d) = -sum (m_i/n) ln (m_i/n) at the
/// N(d)-minimizing rotation.
pub fn grid_entropy(cloud: &PointCloud, d: f64, rot_increment_deg: f64) -> f64 {
    let counts = occupancy_at_best_rotation(cloud, d, rot_increment_deg);
    entropy_of_counts(&counts)
}

fn entropy_of_counts(counts: &[usize]) -> f64 {
    let n: usize = counts.iter().sum();
    let n = n as f64;
    // ln n - (1/n) sum m ln m is stabler than summing p ln p directly.
    let weighted: f64 = counts
        .iter()
        .map(|&m| {
            let m = m as f64;
            m * m.ln()
        })
        .sum();
    let value = n.ln() - weighted / n;
    value.max(0.0)
}

fn box_sizes(params: &BoxParams) -> Result<Vec<f64>> {
    params.validate()?;
    let count = (params.largest_box_px.ln() / params.coef.ln()).floor() as usize;
    let mut sizes = Vec::new();
    let mut d = params.largest_box_px;
    for _ in 0..count.max(1) {
        if d < params.smallest_box_px {
            break;
        }
        sizes.push(d);
        d /= params.coef;
    }
    if sizes.len() < 5 {
        return Err(domain(format!(
            "the regression needs at least 5 box sizes, got {} \
             (largest {}, coefficient {}, smallest {})",
            sizes.len(),
            params.largest_box_px,
            params.coef,
            params.smallest_box_px
        )));
    }
    Ok(sizes)
}

/// Least-squares slope of y on x plus the standard error of the slope.
fn fit_slope(series: &[(f64, f64)]) -> (f64, f64) {
    let n = series.len() as f64;
    let mean_x: f64 = series.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y: f64 = series.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0f64;
    let mut sxy = 0f64;
    for &(x, y) in series {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let sse: f64 = series
        .iter()
        .map(|&(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    let dof = n - 2.0;
    let stderr = if dof > 0.0 { (sse / dof / sxx).sqrt() } else { 0.0 };
    (slope, stderr)
}

fn dimension_estimate(
    cloud: &PointCloud,
    params: &BoxParams,
    kind: DimensionKind,
) -> Result<DimensionEstimate> {
    let sizes = box_sizes(params)?;
    let series: Vec<(f64, f64)> = sizes
        .iter()
        .map(|&d| {
            let response = match kind {
                DimensionKind::Box => {
                    (box_count(cloud, d, params.rot_increment_deg) as f64).ln()
                }
                DimensionKind::Information => {
                    grid_entropy(cloud, d, params.rot_increment_deg)
                }
            };
            (d.ln(), response)
        })
        .collect();
    let (slope, stderr) = fit_slope(&series);
    let dimension = if slope == 0.0 { 0.0 } else { -slope };
    Ok(DimensionEstimate {
        kind,
        series,
        slope,
        dimension,
        stderr,
    })
}

/// Box-counting dimension: the negated slope of ln N(d) against ln d.
pub fn box_dimension(cloud: &PointCloud, params: &BoxParams) -> Result<DimensionEstimate> {
    dimension_estimate(cloud, params, DimensionKind::Box)
}

/// Information dimension: the negated slope of I(d) against ln d.
pub fn information_dimension(
    cloud: &PointCloud,
    params: &BoxParams,
) -> Result<DimensionEstimate> {
    dimension_estimate(cloud, params, DimensionKind::Information)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_cloud(side: u32, spacing: f64) -> PointCloud {
        let mut points = Vec::new();
        for i in 0..side {
            for j in 0..side {
                points.push((i as f64 * spacing, j as f64 * spacing));
            }
        }
        let px = ((side - 1) as f64 * spacing) as u32 + 1;
        PointCloud::new(points, px, px).unwrap()
    }

    #[test]
    fn cloud_validation() {
        assert!(matches!(
            PointCloud::new(vec![], 10, 10),
            Err(crate::Error::Domain(_))
        ));
        assert!(matches!(
            PointCloud::new(vec![(0.0, 0.0)], 0, 10),
            Err(crate::Error::Domain(_))
        ));
        assert!(matches!(
            PointCloud::new(vec![(11.0, 0.0)], 10, 10),
            Err(crate::Error::Domain(_))
        ));
        assert!(matches!(
            PointCloud::new(vec![(f64::NAN, 0.0)], 10, 10),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn rasterize_maps_to_pixel_rect() {
        let cloud = rasterize_fib(10.0, 101, 640, 480).unwrap();
        assert_eq!(cloud.points.len(), 101);
        for &(x, y) in &cloud.points {
            assert!((0.0..=640.0).contains(&x));
            assert!((0.0..=480.0).contains(&y));
        }
        // The endpoints span the full width.
        assert_eq!(cloud.points[0].0, 0.0);
        assert_eq!(cloud.points[100].0, 640.0);
        // F_10 = 55 is the maximum on [-10, 10], so some point sits at the
        // top edge and some at the bottom.
        let ys: Vec<f64> = cloud.points.iter().map(|p| p.1).collect();
        assert_eq!(ys.iter().cloned().fold(f64::INFINITY, f64::min), 0.0);
        assert_eq!(ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max), 480.0);
    }

    #[test]
    fn rasterize_validation() {
        assert!(matches!(
            rasterize_fib(0.0, 10, 10, 10),
            Err(crate::Error::Domain(_))
        ));
        assert!(matches!(
            rasterize_fib(10.0, 1, 10, 10),
            Err(crate::Error::Domain(_))
        ));
        assert!(matches!(
            rasterize_fib(10.0, 10, 0, 10),
            Err(crate::Error::Domain(_))
        ));
        // |x| beyond the fib_real guard propagates as a resource error.
        assert!(matches!(
            rasterize_fib(1001.0, 10, 10, 10),
            Err(crate::Error::Resource(_))
        ));
    }

    #[test]
    fn box_range_for_unit_grid() {
        // 100 x 100 grid with unit spacing: min gap 1, diameter 99 sqrt(2).
        let cloud = grid_cloud(100, 1.0);
        let (lo, hi) = default_box_range(&cloud).unwrap();
        assert_eq!(lo, 10.0);
        assert!((hi - 9.9 * 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn box_range_degenerate_cases() {
        let same = PointCloud::new(vec![(3.0, 3.0); 4], 10, 10).unwrap();
        assert!(matches!(
            default_box_range(&same),
            Err(crate::Error::Domain(_))
        ));
        // Two nearby points: min gap and diameter coincide, so the
        // nominal range inverts (10 g > g / 10).
        let two = PointCloud::new(vec![(1.0, 1.0), (2.0, 1.0)], 10, 10).unwrap();
        let err = default_box_range(&two);
        assert!(matches!(err, Err(crate::Error::Domain(_))));
        if let Err(crate::Error::Domain(msg)) = err {
            assert!(msg.contains("10"), "message should carry the bounds: {msg}");
        }
    }

    #[test]
    fn box_count_on_grids() {
        let cloud = grid_cloud(10, 8.0); // 10 x 10 points, 72 px span
        // At d above the diagonal of the span, one box suffices.
        assert_eq!(box_count(&cloud, 120.0, 90.0), 1);
        // Unrotated, d = 8 gives one point per cell (100); rotations can
        // only merge points, and no 8 px cell fits more than a handful of
        // points spaced 8 px apart.
        let n = box_count(&cloud, 8.0, 15.0);
        assert!((25..=100).contains(&n), "n = {n}");
        // Tiny boxes isolate every point.
        assert_eq!(box_count(&cloud, 0.5, 15.0), 100);
    }

    #[test]
    fn box_count_monotone_in_d() {
        let cloud = rasterize_fib(5.0, 2000, 300, 200).unwrap();
        let mut prev = 0usize;
        for d in [64.0, 32.0, 16.0, 8.0, 4.0, 2.0, 1.0] {
            let n = box_count(&cloud, d, 15.0);
            assert!(
                n >= prev,
                "N({d}) = {n} fell below the count {prev} at the next coarser size"
            );
            prev = n;
        }
    }

    #[test]
    fn entropy_bounds() {
        assert_eq!(entropy_of_counts(&[7]), 0.0);
        let e = entropy_of_counts(&[1, 1, 1, 1]);
        assert!((e - 4f64.ln()).abs() < 1e-12);
        let skew = entropy_of_counts(&[3, 1]);
        assert!(skew > 0.0 && skew < 2f64.ln());
    }

    #[test]
    fn single_cell_cloud_has_dimension_zero() {
        let cloud = PointCloud::new(
            vec![(5.0, 5.0), (5.2, 5.1), (4.9, 5.05), (5.1, 4.95)],
            10,
            10,
        )
        .unwrap();
        let params = BoxParams {
            largest_box_px: 32.0,
            coef: 1.3,
            rot_increment_deg: 45.0,
            smallest_box_px: 1.0,
        };
        let est = box_dimension(&cloud, &params).unwrap();
        assert_eq!(est.dimension, 0.0);
        assert_eq!(est.stderr, 0.0);
        let info = information_dimension(&cloud, &params).unwrap();
        assert_eq!(info.dimension, 0.0);
    }

    #[test]
    fn params_validation() {
        let cloud = grid_cloud(4, 10.0);
        let bad = BoxParams {
            largest_box_px: 2.0,
            coef: 1.5,
            rot_increment_deg: 15.0,
            smallest_box_px: 1.0,
        };
        // ln 2 / ln 1.5 ~ 1.7: far fewer than 5 sizes.
        assert!(matches!(
            box_dimension(&cloud, &bad),
            Err(crate::Error::Domain(_))
        ));
        for (coef, rot) in [(1.0, 15.0), (0.9, 15.0), (1.1, 0.0), (1.1, 91.0)] {
            let p = BoxParams {
                largest_box_px: 100.0,
                coef,
                rot_increment_deg: rot,
                smallest_box_px: 1.0,
            };
            assert!(
                matches!(box_dimension(&cloud, &p), Err(crate::Error::Domain(_))),
                "coef {coef} rot {rot}"
            );
        }
    }

    #[test]
    fn reference_params_yield_61_sizes() {
        let sizes = box_sizes(&BoxParams::reference()).unwrap();
        assert_eq!(sizes.len(), 61);
        assert_eq!(sizes[0], 343.0);
        assert!(*sizes.last().unwrap() >= 1.0);
        assert!(sizes.last().unwrap() / 1.1 < 1.1);
    }

    #[test]
    fn line_cloud_dimension_near_one() {
        // 2000 collinear points spanning 400 px.
        let points: Vec<(f64, f64)> = (0..2000)
            .map(|i| (i as f64 * 0.2, 100.0 + i as f64 * 0.1))
            .collect();
        let cloud = PointCloud::new(points, 400, 300).unwrap();
        let params = BoxParams {
            largest_box_px: 40.0,
            coef: 1.15,
            rot_increment_deg: 15.0,
            smallest_box_px: 1.0,
        };
        let est = box_dimension(&cloud, &params).unwrap();
        assert!(
            (est.dimension - 1.0).abs() < 0.15,
            "dimension {}",
            est.dimension
        );
        let info = information_dimension(&cloud, &params).unwrap();
        assert!(
            (info.dimension - 1.0).abs() < 0.15,
            "dimension {}",
            info.dimension
        );
    }

    #[test]
    fn information_response_bounded_by_log_count() {
        let cloud = rasterize_fib(5.0, 1000, 200, 150).unwrap();
        for d in [40.0, 20.0, 10.0, 5.0] {
            let n = box_count(&cloud, d, 30.0);
            let i = grid_entropy(&cloud, d, 30.0);
            assert!(i <= (n as f64).ln() + 1e-9, "d = {d}: I = {i}, N = {n}");
            assert!(i >= 0.0);
        }
    }
}
