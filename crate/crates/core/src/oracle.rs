//! Brute-force and analytic checks of the optimality results.
//!
//! Nothing in here is used to *compute* the boundary. Grid searches and
//! finite differences go through the raw rate formulas only, so they can
//! be compared against the closed-form solutions of [`crate::capacity`].

use alloc::vec::Vec;

use crate::capacity::{
    optimal_for_lambda, rates_general_raw, rates_independent, z_rate, BoundaryPoint,
};
use crate::channel::{BroadcastZChannel, RngStream, Strategy};
use crate::error::{Error, Result};
use crate::math::{entropy_derivative, entropy_nats as h, relative_entropy};

/// A uniform grid over `[0, 1]` for each strategy coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    step: f64,
    intervals: usize,
    include_gamma: bool,
}

impl GridSpec {
    pub fn new(step: f64, include_gamma: bool) -> Result<Self> {
        if !(step > 0.0 && step <= 0.1) {
            return Err(Error::Config(alloc::format!(
                "grid step {step} outside (0, 0.1]"
            )));
        }
        let intervals = libm::round(1.0 / step);
        if (intervals * step - 1.0).abs() > 1e-12 {
            return Err(Error::Config(alloc::format!(
                "grid step {step} does not divide 1"
            )));
        }
        Ok(GridSpec {
            step,
            intervals: intervals as usize,
            include_gamma,
        })
    }

    /// Like [`GridSpec::new`] but without the `step <= 0.1` cap, for tiny
    /// sanity grids.
    pub fn coarse(intervals: usize, include_gamma: bool) -> Self {
        GridSpec {
            step: 1.0 / intervals as f64,
            intervals,
            include_gamma,
        }
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn intervals(&self) -> usize {
        self.intervals
    }

    pub fn include_gamma(&self) -> bool {
        self.include_gamma
    }

    /// Grid value at index `i`; exact at both ends.
    #[inline]
    pub fn value(&self, i: usize) -> f64 {
        if i == self.intervals {
            1.0
        } else {
            i as f64 / self.intervals as f64
        }
    }
}

/// A grid strategy with its rate pair, in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub mu1: f64,
    pub mu2: f64,
    pub gamma: f64,
    pub r1_bits: f64,
    pub r2_bits: f64,
}

impl GridPoint {
    /// Distance in grid steps from the faces where a strategy can be
    /// optimal (`mu2` in {0,1}, `gamma` in {0, mu1}), after relabeling so
    /// that `gamma <= mu1`.
    pub fn interior_margin(&self, step: f64) -> f64 {
        let (mu1, mu2, g) = if self.gamma <= self.mu1 {
            (self.mu1, self.mu2, self.gamma)
        } else {
            (self.gamma, 1.0 - self.mu2, self.mu1)
        };
        let m = mu2.min(1.0 - mu2).min(g).min(mu1 - g);
        m / step
    }
}

/// All rate pairs of a grid and the indices of its Pareto frontier.
#[derive(Debug, Clone)]
pub struct GridHull {
    pub points: Vec<GridPoint>,
    /// Indices into `points`, ordered by decreasing `R1`.
    pub frontier: Vec<usize>,
}

impl GridHull {
    pub fn frontier_points(&self) -> impl Iterator<Item = &GridPoint> + '_ {
        self.frontier.iter().map(move |&i| &self.points[i])
    }
}

/// Evaluates every `(mu1, mu2, gamma)` of the grid (only `gamma = 0` when
/// `include_gamma` is off) and extracts the Pareto frontier.
pub fn grid_hull(ch: &BroadcastZChannel, g: &GridSpec) -> GridHull {
    let n = g.intervals;
    let gammas = if g.include_gamma { n + 1 } else { 1 };
    let mut points = Vec::with_capacity((n + 1) * (n + 1) * gammas);
    for i in 0..=n {
        let mu1 = g.value(i);
        for j in 0..=n {
            let mu2 = g.value(j);
            for k in 0..gammas {
                let gamma = g.value(k);
                let (r1_bits, r2_bits) = rates_general_raw(mu1, mu2, gamma, ch).bits();
                points.push(GridPoint {
                    mu1,
                    mu2,
                    gamma,
                    r1_bits,
                    r2_bits,
                });
            }
        }
    }
    let frontier = pareto_frontier(&points);
    GridHull { points, frontier }
}

/// Indices of points not dominated in both coordinates, by decreasing
/// `R1`. Among exact duplicates the first in input order is kept.
pub fn pareto_frontier(points: &[GridPoint]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (pa, pb) = (&points[a], &points[b]);
        pb.r1_bits
            .total_cmp(&pa.r1_bits)
            .then(pb.r2_bits.total_cmp(&pa.r2_bits))
            .then(a.cmp(&b))
    });
    let mut best_r2 = f64::NEG_INFINITY;
    let mut frontier = Vec::new();
    for i in order {
        if points[i].r2_bits > best_r2 {
            best_r2 = points[i].r2_bits;
            frontier.push(i);
        }
    }
    frontier
}

/// Upper-right convex hull of a Pareto frontier given by decreasing `R1`;
/// returns the subset of frontier indices that are hull vertices.
pub fn upper_hull(points: &[GridPoint], frontier: &[usize]) -> Vec<usize> {
    let mut hull: Vec<usize> = Vec::new();
    for &i in frontier {
        while hull.len() >= 2 {
            let a = &points[hull[hull.len() - 2]];
            let b = &points[hull[hull.len() - 1]];
            let c = &points[i];
            // Walking with decreasing R1, a hull vertex must turn clockwise.
            let cross = (b.r1_bits - a.r1_bits) * (c.r2_bits - a.r2_bits)
                - (b.r2_bits - a.r2_bits) * (c.r1_bits - a.r1_bits);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    hull
}

/// `R2` of a traced boundary at abscissa `r1_bits`, linearly interpolated.
/// `boundary` must be ordered by decreasing `R1` (as returned by
/// `trace_boundary`). Returns `None` beyond the largest `R1`.
pub fn boundary_r2_at(boundary: &[BoundaryPoint], r1_bits: f64) -> Option<f64> {
    let first = boundary.first()?;
    let last = boundary.last()?;
    let (b1, b2) = first.rates.bits();
    if r1_bits > b1 {
        return None;
    }
    if r1_bits == b1 {
        return Some(b2);
    }
    let (a1, a2) = last.rates.bits();
    if r1_bits <= a1 {
        return Some(a2);
    }
    // R1 strictly decreases along the sweep.
    let idx = boundary.partition_point(|p| p.rates.bits().0 > r1_bits);
    let (x0, y0) = boundary[idx - 1].rates.bits();
    let (x1, y1) = boundary[idx].rates.bits();
    let t = (r1_bits - x0) / (x1 - x0);
    Some(y0 + t * (y1 - y0))
}

/// Smallest `t` such that some point of the polyline through `boundary`
/// has `R1 >= r1 - t` and `R2 >= r2 - t` (bits); zero or negative when the
/// point is dominated. Points between traced points are reachable by time
/// sharing, so the polyline lies inside the true region.
pub fn dominance_excess(boundary: &[BoundaryPoint], r1_bits: f64, r2_bits: f64) -> f64 {
    let at = |b: &BoundaryPoint| {
        let (x, y) = b.rates.bits();
        (r1_bits - x).max(r2_bits - y)
    };
    let mut best = boundary.iter().map(at).fold(f64::INFINITY, f64::min);
    for w in boundary.windows(2) {
        let (x0, y0) = w[0].rates.bits();
        let (x1, y1) = w[1].rates.bits();
        // r1 - x(t) rises and r2 - y(t) falls along the segment; the max of
        // the two is smallest where they cross.
        let den = (x1 - x0) - (y1 - y0);
        if den == 0.0 {
            continue;
        }
        let t = ((r1_bits - x0) - (r2_bits - y0)) / den;
        if t > 0.0 && t < 1.0 {
            let v = (r1_bits - x0 - t * (x1 - x0)).max(r2_bits - y0 - t * (y1 - y0));
            best = best.min(v);
        }
    }
    best
}

/// Largest [`dominance_excess`] over the grid's Pareto frontier, with the
/// offending point.
pub fn frontier_excess(hull: &GridHull, boundary: &[BoundaryPoint]) -> (f64, Option<GridPoint>) {
    let mut worst = (f64::NEG_INFINITY, None);
    for p in hull.frontier_points() {
        let e = dominance_excess(boundary, p.r1_bits, p.r2_bits);
        if e > worst.0 {
            worst = (e, Some(*p));
        }
    }
    worst
}

/// `R2` of the upper hull `hull` (indices into `points`, decreasing `R1`)
/// at abscissa `r1_bits`; `None` outside the hull's `R1` range.
pub fn hull_r2_at(points: &[GridPoint], hull: &[usize], r1_bits: f64) -> Option<f64> {
    if let [only] = hull {
        let p = &points[*only];
        return (p.r1_bits == r1_bits).then_some(p.r2_bits);
    }
    for w in hull.windows(2) {
        let (a, b) = (&points[w[0]], &points[w[1]]);
        if r1_bits <= a.r1_bits && r1_bits >= b.r1_bits {
            let t = (r1_bits - a.r1_bits) / (b.r1_bits - a.r1_bits);
            return Some(a.r2_bits + t * (b.r2_bits - a.r2_bits));
        }
    }
    None
}

/// How the strictly interior grid strategies sit relative to the hull
/// spanned by the face strategies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteriorReport {
    pub interior_points: usize,
    /// Interior points that are vertices of the full grid's upper hull.
    pub interior_hull_vertices: usize,
    /// Largest height (bits) of an interior point above the upper hull of
    /// the non-interior points; negative when all lie strictly below.
    pub max_excess_bits: f64,
    /// Smallest vertical gap (bits) between an interior point and the
    /// traced boundary.
    pub min_boundary_gap_bits: f64,
}

/// Classifies grid points as interior when they are at least
/// `min_steps` grid steps from every optimal face.
pub fn interior_report(
    hull: &GridHull,
    step: f64,
    min_steps: f64,
    boundary: &[BoundaryPoint],
) -> InteriorReport {
    let is_interior = |p: &GridPoint| p.interior_margin(step) >= min_steps - 1e-9;
    let face: Vec<GridPoint> = hull
        .points
        .iter()
        .copied()
        .filter(|p| !is_interior(p))
        .collect();
    let face_hull = upper_hull(&face, &pareto_frontier(&face));
    let full_hull = upper_hull(&hull.points, &hull.frontier);
    let interior_hull_vertices = full_hull
        .iter()
        .filter(|&&i| is_interior(&hull.points[i]))
        .count();
    let right_edge = face[face_hull[0]].r1_bits;
    let mut report = InteriorReport {
        interior_points: 0,
        interior_hull_vertices,
        max_excess_bits: f64::NEG_INFINITY,
        min_boundary_gap_bits: f64::INFINITY,
    };
    for p in hull.points.iter().filter(|p| is_interior(p)) {
        report.interior_points += 1;
        let excess = match hull_r2_at(&face, &face_hull, p.r1_bits) {
            Some(r2) => p.r2_bits - r2,
            None => p.r1_bits - right_edge,
        };
        report.max_excess_bits = report.max_excess_bits.max(excess);
        report.min_boundary_gap_bits = report
            .min_boundary_gap_bits
            .min(gap_below_boundary(boundary, p.r1_bits, p.r2_bits));
    }
    report
}

/// Signed vertical gap `R2_boundary(r1) - r2` in bits; negative when the
/// point lies above the traced boundary. Points to the right of point B
/// report minus their horizontal excess.
pub fn gap_below_boundary(boundary: &[BoundaryPoint], r1_bits: f64, r2_bits: f64) -> f64 {
    match boundary_r2_at(boundary, r1_bits) {
        Some(b2) => b2 - r2_bits,
        None => {
            let (b1, _) = boundary[0].rates.bits();
            -(r1_bits - b1).max(r2_bits)
        }
    }
}

/// Closed-form first-order rate changes along the two perturbation
/// directions used to show that strictly interior strategies are not
/// optimal, with finite-difference confirmations.
///
/// Direction 1 moves `(mu1, mu2, gamma)` by `(mu2', 0, -mu2)` and keeps the
/// zero probability of `x` fixed; direction 2 moves by
/// `(gamma - mu1, mu2, 0)`. Coefficients are per unit of the step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaReport {
    pub d1_i1: f64,
    pub d1_i2: f64,
    pub d2_i1: f64,
    pub d2_i2: f64,
    /// Central differences of the rate formulas along the same directions,
    /// in the order `[d1_i1, d1_i2, d2_i1, d2_i2]`.
    pub finite_differences: [f64; 4],
    /// `|fd - closed| / |closed|` per coefficient.
    pub fd_residuals: [f64; 4],
}

impl DeltaReport {
    /// The expected sign pattern `(-, +, +, -)`.
    pub fn signs_ok(&self) -> bool {
        self.d1_i1 < 0.0 && self.d1_i2 > 0.0 && self.d2_i1 > 0.0 && self.d2_i2 < 0.0
    }

    pub fn max_residual(&self) -> f64 {
        self.fd_residuals.iter().copied().fold(0.0, f64::max)
    }

    /// `d1_i2/d1_i1 < d2_i2/d2_i1 < 0`: direction 1 is steeper, so a mix
    /// of the two directions raises both rates.
    pub fn slope_inequality_holds(&self) -> bool {
        let s1 = self.d1_i2 / self.d1_i1;
        let s2 = self.d2_i2 / self.d2_i1;
        s1 < s2 && s2 < 0.0
    }
}

fn require_interior(s: &Strategy) -> Result<(f64, f64, f64)> {
    let (mu1, mu2, g) = (s.mu1.get(), s.mu2.get(), s.gamma.get());
    if mu2 > 0.0 && mu2 < 1.0 && g > 0.0 && g < mu1 {
        Ok((mu1, mu2, g))
    } else {
        Err(Error::NotInterior { mu1, mu2, gamma: g })
    }
}

/// Closed-form directional derivatives and their central-difference checks
/// with step `delta`.
pub fn directional_deltas(s: &Strategy, ch: &BroadcastZChannel, delta: f64) -> Result<DeltaReport> {
    let (mu1, mu2, g) = require_interior(s)?;
    if !(delta > 0.0 && delta <= 1e-4) {
        return Err(Error::Domain {
            what: "directional_deltas step",
            value: delta,
        });
    }
    let (a1, a2) = (ch.pass1(), ch.pass2());
    let nmu2 = 1.0 - mu2;
    let logit = |p: f64| -entropy_derivative(p); // ln(p/(1-p))

    let d1_i1 = -mu2 * nmu2 * a1 * (entropy_derivative(g * a1) + logit(mu1 * a1));
    let d1_i2 = mu2 * nmu2 * a2 * (entropy_derivative(g * a2) + logit(mu1 * a2));
    let d2_i1 = mu2 * relative_entropy(g * a1, mu1 * a1);
    let d2_i2 = -mu2 * relative_entropy(g * a2, mu1 * a2);

    let along = |dir: (f64, f64, f64), t: f64| {
        let r = rates_general_raw(mu1 + dir.0 * t, mu2 + dir.1 * t, g + dir.2 * t, ch);
        (r.r1.get(), r.r2.get())
    };
    // Five-point stencil: truncation error O(delta^4).
    let central = |dir: (f64, f64, f64)| {
        let (p1, p2) = along(dir, delta);
        let (m1, m2) = along(dir, -delta);
        let (pp1, pp2) = along(dir, 2.0 * delta);
        let (mm1, mm2) = along(dir, -2.0 * delta);
        let d = |p: f64, m: f64, pp: f64, mm: f64| (8.0 * (p - m) - (pp - mm)) / (12.0 * delta);
        (d(p1, m1, pp1, mm1), d(p2, m2, pp2, mm2))
    };
    let (f11, f12) = central((nmu2, 0.0, -mu2));
    let (f21, f22) = central((g - mu1, mu2, 0.0));
    let closed = [d1_i1, d1_i2, d2_i1, d2_i2];
    let fd = [f11, f12, f21, f22];
    let mut res = [0.0; 4];
    for i in 0..4 {
        res[i] = (fd[i] - closed[i]).abs() / closed[i].abs();
    }
    Ok(DeltaReport {
        d1_i1,
        d1_i2,
        d2_i1,
        d2_i2,
        finite_differences: fd,
        fd_residuals: res,
    })
}

/// Whether the slope inequality holds at an interior strategy.
pub fn check_slope_inequality(s: &Strategy, ch: &BroadcastZChannel) -> Result<bool> {
    Ok(directional_deltas(s, ch, 1e-6)?.slope_inequality_holds())
}

/// `g(a, b) = ln(a/b) ln((1-a)/(1-b)) - ln(a/b)^2 + ln((1-a)/(1-b)) (1/a - 1/b)`,
/// positive for `0 < b < a < 1` and zero on the diagonal.
pub fn g_value(a: f64, b: f64) -> Result<f64> {
    for v in [a, b] {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::Domain {
                what: "g_value",
                value: v,
            });
        }
    }
    let la = libm::log(a / b);
    let lb = libm::log((1.0 - a) / (1.0 - b));
    Ok(la * lb - la * la + lb * (1.0 / a - 1.0 / b))
}

/// The function whose root in `mu2` is the boundary partner of `mu1`:
///
/// ```text
/// m(mu2) = (H(mu1 a1) - mu1 H(a1)) ln(1 - mu1 a2)
///        - (H(mu1 a2) - mu1 a2 ln((1 - mu2 mu1 a2)/(mu2 mu1 a2))) ln(1 - mu1 a1)
/// ```
///
/// Increasing in `mu2`, `-inf` as `mu2 -> 0`.
pub fn m_value(mu2: f64, mu1: f64, ch: &BroadcastZChannel) -> Result<f64> {
    if !(mu2 > 0.0 && mu2 <= 1.0) {
        return Err(Error::Domain {
            what: "m_value",
            value: mu2,
        });
    }
    if !(mu1 > 0.0 && mu1 <= 1.0) {
        return Err(Error::Domain {
            what: "m_value mu1",
            value: mu1,
        });
    }
    let (a1, a2) = (ch.pass1(), ch.pass2());
    let t = mu2 * mu1 * a2;
    let bracket = h(mu1 * a2) - mu1 * a2 * libm::log((1.0 - t) / t);
    Ok(z_rate(mu1, a1) * libm::log1p(-mu1 * a2) - bracket * libm::log1p(-mu1 * a1))
}

/// Grid argmax of `I1 + lambda I2` against the closed-form optimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theorem3Report {
    pub lambda: f64,
    pub step: f64,
    pub case: u8,
    pub grid_mu1: f64,
    pub grid_mu2: f64,
    pub grid_objective: f64,
    pub closed_mu1: f64,
    pub closed_mu2: f64,
    pub closed_objective: f64,
    /// `max(|grid_mu1 - closed_mu1|, |grid_mu2 - closed_mu2|)`.
    pub distance: f64,
    pub agree: bool,
}

/// Grid-maximizes `I1 + lambda I2` over `(mu1, mu2)` with `gamma = 0` and
/// compares with [`optimal_for_lambda`]. Agreement means a distance of at
/// most two grid steps.
pub fn verify_theorem3(lambda: f64, ch: &BroadcastZChannel, step: f64) -> Result<Theorem3Report> {
    let intervals = libm::round(1.0 / step);
    if !(step > 0.0 && step <= 1e-3) || (intervals * step - 1.0).abs() > 1e-9 {
        return Err(Error::Config(alloc::format!(
            "weighted-sum grid step {step} must divide 1 and be <= 1e-3"
        )));
    }
    let n = intervals as usize;
    let at = |i: usize| if i == n { 1.0 } else { i as f64 / n as f64 };
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for i in 0..=n {
        let mu1 = at(i);
        for j in 0..=n {
            let mu2 = at(j);
            let v = rates_independent(mu1, mu2, ch).weighted(lambda);
            if v > best.0 {
                best = (v, mu1, mu2);
            }
        }
    }
    let opt = optimal_for_lambda(lambda, ch)?;
    let distance = (best.1 - opt.point.mu1)
        .abs()
        .max((best.2 - opt.point.mu2).abs());
    Ok(Theorem3Report {
        lambda,
        step,
        case: opt.case.number(),
        grid_mu1: best.1,
        grid_mu2: best.2,
        grid_objective: best.0,
        closed_mu1: opt.point.mu1,
        closed_mu2: opt.point.mu2,
        closed_objective: opt.point.rates.weighted(lambda),
        distance,
        agree: distance <= 2.0 * step,
    })
}

/// A random channel with `0.02 <= alpha1 < alpha2 <= 0.95` and a gap of at
/// least 0.02.
pub fn random_channel(rng: &mut RngStream) -> BroadcastZChannel {
    loop {
        let a = 0.02 + 0.93 * rng.uniform();
        let b = 0.02 + 0.93 * rng.uniform();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if hi - lo >= 0.02 {
            return BroadcastZChannel::new(lo, hi).expect("ordered and in range");
        }
    }
}

/// A random strategy with `0 < mu2 < 1` and `0 < gamma < mu1`, at least
/// `margin` away from each of those faces.
pub fn random_interior_strategy(rng: &mut RngStream, margin: f64) -> Strategy {
    let span = 1.0 - 2.0 * margin;
    let mu2 = margin + span * rng.uniform();
    let mu1 = 2.0 * margin + (1.0 - 2.0 * margin) * rng.uniform();
    let gamma = margin + (mu1 - 2.0 * margin) * rng.uniform();
    Strategy::new(mu1, mu2, gamma).expect("inside the unit cube")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::{solve_mu2, trace_boundary};

    fn ch() -> BroadcastZChannel {
        BroadcastZChannel::new(0.15, 0.6).unwrap()
    }

    #[test]
    fn grid_spec_validation() {
        assert!(GridSpec::new(0.01, true).is_ok());
        assert!(GridSpec::new(0.03, true).is_err());
        assert!(GridSpec::new(0.5, true).is_err());
        assert!(GridSpec::new(0.0, true).is_err());
        assert_eq!(GridSpec::new(0.01, true).unwrap().value(100), 1.0);
    }

    #[test]
    fn tiny_grid() {
        let hull = grid_hull(&ch(), &GridSpec::coarse(2, true));
        assert_eq!(hull.points.len(), 27);
        // (0,0) is achieved (e.g. mu2 = 0, gamma = 0) but always dominated.
        assert!(hull
            .points
            .iter()
            .any(|p| p.r1_bits == 0.0 && p.r2_bits == 0.0));
        assert!(hull
            .frontier_points()
            .all(|p| p.r1_bits > 0.0 || p.r2_bits > 0.0));
    }

    #[test]
    fn pareto_frontier_of_known_set() {
        let pt = |r1, r2| GridPoint {
            mu1: 0.0,
            mu2: 0.0,
            gamma: 0.0,
            r1_bits: r1,
            r2_bits: r2,
        };
        let pts = [
            pt(1.0, 0.0),
            pt(0.5, 0.5),
            pt(0.4, 0.4),
            pt(0.0, 1.0),
            pt(0.5, 0.5),
            pt(0.2, 0.9),
        ];
        assert_eq!(pareto_frontier(&pts), alloc::vec![0, 1, 5, 3]);
        // (0.5, 0.5) sits below the chord from (1, 0) to (0.2, 0.9).
        let hull = upper_hull(&pts, &pareto_frontier(&pts));
        assert_eq!(hull, alloc::vec![0, 5, 3]);
    }

    #[test]
    fn interior_margin_uses_canonical_form() {
        let p = GridPoint {
            mu1: 0.3,
            mu2: 0.5,
            gamma: 0.6,
            r1_bits: 0.0,
            r2_bits: 0.0,
        };
        assert!((p.interior_margin(0.01) - 30.0).abs() < 1e-9);
    }

    #[test]
    fn deltas_at_reference_strategy() {
        let s = Strategy::new(0.7, 0.5, 0.2).unwrap();
        let r = directional_deltas(&s, &ch(), 1e-6).unwrap();
        assert!(r.signs_ok());
        assert!(r.slope_inequality_holds());
        assert!(r.max_residual() < 1e-6, "{:?}", r);
        assert!(check_slope_inequality(&s, &ch()).unwrap());
    }

    #[test]
    fn deltas_reject_boundary_strategies() {
        let s = Strategy::new(0.7, 0.5, 0.7).unwrap();
        assert!(matches!(
            check_slope_inequality(&s, &ch()),
            Err(Error::NotInterior { .. })
        ));
        let s = Strategy::new(0.7, 1.0, 0.2).unwrap();
        assert!(directional_deltas(&s, &ch(), 1e-6).is_err());
    }

    #[test]
    fn second_direction_vanishes_as_gamma_reaches_mu1() {
        let c = ch();
        let far = directional_deltas(&Strategy::new(0.7, 0.5, 0.5).unwrap(), &c, 1e-6).unwrap();
        let near = directional_deltas(&Strategy::new(0.7, 0.5, 0.6999).unwrap(), &c, 1e-6).unwrap();
        assert!(near.d2_i1 < 1e-6 * far.d2_i1.max(1.0));
        assert!(near.d2_i1 > 0.0);
    }

    #[test]
    fn g_function() {
        assert!(g_value(0.5, 0.5).unwrap().abs() < 1e-12);
        assert!(g_value(0.8, 0.3).unwrap() > 0.0);
        for i in 1..19 {
            for j in 1..i {
                let (a, b) = (i as f64 * 0.05, j as f64 * 0.05);
                assert!(g_value(a, b).unwrap() > 0.0, "g({a},{b})");
            }
        }
        assert!(g_value(1.0, 0.5).is_err());
    }

    #[test]
    fn m_function_root_and_monotonicity() {
        let c = ch();
        for mu1 in [0.5, 0.7, 0.9, 1.0] {
            let mu2 = solve_mu2(mu1, &c).unwrap();
            assert!(m_value(mu2, mu1, &c).unwrap().abs() < 1e-9);
            assert!(m_value(1.0, mu1, &c).unwrap() > 0.0);
            assert!(m_value(1e-12, mu1, &c).unwrap() < 0.0);
        }
        let mut prev = f64::NEG_INFINITY;
        for i in 1..=100 {
            let v = m_value(i as f64 / 100.0, 0.7, &c).unwrap();
            assert!(v > prev);
            prev = v;
        }
        assert!(m_value(0.0, 0.7, &c).is_err());
    }

    #[test]
    fn boundary_interpolation() {
        let c = ch();
        let b = trace_boundary(&c, 50).unwrap();
        let (x, y) = b[10].rates.bits();
        assert!((boundary_r2_at(&b, x).unwrap() - y).abs() < 1e-15);
        assert!(boundary_r2_at(&b, b[0].rates.bits().0 + 0.01).is_none());
        assert!(gap_below_boundary(&b, x, y - 0.01) > 0.0);
    }

    #[test]
    fn interior_points_stay_below_face_hull_on_coarse_grid() {
        let g = GridSpec::new(0.05, true).unwrap();
        let hull = grid_hull(&ch(), &g);
        let b = trace_boundary(&ch(), 100).unwrap();
        let r = interior_report(&hull, g.step(), 2.0, &b);
        assert!(r.interior_points > 0);
        assert_eq!(r.interior_hull_vertices, 0);
        assert!(r.max_excess_bits < 0.0, "{r:?}");
        assert!(r.min_boundary_gap_bits > 0.0);
    }

    #[test]
    fn coarse_frontier_is_dominated_by_the_boundary() {
        let g = GridSpec::new(0.05, true).unwrap();
        let hull = grid_hull(&ch(), &g);
        let b = trace_boundary(&ch(), 200).unwrap();
        let (e, _) = frontier_excess(&hull, &b);
        assert!(e <= 1e-3, "{e}");
        // The endpoints are matched exactly.
        assert!(dominance_excess(&b, b[0].rates.bits().0, b[0].rates.bits().1).abs() < 1e-15);
    }
}
