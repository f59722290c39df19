//! Fixed points of cycle maps: bracketing, bisection, stability, and
//! three-cycle search.

use super::{check_domain, AnalysisError};

/// Bisection stops once the bracket is this narrow; residuals stay below
/// 1e-10 for cycle-map slopes up to ~1e3.
const BISECT_TOL: f64 = 1e-13;
/// Roots closer than this are considered the same point.
const MERGE_TOL: f64 = 1e-9;
/// A multiplier within this distance of ±1 is classified nonhyperbolic.
const NONHYPERBOLIC_TOL: f64 = 1e-9;
/// Residual bound for tangential (no sign change) intersections.
const TANGENT_RESIDUAL: f64 = 1e-9;
/// Forward-iteration grouping tolerance for three-cycles.
const GROUP_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Sink,
    Source,
    Nonhyperbolic,
}

/// A fixed point of a cycle map, with the slope of the map there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPoint {
    pub location: f64,
    pub stability: Stability,
    pub multiplier: f64,
}

/// Fixed points sorted by location, deduplicated within [`MERGE_TOL`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FixedPointSet {
    pub points: Vec<FixedPoint>,
}

impl FixedPointSet {
    /// Fixed points away from the origin (the trivial balance point).
    pub fn nontrivial(&self, eps: f64) -> impl Iterator<Item = &FixedPoint> {
        self.points.iter().filter(move |p| p.location.abs() > eps)
    }

    pub fn nontrivial_count(&self, eps: f64) -> usize {
        self.nontrivial(eps).count()
    }
}

/// Finds fixed points of `cycle` on `domain` by bracketing sign changes of
/// `cycle(E) - E` on a `grid_n`-point grid and refining each bracket by
/// bisection. Tangential intersections (an even-order touch leaves no sign
/// change) are picked up by a secondary scan for local minima of the
/// residual magnitude and reported as nonhyperbolic.
pub fn fixed_points(
    cycle: impl Fn(f64) -> f64,
    derivative: impl Fn(f64) -> f64,
    domain: (f64, f64),
    grid_n: usize,
) -> Result<FixedPointSet, AnalysisError> {
    check_domain(domain)?;
    if grid_n < 2 {
        return Err(AnalysisError::GridTooCoarse { got: grid_n, needed: 2 });
    }
    let g = |x: f64| cycle(x) - x;
    let mut roots = scan_roots(&g, domain, grid_n, TANGENT_RESIDUAL);
    roots.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
    roots.dedup_by(|b, a| {
        if (b.x - a.x).abs() <= MERGE_TOL {
            // keep the candidate with the smaller residual
            if b.residual < a.residual {
                *a = *b;
            }
            true
        } else {
            false
        }
    });

    let points = roots
        .into_iter()
        .map(|root| {
            let multiplier = derivative(root.x);
            let stability = if root.tangential || (multiplier.abs() - 1.0).abs() <= NONHYPERBOLIC_TOL
            {
                Stability::Nonhyperbolic
            } else if multiplier.abs() < 1.0 {
                Stability::Sink
            } else {
                Stability::Source
            };
            FixedPoint { location: root.x, stability, multiplier }
        })
        .collect();
    Ok(FixedPointSet { points })
}

/// A period-3 orbit, points sorted ascending; the multiplier is the product
/// of the map slopes around the cycle (central differences).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeCycle {
    pub points: [f64; 3],
    pub multiplier: f64,
}

impl ThreeCycle {
    pub fn is_stable(&self) -> bool {
        self.multiplier.abs() < 1.0
    }
}

/// Finds period-3 orbits of `cycle` on `domain`: roots of the thrice-composed
/// map minus the identity, with fixed points of the map itself filtered out
/// and the remaining roots grouped into cycles by forward iteration.
///
/// An empty result is valid; it simply means no three-cycle was resolved at
/// this grid resolution.
pub fn find_three_cycle(
    cycle: impl Fn(f64) -> f64,
    domain: (f64, f64),
    grid_n: usize,
) -> Result<Vec<ThreeCycle>, AnalysisError> {
    check_domain(domain)?;
    if grid_n < 2 {
        return Err(AnalysisError::GridTooCoarse { got: grid_n, needed: 2 });
    }
    let f3 = |x: f64| cycle(cycle(cycle(x)));
    let g = |x: f64| f3(x) - x;
    let mut roots = scan_roots(&g, domain, grid_n, 0.0);
    roots.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
    roots.dedup_by(|b, a| (b.x - a.x).abs() <= MERGE_TOL);
    // drop fixed points of the map itself
    let candidates: Vec<f64> = roots
        .into_iter()
        .map(|r| r.x)
        .filter(|&x| (cycle(x) - x).abs() > MERGE_TOL)
        .collect();

    let mut claimed = vec![false; candidates.len()];
    let mut cycles = Vec::new();
    for i in 0..candidates.len() {
        if claimed[i] {
            continue;
        }
        let x = candidates[i];
        let y = cycle(x);
        let z = cycle(y);
        let j = match nearest_unclaimed(&candidates, &claimed, y, i) {
            Some(j) => j,
            None => continue,
        };
        claimed[j] = true;
        let k = match nearest_unclaimed(&candidates, &claimed, z, i) {
            Some(k) => k,
            None => {
                claimed[j] = false;
                continue;
            }
        };
        claimed[i] = true;
        claimed[k] = true;
        let mut points = [x, candidates[j], candidates[k]];
        points.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let multiplier: f64 = points.iter().map(|&p| central_difference(&cycle, p)).product();
        cycles.push(ThreeCycle { points, multiplier });
    }
    cycles.sort_by(|a, b| a.points[0].partial_cmp(&b.points[0]).unwrap());
    Ok(cycles)
}

fn nearest_unclaimed(xs: &[f64], claimed: &[bool], target: f64, skip: usize) -> Option<usize> {
    let mut best = None;
    let mut best_dist = GROUP_TOL;
    for (i, &x) in xs.iter().enumerate() {
        if i == skip || claimed[i] {
            continue;
        }
        let d = (x - target).abs();
        if d <= best_dist {
            best_dist = d;
            best = Some(i);
        }
    }
    best
}

fn central_difference(f: &impl Fn(f64) -> f64, x: f64) -> f64 {
    let h = 1e-6 * x.abs().max(1.0);
    (f(x + h) - f(x - h)) / (2.0 * h)
}

#[derive(Debug, Clone, Copy)]
struct RootCandidate {
    x: f64,
    residual: f64,
    tangential: bool,
}

/// Grid scan for roots of `g`: exact zeros at grid nodes, bisection inside
/// sign-change brackets, and (when `tangent_residual > 0`) a ternary-search
/// refinement of residual minima that never cross zero.
fn scan_roots(
    g: &impl Fn(f64) -> f64,
    (lo, hi): (f64, f64),
    grid_n: usize,
    tangent_residual: f64,
) -> Vec<RootCandidate> {
    let step = (hi - lo) / (grid_n - 1) as f64;
    let xs: Vec<f64> =
        (0..grid_n).map(|i| if i == grid_n - 1 { hi } else { lo + step * i as f64 }).collect();
    let gs: Vec<f64> = xs.iter().map(|&x| g(x)).collect();

    let mut out = Vec::new();
    for i in 0..grid_n {
        if gs[i] == 0.0 {
            out.push(RootCandidate { x: xs[i], residual: 0.0, tangential: false });
        }
    }
    for i in 0..grid_n - 1 {
        if gs[i] != 0.0 && gs[i + 1] != 0.0 && (gs[i] < 0.0) != (gs[i + 1] < 0.0) {
            let x = bisect(g, xs[i], xs[i + 1], gs[i]);
            out.push(RootCandidate { x, residual: g(x).abs(), tangential: false });
        }
    }
    if tangent_residual > 0.0 {
        for i in 1..grid_n - 1 {
            let (a, b, c) = (gs[i - 1], gs[i], gs[i + 1]);
            let same_side = (a < 0.0) == (b < 0.0) && (b < 0.0) == (c < 0.0);
            if b != 0.0 && same_side && b.abs() <= a.abs() && b.abs() <= c.abs() {
                let x = ternary_min_abs(g, xs[i - 1], xs[i + 1]);
                let residual = g(x).abs();
                if residual <= tangent_residual {
                    out.push(RootCandidate { x, residual, tangential: true });
                }
            }
        }
    }
    out
}

fn bisect(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut ga: f64) -> f64 {
    for _ in 0..200 {
        if b - a <= BISECT_TOL {
            break;
        }
        let m = 0.5 * (a + b);
        let gm = g(m);
        if gm == 0.0 {
            return m;
        }
        if (ga < 0.0) != (gm < 0.0) {
            b = m;
        } else {
            a = m;
            ga = gm;
        }
    }
    0.5 * (a + b)
}

fn ternary_min_abs(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    for _ in 0..200 {
        if b - a <= BISECT_TOL {
            break;
        }
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if g(m1).abs() <= g(m2).abs() {
            b = m2;
        } else {
            a = m1;
        }
    }
    0.5 * (a + b)
}
