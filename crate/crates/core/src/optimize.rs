//! Small derivative-free search routines: grid scans with golden-section
//! refinement, bisection, and a two-dimensional Nelder–Mead simplex.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes `f` on `[lo, hi]` by golden-section search until the bracket is
/// narrower than `width`. Returns the best point seen, which for a unimodal
/// `f` is the maximizer.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, width: f64) -> (f64, f64) {
    let mut best = (lo, f(lo));
    let consider = |t: f64, v: f64, best: &mut (f64, f64)| {
        if v > best.1 || (v == best.1 && t < best.0) {
            *best = (t, v);
        }
    };
    let v_hi = f(hi);
    consider(hi, v_hi, &mut best);

    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > width {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
        consider(c, fc, &mut best);
        consider(d, fd, &mut best);
    }
    best
}

/// Grid-then-golden maximization of `f` over `[0, 1]`.
///
/// The grid has spacing at most `step`; ties on the grid resolve to the
/// smallest argument. The bracket around the best grid node is then refined
/// to `width`. The returned value never exceeds the true supremum.
pub fn grid_golden_max<F: Fn(f64) -> f64>(f: F, step: f64, width: f64) -> (f64, f64) {
    let n = ((1.0 / step).ceil() as usize).max(1);
    let mut best_i = 0;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..=n {
        let v = f(i as f64 / n as f64);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let lo = best_i.saturating_sub(1) as f64 / n as f64;
    let hi = (best_i + 1).min(n) as f64 / n as f64;
    let (t, v) = golden_max(&f, lo, hi, width);
    if v > best_v {
        (t, v)
    } else {
        (best_i as f64 / n as f64, best_v)
    }
}

/// Bisection for a sign change of `f` on `[lo, hi]`. Returns `None` when the
/// endpoints do not bracket a root.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Some(lo);
    }
    if f_hi == 0.0 {
        return Some(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return None;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Some(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Nelder–Mead maximization in two dimensions.
///
/// Stops once the simplex diameter drops below `tol` or after `max_iter`
/// iterations. `f` may return `-inf` to reject a point.
pub fn nelder_mead_max<F: Fn([f64; 2]) -> f64>(
    f: F,
    start: [f64; 2],
    scale: f64,
    tol: f64,
    max_iter: usize,
) -> ([f64; 2], f64) {
    let mut simplex = [
        start,
        [start[0] + scale, start[1]],
        [start[0], start[1] + scale],
    ];
    let mut values = simplex.map(&f);

    for _ in 0..max_iter {
        // sort descending by value (best first)
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
        simplex = idx.map(|i| simplex[i]);
        values = idx.map(|i| values[i]);

        let diameter = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .map(|(i, j)| (simplex[i][0] - simplex[j][0]).hypot(simplex[i][1] - simplex[j][1]))
            .fold(0.0, f64::max);
        if diameter < tol {
            break;
        }

        let centroid = [
            0.5 * (simplex[0][0] + simplex[1][0]),
            0.5 * (simplex[0][1] + simplex[1][1]),
        ];
        let along = |coef: f64| {
            [
                centroid[0] + coef * (simplex[2][0] - centroid[0]),
                centroid[1] + coef * (simplex[2][1] - centroid[1]),
            ]
        };

        let reflected = along(-1.0);
        let f_r = f(reflected);
        if f_r > values[0] {
            let expanded = along(-2.0);
            let f_e = f(expanded);
            if f_e > f_r {
                simplex[2] = expanded;
                values[2] = f_e;
            } else {
                simplex[2] = reflected;
                values[2] = f_r;
            }
            continue;
        }
        if f_r > values[1] {
            simplex[2] = reflected;
            values[2] = f_r;
            continue;
        }
        let contracted = if f_r > values[2] { along(-0.5) } else { along(0.5) };
        let f_c = f(contracted);
        if f_c > values[2].max(f_r) {
            simplex[2] = contracted;
            values[2] = f_c;
            continue;
        }
        // shrink toward the best vertex
        for i in 1..3 {
            simplex[i] = [
                simplex[0][0] + 0.5 * (simplex[i][0] - simplex[0][0]),
                simplex[0][1] + 0.5 * (simplex[i][1] - simplex[0][1]),
            ];
            values[i] = f(simplex[i]);
        }
    }

    let best = (0..3).max_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    (simplex[best], values[best])
}
