//! Independent oracles shared by the integration tests. Nothing here calls
//! into the stiffness assembly, the Mittag-Leffler contour code or the
//! weight recursion it is used to check.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Tanh-sinh quadrature on `[a, b]`, halving the step until two successive
/// levels agree to `tol` relative to the integral of `|f|`.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let half = 0.5 * (b - a);
    let t_max = 3.2;
    let eval = |t: f64| -> (f64, f64) {
        let u = 0.5 * PI * t.sinh();
        let c = u.cosh();
        let w = 0.5 * PI * t.cosh() / (c * c);
        // 1 - |tanh u|, kept accurate near the endpoints
        let gap = 1.0 / (u.abs().exp() * c);
        let x = if u >= 0.0 { b - half * gap } else { a + half * gap };
        if x <= a || x >= b {
            return (0.0, 0.0);
        }
        let v = f(x) * w * half;
        if v.is_finite() { (v, v.abs()) } else { (0.0, 0.0) }
    };
    let mut h = 0.5;
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let n = (t_max / h) as i64;
    for i in -n..=n {
        let (v, av) = eval(i as f64 * h);
        sum += v;
        abs_sum += av;
    }
    let mut est = sum * h;
    for _ in 0..7 {
        let n = (t_max / h) as i64;
        for i in -n..n {
            let (v, av) = eval((i as f64 + 0.5) * h);
            sum += v;
            abs_sum += av;
        }
        h *= 0.5;
        let next = sum * h;
        let done = (next - est).abs() <= tol * (abs_sum * h).max(1e-300);
        est = next;
        if done {
            break;
        }
    }
    est
}

/// Recursive adaptive Simpson with Richardson correction.
#[allow(clippy::too_many_arguments)]
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Gamma via mpmath-frozen reference is not available here; the Caputo
/// integral oracle only needs Gamma(1/2) = sqrt(pi).
pub fn sqrt_pi() -> f64 {
    PI.sqrt()
}

/// Hat function of node `c` with width `h`.
fn hat(c: f64, h: f64, x: f64) -> f64 {
    (1.0 - (x - c).abs() / h).max(0.0)
}

/// `C(1,s)/2 * int int_{R x R} (phi_i(x) - phi_i(y)) (phi_j(x) - phi_j(y)) |x-y|^(-1-2s)`
/// for the P1 hats of interior nodes `i + 1`, `j + 1` on a uniform mesh of
/// `(a, b)` with `m` cells, by nested tanh-sinh quadrature split at `x = y`
/// and at every mesh node. The exterior part is integrated in `y` exactly.
pub fn stiffness_entry_oracle(a: f64, b: f64, m: usize, s: f64, i: usize, j: usize, c_ns: f64) -> f64 {
    let h = (b - a) / m as f64;
    let ci = a + (i + 1) as f64 * h;
    let cj = a + (j + 1) as f64 * h;
    let pi_ = |x: f64| hat(ci, h, x);
    let pj = |x: f64| hat(cj, h, x);
    let node = |k: usize| a + k as f64 * h;
    let supp_i = [i, i + 1];
    let supp_j = [j, j + 1];
    let tol = 1e-10;

    let mut inner_total = 0.0;
    for ex in 0..m {
        for ey in 0..m {
            let touches_i = supp_i.contains(&ex) || supp_i.contains(&ey);
            let touches_j = supp_j.contains(&ex) || supp_j.contains(&ey);
            if !(touches_i && touches_j) {
                continue;
            }
            let (y0, y1) = (node(ey), node(ey + 1));
            let g = |x: f64| {
                let k = |y: f64| {
                    let d = (x - y).abs();
                    if d == 0.0 {
                        return 0.0;
                    }
                    (pi_(x) - pi_(y)) * (pj(x) - pj(y)) * d.powf(-1.0 - 2.0 * s)
                };
                if ex == ey {
                    tanh_sinh(k, y0, x, tol) + tanh_sinh(k, x, y1, tol)
                } else {
                    tanh_sinh(k, y0, y1, tol)
                }
            };
            inner_total += tanh_sinh(g, node(ex), node(ex + 1), 1e-9);
        }
    }
    // y outside (a, b): phi(y) = 0 and int |x-y|^(-1-2s) dy is explicit
    let exterior = |x: f64| pi_(x) * pj(x) * ((x - a).powf(-2.0 * s) + (b - x).powf(-2.0 * s)) / (2.0 * s);
    let mut ext_total = 0.0;
    for e in 0..m {
        ext_total += tanh_sinh(exterior, node(e), node(e + 1), tol);
    }
    0.5 * c_ns * (inner_total + 2.0 * ext_total)
}
