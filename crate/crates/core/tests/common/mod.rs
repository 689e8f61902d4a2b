//! Test-only oracles, independent of the library's quadrature and
//! differentiation paths: adaptive Simpson over closures with recursive
//! refinement, plus closed forms where they exist.

/// One Simpson panel.
fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b))
}

fn refine<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, eps: f64, whole: f64, depth: u32) -> f64 {
    let c = 0.5 * (a + b);
    let left = panel(f, a, c);
    let right = panel(f, c, b);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        left + right + delta / 15.0
    } else {
        refine(f, a, c, 0.5 * eps, left, depth - 1) + refine(f, c, b, 0.5 * eps, right, depth - 1)
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
pub fn quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, eps: f64) -> f64 {
    refine(&f, a, b, eps, panel(&f, a, b), 40)
}

/// Mean and variance of an (unnormalized) density given as a closure.
pub fn moments<F: Fn(f64) -> f64 + Copy>(p: F, a: f64, b: f64, eps: f64) -> (f64, f64) {
    let mass = quad(p, a, b, eps);
    let mean = quad(|x| x * p(x), a, b, eps) / mass;
    let var = quad(|x| (x - mean) * (x - mean) * p(x), a, b, eps) / mass;
    (mean, var)
}
