use crate::surface::{hill_potential, metric_p, SurfaceParams};

/// A `pi`-periodic Sturm-Liouville operator
/// `-(P u')' + Q u = lambda W u` with `P, W > 0`.
///
/// Solutions are carried in quasi-derivative form `(u, v = P u')`, which
/// keeps the system free of `P'`.
pub trait SturmLiouville: Sync {
    /// `(P(y), W(y), Q(y))`.
    fn coefficients(&self, y: f64) -> (f64, f64, f64);

    /// A value strictly below the lowest periodic eigenvalue.
    fn spectrum_lower_bound(&self) -> f64 {
        -0.5
    }
}

/// The separated equation on `tau_{m,k}` for Fourier index `l`:
/// `P = W = p`, `Q = l^2 / p`.
#[derive(Debug, Clone, Copy)]
pub struct LawsonProblem {
    pub params: SurfaceParams,
    pub l: f64,
}

impl LawsonProblem {
    pub fn new(params: SurfaceParams, l: f64) -> Self {
        Self { params, l }
    }
}

impl SturmLiouville for LawsonProblem {
    #[inline]
    fn coefficients(&self, y: f64) -> (f64, f64, f64) {
        let p = metric_p(&self.params, y);
        (p, p, self.l * self.l / p)
    }
}

/// Hill form `-z'' + V(l, y) z = lambda z` of the same equation.
#[derive(Debug, Clone, Copy)]
pub struct HillProblem {
    pub params: SurfaceParams,
    pub l: f64,
}

impl SturmLiouville for HillProblem {
    fn coefficients(&self, y: f64) -> (f64, f64, f64) {
        (1.0, 1.0, hill_potential(&self.params, self.l, y))
    }

    fn spectrum_lower_bound(&self) -> f64 {
        // V can be negative but the spectrum equals the Lawson one, which is >= 0.
        -0.5
    }
}

/// Trigonometric Lame equation with `n = 1` and eigenparameter `h`.
///
/// With `w = sqrt(1 - khat^2 s^2)` (`s = sin y`, or `cos y` for the
/// alternate form) the equation
/// `(1 - khat^2 s^2) phi'' -+ khat^2 sin y cos y phi' + (h - 2 khat^2 s^2) phi = 0`
/// is the Sturm-Liouville problem `-(w phi')' + (2 khat^2 s^2 / w) phi = h phi / w`.
#[derive(Debug, Clone, Copy)]
pub struct LameN1Problem {
    pub khat: f64,
    /// Use `cos y` in place of `sin y`.
    pub alternate: bool,
}

impl SturmLiouville for LameN1Problem {
    fn coefficients(&self, y: f64) -> (f64, f64, f64) {
        let s = if self.alternate { y.cos() } else { y.sin() };
        let ks2 = self.khat * self.khat * s * s;
        let w = (1.0 - ks2).sqrt();
        (w, 1.0 / w, 2.0 * ks2 / w)
    }
}
