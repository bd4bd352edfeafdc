//! Adaptive explicit Runge-Kutta integration with the Dormand-Prince 8(5,3)
//! pair, specialised to small fixed-size systems.
//!
//! Error control follows Hairer, Norsett and Wanner: the local error is
//! estimated from a blend of the embedded 5th and 3rd order solutions and
//! the step is accepted when the scaled RMS norm is at most one.

#![allow(clippy::excessive_precision)]

use crate::error::{Result, SpectrumError};

/// Right-hand side of `y' = f(t, y)` for an `N`-dimensional state.
pub trait OdeSystem<const N: usize> {
    fn rhs(&self, t: f64, y: &[f64; N]) -> [f64; N];
}

/// Tolerances and limits of the integrator.
#[derive(Debug, Clone, Copy)]
pub struct Dop853 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    pub h_init: f64,
}

impl Default for Dop853 {
    fn default() -> Self {
        Self { rtol: 1e-12, atol: 1e-12, max_steps: 200_000, h_init: 0.05 }
    }
}

const SAFE: f64 = 0.9;
const FACC1: f64 = 1.0 / 0.333;
const FACC2: f64 = 1.0 / 6.0;

#[inline]
fn axpy<const N: usize>(y: &[f64; N], terms: &[(f64, &[f64; N])], h: f64) -> [f64; N] {
    let mut out = *y;
    for (c, k) in terms {
        let ch = c * h;
        for i in 0..N {
            out[i] += ch * k[i];
        }
    }
    out
}

impl Dop853 {
    pub fn with_tolerance(rtol: f64, atol: f64) -> Self {
        Self { rtol, atol, ..Self::default() }
    }

    /// State at `t1` starting from `y0` at `t0` (`t1 > t0`).
    pub fn integrate<S: OdeSystem<N>, const N: usize>(
        &self,
        sys: &S,
        t0: f64,
        y0: [f64; N],
        t1: f64,
    ) -> Result<[f64; N]> {
        let mut h = self.h_init.min(t1 - t0);
        let mut steps = 0;
        self.advance(sys, t0, y0, t1, &mut h, &mut steps)
    }

    /// States at each of the increasing times `ts` (all `>= t0`).
    pub fn integrate_sampled<S: OdeSystem<N>, const N: usize>(
        &self,
        sys: &S,
        t0: f64,
        y0: [f64; N],
        ts: &[f64],
    ) -> Result<Vec<[f64; N]>> {
        let mut out = Vec::with_capacity(ts.len());
        let mut t = t0;
        let mut y = y0;
        let mut h = self.h_init;
        let mut steps = 0;
        for &target in ts {
            if target < t {
                return Err(SpectrumError::Domain("sample times must be increasing".into()));
            }
            if target > t {
                y = self.advance(sys, t, y, target, &mut h, &mut steps)?;
                t = target;
            }
            out.push(y);
        }
        Ok(out)
    }

    fn advance<S: OdeSystem<N>, const N: usize>(
        &self,
        sys: &S,
        mut t: f64,
        mut y: [f64; N],
        t_end: f64,
        h: &mut f64,
        steps: &mut usize,
    ) -> Result<[f64; N]> {
        let mut k1 = sys.rhs(t, &y);
        let mut last_rejected = false;
        while t < t_end {
            if *steps >= self.max_steps {
                return Err(SpectrumError::Integration { at: t, reason: "step budget exhausted".into() });
            }
            let remaining = t_end - t;
            let mut step = h.min(remaining);
            // avoid a tiny trailing step
            if remaining - step < 1e-3 * step {
                step = remaining;
            }
            if step <= f64::EPSILON * t.abs().max(1.0) {
                return Err(SpectrumError::Integration { at: t, reason: "step size underflow".into() });
            }
            *steps += 1;
            let (y_new, k_new, err) = self.trial_step(sys, t, &y, &k1, step);
            let fac11 = err.powf(1.0 / 8.0);
            let fac = FACC2.max(FACC1.min(fac11 / SAFE));
            let mut h_new = step / fac;
            if err <= 1.0 {
                t = if step == remaining { t_end } else { t + step };
                y = y_new;
                k1 = k_new;
                if last_rejected {
                    h_new = h_new.min(step);
                }
                last_rejected = false;
                if !h_new.is_finite() {
                    return Err(SpectrumError::Integration { at: t, reason: "non-finite step size".into() });
                }
                *h = h_new;
            } else {
                if !err.is_finite() {
                    return Err(SpectrumError::Integration { at: t, reason: "non-finite error estimate".into() });
                }
                *h = step / FACC1.min(fac11 / SAFE);
                last_rejected = true;
            }
        }
        Ok(y)
    }

    /// One DOP853 step; returns the new state, `f` at the new state and the
    /// scaled error norm.
    fn trial_step<S: OdeSystem<N>, const N: usize>(
        &self,
        sys: &S,
        t: f64,
        y: &[f64; N],
        k1: &[f64; N],
        h: f64,
    ) -> ([f64; N], [f64; N], f64) {
        let k2 = sys.rhs(t + C2 * h, &axpy(y, &[(A21, k1)], h));
        let k3 = sys.rhs(t + C3 * h, &axpy(y, &[(A31, k1), (A32, &k2)], h));
        let k4 = sys.rhs(t + C4 * h, &axpy(y, &[(A41, k1), (A43, &k3)], h));
        let k5 = sys.rhs(t + C5 * h, &axpy(y, &[(A51, k1), (A53, &k3), (A54, &k4)], h));
        let k6 = sys.rhs(t + C6 * h, &axpy(y, &[(A61, k1), (A64, &k4), (A65, &k5)], h));
        let k7 = sys.rhs(t + C7 * h, &axpy(y, &[(A71, k1), (A74, &k4), (A75, &k5), (A76, &k6)], h));
        let k8 = sys.rhs(
            t + C8 * h,
            &axpy(y, &[(A81, k1), (A84, &k4), (A85, &k5), (A86, &k6), (A87, &k7)], h),
        );
        let k9 = sys.rhs(
            t + C9 * h,
            &axpy(y, &[(A91, k1), (A94, &k4), (A95, &k5), (A96, &k6), (A97, &k7), (A98, &k8)], h),
        );
        let k10 = sys.rhs(
            t + C10 * h,
            &axpy(
                y,
                &[(A101, k1), (A104, &k4), (A105, &k5), (A106, &k6), (A107, &k7), (A108, &k8), (A109, &k9)],
                h,
            ),
        );
        let k11 = sys.rhs(
            t + C11 * h,
            &axpy(
                y,
                &[
                    (A111, k1), (A114, &k4), (A115, &k5), (A116, &k6), (A117, &k7),
                    (A118, &k8), (A119, &k9), (A1110, &k10),
                ],
                h,
            ),
        );
        let y12 = axpy(
            y,
            &[
                (A121, k1), (A124, &k4), (A125, &k5), (A126, &k6), (A127, &k7),
                (A128, &k8), (A129, &k9), (A1210, &k10), (A1211, &k11),
            ],
            h,
        );
        let k12 = sys.rhs(t + h, &y12);

        let mut incr = [0.0; N];
        for i in 0..N {
            incr[i] = B1 * k1[i] + B6 * k6[i] + B7 * k7[i] + B8 * k8[i] + B9 * k9[i]
                + B10 * k10[i] + B11 * k11[i] + B12 * k12[i];
        }
        let mut y_new = *y;
        for i in 0..N {
            y_new[i] += h * incr[i];
        }

        let mut err = 0.0;
        let mut err2 = 0.0;
        for i in 0..N {
            let sk = self.atol + self.rtol * y[i].abs().max(y_new[i].abs());
            let e2 = incr[i] - BHH1 * k1[i] - BHH2 * k9[i] - BHH3 * k12[i];
            err2 += (e2 / sk).powi(2);
            let e = ER1 * k1[i] + ER6 * k6[i] + ER7 * k7[i] + ER8 * k8[i] + ER9 * k9[i]
                + ER10 * k10[i] + ER11 * k11[i] + ER12 * k12[i];
            err += (e / sk).powi(2);
        }
        let mut deno = err + 0.01 * err2;
        if deno <= 0.0 {
            deno = 1.0;
        }
        let err = h.abs() * err * (1.0 / (deno * N as f64)).sqrt();
        let k_new = sys.rhs(t + h, &y_new);
        (y_new, k_new, err)
    }
}

// Dormand-Prince 8(5,3) coefficients.
const A21: f64 = 5.26001519587677318785587544488E-2;
const A31: f64 = 1.97250569845378994544595329183E-2;
const A32: f64 = 5.91751709536136983633785987549E-2;
const A41: f64 = 2.95875854768068491816892993775E-2;
const A43: f64 = 8.87627564304205475450678981324E-2;
const A51: f64 = 2.41365134159266685502369798665E-1;
const A53: f64 = -8.84549479328286085344864962717E-1;
const A54: f64 = 9.24834003261792003115737966543E-1;
const A61: f64 = 3.7037037037037037037037037037E-2;
const A64: f64 = 1.70828608729473871279604482173E-1;
const A65: f64 = 1.25467687566822425016691814123E-1;
const A71: f64 = 3.7109375E-2;
const A74: f64 = 1.70252211019544039314978060272E-1;
const A75: f64 = 6.02165389804559606850219397283E-2;
const A76: f64 = -1.7578125E-2;
const A81: f64 = 3.70920001185047927108779319836E-2;
const A84: f64 = 1.70383925712239993810214054705E-1;
const A85: f64 = 1.07262030446373284651809199168E-1;
const A86: f64 = -1.53194377486244017527936158236E-2;
const A87: f64 = 8.27378916381402288758473766002E-3;
const A91: f64 = 6.24110958716075717114429577812E-1;
const A94: f64 = -3.36089262944694129406857109825E0;
const A95: f64 = -8.68219346841726006818189891453E-1;
const A96: f64 = 2.75920996994467083049415600797E1;
const A97: f64 = 2.01540675504778934086186788979E1;
const A98: f64 = -4.34898841810699588477366255144E1;
const A101: f64 = 4.77662536438264365890433908527E-1;
const A104: f64 = -2.48811461997166764192642586468E0;
const A105: f64 = -5.90290826836842996371446475743E-1;
const A106: f64 = 2.12300514481811942347288949897E1;
const A107: f64 = 1.52792336328824235832596922938E1;
const A108: f64 = -3.32882109689848629194453265587E1;
const A109: f64 = -2.03312017085086261358222928593E-2;
const A111: f64 = -9.3714243008598732571704021658E-1;
const A114: f64 = 5.18637242884406370830023853209E0;
const A115: f64 = 1.09143734899672957818500254654E0;
const A116: f64 = -8.14978701074692612513997267357E0;
const A117: f64 = -1.85200656599969598641566180701E1;
const A118: f64 = 2.27394870993505042818970056734E1;
const A119: f64 = 2.49360555267965238987089396762E0;
const A1110: f64 = -3.0467644718982195003823669022E0;
const A121: f64 = 2.27331014751653820792359768449E0;
const A124: f64 = -1.05344954667372501984066689879E1;
const A125: f64 = -2.00087205822486249909675718444E0;
const A126: f64 = -1.79589318631187989172765950534E1;
const A127: f64 = 2.79488845294199600508499808837E1;
const A128: f64 = -2.85899827713502369474065508674E0;
const A129: f64 = -8.87285693353062954433549289258E0;
const A1210: f64 = 1.23605671757943030647266201528E1;
const A1211: f64 = 6.43392746015763530355970484046E-1;
const B1: f64 = 5.42937341165687622380535766363E-2;
const B6: f64 = 4.45031289275240888144113950566E0;
const B7: f64 = 1.89151789931450038304281599044E0;
const B8: f64 = -5.8012039600105847814672114227E0;
const B9: f64 = 3.1116436695781989440891606237E-1;
const B10: f64 = -1.52160949662516078556178806805E-1;
const B11: f64 = 2.01365400804030348374776537501E-1;
const B12: f64 = 4.47106157277725905176885569043E-2;
const BHH1: f64 = 0.244094488188976377952755905512E+00;
const BHH2: f64 = 0.733846688281611857341361741547E+00;
const BHH3: f64 = 0.220588235294117647058823529412E-01;
const C2: f64 = 0.526001519587677318785587544488E-01;
const C3: f64 = 0.789002279381515978178381316732E-01;
const C4: f64 = 0.118350341907227396726757197510E+00;
const C5: f64 = 0.281649658092772603273242802490E+00;
const C6: f64 = 0.333333333333333333333333333333E+00;
const C7: f64 = 0.25E+00;
const C8: f64 = 0.307692307692307692307692307692E+00;
const C9: f64 = 0.651282051282051282051282051282E+00;
const C10: f64 = 0.6E+00;
const C11: f64 = 0.857142857142857142857142857142E+00;
const ER1: f64 = 0.1312004499419488073250102996E-01;
const ER6: f64 = -0.1225156446376204440720569753E+01;
const ER7: f64 = -0.4957589496572501915214079952E+00;
const ER8: f64 = 0.1664377182454986536961530415E+01;
const ER9: f64 = -0.3503288487499736816886487290E+00;
const ER10: f64 = 0.3341791187130174790297318841E+00;
const ER11: f64 = 0.8192320648511571246570742613E-01;
const ER12: f64 = -0.2235530786388629525884427845E-01;

#[cfg(test)]
mod tests {
    use super::*;

    struct Oscillator(f64);
    impl OdeSystem<2> for Oscillator {
        fn rhs(&self, _t: f64, y: &[f64; 2]) -> [f64; 2] {
            [y[1], -self.0 * self.0 * y[0]]
        }
    }

    struct Decay;
    impl OdeSystem<1> for Decay {
        fn rhs(&self, t: f64, y: &[f64; 1]) -> [f64; 1] {
            [-2.0 * t * y[0]]
        }
    }

    #[test]
    fn harmonic_oscillator_full_period() {
        let w = 3.0;
        let y = Dop853::default()
            .integrate(&Oscillator(w), 0.0, [1.0, 0.0], 2.0 * std::f64::consts::PI)
            .unwrap();
        assert!((y[0] - 1.0).abs() < 1e-10, "{y:?}");
        assert!(y[1].abs() < 1e-9, "{y:?}");
    }

    #[test]
    fn gaussian_decay() {
        let y = Dop853::default().integrate(&Decay, 0.0, [1.0], 2.0).unwrap();
        assert!((y[0] - (-4.0f64).exp()).abs() < 1e-13);
    }

    #[test]
    fn sampled_matches_direct() {
        let sys = Oscillator(1.5);
        let ts: Vec<f64> = (1..=20).map(|i| i as f64 * 0.25).collect();
        let out = Dop853::default().integrate_sampled(&sys, 0.0, [0.0, 1.0], &ts).unwrap();
        for (t, y) in ts.iter().zip(&out) {
            assert!((y[0] - (1.5 * t).sin() / 1.5).abs() < 1e-11);
        }
    }

    #[test]
    fn eighth_order_convergence_with_loose_tolerance() {
        // Tighter tolerance must give a smaller error.
        let sys = Oscillator(5.0);
        let t1 = 3.0;
        let exact = (5.0f64 * t1).cos();
        let e_loose = (Dop853::with_tolerance(1e-6, 1e-6).integrate(&sys, 0.0, [1.0, 0.0], t1).unwrap()[0] - exact).abs();
        let e_tight = (Dop853::with_tolerance(1e-12, 1e-12).integrate(&sys, 0.0, [1.0, 0.0], t1).unwrap()[0] - exact).abs();
        assert!(e_tight < e_loose);
        assert!(e_tight < 1e-10);
    }
}
