//! Globally adaptive Gauss–Kronrod (7/15) quadrature.

use alloc::vec::Vec;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Copy, Clone, Debug)]
pub(crate) struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl core::ops::Add for Estimate {
    type Output = Estimate;

    fn add(self, rhs: Estimate) -> Estimate {
        Estimate {
            value: self.value + rhs.value,
            error: self.error + rhs.error,
        }
    }
}

fn kronrod15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Estimate {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for k in 0..7 {
        let dx = half * XGK[k];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[k] * pair;
        if k % 2 == 1 {
            gauss += WG[k / 2] * pair;
        }
    }
    Estimate {
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Integrates `f` over `[a, b]`, bisecting the worst panel until the summed
/// error estimate drops below `abs_tol` or `max_panels` is reached.
pub(crate) fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, abs_tol: f64, max_panels: usize) -> Estimate {
    if a == b {
        return Estimate { value: 0.0, error: 0.0 };
    }
    let mut panels: Vec<(f64, f64, Estimate)> = Vec::with_capacity(64);
    let first = kronrod15(&f, a, b);
    panels.push((a, b, first));
    let mut total = first;
    while total.error > abs_tol && panels.len() < max_panels {
        let (worst, _) =
            panels.iter().enumerate().fold(
                (0, -1.0),
                |(bi, be), (i, p)| if p.2.error > be { (i, p.2.error) } else { (bi, be) },
            );
        let (lo, hi, est) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if !(lo < mid && mid < hi) {
            // cannot split further in floating point
            panels.push((lo, hi, est));
            break;
        }
        let left = kronrod15(&f, lo, mid);
        let right = kronrod15(&f, mid, hi);
        panels.push((lo, mid, left));
        panels.push((mid, hi, right));
        total = panels
            .iter()
            .fold(Estimate { value: 0.0, error: 0.0 }, |acc, p| acc + p.2);
    }
    total
}
