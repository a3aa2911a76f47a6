//! Test-only oracles, independent of the library's code paths.
#![allow(dead_code)]

pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn mobius_trial(mut n: u64) -> i8 {
    let mut k = 0;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            k += 1;
        }
        d += 1;
    }
    if n > 1 {
        k += 1;
    }
    if k % 2 == 0 { 1 } else { -1 }
}

// 15-point Kronrod nodes/weights with embedded 7-point Gauss weights.
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
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive Gauss–Kronrod integration to relative tolerance `rtol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rtol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rtol: f64, whole: f64, depth: u32) -> f64 {
        let (v, err) = gk15(f, a, b);
        if err <= rtol * whole.abs().max(v.abs()) || depth > 50 {
            return v;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, rtol, whole, depth + 1) + rec(f, m, b, rtol, whole, depth + 1)
    }
    let (est, _) = gk15(&f, a, b);
    rec(&f, a, b, rtol, est, 0)
}

/// li(x) = PV ∫₀ˣ dt/ln t by quadrature only. With s = ln t the integral is
/// PV ∫_{−∞}^{u} eˢ/s ds; folding the symmetric part around 0 gives
/// ∫₀ᵘ 2 sinh(s)/s ds − ∫ᵤ^∞ e^{−s}/s ds, both regular.
pub fn li_quadrature(x: f64) -> f64 {
    let u = x.ln();
    let shi = integrate(|s: f64| if s == 0.0 { 2.0 } else { 2.0 * s.sinh() / s }, 0.0, u, 1e-14);
    // s = u + t/(1 − t) maps [0, 1) onto [u, ∞)
    let e1 = integrate(
        |t: f64| {
            if t >= 1.0 {
                return 0.0;
            }
            let s = u + t / (1.0 - t);
            (-s).exp() / s / ((1.0 - t) * (1.0 - t))
        },
        0.0,
        1.0,
        1e-14,
    );
    shi - e1
}
