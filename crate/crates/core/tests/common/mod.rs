#![allow(dead_code)]

use compliance_core::Mat6;
use num_complex::Complex64;

/// Coefficients `c[0..=6]` of `det(λI - A) = Σ c_k λ^(6-k)` by the
/// Faddeev–LeVerrier recursion.
pub fn char_poly(a: &Mat6) -> [f64; 7] {
    let n = 6;
    let mut c = [0.0; 7];
    c[0] = 1.0;
    let mut m = [[0.0; 6]; 6];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{k-1} I
        let mut next = [[0.0; 6]; 6];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for l in 0..n {
                    s += a.0[i][l] * m[l][j];
                }
                next[i][j] = s + if i == j { c[k - 1] } else { 0.0 };
            }
        }
        m = next;
        let mut tr = 0.0;
        for i in 0..n {
            for l in 0..n {
                tr += a.0[i][l] * m[l][i];
            }
        }
        c[k] = -tr / k as f64;
    }
    c
}

pub fn poly_eval(c: &[f64; 7], x: f64) -> f64 {
    c.iter().fold(0.0, |acc, &ck| acc * x + ck)
}

fn poly_eval_c(c: &[f64; 7], z: Complex64) -> Complex64 {
    c.iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &ck| acc * z + ck)
}

/// All roots of the monic sextic by Durand–Kerner iteration.
pub fn poly_roots(c: &[f64; 7]) -> [Complex64; 6] {
    let scale = 1.0 + c[1..].iter().map(|v| v.abs()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: [Complex64; 6] = std::array::from_fn(|k| seed.powu(k as u32) * scale.min(1e3));
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..6 {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..6 {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = poly_eval_c(c, z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm() / (1.0 + z[i].norm()));
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

/// Real parts of the roots after Newton polishing on the real axis, sorted.
pub fn real_roots_sorted(c: &[f64; 7]) -> [f64; 6] {
    let mut out = poly_roots(c).map(|z| {
        let mut x = z.re;
        for _ in 0..5 {
            let (mut p, mut dp) = (0.0, 0.0);
            for &ck in c.iter() {
                dp = dp * x + p;
                p = p * x + ck;
            }
            if dp == 0.0 {
                break;
            }
            x -= p / dp;
        }
        x
    });
    out.sort_by(f64::total_cmp);
    out
}

pub fn sorted(mut v: [f64; 6]) -> [f64; 6] {
    v.sort_by(f64::total_cmp);
    v
}

/// Analytic unit-mass step response of `m ẍ + d ẋ + k x = f`, from rest.
pub fn msd_step(m: f64, d: f64, k: f64, f: f64, t: f64) -> f64 {
    let wn = (k / m).sqrt();
    let z = d / (2.0 * (k * m).sqrt());
    let xs = f / k;
    if (z - 1.0).abs() < 1e-9 {
        return xs * (1.0 - (-wn * t).exp() * (1.0 + wn * t));
    }
    if z < 1.0 {
        let wd = wn * (1.0 - z * z).sqrt();
        xs * (1.0
            - (-z * wn * t).exp() * ((wd * t).cos() + z / (1.0 - z * z).sqrt() * (wd * t).sin()))
    } else {
        let s = (z * z - 1.0).sqrt();
        let (r1, r2) = (-wn * (z - s), -wn * (z + s));
        xs * (1.0 + (r2 * (r1 * t).exp() - r1 * (r2 * t).exp()) / (r1 - r2))
    }
}
