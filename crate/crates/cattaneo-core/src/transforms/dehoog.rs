//! Laplace inversion by Fourier-series expansion accelerated with the
//! quotient-difference continued fraction (the de Hoog, Knight and Stokes
//! scheme). Serves as the second, independent engine next to the Talbot
//! contour: the two share nothing but the transform evaluator, so their
//! agreement is a meaningful sanity check.

use crate::error::{CoreError, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Series truncation target that sets the shifted abscissa.
const SERIES_TOL: f64 = 1e-12;

pub fn dehoog(
    f: &mut dyn FnMut(Complex64) -> Result<Complex64>,
    t: f64,
    nodes: usize,
    t_scale: f64,
) -> Result<f64> {
    let m = (nodes / 2).max(8);
    let big_t = t_scale * 2.0 * t;
    let gamma = -SERIES_TOL.ln() / (2.0 * big_t);

    // Fourier coefficients of the shifted transform along Re s = gamma
    let mut a: Vec<Complex64> = Vec::with_capacity(2 * m + 1);
    for k in 0..=(2 * m) {
        a.push(f(Complex64::new(gamma, k as f64 * PI / big_t))?);
    }
    a[0] *= 0.5;

    // quotient-difference construction of continued-fraction coefficients
    let mut d = vec![Complex64::new(0.0, 0.0); 2 * m + 1];
    d[0] = a[0];
    let mut q: Vec<Complex64> = (0..2 * m).map(|i| a[i + 1] / a[i]).collect();
    let mut e = vec![Complex64::new(0.0, 0.0); 2 * m + 1];
    for r in 1..=m {
        let elen = 2 * (m - r) + 1;
        let mut e_next = vec![Complex64::new(0.0, 0.0); elen];
        for i in 0..elen {
            e_next[i] = q[i + 1] - q[i] + e[i + 1];
        }
        d[2 * r - 1] = -q[0];
        d[2 * r] = -e_next[0];
        if r < m {
            let qlen = elen - 1;
            let mut q_next = vec![Complex64::new(0.0, 0.0); qlen];
            for i in 0..qlen {
                if e_next[i].norm() == 0.0 {
                    return Err(CoreError::NoConvergence(
                        "quotient-difference table breakdown".into(),
                    ));
                }
                q_next[i] = q[i + 1] * e_next[i + 1] / e_next[i];
            }
            q = q_next;
        }
        e = e_next;
    }

    // evaluate the continued fraction at z = exp(i pi t / T) by forward
    // recurrence, with the usual square-root remainder refinement
    let z = Complex64::from_polar(1.0, PI * t / big_t);
    let mut a_prev = Complex64::new(0.0, 0.0); // A_{-1}
    let mut b_prev = Complex64::new(1.0, 0.0); // B_{-1}
    let mut a_cur = d[0]; // A_0
    let mut b_cur = Complex64::new(1.0, 0.0); // B_0
    let (mut a2, mut b2) = (a_prev, b_prev); // lag-2 values for the remainder
    for dn in d.iter().skip(1) {
        a2 = a_prev;
        b2 = b_prev;
        a_prev = a_cur;
        b_prev = b_cur;
        a_cur = a_prev + *dn * z * a2;
        b_cur = b_prev + *dn * z * b2;
        let scale = b_cur.norm().max(a_cur.norm());
        if scale > 1e120 {
            let inv = 1.0 / scale;
            a_cur *= inv;
            b_cur *= inv;
            a_prev *= inv;
            b_prev *= inv;
            a2 *= inv;
            b2 *= inv;
        }
    }
    let h2 = 0.5 * (Complex64::new(1.0, 0.0) + z * (d[2 * m - 1] - d[2 * m]));
    let r2 = -h2 * (Complex64::new(1.0, 0.0) - (Complex64::new(1.0, 0.0) + d[2 * m] * z / (h2 * h2)).sqrt());
    let a_fin = a_prev + r2 * a2;
    let b_fin = b_prev + r2 * b2;
    if b_fin.norm() == 0.0 {
        return Err(CoreError::NoConvergence("continued fraction denominator vanished".into()));
    }
    Ok((gamma * t).exp() / big_t * (a_fin / b_fin).re)
}
