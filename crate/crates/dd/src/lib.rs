//! Double-double arithmetic: unevaluated sums `hi + lo` of two f64 values
//! giving roughly 32 significant decimal digits. The scope is deliberately
//! small; this crate exists so tests elsewhere can sum slowly converging or
//! cancellation-prone series with enough headroom to act as an oracle.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Unevaluated sum of two doubles, |lo| <= ulp(hi)/2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const LN2: Dd = Dd {
        hi: 0.693_147_180_559_945_3,
        lo: 2.319_046_813_846_299_6e-17,
    };
    pub const PI: Dd = Dd {
        hi: 3.141_592_653_589_793,
        lo: 1.224_646_799_147_353_2e-16,
    };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (s, e) = two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    /// exp(self) with ~31 digit accuracy for |self| < 700.
    pub fn exp(self) -> Dd {
        let a = self.to_f64();
        if a < -745.0 {
            return Dd::ZERO;
        }
        assert!(a < 709.0, "dd exp overflow");
        // self = m ln2 + r with |r| <= ln2/2, exp via Taylor on r
        let m = (a / std::f64::consts::LN_2).round();
        let r = self - Dd::LN2 * Dd::from_f64(m);
        let mut sum = Dd::ONE;
        let mut term = Dd::ONE;
        for k in 1..40 {
            term = term * r / Dd::from_f64(k as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-36 * sum.hi.abs() {
                break;
            }
        }
        // scale by 2^m exactly
        let scale = f64::powi(2.0, m as i32);
        Dd {
            hi: sum.hi * scale,
            lo: sum.lo * scale,
        }
    }

    /// ln(self) for self > 0, via Newton refinement of the f64 logarithm.
    pub fn ln(self) -> Dd {
        assert!(self.hi > 0.0, "dd ln domain");
        let mut y = Dd::from_f64(self.to_f64().ln());
        // y <- y + x e^{-y} - 1, quadratic convergence, two steps suffice
        for _ in 0..2 {
            let e = (-y).exp();
            y = y + self * e - Dd::ONE;
        }
        y
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, o: Dd) -> Dd {
        let (s1, e1) = two_sum(self.hi, o.hi);
        let (s2, e2) = two_sum(self.lo, o.lo);
        let (s1, e1b) = quick_two_sum(s1, e1 + s2);
        let (hi, lo) = quick_two_sum(s1, e1b + e2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::from_f64(q1);
        let q2 = r.hi / o.hi;
        let r2 = r - o * Dd::from_f64(q2);
        let q3 = r2.hi / o.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd::new(s, e + q3)
    }
}

/// Complex number with double-double parts.
#[derive(Clone, Copy, Debug)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub const ONE: Cdd = Cdd {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    #[inline]
    pub fn from_f64(re: f64, im: f64) -> Cdd {
        Cdd {
            re: Dd::from_f64(re),
            im: Dd::from_f64(im),
        }
    }

    #[inline]
    pub fn scale(self, s: Dd) -> Cdd {
        Cdd {
            re: self.re * s,
            im: self.im * s,
        }
    }

    /// |self| in plain f64, enough for termination tests.
    #[inline]
    pub fn norm(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }
}

impl Add for Cdd {
    type Output = Cdd;
    #[inline]
    fn add(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    #[inline]
    fn mul(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

const HALF_LN_2PI: Dd = Dd {
    hi: 0.918_938_533_204_672_8,
    lo: -3.878_294_158_067_241_4e-17,
};

// B_{2n} / (2n (2n-1)) for n = 1..=13
const STIRLING: [Dd; 13] = [
    Dd { hi: 0.083_333_333_333_333_33, lo: 4.625_929_269_271_485e-18 },
    Dd { hi: -0.002_777_777_777_777_778, lo: 1.060_108_790_874_715_4e-19 },
    Dd { hi: 0.000_793_650_793_650_793_7, lo: 6.883_823_317_368_282e-22 },
    Dd { hi: -0.000_595_238_095_238_095_3, lo: 5.369_382_187_547_26e-20 },
    Dd { hi: 0.000_841_750_841_750_841_7, lo: 3.687_017_488_923_769_4e-20 },
    Dd { hi: -0.001_917_526_917_526_917_6, lo: 1.067_570_277_687_247_5e-19 },
    Dd { hi: 0.006_410_256_410_256_41, lo: 2.224_004_456_380_521_7e-19 },
    Dd { hi: -0.029_550_653_594_771_242, lo: 4.861_760_957_508_855e-19 },
    Dd { hi: 0.179_644_372_368_830_57, lo: -6.401_600_482_710_946e-19 },
    Dd { hi: -1.392_432_216_905_901_1, lo: 1.583_705_698_923_030_3e-17 },
    Dd { hi: 13.402_864_044_168_393, lo: -6.154_114_101_993_966e-16 },
    Dd { hi: -156.848_284_626_002_03, lo: 9.391_823_141_715_389e-15 },
    Dd { hi: 2_193.103_333_333_333_5, lo: -1.333_925_562_600_294_8e-13 },
];

/// ln Gamma(x) for x > 0, Stirling series above 24 with upward recursion
/// below. Takes a double-double argument so call sites can pass exactly
/// computed combinations such as beta * k + gamma; rounding that argument
/// to f64 first costs ~psi(x) * ulp, which matters under heavy cancellation.
pub fn lngamma_dd(x: Dd) -> Dd {
    let xf = x.to_f64();
    assert!(xf > 0.0, "dd lngamma domain: x = {xf}");
    let n = if xf < 24.0 { (24.0 - xf).ceil() as u32 } else { 0 };
    let mut shift = Dd::ZERO;
    for j in 0..n {
        shift = shift + (x + Dd::new(j as f64, 0.0)).ln();
    }
    let xd = x + Dd::new(n as f64, 0.0);
    let lnx = xd.ln();
    let mut s = (xd - Dd::new(0.5, 0.0)) * lnx - xd + HALF_LN_2PI;
    let x2 = (Dd::ONE / xd) * (Dd::ONE / xd);
    let mut p = Dd::ONE / xd;
    for c in STIRLING.iter() {
        s = s + *c * p;
        p = p * x2;
    }
    s - shift
}

/// ln Gamma(x) for f64 x > 0.
pub fn lngamma(x: f64) -> Dd {
    lngamma_dd(Dd::new(x, 0.0))
}

/// 1 / Gamma(x) for x > 0.
pub fn rgamma_dd(x: Dd) -> Dd {
    (-lngamma_dd(x)).exp()
}

/// 1 / Gamma(x) for f64 x > 0.
pub fn rgamma(x: f64) -> Dd {
    (-lngamma(x)).exp()
}

/// Mittag-Leffler series sum_{k>=0} z^k / Gamma(beta k + gamma) in dd
/// arithmetic. Returns (value, cancellation) where cancellation is the ratio
/// of the largest term magnitude to the result magnitude; the result carries
/// about 31 - log10(cancellation) reliable digits.
pub fn ml_series(beta: f64, gamma: f64, z_re: f64, z_im: f64, max_terms: usize) -> (Cdd, f64) {
    let z = Cdd::from_f64(z_re, z_im);
    let beta_dd = Dd::new(beta, 0.0);
    let gamma_dd = Dd::new(gamma, 0.0);
    let mut sum = Cdd::ZERO;
    let mut zpow = Cdd::ONE;
    let mut max_mag: f64 = 0.0;
    let mut converged = false;
    for k in 0..max_terms {
        // beta * k is an exact two-limb product for the k in play
        let term = zpow.scale(rgamma_dd(beta_dd * Dd::new(k as f64, 0.0) + gamma_dd));
        sum = sum + term;
        let mag = term.norm();
        max_mag = max_mag.max(mag);
        // terms eventually decay super-geometrically; require a clean tail
        if k > 3 && mag < 1e-36 * sum.norm().max(1e-300) {
            converged = true;
            break;
        }
        zpow = zpow * z;
    }
    assert!(converged, "ml_series did not converge in {max_terms} terms");
    let denom = sum.norm().max(1e-300);
    (sum, max_mag / denom)
}
