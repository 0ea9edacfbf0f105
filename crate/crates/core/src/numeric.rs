//! Small floating-point helpers shared by the norm routines.

use crate::exponent::Exponent;

/// Neumaier's compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if libm::fabs(self.sum) >= libm::fabs(x) {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let mut acc = NeumaierSum::default();
    for x in xs {
        acc.add(x);
    }
    acc.total()
}

/// `sign(x)` with `sign(0) = +1`.
#[inline]
pub fn sign(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

pub fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0_f64, |m, x| m.max(libm::fabs(*x)))
}

/// `ℓ_p` norm with max-scaling and compensated accumulation.
pub fn lp_norm(xs: &[f64], p: Exponent) -> f64 {
    let scale = max_abs(xs);
    if scale == 0.0 || p.is_infinite() {
        return scale;
    }
    if p.is_one() {
        return compensated_sum(xs.iter().map(|x| libm::fabs(*x)));
    }
    let e = p.value();
    let s = compensated_sum(xs.iter().map(|x| {
        let a = libm::fabs(*x) / scale;
        if a == 0.0 {
            0.0
        } else {
            libm::pow(a, e)
        }
    }));
    scale * libm::pow(s, p.recip())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_small_terms() {
        let s = compensated_sum([1.0, 1e100, 1.0, -1e100]);
        assert_eq!(s, 2.0);
    }

    #[test]
    fn lp_norm_basics() {
        let v = [3.0, -4.0];
        assert_eq!(lp_norm(&v, Exponent::ONE), 7.0);
        assert_eq!(lp_norm(&v, Exponent::INFINITY), 4.0);
        assert!((lp_norm(&v, Exponent::TWO) - 5.0).abs() < 1e-15);
        assert_eq!(lp_norm(&[0.0, 0.0], Exponent::TWO), 0.0);
        // no overflow for huge entries
        let big = [1e200, 1e200];
        let n = lp_norm(&big, Exponent::TWO);
        assert!((n / 1e200 - core::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn sign_of_zero_is_plus() {
        assert_eq!(sign(0.0), 1.0);
        assert_eq!(sign(-0.0), 1.0);
        assert_eq!(sign(-2.0), -1.0);
    }
}
