//! Truncated Taylor series in one complex variable.
//!
//! A `Jet` of degree `D` at base point `x0` stores `f^(k)(x0)/k!` for
//! `k = 0..=D`. Arithmetic truncates to the smaller degree of the operands,
//! so every coefficient that survives is exact up to rounding.

use num_complex::Complex64 as C64;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub c: Vec<C64>,
}

impl Jet {
    pub fn new(c: Vec<C64>) -> Self {
        assert!(!c.is_empty(), "a jet needs at least one coefficient");
        Jet { c }
    }

    pub fn constant(v: C64, deg: usize) -> Self {
        let mut c = vec![C64::new(0.0, 0.0); deg + 1];
        c[0] = v;
        Jet { c }
    }

    /// The identity function `x0 + t`.
    pub fn variable(x0: C64, deg: usize) -> Self {
        let mut j = Self::constant(x0, deg);
        if deg >= 1 {
            j.c[1] = C64::new(1.0, 0.0);
        }
        j
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn value(&self) -> C64 {
        self.c[0]
    }

    /// `f^(k)(x0)`.
    pub fn derivative_at(&self, k: usize) -> C64 {
        let mut f = 1.0;
        for i in 2..=k {
            f *= i as f64;
        }
        self.c[k] * f
    }

    pub fn truncate(&self, deg: usize) -> Self {
        assert!(deg <= self.degree());
        Jet { c: self.c[..=deg].to_vec() }
    }

    /// Jet of `f'`; degree drops by one.
    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Jet::constant(C64::new(0.0, 0.0), 0);
        }
        Jet { c: (1..self.c.len()).map(|k| self.c[k] * k as f64).collect() }
    }

    pub fn scale(&self, s: C64) -> Self {
        Jet { c: self.c.iter().map(|v| v * s).collect() }
    }

    pub fn recip(&self) -> Self {
        let d = self.degree();
        let inv0 = self.c[0].inv();
        let mut r = vec![C64::new(0.0, 0.0); d + 1];
        r[0] = inv0;
        for k in 1..=d {
            let mut s = C64::new(0.0, 0.0);
            for j in 1..=k {
                s += self.c[j] * r[k - j];
            }
            r[k] = -s * inv0;
        }
        Jet { c: r }
    }

    pub fn div(&self, other: &Jet) -> Self {
        self * &other.recip()
    }

    pub fn exp(&self) -> Self {
        // f' = g' f  =>  k f_k = sum_{j=1..k} j g_j f_{k-j}
        let d = self.degree();
        let mut r = vec![C64::new(0.0, 0.0); d + 1];
        r[0] = self.c[0].exp();
        for k in 1..=d {
            let mut s = C64::new(0.0, 0.0);
            for j in 1..=k {
                s += self.c[j] * r[k - j] * j as f64;
            }
            r[k] = s / k as f64;
        }
        Jet { c: r }
    }

    /// Evaluate the truncated polynomial at offset `t` from the base point.
    pub fn eval(&self, t: C64) -> C64 {
        self.c.iter().rev().fold(C64::new(0.0, 0.0), |acc, v| acc * t + v)
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        let d = self.degree().min(o.degree());
        Jet { c: (0..=d).map(|k| self.c[k] + o.c[k]).collect() }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        let d = self.degree().min(o.degree());
        Jet { c: (0..=d).map(|k| self.c[k] - o.c[k]).collect() }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        let d = self.degree().min(o.degree());
        let mut r = vec![C64::new(0.0, 0.0); d + 1];
        for i in 0..=d {
            for j in 0..=(d - i) {
                r[i + j] += self.c[i] * o.c[j];
            }
        }
        Jet { c: r }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { c: self.c.iter().map(|v| -v).collect() }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        &self + &o
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        &self - &o
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn exp_of_variable_matches_series() {
        let x0 = c(0.3, -0.2);
        let e = Jet::variable(x0, 5).exp();
        let mut fact = 1.0;
        for k in 0..=5 {
            if k > 0 {
                fact *= k as f64;
            }
            assert!((e.c[k] - x0.exp() / fact).norm() < 1e-14);
        }
    }

    #[test]
    fn recip_times_self_is_one() {
        let j = Jet::new(vec![c(1.2, 0.1), c(-0.3, 0.4), c(2.0, 0.0), c(0.0, -1.0)]);
        let p = &j * &j.recip();
        assert!((p.c[0] - c(1.0, 0.0)).norm() < 1e-14);
        for k in 1..4 {
            assert!(p.c[k].norm() < 1e-14);
        }
    }

    #[test]
    fn derivative_drops_degree() {
        let j = Jet::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let d = j.derivative();
        assert_eq!(d.degree(), 1);
        assert_eq!(d.c, vec![c(2.0, 0.0), c(6.0, 0.0)]);
        assert_eq!(j.derivative_at(2), c(6.0, 0.0));
    }

    #[test]
    fn leibniz_rule_for_products() {
        let f = Jet::new(vec![c(0.5, 0.1), c(1.0, -1.0), c(0.2, 0.3), c(-0.7, 0.0)]);
        let g = Jet::new(vec![c(-1.0, 0.4), c(0.3, 0.3), c(1.5, 0.0), c(0.1, 0.9)]);
        let lhs = (&f * &g).derivative();
        let rhs = &(&f.derivative() * &g.truncate(2)) + &(&f.truncate(2) * &g.derivative());
        for k in 0..=2 {
            assert!((lhs.c[k] - rhs.c[k]).norm() < 1e-14);
        }
    }
}
