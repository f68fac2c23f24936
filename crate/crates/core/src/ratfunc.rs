//! Rational functions: quotients of polynomials in canonical form.
//!
//! Canonical form divides out the gcd and scales the denominator so its
//! graded-lex leading coefficient is 1. Purely polynomial values keep the
//! denominator literally equal to 1, which lets the arithmetic skip gcd
//! work on the common path.

use crate::error::{Error, Result};
use crate::poly::{gcd, Poly};
use crate::scalar::Scalar;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RatFunc { num, den }.reduce())
    }

    pub fn from_poly(num: Poly) -> Self {
        let one = Poly::one(&num.vars().iter().map(|s| s.as_str()).collect::<Vec<_>>());
        RatFunc { num, den: one }
    }

    pub fn zero(vars: &[&str]) -> Self {
        RatFunc::from_poly(Poly::zero(vars))
    }

    pub fn one(vars: &[&str]) -> Self {
        RatFunc::from_poly(Poly::one(vars))
    }

    pub fn var(vars: &[&str], name: &str) -> Self {
        RatFunc::from_poly(Poly::var(vars, name))
    }

    pub fn constant(vars: &[&str], c: Scalar) -> Self {
        RatFunc::from_poly(Poly::constant(vars, c))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Make the denominator monic; assumes numerator and denominator are
    /// already coprime.
    fn normalize_leading(mut self) -> Self {
        let lead = self.den.leading().expect("nonzero denominator").1.clone();
        if !lead.is_one() {
            let inv = lead.inv().unwrap();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        self
    }

    /// Canonical form: coprime numerator/denominator, denominator monic,
    /// zero normalized to 0/1.
    fn reduce(self) -> Self {
        if self.num.is_zero() {
            let vars: Vec<&str> = self.den.vars().iter().map(|s| s.as_str()).collect();
            return RatFunc {
                num: Poly::zero(&vars),
                den: Poly::one(&vars),
            };
        }
        if self.den.is_one() {
            return self;
        }
        if self.den.is_constant() {
            let inv = self.den.constant_coeff().inv().unwrap();
            return RatFunc::from_poly(self.num.scale(&inv));
        }
        // cheap full-cancellation probes before the general gcd
        if let Some(q) = self.num.div_exact(&self.den) {
            return RatFunc::from_poly(q);
        }
        if let Some(q) = self.den.div_exact(&self.num) {
            let vars: Vec<&str> = self.num.vars().iter().map(|s| s.as_str()).collect();
            return RatFunc {
                num: Poly::one(&vars),
                den: q,
            }
            .normalize_leading();
        }
        let g = gcd(&self.num, &self.den).expect("nonzero pair");
        let (num, den) = if g.is_one() {
            (self.num, self.den)
        } else {
            (
                self.num.div_exact(&g).expect("gcd divides"),
                self.den.div_exact(&g).expect("gcd divides"),
            )
        };
        RatFunc { num, den }.normalize_leading()
    }

    pub fn simplify(&self) -> Self {
        self.clone().reduce()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        RatFunc {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
        .reduce()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RatFunc {
            num: self.den.clone(),
            den: self.num.clone(),
        }
        .normalize_leading())
    }

    pub fn conj(&self) -> Self {
        RatFunc {
            num: self.num.conj(),
            den: self.den.conj(),
        }
        .reduce()
    }

    pub fn diff_var(&self, name: &str) -> Self {
        // (n/d)' = (n'd - nd')/d^2
        let dn = self.num.diff_var(name);
        if self.den.is_one() {
            return RatFunc::from_poly(dn);
        }
        let dd = self.den.diff_var(name);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        RatFunc {
            num,
            den: &self.den * &self.den,
        }
        .reduce()
    }

    /// Exact evaluation; None if the denominator vanishes at the point.
    pub fn eval(&self, point: &[Scalar]) -> Option<Scalar> {
        let d = self.den.eval(point);
        let inv = d.inv()?;
        Some(&self.num.eval(point) * &inv)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.num.eval_f64(point) / self.den.eval_f64(point)
    }

    /// Substitute rational functions for the variables. Denominators are
    /// cleared once over a common denominator, in pure polynomial
    /// arithmetic, with a single reduction at the end.
    pub fn compose(&self, images: &[RatFunc]) -> Result<Self> {
        let (n_num, n_den) = compose_poly_cleared(&self.num, images);
        let (d_num, d_den) = compose_poly_cleared(&self.den, images);
        if d_num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        RatFunc::new(&n_num * &d_den, &n_den * &d_num)
    }

    /// Equality by cross-multiplication (used in tests as an independent route).
    pub fn equiv(&self, other: &Self) -> bool {
        (&(&self.num * &other.den) - &(&other.num * &self.den)).is_zero()
    }
}

/// p(f_1..f_k) with f_i = n_i/d_i, returned as (numerator, common
/// denominator Π d_i^{cap_i}) without any gcd work.
fn compose_poly_cleared(p: &Poly, images: &[RatFunc]) -> (Poly, Poly) {
    let tvars: Vec<&str> = if images.is_empty() {
        p.vars().iter().map(|s| s.as_str()).collect()
    } else {
        images[0].num.vars().iter().map(|s| s.as_str()).collect()
    };
    let k = p.vars().len();
    let mut caps = vec![0u16; k];
    for (m, _) in p.terms() {
        for (i, &e) in m.0.iter().enumerate() {
            caps[i] = caps[i].max(e);
        }
    }
    // power tables for image numerators and denominators
    let pow_table = |base: &Poly, cap: u16| -> Vec<Poly> {
        let mut v = Vec::with_capacity(cap as usize + 1);
        v.push(Poly::one(&tvars));
        for e in 1..=cap {
            let prev = &v[(e - 1) as usize];
            v.push(prev * base);
        }
        v
    };
    let num_pows: Vec<Vec<Poly>> = (0..k).map(|i| pow_table(&images[i].num, caps[i])).collect();
    let den_pows: Vec<Vec<Poly>> = (0..k).map(|i| pow_table(&images[i].den, caps[i])).collect();

    let mut acc = Poly::zero(&tvars);
    for (m, c) in p.terms() {
        let mut t = Poly::constant(&tvars, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            t = &t * &num_pows[i][e as usize];
            t = &t * &den_pows[i][(caps[i] - e) as usize];
        }
        acc = &acc + &t;
    }
    let mut common = Poly::one(&tvars);
    for i in 0..k {
        common = &common * &den_pows[i][caps[i] as usize];
    }
    (acc, common)
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num + &rhs.num);
        }
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        // Henrici: with canonical inputs, any common factor of the sum over
        // the lcm denominator divides gcd(den_a, den_b).
        let d = gcd(&self.den, &rhs.den).expect("nonzero denominators");
        if d.is_one() {
            return RatFunc {
                num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
                den: &self.den * &rhs.den,
            }
            .normalize_leading();
        }
        let da_red = self.den.div_exact(&d).expect("gcd divides");
        let db_red = rhs.den.div_exact(&d).expect("gcd divides");
        let t = &(&self.num * &db_red) + &(&rhs.num * &da_red);
        if t.is_zero() {
            let vars: Vec<&str> = self.num.vars().iter().map(|s| s.as_str()).collect();
            return RatFunc::zero(&vars);
        }
        let g = gcd(&t, &d).expect("nonzero");
        let num = t.div_exact(&g).expect("gcd divides");
        let da_over_g = self.den.div_exact(&g).expect("g divides d divides den_a");
        let den = &da_over_g * &db_red;
        RatFunc { num, den }.normalize_leading()
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        if self.num.is_zero() || rhs.num.is_zero() {
            let vars: Vec<&str> = self.num.vars().iter().map(|s| s.as_str()).collect();
            return RatFunc::zero(&vars);
        }
        // cross-cancellation keeps canonical inputs canonical
        let g1 = gcd(&self.num, &rhs.den).expect("nonzero");
        let g2 = gcd(&rhs.num, &self.den).expect("nonzero");
        let num = &self.num.div_exact(&g1).unwrap() * &rhs.num.div_exact(&g2).unwrap();
        let den = &self.den.div_exact(&g2).unwrap() * &rhs.den.div_exact(&g1).unwrap();
        if den.is_one() {
            return RatFunc::from_poly(num);
        }
        RatFunc { num, den }.normalize_leading()
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        let inv = rhs.inv().expect("division by zero rational function");
        self * &inv
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn sample_points(n: usize, dims: usize, seed: u64) -> Vec<Vec<Scalar>> {
        let mut rng = StdRng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                (0..dims)
                    .map(|_| Scalar::ratio(rng.gen_range(-20..=20), rng.gen_range(1..=9)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn common_factor_cancels() {
        let vars = ["x"];
        let x = Poly::var(&vars, "x");
        let one = Poly::one(&vars);
        let f = RatFunc::new(&(&x * &x) - &one, &x - &one).unwrap();
        assert_eq!(f, RatFunc::from_poly(&x + &one));
        // simplify(f) - f vanishes at sample points with nonvanishing denominators
        for pt in sample_points(20, 1, 7) {
            if let (Some(a), Some(b)) = (f.eval(&pt), f.simplify().eval(&pt)) {
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn already_reduced_dilation_coefficient() {
        // (s^2+t^2-1)/(2(s^2+t^2)) is already in lowest terms; gcd confirms coprimality.
        let vars = ["s", "t"];
        let s = Poly::var(&vars, "s");
        let t = Poly::var(&vars, "t");
        let r2 = &(&s * &s) + &(&t * &t);
        let num = &r2 - &Poly::one(&vars);
        let den = r2.scale(&Scalar::from_int(2));
        let f = RatFunc::new(num.clone(), den.clone()).unwrap();
        assert!(gcd(&num, &den).unwrap().is_one());
        // Canonical form: denominator leading coefficient 1, same value.
        assert!(f.equiv(&RatFunc { num, den }));
        assert!(f.denominator().leading().unwrap().1.is_one());
    }

    #[test]
    fn zero_numerator_normalizes() {
        let vars = ["x"];
        let x = Poly::var(&vars, "x");
        let f = RatFunc::new(Poly::zero(&vars), x).unwrap();
        assert!(f.is_zero());
        assert!(f.denominator().is_one());
    }

    #[test]
    fn zero_denominator_rejected() {
        let vars = ["x"];
        assert!(matches!(
            RatFunc::new(Poly::one(&vars), Poly::zero(&vars)),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn field_axioms_on_samples() {
        let vars = ["x", "y"];
        let x = RatFunc::var(&vars, "x");
        let y = RatFunc::var(&vars, "y");
        let one = RatFunc::one(&vars);
        let a = &(&x / &(&y + &one)) + &y;
        let b = &y / &x;
        let c = &x * &x;
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert_eq!(&a * &a.inv().unwrap(), one);
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let vars = ["x", "y"];
        let x = Poly::var(&vars, "x");
        let y = Poly::var(&vars, "y");
        let f = RatFunc::new(
            (&(&x * &x) - &(&y * &y)).scale(&Scalar::ratio(3, 2)),
            (&x + &y).scale(&Scalar::from_int(6)),
        )
        .unwrap();
        assert_eq!(f.simplify(), f);
    }

    #[test]
    fn quotient_rule() {
        let vars = ["x"];
        let x = RatFunc::var(&vars, "x");
        let one = RatFunc::one(&vars);
        let f = &one / &(&x * &x); // x^-2
        let df = f.diff_var("x"); // -2 x^-3
        let expected = &RatFunc::constant(&vars, Scalar::from_int(-2)) / &(&(&x * &x) * &x);
        assert_eq!(df, expected);
    }
}
