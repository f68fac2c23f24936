//! Multivariate polynomials over Q(i) with named variables.
//!
//! Terms are kept in a BTreeMap keyed by exponent vectors under graded
//! lexicographic order, with zero coefficients pruned, so equality is
//! structural once two polynomials share a variable list. Binary operations
//! merge variable lists automatically.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Exponent vector, one entry per variable of the owning polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }
}

// Graded lexicographic: total degree first, then lex on exponents.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone)]
pub struct Poly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(vars: &[&str]) -> Self {
        Poly {
            vars: Arc::new(vars.iter().map(|s| s.to_string()).collect()),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Scalar) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; p.vars.len()]), c);
        }
        p
    }

    pub fn one(vars: &[&str]) -> Self {
        Poly::constant(vars, Scalar::one())
    }

    /// The variable `name` as a polynomial over `vars`.
    pub fn var(vars: &[&str], name: &str) -> Self {
        let mut p = Poly::zero(vars);
        let idx = p
            .vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("variable `{name}` not in {:?}", p.vars));
        let mut exps = vec![0u16; p.vars.len()];
        exps[idx] = 1;
        p.terms.insert(Monomial(exps), Scalar::one());
        p
    }

    pub fn from_terms(vars: &[&str], terms: &[(&[u16], Scalar)]) -> Self {
        let mut p = Poly::zero(vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), p.vars.len());
            p.add_term(Monomial(exps.to_vec()), c.clone());
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.total_degree() == 0)
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_coeff().is_one()
    }

    pub fn constant_coeff(&self) -> Scalar {
        self.terms
            .get(&Monomial(vec![0; self.vars.len()]))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Remap on to a larger variable list (superset, any order).
    fn embed(&self, vars: &Arc<Vec<String>>) -> Poly {
        if Arc::ptr_eq(&self.vars, vars) || *self.vars == **vars {
            return Poly {
                vars: vars.clone(),
                terms: self.terms.clone(),
            };
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .expect("embed target must contain all variables")
            })
            .collect();
        let mut out = Poly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; vars.len()];
            for (j, &e) in m.0.iter().enumerate() {
                exps[map[j]] = e;
            }
            out.terms.insert(Monomial(exps), c.clone());
        }
        out
    }

    /// Union variable list of `a` and `b` (a's order first, then b's new ones).
    fn merged_vars(a: &Poly, b: &Poly) -> Arc<Vec<String>> {
        if *a.vars == *b.vars {
            return a.vars.clone();
        }
        let mut vars: Vec<String> = a.vars.as_ref().clone();
        for v in b.vars.iter() {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        Arc::new(vars)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Poly {
        let mut out = Poly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        self.map_coeffs(|c| c * s)
    }

    pub fn conj(&self) -> Poly {
        self.map_coeffs(|c| c.conj())
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    /// Partial derivative with respect to variable index `idx`.
    pub fn diff(&self, idx: usize) -> Poly {
        let mut out = Poly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[idx] = e - 1;
            out.add_term(Monomial(exps), c * &Scalar::from_int(e as i64));
        }
        out
    }

    pub fn diff_var(&self, name: &str) -> Poly {
        let idx = self
            .vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("variable `{name}` not in {:?}", self.vars));
        self.diff(idx)
    }

    /// Exact evaluation at a scalar point (one value per variable).
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = &t * &point[i];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Floating-point evaluation; coefficients must be real.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64();
            for (i, &e) in m.0.iter().enumerate() {
                t *= point[i].powi(e as i32);
            }
            acc += t;
        }
        acc
    }

    /// Substitute a polynomial for each variable (composition).
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.vars.len());
        let vars: Vec<&str> = if images.is_empty() {
            self.vars.iter().map(|s| s.as_str()).collect()
        } else {
            images[0].vars.iter().map(|s| s.as_str()).collect()
        };
        let mut acc = Poly::zero(&vars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = &t * &images[i];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Lowest total degree among terms; None if zero.
    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).min()
    }

    /// Exact division: Some(q) with self = q * d, None if not divisible.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        let vars = Poly::merged_vars(self, d);
        let mut rem = self.embed(&vars);
        let d = d.embed(&vars);
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.clone())
        };
        let dc_inv = dc.inv().unwrap();
        let mut quot = Poly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        };
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            let mut exps = Vec::with_capacity(rm.0.len());
            for (a, b) in rm.0.iter().zip(dm.0.iter()) {
                if a < b {
                    return None;
                }
                exps.push(a - b);
            }
            let qm = Monomial(exps);
            let qc = &rc * &dc_inv;
            let mut piece = Poly {
                vars: vars.clone(),
                terms: BTreeMap::new(),
            };
            piece.terms.insert(qm.clone(), qc.clone());
            rem = &rem - &(&piece * &d);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// JSON form: variables plus terms with exponent vectors as arrays.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                serde_json::json!({
                    "exponents": m.0,
                    "coeff": c.to_string(),
                })
            })
            .collect();
        serde_json::json!({
            "variables": self.vars.as_ref(),
            "terms": terms,
        })
    }

    /// Normalize so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().unwrap();
                self.scale(&inv)
            }
        }
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        if *self.vars == *other.vars {
            return self.terms == other.terms;
        }
        let vars = Poly::merged_vars(self, other);
        self.embed(&vars).terms == other.embed(&vars).terms
    }
}
impl Eq for Poly {}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let vars = Poly::merged_vars(self, rhs);
        let mut out = self.embed(&vars);
        for (m, c) in rhs.embed(&vars).terms {
            out.add_term(m, c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.map_coeffs(|c| -c)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let vars = Poly::merged_vars(self, rhs);
        let a = self.embed(&vars);
        let b = rhs.embed(&vars);
        let mut out = Poly {
            vars,
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let exps: Vec<u16> = ma.0.iter().zip(mb.0.iter()).map(|(x, y)| x + y).collect();
                out.add_term(Monomial(exps), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Descending graded lex, leading term first.
        for (m, c) in self.terms.iter().rev() {
            let cs = c.to_string();
            let (sign, body) = if let Some(rest) = cs.strip_prefix('-') {
                if c.is_real() {
                    ("-", rest.to_string())
                } else {
                    ("+", format!("({cs})"))
                }
            } else if c.is_real() {
                ("+", cs)
            } else {
                ("+", format!("({cs})"))
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let mut factors = Vec::new();
            if m.total_degree() == 0 || !(c.is_one() || body == "1") {
                factors.push(body.clone());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// gcd
// ---------------------------------------------------------------------------

/// Indices of variables that actually occur.
fn active_vars(p: &Poly) -> Vec<usize> {
    let n = p.vars.len();
    (0..n)
        .filter(|&i| p.terms.keys().any(|m| m.0[i] > 0))
        .collect()
}

/// View `p` as univariate in variable `idx`: coefficient polynomials by degree.
fn as_univariate(p: &Poly, idx: usize) -> Vec<Poly> {
    let deg = p.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0) as usize;
    let mut coeffs = vec![
        Poly {
            vars: p.vars.clone(),
            terms: BTreeMap::new(),
        };
        deg + 1
    ];
    for (m, c) in &p.terms {
        let d = m.0[idx] as usize;
        let mut exps = m.0.clone();
        exps[idx] = 0;
        coeffs[d].add_term(Monomial(exps), c.clone());
    }
    coeffs
}

fn from_univariate(coeffs: &[Poly], idx: usize) -> Poly {
    let vars = coeffs[0].vars.clone();
    let mut out = Poly {
        vars,
        terms: BTreeMap::new(),
    };
    for (d, c) in coeffs.iter().enumerate() {
        for (m, s) in &c.terms {
            let mut exps = m.0.clone();
            exps[idx] += d as u16;
            out.add_term(Monomial(exps), s.clone());
        }
    }
    out
}

fn univ_degree(coeffs: &[Poly]) -> Option<usize> {
    coeffs.iter().rposition(|c| !c.is_zero())
}

/// Pseudo-remainder of a by b (univariate in `idx` with Poly coefficients).
fn pseudo_rem(a: &Poly, b: &Poly, idx: usize) -> Poly {
    let zero = Poly {
        vars: a.vars.clone(),
        terms: BTreeMap::new(),
    };
    let mut ra = as_univariate(a, idx);
    let rb = as_univariate(b, idx);
    let db = univ_degree(&rb).expect("pseudo_rem by zero");
    let lcb = rb[db].clone();
    loop {
        let da = match univ_degree(&ra) {
            None => return zero,
            Some(d) => d,
        };
        if da < db {
            return from_univariate(&ra, idx);
        }
        // ra := lcb * ra - lca * x^(da-db) * rb, cancelling the degree-da term.
        let lca = ra[da].clone();
        let shift = da - db;
        let mut next = Vec::with_capacity(da);
        for (d, c) in ra.iter().enumerate().take(da) {
            let mut v = &lcb * c;
            if d >= shift && d - shift < db {
                v = &v - &(&lca * &rb[d - shift]);
            }
            next.push(v);
        }
        ra = next;
    }
}

fn content(p: &Poly, idx: usize) -> Result<Poly> {
    let coeffs = as_univariate(p, idx);
    let mut g: Option<Poly> = None;
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = Some(match g {
            None => c.clone(),
            Some(h) => gcd(&h, c)?,
        });
        if let Some(h) = &g {
            if h.is_constant() {
                break;
            }
        }
    }
    Ok(g.expect("content of zero polynomial"))
}

/// Monic gcd over Q(i). Errors only when both inputs are zero.
pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    if a.is_zero() {
        return Ok(b.monic());
    }
    if b.is_zero() {
        return Ok(a.monic());
    }
    let vars = Poly::merged_vars(a, b);
    let a = a.embed(&vars);
    let b = b.embed(&vars);
    let mut active = active_vars(&a);
    for i in active_vars(&b) {
        if !active.contains(&i) {
            active.push(i);
        }
    }
    if active.is_empty() {
        // Nonzero constants: every scalar is a unit.
        let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        return Ok(Poly::one(&names));
    }
    // Main variable: the active one of least maximal degree keeps the PRS short.
    let main = *active
        .iter()
        .min_by_key(|&&i| a.terms.keys().chain(b.terms.keys()).map(|m| m.0[i]).max())
        .unwrap();

    let ca = content(&a, main)?;
    let cb = content(&b, main)?;
    let cg = gcd(&ca, &cb)?;
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");

    // Primitive pseudo-remainder sequence on the primitive parts.
    let (mut f, mut g) = {
        let da = univ_degree(&as_univariate(&pa, main)).unwrap();
        let db = univ_degree(&as_univariate(&pb, main)).unwrap();
        if da >= db {
            (pa, pb)
        } else {
            (pb, pa)
        }
    };
    loop {
        let r = pseudo_rem(&f, &g, main);
        if r.is_zero() {
            break;
        }
        let cr = content(&r, main)?;
        f = g;
        g = r.div_exact(&cr).expect("content divides");
        if univ_degree(&as_univariate(&g, main)).unwrap() == 0 {
            // Coprime in the main variable.
            let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
            g = Poly::one(&names);
            break;
        }
    }
    Ok((&cg * &g).monic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(vars: &[&str], s: &str) -> Poly {
        // tiny builder for tests: monomial list "coeff:e0,e1,..;..."
        let mut out = Poly::zero(vars);
        for term in s.split(';') {
            let (c, exps) = term.split_once(':').unwrap();
            let c: Scalar = c.parse().unwrap();
            let exps: Vec<u16> = exps.split(',').map(|e| e.parse().unwrap()).collect();
            out = &out + &Poly::from_terms(vars, &[(&exps, c)]);
        }
        out
    }

    #[test]
    fn difference_of_squares() {
        let vars = ["x", "y"];
        let x = Poly::var(&vars, "x");
        let y = Poly::var(&vars, "y");
        let lhs = &(&x + &y) * &(&x - &y);
        let rhs = &(&x * &x) - &(&y * &y);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn standard_area_coefficient() {
        // (1+x^2+y^2) * 1/4 * (1+x^2+y^2) = 1/4 (1+x^2+y^2)^2
        let vars = ["x", "y"];
        let x = Poly::var(&vars, "x");
        let y = Poly::var(&vars, "y");
        let base = &(&Poly::one(&vars) + &(&x * &x)) + &(&y * &y);
        let quarter = Poly::constant(&vars, Scalar::ratio(1, 4));
        let lhs = &(&base * &quarter) * &base;
        let sq = &base * &base;
        assert_eq!(lhs, sq.scale(&Scalar::ratio(1, 4)));
    }

    #[test]
    fn additive_identity() {
        let vars = ["s", "t"];
        let q = p(&vars, "1/2:2,0;1/2:0,2;-1/4:0,0");
        assert_eq!(&q + &Poly::zero(&vars), q);
    }

    #[test]
    fn gcd_common_factor() {
        let vars = ["x"];
        let x = Poly::var(&vars, "x");
        let a = &(&x * &x) - &Poly::one(&vars); // x^2-1
        let b = &x - &Poly::one(&vars); // x-1
        assert_eq!(gcd(&a, &b).unwrap(), b.monic());
    }

    #[test]
    fn gcd_with_zero_is_other() {
        let vars = ["x", "y"];
        let q = p(&vars, "1:1,1;2:0,0");
        assert_eq!(gcd(&q, &Poly::zero(&vars)).unwrap(), q.monic());
        assert!(gcd(&Poly::zero(&vars), &Poly::zero(&vars)).is_err());
    }

    #[test]
    fn gcd_gaussian_factor() {
        // gcd(x^2+1, x-i) = x-i, with the divisibility confirmed by exact division.
        let vars = ["x"];
        let x = Poly::var(&vars, "x");
        let a = &(&x * &x) + &Poly::one(&vars);
        let b = &x - &Poly::constant(&vars, Scalar::i());
        let g = gcd(&a, &b).unwrap();
        assert_eq!(g, b.monic());
        let q = a.div_exact(&g).unwrap();
        assert_eq!(&q * &g, a);
    }

    #[test]
    fn multivariate_gcd() {
        let vars = ["x", "y"];
        let x = Poly::var(&vars, "x");
        let y = Poly::var(&vars, "y");
        let common = &(&x * &y) + &Poly::one(&vars);
        let a = &common * &(&x + &y);
        let b = &common * &(&x - &y);
        let g = gcd(&a, &b).unwrap();
        assert_eq!(g, common.monic());
    }

    #[test]
    fn exact_division_detects_failure() {
        let vars = ["x"];
        let x = Poly::var(&vars, "x");
        let a = &(&x * &x) + &Poly::one(&vars);
        let b = &x - &Poly::one(&vars);
        assert!(a.div_exact(&b).is_none());
    }

    #[test]
    fn json_uses_exponent_arrays() {
        let vars = ["s", "t"];
        let q = p(&vars, "1/2:2,0;-1/4:0,0");
        let v = q.to_json();
        assert_eq!(v["variables"], serde_json::json!(["s", "t"]));
        assert_eq!(v["terms"][0]["exponents"], serde_json::json!([2, 0]));
        assert_eq!(v["terms"][0]["coeff"], "1/2");
    }

    #[test]
    fn derivative() {
        let vars = ["s", "t"];
        let f = p(&vars, "1/2:2,0;1/2:0,2;-1/4:0,0"); // (s^2+t^2)/2 - 1/4
        assert_eq!(f.diff_var("s"), Poly::var(&vars, "s"));
        assert_eq!(f.diff_var("t"), Poly::var(&vars, "t"));
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-6i64..=6, 1i64..=4, -4i64..=4).prop_map(|(p, q, r)| {
            &Scalar::ratio(p, q) + &(&Scalar::i() * &Scalar::ratio(r, 1))
        })
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((0u16..3, 0u16..3, arb_scalar()), 0..5).prop_map(|terms| {
            let vars = ["x", "y"];
            let mut p = Poly::zero(&vars);
            for (e0, e1, c) in terms {
                p = &p + &Poly::from_terms(&vars, &[(&[e0, e1], c)]);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn eval_is_homomorphism(a in arb_poly(), b in arb_poly()) {
            let pt = [Scalar::ratio(2, 3), Scalar::ratio(-1, 2)];
            let lhs = (&a * &b).eval(&pt);
            let rhs = &a.eval(&pt) * &b.eval(&pt);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!a.is_zero() || !b.is_zero());
            let g = gcd(&a, &b).unwrap();
            if !a.is_zero() {
                prop_assert!(a.div_exact(&g).is_some());
            }
            if !b.is_zero() {
                prop_assert!(b.div_exact(&g).is_some());
            }
        }
    }
}
