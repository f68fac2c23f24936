//! Graded alternating tensor fields on a chart.
//!
//! Coefficients are stored on strictly increasing index subsets only, so
//! antisymmetry is canonical and equality is componentwise. Mixed-degree
//! values are allowed as formal sums; most operations act degreewise.

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

/// Sorted variable-index subset.
pub type IndexSet = Vec<u8>;

/// Sign of concatenating two disjoint sorted subsets and sorting the result:
/// parity of the number of transpositions, i.e. of pairs (a in left, b in
/// right) with a > b. None if the subsets intersect.
pub fn merge_sign(left: &[u8], right: &[u8]) -> Option<(IndexSet, i8)> {
    let mut inversions = 0usize;
    for &a in left {
        for &b in right {
            if a == b {
                return None;
            }
            if a > b {
                inversions += 1;
            }
        }
    }
    let mut merged: IndexSet = left.iter().chain(right.iter()).copied().collect();
    merged.sort_unstable();
    Some((merged, if inversions.is_multiple_of(2) { 1 } else { -1 }))
}

/// Sign of removing index `k` from sorted subset `s` by moving it past the
/// entries to its right (right derivative convention).
pub fn right_removal_sign(s: &[u8], k: u8) -> i8 {
    let after = s.iter().filter(|&&x| x > k).count();
    if after % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of removing index `k` by moving it past the entries to its left.
pub fn left_removal_sign(s: &[u8], k: u8) -> i8 {
    let before = s.iter().filter(|&&x| x < k).count();
    if before % 2 == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn remove_index(s: &[u8], k: u8) -> IndexSet {
    s.iter().copied().filter(|&x| x != k).collect()
}

#[derive(Clone, PartialEq)]
struct Graded {
    chart: Chart,
    comps: BTreeMap<IndexSet, RatFunc>,
}

impl Graded {
    fn zero(chart: Chart) -> Self {
        Graded {
            chart,
            comps: BTreeMap::new(),
        }
    }

    fn add_coeff(&mut self, subset: &[u8], coeff: &RatFunc) {
        if coeff.is_zero() {
            return;
        }
        debug_assert!(subset.windows(2).all(|w| w[0] < w[1]), "subset must be sorted");
        debug_assert!(subset.iter().all(|&i| (i as usize) < self.chart.dimension()));
        let key: IndexSet = subset.to_vec();
        match self.comps.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + coeff;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs: Vec<usize> = self.comps.keys().map(|k| k.len()).collect();
        degs.dedup();
        match degs.len() {
            0 => Some(0), // zero value: degree of choice
            1 => Some(degs[0]),
            _ => None,
        }
    }

    fn degree_part(&self, k: usize) -> Graded {
        Graded {
            chart: self.chart.clone(),
            comps: self
                .comps
                .iter()
                .filter(|(s, _)| s.len() == k)
                .map(|(s, c)| (s.clone(), c.clone()))
                .collect(),
        }
    }

    fn add(&self, other: &Graded) -> Result<Graded> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch {
                expected: self.chart.name().into(),
                got: other.chart.name().into(),
            });
        }
        let mut out = self.clone();
        for (s, c) in &other.comps {
            out.add_coeff(s, c);
        }
        Ok(out)
    }

    fn neg(&self) -> Graded {
        Graded {
            chart: self.chart.clone(),
            comps: self.comps.iter().map(|(s, c)| (s.clone(), -c)).collect(),
        }
    }

    fn scale_ratfunc(&self, f: &RatFunc) -> Graded {
        let mut out = Graded::zero(self.chart.clone());
        for (s, c) in &self.comps {
            out.add_coeff(s, &(c * f));
        }
        out
    }

    fn wedge(&self, other: &Graded) -> Result<Graded> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch {
                expected: self.chart.name().into(),
                got: other.chart.name().into(),
            });
        }
        let mut out = Graded::zero(self.chart.clone());
        for (sa, ca) in &self.comps {
            for (sb, cb) in &other.comps {
                if let Some((merged, sign)) = merge_sign(sa, sb) {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -&c;
                    }
                    out.add_coeff(&merged, &c);
                }
            }
        }
        Ok(out)
    }

    fn subset_label(&self, s: &[u8], frame_prefix: &str) -> String {
        if s.is_empty() {
            return "1".to_string();
        }
        s.iter()
            .map(|&i| format!("{}{}", frame_prefix, self.chart.vars()[i as usize]))
            .collect::<Vec<_>>()
            .join("∧")
    }

    fn display(&self, f: &mut fmt::Formatter<'_>, frame_prefix: &str) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, c) in &self.comps {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if s.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c}) {}", self.subset_label(s, frame_prefix))?;
            }
        }
        Ok(())
    }

    fn to_json(&self, frame_prefix: &str) -> Value {
        let mut by_degree: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        for (s, c) in &self.comps {
            by_degree
                .entry(s.len().to_string())
                .or_default()
                .insert(self.subset_label(s, frame_prefix), c.to_string());
        }
        json!({
            "chart": self.chart.name(),
            "components": by_degree,
        })
    }
}

// ---------------------------------------------------------------------------

/// Alternating contravariant tensor field (frame of coordinate vector fields).
#[derive(Clone, PartialEq)]
pub struct Multivector(Graded);

/// Alternating covariant tensor field (frame of coordinate differentials).
#[derive(Clone, PartialEq)]
pub struct DiffForm(Graded);

macro_rules! shared_impl {
    ($ty:ident, $prefix:expr) => {
        impl $ty {
            pub fn zero(chart: Chart) -> Self {
                $ty(Graded::zero(chart))
            }

            pub fn chart(&self) -> &Chart {
                &self.0.chart
            }

            pub fn components(&self) -> impl Iterator<Item = (&IndexSet, &RatFunc)> {
                self.0.comps.iter()
            }

            pub fn coeff(&self, subset: &[u8]) -> RatFunc {
                self.0
                    .comps
                    .get(subset)
                    .cloned()
                    .unwrap_or_else(|| self.0.chart.zero_ratfunc())
            }

            pub fn add_coeff(&mut self, subset: &[u8], coeff: &RatFunc) {
                self.0.add_coeff(subset, coeff)
            }

            pub fn is_zero(&self) -> bool {
                self.0.comps.is_empty()
            }

            pub fn homogeneous_degree(&self) -> Option<usize> {
                self.0.homogeneous_degree()
            }

            pub fn degree_part(&self, k: usize) -> Self {
                $ty(self.0.degree_part(k))
            }

            pub fn max_degree(&self) -> usize {
                self.0.comps.keys().map(|s| s.len()).max().unwrap_or(0)
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                Ok($ty(self.0.add(&other.0)?))
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                Ok($ty(self.0.add(&other.0.neg())?))
            }

            pub fn neg(&self) -> Self {
                $ty(self.0.neg())
            }

            pub fn scale_ratfunc(&self, f: &RatFunc) -> Self {
                $ty(self.0.scale_ratfunc(f))
            }

            pub fn scale(&self, s: &Scalar) -> Self {
                let f = self.0.chart.ratfunc_const(s.clone());
                self.scale_ratfunc(&f)
            }

            /// Componentwise complex conjugation of the coefficients. On a
            /// real chart this conjugates Wirtinger frames as well.
            pub fn conj(&self) -> Self {
                let mut out = Self::zero(self.0.chart.clone());
                for (s, c) in self.0.comps.iter() {
                    out.add_coeff(s, &c.conj());
                }
                out
            }

            /// Graded-commutative exterior product.
            pub fn wedge(&self, other: &Self) -> Result<Self> {
                Ok($ty(self.0.wedge(&other.0)?))
            }

            pub fn to_json(&self) -> Value {
                self.0.to_json($prefix)
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.display(f, $prefix)
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(self, f)
            }
        }
    };
}

shared_impl!(Multivector, "∂");
shared_impl!(DiffForm, "d");

impl Multivector {
    /// The function `f` as a degree-0 multivector.
    pub fn from_function(chart: Chart, f: RatFunc) -> Self {
        let mut mv = Multivector::zero(chart);
        mv.add_coeff(&[], &f);
        mv
    }

    /// Coordinate vector field for the named variable.
    pub fn basis_vector(chart: &Chart, var: &str) -> Self {
        let idx = chart
            .var_index(var)
            .unwrap_or_else(|| panic!("no variable `{var}` on chart {}", chart.name()));
        let mut mv = Multivector::zero(chart.clone());
        let one = chart.ratfunc_const(Scalar::one());
        mv.add_coeff(&[idx as u8], &one);
        mv
    }

    /// Vector field from named components.
    pub fn vector_field(chart: &Chart, comps: &[(&str, RatFunc)]) -> Self {
        let mut mv = Multivector::zero(chart.clone());
        for (var, c) in comps {
            let idx = chart.var_index(var).expect("variable on chart") as u8;
            mv.add_coeff(&[idx], c);
        }
        mv
    }

    /// Bivector `coeff ∂a∧∂b` given variable names a, b.
    pub fn bivector(chart: &Chart, a: &str, b: &str, coeff: RatFunc) -> Self {
        let ia = chart.var_index(a).expect("variable on chart") as u8;
        let ib = chart.var_index(b).expect("variable on chart") as u8;
        assert_ne!(ia, ib);
        let mut mv = Multivector::zero(chart.clone());
        if ia < ib {
            mv.add_coeff(&[ia, ib], &coeff);
        } else {
            mv.add_coeff(&[ib, ia], &(-&coeff));
        }
        mv
    }

    /// Pair a bivector against two 1-forms: π(α, β).
    pub fn pair_forms(&self, alpha: &DiffForm, beta: &DiffForm) -> Result<RatFunc> {
        if self.chart() != alpha.chart() || self.chart() != beta.chart() {
            return Err(Error::ChartMismatch {
                expected: self.chart().name().into(),
                got: alpha.chart().name().into(),
            });
        }
        let mut acc = self.chart().zero_ratfunc();
        for (s, c) in self.components() {
            if s.len() != 2 {
                continue;
            }
            let (i, j) = (s[0], s[1]);
            let ai = alpha.coeff(&[i]);
            let aj = alpha.coeff(&[j]);
            let bi = beta.coeff(&[i]);
            let bj = beta.coeff(&[j]);
            acc = &acc + &(c * &(&(&ai * &bj) - &(&aj * &bi)));
        }
        Ok(acc)
    }
}

impl DiffForm {
    pub fn from_function(chart: Chart, f: RatFunc) -> Self {
        let mut form = DiffForm::zero(chart);
        form.add_coeff(&[], &f);
        form
    }

    /// Coordinate differential of the named variable.
    pub fn basis_form(chart: &Chart, var: &str) -> Self {
        let idx = chart
            .var_index(var)
            .unwrap_or_else(|| panic!("no variable `{var}` on chart {}", chart.name()));
        let mut form = DiffForm::zero(chart.clone());
        let one = chart.ratfunc_const(Scalar::one());
        form.add_coeff(&[idx as u8], &one);
        form
    }

    /// Evaluate a 1-form on a vector field.
    pub fn pair_vector(&self, x: &Multivector) -> Result<RatFunc> {
        if self.chart() != x.chart() {
            return Err(Error::ChartMismatch {
                expected: self.chart().name().into(),
                got: x.chart().name().into(),
            });
        }
        let mut acc = self.chart().zero_ratfunc();
        for (s, c) in self.components() {
            if s.len() != 1 {
                continue;
            }
            acc = &acc + &(c * &x.coeff(s));
        }
        Ok(acc)
    }
}
