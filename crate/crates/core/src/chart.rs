//! Coordinate charts, the atlas for the sphere computations, transition
//! maps, and pushforward of multivectors under rational maps.
//!
//! Complex charts are handled through their real coordinate pairs; the
//! Wirtinger frames are converted once, at construction time, in
//! `structures`. Non-rational transitions (square roots, angles) are never
//! used for exact transport, only for numeric cross-validation.

use crate::error::{Error, Result};
use crate::multivector::{IndexSet, Multivector};
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Chart {
    name: String,
    vars: Vec<String>,
    domain_note: String,
}

impl Chart {
    pub fn new(name: &str, vars: &[&str], domain_note: &str) -> Self {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut seen = vars.clone();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), vars.len(), "duplicate variable names in chart");
        Chart {
            name: name.to_string(),
            vars,
            domain_note: domain_note.to_string(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn dimension(&self) -> usize {
        self.vars.len()
    }

    pub fn domain_note(&self) -> &str {
        &self.domain_note
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero_ratfunc(&self) -> RatFunc {
        RatFunc::zero(&self.vars())
    }

    pub fn ratfunc_var(&self, name: &str) -> RatFunc {
        RatFunc::var(&self.vars(), name)
    }

    pub fn ratfunc_const(&self, c: Scalar) -> RatFunc {
        RatFunc::constant(&self.vars(), c)
    }
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart({} : {:?})", self.name, self.vars)
    }
}

/// The charts used throughout: built once, cloned freely.
pub mod charts {
    use super::Chart;

    /// Real form of C^2 with u = a+ib, v = p+iq.
    pub fn r4() -> Chart {
        Chart::new("r4", &["a", "b", "p", "q"], "all of R^4")
    }

    /// Inhomogeneous chart around the point where the Bruhat structure
    /// vanishes; w = x+iy.
    pub fn w() -> Chart {
        Chart::new("w", &["x", "y"], "plane (w = x+iy)")
    }

    /// The opposite inhomogeneous chart, z = 1/w = x+iy.
    pub fn z() -> Chart {
        Chart::new("z", &["x", "y"], "plane (z = x+iy)")
    }

    /// Stereographic plane chart carrying the rotation-covariant family.
    pub fn xy() -> Chart {
        Chart::new("xy", &["x", "y"], "plane")
    }

    /// Unit sphere embedded in R^3.
    pub fn sphere() -> Chart {
        Chart::new("sphere", &["x1", "x2", "x3"], "unit sphere x1^2+x2^2+x3^2 = 1")
    }

    /// Open unit disk coordinates.
    pub fn st() -> Chart {
        Chart::new("st", &["s", "t"], "open unit disk s^2+t^2 < 1")
    }

    /// Action-angle model near the degeneracy circle (normalized radius 1).
    pub fn action_angle() -> Chart {
        Chart::new("action_angle", &["I", "theta"], "annulus -1 < I, theta periodic")
    }

    /// Internal trigonometric model of the annulus: I plus the circle
    /// embedded as (u, v) with u^2+v^2 = 1. Fourier factors are polynomial
    /// here, which keeps the mode complexes inside exact polynomial algebra.
    pub fn fourier() -> Chart {
        Chart::new("fourier", &["I", "u", "v"], "annulus times unit circle")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    RationalExact,
    AlgebraicNumeric,
}

/// Numeric evaluators for the non-rational transitions.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum NumericSampler {
    /// (x, y) -> (s, t) = (x, y)/sqrt(1+x^2+y^2).
    PlaneToDisk,
    /// (s, t) -> (I, theta) with I = (s^2+t^2 - r_sq)/r_sq for circle radius^2 r_sq.
    DiskToActionAngle { r_sq: f64 },
}

impl NumericSampler {
    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        match self {
            NumericSampler::PlaneToDisk => {
                let (x, y) = (p[0], p[1]);
                let d = (1.0 + x * x + y * y).sqrt();
                vec![x / d, y / d]
            }
            NumericSampler::DiskToActionAngle { r_sq } => {
                let (s, t) = (p[0], p[1]);
                vec![(s * s + t * t - r_sq) / r_sq, t.atan2(s)]
            }
        }
    }

    pub fn jacobian(&self, p: &[f64]) -> Vec<Vec<f64>> {
        match self {
            NumericSampler::PlaneToDisk => {
                let (x, y) = (p[0], p[1]);
                let d = (1.0 + x * x + y * y).powf(1.5);
                vec![
                    vec![(1.0 + y * y) / d, -x * y / d],
                    vec![-x * y / d, (1.0 + x * x) / d],
                ]
            }
            NumericSampler::DiskToActionAngle { r_sq } => {
                let (s, t) = (p[0], p[1]);
                let r2 = s * s + t * t;
                vec![
                    vec![2.0 * s / r_sq, 2.0 * t / r_sq],
                    vec![-t / r2, s / r2],
                ]
            }
        }
    }
}

#[derive(Clone)]
pub struct ChartMap {
    name: String,
    source: Chart,
    target: Chart,
    /// One rational component per target variable, in source variables.
    /// For algebraic maps these are placeholders and the sampler rules.
    components: Vec<RatFunc>,
    kind: MapKind,
    inverse: Option<Vec<RatFunc>>,
    sampler: Option<NumericSampler>,
    /// Human-readable component formulas for algebraic maps (dump only).
    algebraic_formulas: Vec<String>,
}

impl ChartMap {
    pub fn rational(
        name: &str,
        source: Chart,
        target: Chart,
        components: Vec<RatFunc>,
        inverse: Option<Vec<RatFunc>>,
    ) -> Self {
        assert_eq!(components.len(), target.dimension());
        ChartMap {
            name: name.to_string(),
            source,
            target,
            components,
            kind: MapKind::RationalExact,
            inverse,
            sampler: None,
            algebraic_formulas: Vec::new(),
        }
    }

    pub fn algebraic(
        name: &str,
        source: Chart,
        target: Chart,
        sampler: NumericSampler,
        formulas: &[&str],
    ) -> Self {
        ChartMap {
            name: name.to_string(),
            source,
            target,
            components: Vec::new(),
            kind: MapKind::AlgebraicNumeric,
            inverse: None,
            sampler: Some(sampler),
            algebraic_formulas: formulas.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Chart {
        &self.source
    }

    pub fn target(&self) -> &Chart {
        &self.target
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn components(&self) -> &[RatFunc] {
        &self.components
    }

    pub fn inverse_components(&self) -> Option<&[RatFunc]> {
        self.inverse.as_deref()
    }

    pub fn sampler(&self) -> Option<NumericSampler> {
        self.sampler
    }

    /// Exact forward evaluation (rational maps only).
    pub fn apply_exact(&self, point: &[Scalar]) -> Option<Vec<Scalar>> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    pub fn apply_f64(&self, point: &[f64]) -> Vec<f64> {
        match self.kind {
            MapKind::RationalExact => self.components.iter().map(|c| c.eval_f64(point)).collect(),
            MapKind::AlgebraicNumeric => self.sampler.unwrap().apply(point),
        }
    }

    /// Jacobian d(target_i)/d(source_j) as rational functions of the source.
    pub fn jacobian_exact(&self) -> Vec<Vec<RatFunc>> {
        let svars = self.source.vars();
        self.components
            .iter()
            .map(|c| svars.iter().map(|v| c.diff_var(v)).collect())
            .collect()
    }

    pub fn jacobian_f64(&self, point: &[f64]) -> Vec<Vec<f64>> {
        match self.kind {
            MapKind::RationalExact => self
                .jacobian_exact()
                .iter()
                .map(|row| row.iter().map(|c| c.eval_f64(point)).collect())
                .collect(),
            MapKind::AlgebraicNumeric => self.sampler.unwrap().jacobian(point),
        }
    }

    /// Exact composition check: inverse(forward(x)) = x.
    pub fn verify_inverse_exact(&self) -> bool {
        let Some(inv) = &self.inverse else {
            return false;
        };
        self.source.vars().iter().enumerate().all(|(j, v)| {
            let round = inv[j].compose(&self.components);
            match round {
                Ok(r) => r == self.source.ratfunc_var(v),
                Err(_) => false,
            }
        })
    }

    /// Compose with another map (self first, then g), exactly.
    pub fn compose(&self, g: &ChartMap) -> Result<ChartMap> {
        if self.kind != MapKind::RationalExact || g.kind != MapKind::RationalExact {
            return Err(Error::InvalidParameter(
                "only rational maps compose exactly".into(),
            ));
        }
        if g.source != self.target {
            return Err(Error::ChartMismatch {
                expected: self.target.name().into(),
                got: g.source.name().into(),
            });
        }
        let comps: Result<Vec<RatFunc>> = g
            .components
            .iter()
            .map(|c| c.compose(&self.components))
            .collect();
        let inverse = match (&self.inverse, &g.inverse) {
            (Some(fi), Some(gi)) => {
                let r: Result<Vec<RatFunc>> = fi.iter().map(|c| c.compose(gi)).collect();
                r.ok()
            }
            _ => None,
        };
        Ok(ChartMap {
            name: format!("{}*{}", g.name, self.name),
            source: self.source.clone(),
            target: g.target.clone(),
            components: comps?,
            kind: MapKind::RationalExact,
            inverse,
            sampler: None,
            algebraic_formulas: Vec::new(),
        })
    }
}

impl fmt::Debug for ChartMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ChartMap({}: {} -> {}, {:?})",
            self.name,
            self.source.name(),
            self.target.name(),
            self.kind
        )
    }
}

// ---------------------------------------------------------------------------
// Pushforward
// ---------------------------------------------------------------------------

fn det_ratfunc(m: &[Vec<RatFunc>]) -> RatFunc {
    let n = m.len();
    match n {
        0 => panic!("empty determinant"),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc: Option<RatFunc> = None;
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<RatFunc>> = (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&k| k != j)
                            .map(|k| m[i][k].clone())
                            .collect()
                    })
                    .collect();
                let mut term = &m[0][j] * &det_ratfunc(&minor);
                if j % 2 == 1 {
                    term = -&term;
                }
                acc = Some(match acc {
                    None => term,
                    Some(a) => &a + &term,
                });
            }
            acc.unwrap_or_else(|| m[0][0].clone())
        }
    }
}

/// Transport a multivector exactly through an invertible rational map.
///
/// Degree-k components pick up the k-th exterior power of the forward
/// Jacobian, written in target coordinates by substituting the registered
/// inverse.
pub fn pushforward_rational(mv: &Multivector, map: &ChartMap) -> Result<Multivector> {
    if map.kind != MapKind::RationalExact {
        return Err(Error::InvalidParameter(format!(
            "map `{}` is not rational_exact",
            map.name
        )));
    }
    let Some(inverse) = &map.inverse else {
        return Err(Error::NotInvertible(map.name.clone()));
    };
    if mv.chart() != &map.source {
        return Err(Error::WrongChart {
            expected: map.source.name().into(),
            got: mv.chart().name().into(),
        });
    }
    let jac = map.jacobian_exact();
    let n_tgt = map.target.dimension();
    let mut out = Multivector::zero(map.target.clone());
    for (subset, coeff) in mv.components() {
        let k = subset.len();
        if k == 0 {
            let c = coeff.compose(inverse)?;
            out.add_coeff(&[], &c);
            continue;
        }
        for tgt_subset in k_subsets(n_tgt, k) {
            // det of J restricted to rows tgt_subset, cols subset
            let sub: Vec<Vec<RatFunc>> = tgt_subset
                .iter()
                .map(|&ti| {
                    subset
                        .iter()
                        .map(|&sj| jac[ti as usize][sj as usize].clone())
                        .collect()
                })
                .collect();
            let d = det_ratfunc(&sub);
            if d.is_zero() {
                continue;
            }
            let transported = (&d * coeff).compose(inverse)?;
            out.add_coeff(&tgt_subset, &transported);
        }
    }
    Ok(out)
}

fn k_subsets(n: usize, k: usize) -> Vec<IndexSet> {
    let mut out = Vec::new();
    let mut cur: IndexSet = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut IndexSet, out: &mut Vec<IndexSet>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i as u8);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Numeric validation
// ---------------------------------------------------------------------------

/// Draw a point from the interior of a chart's domain.
pub fn sample_domain_point(chart: &Chart, rng: &mut StdRng) -> Vec<f64> {
    match chart.name() {
        "st" => {
            let r = (0.35 + 0.55 * rng.gen::<f64>()).sqrt();
            let phi = rng.gen::<f64>() * std::f64::consts::TAU;
            vec![r * phi.cos(), r * phi.sin()]
        }
        "action_angle" => {
            let mag = 0.05 + 0.45 * rng.gen::<f64>();
            let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            vec![sign * mag, rng.gen::<f64>() * std::f64::consts::TAU]
        }
        "r4" => (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        "sphere" => {
            let z: f64 = rng.gen_range(-0.95..0.95);
            let phi = rng.gen::<f64>() * std::f64::consts::TAU;
            let r = (1.0 - z * z).sqrt();
            vec![r * phi.cos(), r * phi.sin(), z]
        }
        // plane charts: annular region avoiding 0 and infinity
        _ => {
            let r = 0.3 + 1.4 * rng.gen::<f64>();
            let phi = rng.gen::<f64>() * std::f64::consts::TAU;
            vec![r * phi.cos(), r * phi.sin()]
        }
    }
}

/// Coefficient matrix of a degree <= 2 multivector at a numeric point.
/// Degree 1 returns a vector embedded on the diagonal-free convention
/// handled by the caller; here we produce the full antisymmetric matrix
/// for bivectors and the component vector for vector fields.
fn bivector_matrix_f64(mv: &Multivector, p: &[f64]) -> Vec<Vec<f64>> {
    let n = mv.chart().dimension();
    let mut m = vec![vec![0.0; n]; n];
    for (subset, coeff) in mv.components() {
        if subset.len() != 2 {
            continue;
        }
        let (i, j) = (subset[0] as usize, subset[1] as usize);
        let v = coeff.eval_f64(p);
        m[i][j] += v;
        m[j][i] -= v;
    }
    m
}

fn vector_f64(mv: &Multivector, p: &[f64]) -> Vec<f64> {
    let n = mv.chart().dimension();
    let mut out = vec![0.0; n];
    for (subset, coeff) in mv.components() {
        if subset.len() == 1 {
            out[subset[0] as usize] += coeff.eval_f64(p);
        }
    }
    out
}

/// Check that `map` carries `mv_src` to `mv_tgt` at `samples` random points:
/// J A J^T = A' (bivectors) or J X = X' (vector fields), entrywise within tol.
pub fn validate_pushforward_numeric(
    mv_src: &Multivector,
    mv_tgt: &Multivector,
    map: &ChartMap,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<bool> {
    if mv_src.chart() != &map.source {
        return Err(Error::WrongChart {
            expected: map.source.name().into(),
            got: mv_src.chart().name().into(),
        });
    }
    if mv_tgt.chart() != &map.target {
        return Err(Error::WrongChart {
            expected: map.target.name().into(),
            got: mv_tgt.chart().name().into(),
        });
    }
    let deg_src = mv_src.homogeneous_degree();
    if !matches!(deg_src, Some(1) | Some(2)) {
        return Err(Error::InvalidParameter(
            "numeric validation handles vector fields and bivectors".into(),
        ));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut accepted = 0usize;
    let mut attempts = 0usize;
    while accepted < samples {
        attempts += 1;
        if attempts > samples * 50 {
            return Err(Error::SamplePointOutsideDomain(attempts));
        }
        let p = sample_domain_point(&map.source, &mut rng);
        let q = map.apply_f64(&p);
        if !q.iter().all(|v| v.is_finite()) {
            continue;
        }
        let jac = map.jacobian_f64(&p);
        let det = match (jac.len(), jac[0].len()) {
            (2, 2) => jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0],
            _ => 1.0, // non-square maps validated componentwise below
        };
        if jac.len() == jac[0].len() && det.abs() < 1e-10 {
            return Err(Error::DegenerateJacobian(det.abs()));
        }
        match deg_src {
            Some(1) => {
                let x = vector_f64(mv_src, &p);
                let n_t = map.target.dimension();
                let pushed: Vec<f64> = (0..n_t)
                    .map(|i| (0..x.len()).map(|j| jac[i][j] * x[j]).sum())
                    .collect();
                let expect = vector_f64(mv_tgt, &q);
                for (a, b) in pushed.iter().zip(expect.iter()) {
                    if (a - b).abs() > tol {
                        return Ok(false);
                    }
                }
            }
            _ => {
                let a = bivector_matrix_f64(mv_src, &p);
                let n_s = map.source.dimension();
                let n_t = map.target.dimension();
                // J A J^T
                let mut pushed = vec![vec![0.0; n_t]; n_t];
                for i in 0..n_t {
                    for j in 0..n_t {
                        let mut acc = 0.0;
                        for k in 0..n_s {
                            for l in 0..n_s {
                                acc += jac[i][k] * a[k][l] * jac[j][l];
                            }
                        }
                        pushed[i][j] = acc;
                    }
                }
                let expect = bivector_matrix_f64(mv_tgt, &q);
                for i in 0..n_t {
                    for j in 0..n_t {
                        if (pushed[i][j] - expect[i][j]).abs() > tol {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        accepted += 1;
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// The atlas
// ---------------------------------------------------------------------------

pub struct Atlas {
    pub charts: Vec<Chart>,
    pub maps: Vec<ChartMap>,
}

/// Build the registered charts and transitions.
pub fn stereographic_atlas() -> Atlas {
    let w = charts::w();
    let z = charts::z();
    let xy = charts::xy();
    let sphere = charts::sphere();
    let st = charts::st();
    let aa = charts::action_angle();

    let pvars = ["x", "y"];
    let x = RatFunc::var(&pvars, "x");
    let y = RatFunc::var(&pvars, "y");
    let one = RatFunc::one(&pvars);
    let r2 = &(&x * &x) + &(&y * &y);
    let denom = &one + &r2;

    // Plane <-> sphere, stereographic from the pole where the plane chart
    // fails: x1 = 2x/(1+x^2+y^2), x2 = 2y/(1+x^2+y^2), x3 = (x^2+y^2-1)/(1+x^2+y^2).
    let two = RatFunc::constant(&pvars, Scalar::from_int(2));
    let to_sphere = vec![
        &(&two * &x) / &denom,
        &(&two * &y) / &denom,
        &(&r2 - &one) / &denom,
    ];
    let svars = ["x1", "x2", "x3"];
    let x1 = RatFunc::var(&svars, "x1");
    let x2 = RatFunc::var(&svars, "x2");
    let x3 = RatFunc::var(&svars, "x3");
    let sone = RatFunc::one(&svars);
    let from_sphere = vec![&x1 / &(&sone - &x3), &x2 / &(&sone - &x3)];
    let plane_to_sphere = ChartMap::rational(
        "z_to_sphere",
        z.clone(),
        sphere.clone(),
        to_sphere,
        Some(from_sphere),
    );

    // w <-> z inversion: z = 1/w, real form (x,y) -> (x, -y)/(x^2+y^2).
    let inv_comps = vec![&x / &r2, &(-&y) / &r2];
    let w_to_z = ChartMap::rational(
        "w_to_z",
        w.clone(),
        z.clone(),
        inv_comps.clone(),
        Some(inv_comps.clone()),
    );

    // xy <-> w: same plane presentation, identity components.
    let xy_to_w = ChartMap::rational(
        "xy_to_w",
        xy.clone(),
        w.clone(),
        vec![x.clone(), y.clone()],
        Some(vec![x.clone(), y.clone()]),
    );

    let xy_to_st = ChartMap::algebraic(
        "xy_to_st",
        xy.clone(),
        st.clone(),
        NumericSampler::PlaneToDisk,
        &[
            "s = x/sqrt(1+x^2+y^2)",
            "t = y/sqrt(1+x^2+y^2)",
        ],
    );

    let st_to_aa = ChartMap::algebraic(
        "st_to_action_angle",
        st.clone(),
        aa.clone(),
        NumericSampler::DiskToActionAngle { r_sq: 1.0 },
        &["I = s^2+t^2-1", "theta = atan2(t, s)"],
    );

    Atlas {
        charts: vec![charts::r4(), w, z, xy, sphere, st, aa],
        maps: vec![plane_to_sphere, w_to_z, xy_to_w, xy_to_st, st_to_aa],
    }
}

#[derive(Serialize)]
pub struct AtlasDump {
    pub schema_version: u32,
    pub charts: Vec<ChartDump>,
    pub transitions: Vec<MapDump>,
}

#[derive(Serialize)]
pub struct ChartDump {
    pub name: String,
    pub variables: Vec<String>,
    pub dimension: usize,
    pub domain: String,
}

#[derive(Serialize)]
pub struct MapDump {
    pub name: String,
    pub source: String,
    pub target: String,
    pub kind: MapKind,
    pub components: Vec<String>,
    pub has_exact_inverse: bool,
}

impl Atlas {
    pub fn dump(&self) -> AtlasDump {
        AtlasDump {
            schema_version: 1,
            charts: self
                .charts
                .iter()
                .map(|c| ChartDump {
                    name: c.name().to_string(),
                    variables: c.vars.clone(),
                    dimension: c.dimension(),
                    domain: c.domain_note().to_string(),
                })
                .collect(),
            transitions: self
                .maps
                .iter()
                .map(|m| MapDump {
                    name: m.name.clone(),
                    source: m.source.name().to_string(),
                    target: m.target.name().to_string(),
                    kind: m.kind,
                    components: if m.kind == MapKind::RationalExact {
                        m.components.iter().map(|c| c.to_string()).collect()
                    } else {
                        m.algebraic_formulas.clone()
                    },
                    has_exact_inverse: m.inverse.is_some(),
                })
                .collect(),
        }
    }

    pub fn map(&self, name: &str) -> Option<&ChartMap> {
        self.maps.iter().find(|m| m.name == name)
    }

    pub fn chart(&self, name: &str) -> Option<&Chart> {
        self.charts.iter().find(|c| c.name() == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stereographic_components() {
        let atlas = stereographic_atlas();
        let m = atlas.map("z_to_sphere").unwrap();
        let pvars = ["x", "y"];
        let x = RatFunc::var(&pvars, "x");
        let y = RatFunc::var(&pvars, "y");
        let one = RatFunc::one(&pvars);
        let denom = &(&one + &(&x * &x)) + &(&y * &y);
        let expected_x1 = &(&RatFunc::constant(&pvars, Scalar::from_int(2)) * &x) / &denom;
        assert_eq!(m.components()[0], expected_x1);
        let _ = y;
    }

    #[test]
    fn stereographic_round_trip_exact() {
        let atlas = stereographic_atlas();
        let m = atlas.map("z_to_sphere").unwrap();
        assert!(m.verify_inverse_exact());
        let p = vec![Scalar::ratio(1, 2), Scalar::ratio(1, 3)];
        let q = m.apply_exact(&p).unwrap();
        let back: Vec<Scalar> = m
            .inverse_components()
            .unwrap()
            .iter()
            .map(|c| c.eval(&q).unwrap())
            .collect();
        assert_eq!(back, p);
    }

    #[test]
    fn radius_through_sphere_coordinates() {
        // x^2+y^2 composed with the inverse map equals (1+x3)/(1-x3).
        let atlas = stereographic_atlas();
        let m = atlas.map("z_to_sphere").unwrap();
        let inv = m.inverse_components().unwrap();
        let svars = ["x1", "x2", "x3"];
        let r2_back = &(&inv[0] * &inv[0]) + &(&inv[1] * &inv[1]);
        let x3 = RatFunc::var(&svars, "x3");
        let sone = RatFunc::one(&svars);
        let expected = &(&sone + &x3) / &(&sone - &x3);
        // On the sphere x1^2+x2^2 = 1-x3^2; reduce r2_back with that relation
        // by substituting the parametrization instead of quotient arithmetic.
        let sub = m.components();
        let lhs = r2_back.compose(sub).unwrap();
        let rhs = expected.compose(sub).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inversion_is_involution() {
        let atlas = stereographic_atlas();
        let m = atlas.map("w_to_z").unwrap();
        assert!(m.verify_inverse_exact());
        let p = vec![Scalar::ratio(3, 4), Scalar::ratio(-2, 5)];
        let q = m.apply_exact(&p).unwrap();
        let back: Vec<Scalar> = m.components().iter().map(|c| c.eval(&q).unwrap()).collect();
        assert_eq!(back, p);
    }

    #[test]
    fn numeric_samplers_match_formulas() {
        let p = [0.7, -0.4];
        let s = NumericSampler::PlaneToDisk;
        let q = s.apply(&p);
        let d = (1.0 + p[0] * p[0] + p[1] * p[1]).sqrt();
        assert!((q[0] - p[0] / d).abs() < 1e-15);
        // finite-difference check of the Jacobian
        let h = 1e-7;
        let j = s.jacobian(&p);
        for col in 0..2 {
            let mut ph = p;
            ph[col] += h;
            let qh = s.apply(&ph);
            for row in 0..2 {
                let fd = (qh[row] - q[row]) / h;
                assert!((fd - j[row][col]).abs() < 1e-5, "J[{row}][{col}]");
            }
        }
    }
}

#[cfg(test)]
mod pushforward_tests {
    use super::*;
    use crate::multivector::Multivector;
    use crate::structures::{
        bruhat_structure_w, bruhat_structure_z, make_pi_family, FamilyChart,
    };

    #[test]
    fn bruhat_transport_between_charts() {
        // real form of −i·ww̄(1+ww̄)·∂w∧∂w̄ pushed through z = 1/w equals the
        // real form of −i(1+zz̄)·∂z∧∂z̄, exactly.
        let atlas = stereographic_atlas();
        let map = atlas.map("w_to_z").unwrap();
        let pushed = pushforward_rational(bruhat_structure_w().bivector(), map).unwrap();
        assert_eq!(pushed, *bruhat_structure_z().bivector());
    }

    #[test]
    fn family_transport_w_to_z_and_back() {
        let atlas = stereographic_atlas();
        let map = atlas.map("w_to_z").unwrap();
        let c = Scalar::ratio(-1, 4);
        let pi_w = make_pi_family(FamilyChart::W, &c).unwrap();
        let pi_z = make_pi_family(FamilyChart::Z, &c).unwrap();
        let pushed = pushforward_rational(pi_w.bivector(), map).unwrap();
        assert_eq!(pushed, *pi_z.bivector());
        // and back: functoriality through the involution
        let back_map = ChartMap::rational(
            "z_to_w",
            map.target().clone(),
            map.source().clone(),
            map.components().to_vec(),
            Some(map.components().to_vec()),
        );
        let back = pushforward_rational(&pushed, &back_map).unwrap();
        assert_eq!(back, *pi_w.bivector());
    }

    #[test]
    fn dilation_rescales_the_degeneracy_radius() {
        // s = α·s′ carries the member with radius² = (1−c)/2 to the member
        // with radius² = (1−c)/(2α²), i.e. parameter c′ = 1 − (1−c)/α².
        let st = charts::st();
        let alpha = Scalar::from_int(2);
        let inv_alpha = alpha.inv().unwrap();
        let comps = vec![
            st.ratfunc_var("s").scale(&inv_alpha),
            st.ratfunc_var("t").scale(&inv_alpha),
        ];
        let inverse = vec![
            st.ratfunc_var("s").scale(&alpha),
            st.ratfunc_var("t").scale(&alpha),
        ];
        let map = ChartMap::rational("st_rescale", st.clone(), st.clone(), comps, Some(inverse));
        let c = Scalar::ratio(1, 2);
        let pi_c = make_pi_family(FamilyChart::St, &c).unwrap();
        let pushed = pushforward_rational(pi_c.bivector(), &map).unwrap();
        // c′ = 1 − (1−c)/α² = 7/8
        let expected = make_pi_family(FamilyChart::St, &Scalar::ratio(7, 8)).unwrap();
        assert_eq!(pushed, *expected.bivector());
    }

    #[test]
    fn identity_map_fixes_everything() {
        let atlas = stereographic_atlas();
        let map = atlas.map("xy_to_w").unwrap();
        let c = Scalar::ratio(1, 2);
        let pi_xy = make_pi_family(FamilyChart::Xy, &c).unwrap();
        let pushed = pushforward_rational(pi_xy.bivector(), map).unwrap();
        // identity components: same coefficients on the target chart
        let pi_w = make_pi_family(FamilyChart::W, &c).unwrap();
        assert_eq!(pushed, *pi_w.bivector());
    }

    #[test]
    fn pushforward_is_functorial() {
        // affine map followed by the inversion, composed exactly
        let w = charts::w();
        let z = charts::z();
        let xy = charts::xy();
        let x = RatFunc::var(&["x", "y"], "x");
        let y = RatFunc::var(&["x", "y"], "y");
        let two = RatFunc::constant(&["x", "y"], Scalar::from_int(2));
        let one = RatFunc::constant(&["x", "y"], Scalar::one());
        // f: xy -> w, affine (x,y) ↦ (2x+1, y−x)
        let f_comps = vec![&(&two * &x) + &one, &y - &x];
        let f_inv = {
            let half = RatFunc::constant(&["x", "y"], Scalar::ratio(1, 2));
            let xm1 = &x - &one;
            vec![&half * &xm1, &y + &(&half * &xm1)]
        };
        let f = ChartMap::rational("affine", xy.clone(), w.clone(), f_comps, Some(f_inv));
        assert!(f.verify_inverse_exact());
        let atlas = stereographic_atlas();
        let g = atlas.map("w_to_z").unwrap();
        let gf = f.compose(g).unwrap();
        assert_eq!(gf.source().name(), "xy");
        assert_eq!(gf.target().name(), "z");
        assert!(gf.verify_inverse_exact());

        let mut mv = Multivector::zero(xy.clone());
        mv.add_coeff(&[0], &(&x * &y));
        mv.add_coeff(&[1], &(&x + &one));
        mv.add_coeff(&[0, 1], &y);
        let via_steps =
            pushforward_rational(&pushforward_rational(&mv, &f).unwrap(), g).unwrap();
        let direct = pushforward_rational(&mv, &gf).unwrap();
        assert_eq!(via_steps, direct);
        let _ = z;
    }

    #[test]
    fn pushforward_is_a_bracket_homomorphism() {
        use crate::calculus::schouten;
        let xy = charts::xy();
        let w = charts::w();
        let x = RatFunc::var(&["x", "y"], "x");
        let y = RatFunc::var(&["x", "y"], "y");
        let one = RatFunc::constant(&["x", "y"], Scalar::one());
        let three = RatFunc::constant(&["x", "y"], Scalar::from_int(3));
        // invertible affine map
        let comps = vec![&(&three * &x) + &(&y - &one), &x + &y];
        let inv = {
            // solve u = 3x+y−1, v = x+y: x = (u−v+1)/2, y = (3v−u−1)/2... checked below
            let u = &x; // x plays u on the target
            let v = &y;
            let half = RatFunc::constant(&["x", "y"], Scalar::ratio(1, 2));
            let xin = &half * &(&(&*u - v) + &one);
            let yin = &half * &(&(&three * v) - &(&*u + &one));
            vec![xin, yin]
        };
        let map = ChartMap::rational("affine3", xy.clone(), w.clone(), comps, Some(inv));
        assert!(map.verify_inverse_exact());

        let mut a = Multivector::zero(xy.clone());
        a.add_coeff(&[0], &(&x * &x));
        a.add_coeff(&[1], &(&y + &one));
        let mut b = Multivector::zero(xy.clone());
        b.add_coeff(&[0, 1], &(&x * &y));

        let lhs = pushforward_rational(&schouten(&a, &b).unwrap(), &map).unwrap();
        let rhs = schouten(
            &pushforward_rational(&a, &map).unwrap(),
            &pushforward_rational(&b, &map).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn numeric_validation_of_algebraic_transitions() {
        let atlas = stereographic_atlas();
        let c = Scalar::ratio(1, 2);
        let pi_xy = make_pi_family(FamilyChart::Xy, &c).unwrap();
        let pi_st = make_pi_family(FamilyChart::St, &c).unwrap();
        let map = atlas.map("xy_to_st").unwrap();
        assert!(validate_pushforward_numeric(
            pi_xy.bivector(),
            pi_st.bivector(),
            map,
            50,
            1e-8,
            42
        )
        .unwrap());

        // normalized disk model vs the action-angle model
        let st = charts::st();
        let aa = charts::action_angle();
        let s = st.ratfunc_var("s");
        let t = st.ratfunc_var("t");
        let one = st.ratfunc_const(Scalar::one());
        let norm = Multivector::bivector(
            &st,
            "s",
            "t",
            (&(&(&s * &s) + &(&t * &t)) - &one).scale(&Scalar::ratio(1, 2)),
        );
        let model = Multivector::bivector(&aa, "I", "theta", aa.ratfunc_var("I"));
        let map = atlas.map("st_to_action_angle").unwrap();
        assert!(validate_pushforward_numeric(&norm, &model, map, 50, 1e-8, 7).unwrap());

        // a perturbed target must be detected
        let bad = model
            .add(&Multivector::bivector(
                &aa,
                "I",
                "theta",
                aa.ratfunc_const(Scalar::one()),
            ))
            .unwrap();
        assert!(!validate_pushforward_numeric(&norm, &bad, map, 50, 1e-8, 7).unwrap());
    }

    #[test]
    fn standard_structure_agrees_across_charts() {
        use crate::structures::{constant_area_structure, standard_structure_plane};
        let atlas = stereographic_atlas();
        let map = atlas.map("xy_to_st").unwrap();
        let pi_xy = standard_structure_plane(&charts::xy());
        let pi_st = constant_area_structure();
        assert!(validate_pushforward_numeric(
            pi_xy.bivector(),
            pi_st.bivector(),
            map,
            50,
            1e-8,
            41
        )
        .unwrap());
    }

    #[test]
    fn pushforward_requires_registered_inverse() {
        let st = charts::st();
        let map = ChartMap::rational(
            "no_inverse",
            st.clone(),
            st.clone(),
            vec![st.ratfunc_var("s"), st.ratfunc_var("t")],
            None,
        );
        let mv = Multivector::basis_vector(&st, "s");
        assert!(matches!(
            pushforward_rational(&mv, &map),
            Err(Error::NotInvertible(_))
        ));
        // wrong chart
        let aa = charts::action_angle();
        let mv2 = Multivector::basis_vector(&aa, "I");
        let atlas = stereographic_atlas();
        assert!(matches!(
            pushforward_rational(&mv2, atlas.map("w_to_z").unwrap()),
            Err(Error::WrongChart { .. })
        ));
    }

    #[test]
    fn atlas_dump_is_deterministic() {
        let a = serde_json::to_string(&stereographic_atlas().dump()).unwrap();
        let b = serde_json::to_string(&stereographic_atlas().dump()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"schema_version\":1"));
    }
}
