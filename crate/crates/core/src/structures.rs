//! Constructors for the Poisson structures under study and their scalar
//! invariants: Jacobi certification, Casimir checks, symplectic area,
//! degeneracy-circle radius, modular field wrapper.
//!
//! Complex presentations are converted to real charts once, here, through
//! the Wirtinger frame ∂w = (∂x − i·∂y)/2, so ∂w∧∂w̄ = (i/2)·∂x∧∂y.

use crate::calculus::{modular_field, schouten};
use crate::chart::{charts, Chart};
use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;
use num_traits::ToPrimitive;
use std::fmt;
use std::str::FromStr;

/// A bivector field certified to satisfy [π,π] = 0.
#[derive(Clone)]
pub struct PoissonStructure {
    bivector: Multivector,
    label: String,
    family_c: Option<Scalar>,
}

impl PoissonStructure {
    /// Certifies the Jacobi identity exactly before accepting the bivector.
    pub fn new(bivector: Multivector, label: &str, family_c: Option<Scalar>) -> Result<Self> {
        if !matches!(bivector.homogeneous_degree(), Some(2) | Some(0)) && !bivector.is_zero() {
            return Err(Error::InvalidParameter(format!(
                "`{label}` is not a bivector"
            )));
        }
        let jac = schouten(&bivector, &bivector)?;
        if !jac.is_zero() {
            return Err(Error::NotPoisson(label.to_string()));
        }
        Ok(PoissonStructure {
            bivector,
            label: label.to_string(),
            family_c,
        })
    }

    pub fn bivector(&self) -> &Multivector {
        &self.bivector
    }

    pub fn chart(&self) -> &Chart {
        self.bivector.chart()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn family_c(&self) -> Option<&Scalar> {
        self.family_c.as_ref()
    }

    /// Scalar coefficient of ∂x∧∂y on a 2-dimensional chart.
    pub fn coefficient_2d(&self) -> RatFunc {
        assert_eq!(self.chart().dimension(), 2);
        self.bivector.coeff(&[0, 1])
    }
}

impl fmt::Debug for PoissonStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label, self.bivector)
    }
}

// ---------------------------------------------------------------------------
// The SU(2) structure on R^4
// ---------------------------------------------------------------------------

/// Complex coordinates on the r4 chart: u = a+ib, v = p+iq.
pub fn r4_complex_coords() -> (RatFunc, RatFunc, RatFunc, RatFunc) {
    let vars = ["a", "b", "p", "q"];
    let a = RatFunc::var(&vars, "a");
    let b = RatFunc::var(&vars, "b");
    let p = RatFunc::var(&vars, "p");
    let q = RatFunc::var(&vars, "q");
    let i = RatFunc::constant(&vars, Scalar::i());
    let u = &a + &(&i * &b);
    let v = &p + &(&i * &q);
    (u.clone(), u.conj(), v.clone(), v.conj())
}

/// Wirtinger frame vector on the r4 chart: ∂u = (∂a − i∂b)/2, etc.
fn wirtinger_vector(chart: &Chart, re_var: &str, im_var: &str, conjugate: bool) -> Multivector {
    let half = chart.ratfunc_const(Scalar::ratio(1, 2));
    let half_i = chart.ratfunc_const(&Scalar::ratio(1, 2) * &Scalar::i());
    let sign = if conjugate { half_i } else { -&half_i };
    Multivector::vector_field(chart, &[(re_var, half), (im_var, sign)])
}

/// The multiplicative structure on C^2 in real coordinates (a,b,p,q):
///   −i·vv̄·∂u∧∂ū + (i·uv·∂u∧∂v + conj)/2 + (i·uv̄·∂u∧∂v̄ + conj)/2.
/// The result has purely real coefficients and satisfies Jacobi, both
/// certified here.
pub fn make_su2_bivector_r4() -> PoissonStructure {
    let chart = charts::r4();
    let (u, _ub, v, vb) = r4_complex_coords();
    let du = wirtinger_vector(&chart, "a", "b", false);
    let dub = wirtinger_vector(&chart, "a", "b", true);
    let dv = wirtinger_vector(&chart, "p", "q", false);
    let dvb = wirtinger_vector(&chart, "p", "q", true);

    let i = chart.ratfunc_const(Scalar::i());
    let half = Scalar::ratio(1, 2);

    // −i v v̄ ∂u∧∂ū
    let term1 = du
        .wedge(&dub)
        .unwrap()
        .scale_ratfunc(&(-&(&i * &(&v * &vb))));
    // (1/2)(i u v ∂u∧∂v + conjugate)
    let iuv = &i * &(&u * &v);
    let t2 = du.wedge(&dv).unwrap().scale_ratfunc(&iuv);
    let term2 = t2.add(&t2.conj()).unwrap().scale(&half);
    // (1/2)(i u v̄ ∂u∧∂v̄ + conjugate)
    let iuvb = &i * &(&u * &vb);
    let t3 = du.wedge(&dvb).unwrap().scale_ratfunc(&iuvb);
    let term3 = t3.add(&t3.conj()).unwrap().scale(&half);

    let bivector = term1.add(&term2).unwrap().add(&term3).unwrap();
    for (_, c) in bivector.components() {
        assert!(
            c.numerator().is_real() && c.denominator().is_real(),
            "real structure expected on the real chart"
        );
    }
    PoissonStructure::new(bivector, "pi-su2-r4", None)
        .expect("the multiplicative bivector satisfies Jacobi")
}

// ---------------------------------------------------------------------------
// The covariant family on the sphere charts
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyChart {
    W,
    Z,
    Xy,
    St,
    ActionAngle,
}

impl FromStr for FamilyChart {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "w" => Ok(FamilyChart::W),
            "z" => Ok(FamilyChart::Z),
            "xy" => Ok(FamilyChart::Xy),
            "st" => Ok(FamilyChart::St),
            "action_angle" | "action-angle" => Ok(FamilyChart::ActionAngle),
            other => Err(Error::UnknownChart(other.to_string())),
        }
    }
}

fn plane_r2(chart: &Chart) -> RatFunc {
    let vars = chart.vars();
    let x = chart.ratfunc_var(vars[0]);
    let y = chart.ratfunc_var(vars[1]);
    &(&x * &x) + &(&y * &y)
}

/// Real form of the complex-density bivector c(w,w̄)·∂w∧∂w̄ on a plane
/// chart: the coefficient of ∂x∧∂y is (i/2)·c, which must come out real.
fn from_wirtinger_density(chart: &Chart, complex_coeff: &RatFunc) -> Multivector {
    let half_i = chart.ratfunc_const(&Scalar::ratio(1, 2) * &Scalar::i());
    let real_coeff = &half_i * complex_coeff;
    assert!(
        real_coeff.numerator().is_real() && real_coeff.denominator().is_real(),
        "Wirtinger density must produce a real bivector"
    );
    let vars = chart.vars();
    Multivector::bivector(chart, vars[0], vars[1], real_coeff)
}

/// Member of the one-parameter covariant family in the requested chart
/// presentation. The action-angle model is normalized so the degeneracy
/// circle has radius 1; all members are locally isomorphic to it.
pub fn make_pi_family(chart_id: FamilyChart, c: &Scalar) -> Result<PoissonStructure> {
    if !c.is_real() {
        return Err(Error::InvalidParameter("family parameter must be real".into()));
    }
    let label = |name: &str| format!("pi_c[c={c}]@{name}");
    match chart_id {
        FamilyChart::W => {
            // −(i/2)(1+ww̄)((c+1)ww̄ + c−1) ∂w∧∂w̄
            let chart = charts::w();
            let r2 = plane_r2(&chart);
            let one = chart.ratfunc_const(Scalar::one());
            let cp1 = chart.ratfunc_const(c + &Scalar::one());
            let cm1 = chart.ratfunc_const(c - &Scalar::one());
            let coeff = &(&one + &r2) * &(&(&cp1 * &r2) + &cm1);
            let complex = coeff.scale(&(-&(&Scalar::ratio(1, 2) * &Scalar::i())));
            let bv = from_wirtinger_density(&chart, &complex);
            PoissonStructure::new(bv, &label("w"), Some(c.clone()))
        }
        FamilyChart::Z => {
            // Transport of the w-chart presentation through z = 1/w.
            let pi_w = make_pi_family(FamilyChart::W, c)?;
            let atlas = crate::chart::stereographic_atlas();
            let map = atlas.map("w_to_z").expect("registered");
            let bv = crate::chart::pushforward_rational(pi_w.bivector(), map)?;
            PoissonStructure::new(bv, &label("z"), Some(c.clone()))
        }
        FamilyChart::Xy => {
            // (1/4)(1+x²+y²)((c+1)(x²+y²)+c−1) ∂x∧∂y
            let chart = charts::xy();
            let r2 = plane_r2(&chart);
            let one = chart.ratfunc_const(Scalar::one());
            let cp1 = chart.ratfunc_const(c + &Scalar::one());
            let cm1 = chart.ratfunc_const(c - &Scalar::one());
            let coeff = (&(&one + &r2) * &(&(&cp1 * &r2) + &cm1)).scale(&Scalar::ratio(1, 4));
            let bv = Multivector::bivector(&chart, "x", "y", coeff);
            PoissonStructure::new(bv, &label("xy"), Some(c.clone()))
        }
        FamilyChart::St => {
            // (1/2)(s²+t²−(1−c)/2) ∂s∧∂t
            let chart = charts::st();
            let r2 = plane_r2(&chart);
            let rad_sq = &(&Scalar::one() - c) / &Scalar::from_int(2);
            let coeff = (&r2 - &chart.ratfunc_const(rad_sq)).scale(&Scalar::ratio(1, 2));
            let bv = Multivector::bivector(&chart, "s", "t", coeff);
            PoissonStructure::new(bv, &label("st"), Some(c.clone()))
        }
        FamilyChart::ActionAngle => {
            // I ∂I∧∂θ (radius-1 normalization; the parameter only enters
            // through the chart geometry).
            let chart = charts::action_angle();
            let coeff = chart.ratfunc_var("I");
            let bv = Multivector::bivector(&chart, "I", "theta", coeff);
            PoissonStructure::new(bv, "pi_c@action_angle[normalized]", Some(c.clone()))
        }
    }
}

/// The rotation-invariant structure (inverse of the round area form) in the
/// plane chart: (1/4)(1+x²+y²)² ∂x∧∂y.
pub fn standard_structure_plane(chart: &Chart) -> PoissonStructure {
    let r2 = plane_r2(chart);
    let one = chart.ratfunc_const(Scalar::one());
    let base = &one + &r2;
    let coeff = (&base * &base).scale(&Scalar::ratio(1, 4));
    let vars = chart.vars();
    let bv = Multivector::bivector(chart, vars[0], vars[1], coeff);
    PoissonStructure::new(bv, &format!("pi-standard@{}", chart.name()), None).unwrap()
}

/// The same structure in disk coordinates: (1/4) ∂s∧∂t.
pub fn constant_area_structure() -> PoissonStructure {
    let chart = charts::st();
    let bv = Multivector::bivector(&chart, "s", "t", chart.ratfunc_const(Scalar::ratio(1, 4)));
    PoissonStructure::new(bv, "pi-standard@st", None).unwrap()
}

/// Degenerate member of the family at c = 1 in the chart where it vanishes
/// at the origin: real form of −i·ww̄(1+ww̄)·∂w∧∂w̄.
pub fn bruhat_structure_w() -> PoissonStructure {
    let chart = charts::w();
    let r2 = plane_r2(&chart);
    let one = chart.ratfunc_const(Scalar::one());
    let complex = (&r2 * &(&one + &r2)).scale(&-&Scalar::i());
    let bv = from_wirtinger_density(&chart, &complex);
    PoissonStructure::new(bv, "pi_1@w", Some(Scalar::one())).unwrap()
}

/// The same structure on the opposite chart: real form of −i(1+zz̄)·∂z∧∂z̄.
pub fn bruhat_structure_z() -> PoissonStructure {
    let chart = charts::z();
    let r2 = plane_r2(&chart);
    let one = chart.ratfunc_const(Scalar::one());
    let complex = (&one + &r2).scale(&-&Scalar::i());
    let bv = from_wirtinger_density(&chart, &complex);
    PoissonStructure::new(bv, "pi_1@z", Some(Scalar::one())).unwrap()
}

/// Density of the round area form (the inverse of the standard structure)
/// in the plane chart: 4/(1+x²+y²)².
pub fn round_area_density(chart: &Chart) -> RatFunc {
    let r2 = plane_r2(chart);
    let one = chart.ratfunc_const(Scalar::one());
    let base = &one + &r2;
    &chart.ratfunc_const(Scalar::from_int(4)) / &(&base * &base)
}

// ---------------------------------------------------------------------------
// Invariants
// ---------------------------------------------------------------------------

/// True iff f is central: [π, f] = 0 exactly.
pub fn casimir_check(pi: &PoissonStructure, f: &RatFunc) -> Result<bool> {
    let mv = Multivector::from_function(pi.chart().clone(), f.clone());
    Ok(schouten(pi.bivector(), &mv)?.is_zero())
}

/// 16-point Gauss–Legendre nodes and weights on [-1, 1] (positive half).
const GL16_NODES: [f64; 8] = [
    0.0950125098376374,
    0.2816035507792589,
    0.4580167776572274,
    0.6178762444026438,
    0.755_404_408_355_003,
    0.8656312023878318,
    0.9445750230732326,
    0.9894009349916499,
];
const GL16_WEIGHTS: [f64; 8] = [
    0.1894506104550685,
    0.1826034150449236,
    0.1691565193950025,
    0.1495959888165767,
    0.1246289712555339,
    0.0951585116824928,
    0.0622535239386479,
    0.0271524594117541,
];

/// Total area of the structure's inverse 2-form over the sphere, computed
/// as a plane integral of 1/|coefficient| with the radial substitution
/// r² = ξ/(1−ξ) taming the infinite domain. Converges to
/// 2π·ln((c+1)/(c−1)) in absolute value.
pub fn symplectic_area(c: &Scalar, quad_points: usize) -> Result<f64> {
    if c.abs_cmp_one() != std::cmp::Ordering::Greater {
        return Err(Error::DegenerateFamily(c.to_string()));
    }
    if quad_points < 64 {
        return Err(Error::InvalidParameter(format!(
            "quad_points = {quad_points} < 64"
        )));
    }
    let pi_c = make_pi_family(FamilyChart::Xy, c)?;
    let coeff = pi_c.coefficient_2d();

    // Angular quadrature is a periodic trapezoid; radial quadrature is
    // composite 16-point Gauss–Legendre in ξ = r²/(1+r²).
    let angular = 32usize;
    let panels = (quad_points / 16).max(4);
    let mut total = 0.0;
    for p in 0..panels {
        let lo = p as f64 / panels as f64;
        let hi = (p + 1) as f64 / panels as f64;
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        for k in 0..16 {
            let (node, weight) = if k < 8 {
                (-GL16_NODES[k], GL16_WEIGHTS[k])
            } else {
                (GL16_NODES[k - 8], GL16_WEIGHTS[k - 8])
            };
            let xi: f64 = mid + half * node;
            let r = (xi / (1.0 - xi)).sqrt();
            let mut ang_acc = 0.0;
            for a in 0..angular {
                let phi = std::f64::consts::TAU * (a as f64) / (angular as f64);
                let (x, y) = (r * phi.cos(), r * phi.sin());
                let f = coeff.eval_f64(&[x, y]);
                // density of the inverse form, times the Jacobian of the
                // substitution: r dr dφ = dξ dφ / (2(1−ξ)²)
                let one_minus = 1.0 - xi;
                let val = 1.0 / (f.abs() * 2.0 * one_minus * one_minus);
                if val.is_finite() {
                    ang_acc += val;
                }
            }
            ang_acc *= std::f64::consts::TAU / (angular as f64);
            total += weight * half * ang_acc;
        }
    }
    Ok(total)
}

/// Geometry of the degeneracy circle for |c| < 1.
pub struct NecklaceGeometry {
    pub c: Scalar,
    /// Exact value of radius² = (1−c)/2.
    pub radius_sq: Scalar,
    pub radius: f64,
    /// Annulus half-width parameter used by the local model reports.
    pub annulus_delta: Scalar,
}

/// Radius certificate: (1−c)/2 exactly, plus verification that the disk
/// presentation vanishes exactly on that circle.
pub fn necklace_radius(c: &Scalar) -> Result<NecklaceGeometry> {
    if c.abs_cmp_one() == std::cmp::Ordering::Greater || !c.is_real() {
        return Err(Error::OutOfRange(c.to_string()));
    }
    let radius_sq = &(&Scalar::one() - c) / &Scalar::from_int(2);
    // The coefficient of the disk presentation is (1/2)(s²+t²−radius²):
    // exact factor comparison against the零 locus.
    let pi_c = make_pi_family(FamilyChart::St, c)?;
    let chart = charts::st();
    let r2 = plane_r2(&chart);
    let expected = (&r2 - &chart.ratfunc_const(radius_sq.clone())).scale(&Scalar::ratio(1, 2));
    if pi_c.coefficient_2d() != expected {
        return Err(Error::Inconsistent(
            "disk coefficient does not factor through the circle".into(),
        ));
    }
    let radius = radius_sq.re().to_f64().unwrap_or(f64::NAN).sqrt();
    Ok(NecklaceGeometry {
        c: c.clone(),
        radius_sq,
        radius,
        annulus_delta: Scalar::ratio(1, 2),
    })
}

/// Modular field of the family member in the plane chart with respect to
/// the round area form.
pub fn family_modular_field(c: &Scalar) -> Result<Multivector> {
    let pi_c = make_pi_family(FamilyChart::Xy, c)?;
    let density = round_area_density(pi_c.chart());
    modular_field(&pi_c, &density)
}

/// Decomposition identity: pi_c − pi_1 − (c−1)·pi = 0 in the plane chart.
pub fn family_decomposition_residual(c: &Scalar) -> Result<Multivector> {
    let chart = charts::xy();
    let pi_c = make_pi_family(FamilyChart::Xy, c)?;
    let pi_1 = make_pi_family(FamilyChart::Xy, &Scalar::one())?;
    let pi = standard_structure_plane(&chart);
    let scaled = pi.bivector().scale(&(c - &Scalar::one()));
    pi_c.bivector().sub(pi_1.bivector())?.sub(&scaled)
}
