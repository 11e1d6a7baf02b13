//! Geometry of anisotropic Young diagrams: interlacing coordinates, the
//! transition measure, its moments and free cumulants, piecewise-linear
//! profiles and the limit shape.

use std::fmt::Write as _;

use crate::algebra::{moments_to_free_cumulants, AlphaField, FormalSeries, QuadExt, Ring};
use crate::partitions::{corners, Cell, Partition};

/// Contents of the inner (minima) and outer (maxima) corners, each sorted ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct Interlacing<T> {
    pub inner: Vec<T>,
    pub outer: Vec<T>,
}

/// Atoms `(z_i, c_i)` of the transition measure, ordered by content.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionMeasure<T> {
    pub atoms: Vec<(T, T)>,
}

fn outer_cell_content(c: Cell, field: &AlphaField) -> QuadExt {
    // The maximum sits at the far corner of the removable box.
    let s = field.sqrt_alpha();
    let shift = &s - &s.inverse().expect("alpha > 0");
    &c.aniso_content(field) + &shift
}

/// Exact corner contents of the anisotropic diagram `A_alpha(lambda)`.
pub fn interlacing_of(lambda: &Partition, field: &AlphaField) -> Interlacing<QuadExt> {
    let c = corners(lambda);
    let mut inner: Vec<QuadExt> = c.addable.iter().map(|b| b.aniso_content(field)).collect();
    let mut outer: Vec<QuadExt> = c
        .removable
        .iter()
        .map(|&b| outer_cell_content(b, field))
        .collect();
    // Contents decrease down the diagram; the top corner comes first.
    inner.reverse();
    outer.reverse();
    Interlacing { inner, outer }
}

/// Floating-point corner contents of `A_alpha(lambda)`.
pub fn interlacing_f64(lambda: &Partition, alpha: f64) -> Interlacing<f64> {
    let s = alpha.sqrt();
    let c = corners(lambda);
    let mut inner: Vec<f64> = c.addable.iter().map(|b| b.aniso_content_f64(s)).collect();
    let mut outer: Vec<f64> = c
        .removable
        .iter()
        .map(|b| b.aniso_content_f64(s) + s - 1.0 / s)
        .collect();
    inner.reverse();
    outer.reverse();
    Interlacing { inner, outer }
}

/// Residues `c_i = prod_o (z_i - o) / prod_{j != i} (z_i - z_j)` of the Cauchy transform.
fn residues<R: Ring>(inter: &Interlacing<R>) -> Vec<(R, R)> {
    inter
        .inner
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let one = z.one_like();
            let mut num = one.clone();
            let mut den = one.clone();
            // Pair numerator and denominator factors to keep float magnitudes moderate.
            let others = inter
                .inner
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, x)| x);
            for (o, x) in inter.outer.iter().zip(others) {
                num = num.times(&z.minus(o));
                den = den.times(&z.minus(x));
            }
            let w = num.times(&den.try_inverse().expect("distinct corners"));
            (z.clone(), w)
        })
        .collect()
}

/// The transition measure of `A_alpha(lambda)`, exactly.
pub fn transition_measure(lambda: &Partition, field: &AlphaField) -> TransitionMeasure<QuadExt> {
    TransitionMeasure {
        atoms: residues(&interlacing_of(lambda, field)),
    }
}

/// The transition measure of `A_alpha(lambda)` in floating point.
pub fn transition_measure_f64(lambda: &Partition, alpha: f64) -> TransitionMeasure<f64> {
    transition_measure_from_interlacing(&interlacing_f64(lambda, alpha))
}

/// Transition measure of any interlacing sequence.
pub fn transition_measure_from_interlacing(inter: &Interlacing<f64>) -> TransitionMeasure<f64> {
    let atoms = inter
        .inner
        .iter()
        .enumerate()
        .map(|(i, &z)| {
            let mut w = 1.0;
            let others = inter
                .inner
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &x)| x);
            for (o, x) in inter.outer.iter().zip(others) {
                w *= (z - o) / (z - x);
            }
            (z, w)
        })
        .collect();
    TransitionMeasure { atoms }
}

impl<T: Ring> TransitionMeasure<T> {
    /// `sum_i c_i z_i^k` for `k = 0..=kmax`.
    pub fn power_sums(&self, kmax: usize) -> Vec<T> {
        let zero = self.atoms[0].0.zero_like();
        let mut out = vec![zero; kmax + 1];
        for (z, c) in &self.atoms {
            let mut p = c.clone();
            for slot in out.iter_mut() {
                *slot = slot.plus(&p);
                p = p.times(z);
            }
        }
        out
    }
}

/// Moments `M_0..M_kmax` as complete symmetric functions `h_k(I - O)` of the corner alphabet.
pub fn moments(lambda: &Partition, field: &AlphaField, kmax: usize) -> Vec<QuadExt> {
    let inter = interlacing_of(lambda, field);
    let one = QuadExt::one(field);
    // sum_k h_k(I - O) t^k = prod (1 - o t) / prod (1 - i t)
    let linear = |x: &QuadExt| FormalSeries::new(&one, vec![one.clone(), -x], kmax);
    let mut num = FormalSeries::new(&one, vec![one.clone()], kmax);
    for o in &inter.outer {
        num = num.mul(&linear(o));
    }
    let mut den = FormalSeries::new(&one, vec![one.clone()], kmax);
    for i in &inter.inner {
        den = den.mul(&linear(i));
    }
    let h = num.mul(&den.reciprocal().expect("constant term one"));
    h.coeffs().to_vec()
}

/// Moments `M_0..M_kmax` in floating point, from the transition measure.
pub fn moments_f64(lambda: &Partition, alpha: f64, kmax: usize) -> Vec<f64> {
    transition_measure_f64(lambda, alpha).power_sums(kmax)
}

/// Free cumulants `R_0..R_kmax` (with `R_0 = R_1 = 0`), exactly.
pub fn free_cumulants(lambda: &Partition, field: &AlphaField, kmax: usize) -> Vec<QuadExt> {
    moments_to_free_cumulants(&moments(lambda, field, kmax), kmax).expect("M_0 = 1")
}

/// Free cumulants `R_0..R_kmax` in floating point.
pub fn free_cumulants_f64(lambda: &Partition, alpha: f64, kmax: usize) -> Vec<f64> {
    let mut m = moments_f64(lambda, alpha, kmax.max(1));
    // Rounding moves M_0 and M_1 off their exact values 1 and 0.
    m[0] = 1.0;
    m[1] = 0.0;
    moments_to_free_cumulants(&m, kmax).expect("M_0 = 1")
}

/// A piecewise-linear, 1-Lipschitz profile equal to `|x|` outside its breakpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileFunction {
    /// Breakpoints `(x, omega(x))`, ascending in `x`; alternately minima and maxima.
    points: Vec<(f64, f64)>,
}

impl ProfileFunction {
    /// Builds the profile with minima at `inner` and maxima at `outer`, scaled by `scale`.
    pub fn from_interlacing(inter: &Interlacing<f64>, scale: f64) -> Self {
        let mut xs: Vec<f64> = Vec::with_capacity(inter.inner.len() + inter.outer.len());
        for (i, &x) in inter.inner.iter().enumerate() {
            xs.push(x * scale);
            if let Some(&y) = inter.outer.get(i) {
                xs.push(y * scale);
            }
        }
        let mut points = Vec::with_capacity(xs.len());
        let mut value = xs[0].abs();
        points.push((xs[0], value));
        for (idx, w) in xs.windows(2).enumerate() {
            let slope = if idx % 2 == 0 { 1.0 } else { -1.0 };
            value += slope * (w[1] - w[0]);
            points.push((w[1], value));
        }
        ProfileFunction { points }
    }

    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// `omega(x)`.
    pub fn eval(&self, x: f64) -> f64 {
        let first = self.points[0].0;
        let last = self.points[self.points.len() - 1].0;
        if x <= first || x >= last {
            return x.abs();
        }
        let idx = self.points.partition_point(|p| p.0 <= x);
        let (x0, y0) = self.points[idx - 1];
        let (x1, y1) = self.points[idx];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// CSV dump `x,omega` of the breakpoints.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("x,omega\n");
        for (x, y) in &self.points {
            let _ = writeln!(s, "{x},{y}");
        }
        s
    }
}

/// The profile of `D_scale(A_alpha(lambda))`.
pub fn profile(lambda: &Partition, alpha: f64, scale: f64) -> ProfileFunction {
    ProfileFunction::from_interlacing(&interlacing_f64(lambda, alpha), scale)
}

/// The limit shape `Omega(x)`.
pub fn omega_limit(x: f64) -> f64 {
    if x.abs() >= 2.0 {
        x.abs()
    } else {
        2.0 / std::f64::consts::PI * (x * (x / 2.0).asin() + (4.0 - x * x).sqrt())
    }
}

/// Refinement grid step used by [`sup_distance_to_limit`].
pub const SUP_GRID_STEP: f64 = 1e-3;

/// `sup_x |omega(D_{1/sqrt(n)} A_alpha(lambda))(x) - Omega(x)|`.
pub fn sup_distance_to_limit(lambda: &Partition, alpha: f64) -> f64 {
    let n = lambda.size() as f64;
    let w = profile(lambda, alpha, 1.0 / n.sqrt());
    let mut best = 0.0f64;
    for &(x, y) in w.breakpoints() {
        best = best.max((y - omega_limit(x)).abs());
    }
    let steps = (6.0 / SUP_GRID_STEP).round() as i64;
    for i in 0..=steps {
        let x = -3.0 + i as f64 * SUP_GRID_STEP;
        best = best.max((w.eval(x) - omega_limit(x)).abs());
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q_frac, q_int, Q};

    fn field(a: Q) -> AlphaField {
        AlphaField::new(a).unwrap()
    }

    #[test]
    fn single_box_geometry() {
        let f = field(q_int(3));
        let s = f.sqrt_alpha();
        let inv = s.inverse().unwrap();
        let it = interlacing_of(&Partition::of(&[1]), &f);
        assert_eq!(it.inner, vec![-&inv, s.clone()]);
        assert_eq!(it.outer, vec![&s - &inv]);
        let tm = transition_measure(&Partition::of(&[1]), &f);
        assert_eq!(tm.atoms[0].1, QuadExt::rational(&f, q_frac(3, 4)));
        assert_eq!(tm.atoms[1].1, QuadExt::rational(&f, q_frac(1, 4)));
    }

    #[test]
    fn empty_diagram() {
        let f = field(q_int(2));
        let it = interlacing_of(&Partition::empty(), &f);
        assert_eq!(it.inner.len(), 1);
        assert!(it.inner[0].is_zero() && it.outer.is_empty());
        let m = moments(&Partition::empty(), &f, 5);
        assert!(m[1..].iter().all(QuadExt::is_zero));
    }

    #[test]
    fn figure_example_contents() {
        let f = field(q_int(1));
        let it = interlacing_of(&Partition::of(&[4, 4, 2]), &f);
        let inner: Vec<Q> = it
            .inner
            .iter()
            .map(|x| x.as_rational().unwrap().clone())
            .collect();
        let outer: Vec<Q> = it
            .outer
            .iter()
            .map(|x| x.as_rational().unwrap().clone())
            .collect();
        assert_eq!(inner, vec![q_int(-3), q_int(0), q_int(4)]);
        assert_eq!(outer, vec![q_int(-1), q_int(2)]);
    }

    #[test]
    fn moments_match_transition_measure() {
        for a in [q_int(1), q_int(2), q_frac(1, 4)] {
            let f = field(a);
            for lambda in crate::partitions::enumerate(5) {
                let m = moments(&lambda, &f, 6);
                let p = transition_measure(&lambda, &f).power_sums(6);
                assert_eq!(m, p);
                assert_eq!(m[2], QuadExt::from_int(&f, 5));
            }
        }
    }

    #[test]
    fn profile_shapes() {
        let w = profile(&Partition::of(&[1]), 1.0, 1.0);
        assert!((w.eval(0.0) - 2.0).abs() < 1e-12);
        assert!((w.eval(1.5) - 1.5).abs() < 1e-12);
        assert!((w.eval(-0.5) - 1.5).abs() < 1e-12);
        assert_eq!(profile(&Partition::empty(), 1.0, 1.0).eval(-2.0), 2.0);
        assert!((omega_limit(0.0) - 4.0 / std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(omega_limit(-3.0), 3.0);
        assert_eq!(omega_limit(2.0), 2.0);
    }

    #[test]
    fn one_row_is_far_from_limit() {
        assert!(sup_distance_to_limit(&Partition::of(&[100]), 1.0) > 1.0);
    }
}
