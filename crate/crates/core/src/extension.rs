//! Piecewise extensions of disk and exterior maps to the whole plane.
//!
//! A disk map `f` is continued to `|z| >= 1` by reflecting its series:
//! `z + sum a_n conj(z^-n) + sum conj(b_n) z^-n`. An exterior map is continued
//! to `|z| <= 1` by `alpha z + beta conj(z) + sum a_n conj(z)^n + sum conj(b_n) z^n`.
//! On the unit circle both formulas coincide.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::Result;
use crate::harmonic::{ExteriorMap, HarmonicMap, InteriorMap, Wirtinger};
use crate::scalar::{cst, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Region {
    Inner,
    Outer,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source<T> {
    Interior(InteriorMap<T>),
    Exterior(ExteriorMap<T>),
}

/// Series-level bounds on `|mu_F|` per region.
///
/// `None` marks a degenerate denominator: the bound is unavailable for that region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticBounds<T> {
    pub inner: Option<T>,
    pub outer: Option<T>,
}

impl<T: Scalar> AnalyticBounds<T> {
    pub fn overall(&self) -> Option<T> {
        Some(self.inner?.max(self.outer?))
    }

    pub fn for_region(&self, region: Region) -> Option<T> {
        match region {
            Region::Inner => self.inner,
            Region::Outer => self.outer,
        }
    }
}

fn ratio<T: Scalar>(num: T, den: T) -> Option<T> {
    (den > T::zero()).then(|| num / den)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlaneExtension<T> {
    source: Source<T>,
    bounds: AnalyticBounds<T>,
}

/// Extension of a disk map by reflection across the unit circle.
pub fn extend_interior<T: Scalar>(f: InteriorMap<T>) -> PlaneExtension<T> {
    let sa = f.a().index_weighted_abs_sum();
    let sb = f.b().index_weighted_abs_sum();
    let bounds = AnalyticBounds {
        inner: ratio(sb, T::one() - sa),
        outer: ratio(sa, T::one() - sb),
    };
    PlaneExtension {
        source: Source::Interior(f),
        bounds,
    }
}

/// Extension of an exterior map into the disk.
pub fn extend_exterior<T: Scalar>(f: ExteriorMap<T>) -> PlaneExtension<T> {
    let alpha = f.alpha().norm();
    let beta = f.beta().norm();
    let half_log = f.log_coeff().norm() * cst(0.5);
    let sa = f.a().index_weighted_abs_sum();
    let sb = f.b().index_weighted_abs_sum();
    let bounds = AnalyticBounds {
        inner: ratio(beta + sa, alpha - sb),
        outer: ratio(beta + half_log + sb, alpha - half_log - sa),
    };
    PlaneExtension {
        source: Source::Exterior(f),
        bounds,
    }
}

impl<T: Scalar> PlaneExtension<T> {
    pub fn source(&self) -> &Source<T> {
        &self.source
    }

    pub fn bounds(&self) -> AnalyticBounds<T> {
        self.bounds
    }

    /// Region whose formula applies at `z`; the seam belongs to the source's own domain.
    pub fn region_of(&self, z: Complex<T>) -> Region {
        let r = z.norm();
        match self.source {
            Source::Interior(_) if r <= T::one() => Region::Inner,
            Source::Interior(_) => Region::Outer,
            Source::Exterior(_) if r >= T::one() => Region::Outer,
            Source::Exterior(_) => Region::Inner,
        }
    }

    /// `|alpha|` of the leading term (1 for disk maps).
    pub fn leading_modulus(&self) -> T {
        match &self.source {
            Source::Interior(_) => T::one(),
            Source::Exterior(f) => f.alpha().norm(),
        }
    }

    /// Limit of `|mu_F|` as `|z| -> infinity`: `|beta/alpha|` for exterior maps,
    /// 0 for disk maps.
    pub fn asymptotic_dilatation(&self) -> T {
        match &self.source {
            Source::Interior(_) => T::zero(),
            Source::Exterior(f) => f.beta().norm() / f.alpha().norm(),
        }
    }

    /// Sum of every coefficient modulus plus `|alpha| + |beta| + |A|`.
    pub fn coefficient_mass(&self) -> T {
        match &self.source {
            Source::Interior(f) => T::one() + f.a().abs_sum() + f.b().abs_sum(),
            Source::Exterior(f) => {
                f.alpha().norm() + f.beta().norm() + f.log_coeff().norm() + f.a().abs_sum() + f.b().abs_sum()
            }
        }
    }

    /// Value of the formula for `region`, regardless of where `z` lies.
    pub fn evaluate_formula(&self, region: Region, z: Complex<T>) -> Result<Complex<T>> {
        match (&self.source, region) {
            (Source::Interior(f), Region::Inner) => Ok(f.evaluate(z)),
            (Source::Interior(f), Region::Outer) => reflected_interior(f, z),
            (Source::Exterior(f), Region::Outer) => f.evaluate(z),
            (Source::Exterior(f), Region::Inner) => Ok(reflected_exterior(f, z)),
        }
    }

    pub fn partials_formula(&self, region: Region, z: Complex<T>) -> Result<Wirtinger<T>> {
        match (&self.source, region) {
            (Source::Interior(f), Region::Inner) => Ok(f.partials(z)),
            (Source::Interior(f), Region::Outer) => reflected_interior_partials(f, z),
            (Source::Exterior(f), Region::Outer) => f.partials(z),
            (Source::Exterior(f), Region::Inner) => Ok(reflected_exterior_partials(f, z)),
        }
    }

    pub fn evaluate(&self, z: Complex<T>) -> Result<Complex<T>> {
        self.evaluate_formula(self.region_of(z), z)
    }

    pub fn partials(&self, z: Complex<T>) -> Result<Wirtinger<T>> {
        self.partials_formula(self.region_of(z), z)
    }
}

impl<T: Scalar> HarmonicMap<T> for PlaneExtension<T> {
    fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        self.evaluate(z)
    }

    fn wirtinger(&self, z: Complex<T>) -> Result<Wirtinger<T>> {
        self.partials(z)
    }
}

fn origin_check<T: Scalar>(z: Complex<T>) -> Result<Complex<T>> {
    if z.is_zero() {
        Err(crate::error::Error::Origin)
    } else {
        Ok(z.inv())
    }
}

// z + sum a_n conj(z)^-n + sum conj(b_n) z^-n
fn reflected_interior<T: Scalar>(f: &InteriorMap<T>, z: Complex<T>) -> Result<Complex<T>> {
    let w = origin_check(z)?;
    Ok(z + f.a().power_sum(w.conj()) + f.b().conj().power_sum(w))
}

fn reflected_interior_partials<T: Scalar>(f: &InteriorMap<T>, z: Complex<T>) -> Result<Wirtinger<T>> {
    let w = origin_check(z)?;
    let wc = w.conj();
    Ok(Wirtinger {
        dz: Complex::new(T::one(), T::zero()) - w * w * f.b().conj().derivative_sum(w),
        dzbar: -(wc * wc * f.a().derivative_sum(wc)),
    })
}

// alpha z + beta conj(z) + sum a_n conj(z)^n + sum conj(b_n) z^n
fn reflected_exterior<T: Scalar>(f: &ExteriorMap<T>, z: Complex<T>) -> Complex<T> {
    let zc = z.conj();
    f.alpha() * z + f.beta() * zc + f.a().power_sum(zc) + f.b().conj().power_sum(z)
}

fn reflected_exterior_partials<T: Scalar>(f: &ExteriorMap<T>, z: Complex<T>) -> Wirtinger<T> {
    Wirtinger {
        dz: f.alpha() + f.b().conj().derivative_sum(z),
        dzbar: f.beta() + f.a().derivative_sum(z.conj()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::psi_alpha;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn worked_example() -> ExteriorMap<f64> {
        ExteriorMap::new(
            c(1.0, 0.0),
            c(0.0, -1.0 / 6.0),
            vec![(4, c(0.0, -1.0 / 8.0))],
            vec![],
            c(0.0, 0.25),
        )
        .unwrap()
    }

    #[test]
    fn identity_extensions() {
        for ext in [
            extend_interior(InteriorMap::<f64>::identity()),
            extend_exterior(ExteriorMap::<f64>::identity()),
        ] {
            assert_eq!(ext.bounds().inner, Some(0.0));
            assert_eq!(ext.bounds().outer, Some(0.0));
            assert_eq!(ext.bounds().overall(), Some(0.0));
            for z in [c(0.3, 0.1), c(2.0, -1.0), c(0.0, 1.0)] {
                assert!((ext.evaluate(z).unwrap() - z).norm() < 1e-15);
                assert_eq!(ext.dilatation(z).unwrap(), c(0.0, 0.0));
            }
        }
    }

    #[test]
    fn interior_bounds_by_hand() {
        let f = InteriorMap::new(vec![(2, c(0.2, 0.0))], vec![(1, c(0.1, 0.0))]).unwrap();
        let b = extend_interior(f).bounds();
        assert!((b.inner.unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!((b.outer.unwrap() - 4.0 / 9.0).abs() < 1e-15);
        assert!((b.overall().unwrap() - 4.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_bounds_are_unavailable() {
        let f = InteriorMap::new(vec![(2, c(0.5, 0.0))], vec![]).unwrap();
        let b = extend_interior(f).bounds();
        assert_eq!(b.inner, None);
        assert_eq!(b.outer, Some(1.0));
        assert_eq!(b.overall(), None);
    }

    #[test]
    fn extremal_strongly_starlike_extension() {
        let order = 0.5;
        for n in 2..6 {
            let bn = 1.0 / psi_alpha(n, order).unwrap();
            let f = InteriorMap::new(vec![], vec![(n, c(bn, 0.0))]).unwrap();
            let ext = extend_interior(f);
            let z = c(2.0, 0.0);
            let expected = z + c(bn * 2f64.powi(-(n as i32)), 0.0);
            assert!((ext.evaluate(z).unwrap() - expected).norm() < 1e-15);
            let s = (PI * order / 2.0).sin();
            let e = Complex::from_polar(1.0, PI * order);
            let closed = 2.0 * n as f64 * s / (n as f64 + 1.0 + (c(n as f64, 0.0) + e).norm());
            let inner = ext.bounds().inner.unwrap();
            assert!((inner - n as f64 * bn).abs() < 1e-15);
            assert!(inner <= closed + 1e-15);
            assert_eq!(ext.bounds().outer, Some(0.0));
        }
    }

    #[test]
    fn exterior_example_bounds() {
        let b = extend_exterior(worked_example()).bounds();
        assert!((b.inner.unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((b.outer.unwrap() - 7.0 / 9.0).abs() < 1e-15);
        assert!((b.overall().unwrap() - 7.0 / 9.0).abs() < 1e-15);

        let f = ExteriorMap::new(c(1.0, 0.0), c(0.0, 0.0), vec![], vec![(1, c(0.3, 0.0))], c(0.0, 0.0)).unwrap();
        let b = extend_exterior(f).bounds();
        assert_eq!(b.inner, Some(0.0));
        assert!((b.outer.unwrap() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn exterior_example_inner_formula() {
        let ext = extend_exterior(worked_example());
        let v = ext.evaluate(c(0.5, 0.0)).unwrap();
        assert!((v - c(0.5, -(1.0 / 12.0 + 1.0 / 128.0))).norm() < 1e-15);
        assert_eq!(ext.region_of(c(0.5, 0.0)), Region::Inner);
        assert_eq!(ext.region_of(c(1.0, 0.0)), Region::Outer);
        // the disk formula has no negative powers
        assert!(ext.evaluate(c(0.0, 0.0)).is_ok());
    }

    #[test]
    fn seam_formulas_agree() {
        let f = InteriorMap::new(
            vec![(2, c(0.1, -0.05)), (5, c(0.0, 0.02))],
            vec![(1, c(0.2, 0.1)), (3, c(-0.03, 0.01))],
        )
        .unwrap();
        let exts = [extend_interior(f), extend_exterior(worked_example())];
        for ext in &exts {
            for j in 0..360 {
                let z = Complex::from_polar(1.0, 2.0 * PI * j as f64 / 360.0);
                let inner = ext.evaluate_formula(Region::Inner, z).unwrap();
                let outer = ext.evaluate_formula(Region::Outer, z).unwrap();
                assert!((inner - outer).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn outer_dilatation_of_b1_only_map_vanishes() {
        let f = InteriorMap::new(vec![], vec![(1, c(0.3, 0.0))]).unwrap();
        let ext = extend_interior(f);
        for z in [c(1.5, 0.0), c(0.0, -3.0), c(2.0, 2.0)] {
            assert_eq!(ext.dilatation(z).unwrap(), c(0.0, 0.0));
        }
        assert!((ext.dilatation(c(0.5, 0.0)).unwrap() - c(0.3, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn exterior_example_dilatation_near_minus_i() {
        let ext = extend_exterior(worked_example());
        let mu = ext.dilatation(c(0.0, -(1.0 + 1e-6))).unwrap().norm();
        assert!((mu - 5.0 / 9.0).abs() < 1e-4, "{mu}");
        assert!(mu < 7.0 / 9.0);
    }
}
