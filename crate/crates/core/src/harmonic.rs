//! Interior and exterior harmonic maps in their normal series forms.
//!
//! An [`InteriorMap`] is `f = h + conj(g)` on the closed unit disk with
//! `h(z) = z + sum a_n z^n` (n >= 2) and `g(z) = sum b_n z^n` (n >= 1).
//! An [`ExteriorMap`] lives on `|z| > 1`:
//! `f(z) = alpha z + beta conj(z) + sum a_n z^-n + conj(sum b_n z^-n) + A ln|z|`.
//!
//! Both are finitely supported, so every evaluation is an exact finite sum.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{cst, idx, log_modulus, Scalar};

/// Sparse coefficient list with strictly increasing indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients<T> {
    terms: Vec<(usize, Complex<T>)>,
}

impl<T: Scalar> Coefficients<T> {
    pub fn empty() -> Self {
        Coefficients { terms: Vec::new() }
    }

    /// Validates index ordering, the minimum index and finiteness.
    ///
    /// Zero coefficients are dropped so that structurally equal maps compare equal.
    pub fn new(part: &'static str, min_index: usize, terms: Vec<(usize, Complex<T>)>) -> Result<Self> {
        let mut prev: Option<usize> = None;
        for &(n, c) in &terms {
            if n < min_index {
                return Err(Error::IndexTooSmall {
                    part,
                    index: n,
                    min: min_index,
                });
            }
            if let Some(p) = prev {
                if n <= p {
                    return Err(Error::IndicesNotIncreasing { part, prev: p, next: n });
                }
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::NonFinite(part));
            }
            prev = Some(n);
        }
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Coefficients { terms })
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Complex<T>)> + '_ {
        self.terms.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at `n`, zero when absent.
    pub fn get(&self, n: usize) -> Complex<T> {
        match self.terms.binary_search_by_key(&n, |&(i, _)| i) {
            Ok(pos) => self.terms[pos].1,
            Err(_) => Complex::zero(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms.last().map(|&(n, _)| n)
    }

    /// `sum |c_n|`
    pub fn abs_sum(&self) -> T {
        self.terms.iter().map(|(_, c)| c.norm()).sum()
    }

    /// `sum n |c_n|`
    pub fn index_weighted_abs_sum(&self) -> T {
        self.terms.iter().map(|&(n, c)| idx::<T>(n) * c.norm()).sum()
    }

    pub fn conj(&self) -> Self {
        Coefficients {
            terms: self.terms.iter().map(|&(n, c)| (n, c.conj())).collect(),
        }
    }

    pub fn without(&self, n: usize) -> Self {
        Coefficients {
            terms: self.terms.iter().copied().filter(|&(i, _)| i != n).collect(),
        }
    }

    /// Scales every coefficient by a real factor.
    pub fn scaled(&self, t: T) -> Self {
        Coefficients {
            terms: self
                .terms
                .iter()
                .map(|&(n, c)| (n, c * t))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Same-index products, absent indices count as zero.
    pub fn hadamard(&self, other: &Self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|&(n, c)| {
                let p = c * other.get(n);
                (!p.is_zero()).then_some((n, p))
            })
            .collect();
        Coefficients { terms }
    }

    /// `sum c_n w^n`
    pub(crate) fn power_sum(&self, w: Complex<T>) -> Complex<T> {
        self.terms
            .iter()
            .fold(Complex::zero(), |acc, &(n, c)| acc + c * w.powi(n as i32))
    }

    /// `sum n c_n w^(n-1)`
    pub(crate) fn derivative_sum(&self, w: Complex<T>) -> Complex<T> {
        self.terms.iter().fold(Complex::zero(), |acc, &(n, c)| {
            acc + c * w.powi(n as i32 - 1) * idx::<T>(n)
        })
    }
}

/// The two Wirtinger partials `(f_z, f_zbar)` at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wirtinger<T> {
    pub dz: Complex<T>,
    pub dzbar: Complex<T>,
}

impl<T: Scalar> Wirtinger<T> {
    /// `|f_z|^2 - |f_zbar|^2`
    pub fn jacobian(&self) -> T {
        self.dz.norm_sqr() - self.dzbar.norm_sqr()
    }

    /// `f_zbar / f_z`; `z` only labels the error.
    pub fn dilatation(&self, z: Complex<T>) -> Result<Complex<T>> {
        if self.dz.is_zero() {
            return Err(vanishing_derivative(z));
        }
        let mu = self.dzbar / self.dz;
        if mu.re.is_finite() && mu.im.is_finite() {
            Ok(mu)
        } else {
            Err(vanishing_derivative(z))
        }
    }
}

pub(crate) fn vanishing_derivative<T: Scalar>(z: Complex<T>) -> Error {
    Error::VanishingDerivative {
        re: z.re.to_f64().unwrap_or(f64::NAN),
        im: z.im.to_f64().unwrap_or(f64::NAN),
    }
}

/// Anything that can be evaluated and differentiated pointwise.
pub trait HarmonicMap<T: Scalar> {
    fn eval(&self, z: Complex<T>) -> Result<Complex<T>>;

    fn wirtinger(&self, z: Complex<T>) -> Result<Wirtinger<T>>;

    fn jacobian(&self, z: Complex<T>) -> Result<T> {
        Ok(self.wirtinger(z)?.jacobian())
    }

    fn dilatation(&self, z: Complex<T>) -> Result<Complex<T>> {
        self.wirtinger(z)?.dilatation(z)
    }
}

impl<T: Scalar, M: HarmonicMap<T> + ?Sized> HarmonicMap<T> for &M {
    fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        (**self).eval(z)
    }
    fn wirtinger(&self, z: Complex<T>) -> Result<Wirtinger<T>> {
        (**self).wirtinger(z)
    }
}

/// Normalized harmonic map of the unit disk (`f(0) = 0`, `f_z(0) = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorMap<T> {
    a: Coefficients<T>,
    b: Coefficients<T>,
}

impl<T: Scalar> InteriorMap<T> {
    /// `a` holds `(n, a_n)` for `n >= 2`, `b` holds `(n, b_n)` for `n >= 1`.
    pub fn new(a: Vec<(usize, Complex<T>)>, b: Vec<(usize, Complex<T>)>) -> Result<Self> {
        Ok(InteriorMap {
            a: Coefficients::new("analytic", 2, a)?,
            b: Coefficients::new("co-analytic", 1, b)?,
        })
    }

    pub fn identity() -> Self {
        InteriorMap {
            a: Coefficients::empty(),
            b: Coefficients::empty(),
        }
    }

    pub(crate) fn from_parts(a: Coefficients<T>, b: Coefficients<T>) -> Self {
        InteriorMap { a, b }
    }

    pub fn a(&self) -> &Coefficients<T> {
        &self.a
    }

    pub fn b(&self) -> &Coefficients<T> {
        &self.b
    }

    pub fn b1(&self) -> Complex<T> {
        self.b.get(1)
    }

    pub fn max_index(&self) -> usize {
        self.a.max_index().unwrap_or(0).max(self.b.max_index().unwrap_or(0))
    }

    /// `sum n|a_n| + sum n|b_n|`, the bi-Lipschitz constant of the disk map.
    pub fn lipschitz_constant(&self) -> T {
        self.a.index_weighted_abs_sum() + self.b.index_weighted_abs_sum()
    }

    /// Map with every coefficient conjugated.
    pub fn conj(&self) -> Self {
        InteriorMap {
            a: self.a.conj(),
            b: self.b.conj(),
        }
    }

    pub fn scaled(&self, t: T) -> Self {
        InteriorMap {
            a: self.a.scaled(t),
            b: self.b.scaled(t),
        }
    }

    /// `z + sum a_n z^n + conj(sum b_n z^n)`
    pub fn evaluate(&self, z: Complex<T>) -> Complex<T> {
        z + self.a.power_sum(z) + self.b.power_sum(z).conj()
    }

    /// `f_z = h'(z)`, `f_zbar = conj(g'(z))`
    pub fn partials(&self, z: Complex<T>) -> Wirtinger<T> {
        Wirtinger {
            dz: Complex::new(T::one(), T::zero()) + self.a.derivative_sum(z),
            dzbar: self.b.derivative_sum(z).conj(),
        }
    }
}

impl<T: Scalar> HarmonicMap<T> for InteriorMap<T> {
    fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        Ok(self.evaluate(z))
    }

    fn wirtinger(&self, z: Complex<T>) -> Result<Wirtinger<T>> {
        Ok(self.partials(z))
    }
}

/// Harmonic map of the exterior disk fixing infinity, with `a_0 = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExteriorMap<T> {
    alpha: Complex<T>,
    beta: Complex<T>,
    a: Coefficients<T>,
    b: Coefficients<T>,
    log_coeff: Complex<T>,
}

impl<T: Scalar> ExteriorMap<T> {
    /// `a`, `b` hold `(n, c_n)` for `n >= 1`; `log_coeff` is the `ln|z|` coefficient `A`.
    pub fn new(
        alpha: Complex<T>,
        beta: Complex<T>,
        a: Vec<(usize, Complex<T>)>,
        b: Vec<(usize, Complex<T>)>,
        log_coeff: Complex<T>,
    ) -> Result<Self> {
        let a = Coefficients::new("analytic", 1, a)?;
        let b = Coefficients::new("co-analytic", 1, b)?;
        Self::from_parts(alpha, beta, a, b, log_coeff)
    }

    pub(crate) fn from_parts(
        alpha: Complex<T>,
        beta: Complex<T>,
        a: Coefficients<T>,
        b: Coefficients<T>,
        log_coeff: Complex<T>,
    ) -> Result<Self> {
        for (part, c) in [("alpha", alpha), ("beta", beta), ("log", log_coeff)] {
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::NonFinite(part));
            }
        }
        if beta.norm() >= alpha.norm() {
            return Err(Error::NotSensePreserving {
                alpha: alpha.norm().to_f64().unwrap_or(f64::NAN),
                beta: beta.norm().to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(ExteriorMap {
            alpha,
            beta,
            a,
            b,
            log_coeff,
        })
    }

    /// `f(z) = z`
    pub fn identity() -> Self {
        ExteriorMap {
            alpha: Complex::new(T::one(), T::zero()),
            beta: Complex::zero(),
            a: Coefficients::empty(),
            b: Coefficients::empty(),
            log_coeff: Complex::zero(),
        }
    }

    pub fn alpha(&self) -> Complex<T> {
        self.alpha
    }

    pub fn beta(&self) -> Complex<T> {
        self.beta
    }

    pub fn a(&self) -> &Coefficients<T> {
        &self.a
    }

    pub fn b(&self) -> &Coefficients<T> {
        &self.b
    }

    pub fn log_coeff(&self) -> Complex<T> {
        self.log_coeff
    }

    pub fn conj(&self) -> Self {
        ExteriorMap {
            alpha: self.alpha.conj(),
            beta: self.beta.conj(),
            a: self.a.conj(),
            b: self.b.conj(),
            log_coeff: self.log_coeff.conj(),
        }
    }

    /// Scales everything except `alpha` by `t`.
    pub fn scaled_tail(&self, t: T) -> Self {
        ExteriorMap {
            alpha: self.alpha,
            beta: self.beta * t,
            a: self.a.scaled(t),
            b: self.b.scaled(t),
            log_coeff: self.log_coeff * t,
        }
    }

    pub fn evaluate(&self, z: Complex<T>) -> Result<Complex<T>> {
        if z.is_zero() {
            return Err(Error::Origin);
        }
        let w = z.inv();
        Ok(self.alpha * z
            + self.beta * z.conj()
            + self.a.power_sum(w)
            + self.b.power_sum(w).conj()
            + self.log_coeff * log_modulus(z))
    }

    /// `f_z = alpha + A/(2z) - sum n a_n z^(-n-1)`,
    /// `f_zbar = beta + A/(2 conj z) - conj(sum n b_n z^(-n-1))`.
    pub fn partials(&self, z: Complex<T>) -> Result<Wirtinger<T>> {
        if z.is_zero() {
            return Err(Error::Origin);
        }
        let w = z.inv();
        let w2 = w * w;
        let half_log = self.log_coeff * cst::<T>(0.5);
        Ok(Wirtinger {
            dz: self.alpha + half_log * w - w2 * self.a.derivative_sum(w),
            dzbar: self.beta + half_log * w.conj() - (w2 * self.b.derivative_sum(w)).conj(),
        })
    }
}

impl<T: Scalar> HarmonicMap<T> for ExteriorMap<T> {
    fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        self.evaluate(z)
    }

    fn wirtinger(&self, z: Complex<T>) -> Result<Wirtinger<T>> {
        self.partials(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn close(a: C, b: C, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn c(re: f64, im: f64) -> C {
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
    fn interior_evaluation() {
        assert_eq!(InteriorMap::<f64>::identity().evaluate(c(0.5, 0.0)), c(0.5, 0.0));

        let f = InteriorMap::new(vec![], vec![(2, c(0.25, 0.0))]).unwrap();
        assert!(close(f.evaluate(c(0.0, 1.0)), c(-0.25, 1.0), 1e-15));

        let f = InteriorMap::new(vec![(2, c(0.1, 0.0))], vec![(1, c(0.2, 0.0))]).unwrap();
        assert!(close(f.evaluate(c(1.0, 0.0)), c(1.3, 0.0), 1e-15));
    }

    #[test]
    fn exterior_evaluation() {
        let id = ExteriorMap::<f64>::identity();
        assert_eq!(id.evaluate(c(2.0, 1.0)).unwrap(), c(2.0, 1.0));

        let f = worked_example();
        assert!(close(f.evaluate(c(1.0, 0.0)).unwrap(), c(1.0, -7.0 / 24.0), 1e-15));

        let f = ExteriorMap::new(c(1.0, 0.0), c(0.0, 0.0), vec![(1, c(0.5, 0.0))], vec![], c(0.0, 0.0)).unwrap();
        assert!(close(f.evaluate(c(2.0, 0.0)).unwrap(), c(2.25, 0.0), 1e-15));

        assert_eq!(f.evaluate(c(0.0, 0.0)), Err(Error::Origin));
        assert_eq!(f.partials(c(0.0, 0.0)), Err(Error::Origin));
    }

    #[test]
    fn interior_partials_and_jacobian() {
        let id = InteriorMap::<f64>::identity();
        let w = id.partials(c(0.3, -0.2));
        assert_eq!((w.dz, w.dzbar), (c(1.0, 0.0), c(0.0, 0.0)));
        assert_eq!(id.jacobian(c(0.1, 0.1)).unwrap(), 1.0);
        assert_eq!(id.dilatation(c(0.1, 0.1)).unwrap(), c(0.0, 0.0));

        let f = InteriorMap::new(vec![], vec![(1, c(0.3, 0.0))]).unwrap();
        for z in [c(0.0, 0.0), c(0.5, 0.5), c(-0.9, 0.1)] {
            let w = f.partials(z);
            assert_eq!((w.dz, w.dzbar), (c(1.0, 0.0), c(0.3, 0.0)));
            assert!((f.jacobian(z).unwrap() - 0.91).abs() < 1e-15);
            assert!(close(f.dilatation(z).unwrap(), c(0.3, 0.0), 1e-15));
        }

        let degenerate = InteriorMap::new(vec![], vec![(1, c(1.0, 0.0))]).unwrap();
        assert_eq!(degenerate.jacobian(c(0.2, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn exterior_partials_at_minus_i() {
        let f = worked_example();
        let w = f.partials(c(0.0, -1.0)).unwrap();
        assert!(close(w.dz, c(0.375, 0.0), 1e-15));
        assert!(close(w.dzbar, c(0.125, -1.0 / 6.0), 1e-15));

        let z = c(0.0, -(1.0 + 1e-9));
        let mu = f.dilatation(z).unwrap().norm();
        assert!((mu - 5.0 / 9.0).abs() < 1e-7, "{mu}");
    }

    #[test]
    fn vanishing_f_z_is_reported() {
        // f_z = 1 + 2 a_2 z vanishes at z = -1/(2 a_2)
        let f = InteriorMap::new(vec![(2, c(1.0, 0.0))], vec![]).unwrap();
        assert!(matches!(
            f.dilatation(c(-0.5, 0.0)),
            Err(Error::VanishingDerivative { .. })
        ));
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            InteriorMap::new(vec![(1, c(0.1, 0.0))], vec![]),
            Err(Error::IndexTooSmall { .. })
        ));
        assert!(matches!(
            InteriorMap::new(vec![], vec![(3, c(0.1, 0.0)), (2, c(0.1, 0.0))]),
            Err(Error::IndicesNotIncreasing { .. })
        ));
        assert!(matches!(
            InteriorMap::new(vec![], vec![(2, c(0.1, 0.0)), (2, c(0.1, 0.0))]),
            Err(Error::IndicesNotIncreasing { .. })
        ));
        assert!(matches!(
            InteriorMap::new(vec![(2, c(f64::NAN, 0.0))], vec![]),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(
            ExteriorMap::new(c(1.0, 0.0), c(1.0, 0.0), vec![], vec![], c(0.0, 0.0)),
            Err(Error::NotSensePreserving { .. })
        ));
        assert!(matches!(
            ExteriorMap::new(c(1.0, 0.0), c(0.0, 0.0), vec![(0, c(1.0, 0.0))], vec![], c(0.0, 0.0)),
            Err(Error::IndexTooSmall { .. })
        ));
    }

    #[test]
    fn coefficient_access() {
        let f = InteriorMap::new(vec![(2, c(0.1, 0.0)), (5, c(0.0, 0.2))], vec![(1, c(0.3, 0.0))]).unwrap();
        assert_eq!(f.a().get(5), c(0.0, 0.2));
        assert_eq!(f.a().get(3), c(0.0, 0.0));
        assert_eq!(f.max_index(), 5);
        assert!((f.lipschitz_constant() - (0.2 + 1.0 + 0.3)).abs() < 1e-15);
    }

    #[test]
    fn works_in_single_precision() {
        let f = InteriorMap::<f32>::new(vec![(2, Complex::new(0.1, 0.0))], vec![(1, Complex::new(0.2, 0.0))]).unwrap();
        assert!((f.evaluate(Complex::new(1.0, 0.0)) - Complex::new(1.3, 0.0)).norm() < 1e-6);
    }
}
