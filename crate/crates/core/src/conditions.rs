//! Coefficient functionals and class-membership predicates.
//!
//! A [`WeightProfile`] fixes the weight sequences `phi_n` (n >= 2) and `psi_n`
//! (n >= 1). A disk map belongs to the profile's class when
//! `psi_1|b_1| + sum (phi_n|a_n| + psi_n|b_n|) <= 1`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::harmonic::{ExteriorMap, InteriorMap};
use crate::scalar::{idx, Scalar};

fn check_order<T: Scalar>(order: T) -> Result<()> {
    if order > T::zero() && order < T::one() {
        Ok(())
    } else {
        Err(Error::InvalidOrder(order.to_f64().unwrap_or(f64::NAN)))
    }
}

/// `phi_n(order) = (n - 1 + sqrt(n^2 - 2n cos(pi order) + 1)) / (2 sin(pi order / 2))`
pub fn phi_alpha<T: Scalar>(n: usize, order: T) -> Result<T> {
    check_order(order)?;
    if n < 2 {
        return Err(Error::InvalidWeightIndex { index: n, min: 2 });
    }
    Ok(phi_unchecked(n, order))
}

/// `psi_n(order) = (n + 1 + sqrt(n^2 + 2n cos(pi order) + 1)) / (2 sin(pi order / 2))`
pub fn psi_alpha<T: Scalar>(n: usize, order: T) -> Result<T> {
    check_order(order)?;
    if n < 1 {
        return Err(Error::InvalidWeightIndex { index: n, min: 1 });
    }
    Ok(psi_unchecked(n, order))
}

fn phi_unchecked<T: Scalar>(n: usize, order: T) -> T {
    let nf = idx::<T>(n);
    let one = T::one();
    let two = one + one;
    let angle = T::PI() * order;
    let root = (nf * nf - two * nf * angle.cos() + one).sqrt();
    (nf - one + root) / (two * (angle / two).sin())
}

fn psi_unchecked<T: Scalar>(n: usize, order: T) -> T {
    let nf = idx::<T>(n);
    let one = T::one();
    let two = one + one;
    let angle = T::PI() * order;
    let root = (nf * nf + two * nf * angle.cos() + one).sqrt();
    (nf + one + root) / (two * (angle / two).sin())
}

type WeightFn<T> = Arc<dyn Fn(usize) -> T + Send + Sync>;

#[derive(Clone)]
enum Weights<T> {
    /// `{n}, {n}`
    Starlike,
    /// `{n^2}, {n^2}`
    Convex,
    /// `{phi_n(order)}, {psi_n(order)}`
    StronglyStarlike(T),
    Custom {
        phi: WeightFn<T>,
        psi: WeightFn<T>,
    },
}

/// Pair of weight sequences defining a coefficient class.
#[derive(Clone)]
pub struct WeightProfile<T> {
    name: String,
    weights: Weights<T>,
}

impl<T: Scalar> fmt::Debug for WeightProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightProfile").field("name", &self.name).finish()
    }
}

impl<T: Scalar> WeightProfile<T> {
    /// Weights `{n}, {n}`: the fully starlike sufficient condition.
    pub fn starlike() -> Self {
        WeightProfile {
            name: "starlike".into(),
            weights: Weights::Starlike,
        }
    }

    /// Weights `{n^2}, {n^2}`: the fully convex sufficient condition.
    pub fn convex() -> Self {
        WeightProfile {
            name: "convex".into(),
            weights: Weights::Convex,
        }
    }

    /// Weights `{phi_n(order)}, {psi_n(order)}` for strong starlikeness of the given order.
    pub fn strongly_starlike(order: T) -> Result<Self> {
        check_order(order)?;
        Ok(WeightProfile {
            name: "strongly-starlike".into(),
            weights: Weights::StronglyStarlike(order),
        })
    }

    /// Arbitrary weights; positivity is checked whenever a weight is used.
    pub fn custom(
        name: impl Into<String>,
        phi: impl Fn(usize) -> T + Send + Sync + 'static,
        psi: impl Fn(usize) -> T + Send + Sync + 'static,
    ) -> Self {
        WeightProfile {
            name: name.into(),
            weights: Weights::Custom {
                phi: Arc::new(phi),
                psi: Arc::new(psi),
            },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The strong-starlikeness order, when this is that profile.
    pub fn order(&self) -> Option<T> {
        match self.weights {
            Weights::StronglyStarlike(order) => Some(order),
            _ => None,
        }
    }

    /// Weight of `|a_n|`, `n >= 2`.
    pub fn phi(&self, n: usize) -> Result<T> {
        if n < 2 {
            return Err(Error::InvalidWeightIndex { index: n, min: 2 });
        }
        let w = match &self.weights {
            Weights::Starlike => idx(n),
            Weights::Convex => idx::<T>(n) * idx::<T>(n),
            Weights::StronglyStarlike(order) => phi_unchecked(n, *order),
            Weights::Custom { phi, .. } => phi(n),
        };
        self.positive(n, w)
    }

    /// Weight of `|b_n|`, `n >= 1`.
    pub fn psi(&self, n: usize) -> Result<T> {
        if n < 1 {
            return Err(Error::InvalidWeightIndex { index: n, min: 1 });
        }
        let w = match &self.weights {
            Weights::Starlike => idx(n),
            Weights::Convex => idx::<T>(n) * idx::<T>(n),
            Weights::StronglyStarlike(order) => psi_unchecked(n, *order),
            Weights::Custom { psi, .. } => psi(n),
        };
        self.positive(n, w)
    }

    fn positive(&self, n: usize, w: T) -> Result<T> {
        if w > T::zero() && w.is_finite() {
            Ok(w)
        } else {
            Err(Error::NonPositiveWeight {
                profile: self.name.clone(),
                index: n,
            })
        }
    }
}

/// `psi_1|b_1| + sum_{n>=2} (phi_n|a_n| + psi_n|b_n|)`
pub fn weighted_sum<T: Scalar>(f: &InteriorMap<T>, profile: &WeightProfile<T>) -> Result<T> {
    let mut sum = T::zero();
    for (n, a) in f.a().iter() {
        sum = sum + profile.phi(n)? * a.norm();
    }
    for (n, b) in f.b().iter() {
        sum = sum + profile.psi(n)? * b.norm();
    }
    Ok(sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum B1Branch {
    B1Zero,
    B1Nonzero,
}

/// Which ratio condition produced a dilatation bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundRoute {
    /// `b_1 != 0`: ratios `phi_n/n` (n >= 2) and `psi_n/n` (n >= 1).
    Cond1,
    /// `b_1 = 0`: the `psi_1` ratio is vacuous, only n >= 2 is scanned.
    Cond2,
}

/// Bound on the extension's dilatation derived from the profile's ratios
/// over the indices the map actually uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DilatationBound<T> {
    /// `max n/phi_n` over the support: the bound outside the disk.
    pub k1: T,
    /// `max n/psi_n` over the support: the bound inside the disk.
    pub k2: T,
    pub value: T,
    pub route: BoundRoute,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassReport<T> {
    pub profile: String,
    pub weighted_sum: T,
    pub member: bool,
    pub b1_branch: B1Branch,
    /// Smallest `k0` with `weighted_sum <= k0`, present for members.
    pub minimal_k: Option<T>,
    /// `None` when the ratio scan does not give a constant below 1.
    pub dilatation_bound: Option<DilatationBound<T>>,
}

pub fn check_membership<T: Scalar>(f: &InteriorMap<T>, profile: &WeightProfile<T>) -> Result<ClassReport<T>> {
    let sum = weighted_sum(f, profile)?;
    let member = sum <= T::one() + T::class_tolerance();
    let b1_branch = if f.b1().is_zero() {
        B1Branch::B1Zero
    } else {
        B1Branch::B1Nonzero
    };
    Ok(ClassReport {
        profile: profile.name().to_owned(),
        weighted_sum: sum,
        member,
        b1_branch,
        minimal_k: member.then_some(sum),
        dilatation_bound: if member {
            ratio_bound(profile, f.max_index(), b1_branch)?
        } else {
            None
        },
    })
}

fn ratio_bound<T: Scalar>(
    profile: &WeightProfile<T>,
    max_index: usize,
    branch: B1Branch,
) -> Result<Option<DilatationBound<T>>> {
    let top = max_index.max(2);
    let mut k1 = T::zero();
    for n in 2..=top {
        k1 = k1.max(idx::<T>(n) / profile.phi(n)?);
    }
    let first_psi = match branch {
        B1Branch::B1Zero => 2,
        B1Branch::B1Nonzero => 1,
    };
    let mut k2 = T::zero();
    for n in first_psi..=top {
        k2 = k2.max(idx::<T>(n) / profile.psi(n)?);
    }
    let value = k1.max(k2);
    if value >= T::one() {
        return Ok(None);
    }
    Ok(Some(DilatationBound {
        k1,
        k2,
        value,
        route: match branch {
            B1Branch::B1Zero => BoundRoute::Cond2,
            B1Branch::B1Nonzero => BoundRoute::Cond1,
        },
    }))
}

/// Per-sequence outcome of the ratio condition `phi_n/n >= 1/k1`, `psi_n/n >= 1/k2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cond1Detail {
    /// `phi_n/n >= 1/k1` for `2 <= n <= max_index`.
    pub phi_holds: bool,
    /// `psi_n/n >= 1/k2` for `2 <= n <= max_index`.
    pub psi_holds_from_2: bool,
    /// `psi_1 >= 1/k2`.
    pub psi1_holds: bool,
    /// For the strongly starlike profile the monotonicity of both ratios
    /// settles the condition for every `n`, not just the scanned range.
    pub holds_for_all_n: Option<bool>,
}

impl Cond1Detail {
    pub fn holds(&self) -> bool {
        self.phi_holds && self.psi_holds_from_2 && self.psi1_holds
    }
}

pub fn cond1_detail<T: Scalar>(profile: &WeightProfile<T>, k1: T, k2: T, max_index: usize) -> Result<Cond1Detail> {
    for (name, k) in [("k1", k1), ("k2", k2)] {
        if !(k > T::zero() && k < T::one()) {
            return Err(Error::ConstantOutOfRange {
                name,
                value: k.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let tol = T::class_tolerance();
    // ratio >= 1/k  <=>  k * ratio >= 1
    let meets = |ratio: T, k: T| k * ratio >= T::one() - tol;

    let mut phi_holds = true;
    let mut psi_holds_from_2 = true;
    for n in 2..=max_index {
        let nf = idx::<T>(n);
        phi_holds &= meets(profile.phi(n)? / nf, k1);
        psi_holds_from_2 &= meets(profile.psi(n)? / nf, k2);
    }
    let psi1_holds = meets(profile.psi(1)?, k2);

    let holds_for_all_n = profile.order().map(|order| {
        // phi_n/n increases from phi_2/2; psi_n/n decreases to 1/sin(pi order/2).
        let two = T::one() + T::one();
        let s = (T::PI() * order / two).sin();
        meets(phi_unchecked(2, order) / two, k1) && k2 >= s - tol
    });

    Ok(Cond1Detail {
        phi_holds,
        psi_holds_from_2,
        psi1_holds,
        holds_for_all_n,
    })
}

/// `true` iff `phi_n/n >= 1/k1` (2 <= n <= max_index) and `psi_n/n >= 1/k2` (1 <= n <= max_index).
pub fn check_cond1<T: Scalar>(profile: &WeightProfile<T>, k1: T, k2: T, max_index: usize) -> Result<bool> {
    Ok(cond1_detail(profile, k1, k2, max_index)?.holds())
}

/// Minimal `k` of the exterior-class condition
/// `|beta| + |A| + sum n(|a_n| + |b_n|) <= k |alpha|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaCondition<T> {
    pub minimal_k: T,
    /// `Some(minimal_k)` when `minimal_k < 1`.
    pub member_of: Option<T>,
}

pub fn check_sigma_condition<T: Scalar>(f: &ExteriorMap<T>) -> Result<SigmaCondition<T>> {
    let alpha = f.alpha().norm();
    let beta = f.beta().norm();
    if beta >= alpha {
        return Err(Error::NotSensePreserving {
            alpha: alpha.to_f64().unwrap_or(f64::NAN),
            beta: beta.to_f64().unwrap_or(f64::NAN),
        });
    }
    let numerator = beta + f.log_coeff().norm() + f.a().index_weighted_abs_sum() + f.b().index_weighted_abs_sum();
    let minimal_k = numerator / alpha;
    Ok(SigmaCondition {
        minimal_k,
        member_of: (minimal_k < T::one()).then_some(minimal_k),
    })
}

/// Monotonicity verdicts for `phi_n/n` (increasing) and `psi_n/n` (decreasing).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Monotonicity {
    pub phi_increasing: bool,
    pub psi_decreasing: bool,
}

/// Checks `phi_{n+1}/(n+1) > phi_n/n` for `2 <= n < max_n` and
/// `psi_{n+1}/(n+1) < psi_n/n` for `1 <= n < max_n`.
pub fn monotonicity_scan<T: Scalar>(order: T, max_n: usize) -> Result<Monotonicity> {
    check_order(order)?;
    if max_n < 3 {
        return Err(Error::InvalidArgument(format!(
            "scan length must be at least 3, got {max_n}"
        )));
    }
    let phi_ratio = |n: usize| phi_unchecked(n, order) / idx::<T>(n);
    let psi_ratio = |n: usize| psi_unchecked(n, order) / idx::<T>(n);
    let phi_increasing = (2..max_n).all(|n| phi_ratio(n + 1) > phi_ratio(n));
    let psi_decreasing = (1..max_n).all(|n| psi_ratio(n + 1) < psi_ratio(n));
    Ok(Monotonicity {
        phi_increasing,
        psi_decreasing,
    })
}

/// Convenience: `f_n = z + b conj(z)^n` with `|b| = 1/psi_n(order)` at the given phase.
pub fn extremal_strongly_starlike<T: Scalar>(n: usize, order: T, phase: T) -> Result<InteriorMap<T>> {
    let b = T::one() / psi_alpha(n, order)?;
    InteriorMap::new(vec![], vec![(n, Complex::from_polar(b, phase))])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn phi_closed_form_values() {
        let v = phi_alpha(2, 0.5).unwrap();
        assert!((v - (1.0 + 5f64.sqrt()) / 2f64.sqrt()).abs() < 1e-14);
        assert!((v - 2.288246).abs() < 1e-6);

        let large = phi_alpha(10_000, 0.5).unwrap() / 10_000.0;
        assert!((large - 2f64.sqrt()).abs() < 1e-3);

        let near_one: f64 = phi_alpha(2, 0.999).unwrap();
        assert!((near_one - 2.0).abs() < 1e-2, "{near_one}");
    }

    #[test]
    fn psi_closed_form_values() {
        let p1 = psi_alpha(1, 0.5).unwrap();
        assert!((p1 - (1.0 + 2f64.sqrt())).abs() < 1e-14);
        let s = (PI / 4.0).sin();
        assert!((1.0 / p1 - s / (1.0 + (PI / 4.0).cos())).abs() < 1e-15);
        assert!((1.0 / p1 - 0.414214).abs() < 1e-6);

        let p2 = psi_alpha(2, 0.5).unwrap();
        assert!((p2 - (3.0 + 5f64.sqrt()) / 2f64.sqrt()).abs() < 1e-14);
        assert!((p2 - 3.702459).abs() < 1e-6);
        assert!(p2 > 2.0 * 2f64.sqrt());
    }

    #[test]
    fn weight_argument_errors() {
        assert_eq!(phi_alpha(2, 0.0), Err(Error::InvalidOrder(0.0)));
        assert_eq!(phi_alpha(2, 1.0), Err(Error::InvalidOrder(1.0)));
        assert!(matches!(
            phi_alpha(1, 0.5),
            Err(Error::InvalidWeightIndex { index: 1, min: 2 })
        ));
        assert!(matches!(
            psi_alpha(0, 0.5),
            Err(Error::InvalidWeightIndex { index: 0, min: 1 })
        ));
        assert!(WeightProfile::strongly_starlike(1.5).is_err());
    }

    #[test]
    fn weighted_sum_examples() {
        let id = InteriorMap::<f64>::identity();
        assert_eq!(weighted_sum(&id, &WeightProfile::convex()).unwrap(), 0.0);

        let profile = WeightProfile::strongly_starlike(0.5).unwrap();
        let f = extremal_strongly_starlike::<f64>(2, 0.5, 0.0).unwrap();
        assert!((weighted_sum::<f64>(&f, &profile).unwrap() - 1.0).abs() < 1e-12);

        let f = InteriorMap::new(vec![(2, c(0.25, 0.0))], vec![]).unwrap();
        assert!((weighted_sum(&f, &WeightProfile::starlike()).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn membership_examples() {
        let id = InteriorMap::<f64>::identity();
        let r = check_membership(&id, &WeightProfile::convex()).unwrap();
        assert!(r.member);
        assert_eq!(r.weighted_sum, 0.0);
        assert_eq!(r.b1_branch, B1Branch::B1Zero);

        let f = extremal_strongly_starlike::<f64>(2, 0.5, 0.0).unwrap();
        assert!((f.b().get(2).re - 0.270092).abs() < 2e-6);
        let r = check_membership(&f, &WeightProfile::strongly_starlike(0.5).unwrap()).unwrap();
        assert!(r.member);
        assert_eq!(r.minimal_k, Some(r.weighted_sum));

        let f = InteriorMap::new(vec![(2, c(0.6, 0.0))], vec![]).unwrap();
        let r = check_membership(&f, &WeightProfile::starlike()).unwrap();
        assert!((r.weighted_sum - 1.2).abs() < 1e-15);
        assert!(!r.member);
        assert_eq!(r.minimal_k, None);
    }

    #[test]
    fn convex_profile_bound_depends_on_b1_branch() {
        let f = InteriorMap::new(vec![(2, c(0.1, 0.0))], vec![(3, c(0.05, 0.0))]).unwrap();
        let r = check_membership(&f, &WeightProfile::convex()).unwrap();
        let bound = r.dilatation_bound.unwrap();
        assert_eq!(bound.route, BoundRoute::Cond2);
        assert!((bound.value - 0.5).abs() < 1e-15);

        // psi_1 = 1 leaves no bound below 1 once b_1 is present
        let g = InteriorMap::new(vec![(2, c(0.1, 0.0))], vec![(1, c(0.5, 0.0))]).unwrap();
        let r = check_membership(&g, &WeightProfile::convex()).unwrap();
        assert!(r.member);
        assert_eq!(r.b1_branch, B1Branch::B1Nonzero);
        assert_eq!(r.dilatation_bound, None);
    }

    #[test]
    fn cond1_examples() {
        let order = 0.5;
        let ss = WeightProfile::strongly_starlike(order).unwrap();
        let s = (PI * order / 2.0).sin();
        let k1 = 2.0 / phi_alpha(2, order).unwrap();
        assert!(check_cond1(&ss, k1, s, 100).unwrap());
        let d = cond1_detail(&ss, k1, s, 100).unwrap();
        assert_eq!(d.holds_for_all_n, Some(true));

        // phi_n/n stays below 1/sin and psi_n/n drops below psi_1, so these constants fail
        let d = cond1_detail(&ss, s, 1.0 / psi_alpha(1, order).unwrap(), 100).unwrap();
        assert!(!d.phi_holds);
        assert!(!d.psi_holds_from_2);
        assert!(d.psi1_holds);
        assert_eq!(d.holds_for_all_n, Some(false));

        let star = WeightProfile::<f64>::starlike();
        assert!(check_cond1(&star, 1.0, 1.0, 10).is_err());
        assert!(!check_cond1(&star, 0.99, 0.99, 10).unwrap());

        let convex = WeightProfile::<f64>::convex();
        let d = cond1_detail(&convex, 0.5, 0.5, 100).unwrap();
        assert!(!d.holds());
        assert!(d.phi_holds && d.psi_holds_from_2 && !d.psi1_holds);
    }

    #[test]
    fn sigma_condition_examples() {
        let r = check_sigma_condition(&ExteriorMap::<f64>::identity()).unwrap();
        assert_eq!(r.minimal_k, 0.0);

        let f = ExteriorMap::new(
            c(1.0, 0.0),
            c(0.0, -1.0 / 6.0),
            vec![(4, c(0.0, -1.0 / 8.0))],
            vec![],
            c(0.0, 0.25),
        )
        .unwrap();
        let r = check_sigma_condition(&f).unwrap();
        assert!((r.minimal_k - 11.0 / 12.0).abs() < 1e-12);
        assert_eq!(r.member_of, Some(r.minimal_k));

        let f = ExteriorMap::new(c(1.0, 0.0), c(0.0, 0.0), vec![(1, c(0.5, 0.0))], vec![], c(0.0, 0.0)).unwrap();
        assert!((check_sigma_condition(&f).unwrap().minimal_k - 0.5).abs() < 1e-15);

        let big = ExteriorMap::new(c(1.0, 0.0), c(0.0, 0.0), vec![(2, c(0.6, 0.0))], vec![], c(0.0, 0.0)).unwrap();
        assert_eq!(check_sigma_condition(&big).unwrap().member_of, None);
    }

    #[test]
    fn monotonicity_examples() {
        for (order, n) in [(0.5, 10_000), (0.01, 1_000), (0.99, 1_000)] {
            let m = monotonicity_scan(order, n).unwrap();
            assert!(m.phi_increasing && m.psi_decreasing, "order {order}");
        }
        assert!(monotonicity_scan(0.5, 2).is_err());
    }

    #[test]
    fn custom_profile_rejects_non_positive_weights() {
        let p = WeightProfile::custom("bad", |_| 0.0, |n| n as f64);
        let f = InteriorMap::new(vec![(2, c(0.1, 0.0))], vec![]).unwrap();
        assert!(matches!(
            weighted_sum(&f, &p),
            Err(Error::NonPositiveWeight { index: 2, .. })
        ));
    }
}
