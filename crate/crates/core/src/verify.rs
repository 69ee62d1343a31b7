//! Grid and sampling checks of dilatation, bi-Lipschitz distortion,
//! sense preservation and the strong-starlikeness angle.
//!
//! Grid points are evaluated in parallel and reduced sequentially in
//! (radius, angle) order, so every result is identical to a sequential scan.
//! Ties keep the first point in that order.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extension::PlaneExtension;
use crate::harmonic::{HarmonicMap, InteriorMap};
use crate::scalar::{cst, idx, Scalar};

pub const DEFAULT_RADII: usize = 200;
pub const DEFAULT_ANGLES: usize = 720;
pub const DEFAULT_R_MAX: f64 = 10.0;
/// Distance of the default grids from the origin and from the unit circle.
pub const DEFAULT_GAP: f64 = 1e-3;
pub const PRNG_NAME: &str = "ChaCha8Rng";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridRegion {
    Inner,
    Outer,
    Both,
}

/// Polar grid: every radius carries `angles_per_circle` equally spaced angles from 0.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec<T> {
    radii: Vec<T>,
    angles_per_circle: usize,
    region: GridRegion,
}

/// `count` logarithmically spaced values in `[lo, hi]`.
pub fn log_spaced<T: Scalar>(lo: T, hi: T, count: usize) -> Vec<T> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (l, h) = (lo.ln(), hi.ln());
            let steps = idx::<T>(count - 1);
            (0..count)
                .map(|i| {
                    if i == 0 {
                        lo
                    } else if i == count - 1 {
                        hi
                    } else {
                        (l + (h - l) * idx::<T>(i) / steps).exp()
                    }
                })
                .collect()
        }
    }
}

impl<T: Scalar> GridSpec<T> {
    pub fn new(radii: Vec<T>, angles_per_circle: usize, region: GridRegion, r_max: T) -> Result<Self> {
        if radii.is_empty() || angles_per_circle == 0 {
            return Err(Error::InvalidGrid("grid has no points".into()));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid("radii must be strictly increasing".into()));
        }
        for &r in &radii {
            if r.is_nan() || r <= T::zero() || !r.is_finite() {
                return Err(Error::InvalidGrid(format!("radius {r} is not positive")));
            }
            if r == T::one() {
                return Err(Error::InvalidGrid("the unit circle itself is excluded".into()));
            }
            if r > r_max {
                return Err(Error::InvalidGrid(format!("radius {r} exceeds R_max = {r_max}")));
            }
            let ok = match region {
                GridRegion::Inner => r < T::one(),
                GridRegion::Outer => r > T::one(),
                GridRegion::Both => true,
            };
            if !ok {
                return Err(Error::InvalidGrid(format!(
                    "radius {r} lies outside the {region:?} region"
                )));
            }
        }
        Ok(GridSpec {
            radii,
            angles_per_circle,
            region,
        })
    }

    /// Log-spaced radii in `[gap, 1 - gap]`.
    pub fn inner(radii: usize, angles: usize) -> Result<Self> {
        let gap: T = cst(DEFAULT_GAP);
        Self::new(
            log_spaced(gap, T::one() - gap, radii),
            angles,
            GridRegion::Inner,
            T::one(),
        )
    }

    /// Log-spaced radii in `[1 + gap, r_max]`.
    pub fn outer(radii: usize, angles: usize, r_max: T) -> Result<Self> {
        let gap: T = cst(DEFAULT_GAP);
        if r_max.is_nan() || r_max <= T::one() + gap {
            return Err(Error::InvalidGrid(format!("R_max = {r_max} leaves no outer radii")));
        }
        Self::new(
            log_spaced(T::one() + gap, r_max, radii),
            angles,
            GridRegion::Outer,
            r_max,
        )
    }

    /// Union of [`GridSpec::inner`] and [`GridSpec::outer`], `radii` circles on each side.
    pub fn both(radii: usize, angles: usize, r_max: T) -> Result<Self> {
        let mut rs = Self::inner(radii, angles)?.radii;
        rs.extend(Self::outer(radii, angles, r_max)?.radii);
        Self::new(rs, angles, GridRegion::Both, r_max)
    }

    /// Default grid: 200 radii per side, 720 angles, `R_max = 10`.
    pub fn default_for(region: GridRegion) -> Self {
        let r_max = cst(DEFAULT_R_MAX);
        match region {
            GridRegion::Inner => Self::inner(DEFAULT_RADII, DEFAULT_ANGLES),
            GridRegion::Outer => Self::outer(DEFAULT_RADII, DEFAULT_ANGLES, r_max),
            GridRegion::Both => Self::both(DEFAULT_RADII, DEFAULT_ANGLES, r_max),
        }
        .expect("default grid is valid")
    }

    pub fn radii(&self) -> &[T] {
        &self.radii
    }

    pub fn angles_per_circle(&self) -> usize {
        self.angles_per_circle
    }

    pub fn region(&self) -> GridRegion {
        self.region
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles_per_circle
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Restriction to the radii of one side of the unit circle.
    pub fn restrict(&self, region: GridRegion) -> Option<Self> {
        let radii: Vec<T> = self
            .radii
            .iter()
            .copied()
            .filter(|&r| match region {
                GridRegion::Inner => r < T::one(),
                GridRegion::Outer => r > T::one(),
                GridRegion::Both => true,
            })
            .collect();
        (!radii.is_empty()).then_some(GridSpec {
            radii,
            angles_per_circle: self.angles_per_circle,
            region,
        })
    }

    /// Point `k` in radius-major order.
    pub fn point(&self, k: usize) -> Complex<T> {
        let r = self.radii[k / self.angles_per_circle];
        let j = k % self.angles_per_circle;
        let theta = T::TAU() * idx::<T>(j) / idx::<T>(self.angles_per_circle);
        Complex::from_polar(r, theta)
    }

    pub fn points(&self) -> impl Iterator<Item = Complex<T>> + '_ {
        (0..self.len()).map(move |k| self.point(k))
    }
}

/// Evaluates `value` at every grid point in parallel; order of the output is grid order.
fn scan<T, V, F>(grid: &GridSpec<T>, value: F) -> Vec<(Complex<T>, Result<V>)>
where
    T: Scalar,
    V: Send,
    F: Fn(Complex<T>) -> Result<V> + Sync,
{
    (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let z = grid.point(k);
            (z, value(z))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupDilatation<T> {
    pub sup_mu: T,
    pub argmax: Complex<T>,
    /// Grid points where `f_z` vanished.
    pub skipped: usize,
}

/// Largest `|mu|` over the grid: a lower estimate of the essential supremum.
pub fn sup_dilatation<T: Scalar, M: HarmonicMap<T> + Sync>(map: &M, grid: &GridSpec<T>) -> SupDilatation<T> {
    let values = scan(grid, |z| map.dilatation(z).map(|mu| mu.norm()));
    let mut best = SupDilatation {
        sup_mu: T::zero(),
        argmax: grid.point(0),
        skipped: 0,
    };
    let mut seen = false;
    for (z, v) in values {
        match v {
            Ok(m) if !seen || m > best.sup_mu => {
                best.sup_mu = m;
                best.argmax = z;
                seen = true;
            }
            Ok(_) => {}
            Err(_) => best.skipped += 1,
        }
    }
    best
}

/// Minimum Jacobian over the grid; points outside the map's domain are skipped.
pub fn sense_preserving_scan<T: Scalar, M: HarmonicMap<T> + Sync>(map: &M, grid: &GridSpec<T>) -> T {
    scan(grid, |z| map.jacobian(z))
        .into_iter()
        .filter_map(|(_, j)| j.ok())
        .fold(T::infinity(), |acc, j| if j < acc { j } else { acc })
}

/// `max |arg((z f_z - conj(z) f_zbar) / f)|` over an inner grid.
pub fn starlike_angle<T: Scalar>(f: &InteriorMap<T>, grid: &GridSpec<T>) -> Result<T> {
    if grid.region() != GridRegion::Inner {
        return Err(Error::InvalidGrid("starlike angle needs an inner grid".into()));
    }
    let values = scan(grid, |z| {
        let value = f.evaluate(z);
        if value.norm() == T::zero() {
            return Err(Error::VanishingValue {
                re: z.re.to_f64().unwrap_or(f64::NAN),
                im: z.im.to_f64().unwrap_or(f64::NAN),
            });
        }
        let w = f.partials(z);
        Ok(((z * w.dz - z.conj() * w.dzbar) / value).arg().abs())
    });
    let mut max_angle = T::zero();
    for (_, v) in values {
        let a = v?;
        if a > max_angle {
            max_angle = a;
        }
    }
    Ok(max_angle)
}

/// Annulus `r_min <= |z| <= r_max` sampled log-uniformly in radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleRegion<T> {
    pub r_min: T,
    pub r_max: T,
}

impl<T: Scalar> SampleRegion<T> {
    pub fn new(r_min: T, r_max: T) -> Result<Self> {
        if !(r_min > T::zero() && r_min < r_max && r_max.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "bad sampling annulus [{r_min}, {r_max}]"
            )));
        }
        Ok(SampleRegion { r_min, r_max })
    }

    /// `[1e-3, 1 - 1e-3]`
    pub fn inner() -> Self {
        let gap: T = cst(DEFAULT_GAP);
        SampleRegion {
            r_min: gap,
            r_max: T::one() - gap,
        }
    }

    /// `[1 + 1e-3, r_max]`
    pub fn outer(r_max: T) -> Self {
        SampleRegion {
            r_min: T::one() + cst(DEFAULT_GAP),
            r_max,
        }
    }

    /// `[1e-3, r_max]`, straddling the unit circle.
    pub fn both(r_max: T) -> Self {
        SampleRegion {
            r_min: cst(DEFAULT_GAP),
            r_max,
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> Complex<T> {
        let (l, h) = (self.r_min.ln(), self.r_max.ln());
        let u: T = cst(rng.gen::<f64>());
        let v: T = cst(rng.gen::<f64>());
        Complex::from_polar((l + (h - l) * u).exp(), T::TAU() * v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiLipschitz<T> {
    pub min_ratio: T,
    pub max_ratio: T,
    pub pair_count: usize,
}

/// Distortion ratios `|F(z1) - F(z2)| / |z1 - z2|` over seeded random pairs.
pub fn bilipschitz_sample<T: Scalar, M: HarmonicMap<T>>(
    map: &M,
    region: SampleRegion<T>,
    pair_count: usize,
    seed: u64,
) -> Result<BiLipschitz<T>> {
    if pair_count == 0 {
        return Err(Error::InvalidArgument("pair_count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = BiLipschitz {
        min_ratio: T::infinity(),
        max_ratio: T::neg_infinity(),
        pair_count: 0,
    };
    while out.pair_count < pair_count {
        let z1 = region.draw(&mut rng);
        let z2 = region.draw(&mut rng);
        let dz = (z1 - z2).norm();
        if dz == T::zero() {
            continue;
        }
        let ratio = (map.eval(z1)? - map.eval(z2)?).norm() / dz;
        out.min_ratio = out.min_ratio.min(ratio);
        out.max_ratio = out.max_ratio.max(ratio);
        out.pair_count += 1;
    }
    Ok(out)
}

/// Everything the grid and sampling checks measure for one extension.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport<T> {
    pub sup_mu: T,
    pub argmax_point: Complex<T>,
    pub sup_mu_inner: Option<T>,
    pub sup_mu_outer: Option<T>,
    pub skipped_points: usize,
    pub asymptotic_mu: T,
    pub bilipschitz: BiLipschitz<T>,
    pub min_jacobian: T,
    pub max_starlike_angle: Option<T>,
    pub grid: GridSpec<T>,
    pub seed: u64,
}

/// Runs every check on `ext`; the starlike angle is measured when the source
/// is a disk map and `with_starlike_angle` is set.
pub fn verify_extension<T: Scalar>(
    ext: &PlaneExtension<T>,
    grid: &GridSpec<T>,
    pair_count: usize,
    seed: u64,
    with_starlike_angle: bool,
) -> Result<VerificationReport<T>> {
    let all = sup_dilatation(ext, grid);
    let side = |region| grid.restrict(region).map(|g| sup_dilatation(ext, &g).sup_mu);
    let r_max = *grid.radii().last().expect("grid is nonempty");
    let sample_region = if r_max > T::one() {
        SampleRegion::both(r_max)
    } else {
        SampleRegion::inner()
    };
    let max_starlike_angle = match (ext.source(), with_starlike_angle) {
        (crate::extension::Source::Interior(f), true) => match grid.restrict(GridRegion::Inner) {
            Some(g) => Some(starlike_angle(f, &g)?),
            None => None,
        },
        _ => None,
    };
    Ok(VerificationReport {
        sup_mu: all.sup_mu,
        argmax_point: all.argmax,
        sup_mu_inner: side(GridRegion::Inner),
        sup_mu_outer: side(GridRegion::Outer),
        skipped_points: all.skipped,
        asymptotic_mu: ext.asymptotic_dilatation(),
        bilipschitz: bilipschitz_sample(ext, sample_region, pair_count, seed)?,
        min_jacobian: sense_preserving_scan(ext, grid),
        max_starlike_angle,
        grid: grid.clone(),
        seed,
    })
}
