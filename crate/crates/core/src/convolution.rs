//! Harmonic (coefficient-wise) convolution of exterior maps.

use crate::conditions::check_sigma_condition;
use crate::error::{Error, Result};
use crate::harmonic::ExteriorMap;
use crate::scalar::{idx, Scalar};

/// `alpha1 alpha2 z + beta1 beta2 conj(z) + sum a_n A_n z^-n + conj(sum b_n B_n z^-n) + cC ln|z|`
pub fn convolve<T: Scalar>(f1: &ExteriorMap<T>, f2: &ExteriorMap<T>) -> Result<ExteriorMap<T>> {
    ExteriorMap::from_parts(
        f1.alpha() * f2.alpha(),
        f1.beta() * f2.beta(),
        f1.a().hadamard(f2.a()),
        f1.b().hadamard(f2.b()),
        f1.log_coeff() * f2.log_coeff(),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvolutionReport<T> {
    pub product: ExteriorMap<T>,
    pub k1: T,
    pub k2: T,
    /// `[|beta1 beta2| + sum n(|a_n A_n| + |b_n B_n|) + |cC|] / |alpha1 alpha2|`
    pub m: T,
    /// `sqrt(k1 k2)`
    pub bound: T,
    pub within_bound: bool,
}

fn sigma_k<T: Scalar>(f: &ExteriorMap<T>, which: &str) -> Result<T> {
    let k = check_sigma_condition(f)?.minimal_k;
    if k >= T::one() {
        return Err(Error::HypothesisUnmet(format!(
            "{which} has minimal k = {} >= 1",
            k.to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(k)
}

fn m_value<T: Scalar>(product: &ExteriorMap<T>) -> T {
    (product.beta().norm()
        + product.a().index_weighted_abs_sum()
        + product.b().index_weighted_abs_sum()
        + product.log_coeff().norm())
        / product.alpha().norm()
}

pub fn closure_check<T: Scalar>(f1: &ExteriorMap<T>, f2: &ExteriorMap<T>) -> Result<ConvolutionReport<T>> {
    let k1 = sigma_k(f1, "first operand")?;
    let k2 = sigma_k(f2, "second operand")?;
    let product = convolve(f1, f2)?;
    let m = m_value(&product);
    let bound = (k1 * k2).sqrt();
    Ok(ConvolutionReport {
        product,
        k1,
        k2,
        m,
        bound,
        within_bound: m <= bound + T::class_tolerance(),
    })
}

/// Intermediate values of the Cauchy–Schwarz estimate on `M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchySchwarzTrace<T> {
    /// `sum x_m X_m`, which dominates `M`.
    pub inner_product: T,
    /// `(sum x_m^2)^(1/2)`
    pub norm1: T,
    /// `(sum X_m^2)^(1/2)`
    pub norm2: T,
    /// `norm1 * norm2`
    pub cauchy_schwarz: T,
    /// `sqrt(k1 * k2)`, dominating `cauchy_schwarz`.
    pub sqrt_k1k2: T,
}

/// Splits `M` into the sequences `x_m`, `X_m` and reports each stage of the estimate.
pub fn cauchy_schwarz_trace<T: Scalar>(f1: &ExteriorMap<T>, f2: &ExteriorMap<T>) -> Result<CauchySchwarzTrace<T>> {
    let k1 = sigma_k(f1, "first operand")?;
    let k2 = sigma_k(f2, "second operand")?;
    let top = [f1.a(), f1.b(), f2.a(), f2.b()]
        .iter()
        .filter_map(|c| c.max_index())
        .max()
        .unwrap_or(0);

    // m = 0 carries |beta| + |log coeff|; m = 2n-1 and m = 2n carry sqrt(n)|a_n|, sqrt(n)|b_n|
    let seq = |f: &ExteriorMap<T>| {
        let alpha = f.alpha().norm();
        let mut xs = vec![(f.beta().norm() + f.log_coeff().norm()) / alpha];
        for n in 1..=top {
            let rn = idx::<T>(n).sqrt();
            xs.push(rn * f.a().get(n).norm() / alpha);
            xs.push(rn * f.b().get(n).norm() / alpha);
        }
        xs
    };
    let x = seq(f1);
    let big_x = seq(f2);
    let inner_product = x.iter().zip(&big_x).map(|(&p, &q)| p * q).sum();
    let norm1 = x.iter().map(|&p| p * p).sum::<T>().sqrt();
    let norm2 = big_x.iter().map(|&q| q * q).sum::<T>().sqrt();
    Ok(CauchySchwarzTrace {
        inner_product,
        norm1,
        norm2,
        cauchy_schwarz: norm1 * norm2,
        sqrt_k1k2: (k1 * k2).sqrt(),
    })
}
