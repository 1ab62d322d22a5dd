//! Eigenvalue and singular-value spectra, and matrix energy.

use std::cmp::Ordering;

use crate::eigen::eigenvalues_unsorted;
use crate::error::{Error, Result};
use crate::matrix::RealMatrix;

/// Gram eigenvalues in `[-GRAM_CLAMP·scale, 0)` are treated as roundoff and clamped to zero.
pub const GRAM_CLAMP: f64 = 1e-10;

/// Signed eigenvalues of a symmetric matrix, descending.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSpectrum {
    values: Vec<f64>,
}

/// Singular values, descending and nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum {
    values: Vec<f64>,
}

fn sort_descending(values: &mut [f64]) {
    // stable: ties keep computation order
    values.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
}

impl EigenSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Moduli of the eigenvalues in descending order, i.e. the singular values.
    pub fn to_singular(&self) -> SingularSpectrum {
        let mut values: Vec<f64> = self.values.iter().map(|x| x.abs()).collect();
        sort_descending(&mut values);
        SingularSpectrum { values }
    }
}

impl SingularSpectrum {
    /// Wrap precomputed values; they must be nonnegative and descending.
    pub fn from_descending(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|x| !(*x >= 0.0)) || values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(
                "singular values must be nonnegative and descending".into(),
            ));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// σ₁.
    pub fn largest(&self) -> f64 {
        self.values[0]
    }

    /// `σ_i` with 1-based `i`, or 0 past the end.
    pub fn sigma(&self, i: usize) -> f64 {
        assert!(i >= 1, "singular values are indexed from 1");
        self.values.get(i - 1).copied().unwrap_or(0.0)
    }

    /// Sum of all singular values.
    pub fn energy(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.values.iter().map(|x| x * x).sum()
    }
}

/// All eigenvalues of a symmetric matrix in descending order.
pub fn symmetric_eigenvalues(m: &RealMatrix) -> Result<EigenSpectrum> {
    let mut values = eigenvalues_unsorted(m)?;
    sort_descending(&mut values);
    Ok(EigenSpectrum { values })
}

/// The `min(m, n)` singular values of `a`.
///
/// Symmetric input goes through its eigenvalues directly; anything else
/// through the eigenvalues of the Gram matrix of the smaller dimension.
pub fn singular_values(a: &RealMatrix) -> Result<SingularSpectrum> {
    a.check_finite()?;
    if a.is_symmetric() {
        return Ok(symmetric_eigenvalues(a)?.to_singular());
    }
    singular_values_via_gram(a)
}

/// Singular values as square roots of the eigenvalues of `AAᵀ` (or `AᵀA`).
pub fn singular_values_via_gram(a: &RealMatrix) -> Result<SingularSpectrum> {
    a.check_finite()?;
    let gram = a.small_gram();
    let mut lambda = symmetric_eigenvalues(&gram)?.values;
    let scale = lambda.first().copied().unwrap_or(0.0).max(0.0);
    let floor = -GRAM_CLAMP * scale;
    for x in lambda.iter_mut() {
        if *x < 0.0 {
            if *x < floor {
                return Err(Error::Numeric(format!(
                    "Gram eigenvalue {x:e} is negative beyond roundoff (scale {scale:e})"
                )));
            }
            *x = 0.0;
        }
        *x = x.sqrt();
    }
    Ok(SingularSpectrum { values: lambda })
}

/// Matrix energy: the sum of the singular values.
pub fn energy(a: &RealMatrix) -> Result<f64> {
    Ok(singular_values(a)?.energy())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn cycle(n: usize) -> RealMatrix {
        let mut m = RealMatrix::zeros(n, n).unwrap();
        for i in 0..n {
            m.set(i, (i + 1) % n, 1.0);
            m.set((i + 1) % n, i, 1.0);
        }
        m
    }

    #[test]
    fn k2_eigenvalues() {
        let k2 = RealMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let ev = symmetric_eigenvalues(&k2).unwrap();
        assert!(close(ev.values()[0], 1.0, 1e-15));
        assert!(close(ev.values()[1], -1.0, 1e-15));
        let sv = singular_values(&k2).unwrap();
        assert!(close(sv.sigma(1), 1.0, 1e-15) && close(sv.sigma(2), 1.0, 1e-15));
        assert!(close(energy(&k2).unwrap(), 2.0, 1e-14));
    }

    #[test]
    fn zero_matrix() {
        let z = RealMatrix::zeros(3, 3).unwrap();
        assert_eq!(symmetric_eigenvalues(&z).unwrap().values(), &[0.0, 0.0, 0.0]);
        assert_eq!(energy(&z).unwrap(), 0.0);
    }

    #[test]
    fn c5_spectrum_matches_closed_form() {
        // 2cos(2πk/5), k = 0..4
        let mut want: Vec<f64> = (0..5)
            .map(|k| 2.0 * (2.0 * std::f64::consts::PI * k as f64 / 5.0).cos())
            .collect();
        want.sort_by(|a, b| b.total_cmp(a));
        let ev = symmetric_eigenvalues(&cycle(5)).unwrap();
        for (a, b) in ev.values().iter().zip(&want) {
            assert!(close(*a, *b, 1e-8), "{a} vs {b}");
        }
        assert!(close(ev.values()[1], 0.61803, 1e-5));
        assert!(close(ev.values()[4], -1.61803, 1e-5));
        assert!(close(energy(&cycle(5)).unwrap(), 2.0 + 2.0 * 5f64.sqrt(), 1e-12));
    }

    #[test]
    fn single_row_is_euclidean_length() {
        let a = RealMatrix::from_rows(&[vec![3.0, 0.0, 4.0]]).unwrap();
        let sv = singular_values(&a).unwrap();
        assert_eq!(sv.len(), 1);
        assert!(close(sv.largest(), 5.0, 1e-14));
    }

    #[test]
    fn errors() {
        let rect = RealMatrix::ones(2, 3).unwrap();
        assert!(matches!(
            symmetric_eigenvalues(&rect),
            Err(Error::Dimension(_))
        ));
        let asym = RealMatrix::from_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap();
        assert!(matches!(
            symmetric_eigenvalues(&asym),
            Err(Error::NotSymmetric { .. })
        ));
        let bad = RealMatrix::new(1, 2, vec![f64::INFINITY, 0.0]).unwrap();
        assert!(matches!(singular_values(&bad), Err(Error::NonFinite { .. })));
        assert!(matches!(energy(&bad), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn rank_deficient_gram_clamps() {
        // rank one: the Gram matrix has a zero eigenvalue that may come out slightly negative
        let a = RealMatrix::from_rows(&[vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0]]).unwrap();
        let sv = singular_values(&a).unwrap();
        assert!(close(sv.sigma(1), 70f64.sqrt(), 1e-12));
        assert!(sv.sigma(2) >= 0.0 && sv.sigma(2) < 1e-6);
    }

    #[test]
    fn from_descending_validates() {
        assert!(SingularSpectrum::from_descending(vec![2.0, 1.0, 0.0]).is_ok());
        assert!(SingularSpectrum::from_descending(vec![1.0, 2.0]).is_err());
        assert!(SingularSpectrum::from_descending(vec![1.0, -0.5]).is_err());
    }
}
