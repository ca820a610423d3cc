use num_complex::Complex;

use super::transition::TransitionData;
use crate::error::{Error, Result};
use crate::scalar::{to_f64, Real};
use crate::spectral::{field, ComplexField1D, Grid1D};

/// Right reflection coefficient `r = -b / conj(a)` with its cached sup norm.
#[derive(Clone, Debug, PartialEq)]
pub struct ReflectionCoefficient<T> {
    field: ComplexField1D<T>,
    sup_norm: T,
    left: Option<Vec<Complex<T>>>,
}

impl<T: Real> ReflectionCoefficient<T> {
    /// Wraps given samples; requires `sup |r| < 1`.
    pub fn new(field: ComplexField1D<T>) -> Result<Self> {
        let sup_norm = field.sup_norm();
        if !(sup_norm < T::one()) {
            return Err(Error::NotDefocusing { sup: to_f64(sup_norm) });
        }
        Ok(Self { field, sup_norm, left: None })
    }

    pub fn zero(lambda_grid: Grid1D<T>) -> Self {
        Self { field: ComplexField1D::zeros(lambda_grid), sup_norm: T::zero(), left: None }
    }

    #[inline]
    pub fn field(&self) -> &ComplexField1D<T> {
        &self.field
    }

    #[inline]
    pub fn grid(&self) -> &Grid1D<T> {
        self.field.grid()
    }

    #[inline]
    pub fn samples(&self) -> &[Complex<T>] {
        self.field.samples()
    }

    #[inline]
    pub fn sup_norm(&self) -> T {
        self.sup_norm
    }

    pub fn l2_norm(&self) -> T {
        field::weighted_l2(self.samples(), self.grid().spacing())
    }

    /// Left coefficient `-b / a`, available when built from transition data.
    pub fn left(&self) -> Option<&[Complex<T>]> {
        self.left.as_deref()
    }

    /// Same coefficient with every sample multiplied by a unimodular factor.
    pub(crate) fn with_samples(&self, samples: Vec<Complex<T>>) -> Self {
        let field = ComplexField1D::new(*self.grid(), samples).expect("finite samples");
        let sup_norm = field.sup_norm();
        Self { field, sup_norm, left: None }
    }
}

/// `r = -b / conj(a)` per node, plus the left coefficient `-b / a`.
pub fn reflection<T: Real>(td: &TransitionData<T>) -> Result<ReflectionCoefficient<T>> {
    let r: Vec<_> = td.a().iter().zip(td.b()).map(|(a, b)| -b / a.conj()).collect();
    let left: Vec<_> = td.a().iter().zip(td.b()).map(|(a, b)| -b / a).collect();
    let mut rc = ReflectionCoefficient::new(ComplexField1D::new(*td.lambda_grid(), r)?)?;
    rc.left = Some(left);
    Ok(rc)
}
