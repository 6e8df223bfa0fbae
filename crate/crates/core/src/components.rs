//! Primitive component models.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::Real;
use crate::slh::SlhTriplet;

/// Static beamsplitter, `S = [[cos, -sin], [sin, cos]]`.
pub fn beamsplitter<T: Real>(theta: T) -> SlhTriplet<T> {
    let (s, c) = theta.sin_cos();
    let z = |x: T| Complex::new(x, T::zero());
    SlhTriplet::from_scalars(&[vec![z(c), z(-s)], vec![z(s), z(c)]], &[z(T::zero()); 2], T::zero())
        .expect("2x2 static triplet")
}

/// Phase delay `(e^{i phi}, 0, 0)`.
pub fn phase<T: Real>(phi: T) -> SlhTriplet<T> {
    SlhTriplet::from_scalars(&[vec![Complex::from_polar(T::one(), phi)]], &[Complex::new(T::zero(), T::zero())], T::zero())
        .expect("1x1 static triplet")
}

/// Coherent displacement `(1, alpha, 0)`.
pub fn displace<T: Real>(alpha: Complex<T>) -> SlhTriplet<T> {
    SlhTriplet::from_scalars(&[vec![Complex::new(T::one(), T::zero())]], &[alpha], T::zero())
        .expect("1x1 static triplet")
}

/// Parameters of a two-port Kerr ring cavity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KerrCavity<T> {
    pub detuning: T,
    pub chi: T,
    pub kappa_1: T,
    pub kappa_2: T,
}

/// `(1_2, (sqrt(k1) a, sqrt(k2) a), Delta a^dagger a + chi a^dagger a^dagger a a)`
/// on the mode `label` truncated to `fock_dim` levels.
pub fn kerr_cavity<T: Real>(p: &KerrCavity<T>, label: &str, fock_dim: usize) -> Result<SlhTriplet<T>> {
    if fock_dim < 2 {
        return Err(Error::InvalidDimension { label: label.to_string(), dim: fock_dim });
    }
    if p.kappa_1 < T::zero() || p.kappa_2 < T::zero() {
        return Err(Error::Model(format!("negative decay rate for cavity `{label}`")));
    }
    let a = Operator::<T>::destroy(label, fock_dim)?;
    let ad = a.adjoint();
    let n = ad.mul(&a)?;
    let kerr = ad.mul(&ad)?.mul(&a)?.mul(&a)?;
    let h = n.scale(Complex::new(p.detuning, T::zero())).add(&kerr.scale(Complex::new(p.chi, T::zero())))?;
    let l = vec![
        a.scale(Complex::new(p.kappa_1.sqrt(), T::zero())),
        a.scale(Complex::new(p.kappa_2.sqrt(), T::zero())),
    ];
    SlhTriplet::new(SlhTriplet::identity(2).s().to_vec(), l, h)
}

/// Single-port empty cavity `(1, sqrt(kappa) a, Delta a^dagger a)`.
pub fn cavity<T: Real>(detuning: T, kappa: T, label: &str, fock_dim: usize) -> Result<SlhTriplet<T>> {
    let a = Operator::<T>::destroy(label, fock_dim)?;
    let n = a.adjoint().mul(&a)?;
    SlhTriplet::new(
        vec![vec![Operator::one()]],
        vec![a.scale(Complex::new(kappa.sqrt(), T::zero()))],
        n.scale(Complex::new(detuning, T::zero())),
    )
}
