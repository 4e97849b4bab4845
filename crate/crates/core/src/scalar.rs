//! Scalar abstraction.
//!
//! Every numerical routine in the crate is generic over [`Real`]. The
//! validation tolerances are part of the scalar: they are calibrated for
//! `f64` and loosened for `f32`, where a `1e-12` Hermiticity check would be
//! meaningless.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

pub use num_complex::Complex;

/// Real scalar usable by the library: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// `max |A_jk - conj(A_kj)|` allowed for a density matrix.
    const HERMITIAN_TOL: Self;
    /// `|Tr rho - 1|` allowed for a density matrix.
    const TRACE_TOL: Self;
    /// Eigenvalues in `[-PSD_TOL, 0)` are clipped; anything lower is rejected.
    const PSD_TOL: Self;
    /// Max entry of `|U^dagger U - I|` allowed for a unitary.
    const UNITARY_TOL: Self;
    /// Probabilities in `[-PROB_NEG_TOL, 0)` are clipped to zero.
    const PROB_NEG_TOL: Self;
    /// `|sum p - 1|` allowed for a tomogram, and `|‖psi‖ - 1|` for a state vector.
    const NORM_TOL: Self;
    /// `|q - 1|` below which Renyi-type quantities take the Shannon path.
    const SHANNON_WINDOW: Self;
    /// Default slack tolerance for inequality checks.
    const INEQUALITY_TOL: Self;
    /// Unit roundoff.
    const EPS: Self;

    fn sample_standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;
    fn sample_exp1<R: Rng + ?Sized>(rng: &mut R) -> Self;

    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

macro_rules! impl_real {
    ($t:ty, herm = $h:expr, trace = $tr:expr, psd = $psd:expr, unitary = $u:expr,
     prob = $p:expr, norm = $n:expr, window = $w:expr, ineq = $iq:expr) => {
        impl Real for $t {
            const HERMITIAN_TOL: Self = $h;
            const TRACE_TOL: Self = $tr;
            const PSD_TOL: Self = $psd;
            const UNITARY_TOL: Self = $u;
            const PROB_NEG_TOL: Self = $p;
            const NORM_TOL: Self = $n;
            const SHANNON_WINDOW: Self = $w;
            const INEQUALITY_TOL: Self = $iq;
            const EPS: Self = <$t>::EPSILON;

            #[inline]
            fn sample_standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
                StandardNormal.sample(rng)
            }

            #[inline]
            fn sample_exp1<R: Rng + ?Sized>(rng: &mut R) -> Self {
                Exp1.sample(rng)
            }
        }
    };
}

impl_real!(
    f64,
    herm = 1e-12,
    trace = 1e-12,
    psd = 1e-10,
    unitary = 1e-10,
    prob = 1e-12,
    norm = 1e-10,
    window = 1e-8,
    ineq = 1e-9
);
impl_real!(
    f32,
    herm = 1e-5,
    trace = 1e-5,
    psd = 1e-5,
    unitary = 1e-4,
    prob = 1e-6,
    norm = 1e-5,
    window = 1e-3,
    ineq = 1e-4
);

/// `x ln x` with the continuous extension `0 ln 0 = 0`.
#[inline]
pub(crate) fn xlnx<T: Real>(x: T) -> T {
    if x <= T::zero() {
        T::zero()
    } else {
        x * x.ln()
    }
}
