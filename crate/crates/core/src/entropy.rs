//! Entropy functionals in nats.
//!
//! Classical quantities act on [`Tomogram`]s, quantum ones on the spectrum of a
//! [`DensityMatrix`]. Orders within `SHANNON_WINDOW` of 1 take the Shannon
//! path instead of dividing by `1 - q`.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, DensityMatrix};
use crate::scalar::{xlnx, Real};
use crate::tomography::Tomogram;

/// Renyi order `q > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RenyiOrder<T: Real>(T);

impl<T: Real> RenyiOrder<T> {
    pub fn new(q: T) -> Result<Self> {
        if !(q > T::zero()) || !q.is_finite() {
            return Err(Error::InvalidOrder(q.as_f64()));
        }
        Ok(Self(q))
    }

    /// The Shannon point `q = 1`.
    pub fn shannon() -> Self {
        Self(T::one())
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }

    #[inline]
    pub fn is_shannon(self) -> bool {
        (self.0 - T::one()).abs() <= T::SHANNON_WINDOW
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "q")]
pub enum EntropyKind {
    Shannon,
    Renyi(f64),
    VonNeumann,
    QuantumRenyi(f64),
    RelativeQ(f64),
}

/// An entropy value in nats, tagged with what was computed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyValue<T: Real> {
    pub value: T,
    pub kind: EntropyKind,
}

impl<T: Real> EntropyValue<T> {
    /// Relative entropies report `+inf` when the support condition fails.
    pub fn is_support_violation(&self) -> bool {
        self.value.is_infinite()
    }
}

impl<T: Real> Serialize for EntropyValue<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("EntropyValue", 2)?;
        st.serialize_field("value", &ExtendedF64(self.value.as_f64()))?;
        st.serialize_field("kind", &self.kind)?;
        st.end()
    }
}

struct ExtendedF64(f64);

impl Serialize for ExtendedF64 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::json::serialize_extended_f64(&self.0, s)
    }
}

/// `-Σ p ln p` over a raw probability slice.
pub fn shannon_probs<T: Real>(probs: &[T]) -> T {
    -probs.iter().map(|&p| xlnx(p)).sum::<T>()
}

/// `ln(Σ p^q) / (1 - q)` over a raw probability slice, Shannon near `q = 1`.
pub fn renyi_probs<T: Real>(probs: &[T], q: RenyiOrder<T>) -> T {
    if q.is_shannon() {
        return shannon_probs(probs);
    }
    let q = q.value();
    let max = probs.iter().copied().fold(T::zero(), T::max);
    if max <= T::zero() {
        return T::zero();
    }
    // ln Σ p^q = q ln max + ln Σ (p / max)^q
    let scaled: T = probs
        .iter()
        .filter(|&&p| p > T::zero())
        .map(|&p| (p / max).powf(q))
        .sum();
    (q * max.ln() + scaled.ln()) / (T::one() - q)
}

pub fn shannon<T: Real>(w: &Tomogram<T>) -> EntropyValue<T> {
    EntropyValue {
        value: shannon_probs(w.probs()),
        kind: EntropyKind::Shannon,
    }
}

pub fn renyi<T: Real>(w: &Tomogram<T>, q: RenyiOrder<T>) -> EntropyValue<T> {
    EntropyValue {
        value: renyi_probs(w.probs(), q),
        kind: EntropyKind::Renyi(q.value().as_f64()),
    }
}

/// q-logarithm `(x^{1-q} - 1) / (1 - q)`, `ln x` near `q = 1`.
pub fn ln_q<T: Real>(x: T, q: RenyiOrder<T>) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::Domain(format!("ln_q needs x > 0, got {x}")));
    }
    if q.is_shannon() {
        return Ok(x.ln());
    }
    let one_minus_q = T::one() - q.value();
    Ok((x.powf(one_minus_q) - T::one()) / one_minus_q)
}

/// `-Σ w1 ln_q(w2 / w1)` over the support of `w1`; `+inf` if `w2` vanishes
/// somewhere `w1` does not.
pub fn relative_q_entropy<T: Real>(w1: &Tomogram<T>, w2: &Tomogram<T>, q: RenyiOrder<T>) -> Result<EntropyValue<T>> {
    if w1.outcomes() != w2.outcomes() {
        return Err(Error::DimensionMismatch {
            expected: w1.outcomes(),
            got: w2.outcomes(),
        });
    }
    let kind = EntropyKind::RelativeQ(if q.is_shannon() { 1.0 } else { q.value().as_f64() });
    let mut sum = T::zero();
    for (&a, &b) in w1.probs().iter().zip(w2.probs()) {
        if a <= T::zero() {
            continue;
        }
        if b <= T::zero() {
            return Ok(EntropyValue {
                value: T::infinity(),
                kind,
            });
        }
        sum = sum - a * ln_q(b / a, q)?;
    }
    Ok(EntropyValue { value: sum, kind })
}

/// Kullback-Leibler divergence, the `q = 1` case of [`relative_q_entropy`].
pub fn relative_entropy<T: Real>(w1: &Tomogram<T>, w2: &Tomogram<T>) -> Result<EntropyValue<T>> {
    relative_q_entropy(w1, w2, RenyiOrder::shannon())
}

pub fn von_neumann<T: Real>(rho: &DensityMatrix<T>) -> Result<EntropyValue<T>> {
    let spectrum = eig_hermitian(rho)?;
    Ok(EntropyValue {
        value: shannon_probs(&spectrum.eigenvalues),
        kind: EntropyKind::VonNeumann,
    })
}

/// `ln Tr ρ^q / (1 - q)`.
pub fn quantum_renyi<T: Real>(rho: &DensityMatrix<T>, q: RenyiOrder<T>) -> Result<EntropyValue<T>> {
    let spectrum = eig_hermitian(rho)?;
    Ok(EntropyValue {
        value: renyi_probs(&spectrum.eigenvalues, q),
        kind: EntropyKind::QuantumRenyi(q.value().as_f64()),
    })
}

/// `β` with `1/α + 1/β = 2`, i.e. `β = α / (2α - 1)`; needs `α > 1/2`.
pub fn conjugate_order<T: Real>(alpha: RenyiOrder<T>) -> Result<RenyiOrder<T>> {
    let a = alpha.value();
    let half = T::lit(0.5);
    if !(a > half) {
        return Err(Error::OutOfConjugacyDomain(a.as_f64()));
    }
    if alpha.is_shannon() {
        return Ok(RenyiOrder::shannon());
    }
    RenyiOrder::new(a / (T::lit(2.0) * a - T::one()))
}
