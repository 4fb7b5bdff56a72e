//! Prime-field arithmetic over the scalar field of the Ristretto group.
//!
//! Field elements carry signed meaning through the symmetric residue view
//! `[-(p-1)/2, (p-1)/2]`. Fixed-point reals with `s` fractional bits are
//! represented as `a = 2^s * a'`, and products are brought back to `s`
//! fractional bits with the rounding operator
//! `R(x) = (x + 2^(s-1) - ((x + 2^(s-1)) mod 2^s)) / 2^s`.

use core::fmt;
use core::iter::{Product, Sum};
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use curve25519_dalek::scalar::Scalar;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed};
use rand::{CryptoRng, RngCore};

use crate::error::{Error, Result};

/// Width in bytes of the canonical scalar encoding.
pub const SCALAR_BYTES: usize = 32;

/// Bit length of the field modulus `p = 2^252 + 27742317777372353535851937790883648493`.
pub const MODULUS_BITS: u32 = 253;

const MODULUS_DEC: &str =
    "7237005577332262213973186563042994240857116359379907606001950938285454250989";

/// The field modulus as an unsigned big integer.
pub fn modulus() -> &'static BigUint {
    static P: OnceLock<BigUint> = OnceLock::new();
    P.get_or_init(|| MODULUS_DEC.parse().expect("modulus literal"))
}

fn half_modulus() -> &'static BigUint {
    static H: OnceLock<BigUint> = OnceLock::new();
    H.get_or_init(|| (modulus() - 1u32) >> 1)
}

/// An element of `F_p`, stored canonically in `[0, p)`.
#[derive(Copy, Clone, Default, PartialEq, Eq)]
#[repr(transparent)]
pub struct FieldElement(pub(crate) Scalar);

impl FieldElement {
    pub const ZERO: Self = Self(Scalar::ZERO);
    pub const ONE: Self = Self(Scalar::ONE);

    pub fn from_u64(v: u64) -> Self {
        Self(Scalar::from(v))
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_i128(v as i128)
    }

    pub fn from_i128(v: i128) -> Self {
        let mag = Scalar::from(v.unsigned_abs());
        if v < 0 {
            Self(-mag)
        } else {
            Self(mag)
        }
    }

    /// Reduces an arbitrary signed integer modulo `p`.
    pub fn from_bigint(v: &BigInt) -> Self {
        let p = BigInt::from_biguint(Sign::Plus, modulus().clone());
        let r = v.mod_floor(&p);
        let (_, mut bytes) = r.to_bytes_le();
        bytes.resize(SCALAR_BYTES, 0);
        let arr: [u8; SCALAR_BYTES] = bytes.try_into().expect("32 bytes");
        Self(Scalar::from_canonical_bytes(arr).expect("reduced below p"))
    }

    /// `2^k` as a field element.
    pub fn pow2(k: u32) -> Self {
        if k < 128 {
            return Self(Scalar::from(1u128 << k));
        }
        Self::from_u64(2).pow(k as u64)
    }

    pub fn random<R: RngCore + CryptoRng>(rng: &mut R) -> Self {
        Self(Scalar::random(rng))
    }

    pub fn is_zero(&self) -> bool {
        self.0 == Scalar::ZERO
    }

    pub fn square(&self) -> Self {
        Self(self.0 * self.0)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(Self(self.0.invert()))
    }

    /// Inverts every element in place with a single field inversion.
    pub fn batch_invert(elems: &mut [Self]) -> Result<()> {
        if elems.iter().any(Self::is_zero) {
            return Err(Error::ZeroInverse);
        }
        let mut raw: Vec<Scalar> = elems.iter().map(|e| e.0).collect();
        Scalar::batch_invert(&mut raw);
        for (e, r) in elems.iter_mut().zip(raw) {
            e.0 = r;
        }
        Ok(())
    }

    /// Canonical little-endian encoding.
    pub fn to_bytes(&self) -> [u8; SCALAR_BYTES] {
        self.0.to_bytes()
    }

    /// Decodes a canonical encoding; values `>= p` are rejected.
    pub fn from_bytes(bytes: &[u8; SCALAR_BYTES]) -> Option<Self> {
        Option::from(Scalar::from_canonical_bytes(*bytes)).map(Self)
    }

    pub(crate) fn from_bytes_wide(bytes: &[u8; 64]) -> Self {
        Self(Scalar::from_bytes_mod_order_wide(bytes))
    }

    /// The canonical representative as an unsigned integer in `[0, p)`.
    pub fn to_biguint(&self) -> BigUint {
        BigUint::from_bytes_le(&self.to_bytes())
    }

    /// The symmetric residue of this element, in `[-(p-1)/2, (p-1)/2]`.
    pub fn to_symmetric(&self) -> BigInt {
        let x = self.to_biguint();
        if &x > half_modulus() {
            BigInt::from_biguint(Sign::Minus, modulus() - x)
        } else {
            BigInt::from_biguint(Sign::Plus, x)
        }
    }

    /// The symmetric residue, if it fits in an `i128`.
    pub fn to_i128(&self) -> Option<i128> {
        let small = |bytes: [u8; SCALAR_BYTES]| -> Option<u128> {
            if bytes[16..].iter().any(|&b| b != 0) {
                return None;
            }
            let lo = u128::from_le_bytes(bytes[..16].try_into().unwrap());
            (lo <= i128::MAX as u128).then_some(lo)
        };
        if let Some(v) = small(self.to_bytes()) {
            return Some(v as i128);
        }
        small((-self.0).to_bytes()).map(|v| -(v as i128))
    }

    /// Applies the rounding operator `R` with `s` fractional bits.
    pub fn round(&self, params: &FixedPointParams) -> Result<Self> {
        Ok(self.round_with_remainder(params)?.0)
    }

    /// Returns `(R(x), e)` with `x = e + 2^s * R(x)` and `e` in `[-2^(s-1), 2^(s-1))`.
    pub fn round_with_remainder(&self, params: &FixedPointParams) -> Result<(Self, Self)> {
        let s = params.frac_bits;
        if let Some(x) = self.to_i128().filter(|x| x.unsigned_abs() < 1u128 << 120) {
            let q = round_integer(&x, s);
            return Ok((Self::from_i128(q), Self::from_i128(x - (q << s))));
        }
        let x = self.to_symmetric();
        let half = BigInt::one() << (s - 1);
        let limit = BigInt::from_biguint(Sign::Plus, half_modulus().clone());
        if x.abs() + &half >= limit {
            return Err(Error::RoundingOutOfRange);
        }
        let q = round_integer(&x, s);
        let e = &x - (&q << s);
        Ok((Self::from_bigint(&q), Self::from_bigint(&e)))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_i128() {
            Some(v) => write!(f, "Fe({v})"),
            None => write!(f, "Fe({})", self.to_symmetric()),
        }
    }
}

impl From<u64> for FieldElement {
    fn from(v: u64) -> Self {
        Self::from_u64(v)
    }
}

impl From<i64> for FieldElement {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident, $op:tt) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            #[inline]
            fn $m(self, rhs: FieldElement) -> FieldElement {
                FieldElement(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            #[inline]
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                FieldElement(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            #[inline]
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                FieldElement(self.0 $op rhs.0)
            }
        }
        impl $atr for FieldElement {
            #[inline]
            fn $am(&mut self, rhs: FieldElement) {
                self.0 = self.0 $op rhs.0;
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign, +);
binop!(Sub, sub, SubAssign, sub_assign, -);
binop!(Mul, mul, MulAssign, mul_assign, *);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement(-self.0)
    }
}

impl Sum for FieldElement {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

impl<'a> Sum<&'a FieldElement> for FieldElement {
    fn sum<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

impl Product for FieldElement {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ONE, |a, b| a * b)
    }
}

/// `<a, b>` over the field. Panics if lengths differ.
pub fn inner_product(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    assert_eq!(a.len(), b.len(), "inner product of unequal lengths");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `(1, x, x^2, ..., x^(n-1))`.
pub fn powers(x: FieldElement, n: usize) -> Vec<FieldElement> {
    let mut out = Vec::with_capacity(n);
    let mut acc = FieldElement::ONE;
    for _ in 0..n {
        out.push(acc);
        acc *= x;
    }
    out
}

/// Symmetric residue of an integer modulo an odd prime `p`.
///
/// Works for any integer type; the field uses it through [`BigInt`], the
/// small-prime oracles through `i128`.
pub fn symmetric_residue<T: Integer + Clone>(x: &T, p: &T) -> T {
    let r = x.mod_floor(p);
    let two = T::one() + T::one();
    let half = (p.clone() - T::one()) / two;
    if r > half {
        r - p.clone()
    } else {
        r
    }
}

/// Integer form of `R`: `floor((x + 2^(s-1)) / 2^s)`, i.e. nearest integer
/// to `x / 2^s` with ties toward `+inf`.
pub fn round_integer<T>(x: &T, s: u32) -> T
where
    T: Integer + Clone + From<i64>,
{
    assert!((1..63).contains(&s), "fractional bits must be in 1..63");
    let scale = T::from(1i64 << s);
    let half = T::from(1i64 << (s - 1));
    (x.clone() + half).div_floor(&scale)
}

/// Fixed-point layout: a sign bit, `int_bits` integer bits and
/// `frac_bits` fractional bits.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct FixedPointParams {
    pub frac_bits: u32,
    pub int_bits: u32,
}

impl FixedPointParams {
    pub fn new(frac_bits: u32, int_bits: u32) -> Result<Self> {
        if frac_bits == 0 {
            return Err(Error::InvalidParams("need at least one fractional bit".into()));
        }
        if frac_bits >= 62 || int_bits >= 62 {
            return Err(Error::InvalidParams("bit counts must be below 62".into()));
        }
        if 2 * (int_bits + frac_bits) + 2 >= MODULUS_BITS {
            return Err(Error::InvalidParams(format!(
                "2(t+s)+2 = {} does not fit in a {MODULUS_BITS}-bit field",
                2 * (int_bits + frac_bits) + 2
            )));
        }
        Ok(Self { frac_bits, int_bits })
    }

    /// Whether dot products of length `m` over in-range values cannot wrap:
    /// `2(t+s) + log2(m) + 2 < bitlength(p)`.
    pub fn supports_inner_dim(&self, m: usize) -> bool {
        let log_m = m.max(1).next_power_of_two().trailing_zeros();
        2 * (self.int_bits + self.frac_bits) + log_m + 2 < MODULUS_BITS
    }

    /// Exclusive bound on the magnitude of any encoded operand: `2^(t+s)`.
    pub fn operand_bound(&self) -> i128 {
        1i128 << (self.int_bits + self.frac_bits)
    }

    /// Exclusive bound on a rounded output: `2^(t+1)`.
    pub fn output_bound(&self) -> i128 {
        1i128 << (self.int_bits + 1)
    }

    /// Range width used for the rounded output after shifting by `2^(t+1)`.
    pub fn output_range_bits(&self) -> u32 {
        self.int_bits + 2
    }

    /// Width of `|A|` for a ReLU fed by a rounded layer.
    pub fn chained_relu_bits(&self) -> u32 {
        self.int_bits + 2
    }

    /// Width of `|A|` for a ReLU applied to unrounded data.
    pub fn standalone_relu_bits(&self) -> u32 {
        self.int_bits + self.frac_bits + 1
    }

    /// Encodes `q` as `2^s * q`. `q` must be an exact multiple of `2^-s`
    /// with `|q| < 2^(t+1)`.
    pub fn encode(&self, q: f64) -> Result<FieldElement> {
        let scaled = q * (1u64 << self.frac_bits) as f64;
        if !scaled.is_finite() || scaled.fract() != 0.0 {
            return Err(Error::NotRepresentable(q));
        }
        if q.abs() >= (1u64 << (self.int_bits + 1)) as f64 {
            return Err(Error::FixedPointOverflow(format!(
                "|{q}| >= 2^{}",
                self.int_bits + 1
            )));
        }
        Ok(FieldElement::from_i128(scaled as i128))
    }

    /// Encodes the nearest representable value to `q`.
    pub fn encode_nearest(&self, q: f64) -> Result<FieldElement> {
        let scale = (1u64 << self.frac_bits) as f64;
        self.encode((q * scale).round() / scale)
    }

    pub fn decode(&self, x: &FieldElement) -> Result<f64> {
        let v = x
            .to_i128()
            .filter(|v| v.unsigned_abs() < 1u128 << 100)
            .ok_or_else(|| Error::FixedPointOverflow("value is not a small fixed-point".into()))?;
        Ok(v as f64 / (1u64 << self.frac_bits) as f64)
    }
}
