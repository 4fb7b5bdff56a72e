//! Prime-order group, generator derivation and binding vector commitments.
//!
//! The group is Ristretto255; its order is the modulus of [`FieldElement`],
//! so commitment exponents and protocol scalars live in the same field.
//! The group is written additively here: `g^a` becomes `a * g` and
//! `g^a h^b` becomes `a * g + b * h`.

use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use curve25519_dalek::ristretto::{CompressedRistretto, RistrettoPoint};
use curve25519_dalek::traits::{Identity, IsIdentity, VartimeMultiscalarMul};
use sha2::Sha512;

use crate::error::{Error, Result};
use crate::field::FieldElement;

pub const POINT_BYTES: usize = 32;

#[derive(Copy, Clone, PartialEq, Eq)]
#[repr(transparent)]
pub struct GroupElement(pub(crate) RistrettoPoint);

impl GroupElement {
    pub fn identity() -> Self {
        Self(RistrettoPoint::identity())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn to_bytes(&self) -> [u8; POINT_BYTES] {
        self.0.compress().to_bytes()
    }

    /// Decodes a compressed point, rejecting non-canonical or invalid encodings.
    pub fn from_bytes(bytes: &[u8; POINT_BYTES]) -> Option<Self> {
        CompressedRistretto(*bytes).decompress().map(Self)
    }

    fn hash_to_group(input: &[u8]) -> Self {
        Self(RistrettoPoint::hash_from_bytes::<Sha512>(input))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.to_bytes();
        write!(f, "G(")?;
        for x in &b[..6] {
            write!(f, "{x:02x}")?;
        }
        write!(f, "..)")
    }
}

impl Add for GroupElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl AddAssign for GroupElement {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl Sub for GroupElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl SubAssign for GroupElement {
    fn sub_assign(&mut self, rhs: Self) {
        self.0 -= rhs.0;
    }
}

impl Neg for GroupElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Mul<FieldElement> for GroupElement {
    type Output = Self;
    fn mul(self, k: FieldElement) -> Self {
        Self(self.0 * k.0)
    }
}

impl Mul<GroupElement> for FieldElement {
    type Output = GroupElement;
    fn mul(self, g: GroupElement) -> GroupElement {
        GroupElement(g.0 * self.0)
    }
}

impl Sum for GroupElement {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::identity(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a GroupElement> for GroupElement {
    fn sum<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        iter.fold(Self::identity(), |a, b| a + *b)
    }
}

/// `sum_i s_i * P_i` via a variable-time multi-scalar multiplication
/// (Straus for short inputs, Pippenger for long ones).
///
/// Commitments here are binding-only and every input is public to the
/// verifier, so variable time is acceptable.
pub fn msm<'a, S, P>(scalars: S, points: P) -> GroupElement
where
    S: IntoIterator<Item = &'a FieldElement>,
    P: IntoIterator<Item = &'a GroupElement>,
{
    GroupElement(RistrettoPoint::vartime_multiscalar_mul(
        scalars.into_iter().map(|s| s.0),
        points.into_iter().map(|p| p.0),
    ))
}

/// Owned-scalar variant of [`msm`] for scalars produced on the fly.
pub fn msm_iter<'a, S, P>(scalars: S, points: P) -> GroupElement
where
    S: IntoIterator<Item = FieldElement>,
    P: IntoIterator<Item = &'a GroupElement>,
{
    GroupElement(RistrettoPoint::vartime_multiscalar_mul(
        scalars.into_iter().map(|s| s.0),
        points.into_iter().map(|p| p.0),
    ))
}

/// Vector commitment `sum_i a_i * g_i` over the leading `a.len()` generators.
pub fn commit(gens: &[GroupElement], a: &[FieldElement]) -> Result<GroupElement> {
    if a.len() > gens.len() {
        return Err(Error::NotEnoughGenerators {
            needed: a.len(),
            available: gens.len(),
        });
    }
    Ok(msm(a, &gens[..a.len()]))
}

const GEN_DOMAIN: &[u8] = b"range-arith/generators/v1";

#[derive(Copy, Clone)]
enum Role {
    G = 1,
    H = 2,
    U = 3,
}

/// Public generators `g, h` (each of length `tau`) and `u`.
///
/// Every element is derived by hashing `(seed, role, index)` to the group,
/// so nobody knows discrete-log relations among them.
#[derive(Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub g: Vec<GroupElement>,
    pub h: Vec<GroupElement>,
    pub u: GroupElement,
    pub seed: Vec<u8>,
}

impl fmt::Debug for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratorSet")
            .field("tau", &self.g.len())
            .field("seed", &String::from_utf8_lossy(&self.seed))
            .finish()
    }
}

impl GeneratorSet {
    pub fn derive(seed: &[u8], tau: usize) -> Result<Self> {
        if tau == 0 {
            return Err(Error::EmptyGeneratorSet);
        }
        let point = |role: Role, index: u64| {
            let mut input = Vec::with_capacity(GEN_DOMAIN.len() + seed.len() + 17);
            input.extend_from_slice(GEN_DOMAIN);
            input.extend_from_slice(&(seed.len() as u64).to_le_bytes());
            input.extend_from_slice(seed);
            input.push(role as u8);
            input.extend_from_slice(&index.to_le_bytes());
            GroupElement::hash_to_group(&input)
        };
        Ok(Self {
            g: (0..tau as u64).map(|i| point(Role::G, i)).collect(),
            h: (0..tau as u64).map(|i| point(Role::H, i)).collect(),
            u: point(Role::U, 0),
            seed: seed.to_vec(),
        })
    }

    pub fn tau(&self) -> usize {
        self.g.len()
    }

    pub fn require(&self, needed: usize) -> Result<()> {
        if needed > self.tau() {
            return Err(Error::NotEnoughGenerators {
                needed,
                available: self.tau(),
            });
        }
        Ok(())
    }

    /// Commitment over the `g` vector.
    pub fn commit(&self, a: &[FieldElement]) -> Result<GroupElement> {
        commit(&self.g, a)
    }

    /// `sum_{i < n} g_i`, the commitment to the all-ones vector of length `n`.
    pub fn g_sum(&self, n: usize) -> GroupElement {
        self.g[..n].iter().sum()
    }
}
