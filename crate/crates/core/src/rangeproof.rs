//! Aggregated range proof for committed values.
//!
//! Proves that every `v_j` committed in `P = <v, g>` lies in `[0, 2^n)`.
//! Values are padded with zeros to a power-of-two count `m`, and each value
//! gets a slot of `next_pow2(n)` bit positions (little-endian, weight `2^k`
//! at offset `k`, weight 0 in unused slot positions). With `a_L` the bits
//! and `a_R = a_L - 1`:
//!
//! ```text
//! A  = <a_L, g> + <a_R, h>
//! l  = a_L - z
//! r  = y^N o (a_R + z) + sum_j z^(2+j) (0 .. w .. 0)
//! qz = <(1, z, .., z^(m-1)), v>
//! t  = <l, r> = delta(y, z) + z^2 qz
//! delta(y, z) = (z - z^2) <1, y^N> - sum_j z^(3+j) (2^n - 1)
//! ```
//!
//! The first inner-product argument shows `qz` is the claimed combination of
//! the committed values; the second shows `t = <l, r>` against
//! `P'' = A - z sum g + <z y^N + sum_j z^(2+j) w, h'>` with `h'_i = y^-i h_i`.

use crate::error::{Error, Result, VerifyError};
use crate::field::{inner_product, powers, FieldElement};
use crate::group::{msm, msm_iter, GeneratorSet, GroupElement};
use crate::ipa::{prove_scaled, verify_scaled, IpaProof};
use crate::transcript::Transcript;
use crate::wire::{Decode, Encode, Reader, Writer};

pub const MAX_BITS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeProof {
    pub a_commit: GroupElement,
    pub qz: FieldElement,
    pub ipa_q: IpaProof,
    pub ipa_lr: IpaProof,
}

/// Sizes derived from a value count and bit width.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct RangeLayout {
    pub values: usize,
    pub bits: u32,
    pub slot: usize,
}

impl RangeLayout {
    pub fn new(count: usize, bits: u32) -> Result<Self> {
        if bits == 0 || bits > MAX_BITS {
            return Err(Error::UnsupportedBitWidth(bits));
        }
        Ok(Self {
            values: count.max(1).next_power_of_two(),
            bits,
            slot: (bits as usize).next_power_of_two(),
        })
    }

    /// Length of the bit vectors, which is also the generators needed.
    pub fn width(&self) -> usize {
        self.values * self.slot
    }

    fn weights(&self) -> Vec<FieldElement> {
        (0..self.slot)
            .map(|k| {
                if (k as u32) < self.bits {
                    FieldElement::pow2(k as u32)
                } else {
                    FieldElement::ZERO
                }
            })
            .collect()
    }
}

/// Little-endian bit decomposition, `a_R = a_L - 1`.
pub fn bit_vectors(values: &[FieldElement], layout: &RangeLayout) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
    let mut a_l = vec![FieldElement::ZERO; layout.width()];
    for (j, v) in values.iter().enumerate() {
        let x = v
            .to_i128()
            .filter(|x| *x >= 0 && *x < 1i128 << layout.bits)
            .ok_or(Error::ValueOutOfRange { index: j, bits: layout.bits })?;
        for k in 0..layout.bits as usize {
            if (x >> k) & 1 == 1 {
                a_l[j * layout.slot + k] = FieldElement::ONE;
            }
        }
    }
    let a_r = a_l.iter().map(|b| b - &FieldElement::ONE).collect();
    Ok((a_l, a_r))
}

/// Bit vectors from the low `bits` bits of each value's canonical
/// representative, whether or not the value is in range.
#[doc(hidden)]
pub fn wrapped_bit_vectors(values: &[FieldElement], layout: &RangeLayout) -> (Vec<FieldElement>, Vec<FieldElement>) {
    let mut a_l = vec![FieldElement::ZERO; layout.width()];
    for (j, v) in values.iter().enumerate() {
        let x = v.to_biguint();
        for k in 0..layout.bits as u64 {
            if x.bit(k) {
                a_l[j * layout.slot + k as usize] = FieldElement::ONE;
            }
        }
    }
    let a_r = a_l.iter().map(|b| b - &FieldElement::ONE).collect();
    (a_l, a_r)
}

struct Challenges {
    y: FieldElement,
    z: FieldElement,
}

fn bind_statement(tr: &mut Transcript, layout: &RangeLayout, p: &GroupElement) {
    tr.bind_u64(b"rp.m", layout.values as u64);
    tr.bind_u64(b"rp.n", layout.bits as u64);
    tr.bind_point(b"rp.P", p);
}

fn draw(tr: &mut Transcript, a: &GroupElement) -> Challenges {
    tr.prover_point(b"rp.A", a);
    Challenges {
        y: tr.challenge_scalar(b"rp.y"),
        z: tr.challenge_scalar(b"rp.z"),
    }
}

/// `z + z^(2+j) w_k y^-i` for every position `i = j * slot + k`.
fn h_exponents(layout: &RangeLayout, ch: &Challenges, y_inv: &[FieldElement]) -> Vec<FieldElement> {
    let w = layout.weights();
    let zj = powers(ch.z, layout.values + 2);
    (0..layout.width())
        .map(|i| {
            let (j, k) = (i / layout.slot, i % layout.slot);
            ch.z + zj[j + 2] * w[k] * y_inv[i]
        })
        .collect()
}

fn delta(layout: &RangeLayout, ch: &Challenges, y_pows: &[FieldElement]) -> FieldElement {
    let z2 = ch.z.square();
    let sum_y: FieldElement = y_pows.iter().copied().sum();
    let ones = FieldElement::pow2(layout.bits) - FieldElement::ONE;
    let sum_z: FieldElement = powers(ch.z, layout.values + 3)[3..].iter().copied().sum();
    (ch.z - z2) * sum_y - sum_z * ones
}

fn pad(values: &[FieldElement], m: usize) -> Vec<FieldElement> {
    let mut v = values.to_vec();
    v.resize(m, FieldElement::ZERO);
    v
}

impl RangeProof {
    /// Proves that every entry of `values` lies in `[0, 2^bits)`, where
    /// `commitment = <values, g>`.
    pub fn prove(
        gens: &GeneratorSet,
        values: &[FieldElement],
        bits: u32,
        commitment: &GroupElement,
        tr: &mut Transcript,
    ) -> Result<Self> {
        let layout = RangeLayout::new(values.len(), bits)?;
        let (a_l, a_r) = bit_vectors(values, &layout)?;
        Self::prove_inner(gens, values, &layout, a_l, a_r, commitment, tr, true)
    }

    /// Runs the prover on arbitrary `a_L`, `a_R` without checking them.
    ///
    /// Used to exercise the verifier against provers that cheat on the bit
    /// decomposition.
    #[doc(hidden)]
    #[allow(clippy::too_many_arguments)]
    pub fn prove_with_witness(
        gens: &GeneratorSet,
        values: &[FieldElement],
        bits: u32,
        a_l: Vec<FieldElement>,
        a_r: Vec<FieldElement>,
        commitment: &GroupElement,
        tr: &mut Transcript,
    ) -> Result<Self> {
        let layout = RangeLayout::new(values.len(), bits)?;
        for v in [&a_l, &a_r] {
            if v.len() != layout.width() {
                return Err(Error::LengthMismatch {
                    expected: layout.width(),
                    found: v.len(),
                });
            }
        }
        Self::prove_inner(gens, values, &layout, a_l, a_r, commitment, tr, false)
    }

    #[allow(clippy::too_many_arguments)]
    fn prove_inner(
        gens: &GeneratorSet,
        values: &[FieldElement],
        layout: &RangeLayout,
        a_l: Vec<FieldElement>,
        a_r: Vec<FieldElement>,
        commitment: &GroupElement,
        tr: &mut Transcript,
        honest_bits: bool,
    ) -> Result<Self> {
        let n = layout.width();
        gens.require(n)?;
        let (g, h) = (&gens.g[..n], &gens.h[..n]);
        bind_statement(tr, layout, commitment);

        let a_commit = if honest_bits {
            // a_L in {0,1} and a_R = a_L - 1, so A is a sum of +g_i and -h_i
            g.iter()
                .zip(h)
                .zip(&a_l)
                .fold(GroupElement::identity(), |acc, ((gi, hi), b)| if b.is_zero() { acc - *hi } else { acc + *gi })
        } else {
            msm(a_l.iter().chain(&a_r), g.iter().chain(h))
        };
        let ch = draw(tr, &a_commit);

        let v = pad(values, layout.values);
        let zm = powers(ch.z, layout.values);
        let qz = inner_product(&zm, &v);
        tr.prover_scalar(b"rp.qz", &qz);
        let p1 = *commitment + msm(&zm, &gens.h[..layout.values]);
        let ipa_q = IpaProof::prove(&gens.g, &gens.h, &gens.u, &p1, &qz, v, zm, tr)?;

        let y_pows = powers(ch.y, n);
        let y_inv = powers(ch.y.invert()?, n);
        let w = layout.weights();
        let zj = powers(ch.z, layout.values + 2);
        let l: Vec<FieldElement> = a_l.iter().map(|a| a - &ch.z).collect();
        let r: Vec<FieldElement> = (0..n)
            .map(|i| y_pows[i] * (a_r[i] + ch.z) + zj[i / layout.slot + 2] * w[i % layout.slot])
            .collect();
        let t = inner_product(&l, &r);
        if honest_bits {
            debug_assert_eq!(t, delta(layout, &ch, &y_pows) + ch.z.square() * qz);
        }
        let p2 = p_double_prime(gens, layout, &ch, &a_commit, &y_inv);
        let ipa_lr = prove_scaled(g, h, Some(&y_inv), &gens.u, &p2, &t, l, r, tr)?;
        Ok(Self {
            a_commit,
            qz,
            ipa_q,
            ipa_lr,
        })
    }

    /// Checks that `commitment` opens to `count` values in `[0, 2^bits)`.
    pub fn verify(
        &self,
        gens: &GeneratorSet,
        commitment: &GroupElement,
        count: usize,
        bits: u32,
        tr: &mut Transcript,
    ) -> Result<(), VerifyError> {
        let layout = RangeLayout::new(count, bits).map_err(|_| VerifyError::Malformed("unsupported range width"))?;
        let n = layout.width();
        if gens.tau() < n {
            return Err(VerifyError::NotEnoughGenerators);
        }
        bind_statement(tr, &layout, commitment);
        let ch = draw(tr, &self.a_commit);

        tr.prover_scalar(b"rp.qz", &self.qz);
        let zm = powers(ch.z, layout.values);
        let p1 = *commitment + msm(&zm, &gens.h[..layout.values]);
        self.ipa_q
            .verify(&gens.g, &gens.h, &gens.u, &p1, &self.qz, layout.values, tr)?;

        let y_pows = powers(ch.y, n);
        let y_inv = powers(
            ch.y.invert().map_err(|_| VerifyError::Malformed("zero challenge"))?,
            n,
        );
        let t = delta(&layout, &ch, &y_pows) + ch.z.square() * self.qz;
        let p2 = p_double_prime(gens, &layout, &ch, &self.a_commit, &y_inv);
        verify_scaled(&self.ipa_lr, &gens.g, &gens.h, Some(&y_inv), &gens.u, &p2, &t, n, tr)
    }

    pub fn message_bytes(&self) -> usize {
        64 + self.ipa_q.message_bytes() + self.ipa_lr.message_bytes()
    }
}

fn p_double_prime(
    gens: &GeneratorSet,
    layout: &RangeLayout,
    ch: &Challenges,
    a: &GroupElement,
    y_inv: &[FieldElement],
) -> GroupElement {
    let n = layout.width();
    let h_exp = h_exponents(layout, ch, y_inv);
    *a - gens.g_sum(n) * ch.z + msm_iter(h_exp, &gens.h[..n])
}

impl Encode for RangeProof {
    fn encode(&self, w: &mut Writer) {
        w.put_point(&self.a_commit);
        w.put_scalar(&self.qz);
        self.ipa_q.encode(w);
        self.ipa_lr.encode(w);
    }
}

impl Decode for RangeProof {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        Ok(Self {
            a_commit: r.get_point()?,
            qz: r.get_scalar()?,
            ipa_q: IpaProof::decode(r)?,
            ipa_lr: IpaProof::decode(r)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transcript::Mode;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn fe(v: i64) -> FieldElement {
        FieldElement::from_i64(v)
    }

    fn gens() -> GeneratorSet {
        GeneratorSet::derive(b"rp-test", 256).unwrap()
    }

    fn roundtrip(gens: &GeneratorSet, vals: &[FieldElement], bits: u32, mode: Mode) -> Result<(), VerifyError> {
        let p = gens.commit(vals).unwrap();
        let mut tr = Transcript::with_mode(b"rp", mode);
        let proof = RangeProof::prove(gens, vals, bits, &p, &mut tr).unwrap();
        assert_eq!(RangeProof::from_bytes(&proof.to_bytes()).unwrap(), proof);
        let mut tr = Transcript::with_mode(b"rp", mode);
        proof.verify(gens, &p, vals.len(), bits, &mut tr)
    }

    #[test]
    fn boundaries() {
        let g = gens();
        roundtrip(&g, &[fe(3)], 2, Mode::FiatShamir).unwrap();
        roundtrip(&g, &[fe(0)], 2, Mode::FiatShamir).unwrap();
        roundtrip(&g, &[fe(0), fe(255), fe(1), fe(128)], 8, Mode::Interactive { seed: 3 }).unwrap();
        let mut tr = Transcript::new(b"rp");
        let p = g.commit(&[fe(4)]).unwrap();
        assert_eq!(
            RangeProof::prove(&g, &[fe(4)], 2, &p, &mut tr),
            Err(Error::ValueOutOfRange { index: 0, bits: 2 })
        );
        assert!(RangeProof::prove(&g, &[fe(-1)], 8, &p, &mut tr).is_err());
    }

    #[test]
    fn odd_widths_and_counts() {
        let g = gens();
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for (m, bits) in [(3usize, 3u32), (5, 6), (1, 1), (7, 10)] {
            let vals: Vec<_> = (0..m).map(|_| fe(rng.gen_range(0..1i64 << bits))).collect();
            roundtrip(&g, &vals, bits, Mode::FiatShamir).unwrap();
        }
    }

    #[test]
    fn inner_product_identity_on_witnesses() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let layout = RangeLayout::new(4, 6).unwrap();
        let vals: Vec<_> = (0..4).map(|_| fe(rng.gen_range(0..64))).collect();
        let (a_l, a_r) = bit_vectors(&vals, &layout).unwrap();
        let ch = Challenges {
            y: FieldElement::random(&mut rng),
            z: FieldElement::random(&mut rng),
        };
        let n = layout.width();
        let y = powers(ch.y, n);
        let zj = powers(ch.z, 6);
        let w = layout.weights();
        let l: Vec<_> = a_l.iter().map(|a| a - &ch.z).collect();
        let r: Vec<_> = (0..n)
            .map(|i| y[i] * (a_r[i] + ch.z) + zj[i / layout.slot + 2] * w[i % layout.slot])
            .collect();
        let qz = inner_product(&powers(ch.z, 4), &vals);
        assert_eq!(inner_product(&l, &r), delta(&layout, &ch, &y) + ch.z.square() * qz);
    }

    #[test]
    fn proof_grows_one_fold_per_doubling() {
        let g = gens();
        let sizes: Vec<usize> = [(1usize, 8u32), (2, 8), (4, 8), (8, 8)]
            .iter()
            .map(|&(m, bits)| {
                let vals = vec![fe(7); m];
                let p = g.commit(&vals).unwrap();
                let mut tr = Transcript::new(b"rp");
                RangeProof::prove(&g, &vals, bits, &p, &mut tr).unwrap().to_bytes().len()
            })
            .collect();
        // each doubling of m adds one L/R pair to both arguments
        for w in sizes.windows(2) {
            assert_eq!(w[1] - w[0], 4 * 32);
        }
        // doubling the width only grows the bit-level argument
        let len = |bits: u32| {
            let vals = vec![fe(7); 2];
            let p = g.commit(&vals).unwrap();
            let mut tr = Transcript::new(b"rp");
            RangeProof::prove(&g, &vals, bits, &p, &mut tr).unwrap().to_bytes().len()
        };
        assert_eq!(len(16) - len(8), 2 * 32);
    }

    #[test]
    fn tampering_rejected() {
        let g = gens();
        let vals = [fe(1), fe(2), fe(3), fe(250)];
        let p = g.commit(&vals).unwrap();
        let mut tr = Transcript::new(b"rp");
        let proof = RangeProof::prove(&g, &vals, 8, &p, &mut tr).unwrap();
        let check = |pf: &RangeProof, p: &GroupElement| {
            let mut tr = Transcript::new(b"rp");
            pf.verify(&g, p, 4, 8, &mut tr)
        };
        check(&proof, &p).unwrap();
        let mut bad = proof.clone();
        bad.qz += FieldElement::ONE;
        assert_eq!(check(&bad, &p), Err(VerifyError::InnerProduct));
        let mut bad = proof.clone();
        bad.a_commit = bad.a_commit + g.g[0];
        assert_eq!(check(&bad, &p), Err(VerifyError::InnerProduct));
        assert!(check(&proof, &(p + g.g[1])).is_err());
        let mut tr = Transcript::new(b"rp");
        assert!(proof.verify(&g, &p, 4, 7, &mut tr).is_err());
    }

    fn adversarial(vals: &[FieldElement], bits: u32, a_l: Vec<FieldElement>, a_r: Vec<FieldElement>) -> Result<(), VerifyError> {
        let g = gens();
        let p = g.commit(vals).unwrap();
        let mut tr = Transcript::new(b"rp");
        let proof = RangeProof::prove_with_witness(&g, vals, bits, a_l, a_r, &p, &mut tr).unwrap();
        let mut tr = Transcript::new(b"rp");
        proof.verify(&g, &p, vals.len(), bits, &mut tr)
    }

    #[test]
    fn adversarial_witnesses_rejected() {
        let bits = 4u32;
        let vals = [fe(16), fe(5)];
        let layout = RangeLayout::new(2, bits).unwrap();
        let (honest_l, _) = bit_vectors(&[fe(0), fe(5)], &layout).unwrap();
        let minus_one = |v: &[FieldElement]| v.iter().map(|b| b - &FieldElement::ONE).collect::<Vec<_>>();

        // wrapped: low bits of 16 are all zero
        assert!(adversarial(&vals, bits, honest_l.clone(), minus_one(&honest_l)).is_err());

        // non-bit entry 2 at weight 8 so the weighted sum is exactly 16
        let mut two = honest_l.clone();
        two[3] = fe(2);
        assert!(adversarial(&vals, bits, two.clone(), minus_one(&two)).is_err());

        // same, with a_R zeroed where a_L = 2 so that a_L o a_R = 0
        let mut a_r = minus_one(&two);
        a_r[3] = FieldElement::ZERO;
        assert!(adversarial(&vals, bits, two, a_r).is_err());

        // the harness itself accepts an honest witness
        let ok = [fe(15), fe(5)];
        let (l, r) = bit_vectors(&ok, &layout).unwrap();
        adversarial(&ok, bits, l, r).unwrap();
    }
}
