//! Openings of committed multilinear tables.
//!
//! A table with evaluations `a` is committed as `P1 = <a, g>`. Its MLE at
//! `z` is `<a, chi(z)>`, so an opening is an inner-product argument over
//! `P = P1 + <chi(z), h>` with claimed value `q(z)`.

use crate::error::{Error, Result, VerifyError};
use crate::field::FieldElement;
use crate::group::{msm, GeneratorSet, GroupElement};
use crate::ipa::IpaProof;
use crate::mle::{chi_vector, mle_eval, MleTable};
use crate::transcript::Transcript;
use crate::wire::{Decode, Encode, Reader, Writer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpeningProof {
    pub claimed_value: FieldElement,
    pub ipa: IpaProof,
}

impl OpeningProof {
    pub fn message_bytes(&self) -> usize {
        32 + self.ipa.message_bytes()
    }
}

/// Opens the table committed as `p1` at `z`.
pub fn pc_open(
    gens: &GeneratorSet,
    p1: &GroupElement,
    tbl: &MleTable,
    z: &[FieldElement],
    tr: &mut Transcript,
) -> Result<OpeningProof> {
    if z.len() != tbl.num_vars() {
        return Err(Error::LengthMismatch {
            expected: tbl.num_vars(),
            found: z.len(),
        });
    }
    gens.require(tbl.len())?;
    let value = mle_eval(tbl, z)?;
    let b = chi_vector(z);
    let p = *p1 + msm(&b, &gens.h[..b.len()]);
    tr.prover_scalar(b"pc.value", &value);
    let ipa = IpaProof::prove(&gens.g, &gens.h, &gens.u, &p, &value, tbl.evals().to_vec(), b, tr)?;
    Ok(OpeningProof {
        claimed_value: value,
        ipa,
    })
}

/// Checks an opening of `p1` at `z` and returns the opened value.
pub fn pc_verify(
    gens: &GeneratorSet,
    p1: &GroupElement,
    z: &[FieldElement],
    proof: &OpeningProof,
    tr: &mut Transcript,
) -> Result<FieldElement, VerifyError> {
    let n = 1usize
        .checked_shl(z.len() as u32)
        .ok_or(VerifyError::Malformed("too many opening variables"))?;
    if gens.tau() < n {
        return Err(VerifyError::NotEnoughGenerators);
    }
    let b = chi_vector(z);
    let p = *p1 + msm(&b, &gens.h[..n]);
    tr.prover_scalar(b"pc.value", &proof.claimed_value);
    proof
        .ipa
        .verify(&gens.g, &gens.h, &gens.u, &p, &proof.claimed_value, n, tr)?;
    Ok(proof.claimed_value)
}

impl Encode for OpeningProof {
    fn encode(&self, w: &mut Writer) {
        w.put_scalar(&self.claimed_value);
        self.ipa.encode(w);
    }
}

impl Decode for OpeningProof {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        Ok(Self {
            claimed_value: r.get_scalar()?,
            ipa: IpaProof::decode(r)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transcript::Mode;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn setup(v: usize, seed: u64) -> (GeneratorSet, MleTable, GroupElement, ChaCha20Rng) {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let gens = GeneratorSet::derive(b"pc-test", 1 << v).unwrap();
        let tbl = MleTable::new((0..1 << v).map(|_| FieldElement::random(&mut rng)).collect()).unwrap();
        let p1 = gens.commit(tbl.evals()).unwrap();
        (gens, tbl, p1, rng)
    }

    fn open_verify(gens: &GeneratorSet, p1: &GroupElement, tbl: &MleTable, z: &[FieldElement], mode: Mode) -> FieldElement {
        let mut tr = Transcript::with_mode(b"pc", mode);
        let proof = pc_open(gens, p1, tbl, z, &mut tr).unwrap();
        assert_eq!(proof.claimed_value, mle_eval(tbl, z).unwrap());
        let mut tr = Transcript::with_mode(b"pc", mode);
        pc_verify(gens, p1, z, &proof, &mut tr).unwrap()
    }

    #[test]
    fn boolean_point_opens_table_entry() {
        let (gens, tbl, p1, _) = setup(3, 1);
        let z: Vec<_> = [1u64, 0, 1].iter().map(|&b| FieldElement::from_u64(b)).collect();
        assert_eq!(open_verify(&gens, &p1, &tbl, &z, Mode::FiatShamir), tbl.evals()[5]);
    }

    #[test]
    fn random_points_all_sizes() {
        for v in [0usize, 1, 4, 7] {
            let (gens, tbl, p1, mut rng) = setup(v, 10 + v as u64);
            let z: Vec<_> = (0..v).map(|_| FieldElement::random(&mut rng)).collect();
            open_verify(&gens, &p1, &tbl, &z, Mode::FiatShamir);
            open_verify(&gens, &p1, &tbl, &z, Mode::Interactive { seed: 5 });
        }
    }

    #[test]
    fn rejects_tampering() {
        let (gens, tbl, p1, mut rng) = setup(4, 3);
        let z: Vec<_> = (0..4).map(|_| FieldElement::random(&mut rng)).collect();
        let mut tr = Transcript::new(b"pc");
        let proof = pc_open(&gens, &p1, &tbl, &z, &mut tr).unwrap();
        let check = |p1: &GroupElement, pf: &OpeningProof| {
            let mut tr = Transcript::new(b"pc");
            pc_verify(&gens, p1, &z, pf, &mut tr)
        };
        check(&p1, &proof).unwrap();

        let mut bad = proof.clone();
        bad.claimed_value += FieldElement::ONE;
        assert!(check(&p1, &bad).is_err());
        assert!(check(&(p1 + gens.g[0]), &proof).is_err());
        for i in 0..proof.ipa.folds.len() {
            let mut bad = proof.clone();
            bad.ipa.folds[i].0 = bad.ipa.folds[i].0 + gens.u;
            assert!(check(&p1, &bad).is_err());
            let mut bad = proof.clone();
            bad.ipa.folds[i].1 = bad.ipa.folds[i].1 + gens.u;
            assert!(check(&p1, &bad).is_err());
        }
        let mut bad = proof.clone();
        bad.ipa.final_b += FieldElement::ONE;
        assert!(check(&p1, &bad).is_err());

        assert_eq!(OpeningProof::from_bytes(&proof.to_bytes()).unwrap(), proof);
        assert_eq!(proof.to_bytes().len(), 32 + 4 + 32 * (8 + 2));
    }

    #[test]
    fn dimension_mismatch() {
        let (gens, tbl, p1, _) = setup(3, 4);
        let mut tr = Transcript::new(b"pc");
        assert!(pc_open(&gens, &p1, &tbl, &[FieldElement::ONE], &mut tr).is_err());
    }
}
