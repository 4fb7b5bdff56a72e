//! Sum-check over the Boolean hypercube.
//!
//! The prover claims `w = sum_{x in {0,1}^v} f(x)` where `f` is a product of
//! multilinear tables (degree `d` per variable). Round `i` sends the
//! univariate `f_i(X)` as `d + 1` monomial coefficients; the verifier checks
//! `f_i(0) + f_i(1)` against the running claim, samples `r_i` and continues
//! with `f_i(r_i)`. The final claim is discharged by opening committed
//! tables at `(r_1, .., r_v)`.
//!
//! Two closings are provided:
//!
//! * product form, `f(l) = a(r1, l) * b(l, r2)`, used for matrix products;
//! * equality form, `f(x) = eq(s, x) * (a(x)^2 - y(x)^2)` with `w = 0`, used
//!   to show `y = |a|` up to sign.

use crate::error::{Error, Result, VerifyError};
use crate::field::FieldElement;
use crate::group::{GeneratorSet, GroupElement};
use crate::mle::{chi_vector, eq_eval, fold_first_var, MleTable};
use crate::polycommit::{pc_open, pc_verify, OpeningProof};
use crate::transcript::Transcript;
use crate::wire::{Decode, Encode, Reader, Writer};

/// Degree of the product-form summand.
pub const PRODUCT_DEGREE: usize = 2;
/// Degree of the equality-form summand.
pub const EQUALITY_DEGREE: usize = 3;

/// One round polynomial, lowest coefficient first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundMessage {
    pub coeffs: Vec<FieldElement>,
}

impl RoundMessage {
    pub fn degree_bound(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn evaluate(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, c| acc * x + c)
    }

    /// `f(0) + f(1)`.
    pub fn hypercube_sum(&self) -> FieldElement {
        self.coeffs[0] + self.coeffs.iter().copied().sum::<FieldElement>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumcheckProof {
    pub claimed_sum: FieldElement,
    pub rounds: Vec<RoundMessage>,
    pub openings: [OpeningProof; 2],
}

impl SumcheckProof {
    pub fn message_bytes(&self) -> usize {
        32 + self.rounds.iter().map(|r| 32 * r.coeffs.len()).sum::<usize>()
            + self.openings.iter().map(OpeningProof::message_bytes).sum::<usize>()
    }
}

/// Coefficients of the degree-`d` polynomial through `(i, ys[i])`, `i = 0..=d`.
pub fn interpolate(ys: &[FieldElement]) -> Vec<FieldElement> {
    let n = ys.len();
    let xs: Vec<FieldElement> = (0..n as u64).map(FieldElement::from_u64).collect();
    let mut out = vec![FieldElement::ZERO; n];
    for (j, yj) in ys.iter().enumerate() {
        // basis polynomial prod_{i != j} (X - i) / (j - i)
        let mut basis = vec![FieldElement::ONE];
        let mut denom = FieldElement::ONE;
        for (i, xi) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![FieldElement::ZERO; basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += *c;
                next[k] -= c * xi;
            }
            basis = next;
            denom *= xs[j] - xi;
        }
        let scale = yj * &denom.invert().expect("nodes are distinct");
        for (o, b) in out.iter_mut().zip(&basis) {
            *o += scale * b;
        }
    }
    out
}

/// Runs the prover rounds for `sum_x f(t_1(x), .., t_k(x))`.
///
/// Each round evaluates the partial sum at `X = 0..=degree` by linear
/// interpolation of every table, interpolates the coefficients, then folds
/// all tables at the challenge. Returns the messages, the challenges and
/// the fully folded table values.
pub fn prove_rounds<F>(
    mut tables: Vec<Vec<FieldElement>>,
    degree: usize,
    f: F,
    tr: &mut Transcript,
) -> Result<(Vec<RoundMessage>, Vec<FieldElement>, Vec<FieldElement>)>
where
    F: Fn(&[FieldElement]) -> FieldElement,
{
    let len = tables.first().map_or(1, Vec::len);
    if !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    if let Some(t) = tables.iter().find(|t| t.len() != len) {
        return Err(Error::LengthMismatch {
            expected: len,
            found: t.len(),
        });
    }
    let v = len.trailing_zeros() as usize;
    let mut rounds = Vec::with_capacity(v);
    let mut challenges = Vec::with_capacity(v);
    let mut point = vec![FieldElement::ZERO; tables.len()];
    let mut step = vec![FieldElement::ZERO; tables.len()];

    for _ in 0..v {
        let half = tables[0].len() / 2;
        let mut evals = vec![FieldElement::ZERO; degree + 1];
        for i in 0..half {
            for (j, t) in tables.iter().enumerate() {
                point[j] = t[i];
                step[j] = t[i + half] - t[i];
            }
            evals[0] += f(&point);
            for e in evals.iter_mut().skip(1) {
                for (p, s) in point.iter_mut().zip(&step) {
                    *p += *s;
                }
                *e += f(&point);
            }
        }
        let msg = RoundMessage {
            coeffs: interpolate(&evals),
        };
        absorb_round(tr, &msg);
        let r = tr.challenge_scalar(b"sc.r");
        for t in tables.iter_mut() {
            fold_first_var(t, &r);
        }
        rounds.push(msg);
        challenges.push(r);
    }
    let finals = tables.iter().map(|t| t[0]).collect();
    Ok((rounds, challenges, finals))
}

fn absorb_round(tr: &mut Transcript, msg: &RoundMessage) {
    let mut w = Writer::new();
    w.put_scalars(&msg.coeffs);
    tr.absorb(b"sc.round", &w.into_bytes(), crate::transcript::Sender::Prover);
}

/// Verifier rounds: checks each `f_i(0) + f_i(1)` against the running claim
/// and returns `(r, f_v(r_v))`.
pub fn verify_rounds(
    claimed_sum: &FieldElement,
    rounds: &[RoundMessage],
    v: usize,
    degree: usize,
    tr: &mut Transcript,
) -> Result<(Vec<FieldElement>, FieldElement), VerifyError> {
    if rounds.len() != v {
        return Err(VerifyError::Malformed("wrong number of sum-check rounds"));
    }
    if rounds.iter().any(|m| m.coeffs.len() != degree + 1) {
        return Err(VerifyError::Malformed("sum-check round has the wrong degree"));
    }
    let mut claim = *claimed_sum;
    let mut r = Vec::with_capacity(v);
    for (i, msg) in rounds.iter().enumerate() {
        if msg.hypercube_sum() != claim {
            return Err(VerifyError::SumcheckRound { round: i + 1 });
        }
        absorb_round(tr, msg);
        let ri = tr.challenge_scalar(b"sc.r");
        claim = msg.evaluate(&ri);
        r.push(ri);
    }
    Ok((r, claim))
}

/// Shape of a committed product `A (n x m) * B (m x k)` in log2 units.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ProductShape {
    pub log_n: usize,
    pub log_m: usize,
    pub log_k: usize,
}

fn concat(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    a.iter().chain(b).copied().collect()
}

/// Proves `w = sum_l a(r1, l) * b(l, r2)` and opens `a` at `(r1, r)` and
/// `b` at `(r, r2)`.
#[allow(clippy::too_many_arguments)]
pub fn sc_prove_product(
    gens: &GeneratorSet,
    a: &MleTable,
    p_a: &GroupElement,
    b: &MleTable,
    p_b: &GroupElement,
    r1: &[FieldElement],
    r2: &[FieldElement],
    tr: &mut Transcript,
) -> Result<SumcheckProof> {
    let a_r = a.fix_prefix(r1)?;
    let b_r = b.fix_suffix(r2)?;
    if a_r.len() != b_r.len() {
        return Err(Error::LengthMismatch {
            expected: a_r.len(),
            found: b_r.len(),
        });
    }
    let w: FieldElement = a_r.evals().iter().zip(b_r.evals()).map(|(x, y)| x * y).sum();
    tr.prover_scalar(b"sc.w", &w);
    let (rounds, r, _) = prove_rounds(
        vec![a_r.into_evals(), b_r.into_evals()],
        PRODUCT_DEGREE,
        |t| t[0] * t[1],
        tr,
    )?;
    let open_a = pc_open(gens, p_a, a, &concat(r1, &r), tr)?;
    let open_b = pc_open(gens, p_b, b, &concat(&r, r2), tr)?;
    Ok(SumcheckProof {
        claimed_sum: w,
        rounds,
        openings: [open_a, open_b],
    })
}

/// Verifies a product-form proof and returns the claimed sum `w`.
#[allow(clippy::too_many_arguments)]
pub fn sc_verify_product(
    gens: &GeneratorSet,
    p_a: &GroupElement,
    p_b: &GroupElement,
    shape: ProductShape,
    r1: &[FieldElement],
    r2: &[FieldElement],
    proof: &SumcheckProof,
    tr: &mut Transcript,
) -> Result<FieldElement, VerifyError> {
    if r1.len() != shape.log_n || r2.len() != shape.log_k {
        return Err(VerifyError::Malformed("challenge length does not match shape"));
    }
    tr.prover_scalar(b"sc.w", &proof.claimed_sum);
    let (r, last) = verify_rounds(&proof.claimed_sum, &proof.rounds, shape.log_m, PRODUCT_DEGREE, tr)?;
    let a = pc_verify(gens, p_a, &concat(r1, &r), &proof.openings[0], tr)?;
    let b = pc_verify(gens, p_b, &concat(&r, r2), &proof.openings[1], tr)?;
    if last != a * b {
        return Err(VerifyError::SumcheckFinal);
    }
    Ok(proof.claimed_sum)
}

/// Proves `0 = sum_x eq(s, x) (a(x)^2 - y(x)^2)` and opens `a`, `y` at `r`.
pub fn sc_prove_equality(
    gens: &GeneratorSet,
    a: &MleTable,
    p_a: &GroupElement,
    y: &MleTable,
    p_y: &GroupElement,
    s: &[FieldElement],
    tr: &mut Transcript,
) -> Result<SumcheckProof> {
    if a.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: y.len(),
        });
    }
    if s.len() != a.num_vars() {
        return Err(Error::LengthMismatch {
            expected: a.num_vars(),
            found: s.len(),
        });
    }
    let eq = chi_vector(s);
    let f = |t: &[FieldElement]| t[0] * (t[1].square() - t[2].square());
    let w: FieldElement = eq
        .iter()
        .zip(a.evals().iter().zip(y.evals()))
        .map(|(e, (x, z))| f(&[*e, *x, *z]))
        .sum();
    tr.prover_scalar(b"sc.w", &w);
    let (rounds, r, _) = prove_rounds(
        vec![eq, a.evals().to_vec(), y.evals().to_vec()],
        EQUALITY_DEGREE,
        f,
        tr,
    )?;
    let open_a = pc_open(gens, p_a, a, &r, tr)?;
    let open_y = pc_open(gens, p_y, y, &r, tr)?;
    Ok(SumcheckProof {
        claimed_sum: w,
        rounds,
        openings: [open_a, open_y],
    })
}

pub fn sc_verify_equality(
    gens: &GeneratorSet,
    p_a: &GroupElement,
    p_y: &GroupElement,
    s: &[FieldElement],
    proof: &SumcheckProof,
    tr: &mut Transcript,
) -> Result<(), VerifyError> {
    tr.prover_scalar(b"sc.w", &proof.claimed_sum);
    if !proof.claimed_sum.is_zero() {
        return Err(VerifyError::NonZeroSum);
    }
    let (r, last) = verify_rounds(&proof.claimed_sum, &proof.rounds, s.len(), EQUALITY_DEGREE, tr)?;
    let a = pc_verify(gens, p_a, &r, &proof.openings[0], tr)?;
    let y = pc_verify(gens, p_y, &r, &proof.openings[1], tr)?;
    let e = eq_eval(s, &r).map_err(|_| VerifyError::Malformed("equality point length"))?;
    if last != e * (a.square() - y.square()) {
        return Err(VerifyError::SumcheckFinal);
    }
    Ok(())
}

impl Encode for SumcheckProof {
    fn encode(&self, w: &mut Writer) {
        w.put_scalar(&self.claimed_sum);
        w.put_u32(self.rounds.len() as u32);
        for m in &self.rounds {
            w.put_scalars(&m.coeffs);
        }
        for o in &self.openings {
            o.encode(w);
        }
    }
}

impl Decode for SumcheckProof {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let claimed_sum = r.get_scalar()?;
        let v = r.get_u32()? as usize;
        if v > 64 {
            return Err(Error::Decode(format!("{v} sum-check rounds")));
        }
        let rounds = (0..v)
            .map(|_| {
                let coeffs = r.get_scalars()?;
                if coeffs.is_empty() || coeffs.len() > 8 {
                    return Err(Error::Decode("bad sum-check round length".into()));
                }
                Ok(RoundMessage { coeffs })
            })
            .collect::<Result<_>>()?;
        let openings = [OpeningProof::decode(r)?, OpeningProof::decode(r)?];
        Ok(Self {
            claimed_sum,
            rounds,
            openings,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::mle::matrix_to_mle;
    use crate::transcript::Mode;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn fe(v: i64) -> FieldElement {
        FieldElement::from_i64(v)
    }

    fn rand_vec(rng: &mut ChaCha20Rng, n: usize) -> Vec<FieldElement> {
        (0..n).map(|_| FieldElement::random(rng)).collect()
    }

    fn prod_claim(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    fn run_product(a: Vec<FieldElement>, b: Vec<FieldElement>) -> (FieldElement, Vec<RoundMessage>, Result<(), VerifyError>) {
        let v = a.len().trailing_zeros() as usize;
        let w = prod_claim(&a, &b);
        let mut tr = Transcript::new(b"sc");
        let (rounds, r, finals) = prove_rounds(vec![a.clone(), b.clone()], 2, |t| t[0] * t[1], &mut tr).unwrap();
        let mut tr = Transcript::new(b"sc");
        let res = verify_rounds(&w, &rounds, v, 2, &mut tr).map(|(r2, last)| {
            assert_eq!(r, r2);
            let ea = MleTable::new(a).unwrap().evaluate(&r).unwrap();
            let eb = MleTable::new(b).unwrap().evaluate(&r).unwrap();
            assert_eq!(finals, vec![ea, eb]);
            assert_eq!(last, ea * eb);
        });
        (w, rounds, res)
    }

    #[test]
    fn interpolation_recovers_coefficients() {
        let coeffs = vec![fe(7), fe(-2), fe(5), fe(3)];
        let msg = RoundMessage { coeffs: coeffs.clone() };
        let ys: Vec<_> = (0..4).map(|x| msg.evaluate(&fe(x))).collect();
        assert_eq!(interpolate(&ys), coeffs);
        assert_eq!(msg.hypercube_sum(), fe(7) + fe(7 - 2 + 5 + 3));
    }

    #[test]
    fn product_examples() {
        let c = fe(9);
        let (w, rounds, res) = run_product(vec![c; 4], vec![c; 4]);
        assert_eq!(w, fe(4 * 81));
        assert_eq!(rounds.len(), 2);
        res.unwrap();

        let (w, rounds, res) = run_product(vec![fe(1), fe(2)], vec![fe(3), fe(4)]);
        assert_eq!(w, fe(11));
        assert_eq!(rounds.len(), 1);
        assert_eq!(rounds[0].coeffs.len(), 3);
        res.unwrap();

        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let a = rand_vec(&mut rng, 16);
        let b = rand_vec(&mut rng, 16);
        let brute = prod_claim(&a, &b);
        let (w, rounds, res) = run_product(a, b);
        assert_eq!(w, brute);
        assert_eq!(rounds.len(), 4);
        res.unwrap();
    }

    #[test]
    fn round_tampering_rejected() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let a = rand_vec(&mut rng, 16);
        let b = rand_vec(&mut rng, 16);
        let (w, rounds, _) = run_product(a.clone(), b.clone());
        let mut tr = Transcript::new(b"sc");
        assert_eq!(
            verify_rounds(&(w + FieldElement::ONE), &rounds, 4, 2, &mut tr),
            Err(VerifyError::SumcheckRound { round: 1 })
        );
        let ta = MleTable::new(a).unwrap();
        let tb = MleTable::new(b).unwrap();
        for i in 0..rounds.len() {
            for j in 0..3 {
                let mut bad = rounds.clone();
                bad[i].coeffs[j] += FieldElement::ONE;
                let mut tr = Transcript::new(b"sc");
                match verify_rounds(&w, &bad, 4, 2, &mut tr) {
                    Err(_) => {}
                    // only the last round can slip through to the final check
                    Ok((r, last)) => {
                        assert_eq!(i, 3);
                        assert_ne!(last, ta.evaluate(&r).unwrap() * tb.evaluate(&r).unwrap());
                    }
                }
            }
        }
        let mut tr = Transcript::new(b"sc");
        assert!(verify_rounds(&w, &rounds[..3], 4, 2, &mut tr).is_err());
        let mut long = rounds.clone();
        long[0].coeffs.push(FieldElement::ZERO);
        let mut tr = Transcript::new(b"sc");
        assert!(matches!(verify_rounds(&w, &long, 4, 2, &mut tr), Err(VerifyError::Malformed(_))));
    }

    fn matmul_fixture(n: usize, m: usize, k: usize, seed: u64) -> (GeneratorSet, MleTable, GroupElement, MleTable, GroupElement, ProductShape) {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let gens = GeneratorSet::derive(b"sc-test", (n * m).max(m * k)).unwrap();
        let a = Matrix::new(n, m, rand_vec(&mut rng, n * m)).unwrap();
        let b = Matrix::new(m, k, rand_vec(&mut rng, m * k)).unwrap();
        let ta = matrix_to_mle(&a).unwrap();
        let tb = matrix_to_mle(&b).unwrap();
        let pa = gens.commit(ta.evals()).unwrap();
        let pb = gens.commit(tb.evals()).unwrap();
        let shape = ProductShape {
            log_n: n.trailing_zeros() as usize,
            log_m: m.trailing_zeros() as usize,
            log_k: k.trailing_zeros() as usize,
        };
        (gens, ta, pa, tb, pb, shape)
    }

    #[test]
    fn committed_product_matches_matrix_entry() {
        for mode in [Mode::FiatShamir, Mode::Interactive { seed: 8 }] {
            let (gens, ta, pa, tb, pb, shape) = matmul_fixture(4, 8, 2, 3);
            let mut tr = Transcript::with_mode(b"sc", mode);
            let r1 = tr.challenge_vector(b"r1", shape.log_n);
            let r2 = tr.challenge_vector(b"r2", shape.log_k);
            let proof = sc_prove_product(&gens, &ta, &pa, &tb, &pb, &r1, &r2, &mut tr).unwrap();
            assert_eq!(proof.rounds.len(), 3);
            assert!(proof.rounds.iter().all(|m| m.coeffs.len() == 3));

            // w must be the MLE of C = AB at (r1, r2)
            let a = Matrix::new(4, 8, ta.evals().to_vec()).unwrap();
            let b = Matrix::new(8, 2, tb.evals().to_vec()).unwrap();
            let c = matrix_to_mle(&a.mul(&b).unwrap()).unwrap();
            assert_eq!(proof.claimed_sum, c.evaluate(&concat(&r1, &r2)).unwrap());

            let mut tr = Transcript::with_mode(b"sc", mode);
            let r1v = tr.challenge_vector(b"r1", shape.log_n);
            let r2v = tr.challenge_vector(b"r2", shape.log_k);
            let w = sc_verify_product(&gens, &pa, &pb, shape, &r1v, &r2v, &proof, &mut tr).unwrap();
            assert_eq!(w, proof.claimed_sum);
            assert_eq!(SumcheckProof::from_bytes(&proof.to_bytes()).unwrap(), proof);
        }
    }

    #[test]
    fn committed_product_rejects_wrong_commitment() {
        let (gens, ta, pa, tb, pb, shape) = matmul_fixture(2, 4, 2, 4);
        let mut tr = Transcript::new(b"sc");
        let r1 = tr.challenge_vector(b"r1", 1);
        let r2 = tr.challenge_vector(b"r2", 1);
        let proof = sc_prove_product(&gens, &ta, &pa, &tb, &pb, &r1, &r2, &mut tr).unwrap();
        let verify = |pa: &GroupElement, pf: &SumcheckProof| {
            let mut tr = Transcript::new(b"sc");
            let r1 = tr.challenge_vector(b"r1", 1);
            let r2 = tr.challenge_vector(b"r2", 1);
            sc_verify_product(&gens, pa, &pb, shape, &r1, &r2, pf, &mut tr)
        };
        verify(&pa, &proof).unwrap();
        assert!(verify(&(pa + gens.g[1]), &proof).is_err());
        let mut bad = proof.clone();
        bad.openings[1].claimed_value += FieldElement::ONE;
        assert!(verify(&pa, &bad).is_err());
    }

    fn equality_run(a: &[i64], y: &[i64], seed: u64) -> (FieldElement, Result<(), VerifyError>) {
        let n = a.len();
        let gens = GeneratorSet::derive(b"sc-eq", n).unwrap();
        let ta = MleTable::new(a.iter().map(|&v| fe(v)).collect()).unwrap();
        let ty = MleTable::new(y.iter().map(|&v| fe(v)).collect()).unwrap();
        let pa = gens.commit(ta.evals()).unwrap();
        let py = gens.commit(ty.evals()).unwrap();
        let v = ta.num_vars();
        let mut tr = Transcript::interactive(b"sc-eq", seed);
        let s = tr.challenge_vector(b"s", v);
        let proof = sc_prove_equality(&gens, &ta, &pa, &ty, &py, &s, &mut tr).unwrap();
        assert!(proof.rounds.iter().all(|m| m.coeffs.len() == 4));
        assert_eq!(proof.rounds.len(), v);
        let mut tr = Transcript::interactive(b"sc-eq", seed);
        let s = tr.challenge_vector(b"s", v);
        (proof.claimed_sum, sc_verify_equality(&gens, &pa, &py, &s, &proof, &mut tr))
    }

    #[test]
    fn equality_examples() {
        let (w, res) = equality_run(&[2, -3], &[2, 3], 1);
        assert!(w.is_zero());
        res.unwrap();
        let (w, res) = equality_run(&[2, -3], &[2, 4], 1);
        assert!(!w.is_zero());
        assert_eq!(res, Err(VerifyError::NonZeroSum));
        let (w, res) = equality_run(&[0; 8], &[0; 8], 2);
        assert!(w.is_zero());
        res.unwrap();
        let (_, res) = equality_run(&[5, -3, 0, 7, -1, 1, 2, -8], &[5, 3, 0, 7, 1, 1, 2, 8], 3);
        res.unwrap();
    }

    #[test]
    fn equality_rejects_forged_zero_claim() {
        // a prover that claims w = 0 for a nonzero sum must fail a round check
        let gens = GeneratorSet::derive(b"sc-eq", 4).unwrap();
        let ta = MleTable::new([2, -3, 1, 1].map(fe).to_vec()).unwrap();
        let ty = MleTable::new([2, 4, 1, 1].map(fe).to_vec()).unwrap();
        let pa = gens.commit(ta.evals()).unwrap();
        let py = gens.commit(ty.evals()).unwrap();
        let mut tr = Transcript::new(b"sc-eq");
        let s = tr.challenge_vector(b"s", 2);
        let mut proof = sc_prove_equality(&gens, &ta, &pa, &ty, &py, &s, &mut tr).unwrap();
        proof.claimed_sum = FieldElement::ZERO;
        let mut tr = Transcript::new(b"sc-eq");
        let s = tr.challenge_vector(b"s", 2);
        assert_eq!(
            sc_verify_equality(&gens, &pa, &py, &s, &proof, &mut tr),
            Err(VerifyError::SumcheckRound { round: 1 })
        );
    }
}
