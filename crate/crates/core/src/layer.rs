//! Layer protocols: matrix product with rounding, and ReLU.
//!
//! A matmul-round layer proves `C = A B` and `C' = R(C)` for committed
//! `A`, `B`. The product is checked with a sum-check on
//! `c(r1, r2) = sum_l a(r1, l) b(l, r2)`; rounding is checked with two
//! range proofs, one on the discarded part `E = C - 2^s C'` (shifted by
//! `2^(s-1)`) and one on `C'` itself (shifted by `2^(t+1)`). Both range
//! statements are derived homomorphically from `P_C` and `P_C'`.
//!
//! A ReLU layer commits `Y = |A|`, range-checks `Y`, shows `a^2 = y^2`
//! entrywise with an equality sum-check and outputs `B = (A + Y) / 2`,
//! which the verifier checks through `2 P_B = P_A + P_Y`.

use crate::error::{Error, Result, VerifyError};
use crate::field::{FieldElement, FixedPointParams};
use crate::group::{GeneratorSet, GroupElement};
use crate::matrix::Matrix;
use crate::mle::{matrix_to_mle, MleTable};
use crate::polycommit::{pc_open, pc_verify, OpeningProof};
use crate::rangeproof::{wrapped_bit_vectors, RangeLayout, RangeProof};
use crate::sumcheck::{sc_prove_equality, sc_prove_product, sc_verify_equality, sc_verify_product, ProductShape, SumcheckProof};
use crate::transcript::Transcript;
use crate::wire::{Decode, Encode, Reader, Writer};

/// `A` is `n x m`, `B` is `m x k`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct MatmulDims {
    pub n: usize,
    pub m: usize,
    pub k: usize,
}

impl MatmulDims {
    pub fn new(n: usize, m: usize, k: usize) -> Result<Self> {
        for d in [n, m, k] {
            if !d.is_power_of_two() {
                return Err(Error::NotPowerOfTwo(d));
            }
        }
        Ok(Self { n, m, k })
    }

    pub fn outputs(&self) -> usize {
        self.n * self.k
    }

    fn shape(&self) -> ProductShape {
        ProductShape {
            log_n: self.n.trailing_zeros() as usize,
            log_m: self.m.trailing_zeros() as usize,
            log_k: self.k.trailing_zeros() as usize,
        }
    }

    /// Generators needed to prove or verify a layer of this shape.
    pub fn generators_needed(&self, params: &FixedPointParams) -> usize {
        let slot = |bits: u32| (bits as usize).next_power_of_two();
        (self.n * self.m)
            .max(self.m * self.k)
            .max(self.outputs() * slot(params.frac_bits))
            .max(self.outputs() * slot(params.output_range_bits()))
    }
}

/// Generators needed for a ReLU over `len` values with a `bits`-wide range check.
pub fn relu_generators_needed(len: usize, bits: u32) -> usize {
    len * (bits as usize).next_power_of_two()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatmulRoundProof {
    pub p_a: GroupElement,
    pub p_b: GroupElement,
    pub p_c: GroupElement,
    pub p_cp: GroupElement,
    pub sumcheck: SumcheckProof,
    pub open_c: OpeningProof,
    pub range_e: RangeProof,
    pub range_cp: RangeProof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReluProof {
    pub p_y: GroupElement,
    pub p_b: GroupElement,
    pub range_y: RangeProof,
    pub sumcheck_eq: SumcheckProof,
}

/// Ways a cheating prover can deviate inside a matmul-round layer.
#[doc(hidden)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum MatmulForgery {
    /// Moves output entry `index` by `delta` and proves the range statements
    /// from the low bits of whatever values result.
    ShiftOutput { index: usize, delta: i64 },
    /// Lowers output entry `index` by one, so its remainder lands in
    /// `[2^(s-1), 3 * 2^(s-1))`, and proves that remainder with a bit vector
    /// holding a 2 whose weighted sum is exact.
    NonBitRemainder { index: usize },
}

/// Ways a cheating prover can deviate inside a ReLU layer.
#[doc(hidden)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ReluForgery {
    /// `y_i = a_i` instead of `|a_i|` (a negative `y_i` when `a_i < 0`).
    SignedMagnitude { index: usize },
    /// `y_i = |a_i| + delta`.
    WrongMagnitude { index: usize, delta: i64 },
    /// Outputs `b_i + 1` while keeping `Y` honest.
    WrongOutput { index: usize },
}

fn check_operands(m: &Matrix, params: &FixedPointParams, what: &str) -> Result<()> {
    let bound = params.operand_bound();
    for (i, x) in m.as_slice().iter().enumerate() {
        if !x.to_i128().is_some_and(|v| v.abs() < bound) {
            return Err(Error::FixedPointOverflow(format!(
                "{what} entry {i} exceeds the {}-bit operand range",
                params.int_bits + params.frac_bits
            )));
        }
    }
    Ok(())
}

fn shifted(values: &[FieldElement], by: FieldElement) -> Vec<FieldElement> {
    values.iter().map(|v| v + &by).collect()
}

fn range_e_commitment(gens: &GeneratorSet, params: &FixedPointParams, p_c: &GroupElement, p_cp: &GroupElement, nk: usize) -> GroupElement {
    let s = params.frac_bits;
    *p_c - *p_cp * FieldElement::pow2(s) + gens.g_sum(nk) * FieldElement::pow2(s - 1)
}

fn range_cp_commitment(gens: &GeneratorSet, params: &FixedPointParams, p_cp: &GroupElement, nk: usize) -> GroupElement {
    *p_cp + gens.g_sum(nk) * FieldElement::pow2(params.int_bits + 1)
}

/// Commits `A` and `B` and proves `C' = R(A B)`.
pub fn prove_matmul_round(
    gens: &GeneratorSet,
    a: &Matrix,
    b: &Matrix,
    params: &FixedPointParams,
    tr: &mut Transcript,
) -> Result<(Matrix, MatmulRoundProof)> {
    let p_a = gens.commit(a.as_slice())?;
    let p_b = gens.commit(b.as_slice())?;
    prove_matmul_round_committed(gens, a, &p_a, b, &p_b, params, tr)
}

/// As [`prove_matmul_round`] with the input commitments already known.
#[allow(clippy::too_many_arguments)]
pub fn prove_matmul_round_committed(
    gens: &GeneratorSet,
    a: &Matrix,
    p_a: &GroupElement,
    b: &Matrix,
    p_b: &GroupElement,
    params: &FixedPointParams,
    tr: &mut Transcript,
) -> Result<(Matrix, MatmulRoundProof)> {
    matmul_inner(gens, a, p_a, b, p_b, params, None, tr)
}

#[doc(hidden)]
#[allow(clippy::too_many_arguments)]
pub fn prove_matmul_round_forged(
    gens: &GeneratorSet,
    a: &Matrix,
    b: &Matrix,
    params: &FixedPointParams,
    forgery: MatmulForgery,
    tr: &mut Transcript,
) -> Result<(Matrix, MatmulRoundProof)> {
    let p_a = gens.commit(a.as_slice())?;
    let p_b = gens.commit(b.as_slice())?;
    matmul_inner(gens, a, &p_a, b, &p_b, params, Some(forgery), tr)
}

#[allow(clippy::too_many_arguments)]
fn matmul_inner(
    gens: &GeneratorSet,
    a: &Matrix,
    p_a: &GroupElement,
    b: &Matrix,
    p_b: &GroupElement,
    params: &FixedPointParams,
    forgery: Option<MatmulForgery>,
    tr: &mut Transcript,
) -> Result<(Matrix, MatmulRoundProof)> {
    if a.cols() != b.rows() {
        return Err(Error::LengthMismatch {
            expected: a.cols(),
            found: b.rows(),
        });
    }
    let dims = MatmulDims::new(a.rows(), a.cols(), b.cols())?;
    gens.require(dims.generators_needed(params))?;
    check_operands(a, params, "left operand")?;
    check_operands(b, params, "right operand")?;

    let c = a.mul(b)?;
    let s = params.frac_bits;
    let mut cp = Vec::with_capacity(c.len());
    for (i, x) in c.as_slice().iter().enumerate() {
        let (q, _) = x.round_with_remainder(params)?;
        let ok = q.to_i128().is_some_and(|v| v >= -params.output_bound() && v < params.output_bound());
        if !ok && forgery.is_none() {
            return Err(Error::FixedPointOverflow(format!(
                "rounded output entry {i} is outside [-2^{t}, 2^{t})",
                t = params.int_bits + 1
            )));
        }
        cp.push(q);
    }
    match forgery {
        Some(MatmulForgery::ShiftOutput { index, delta }) => cp[index] += FieldElement::from_i64(delta),
        Some(MatmulForgery::NonBitRemainder { index }) => cp[index] -= FieldElement::ONE,
        None => {}
    }
    let two_s = FieldElement::pow2(s);
    let half = FieldElement::pow2(s - 1);
    let e_shift: Vec<FieldElement> = c.as_slice().iter().zip(&cp).map(|(x, q)| *x - two_s * q + half).collect();
    let cp_shift = shifted(&cp, FieldElement::pow2(params.int_bits + 1));
    let cp = Matrix::new(dims.n, dims.k, cp)?;

    tr.bind_point(b"mm.PA", p_a);
    tr.bind_point(b"mm.PB", p_b);
    let c_tbl = matrix_to_mle(&c)?;
    let p_c = gens.commit(c.as_slice())?;
    tr.prover_point(b"mm.PC", &p_c);
    let shape = dims.shape();
    let r1 = tr.challenge_vector(b"mm.r1", shape.log_n);
    let r2 = tr.challenge_vector(b"mm.r2", shape.log_k);

    let sumcheck = sc_prove_product(gens, &matrix_to_mle(a)?, p_a, &matrix_to_mle(b)?, p_b, &r1, &r2, tr)?;
    let r12: Vec<FieldElement> = r1.iter().chain(&r2).copied().collect();
    let open_c = pc_open(gens, &p_c, &c_tbl, &r12, tr)?;

    let p_cp = gens.commit(cp.as_slice())?;
    tr.prover_point(b"mm.PCp", &p_cp);
    let nk = dims.outputs();
    let pe = range_e_commitment(gens, params, &p_c, &p_cp, nk);
    let pcp = range_cp_commitment(gens, params, &p_cp, nk);
    let out_bits = params.output_range_bits();

    let (range_e, range_cp) = match forgery {
        None => (
            RangeProof::prove(gens, &e_shift, s, &pe, tr)?,
            RangeProof::prove(gens, &cp_shift, out_bits, &pcp, tr)?,
        ),
        Some(f) => {
            let layout = RangeLayout::new(nk, s)?;
            let (mut a_l, _) = wrapped_bit_vectors(&e_shift, &layout);
            if let MatmulForgery::NonBitRemainder { index } = f {
                // value in [2^s, 2^(s+1)): low bits of value - 2^s plus 2 on the top bit
                let base = e_shift[index] - two_s;
                let (bits, _) = wrapped_bit_vectors(&[base], &RangeLayout::new(1, s)?);
                let slot = index * layout.slot;
                a_l[slot..slot + layout.slot].copy_from_slice(&bits[..layout.slot]);
                a_l[slot + s as usize - 1] += FieldElement::from_u64(2);
            }
            let a_r = a_l.iter().map(|x| x - &FieldElement::ONE).collect();
            let range_e = RangeProof::prove_with_witness(gens, &e_shift, s, a_l, a_r, &pe, tr)?;
            let cp_layout = RangeLayout::new(nk, out_bits)?;
            let (l, r) = wrapped_bit_vectors(&cp_shift, &cp_layout);
            let range_cp = RangeProof::prove_with_witness(gens, &cp_shift, out_bits, l, r, &pcp, tr)?;
            (range_e, range_cp)
        }
    };

    Ok((
        cp,
        MatmulRoundProof {
            p_a: *p_a,
            p_b: *p_b,
            p_c,
            p_cp,
            sumcheck,
            open_c,
            range_e,
            range_cp,
        },
    ))
}

/// Verifies a matmul-round layer against the expected input commitments and
/// returns the commitment to the rounded output.
pub fn verify_matmul_round(
    gens: &GeneratorSet,
    p_a: &GroupElement,
    p_b: &GroupElement,
    dims: MatmulDims,
    params: &FixedPointParams,
    proof: &MatmulRoundProof,
    tr: &mut Transcript,
) -> Result<GroupElement, VerifyError> {
    if proof.p_a != *p_a {
        return Err(VerifyError::Mismatch("left input commitment"));
    }
    if proof.p_b != *p_b {
        return Err(VerifyError::Mismatch("right input commitment"));
    }
    for d in [dims.n, dims.m, dims.k] {
        if !d.is_power_of_two() {
            return Err(VerifyError::Malformed("layer dimension is not a power of two"));
        }
    }
    if gens.tau() < dims.generators_needed(params) {
        return Err(VerifyError::NotEnoughGenerators);
    }
    tr.bind_point(b"mm.PA", p_a);
    tr.bind_point(b"mm.PB", p_b);
    tr.prover_point(b"mm.PC", &proof.p_c);
    let shape = dims.shape();
    let r1 = tr.challenge_vector(b"mm.r1", shape.log_n);
    let r2 = tr.challenge_vector(b"mm.r2", shape.log_k);

    let w = sc_verify_product(gens, p_a, p_b, shape, &r1, &r2, &proof.sumcheck, tr).map_err(|e| e.within("sumcheck"))?;
    let r12: Vec<FieldElement> = r1.iter().chain(&r2).copied().collect();
    let c_at = pc_verify(gens, &proof.p_c, &r12, &proof.open_c, tr).map_err(|e| e.within("open_c"))?;
    if c_at != w {
        return Err(VerifyError::Mismatch("opened product value").within("open_c"));
    }

    tr.prover_point(b"mm.PCp", &proof.p_cp);
    let nk = dims.outputs();
    let pe = range_e_commitment(gens, params, &proof.p_c, &proof.p_cp, nk);
    proof
        .range_e
        .verify(gens, &pe, nk, params.frac_bits, tr)
        .map_err(|e| e.within("range_e"))?;
    let pcp = range_cp_commitment(gens, params, &proof.p_cp, nk);
    proof
        .range_cp
        .verify(gens, &pcp, nk, params.output_range_bits(), tr)
        .map_err(|e| e.within("range_cp"))?;
    Ok(proof.p_cp)
}

/// Proves `B = ReLU(A)` for `A` committed as `p_a`, range-checking `|A|`
/// with `bits` bits.
pub fn prove_relu(
    gens: &GeneratorSet,
    a: &[FieldElement],
    p_a: &GroupElement,
    bits: u32,
    tr: &mut Transcript,
) -> Result<(Vec<FieldElement>, ReluProof)> {
    relu_inner(gens, a, p_a, bits, None, tr)
}

#[doc(hidden)]
pub fn prove_relu_forged(
    gens: &GeneratorSet,
    a: &[FieldElement],
    p_a: &GroupElement,
    bits: u32,
    forgery: ReluForgery,
    tr: &mut Transcript,
) -> Result<(Vec<FieldElement>, ReluProof)> {
    relu_inner(gens, a, p_a, bits, Some(forgery), tr)
}

fn relu_inner(
    gens: &GeneratorSet,
    a: &[FieldElement],
    p_a: &GroupElement,
    bits: u32,
    forgery: Option<ReluForgery>,
    tr: &mut Transcript,
) -> Result<(Vec<FieldElement>, ReluProof)> {
    let len = a.len();
    if !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    gens.require(relu_generators_needed(len, bits))?;
    let mut y = Vec::with_capacity(len);
    for (i, x) in a.iter().enumerate() {
        let v = x
            .to_i128()
            .filter(|v| v.unsigned_abs() < 1u128 << bits)
            .ok_or_else(|| Error::FixedPointOverflow(format!("ReLU input {i} does not fit in {bits} bits")))?;
        y.push(FieldElement::from_i128(v.abs()));
    }
    match forgery {
        Some(ReluForgery::SignedMagnitude { index }) => y[index] = a[index],
        Some(ReluForgery::WrongMagnitude { index, delta }) => y[index] += FieldElement::from_i64(delta),
        _ => {}
    }
    let inv2 = FieldElement::from_u64(2).invert()?;
    let mut out: Vec<FieldElement> = a.iter().zip(&y).map(|(x, v)| (*x + v) * inv2).collect();
    if let Some(ReluForgery::WrongOutput { index }) = forgery {
        out[index] += FieldElement::ONE;
    }

    tr.bind_point(b"relu.PA", p_a);
    let p_y = gens.commit(&y)?;
    tr.prover_point(b"relu.PY", &p_y);
    let range_y = match forgery {
        None | Some(ReluForgery::WrongOutput { .. }) => RangeProof::prove(gens, &y, bits, &p_y, tr)?,
        Some(_) => {
            let (l, r) = wrapped_bit_vectors(&y, &RangeLayout::new(len, bits)?);
            RangeProof::prove_with_witness(gens, &y, bits, l, r, &p_y, tr)?
        }
    };
    let p_b = gens.commit(&out)?;
    tr.prover_point(b"relu.PB", &p_b);
    let s = tr.challenge_vector(b"relu.s", len.trailing_zeros() as usize);
    let sumcheck_eq = sc_prove_equality(gens, &MleTable::new(a.to_vec())?, p_a, &MleTable::new(y)?, &p_y, &s, tr)?;
    Ok((
        out,
        ReluProof {
            p_y,
            p_b,
            range_y,
            sumcheck_eq,
        },
    ))
}

/// Verifies a ReLU layer over `len` inputs committed as `p_a` and returns
/// the output commitment.
pub fn verify_relu(
    gens: &GeneratorSet,
    p_a: &GroupElement,
    len: usize,
    bits: u32,
    proof: &ReluProof,
    tr: &mut Transcript,
) -> Result<GroupElement, VerifyError> {
    if !len.is_power_of_two() {
        return Err(VerifyError::Malformed("ReLU length is not a power of two"));
    }
    if gens.tau() < relu_generators_needed(len, bits) {
        return Err(VerifyError::NotEnoughGenerators);
    }
    tr.bind_point(b"relu.PA", p_a);
    tr.prover_point(b"relu.PY", &proof.p_y);
    proof
        .range_y
        .verify(gens, &proof.p_y, len, bits, tr)
        .map_err(|e| e.within("range_y"))?;
    tr.prover_point(b"relu.PB", &proof.p_b);
    let s = tr.challenge_vector(b"relu.s", len.trailing_zeros() as usize);
    sc_verify_equality(gens, p_a, &proof.p_y, &s, &proof.sumcheck_eq, tr).map_err(|e| e.within("sumcheck_eq"))?;
    if proof.p_b + proof.p_b != *p_a + proof.p_y {
        return Err(VerifyError::Mismatch("ReLU output commitment"));
    }
    Ok(proof.p_b)
}

/// One layer's proof inside an inference proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LayerProof {
    MatmulRound(MatmulRoundProof),
    Relu(ReluProof),
}

impl LayerProof {
    /// Commitment to this layer's output.
    pub fn output_commitment(&self) -> GroupElement {
        match self {
            LayerProof::MatmulRound(p) => p.p_cp,
            LayerProof::Relu(p) => p.p_b,
        }
    }
}

impl Encode for MatmulRoundProof {
    fn encode(&self, w: &mut Writer) {
        for p in [&self.p_a, &self.p_b, &self.p_c, &self.p_cp] {
            w.put_point(p);
        }
        self.sumcheck.encode(w);
        self.open_c.encode(w);
        self.range_e.encode(w);
        self.range_cp.encode(w);
    }
}

impl Decode for MatmulRoundProof {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        Ok(Self {
            p_a: r.get_point()?,
            p_b: r.get_point()?,
            p_c: r.get_point()?,
            p_cp: r.get_point()?,
            sumcheck: SumcheckProof::decode(r)?,
            open_c: OpeningProof::decode(r)?,
            range_e: RangeProof::decode(r)?,
            range_cp: RangeProof::decode(r)?,
        })
    }
}

impl Encode for ReluProof {
    fn encode(&self, w: &mut Writer) {
        w.put_point(&self.p_y);
        w.put_point(&self.p_b);
        self.range_y.encode(w);
        self.sumcheck_eq.encode(w);
    }
}

impl Decode for ReluProof {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        Ok(Self {
            p_y: r.get_point()?,
            p_b: r.get_point()?,
            range_y: RangeProof::decode(r)?,
            sumcheck_eq: SumcheckProof::decode(r)?,
        })
    }
}

impl Encode for LayerProof {
    fn encode(&self, w: &mut Writer) {
        match self {
            LayerProof::MatmulRound(p) => {
                w.put_u8(0);
                p.encode(w);
            }
            LayerProof::Relu(p) => {
                w.put_u8(1);
                p.encode(w);
            }
        }
    }
}

impl Decode for LayerProof {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        match r.get_u8()? {
            0 => Ok(LayerProof::MatmulRound(MatmulRoundProof::decode(r)?)),
            1 => Ok(LayerProof::Relu(ReluProof::decode(r)?)),
            t => Err(Error::Decode(format!("unknown layer proof tag {t}"))),
        }
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

    fn params(s: u32, t: u32) -> FixedPointParams {
        FixedPointParams::new(s, t).unwrap()
    }

    fn run_matmul(
        gens: &GeneratorSet,
        a: &Matrix,
        b: &Matrix,
        p: &FixedPointParams,
        forgery: Option<MatmulForgery>,
        mode: Mode,
    ) -> (Matrix, Result<GroupElement, VerifyError>) {
        let mut tr = Transcript::with_mode(b"layer", mode);
        let (cp, proof) = match forgery {
            None => prove_matmul_round(gens, a, b, p, &mut tr).unwrap(),
            Some(f) => prove_matmul_round_forged(gens, a, b, p, f, &mut tr).unwrap(),
        };
        assert_eq!(MatmulRoundProof::from_bytes(&proof.to_bytes()).unwrap(), proof);
        let dims = MatmulDims::new(a.rows(), a.cols(), b.cols()).unwrap();
        let mut tr = Transcript::with_mode(b"layer", mode);
        let pa = gens.commit(a.as_slice()).unwrap();
        let pb = gens.commit(b.as_slice()).unwrap();
        (cp, verify_matmul_round(gens, &pa, &pb, dims, p, &proof, &mut tr))
    }

    fn random_operands(rng: &mut ChaCha20Rng, n: usize, m: usize, k: usize, bound: i64) -> (Matrix, Matrix) {
        let mut gen = |r, c| Matrix::from_fn(r, c, |_, _| fe(rng.gen_range(-bound..=bound)));
        let a = gen(n, m);
        let b = gen(m, k);
        (a, b)
    }

    #[test]
    fn one_by_one_example() {
        let p = params(2, 3);
        let gens = GeneratorSet::derive(b"layer", 8).unwrap();
        let a = Matrix::from_i64(1, 1, &[6]).unwrap();
        let (cp, res) = run_matmul(&gens, &a, &a, &p, None, Mode::FiatShamir);
        assert_eq!(cp.as_slice(), &[fe(9)]);
        assert_eq!(p.decode(&cp.get(0, 0)).unwrap(), 2.25);
        res.unwrap();
    }

    #[test]
    fn identity_left_operand() {
        let p = params(4, 6);
        let gens = GeneratorSet::derive(b"layer", 64).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let id = Matrix::from_fn(4, 4, |i, j| if i == j { FieldElement::pow2(4) } else { FieldElement::ZERO });
        let b = Matrix::from_fn(4, 2, |_, _| fe(rng.gen_range(-100..100)));
        let (cp, res) = run_matmul(&gens, &id, &b, &p, None, Mode::Interactive { seed: 1 });
        assert_eq!(cp, b);
        res.unwrap();
    }

    #[test]
    fn rounding_law_and_completeness() {
        let p = params(8, 6);
        let gens = GeneratorSet::derive(b"layer", 256).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        for (n, m, k) in [(2, 2, 2), (4, 4, 4), (2, 8, 1), (8, 4, 2)] {
            // |C| <= m b^2 stays below 2^(t+s+1), so rounding cannot overflow
            let bound = (((1i64 << (p.int_bits + p.frac_bits + 1)) / m as i64) as f64).sqrt() as i64 - 1;
            let (a, b) = random_operands(&mut rng, n, m, k, bound);
            let (cp, res) = run_matmul(&gens, &a, &b, &p, None, Mode::FiatShamir);
            res.unwrap();
            let c = a.mul(&b).unwrap();
            for (x, q) in c.as_slice().iter().zip(cp.as_slice()) {
                assert_eq!(x.round(&p).unwrap(), *q);
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        let p = params(2, 2);
        let gens = GeneratorSet::derive(b"layer", 64).unwrap();
        let a = Matrix::from_i64(1, 1, &[15]).unwrap();
        let mut tr = Transcript::new(b"layer");
        assert!(matches!(
            prove_matmul_round(&gens, &a, &a, &p, &mut tr),
            Err(Error::FixedPointOverflow(_))
        ));
        let big = Matrix::from_i64(1, 1, &[16]).unwrap();
        assert!(matches!(
            prove_matmul_round(&gens, &big, &a, &p, &mut tr),
            Err(Error::FixedPointOverflow(_))
        ));
        let odd = Matrix::from_i64(1, 3, &[1, 1, 1]).unwrap();
        let col = Matrix::from_i64(3, 1, &[1, 1, 1]).unwrap();
        assert_eq!(prove_matmul_round(&gens, &odd, &col, &p, &mut tr).unwrap_err(), Error::NotPowerOfTwo(3));
    }

    #[test]
    fn forged_outputs_rejected_in_range_e() {
        let p = params(4, 4);
        let gens = GeneratorSet::derive(b"layer", 256).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let (a, b) = random_operands(&mut rng, 4, 4, 4, 5);
        for f in [
            MatmulForgery::ShiftOutput { index: 5, delta: 1 },
            MatmulForgery::ShiftOutput { index: 0, delta: -1 },
            MatmulForgery::NonBitRemainder { index: 9 },
        ] {
            let (_, res) = run_matmul(&gens, &a, &b, &p, Some(f), Mode::FiatShamir);
            assert_eq!(res.unwrap_err().part(), Some("range_e"), "{f:?}");
        }
    }

    #[test]
    fn substituted_commitments_rejected() {
        let p = params(4, 4);
        let gens = GeneratorSet::derive(b"layer", 256).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let (a, b) = random_operands(&mut rng, 4, 4, 2, 5);
        let mut tr = Transcript::new(b"layer");
        let (_, proof) = prove_matmul_round(&gens, &a, &b, &p, &mut tr).unwrap();
        let dims = MatmulDims::new(4, 4, 2).unwrap();
        let check = |pf: &MatmulRoundProof| {
            let mut tr = Transcript::new(b"layer");
            verify_matmul_round(&gens, &proof.p_a, &proof.p_b, dims, &p, pf, &mut tr)
        };
        assert_eq!(check(&proof).unwrap(), proof.p_cp);
        let mut bad = proof.clone();
        bad.p_c = bad.p_c + gens.g[3];
        assert!(check(&bad).is_err());
        let mut bad = proof.clone();
        bad.p_a = bad.p_a + gens.g[0];
        assert_eq!(check(&bad), Err(VerifyError::Mismatch("left input commitment")));
        let mut bad = proof.clone();
        bad.range_cp = bad.range_e.clone();
        assert_eq!(check(&bad).unwrap_err().part(), Some("range_cp"));
        let mut bad = proof.clone();
        bad.sumcheck.rounds[0].coeffs[1] += FieldElement::ONE;
        assert_eq!(check(&bad).unwrap_err().part(), Some("sumcheck"));
        let mut bad = proof.clone();
        bad.open_c.claimed_value += FieldElement::ONE;
        assert_eq!(check(&bad).unwrap_err().part(), Some("open_c"));
    }

    fn run_relu(a: &[i64], forgery: Option<ReluForgery>) -> (Vec<FieldElement>, Result<GroupElement, VerifyError>) {
        let bits = 6;
        let gens = GeneratorSet::derive(b"relu", relu_generators_needed(a.len(), bits)).unwrap();
        let a: Vec<_> = a.iter().map(|&v| fe(v)).collect();
        let p_a = gens.commit(&a).unwrap();
        let mut tr = Transcript::new(b"relu");
        let (b, proof) = match forgery {
            None => prove_relu(&gens, &a, &p_a, bits, &mut tr).unwrap(),
            Some(f) => prove_relu_forged(&gens, &a, &p_a, bits, f, &mut tr).unwrap(),
        };
        assert_eq!(ReluProof::from_bytes(&proof.to_bytes()).unwrap(), proof);
        let mut tr = Transcript::new(b"relu");
        (b, verify_relu(&gens, &p_a, a.len(), bits, &proof, &mut tr))
    }

    #[test]
    fn relu_example_and_forgeries() {
        let (b, res) = run_relu(&[5, -3, 0, 7], None);
        assert_eq!(b, [5, 0, 0, 7].map(fe).to_vec());
        res.unwrap();
        let (_, res) = run_relu(&[5, -3, 0, 7], Some(ReluForgery::SignedMagnitude { index: 1 }));
        assert_eq!(res.unwrap_err().part(), Some("range_y"));
        let (_, res) = run_relu(&[5, -3, 0, 7], Some(ReluForgery::WrongMagnitude { index: 1, delta: 1 }));
        assert_eq!(res.unwrap_err().part(), Some("sumcheck_eq"));
        let (_, res) = run_relu(&[5, -3, 0, 7], Some(ReluForgery::WrongOutput { index: 2 }));
        assert_eq!(res, Err(VerifyError::Mismatch("ReLU output commitment")));
    }

    #[test]
    fn layer_proof_tagging() {
        let gens = GeneratorSet::derive(b"relu", 64).unwrap();
        let a = vec![fe(1), fe(-1)];
        let p_a = gens.commit(&a).unwrap();
        let mut tr = Transcript::new(b"relu");
        let (_, proof) = prove_relu(&gens, &a, &p_a, 4, &mut tr).unwrap();
        let lp = LayerProof::Relu(proof);
        let bytes = lp.to_bytes();
        assert_eq!(bytes[0], 1);
        assert_eq!(LayerProof::from_bytes(&bytes).unwrap(), lp);
        let mut bad = bytes.clone();
        bad[0] = 7;
        assert!(LayerProof::from_bytes(&bad).is_err());
    }
}
