//! Inference proofs for feed-forward networks.
//!
//! A model is a list of linear layers (a weight matrix applied to the
//! current column vector, then rounded) and ReLU layers. Every dimension is
//! padded to a power of two with zeros, which leaves products, rounding and
//! ReLU unchanged and does not alter any commitment.
//!
//! Each layer proof starts from the commitment the previous layer produced,
//! so the verifier only ever sees commitments to intermediate activations.
//! The verifier knows the input, the claimed output and commitments to the
//! weights.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result, VerifyError};
use crate::field::{FieldElement, FixedPointParams};
use crate::group::{GeneratorSet, GroupElement};
use crate::layer::{
    prove_matmul_round_committed, prove_relu, relu_generators_needed, verify_matmul_round, verify_relu, LayerProof,
    MatmulDims,
};
use crate::matrix::Matrix;
use crate::transcript::Transcript;
use crate::wire::{Decode, Encode, Reader, Writer};

/// Transcript domain for inference proofs.
pub const INFERENCE_DOMAIN: &[u8] = b"range-arith/inference/v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Layer {
    /// `d_out x d_in` weights in fixed-point encoding.
    Linear(Matrix),
    Relu,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec {
    pub params: FixedPointParams,
    pub layers: Vec<Layer>,
}

impl ModelSpec {
    /// Validates layer dimensions and weight encodings.
    pub fn new(params: FixedPointParams, layers: Vec<Layer>) -> Result<Self> {
        let spec = Self { params, layers };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let mut dim: Option<usize> = None;
        let bound = self.params.operand_bound();
        for (i, layer) in self.layers.iter().enumerate() {
            if let Layer::Linear(w) = layer {
                if w.is_empty() {
                    return Err(Error::Layer {
                        layer: i,
                        reason: "empty weight matrix".into(),
                    });
                }
                if let Some(d) = dim.filter(|d| *d != w.cols()) {
                    return Err(Error::Layer {
                        layer: i,
                        reason: format!("expects {} inputs, previous layer yields {d}", w.cols()),
                    });
                }
                if let Some(j) = w.as_slice().iter().position(|x| !x.to_i128().is_some_and(|v| v.abs() < bound)) {
                    return Err(Error::Layer {
                        layer: i,
                        reason: format!("weight {j} is not a valid fixed-point encoding"),
                    });
                }
                if !self.params.supports_inner_dim(w.cols()) {
                    return Err(Error::Layer {
                        layer: i,
                        reason: format!("inner dimension {} can wrap the field", w.cols()),
                    });
                }
                dim = Some(w.rows());
            }
        }
        if dim.is_none() {
            return Err(Error::InvalidParams("model has no linear layer".into()));
        }
        Ok(())
    }

    /// Length of the (unpadded) input vector.
    pub fn input_dim(&self) -> usize {
        self.layers
            .iter()
            .find_map(|l| match l {
                Layer::Linear(w) => Some(w.cols()),
                Layer::Relu => None,
            })
            .unwrap_or(0)
    }

    /// Length of the (unpadded) output vector.
    pub fn output_dim(&self) -> usize {
        self.layers
            .iter()
            .rev()
            .find_map(|l| match l {
                Layer::Linear(w) => Some(w.rows()),
                Layer::Relu => None,
            })
            .unwrap_or(0)
    }

    pub fn num_parameters(&self) -> usize {
        self.linear_layers().map(Matrix::len).sum()
    }

    fn linear_layers(&self) -> impl Iterator<Item = &Matrix> {
        self.layers.iter().filter_map(|l| match l {
            Layer::Linear(w) => Some(w),
            Layer::Relu => None,
        })
    }

    /// Padded width of the activation vector entering each layer, plus the
    /// final width.
    fn widths(&self) -> Vec<usize> {
        let mut out = vec![self.input_dim().next_power_of_two()];
        for layer in &self.layers {
            let last = *out.last().unwrap();
            out.push(match layer {
                Layer::Linear(w) => w.rows().next_power_of_two(),
                Layer::Relu => last,
            });
        }
        out
    }

    /// Bit width of the range check on `|A|` in ReLU layer `i`.
    ///
    /// After a rounded layer the inputs satisfy `|a| <= 2^(t+1)`; a ReLU
    /// applied directly to the model input sees full-width operands.
    pub fn relu_bits(&self, i: usize) -> u32 {
        if self.layers[..i].iter().any(|l| matches!(l, Layer::Linear(_))) {
            self.params.chained_relu_bits()
        } else {
            self.params.standalone_relu_bits()
        }
    }

    /// Size of the generator set needed to prove or verify this model.
    pub fn generators_needed(&self) -> usize {
        let widths = self.widths();
        self.layers
            .iter()
            .enumerate()
            .map(|(i, layer)| match layer {
                Layer::Linear(w) => MatmulDims {
                    n: w.rows().next_power_of_two(),
                    m: w.cols().next_power_of_two(),
                    k: 1,
                }
                .generators_needed(&self.params),
                Layer::Relu => relu_generators_needed(widths[i], self.relu_bits(i)),
            })
            .max()
            .unwrap_or(1)
    }
}

/// Commitments to every linear layer's padded weights, in layer order.
pub fn register_model(gens: &GeneratorSet, spec: &ModelSpec) -> Result<Vec<GroupElement>> {
    spec.validate()?;
    spec.linear_layers().map(|w| gens.commit(w.pad_to_pow2().as_slice())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InferenceProof {
    pub input_commitment: GroupElement,
    pub output_commitment: GroupElement,
    pub output: Vec<FieldElement>,
    pub layer_proofs: Vec<LayerProof>,
}

fn bind_model(tr: &mut Transcript, spec: &ModelSpec, weights: &[GroupElement], x: &GroupElement, y: &GroupElement) {
    tr.bind_u64(b"nn.s", spec.params.frac_bits as u64);
    tr.bind_u64(b"nn.t", spec.params.int_bits as u64);
    tr.bind_u64(b"nn.layers", spec.layers.len() as u64);
    let mut w = weights.iter();
    for layer in &spec.layers {
        match layer {
            Layer::Linear(m) => {
                tr.bind_u64(b"nn.rows", m.rows() as u64);
                tr.bind_u64(b"nn.cols", m.cols() as u64);
                if let Some(p) = w.next() {
                    tr.bind_point(b"nn.W", p);
                }
            }
            Layer::Relu => tr.bind(b"nn.relu", &[]),
        }
    }
    tr.bind_point(b"nn.x", x);
    tr.bind_point(b"nn.y", y);
}

fn check_input(spec: &ModelSpec, x: &[FieldElement]) -> Result<()> {
    if x.len() != spec.input_dim() {
        return Err(Error::LengthMismatch {
            expected: spec.input_dim(),
            found: x.len(),
        });
    }
    let bound = spec.params.operand_bound();
    if let Some(i) = x.iter().position(|v| !v.to_i128().is_some_and(|v| v.abs() < bound)) {
        return Err(Error::FixedPointOverflow(format!("input entry {i} is not a valid fixed-point encoding")));
    }
    Ok(())
}

fn pad(v: &[FieldElement], n: usize) -> Vec<FieldElement> {
    let mut out = v.to_vec();
    out.resize(n, FieldElement::ZERO);
    out
}

/// Plaintext forward pass in the field, used by the prover.
fn forward(spec: &ModelSpec, x: &[FieldElement]) -> Result<Vec<Vec<FieldElement>>> {
    let widths = spec.widths();
    let mut acts = vec![pad(x, widths[0])];
    for (i, layer) in spec.layers.iter().enumerate() {
        let cur = acts.last().unwrap();
        let next = match layer {
            Layer::Linear(w) => {
                let c = w.pad_to_pow2().mul(&Matrix::column(cur.clone()))?;
                c.as_slice()
                    .iter()
                    .map(|v| {
                        let q = v.round(&spec.params)?;
                        let b = spec.params.output_bound();
                        if q.to_i128().is_some_and(|q| q >= -b && q < b) {
                            Ok(q)
                        } else {
                            Err(Error::Layer {
                                layer: i,
                                reason: "rounded output overflows the fixed-point range".into(),
                            })
                        }
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            Layer::Relu => cur
                .iter()
                .map(|v| if v.to_i128().is_some_and(|v| v < 0) { FieldElement::ZERO } else { *v })
                .collect(),
        };
        acts.push(next);
    }
    Ok(acts)
}

/// Runs the model on `x` and proves every layer.
pub fn prove_inference(
    gens: &GeneratorSet,
    spec: &ModelSpec,
    x: &[FieldElement],
    tr: &mut Transcript,
) -> Result<(Vec<FieldElement>, InferenceProof)> {
    check_input(spec, x)?;
    gens.require(spec.generators_needed())?;
    let weights = register_model(gens, spec)?;
    // an early plaintext pass names the failing layer before any proving
    let acts = forward(spec, x)?;
    let y: Vec<FieldElement> = acts.last().unwrap()[..spec.output_dim()].to_vec();

    let p_x = gens.commit(x)?;
    let p_y = gens.commit(&y)?;
    bind_model(tr, spec, &weights, &p_x, &p_y);

    let widths = spec.widths();
    let mut w_iter = weights.iter().zip(spec.linear_layers());
    let mut current = pad(x, widths[0]);
    let mut p_cur = p_x;
    let mut layer_proofs = Vec::with_capacity(spec.layers.len());
    for (i, layer) in spec.layers.iter().enumerate() {
        let wrap = |e: Error| Error::Layer {
            layer: i,
            reason: e.to_string(),
        };
        let proof = match layer {
            Layer::Linear(_) => {
                let (p_w, w) = w_iter.next().expect("one commitment per linear layer");
                let input = Matrix::column(current);
                let (out, proof) =
                    prove_matmul_round_committed(gens, &w.pad_to_pow2(), p_w, &input, &p_cur, &spec.params, tr)
                        .map_err(wrap)?;
                current = out.into_vec();
                LayerProof::MatmulRound(proof)
            }
            Layer::Relu => {
                let (out, proof) = prove_relu(gens, &current, &p_cur, spec.relu_bits(i), tr).map_err(wrap)?;
                current = out;
                LayerProof::Relu(proof)
            }
        };
        debug_assert_eq!(current, acts[i + 1]);
        p_cur = proof.output_commitment();
        layer_proofs.push(proof);
    }
    Ok((
        y.clone(),
        InferenceProof {
            input_commitment: p_x,
            output_commitment: p_y,
            output: y,
            layer_proofs,
        },
    ))
}

/// Checks that `proof` shows `y` is the model's output on `x`.
pub fn verify_inference(
    gens: &GeneratorSet,
    spec: &ModelSpec,
    weights: &[GroupElement],
    x: &[FieldElement],
    y: &[FieldElement],
    proof: &InferenceProof,
    tr: &mut Transcript,
) -> Result<(), VerifyError> {
    if spec.validate().is_err() || check_input(spec, x).is_err() {
        return Err(VerifyError::Malformed("model or input is invalid"));
    }
    if weights.len() != spec.linear_layers().count() {
        return Err(VerifyError::Malformed("wrong number of weight commitments"));
    }
    if proof.layer_proofs.len() != spec.layers.len() {
        return Err(VerifyError::Malformed("wrong number of layer proofs"));
    }
    if y.len() != spec.output_dim() || proof.output != y {
        return Err(VerifyError::Mismatch("claimed output"));
    }
    if gens.tau() < spec.generators_needed() {
        return Err(VerifyError::NotEnoughGenerators);
    }
    let p_x = gens.commit(x).map_err(|_| VerifyError::NotEnoughGenerators)?;
    let p_y = gens.commit(y).map_err(|_| VerifyError::NotEnoughGenerators)?;
    if proof.input_commitment != p_x {
        return Err(VerifyError::Mismatch("input commitment"));
    }
    if proof.output_commitment != p_y {
        return Err(VerifyError::Mismatch("output commitment"));
    }
    bind_model(tr, spec, weights, &p_x, &p_y);

    let widths = spec.widths();
    let mut w_iter = weights.iter();
    let mut p_cur = p_x;
    for (i, (layer, lp)) in spec.layers.iter().zip(&proof.layer_proofs).enumerate() {
        let wrap = |e: VerifyError| VerifyError::Layer {
            layer: i,
            source: Box::new(e),
        };
        p_cur = match (layer, lp) {
            (Layer::Linear(w), LayerProof::MatmulRound(p)) => {
                let p_w = w_iter.next().expect("weights counted above");
                if p.p_b != p_cur {
                    return Err(VerifyError::ChainBreak { layer: i });
                }
                let dims = MatmulDims {
                    n: w.rows().next_power_of_two(),
                    m: w.cols().next_power_of_two(),
                    k: 1,
                };
                verify_matmul_round(gens, p_w, &p_cur, dims, &spec.params, p, tr).map_err(wrap)?
            }
            (Layer::Relu, LayerProof::Relu(p)) => {
                verify_relu(gens, &p_cur, widths[i], spec.relu_bits(i), p, tr).map_err(wrap)?
            }
            _ => return Err(VerifyError::ChainBreak { layer: i }),
        };
    }
    if p_cur != p_y {
        return Err(VerifyError::ChainBreak {
            layer: spec.layers.len(),
        });
    }
    Ok(())
}

/// Fixed-point forward pass over plain integers, independent of the field
/// and of the proving code. Returns the unpadded output.
pub fn reference_inference(spec: &ModelSpec, x: &[i64]) -> Result<Vec<i64>> {
    let s = spec.params.frac_bits;
    let bound = 1i128 << (spec.params.int_bits + 1);
    let to_int = |v: &FieldElement| v.to_i128().ok_or_else(|| Error::InvalidParams("weight is not small".into()));
    let mut cur: Vec<i128> = x.iter().map(|&v| v as i128).collect();
    for (i, layer) in spec.layers.iter().enumerate() {
        cur = match layer {
            Layer::Linear(w) => {
                let mut out = Vec::with_capacity(w.rows());
                for r in 0..w.rows() {
                    let mut acc = 0i128;
                    for (c, xv) in cur.iter().enumerate() {
                        acc += to_int(&w.get(r, c))? * xv;
                    }
                    // nearest, ties toward +infinity
                    let q = (acc + (1i128 << (s - 1))).div_euclid(1i128 << s);
                    if q < -bound || q >= bound {
                        return Err(Error::Layer {
                            layer: i,
                            reason: "rounded output overflows the fixed-point range".into(),
                        });
                    }
                    out.push(q);
                }
                out
            }
            Layer::Relu => cur.iter().map(|v| (*v).max(0)).collect(),
        };
    }
    Ok(cur.into_iter().map(|v| v as i64).collect())
}

impl Encode for InferenceProof {
    fn encode(&self, w: &mut Writer) {
        w.put_point(&self.input_commitment);
        w.put_point(&self.output_commitment);
        w.put_scalars(&self.output);
        w.put_u32(self.layer_proofs.len() as u32);
        for p in &self.layer_proofs {
            p.encode(w);
        }
    }
}

impl Decode for InferenceProof {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let input_commitment = r.get_point()?;
        let output_commitment = r.get_point()?;
        let output = r.get_scalars()?;
        let n = r.get_u32()? as usize;
        if n > r.remaining() {
            return Err(Error::Decode("layer count longer than input".into()));
        }
        let layer_proofs = (0..n).map(|_| LayerProof::decode(r)).collect::<Result<_>>()?;
        Ok(Self {
            input_commitment,
            output_commitment,
            output,
            layer_proofs,
        })
    }
}

/// Seeded synthetic models and inputs.
pub mod fixtures {
    use super::*;

    /// Layer widths of the case-study network: four linear layers, each
    /// followed by a ReLU, about ten thousand weights.
    pub const CASE_STUDY_WIDTHS: [usize; 5] = [784, 12, 16, 16, 10];

    /// A dense model with the given widths, uniform weights in
    /// `[-bound_i, bound_i]` for layer `i`, and ReLU after every linear layer.
    pub fn random_model(params: FixedPointParams, widths: &[usize], bounds: &[i64], seed: u64) -> Result<ModelSpec> {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let mut layers = Vec::new();
        for (w, &b) in widths.windows(2).zip(bounds) {
            let m = Matrix::from_fn(w[1], w[0], |_, _| FieldElement::from_i64(rng.gen_range(-b..=b)));
            layers.push(Layer::Linear(m));
            layers.push(Layer::Relu);
        }
        ModelSpec::new(params, layers)
    }

    /// Input with entries in `[0, 2^(t+1))`, like scaled pixel intensities.
    pub fn random_input(params: &FixedPointParams, len: usize, seed: u64) -> Vec<i64> {
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x5eed);
        (0..len).map(|_| rng.gen_range(0..params.output_bound() as i64)).collect()
    }

    /// A dense model with ReLU after every linear layer whose weights are
    /// scaled to the activations `x` actually produces: each layer targets a
    /// pre-activation spread of about a fifth of the output range, and is
    /// redrawn at half the scale if any rounded output would overflow.
    pub fn calibrated_model(params: FixedPointParams, widths: &[usize], x: &[i64], seed: u64) -> Result<ModelSpec> {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let target = params.output_bound() as f64 / 5.0 * (1u64 << params.frac_bits) as f64;
        let max_w = params.operand_bound() as i64 - 1;
        let mut layers = Vec::new();
        let mut cur: Vec<i64> = x.to_vec();
        for w in widths.windows(2) {
            let rms = (cur.iter().map(|&v| (v * v) as f64).sum::<f64>() / cur.len() as f64).sqrt().max(1.0);
            let mut bound = ((target * 3f64.sqrt() / (rms * (w[0] as f64).sqrt())) as i64).clamp(1, max_w);
            loop {
                let m = Matrix::from_fn(w[1], w[0], |_, _| FieldElement::from_i64(rng.gen_range(-bound..=bound)));
                let probe = ModelSpec::new(params, vec![Layer::Linear(m.clone()), Layer::Relu])?;
                match reference_inference(&probe, &cur) {
                    Ok(out) => {
                        cur = out;
                        layers.push(Layer::Linear(m));
                        layers.push(Layer::Relu);
                        break;
                    }
                    Err(_) if bound > 1 => bound /= 2,
                    Err(e) => return Err(e),
                }
            }
        }
        ModelSpec::new(params, layers)
    }

    /// The case-study network (784 inputs, s = 8, t = 6) and an input.
    pub fn case_study(seed: u64) -> Result<(ModelSpec, Vec<i64>)> {
        let params = FixedPointParams::new(8, 6)?;
        let x = random_input(&params, CASE_STUDY_WIDTHS[0], seed);
        let spec = calibrated_model(params, &CASE_STUDY_WIDTHS, &x, seed)?;
        Ok((spec, x))
    }
}

pub fn encode_input(x: &[i64]) -> Vec<FieldElement> {
    x.iter().map(|&v| FieldElement::from_i64(v)).collect()
}
