//! Timing runs for single layers and the case-study network.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use range_arith::layer::{prove_matmul_round, prove_relu, verify_matmul_round, verify_relu};
use range_arith::pipeline::{self, fixtures, INFERENCE_DOMAIN};
use range_arith::{
    FieldElement, FixedPointParams, GeneratorSet, MatmulDims, Matrix, Mode, Result, Transcript,
};
use serde::{Deserialize, Serialize};

pub const GENERATOR_SEED: &[u8] = b"range-arith bench";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchOp {
    MatmulRound,
    Relu,
    Nn,
}

/// One CSV row. For `relu`, `n` is the vector length and `m = k = 1`; for
/// `nn`, `n` is the input width, `m` the parameter count and `k` the layer
/// count.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub op: BenchOp,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub prover_ms: f64,
    pub verifier_ms: f64,
    pub proof_bytes: u64,
    pub mode: String,
}

fn mode_name(mode: Mode) -> String {
    match mode {
        Mode::FiatShamir => "fiat_shamir".into(),
        Mode::Interactive { .. } => "interactive".into(),
    }
}

fn median(mut v: Vec<Duration>) -> f64 {
    v.sort();
    let n = v.len();
    let d = if n % 2 == 1 { v[n / 2] } else { (v[n / 2 - 1] + v[n / 2]) / 2 };
    d.as_secs_f64() * 1e3
}

/// Parameters used by every matmul benchmark.
pub fn bench_params() -> FixedPointParams {
    FixedPointParams::new(8, 6).expect("valid")
}

/// Random `n x n` operands whose rounded product stays in range.
pub fn matmul_instance(n: usize, params: &FixedPointParams, seed: u64) -> (Matrix, Matrix) {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    // products of two entries in [-b, b] summed over n terms have spread
    // about sqrt(n) b^2 / 3; aim for a fifth of the output range
    let target = (params.output_bound() << params.frac_bits) as f64 / 5.0;
    let b = ((3.0 * target / (n as f64).sqrt()).sqrt() as i64).max(1);
    loop {
        let mut draw = || Matrix::from_fn(n, n, |_, _| FieldElement::from_i64(rng.gen_range(-b..=b)));
        let (a, c) = (draw(), draw());
        let prod = a.mul(&c).expect("square");
        let bound = params.output_bound();
        let ok = prod.as_slice().iter().all(|v| {
            let q = v.round(params).ok().and_then(|q| q.to_i128());
            q.is_some_and(|q| q >= -bound && q < bound)
        });
        if ok {
            return (a, c);
        }
    }
}

pub fn matmul_generators(sizes: &[usize]) -> Result<GeneratorSet> {
    let params = bench_params();
    let tau = sizes
        .iter()
        .map(|&n| MatmulDims::new(n, n, n).map(|d| d.generators_needed(&params)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(1);
    GeneratorSet::derive(GENERATOR_SEED, tau)
}

/// Medians over `reps` runs of one matmul-round layer per size, with
/// `n = m = k`.
pub fn bench_matmul(gens: &GeneratorSet, sizes: &[usize], reps: usize, mode: Mode) -> Result<Vec<BenchRecord>> {
    let params = bench_params();
    let mut out = Vec::new();
    for &n in sizes {
        let dims = MatmulDims::new(n, n, n)?;
        let (a, b) = matmul_instance(n, &params, n as u64);
        let p_a = gens.commit(a.as_slice())?;
        let p_b = gens.commit(b.as_slice())?;
        let (mut pt, mut vt, mut bytes) = (Vec::new(), Vec::new(), 0);
        for _ in 0..reps.max(1) {
            let mut tr = Transcript::with_mode(b"bench/matmul", mode);
            let t = Instant::now();
            let (_, proof) = prove_matmul_round(gens, &a, &b, &params, &mut tr)?;
            pt.push(t.elapsed());
            bytes = tr.prover_bytes();
            let mut tr = Transcript::with_mode(b"bench/matmul", mode);
            let t = Instant::now();
            verify_matmul_round(gens, &p_a, &p_b, dims, &params, &proof, &mut tr)
                .expect("honest matmul proof must verify");
            vt.push(t.elapsed());
        }
        out.push(BenchRecord {
            op: BenchOp::MatmulRound,
            n,
            m: n,
            k: n,
            prover_ms: median(pt),
            verifier_ms: median(vt),
            proof_bytes: bytes,
            mode: mode_name(mode),
        });
    }
    Ok(out)
}

/// Medians over `reps` runs of a ReLU layer per vector length.
pub fn bench_relu(sizes: &[usize], reps: usize, mode: Mode) -> Result<Vec<BenchRecord>> {
    let params = bench_params();
    let bits = params.chained_relu_bits();
    let max = sizes.iter().copied().max().unwrap_or(1);
    let gens = GeneratorSet::derive(GENERATOR_SEED, range_arith::layer::relu_generators_needed(max, bits))?;
    let mut out = Vec::new();
    for &n in sizes {
        let mut rng = ChaCha20Rng::seed_from_u64(n as u64);
        let bound = params.output_bound() as i64;
        let a: Vec<_> = (0..n).map(|_| FieldElement::from_i64(rng.gen_range(-bound..bound))).collect();
        let p_a = gens.commit(&a)?;
        let (mut pt, mut vt, mut bytes) = (Vec::new(), Vec::new(), 0);
        for _ in 0..reps.max(1) {
            let mut tr = Transcript::with_mode(b"bench/relu", mode);
            let t = Instant::now();
            let (_, proof) = prove_relu(&gens, &a, &p_a, bits, &mut tr)?;
            pt.push(t.elapsed());
            bytes = tr.prover_bytes();
            let mut tr = Transcript::with_mode(b"bench/relu", mode);
            let t = Instant::now();
            verify_relu(&gens, &p_a, n, bits, &proof, &mut tr).expect("honest ReLU proof must verify");
            vt.push(t.elapsed());
        }
        out.push(BenchRecord {
            op: BenchOp::Relu,
            n,
            m: 1,
            k: 1,
            prover_ms: median(pt),
            verifier_ms: median(vt),
            proof_bytes: bytes,
            mode: mode_name(mode),
        });
    }
    Ok(out)
}

/// Proves and verifies the case-study network once per rep. Also checks the
/// proven output against the plaintext reference engine.
pub fn bench_nn(seed: u64, reps: usize, mode: Mode) -> Result<BenchRecord> {
    let (spec, x) = fixtures::case_study(seed)?;
    let gens = GeneratorSet::derive(GENERATOR_SEED, spec.generators_needed())?;
    let weights = pipeline::register_model(&gens, &spec)?;
    let xf = pipeline::encode_input(&x);
    let want = pipeline::encode_input(&pipeline::reference_inference(&spec, &x)?);
    let (mut pt, mut vt, mut bytes) = (Vec::new(), Vec::new(), 0);
    for _ in 0..reps.max(1) {
        let mut tr = Transcript::with_mode(INFERENCE_DOMAIN, mode);
        let t = Instant::now();
        let (y, proof) = pipeline::prove_inference(&gens, &spec, &xf, &mut tr)?;
        pt.push(t.elapsed());
        bytes = tr.prover_bytes();
        assert_eq!(y, want, "proven output differs from the reference engine");
        let mut tr = Transcript::with_mode(INFERENCE_DOMAIN, mode);
        let t = Instant::now();
        pipeline::verify_inference(&gens, &spec, &weights, &xf, &y, &proof, &mut tr)
            .expect("honest inference proof must verify");
        vt.push(t.elapsed());
    }
    Ok(BenchRecord {
        op: BenchOp::Nn,
        n: spec.input_dim(),
        m: spec.num_parameters(),
        k: spec.layers.len(),
        prover_ms: median(pt),
        verifier_ms: median(vt),
        proof_bytes: bytes,
        mode: mode_name(mode),
    })
}

pub fn write_csv<W: std::io::Write>(w: W, records: &[BenchRecord]) -> csv::Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for r in records {
        wr.serialize(r)?;
    }
    wr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_header_is_stable() {
        let rec = BenchRecord {
            op: BenchOp::MatmulRound,
            n: 2,
            m: 2,
            k: 2,
            prover_ms: 1.5,
            verifier_ms: 0.5,
            proof_bytes: 10,
            mode: "fiat_shamir".into(),
        };
        let mut buf = Vec::new();
        write_csv(&mut buf, &[rec]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("op,n,m,k,prover_ms,verifier_ms,proof_bytes,mode"));
        assert_eq!(lines.next(), Some("matmul_round,2,2,2,1.5,0.5,10,fiat_shamir"));
    }

    #[test]
    fn record_count_and_determinism() {
        let gens = matmul_generators(&[2, 4]).unwrap();
        let a = bench_matmul(&gens, &[2, 4], 1, Mode::FiatShamir).unwrap();
        assert_eq!(a.len(), 2);
        let b = bench_matmul(&gens, &[2, 4], 1, Mode::FiatShamir).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!((x.n, x.proof_bytes), (y.n, y.proof_bytes));
        }
        assert_eq!(bench_relu(&[4, 8], 1, Mode::Interactive { seed: 1 }).unwrap().len(), 2);
    }

    #[test]
    fn instances_stay_in_range() {
        let p = bench_params();
        let (a, b) = matmul_instance(16, &p, 3);
        assert_eq!(matmul_instance(16, &p, 3), (a.clone(), b.clone()));
        assert!(a.as_slice().iter().any(|v| *v != FieldElement::ZERO));
    }
}
