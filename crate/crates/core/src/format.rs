//! On-disk formats for models, vectors, proofs, generators and weight
//! commitments. Integers are little-endian; scalars and points use their
//! canonical 32-byte encodings.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FixedPointParams};
use crate::group::{GeneratorSet, GroupElement};
use crate::matrix::Matrix;
use crate::pipeline::{InferenceProof, Layer, ModelSpec};
use crate::transcript::Mode;
use crate::wire::{Decode, Encode, Reader, Writer};

pub const MODEL_MAGIC: &[u8; 4] = b"RAML";
pub const VECTOR_MAGIC: &[u8; 4] = b"RAVC";
pub const PROOF_MAGIC: &[u8; 4] = b"RAPF";
pub const GENS_MAGIC: &[u8; 4] = b"RAGS";
pub const COMMITS_MAGIC: &[u8; 4] = b"RACM";
pub const VERSION: u32 = 1;

const TAG_LINEAR: u8 = 0;
const TAG_RELU: u8 = 1;
const MODE_FS: u8 = 0;
const MODE_INTERACTIVE: u8 = 1;

fn header(r: &mut Reader<'_>, magic: &[u8; 4], versioned: bool) -> Result<()> {
    if r.get_raw(4)? != magic {
        return Err(Error::Decode(format!("expected magic {}", String::from_utf8_lossy(magic))));
    }
    if versioned {
        let v = r.get_u32()?;
        if v != VERSION {
            return Err(Error::Decode(format!("unsupported version {v}")));
        }
    }
    Ok(())
}

/// Guards a declared element count against the bytes actually left.
fn check_count(r: &Reader<'_>, count: usize, elem: usize) -> Result<()> {
    if count.checked_mul(elem).is_none_or(|n| n > r.remaining()) {
        return Err(Error::Decode(format!("declared count {count} exceeds file size")));
    }
    Ok(())
}

pub fn encode_model(spec: &ModelSpec) -> Vec<u8> {
    let mut w = Writer::new();
    w.put_raw(MODEL_MAGIC);
    w.put_u32(VERSION);
    w.put_u32(spec.params.frac_bits);
    w.put_u32(spec.params.int_bits);
    w.put_u32(spec.layers.len() as u32);
    for layer in &spec.layers {
        match layer {
            Layer::Linear(m) => {
                w.put_u8(TAG_LINEAR);
                w.put_u32(m.rows() as u32);
                w.put_u32(m.cols() as u32);
                for x in m.as_slice() {
                    w.put_scalar(x);
                }
            }
            Layer::Relu => w.put_u8(TAG_RELU),
        }
    }
    w.into_bytes()
}

pub fn decode_model(bytes: &[u8]) -> Result<ModelSpec> {
    let mut r = Reader::new(bytes);
    header(&mut r, MODEL_MAGIC, true)?;
    let s = r.get_u32()?;
    let t = r.get_u32()?;
    let params = FixedPointParams::new(s, t)?;
    let count = r.get_u32()? as usize;
    check_count(&r, count, 1)?;
    let mut layers = Vec::with_capacity(count);
    for _ in 0..count {
        layers.push(match r.get_u8()? {
            TAG_LINEAR => {
                let rows = r.get_u32()? as usize;
                let cols = r.get_u32()? as usize;
                let n = rows
                    .checked_mul(cols)
                    .ok_or_else(|| Error::Decode("matrix too large".into()))?;
                check_count(&r, n, 32)?;
                let data = (0..n).map(|_| r.get_scalar()).collect::<Result<Vec<_>>>()?;
                Layer::Linear(Matrix::new(rows, cols, data)?)
            }
            TAG_RELU => Layer::Relu,
            tag => return Err(Error::Decode(format!("unknown layer tag {tag}"))),
        });
    }
    r.finish()?;
    ModelSpec::new(params, layers)
}

pub fn encode_vector(v: &[FieldElement]) -> Vec<u8> {
    let mut w = Writer::new();
    w.put_raw(VECTOR_MAGIC);
    w.put_u32(v.len() as u32);
    for x in v {
        w.put_scalar(x);
    }
    w.into_bytes()
}

pub fn decode_vector(bytes: &[u8]) -> Result<Vec<FieldElement>> {
    let mut r = Reader::new(bytes);
    header(&mut r, VECTOR_MAGIC, false)?;
    let n = r.get_u32()? as usize;
    check_count(&r, n, 32)?;
    let v = (0..n).map(|_| r.get_scalar()).collect::<Result<Vec<_>>>()?;
    r.finish()?;
    Ok(v)
}

pub fn encode_proof(mode: Mode, proof: &InferenceProof) -> Vec<u8> {
    let mut w = Writer::new();
    w.put_raw(PROOF_MAGIC);
    w.put_u32(VERSION);
    match mode {
        Mode::FiatShamir => w.put_u8(MODE_FS),
        Mode::Interactive { seed } => {
            w.put_u8(MODE_INTERACTIVE);
            w.put_u64(seed);
        }
    }
    proof.encode(&mut w);
    w.into_bytes()
}

pub fn decode_proof(bytes: &[u8]) -> Result<(Mode, InferenceProof)> {
    let mut r = Reader::new(bytes);
    header(&mut r, PROOF_MAGIC, true)?;
    let mode = match r.get_u8()? {
        MODE_FS => Mode::FiatShamir,
        MODE_INTERACTIVE => Mode::Interactive { seed: r.get_u64()? },
        m => return Err(Error::Decode(format!("unknown transcript mode {m}"))),
    };
    let proof = InferenceProof::decode(&mut r)?;
    r.finish()?;
    Ok((mode, proof))
}

/// Serializes generators with their seed. Loading re-derives from the seed
/// and rejects files whose points disagree.
pub fn encode_generators(gens: &GeneratorSet) -> Vec<u8> {
    let mut w = Writer::new();
    w.put_raw(GENS_MAGIC);
    w.put_u32(VERSION);
    w.put_bytes(&gens.seed);
    w.put_u64(gens.tau() as u64);
    for p in gens.g.iter().chain(&gens.h) {
        w.put_point(p);
    }
    w.put_point(&gens.u);
    w.into_bytes()
}

pub fn decode_generators(bytes: &[u8]) -> Result<GeneratorSet> {
    let mut r = Reader::new(bytes);
    header(&mut r, GENS_MAGIC, true)?;
    let seed = r.get_bytes()?.to_vec();
    let tau = usize::try_from(r.get_u64()?).map_err(|_| Error::Decode("tau too large".into()))?;
    check_count(&r, tau.saturating_mul(2).saturating_add(1), 32)?;
    let g = (0..tau).map(|_| r.get_point()).collect::<Result<Vec<_>>>()?;
    let h = (0..tau).map(|_| r.get_point()).collect::<Result<Vec<_>>>()?;
    let u = r.get_point()?;
    r.finish()?;
    let stored = GeneratorSet { g, h, u, seed };
    if stored != GeneratorSet::derive(&stored.seed, tau)? {
        return Err(Error::Decode("generators do not match their seed".into()));
    }
    Ok(stored)
}

pub fn encode_commitments(c: &[GroupElement]) -> Vec<u8> {
    let mut w = Writer::new();
    w.put_raw(COMMITS_MAGIC);
    w.put_u32(VERSION);
    w.put_u32(c.len() as u32);
    for p in c {
        w.put_point(p);
    }
    w.into_bytes()
}

pub fn decode_commitments(bytes: &[u8]) -> Result<Vec<GroupElement>> {
    let mut r = Reader::new(bytes);
    header(&mut r, COMMITS_MAGIC, true)?;
    let n = r.get_u32()? as usize;
    check_count(&r, n, 32)?;
    let c = (0..n).map(|_| r.get_point()).collect::<Result<Vec<_>>>()?;
    r.finish()?;
    Ok(c)
}
