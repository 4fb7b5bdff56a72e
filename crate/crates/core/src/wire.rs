//! Byte-level encoding shared by proofs and files.
//!
//! Integers are little-endian, scalars use the canonical 32-byte encoding
//! and points the 32-byte compressed Ristretto encoding. Decoders reject
//! non-canonical scalars, invalid points and trailing garbage.

use crate::error::{Error, Result};
use crate::field::{FieldElement, SCALAR_BYTES};
use crate::group::{GroupElement, POINT_BYTES};

#[derive(Default)]
pub struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf
    }

    pub fn len(&self) -> usize {
        self.buf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buf.is_empty()
    }

    pub fn put_raw(&mut self, b: &[u8]) {
        self.buf.extend_from_slice(b);
    }

    pub fn put_u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    pub fn put_u32(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn put_u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    /// `u32` length prefix followed by the bytes.
    pub fn put_bytes(&mut self, b: &[u8]) {
        self.put_u32(b.len() as u32);
        self.put_raw(b);
    }

    pub fn put_scalar(&mut self, x: &FieldElement) {
        self.put_raw(&x.to_bytes());
    }

    pub fn put_scalars(&mut self, xs: &[FieldElement]) {
        self.put_u32(xs.len() as u32);
        for x in xs {
            self.put_scalar(x);
        }
    }

    pub fn put_point(&mut self, p: &GroupElement) {
        self.put_raw(&p.to_bytes());
    }
}

pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Self { buf, pos: 0 }
    }

    pub fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }

    pub fn finish(&self) -> Result<()> {
        if self.remaining() != 0 {
            return Err(Error::Decode(format!("{} trailing bytes", self.remaining())));
        }
        Ok(())
    }

    pub fn get_raw(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.remaining() < n {
            return Err(Error::Decode(format!(
                "unexpected end of input: wanted {n} bytes, {} left",
                self.remaining()
            )));
        }
        let out = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    pub fn get_u8(&mut self) -> Result<u8> {
        Ok(self.get_raw(1)?[0])
    }

    pub fn get_u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.get_raw(4)?.try_into().unwrap()))
    }

    pub fn get_u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.get_raw(8)?.try_into().unwrap()))
    }

    pub fn get_bytes(&mut self) -> Result<&'a [u8]> {
        let n = self.get_u32()? as usize;
        self.get_raw(n)
    }

    pub fn get_scalar(&mut self) -> Result<FieldElement> {
        let b: [u8; SCALAR_BYTES] = self.get_raw(SCALAR_BYTES)?.try_into().unwrap();
        FieldElement::from_bytes(&b).ok_or_else(|| Error::Decode("non-canonical scalar".into()))
    }

    pub fn get_scalars(&mut self) -> Result<Vec<FieldElement>> {
        let n = self.get_u32()? as usize;
        if n.saturating_mul(SCALAR_BYTES) > self.remaining() {
            return Err(Error::Decode("scalar vector longer than input".into()));
        }
        (0..n).map(|_| self.get_scalar()).collect()
    }

    pub fn get_point(&mut self) -> Result<GroupElement> {
        let b: [u8; POINT_BYTES] = self.get_raw(POINT_BYTES)?.try_into().unwrap();
        GroupElement::from_bytes(&b).ok_or_else(|| Error::Decode("invalid group element".into()))
    }
}

/// Types with a canonical byte encoding.
pub trait Encode {
    fn encode(&self, w: &mut Writer);

    fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new();
        self.encode(&mut w);
        w.into_bytes()
    }
}

pub trait Decode: Sized {
    fn decode(r: &mut Reader<'_>) -> Result<Self>;

    /// Decodes a complete buffer, rejecting trailing bytes.
    fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::new(bytes);
        let v = Self::decode(&mut r)?;
        r.finish()?;
        Ok(v)
    }
}
