//! Challenge generation and communication accounting.
//!
//! A [`Transcript`] runs in one of two modes:
//!
//! * **Fiat–Shamir**: challenges are a hash of every message absorbed so far.
//!   The state is a SHA-512 chain over length-prefixed `(label, message)`
//!   pairs, so identical absorb sequences give identical challenges.
//! * **Interactive**: the verifier's coins come from a seeded ChaCha20 stream.
//!   Prover and verifier are simulated in-process by constructing both sides
//!   from the same seed.
//!
//! Protocol code is mode-agnostic. Every message carries a static label and
//! every challenge is nonzero.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha512};

use crate::error::{Error, Result, VerifyError};
use crate::field::{FieldElement, SCALAR_BYTES};
use crate::group::GroupElement;
use crate::wire::{Reader, Writer};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    FiatShamir,
    Interactive { seed: u64 },
}

/// Who a transcript record came from.
///
/// `Public` marks statement data both parties already hold (commitments
/// the verifier recomputes, dimensions); it is bound into the hash state
/// but never counted as communication.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Sender {
    Prover,
    Verifier,
    Public,
}

impl Sender {
    fn tag(self) -> u8 {
        match self {
            Sender::Prover => 0,
            Sender::Verifier => 1,
            Sender::Public => 2,
        }
    }

    fn from_tag(t: u8) -> Result<Self> {
        Ok(match t {
            0 => Sender::Prover,
            1 => Sender::Verifier,
            2 => Sender::Public,
            _ => return Err(Error::Decode(format!("unknown sender tag {t}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub label: Vec<u8>,
    pub sender: Sender,
    pub message: Vec<u8>,
}

#[derive(Clone)]
enum State {
    Hash([u8; 64]),
    Coins(ChaCha20Rng),
}

#[derive(Clone)]
pub struct Transcript {
    state: State,
    mode: Mode,
    prover_bytes: u64,
    verifier_bytes: u64,
    log: Option<Vec<Record>>,
}

impl std::fmt::Debug for Transcript {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Transcript")
            .field("mode", &self.mode)
            .field("prover_bytes", &self.prover_bytes)
            .field("verifier_bytes", &self.verifier_bytes)
            .finish_non_exhaustive()
    }
}

fn chain(tag: &[u8], state: &[u8; 64], label: &[u8], msg: &[u8]) -> [u8; 64] {
    let mut h = Sha512::new();
    h.update(tag);
    h.update(state);
    h.update((label.len() as u64).to_le_bytes());
    h.update(label);
    h.update((msg.len() as u64).to_le_bytes());
    h.update(msg);
    h.finalize().into()
}

impl Transcript {
    /// A Fiat–Shamir transcript bound to an application domain label.
    pub fn new(domain: &[u8]) -> Self {
        Self::with_mode(domain, Mode::FiatShamir)
    }

    /// A simulated interactive transcript whose verifier coins derive from `seed`.
    pub fn interactive(domain: &[u8], seed: u64) -> Self {
        Self::with_mode(domain, Mode::Interactive { seed })
    }

    pub fn with_mode(domain: &[u8], mode: Mode) -> Self {
        let state = match mode {
            Mode::FiatShamir => State::Hash(chain(b"ra.init", &[0u8; 64], b"domain", domain)),
            Mode::Interactive { seed } => State::Coins(ChaCha20Rng::seed_from_u64(seed)),
        };
        Self {
            state,
            mode,
            prover_bytes: 0,
            verifier_bytes: 0,
            log: None,
        }
    }

    /// Keeps a record of every absorbed message and drawn challenge.
    pub fn recording(mut self) -> Self {
        self.log = Some(Vec::new());
        self
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Bytes sent by the prover so far.
    pub fn prover_bytes(&self) -> u64 {
        self.prover_bytes
    }

    /// Bytes sent by the verifier (challenges) so far.
    pub fn verifier_bytes(&self) -> u64 {
        self.verifier_bytes
    }

    pub fn records(&self) -> Option<&[Record]> {
        self.log.as_deref()
    }

    pub fn take_log(&mut self) -> TranscriptLog {
        TranscriptLog {
            records: self.log.take().unwrap_or_default(),
        }
    }

    pub fn absorb(&mut self, label: &[u8], msg: &[u8], sender: Sender) {
        match sender {
            Sender::Prover => self.prover_bytes += msg.len() as u64,
            Sender::Verifier => self.verifier_bytes += msg.len() as u64,
            Sender::Public => {}
        }
        if let State::Hash(s) = &mut self.state {
            let mut tagged = Vec::with_capacity(msg.len() + 1);
            tagged.push(sender.tag());
            tagged.extend_from_slice(msg);
            *s = chain(b"ra.absorb", s, label, &tagged);
        }
        if let Some(log) = &mut self.log {
            log.push(Record {
                label: label.to_vec(),
                sender,
                message: msg.to_vec(),
            });
        }
    }

    /// Binds public statement data without counting it as communication.
    pub fn bind(&mut self, label: &[u8], msg: &[u8]) {
        self.absorb(label, msg, Sender::Public);
    }

    pub fn bind_u64(&mut self, label: &[u8], v: u64) {
        self.bind(label, &v.to_le_bytes());
    }

    pub fn bind_point(&mut self, label: &[u8], p: &GroupElement) {
        self.bind(label, &p.to_bytes());
    }

    pub fn bind_scalar(&mut self, label: &[u8], x: &FieldElement) {
        self.bind(label, &x.to_bytes());
    }

    pub fn prover_scalar(&mut self, label: &[u8], x: &FieldElement) {
        self.absorb(label, &x.to_bytes(), Sender::Prover);
    }

    pub fn prover_point(&mut self, label: &[u8], p: &GroupElement) {
        self.absorb(label, &p.to_bytes(), Sender::Prover);
    }

    /// Draws a nonzero challenge scalar.
    pub fn challenge_scalar(&mut self, label: &[u8]) -> FieldElement {
        let x = loop {
            let x = match &mut self.state {
                State::Hash(s) => {
                    *s = chain(b"ra.challenge", s, label, &[]);
                    let wide: [u8; 64] = Sha512::new()
                        .chain_update(b"ra.scalar")
                        .chain_update(&s[..])
                        .finalize()
                        .into();
                    FieldElement::from_bytes_wide(&wide)
                }
                State::Coins(rng) => FieldElement::random(rng),
            };
            if !x.is_zero() {
                break x;
            }
        };
        self.verifier_bytes += SCALAR_BYTES as u64;
        if let Some(log) = &mut self.log {
            log.push(Record {
                label: label.to_vec(),
                sender: Sender::Verifier,
                message: x.to_bytes().to_vec(),
            });
        }
        x
    }

    pub fn challenge_vector(&mut self, label: &[u8], n: usize) -> Vec<FieldElement> {
        (0..n).map(|_| self.challenge_scalar(label)).collect()
    }
}

/// The ordered `(label, sender, message)` records of a protocol run.
///
/// Replaying a log through a fresh transcript re-derives every challenge and
/// checks it against the recorded one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TranscriptLog {
    pub records: Vec<Record>,
}

impl TranscriptLog {
    pub fn encode(&self, w: &mut Writer) {
        w.put_u32(self.records.len() as u32);
        for r in &self.records {
            w.put_bytes(&r.label);
            w.put_u8(r.sender.tag());
            w.put_bytes(&r.message);
        }
    }

    pub fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let n = r.get_u32()? as usize;
        let mut records = Vec::with_capacity(n.min(1 << 16));
        for _ in 0..n {
            let label = r.get_bytes()?.to_vec();
            let sender = Sender::from_tag(r.get_u8()?)?;
            let message = r.get_bytes()?.to_vec();
            records.push(Record { label, sender, message });
        }
        Ok(Self { records })
    }

    /// Replays the log in Fiat–Shamir mode and returns the final transcript.
    pub fn replay(&self, domain: &[u8]) -> Result<Transcript, VerifyError> {
        let mut t = Transcript::new(domain);
        for (i, rec) in self.records.iter().enumerate() {
            match rec.sender {
                Sender::Verifier => {
                    let c = t.challenge_scalar(&rec.label);
                    if c.to_bytes()[..] != rec.message[..] {
                        return Err(VerifyError::ReplayDiverged(i));
                    }
                }
                s => t.absorb(&rec.label, &rec.message, s),
            }
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prover_byte_accounting() {
        let mut t = Transcript::new(b"test");
        for i in 0..3u64 {
            t.prover_scalar(b"x", &FieldElement::from_u64(i));
        }
        assert_eq!(t.prover_bytes(), 96);
        t.bind(b"stmt", &[0u8; 100]);
        assert_eq!(t.prover_bytes(), 96);
        t.challenge_scalar(b"c");
        assert_eq!(t.verifier_bytes(), 32);
    }

    #[test]
    fn determinism_and_separation() {
        let run = |label: &[u8]| {
            let mut t = Transcript::new(b"test");
            t.absorb(label, b"hello", Sender::Prover);
            t.challenge_scalar(b"c")
        };
        assert_eq!(run(b"a"), run(b"a"));
        assert_ne!(run(b"a"), run(b"b"));
        // sender is part of the hashed record
        let mut t1 = Transcript::new(b"test");
        t1.absorb(b"a", b"m", Sender::Prover);
        let mut t2 = Transcript::new(b"test");
        t2.absorb(b"a", b"m", Sender::Public);
        assert_ne!(t1.challenge_scalar(b"c"), t2.challenge_scalar(b"c"));
    }

    #[test]
    fn successive_challenges_differ() {
        for mode in [Mode::FiatShamir, Mode::Interactive { seed: 3 }] {
            let mut t = Transcript::with_mode(b"test", mode);
            let a = t.challenge_scalar(b"c");
            let b = t.challenge_scalar(b"c");
            assert_ne!(a, b);
            assert!(!a.is_zero() && !b.is_zero());
            let v = t.challenge_vector(b"v", 5);
            assert_eq!(v.len(), 5);
        }
    }

    #[test]
    fn vector_determinism_and_label_distinctness() {
        let draw = |label: &[u8]| Transcript::new(b"d").challenge_vector(label, 4);
        assert_eq!(draw(b"r1"), draw(b"r1"));
        let (a, b) = (draw(b"r1"), draw(b"r2"));
        assert!(a.iter().all(|x| !b.contains(x)));
    }

    #[test]
    fn coarse_uniformity() {
        let mut t = Transcript::new(b"uniform");
        let mut buckets = [0u32; 16];
        let n = 10_000;
        for _ in 0..n {
            let c = t.challenge_scalar(b"c");
            // low nibble of the canonical encoding
            buckets[(c.to_bytes()[0] & 0x0f) as usize] += 1;
        }
        let expected = n as f64 / 16.0;
        let chi2: f64 = buckets.iter().map(|&b| (b as f64 - expected).powi(2) / expected).sum();
        // 15 degrees of freedom; 37.7 is the 0.999 quantile
        assert!(chi2 < 37.7, "chi2 = {chi2}");
    }

    #[test]
    fn log_replay() {
        let mut t = Transcript::new(b"replay").recording();
        t.prover_scalar(b"w", &FieldElement::from_u64(9));
        t.bind(b"P", &[1, 2, 3]);
        let c1 = t.challenge_scalar(b"r");
        t.prover_scalar(b"a", &c1);
        let c2 = t.challenge_scalar(b"r");
        let log = t.take_log();
        assert_eq!(log.records.len(), 5);

        let mut w = Writer::new();
        log.encode(&mut w);
        let bytes = w.into_bytes();
        let decoded = TranscriptLog::decode(&mut Reader::new(&bytes)).unwrap();
        assert_eq!(decoded, log);
        let mut replayed = decoded.replay(b"replay").unwrap();
        assert_eq!(replayed.prover_bytes(), t.prover_bytes());
        assert_eq!(replayed.challenge_scalar(b"r"), t.clone().challenge_scalar(b"r"));
        let _ = c2;

        let mut forged = log.clone();
        forged.records[0].message[0] ^= 1;
        assert_eq!(forged.replay(b"replay").unwrap_err(), VerifyError::ReplayDiverged(2));
    }
}
