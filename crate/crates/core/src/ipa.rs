//! Logarithmic inner-product argument.
//!
//! Convinces a verifier holding `(g, h, u, P, c)` that the prover knows
//! `a, b` with `P = <a, g> + <b, h>` and `c = <a, b>`. The verifier first
//! sends `x` and both sides move to `P + (x c) u` with `u' = x u`; each
//! halving round then sends `L, R`, receives `x` and folds
//!
//! ```text
//! g' = x^-1 g_lo + x g_hi        a' = x a_lo + x^-1 a_hi
//! h' = x h_lo + x^-1 h_hi        b' = x^-1 b_lo + x b_hi
//! P' = x^2 L + P + x^-2 R
//! ```
//!
//! until one pair `(a, b)` remains. The proof is `2 log2(n)` points and two
//! scalars.
//!
//! The verifier does not materialise the folded generators round by round.
//! It collects the challenges and checks the final relation with a single
//! multi-scalar multiplication over the original generators, using
//! `g_final = sum_i s_i g_i` where `s_i` is the product of `x_j` or `x_j^-1`
//! according to bit `j` of `i`.

use curve25519_dalek::ristretto::RistrettoPoint;
use curve25519_dalek::traits::VartimeMultiscalarMul;

use crate::error::{Error, Result, VerifyError};
use crate::field::{inner_product, FieldElement};
use crate::group::{msm_iter, GroupElement};
use crate::transcript::Transcript;
use crate::wire::{Decode, Encode, Reader, Writer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IpaProof {
    pub folds: Vec<(GroupElement, GroupElement)>,
    pub final_a: FieldElement,
    pub final_b: FieldElement,
}

impl IpaProof {
    pub fn num_group_elements(&self) -> usize {
        2 * self.folds.len()
    }

    pub fn num_scalars(&self) -> usize {
        2
    }

    /// Bytes the prover sends for this proof.
    pub fn message_bytes(&self) -> usize {
        32 * (self.num_group_elements() + self.num_scalars())
    }

    /// `P` for an honest witness, `<a, g> + <b, h>`.
    pub fn statement(g: &[GroupElement], h: &[GroupElement], a: &[FieldElement], b: &[FieldElement]) -> GroupElement {
        msm_iter(a.iter().chain(b).copied(), g[..a.len()].iter().chain(&h[..b.len()]))
    }

    /// Proves `P = <a, g> + <b, h>` and `c = <a, b>`.
    #[allow(clippy::too_many_arguments)]
    pub fn prove(
        g: &[GroupElement],
        h: &[GroupElement],
        u: &GroupElement,
        p: &GroupElement,
        c: &FieldElement,
        a: Vec<FieldElement>,
        b: Vec<FieldElement>,
        tr: &mut Transcript,
    ) -> Result<Self> {
        prove_scaled(g, h, None, u, p, c, a, b, tr)
    }

    /// Checks the proof for a length-`n` statement.
    #[allow(clippy::too_many_arguments)]
    pub fn verify(
        &self,
        g: &[GroupElement],
        h: &[GroupElement],
        u: &GroupElement,
        p: &GroupElement,
        c: &FieldElement,
        n: usize,
        tr: &mut Transcript,
    ) -> Result<(), VerifyError> {
        verify_scaled(self, g, h, None, u, p, c, n, tr)
    }

    /// Round-by-round verifier that folds `g`, `h` and `P` explicitly.
    ///
    /// Accepts exactly the same proofs as [`IpaProof::verify`] but does
    /// `O(n)` group operations per round instead of one final MSM.
    #[allow(clippy::too_many_arguments)]
    pub fn verify_folding(
        &self,
        g: &[GroupElement],
        h: &[GroupElement],
        u: &GroupElement,
        p: &GroupElement,
        c: &FieldElement,
        n: usize,
        tr: &mut Transcript,
    ) -> Result<(), VerifyError> {
        if !n.is_power_of_two() {
            return Err(VerifyError::Malformed("inner-product length is not a power of two"));
        }
        if self.folds.len() != n.trailing_zeros() as usize {
            return Err(VerifyError::Malformed("wrong number of inner-product folds"));
        }
        if g.len() < n || h.len() < n {
            return Err(VerifyError::NotEnoughGenerators);
        }
        let x0 = bind_statement(tr, n, p, c);
        let u = *u * x0;
        let mut p = *p + u * *c;
        let mut g_cur = g[..n].to_vec();
        let mut h_cur = h[..n].to_vec();
        for (l, r) in &self.folds {
            tr.prover_point(b"ipa.L", l);
            tr.prover_point(b"ipa.R", r);
            let x = tr.challenge_scalar(b"ipa.x");
            let x_inv = x.invert().map_err(|_| VerifyError::Malformed("zero challenge"))?;
            let half = g_cur.len() / 2;
            g_cur = fold_points(&g_cur[..half], &g_cur[half..], &x_inv, &x);
            h_cur = fold_points(&h_cur[..half], &h_cur[half..], &x, &x_inv);
            p = msm_iter([x.square(), FieldElement::ONE, x_inv.square()], [l, &p, r]);
        }
        tr.prover_scalar(b"ipa.a", &self.final_a);
        tr.prover_scalar(b"ipa.b", &self.final_b);
        let (a, b) = (self.final_a, self.final_b);
        if g_cur[0] * a + h_cur[0] * b + u * (a * b) == p {
            Ok(())
        } else {
            Err(VerifyError::InnerProduct)
        }
    }
}

fn bind_statement(tr: &mut Transcript, n: usize, p: &GroupElement, c: &FieldElement) -> FieldElement {
    tr.bind_u64(b"ipa.n", n as u64);
    tr.bind_point(b"ipa.P", p);
    tr.bind_scalar(b"ipa.c", c);
    tr.challenge_scalar(b"ipa.x")
}

/// Rounds run on coefficients while `len * LAZY_RATIO > n`.
const LAZY_RATIO: usize = 16;

fn fold_points(lo: &[GroupElement], hi: &[GroupElement], s_lo: &FieldElement, s_hi: &FieldElement) -> Vec<GroupElement> {
    lo.iter()
        .zip(hi)
        .map(|(l, r)| GroupElement(RistrettoPoint::vartime_multiscalar_mul([s_lo.0, s_hi.0], [l.0, r.0])))
        .collect()
}

/// Prover with `h` replaced by `h'_i = h_scale_i * h_i`.
///
/// The scale rides along in the generator coefficients, so `h'` is never
/// materialised.
#[allow(clippy::too_many_arguments)]
pub(crate) fn prove_scaled(
    g: &[GroupElement],
    h: &[GroupElement],
    h_scale: Option<&[FieldElement]>,
    u: &GroupElement,
    p: &GroupElement,
    c: &FieldElement,
    mut a: Vec<FieldElement>,
    mut b: Vec<FieldElement>,
    tr: &mut Transcript,
) -> Result<IpaProof> {
    let n = a.len();
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    if b.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: b.len() });
    }
    if g.len() < n || h.len() < n {
        return Err(Error::NotEnoughGenerators {
            needed: n,
            available: g.len().min(h.len()),
        });
    }
    if let Some(s) = h_scale {
        if s.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: s.len() });
        }
    }
    if inner_product(&a, &b) != *c {
        return Err(Error::InnerProductMismatch);
    }

    let x0 = bind_statement(tr, n, p, c);
    let u = *u * x0;

    // Early rounds never fold points: the folded generator at position i is
    // sum_k coef[k] * g[k] over k = i mod len, so L and R are MSMs over the
    // original generators. Once the vectors are short, fold explicitly.
    let mut cg = vec![FieldElement::ONE; n];
    let mut ch: Vec<FieldElement> = match h_scale {
        Some(sc) => sc.to_vec(),
        None => vec![FieldElement::ONE; n],
    };
    let mut folds = Vec::with_capacity(n.trailing_zeros() as usize);

    while a.len() > 1 && a.len() * LAZY_RATIO > n {
        let len = a.len();
        let half = len / 2;
        let c_l = inner_product(&a[..half], &b[half..]);
        let c_r = inner_product(&a[half..], &b[..half]);
        let pos = |k: usize| k % len;
        let l = msm_iter(
            (0..n)
                .map(|k| {
                    let i = pos(k);
                    if i >= half {
                        a[i - half] * cg[k]
                    } else {
                        b[i + half] * ch[k]
                    }
                })
                .chain([c_l]),
            (0..n).map(|k| if pos(k) >= half { &g[k] } else { &h[k] }).chain([&u]),
        );
        let r = msm_iter(
            (0..n)
                .map(|k| {
                    let i = pos(k);
                    if i < half {
                        a[i + half] * cg[k]
                    } else {
                        b[i - half] * ch[k]
                    }
                })
                .chain([c_r]),
            (0..n).map(|k| if pos(k) < half { &g[k] } else { &h[k] }).chain([&u]),
        );
        tr.prover_point(b"ipa.L", &l);
        tr.prover_point(b"ipa.R", &r);
        folds.push((l, r));

        let x = tr.challenge_scalar(b"ipa.x");
        let x_inv = x.invert().expect("challenges are nonzero");
        for k in 0..n {
            let (sg, sh) = if pos(k) < half { (&x_inv, &x) } else { (&x, &x_inv) };
            cg[k] = cg[k] * sg;
            ch[k] = ch[k] * sh;
        }
        a = a[..half].iter().zip(&a[half..]).map(|(l, h)| x * l + x_inv * h).collect();
        b = b[..half].iter().zip(&b[half..]).map(|(l, h)| x_inv * l + x * h).collect();
    }

    let len = a.len();
    let gather = |pts: &[GroupElement], coef: &[FieldElement], i: usize| {
        msm_iter((i..n).step_by(len).map(|k| coef[k]), (i..n).step_by(len).map(|k| &pts[k]))
    };
    let live = if len > 1 { len } else { 0 };
    let mut g_cur: Vec<GroupElement> = (0..live).map(|i| gather(g, &cg, i)).collect();
    let mut h_cur: Vec<GroupElement> = (0..live).map(|i| gather(h, &ch, i)).collect();

    while a.len() > 1 {
        let half = a.len() / 2;
        let (a_lo, a_hi) = a.split_at(half);
        let (b_lo, b_hi) = b.split_at(half);
        let (g_lo, g_hi) = g_cur.split_at(half);
        let (h_lo, h_hi) = h_cur.split_at(half);

        let c_l = inner_product(a_lo, b_hi);
        let c_r = inner_product(a_hi, b_lo);
        let l = msm_iter(a_lo.iter().chain(b_hi).copied().chain([c_l]), g_hi.iter().chain(h_lo).chain([&u]));
        let r = msm_iter(a_hi.iter().chain(b_lo).copied().chain([c_r]), g_lo.iter().chain(h_hi).chain([&u]));
        tr.prover_point(b"ipa.L", &l);
        tr.prover_point(b"ipa.R", &r);
        folds.push((l, r));

        let x = tr.challenge_scalar(b"ipa.x");
        let x_inv = x.invert().expect("challenges are nonzero");
        g_cur = fold_points(g_lo, g_hi, &x_inv, &x);
        h_cur = fold_points(h_lo, h_hi, &x, &x_inv);
        a = a_lo.iter().zip(a_hi).map(|(l, h)| x * l + x_inv * h).collect();
        b = b_lo.iter().zip(b_hi).map(|(l, h)| x_inv * l + x * h).collect();
    }

    tr.prover_scalar(b"ipa.a", &a[0]);
    tr.prover_scalar(b"ipa.b", &b[0]);
    Ok(IpaProof {
        folds,
        final_a: a[0],
        final_b: b[0],
    })
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn verify_scaled(
    proof: &IpaProof,
    g: &[GroupElement],
    h: &[GroupElement],
    h_scale: Option<&[FieldElement]>,
    u: &GroupElement,
    p: &GroupElement,
    c: &FieldElement,
    n: usize,
    tr: &mut Transcript,
) -> Result<(), VerifyError> {
    if !n.is_power_of_two() {
        return Err(VerifyError::Malformed("inner-product length is not a power of two"));
    }
    if proof.folds.len() != n.trailing_zeros() as usize {
        return Err(VerifyError::Malformed("wrong number of inner-product folds"));
    }
    if g.len() < n || h.len() < n || h_scale.is_some_and(|s| s.len() != n) {
        return Err(VerifyError::NotEnoughGenerators);
    }

    let x0 = bind_statement(tr, n, p, c);
    let mut xs = Vec::with_capacity(proof.folds.len());
    for (l, r) in &proof.folds {
        tr.prover_point(b"ipa.L", l);
        tr.prover_point(b"ipa.R", r);
        xs.push(tr.challenge_scalar(b"ipa.x"));
    }
    tr.prover_scalar(b"ipa.a", &proof.final_a);
    tr.prover_scalar(b"ipa.b", &proof.final_b);

    let mut x_inv = xs.clone();
    FieldElement::batch_invert(&mut x_inv).map_err(|_| VerifyError::Malformed("zero challenge"))?;

    // s_i for g and s_i^-1 for h, built most-significant round first
    let mut s = vec![FieldElement::ONE];
    let mut s_inv = vec![FieldElement::ONE];
    for (x, xi) in xs.iter().zip(&x_inv) {
        s = s.iter().flat_map(|v| [v * xi, v * x]).collect();
        s_inv = s_inv.iter().flat_map(|v| [v * x, v * xi]).collect();
    }

    let (a, b) = (proof.final_a, proof.final_b);
    let g_exp = s.iter().map(|v| a * v);
    let h_exp: Vec<FieldElement> = match h_scale {
        Some(sc) => s_inv.iter().zip(sc).map(|(v, k)| b * v * k).collect(),
        None => s_inv.iter().map(|v| b * v).collect(),
    };
    let u_exp = (a * b - c) * x0;
    let fold_exp = xs.iter().zip(&x_inv).flat_map(|(x, xi)| [-x.square(), -xi.square()]);

    let check = msm_iter(
        g_exp
            .chain(h_exp)
            .chain([u_exp, -FieldElement::ONE])
            .chain(fold_exp),
        g[..n]
            .iter()
            .chain(&h[..n])
            .chain([u, p])
            .chain(proof.folds.iter().flat_map(|(l, r)| [l, r])),
    );
    if check.is_identity() {
        Ok(())
    } else {
        Err(VerifyError::InnerProduct)
    }
}

impl Encode for IpaProof {
    fn encode(&self, w: &mut Writer) {
        w.put_u32(self.folds.len() as u32);
        for (l, r) in &self.folds {
            w.put_point(l);
            w.put_point(r);
        }
        w.put_scalar(&self.final_a);
        w.put_scalar(&self.final_b);
    }
}

impl Decode for IpaProof {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let k = r.get_u32()? as usize;
        if k > 64 {
            return Err(Error::Decode(format!("{k} inner-product folds")));
        }
        let folds = (0..k)
            .map(|_| Ok((r.get_point()?, r.get_point()?)))
            .collect::<Result<_>>()?;
        Ok(Self {
            folds,
            final_a: r.get_scalar()?,
            final_b: r.get_scalar()?,
        })
    }
}
