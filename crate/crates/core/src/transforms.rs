//! Circuit-level rewrites: bounded liveness-to-safety, and the reverse
//! justice construction that turns a synthesized model into a standard
//! model-checking problem.

use thiserror::Error;

use crate::aig::{Aig, AigerDoc, Format, Justice, Lit, Signal};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("expected exactly one justice signal, found {0}")]
    JusticeCount(usize),
}

/// The single justice literal of `doc`, if there is exactly one.
pub fn single_justice(doc: &AigerDoc) -> Result<Lit, TransformError> {
    match doc.justice.as_slice() {
        [j] if j.lits.len() == 1 => Ok(j.lits[0]),
        [j] => Err(TransformError::JusticeCount(j.lits.len())),
        js => Err(TransformError::JusticeCount(js.len())),
    }
}

fn bits_for(n: u64) -> usize {
    if n <= 1 {
        0
    } else {
        (64 - (n - 1).leading_zeros()) as usize
    }
}

/// `value(bits) == c`, bits least significant first.
fn equals_const(aig: &mut Aig, bits: &[Lit], c: u64) -> Lit {
    if bits.len() < 64 && c >> bits.len() != 0 {
        return Lit::FALSE;
    }
    let lits: Vec<Lit> = bits
        .iter()
        .enumerate()
        .map(|(i, b)| b.negate_if(c >> i & 1 == 0))
        .collect();
    aig.and_all(lits)
}

/// `value(bits) > c`.
fn greater_than_const(aig: &mut Aig, bits: &[Lit], c: u64) -> Lit {
    // scan from the least significant bit: gt_i compares bits[..=i]
    let mut gt = Lit::FALSE;
    for (i, &b) in bits.iter().enumerate() {
        gt = if c >> i & 1 == 1 {
            aig.and(b, gt)
        } else {
            aig.or(b, gt)
        };
    }
    if bits.len() < 64 && c >> bits.len() != 0 {
        return Lit::FALSE;
    }
    gt
}

/// `value(bits) + 1`, wrapping.
fn increment(aig: &mut Aig, bits: &[Lit]) -> Vec<Lit> {
    let mut carry = Lit::TRUE;
    bits.iter()
        .map(|&b| {
            let s = aig.xor(b, carry);
            carry = aig.and(b, carry);
            s
        })
        .collect()
}

/// Replaces the liveness part of the objective by a window of `k` steps:
/// the system loses once `just` has been absent for more than `k`
/// consecutive steps. The result is a standard single-output safety game.
///
/// A saturating counter tracks the steps since `just` last held and a latch
/// remembers whether an invariant constraint has failed. The output is
/// `ok ∧ (bad ∨ counter > k)` where `ok` means the constraints held at every
/// step up to and including the current one, so a violation coinciding
/// with the first constraint failure is forgiven.
pub fn justice_to_safety(doc: &AigerDoc, k: u32) -> Result<AigerDoc, TransformError> {
    let just = single_justice(doc)?;
    let mut out = doc.clone();
    out.format = Format::Old;
    out.justice.clear();

    let width = bits_for(u64::from(k) + 2);
    let counter: Vec<Lit> = (0..width)
        .map(|i| {
            let name = out.fresh_name(&format!("__window.__bit{i}"));
            out.add_latch(name)
        })
        .collect();
    let violated_name = out.fresh_name("__inv_violated");
    let violated = out.add_latch(violated_name);

    let aig = &mut out.aig;
    let saturated = equals_const(aig, &counter, u64::from(k) + 1);
    let inc = increment(aig, &counter);
    let next_counter: Vec<Lit> = counter
        .iter()
        .zip(&inc)
        .map(|(&c, &i)| {
            let held = aig.ite(saturated, c, i);
            aig.and(!just, held)
        })
        .collect();
    let inv = aig.and_all(doc.constraints.iter().map(|s| s.lit));
    let ok_now = aig.and(!violated, inv);
    let any_bad = aig.or_all(doc.bad.iter().map(|s| s.lit));
    let late = greater_than_const(aig, &counter, u64::from(k));
    let lose = aig.or(any_bad, late);
    let bad = aig.and(ok_now, lose);

    for (c, n) in counter.iter().zip(next_counter) {
        out.set_next(*c, n);
    }
    out.set_next(violated, !ok_now);
    out.bad.clear();
    out.constraints.clear();
    out.outputs = vec![Signal::new(bad, Some("bad"))];
    Ok(out)
}

/// Monitor states of [`reverse_justice`].
const WAITING: u64 = 0;
const CHECKING: u64 = 1;
const DEAD: u64 = 2;

/// Adds a fresh input `aux` and a three-state monitor: it waits until `aux`
/// holds, then checks that `just` never holds again (dying if it does).
/// The new justice signal `checking ∧ ¬just` recurs on some trace iff the
/// original model has a trace on which `just` eventually stops.
pub fn reverse_justice(doc: &AigerDoc) -> Result<AigerDoc, TransformError> {
    let just = match doc.justice.len() {
        0 => Lit::TRUE,
        _ => single_justice(doc)?,
    };
    let mut out = doc.clone();
    out.format = Format::New;
    let aux_name = out.fresh_name("aux");
    let aux = out.add_input(aux_name);
    let state: Vec<Lit> = (0..2)
        .map(|i| {
            let name = out.fresh_name(&format!("__aux_monitor.__bit{i}"));
            out.add_latch(name)
        })
        .collect();
    let aig = &mut out.aig;
    let waiting = equals_const(aig, &state, WAITING);
    let checking = equals_const(aig, &state, CHECKING);
    let dead = equals_const(aig, &state, DEAD);
    let start = aig.and(waiting, aux);
    let keep_checking = aig.and(checking, !just);
    let to_checking = aig.or(start, keep_checking);
    let die = aig.and(checking, just);
    let to_dead = aig.or(die, dead);
    // CHECKING = 01, DEAD = 10
    out.set_next(state[0], to_checking);
    out.set_next(state[1], to_dead);
    let just_prime = out.aig.and(checking, !just);
    out.justice = vec![Justice {
        lits: vec![just_prime],
        name: Some("just_reversed".into()),
    }];
    Ok(out)
}
