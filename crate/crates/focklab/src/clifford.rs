//! Creation and annihilation operators on wedges.
//!
//! `psi(m)` wedges e_m on the front and sorts it into place; `psi_star(m)`
//! strips e_m off. Signs count the beads above position m, which is the
//! transposition parity without ever materializing the infinite wedge.

use std::fmt;

use crate::fock::{FockVector, LinOp};
use crate::halfint::HalfInt;
use crate::maya::{blacks_above, is_black};
use crate::partition::{ChargedPartition, Partition};
use crate::scalar::Scalar;

/// One Clifford generator.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct CliffordGen {
    pub kind: GenKind,
    pub position: HalfInt,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum GenKind {
    Creation,
    Annihilation,
}

impl fmt::Display for CliffordGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::Creation => write!(f, "psi({})", self.position),
            GenKind::Annihilation => write!(f, "psis({})", self.position),
        }
    }
}

/// Adds a bead at position m. `None` when m is already occupied; otherwise
/// the sign (-1)^{beads above m} and the ket with charge raised by one.
pub fn insert_bead(cp: &ChargedPartition, m: HalfInt) -> Option<(i32, ChargedPartition)> {
    if is_black(cp, m) {
        return None;
    }
    let j = blacks_above(cp, m) as usize;
    let t = (m.twice() - 2 * cp.charge - 1) / 2;
    // Beads above m keep their positions but the charge rises, so their parts
    // drop by one; the new bead lands at part t + j; the rest shift down.
    let len = cp.lambda.len();
    debug_assert!(j <= len);
    let mut parts: Vec<u32> = Vec::with_capacity(len + 1);
    for i in 1..=j {
        parts.push(cp.lambda.part(i) - 1);
    }
    let new_part = t + j as i64;
    debug_assert!(new_part >= 0);
    parts.push(new_part as u32);
    for i in (j + 1)..=len {
        parts.push(cp.lambda.part(i));
    }
    let lambda = Partition::new(parts).expect("bead insertion preserves partition shape");
    let sign = if j % 2 == 0 { 1 } else { -1 };
    Some((sign, ChargedPartition::new(lambda, cp.charge + 1)))
}

/// Removes the bead at position m. `None` when m is empty; otherwise the
/// sign (-1)^{beads above m} and the ket with charge lowered by one.
pub fn remove_bead(cp: &ChargedPartition, m: HalfInt) -> Option<(i32, ChargedPartition)> {
    if !is_black(cp, m) {
        return None;
    }
    let j = blacks_above(cp, m) as usize; // removed bead has index j+1
    let len = cp.lambda.len();
    let mut parts: Vec<u32> = Vec::with_capacity(len.max(j));
    for i in 1..=j.min(len) {
        parts.push(cp.lambda.part(i) + 1);
    }
    // If the bead sits in the all-black tail, the rows between the listed
    // parts and the removed bead become rows of length one.
    for _ in len..j {
        parts.push(1);
    }
    for i in (j + 2)..=(len + 1) {
        let p = cp.lambda.part(i);
        if p == 0 {
            break;
        }
        parts.push(p);
    }
    let lambda = Partition::new(parts).expect("bead removal preserves partition shape");
    let sign = if j % 2 == 0 { 1 } else { -1 };
    Some((sign, ChargedPartition::new(lambda, cp.charge - 1)))
}

/// ψ_m applied to a ket.
pub fn psi_apply<R: Scalar>(m: HalfInt, cp: &ChargedPartition) -> FockVector<R> {
    match insert_bead(cp, m) {
        None => FockVector::zero(),
        Some((sign, out)) => FockVector::term(out, R::from_int(sign as i64)),
    }
}

/// ψ*_m applied to a ket.
pub fn psi_star_apply<R: Scalar>(m: HalfInt, cp: &ChargedPartition) -> FockVector<R> {
    match remove_bead(cp, m) {
        None => FockVector::zero(),
        Some((sign, out)) => FockVector::term(out, R::from_int(sign as i64)),
    }
}

/// The operator ψ_m.
pub fn psi<R: Scalar>(m: HalfInt) -> LinOp<R> {
    LinOp::new(format!("psi({m})"), move |cp| psi_apply(m, cp))
}

/// The operator ψ*_m.
pub fn psi_star<R: Scalar>(m: HalfInt) -> LinOp<R> {
    LinOp::new(format!("psis({m})"), move |cp| psi_star_apply(m, cp))
}

/// Applies Σ coeff · ψ_m ψ*_n to a ket. The caller supplies the finitely
/// many pairs that can act; any pair acting by zero just contributes zero.
pub fn bilinear_sum<R: Scalar>(
    pairs: &[(R, HalfInt, HalfInt)],
    cp: &ChargedPartition,
) -> FockVector<R> {
    let mut out = FockVector::zero();
    for (coeff, m, n) in pairs {
        let mid = psi_star_apply::<R>(*n, cp);
        for (state, c) in mid.iter() {
            out = out + psi_apply::<R>(*m, state).scaled(&(coeff.clone() * c.clone()));
        }
    }
    out
}

/// Verifies the three anticommutation relations
/// {ψ_m, ψ_n} = 0, {ψ*_m, ψ*_n} = 0, {ψ_n, ψ*_m} = δ_{m,n}
/// as operators on the given kets; reports the first failing ket.
pub fn anticommutator_check(
    m: HalfInt,
    n: HalfInt,
    states: &[ChargedPartition],
) -> Result<(), ChargedPartition> {
    use crate::scalar::Rat;
    let pp = LinOp::anticommutator(&psi::<Rat>(m), &psi::<Rat>(n));
    let ss = LinOp::anticommutator(&psi_star::<Rat>(m), &psi_star::<Rat>(n));
    let ps = LinOp::anticommutator(&psi::<Rat>(n), &psi_star::<Rat>(m));
    let delta = if m == n {
        LinOp::identity()
    } else {
        LinOp::zero()
    };
    for cp in states {
        if !pp.apply_basis(cp).is_zero()
            || !ss.apply_basis(cp).is_zero()
            || ps.apply_basis(cp) != delta.apply_basis(cp)
        {
            return Err(cp.clone());
        }
    }
    Ok(())
}
