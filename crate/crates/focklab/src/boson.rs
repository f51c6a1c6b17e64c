//! The Heisenberg generators acting on kets by bead moves, the charge
//! operator, the shift operator, and the equivalent bilinear route.
//!
//! For k > 0, `alpha(k)` moves one black bead k places toward the tail
//! ("right" in the diagram, where positions grow to the left); for k < 0 the
//! bead moves the other way. Each move carries the sign (-1)^{beads jumped}.

use crate::clifford::bilinear_sum;
use crate::fock::{FockVector, LinOp};
use crate::halfint::HalfInt;
use crate::maya::{black_positions, blacks_above, is_black};
use crate::partition::{ChargedPartition, Partition};
use crate::scalar::Scalar;

/// A Heisenberg generator index; zero is excluded (the charge operator is
/// exposed separately).
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct BosonGen(pub i64);

impl BosonGen {
    pub fn new(k: i64) -> Self {
        assert!(k != 0, "alpha(0) is the charge operator; use alpha0");
        BosonGen(k)
    }
}

/// Rebuilds the ket whose bead multiset is the current one with `from`
/// replaced by `to`; the charge is unchanged.
fn with_bead_moved(cp: &ChargedPartition, from: HalfInt, to: HalfInt) -> ChargedPartition {
    let depth = cp.lambda.len() + from.twice().abs_diff(to.twice()) as usize / 2 + 2;
    let mut beads = black_positions(cp, depth);
    let idx = beads
        .iter()
        .position(|&b| b == from)
        .expect("moving bead exists");
    beads[idx] = to;
    beads.sort_unstable_by(|a, b| b.cmp(a));
    let h = cp.charge;
    let parts: Vec<u32> = beads
        .iter()
        .enumerate()
        .map(|(i, b)| ((b.twice() - 2 * h - 1) / 2 + i as i64 + 1) as u32)
        .collect();
    ChargedPartition::new(Partition::new(parts).expect("bead move preserves shape"), h)
}

/// α_k applied to a ket: all single-bead moves by k places, with jump signs.
pub fn alpha_apply<R: Scalar>(k: i64, cp: &ChargedPartition) -> FockVector<R> {
    assert!(k != 0);
    let len = cp.lambda.len();
    let candidates = if k > 0 { len } else { len + (-k) as usize };
    if candidates == 0 {
        return FockVector::zero();
    }
    let mut out = FockVector::zero();
    for p in black_positions(cp, candidates) {
        let q = p - k;
        if is_black(cp, q) {
            continue;
        }
        // Beads strictly between the endpoints are jumped.
        let jumped = if k > 0 {
            blacks_above(cp, q) - blacks_above(cp, p) - 1
        } else {
            blacks_above(cp, p) - blacks_above(cp, q)
        };
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        out.add_term(with_bead_moved(cp, p, q), R::from_int(sign));
    }
    out
}

/// The operator α_k (k ≠ 0).
pub fn alpha<R: Scalar>(k: i64) -> LinOp<R> {
    BosonGen::new(k);
    LinOp::new(format!("alpha({k})"), move |cp| alpha_apply(k, cp))
}

/// α_0: multiplication by the charge on each graded piece.
pub fn alpha0<R: Scalar>() -> LinOp<R> {
    LinOp::new("a0", |cp| {
        FockVector::term(cp.clone(), R::from_int(cp.charge))
    })
}

/// The shift s^{±1}: |λ;h> -> |λ;h±1>.
pub fn shift<R: Scalar>(step: i64) -> LinOp<R> {
    assert!(step == 1 || step == -1);
    let name = if step == 1 { "s" } else { "s^-1" };
    LinOp::new(name, move |cp| {
        FockVector::basis(ChargedPartition::new(cp.lambda.clone(), cp.charge + step))
    })
}

/// α_k computed through the Clifford bilinears Σ_m ψ_m ψ*_{m+k}; the
/// effective range is read off the ket's bead window.
pub fn alpha_via_clifford<R: Scalar>(k: i64, cp: &ChargedPartition) -> FockVector<R> {
    assert!(k != 0);
    let depth = cp.lambda.len() + k.unsigned_abs() as usize + 2;
    let pairs: Vec<(R, HalfInt, HalfInt)> = black_positions(cp, depth)
        .into_iter()
        .map(|n| (R::one(), n - k, n))
        .collect();
    bilinear_sum(&pairs, cp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::operators_equal_on;
    use crate::partition::ribbon_removals;
    use crate::scalar::{rat_int, Rat};

    fn cp(parts: &[u32], charge: i64) -> ChargedPartition {
        ChargedPartition::from_parts(parts, charge).unwrap()
    }

    fn ket(parts: &[u32], charge: i64) -> FockVector<Rat> {
        FockVector::basis(cp(parts, charge))
    }

    #[test]
    fn rightward_moves_on_the_twelve_box_state() {
        let got = alpha_apply::<Rat>(2, &cp(&[4, 3, 3, 1, 1], -1));
        let want = -ket(&[4, 2, 2, 1, 1], -1) + ket(&[4, 3, 1, 1, 1], -1) - ket(&[4, 3, 3], -1);
        assert_eq!(got, want);
    }

    #[test]
    fn leftward_moves_on_the_twelve_box_state() {
        let got = alpha_apply::<Rat>(-4, &cp(&[4, 3, 3, 1, 1], -1));
        let want = ket(&[8, 3, 3, 1, 1], -1) - ket(&[6, 5, 3, 1, 1], -1)
            + ket(&[5, 5, 4, 1, 1], -1)
            + ket(&[4, 3, 3, 2, 2, 2], -1)
            - ket(&[4, 3, 3, 1, 1, 1, 1, 1, 1], -1);
        assert_eq!(got, want);
    }

    #[test]
    fn positive_modes_kill_vacua() {
        for k in 1..=6 {
            for h in -3..=3 {
                assert!(alpha_apply::<Rat>(k, &cp(&[], h)).is_zero());
            }
        }
    }

    #[test]
    fn charge_operator_and_shift() {
        let a0 = alpha0::<Rat>();
        assert!(a0.apply_basis(&cp(&[], 0)).is_zero());
        assert_eq!(
            a0.apply_basis(&cp(&[4, 3, 3, 1, 1], -1)),
            ket(&[4, 3, 3, 1, 1], -1).scaled(&rat_int(-1))
        );
        assert_eq!(
            a0.apply_basis(&cp(&[1], 2)),
            ket(&[1], 2).scaled(&rat_int(2))
        );

        let s = shift::<Rat>(1);
        assert_eq!(s.apply_basis(&cp(&[1], 2)), ket(&[1], 3));
        let round = LinOp::compose(&shift::<Rat>(-1), &s);
        let states = [cp(&[], 0), cp(&[3, 2], -1)];
        assert!(operators_equal_on(&round, &LinOp::identity(), &states).is_ok());
    }

    #[test]
    fn clifford_route_examples() {
        assert_eq!(
            alpha_via_clifford::<Rat>(2, &cp(&[4, 3, 3, 1, 1], -1)),
            alpha_apply::<Rat>(2, &cp(&[4, 3, 3, 1, 1], -1))
        );
        assert_eq!(alpha_via_clifford::<Rat>(1, &cp(&[1], 0)), ket(&[], 0));
        assert!(alpha_via_clifford::<Rat>(5, &cp(&[1], 0)).is_zero());
    }

    #[test]
    fn bead_moves_agree_with_clifford_bilinears() {
        for lam in Partition::all_up_to(7) {
            for h in [-1, 0, 2] {
                let state = ChargedPartition::new(lam.clone(), h);
                for k in (-5..=5i64).filter(|&k| k != 0) {
                    assert_eq!(
                        alpha_apply::<Rat>(k, &state),
                        alpha_via_clifford::<Rat>(k, &state),
                        "k={k} state={state}"
                    );
                }
            }
        }
    }

    #[test]
    fn support_is_ribbon_removal_with_height_signs() {
        for lam in Partition::all_up_to(10) {
            let state = ChargedPartition::new(lam.clone(), 0);
            for k in 1..=6u32 {
                let got = alpha_apply::<Rat>(k as i64, &state);
                let mut want = FockVector::zero();
                for r in ribbon_removals(&lam, k) {
                    let sign = if (r.rows_spanned - 1) % 2 == 0 { 1 } else { -1 };
                    want.add_term(ChargedPartition::new(r.remaining, 0), rat_int(sign));
                }
                assert_eq!(got, want, "λ={lam} k={k}");
            }
        }
    }

    #[test]
    fn heisenberg_relation_small() {
        let states: Vec<ChargedPartition> = Partition::all_up_to(5)
            .into_iter()
            .map(|lam| ChargedPartition::new(lam, 0))
            .collect();
        for j in (-3..=3i64).filter(|&j| j != 0) {
            for k in (-3..=3i64).filter(|&k| k != 0) {
                let br = LinOp::commutator(&alpha::<Rat>(j), &alpha::<Rat>(k));
                let want = if j == -k {
                    LinOp::scalar(rat_int(j))
                } else {
                    LinOp::zero()
                };
                assert!(
                    operators_equal_on(&br, &want, &states).is_ok(),
                    "[alpha({j}), alpha({k})]"
                );
            }
        }
    }

    #[test]
    fn alpha_commutes_with_shift() {
        let states = [cp(&[], 0), cp(&[2, 1], -1), cp(&[4, 1], 2)];
        for k in (-4..=4i64).filter(|&k| k != 0) {
            let a = alpha::<Rat>(k);
            let s = shift::<Rat>(1);
            let lhs = LinOp::compose(&a, &s);
            let rhs = LinOp::compose(&s, &a);
            assert!(operators_equal_on(&lhs, &rhs, &states).is_ok());
        }
    }
}
