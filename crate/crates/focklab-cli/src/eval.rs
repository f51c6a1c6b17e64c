//! Evaluation of operator expressions over a chosen coefficient ring.
//!
//! Products compose right-to-left (the factor nearest the ket acts first),
//! scalars act as multiples of the identity, and brackets are commutators.

use std::fmt;

use focklab::boson::{alpha, alpha0, shift};
use focklab::clifford::{psi, psi_star};
use focklab::fock::LinOp;
use focklab::matalg::{act_d, act_ebar, chevalley_e, chevalley_f};
use focklab::qfock::{e_q, f_q, k_q};
use focklab::scalar::{frac, LaurentQ, Rat, Scalar};
use focklab::HalfInt;

use crate::expr::{Atom, Expr};

/// An expression that cannot be evaluated in the requested context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    MissingLevel { atom: String },
    RingMismatch { atom: String, ring: &'static str },
    BadResidue { atom: String, level: u32 },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::MissingLevel { atom } => {
                write!(f, "atom {atom} needs --level")
            }
            EvalError::RingMismatch { atom, ring } => {
                write!(
                    f,
                    "atom {atom} is not defined over the {ring} ring (use --ring q)"
                )
            }
            EvalError::BadResidue { atom, level } => {
                write!(f, "atom {atom} has residue outside [0, {level})")
            }
        }
    }
}

impl std::error::Error for EvalError {}

/// What a coefficient ring must provide to evaluate every atom.
pub trait EvalRing: Scalar {
    fn fraction(num: u64, den: u64) -> Self;
    fn q_power(k: i64) -> Option<Self>;
    fn op_e_q(i: u32, level: u32) -> Option<LinOp<Self>>;
    fn op_f_q(i: u32, level: u32) -> Option<LinOp<Self>>;
    fn op_k_q(i: u32, level: u32) -> Option<LinOp<Self>>;
}

impl EvalRing for Rat {
    fn fraction(num: u64, den: u64) -> Self {
        frac(num as i64, den as i64)
    }
    fn q_power(_k: i64) -> Option<Self> {
        None
    }
    fn op_e_q(_i: u32, _level: u32) -> Option<LinOp<Self>> {
        None
    }
    fn op_f_q(_i: u32, _level: u32) -> Option<LinOp<Self>> {
        None
    }
    fn op_k_q(_i: u32, _level: u32) -> Option<LinOp<Self>> {
        None
    }
}

impl EvalRing for LaurentQ {
    fn fraction(num: u64, den: u64) -> Self {
        LaurentQ::from_rat(frac(num as i64, den as i64))
    }
    fn q_power(k: i64) -> Option<Self> {
        Some(LaurentQ::q_pow(k))
    }
    fn op_e_q(i: u32, level: u32) -> Option<LinOp<Self>> {
        Some(e_q(i, level))
    }
    fn op_f_q(i: u32, level: u32) -> Option<LinOp<Self>> {
        Some(f_q(i, level))
    }
    fn op_k_q(i: u32, level: u32) -> Option<LinOp<Self>> {
        Some(k_q(i, level))
    }
}

fn need_level(atom: &Atom, level: Option<u32>) -> Result<u32, EvalError> {
    level.ok_or_else(|| EvalError::MissingLevel {
        atom: atom.to_string(),
    })
}

fn check_residue(atom: &Atom, i: u32, level: u32) -> Result<(), EvalError> {
    if i < level {
        Ok(())
    } else {
        Err(EvalError::BadResidue {
            atom: atom.to_string(),
            level,
        })
    }
}

/// Builds the operator for one atom.
fn eval_atom<R: EvalRing>(atom: &Atom, level: Option<u32>) -> Result<LinOp<R>, EvalError> {
    let mismatch = |a: &Atom| EvalError::RingMismatch {
        atom: a.to_string(),
        ring: R::ring_name(),
    };
    match atom {
        Atom::Alpha(k) => Ok(alpha(*k)),
        Atom::Alpha0 => Ok(alpha0()),
        Atom::Psi(m) => Ok(psi(HalfInt::from_twice(m.0))),
        Atom::PsiStar(m) => Ok(psi_star(HalfInt::from_twice(m.0))),
        Atom::Shift => Ok(shift(1)),
        Atom::ShiftInv => Ok(shift(-1)),
        Atom::Ebar(m, n) => Ok(act_ebar(HalfInt::from_twice(m.0), HalfInt::from_twice(n.0))),
        Atom::ChevE(i) => {
            let ell = need_level(atom, level)?;
            check_residue(atom, *i, ell)?;
            Ok(chevalley_e(*i, ell))
        }
        Atom::ChevF(i) => {
            let ell = need_level(atom, level)?;
            check_residue(atom, *i, ell)?;
            Ok(chevalley_f(*i, ell))
        }
        Atom::Derivation => {
            let ell = need_level(atom, level)?;
            Ok(act_d(ell))
        }
        Atom::QE(i) => {
            let ell = need_level(atom, level)?;
            check_residue(atom, *i, ell)?;
            R::op_e_q(*i, ell).ok_or_else(|| mismatch(atom))
        }
        Atom::QF(i) => {
            let ell = need_level(atom, level)?;
            check_residue(atom, *i, ell)?;
            R::op_f_q(*i, ell).ok_or_else(|| mismatch(atom))
        }
        Atom::QK(i) => {
            let ell = need_level(atom, level)?;
            check_residue(atom, *i, ell)?;
            R::op_k_q(*i, ell).ok_or_else(|| mismatch(atom))
        }
    }
}

/// Evaluates the expression to an operator over R.
pub fn eval_expr<R: EvalRing>(expr: &Expr, level: Option<u32>) -> Result<LinOp<R>, EvalError> {
    match expr {
        Expr::Atom(a) => eval_atom(a, level),
        Expr::Num { num, den } => Ok(LinOp::scalar(R::fraction(*num, *den))),
        Expr::QPow(k) => {
            let c = R::q_power(*k).ok_or(EvalError::RingMismatch {
                atom: format!("q^{k}"),
                ring: R::ring_name(),
            })?;
            Ok(LinOp::scalar(c))
        }
        Expr::Add(l, r) => Ok(LinOp::add(&eval_expr(l, level)?, &eval_expr(r, level)?)),
        Expr::Sub(l, r) => Ok(LinOp::sub(&eval_expr(l, level)?, &eval_expr(r, level)?)),
        Expr::Mul(l, r) => Ok(LinOp::compose(&eval_expr(l, level)?, &eval_expr(r, level)?)),
        Expr::Bracket(l, r) => Ok(LinOp::commutator(
            &eval_expr(l, level)?,
            &eval_expr(r, level)?,
        )),
    }
}
