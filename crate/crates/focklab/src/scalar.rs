//! Exact coefficient rings: arbitrary-precision rationals and Laurent
//! polynomials in q over them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact rational scalar. Denominators stay positive and reduced.
pub type Rat = num_rational::BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// What a coefficient ring must provide for Fock vectors and operators.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_int(n: i64) -> Self;
    fn ring_name() -> &'static str;
}

impl Scalar for Rat {
    fn from_int(n: i64) -> Self {
        rat_int(n)
    }
    fn ring_name() -> &'static str {
        "rational"
    }
}

/// A Laurent polynomial in q with rational coefficients. Zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentQ {
    coeffs: BTreeMap<i64, Rat>,
}

impl LaurentQ {
    pub fn from_rat(r: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !r.is_zero() {
            coeffs.insert(0, r);
        }
        LaurentQ { coeffs }
    }

    /// q^k.
    pub fn q_pow(k: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(k, Rat::one());
        LaurentQ { coeffs }
    }

    /// c * q^k.
    pub fn monomial(k: i64, c: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        LaurentQ { coeffs }
    }

    /// The q-integer (q^n - q^-n)/(q - q^-1).
    pub fn q_int(n: i64) -> Self {
        let mut out = LaurentQ::zero();
        let a = n.abs();
        for e in 0..a {
            out = out + LaurentQ::q_pow(a - 1 - 2 * e);
        }
        if n < 0 {
            out = -out;
        }
        out
    }

    pub fn coeff(&self, k: i64) -> Rat {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.coeffs.iter()
    }

    /// Evaluation at q = 1.
    pub fn eval_one(&self) -> Rat {
        self.coeffs.values().fold(Rat::zero(), |acc, c| acc + c)
    }

    fn top(&self) -> Option<(i64, &Rat)> {
        self.coeffs.iter().next_back().map(|(k, c)| (*k, c))
    }

    fn bottom(&self) -> Option<(i64, &Rat)> {
        self.coeffs.iter().next().map(|(k, c)| (*k, c))
    }

    /// Multiplies by q^k.
    pub fn shifted(&self, k: i64) -> Self {
        LaurentQ {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// Exact division; `None` when the divisor does not divide self.
    pub fn div_exact(&self, divisor: &LaurentQ) -> Option<LaurentQ> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentQ::zero());
        }
        // Shift both so they are ordinary polynomials, divide, shift back.
        let (s_lo, _) = self.bottom().unwrap();
        let (d_lo, _) = divisor.bottom().unwrap();
        let mut rem = self.shifted(-s_lo);
        let den = divisor.shifted(-d_lo);
        let (d_top, d_lead) = den.top().map(|(k, c)| (k, c.clone())).unwrap();
        let mut quot = LaurentQ::zero();
        while let Some((r_top, r_lead)) = rem.top().map(|(k, c)| (k, c.clone())) {
            if r_top < d_top {
                return None;
            }
            let t = LaurentQ::monomial(r_top - d_top, r_lead / d_lead.clone());
            rem = rem - t.clone() * den.clone();
            quot = quot + t;
        }
        Some(quot.shifted(s_lo - d_lo))
    }

    fn insert_add(&mut self, k: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert_with(Rat::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }
}

impl Add for LaurentQ {
    type Output = LaurentQ;
    fn add(mut self, rhs: LaurentQ) -> LaurentQ {
        for (k, c) in rhs.coeffs {
            self.insert_add(k, c);
        }
        self
    }
}

impl Sub for LaurentQ {
    type Output = LaurentQ;
    fn sub(mut self, rhs: LaurentQ) -> LaurentQ {
        for (k, c) in rhs.coeffs {
            self.insert_add(k, -c);
        }
        self
    }
}

impl Neg for LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        LaurentQ {
            coeffs: self.coeffs.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Mul for LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: LaurentQ) -> LaurentQ {
        let mut out = LaurentQ::zero();
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &rhs.coeffs {
                out.insert_add(ka + kb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl Zero for LaurentQ {
    fn zero() -> Self {
        LaurentQ {
            coeffs: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for LaurentQ {
    fn one() -> Self {
        LaurentQ::from_rat(Rat::one())
    }
}

impl fmt::Display for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest power first.
        for (k, c) in self.coeffs.iter().rev() {
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = mag.is_one();
            match (*k, coeff_is_one) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{mag}*q^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Scalar for LaurentQ {
    fn from_int(n: i64) -> Self {
        LaurentQ::from_rat(rat_int(n))
    }
    fn ring_name() -> &'static str {
        "laurent-q"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lq(terms: &[(i64, i64, i64)]) -> LaurentQ {
        let mut out = LaurentQ::zero();
        for &(k, n, d) in terms {
            out = out + LaurentQ::monomial(k, frac(n, d));
        }
        out
    }

    #[test]
    fn q_integer_identity() {
        let denom = LaurentQ::q_pow(1) - LaurentQ::q_pow(-1);
        for n in -6..=6i64 {
            let numer = LaurentQ::q_pow(n) - LaurentQ::q_pow(-n);
            assert_eq!(numer.div_exact(&denom), Some(LaurentQ::q_int(n)), "n={n}");
        }
    }

    #[test]
    fn inexact_division_detected() {
        let denom = LaurentQ::q_pow(1) - LaurentQ::q_pow(-1);
        assert_eq!(LaurentQ::one().div_exact(&denom), None);
        let num = LaurentQ::q_pow(2) + LaurentQ::one();
        assert_eq!(num.div_exact(&denom), None);
    }

    #[test]
    fn display_reads_naturally() {
        let x = lq(&[(2, 1, 1), (0, -1, 2), (-1, 3, 1)]);
        assert_eq!(x.to_string(), "q^2 - 1/2 + 3*q^-1");
        assert_eq!(LaurentQ::zero().to_string(), "0");
        assert_eq!(LaurentQ::q_int(3).to_string(), "q^2 + 1 + q^-2");
    }

    #[test]
    fn specializing_at_one() {
        assert_eq!(LaurentQ::q_int(4).eval_one(), rat_int(4));
        assert_eq!(lq(&[(5, 1, 2), (-5, 1, 2)]).eval_one(), rat_int(1));
    }

    fn arb_lq() -> impl Strategy<Value = LaurentQ> {
        proptest::collection::vec(((-6i64..6), (-20i64..20), (1i64..8)), 0..6).prop_map(|v| lq(&v))
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        ((-40i64..40), (1i64..12)).prop_map(|(n, d)| frac(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn laurent_ring_axioms(a in arb_lq(), b in arb_lq(), c in arb_lq()) {
            prop_assert_eq!(
                (a.clone() * b.clone()) * c.clone(),
                a.clone() * (b.clone() * c.clone())
            );
            prop_assert_eq!(
                (a.clone() + b.clone()) + c.clone(),
                a.clone() + (b.clone() + c.clone())
            );
            prop_assert_eq!(
                a.clone() * (b.clone() + c.clone()),
                a.clone() * b.clone() + a * c
            );
        }

        #[test]
        fn rational_ring_axioms(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!(
                (a.clone() * b.clone()) * c.clone(),
                a.clone() * (b.clone() * c.clone())
            );
            prop_assert_eq!(
                (a.clone() + b.clone()) + c.clone(),
                a.clone() + (b.clone() + c.clone())
            );
            prop_assert_eq!(
                a.clone() * (b.clone() + c.clone()),
                a.clone() * b.clone() + a * c
            );
        }

        #[test]
        fn exact_division_roundtrip(a in arb_lq(), b in arb_lq()) {
            prop_assume!(!b.is_zero());
            let prod = a.clone() * b.clone();
            prop_assert_eq!(prod.div_exact(&b), Some(a));
        }
    }
}
