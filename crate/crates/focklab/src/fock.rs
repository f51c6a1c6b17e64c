//! Finite formal linear combinations of basis kets and the operators that
//! act on them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::partition::ChargedPartition;
use crate::scalar::Scalar;

/// A finite linear combination of basis kets with coefficients in R.
/// Zero coefficients are never stored, so `==` is canonical equality.
#[derive(Clone, PartialEq, Eq)]
pub struct FockVector<R: Scalar> {
    terms: BTreeMap<ChargedPartition, R>,
}

impl<R: Scalar> FockVector<R> {
    pub fn zero() -> Self {
        FockVector {
            terms: BTreeMap::new(),
        }
    }

    /// The basis ket |λ;h>.
    pub fn basis(cp: ChargedPartition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(cp, R::one());
        FockVector { terms }
    }

    pub fn term(cp: ChargedPartition, coeff: R) -> Self {
        let mut v = FockVector::zero();
        v.add_term(cp, coeff);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, cp: &ChargedPartition) -> R {
        self.terms.get(cp).cloned().unwrap_or_else(R::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ChargedPartition, &R)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &ChargedPartition> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, cp: ChargedPartition, coeff: R) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(cp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scaled(&self, s: &R) -> Self {
        if s.is_zero() {
            return FockVector::zero();
        }
        let mut out = FockVector::zero();
        for (cp, c) in &self.terms {
            out.add_term(cp.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn map_coeffs<S: Scalar>(&self, f: impl Fn(&R) -> S) -> FockVector<S> {
        let mut out = FockVector::zero();
        for (cp, c) in &self.terms {
            out.add_term(cp.clone(), f(c));
        }
        out
    }

    /// The inner product for which the basis kets are orthonormal;
    /// symmetric and bilinear.
    pub fn inner(&self, other: &FockVector<R>) -> R {
        let mut acc = R::zero();
        for (cp, a) in &self.terms {
            if let Some(b) = other.terms.get(cp) {
                acc = acc + a.clone() * b.clone();
            }
        }
        acc
    }

    /// Terms in display order: larger |λ| first, then λ lexicographically,
    /// then charge.
    pub fn terms_canonical(&self) -> Vec<(&ChargedPartition, &R)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            b.size()
                .cmp(&a.size())
                .then_with(|| a.lambda.cmp(&b.lambda))
                .then_with(|| a.charge.cmp(&b.charge))
        });
        v
    }
}

impl<R: Scalar> Add for FockVector<R> {
    type Output = FockVector<R>;
    fn add(mut self, rhs: FockVector<R>) -> FockVector<R> {
        for (cp, c) in rhs.terms {
            self.add_term(cp, c);
        }
        self
    }
}

impl<R: Scalar> Sub for FockVector<R> {
    type Output = FockVector<R>;
    fn sub(mut self, rhs: FockVector<R>) -> FockVector<R> {
        for (cp, c) in rhs.terms {
            self.add_term(cp, -c);
        }
        self
    }
}

impl<R: Scalar> Neg for FockVector<R> {
    type Output = FockVector<R>;
    fn neg(self) -> FockVector<R> {
        FockVector {
            terms: self.terms.into_iter().map(|(cp, c)| (cp, -c)).collect(),
        }
    }
}

impl<R: Scalar> fmt::Display for FockVector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (cp, c)) in self.terms_canonical().into_iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                // A leading minus with no interior sign can be pulled out.
                Some(rest) if !rest.contains(" + ") && !rest.contains(" - ") => {
                    (true, rest.to_string())
                }
                _ => (false, s),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let needs_parens = mag.contains(" + ") || mag.contains(" - ");
            if mag == "1" {
                write!(f, "|{cp}>")?;
            } else if needs_parens {
                write!(f, "({mag})*|{cp}>")?;
            } else {
                write!(f, "{mag}*|{cp}>")?;
            }
        }
        Ok(())
    }
}

impl<R: Scalar> fmt::Debug for FockVector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<R: Scalar> FromIterator<(ChargedPartition, R)> for FockVector<R> {
    fn from_iter<T: IntoIterator<Item = (ChargedPartition, R)>>(iter: T) -> Self {
        let mut v = FockVector::zero();
        for (cp, c) in iter {
            v.add_term(cp, c);
        }
        v
    }
}

/// A linear operator given by its action on basis kets. The action must be
/// finitary: finite output support for each input ket.
#[derive(Clone)]
pub struct LinOp<R: Scalar> {
    action: Arc<dyn Fn(&ChargedPartition) -> FockVector<R> + Send + Sync>,
    descriptor: String,
}

impl<R: Scalar> LinOp<R> {
    pub fn new(
        descriptor: impl Into<String>,
        action: impl Fn(&ChargedPartition) -> FockVector<R> + Send + Sync + 'static,
    ) -> Self {
        LinOp {
            action: Arc::new(action),
            descriptor: descriptor.into(),
        }
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn zero() -> Self {
        LinOp::new("0", |_| FockVector::zero())
    }

    pub fn identity() -> Self {
        LinOp::new("1", |cp| FockVector::basis(cp.clone()))
    }

    /// Multiplication by a fixed scalar.
    pub fn scalar(c: R) -> Self {
        let name = format!("{c}");
        LinOp::new(name, move |cp| FockVector::term(cp.clone(), c.clone()))
    }

    pub fn apply_basis(&self, cp: &ChargedPartition) -> FockVector<R> {
        (self.action)(cp)
    }

    /// Linear extension to vectors.
    pub fn apply(&self, v: &FockVector<R>) -> FockVector<R> {
        let mut out = FockVector::zero();
        for (cp, c) in v.iter() {
            out = out + (self.action)(cp).scaled(c);
        }
        out
    }

    /// Operator composition: (A ∘ B)(v) = A(B(v)).
    pub fn compose(a: &LinOp<R>, b: &LinOp<R>) -> LinOp<R> {
        let (fa, fb) = (a.action.clone(), b.action.clone());
        let name = format!("{}*{}", a.descriptor, b.descriptor);
        LinOp::new(name, move |cp| {
            let mid = fb(cp);
            let mut out = FockVector::zero();
            for (m, c) in mid.iter() {
                out = out + fa(m).scaled(c);
            }
            out
        })
    }

    pub fn add(a: &LinOp<R>, b: &LinOp<R>) -> LinOp<R> {
        let (fa, fb) = (a.action.clone(), b.action.clone());
        let name = format!("{} + {}", a.descriptor, b.descriptor);
        LinOp::new(name, move |cp| fa(cp) + fb(cp))
    }

    pub fn sub(a: &LinOp<R>, b: &LinOp<R>) -> LinOp<R> {
        let (fa, fb) = (a.action.clone(), b.action.clone());
        let name = format!("{} - ({})", a.descriptor, b.descriptor);
        LinOp::new(name, move |cp| fa(cp) - fb(cp))
    }

    pub fn scale(&self, c: R) -> LinOp<R> {
        let f = self.action.clone();
        let name = format!("{}*({})", c, self.descriptor);
        LinOp::new(name, move |cp| f(cp).scaled(&c))
    }

    pub fn negated(&self) -> LinOp<R> {
        self.scale(-R::one())
    }

    /// [A, B] = A∘B - B∘A.
    pub fn commutator(a: &LinOp<R>, b: &LinOp<R>) -> LinOp<R> {
        let mut out = LinOp::sub(&LinOp::compose(a, b), &LinOp::compose(b, a));
        out.descriptor = format!("[{}, {}]", a.descriptor, b.descriptor);
        out
    }

    /// Anticommutator {A, B} = A∘B + B∘A.
    pub fn anticommutator(a: &LinOp<R>, b: &LinOp<R>) -> LinOp<R> {
        let mut out = LinOp::add(&LinOp::compose(a, b), &LinOp::compose(b, a));
        out.descriptor = format!("{{{}, {}}}", a.descriptor, b.descriptor);
        out
    }
}

impl<R: Scalar> Mul<&LinOp<R>> for &LinOp<R> {
    type Output = LinOp<R>;
    fn mul(self, rhs: &LinOp<R>) -> LinOp<R> {
        LinOp::compose(self, rhs)
    }
}

impl<R: Scalar> fmt::Debug for LinOp<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinOp({})", self.descriptor)
    }
}

/// A witness that two operators disagree on a basis ket.
#[derive(Clone, Debug)]
pub struct OpMismatch<R: Scalar> {
    pub state: ChargedPartition,
    pub left: FockVector<R>,
    pub right: FockVector<R>,
}

impl<R: Scalar> fmt::Display for OpMismatch<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "on |{}>: left = {}, right = {}",
            self.state, self.left, self.right
        )
    }
}

/// Checks A(b) = B(b) on every listed ket, returning the first mismatch.
pub fn operators_equal_on<R: Scalar>(
    a: &LinOp<R>,
    b: &LinOp<R>,
    states: &[ChargedPartition],
) -> Result<(), OpMismatch<R>> {
    for cp in states {
        let left = a.apply_basis(cp);
        let right = b.apply_basis(cp);
        if left != right {
            return Err(OpMismatch {
                state: cp.clone(),
                left,
                right,
            });
        }
    }
    Ok(())
}
