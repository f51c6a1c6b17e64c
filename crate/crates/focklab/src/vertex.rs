//! Truncated generating series in a formal variable z with ket coefficients:
//! the fermion fields, the exponentials of the half Heisenberg algebras, the
//! reconstruction of creation/annihilation operators from them, and the
//! machine checks of their commutation relations.
//!
//! Exponents are stored doubled, since the charge factor z^{ch + 1/2} shifts
//! by half-integers. Everything on the plus side terminates on a fixed
//! vector, so it is computed exactly; the minus side carries an explicit
//! truncation degree.

use std::collections::BTreeMap;
use std::fmt;

use crate::boson::{alpha_apply, shift};
use crate::clifford::{psi_apply, psi_star_apply};
use crate::fock::FockVector;
use crate::halfint::HalfInt;
use crate::partition::ChargedPartition;
use crate::scalar::Rat;

/// A Laurent series window with exact ket coefficients. Exponents are 2×
/// the z-power; the window is declared so truncation is never silent.
#[derive(Clone, PartialEq, Debug)]
pub struct FSeries {
    coeffs: BTreeMap<i64, FockVector<Rat>>,
    window: (i64, i64),
}

impl FSeries {
    pub fn new(window: (i64, i64)) -> Self {
        assert!(window.0 <= window.1);
        FSeries {
            coeffs: BTreeMap::new(),
            window,
        }
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    pub fn add_term(&mut self, twice_exp: i64, v: FockVector<Rat>) {
        assert!(
            twice_exp >= self.window.0 && twice_exp <= self.window.1,
            "exponent {twice_exp}/2 outside declared window"
        );
        if v.is_zero() {
            return;
        }
        let entry = self
            .coeffs
            .entry(twice_exp)
            .or_insert_with(FockVector::zero);
        let sum = entry.clone() + v;
        if sum.is_zero() {
            self.coeffs.remove(&twice_exp);
        } else {
            *entry = sum;
        }
    }

    /// Coefficient at z^(twice_exp/2); zero inside the window, panics outside.
    pub fn coeff_twice(&self, twice_exp: i64) -> FockVector<Rat> {
        assert!(
            twice_exp >= self.window.0 && twice_exp <= self.window.1,
            "exponent {twice_exp}/2 outside declared window"
        );
        self.coeffs
            .get(&twice_exp)
            .cloned()
            .unwrap_or_else(FockVector::zero)
    }

    pub fn coeff_half(&self, m: HalfInt) -> FockVector<Rat> {
        self.coeff_twice(m.twice())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &FockVector<Rat>)> {
        self.coeffs.iter()
    }
}

impl fmt::Display for FSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 (window [{}..{}]/2)", self.window.0, self.window.1);
        }
        for (i, (e, v)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e % 2 == 0 {
                write!(f, "z^{}*({v})", e / 2)?;
            } else {
                write!(f, "z^({e}/2)*({v})")?;
            }
        }
        write!(f, "  (window [{}..{}]/2)", self.window.0, self.window.1)
    }
}

/// ψ(z) v over the window: the coefficient of z^m is ψ_m v.
pub fn psi_series(v: &FockVector<Rat>, window: (HalfInt, HalfInt)) -> FSeries {
    let (lo, hi) = (window.0.twice(), window.1.twice());
    let mut out = FSeries::new((lo, hi));
    let mut t = lo;
    while t <= hi {
        let m = HalfInt::from_twice(t);
        let mut acc = FockVector::zero();
        for (cp, c) in v.iter() {
            acc = acc + psi_apply::<Rat>(m, cp).scaled(c);
        }
        out.add_term(t, acc);
        t += 2;
    }
    out
}

/// ψ*(z) v over the window: the coefficient of z^{-m} is ψ*_m v.
pub fn psi_star_series(v: &FockVector<Rat>, window: (HalfInt, HalfInt)) -> FSeries {
    let (lo, hi) = (window.0.twice(), window.1.twice());
    let mut out = FSeries::new((lo, hi));
    let mut t = lo;
    while t <= hi {
        let m = HalfInt::from_twice(-t);
        let mut acc = FockVector::zero();
        for (cp, c) in v.iter() {
            acc = acc + psi_star_apply::<Rat>(m, cp).scaled(c);
        }
        out.add_term(t, acc);
        t += 2;
    }
    out
}

/// Largest Heisenberg mode that can act without killing everything in v.
fn max_mode(v: &FockVector<Rat>) -> i64 {
    v.support().map(|cp| cp.size() as i64).max().unwrap_or(0)
}

/// Expands exp(± Σ_{k>0} z^{∓k} α_{±k} / k) applied to v as a map from
/// doubled z-exponents to kets.
///
/// * `plus_side` selects the annihilating half (α_k, exponents z^{-k});
///   there the series terminates by itself and `max_deg` is ignored.
/// * On the minus side `max_deg` bounds the z-degree.
/// * `invert` flips the sign of the exponent argument.
fn exp_half_heisenberg(
    v: &FockVector<Rat>,
    plus_side: bool,
    invert: bool,
    max_deg: Option<i64>,
) -> BTreeMap<i64, FockVector<Rat>> {
    let mut total: BTreeMap<i64, FockVector<Rat>> = BTreeMap::new();
    total.insert(0, v.clone());
    let mut cur: BTreeMap<i64, FockVector<Rat>> = total.clone();
    let mut d: i64 = 1;
    loop {
        let mut next: BTreeMap<i64, FockVector<Rat>> = BTreeMap::new();
        for (e, w) in &cur {
            let kmax = if plus_side {
                max_mode(w)
            } else {
                match max_deg {
                    Some(dm) => dm - e.div_euclid(2),
                    None => unreachable!("minus side requires a truncation degree"),
                }
            };
            for k in 1..=kmax {
                // One more factor of (± z^{∓k} α_{±k} / k) / d.
                let mode = if plus_side { k } else { -k };
                let enew = if plus_side { e - 2 * k } else { e + 2 * k };
                let mut term = FockVector::zero();
                for (cp, c) in w.iter() {
                    term = term + alpha_apply::<Rat>(mode, cp).scaled(c);
                }
                let mut scale = Rat::new((1).into(), (k * d).into());
                if invert {
                    scale = -scale;
                }
                let term = term.scaled(&scale);
                if term.is_zero() {
                    continue;
                }
                let entry = next.entry(enew).or_insert_with(FockVector::zero);
                let sum = entry.clone() + term;
                if sum.is_zero() {
                    next.remove(&enew);
                } else {
                    *entry = sum;
                }
            }
        }
        if next.is_empty() {
            break;
        }
        for (e, w) in &next {
            let entry = total.entry(*e).or_insert_with(FockVector::zero);
            let sum = entry.clone() + w.clone();
            if sum.is_zero() {
                total.remove(e);
            } else {
                *entry = sum;
            }
        }
        cur = next;
        d += 1;
    }
    total
}

/// Γ_+(z) v, exact (the series terminates on any fixed vector).
pub fn gamma_plus(v: &FockVector<Rat>) -> FSeries {
    let lo = -2 * max_mode(v);
    let mut out = FSeries::new((lo, 0));
    for (e, w) in exp_half_heisenberg(v, true, false, None) {
        out.add_term(e, w);
    }
    out
}

/// Γ_+(z)^{-1} v, exact.
pub fn gamma_plus_inv(v: &FockVector<Rat>) -> FSeries {
    let lo = -2 * max_mode(v);
    let mut out = FSeries::new((lo, 0));
    for (e, w) in exp_half_heisenberg(v, true, true, None) {
        out.add_term(e, w);
    }
    out
}

/// Γ_-(z) v truncated at z-degree `max_deg` (inclusive).
pub fn gamma_minus(v: &FockVector<Rat>, max_deg: i64) -> FSeries {
    assert!(max_deg >= 0);
    let mut out = FSeries::new((0, 2 * max_deg));
    for (e, w) in exp_half_heisenberg(v, false, false, Some(max_deg)) {
        out.add_term(e, w);
    }
    out
}

/// Γ_-(z)^{-1} v truncated at z-degree `max_deg` (inclusive).
pub fn gamma_minus_inv(v: &FockVector<Rat>, max_deg: i64) -> FSeries {
    assert!(max_deg >= 0);
    let mut out = FSeries::new((0, 2 * max_deg));
    for (e, w) in exp_half_heisenberg(v, false, true, Some(max_deg)) {
        out.add_term(e, w);
    }
    out
}

/// The coefficient of z^m in s z^{ch+1/2} Γ_-(z) Γ_+(z)^{-1} |λ;h>. The
/// minus side is bounded by m - h - 1/2 + |λ|, which makes the result exact;
/// it must equal ψ_m |λ;h>.
pub fn fermion_from_bosons(m: HalfInt, b: &ChargedPartition) -> FockVector<Rat> {
    let h = b.charge;
    let stage1 = exp_half_heisenberg(&FockVector::basis(b.clone()), true, true, None);
    let mut out = FockVector::zero();
    for (e, w) in stage1 {
        // z^{ch+1/2} contributes h + 1/2; the remaining degree must come
        // from the exponential of the lowering modes.
        let g = m.twice() - (2 * h + 1) - e;
        if g < 0 {
            continue;
        }
        debug_assert!(g % 2 == 0, "mode parities always cancel the half shift");
        let stage2 = exp_half_heisenberg(&w, false, false, Some(g / 2));
        if let Some(part) = stage2.get(&g) {
            out = out + shift::<Rat>(1).apply(part);
        }
    }
    out
}

/// The coefficient of z^{-m} in s^{-1} z^{-ch+1/2} Γ_-(z)^{-1} Γ_+(z) |λ;h>;
/// exact, and must equal ψ*_m |λ;h>.
pub fn fermion_star_from_bosons(m: HalfInt, b: &ChargedPartition) -> FockVector<Rat> {
    let h = b.charge;
    let stage1 = exp_half_heisenberg(&FockVector::basis(b.clone()), true, false, None);
    let mut out = FockVector::zero();
    for (e, w) in stage1 {
        let g = -m.twice() - (-2 * h + 1) - e;
        if g < 0 {
            continue;
        }
        debug_assert!(g % 2 == 0, "mode parities always cancel the half shift");
        let stage2 = exp_half_heisenberg(&w, false, true, Some(g / 2));
        if let Some(part) = stage2.get(&g) {
            out = out + shift::<Rat>(-1).apply(part);
        }
    }
    out
}

/// The five commutation relations between the exponential series and the
/// fermion fields. Each right-hand side carries a scalar prefactor in the
/// two formal variables, expanded as a power series where needed.
///
/// With the conventions used here (annihilating modes paired with negative
/// powers of the series variable) the prefactors are:
///
/// * `PlusMinus`:    Γ_+(x) Γ_-(y)  = (1 - y/x)^{-1} Γ_-(y) Γ_+(x)
/// * `PlusPsi`:      Γ_+(x) ψ(z)    = (1 - z/x)^{-1} ψ(z) Γ_+(x)
/// * `MinusPsi`:     Γ_-(x) ψ(z)    = (1 - x/z)^{-1} ψ(z) Γ_-(x)
/// * `PlusPsiStar`:  Γ_+(x) ψ*(z)   = (1 - z/x)     ψ*(z) Γ_+(x)
/// * `MinusPsiStar`: Γ_-(x) ψ*(z)   = (1 - x/z)     ψ*(z) Γ_-(x)
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum GammaRelation {
    PlusMinus,
    PlusPsi,
    MinusPsi,
    PlusPsiStar,
    MinusPsiStar,
}

impl GammaRelation {
    pub const ALL: [GammaRelation; 5] = [
        GammaRelation::PlusMinus,
        GammaRelation::PlusPsi,
        GammaRelation::MinusPsi,
        GammaRelation::PlusPsiStar,
        GammaRelation::MinusPsiStar,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GammaRelation::PlusMinus => "gamma+gamma-",
            GammaRelation::PlusPsi => "gamma+psi",
            GammaRelation::MinusPsi => "gamma-psi",
            GammaRelation::PlusPsiStar => "gamma+psis",
            GammaRelation::MinusPsiStar => "gamma-psis",
        }
    }
}

/// Two-variable truncated expansion: keys are doubled exponents (first the
/// Γ variable, then z or the second Γ variable).
type TwoVar = BTreeMap<(i64, i64), FockVector<Rat>>;

fn tv_add(map: &mut TwoVar, key: (i64, i64), v: FockVector<Rat>) {
    if v.is_zero() {
        return;
    }
    let entry = map.entry(key).or_insert_with(FockVector::zero);
    let sum = entry.clone() + v;
    if sum.is_zero() {
        map.remove(&key);
    } else {
        *entry = sum;
    }
}

/// Applies one of the exponential series in its own variable to every entry.
fn tv_apply_gamma(t: &TwoVar, plus_side: bool, invert: bool, max_deg: i64, on_x: bool) -> TwoVar {
    let mut out = TwoVar::new();
    for ((ex, ez), vec) in t {
        let expd = exp_half_heisenberg(
            vec,
            plus_side,
            invert,
            if plus_side { None } else { Some(max_deg) },
        );
        for (e, w) in expd {
            let key = if on_x { (ex + e, *ez) } else { (*ex, ez + e) };
            tv_add(&mut out, key, w);
        }
    }
    out
}

/// Applies ψ(z) (or ψ*(z)) to every entry, keeping resulting z-keys whose
/// doubled value lies within ±bound.
fn tv_apply_field(t: &TwoVar, star: bool, bound: i64) -> TwoVar {
    let mut out = TwoVar::new();
    for ((ex, ez), vec) in t {
        let mut twice = -bound - ez.abs() - 1;
        while twice <= bound + ez.abs() + 1 {
            if twice.rem_euclid(2) == 1 {
                let key_z = ez + twice;
                if key_z.abs() <= bound {
                    let m = HalfInt::from_twice(if star { -twice } else { twice });
                    let mut acc = FockVector::zero();
                    for (cp, c) in vec.iter() {
                        let img = if star {
                            psi_star_apply::<Rat>(m, cp)
                        } else {
                            psi_apply::<Rat>(m, cp)
                        };
                        acc = acc + img.scaled(c);
                    }
                    tv_add(&mut out, (*ex, key_z), acc);
                }
            }
            twice += 1;
        }
    }
    out
}

/// Multiplies by (1 - x^a z^b)^{±1} where the step is given in doubled
/// exponents; the inverse is the geometric series, truncated at jmax terms.
fn tv_apply_factor(t: &TwoVar, step: (i64, i64), inverse: bool, jmax: i64) -> TwoVar {
    let mut out = TwoVar::new();
    if inverse {
        for j in 0..=jmax {
            for ((ex, ez), vec) in t {
                tv_add(&mut out, (ex + j * step.0, ez + j * step.1), vec.clone());
            }
        }
    } else {
        for ((ex, ez), vec) in t {
            tv_add(&mut out, (*ex, *ez), vec.clone());
            tv_add(&mut out, (ex + step.0, ez + step.1), -vec.clone());
        }
    }
    out
}

/// A coefficient on which the two sides of a relation differ.
#[derive(Clone, Debug)]
pub struct GammaMismatch {
    pub relation: GammaRelation,
    pub state: ChargedPartition,
    /// Doubled exponents (Γ variable, field variable).
    pub key: (i64, i64),
    pub left: FockVector<Rat>,
    pub right: FockVector<Rat>,
}

impl fmt::Display for GammaMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} on |{}> at (x^{}/2, z^{}/2): left = {}, right = {}",
            self.relation.name(),
            self.state,
            self.key.0,
            self.key.1,
            self.left,
            self.right
        )
    }
}

/// Expands both sides of the relation on the ket and compares every
/// coefficient of total degree at most `deg` in the two formal variables.
pub fn gamma_commutation_check(
    relation: GammaRelation,
    b: &ChargedPartition,
    deg: i64,
) -> Result<(), Box<GammaMismatch>> {
    assert!(deg >= 0);
    let size = b.size() as i64;
    // Internal padding: large enough that every window coefficient of both
    // sides has all its contributions computed. The exponential in the Γ
    // variable never needs to run past the window degree, since geometric
    // factors only shift its exponents further away from zero.
    let zpad = 4 * deg + 2 * size + 6;
    let minus_deg = deg + 1;
    let jmax = 2 * deg + size + 3;
    let start: TwoVar = {
        let mut t = TwoVar::new();
        t.insert((0, 0), FockVector::basis(b.clone()));
        t
    };

    let (lhs, rhs) = match relation {
        GammaRelation::PlusMinus => {
            // Γ_+(x) Γ_-(y) b  vs  (1 - y/x)^{-1} Γ_-(y) Γ_+(x) b.
            let l = tv_apply_gamma(
                &tv_apply_gamma(&start, false, false, minus_deg, false),
                true,
                false,
                0,
                true,
            );
            let r0 = tv_apply_gamma(
                &tv_apply_gamma(&start, true, false, 0, true),
                false,
                false,
                minus_deg,
                false,
            );
            let r = tv_apply_factor(&r0, (-2, 2), true, jmax);
            (l, r)
        }
        GammaRelation::PlusPsi => {
            let l = tv_apply_gamma(&tv_apply_field(&start, false, zpad), true, false, 0, true);
            let r0 = tv_apply_field(&tv_apply_gamma(&start, true, false, 0, true), false, zpad);
            let r = tv_apply_factor(&r0, (-2, 2), true, jmax);
            (l, r)
        }
        GammaRelation::MinusPsi => {
            let l = tv_apply_gamma(
                &tv_apply_field(&start, false, zpad),
                false,
                false,
                minus_deg,
                true,
            );
            let r0 = tv_apply_field(
                &tv_apply_gamma(&start, false, false, minus_deg, true),
                false,
                zpad,
            );
            let r = tv_apply_factor(&r0, (2, -2), true, jmax);
            (l, r)
        }
        GammaRelation::PlusPsiStar => {
            let l = tv_apply_gamma(&tv_apply_field(&start, true, zpad), true, false, 0, true);
            let r0 = tv_apply_field(&tv_apply_gamma(&start, true, false, 0, true), true, zpad);
            let r = tv_apply_factor(&r0, (-2, 2), false, 0);
            (l, r)
        }
        GammaRelation::MinusPsiStar => {
            let l = tv_apply_gamma(
                &tv_apply_field(&start, true, zpad),
                false,
                false,
                minus_deg,
                true,
            );
            let r0 = tv_apply_field(
                &tv_apply_gamma(&start, false, false, minus_deg, true),
                true,
                zpad,
            );
            let r = tv_apply_factor(&r0, (2, -2), false, 0);
            (l, r)
        }
    };

    let in_window = |key: &(i64, i64)| key.0.abs() + key.1.abs() <= 2 * deg;
    let mut keys: Vec<(i64, i64)> = lhs
        .keys()
        .chain(rhs.keys())
        .filter(|k| in_window(k))
        .copied()
        .collect();
    keys.sort();
    keys.dedup();
    for key in keys {
        let l = lhs.get(&key).cloned().unwrap_or_else(FockVector::zero);
        let r = rhs.get(&key).cloned().unwrap_or_else(FockVector::zero);
        if l != r {
            return Err(Box::new(GammaMismatch {
                relation,
                state: b.clone(),
                key,
                left: l,
                right: r,
            }));
        }
    }
    Ok(())
}
