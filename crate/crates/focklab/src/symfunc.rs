//! Schur polynomials, power-sum expansions, character polynomials, the basis
//! isomorphism onto the polynomial side, and the differentiation/multiplication
//! action there.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::fock::FockVector;
use crate::partition::{ribbon_removals, Partition};
use crate::scalar::{rat_int, Rat};

/// A polynomial in y_1..y_n, stored sparsely on exponent vectors of fixed
/// length n. Used for symmetric-function arithmetic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Rat>,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        SymPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = SymPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn add_term(&mut self, expo: Vec<u32>, c: Rat) {
        assert_eq!(expo.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(expo) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, s: &Rat) -> SymPoly {
        let mut out = SymPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = SymPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let expo: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(expo, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Sets y_{n} = 0 and drops the last variable.
    pub fn restrict_last_to_zero(&self) -> SymPoly {
        assert!(self.nvars >= 1);
        let mut out = SymPoly::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            if e[self.nvars - 1] == 0 {
                out.add_term(e[..self.nvars - 1].to_vec(), c.clone());
            }
        }
        out
    }

    /// Applies a permutation of the variables.
    pub fn permuted(&self, perm: &[usize]) -> SymPoly {
        assert_eq!(perm.len(), self.nvars);
        let mut out = SymPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut expo = vec![0; self.nvars];
            for (i, &p) in perm.iter().enumerate() {
                expo[p] = e[i];
            }
            out.add_term(expo, c.clone());
        }
        out
    }

    /// The power sum p_k = y_1^k + ... + y_n^k.
    pub fn power_sum(nvars: usize, k: u32) -> SymPoly {
        assert!(k >= 1);
        let mut p = SymPoly::zero(nvars);
        for i in 0..nvars {
            let mut e = vec![0; nvars];
            e[i] = k;
            p.add_term(e, Rat::one());
        }
        p
    }

    /// p_μ = p_{μ_1} ⋯ p_{μ_r}.
    pub fn power_sum_product(nvars: usize, mu: &Partition) -> SymPoly {
        let mut acc = SymPoly::constant(nvars, Rat::one());
        for &part in mu.parts() {
            acc = acc.mul(&SymPoly::power_sum(nvars, part));
        }
        acc
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let degree = |e: &[u32]| e.iter().map(|&x| x as u64).sum::<u64>();
        let mut items: Vec<(&Vec<u32>, &Rat)> = self.terms.iter().collect();
        items.sort_by(|(ea, _), (eb, _)| degree(ea).cmp(&degree(eb)).then_with(|| eb.cmp(ea)));
        for (i, (e, c)) in items.into_iter().enumerate() {
            let neg = c < &Rat::zero();
            let mag = if neg { -(*c).clone() } else { (*c).clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (idx, &pow) in e.iter().enumerate() {
                match pow {
                    0 => {}
                    1 => factors.push(format!("y{}", idx + 1)),
                    p => factors.push(format!("y{}^{}", idx + 1, p)),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Column-strict fillings: weakly increasing along rows, strictly increasing
/// down columns.
pub fn is_column_strict(lambda: &Partition, rows: &[Vec<u32>]) -> bool {
    if rows.len() != lambda.len() {
        return false;
    }
    for (r, row) in rows.iter().enumerate() {
        if row.len() != lambda.part(r + 1) as usize {
            return false;
        }
        if row.iter().any(|&v| v < 1) {
            return false;
        }
        if !row.windows(2).all(|w| w[0] <= w[1]) {
            return false;
        }
        if r > 0 {
            let above = &rows[r - 1];
            if !row.iter().enumerate().all(|(c, &v)| v > above[c]) {
                return false;
            }
        }
    }
    true
}

/// The Schur polynomial s_λ(y_1..y_n): the generating sum over column-strict
/// fillings with entries at most n. Zero when n < number of rows.
pub fn schur(lambda: &Partition, nvars: usize) -> SymPoly {
    assert!(nvars >= 1);
    let mut out = SymPoly::zero(nvars);
    let nrows = lambda.len();
    if nrows == 0 {
        return SymPoly::constant(nvars, Rat::one());
    }
    if nrows > nvars {
        return out;
    }
    // Fill row by row; within a row left to right. Entries must weakly
    // increase along the row and strictly exceed the entry above.
    let mut rows: Vec<Vec<u32>> = (1..=nrows)
        .map(|r| Vec::with_capacity(lambda.part(r) as usize))
        .collect();
    fn rec(
        lambda: &Partition,
        nvars: usize,
        rows: &mut Vec<Vec<u32>>,
        r: usize,
        c: usize,
        out: &mut SymPoly,
    ) {
        if r == rows.len() {
            let mut expo = vec![0u32; nvars];
            for row in rows.iter() {
                for &v in row {
                    expo[(v - 1) as usize] += 1;
                }
            }
            out.add_term(expo, Rat::one());
            return;
        }
        let (next_r, next_c) = if c + 1 < lambda.part(r + 1) as usize {
            (r, c + 1)
        } else {
            (r + 1, 0)
        };
        let lo = {
            let mut lo = 1;
            if c > 0 {
                lo = lo.max(rows[r][c - 1]);
            }
            if r > 0 && c < rows[r - 1].len() {
                lo = lo.max(rows[r - 1][c] + 1);
            }
            lo
        };
        for v in lo..=(nvars as u32) {
            rows[r].push(v);
            rec(lambda, nvars, rows, next_r, next_c, out);
            rows[r].pop();
        }
    }
    rec(lambda, nvars, &mut rows, 0, 0, &mut out);
    out
}

/// Number of column-strict fillings of λ using value i exactly content[i-1]
/// times (the Kostka number K_{λ,content}).
pub fn kostka(lambda: &Partition, content: &[u32]) -> u64 {
    if lambda.size() != content.iter().map(|&c| c as u64).sum::<u64>() {
        return 0;
    }
    if lambda.is_empty() {
        return 1;
    }
    let nrows = lambda.len();
    let mut rows: Vec<Vec<u32>> = (1..=nrows)
        .map(|r| Vec::with_capacity(lambda.part(r) as usize))
        .collect();
    let mut left = content.to_vec();
    fn rec(
        lambda: &Partition,
        rows: &mut Vec<Vec<u32>>,
        left: &mut Vec<u32>,
        r: usize,
        c: usize,
    ) -> u64 {
        if r == rows.len() {
            return 1;
        }
        let (next_r, next_c) = if c + 1 < lambda.part(r + 1) as usize {
            (r, c + 1)
        } else {
            (r + 1, 0)
        };
        let lo = {
            let mut lo = 1u32;
            if c > 0 {
                lo = lo.max(rows[r][c - 1]);
            }
            if r > 0 && c < rows[r - 1].len() {
                lo = lo.max(rows[r - 1][c] + 1);
            }
            lo
        };
        let mut acc = 0;
        for v in lo..=(left.len() as u32) {
            if left[(v - 1) as usize] == 0 {
                continue;
            }
            left[(v - 1) as usize] -= 1;
            rows[r].push(v);
            acc += rec(lambda, rows, left, next_r, next_c);
            rows[r].pop();
            left[(v - 1) as usize] += 1;
        }
        acc
    }
    rec(lambda, &mut rows, &mut left, 0, 0)
}

/// Coefficient of the monomial with exponent vector `content` in the
/// power-sum product p_μ: the number of ways to assign each part of μ to a
/// variable so that the totals per variable are `content`.
fn power_product_coeff(mu: &Partition, content: &[u32]) -> u64 {
    use std::collections::HashMap;
    fn rec(parts: &[u32], left: &mut Vec<u32>, memo: &mut HashMap<(usize, Vec<u32>), u64>) -> u64 {
        let Some((&p, rest)) = parts.split_first() else {
            return if left.iter().all(|&x| x == 0) { 1 } else { 0 };
        };
        let key = (parts.len(), left.clone());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut acc = 0;
        for i in 0..left.len() {
            if left[i] >= p {
                left[i] -= p;
                acc += rec(rest, left, memo);
                left[i] += p;
            }
        }
        memo.insert(key, acc);
        acc
    }
    let mut left = content.to_vec();
    rec(mu.parts(), &mut left, &mut HashMap::new())
}

/// Solves s_λ = Σ_{μ ⊢ |λ|} c_μ p_μ in n = |λ| variables, where the
/// power-sum products are linearly independent. Both sides are symmetric, so
/// the monomial basis is restricted to one representative per orbit (the
/// exponent vectors that are themselves partitions of |λ|); the system is
/// then square and solved by exact Gaussian elimination.
pub fn power_sum_expand(lambda: &Partition) -> BTreeMap<Partition, Rat> {
    let d = lambda.size() as u32;
    if d == 0 {
        let mut out = BTreeMap::new();
        out.insert(Partition::empty(), Rat::one());
        return out;
    }
    let n = d as usize;
    let mus = Partition::all_of_size(d);
    let ncols = mus.len();
    let pad = |p: &Partition| -> Vec<u32> {
        let mut e = p.parts().to_vec();
        e.resize(n, 0);
        e
    };
    // Rows: representative monomials y^ν for ν ⊢ d.
    let mut mat: Vec<Vec<Rat>> = Vec::with_capacity(ncols);
    for nu in &mus {
        let content = pad(nu);
        let mut row: Vec<Rat> = mus
            .iter()
            .map(|mu| rat_int(power_product_coeff(mu, &content) as i64))
            .collect();
        row.push(rat_int(kostka(lambda, &content) as i64));
        mat.push(row);
    }

    // Exact Gauss-Jordan.
    let mut pivot_row_of_col: Vec<usize> = Vec::with_capacity(ncols);
    let mut row = 0;
    for col in 0..ncols {
        let p = (row..ncols)
            .find(|&r| !mat[r][col].is_zero())
            .expect("power-sum products are linearly independent");
        mat.swap(row, p);
        let inv = Rat::one() / mat[row][col].clone();
        for x in mat[row][col..].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..ncols {
            if r != row && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for cidx in col..=ncols {
                    let delta = f.clone() * mat[row][cidx].clone();
                    mat[r][cidx] = mat[r][cidx].clone() - delta;
                }
            }
        }
        pivot_row_of_col.push(row);
        row += 1;
    }
    let mut out = BTreeMap::new();
    for (j, mu) in mus.into_iter().enumerate() {
        let c = mat[pivot_row_of_col[j]][ncols].clone();
        if !c.is_zero() {
            out.insert(mu, c);
        }
    }
    out
}

/// z_μ = Π k^{m_k} m_k!, the centralizer size of the cycle type μ.
pub fn z_mu(mu: &Partition) -> Rat {
    let mut mult: BTreeMap<u32, u64> = BTreeMap::new();
    for &p in mu.parts() {
        *mult.entry(p).or_insert(0) += 1;
    }
    let mut z = Rat::one();
    for (k, m) in mult {
        for _ in 0..m {
            z *= rat_int(k as i64);
        }
        for i in 1..=m {
            z *= rat_int(i as i64);
        }
    }
    z
}

/// Murnaghan-Nakayama evaluation of the symmetric-group character: removes
/// hooks of the largest part first. Independent route used as an oracle for
/// `power_sum_expand` (c_μ = character / z_μ).
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Rat {
    fn rec(lambda: &Partition, parts: &[u32]) -> Rat {
        match parts.split_first() {
            None => {
                if lambda.is_empty() {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            }
            Some((&k, rest)) => {
                let mut acc = Rat::zero();
                for r in ribbon_removals(lambda, k) {
                    let sign = if (r.rows_spanned - 1) % 2 == 0 { 1 } else { -1 };
                    acc += rat_int(sign) * rec(&r.remaining, rest);
                }
                acc
            }
        }
    }
    assert_eq!(lambda.size(), mu.size());
    rec(lambda, mu.parts())
}

/// An element of the polynomial side: a Laurent monomial in the charge
/// variable q times a polynomial in x_1, x_2, ... Exponent vectors are
/// trimmed of trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BosonPoly {
    terms: BTreeMap<(i64, Vec<u32>), Rat>,
}

impl BosonPoly {
    pub fn zero() -> Self {
        BosonPoly::default()
    }

    pub fn one() -> Self {
        let mut p = BosonPoly::zero();
        p.add_term(0, Vec::new(), Rat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, charge: i64, mut expo: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        while expo.last() == Some(&0) {
            expo.pop();
        }
        match self.terms.entry((charge, expo)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, Vec<u32>), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, charge: i64, expo: &[u32]) -> Rat {
        let mut e = expo.to_vec();
        while e.last() == Some(&0) {
            e.pop();
        }
        self.terms
            .get(&(charge, e))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &BosonPoly) -> BosonPoly {
        let mut out = self.clone();
        for ((h, e), c) in &other.terms {
            out.add_term(*h, e.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, s: &Rat) -> BosonPoly {
        let mut out = BosonPoly::zero();
        for ((h, e), c) in &self.terms {
            out.add_term(*h, e.clone(), c.clone() * s.clone());
        }
        out
    }

    /// Weighted degree Σ k·e_k of a monomial.
    fn weighted_degree(expo: &[u32]) -> u64 {
        expo.iter()
            .enumerate()
            .map(|(i, &e)| (i as u64 + 1) * e as u64)
            .sum()
    }

    /// Substitutes x_k = p_k/k over n variables, mapping into `SymPoly`.
    pub fn substitute_power_sums(&self, nvars: usize) -> SymPoly {
        let mut out = SymPoly::zero(nvars);
        for ((h, e), c) in &self.terms {
            assert_eq!(*h, 0, "substitution is defined on the charge-0 slice");
            let mut acc = SymPoly::constant(nvars, c.clone());
            for (i, &mult) in e.iter().enumerate() {
                let k = (i + 1) as u32;
                let pk = SymPoly::power_sum(nvars, k).scaled(&(Rat::one() / rat_int(k as i64)));
                for _ in 0..mult {
                    acc = acc.mul(&pk);
                }
            }
            out = out.add(&acc);
        }
        out
    }
}

impl fmt::Display for BosonPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut items: Vec<(&(i64, Vec<u32>), &Rat)> = self.terms.iter().collect();
        // Reading order: charge, then weighted degree, then x1-heavy first.
        let padded = |e: &[u32]| {
            let mut v = e.to_vec();
            v.resize(16.max(e.len()), 0);
            v
        };
        items.sort_by(|((ha, ea), _), ((hb, eb), _)| {
            ha.cmp(hb)
                .then_with(|| BosonPoly::weighted_degree(ea).cmp(&BosonPoly::weighted_degree(eb)))
                .then_with(|| padded(eb).cmp(&padded(ea)))
        });
        for (i, ((h, e), c)) in items.into_iter().enumerate() {
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            match *h {
                0 => {}
                1 => factors.push("q".into()),
                k => factors.push(format!("q^{k}")),
            }
            for (idx, &pow) in e.iter().enumerate() {
                match pow {
                    0 => {}
                    1 => factors.push(format!("x{}", idx + 1)),
                    p => factors.push(format!("x{}^{}", idx + 1, p)),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BosonPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The character polynomial: χ_λ = Σ_μ c_μ Π_i (μ_i x_{μ_i}) where the c_μ
/// come from `power_sum_expand`. Homogeneous of weighted degree |λ|.
/// Results are cached; the table is shared across threads.
pub fn char_poly(lambda: &Partition) -> BosonPoly {
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<BTreeMap<Partition, BosonPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(lambda) {
        return hit.clone();
    }
    let mut out = BosonPoly::zero();
    for (mu, c) in power_sum_expand(lambda) {
        let mut coeff = c;
        let mut expo: Vec<u32> = Vec::new();
        for &part in mu.parts() {
            coeff *= rat_int(part as i64);
            if expo.len() < part as usize {
                expo.resize(part as usize, 0);
            }
            expo[part as usize - 1] += 1;
        }
        out.add_term(0, expo, coeff);
    }
    cache.lock().unwrap().insert(lambda.clone(), out.clone());
    out
}

/// The basis isomorphism: |λ;h> -> q^h χ_λ, extended linearly.
pub fn sigma(v: &FockVector<Rat>) -> BosonPoly {
    let mut out = BosonPoly::zero();
    for (cp, c) in v.iter() {
        let chi = char_poly(&cp.lambda);
        for ((h, e), a) in chi.iter() {
            debug_assert_eq!(*h, 0);
            out.add_term(cp.charge, e.clone(), a.clone() * c.clone());
        }
    }
    out
}

/// The polynomial-side action: ∂/∂x_k for k > 0, multiplication by -k·x_{-k}
/// for k < 0. The q grade is untouched.
pub fn weyl_on_b(k: i64, p: &BosonPoly) -> BosonPoly {
    assert!(k != 0);
    let mut out = BosonPoly::zero();
    if k > 0 {
        let idx = (k - 1) as usize;
        for ((h, e), c) in p.iter() {
            if idx < e.len() && e[idx] > 0 {
                let mut expo = e.clone();
                expo[idx] -= 1;
                out.add_term(*h, expo, c.clone() * rat_int(e[idx] as i64));
            }
        }
    } else {
        let idx = (-k - 1) as usize;
        for ((h, e), c) in p.iter() {
            let mut expo = e.clone();
            if expo.len() <= idx {
                expo.resize(idx + 1, 0);
            }
            expo[idx] += 1;
            out.add_term(*h, expo, c.clone() * rat_int(-k));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boson::alpha_apply;
    use crate::partition::ChargedPartition;
    use crate::scalar::frac;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn mono(nvars: usize, assignments: &[(usize, u32)]) -> Vec<u32> {
        let mut e = vec![0; nvars];
        for &(var, pow) in assignments {
            e[var - 1] = pow;
        }
        e
    }

    #[test]
    fn schur_single_box_and_row() {
        let s1 = schur(&p(&[1]), 2);
        assert_eq!(s1.terms.len(), 2);
        assert_eq!(s1.terms[&mono(2, &[(1, 1)])], Rat::one());
        assert_eq!(s1.terms[&mono(2, &[(2, 1)])], Rat::one());

        let s2 = schur(&p(&[2]), 2);
        assert_eq!(s2.terms.len(), 3);
        assert_eq!(s2.terms[&mono(2, &[(1, 2)])], Rat::one());
        assert_eq!(s2.terms[&mono(2, &[(1, 1), (2, 1)])], Rat::one());
        assert_eq!(s2.terms[&mono(2, &[(2, 2)])], Rat::one());
    }

    #[test]
    fn schur_vanishes_when_too_few_variables() {
        assert!(schur(&p(&[1, 1, 1]), 2).is_zero());
        assert!(!schur(&p(&[1, 1, 1]), 3).is_zero());
    }

    #[test]
    fn reference_filling_is_column_strict() {
        let lam = p(&[4, 2, 2, 1]);
        let rows = vec![vec![1, 1, 3, 3], vec![3, 3], vec![4, 5], vec![5]];
        assert!(is_column_strict(&lam, &rows));
        // Breaking a column makes it fail.
        let bad = vec![vec![1, 1, 3, 3], vec![1, 3], vec![4, 5], vec![5]];
        assert!(!is_column_strict(&lam, &bad));
        // Breaking a row makes it fail.
        let bad2 = vec![vec![1, 3, 1, 3], vec![3, 3], vec![4, 5], vec![5]];
        assert!(!is_column_strict(&lam, &bad2));
    }

    #[test]
    fn schur_is_symmetric_and_stable() {
        for lam in [p(&[2, 1]), p(&[3, 1, 1]), p(&[2, 2])] {
            let s3 = schur(&lam, 3);
            assert_eq!(s3.permuted(&[1, 2, 0]), s3);
            assert_eq!(s3.permuted(&[1, 0, 2]), s3);
            let s4 = schur(&lam, 4);
            assert_eq!(s4.restrict_last_to_zero(), s3);
        }
    }

    #[test]
    fn power_sum_expansions_of_degree_two() {
        let row = power_sum_expand(&p(&[2]));
        assert_eq!(row[&p(&[2])], frac(1, 2));
        assert_eq!(row[&p(&[1, 1])], frac(1, 2));
        let col = power_sum_expand(&p(&[1, 1]));
        assert_eq!(col[&p(&[2])], frac(-1, 2));
        assert_eq!(col[&p(&[1, 1])], frac(1, 2));
        let triv = power_sum_expand(&p(&[1]));
        assert_eq!(triv[&p(&[1])], Rat::one());
        assert_eq!(triv.len(), 1);
    }

    #[test]
    fn expansion_agrees_with_murnaghan_nakayama() {
        for lam in Partition::all_up_to(6) {
            let solved = power_sum_expand(&lam);
            for mu in Partition::all_of_size(lam.size() as u32) {
                let expect = mn_character(&lam, &mu) / z_mu(&mu);
                assert_eq!(
                    solved.get(&mu).cloned().unwrap_or_else(Rat::zero),
                    expect,
                    "λ={lam} μ={mu}"
                );
            }
        }
    }

    #[test]
    fn character_polynomials_of_degree_two() {
        let chi2 = char_poly(&p(&[2]));
        assert_eq!(chi2.coeff(0, &[2]), frac(1, 2));
        assert_eq!(chi2.coeff(0, &[0, 1]), Rat::one());
        assert_eq!(chi2.to_string(), "1/2*x1^2 + x2");

        let chi11 = char_poly(&p(&[1, 1]));
        assert_eq!(chi11.coeff(0, &[2]), frac(1, 2));
        assert_eq!(chi11.coeff(0, &[0, 1]), rat_int(-1));

        assert_eq!(char_poly(&p(&[])), BosonPoly::one());
    }

    #[test]
    fn substitution_recovers_schur() {
        for lam in Partition::all_up_to(5) {
            if lam.is_empty() {
                continue;
            }
            let n = lam.size() as usize;
            let back = char_poly(&lam).substitute_power_sums(n);
            assert_eq!(back, schur(&lam, n), "λ={lam}");
        }
    }

    #[test]
    fn sigma_on_basis_kets() {
        let v = FockVector::basis(ChargedPartition::from_parts(&[], 3).unwrap());
        let img = sigma(&v);
        assert_eq!(img.coeff(3, &[]), Rat::one());
        assert_eq!(img.iter().count(), 1);

        let w = FockVector::basis(ChargedPartition::from_parts(&[1], -1).unwrap());
        let img = sigma(&w);
        assert_eq!(img.coeff(-1, &[1]), Rat::one());
        assert_eq!(img.iter().count(), 1);

        let two = sigma(&FockVector::basis(
            ChargedPartition::from_parts(&[2], 0).unwrap(),
        ));
        assert_eq!(two.coeff(0, &[2]), frac(1, 2));
        assert_eq!(two.coeff(0, &[0, 1]), Rat::one());
    }

    #[test]
    fn polynomial_side_action() {
        // d/dx1 on x1^2.
        let mut x1sq = BosonPoly::zero();
        x1sq.add_term(0, vec![2], Rat::one());
        let d = weyl_on_b(1, &x1sq);
        assert_eq!(d.coeff(0, &[1]), rat_int(2));

        // Multiplication route: alpha(-2) on 1 gives 2 x2.
        let m = weyl_on_b(-2, &BosonPoly::one());
        assert_eq!(m.coeff(0, &[0, 1]), rat_int(2));

        // [alpha(2), alpha(-2)] = 2 on a sample polynomial.
        let mut sample = BosonPoly::zero();
        sample.add_term(0, vec![1, 2], frac(3, 5));
        sample.add_term(2, vec![0, 0, 1], rat_int(-2));
        let lhs = weyl_on_b(2, &weyl_on_b(-2, &sample))
            .add(&weyl_on_b(-2, &weyl_on_b(2, &sample)).scaled(&rat_int(-1)));
        assert_eq!(lhs, sample.scaled(&rat_int(2)));
    }

    #[test]
    fn sigma_sends_the_shift_to_multiplication_by_q() {
        use crate::boson::shift;
        for lam in Partition::all_up_to(4) {
            for h in -2..=2 {
                let v = FockVector::basis(ChargedPartition::new(lam.clone(), h));
                let shifted = sigma(&shift::<Rat>(1).apply(&v));
                let mut expected = BosonPoly::zero();
                for ((grade, e), c) in sigma(&v).iter() {
                    expected.add_term(grade + 1, e.clone(), c.clone());
                }
                assert_eq!(shifted, expected);
            }
        }
    }

    #[test]
    fn sigma_intertwines_the_two_actions() {
        for lam in Partition::all_up_to(5) {
            for h in -2..=2 {
                let state = ChargedPartition::new(lam.clone(), h);
                let v = FockVector::basis(state.clone());
                for k in (-4..=4i64).filter(|&k| k != 0) {
                    let lhs = sigma(&alpha_apply::<Rat>(k, &state));
                    let rhs = weyl_on_b(k, &sigma(&v));
                    assert_eq!(lhs, rhs, "k={k} state={state}");
                }
            }
        }
    }

    #[test]
    fn sigma_images_are_linearly_independent() {
        // Homogeneous by degree, so check full rank degree by degree.
        for d in 0..=6u32 {
            let lams = Partition::all_of_size(d);
            let images: Vec<BosonPoly> = lams.iter().map(char_poly).collect();
            let mut monos: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
            for img in &images {
                for ((_, e), _) in img.iter() {
                    let next = monos.len();
                    monos.entry(e.clone()).or_insert(next);
                }
            }
            let mut mat: Vec<Vec<Rat>> = images
                .iter()
                .map(|img| {
                    let mut row = vec![Rat::zero(); monos.len()];
                    for ((_, e), c) in img.iter() {
                        row[monos[e]] = c.clone();
                    }
                    row
                })
                .collect();
            // Row-reduce and count pivots.
            let mut rank = 0;
            for col in 0..monos.len() {
                if let Some(r) = (rank..mat.len()).find(|&r| !mat[r][col].is_zero()) {
                    mat.swap(rank, r);
                    let inv = Rat::one() / mat[rank][col].clone();
                    for x in mat[rank].iter_mut() {
                        *x = x.clone() * inv.clone();
                    }
                    for r2 in 0..mat.len() {
                        if r2 != rank && !mat[r2][col].is_zero() {
                            let f = mat[r2][col].clone();
                            for cidx in 0..monos.len() {
                                let delta = f.clone() * mat[rank][cidx].clone();
                                mat[r2][cidx] = mat[r2][cidx].clone() - delta;
                            }
                        }
                    }
                    rank += 1;
                }
            }
            assert_eq!(rank, lams.len(), "degree {d}");
        }
    }
}
