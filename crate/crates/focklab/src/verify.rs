//! Identity sweeps packaged as named suites with machine-readable reports.
//!
//! Each suite runs a family of exact checks over a bounded panel of kets and
//! reports every failing case. Suites may fan out across worker threads
//! (`FOCKLAB_THREADS`, default: available cores); reports are merged in case
//! order so output is deterministic.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::boson::{alpha, alpha0, alpha_apply, alpha_via_clifford};
use crate::clifford::{anticommutator_check, psi_apply, psi_star_apply};
use crate::error::Error;
use crate::fock::{operators_equal_on, FockVector, LinOp};
use crate::halfint::HalfInt;
use crate::matalg::{
    act_d, c_element_for_mode, chevalley_e, chevalley_f, chevalley_gen_e, chevalley_gen_f,
    embed_affine, AffElt, FinMat, PeriodicBanded,
};
use crate::maya::{black_positions, is_black, maya_of, maya_to_partition, MayaSpec};
use crate::partition::{ribbon_removals, ChargedPartition, Partition};
use crate::qfock::{e_q, f_q, k_q, k_q_inv, specialize_q1};
use crate::scalar::{rat_int, LaurentQ, Rat};
use crate::vertex::{
    fermion_from_bosons, fermion_star_from_bosons, gamma_commutation_check, GammaRelation,
};

/// One failing case.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub case: String,
    pub expected: String,
    pub actual: String,
}

/// The outcome of one suite.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: u64,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "suite {}: {} cases, {} failures\n",
            self.suite,
            self.cases,
            self.failures.len()
        );
        for f in &self.failures {
            out.push_str(&format!(
                "  FAIL {}\n    expected: {}\n    actual:   {}\n",
                f.case, f.expected, f.actual
            ));
        }
        out
    }
}

/// Knobs for a suite run; unset fields fall back to the suite's defaults.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_size: Option<u32>,
    pub random_cases: Option<u64>,
    pub degree: Option<i64>,
    pub seed: u64,
    pub threads: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_size: None,
            random_cases: None,
            degree: None,
            seed: 0xF0C1AB,
            threads: None,
        }
    }
}

pub const SUITES: [&str; 12] = [
    "bijection",
    "clifford",
    "heisenberg",
    "bf-bosons",
    "bf-fermions",
    "gamma",
    "ainfty",
    "affine",
    "gl-alpha",
    "d-relations",
    "mm",
    "mm-q1",
];

/// Runs one suite by name.
pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<SuiteReport, Error> {
    match name {
        "bijection" => Ok(suite_bijection(opts)),
        "clifford" => Ok(suite_clifford(opts)),
        "heisenberg" => Ok(suite_heisenberg(opts)),
        "bf-bosons" => Ok(suite_bf_bosons(opts)),
        "bf-fermions" => Ok(suite_bf_fermions(opts)),
        "gamma" => Ok(suite_gamma(opts)),
        "ainfty" => Ok(suite_ainfty(opts)),
        "affine" => Ok(suite_affine(opts)),
        "gl-alpha" => Ok(suite_gl_alpha(opts)),
        "d-relations" => Ok(suite_d_relations(opts)),
        "mm" => Ok(suite_mm(opts)),
        "mm-q1" => Ok(suite_mm_q1(opts)),
        other => Err(Error::Invalid(format!(
            "unknown suite {other:?}; available: {}",
            SUITES.join(", ")
        ))),
    }
}

fn thread_count(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| {
            std::env::var("FOCKLAB_THREADS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .max(1)
}

/// Maps the check across workers, merging failures in case order.
fn run_cases<T: Sync>(
    items: &[T],
    threads: usize,
    f: impl Fn(&T) -> Option<Failure> + Sync,
) -> (u64, Vec<Failure>) {
    if threads <= 1 || items.len() < 2 {
        return (items.len() as u64, items.iter().filter_map(&f).collect());
    }
    let chunk = items.len().div_ceil(threads);
    let mut indexed: Vec<(usize, Failure)> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for (ci, ch) in items.chunks(chunk).enumerate() {
            let f = &f;
            handles.push(scope.spawn(move || {
                ch.iter()
                    .enumerate()
                    .filter_map(|(i, t)| f(t).map(|fail| (ci * chunk + i, fail)))
                    .collect::<Vec<_>>()
            }));
        }
        for h in handles {
            indexed.extend(h.join().expect("worker panicked"));
        }
    });
    indexed.sort_by_key(|(i, _)| *i);
    (
        items.len() as u64,
        indexed.into_iter().map(|(_, f)| f).collect(),
    )
}

/// A deterministic random partition of size at most max_size.
pub fn random_partition(rng: &mut StdRng, max_size: u32) -> Partition {
    let n = rng.gen_range(0..=max_size);
    let mut parts = Vec::new();
    let mut remaining = n;
    let mut cap = n;
    while remaining > 0 {
        let p = rng.gen_range(1..=cap.min(remaining));
        parts.push(p);
        cap = p;
        remaining -= p;
    }
    Partition::new(parts).expect("generated weakly decreasing")
}

fn panel(max_size: u32, charges: &[i64]) -> Vec<ChargedPartition> {
    Partition::all_up_to(max_size)
        .into_iter()
        .flat_map(|lam| {
            charges
                .iter()
                .map(move |&h| ChargedPartition::new(lam.clone(), h))
        })
        .collect()
}

fn mismatch<L: std::fmt::Display, R: std::fmt::Display>(
    case: String,
    expected: L,
    actual: R,
) -> Option<Failure> {
    Some(Failure {
        case,
        expected: expected.to_string(),
        actual: actual.to_string(),
    })
}

/// Window/ket roundtrip on random charged partitions plus the reference
/// diagram, the charge count, and tail regularity.
pub fn suite_bijection(opts: &VerifyOptions) -> SuiteReport {
    let cases = opts.random_cases.unwrap_or(10_000);
    let max_size = opts.max_size.unwrap_or(30);
    let mut rng = StdRng::seed_from_u64(opts.seed);
    let mut states: Vec<ChargedPartition> = Vec::with_capacity(cases as usize + 1);
    // The reference diagram first.
    states.push(ChargedPartition::from_parts(&[4, 3, 3, 1, 1], -1).unwrap());
    for _ in 0..cases {
        let lam = random_partition(&mut rng, max_size);
        let h = rng.gen_range(-10..=10);
        states.push(ChargedPartition::new(lam, h));
    }
    let threads = thread_count(opts.threads);
    let (n, mut failures) = run_cases(&states, threads, |state| {
        // Roundtrip through the window view.
        let m = maya_of(state);
        match maya_to_partition(&m) {
            Ok(back) if &back == state => {}
            Ok(back) => return mismatch(format!("roundtrip {state}"), state, back),
            Err(e) => return mismatch(format!("roundtrip {state}"), state, e),
        }
        // Charge = #beads above 0 - #gaps below 0.
        let depth = state.lambda.len() + 12;
        let beads = black_positions(state, depth);
        let pos = beads.iter().filter(|b| b.is_positive()).count() as i64;
        let mut neg_white = 0;
        let mut t = HalfInt::from_twice(-1);
        while t > *beads.last().unwrap() {
            if !is_black(state, t) {
                neg_white += 1;
            }
            t = t - 1;
        }
        if pos - neg_white != state.charge {
            return mismatch(
                format!("charge count {state}"),
                state.charge,
                pos - neg_white,
            );
        }
        // Strictly decreasing, eventually consecutive.
        for w in beads.windows(2) {
            if w[1] >= w[0] {
                return mismatch(
                    format!("ordering {state}"),
                    "strictly decreasing",
                    format!("{:?}", beads),
                );
            }
        }
        for i in state.lambda.len()..depth - 1 {
            if beads[i + 1] != beads[i] - 1 {
                return mismatch(
                    format!("regular tail {state}"),
                    "consecutive",
                    format!("{:?}", beads),
                );
            }
        }
        None
    });
    // The twelve-box reference window, spelled out explicitly.
    let fig = MayaSpec::new(
        HalfInt::from_twice(-11),
        [5, 1, -1, -7, -9].map(HalfInt::from_twice).into(),
    )
    .unwrap();
    let want = ChargedPartition::from_parts(&[4, 3, 3, 1, 1], -1).unwrap();
    let total = match maya_to_partition(&fig) {
        Ok(got) if got == want => n + 1,
        Ok(got) => {
            failures.push(Failure {
                case: "reference window".into(),
                expected: want.to_string(),
                actual: got.to_string(),
            });
            n + 1
        }
        Err(e) => {
            failures.push(Failure {
                case: "reference window".into(),
                expected: want.to_string(),
                actual: e.to_string(),
            });
            n + 1
        }
    };
    SuiteReport {
        suite: "bijection".into(),
        cases: total,
        failures,
    }
}

/// The anticommutation relations as operators, plus adjointness of the
/// creation/annihilation pair under the orthonormal pairing.
pub fn suite_clifford(opts: &VerifyOptions) -> SuiteReport {
    let max_size = opts.max_size.unwrap_or(8);
    let states = panel(max_size, &[-2, -1, 0, 1, 2]);
    let positions: Vec<HalfInt> = (-13..=13)
        .filter(|t| t % 2 != 0)
        .map(HalfInt::from_twice)
        .collect();
    let mut cases: Vec<(HalfInt, HalfInt)> = Vec::new();
    for &m in &positions {
        for &n in &positions {
            cases.push((m, n));
        }
    }
    let threads = thread_count(opts.threads);
    let (n1, mut failures) = run_cases(&cases, threads, |&(m, n)| {
        match anticommutator_check(m, n, &states) {
            Ok(()) => None,
            Err(state) => mismatch(
                format!("anticommutators m={m} n={n}"),
                "relations hold",
                format!("violated on |{state}>"),
            ),
        }
    });
    // Adjointness on random ket pairs.
    let mut rng = StdRng::seed_from_u64(opts.seed ^ 0xAD01);
    let mut adj_cases: Vec<(HalfInt, ChargedPartition, ChargedPartition)> = Vec::new();
    for &m in &positions {
        for _ in 0..24 {
            let v =
                ChargedPartition::new(random_partition(&mut rng, max_size), rng.gen_range(-2..=2));
            let w =
                ChargedPartition::new(random_partition(&mut rng, max_size), rng.gen_range(-2..=2));
            adj_cases.push((m, v, w));
        }
    }
    let (n2, fails2) = run_cases(&adj_cases, threads, |(m, v, w)| {
        let lhs = psi_apply::<Rat>(*m, v).inner(&FockVector::basis(w.clone()));
        let rhs = FockVector::basis(v.clone()).inner(&psi_star_apply::<Rat>(*m, w));
        if lhs != rhs {
            mismatch(format!("adjointness m={m} v={v} w={w}"), lhs, rhs)
        } else {
            None
        }
    });
    failures.extend(fails2);
    SuiteReport {
        suite: "clifford".into(),
        cases: n1 + n2,
        failures,
    }
}

/// [α_j, α_k] = j δ_{j,-k} as operators.
pub fn suite_heisenberg(opts: &VerifyOptions) -> SuiteReport {
    let max_size = opts.max_size.unwrap_or(8);
    let states = panel(max_size, &[-1, 0, 2]);
    let mut cases = Vec::new();
    for j in (-5..=5i64).filter(|&j| j != 0) {
        for k in (-5..=5i64).filter(|&k| k != 0) {
            cases.push((j, k));
        }
    }
    let threads = thread_count(opts.threads);
    let (n, failures) = run_cases(&cases, threads, |&(j, k)| {
        let br = LinOp::commutator(&alpha::<Rat>(j), &alpha::<Rat>(k));
        let want = if j == -k {
            LinOp::scalar(rat_int(j))
        } else {
            LinOp::zero()
        };
        match operators_equal_on(&br, &want, &states) {
            Ok(()) => None,
            Err(w) => mismatch(format!("[alpha({j}), alpha({k})]"), w.right, w.left),
        }
    });
    SuiteReport {
        suite: "heisenberg".into(),
        cases: n,
        failures,
    }
}

/// Bead moves against the bilinear route, and the rim-hook support law with
/// its height signs.
pub fn suite_bf_bosons(opts: &VerifyOptions) -> SuiteReport {
    let max_size = opts.max_size.unwrap_or(10);
    let states = panel(max_size, &[0, -1]);
    let mut cases = Vec::new();
    for state in &states {
        for k in (-6..=6i64).filter(|&k| k != 0) {
            cases.push((state.clone(), k));
        }
    }
    let threads = thread_count(opts.threads);
    let (n, failures) = run_cases(&cases, threads, |(state, k)| {
        let direct = alpha_apply::<Rat>(*k, state);
        let routed = alpha_via_clifford::<Rat>(*k, state);
        if direct != routed {
            return mismatch(format!("alpha({k}) on |{state}>"), direct, routed);
        }
        if *k > 0 {
            let mut want: FockVector<Rat> = FockVector::zero();
            for r in ribbon_removals(&state.lambda, *k as u32) {
                let sign = if (r.rows_spanned - 1) % 2 == 0 { 1 } else { -1 };
                want.add_term(
                    ChargedPartition::new(r.remaining, state.charge),
                    rat_int(sign),
                );
            }
            if direct != want {
                return mismatch(
                    format!("ribbon support alpha({k}) on |{state}>"),
                    want,
                    direct,
                );
            }
        }
        None
    });
    SuiteReport {
        suite: "bf-bosons".into(),
        cases: n,
        failures,
    }
}

/// Reconstruction of the creation/annihilation operators from the
/// exponential series.
pub fn suite_bf_fermions(opts: &VerifyOptions) -> SuiteReport {
    let max_size = opts.max_size.unwrap_or(6);
    let states = panel(max_size, &[-2, -1, 0, 1, 2]);
    let mut cases = Vec::new();
    for state in &states {
        for t in (-9..=9i64).filter(|t| t % 2 != 0) {
            cases.push((state.clone(), HalfInt::from_twice(t)));
        }
    }
    let threads = thread_count(opts.threads);
    let (n, failures) = run_cases(&cases, threads, |(state, m)| {
        let want = psi_apply::<Rat>(*m, state);
        let got = fermion_from_bosons(*m, state);
        if want != got {
            return mismatch(format!("psi({m}) via series on |{state}>"), want, got);
        }
        let want = psi_star_apply::<Rat>(*m, state);
        let got = fermion_star_from_bosons(*m, state);
        if want != got {
            return mismatch(format!("psis({m}) via series on |{state}>"), want, got);
        }
        None
    });
    SuiteReport {
        suite: "bf-fermions".into(),
        cases: n,
        failures,
    }
}

/// The five series commutation relations, coefficientwise to total degree D
/// on a fixed panel of ten kets.
pub fn suite_gamma(opts: &VerifyOptions) -> SuiteReport {
    let deg = opts.degree.unwrap_or(6);
    let states: Vec<ChargedPartition> = [
        (vec![], 0i64),
        (vec![1], 0),
        (vec![2], 1),
        (vec![1, 1], -1),
        (vec![2, 1], 0),
        (vec![3], -2),
        (vec![2, 2], 2),
        (vec![3, 1], 1),
        (vec![1, 1, 1], 0),
        (vec![4, 2], -1),
    ]
    .into_iter()
    .map(|(p, h)| ChargedPartition::new(Partition::new(p).unwrap(), h))
    .collect();
    let mut cases = Vec::new();
    for rel in GammaRelation::ALL {
        for s in &states {
            cases.push((rel, s.clone()));
        }
    }
    let threads = thread_count(opts.threads);
    let (n, failures) = run_cases(
        &cases,
        threads,
        |(rel, state)| match gamma_commutation_check(*rel, state, deg) {
            Ok(()) => None,
            Err(m) => mismatch(
                format!("{} on |{state}> to degree {deg}", rel.name()),
                m.left,
                m.right,
            ),
        },
    );
    SuiteReport {
        suite: "gamma".into(),
        cases: n,
        failures,
    }
}

/// Acting by a bracket equals the commutator of the actions, on a fixed
/// sample of banded elements including the centrally corrected case.
pub fn suite_ainfty(opts: &VerifyOptions) -> SuiteReport {
    let max_size = opts.max_size.unwrap_or(6);
    let states = panel(max_size, &[-1, 0, 1]);
    let hi = HalfInt::from_twice;
    let mut sample: Vec<PeriodicBanded> = Vec::new();
    // Central case: transposed unit pair with row < 0 < column.
    sample.push(FinMat::unit(hi(-1), hi(3)).to_banded(1));
    sample.push(FinMat::unit(hi(3), hi(-1)).to_banded(1));
    sample.push(FinMat::unit(hi(1), hi(1)).to_banded(1));
    sample.push(FinMat::unit(hi(-3), hi(-3)).to_banded(1));
    sample.push(PeriodicBanded::alpha_pattern(1));
    sample.push(PeriodicBanded::alpha_pattern(-2));
    sample.push(PeriodicBanded::alpha_pattern(0));
    {
        let mut x = PeriodicBanded::zero(2);
        x.add_pattern(1, 2, 0, rat_int(1));
        x.add_correction(hi(-1), hi(5), rat_int(3));
        sample.push(x);
    }
    {
        let mut x = PeriodicBanded::zero(2);
        x.add_pattern(2, 1, -1, rat_int(2));
        x.add_pattern(1, 1, 0, rat_int(-1));
        sample.push(x);
    }
    {
        let mut x = PeriodicBanded::zero(3);
        x.add_pattern(3, 1, 1, rat_int(1));
        x.add_pattern(1, 3, -1, rat_int(1));
        x.add_correction(hi(1), hi(-3), rat_int(-2));
        sample.push(x);
    }
    let mut cases = Vec::new();
    for a in &sample {
        for b in &sample {
            cases.push((a.clone(), b.clone()));
        }
    }
    let threads = thread_count(opts.threads);
    let (n, failures) = run_cases(&cases, threads, |(a, b)| {
        let lhs = PeriodicBanded::bracket(a, b).as_op();
        let rhs = LinOp::commutator(&a.as_op(), &b.as_op());
        match operators_equal_on(&lhs, &rhs, &states) {
            Ok(()) => None,
            Err(w) => mismatch(format!("bracket action on |{}>", w.state), w.left, w.right),
        }
    });
    SuiteReport {
        suite: "ainfty".into(),
        cases: n,
        failures,
    }
}

/// The box add/remove description of the Chevalley generators against their
/// embedded matrix action.
pub fn suite_affine(opts: &VerifyOptions) -> SuiteReport {
    let max_size = opts.max_size.unwrap_or(8);
    let states = panel(max_size, &[-2, -1, 0, 1, 2]);
    let mut cases: Vec<(u32, u32, bool)> = Vec::new();
    for ell in [2u32, 3, 4] {
        for i in 0..ell {
            cases.push((ell, i, true));
            cases.push((ell, i, false));
        }
    }
    let threads = thread_count(opts.threads);
    let (n, failures) = run_cases(&cases, threads, |&(ell, i, raising)| {
        let (comb, gen, tag) = if raising {
            (chevalley_e::<Rat>(i, ell), chevalley_gen_e(i, ell), "E")
        } else {
            (chevalley_f::<Rat>(i, ell), chevalley_gen_f(i, ell), "F")
        };
        let emb = embed_affine(&gen).expect("loop element").as_op();
        match operators_equal_on(&comb, &emb, &states) {
            Ok(()) => None,
            Err(w) => mismatch(
                format!("{tag}({i}) level {ell} on |{}>", w.state),
                w.left,
                w.right,
            ),
        }
    });
    SuiteReport {
        suite: "affine".into(),
        cases: n,
        failures,
    }
}

/// The cyclic loop elements against the Heisenberg modes, the scaled
/// Heisenberg inside the loop algebra, and the charge as the zeroth loop.
pub fn suite_gl_alpha(opts: &VerifyOptions) -> SuiteReport {
    let max_size = opts.max_size.unwrap_or(8);
    let states = panel(max_size, &[-1, 0, 1]);
    let threads = thread_count(opts.threads);

    #[derive(Clone)]
    enum Case {
        Mode(u32, i64),
        IdentityLoop(u32, i64),
        Charge(u32),
        ModeSevenPattern,
    }
    let mut cases = Vec::new();
    for ell in [2u32, 3] {
        for k in (-8..=8i64).filter(|&k| k != 0) {
            cases.push(Case::Mode(ell, k));
        }
        for k in 1..=4i64 {
            cases.push(Case::IdentityLoop(ell, k));
        }
        cases.push(Case::Charge(ell));
    }
    cases.push(Case::ModeSevenPattern);

    let (n, failures) = run_cases(&cases, threads, |case| match case {
        Case::Mode(ell, k) => {
            let emb = embed_affine(&c_element_for_mode(*k, *ell))
                .expect("loop element")
                .as_op();
            match operators_equal_on(&emb, &alpha::<Rat>(*k), &states) {
                Ok(()) => None,
                Err(w) => mismatch(
                    format!(
                        "cyclic element for mode {k} at level {ell} on |{}>",
                        w.state
                    ),
                    w.right,
                    w.left,
                ),
            }
        }
        Case::IdentityLoop(ell, k) => {
            let a = embed_affine(&AffElt::identity_loop(*ell, *k))
                .unwrap()
                .as_op();
            let b = embed_affine(&AffElt::identity_loop(*ell, -*k))
                .unwrap()
                .as_op();
            let lhs = LinOp::commutator(&a, &b);
            let rhs = LinOp::scalar(rat_int(k * *ell as i64));
            match operators_equal_on(&lhs, &rhs, &states) {
                Ok(()) => None,
                Err(w) => mismatch(
                    format!("[I⊗t^{k}, I⊗t^-{k}] at level {ell} on |{}>", w.state),
                    w.right,
                    w.left,
                ),
            }
        }
        Case::Charge(ell) => {
            let op = embed_affine(&AffElt::identity_loop(*ell, 0))
                .unwrap()
                .as_op();
            match operators_equal_on(&op, &alpha0::<Rat>(), &states) {
                Ok(()) => None,
                Err(w) => mismatch(
                    format!("I⊗t^0 at level {ell} on |{}>", w.state),
                    w.right,
                    w.left,
                ),
            }
        }
        Case::ModeSevenPattern => {
            let embedded = embed_affine(&c_element_for_mode(7, 3)).unwrap();
            let expected = PeriodicBanded::alpha_pattern(7).refined_to(3);
            if embedded == expected {
                None
            } else {
                mismatch(
                    "mode-7 diagonal at level 3".into(),
                    format!("{expected:?}"),
                    format!("{embedded:?}"),
                )
            }
        }
    });
    SuiteReport {
        suite: "gl-alpha".into(),
        cases: n,
        failures,
    }
}

/// The derivation against the Chevalley generators: raising/lowering a
/// 0-box shifts its eigenvalue by one, everything else commutes.
pub fn suite_d_relations(opts: &VerifyOptions) -> SuiteReport {
    let max_size = opts.max_size.unwrap_or(8);
    let states = panel(max_size, &[-2, -1, 0, 1, 2]);
    let mut cases = Vec::new();
    for ell in [2u32, 3, 4] {
        for i in 0..ell {
            cases.push((ell, i));
        }
    }
    let threads = thread_count(opts.threads);
    let (n, failures) = run_cases(&cases, threads, |&(ell, i)| {
        let d = act_d::<Rat>(ell);
        let one = LinOp::identity();
        let e = chevalley_e::<Rat>(i, ell);
        let f = chevalley_f::<Rat>(i, ell);
        let (rhs_e, rhs_f) = if i == 0 {
            (
                LinOp::compose(&LinOp::add(&d, &one), &e),
                LinOp::compose(&LinOp::sub(&d, &one), &f),
            )
        } else {
            (LinOp::compose(&d, &e), LinOp::compose(&d, &f))
        };
        if let Err(w) = operators_equal_on(&LinOp::compose(&e, &d), &rhs_e, &states) {
            return mismatch(
                format!("E({i})∘d at level {ell} on |{}>", w.state),
                w.right,
                w.left,
            );
        }
        if let Err(w) = operators_equal_on(&LinOp::compose(&f, &d), &rhs_f, &states) {
            return mismatch(
                format!("F({i})∘d at level {ell} on |{}>", w.state),
                w.right,
                w.left,
            );
        }
        None
    });
    SuiteReport {
        suite: "d-relations".into(),
        cases: n,
        failures,
    }
}

/// The q-deformed action: cross-residue commuting, the exact diagonal
/// identity, and single-box weight bookkeeping.
pub fn suite_mm(opts: &VerifyOptions) -> SuiteReport {
    let max_size = opts.max_size.unwrap_or(8);
    let states = panel(max_size, &[-1, 0, 1]);
    let denom = LaurentQ::q_pow(1) - LaurentQ::q_pow(-1);
    #[derive(Clone)]
    enum Case {
        OffDiagonal(u32, u32, u32),
        Diagonal(u32, u32),
        Weight(u32, u32),
    }
    let mut cases = Vec::new();
    for ell in [2u32, 3, 4] {
        for i in 0..ell {
            for j in 0..ell {
                if i != j {
                    cases.push(Case::OffDiagonal(ell, i, j));
                }
            }
            cases.push(Case::Diagonal(ell, i));
            cases.push(Case::Weight(ell, i));
        }
    }
    let threads = thread_count(opts.threads);
    let (n, failures) = run_cases(&cases, threads, |case| match case {
        Case::OffDiagonal(ell, i, j) => {
            let br = LinOp::commutator(&e_q(*i, *ell), &f_q(*j, *ell));
            match operators_equal_on(&br, &LinOp::zero(), &states) {
                Ok(()) => None,
                Err(w) => mismatch(
                    format!("[Eq({i}), Fq({j})] level {ell} on |{}>", w.state),
                    "0",
                    w.left,
                ),
            }
        }
        Case::Diagonal(ell, i) => {
            for state in &states {
                let lhs = LinOp::commutator(&e_q(*i, *ell), &f_q(*i, *ell)).apply_basis(state);
                let kdiff = k_q(*i, *ell).apply_basis(state) - k_q_inv(*i, *ell).apply_basis(state);
                let mut rhs = FockVector::zero();
                for (s, c) in kdiff.iter() {
                    match c.div_exact(&denom) {
                        Some(q) => rhs.add_term(s.clone(), q),
                        None => {
                            return mismatch(
                                format!("diagonal identity Eq/Fq({i}) level {ell} on |{state}>"),
                                "exact divisibility by q - q^-1",
                                c,
                            )
                        }
                    }
                }
                if lhs != rhs {
                    return mismatch(
                        format!("diagonal identity Eq/Fq({i}) level {ell} on |{state}>"),
                        rhs,
                        lhs,
                    );
                }
            }
            None
        }
        Case::Weight(ell, i) => {
            for state in &states {
                let img = f_q(*i, *ell).apply_basis(state);
                for (target, _) in img.iter() {
                    let ok = target.charge == state.charge
                        && target.size() == state.size() + 1
                        && colored_boxes(target, *ell, *i) == colored_boxes(state, *ell, *i) + 1;
                    if !ok {
                        return mismatch(
                            format!("weight bookkeeping Fq({i}) level {ell} on |{state}>"),
                            "adds exactly one box of the residue",
                            target,
                        );
                    }
                }
            }
            None
        }
    });
    SuiteReport {
        suite: "mm".into(),
        cases: n,
        failures,
    }
}

fn colored_boxes(cp: &ChargedPartition, level: u32, i: u32) -> u64 {
    use crate::partition::{box_color, BoxCoord, Color};
    let mut count = 0;
    for (r, &part) in cp.lambda.parts().iter().enumerate() {
        for c in 1..=part {
            if box_color(cp.charge, BoxCoord::new(r as u32 + 1, c), level) == Color(i) {
                count += 1;
            }
        }
    }
    count
}

/// Setting q = 1 recovers the plain box add/remove action.
pub fn suite_mm_q1(opts: &VerifyOptions) -> SuiteReport {
    let max_size = opts.max_size.unwrap_or(8);
    let states = panel(max_size, &[-2, -1, 0, 1, 2]);
    let mut cases = Vec::new();
    for ell in [2u32, 3, 4] {
        for i in 0..ell {
            cases.push((ell, i));
        }
    }
    let threads = thread_count(opts.threads);
    let (n, failures) = run_cases(&cases, threads, |&(ell, i)| {
        for state in &states {
            let f_spec = specialize_q1(&f_q(i, ell).apply_basis(state));
            let f_plain = chevalley_f::<Rat>(i, ell).apply_basis(state);
            if f_spec != f_plain {
                return mismatch(
                    format!("Fq({i})|q=1 level {ell} on |{state}>"),
                    f_plain,
                    f_spec,
                );
            }
            let e_spec = specialize_q1(&e_q(i, ell).apply_basis(state));
            let e_plain = chevalley_e::<Rat>(i, ell).apply_basis(state);
            if e_spec != e_plain {
                return mismatch(
                    format!("Eq({i})|q=1 level {ell} on |{state}>"),
                    e_plain,
                    e_spec,
                );
            }
        }
        None
    });
    SuiteReport {
        suite: "mm-q1".into(),
        cases: n,
        failures,
    }
}
