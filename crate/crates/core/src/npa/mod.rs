//! NPA moment-matrix relaxations of the quantum set for the tripartite
//! two-setting scenario, with the Hardy constraint block and the two robust
//! self-testing objectives.
//!
//! The moment matrix at level ℓ is indexed by all reduced words of total
//! length ≤ ℓ. Objective words whose length exceeds 2ℓ cannot appear as a
//! product u†v of two level-ℓ words, so the index is augmented with a *fixed*
//! set of split pieces of the objective words (per-party floor-half prefix
//! rule). The piece set does not depend on ℓ, which keeps the relaxations
//! nested across levels.

pub mod sdp;

use std::collections::HashMap;
use std::time::Instant;

use num_rational::Rational64;
use rayon::prelude::*;

use crate::error::CoreError;
use crate::matrix::CMatrix;
use crate::quantum::{correlator_basis, Realization};
use crate::scalar::Scalar;
use crate::swap::{merit_polynomial, reference_fidelity_terms};
use crate::word::{Letter, Word, PARTIES};
use sdp::{SdpOptions, SdpProblem, SdpSolution, SdpStatus};

pub const LEVEL_MIN: usize = 1;
pub const LEVEL_MAX: usize = 4;
/// Hardy probability rows contain three-letter words, which first factor as
/// u†v at level 2.
pub const ROBUST_LEVEL_MIN: usize = 2;

/// All reduced per-party words of length ≤ n (identity first, then by length
/// and starting letter).
fn party_words_upto(n: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for len in 1..=n {
        for start in [Letter::Z, Letter::X] {
            let mut w = Vec::with_capacity(len);
            let mut cur = start;
            for _ in 0..len {
                w.push(cur);
                cur = cur.other();
            }
            out.push(w);
        }
    }
    out
}

/// Canonical reduced word list of an NPA level.
#[derive(Clone, Debug)]
pub struct WordIndex {
    pub level: usize,
    /// Level words followed by any objective-piece extras.
    pub words: Vec<Word>,
    pub num_level_words: usize,
    pub num_extra_words: usize,
}

/// Enumerates all reduced words of total length ≤ ℓ in canonical order.
pub fn build_words(level: usize) -> Result<WordIndex, CoreError> {
    if !(LEVEL_MIN..=LEVEL_MAX).contains(&level) {
        return Err(CoreError::LevelRange { level, min: LEVEL_MIN, max: LEVEL_MAX });
    }
    let per = party_words_upto(level);
    let mut words = Vec::new();
    for w1 in &per {
        for w2 in &per {
            for w3 in &per {
                if w1.len() + w2.len() + w3.len() <= level {
                    words.push(Word([w1.clone(), w2.clone(), w3.clone()]));
                }
            }
        }
    }
    words.sort_by_key(|w| w.order_key());
    let n = words.len();
    Ok(WordIndex { level, words, num_level_words: n, num_extra_words: 0 })
}

/// The fixed split pieces of a word: adjoint of the per-party floor-half
/// prefix, and the per-party suffix. Γ[u, v] then carries the word's moment.
pub fn split_pieces(word: &Word) -> (Word, Word) {
    let mut u = Word::identity();
    let mut v = Word::identity();
    for p in 0..PARTIES {
        let w = &word.0[p];
        let cut = w.len() / 2;
        u.0[p] = w[..cut].iter().rev().copied().collect();
        v.0[p] = w[cut..].to_vec();
    }
    (u, v)
}

/// Smallest plain NPA level at which every objective word factors as u†v
/// without index augmentation.
pub fn minimal_native_level(objective: &[(f64, Word)]) -> usize {
    objective.iter().map(|(_, w)| w.len().div_ceil(2)).max().unwrap_or(1)
}

fn augment_with_pieces(mut index: WordIndex, objective_words: &[Word]) -> WordIndex {
    let mut have: std::collections::BTreeSet<Word> = index.words.iter().cloned().collect();
    let mut extras = Vec::new();
    for w in objective_words {
        for piece in [split_pieces(w).0, split_pieces(w).1] {
            if !have.contains(&piece) {
                have.insert(piece.clone());
                extras.push(piece);
            }
        }
    }
    extras.sort_by_key(|w| w.order_key());
    index.num_extra_words = extras.len();
    index.words.extend(extras);
    index
}

/// Interned moment variables and the PSD entry patterns of Γ over them.
#[derive(Clone, Debug)]
pub struct MomentStructure<T> {
    pub index: WordIndex,
    /// Canonical moment words; `vars[0]` is the identity.
    pub vars: Vec<Word>,
    pub lookup: HashMap<Word, usize>,
    pub psd_entries: Vec<Vec<(usize, usize, T)>>,
}

impl<T: Scalar> MomentStructure<T> {
    pub fn new(index: WordIndex) -> Self {
        let n = index.words.len();
        let mut vars: Vec<Word> = Vec::new();
        let mut lookup: HashMap<Word, usize> = HashMap::new();
        // identity must be variable 0 (u†u reduces to it on the diagonal)
        let id = Word::identity();
        lookup.insert(id.clone(), 0);
        vars.push(id);
        let mut psd_entries: Vec<Vec<(usize, usize, T)>> = vec![Vec::new()];
        for i in 0..n {
            for j in 0..n {
                let w = index.words[i].adjoint().mul(&index.words[j]).canon();
                let vid = *lookup.entry(w.clone()).or_insert_with(|| {
                    vars.push(w.clone());
                    psd_entries.push(Vec::new());
                    vars.len() - 1
                });
                psd_entries[vid].push((i, j, T::one()));
            }
        }
        MomentStructure { index, vars, lookup, psd_entries }
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_of(&self, w: &Word) -> Option<usize> {
        self.lookup.get(&w.canon()).copied()
    }

    /// Moment vector of a concrete realization: yᵢ = Re tr[ρ · wordᵢ].
    pub fn moment_vector(&self, r: &Realization<T>) -> Result<Vec<T>, CoreError> {
        let rho = r.state().density()?;
        let b = r.boxes();
        if b.len() != PARTIES {
            return Err(CoreError::BadParams { reason: "moment vector needs 3 parties".into() });
        }
        let boxes: [(CMatrix<T>, CMatrix<T>); PARTIES] = std::array::from_fn(|p| b[p].clone());
        Ok(self.vars.iter().map(|w| crate::word::moment(w, &boxes, &rho)).collect())
    }

    /// Assembles Γ(y) row-major.
    pub fn gamma(&self, y: &[T]) -> Vec<T> {
        let n = self.index.words.len();
        let mut g = vec![T::zero(); n * n];
        for (vid, entries) in self.psd_entries.iter().enumerate() {
            for &(r, c, co) in entries {
                g[r * n + c] = g[r * n + c] + co * y[vid];
            }
        }
        g
    }
}

/// A sparse linear functional of the moment vector.
pub type MomentRow<T> = Vec<(usize, T)>;

/// Expands P(a₁a₂a₃|x₁x₂x₃) = ∏ᵢ (1 + aᵢ·Oᵢ)/2 over moment variables.
/// `letters[p]` is party p's measured box letter, `signs[p]` = ±1 the outcome.
pub fn probability_row<T: Scalar>(
    st: &MomentStructure<T>,
    letters: [Letter; PARTIES],
    signs: [i8; PARTIES],
) -> Result<MomentRow<T>, CoreError> {
    let eighth = T::of(0.125);
    let mut row: HashMap<usize, T> = HashMap::new();
    for mask in 0..(1usize << PARTIES) {
        let mut coeff = eighth;
        let mut word = Word::identity();
        for p in 0..PARTIES {
            if (mask >> p) & 1 == 1 {
                coeff = coeff * T::of(signs[p] as f64);
                word.0[p] = vec![letters[p]];
            }
        }
        let vid = st.var_of(&word).ok_or(CoreError::LevelRange {
            level: st.index.level,
            min: ROBUST_LEVEL_MIN,
            max: LEVEL_MAX,
        })?;
        let e = row.entry(vid).or_insert_with(T::zero);
        *e = *e + coeff;
    }
    let mut out: MomentRow<T> = row.into_iter().collect();
    out.sort_by_key(|(v, _)| *v);
    Ok(out)
}

/// The Hardy constraint block: the success probability pinned to
/// 1/8 − ε₁ and the four zero-condition probabilities bounded by ε₂.
#[derive(Clone, Debug)]
pub struct HardyConstraints<T> {
    /// (row, rhs) equality.
    pub success: (MomentRow<T>, T),
    /// (row, rhs) inequalities, row·y ≤ rhs.
    pub zeros: Vec<(MomentRow<T>, T)>,
}

pub fn hardy_constraints<T: Scalar>(
    st: &MomentStructure<T>,
    eps1: T,
    eps2: T,
) -> Result<HardyConstraints<T>, CoreError> {
    if eps1 > T::of(0.125) || eps1 < T::zero() || eps2 < T::zero() {
        return Err(CoreError::BadParams {
            reason: "need 0 ≤ eps1 ≤ 1/8 and eps2 ≥ 0".into(),
        });
    }
    use Letter::{X, Z};
    let success = (
        probability_row(st, [Z, Z, Z], [1, 1, 1])?,
        T::of(0.125) - eps1,
    );
    let zeros = vec![
        (probability_row(st, [X, Z, Z], [1, 1, 1])?, eps2),
        (probability_row(st, [Z, X, Z], [1, 1, 1])?, eps2),
        (probability_row(st, [Z, Z, X], [1, 1, 1])?, eps2),
        (probability_row(st, [X, X, X], [-1, -1, -1])?, eps2),
    ];
    Ok(HardyConstraints { success, zeros })
}

/// Which robust figure of merit to optimize.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RobustKind {
    State,
    Measurement,
}

impl RobustKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RobustKind::State => "state",
            RobustKind::Measurement => "measurement",
        }
    }

    /// Objective word list with float coefficients.
    pub fn objective<T: Scalar>(self) -> Vec<(T, Word)> {
        let rat = |c: Rational64| T::of(*c.numer() as f64) / T::of(*c.denom() as f64);
        match self {
            RobustKind::State => reference_fidelity_terms()
                .into_iter()
                .map(|(c, w)| (rat(c), w))
                .collect(),
            RobustKind::Measurement => merit_polynomial()
                .into_iter()
                .map(|(c, w)| {
                    let mut word = Word::identity();
                    word.0[0] = w;
                    (rat(c), word)
                })
                .collect(),
        }
    }

    /// Smallest plain level at which the objective is expressible without
    /// index augmentation (5 for the state merit, 4 for the measurement one).
    pub fn native_min_level(self) -> usize {
        let obj: Vec<(f64, Word)> = self.objective();
        minimal_native_level(&obj)
    }
}

/// A fully assembled moment SDP plus the bookkeeping the reports need.
pub struct MomentProblem<T: Scalar> {
    pub structure: MomentStructure<T>,
    pub sdp: SdpProblem<T>,
    pub kind: Option<RobustKind>,
    pub eps1: T,
    pub eps2: T,
}

/// Builds the robust problem: minimize the objective over the level-ℓ
/// relaxation subject to the Hardy block.
pub fn robust_problem<T: Scalar>(
    kind: RobustKind,
    eps1: T,
    eps2: T,
    level: usize,
) -> Result<MomentProblem<T>, CoreError> {
    if !(ROBUST_LEVEL_MIN..=LEVEL_MAX).contains(&level) {
        return Err(CoreError::LevelRange { level, min: ROBUST_LEVEL_MIN, max: LEVEL_MAX });
    }
    let objective = kind.objective::<T>();
    let words: Vec<Word> = objective.iter().map(|(_, w)| w.clone()).collect();
    let index = augment_with_pieces(build_words(level)?, &words);
    let st = MomentStructure::<T>::new(index);

    let mut c = vec![T::zero(); st.num_vars()];
    for (coeff, w) in &objective {
        let vid = st.var_of(w).ok_or(CoreError::LevelRange {
            level,
            min: ROBUST_LEVEL_MIN,
            max: LEVEL_MAX,
        })?;
        c[vid] = c[vid] + *coeff;
    }
    let hc = hardy_constraints(&st, eps1, eps2)?;
    let mut eq = vec![(vec![(0usize, T::one())], T::one())];
    eq.push(hc.success.clone());
    let ineq = hc.zeros.clone();
    let sdp = SdpProblem {
        num_vars: st.num_vars(),
        objective: c,
        psd_dim: st.index.words.len(),
        psd_entries: st.psd_entries.clone(),
        ineq,
        eq,
    };
    Ok(MomentProblem { structure: st, sdp, kind: Some(kind), eps1, eps2 })
}

/// Robust solve result with the structural metadata reports want.
#[derive(Clone, Debug)]
pub struct RobustSolution<T> {
    pub kind: RobustKind,
    pub level: usize,
    pub eps1: T,
    pub eps2: T,
    pub value: T,
    pub status: SdpStatus,
    pub gap: T,
    pub iterations: usize,
    pub runtime_ms: u128,
    pub matrix_dim: usize,
    pub num_moment_vars: usize,
    pub num_extra_words: usize,
}

pub fn robust_solve<T: Scalar>(
    kind: RobustKind,
    eps1: T,
    eps2: T,
    level: usize,
    opts: &SdpOptions<T>,
) -> Result<RobustSolution<T>, CoreError> {
    let prob = robust_problem(kind, eps1, eps2, level)?;
    let start = Instant::now();
    let sol = sdp::solve(&prob.sdp, opts);
    Ok(RobustSolution {
        kind,
        level,
        eps1,
        eps2,
        value: sol.objective,
        status: sol.status,
        gap: sol.gap,
        iterations: sol.iterations,
        runtime_ms: start.elapsed().as_millis(),
        matrix_dim: prob.structure.index.words.len(),
        num_moment_vars: prob.structure.num_vars(),
        num_extra_words: prob.structure.index.num_extra_words,
    })
}

/// Worst-case fidelity lower bound under Hardy constraints.
pub fn robust_fidelity<T: Scalar>(
    eps1: T,
    eps2: T,
    level: usize,
    opts: &SdpOptions<T>,
) -> Result<RobustSolution<T>, CoreError> {
    robust_solve(RobustKind::State, eps1, eps2, level, opts)
}

/// Worst-case measurement merit τ for the first party.
pub fn robust_measurement<T: Scalar>(
    eps1: T,
    eps2: T,
    level: usize,
    opts: &SdpOptions<T>,
) -> Result<RobustSolution<T>, CoreError> {
    robust_solve(RobustKind::Measurement, eps1, eps2, level, opts)
}

/// Maximizes a Bell functional (G-coordinate order) over the plain level-ℓ
/// relaxation with no Hardy constraints.
pub fn maximize_functional<T: Scalar>(
    coefficients: &[T],
    level: usize,
    opts: &SdpOptions<T>,
) -> Result<SdpSolution<T>, CoreError> {
    if coefficients.len() != 26 {
        return Err(CoreError::DimensionMismatch { expected: 26, got: coefficients.len() });
    }
    if !(ROBUST_LEVEL_MIN..=LEVEL_MAX).contains(&level) {
        return Err(CoreError::LevelRange { level, min: ROBUST_LEVEL_MIN, max: LEVEL_MAX });
    }
    let st = MomentStructure::<T>::new(build_words(level)?);
    let mut c = vec![T::zero(); st.num_vars()];
    for (idx, subset) in correlator_basis().iter().enumerate() {
        if coefficients[idx] == T::zero() {
            continue;
        }
        let mut w = Word::identity();
        for (p, set) in subset.iter().enumerate() {
            if let Some(s) = set {
                w.0[p] = vec![if *s == 0 { Letter::Z } else { Letter::X }];
            }
        }
        let vid = st.var_of(&w).ok_or(CoreError::LevelRange {
            level,
            min: ROBUST_LEVEL_MIN,
            max: LEVEL_MAX,
        })?;
        // maximize b·y = −min(−b·y)
        c[vid] = c[vid] - coefficients[idx];
    }
    let sdp = SdpProblem {
        num_vars: st.num_vars(),
        objective: c,
        psd_dim: st.index.words.len(),
        psd_entries: st.psd_entries.clone(),
        ineq: vec![],
        eq: vec![(vec![(0usize, T::one())], T::one())],
    };
    let mut sol = sdp::solve(&sdp, opts);
    sol.objective = -sol.objective;
    sol.dual_objective = -sol.dual_objective;
    Ok(sol)
}

/// Feasibility check of a concrete moment vector against the level-ℓ
/// relaxation with Hardy constraints at (ε₁, ε₂).
#[derive(Clone, Debug)]
pub struct FeasibilityReport<T> {
    pub min_eigenvalue: T,
    pub success_probability: T,
    pub max_zero_violation: T,
    pub feasible: bool,
}

pub fn check_feasibility<T: Scalar>(
    st: &MomentStructure<T>,
    y: &[T],
    eps1: T,
    eps2: T,
    psd_tol: T,
) -> Result<FeasibilityReport<T>, CoreError> {
    let n = st.index.words.len();
    let gamma = st.gamma(y);
    let min_eig = crate::eig::sym_min_eig(&gamma, n);
    let hc = hardy_constraints(st, eps1, eps2)?;
    let eval = |row: &MomentRow<T>| -> T {
        row.iter().map(|(v, c)| *c * y[*v]).sum()
    };
    let success = eval(&hc.success.0);
    let viol = hc
        .zeros
        .iter()
        .map(|(row, rhs)| eval(row) - *rhs)
        .fold(T::zero(), T::max);
    let feasible = min_eig >= -psd_tol
        && (success - hc.success.1).abs() <= psd_tol
        && viol <= psd_tol;
    Ok(FeasibilityReport {
        min_eigenvalue: min_eig,
        success_probability: success,
        max_zero_violation: viol,
        feasible,
    })
}

/// One record of a robustness sweep.
#[derive(Clone, Debug)]
pub struct SweepRow<T> {
    pub eps1: T,
    pub eps2: T,
    pub level: usize,
    pub value: T,
    pub status: SdpStatus,
    pub gap: T,
    pub iterations: usize,
    pub runtime_ms: u128,
}

/// Solves every grid point (rows ordered by (ε₂, ε₁)); per-point failures are
/// recorded in the status column and do not abort the sweep.
pub fn sweep<T: Scalar>(
    eps1_grid: &[T],
    eps2_grid: &[T],
    level: usize,
    kind: RobustKind,
    opts: &SdpOptions<T>,
) -> Result<Vec<SweepRow<T>>, CoreError> {
    let mut points: Vec<(T, T)> = Vec::new();
    let mut e2s = eps2_grid.to_vec();
    let mut e1s = eps1_grid.to_vec();
    e2s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    e1s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for &e2 in &e2s {
        for &e1 in &e1s {
            points.push((e1, e2));
        }
    }
    let rows: Vec<SweepRow<T>> = points
        .par_iter()
        .map(|&(e1, e2)| match robust_solve(kind, e1, e2, level, opts) {
            Ok(r) => SweepRow {
                eps1: e1,
                eps2: e2,
                level,
                value: r.value,
                status: r.status,
                gap: r.gap,
                iterations: r.iterations,
                runtime_ms: r.runtime_ms,
            },
            Err(_) => SweepRow {
                eps1: e1,
                eps2: e2,
                level,
                value: T::nan(),
                status: SdpStatus::NumericalFailure,
                gap: T::nan(),
                iterations: 0,
                runtime_ms: 0,
            },
        })
        .collect();
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy::{family_state, FamilyParams};

    /// Independent brute-force word enumeration: all strings over the six
    /// letters up to length ℓ, fully reduced and deduplicated.
    fn brute_force_count(level: usize) -> usize {
        use std::collections::BTreeSet;
        let letters: Vec<(usize, Letter)> = (0..3)
            .flat_map(|p| [(p, Letter::Z), (p, Letter::X)])
            .collect();
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        seen.insert(Word::identity());
        let mut frontier: Vec<Vec<(usize, Letter)>> = vec![Vec::new()];
        for _ in 0..level {
            let mut next = Vec::new();
            for string in &frontier {
                for &l in &letters {
                    let mut s = string.clone();
                    s.push(l);
                    next.push(s);
                }
            }
            for s in &next {
                // reduce: sort letters stably by party, cancel adjacent equals
                let mut parts: [Vec<Letter>; 3] = Default::default();
                for &(p, l) in s {
                    parts[p].push(l);
                }
                let w = Word::from_parts([&parts[0], &parts[1], &parts[2]]);
                if w.len() <= level {
                    seen.insert(w);
                }
            }
            frontier = next;
        }
        seen.len()
    }

    #[test]
    fn level_word_counts() {
        let counts: Vec<usize> = (1..=4)
            .map(|l| build_words(l).unwrap().words.len())
            .collect();
        assert_eq!(counts, vec![7, 25, 63, 129]);
        for l in 1..=3 {
            assert_eq!(build_words(l).unwrap().words.len(), brute_force_count(l), "level {l}");
        }
    }

    #[test]
    fn level_cap_enforced() {
        assert!(build_words(0).is_err());
        assert!(build_words(5).is_err());
    }

    #[test]
    fn word_reduction_idempotent_and_order_canonical() {
        use Letter::{X, Z};
        // commuting-party reorderings reduce identically by construction:
        // (Z₂)(Z₁) and (Z₁)(Z₂) both store per-party parts
        let a = Word::single(0, Z).mul(&Word::single(1, Z));
        let b = Word::single(1, Z).mul(&Word::single(0, Z));
        assert_eq!(a, b);
        let w = Word::from_parts([&[Z, X, Z], &[X], &[]]);
        let again = Word::from_parts([&w.0[0], &w.0[1], &w.0[2]]);
        assert_eq!(w, again);
    }

    #[test]
    fn native_levels_of_the_objectives() {
        assert_eq!(RobustKind::State.native_min_level(), 5);
        assert_eq!(RobustKind::Measurement.native_min_level(), 4);
    }

    #[test]
    fn ideal_moments_feasible_at_all_levels() {
        let ideal = family_state(&FamilyParams::<f64>::optimal()).unwrap();
        for level in ROBUST_LEVEL_MIN..=LEVEL_MAX {
            let prob = robust_problem(RobustKind::State, 0.0, 0.0, level).unwrap();
            let y = prob.structure.moment_vector(&ideal).unwrap();
            let rep = check_feasibility(&prob.structure, &y, 0.0, 0.0, 1e-8).unwrap();
            assert!(rep.feasible, "level {level}: {rep:?}");
            assert!((rep.success_probability - 0.125).abs() < 1e-12);
        }
    }

    #[test]
    fn probability_rows_reject_level_one() {
        let st = MomentStructure::<f64>::new(build_words(1).unwrap());
        assert!(hardy_constraints(&st, 0.0, 0.0).is_err());
    }

    #[test]
    fn mermin_maximum_at_level_two_is_two() {
        let f = crate::geometry::mermin_functional::<f64>();
        let sol =
            maximize_functional(&f.coefficients, 2, &SdpOptions::default()).unwrap();
        assert_eq!(sol.status, SdpStatus::Optimal);
        assert!(sol.objective >= 2.0 - 1e-5, "{}", sol.objective);
        assert!(sol.objective <= 2.0 + 1e-4, "{}", sol.objective);
    }

    #[test]
    fn hardy_feasibility_solve_at_level_two() {
        // feasibility: minimize 0 subject to the exact Hardy block
        let mut prob = robust_problem(RobustKind::State, 0.0f64, 0.0, 2).unwrap();
        for c in prob.sdp.objective.iter_mut() {
            *c = 0.0;
        }
        let sol = sdp::solve(&prob.sdp, &SdpOptions::default());
        assert_eq!(sol.status, SdpStatus::Optimal, "{sol:?}");
    }
}
