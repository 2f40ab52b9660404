//! The 26-dimensional correlation geometry of the tripartite two-setting
//! scenario: deterministic vertices, LP membership with certificates, the
//! exposing Bell functional, the Bell operator, and Mermin equivalence.

pub mod simplex;

use crate::error::CoreError;
use crate::matrix::CMatrix;
use crate::quantum::{correlator_basis, Realization};
use crate::scalar::{LpScalar, Scalar};
use simplex::{LpOutcome, LpProblem, Relation, Sense, VarBound};

pub const CORR_DIM: usize = 26;
pub const NUM_VERTICES: usize = 64;

/// One local deterministic strategy: an outcome in {+1,−1} per party per
/// setting, plus its 26-component correlator vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterministicBehavior {
    /// Outcomes in the order (A⁰, A¹, B⁰, B¹, C⁰, C¹), entries ±1.
    pub assignment: [i8; 6],
    pub vertex: [i8; CORR_DIM],
}

/// Canonical enumeration: index k ∈ [0, 63] encodes the six outcome bits with
/// A⁰ as the most significant bit and C¹ as the least, bit value 0 ↔ +1.
pub fn deterministic_behaviors() -> Vec<DeterministicBehavior> {
    (0..NUM_VERTICES)
        .map(|k| {
            let mut assignment = [0i8; 6];
            for (i, a) in assignment.iter_mut().enumerate() {
                *a = if (k >> (5 - i)) & 1 == 0 { 1 } else { -1 };
            }
            let vertex = vertex_of_assignment(&assignment);
            DeterministicBehavior { assignment, vertex }
        })
        .collect()
}

fn vertex_of_assignment(assignment: &[i8; 6]) -> [i8; CORR_DIM] {
    let outcome = |party: usize, setting: usize| assignment[party * 2 + setting];
    let mut v = [0i8; CORR_DIM];
    for (idx, subset) in correlator_basis().iter().enumerate() {
        let mut prod = 1i8;
        for (party, s) in subset.iter().enumerate() {
            if let Some(setting) = s {
                prod *= outcome(party, *setting);
            }
        }
        v[idx] = prod;
    }
    v
}

/// The ideal Hardy-point correlator vector: four nonzero triples.
pub fn hardy_point<T: Scalar>() -> [T; CORR_DIM] {
    let mut v = [T::zero(); CORR_DIM];
    v[19] = -T::one(); // A0 B1 C0
    v[20] = -T::one(); // A1 B0 C0
    v[22] = -T::one(); // A0 B0 C1
    v[25] = T::one(); // A1 B1 C1
    v
}

/// A Bell functional in the G₁…G₂₆ coordinate order.
#[derive(Clone, Debug, PartialEq)]
pub struct BellFunctional<S> {
    pub coefficients: Vec<S>,
}

impl<S: LpScalar> BellFunctional<S> {
    pub fn new(coefficients: Vec<S>) -> Result<Self, CoreError> {
        if coefficients.len() != CORR_DIM {
            return Err(CoreError::DimensionMismatch {
                expected: CORR_DIM,
                got: coefficients.len(),
            });
        }
        Ok(Self { coefficients })
    }

    pub fn dot(&self, point: &[S]) -> S {
        self.coefficients
            .iter()
            .zip(point)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }
}

/// The paper-normalized Mermin functional ½(A₁B₀C₀ + A₀B₁C₀ + A₀B₀C₁ − A₁B₁C₁).
pub fn mermin_functional<S: LpScalar>() -> BellFunctional<S> {
    let half = S::one() / (S::one() + S::one());
    let mut c = vec![S::zero(); CORR_DIM];
    c[20] = half.clone(); // A1 B0 C0
    c[19] = half.clone(); // A0 B1 C0
    c[22] = half.clone(); // A0 B0 C1
    c[25] = -half; // A1 B1 C1
    BellFunctional { coefficients: c }
}

/// The exposing functional the primal LP returns for the Hardy point:
/// ½(−A₀B₁C₀ − A₁B₀C₀ − A₀B₀C₁ + A₁B₁C₁).
pub fn hardy_exposing_functional<S: LpScalar>() -> BellFunctional<S> {
    let half = S::one() / (S::one() + S::one());
    let mut c = vec![S::zero(); CORR_DIM];
    c[19] = -half.clone();
    c[20] = -half.clone();
    c[22] = -half.clone();
    c[25] = half;
    BellFunctional { coefficients: c }
}

fn vertex_row<S: LpScalar>(v: &[i8; CORR_DIM]) -> Vec<S> {
    v.iter()
        .map(|&e| match e {
            1 => S::one(),
            -1 => -S::one(),
            _ => S::zero(),
        })
        .collect()
}

/// LP certificate bundle for the geometry programs.
#[derive(Clone, Debug)]
pub struct LpCertificate<S> {
    pub value: S,
    /// Optimizer of the solved program (functional coefficients for the
    /// exposing LP, vertex weights for the dual/membership LPs).
    pub optimizer: Vec<S>,
    /// Nonnegative weights over the 64 vertices attached to the solution
    /// (dual multipliers of the exposing LP, primal weights of the dual LP).
    pub weights: Vec<S>,
    pub gap: f64,
}

#[derive(Clone, Debug)]
pub enum Membership<S> {
    /// Local: convex weights over the 64 vertices reconstructing the target.
    Local { weights: Vec<S> },
    /// Nonlocal: Farkas-type certificate (see [`simplex::LpOutcome`]).
    Nonlocal { farkas: Vec<S> },
}

/// max b·target s.t. b·P_j ≤ 1 over all 64 deterministic vertices.
pub fn exposing_functional<S: LpScalar>(
    target: &[S],
) -> Result<(BellFunctional<S>, LpCertificate<S>), CoreError> {
    if target.len() != CORR_DIM {
        return Err(CoreError::DimensionMismatch { expected: CORR_DIM, got: target.len() });
    }
    let verts = deterministic_behaviors();
    let rows = verts
        .iter()
        .map(|v| (vertex_row::<S>(&v.vertex), Relation::Le, S::one()))
        .collect();
    let p = LpProblem {
        sense: Sense::Maximize,
        objective: target.to_vec(),
        rows,
        bounds: vec![VarBound::Free; CORR_DIM],
    };
    match simplex::solve(&p) {
        LpOutcome::Optimal(sol) => {
            let functional = BellFunctional::new(sol.x.clone())?;
            let cert = LpCertificate {
                value: sol.value,
                optimizer: sol.x,
                weights: sol.duals,
                gap: sol.gap,
            };
            Ok((functional, cert))
        }
        LpOutcome::Unbounded { .. } => Err(CoreError::BadParams {
            reason: "target lies outside the no-signaling cone (unbounded LP)".into(),
        }),
        LpOutcome::Infeasible { .. } => unreachable!("b = 0 is always feasible"),
    }
}

/// min Σ y_k s.t. Σ y_k P_k = target, y ≥ 0 — the dual of the exposing LP.
pub fn dual_certificate<S: LpScalar>(target: &[S]) -> Result<LpCertificate<S>, CoreError> {
    if target.len() != CORR_DIM {
        return Err(CoreError::DimensionMismatch { expected: CORR_DIM, got: target.len() });
    }
    let verts = deterministic_behaviors();
    let rows: Vec<(Vec<S>, Relation, S)> = (0..CORR_DIM)
        .map(|c| {
            let row = verts.iter().map(|v| vertex_row::<S>(&v.vertex)[c].clone()).collect();
            (row, Relation::Eq, target[c].clone())
        })
        .collect();
    let p = LpProblem {
        sense: Sense::Minimize,
        objective: vec![S::one(); NUM_VERTICES],
        rows,
        bounds: vec![VarBound::NonNeg; NUM_VERTICES],
    };
    match simplex::solve(&p) {
        LpOutcome::Optimal(sol) => Ok(LpCertificate {
            value: sol.value,
            optimizer: sol.x.clone(),
            weights: sol.x,
            gap: sol.gap,
        }),
        LpOutcome::Infeasible { .. } => Err(CoreError::BadParams {
            reason: "target outside the cone of deterministic vertices".into(),
        }),
        LpOutcome::Unbounded { .. } => unreachable!("objective bounded below by 0"),
    }
}

/// Convex membership in the local polytope: Σ y_k P_k = target, Σ y_k = 1,
/// y ≥ 0. Infeasibility certifies nonlocality.
pub fn membership<S: LpScalar>(target: &[S]) -> Result<Membership<S>, CoreError> {
    if target.len() != CORR_DIM {
        return Err(CoreError::DimensionMismatch { expected: CORR_DIM, got: target.len() });
    }
    let verts = deterministic_behaviors();
    let mut rows: Vec<(Vec<S>, Relation, S)> = (0..CORR_DIM)
        .map(|c| {
            let row = verts.iter().map(|v| vertex_row::<S>(&v.vertex)[c].clone()).collect();
            (row, Relation::Eq, target[c].clone())
        })
        .collect();
    rows.push((vec![S::one(); NUM_VERTICES], Relation::Eq, S::one()));
    let p = LpProblem {
        sense: Sense::Minimize,
        objective: vec![S::zero(); NUM_VERTICES],
        rows,
        bounds: vec![VarBound::NonNeg; NUM_VERTICES],
    };
    match simplex::solve(&p) {
        LpOutcome::Optimal(sol) => Ok(Membership::Local { weights: sol.x }),
        LpOutcome::Infeasible { farkas } => Ok(Membership::Nonlocal { farkas }),
        LpOutcome::Unbounded { .. } => unreachable!("feasibility problem"),
    }
}

/// Verifies a Farkas certificate against the membership system: the
/// functional λ (over the 26 correlator rows plus the normalization row)
/// must satisfy λᵀ·column_k ≤ ε for every vertex k while λᵀ·rhs > ε.
pub fn farkas_refutes_membership<S: LpScalar>(target: &[S], farkas: &[S], tol: f64) -> bool {
    let verts = deterministic_behaviors();
    if farkas.len() != CORR_DIM + 1 {
        return false;
    }
    for v in &verts {
        let mut s = farkas[CORR_DIM].clone();
        for c in 0..CORR_DIM {
            s = s + farkas[c].clone() * vertex_row::<S>(&v.vertex)[c].clone();
        }
        if LpScalar::to_f64(&s) > tol {
            return false;
        }
    }
    let mut rhs = farkas[CORR_DIM].clone();
    for c in 0..CORR_DIM {
        rhs = rhs + farkas[c].clone() * target[c].clone();
    }
    LpScalar::to_f64(&rhs) > tol
}

/// Assembles the Bell operator W = Σ b_j G_j from a realization's observables.
pub fn bell_operator<T: Scalar>(
    coefficients: &[T],
    r: &Realization<T>,
) -> Result<CMatrix<T>, CoreError> {
    if r.parties() != 3 {
        return Err(CoreError::BadParams { reason: "Bell operator needs 3 parties".into() });
    }
    if coefficients.len() != CORR_DIM {
        return Err(CoreError::DimensionMismatch {
            expected: CORR_DIM,
            got: coefficients.len(),
        });
    }
    let dims = r.party_dims();
    let total: usize = dims.iter().product();
    let mut w = CMatrix::zeros(total)?;
    for (idx, subset) in correlator_basis().iter().enumerate() {
        let c = coefficients[idx];
        if c == T::zero() {
            continue;
        }
        let factors: Vec<CMatrix<T>> = (0..3)
            .map(|party| match subset[party] {
                Some(setting) => Ok(r.observable(party, setting).matrix().clone()),
                None => CMatrix::identity(dims[party]),
            })
            .collect::<Result<_, CoreError>>()?;
        let g = crate::quantum::tensor(&factors)?;
        w = w.add(&g.scale_re(c));
    }
    Ok(w)
}

/// One element of the finite relabeling group: a party permutation, per-party
/// setting swaps, and per-party per-setting outcome flips.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Relabeling {
    pub party_perm: [usize; 3],
    pub swap_settings: [bool; 3],
    /// outcome_flip[party][setting]
    pub outcome_flip: [[bool; 2]; 3],
}

impl Relabeling {
    pub fn identity() -> Self {
        Relabeling {
            party_perm: [0, 1, 2],
            swap_settings: [false; 3],
            outcome_flip: [[false; 2]; 3],
        }
    }

    /// Applies the relabeling to a functional in the G coordinate order.
    pub fn apply<S: LpScalar>(&self, f: &BellFunctional<S>) -> BellFunctional<S> {
        let basis = correlator_basis();
        let mut out = vec![S::zero(); CORR_DIM];
        for (idx, subset) in basis.iter().enumerate() {
            if f.coefficients[idx].is_zero() {
                continue;
            }
            // move each party's operator to its new slot with its new setting
            let mut new_subset: [Option<usize>; 3] = [None, None, None];
            let mut sign_flip = false;
            for (party, s) in subset.iter().enumerate() {
                if let Some(setting) = s {
                    let new_party = self.party_perm[party];
                    let new_setting =
                        if self.swap_settings[party] { 1 - *setting } else { *setting };
                    if self.outcome_flip[party][*setting] {
                        sign_flip = !sign_flip;
                    }
                    new_subset[new_party] = Some(new_setting);
                }
            }
            let new_idx = basis
                .iter()
                .position(|b| *b == new_subset)
                .expect("closed under relabeling");
            let v = f.coefficients[idx].clone();
            let v = if sign_flip { -v } else { v };
            out[new_idx] = out[new_idx].clone() + v;
        }
        BellFunctional { coefficients: out }
    }
}

/// Searches the 3072-element relabeling group for a map carrying `f` onto the
/// normalized Mermin functional; returns the witness when one exists.
pub fn mermin_equivalence<S: LpScalar>(f: &BellFunctional<S>) -> Option<Relabeling> {
    let target = mermin_functional::<S>();
    let perms: [[usize; 3]; 6] =
        [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let tol = S::pivot_tol();
    for perm in perms {
        for swaps in 0..8u8 {
            let swap_settings = [swaps & 1 != 0, swaps & 2 != 0, swaps & 4 != 0];
            for flips in 0..64u8 {
                let outcome_flip = [
                    [flips & 1 != 0, flips & 2 != 0],
                    [flips & 4 != 0, flips & 8 != 0],
                    [flips & 16 != 0, flips & 32 != 0],
                ];
                let rel = Relabeling { party_perm: perm, swap_settings, outcome_flip };
                let g = rel.apply(f);
                let close = g
                    .coefficients
                    .iter()
                    .zip(&target.coefficients)
                    .all(|(a, b)| (a.clone() - b.clone()).abs() <= tol.clone() + tol.clone());
                if close {
                    return Some(rel);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_enumeration_basics() {
        let verts = deterministic_behaviors();
        assert_eq!(verts.len(), 64);
        // k = 0 is the all-+1 strategy
        assert!(verts[0].vertex.iter().all(|&v| v == 1));
        // all distinct
        let set: std::collections::BTreeSet<_> = verts.iter().map(|v| v.vertex).collect();
        assert_eq!(set.len(), 64);
        // sign symmetry: the average vanishes coordinate-wise
        for c in 0..CORR_DIM {
            let s: i32 = verts.iter().map(|v| v.vertex[c] as i32).sum();
            assert_eq!(s, 0, "coordinate {c}");
        }
    }

    #[test]
    fn exposing_value_on_a_vertex_is_one() {
        let verts = deterministic_behaviors();
        let target: Vec<f64> = verts[17].vertex.iter().map(|&v| v as f64).collect();
        let (_, cert) = exposing_functional(&target).unwrap();
        assert!((cert.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn exposing_value_on_zero_target_is_zero() {
        let target = vec![0.0f64; CORR_DIM];
        let (_, cert) = exposing_functional(&target).unwrap();
        assert!(cert.value.abs() < 1e-12);
    }

    #[test]
    fn dual_on_vertex_weights_itself() {
        let verts = deterministic_behaviors();
        let target: Vec<f64> = verts[5].vertex.iter().map(|&v| v as f64).collect();
        let cert = dual_certificate(&target).unwrap();
        assert!((cert.value - 1.0).abs() < 1e-9);
        assert!((cert.weights[5] - 1.0).abs() < 1e-9);
        let total: f64 = cert.weights.iter().sum();
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn two_point_mixture_splits_weights() {
        let verts = deterministic_behaviors();
        let target: Vec<f64> = (0..CORR_DIM)
            .map(|c| 0.5 * (verts[0].vertex[c] as f64 + verts[1].vertex[c] as f64))
            .collect();
        let cert = dual_certificate(&target).unwrap();
        assert!((cert.value - 1.0).abs() < 1e-9);
        assert!((cert.weights[0] - 0.5).abs() < 1e-9);
        assert!((cert.weights[1] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn mermin_is_equivalent_to_itself_by_identity() {
        let f = mermin_functional::<f64>();
        let w = mermin_equivalence(&f).unwrap();
        assert_eq!(w, Relabeling::identity());
    }

    #[test]
    fn chsh_lifting_is_not_mermin() {
        // CHSH on parties A,B lifted with C⁰: ½(A0B0 + A0B1 + A1B0 − A1B1)·C0
        let mut c = vec![0.0f64; CORR_DIM];
        c[18] = 0.5; // A0B0C0
        c[19] = 0.5; // A0B1C0
        c[20] = 0.5; // A1B0C0
        c[21] = -0.5; // A1B1C0
        let f = BellFunctional::new(c).unwrap();
        assert!(mermin_equivalence(&f).is_none());
    }
}
