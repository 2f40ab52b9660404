//! States, dichotomic observables, realizations and the behaviors they
//! generate, plus the frozen 26-component correlator coordinates of the
//! tripartite two-setting scenario.


use crate::eig::hermitian_eig;
use crate::error::CoreError;
use crate::matrix::{apply_on_factors, vec_norm, CMatrix, C};
use crate::scalar::Scalar;

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const INVOLUTION_TOL: f64 = 1e-10;
pub const UNITARY_TOL: f64 = 1e-10;
pub const NORM_TOL: f64 = 1e-12;
pub const EIG_SNAP_TOL: f64 = 1e-8;

pub fn pauli_z<T: Scalar>() -> CMatrix<T> {
    CMatrix::from_fn(2, |i, j| {
        if i == j {
            C::new(if i == 0 { T::one() } else { -T::one() }, T::zero())
        } else {
            C::new(T::zero(), T::zero())
        }
    })
    .unwrap()
}

pub fn pauli_x<T: Scalar>() -> CMatrix<T> {
    CMatrix::from_fn(2, |i, j| {
        C::new(if i != j { T::one() } else { T::zero() }, T::zero())
    })
    .unwrap()
}

/// |GHZ⟩ = (|000⟩ + |111⟩)/√2 on three qubits.
pub fn ghz<T: Scalar>() -> Vec<C<T>> {
    let mut v = vec![C::new(T::zero(), T::zero()); 8];
    let a = T::one() / T::of(2.0).sqrt();
    v[0] = C::new(a, T::zero());
    v[7] = C::new(a, T::zero());
    v
}

/// Kronecker product of square matrices in listed order.
pub fn tensor<T: Scalar>(factors: &[CMatrix<T>]) -> Result<CMatrix<T>, CoreError> {
    let mut iter = factors.iter();
    let first = iter.next().ok_or(CoreError::BadParams {
        reason: "tensor of empty factor list".into(),
    })?;
    let mut acc = first.clone();
    for f in iter {
        acc = acc.kron(f)?;
    }
    Ok(acc)
}

/// A Hermitian ±1-eigenvalue (dichotomic projective) observable.
#[derive(Clone, Debug)]
pub struct Observable<T: Scalar> {
    matrix: CMatrix<T>,
    proj_plus: CMatrix<T>,
    proj_minus: CMatrix<T>,
}

impl<T: Scalar> Observable<T> {
    pub fn new(matrix: CMatrix<T>) -> Result<Self, CoreError> {
        let herm_dev = matrix.max_abs_diff(&matrix.dagger());
        if herm_dev > T::of(HERMITIAN_TOL) {
            return Err(CoreError::NotHermitian {
                deviation: herm_dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        let id = CMatrix::identity(matrix.dim())?;
        let invol_dev = matrix.matmul(&matrix).max_abs_diff(&id);
        if invol_dev > T::of(INVOLUTION_TOL) {
            return Err(CoreError::NotInvolution {
                deviation: invol_dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        // Projectors via Hermitian eigendecomposition with ±1 snapping; the
        // minus projector is completed exactly so P₊ + P₋ = 1.
        let eig = hermitian_eig(&matrix, T::of(HERMITIAN_TOL))?;
        let snap = T::of(EIG_SNAP_TOL);
        let mut proj_plus = CMatrix::zeros(matrix.dim())?;
        for (k, &lam) in eig.values.iter().enumerate() {
            if (lam - T::one()).abs() > snap && (lam + T::one()).abs() > snap {
                return Err(CoreError::NotInvolution {
                    deviation: (lam.abs() - T::one()).abs().to_f64().unwrap_or(f64::NAN),
                });
            }
            if lam > T::zero() {
                let col: Vec<C<T>> =
                    (0..matrix.dim()).map(|i| eig.vectors[(i, k)]).collect();
                proj_plus = proj_plus.add(&CMatrix::outer(&col)?);
            }
        }
        let proj_minus = id.sub(&proj_plus);
        Ok(Self { matrix, proj_plus, proj_minus })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    /// Projector onto the ±1 outcome; `Outcome::Plus` ↔ +1.
    pub fn projector(&self, outcome: Outcome) -> &CMatrix<T> {
        match outcome {
            Outcome::Plus => &self.proj_plus,
            Outcome::Minus => &self.proj_minus,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub fn sign<T: Scalar>(self) -> T {
        match self {
            Outcome::Plus => T::one(),
            Outcome::Minus => -T::one(),
        }
    }

    pub fn from_bit(b: usize) -> Self {
        if b == 0 {
            Outcome::Plus
        } else {
            Outcome::Minus
        }
    }
}

/// Shared state: pure vector or density matrix.
#[derive(Clone, Debug)]
pub enum State<T: Scalar> {
    Pure(Vec<C<T>>),
    Mixed(CMatrix<T>),
}

impl<T: Scalar> State<T> {
    pub fn dim(&self) -> usize {
        match self {
            State::Pure(v) => v.len(),
            State::Mixed(m) => m.dim(),
        }
    }

    pub fn density(&self) -> Result<CMatrix<T>, CoreError> {
        match self {
            State::Pure(v) => CMatrix::outer(v),
            State::Mixed(m) => Ok(m.clone()),
        }
    }
}

/// Pure or mixed state with per-party pairs of dichotomic observables.
#[derive(Clone, Debug)]
pub struct Realization<T: Scalar> {
    state: State<T>,
    parties: Vec<[Observable<T>; 2]>,
}

impl<T: Scalar> Realization<T> {
    pub fn new(state: State<T>, parties: Vec<[Observable<T>; 2]>) -> Result<Self, CoreError> {
        let mut total = 1usize;
        for pair in &parties {
            if pair[0].dim() != pair[1].dim() {
                return Err(CoreError::DimensionMismatch {
                    expected: pair[0].dim(),
                    got: pair[1].dim(),
                });
            }
            total *= pair[0].dim();
        }
        if total != state.dim() {
            return Err(CoreError::DimensionMismatch { expected: total, got: state.dim() });
        }
        match &state {
            State::Pure(v) => {
                let n = vec_norm(v);
                if (n - T::one()).abs() > T::of(NORM_TOL) {
                    return Err(CoreError::NotNormalized {
                        norm: n.to_f64().unwrap_or(f64::NAN),
                    });
                }
            }
            State::Mixed(rho) => {
                if rho.max_abs_diff(&rho.dagger()) > T::of(HERMITIAN_TOL) {
                    return Err(CoreError::NotDensity { reason: "not Hermitian".into() });
                }
                let tr = rho.trace();
                if (tr.re - T::one()).abs() > T::of(NORM_TOL) || tr.im.abs() > T::of(NORM_TOL) {
                    return Err(CoreError::NotDensity {
                        reason: format!("trace = {:?}", tr.re.to_f64()),
                    });
                }
                let eig = hermitian_eig(rho, T::of(HERMITIAN_TOL))?;
                if eig.values[0] < -T::of(1e-10) {
                    return Err(CoreError::NotDensity {
                        reason: format!(
                            "min eigenvalue = {:.3e}",
                            eig.values[0].to_f64().unwrap_or(f64::NAN)
                        ),
                    });
                }
            }
        }
        Ok(Self { state, parties })
    }

    pub fn parties(&self) -> usize {
        self.parties.len()
    }

    pub fn state(&self) -> &State<T> {
        &self.state
    }

    pub fn observable(&self, party: usize, setting: usize) -> &Observable<T> {
        &self.parties[party][setting]
    }

    pub fn party_dims(&self) -> Vec<usize> {
        self.parties.iter().map(|p| p[0].dim()).collect()
    }

    /// The per-party box pair (Z, X) = (first-setting, second-setting)
    /// observables, as used by the swap and moment machinery.
    pub fn boxes(&self) -> Vec<(CMatrix<T>, CMatrix<T>)> {
        self.parties
            .iter()
            .map(|p| (p[0].matrix().clone(), p[1].matrix().clone()))
            .collect()
    }
}

/// Conditional probability table P(a|x) for N parties with two settings and
/// outcomes ±1 per party. `x` and `a` are bitmasks with party 0 as the most
/// significant bit; outcome bit 0 ↔ +1.
#[derive(Clone, Debug)]
pub struct Behavior<T: Scalar> {
    parties: usize,
    table: Vec<Vec<T>>,
}

pub const PROB_TOL: f64 = 1e-10;

impl<T: Scalar> Behavior<T> {
    pub fn from_table(parties: usize, table: Vec<Vec<T>>) -> Result<Self, CoreError> {
        let nx = 1usize << parties;
        if table.len() != nx || table.iter().any(|row| row.len() != nx) {
            return Err(CoreError::BadBehavior {
                reason: format!("table must be {nx}×{nx} for {parties} parties"),
            });
        }
        let b = Self { parties, table };
        b.validate()?;
        Ok(b)
    }

    fn validate(&self) -> Result<(), CoreError> {
        let tol = T::of(PROB_TOL);
        let nx = 1usize << self.parties;
        for x in 0..nx {
            let mut sum = T::zero();
            for a in 0..nx {
                let p = self.table[x][a];
                if p < -tol || p > T::one() + tol {
                    return Err(CoreError::BadBehavior {
                        reason: format!("P(a={a}|x={x}) out of [0,1]"),
                    });
                }
                sum = sum + p;
            }
            if (sum - T::one()).abs() > tol {
                return Err(CoreError::BadBehavior {
                    reason: format!("distribution at x={x} sums to {:?}", sum.to_f64()),
                });
            }
        }
        self.check_no_signaling(tol)?;
        Ok(())
    }

    /// Marginals of any party subset must not depend on the other parties'
    /// settings.
    fn check_no_signaling(&self, tol: T) -> Result<(), CoreError> {
        let n = self.parties;
        let nx = 1usize << n;
        // marginal of party i alone, outcome +1, as a function of all settings
        for i in 0..n {
            for x in 0..nx {
                for other in 0..n {
                    if other == i {
                        continue;
                    }
                    let x2 = x ^ (1 << (n - 1 - other));
                    let m1 = self.single_marginal(i, x);
                    let m2 = self.single_marginal(i, x2);
                    if (m1 - m2).abs() > tol {
                        return Err(CoreError::BadBehavior {
                            reason: format!(
                                "signaling: party {i} marginal changes with party {other} setting"
                            ),
                        });
                    }
                }
            }
        }
        // pairwise marginals for the tripartite case
        if n == 3 {
            for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
                let k = 3 - i - j;
                for x in 0..nx {
                    let x2 = x ^ (1 << (n - 1 - k));
                    for (ai, aj) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                        let m1 = self.pair_marginal(i, j, ai, aj, x);
                        let m2 = self.pair_marginal(i, j, ai, aj, x2);
                        if (m1 - m2).abs() > tol {
                            return Err(CoreError::BadBehavior {
                                reason: format!(
                                    "signaling: pair ({i},{j}) marginal changes with party {k}"
                                ),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn single_marginal(&self, party: usize, x: usize) -> T {
        let n = self.parties;
        let mut s = T::zero();
        for a in 0..(1usize << n) {
            if (a >> (n - 1 - party)) & 1 == 0 {
                s = s + self.table[x][a];
            }
        }
        s
    }

    fn pair_marginal(&self, i: usize, j: usize, ai: usize, aj: usize, x: usize) -> T {
        let n = self.parties;
        let mut s = T::zero();
        for a in 0..(1usize << n) {
            if (a >> (n - 1 - i)) & 1 == ai && (a >> (n - 1 - j)) & 1 == aj {
                s = s + self.table[x][a];
            }
        }
        s
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn prob(&self, x: usize, a: usize) -> T {
        self.table[x][a]
    }

    /// Expectation of the product of observables over the party subset with
    /// the given settings; parties outside the subset are marginalised.
    pub fn expectation(&self, subset: &[Option<usize>]) -> T {
        let n = self.parties;
        assert_eq!(subset.len(), n);
        let mut x = 0usize;
        for (i, s) in subset.iter().enumerate() {
            if let Some(setting) = s {
                x |= setting << (n - 1 - i);
            }
        }
        let mut acc = T::zero();
        for a in 0..(1usize << n) {
            let mut sign = T::one();
            for (i, s) in subset.iter().enumerate() {
                if s.is_some() && (a >> (n - 1 - i)) & 1 == 1 {
                    sign = -sign;
                }
            }
            acc = acc + sign * self.table[x][a];
        }
        acc
    }

    /// The frozen 26-component correlator vector (N = 3 only).
    pub fn correlators(&self) -> Result<Vec<T>, CoreError> {
        if self.parties != 3 {
            return Err(CoreError::BadBehavior {
                reason: format!("correlators need 3 parties, got {}", self.parties),
            });
        }
        Ok(correlator_basis()
            .iter()
            .map(|subset| self.expectation(subset))
            .collect())
    }
}

/// The frozen correlator coordinate order: 6 singles, 12 pairs (AB, BC, AC
/// blocks), 8 triples (C₀ block then C₁ block), aligned with the Bell-operator
/// basis G₁…G₂₆ so behaviors and functionals share one coordinate system.
pub fn correlator_basis() -> &'static [[Option<usize>; 3]; 26] {
    const B: [[Option<usize>; 3]; 26] = [
        [Some(0), None, None],
        [Some(1), None, None],
        [None, Some(0), None],
        [None, Some(1), None],
        [None, None, Some(0)],
        [None, None, Some(1)],
        [Some(0), Some(0), None],
        [Some(0), Some(1), None],
        [Some(1), Some(0), None],
        [Some(1), Some(1), None],
        [None, Some(0), Some(0)],
        [None, Some(0), Some(1)],
        [None, Some(1), Some(0)],
        [None, Some(1), Some(1)],
        [Some(0), None, Some(0)],
        [Some(0), None, Some(1)],
        [Some(1), None, Some(0)],
        [Some(1), None, Some(1)],
        [Some(0), Some(0), Some(0)],
        [Some(0), Some(1), Some(0)],
        [Some(1), Some(0), Some(0)],
        [Some(1), Some(1), Some(0)],
        [Some(0), Some(0), Some(1)],
        [Some(0), Some(1), Some(1)],
        [Some(1), Some(0), Some(1)],
        [Some(1), Some(1), Some(1)],
    ];
    &B
}

/// Human-readable label of a correlator coordinate, e.g. `A0B1C0`.
pub fn correlator_label(idx: usize) -> String {
    let subset = &correlator_basis()[idx];
    let names = ["A", "B", "C"];
    let mut s = String::new();
    for (p, set) in subset.iter().enumerate() {
        if let Some(x) = set {
            s.push_str(names[p]);
            s.push_str(&x.to_string());
        }
    }
    s
}

/// P(a|x) = Tr[ρ (Π_{a₁|x₁} ⊗ … ⊗ Π_{a_N|x_N})].
pub fn behavior_from_realization<T: Scalar>(
    r: &Realization<T>,
) -> Result<Behavior<T>, CoreError> {
    let n = r.parties();
    let nx = 1usize << n;
    let mut table = vec![vec![T::zero(); nx]; nx];
    match r.state() {
        State::Pure(psi) => {
            let dims = r.party_dims();
            for x in 0..nx {
                for a in 0..nx {
                    // apply projectors factor-wise, then overlap
                    let mut v = psi.clone();
                    for p in 0..n {
                        let xp = (x >> (n - 1 - p)) & 1;
                        let ap = (a >> (n - 1 - p)) & 1;
                        let proj = r.observable(p, xp).projector(Outcome::from_bit(ap));
                        v = apply_on_factors(&v, &dims, p, 1, proj);
                    }
                    table[x][a] = crate::matrix::vec_dot(psi, &v).re;
                }
            }
        }
        State::Mixed(rho) => {
            for x in 0..nx {
                for a in 0..nx {
                    let projs: Vec<&CMatrix<T>> = (0..n)
                        .map(|p| {
                            let xp = (x >> (n - 1 - p)) & 1;
                            let ap = (a >> (n - 1 - p)) & 1;
                            r.observable(p, xp).projector(Outcome::from_bit(ap))
                        })
                        .collect();
                    table[x][a] = CMatrix::trace_kron_with(&projs, rho).re;
                }
            }
        }
    }
    // clamp float dust so the Behavior validators see clean probabilities
    for row in &mut table {
        for p in row.iter_mut() {
            if p.abs() < T::of(1e-15) {
                *p = T::zero();
            }
        }
    }
    Behavior::from_table(n, table)
}

/// Conjugates state and observables by per-party unitaries; the behavior is
/// unchanged.
pub fn conjugate_realization<T: Scalar>(
    r: &Realization<T>,
    unitaries: &[CMatrix<T>],
) -> Result<Realization<T>, CoreError> {
    let n = r.parties();
    if unitaries.len() != n {
        return Err(CoreError::DimensionMismatch { expected: n, got: unitaries.len() });
    }
    let dims = r.party_dims();
    for (u, &d) in unitaries.iter().zip(&dims) {
        if u.dim() != d {
            return Err(CoreError::DimensionMismatch { expected: d, got: u.dim() });
        }
        let dev = u.matmul(&u.dagger()).max_abs_diff(&CMatrix::identity(d)?);
        if dev > T::of(UNITARY_TOL) {
            return Err(CoreError::NotUnitary {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let state = match r.state() {
        State::Pure(v) => {
            let mut w = v.clone();
            for (p, u) in unitaries.iter().enumerate() {
                w = apply_on_factors(&w, &dims, p, 1, u);
            }
            State::Pure(w)
        }
        State::Mixed(rho) => {
            let big = tensor(unitaries)?;
            State::Mixed(big.matmul(rho).matmul(&big.dagger()))
        }
    };
    let parties = (0..n)
        .map(|p| {
            let u = &unitaries[p];
            let conj = |o: &Observable<T>| {
                Observable::new(u.matmul(o.matrix()).matmul(&u.dagger()))
            };
            Ok([conj(r.observable(p, 0))?, conj(r.observable(p, 1))?])
        })
        .collect::<Result<Vec<_>, CoreError>>()?;
    Realization::new(state, parties)
}

/// Builds a qubit realization from a pure 3-qubit state and one (Z, X)
/// observable pair applied identically at every party.
pub fn symmetric_qubit_realization<T: Scalar>(
    psi: Vec<C<T>>,
    z: CMatrix<T>,
    x: CMatrix<T>,
) -> Result<Realization<T>, CoreError> {
    let pair = [Observable::new(z)?, Observable::new(x)?];
    Realization::new(State::Pure(psi), vec![pair.clone(), pair.clone(), pair])
}

/// The ideal complex-observable pair: off-diagonal phases π/6 and 2π/3.
pub fn complex_observable_pair<T: Scalar>() -> (CMatrix<T>, CMatrix<T>) {
    let mk = |phase: f64| {
        CMatrix::from_fn(2, |i, j| {
            if i == 0 && j == 1 {
                C::new(T::of(phase.cos()), -T::of(phase.sin()))
            } else if i == 1 && j == 0 {
                C::new(T::of(phase.cos()), T::of(phase.sin()))
            } else {
                C::new(T::zero(), T::zero())
            }
        })
        .unwrap()
    };
    (mk(std::f64::consts::PI / 6.0), mk(2.0 * std::f64::consts::PI / 3.0))
}

/// The behavior-preserving local unitary connecting the real Hardy-family
/// realization to the GHZ realization with complex observables (its adjoint
/// maps the GHZ side back).
pub fn family_to_ghz_unitary<T: Scalar>() -> CMatrix<T> {
    use std::f64::consts::PI;
    let g = |ph: f64| C::new(T::of(ph.cos()), T::of(ph.sin()));
    let s = T::one() / T::of(2.0).sqrt();
    let scale = g(PI / 4.0).scale(s);
    // adjoint of the GHZ→family direction
    let m = CMatrix::from_fn(2, |i, j| match (i, j) {
        (0, 0) => g(-PI / 6.0),
        (0, 1) => g(-PI / 3.0),
        (1, 0) => -g(PI / 3.0),
        _ => g(PI / 6.0),
    })
    .unwrap();
    m.scale(scale).dagger()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_identity_and_ghz_sign() {
        let i2 = CMatrix::<f64>::identity(2).unwrap();
        assert_eq!(tensor(&[i2.clone()]).unwrap().dim(), 2);

        // σz ⊗ σz on |00⟩ has eigenvalue +1
        let zz = tensor(&[pauli_z::<f64>(), pauli_z()]).unwrap();
        let mut v = vec![C::new(0.0, 0.0); 4];
        v[0] = C::new(1.0, 0.0);
        let w = zz.mul_vec(&v);
        assert!((w[0].re - 1.0).abs() < 1e-15);

        // (σx⊗σx⊗σx)|GHZ⟩ = +|GHZ⟩, checked against an independent
        // hand-rolled Kronecker evaluation
        let sx = pauli_x::<f64>();
        let xxx = tensor(&[sx.clone(), sx.clone(), sx.clone()]).unwrap();
        let g = ghz::<f64>();
        let got = xxx.mul_vec(&g);
        let mut expect = vec![C::new(0.0, 0.0); 8];
        for i in 0..8 {
            for j in 0..8 {
                let mut k = C::new(1.0, 0.0);
                let (mut ii, mut jj) = (i, j);
                for _ in 0..3 {
                    k = k * sx[(ii % 2, jj % 2)];
                    ii /= 2;
                    jj /= 2;
                }
                expect[i] = expect[i] + k * g[j];
            }
        }
        for i in 0..8 {
            assert!((got[i] - expect[i]).norm() < 1e-15);
            assert!((got[i] - g[i]).norm() < 1e-15);
        }
    }

    #[test]
    fn observable_rejects_non_involution() {
        let m = CMatrix::from_rows(&[
            vec![(1.0, 0.0), (0.0, 0.0)],
            vec![(0.0, 0.0), (0.5, 0.0)],
        ])
        .unwrap();
        assert!(matches!(Observable::new(m), Err(CoreError::NotInvolution { .. })));
    }

    #[test]
    fn projectors_sum_to_identity() {
        let (a0, a1) = complex_observable_pair::<f64>();
        for m in [a0, a1] {
            let obs = Observable::new(m).unwrap();
            let sum = obs.projector(Outcome::Plus).add(obs.projector(Outcome::Minus));
            assert!(sum.max_abs_diff(&CMatrix::identity(2).unwrap()) < 1e-12);
            let idem = obs
                .projector(Outcome::Plus)
                .matmul(obs.projector(Outcome::Plus))
                .max_abs_diff(obs.projector(Outcome::Plus));
            assert!(idem < 1e-12);
        }
    }

    #[test]
    fn product_state_with_sigma_z_is_deterministic() {
        let mut v = vec![C::new(0.0, 0.0); 8];
        v[0] = C::new(1.0, 0.0);
        let r = symmetric_qubit_realization(v, pauli_z::<f64>(), pauli_x()).unwrap();
        let b = behavior_from_realization(&r).unwrap();
        let c = b.correlators().unwrap();
        // every correlator whose settings are all 0 equals +1
        for (idx, subset) in correlator_basis().iter().enumerate() {
            if subset.iter().flatten().all(|&s| s == 0) {
                assert!((c[idx] - 1.0).abs() < 1e-12, "idx {idx}");
            }
        }
    }

    #[test]
    fn maximally_mixed_has_zero_correlators() {
        let rho = CMatrix::from_fn(8, |i, j| {
            if i == j {
                C::new(0.125, 0.0)
            } else {
                C::new(0.0, 0.0)
            }
        })
        .unwrap();
        let pair = [
            Observable::new(pauli_z::<f64>()).unwrap(),
            Observable::new(pauli_x()).unwrap(),
        ];
        let r = Realization::new(
            State::Mixed(rho),
            vec![pair.clone(), pair.clone(), pair],
        )
        .unwrap();
        let c = behavior_from_realization(&r).unwrap().correlators().unwrap();
        for v in c {
            assert!(v.abs() < 1e-12);
        }
    }
}
