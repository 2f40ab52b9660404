//! Hardy-type conditions for N parties, the constrained three-qubit state
//! family, seeded multi-start maximization of the Hardy probability, and the
//! block-isometry extraction demo.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::CoreError;
use crate::matrix::{vec_norm, CMatrix, C, MAX_VECTOR_DIM};
use crate::quantum::{behavior_from_realization, ghz, pauli_z, Behavior, Observable, Realization, State};
use crate::scalar::Scalar;

/// Default tolerance for declaring the zero conditions satisfied on ideal
/// (exact-algebra) realizations.
pub const DEFAULT_EPS_ZERO: f64 = 1e-9;

/// Outcome of checking the N-party Hardy conditions on a behavior.
#[derive(Clone, Debug)]
pub struct HardyReport<T> {
    /// P(+…+ | first setting everywhere) — the Hardy success probability.
    pub p: T,
    /// The N single-flip probabilities plus P(−…− | second setting everywhere),
    /// all of which must vanish.
    pub zero_residuals: Vec<T>,
    pub satisfied: bool,
    pub eps_zero: T,
}

/// Reads the Hardy probability and the N+1 zero-condition residuals.
pub fn hardy_check<T: Scalar>(b: &Behavior<T>, eps_zero: T) -> HardyReport<T> {
    let n = b.parties();
    let all_plus = 0usize;
    let all_minus = (1usize << n) - 1;
    let p = b.prob(0, all_plus);
    let mut zero_residuals = Vec::with_capacity(n + 1);
    for i in 0..n {
        let x = 1usize << (n - 1 - i);
        zero_residuals.push(b.prob(x, all_plus));
    }
    zero_residuals.push(b.prob(all_minus, all_minus));
    let max_res = zero_residuals.iter().copied().fold(T::zero(), T::max);
    HardyReport { p, zero_residuals, satisfied: max_res <= eps_zero, eps_zero }
}

/// Parameters of the zero-condition-constrained three-qubit family: three
/// measurement angles and the four free (pre-normalization) amplitudes.
#[derive(Clone, Copy, Debug)]
pub struct FamilyParams<T> {
    pub alphas: [T; 3],
    pub a000: T,
    pub a011: T,
    pub a101: T,
    pub a110: T,
}

/// Minimum distance each α may keep from the tan/cot poles at {0, π, 2π}.
pub const POLE_MARGIN: f64 = 1e-6;

impl<T: Scalar> FamilyParams<T> {
    /// The parameter point attaining the family optimum p = 1/8.
    pub fn optimal() -> Self {
        let a = T::one() / (T::of(2.0) * T::of(2.0).sqrt());
        FamilyParams {
            alphas: [T::of(3.0 * std::f64::consts::PI / 2.0); 3],
            a000: a,
            a011: -a,
            a101: -a,
            a110: -a,
        }
    }

    fn validate(&self) -> Result<(), CoreError> {
        for (i, &al) in self.alphas.iter().enumerate() {
            let a = al.to_f64().unwrap_or(f64::NAN);
            let margin = POLE_MARGIN;
            if !(a > margin && a < 2.0 * std::f64::consts::PI - margin)
                || (a - std::f64::consts::PI).abs() < margin
            {
                return Err(CoreError::BadParams {
                    reason: format!("alpha_{} = {a} too close to a tan/cot pole", i + 1),
                });
            }
        }
        Ok(())
    }

    /// The eight pre-normalization amplitudes in binary order
    /// (a000, a001, …, a111), with the three single-flip amplitudes and a111
    /// fixed by the zero conditions.
    pub fn amplitudes(&self) -> Result<[T; 8], CoreError> {
        self.validate()?;
        let half = T::of(0.5);
        let t: Vec<T> = self.alphas.iter().map(|&a| (a * half).tan()).collect();
        let c: Vec<T> = self.alphas.iter().map(|&a| (a * half).tan().recip()).collect();
        let a000 = self.a000;
        let a100 = -c[0] * a000;
        let a010 = -c[1] * a000;
        let a001 = -c[2] * a000;
        let a111 = a000 * (t[0] * t[1] * t[2] + c[0] * t[1] * t[2] + t[0] * c[1] * t[2] + t[0] * t[1] * c[2])
            + self.a110 * t[2]
            + self.a101 * t[1]
            + self.a011 * t[0];
        Ok([a000, a001, a010, self.a011, a100, self.a101, self.a110, a111])
    }
}

/// The second-setting observable of the family at angle α:
/// [[cos α, sin α], [sin α, −cos α]].
pub fn family_second_observable<T: Scalar>(alpha: T) -> CMatrix<T> {
    let (s, c) = (alpha.sin(), alpha.cos());
    CMatrix::from_fn(2, |i, j| {
        let v = match (i, j) {
            (0, 0) => c,
            (1, 1) => -c,
            _ => s,
        };
        C::new(v, T::zero())
    })
    .unwrap()
}

/// Builds the normalized family state with A⁰ = σ_z and the angle-dependent
/// A¹ per party. The construction enforces the three single-flip zero
/// conditions and the all-minus condition by substitution; the latter is
/// re-verified numerically and any discrepancy aborts loudly.
pub fn family_state<T: Scalar>(fp: &FamilyParams<T>) -> Result<Realization<T>, CoreError> {
    let amps = fp.amplitudes()?;
    let norm: T = amps.iter().map(|&a| a * a).sum::<T>().sqrt();
    if norm < T::of(1e-12) {
        return Err(CoreError::BadParams { reason: "zero-norm amplitude vector".into() });
    }
    let psi: Vec<C<T>> = amps.iter().map(|&a| C::new(a / norm, T::zero())).collect();
    let parties = (0..3)
        .map(|i| {
            Ok([
                Observable::new(pauli_z())?,
                Observable::new(family_second_observable(fp.alphas[i]))?,
            ])
        })
        .collect::<Result<Vec<_>, CoreError>>()?;
    let r = Realization::new(State::Pure(psi), parties)?;
    // The substituted a111 must route the all-minus condition to zero; a bad
    // substitution would silently corrupt everything downstream.
    let b = behavior_from_realization(&r)?;
    let report = hardy_check(&b, T::of(1e-8));
    if !report.satisfied {
        return Err(CoreError::BadParams {
            reason: format!(
                "family construction violates a zero condition (residuals {:?})",
                report.zero_residuals.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect::<Vec<_>>()
            ),
        });
    }
    Ok(r)
}

/// Hardy probability of the family point, computable in closed form:
/// p = a000² / ‖a‖² after normalization.
pub fn family_hardy_probability<T: Scalar>(fp: &FamilyParams<T>) -> Result<T, CoreError> {
    let amps = fp.amplitudes()?;
    let nsq: T = amps.iter().map(|&a| a * a).sum();
    if nsq < T::of(1e-24) {
        return Err(CoreError::BadParams { reason: "zero-norm amplitude vector".into() });
    }
    Ok(fp.a000 * fp.a000 / nsq)
}

/// Two-qubit analogue of the family for the bipartite paradox.
#[derive(Clone, Copy, Debug)]
pub struct BipartiteParams<T> {
    pub alphas: [T; 2],
}

impl<T: Scalar> BipartiteParams<T> {
    fn validate(&self) -> Result<(), CoreError> {
        for (i, &al) in self.alphas.iter().enumerate() {
            let a = al.to_f64().unwrap_or(f64::NAN);
            if !(a > POLE_MARGIN && a < 2.0 * std::f64::consts::PI - POLE_MARGIN)
                || (a - std::f64::consts::PI).abs() < POLE_MARGIN
            {
                return Err(CoreError::BadParams {
                    reason: format!("alpha_{} = {a} too close to a tan/cot pole", i + 1),
                });
            }
        }
        Ok(())
    }

    /// Amplitudes (a00, a01, a10, a11) pre-normalization with a00 = 1; the
    /// three zero conditions fix the rest.
    pub fn amplitudes(&self) -> Result<[T; 4], CoreError> {
        self.validate()?;
        let half = T::of(0.5);
        let t1 = (self.alphas[0] * half).tan();
        let t2 = (self.alphas[1] * half).tan();
        let a00 = T::one();
        let a10 = -t1.recip() * a00;
        let a01 = -t2.recip() * a00;
        let a11 = -a00 * t1 * t2 + a01 * t1 + a10 * t2;
        Ok([a00, a01, a10, a11])
    }

    pub fn hardy_probability(&self) -> Result<T, CoreError> {
        let a = self.amplitudes()?;
        let nsq: T = a.iter().map(|&x| x * x).sum();
        Ok(a[0] * a[0] / nsq)
    }

    pub fn realization(&self) -> Result<Realization<T>, CoreError> {
        let a = self.amplitudes()?;
        let norm: T = a.iter().map(|&x| x * x).sum::<T>().sqrt();
        let psi: Vec<C<T>> = a.iter().map(|&x| C::new(x / norm, T::zero())).collect();
        let parties = (0..2)
            .map(|i| {
                Ok([
                    Observable::new(pauli_z())?,
                    Observable::new(family_second_observable(self.alphas[i]))?,
                ])
            })
            .collect::<Result<Vec<_>, CoreError>>()?;
        Realization::new(State::Pure(psi), parties)
    }
}

/// Result of a multi-start Hardy maximization.
#[derive(Clone, Debug)]
pub struct MaximizeResult<T: Scalar> {
    pub parties: usize,
    pub p: T,
    /// Flattened parameter vector of the best restart (angles then free
    /// amplitudes for N = 3; angles for N = 2).
    pub params: Vec<T>,
    /// Zero-condition residuals of the winning realization's behavior.
    pub residuals: Vec<T>,
    pub best_restart: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl<T: Scalar> MaximizeResult<T> {
    pub fn realization(&self) -> Result<Realization<T>, CoreError> {
        match self.parties {
            2 => BipartiteParams { alphas: [self.params[0], self.params[1]] }.realization(),
            3 => family_state(&FamilyParams {
                alphas: [self.params[0], self.params[1], self.params[2]],
                a000: self.params[3],
                a011: self.params[4],
                a101: self.params[5],
                a110: self.params[6],
            }),
            n => Err(CoreError::BadParams { reason: format!("unsupported party count {n}") }),
        }
    }
}

const ANGLE_LO: f64 = 1e-3;
const ANGLE_HI: f64 = 2.0 * std::f64::consts::PI - 1e-3;
const PI_GUARD: f64 = 1e-3;

fn objective<T: Scalar>(parties: usize, x: &[T]) -> T {
    // negative Hardy probability with a soft wall outside the domain
    let bad = T::of(1.0);
    match parties {
        2 => {
            let p = BipartiteParams { alphas: [x[0], x[1]] };
            match p.hardy_probability() {
                Ok(v) => -v,
                Err(_) => bad,
            }
        }
        3 => {
            let fp = FamilyParams {
                alphas: [x[0], x[1], x[2]],
                a000: x[3],
                a011: x[4],
                a101: x[5],
                a110: x[6],
            };
            match family_hardy_probability(&fp) {
                Ok(v) => -v,
                Err(_) => bad,
            }
        }
        _ => bad,
    }
}

fn clamp_domain<T: Scalar>(parties: usize, k: usize, v: T) -> T {
    let n_angles = if parties == 2 { 2 } else { 3 };
    if k < n_angles {
        let f = v.to_f64().unwrap_or(0.0);
        let mut f = f.clamp(ANGLE_LO, ANGLE_HI);
        if (f - std::f64::consts::PI).abs() < PI_GUARD {
            f = if f < std::f64::consts::PI {
                std::f64::consts::PI - PI_GUARD
            } else {
                std::f64::consts::PI + PI_GUARD
            };
        }
        T::of(f)
    } else {
        v.max(-T::one()).min(T::one())
    }
}

/// Golden-section line search for the 1-D coordinate subproblem.
fn golden_min<T: Scalar>(mut f: impl FnMut(T) -> T, lo: T, hi: T, iters: usize) -> T {
    let phi = T::of(0.618_033_988_749_894_9);
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iters {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        x1
    } else {
        x2
    }
}

/// Cyclic coordinate descent with golden-section line searches, shrinking the
/// search bracket each sweep.
fn coordinate_descent<T: Scalar>(parties: usize, start: Vec<T>, sweeps: usize) -> (T, Vec<T>) {
    let n = start.len();
    let mut x = start;
    let mut fx = objective(parties, &x);
    let mut radius = T::of(1.5);
    for _ in 0..sweeps {
        for k in 0..n {
            let xk = x[k];
            let lo = clamp_domain(parties, k, xk - radius);
            let hi = clamp_domain(parties, k, xk + radius);
            let best = golden_min(
                |v| {
                    let mut y = x.clone();
                    y[k] = clamp_domain(parties, k, v);
                    objective(parties, &y)
                },
                lo,
                hi,
                40,
            );
            let cand = clamp_domain(parties, k, best);
            let mut y = x.clone();
            y[k] = cand;
            let fy = objective(parties, &y);
            if fy < fx {
                x = y;
                fx = fy;
            }
        }
        radius = radius * T::of(0.5);
        if radius < T::of(1e-10) {
            break;
        }
    }
    (-fx, x)
}

/// Multi-start maximization of p^H_N for N ∈ {2, 3}; deterministic given the
/// seed (restarts run in parallel and merge by best p with index tie-break).
pub fn maximize_hardy<T: Scalar>(
    parties: usize,
    restarts: usize,
    seed: u64,
) -> Result<MaximizeResult<T>, CoreError> {
    if parties != 2 && parties != 3 {
        return Err(CoreError::BadParams {
            reason: format!("parties must be 2 or 3, got {parties}"),
        });
    }
    let nparams = if parties == 2 { 2 } else { 7 };
    let n_angles = if parties == 2 { 2 } else { 3 };
    let restarts = restarts.max(1);

    let runs: Vec<(T, Vec<T>, usize)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
            let start: Vec<T> = (0..nparams)
                .map(|k| {
                    if k < n_angles {
                        T::of(rng.gen_range(0.05..2.0 * std::f64::consts::PI - 0.05))
                    } else {
                        T::of(rng.gen_range(-1.0..1.0))
                    }
                })
                .collect();
            let (p, x) = coordinate_descent(parties, start, 34);
            (p, x, r)
        })
        .collect();

    let (best_p, best_x, best_restart) = runs
        .into_iter()
        .reduce(|a, b| {
            if b.0 > a.0 || (b.0 == a.0 && b.2 < a.2) {
                b
            } else {
                a
            }
        })
        .expect("at least one restart");

    let result = MaximizeResult {
        parties,
        p: best_p,
        params: best_x,
        residuals: Vec::new(),
        best_restart,
        restarts,
        seed,
    };
    let realization = result.realization()?;
    let behavior = behavior_from_realization(&realization)?;
    let report = hardy_check(&behavior, T::of(DEFAULT_EPS_ZERO));
    Ok(MaximizeResult { residuals: report.zero_residuals, ..result })
}

/// Content of one direct-sum block of a block state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockContent {
    /// (|even,even,even⟩ + |odd,odd,odd⟩)/√2 within the block.
    Ghz,
    /// |even,even,even⟩ — a product state replacing the block.
    EvenProduct,
}

#[derive(Clone, Debug)]
pub struct Block<T> {
    pub weight: T,
    /// Block indices (l, m, n): party i's block spans {2·idx, 2·idx+1}.
    pub indices: [usize; 3],
    pub content: BlockContent,
}

/// A direct sum of weighted embedded blocks over even local dimensions.
#[derive(Clone, Debug)]
pub struct BlockState<T> {
    pub blocks: Vec<Block<T>>,
    pub local_dims: [usize; 3],
}

impl<T: Scalar> BlockState<T> {
    pub fn ghz_blocks(weights: &[T], local_dims: [usize; 3]) -> Result<Self, CoreError> {
        let blocks = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| Block { weight: w, indices: [i, i, i], content: BlockContent::Ghz })
            .collect();
        let bs = Self { blocks, local_dims };
        bs.validate()?;
        Ok(bs)
    }

    pub fn with_block_content(mut self, block: usize, content: BlockContent) -> Self {
        self.blocks[block].content = content;
        self
    }

    fn validate(&self) -> Result<(), CoreError> {
        for (p, &d) in self.local_dims.iter().enumerate() {
            if d % 2 != 0 || d == 0 || d > 8 {
                return Err(CoreError::BadParams {
                    reason: format!("local dim {d} of party {p} must be even and ≤ 8"),
                });
            }
        }
        let total: T = self.blocks.iter().map(|b| b.weight).sum();
        if (total - T::one()).abs() > T::of(1e-12) {
            return Err(CoreError::BadParams {
                reason: format!("block weights sum to {:?}", total.to_f64()),
            });
        }
        for b in &self.blocks {
            if b.weight < T::zero() {
                return Err(CoreError::BadParams { reason: "negative block weight".into() });
            }
            for (p, &idx) in b.indices.iter().enumerate() {
                if 2 * idx + 1 >= self.local_dims[p] {
                    return Err(CoreError::BadParams {
                        reason: format!("block index {idx} outside local dim of party {p}"),
                    });
                }
            }
        }
        Ok(())
    }

    /// The full state vector over the composite system space.
    pub fn state_vector(&self) -> Result<Vec<C<T>>, CoreError> {
        self.validate()?;
        let [d1, d2, d3] = self.local_dims;
        let total = d1 * d2 * d3;
        let mut v = vec![C::new(T::zero(), T::zero()); total];
        let idx = |i: usize, j: usize, k: usize| (i * d2 + j) * d3 + k;
        for b in &self.blocks {
            let w = b.weight.sqrt();
            let [l, m, n] = b.indices;
            match b.content {
                BlockContent::Ghz => {
                    let amp = C::new(w / T::of(2.0).sqrt(), T::zero());
                    v[idx(2 * l, 2 * m, 2 * n)] = v[idx(2 * l, 2 * m, 2 * n)] + amp;
                    v[idx(2 * l + 1, 2 * m + 1, 2 * n + 1)] =
                        v[idx(2 * l + 1, 2 * m + 1, 2 * n + 1)] + amp;
                }
                BlockContent::EvenProduct => {
                    let amp = C::new(w, T::zero());
                    v[idx(2 * l, 2 * m, 2 * n)] = v[idx(2 * l, 2 * m, 2 * n)] + amp;
                }
            }
        }
        Ok(v)
    }
}

/// Result of running the block isometry on a block state.
#[derive(Clone, Debug)]
pub struct BlockIsometryDemo<T: Scalar> {
    /// Amplitudes over the system (junk) register after extraction.
    pub junk: Vec<C<T>>,
    /// Reduced 8-dimensional state of the three extracted ancilla qubits.
    pub extracted: CMatrix<T>,
    /// Fidelity ⟨GHZ| extracted |GHZ⟩.
    pub fidelity: T,
}

/// Applies the per-party isometry |2t⟩ ↦ |2t⟩|0⟩, |2t+1⟩ ↦ |2t⟩|1⟩ with a
/// fresh ancilla qubit, then partial-traces the systems.
pub fn block_isometry_demo<T: Scalar>(bs: &BlockState<T>) -> Result<BlockIsometryDemo<T>, CoreError> {
    let chi = bs.state_vector()?;
    let [d1, d2, d3] = bs.local_dims;
    let big = d1 * d2 * d3 * 8;
    if big > MAX_VECTOR_DIM {
        return Err(CoreError::DimensionCap { dim: big, cap: MAX_VECTOR_DIM });
    }
    // interleaved dims (sys1, anc1, sys2, anc2, sys3, anc3)
    let dims = [d1, 2, d2, 2, d3, 2];
    let mut w = vec![C::new(T::zero(), T::zero()); big];
    let sidx = |i: usize, j: usize, k: usize| (i * d2 + j) * d3 + k;
    for i in 0..d1 {
        for j in 0..d2 {
            for k in 0..d3 {
                let amp = chi[sidx(i, j, k)];
                if amp.re == T::zero() && amp.im == T::zero() {
                    continue;
                }
                let (si, ai) = (i / 2 * 2, i % 2);
                let (sj, aj) = (j / 2 * 2, j % 2);
                let (sk, ak) = (k / 2 * 2, k % 2);
                let mut pos = 0usize;
                for (d, v) in dims.iter().zip([si, ai, sj, aj, sk, ak]) {
                    pos = pos * d + v;
                }
                w[pos] = w[pos] + amp;
            }
        }
    }
    // rho_anc[a, b] = Σ_sys w[sys, a] conj(w[sys, b]) over ancilla triples
    let mut extracted = CMatrix::zeros(8)?;
    for (pos, amp) in w.iter().enumerate() {
        if amp.re == T::zero() && amp.im == T::zero() {
            continue;
        }
        // decode interleaved index
        let mut rem = pos;
        let mut digits = [0usize; 6];
        for t in (0..6).rev() {
            digits[t] = rem % dims[t];
            rem /= dims[t];
        }
        let sys = sidx(digits[0], digits[2], digits[4]);
        let anc = (digits[1] * 2 + digits[3]) * 2 + digits[5];
        for (pos2, amp2) in w.iter().enumerate() {
            if amp2.re == T::zero() && amp2.im == T::zero() {
                continue;
            }
            let mut rem2 = pos2;
            let mut dg2 = [0usize; 6];
            for t in (0..6).rev() {
                dg2[t] = rem2 % dims[t];
                rem2 /= dims[t];
            }
            if sidx(dg2[0], dg2[2], dg2[4]) != sys {
                continue;
            }
            let anc2 = (dg2[1] * 2 + dg2[3]) * 2 + dg2[5];
            extracted[(anc, anc2)] = extracted[(anc, anc2)] + *amp * amp2.conj();
        }
    }
    // junk register: project the output onto ancilla |GHZ⟩ and renormalize;
    // for an exact block state this is the Σ √λ |even…⟩ superposition.
    let g = ghz::<T>();
    let mut proj = vec![C::new(T::zero(), T::zero()); d1 * d2 * d3];
    for (pos, amp) in w.iter().enumerate() {
        let mut rem = pos;
        let mut digits = [0usize; 6];
        for t in (0..6).rev() {
            digits[t] = rem % dims[t];
            rem /= dims[t];
        }
        let sys = sidx(digits[0], digits[2], digits[4]);
        let anc = (digits[1] * 2 + digits[3]) * 2 + digits[5];
        proj[sys] = proj[sys] + *amp * g[anc].conj();
    }
    let pn = vec_norm(&proj);
    let junk = if pn > T::of(1e-12) {
        proj.iter().map(|z| z.unscale(pn)).collect()
    } else {
        proj
    };
    let fid = {
        let gv = ghz::<T>();
        let mut acc = C::new(T::zero(), T::zero());
        for a in 0..8 {
            for b in 0..8 {
                acc = acc + gv[a].conj() * extracted[(a, b)] * gv[b];
            }
        }
        acc.re
    };
    Ok(BlockIsometryDemo { junk, extracted, fidelity: fid })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::complex_observable_pair;
    use crate::quantum::symmetric_qubit_realization;

    #[test]
    fn family_optimum_reproduces_the_uniform_sign_state() {
        let fp = FamilyParams::<f64>::optimal();
        let r = family_state(&fp).unwrap();
        let State::Pure(psi) = r.state() else { panic!("pure") };
        let s = 1.0 / (2.0 * 2.0f64.sqrt());
        // binary order: + for 000,001,010,100 and − for 011,101,110,111
        let expect = [s, s, s, -s, s, -s, -s, -s];
        for (a, e) in psi.iter().zip(expect) {
            assert!((a.re - e).abs() < 1e-12 && a.im.abs() < 1e-15);
        }
        // A¹ at α = 3π/2 is −σ_x
        let a1 = r.observable(0, 1).matrix();
        assert!((a1[(0, 1)].re + 1.0).abs() < 1e-12);
        let p = family_hardy_probability(&fp).unwrap();
        assert!((p - 0.125).abs() < 1e-12);
    }

    #[test]
    fn family_zero_conditions_hold_for_random_params() {
        use rand::prelude::*;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let fp = FamilyParams {
                alphas: [
                    rng.gen_range(0.2..std::f64::consts::PI - 0.2),
                    rng.gen_range(std::f64::consts::PI + 0.2..6.0),
                    rng.gen_range(0.2..6.0),
                ],
                a000: rng.gen_range(0.1..1.0),
                a011: rng.gen_range(-1.0..1.0),
                a101: rng.gen_range(-1.0..1.0),
                a110: rng.gen_range(-1.0..1.0),
            };
            let fp = FamilyParams {
                alphas: fp.alphas.map(|a| {
                    if (a - std::f64::consts::PI).abs() < 0.05 {
                        a + 0.1
                    } else {
                        a
                    }
                }),
                ..fp
            };
            let Ok(r) = family_state(&fp) else { continue };
            let b = behavior_from_realization(&r).unwrap();
            let report = hardy_check(&b, 1e-10);
            assert!(report.satisfied, "residuals {:?}", report.zero_residuals);
            // p equals the closed form
            let p = family_hardy_probability(&fp).unwrap();
            assert!((report.p - p).abs() < 1e-12);
        }
    }

    #[test]
    fn quarter_pi_point_has_amplitude_half() {
        // α = π/2 with only a000 free: cot(π/4) = 1, four equal-magnitude terms
        let fp = FamilyParams {
            alphas: [std::f64::consts::FRAC_PI_2; 3],
            a000: 0.7,
            a011: 0.0,
            a101: 0.0,
            a110: 0.0,
        };
        let amps = fp.amplitudes().unwrap();
        // t = c = 1 at α = π/2: a111 = 4·a000, pre-norm vector (1,−1,−1,0,−1,0,0,4)·a000
        assert!((amps[7] - 4.0 * 0.7).abs() < 1e-12);
        let r = family_state(&fp).unwrap();
        let State::Pure(psi) = r.state() else { panic!() };
        assert!((psi[0].re - 1.0 / 20f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn ideal_behavior_checks_hardy_at_one_eighth() {
        let (a0, a1) = complex_observable_pair::<f64>();
        let r = symmetric_qubit_realization(ghz(), a0, a1).unwrap();
        let b = behavior_from_realization(&r).unwrap();
        let report = hardy_check(&b, 1e-12);
        assert!(report.satisfied);
        assert!((report.p - 0.125).abs() < 1e-12);
    }

    #[test]
    fn uniform_and_deterministic_behaviors_fail_conditions() {
        let uniform =
            Behavior::from_table(3, vec![vec![0.125f64; 8]; 8]).unwrap();
        let rep = hardy_check(&uniform, 1e-9);
        assert!((rep.p - 0.125).abs() < 1e-15);
        assert!(!rep.satisfied);
        assert!(rep.zero_residuals.iter().all(|&r| (r - 0.125).abs() < 1e-15));

        let mut table = vec![vec![0.0f64; 8]; 8];
        for x in 0..8 {
            table[x][0] = 1.0; // always all-+1
        }
        let det = Behavior::from_table(3, table).unwrap();
        let rep = hardy_check(&det, 1e-9);
        assert!((rep.p - 1.0).abs() < 1e-15);
        assert!(!rep.satisfied);
        assert!((rep.zero_residuals[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn single_ghz_block_extracts_perfectly() {
        let bs = BlockState::ghz_blocks(&[1.0f64], [2, 2, 2]).unwrap();
        let demo = block_isometry_demo(&bs).unwrap();
        assert!((demo.fidelity - 1.0).abs() < 1e-12);
        assert!((demo.junk[0].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_blocks_extract_with_junk_superposition() {
        let bs = BlockState::ghz_blocks(&[0.3f64, 0.7], [4, 4, 4]).unwrap();
        let demo = block_isometry_demo(&bs).unwrap();
        assert!((demo.fidelity - 1.0).abs() < 1e-12);
        // junk = √0.3 |0,0,0⟩ + √0.7 |2,2,2⟩
        let i000 = 0;
        let i222 = (2 * 4 + 2) * 4 + 2;
        assert!((demo.junk[i000].re - 0.3f64.sqrt()).abs() < 1e-12);
        assert!((demo.junk[i222].re - 0.7f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn perturbed_block_loses_fidelity_by_half_its_weight() {
        let bs = BlockState::ghz_blocks(&[0.3f64, 0.7], [4, 4, 4])
            .unwrap()
            .with_block_content(0, BlockContent::EvenProduct);
        let demo = block_isometry_demo(&bs).unwrap();
        // exact overlap: 1 − λ/2 with λ = 0.3
        assert!((demo.fidelity - (1.0 - 0.15)).abs() < 1e-12, "F = {}", demo.fidelity);
        assert!(demo.fidelity < 1.0 - 1e-6);
    }

    #[test]
    fn odd_local_dimension_rejected() {
        let bs = BlockState {
            blocks: vec![Block { weight: 1.0f64, indices: [0, 0, 0], content: BlockContent::Ghz }],
            local_dims: [3, 2, 2],
        };
        assert!(block_isometry_demo(&bs).is_err());
    }
}
