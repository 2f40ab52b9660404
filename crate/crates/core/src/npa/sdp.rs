//! Dense primal-dual interior-point solver (HKM scaling, Mehrotra
//! predictor-corrector, infeasible start) for moment problems of the form
//!
//!   min c·y   s.t.   Γ(y) = Σᵢ yᵢ Eᵢ ⪰ 0,   G y ≤ h,   A y = b,
//!
//! with one dense PSD block plus small linear parts. Sized for matrices up to
//! ~150 and a few thousand scalar variables.

use crate::eig::{chol_solve, cholesky};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct SdpProblem<T> {
    pub num_vars: usize,
    /// min c·y
    pub objective: Vec<T>,
    pub psd_dim: usize,
    /// Per variable, the symmetric coefficient pattern of Γ: every (row, col,
    /// coeff) with row ≠ col must appear together with its mirrored entry.
    pub psd_entries: Vec<Vec<(usize, usize, T)>>,
    /// Sparse rows (indices, coeffs, rhs) of G y ≤ h.
    pub ineq: Vec<(Vec<(usize, T)>, T)>,
    /// Sparse rows of A y = b.
    pub eq: Vec<(Vec<(usize, T)>, T)>,
}

#[derive(Clone, Copy, Debug)]
pub struct SdpOptions<T> {
    pub max_iterations: usize,
    /// Complementarity-gap tolerance (absolute, scaled by problem size).
    pub gap_tol: T,
    /// Feasibility tolerance on residual infinity norms.
    pub feas_tol: T,
    /// Diagonal regularization added to near-singular Newton systems.
    pub regularization: T,
}

impl<T: Scalar> Default for SdpOptions<T> {
    fn default() -> Self {
        SdpOptions {
            max_iterations: 200,
            gap_tol: T::of(1e-6),
            feas_tol: T::of(1e-7),
            regularization: T::of(1e-10),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SdpStatus {
    Optimal,
    MaxIterations,
    /// Iterates diverged in a way consistent with primal infeasibility.
    Infeasible,
    NumericalFailure,
}

impl SdpStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SdpStatus::Optimal => "optimal",
            SdpStatus::MaxIterations => "maxiter",
            SdpStatus::Infeasible => "infeasible",
            SdpStatus::NumericalFailure => "numerical-failure",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SdpSolution<T> {
    pub status: SdpStatus,
    pub objective: T,
    pub dual_objective: T,
    /// Complementarity gap ⟨S,Z⟩ + sᵀz at termination.
    pub gap: T,
    pub iterations: usize,
    pub y: Vec<T>,
    /// Γ(y) row-major.
    pub gamma: Vec<T>,
    /// Dual certificate: PSD multiplier Z (row-major), inequality multipliers
    /// z ≥ 0, equality multipliers λ.
    pub dual_psd: Vec<T>,
    pub dual_ineq: Vec<T>,
    pub dual_eq: Vec<T>,
}

fn mat_mul<T: Scalar>(a: &[T], b: &[T], n: usize) -> Vec<T> {
    let mut out = vec![T::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == T::zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = out[i * n + j] + aik * b[k * n + j];
            }
        }
    }
    out
}

fn dot_mat<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(x, y)| *x * *y).sum()
}

fn inf_norm<T: Scalar>(v: &[T]) -> T {
    v.iter().map(|x| x.abs()).fold(T::zero(), T::max)
}

/// Largest step α ∈ (0, 1] with M + α ΔM ≻ 0 (bisection on Cholesky success).
fn psd_step<T: Scalar>(m: &[T], dm: &[T], n: usize) -> T {
    let try_step = |alpha: T| -> bool {
        let probe: Vec<T> =
            m.iter().zip(dm).map(|(a, d)| *a + alpha * *d).collect();
        cholesky(&probe, n).is_some()
    };
    if try_step(T::one()) {
        return T::one();
    }
    let (mut lo, mut hi) = (T::zero(), T::one());
    for _ in 0..40 {
        let mid = (lo + hi) * T::of(0.5);
        if try_step(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn lin_step<T: Scalar>(v: &[T], dv: &[T]) -> T {
    let mut alpha = T::one();
    for (x, d) in v.iter().zip(dv) {
        if *d < T::zero() {
            alpha = alpha.min(-*x / *d);
        }
    }
    alpha
}

struct Workspace<T> {
    c: Vec<T>,
    h: Vec<T>,
    b: Vec<T>,
}

impl<T: Scalar> SdpProblem<T> {
    fn assemble_gamma(&self, y: &[T]) -> Vec<T> {
        let n = self.psd_dim;
        let mut g = vec![T::zero(); n * n];
        for (i, entries) in self.psd_entries.iter().enumerate() {
            let yi = y[i];
            if yi == T::zero() {
                continue;
            }
            for &(r, c, co) in entries {
                g[r * n + c] = g[r * n + c] + yi * co;
            }
        }
        g
    }

    /// 𝒜ᵀ(X): per-variable Frobenius pairing with the PSD patterns.
    fn adjoint(&self, x: &[T]) -> Vec<T> {
        let n = self.psd_dim;
        self.psd_entries
            .iter()
            .map(|entries| {
                entries.iter().map(|&(r, c, co)| co * x[r * n + c]).sum()
            })
            .collect()
    }

    fn g_times<T2>(&self, y: &[T]) -> Vec<T> {
        let _ = std::marker::PhantomData::<T2>;
        self.ineq
            .iter()
            .map(|(row, _)| row.iter().map(|&(j, co)| co * y[j]).sum())
            .collect()
    }

    fn a_times(&self, y: &[T]) -> Vec<T> {
        self.eq
            .iter()
            .map(|(row, _)| row.iter().map(|&(j, co)| co * y[j]).sum())
            .collect()
    }
}

pub fn solve<T: Scalar>(p: &SdpProblem<T>, opts: &SdpOptions<T>) -> SdpSolution<T> {
    let n = p.psd_dim;
    let m = p.num_vars;
    let k = p.ineq.len();
    let e = p.eq.len();
    assert_eq!(p.objective.len(), m);
    assert_eq!(p.psd_entries.len(), m);

    let ws = Workspace {
        c: p.objective.clone(),
        h: p.ineq.iter().map(|(_, h)| *h).collect(),
        b: p.eq.iter().map(|(_, b)| *b).collect(),
    };
    let scale = T::one()
        .max(inf_norm(&ws.c))
        .max(inf_norm(&ws.h))
        .max(inf_norm(&ws.b));

    let mut y = vec![T::zero(); m];
    let mut lam = vec![T::zero(); e];
    let mut s_mat: Vec<T> = (0..n * n)
        .map(|i| if i % (n + 1) == 0 { scale } else { T::zero() })
        .collect();
    let mut z_mat = s_mat.clone();
    let mut s_lin = vec![scale; k];
    let mut z_lin = vec![scale; k];

    let mut status = SdpStatus::MaxIterations;
    let mut iterations = 0usize;
    let feasibility_mode = ws.c.iter().all(|c| *c == T::zero());
    let mut stall_count = 0usize;

    for iter in 0..opts.max_iterations {
        iterations = iter + 1;

        let gamma_y = p.assemble_gamma(&y);
        let rp: Vec<T> = gamma_y.iter().zip(&s_mat).map(|(g, s)| *g - *s).collect();
        let gy = p.g_times::<()>(&y);
        let rl: Vec<T> = (0..k).map(|i| ws.h[i] - gy[i] - s_lin[i]).collect();
        let ay = p.a_times(&y);
        let re: Vec<T> = (0..e).map(|i| ay[i] - ws.b[i]).collect();
        // rd = c − 𝒜ᵀZ + Gᵀz − Aᵀλ
        let at_z = p.adjoint(&z_mat);
        let mut rd: Vec<T> = (0..m).map(|i| ws.c[i] - at_z[i]).collect();
        for (i, (row, _)) in p.ineq.iter().enumerate() {
            for &(j, co) in row {
                rd[j] = rd[j] + co * z_lin[i];
            }
        }
        for (i, (row, _)) in p.eq.iter().enumerate() {
            for &(j, co) in row {
                rd[j] = rd[j] - co * lam[i];
            }
        }

        let gap = dot_mat(&s_mat, &z_mat) + s_lin.iter().zip(&z_lin).map(|(a, b)| *a * *b).sum();
        let obj: T = (0..m).map(|i| ws.c[i] * y[i]).sum();
        let dual_obj: T = {
            let lb: T = (0..e).map(|i| lam[i] * ws.b[i]).sum();
            let zh: T = (0..k).map(|i| z_lin[i] * ws.h[i]).sum();
            lb - zh
        };

        let primal_feas = inf_norm(&rp).max(inf_norm(&rl)).max(inf_norm(&re));
        let feas = primal_feas.max(inf_norm(&rd));
        if gap <= opts.gap_tol * (T::one() + obj.abs()) && feas <= opts.feas_tol * scale {
            status = SdpStatus::Optimal;
            return finish(p, status, obj, dual_obj, gap, iterations, y, s_mat, z_mat, z_lin, lam);
        }
        // With a constant objective any primal-feasible point is optimal.
        if feasibility_mode && primal_feas <= opts.feas_tol * scale {
            status = SdpStatus::Optimal;
            return finish(p, status, obj, dual_obj, gap, iterations, y, s_mat, z_mat, z_lin, lam);
        }
        if dual_obj.abs() > T::of(1e12) * scale || inf_norm(&y) > T::of(1e12) {
            status = SdpStatus::Infeasible;
            return finish(p, status, obj, dual_obj, gap, iterations, y, s_mat, z_mat, z_lin, lam);
        }

        // factor S; if it degraded, nudge it back to the cone
        let chol_s = match cholesky(&s_mat, n) {
            Some(l) => l,
            None => {
                status = SdpStatus::NumericalFailure;
                return finish(
                    p, status, obj, dual_obj, gap, iterations, y, s_mat, z_mat, z_lin, lam,
                );
            }
        };
        // S⁻¹ column by column
        let mut s_inv = vec![T::zero(); n * n];
        {
            let mut unit = vec![T::zero(); n];
            for j in 0..n {
                unit.iter_mut().for_each(|v| *v = T::zero());
                unit[j] = T::one();
                let col = chol_solve(&chol_s, n, &unit);
                for i in 0..n {
                    s_inv[i * n + j] = col[i];
                }
            }
        }

        // Schur complement H[i][j] = <E_i, S⁻¹ E_j Z>
        let mut big_h = vec![T::zero(); m * m];
        for i in 0..m {
            for j in 0..m {
                let mut acc = T::zero();
                for &(a, bb, ca) in &p.psd_entries[i] {
                    for &(r, ss, cb) in &p.psd_entries[j] {
                        acc = acc + ca * cb * s_inv[bb * n + r] * z_mat[ss * n + a];
                    }
                }
                big_h[i * m + j] = acc;
            }
        }
        // symmetrize and add the linear-block and regularization terms
        for i in 0..m {
            for j in (i + 1)..m {
                let avg = (big_h[i * m + j] + big_h[j * m + i]) * T::of(0.5);
                big_h[i * m + j] = avg;
                big_h[j * m + i] = avg;
            }
        }
        let d_lin: Vec<T> = (0..k).map(|i| z_lin[i] / s_lin[i]).collect();
        for (i, (row, _)) in p.ineq.iter().enumerate() {
            for &(j1, c1) in row {
                for &(j2, c2) in row {
                    big_h[j1 * m + j2] = big_h[j1 * m + j2] + c1 * c2 * d_lin[i];
                }
            }
        }
        let mut reg = opts.regularization;
        let chol_m = loop {
            let mut probe = big_h.clone();
            for i in 0..m {
                probe[i * m + i] = probe[i * m + i] + reg;
            }
            match cholesky(&probe, m) {
                Some(l) => break Some(l),
                None => {
                    reg = reg * T::of(100.0);
                    if reg > T::one() + inf_norm(&big_h) {
                        break None;
                    }
                }
            }
        };
        let Some(chol_m) = chol_m else {
            status = SdpStatus::NumericalFailure;
            return finish(p, status, obj, dual_obj, gap, iterations, y, s_mat, z_mat, z_lin, lam);
        };

        let mu = gap / T::of((n + k).max(1) as f64);

        // direction for a given centering target
        let sz = mat_mul(&s_mat, &z_mat, n);
        let newton = |rc_mat: &[T], rc_lin: &[T]| -> (Vec<T>, Vec<T>, Vec<T>, Vec<T>, Vec<T>, Vec<T>) {
            // rhs_y = −rd + 𝒜ᵀ(S⁻¹ Rc) − 𝒜ᵀ(S⁻¹ rp Z) − Gᵀ(rc/s) + Gᵀ((z∘rl)/s)
            let sinv_rc = mat_mul(&s_inv, rc_mat, n);
            let sinv_rp_z = mat_mul(&s_inv, &mat_mul(&rp, &z_mat, n), n);
            let t1 = p.adjoint(&sinv_rc);
            let t2 = p.adjoint(&sinv_rp_z);
            let mut rhs_y: Vec<T> = (0..m).map(|i| -rd[i] + t1[i] - t2[i]).collect();
            for (i, (row, _)) in p.ineq.iter().enumerate() {
                let w = rc_lin[i] / s_lin[i] - z_lin[i] * rl[i] / s_lin[i];
                for &(j, co) in row {
                    rhs_y[j] = rhs_y[j] - co * w;
                }
            }
            // KKT solve with equality block
            let t = chol_solve(&chol_m, m, &rhs_y);
            let dlam = if e > 0 {
                // W Δλ = −re − A t, W = A M⁻¹ Aᵀ
                let mut at_cols: Vec<Vec<T>> = Vec::with_capacity(e);
                for (row, _) in &p.eq {
                    let mut av = vec![T::zero(); m];
                    for &(j, co) in row {
                        av[j] = co;
                    }
                    at_cols.push(chol_solve(&chol_m, m, &av));
                }
                let mut w = vec![T::zero(); e * e];
                for i in 0..e {
                    for j in 0..e {
                        let mut acc = T::zero();
                        for &(jj, co) in &p.eq[i].0 {
                            acc = acc + co * at_cols[j][jj];
                        }
                        w[i * e + j] = acc;
                    }
                }
                for i in 0..e {
                    w[i * e + i] = w[i * e + i] + opts.regularization;
                }
                let mut rhs_l = vec![T::zero(); e];
                for i in 0..e {
                    let mut at_ = T::zero();
                    for &(jj, co) in &p.eq[i].0 {
                        at_ = at_ + co * t[jj];
                    }
                    rhs_l[i] = -re[i] - at_;
                }
                let lw = cholesky(&w, e)
                    .map(|l| chol_solve(&l, e, &rhs_l))
                    .unwrap_or_else(|| vec![T::zero(); e]);
                lw
            } else {
                Vec::new()
            };
            let mut dy = t;
            if e > 0 {
                let mut av = vec![T::zero(); m];
                for (i, (row, _)) in p.eq.iter().enumerate() {
                    for &(j, co) in row {
                        av[j] = av[j] + co * dlam[i];
                    }
                }
                let corr = chol_solve(&chol_m, m, &av);
                for j in 0..m {
                    dy[j] = dy[j] + corr[j];
                }
            }
            // back-substitution
            let gamma_dy = p.assemble_gamma(&dy);
            let ds_mat: Vec<T> = gamma_dy.iter().zip(&rp).map(|(g, r)| *g + *r).collect();
            // ΔZ = S⁻¹(Rc − ΔS Z), then symmetrize
            let ds_z = mat_mul(&ds_mat, &z_mat, n);
            let inner: Vec<T> = rc_mat.iter().zip(&ds_z).map(|(r, d)| *r - *d).collect();
            let mut dz_mat = mat_mul(&s_inv, &inner, n);
            for i in 0..n {
                for j in (i + 1)..n {
                    let avg = (dz_mat[i * n + j] + dz_mat[j * n + i]) * T::of(0.5);
                    dz_mat[i * n + j] = avg;
                    dz_mat[j * n + i] = avg;
                }
            }
            let gdy = p.g_times::<()>(&dy);
            let ds_lin: Vec<T> = (0..k).map(|i| rl[i] - gdy[i]).collect();
            let dz_lin: Vec<T> =
                (0..k).map(|i| (rc_lin[i] - z_lin[i] * ds_lin[i]) / s_lin[i]).collect();
            (dy, dlam, ds_mat, dz_mat, ds_lin, dz_lin)
        };

        // predictor (affine)
        let rc_aff: Vec<T> = sz.iter().map(|v| -*v).collect();
        let rc_lin_aff: Vec<T> = (0..k).map(|i| -s_lin[i] * z_lin[i]).collect();
        let (dy_a, _dl_a, ds_a, dz_a, dsl_a, dzl_a) = newton(&rc_aff, &rc_lin_aff);
        let ap = psd_step(&s_mat, &ds_a, n).min(lin_step(&s_lin, &dsl_a));
        let ad = psd_step(&z_mat, &dz_a, n).min(lin_step(&z_lin, &dzl_a));
        let _ = &dy_a;

        // Mehrotra centering parameter
        let gap_aff = {
            let s_new: Vec<T> =
                s_mat.iter().zip(&ds_a).map(|(v, d)| *v + ap * *d).collect();
            let z_new: Vec<T> =
                z_mat.iter().zip(&dz_a).map(|(v, d)| *v + ad * *d).collect();
            let lin: T = (0..k)
                .map(|i| (s_lin[i] + ap * dsl_a[i]) * (z_lin[i] + ad * dzl_a[i]))
                .sum();
            dot_mat(&s_new, &z_new) + lin
        };
        let sigma = {
            let ratio = (gap_aff / gap).max(T::zero()).min(T::one());
            (ratio * ratio * ratio).max(T::of(1e-8))
        };

        // corrector
        let tgt = sigma * mu;
        let ds_dz = mat_mul(&ds_a, &dz_a, n);
        let rc_mat: Vec<T> = (0..n * n)
            .map(|idx| {
                let diag = if idx % (n + 1) == 0 { tgt } else { T::zero() };
                diag - sz[idx] - ds_dz[idx]
            })
            .collect();
        let rc_lin: Vec<T> =
            (0..k).map(|i| tgt - s_lin[i] * z_lin[i] - dsl_a[i] * dzl_a[i]).collect();
        let (dy, dlam, ds_mat, dz_mat, ds_lin, dz_lin) = newton(&rc_mat, &rc_lin);

        let frac = T::of(0.99);
        let ap = (frac * psd_step(&s_mat, &ds_mat, n).min(lin_step(&s_lin, &ds_lin)))
            .min(T::one());
        let ad = (frac * psd_step(&z_mat, &dz_mat, n).min(lin_step(&z_lin, &dz_lin)))
            .min(T::one());

        // Slater-deficient instances (exact zero conditions) pin the iterate
        // to the cone boundary; bail out once steps collapse for good.
        if ap < T::of(1e-4) && ad < T::of(1e-4) {
            stall_count += 1;
            if stall_count >= 3 {
                break;
            }
        } else {
            stall_count = 0;
        }

        for j in 0..m {
            y[j] = y[j] + ap * dy[j];
        }
        for i in 0..e {
            lam[i] = lam[i] + ad * dlam[i];
        }
        for idx in 0..n * n {
            s_mat[idx] = s_mat[idx] + ap * ds_mat[idx];
            z_mat[idx] = z_mat[idx] + ad * dz_mat[idx];
        }
        for i in 0..k {
            s_lin[i] = s_lin[i] + ap * ds_lin[i];
            z_lin[i] = z_lin[i] + ad * dz_lin[i];
        }
    }

    let obj: T = (0..m).map(|i| ws.c[i] * y[i]).sum();
    let dual_obj: T = {
        let lb: T = (0..e).map(|i| lam[i] * ws.b[i]).sum();
        let zh: T = (0..k).map(|i| z_lin[i] * ws.h[i]).sum();
        lb - zh
    };
    let gap = dot_mat(&s_mat, &z_mat)
        + s_lin.iter().zip(&z_lin).map(|(a, b)| *a * *b).sum();
    finish(p, status, obj, dual_obj, gap, iterations, y, s_mat, z_mat, z_lin, lam)
}

#[allow(clippy::too_many_arguments)]
fn finish<T: Scalar>(
    p: &SdpProblem<T>,
    status: SdpStatus,
    objective: T,
    dual_objective: T,
    gap: T,
    iterations: usize,
    y: Vec<T>,
    _s: Vec<T>,
    z_mat: Vec<T>,
    z_lin: Vec<T>,
    lam: Vec<T>,
) -> SdpSolution<T> {
    let gamma = p.assemble_gamma(&y);
    SdpSolution {
        status,
        objective,
        dual_objective,
        gap,
        iterations,
        y,
        gamma,
        dual_psd: z_mat,
        dual_ineq: z_lin,
        dual_eq: lam,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(r: usize, c: usize) -> Vec<(usize, usize, f64)> {
        if r == c {
            vec![(r, c, 1.0)]
        } else {
            vec![(r, c, 1.0), (c, r, 1.0)]
        }
    }

    #[test]
    fn trace_minimization_on_2x2() {
        // variables (y11, y12, y22); min y11 + y22 s.t. y11 = 1, Γ ⪰ 0
        let p = SdpProblem::<f64> {
            num_vars: 3,
            objective: vec![1.0, 0.0, 1.0],
            psd_dim: 2,
            psd_entries: vec![entry(0, 0), entry(0, 1), entry(1, 1)],
            ineq: vec![],
            eq: vec![(vec![(0, 1.0)], 1.0)],
        };
        let sol = solve(&p, &SdpOptions::default());
        assert_eq!(sol.status, SdpStatus::Optimal);
        assert!((sol.objective - 1.0).abs() < 1e-5, "{}", sol.objective);
    }

    #[test]
    fn off_diagonal_forces_unit_diagonal() {
        // min t s.t. [[t, u],[u, t]] ⪰ 0, u = 1 → t = 1
        let p = SdpProblem::<f64> {
            num_vars: 2,
            objective: vec![1.0, 0.0],
            psd_dim: 2,
            psd_entries: vec![
                vec![(0, 0, 1.0), (1, 1, 1.0)],
                vec![(0, 1, 1.0), (1, 0, 1.0)],
            ],
            ineq: vec![],
            eq: vec![(vec![(1, 1.0)], 1.0)],
        };
        let sol = solve(&p, &SdpOptions::default());
        assert_eq!(sol.status, SdpStatus::Optimal);
        assert!((sol.objective - 1.0).abs() < 1e-5, "{}", sol.objective);
    }

    #[test]
    fn diagonal_sdp_agrees_with_simplex_on_lps() {
        use crate::geometry::simplex::{self, LpOutcome, LpProblem, Relation, Sense, VarBound};
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for trial in 0..8 {
            let nv = 4;
            let nc = 3;
            let c: Vec<f64> = (0..nv).map(|_| rng.gen_range(0.2..1.5)).collect();
            let rows: Vec<(Vec<f64>, Relation, f64)> = (0..nc)
                .map(|_| {
                    let r: Vec<f64> = (0..nv).map(|_| rng.gen_range(-1.0..1.0)).collect();
                    (r, Relation::Le, rng.gen_range(0.5..2.0))
                })
                .collect();
            // min c·y, y ≥ 0 encoded as a diagonal PSD block
            let lp = LpProblem {
                sense: Sense::Minimize,
                objective: c.clone(),
                rows: rows.clone(),
                bounds: vec![VarBound::NonNeg; nv],
            };
            let LpOutcome::Optimal(ls) = simplex::solve(&lp) else {
                panic!("lp not optimal")
            };
            let p = SdpProblem {
                num_vars: nv,
                objective: c,
                psd_dim: nv,
                psd_entries: (0..nv).map(|i| vec![(i, i, 1.0)]).collect(),
                ineq: rows
                    .iter()
                    .map(|(r, _, b)| {
                        (r.iter().enumerate().map(|(j, v)| (j, *v)).collect(), *b)
                    })
                    .collect(),
                eq: vec![],
            };
            let sol = solve(&p, &SdpOptions::default());
            assert_eq!(sol.status, SdpStatus::Optimal, "trial {trial}");
            assert!(
                (sol.objective - ls.value).abs() < 1e-5,
                "trial {trial}: sdp {} vs lp {}",
                sol.objective,
                ls.value
            );
        }
    }
}
