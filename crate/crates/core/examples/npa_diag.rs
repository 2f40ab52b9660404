use hardycert_core::npa::sdp::{self, SdpOptions};
use hardycert_core::npa::{robust_problem, RobustKind};

fn main() {
    let prob = robust_problem::<f64>(RobustKind::State, 0.005, 1e-4, 2).unwrap();
    let sol = sdp::solve(&prob.sdp, &SdpOptions::default());
    println!("status {:?} obj {:.9} dual {:.9} gap {:.3e} iters {}", sol.status, sol.objective, sol.dual_objective, sol.gap, sol.iterations);
    // recompute residuals
    let p = &prob.sdp;
    let m = p.num_vars;
    let n = p.psd_dim;
    // rd = c − A*(Z) + Gᵀz − Aᵀλ
    let mut rd: Vec<f64> = (0..m).map(|i| {
        let mut v = p.objective[i];
        for &(r, c2, co) in &p.psd_entries[i] {
            v -= co * sol.dual_psd[r * n + c2];
        }
        v
    }).collect();
    for (i, (row, _)) in p.ineq.iter().enumerate() {
        for &(j, co) in row {
            rd[j] += co * sol.dual_ineq[i];
        }
    }
    for (i, (row, _)) in p.eq.iter().enumerate() {
        for &(j, co) in row {
            rd[j] -= co * sol.dual_eq[i];
        }
    }
    let rd_inf = rd.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    // primal: re, rl
    let re: Vec<f64> = p.eq.iter().map(|(row, b)| row.iter().map(|&(j, co)| co * sol.y[j]).sum::<f64>() - b).collect();
    let rl: Vec<f64> = p.ineq.iter().map(|(row, h)| row.iter().map(|&(j, co)| co * sol.y[j]).sum::<f64>() - h).collect();
    println!("rd_inf {:.3e}  re {:?}  rl(viol) {:?}", rd_inf, re, rl.iter().map(|v| v.max(0.0)).collect::<Vec<_>>());
    println!("|z| max {:.3e} |lam| {:?}", sol.dual_ineq.iter().fold(0.0f64, |a,b| a.max(b.abs())), sol.dual_eq);
}
