use hardycert_core::npa::sdp::SdpOptions;
use hardycert_core::npa::{robust_fidelity, robust_measurement, RobustKind};
use std::time::Instant;

fn main() {
    let opts = SdpOptions::default();
    for (e1, e2) in [(0.0, 0.0), (0.001, 1e-4), (0.005, 1e-4), (0.02, 1e-3)] {
        let t = Instant::now();
        let r = robust_fidelity::<f64>(e1, e2, 2, &opts).unwrap();
        println!(
            "fid  l=2 eps=({e1},{e2}): value {:+.6} status {:?} gap {:.2e} iters {} [{:?}] dim {} vars {} extras {}",
            r.value, r.status, r.gap, r.iterations, t.elapsed(), r.matrix_dim, r.num_moment_vars, r.num_extra_words
        );
    }
    for (e1, e2) in [(0.0, 0.0), (0.005, 1e-4), (0.125, 1.0)] {
        let t = Instant::now();
        let r = robust_measurement::<f64>(e1, e2, 2, &opts).unwrap();
        println!(
            "meas l=2 eps=({e1},{e2}): value {:+.6} status {:?} gap {:.2e} iters {} [{:?}]",
            r.value, r.status, r.gap, r.iterations, t.elapsed()
        );
    }
    let t = Instant::now();
    let r = robust_fidelity::<f64>(0.005, 1e-4, 3, &opts).unwrap();
    println!(
        "fid  l=3 eps=(0.005,1e-4): value {:+.6} status {:?} gap {:.2e} iters {} [{:?}] dim {}",
        r.value, r.status, r.gap, r.iterations, t.elapsed(), r.matrix_dim
    );
    let _ = RobustKind::State;
}
