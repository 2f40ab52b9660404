use hardycert_core::hardy::maximize_hardy;
use std::time::Instant;

fn main() {
    for (n, expect) in [(3usize, 0.125), (2usize, (5.0 * 5f64.sqrt() - 11.0) / 2.0)] {
        let t = Instant::now();
        let r = maximize_hardy::<f64>(n, 32, 0).unwrap();
        println!(
            "N={n}: p = {:.12} (expect {:.12}, err {:.2e}) in {:?}, best restart {}",
            r.p, expect, (r.p - expect).abs(), t.elapsed(), r.best_restart
        );
        let r2 = maximize_hardy::<f64>(n, 32, 0).unwrap();
        println!("  determinism: {}", r.p == r2.p && r.params == r2.params);
    }
}
