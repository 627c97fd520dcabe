use std::time::Instant;
use su2_mintime::*;
use su2_mintime::su2::LieCoeffs;

fn main() {
    // adaptive build cost at a few (t, gamma)
    for (t, g) in [(0.5, 1.0), (1.4, 1.0), (2.8, 1.0), (5.0, 0.5), (9.0, 0.33)] {
        let t0 = Instant::now();
        let fl = Frontline::build_adaptive(t, g).unwrap();
        println!("build_adaptive(t={t}, g={g}): {} samples, flatness {:.1e}, {:?}",
            fl.samples.len(), fl.flatness.unwrap(), t0.elapsed());
    }
    // full solve costs
    let targets = [
        exp_lie(LieCoeffs::new(1.2, -0.7, 0.4)),
        exp_lie(LieCoeffs::new(-2.0, 1.4, 2.2)),
    ];
    for g in [0.3, 0.5, 1.0, 2.0] {
        let t0 = Instant::now();
        let mut tsum = 0.0;
        for x in &targets {
            tsum += min_time_drift(x, g).unwrap().t_star;
        }
        println!("min_time_drift x2 at gamma={g}: {:?} (tsum={tsum:.4})", t0.elapsed());
    }
    // contains (adaptive) cost
    let t0 = Instant::now();
    let mut n = 0;
    for k in 0..200 {
        let p = DiskPoint::new(0.4 * (k as f64 * 0.1).cos(), 0.4 * (k as f64 * 0.1).sin());
        if contains(p, 1.0 + 0.005 * k as f64, 0.8).unwrap() { n += 1; }
    }
    println!("200 adaptive contains: {:?} ({n} inside)", t0.elapsed());
}
