use eds_core::*;
use eds_core::graph::Graph;
use eds_core::reductions::gen_random_instance;
use eds_core::verify::verify_kernel;
use std::time::Instant;

fn main() {
    let caps = Caps::default();
    let e_graph = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]).unwrap();
    for (label, fam) in [
        ("p2", vec![Graph::path(2)]),
        ("k4", vec![Graph::complete(4)]),
        ("p5gen", vec![Graph::path(5)]),
        ("egraph", vec![e_graph]),
    ] {
        let member_max = fam.iter().map(|g| g.n()).max().unwrap();
        let mut checked = 0;
        let mut seed = 4000u64;
        let t0 = Instant::now();
        let mut worst = (0u64, 0u128);
        while checked < 50 {
            let x_size = 2 + (seed % 5) as usize;
            let max_c = ((22 - x_size) / member_max).max(1);
            let n_comp = 1 + (seed % max_c as u64) as usize;
            let inst = gen_random_instance(&fam, x_size, n_comp, 0.1 + (seed % 7) as f64 * 0.1, seed, &caps).unwrap();
            seed += 1;
            if inst.graph.n() > caps.oracle_cap { continue; }
            let t1 = Instant::now();
            let report = verify_kernel("x", &inst, true, &caps).unwrap();
            let dt = t1.elapsed().as_millis();
            if dt > worst.1 { worst = (seed - 1, dt); }
            assert!(report.pass);
            checked += 1;
        }
        println!("{label} equivalence: {:?} (worst seed {} at {} ms)", t0.elapsed(), worst.0, worst.1);
        let t0 = Instant::now();
        for i in 0..13u64 {
            let seed = 6000 + i;
            let x_size = 10 + (seed % 41) as usize;
            let n_comp = x_size + (seed % (2 * x_size) as u64) as usize;
            let inst = gen_random_instance(&fam, x_size, n_comp, 0.15, seed, &caps).unwrap();
            let t1 = Instant::now();
            let report = verify_kernel("x", &inst, true, &caps).unwrap();
            let dt = t1.elapsed().as_millis();
            if dt > 1000 { println!("  slow large seed {}: {} ms (x={} c={})", seed, dt, x_size, n_comp); }
            assert!(report.bounds.iter().all(|b| b.pass));
        }
        println!("{label} large: {:?}", t0.elapsed());
    }
}
