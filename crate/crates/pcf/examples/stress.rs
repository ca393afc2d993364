//! One-off randomized stress at sizes above the acceptance suite.

use pcf::graph::ColoredMultigraph;
use pcf::maxpt::PartitionOracle;
use pcf::ratio::Ratio;
use pcf::{instances, matroid, maxpt, oracle, solvers};
use std::collections::BTreeSet;

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn main() {
    let mut worst: (usize, usize) = (1, 1); // (size, opt) with max opt/size
    for t in 0..4000u64 {
        let mut s = t;
        let n = 2 + (splitmix(&mut s) % 9) as usize; // up to 10
        let k = 1 + (splitmix(&mut s) % 5) as usize;
        let simple = splitmix(&mut s).is_multiple_of(3);
        let cap_m = if simple {
            n * (n - 1) / 2
        } else {
            n * (n - 1) / 2 * k
        };
        let m = ((splitmix(&mut s) % 25) as usize).min(cap_m);
        let g = instances::gen_random(n, m, k, simple, splitmix(&mut s)).unwrap();
        let r = solvers::solve_general(&g).unwrap();
        let opt = oracle::brute_maxpf(&g, 25).unwrap().optimum;
        let target = if g.k() == 2 {
            Ratio::new(3, 5).unwrap()
        } else if g.k() == 3 || g.simple_flag() {
            Ratio::new(4, 7).unwrap()
        } else {
            Ratio::new(5, 9).unwrap()
        };
        assert!(
            target.meets_floor(r.size, opt),
            "ratio fail on {}",
            g.to_instance_text()
        );
        if r.size * worst.1 < worst.0 * opt {
            worst = (r.size, opt);
        }
        if simple {
            let rs = solvers::solve_union_matchings(&g).unwrap();
            if g.k() == 2 {
                assert!(
                    4 * rs.size >= 3 * opt,
                    "3/4 fail on {}",
                    g.to_instance_text()
                );
            }
            if g.k() == 3 {
                assert!(
                    8 * rs.size >= 5 * opt,
                    "5/8 fail on {}",
                    g.to_instance_text()
                );
            }
        }
        // Coverable set vs brute on the small ones.
        if g.m() <= 12 {
            let cert = matroid::max_coverable_set(&g);
            let u: BTreeSet<usize> = cert.u.iter().copied().collect();
            let restricted = oracle::brute_opt_restricted(&g, &u, 25).unwrap().optimum;
            assert_eq!(opt, restricted);
        }
    }
    println!(
        "general stress: 4000 ok; worst observed ratio {}/{}",
        worst.0, worst.1
    );

    for t in 0..1500u64 {
        let mut s = 0xAAAA + t;
        let n = 2 + (splitmix(&mut s) % 7) as usize; // up to 8
        let mut triples = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                match splitmix(&mut s) % 3 {
                    0 => triples.push((u, v, 1)),
                    1 => triples.push((u, v, 2)),
                    _ => {
                        triples.push((u, v, 1));
                        triples.push((u, v, 2));
                    }
                }
            }
        }
        let g = ColoredMultigraph::new(n, 2, false, &triples).unwrap();
        let r = solvers::solve_complete_2color(&g).unwrap();
        let opt = oracle::brute_maxpf(&g, 60).unwrap().optimum;
        assert_eq!(
            r.size,
            opt,
            "complete2 suboptimal on {}",
            g.to_instance_text()
        );
    }
    println!("complete2 stress: 1500 exact up to n=8");

    let eps = Ratio::new(2, 1).unwrap();
    let orc = maxpt::BruteForcePartitionOracle::default();
    for t in 0..300u64 {
        let mut s = 0xBBBB + t;
        let n = 5 + (splitmix(&mut s) % 5) as usize;
        let k = 1 + (splitmix(&mut s) % 4) as usize;
        let mut triples = Vec::new();
        let mut used = BTreeSet::new();
        for u in 1..=n {
            for v in u + 1..=n {
                let c = 1 + (splitmix(&mut s) % k as u64) as usize;
                triples.push((u, v, c));
                used.insert((u, v, c));
            }
        }
        for _ in 0..6 {
            let u = 1 + (splitmix(&mut s) % n as u64) as usize;
            let v = 1 + (splitmix(&mut s) % n as u64) as usize;
            let c = 1 + (splitmix(&mut s) % k as u64) as usize;
            if u != v && used.insert((u.min(v), u.max(v), c)) {
                triples.push((u.min(v), u.max(v), c));
            }
        }
        let g = ColoredMultigraph::new(n, k, false, &triples).unwrap();
        let (pruned, _) = maxpt::prune_parallel(&g);
        let part = orc.partition(&pruned).unwrap();
        let tree = maxpt::solve_maxpt_partition_branch(&pruned, &part).unwrap();
        let opt = oracle::brute_maxpt(&pruned, 300).unwrap().optimum;
        assert!(maxpt::meets_sqrt_guarantee(
            tree.len(),
            opt,
            pruned.n(),
            eps
        ));
    }
    println!("maxpt partition stress: 300 ok");
}
