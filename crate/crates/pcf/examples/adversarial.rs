//! Block-structured adversarial instances: unions of small gadgets whose
//! initial matchings form many size-two components, plus cross-block noise.
//! Stresses the improvement loop harder than uniform random sampling.

use pcf::ratio::Ratio;
use pcf::{instances, oracle, solvers};

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn main() {
    let mut max_iterations = 0usize;
    let mut checked = 0u64;
    for t in 0..6000u64 {
        let mut s = t;
        let blocks = 1 + (splitmix(&mut s) % 3) as usize;
        let k = 2 + (splitmix(&mut s) % 3) as usize;
        let mut triples: Vec<(usize, usize, usize)> = Vec::new();
        let mut base = 0usize;
        for _ in 0..blocks {
            let bn = 2 + (splitmix(&mut s) % 3) as usize; // block of 2..4 vertices
            // Pair edges in several colors to seed size-two components.
            for c in 1..=k {
                if splitmix(&mut s) % 2 == 0 && bn >= 2 {
                    triples.push((base + 1, base + 2, c));
                }
            }
            // Random intra-block edges.
            for _ in 0..(splitmix(&mut s) % 5) {
                let u = base + 1 + (splitmix(&mut s) % bn as u64) as usize;
                let v = base + 1 + (splitmix(&mut s) % bn as u64) as usize;
                let c = 1 + (splitmix(&mut s) % k as u64) as usize;
                if u != v && !triples.contains(&(u.min(v), u.max(v), c)) {
                    triples.push((u.min(v), u.max(v), c));
                }
            }
            base += bn;
        }
        let n = base.max(2);
        // Cross-block noise edges.
        for _ in 0..(splitmix(&mut s) % 6) {
            let u = 1 + (splitmix(&mut s) % n as u64) as usize;
            let v = 1 + (splitmix(&mut s) % n as u64) as usize;
            let c = 1 + (splitmix(&mut s) % k as u64) as usize;
            if u != v && !triples.contains(&(u.min(v), u.max(v), c)) {
                triples.push((u.min(v), u.max(v), c));
            }
        }
        if triples.len() > 25 {
            triples.truncate(25);
        }
        let Ok(g) = pcf::graph::ColoredMultigraph::new(n, k, false, &triples) else {
            continue;
        };
        let r = solvers::solve_general(&g).unwrap();
        let opt = oracle::brute_maxpf(&g, 25).unwrap().optimum;
        let target = if g.k() == 2 {
            Ratio::new(3, 5).unwrap()
        } else if g.k() == 3 {
            Ratio::new(4, 7).unwrap()
        } else {
            Ratio::new(5, 9).unwrap()
        };
        assert!(
            target.meets_floor(r.size, opt),
            "ratio failure on {}",
            g.to_instance_text()
        );
        max_iterations = max_iterations.max(r.iterations);
        checked += 1;
    }
    println!("adversarial blocks: {checked} ok, max improvement restarts {max_iterations}");

    // Parser robustness: mangled inputs must error, never panic.
    let mut bad = 0u64;
    for t in 0..20000u64 {
        let mut s = 0xF00D + t;
        let tokens = [
            "p", "pcf", "e", "1", "2", "3", "0", "multi", "simple", "-1", "x", "#", "c", "99",
            "\n",
        ];
        let len = (splitmix(&mut s) % 40) as usize;
        let mut text = String::new();
        for _ in 0..len {
            text.push_str(tokens[(splitmix(&mut s) % tokens.len() as u64) as usize]);
            text.push(if splitmix(&mut s) % 4 == 0 { '\n' } else { ' ' });
        }
        if pcf::graph::parse_instance(&text).is_err() {
            bad += 1;
        }
    }
    println!("parser fuzz: 20000 mangled inputs handled ({bad} rejected)");

    // Back-maps on random (often invalid) solution subsets: must return
    // Ok(feasible) or Err, never panic.
    let mut accepted = 0u64;
    for t in 0..3000u64 {
        let mut s = 0xBEEF + t;
        let src = instances::gen_random_uncolored(5, (splitmix(&mut s) % 9) as usize, t).unwrap();
        let red = instances::reduce_lf_to_pcf2(&src).unwrap();
        let m = red.target.m() as u64;
        let ids: Vec<usize> = (1..=m as usize)
            .filter(|_| splitmix(&mut s) % 3 == 0)
            .collect();
        let subset: pcf::graph::EdgeSubset = ids.into_iter().collect();
        if let Ok(back) = red.backward(&subset) {
            accepted += 1;
            let _ = back;
        }
    }
    println!("lf2pcf backward fuzz: 3000 subsets, {accepted} valid inputs mapped");
}
