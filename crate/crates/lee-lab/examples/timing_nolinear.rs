use lee_lab::algebra::splitting::prove_no_linear;
use std::time::Instant;
fn main() {
    for n in 8..=9 {
        let t = Instant::now();
        let rep = prove_no_linear(n, 2, None).unwrap();
        println!("n={n} order={} verdict={:?} nodes={} groups={} in {:?}",
            rep.sphere_size, rep.verdict,
            rep.entries.iter().map(|e| e.nodes).sum::<u64>(),
            rep.entries.len(), t.elapsed());
    }
}
