//! Tutte's k-factor inequality on small graphs: a violated pair proves that
//! no k-factor exists.

use kflab::kfactor::{brute_force_tutte, tutte_check};
use kflab::Graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Two triangles sharing a vertex: every degree is even, yet there is no
    // 2-factor through the cut vertex.
    let bowtie = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])?;
    match brute_force_tutte(&bowtie, 2, true)? {
        Some(w) => println!("bowtie: violated at S = {:?}, T = {:?} ({} < {})", w.s, w.t, w.lhs, w.rhs),
        None => println!("bowtie: no violation"),
    }

    let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6)).map(|(u, v)| (u.min(v), u.max(v))))?;
    println!("C6, k = 2: {:?}", brute_force_tutte(&c6, 2, true)?);
    println!("C6, k = 1, S = {{0}}, T = {{}}: {:?}", tutte_check(&c6, 1, &[0], &[], false)?);
    Ok(())
}
