//! Uniform pairings on a degree sequence, their multigraphs, and rejection
//! down to simple graphs.

use kflab::randgraph::{project_multigraph, sample_configuration, sample_simple_with_degrees};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let degrees = vec![3, 3, 3, 3, 2, 2, 4, 4];
    let cfg = sample_configuration(&degrees, 7)?;
    println!("pairs: {:?}", cfg.pairs());

    let p = project_multigraph(&cfg);
    println!("projection: {} edges, {} loops, {} repeated edges dropped", p.graph.edges().len(), p.loops, p.multi_edges);

    let s = sample_simple_with_degrees(&degrees, 7, 10_000)?;
    let g = s.configuration.to_multigraph();
    println!("simple after {} attempts: {:?}", s.attempts, g.edges());

    // An odd degree sum has no pairing.
    assert!(sample_configuration(&[1, 2], 0).is_err());
    Ok(())
}
