//! Reduce a configuration to the information STRIP conditions on, then
//! draw a fresh configuration consistent with it.

use kflab::randgraph::{rw_extract, sample_configuration, sample_from_rw, VertexClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let degrees = vec![3, 3, 3, 2, 2, 3];
    let classes = vec![VertexClass::W0, VertexClass::W0, VertexClass::W0, VertexClass::W1, VertexClass::W1, VertexClass::R];
    let cfg = sample_configuration(&degrees, 11)?;
    let info = rw_extract(&cfg, &classes)?;
    println!("{info:#?}");

    for seed in 0..3 {
        let fresh = sample_from_rw(&info, seed)?;
        assert_eq!(rw_extract(&fresh, &classes)?, info);
        println!("resample {seed}: {:?}", fresh.pairs());
    }
    Ok(())
}
