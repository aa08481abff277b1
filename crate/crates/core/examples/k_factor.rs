//! Find a k-factor through the gadget reduction and a general matcher, then
//! check the certificate independently of how it was found.

use kflab::kfactor::{find_k_factor, verify_k_factor, FactorCertificate};
use kflab::Graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let petersen = Graph::from_edges(
        10,
        [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (6, 9), (6, 8), (5, 8)],
    )?;
    for k in 1..=3 {
        match find_k_factor(&petersen, k)? {
            Some(cert) => {
                assert!(verify_k_factor(&petersen, &cert.edges, k));
                println!("Petersen, k = {k}: {} edges", cert.edges.len());
            }
            None => println!("Petersen, k = {k}: none"),
        }
    }

    let cert = find_k_factor(&Graph::complete(5), 2)?.expect("K5 has a 2-factor");
    let json = cert.to_json();
    println!("{json}");
    assert_eq!(FactorCertificate::from_json(&json)?, cert);
    Ok(())
}
