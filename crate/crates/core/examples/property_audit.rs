//! Exact and sampled audits of the expansion properties P1-P6.

use kflab::kcore::k_core;
use kflab::kfactor::{audit_properties, PropertyAuditConfig};
use kflab::randgraph::gen_gnp;
use kflab::Graph;

fn main() {
    let small = Graph::complete(8);
    let r = audit_properties(&small, 3, &PropertyAuditConfig::default());
    println!("K8, exact = {}:", r.exact);
    for line in &r.properties {
        println!("  {:<4} checked {:>6} violations {:>6} holds {}", line.name, line.checked, line.violations, line.holds);
    }

    let core = k_core(&gen_gnp(3000, 6.0, 4), 3).core;
    let cfg = PropertyAuditConfig { sample_budget: 200, n_ref: Some(3000), ..PropertyAuditConfig::default() };
    let r = audit_properties(&core, 3, &cfg);
    println!("3-core of G(3000, 6/n), |K| = {}, exact = {}:", r.k_size, r.exact);
    for line in &r.properties {
        println!("  {:<4} checked {:>6} violations {:>6} worst margin {:?}", line.name, line.checked, line.violations, line.worst_margin);
    }
}
