//! Benchmark inputs shared by the criterion targets.

use rigiscope_core::constructions;
use rigiscope_core::Graph;

/// Named graphs of increasing size.
pub fn workloads() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = [7, 10, 14]
        .into_iter()
        .map(|k| (format!("ring_of_roofs_{k}"), constructions::ring_of_roofs(k).expect("k >= 3").graph))
        .collect();
    out.push(("double_banana".into(), constructions::double_banana().graph));
    out.push(("braced_double_ring".into(), constructions::braced_double_ring(7, 7).expect("braces exist").graph));
    out
}
