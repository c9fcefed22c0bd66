use std::time::Instant;

use albanese_core::albanese::run_pipeline;
use albanese_core::catalog;
use albanese_core::oracle::{run_oracle, DEFAULT_POINT_CAP};

#[test]
fn every_catalog_entry_agrees_with_enumeration() {
    for e in catalog::entries() {
        let start = Instant::now();
        let d = e.input().to_datum().unwrap();
        let report = run_pipeline(&d, false).unwrap();
        let v = run_oracle(&d, &report, None, DEFAULT_POINT_CAP).unwrap();
        println!(
            "{}: {} elements, fiber level {} ({} points, {} fibers), {:?}",
            e.name,
            v.elements.len(),
            v.fiber.level,
            v.fiber.points,
            v.fiber.fibers,
            start.elapsed()
        );
        for c in &v.elements {
            println!(
                "  {} level {} bound {} {:?} fixed {}",
                c.element, c.level, c.exhaustive_bound, c.mode, c.fixed_points
            );
        }
        assert!(v.passed, "{}: {:?}", e.name, v);
    }
}
