//! Preprocessing time and sizes for the bundled workspaces.
use std::time::Instant;

use localizer_core::{build_rtd, fixtures, visibility::build_visibility};

fn main() {
    for name in ["unit-square", "square-hole", "simple-polygon", "comb", "three-rooms", "regular-16", "spiky-16"] {
        let ws = fixtures::named(name).unwrap();
        let t = Instant::now();
        let vg = build_visibility(&ws);
        let t1 = t.elapsed();
        let rtd = build_rtd(&ws, &vg).unwrap();
        println!("{name}: n={} E={} cells={} visibility {:?} total {:?}", ws.n(), vg.edge_count(), rtd.cells.len(), t1, t.elapsed());
    }
}
