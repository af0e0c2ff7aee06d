use super::*;
use crate::fixtures;
use crate::geom::{int, ratio, Location};

fn sample_directions(rtd: &Rtd) -> Vec<Direction> {
    let mut dirs: Vec<Direction> = Vec::new();
    for (a, b) in [(1, 0), (3, 1), (1, 2), (0, 1), (-2, 5), (-1, 0), (-4, -3), (0, -1), (7, -2), (1, 1), (-1, 1)] {
        dirs.push(Direction::from_ints(a, b).unwrap());
    }
    // every event direction and a direction strictly after it
    let mut evs: Vec<Direction> = rtd.events.iter().map(|e| e.direction.clone()).collect();
    evs.sort();
    evs.dedup();
    for (i, d) in evs.iter().enumerate() {
        dirs.push(d.clone());
        let nx = &evs[(i + 1) % evs.len()];
        let mid = Direction::new(crate::geom::Vector::new(&d.vec().x + &nx.vec().x, &d.vec().y + &nx.vec().y));
        if let Some(m) = mid {
            if evs.len() > 1 && crate::geom::strictly_between_ccw(d.vec(), m.vec(), nx.vec()) {
                dirs.push(m);
            }
        }
    }
    dirs
}

fn interior_samples(ws: &Workspace, k: usize) -> Vec<Point> {
    // a deterministic low-discrepancy grid with awkward denominators
    let (mut lo, mut hi) = ([f64::MAX; 2], [f64::MIN; 2]);
    for v in 0..ws.n() {
        let p = ws.vertex_f64(v);
        for i in 0..2 {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    let mut out = Vec::new();
    for i in 0..k {
        let fx = ((i as f64 + 0.5) * 0.618_033_988_7).fract();
        let fy = (i as f64 + 0.5) / k as f64;
        let p = Point::new(
            crate::geom::from_f64(lo[0] + fx * (hi[0] - lo[0])) + ratio(1, 7919),
            crate::geom::from_f64(lo[1] + fy * (hi[1] - lo[1])) + ratio(1, 104_729),
        );
        if ws.locate(&p) == Location::Interior {
            out.push(p);
        }
    }
    out
}

fn check_partition(ws: &Workspace) -> Rtd {
    let rtd = Rtd::build(ws).unwrap();
    let pts = interior_samples(ws, 60);
    let events: std::collections::BTreeSet<Direction> = rtd.events.iter().map(|e| e.direction.clone()).collect();
    for d in sample_directions(&rtd) {
        let traps: Vec<Trapezoid> =
            rtd.cells_at(&d).map(|c| rtd.cross_section(c.id, &d).unwrap()).collect();
        let total: Scalar = traps.iter().map(Trapezoid::area).fold(int(0), |a, b| a + b);
        assert_eq!(total, ws.area(), "area at {:?}", d.angle());
        // cells born at an event direction may start with zero width
        if !events.contains(&d) {
            for t in &traps {
                assert!(t.area() > int(0), "degenerate trapezoid at {}", d.angle());
            }
        }
        for p in &pts {
            assert!(traps.iter().any(|t| t.contains(p)), "{p} uncovered at {}", d.angle());
        }
    }
    rtd
}

#[test]
fn unit_square_partition() {
    let rtd = check_partition(&fixtures::unit_square());
    // the walls through two opposite corners cut the square into three
    // pieces; at an axis direction two of them have zero width
    let d = Direction::from_ints(1, 3).unwrap();
    assert_eq!(rtd.cells_at(&d).count(), 3);
    let d = Direction::from_ints(0, 1).unwrap();
    let areas: Vec<Scalar> = rtd.cells_at(&d).map(|c| rtd.cross_section(c.id, &d).unwrap().area()).collect();
    assert_eq!(areas.iter().filter(|a| **a > int(0)).count(), 1);
    assert_eq!(rtd.cells.len(), 24);
    assert_eq!(rtd.events.len(), 12);
}

#[test]
fn triangle_has_at_most_two_trapezoids() {
    let rtd = check_partition(&fixtures::triangle());
    let events: std::collections::BTreeSet<Direction> = rtd.events.iter().map(|e| e.direction.clone()).collect();
    for d in sample_directions(&rtd).into_iter().filter(|d| !events.contains(d)) {
        let k = rtd.cells_at(&d).count();
        assert!((1..=2).contains(&k), "{k} cells at {}", d.angle());
    }
}

#[test]
fn partitions_of_reference_workspaces() {
    for ws in [
        fixtures::square_with_hole(),
        fixtures::comb(),
        fixtures::simple_polygon(),
        fixtures::three_rooms(),
        fixtures::regular_polygon(8),
        fixtures::symmetric_polygon(6),
        fixtures::spiky_triangle(4),
    ] {
        check_partition(&ws);
    }
}

#[test]
fn events_account_for_every_cell_boundary() {
    for ws in [fixtures::square_with_hole(), fixtures::simple_polygon(), fixtures::comb()] {
        let rtd = Rtd::build(&ws).unwrap();
        let dirs: std::collections::BTreeSet<Direction> = rtd.events.iter().map(|e| e.direction.clone()).collect();
        for c in &rtd.cells {
            if c.begin != Direction::positive_x() {
                assert!(dirs.contains(&c.begin));
            }
            if let AngleEnd::Dir(e) = &c.end {
                assert!(dirs.contains(e));
                assert!(c.begin < *e);
            }
        }
        for e in &rtd.events {
            assert!(!e.pairs.is_empty());
            match e.kind {
                EventKind::Collinear => assert!(e.pairs.len() > 1),
                _ => assert_eq!(e.pairs.len(), 1),
            }
        }
        let created: usize = rtd.events.iter().filter(|e| e.direction != Direction::positive_x()).map(|e| e.created).sum();
        let later = rtd.cells.iter().filter(|c| c.begin != Direction::positive_x()).count();
        assert!(created >= later);
    }
}

#[test]
fn square_with_hole_event_kinds() {
    let rtd = Rtd::build(&fixtures::square_with_hole()).unwrap();
    assert!(rtd.events.iter().any(|e| e.kind == EventKind::TypeI));
    assert!(rtd.events.iter().any(|e| e.kind != EventKind::TypeI));
}

#[test]
fn cross_section_of_square() {
    let rtd = Rtd::build(&fixtures::unit_square()).unwrap();
    let d = Direction::from_ints(0, 1).unwrap();
    let (c, t) = rtd
        .cells_at(&d)
        .map(|c| (c, rtd.cross_section(c.id, &d).unwrap()))
        .find(|(_, t)| t.area() > int(0))
        .unwrap();
    assert_eq!(t.area(), int(1));
    let mut cs = t.corners.to_vec();
    cs.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
    assert_eq!(cs, vec![Point::from_ints(0, 0), Point::from_ints(0, 1), Point::from_ints(1, 0), Point::from_ints(1, 1)]);
    // u up: top-left is (0,1)
    assert_eq!(t.corners[0], Point::from_ints(0, 1));
    let off = Direction::from_ints(-1, 0).unwrap();
    if !c.closure_contains(&off) {
        assert_eq!(rtd.cross_section(c.id, &off), Err(Error::AngleOutsideCell));
    }
}

#[test]
fn opening_matches_ray_casting() {
    for ws in [fixtures::simple_polygon(), fixtures::square_with_hole(), fixtures::regular_polygon(7)] {
        let rtd = Rtd::build(&ws).unwrap();
        for c in &rtd.cells {
            let (a, b) = c.theta;
            for k in 1..6 {
                let th = a + (b - a) * k as f64 / 6.0;
                let (lo, hi) = c.x_range(th);
                for j in 1..4 {
                    let x = lo + (hi - lo) * j as f64 / 4.0;
                    let f = c.opening(th, x).unwrap();
                    let top = c.profile.ceiling_point(x);
                    let u = unit(th);
                    let mid = [top[0] - 0.5 * f * u[0], top[1] - 0.5 * f * u[1]];
                    let up = crate::geom::ray_cast_f64(&ws, mid, th).unwrap();
                    let down = crate::geom::ray_cast_f64(&ws, mid, th + std::f64::consts::PI).unwrap();
                    assert!((up + down - f).abs() < 1e-7 * (1.0 + f), "cell {} θ {th}: {} vs {f}", c.id, up + down);
                    assert!((up - 0.5 * f).abs() < 1e-7 * (1.0 + f));
                    match c.opening_inverse(th, f, crate::EPS).unwrap() {
                        Inverse::At(y) => assert!((y - x).abs() < 1e-6 * (1.0 + x.abs())),
                        Inverse::AllX => assert!(c.profile.parallel()),
                        Inverse::NoX => panic!("inverse lost x"),
                    }
                }
                let (lo, hi) = c.x_range(th);
                assert!((c.profile.opening(th, lo).min(c.profile.opening(th, hi)) - c.side_length(false, th).min(c.side_length(true, th))).abs() < 1e-7);
            }
        }
    }
}

#[test]
fn side_extrema_bound_dense_samples() {
    let ws = fixtures::simple_polygon();
    let rtd = Rtd::build(&ws).unwrap();
    for c in &rtd.cells {
        let (a, b) = c.theta;
        for k in 0..=200 {
            let th = a + (b - a) * k as f64 / 200.0;
            for (right, (mn, mx)) in [(false, (c.openings.left_min, c.openings.left_max)), (true, (c.openings.right_min, c.openings.right_max))] {
                let l = c.side_length(right, th);
                assert!(l >= mn - 1e-9 && l <= mx + 1e-9, "cell {} side {right}", c.id);
            }
        }
    }
}

#[test]
fn out_of_domain_arguments() {
    let rtd = Rtd::build(&fixtures::unit_square()).unwrap();
    let c = &rtd.cells[0];
    let th = 0.5 * (c.theta.0 + c.theta.1);
    let (_, hi) = c.x_range(th);
    assert_eq!(c.opening(th, hi + 1.0), Err(Error::OutOfDomain));
    let outside = c.theta.1 + 0.5;
    if outside < c.theta.0 + TAU - 0.5 {
        assert_eq!(c.opening(outside, 0.0), Err(Error::AngleOutsideCell));
    }
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn star_polygons_partition(s in proptest::collection::vec((0u32..1000, 4u32..40), 4..10)) {
            if let Some(ws) = fixtures::star_polygon(&s) {
                check_partition(&ws);
            }
        }
    }
}

#[test]
fn type_one_and_two_event_counts() {
    for ws in [
        fixtures::unit_square(),
        fixtures::square_with_hole(),
        fixtures::triangle(),
        fixtures::simple_polygon(),
        fixtures::comb(),
        fixtures::three_rooms(),
        fixtures::spiky_triangle(8),
    ] {
        let rtd = Rtd::build(&ws).unwrap();
        for e in &rtd.events {
            match e.kind {
                EventKind::TypeI => assert_eq!((e.terminated, e.created), (2, 2), "{e:?}"),
                EventKind::TypeII => assert_eq!((e.terminated, e.created), (3, 3), "{e:?}"),
                EventKind::Collinear => {}
            }
        }
        assert_eq!(rtd.events.iter().map(|e| e.pairs.len()).sum::<usize>(), 2 * rtd.visibility_pairs);
    }
}
