//! Planted-scenario suites for the step procedures: force the probe families
//! into a chosen branch, run the procedure, and check its output contract.

use loosepath_core::{
    cycle_to_path, find_connector, find_omega, plant_red_cycle, random_coloring, Color, Connector,
    ConnectorKind, ConnectorOutcome, ConnectorRequest, Edge, ExtractionTrace, GoalEscape,
    LooseCycle, LoosePath, OmegaOutcome, TwoColoring, VertexWindow,
};

fn trace() -> ExtractionTrace {
    ExtractionTrace::default()
}

fn set(c: &mut TwoColoring, a: usize, b: usize, x: usize, col: Color) {
    c.set_color(Edge::new(a, b, x).unwrap(), col);
}

fn set_family(c: &mut TwoColoring, a: usize, b: usize, w: &[usize], col: Color) {
    for &x in w {
        set(c, a, b, x, col);
    }
}

// ---------------------------------------------------------------- cycle ---

#[test]
fn cycle_conversion_planted_sweep() {
    let mut runs = 0;
    for seed in 0..150u64 {
        let cycle_len = 3 + (seed % 4) as usize; // 3..=6
        let m = 3 + (seed % (cycle_len as u64 - 2)) as usize; // 3..=cycle_len
        let extra = (seed % 3) as usize;
        let total = 2 * cycle_len + m.div_ceil(2) + extra;
        let (mut c, cyc) = plant_red_cycle(total, cycle_len, seed, 1 << 62).unwrap();
        let free: Vec<usize> = (2 * cycle_len..total).collect();

        // Steer: force the first `blue_run` substitutes blue, then one red.
        let blue_run = (seed % (m as u64 + 1)) as usize;
        for i in 0..m.min(blue_run + 1) {
            let e = substitute_edge(&cyc, &free, i);
            c.set_color(e, if i < blue_run { Color::Blue } else { Color::Red });
        }
        let w = cycle_to_path(&c, &cyc, &free, m, &mut trace()).unwrap();
        match w.color {
            Color::Red => {
                assert!(blue_run < m);
                assert_eq!(w.path.len(), cycle_len);
            }
            Color::Blue => {
                assert!(blue_run >= m);
                assert_eq!(w.path.len(), m);
            }
        }
        for e in w.path.edges() {
            assert_eq!(c.color(e), w.color, "seed {seed}");
        }
        runs += 1;
    }
    assert_eq!(runs, 150);
}

/// Mirror of the substitute-edge layout used by the converter.
fn substitute_edge(cyc: &LooseCycle, free: &[usize], i: usize) -> Edge {
    let cv = cyc.vertices();
    let len = cv.len();
    if i == 0 {
        Edge::new(cv[1], cv[2], free[0]).unwrap()
    } else if i % 2 == 1 {
        Edge::new(cv[2 * i + 1], cv[(2 * i + 2) % len], free[(i - 1) / 2]).unwrap()
    } else {
        Edge::new(cv[2 * i], cv[2 * i + 1], free[i / 2]).unwrap()
    }
}

// ---------------------------------------------------------------- omega ---

struct OmegaPlant {
    c: TwoColoring,
    host: LoosePath,
    w3: [usize; 3],
}

/// Red host on 0..=10 inside 14 vertices; rest of the coloring seeded.
fn omega_base(seed: u64) -> OmegaPlant {
    let mut c = random_coloring(14, seed, 1 << 63).unwrap();
    let host = LoosePath::new((0..11).collect()).unwrap();
    for e in host.edges() {
        c.set_color(e, Color::Red);
    }
    let w3 = [11, 12, 13];
    OmegaPlant { c, host, w3 }
}

fn check_omega(plant: &OmegaPlant, window: VertexWindow, out: &OmegaOutcome) {
    let wv = window.vertices(&plant.host).unwrap();
    match out {
        OmegaOutcome::Config(cfg) => {
            assert_eq!(cfg.color, Color::Blue);
            assert_eq!(cfg.path.len(), 2);
            for e in cfg.path.edges() {
                assert_eq!(plant.c.color(e), Color::Blue);
            }
            for v in cfg.interior() {
                assert!(wv.contains(&v), "interior {v} outside window {wv:?}");
            }
            let (a, b) = cfg.ends();
            assert!(plant.w3.contains(&a) && plant.w3.contains(&b));
            assert!(!plant.host.contains(a) && !plant.host.contains(b));
        }
        OmegaOutcome::Escape(GoalEscape { color, path }) => {
            assert_eq!(*color, Color::Red);
            assert_eq!(path.len(), plant.host.len() + 1);
            for e in path.edges() {
                assert_eq!(plant.c.color(e), Color::Red);
            }
        }
    }
}

#[test]
fn omega_planted_sweep() {
    let mut configs = 0;
    let mut escapes = 0;
    for seed in 0..400u64 {
        let mut p = omega_base(seed);
        let start = (seed % 6) as usize; // 0..=5 all valid for an 11-vertex host
        let window = VertexWindow { start };
        let [x1, x2, x3] = p.w3;
        let wv = window.vertices(&p.host).unwrap();
        let [v1, v2, v3, v4, v5] = wv;

        // Steer a branch per seed.
        match seed % 8 {
            0 => {
                // Aligned both-blue / straddle open.
                set(&mut p.c, x1, v1, v2, Color::Blue);
                set(&mut p.c, v2, v3, x2, Color::Blue);
                set_family(&mut p.c, v2, v3, &p.w3, Color::Blue);
                set_family(&mut p.c, v3, v4, &p.w3, Color::Blue);
            }
            1 => {
                // Force the full split escape on aligned windows.
                set(&mut p.c, x1, v1, v2, Color::Red);
                set(&mut p.c, v2, v3, x2, Color::Red);
                set_family(&mut p.c, v2, v3, &p.w3, Color::Red);
                set_family(&mut p.c, v3, v4, &p.w3, Color::Blue);
                set_family(&mut p.c, v3, v5, &p.w3, Color::Blue);
                set_family(&mut p.c, v1, v3, &p.w3, Color::Blue);
            }
            2 => {
                set(&mut p.c, x1, v1, v2, Color::Blue);
                set(&mut p.c, v2, v3, x2, Color::Red);
                set(&mut p.c, x2, v1, v4, Color::Blue);
                set_family(&mut p.c, v2, v3, &p.w3, Color::Blue);
            }
            3 => {
                set(&mut p.c, x1, v1, v2, Color::Blue);
                set(&mut p.c, v2, v3, x2, Color::Red);
                set(&mut p.c, x2, v1, v4, Color::Red);
                set(&mut p.c, x3, v2, v5, Color::Red);
                set_family(&mut p.c, v2, v3, &p.w3, Color::Red);
                set_family(&mut p.c, v3, v4, &p.w3, Color::Blue);
                set_family(&mut p.c, v3, v5, &p.w3, Color::Blue);
            }
            4 => {
                set(&mut p.c, x1, v1, v2, Color::Red);
                set(&mut p.c, v2, v3, x2, Color::Blue);
                set(&mut p.c, v2, v4, x3, Color::Blue);
                set_family(&mut p.c, v3, v4, &p.w3, Color::Blue);
            }
            5 => {
                set(&mut p.c, x1, v1, v2, Color::Red);
                set(&mut p.c, v2, v3, x2, Color::Blue);
                set(&mut p.c, v2, v4, x3, Color::Red);
                set_family(&mut p.c, v2, v3, &[x1, x3], Color::Red);
                set_family(&mut p.c, v3, v4, &p.w3, Color::Red);
                set_family(&mut p.c, v3, v5, &p.w3, Color::Red);
                set_family(&mut p.c, v1, v3, &p.w3, Color::Red);
                set_family(&mut p.c, v2, v3, &[x2], Color::Blue);
            }
            6 => {
                // Straddle: low family red at one index, alternates blue.
                set_family(&mut p.c, v2, v3, &[x1], Color::Red);
                set_family(&mut p.c, v3, v4, &[x2, x3], Color::Blue);
                set_family(&mut p.c, v3, v5, &[x2, x3], Color::Blue);
            }
            _ => {
                // Straddle: low red, far probes red too -> escape.
                set_family(&mut p.c, v2, v3, &[x1], Color::Red);
                set_family(&mut p.c, v3, v4, &[x2, x3], Color::Red);
                set_family(&mut p.c, v3, v5, &[x2, x3], Color::Red);
            }
        }

        let out = find_omega(&p.c, &p.host, Color::Red, window, p.w3, &mut trace()).unwrap();
        check_omega(&p, window, &out);
        match out {
            OmegaOutcome::Config(_) => configs += 1,
            OmegaOutcome::Escape(_) => escapes += 1,
        }
    }
    assert!(configs > 100, "got {configs}");
    assert!(escapes > 50, "got {escapes}");
}

#[test]
fn omega_spec_shapes() {
    // Everything incident to the free triple blue: the first probed pair.
    let mut p = omega_base(0);
    for a in 0..11usize {
        for b in 0..11 {
            for &x in &p.w3 {
                if a < b {
                    set(&mut p.c, a, b, x, Color::Blue);
                }
            }
        }
    }
    let out =
        find_omega(&p.c, &p.host, Color::Red, VertexWindow { start: 2 }, p.w3, &mut trace())
            .unwrap();
    match out {
        OmegaOutcome::Config(cfg) => assert_eq!(cfg.path.vertices(), &[11, 2, 3, 4, 12]),
        _ => panic!("expected the immediate configuration"),
    }
}

// ------------------------------------------------------------ connector ---

struct ConnPlant {
    c: TwoColoring,
    host: LoosePath,
    w: Vec<usize>,
}

/// Blue host of four edges on 0..=8; `t` free vertices; seeded elsewhere.
fn conn_base(seed: u64, t: usize) -> ConnPlant {
    let total = 9 + t;
    let mut c = random_coloring(total, seed, 1 << 63).unwrap();
    let host = LoosePath::new((0..9).collect()).unwrap();
    for e in host.edges() {
        c.set_color(e, Color::Red);
    }
    for e in host.edges() {
        c.set_color(e, Color::Blue);
    }
    let w: Vec<usize> = (9..total).collect();
    ConnPlant { c, host, w }
}

fn v(p: usize) -> usize {
    p - 1 // segment vertex p of a host starting at vertex 0
}

/// Forces the four scan families red so case 1 applies, then perturbs.
fn plant_case1(p: &mut ConnPlant, sub: u64) {
    let w = p.w.clone();
    set_family(&mut p.c, v(1), v(2), &w, Color::Red);
    set_family(&mut p.c, v(2), v(3), &w, Color::Red);
    match sub {
        0 => {
            set_family(&mut p.c, v(3), v(4), &w, Color::Red);
            set_family(&mut p.c, v(4), v(5), &w, Color::Red);
        }
        1 => {
            // Subcase 2 with k = 1; keep the checked families red.
            set_family(&mut p.c, v(3), v(4), &w, Color::Red);
            set(&mut p.c, v(3), v(4), w[1], Color::Blue);
            set_family(&mut p.c, v(4), v(5), &w, Color::Red);
            set_family(&mut p.c, v(4), v(6), &w, Color::Red);
        }
        2 => {
            // Subcase 3 main: all far families red.
            set_family(&mut p.c, v(3), v(4), &w, Color::Red);
            set(&mut p.c, v(4), v(5), w[0], Color::Blue);
            set_family(&mut p.c, v(5), v(6), &w, Color::Red);
            set_family(&mut p.c, v(6), v(7), &w, Color::Red);
        }
        3 => {
            // Subcase 3, first split: {v5,v6,x_l} blue.
            set_family(&mut p.c, v(3), v(4), &w, Color::Red);
            set(&mut p.c, v(4), v(5), w[0], Color::Blue);
            set_family(&mut p.c, v(5), v(6), &w, Color::Red);
            set(&mut p.c, v(5), v(6), w[2], Color::Blue);
            set_family(&mut p.c, v(6), v(7), &w, Color::Red);
            set_family(&mut p.c, v(6), v(8), &w, Color::Red);
        }
        _ => {
            // Subcase 3, second split: {v6,v7,x_l} blue.
            set_family(&mut p.c, v(3), v(4), &w, Color::Red);
            set(&mut p.c, v(4), v(5), w[0], Color::Blue);
            set_family(&mut p.c, v(5), v(6), &w, Color::Red);
            set_family(&mut p.c, v(6), v(7), &w, Color::Red);
            set(&mut p.c, v(6), v(7), w[1], Color::Blue);
            for &a in &w.clone() {
                for &b in &w.clone() {
                    if a < b {
                        set(&mut p.c, v(5), a, b, Color::Red);
                    }
                }
            }
        }
    }
}

fn plant_case2(p: &mut ConnPlant, sub: u64) {
    let w = p.w.clone();
    set_family(&mut p.c, v(1), v(2), &w, Color::Red);
    set(&mut p.c, v(1), v(2), w[0], Color::Blue);
    // Checked head edges red.
    for &a in &w {
        for &b in &w {
            if a < b {
                set(&mut p.c, a, b, v(3), Color::Red);
            }
        }
    }
    set_family(&mut p.c, v(2), v(3), &w, Color::Red);
    set_family(&mut p.c, v(2), v(4), &w, Color::Red);
    match sub {
        0 => {
            set_family(&mut p.c, v(5), v(6), &w, Color::Red);
            set_family(&mut p.c, v(6), v(7), &w, Color::Red);
        }
        1 => {
            set_family(&mut p.c, v(5), v(6), &w, Color::Red);
            set(&mut p.c, v(5), v(6), w[1], Color::Blue);
            set_family(&mut p.c, v(6), v(7), &w, Color::Red);
            set_family(&mut p.c, v(6), v(8), &w, Color::Red);
        }
        _ => {
            set_family(&mut p.c, v(5), v(6), &w, Color::Red);
            set_family(&mut p.c, v(6), v(7), &w, Color::Red);
            set(&mut p.c, v(6), v(7), w[2], Color::Blue);
            set_family(&mut p.c, v(4), v(6), &w, Color::Red);
        }
    }
}

fn plant_case3(p: &mut ConnPlant, sub: u64) {
    let w = p.w.clone();
    set_family(&mut p.c, v(1), v(2), &w, Color::Red);
    set_family(&mut p.c, v(2), v(3), &w, Color::Red);
    set(&mut p.c, v(2), v(3), w[1], Color::Blue);
    for &a in &w {
        for &b in &w {
            if a < b {
                set(&mut p.c, a, b, v(1), Color::Red);
            }
        }
    }
    match sub {
        0 => {
            set_family(&mut p.c, v(3), v(4), &w, Color::Red);
            set_family(&mut p.c, v(4), v(5), &w, Color::Red);
        }
        1 => {
            set_family(&mut p.c, v(3), v(4), &w, Color::Red);
            set(&mut p.c, v(3), v(4), w[0], Color::Blue);
            set_family(&mut p.c, v(4), v(5), &w, Color::Red);
            set_family(&mut p.c, v(4), v(6), &w, Color::Red);
        }
        2 => {
            set_family(&mut p.c, v(3), v(4), &w, Color::Red);
            set(&mut p.c, v(4), v(5), w[2], Color::Blue);
            set_family(&mut p.c, v(2), v(4), &w, Color::Red);
            set_family(&mut p.c, v(5), v(6), &w, Color::Red);
            set_family(&mut p.c, v(6), v(7), &w, Color::Red);
        }
        3 => {
            set_family(&mut p.c, v(3), v(4), &w, Color::Red);
            set(&mut p.c, v(4), v(5), w[2], Color::Blue);
            set_family(&mut p.c, v(2), v(4), &w, Color::Red);
            set_family(&mut p.c, v(5), v(6), &w, Color::Red);
            set(&mut p.c, v(5), v(6), w[0], Color::Blue);
            set_family(&mut p.c, v(6), v(7), &w, Color::Red);
            set_family(&mut p.c, v(6), v(8), &w, Color::Red);
        }
        _ => {
            set_family(&mut p.c, v(3), v(4), &w, Color::Red);
            set(&mut p.c, v(4), v(5), w[2], Color::Blue);
            set_family(&mut p.c, v(5), v(6), &w, Color::Red);
            set_family(&mut p.c, v(6), v(7), &w, Color::Red);
            set(&mut p.c, v(6), v(7), w[3], Color::Blue);
            set_family(&mut p.c, v(4), v(6), &w, Color::Red);
        }
    }
}

fn check_connector(p: &ConnPlant, q: &Connector, required: Option<usize>, forbidden: Option<usize>) {
    for e in q.path.edges() {
        assert_eq!(p.c.color(e), Color::Red);
    }
    let (cap, barred) = match q.kind {
        ConnectorKind::P5 => {
            assert_eq!(q.path.len(), 5);
            assert_eq!(q.span, 4);
            (5, p.host.vertices()[2 * q.seg_start + 8])
        }
        ConnectorKind::P4 => {
            assert_eq!(q.path.len(), 4);
            assert_eq!(q.span, 3);
            (4, p.host.vertices()[2 * q.seg_start + 6])
        }
    };
    assert!(!q.path.contains(barred), "touches the barred segment vertex");
    let w_in_path = q.path.vertices().iter().filter(|x| p.w.contains(x)).count();
    assert!(w_in_path <= cap);
    assert_eq!(q.w_used.len(), w_in_path);
    assert!(p.w.contains(&q.end_a()) && p.w.contains(&q.end_b()));
    if let Some(r) = required {
        assert_eq!(q.path.first(), r);
    }
    if let Some(f) = forbidden {
        assert!(q.end_a() != f && q.end_b() != f);
    }
}

#[test]
fn connector_planted_sweep() {
    let mut connectors = 0;
    let mut escapes = 0;
    for seed in 0..600u64 {
        let t = 6 + (seed % 4) as usize; // 6..=9 free vertices
        let mut p = conn_base(seed, t);
        let case = seed % 3;
        let sub = (seed / 3) % 5;
        match case {
            0 => plant_case1(&mut p, sub),
            1 => plant_case2(&mut p, sub % 3),
            _ => plant_case3(&mut p, sub),
        }
        // Sometimes flip one checked edge blue to force an escape.
        let force_escape = seed % 7 == 0;
        if force_escape {
            let w = p.w.clone();
            match case {
                0 => set_family(&mut p.c, v(4), v(5), &w, Color::Blue),
                1 => set_family(&mut p.c, v(2), v(3), &w, Color::Blue),
                _ => set_family(&mut p.c, v(4), v(5), &w, Color::Blue),
            }
        }
        let required = if seed % 2 == 0 { Some(p.w[(seed % 5) as usize]) } else { None };
        let forbidden = match (required, seed % 3) {
            (Some(r), 0) => p.w.iter().copied().find(|&x| x != r),
            (None, 1) => Some(p.w[t - 1]),
            _ => None,
        };
        let req = ConnectorRequest {
            coloring: &p.c,
            host: &p.host,
            seg_start: 0,
            w: &p.w,
            required_end: required,
            forbidden_end: forbidden,
        };
        match find_connector(&req, &mut trace()).unwrap() {
            ConnectorOutcome::Connector(q) => {
                check_connector(&p, &q, required, forbidden);
                connectors += 1;
            }
            ConnectorOutcome::Escape(g) => {
                assert_eq!(g.color, Color::Blue);
                assert_eq!(g.path.len(), p.host.len() + 1);
                for e in g.path.edges() {
                    assert_eq!(p.c.color(e), Color::Blue);
                }
                escapes += 1;
            }
        }
    }
    assert!(connectors > 300, "got {connectors}");
    assert!(escapes > 50, "got {escapes}");
}

#[test]
fn connector_ladder_matches_worked_example() {
    // All four families red: the inner ladder on the first three edges.
    let mut p = conn_base(3, 7);
    plant_case1(&mut p, 0);
    let req = ConnectorRequest {
        coloring: &p.c,
        host: &p.host,
        seg_start: 0,
        w: &p.w,
        required_end: None,
        forbidden_end: None,
    };
    match find_connector(&req, &mut trace()).unwrap() {
        ConnectorOutcome::Connector(q) => {
            assert_eq!(q.kind, ConnectorKind::P4);
            assert_eq!(q.path.vertices(), &[9, 0, 1, 10, 2, 11, 3, 4, 12]);
        }
        ConnectorOutcome::Escape(_) => panic!("subcase 1 cannot escape"),
    }
}

#[test]
fn connector_detour_matches_worked_example() {
    // One blue edge toward v4 bends the ladder through v5 and v6.
    let mut p = conn_base(4, 7);
    plant_case1(&mut p, 1);
    let req = ConnectorRequest {
        coloring: &p.c,
        host: &p.host,
        seg_start: 0,
        w: &p.w,
        required_end: None,
        forbidden_end: None,
    };
    match find_connector(&req, &mut trace()).unwrap() {
        ConnectorOutcome::Connector(q) => {
            assert_eq!(q.kind, ConnectorKind::P4);
            // Slot 1 avoids the blue index k=1.
            assert_eq!(q.path.vertices(), &[9, 0, 1, 2, 11, 4, 3, 5, 12]);
        }
        ConnectorOutcome::Escape(_) => panic!("checked edges were planted red"),
    }
}

#[test]
fn connector_escape_when_checked_edge_blue() {
    // Subcase-2 shape but the checked ladder edge is blue: host grows.
    let mut p = conn_base(5, 7);
    plant_case1(&mut p, 1);
    set_family(&mut p.c, v(4), v(5), &p.w.clone(), Color::Blue);
    let req = ConnectorRequest {
        coloring: &p.c,
        host: &p.host,
        seg_start: 0,
        w: &p.w,
        required_end: None,
        forbidden_end: None,
    };
    match find_connector(&req, &mut trace()).unwrap() {
        ConnectorOutcome::Escape(g) => {
            assert_eq!(g.color, Color::Blue);
            assert_eq!(g.path.len(), 5);
        }
        ConnectorOutcome::Connector(_) => panic!("expected an escape"),
    }
}

#[test]
fn connector_honors_required_end_everywhere() {
    for seed in 0..120u64 {
        let t = 6 + (seed % 3) as usize;
        let mut p = conn_base(seed + 1000, t);
        match seed % 3 {
            0 => plant_case1(&mut p, seed % 5),
            1 => plant_case2(&mut p, seed % 3),
            _ => plant_case3(&mut p, seed % 5),
        }
        for pos in 0..t {
            let req = ConnectorRequest {
                coloring: &p.c,
                host: &p.host,
                seg_start: 0,
                w: &p.w,
                required_end: Some(p.w[pos]),
                forbidden_end: None,
            };
            if let ConnectorOutcome::Connector(q) = find_connector(&req, &mut trace()).unwrap() {
                assert_eq!(q.path.first(), p.w[pos], "seed {seed} pos {pos}");
            }
        }
    }
}
