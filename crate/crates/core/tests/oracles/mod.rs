//! Independent reference implementations and the checks built on them.
//!
//! Every check returns `Ok(summary)` or `Err(reason)` so it can serve both as
//! an ordinary test and as one line of the acceptance report.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::time::Instant;

use absim_core::colav::{evaluate_candidates, run_sbmpc, ColavDecision, ObstacleState, SbmpcParams};
use absim_core::control::{
    mpc_cost, mpc_cost_and_gradient, mpc_solve, pid_step, ControlState, MpcParams, PidGains, PidState,
};
use absim_core::geometry::{wrap_pi, Point};
use absim_core::guidance::{compute_los_ref, LosParams, TrackState};
use absim_core::metrics::{cumulative_heading_error, cxte, nominal_distance};
use absim_core::model::{
    hull_nondimensional, rigid_body_accelerations, Forces, HullDerivatives, ShipParams, VesselState,
};
use absim_core::planner::{shortest_path, NavEdge, NavGraph, PlanError};
use absim_core::sim::presets;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<String, String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- hull ----

pub fn random_derivatives(r: &mut impl Rng) -> HullDerivatives {
    let mut c = || r.gen_range(-1.0..1.0);
    HullDerivatives {
        x_bb: c(),
        x_br: c(),
        x_rr: c(),
        x_bbbb: c(),
        y_b: c(),
        y_r: c(),
        y_bbb: c(),
        y_bbr: c(),
        y_brr: c(),
        y_rrr: c(),
        n_b: c(),
        n_r: c(),
        n_bbb: c(),
        n_bbr: c(),
        n_brr: c(),
        n_rrr: c(),
    }
}

/// Term-by-term hull polynomial written out independently of the library.
pub fn hull_reference(b: f64, r: f64, r0: f64, d: &HullDerivatives) -> [f64; 3] {
    let x_terms = [-r0 * b.cos() * b.cos(), d.x_bb * b * b, d.x_br * b * r, d.x_rr * r * r, d.x_bbbb * b * b * b * b];
    let y_terms =
        [d.y_b * b, d.y_r * r, d.y_bbb * b * b * b, d.y_bbr * b * b * r, d.y_brr * b * r * r, d.y_rrr * r * r * r];
    let n_terms =
        [d.n_b * b, d.n_r * r, d.n_bbb * b * b * b, d.n_bbr * b * b * r, d.n_brr * b * r * r, d.n_rrr * r * r * r];
    [x_terms.iter().sum(), y_terms.iter().sum(), n_terms.iter().sum()]
}

pub fn hull_origin_identity(trials: usize) -> Check {
    let mut r = rng(1);
    for i in 0..trials {
        let d = random_derivatives(&mut r);
        let r0 = r.gen_range(0.0..0.2);
        let (x, y, n) = hull_nondimensional(0.0, 0.0, r0, &d);
        ensure((x + r0).abs() <= 1e-12 && y.abs() <= 1e-12 && n.abs() <= 1e-12, || {
            format!("trial {i}: got ({x}, {y}, {n}) for R0' = {r0}")
        })?;
    }
    Ok(format!("{trials} random parameter sets"))
}

pub fn hull_term_oracle(trials: usize) -> Check {
    let mut r = rng(2);
    let mut worst: f64 = 0.0;
    for i in 0..trials {
        let d = random_derivatives(&mut r);
        let (b, rp, r0) = (r.gen_range(-1.0..1.0), r.gen_range(-2.0..2.0), r.gen_range(0.0..0.2));
        let got = hull_nondimensional(b, rp, r0, &d);
        let want = hull_reference(b, rp, r0, &d);
        for (g, w) in [got.0, got.1, got.2].iter().zip(want) {
            // relative to the magnitude of the individual terms
            let err = (g - w).abs() / w.abs().max(1.0);
            worst = worst.max(err);
            ensure(err <= 1e-12, || format!("trial {i}: {g} vs {w}"))?;
        }
    }
    Ok(format!("{trials} samples, worst relative error {worst:.1e}"))
}

// ------------------------------------------------------ rigid body -----

pub fn random_ship(r: &mut impl Rng) -> ShipParams {
    let m = r.gen_range(1e5..1e7);
    let length = r.gen_range(20.0..200.0);
    let i_z = m * (r.gen_range(0.15..0.35f64) * length).powi(2);
    let mut x_g = r.gen_range(-0.05..0.05) * length;
    if x_g == 0.0 {
        x_g = 0.5;
    }
    ShipParams {
        m,
        m_x: m * r.gen_range(0.0..0.3),
        m_y: m * r.gen_range(0.0..1.2),
        i_z,
        j_z: i_z * r.gen_range(0.0..1.0),
        x_g,
        length,
        draught: r.gen_range(1.0..10.0),
        rho: 1000.0,
        r0_prime: 0.02,
    }
}

pub fn back_substitution(trials: usize) -> Check {
    let mut r = rng(3);
    let mut worst: f64 = 0.0;
    for i in 0..trials {
        let p = random_ship(&mut r);
        let s = VesselState {
            u: r.gen_range(-6.0..6.0),
            v: r.gen_range(-2.0..2.0),
            r: r.gen_range(-0.2..0.2),
            ..Default::default()
        };
        let f = Forces { x: r.gen_range(-1e6..1e6), y: r.gen_range(-1e6..1e6), n: r.gen_range(-1e8..1e8) };
        let (du, dv, dr) = rigid_body_accelerations(f, &s, &p).map_err(|e| format!("trial {i}: {e}"))?;
        let (m, xg) = (p.m, p.x_g);
        let rows = [
            (f.x, [(p.m + p.m_x) * du, -(m + p.m_y) * s.v * s.r, -xg * m * s.r * s.r]),
            (f.y, [(m + p.m_y) * dv, -(m + p.m_x) * s.u * s.r, xg * m * dr]),
            (f.n, [(p.i_z + xg * xg * m + p.j_z) * dr, xg * m * dv, xg * m * s.u * s.r]),
        ];
        for (k, (rhs, terms)) in rows.iter().enumerate() {
            let lhs: f64 = terms.iter().sum();
            let scale = rhs.abs() + terms.iter().map(|t| t.abs()).sum::<f64>();
            let rel = (lhs - rhs).abs() / scale.max(f64::MIN_POSITIVE);
            worst = worst.max(rel);
            ensure(rel < 1e-9, || format!("trial {i}, row {k}: residual {rel:e}"))?;
        }
    }
    Ok(format!("{trials} states, worst relative residual {worst:.1e}"))
}

// ------------------------------------------------------ integrator -----

fn run_fixed_rudder(dt: f64, t_end: f64, delta: f64) -> Result<VesselState, String> {
    let model = presets::default_vessel();
    let mut s = VesselState { u: 3.0, ..Default::default() };
    let steps = (t_end / dt).round() as usize;
    for _ in 0..steps {
        s = model.step(&s, delta, 4.0, dt).map_err(|e| e.to_string())?;
    }
    Ok(s)
}

fn state_distance(a: &VesselState, b: &VesselState) -> f64 {
    let d = [a.x - b.x, a.y - b.y, wrap_pi(a.psi - b.psi), a.u - b.u, a.v - b.v, a.r - b.r];
    d.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Self-convergence of RK4 on a 60 s, 20° rudder-step manoeuvre.
pub fn rk4_order() -> Check {
    let start = Instant::now();
    let h = 2.0;
    let delta = 20f64.to_radians();
    let reference = run_fixed_rudder(h / 64.0, 60.0, delta)?;
    let e1 = state_distance(&run_fixed_rudder(h, 60.0, delta)?, &reference);
    let e2 = state_distance(&run_fixed_rudder(h / 2.0, 60.0, delta)?, &reference);
    let ratio = e1 / e2;
    let elapsed = start.elapsed().as_secs_f64();
    ensure((12.0..=20.0).contains(&ratio), || format!("error ratio {ratio:.2} (errors {e1:e}, {e2:e})"))?;
    ensure(elapsed < 5.0, || format!("took {elapsed:.2} s"))?;
    Ok(format!("error ratio {ratio:.2} in {elapsed:.2} s"))
}

/// Mirrored initial state and rudder commands through servo, forces and RK4.
pub fn mirror_symmetry() -> Check {
    let mut model = presets::default_vessel();
    model.ship.x_g = 2.5;
    let rudder = model.rudder;
    let mut r = rng(4);
    let mut a = VesselState { x: 10.0, y: 35.0, psi: 0.3, u: 2.8, v: 0.15, r: -0.01 };
    let mut b = VesselState { y: -a.y, psi: -a.psi, v: -a.v, r: -a.r, ..a };
    let (mut da, mut db) = (0.0, 0.0);
    let mut worst: f64 = 0.0;
    for k in 0..100 {
        let cmd = r.gen_range(-0.6..0.6);
        da = absim_core::actuators::rudder_servo(da, cmd, 0.5, &rudder);
        db = absim_core::actuators::rudder_servo(db, -cmd, 0.5, &rudder);
        a = model.step(&a, da, 4.0, 0.5).map_err(|e| e.to_string())?;
        b = model.step(&b, db, 4.0, 0.5).map_err(|e| e.to_string())?;
        let dev = (a.x - b.x).abs().max((a.y + b.y).abs());
        worst = worst.max(dev);
        ensure(dev <= 1e-9, || format!("step {k}: deviation {dev:e} m"))?;
        ensure((a.psi + b.psi).abs() <= 1e-12 && (a.u - b.u).abs() <= 1e-12 && (a.v + b.v).abs() <= 1e-12, || {
            format!("step {k}: velocity or heading not mirrored")
        })?;
    }
    Ok(format!("100 steps, worst position deviation {worst:.1e} m"))
}

// --------------------------------------------------------- planner -----

pub fn random_graph(r: &mut impl Rng) -> (NavGraph, usize, usize, f64) {
    let n = r.gen_range(2..=8);
    let nodes: Vec<Point> = (0..n).map(|_| Point::new(r.gen_range(0.0..100.0), r.gen_range(0.0..100.0))).collect();
    let p_edge = r.gen_range(0.2..0.8);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if r.gen_bool(p_edge) {
                // small integer lengths make equal-cost alternatives common
                let length = r.gen_range(1..=4) as f64;
                let (a, b) = if r.gen_bool(0.5) { (a, b) } else { (b, a) };
                edges.push(NavEdge {
                    a,
                    b,
                    length,
                    polyline: vec![nodes[a], nodes[b]],
                    depth: [1.0, 3.0, 5.0][r.gen_range(0..3)],
                    synthetic: false,
                    region: None,
                });
            }
        }
    }
    let g = NavGraph { node_depths: vec![5.0; n], node_regions: vec![BTreeSet::new(); n], nodes, edges };
    let from = r.gen_range(0..n);
    let to = r.gen_range(0..n);
    let min_depth = [0.0, 2.0, 4.0][r.gen_range(0..3)];
    (g, from, to, min_depth)
}

/// Enumerates every simple path; returns the cheapest cost and, among equal
/// costs, the node sequence that is smallest when read backwards.
pub fn brute_force_path(g: &NavGraph, from: usize, to: usize, min_depth: f64) -> Option<(f64, Vec<usize>)> {
    fn walk(
        g: &NavGraph,
        node: usize,
        to: usize,
        min_depth: f64,
        cost: f64,
        path: &mut Vec<usize>,
        best: &mut Option<(f64, Vec<usize>)>,
    ) {
        if node == to {
            let better = match best {
                None => true,
                Some((c, p)) => cost < *c || (cost == *c && path.iter().rev().lt(p.iter().rev())),
            };
            if better {
                *best = Some((cost, path.clone()));
            }
            return;
        }
        for e in &g.edges {
            if e.depth < min_depth || (e.a != node && e.b != node) {
                continue;
            }
            let next = if e.a == node { e.b } else { e.a };
            if path.contains(&next) {
                continue;
            }
            path.push(next);
            walk(g, next, to, min_depth, cost + e.length, path, best);
            path.pop();
        }
    }
    let mut best = None;
    walk(g, from, to, min_depth, 0.0, &mut vec![from], &mut best);
    best
}

pub fn planner_oracle(trials: usize) -> Check {
    let mut r = rng(5);
    let mut ties = 0;
    let mut unreachable = 0;
    for i in 0..trials {
        let (g, from, to, min_depth) = random_graph(&mut r);
        let oracle = brute_force_path(&g, from, to, min_depth);
        match (shortest_path(&g, from, to, min_depth), oracle) {
            (Ok(sp), Some((cost, nodes))) => {
                ensure(sp.cost == cost && sp.nodes == nodes, || {
                    format!("trial {i}: dijkstra {:?} ({}) vs oracle {nodes:?} ({cost})", sp.nodes, sp.cost)
                })?;
                let alternatives = count_optimal(&g, from, to, min_depth, cost);
                if alternatives > 1 {
                    ties += 1;
                }
            }
            (Err(PlanError::NoRoute { .. }), None) => unreachable += 1,
            (got, want) => return Err(format!("trial {i}: {got:?} vs oracle {want:?}")),
        }
    }
    Ok(format!("{trials} graphs ({ties} with equal-cost alternatives, {unreachable} unreachable)"))
}

fn count_optimal(g: &NavGraph, from: usize, to: usize, min_depth: f64, best: f64) -> usize {
    fn walk(g: &NavGraph, node: usize, to: usize, md: f64, cost: f64, best: f64, seen: &mut Vec<usize>) -> usize {
        if node == to {
            return usize::from(cost == best);
        }
        let mut n = 0;
        for e in g.edges.iter().filter(|e| e.depth >= md && (e.a == node || e.b == node)) {
            let next = e.other(node);
            if !seen.contains(&next) {
                seen.push(next);
                n += walk(g, next, to, md, cost + e.length, best, seen);
                seen.pop();
            }
        }
        n
    }
    walk(g, from, to, min_depth, 0.0, best, &mut vec![from])
}

// -------------------------------------------------------- geometry -----

/// Even-odd crossing-number test, boundary unspecified.
pub fn crossing_number(p: Point, rings: &[Vec<Point>]) -> bool {
    let mut inside = false;
    for ring in rings {
        for w in ring.windows(2) {
            let (a, b) = (w[0], w[1]);
            if (a.y > p.y) != (b.y > p.y) {
                let x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if p.x < x_cross {
                    inside = !inside;
                }
            }
        }
    }
    inside
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    let t = if len2 > 0.0 { (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0) } else { 0.0 };
    (p.x - a.x - t * dx).hypot(p.y - a.y - t * dy)
}

fn distance_to_rings(p: Point, rings: &[Vec<Point>]) -> f64 {
    rings.iter().flat_map(|ring| ring.windows(2)).map(|w| segment_distance(p, w[0], w[1])).fold(f64::INFINITY, f64::min)
}

/// Star-shaped (hence simple) ring around `c`, closed.
pub fn star_ring(r: &mut impl Rng, c: Point, r_min: f64, r_max: f64, ccw: bool) -> Vec<Point> {
    let n = r.gen_range(3..=12);
    let mut angles: Vec<f64> = (0..n).map(|_| r.gen_range(0.0..2.0 * PI)).collect();
    angles.sort_by(f64::total_cmp);
    angles.dedup();
    if !ccw {
        angles.reverse();
    }
    let mut ring: Vec<Point> = angles
        .iter()
        .map(|a| {
            let rad = r.gen_range(r_min..r_max);
            Point::new(c.x + rad * a.cos(), c.y + rad * a.sin())
        })
        .collect();
    ring.push(ring[0]);
    ring
}

pub fn pip_oracle(trials: usize) -> Check {
    let mut r = rng(6);
    let mut near_boundary = 0;
    let mut inside = 0;
    for i in 0..trials {
        let c = Point::new(r.gen_range(-50.0..50.0), r.gen_range(-50.0..50.0));
        let outer = r.gen_range(10.0..40.0);
        let ccw = r.gen_bool(0.5);
        let mut rings = vec![star_ring(&mut r, c, 0.5 * outer, outer, ccw)];
        if r.gen_bool(0.3) {
            // a hole well inside the smallest outer radius
            let hole_ccw = r.gen_bool(0.5);
            rings.push(star_ring(&mut r, c, 0.05 * outer, 0.2 * outer, hole_ccw));
        }
        let p = Point::new(c.x + r.gen_range(-1.1 * outer..1.1 * outer), c.y + r.gen_range(-1.1 * outer..1.1 * outer));
        if distance_to_rings(p, &rings) < 1e-6 {
            near_boundary += 1;
            continue;
        }
        let got = absim_core::geometry::point_in_polygon(p, &rings);
        let want = crossing_number(p, &rings);
        ensure(got == want, || format!("pair {i}: {p:?} library {got}, oracle {want}"))?;
        inside += usize::from(got);
    }
    let cases = boundary_cases()?;
    Ok(format!(
        "{trials} random pairs ({inside} inside, {near_boundary} skipped near the boundary), {cases} boundary cases"
    ))
}

type Rings = Vec<Vec<Point>>;

/// Points on edges and vertices count as inside.
pub fn boundary_cases() -> Result<usize, String> {
    let sq = vec![vec![
        Point::new(0.0, 0.0),
        Point::new(10.0, 0.0),
        Point::new(10.0, 10.0),
        Point::new(0.0, 10.0),
        Point::new(0.0, 0.0),
    ]];
    let tri = vec![vec![Point::new(0.0, 0.0), Point::new(4.0, 0.0), Point::new(0.0, 4.0), Point::new(0.0, 0.0)]];
    let cases: [(&Rings, (f64, f64), bool); 12] = [
        (&sq, (5.0, 5.0), true),
        (&sq, (10.0, 5.0), true),
        (&sq, (5.0, 0.0), true),
        (&sq, (0.0, 7.5), true),
        (&sq, (5.0, 10.0), true),
        (&sq, (0.0, 0.0), true),
        (&sq, (10.0, 10.0), true),
        (&sq, (10.000001, 5.0), false),
        (&sq, (-1e-6, 10.0), false),
        (&tri, (2.0, 2.0), true),
        (&tri, (1.0, 3.0), true),
        (&tri, (2.5, 2.5), false),
    ];
    for (rings, (x, y), want) in cases {
        let got = absim_core::geometry::point_in_polygon(Point::new(x, y), rings);
        ensure(got == want, || format!("boundary case ({x}, {y}): got {got}"))?;
    }
    Ok(cases.len())
}

// -------------------------------------------------------- guidance -----

pub fn los_params(d_los: f64) -> LosParams {
    LosParams { d_los, r_a: 10.0, pass_angle_threshold: PI / 2.0, nominal_speeds: vec![1.0] }
}

pub fn los_hand_values() -> Result<(), String> {
    let wps = [Point::new(0.0, 0.0), Point::new(100.0, 0.0)];
    let ts = TrackState { active_idx: 1 };
    let p = los_params(20.0);
    for (y, want) in [(10.0, -(0.5f64).atan()), (-10.0, (0.5f64).atan()), (0.0, 0.0)] {
        let s = VesselState { x: 50.0, y, ..Default::default() };
        let (chi, u) = compute_los_ref(&s, &wps, ts, &p);
        ensure((chi - want).abs() <= 1e-12, || format!("y = {y}: chi_d {chi}, expected {want}"))?;
        ensure(u == 1.0, || format!("speed {u}"))?;
    }
    Ok(())
}

/// Kinematic vessel steered exactly onto the LOS course; returns |e| per step.
pub fn los_kinematic_errors(e0: f64, d_los: f64, speed: f64, dt: f64, steps: usize) -> Vec<f64> {
    let wps = [Point::new(0.0, 0.0), Point::new(1e5, 0.0)];
    let ts = TrackState { active_idx: 1 };
    let mut p = los_params(d_los);
    p.nominal_speeds = vec![speed];
    let mut s = VesselState { y: e0, u: speed, ..Default::default() };
    let mut out = vec![s.y.abs()];
    for _ in 0..steps {
        let (chi, u) = compute_los_ref(&s, &wps, ts, &p);
        s.psi = chi;
        s.x += u * chi.cos() * dt;
        s.y += u * chi.sin() * dt;
        out.push(s.y.abs());
    }
    out
}

pub fn los_checks() -> Check {
    los_hand_values()?;
    let errs = los_kinematic_errors(50.0, 20.0, 1.0, 1.0, 500);
    ensure(errs.windows(2).all(|w| w[1] < w[0] || w[0] == 0.0), || "cross-track error not monotone".into())?;
    let below = errs.iter().position(|e| *e < 1.0);
    ensure(below.is_some(), || format!("final error {:.3} m", errs.last().unwrap()))?;
    Ok(format!("hand values exact; e from 50 m below 1 m after {} steps", below.unwrap()))
}

// ----------------------------------------------------------- PID -------

pub fn pid_checks() -> Check {
    let big = 10.0;
    let p = PidGains { kp: 2.0, ti_inv: 0.0, td: 0.0, integral_limit: None };
    let (d, _) = pid_step(0.1, 0.0, &p, &PidState::default(), big);
    ensure((d - 0.2).abs() <= 1e-12, || format!("proportional: {d}"))?;

    let pd = PidGains { kp: 1.5, ti_inv: 0.0, td: 4.0, integral_limit: None };
    let (d, _) = pid_step(0.7, 0.7, &pd, &PidState::default(), big);
    ensure(d == 0.0, || format!("zero error first step: {d}"))?;

    let pi = PidGains { kp: 1.0, ti_inv: 0.1, td: 0.0, integral_limit: None };
    let mut st = PidState::default();
    for want in [0.11, 0.12, 0.13] {
        let (d, next) = pid_step(0.1, 0.0, &pi, &st, big);
        ensure((d - want).abs() <= 1e-12, || format!("integral sequence: {d} vs {want}"))?;
        st = next;
    }

    // full PID over three steps with a changing error, iterated by hand:
    // e = 0.2, 0.15, 0.05; Σe = 0.2, 0.35, 0.4; Δe = 0.2, −0.05, −0.1
    let full = PidGains { kp: 0.5, ti_inv: 0.2, td: 2.0, integral_limit: None };
    let mut st = PidState::default();
    for (psi, want) in [(0.2, 0.54), (0.15, 0.045), (0.05, -0.095)] {
        let (d, next) = pid_step(psi, 0.0, &full, &st, big);
        ensure((d - want).abs() <= 1e-12, || format!("full PID: {d} vs {want}"))?;
        st = next;
    }

    // heading just below π against a desired heading just above −π: the
    // error is −0.1, not 2π − 0.1
    let (d, next) = pid_step(PI - 0.05, -PI + 0.05, &p, &PidState::default(), big);
    ensure((d + 0.2).abs() <= 1e-12 && (next.error_old + 0.1).abs() <= 1e-12, || format!("wrap: {d}"))?;
    let (d, _) = pid_step(-PI + 0.05, PI - 0.05, &p, &PidState::default(), big);
    ensure((d - 0.2).abs() <= 1e-12, || format!("wrap mirrored: {d}"))?;
    Ok("hand sequences match to 1e-12, wrap through ±π handled".into())
}

// ----------------------------------------------------------- MPC -------

pub fn random_mpc(r: &mut impl Rng, n: usize) -> (MpcParams, ControlState, ControlState, Vec<f64>) {
    let p = MpcParams {
        ts: r.gen_range(0.5..3.0),
        n,
        heading_gain: r.gen_range(0.1..5.0),
        rate_gain: r.gen_range(0.0..50.0),
        rudder_gain: r.gen_range(0.0..1.0),
        max_iter: 300,
        delta_max: r.gen_range(0.2..0.7),
        nomoto_k: r.gen_range(0.02..0.3),
        nomoto_t: r.gen_range(5.0..40.0),
        r_max: r.gen_range(0.01..0.06),
        rate_penalty: [0.0, 1e2, 1e4][r.gen_range(0..3)],
    };
    let s = ControlState { r: r.gen_range(-0.03..0.03), psi: r.gen_range(-1.0..1.0) };
    let s_ref = ControlState { r: 0.0, psi: r.gen_range(-1.0..1.0) };
    let deltas = (0..n).map(|_| r.gen_range(-p.delta_max..p.delta_max)).collect();
    (p, s, s_ref, deltas)
}

fn cost_of(s: ControlState, s_ref: ControlState, deltas: &[f64], p: &MpcParams) -> f64 {
    let pred = p.model().predict(s, deltas, p.ts, f64::INFINITY).expect("unbounded prediction");
    mpc_cost(&pred, s_ref, deltas, p)
}

pub fn mpc_gradient_check(trials: usize) -> Result<f64, String> {
    let mut r = rng(7);
    let mut worst: f64 = 0.0;
    for i in 0..trials {
        let n = r.gen_range(3..=25);
        let (p, s, s_ref, deltas) = random_mpc(&mut r, n);
        let (_, grad) = mpc_cost_and_gradient(s, s_ref, &deltas, &p);
        let h = 1e-6;
        let fd: Vec<f64> = (0..n)
            .map(|k| {
                let mut up = deltas.clone();
                let mut dn = deltas.clone();
                up[k] += h;
                dn[k] -= h;
                (cost_of(s, s_ref, &up, &p) - cost_of(s, s_ref, &dn, &p)) / (2.0 * h)
            })
            .collect();
        let diff = grad.iter().zip(&fd).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        let norm = fd.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-8);
        let rel = diff / norm;
        worst = worst.max(rel);
        ensure(rel <= 1e-5, || format!("instance {i}: relative gradient error {rel:e}"))?;
    }
    Ok(worst)
}

/// Best constant rudder sequence on a fine grid.
pub fn constant_rudder_oracle(s: ControlState, s_ref: ControlState, p: &MpcParams) -> f64 {
    (0..=2000)
        .map(|k| -p.delta_max + 2.0 * p.delta_max * k as f64 / 2000.0)
        .map(|d| cost_of(s, s_ref, &vec![d; p.n], p))
        .fold(f64::INFINITY, f64::min)
}

pub fn mpc_checks(trials: usize) -> Check {
    let start = Instant::now();
    let worst = mpc_gradient_check(trials)?;
    let mut r = rng(8);
    for i in 0..trials {
        let (p, s, s_ref, warm) = random_mpc(&mut r, 5);
        let sol = mpc_solve(s, s_ref, &warm, &p).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(sol.sequence.iter().all(|d| d.abs() <= p.delta_max), || {
            format!("instance {i}: rudder outside ±{}", p.delta_max)
        })?;
        let oracle = constant_rudder_oracle(s, s_ref, &p);
        ensure(sol.cost <= oracle + 1e-6, || format!("instance {i}: solver {} > grid {oracle}", sol.cost))?;
        let check = cost_of(s, s_ref, &sol.sequence, &p);
        ensure((check - sol.cost).abs() <= 1e-9 * check.abs().max(1.0), || {
            format!("instance {i}: reported cost {} differs from {check}", sol.cost)
        })?;
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 10.0, || format!("suite took {elapsed:.1} s"))?;
    Ok(format!(
        "{trials} gradients (worst relative error {worst:.1e}), {trials} N = 5 solves within bounds and ≤ grid oracle, {elapsed:.2} s"
    ))
}

// ----------------------------------------------------------- SBMPC -----

pub fn head_on_fixture() -> (VesselState, Vec<ObstacleState>) {
    let own = VesselState { u: 3.0, ..Default::default() };
    let obstacle = ObstacleState { x: 500.0, y: 0.0, course: PI, speed: 3.0, length: 80.0 };
    (own, vec![obstacle])
}

pub fn sbmpc_checks() -> Check {
    let p = SbmpcParams::default();
    let own = VesselState { x: 12.0, y: -4.0, psi: 0.4, u: 3.0, ..Default::default() };
    let free = run_sbmpc(&own, 0.4, 3.0, &ColavDecision::default(), &[], &p);
    ensure(free.chi_m == 0.0 && free.u_m == 1.0, || format!("no obstacles: {free:?}"))?;

    let (own, obstacles) = head_on_fixture();
    let prev = ColavDecision::default();
    let decision = run_sbmpc(&own, 0.0, 3.0, &prev, &obstacles, &p);
    // starboard is clockwise, i.e. a negative course offset
    ensure(decision.chi_m < 0.0, || format!("head-on decision {decision:?} is not to starboard"))?;

    let all = evaluate_candidates(&own, 0.0, 3.0, &prev, &obstacles, &p);
    let best = all.iter().find(|c| c.decision == decision).expect("decision is a candidate");
    ensure(all.iter().all(|c| c.cost >= best.cost), || "a cheaper candidate exists".into())?;
    let first_min = all.iter().find(|c| c.cost == best.cost).unwrap();
    ensure(first_min.decision == decision, || "tie not resolved to the first candidate".into())?;

    for _ in 0..5 {
        let again = run_sbmpc(&own, 0.0, 3.0, &prev, &obstacles, &p);
        ensure(
            again.chi_m.to_bits() == decision.chi_m.to_bits() && again.u_m.to_bits() == decision.u_m.to_bits(),
            || "repeated evaluation differs".into(),
        )?;
    }
    Ok(format!(
        "free water (0°, 1.0); head-on χ_m = {:.0}°, U_m = {}; minimal over {} candidates; deterministic",
        decision.chi_m.to_degrees(),
        decision.u_m,
        all.len()
    ))
}

// --------------------------------------------------------- metrics -----

pub fn metrics_checks() -> Check {
    let d = nominal_distance(&[Point::new(0.0, 0.0), Point::new(3.0, 4.0)]).map_err(|e| e.to_string())?;
    ensure((d - 5.0).abs() <= 1e-9, || format!("distance {d}"))?;
    let dt = 0.1;
    let (signed, abs) = cumulative_heading_error(&[0.1; 100], &[0.0; 100], dt).map_err(|e| e.to_string())?;
    ensure((signed - 1.0).abs() <= 1e-9 && (abs - 1.0).abs() <= 1e-9, || format!("heading error {signed}, {abs}"))?;
    let path = [Point::new(0.0, 0.0), Point::new(1000.0, 0.0)];
    let log: Vec<Point> = (0..100).map(|k| Point::new(k as f64, 2.0)).collect();
    let c = cxte(&log, &path, dt).map_err(|e| e.to_string())?;
    ensure((c - 20.0).abs() <= 1e-9, || format!("CXTE {c}"))?;
    Ok("distance 5, heading error 1.0 rad·s, CXTE 20 m·s".into())
}
