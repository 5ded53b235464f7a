//! Bundled scenes and the `z ↦ zⁿ` circle scene generator.

use std::collections::BTreeMap;

use crate::scene::parse_scene;
use crate::simplicial::{SimplexId, Subdivision};

pub const FIXTURES: &[(&str, &str)] = &[
    ("point", include_str!("../fixtures/point.scene")),
    ("square_circle", include_str!("../fixtures/square_circle.scene")),
    ("circle_z2", include_str!("../fixtures/circle_z2.scene")),
    ("circle_z2_corrupted", include_str!("../fixtures/circle_z2_corrupted.scene")),
    ("circle_z3", include_str!("../fixtures/circle_z3.scene")),
    ("octagon_d4", include_str!("../fixtures/octagon_d4.scene")),
    ("octahedron", include_str!("../fixtures/octahedron.scene")),
    ("octahedron_z2", include_str!("../fixtures/octahedron_z2.scene")),
    ("s3_reflection", include_str!("../fixtures/s3_reflection.scene")),
    ("s3_reflection_z2", include_str!("../fixtures/s3_reflection_z2.scene")),
    ("sign_orientation", include_str!("../fixtures/sign_orientation.scene")),
    ("sign_identity", include_str!("../fixtures/sign_identity.scene")),
];

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}

pub const MAX_CIRCLE_POWER: u32 = 16;

const SQUARE: &str = "\
[complex]
vertex 1 colour 0
vertex i colour 1
vertex -1 colour 0
vertex -i colour 1
simplex 1 i
simplex i -1
simplex -1 -i
simplex -i 1

[action]
generator c = (i -i)
";

/// Scene for `z ↦ zⁿ` on the square circle with complex conjugation:
/// a simplicial approximation at the first level with `2^k ≥ n`, and one
/// transverse fixed point per conjugation orbit of solutions of `z^{n-1} = 1`
/// (just `z = 1` for `n = 0`, none for the identity `n = 1`).
pub fn circle_power_scene(n: u32) -> Option<String> {
    if n > MAX_CIRCLE_POWER {
        return None;
    }
    let level = (0..).find(|&k| (1u32 << k) >= n.max(1)).expect("small n");
    let mut tower = parse_scene(SQUARE).expect("square circle").tower().expect("complex").clone();
    tower.ensure_level(level).expect("subdivides");
    let cycle = walk_cycle(&tower, level);
    let names = ["1", "i", "-1", "-i"];
    let len = cycle.len() as i64;
    let half = len / 2;
    let scale = 1i64 << level;
    let target = |j: i64| -> usize {
        let t = if j <= half { (n as i64 * j).div_euclid(scale) } else { -(n as i64 * (len - j)).div_euclid(scale) };
        t.rem_euclid(4) as usize
    };

    let mut out = format!("# z -> z^{n} on the circle, conjugation symmetry\n{SQUARE}\n[map]\nlevel {level}\n");
    let lvl = tower.level(level).complex();
    for (j, &v) in cycle.iter().enumerate() {
        out.push_str(&format!("{} -> {}\n", lvl.name(v), names[target(j as i64)]));
    }
    if n != 1 {
        out.push_str("\n[smooth]\n");
        let fixed: Vec<(u32, u32)> = if n == 0 { vec![(0, 1)] } else { (0..=(n - 1) / 2).map(|m| (m, n - 1)).collect() };
        for (m, q) in fixed {
            // angle 2πm/q in quarter turns is 4m/q
            let (num, den) = (4 * m, q);
            let site = if num == 0 {
                "{1}".to_string()
            } else if num == 2 * den {
                "{-1}".to_string()
            } else if num == den {
                "{i}".to_string()
            } else if num < den {
                "{1,i}".to_string()
            } else {
                "{i,-1}".to_string()
            };
            out.push_str(&format!("point {site}\n"));
            if site == "{1}" || site == "{-1}" {
                out.push_str("rho c = [-1]\n");
            }
            out.push_str(&format!("dphi = [{n}]\n"));
        }
    }
    Some(out)
}

/// Level-`k` vertices in counterclockwise order, starting over `1`.
fn walk_cycle(tower: &Subdivision, k: usize) -> Vec<usize> {
    let lvl = tower.level(k);
    let c = lvl.complex();
    let base = tower.base().complex();
    let one = base.vertex_index("1").expect("vertex 1");
    let i = base.vertex_index("i").expect("vertex i");
    let mut nbrs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in c.simplices(1) {
        nbrs.entry(e[0]).or_default().push(e[1]);
        nbrs.entry(e[1]).or_default().push(e[0]);
    }
    let start = (0..c.num_vertices())
        .find(|&v| lvl.carrier(SimplexId { dim: 0, idx: v }) == SimplexId { dim: 0, idx: one })
        .expect("vertex over 1");
    let towards_i = |v: usize| lvl.barycentric(v).iter().any(|(b, _)| *b == i);
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = *nbrs[&start].iter().find(|&&v| towards_i(v)).expect("neighbour towards i");
    while cur != start {
        order.push(cur);
        let next = *nbrs[&cur].iter().find(|&&v| v != prev).expect("cycle");
        prev = cur;
        cur = next;
    }
    order
}
