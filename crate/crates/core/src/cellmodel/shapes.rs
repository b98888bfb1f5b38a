//! Small standard complexes used by tests, benches and the catalog.

use std::sync::Arc;

use super::{CellularMap, ClosedSubcomplex, Complex, GroupAction};

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Cycle on vertices `1..=n`.
pub fn cycle(n: usize) -> Complex {
    let edges = (0..n as u32).map(|i| vec![i, (i + 1) % n as u32]).collect();
    Complex::closure_of(labels(n), edges).expect("cycle")
}

/// Hexagon `1..6` with edges `{i, i+1}`.
pub fn hexagon() -> Complex {
    cycle(6)
}

/// Hexagon with `i ↦ i+3`.
pub fn hexagon_antipodal() -> (Arc<Complex>, GroupAction) {
    let x = Arc::new(hexagon());
    let sigma = (0..6).map(|i| (i + 3) % 6).collect();
    let act = GroupAction::involution(x.clone(), sigma).expect("antipodal");
    (x, act)
}

/// The antipodal hexagon together with the triangle `1 2 3` and `i ↦ i mod 3`.
pub fn hexagon_over_triangle() -> (Arc<Complex>, GroupAction, Arc<Complex>, CellularMap) {
    let (x, act) = hexagon_antipodal();
    let tri = Arc::new(cycle(3));
    let pi = CellularMap::new(x.clone(), tri.clone(), (0..6).map(|i| i % 3).collect()).expect("cover");
    (x, act, tri, pi)
}

/// Square `1 2 3 4` with the reflection swapping 2 and 4.
pub fn square_reflection() -> (Arc<Complex>, GroupAction) {
    let x = Arc::new(cycle(4));
    let act = GroupAction::involution(x.clone(), vec![0, 3, 2, 1]).expect("reflection");
    (x, act)
}

/// Square with `i ↦ i+2`.
pub fn square_antipodal() -> (Arc<Complex>, GroupAction) {
    let x = Arc::new(cycle(4));
    let act = GroupAction::involution(x.clone(), vec![2, 3, 0, 1]).expect("antipodal");
    (x, act)
}

/// Octahedron on `1..6` with antipodal pairs `{i, i+3}`.
pub fn octahedron() -> Complex {
    let mut facets = Vec::new();
    for a in [0, 3] {
        for b in [1, 4] {
            for c in [2, 5] {
                facets.push(vec![a, b, c]);
            }
        }
    }
    Complex::closure_of(labels(6), facets).expect("octahedron")
}

pub fn octahedron_antipodal() -> (Arc<Complex>, GroupAction) {
    let x = Arc::new(octahedron());
    let act = GroupAction::involution(x.clone(), (0..6).map(|i| (i + 3) % 6).collect()).expect("antipodal");
    (x, act)
}

/// Two hollow triangles `a1 a2 a3` and `b1 b2 b3`, swapped.
pub fn two_triangles_swap() -> (Arc<Complex>, GroupAction) {
    let names = ["a1", "a2", "a3", "b1", "b2", "b3"].map(String::from).to_vec();
    let edges = vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]];
    let x = Arc::new(Complex::closure_of(names, edges).expect("triangles"));
    let act = GroupAction::involution(x.clone(), vec![3, 4, 5, 0, 1, 2]).expect("swap");
    (x, act)
}

/// The `n × n` grid torus with vertices `ij` and squares cut along `(i,j)-(i+1,j+1)`.
pub fn torus(n: usize) -> Complex {
    let names = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("{i}{j}")))
        .collect();
    let v = |i: usize, j: usize| ((i % n) * n + j % n) as u32;
    let mut facets = Vec::new();
    for i in 0..n {
        for j in 0..n {
            facets.push(vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            facets.push(vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
        }
    }
    Complex::closure_of(names, facets).expect("torus")
}

/// The 3 × 3 torus with the coordinate swap `(i, j) ↦ (j, i)`.
pub fn torus_swap() -> (Arc<Complex>, GroupAction) {
    let x = Arc::new(torus(3));
    let sigma = (0..9).map(|v| (v % 3) * 3 + v / 3).collect();
    let act = GroupAction::involution(x.clone(), sigma).expect("swap");
    (x, act)
}

/// Two filled triangles `v a1 a2`, `v b1 b2` glued at `v`, their disjoint
/// union upstairs, the gluing map and `Y = {v}`.
pub fn wedge_of_triangles() -> (Arc<Complex>, Arc<Complex>, CellularMap, ClosedSubcomplex) {
    let up_names = ["v1", "a1", "a2", "v2", "b1", "b2"].map(String::from).to_vec();
    let up = Arc::new(Complex::closure_of(up_names, vec![vec![0, 1, 2], vec![3, 4, 5]]).expect("up"));
    let down_names = ["v", "a1", "a2", "b1", "b2"].map(String::from).to_vec();
    let down = Arc::new(Complex::closure_of(down_names, vec![vec![0, 1, 2], vec![0, 3, 4]]).expect("down"));
    let pi = CellularMap::new(up.clone(), down.clone(), vec![0, 1, 2, 0, 3, 4]).expect("gluing");
    let y = ClosedSubcomplex::closure_of(down.clone(), [(0, 0)]);
    (up, down, pi, y)
}
