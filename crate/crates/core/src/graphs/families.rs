use crate::permgroup::Permutation;

use super::action::GraphAction;
use super::graph::Graph;
use super::GraphError;

fn perm(n: usize, f: impl Fn(usize) -> usize) -> Permutation {
    Permutation::from_images((0..n).map(|v| f(v) as u32).collect()).expect("vertex maps are bijections")
}

/// `W(k, r)`: vertices `(x, y)` in `Z_k x Z_r`, numbered `x r + y`, with
/// `(x, y) ~ (x', y + 1)` for all `x, x'`. Generators: `y -> y + 1`,
/// `y -> -y`, and a `k`-cycle and a transposition of `x` within layer 0.
pub fn build_w(k: usize, r: usize) -> Result<GraphAction, GraphError> {
    if k < 1 || r < 3 {
        return Err(GraphError::InvalidParameter(format!("W(k, r) needs k >= 1 and r >= 3, got ({k}, {r})")));
    }
    let n = k * r;
    let id = |x: usize, y: usize| x * r + y;
    let mut edges = Vec::new();
    for y in 0..r {
        for x in 0..k {
            for x2 in 0..k {
                edges.push((id(x, y), id(x2, (y + 1) % r)));
            }
        }
    }
    let graph = Graph::new(n, edges)?;
    let mut gens = vec![
        perm(n, |v| id(v / r, (v % r + 1) % r)),
        perm(n, |v| id(v / r, (r - v % r) % r)),
    ];
    if k >= 2 {
        let layer0 = |f: &dyn Fn(usize) -> usize| perm(n, |v| if v % r == 0 { id(f(v / r), 0) } else { v });
        gens.push(layer0(&|x| (x + 1) % k));
        gens.push(layer0(&|x| match x {
            0 => 1,
            1 => 0,
            x => x,
        }));
    }
    GraphAction::new(graph, gens)
}

/// `SW(k, r)`: vertices `(x, y, z)` in `Z_k x Z_r x Z_2`, numbered
/// `(x r + y) 2 + z`, with edges `(x, y, 0) ~ (x, y, 1)` and
/// `(x, y + 1, 0) ~ (x', y, 1)`. Generators: `y -> y + 1`,
/// `(x, y, z) -> (x, -y, 1 - z)`, and a `k`-cycle and a transposition of
/// `x` applied to both vertices of layer pair `y = 0`.
pub fn build_sw(k: usize, r: usize) -> Result<GraphAction, GraphError> {
    if k < 1 || r < 2 {
        return Err(GraphError::InvalidParameter(format!("SW(k, r) needs k >= 1 and r >= 2, got ({k}, {r})")));
    }
    let n = 2 * k * r;
    let id = |x: usize, y: usize, z: usize| (x * r + y) * 2 + z;
    let coords = |v: usize| (v / 2 / r, v / 2 % r, v % 2);
    let mut edges = Vec::new();
    for x in 0..k {
        for y in 0..r {
            edges.push((id(x, y, 0), id(x, y, 1)));
            for x2 in 0..k {
                edges.push((id(x, (y + 1) % r, 0), id(x2, y, 1)));
            }
        }
    }
    let graph = Graph::new(n, edges)?;
    let mut gens = vec![
        perm(n, |v| {
            let (x, y, z) = coords(v);
            id(x, (y + 1) % r, z)
        }),
        perm(n, |v| {
            let (x, y, z) = coords(v);
            id(x, (r - y) % r, 1 - z)
        }),
    ];
    if k >= 2 {
        let layer0 = |f: &dyn Fn(usize) -> usize| {
            perm(n, |v| {
                let (x, y, z) = coords(v);
                if y == 0 {
                    id(f(x), 0, z)
                } else {
                    v
                }
            })
        };
        gens.push(layer0(&|x| (x + 1) % k));
        gens.push(layer0(&|x| match x {
            0 => 1,
            1 => 0,
            x => x,
        }));
    }
    GraphAction::new(graph, gens)
}

/// Cycle of length `n` with its rotation, plus the reflection if asked.
pub fn cycle(n: usize, reflection: bool) -> Result<GraphAction, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter(format!("cycle length {n} < 3")));
    }
    let graph = Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))?;
    let mut gens = vec![perm(n, |v| (v + 1) % n)];
    if reflection {
        gens.push(perm(n, |v| (n - v) % n));
    }
    GraphAction::new(graph, gens)
}

/// Symmetric group on `points` (given in order) fixing everything else.
fn symmetric_on(n: usize, points: &[usize]) -> Vec<Permutation> {
    if points.len() < 2 {
        return Vec::new();
    }
    let m = points.len();
    let pos = |v: usize| points.iter().position(|&p| p == v);
    let cyc = perm(n, |v| pos(v).map_or(v, |i| points[(i + 1) % m]));
    let swap = perm(n, |v| match pos(v) {
        Some(0) => points[1],
        Some(1) => points[0],
        _ => v,
    });
    if m == 2 {
        vec![swap]
    } else {
        vec![cyc, swap]
    }
}

/// `K_{m,n}` with `S_m x S_n`, and the side swap when `m = n` and `swap`.
pub fn complete_bipartite(m: usize, n: usize, swap: bool) -> Result<GraphAction, GraphError> {
    if m == 0 || n == 0 {
        return Err(GraphError::InvalidParameter("empty side".into()));
    }
    let total = m + n;
    let graph = Graph::new(total, (0..m).flat_map(|a| (m..total).map(move |b| (a, b))))?;
    let left: Vec<usize> = (0..m).collect();
    let right: Vec<usize> = (m..total).collect();
    let mut gens = symmetric_on(total, &left);
    gens.extend(symmetric_on(total, &right));
    if swap && m == n {
        gens.push(perm(total, |v| (v + m) % total));
    }
    GraphAction::new(graph, gens)
}

/// Star `K_{1,n}` with the symmetric group on the leaves.
pub fn star(n: usize) -> Result<GraphAction, GraphError> {
    complete_bipartite(1, n, false)
}

/// `K_n` with the given generators, or the full symmetric group.
pub fn complete_graph(n: usize, generators: Option<Vec<Permutation>>) -> Result<GraphAction, GraphError> {
    let graph = Graph::new(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))?;
    let gens = generators.unwrap_or_else(|| symmetric_on(n, &(0..n).collect::<Vec<_>>()));
    GraphAction::new(graph, gens)
}

/// The Petersen graph on the 2-subsets of `{0..4}` in lexicographic order,
/// disjoint pairs adjacent, with `S_5`.
pub fn petersen() -> Result<GraphAction, GraphError> {
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let index = |a: usize, b: usize| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
    let mut edges = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate() {
            if i < j && a != c && a != d && b != c && b != d {
                edges.push((i, j));
            }
        }
    }
    let graph = Graph::new(10, edges)?;
    let on_pairs = |f: &dyn Fn(usize) -> usize| perm(10, |v| index(f(pairs[v].0), f(pairs[v].1)));
    let gens = vec![
        on_pairs(&|x| (x + 1) % 5),
        on_pairs(&|x| match x {
            0 => 1,
            1 => 0,
            x => x,
        }),
    ];
    GraphAction::new(graph, gens)
}

/// The 3-cube on bit vectors, with all automorphisms (`full`) or with
/// translations only.
pub fn cube(full: bool) -> Result<GraphAction, GraphError> {
    let graph = Graph::new(8, (0..8usize).flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b)))))?;
    let gens = if full {
        vec![
            perm(8, |v| ((v << 1) & 7) | (v >> 2)),
            perm(8, |v| (v & 4) | ((v & 1) << 1) | ((v >> 1) & 1)),
            perm(8, |v| v ^ 1),
        ]
    } else {
        (0..3).map(|b| perm(8, move |v| v ^ (1 << b))).collect()
    };
    GraphAction::new(graph, gens)
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub action: GraphAction,
}

/// Graphs with groups used by the implication sweeps.
pub fn fixture_corpus() -> Vec<Fixture> {
    let mut out = Vec::new();
    let mut add = |name: String, action: Result<GraphAction, GraphError>| {
        out.push(Fixture { name, action: action.expect("fixtures are well formed") });
    };
    for k in 1..=4 {
        for r in 3..=8 {
            add(format!("W({k},{r})"), build_w(k, r));
        }
    }
    for k in 1..=4 {
        for r in 2..=6 {
            add(format!("SW({k},{r})"), build_sw(k, r));
        }
    }
    // generator subsets of the small members
    for (k, r) in [(2, 3), (2, 4), (3, 3), (2, 5)] {
        let full = build_w(k, r).unwrap();
        let gens = full.generators();
        for (label, keep) in [("rot", vec![0]), ("rot+layer", vec![0, 2, 3]), ("rot+refl", vec![0, 1])] {
            let g = keep.iter().map(|&i| gens[i].clone()).collect();
            add(format!("W({k},{r})[{label}]"), GraphAction::new(full.graph().clone(), g));
        }
        let sw = build_sw(k, r).unwrap();
        let sg = sw.generators();
        for (label, keep) in [("rot", vec![0]), ("rot+layer", vec![0, 2, 3])] {
            let g = keep.iter().map(|&i| sg[i].clone()).collect();
            add(format!("SW({k},{r})[{label}]"), GraphAction::new(sw.graph().clone(), g));
        }
    }
    for n in 3..=8 {
        add(format!("C{n}[rot]"), cycle(n, false));
        add(format!("C{n}"), cycle(n, true));
    }
    for n in 1..=5 {
        add(format!("K1,{n}"), star(n));
    }
    for (m, n) in [(2, 3), (2, 4), (3, 3), (3, 4), (4, 4)] {
        add(format!("K{m},{n}"), complete_bipartite(m, n, false));
        if m == n {
            add(format!("K{m},{n}[swap]"), complete_bipartite(m, n, true));
        }
    }
    let a4 = vec![perm(4, |v| [1, 2, 0, 3][v]), perm(4, |v| [1, 0, 3, 2][v])];
    add("K4[A4]".into(), complete_graph(4, Some(a4)));
    add("K4[S4]".into(), complete_graph(4, None));
    add("K4[V4]".into(), complete_graph(4, Some(vec![perm(4, |v| v ^ 1), perm(4, |v| v ^ 2)])));
    add("K5[S5]".into(), complete_graph(5, None));
    add("Petersen[S5]".into(), petersen());
    add("Q3".into(), cube(true));
    add("Q3[translations]".into(), cube(false));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w_small_cases() {
        let w = build_w(1, 5).unwrap();
        assert_eq!(w.graph().valency(), Some(2));
        assert_eq!(w.graph().vertex_count(), 5);
        let w = build_w(2, 3).unwrap();
        assert_eq!((w.graph().vertex_count(), w.graph().valency()), (6, Some(4)));
        assert!(w.graph().is_connected());
        assert!(build_w(2, 2).is_err());
    }

    #[test]
    fn sw_small_cases() {
        let s = build_sw(1, 4).unwrap();
        assert_eq!((s.graph().vertex_count(), s.graph().valency()), (8, Some(2)));
        assert!(s.graph().is_connected());
        let s = build_sw(2, 2).unwrap();
        assert_eq!((s.graph().vertex_count(), s.graph().valency()), (8, Some(3)));
        assert!(s.graph().is_connected());
        assert!(build_sw(2, 1).is_err());
    }

    #[test]
    fn named_graphs() {
        let p = petersen().unwrap();
        assert_eq!((p.graph().edge_count(), p.graph().valency()), (15, Some(3)));
        assert_eq!(p.group(1000).unwrap().order(), 120);
        assert_eq!(cube(true).unwrap().group(1000).unwrap().order(), 48);
        assert_eq!(cube(false).unwrap().group(1000).unwrap().order(), 8);
        assert_eq!(complete_bipartite(3, 3, true).unwrap().group(1000).unwrap().order(), 72);
    }
}
