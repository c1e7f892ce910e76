use std::collections::HashMap;

use crate::permgroup::{GroupShape, PermError, PermGroup, Permutation, TorsionSelector};

use super::graph::Graph;
use super::GraphError;

/// A graph together with automorphisms generating a group.
#[derive(Clone, Debug)]
pub struct GraphAction {
    graph: Graph,
    generators: Vec<Permutation>,
}

impl GraphAction {
    /// Checks that every generator maps edges to edges.
    pub fn new(graph: Graph, generators: Vec<Permutation>) -> Result<Self, GraphError> {
        let n = graph.vertex_count();
        for (i, g) in generators.iter().enumerate() {
            if g.degree() != n {
                return Err(GraphError::NotAutomorphism(i));
            }
            // a permutation mapping edges into edges is a bijection on them
            if graph.edges().iter().any(|&(u, v)| !graph.has_edge(g.apply(u), g.apply(v))) {
                return Err(GraphError::NotAutomorphism(i));
            }
        }
        Ok(GraphAction { graph, generators })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Closes the generated group, refusing groups above `cap` elements.
    pub fn group(&self, cap: usize) -> Result<PermGroup, GraphError> {
        Ok(PermGroup::close(self.graph.vertex_count(), self.generators.clone(), cap)?)
    }
}

/// Orbits of `0..count` under maps `f(generator, item)`; returns the orbit
/// label of each item, labels numbered by least member.
fn orbit_labels(count: usize, gens: &[Permutation], f: impl Fn(&Permutation, usize) -> usize) -> (Vec<usize>, usize) {
    let mut label = vec![usize::MAX; count];
    let mut orbits = 0;
    for start in 0..count {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = orbits;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for g in gens {
                let j = f(g, i);
                if label[j] == usize::MAX {
                    label[j] = orbits;
                    stack.push(j);
                }
            }
        }
        orbits += 1;
    }
    (label, orbits)
}

fn edge_orbits(graph: &Graph, gens: &[Permutation]) -> (Vec<(usize, usize)>, Vec<usize>, usize) {
    let edges = graph.edges();
    let index: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let (labels, count) = orbit_labels(edges.len(), gens, |g, i| {
        let (u, v) = edges[i];
        let (a, b) = (g.apply(u), g.apply(v));
        index[&(a.min(b), a.max(b))]
    });
    (edges, labels, count)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalActionSummary {
    pub vertex: usize,
    pub degree: usize,
    pub order: usize,
    pub transitive: bool,
    pub shape: GroupShape,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityReport {
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
    pub arc_transitive: bool,
    /// Decided from arc orbits: every vertex has all its outgoing arcs in
    /// one orbit.
    pub locally_transitive: bool,
    pub vertex_orbits: usize,
    pub edge_orbits: usize,
    pub arc_orbits: usize,
    /// Local actions at the least vertex of each vertex orbit; empty when
    /// the group does not close within the element cap.
    pub local_actions: Vec<LocalActionSummary>,
    pub connected: bool,
    /// `Some(k)` when the graph is regular of valency `k`.
    pub valency: Option<usize>,
    pub isolated_vertices: bool,
}

impl TransitivityReport {
    /// Implications that must hold for every graph and group; returns
    /// the violated ones.
    pub fn violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.arc_transitive && !self.edge_transitive {
            out.push("arc-transitive but not edge-transitive");
        }
        if self.connected && self.locally_transitive && !self.edge_transitive {
            out.push("locally-transitive but not edge-transitive");
        }
        if self.edge_transitive && self.vertex_orbits > 2 && !self.isolated_vertices {
            out.push("edge-transitive with more than two vertex orbits");
        }
        if !self.local_actions.is_empty()
            && self.local_actions.iter().all(|l| l.transitive || l.degree == 0) != self.locally_transitive
        {
            out.push("local actions disagree with arc orbits");
        }
        let regular_even = self.valency.is_some_and(|k| k % 2 == 0);
        if self.edge_transitive && !regular_even && !self.locally_transitive {
            out.push("edge-transitive, not regular of even valency, but not locally-transitive");
        }
        out
    }
}

/// Orbit counts on vertices, edges and arcs under the generators; local
/// actions when the group closes within `cap` elements.
pub fn transitivity_report(ga: &GraphAction, cap: usize) -> Result<TransitivityReport, GraphError> {
    let graph = ga.graph();
    let gens = ga.generators();
    let n = graph.vertex_count();
    let (vlabels, vertex_orbits) = orbit_labels(n, gens, |g, v| g.apply(v));
    let (_, _, edge_count) = edge_orbits(graph, gens);
    let arcs = graph.arcs();
    let arc_index: HashMap<(usize, usize), usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let (arc_labels, arc_orbits) = orbit_labels(arcs.len(), gens, |g, i| {
        let (u, v) = arcs[i];
        arc_index[&(g.apply(u), g.apply(v))]
    });
    let arc_transitive = arc_orbits <= 1 && vertex_orbits <= 1;
    // G_v is transitive on the neighbours of v iff the arcs leaving v lie
    // in a single orbit
    let mut first_label = vec![usize::MAX; n];
    let mut locally_transitive = true;
    for (i, &(u, _)) in arcs.iter().enumerate() {
        if first_label[u] == usize::MAX {
            first_label[u] = arc_labels[i];
        } else if first_label[u] != arc_labels[i] {
            locally_transitive = false;
        }
    }

    let mut local_actions = Vec::new();
    match ga.group(cap) {
        Ok(group) => {
            for orbit in 0..vertex_orbits {
                let v = vlabels.iter().position(|&l| l == orbit).unwrap();
                let local = induced_local(&group, graph, v)?;
                local_actions.push(LocalActionSummary {
                    vertex: v,
                    degree: graph.degree(v),
                    order: local.order(),
                    transitive: local.is_transitive(),
                    shape: local.shape(),
                });
            }
        }
        Err(GraphError::Perm(PermError::TooLarge { .. })) => {}
        Err(e) => return Err(e),
    }
    Ok(TransitivityReport {
        vertex_transitive: vertex_orbits <= 1,
        edge_transitive: edge_count <= 1,
        arc_transitive,
        locally_transitive,
        vertex_orbits,
        edge_orbits: edge_count,
        arc_orbits,
        local_actions,
        connected: graph.is_connected(),
        valency: graph.valency(),
        isolated_vertices: (0..n).any(|v| graph.degree(v) == 0),
    })
}

fn induced_local(group: &PermGroup, graph: &Graph, v: usize) -> Result<PermGroup, GraphError> {
    let points: Vec<usize> = graph.neighbors(v).iter().map(|&w| w as usize).collect();
    Ok(group.stabilizer(v).induced_on(&points)?)
}

/// The group induced by the stabilizer of `v` on its neighbours, listed
/// in increasing order.
pub fn local_action(ga: &GraphAction, v: usize, cap: usize) -> Result<PermGroup, GraphError> {
    if v >= ga.graph().vertex_count() {
        return Err(GraphError::VertexOutOfRange { vertex: v, count: ga.graph().vertex_count() });
    }
    induced_local(&ga.group(cap)?, ga.graph(), v)
}

/// `H = <O(G_u), O(G_v)>` for an edge `{u, v}` with the checks attached.
#[derive(Clone, Debug)]
pub struct OddEdgeCore {
    pub h: PermGroup,
    pub subgroup_of_g: bool,
    /// At each end: the odd part of the stabilizer induces the odd part
    /// of the local action.
    pub local_odd_identity: [bool; 2],
    /// At each end: that odd part is transitive on the neighbourhood.
    pub local_odd_transitive: [bool; 2],
    /// When both local odd parts are transitive: the `H`-orbit of the
    /// edge equals its `G`-orbit.
    pub edge_orbit_matches: Option<bool>,
    /// When both local odd parts are transitive and the graph is
    /// connected: `|V|` is `|H : H_u|` or `|H : H_u| + |H : H_v|`.
    pub vertex_count_matches: Option<bool>,
}

impl OddEdgeCore {
    pub fn passes(&self) -> bool {
        self.subgroup_of_g
            && self.local_odd_identity.iter().all(|&b| b)
            && self.edge_orbit_matches != Some(false)
            && self.vertex_count_matches != Some(false)
    }
}

pub fn odd_edge_core(ga: &GraphAction, u: usize, v: usize, cap: usize) -> Result<OddEdgeCore, GraphError> {
    let graph = ga.graph();
    for w in [u, v] {
        if w >= graph.vertex_count() {
            return Err(GraphError::VertexOutOfRange { vertex: w, count: graph.vertex_count() });
        }
    }
    if !graph.has_edge(u, v) {
        return Err(GraphError::NotAnEdge(format!("{{{u}, {v}}}")));
    }
    let g = ga.group(cap)?;
    let mut identity = [false; 2];
    let mut transitive = [false; 2];
    let mut odd_parts = Vec::new();
    for (k, &w) in [u, v].iter().enumerate() {
        let stab = g.stabilizer(w);
        let odd = stab.torsion_subgroup(TorsionSelector::Odd);
        let points: Vec<usize> = graph.neighbors(w).iter().map(|&x| x as usize).collect();
        let induced_odd = odd.induced_on(&points)?;
        let local_odd = stab.induced_on(&points)?.torsion_subgroup(TorsionSelector::Odd);
        identity[k] = induced_odd.elements() == local_odd.elements();
        transitive[k] = induced_odd.is_transitive();
        odd_parts.push(odd);
    }
    let h = g.subgroup_generated_by(odd_parts.iter().flat_map(|o| o.generators()));
    let subgroup_of_g = h.is_subgroup_of(&g);
    let (edge_orbit_matches, vertex_count_matches) = if transitive.iter().all(|&t| t) {
        let (edges, glabels, _) = edge_orbits(graph, g.generators());
        let (_, hlabels, _) = edge_orbits(graph, h.generators());
        let e = edges.binary_search(&(u.min(v), u.max(v))).unwrap();
        let g_orbit: Vec<usize> = (0..edges.len()).filter(|&i| glabels[i] == glabels[e]).collect();
        let h_orbit: Vec<usize> = (0..edges.len()).filter(|&i| hlabels[i] == hlabels[e]).collect();
        let vertices = if graph.is_connected() {
            let (vl, _) = orbit_labels(graph.vertex_count(), h.generators(), |p, x| p.apply(x));
            let a = vl.iter().filter(|&&l| l == vl[u]).count();
            let b = vl.iter().filter(|&&l| l == vl[v]).count();
            let n = graph.vertex_count();
            Some(n == a || n == a + b)
        } else {
            None
        };
        (Some(g_orbit == h_orbit), vertices)
    } else {
        (None, None)
    };
    Ok(OddEdgeCore {
        h,
        subgroup_of_g,
        local_odd_identity: identity,
        local_odd_transitive: transitive,
        edge_orbit_matches,
        vertex_count_matches,
    })
}
