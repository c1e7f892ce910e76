use std::collections::VecDeque;

use super::GraphError;

/// A finite simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<u32>>,
}

impl Graph {
    /// Builds a graph from an edge list. Repeated edges collapse; loops
    /// are refused.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(GraphError::VertexOutOfRange { vertex: w, count: vertex_count });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adjacency[u].push(v as u32);
            adjacency[v].push(u as u32);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&(v as u32)).is_ok()
    }

    /// The common valency, if the graph is regular.
    pub fn valency(&self) -> Option<usize> {
        let d = self.adjacency.first().map_or(0, Vec::len);
        self.adjacency.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    queue.push_back(w as usize);
                }
            }
        }
        count == n
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().map(|&v| v as usize).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Ordered pairs of adjacent vertices, in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(2 * self.edge_count());
        for (u, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().map(|&v| (u, v as usize)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.valency(), Some(2));
        assert!(g.is_connected());
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(g.arcs().len(), 8);
        assert!(g.has_edge(3, 0) && !g.has_edge(0, 2));
    }

    #[test]
    fn rejects_loops_and_bad_vertices() {
        assert_eq!(Graph::new(2, [(1, 1)]), Err(GraphError::Loop(1)));
        assert!(matches!(Graph::new(2, [(0, 2)]), Err(GraphError::VertexOutOfRange { .. })));
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.valency(), None);
    }
}
