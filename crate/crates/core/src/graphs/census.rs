use crate::fpgroup::{fq_up_to, smooth_quotients, Presentation, QuotientOrders, SearchConfig};

use super::GraphError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    /// Number of vertices of the coset graph.
    pub order: usize,
    /// Index of the normal subgroup certifying it (the quotient order).
    pub certificate_index: usize,
    /// Graphs on fewer than 4 vertices may have multiple edges; their
    /// simplicity is not checked.
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub max_index: usize,
    pub stabilizer_order: usize,
    pub entries: Vec<CensusEntry>,
    pub quotients: QuotientOrders,
}

impl Census {
    fn from_quotients(quotients: QuotientOrders, stabilizer_order: usize) -> Self {
        let entries = quotients
            .orders
            .iter()
            .filter(|q| q.order % stabilizer_order == 0)
            .map(|q| {
                let order = q.order / stabilizer_order;
                CensusEntry { order, certificate_index: q.order, flagged: order < 4 }
            })
            .collect();
        Census { max_index: quotients.limit, stabilizer_order, entries, quotients }
    }

    pub fn orders(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.order).collect()
    }

    pub fn complete(&self) -> bool {
        self.quotients.complete
    }

    /// `(count, range)`: graph orders found against the orders reachable
    /// within the index bound. Refused for partial searches.
    pub fn density(&self) -> Result<(usize, usize), GraphError> {
        if !self.complete() {
            return Err(GraphError::InvalidParameter("density of a partial census".into()));
        }
        Ok((self.entries.len(), self.max_index / self.stabilizer_order))
    }
}

/// Orders of connected cubic graphs with an arc-regular group, as coset
/// graphs of the smooth quotients of `C3 * C2` of order at most
/// `max_index`: a quotient of order `m` gives a graph on `m / 3` vertices.
pub fn cubic_arc_regular_orders(max_index: usize, config: &SearchConfig) -> Result<Census, GraphError> {
    let q = smooth_quotients(&[3, 2], max_index, config)?;
    Ok(Census::from_quotients(q, 3))
}

/// Orders `index / s` of coset graphs from the finite quotients of a
/// user-supplied amalgam presentation with vertex stabilizer order `s`.
/// Only quotient orders divisible by `s` contribute.
pub fn coset_graph_orders(
    pres: &Presentation,
    stabilizer_order: usize,
    max_index: usize,
    config: &SearchConfig,
) -> Result<Census, GraphError> {
    if stabilizer_order == 0 {
        return Err(GraphError::InvalidParameter("stabilizer order must be positive".into()));
    }
    let q = fq_up_to(pres, max_index, config)?;
    Ok(Census::from_quotients(q, stabilizer_order))
}

/// `(count, limit)` for the orders `k r <= limit`, `r >= 3`, of the graphs
/// `W(k, r)` of valency `2k`.
pub fn w_order_density(k: usize, limit: usize) -> Result<(usize, usize), GraphError> {
    if k == 0 || limit == 0 {
        return Err(GraphError::InvalidParameter("k and limit must be positive".into()));
    }
    let count = (3..).map(|r| k * r).take_while(|&n| n <= limit).count();
    Ok((count, limit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w_density() {
        for k in 1..=4 {
            let (c, n) = w_order_density(k, 10_000).unwrap();
            assert!((c as f64 / n as f64 - 1.0 / k as f64).abs() < 0.001);
        }
        assert_eq!(w_order_density(2, 5).unwrap(), (0, 5));
        assert_eq!(w_order_density(2, 6).unwrap(), (1, 6));
    }

    #[test]
    fn small_census() {
        let c = cubic_arc_regular_orders(24, &SearchConfig::default()).unwrap();
        assert_eq!(c.orders(), vec![2, 4, 6, 8]);
        assert!(c.entries[0].flagged && !c.entries[1].flagged);
    }
}
