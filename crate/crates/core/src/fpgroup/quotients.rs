//! Orders of finite quotients, each certified by a regular coset table.

use super::coset_table::CosetTable;
use super::low_index::{low_index_subgroups, SearchConfig, SearchMode};
use super::presentation::Presentation;
use super::FpError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedOrder {
    pub order: usize,
    /// Table of a normal subgroup of index `order`; the first in sorted
    /// order when there are several.
    pub certificate: CosetTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientOrders {
    pub limit: usize,
    pub orders: Vec<CertifiedOrder>,
    /// False when the search ran out of budget; `orders` may then miss
    /// values.
    pub complete: bool,
    /// Number of normal subgroups behind the orders.
    pub normal_subgroups: usize,
}

impl QuotientOrders {
    fn from_tables(limit: usize, tables: Vec<CosetTable>, complete: bool) -> Self {
        let normal_subgroups = tables.len();
        let mut orders: Vec<CertifiedOrder> = Vec::new();
        for t in tables {
            if orders.last().is_none_or(|o| o.order != t.index()) {
                orders.push(CertifiedOrder { order: t.index(), certificate: t });
            }
        }
        QuotientOrders { limit, orders, complete, normal_subgroups }
    }

    pub fn values(&self) -> Vec<usize> {
        self.orders.iter().map(|o| o.order).collect()
    }

    pub fn contains(&self, order: usize) -> bool {
        self.orders.binary_search_by_key(&order, |o| o.order).is_ok()
    }

    /// Re-traces every certificate: the table is complete and satisfies
    /// all relators, and its action is regular of the stated order.
    pub fn verify(&self, pres: &Presentation) -> Result<(), FpError> {
        for o in &self.orders {
            o.certificate.verify(pres)?;
            if o.certificate.index() != o.order || !o.certificate.is_normal()? {
                return Err(FpError::BadTable(format!("certificate for {} is not a regular action", o.order)));
            }
        }
        Ok(())
    }

    /// `count / limit`, refused for partial results.
    pub fn density(&self) -> Result<(usize, usize), FpError> {
        if !self.complete {
            return Err(FpError::InvalidArgument("density of a partial result".into()));
        }
        Ok((self.orders.len(), self.limit))
    }
}

fn normal_search(pres: &Presentation, limit: usize, config: &SearchConfig) -> Result<(Vec<CosetTable>, bool), FpError> {
    let config = SearchConfig { mode: SearchMode::NormalOnly, ..*config };
    let s = low_index_subgroups(pres, limit, &config)?;
    Ok((s.tables, s.complete))
}

/// Orders of the finite quotients of at most `limit` elements. The search
/// mode in `config` is ignored: only normal subgroups are searched.
pub fn fq_up_to(pres: &Presentation, limit: usize, config: &SearchConfig) -> Result<QuotientOrders, FpError> {
    let (tables, complete) = normal_search(pres, limit, config)?;
    Ok(QuotientOrders::from_tables(limit, tables, complete))
}

/// The odd orders among [`fq_up_to`].
pub fn oq_up_to(pres: &Presentation, limit: usize, config: &SearchConfig) -> Result<QuotientOrders, FpError> {
    let mut q = fq_up_to(pres, limit, config)?;
    q.orders.retain(|o| o.order % 2 == 1);
    Ok(q)
}

/// Orders of the quotients of `<x_1, .., x_k | x_i^{s_i}>` in which every
/// `x_i` keeps order exactly `s_i`.
pub fn smooth_quotients(cyclic_orders: &[u64], max_index: usize, config: &SearchConfig) -> Result<QuotientOrders, FpError> {
    if cyclic_orders.is_empty() || cyclic_orders.iter().any(|&s| s < 2) {
        return Err(FpError::InvalidArgument("cyclic orders must be at least 2".into()));
    }
    let pres = Presentation::free_product_of_cyclics(cyclic_orders)?;
    let (tables, complete) = normal_search(&pres, max_index, config)?;
    let mut kept = Vec::new();
    for t in tables {
        let perms = t.generator_permutations()?;
        if perms.iter().zip(cyclic_orders).all(|(p, &s)| p.order() == s) {
            kept.push(t);
        }
    }
    Ok(QuotientOrders::from_tables(max_index, kept, complete))
}
