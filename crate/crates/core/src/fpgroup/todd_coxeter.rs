//! Relator-tracing (HLT) coset enumeration with coincidence processing.

use super::coset_table::{CosetTable, UNDEF};
use super::presentation::Presentation;
use super::word::{Letter, Word};
use super::FpError;

pub const DEFAULT_MAX_COSETS: usize = 1 << 20;

/// Enumerates the cosets of the subgroup generated by `subgroup` while at
/// most `max_cosets` cosets are alive. Returns the standardized, verified
/// table, or `Undecided` when the bound is hit.
pub fn todd_coxeter(pres: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable, FpError> {
    if max_cosets == 0 {
        return Err(FpError::InvalidArgument("max_cosets must be at least 1".into()));
    }
    if let Some(w) = subgroup.iter().find(|w| w.letters().iter().any(|l| l.generator() >= pres.num_generators())) {
        return Err(FpError::InvalidArgument(format!("subgroup word {w:?} uses an undeclared generator")));
    }
    let mut e = Enumerator::new(pres.num_generators(), max_cosets);
    for w in subgroup {
        e.scan_and_fill(0, w.letters())?;
    }
    let relators: Vec<&[Letter]> = pres.relators().iter().map(|r| r.letters()).collect();
    let mut c = 0;
    while c < e.parent.len() {
        if e.is_live(c) {
            for r in &relators {
                e.scan_and_fill(c, r)?;
                if !e.is_live(c) {
                    break;
                }
            }
            for x in 0..e.cols {
                if !e.is_live(c) {
                    break;
                }
                if e.get(c, x) == UNDEF {
                    e.define(c, x)?;
                }
            }
        }
        c += 1;
    }
    let table = e.finish().with_subgroup(subgroup.to_vec());
    table.verify(pres)?;
    Ok(table)
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    /// Union-find forest over coset numbers; live cosets are roots.
    parent: Vec<u32>,
    live: usize,
    max_live: usize,
    max_total: usize,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(num_gens: usize, max_live: usize) -> Self {
        let cols = 2 * num_gens;
        Enumerator {
            cols,
            table: vec![UNDEF; cols],
            parent: vec![0],
            live: 1,
            max_live,
            // dead rows are never reclaimed, so bound them too
            max_total: max_live.saturating_mul(8).max(1 << 12),
            queue: Vec::new(),
        }
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.cols + x]
    }

    fn set(&mut self, c: usize, x: usize, d: u32) {
        self.table[c * self.cols + x] = d;
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), FpError> {
        if self.live >= self.max_live || self.parent.len() >= self.max_total {
            return Err(FpError::Undecided { cosets: self.live });
        }
        let d = self.parent.len() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.live += 1;
        self.set(c, x, d);
        self.set(d as usize, x ^ 1, c as u32);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi as usize] = lo;
            self.live -= 1;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i] as usize;
            i += 1;
            for x in 0..self.cols {
                let d = self.get(g, x);
                if d == UNDEF {
                    continue;
                }
                self.set(d as usize, x ^ 1, UNDEF);
                let mu = self.rep(g as u32);
                let nu = self.rep(d);
                let mu_x = self.get(mu as usize, x);
                if mu_x != UNDEF {
                    self.merge(nu, mu_x);
                } else {
                    let nu_inv = self.get(nu as usize, x ^ 1);
                    if nu_inv != UNDEF {
                        self.merge(mu, nu_inv);
                    } else {
                        self.set(mu as usize, x, nu);
                        self.set(nu as usize, x ^ 1, mu);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[Letter]) -> Result<(), FpError> {
        let c = c as u32;
        let (mut f, mut b) = (c, c);
        let mut i = 0isize;
        let mut j = w.len() as isize - 1;
        loop {
            while i <= j {
                let t = self.get(f as usize, w[i as usize].column());
                if t == UNDEF {
                    break;
                }
                f = t;
                i += 1;
            }
            if i > j {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j >= i {
                let t = self.get(b as usize, w[j as usize].inverse().column());
                if t == UNDEF {
                    break;
                }
                b = t;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            let x = w[i as usize].column();
            if i == j {
                self.set(f as usize, x, b);
                self.set(b as usize, x ^ 1, f);
                return Ok(());
            }
            self.define(f as usize, x)?;
        }
    }

    fn finish(self) -> CosetTable {
        let mut map = vec![UNDEF; self.parent.len()];
        let mut rows = 0u32;
        for (c, slot) in map.iter_mut().enumerate() {
            if self.is_live(c) {
                *slot = rows;
                rows += 1;
            }
        }
        let mut data = Vec::with_capacity(rows as usize * self.cols);
        for c in 0..self.parent.len() {
            if self.is_live(c) {
                data.extend(self.table[c * self.cols..(c + 1) * self.cols].iter().map(|&d| {
                    if d == UNDEF {
                        UNDEF
                    } else {
                        map[d as usize]
                    }
                }));
            }
        }
        CosetTable::from_raw(self.cols / 2, rows as usize, data, Vec::new()).standardized()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{PermGroup, Permutation};

    fn pres(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    #[test]
    fn cyclic() {
        let t = todd_coxeter(&pres("gens: a\nrels: a^5"), &[], 100).unwrap();
        assert_eq!(t.index(), 5);
        assert!(t.is_normal().unwrap());
    }

    #[test]
    fn tetrahedral() {
        let p = pres("gens: a b\nrels: a^2, b^3, (ab)^3");
        let t = todd_coxeter(&p, &[], 1000).unwrap();
        assert_eq!(t.index(), 12);
        // oracle: the permutation realization closes to 12 elements
        let a = Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let b = Permutation::from_cycles(4, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(PermGroup::close(4, vec![a, b], 1000).unwrap().order(), 12);
        let h = todd_coxeter(&p, &[Word::new([Letter::gen(1)])], 1000).unwrap();
        assert_eq!(h.index(), 4);
    }

    #[test]
    fn larger_finite_groups() {
        for (text, order) in [
            ("gens: a b\nrels: a^2, b^3, (ab)^5", 60),
            ("gens: a b\nrels: a^2, b^3, (ab)^4", 24),
            ("gens: a b\nrels: a^2, b^7, (ab)^3, [a,b]^4", 168),
            ("gens: a b\nrels: a^4, b^2 = a^2, b^-1 a b = a^-1", 8),
            ("gens: x y t\nrels: [x,y], t^4, t^-1 x t = y, t^-1 y t = x^-1, x^3", 36),
        ] {
            assert_eq!(todd_coxeter(&pres(text), &[], 10_000).unwrap().index(), order, "{text}");
        }
    }

    #[test]
    fn infinite_group_is_undecided() {
        let p = pres("gens: a b\nrels: a^2, b^2");
        assert!(matches!(todd_coxeter(&p, &[], 10_000), Err(FpError::Undecided { .. })));
        let z = pres("gens: x");
        assert!(matches!(todd_coxeter(&z, &[], 50), Err(FpError::Undecided { .. })));
        // but a finite-index subgroup of an infinite group enumerates
        let ab = Word::new([Letter::gen(0), Letter::gen(1)]);
        assert_eq!(todd_coxeter(&p, &[ab], 100).unwrap().index(), 2);
    }

    #[test]
    fn trivial_group() {
        let t = todd_coxeter(&pres("gens: a b\nrels: a, b"), &[], 10).unwrap();
        assert_eq!(t.index(), 1);
        let t = todd_coxeter(&pres("gens: a b\nrels: a^2, b^3, ab"), &[], 100).unwrap();
        assert_eq!(t.index(), 1);
    }

    #[test]
    fn deterministic() {
        let p = pres("gens: a b\nrels: a^2, b^3, (ab)^5");
        assert_eq!(todd_coxeter(&p, &[], 1000).unwrap(), todd_coxeter(&p, &[], 1000).unwrap());
    }
}
