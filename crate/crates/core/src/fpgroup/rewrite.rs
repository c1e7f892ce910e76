//! Reidemeister–Schreier rewriting.

use std::collections::{BTreeSet, VecDeque};

use super::coset_table::CosetTable;
use super::presentation::Presentation;
use super::word::{Letter, Word};
use super::FpError;

/// A presentation of the subgroup of a coset table on its Schreier
/// generators, with the data needed to rewrite further words.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    presentation: Presentation,
    table: CosetTable,
    transversal: Vec<Word>,
    /// `(coset, generator)` of each Schreier generator.
    schreier: Vec<(usize, usize)>,
    /// Schreier generator index per `(coset, generator)`, if not a tree edge.
    lookup: Vec<Option<usize>>,
}

impl SubgroupPresentation {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    /// Coset representatives; entry `c` is the word for coset `c`.
    pub fn transversal(&self) -> &[Word] {
        &self.transversal
    }

    /// `(coset, generator)` pairs labelling the Schreier generators.
    pub fn schreier_labels(&self) -> &[(usize, usize)] {
        &self.schreier
    }

    /// Schreier generator `k` as a word in the parent generators:
    /// `rep(c) x rep(c^x)^-1`.
    pub fn expand(&self, k: usize) -> Word {
        let (c, i) = self.schreier[k];
        let d = self.table.get(c, Letter::gen(i)).expect("complete table");
        self.transversal[c].concat(&Word::new([Letter::gen(i)])).concat(&self.transversal[d].inverse())
    }

    /// Rewrites a word of the parent group lying in the subgroup as a word
    /// in the Schreier generators.
    pub fn rewrite(&self, w: &Word) -> Result<Word, FpError> {
        let (end, out) = self.rewrite_from(0, w);
        if end != 0 {
            return Err(FpError::NotInSubgroup);
        }
        Ok(out)
    }

    fn rewrite_from(&self, start: usize, w: &Word) -> (usize, Word) {
        rewrite_along(&self.table, &self.lookup, start, w)
    }
}

fn rewrite_along(table: &CosetTable, lookup: &[Option<usize>], start: usize, w: &Word) -> (usize, Word) {
    let g = table.num_generators();
    let mut c = start;
    let mut out = Vec::new();
    for &l in w.letters() {
        let d = table.get(c, l).expect("complete table");
        let i = l.generator();
        if l.is_inverse() {
            if let Some(k) = lookup[d * g + i] {
                out.push(Letter::gen_inv(k));
            }
        } else if let Some(k) = lookup[c * g + i] {
            out.push(Letter::gen(k));
        }
        c = d;
    }
    (c, Word::new(out))
}

/// Presents the subgroup of a complete table on the Schreier generators of
/// a breadth-first transversal. Generator `x` leaving coset `c` along a
/// non-tree edge gives the Schreier generator named `x_c`; relators are
/// all relators traced from all cosets, freely reduced, without repeats.
pub fn reidemeister_schreier(pres: &Presentation, table: &CosetTable) -> Result<SubgroupPresentation, FpError> {
    table.verify(pres)?;
    let g = table.num_generators();
    let n = table.index();
    // tree[(c, i)]: whether the edge c --x_i--> c^x_i is in the spanning tree
    let mut tree = vec![false; n * g];
    let mut reps: Vec<Option<Word>> = vec![None; n];
    reps[0] = Some(Word::empty());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for col in 0..2 * g {
            let l = Letter(col as u32);
            let d = table.get(c, l).unwrap();
            if reps[d].is_none() {
                reps[d] = Some(reps[c].as_ref().unwrap().concat(&Word::new([l])));
                queue.push_back(d);
                if l.is_inverse() {
                    tree[d * g + l.generator()] = true;
                } else {
                    tree[c * g + l.generator()] = true;
                }
            }
        }
    }
    let transversal: Vec<Word> = reps.into_iter().map(Option::unwrap).collect();
    let mut schreier = Vec::new();
    let mut lookup = vec![None; n * g];
    let mut names = Vec::new();
    for c in 0..n {
        for i in 0..g {
            if !tree[c * g + i] {
                lookup[c * g + i] = Some(schreier.len());
                schreier.push((c, i));
                names.push(format!("{}_{c}", pres.generator_names()[i]));
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut relators = Vec::new();
    for c in 0..n {
        for r in pres.relators() {
            let (end, w) = rewrite_along(table, &lookup, c, r);
            debug_assert_eq!(end, c);
            if !w.is_empty() && seen.insert(w.clone()) {
                relators.push(w);
            }
        }
    }
    Ok(SubgroupPresentation {
        presentation: Presentation::new(names, relators)?,
        table: table.clone(),
        transversal,
        schreier,
        lookup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::{abelianization, todd_coxeter};

    fn pres(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    #[test]
    fn free_group_index_two() {
        let f2 = pres("gens: a b");
        let (a, b) = (Letter::gen(0), Letter::gen(1));
        let h = [Word::new([a]), Word::new([b, b]), Word::new([b, a, b.inverse()])];
        let t = todd_coxeter(&f2, &h, 100).unwrap();
        assert_eq!(t.index(), 2);
        let s = reidemeister_schreier(&f2, &t).unwrap();
        assert_eq!(s.presentation().num_generators(), 3);
        assert!(s.presentation().relators().is_empty());
    }

    #[test]
    fn infinite_dihedral_rotation_subgroup() {
        let p = pres("gens: a b\nrels: a^2, b^2");
        let t = todd_coxeter(&p, &[Word::new([Letter::gen(0), Letter::gen(1)])], 100).unwrap();
        let s = reidemeister_schreier(&p, &t).unwrap();
        let ab = abelianization(s.presentation());
        assert_eq!(ab.free_rank(), 1);
        assert!(ab.torsion().is_empty());
    }

    #[test]
    fn index_one_keeps_relators() {
        let p = pres("gens: a b\nrels: a^2, b^3, (ab)^5");
        let t = todd_coxeter(&p, &[Word::new([Letter::gen(0)]), Word::new([Letter::gen(1)])], 10).unwrap();
        let s = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(s.presentation().relators(), p.relators());
        assert_eq!(s.presentation().generator_names(), ["a_0", "b_0"]);
    }

    #[test]
    fn schreier_generators_lie_in_subgroup() {
        let p = pres("gens: a b\nrels: a^2, b^3, (ab)^5");
        let t = todd_coxeter(&p, &[Word::new([Letter::gen(1)])], 100).unwrap();
        let s = reidemeister_schreier(&p, &t).unwrap();
        for k in 0..s.presentation().num_generators() {
            let w = s.expand(k);
            assert_eq!(t.trace(0, &w), Some(0));
            assert_eq!(s.rewrite(&w).unwrap(), Word::new([Letter::gen(k)]));
        }
        // |H| * |G : H| = |G|
        let order = todd_coxeter(s.presentation(), &[], 1000).unwrap().index();
        assert_eq!(order * t.index(), 60);
    }
}
