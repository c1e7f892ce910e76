use std::collections::VecDeque;

use crate::permgroup::{PermGroup, Permutation};

use super::presentation::Presentation;
use super::word::{Letter, Word};
use super::FpError;

pub(crate) const UNDEF: u32 = u32::MAX;

/// The action of the generators on the right cosets of a subgroup.
///
/// Column `2i` holds the action of generator `i`, column `2i + 1` that of
/// its inverse. Cosets are numbered from 0, coset 0 being the subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetTable {
    num_gens: usize,
    rows: usize,
    data: Vec<u32>,
    subgroup: Vec<Word>,
}

impl CosetTable {
    pub(crate) fn from_raw(num_gens: usize, rows: usize, data: Vec<u32>, subgroup: Vec<Word>) -> Self {
        debug_assert_eq!(data.len(), rows * 2 * num_gens);
        CosetTable { num_gens, rows, data, subgroup }
    }

    /// Builds the table of a transitive action given by generator images.
    pub fn from_permutations(perms: &[Permutation]) -> Result<Self, FpError> {
        let n = perms.first().map_or(0, |p| p.degree());
        if perms.is_empty() || n == 0 {
            return Err(FpError::InvalidArgument("need at least one generator on a nonempty set".into()));
        }
        if perms.iter().any(|p| p.degree() != n) {
            return Err(FpError::InvalidArgument("generator degrees differ".into()));
        }
        let g = perms.len();
        let mut data = vec![UNDEF; n * 2 * g];
        for (i, p) in perms.iter().enumerate() {
            for c in 0..n {
                let d = p.apply(c);
                data[c * 2 * g + 2 * i] = d as u32;
                data[d * 2 * g + 2 * i + 1] = c as u32;
            }
        }
        let t = CosetTable { num_gens: g, rows: n, data, subgroup: Vec::new() };
        if !t.is_transitive() {
            return Err(FpError::InvalidArgument("action is not transitive".into()));
        }
        Ok(t.standardized())
    }

    pub fn num_generators(&self) -> usize {
        self.num_gens
    }

    /// Number of cosets.
    pub fn index(&self) -> usize {
        self.rows
    }

    pub fn subgroup_words(&self) -> &[Word] {
        &self.subgroup
    }

    pub(crate) fn with_subgroup(mut self, subgroup: Vec<Word>) -> Self {
        self.subgroup = subgroup;
        self
    }

    pub fn get(&self, coset: usize, letter: Letter) -> Option<usize> {
        let v = self.data[coset * 2 * self.num_gens + letter.column()];
        (v != UNDEF).then_some(v as usize)
    }

    pub fn is_complete(&self) -> bool {
        self.data.iter().all(|&v| v != UNDEF)
    }

    /// Row `c` as `(generator images, inverse images)` interleaved.
    pub fn row(&self, coset: usize) -> &[u32] {
        let w = 2 * self.num_gens;
        &self.data[coset * w..(coset + 1) * w]
    }

    /// Image of `coset` under `word`, if every step is defined.
    pub fn trace(&self, coset: usize, word: &Word) -> Option<usize> {
        word.letters().iter().try_fold(coset, |c, &l| self.get(c, l))
    }

    fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.rows];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(c) = queue.pop_front() {
            for &d in self.row(c) {
                if d != UNDEF && !seen[d as usize] {
                    seen[d as usize] = true;
                    count += 1;
                    queue.push_back(d as usize);
                }
            }
        }
        count == self.rows
    }

    /// Checks every structural invariant of a complete table against
    /// `pres`: entries defined, inverse columns consistent, action
    /// transitive, every relator closed at every coset and every subgroup
    /// generator closed at coset 0.
    pub fn verify(&self, pres: &Presentation) -> Result<(), FpError> {
        if pres.num_generators() != self.num_gens {
            return Err(FpError::BadTable("generator count differs from the presentation".into()));
        }
        if !self.is_complete() {
            return Err(FpError::IncompleteTable);
        }
        for c in 0..self.rows {
            for i in 0..self.num_gens {
                let d = self.get(c, Letter::gen(i)).unwrap();
                if self.get(d, Letter::gen_inv(i)) != Some(c) {
                    return Err(FpError::BadTable(format!("inverse column mismatch at coset {c}")));
                }
            }
        }
        if !self.is_transitive() {
            return Err(FpError::BadTable("action is not transitive".into()));
        }
        for r in pres.relators() {
            for c in 0..self.rows {
                if self.trace(c, r) != Some(c) {
                    return Err(FpError::BadTable(format!(
                        "relator {} fails at coset {c}",
                        pres.word_to_string(r)
                    )));
                }
            }
        }
        for w in &self.subgroup {
            if self.trace(0, w) != Some(0) {
                return Err(FpError::BadTable(format!("subgroup generator {} moves coset 0", pres.word_to_string(w))));
            }
        }
        Ok(())
    }

    /// Renumbers the cosets in order of first appearance when the table
    /// is read row by row from coset 0.
    pub fn standardized(&self) -> CosetTable {
        self.renumbered_from(0)
    }

    /// The standard table of the same action with `base` as coset 0; this
    /// is the table of the conjugate subgroup.
    pub fn renumbered_from(&self, base: usize) -> CosetTable {
        let cols = 2 * self.num_gens;
        let mut map = vec![UNDEF; self.rows];
        let mut order = Vec::with_capacity(self.rows);
        map[base] = 0;
        order.push(base);
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for x in 0..cols {
                let d = self.data[c * cols + x];
                if d != UNDEF && map[d as usize] == UNDEF {
                    map[d as usize] = order.len() as u32;
                    order.push(d as usize);
                }
            }
            i += 1;
        }
        let rows = order.len();
        let mut data = vec![UNDEF; rows * cols];
        for (new, &old) in order.iter().enumerate() {
            for x in 0..cols {
                let d = self.data[old * cols + x];
                if d != UNDEF {
                    data[new * cols + x] = map[d as usize];
                }
            }
        }
        CosetTable { num_gens: self.num_gens, rows, data, subgroup: self.subgroup.clone() }
    }

    /// Action of each generator as a permutation of the cosets.
    pub fn generator_permutations(&self) -> Result<Vec<Permutation>, FpError> {
        if !self.is_complete() {
            return Err(FpError::IncompleteTable);
        }
        (0..self.num_gens)
            .map(|i| {
                let images = (0..self.rows).map(|c| self.data[c * 2 * self.num_gens + 2 * i]).collect();
                Permutation::from_images(images).map_err(|e| FpError::BadTable(e.to_string()))
            })
            .collect()
    }

    /// The image of the group in the symmetric group on the cosets, if it
    /// has at most `cap` elements.
    pub fn action_group(&self, cap: usize) -> Result<Option<PermGroup>, FpError> {
        let gens = self.generator_permutations()?;
        Ok(PermGroup::close(self.rows, gens, cap).ok())
    }

    /// The subgroup is normal iff the action is regular, i.e. the image
    /// has exactly `index` elements.
    pub fn is_normal(&self) -> Result<bool, FpError> {
        Ok(self.action_group(self.rows)?.is_some_and(|g| g.order() == self.rows))
    }

    /// Normality decided by conjugating Schreier generators of the
    /// subgroup by each generator and tracing the result from coset 0.
    pub fn is_normal_by_conjugation(&self) -> Result<bool, FpError> {
        if !self.is_complete() {
            return Err(FpError::IncompleteTable);
        }
        let reps = self.transversal();
        let mut schreier = Vec::new();
        for c in 0..self.rows {
            for i in 0..self.num_gens {
                let d = self.get(c, Letter::gen(i)).unwrap();
                let w = reps[c].concat(&Word::new([Letter::gen(i)])).concat(&reps[d].inverse());
                if !w.is_empty() {
                    schreier.push(w);
                }
            }
        }
        for h in &schreier {
            for i in 0..self.num_gens {
                for l in [Letter::gen(i), Letter::gen_inv(i)] {
                    let x = Word::new([l]);
                    if self.trace(0, &h.conjugate_by(&x)) != Some(0) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Coset representatives along a breadth-first spanning tree read in
    /// row order: the representative of a coset is the first word reaching
    /// it. Entry `c` is the word for coset `c`.
    pub fn transversal(&self) -> Vec<Word> {
        let cols = 2 * self.num_gens;
        let mut reps: Vec<Option<Word>> = vec![None; self.rows];
        reps[0] = Some(Word::empty());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for x in 0..cols {
                let d = self.data[c * cols + x];
                if d != UNDEF && reps[d as usize].is_none() {
                    let w = reps[c].as_ref().unwrap().concat(&Word::new([Letter(x as u32)]));
                    reps[d as usize] = Some(w);
                    queue.push_back(d as usize);
                }
            }
        }
        reps.into_iter().map(|w| w.unwrap_or_default()).collect()
    }

    /// Number of cosets `b` whose renumbered table equals this one: the
    /// index of the subgroup in its normalizer.
    pub fn normalizer_index(&self) -> usize {
        let std = self.standardized();
        (0..self.rows).filter(|&b| self.renumbered_from(b) == std).count()
    }

    /// Order of the image of generator `i`.
    pub fn generator_order(&self, i: usize) -> Result<u64, FpError> {
        Ok(self.generator_permutations()?[i].order())
    }

    /// Rows as `(coset, image under each generator)` for serialization.
    pub fn generator_rows(&self) -> Vec<Vec<usize>> {
        (0..self.rows)
            .map(|c| (0..self.num_gens).map(|i| self.data[c * 2 * self.num_gens + 2 * i] as usize).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_regular() -> CosetTable {
        // S3 acting on itself: a = (0 1)(2 3)(4 5), b of order 3
        let a = Permutation::from_cycles(6, &[vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        let b = Permutation::from_cycles(6, &[vec![0, 2, 4], vec![1, 5, 3]]).unwrap();
        CosetTable::from_permutations(&[a, b]).unwrap()
    }

    #[test]
    fn regular_action_is_normal() {
        let pres = Presentation::parse("gens: a b\nrels: a^2, b^3, (ab)^2").unwrap();
        let t = s3_regular();
        t.verify(&pres).unwrap();
        assert!(t.is_normal().unwrap());
        assert!(t.is_normal_by_conjugation().unwrap());
        assert_eq!(t.normalizer_index(), 6);
    }

    #[test]
    fn point_stabilizer_is_not_normal() {
        let a = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let t = CosetTable::from_permutations(&[a, b]).unwrap();
        assert!(!t.is_normal().unwrap());
        assert!(!t.is_normal_by_conjugation().unwrap());
        assert_eq!(t.normalizer_index(), 1);
    }

    #[test]
    fn transversal_reaches_each_coset() {
        let t = s3_regular();
        for (c, w) in t.transversal().iter().enumerate() {
            assert_eq!(t.trace(0, w), Some(c));
        }
    }

    #[test]
    fn standard_form_is_idempotent() {
        let t = s3_regular();
        assert_eq!(t.standardized(), t);
        for b in 0..6 {
            let r = t.renumbered_from(b);
            assert_eq!(r.standardized(), r);
        }
    }

    #[test]
    fn bad_tables_are_rejected() {
        let pres = Presentation::parse("gens: a b\nrels: a^2, b^2").unwrap();
        assert!(s3_regular().verify(&pres).is_err());
        let a = Permutation::from_cycles(2, &[]).unwrap();
        assert!(CosetTable::from_permutations(&[a.clone(), a]).is_err());
    }
}
