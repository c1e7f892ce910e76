use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;

use super::{PermError, Permutation};

/// Default bound on the number of elements materialised by [`PermGroup::close`].
pub const DEFAULT_ELEMENT_CAP: usize = 100_000;
/// Default bound on `|G|` for [`PermGroup::normal_subgroups`].
pub const DEFAULT_NORMAL_SUBGROUP_CAP: usize = 2000;

/// A finite permutation group with its full element list, sorted
/// lexicographically by image sequence.
#[derive(Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

/// Which element orders generate a [`PermGroup::torsion_subgroup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionSelector {
    /// Odd order: `O(G)`.
    Odd,
    /// Order dividing `a`: `A_a(G)`.
    Divides(u64),
    /// Odd order dividing `a`: `O_a(G)`.
    OddAndDivides(u64),
}

impl TorsionSelector {
    fn accepts(self, order: u64) -> bool {
        match self {
            TorsionSelector::Odd => order % 2 == 1,
            TorsionSelector::Divides(a) => a % order == 0,
            TorsionSelector::OddAndDivides(a) => order % 2 == 1 && a % order == 0,
        }
    }
}

/// Cyclic / dihedral recognition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupShape {
    /// Cyclic of the given order.
    Cyclic(usize),
    /// Dihedral of order `2n`, carrying `n`.
    Dihedral(usize),
    Other,
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupShape::Cyclic(n) => write!(f, "C{n}"),
            GroupShape::Dihedral(n) => write!(f, "D{}", 2 * n),
            GroupShape::Other => write!(f, "other"),
        }
    }
}

impl PermGroup {
    /// Breadth-first closure of `generators` on `degree` points.
    pub fn close(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<Self, PermError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch { expected: degree, found: g.degree() });
        }
        let identity = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(identity.clone());
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = &x * g;
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(PermError::TooLarge { cap });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort_unstable();
        Ok(PermGroup { degree, generators, elements })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new(), elements: vec![Permutation::identity(degree)] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index_of(g).is_some()
    }

    /// Position of `g` in [`PermGroup::elements`].
    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|g| other.contains(g))
    }

    /// Closure of `generators` inside this group.
    pub fn subgroup(&self, generators: Vec<Permutation>) -> Result<PermGroup, PermError> {
        if let Some(g) = generators.iter().find(|g| !self.contains(g)) {
            return Err(PermError::NotSubgroup(format!("{g} is not in the group")));
        }
        PermGroup::close(self.degree, generators, self.order())
    }

    /// Subgroup generated by `candidates`, keeping only generators that
    /// enlarge the group built so far.
    pub fn subgroup_generated_by<'a, I>(&self, candidates: I) -> PermGroup
    where
        I: IntoIterator<Item = &'a Permutation>,
    {
        let mut h = PermGroup::trivial(self.degree);
        for g in candidates {
            if !h.contains(g) {
                let mut gens = h.generators.clone();
                gens.push(g.clone());
                h = self.subgroup(gens).expect("candidates lie in the group");
            }
        }
        h
    }

    /// Subgroup generated by every element whose order matches `selector`.
    pub fn torsion_subgroup(&self, selector: TorsionSelector) -> PermGroup {
        self.subgroup_generated_by(self.elements.iter().filter(|g| selector.accepts(g.order())))
    }

    pub fn is_normal(&self, sub: &PermGroup) -> Result<bool, PermError> {
        if !sub.is_subgroup_of(self) {
            return Err(PermError::NotSubgroup("not contained in the group".into()));
        }
        Ok(self.normalises(sub))
    }

    fn normalises(&self, sub: &PermGroup) -> bool {
        sub.generators
            .iter()
            .all(|n| self.generators.iter().all(|g| sub.contains(&n.conjugate_by(g))))
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermGroup, PermError> {
        let mut n = self.subgroup(seeds.to_vec())?;
        loop {
            let fresh = n
                .generators
                .iter()
                .flat_map(|x| self.generators.iter().map(move |g| x.conjugate_by(g)))
                .find(|y| !n.contains(y));
            match fresh {
                None => return Ok(n),
                Some(y) => {
                    let mut gens = n.generators.clone();
                    gens.push(y);
                    n = self.subgroup(gens)?;
                }
            }
        }
    }

    pub fn centralizer_of(&self, elements: &[Permutation]) -> PermGroup {
        let gens: Vec<&Permutation> = self
            .elements
            .iter()
            .filter(|g| elements.iter().all(|x| (*g * x) == (x * *g)))
            .collect();
        self.subgroup_generated_by(gens)
    }

    /// Conjugacy classes as sorted element-index lists, ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = Vec::new();
        for i in 0..self.order() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members: Vec<usize> = self
                .elements
                .iter()
                .map(|h| self.index_of(&self.elements[i].conjugate_by(h)).expect("closed"))
                .collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = id;
            }
            classes.push(members);
        }
        classes
    }

    /// Every normal subgroup exactly once, ordered by order then elements.
    /// Normal subgroups are the joins of normal closures of single elements.
    pub fn normal_subgroups(&self, cap: usize) -> Result<Vec<PermGroup>, PermError> {
        if self.order() > cap {
            return Err(PermError::TooLarge { cap });
        }
        let mut found: Vec<PermGroup> = Vec::new();
        let push = |found: &mut Vec<PermGroup>, n: PermGroup| -> bool {
            if found.iter().any(|m| m.elements == n.elements) {
                false
            } else {
                found.push(n);
                true
            }
        };
        push(&mut found, PermGroup::trivial(self.degree));
        for class in self.conjugacy_classes() {
            let n = self.normal_closure(std::slice::from_ref(&self.elements[class[0]]))?;
            push(&mut found, n);
        }
        let atoms = found.len();
        let mut i = 0;
        while i < found.len() {
            for j in 1..atoms {
                if found[j].is_subgroup_of(&found[i]) {
                    continue;
                }
                let mut gens = found[i].generators.clone();
                gens.extend(found[j].generators.iter().cloned());
                let join = self.subgroup(gens)?;
                push(&mut found, join);
            }
            i += 1;
        }
        found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        Ok(found)
    }

    /// Action on the cosets of the normal subgroup `n`.
    pub fn quotient(&self, n: &PermGroup) -> Result<Quotient<'_>, PermError> {
        if !self.is_normal(n)? {
            return Err(PermError::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for i in 0..self.order() {
            if coset_of[i] != usize::MAX {
                continue;
            }
            let c = reps.len();
            for k in &n.elements {
                let j = self.index_of(&(k * &self.elements[i])).expect("closed");
                coset_of[j] = c;
            }
            reps.push(i);
        }
        let mut q = Quotient { parent: self, coset_of, reps, group: PermGroup::trivial(1) };
        let images: Vec<Permutation> = self.generators.iter().map(|g| q.image(g)).collect();
        q.group = PermGroup::close(q.reps.len(), images, self.order())?;
        Ok(q)
    }

    pub fn shape(&self) -> GroupShape {
        let order = self.order();
        let orders: Vec<u64> = self.elements.iter().map(Permutation::order).collect();
        if orders.iter().any(|&o| o as usize == order) {
            return GroupShape::Cyclic(order);
        }
        if order.is_multiple_of(2) {
            let n = order / 2;
            for (c, _) in self.elements.iter().zip(&orders).filter(|(_, &o)| o as usize == n) {
                let cyclic = self.subgroup(vec![c.clone()]).expect("element of the group");
                let c_inv = c.inverse();
                let inverts = self.elements.iter().zip(&orders).any(|(b, &o)| {
                    o <= 2 && !cyclic.contains(b) && c.conjugate_by(b) == c_inv
                });
                if inverts {
                    return GroupShape::Dihedral(n);
                }
            }
        }
        GroupShape::Other
    }

    pub fn exponent(&self) -> u64 {
        self.elements.iter().fold(1, |acc, g| acc.lcm(&g.order()))
    }

    /// Orbits of the generators on points, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for g in &self.generators {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    pub fn stabilizer(&self, point: usize) -> PermGroup {
        self.subgroup_generated_by(self.elements.iter().filter(|g| g.apply(point) == point))
    }

    /// The group induced on `points`, which must be a union of orbits of
    /// this group. Point `points[i]` becomes point `i`.
    pub fn induced_on(&self, points: &[usize]) -> Result<PermGroup, PermError> {
        let mut pos = vec![usize::MAX; self.degree];
        for (i, &p) in points.iter().enumerate() {
            pos[p] = i;
        }
        let restrict = |g: &Permutation| -> Result<Permutation, PermError> {
            let images = points
                .iter()
                .map(|&p| match pos[g.apply(p)] {
                    usize::MAX => Err(PermError::NotSubgroup("point set is not invariant".into())),
                    i => Ok(i as u32),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Permutation::from_images(images)
        };
        let gens = self.generators.iter().map(restrict).collect::<Result<Vec<_>, _>>()?;
        PermGroup::close(points.len(), gens, self.order())
    }

    /// Relabels points by `relabel`: each element `g` becomes `relabel^-1 g relabel`.
    pub fn conjugate(&self, relabel: &Permutation) -> PermGroup {
        let gens = self.generators.iter().map(|g| g.conjugate_by(relabel)).collect();
        let mut elements: Vec<Permutation> =
            self.elements.iter().map(|g| g.conjugate_by(relabel)).collect();
        elements.sort_unstable();
        PermGroup { degree: self.degree, generators: gens, elements }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(order {}, degree {}, gens {:?})", self.order(), self.degree, self.generators)
    }
}

/// `G/N` realised as the action of `G` on the cosets of `N`.
pub struct Quotient<'a> {
    parent: &'a PermGroup,
    coset_of: Vec<usize>,
    reps: Vec<usize>,
    group: PermGroup,
}

impl Quotient<'_> {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn into_group(self) -> PermGroup {
        self.group
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Coset number of a parent element.
    pub fn coset_of(&self, g: &Permutation) -> Option<usize> {
        self.parent.index_of(g).map(|i| self.coset_of[i])
    }

    /// Image of a parent element in the quotient.
    pub fn image(&self, g: &Permutation) -> Permutation {
        let images = self
            .reps
            .iter()
            .map(|&r| {
                let moved = &self.parent.elements[r] * g;
                self.coset_of(&moved).expect("element of the parent") as u32
            })
            .collect();
        Permutation::from_images(images).expect("coset action is a bijection")
    }

    /// Image of a parent subgroup, as a subgroup of [`Quotient::group`].
    pub fn image_of(&self, sub: &PermGroup) -> PermGroup {
        let gens: Vec<Permutation> = sub.generators.iter().map(|g| self.image(g)).collect();
        self.group.subgroup(gens).expect("images lie in the quotient")
    }
}
