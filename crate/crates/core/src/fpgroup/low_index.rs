//! Low-index subgroup search by backtracking over partial coset tables.
//!
//! Tables are filled at their first undefined entry in row order, so every
//! table the search produces is already in standard form. In
//! [`SearchMode::AllClasses`] a branch is cut as soon as renumbering from
//! some other coset gives a smaller table, which leaves one table per
//! conjugacy class. [`SearchMode::NormalOnly`] instead demands that
//! renumbering from every coset gives the same table, which holds exactly
//! for normal subgroups, and uses this to fill entries early.

use crate::exec::Execution;

use super::coset_table::{CosetTable, UNDEF};
use super::presentation::Presentation;
use super::word::Letter;
use super::FpError;

pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SearchMode {
    /// One subgroup per conjugacy class.
    #[default]
    AllClasses,
    /// Normal subgroups only.
    NormalOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub mode: SearchMode,
    /// Node budget of each independent search task.
    pub node_budget: u64,
    pub exec: Execution,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { mode: SearchMode::AllClasses, node_budget: DEFAULT_NODE_BUDGET, exec: Execution::Sequential }
    }
}

impl SearchConfig {
    pub fn normal() -> Self {
        SearchConfig { mode: SearchMode::NormalOnly, ..Default::default() }
    }

    pub fn with_exec(self, exec: Execution) -> Self {
        SearchConfig { exec, ..self }
    }

    pub fn with_budget(self, node_budget: u64) -> Self {
        SearchConfig { node_budget, ..self }
    }
}

/// Result of a low-index search. Tables are standardized, verified and
/// sorted by index and then entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSearch {
    pub tables: Vec<CosetTable>,
    /// False when some search task ran out of budget; `tables` is then a
    /// subset of the true answer.
    pub complete: bool,
    pub nodes: u64,
}

/// Searches subgroups of index at most `max_index`.
pub fn low_index_subgroups(
    pres: &Presentation,
    max_index: usize,
    config: &SearchConfig,
) -> Result<SubgroupSearch, FpError> {
    if max_index == 0 {
        return Err(FpError::InvalidArgument("max_index must be at least 1".into()));
    }
    if max_index >= UNDEF as usize {
        return Err(FpError::InvalidArgument("max_index too large".into()));
    }
    let ctx = Context::new(pres, max_index, config.mode);

    // Expand breadth-first into a frontier of independent tasks.
    const FRONTIER: usize = 256;
    let mut found = Vec::new();
    let mut nodes = 0u64;
    let mut frontier = vec![State::root(&ctx)];
    let mut rounds = 0;
    let mut complete = true;
    while frontier.len() < FRONTIER && rounds < 64 && !frontier.is_empty() {
        let mut next = Vec::new();
        let mut grew = false;
        for s in frontier {
            nodes += 1;
            if nodes > config.node_budget {
                complete = false;
                break;
            }
            match ctx.expand(&s) {
                Expansion::Complete => found.push(s),
                Expansion::Children(ch) => {
                    grew = true;
                    next.extend(ch)
                }
            }
        }
        frontier = next;
        rounds += 1;
        if !complete {
            frontier.clear();
        }
        if !grew {
            break;
        }
    }

    let budget = config.node_budget;
    let results = config.exec.map(&frontier, |s| {
        let mut out = Vec::new();
        let mut count = 0u64;
        let ok = ctx.dfs(s.clone(), &mut out, &mut count, budget);
        (out, count, ok)
    });
    for (out, count, ok) in results {
        found.extend(out);
        nodes += count;
        complete &= ok;
    }

    let mut tables = Vec::with_capacity(found.len());
    for s in found {
        let t = s.into_table(&ctx);
        t.verify(pres)?;
        if ctx.mode == SearchMode::NormalOnly && !t.is_normal()? {
            return Err(FpError::BadTable("search produced a non-normal table".into()));
        }
        tables.push(t);
    }
    tables.sort();
    Ok(SubgroupSearch { tables, complete, nodes })
}

struct Context {
    cols: usize,
    max: usize,
    mode: SearchMode,
    /// Cyclic conjugates of relators and their inverses, by first letter.
    rotations: Vec<Vec<Vec<Letter>>>,
}

#[derive(Clone)]
struct State {
    n: usize,
    table: Vec<u32>,
}

enum Expansion {
    Complete,
    Children(Vec<State>),
}

enum Cmp {
    Smaller,
    Larger,
    Equal,
    Unknown,
}

impl Context {
    fn new(pres: &Presentation, max: usize, mode: SearchMode) -> Self {
        let cols = 2 * pres.num_generators();
        let mut rotations: Vec<Vec<Vec<Letter>>> = vec![Vec::new(); cols];
        for r in pres.relators() {
            let r = r.cyclically_reduced();
            for w in [r.clone(), r.inverse()] {
                let l = w.letters();
                for k in 0..l.len() {
                    let rot: Vec<Letter> = l[k..].iter().chain(&l[..k]).copied().collect();
                    let bucket = &mut rotations[rot[0].column()];
                    if !bucket.contains(&rot) {
                        bucket.push(rot);
                    }
                }
            }
        }
        Context { cols, max, mode, rotations }
    }

    fn dfs(&self, s: State, out: &mut Vec<State>, count: &mut u64, budget: u64) -> bool {
        *count += 1;
        if *count > budget {
            return false;
        }
        match self.expand(&s) {
            Expansion::Complete => {
                out.push(s);
                true
            }
            Expansion::Children(children) => {
                for c in children {
                    if !self.dfs(c, out, count, budget) {
                        return false;
                    }
                }
                true
            }
        }
    }

    fn expand(&self, s: &State) -> Expansion {
        let Some(pos) = s.table[..s.n * self.cols].iter().position(|&v| v == UNDEF) else {
            return Expansion::Complete;
        };
        let (c, x) = (pos / self.cols, pos % self.cols);
        let mut children = Vec::new();
        let targets = (0..s.n).filter(|&d| s.get(self, d, x ^ 1) == UNDEF);
        let fresh = (s.n < self.max).then_some(s.n);
        for d in targets.chain(fresh) {
            let mut child = s.clone();
            if d == child.n {
                child.n += 1;
            }
            if self.assign(&mut child, c, x, d as u32) {
                children.push(child);
            }
        }
        Expansion::Children(children)
    }

    /// Sets `c^x = d`, closes under deductions and checks the mode's
    /// pruning condition.
    fn assign(&self, s: &mut State, c: usize, x: usize, d: u32) -> bool {
        s.set(self, c, x, d);
        let mut queue = vec![(c as u32, x)];
        loop {
            if !self.deduce(s, &mut queue) {
                return false;
            }
            match self.mode {
                SearchMode::AllClasses => return self.is_canonical(s),
                SearchMode::NormalOnly => match self.regularize(s, &mut queue) {
                    None => return false,
                    Some(false) => return true,
                    Some(true) => {}
                },
            }
        }
    }

    fn deduce(&self, s: &mut State, queue: &mut Vec<(u32, usize)>) -> bool {
        while let Some((c, x)) = queue.pop() {
            let d = s.get(self, c as usize, x);
            for rot in &self.rotations[x] {
                if !self.scan(s, c, rot, queue) {
                    return false;
                }
            }
            for rot in &self.rotations[x ^ 1] {
                if !self.scan(s, d, rot, queue) {
                    return false;
                }
            }
        }
        true
    }

    fn scan(&self, s: &mut State, c: u32, w: &[Letter], queue: &mut Vec<(u32, usize)>) -> bool {
        let n = w.len();
        let mut f = c;
        let mut i = 0;
        while i < n {
            let t = s.get(self, f as usize, w[i].column());
            if t == UNDEF {
                break;
            }
            f = t;
            i += 1;
        }
        if i == n {
            return f == c;
        }
        let mut b = c;
        let mut j = n;
        while j > i {
            let t = s.get(self, b as usize, w[j - 1].inverse().column());
            if t == UNDEF {
                break;
            }
            b = t;
            j -= 1;
        }
        if j == i {
            return f == b;
        }
        if j == i + 1 {
            let x = w[i].column();
            s.set(self, f as usize, x, b);
            queue.push((f, x));
        }
        true
    }

    fn compare_from(&self, s: &State, beta: usize) -> Cmp {
        let mut map = vec![UNDEF; s.n];
        let mut inv = Vec::with_capacity(s.n);
        map[beta] = 0;
        inv.push(beta);
        for i in 0..s.n {
            let Some(&g) = inv.get(i) else {
                return Cmp::Unknown;
            };
            for x in 0..self.cols {
                let t = s.get(self, i, x);
                let u = s.get(self, g, x);
                if t == UNDEF || u == UNDEF {
                    return Cmp::Unknown;
                }
                if map[u as usize] == UNDEF {
                    map[u as usize] = inv.len() as u32;
                    inv.push(u as usize);
                }
                match map[u as usize].cmp(&t) {
                    std::cmp::Ordering::Less => return Cmp::Smaller,
                    std::cmp::Ordering::Greater => return Cmp::Larger,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        Cmp::Equal
    }

    fn is_canonical(&self, s: &State) -> bool {
        (1..s.n).all(|b| !matches!(self.compare_from(s, b), Cmp::Smaller))
    }

    /// For each coset `b`, grows the partial map `0 -> b` that a regular
    /// action forces, filling table entries it determines. `None` on
    /// contradiction, otherwise whether anything was filled.
    fn regularize(&self, s: &mut State, queue: &mut Vec<(u32, usize)>) -> Option<bool> {
        let mut changed = false;
        let mut phi = vec![UNDEF; s.n];
        let mut phinv = vec![UNDEF; s.n];
        let mut stack = Vec::with_capacity(s.n);
        for beta in 1..s.n {
            loop {
                phi.fill(UNDEF);
                phinv.fill(UNDEF);
                phi[0] = beta as u32;
                phinv[beta] = 0;
                stack.clear();
                stack.push(0usize);
                let mut filled = false;
                while let Some(i) = stack.pop() {
                    let pi = phi[i] as usize;
                    for x in 0..self.cols {
                        let a = s.get(self, i, x);
                        let b = s.get(self, pi, x);
                        match (a != UNDEF, b != UNDEF) {
                            (true, true) => {
                                let pa = phi[a as usize];
                                if pa != UNDEF {
                                    if pa != b {
                                        return None;
                                    }
                                } else if phinv[b as usize] != UNDEF {
                                    return None;
                                } else {
                                    phi[a as usize] = b;
                                    phinv[b as usize] = a;
                                    stack.push(a as usize);
                                }
                            }
                            (true, false) => {
                                let pa = phi[a as usize];
                                if pa != UNDEF {
                                    if s.get(self, pa as usize, x ^ 1) != UNDEF {
                                        return None;
                                    }
                                    s.set(self, pi, x, pa);
                                    queue.push((pi as u32, x));
                                    filled = true;
                                }
                            }
                            (false, true) => {
                                let qb = phinv[b as usize];
                                if qb != UNDEF {
                                    if s.get(self, qb as usize, x ^ 1) != UNDEF {
                                        return None;
                                    }
                                    s.set(self, i, x, qb);
                                    queue.push((i as u32, x));
                                    filled = true;
                                }
                            }
                            (false, false) => {}
                        }
                    }
                }
                if !filled {
                    break;
                }
                changed = true;
                if !queue.is_empty() {
                    // let relator deductions run before the next pass
                    return Some(true);
                }
            }
        }
        Some(changed)
    }
}

impl State {
    fn root(ctx: &Context) -> State {
        State { n: 1, table: vec![UNDEF; ctx.max * ctx.cols] }
    }

    #[inline]
    fn get(&self, ctx: &Context, c: usize, x: usize) -> u32 {
        self.table[c * ctx.cols + x]
    }

    #[inline]
    fn set(&mut self, ctx: &Context, c: usize, x: usize, d: u32) {
        self.table[c * ctx.cols + x] = d;
        self.table[d as usize * ctx.cols + (x ^ 1)] = c as u32;
    }

    fn into_table(mut self, ctx: &Context) -> CosetTable {
        self.table.truncate(self.n * ctx.cols);
        CosetTable::from_raw(ctx.cols / 2, self.n, self.table, Vec::new())
    }
}
