//! Finite posets with cached reachability.
//!
//! Elements are opaque string identifiers. After construction every element
//! is addressed by its index in the canonical order `(topo_rank, identifier)`,
//! which is a linear extension of the partial order; every derived matrix and
//! report follows this order.

use std::collections::{HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Largest set accepted by [`Poset::hat`].
pub const HAT_LIMIT: usize = 20;
/// Largest poset produced by [`Poset::grid`].
pub const GRID_LIMIT: usize = 10_000;

/// A subset of a poset's elements, iterated in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(FixedBitSet);

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        ElementSet(FixedBitSet::with_capacity(n))
    }

    pub fn full(n: usize) -> Self {
        let mut b = FixedBitSet::with_capacity(n);
        b.insert_range(..);
        ElementSet(b)
    }

    pub fn from_indices(n: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for i in idx {
            s.insert(i);
        }
        s
    }

    pub fn singleton(n: usize, i: usize) -> Self {
        Self::from_indices(n, [i])
    }

    /// Size of the host poset.
    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.0.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.0.set(i, false);
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.minimum()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut b = self.0.clone();
        b.union_with(&other.0);
        ElementSet(b)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut b = self.0.clone();
        b.intersect_with(&other.0);
        ElementSet(b)
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        let mut b = self.0.clone();
        b.difference_with(&other.0);
        ElementSet(b)
    }

    pub(crate) fn bits(&self) -> &FixedBitSet {
        &self.0
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Result of checking weak boundedness and mub-completeness by enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyMReport {
    pub weakly_bounded: bool,
    pub mub_complete: bool,
    pub subsets_checked: usize,
    /// True when every nonempty subset was enumerated.
    pub exhaustive: bool,
    pub max_subset_size: usize,
}

/// A finite partially ordered set.
#[derive(Clone)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    rank: Vec<usize>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    covers: Vec<(usize, usize)>,
    cover_index: HashMap<(usize, usize), usize>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.covers == other.covers
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<(&str, &str)> = self
            .covers
            .iter()
            .map(|&(a, b)| (self.name(a), self.name(b)))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.names)
            .field("covers", &covers)
            .finish()
    }
}

impl Poset {
    /// Builds the poset generated by `relations` (each pair `(a, b)` meaning
    /// `a <= b`), storing the transitive reduction as covers.
    pub fn new<S: AsRef<str>>(elements: &[S], relations: &[(S, S)]) -> Result<Self> {
        let n = elements.len();
        let mut index = HashMap::with_capacity(n);
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.as_ref().to_string(), i).is_some() {
                return Err(Error::DuplicateElement(e.as_ref().to_string()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (a, b) in relations {
            let (a, b) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            if a != b && !succ[a].contains(&b) {
                succ[a].push(b);
            }
        }

        // Kahn's algorithm; leftovers sit on a cycle.
        let mut indeg = vec![0usize; n];
        for s in &succ {
            for &b in s {
                indeg[b] += 1;
            }
        }
        let mut order: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    order.push(w);
                }
            }
        }
        if order.len() < n {
            let a = (0..n).find(|&i| indeg[i] > 0).unwrap();
            let b = succ[a].iter().copied().find(|&w| indeg[w] > 0).unwrap_or(a);
            return Err(Error::Cycle(
                elements[a].as_ref().to_string(),
                elements[b].as_ref().to_string(),
            ));
        }

        let mut rank = vec![0usize; n];
        for &v in &order {
            for &w in &succ[v] {
                rank[w] = rank[w].max(rank[v] + 1);
            }
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &v in order.iter().rev() {
            let mut bits = FixedBitSet::with_capacity(n);
            bits.insert(v);
            for &w in &succ[v] {
                bits.union_with(&up[w]);
            }
            up[v] = bits;
        }
        // The transitive reduction of a DAG is a subgraph of it.
        let mut cover_pairs = Vec::new();
        for a in 0..n {
            for &b in &succ[a] {
                let implied = succ[a].iter().any(|&c| c != b && up[c].contains(b));
                if !implied {
                    cover_pairs.push((a, b));
                }
            }
        }

        // Reindex into canonical order.
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&x, &y| {
            rank[x]
                .cmp(&rank[y])
                .then_with(|| elements[x].as_ref().cmp(elements[y].as_ref()))
        });
        let mut new_of = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            new_of[old] = new;
        }
        let names: Vec<String> = perm.iter().map(|&o| elements[o].as_ref().to_string()).collect();
        let rank: Vec<usize> = perm.iter().map(|&o| rank[o]).collect();
        let up: Vec<FixedBitSet> = perm
            .iter()
            .map(|&o| {
                let mut b = FixedBitSet::with_capacity(n);
                for j in up[o].ones() {
                    b.insert(new_of[j]);
                }
                b
            })
            .collect();
        let covers: Vec<(usize, usize)> = {
            let mut c: Vec<(usize, usize)> = cover_pairs
                .into_iter()
                .map(|(a, b)| (new_of[a], new_of[b]))
                .collect();
            c.sort_unstable();
            c
        };
        Ok(Self::assemble(names, rank, up, covers))
    }

    fn assemble(
        names: Vec<String>,
        rank: Vec<usize>,
        up: Vec<FixedBitSet>,
        covers: Vec<(usize, usize)>,
    ) -> Self {
        let n = names.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, bits) in up.iter().enumerate() {
            for b in bits.ones() {
                down[b].insert(a);
            }
        }
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        let mut cover_index = HashMap::with_capacity(covers.len());
        for (k, &(a, b)) in covers.iter().enumerate() {
            upper_covers[a].push(b);
            lower_covers[b].push(a);
            cover_index.insert((a, b), k);
        }
        let index = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Poset {
            names,
            index,
            rank,
            up,
            down,
            covers,
            cover_index,
            upper_covers,
            lower_covers,
        }
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let rels: Vec<(String, String)> = (1..n).map(|i| (names[i - 1].clone(), names[i].clone())).collect();
        Self::new(&names, &rels).expect("chains are acyclic")
    }

    /// Product of chains with componentwise order; identifiers are
    /// coordinate tuples such as `(1,0)`.
    pub fn grid(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Shape("grid dimensions must be positive".into()));
        }
        let total = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .filter(|&t| t <= GRID_LIMIT)
            .ok_or(Error::TooLarge {
                what: "grid",
                size: dims.iter().fold(1usize, |a, &d| a.saturating_mul(d)),
                limit: GRID_LIMIT,
            })?;
        let coords: Vec<Vec<usize>> = (0..total)
            .map(|mut k| {
                dims.iter()
                    .map(|&d| {
                        let c = k % d;
                        k /= d;
                        c
                    })
                    .collect()
            })
            .collect();
        let names: Vec<String> = coords.iter().map(|c| tuple_id(c)).collect();
        let mut rels = Vec::new();
        let mut stride = 1;
        for (axis, &d) in dims.iter().enumerate() {
            for (k, c) in coords.iter().enumerate() {
                if c[axis] + 1 < d {
                    rels.push((names[k].clone(), names[k + stride].clone()));
                }
            }
            stride *= d;
        }
        Self::new(&names, &rels)
    }

    /// A seeded random poset on `p0..p{n-1}`: each pair `i < j` is related
    /// independently with probability `density` before closure.
    pub fn random(n: usize, density: f64, seed: u64) -> Self {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let mut rels = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(density) {
                    rels.push((names[i].clone(), names[j].clone()));
                }
            }
        }
        Self::new(&names, &rels).expect("relations follow index order")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn topo_rank(&self, i: usize) -> usize {
        self.rank[i]
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn cover_index(&self, a: usize, b: usize) -> Option<usize> {
        self.cover_index.get(&(a, b)).copied()
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    /// `{c : a <= c}` as a set.
    pub fn principal_up(&self, a: usize) -> ElementSet {
        ElementSet(self.up[a].clone())
    }

    /// `{c : c <= a}` as a set.
    pub fn principal_down(&self, a: usize) -> ElementSet {
        ElementSet(self.down[a].clone())
    }

    /// `{c : c < a}` as a set.
    pub fn strict_down(&self, a: usize) -> ElementSet {
        let mut s = self.principal_down(a);
        s.remove(a);
        s
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.len())
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn set_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<ElementSet> {
        let mut s = self.empty_set();
        for n in names {
            s.insert(self.index_of(n.as_ref())?);
        }
        Ok(s)
    }

    pub fn names_of(&self, s: &ElementSet) -> Vec<String> {
        s.iter().map(|i| self.names[i].clone()).collect()
    }

    pub fn up_set(&self, s: &ElementSet) -> ElementSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        for i in s.iter() {
            out.union_with(&self.up[i]);
        }
        ElementSet(out)
    }

    pub fn down_set(&self, s: &ElementSet) -> ElementSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        for i in s.iter() {
            out.union_with(&self.down[i]);
        }
        ElementSet(out)
    }

    /// Elements of `s` with nothing of `s` strictly below them.
    pub fn minimal_elements(&self, s: &ElementSet) -> ElementSet {
        let mut out = self.empty_set();
        for u in s.iter() {
            if self.down[u].intersection(s.bits()).count() == 1 {
                out.insert(u);
            }
        }
        out
    }

    pub fn maximal_elements(&self, s: &ElementSet) -> ElementSet {
        let mut out = self.empty_set();
        for u in s.iter() {
            if self.up[u].intersection(s.bits()).count() == 1 {
                out.insert(u);
            }
        }
        out
    }

    /// Common upper bounds of `s`; the whole poset when `s` is empty.
    pub fn upper_bounds(&self, s: &ElementSet) -> ElementSet {
        let mut out = self.full_set();
        for i in s.iter() {
            out.0.intersect_with(&self.up[i]);
        }
        out
    }

    /// Minimal upper bounds of a nonempty set.
    pub fn mub(&self, s: &ElementSet) -> Result<ElementSet> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(self.minimal_elements(&self.upper_bounds(s)))
    }

    /// Union of `mub(S')` over all nonempty `S' ⊆ s`.
    pub fn hat(&self, s: &ElementSet) -> Result<ElementSet> {
        let members = s.to_vec();
        if members.len() > HAT_LIMIT {
            return Err(Error::TooLarge {
                what: "hat argument",
                size: members.len(),
                limit: HAT_LIMIT,
            });
        }
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut out = self.empty_set();
        // Depth-first over subsets; an empty bound set prunes every superset.
        let mut stack: Vec<(usize, FixedBitSet)> = Vec::new();
        for (k, &m) in members.iter().enumerate() {
            stack.push((k + 1, self.up[m].clone()));
        }
        while let Some((next, bounds)) = stack.pop() {
            if bounds.is_clear() {
                continue;
            }
            for (k, &m) in members.iter().enumerate().skip(next) {
                let mut b = bounds.clone();
                b.intersect_with(&self.up[m]);
                stack.push((k + 1, b));
            }
            if seen.insert(bounds.clone()) {
                let mins = self.minimal_elements(&ElementSet(bounds));
                out.0.union_with(&mins.0);
            }
        }
        Ok(out)
    }

    /// Checks weak boundedness and mub-completeness over every nonempty subset
    /// of size at most `max_size` (all subsets when `None` and the poset has
    /// at most 15 elements, otherwise subsets of size at most 3).
    pub fn check_property_m(&self, max_size: Option<usize>) -> PropertyMReport {
        let n = self.len();
        let max_size = max_size.unwrap_or(if n <= 15 { n } else { 3 }).min(n);
        let mut report = PropertyMReport {
            weakly_bounded: true,
            mub_complete: true,
            subsets_checked: 0,
            exhaustive: max_size == n,
            max_subset_size: max_size,
        };
        let mut stack: Vec<(usize, usize, FixedBitSet)> = (0..n)
            .map(|i| (i + 1, 1, self.up[i].clone()))
            .collect();
        while let Some((next, size, bounds)) = stack.pop() {
            report.subsets_checked += 1;
            let bset = ElementSet(bounds);
            let mubs = self.minimal_elements(&bset);
            // A finite poset has finitely many minimal upper bounds.
            report.weakly_bounded &= mubs.len() <= n;
            if !bset.is_subset(&self.up_set(&mubs)) {
                report.mub_complete = false;
            }
            if size < max_size {
                for j in next..n {
                    let mut b = bset.0.clone();
                    b.intersect_with(&self.up[j]);
                    stack.push((j + 1, size + 1, b));
                }
            }
        }
        report
    }

    /// Convexity: `a, b ∈ I` and `a <= c <= b` force `c ∈ I`. Empty sets are
    /// not intervals.
    pub fn is_interval(&self, s: &ElementSet) -> bool {
        !s.is_empty() && self.up_set(s).intersection(&self.down_set(s)).is_subset(s)
    }

    /// Connected components of the comparability graph restricted to `s`,
    /// ordered by their first element.
    pub fn components(&self, s: &ElementSet) -> Vec<ElementSet> {
        let mut left = s.clone();
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = self.empty_set();
            let mut queue = vec![start];
            comp.insert(start);
            left.remove(start);
            while let Some(v) = queue.pop() {
                let nbrs: Vec<usize> = left
                    .iter()
                    .filter(|&w| self.comparable(v, w))
                    .collect();
                for w in nbrs {
                    left.remove(w);
                    comp.insert(w);
                    queue.push(w);
                }
            }
            out.push(comp);
        }
        out
    }

    /// True iff `s` is nonempty and its comparability graph is connected.
    pub fn is_connected(&self, s: &ElementSet) -> bool {
        self.components(s).len() == 1
    }

    /// Covers of the subposet induced on `s`.
    pub fn induced_covers(&self, s: &ElementSet) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in s.iter() {
            let mut above = self.up[a].clone();
            above.intersect_with(s.bits());
            above.set(a, false);
            for b in above.ones() {
                let implied = above
                    .ones()
                    .any(|c| c != b && self.up[c].contains(b));
                if !implied {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The subposet induced on `s`, with the index map back into `self`.
    pub fn subposet(&self, s: &ElementSet) -> (Poset, Vec<usize>) {
        let names: Vec<&str> = s.iter().map(|i| self.name(i)).collect();
        let rels: Vec<(&str, &str)> = self
            .induced_covers(s)
            .into_iter()
            .map(|(a, b)| (self.name(a), self.name(b)))
            .collect();
        let sub = Poset::new(&names, &rels).expect("induced order is acyclic");
        let back = sub
            .names
            .iter()
            .map(|n| self.index[n.as_str()])
            .collect();
        (sub, back)
    }
}

/// Formats grid coordinates as `(a,b,...)`.
pub fn tuple_id(c: &[usize]) -> String {
    let parts: Vec<String> = c.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

/// Parses an identifier of the form `(a,b,...)` into coordinates.
pub fn parse_tuple_id(s: &str) -> Option<Vec<usize>> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|p| p.trim().parse().ok()).collect()
}
