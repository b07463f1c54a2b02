//! Monoid acts, the preorders they induce, and the constructions relating
//! preorders to acts.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::monoid::{permutations, Monoid};
use crate::poset::Poset;

/// A finite preorder given by its full relation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Preorder {
    /// Reflexive-transitive closure of the given pairs.
    pub fn from_relations(names: Vec<String>, pairs: &[(usize, usize)]) -> Self {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Preorder { names, leq }
    }

    pub fn from_poset(p: &Poset) -> Self {
        let n = p.len();
        let leq = (0..n).map(|a| (0..n).map(|b| p.leq(a, b)).collect()).collect();
        Preorder {
            names: p.names().to_vec(),
            leq,
        }
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

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|a| self.leq[a][a])
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| !self.leq[a][b] || (0..n).all(|c| !self.leq[b][c] || self.leq[a][c])))
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| a == b || !(self.leq[a][b] && self.leq[b][a])))
    }

    /// Collapses mutually comparable points. Classes are named by joining
    /// their members with `~`; returns the poset and each point's class.
    pub fn quotient_to_poset(&self) -> (Poset, Vec<usize>) {
        let n = self.len();
        let mut class_of = vec![usize::MAX; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let class: Vec<usize> = (a..n).filter(|&b| self.leq[a][b] && self.leq[b][a]).collect();
            for &b in &class {
                class_of[b] = members.len();
            }
            members.push(class);
        }
        let names: Vec<String> = members
            .iter()
            .map(|c| c.iter().map(|&i| self.names[i].as_str()).collect::<Vec<_>>().join("~"))
            .collect();
        let mut rels = Vec::new();
        for (x, cx) in members.iter().enumerate() {
            for (y, cy) in members.iter().enumerate() {
                if x != y && self.leq[cx[0]][cy[0]] {
                    rels.push((names[x].clone(), names[y].clone()));
                }
            }
        }
        let poset = Poset::new(&names, &rels).expect("the quotient of a preorder is a poset");
        // Re-express classes in the poset's canonical indices.
        let class_of = class_of
            .into_iter()
            .map(|c| poset.index_of(&names[c]).unwrap())
            .collect();
        (poset, class_of)
    }
}

/// The piecewise map sending `a` to `b` and fixing everything else; it is
/// inflationary whenever `a <= b`.
pub fn witness_map(p: &Preorder, a: usize, b: usize) -> Result<Vec<usize>> {
    if !p.leq(a, b) {
        return Err(Error::NotComparable(p.names[a].clone(), p.names[b].clone()));
    }
    let g: Vec<usize> = (0..p.len()).map(|x| if x == a { b } else { x }).collect();
    if !(0..p.len()).all(|x| p.leq(x, g[x])) {
        return Err(Error::AssertionFailure("witness map is not inflationary".into()));
    }
    Ok(g)
}

/// A left action of a finite monoid on a finite set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GAct {
    monoid: Arc<Monoid>,
    points: Vec<String>,
    /// `action[g][a] = g·a`.
    action: Vec<Vec<usize>>,
}

/// Exhaustive property checks of an act.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ActProperties {
    pub free: bool,
    pub faithful: bool,
    pub order_preserving: bool,
}

impl GAct {
    pub fn new(monoid: Arc<Monoid>, points: Vec<String>, action: Vec<Vec<usize>>) -> Result<Self> {
        let n = points.len();
        if action.len() != monoid.order() || action.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Shape("action table must be |G| x |A| over A".into()));
        }
        let act = GAct { monoid, points, action };
        act.validate()?;
        Ok(act)
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.monoid;
        for a in 0..self.len() {
            if self.apply(g.unit(), a) != a {
                return Err(Error::Violation(format!("unit moves `{}`", self.points[a])));
            }
            for x in 0..g.order() {
                for y in 0..g.order() {
                    if self.apply(g.mul(x, y), a) != self.apply(x, self.apply(y, a)) {
                        return Err(Error::Violation(format!(
                            "({}{})·{} differs from {}·({}·{})",
                            g.name(x),
                            g.name(y),
                            self.points[a],
                            g.name(x),
                            g.name(y),
                            self.points[a]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(monoid: Arc<Monoid>) -> Self {
        let points = monoid.names().to_vec();
        let action = monoid.table().to_vec();
        GAct { monoid, points, action }
    }

    /// Every element acts as the identity.
    pub fn trivial(monoid: Arc<Monoid>, points: Vec<String>) -> Self {
        let action = vec![(0..points.len()).collect(); monoid.order()];
        GAct { monoid, points, action }
    }

    pub fn monoid(&self) -> &Arc<Monoid> {
        &self.monoid
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.points
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn apply(&self, g: usize, a: usize) -> usize {
        self.action[g][a]
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    /// `a <= b` iff `b = ga` for some `g`.
    pub fn preorder(&self) -> Preorder {
        let n = self.len();
        let mut leq = vec![vec![false; n]; n];
        for row in &self.action {
            for (a, &b) in row.iter().enumerate() {
                leq[a][b] = true;
            }
        }
        Preorder {
            names: self.points.clone(),
            leq,
        }
    }

    pub fn properties(&self) -> ActProperties {
        let g = self.monoid.order();
        let n = self.len();
        let pairs = || (0..g).flat_map(move |x| (0..g).map(move |y| (x, y))).filter(|(x, y)| x != y);
        let free = pairs().all(|(x, y)| (0..n).all(|a| self.apply(x, a) != self.apply(y, a)));
        let faithful = pairs().all(|(x, y)| (0..n).any(|a| self.apply(x, a) != self.apply(y, a)));
        let pre = self.preorder();
        let order_preserving = (0..n).all(|a| {
            (0..n).all(|b| !pre.leq(a, b) || (0..g).all(|x| pre.leq(self.apply(x, a), self.apply(x, b))))
        });
        ActProperties {
            free,
            faithful,
            order_preserving,
        }
    }

    /// `{(g, h) : ga = ha for all a}`.
    pub fn kernel_relation(&self) -> Vec<(usize, usize)> {
        let g = self.monoid.order();
        let mut out = Vec::new();
        for x in 0..g {
            for y in 0..g {
                if (0..self.len()).all(|a| self.apply(x, a) == self.apply(y, a)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Whether `(a, g) ↦ (a <= ga)` is bijective on morphisms, decided by
    /// counting `|{g : ga = b}|` for every pair.
    pub fn action_functor_is_bijective(&self) -> bool {
        let n = self.len();
        let mut counts = vec![vec![0usize; n]; n];
        for row in &self.action {
            for (a, &b) in row.iter().enumerate() {
                counts[a][b] += 1;
            }
        }
        counts.iter().flatten().all(|&c| c <= 1)
    }

    /// Every act of `monoid` on `1..=max_points` points, one per class up
    /// to relabeling of points.
    pub fn catalog(monoid: Arc<Monoid>, max_points: usize) -> Vec<GAct> {
        let mut out = Vec::new();
        for n in 1..=max_points {
            for action in acts_on(&monoid, n) {
                let points = (0..n).map(|i| format!("x{i}")).collect();
                out.push(GAct {
                    monoid: monoid.clone(),
                    points,
                    action,
                });
            }
        }
        out
    }
}

/// Backtracking over transformations of `0..n`, one per non-unit element,
/// pruning as soon as a product constraint is fully assigned.
fn acts_on(monoid: &Monoid, n: usize) -> Vec<Vec<Vec<usize>>> {
    let order = monoid.order();
    let unit = monoid.unit();
    let funcs: Vec<Vec<usize>> = {
        let total = n.pow(n as u32);
        (0..total)
            .map(|mut k| {
                (0..n)
                    .map(|_| {
                        let d = k % n;
                        k /= n;
                        d
                    })
                    .collect()
            })
            .collect()
    };
    let elems: Vec<usize> = (0..order).filter(|&g| g != unit).collect();
    let mut assigned: Vec<Option<Vec<usize>>> = vec![None; order];
    assigned[unit] = Some((0..n).collect());
    let mut raw = Vec::new();
    search(monoid, &elems, 0, &funcs, &mut assigned, &mut raw);

    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for action in raw {
        let canon = perms
            .iter()
            .map(|p| {
                let mut t = vec![vec![0usize; n]; order];
                for g in 0..order {
                    for a in 0..n {
                        t[g][p[a]] = p[action[g][a]];
                    }
                }
                t
            })
            .min()
            .unwrap();
        if seen.insert(canon.clone()) {
            out.push(canon);
        }
    }
    out
}

fn search(
    monoid: &Monoid,
    elems: &[usize],
    k: usize,
    funcs: &[Vec<usize>],
    assigned: &mut Vec<Option<Vec<usize>>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if k == elems.len() {
        out.push(assigned.iter().map(|f| f.clone().unwrap()).collect());
        return;
    }
    let g = elems[k];
    for f in funcs {
        assigned[g] = Some(f.clone());
        if consistent(monoid, assigned) {
            search(monoid, elems, k + 1, funcs, assigned, out);
        }
    }
    assigned[g] = None;
}

fn consistent(monoid: &Monoid, assigned: &[Option<Vec<usize>>]) -> bool {
    let order = monoid.order();
    for x in 0..order {
        let Some(fx) = &assigned[x] else { continue };
        for y in 0..order {
            let Some(fy) = &assigned[y] else { continue };
            let Some(fxy) = &assigned[monoid.mul(x, y)] else { continue };
            if (0..fy.len()).any(|a| fxy[a] != fx[fy[a]]) {
                return false;
            }
        }
    }
    true
}
