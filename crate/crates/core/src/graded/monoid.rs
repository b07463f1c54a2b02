//! Finite monoids given by multiplication tables.

use std::collections::HashSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monoid {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    unit: usize,
}

impl Monoid {
    /// Validates associativity and the two-sided unit exhaustively.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let n = names.len();
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) || unit >= n {
            return Err(Error::Shape(format!("multiplication table must be {n}x{n} over 0..{n}")));
        }
        let m = Monoid { names, table, unit };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.order();
        for g in 0..n {
            if self.mul(self.unit, g) != g || self.mul(g, self.unit) != g {
                return Err(Error::Violation(format!("`{}` is not a unit for `{}`", self.names[self.unit], self.names[g])));
            }
        }
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    if self.mul(self.mul(g, h), k) != self.mul(g, self.mul(h, k)) {
                        return Err(Error::Violation(format!(
                            "associativity fails at ({}, {}, {})",
                            self.names[g], self.names[h], self.names[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial() -> Self {
        Monoid {
            names: vec!["1".into()],
            table: vec![vec![0]],
            unit: 0,
        }
    }

    /// `Z/n` written multiplicatively: `1, g, g^2, ...`.
    pub fn cyclic_group(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Monoid { names, table, unit: 0 }
    }

    /// `{0, 1, ..., n-1}` under addition capped at `n - 1`.
    pub fn saturating(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j).min(n - 1)).collect()).collect();
        Monoid { names, table, unit: 0 }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|g| (0..n).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    pub fn is_group(&self) -> bool {
        let n = self.order();
        (0..n).all(|g| (0..n).any(|h| self.mul(g, h) == self.unit && self.mul(h, g) == self.unit))
    }

    /// An absorbing element `z` with `zg = gz = z`, if any.
    pub fn zero(&self) -> Option<usize> {
        let n = self.order();
        (0..n).find(|&z| (0..n).all(|g| self.mul(z, g) == z && self.mul(g, z) == z))
    }

    /// Every monoid of order at most `max_order`, one per isomorphism class.
    /// The unit is always element 0, named `1`; the others are `a`, `b`, `c`, ...
    pub fn catalog(max_order: usize) -> Vec<Monoid> {
        let mut out = Vec::new();
        for n in 1..=max_order {
            out.extend(monoids_of_order(n));
        }
        out
    }
}

fn monoids_of_order(n: usize) -> Vec<Monoid> {
    let names: Vec<String> = (0..n)
        .map(|i| if i == 0 { "1".to_string() } else { ((b'a' + (i - 1) as u8) as char).to_string() })
        .collect();
    if n == 1 {
        return vec![Monoid::trivial()];
    }
    let free_cells = (n - 1) * (n - 1);
    let perms = permutations_fixing_zero(n);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    let mut digits = vec![0usize; free_cells];
    loop {
        let mut table = vec![vec![0usize; n]; n];
        for i in 0..n {
            table[0][i] = i;
            table[i][0] = i;
        }
        for (k, &d) in digits.iter().enumerate() {
            table[1 + k / (n - 1)][1 + k % (n - 1)] = d;
        }
        let assoc = (0..n).all(|g| (0..n).all(|h| (0..n).all(|k| table[table[g][h]][k] == table[g][table[h][k]])));
        if assoc {
            let canon = perms
                .iter()
                .map(|p| {
                    let mut flat = vec![0usize; n * n];
                    for g in 0..n {
                        for h in 0..n {
                            flat[p[g] * n + p[h]] = p[table[g][h]];
                        }
                    }
                    flat
                })
                .min()
                .unwrap();
            if seen.insert(canon.clone()) {
                let table = canon.chunks(n).map(<[usize]>::to_vec).collect();
                out.push(Monoid {
                    names: names.clone(),
                    table,
                    unit: 0,
                });
            }
        }
        // Next table in odometer order.
        let mut pos = 0;
        loop {
            if pos == free_cells {
                return out;
            }
            digits[pos] += 1;
            if digits[pos] < n {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// All permutations of `0..n` fixing 0.
pub(crate) fn permutations_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (1..n).collect();
    permute(&mut rest, 0, &mut |p| {
        let mut full = vec![0];
        full.extend_from_slice(p);
        out.push(full);
    });
    out
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut all: Vec<usize> = (0..n).collect();
    permute(&mut all, 0, &mut |p| out.push(p.to_vec()));
    out
}

fn permute(xs: &mut Vec<usize>, k: usize, emit: &mut impl FnMut(&[usize])) {
    if k == xs.len() {
        emit(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, emit);
        xs.swap(k, i);
    }
}

/// Componentwise minimum: the maximal common divisor in `N^n`.
pub fn mcd_grid(g: &[usize], h: &[usize]) -> Result<Vec<usize>> {
    if g.len() != h.len() {
        return Err(Error::ArityMismatch(g.len(), h.len()));
    }
    Ok(g.iter().zip(h).map(|(a, b)| *a.min(b)).collect())
}

/// Componentwise maximum: the minimal upper bound in `N^n`.
pub fn mub_grid(g: &[usize], h: &[usize]) -> Result<Vec<usize>> {
    if g.len() != h.len() {
        return Err(Error::ArityMismatch(g.len(), h.len()));
    }
    Ok(g.iter().zip(h).map(|(a, b)| *a.max(b)).collect())
}
