//! Colimits over windows of a poset, restriction and induction along a
//! subset inclusion, and the canonical maps `μ_M` and `λ_{M,c}`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::pmod::{ModuleMorphism, PersModule};
use crate::poset::{ElementSet, Poset};

/// A colimit of the restriction of a module to a set of elements, presented
/// as the cokernel of the cover relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColimitResult {
    pub dim: usize,
    /// Index elements in canonical order.
    pub window: Vec<usize>,
    /// `injections[i]` maps `M(window[i])` into the colimit.
    pub injections: Vec<Matrix>,
    /// Columns are the relations `x ⊕ -M(d⋖d')x` on the direct sum.
    pub relations: Matrix,
    /// Lifts of the colimit basis into the direct sum.
    pub section: Matrix,
    /// Block offsets of each window element in the direct sum.
    pub offsets: Vec<usize>,
}

impl ColimitResult {
    pub fn total_dim(&self) -> usize {
        self.relations.rows()
    }

    /// Rows of the section belonging to the `i`-th window element.
    fn section_block(&self, i: usize, width: usize) -> Matrix {
        self.section.block(self.offsets[i], 0, width, self.dim)
    }
}

/// Colimit of `m` over the subposet induced on `window`.
pub fn colimit(m: &PersModule, window: &ElementSet) -> ColimitResult {
    let p = m.poset();
    let field = m.field();
    let elems = window.to_vec();
    let mut offsets = Vec::with_capacity(elems.len());
    let mut total = 0;
    for &d in &elems {
        offsets.push(total);
        total += m.dim(d);
    }
    let pos = |d: usize| elems.binary_search(&d).unwrap();
    let mut blocks = Vec::new();
    for (d, e) in p.induced_covers(window) {
        let mut col = Matrix::zeros(field, total, m.dim(d));
        col.set_block(offsets[pos(d)], 0, &Matrix::identity(field, m.dim(d)));
        col.set_block(offsets[pos(e)], 0, &m.eval_map(d, e).unwrap().neg());
        blocks.push(col);
    }
    let relations = Matrix::hstack(field, total, &blocks.iter().collect::<Vec<_>>());
    let ck = relations.cokernel();
    let injections = elems
        .iter()
        .enumerate()
        .map(|(i, &d)| ck.projection.block(0, offsets[i], ck.dim, m.dim(d)))
        .collect();
    ColimitResult {
        dim: ck.dim,
        window: elems,
        injections,
        relations,
        section: ck.section,
        offsets,
    }
}

/// `S ∩ ↓c`, without `c` itself when `strict`.
pub fn window(poset: &Poset, s: &ElementSet, c: usize, strict: bool) -> ElementSet {
    let down = if strict { poset.strict_down(c) } else { poset.principal_down(c) };
    down.intersection(s)
}

/// Colimit of `m` over `{d ∈ S : d < c}` (or `d <= c` when not strict).
pub fn colim_window(m: &PersModule, s: &ElementSet, c: usize, strict: bool) -> ColimitResult {
    colimit(m, &window(m.poset(), s, c, strict))
}

/// The natural map `λ_{M,c}` from the strict-window colimit into `M(c)`.
#[derive(Clone, Debug)]
pub struct Lambda {
    pub colimit: ColimitResult,
    /// `dim M(c) x colimit.dim`.
    pub map: Matrix,
}

impl Lambda {
    pub fn is_epi(&self) -> bool {
        self.map.rank() == self.map.rows()
    }

    pub fn is_mono(&self) -> bool {
        self.map.rank() == self.map.cols()
    }
}

/// The map `[M(d <= c)]_d` from the direct sum over a window into `M(c)`.
fn cocone(m: &PersModule, col: &ColimitResult, c: usize) -> Matrix {
    let legs: Vec<Matrix> = col.window.iter().map(|&d| m.eval_map(d, c).unwrap()).collect();
    Matrix::hstack(m.field(), m.dim(c), &legs.iter().collect::<Vec<_>>())
}

pub fn lambda(m: &PersModule, s: &ElementSet, c: usize) -> Lambda {
    let colimit = colim_window(m, s, c, true);
    let psi = cocone(m, &colimit, c);
    debug_assert!(psi.mul(&colimit.relations).is_zero());
    let map = psi.mul(&colimit.section);
    Lambda { colimit, map }
}

/// `res_S M` over the subposet induced on `S`.
pub fn restrict(m: &PersModule, s: &ElementSet) -> PersModule {
    let (sub, back) = m.poset().subposet(s);
    let dims = back.iter().map(|&i| m.dim(i)).collect();
    let maps = sub
        .covers()
        .iter()
        .map(|&(a, b)| m.eval_map(back[a], back[b]).unwrap())
        .collect();
    PersModule::new_unchecked(Arc::new(sub), m.field(), dims, maps)
}

/// `ind_S N` together with the colimit data at every ambient element.
#[derive(Clone, Debug)]
pub struct Induced {
    pub module: PersModule,
    /// Ambient index of each element of `N`'s poset.
    pub embedding: Vec<usize>,
    /// Colimit of `N` over `{t : t <= c}` for every ambient `c`.
    pub colimits: Vec<ColimitResult>,
}

/// Induces `n`, a module over a subposet of `ambient` (matched by element
/// identifiers), to the whole of `ambient`.
pub fn induce(n: &PersModule, ambient: Arc<Poset>) -> Result<Induced> {
    let sub = n.poset();
    let embedding: Vec<usize> = sub
        .names()
        .iter()
        .map(|name| ambient.index_of(name))
        .collect::<Result<_>>()?;
    for a in 0..sub.len() {
        for b in 0..sub.len() {
            if sub.leq(a, b) != ambient.leq(embedding[a], embedding[b]) {
                return Err(Error::Shape(format!(
                    "order on `{}`, `{}` differs from the ambient poset",
                    sub.name(a),
                    sub.name(b)
                )));
            }
        }
    }
    let field = n.field();
    let colimits: Vec<ColimitResult> = (0..ambient.len())
        .map(|c| {
            let w = ElementSet::from_indices(sub.len(), (0..sub.len()).filter(|&t| ambient.leq(embedding[t], c)));
            colimit(n, &w)
        })
        .collect();
    let dims = colimits.iter().map(|col| col.dim).collect();
    let maps = ambient
        .covers()
        .iter()
        .map(|&(c, e)| {
            // The window at c is contained in the window at e.
            let (from, to) = (&colimits[c], &colimits[e]);
            let mut acc = Matrix::zeros(field, to.dim, from.dim);
            for (i, &t) in from.window.iter().enumerate() {
                let j = to.window.binary_search(&t).unwrap();
                acc = acc.add(&to.injections[j].mul(&from.section_block(i, n.dim(t))));
            }
            acc
        })
        .collect();
    let module = PersModule::new_unchecked(ambient, field, dims, maps);
    Ok(Induced {
        module,
        embedding,
        colimits,
    })
}

/// The counit `μ_M : ind_S res_S M -> M`.
#[derive(Clone, Debug)]
pub struct CanonicalMu {
    pub induced: Induced,
    pub morphism: ModuleMorphism,
}

pub fn canonical_mu(m: &PersModule, s: &ElementSet) -> Result<CanonicalMu> {
    let res = restrict(m, s);
    let induced = induce(&res, m.poset().clone())?;
    let field = m.field();
    let mut comps = Vec::with_capacity(m.poset().len());
    for (c, col) in induced.colimits.iter().enumerate() {
        let legs: Vec<Matrix> = col
            .window
            .iter()
            .map(|&t| m.eval_map(induced.embedding[t], c).unwrap())
            .collect();
        let psi = Matrix::hstack(field, m.dim(c), &legs.iter().collect::<Vec<_>>());
        if !psi.mul(&col.relations).is_zero() {
            return Err(Error::Internal(format!(
                "μ does not annihilate the relations at `{}`",
                m.poset().name(c)
            )));
        }
        comps.push(psi.mul(&col.section));
    }
    let morphism = ModuleMorphism::new(induced.module.clone(), m.clone(), comps)?;
    Ok(CanonicalMu { induced, morphism })
}
