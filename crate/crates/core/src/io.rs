//! Text formats for posets, modules, monoids, acts and graded algebras.
//!
//! One directive per line, `#` starts a comment. A header line opens a block
//! and the next header closes it:
//!
//! ```text
//! poset P
//! elem a
//! elem b
//! rel a b
//! grid Q 3 3
//! chain L 4
//! module M over P field 101
//! space a 1
//! space b 1
//! map a b [1]
//! monoid G
//! elem 1
//! elem g
//! mul g g 1
//! act A over G
//! point x
//! apply g x x
//! algebra S over G field 101
//! basis e_1 deg 1
//! mul e_1 e_1 = e_1
//! algebra T over G field 101 monoid-algebra
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{GAct, GradedAlgebra, Monoid};
use crate::linalg::{FieldSpec, Matrix};
use crate::pmod::PersModule;
use crate::poset::Poset;

#[derive(Clone, Debug)]
pub struct NamedModule {
    pub poset_id: String,
    pub module: PersModule,
}

#[derive(Clone, Debug)]
pub struct NamedAct {
    pub monoid_id: String,
    pub act: Arc<GAct>,
}

#[derive(Clone, Debug)]
pub struct NamedAlgebra {
    pub monoid_id: String,
    pub algebra: Arc<GradedAlgebra>,
}

/// Everything loaded from one or more files, keyed by id.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub posets: BTreeMap<String, Arc<Poset>>,
    pub modules: BTreeMap<String, NamedModule>,
    pub monoids: BTreeMap<String, Arc<Monoid>>,
    pub acts: BTreeMap<String, NamedAct>,
    pub algebras: BTreeMap<String, NamedAlgebra>,
    /// Used by headers without `field <p>`.
    pub default_field: FieldSpec,
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

enum Block {
    None,
    Poset {
        id: String,
        line: usize,
        elems: Vec<String>,
        rels: Vec<(String, String)>,
    },
    Module {
        id: String,
        line: usize,
        poset: Arc<Poset>,
        poset_id: String,
        field: FieldSpec,
        spaces: HashMap<usize, usize>,
        maps: Vec<(usize, usize, usize, Vec<Vec<i64>>)>,
    },
    Monoid {
        id: String,
        line: usize,
        elems: Vec<String>,
        muls: Vec<(usize, String, String, String)>,
    },
    Act {
        id: String,
        line: usize,
        monoid: Arc<Monoid>,
        monoid_id: String,
        points: Vec<String>,
        applies: Vec<(usize, String, String, String)>,
    },
    Algebra {
        id: String,
        line: usize,
        monoid: Arc<Monoid>,
        monoid_id: String,
        field: FieldSpec,
        basis: Vec<(String, usize)>,
        muls: Vec<(usize, String, String, Vec<(i64, String)>)>,
    },
}

impl Workspace {
    pub fn parse(text: &str) -> Result<Workspace> {
        let mut ws = Workspace::default();
        ws.load(text)?;
        Ok(ws)
    }

    pub fn with_default_field(field: FieldSpec) -> Workspace {
        Workspace {
            default_field: field,
            ..Workspace::default()
        }
    }

    pub fn load_file(&mut self, path: &std::path::Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| perr(0, format!("cannot read {}: {e}", path.display())))?;
        self.load(&text)
    }

    /// Adds the contents of `text`; ids must not clash with loaded ones.
    pub fn load(&mut self, text: &str) -> Result<()> {
        let mut block = Block::None;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            match toks[0] {
                "poset" | "grid" | "chain" | "module" | "monoid" | "act" | "algebra" | "end" => {
                    let prev = std::mem::replace(&mut block, Block::None);
                    self.finish(prev)?;
                    block = self.open(line, &toks)?;
                }
                _ => self.directive(&mut block, line, content, &toks)?,
            }
        }
        self.finish(block)
    }

    fn check_fresh<T>(map: &BTreeMap<String, T>, id: &str, line: usize) -> Result<()> {
        if map.contains_key(id) {
            return Err(perr(line, format!("duplicate id `{id}`")));
        }
        Ok(())
    }

    fn field_arg(&self, line: usize, toks: &[&str], at: usize) -> Result<FieldSpec> {
        match (toks.get(at), toks.get(at + 1)) {
            (Some(&"field"), Some(p)) => {
                let p: u64 = p.parse().map_err(|_| perr(line, format!("bad field `{p}`")))?;
                FieldSpec::new(p).map_err(|e| e.at_line(line))
            }
            (None, _) => Ok(self.default_field),
            _ => Err(perr(line, "expected `field <p>`")),
        }
    }

    /// Splits `<kw> [id] over <ref> ...` into `(id, ref, rest index)`.
    fn over_header<'a>(line: usize, toks: &[&'a str], default: &'a str) -> Result<(&'a str, &'a str, usize)> {
        let (id, at) = if toks.get(1) == Some(&"over") { (default, 1) } else { (*toks.get(1).unwrap_or(&default), 2) };
        if toks.get(at) != Some(&"over") {
            return Err(perr(line, format!("expected `{} [id] over <id>`", toks[0])));
        }
        let target = toks.get(at + 1).ok_or_else(|| perr(line, "missing id after `over`"))?;
        Ok((id, target, at + 2))
    }

    fn open(&mut self, line: usize, toks: &[&str]) -> Result<Block> {
        match toks[0] {
            "end" => Ok(Block::None),
            "poset" => {
                let id = toks.get(1).copied().unwrap_or("P").to_string();
                Self::check_fresh(&self.posets, &id, line)?;
                Ok(Block::Poset {
                    id,
                    line,
                    elems: Vec::new(),
                    rels: Vec::new(),
                })
            }
            "grid" | "chain" => {
                let id = toks.get(1).ok_or_else(|| perr(line, format!("`{}` needs an id", toks[0])))?.to_string();
                Self::check_fresh(&self.posets, &id, line)?;
                let nums = toks[2..]
                    .iter()
                    .map(|t| t.parse::<usize>().map_err(|_| perr(line, format!("bad size `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                let p = if toks[0] == "grid" {
                    Poset::grid(&nums).map_err(|e| e.at_line(line))?
                } else {
                    match nums.as_slice() {
                        [n] if *n > 0 => Poset::chain(*n),
                        _ => return Err(perr(line, "`chain <id> <n>` with n >= 1")),
                    }
                };
                self.posets.insert(id, Arc::new(p));
                Ok(Block::None)
            }
            "module" => {
                let (id, pid, at) = Self::over_header(line, toks, "M")?;
                Self::check_fresh(&self.modules, id, line)?;
                let poset = self
                    .posets
                    .get(pid)
                    .cloned()
                    .ok_or_else(|| Error::UnknownElement(pid.to_string()).at_line(line))?;
                let field = self.field_arg(line, toks, at)?;
                Ok(Block::Module {
                    id: id.to_string(),
                    line,
                    poset,
                    poset_id: pid.to_string(),
                    field,
                    spaces: HashMap::new(),
                    maps: Vec::new(),
                })
            }
            "monoid" => {
                let id = toks.get(1).copied().unwrap_or("G").to_string();
                Self::check_fresh(&self.monoids, &id, line)?;
                Ok(Block::Monoid {
                    id,
                    line,
                    elems: Vec::new(),
                    muls: Vec::new(),
                })
            }
            "act" => {
                let (id, mid, _) = Self::over_header(line, toks, "A")?;
                Self::check_fresh(&self.acts, id, line)?;
                let monoid = self.monoid_ref(mid, line)?;
                Ok(Block::Act {
                    id: id.to_string(),
                    line,
                    monoid,
                    monoid_id: mid.to_string(),
                    points: Vec::new(),
                    applies: Vec::new(),
                })
            }
            _ => {
                let (id, mid, at) = Self::over_header(line, toks, "S")?;
                Self::check_fresh(&self.algebras, id, line)?;
                let monoid = self.monoid_ref(mid, line)?;
                let (field, kind_at) = if toks.get(at) == Some(&"field") {
                    (self.field_arg(line, toks, at)?, at + 2)
                } else {
                    (self.default_field, at)
                };
                if let Some(kind) = toks.get(kind_at) {
                    let alg = match *kind {
                        "monoid-algebra" => GradedAlgebra::monoid_algebra(field, monoid),
                        "dual-numbers" => GradedAlgebra::with_dual_numbers(field, monoid),
                        "contracted" => GradedAlgebra::contracted(field, monoid)
                            .ok_or_else(|| perr(line, "monoid has no absorbing element"))?,
                        other => return Err(perr(line, format!("unknown algebra kind `{other}`"))),
                    };
                    self.algebras.insert(
                        id.to_string(),
                        NamedAlgebra {
                            monoid_id: mid.to_string(),
                            algebra: Arc::new(alg),
                        },
                    );
                    return Ok(Block::None);
                }
                Ok(Block::Algebra {
                    id: id.to_string(),
                    line,
                    monoid,
                    monoid_id: mid.to_string(),
                    field,
                    basis: Vec::new(),
                    muls: Vec::new(),
                })
            }
        }
    }

    fn monoid_ref(&self, id: &str, line: usize) -> Result<Arc<Monoid>> {
        self.monoids
            .get(id)
            .cloned()
            .ok_or_else(|| Error::UnknownElement(id.to_string()).at_line(line))
    }

    fn directive(&mut self, block: &mut Block, line: usize, content: &str, toks: &[&str]) -> Result<()> {
        let arity = |n: usize| -> Result<()> {
            if toks.len() != n {
                return Err(perr(line, format!("`{}` takes {} arguments", toks[0], n - 1)));
            }
            Ok(())
        };
        match (block, toks[0]) {
            (Block::Poset { elems, .. }, "elem") => {
                arity(2)?;
                elems.push(toks[1].to_string());
            }
            (Block::Poset { rels, .. }, "rel") => {
                arity(3)?;
                rels.push((toks[1].to_string(), toks[2].to_string()));
            }
            (Block::Module { poset, spaces, .. }, "space") => {
                arity(3)?;
                let e = poset.index_of(toks[1]).map_err(|e| e.at_line(line))?;
                let d = toks[2].parse().map_err(|_| perr(line, format!("bad dimension `{}`", toks[2])))?;
                if spaces.insert(e, d).is_some() {
                    return Err(perr(line, format!("space of `{}` given twice", toks[1])));
                }
            }
            (Block::Module { poset, maps, .. }, "map") => {
                if toks.len() < 4 {
                    return Err(perr(line, "`map <a> <b> [entries]`"));
                }
                let a = poset.index_of(toks[1]).map_err(|e| e.at_line(line))?;
                let b = poset.index_of(toks[2]).map_err(|e| e.at_line(line))?;
                if poset.cover_index(a, b).is_none() {
                    return Err(perr(line, format!("`{}` <= `{}` is not a cover", toks[1], toks[2])));
                }
                let lit = content.find('[').map(|i| &content[i..]).ok_or_else(|| perr(line, "missing matrix literal"))?;
                maps.push((line, a, b, parse_matrix_literal(lit).map_err(|m| perr(line, m))?));
            }
            (Block::Monoid { elems, .. }, "elem") => {
                arity(2)?;
                elems.push(toks[1].to_string());
            }
            (Block::Monoid { muls, .. }, "mul") => {
                arity(4)?;
                muls.push((line, toks[1].to_string(), toks[2].to_string(), toks[3].to_string()));
            }
            (Block::Act { points, .. }, "point") => {
                arity(2)?;
                points.push(toks[1].to_string());
            }
            (Block::Act { applies, .. }, "apply") => {
                arity(4)?;
                applies.push((line, toks[1].to_string(), toks[2].to_string(), toks[3].to_string()));
            }
            (Block::Algebra { monoid, basis, .. }, "basis") => {
                if toks.len() != 4 || toks[2] != "deg" {
                    return Err(perr(line, "`basis <sym> deg <g>`"));
                }
                let g = monoid.index_of(toks[3]).map_err(|e| e.at_line(line))?;
                basis.push((toks[1].to_string(), g));
            }
            (Block::Algebra { muls, .. }, "mul") => {
                if toks.len() < 5 || toks[3] != "=" {
                    return Err(perr(line, "`mul <sym> <sym> = <combination>`"));
                }
                let rhs = content.split_once('=').map(|(_, r)| r).unwrap_or("");
                let combo = parse_combination(rhs).map_err(|m| perr(line, m))?;
                muls.push((line, toks[1].to_string(), toks[2].to_string(), combo));
            }
            (_, other) => return Err(perr(line, format!("unexpected directive `{other}`"))),
        }
        Ok(())
    }

    fn finish(&mut self, block: Block) -> Result<()> {
        match block {
            Block::None => {}
            Block::Poset { id, line, elems, rels } => {
                let p = Poset::new(&elems, &rels).map_err(|e| e.at_line(line))?;
                self.posets.insert(id, Arc::new(p));
            }
            Block::Module {
                id,
                line,
                poset,
                poset_id,
                field,
                spaces,
                maps,
            } => {
                let dims: Vec<usize> = (0..poset.len()).map(|e| spaces.get(&e).copied().unwrap_or(0)).collect();
                let mut mats: Vec<Option<Matrix>> = vec![None; poset.covers().len()];
                for (l, a, b, rows) in maps {
                    let ci = poset.cover_index(a, b).expect("checked when read");
                    if mats[ci].is_some() {
                        return Err(perr(l, format!("map `{}` -> `{}` given twice", poset.name(a), poset.name(b))));
                    }
                    mats[ci] = Some(matrix_from_literal(field, dims[b], dims[a], &rows).map_err(|e| e.at_line(l))?);
                }
                let mats = poset
                    .covers()
                    .iter()
                    .zip(mats)
                    .map(|(&(a, b), m)| m.unwrap_or_else(|| Matrix::zeros(field, dims[b], dims[a])))
                    .collect();
                let module = PersModule::new(poset, field, dims, mats).map_err(|e| e.at_line(line))?;
                self.modules.insert(id, NamedModule { poset_id, module });
            }
            Block::Monoid { id, line, elems, muls } => {
                let n = elems.len();
                let idx = name_index(&elems).map_err(|e| e.at_line(line))?;
                let mut table = vec![vec![usize::MAX; n]; n];
                for (l, a, b, c) in muls {
                    let (a, b, c) = (lookup(&idx, &a, l)?, lookup(&idx, &b, l)?, lookup(&idx, &c, l)?);
                    table[a][b] = c;
                }
                let unit = (0..n)
                    .find(|&u| (0..n).all(|g| table[u][g] == g && table[g][u] == g))
                    .ok_or_else(|| perr(line, "monoid has no two-sided unit (or the table is incomplete)"))?;
                if let Some((g, h)) = (0..n).flat_map(|g| (0..n).map(move |h| (g, h))).find(|&(g, h)| table[g][h] == usize::MAX) {
                    return Err(perr(line, format!("missing product `{}·{}`", elems[g], elems[h])));
                }
                let m = Monoid::new(elems, table, unit).map_err(|e| e.at_line(line))?;
                self.monoids.insert(id, Arc::new(m));
            }
            Block::Act {
                id,
                line,
                monoid,
                monoid_id,
                points,
                applies,
            } => {
                let idx = name_index(&points).map_err(|e| e.at_line(line))?;
                let n = points.len();
                let mut action = vec![vec![usize::MAX; n]; monoid.order()];
                for a in 0..n {
                    action[monoid.unit()][a] = a;
                }
                for (l, g, a, b) in applies {
                    let g = monoid.index_of(&g).map_err(|e| e.at_line(l))?;
                    action[g][lookup(&idx, &a, l)?] = lookup(&idx, &b, l)?;
                }
                for (g, row) in action.iter().enumerate() {
                    if let Some(a) = row.iter().position(|&x| x == usize::MAX) {
                        return Err(perr(line, format!("missing `apply {} {}`", monoid.name(g), points[a])));
                    }
                }
                let act = GAct::new(monoid, points, action).map_err(|e| e.at_line(line))?;
                self.acts.insert(
                    id,
                    NamedAct {
                        monoid_id,
                        act: Arc::new(act),
                    },
                );
            }
            Block::Algebra {
                id,
                line,
                monoid,
                monoid_id,
                field,
                basis,
                muls,
            } => {
                let symbols: Vec<String> = basis.iter().map(|(s, _)| s.clone()).collect();
                let idx = name_index(&symbols).map_err(|e| e.at_line(line))?;
                let n = symbols.len();
                let mut mult = vec![vec![vec![0u32; n]; n]; n];
                for (l, a, b, combo) in muls {
                    let (a, b) = (lookup(&idx, &a, l)?, lookup(&idx, &b, l)?);
                    let cell = &mut mult[a][b];
                    for (c, sym) in combo {
                        let k = lookup(&idx, &sym, l)?;
                        cell[k] = field.add(cell[k], field.reduce(c));
                    }
                }
                let degrees = basis.iter().map(|&(_, g)| g).collect();
                let alg = GradedAlgebra::new(field, monoid, symbols, degrees, mult).map_err(|e| e.at_line(line))?;
                self.algebras.insert(
                    id,
                    NamedAlgebra {
                        monoid_id,
                        algebra: Arc::new(alg),
                    },
                );
            }
        }
        Ok(())
    }

    /// Canonical text: elements in canonical order, relations as covers,
    /// zero maps and zero spaces omitted.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (id, p) in &self.posets {
            let _ = writeln!(out, "poset {id}");
            for name in p.names() {
                let _ = writeln!(out, "elem {name}");
            }
            for &(a, b) in p.covers() {
                let _ = writeln!(out, "rel {} {}", p.name(a), p.name(b));
            }
        }
        for (id, m) in &self.monoids {
            let _ = writeln!(out, "monoid {id}");
            for name in m.names() {
                let _ = writeln!(out, "elem {name}");
            }
            for g in 0..m.order() {
                for h in 0..m.order() {
                    let _ = writeln!(out, "mul {} {} {}", m.name(g), m.name(h), m.name(m.mul(g, h)));
                }
            }
        }
        for (id, NamedModule { poset_id, module }) in &self.modules {
            let p = module.poset();
            let _ = writeln!(out, "module {id} over {poset_id} field {}", module.field().p());
            for (e, &d) in module.dims().iter().enumerate() {
                if d > 0 {
                    let _ = writeln!(out, "space {} {d}", p.name(e));
                }
            }
            for (&(a, b), m) in p.covers().iter().zip(module.maps()) {
                if !m.is_zero() {
                    let _ = writeln!(out, "map {} {} {m}", p.name(a), p.name(b));
                }
            }
        }
        for (id, NamedAct { monoid_id, act }) in &self.acts {
            let _ = writeln!(out, "act {id} over {monoid_id}");
            for pt in act.points() {
                let _ = writeln!(out, "point {pt}");
            }
            let g = act.monoid();
            for x in (0..g.order()).filter(|&x| x != g.unit()) {
                for a in 0..act.len() {
                    let _ = writeln!(out, "apply {} {} {}", g.name(x), act.points()[a], act.points()[act.apply(x, a)]);
                }
            }
        }
        for (id, NamedAlgebra { monoid_id, algebra }) in &self.algebras {
            let _ = writeln!(out, "algebra {id} over {monoid_id} field {}", algebra.field().p());
            let syms = algebra.symbols();
            for (k, s) in syms.iter().enumerate() {
                let _ = writeln!(out, "basis {s} deg {}", algebra.monoid().name(algebra.degree(k)));
            }
            for i in 0..algebra.dim() {
                for j in 0..algebra.dim() {
                    let terms: Vec<String> = algebra
                        .product(i, j)
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(k, &c)| if c == 1 { syms[k].clone() } else { format!("{c}*{}", syms[k]) })
                        .collect();
                    if !terms.is_empty() {
                        let _ = writeln!(out, "mul {} {} = {}", syms[i], syms[j], terms.join(" + "));
                    }
                }
            }
        }
        out
    }

    /// The named module, or the only one if `id` is `None`.
    pub fn module(&self, id: Option<&str>) -> Result<(&str, &PersModule)> {
        pick(&self.modules, id, "module").map(|(k, v)| (k, &v.module))
    }

    pub fn poset(&self, id: Option<&str>) -> Result<(&str, &Arc<Poset>)> {
        pick(&self.posets, id, "poset")
    }

    pub fn act(&self, id: Option<&str>) -> Result<(&str, &Arc<GAct>)> {
        pick(&self.acts, id, "act").map(|(k, v)| (k, &v.act))
    }

    pub fn algebra(&self, id: Option<&str>) -> Result<(&str, &Arc<GradedAlgebra>)> {
        pick(&self.algebras, id, "algebra").map(|(k, v)| (k, &v.algebra))
    }
}

fn pick<'a, T>(map: &'a BTreeMap<String, T>, id: Option<&str>, what: &str) -> Result<(&'a str, &'a T)> {
    match id {
        Some(id) => map
            .get_key_value(id)
            .map(|(k, v)| (k.as_str(), v))
            .ok_or_else(|| Error::UnknownElement(id.to_string())),
        None if map.len() == 1 => Ok(map.iter().next().map(|(k, v)| (k.as_str(), v)).unwrap()),
        None if map.is_empty() => Err(Error::InvalidModule(format!("no {what} loaded"))),
        None => Err(Error::InvalidModule(format!(
            "several {what}s loaded ({}); name one",
            map.keys().cloned().collect::<Vec<_>>().join(", ")
        ))),
    }
}

fn name_index(names: &[String]) -> Result<HashMap<&str, usize>> {
    let mut idx = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if idx.insert(n.as_str(), i).is_some() {
            return Err(Error::DuplicateElement(n.clone()));
        }
    }
    Ok(idx)
}

fn lookup(idx: &HashMap<&str, usize>, name: &str, line: usize) -> Result<usize> {
    idx.get(name)
        .copied()
        .ok_or_else(|| Error::UnknownElement(name.to_string()).at_line(line))
}

/// `[1 0 ; 2 3]` into rows; `[]` is the empty list.
pub fn parse_matrix_literal(s: &str) -> std::result::Result<Vec<Vec<i64>>, String> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| format!("matrix literal must be bracketed: `{s}`"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| format!("bad matrix entry `{t}`")))
                .collect()
        })
        .collect()
}

fn matrix_from_literal(field: FieldSpec, rows: usize, cols: usize, lit: &[Vec<i64>]) -> Result<Matrix> {
    if lit.is_empty() && rows * cols == 0 {
        return Ok(Matrix::zeros(field, rows, cols));
    }
    if lit.len() != rows || lit.iter().any(|r| r.len() != cols) {
        let got: Vec<usize> = lit.iter().map(Vec::len).collect();
        return Err(Error::Shape(format!("expected {rows}x{cols}, got rows of lengths {got:?}")));
    }
    Matrix::from_rows(field, lit)
}

/// `2*e_g + e_1 + -1*e_x`, or `0`.
pub fn parse_combination(s: &str) -> std::result::Result<Vec<(i64, String)>, String> {
    let s = s.trim();
    if s == "0" {
        return Ok(Vec::new());
    }
    s.split('+')
        .map(|term| {
            let term = term.trim();
            if term.is_empty() {
                return Err("empty term".to_string());
            }
            match term.split_once('*') {
                Some((c, sym)) => {
                    let c = c.trim().parse::<i64>().map_err(|_| format!("bad coefficient `{c}`"))?;
                    Ok((c, sym.trim().to_string()))
                }
                None => match term.strip_prefix('-') {
                    Some(sym) => Ok((-1, sym.trim().to_string())),
                    None => Ok((1, term.to_string())),
                },
            }
        })
        .collect()
}

/// Splits `a,b,(1,2)` at top-level commas.
pub fn split_set_arg(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    out.push(cur);
    out.into_iter().map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIAMOND: &str = "\
# the diamond
poset D
elem a
elem b
elem c
elem d
rel a b
rel a c
rel b d
rel c d
rel a d

module M over D field 101
space a 1
space b 1
space c 1
space d 1
map a b [1]
map a c [1]
map b d [1]
map c d [1]
";

    #[test]
    fn parses_and_reduces_relations() {
        let ws = Workspace::parse(DIAMOND).unwrap();
        let p = &ws.posets["D"];
        assert_eq!(p.covers().len(), 4);
        let m = &ws.modules["M"].module;
        assert_eq!(m.eval_map(0, 3).unwrap().get(0, 0), 1);
    }

    #[test]
    fn wrong_shape_names_the_line() {
        let text = DIAMOND.replace("map b d [1]", "map b d [1 2]");
        match Workspace::parse(&text) {
            Err(Error::AtLine { line, inner }) => {
                assert_eq!(line, 20);
                assert!(matches!(*inner, Error::Shape(_)));
            }
            other => panic!("expected a shape error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_poset_is_rejected() {
        let err = Workspace::parse("module M over Q field 101\n").unwrap_err();
        assert_eq!(
            err,
            Error::AtLine {
                line: 1,
                inner: Box::new(Error::UnknownElement("Q".into()))
            }
        );
    }

    #[test]
    fn non_functorial_module_is_rejected() {
        let text = DIAMOND.replace("map c d [1]", "map c d [2]");
        let err = Workspace::parse(&text).unwrap_err();
        assert!(matches!(err, Error::AtLine { line: 13, .. }));
    }

    #[test]
    fn graded_blocks() {
        let text = "\
monoid G
elem 1
elem g
mul 1 1 1
mul 1 g g
mul g 1 g
mul g g 1
act A over G
point x
point y
apply g x y
apply g y x
algebra S over G field 7
basis u deg 1
basis v deg g
mul u u = u
mul u v = v
mul v u = v
mul v v = 3*u
algebra T over G monoid-algebra
";
        let ws = Workspace::parse(text).unwrap();
        assert!(ws.acts["A"].act.properties().free);
        let s = &ws.algebras["S"].algebra;
        assert_eq!(s.product(1, 1), &[3, 0]);
        assert_eq!(s.unit(), &[1, 0]);
        assert_eq!(ws.algebras["T"].algebra.dim(), 2);
    }

    #[test]
    fn serialization_is_idempotent() {
        let text = format!("{DIAMOND}grid Q 2 2\nmodule N over Q\nspace (1,1) 2\nmonoid G\nelem 1\nelem z\nmul 1 1 1\nmul 1 z z\nmul z 1 z\nmul z z z\nalgebra S over G contracted\n");
        let once = Workspace::parse(&text).unwrap().serialize();
        let twice = Workspace::parse(&once).unwrap().serialize();
        assert_eq!(once, twice);
    }

    #[test]
    fn set_argument_respects_parentheses() {
        assert_eq!(split_set_arg("(0,1), (1,0)"), vec!["(0,1)", "(1,0)"]);
        assert_eq!(split_set_arg("a,b,,c"), vec!["a", "b", "c"]);
        assert!(split_set_arg("").is_empty());
    }

    #[test]
    fn literals() {
        assert_eq!(parse_matrix_literal("[1 0 ; 2 3]").unwrap(), vec![vec![1, 0], vec![2, 3]]);
        assert_eq!(parse_matrix_literal("[]").unwrap(), Vec::<Vec<i64>>::new());
        assert!(parse_matrix_literal("1 0").is_err());
        assert_eq!(parse_combination("2*a + b").unwrap(), vec![(2, "a".into()), (1, "b".into())]);
        assert_eq!(parse_combination("0").unwrap(), vec![]);
    }
}
