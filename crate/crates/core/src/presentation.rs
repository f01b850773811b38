//! Quiver-with-relations presentations and the finite-dimensional linear
//! categories they present.
//!
//! A presentation is read from the line-oriented `.gcat` format:
//!
//! ```text
//! field 2
//! nilpotency 2
//! object x
//! arrow e : x -> x
//! relation e.e = 0
//! ```
//!
//! Paths are written in composition order, `a3.a2.a1` applies `a1` first.
//! The category has `Hom(a,b)` equal to the span of paths `a -> b` shorter
//! than the nilpotency bound, modulo the two-sided ideal generated by the
//! relations. Composition follows the same convention: `compose(g, f)` is
//! "`f` then `g`".

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{enumerate_vectors, Matrix, Prime, Subspace};

/// Upper bound on the number of paths shorter than the nilpotency bound.
const MAX_PATHS: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A path in the quiver. `arrows` is in application order; an empty list is
/// the identity path at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn identity(object: usize) -> Self {
        Path { source: object, target: object, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_identity(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Path) -> Path {
        debug_assert_eq!(self.target, next.source);
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Path { source: self.source, target: next.target, arrows }
    }

    /// Written-order label such as `b2.a2`, or `1` for an identity.
    pub fn label(&self, quiver: &QuiverPresentation) -> String {
        if self.arrows.is_empty() {
            return "1".to_string();
        }
        self.arrows
            .iter()
            .rev()
            .map(|&a| quiver.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Shortlex order on written-order arrow sequences.
    pub fn shortlex(&self, other: &Path) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.arrows.iter().rev().cmp(other.arrows.iter().rev()))
    }
}

/// A formal linear combination of parallel paths, set equal to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub source: usize,
    pub target: usize,
    pub terms: Vec<(u32, Path)>,
}

impl Relation {
    pub fn label(&self, quiver: &QuiverPresentation) -> String {
        format_combination(quiver, &self.terms)
    }
}

fn format_combination(quiver: &QuiverPresentation, terms: &[(u32, Path)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    terms
        .iter()
        .map(|(c, path)| {
            if *c == 1 {
                path.label(quiver)
            } else {
                format!("{}*{}", c, path.label(quiver))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub prime: Prime,
    pub nilpotency: usize,
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
}

impl QuiverPresentation {
    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Parses a path written as `a3.a2.a1`.
    pub fn parse_path(&self, text: &str) -> std::result::Result<Path, String> {
        let names: Vec<&str> = text.split('.').map(str::trim).collect();
        if names.iter().any(|n| n.is_empty()) {
            return Err(format!("malformed path `{}`", text));
        }
        let mut arrows = Vec::with_capacity(names.len());
        for name in names.iter().rev() {
            let idx = self.arrow_index(name).ok_or_else(|| format!("unknown arrow `{}`", name))?;
            arrows.push(idx);
        }
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(format!("path `{}` is not composable", text));
            }
        }
        Ok(Path {
            source: self.arrows[arrows[0]].source,
            target: self.arrows[*arrows.last().unwrap()].target,
            arrows,
        })
    }

    /// Parses a combination `c1*p1 + c2*p2 - p3`. `id` stands for the
    /// identity at `identity_at` when one is given.
    pub fn parse_combination(
        &self,
        text: &str,
        identity_at: Option<usize>,
    ) -> std::result::Result<Vec<(u32, Path)>, String> {
        let mut terms = Vec::new();
        for (sign, raw) in split_signed_terms(text)? {
            let (coeff, path_text) = match raw.split_once('*') {
                Some((c, rest)) => {
                    let c: i64 = c
                        .trim()
                        .parse()
                        .map_err(|_| format!("bad coefficient `{}`", c.trim()))?;
                    (c, rest.trim())
                }
                None => (1, raw.trim()),
            };
            let path = if path_text == "id" {
                let obj = identity_at.ok_or_else(|| "`id` is not allowed here".to_string())?;
                Path::identity(obj)
            } else {
                self.parse_path(path_text)?
            };
            terms.push((self.prime.reduce(sign * coeff), path));
        }
        if let Some(first) = terms.first() {
            let (s, t) = (first.1.source, first.1.target);
            if terms.iter().any(|(_, p)| p.source != s || p.target != t) {
                return Err("non-parallel relation".to_string());
            }
        }
        Ok(terms)
    }
}

fn split_signed_terms(text: &str) -> std::result::Result<Vec<(i64, String)>, String> {
    let mut out = Vec::new();
    let mut sign = 1i64;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '+' | '-' => {
                if current.trim().is_empty() {
                    if ch == '-' {
                        sign = -sign;
                    }
                    continue;
                }
                out.push((sign, std::mem::take(&mut current)));
                sign = if ch == '-' { -1 } else { 1 };
            }
            _ => current.push(ch),
        }
    }
    if current.trim().is_empty() {
        return Err(format!("empty term in `{}`", text.trim()));
    }
    out.push((sign, current));
    Ok(out)
}

impl fmt::Display for QuiverPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.prime)?;
        writeln!(f, "nilpotency {}", self.nilpotency)?;
        for o in &self.objects {
            writeln!(f, "object {}", o)?;
        }
        for a in &self.arrows {
            writeln!(f, "arrow {} : {} -> {}", a.name, self.objects[a.source], self.objects[a.target])?;
        }
        for r in &self.relations {
            writeln!(f, "relation {} = 0", r.label(self))?;
        }
        Ok(())
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Column (1-based) of `needle` inside `line`, falling back to 1.
pub(crate) fn column_of(line: &str, needle: &str) -> usize {
    line.find(needle).map_or(1, |i| i + 1)
}

/// Parses the `.gcat` text format.
pub fn parse_category(text: &str) -> Result<QuiverPresentation> {
    let mut prime = None;
    let mut nilpotency = None;
    let mut objects: Vec<String> = Vec::new();
    let mut raw_arrows: Vec<(usize, String, String, String, String)> = Vec::new();
    let mut raw_relations: Vec<(usize, String, String)> = Vec::new();
    let mut last_line = 0;

    for (idx, full_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = full_line.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let (keyword, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest = rest.trim();
        let col_rest = column_of(line, rest);
        match keyword {
            "field" => {
                let p: u32 = rest
                    .parse()
                    .map_err(|_| Error::parse(lineno, col_rest, format!("expected an integer, found `{}`", rest)))?;
                prime = Some(Prime::new(p).map_err(|e| Error::parse(lineno, col_rest, e.to_string()))?);
            }
            "nilpotency" => {
                let n: i64 = rest
                    .parse()
                    .map_err(|_| Error::parse(lineno, col_rest, format!("expected an integer, found `{}`", rest)))?;
                if n < 1 {
                    return Err(Error::parse(lineno, col_rest, "nilpotency bound must be at least 1"));
                }
                nilpotency = Some(n as usize);
            }
            "object" => {
                if rest.is_empty() {
                    return Err(Error::parse(lineno, col_rest, "expected an object id"));
                }
                for id in rest.split_whitespace() {
                    let col = column_of(line, id);
                    if !is_ident(id) {
                        return Err(Error::parse(lineno, col, format!("invalid identifier `{}`", id)));
                    }
                    if objects.iter().any(|o| o == id) {
                        return Err(Error::parse(lineno, col, format!("duplicate object `{}`", id)));
                    }
                    objects.push(id.to_string());
                }
            }
            "arrow" => {
                let (name, ends) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::parse(lineno, col_rest, "expected `arrow <id> : <src> -> <dst>`"))?;
                let (src, dst) = ends
                    .split_once("->")
                    .ok_or_else(|| Error::parse(lineno, column_of(line, ends), "expected `<src> -> <dst>`"))?;
                let name = name.trim();
                if !is_ident(name) {
                    return Err(Error::parse(lineno, column_of(line, name), format!("invalid identifier `{}`", name)));
                }
                raw_arrows.push((lineno, line.to_string(), name.to_string(), src.trim().into(), dst.trim().into()));
            }
            "relation" => {
                raw_relations.push((lineno, line.to_string(), rest.to_string()));
            }
            other => {
                return Err(Error::parse(lineno, column_of(line, other), format!("unknown directive `{}`", other)));
            }
        }
    }

    if objects.is_empty() {
        return Err(Error::parse(last_line.max(1), 1, "no objects"));
    }
    let nilpotency =
        nilpotency.ok_or_else(|| Error::parse(last_line.max(1), 1, "missing `nilpotency <N>` directive"))?;

    let mut arrows: Vec<Arrow> = Vec::new();
    for (lineno, line, name, src, dst) in raw_arrows {
        if arrows.iter().any(|a| a.name == name) {
            return Err(Error::parse(lineno, column_of(&line, &name), format!("duplicate arrow `{}`", name)));
        }
        let resolve = |id: &str| {
            objects
                .iter()
                .position(|o| o == id)
                .ok_or_else(|| Error::parse(lineno, column_of(&line, id), format!("unknown object `{}`", id)))
        };
        let source = resolve(&src)?;
        let target = resolve(&dst)?;
        arrows.push(Arrow { name, source, target });
    }

    let mut quiver = QuiverPresentation {
        prime: prime.unwrap_or(Prime::TWO),
        nilpotency,
        objects,
        arrows,
        relations: Vec::new(),
    };

    for (lineno, line, rest) in raw_relations {
        let col = column_of(&line, &rest);
        let (lhs, rhs) = rest
            .split_once('=')
            .ok_or_else(|| Error::parse(lineno, col, "expected `<combination> = 0`"))?;
        if rhs.trim() != "0" {
            return Err(Error::parse(lineno, column_of(&line, rhs.trim()), "relation right-hand side must be 0"));
        }
        let terms = quiver
            .parse_combination(lhs, None)
            .map_err(|msg| Error::parse(lineno, col, msg))?;
        let first = &terms[0].1;
        quiver.relations.push(Relation { source: first.source, target: first.target, terms });
    }
    Ok(quiver)
}

/// One Hom space `Hom(source, target)` of the presented category.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: usize,
    pub target: usize,
    /// All paths `source -> target` shorter than the nilpotency bound, largest
    /// (shortlex) first; these index the coordinates of `relations`.
    paths: Vec<Path>,
    /// The relation ideal inside the path space, in canonical form.
    relations: Subspace,
    /// Normal-form representatives, smallest first.
    basis: Vec<Path>,
    /// Position in `paths` of each basis element.
    basis_columns: Vec<usize>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    fn path_column(&self, path: &Path) -> Option<usize> {
        self.paths.iter().position(|p| p == path)
    }

    /// Coordinates of a path-space vector in the normal-form basis.
    fn normal_form(&self, v: &[u32]) -> Vec<u32> {
        let red = self.relations.reduce(v);
        self.basis_columns.iter().map(|&c| red[c]).collect()
    }
}

/// A morphism of the presented category as a coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub coords: Vec<u32>,
}

impl Morphism {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// A finitely presented `F_p`-linear category with explicit Hom bases and
/// composition tables.
#[derive(Clone, Debug)]
pub struct CategoryData {
    quiver: QuiverPresentation,
    homs: Vec<HomSpace>,
    /// `tables[(a*n + b)*n + c][g*dim(a,b) + f]` = coords of `g∘f` in Hom(a,c).
    tables: Vec<Vec<Vec<u32>>>,
    identities: Vec<Vec<u32>>,
    arrow_coords: Vec<Vec<u32>>,
}

impl CategoryData {
    pub fn quiver(&self) -> &QuiverPresentation {
        &self.quiver
    }

    pub fn prime(&self) -> Prime {
        self.quiver.prime
    }

    pub fn num_objects(&self) -> usize {
        self.quiver.objects.len()
    }

    pub fn object_name(&self, i: usize) -> &str {
        &self.quiver.objects[i]
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.quiver.object_index(name).ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.quiver.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.quiver.relations
    }

    pub fn hom(&self, a: usize, b: usize) -> &HomSpace {
        &self.homs[a * self.num_objects() + b]
    }

    pub fn hom_dim(&self, a: usize, b: usize) -> usize {
        self.hom(a, b).dim()
    }

    pub fn identity(&self, a: usize) -> Morphism {
        Morphism { source: a, target: a, coords: self.identities[a].clone() }
    }

    pub fn zero(&self, a: usize, b: usize) -> Morphism {
        Morphism { source: a, target: b, coords: vec![0; self.hom_dim(a, b)] }
    }

    pub fn arrow(&self, i: usize) -> Morphism {
        let ar = &self.quiver.arrows[i];
        Morphism { source: ar.source, target: ar.target, coords: self.arrow_coords[i].clone() }
    }

    /// The `i`-th basis morphism of `Hom(a,b)`.
    pub fn basis_morphism(&self, a: usize, b: usize, i: usize) -> Morphism {
        let mut coords = vec![0; self.hom_dim(a, b)];
        coords[i] = 1;
        Morphism { source: a, target: b, coords }
    }

    /// The class of a path.
    pub fn path_morphism(&self, path: &Path) -> Morphism {
        self.combination_morphism(path.source, path.target, &[(1, path.clone())])
    }

    /// The class of a linear combination of parallel paths from `a` to `b`.
    pub fn combination_morphism(&self, a: usize, b: usize, terms: &[(u32, Path)]) -> Morphism {
        let p = self.prime();
        let hom = self.hom(a, b);
        let mut v = vec![0u32; hom.paths.len()];
        for (c, path) in terms {
            debug_assert!(path.source == a && path.target == b);
            // Paths at or beyond the nilpotency bound vanish.
            if let Some(col) = hom.path_column(path) {
                v[col] = p.add(v[col], *c % p.get());
            }
        }
        Morphism { source: a, target: b, coords: hom.normal_form(&v) }
    }

    fn table(&self, a: usize, b: usize, c: usize) -> &[Vec<u32>] {
        let n = self.num_objects();
        &self.tables[(a * n + b) * n + c]
    }

    /// `g∘f` on raw coordinates, with `f ∈ Hom(a,b)` and `g ∈ Hom(b,c)`.
    pub fn compose_coords(&self, a: usize, b: usize, c: usize, g: &[u32], f: &[u32]) -> Vec<u32> {
        let p = self.prime();
        let dab = self.hom_dim(a, b);
        let mut out = vec![0u32; self.hom_dim(a, c)];
        let table = self.table(a, b, c);
        for (i, &gi) in g.iter().enumerate() {
            if gi == 0 {
                continue;
            }
            for (j, &fj) in f.iter().enumerate() {
                if fj == 0 {
                    continue;
                }
                let s = p.mul(gi, fj);
                for (o, &t) in out.iter_mut().zip(&table[i * dab + j]) {
                    *o = p.add(*o, p.mul(s, t));
                }
            }
        }
        out
    }

    /// `g∘f` ("`f` then `g`").
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        if f.target != g.source {
            return Err(Error::NotComposable(format!(
                "{} -> {} then {} -> {}",
                self.object_name(f.source),
                self.object_name(f.target),
                self.object_name(g.source),
                self.object_name(g.target)
            )));
        }
        Ok(Morphism {
            source: f.source,
            target: g.target,
            coords: self.compose_coords(f.source, f.target, g.target, &g.coords, &f.coords),
        })
    }

    /// Matrix of `f ↦ g∘f` from `Hom(x, g.source)` to `Hom(x, g.target)`.
    pub fn postcompose_matrix(&self, g: &Morphism, x: usize) -> Matrix {
        let (b, c) = (g.source, g.target);
        let d = self.hom_dim(x, b);
        let cols: Vec<Vec<u32>> = (0..d)
            .map(|j| {
                let mut f = vec![0; d];
                f[j] = 1;
                self.compose_coords(x, b, c, &g.coords, &f)
            })
            .collect();
        Matrix::from_columns(self.prime(), self.hom_dim(x, c), &cols)
    }

    /// Matrix of `f ↦ f∘h` from `Hom(h.target, x)` to `Hom(h.source, x)`.
    pub fn precompose_matrix(&self, h: &Morphism, x: usize) -> Matrix {
        let (a, b) = (h.source, h.target);
        let d = self.hom_dim(b, x);
        let cols: Vec<Vec<u32>> = (0..d)
            .map(|j| {
                let mut f = vec![0; d];
                f[j] = 1;
                self.compose_coords(a, b, x, &f, &h.coords)
            })
            .collect();
        Matrix::from_columns(self.prime(), self.hom_dim(a, x), &cols)
    }

    /// Every morphism `a -> b`, lexicographic in coordinates.
    pub fn enumerate_morphisms(&self, a: usize, b: usize, cap: u64) -> Result<Vec<Morphism>> {
        Ok(enumerate_vectors(self.prime(), self.hom_dim(a, b), cap)?
            .into_iter()
            .map(|coords| Morphism { source: a, target: b, coords })
            .collect())
    }

    /// Human-readable form such as `b2.a2 + 1`.
    pub fn format_morphism(&self, m: &Morphism) -> String {
        let hom = self.hom(m.source, m.target);
        let terms: Vec<(u32, Path)> = m
            .coords
            .iter()
            .zip(hom.basis())
            .filter(|(c, _)| **c != 0)
            .map(|(c, p)| (*c, p.clone()))
            .collect();
        format_combination(&self.quiver, &terms)
    }

    /// All quiver paths with exactly `len` arrows.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        paths_of_length(&self.quiver, len)
    }
}

fn paths_of_length(quiver: &QuiverPresentation, len: usize) -> Vec<Path> {
    let mut layer: Vec<Path> = (0..quiver.objects.len()).map(Path::identity).collect();
    for _ in 0..len {
        let mut next = Vec::new();
        for path in &layer {
            for (i, a) in quiver.arrows.iter().enumerate() {
                if a.source == path.target {
                    let mut arrows = path.arrows.clone();
                    arrows.push(i);
                    next.push(Path { source: path.source, target: a.target, arrows });
                }
            }
        }
        layer = next;
    }
    layer
}

/// Computes Hom bases and composition tables for a presentation.
pub fn build_category(quiver: QuiverPresentation) -> Result<CategoryData> {
    let n = quiver.objects.len();
    let p = quiver.prime;

    let mut all_paths: Vec<Path> = Vec::new();
    for len in 0..quiver.nilpotency {
        let layer = paths_of_length(&quiver, len);
        all_paths.extend(layer);
        if all_paths.len() > MAX_PATHS {
            return Err(Error::CapExceeded { what: "path enumeration", cap: MAX_PATHS as u64 });
        }
    }

    // Per (a,b): path list sorted largest first.
    let mut paths_by_pair: Vec<Vec<Path>> = vec![Vec::new(); n * n];
    for path in &all_paths {
        paths_by_pair[path.source * n + path.target].push(path.clone());
    }
    for list in &mut paths_by_pair {
        list.sort_by(|x, y| y.shortlex(x));
    }
    let column_index: Vec<HashMap<Path, usize>> = paths_by_pair
        .iter()
        .map(|list| list.iter().cloned().enumerate().map(|(i, q)| (q, i)).collect())
        .collect();

    // Ideal generators: u · r · w for paths w into the relation source and u
    // out of its target, truncated at the nilpotency bound.
    let mut generators: Vec<Vec<Vec<u32>>> = vec![Vec::new(); n * n];
    for rel in &quiver.relations {
        for w in all_paths.iter().filter(|w| w.target == rel.source) {
            for u in all_paths.iter().filter(|u| u.source == rel.target) {
                let (a, b) = (w.source, u.target);
                let mut v = vec![0u32; paths_by_pair[a * n + b].len()];
                let mut nonzero = false;
                for (c, term) in &rel.terms {
                    let full = w.then(term).then(u);
                    if let Some(&col) = column_index[a * n + b].get(&full) {
                        v[col] = p.add(v[col], *c);
                        nonzero |= *c != 0;
                    }
                }
                if nonzero {
                    generators[a * n + b].push(v);
                }
            }
        }
    }

    let mut homs = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let paths = paths_by_pair[a * n + b].clone();
            let relations = Subspace::span(p, paths.len(), &generators[a * n + b]);
            let mut basis_columns = relations.free_columns();
            basis_columns.reverse();
            let basis = basis_columns.iter().map(|&c| paths[c].clone()).collect();
            homs.push(HomSpace { source: a, target: b, paths, relations, basis, basis_columns });
        }
    }

    let mut cat = CategoryData {
        quiver,
        homs,
        tables: Vec::new(),
        identities: Vec::new(),
        arrow_coords: Vec::new(),
    };

    let mut tables = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let fs = cat.hom(a, b).basis().to_vec();
                let gs = cat.hom(b, c).basis().to_vec();
                let mut table = Vec::with_capacity(fs.len() * gs.len());
                for g in &gs {
                    for f in &fs {
                        table.push(cat.path_morphism(&f.then(g)).coords);
                    }
                }
                tables.push(table);
            }
        }
    }
    cat.tables = tables;
    cat.identities = (0..n).map(|a| cat.path_morphism(&Path::identity(a)).coords).collect();
    cat.arrow_coords = (0..cat.quiver.arrows.len())
        .map(|i| {
            let ar = &cat.quiver.arrows[i];
            cat.path_morphism(&Path { source: ar.source, target: ar.target, arrows: vec![i] }).coords
        })
        .collect();
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str = "field 2\nnilpotency 2\nobject x\narrow e : x -> x\nrelation e.e = 0\n";

    #[test]
    fn parse_errors() {
        let err = parse_category("field 2\nnilpotency 1\n").unwrap_err();
        assert!(err.to_string().contains("no objects"), "{err}");

        let text = "nilpotency 2\nobject v0 v1 v2\narrow a : v0 -> v1\narrow b : v0 -> v2\nrelation a + b = 0\n";
        let err = parse_category(text).unwrap_err();
        assert!(err.to_string().contains("non-parallel relation"), "{err}");
        assert!(err.to_string().starts_with("5:"), "{err}");

        let err = parse_category("field 4\nnilpotency 1\nobject x\n").unwrap_err();
        assert!(err.to_string().contains("not a prime"), "{err}");

        let err = parse_category("nilpotency 0\nobject x\n").unwrap_err();
        assert!(err.to_string().contains("at least 1"), "{err}");

        let err = parse_category("nilpotency 2\nobject x\narrow e : x -> y\n").unwrap_err();
        assert_eq!(err.to_string(), "3:16: unknown object `y`");

        let err = parse_category("nilpotency 2\nobject x\nrelation f.f = 0\n").unwrap_err();
        assert!(err.to_string().contains("unknown arrow `f`"), "{err}");
    }

    #[test]
    fn point_category() {
        let cat = build_category(parse_category("nilpotency 1\nobject pt\n").unwrap()).unwrap();
        assert_eq!(cat.hom_dim(0, 0), 1);
        assert_eq!(cat.identity(0).coords, vec![1]);
    }

    #[test]
    fn dual_numbers() {
        let cat = build_category(parse_category(DUAL).unwrap()).unwrap();
        assert_eq!(cat.hom_dim(0, 0), 2);
        let eps = cat.arrow(0);
        assert_eq!(cat.format_morphism(&eps), "e");
        assert!(cat.compose(&eps, &eps).unwrap().is_zero());
        assert_eq!(cat.enumerate_morphisms(0, 0, 1 << 20).unwrap().len(), 4);
    }

    #[test]
    fn non_composable_pair_is_rejected() {
        let text = "nilpotency 2\nobject x y\narrow a : x -> y\n";
        let cat = build_category(parse_category(text).unwrap()).unwrap();
        let a = cat.arrow(0);
        assert!(matches!(cat.compose(&a, &a), Err(Error::NotComposable(_))));
    }

    #[test]
    fn nilpotency_truncates_long_paths() {
        // A single loop with no relations: the bound alone cuts Hom at e^2.
        let text = "nilpotency 3\nobject x\narrow e : x -> x\n";
        let cat = build_category(parse_category(text).unwrap()).unwrap();
        assert_eq!(cat.hom_dim(0, 0), 3);
        let e = cat.arrow(0);
        let e2 = cat.compose(&e, &e).unwrap();
        assert!(!e2.is_zero());
        assert!(cat.compose(&e, &e2).unwrap().is_zero());
    }

    #[test]
    fn coefficients_and_signs() {
        let text = "field 3\nnilpotency 2\nobject x y\narrow a : x -> y\narrow b : x -> y\nrelation a - 2*b = 0\n";
        let q = parse_category(text).unwrap();
        assert_eq!(q.relations[0].terms[0].0, 1);
        assert_eq!(q.relations[0].terms[1].0, 1); // -2 mod 3
        let cat = build_category(q).unwrap();
        assert_eq!(cat.hom_dim(0, 1), 1);
        // b = -a, and a is the smaller representative.
        assert_eq!(cat.format_morphism(&cat.arrow(0)), "a");
        assert_eq!(cat.format_morphism(&cat.arrow(1)), "2*a");
    }
}
