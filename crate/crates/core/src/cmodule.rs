//! Finite-dimensional modules over a presented category, their morphisms and
//! their submodules.
//!
//! A module assigns a vector space `F_p^d` to each object and a matrix to
//! each arrow, with `M(g∘f) = M(g)·M(f)`. Elements of fibers are column
//! vectors.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{enumerate_vectors, Matrix, Prime, Subspace};
use crate::presentation::{CategoryData, Morphism, Path};

/// A functor from the presented category to finite-dimensional spaces.
#[derive(Clone)]
pub struct CModule {
    cat: Arc<CategoryData>,
    dims: Vec<usize>,
    action: Vec<Matrix>,
    /// `M(f)` for every Hom basis element, filled on first use.
    basis_eval: OnceLock<Arc<Vec<Vec<Matrix>>>>,
}

impl std::fmt::Debug for CModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CModule").field("dims", &self.dims).field("action", &self.action).finish()
    }
}

impl PartialEq for CModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.cat, &other.cat) && self.dims == other.dims && self.action == other.action
    }
}

impl Eq for CModule {}

impl CModule {
    /// Builds and validates a module.
    pub fn new(cat: Arc<CategoryData>, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Self> {
        let m = Self::new_unchecked(cat, dims, action);
        m.validate()?;
        Ok(m)
    }

    /// Builds a module without checking relations. Shapes must still match.
    pub fn new_unchecked(cat: Arc<CategoryData>, dims: Vec<usize>, action: Vec<Matrix>) -> Self {
        assert_eq!(dims.len(), cat.num_objects(), "one dimension per object");
        assert_eq!(action.len(), cat.arrows().len(), "one matrix per arrow");
        for (ar, m) in cat.arrows().iter().zip(&action) {
            assert_eq!((m.rows(), m.cols()), (dims[ar.target], dims[ar.source]), "arrow matrix shape");
        }
        CModule { cat, dims, action, basis_eval: OnceLock::new() }
    }

    pub fn zero(cat: &Arc<CategoryData>) -> Self {
        let p = cat.prime();
        let action = cat.arrows().iter().map(|_| Matrix::zeros(p, 0, 0)).collect();
        Self::new_unchecked(cat.clone(), vec![0; cat.num_objects()], action)
    }

    pub fn category(&self) -> &Arc<CategoryData> {
        &self.cat
    }

    pub fn prime(&self) -> Prime {
        self.cat.prime()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn action(&self, arrow: usize) -> &Matrix {
        &self.action[arrow]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Checks every relation and the vanishing of paths at the nilpotency bound.
    pub fn validate(&self) -> Result<()> {
        let quiver = self.cat.quiver();
        for rel in self.cat.relations() {
            let mut sum = Matrix::zeros(self.prime(), self.dims[rel.target], self.dims[rel.source]);
            for (c, path) in &rel.terms {
                sum = sum.add(&self.eval_path(path).scale(*c));
            }
            if !sum.is_zero() {
                return Err(Error::InvalidModule(format!("relation {} violated", rel.label(quiver))));
            }
        }
        for path in self.cat.paths_of_length(quiver.nilpotency) {
            if !self.eval_path(&path).is_zero() {
                return Err(Error::InvalidModule(format!(
                    "path {} at the nilpotency bound does not vanish",
                    path.label(quiver)
                )));
            }
        }
        Ok(())
    }

    pub fn eval_path(&self, path: &Path) -> Matrix {
        let mut m = Matrix::identity(self.prime(), self.dims[path.source]);
        for &a in &path.arrows {
            m = self.action[a].mul(&m);
        }
        m
    }

    fn basis_eval(&self) -> &Arc<Vec<Vec<Matrix>>> {
        self.basis_eval.get_or_init(|| {
            let n = self.cat.num_objects();
            let mut out = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    out.push(self.cat.hom(a, b).basis().iter().map(|p| self.eval_path(p)).collect());
                }
            }
            Arc::new(out)
        })
    }

    /// `M(f)` for each basis morphism of `Hom(a,b)`.
    pub fn eval_basis(&self, a: usize, b: usize) -> &[Matrix] {
        &self.basis_eval()[a * self.cat.num_objects() + b]
    }

    pub fn eval_morphism(&self, f: &Morphism) -> Matrix {
        let mut out = Matrix::zeros(self.prime(), self.dims[f.target], self.dims[f.source]);
        for (c, m) in f.coords.iter().zip(self.eval_basis(f.source, f.target)) {
            if *c != 0 {
                out = out.add(&m.scale(*c));
            }
        }
        out
    }

    /// Matrix of `h ↦ M(h)·x` from `Hom(c,b)` to `M(b)`, for `x ∈ M(c)`.
    pub fn evaluation_matrix(&self, c: usize, x: &[u32], b: usize) -> Matrix {
        let cols: Vec<Vec<u32>> = self.eval_basis(c, b).iter().map(|m| m.mul_vec(x)).collect();
        Matrix::from_columns(self.prime(), self.dims[b], &cols)
    }

    /// Serializes in the `.gmod` format.
    pub fn to_gmod(&self, catfile: &str) -> String {
        let mut out = format!("module over {}\n", catfile);
        for (x, &d) in self.dims.iter().enumerate() {
            if d > 0 {
                let _ = writeln!(out, "space {} dim {}", self.cat.object_name(x), d);
            }
        }
        for (ar, m) in self.cat.arrows().iter().zip(&self.action) {
            if m.rows() > 0 && m.cols() > 0 && !m.is_zero() {
                let _ = writeln!(out, "map {} = {}", ar.name, m);
            }
        }
        out
    }
}

/// The representable module `Hom(c, -)` with postcomposition action.
pub fn representable(cat: &Arc<CategoryData>, c: usize) -> CModule {
    let n = cat.num_objects();
    let dims = (0..n).map(|x| cat.hom_dim(c, x)).collect();
    let action = (0..cat.arrows().len()).map(|i| cat.postcompose_matrix(&cat.arrow(i), c)).collect();
    CModule::new_unchecked(cat.clone(), dims, action)
}

/// A natural transformation between modules over the same category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransform {
    pub source: CModule,
    pub target: CModule,
    pub components: Vec<Matrix>,
}

impl NatTransform {
    pub fn new(source: CModule, target: CModule, components: Vec<Matrix>) -> Result<Self> {
        let t = NatTransform { source, target, components };
        if let Some(a) = t.naturality_failure() {
            return Err(Error::Invalid(format!(
                "naturality fails on arrow {}",
                t.source.category().arrows()[a].name
            )));
        }
        Ok(t)
    }

    pub fn identity(m: &CModule) -> Self {
        let components = m.dims().iter().map(|&d| Matrix::identity(m.prime(), d)).collect();
        NatTransform { source: m.clone(), target: m.clone(), components }
    }

    pub fn zero(source: &CModule, target: &CModule) -> Self {
        let components = (0..source.dims().len())
            .map(|x| Matrix::zeros(source.prime(), target.dim(x), source.dim(x)))
            .collect();
        NatTransform { source: source.clone(), target: target.clone(), components }
    }

    /// First arrow on which naturality fails, if any.
    pub fn naturality_failure(&self) -> Option<usize> {
        self.source.category().arrows().iter().enumerate().find_map(|(i, ar)| {
            let lhs = self.components[ar.target].mul(self.source.action(i));
            let rhs = self.target.action(i).mul(&self.components[ar.source]);
            (lhs != rhs).then_some(i)
        })
    }

    pub fn is_natural(&self) -> bool {
        self.naturality_failure().is_none()
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &NatTransform) -> NatTransform {
        assert_eq!(other.target.dims(), self.source.dims(), "composition of incompatible transformations");
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a.mul(b)).collect();
        NatTransform { source: other.source.clone(), target: self.target.clone(), components }
    }

    pub fn add(&self, other: &NatTransform) -> NatTransform {
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect();
        NatTransform { source: self.source.clone(), target: self.target.clone(), components }
    }

    pub fn scale(&self, c: u32) -> NatTransform {
        let components = self.components.iter().map(|a| a.scale(c)).collect();
        NatTransform { source: self.source.clone(), target: self.target.clone(), components }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    pub fn is_mono(&self) -> bool {
        self.components.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.components.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<NatTransform> {
        let components = self.components.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(NatTransform { source: self.target.clone(), target: self.source.clone(), components })
    }

    pub fn flatten(&self) -> Vec<u32> {
        self.components.iter().flat_map(|m| m.data().iter().copied()).collect()
    }
}

/// The Yoneda transformation `Hom(c,-) -> M` sending `h` to `M(h)·x`.
pub fn yoneda_element(m: &CModule, c: usize, x: &[u32]) -> NatTransform {
    let cat = m.category();
    let source = representable(cat, c);
    let components = (0..cat.num_objects()).map(|b| m.evaluation_matrix(c, x, b)).collect();
    NatTransform { source, target: m.clone(), components }
}

/// The space `Nat(M, N)` as the solution set of the naturality equations on
/// generating arrows, flattened component by component (row-major).
#[derive(Clone, Debug)]
pub struct NatSpace {
    source: CModule,
    target: CModule,
    offsets: Vec<usize>,
    solutions: Subspace,
}

impl NatSpace {
    pub fn source(&self) -> &CModule {
        &self.source
    }

    pub fn target(&self) -> &CModule {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.solutions.dim()
    }

    pub fn solutions(&self) -> &Subspace {
        &self.solutions
    }

    pub fn element(&self, coords: &[u32]) -> NatTransform {
        self.unflatten(&self.solutions.combine(coords))
    }

    pub fn basis(&self) -> Vec<NatTransform> {
        (0..self.dim())
            .map(|i| self.unflatten(self.solutions.basis().row(i)))
            .collect()
    }

    /// Coordinates of a transformation in the basis, `None` if it is not in
    /// the space (not natural, or shaped differently).
    pub fn coordinates(&self, t: &NatTransform) -> Option<Vec<u32>> {
        let flat = t.flatten();
        if flat.len() != self.solutions.ambient_dim() {
            return None;
        }
        self.solutions.coordinates(&flat)
    }

    /// Coordinates of a bare component list.
    pub fn component_coordinates(&self, components: &[Matrix]) -> Option<Vec<u32>> {
        let flat: Vec<u32> = components.iter().flat_map(|m| m.data().iter().copied()).collect();
        if flat.len() != self.solutions.ambient_dim() {
            return None;
        }
        self.solutions.coordinates(&flat)
    }

    /// Components of the element with the given coordinates.
    pub fn components_of(&self, coords: &[u32]) -> Vec<Matrix> {
        self.split(&self.solutions.combine(coords))
    }

    fn split(&self, v: &[u32]) -> Vec<Matrix> {
        let p = self.source.prime();
        (0..self.source.dims().len())
            .map(|x| {
                let (r, c) = (self.target.dim(x), self.source.dim(x));
                let off = self.offsets[x];
                Matrix::from_fn(p, r, c, |i, j| v[off + i * c + j])
            })
            .collect()
    }

    fn unflatten(&self, v: &[u32]) -> NatTransform {
        NatTransform { source: self.source.clone(), target: self.target.clone(), components: self.split(v) }
    }
}

/// Solves for all natural transformations `M -> N`.
pub fn nat_hom(m: &CModule, n: &CModule) -> NatSpace {
    let cat = m.category();
    let p = m.prime();
    let objects = cat.num_objects();
    let mut offsets = Vec::with_capacity(objects);
    let mut total = 0;
    for x in 0..objects {
        offsets.push(total);
        total += n.dim(x) * m.dim(x);
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (i, ar) in cat.arrows().iter().enumerate() {
        let (x, y) = (ar.source, ar.target);
        let (ma, na) = (m.action(i), n.action(i));
        // (η_Y · M(a) - N(a) · η_X)[r, s] = 0
        for r in 0..n.dim(y) {
            for s in 0..m.dim(x) {
                let mut row = vec![0u32; total];
                for k in 0..m.dim(y) {
                    let idx = offsets[y] + r * m.dim(y) + k;
                    row[idx] = p.add(row[idx], ma.get(k, s));
                }
                for k in 0..n.dim(x) {
                    let idx = offsets[x] + k * m.dim(x) + s;
                    row[idx] = p.sub(row[idx], na.get(r, k));
                }
                rows.push(row);
            }
        }
    }
    let solutions = Matrix::from_rows(p, total, &rows).kernel();
    NatSpace { source: m.clone(), target: n.clone(), offsets, solutions }
}

/// A submodule: one subspace per object, stable under the action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subfunctor {
    pub parent: CModule,
    pub spaces: Vec<Subspace>,
}

impl Subfunctor {
    pub fn new(parent: CModule, spaces: Vec<Subspace>) -> Result<Self> {
        let s = Subfunctor { parent, spaces };
        if let Some(a) = s.closure_failure() {
            return Err(Error::Invalid(format!(
                "subspaces are not closed under arrow {}",
                s.parent.category().arrows()[a].name
            )));
        }
        Ok(s)
    }

    pub fn full(m: &CModule) -> Self {
        let spaces = m.dims().iter().map(|&d| Subspace::full(m.prime(), d)).collect();
        Subfunctor { parent: m.clone(), spaces }
    }

    pub fn zero(m: &CModule) -> Self {
        let spaces = m.dims().iter().map(|&d| Subspace::zero(m.prime(), d)).collect();
        Subfunctor { parent: m.clone(), spaces }
    }

    /// First arrow that maps some `S(C)` outside `S(D)`, if any.
    pub fn closure_failure(&self) -> Option<usize> {
        self.parent.category().arrows().iter().enumerate().find_map(|(i, ar)| {
            let img = self.spaces[ar.source].image_under(self.parent.action(i));
            (!img.is_subspace_of(&self.spaces[ar.target])).then_some(i)
        })
    }

    pub fn is_closed(&self) -> bool {
        self.closure_failure().is_none()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.iter().all(Subspace::is_zero)
    }

    pub fn is_full(&self) -> bool {
        self.spaces.iter().all(Subspace::is_full)
    }

    pub fn is_subfunctor_of(&self, other: &Subfunctor) -> bool {
        self.spaces.iter().zip(&other.spaces).all(|(a, b)| a.is_subspace_of(b))
    }

    /// The submodule as a module in its own right, using the RREF basis of
    /// each subspace.
    pub fn as_module(&self) -> CModule {
        let cat = self.parent.category();
        let p = self.parent.prime();
        let action = cat
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, ar)| {
                let (src, dst) = (&self.spaces[ar.source], &self.spaces[ar.target]);
                let cols: Vec<Vec<u32>> = (0..src.dim())
                    .map(|r| {
                        let image = self.parent.action(i).mul_vec(src.basis().row(r));
                        dst.coordinates(&image).expect("subfunctor is closed under the action")
                    })
                    .collect();
                Matrix::from_columns(p, dst.dim(), &cols)
            })
            .collect();
        CModule::new_unchecked(cat.clone(), self.dims(), action)
    }

    /// The inclusion of `as_module()` into the parent.
    pub fn inclusion(&self) -> NatTransform {
        let components = self.spaces.iter().map(|s| s.basis().transpose()).collect();
        NatTransform { source: self.as_module(), target: self.parent.clone(), components }
    }

    /// Restricts a transformation out of the parent to this submodule.
    pub fn restrict(&self, t: &NatTransform) -> NatTransform {
        t.after(&self.inclusion())
    }
}

/// Pointwise kernel, as a submodule of the source.
pub fn kernel(f: &NatTransform) -> Subfunctor {
    let spaces = f.components.iter().map(Matrix::kernel).collect();
    Subfunctor { parent: f.source.clone(), spaces }
}

/// Pointwise image, as a submodule of the target.
pub fn image(f: &NatTransform) -> Subfunctor {
    let spaces = f.components.iter().map(Matrix::image).collect();
    Subfunctor { parent: f.target.clone(), spaces }
}

/// The smallest submodule containing the given `(object, vector)` elements.
pub fn sub_generated(m: &CModule, elements: &[(usize, Vec<u32>)]) -> Subfunctor {
    let cat = m.category();
    let p = m.prime();
    let n = cat.num_objects();
    // Closing under Hom-basis actions reaches the fixpoint in one pass.
    let mut gens: Vec<Vec<Vec<u32>>> = vec![Vec::new(); n];
    for (c, x) in elements {
        for b in 0..n {
            for f in m.eval_basis(*c, b) {
                gens[b].push(f.mul_vec(x));
            }
        }
    }
    let spaces = (0..n).map(|b| Subspace::span(p, m.dim(b), &gens[b])).collect();
    let s = Subfunctor { parent: m.clone(), spaces };
    debug_assert!(s.is_closed());
    s
}

/// The quotient module together with its projection.
pub fn quotient(m: &CModule, s: &Subfunctor) -> (CModule, NatTransform) {
    let cat = m.category();
    let proj: Vec<Matrix> = s.spaces.iter().map(Subspace::quotient_map).collect();
    let lifts: Vec<Matrix> = s.spaces.iter().map(Subspace::quotient_lift).collect();
    let dims = proj.iter().map(Matrix::rows).collect();
    let action = cat
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, ar)| proj[ar.target].mul(m.action(i)).mul(&lifts[ar.source]))
        .collect();
    let q = CModule::new_unchecked(cat.clone(), dims, action);
    let projection = NatTransform { source: m.clone(), target: q.clone(), components: proj };
    (q, projection)
}

/// The cokernel module `N / im f` and its projection.
pub fn cokernel(f: &NatTransform) -> (CModule, NatTransform) {
    quotient(&f.target, &image(f))
}

pub fn sub_meet(s: &Subfunctor, t: &Subfunctor) -> Subfunctor {
    let spaces = s.spaces.iter().zip(&t.spaces).map(|(a, b)| a.meet(b)).collect();
    Subfunctor { parent: s.parent.clone(), spaces }
}

pub fn sub_join(s: &Subfunctor, t: &Subfunctor) -> Subfunctor {
    let spaces = s.spaces.iter().zip(&t.spaces).map(|(a, b)| a.join(b)).collect();
    Subfunctor { parent: s.parent.clone(), spaces }
}

/// Every submodule of `m`, in canonical order (total dimension, then RREF
/// bases). Every submodule is a join of cyclic ones, so this closes the
/// cyclic submodules under joins.
pub fn all_subfunctors(m: &CModule, cap: u64, max_count: usize) -> Result<Vec<Subfunctor>> {
    let n = m.category().num_objects();
    let mut seen: HashSet<Vec<Subspace>> = HashSet::new();
    let mut found: Vec<Subfunctor> = Vec::new();
    for x in 0..n {
        for v in enumerate_vectors(m.prime(), m.dim(x), cap)? {
            let s = sub_generated(m, &[(x, v)]);
            if seen.insert(s.spaces.clone()) {
                found.push(s);
            }
        }
    }
    if found.is_empty() {
        found.push(Subfunctor::zero(m));
        seen.insert(found[0].spaces.clone());
    }
    let mut frontier_start = 0;
    loop {
        let len = found.len();
        let mut fresh = Vec::new();
        for i in frontier_start..len {
            for j in 0..len {
                let s = sub_join(&found[i], &found[j]);
                if seen.insert(s.spaces.clone()) {
                    fresh.push(s);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        frontier_start = len;
        found.extend(fresh);
        if found.len() > max_count {
            return Err(Error::CapExceeded { what: "submodule lattice", cap: max_count as u64 });
        }
    }
    found.sort_by(|a, b| a.total_dim().cmp(&b.total_dim()).then_with(|| a.spaces.cmp(&b.spaces)));
    Ok(found)
}

/// Parses the `.gmod` format against an already-built category.
pub fn parse_module(text: &str, cat: &Arc<CategoryData>) -> Result<CModule> {
    let p = cat.prime();
    let n = cat.num_objects();
    let mut dims = vec![0usize; n];
    let mut seen_space = vec![false; n];
    let mut maps: Vec<Option<(usize, Vec<Vec<i64>>)>> = vec![None; cat.arrows().len()];
    let mut header = false;

    for (idx, full_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = full_line.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let (keyword, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest = rest.trim();
        let col = crate::presentation::column_of(line, rest);
        match keyword {
            "module" => {
                if !rest.starts_with("over") {
                    return Err(Error::parse(lineno, col, "expected `module over <catfile>`"));
                }
                header = true;
            }
            "space" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 3 || parts[1] != "dim" {
                    return Err(Error::parse(lineno, col, "expected `space <object> dim <d>`"));
                }
                let x = cat
                    .quiver()
                    .object_index(parts[0])
                    .ok_or_else(|| Error::parse(lineno, col, format!("unknown object `{}`", parts[0])))?;
                if seen_space[x] {
                    return Err(Error::parse(lineno, col, format!("duplicate space `{}`", parts[0])));
                }
                seen_space[x] = true;
                dims[x] = parts[2].parse().map_err(|_| {
                    Error::parse(lineno, crate::presentation::column_of(line, parts[2]), "expected a dimension")
                })?;
            }
            "map" => {
                let (name, mat) = rest
                    .split_once('=')
                    .ok_or_else(|| Error::parse(lineno, col, "expected `map <arrow> = [[...]]`"))?;
                let name = name.trim();
                let a = cat
                    .quiver()
                    .arrow_index(name)
                    .ok_or_else(|| Error::parse(lineno, col, format!("unknown arrow `{}`", name)))?;
                let rows = parse_matrix_literal(mat.trim())
                    .map_err(|msg| Error::parse(lineno, crate::presentation::column_of(line, mat.trim()), msg))?;
                if maps[a].is_some() {
                    return Err(Error::parse(lineno, col, format!("duplicate map for `{}`", name)));
                }
                maps[a] = Some((lineno, rows));
            }
            other => {
                return Err(Error::parse(lineno, 1, format!("unknown directive `{}`", other)));
            }
        }
    }
    if !header {
        return Err(Error::parse(1, 1, "missing `module over <catfile>` header"));
    }

    let mut action = Vec::with_capacity(maps.len());
    for (a, entry) in maps.into_iter().enumerate() {
        let ar = &cat.arrows()[a];
        let (r, c) = (dims[ar.target], dims[ar.source]);
        match entry {
            None => action.push(Matrix::zeros(p, r, c)),
            Some((lineno, rows)) => {
                let shape_ok = if r == 0 {
                    rows.is_empty() || rows.iter().all(|row| row.is_empty())
                } else {
                    rows.len() == r && rows.iter().all(|row| row.len() == c)
                };
                if !shape_ok {
                    return Err(Error::parse(
                        lineno,
                        1,
                        format!("dimension mismatch for arrow {}: expected {}x{} matrix", ar.name, r, c),
                    ));
                }
                let reduced: Vec<Vec<u32>> = if r == 0 {
                    Vec::new()
                } else {
                    rows.iter().map(|row| row.iter().map(|&v| p.reduce(v)).collect()).collect()
                };
                action.push(Matrix::from_rows(p, c, &reduced));
            }
        }
    }
    CModule::new(cat.clone(), dims, action)
}

fn parse_matrix_literal(text: &str) -> std::result::Result<Vec<Vec<i64>>, String> {
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| format!("malformed matrix `{}`", text))?
        .trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    let mut rest = inner;
    loop {
        rest = rest.trim_start();
        let body = rest.strip_prefix('[').ok_or_else(|| format!("malformed matrix `{}`", text))?;
        let end = body.find(']').ok_or_else(|| format!("malformed matrix `{}`", text))?;
        let row: Vec<i64> = body[..end]
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<i64>().map_err(|_| format!("bad matrix entry `{}`", s)))
            .collect::<std::result::Result<_, _>>()?;
        rows.push(row);
        rest = body[end + 1..].trim_start();
        if rest.is_empty() {
            break;
        }
        rest = rest.strip_prefix(',').ok_or_else(|| format!("malformed matrix `{}`", text))?;
    }
    Ok(rows)
}
