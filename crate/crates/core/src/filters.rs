//! Left ideals of representables, their lattices, filters of ideals and the
//! torsion theory a filter determines.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::cmodule::{quotient, representable, sub_generated, sub_join, sub_meet, CModule, Subfunctor};
use crate::error::{Error, Result};
use crate::linalg::{enumerate_vectors, preimage, Prime, Subspace};
use crate::presentation::{CategoryData, Morphism};

/// Default bound on enumerated fibers and Hom sets.
pub const DEFAULT_CAP: u64 = 1 << 20;

/// Largest lattice the enumeration accepts.
pub const MAX_IDEALS: usize = 64;

/// A subfunctor of `Hom(c,-)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftIdeal {
    pub base: usize,
    pub body: Subfunctor,
}

impl LeftIdeal {
    pub fn spaces(&self) -> &[Subspace] {
        &self.body.spaces
    }

    pub fn dims(&self) -> Vec<usize> {
        self.body.dims()
    }

    pub fn is_subideal_of(&self, other: &LeftIdeal) -> bool {
        self.body.is_subfunctor_of(&other.body)
    }
}

/// `Ann(x,-)`: morphisms out of `c` that kill `x ∈ M(c)`.
pub fn annihilator(m: &CModule, c: usize, x: &[u32]) -> LeftIdeal {
    let cat = m.category();
    let parent = representable(cat, c);
    let spaces = (0..cat.num_objects()).map(|b| m.evaluation_matrix(c, x, b).kernel()).collect();
    let body = Subfunctor { parent, spaces };
    debug_assert!(body.is_closed());
    LeftIdeal { base: c, body }
}

/// `(I:h)`: morphisms `f` out of `h.target` with `f∘h ∈ I`.
pub fn colon(ideal: &LeftIdeal, h: &Morphism) -> LeftIdeal {
    assert_eq!(h.source, ideal.base, "colon: morphism must start at the ideal's base");
    let cat = ideal.body.parent.category();
    let b = h.target;
    let spaces = (0..cat.num_objects())
        .map(|x| preimage(&cat.precompose_matrix(h, x), &ideal.body.spaces[x]))
        .collect();
    let body = Subfunctor { parent: representable(cat, b), spaces };
    debug_assert!(body.is_closed());
    LeftIdeal { base: b, body }
}

/// The left ideal generated by morphisms out of `c`.
pub fn generated_ideal(cat: &Arc<CategoryData>, c: usize, gens: &[Morphism]) -> LeftIdeal {
    let parent = representable(cat, c);
    let elements: Vec<(usize, Vec<u32>)> = gens
        .iter()
        .map(|g| {
            assert_eq!(g.source, c, "generator must start at the ideal's base");
            (g.target, g.coords.clone())
        })
        .collect();
    LeftIdeal { base: c, body: sub_generated(&parent, &elements) }
}

/// Position of a coordinate vector in `enumerate_vectors` order.
pub fn vector_index(p: Prime, v: &[u32]) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * p.get() as usize + x as usize)
}

/// Every left ideal of `Hom(c,-)` in canonical order, with containment data.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    pub base: usize,
    pub ideals: Vec<LeftIdeal>,
    /// `leq[i][j]` iff ideal `i` is contained in ideal `j`.
    pub leq: Vec<Vec<bool>>,
    /// Covering pairs `(lower, upper)`.
    pub hasse: Vec<(usize, usize)>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    index: HashMap<Vec<Subspace>, usize>,
}

impl IdealLattice {
    pub fn new(cat: &Arc<CategoryData>, c: usize, cap: u64) -> Result<Self> {
        let p = representable(cat, c);
        let subs = crate::cmodule::all_subfunctors(&p, cap, MAX_IDEALS)?;
        let ideals: Vec<LeftIdeal> = subs.into_iter().map(|body| LeftIdeal { base: c, body }).collect();
        let n = ideals.len();
        let index: HashMap<Vec<Subspace>, usize> =
            ideals.iter().enumerate().map(|(i, s)| (s.body.spaces.clone(), i)).collect();
        let leq: Vec<Vec<bool>> =
            (0..n).map(|i| (0..n).map(|j| ideals[i].is_subideal_of(&ideals[j])).collect()).collect();
        let mut hasse = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && !(0..n).any(|k| k != i && k != j && leq[i][k] && leq[k][j]) {
                    hasse.push((i, j));
                }
            }
        }
        let lookup = |s: &Subfunctor| index[&s.spaces];
        let meet = (0..n)
            .map(|i| (0..n).map(|j| lookup(&sub_meet(&ideals[i].body, &ideals[j].body))).collect())
            .collect();
        let join = (0..n)
            .map(|i| (0..n).map(|j| lookup(&sub_join(&ideals[i].body, &ideals[j].body))).collect())
            .collect();
        Ok(IdealLattice { base: c, ideals, leq, hasse, meet, join, index })
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.ideals.len() - 1
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    pub fn index_of(&self, ideal: &LeftIdeal) -> Option<usize> {
        (ideal.base == self.base).then(|| self.index.get(&ideal.body.spaces).copied()).flatten()
    }

    pub fn up_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq[i][j]).collect()
    }
}

/// The ideal lattices at every object, together with the colon table
/// `(c, ideal, b, h) -> ideal at b`.
#[derive(Clone, Debug)]
pub struct Lattices {
    cat: Arc<CategoryData>,
    pub lattices: Vec<IdealLattice>,
    morphisms: Vec<Vec<Vec<Morphism>>>,
    colon: Vec<Vec<Vec<Vec<usize>>>>,
}

impl Lattices {
    pub fn new(cat: &Arc<CategoryData>, cap: u64) -> Result<Self> {
        let n = cat.num_objects();
        let lattices = (0..n).map(|c| IdealLattice::new(cat, c, cap)).collect::<Result<Vec<_>>>()?;
        let morphisms = (0..n)
            .map(|c| (0..n).map(|b| cat.enumerate_morphisms(c, b, cap)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let colon_table = (0..n)
            .map(|c| {
                lattices[c]
                    .ideals
                    .iter()
                    .map(|ideal| {
                        (0..n)
                            .map(|b| {
                                morphisms[c][b]
                                    .iter()
                                    .map(|h| {
                                        lattices[b]
                                            .index_of(&colon(ideal, h))
                                            .expect("colon ideal lies in the lattice")
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Lattices { cat: cat.clone(), lattices, morphisms, colon: colon_table })
    }

    pub fn category(&self) -> &Arc<CategoryData> {
        &self.cat
    }

    pub fn at(&self, c: usize) -> &IdealLattice {
        &self.lattices[c]
    }

    pub fn ideal(&self, c: usize, i: usize) -> &LeftIdeal {
        &self.lattices[c].ideals[i]
    }

    /// All morphisms `c -> b` in enumeration order.
    pub fn morphisms(&self, c: usize, b: usize) -> &[Morphism] {
        &self.morphisms[c][b]
    }

    /// Index of `(I_i : h)` at `h.target`.
    pub fn colon_index(&self, c: usize, i: usize, h: &Morphism) -> usize {
        let k = vector_index(self.cat.prime(), &h.coords);
        self.colon[c][i][h.target][k]
    }

    /// Index of `(I_i : h)` for the `k`-th morphism `c -> b`.
    pub fn colon_by_position(&self, c: usize, i: usize, b: usize, k: usize) -> usize {
        self.colon[c][i][b][k]
    }

    /// Index of `Ann(x,-)` in the lattice at `c`.
    pub fn annihilator_index(&self, m: &CModule, c: usize, x: &[u32]) -> usize {
        self.lattices[c].index_of(&annihilator(m, c, x)).expect("annihilator lies in the lattice")
    }

    /// A short generator label such as `[b1]+[b2.a2]`.
    pub fn ideal_label(&self, c: usize, i: usize) -> String {
        let lat = &self.lattices[c];
        if i == lat.top() {
            return "full".to_string();
        }
        if i == lat.bottom() {
            return "0".to_string();
        }
        let target = &lat.ideals[i];
        let mut gens: Vec<Morphism> = Vec::new();
        let mut current = lat.bottom();
        let mut candidates: Vec<(crate::presentation::Path, Morphism)> = Vec::new();
        for b in 0..self.cat.num_objects() {
            for (k, path) in self.cat.hom(c, b).basis().iter().enumerate() {
                candidates.push((path.clone(), self.cat.basis_morphism(c, b, k)));
            }
        }
        candidates.sort_by(|a, b| a.0.shortlex(&b.0));
        let mut extra = candidates.into_iter().map(|(_, m)| m).collect::<Vec<_>>();
        for b in 0..self.cat.num_objects() {
            for v in target.spaces()[b].basis_vectors() {
                extra.push(Morphism { source: c, target: b, coords: v });
            }
        }
        for g in extra {
            if current == i {
                break;
            }
            if !target.spaces()[g.target].contains(&g.coords) {
                continue;
            }
            if lat.ideals[current].spaces()[g.target].contains(&g.coords) {
                continue;
            }
            let cyclic = generated_ideal(&self.cat, c, std::slice::from_ref(&g));
            let k = lat.index_of(&cyclic).expect("cyclic ideal lies in the lattice");
            current = lat.join(current, k);
            gens.push(g);
        }
        gens.iter().map(|g| format!("[{}]", self.cat.format_morphism(g))).collect::<Vec<_>>().join("+")
    }
}

/// A family of ideal sets, one per object, as sorted lattice indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Filter {
    pub members: Vec<Vec<usize>>,
}

impl Filter {
    /// Rejects empty components.
    pub fn new(cat: &CategoryData, mut members: Vec<Vec<usize>>) -> Result<Self> {
        assert_eq!(members.len(), cat.num_objects(), "one ideal set per object");
        for (c, set) in members.iter_mut().enumerate() {
            set.sort_unstable();
            set.dedup();
            if set.is_empty() {
                return Err(Error::EmptyFilterComponent(cat.object_name(c).to_string()));
            }
        }
        Ok(Filter { members })
    }

    /// `{P_c}` at every object.
    pub fn trivial(lat: &Lattices) -> Self {
        Filter { members: lat.lattices.iter().map(|l| vec![l.top()]).collect() }
    }

    /// Every ideal at every object.
    pub fn improper(lat: &Lattices) -> Self {
        Filter { members: lat.lattices.iter().map(|l| (0..l.len()).collect()).collect() }
    }

    /// `↑I_c` at every object.
    pub fn principal(lat: &Lattices, minima: &[usize]) -> Self {
        Filter { members: minima.iter().enumerate().map(|(c, &i)| lat.at(c).up_set(i)).collect() }
    }

    pub fn contains(&self, c: usize, i: usize) -> bool {
        self.members[c].binary_search(&i).is_ok()
    }

    /// Membership as "contains some member".
    pub fn admits(&self, lat: &Lattices, c: usize, i: usize) -> bool {
        self.members[c].iter().any(|&j| lat.at(c).leq[j][i])
    }

    /// Meet of all members at `c`.
    pub fn minimum(&self, lat: &Lattices, c: usize) -> usize {
        let l = lat.at(c);
        self.members[c].iter().fold(l.top(), |acc, &i| l.meet(acc, i))
    }

    pub fn minima(&self, lat: &Lattices) -> Vec<usize> {
        (0..self.members.len()).map(|c| self.minimum(lat, c)).collect()
    }

    pub fn is_improper(&self, lat: &Lattices) -> bool {
        self.members.iter().zip(&lat.lattices).all(|(m, l)| m.len() == l.len())
    }

    pub fn is_trivial(&self, lat: &Lattices) -> bool {
        self.members.iter().zip(&lat.lattices).all(|(m, l)| m == &[l.top()])
    }

    pub fn describe(&self, lat: &Lattices) -> String {
        let cat = lat.category();
        self.members
            .iter()
            .enumerate()
            .map(|(c, set)| {
                let labels: Vec<String> = set.iter().map(|&i| lat.ideal_label(c, i)).collect();
                format!("{}: {{{}}}", cat.object_name(c), labels.join(", "))
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// A concrete counterexample to one axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom")]
pub enum Witness {
    /// `I ∈ F_c`, `I ⊆ J`, `J ∉ F_c`.
    T1 { object: usize, member: usize, larger: usize },
    /// `I, J ∈ F_c`, `I ∩ J ∉ F_c`.
    T2 { object: usize, left: usize, right: usize, meet: usize },
    /// `I ∈ F_c`, `h: c -> b`, `(I:h) ∉ F_b`.
    T3 { object: usize, member: usize, morphism: Vec<u32>, target: usize, colon: usize },
    /// `J ∈ F_c`, `I ∉ F_c`, yet `(I:h) ∈ F_b` for every `h ∈ J(c,b)`.
    T4 { object: usize, cover: usize, ideal: usize },
}

impl Witness {
    pub fn axiom(&self) -> &'static str {
        match self {
            Witness::T1 { .. } => "T1",
            Witness::T2 { .. } => "T2",
            Witness::T3 { .. } => "T3",
            Witness::T4 { .. } => "T4",
        }
    }

    /// Re-checks the violation from the subspaces themselves, without the
    /// lattice tables.
    pub fn recheck(&self, lat: &Lattices, f: &Filter) -> bool {
        let cat = lat.category();
        let literal = |c: usize, s: &Subfunctor| f.members[c].iter().any(|&k| lat.ideal(c, k).body.spaces == s.spaces);
        match *self {
            Witness::T1 { object: c, member, larger } => {
                f.contains(c, member)
                    && lat.ideal(c, member).is_subideal_of(lat.ideal(c, larger))
                    && !literal(c, &lat.ideal(c, larger).body)
            }
            Witness::T2 { object: c, left, right, meet: _ } => {
                let m = sub_meet(&lat.ideal(c, left).body, &lat.ideal(c, right).body);
                f.contains(c, left) && f.contains(c, right) && !literal(c, &m)
            }
            Witness::T3 { object: c, member, ref morphism, target, colon: _ } => {
                let h = Morphism { source: c, target, coords: morphism.clone() };
                let k = colon(lat.ideal(c, member), &h);
                f.contains(c, member) && !literal(target, &k.body)
            }
            Witness::T4 { object: c, cover, ideal } => {
                if !f.contains(c, cover) || literal(c, &lat.ideal(c, ideal).body) {
                    return false;
                }
                let j = lat.ideal(c, cover);
                (0..cat.num_objects()).all(|b| {
                    j.spaces()[b].elements(u64::MAX).expect("small fiber").into_iter().all(|coords| {
                        let h = Morphism { source: c, target: b, coords };
                        literal(b, &colon(lat.ideal(c, ideal), &h).body)
                    })
                })
            }
        }
    }

    pub fn describe(&self, lat: &Lattices) -> String {
        let cat = lat.category();
        let name = |c: usize| cat.object_name(c).to_string();
        let label = |c: usize, i: usize| lat.ideal_label(c, i);
        match *self {
            Witness::T1 { object: c, member, larger } => format!(
                "at {}: {} is in F but the larger ideal {} is not",
                name(c),
                label(c, member),
                label(c, larger)
            ),
            Witness::T2 { object: c, left, right, meet } => format!(
                "at {}: {} and {} are in F but their meet {} is not",
                name(c),
                label(c, left),
                label(c, right),
                label(c, meet)
            ),
            Witness::T3 { object: c, member, ref morphism, target, colon } => {
                let h = Morphism { source: c, target, coords: morphism.clone() };
                format!(
                    "at {}: {} is in F but ({} : {}) = {} at {} is not",
                    name(c),
                    label(c, member),
                    label(c, member),
                    cat.format_morphism(&h),
                    label(target, colon),
                    name(target)
                )
            }
            Witness::T4 { object: c, cover, ideal } => format!(
                "at {}: J = {} is in F and (I : h) is in F for every h in J, yet I = {} is not",
                name(c),
                label(c, cover),
                label(c, ideal)
            ),
        }
    }
}

/// Per-axiom verdicts; `None` means the axiom holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub t1: Option<Witness>,
    pub t2: Option<Witness>,
    pub t3: Option<Witness>,
    pub t4: Option<Witness>,
}

impl AxiomReport {
    pub fn verdicts(&self) -> [(&'static str, Option<&Witness>); 4] {
        [("T1", self.t1.as_ref()), ("T2", self.t2.as_ref()), ("T3", self.t3.as_ref()), ("T4", self.t4.as_ref())]
    }

    pub fn is_linear(&self) -> bool {
        self.t1.is_none() && self.t2.is_none() && self.t3.is_none()
    }

    pub fn is_gabriel(&self) -> bool {
        self.is_linear() && self.t4.is_none()
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.verdicts().iter().filter(|(_, w)| w.is_some()).map(|(n, _)| *n).collect()
    }
}

fn t1_at(lat: &Lattices, f: &Filter, c: usize) -> Option<Witness> {
    let l = lat.at(c);
    for &i in &f.members[c] {
        for j in 0..l.len() {
            if l.leq[i][j] && !f.contains(c, j) {
                return Some(Witness::T1 { object: c, member: i, larger: j });
            }
        }
    }
    None
}

fn t2_at(lat: &Lattices, f: &Filter, c: usize) -> Option<Witness> {
    let l = lat.at(c);
    for &i in &f.members[c] {
        for &j in &f.members[c] {
            let m = l.meet(i, j);
            if !f.contains(c, m) {
                return Some(Witness::T2 { object: c, left: i, right: j, meet: m });
            }
        }
    }
    None
}

/// T1 and T2 restricted to one object.
pub fn check_local(lat: &Lattices, f: &Filter, c: usize) -> (Option<Witness>, Option<Witness>) {
    (t1_at(lat, f, c), t2_at(lat, f, c))
}

/// Checks T1–T4, quantifying over every morphism of every Hom space.
pub fn check_axioms(lat: &Lattices, f: &Filter) -> AxiomReport {
    let n = lat.lattices.len();
    let t1 = (0..n).find_map(|c| t1_at(lat, f, c));
    let t2 = (0..n).find_map(|c| t2_at(lat, f, c));
    let t3 = (0..n).find_map(|c| {
        f.members[c].iter().find_map(|&i| {
            (0..n).find_map(|b| {
                lat.morphisms(c, b).iter().enumerate().find_map(|(k, h)| {
                    let q = lat.colon_by_position(c, i, b, k);
                    (!f.contains(b, q)).then(|| Witness::T3 {
                        object: c,
                        member: i,
                        morphism: h.coords.clone(),
                        target: b,
                        colon: q,
                    })
                })
            })
        })
    });
    let t4 = t4_witness(lat, f);
    AxiomReport { t1, t2, t3, t4 }
}

fn t4_witness(lat: &Lattices, f: &Filter) -> Option<Witness> {
    let n = lat.lattices.len();
    let p = lat.category().prime();
    for c in 0..n {
        for &j in &f.members[c] {
            let cover = lat.ideal(c, j);
            // Positions of the morphisms lying in J(c,b).
            let inside: Vec<Vec<usize>> = (0..n)
                .map(|b| {
                    cover.spaces()[b]
                        .elements(u64::MAX)
                        .expect("small fiber")
                        .iter()
                        .map(|v| vector_index(p, v))
                        .collect()
                })
                .collect();
            for i in 0..lat.at(c).len() {
                if f.contains(c, i) {
                    continue;
                }
                let all_in = (0..n).all(|b| inside[b].iter().all(|&k| f.contains(b, lat.colon_by_position(c, i, b, k))));
                if all_in {
                    return Some(Witness::T4 { object: c, cover: j, ideal: i });
                }
            }
        }
    }
    None
}

/// How to close a generator family inside each lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Completion {
    Upclose,
    UpcloseMeet,
}

impl fmt::Display for Completion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Completion::Upclose => "upclose",
            Completion::UpcloseMeet => "upclose+meet",
        })
    }
}

/// Smallest family containing the generators and closed under the requested
/// operations, object by object.
pub fn complete_filter(lat: &Lattices, generators: &[Vec<usize>], mode: Completion) -> Filter {
    let members = generators
        .iter()
        .enumerate()
        .map(|(c, gens)| {
            let l = lat.at(c);
            let mut inside = vec![false; l.len()];
            for &g in gens {
                inside[g] = true;
            }
            loop {
                let mut changed = false;
                for i in 0..l.len() {
                    if !inside[i] {
                        continue;
                    }
                    for j in 0..l.len() {
                        if l.leq[i][j] && !inside[j] {
                            inside[j] = true;
                            changed = true;
                        }
                        if mode == Completion::UpcloseMeet && inside[j] && !inside[l.meet(i, j)] {
                            inside[l.meet(i, j)] = true;
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            (0..l.len()).filter(|&i| inside[i]).collect()
        })
        .collect();
    Filter { members }
}

/// `t(M)` for a meet-closed filter: `x` is torsion iff `I₀(c) ⊆ Ann(x,-)`,
/// i.e. `x` lies in the kernel of every `M(f)` with `f ∈ I₀(c)`.
pub fn torsion_radical(m: &CModule, lat: &Lattices, f: &Filter) -> Result<Subfunctor> {
    let n = lat.lattices.len();
    if let Some(w) = (0..n).find_map(|c| t2_at(lat, f, c)) {
        return Err(Error::FilterAxioms { axioms: "T2".into(), detail: w.describe(lat) });
    }
    Ok(torsion_radical_at_minima(m, lat, &f.minima(lat)))
}

/// `t(M)` from the minimal filter ideal at each object.
pub fn torsion_radical_at_minima(m: &CModule, lat: &Lattices, minima: &[usize]) -> Subfunctor {
    let p = m.prime();
    let spaces = minima
        .iter()
        .enumerate()
        .map(|(c, &i0)| {
            let ideal = lat.ideal(c, i0);
            let mut rows: Vec<Vec<u32>> = Vec::new();
            for (b, space) in ideal.spaces().iter().enumerate() {
                for coords in space.basis_vectors() {
                    let h = Morphism { source: c, target: b, coords };
                    rows.extend(m.eval_morphism(&h).to_rows());
                }
            }
            crate::linalg::Matrix::from_rows(p, m.dim(c), &rows).kernel()
        })
        .collect();
    let t = Subfunctor { parent: m.clone(), spaces };
    debug_assert!(t.is_closed());
    t
}

/// `t(M)` by enumerating every fiber element and testing its annihilator.
/// Also reports whether both membership tests agreed on every element.
pub fn torsion_radical_exhaustive(m: &CModule, lat: &Lattices, f: &Filter, cap: u64) -> Result<(Subfunctor, bool)> {
    let p = m.prime();
    let mut agree = true;
    let mut spaces = Vec::with_capacity(m.dims().len());
    for c in 0..m.dims().len() {
        let mut torsion = Vec::new();
        let mut count = 0u64;
        for x in enumerate_vectors(p, m.dim(c), cap)? {
            let a = lat.annihilator_index(m, c, &x);
            let admitted = f.admits(lat, c, a);
            agree &= admitted == f.contains(c, a);
            if admitted {
                torsion.push(x);
                count += 1;
            }
        }
        let span = Subspace::span(p, m.dim(c), &torsion);
        agree &= p.checked_pow(span.dim()) == Some(count);
        spaces.push(span);
    }
    Ok((Subfunctor { parent: m.clone(), spaces }, agree))
}

/// Every annihilator admitted by the filter.
pub fn is_torsion(m: &CModule, lat: &Lattices, f: &Filter) -> Result<bool> {
    Ok(torsion_radical(m, lat, f)?.is_full())
}

/// First element whose annihilator is not admitted, by fiber enumeration.
pub fn torsion_counterexample(
    m: &CModule,
    lat: &Lattices,
    f: &Filter,
    cap: u64,
) -> Result<Option<(usize, Vec<u32>, usize)>> {
    for c in 0..m.dims().len() {
        for x in enumerate_vectors(m.prime(), m.dim(c), cap)? {
            let a = lat.annihilator_index(m, c, &x);
            if !f.admits(lat, c, a) {
                return Ok(Some((c, x, a)));
            }
        }
    }
    Ok(None)
}

/// `F_c = {I : P_c / I ∈ T}` for a torsion-class membership test.
pub fn filter_of_torsion_class(lat: &Lattices, mut in_class: impl FnMut(&CModule) -> bool) -> Filter {
    let members = lat
        .lattices
        .iter()
        .map(|l| {
            (0..l.len())
                .filter(|&i| {
                    let ideal = &l.ideals[i];
                    let (q, _) = quotient(&ideal.body.parent, &ideal.body);
                    in_class(&q)
                })
                .collect()
        })
        .collect();
    Filter { members }
}

/// A filter that passes T1–T3 but fails T4.
#[derive(Clone, Debug, Serialize)]
pub struct RejectedFilter {
    pub filter: Filter,
    pub witness: Witness,
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub gabriel: Vec<Filter>,
    pub linear_only: Vec<RejectedFilter>,
    pub visited: u64,
}

/// All Gabriel filters. A nonempty up- and meet-closed family in a finite
/// lattice is `↑I₀` for its least member, so the search ranges over one
/// `I₀(c)` per object. T3 reduces to `I₀(b) ⊆ (I₀(c):h)` for every `h`,
/// a pairwise constraint checked during backtracking.
pub fn enumerate_gabriel_filters(lat: &Lattices, budget: u64) -> Result<Census> {
    let n = lat.lattices.len();
    let mut census = Census { gabriel: Vec::new(), linear_only: Vec::new(), visited: 0 };
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    search(lat, &mut chosen, &mut census, budget)?;
    Ok(census)
}

fn colon_stable(lat: &Lattices, c: usize, ic: usize, b: usize, ib: usize) -> bool {
    let l = lat.at(b);
    (0..lat.morphisms(c, b).len()).all(|k| l.leq[ib][lat.colon_by_position(c, ic, b, k)])
}

fn search(lat: &Lattices, chosen: &mut Vec<usize>, census: &mut Census, budget: u64) -> Result<()> {
    let n = lat.lattices.len();
    if chosen.len() == n {
        let f = Filter::principal(lat, chosen);
        match t4_witness(lat, &f) {
            None => census.gabriel.push(f),
            Some(witness) => census.linear_only.push(RejectedFilter { filter: f, witness }),
        }
        return Ok(());
    }
    let c = chosen.len();
    for ic in (0..lat.at(c).len()).rev() {
        census.visited += 1;
        if census.visited > budget {
            return Err(Error::CapExceeded { what: "filter search", cap: budget });
        }
        let ok = colon_stable(lat, c, ic, c, ic)
            && chosen
                .iter()
                .enumerate()
                .all(|(b, &ib)| colon_stable(lat, c, ic, b, ib) && colon_stable(lat, b, ib, c, ic));
        if ok {
            chosen.push(ic);
            search(lat, chosen, census, budget)?;
            chosen.pop();
        }
    }
    Ok(())
}

/// One `at <object>: {...}` entry of a filter file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealSpec {
    Full,
    Zero,
    Generated(Vec<Morphism>),
}

/// A parsed filter file: generator ideals per object and an optional
/// completion mode.
#[derive(Clone, Debug)]
pub struct FilterSpec {
    pub catfile: String,
    pub generators: Vec<Vec<usize>>,
    pub completion: Option<Completion>,
}

impl FilterSpec {
    /// The filter the file describes, with its completion applied.
    pub fn filter(&self, lat: &Lattices) -> Filter {
        match self.completion {
            None => Filter { members: self.generators.iter().map(|g| sorted(g.clone())).collect() },
            Some(mode) => complete_filter(lat, &self.generators, mode),
        }
    }

    /// The generators taken literally.
    pub fn literal(&self) -> Filter {
        Filter { members: self.generators.iter().map(|g| sorted(g.clone())).collect() }
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Parses the `.gfil` format. Every object must receive a nonempty set.
pub fn parse_filter(text: &str, lat: &Lattices) -> Result<FilterSpec> {
    let cat = lat.category().clone();
    let n = cat.num_objects();
    let mut catfile: Option<String> = None;
    let mut completion = None;
    let mut generators: Vec<Option<Vec<usize>>> = vec![None; n];

    // Join `at` blocks that span several lines.
    let mut statements: Vec<(usize, String)> = Vec::new();
    let mut open: Option<(usize, String)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if let Some((start, mut acc)) = open.take() {
            acc.push(' ');
            acc.push_str(line);
            if line.contains('}') {
                statements.push((start, acc));
            } else {
                open = Some((start, acc));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        if line.starts_with("at ") && !line.contains('}') {
            open = Some((idx + 1, line.to_string()));
        } else {
            statements.push((idx + 1, line.to_string()));
        }
    }
    if let Some((start, _)) = open {
        return Err(Error::parse(start, 1, "unterminated `{`"));
    }

    for (lineno, stmt) in statements {
        let (keyword, rest) = stmt.split_once(char::is_whitespace).unwrap_or((&stmt, ""));
        let rest = rest.trim();
        match keyword {
            "filter" => {
                let file = rest
                    .strip_prefix("over")
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .ok_or_else(|| Error::parse(lineno, 1, "expected `filter over <catfile>`"))?;
                catfile = Some(file.to_string());
            }
            "complete" => {
                completion = Some(match rest {
                    "upclose" => Completion::Upclose,
                    "upclose+meet" => Completion::UpcloseMeet,
                    other => {
                        return Err(Error::parse(lineno, 10, format!("unknown completion `{}`", other)));
                    }
                });
            }
            "at" => {
                let (obj, body) =
                    rest.split_once(':').ok_or_else(|| Error::parse(lineno, 1, "expected `at <object>: { ... }`"))?;
                let obj = obj.trim();
                let c = cat
                    .quiver()
                    .object_index(obj)
                    .ok_or_else(|| Error::parse(lineno, 4, format!("unknown object `{}`", obj)))?;
                if generators[c].is_some() {
                    return Err(Error::parse(lineno, 4, format!("duplicate block for `{}`", obj)));
                }
                let body = body.trim();
                let inner = body
                    .strip_prefix('{')
                    .and_then(|b| b.strip_suffix('}'))
                    .ok_or_else(|| Error::parse(lineno, 1, "expected `{ ... }`"))?;
                let mut set = Vec::new();
                for spec_text in split_top_level(inner) {
                    let spec = parse_ideal_spec(&cat, c, &spec_text).map_err(|msg| {
                        Error::parse(lineno, crate::presentation::column_of(&stmt, &spec_text), msg)
                    })?;
                    let ideal = match spec {
                        IdealSpec::Full => lat.at(c).top(),
                        IdealSpec::Zero => lat.at(c).bottom(),
                        IdealSpec::Generated(gens) => lat
                            .at(c)
                            .index_of(&generated_ideal(&cat, c, &gens))
                            .expect("generated ideal lies in the lattice"),
                    };
                    set.push(ideal);
                }
                if set.is_empty() {
                    return Err(Error::EmptyFilterComponent(obj.to_string()));
                }
                generators[c] = Some(set);
            }
            other => return Err(Error::parse(lineno, 1, format!("unknown directive `{}`", other))),
        }
    }
    let catfile = catfile.ok_or_else(|| Error::parse(1, 1, "missing `filter over <catfile>` header"))?;
    let generators = generators
        .into_iter()
        .enumerate()
        .map(|(c, g)| g.ok_or_else(|| Error::EmptyFilterComponent(cat.object_name(c).to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok(FilterSpec { catfile, generators, completion })
}

fn split_top_level(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut current).trim().to_string());
                continue;
            }
            _ => {}
        }
        current.push(ch);
    }
    if !current.trim().is_empty() {
        out.push(current.trim().to_string());
    }
    out.into_iter().filter(|s| !s.is_empty()).collect()
}

fn parse_ideal_spec(cat: &CategoryData, c: usize, text: &str) -> std::result::Result<IdealSpec, String> {
    match text {
        "full" => return Ok(IdealSpec::Full),
        "zero" => return Ok(IdealSpec::Zero),
        _ => {}
    }
    let args = text
        .strip_prefix("gen(")
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| format!("expected `gen(...)`, `full` or `zero`, found `{}`", text))?;
    let mut gens = Vec::new();
    for expr in args.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let terms = cat.quiver().parse_combination(expr, Some(c))?;
        let first = &terms.first().ok_or("empty generator")?.1;
        if first.source != c {
            return Err(format!("generator `{}` does not start at `{}`", expr, cat.object_name(c)));
        }
        gens.push(cat.combination_morphism(first.source, first.target, &terms));
    }
    if gens.is_empty() {
        return Err("`gen()` needs at least one morphism".to_string());
    }
    Ok(IdealSpec::Generated(gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{build_category, parse_category};

    fn cat(text: &str) -> Arc<CategoryData> {
        Arc::new(build_category(parse_category(text).unwrap()).unwrap())
    }

    fn dual() -> Arc<CategoryData> {
        cat("nilpotency 2\nobject x\narrow e : x -> x\nrelation e.e = 0\n")
    }

    #[test]
    fn point_lattice_and_census() {
        let c = cat("nilpotency 1\nobject x\n");
        let lat = Lattices::new(&c, DEFAULT_CAP).unwrap();
        assert_eq!(lat.at(0).len(), 2);
        let census = enumerate_gabriel_filters(&lat, 1000).unwrap();
        assert_eq!(census.gabriel, vec![Filter::trivial(&lat), Filter::improper(&lat)]);
    }

    #[test]
    fn dual_lattice_is_a_chain() {
        let lat = Lattices::new(&dual(), DEFAULT_CAP).unwrap();
        assert_eq!(lat.at(0).len(), 3);
        assert_eq!(lat.at(0).hasse, vec![(0, 1), (1, 2)]);
        assert_eq!(lat.ideal_label(0, 1), "[e]");
    }

    #[test]
    fn dual_t4_witness() {
        let lat = Lattices::new(&dual(), DEFAULT_CAP).unwrap();
        let f = Filter { members: vec![vec![1, 2]] };
        let report = check_axioms(&lat, &f);
        assert!(report.is_linear());
        let w = report.t4.clone().unwrap();
        assert_eq!(w, Witness::T4 { object: 0, cover: 1, ideal: 0 });
        assert!(w.recheck(&lat, &f));
    }

    #[test]
    fn trivial_and_improper_pass() {
        let lat = Lattices::new(&dual(), DEFAULT_CAP).unwrap();
        assert!(check_axioms(&lat, &Filter::trivial(&lat)).is_gabriel());
        assert!(check_axioms(&lat, &Filter::improper(&lat)).is_gabriel());
    }

    #[test]
    fn completion_of_dual_generator() {
        let lat = Lattices::new(&dual(), DEFAULT_CAP).unwrap();
        let f = complete_filter(&lat, &[vec![1]], Completion::Upclose);
        assert_eq!(f.members, vec![vec![1, 2]]);
    }

    #[test]
    fn colon_with_identity_is_identity() {
        let c = dual();
        let lat = Lattices::new(&c, DEFAULT_CAP).unwrap();
        for i in 0..lat.at(0).len() {
            assert_eq!(lat.colon_index(0, i, &c.identity(0)), i);
        }
    }

    #[test]
    fn empty_component_rejected() {
        let c = dual();
        assert!(matches!(Filter::new(&c, vec![vec![]]), Err(Error::EmptyFilterComponent(_))));
    }

    #[test]
    fn parse_filter_file() {
        let c = dual();
        let lat = Lattices::new(&c, DEFAULT_CAP).unwrap();
        let spec = parse_filter("filter over d.gcat\nat x: { gen(e), full }\ncomplete upclose\n", &lat).unwrap();
        assert_eq!(spec.generators, vec![vec![1, 2]]);
        assert_eq!(spec.completion, Some(Completion::Upclose));
        let err = parse_filter("filter over d.gcat\n", &lat).unwrap_err();
        assert!(matches!(err, Error::EmptyFilterComponent(_)));
        let err = parse_filter("filter over d.gcat\nat x: { gen(q) }\n", &lat).unwrap_err();
        assert!(err.to_string().starts_with("2:"), "{err}");
    }
}
