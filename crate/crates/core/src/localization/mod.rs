//! Prelocalization `𝕃`, the canonical map `φ`, Gabriel localization `𝔾`
//! with unit `Δ`, and closed modules.
//!
//! Each filter component is finite and meet-closed, so it has a least
//! member `I₀(c)` and the directed colimit over `F_c` is attained there:
//! `𝕃(M)(c) = Nat(I₀(c), M)`.

pub mod colimit;
pub mod verify;

use serde::Serialize;

use crate::cmodule::{nat_hom, quotient, representable, CModule, NatSpace, NatTransform, Subfunctor};
use crate::error::{Error, Result};
use crate::filters::{check_axioms, torsion_radical_at_minima, Filter, LeftIdeal, Lattices};
use crate::linalg::{Matrix, Subspace};
use crate::presentation::{CategoryData, Morphism};

/// `Nat(I, M)` with `I` viewed as a module through its RREF bases.
pub fn hom_from_ideal(ideal: &LeftIdeal, m: &CModule) -> NatSpace {
    nat_hom(&ideal.body.as_module(), m)
}

/// Matrix, in the RREF bases, of `f ↦ f∘h` from `from(X)` into `to(X)`.
/// `from` lives in `Hom(h.target, X)`, `to` in `Hom(h.source, X)`.
pub(crate) fn pull_matrix(cat: &CategoryData, h: &Morphism, from: &Subspace, to: &Subspace, x: usize) -> Matrix {
    let pre = cat.precompose_matrix(h, x);
    let cols: Vec<Vec<u32>> = from
        .basis_vectors()
        .iter()
        .map(|f| to.coordinates(&pre.mul_vec(f)).expect("f∘h lies in the target ideal"))
        .collect();
    Matrix::from_columns(cat.prime(), to.dim(), &cols)
}

/// The linear map `Nat(to, M) -> Nat(from, M)`, `β ↦ β∘γ` with
/// `γ(f) = f∘h`.
pub(crate) fn pullback_map(
    cat: &CategoryData,
    h: &Morphism,
    from: &[Subspace],
    from_space: &NatSpace,
    to: &[Subspace],
    to_space: &NatSpace,
) -> Matrix {
    let n = cat.num_objects();
    let gammas: Vec<Matrix> = (0..n).map(|x| pull_matrix(cat, h, &from[x], &to[x], x)).collect();
    let cols: Vec<Vec<u32>> = (0..to_space.dim())
        .map(|k| {
            let mut e = vec![0u32; to_space.dim()];
            e[k] = 1;
            let comps: Vec<Matrix> =
                to_space.components_of(&e).iter().zip(&gammas).map(|(b, g)| b.mul(g)).collect();
            from_space.component_coordinates(&comps).expect("β∘γ is natural")
        })
        .collect();
    Matrix::from_columns(cat.prime(), from_space.dim(), &cols)
}

/// `𝕃(M)` together with `φ_M` and the data it was built from.
#[derive(Clone, Debug)]
pub struct Prelocalized {
    pub source: CModule,
    pub minima: Vec<usize>,
    /// `Nat(I₀(c), M)` for each object.
    pub spaces: Vec<NatSpace>,
    pub module: CModule,
    pub phi: NatTransform,
}

impl Prelocalized {
    /// `𝕃(M)(h)` computed from its definition for any morphism.
    pub fn action_of(&self, lat: &Lattices, h: &Morphism) -> Matrix {
        let cat = lat.category();
        let (c, b) = (h.source, h.target);
        pullback_map(
            cat,
            h,
            lat.ideal(b, self.minima[b]).spaces(),
            &self.spaces[b],
            lat.ideal(c, self.minima[c]).spaces(),
            &self.spaces[c],
        )
    }

    /// The transformation `I₀(c) -> M` behind an element of `𝕃(M)(c)`.
    pub fn representative(&self, c: usize, w: &[u32]) -> Vec<Matrix> {
        self.spaces[c].components_of(w)
    }
}

/// Fails unless T1–T3 hold.
pub fn require_linear(lat: &Lattices, f: &Filter) -> Result<()> {
    let report = check_axioms(lat, f);
    if !report.is_linear() {
        let failing = report.failing().into_iter().filter(|a| *a != "T4").collect::<Vec<_>>().join(", ");
        let w = [&report.t1, &report.t2, &report.t3].into_iter().flatten().next().expect("some axiom fails");
        return Err(Error::FilterAxioms { axioms: failing, detail: w.describe(lat) });
    }
    Ok(())
}

/// Fails unless T1–T4 hold.
pub fn require_gabriel(lat: &Lattices, f: &Filter) -> Result<()> {
    require_linear(lat, f)?;
    if let Some(w) = check_axioms(lat, f).t4 {
        return Err(Error::FilterAxioms { axioms: "T4".into(), detail: w.describe(lat) });
    }
    Ok(())
}

/// `𝕃(M)` and `φ_M` for a linear filter.
pub fn prelocalize(m: &CModule, lat: &Lattices, f: &Filter) -> Result<Prelocalized> {
    require_linear(lat, f)?;
    let pre = prelocalize_at(m, lat, &f.minima(lat));
    pre.module.validate()?;
    Ok(pre)
}

/// `𝕃(M)` from the least filter ideal at each object. The minima must come
/// from a filter satisfying T3.
pub fn prelocalize_at(m: &CModule, lat: &Lattices, minima: &[usize]) -> Prelocalized {
    let cat = m.category();
    let n = cat.num_objects();
    let spaces: Vec<NatSpace> = (0..n).map(|c| hom_from_ideal(lat.ideal(c, minima[c]), m)).collect();
    let dims: Vec<usize> = spaces.iter().map(NatSpace::dim).collect();
    let action: Vec<Matrix> = (0..cat.arrows().len())
        .map(|i| {
            let ar = &cat.arrows()[i];
            let h = cat.arrow(i);
            pullback_map(
                cat,
                &h,
                lat.ideal(ar.target, minima[ar.target]).spaces(),
                &spaces[ar.target],
                lat.ideal(ar.source, minima[ar.source]).spaces(),
                &spaces[ar.source],
            )
        })
        .collect();
    let module = CModule::new_unchecked(cat.clone(), dims, action);
    let phi_components = (0..n).map(|c| phi_component(m, lat.ideal(c, minima[c]), &spaces[c], c)).collect();
    let phi = NatTransform { source: m.clone(), target: module.clone(), components: phi_components };
    Prelocalized { source: m.clone(), minima: minima.to_vec(), spaces, module, phi }
}

/// `x ↦ (f ↦ M(f)x)` restricted to `I`, in the basis of `Nat(I, M)`.
fn phi_component(m: &CModule, ideal: &LeftIdeal, space: &NatSpace, c: usize) -> Matrix {
    let p = m.prime();
    let n = m.dims().len();
    let inclusions: Vec<Matrix> = ideal.spaces().iter().map(|s| s.basis().transpose()).collect();
    let cols: Vec<Vec<u32>> = (0..m.dim(c))
        .map(|k| {
            let mut x = vec![0u32; m.dim(c)];
            x[k] = 1;
            let comps: Vec<Matrix> = (0..n).map(|b| m.evaluation_matrix(c, &x, b).mul(&inclusions[b])).collect();
            space.component_coordinates(&comps).expect("evaluation is natural")
        })
        .collect();
    Matrix::from_columns(p, space.dim(), &cols)
}

/// `𝕃(η)`: postcomposition `β ↦ η∘β` on `Nat(I₀(c), -)`.
pub fn lmap(pre_m: &Prelocalized, pre_n: &Prelocalized, eta: &NatTransform) -> NatTransform {
    assert_eq!(pre_m.minima, pre_n.minima, "prelocalizations over different filters");
    let p = eta.source.prime();
    let components = (0..pre_m.spaces.len())
        .map(|c| {
            let (sm, sn) = (&pre_m.spaces[c], &pre_n.spaces[c]);
            let cols: Vec<Vec<u32>> = (0..sm.dim())
                .map(|k| {
                    let mut e = vec![0u32; sm.dim()];
                    e[k] = 1;
                    let comps: Vec<Matrix> =
                        sm.components_of(&e).iter().zip(&eta.components).map(|(b, h)| h.mul(b)).collect();
                    sn.component_coordinates(&comps).expect("η∘β is natural")
                })
                .collect();
            Matrix::from_columns(p, sn.dim(), &cols)
        })
        .collect();
    NatTransform { source: pre_m.module.clone(), target: pre_n.module.clone(), components }
}

/// `𝔾(M) = 𝕃(M/t(M))` with `Δ_M = φ_{M/t(M)} ∘ π_M`.
#[derive(Clone, Debug)]
pub struct Localization {
    pub source: CModule,
    pub torsion: Subfunctor,
    pub quotient: CModule,
    pub projection: NatTransform,
    pub pre: Prelocalized,
    pub delta: NatTransform,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalizationSummary {
    pub source_dims: Vec<usize>,
    pub torsion_dims: Vec<usize>,
    pub localized_dims: Vec<usize>,
    pub kernel_dims: Vec<usize>,
    pub cokernel_dims: Vec<usize>,
}

impl Localization {
    pub fn module(&self) -> &CModule {
        &self.pre.module
    }

    pub fn summary(&self) -> LocalizationSummary {
        let ker: Vec<usize> = self.delta.components.iter().map(|m| m.cols() - m.rank()).collect();
        let coker: Vec<usize> = self.delta.components.iter().map(|m| m.rows() - m.rank()).collect();
        LocalizationSummary {
            source_dims: self.source.dims().to_vec(),
            torsion_dims: self.torsion.dims(),
            localized_dims: self.module().dims().to_vec(),
            kernel_dims: ker,
            cokernel_dims: coker,
        }
    }
}

/// Gabriel localization; the filter must satisfy T1–T4.
pub fn gabriel_localize(m: &CModule, lat: &Lattices, f: &Filter) -> Result<Localization> {
    require_gabriel(lat, f)?;
    let loc = localize_at(m, lat, &f.minima(lat));
    loc.module().validate()?;
    Ok(loc)
}

/// Gabriel localization from the filter minima, without checking axioms.
pub fn localize_at(m: &CModule, lat: &Lattices, minima: &[usize]) -> Localization {
    let torsion = torsion_radical_at_minima(m, lat, minima);
    let (q, projection) = quotient(m, &torsion);
    let pre = prelocalize_at(&q, lat, minima);
    let delta = pre.phi.after(&projection);
    Localization { source: m.clone(), torsion, quotient: q, projection, pre, delta }
}

/// `𝔾(η)`: `η` induced on torsion-free quotients, then `𝕃`.
pub fn gmap(loc_m: &Localization, loc_n: &Localization, eta: &NatTransform) -> NatTransform {
    let lifts: Vec<Matrix> = loc_m.torsion.spaces.iter().map(Subspace::quotient_lift).collect();
    let components = (0..lifts.len())
        .map(|c| loc_n.projection.components[c].mul(&eta.components[c]).mul(&lifts[c]))
        .collect();
    let induced = NatTransform { source: loc_m.quotient.clone(), target: loc_n.quotient.clone(), components };
    lmap(&loc_m.pre, &loc_n.pre, &induced)
}

/// Why a module is not closed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClosedWitness {
    /// A nonzero element whose annihilator lies in the filter.
    Torsion { object: usize, element: Vec<u32> },
    /// Restriction to `I` has a kernel of the given dimension.
    NotInjective { object: usize, ideal: usize, defect: usize },
    /// Restriction to `I` misses a complement of the given dimension.
    NotSurjective { object: usize, ideal: usize, defect: usize },
}

/// The restriction map `Nat(P_c, M) -> Nat(I, M)`, `ξ ↦ ξ∘δ_I`.
pub fn restriction_matrix(m: &CModule, ideal: &LeftIdeal) -> (Matrix, NatSpace) {
    let cat = m.category();
    let c = ideal.base;
    let full = nat_hom(&representable(cat, c), m);
    let target = hom_from_ideal(ideal, m);
    let inclusions: Vec<Matrix> = ideal.spaces().iter().map(|s| s.basis().transpose()).collect();
    let cols: Vec<Vec<u32>> = full
        .basis()
        .iter()
        .map(|xi| {
            let comps: Vec<Matrix> = xi.components.iter().zip(&inclusions).map(|(a, b)| a.mul(b)).collect();
            target.component_coordinates(&comps).expect("ξ∘δ is natural")
        })
        .collect();
    (Matrix::from_columns(m.prime(), target.dim(), &cols), target)
}

/// Checks closedness at every member of every `F_c`. Torsion is tested
/// first since closed modules are torsion-free.
pub fn is_closed(m: &CModule, lat: &Lattices, f: &Filter) -> Result<Option<ClosedWitness>> {
    require_linear(lat, f)?;
    Ok(closed_witness(m, lat, f))
}

pub(crate) fn closed_witness(m: &CModule, lat: &Lattices, f: &Filter) -> Option<ClosedWitness> {
    let t = torsion_radical_at_minima(m, lat, &f.minima(lat));
    if let Some((c, s)) = t.spaces.iter().enumerate().find(|(_, s)| !s.is_zero()) {
        return Some(ClosedWitness::Torsion { object: c, element: s.basis().row(0).to_vec() });
    }
    for (c, members) in f.members.iter().enumerate() {
        for &i in members {
            let (theta, target) = restriction_matrix(m, lat.ideal(c, i));
            let rank = theta.rank();
            if rank < theta.cols() {
                return Some(ClosedWitness::NotInjective { object: c, ideal: i, defect: theta.cols() - rank });
            }
            if rank < target.dim() {
                return Some(ClosedWitness::NotSurjective { object: c, ideal: i, defect: target.dim() - rank });
            }
        }
    }
    None
}

/// Whether `α ↦ α∘Δ_M` is a bijection `Nat(𝔾M, N) -> Nat(M, N)`. `N` must
/// be closed.
pub fn check_adjunction(m: &CModule, n: &CModule, lat: &Lattices, f: &Filter) -> Result<bool> {
    require_gabriel(lat, f)?;
    if let Some(w) = closed_witness(n, lat, f) {
        return Err(Error::NotClosed(format!("{:?}", w)));
    }
    let loc = localize_at(m, lat, &f.minima(lat));
    Ok(adjunction_bijective(&loc, n))
}

pub(crate) fn adjunction_bijective(loc: &Localization, n: &CModule) -> bool {
    let from = nat_hom(loc.module(), n);
    let to = nat_hom(&loc.source, n);
    if from.dim() != to.dim() {
        return false;
    }
    let cols: Vec<Vec<u32>> = from
        .basis()
        .iter()
        .map(|alpha| to.coordinates(&alpha.after(&loc.delta)).expect("α∘Δ is natural"))
        .collect();
    Matrix::from_columns(n.prime(), to.dim(), &cols).rank() == to.dim()
}
