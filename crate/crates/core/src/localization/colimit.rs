//! The directed colimit `colim_{I∈F_c} Nat(I, M)` built literally, as a
//! direct sum modulo the restriction relations. Used to cross-check the
//! construction at the least ideal.

use serde::Serialize;

use super::{hom_from_ideal, pullback_map, Prelocalized};
use crate::cmodule::{CModule, NatSpace};
use crate::filters::{Filter, Lattices};
use crate::linalg::{Matrix, Subspace};
use crate::presentation::Morphism;

/// `⊕_{I∈F_c} Nat(I, M)` and its quotient by `ι_J(β) - ι_I(β|_I)`.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub object: usize,
    pub members: Vec<usize>,
    pub spaces: Vec<NatSpace>,
    pub offsets: Vec<usize>,
    pub total: usize,
    pub relations: Subspace,
    /// Quotient map from the direct sum onto the colimit.
    pub projection: Matrix,
}

impl Colimit {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    /// Embedding of the summand at position `k` into the direct sum.
    pub fn injection(&self, k: usize) -> Matrix {
        let p = self.relations.prime();
        let d = self.spaces[k].dim();
        let off = self.offsets[k];
        Matrix::from_fn(p, self.total, d, |r, c| u32::from(r == off + c))
    }

    fn position(&self, ideal: usize) -> usize {
        self.members.iter().position(|&i| i == ideal).expect("ideal is a filter member")
    }
}

pub fn colimit_at(m: &CModule, lat: &Lattices, f: &Filter, c: usize) -> Colimit {
    let cat = m.category();
    let p = m.prime();
    let members = f.members[c].clone();
    let spaces: Vec<NatSpace> = members.iter().map(|&i| hom_from_ideal(lat.ideal(c, i), m)).collect();
    let mut offsets = Vec::with_capacity(spaces.len());
    let mut total = 0;
    for s in &spaces {
        offsets.push(total);
        total += s.dim();
    }
    let id = cat.identity(c);
    let mut rels: Vec<Vec<u32>> = Vec::new();
    for (a, &i) in members.iter().enumerate() {
        for (b, &j) in members.iter().enumerate() {
            if a == b || !lat.at(c).leq[i][j] {
                continue;
            }
            let restrict =
                pullback_map(cat, &id, lat.ideal(c, i).spaces(), &spaces[a], lat.ideal(c, j).spaces(), &spaces[b]);
            for k in 0..spaces[b].dim() {
                let mut v = vec![0u32; total];
                v[offsets[b] + k] = 1;
                for r in 0..spaces[a].dim() {
                    v[offsets[a] + r] = p.sub(v[offsets[a] + r], restrict.get(r, k));
                }
                rels.push(v);
            }
        }
    }
    let relations = Subspace::span(p, total, &rels);
    let projection = relations.quotient_map();
    Colimit { object: c, members, spaces, offsets, total, relations, projection }
}

/// The structure map of the colimit along `h: c -> b`, from the direct sum
/// at `c` to the direct sum at `b`: `(I, β) ↦ ((I:h), β∘γ)`.
pub fn structure_map(lat: &Lattices, from: &Colimit, to: &Colimit, h: &Morphism) -> Matrix {
    let cat = lat.category();
    let p = cat.prime();
    let (c, b) = (h.source, h.target);
    let mut out = Matrix::zeros(p, to.total, from.total);
    for (k, &i) in from.members.iter().enumerate() {
        let q = lat.colon_index(c, i, h);
        let kb = to.position(q);
        let pull =
            pullback_map(cat, h, lat.ideal(b, q).spaces(), &to.spaces[kb], lat.ideal(c, i).spaces(), &from.spaces[k]);
        for r in 0..pull.rows() {
            for s in 0..pull.cols() {
                out.set(to.offsets[kb] + r, from.offsets[k] + s, pull.get(r, s));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColimitComparison {
    pub colimit_dims: Vec<usize>,
    pub collapsed_dims: Vec<usize>,
    /// `ι_{I₀}` induces an isomorphism onto the colimit at every object.
    pub iso: bool,
    /// Structure maps are well defined on the quotient and agree with `𝕃(M)`.
    pub structure_maps_agree: bool,
    /// `φ_M` agrees with the class of `(P_c, ev_x)`.
    pub phi_agrees: bool,
}

impl ColimitComparison {
    pub fn agrees(&self) -> bool {
        self.colimit_dims == self.collapsed_dims && self.iso && self.structure_maps_agree && self.phi_agrees
    }
}

/// Compares `pre` with the literal colimit over every member of `F`.
pub fn compare_with_colimit(pre: &Prelocalized, lat: &Lattices, f: &Filter) -> ColimitComparison {
    let m = &pre.source;
    let cat = m.category();
    let n = cat.num_objects();
    let colims: Vec<Colimit> = (0..n).map(|c| colimit_at(m, lat, f, c)).collect();
    // ι_{I₀(c)} followed by the quotient map.
    let embed: Vec<Matrix> = (0..n)
        .map(|c| {
            let k = colims[c].position(pre.minima[c]);
            colims[c].projection.mul(&colims[c].injection(k))
        })
        .collect();
    let iso = embed.iter().all(|e| e.rows() == e.cols() && e.rank() == e.cols());

    let mut structure_maps_agree = true;
    for (i, ar) in cat.arrows().iter().enumerate() {
        let h = cat.arrow(i);
        let (c, b) = (ar.source, ar.target);
        let s = structure_map(lat, &colims[c], &colims[b], &h);
        let qs = colims[b].projection.mul(&s);
        let kills_relations = colims[c].relations.basis_vectors().iter().all(|v| qs.mul_vec(v).iter().all(|&x| x == 0));
        let commutes = qs.mul(&colims[c].injection(colims[c].position(pre.minima[c])))
            == embed[b].mul(pre.module.action(i));
        structure_maps_agree &= kills_relations && commutes;
    }

    let mut phi_agrees = true;
    for c in 0..n {
        let top = lat.at(c).top();
        let k = colims[c].position(top);
        let full_space = &colims[c].spaces[k];
        let cols: Vec<Vec<u32>> = (0..m.dim(c))
            .map(|j| {
                let mut x = vec![0u32; m.dim(c)];
                x[j] = 1;
                let comps: Vec<Matrix> = (0..n)
                    .map(|b| m.evaluation_matrix(c, &x, b).mul(&lat.ideal(c, top).spaces()[b].basis().transpose()))
                    .collect();
                full_space.component_coordinates(&comps).expect("evaluation is natural")
            })
            .collect();
        let ev = Matrix::from_columns(m.prime(), full_space.dim(), &cols);
        let lhs = colims[c].projection.mul(&colims[c].injection(k)).mul(&ev);
        let rhs = embed[c].mul(&pre.phi.components[c]);
        phi_agrees &= lhs == rhs;
    }

    ColimitComparison {
        colimit_dims: colims.iter().map(Colimit::dim).collect(),
        collapsed_dims: pre.module.dims().to_vec(),
        iso,
        structure_maps_agree,
        phi_agrees,
    }
}
