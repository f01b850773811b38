//! Seeded random modules, submodules and morphisms for property checks.
//!
//! Arrow matrices are drawn one arrow at a time. A relation whose other
//! arrows are already fixed and whose paths use the current arrow at most
//! once is linear in that arrow; its solution space is sampled uniformly.
//! Anything else is drawn at random and the finished module is validated,
//! restarting on failure.

use std::sync::Arc;

use rand::Rng;

use crate::cmodule::{nat_hom, sub_generated, CModule, NatTransform, Subfunctor};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Prime};
use crate::presentation::{CategoryData, Path};

/// Attempts before giving up on a dimension vector.
const RESTARTS: usize = 200;

fn random_vec(p: Prime, n: usize, rng: &mut impl Rng) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..p.get())).collect()
}

/// A random valid module with the given dimensions, or `None` if every
/// attempt violated a relation.
pub fn random_module_with_dims(cat: &Arc<CategoryData>, dims: &[usize], rng: &mut impl Rng) -> Option<CModule> {
    for _ in 0..RESTARTS {
        if let Some(action) = draw_action(cat, dims, rng) {
            let m = CModule::new_unchecked(cat.clone(), dims.to_vec(), action);
            if m.validate().is_ok() {
                return Some(m);
            }
        }
    }
    None
}

/// A random valid module with each fiber of dimension at most `dmax`.
pub fn random_module(cat: &Arc<CategoryData>, dmax: usize, rng: &mut impl Rng) -> Result<CModule> {
    for _ in 0..RESTARTS {
        let dims: Vec<usize> = (0..cat.num_objects()).map(|_| rng.gen_range(0..=dmax)).collect();
        if let Some(m) = random_module_with_dims(cat, &dims, rng) {
            return Ok(m);
        }
    }
    Err(Error::Invalid("could not sample a module satisfying the relations".into()))
}

fn draw_action(cat: &CategoryData, dims: &[usize], rng: &mut impl Rng) -> Option<Vec<Matrix>> {
    let p = cat.prime();
    let arrows = cat.arrows();
    let mut action: Vec<Option<Matrix>> = vec![None; arrows.len()];
    for a in 0..arrows.len() {
        let (rows, cols) = (dims[arrows[a].target], dims[arrows[a].source]);
        let unknowns = rows * cols;
        let mut system: Vec<Vec<u32>> = Vec::new();
        let mut rhs: Vec<u32> = Vec::new();
        for rel in cat.relations() {
            let uses_a = rel.terms.iter().any(|(_, path)| path.arrows.contains(&a));
            let linear = rel.terms.iter().all(|(_, path)| {
                path.arrows.iter().filter(|&&x| x == a).count() <= 1
                    && path.arrows.iter().all(|&x| x == a || action[x].is_some())
            });
            if !uses_a || !linear {
                continue;
            }
            let (r_dim, c_dim) = (dims[rel.target], dims[rel.source]);
            // Σ c·L·A·R + Σ c·P = 0, one equation per output entry.
            let mut coeff = vec![vec![0u32; unknowns]; r_dim * c_dim];
            let mut constant = Matrix::zeros(p, r_dim, c_dim);
            for (c, path) in &rel.terms {
                match path.arrows.iter().position(|&x| x == a) {
                    None => constant = constant.add(&eval(p, dims, &action, path).scale(*c)),
                    Some(pos) => {
                        let before = sub_path(path, 0, pos, arrows[a].source);
                        let after = sub_path(path, pos + 1, path.arrows.len(), arrows[a].target);
                        let r = eval(p, dims, &action, &before);
                        let l = eval(p, dims, &action, &after);
                        for i in 0..r_dim {
                            for j in 0..c_dim {
                                let eq = &mut coeff[i * c_dim + j];
                                for s in 0..rows {
                                    for t in 0..cols {
                                        let v = p.mul(*c, p.mul(l.get(i, s), r.get(t, j)));
                                        eq[s * cols + t] = p.add(eq[s * cols + t], v);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            for (k, eq) in coeff.into_iter().enumerate() {
                system.push(eq);
                rhs.push(p.neg(constant.data()[k]));
            }
        }
        let values = if system.is_empty() {
            random_vec(p, unknowns, rng)
        } else {
            let a_mat = Matrix::from_rows(p, unknowns, &system);
            let b = Matrix::from_columns(p, rhs.len(), &[rhs]);
            let sol = a_mat.solve(&b).ok()?;
            let free = random_vec(p, sol.kernel.dim(), rng);
            let k = sol.kernel.combine(&free);
            sol.particular.column(0).iter().zip(&k).map(|(x, y)| p.add(*x, *y)).collect()
        };
        action[a] = Some(Matrix::from_fn(p, rows, cols, |i, j| values[i * cols + j]));
    }
    Some(action.into_iter().map(|m| m.expect("every arrow assigned")).collect())
}

fn sub_path(path: &Path, from: usize, to: usize, start: usize) -> Path {
    Path { source: start, target: start, arrows: path.arrows[from..to].to_vec() }
}

fn eval(p: Prime, dims: &[usize], action: &[Option<Matrix>], path: &Path) -> Matrix {
    let mut m: Option<Matrix> = None;
    for &a in &path.arrows {
        let next = action[a].as_ref().expect("arrow assigned");
        m = Some(match m {
            None => next.clone(),
            Some(acc) => next.mul(&acc),
        });
    }
    m.unwrap_or_else(|| Matrix::identity(p, dims[path.source]))
}

/// A submodule generated by up to three random elements.
pub fn random_subfunctor(m: &CModule, rng: &mut impl Rng) -> Subfunctor {
    let n = m.dims().len();
    let count = rng.gen_range(0..=3);
    let elements: Vec<(usize, Vec<u32>)> = (0..count)
        .map(|_| {
            let c = rng.gen_range(0..n);
            (c, random_vec(m.prime(), m.dim(c), rng))
        })
        .collect();
    sub_generated(m, &elements)
}

/// A uniformly random element of `Nat(M, N)`.
pub fn random_nat(m: &CModule, n: &CModule, rng: &mut impl Rng) -> NatTransform {
    let space = nat_hom(m, n);
    let coords = random_vec(m.prime(), space.dim(), rng);
    space.element(&coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{build_category, parse_category};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_valid_and_reproducible() {
        let q = parse_category("nilpotency 2\nobject x\narrow e : x -> x\nrelation e.e = 0\n").unwrap();
        let cat = Arc::new(build_category(q).unwrap());
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20).map(|_| random_module(&cat, 3, &mut rng).unwrap()).collect::<Vec<_>>()
        };
        let a = draw(7);
        assert_eq!(a, draw(7));
        for m in &a {
            m.validate().unwrap();
        }
    }
}
