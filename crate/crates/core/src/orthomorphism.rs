//! MOLS based on a group: the Cayley square together with squares
//! `K_i(x, y) = x · μ_i(y)` for bijections `μ_i` of the group.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::latin::{cayley_square, orthogonality_collision, LatinSquare};
use crate::mols::MolsSet;
use crate::Limits;

/// A group with candidate orthomorphisms, each a bijection on element
/// indices.
pub struct OrthomorphismFamily {
    pub group: PermGroup,
    pub maps: Vec<Vec<usize>>,
}

impl OrthomorphismFamily {
    pub fn new(group: PermGroup, maps: Vec<Vec<usize>>) -> Result<Self> {
        let n = group.order();
        for m in &maps {
            if m.len() != n {
                return Err(Error::ShapeError(format!(
                    "map length {} does not match group order {n}",
                    m.len()
                )));
            }
            let mut seen = vec![false; n];
            for &x in m {
                if x >= n || seen[x] {
                    return Err(Error::ShapeError("map is not a bijection".into()));
                }
                seen[x] = true;
            }
        }
        Ok(OrthomorphismFamily { group, maps })
    }

    /// Replaces each `μ` by `g ↦ μ(g)·μ(e)^{-1}` so that `μ(e) = e`; an
    /// isotopy of the resulting set.
    pub fn normalized(&self) -> OrthomorphismFamily {
        let elems = self.group.elements();
        let e_idx = self
            .group
            .element_index(&crate::perm::Perm::identity(self.group.degree()))
            .unwrap();
        let maps = self
            .maps
            .iter()
            .map(|m| {
                let shift = elems[m[e_idx]].inverse();
                m.iter()
                    .map(|&mi| self.group.element_index(&elems[mi].compose(&shift)).unwrap())
                    .collect()
            })
            .collect();
        OrthomorphismFamily {
            group: self.group.clone(),
            maps,
        }
    }
}

/// Builds the set `(L, K_1, ..., K_t)` with `L` the Cayley square and
/// `K_i(x, y) = x·μ_i(y)`, normalizing first, and reports the first failing
/// pair if the family is not orthogonal. Square 0 is the Cayley square.
pub fn orthomorphism_mols(family: &OrthomorphismFamily, limits: &Limits) -> Result<MolsSet> {
    let family = family.normalized();
    let group = &family.group;
    let elems = group.elements();
    let mut squares = vec![cayley_square(group, limits)?];
    for m in &family.maps {
        squares.push(LatinSquare::from_fn(group.order(), |x, y| {
            group
                .element_index(&elems[x].compose(&elems[m[y]]))
                .unwrap()
        })?);
    }
    for i in 0..squares.len() {
        for j in i + 1..squares.len() {
            if let Some((a, b, (r1, c1), (r2, c2))) =
                orthogonality_collision(&squares[i], &squares[j])?
            {
                return Err(Error::NotOrthogonal {
                    i,
                    j,
                    a,
                    b,
                    r1,
                    c1,
                    r2,
                    c2,
                });
            }
        }
    }
    MolsSet::new(squares)
}
