//! Orthogonal arrays of strength 2 and index 1: `n^2` rows whose projection
//! to any two coordinates is a bijection onto the coordinate product.

use crate::error::{Error, Result};
use crate::latin::LatinSquare;
use crate::mols::MolsSet;
use crate::packet::GroupPacket;
use crate::perm::Perm;

use crate::group::left_cosets;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalArray {
    n: usize,
    rows: Vec<Vec<u16>>,
    coordinate_labels: Vec<Vec<String>>,
}

impl OrthogonalArray {
    pub fn from_rows(n: usize, rows: Vec<Vec<u16>>, labels: Option<Vec<Vec<String>>>) -> Result<Self> {
        let t = rows.first().map(|r| r.len()).unwrap_or(0);
        if t < 2 {
            return Err(Error::ShapeError("array needs at least 2 coordinates".into()));
        }
        if rows.len() != n * n {
            return Err(Error::ShapeError(format!(
                "expected {} rows, got {}",
                n * n,
                rows.len()
            )));
        }
        for r in &rows {
            if r.len() != t {
                return Err(Error::ShapeError("ragged rows".into()));
            }
            if r.iter().any(|&x| x as usize >= n) {
                return Err(Error::ShapeError("entry out of range".into()));
            }
        }
        let coordinate_labels = labels.unwrap_or_else(|| {
            (0..t)
                .map(|_| (0..n).map(|s| s.to_string()).collect())
                .collect()
        });
        Ok(OrthogonalArray {
            n,
            rows,
            coordinate_labels,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of coordinates, `t = q + 2` for a set of `q` MOLS.
    pub fn coordinates(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<u16>] {
        &self.rows
    }

    pub fn coordinate_labels(&self) -> &[Vec<String>] {
        &self.coordinate_labels
    }

    /// The defining invariant: every coordinate pair projects bijectively
    /// onto `{0..n-1}^2`.
    pub fn verify_bijectivity(&self) -> bool {
        let n = self.n;
        let t = self.coordinates();
        for i in 0..t {
            for j in i + 1..t {
                let mut seen = vec![false; n * n];
                for r in &self.rows {
                    let idx = r[i] as usize * n + r[j] as usize;
                    if seen[idx] {
                        return false;
                    }
                    seen[idx] = true;
                }
            }
        }
        true
    }

    /// One square per non-selected coordinate: cell `(i, j)` of square `α`
    /// is the `α` entry of the unique row with `(row_coord, col_coord) =
    /// (i, j)`.
    pub fn to_squares(&self, row_coord: usize, col_coord: usize) -> Result<MolsSet> {
        let t = self.coordinates();
        for c in [row_coord, col_coord] {
            if c >= t {
                return Err(Error::CoordinateOutOfRange { coord: c, count: t });
            }
        }
        if row_coord == col_coord {
            return Err(Error::CoordinateOutOfRange {
                coord: col_coord,
                count: t,
            });
        }
        let n = self.n;
        let symbol_coords: Vec<usize> =
            (0..t).filter(|&c| c != row_coord && c != col_coord).collect();
        let mut grids = vec![vec![vec![0u16; n]; n]; symbol_coords.len()];
        let mut filled = vec![false; n * n];
        for r in &self.rows {
            let (i, j) = (r[row_coord] as usize, r[col_coord] as usize);
            if filled[i * n + j] {
                return Err(Error::ShapeError(
                    "coordinate pair does not project bijectively".into(),
                ));
            }
            filled[i * n + j] = true;
            for (s, &c) in symbol_coords.iter().enumerate() {
                grids[s][i][j] = r[c];
            }
        }
        let squares: Vec<LatinSquare> = grids
            .iter()
            .map(|g| LatinSquare::from_grid(g))
            .collect::<Result<_>>()?;
        MolsSet::new(squares)
    }

    /// Array of a MOLS set: rows `(i, j, s_1(i,j), ..., s_q(i,j))`.
    pub fn from_mols(set: &MolsSet) -> OrthogonalArray {
        let n = set.order();
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut row = Vec::with_capacity(set.len() + 2);
                row.push(i as u16);
                row.push(j as u16);
                for sq in set.squares() {
                    row.push(sq.get(i, j));
                }
                rows.push(row);
            }
        }
        OrthogonalArray::from_rows(n, rows, None).unwrap()
    }

    pub fn from_square(square: &LatinSquare) -> OrthogonalArray {
        let set = MolsSet::new(vec![square.clone()]).unwrap();
        Self::from_mols(&set)
    }

    /// Applies per-coordinate symbol bijections; an isotopy of the array.
    pub fn apply_coordinate_bijections(&self, perms: &[Perm]) -> Result<OrthogonalArray> {
        if perms.len() != self.coordinates() {
            return Err(Error::ShapeMismatch);
        }
        for p in perms {
            if p.degree() != self.n {
                return Err(Error::ShapeMismatch);
            }
        }
        let rows: Vec<Vec<u16>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(c, &x)| perms[c].apply(x as usize) as u16)
                    .collect()
            })
            .collect();
        let labels: Vec<Vec<String>> = self
            .coordinate_labels
            .iter()
            .enumerate()
            .map(|(c, old)| {
                let inv = perms[c].inverse();
                (0..self.n).map(|s| old[inv.apply(s)].clone()).collect()
            })
            .collect();
        OrthogonalArray::from_rows(self.n, rows, Some(labels))
    }
}

/// Lemma-level construction: rows of the array are the cosets `gK`, the
/// `i`-th entry of a row is the index of `gH_i` in the deterministic
/// enumeration of `G/H_i`.
pub fn packet_to_array(packet: &GroupPacket) -> Result<OrthogonalArray> {
    let group = &packet.group;
    let k_cosets = left_cosets(group, &packet.core)?;
    let mut coset_spaces = Vec::with_capacity(packet.subgroups.len());
    for h in &packet.subgroups {
        coset_spaces.push(left_cosets(group, h)?);
    }
    // coset index of each group element, per subgroup
    let mut coset_of: Vec<Vec<u16>> = Vec::with_capacity(coset_spaces.len());
    for cs in &coset_spaces {
        let mut map = vec![0u16; group.order()];
        for (ci, coset) in cs.cosets.iter().enumerate() {
            for m in &coset.members {
                map[group.element_index(m).unwrap()] = ci as u16;
            }
        }
        coset_of.push(map);
    }
    let rows: Vec<Vec<u16>> = k_cosets
        .cosets
        .iter()
        .map(|kc| {
            let g = group.element_index(&kc.rep).unwrap();
            coset_of.iter().map(|map| map[g]).collect()
        })
        .collect();
    let labels: Vec<Vec<String>> = coset_spaces
        .iter()
        .map(|cs| cs.cosets.iter().map(|c| c.rep.cycle_string()).collect())
        .collect();
    OrthogonalArray::from_rows(packet.n, rows, Some(labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_group, symmetric_group};
    use crate::packet::cayley_packet;

    #[test]
    fn z2_cayley_packet_array() {
        let packet = cayley_packet(&cyclic_group(2)).unwrap();
        let array = packet_to_array(&packet).unwrap();
        assert_eq!(array.order(), 2);
        assert_eq!(array.rows().len(), 4);
        assert!(array.verify_bijectivity());
        let set = array.to_squares(0, 1).unwrap();
        assert_eq!(set.len(), 1);
        let sq = set.squares()[0].normalize();
        assert_eq!(sq, LatinSquare::from_fn(2, |i, j| (i + j) % 2).unwrap());
    }

    #[test]
    fn z3_cayley_packet_square_is_z3_table() {
        let packet = cayley_packet(&cyclic_group(3)).unwrap();
        let array = packet_to_array(&packet).unwrap();
        assert!(array.verify_bijectivity());
        let sq = array.to_squares(0, 1).unwrap().squares()[0].normalize();
        assert!(sq.is_associative());
    }

    #[test]
    fn swapping_row_col_roles_stays_latin() {
        let packet = cayley_packet(&symmetric_group(3)).unwrap();
        let array = packet_to_array(&packet).unwrap();
        let a = array.to_squares(0, 1).unwrap();
        let b = array.to_squares(1, 0).unwrap();
        assert!(a.squares()[0].is_latin() && b.squares()[0].is_latin());
        assert!(matches!(
            array.to_squares(0, 7),
            Err(Error::CoordinateOutOfRange { .. })
        ));
    }

    #[test]
    fn mols_roundtrip() {
        let set = MolsSet::new(vec![
            LatinSquare::from_fn(5, |i, j| (i + j) % 5).unwrap(),
            LatinSquare::from_fn(5, |i, j| (i + 2 * j) % 5).unwrap(),
        ])
        .unwrap();
        let array = OrthogonalArray::from_mols(&set);
        assert_eq!(array.coordinates(), 4);
        assert!(array.verify_bijectivity());
        let back = array.to_squares(0, 1).unwrap();
        assert_eq!(back.squares(), set.squares());
    }
}
