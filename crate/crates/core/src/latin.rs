//! Latin squares: validity, normalization, associativity and quadrangle
//! tests, Cayley tables, transversals and complete mappings.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::Limits;

/// An `n x n` array over symbols `0..n-1`, row-major.
///
/// Construction only checks the shape; use [`LatinSquare::is_latin`] (or
/// [`LatinSquare::latin_violation`]) for the Latin property itself, matching
/// the pipeline's "verify before trusting" style.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<u16>,
}

impl LatinSquare {
    pub fn from_grid(grid: &[Vec<u16>]) -> Result<Self> {
        let n = grid.len();
        if n == 0 {
            return Err(Error::ShapeError("empty square".into()));
        }
        let mut cells = Vec::with_capacity(n * n);
        for row in grid {
            if row.len() != n {
                return Err(Error::ShapeError(format!(
                    "ragged input: row of length {} in a square of order {n}",
                    row.len()
                )));
            }
            for &x in row {
                if (x as usize) >= n {
                    return Err(Error::ShapeError(format!(
                        "symbol {x} out of range 0..{n}"
                    )));
                }
                cells.push(x);
            }
        }
        Ok(LatinSquare { n, cells })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let grid: Vec<Vec<u16>> = (0..n)
            .map(|i| (0..n).map(|j| f(i, j) as u16).collect())
            .collect();
        Self::from_grid(&grid)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u16 {
        self.cells[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[u16] {
        &self.cells[row * self.n..(row + 1) * self.n]
    }

    pub fn is_latin(&self) -> bool {
        self.latin_violation().is_none()
    }

    /// First repeated symbol in a row or column, if any.
    pub fn latin_violation(&self) -> Option<Error> {
        let n = self.n;
        for i in 0..n {
            let mut seen = vec![false; n];
            for j in 0..n {
                let s = self.get(i, j) as usize;
                if seen[s] {
                    return Some(Error::NotLatin {
                        place: "row",
                        index: i,
                        symbol: s as u16,
                    });
                }
                seen[s] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for i in 0..n {
                let s = self.get(i, j) as usize;
                if seen[s] {
                    return Some(Error::NotLatin {
                        place: "column",
                        index: j,
                        symbol: s as u16,
                    });
                }
                seen[s] = true;
            }
        }
        None
    }

    pub fn is_reduced(&self) -> bool {
        (0..self.n).all(|i| self.get(0, i) as usize == i && self.get(i, 0) as usize == i)
    }

    /// Reindexes symbols by the first row and sorts rows by their first
    /// column entry, producing the reduced square in the same main class.
    pub fn normalize(&self) -> LatinSquare {
        let n = self.n;
        let mut symmap = vec![0u16; n];
        for j in 0..n {
            symmap[self.get(0, j) as usize] = j as u16;
        }
        let mut rows: Vec<Vec<u16>> = (0..n)
            .map(|i| self.row(i).iter().map(|&x| symmap[x as usize]).collect())
            .collect();
        rows.sort_by_key(|r| r[0]);
        LatinSquare::from_grid(&rows).unwrap()
    }

    pub fn transpose(&self) -> LatinSquare {
        LatinSquare::from_fn(self.n, |i, j| self.get(j, i) as usize).unwrap()
    }

    /// Applies row, column and symbol bijections.
    pub fn apply_isotopy(&self, rows: &Perm, cols: &Perm, syms: &Perm) -> LatinSquare {
        let n = self.n;
        let mut grid = vec![vec![0u16; n]; n];
        for i in 0..n {
            for j in 0..n {
                grid[rows.apply(i)][cols.apply(j)] = syms.apply(self.get(i, j) as usize) as u16;
            }
        }
        LatinSquare::from_grid(&grid).unwrap()
    }

    /// Treats the table as a binary operation `a*b = cells[a][b]` and checks
    /// associativity. Callers normalize first; on a reduced square symbol 0
    /// is the two-sided identity and a `true` verdict means the square is a
    /// group table.
    pub fn is_associative(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.get(a, b) as usize;
                for c in 0..n {
                    let bc = self.get(b, c) as usize;
                    if self.get(ab, c) != self.get(a, bc) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Quadrangle criterion: whenever two quadrangles agree in three cells,
    /// they agree in the fourth. Holds iff the square is isotopic to a group
    /// table, with no normalization needed.
    pub fn quadrangle_criterion(&self) -> bool {
        let n = self.n;
        // column of symbol s in row r, row of symbol s in column c
        let mut col_of = vec![0usize; n * n];
        let mut row_of = vec![0usize; n * n];
        let mut positions = vec![Vec::with_capacity(n); n];
        for r in 0..n {
            for c in 0..n {
                let s = self.get(r, c) as usize;
                col_of[r * n + s] = c;
                row_of[c * n + s] = r;
                positions[s].push((r, c));
            }
        }
        for i1 in 0..n {
            for j1 in 0..n {
                let a = self.get(i1, j1) as usize;
                for &(i2, j2) in &positions[a] {
                    for k1 in 0..n {
                        let k2 = col_of[i2 * n + self.get(i1, k1) as usize];
                        for h1 in 0..n {
                            let h2 = row_of[j2 * n + self.get(h1, j1) as usize];
                            if self.get(h1, k1) != self.get(h2, k2) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// A transversal: one cell per row, columns and symbols all distinct.
    /// Returns the column picked in each row, first hit in lexicographic
    /// order.
    pub fn find_transversal(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let mut cols_used = vec![false; n];
        let mut syms_used = vec![false; n];
        let mut pick = vec![0usize; n];
        fn go(
            sq: &LatinSquare,
            row: usize,
            cols_used: &mut [bool],
            syms_used: &mut [bool],
            pick: &mut [usize],
        ) -> bool {
            let n = sq.order();
            if row == n {
                return true;
            }
            for col in 0..n {
                if cols_used[col] {
                    continue;
                }
                let s = sq.get(row, col) as usize;
                if syms_used[s] {
                    continue;
                }
                cols_used[col] = true;
                syms_used[s] = true;
                pick[row] = col;
                if go(sq, row + 1, cols_used, syms_used, pick) {
                    return true;
                }
                cols_used[col] = false;
                syms_used[s] = false;
            }
            false
        }
        if go(self, 0, &mut cols_used, &mut syms_used, &mut pick) {
            Some(pick)
        } else {
            None
        }
    }

    /// Parses the square file format: first line `n`, then `n` lines of `n`
    /// space-separated symbols.
    pub fn parse(text: &str) -> Result<LatinSquare> {
        let mut lines = text.lines().enumerate();
        let (_, first) = lines.next().ok_or(Error::ParseError {
            line: 1,
            msg: "empty input".into(),
        })?;
        let n: usize = first.trim().parse().map_err(|_| Error::ParseError {
            line: 1,
            msg: format!("expected order, got {first:?}"),
        })?;
        let mut grid = Vec::with_capacity(n);
        for _ in 0..n {
            let (lineno, line) = lines.next().ok_or(Error::ParseError {
                line: n + 1,
                msg: "truncated square".into(),
            })?;
            let row: Vec<u16> = line
                .split_whitespace()
                .map(|t| {
                    t.parse().map_err(|_| Error::ParseError {
                        line: lineno + 1,
                        msg: format!("bad symbol {t:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            grid.push(row);
        }
        Self::from_grid(&grid)
    }

    pub fn emit(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `are_orthogonal`: the n^2 superimposed pairs are pairwise distinct.
pub fn are_orthogonal(a: &LatinSquare, b: &LatinSquare) -> Result<bool> {
    Ok(orthogonality_collision(a, b)?.is_none())
}

/// First colliding pair `(symbol_a, symbol_b, cell1, cell2)` if the squares
/// are not orthogonal.
pub fn orthogonality_collision(
    a: &LatinSquare,
    b: &LatinSquare,
) -> Result<Option<(u16, u16, (usize, usize), (usize, usize))>> {
    let n = a.order();
    if b.order() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: b.order(),
        });
    }
    let mut seen: Vec<Option<(usize, usize)>> = vec![None; n * n];
    for i in 0..n {
        for j in 0..n {
            let pa = a.get(i, j);
            let pb = b.get(i, j);
            let idx = pa as usize * n + pb as usize;
            if let Some(prev) = seen[idx] {
                return Ok(Some((pa, pb, prev, (i, j))));
            }
            seen[idx] = Some((i, j));
        }
    }
    Ok(None)
}

/// The Cayley table of a permutation group over its canonical element order:
/// cell `(i, j)` holds the index of `elements[i] ∘ elements[j]`.
pub fn cayley_square(group: &PermGroup, limits: &Limits) -> Result<LatinSquare> {
    if group.order() > limits.max_group_order {
        return Err(Error::GroupTooLarge {
            order: group.order(),
            cap: limits.max_group_order,
        });
    }
    let elems = group.elements();
    LatinSquare::from_fn(group.order(), |i, j| {
        group.element_index(&elems[i].compose(&elems[j])).unwrap()
    })
}

/// A complete mapping of `G`: a bijection `θ` with `g ↦ g·θ(g)` bijective,
/// found as a transversal of the Cayley table. Returns `θ` as a map on
/// element indices.
pub fn find_complete_mapping(group: &PermGroup, limits: &Limits) -> Result<Option<Vec<usize>>> {
    let table = cayley_square(group, limits)?;
    Ok(table.find_transversal())
}
