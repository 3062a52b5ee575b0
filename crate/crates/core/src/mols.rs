//! Sets of mutually orthogonal Latin squares and their file format.

use crate::error::{Error, Result};
use crate::latin::{orthogonality_collision, LatinSquare};

/// A family of pairwise-orthogonal Latin squares of a common order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MolsSet {
    n: usize,
    squares: Vec<LatinSquare>,
}

impl MolsSet {
    /// Verifies the Latin property of every square and orthogonality of
    /// every pair.
    pub fn new(squares: Vec<LatinSquare>) -> Result<Self> {
        let n = squares.first().ok_or(Error::EmptySet)?.order();
        for sq in &squares {
            if sq.order() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: sq.order(),
                });
            }
            if let Some(err) = sq.latin_violation() {
                return Err(err);
            }
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
        Ok(MolsSet { n, squares })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn squares(&self) -> &[LatinSquare] {
        &self.squares
    }

    /// Squares in the same file format, separated by single blank lines.
    pub fn emit(&self) -> String {
        let parts: Vec<String> = self.squares.iter().map(|s| s.emit()).collect();
        parts.join("\n")
    }

    /// Parses a MOLS file. A single square is a valid one-element set.
    pub fn parse(text: &str) -> Result<Self> {
        let squares = parse_squares(text)?;
        MolsSet::new(squares)
    }
}

/// Splits a MOLS file into squares without checking orthogonality.
pub fn parse_squares(text: &str) -> Result<Vec<LatinSquare>> {
    let mut squares = Vec::new();
    let mut block = String::new();
    for line in text.lines().chain(std::iter::once("")) {
        if line.trim().is_empty() {
            if !block.is_empty() {
                squares.push(LatinSquare::parse(&block)?);
                block.clear();
            }
        } else {
            block.push_str(line);
            block.push('\n');
        }
    }
    if squares.is_empty() {
        return Err(Error::ParseError {
            line: 1,
            msg: "no squares in input".into(),
        });
    }
    Ok(squares)
}

/// Product construction: pairs of squares combine cellwise, with the
/// product symbol `(a, b)` flattened to `a*n2 + b`. When the two sets have
/// different sizes the longer one is truncated to match; the caller can
/// detect this by comparing lengths.
pub fn mols_kronecker_product(s1: &MolsSet, s2: &MolsSet) -> Result<MolsSet> {
    if s1.is_empty() || s2.is_empty() {
        return Err(Error::EmptySet);
    }
    let count = s1.len().min(s2.len());
    let n1 = s1.order();
    let n2 = s2.order();
    let mut squares = Vec::with_capacity(count);
    for k in 0..count {
        let a = &s1.squares()[k];
        let b = &s2.squares()[k];
        squares.push(
            LatinSquare::from_fn(n1 * n2, |i, j| {
                let (i1, i2) = (i / n2, i % n2);
                let (j1, j2) = (j / n2, j % n2);
                a.get(i1, j1) as usize * n2 + b.get(i2, j2) as usize
            })
            .unwrap(),
        );
    }
    MolsSet::new(squares)
}
