//! Permutations on `{0..d-1}` stored as image sequences.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0..d-1}`; `images[i]` is the image of point `i`.
///
/// Ordering is lexicographic on the image sequence, which fixes the
/// canonical element order used everywhere else.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from an image sequence, checking bijectivity.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let d = images.len();
        if d == 0 {
            return Err(Error::ShapeError("permutation of degree 0".into()));
        }
        let mut seen = vec![false; d];
        for &x in &images {
            if (x as usize) >= d || seen[x as usize] {
                return Err(Error::ShapeError(format!(
                    "image sequence is not a bijection on 0..{d}"
                )));
            }
            seen[x as usize] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles of
    /// 0-based points. Points not mentioned are fixed.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Self> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w];
                let to = cycle[(w + 1) % cycle.len()];
                if from >= degree || to >= degree {
                    return Err(Error::ShapeError(format!(
                        "cycle point {} exceeds degree {degree}",
                        from.max(to)
                    )));
                }
                if moved[from] {
                    return Err(Error::ShapeError(format!(
                        "point {from} appears in two cycles"
                    )));
                }
                moved[from] = true;
                images[from] = to as u16;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u16;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut q = self.clone();
        while !q.is_identity() {
            q = self.compose(&q);
            k += 1;
        }
        k
    }

    pub fn fixes(&self, point: usize) -> bool {
        self.images[point] as usize == point
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i != x as usize)
    }

    /// Decomposes into cycles of length >= 2, each rotated to start at its
    /// minimal point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation with 1-based points, as used in catalog files.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for cycle in cycles {
            s.push('(');
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&(p + 1).to_string());
            }
            s.push(')');
        }
        s
    }

    /// Parses 1-based cycle notation like `(1,2,4)(5,6)`; `()` is the identity.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "()" {
            return Ok(Perm::identity(degree));
        }
        if !compact.starts_with('(') || !compact.ends_with(')') {
            return Err(Error::ShapeError(format!("bad cycle notation: {s}")));
        }
        let mut cycles = Vec::new();
        for part in compact[1..compact.len() - 1].split(")(") {
            let mut cycle = Vec::new();
            for tok in part.split(',') {
                let p: usize = tok
                    .parse()
                    .map_err(|_| Error::ShapeError(format!("bad cycle point: {tok}")))?;
                if p == 0 {
                    return Err(Error::ShapeError("cycle points are 1-based".into()));
                }
                cycle.push(p - 1);
            }
            cycles.push(cycle);
        }
        Self::from_cycles(&cycles, degree)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}
