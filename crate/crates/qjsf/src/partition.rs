//! Partitions (Young diagrams), their statistics, reverse tableaux, and the
//! interpolation nodes X(lambda).
//!
//! Boxes are indexed (row, column), 1-based. Partitions serialize as
//! comma-separated part lists ("2,1"); the empty partition serializes as "-".

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qseries::QContext;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros. Panics if the parts are
    /// not weakly decreasing.
    pub fn new(mut parts: Vec<usize>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "parts must be weakly decreasing"
        );
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// lambda_i with the convention lambda_i = 0 beyond the length
    /// (1-based index).
    pub fn part(&self, i: usize) -> usize {
        assert!(i >= 1);
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Length ell(lambda).
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// Size |lambda|.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Transposed diagram lambda'.
    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=cols)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// n(lambda) = sum (i-1) lambda_i.
    pub fn n_stat(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// True iff mu_i <= lambda_i for all i.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.parts
            .iter()
            .enumerate()
            .all(|(i, &m)| self.parts.get(i).is_some_and(|&l| l >= m))
    }

    /// All boxes (i, j) of the diagram, 1-based, row-major.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| (i + 1, j)))
    }

    /// Hook lengths h(i, j) = lambda_i - j + lambda'_j - i + 1.
    pub fn hook_lengths(&self) -> Vec<((usize, usize), usize)> {
        let conj = self.conjugate();
        self.boxes()
            .map(|(i, j)| ((i, j), self.part(i) - j + conj.part(j) - i + 1))
            .collect()
    }

    /// The diagram with every box replaced by a 2x2 square:
    /// (2*l1, 2*l1, 2*l2, 2*l2, ...).
    pub fn doubled(&self) -> Partition {
        let mut parts = Vec::with_capacity(2 * self.parts.len());
        for &p in &self.parts {
            parts.push(2 * p);
            parts.push(2 * p);
        }
        Partition { parts }
    }

    /// The node vector X_N(lambda) = (q^{-lambda_i + i - 1})_{i=1..N}.
    pub fn node_vector(&self, n: usize, ctx: &QContext) -> Result<Vec<Scalar>> {
        if n < self.length() {
            return Err(Error::NTooSmall {
                given: n,
                needed: self.length(),
            });
        }
        (1..=n)
            .map(|i| ctx.q_pow(i as i64 - 1 - self.part(i) as i64))
            .collect()
    }

    /// Coordinate i (1-based) of the infinite node vector X(lambda).
    pub fn node_coordinate(&self, i: usize, ctx: &QContext) -> Scalar {
        ctx.q_pow(i as i64 - 1 - self.part(i) as i64)
            .expect("positive q")
    }

    /// All subdiagrams nu contained in self, in graded-lex order.
    pub fn subdiagrams(&self) -> Vec<Partition> {
        let mut out = vec![Partition::empty()];
        let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
        for depth in 0..self.length() {
            let mut next = Vec::new();
            for stem in &frontier {
                let upper = self.parts[depth].min(*stem.last().unwrap_or(&usize::MAX));
                for p in 1..=upper {
                    let mut parts = stem.clone();
                    parts.push(p);
                    out.push(Partition::new(parts.clone()));
                    next.push(parts);
                }
            }
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Graded order: by size, then reverse-lexicographic on the parts, so that
/// e.g. (2) precedes (1,1).
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "-");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Partition> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Partition::empty());
        }
        let parts: Vec<usize> = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("invalid partition {s:?}")))
            })
            .collect::<Result<_>>()?;
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!(
                "partition parts must be weakly decreasing: {s:?}"
            )));
        }
        Ok(Partition::new(parts))
    }
}

/// All partitions with |lambda| <= max_size, graded then lexicographic,
/// each exactly once.
pub fn enumerate_partitions(max_size: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for n in 0..=max_size {
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        let mut level = Vec::new();
        while let Some(stem) = stack.pop() {
            let used: usize = stem.iter().sum();
            if used == n {
                level.push(Partition::new(stem));
                continue;
            }
            let cap = (n - used).min(*stem.last().unwrap_or(&n));
            for p in (1..=cap).rev() {
                let mut next = stem.clone();
                next.push(p);
                stack.push(next);
            }
        }
        level.sort();
        out.extend(level);
    }
    out
}

/// A reverse tableau: entries weakly decrease along rows and strictly
/// decrease down columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// Entry T(i, j), 1-based.
    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.rows[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }
}

/// All reverse tableaux of shape `mu` with entries in {1..N}; empty if
/// N < ell(mu).
pub fn enumerate_reverse_tableaux(mu: &Partition, n: usize) -> Vec<Tableau> {
    let mut out = Vec::new();
    if mu.is_empty() {
        out.push(Tableau {
            shape: mu.clone(),
            rows: Vec::new(),
        });
        return out;
    }
    if n < mu.length() {
        return out;
    }
    let shape: Vec<usize> = mu.parts().to_vec();
    let mut rows: Vec<Vec<usize>> = shape.iter().map(|&p| vec![0; p]).collect();
    fill(&shape, &mut rows, 0, 0, n, &mut |rows| {
        out.push(Tableau {
            shape: mu.clone(),
            rows: rows.to_vec(),
        })
    });
    return out;

    fn fill(
        shape: &[usize],
        rows: &mut Vec<Vec<usize>>,
        i: usize,
        j: usize,
        n: usize,
        emit: &mut impl FnMut(&[Vec<usize>]),
    ) {
        if i == shape.len() {
            emit(rows);
            return;
        }
        let (ni, nj) = if j + 1 < shape[i] { (i, j + 1) } else { (i + 1, 0) };
        let mut hi = n;
        if j > 0 {
            hi = hi.min(rows[i][j - 1]);
        }
        if i > 0 && shape[i - 1] > j {
            hi = hi.min(rows[i - 1][j].saturating_sub(1));
        }
        for v in 1..=hi {
            rows[i][j] = v;
            fill(shape, rows, ni, nj, n, emit);
        }
        rows[i][j] = 0;
    }
}
