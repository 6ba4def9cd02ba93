//! Partitions, Young diagrams and semistandard tableaux.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactfield::{Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("not a semistandard tableau: {0}")]
    NotSemistandard(String),
    #[error("ChainUnavailable: shape {shape} needs rank at least {needed}, got {rank}")]
    ChainUnavailable { shape: Partition, rank: usize, needed: usize },
    #[error("entry {entry} outside 1..={bound}")]
    EntryOutOfRange { entry: usize, bound: usize },
}

/// An integer partition `u_1 >= u_2 >= ... >= u_r >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, TableauError> {
        if parts.is_empty() {
            return Err(TableauError::NotAPartition("empty".into()));
        }
        if parts.contains(&0) {
            return Err(TableauError::NotAPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(TableauError::NotAPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// The one-row partition (n).
    pub fn row(n: usize) -> Self {
        Partition(vec![n])
    }

    /// The one-column partition (1, …, 1).
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.0.len()
    }

    /// Column lengths v_1 >= v_2 >= … (the conjugate partition).
    pub fn columns(&self) -> Vec<usize> {
        (0..self.0[0]).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect()
    }

    pub fn is_rectangle(&self) -> bool {
        self.0.iter().all(|&p| p == self.0[0])
    }

    /// Every partition of n, in decreasing lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                go(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            go(n, n, &mut Vec::new(), &mut out);
        }
        out
    }

    fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &len)| (0..len).map(move |j| (i, j)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = TableauError;

    /// Parses `"2,1"`, `"(2,1)"` or `"[2, 1]"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_matches(|c| matches!(c, '(' | ')' | '[' | ']'));
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| TableauError::NotAPartition(s.to_string()))?;
        Partition::new(parts)
    }
}

/// r(u): the number of rows, plus one when the diagram is a rectangle.
pub fn r_of(u: &Partition) -> usize {
    if u.is_rectangle() {
        u.num_rows() + 1
    } else {
        u.num_rows()
    }
}

/// A semistandard tableau: rows weakly increase, columns strictly increase.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, TableauError> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        if rows.iter().flatten().any(|&e| e == 0) {
            return Err(TableauError::NotSemistandard("entries must be positive".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.windows(2).any(|w| w[0] > w[1]) {
                return Err(TableauError::NotSemistandard(format!("row {} decreases", i + 1)));
            }
            if i > 0 && row.iter().zip(&rows[i - 1]).any(|(below, above)| below <= above) {
                return Err(TableauError::NotSemistandard(format!("column not strict at row {}", i + 1)));
            }
        }
        let _ = shape;
        Ok(Tableau { rows })
    }

    /// The tableau with i in every cell of row i.
    pub fn standard(u: &Partition) -> Self {
        Tableau { rows: u.parts().iter().enumerate().map(|(i, &len)| vec![i + 1; len]).collect() }
    }

    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(Vec::len).collect())
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> usize {
        self.rows[row][col]
    }

    /// Entries of column j, top to bottom.
    pub fn column(&self, j: usize) -> Vec<usize> {
        self.rows.iter().take_while(|r| r.len() > j).map(|r| r[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        (0..self.rows[0].len()).map(|j| self.column(j)).collect()
    }

    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }

    pub fn max_entry(&self) -> usize {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Plactic product: row-insert the reading word of `other` (rows bottom
    /// to top, each left to right) into `self`.
    pub fn product(&self, other: &Tableau) -> Tableau {
        let mut rows = self.rows.clone();
        for row in other.rows.iter().rev() {
            for &x in row {
                row_insert(&mut rows, x);
            }
        }
        Tableau { rows }
    }
}

fn row_insert(rows: &mut Vec<Vec<usize>>, mut x: usize) {
    for row in rows.iter_mut() {
        match row.iter().position(|&y| y > x) {
            Some(pos) => x = std::mem::replace(&mut row[pos], x),
            None => {
                row.push(x);
                return;
            }
        }
    }
    rows.push(vec![x]);
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

/// Occurrence counts (m_T(1), …, m_T(d)).
pub fn content_vector(t: &Tableau, d: usize) -> Result<Vec<usize>, TableauError> {
    let mut m = vec![0; d];
    for &e in t.rows.iter().flatten() {
        if e == 0 || e > d {
            return Err(TableauError::EntryOutOfRange { entry: e, bound: d });
        }
        m[e - 1] += 1;
    }
    Ok(m)
}

/// All semistandard tableaux of shape u with entries in 1..=d, in
/// lexicographic order of the row reading word.
pub fn enumerate_tableaux(u: &Partition, d: usize) -> Vec<Tableau> {
    let cells: Vec<(usize, usize)> = u.cells().collect();
    let mut rows: Vec<Vec<usize>> = u.parts().iter().map(|&l| vec![0; l]).collect();
    let mut out = Vec::new();
    fill(&cells, 0, d, &mut rows, &mut out);
    out
}

fn fill(cells: &[(usize, usize)], k: usize, d: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Tableau>) {
    if k == cells.len() {
        out.push(Tableau { rows: rows.clone() });
        return;
    }
    let (i, j) = cells[k];
    let left = if j > 0 { rows[i][j - 1] } else { 1 };
    let above = if i > 0 { rows[i - 1][j] + 1 } else { 1 };
    for v in left.max(above)..=d {
        rows[i][j] = v;
        fill(cells, k + 1, d, rows, out);
    }
    rows[i][j] = 0;
}

/// Number of semistandard tableaux by the hook-content formula
/// Π (d + content) / hook.
pub fn hook_content_count(u: &Partition, d: usize) -> BigInt {
    let cols = u.columns();
    let mut acc = Rational::one();
    for (i, j) in u.cells() {
        let content = j as i64 - i as i64;
        let hook = (u.parts()[i] - j - 1) + (cols[j] - i - 1) + 1;
        acc = acc.mul(&Rational::new(d as i64 + content, hook as i64).expect("hook is positive"));
    }
    debug_assert!(acc.is_integer());
    acc.numer().clone()
}

/// Tableaux T_1, …, T_d with T_1 standard, such that for every
/// i in 1..d some consecutive pair differs in exactly one cell, holding i
/// then i+1.
///
/// Construction: pick a corner cell c in row k with no cell below it (the
/// bottom row when d > rows, otherwise a corner above the bottom row, which
/// exists because u is then not a rectangle). Raise c from k up to d, then
/// raise the last cell of rows k-1, …, 1 by one each.
pub fn standard_chain(u: &Partition, d: usize) -> Result<Vec<Tableau>, TableauError> {
    let needed = r_of(u);
    if d < needed {
        return Err(TableauError::ChainUnavailable { shape: u.clone(), rank: d, needed });
    }
    let parts = u.parts();
    let r = parts.len();
    let corner_row = if d > r {
        r - 1
    } else {
        (0..r - 1).rev().find(|&i| parts[i] > parts[i + 1]).expect("non-rectangular shape has an upper corner")
    };
    let mut cur = Tableau::standard(u);
    let mut chain = vec![cur.clone()];
    let corner_col = parts[corner_row] - 1;
    for v in corner_row + 2..=d {
        cur.rows[corner_row][corner_col] = v;
        chain.push(cur.clone());
    }
    for i in (0..corner_row).rev() {
        let last = parts[i] - 1;
        cur.rows[i][last] += 1;
        chain.push(cur.clone());
    }
    debug_assert_eq!(chain.len(), d);
    Ok(chain)
}

/// Littlewood–Richardson coefficient c^u_{λ,μ}, counted as the number of
/// pairs (T, U) of semistandard tableaux of shapes λ and μ whose plactic
/// product T·U is the standard tableau of shape u.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, u: &Partition) -> u64 {
    if lambda.size() + mu.size() != u.size() {
        return 0;
    }
    let r = u.num_rows();
    let target = Tableau::standard(u);
    let target_content = content_vector(&target, r).expect("standard tableau entries are in range");
    let ts = enumerate_tableaux(lambda, r);
    let us = enumerate_tableaux(mu, r);
    let us_content: Vec<Vec<usize>> = us.iter().map(|t| content_vector(t, r).unwrap()).collect();
    let mut count = 0;
    for t in &ts {
        let ct = content_vector(t, r).unwrap();
        for (s, cs) in us.iter().zip(&us_content) {
            if ct.iter().zip(cs).zip(&target_content).any(|((a, b), c)| a + b != *c) {
                continue;
            }
            if t.product(s) == target {
                count += 1;
            }
        }
    }
    count
}
