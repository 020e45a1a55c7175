//! Finitely generated abelian groups and exact integer matrix reduction.
//!
//! Every classification answer in this crate is an [`AbelianGroup`] held in
//! invariant-factor canonical form, so structural equality is group
//! isomorphism. Cokernels of integer matrices are computed through a Smith
//! normal form with unimodular transforms; [`cokernel_hnf`] is a second,
//! algorithmically separate route through alternating Hermite forms.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// A finitely generated abelian group `Z^free_rank + Z_{t1} + ... + Z_{tk}`
/// with `t1 | t2 | ... | tk` and every `ti >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self { free_rank: 0, torsion: Vec::new() }
    }

    pub fn integers() -> Self {
        Self::free(1)
    }

    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, torsion: Vec::new() }
    }

    /// `Z/m`. By convention `m = 0` gives `Z` and `m = 1` the trivial group.
    pub fn cyclic(m: u64) -> Self {
        match m {
            0 => Self::integers(),
            _ => Self::new(0, [m]),
        }
    }

    /// Builds a group from a free rank and an arbitrary list of cyclic
    /// orders; the orders are renormalised to invariant factors.
    pub fn new<I>(free_rank: usize, cyclic_orders: I) -> Self
    where
        I: IntoIterator<Item = u64>,
    {
        let orders = cyclic_orders.into_iter().map(BigUint::from).collect();
        Self::from_big_orders(free_rank, orders)
    }

    pub(crate) fn from_big_orders(free_rank: usize, orders: Vec<BigUint>) -> Self {
        let mut free_rank = free_rank;
        let mut finite = Vec::with_capacity(orders.len());
        for m in orders {
            if m.is_zero() {
                free_rank += 1;
            } else {
                finite.push(m);
            }
        }
        Self { free_rank, torsion: invariant_factors(finite) }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let orders = self.torsion.iter().chain(&other.torsion).cloned().collect();
        Self::from_big_orders(self.free_rank + other.free_rank, orders)
    }

    /// `k` copies of `self`.
    pub fn multiple(&self, k: usize) -> Self {
        let mut orders = Vec::with_capacity(self.torsion.len() * k);
        for _ in 0..k {
            orders.extend(self.torsion.iter().cloned());
        }
        Self::from_big_orders(self.free_rank * k, orders)
    }

    /// `free_rank=<k> torsion=<m1,m2,...>`
    pub fn to_machine_string(&self) -> String {
        let torsion: Vec<String> = self.torsion.iter().map(|t| t.to_string()).collect();
        format!("free_rank={} torsion={}", self.free_rank, torsion.join(","))
    }
}

impl std::iter::Sum for AbelianGroup {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::trivial(), |acc, g| acc.direct_sum(&g))
    }
}

/// Reduces a list of positive cyclic orders to an ascending divisibility
/// chain with the units removed (`Z_a + Z_b = Z_gcd + Z_lcm`).
fn invariant_factors(mut v: Vec<BigUint>) -> Vec<BigUint> {
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let g = v[i].gcd(&v[j]);
            let l = v[i].lcm(&v[j]);
            v[i] = g;
            v[j] = l;
        }
    }
    v.retain(|m| !m.is_one());
    v
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let m = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|t| *t == m).count();
            if run == 1 {
                parts.push(format!("Z_{m}"));
            } else {
                parts.push(format!("Z_{m}^{run}"));
            }
            i += run;
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse abelian group from `{input}`: {reason}")]
pub struct ParseGroupError {
    pub input: String,
    pub reason: String,
}

impl FromStr for AbelianGroup {
    type Err = ParseGroupError;

    /// Accepts the canonical rendering (`0`, `Z^2 + Z_2^3`, ...) as well as
    /// the machine form produced by [`AbelianGroup::to_machine_string`].
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ParseGroupError { input: s.to_string(), reason: reason.to_string() };
        let t = s.trim();
        if t.starts_with("free_rank=") {
            return parse_machine(t).ok_or_else(|| err("malformed machine form"));
        }
        if t == "0" {
            return Ok(Self::trivial());
        }
        let mut free = 0usize;
        let mut orders = Vec::new();
        for term in t.split('+') {
            let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
            let (base, exp) = match term.split_once('^') {
                Some((b, e)) => {
                    let e: usize = e.parse().map_err(|_| err("bad exponent"))?;
                    (b.to_string(), e)
                }
                None => (term.clone(), 1),
            };
            if base == "Z" {
                free += exp;
            } else if let Some(m) = base.strip_prefix("Z_") {
                let m: BigUint = m.parse().map_err(|_| err("bad cyclic order"))?;
                if m < BigUint::from(2u8) {
                    return Err(err("cyclic order must be at least 2"));
                }
                orders.extend(std::iter::repeat_n(m, exp));
            } else if base == "0" && exp == 1 {
                continue;
            } else {
                return Err(err("unrecognised summand"));
            }
        }
        Ok(Self::from_big_orders(free, orders))
    }
}

fn parse_machine(s: &str) -> Option<AbelianGroup> {
    let mut it = s.split_whitespace();
    let free: usize = it.next()?.strip_prefix("free_rank=")?.parse().ok()?;
    let torsion = it.next()?.strip_prefix("torsion=")?;
    if it.next().is_some() {
        return None;
    }
    let mut orders = Vec::new();
    if !torsion.is_empty() {
        for m in torsion.split(',') {
            let m: BigUint = m.parse().ok()?;
            if m < BigUint::from(2u8) {
                return None;
            }
            orders.push(m);
        }
    }
    let g = AbelianGroup::from_big_orders(free, orders.clone());
    // the machine form must already be canonical
    (g.torsion == orders).then_some(g)
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`IntMatrix::from_rows`] but keeps the column count when there are no rows.
    pub fn from_rows_with_cols<R: AsRef<[i64]>>(rows: &[R], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged integer matrix");
            for (j, &x) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in integer matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Determinant of a square matrix (fraction-free elimination).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n.saturating_sub(1), n.saturating_sub(1))].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }

    /// Replaces rows (a, b) by (x*a + y*b, u*a + v*b).
    fn combine_rows(&mut self, a: usize, b: usize, [x, y, u, v]: [&BigInt; 4]) {
        for j in 0..self.cols {
            let ra = self[(a, j)].clone();
            let rb = self[(b, j)].clone();
            self[(a, j)] = x * &ra + y * &rb;
            self[(b, j)] = u * &ra + v * &rb;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of [`smith_normal_form`]: `left * m * right` is the
/// `rows x cols` matrix with `diagonal` on its main diagonal.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, x) in self.diagonal.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let n = rows.min(cols);

    'pivots: for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let v = &a[(i, j)];
                    if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'pivots };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row(i, t, &q);
                left.add_row(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col(j, t, &q);
                right.add_col(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // enforce the divisibility chain
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let diagonal = (0..n).map(|i| a[(i, i)].clone()).collect();
    SmithForm { diagonal, left, right }
}

/// `Z^rows / image(m)` for `m : Z^cols -> Z^rows`.
pub fn cokernel(m: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(m);
    let extra_free = m.rows - snf.diagonal.len();
    orders_to_group(extra_free, snf.diagonal)
}

fn orders_to_group(free: usize, diagonal: Vec<BigInt>) -> AbelianGroup {
    let orders = diagonal.into_iter().map(|d| d.abs().to_biguint().unwrap_or_default()).collect();
    AbelianGroup::from_big_orders(free, orders)
}

/// Cokernel through alternating row/column Hermite normal forms, with the
/// resulting diagonal renormalised by gcd/lcm pairing. Shares no code with
/// [`smith_normal_form`].
pub fn cokernel_hnf(m: &IntMatrix) -> AbelianGroup {
    let mut a = m.clone();
    let mut transposed = false;
    loop {
        a = hermite_rows(&a);
        if a.is_diagonal() {
            break;
        }
        a = a.transpose();
        transposed = !transposed;
    }
    if transposed {
        a = a.transpose();
    }
    let n = a.rows.min(a.cols);
    let diagonal: Vec<BigInt> = (0..n).map(|i| a[(i, i)].clone()).collect();
    orders_to_group(a.rows - n, diagonal)
}

/// Row-style Hermite normal form: echelon, positive pivots, entries above
/// each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        // fold every lower row into the pivot row by extended gcd steps
        for i in r + 1..a.rows {
            if a[(i, c)].is_zero() {
                continue;
            }
            let p = a[(r, c)].clone();
            let q = a[(i, c)].clone();
            let e = p.extended_gcd(&q);
            let (u, v) = (-(&q / &e.gcd), &p / &e.gcd);
            a.combine_rows(r, i, [&e.x, &e.y, &u, &v]);
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].sign() == BigSign::Minus {
            a.negate_row(r);
        }
        for i in 0..r {
            let q = -a[(i, c)].div_floor(&a[(r, c)]);
            if !q.is_zero() {
                a.add_row(i, r, &q);
            }
        }
        r += 1;
    }
    a
}

/// Convenience for small results: converts torsion orders to `u64`.
pub fn torsion_u64(g: &AbelianGroup) -> Option<Vec<u64>> {
    g.torsion.iter().map(|t| t.to_u64()).collect()
}
