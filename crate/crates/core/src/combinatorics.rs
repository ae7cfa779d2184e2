//! Partitions, gcd profiles and admissible boundary types.
//!
//! The boundary of the compactified Hurwitz space is a union of divisors
//! `S_{j,mu} = S_{b-j,mu}` indexed by a branch-point split `2 <= j <= b-2`
//! and the ramification partition `mu` of `d` over the node.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Degree and genus of the covers, with `g = (d-1)k` and `b = 2g - 2 + 2d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HurwitzParams {
    d: i64,
    g: i64,
    k: i64,
    b: i64,
}

impl HurwitzParams {
    pub fn new(d: i64, g: i64) -> Result<Self> {
        if d < 3 {
            return Err(Error::Domain(format!("degree d={d} must be at least 3")));
        }
        if g < d - 1 || g % (d - 1) != 0 {
            return Err(Error::Domain(format!(
                "genus g={g} must satisfy g=(d-1)k with k>=1 (d-1={})",
                d - 1
            )));
        }
        Ok(Self { d, g, k: g / (d - 1), b: 2 * g - 2 + 2 * d })
    }

    /// Parameters from `(d, k)` directly.
    pub fn from_k(d: i64, k: i64) -> Result<Self> {
        Self::new(d, (d - 1) * k)
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// Number of branch points.
    pub fn b(&self) -> i64 {
        self.b
    }
}

/// A partition `mu = (m_1 >= ... >= m_n)` of `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<i64>,
    lcm: i64,
}

impl Partition {
    /// Builds a partition from positive parts in any order.
    pub fn new(mut parts: Vec<i64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Domain("a partition needs at least one part".into()));
        }
        if let Some(p) = parts.iter().find(|&&p| p < 1) {
            return Err(Error::Domain(format!("partition part {p} is not positive")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let lcm = parts.iter().fold(1, |acc, &p| acc.lcm(&p));
        Ok(Self { parts, lcm })
    }

    /// `(1, ..., 1)` with `d` parts.
    pub fn ones(d: i64) -> Result<Self> {
        Self::new(vec![1; d.max(0) as usize])
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// `d`, the sum of the parts.
    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// `n(mu)`, the number of parts.
    pub fn n(&self) -> i64 {
        self.parts.len() as i64
    }

    /// `m(mu) = lcm(m_1, ..., m_n)`; the chain over the node has components `R_0..R_m`.
    pub fn m(&self) -> i64 {
        self.lcm
    }

    pub fn has_unit_part(&self) -> bool {
        self.parts.last() == Some(&1)
    }

    /// `d - sum 1/m_nu`.
    pub fn reciprocal_defect(&self) -> Rational {
        self.parts
            .iter()
            .fold(int(self.size()), |acc, &p| acc - Rational::new(1.into(), p.into()))
    }
}

/// Pipe-joined descending parts, e.g. `(3|2|1)`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// All partitions of `d` in reverse-lexicographic order, `(d)` first and `(1,...,1)` last.
pub fn enumerate_partitions(d: i64) -> Result<Vec<Partition>> {
    if d < 1 {
        return Err(Error::Domain(format!("cannot partition d={d}")));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    descend(d, d, &mut prefix, &mut out);
    Ok(out)
}

fn descend(rest: i64, max_part: i64, prefix: &mut Vec<i64>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition::new(prefix.clone()).expect("parts are positive"));
        return;
    }
    for part in (1..=rest.min(max_part)).rev() {
        prefix.push(part);
        descend(rest - part, part, prefix, out);
        prefix.pop();
    }
}

/// The table `d_{nu,i}` for `i = 0..=m` and the vector `delta_i = d - sum_nu d_{nu,i}`.
///
/// `d_{nu,i} = gcd(m_nu, i)` for `i >= 1` and `d_{nu,0} = m_nu`. Since every part
/// divides `m`, `d_{nu,m} = m_nu` as well, so `delta_0 = delta_m = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdProfile {
    table: Vec<Vec<i64>>,
    delta: Vec<i64>,
}

impl GcdProfile {
    /// `d_{nu,i}` with `nu` zero-based.
    pub fn d_at(&self, nu: usize, i: usize) -> i64 {
        self.table[nu][i]
    }

    pub fn table(&self) -> &[Vec<i64>] {
        &self.table
    }

    pub fn delta(&self) -> &[i64] {
        &self.delta
    }

    /// `sum_{i=1}^m (delta_i - delta_{i-1})^2`, which is `-W_E^2`.
    pub fn delta_jump_sq(&self) -> i64 {
        self.delta.windows(2).map(|w| (w[1] - w[0]).pow(2)).sum()
    }
}

pub fn gcd_profile(mu: &Partition) -> GcdProfile {
    let m = mu.m() as usize;
    let d = mu.size();
    let table: Vec<Vec<i64>> = mu
        .parts()
        .iter()
        .map(|&p| (0..=m).map(|i| if i == 0 { p } else { p.gcd(&(i as i64)) }).collect())
        .collect();
    let delta = (0..=m).map(|i| d - table.iter().map(|row| row[i]).sum::<i64>()).collect();
    GcdProfile { table, delta }
}

/// An admissible pair `(j, mu)` for fixed `(d, g)` with its derived integers.
///
/// `(j + d - n)/2 = q(d-1) + r` with `0 <= r < d-1`, `c = d - n - 2r`, and
/// `c'` is the same quantity computed from `l = b - j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryType {
    params: HurwitzParams,
    j: i64,
    mu: Partition,
    profile: GcdProfile,
    q: i64,
    r: i64,
    c: i64,
    q_prime: i64,
    r_prime: i64,
    c_prime: i64,
}

fn split_degree(j: i64, d: i64, n: i64) -> (i64, i64) {
    let half = (j + d - n) / 2;
    (half.div_euclid(d - 1), half.rem_euclid(d - 1))
}

impl BoundaryType {
    pub fn new(params: HurwitzParams, j: i64, mu: Partition) -> Result<Self> {
        make_boundary_type(params, j, mu)
    }

    pub fn params(&self) -> &HurwitzParams {
        &self.params
    }

    pub fn d(&self) -> i64 {
        self.params.d
    }

    pub fn b(&self) -> i64 {
        self.params.b
    }

    pub fn j(&self) -> i64 {
        self.j
    }

    /// `l = b - j`, the number of branch points on `R_0`.
    pub fn l(&self) -> i64 {
        self.params.b - self.j
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    pub fn n(&self) -> i64 {
        self.mu.n()
    }

    pub fn m(&self) -> i64 {
        self.mu.m()
    }

    pub fn profile(&self) -> &GcdProfile {
        &self.profile
    }

    pub fn delta(&self) -> &[i64] {
        self.profile.delta()
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn q_prime(&self) -> i64 {
        self.q_prime
    }

    pub fn r_prime(&self) -> i64 {
        self.r_prime
    }

    pub fn c_prime(&self) -> i64 {
        self.c_prime
    }

    /// `a = d - 1 + c`.
    pub fn a(&self) -> i64 {
        self.d() - 1 + self.c
    }

    /// The same divisor seen from the other side, `(b - j, mu)`.
    pub fn mirrored(&self) -> Self {
        make_boundary_type(self.params, self.l(), self.mu.clone())
            .expect("mirror of an admissible type is admissible")
    }

    /// `min(j, b-j)`, the canonical index used by tables.
    pub fn canonical_j(&self) -> i64 {
        self.j.min(self.l())
    }
}

pub fn make_boundary_type(params: HurwitzParams, j: i64, mu: Partition) -> Result<BoundaryType> {
    let (d, b) = (params.d, params.b);
    if mu.size() != d {
        return Err(Error::Domain(format!("{mu} is not a partition of d={d}")));
    }
    if j < 2 || j > b - 2 {
        return Err(Error::Domain(format!("j={j} outside 2..={}", b - 2)));
    }
    let n = mu.n();
    if (j + d - n) % 2 != 0 {
        return Err(Error::Parity { j, mu: mu.to_string(), sum: j + d - n });
    }
    let (q, r) = split_degree(j, d, n);
    let (q_prime, r_prime) = split_degree(b - j, d, n);
    let profile = gcd_profile(&mu);
    Ok(BoundaryType {
        params,
        j,
        mu,
        profile,
        q,
        r,
        c: d - n - 2 * r,
        q_prime,
        r_prime,
        c_prime: d - n - 2 * r_prime,
    })
}

/// Every admissible `(j, mu)` with `2 <= j <= b/2`, ordered by `j` then `mu` reverse-lex.
pub fn enumerate_boundary_types(params: HurwitzParams) -> Vec<BoundaryType> {
    let partitions = enumerate_partitions(params.d).expect("d >= 3");
    let mut out = Vec::new();
    for j in 2..=params.b / 2 {
        for mu in &partitions {
            if let Ok(bt) = make_boundary_type(params, j, mu.clone()) {
                out.push(bt);
            }
        }
    }
    out
}
