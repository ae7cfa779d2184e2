//! Exact search for integer points of a concave quadratic that beat a target.
//!
//! The search fixes coordinates left to right. For a fixed prefix `x`, the
//! maximum over real completions `y` is
//! `phi_k(x) = c - g_y' P g_y / 4 + (g_x - Q_xy P g_y)' x + x'(Q_xx - Q_xy P Q_yx) x`
//! with `P = Q_yy^{-1}`, so a node is discarded as soon as `phi_k <= target`.
//! Each `phi_k` is scaled to integers once, and nodes are evaluated in `i128`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// `f(z) = constant + linear . z + z' quad z` with `quad` symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticModel {
    constant: Rational,
    linear: Vec<Rational>,
    quad: Vec<Vec<Rational>>,
}

impl QuadraticModel {
    pub fn new(constant: Rational, linear: Vec<Rational>, quad: Vec<Vec<Rational>>) -> Self {
        Self { constant, linear, quad }
    }

    /// Recovers the coefficients of a quadratic polynomial in `n` integer variables by polarization.
    pub fn from_fn(n: usize, f: impl Fn(&[i64]) -> Rational) -> Self {
        let unit = |entries: &[(usize, i64)]| {
            let mut z = vec![0; n];
            for &(i, v) in entries {
                z[i] += v;
            }
            z
        };
        let constant = f(&vec![0; n]);
        let two = int(2);
        let mut linear = Vec::with_capacity(n);
        let mut quad = vec![vec![Rational::zero(); n]; n];
        let mut plus = Vec::with_capacity(n);
        for i in 0..n {
            let up = f(&unit(&[(i, 1)]));
            let down = f(&unit(&[(i, -1)]));
            linear.push((&up - &down) / &two);
            quad[i][i] = (&up + &down) / &two - &constant;
            plus.push(up);
        }
        for i in 0..n {
            for j in i + 1..n {
                let both = f(&unit(&[(i, 1), (j, 1)]));
                let q = (both - &plus[i] - &plus[j] + &constant) / &two;
                quad[i][j] = q.clone();
                quad[j][i] = q;
            }
        }
        Self { constant, linear, quad }
    }

    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn linear(&self) -> &[Rational] {
        &self.linear
    }

    pub fn quad(&self) -> &[Vec<Rational>] {
        &self.quad
    }

    pub fn eval(&self, z: &[i64]) -> Rational {
        let zr: Vec<Rational> = z.iter().map(|&v| int(v)).collect();
        self.eval_rational(&zr)
    }

    pub fn eval_rational(&self, z: &[Rational]) -> Rational {
        let mut total = self.constant.clone();
        for (i, zi) in z.iter().enumerate() {
            total += &self.linear[i] * zi;
            for (j, zj) in z.iter().enumerate() {
                total += &self.quad[i][j] * zi * zj;
            }
        }
        total
    }

    /// True when `quad` is negative definite (all pivots of the elimination are negative).
    pub fn is_negative_definite(&self) -> bool {
        let n = self.dim();
        let mut a: Vec<Vec<Rational>> = self.quad.clone();
        for k in 0..n {
            if !a[k][k].is_negative() {
                return false;
            }
            for i in k + 1..n {
                let factor = &a[i][k] / &a[k][k];
                for j in k..n {
                    let sub = &factor * &a[k][j];
                    a[i][j] -= sub;
                }
            }
        }
        true
    }

    /// The real maximizer `-Q^{-1} g / 2`.
    pub fn critical_point(&self) -> Option<Vec<Rational>> {
        let p = invert(&self.quad)?;
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        Some(
            p.iter()
                .map(|row| -row.iter().zip(&self.linear).fold(Rational::zero(), |acc, (a, b)| acc + a * b) * &half)
                .collect(),
        )
    }
}

/// An integer box `lo <= z <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl SearchBox {
    pub fn around(center: &[i64], radius: i64) -> Self {
        Self {
            lo: center.iter().map(|c| c - radius).collect(),
            hi: center.iter().map(|c| c + radius).collect(),
        }
    }

    /// Raises the lower bound of coordinate `i` to at least `floor`.
    pub fn clamp_below(&mut self, i: usize, floor: i64) {
        self.lo[i] = self.lo[i].max(floor);
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(l, h)| l > h)
    }

    pub fn point_count(&self) -> u128 {
        if self.is_empty() {
            return 0;
        }
        self.lo.iter().zip(&self.hi).map(|(l, h)| (h - l + 1) as u128).product()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// A point with value strictly above the target, if one exists.
    pub witness: Option<Vec<i64>>,
    /// Nodes of the search tree that were evaluated.
    pub nodes: u64,
}

struct ScaledBound {
    constant: i128,
    linear: Vec<i128>,
    quad: Vec<Vec<i128>>,
    target: i128,
}

impl ScaledBound {
    fn exceeds(&self, x: &[i64]) -> Result<bool> {
        let mut total = self.constant;
        for (i, &xi) in x.iter().enumerate() {
            let xi = xi as i128;
            let mut row = self.linear[i];
            for (j, &xj) in x.iter().enumerate() {
                row = self.quad[i][j]
                    .checked_mul(xj as i128)
                    .and_then(|v| v.checked_add(row))
                    .ok_or(Error::Overflow)?;
            }
            total = row.checked_mul(xi).and_then(|v| v.checked_add(total)).ok_or(Error::Overflow)?;
        }
        Ok(total > self.target)
    }
}

fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = Rational::one() / &a[col][col];
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..2 * n {
                    let sub = &factor * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or(Error::Overflow)
}

fn scaled_bound(model: &QuadraticModel, k: usize, target: &Rational) -> Result<ScaledBound> {
    let n = model.dim();
    let q = &model.quad;
    let g = &model.linear;
    let (constant, linear, quad) = if k == n {
        (model.constant.clone(), g.clone(), q.clone())
    } else {
        let q_yy: Vec<Vec<Rational>> = (k..n).map(|i| q[i][k..n].to_vec()).collect();
        let p = invert(&q_yy).ok_or_else(|| Error::Invariant("singular quadratic form".into()))?;
        let g_y = &g[k..n];
        // p_g = P g_y, p_q[c] = P Q_y,c for each fixed coordinate c.
        let apply = |v: &dyn Fn(usize) -> Rational| -> Vec<Rational> {
            p.iter()
                .map(|row| row.iter().enumerate().fold(Rational::zero(), |acc, (t, a)| acc + a * v(k + t)))
                .collect()
        };
        let p_g = apply(&|i| g[i].clone());
        let quarter = Rational::new(BigInt::one(), BigInt::from(4));
        let dot = |u: &[Rational], w: &[Rational]| u.iter().zip(w).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
        let constant = &model.constant - dot(g_y, &p_g) * quarter;
        let p_q: Vec<Vec<Rational>> = (0..k).map(|c| apply(&|i| q[i][c].clone())).collect();
        let linear = (0..k)
            .map(|c| {
                let q_cy: Vec<Rational> = (k..n).map(|i| q[c][i].clone()).collect();
                &g[c] - dot(&q_cy, &p_g)
            })
            .collect();
        let quad = (0..k)
            .map(|a| {
                let q_ay: Vec<Rational> = (k..n).map(|i| q[a][i].clone()).collect();
                (0..k).map(|b| &q[a][b] - dot(&q_ay, &p_q[b])).collect()
            })
            .collect();
        (constant, linear, quad)
    };
    let mut denom = target.denom().clone();
    for x in std::iter::once(&constant).chain(&linear).chain(quad.iter().flatten()) {
        denom = denom.lcm(x.denom());
    }
    let scale = |x: &Rational| to_i128(&(x * Rational::from_integer(denom.clone())).to_integer());
    Ok(ScaledBound {
        constant: scale(&constant)?,
        linear: linear.iter().map(scale).collect::<Result<_>>()?,
        quad: quad.iter().map(|row| row.iter().map(scale).collect::<Result<_>>()).collect::<Result<_>>()?,
        target: scale(target)?,
    })
}

/// Looks for an integer point in `bounds` where `model` is strictly above `target`.
///
/// The model must be negative definite.
pub fn find_exceeding(model: &QuadraticModel, bounds: &SearchBox, target: &Rational) -> Result<SearchOutcome> {
    let n = model.dim();
    if bounds.dim() != n {
        return Err(Error::Domain(format!("box has {} coordinates, model has {n}", bounds.dim())));
    }
    if !model.is_negative_definite() {
        return Err(Error::Invariant("quadratic form is not negative definite".into()));
    }
    if bounds.is_empty() {
        return Ok(SearchOutcome { witness: None, nodes: 0 });
    }
    let levels: Vec<ScaledBound> = (0..=n).map(|k| scaled_bound(model, k, target)).collect::<Result<_>>()?;
    let mut nodes = 1;
    if !levels[0].exceeds(&[])? {
        return Ok(SearchOutcome { witness: None, nodes });
    }
    let mut prefix = Vec::with_capacity(n);
    let witness = descend(&levels, bounds, &mut prefix, &mut nodes)?;
    Ok(SearchOutcome { witness, nodes })
}

fn descend(levels: &[ScaledBound], bounds: &SearchBox, prefix: &mut Vec<i64>, nodes: &mut u64) -> Result<Option<Vec<i64>>> {
    let depth = prefix.len();
    if depth == bounds.dim() {
        return Ok(Some(prefix.clone()));
    }
    for v in bounds.lo[depth]..=bounds.hi[depth] {
        prefix.push(v);
        *nodes += 1;
        if levels[depth + 1].exceeds(prefix)? {
            if let Some(w) = descend(levels, bounds, prefix, nodes)? {
                return Ok(Some(w));
            }
        }
        prefix.pop();
    }
    Ok(None)
}

/// Plain odometer scan of the whole box; the reference the pruned search is tested against.
pub fn scan_exceeding(f: impl Fn(&[i64]) -> Rational, bounds: &SearchBox, target: &Rational) -> Option<Vec<i64>> {
    if bounds.is_empty() {
        return None;
    }
    let mut z = bounds.lo.clone();
    loop {
        if &f(&z) > target {
            return Some(z);
        }
        let mut i = 0;
        loop {
            if i == z.len() {
                return None;
            }
            if z[i] < bounds.hi[i] {
                z[i] += 1;
                break;
            }
            z[i] = bounds.lo[i];
            i += 1;
        }
    }
}

/// Largest value of `f` over the box, by plain scan.
pub fn scan_max(f: impl Fn(&[i64]) -> Rational, bounds: &SearchBox) -> Option<(Vec<i64>, Rational)> {
    if bounds.is_empty() {
        return None;
    }
    let mut z = bounds.lo.clone();
    let mut best: Option<(Vec<i64>, Rational)> = None;
    loop {
        let v = f(&z);
        if best.as_ref().is_none_or(|(_, b)| &v > b) {
            best = Some((z.clone(), v));
        }
        let mut i = 0;
        loop {
            if i == z.len() {
                return best;
            }
            if z[i] < bounds.hi[i] {
                z[i] += 1;
                break;
            }
            z[i] = bounds.lo[i];
            i += 1;
        }
    }
}
