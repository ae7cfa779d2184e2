//! Intersection theory on the chain `R_0, ..., R_m` over a boundary point.
//!
//! `R_0^2 = R_m^2 = -1`, interior `R_i^2 = -2`, neighbours meet once, and the
//! section `S` meets only `R_m`. Divisors always carry all `m + 1` coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::combinatorics::BoundaryType;
use crate::error::{Error, Result};
use crate::rational::{int, is_integer, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainModel {
    m: usize,
}

impl ChainModel {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("a chain needs m >= 1".into()));
        }
        Ok(Self { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `R_a . R_b`.
    pub fn entry(&self, a: usize, b: usize) -> i64 {
        if a == b {
            if a == 0 || a == self.m {
                -1
            } else {
                -2
            }
        } else if a.abs_diff(b) == 1 {
            1
        } else {
            0
        }
    }

    fn check(&self, d: &FibralDivisor) -> Result<()> {
        if d.coeffs.len() != self.m + 1 {
            return Err(Error::Domain(format!(
                "divisor has {} coefficients, chain has {}",
                d.coeffs.len(),
                self.m + 1
            )));
        }
        Ok(())
    }

    pub fn intersect(&self, d1: &FibralDivisor, d2: &FibralDivisor) -> Result<Rational> {
        self.check(d1)?;
        self.check(d2)?;
        let mut total = Rational::zero();
        for (i, x) in d1.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let lo = i.saturating_sub(1);
            let hi = (i + 1).min(self.m);
            for k in lo..=hi {
                total += x * &d2.coeffs[k] * int(self.entry(i, k));
            }
        }
        Ok(total)
    }

    pub fn self_intersection(&self, d: &FibralDivisor) -> Result<Rational> {
        self.intersect(d, d)
    }

    /// `theta_p . D = -e_0 - e_m` by adjunction.
    pub fn theta_dot(&self, d: &FibralDivisor) -> Result<Rational> {
        self.check(d)?;
        Ok(-(&d.coeffs[0] + &d.coeffs[self.m]))
    }

    /// `theta_p . D` through the representative `-2S + sum (m-i) R_i`.
    pub fn theta_dot_via_representative(&self, d: &FibralDivisor) -> Result<Rational> {
        self.check(d)?;
        let t = FibralDivisor::new((0..=self.m).map(|i| int((self.m - i) as i64)).collect());
        Ok(self.intersect(&t, d)? - int(2) * &d.coeffs[self.m])
    }

    /// Degrees `D . R_i` for every component.
    pub fn degrees(&self, d: &FibralDivisor) -> Result<Vec<Rational>> {
        (0..=self.m)
            .map(|i| self.intersect(d, &FibralDivisor::component(self.m, i)))
            .collect()
    }
}

/// A rational combination `sum e_i R_i` over a chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FibralDivisor {
    coeffs: Vec<Rational>,
}

impl FibralDivisor {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(m: usize) -> Self {
        Self::new(vec![Rational::zero(); m + 1])
    }

    /// `F = R_0 + ... + R_m`.
    pub fn full_fibre(m: usize) -> Self {
        Self::new(vec![Rational::one(); m + 1])
    }

    pub fn component(m: usize, i: usize) -> Self {
        let mut d = Self::zero(m);
        d.coeffs[i] = Rational::one();
        d
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn m(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn max_coeff(&self) -> Rational {
        self.coeffs.iter().max().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_coeff(&self) -> Rational {
        self.coeffs.iter().min().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(is_integer)
    }

    /// Subtracts `q F`, bringing the `R_m` coefficient to 0.
    pub fn normalized(&self) -> Self {
        let last = self.coeffs.last().cloned().unwrap_or_else(Rational::zero);
        Self::new(self.coeffs.iter().map(|c| c - &last).collect())
    }
}

impl Add for &FibralDivisor {
    type Output = FibralDivisor;
    fn add(self, rhs: Self) -> FibralDivisor {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "chain length mismatch");
        FibralDivisor::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &FibralDivisor {
    type Output = FibralDivisor;
    fn sub(self, rhs: Self) -> FibralDivisor {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "chain length mismatch");
        FibralDivisor::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &FibralDivisor {
    type Output = FibralDivisor;
    fn neg(self) -> FibralDivisor {
        FibralDivisor::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul<&FibralDivisor> for &Rational {
    type Output = FibralDivisor;
    fn mul(self, rhs: &FibralDivisor) -> FibralDivisor {
        rhs.scale(self)
    }
}

/// `(D_sh, F_D)`: `D_sh = D - (max e) F` and `F_D = (min e) F`.
pub fn shift_and_fibre_part(d: &FibralDivisor) -> (FibralDivisor, FibralDivisor) {
    let m = d.m();
    let shifted = d - &FibralDivisor::full_fibre(m).scale(&d.max_coeff());
    let fibre = FibralDivisor::full_fibre(m).scale(&d.min_coeff());
    (shifted, fibre)
}

/// The standard divisor `A = -sum alpha_i R_i` with `alpha_i = ((m-i)c - delta_i)/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardA {
    bt: BoundaryType,
    alpha: Vec<i64>,
}

impl StandardA {
    pub fn bt(&self) -> &BoundaryType {
        &self.bt
    }

    /// `alpha_0..alpha_m` (the coefficients of `-A`, with `alpha_m = 0`).
    pub fn alpha(&self) -> &[i64] {
        &self.alpha
    }

    pub fn divisor(&self) -> FibralDivisor {
        FibralDivisor::new(self.alpha.iter().map(|&a| int(-a)).collect())
    }

    pub fn chain(&self) -> ChainModel {
        ChainModel::new(self.bt.m() as usize).expect("m >= 1")
    }

    /// The expected degrees: `d-n-r` on `R_0`, `(delta_{i-1} - 2 delta_i + delta_{i+1})/2`
    /// inside, `r` on `R_m`.
    pub fn expected_degrees(&self) -> Vec<Rational> {
        let bt = &self.bt;
        let m = bt.m() as usize;
        let delta = bt.delta();
        (0..=m)
            .map(|i| {
                if i == 0 {
                    int(bt.d() - bt.n() - bt.r())
                } else if i == m {
                    int(bt.r())
                } else {
                    rat(delta[i - 1] - 2 * delta[i] + delta[i + 1], 2)
                }
            })
            .collect()
    }

    /// The coefficient of `F` in `F_A`: `-mc/2` when `c > 0`, else 0.
    pub fn fibre_part_coeff(&self) -> Rational {
        let bt = &self.bt;
        if bt.c() > 0 {
            rat(-bt.m() * bt.c(), 2)
        } else {
            Rational::zero()
        }
    }
}

pub fn a_standard(bt: &BoundaryType) -> Result<StandardA> {
    let m = bt.m();
    let delta = bt.delta();
    let mut alpha = Vec::with_capacity(m as usize + 1);
    for i in 0..m {
        let twice = (m - i) * bt.c() - delta[i as usize];
        if twice % 2 != 0 {
            return Err(Error::Invariant(format!(
                "alpha_{i} = {twice}/2 is not an integer for j={} mu={}",
                bt.j(),
                bt.mu()
            )));
        }
        alpha.push(twice / 2);
    }
    alpha.push(0);
    let a = StandardA { bt: bt.clone(), alpha };

    let chain = a.chain();
    let div = a.divisor();
    let degrees = chain.degrees(&div)?;
    if degrees != a.expected_degrees() {
        return Err(Error::Invariant(format!(
            "degrees of A on the chain for j={} mu={} are off",
            bt.j(),
            bt.mu()
        )));
    }
    let (_, f_a) = shift_and_fibre_part(&div);
    if f_a.coeff(0) != &a.fibre_part_coeff() {
        return Err(Error::Invariant(format!("F_A mismatch for j={} mu={}", bt.j(), bt.mu())));
    }
    Ok(a)
}

/// `W_E = sum delta_i R_i` and `W_E^2`, checked against `-sum (delta_i - delta_{i-1})^2`.
pub fn we_divisor(bt: &BoundaryType) -> Result<(FibralDivisor, Rational)> {
    let w = FibralDivisor::from_ints(bt.delta());
    let chain = ChainModel::new(bt.m() as usize)?;
    let by_matrix = chain.self_intersection(&w)?;
    let closed = int(-bt.profile().delta_jump_sq());
    if by_matrix != closed {
        return Err(Error::Invariant(format!(
            "W_E^2 by pairing {by_matrix} differs from closed form {closed} for {}",
            bt.mu()
        )));
    }
    Ok((w, closed))
}

/// Intersection numbers on the normal surface for the chain `T'_{nu,i}` over one part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSurfaceNumbers {
    /// `T'_{nu,i}^2 = -2 m_nu`.
    pub t_prime_sq: i64,
    /// `C_nu . T'_{nu,i}`, equal to `T'_{nu,i} . T'_{nu,i+1}`, both `m_nu`.
    pub c_dot_t_prime: i64,
    pub t_prime_dot_next: i64,
    /// `nu^* T'_{nu,i} . U = -d_{nu,i-1} + 2 d_{nu,i} - d_{nu,i+1}`.
    pub t_prime_dot_u: i64,
    /// `nu^* C_nu . U = 3(m_nu - 1) + 2 g(C_nu)`.
    pub c_dot_u: i64,
    /// `Z^2 = -m_nu sum (a_{i-1} - a_i)^2`.
    pub z_sq: Rational,
    /// `(pi_* Z)^2 = -sum (d_{i-1} a_{i-1} - d_i a_i)^2`.
    pub pushforward_sq: Rational,
    /// `pi_* Z . W = a_0 m_nu l - sum (d_{i-1} a_{i-1} - d_i a_i)(delta_{i-1} - delta_i)`.
    pub pushforward_dot_w: Rational,
}

/// `coeffs` are `a_{nu,0..m-1}`; `a_{nu,m} = 0`. `nu` is zero-based.
pub fn normal_surface_numbers(
    bt: &BoundaryType,
    nu: usize,
    i: usize,
    coeffs: &[Rational],
    genus_c: i64,
) -> Result<NormalSurfaceNumbers> {
    let m = bt.m() as usize;
    let parts = bt.mu().parts();
    if nu >= parts.len() {
        return Err(Error::Domain(format!("part index {nu} out of range for {}", bt.mu())));
    }
    if i == 0 || i >= m {
        return Err(Error::Domain(format!("chain index i={i} outside 1..={}", m as i64 - 1)));
    }
    if coeffs.len() != m {
        return Err(Error::Domain(format!("expected {m} coefficients, got {}", coeffs.len())));
    }
    if genus_c < 0 {
        return Err(Error::Domain(format!("genus {genus_c} is negative")));
    }
    let m_nu = parts[nu];
    let profile = bt.profile();
    let dn = |k: usize| profile.d_at(nu, k);
    let delta = bt.delta();
    let a = |k: usize| if k < m { coeffs[k].clone() } else { Rational::zero() };

    let mut z_sq = Rational::zero();
    let mut push_sq = Rational::zero();
    let mut push_w = a(0) * int(m_nu * bt.l());
    for k in 1..=m {
        let step = a(k - 1) - a(k);
        z_sq -= &step * &step;
        let weighted = a(k - 1) * int(dn(k - 1)) - a(k) * int(dn(k));
        push_sq -= &weighted * &weighted;
        push_w -= weighted * int(delta[k - 1] - delta[k]);
    }
    Ok(NormalSurfaceNumbers {
        t_prime_sq: -2 * m_nu,
        c_dot_t_prime: m_nu,
        t_prime_dot_next: m_nu,
        t_prime_dot_u: -dn(i - 1) + 2 * dn(i) - dn(i + 1),
        c_dot_u: 3 * (m_nu - 1) + 2 * genus_c,
        z_sq: z_sq * int(m_nu),
        pushforward_sq: push_sq,
        pushforward_dot_w: push_w,
    })
}
