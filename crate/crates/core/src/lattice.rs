//! Quadratic functionals on the chain lattice, their critical points, rounding,
//! and the two correction procedures.
//!
//! Correction 1 twists by a fibral `N` alone and maximizes
//! `f(N) = N.A + (d-1)/2 (N^2 - N.theta)`. Correction 2 also twists by an
//! effective `Z` upstairs (only when `mu` has a part equal to 1) and maximizes a
//! joint quadratic in `N` and `X = pi_* Z`.

pub mod search;

use num_traits::{Signed, Zero};

use crate::chain::{a_standard, ChainModel, FibralDivisor, StandardA};
use crate::combinatorics::BoundaryType;
use crate::error::{Error, Result};
use crate::rational::{ceil_i64, half, int, is_integer, rat, to_i64, Rational};
use search::{find_exceeding, QuadraticModel, SearchBox, SearchOutcome};

/// Upper bound on the number of rounding branches followed when exploring ties.
pub const MAX_TIE_BRANCHES: usize = 1 << 12;

/// An integral point near a rational critical point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundedPoint {
    /// `alpha_0..alpha_{m-1}`.
    pub alpha: Vec<i64>,
    /// `e_i = alpha_i - a_i`; `e_m = 0` is implicit.
    pub residuals: Vec<Rational>,
    /// `xi_0..xi_{m-1}` in the joint case.
    pub xi: Option<Vec<i64>>,
    /// `e'_i = xi_i - x_i` in the joint case.
    pub xi_residuals: Option<Vec<Rational>>,
    pub value: Rational,
    /// `sum_{i=1}^m (e_{i-1} - e_i)^2`.
    pub sum_sq: Rational,
    /// Number of rounding branches compared (1 without tie exploration).
    pub tie_branches: usize,
    /// Whether every compared branch reached the same value.
    pub ties_agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectionResult {
    pub bt: BoundaryType,
    /// Amount subtracted from the standard coefficient.
    pub delta: Rational,
    pub point: RoundedPoint,
    pub fmax: Rational,
    pub sum_sq: Rational,
}

fn chain_of(bt: &BoundaryType) -> ChainModel {
    ChainModel::new(bt.m() as usize).expect("m >= 1")
}

/// `sum_i alpha_i R_i` with a zero `R_m` coefficient.
fn lift(values: &[i64]) -> FibralDivisor {
    let mut coeffs: Vec<Rational> = values.iter().map(|&v| int(v)).collect();
    coeffs.push(Rational::zero());
    FibralDivisor::new(coeffs)
}

fn sum_sq(residuals: &[Rational]) -> Rational {
    let mut total = Rational::zero();
    for i in 1..=residuals.len() {
        let next = residuals.get(i).cloned().unwrap_or_else(Rational::zero);
        let step = &residuals[i - 1] - next;
        total += &step * &step;
    }
    total
}

fn f_raw(bt: &BoundaryType, a: &StandardA, n: &FibralDivisor) -> Result<Rational> {
    let chain = chain_of(bt);
    let lin = chain.intersect(n, &a.divisor())?;
    let sq = chain.self_intersection(n)? - chain.theta_dot(n)?;
    Ok(lin + rat(bt.d() - 1, 2) * sq)
}

/// `f(N) = N.A + (d-1)/2 (N^2 - N.theta)` after moving `N` by full fibres so its `R_m` coefficient is 0.
pub fn f_twist(bt: &BoundaryType, n: &FibralDivisor) -> Result<Rational> {
    let a = a_standard(bt)?;
    f_raw(bt, &a, &n.normalized())
}

/// `f(N)` on the divisor as given. Adding `qF` changes it by `(d-1)q`.
pub fn f_twist_raw(bt: &BoundaryType, n: &FibralDivisor) -> Result<Rational> {
    let a = a_standard(bt)?;
    f_raw(bt, &a, n)
}

/// `F_A - F_{A+(d-1)N} + f(N)` as a coefficient: the reduction obtained by twisting with `N`.
///
/// Unlike [`f_twist_raw`] this does not move when `N` changes by full fibres.
pub fn twist_difference(bt: &BoundaryType, n: &FibralDivisor) -> Result<Rational> {
    let a = a_standard(bt)?;
    let div = a.divisor();
    let twisted = &div + &n.scale(&int(bt.d() - 1));
    Ok(div.min_coeff() - twisted.min_coeff() + f_raw(bt, &a, n)?)
}

/// `a_i = ((m-i)a - delta_i) / (2(d-1))` for `i = 0..m-1`, where `a = d - 1 + c`.
pub fn critical_n(bt: &BoundaryType) -> Vec<Rational> {
    let (m, d, a) = (bt.m(), bt.d(), bt.a());
    let delta = bt.delta();
    (0..m).map(|i| rat((m - i) * a - delta[i as usize], 2 * (d - 1))).collect()
}

/// `m(c^2/(8(d-1)) + c/4 + (d-1)/8) + sum (delta_{i-1} - delta_i)^2 / (8(d-1))`.
pub fn fmax_n(bt: &BoundaryType) -> Rational {
    let (m, d, c) = (bt.m(), bt.d(), bt.c());
    int(m) * (rat(c * c, 8 * (d - 1)) + rat(c, 4) + rat(d - 1, 8))
        + rat(bt.profile().delta_jump_sq(), 8 * (d - 1))
}

/// Rounds `targets` from the last coordinate down with `|e_i - e_{i+1}| <= 1/2`, `e_m = 0`.
///
/// The default choice keeps `e_i` in `[e_{i+1} - 1/2, e_{i+1} + 1/2)`. With
/// `explore_ties`, a coordinate that can go either way is tried both ways and
/// the branch with the largest `objective` wins, earlier branches first on equal values.
pub fn round_chain(
    targets: &[Rational],
    explore_ties: bool,
    objective: impl Fn(&[i64]) -> Rational,
) -> RoundedPoint {
    let m = targets.len();
    let mut branches: Vec<(Vec<i64>, Vec<Rational>)> = Vec::new();
    let mut alpha = vec![0; m];
    let mut residuals = vec![Rational::zero(); m];
    round_from(targets, m, Rational::zero(), explore_ties, &mut alpha, &mut residuals, &mut branches);

    let mut best: Option<(usize, Rational)> = None;
    let mut agree = true;
    for (idx, (alpha, _)) in branches.iter().enumerate() {
        let value = objective(alpha);
        match &best {
            Some((_, b)) if &value <= b => {
                if &value != b {
                    agree = false;
                }
            }
            Some(_) => {
                agree = false;
                best = Some((idx, value));
            }
            None => best = Some((idx, value)),
        }
    }
    let (idx, value) = best.expect("at least one branch");
    let tie_branches = branches.len();
    let (alpha, residuals) = branches.swap_remove(idx);
    RoundedPoint {
        sum_sq: sum_sq(&residuals),
        alpha,
        residuals,
        xi: None,
        xi_residuals: None,
        value,
        tie_branches,
        ties_agree: agree,
    }
}

fn round_from(
    targets: &[Rational],
    i: usize,
    e_next: Rational,
    explore: bool,
    alpha: &mut Vec<i64>,
    residuals: &mut Vec<Rational>,
    out: &mut Vec<(Vec<i64>, Vec<Rational>)>,
) {
    if i == 0 {
        out.push((alpha.clone(), residuals.clone()));
        return;
    }
    let i = i - 1;
    let lo = &targets[i] + &e_next - half();
    let first = ceil_i64(&lo);
    let mut choices = vec![first];
    if explore && is_integer(&lo) && out.len() < MAX_TIE_BRANCHES {
        choices.push(first + 1);
    }
    for choice in choices {
        let e = int(choice) - &targets[i];
        alpha[i] = choice;
        residuals[i] = e.clone();
        round_from(targets, i, e, explore, alpha, residuals, out);
    }
}

/// Correction 1 with the default rounding.
pub fn correction_n(bt: &BoundaryType) -> Result<CorrectionResult> {
    correction_n_with(bt, false)
}

pub fn correction_n_with(bt: &BoundaryType, explore_ties: bool) -> Result<CorrectionResult> {
    let a = a_standard(bt)?;
    let d = bt.d();
    let m = bt.m() as usize;
    let objective = |alpha: &[i64]| f_raw(bt, &a, &lift(alpha)).expect("lengths match");
    let point = round_chain(&critical_n(bt), explore_ties, objective);
    let fmax = fmax_n(bt);
    let expected = &fmax - rat(d - 1, 2) * &point.sum_sq;
    if point.value != expected {
        return Err(Error::Invariant(format!(
            "f at the rounded point is {} but the critical expansion gives {expected}",
            point.value
        )));
    }

    let twisted = &a.divisor() + &lift(&point.alpha).scale(&int(d - 1));
    if twisted.coeffs().iter().any(Signed::is_negative) || !twisted.coeff(m).is_zero() {
        return Err(Error::Invariant(format!(
            "A+(d-1)N has a negative coefficient for j={} mu={}",
            bt.j(),
            bt.mu()
        )));
    }
    let delta = &point.value + a.fibre_part_coeff() - twisted.min_coeff();
    check_correction(bt, &delta, &point.sum_sq)?;
    Ok(CorrectionResult { bt: bt.clone(), delta, sum_sq: point.sum_sq.clone(), point, fmax })
}

fn check_correction(bt: &BoundaryType, delta: &Rational, sum_sq: &Rational) -> Result<()> {
    if delta.is_negative() {
        return Err(Error::Invariant(format!("negative correction {delta} for j={} mu={}", bt.j(), bt.mu())));
    }
    if rat(bt.m(), 4) < *sum_sq {
        return Err(Error::Invariant(format!("rounding error {sum_sq} exceeds m/4 for mu={}", bt.mu())));
    }
    Ok(())
}

/// The quadratic `alpha -> f(alpha)` as an explicit model.
pub fn twist_model(bt: &BoundaryType) -> Result<QuadraticModel> {
    let a = a_standard(bt)?;
    let m = bt.m() as usize;
    Ok(QuadraticModel::from_fn(m, |z| f_raw(bt, &a, &lift(z)).expect("lengths match")))
}

/// Searches the box of the given radius around the rounded point for a strictly better integer point.
pub fn integer_max_search(bt: &BoundaryType, radius: i64) -> Result<SearchOutcome> {
    let result = correction_n(bt)?;
    let model = twist_model(bt)?;
    if model.eval(&result.point.alpha) != result.point.value {
        return Err(Error::Invariant("quadratic model disagrees with f".into()));
    }
    find_exceeding(&model, &SearchBox::around(&result.point.alpha, radius.max(0)), &result.point.value)
}

/// True iff no integer `N` within `radius` of the rounded point has a larger `f`.
pub fn verify_integer_max(bt: &BoundaryType, radius: i64) -> Result<bool> {
    if radius <= 0 {
        return Ok(true);
    }
    Ok(integer_max_search(bt, radius)?.witness.is_none())
}

fn require_unit_part(bt: &BoundaryType) -> Result<()> {
    if bt.mu().has_unit_part() {
        Ok(())
    } else {
        Err(Error::NotApplicable(format!("{} has no part equal to 1", bt.mu())))
    }
}

/// `(x, g)` with `x_i = ((m-i)l - delta_i)/(2(d-2))` and `g_i = ((m-i)a - delta_i)/2`.
pub fn joint_critical(bt: &BoundaryType) -> Result<(Vec<Rational>, Vec<Rational>)> {
    require_unit_part(bt)?;
    let (m, d, a, l) = (bt.m(), bt.d(), bt.a(), bt.l());
    let delta = bt.delta();
    let x: Vec<Rational> = (0..m).map(|i| rat((m - i) * l - delta[i as usize], 2 * (d - 2))).collect();
    let g = (0..m).map(|i| rat((m - i) * a - delta[i as usize], 2)).collect();
    if x.iter().any(Signed::is_negative) {
        return Err(Error::Invariant(format!("negative x coordinate for j={} mu={}", bt.j(), bt.mu())));
    }
    Ok((x, g))
}

/// `W.D = l e_0 + j e_m + W_E.D`.
fn w_dot(bt: &BoundaryType, chain: &ChainModel, d: &FibralDivisor) -> Result<Rational> {
    let w_e = FibralDivisor::from_ints(bt.delta());
    let m = bt.m() as usize;
    Ok(int(bt.l()) * d.coeff(0) + int(bt.j()) * d.coeff(m) + chain.intersect(&w_e, d)?)
}

fn f_joint_with(bt: &BoundaryType, a: &StandardA, n: &FibralDivisor, x: &FibralDivisor) -> Result<Rational> {
    let d = bt.d();
    let chain = chain_of(bt);
    let g = &n.scale(&int(d - 1)) - x;
    let a_div = a.divisor();
    let g_part = chain.self_intersection(&g)? - int(d - 1) * chain.theta_dot(&g)?
        + int(2) * chain.intersect(&g, &a_div)?;
    let total = int(d - 2) * chain.self_intersection(x)? + w_dot(bt, &chain, x)? + g_part;
    Ok(total / int(2 * (d - 1)))
}

/// `f(Z, N) = ((d-2)X^2 + W.X + G.(G - (d-1)theta + 2A)) / (2(d-1))` with `G = (d-1)N - X`.
pub fn f_joint(bt: &BoundaryType, n: &FibralDivisor, x: &FibralDivisor) -> Result<Rational> {
    let a = a_standard(bt)?;
    f_joint_with(bt, &a, n, x)
}

/// `m/(8(d-1)(d-2)) (l^2 + (d-2)a^2) + sum (delta_{i-1} - delta_i)^2 / (8(d-2))`.
pub fn fmax_joint(bt: &BoundaryType) -> Rational {
    let (m, d, a, l) = (bt.m(), bt.d(), bt.a(), bt.l());
    rat(m, 8 * (d - 1) * (d - 2)) * int(l * l + (d - 2) * a * a)
        + rat(bt.profile().delta_jump_sq(), 8 * (d - 2))
}

/// `e'_i = e_i`, plus `1/2` when `m - i` is odd.
pub fn parity_shift(residuals: &[Rational]) -> Vec<Rational> {
    let m = residuals.len();
    residuals
        .iter()
        .enumerate()
        .map(|(i, e)| if (m - i) % 2 == 1 { e + half() } else { e.clone() })
        .collect()
}

fn steps(e: &[Rational]) -> Vec<Rational> {
    (1..=e.len())
        .map(|i| &e[i - 1] - e.get(i).cloned().unwrap_or_else(Rational::zero))
        .collect()
}

/// The error term before simplification:
/// `-(d-1)/2 sum t^2 + sum t s - 1/2 sum s^2` with `t_i = e_{i-1} - e_i`, `s_i = e'_{i-1} - e'_i`.
pub fn f_err_expanded(d: i64, e: &[Rational], e_prime: &[Rational]) -> Rational {
    let (t, s) = (steps(e), steps(e_prime));
    let mut total = Rational::zero();
    for (ti, si) in t.iter().zip(&s) {
        total += -rat(d - 1, 2) * ti * ti + ti * si - half() * si * si;
    }
    total
}

/// `-(d-2)/2 sum t^2 - 1/2 sum (t - s)^2`.
pub fn f_err_split(d: i64, e: &[Rational], e_prime: &[Rational]) -> Rational {
    let (t, s) = (steps(e), steps(e_prime));
    let mut total = Rational::zero();
    for (ti, si) in t.iter().zip(&s) {
        let gap = ti - si;
        total += -rat(d - 2, 2) * ti * ti - half() * &gap * &gap;
    }
    total
}

/// `-(d-2)/2 sum_sq - m/8`.
pub fn f_err_closed(d: i64, m: i64, sum_sq: &Rational) -> Rational {
    -rat(d - 2, 2) * sum_sq - rat(m, 8)
}

/// Rounds the joint critical point: `alpha_i = a_i + e_i`, `xi_i = x_i + e'_i` with `a_i = (g_i + x_i)/(d-1)`.
pub fn joint_round(bt: &BoundaryType, explore_ties: bool) -> Result<RoundedPoint> {
    let (x, g) = joint_critical(bt)?;
    let d = bt.d();
    let p = bt.params();
    if bt.a() - bt.l() != (d - 1) * (2 * (bt.q() - p.k() - 1) + 1) {
        return Err(Error::Invariant(format!("a-l is not an odd multiple of d-1 for j={} mu={}", bt.j(), bt.mu())));
    }
    let a = a_standard(bt)?;
    let targets: Vec<Rational> = g.iter().zip(&x).map(|(gi, xi)| (gi + xi) / int(d - 1)).collect();
    let xi_of = |alpha: &[i64]| -> Vec<Rational> {
        let e: Vec<Rational> = alpha.iter().zip(&targets).map(|(&al, t)| int(al) - t).collect();
        parity_shift(&e).iter().zip(&x).map(|(ep, xv)| xv + ep).collect()
    };
    let objective = |alpha: &[i64]| {
        let mut xs = xi_of(alpha);
        xs.push(Rational::zero());
        f_joint_with(bt, &a, &lift(alpha), &FibralDivisor::new(xs)).expect("lengths match")
    };
    let mut point = round_chain(&targets, explore_ties, objective);
    let xi_rat = xi_of(&point.alpha);
    let xi: Option<Vec<i64>> = xi_rat.iter().map(to_i64).collect();
    let Some(xi) = xi else {
        return Err(Error::Invariant(format!("xi is not integral for j={} mu={}", bt.j(), bt.mu())));
    };
    point.xi_residuals = Some(parity_shift(&point.residuals));
    point.xi = Some(xi);
    let expected = fmax_joint(bt) + f_err_closed(d, bt.m(), &point.sum_sq);
    if point.value != expected {
        return Err(Error::Invariant(format!(
            "joint f at the rounded point is {} but the expansion gives {expected}",
            point.value
        )));
    }
    Ok(point)
}

/// Correction 2 with the default rounding.
pub fn correction_ln(bt: &BoundaryType) -> Result<CorrectionResult> {
    correction_ln_with(bt, false)
}

pub fn correction_ln_with(bt: &BoundaryType, explore_ties: bool) -> Result<CorrectionResult> {
    let point = joint_round(bt, explore_ties)?;
    let a = a_standard(bt)?;
    let d = bt.d();
    let m = bt.m() as usize;
    let xi = point.xi.as_ref().expect("joint point carries xi");
    let g = &lift(&point.alpha).scale(&int(d - 1)) - &lift(xi);
    let a_plus_g = &a.divisor() + &g;
    if a_plus_g.coeffs().iter().any(Signed::is_negative) || !a_plus_g.coeff(m).is_zero() {
        return Err(Error::Invariant(format!("A+G has a negative coefficient for j={} mu={}", bt.j(), bt.mu())));
    }
    let delta = &point.value + a.fibre_part_coeff() - a_plus_g.min_coeff();
    check_correction(bt, &delta, &point.sum_sq)?;
    Ok(CorrectionResult { bt: bt.clone(), delta, sum_sq: point.sum_sq.clone(), point, fmax: fmax_joint(bt) })
}

/// The joint quadratic in `(alpha_0..alpha_{m-1}, xi_0..xi_{m-1})`.
pub fn joint_model(bt: &BoundaryType) -> Result<QuadraticModel> {
    require_unit_part(bt)?;
    let a = a_standard(bt)?;
    let m = bt.m() as usize;
    Ok(QuadraticModel::from_fn(2 * m, |z| {
        f_joint_with(bt, &a, &lift(&z[..m]), &lift(&z[m..])).expect("lengths match")
    }))
}

/// Searches for an integer `(alpha, xi)` with `xi >= 0` near the rounded point that beats it.
pub fn joint_max_search(bt: &BoundaryType, radius: i64) -> Result<SearchOutcome> {
    let point = joint_round(bt, false)?;
    let model = joint_model(bt)?;
    let xi = point.xi.as_ref().expect("joint point carries xi");
    let center: Vec<i64> = point.alpha.iter().chain(xi).copied().collect();
    if model.eval(&center) != point.value {
        return Err(Error::Invariant("joint quadratic model disagrees with f".into()));
    }
    let m = point.alpha.len();
    let mut bounds = SearchBox::around(&center, radius.max(0));
    for i in m..2 * m {
        bounds.clamp_below(i, 0);
    }
    find_exceeding(&model, &bounds, &point.value)
}

/// True iff no integer `(alpha, xi)` with `xi >= 0` within `radius` beats the rounded point.
pub fn verify_joint_max(bt: &BoundaryType, radius: i64) -> Result<bool> {
    if radius <= 0 {
        return Ok(true);
    }
    Ok(joint_max_search(bt, radius)?.witness.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{enumerate_boundary_types, make_boundary_type, HurwitzParams, Partition};
    use proptest::prelude::*;
    use search::scan_max;

    fn bt(d: i64, g: i64, j: i64, parts: &[i64]) -> BoundaryType {
        make_boundary_type(HurwitzParams::new(d, g).unwrap(), j, Partition::new(parts.to_vec()).unwrap())
            .unwrap()
    }

    fn rats(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    // d=3, mu=(3), j = 4 with g = 4 gives c = 0.
    fn three() -> BoundaryType {
        bt(3, 4, 4, &[3])
    }

    // d=4, mu=(4), j = 5 with g = 3 gives c = 1.
    fn four() -> BoundaryType {
        bt(4, 3, 5, &[4])
    }

    #[test]
    fn f_examples() {
        let b = three();
        assert_eq!(f_twist(&b, &FibralDivisor::zero(3)).unwrap(), int(0));
        // R_0 meets A = R_1 + R_2 once, and R_0^2 = R_0.theta = -1.
        assert_eq!(f_twist(&b, &FibralDivisor::component(3, 0)).unwrap(), int(1));
        for b in [three(), four(), bt(5, 4, 7, &[3, 2])] {
            let m = b.m() as usize;
            let theta_fibral = FibralDivisor::from_ints(&(0..=m as i64).map(|i| m as i64 - i).collect::<Vec<_>>());
            assert_eq!(f_twist(&b, &theta_fibral).unwrap(), rat(b.m() * b.c(), 2));
        }
    }

    #[test]
    fn critical_points() {
        assert_eq!(critical_n(&three()), rats(&[(3, 2), (1, 2), (0, 1)]));
        assert_eq!(critical_n(&four()), rats(&[(8, 3), (3, 2), (1, 1), (1, 6)]));
        let b = bt(5, 4, 6, &[1, 1, 1, 1, 1]);
        assert_eq!(critical_n(&b), vec![rat(b.a(), 8)]);
    }

    #[test]
    fn fmax_values() {
        assert_eq!(fmax_n(&three()), rat(5, 4));
        assert_eq!(fmax_n(&four()), rat(7, 2));
        assert_eq!(fmax_n(&bt(5, 4, 8, &[1, 1, 1, 1, 1])), rat(1, 2));
        for b in [three(), four()] {
            let mut crit = critical_n(&b);
            crit.push(Rational::zero());
            assert_eq!(f_twist(&b, &FibralDivisor::new(crit)).unwrap(), fmax_n(&b));
        }
    }

    #[test]
    fn rounding_examples() {
        let exact = round_chain(&rats(&[(2, 1), (-1, 1)]), true, |_| int(0));
        assert_eq!(exact.alpha, vec![2, -1]);
        assert_eq!(exact.sum_sq, int(0));
        assert!(exact.residuals.iter().all(Zero::is_zero));

        let b = three();
        let p = correction_n(&b).unwrap().point;
        assert_eq!(p.sum_sq, rat(1, 4));
        assert_eq!(p.residuals, rats(&[(-1, 2), (-1, 2), (0, 1)]));
        assert_eq!(p.alpha, vec![1, 0, 0]);
        let p = correction_n_with(&b, true).unwrap().point;
        assert_eq!(p.tie_branches, 2);
        assert!(p.ties_agree);
        assert_eq!(p.sum_sq, rat(1, 4));

        let b = four();
        let p = correction_n_with(&b, true).unwrap().point;
        assert_eq!(p.sum_sq, rat(1, 3));
    }

    #[test]
    fn rounding_respects_step_bound() {
        let targets = rats(&[(7, 3), (-5, 4), (1, 2), (9, 10), (-1, 2)]);
        for explore in [false, true] {
            let p = round_chain(&targets, explore, |a| int(-a.iter().map(|x| x * x).sum::<i64>()));
            let mut e = p.residuals.clone();
            e.push(Rational::zero());
            for w in e.windows(2) {
                assert!((&w[0] - &w[1]).abs() <= half());
            }
        }
    }

    #[test]
    fn table_one_samples() {
        assert_eq!(correction_n(&three()).unwrap().delta, int(1));
        // d=4, mu=(4), j=11 with g=6: j = 5 mod 6.
        assert_eq!(correction_n(&bt(4, 6, 11, &[4])).unwrap().delta, int(1));
        // d=5, mu=(5), j=8 with g=4: j = 0 mod 8.
        assert_eq!(correction_n(&bt(5, 4, 8, &[5])).unwrap().delta, int(2));
        assert_eq!(correction_n(&bt(5, 4, 6, &[1, 1, 1, 1, 1])).unwrap().delta, int(0));
    }

    #[test]
    fn integer_max_small_cases() {
        assert!(verify_integer_max(&three(), 3).unwrap());
        assert!(verify_integer_max(&bt(3, 2, 2, &[1, 1, 1]), 5).unwrap());
        assert!(verify_integer_max(&four(), 0).unwrap());
    }

    #[test]
    fn integer_max_matches_plain_scan() {
        for d in 3..=5 {
            let p = HurwitzParams::from_k(d, 2).unwrap();
            for b in enumerate_boundary_types(p).into_iter().filter(|b| b.m() <= 4) {
                let r = correction_n(&b).unwrap();
                let a = a_standard(&b).unwrap();
                let bounds = SearchBox::around(&r.point.alpha, 2);
                let (_, best) = scan_max(|z| f_raw(&b, &a, &lift(z)).unwrap(), &bounds).unwrap();
                assert_eq!(best, r.point.value, "d={d} j={} {}", b.j(), b.mu());
                assert!(verify_integer_max(&b, 2).unwrap());
            }
        }
    }

    #[test]
    fn perturbing_alpha_never_helps() {
        let b = four();
        let r = correction_n(&b).unwrap();
        for i in 0..r.point.alpha.len() {
            for s in [-1, 1] {
                let mut alpha = r.point.alpha.clone();
                alpha[i] += s;
                assert!(f_twist(&b, &lift(&alpha)).unwrap() <= r.point.value);
            }
        }
    }

    #[test]
    fn joint_examples() {
        // d=3, g=6, g2=3: j = 2(g - g2 + 1) = 8, l = 8 = 2(g2+1).
        let b = bt(3, 6, 8, &[1, 1, 1]);
        let (x, g) = joint_critical(&b).unwrap();
        assert_eq!(x, vec![int(4)]);
        assert_eq!(g, vec![rat(b.a(), 2)]);
        let p = joint_round(&b, false).unwrap();
        assert_eq!(b.c(), 0);
        assert_eq!(p.residuals, vec![rat(-1, 2)]);
        assert_eq!(p.xi, Some(vec![4]));
        assert_eq!(correction_ln(&b).unwrap().delta, int(4));

        // g2 = 2, g = 6: j = 10, c = -2.
        let b = bt(3, 6, 10, &[1, 1, 1]);
        assert_eq!(b.c(), -2);
        assert_eq!(joint_round(&b, false).unwrap().residuals, vec![rat(-1, 2)]);
        assert_eq!(correction_ln(&b).unwrap().delta, rat(9, 4) - rat(1, 4));

        assert!(matches!(joint_critical(&three()), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn joint_max_small_cases() {
        for g in [2, 4, 6, 8, 10] {
            let p = HurwitzParams::new(3, g).unwrap();
            for b in enumerate_boundary_types(p).into_iter().filter(|b| b.mu().n() == 3) {
                assert!(verify_joint_max(&b, 3).unwrap(), "g={g} j={}", b.j());
            }
        }
        assert!(verify_joint_max(&bt(3, 2, 2, &[1, 1, 1]), 0).unwrap());
    }

    #[test]
    fn joint_max_matches_plain_scan() {
        let b = bt(4, 3, 5, &[2, 1, 1]);
        let point = joint_round(&b, false).unwrap();
        let a = a_standard(&b).unwrap();
        let xi = point.xi.clone().unwrap();
        let center: Vec<i64> = point.alpha.iter().chain(&xi).copied().collect();
        let mut bounds = SearchBox::around(&center, 2);
        for i in 2..4 {
            bounds.clamp_below(i, 0);
        }
        let (_, best) = scan_max(|z| f_joint_with(&b, &a, &lift(&z[..2]), &lift(&z[2..])).unwrap(), &bounds).unwrap();
        assert_eq!(best, point.value);
    }

    #[test]
    fn twist_difference_is_fibre_invariant() {
        let b = four();
        let n = FibralDivisor::from_ints(&[2, 1, 1, 0, 0]);
        let moved = &n + &FibralDivisor::full_fibre(4).scale(&int(3));
        assert_eq!(twist_difference(&b, &n).unwrap(), twist_difference(&b, &moved).unwrap());
        assert_eq!(f_twist_raw(&b, &moved).unwrap() - f_twist_raw(&b, &n).unwrap(), int(9));
    }

    proptest! {
        #[test]
        fn f_twist_fibre_invariant(
            coeffs in proptest::collection::vec(-6i64..=6, 5),
            q in (-12i64..=12, 1i64..=4),
        ) {
            let b = four();
            let n = FibralDivisor::from_ints(&coeffs);
            let moved = &n + &FibralDivisor::full_fibre(4).scale(&rat(q.0, q.1));
            prop_assert_eq!(f_twist(&b, &n).unwrap(), f_twist(&b, &moved).unwrap());
        }

        #[test]
        fn f_err_forms_agree(
            d in 3i64..=9,
            raw in proptest::collection::vec((-8i64..=8, 1i64..=6), 1..=12),
        ) {
            let e: Vec<Rational> = raw.iter().map(|&(n, q)| rat(n, q)).collect();
            let ep = parity_shift(&e);
            let m = e.len() as i64;
            prop_assert_eq!(f_err_expanded(d, &e, &ep), f_err_split(d, &e, &ep));
            prop_assert_eq!(f_err_split(d, &e, &ep), f_err_closed(d, m, &sum_sq(&e)));
        }
    }
}
