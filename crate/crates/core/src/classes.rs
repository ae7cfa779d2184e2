//! Closed-form boundary coefficients of the extended Maroni classes.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;

use crate::combinatorics::{enumerate_boundary_types, make_boundary_type, BoundaryType, HurwitzParams, Partition};
use crate::error::{Error, Result};
use crate::lattice::{correction_ln, correction_n};
use crate::rational::{int, rat, Rational};
use crate::reference::{table_two_difference, TrigonalFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassVariant {
    St,
    Corr1,
    Corr2,
    Min,
}

impl ClassVariant {
    pub const ALL: [ClassVariant; 4] = [Self::St, Self::Corr1, Self::Corr2, Self::Min];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::St => "st",
            Self::Corr1 => "corr1",
            Self::Corr2 => "corr2",
            Self::Min => "min",
        }
    }
}

impl fmt::Display for ClassVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown variant {s:?}; expected st, corr1, corr2 or min")))
    }
}

/// Which formula produced a coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Standard,
    Corr1,
    /// Valid under the extra hypothesis that `T_0 -> R_0` is unramified of degree 1.
    Corr2Conditional,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Standard => "-",
            Self::Corr1 => "corr1",
            Self::Corr2Conditional => "corr2-conditional",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `(1/12)(d - sum 1/m_nu) + j(b-j)(d-2) / (8(b-1)(d-1))`, shared by every variant.
fn common_term(bt: &BoundaryType) -> Rational {
    let (d, b, j) = (bt.d(), bt.b(), bt.j());
    bt.mu().reciprocal_defect() / int(12) + rat(j * (b - j) * (d - 2), 8 * (b - 1) * (d - 1))
}

/// Coefficient of `S_{j,mu}` in the standard extended Maroni class.
pub fn sigma_st(bt: &BoundaryType) -> Rational {
    let (d, c) = (bt.d(), bt.c());
    int(bt.m()) * (rat(-c.abs(), 4) + rat(c * c, 8 * (d - 1)) + common_term(bt))
}

/// Coefficient of `S_{j,mu}` in the Hodge class.
pub fn lambda_coeff(bt: &BoundaryType) -> Rational {
    let (b, j) = (bt.b(), bt.j());
    int(bt.m()) * (rat(j * (b - j), 8 * (b - 1)) - bt.mu().reciprocal_defect() / int(12))
}

/// Coefficient of `S_{j,mu}` in the psi contribution.
pub fn psi_coeff(bt: &BoundaryType) -> Rational {
    let (b, j) = (bt.b(), bt.j());
    rat(bt.m() * j * (b - j), b - 1)
}

/// The coefficient after twisting by the best fibral `N`.
pub fn sigma_corr1(bt: &BoundaryType) -> Result<Rational> {
    let (d, m) = (bt.d(), bt.m());
    let sum_sq = correction_n(bt)?.sum_sq;
    Ok(int(m) * common_term(bt)
        - rat(bt.profile().delta_jump_sq(), 8 * (d - 1))
        - rat(d - 1, 2) * (rat(m, 4) - sum_sq))
}

/// The coefficient after the joint twist; only for `mu` with a part equal to 1.
pub fn sigma_corr2(bt: &BoundaryType) -> Result<Rational> {
    let (d, m, l) = (bt.d(), bt.m(), bt.l());
    let sum_sq = correction_ln(bt)?.sum_sq;
    Ok(int(m) * common_term(bt)
        - rat(bt.profile().delta_jump_sq(), 8 * (d - 2))
        - rat(m * l * l, 8 * (d - 1) * (d - 2))
        - rat(d - 2, 2) * (rat(m, 4) - sum_sq))
}

/// The smallest of the implemented coefficients; ties go to st, then corr1, then corr2.
pub fn sigma_min(bt: &BoundaryType) -> Result<(Rational, Provenance)> {
    let mut best = (sigma_st(bt), Provenance::Standard);
    let corr1 = sigma_corr1(bt)?;
    if corr1 < best.0 {
        best = (corr1, Provenance::Corr1);
    }
    match sigma_corr2(bt) {
        Ok(corr2) if corr2 < best.0 => best = (corr2, Provenance::Corr2Conditional),
        Ok(_) | Err(Error::NotApplicable(_)) => {}
        Err(e) => return Err(e),
    }
    Ok(best)
}

/// The coefficient for one variant, or `None` for corr2 on a type without a unit part.
pub fn coefficient(bt: &BoundaryType, variant: ClassVariant) -> Result<Option<(Rational, Provenance)>> {
    Ok(Some(match variant {
        ClassVariant::St => (sigma_st(bt), Provenance::Standard),
        ClassVariant::Corr1 => (sigma_corr1(bt)?, Provenance::Corr1),
        ClassVariant::Corr2 => match sigma_corr2(bt) {
            Ok(v) => (v, Provenance::Corr2Conditional),
            Err(Error::NotApplicable(_)) => return Ok(None),
            Err(e) => return Err(e),
        },
        ClassVariant::Min => sigma_min(bt)?,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub bt: BoundaryType,
    pub coefficient: Rational,
    pub variant: ClassVariant,
    pub provenance: Provenance,
}

/// Coefficients of one class over the canonical boundary types, ordered by `j` then `mu` reverse-lex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClassTable {
    pub params: HurwitzParams,
    pub variant: ClassVariant,
    pub rows: Vec<TableRow>,
}

impl DivisorClassTable {
    pub fn get(&self, j: i64, mu: &Partition) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.bt.j() == j && r.bt.mu() == mu)
    }
}

pub fn build_table(params: HurwitzParams, variant: ClassVariant) -> Result<DivisorClassTable> {
    let types = enumerate_boundary_types(params);
    let rows: Vec<Option<TableRow>> = types
        .into_par_iter()
        .map(|bt| {
            Ok(coefficient(&bt, variant)?.map(|(coefficient, provenance)| TableRow {
                bt,
                coefficient,
                variant,
                provenance,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(DivisorClassTable { params, variant, rows: rows.into_iter().flatten().collect() })
}

/// The coefficients of `Delta`, `E_2`, `E_3` on the partial compactification with `j = 2`.
pub fn patel_partial(params: HurwitzParams) -> (Rational, Rational, Rational) {
    let (d, k, b) = (params.d(), params.k(), params.b());
    (
        rat(-(k + 1) * (d - 2), 2 * (b - 1)),
        rat(2 * k + 1, 2 * (b - 1)),
        rat(-((d - 10) * (k + 1) + 4), 6 * (b - 1)),
    )
}

/// `(x + k - (y+1)/2) y d_1 - x(x-1)(d-1)/2 + (1 - g_1) y - x`, the twist gain on an
/// elliptic-tail type component without the `f_A - f_{A_1}` term.
pub fn elliptic_tail_gain(k: i64, d: i64, d1: i64, g1: i64, x: i64, y: i64) -> Result<Rational> {
    if y < 0 {
        return Err(Error::Domain(format!("y={y} must be non-negative")));
    }
    Ok((int(x + k) - rat(y + 1, 2)) * int(y * d1) - rat(x * (x - 1) * (d - 1), 2) + int((1 - g1) * y - x))
}

/// The gain for an elliptic tail (`g_1 = 1`, `y = k`, `x = 0`): `k(k+1)d_1/2 - 1`.
pub fn special_value(k: i64, d1: i64) -> Rational {
    rat(k * (k + 1) * d1, 2) - int(1)
}

/// One checked row of the trigonal comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigonalRow {
    pub family: TrigonalFamily,
    /// Label of the family parameter, e.g. `g1=3`.
    pub param: String,
    pub j: i64,
    pub mu: Partition,
    pub variant: ClassVariant,
    pub computed: Rational,
    pub expected: Rational,
}

impl TrigonalRow {
    pub fn pass(&self) -> bool {
        self.computed == self.expected
    }
}

/// `sigma_st = lambda/2` (even `g_1`) or `lambda/2 - 1/4` (odd `g_1`) on `Delta_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeRow {
    pub g1: i64,
    pub j: i64,
    pub sigma_st: Rational,
    pub expected: Rational,
}

impl HodgeRow {
    pub fn pass(&self) -> bool {
        self.sigma_st == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigonalReport {
    pub g: i64,
    pub rows: Vec<TrigonalRow>,
    pub hodge_rows: Vec<HodgeRow>,
    /// Families without an explicit boundary type to compare against.
    pub unchecked: Vec<TrigonalFamily>,
}

impl TrigonalReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(TrigonalRow::pass) && self.hodge_rows.iter().all(HodgeRow::pass)
    }
}

/// Compares the computed corrections for the trigonal boundary families with the reference differences.
pub fn dp_trigonal_check(g: i64) -> Result<TrigonalReport> {
    if g < 4 || g % 2 != 0 {
        return Err(Error::Domain(format!("the trigonal Maroni divisor needs even g >= 4, got g={g}")));
    }
    let params = HurwitzParams::new(3, g)?;
    let ones = Partition::ones(3)?;
    let triple = Partition::new(vec![3])?;
    let row = |family, param: String, j, mu: &Partition, variant, key| -> Result<TrigonalRow> {
        let bt = make_boundary_type(params, j, mu.clone())?;
        let computed = match variant {
            ClassVariant::Corr2 => sigma_st(&bt) - sigma_corr2(&bt)?,
            _ => sigma_st(&bt) - sigma_corr1(&bt)?,
        };
        Ok(TrigonalRow { family, param, j, mu: mu.clone(), variant, computed, expected: table_two_difference(family, key) })
    };

    let mut rows = vec![row(TrigonalFamily::Delta, String::new(), 2, &ones, ClassVariant::Corr1, 0)?];
    let mut hodge_rows = Vec::new();
    // g1 + g2 = g - 2; P_1 carries 2(g1+2) branch points.
    for g1 in 0..=g - 2 {
        let j = 2 * (g1 + 2);
        rows.push(row(TrigonalFamily::Delta1, format!("g1={g1}"), j, &ones, ClassVariant::Corr1, g1)?);
        let bt = make_boundary_type(params, j, ones.clone())?;
        let half_lambda = lambda_coeff(&bt) / int(2);
        let expected = if g1 % 2 == 0 { half_lambda } else { half_lambda - rat(1, 4) };
        hodge_rows.push(HodgeRow { g1, j, sigma_st: sigma_st(&bt), expected });
    }
    for g1 in 1..=g - 1 {
        rows.push(row(TrigonalFamily::Delta3, format!("g1={g1}"), 2 * g1 + 2, &triple, ClassVariant::Corr1, g1)?);
    }
    // g1 + g2 = g - 1 with j = 2(g - g2 + 1).
    for g2 in 0..=g - 1 {
        rows.push(row(TrigonalFamily::Delta4, format!("g2={g2}"), 2 * (g - g2 + 1), &ones, ClassVariant::Corr2, g2)?);
    }
    rows.push(row(TrigonalFamily::H, format!("g2={g}"), 2, &ones, ClassVariant::Corr2, g)?);

    Ok(TrigonalReport {
        g,
        rows,
        hodge_rows,
        unchecked: vec![TrigonalFamily::Delta2, TrigonalFamily::Delta5, TrigonalFamily::Delta6],
    })
}

/// `sigma_st - sigma_min` is never negative; exposed for reports.
pub fn min_gain(bt: &BoundaryType) -> Result<Rational> {
    let (v, _) = sigma_min(bt)?;
    let gain = sigma_st(bt) - v;
    debug_assert!(gain >= Rational::zero());
    Ok(gain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{correction_ln, correction_n};

    fn bt(d: i64, g: i64, j: i64, parts: &[i64]) -> BoundaryType {
        make_boundary_type(HurwitzParams::new(d, g).unwrap(), j, Partition::new(parts.to_vec()).unwrap())
            .unwrap()
    }

    // Straight-line evaluation of the standard coefficient from the raw inputs.
    fn sigma_st_oracle(d: i64, g: i64, j: i64, parts: &[i64]) -> Rational {
        let b = 2 * g - 2 + 2 * d;
        let n = parts.len() as i64;
        let r = ((j + d - n) / 2) % (d - 1);
        let c = d - n - 2 * r;
        let m = parts.iter().fold(1, |acc, &p| num_integer::lcm(acc, p));
        let recip = parts.iter().fold(int(d), |acc, &p| acc - rat(1, p));
        int(m)
            * (rat(-c.abs(), 4) + rat(c * c, 8 * (d - 1)) + recip / int(12)
                + rat(j * (b - j) * (d - 2), 8 * (b - 1) * (d - 1)))
    }

    #[test]
    fn sigma_st_examples() {
        assert_eq!(sigma_st(&bt(3, 2, 4, &[1, 1, 1])), rat(1, 7));
        for k in 1..=6 {
            let g = 2 * k;
            let b = 2 * g + 4;
            assert_eq!(sigma_st(&bt(3, g, 2, &[1, 1, 1])), rat(-(k + 1), 2 * (b - 1)));
            assert_eq!(rat(-(k + 1), 2 * (b - 1)), rat(-(k + 1), 2 * (4 * k + 3)));
        }
        for (d, g, j, parts) in [(4, 3, 5, &[4][..]), (5, 8, 7, &[3, 2]), (6, 5, 6, &[2, 2, 1, 1])] {
            assert_eq!(sigma_st(&bt(d, g, j, parts)), sigma_st_oracle(d, g, j, parts));
        }
    }

    #[test]
    fn lambda_and_psi() {
        let b = bt(3, 4, 4, &[3]);
        assert_eq!(lambda_coeff(&b), int(3) * (rat(4, 11) - rat(2, 9)));
        let b = bt(3, 6, 10, &[1, 1, 1]);
        // g1 = 3: (g1+2)(g-g1)/(2(2g+3)).
        assert_eq!(lambda_coeff(&b), rat(5 * 3, 2 * 15));
        let p = HurwitzParams::new(4, 6).unwrap();
        let b2 = make_boundary_type(p, 2, Partition::new(vec![2, 2]).unwrap()).unwrap();
        assert_eq!(psi_coeff(&b2), rat(2 * 2 * (p.b() - 2), p.b() - 1));
        let half = make_boundary_type(p, p.b() / 2, Partition::new(vec![2, 1, 1]).unwrap()).unwrap();
        assert_eq!(psi_coeff(&half), rat(2 * p.b() * p.b(), 4 * (p.b() - 1)));
    }

    #[test]
    fn corrections_match_deltas() {
        for d in 3..=5 {
            for k in 1..=3 {
                let p = HurwitzParams::from_k(d, k).unwrap();
                for b in enumerate_boundary_types(p) {
                    assert_eq!(sigma_corr1(&b).unwrap(), sigma_st(&b) - correction_n(&b).unwrap().delta);
                    if b.mu().has_unit_part() {
                        assert_eq!(sigma_corr2(&b).unwrap(), sigma_st(&b) - correction_ln(&b).unwrap().delta);
                    } else {
                        assert!(matches!(sigma_corr2(&b), Err(Error::NotApplicable(_))));
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_symmetric_in_j() {
        let p = HurwitzParams::from_k(4, 2).unwrap();
        for b in enumerate_boundary_types(p) {
            let mirror = b.mirrored();
            assert_eq!(sigma_st(&b), sigma_st(&mirror));
            assert_eq!(sigma_corr1(&b).unwrap(), sigma_corr1(&mirror).unwrap());
            assert_eq!(lambda_coeff(&b), lambda_coeff(&mirror));
        }
    }

    #[test]
    fn table_rows_d3_g2() {
        let t = build_table(HurwitzParams::new(3, 2).unwrap(), ClassVariant::St).unwrap();
        assert_eq!(t.rows.len(), 5);
        let ones = Partition::ones(3).unwrap();
        assert_eq!(t.get(4, &ones).unwrap().coefficient, rat(1, 7));
        let corr2 = build_table(HurwitzParams::new(3, 2).unwrap(), ClassVariant::Corr2).unwrap();
        assert!(corr2.rows.iter().all(|r| r.bt.mu().has_unit_part()));
        assert_eq!(corr2.rows.len(), 3);
    }

    #[test]
    fn min_is_below_st() {
        let p = HurwitzParams::new(4, 3).unwrap();
        let st = build_table(p, ClassVariant::St).unwrap();
        let min = build_table(p, ClassVariant::Min).unwrap();
        assert_eq!(st.rows.len(), min.rows.len());
        for (a, b) in st.rows.iter().zip(&min.rows) {
            assert_eq!(a.bt, b.bt);
            assert!(b.coefficient <= a.coefficient);
        }
        let five = st.get(5, &Partition::new(vec![4]).unwrap()).unwrap();
        assert_eq!(five.bt.c(), 1);
        assert_eq!(five.coefficient, sigma_st_oracle(4, 3, 5, &[4]));
    }

    #[test]
    fn min_provenance() {
        // mu=(3), j = 2 mod 4 has no correction.
        let b = bt(3, 4, 6, &[3]);
        assert_eq!(sigma_min(&b).unwrap(), (sigma_st(&b), Provenance::Standard));
        let b = bt(3, 4, 4, &[3]);
        assert_eq!(sigma_min(&b).unwrap(), (sigma_st(&b) - int(1), Provenance::Corr1));
        let b = bt(3, 6, 8, &[1, 1, 1]);
        assert_eq!(sigma_min(&b).unwrap().1, Provenance::Corr2Conditional);
    }

    #[test]
    fn patel_display() {
        let p = HurwitzParams::from_k(3, 2).unwrap();
        let (_, _, e3) = patel_partial(p);
        assert_eq!(e3, rat(7 * 2 + 3, 6 * (p.b() - 1)));
        let p = HurwitzParams::from_k(10, 1).unwrap();
        assert_eq!(patel_partial(p).2, rat(-2, 3 * (p.b() - 1)));
        for d in 4..=6 {
            for k in 1..=4 {
                let p = HurwitzParams::from_k(d, k).unwrap();
                let (delta, e2, e3) = patel_partial(p);
                let mk = |parts: Vec<i64>| make_boundary_type(p, 2, Partition::new(parts).unwrap()).unwrap();
                let mut e2_parts = vec![2, 2];
                e2_parts.extend(vec![1; (d - 4) as usize]);
                let mut e3_parts = vec![3];
                e3_parts.extend(vec![1; (d - 3) as usize]);
                assert_eq!(sigma_st(&mk(vec![1; d as usize])), delta);
                assert_eq!(sigma_st(&mk(e2_parts)), e2);
                assert_eq!(sigma_st(&mk(e3_parts)), e3);
            }
        }
    }

    #[test]
    fn elliptic_tail() {
        assert_eq!(special_value(1, 1), int(0));
        assert_eq!(special_value(2, 1), int(2));
        assert_eq!(elliptic_tail_gain(3, 4, 2, 5, 0, 0).unwrap(), int(0));
        for k in 1..=5 {
            for d1 in 1..=4 {
                let poly = elliptic_tail_gain(k, 3, d1, 1, 0, k).unwrap();
                assert_eq!(poly, rat(k * (k - 1) * d1, 2));
                // f_A = 0 and f_{A_1} = 1 - k d_1.
                assert_eq!(poly - int(1 - k * d1), special_value(k, d1));
            }
        }
        assert!(elliptic_tail_gain(1, 3, 1, 1, 0, -1).is_err());
    }

    #[test]
    fn trigonal_rows() {
        let report = dp_trigonal_check(6).unwrap();
        assert!(report.all_pass(), "{:?}", report.rows.iter().filter(|r| !r.pass()).collect::<Vec<_>>());
        assert!(dp_trigonal_check(5).is_err());
        assert!(dp_trigonal_check(2).is_err());
    }

    #[test]
    fn variant_parse() {
        assert_eq!("corr2".parse::<ClassVariant>().unwrap(), ClassVariant::Corr2);
        assert!("best".parse::<ClassVariant>().is_err());
        assert_eq!(Provenance::Corr2Conditional.to_string(), "corr2-conditional");
    }
}
