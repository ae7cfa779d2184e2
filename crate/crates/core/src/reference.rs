//! Published reference values used as golden data.

use crate::rational::{rat, Rational};

/// A listed positive correction for `(j mod 2(d-1), mu)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableOneEntry {
    pub mu: &'static [i64],
    pub j_residue: i64,
    pub sigma: i64,
}

impl TableOneEntry {
    pub fn d(&self) -> i64 {
        self.mu.iter().sum()
    }
}

/// Every pair with `3 <= d <= 5` listed as having a positive correction, in reference order.
pub const TABLE_ONE: [TableOneEntry; 14] = [
    TableOneEntry { mu: &[3], j_residue: 0, sigma: 1 },
    TableOneEntry { mu: &[4], j_residue: 1, sigma: 1 },
    TableOneEntry { mu: &[4], j_residue: 5, sigma: 1 },
    TableOneEntry { mu: &[3, 1], j_residue: 0, sigma: 1 },
    TableOneEntry { mu: &[2, 2], j_residue: 0, sigma: 1 },
    TableOneEntry { mu: &[5], j_residue: 0, sigma: 2 },
    TableOneEntry { mu: &[5], j_residue: 2, sigma: 1 },
    TableOneEntry { mu: &[5], j_residue: 6, sigma: 1 },
    TableOneEntry { mu: &[4, 1], j_residue: 1, sigma: 1 },
    TableOneEntry { mu: &[4, 1], j_residue: 7, sigma: 1 },
    TableOneEntry { mu: &[3, 2], j_residue: 1, sigma: 1 },
    TableOneEntry { mu: &[3, 2], j_residue: 7, sigma: 1 },
    TableOneEntry { mu: &[3, 1, 1], j_residue: 0, sigma: 1 },
    TableOneEntry { mu: &[2, 2, 1], j_residue: 0, sigma: 1 },
];

/// The reference value for `(d, mu, j mod 2(d-1))`, or 0 when the pair is not listed.
pub fn table_one_sigma(mu: &[i64], j_residue: i64) -> i64 {
    TABLE_ONE
        .iter()
        .find(|e| e.mu == mu && e.j_residue == j_residue)
        .map_or(0, |e| e.sigma)
}

/// Boundary families of the trigonal Maroni divisor (`d = 3`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TrigonalFamily {
    Delta,
    Delta1,
    Delta2,
    Delta3,
    Delta4,
    Delta5,
    Delta6,
    H,
}

impl TrigonalFamily {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Delta => "Delta",
            Self::Delta1 => "Delta_1",
            Self::Delta2 => "Delta_2",
            Self::Delta3 => "Delta_3",
            Self::Delta4 => "Delta_4",
            Self::Delta5 => "Delta_5",
            Self::Delta6 => "Delta_6",
            Self::H => "H",
        }
    }
}

/// The reference difference between the standard class and the Maroni closure.
///
/// `param` is `g_1` for `Delta_3`, `g_2` for `Delta_4..Delta_6`, and `g` for `H`;
/// it is ignored for the rows with a constant entry.
pub fn table_two_difference(family: TrigonalFamily, param: i64) -> Rational {
    let p = param;
    let shifted_square = rat((p + 1) * (p + 1), 4);
    match family {
        TrigonalFamily::Delta | TrigonalFamily::Delta1 | TrigonalFamily::Delta2 => rat(0, 1),
        TrigonalFamily::Delta3 => rat(p.rem_euclid(2), 1),
        TrigonalFamily::Delta4 | TrigonalFamily::Delta6 => {
            if p % 2 == 0 {
                shifted_square - rat(1, 4)
            } else {
                shifted_square
            }
        }
        TrigonalFamily::Delta5 => rat(p * (p + 1), 2),
        TrigonalFamily::H => rat(p * (p + 2), 4),
    }
}
