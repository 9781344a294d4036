//! Exact feasibility of homogeneous strict systems `g·x > 0` by
//! Fourier–Motzkin elimination over the integers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

type Row = Vec<BigInt>;

fn normalize(mut row: Row) -> Row {
    let g = row.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in row.iter_mut() {
            *c /= &g;
        }
    }
    row
}

/// `true` iff some real `x` satisfies `Σ_j g[j]·x[j] > 0` for every row `g`.
///
/// All rows must share one length. An empty system is feasible.
pub(crate) fn strict_cone_feasible(rows: &[Vec<i64>]) -> bool {
    let Some(first) = rows.first() else {
        return true;
    };
    let dim = first.len();
    let mut system: BTreeSet<Row> = rows
        .iter()
        .map(|r| normalize(r.iter().map(|&c| BigInt::from(c)).collect()))
        .collect();
    for var in 0..dim {
        if system.iter().any(|r| r.iter().all(Zero::is_zero)) {
            return false;
        }
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), BTreeSet::new());
        for row in system {
            if row[var].is_positive() {
                pos.push(row);
            } else if row[var].is_negative() {
                neg.push(row);
            } else {
                rest.insert(row);
            }
        }
        // Positive combinations of strict inequalities stay strict.
        for p in &pos {
            for q in &neg {
                let cp = &p[var];
                let cq = -&q[var];
                let combined: Row = p.iter().zip(q).map(|(a, b)| a * &cq + b * cp).collect();
                rest.insert(normalize(combined));
            }
        }
        system = rest;
    }
    system.is_empty()
}
