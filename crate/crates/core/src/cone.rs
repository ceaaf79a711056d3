//! Double description for pointed polyhedral cones `{x : a.x >= 0}`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

type Ray = Vec<BigInt>;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(v: Ray) -> Ray {
    let g = v.iter().fold(BigInt::zero(), |g, c| num_integer::Integer::gcd(&g, c));
    if g.is_zero() || g == BigInt::from(1) {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

/// Indices of `rows` forming a maximal linearly independent subset, greedily.
fn independent_rows(rows: &[Ray], n: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut current: Vec<Ray> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if chosen.len() == n {
            break;
        }
        current.push(r.clone());
        if IntMatrix::from_rows(current.clone()).rank() == current.len() {
            chosen.push(i);
        } else {
            current.pop();
        }
    }
    chosen
}

/// Adjugate of a square integer matrix (transpose of the cofactor matrix).
fn adjugate(a: &IntMatrix) -> IntMatrix {
    let n = a.nrows();
    let mut adj = IntMatrix::zeros(n, n);
    if n == 1 {
        adj[(0, 0)] = BigInt::from(1);
        return adj;
    }
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Ray> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| a[(r, c)].clone()).collect())
                .collect();
            let det = IntMatrix::from_rows(minor).det();
            adj[(j, i)] = if (i + j) % 2 == 0 { det } else { -det };
        }
    }
    adj
}

/// Primitive extreme rays of `{x in R^n : a.x >= 0 for all a in constraints}`.
///
/// Fails with [`Error::NotFullDimensional`] unless the constraints have rank
/// `n`, which is exactly the condition for the cone to be pointed.
pub fn extreme_rays(constraints: &[Ray], n: usize) -> Result<Vec<Ray>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let basis = independent_rows(constraints, n);
    if basis.len() < n {
        return Err(Error::NotFullDimensional);
    }
    let b = IntMatrix::from_rows(basis.iter().map(|&i| constraints[i].clone()).collect());
    let det = b.det();
    let adj = adjugate(&b);
    // columns of adj(B) * sign(det B) satisfy B x = |det| e_j
    let mut rays: Vec<Ray> = (0..n)
        .map(|j| {
            let col: Ray = (0..n).map(|i| adj[(i, j)].clone()).collect();
            primitive(if det.is_negative() { col.into_iter().map(|c| -c).collect() } else { col })
        })
        .collect();
    let mut processed: Vec<&Ray> = basis.iter().map(|&i| &constraints[i]).collect();

    for (idx, a) in constraints.iter().enumerate() {
        if basis.contains(&idx) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| dot(a, r)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            processed.push(a);
            continue;
        }
        let zero_sets: Vec<BTreeSet<usize>> = rays
            .iter()
            .map(|r| (0..processed.len()).filter(|&k| dot(processed[k], r).is_zero()).collect())
            .collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();

        let mut next: Vec<Ray> = (0..rays.len())
            .filter(|&i| !values[i].is_negative())
            .map(|i| rays[i].clone())
            .collect();
        for &p in &pos {
            for &q in &neg {
                let common: BTreeSet<usize> =
                    zero_sets[p].intersection(&zero_sets[q]).copied().collect();
                if common.len() + 2 < n {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .filter(|&r| r != p && r != q)
                    .all(|r| !common.is_subset(&zero_sets[r]));
                if !adjacent {
                    continue;
                }
                let sp = &values[p];
                let sq = -&values[q];
                let new: Ray = rays[q]
                    .iter()
                    .zip(&rays[p])
                    .map(|(x, y)| sp * x + &sq * y)
                    .collect();
                next.push(primitive(new));
            }
        }
        processed.push(a);
        rays = next;
    }
    rays.sort();
    rays.dedup();
    Ok(rays)
}
