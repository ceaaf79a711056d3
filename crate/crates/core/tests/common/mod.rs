#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use monoalg::derivations::lnd_degrees;
use monoalg::lattice::verify_det_index;
use monoalg::linalg::Q;
use monoalg::quotient::{character, QuotientAlgebra};
use monoalg::semigroup::{cone_hilbert_basis, dual_rays, rays_of_dual};
use monoalg::{AffineSemigroup, DualVector, IntMatrix, LatticeVector, MonomialIdeal, RationalDualVector};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub type Check = std::result::Result<(), String>;

pub fn v(a: &[i64]) -> LatticeVector {
    LatticeVector::from_i64s(a)
}

pub fn dv(a: &[i64]) -> DualVector {
    DualVector::from_i64s(a)
}

pub fn rp(a: &[i64]) -> RationalDualVector {
    RationalDualVector::from_i64s(a)
}

pub fn octant(n: usize) -> Arc<AffineSemigroup> {
    Arc::new(AffineSemigroup::first_octant(n))
}

pub fn veronese() -> Arc<AffineSemigroup> {
    Arc::new(AffineSemigroup::from_i64s(2, &[&[1, 0], &[1, 1], &[1, 2]]).unwrap())
}

pub fn square_cone() -> Arc<AffineSemigroup> {
    Arc::new(AffineSemigroup::from_i64s(3, &[&[1, 0, 0], &[0, 1, 0], &[-1, 0, 1], &[0, -1, 1]]).unwrap())
}

pub fn ideal(s: &Arc<AffineSemigroup>, gens: &[&[i64]]) -> MonomialIdeal {
    MonomialIdeal::from_i64s(s.clone(), gens).unwrap()
}

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Pointed cone from random vectors with positive last coordinate.
pub fn random_cone_generators<R: Rng>(rng: &mut R, n: usize) -> Vec<LatticeVector> {
    loop {
        let count = rng.gen_range(n..=n + 2);
        let gens: Vec<LatticeVector> = (0..count)
            .map(|_| {
                let mut c: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-3..=3)).collect();
                c.push(rng.gen_range(1..=3));
                v(&c)
            })
            .collect();
        if IntMatrix::from_lattice_rows(&gens).rank() == n {
            return gens;
        }
    }
}

/// The saturated semigroup of a random pointed cone.
pub fn random_saturated_semigroup<R: Rng>(rng: &mut R, n: usize) -> AffineSemigroup {
    let gens = random_cone_generators(rng, n);
    let dual = dual_rays(&gens).unwrap();
    let rays = rays_of_dual(&dual, n).unwrap();
    AffineSemigroup::build(n, cone_hilbert_basis(&rays, &dual, n)).unwrap()
}

pub fn random_octant_ideal<R: Rng>(rng: &mut R, n: usize, max: i64) -> MonomialIdeal {
    let count = rng.gen_range(1..=4);
    let gens: Vec<LatticeVector> =
        (0..count).map(|_| v(&(0..n).map(|_| rng.gen_range(0..=max)).collect::<Vec<_>>())).collect();
    MonomialIdeal::new(octant(n), gens).unwrap()
}

pub fn random_nonzero_rational<R: Rng>(rng: &mut R) -> Q {
    loop {
        let num: i64 = rng.gen_range(-9..=9);
        if num != 0 {
            return Q::new(BigInt::from(num), BigInt::from(rng.gen_range(1..=7i64)));
        }
    }
}

pub fn box_points(lo: &[i64], hi: &[i64]) -> Vec<LatticeVector> {
    let mut out = vec![Vec::new()];
    for (a, b) in lo.iter().zip(hi) {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (*a..=*b).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out.iter().map(|c| v(c)).collect()
}

/// Dual rays and primitive ray generators determine each other.
pub fn check_duality(gens: &[LatticeVector]) -> Check {
    let n = gens[0].rank();
    let dual = dual_rays(gens).map_err(|e| e.to_string())?;
    let rays = rays_of_dual(&dual, n).map_err(|e| e.to_string())?;
    let back = dual_rays(&rays).map_err(|e| e.to_string())?;
    ensure(back == dual, || format!("dual of rays {rays:?} is {back:?}, expected {dual:?}"))?;
    let again = rays_of_dual(&back, n).map_err(|e| e.to_string())?;
    ensure(again == rays, || format!("rays not recovered: {again:?} vs {rays:?}"))?;
    for g in gens {
        ensure(dual.iter().all(|r| !r.pair(g).is_negative()), || format!("{g} outside the dual cone"))?;
    }
    Ok(())
}

/// No Hilbert-basis element differs from another by a semigroup element,
/// and every ray generator is in the Hilbert basis.
pub fn check_hilbert_irreducible(s: &AffineSemigroup) -> Check {
    let h = s.hilbert_basis();
    for a in h {
        ensure(s.member(a) && !a.is_zero(), || format!("{a} is not a nonzero element"))?;
        for b in h {
            if a != b {
                ensure(!s.member(&(a - b)), || format!("{a} = {b} + ({})", a - b))?;
            }
        }
    }
    for r in s.ray_generators() {
        ensure(h.contains(r), || format!("ray generator {r} missing from the Hilbert basis"))?;
    }
    Ok(())
}

/// Points of `S` in a box are exactly the nonnegative combinations of `H`.
pub fn check_hilbert_generates(s: &AffineSemigroup, radius: i64) -> Check {
    let n = s.rank();
    let mut memo = HashMap::new();
    for p in box_points(&vec![-radius; n], &vec![radius; n]) {
        let combo = h_combination(s, &p, &mut memo);
        ensure(s.member(&p) == combo, || format!("membership disagrees at {p}"))?;
    }
    Ok(())
}

fn h_combination(s: &AffineSemigroup, p: &LatticeVector, memo: &mut HashMap<LatticeVector, bool>) -> bool {
    if p.is_zero() {
        return true;
    }
    if !s.degree(p).is_positive() {
        return false;
    }
    if let Some(&known) = memo.get(p) {
        return known;
    }
    let found = s.hilbert_basis().iter().any(|h| h_combination(s, &(p - h), memo));
    memo.insert(p.clone(), found);
    found
}

/// `supp(I)` against the definition `∃ a: m - a ∈ S`, over the box `[lo, hi]`.
pub fn check_supp_box(ideal: &MonomialIdeal, lo: i64, hi: i64) -> Check {
    let s = ideal.semigroup();
    let n = s.rank();
    for m in box_points(&vec![lo; n], &vec![hi; n]) {
        let brute = s.member(&m) && ideal.generators().iter().any(|a| s.member(&(&m - a)));
        ensure(ideal.in_supp(&m) == brute, || format!("supp disagrees at {m}"))?;
    }
    Ok(())
}

/// Every emitted `exp(∂)` is multiplicative on all basis pairs and fixes the unit.
pub fn check_exp_multiplicative(q: &QuotientAlgebra) -> Check {
    let degrees = lnd_degrees(q.ideal(), None).map_err(|e| e.to_string())?;
    let d = q.dim();
    for report in &degrees.degrees {
        let mut directions = report.representatives.clone();
        if directions.len() > 1 {
            let sum = directions.iter().skip(1).fold(directions[0].clone(), |acc, p| acc.add(p));
            directions.push(sum);
        }
        for p in &directions {
            let e = q.exp_matrix(&report.alpha, p).map_err(|e| e.to_string())?;
            let cols: Vec<Vec<Q>> = (0..d).map(|j| e.column(j)).collect();
            let mut unit = vec![Q::zero(); d];
            unit[q.unit()] = Q::one();
            ensure(cols[q.unit()] == unit, || format!("exp moves the unit at {}", report.alpha))?;
            for i in 0..d {
                for j in 0..d {
                    let lhs = match q.mult(i, j) {
                        Some(k) => cols[k].clone(),
                        None => vec![Q::zero(); d],
                    };
                    ensure(lhs == q.product(&cols[i], &cols[j]), || {
                        format!("exp at {} with p={p} fails on pair ({i},{j})", report.alpha)
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// `t · exp(∂_{α,p}) · t^{-1} = exp(∂_{α, t(α) p})` for random tori.
pub fn check_torus_conjugation<R: Rng>(q: &QuotientAlgebra, samples: usize, rng: &mut R) -> Check {
    let n = q.ideal().semigroup().rank();
    let degrees = lnd_degrees(q.ideal(), None).map_err(|e| e.to_string())?;
    for _ in 0..samples {
        let t: Vec<Q> = (0..n).map(|_| random_nonzero_rational(rng)).collect();
        for report in &degrees.degrees {
            for p in &report.representatives {
                let ok = q.verify_conjugation(&t, &report.alpha, p).map_err(|e| e.to_string())?;
                ensure(ok, || format!("conjugation fails at t={t:?}, α={}", report.alpha))?;
                ensure(!character(&t, &report.alpha).map_err(|e| e.to_string())?.is_zero(), || "zero character".into())?;
            }
        }
    }
    Ok(())
}

/// A random pair of independent bases: unimodular images scaled by random
/// diagonal factors.
pub fn random_independent_pair<R: Rng>(rng: &mut R, n: usize) -> (Vec<LatticeVector>, Vec<DualVector>) {
    let basis = |rng: &mut R| loop {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-4..=4)).collect()).collect();
        let m = IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect());
        if !m.det().is_zero() {
            return rows;
        }
    };
    let b = basis(rng);
    let b2 = basis(rng);
    (b.iter().map(|r| v(r)).collect(), b2.iter().map(|r| dv(r)).collect())
}

pub fn check_det_index<R: Rng>(rng: &mut R, pairs: usize) -> Check {
    for _ in 0..pairs {
        let n = rng.gen_range(1..=4);
        let (beta, beta_dual) = random_independent_pair(rng, n);
        let ok = verify_det_index(&beta, &beta_dual).map_err(|e| e.to_string())?;
        ensure(ok, || format!("det-index identity fails for {beta:?}, {beta_dual:?}"))?;
    }
    Ok(())
}
