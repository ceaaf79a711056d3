//! Homogeneous derivations `∂_{α,p}: x^m ↦ p(m) x^{m+α}` of `K[S]` and their
//! images on `K[S]/I`: Demazure roots, ideal roots, the three-case
//! classification of locally nilpotent derivations, triviality kernels and
//! non-liftability witnesses.
//!
//! Quantifiers over `S` in the classification and triviality tests are
//! evaluated on the Hilbert basis only.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::lattice::{DualVector, IntMatrix, LatticeVector, RationalDualVector};
use crate::linalg::{intersect_subspaces, orthogonal_complement, row_space_basis, span_dim, Q};
use crate::par;
use crate::semigroup::AffineSemigroup;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousDerivation {
    pub alpha: LatticeVector,
    pub p: RationalDualVector,
}

impl HomogeneousDerivation {
    pub fn new(alpha: LatticeVector, p: RationalDualVector) -> Self {
        Self { alpha, p }
    }

    pub fn from_i64s(alpha: &[i64], p: &[i64]) -> Self {
        Self::new(LatticeVector::from_i64s(alpha), RationalDualVector::from_i64s(p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivationKind {
    Inner,
    /// Degree is a Demazure root for the given dual ray.
    Outer(DualVector),
}

/// Demazure roots inside the box `|α_i| <= bound`, grouped by dual ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    pub bound: i64,
    pub groups: Vec<(DualVector, Vec<LatticeVector>)>,
}

impl RootSet {
    pub fn all(&self) -> Vec<LatticeVector> {
        let mut v: Vec<LatticeVector> = self.groups.iter().flat_map(|(_, r)| r.iter().cloned()).collect();
        v.sort();
        v
    }

    pub fn len(&self) -> usize {
        self.groups.iter().map(|(_, r)| r.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, alpha: &LatticeVector) -> bool {
        self.groups.iter().any(|(_, r)| r.contains(alpha))
    }

    pub fn group(&self, rho: &DualVector) -> &[LatticeVector] {
        self.groups.iter().find(|(r, _)| r == rho).map_or(&[], |(_, v)| v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LndCase {
    /// `α ∈ R(I)` and `p = λρ`.
    Root,
    /// `α ∈ S` and the ray `Z_{>=0} α` meets `supp(I)`.
    InnerEscaping,
    /// `α ∈ S`, the ray misses `supp(I)`; `p` must vanish on the stuck generators.
    InnerConstrained,
}

impl LndCase {
    pub fn tag(self) -> &'static str {
        match self {
            Self::Root => "i",
            Self::InnerEscaping => "ii",
            Self::InnerConstrained => "iii",
        }
    }
}

impl fmt::Display for LndCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub case: LndCase,
    pub is_lnd: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LndDegreeReport {
    pub alpha: LatticeVector,
    pub case: LndCase,
    /// `G(α)`, reduced row echelon.
    pub g_basis: Vec<RationalDualVector>,
    /// `G(α) ∩ K(α)`, reduced row echelon.
    pub k_basis: Vec<RationalDualVector>,
    /// Rows of `g_basis` completing `k_basis` to a basis of `G(α)`.
    pub representatives: Vec<RationalDualVector>,
    pub effective_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LndDegrees {
    pub degrees: Vec<LndDegreeReport>,
    /// Candidates were limited to a box because the complement is infinite.
    pub bounded: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessBranch {
    Simplicial,
    NonSimplicial,
}

/// A locally nilpotent derivation of `K[S]/I_H` sending `x^source` to
/// `x^target` and every other basis monomial to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonLiftableWitness {
    pub ideal: MonomialIdeal,
    pub source: LatticeVector,
    pub target: LatticeVector,
    pub alpha: LatticeVector,
    pub violated_constraints: Vec<(DualVector, BigInt)>,
    pub branch: WitnessBranch,
}

fn to_q(v: &DualVector) -> Vec<Q> {
    v.coords().iter().map(|c| Q::from_integer(c.clone())).collect()
}

fn lattice_to_q(v: &LatticeVector) -> Vec<Q> {
    v.coords().iter().map(|c| Q::from_integer(c.clone())).collect()
}

fn rdv(rows: Vec<Vec<Q>>) -> Vec<RationalDualVector> {
    rows.into_iter().map(RationalDualVector::new).collect()
}

/// The unique dual ray with `ρ(α) = -1`, if `α` is a Demazure root.
pub fn root_ray<'a>(s: &'a AffineSemigroup, alpha: &LatticeVector) -> Option<&'a DualVector> {
    let mut found = None;
    for rho in s.dual_rays() {
        let v = rho.pair(alpha);
        if v == BigInt::from(-1) {
            if found.is_some() {
                return None;
            }
            found = Some(rho);
        } else if v.is_negative() {
            return None;
        }
    }
    found
}

pub fn kind(s: &AffineSemigroup, alpha: &LatticeVector) -> Result<DerivationKind> {
    if alpha.rank() != s.rank() {
        return Err(Error::DimensionMismatch { expected: s.rank(), found: alpha.rank() });
    }
    if s.member(alpha) {
        return Ok(DerivationKind::Inner);
    }
    root_ray(s, alpha).map(|rho| DerivationKind::Outer(rho.clone())).ok_or_else(|| {
        Error::NotLiftable { alpha: alpha.clone(), reason: "neither in S nor a Demazure root".into() }
    })
}

fn box_points(n: usize, bound: i64) -> Vec<LatticeVector> {
    let side: Vec<i64> = (-bound..=bound).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                side.iter().map(move |&c| {
                    let mut p = prefix.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(|p| LatticeVector::from_i64s(&p)).collect()
}

fn group_roots(s: &AffineSemigroup, bound: i64, roots: Vec<(DualVector, LatticeVector)>) -> RootSet {
    let groups = s
        .dual_rays()
        .iter()
        .map(|rho| {
            let mut v: Vec<LatticeVector> =
                roots.iter().filter(|(r, _)| r == rho).map(|(_, a)| a.clone()).collect();
            v.sort();
            (rho.clone(), v)
        })
        .collect();
    RootSet { bound, groups }
}

pub fn demazure_roots(s: &AffineSemigroup, bound: i64) -> RootSet {
    let pts = box_points(s.rank(), bound);
    let roots = par::filter_map(&pts, |a| root_ray(s, a).map(|rho| (rho.clone(), a.clone())));
    group_roots(s, bound, roots)
}

/// `a_i + α ∈ supp(I)` for every minimal generator `a_i` off `ρ^⊥`.
pub fn is_ideal_root(ideal: &MonomialIdeal, alpha: &LatticeVector, rho: &DualVector) -> bool {
    ideal
        .generators()
        .iter()
        .filter(|a| rho.pair(a).is_positive())
        .all(|a| ideal.in_supp(&(a + alpha)))
}

pub fn roots_of_ideal(ideal: &MonomialIdeal, bound: i64) -> RootSet {
    let s = ideal.semigroup();
    let pts = box_points(s.rank(), bound);
    let roots = par::filter_map(&pts, |a| {
        root_ray(s, a).filter(|rho| is_ideal_root(ideal, a, rho)).map(|rho| (rho.clone(), a.clone()))
    });
    group_roots(s, bound, roots)
}

/// Whether `(m + Z_{>=0} α) ∩ supp(I)` is nonempty, decided exactly by
/// solving for the admissible interval of `ℓ` per generator.
pub fn escapes(ideal: &MonomialIdeal, m: &LatticeVector, alpha: &LatticeVector) -> bool {
    let s = ideal.semigroup();
    'gens: for a in ideal.generators() {
        let mut lo = BigInt::zero();
        let mut hi: Option<BigInt> = None;
        for rho in s.dual_rays() {
            let c = rho.pair(m) - rho.pair(a);
            let r = rho.pair(alpha);
            if r.is_positive() {
                lo = lo.max(Integer::div_ceil(&-&c, &r));
            } else if r.is_zero() {
                if c.is_negative() {
                    continue 'gens;
                }
            } else {
                let h = Integer::div_floor(&c, &-&r);
                hi = Some(match hi {
                    Some(x) => x.min(h),
                    None => h,
                });
            }
        }
        if hi.is_none_or(|h| lo <= h) {
            return true;
        }
    }
    false
}

pub(crate) fn check_liftable(ideal: &MonomialIdeal, alpha: &LatticeVector, p: &RationalDualVector) -> Result<DerivationKind> {
    let s = ideal.semigroup();
    if p.rank() != s.rank() {
        return Err(Error::DimensionMismatch { expected: s.rank(), found: p.rank() });
    }
    let k = kind(s, alpha)?;
    if let DerivationKind::Outer(rho) = &k {
        if p.proportionality_to(rho).is_none() && !p.is_zero() {
            return Err(Error::NotLiftable {
                alpha: alpha.clone(),
                reason: format!("p must be proportional to the dual ray {rho}"),
            });
        }
        if !is_ideal_root(ideal, alpha, rho) && !p.is_zero() {
            return Err(Error::NotLiftable {
                alpha: alpha.clone(),
                reason: "the derivation does not preserve the ideal".into(),
            });
        }
    }
    Ok(k)
}

pub fn classify_lnd(ideal: &MonomialIdeal, alpha: &LatticeVector, p: &RationalDualVector) -> Result<Classification> {
    match check_liftable(ideal, alpha, p)? {
        DerivationKind::Outer(_) => Ok(Classification { case: LndCase::Root, is_lnd: true }),
        DerivationKind::Inner => {
            let zero = LatticeVector::zero(alpha.rank());
            if escapes(ideal, &zero, alpha) {
                return Ok(Classification { case: LndCase::InnerEscaping, is_lnd: true });
            }
            let is_lnd = ideal
                .semigroup()
                .hilbert_basis()
                .iter()
                .filter(|h| !p.pair(h).is_zero())
                .all(|h| escapes(ideal, h, alpha));
            Ok(Classification { case: LndCase::InnerConstrained, is_lnd })
        }
    }
}

/// Hilbert-basis elements `h` with `h + α ∉ supp(I)`; `K(α)` is their annihilator.
fn kernel_constraints<'a>(ideal: &'a MonomialIdeal, alpha: &LatticeVector) -> Vec<&'a LatticeVector> {
    ideal
        .semigroup()
        .hilbert_basis()
        .iter()
        .filter(|h| !ideal.in_supp(&(*h + alpha)))
        .collect()
}

pub fn is_trivial(ideal: &MonomialIdeal, alpha: &LatticeVector, p: &RationalDualVector) -> Result<bool> {
    check_liftable(ideal, alpha, p)?;
    Ok(kernel_constraints(ideal, alpha).iter().all(|h| p.pair(h).is_zero()))
}

/// `G(α)`, `K(α)` and the effective dimension for a single degree, or `None`
/// when `α` is neither in `S` nor an ideal root.
pub fn degree_report(ideal: &MonomialIdeal, alpha: &LatticeVector) -> Result<Option<LndDegreeReport>> {
    let s = ideal.semigroup();
    let n = s.rank();
    let (case, g) = match kind(s, alpha) {
        Err(Error::NotLiftable { .. }) => return Ok(None),
        Err(e) => return Err(e),
        Ok(DerivationKind::Outer(rho)) => {
            if !is_ideal_root(ideal, alpha, &rho) {
                return Ok(None);
            }
            (LndCase::Root, row_space_basis(&[to_q(&rho)], n))
        }
        Ok(DerivationKind::Inner) => {
            let zero = LatticeVector::zero(n);
            if escapes(ideal, &zero, alpha) {
                (LndCase::InnerEscaping, orthogonal_complement(&[], n))
            } else {
                let bad: Vec<Vec<Q>> = s
                    .hilbert_basis()
                    .iter()
                    .filter(|h| !escapes(ideal, h, alpha))
                    .map(lattice_to_q)
                    .collect();
                (LndCase::InnerConstrained, orthogonal_complement(&bad, n))
            }
        }
    };
    let constraints: Vec<Vec<Q>> = kernel_constraints(ideal, alpha).into_iter().map(lattice_to_q).collect();
    let k_full = orthogonal_complement(&constraints, n);
    let k = intersect_subspaces(&g, &k_full, n);
    let mut reps = Vec::new();
    let mut span = k.clone();
    for row in &g {
        span.push(row.clone());
        if span_dim(&span) == span.len() {
            reps.push(row.clone());
        } else {
            span.pop();
        }
    }
    let effective_dim = g.len() - k.len();
    debug_assert_eq!(effective_dim, reps.len());
    Ok(Some(LndDegreeReport {
        alpha: alpha.clone(),
        case,
        g_basis: rdv(g),
        k_basis: rdv(k),
        representatives: rdv(reps),
        effective_dim,
    }))
}

/// Degrees carrying a nonzero homogeneous LND on `K[S]/I`.
///
/// With cofinite support the candidates are the differences of complement
/// elements, which is exact; otherwise `bound` is required and candidates
/// are the box `|α_i| <= bound`.
pub fn lnd_degrees(ideal: &MonomialIdeal, bound: Option<i64>) -> Result<LndDegrees> {
    let (candidates, bounded) = if ideal.is_cofinite().is_cofinite() {
        let c = ideal.complement()?;
        let mut set = BTreeSet::new();
        for m in c.iter() {
            for m2 in c.iter() {
                if m != m2 {
                    set.insert(m - m2);
                }
            }
        }
        (set.into_iter().collect::<Vec<_>>(), false)
    } else {
        let b = bound.ok_or(Error::BoundRequired)?;
        (box_points(ideal.semigroup().rank(), b), true)
    };
    let reports = par::try_map(&candidates, |a| degree_report(ideal, a))?;
    let mut degrees: Vec<LndDegreeReport> =
        reports.into_iter().flatten().filter(|r| r.effective_dim > 0).collect();
    degrees.sort_by(|a, b| a.alpha.cmp(&b.alpha));
    Ok(LndDegrees { degrees, bounded })
}

/// `I_H`: generated by the pairwise sums of Hilbert-basis elements.
pub fn hilbert_ideal(s: &Arc<AffineSemigroup>) -> Result<MonomialIdeal> {
    let h = s.hilbert_basis();
    let mut gens = Vec::new();
    for i in 0..h.len() {
        for j in i..h.len() {
            gens.push(&h[i] + &h[j]);
        }
    }
    MonomialIdeal::new(s.clone(), gens)
}

pub fn non_liftable_witness(s: &Arc<AffineSemigroup>) -> Result<NonLiftableWitness> {
    if s.is_first_octant() {
        return Err(Error::EveryDerivationLifts);
    }
    let ideal = hilbert_ideal(s)?;
    let h = s.hilbert_basis();
    let found = if s.is_simplicial() { simplicial_witness(s) } else { None };
    let (source, target, branch) = match found.or_else(|| non_simplicial_witness(s)) {
        Some(w) => w,
        None => return Err(Error::Internal("no non-liftable witness found".into())),
    };
    debug_assert!(h.contains(&source) && h.contains(&target));
    let alpha = &target - &source;
    let violated_constraints = s
        .dual_rays()
        .iter()
        .map(|rho| (rho.clone(), rho.pair(&alpha)))
        .filter(|(_, v)| v.is_negative())
        .collect();
    Ok(NonLiftableWitness { ideal, source, target, alpha, violated_constraints, branch })
}

fn simplicial_witness(s: &AffineSemigroup) -> Option<(LatticeVector, LatticeVector, WitnessBranch)> {
    let two = BigInt::from(2);
    for mu1 in s.hilbert_basis() {
        let Some(rho) = s.dual_rays().iter().find(|rho| rho.pair(mu1) >= two) else {
            continue;
        };
        if let Some(mu2) = s.hilbert_basis().iter().find(|h| *h != mu1 && rho.pair(h).is_zero()) {
            return Some((mu1.clone(), mu2.clone(), WitnessBranch::Simplicial));
        }
    }
    None
}

fn non_simplicial_witness(s: &AffineSemigroup) -> Option<(LatticeVector, LatticeVector, WitnessBranch)> {
    let n = s.rank();
    let dual = s.dual_rays();
    for i in 0..dual.len() {
        for j in i + 1..dual.len() {
            let (r1, r2) = (&dual[i], &dual[j]);
            let common: Vec<LatticeVector> = s
                .ray_generators()
                .iter()
                .filter(|m| r1.pair(m).is_zero() && r2.pair(m).is_zero())
                .cloned()
                .collect();
            let common_rank = if common.is_empty() { 0 } else { IntMatrix::from_lattice_rows(&common).rank() };
            if common_rank + 2 != n {
                continue;
            }
            let Some(mu) = s
                .ray_generators()
                .iter()
                .find(|m| r1.pair(m).is_positive() && r2.pair(m).is_positive())
            else {
                continue;
            };
            let Some(target) = s
                .hilbert_basis()
                .iter()
                .find(|h| !h.is_zero() && r1.pair(h).is_zero() && r2.pair(h).is_zero())
            else {
                continue;
            };
            return Some((mu.clone(), target.clone(), WitnessBranch::NonSimplicial));
        }
    }
    None
}

/// Splits derivations into the inner (`α ∈ S`) and outer (`α` a root) parts.
pub fn inner_outer_split(
    s: &AffineSemigroup,
    derivations: &[HomogeneousDerivation],
) -> Result<(Vec<HomogeneousDerivation>, Vec<HomogeneousDerivation>)> {
    let mut inner = Vec::new();
    let mut outer = Vec::new();
    for d in derivations {
        match kind(s, &d.alpha)? {
            DerivationKind::Inner => inner.push(d.clone()),
            DerivationKind::Outer(rho) => {
                if !d.p.is_zero() && d.p.proportionality_to(&rho).is_none() {
                    return Err(Error::NotLiftable {
                        alpha: d.alpha.clone(),
                        reason: format!("p must be proportional to the dual ray {rho}"),
                    });
                }
                outer.push(d.clone());
            }
        }
    }
    Ok((inner, outer))
}
