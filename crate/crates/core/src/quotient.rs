//! The finite-dimensional algebra `B = K[S]/I` on the basis `S \ supp(I)`.
//!
//! Matrices act on column vectors: column `j` of a matrix holds the image of
//! the `j`-th basis monomial.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::derivations::{check_liftable, lnd_degrees, LndCase};
use crate::error::{Error, Result};
use crate::ideal::{ComplementBasis, MonomialIdeal};
use crate::lattice::{IntMatrix, LatticeVector, RationalDualVector};
use crate::linalg::{RationalMatrix, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientAlgebra {
    ideal: MonomialIdeal,
    basis: ComplementBasis,
    mult: Vec<Option<usize>>,
    unit: usize,
    notice: Option<String>,
}

impl QuotientAlgebra {
    /// Builds the algebra over the given semigroup without fullification.
    pub fn new(ideal: MonomialIdeal) -> Result<Self> {
        Self::with_limit(ideal, usize::MAX)
    }

    pub fn with_limit(ideal: MonomialIdeal, limit: usize) -> Result<Self> {
        let basis = ideal.complement_limited(limit)?;
        if basis.is_empty() {
            return Err(Error::ZeroAlgebra);
        }
        let d = basis.len();
        let mut mult = vec![None; d * d];
        for i in 0..d {
            for j in i..d {
                let k = basis.index_of(&(basis.get(i) + basis.get(j)));
                mult[i * d + j] = k;
                mult[j * d + i] = k;
            }
        }
        let unit = basis
            .index_of(&LatticeVector::zero(ideal.semigroup().rank()))
            .ok_or_else(|| Error::Internal("complement misses the unit".into()))?;
        Ok(Self { ideal, basis, mult, unit, notice: None })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn basis(&self) -> &ComplementBasis {
        &self.basis
    }

    /// Index of the unit monomial `x^0`.
    pub fn unit(&self) -> usize {
        self.unit
    }

    /// Set when the ideal was replaced by its fullification.
    pub fn notice(&self) -> Option<&str> {
        self.notice.as_deref()
    }

    /// Index of `e_i * e_j`, or `None` when the product is zero.
    pub fn mult(&self, i: usize, j: usize) -> Option<usize> {
        self.mult[i * self.dim() + j]
    }

    /// Bilinear product of coordinate vectors.
    pub fn product(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let d = self.dim();
        let mut out = vec![Q::zero(); d];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                if let Some(k) = self.mult(i, j) {
                    out[k] += ui * vj;
                }
            }
        }
        out
    }

    pub fn derivation_matrix(&self, alpha: &LatticeVector, p: &RationalDualVector) -> Result<RationalMatrix> {
        check_liftable(&self.ideal, alpha, p)?;
        Ok(self.homogeneous_matrix(alpha, p))
    }

    /// The matrix of `x^m ↦ p(m) x^{m+α}` on the basis, with no liftability check.
    pub fn homogeneous_matrix(&self, alpha: &LatticeVector, p: &RationalDualVector) -> RationalMatrix {
        let d = self.dim();
        let mut m = RationalMatrix::zeros(d, d);
        for (j, b) in self.basis.iter().enumerate() {
            if let Some(i) = self.basis.index_of(&(b + alpha)) {
                m[(i, j)] = p.pair(b);
            }
        }
        m
    }

    pub fn exp_matrix(&self, alpha: &LatticeVector, p: &RationalDualVector) -> Result<RationalMatrix> {
        Ok(self.exp_parametric(alpha, p)?.specialize(&Q::one()))
    }

    /// `exp(s ∂_{α,p})` as a polynomial matrix in `s`.
    pub fn exp_parametric(&self, alpha: &LatticeVector, p: &RationalDualVector) -> Result<ParametricMatrix> {
        let d = self.derivation_matrix(alpha, p)?;
        ParametricMatrix::exp_of_nilpotent(&d)
    }

    pub fn torus_matrix(&self, t: &[Q]) -> Result<RationalMatrix> {
        let entries = self.basis.iter().map(|m| character(t, m)).collect::<Result<Vec<_>>>()?;
        Ok(RationalMatrix::diagonal(entries))
    }

    /// Invertible, fixes the unit, and multiplicative on every basis pair.
    pub fn is_algebra_automorphism(&self, a: &RationalMatrix) -> bool {
        let d = self.dim();
        if a.nrows() != d || a.ncols() != d || a.rank() != d {
            return false;
        }
        let mut unit = vec![Q::zero(); d];
        unit[self.unit] = Q::one();
        if a.column(self.unit) != unit {
            return false;
        }
        let images: Vec<Vec<Q>> = (0..d).map(|j| a.column(j)).collect();
        for i in 0..d {
            for j in i..d {
                let lhs = match self.mult(i, j) {
                    Some(k) => images[k].clone(),
                    None => vec![Q::zero(); d],
                };
                if lhs != self.product(&images[i], &images[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// `T E(p) T^{-1} = E(t(α) p)`.
    pub fn verify_conjugation(&self, t: &[Q], alpha: &LatticeVector, p: &RationalDualVector) -> Result<bool> {
        let torus = self.torus_matrix(t)?;
        let inv = torus.inverse().ok_or(Error::ZeroTorusComponent)?;
        let lhs = torus.mul(&self.exp_matrix(alpha, p)?).mul(&inv);
        let rhs = self.exp_matrix(alpha, &p.scale(&character(t, alpha)?))?;
        Ok(lhs == rhs)
    }

    /// Commutant of two generic torus elements is diagonal, and diagonal
    /// automorphisms are characters `a_m = Π a_{e_i}^{m_i}`.
    pub fn verify_centralizer_torus(&self) -> Result<bool> {
        let s = self.ideal.semigroup();
        if !s.is_first_octant() {
            return Err(Error::Precondition("the semigroup must be a first octant".into()));
        }
        if !self.ideal.is_full() {
            return Err(Error::Precondition("the ideal must be full".into()));
        }
        let n = s.rank();
        let primes = first_primes(2 * n);
        let t1: Vec<Q> = primes[..n].iter().map(|&p| Q::from_integer(p.into())).collect();
        let t2: Vec<Q> = primes[n..].iter().map(|&p| Q::from_integer(p.into())).collect();
        let w1: Vec<Q> = self.basis.iter().map(|m| character(&t1, m)).collect::<Result<_>>()?;
        let w2: Vec<Q> = self.basis.iter().map(|m| character(&t2, m)).collect::<Result<_>>()?;
        // (A T)_{ij} - (T A)_{ij} = a_ij (w_j - w_i): a_ij is free iff both differences vanish
        let d = self.dim();
        let free_off_diagonal =
            (0..d).any(|i| (0..d).any(|j| i != j && w1[i] == w1[j] && w2[i] == w2[j]));
        if free_off_diagonal {
            return Ok(false);
        }
        // express every a_m through the a_{e_i} using a_{m} = a_{m - e_i} a_{e_i}
        let units: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
        if units.iter().any(|e| !self.basis.contains(e)) {
            return Ok(false);
        }
        let mut exponent: HashMap<&LatticeVector, LatticeVector> = HashMap::new();
        for m in self.basis.iter() {
            if m.is_zero() {
                exponent.insert(m, LatticeVector::zero(n));
                continue;
            }
            let step = units.iter().find_map(|e| {
                let rest = m - e;
                self.basis.index_of(&rest).map(|_| (rest, e))
            });
            let Some((rest, e)) = step else {
                return Ok(false);
            };
            let Some(prev) = exponent.get(&rest) else {
                return Ok(false);
            };
            exponent.insert(m, prev + e);
        }
        // every multiplicative relation among the unknowns must be consistent
        for i in 0..d {
            for j in 0..d {
                if let Some(k) = self.mult(i, j) {
                    let (mi, mj, mk) = (self.basis.get(i), self.basis.get(j), self.basis.get(k));
                    if &exponent[mi] + &exponent[mj] != exponent[mk] {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(self.basis.iter().all(|m| &exponent[m] == m))
    }
}

/// Builds the quotient, replacing a non-full ideal by its fullification.
pub fn build_quotient(ideal: MonomialIdeal) -> Result<QuotientAlgebra> {
    build_quotient_limited(ideal, usize::MAX)
}

pub fn build_quotient_limited(ideal: MonomialIdeal, limit: usize) -> Result<QuotientAlgebra> {
    if let crate::ideal::CofinitenessCertificate::Infinite(ray) = ideal.is_cofinite() {
        return Err(Error::ComplementInfinite { ray });
    }
    if ideal.is_full() {
        return QuotientAlgebra::with_limit(ideal, limit);
    }
    let f = ideal.fullify()?;
    let mut q = QuotientAlgebra::with_limit(f.ideal, limit)?;
    q.notice = Some(format!(
        "ideal is not full; replaced by its fullification in rank {}",
        q.ideal.semigroup().rank()
    ));
    Ok(q)
}

/// `t(m) = Π t_i^{m_i}`, negative exponents allowed.
pub fn character(t: &[Q], m: &LatticeVector) -> Result<Q> {
    if t.len() != m.rank() {
        return Err(Error::DimensionMismatch { expected: m.rank(), found: t.len() });
    }
    if t.iter().any(Zero::is_zero) {
        return Err(Error::ZeroTorusComponent);
    }
    let mut out = Q::one();
    for (ti, e) in t.iter().zip(m.coords()) {
        let k: i32 = i32::try_from(e).map_err(|_| Error::Precondition("exponent too large".into()))?;
        out *= num_traits::pow::Pow::pow(ti, k);
    }
    Ok(out)
}

pub fn first_primes(k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut c = 2u64;
    while out.len() < k {
        if out.iter().take_while(|&&p| p * p <= c).all(|&p| !c.is_multiple_of(p)) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// Default sample torus point: the first `n` primes.
pub fn default_torus(n: usize) -> Vec<Q> {
    first_primes(n).into_iter().map(|p| Q::from_integer(p.into())).collect()
}

/// A square matrix whose entries are polynomials in one parameter `s`,
/// stored as the coefficient matrices of `s^0, s^1, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricMatrix {
    coefficients: Vec<RationalMatrix>,
}

impl ParametricMatrix {
    /// `exp(s D) = Σ s^i D^i / i!`; fails unless `D` is nilpotent.
    pub fn exp_of_nilpotent(d: &RationalMatrix) -> Result<Self> {
        if !d.is_nilpotent() {
            return Err(Error::NotLocallyNilpotent);
        }
        let n = d.nrows();
        let mut coefficients = vec![RationalMatrix::identity(n)];
        let mut power = RationalMatrix::identity(n);
        let mut factorial = Q::one();
        for i in 1..n.max(1) {
            power = power.mul(d);
            if power.is_zero() {
                break;
            }
            factorial *= Q::from_integer(BigInt::from(i));
            coefficients.push(power.scale(&factorial.recip()));
        }
        Ok(Self { coefficients })
    }

    pub fn dim(&self) -> usize {
        self.coefficients[0].nrows()
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[RationalMatrix] {
        &self.coefficients
    }

    /// Coefficients of entry `(i, j)`, lowest degree first, trailing zeros trimmed.
    pub fn entry(&self, i: usize, j: usize) -> Vec<Q> {
        let mut c: Vec<Q> = self.coefficients.iter().map(|m| m[(i, j)].clone()).collect();
        while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        c
    }

    pub fn specialize(&self, s: &Q) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.dim(), self.dim());
        let mut power = Q::one();
        for c in &self.coefficients {
            out = out.add(&c.scale(&power));
            power *= s;
        }
        out
    }
}

/// An automorphism of `B` induced by a lattice automorphism preserving `S`
/// and `supp(I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricAutomorphism {
    /// Acts on column vectors `m ↦ g m`.
    pub lattice_map: IntMatrix,
    /// Basis index `j` is sent to `permutation[j]`.
    pub permutation: Vec<usize>,
}

impl ToricAutomorphism {
    pub fn matrix(&self) -> RationalMatrix {
        let d = self.permutation.len();
        let mut m = RationalMatrix::zeros(d, d);
        for (j, &i) in self.permutation.iter().enumerate() {
            m[(i, j)] = Q::one();
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(j, &i)| i == j)
            && self.lattice_map == IntMatrix::identity(self.lattice_map.nrows())
    }
}

fn apply(g: &IntMatrix, m: &LatticeVector) -> LatticeVector {
    let n = g.nrows();
    LatticeVector::new(
        (0..n).map(|i| (0..n).map(|j| &g[(i, j)] * &m.coords()[j]).sum()).collect(),
    )
}

/// All lattice automorphisms permuting `S(1)`, fixing `H` and preserving
/// `supp(I)`, with their induced basis permutations; identity first.
pub fn toric_automorphisms(q: &QuotientAlgebra) -> Vec<ToricAutomorphism> {
    let s = q.ideal().semigroup();
    let n = s.rank();
    if n == 0 {
        return vec![ToricAutomorphism { lattice_map: IntMatrix::identity(0), permutation: vec![0] }];
    }
    let rays = s.ray_generators();
    let ray_set: HashSet<&LatticeVector> = rays.iter().collect();
    let hilbert: HashSet<&LatticeVector> = s.hilbert_basis().iter().collect();
    // a maximal independent subset of rays determines the map
    let mut frame: Vec<usize> = Vec::new();
    for i in 0..rays.len() {
        let mut trial: Vec<LatticeVector> = frame.iter().map(|&k| rays[k].clone()).collect();
        trial.push(rays[i].clone());
        if IntMatrix::from_lattice_rows(&trial).rank() == trial.len() {
            frame.push(i);
        }
        if frame.len() == n {
            break;
        }
    }
    let frame_cols = RationalMatrix::from(&IntMatrix::from_lattice_rows(
        &frame.iter().map(|&k| rays[k].clone()).collect::<Vec<_>>(),
    ))
    .transpose();
    let frame_inv = frame_cols.inverse().expect("independent rays");

    let mut out = Vec::new();
    let mut assignment: Vec<usize> = Vec::new();
    assign(rays.len(), n, &mut assignment, &mut |targets: &[usize]| {
        let target_cols = RationalMatrix::from(&IntMatrix::from_lattice_rows(
            &targets.iter().map(|&k| rays[k].clone()).collect::<Vec<_>>(),
        ))
        .transpose();
        let g = target_cols.mul(&frame_inv);
        if g.entries().iter().any(|c| !c.is_integer()) {
            return;
        }
        let g = IntMatrix::from_rows(g.to_rows().into_iter().map(|r| r.into_iter().map(|c| c.to_integer()).collect()).collect());
        if !g.det().abs().is_one() {
            return;
        }
        let images_ok = |set: &HashSet<&LatticeVector>, items: &[LatticeVector]| {
            items.iter().all(|m| set.contains(&apply(&g, m)))
        };
        if !images_ok(&ray_set, rays) || !images_ok(&hilbert, s.hilbert_basis()) {
            return;
        }
        let ginv = match RationalMatrix::from(&g).inverse() {
            Some(x) => IntMatrix::from_rows(x.to_rows().into_iter().map(|r| r.into_iter().map(|c| c.to_integer()).collect()).collect()),
            None => return,
        };
        let ideal = q.ideal();
        let preserves = ideal.generators().iter().all(|a| ideal.in_supp(&apply(&g, a)) && ideal.in_supp(&apply(&ginv, a)));
        if !preserves {
            return;
        }
        let permutation: Option<Vec<usize>> = q.basis().iter().map(|m| q.basis().index_of(&apply(&g, m))).collect();
        if let Some(permutation) = permutation {
            out.push(ToricAutomorphism { lattice_map: g, permutation });
        }
    });
    out.sort_by(|a, b| {
        b.is_identity().cmp(&a.is_identity()).then_with(|| a.lattice_map.to_rows().cmp(&b.lattice_map.to_rows()))
    });
    out.dedup();
    out
}

/// Visits every injective assignment of `k` distinct indices below `r`.
fn assign(r: usize, k: usize, current: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if current.len() == k {
        visit(current);
        return;
    }
    for i in 0..r {
        if !current.contains(&i) {
            current.push(i);
            assign(r, k, current, visit);
            current.pop();
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentFamily {
    pub alpha: LatticeVector,
    pub case: LndCase,
    pub direction: RationalDualVector,
    pub matrix: ParametricMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutGenerators {
    /// Weight of each basis element; equal to the element itself.
    pub torus_weights: Vec<LatticeVector>,
    pub unipotent_families: Vec<UnipotentFamily>,
    pub toric: Vec<ToricAutomorphism>,
    pub first_octant_certified: bool,
    /// Degrees `α` with `-α` also a degree; a toric automorphism may then lie
    /// in the identity component. Heuristic only.
    pub opposite_degrees: Vec<LatticeVector>,
    pub warnings: Vec<String>,
}

pub fn aut_generators(q: &QuotientAlgebra) -> Result<AutGenerators> {
    let ideal = q.ideal();
    let degrees = lnd_degrees(ideal, None)?;
    let mut unipotent_families = Vec::new();
    for report in &degrees.degrees {
        for direction in &report.representatives {
            unipotent_families.push(UnipotentFamily {
                alpha: report.alpha.clone(),
                case: report.case,
                direction: direction.clone(),
                matrix: q.exp_parametric(&report.alpha, direction)?,
            });
        }
    }
    let alphas: HashSet<&LatticeVector> = degrees.degrees.iter().map(|r| &r.alpha).collect();
    let opposite_degrees = degrees
        .degrees
        .iter()
        .map(|r| r.alpha.clone())
        .filter(|a| alphas.contains(&-a))
        .collect();
    let first_octant_certified = ideal.semigroup().is_first_octant();
    let mut warnings = Vec::new();
    if let Some(notice) = q.notice() {
        warnings.push(notice.to_string());
    }
    if !first_octant_certified {
        warnings.push(
            "first_octant_certified=false: the semigroup is not a first octant, so the torus \
             need not be maximal and the listed elements need not generate the automorphism group"
                .into(),
        );
    }
    Ok(AutGenerators {
        torus_weights: q.basis().elements().to_vec(),
        unipotent_families,
        toric: toric_automorphisms(q),
        first_octant_certified,
        opposite_degrees,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::linalg::{q, q_frac};
    use crate::semigroup::AffineSemigroup;

    fn v(a: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(a)
    }

    fn p(a: &[i64]) -> RationalDualVector {
        RationalDualVector::from_i64s(a)
    }

    fn algebra(rank: usize, gens: &[&[i64]]) -> QuotientAlgebra {
        let s = Arc::new(AffineSemigroup::first_octant(rank));
        build_quotient(MonomialIdeal::from_i64s(s, gens).unwrap()).unwrap()
    }

    #[test]
    fn truncated_polynomials() {
        let a = algebra(1, &[&[4]]);
        assert_eq!(a.dim(), 4);
        assert_eq!(a.mult(1, 2), Some(3));
        assert_eq!(a.mult(2, 2), None);
        assert_eq!(a.unit(), 0);
    }

    #[test]
    fn products_vanish_in_square_of_maximal_ideal() {
        let a = algebra(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        assert_eq!(a.dim(), 3);
        for i in 1..3 {
            for j in 1..3 {
                assert_eq!(a.mult(i, j), None);
            }
        }
    }

    #[test]
    fn derivation_matrices() {
        let a = algebra(1, &[&[4]]);
        let d = a.derivation_matrix(&v(&[1]), &p(&[1])).unwrap();
        let expected = RationalMatrix::from_i64_rows(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 2, 0]]);
        assert_eq!(d, expected);
        assert!(a.derivation_matrix(&v(&[1]), &p(&[0])).unwrap().is_zero());

        let b = algebra(2, &[&[2, 0], &[0, 2]]);
        let d = b.derivation_matrix(&v(&[1, 0]), &p(&[0, 1])).unwrap();
        let mut expected = RationalMatrix::zeros(4, 4);
        expected[(3, 1)] = q(1);
        assert_eq!(d, expected);
    }

    #[test]
    fn exponentials() {
        let a = algebra(1, &[&[4]]);
        let e = a.exp_parametric(&v(&[1]), &p(&[1])).unwrap();
        assert_eq!(e.entry(2, 1), vec![q(0), q(1)]);
        assert_eq!(e.entry(3, 1), vec![q(0), q(0), q(1)]);
        assert_eq!(e.entry(3, 2), vec![q(0), q(2)]);
        let e = a.exp_parametric(&v(&[2]), &p(&[1])).unwrap();
        assert_eq!(e.entry(3, 1), vec![q(0), q(1)]);

        let c = algebra(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        let e = c.exp_parametric(&v(&[1, -1]), &p(&[0, 1])).unwrap();
        assert_eq!(e.entry(2, 1), vec![q(0), q(1)]);
        assert!(c.is_algebra_automorphism(&e.specialize(&q_frac(3, 7))));
    }

    #[test]
    fn torus_matrices() {
        let a = algebra(1, &[&[4]]);
        let t = a.torus_matrix(&[q(2)]).unwrap();
        assert_eq!(t, RationalMatrix::diagonal(vec![q(1), q(2), q(4), q(8)]));
        assert!(a.torus_matrix(&[q(1)]).unwrap().is_identity());
        assert_eq!(a.torus_matrix(&[q(0)]), Err(Error::ZeroTorusComponent));
        let b = algebra(2, &[&[2, 0], &[0, 2]]);
        let t = b.torus_matrix(&[q(2), q(3)]).unwrap();
        assert_eq!(t, RationalMatrix::diagonal(vec![q(1), q(3), q(2), q(6)]));
        assert!(b.is_algebra_automorphism(&t));
    }

    #[test]
    fn toric_groups() {
        let b = algebra(2, &[&[2, 0], &[0, 2]]);
        let toric = toric_automorphisms(&b);
        assert_eq!(toric.len(), 2);
        assert!(toric[0].is_identity());
        assert_eq!(toric[1].lattice_map, IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]));
        assert!(b.is_algebra_automorphism(&toric[1].matrix()));
        assert_eq!(toric_automorphisms(&algebra(2, &[&[2, 0], &[1, 1], &[0, 2]])).len(), 2);
        assert_eq!(toric_automorphisms(&algebra(2, &[&[2, 0], &[0, 3]])).len(), 1);
    }

    #[test]
    fn non_automorphism_detected() {
        let a = algebra(1, &[&[4]]);
        let mut m = RationalMatrix::identity(4);
        m[(3, 2)] = q(1);
        assert!(!a.is_algebra_automorphism(&m));
    }

    #[test]
    fn conjugation_examples() {
        let a = algebra(1, &[&[4]]);
        assert!(a.verify_conjugation(&[q(2)], &v(&[1]), &p(&[1])).unwrap());
        assert!(a.verify_conjugation(&[q(1)], &v(&[1]), &p(&[1])).unwrap());
        let c = algebra(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        assert!(c.verify_conjugation(&[q(2), q(3)], &v(&[1, -1]), &p(&[0, 1])).unwrap());
        assert_eq!(character(&[q(2), q(3)], &v(&[1, -1])).unwrap(), q_frac(2, 3));
    }

    #[test]
    fn centralizers() {
        assert!(algebra(1, &[&[4]]).verify_centralizer_torus().unwrap());
        assert!(algebra(2, &[&[2, 0], &[0, 2]]).verify_centralizer_torus().unwrap());
        assert!(algebra(2, &[&[2, 0], &[1, 1], &[0, 2]]).verify_centralizer_torus().unwrap());
    }

    #[test]
    fn fullification_notice() {
        let a = algebra(2, &[&[1, 0], &[0, 2]]);
        assert!(a.notice().is_some());
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn generators_of_truncated_line() {
        let g = aut_generators(&algebra(1, &[&[4]])).unwrap();
        assert_eq!(g.torus_weights, vec![v(&[0]), v(&[1]), v(&[2]), v(&[3])]);
        assert_eq!(g.unipotent_families.len(), 2);
        assert_eq!(g.toric.len(), 1);
        assert!(g.first_octant_certified);
        assert!(g.unipotent_families.iter().all(|f| f.matrix.specialize(&q(0)).is_identity()));
    }
}
