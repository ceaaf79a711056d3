//! Affine semigroups `S` in `M = Z^n`: dualization, rays, Hilbert basis,
//! faces, complete flags and upper triangular pairs.
//!
//! Only saturated, pointed, minimally embedded semigroups are accepted by
//! [`AffineSemigroup::build`]; each violated condition yields a distinct
//! error carrying a diagnostic.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cone::extreme_rays;
use crate::error::{Error, Result};
use crate::lattice::{elementary_divisors, DualVector, IntMatrix, LatticeVector};
use crate::linalg::{RationalMatrix, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSemigroup {
    rank: usize,
    generators: Vec<LatticeVector>,
    dual_rays: Vec<DualVector>,
    ray_generators: Vec<LatticeVector>,
    hilbert_basis: Vec<LatticeVector>,
    grading: DualVector,
}

/// Primitive generators of the rays of the dual cone of `cone(generators)`,
/// in graded-lex order.
///
/// The input must span a full-dimensional cone; otherwise the dual cone has
/// a lineality space and no finite ray description.
pub fn dual_rays(generators: &[LatticeVector]) -> Result<Vec<DualVector>> {
    let n = generators.first().ok_or(Error::EmptyGeneratingSet)?.rank();
    let rows: Vec<Vec<BigInt>> = generators.iter().map(|g| g.coords().to_vec()).collect();
    let mut rays: Vec<DualVector> =
        extreme_rays(&rows, n)?.into_iter().map(DualVector::new).collect();
    rays.sort();
    Ok(rays)
}

/// Primitive ray generators of `{m : rho(m) >= 0}`, in graded-lex order.
pub fn rays_of_dual(dual: &[DualVector], n: usize) -> Result<Vec<LatticeVector>> {
    let rows: Vec<Vec<BigInt>> = dual.iter().map(|g| g.coords().to_vec()).collect();
    let mut rays: Vec<LatticeVector> =
        extreme_rays(&rows, n)?.into_iter().map(LatticeVector::new).collect();
    rays.sort();
    Ok(rays)
}

impl AffineSemigroup {
    /// Builds and validates the semigroup generated by `generators` in `Z^rank`.
    pub fn build(rank: usize, generators: Vec<LatticeVector>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGeneratingSet);
        }
        for g in &generators {
            if g.rank() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: g.rank() });
            }
        }
        if rank == 0 {
            return Ok(Self::trivial());
        }
        let gen_matrix = IntMatrix::from_lattice_rows(&generators);
        let divisors = elementary_divisors(&gen_matrix);
        if divisors.len() < rank {
            return Err(Error::NotMinimallyEmbedded { divisor: BigInt::zero() });
        }
        let dual = dual_rays(&generators)?;
        let rays = rays_of_dual(&dual, rank).map_err(|e| match e {
            Error::NotFullDimensional => Error::NotPointed,
            other => other,
        })?;
        let grading = dual
            .iter()
            .fold(DualVector::zero(rank), |acc, rho| &acc + rho);
        let hilbert_basis = cone_hilbert_basis(&rays, &dual, rank);
        let mut generators = generators;
        generators.sort();
        generators.dedup();
        let s = Self { rank, generators, dual_rays: dual, ray_generators: rays, hilbert_basis, grading };
        if let Some(witness) = s.saturation_witness() {
            return Err(Error::NotSaturated { witness });
        }
        if let Some(d) = divisors.iter().find(|d| !d.is_one()) {
            return Err(Error::NotMinimallyEmbedded { divisor: d.clone() });
        }
        Ok(s)
    }

    pub fn from_i64s(rank: usize, generators: &[&[i64]]) -> Result<Self> {
        Self::build(rank, generators.iter().map(|g| LatticeVector::from_i64s(g)).collect())
    }

    /// `Z^n_{>=0}`.
    pub fn first_octant(rank: usize) -> Self {
        let gens = (0..rank).map(|i| LatticeVector::unit(rank, i)).collect();
        Self::build(rank, gens).expect("the first octant is a valid semigroup")
    }

    /// The semigroup `{0}` in the rank-zero lattice.
    pub fn trivial() -> Self {
        Self {
            rank: 0,
            generators: Vec::new(),
            dual_rays: Vec::new(),
            ray_generators: Vec::new(),
            hilbert_basis: Vec::new(),
            grading: DualVector::zero(0),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn dual_rays(&self) -> &[DualVector] {
        &self.dual_rays
    }

    pub fn ray_generators(&self) -> &[LatticeVector] {
        &self.ray_generators
    }

    pub fn hilbert_basis(&self) -> &[LatticeVector] {
        &self.hilbert_basis
    }

    /// Sum of the dual rays; positive on every nonzero element.
    pub fn grading(&self) -> &DualVector {
        &self.grading
    }

    pub fn degree(&self, m: &LatticeVector) -> BigInt {
        self.grading.pair(m)
    }

    pub fn member(&self, m: &LatticeVector) -> bool {
        m.rank() == self.rank && self.dual_rays.iter().all(|rho| !rho.pair(m).is_negative())
    }

    pub fn is_simplicial(&self) -> bool {
        self.ray_generators.len() == self.rank
            && (self.rank == 0
                || IntMatrix::from_lattice_rows(&self.ray_generators).rank() == self.rank)
    }

    /// `S(1)` is a `Z`-basis of `M` and equals the Hilbert basis.
    pub fn is_first_octant(&self) -> bool {
        if !self.is_simplicial() {
            return false;
        }
        if self.rank == 0 {
            return true;
        }
        let det = IntMatrix::from_lattice_rows(&self.ray_generators).det();
        det.abs().is_one() && self.hilbert_basis == self.ray_generators
    }

    /// The smallest Hilbert-basis element of the saturated cone that the
    /// input generators fail to produce.
    fn saturation_witness(&self) -> Option<LatticeVector> {
        let gens: Vec<&LatticeVector> = self.generators.iter().filter(|g| !g.is_zero()).collect();
        let targets: HashSet<&LatticeVector> = self.hilbert_basis.iter().collect();
        let mut seen: HashSet<LatticeVector> = HashSet::new();
        let zero = LatticeVector::zero(self.rank);
        seen.insert(zero.clone());
        let mut queue = VecDeque::from([zero]);
        // prune to points lying below some Hilbert-basis element
        let below = |q: &LatticeVector| self.hilbert_basis.iter().any(|h| self.member(&(h - q)));
        while let Some(p) = queue.pop_front() {
            for g in &gens {
                let q = &p + *g;
                if !seen.contains(&q) && below(&q) {
                    seen.insert(q.clone());
                    queue.push_back(q);
                }
            }
        }
        let mut missing: Vec<&LatticeVector> =
            targets.into_iter().filter(|h| !seen.contains(*h)).collect();
        missing.sort();
        missing.first().map(|h| (*h).clone())
    }

    fn face_from_dual_rays(&self, defining_candidates: &[&DualVector], within: &[LatticeVector]) -> Face {
        let rays: Vec<LatticeVector> = within
            .iter()
            .filter(|r| defining_candidates.iter().all(|rho| rho.pair(r).is_zero()))
            .cloned()
            .collect();
        self.face_spanned_by(rays)
    }

    fn face_spanned_by(&self, rays: Vec<LatticeVector>) -> Face {
        let defining: Vec<DualVector> = self
            .dual_rays
            .iter()
            .filter(|rho| rays.iter().all(|r| rho.pair(r).is_zero()))
            .cloned()
            .collect();
        let rank = if rays.is_empty() {
            0
        } else {
            elementary_divisors(&IntMatrix::from_lattice_rows(&rays)).len()
        };
        Face { defining, rays, rank }
    }

    pub fn whole_face(&self) -> Face {
        self.face_spanned_by(self.ray_generators.clone())
    }

    /// Greedy complete flag: each `F_i` is `F_{i+1}` cut by the first dual
    /// ray (in sorted order) that drops the rank by exactly one.
    pub fn complete_flag(&self) -> CompleteFlag {
        let mut faces = vec![self.whole_face()];
        for i in (0..self.rank).rev() {
            let current = faces.last().expect("nonempty");
            let next = self
                .dual_rays
                .iter()
                .filter(|rho| !current.defining.contains(rho))
                .map(|rho| self.face_from_dual_rays(&[rho], &current.rays))
                .find(|f| f.rank == i)
                .expect("a pointed cone has a facet of every face");
            faces.push(next);
        }
        faces.reverse();
        CompleteFlag { faces }
    }

    pub fn upper_triangular_pair(&self, flag: &CompleteFlag) -> Result<UpperTriangularPair> {
        let n = self.rank;
        if flag.faces.len() != n + 1 {
            return Err(Error::SizeMismatch(format!(
                "flag of length {} in rank {n}",
                flag.faces.len()
            )));
        }
        let mut beta = Vec::with_capacity(n);
        let mut beta_dual = Vec::with_capacity(n);
        for i in 1..=n {
            let (lower, upper) = (&flag.faces[i - 1], &flag.faces[i]);
            let mu = upper
                .rays
                .iter()
                .filter(|r| !lower.rays.contains(r))
                .min()
                .ok_or_else(|| Error::Internal(format!("flag step {i} adds no ray")))?;
            let rho = lower
                .defining
                .iter()
                .filter(|rho| rho.pair(mu).is_positive())
                .min()
                .ok_or_else(|| Error::Internal(format!("no dual ray separates step {i}")))?;
            beta.push(mu.clone());
            beta_dual.push(rho.clone());
        }
        let pair = UpperTriangularPair { beta, beta_dual };
        if !pair.is_upper_triangular() {
            return Err(Error::Internal("pairing matrix is not upper triangular".into()));
        }
        Ok(pair)
    }
}

/// A face `S ∩ ⋂ rho^⊥`, stored with every dual ray vanishing on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub defining: Vec<DualVector>,
    pub rays: Vec<LatticeVector>,
    pub rank: usize,
}

impl Face {
    pub fn contains(&self, s: &AffineSemigroup, m: &LatticeVector) -> bool {
        s.member(m) && self.defining.iter().all(|rho| rho.pair(m).is_zero())
    }
}

/// `F_0 ⊂ F_1 ⊂ ... ⊂ F_n` with `rank F_i = i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteFlag {
    pub faces: Vec<Face>,
}

impl CompleteFlag {
    pub fn is_valid(&self) -> bool {
        self.faces.iter().enumerate().all(|(i, f)| f.rank == i)
            && self.faces.windows(2).all(|w| {
                w[0].rays.iter().all(|r| w[1].rays.contains(r)) && w[0].rays.len() < w[1].rays.len()
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperTriangularPair {
    pub beta: Vec<LatticeVector>,
    pub beta_dual: Vec<DualVector>,
}

impl UpperTriangularPair {
    pub fn matrix(&self) -> IntMatrix {
        crate::lattice::pairing_matrix(&self.beta, &self.beta_dual)
            .expect("pair sizes agree by construction")
    }

    pub fn is_upper_triangular(&self) -> bool {
        let a = self.matrix();
        let n = a.nrows();
        (0..n).all(|i| a[(i, i)].is_positive() && (0..i).all(|j| a[(i, j)].is_zero()))
    }
}

/// Pulling triangulation of the face spanned by `face` (indices into `rays`).
fn triangulate(face: &[usize], dim: usize, rays: &[LatticeVector], dual: &[DualVector]) -> Vec<Vec<usize>> {
    if face.len() == dim {
        return vec![face.to_vec()];
    }
    let apex = face[0];
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for rho in dual {
        let sub: Vec<usize> = face.iter().copied().filter(|&i| rho.pair(&rays[i]).is_zero()).collect();
        if sub.len() == face.len() || sub.contains(&apex) || sub.is_empty() {
            continue;
        }
        let sub_rays: Vec<LatticeVector> = sub.iter().map(|&i| rays[i].clone()).collect();
        let sub_rank = if sub_rays.is_empty() { 0 } else { IntMatrix::from_lattice_rows(&sub_rays).rank() };
        if sub_rank + 1 == dim {
            facets.insert(sub);
        }
    }
    let mut out = Vec::new();
    for facet in facets {
        for mut simplex in triangulate(&facet, dim - 1, rays, dual) {
            simplex.insert(0, apex);
            out.push(simplex);
        }
    }
    out
}

/// Lattice points `sum lambda_i v_i` with `lambda_i in [0, 1)`.
pub fn parallelepiped_points(simplex: &[LatticeVector]) -> Vec<LatticeVector> {
    let n = simplex.len();
    let a = IntMatrix::from_lattice_rows(simplex);
    let (d, _u, v) = crate::lattice::smith_normal_form(&a);
    let a_inv = RationalMatrix::from(&a).inverse().expect("simplex rays are independent");
    let v_inv = RationalMatrix::from(&v).inverse().expect("unimodular");
    let moduli: Vec<BigInt> = (0..n).map(|i| d[(i, i)].clone()).collect();
    let mut out = Vec::new();
    let mut y: Vec<BigInt> = vec![BigInt::zero(); n];
    loop {
        // x = y V^{-1}, lambda = x A^{-1}
        let yq: Vec<Q> = y.iter().map(|c| Q::from_integer(c.clone())).collect();
        let x = v_inv.transpose().mul_vec(&yq);
        let lambda = a_inv.transpose().mul_vec(&x);
        let mut point = vec![Q::zero(); n];
        for (l, vi) in lambda.iter().zip(simplex) {
            let frac = l - l.floor();
            for (p, c) in point.iter_mut().zip(vi.coords()) {
                *p += &frac * Q::from_integer(c.clone());
            }
        }
        out.push(LatticeVector::new(point.into_iter().map(|c| c.to_integer()).collect()));

        let mut k = 0;
        loop {
            if k == n {
                out.sort();
                out.dedup();
                return out;
            }
            y[k] += 1;
            if y[k] < moduli[k] {
                break;
            }
            y[k] = BigInt::zero();
            k += 1;
        }
    }
}

/// Hilbert basis of the lattice points of the pointed full-dimensional cone
/// with the given rays and facet normals.
pub fn cone_hilbert_basis(rays: &[LatticeVector], dual: &[DualVector], n: usize) -> Vec<LatticeVector> {
    if n == 0 {
        return Vec::new();
    }
    let all: Vec<usize> = (0..rays.len()).collect();
    let simplices = triangulate(&all, n, rays, dual);
    let mut candidates: BTreeSet<LatticeVector> = rays.iter().cloned().collect();
    for simplex in &simplices {
        let vs: Vec<LatticeVector> = simplex.iter().map(|&i| rays[i].clone()).collect();
        candidates.extend(parallelepiped_points(&vs).into_iter().filter(|p| !p.is_zero()));
    }
    let in_cone = |m: &LatticeVector| dual.iter().all(|rho| !rho.pair(m).is_negative());
    let mut basis: Vec<LatticeVector> = candidates
        .iter()
        .filter(|h| !candidates.iter().any(|c| c != *h && in_cone(&(*h - c))))
        .cloned()
        .collect();
    basis.sort();
    basis
}
