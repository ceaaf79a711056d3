//! Brute-force derivations of `B = K[S]/I`, used as ground truth for the
//! classification.
//!
//! The Leibniz constraints `D(e_i e_j) = D(e_i) e_j + e_i D(e_j)` are linear
//! in the `d^2` entries of `D`, and every constraint touches at most three
//! entries. Entries linked by constraints are grouped with a union-find and
//! each group is solved exactly on its own.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::Rng;

use crate::derivations::lnd_degrees;
use crate::error::Result;
use crate::ideal::MonomialIdeal;
use crate::lattice::LatticeVector;
use crate::linalg::{span_dim, RationalMatrix, Q};
use crate::par;
use crate::quotient::QuotientAlgebra;
use crate::semigroup::AffineSemigroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpace {
    /// Reduced row echelon basis, read as flattened row-major matrices.
    pub basis: Vec<RationalMatrix>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeComparison {
    pub alpha: LatticeVector,
    pub oracle_dim: usize,
    pub classified_dim: usize,
}

impl DegreeComparison {
    pub fn matches(&self) -> bool {
        self.oracle_dim == self.classified_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComparisonReport {
    pub degrees: Vec<DegreeComparison>,
    /// Degrees where the oracle finds more LNDs than the classification;
    /// on a non-first-octant semigroup these are non-liftable candidates.
    pub extras: Vec<LatticeVector>,
    pub first_octant: bool,
}

impl GradedComparisonReport {
    pub fn mismatches(&self) -> Vec<&DegreeComparison> {
        self.degrees.iter().filter(|d| !d.matches()).collect()
    }

    pub fn all_match(&self) -> bool {
        self.degrees.iter().all(DegreeComparison::matches)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Sparse row: (unknown index, coefficient); unknown `r * d + c` is entry `(r, c)`.
type Equation = Vec<(usize, i64)>;

fn leibniz_equations(q: &QuotientAlgebra) -> Vec<Equation> {
    let d = q.dim();
    let basis = q.basis();
    // sub[r * d + j] = index of m_r - m_j when that lies in the basis
    let sub: Vec<Option<usize>> = (0..d * d)
        .map(|k| basis.index_of(&(basis.get(k / d) - basis.get(k % d))))
        .collect();
    let mut eqs = Vec::new();
    for r in 0..d {
        eqs.push(vec![(r * d + q.unit(), 1)]);
    }
    for i in 0..d {
        for j in i..d {
            for r in 0..d {
                let mut terms: BTreeMap<usize, i64> = BTreeMap::new();
                if let Some(k) = q.mult(i, j) {
                    *terms.entry(r * d + k).or_default() += 1;
                }
                if let Some(s) = sub[r * d + j] {
                    *terms.entry(s * d + i).or_default() -= 1;
                }
                if let Some(s) = sub[r * d + i] {
                    *terms.entry(s * d + j).or_default() -= 1;
                }
                let eq: Equation = terms.into_iter().filter(|(_, c)| *c != 0).collect();
                if !eq.is_empty() {
                    eqs.push(eq);
                }
            }
        }
    }
    eqs
}

/// Solves the Leibniz system; the basis is in global reduced row echelon form.
pub fn all_derivations(q: &QuotientAlgebra) -> DerivationSpace {
    let d = q.dim();
    let unknowns = d * d;
    let eqs = leibniz_equations(q);
    let mut uf = UnionFind::new(unknowns);
    for eq in &eqs {
        for w in eq.windows(2) {
            uf.union(w[0].0, w[1].0);
        }
    }
    let mut blocks: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for u in 0..unknowns {
        blocks.entry(uf.find(u)).or_default().0.push(u);
    }
    for (e, eq) in eqs.iter().enumerate() {
        blocks.get_mut(&uf.find(eq[0].0)).expect("block exists").1.push(e);
    }
    let blocks: Vec<(Vec<usize>, Vec<usize>)> = blocks.into_values().collect();
    let solved: Vec<Vec<(usize, Vec<Q>)>> = par::map(&blocks, |(vars, eq_ids)| {
        let local: HashMap<usize, usize> = vars.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let rows: Vec<Vec<Q>> = eq_ids
            .iter()
            .map(|&e| {
                let mut row = vec![Q::from_integer(0.into()); vars.len()];
                for &(u, c) in &eqs[e] {
                    row[local[&u]] += Q::from_integer(c.into());
                }
                row
            })
            .collect();
        let kernel = if rows.is_empty() {
            crate::linalg::orthogonal_complement(&[], vars.len())
        } else {
            crate::linalg::row_space_basis(&RationalMatrix::from_rows(rows).nullspace(), vars.len())
        };
        kernel
            .into_iter()
            .map(|v| {
                let pivot = v.iter().position(|c| !num_traits::Zero::is_zero(c)).expect("nonzero");
                (vars[pivot], v)
            })
            .collect()
    });
    let mut vectors: Vec<(usize, Vec<(usize, Q)>)> = Vec::new();
    for ((vars, _), kernel) in blocks.iter().zip(solved) {
        for (pivot, v) in kernel {
            let entries = vars.iter().copied().zip(v).filter(|(_, c)| !num_traits::Zero::is_zero(c)).collect();
            vectors.push((pivot, entries));
        }
    }
    vectors.sort_by_key(|(p, _)| *p);
    let basis: Vec<RationalMatrix> = vectors
        .into_iter()
        .map(|(_, entries)| {
            let mut m = RationalMatrix::zeros(d, d);
            for (u, c) in entries {
                m[(u / d, u % d)] = c;
            }
            m
        })
        .collect();
    DerivationSpace { dim: basis.len(), basis }
}

/// Splits `D` by degree: entry `(r, c)` belongs to `α = m_r - m_c`.
pub fn graded_components(d: &RationalMatrix, q: &QuotientAlgebra) -> BTreeMap<LatticeVector, RationalMatrix> {
    let n = q.dim();
    let mut out: BTreeMap<LatticeVector, RationalMatrix> = BTreeMap::new();
    for r in 0..n {
        for c in 0..n {
            let e = &d[(r, c)];
            if num_traits::Zero::is_zero(e) {
                continue;
            }
            let alpha = q.basis().get(r) - q.basis().get(c);
            out.entry(alpha).or_insert_with(|| RationalMatrix::zeros(n, n))[(r, c)] = e.clone();
        }
    }
    out
}

/// Per degree realized by `Der(B)`, the dimension of the nilpotent
/// homogeneous derivations of that degree.
pub fn homogeneous_lnd_dims(q: &QuotientAlgebra) -> BTreeMap<LatticeVector, usize> {
    let space = all_derivations(q);
    let mut by_degree: BTreeMap<LatticeVector, Vec<RationalMatrix>> = BTreeMap::new();
    for b in &space.basis {
        for (alpha, comp) in graded_components(b, q) {
            by_degree.entry(alpha).or_default().push(comp);
        }
    }
    by_degree
        .into_iter()
        .map(|(alpha, comps)| {
            let flat: Vec<Vec<Q>> = comps.iter().map(|m| m.entries().to_vec()).collect();
            let dim = span_dim(&flat);
            let nilpotent: Vec<bool> = comps.iter().map(RationalMatrix::is_nilpotent).collect();
            let lnd_dim = if nilpotent.iter().all(|&x| x) {
                dim
            } else if nilpotent.iter().all(|&x| !x) || alpha.is_zero() {
                // degree-zero components are diagonal: nilpotent only when zero
                0
            } else {
                nilpotent_subspace_dim(&comps)
            };
            (alpha, lnd_dim)
        })
        .collect()
}

fn nilpotent_subspace_dim(comps: &[RationalMatrix]) -> usize {
    let nil: Vec<Vec<Q>> =
        comps.iter().filter(|m| m.is_nilpotent()).map(|m| m.entries().to_vec()).collect();
    span_dim(&nil)
}

pub fn compare_with_classification(ideal: &MonomialIdeal) -> Result<GradedComparisonReport> {
    let q = QuotientAlgebra::new(ideal.clone())?;
    let oracle = homogeneous_lnd_dims(&q);
    let classified: BTreeMap<LatticeVector, usize> = lnd_degrees(ideal, None)?
        .degrees
        .into_iter()
        .map(|r| (r.alpha, r.effective_dim))
        .collect();
    let alphas: BTreeSet<&LatticeVector> = oracle
        .iter()
        .filter(|(_, &d)| d > 0)
        .map(|(a, _)| a)
        .chain(classified.keys())
        .collect();
    let degrees: Vec<DegreeComparison> = alphas
        .into_iter()
        .map(|a| DegreeComparison {
            alpha: a.clone(),
            oracle_dim: oracle.get(a).copied().unwrap_or(0),
            classified_dim: classified.get(a).copied().unwrap_or(0),
        })
        .collect();
    let extras = degrees.iter().filter(|d| d.oracle_dim > d.classified_dim).map(|d| d.alpha.clone()).collect();
    Ok(GradedComparisonReport { degrees, extras, first_octant: ideal.semigroup().is_first_octant() })
}

/// Runs [`compare_with_classification`] over a batch, in parallel when enabled.
pub fn compare_batch(ideals: &[MonomialIdeal]) -> Result<Vec<GradedComparisonReport>> {
    par::try_map(ideals, compare_with_classification)
}

/// A random full ideal with cofinite support over `Z^rank_{>=0}` whose
/// complement has at most `max_complement` elements.
pub fn random_full_cofinite_ideal<R: Rng>(
    rng: &mut R,
    semigroup: &std::sync::Arc<AffineSemigroup>,
    max_complement: usize,
) -> MonomialIdeal {
    let n = semigroup.rank();
    let max_power = match n {
        1 => max_complement.max(2) as i64,
        2 => 7,
        _ => 4,
    };
    loop {
        let mut gens: Vec<LatticeVector> = (0..n)
            .map(|i| {
                let mut e = vec![0i64; n];
                e[i] = rng.gen_range(2..=max_power);
                LatticeVector::from_i64s(&e)
            })
            .collect();
        for _ in 0..rng.gen_range(0..=3) {
            let mixed: Vec<i64> = (0..n).map(|_| rng.gen_range(0..max_power)).collect();
            if mixed.iter().filter(|&&c| c > 0).count() >= 2 {
                gens.push(LatticeVector::from_i64s(&mixed));
            }
        }
        let ideal = MonomialIdeal::new(semigroup.clone(), gens).expect("generators lie in the octant");
        if !ideal.is_full() {
            continue;
        }
        match ideal.complement_limited(max_complement + 1) {
            Ok(c) if c.len() <= max_complement => return ideal,
            _ => continue,
        }
    }
}
