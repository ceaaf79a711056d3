//! Monomial ideals `I = (x^{a_1}, ..., x^{a_l})` of `K[S]`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{hermite_normal_form, IntMatrix, LatticeVector};
use crate::linalg::{RationalMatrix, Q};
use crate::semigroup::AffineSemigroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    semigroup: Arc<AffineSemigroup>,
    generators: Vec<LatticeVector>,
}

/// `S \ supp(I)` in graded-lex order, with an index lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementBasis {
    elements: Vec<LatticeVector>,
    index: HashMap<LatticeVector, usize>,
}

impl ComplementBasis {
    pub fn new(mut elements: Vec<LatticeVector>) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Self { elements, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[LatticeVector] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &LatticeVector {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &LatticeVector) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &LatticeVector) -> bool {
        self.index.contains_key(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = &LatticeVector> {
        self.elements.iter()
    }
}

/// Outcome of the cofiniteness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CofinitenessCertificate {
    /// Smallest `k >= 1` with `k * mu` in `supp(I)`, for every ray generator `mu`.
    Cofinite(Vec<(LatticeVector, BigInt)>),
    /// A ray generator with no multiple in `supp(I)`.
    Infinite(LatticeVector),
}

impl CofinitenessCertificate {
    pub fn is_cofinite(&self) -> bool {
        matches!(self, Self::Cofinite(_))
    }

    pub fn max_multiple(&self) -> BigInt {
        match self {
            Self::Cofinite(ks) => ks.iter().map(|(_, k)| k.clone()).max().unwrap_or_else(BigInt::zero),
            Self::Infinite(_) => BigInt::zero(),
        }
    }
}

/// Result of [`MonomialIdeal::fullify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fullified {
    pub ideal: MonomialIdeal,
    /// Rows form a basis of the sublattice spanned by the new semigroup;
    /// a label `c` of the new lattice corresponds to `c * embedding` in the old.
    pub embedding: IntMatrix,
    pub changed: bool,
}

impl Fullified {
    pub fn to_original(&self, c: &LatticeVector) -> LatticeVector {
        let n = self.embedding.ncols();
        let mut out = vec![BigInt::zero(); n];
        for (i, ci) in c.coords().iter().enumerate() {
            for (j, o) in out.iter_mut().enumerate() {
                *o += ci * &self.embedding[(i, j)];
            }
        }
        LatticeVector::new(out)
    }
}

impl MonomialIdeal {
    /// Validates and minimalizes the generators. An empty list is the zero ideal.
    pub fn new(semigroup: Arc<AffineSemigroup>, generators: Vec<LatticeVector>) -> Result<Self> {
        for a in &generators {
            if a.rank() != semigroup.rank() {
                return Err(Error::DimensionMismatch { expected: semigroup.rank(), found: a.rank() });
            }
            if !semigroup.member(a) {
                return Err(Error::NotInSemigroup(a.clone()));
            }
        }
        let mut gens = generators;
        gens.sort();
        gens.dedup();
        let minimal: Vec<LatticeVector> = gens
            .iter()
            .filter(|a| !gens.iter().any(|b| b != *a && semigroup.member(&(*a - b))))
            .cloned()
            .collect();
        Ok(Self { semigroup, generators: minimal })
    }

    pub fn from_i64s(semigroup: Arc<AffineSemigroup>, generators: &[&[i64]]) -> Result<Self> {
        Self::new(semigroup, generators.iter().map(|g| LatticeVector::from_i64s(g)).collect())
    }

    pub fn semigroup(&self) -> &AffineSemigroup {
        &self.semigroup
    }

    pub fn semigroup_arc(&self) -> &Arc<AffineSemigroup> {
        &self.semigroup
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn supp_contains(&self, m: &LatticeVector) -> Result<bool> {
        if !self.semigroup.member(m) {
            return Err(Error::NotInSemigroup(m.clone()));
        }
        Ok(self.in_supp(m))
    }

    /// Like [`supp_contains`](Self::supp_contains), but `false` off `S`.
    pub fn in_supp(&self, m: &LatticeVector) -> bool {
        m.rank() == self.semigroup.rank()
            && self.generators.iter().any(|a| self.semigroup.member(&(m - a)))
    }

    /// Smallest `k >= 1` with `k * mu - a` in `S` for some generator `a`.
    pub fn smallest_multiple(&self, mu: &LatticeVector) -> Option<BigInt> {
        self.generators
            .iter()
            .filter_map(|a| {
                let mut k = BigInt::one();
                for rho in self.semigroup.dual_rays() {
                    let (ra, rm) = (rho.pair(a), rho.pair(mu));
                    if rm.is_zero() {
                        if ra.is_positive() {
                            return None;
                        }
                    } else {
                        k = k.max(Integer::div_ceil(&ra, &rm));
                    }
                }
                Some(k)
            })
            .min()
    }

    pub fn is_cofinite(&self) -> CofinitenessCertificate {
        let mut ks = Vec::new();
        for mu in self.semigroup.ray_generators() {
            match self.smallest_multiple(mu) {
                Some(k) => ks.push((mu.clone(), k)),
                None => return CofinitenessCertificate::Infinite(mu.clone()),
            }
        }
        CofinitenessCertificate::Cofinite(ks)
    }

    pub fn complement(&self) -> Result<ComplementBasis> {
        self.complement_limited(usize::MAX)
    }

    /// Breadth-first closure from `0` over the Hilbert basis, pruned by `supp(I)`.
    pub fn complement_limited(&self, limit: usize) -> Result<ComplementBasis> {
        if let CofinitenessCertificate::Infinite(ray) = self.is_cofinite() {
            return Err(Error::ComplementInfinite { ray });
        }
        let zero = LatticeVector::zero(self.semigroup.rank());
        if self.in_supp(&zero) {
            return Ok(ComplementBasis::new(Vec::new()));
        }
        let mut seen: HashSet<LatticeVector> = HashSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(m) = queue.pop_front() {
            for h in self.semigroup.hilbert_basis() {
                let next = &m + h;
                if !seen.contains(&next) && !self.in_supp(&next) {
                    if seen.len() >= limit {
                        return Err(Error::ComplementTooLarge { limit });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(ComplementBasis::new(seen.into_iter().collect()))
    }

    pub fn is_full(&self) -> bool {
        !self.semigroup.ray_generators().iter().any(|mu| self.in_supp(mu))
    }

    /// Passes to the subsemigroup generated by the complement, re-embedded
    /// in the lattice it spans. Full ideals are returned unchanged.
    pub fn fullify(&self) -> Result<Fullified> {
        let n = self.semigroup.rank();
        let complement = self.complement()?;
        if self.is_full() {
            return Ok(Fullified { ideal: self.clone(), embedding: IntMatrix::identity(n), changed: false });
        }
        let nonzero: Vec<LatticeVector> = complement.iter().filter(|m| !m.is_zero()).cloned().collect();
        if nonzero.is_empty() {
            let trivial = Arc::new(AffineSemigroup::trivial());
            return Ok(Fullified {
                ideal: MonomialIdeal { semigroup: trivial, generators: Vec::new() },
                embedding: IntMatrix::zeros(0, n),
                changed: true,
            });
        }
        let (h, _) = hermite_normal_form(&IntMatrix::from_lattice_rows(&nonzero));
        let basis: Vec<Vec<BigInt>> =
            h.to_rows().into_iter().filter(|r| r.iter().any(|c| !c.is_zero())).collect();
        let r = basis.len();
        let embedding = IntMatrix::from_rows(basis);
        let coords = |m: &LatticeVector| -> LatticeVector { sublattice_coords(&embedding, m) };
        let new_complement: Vec<LatticeVector> = complement.iter().map(coords).collect();
        let new_gens: Vec<LatticeVector> = nonzero.iter().map(coords).collect();
        let s_new = Arc::new(AffineSemigroup::build(r, new_gens)?);
        let c_set: HashSet<&LatticeVector> = new_complement.iter().collect();
        let mut ideal_gens = Vec::new();
        for c in &new_complement {
            for hb in s_new.hilbert_basis() {
                let m = c + hb;
                if !c_set.contains(&m) {
                    ideal_gens.push(m);
                }
            }
        }
        let ideal = MonomialIdeal::new(s_new, ideal_gens)?;
        Ok(Fullified { ideal, embedding, changed: true })
    }
}

/// Coordinates of `m` in the row basis `e` (row echelon, full row rank).
fn sublattice_coords(e: &IntMatrix, m: &LatticeVector) -> LatticeVector {
    let r = e.nrows();
    let pivots: Vec<usize> = (0..r)
        .map(|i| e.row(i).iter().position(|c| !c.is_zero()).expect("nonzero row"))
        .collect();
    let square = RationalMatrix::from_rows(
        (0..r).map(|i| pivots.iter().map(|&p| Q::from_integer(e[(i, p)].clone())).collect()).collect(),
    );
    let inv = square.inverse().expect("echelon pivots are nonzero");
    let target: Vec<Q> = pivots.iter().map(|&p| Q::from_integer(m.coords()[p].clone())).collect();
    let c = inv.transpose().mul_vec(&target);
    LatticeVector::new(c.into_iter().map(|x| x.to_integer()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(a: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(a)
    }

    fn plane() -> Arc<AffineSemigroup> {
        Arc::new(AffineSemigroup::first_octant(2))
    }

    fn ideal(gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::from_i64s(plane(), gens).unwrap()
    }

    #[test]
    fn supp_examples() {
        let i = ideal(&[&[2, 0], &[0, 2]]);
        assert!(!i.supp_contains(&v(&[1, 1])).unwrap());
        assert!(i.supp_contains(&v(&[3, 0])).unwrap());
        assert_eq!(i.supp_contains(&v(&[-1, 0])), Err(Error::NotInSemigroup(v(&[-1, 0]))));
        let i1 = ideal(&[&[2, 5], &[3, 2], &[5, 0]]);
        assert!(!i1.supp_contains(&v(&[4, 1])).unwrap());
    }

    #[test]
    fn minimalization() {
        let i = ideal(&[&[3, 0], &[2, 0], &[2, 1], &[0, 2]]);
        assert_eq!(i.generators(), &[v(&[0, 2]), v(&[2, 0])]);
    }

    #[test]
    fn cofiniteness_examples() {
        assert!(ideal(&[&[0, 5], &[3, 2], &[6, 0]]).is_cofinite().is_cofinite());
        assert_eq!(
            ideal(&[&[2, 5], &[3, 2], &[5, 0]]).is_cofinite(),
            CofinitenessCertificate::Infinite(v(&[0, 1]))
        );
        assert_eq!(
            ideal(&[&[2, 0], &[0, 2]]).is_cofinite(),
            CofinitenessCertificate::Cofinite(vec![(v(&[0, 1]), 2.into()), (v(&[1, 0]), 2.into())])
        );
    }

    #[test]
    fn complement_examples() {
        let line = Arc::new(AffineSemigroup::first_octant(1));
        let x4 = MonomialIdeal::from_i64s(line, &[&[4]]).unwrap();
        let c: Vec<_> = x4.complement().unwrap().iter().map(|m| m.to_i64s().unwrap()).collect();
        assert_eq!(c, vec![vec![0], vec![1], vec![2], vec![3]]);

        let c = ideal(&[&[2, 0], &[1, 1], &[0, 2]]).complement().unwrap();
        assert_eq!(c.elements(), &[v(&[0, 0]), v(&[0, 1]), v(&[1, 0])]);

        assert_eq!(ideal(&[&[0, 5], &[3, 2], &[6, 0]]).complement().unwrap().len(), 21);
        assert!(matches!(
            ideal(&[&[2, 5], &[3, 2], &[5, 0]]).complement(),
            Err(Error::ComplementInfinite { .. })
        ));
    }

    #[test]
    fn fullness() {
        assert!(ideal(&[&[2, 0], &[1, 1], &[0, 2]]).is_full());
        assert!(!ideal(&[&[1, 0], &[0, 2]]).is_full());
        assert!(ideal(&[&[2, 0], &[0, 2]]).is_full());
    }

    #[test]
    fn fullify_examples() {
        let f = ideal(&[&[1, 0], &[0, 2]]).fullify().unwrap();
        assert!(f.changed);
        assert_eq!(f.ideal.semigroup().rank(), 1);
        assert_eq!(f.ideal.generators(), &[v(&[2])]);
        assert_eq!(f.ideal.complement().unwrap().elements(), &[v(&[0]), v(&[1])]);
        assert_eq!(f.to_original(&v(&[1])), v(&[0, 1]));

        let full = ideal(&[&[2, 0], &[0, 2]]);
        let f = full.fullify().unwrap();
        assert!(!f.changed);
        assert_eq!(f.ideal, full);

        let f = ideal(&[&[1, 0], &[0, 1]]).fullify().unwrap();
        assert_eq!(f.ideal.semigroup().rank(), 0);
        assert!(f.ideal.generators().is_empty());
        assert_eq!(f.ideal.complement().unwrap().len(), 1);
    }
}
