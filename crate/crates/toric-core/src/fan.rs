//! Rational polyhedral fans: the combinatorial source of everything else.
//!
//! Rays are stored primitive in lattice-basis coordinates. Fans over
//! non-standard lattices are rebased at construction so that one coordinate
//! convention holds everywhere downstream.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::feasibility::{feasible, Constraint, Rel};
use crate::lattice::{
    dot_int, integer_kernel, invariant_factors, primitive, rat_rank, IntMatrix, Sublattice,
};
use crate::{big, rat_of, RatVec};

/// A complete description of a fan by its rays and maximal cones.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<BigInt>>,
    max_cones: Vec<BTreeSet<usize>>,
    lattice_note: Option<String>,
}

/// A single cone of a fan, carrying its generator matrix.
#[derive(Clone, Debug)]
pub struct Cone {
    pub ray_indices: BTreeSet<usize>,
    pub generators: IntMatrix,
}

/// Validation summary for a fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanReport {
    pub is_simplicial: bool,
    pub is_smooth: bool,
    pub is_complete: bool,
    /// Multiplicity per maximal-cone index; simplicial cones only.
    pub multiplicities: BTreeMap<usize, BigInt>,
}

impl Fan {
    /// Build a fan, making rays primitive and checking structural invariants.
    pub fn new(rank: usize, rays: Vec<Vec<BigInt>>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        let mut prim_rays = Vec::with_capacity(rays.len());
        for r in &rays {
            if r.len() != rank {
                return Err(Error::Usage("ray length differs from rank".into()));
            }
            prim_rays.push(primitive(r)?);
        }
        for i in 0..prim_rays.len() {
            for j in i + 1..prim_rays.len() {
                if prim_rays[i] == prim_rays[j] {
                    return Err(Error::DuplicateRay(i, j));
                }
            }
        }
        let mut cones: Vec<BTreeSet<usize>> = Vec::with_capacity(max_cones.len());
        let mut used = vec![false; prim_rays.len()];
        for c in &max_cones {
            let set: BTreeSet<usize> = c.iter().copied().collect();
            for &i in &set {
                if i >= prim_rays.len() {
                    return Err(Error::BadRayIndex(i));
                }
                used[i] = true;
            }
            if set.is_empty() {
                return Err(Error::Usage("empty maximal cone".into()));
            }
            cones.push(set);
        }
        if let Some(i) = used.iter().position(|&u| !u) {
            return Err(Error::BadRayIndex(i));
        }
        for i in 0..cones.len() {
            for j in 0..cones.len() {
                if i != j && cones[i].is_subset(&cones[j]) {
                    return Err(Error::NonMaximalCone(i));
                }
            }
        }
        Ok(Fan {
            rank,
            rays: prim_rays,
            max_cones: cones,
            lattice_note: None,
        })
    }

    /// Build a fan whose rays are given in ambient coordinates of a
    /// non-standard lattice; rays are rebased to the basis coordinates.
    pub fn new_rebased(
        rank: usize,
        ambient_rays: Vec<Vec<BigInt>>,
        basis: &IntMatrix,
        max_cones: Vec<Vec<usize>>,
        note: Option<String>,
    ) -> Result<Fan> {
        assert_eq!(basis.rows(), rank);
        assert_eq!(basis.cols(), rank);
        let sub = Sublattice::from_generators(rank, basis);
        if sub.rank() != rank {
            return Err(Error::Usage("lattice basis is singular".into()));
        }
        let mut rebased = Vec::with_capacity(ambient_rays.len());
        for v in &ambient_rays {
            let mut y = vec![BigInt::zero(); rank];
            // solve y * basis = v exactly over the integers
            let rv: RatVec = v.iter().map(rat_of).collect();
            let a: Vec<RatVec> = basis.transpose().to_rational();
            let sol = crate::lattice::rat_solve_columns(&a, &rv)
                .ok_or_else(|| Error::Usage("ray outside lattice span".into()))?;
            for (i, s) in sol.iter().enumerate() {
                if !s.is_integer() {
                    return Err(Error::Usage("ray is not a lattice point".into()));
                }
                y[i] = s.to_integer();
            }
            rebased.push(y);
        }
        let mut fan = Fan::new(rank, rebased, max_cones)?;
        fan.lattice_note = note;
        Ok(fan)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of rays, written `u` throughout.
    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn ray(&self, i: usize) -> &[BigInt] {
        &self.rays[i]
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[BTreeSet<usize>] {
        &self.max_cones
    }

    pub fn lattice_note(&self) -> Option<&str> {
        self.lattice_note.as_deref()
    }

    pub fn cone(&self, idx: usize) -> Cone {
        let set = self.max_cones[idx].clone();
        Cone {
            generators: self.generator_matrix(&set),
            ray_indices: set,
        }
    }

    /// Generator matrix of a ray set, rows in ascending index order.
    pub fn generator_matrix(&self, rays: &BTreeSet<usize>) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = rays.iter().map(|&i| self.rays[i].clone()).collect();
        IntMatrix::from_rows(&rows, self.rank)
    }

    /// The `u x r` matrix whose rows are the rays; this is the matrix of the
    /// ray-evaluation map on labels, `x ↦ Σ x_i v_i`.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.rays, self.rank)
    }

    pub fn ray_index(&self, v: &[BigInt]) -> Option<usize> {
        self.rays.iter().position(|r| r.as_slice() == v)
    }

    /// Exact test whether `v` lies in the cone spanned by the given rays.
    pub fn cone_contains(&self, rays: &BTreeSet<usize>, v: &[BigInt]) -> Result<bool> {
        let idx: Vec<usize> = rays.iter().copied().collect();
        let n = idx.len();
        // a >= 0 with sum_i a_i v_i = v
        let mut cons = Vec::new();
        for (i, _) in idx.iter().enumerate() {
            let mut coeffs = vec![BigRational::zero(); n];
            coeffs[i] = BigRational::one();
            cons.push(Constraint::new(coeffs, BigRational::zero(), Rel::Ge));
        }
        for coord in 0..self.rank {
            let coeffs: RatVec = idx.iter().map(|&i| rat_of(&self.rays[i][coord])).collect();
            cons.push(Constraint::new(coeffs, -rat_of(&v[coord]), Rel::Eq));
        }
        feasible(n, &cons)
    }

    /// Does `v` lie in the support of the fan?
    pub fn support_contains(&self, v: &[BigInt]) -> Result<bool> {
        for c in &self.max_cones {
            if self.cone_contains(c, v)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Maximal cones whose span is all of `R^rank`.
    fn cone_is_full_dim(&self, rays: &BTreeSet<usize>) -> bool {
        let m = self.generator_matrix(rays);
        crate::lattice::rank(&m) == self.rank
    }

    fn cone_is_simplicial(&self, rays: &BTreeSet<usize>) -> bool {
        let m = self.generator_matrix(rays);
        crate::lattice::rank(&m) == rays.len()
    }

    /// Multiplicity of a simplicial cone: the index of the subgroup its
    /// generators span inside the lattice points of its linear span.
    pub fn multiplicity(&self, rays: &BTreeSet<usize>) -> Result<BigInt> {
        if !self.cone_is_simplicial(rays) {
            return Err(Error::NotSimplicial);
        }
        let m = self.generator_matrix(rays);
        let mut prod = BigInt::one();
        for f in invariant_factors(&m) {
            prod *= f;
        }
        Ok(prod)
    }

    pub fn is_simplicial(&self) -> bool {
        self.max_cones.iter().all(|c| self.cone_is_simplicial(c))
    }

    /// Smooth iff every maximal cone is simplicial of multiplicity one.
    pub fn is_smooth(&self) -> bool {
        self.max_cones.iter().all(|c| {
            self.cone_is_simplicial(c)
                && self.multiplicity(c).map(|m| m.is_one()).unwrap_or(false)
        })
    }

    /// Facets of a maximal cone: pairs (inward primitive normal, rays on the
    /// facet). The cone must be full-dimensional and pointed.
    pub(crate) fn facets(&self, rays: &BTreeSet<usize>) -> Vec<(Vec<BigInt>, BTreeSet<usize>)> {
        let idx: Vec<usize> = rays.iter().copied().collect();
        let r = self.rank;
        if r == 1 {
            // the only proper face of a half-line is the origin
            return vec![(vec![], BTreeSet::new())];
        }
        let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        let mut out = Vec::new();
        let subsets = k_subsets(idx.len(), r - 1);
        for sub in subsets {
            let rows: Vec<RatVec> = sub
                .iter()
                .map(|&p| self.rays[idx[p]].iter().map(rat_of).collect())
                .collect();
            if rat_rank(&rows) != r - 1 {
                continue;
            }
            // primitive normal: integer kernel of w ↦ w · M, M the matrix
            // whose columns are the selected rays
            let sel: Vec<Vec<BigInt>> = sub.iter().map(|&p| self.rays[idx[p]].clone()).collect();
            let m = IntMatrix::from_rows(&sel, r).transpose();
            let k = integer_kernel(&m);
            debug_assert_eq!(k.rank(), 1);
            let mut w = k.basis().row_vec(0);
            let signs: Vec<BigInt> = idx.iter().map(|&i| dot_int(&w, &self.rays[i])).collect();
            let has_pos = signs.iter().any(|s| s.is_positive());
            let has_neg = signs.iter().any(|s| s.is_negative());
            if has_pos && has_neg {
                continue; // hyperplane cuts the cone: not a facet
            }
            if has_neg {
                for x in w.iter_mut() {
                    *x = -x.clone();
                }
            }
            if seen.contains(&w) {
                continue;
            }
            let on: BTreeSet<usize> = idx
                .iter()
                .copied()
                .filter(|&i| dot_int(&w, &self.rays[i]).is_zero())
                .collect();
            seen.insert(w.clone());
            out.push((w, on));
        }
        out
    }

    /// Completeness by facet pairing: every maximal cone is full-dimensional
    /// and each facet is shared by exactly one other maximal cone.
    pub fn is_complete(&self) -> bool {
        if self.max_cones.iter().any(|c| !self.cone_is_full_dim(c)) {
            return false;
        }
        let mut counts: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        for c in &self.max_cones {
            for (_, on) in self.facets(c) {
                *counts.entry(on).or_insert(0) += 1;
            }
        }
        counts.values().all(|&n| n == 2)
    }

    /// All ray sets contained in some maximal cone.
    pub fn face_sets(&self) -> Vec<BTreeSet<usize>> {
        let mut out: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for c in &self.max_cones {
            let idx: Vec<usize> = c.iter().copied().collect();
            for mask in 0..(1usize << idx.len()) {
                let s: BTreeSet<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| mask & (1 << p) != 0)
                    .map(|(_, &i)| i)
                    .collect();
                out.insert(s);
            }
        }
        out.into_iter().collect()
    }

    /// Inclusion-minimal ray sets contained in no cone.
    pub fn minimal_nonfaces(&self) -> Vec<BTreeSet<usize>> {
        let faces: BTreeSet<BTreeSet<usize>> = self.face_sets().into_iter().collect();
        let u = self.n_rays();
        let mut out: Vec<BTreeSet<usize>> = Vec::new();
        for mask in 1usize..(1 << u) {
            let s: BTreeSet<usize> =
                (0..u).filter(|i| mask & (1 << i) != 0).collect();
            if faces.contains(&s) {
                continue;
            }
            // minimal iff every proper maximal subset is a face
            let minimal = s.iter().all(|&drop| {
                let mut t = s.clone();
                t.remove(&drop);
                faces.contains(&t)
            });
            if minimal {
                out.push(s);
            }
        }
        out.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
        out
    }

    fn check_strong_convexity(&self) -> Result<()> {
        for (ci, c) in self.max_cones.iter().enumerate() {
            let idx: Vec<usize> = c.iter().copied().collect();
            let n = idx.len();
            // nonzero a >= 0 with sum a_i v_i = 0 exists iff the cone has a line
            let mut cons = Vec::new();
            for i in 0..n {
                let mut coeffs = vec![BigRational::zero(); n];
                coeffs[i] = BigRational::one();
                cons.push(Constraint::new(coeffs, BigRational::zero(), Rel::Ge));
            }
            let ones = vec![BigRational::one(); n];
            cons.push(Constraint::new(ones, -BigRational::one(), Rel::Eq));
            for coord in 0..self.rank {
                let coeffs: RatVec =
                    idx.iter().map(|&i| rat_of(&self.rays[i][coord])).collect();
                cons.push(Constraint::new(coeffs, BigRational::zero(), Rel::Eq));
            }
            if feasible(n, &cons)? {
                return Err(Error::NotStronglyConvex(ci));
            }
        }
        Ok(())
    }

    fn check_generators_extreme(&self) -> Result<()> {
        for (ci, c) in self.max_cones.iter().enumerate() {
            for &i in c {
                let mut rest = c.clone();
                rest.remove(&i);
                if rest.is_empty() {
                    continue;
                }
                if self.cone_contains(&rest, &self.rays[i])? {
                    return Err(Error::NonMaximalCone(ci));
                }
            }
        }
        Ok(())
    }

    /// Pairwise face condition for simplicial fans, by exhibiting an exact
    /// separating functional vanishing on the common rays.
    fn check_simplicial_pairs(&self) -> Result<()> {
        let r = self.rank;
        for i in 0..self.max_cones.len() {
            for j in i + 1..self.max_cones.len() {
                let a = &self.max_cones[i];
                let b = &self.max_cones[j];
                let common: BTreeSet<usize> = a.intersection(b).copied().collect();
                let mut cons = Vec::new();
                for &k in &common {
                    let coeffs: RatVec = self.rays[k].iter().map(rat_of).collect();
                    cons.push(Constraint::new(coeffs, BigRational::zero(), Rel::Eq));
                }
                for &k in a.difference(&common) {
                    let coeffs: RatVec = self.rays[k].iter().map(rat_of).collect();
                    cons.push(Constraint::new(coeffs, BigRational::zero(), Rel::Gt));
                }
                for &k in b.difference(&common) {
                    let coeffs: RatVec =
                        self.rays[k].iter().map(|x| -rat_of(x)).collect();
                    cons.push(Constraint::new(coeffs, BigRational::zero(), Rel::Gt));
                }
                if !feasible(r, &cons)? {
                    return Err(Error::ImproperIntersection(i, j));
                }
            }
        }
        Ok(())
    }

    /// Full validation. Accepts only complete fans.
    pub fn validate(&self) -> Result<FanReport> {
        self.check_strong_convexity()?;
        self.check_generators_extreme()?;
        let is_simplicial = self.is_simplicial();
        if is_simplicial {
            self.check_simplicial_pairs()?;
        }
        if !self.is_complete() {
            return Err(Error::NotComplete);
        }
        let mut multiplicities = BTreeMap::new();
        for (ci, c) in self.max_cones.iter().enumerate() {
            if self.cone_is_simplicial(c) {
                multiplicities.insert(ci, self.multiplicity(c)?);
            }
        }
        let is_smooth = is_simplicial && multiplicities.values().all(|m| m.is_one());
        Ok(FanReport {
            is_simplicial,
            is_smooth,
            is_complete: true,
            multiplicities,
        })
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(Error::NotComplete)
        }
    }
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Named fans from the standard catalog.
///
/// * `projective n` — the fan of complex projective n-space.
/// * `hirzebruch k` — the Hirzebruch surface fan, rays (1,0),(0,1),(-1,k),(0,-1).
/// * `weighted a0 a1 .. an` — weighted projective space, `a0 = 1` required.
/// * `quadric` — the quadric cone (weights (1,1,2) presented with rays
///   (1,0),(-1,2),(0,-1)).
/// * `tetrahedral` — the three-dimensional tetrahedral-complex fan over the
///   lattice generated by (±1,±1,±1), rebased to that lattice.
pub fn catalog(name: &str, params: &[i64]) -> Result<Fan> {
    match name {
        "projective" => {
            let [n] = params else {
                return Err(Error::Usage("projective expects one parameter n".into()));
            };
            let n = usize::try_from(*n)
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::Usage("projective: n must be >= 1".into()))?;
            let mut rays = vec![vec![big(-1); n]];
            for i in 0..n {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::one();
                rays.push(e);
            }
            let cones = k_subsets(n + 1, n);
            Fan::new(n, rays, cones)
        }
        "hirzebruch" => {
            let [k] = params else {
                return Err(Error::Usage("hirzebruch expects one parameter k".into()));
            };
            if *k < 0 {
                return Err(Error::Usage("hirzebruch: k must be >= 0".into()));
            }
            let rays = vec![
                vec![big(1), big(0)],
                vec![big(0), big(1)],
                vec![big(-1), big(*k)],
                vec![big(0), big(-1)],
            ];
            let cones = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]];
            Fan::new(2, rays, cones)
        }
        "weighted" => {
            if params.len() < 2 {
                return Err(Error::Usage("weighted expects weights a0 a1 .. an".into()));
            }
            if params[0] != 1 {
                return Err(Error::Usage("weighted: normalization requires a0 = 1".into()));
            }
            if params.iter().any(|&a| a < 1) {
                return Err(Error::Usage("weighted: weights must be positive".into()));
            }
            let n = params.len() - 1;
            let mut rays = Vec::with_capacity(n + 1);
            for i in 0..n {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::one();
                rays.push(e);
            }
            rays.push(params[1..].iter().map(|&a| big(-a)).collect());
            let cones = k_subsets(n + 1, n);
            Fan::new(n, rays, cones)
        }
        "quadric" => {
            let rays = vec![
                vec![big(1), big(0)],
                vec![big(-1), big(2)],
                vec![big(0), big(-1)],
            ];
            let cones = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
            Fan::new(2, rays, cones)
        }
        "tetrahedral" => {
            // rays v12, v13, v23, v123, v12', v13', v23', v123' in ambient
            // coordinates; the lattice is the one generated by (±1,±1,±1)
            let amb: Vec<Vec<BigInt>> = [
                [1, 1, -1],
                [1, -1, 1],
                [-1, 1, 1],
                [1, 1, 1],
                [-1, -1, 1],
                [-1, 1, -1],
                [1, -1, -1],
                [-1, -1, -1],
            ]
            .iter()
            .map(|r| r.iter().map(|&x| big(x)).collect())
            .collect();
            let basis_gens = IntMatrix::from_rows(&amb, 3);
            let sub = Sublattice::from_generators(3, &basis_gens);
            let basis = sub.basis().clone();
            // six cones over the cube facets
            let cones = vec![
                vec![0, 1, 3, 6], // x = +1
                vec![2, 4, 5, 7], // x = -1
                vec![0, 2, 3, 5], // y = +1
                vec![1, 4, 6, 7], // y = -1
                vec![1, 2, 3, 4], // z = +1
                vec![0, 5, 6, 7], // z = -1
            ];
            let note = {
                let mut s = String::from("rays rebased to the lattice basis ");
                for r in 0..basis.rows() {
                    if r > 0 {
                        s.push_str(", ");
                    }
                    s.push('(');
                    for c in 0..basis.cols() {
                        if c > 0 {
                            s.push(',');
                        }
                        s.push_str(&alloc::format!("{}", basis.at(r, c)));
                    }
                    s.push(')');
                }
                s
            };
            Fan::new_rebased(3, amb, &basis, cones, Some(note))
        }
        other => Err(Error::Usage(alloc::format!("unknown catalog fan: {other}"))),
    }
}

/// Apply a unimodular change of lattice basis to every ray: `v ↦ v · t`.
pub fn rebase_by(fan: &Fan, t: &IntMatrix) -> Result<Fan> {
    let rays: Vec<Vec<BigInt>> = fan.rays().iter().map(|v| t.apply_row(v)).collect();
    Fan::new(
        fan.rank(),
        rays,
        fan.max_cones().iter().map(|c| c.iter().copied().collect()).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn cp2_validates_smooth_complete() {
        let f = catalog("projective", &[2]).unwrap();
        assert_eq!(f.rays()[0], alloc::vec![big(-1), big(-1)]);
        let rep = f.validate().unwrap();
        assert!(rep.is_simplicial && rep.is_smooth && rep.is_complete);
    }

    #[test]
    fn cpn_smooth_up_to_four() {
        for n in 1..=4 {
            let f = catalog("projective", &[n]).unwrap();
            let rep = f.validate().unwrap();
            assert!(rep.is_smooth, "CP^{n} must be smooth");
        }
    }

    #[test]
    fn quadric_is_singular_complete() {
        let f = catalog("quadric", &[]).unwrap();
        let rep = f.validate().unwrap();
        assert!(rep.is_simplicial);
        assert!(!rep.is_smooth);
        assert!(rep.is_complete);
        assert_eq!(f.multiplicity(&set(&[0, 1])).unwrap(), big(2));
    }

    #[test]
    fn hirzebruch_smooth_any_k() {
        for k in 0..=3 {
            let f = catalog("hirzebruch", &[k]).unwrap();
            assert!(f.validate().unwrap().is_smooth);
        }
    }

    #[test]
    fn weighted_123_multiplicities() {
        let f = catalog("weighted", &[1, 2, 3]).unwrap();
        assert_eq!(f.rays()[2], alloc::vec![big(-2), big(-3)]);
        let rep = f.validate().unwrap();
        assert!(!rep.is_smooth);
        assert_eq!(f.multiplicity(&set(&[1, 2])).unwrap(), big(2));
        assert_eq!(f.multiplicity(&set(&[0, 2])).unwrap(), big(3));
    }

    #[test]
    fn weighted_112_has_multiplicity_two() {
        let f = catalog("weighted", &[1, 1, 2]).unwrap();
        let rep = f.validate().unwrap();
        assert!(!rep.is_smooth);
        let max = rep.multiplicities.values().max().cloned().unwrap();
        assert_eq!(max, big(2));
    }

    #[test]
    fn tetrahedral_complete_not_simplicial() {
        let f = catalog("tetrahedral", &[]).unwrap();
        let rep = f.validate().unwrap();
        assert!(!rep.is_simplicial);
        assert!(!rep.is_smooth);
        assert!(rep.is_complete);
        assert!(f.lattice_note().is_some());
    }

    #[test]
    fn single_ray_fan_not_complete() {
        let f = Fan::new(1, alloc::vec![alloc::vec![big(1)]], alloc::vec![alloc::vec![0]]).unwrap();
        assert!(!f.is_complete());
        assert_eq!(f.validate(), Err(Error::NotComplete));
    }

    #[test]
    fn p1_fan_complete() {
        let f = Fan::new(
            1,
            alloc::vec![alloc::vec![big(1)], alloc::vec![big(-1)]],
            alloc::vec![alloc::vec![0], alloc::vec![1]],
        )
        .unwrap();
        assert!(f.is_complete());
    }

    #[test]
    fn minimal_nonfaces_cp2() {
        let f = catalog("projective", &[2]).unwrap();
        let nf = f.minimal_nonfaces();
        assert_eq!(nf, alloc::vec![set(&[0, 1, 2])]);
    }

    #[test]
    fn minimal_nonfaces_hirzebruch() {
        let f = catalog("hirzebruch", &[2]).unwrap();
        let nf = f.minimal_nonfaces();
        assert_eq!(nf, alloc::vec![set(&[0, 2]), set(&[1, 3])]);
    }

    #[test]
    fn minimal_nonfaces_quadric() {
        let f = catalog("quadric", &[]).unwrap();
        assert_eq!(f.minimal_nonfaces(), alloc::vec![set(&[0, 1, 2])]);
    }

    #[test]
    fn multiplicity_invariant_under_rebase() {
        let f = catalog("weighted", &[1, 2, 3]).unwrap();
        // unimodular substitution
        let t = IntMatrix::from_i64(2, 2, &[1, 1, 0, 1]);
        let g = rebase_by(&f, &t).unwrap();
        for (c, d) in f.max_cones().iter().zip(g.max_cones()) {
            assert_eq!(f.multiplicity(c).unwrap(), g.multiplicity(d).unwrap());
        }
        let rf = f.validate().unwrap();
        let rg = g.validate().unwrap();
        assert_eq!(rf, rg);
    }

    #[test]
    fn rays_are_made_primitive() {
        let f = Fan::new(
            1,
            alloc::vec![alloc::vec![big(2)], alloc::vec![big(-3)]],
            alloc::vec![alloc::vec![0], alloc::vec![1]],
        )
        .unwrap();
        assert_eq!(f.ray(0), &[big(1)]);
        assert_eq!(f.ray(1), &[big(-1)]);
    }

    #[test]
    fn zero_ray_rejected() {
        let e = Fan::new(1, alloc::vec![alloc::vec![big(0)]], alloc::vec![alloc::vec![0]]);
        assert_eq!(e.unwrap_err(), Error::ZeroRay);
    }

    #[test]
    fn overlapping_cones_rejected() {
        // second cone sits inside the first: intersection is not a face
        let f = Fan::new(
            2,
            alloc::vec![
                alloc::vec![big(1), big(0)],
                alloc::vec![big(0), big(1)],
                alloc::vec![big(1), big(2)],
            ],
            alloc::vec![alloc::vec![0, 1], alloc::vec![0, 2]],
        )
        .unwrap();
        assert_eq!(f.validate(), Err(Error::ImproperIntersection(0, 1)));
    }

    #[test]
    fn cone_with_line_rejected() {
        let f = Fan::new(
            2,
            alloc::vec![
                alloc::vec![big(1), big(1)],
                alloc::vec![big(-1), big(-1), ],
                alloc::vec![big(1), big(0)],
            ],
            alloc::vec![alloc::vec![0, 1, 2]],
        )
        .unwrap();
        assert_eq!(f.validate(), Err(Error::NotStronglyConvex(0)));
    }
}
