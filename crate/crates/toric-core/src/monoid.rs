//! The partial monoid of valid labels.
//!
//! A label is valid when some representative is nonnegative and supported in
//! a single cone. Two membership semantics are provided: `Cone` checks the
//! support condition by exact rational feasibility per maximal cone;
//! `Resolution` requires the label to be the pushforward of a nonnegative
//! integer label supported in a single cone of a desingularization. The two
//! agree on smooth fans; for singular fans the resolution semantics is the
//! one under which collision orders are finite, and is the default.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::divisors::{solve_row_combination, Label, SupportLattice};
use crate::error::{Error, Result};
use crate::feasibility::{feasible, Constraint, Rel};
use crate::lattice::{rat_rank, rat_solve_columns, RatLattice};
use crate::resolve::{desingularize, ResolutionChain};
use crate::{rat_of, RatVec};

/// Membership semantics for the partial monoid.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Semantics {
    Cone,
    Resolution,
}

impl Semantics {
    /// Resolution semantics for singular fans, either for smooth ones.
    pub fn default_for(fan: &crate::fan::Fan) -> Semantics {
        if fan.is_smooth() {
            Semantics::Cone
        } else {
            Semantics::Resolution
        }
    }
}

/// Minimal generating set of `cone ∩ lattice` for a pointed rational cone.
///
/// Candidates are gathered from the fundamental parallelepipeds of all
/// full-dimensional simplicial subcones spanned by generator subsets (these
/// cover every triangulation), then reduced to the irreducible elements.
pub fn hilbert_basis_points(generators: &[RatVec], lattice: &RatLattice) -> Result<Vec<RatVec>> {
    let gens: Vec<RatVec> = generators
        .iter()
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    // lattice coordinates, scaled primitive
    let mut ys: Vec<Vec<BigInt>> = Vec::new();
    for g in &gens {
        let y = lattice
            .coords(g)
            .ok_or_else(|| Error::Usage("cone generator outside the lattice span".into()))?;
        let mut denom = BigInt::one();
        for c in &y {
            denom = denom.lcm(c.denom());
        }
        let iy: Vec<BigInt> = y.iter().map(|c| (c * rat_of(&denom)).to_integer()).collect();
        let prim = crate::lattice::primitive(&iy)?;
        if !ys.contains(&prim) {
            ys.push(prim);
        }
    }
    let k = lattice.rank();
    // pointedness: no nonzero nonnegative combination vanishes
    {
        let n = ys.len();
        let mut cons = Vec::new();
        for i in 0..n {
            let mut coeffs = vec![BigRational::zero(); n];
            coeffs[i] = BigRational::one();
            cons.push(Constraint::new(coeffs, BigRational::zero(), Rel::Ge));
        }
        cons.push(Constraint::new(
            vec![BigRational::one(); n],
            -BigRational::one(),
            Rel::Eq,
        ));
        for c in 0..k {
            let coeffs: RatVec = ys.iter().map(|y| rat_of(&y[c])).collect();
            cons.push(Constraint::new(coeffs, BigRational::zero(), Rel::Eq));
        }
        if feasible(n, &cons)? {
            return Err(Error::Usage("cone is not pointed".into()));
        }
    }
    let ys_rat: Vec<RatVec> = ys
        .iter()
        .map(|y| y.iter().map(rat_of).collect())
        .collect();
    let d = rat_rank(&ys_rat);
    let mut candidates: BTreeSet<Vec<BigInt>> = ys.iter().cloned().collect();
    // box points of every independent d-subset
    let n = ys.len();
    for mask in 1usize..(1 << n) {
        if (mask as u32).count_ones() as usize != d {
            continue;
        }
        let sel: Vec<usize> = (0..n).filter(|p| mask & (1 << p) != 0).collect();
        let rows: Vec<RatVec> = (0..k)
            .map(|c| sel.iter().map(|&p| rat_of(&ys[p][c])).collect())
            .collect();
        if rat_rank(&rows) != d {
            continue;
        }
        for p in box_points(&ys, &sel, k)? {
            candidates.insert(p);
        }
    }
    candidates.remove(&vec![BigInt::zero(); k]);
    // irreducible elements only
    let all: Vec<Vec<BigInt>> = candidates.iter().cloned().collect();
    let mut keep: Vec<Vec<BigInt>> = Vec::new();
    'cand: for c in &all {
        for a in &all {
            if a == c {
                continue;
            }
            let diff: Vec<BigInt> = c.iter().zip(a).map(|(x, y)| x - y).collect();
            if diff.iter().all(|x| x.is_zero()) {
                continue;
            }
            if in_cone(&ys, &diff)? {
                continue 'cand;
            }
        }
        keep.push(c.clone());
    }
    // back to ambient coordinates
    let basis = lattice.basis_rows();
    let ambient = lattice.ambient_rank();
    let mut out: Vec<RatVec> = keep
        .into_iter()
        .map(|y| {
            let mut x = vec![BigRational::zero(); ambient];
            for (i, yi) in y.iter().enumerate() {
                if yi.is_zero() {
                    continue;
                }
                for c in 0..ambient {
                    x[c] += rat_of(yi) * &basis[i][c];
                }
            }
            x
        })
        .collect();
    out.sort();
    Ok(out)
}

fn in_cone(gens: &[Vec<BigInt>], p: &[BigInt]) -> Result<bool> {
    let n = gens.len();
    let k = p.len();
    let mut cons = Vec::new();
    for i in 0..n {
        let mut coeffs = vec![BigRational::zero(); n];
        coeffs[i] = BigRational::one();
        cons.push(Constraint::new(coeffs, BigRational::zero(), Rel::Ge));
    }
    for c in 0..k {
        let coeffs: RatVec = gens.iter().map(|g| rat_of(&g[c])).collect();
        cons.push(Constraint::new(coeffs, -rat_of(&p[c]), Rel::Eq));
    }
    feasible(n, &cons)
}

fn box_points(
    ys: &[Vec<BigInt>],
    sel: &[usize],
    k: usize,
) -> Result<Vec<Vec<BigInt>>> {
    let mut lo = vec![BigInt::zero(); k];
    let mut hi = vec![BigInt::zero(); k];
    for &p in sel {
        for c in 0..k {
            let e = &ys[p][c];
            if e.is_negative() {
                lo[c] += e;
            } else {
                hi[c] += e;
            }
        }
    }
    let ranges: Vec<(i64, i64)> = lo
        .iter()
        .zip(&hi)
        .map(|(a, b)| {
            let a = a.to_i64().ok_or_else(|| Error::Resource("box bound overflow".into()))?;
            let b = b.to_i64().ok_or_else(|| Error::Resource("box bound overflow".into()))?;
            Ok((a, b))
        })
        .collect::<Result<_>>()?;
    let volume: i128 = ranges.iter().map(|(a, b)| (b - a + 1) as i128).product();
    if volume > 4_000_000 {
        return Err(Error::Resource("fundamental parallelepiped too large".into()));
    }
    let rows: Vec<RatVec> = (0..k)
        .map(|c| sel.iter().map(|&p| rat_of(&ys[p][c])).collect())
        .collect();
    let mut out = Vec::new();
    let mut off = vec![0i64; k];
    'outer: loop {
        let p: Vec<BigInt> = off
            .iter()
            .zip(&ranges)
            .map(|(&o, (a, _))| BigInt::from(o + a))
            .collect();
        let target: RatVec = p.iter().map(rat_of).collect();
        if let Some(t) = rat_solve_columns(&rows, &target) {
            let consistent = (0..k).all(|c| {
                let mut s = BigRational::zero();
                for (j, &pi) in sel.iter().enumerate() {
                    s += &t[j] * rat_of(&ys[pi][c]);
                }
                s == target[c]
            });
            if consistent
                && t.iter().all(|x| !x.is_negative() && x < &BigRational::one())
                && p.iter().any(|x| !x.is_zero())
            {
                out.push(p);
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                break 'outer;
            }
            off[i] += 1;
            if off[i] + ranges[i].0 <= ranges[i].1 {
                break;
            }
            off[i] = 0;
            i += 1;
        }
    }
    Ok(out)
}

/// The partial monoid of valid labels of a fan under a chosen semantics.
pub struct PartialMonoid<'a> {
    support: &'a SupportLattice,
    semantics: Semantics,
    chain: Option<ResolutionChain>,
    /// per maximal cone of the relevant fan, the generating labels
    cone_generators: Vec<Vec<Label>>,
    /// union of the per-cone generating sets
    pool: Vec<Label>,
    /// grading: ray values of a support function positive on the pool
    grading: Vec<BigInt>,
    simples: Vec<Label>,
}

impl<'a> PartialMonoid<'a> {
    /// Build the monoid; for resolution semantics a desingularization chain
    /// is computed with the deterministic policy.
    pub fn new(support: &'a SupportLattice, semantics: Semantics) -> Result<PartialMonoid<'a>> {
        let chain = match semantics {
            Semantics::Cone => None,
            Semantics::Resolution => Some(desingularize(support.fan())?),
        };
        Self::with_chain(support, semantics, chain)
    }

    /// Build with an explicit chain (resolution semantics only).
    pub fn with_chain(
        support: &'a SupportLattice,
        semantics: Semantics,
        chain: Option<ResolutionChain>,
    ) -> Result<PartialMonoid<'a>> {
        let cone_generators: Vec<Vec<Label>> = match semantics {
            Semantics::Cone => {
                let fan = support.fan();
                let u = fan.n_rays();
                let mut per_cone = Vec::new();
                for cone in fan.max_cones() {
                    let gens: Vec<RatVec> = cone
                        .iter()
                        .map(|&i| {
                            let mut e = vec![BigRational::zero(); u];
                            e[i] = BigRational::one();
                            support.project(&e).coords().to_vec()
                        })
                        .collect();
                    let hb = hilbert_basis_points(&gens, support.dual())?;
                    per_cone.push(hb.into_iter().map(Label::from_canonical).collect());
                }
                per_cone
            }
            Semantics::Resolution => {
                let chain = chain.as_ref().expect("resolution semantics carries a chain");
                let top = chain.final_fan();
                let u_top = top.n_rays();
                let mut per_cone = Vec::new();
                for cone in top.max_cones() {
                    let mut gens = Vec::new();
                    for &i in cone {
                        let mut e = vec![BigRational::zero(); u_top];
                        e[i] = BigRational::one();
                        gens.push(chain.pushforward(support, &e)?);
                    }
                    per_cone.push(gens);
                }
                per_cone
            }
        };
        let mut pool: Vec<Label> = Vec::new();
        for cg in &cone_generators {
            for l in cg {
                if !l.is_zero() && !pool.contains(l) {
                    pool.push(l.clone());
                }
            }
        }
        pool.sort();
        let grading = find_grading(support, &pool)?;
        let mut pm = PartialMonoid {
            support,
            semantics,
            chain,
            cone_generators,
            pool,
            grading,
            simples: Vec::new(),
        };
        pm.simples = pm.compute_simples()?;
        Ok(pm)
    }

    pub fn support(&self) -> &SupportLattice {
        self.support
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    pub fn chain(&self) -> Option<&ResolutionChain> {
        self.chain.as_ref()
    }

    /// Ray values of the grading support function.
    pub fn grading(&self) -> &[BigInt] {
        &self.grading
    }

    pub fn grade(&self, l: &Label) -> BigRational {
        l.pair(&self.grading)
    }

    pub fn simple_labels(&self) -> &[Label] {
        &self.simples
    }

    /// Union of the per-cone generating labels.
    pub fn generator_pool(&self) -> &[Label] {
        &self.pool
    }

    /// Validity of a label under the active semantics.
    pub fn is_valid(&self, l: &Label) -> Result<bool> {
        if l.is_zero() {
            return Ok(true);
        }
        match self.semantics {
            Semantics::Cone => {
                for cone in self.support.fan().max_cones() {
                    if self.valid_in_cone(cone, l)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Semantics::Resolution => Ok(self.resolution_coefficients(l).is_some()),
        }
    }

    /// Exact feasibility: a representative of `l` that is nonnegative and
    /// supported on the given cone.
    fn valid_in_cone(&self, cone: &BTreeSet<usize>, l: &Label) -> Result<bool> {
        let idx: Vec<usize> = cone.iter().copied().collect();
        let n = idx.len();
        let k = self.support.rank();
        let mut cons = Vec::new();
        for i in 0..n {
            let mut coeffs = vec![BigRational::zero(); n];
            coeffs[i] = BigRational::one();
            cons.push(Constraint::new(coeffs, BigRational::zero(), Rel::Ge));
        }
        // same pairings with every support-lattice basis row
        for row in 0..k {
            let h = self.support.lattice().basis().row(row);
            let coeffs: RatVec = idx.iter().map(|&i| rat_of(&h[i])).collect();
            let target = l.pair(h);
            cons.push(Constraint::new(coeffs, -target, Rel::Eq));
        }
        feasible(n, &cons)
    }

    /// For resolution semantics: the nonnegative integer coefficients of `l`
    /// over the generators of some cone of the resolved fan, if any.
    fn resolution_coefficients(&self, l: &Label) -> Option<(usize, Vec<BigInt>)> {
        for (ci, gens) in self.cone_generators.iter().enumerate() {
            let rows: Vec<RatVec> = gens.iter().map(|g| g.coords().to_vec()).collect();
            if let Some(t) = solve_row_combination(&rows, l.coords()) {
                // verify (solver ignores inconsistent overdetermined parts)
                let mut acc = vec![BigRational::zero(); l.coords().len()];
                for (j, tc) in t.iter().enumerate() {
                    for (c, a) in acc.iter_mut().enumerate() {
                        *a += tc * &rows[j][c];
                    }
                }
                if acc != l.coords() {
                    continue;
                }
                if t.iter().all(|x| !x.is_negative() && x.is_integer()) {
                    return Some((ci, t.into_iter().map(|x| x.to_integer()).collect()));
                }
            }
        }
        None
    }

    /// All distinct lifts of a label to exponent vectors over the resolved
    /// rays. Resolution semantics only; lifts are unique for every fan in
    /// the catalog.
    pub fn lifts(&self, l: &Label) -> Result<Vec<Vec<BigInt>>> {
        let chain = self
            .chain
            .as_ref()
            .ok_or_else(|| Error::Usage("lifts exist under resolution semantics only".into()))?;
        let top_fan = chain.final_fan();
        let u_top = top_fan.n_rays();
        let mut out: Vec<Vec<BigInt>> = Vec::new();
        for (ci, gens) in self.cone_generators.iter().enumerate() {
            let rows: Vec<RatVec> = gens.iter().map(|g| g.coords().to_vec()).collect();
            let Some(t) = solve_row_combination(&rows, l.coords()) else {
                continue;
            };
            let mut acc = vec![BigRational::zero(); l.coords().len()];
            for (j, tc) in t.iter().enumerate() {
                for (c, a) in acc.iter_mut().enumerate() {
                    *a += tc * &rows[j][c];
                }
            }
            if acc != l.coords() || t.iter().any(|x| x.is_negative() || !x.is_integer()) {
                continue;
            }
            let cone = &top_fan.max_cones()[ci];
            let mut lift = vec![BigInt::zero(); u_top];
            for (&ray, tc) in cone.iter().zip(&t) {
                lift[ray] = tc.to_integer();
            }
            if !out.contains(&lift) {
                out.push(lift);
            }
        }
        out.sort();
        Ok(out)
    }

    /// May two points with these labels collide? Collisions add labels, and
    /// a collision is prohibited exactly when the sum is not a valid label.
    /// Under the polynomial-tuple model of the configuration space this is
    /// the collision rule for every projective fan.
    pub fn merge_allowed(&self, a: &Label, b: &Label) -> Result<bool> {
        if a.is_zero() || b.is_zero() {
            return Ok(true);
        }
        self.is_valid(&a.add(b))
    }

    /// Least positive integer `n` with `n·l` valid, exactly; `None` when no
    /// multiple is valid.
    pub fn least_valid_multiple(&self, l: &Label) -> Result<Option<BigInt>> {
        if l.is_zero() {
            return Ok(Some(BigInt::one()));
        }
        match self.semantics {
            Semantics::Cone => {
                // validity is scale-invariant; integrality is automatic for
                // lattice labels
                for cone in self.support.fan().max_cones() {
                    if self.valid_in_cone(cone, l)? {
                        let n = self
                            .support
                            .denominator_in_dual(l)
                            .expect("labels lie in the dual span");
                        return Ok(Some(n));
                    }
                }
                Ok(None)
            }
            Semantics::Resolution => {
                let mut best: Option<BigInt> = None;
                for gens in &self.cone_generators {
                    let rows: Vec<RatVec> = gens.iter().map(|g| g.coords().to_vec()).collect();
                    let Some(t) = solve_row_combination(&rows, l.coords()) else {
                        continue;
                    };
                    let mut acc = vec![BigRational::zero(); l.coords().len()];
                    for (j, tc) in t.iter().enumerate() {
                        for (c, a) in acc.iter_mut().enumerate() {
                            *a += tc * &rows[j][c];
                        }
                    }
                    if acc != l.coords() || t.iter().any(|x| x.is_negative()) {
                        continue;
                    }
                    let mut n = BigInt::one();
                    for x in &t {
                        n = n.lcm(x.denom());
                    }
                    best = Some(match best {
                        None => n,
                        Some(b) => core::cmp::min(b, n),
                    });
                }
                Ok(best)
            }
        }
    }

    /// All nonzero valid labels of grade at most `bound`.
    pub fn valid_labels_up_to(&self, bound: &BigRational, cap: usize) -> Result<Vec<Label>> {
        let mut out: BTreeSet<Label> = BTreeSet::new();
        let zero = Label::zero(self.support.fan().n_rays());
        for gens in &self.cone_generators {
            // generators sorted for deterministic traversal
            let mut gs: Vec<&Label> = gens.iter().collect();
            gs.sort();
            gs.dedup();
            self.extend_combinations(&gs, 0, &zero, bound, &mut out, cap)?;
        }
        Ok(out.into_iter().collect())
    }

    fn extend_combinations(
        &self,
        gens: &[&Label],
        from: usize,
        acc: &Label,
        budget: &BigRational,
        out: &mut BTreeSet<Label>,
        cap: usize,
    ) -> Result<()> {
        if out.len() > cap {
            return Err(Error::Resource("valid-label enumeration cap".into()));
        }
        if !acc.is_zero() {
            out.insert(acc.clone());
        }
        for (j, g) in gens.iter().enumerate().skip(from) {
            let grade = self.grade(g);
            debug_assert!(grade.is_positive());
            if &grade > budget {
                continue;
            }
            let next = acc.add(g);
            let rem = budget - &grade;
            self.extend_combinations(gens, j, &next, &rem, out, cap)?;
        }
        Ok(())
    }

    fn compute_simples(&self) -> Result<Vec<Label>> {
        let mut max_grade = BigRational::zero();
        for c in &self.pool {
            let g = self.grade(c);
            if g > max_grade {
                max_grade = g;
            }
        }
        let all = self.valid_labels_up_to(&max_grade, 2_000_000)?;
        let mut simples = Vec::new();
        'cand: for c in &self.pool {
            let gc = self.grade(c);
            for a in &all {
                if self.grade(a) >= gc {
                    break; // sorted ascending? not guaranteed; keep scanning
                }
            }
            for a in &all {
                if self.grade(a) >= gc {
                    continue;
                }
                let rest = c.sub(a);
                if rest.is_zero() {
                    continue;
                }
                if self.is_valid(&rest)? {
                    continue 'cand;
                }
            }
            simples.push(c.clone());
        }
        simples.sort();
        simples.dedup();
        Ok(simples)
    }
}

/// Search for a support function with positive pairing against every label
/// in `pool`, over growing coefficient caps in a deterministic order.
pub fn find_grading(support: &SupportLattice, pool: &[Label]) -> Result<Vec<BigInt>> {
    let k = support.rank();
    let u = support.fan().n_rays();
    for cap in [1i64, 2, 4, 8, 16, 32] {
        let mut a = vec![-cap; k];
        loop {
            let mut h = vec![BigInt::zero(); u];
            for (row, &coef) in a.iter().enumerate() {
                if coef != 0 {
                    for c in 0..u {
                        h[c] += BigInt::from(coef) * support.lattice().basis().at(row, c);
                    }
                }
            }
            if pool.iter().all(|l| l.pair(&h).is_positive()) {
                return Ok(h);
            }
            let mut i = 0;
            loop {
                if i == k {
                    break;
                }
                a[i] += 1;
                if a[i] <= cap {
                    break;
                }
                a[i] = -cap;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
    Err(Error::NoPositiveGrading)
}

/// Hilbert basis of the positive span of a cone's rays inside the dual
/// lattice, as labels.
pub fn cone_hilbert_basis(
    support: &SupportLattice,
    cone: &BTreeSet<usize>,
) -> Result<Vec<Label>> {
    let u = support.fan().n_rays();
    let gens: Vec<RatVec> = cone
        .iter()
        .map(|&i| {
            let mut e = vec![BigRational::zero(); u];
            e[i] = BigRational::one();
            support.project(&e).coords().to_vec()
        })
        .collect();
    Ok(hilbert_basis_points(&gens, support.dual())?
        .into_iter()
        .map(Label::from_canonical)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::big;
    use crate::fan::catalog;
    use crate::lattice::{IntMatrix, Sublattice};

    fn support(name: &str, params: &[i64]) -> SupportLattice {
        SupportLattice::new(&catalog(name, params).unwrap()).unwrap()
    }

    fn half() -> BigRational {
        BigRational::new(big(1), big(2))
    }

    #[test]
    fn hilbert_basis_of_smooth_quadrant() {
        let lat = RatLattice::from_integer(Sublattice::full(2));
        let gens = alloc::vec![
            alloc::vec![crate::rat(1), crate::rat(0)],
            alloc::vec![crate::rat(0), crate::rat(1)],
        ];
        let hb = hilbert_basis_points(&gens, &lat).unwrap();
        let mut expect = gens;
        expect.sort();
        assert_eq!(hb, expect);
    }

    #[test]
    fn hilbert_basis_rejects_non_pointed_cone() {
        let lat = RatLattice::from_integer(Sublattice::full(2));
        let gens = alloc::vec![
            alloc::vec![crate::rat(1), crate::rat(0)],
            alloc::vec![crate::rat(-1), crate::rat(0)],
        ];
        assert!(hilbert_basis_points(&gens, &lat).is_err());
    }

    #[test]
    fn quadric_singular_cone_hilbert_basis() {
        let s = support("quadric", &[]);
        let cone: BTreeSet<usize> = [0usize, 1].into_iter().collect();
        let hb = cone_hilbert_basis(&s, &cone).unwrap();
        let coords: Vec<Vec<BigRational>> =
            hb.iter().map(|l| l.coords().to_vec()).collect();
        assert_eq!(
            coords,
            alloc::vec![
                alloc::vec![crate::rat(0), crate::rat(1), crate::rat(0)],
                alloc::vec![half(), half(), crate::rat(0)],
                alloc::vec![crate::rat(1), crate::rat(0), crate::rat(0)],
            ]
        );
    }

    #[test]
    fn p123_cone_hilbert_basis_has_four_elements() {
        let s = support("weighted", &[1, 2, 3]);
        let cone: BTreeSet<usize> = [0usize, 2].into_iter().collect();
        let hb = cone_hilbert_basis(&s, &cone).unwrap();
        assert_eq!(hb.len(), 4);
        // brute check: all irreducible dual-lattice points of the sector
        for l in &hb {
            assert!(s.dual().contains(l.coords()));
        }
    }

    #[test]
    fn quadric_simples_match_appendix_list() {
        let s = support("quadric", &[]);
        for sem in [Semantics::Cone, Semantics::Resolution] {
            let pm = PartialMonoid::new(&s, sem).unwrap();
            let simples: Vec<Vec<BigRational>> = pm
                .simple_labels()
                .iter()
                .map(|l| l.coords().to_vec())
                .collect();
            assert_eq!(
                simples,
                alloc::vec![
                    alloc::vec![crate::rat(0), crate::rat(0), crate::rat(1)],
                    alloc::vec![crate::rat(0), crate::rat(1), crate::rat(0)],
                    alloc::vec![half(), half(), crate::rat(0)],
                    alloc::vec![crate::rat(1), crate::rat(0), crate::rat(0)],
                ],
                "{sem:?}"
            );
        }
    }

    #[test]
    fn smooth_fan_simples_are_unit_labels() {
        for (name, params) in [("projective", &[2][..]), ("projective", &[3]), ("hirzebruch", &[2])] {
            let s = support(name, params);
            let cone = PartialMonoid::new(&s, Semantics::Cone).unwrap();
            let res = PartialMonoid::new(&s, Semantics::Resolution).unwrap();
            let u = s.fan().n_rays();
            let units: Vec<Label> = (0..u)
                .map(|i| {
                    let mut e = alloc::vec![BigRational::zero(); u];
                    e[i] = BigRational::one();
                    s.label(&e).unwrap()
                })
                .collect();
            let mut expect = units;
            expect.sort();
            assert_eq!(cone.simple_labels(), &expect[..], "{name} cone");
            assert_eq!(res.simple_labels(), &expect[..], "{name} resolution");
        }
    }

    #[test]
    fn tetrahedral_simples_match_example_list() {
        let s = support("tetrahedral", &[]);
        let pm = PartialMonoid::new(&s, Semantics::Resolution).unwrap();
        let listed: Vec<Vec<i64>> = alloc::vec![
            alloc::vec![1, 1, 0, -1],
            alloc::vec![1, 0, 1, -1],
            alloc::vec![0, 1, 1, -1],
            alloc::vec![1, 1, 1, -2],
            alloc::vec![0, 0, 1, 0],
            alloc::vec![0, 1, 0, 0],
            alloc::vec![1, 0, 0, 0],
            alloc::vec![0, 0, 0, 1],
        ];
        let mut expect: Vec<Label> = listed
            .into_iter()
            .map(|v| {
                let mut c = alloc::vec![BigRational::zero(); 8];
                for (i, x) in v.into_iter().enumerate() {
                    c[i] = crate::rat(x);
                }
                s.label(&c).unwrap()
            })
            .collect();
        expect.sort();
        assert_eq!(pm.simple_labels(), &expect[..]);
    }

    #[test]
    fn validity_examples_quadric() {
        let s = support("quadric", &[]);
        for sem in [Semantics::Cone, Semantics::Resolution] {
            let pm = PartialMonoid::new(&s, sem).unwrap();
            let l = s
                .label(&[half(), half(), BigRational::zero()])
                .unwrap();
            assert!(pm.is_valid(&l).unwrap(), "{sem:?}");
            let l = s.label(&[half(), half(), crate::rat(1)]).unwrap();
            assert!(!pm.is_valid(&l).unwrap(), "{sem:?}");
            assert!(pm.is_valid(&Label::zero(3)).unwrap());
        }
    }

    #[test]
    fn cone_validity_scale_invariant() {
        let s = support("quadric", &[]);
        let pm = PartialMonoid::new(&s, Semantics::Cone).unwrap();
        let valid = s.label(&[crate::rat(2), crate::rat(1), crate::rat(0)]).unwrap();
        let invalid = s.label(&[crate::rat(1), crate::rat(1), crate::rat(1)]).unwrap();
        for n in 1..=4i64 {
            let nn = crate::rat(n);
            assert!(pm.is_valid(&valid.scale(&nn)).unwrap());
            assert!(!pm.is_valid(&invalid.scale(&nn)).unwrap());
        }
    }

    #[test]
    fn resolution_validity_implies_cone_validity() {
        for (name, params) in [("quadric", &[][..]), ("weighted", &[1, 2, 3]), ("tetrahedral", &[])] {
            let s = support(name, params);
            let res = PartialMonoid::new(&s, Semantics::Resolution).unwrap();
            let cone = PartialMonoid::new(&s, Semantics::Cone).unwrap();
            let bound = crate::rat(3);
            let labels = res.valid_labels_up_to(&bound, 500_000).unwrap();
            for l in &labels {
                assert!(cone.is_valid(l).unwrap(), "{name}: {:?}", l.coords());
            }
        }
    }

    #[test]
    fn in_cone_addition_closure() {
        let s = support("quadric", &[]);
        let pm = PartialMonoid::new(&s, Semantics::Cone).unwrap();
        let a = s.label(&[crate::rat(1), crate::rat(1), crate::rat(0)]).unwrap();
        let b = s.label(&[half(), half(), crate::rat(0)]).unwrap();
        assert!(pm.is_valid(&a.add(&b)).unwrap());
    }

    #[test]
    fn grading_positive_on_simples() {
        for (name, params) in [
            ("projective", &[2][..]),
            ("hirzebruch", &[2]),
            ("quadric", &[]),
            ("weighted", &[1, 2, 3]),
            ("tetrahedral", &[]),
        ] {
            let s = support(name, params);
            let sem = Semantics::default_for(s.fan());
            let pm = PartialMonoid::new(&s, sem).unwrap();
            assert!(s.contains(pm.grading()), "{name}: grading is a support function");
            for l in pm.simple_labels() {
                assert!(pm.grade(l).is_positive(), "{name}");
            }
        }
    }

    #[test]
    fn every_small_valid_label_is_a_sum_of_simples() {
        let s = support("quadric", &[]);
        let pm = PartialMonoid::new(&s, Semantics::Resolution).unwrap();
        let labels = pm.valid_labels_up_to(&crate::rat(4), 100_000).unwrap();
        // greedy decomposition into simples must terminate at zero
        for l in &labels {
            let mut rest = l.clone();
            let mut steps = 0;
            'outer: while !rest.is_zero() {
                for sl in pm.simple_labels() {
                    let next = rest.sub(sl);
                    if pm.is_valid(&next).unwrap()
                        && (next.is_zero() || pm.grade(&next).is_positive())
                    {
                        rest = next;
                        steps += 1;
                        if steps > 64 {
                            break 'outer;
                        }
                        continue 'outer;
                    }
                }
                panic!("stuck decomposing {:?}", rest.coords());
            }
            assert!(rest.is_zero());
        }
    }

    #[test]
    fn unit_ray_labels_always_valid() {
        for (name, params) in [("quadric", &[][..]), ("tetrahedral", &[])] {
            let s = support(name, params);
            let u = s.fan().n_rays();
            for sem in [Semantics::Cone, Semantics::Resolution] {
                let pm = PartialMonoid::new(&s, sem).unwrap();
                for i in 0..u {
                    let mut e = alloc::vec![BigRational::zero(); u];
                    e[i] = BigRational::one();
                    let l = s.label(&e).unwrap();
                    assert!(pm.is_valid(&l).unwrap(), "{name} ray {i} {sem:?}");
                }
            }
        }
    }

    #[test]
    fn tetrahedral_cone_condition_matches_displayed_inequalities() {
        // the displayed form: the six quantities x12, x13, x23,
        // x12+x13+x123, x12+x23+x123, x13+x23+x123 are nonnegative and not
        // all positive
        let s = support("tetrahedral", &[]);
        let pm = PartialMonoid::new(&s, Semantics::Cone).unwrap();
        let vals = [-2i64, -1, 0, 1, 2];
        let mut checked = 0usize;
        for &a in &vals {
            for &b in &vals {
                for &c in &vals {
                    for &d in &vals {
                        let mut x = alloc::vec![BigRational::zero(); 8];
                        x[0] = crate::rat(a);
                        x[1] = crate::rat(b);
                        x[2] = crate::rat(c);
                        x[3] = crate::rat(d);
                        let l = s.label(&x).unwrap();
                        let q = [
                            a,
                            b,
                            c,
                            a + b + d,
                            a + c + d,
                            b + c + d,
                        ];
                        let expected = q.iter().all(|&v| v >= 0) && q.iter().any(|&v| v == 0);
                        assert_eq!(pm.is_valid(&l).unwrap(), expected, "{:?}", (a, b, c, d));
                        checked += 1;
                    }
                }
            }
        }
        assert_eq!(checked, 625);
    }

    #[test]
    fn least_valid_multiple_examples() {
        let s = support("quadric", &[]);
        let pm = PartialMonoid::new(&s, Semantics::Resolution).unwrap();
        // h + σ3 never becomes valid
        let l = s.label(&[half(), half(), crate::rat(1)]).unwrap();
        assert_eq!(pm.least_valid_multiple(&l).unwrap(), None);
        // a valid label has least multiple 1
        let l = s.label(&[half(), half(), crate::rat(0)]).unwrap();
        assert_eq!(pm.least_valid_multiple(&l).unwrap(), Some(big(1)));
    }

    #[test]
    fn find_grading_rejects_impossible_pool() {
        let s = support("projective", &[2]);
        // a pool containing opposite labels admits no positive grading
        let a = s.label_from_ints(&[1, 0, 0]).unwrap();
        let b = s.label_from_ints(&[-1, 0, 0]).unwrap();
        assert_eq!(
            find_grading(&s, &[a, b]).unwrap_err(),
            Error::NoPositiveGrading
        );
    }
}
