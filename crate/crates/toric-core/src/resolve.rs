//! Toric resolution by star subdivision: simplicialization, ray insertion,
//! desingularization chains, divisor pullback and pushforward along a chain,
//! and enumeration of pushforward fibers.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::divisors::{Label, SupportLattice};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{dot_int, primitive, rat_solve_columns};
use crate::{rat_of, RatVec};

/// One star subdivision. When `inserted` is false the vector was already a
/// ray of the fan and the step only refines the cone structure; the
/// coefficient data is then the trivial `v = 1·v`.
#[derive(Clone, Debug)]
pub struct ResolutionStep {
    pub vector: Vec<BigInt>,
    pub inserted: bool,
    /// Ray indices (in the fan before the step) with positive coefficient.
    pub parent_rays: Vec<usize>,
    /// Coefficients of `vector` over the parent rays; in `[0,1)` for
    /// desingularization insertions.
    pub coefficients: RatVec,
    pub resulting_fan: Fan,
}

impl ResolutionStep {
    /// Index of the ray carrying the new coordinate (the appended ray for
    /// insertions, the existing ray otherwise).
    pub fn ray_index(&self) -> usize {
        match self.inserted {
            true => self.resulting_fan.n_rays() - 1,
            false => self
                .resulting_fan
                .ray_index(&self.vector)
                .expect("existing ray"),
        }
    }
}

/// An ordered sequence of star subdivisions from a base fan to a smooth fan.
#[derive(Clone, Debug)]
pub struct ResolutionChain {
    base: Fan,
    steps: Vec<ResolutionStep>,
}

impl ResolutionChain {
    pub fn new(base: Fan, steps: Vec<ResolutionStep>) -> ResolutionChain {
        ResolutionChain { base, steps }
    }

    pub fn base(&self) -> &Fan {
        &self.base
    }

    pub fn steps(&self) -> &[ResolutionStep] {
        &self.steps
    }

    pub fn final_fan(&self) -> &Fan {
        self.steps.last().map(|s| &s.resulting_fan).unwrap_or(&self.base)
    }

    pub fn fan_at(&self, level: usize) -> &Fan {
        if level == 0 {
            &self.base
        } else {
            &self.steps[level - 1].resulting_fan
        }
    }

    pub fn is_insertion_only(&self) -> bool {
        self.steps.iter().all(|s| s.inserted)
    }

    /// Pushforward of dual coordinates on the final fan down to a canonical
    /// label on the base: each inserted coordinate is distributed over the
    /// parent rays with the insertion weights.
    pub fn pushforward(&self, support: &SupportLattice, top: &[BigRational]) -> Result<Label> {
        assert_eq!(top.len(), self.final_fan().n_rays());
        let mut coords = top.to_vec();
        for step in self.steps.iter().rev() {
            if !step.inserted {
                continue;
            }
            let x = coords.pop().expect("inserted coordinate present");
            for (&p, c) in step.parent_rays.iter().zip(&step.coefficients) {
                coords[p] += c * &x;
            }
        }
        support.label(&coords)
    }

    /// Pullback of a support function on the base to one on the final fan:
    /// the value at an inserted ray is the linear extension on the parent
    /// cone evaluated there.
    pub fn pullback(&self, support: &SupportLattice, h: &[BigInt]) -> Result<Vec<BigInt>> {
        if !support.contains(h) {
            return Err(Error::NotInSupportLattice);
        }
        let mut vals: Vec<BigInt> = h.to_vec();
        for step in &self.steps {
            if !step.inserted {
                continue;
            }
            let mut v = BigRational::zero();
            for (&p, c) in step.parent_rays.iter().zip(&step.coefficients) {
                v += c * rat_of(&vals[p]);
            }
            debug_assert!(v.is_integer());
            vals.push(v.to_integer());
        }
        Ok(vals)
    }
}

/// Star subdivision of every maximal cone containing `v`. `v` must be a
/// primitive lattice point in the support of the fan; it may already be a
/// ray, in which case no ray is added and only non-simplicial cones
/// containing it are refined.
pub fn star_subdivide(fan: &Fan, v: &[BigInt]) -> Result<Fan> {
    if primitive(v)? != v {
        return Err(Error::Usage("vector is not primitive".into()));
    }
    if !fan.support_contains(v)? {
        return Err(Error::OutsideSupport);
    }
    let existing = fan.ray_index(v);
    let mut rays: Vec<Vec<BigInt>> = fan.rays().to_vec();
    let v_idx = match existing {
        Some(i) => i,
        None => {
            rays.push(v.to_vec());
            rays.len() - 1
        }
    };
    let mut cones: Vec<Vec<usize>> = Vec::new();
    for cone in fan.max_cones() {
        let inside = match existing {
            Some(i) if cone.contains(&i) => true,
            Some(_) => false,
            None => fan.cone_contains(cone, v)?,
        };
        if !inside {
            cones.push(cone.iter().copied().collect());
            continue;
        }
        for (normal, on) in fan.facets(cone) {
            if dot_int(&normal, v).is_positive() {
                let mut c: Vec<usize> = on.iter().copied().collect();
                c.push(v_idx);
                c.sort_unstable();
                cones.push(c);
            }
        }
    }
    cones.dedup();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    cones.retain(|c| seen.insert(c.clone()));
    Fan::new(fan.rank(), rays, cones)
}

/// Public ray insertion: the vector must be primitive, inside the support,
/// and not already a ray.
pub fn insert_ray(fan: &Fan, v: &[BigInt]) -> Result<Fan> {
    if fan.ray_index(v).is_some() {
        return Err(Error::AlreadyARay);
    }
    star_subdivide(fan, v)
}

/// Lattice points of the half-open fundamental parallelepiped of a
/// full-dimensional simplicial cone, with their coefficient tuples. The
/// origin is excluded.
fn parallelepiped_points(fan: &Fan, cone: &BTreeSet<usize>) -> Result<Vec<(Vec<BigInt>, RatVec)>> {
    let idx: Vec<usize> = cone.iter().copied().collect();
    let r = fan.rank();
    assert_eq!(idx.len(), r, "cone must be full-dimensional simplicial");
    let mut lo = vec![BigInt::zero(); r];
    let mut hi = vec![BigInt::zero(); r];
    for &i in &idx {
        for c in 0..r {
            let e = &fan.ray(i)[c];
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
    let gen_rows: Vec<RatVec> = (0..r)
        .map(|c| idx.iter().map(|&i| rat_of(&fan.ray(i)[c])).collect())
        .collect();
    let mut out = Vec::new();
    let mut point = vec![0i64; r];
    let mut carry;
    'outer: loop {
        let p: Vec<BigInt> = point
            .iter()
            .zip(&ranges)
            .map(|(&o, (a, _))| BigInt::from(o + a))
            .collect();
        let target: RatVec = p.iter().map(rat_of).collect();
        if let Some(t) = rat_solve_columns(&gen_rows, &target) {
            let in_box = t
                .iter()
                .all(|c| !c.is_negative() && c < &BigRational::one());
            if in_box && p.iter().any(|x| !x.is_zero()) {
                out.push((p, t));
            }
        }
        // odometer
        carry = 0;
        loop {
            if carry == r {
                break 'outer;
            }
            point[carry] += 1;
            if point[carry] + ranges[carry].0 <= ranges[carry].1 {
                break;
            }
            point[carry] = 0;
            carry += 1;
        }
    }
    Ok(out)
}

const MAX_RESOLUTION_STEPS: usize = 512;

/// Resolve the fan: first refine non-simplicial cones by star subdivisions
/// at their own rays (no new extreme directions), then repeatedly insert the
/// cheapest fundamental-parallelepiped point of the singular cone of lowest
/// multiplicity until the fan is smooth.
pub fn desingularize(fan: &Fan) -> Result<ResolutionChain> {
    fan.require_complete()?;
    let mut steps: Vec<ResolutionStep> = Vec::new();
    let mut cur = fan.clone();
    // phase 1: simplicialize along existing rays
    let mut guard = 0usize;
    loop {
        let non_simp = cur
            .max_cones()
            .iter()
            .position(|c| {
                let m = cur.generator_matrix(c);
                crate::lattice::rank(&m) != c.len()
            });
        let Some(ci) = non_simp else { break };
        let ray = *cur.max_cones()[ci].iter().next().expect("nonempty cone");
        let v = cur.ray(ray).to_vec();
        let next = star_subdivide(&cur, &v)?;
        steps.push(ResolutionStep {
            vector: v,
            inserted: false,
            parent_rays: vec![ray],
            coefficients: vec![BigRational::one()],
            resulting_fan: next.clone(),
        });
        cur = next;
        guard += 1;
        if guard > MAX_RESOLUTION_STEPS {
            return Err(Error::ResolutionStuck);
        }
    }
    // phase 2: insert parallelepiped points
    loop {
        let mut singular: Option<(usize, BigInt)> = None;
        for (ci, c) in cur.max_cones().iter().enumerate() {
            let m = cur.multiplicity(c)?;
            if m > BigInt::one() {
                let better = match &singular {
                    None => true,
                    Some((_, best)) => &m < best,
                };
                if better {
                    singular = Some((ci, m));
                }
            }
        }
        let Some((ci, mult_before)) = singular else { break };
        let cone = cur.max_cones()[ci].clone();
        let points = parallelepiped_points(&cur, &cone)?;
        // minimize the coefficient sum, then prefer the lexicographically
        // largest coefficient tuple
        let mut best: Option<(BigRational, RatVec, Vec<BigInt>)> = None;
        for (p, t) in points {
            let sum: BigRational = t.iter().sum();
            let better = match &best {
                None => true,
                Some((bs, bt, _)) => sum < *bs || (sum == *bs && t > *bt),
            };
            if better {
                best = Some((sum, t, p));
            }
        }
        let Some((_, coeffs_full, v)) = best else {
            return Err(Error::ResolutionStuck);
        };
        debug_assert_eq!(primitive(&v)?, v);
        let idx: Vec<usize> = cone.iter().copied().collect();
        let mut parents = Vec::new();
        let mut coefficients = Vec::new();
        for (k, c) in coeffs_full.iter().enumerate() {
            if c.is_positive() {
                parents.push(idx[k]);
                coefficients.push(c.clone());
            }
        }
        let next = star_subdivide(&cur, &v)?;
        // every replacement cone is strictly less singular than its parent
        for nc in next.max_cones() {
            if !cur.max_cones().contains(nc) {
                debug_assert!(next.multiplicity(nc)? < mult_before);
            }
        }
        steps.push(ResolutionStep {
            vector: v,
            inserted: true,
            parent_rays: parents,
            coefficients,
            resulting_fan: next.clone(),
        });
        cur = next;
        guard += 1;
        if guard > MAX_RESOLUTION_STEPS {
            return Err(Error::ResolutionStuck);
        }
    }
    debug_assert!(cur.is_smooth());
    Ok(ResolutionChain::new(fan.clone(), steps))
}

/// An arithmetic progression of admissible inserted-ray degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProgression {
    pub first: BigRational,
    pub step: BigRational,
    /// number of terms is `count + 1` (degrees first, first+step, ...)
    pub count: BigInt,
}

impl DegreeProgression {
    pub fn degrees(&self) -> Vec<BigRational> {
        let mut out = Vec::new();
        let mut d = self.first.clone();
        let mut i = BigInt::zero();
        while i <= self.count {
            out.push(d.clone());
            d += &self.step;
            i += 1;
        }
        out
    }
}

/// Intersect two rational arithmetic progressions `{o + k t : k ∈ Z}`.
fn intersect_progressions(
    a: (BigRational, BigRational),
    b: (BigRational, BigRational),
) -> Option<(BigRational, BigRational)> {
    let (o1, t1) = a;
    let (o2, t2) = b;
    // scale to integers
    let mut den = t1.denom().lcm(t2.denom());
    den = den.lcm(o1.denom());
    den = den.lcm(o2.denom());
    let scale = rat_of(&den);
    let it1 = (&t1 * &scale).to_integer();
    let it2 = (&t2 * &scale).to_integer();
    let delta = ((&o2 - &o1) * &scale).to_integer();
    // solve k * it1 ≡ delta (mod it2)
    let g = it1.gcd(&it2);
    if !(&delta % &g).is_zero() {
        return None;
    }
    let egcd = it1.extended_gcd(&it2);
    debug_assert_eq!(egcd.gcd, g);
    let m = &it2 / &g;
    let k0 = (egcd.x * (&delta / &g)).mod_floor(&m);
    let offset = &o1 + &t1 * rat_of(&k0);
    let period = &t1 * rat_of(&m.abs());
    Some((offset, period))
}

/// Admissible degrees for one insertion step over a target divisor at the
/// lower level: all `d >= 0` such that the lifted vector lies in the upper
/// dual lattice and stays coordinatewise nonnegative. Returns `None` when
/// the fiber over the target is empty.
pub fn step_progression(
    upper: &SupportLattice,
    step: &ResolutionStep,
    target: &Label,
) -> Result<Option<DegreeProgression>> {
    assert!(step.inserted, "progressions exist for insertion steps only");
    let u_new = step.resulting_fan.n_rays();
    let new_idx = u_new - 1;
    // raw affine family A + d·B at the upper level
    let mut a: RatVec = target.coords().to_vec();
    a.push(BigRational::zero());
    let mut b = vec![BigRational::zero(); u_new];
    b[new_idx] = BigRational::one();
    for (&p, c) in step.parent_rays.iter().zip(&step.coefficients) {
        b[p] = -c.clone();
    }
    // untouched coordinates must already be nonnegative
    for (i, x) in a.iter().enumerate() {
        if i != new_idx && !step.parent_rays.contains(&i) && x.is_negative() {
            return Ok(None);
        }
    }
    // upper bound on d from nonnegativity over the parents
    let mut dmax: Option<BigRational> = None;
    for (&p, c) in step.parent_rays.iter().zip(&step.coefficients) {
        if a[p].is_negative() {
            return Ok(None);
        }
        let bound = &a[p] / c;
        dmax = Some(match dmax {
            None => bound,
            Some(cur) => core::cmp::min(cur, bound),
        });
    }
    let dmax = dmax.expect("insertions have parents");
    // integrality congruences from the upper dual lattice
    let pa = upper.project(&a);
    let pb = upper.project(&b);
    let ya = upper
        .dual_coords(pa.coords())
        .expect("projection lies in the dual span");
    let yb = upper
        .dual_coords(pb.coords())
        .expect("projection lies in the dual span");
    let mut prog: Option<(BigRational, BigRational)> = None;
    for (p, q) in ya.iter().zip(&yb) {
        if q.is_zero() {
            if !p.is_integer() {
                return Ok(None);
            }
            continue;
        }
        // p + d q ∈ Z  ⟺  d ∈ -p/q + (1/q) Z
        let offset = -(p / q);
        let period = (BigRational::one() / q).abs();
        prog = Some(match prog {
            None => (offset, period),
            Some(cur) => match intersect_progressions(cur, (offset, period)) {
                Some(next) => next,
                None => return Ok(None),
            },
        });
    }
    let (offset, period) = prog.expect("the inserted coordinate is constrained");
    // smallest admissible degree >= 0
    let k = (-&offset / &period).ceil();
    let first = &offset + &period * k;
    if first > dmax {
        return Ok(None);
    }
    let count = ((&dmax - &first) / &period).floor().to_integer();
    Ok(Some(DegreeProgression {
        first,
        step: period,
        count,
    }))
}

/// The full pushforward fiber over a curve class on the base.
#[derive(Clone, Debug)]
pub struct Fiber {
    /// Labels on the final fan, in depth-first ascending-degree order.
    pub elements: Vec<Label>,
    /// Progression metadata per insertion step, from the first branch.
    pub progressions: Vec<Option<DegreeProgression>>,
}

/// Enumerate the fiber of the chain pushforward over `d`. The divisor must
/// be a curve class of the base. Supported chains: insertion-only, or
/// subdivision-only (where the pushforward is the identity on coordinates).
pub fn fiber(
    chain: &ResolutionChain,
    levels: &[SupportLattice],
    d: &Label,
) -> Result<Fiber> {
    assert_eq!(levels.len(), chain.steps().len() + 1);
    let base = &levels[0];
    if !base.is_curve_class(d) {
        return Err(Error::NotACurveClass);
    }
    if chain.steps().iter().all(|s| !s.inserted) {
        return fiber_subdivision_only(chain, levels, d);
    }
    if !chain.is_insertion_only() {
        return Err(Error::SubdivisionOnlyStep);
    }
    let mut progressions: Vec<Option<DegreeProgression>> = vec![None; chain.steps().len()];
    let mut elements = Vec::new();
    descend(chain, levels, 0, d.clone(), &mut progressions, &mut elements)?;
    Ok(Fiber { elements, progressions })
}

fn descend(
    chain: &ResolutionChain,
    levels: &[SupportLattice],
    level: usize,
    target: Label,
    progressions: &mut Vec<Option<DegreeProgression>>,
    out: &mut Vec<Label>,
) -> Result<()> {
    if level == chain.steps().len() {
        out.push(target);
        return Ok(());
    }
    let step = &chain.steps()[level];
    let upper = &levels[level + 1];
    let Some(prog) = step_progression(upper, step, &target)? else {
        return Ok(());
    };
    if progressions[level].is_none() {
        progressions[level] = Some(prog.clone());
    }
    let new_idx = step.resulting_fan.n_rays() - 1;
    for deg in prog.degrees() {
        let mut raw: RatVec = target.coords().to_vec();
        raw.push(deg.clone());
        for (&p, c) in step.parent_rays.iter().zip(&step.coefficients) {
            raw[p] -= c * &deg;
        }
        debug_assert!(!raw[new_idx].is_negative());
        let lifted = upper.label(&raw)?;
        descend(chain, levels, level + 1, lifted, progressions, out)?;
    }
    Ok(())
}

/// Subdivision-only chains do not change ray coordinates: the fiber consists
/// of the nonnegative integer vectors on the (smooth) final fan in the class
/// of the divisor.
fn fiber_subdivision_only(
    chain: &ResolutionChain,
    levels: &[SupportLattice],
    d: &Label,
) -> Result<Fiber> {
    let base = &levels[0];
    let top = levels.last().expect("levels nonempty");
    if !chain.final_fan().is_smooth() {
        return Err(Error::SubdivisionOnlyStep);
    }
    let u = chain.final_fan().n_rays();
    // positive support function on the base bounds the search
    let kappa = positive_support_function(base)?;
    let budget = d.pair(&kappa);
    if budget.is_negative() {
        return Ok(Fiber { elements: vec![], progressions: vec![None; chain.steps().len()] });
    }
    let mut elements = Vec::new();
    let mut coords = vec![BigRational::zero(); u];
    enumerate_class_points(base, top, d, &kappa, budget, 0, &mut coords, &mut elements)?;
    Ok(Fiber { elements, progressions: vec![None; chain.steps().len()] })
}

fn enumerate_class_points(
    base: &SupportLattice,
    top: &SupportLattice,
    d: &Label,
    kappa: &[BigInt],
    budget: BigRational,
    i: usize,
    coords: &mut RatVec,
    out: &mut Vec<Label>,
) -> Result<()> {
    let u = coords.len();
    if i == u {
        if base.project(coords) == *d {
            out.push(top.label(coords)?);
        }
        return Ok(());
    }
    let k = rat_of(&kappa[i]);
    let mut x = BigInt::zero();
    loop {
        let cost = rat_of(&x) * &k;
        if cost > budget {
            break;
        }
        coords[i] = rat_of(&x);
        enumerate_class_points(base, top, d, kappa, budget.clone() - cost, i + 1, coords, out)?;
        x += 1;
    }
    coords[i] = BigRational::zero();
    Ok(())
}

/// A support function with strictly positive ray values, by bounded search
/// over combinations of the support-lattice basis.
pub fn positive_support_function(support: &SupportLattice) -> Result<Vec<BigInt>> {
    let k = support.rank();
    let u = support.fan().n_rays();
    for cap in [1i64, 2, 4, 8, 16] {
        let mut a = vec![-cap; k];
        loop {
            let mut h = vec![BigInt::zero(); u];
            for (row, &coef) in a.iter().enumerate() {
                if coef == 0 {
                    continue;
                }
                for c in 0..u {
                    h[c] += BigInt::from(coef) * support.lattice().basis().at(row, c);
                }
            }
            if h.iter().all(|x| x.is_positive()) {
                return Ok(h);
            }
            // odometer over [-cap, cap]^k
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
