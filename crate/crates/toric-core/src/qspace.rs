//! Connected components and fundamental groups of labelled configuration
//! spaces.
//!
//! The component count is computed from an explicit merge graph: vertices
//! are the multisets of nonzero valid labels summing to the divisor, and an
//! edge joins a multiset to the one obtained by merging two parts whose sum
//! is again valid. Splits are the reverse edges, so the graph is undirected.
//! Resource caps fail loudly; the oracle never degrades silently.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::divisors::{solve_row_combination, Label};
use crate::error::{Error, Result};
use crate::lattice::rat_rank;
use crate::monoid::PartialMonoid;
use crate::RatVec;

/// Result of the merge-graph component count.
#[derive(Clone, Debug)]
pub struct Pi0Result {
    pub components: usize,
    /// lexicographically smallest vertex of each component
    pub representatives: Vec<Vec<Label>>,
    pub vertex_count: usize,
}

/// Presentation data for the fundamental group: one generator per unordered
/// pair of simple labels whose sum is not valid, with its exact order
/// (`None` = infinite).
#[derive(Clone, Debug)]
pub struct Pi1Presentation {
    pub simples: Vec<Label>,
    pub generators: Vec<(usize, usize)>,
    pub orders: Vec<Option<BigInt>>,
}

impl Pi1Presentation {
    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_free_abelian(&self) -> bool {
        self.orders.iter().all(|o| o.is_none())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
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
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Count the components of the configuration space of the divisor by
/// exhaustive merge-graph search. The cap bounds the number of vertices.
pub fn pi0_oracle(pm: &PartialMonoid, d: &Label, max_vertices: usize) -> Result<Pi0Result> {
    let u = pm.support().fan().n_rays();
    if d.is_zero() {
        return Ok(Pi0Result {
            components: 1,
            representatives: vec![vec![]],
            vertex_count: 1,
        });
    }
    let budget = pm.grade(d);
    if !budget.is_positive() {
        return Ok(Pi0Result {
            components: 0,
            representatives: vec![],
            vertex_count: 0,
        });
    }
    let pool = pm.valid_labels_up_to(&budget, max_vertices)?;
    let index_of: BTreeMap<&Label, usize> = pool.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let grades: Vec<BigRational> = pool.iter().map(|l| pm.grade(l)).collect();
    // enumerate decompositions as non-decreasing index sequences
    let mut vertices: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    enumerate_decompositions(
        &pool,
        &grades,
        d.clone(),
        budget,
        0,
        &mut stack,
        &mut vertices,
        max_vertices,
        u,
    )?;
    if vertices.is_empty() {
        return Ok(Pi0Result {
            components: 0,
            representatives: vec![],
            vertex_count: 0,
        });
    }
    vertices.sort();
    let vertex_index: BTreeMap<&[usize], usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_slice(), i))
        .collect();
    let mut uf = UnionFind::new(vertices.len());
    // merge moves
    let mut valid_sum: BTreeMap<(usize, usize), Option<usize>> = BTreeMap::new();
    for (vi, v) in vertices.iter().enumerate() {
        for a in 0..v.len() {
            for b in a + 1..v.len() {
                let key = (v[a].min(v[b]), v[a].max(v[b]));
                let merged = match valid_sum.get(&key) {
                    Some(m) => m.clone(),
                    None => {
                        let sum = pool[key.0].add(&pool[key.1]);
                        let m = if pm.merge_allowed(&pool[key.0], &pool[key.1])? {
                            index_of.get(&sum).copied()
                        } else {
                            None
                        };
                        valid_sum.insert(key, m);
                        m
                    }
                };
                let Some(mi) = merged else { continue };
                let mut w: Vec<usize> = Vec::with_capacity(v.len() - 1);
                for (p, &x) in v.iter().enumerate() {
                    if p != a && p != b {
                        w.push(x);
                    }
                }
                let pos = w.partition_point(|&x| x < mi);
                w.insert(pos, mi);
                let wi = *vertex_index
                    .get(w.as_slice())
                    .expect("merged multiset is a decomposition");
                uf.union(vi, wi);
            }
        }
    }
    let mut reps: BTreeMap<usize, usize> = BTreeMap::new();
    for vi in 0..vertices.len() {
        let root = uf.find(vi);
        reps.entry(root).or_insert(vi); // vertices sorted: first is minimal
    }
    let representatives: Vec<Vec<Label>> = reps
        .values()
        .map(|&vi| vertices[vi].iter().map(|&i| pool[i].clone()).collect())
        .collect();
    Ok(Pi0Result {
        components: reps.len(),
        representatives,
        vertex_count: vertices.len(),
    })
}

#[allow(clippy::too_many_arguments)]
fn enumerate_decompositions(
    pool: &[Label],
    grades: &[BigRational],
    remaining: Label,
    budget: BigRational,
    from: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
    u: usize,
) -> Result<()> {
    if remaining.is_zero() {
        out.push(stack.clone());
        if out.len() > cap {
            return Err(Error::Resource(alloc::format!(
                "decomposition count exceeds cap {cap}"
            )));
        }
        return Ok(());
    }
    if !budget.is_positive() {
        return Ok(());
    }
    for i in from..pool.len() {
        if grades[i] > budget {
            continue;
        }
        let next = remaining.sub(&pool[i]);
        stack.push(i);
        enumerate_decompositions(
            pool,
            grades,
            next,
            budget.clone() - &grades[i],
            i,
            stack,
            out,
            cap,
            u,
        )?;
        stack.pop();
    }
    Ok(())
}

/// Search for a connectedness certificate: linearly independent valid labels
/// through which the divisor decomposes with nonnegative integer
/// multiplicities, and into which every simple label can be absorbed by a
/// short chain of valid merges. Absence is a valid outcome; the oracle is
/// the fallback.
pub fn pi0_certificate(pm: &PartialMonoid, d: &Label) -> Result<Option<Vec<Label>>> {
    let simples = pm.simple_labels();
    let n = simples.len();
    if n > 16 {
        return Ok(None);
    }
    let mut subsets: Vec<Vec<usize>> = (1usize..1 << n)
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by_key(|s| (s.len(), s.clone()));
    'subset: for subset in subsets {
        let set: Vec<&Label> = subset.iter().map(|&i| &simples[i]).collect();
        let rows: Vec<RatVec> = set.iter().map(|l| l.coords().to_vec()).collect();
        if rat_rank(&rows) != set.len() {
            continue;
        }
        let Some(k) = decompose_exact(&rows, d) else {
            continue;
        };
        if k.iter().any(|c| c.is_negative() || !c.is_integer()) {
            continue;
        }
        for s in simples {
            if !absorbs(pm, &rows, s)? {
                continue 'subset;
            }
        }
        return Ok(Some(set.into_iter().cloned().collect()));
    }
    Ok(None)
}

fn decompose_exact(rows: &[RatVec], d: &Label) -> Option<RatVec> {
    let t = solve_row_combination(rows, d.coords())?;
    // verify: the solver drops inconsistent overdetermined systems
    let len = d.coords().len();
    let mut acc = vec![BigRational::zero(); len];
    for (j, tc) in t.iter().enumerate() {
        for c in 0..len {
            acc[c] += tc * &rows[j][c];
        }
    }
    if acc == d.coords() {
        Some(t)
    } else {
        None
    }
}

/// Breadth-first search: can `s` reach the nonnegative-integer span of the
/// certificate labels by repeatedly merging with one of them?
fn absorbs(pm: &PartialMonoid, rows: &[RatVec], s: &Label) -> Result<bool> {
    const DEPTH: usize = 8;
    const BREADTH: usize = 256;
    let mut frontier = vec![s.clone()];
    let mut seen: alloc::collections::BTreeSet<Label> = frontier.iter().cloned().collect();
    for _ in 0..=DEPTH {
        for state in &frontier {
            if let Some(k) = decompose_exact(rows, state) {
                if k.iter().all(|c| !c.is_negative() && c.is_integer()) {
                    return Ok(true);
                }
            }
        }
        let mut next = Vec::new();
        for state in &frontier {
            for row in rows {
                let m = Label::from_canonical(row.clone());
                let sum = state.add(&m);
                if seen.contains(&sum) {
                    continue;
                }
                if pm.merge_allowed(state, &m)? {
                    seen.insert(sum.clone());
                    next.push(sum);
                }
            }
        }
        if next.is_empty() {
            return Ok(false);
        }
        if next.len() > BREADTH {
            next.truncate(BREADTH);
        }
        frontier = next;
    }
    Ok(false)
}

/// The fundamental-group presentation from the simple labels: abelian, one
/// generator per unordered pair of simples with invalid sum, with order the
/// least `n` making `n` times the sum valid.
pub fn pi1_presentation(pm: &PartialMonoid) -> Result<Pi1Presentation> {
    let simples: Vec<Label> = pm.simple_labels().to_vec();
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    for i in 0..simples.len() {
        for j in i + 1..simples.len() {
            let sum = simples[i].add(&simples[j]);
            if pm.merge_allowed(&simples[i], &simples[j])? {
                continue;
            }
            let order = pm.least_valid_multiple(&sum)?;
            generators.push((i, j));
            orders.push(order);
        }
    }
    Ok(Pi1Presentation {
        simples,
        generators,
        orders,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisors::SupportLattice;
    use crate::fan::catalog;
    use crate::monoid::Semantics;

    fn setup(name: &str, params: &[i64]) -> SupportLattice {
        SupportLattice::new(&catalog(name, params).unwrap()).unwrap()
    }

    const CAP: usize = 200_000;

    #[test]
    fn single_simple_label_is_one_component() {
        let s = setup("projective", &[2]);
        let pm = PartialMonoid::new(&s, Semantics::Cone).unwrap();
        let d = s.label_from_ints(&[1, 0, 0]).unwrap();
        let r = pi0_oracle(&pm, &d, CAP).unwrap();
        assert_eq!(r.components, 1);
        assert_eq!(r.vertex_count, 1);
    }

    #[test]
    fn zero_divisor_is_one_component() {
        let s = setup("projective", &[2]);
        let pm = PartialMonoid::new(&s, Semantics::Cone).unwrap();
        let r = pi0_oracle(&pm, &Label::zero(3), CAP).unwrap();
        assert_eq!(r.components, 1);
    }

    #[test]
    fn cp2_degree_two_connected() {
        let s = setup("projective", &[2]);
        let pm = PartialMonoid::new(&s, Semantics::Cone).unwrap();
        let d = s.label_from_ints(&[2, 2, 2]).unwrap();
        let r = pi0_oracle(&pm, &d, CAP).unwrap();
        assert_eq!(r.components, 1);
        assert!(r.vertex_count > 1);
    }

    #[test]
    fn cp1_connected_any_degree() {
        let s = setup("projective", &[1]);
        let pm = PartialMonoid::new(&s, Semantics::Cone).unwrap();
        for d in 1..=4i64 {
            let dd = s.label_from_ints(&[d, d]).unwrap();
            let r = pi0_oracle(&pm, &dd, CAP).unwrap();
            assert_eq!(r.components, 1, "degree {d}");
        }
    }

    #[test]
    fn unreachable_divisor_has_no_components() {
        let s = setup("projective", &[2]);
        let pm = PartialMonoid::new(&s, Semantics::Cone).unwrap();
        let d = s.label_from_ints(&[-1, 0, 0]).unwrap();
        let r = pi0_oracle(&pm, &d, CAP).unwrap();
        assert_eq!(r.components, 0);
    }

    #[test]
    fn resource_cap_errors_loudly() {
        let s = setup("projective", &[2]);
        let pm = PartialMonoid::new(&s, Semantics::Cone).unwrap();
        let d = s.label_from_ints(&[3, 3, 3]).unwrap();
        assert!(matches!(
            pi0_oracle(&pm, &d, 5),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn quadric_certificate_both_branches() {
        let s = setup("quadric", &[]);
        let pm = PartialMonoid::new(&s, Semantics::Resolution).unwrap();
        // d1 >= d2
        let d = s.label_from_ints(&[3, 1, 2]).unwrap();
        let cert = pi0_certificate(&pm, &d).unwrap().expect("certificate");
        assert_eq!(cert.len(), 3);
        let r = pi0_oracle(&pm, &d, CAP).unwrap();
        assert_eq!(r.components, 1);
        // d1 <= d2
        let d = s.label_from_ints(&[1, 3, 2]).unwrap();
        let cert = pi0_certificate(&pm, &d).unwrap().expect("certificate");
        assert_eq!(cert.len(), 3);
        let r = pi0_oracle(&pm, &d, CAP).unwrap();
        assert_eq!(r.components, 1);
    }

    #[test]
    fn cpn_certificate_is_unit_labels() {
        let s = setup("projective", &[2]);
        let pm = PartialMonoid::new(&s, Semantics::Cone).unwrap();
        let d = s.label_from_ints(&[2, 3, 1]).unwrap();
        let cert = pi0_certificate(&pm, &d).unwrap().expect("certificate");
        assert_eq!(cert.len(), 3);
        for l in &cert {
            assert!(l.coords().iter().map(|x| x.numer().clone()).sum::<BigInt>() == BigInt::from(1));
        }
    }

    #[test]
    fn pi1_cp1_is_infinite_cyclic() {
        let s = setup("projective", &[1]);
        let pm = PartialMonoid::new(&s, Semantics::Cone).unwrap();
        let p = pi1_presentation(&pm).unwrap();
        assert_eq!(p.generators.len(), 1);
        assert_eq!(p.orders, alloc::vec![None]);
    }

    #[test]
    fn pi1_cpn_trivial_for_n_at_least_two() {
        for n in 2..=4i64 {
            let s = setup("projective", &[n]);
            let pm = PartialMonoid::new(&s, Semantics::Cone).unwrap();
            let p = pi1_presentation(&pm).unwrap();
            assert!(p.is_trivial(), "n = {n}");
        }
    }

    #[test]
    fn pi1_hirzebruch_two_free_generators() {
        for k in [0i64, 1, 2, 3] {
            let s = setup("hirzebruch", &[k]);
            let pm = PartialMonoid::new(&s, Semantics::Cone).unwrap();
            let p = pi1_presentation(&pm).unwrap();
            assert_eq!(p.generators.len(), 2, "k = {k}");
            assert!(p.is_free_abelian(), "k = {k}");
            // the generating pairs are the two minimal non-faces
            let pairs: Vec<(Vec<BigRational>, Vec<BigRational>)> = p
                .generators
                .iter()
                .map(|&(i, j)| {
                    (
                        p.simples[i].coords().to_vec(),
                        p.simples[j].coords().to_vec(),
                    )
                })
                .collect();
            for (a, b) in pairs {
                let ra = a.iter().position(|x| !x.is_zero()).unwrap();
                let rb = b.iter().position(|x| !x.is_zero()).unwrap();
                assert!(
                    (ra, rb) == (0, 2) || (ra, rb) == (2, 0) || (ra, rb) == (1, 3) || (ra, rb) == (3, 1),
                    "unexpected pair ({ra},{rb})"
                );
            }
        }
    }

    #[test]
    fn pi1_quadric_single_generator() {
        let s = setup("quadric", &[]);
        for sem in [Semantics::Cone, Semantics::Resolution] {
            let pm = PartialMonoid::new(&s, sem).unwrap();
            let p = pi1_presentation(&pm).unwrap();
            assert_eq!(p.generators.len(), 1, "{sem:?}");
            let (i, j) = p.generators[0];
            let pair: Vec<Vec<BigRational>> = alloc::vec![
                p.simples[i].coords().to_vec(),
                p.simples[j].coords().to_vec(),
            ];
            // the pair is {(1/2)(σ1+σ2), σ3}
            let half = BigRational::new(BigInt::from(1), BigInt::from(2));
            assert!(pair.contains(&alloc::vec![half.clone(), half, crate::rat(0)]));
            assert!(pair.contains(&alloc::vec![crate::rat(0), crate::rat(0), crate::rat(1)]));
            assert_eq!(p.orders, alloc::vec![None], "{sem:?}");
        }
    }

    #[test]
    fn certificate_soundness_small_catalog() {
        for (name, params) in [("projective", &[2][..]), ("hirzebruch", &[1]), ("quadric", &[])] {
            let s = setup(name, params);
            let sem = Semantics::default_for(s.fan());
            let pm = PartialMonoid::new(&s, sem).unwrap();
            let u = s.fan().n_rays();
            // small nonnegative divisors
            let mut grid: Vec<Vec<i64>> = alloc::vec![alloc::vec![]];
            for _ in 0..u {
                let mut next = Vec::new();
                for g in &grid {
                    for v in 0..=2i64 {
                        let mut h = g.clone();
                        h.push(v);
                        next.push(h);
                    }
                }
                grid = next;
            }
            for point in grid {
                let Ok(d) = s.label_from_ints(&point) else { continue };
                if let Some(_cert) = pi0_certificate(&pm, &d).unwrap() {
                    let r = pi0_oracle(&pm, &d, CAP).unwrap();
                    assert_eq!(r.components, 1, "{name} {point:?}");
                }
            }
        }
    }
}
