//! The lattice of support functions of a complete fan, its dual, the
//! inclusion of the character lattice, and the derived invariants: the
//! divisor class group, the fundamental group of the variety, and the
//! curve-class lattice.
//!
//! Elements of the dual are represented in rational ray coordinates modulo
//! the annihilator of the support lattice. The canonical representative of a
//! class has zeros in the coordinates indexed by the non-pivot columns of
//! the support-lattice Hermite basis.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{
    dot_rat, dot_rat_int, dual_lattice, integer_kernel, invariant_factors, rat_inverse,
    rat_solve_columns, IntMatrix, RatLattice, Sublattice,
};
use crate::{rat_of, RatVec};

/// A functional on support functions, in canonical ray coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Label {
    coords: RatVec,
}

impl Label {
    pub(crate) fn from_canonical(coords: RatVec) -> Label {
        Label { coords }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn zero(u: usize) -> Label {
        Label {
            coords: vec![BigRational::zero(); u],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Label) -> Label {
        Label {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Label) -> Label {
        Label {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, n: &BigRational) -> Label {
        Label {
            coords: self.coords.iter().map(|a| a * n).collect(),
        }
    }

    /// Pairing with a support function given by its ray values.
    pub fn pair(&self, h: &[BigInt]) -> BigRational {
        dot_rat_int(&self.coords, h)
    }
}

/// A label together with its membership in the kernel of the ray-evaluation
/// map; classes in the kernel index components of the space of based maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DivisorClass {
    pub label: Label,
    pub in_kernel: bool,
}

/// A finitely generated abelian group: free rank plus invariant factors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// The support-function lattice of a complete fan, with everything needed to
/// canonicalize and pair dual elements.
#[derive(Clone, Debug)]
pub struct SupportLattice {
    fan: Fan,
    lattice: Sublattice,
    pivots: Vec<usize>,
    nonpivots: Vec<usize>,
    // inverse of the pivot submatrix of the Hermite basis, for projection
    pivot_inverse: Vec<RatVec>,
    dual: RatLattice,
}

impl SupportLattice {
    /// Compute the support lattice. Rejects non-complete fans: the
    /// integrality reduction needs full-dimensional maximal cones.
    pub fn new(fan: &Fan) -> Result<SupportLattice> {
        fan.require_complete()?;
        let u = fan.n_rays();
        let r = fan.rank();
        let s = fan.max_cones().len();
        // unknowns (h_1..h_u, m_1..m_s); one constraint <m_j, v_i> = h_i per
        // incidence i in cone j
        let n_unknowns = u + r * s;
        let n_cons: usize = fan.max_cones().iter().map(|c| c.len()).sum();
        let mut m = IntMatrix::zero(n_unknowns, n_cons);
        let mut col = 0usize;
        for (j, cone) in fan.max_cones().iter().enumerate() {
            for &i in cone {
                *m.at_mut(i, col) = BigInt::from(-1);
                for k in 0..r {
                    *m.at_mut(u + j * r + k, col) = fan.ray(i)[k].clone();
                }
                col += 1;
            }
        }
        let kernel = integer_kernel(&m);
        let h_rows: Vec<Vec<BigInt>> = (0..kernel.rank())
            .map(|i| kernel.basis().row(i)[..u].to_vec())
            .collect();
        let lattice = Sublattice::from_generators(u, &IntMatrix::from_rows(&h_rows, u));
        let pivots = lattice.pivot_columns();
        let nonpivots: Vec<usize> = (0..u).filter(|c| !pivots.contains(c)).collect();
        let k = lattice.rank();
        let hp: Vec<RatVec> = (0..k)
            .map(|row| {
                pivots
                    .iter()
                    .map(|&c| rat_of(lattice.basis().at(row, c)))
                    .collect()
            })
            .collect();
        let pivot_inverse = rat_inverse(&hp).expect("pivot submatrix invertible");
        let dual = dual_lattice(&lattice)?;
        Ok(SupportLattice {
            fan: fan.clone(),
            lattice,
            pivots,
            nonpivots,
            pivot_inverse,
            dual,
        })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn lattice(&self) -> &Sublattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// The dual lattice in canonical ray coordinates.
    pub fn dual(&self) -> &RatLattice {
        &self.dual
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    pub fn nonpivot_columns(&self) -> &[usize] {
        &self.nonpivots
    }

    /// Is `h` (ray values) a support function of the fan?
    pub fn contains(&self, h: &[BigInt]) -> bool {
        self.lattice.contains(h)
    }

    /// Pairings of `x` with the Hermite basis rows of the support lattice.
    fn basis_pairings(&self, x: &[BigRational]) -> RatVec {
        (0..self.lattice.rank())
            .map(|row| dot_rat_int(x, self.lattice.basis().row(row)))
            .collect()
    }

    /// Reduce `x` modulo the annihilator of the support lattice so that the
    /// non-pivot coordinates vanish. Pure linear projection, no membership
    /// check, idempotent.
    pub fn project(&self, x: &[BigRational]) -> Label {
        let w = self.basis_pairings(x);
        let u = self.fan.n_rays();
        let mut coords = vec![BigRational::zero(); u];
        for (row, pi) in self.pivot_inverse.iter().enumerate() {
            coords[self.pivots[row]] = dot_rat(pi, &w);
        }
        Label { coords }
    }

    /// Canonical representative of `x`, requiring integral pairing with the
    /// support lattice.
    pub fn label(&self, x: &[BigRational]) -> Result<Label> {
        if x.len() != self.fan.n_rays() {
            return Err(Error::Usage("label length differs from ray count".into()));
        }
        let w = self.basis_pairings(x);
        if w.iter().any(|p| !p.is_integer()) {
            return Err(Error::NotInDualLattice);
        }
        Ok(self.project(x))
    }

    pub fn label_from_ints(&self, x: &[i64]) -> Result<Label> {
        let v: RatVec = x.iter().map(|&n| crate::rat(n)).collect();
        self.label(&v)
    }

    /// Matrix of the character inclusion: row `m` lists the pairings of the
    /// `m`-th basis character with the rays.
    pub fn iota(&self) -> IntMatrix {
        self.fan.ray_matrix().transpose()
    }

    /// Matrix of the ray-evaluation map `x ↦ Σ x_i v_i` on dual coordinates;
    /// its kernel consists of the curve classes.
    pub fn iota_star(&self) -> IntMatrix {
        self.fan.ray_matrix()
    }

    /// Image of a label under the ray-evaluation map.
    pub fn evaluate_rays(&self, l: &Label) -> RatVec {
        self.fan.ray_matrix().apply_row_rat(l.coords())
    }

    pub fn is_curve_class(&self, l: &Label) -> bool {
        self.evaluate_rays(l).iter().all(|x| x.is_zero())
    }

    pub fn divisor_class(&self, l: Label) -> DivisorClass {
        DivisorClass {
            in_kernel: self.is_curve_class(&l),
            label: l,
        }
    }

    /// Quotient of the support lattice by the characters: the divisor class
    /// group / second cohomology of the variety.
    pub fn picard(&self) -> AbelianGroup {
        let iota = self.iota();
        let k = self.lattice.rank();
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(iota.rows());
        for m in 0..iota.rows() {
            let row = iota.row_vec(m);
            let coords = self
                .lattice
                .express(&row)
                .expect("characters are support functions");
            rows.push(coords);
        }
        let c = IntMatrix::from_rows(&rows, k);
        let factors = invariant_factors(&c);
        AbelianGroup {
            free_rank: k - factors.len(),
            torsion: factors.into_iter().filter(|f| !f.is_one()).collect(),
        }
    }

    /// Fundamental group of the variety: quotient of the character lattice
    /// by the subgroup generated by all lattice points of all cones.
    pub fn pi1_variety(&self) -> Result<AbelianGroup> {
        let r = self.fan.rank();
        let ambient = RatLattice::from_integer(Sublattice::full(r));
        let mut gens: Vec<RatVec> = Vec::new();
        for cone in self.fan.max_cones() {
            let cone_gens: Vec<RatVec> = cone
                .iter()
                .map(|&i| self.fan.ray(i).iter().map(rat_of).collect())
                .collect();
            gens.extend(crate::monoid::hilbert_basis_points(&cone_gens, &ambient)?);
        }
        let int_rows: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.iter().map(|x| x.to_integer()).collect())
            .collect();
        let m = IntMatrix::from_rows(&int_rows, r);
        let factors = invariant_factors(&m);
        Ok(AbelianGroup {
            free_rank: r - factors.len(),
            torsion: factors.into_iter().filter(|f| !f.is_one()).collect(),
        })
    }

    /// The curve-class lattice: kernel of the ray-evaluation map inside the
    /// dual lattice, in canonical coordinates. When the second homology of
    /// the variety is torsion free this is its second homotopy group.
    pub fn pi2_lattice(&self) -> RatLattice {
        let b = self.dual.basis_rows();
        let v = self.fan.ray_matrix();
        let k = b.len();
        let r = self.fan.rank();
        let m_rat: Vec<RatVec> = b.iter().map(|row| v.apply_row_rat(row)).collect();
        // scale columns integral; column scaling preserves the kernel
        let mut scaled = IntMatrix::zero(k, r);
        for c in 0..r {
            let mut denom = BigInt::one();
            for row in m_rat.iter() {
                denom = num_integer::Integer::lcm(&denom, row[c].denom());
            }
            for (i, row) in m_rat.iter().enumerate() {
                *scaled.at_mut(i, c) = (&row[c] * rat_of(&denom)).to_integer();
            }
        }
        let kernel = integer_kernel(&scaled);
        let u = self.fan.n_rays();
        let rows: Vec<RatVec> = (0..kernel.rank())
            .map(|i| {
                let y = kernel.basis().row(i);
                let mut out = vec![BigRational::zero(); u];
                for (j, yj) in y.iter().enumerate() {
                    if yj.is_zero() {
                        continue;
                    }
                    for c in 0..u {
                        out[c] += rat_of(yj) * &b[j][c];
                    }
                }
                out
            })
            .collect();
        RatLattice::from_rational_rows(u, &rows)
    }

    /// Canonical generators of the curve-class lattice, as labels.
    pub fn pi2_generators(&self) -> Vec<Label> {
        self.pi2_lattice()
            .basis_rows()
            .into_iter()
            .map(Label::from_canonical)
            .collect()
    }

    /// The identification of curve classes with the second homotopy group
    /// assumes torsion-free second homology; guaranteed for smooth fans.
    pub fn pi2_needs_torsion_caveat(&self) -> bool {
        !self.fan.is_smooth()
    }

    /// Coordinates of a dual vector in the dual basis rows.
    pub fn dual_coords(&self, x: &[BigRational]) -> Option<RatVec> {
        self.dual.coords(x)
    }

    /// Least positive integer `n` with `n · l` in the dual lattice, if `l`
    /// lies in the rational span of the dual.
    pub fn denominator_in_dual(&self, l: &Label) -> Option<BigInt> {
        let coords = self.dual.coords(l.coords())?;
        let mut n = BigInt::one();
        for c in &coords {
            n = num_integer::Integer::lcm(&n, c.denom());
        }
        Some(n)
    }
}

/// Solve `t · rows = target` over the rationals.
pub(crate) fn solve_row_combination(rows: &[RatVec], target: &[BigRational]) -> Option<RatVec> {
    if rows.is_empty() {
        return if target.iter().all(|x| x.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let cols = rows[0].len();
    let a: Vec<RatVec> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect();
    rat_solve_columns(&a, target)
}
