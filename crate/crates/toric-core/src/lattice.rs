//! Exact integer and rational linear algebra.
//!
//! Matrices are dense, row-major, over arbitrary-precision integers. Vectors
//! act on matrices from the left (`x · M`) unless a function says otherwise.
//! Lattices are represented by their unique row-style Hermite normal form, so
//! equality of sublattices is equality of representations.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::{rat_of, RatVec};

/// Dense integer matrix with immutable dimensions.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl core::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        IntMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            entries.extend(r.iter().cloned());
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        IntMatrix::new(rows, cols, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<BigInt> {
        self.row(r).to_vec()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let prod = a * other.at(k, c);
                    *out.at_mut(r, c) += prod;
                }
            }
        }
        out
    }

    /// `x · self` for a row vector `x` of length `rows`.
    pub fn apply_row(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (r, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for c in 0..self.cols {
                out[c] += xi * self.at(r, c);
            }
        }
        out
    }

    /// `x · self` with rational `x`.
    pub fn apply_row_rat(&self, x: &[BigRational]) -> RatVec {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![BigRational::zero(); self.cols];
        for (r, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for c in 0..self.cols {
                out[c] += xi * rat_of(self.at(r, c));
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let delta = q * self.at(src, c);
            *self.at_mut(dst, c) -= delta;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let delta = q * self.at(r, src);
            *self.at_mut(r, dst) -= delta;
        }
    }

    /// gcd of all entries (zero for the zero matrix).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for e in &self.entries {
            g = g.gcd(e);
        }
        g
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn to_rational(&self) -> Vec<RatVec> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(rat_of).collect())
            .collect()
    }
}

/// Row-style Hermite normal form.
///
/// Returns `(h, u)` with `u` unimodular, `u · m = h`, pivots positive,
/// entries above each pivot reduced into `[0, pivot)`, zero rows at the
/// bottom. `h` is the unique canonical form of the row span of `m`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut row = 0usize;
    for col in 0..h.cols() {
        if row == h.rows() {
            break;
        }
        // gather rows >= row with a nonzero entry in this column
        if !(row..h.rows()).any(|r| !h.at(r, col).is_zero()) {
            continue;
        }
        loop {
            // move the row with the smallest nonzero |entry| to the front
            let mut best: Option<usize> = None;
            for r in row..h.rows() {
                if h.at(r, col).is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(r),
                    Some(b) => {
                        if h.at(r, col).abs() < h.at(b, col).abs() {
                            best = Some(r);
                        }
                    }
                }
            }
            let b = best.expect("nonzero entry exists");
            h.swap_rows(row, b);
            u.swap_rows(row, b);
            let mut done = true;
            let pivot = h.at(row, col).clone();
            for r in row + 1..h.rows() {
                if h.at(r, col).is_zero() {
                    continue;
                }
                let q = h.at(r, col).div_floor(&pivot);
                h.row_axpy(r, row, &q);
                u.row_axpy(r, row, &q);
                if !h.at(r, col).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.at(row, col).is_negative() {
            h.negate_row(row);
            u.negate_row(row);
        }
        let pivot = h.at(row, col).clone();
        for r in 0..row {
            let q = h.at(r, col).div_floor(&pivot);
            h.row_axpy(r, row, &q);
            u.row_axpy(r, row, &q);
        }
        row += 1;
    }
    (h, u)
}

/// Smith normal form: `(d, u, v)` with `u · m · v = d`, `u`, `v` unimodular,
/// `d` diagonal with nonnegative entries satisfying `d[i] | d[i+1]`.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let n = core::cmp::min(d.rows(), d.cols());
    let mut t = 0usize;
    while t < n {
        // find smallest nonzero entry in the trailing submatrix
        let mut best: Option<(usize, usize)> = None;
        for r in t..d.rows() {
            for c in t..d.cols() {
                if d.at(r, c).is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((r, c)),
                    Some((br, bc)) => {
                        if d.at(r, c).abs() < d.at(br, bc).abs() {
                            best = Some((r, c));
                        }
                    }
                }
            }
        }
        let Some((br, bc)) = best else { break };
        d.swap_rows(t, br);
        u.swap_rows(t, br);
        d.swap_cols(t, bc);
        v.swap_cols(t, bc);
        // clear row and column t
        let mut clean = true;
        let pivot = d.at(t, t).clone();
        for r in t + 1..d.rows() {
            if d.at(r, t).is_zero() {
                continue;
            }
            let q = d.at(r, t).div_floor(&pivot);
            d.row_axpy(r, t, &q);
            u.row_axpy(r, t, &q);
            if !d.at(r, t).is_zero() {
                clean = false;
            }
        }
        for c in t + 1..d.cols() {
            if d.at(t, c).is_zero() {
                continue;
            }
            let q = d.at(t, c).div_floor(&pivot);
            d.col_axpy(c, t, &q);
            v.col_axpy(c, t, &q);
            if !d.at(t, c).is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // enforce divisibility: pivot must divide the rest of the submatrix
        let mut fixed = true;
        'scan: for r in t + 1..d.rows() {
            for c in t + 1..d.cols() {
                if !(d.at(r, c) % &pivot).is_zero() {
                    // fold the offending row into row t and restart this pivot
                    let one = BigInt::from(-1);
                    d.row_axpy(t, r, &one);
                    u.row_axpy(t, r, &one);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }
        if d.at(t, t).is_negative() {
            d.negate_col(t);
            v.negate_col(t);
        }
        t += 1;
    }
    (d, u, v)
}

/// The diagonal of the Smith form, nonzero entries only.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let (d, _, _) = snf(m);
    let n = core::cmp::min(d.rows(), d.cols());
    (0..n)
        .map(|i| d.at(i, i).clone())
        .filter(|x| !x.is_zero())
        .collect()
}

pub fn rank(m: &IntMatrix) -> usize {
    let (h, _) = hnf(m);
    (0..h.rows()).filter(|&r| !h.row(r).iter().all(|e| e.is_zero())).count()
}

/// A sublattice of `Z^n`, stored as its canonical row Hermite basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: IntMatrix, // canonical HNF, no zero rows, linearly independent rows
}

impl Sublattice {
    /// Lattice spanned by the given rows (in `Z^ambient`).
    pub fn from_generators(ambient: usize, generators: &IntMatrix) -> Sublattice {
        assert_eq!(generators.cols(), ambient);
        let (h, _) = hnf(generators);
        let nonzero: Vec<Vec<BigInt>> = (0..h.rows())
            .map(|r| h.row_vec(r))
            .filter(|row| row.iter().any(|e| !e.is_zero()))
            .collect();
        Sublattice {
            ambient_rank: ambient,
            basis: IntMatrix::from_rows(&nonzero, ambient),
        }
    }

    pub fn full(ambient: usize) -> Sublattice {
        Sublattice {
            ambient_rank: ambient,
            basis: IntMatrix::identity(ambient),
        }
    }

    pub fn trivial(ambient: usize) -> Sublattice {
        Sublattice {
            ambient_rank: ambient,
            basis: IntMatrix::zero(0, ambient),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Column indices of the HNF pivots, in row order.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut pivots = Vec::with_capacity(self.basis.rows());
        for r in 0..self.basis.rows() {
            let c = (0..self.basis.cols())
                .find(|&c| !self.basis.at(r, c).is_zero())
                .expect("basis rows are nonzero");
            pivots.push(c);
        }
        pivots
    }

    /// Integer coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn express(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let vr: RatVec = v.iter().map(rat_of).collect();
        let coords = self.express_rational(&vr)?;
        let mut out = Vec::with_capacity(coords.len());
        for c in coords {
            if !c.is_integer() {
                return None;
            }
            out.push(c.to_integer());
        }
        Some(out)
    }

    /// Rational coordinates of `v` in the basis, if `v` lies in the span.
    pub fn express_rational(&self, v: &[BigRational]) -> Option<RatVec> {
        assert_eq!(v.len(), self.ambient_rank);
        let pivots = self.pivot_columns();
        let mut rem: RatVec = v.to_vec();
        let mut coords = vec![BigRational::zero(); self.basis.rows()];
        for (r, &p) in pivots.iter().enumerate() {
            let c = &rem[p] / rat_of(self.basis.at(r, p));
            if !c.is_zero() {
                for j in 0..self.ambient_rank {
                    let delta = &c * rat_of(self.basis.at(r, j));
                    rem[j] -= delta;
                }
            }
            coords[r] = c;
        }
        if rem.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.express(v).is_some()
    }
}

/// Kernel of `x ↦ x · m` over the integers, as a sublattice of `Z^rows`.
pub fn integer_kernel(m: &IntMatrix) -> Sublattice {
    let (h, u) = hnf(m);
    let kernel_rows: Vec<Vec<BigInt>> = (0..h.rows())
        .filter(|&r| h.row(r).iter().all(|e| e.is_zero()))
        .map(|r| u.row_vec(r))
        .collect();
    Sublattice::from_generators(m.rows(), &IntMatrix::from_rows(&kernel_rows, m.rows()))
}

/// A lattice of rational vectors: `(1/denom) · L` for an integer sublattice
/// `L`, with `denom` minimal. Canonical, so equality is representational.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatLattice {
    denom: BigInt,
    lattice: Sublattice,
}

impl RatLattice {
    pub fn new(denom: BigInt, lattice: Sublattice) -> RatLattice {
        assert!(denom.is_positive());
        let g = lattice.basis.content().gcd(&denom);
        if g.is_one() || lattice.rank() == 0 {
            let denom = if lattice.rank() == 0 { BigInt::one() } else { denom };
            return RatLattice { denom, lattice };
        }
        let rows: Vec<Vec<BigInt>> = (0..lattice.rank())
            .map(|r| lattice.basis.row(r).iter().map(|e| e / &g).collect())
            .collect();
        RatLattice {
            denom: denom / &g,
            lattice: Sublattice::from_generators(
                lattice.ambient_rank,
                &IntMatrix::from_rows(&rows, lattice.ambient_rank),
            ),
        }
    }

    pub fn from_integer(lattice: Sublattice) -> RatLattice {
        RatLattice::new(BigInt::one(), lattice)
    }

    /// Lattice spanned by rational row vectors.
    pub fn from_rational_rows(ambient: usize, rows: &[RatVec]) -> RatLattice {
        let mut denom = BigInt::one();
        for row in rows {
            for x in row {
                denom = denom.lcm(x.denom());
            }
        }
        let int_rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| (x * rat_of(&denom)).to_integer())
                    .collect()
            })
            .collect();
        RatLattice::new(
            denom,
            Sublattice::from_generators(ambient, &IntMatrix::from_rows(&int_rows, ambient)),
        )
    }

    pub fn ambient_rank(&self) -> usize {
        self.lattice.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn integer_basis(&self) -> &IntMatrix {
        self.lattice.basis()
    }

    /// Basis vectors as rational rows.
    pub fn basis_rows(&self) -> Vec<RatVec> {
        let d = rat_of(&self.denom);
        (0..self.rank())
            .map(|r| {
                self.lattice
                    .basis
                    .row(r)
                    .iter()
                    .map(|e| rat_of(e) / d.clone())
                    .collect()
            })
            .collect()
    }

    /// Rational coordinates of `x` in the basis rows; `None` if outside the span.
    pub fn coords(&self, x: &[BigRational]) -> Option<RatVec> {
        let scaled: RatVec = x.iter().map(|v| v * rat_of(&self.denom)).collect();
        self.lattice.express_rational(&scaled)
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        match self.coords(x) {
            Some(c) => c.iter().all(|v| v.is_integer()),
            None => false,
        }
    }
}

/// Dual of a sublattice: rational vectors pairing integrally with every basis
/// row, in ambient coordinates with the non-pivot coordinates set to zero.
///
/// The dual of the trivial lattice is rejected; full-rank standard lattices
/// are self-dual.
pub fn dual_lattice(s: &Sublattice) -> Result<RatLattice> {
    if s.rank() == 0 {
        return Err(Error::DualOfTrivialLattice);
    }
    let k = s.rank();
    let n = s.ambient_rank();
    let pivots = s.pivot_columns();
    // invert the pivot submatrix over the rationals
    let hp: Vec<RatVec> = (0..k)
        .map(|r| pivots.iter().map(|&c| rat_of(s.basis.at(r, c))).collect())
        .collect();
    let inv = rat_inverse(&hp).expect("pivot submatrix is invertible");
    // dual generator i: column i of hp^{-1}, placed at the pivot coordinates
    let mut rows: Vec<RatVec> = Vec::with_capacity(k);
    for i in 0..k {
        let mut row = vec![BigRational::zero(); n];
        for j in 0..k {
            row[pivots[j]] = inv[j][i].clone();
        }
        rows.push(row);
    }
    Ok(RatLattice::from_rational_rows(n, &rows))
}

/// One exact rational solution of `m · x = rhs` (x a column vector), or
/// `None` when the system is inconsistent. Free variables are set to zero.
pub fn solve_rational(m: &IntMatrix, rhs: &[BigRational]) -> Option<RatVec> {
    assert_eq!(rhs.len(), m.rows());
    let a: Vec<RatVec> = m.to_rational();
    rat_solve_columns(&a, rhs)
}

/// Solve `a · x = b` over the rationals for column vector `x`; `a` given as
/// rows. Free variables are set to zero.
pub fn rat_solve_columns(a: &[RatVec], b: &[BigRational]) -> Option<RatVec> {
    let rows = a.len();
    assert_eq!(b.len(), rows);
    let cols = if rows == 0 { 0 } else { a[0].len() };
    // augmented matrix
    let mut m: Vec<RatVec> = a
        .iter()
        .zip(b.iter())
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut row = 0usize;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let pivot = m[row][col].clone();
        for x in m[row].iter_mut() {
            *x /= pivot.clone();
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=cols {
                    let delta = &f * &m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == rows {
            break;
        }
    }
    // inconsistent if a zero row has nonzero rhs
    for r in row..rows {
        if m[r][..cols].iter().all(|x| x.is_zero()) && !m[r][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); cols];
    for col in 0..cols {
        if let Some(r) = pivot_of_col[col] {
            x[col] = m[r][cols].clone();
        }
    }
    Some(x)
}

/// Exact inverse of a square rational matrix, `None` if singular.
pub fn rat_inverse(a: &[RatVec]) -> Option<Vec<RatVec>> {
    let n = a.len();
    let mut m: Vec<RatVec> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
            }
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let pivot = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= pivot.clone();
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Rank of a rational matrix given as rows.
pub fn rat_rank(a: &[RatVec]) -> usize {
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
    let mut m: Vec<RatVec> = a.to_vec();
    let mut row = 0usize;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let pivot = m[row][col].clone();
        for r in row + 1..m.len() {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &pivot;
                for c in col..cols {
                    let delta = &f * &m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        row += 1;
    }
    row
}

/// Divide an integer vector by its content. Errors on the zero vector.
pub fn primitive(v: &[BigInt]) -> Result<Vec<BigInt>> {
    let mut g = BigInt::zero();
    for e in v {
        g = g.gcd(e);
    }
    if g.is_zero() {
        return Err(Error::ZeroRay);
    }
    Ok(v.iter().map(|e| e / &g).collect())
}

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    assert_eq!(a.len(), b.len());
    let mut s = BigInt::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        s += x * y;
    }
    s
}

pub fn dot_rat_int(a: &[BigRational], b: &[BigInt]) -> BigRational {
    assert_eq!(a.len(), b.len());
    let mut s = BigRational::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        s += x * rat_of(y);
    }
    s
}

pub fn dot_rat(a: &[BigRational], b: &[BigRational]) -> BigRational {
    assert_eq!(a.len(), b.len());
    let mut s = BigRational::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        s += x * y;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::big;

    fn m2(entries: [i64; 4]) -> IntMatrix {
        IntMatrix::from_i64(2, 2, &entries)
    }

    #[test]
    fn hnf_identity_is_identity() {
        let (h, u) = hnf(&IntMatrix::identity(2));
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_diagonal_already_reduced() {
        let m = m2([2, 0, 0, 2]);
        let (h, _) = hnf(&m);
        assert_eq!(h, m2([2, 0, 0, 2]));
    }

    #[test]
    fn hnf_preserves_determinant_up_to_sign() {
        let m = m2([1, 2, 3, 4]);
        let (h, u) = hnf(&m);
        // u*m == h, determinant of h is ±det m = ∓2
        assert_eq!(u.mul(&m), h);
        let det = h.at(0, 0) * h.at(1, 1) - h.at(0, 1) * h.at(1, 0);
        assert_eq!(det.abs(), big(2));
    }

    #[test]
    fn hnf_row_permutation_invariant() {
        let m = IntMatrix::from_i64(3, 3, &[4, 7, 2, 1, 0, 3, 5, 5, 5]);
        let p = IntMatrix::from_i64(3, 3, &[5, 5, 5, 4, 7, 2, 1, 0, 3]);
        assert_eq!(hnf(&m).0, hnf(&p).0);
    }

    #[test]
    fn snf_zero_matrix() {
        let (d, _, _) = snf(&IntMatrix::zero(2, 3));
        assert!(d.is_zero());
    }

    #[test]
    fn snf_diag_2_3_gives_1_6() {
        let m = m2([2, 0, 0, 3]);
        let (d, u, v) = snf(&m);
        assert_eq!(u.mul(&m).mul(&v), d);
        assert_eq!(d.at(0, 0), &big(1));
        assert_eq!(d.at(1, 1), &big(6));
    }

    #[test]
    fn snf_identity_like() {
        let (d, _, _) = snf(&m2([1, 0, 0, 1]));
        assert_eq!(d, IntMatrix::identity(2));
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert_eq!(integer_kernel(&IntMatrix::identity(3)).rank(), 0);
    }

    #[test]
    fn kernel_of_column_ones() {
        // (1,1,1)^T as a 3x1 matrix: kernel has rank 2
        let m = IntMatrix::from_i64(3, 1, &[1, 1, 1]);
        let k = integer_kernel(&m);
        assert_eq!(k.rank(), 2);
        for r in 0..k.rank() {
            let img = m.apply_row(k.basis().row(r));
            assert!(img.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn dual_of_standard_lattice_is_itself() {
        let s = Sublattice::full(2);
        let d = dual_lattice(&s).unwrap();
        assert_eq!(d.denom(), &big(1));
        assert_eq!(d.integer_basis(), &IntMatrix::identity(2));
    }

    #[test]
    fn dual_of_trivial_lattice_errors() {
        assert_eq!(
            dual_lattice(&Sublattice::trivial(2)),
            Err(Error::DualOfTrivialLattice)
        );
    }

    #[test]
    fn dual_of_index_two_lattice() {
        // {h : h1 + h2 even} in Z^3, the quadric-cone support lattice
        let gens = IntMatrix::from_i64(3, 3, &[1, 1, 0, 0, 2, 0, 0, 0, 1]);
        let s = Sublattice::from_generators(3, &gens);
        let d = dual_lattice(&s).unwrap();
        // x1, x2 in (1/2)Z, x3 and x1+x2 integral
        assert_eq!(d.denom(), &big(2));
        let half = BigRational::new(big(1), big(2));
        assert!(d.contains(&[half.clone(), half.clone(), BigRational::zero()]));
        assert!(d.contains(&[crate::rat(1), BigRational::zero(), BigRational::zero()]));
        assert!(!d.contains(&[half.clone(), BigRational::zero(), BigRational::zero()]));
    }

    #[test]
    fn double_dual_restores_full_rank_lattice() {
        let gens = IntMatrix::from_i64(3, 3, &[1, 1, 0, 0, 2, 0, 0, 0, 1]);
        let s = Sublattice::from_generators(3, &gens);
        let d = dual_lattice(&s).unwrap();
        // every s-row pairs integrally with every dual basis row
        for i in 0..s.rank() {
            for drow in d.basis_rows() {
                assert!(dot_rat_int(&drow, s.basis().row(i)).is_integer());
            }
        }
        // dual(L/q) = q * dual(L): compute dual of the integer part and
        // rescale, which must give back exactly s
        let inner = dual_lattice(&Sublattice::from_generators(3, d.integer_basis())).unwrap();
        let q = rat_of(d.denom());
        let rows: alloc::vec::Vec<RatVec> = inner
            .basis_rows()
            .into_iter()
            .map(|row| row.into_iter().map(|x| x * q.clone()).collect())
            .collect();
        let dd = RatLattice::from_rational_rows(3, &rows);
        assert_eq!(dd, RatLattice::from_integer(s));
    }

    #[test]
    fn solve_identity() {
        let m = IntMatrix::identity(2);
        let rhs = alloc::vec![crate::rat(1), crate::rat(2)];
        assert_eq!(solve_rational(&m, &rhs).unwrap(), rhs);
    }

    #[test]
    fn solve_inconsistent_is_none() {
        let m = IntMatrix::from_i64(2, 1, &[1, 1]);
        let rhs = alloc::vec![crate::rat(1), crate::rat(2)];
        assert!(solve_rational(&m, &rhs).is_none());
    }

    #[test]
    fn solve_cone_extension() {
        // rows {(1,0),(-1,2)}, rhs (h1,h2) -> (h1, (h1+h2)/2)
        let m = IntMatrix::from_i64(2, 2, &[1, 0, -1, 2]);
        let rhs = alloc::vec![crate::rat(3), crate::rat(5)];
        let x = solve_rational(&m, &rhs).unwrap();
        assert_eq!(x[0], crate::rat(3));
        assert_eq!(x[1], crate::rat(4));
    }

    #[test]
    fn primitive_rejects_zero() {
        assert!(primitive(&[BigInt::zero(), BigInt::zero()]).is_err());
        assert_eq!(primitive(&[big(2), big(4)]).unwrap(), alloc::vec![big(1), big(2)]);
    }
}
