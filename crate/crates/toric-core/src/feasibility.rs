//! Exact linear feasibility over the rationals by Fourier–Motzkin
//! elimination. Small systems only; the fans in this crate keep every
//! instance tiny.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::RatVec;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Rel {
    /// coeffs·x + constant = 0
    Eq,
    /// coeffs·x + constant >= 0
    Ge,
    /// coeffs·x + constant > 0
    Gt,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: RatVec,
    pub constant: BigRational,
    pub rel: Rel,
}

impl Constraint {
    pub fn new(coeffs: RatVec, constant: BigRational, rel: Rel) -> Self {
        Constraint { coeffs, constant, rel }
    }
}

const MAX_CONSTRAINTS: usize = 200_000;

/// Decide whether the system has a rational solution.
pub fn feasible(n_vars: usize, constraints: &[Constraint]) -> Result<bool> {
    let mut cons: Vec<Constraint> = constraints.to_vec();
    for c in &cons {
        assert_eq!(c.coeffs.len(), n_vars);
    }
    let mut n = n_vars;
    while n > 0 {
        if cons.len() > MAX_CONSTRAINTS {
            return Err(Error::Resource("feasibility constraint blow-up".into()));
        }
        let var = n - 1;
        // prefer eliminating by an equality pivot
        if let Some(idx) = cons
            .iter()
            .position(|c| c.rel == Rel::Eq && !c.coeffs[var].is_zero())
        {
            let pivot = cons.swap_remove(idx);
            let a = pivot.coeffs[var].clone();
            for c in cons.iter_mut() {
                if c.coeffs[var].is_zero() {
                    c.coeffs.truncate(var);
                    continue;
                }
                let f = &c.coeffs[var] / &a;
                for j in 0..var {
                    let delta = &f * &pivot.coeffs[j];
                    c.coeffs[j] -= delta;
                }
                let delta = &f * &pivot.constant;
                c.constant -= delta;
                c.coeffs.truncate(var);
            }
            n -= 1;
            continue;
        }
        // Fourier–Motzkin on inequalities
        let mut lowers: Vec<Constraint> = Vec::new();
        let mut uppers: Vec<Constraint> = Vec::new();
        let mut rest: Vec<Constraint> = Vec::new();
        for mut c in cons.into_iter() {
            if c.coeffs[var].is_zero() {
                c.coeffs.truncate(var);
                rest.push(c);
            } else if c.coeffs[var].is_positive() {
                lowers.push(c);
            } else {
                uppers.push(c);
            }
        }
        for lo in &lowers {
            for up in &uppers {
                // (-up_a) * lo + lo_a * up, both scalars positive
                let la = lo.coeffs[var].clone();
                let ua = -up.coeffs[var].clone();
                let mut coeffs = vec![BigRational::zero(); var];
                for (j, co) in coeffs.iter_mut().enumerate() {
                    *co = &ua * &lo.coeffs[j] + &la * &up.coeffs[j];
                }
                let constant = &ua * &lo.constant + &la * &up.constant;
                let rel = if lo.rel == Rel::Gt || up.rel == Rel::Gt {
                    Rel::Gt
                } else {
                    Rel::Ge
                };
                rest.push(Constraint { coeffs, constant, rel });
            }
        }
        cons = rest;
        n -= 1;
    }
    for c in &cons {
        let ok = match c.rel {
            Rel::Eq => c.constant.is_zero(),
            Rel::Ge => !c.constant.is_negative(),
            Rel::Gt => c.constant.is_positive(),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
