//! Homological invariants of Lefschetz fibrations over the disk or sphere:
//! Euler characteristics from singular-fiber counts, first Betti number of a
//! fibered cap from its vanishing-cycle classes, and the constant-e+sigma
//! Stein criterion.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::lattice::{cokernel_group, CokernelGroup};
use crate::matrix::{rank_rational, IntMat};

/// Monodromy seen through homology: fiber genus, boundary components with
/// their boundary-twist exponents, and vanishing-cycle classes in Z^{2g}.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
pub struct MonodromyData {
    pub g: u32,
    pub k: u32,
    #[serde(default)]
    pub exponents: Vec<u32>,
    #[serde(default)]
    pub cycles: Vec<Vec<i64>>,
}

impl MonodromyData {
    pub fn validated(self) -> Result<Self> {
        if self.exponents.len() != self.k as usize {
            return Err(Error::input(format!(
                "expected {} boundary-twist exponents, got {}",
                self.k,
                self.exponents.len()
            )));
        }
        if self.exponents.iter().any(|&i| i < 1) {
            return Err(Error::input("boundary-twist exponents must be at least 1"));
        }
        for c in &self.cycles {
            if c.len() != 2 * self.g as usize {
                return Err(Error::input(format!(
                    "cycle vectors must have length {}",
                    2 * self.g
                )));
            }
        }
        Ok(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Sphere,
    Disk,
}

/// Euler characteristic of a genus-g Lefschetz fibration with n singular
/// fibers; the disk base uses the fiber with k boundary components.
pub fn lefschetz_euler(g: i64, n_singular: i64, base: Base, k: i64) -> Result<i64> {
    if g < 0 || n_singular < 0 || k < 0 {
        return Err(Error::input("genus, fiber count and boundary count must be nonnegative"));
    }
    Ok(match base {
        Base::Sphere => 4 - 4 * g + n_singular,
        Base::Disk => (2 - 2 * g - k) + n_singular,
    })
}

fn cycle_matrix(g: u32, cycles: &[Vec<i64>]) -> Result<IntMat> {
    let width = 2 * g as usize;
    if cycles.iter().any(|c| c.len() != width) {
        return Err(Error::input(format!("cycle vectors must have length {width}")));
    }
    if cycles.is_empty() {
        return Ok(IntMat::zeros(0, width));
    }
    Ok(IntMat::from_i64(cycles))
}

/// b1 of the fibered cap: 2g minus the rational rank of the cycle span.
pub fn cap_b1_from_cycles(g: u32, cycles: &[Vec<i64>]) -> Result<u64> {
    let m = cycle_matrix(g, cycles)?;
    Ok(2 * g as u64 - rank_rational(&m.transpose()) as u64)
}

/// Abelianized quotient Z^{2g} / <cycles> as free rank plus torsion.
pub fn cycle_quotient(g: u32, cycles: &[Vec<i64>]) -> Result<CokernelGroup> {
    let width = 2 * g as usize;
    let m = cycle_matrix(g, cycles)?;
    // cokernel of the map Z^m -> Z^{2g}: pad to a square presentation
    let rows = m.nrows().max(width);
    let mut p = IntMat::zeros(width, rows.max(1));
    for i in 0..m.nrows() {
        for j in 0..width {
            p.set(j, i, m.get(i, j).clone());
        }
    }
    Ok(cokernel_group(&p))
}

/// Guarantee of constant e + sigma over Stein fillings.
pub fn stein_constant_check(b1_cap: i64) -> bool {
    b1_cap <= 1
}
