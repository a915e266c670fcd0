use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::FinGenAbGroup;
use crate::Result;

/// Character `x ↦ exp(2πi Σ k_i x_i / d_i)` of a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualCharacter {
    exponents: Vec<BigInt>,
    moduli: Vec<BigInt>,
}

impl DualCharacter {
    pub fn exponents(&self) -> &[BigInt] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }

    /// Phase of `χ(x)` as an exact fraction `num / den` of a full turn, with `0 ≤ num < den`.
    pub fn phase(&self, x: &[BigInt]) -> (BigInt, BigInt) {
        let den = self
            .moduli
            .iter()
            .fold(BigInt::from(1), |acc, d| acc.lcm(d));
        let num: BigInt = self
            .exponents
            .iter()
            .zip(&self.moduli)
            .zip(x)
            .map(|((k, d), xi)| k * xi * (&den / d))
            .sum();
        (num.mod_floor(&den), den)
    }

    pub fn eval(&self, x: &[BigInt]) -> Complex64 {
        let (num, den) = self.phase(x);
        if num.is_zero() {
            return Complex64::new(1.0, 0.0);
        }
        let t = num.to_f64().unwrap() / den.to_f64().unwrap();
        Complex64::from_polar(1.0, core::f64::consts::TAU * t)
    }
}

/// All characters of a finite group, in the group's own enumeration order of
/// exponent tuples (so the trivial character comes first).
pub fn character_group(h: &FinGenAbGroup) -> Result<Vec<DualCharacter>> {
    let moduli = h.torsion().to_vec();
    Ok(h.enumerate()?
        .into_iter()
        .map(|exponents| DualCharacter {
            exponents,
            moduli: moduli.clone(),
        })
        .collect())
}
