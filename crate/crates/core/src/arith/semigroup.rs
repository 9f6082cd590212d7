//! Membership in submonoids of the nonnegative integers.
//!
//! Uses the Apéry set with respect to the smallest generator: for each
//! residue class modulo `m` the least representable element, found by a
//! shortest-path sweep. An integer `n` is representable iff it is at least
//! the Apéry element of its class.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest smallest-generator we are willing to build an Apéry table for.
pub const APERY_LIMIT: u64 = 10_000_000;

/// Outcome of an integer membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntMembership {
    Member,
    /// `value ≡ residue (mod modulus)` but the least representable integer in
    /// that class is `least` (`None`: the class holds no representable integer).
    NotMember {
        modulus: u64,
        residue: u64,
        least: Option<BigUint>,
    },
}

#[derive(Clone, Debug)]
pub struct IntegerMonoid {
    modulus: u64,
    /// Least representable element per residue class, `None` if unreachable.
    apery: Vec<Option<u128>>,
}

impl IntegerMonoid {
    /// Builds the monoid generated by `gens` (zeros ignored). An empty list
    /// generates `{0}`.
    pub fn new(gens: &[u64]) -> Result<Self> {
        let mut gens: Vec<u64> = gens.iter().copied().filter(|g| *g > 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let Some(&m) = gens.first() else {
            return Ok(Self {
                modulus: 0,
                apery: Vec::new(),
            });
        };
        if m > APERY_LIMIT {
            return Err(Error::Unsupported(format!(
                "smallest numerator {m} exceeds the Apéry table limit {APERY_LIMIT}"
            )));
        }
        let mut dist: Vec<Option<u128>> = vec![None; m as usize];
        dist[0] = Some(0);
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0u128, 0u64)));
        while let Some(Reverse((d, r))) = heap.pop() {
            if dist[r as usize] != Some(d) {
                continue;
            }
            for &g in &gens[1..] {
                let nd = d + g as u128;
                let nr = ((r as u128 + g as u128) % m as u128) as u64;
                if dist[nr as usize].is_none_or(|old| nd < old) {
                    dist[nr as usize] = Some(nd);
                    heap.push(Reverse((nd, nr)));
                }
            }
        }
        Ok(Self {
            modulus: m,
            apery: dist,
        })
    }

    pub fn contains(&self, n: &BigUint) -> IntMembership {
        if n.is_zero() {
            return IntMembership::Member;
        }
        if self.modulus == 0 {
            return IntMembership::NotMember {
                modulus: 0,
                residue: 0,
                least: None,
            };
        }
        let r = (n % self.modulus).to_u64().expect("residue fits");
        match self.apery[r as usize] {
            Some(least) if BigUint::from(least) <= *n => IntMembership::Member,
            least => IntMembership::NotMember {
                modulus: self.modulus,
                residue: r,
                least: least.map(BigUint::from),
            },
        }
    }

    /// Greatest common divisor of the generators (0 for the trivial monoid).
    pub fn gcd_of(gens: &[u64]) -> u64 {
        gens.iter().fold(0u64, |acc, g| acc.gcd(g))
    }
}
