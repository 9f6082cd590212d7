//! Bounded integer knapsack search shared by the membership, factorization
//! and atom procedures.
//!
//! A query `q = Σ cᵢ·aᵢ` is scaled by `L = lcm(d(q), d(aᵢ))` so every weight
//! and the target are integers.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::ExactRational;

#[derive(Clone, Debug)]
pub(crate) struct Knapsack {
    pub indices: Vec<usize>,
    pub weights: Vec<BigUint>,
    pub target: BigUint,
    pub scale: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum FindOutcome {
    Found(Vec<(usize, u64)>),
    Exhausted,
    OutOfBudget,
}

impl Knapsack {
    pub fn new(q: &ExactRational, items: &[(usize, ExactRational)]) -> Self {
        let scale = items
            .iter()
            .fold(q.denom().clone(), |acc, (_, a)| acc.lcm(a.denom()));
        let weights = items
            .iter()
            .map(|(_, a)| a.times_integer(&scale).expect("lcm multiple"))
            .collect();
        Self {
            indices: items.iter().map(|(i, _)| *i).collect(),
            weights,
            target: q.times_integer(&scale).expect("lcm multiple"),
            scale,
        }
    }

    /// `min(cap, ⌊rem / w⌋)`.
    fn room(rem: &BigUint, w: &BigUint, cap: u64) -> u64 {
        let fit = rem / w;
        fit.to_u64().map_or(cap, |f| f.min(cap))
    }

    fn suffix_reach(&self, caps: &[u64]) -> Vec<BigUint> {
        let mut reach = vec![BigUint::zero(); self.weights.len() + 1];
        for i in (0..self.weights.len()).rev() {
            reach[i] = &reach[i + 1] + &self.weights[i] * caps[i];
        }
        reach
    }

    /// One solution of `Σ cᵢwᵢ = target` with `cᵢ ≤ caps[i]`, larger coefficients
    /// on earlier items tried first.
    pub fn find_one(&self, caps: &[u64], budget: u64) -> FindOutcome {
        let reach = self.suffix_reach(caps);
        let mut st = FindState {
            ks: self,
            caps,
            reach,
            dead: HashSet::new(),
            coeffs: vec![0; self.weights.len()],
            budget,
        };
        match st.go(0, self.target.clone()) {
            Some(true) => FindOutcome::Found(
                self.indices
                    .iter()
                    .zip(&st.coeffs)
                    .filter(|(_, c)| **c > 0)
                    .map(|(i, c)| (*i, *c))
                    .collect(),
            ),
            Some(false) => FindOutcome::Exhausted,
            None => FindOutcome::OutOfBudget,
        }
    }

    /// Every solution with `cᵢ ≤ caps[i]` and `Σ cᵢ ≤ max_len`. The flag is
    /// false when the node budget ran out before the space was exhausted.
    pub fn enumerate(&self, caps: &[u64], max_len: u64, budget: u64) -> (Vec<Vec<u64>>, bool) {
        let reach = self.suffix_reach(caps);
        let mut st = EnumState {
            ks: self,
            caps,
            reach,
            coeffs: vec![0; self.weights.len()],
            out: Vec::new(),
            budget,
            exhausted: true,
        };
        st.go(0, self.target.clone(), max_len);
        (st.out, st.exhausted)
    }
}

struct FindState<'a> {
    ks: &'a Knapsack,
    caps: &'a [u64],
    reach: Vec<BigUint>,
    dead: HashSet<(usize, BigUint)>,
    coeffs: Vec<u64>,
    budget: u64,
}

impl FindState<'_> {
    /// `Some(found)` or `None` when out of budget.
    fn go(&mut self, i: usize, rem: BigUint) -> Option<bool> {
        if rem.is_zero() {
            self.coeffs[i..].iter_mut().for_each(|c| *c = 0);
            return Some(true);
        }
        if i == self.ks.weights.len() || rem > self.reach[i] {
            return Some(false);
        }
        if self.dead.contains(&(i, rem.clone())) {
            return Some(false);
        }
        if self.budget == 0 {
            return None;
        }
        self.budget -= 1;
        let w = &self.ks.weights[i];
        let top = Knapsack::room(&rem, w, self.caps[i]);
        for c in (0..=top).rev() {
            self.coeffs[i] = c;
            if self.go(i + 1, &rem - w * c)? {
                return Some(true);
            }
        }
        self.coeffs[i] = 0;
        self.dead.insert((i, rem));
        Some(false)
    }
}

struct EnumState<'a> {
    ks: &'a Knapsack,
    caps: &'a [u64],
    reach: Vec<BigUint>,
    coeffs: Vec<u64>,
    out: Vec<Vec<u64>>,
    budget: u64,
    exhausted: bool,
}

impl EnumState<'_> {
    fn go(&mut self, i: usize, rem: BigUint, len_left: u64) {
        if rem.is_zero() {
            let mut hit = self.coeffs.clone();
            hit[i..].iter_mut().for_each(|c| *c = 0);
            self.out.push(hit);
            return;
        }
        if i == self.ks.weights.len() || len_left == 0 || rem > self.reach[i] {
            return;
        }
        if self.budget == 0 {
            self.exhausted = false;
            return;
        }
        self.budget -= 1;
        let w = &self.ks.weights[i];
        let top = Knapsack::room(&rem, w, self.caps[i].min(len_left));
        for c in 0..=top {
            self.coeffs[i] = c;
            self.go(i + 1, &rem - w * c, len_left - c);
        }
        self.coeffs[i] = 0;
    }
}
