//! Structural classification of a descriptor.
//!
//! Builtin infinite families are classified by rule. For custom lists the
//! flags describe the listed generators only, since boundedness of an
//! infinite set cannot be read off a prefix; every such note says so.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::arith::ExactRational;
use crate::bounds::Bounds;
use crate::decomposition::{enumerate_decompositions, AtomicDecomposition};
use crate::factorization::{is_atom, AtomVerdict};
use crate::monoid::{Family, MonoidDescriptor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub verdict: Verdict,
    pub note: String,
}

fn flag(verdict: Verdict, note: impl Into<String>) -> Flag {
    Flag {
        verdict,
        note: note.into(),
    }
}

fn yes(note: impl Into<String>) -> Flag {
    flag(Verdict::Yes, note)
}

fn no(note: impl Into<String>) -> Flag {
    flag(Verdict::No, note)
}

fn unknown(note: impl Into<String>) -> Flag {
    flag(Verdict::Unknown, note)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub reciprocal: Flag,
    pub weak_reciprocal: Flag,
    pub almost_reciprocal: Flag,
    pub strongly_bounded: Flag,
    pub bounded: Flag,
    pub atomic: Flag,
    pub uad: Flag,
}

impl ClassificationReport {
    pub const FLAG_NAMES: [&'static str; 7] = [
        "reciprocal",
        "weak_reciprocal",
        "almost_reciprocal",
        "strongly_bounded",
        "bounded",
        "atomic",
        "uad",
    ];

    pub fn flags(&self) -> [(&'static str, &Flag); 7] {
        [
            ("reciprocal", &self.reciprocal),
            ("weak_reciprocal", &self.weak_reciprocal),
            ("almost_reciprocal", &self.almost_reciprocal),
            ("strongly_bounded", &self.strongly_bounded),
            ("bounded", &self.bounded),
            ("atomic", &self.atomic),
            ("uad", &self.uad),
        ]
    }

    /// reciprocal ⇒ weak reciprocal ⇒ strongly bounded ⇒ bounded, plus
    /// reciprocal ⇒ almost reciprocal ⇒ atomic and UAD.
    pub fn chain_holds(&self) -> bool {
        let implies = |a: &Flag, b: &Flag| {
            !(a.verdict == Verdict::Yes && b.verdict != Verdict::Yes)
                && !(b.verdict == Verdict::No && a.verdict != Verdict::No)
        };
        implies(&self.reciprocal, &self.weak_reciprocal)
            && implies(&self.weak_reciprocal, &self.strongly_bounded)
            && implies(&self.strongly_bounded, &self.bounded)
            && implies(&self.reciprocal, &self.almost_reciprocal)
            && implies(&self.almost_reciprocal, &self.atomic)
            && implies(&self.almost_reciprocal, &self.uad)
    }
}

/// Two distinct decompositions of one element, rendered for a note.
fn witness_note(desc: &MonoidDescriptor, pair: &[AtomicDecomposition]) -> String {
    let parts: Vec<String> = pair.iter().map(|d| d.render(desc)).collect();
    format!("two atomic decompositions: {}", parts.join(" and "))
}

fn decomposition(value: ExactRational, zeta: &[(usize, u64)]) -> AtomicDecomposition {
    AtomicDecomposition {
        value,
        eta: BigUint::ZERO,
        zeta: zeta.iter().map(|&(i, z)| (i, BigUint::from(z))).collect(),
    }
}

/// Two valid, distinct decompositions `x = u·a_i = v·a_j`, or `None`.
fn explicit_pair(desc: &MonoidDescriptor, i: usize, u: u64, j: usize, v: u64) -> Option<Vec<AtomicDecomposition>> {
    let x = &desc.value(i).ok()? * &BigUint::from(u);
    let pair = vec![decomposition(x.clone(), &[(i, u)]), decomposition(x, &[(j, v)])];
    pair.iter().all(|d| d.is_valid(desc)).then_some(pair)
}

fn rule_uad_no(desc: &MonoidDescriptor, pair: Option<Vec<AtomicDecomposition>>) -> Flag {
    match pair {
        Some(p) => no(witness_note(desc, &p)),
        None => unknown("expected non-unique decompositions but the witness did not check"),
    }
}

/// Classifies `desc`. Never fails; inconclusive flags are `unknown`.
pub fn classify(desc: &MonoidDescriptor) -> ClassificationReport {
    if desc.is_scaled() {
        return classify_scaled(desc);
    }
    let seq = desc.prime_sequence();
    let p = |n: usize| seq.as_ref().expect("prime-indexed").nth(n);
    match desc.family() {
        Family::PrimeReciprocal => ClassificationReport {
            reciprocal: yes("generators 1/p over pairwise coprime primes"),
            weak_reciprocal: yes("numerators 1, strictly increasing denominators"),
            almost_reciprocal: yes("reciprocal"),
            strongly_bounded: yes("all numerators are 1"),
            bounded: yes(format!("generators at most 1/{}", p(1))),
            atomic: yes("almost reciprocal; each 1/p_n is controlled by p_n"),
            uad: yes("almost reciprocal: decompositions are unique"),
        },
        Family::Grams { base } => {
            let b = *base;
            // First index whose generator is an atom: p_n must not divide b.
            let m = (1..).find(|&n| b % p(n) != 0).expect("finitely many primes divide b");
            let pair = explicit_pair(desc, m, p(m), m + 1, b * p(m + 1));
            ClassificationReport {
                reciprocal: no("atoms 1/(b^n p_n) all share the primes of b"),
                weak_reciprocal: yes("numerators 1, strictly increasing denominators"),
                almost_reciprocal: no("every generating set contains the atoms, whose denominators share the primes of b"),
                strongly_bounded: yes("all numerators are 1"),
                bounded: yes(format!("generators at most 1/{}", b * p(1))),
                atomic: yes("every generator whose prime does not divide b is controlled by it; the rest are sums of later ones"),
                uad: rule_uad_no(desc, pair),
            }
        }
        Family::Gap { ell } => {
            let l = *ell;
            let pair = explicit_pair(desc, 1, p(1), l + 1, p(2 * l + 1));
            ClassificationReport {
                reciprocal: no("atoms 1/(p_n p_{n+ell}) and 1/(p_{n+ell} p_{n+2ell}) share p_{n+ell}"),
                weak_reciprocal: yes("numerators 1, strictly increasing denominators"),
                almost_reciprocal: no("every generating set contains the atoms, whose denominators are not pairwise coprime"),
                strongly_bounded: yes("all numerators are 1"),
                bounded: yes(format!("generators at most 1/{}", p(1) * p(1 + l))),
                atomic: yes("p_n divides no denominator of a smaller generator, so every generator is an atom"),
                uad: rule_uad_no(desc, pair),
            }
        }
        Family::Geometric { ratio, .. } => classify_geometric(desc, ratio),
        Family::PowerReciprocal { base } => ClassificationReport {
            reciprocal: no("not atomic, while reciprocal monoids are"),
            weak_reciprocal: yes("numerators 1, strictly increasing denominators"),
            almost_reciprocal: no("not atomic, while almost reciprocal monoids are"),
            strongly_bounded: yes("all numerators are 1"),
            bounded: yes(format!("generators at most 1/{base}")),
            atomic: no(format!("no atoms: 1/{base}^n = {base}·(1/{base}^(n+1))")),
            uad: no("no atoms, so there are no atomic decompositions to be unique"),
        },
        Family::Mixed { k } => {
            let k = *k;
            if !desc.is_coprime_controlled() {
                return ClassificationReport {
                    reciprocal: unknown("prime override contains 2"),
                    weak_reciprocal: yes("numerators 1, distinct denominators"),
                    almost_reciprocal: unknown("prime override contains 2"),
                    strongly_bounded: yes("all numerators are 1"),
                    bounded: yes("generators at most 1/2"),
                    atomic: unknown("prime override contains 2"),
                    uad: unknown("prime override contains 2"),
                };
            }
            let weak = yes("numerators 1, distinct denominators (listed in increasing order)");
            let atomic = yes("each generator is controlled by its odd prime p_n");
            if k == 1 {
                ClassificationReport {
                    reciprocal: yes("denominators 2p_1, p_2, p_3, ... are pairwise coprime"),
                    weak_reciprocal: weak,
                    almost_reciprocal: yes("reciprocal"),
                    strongly_bounded: yes("all numerators are 1"),
                    bounded: yes(format!("generators at most 1/{}", (2 * p(1)).min(p(k + 1)))),
                    atomic,
                    uad: yes("almost reciprocal: decompositions are unique"),
                }
            } else {
                let pair = explicit_pair(desc, 1, p(1), 2, 2 * p(2));
                ClassificationReport {
                    reciprocal: no("atoms 1/(2p_1) and 1/(4p_2) share the prime 2"),
                    weak_reciprocal: weak,
                    almost_reciprocal: no("every generating set contains the atoms 1/(2p_1) and 1/(4p_2)"),
                    strongly_bounded: yes("all numerators are 1"),
                    bounded: yes(format!("generators at most 1/{}", (2 * p(1)).min(p(k + 1)))),
                    atomic,
                    uad: rule_uad_no(desc, pair),
                }
            }
        }
        Family::Custom { terms } => classify_custom(desc, terms),
    }
}

fn classify_geometric(desc: &MonoidDescriptor, ratio: &ExactRational) -> ClassificationReport {
    let (a, b) = ratio.to_u64_pair().expect("validated 64-bit ratio");
    if a == 1 {
        return ClassificationReport {
            reciprocal: no("not atomic, while reciprocal monoids are"),
            weak_reciprocal: yes("generators 1/b^n have numerator 1"),
            almost_reciprocal: no("not atomic, while almost reciprocal monoids are"),
            strongly_bounded: yes("all numerators are 1"),
            bounded: yes("generators at most 1"),
            atomic: no(format!("no atoms: (1/{b})^n = {b}·(1/{b})^(n+1)")),
            uad: no("no atoms, so there are no atomic decompositions to be unique"),
        };
    }
    // a·r^i = b·r^(i+1); needs a < b^i so that a is a valid coefficient.
    let mut i = 1u32;
    while BigUint::from(b).pow(i) <= BigUint::from(a) {
        i += 1;
    }
    let pair = explicit_pair(desc, i as usize, a, i as usize + 1, b);
    let atomic = yes("the valuation at a prime of n(q) or d(q) is strictly monotone in the exponent");
    if a < b {
        ClassificationReport {
            reciprocal: no("not strongly bounded"),
            weak_reciprocal: no("not strongly bounded"),
            almost_reciprocal: no("atoms q^n have denominators b^n, which are not pairwise coprime"),
            strongly_bounded: no(format!("every generating set contains all atoms q^n, with numerators {a}^n")),
            bounded: yes("generators at most 1"),
            atomic,
            uad: rule_uad_no(desc, pair),
        }
    } else {
        ClassificationReport {
            reciprocal: no("not bounded"),
            weak_reciprocal: no("not bounded"),
            almost_reciprocal: no("atoms q^n have denominators b^n, which are not pairwise coprime"),
            strongly_bounded: no("not bounded"),
            bounded: no("every generating set contains all atoms q^n, which are unbounded"),
            atomic,
            uad: rule_uad_no(desc, pair),
        }
    }
}

const TRUNCATION: &str = "truncation-only: ";

fn classify_custom(desc: &MonoidDescriptor, terms: &[ExactRational]) -> ClassificationReport {
    let t = |v: Verdict, s: &str| flag(v, format!("{TRUNCATION}{s}"));
    let unit_numerators = terms.iter().all(|x| x.numer().is_one());
    let almost = desc.is_almost_reciprocal();
    let reciprocal = if unit_numerators && almost {
        t(Verdict::Yes, "listed numerators are 1 and denominators pairwise coprime")
    } else if !unit_numerators {
        t(Verdict::No, "some listed numerator exceeds 1")
    } else {
        t(Verdict::No, "listed denominators are not pairwise coprime")
    };
    let weak = if unit_numerators {
        t(Verdict::Yes, "listed numerators are 1")
    } else {
        t(Verdict::No, "some listed numerator exceeds 1")
    };
    let almost_flag = if almost {
        t(Verdict::Yes, "listed denominators are at least 2 and pairwise coprime")
    } else {
        t(Verdict::No, "listed denominators are not pairwise coprime (or one is 1)")
    };
    let max_num = terms.iter().map(|x| x.numer()).max().expect("nonempty");
    let max_val = terms.iter().max().expect("nonempty");
    ClassificationReport {
        reciprocal,
        weak_reciprocal: weak,
        almost_reciprocal: almost_flag,
        strongly_bounded: t(Verdict::Yes, &format!("finitely many generators, numerators at most {max_num}")),
        bounded: t(Verdict::Yes, &format!("finitely many generators, at most {max_val}")),
        atomic: t(Verdict::Yes, "finitely generated Puiseux monoids are atomic"),
        uad: custom_uad(desc, almost, &t),
    }
}

fn custom_uad(desc: &MonoidDescriptor, almost: bool, t: &dyn Fn(Verdict, &str) -> Flag) -> Flag {
    if almost {
        return t(Verdict::Yes, "almost reciprocal: decompositions are unique");
    }
    let bounds = Bounds::default();
    let last = desc.last_index().expect("finite");
    let atoms: Vec<ExactRational> = (1..=last)
        .filter(|&n| {
            is_atom(desc, n, &bounds)
                .map(|c| !matches!(c.verdict, AtomVerdict::NotAtom(_)))
                .unwrap_or(true)
        })
        .map(|n| desc.value(n).expect("in range"))
        .collect();
    let Ok(atom_desc) = MonoidDescriptor::custom(atoms.clone()) else {
        return t(Verdict::Unknown, "could not form the atom list");
    };
    let listed: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
    if atom_desc.is_almost_reciprocal() {
        return t(
            Verdict::Yes,
            &format!("atoms {{{}}} are almost reciprocal", listed.join(", ")),
        );
    }
    // Look for m·a_j with a second decomposition over the atoms.
    for j in 1..=atoms.len().min(8) {
        let a = &atoms[j - 1];
        let d = a.denom().to_u64().unwrap_or(u64::MAX);
        for m in 1..d.min(17) {
            let x = a * &BigUint::from(m);
            let Ok(all) = enumerate_decompositions(&atom_desc, &x, atoms.len()) else {
                continue;
            };
            if all.len() >= 2 {
                return t(Verdict::No, &witness_note(&atom_desc, &all[..2]));
            }
        }
    }
    t(Verdict::Unknown, "no pair of decompositions found among small multiples of the atoms")
}

/// Scaling preserves atomicity and (strong) boundedness; the other flags
/// depend on the specific generators and are left open.
fn classify_scaled(desc: &MonoidDescriptor) -> ClassificationReport {
    let base = classify(&desc.unscaled());
    let scale = desc.scale_factor();
    let keep = |f: &Flag| flag(f.verdict, format!("as for the unscaled family (scale {scale}): {}", f.note));
    let open = |_: &Flag| unknown(format!("not preserved by scaling by {scale}"));
    let strongly_bounded = keep(&base.strongly_bounded);
    let bounded = keep(&base.bounded);
    let mut report = ClassificationReport {
        reciprocal: open(&base.reciprocal),
        weak_reciprocal: open(&base.weak_reciprocal),
        almost_reciprocal: open(&base.almost_reciprocal),
        strongly_bounded,
        bounded,
        atomic: keep(&base.atomic),
        uad: unknown(format!("integer parts change meaning under scaling by {scale}")),
    };
    // Upstream flags cannot be yes once a downstream one is no.
    if report.strongly_bounded.verdict == Verdict::No {
        report.weak_reciprocal = no("not strongly bounded");
        report.reciprocal = no("not strongly bounded");
    }
    if report.atomic.verdict == Verdict::No {
        report.reciprocal = no("not atomic");
        report.almost_reciprocal = no("not atomic");
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn builtin_examples() {
        let g = classify(&MonoidDescriptor::grams(2).unwrap());
        assert_eq!(g.weak_reciprocal.verdict, Verdict::Yes);
        assert_eq!(g.reciprocal.verdict, Verdict::No);
        assert_eq!(g.almost_reciprocal.verdict, Verdict::No);
        assert_eq!(g.strongly_bounded.verdict, Verdict::Yes);
        assert_eq!(g.bounded.verdict, Verdict::Yes);
        assert_eq!(g.atomic.verdict, Verdict::Yes);
        assert_eq!(g.uad.verdict, Verdict::No);
        assert!(g.uad.note.contains("3·(1/6)") && g.uad.note.contains("10·(1/20)"), "{}", g.uad.note);

        let p = classify(&MonoidDescriptor::prime_reciprocal());
        assert_eq!(p.reciprocal.verdict, Verdict::Yes);
        assert_eq!(p.atomic.verdict, Verdict::Yes);
        assert_eq!(p.uad.verdict, Verdict::Yes);

        let pw = classify(&MonoidDescriptor::power_reciprocal(2).unwrap());
        assert_eq!(pw.weak_reciprocal.verdict, Verdict::Yes);
        assert_eq!(pw.atomic.verdict, Verdict::No);
    }

    #[test]
    fn every_family_respects_the_chain() {
        let descs = vec![
            MonoidDescriptor::prime_reciprocal(),
            MonoidDescriptor::grams(2).unwrap(),
            MonoidDescriptor::grams(3).unwrap(),
            MonoidDescriptor::gap(1).unwrap(),
            MonoidDescriptor::gap(3).unwrap(),
            MonoidDescriptor::geometric(rat(2, 3), true).unwrap(),
            MonoidDescriptor::geometric(rat(3, 2), false).unwrap(),
            MonoidDescriptor::geometric(rat(1, 3), true).unwrap(),
            MonoidDescriptor::power_reciprocal(2).unwrap(),
            MonoidDescriptor::mixed(1).unwrap(),
            MonoidDescriptor::mixed(3).unwrap(),
            MonoidDescriptor::custom_pairs(&[1, 1], &[2, 4]).unwrap(),
            MonoidDescriptor::prime_reciprocal().scale(&rat(3, 2)).unwrap(),
        ];
        for d in descs {
            let r = classify(&d);
            assert!(r.chain_holds(), "{d}: {r:?}");
            for (name, f) in r.flags() {
                assert!(!f.note.is_empty(), "{d} {name}");
            }
            if d.is_finite() {
                assert!(r.flags().iter().all(|(_, f)| f.note.starts_with(TRUNCATION)));
            }
        }
    }

    #[test]
    fn non_uad_witnesses_check() {
        for d in [
            MonoidDescriptor::gap(1).unwrap(),
            MonoidDescriptor::gap(2).unwrap(),
            MonoidDescriptor::mixed(3).unwrap(),
            MonoidDescriptor::geometric(rat(2, 3), true).unwrap(),
            MonoidDescriptor::geometric(rat(5, 2), true).unwrap(),
            MonoidDescriptor::grams(3).unwrap(),
        ] {
            assert_eq!(classify(&d).uad.verdict, Verdict::No, "{d}");
        }
    }

    #[test]
    fn custom_lists() {
        let r = classify(&MonoidDescriptor::custom_pairs(&[1, 1], &[2, 4]).unwrap());
        assert_eq!(r.reciprocal.verdict, Verdict::No);
        // The atoms are just {1/4}.
        assert_eq!(r.uad.verdict, Verdict::Yes);
        let r = classify(&MonoidDescriptor::custom_pairs(&[1, 1], &[4, 6]).unwrap());
        assert_eq!(r.uad.verdict, Verdict::No, "{}", r.uad.note);
    }
}
