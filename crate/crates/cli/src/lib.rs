//! Front end for `puiseux`: parses a command, dispatches to the core crate and
//! renders a table or one JSON report.
//!
//! Exit codes: 0 ok, 2 not_member or unknown, 3 unsupported, 1 error.

pub mod args;
pub mod render;
pub mod report;

use std::ffi::OsString;

use clap::Parser;
use num_traits::Zero;
use puiseux_core::decomposition::verify_obstruction;
use puiseux_core::monoid::DescriptorDocument;
use puiseux_core::{
    atomic_decompose, chain_length_bound, classify, descent_measure, divides, enumerate_decompositions,
    enumerate_factorizations, factorizations_of_length, gap_chain, grams_chain, is_atom, length_set, member,
    membership_method, parse_descriptor, verify_chain, AtomVerdict, AtomicDecomposition, Bounds, Certificate,
    ChainLimit, Completeness, Decomposed, Error, ExactRational, Factorization, Family, MembershipVerdict,
    Method, MonoidDescriptor, Obstruction, Result,
};

use args::{Cli, DescriptorArgs, LimitArgs, Verb};
use report::*;

/// What the process prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            // --help and --version are not failures.
            return if e.use_stderr() {
                Output {
                    stdout: String::new(),
                    stderr: text,
                    code: 1,
                }
            } else {
                Output {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                }
            };
        }
    };
    let report = execute(&cli);
    let code = report.status.exit_code();
    if cli.json {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        return Output {
            stdout: text + "\n",
            stderr: String::new(),
            code,
        };
    }
    let text = render::table(&report);
    if report.status == Status::Error {
        Output {
            stdout: String::new(),
            stderr: text,
            code,
        }
    } else {
        Output {
            stdout: text,
            stderr: String::new(),
            code,
        }
    }
}

fn bounds_echo(l: &LimitArgs) -> BoundsEcho {
    BoundsEcho {
        max_length: l.max_length,
        max_index: l.max_index as usize,
        max_steps: l.max_steps as usize,
        max_coeff: l.max_coeff,
        node_budget: l.node_budget,
    }
}

fn core_bounds(b: &BoundsEcho) -> Bounds {
    Bounds {
        max_index: b.max_index,
        max_block_coeff: b.max_coeff,
        max_length: b.max_length,
        node_budget: b.node_budget,
    }
}

/// Runs a parsed command; failures become `error` or `unsupported` reports.
pub fn execute(cli: &Cli) -> Report {
    let mut report = Report {
        verb: cli.verb.name().into(),
        status: Status::Ok,
        descriptor: None,
        bounds: bounds_echo(&cli.limits),
        notes: Vec::new(),
        result: None,
        error: None,
    };
    let outcome = load_descriptor(&cli.descriptor).and_then(|desc| {
        report.descriptor = DescriptorDocument::from_descriptor(&desc).ok();
        dispatch(&cli.verb, &desc, &report.bounds, &mut report.notes)
    });
    match outcome {
        Ok((status, payload)) => {
            report.status = status;
            report.result = Some(payload);
        }
        Err(e) => {
            report.status = match e {
                Error::Unsupported(_) => Status::Unsupported,
                _ => Status::Error,
            };
            report.error = Some(e.to_string());
        }
    }
    report
}

fn load_descriptor(a: &DescriptorArgs) -> Result<MonoidDescriptor> {
    let inline_flags = a.base.is_some()
        || a.ell.is_some()
        || a.ratio.is_some()
        || a.no_unit
        || a.k.is_some()
        || a.primes.is_some()
        || a.scale.is_some()
        || a.numerators.is_some()
        || a.denominators.is_some();
    if let Some(path) = &a.file {
        if inline_flags {
            return Err(Error::Parse("descriptor flags cannot be combined with --file".into()));
        }
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        return parse_descriptor(&text);
    }
    let Some(family) = &a.family else {
        return Err(Error::Parse("a descriptor is required: -d NAME or --file PATH".into()));
    };
    DescriptorDocument {
        family: family.clone(),
        base: a.base,
        ell: a.ell,
        q: a.ratio.clone(),
        include_unit: a.no_unit.then_some(false),
        k: a.k,
        numerators: a.numerators.clone(),
        denominators: a.denominators.clone(),
        primes: a.primes.clone(),
        scale: a.scale.clone(),
    }
    .to_descriptor()
}

fn rational(text: &str) -> Result<ExactRational> {
    text.parse()
}

fn generator_text(desc: &MonoidDescriptor, i: usize) -> String {
    desc.value(i).map_or_else(|_| format!("a{i}"), |a| a.to_string())
}

fn terms_of<'a>(
    desc: &MonoidDescriptor,
    pairs: impl IntoIterator<Item = (&'a usize, &'a num_bigint::BigUint)>,
) -> Vec<TermOut> {
    pairs
        .into_iter()
        .map(|(&i, c)| TermOut {
            index: i,
            generator: generator_text(desc, i),
            coefficient: c.to_string(),
        })
        .collect()
}

fn decomposition_out(desc: &MonoidDescriptor, d: &AtomicDecomposition) -> DecompositionOut {
    DecompositionOut {
        value: d.value.to_string(),
        eta: d.eta.to_string(),
        zeta: terms_of(desc, &d.zeta),
        rendered: d.render(desc),
    }
}

fn factorization_out(desc: &MonoidDescriptor, f: &Factorization) -> FactorizationOut {
    FactorizationOut {
        length: f.length().to_string(),
        terms: terms_of(desc, f.exponents()),
        rendered: f.render(desc),
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::UniqueDecomposition => "unique_decomposition",
        Method::ResidueRemainder => "residue_remainder",
        Method::FiniteSearch => "finite_search",
        Method::BoundedSearch => "bounded_search",
    }
}

fn obstruction_kind(ob: &Obstruction) -> &'static str {
    match ob {
        Obstruction::DenominatorSupport { .. } => "denominator_support",
        Obstruction::NegativeRemainder { .. } => "negative_remainder",
        Obstruction::Residue { .. } => "residue",
        Obstruction::Exhausted { .. } => "exhausted",
    }
}

fn obstruction_out(ob: &Obstruction, verified: bool) -> ObstructionOut {
    ObstructionOut {
        kind: obstruction_kind(ob).into(),
        detail: ob.to_string(),
        verified,
    }
}

/// `x` is the element whose membership was decided.
fn membership_out(
    desc: &MonoidDescriptor,
    x: &num_rational::BigRational,
    verdict: &MembershipVerdict,
    notes: &mut Vec<String>,
) -> (Status, MembershipOut) {
    let mut out = MembershipOut {
        element: x.to_string(),
        method: method_name(membership_method(desc)).into(),
        verdict: String::new(),
        certificate: None,
        obstruction: None,
    };
    notes.push(membership_method(desc).describe().into());
    let status = match verdict {
        MembershipVerdict::Member(cert) => {
            let verified = cert.evaluate(desc).is_ok_and(|v| v.to_signed() == *x);
            out.certificate = Some(match cert {
                Certificate::Decomposition(d) => CertificateOut {
                    kind: "decomposition".into(),
                    eta: Some(d.eta.to_string()),
                    terms: terms_of(desc, &d.zeta),
                    rendered: d.render(desc),
                    verified,
                },
                Certificate::Combination(f) => CertificateOut {
                    kind: "combination".into(),
                    eta: None,
                    terms: terms_of(desc, f.exponents()),
                    rendered: f.render(desc),
                    verified,
                },
            });
            out.verdict = "member".into();
            Status::Ok
        }
        MembershipVerdict::NotMember(ob) => {
            out.obstruction = Some(obstruction_out(ob, ob.verify(desc, x)));
            out.verdict = "not_member".into();
            Status::NotMember
        }
        MembershipVerdict::Unknown(b) => {
            notes.push(format!(
                "no certificate within max_index={}, max_coeff={}, node_budget={}; nothing is claimed",
                b.max_index, b.max_block_coeff, b.node_budget
            ));
            out.verdict = "unknown".into();
            Status::Unknown
        }
    };
    (status, out)
}

fn completeness_note(c: &Completeness) -> String {
    match c {
        Completeness::Complete => "complete: no factorization is missing".into(),
        Completeness::UpToBounds { .. } => {
            format!("{c}: nothing is missing within these limits; larger ones may add more")
        }
        Completeness::Unknown => "unknown: the search budget ran out, listed items are correct but some may be missing".into(),
    }
}

fn completeness_status(c: &Completeness) -> Status {
    match c {
        Completeness::Unknown => Status::Unknown,
        _ => Status::Ok,
    }
}

fn dispatch(
    verb: &Verb,
    desc: &MonoidDescriptor,
    bounds: &BoundsEcho,
    notes: &mut Vec<String>,
) -> Result<(Status, Payload)> {
    let cb = core_bounds(bounds);
    match verb {
        Verb::Classify => {
            let rep = classify(desc);
            let flags = rep
                .flags()
                .iter()
                .map(|(name, f)| FlagOut {
                    name: (*name).into(),
                    verdict: f.verdict.to_string(),
                    note: f.note.clone(),
                })
                .collect();
            Ok((
                Status::Ok,
                Payload::Classify(ClassifyOut {
                    flags,
                    membership_method: membership_method(desc).describe().into(),
                }),
            ))
        }
        Verb::Generators { count } => {
            let generators = desc
                .generators(*count as usize)
                .into_iter()
                .map(|g| GeneratorOut {
                    index: g.index,
                    value: g.value.to_string(),
                    controlling_prime: g.controlling_prime,
                })
                .collect();
            Ok((
                Status::Ok,
                Payload::Generators(GeneratorsOut {
                    finite: desc.is_finite(),
                    generators,
                }),
            ))
        }
        Verb::Decompose { q, all } => {
            let q = rational(q)?;
            if *all {
                let ds = enumerate_decompositions(desc, &q, bounds.max_index)?;
                notes.push(format!(
                    "exhaustive: every decomposition supported on indices up to {}",
                    bounds.max_index
                ));
                let status = if ds.is_empty() { Status::NotMember } else { Status::Ok };
                return Ok((
                    status,
                    Payload::Decompose(DecomposeOut {
                        element: q.to_string(),
                        mode: "exhaustive".into(),
                        decompositions: ds.iter().map(|d| decomposition_out(desc, d)).collect(),
                        obstruction: None,
                    }),
                ));
            }
            let mut out = DecomposeOut {
                element: q.to_string(),
                mode: "unique".into(),
                decompositions: Vec::new(),
                obstruction: None,
            };
            let status = match atomic_decompose(desc, &q)? {
                Decomposed::Unique(d) => {
                    out.decompositions.push(decomposition_out(desc, &d));
                    Status::Ok
                }
                Decomposed::NotMember(ob) => {
                    out.obstruction = Some(obstruction_out(&ob, verify_obstruction(desc, &q, &ob)));
                    Status::NotMember
                }
            };
            notes.push(membership_method(desc).describe().into());
            Ok((status, Payload::Decompose(out)))
        }
        Verb::Member { q } => {
            let q = rational(q)?;
            let verdict = member(desc, &q, &cb)?;
            let (status, out) = membership_out(desc, &q.to_signed(), &verdict, notes);
            Ok((status, Payload::Member(out)))
        }
        Verb::Divides { r, q } => {
            let r = rational(r)?;
            let q = rational(q)?;
            let verdict = divides(desc, &r, &q, &cb)?;
            let diff = q.signed_sub(&r);
            let (status, membership) = membership_out(desc, &diff, &verdict, notes);
            Ok((
                status,
                Payload::Divides(DividesOut {
                    divisor: r.to_string(),
                    dividend: q.to_string(),
                    difference: q.checked_sub(&r).map(|d| d.to_string()),
                    membership,
                }),
            ))
        }
        Verb::Factorize { q } => {
            let q = rational(q)?;
            let set = enumerate_factorizations(desc, &q, bounds.max_length, bounds.max_index)?;
            notes.push(completeness_note(&set.complete));
            Ok((
                completeness_status(&set.complete),
                Payload::Factorize(FactorizationsOut {
                    element: q.to_string(),
                    length: None,
                    completeness: set.complete.to_string(),
                    factorizations: set.items.iter().map(|f| factorization_out(desc, f)).collect(),
                }),
            ))
        }
        Verb::Lengths { q, up_to } => {
            let q = rational(q)?;
            let up_to = up_to.unwrap_or(bounds.max_length);
            let ls = length_set(desc, &q, up_to)?;
            notes.push(completeness_note(&ls.complete));
            Ok((
                completeness_status(&ls.complete),
                Payload::Lengths(LengthsOut {
                    element: q.to_string(),
                    up_to,
                    completeness: ls.complete.to_string(),
                    lengths: ls.lengths.iter().copied().collect(),
                    witnesses: ls.witnesses.values().map(|f| factorization_out(desc, f)).collect(),
                }),
            ))
        }
        Verb::Zlength { q, length } => {
            let q = rational(q)?;
            let set = factorizations_of_length(desc, &q, *length)?;
            notes.push(completeness_note(&set.complete));
            Ok((
                completeness_status(&set.complete),
                Payload::Zlength(FactorizationsOut {
                    element: q.to_string(),
                    length: Some(*length),
                    completeness: set.complete.to_string(),
                    factorizations: set.items.iter().map(|f| factorization_out(desc, f)).collect(),
                }),
            ))
        }
        Verb::Atoms { count } => {
            let first = desc.first_index();
            let mut atoms = Vec::new();
            let mut status = Status::Ok;
            for n in desc.indices_upto(first + *count as usize - 1) {
                let cert = is_atom(desc, n, &cb)?;
                let verified = cert.verify(desc);
                let (verdict, reason, witness) = match &cert.verdict {
                    AtomVerdict::Atom(r) => ("atom", Some(r.to_string()), None),
                    AtomVerdict::NotAtom(w) => ("not_atom", None, Some(factorization_out(desc, w))),
                    AtomVerdict::Unknown(_) => {
                        status = Status::Unknown;
                        ("unknown", None, None)
                    }
                };
                atoms.push(AtomOut {
                    index: n,
                    generator: generator_text(desc, n),
                    verdict: verdict.into(),
                    reason,
                    witness,
                    verified,
                });
            }
            if status == Status::Unknown {
                notes.push(format!(
                    "some generators were undecided within max_coeff={} and node_budget={}",
                    bounds.max_coeff, bounds.node_budget
                ));
            }
            Ok((status, Payload::Atoms(AtomsOut { atoms })))
        }
        Verb::Chain { steps, from } => {
            if let Some(q) = from {
                let q = rational(q)?;
                let m = descent_measure(desc, &q)?;
                let bound = chain_length_bound(desc, &q)?;
                notes.push(
                    "along a strict divisibility chain (η, Σζ) decreases lexicographically, so every chain stops"
                        .into(),
                );
                if m.eta.is_zero() {
                    notes.push("η = 0: η stays 0 and Σζ drops at each step".into());
                } else {
                    notes.push("η > 0: chains terminate but their length is not bounded from this element".into());
                }
                return Ok((
                    Status::Ok,
                    Payload::Chain(ChainOut {
                        kind: "descent".into(),
                        elements: vec![q.to_string()],
                        steps: Vec::new(),
                        verified: true,
                        descent: Some(DescentOut {
                            element: q.to_string(),
                            eta: m.eta.to_string(),
                            zeta_sum: m.zeta_sum.to_string(),
                            chain_length_bound: bound.map(|b| b.to_string()),
                        }),
                    }),
                ));
            }
            let n = steps.map_or(bounds.max_steps, |s| s as usize);
            let limit = ChainLimit(bounds.max_steps);
            let (kind, witness) = match desc.family() {
                Family::Grams { .. } => ("grams", grams_chain(desc, n, limit)?),
                Family::Gap { .. } => ("gap", gap_chain(desc, n, limit)?),
                _ => {
                    return Err(Error::Unsupported(format!(
                        "no explicit non-stabilizing chain for {desc}; use --from q for the descent measure"
                    )))
                }
            };
            let rep = verify_chain(desc, &witness);
            let steps = rep
                .steps
                .iter()
                .zip(&witness.steps)
                .map(|(s, f)| StepOut {
                    step: s.step,
                    difference: s.difference.to_string(),
                    certificate: factorization_out(desc, f),
                    ok: s.ok,
                })
                .collect();
            notes.push("each step difference was recomputed and matched against its certificate".into());
            let status = if rep.ok {
                Status::Ok
            } else {
                return Err(Error::Domain("chain certificate failed to verify".into()));
            };
            Ok((
                status,
                Payload::Chain(ChainOut {
                    kind: kind.into(),
                    elements: witness.elements.iter().map(|e| e.to_string()).collect(),
                    steps,
                    verified: rep.ok,
                    descent: None,
                }),
            ))
        }
    }
}
