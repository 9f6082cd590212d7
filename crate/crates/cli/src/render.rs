//! Human-readable tables. Deterministic: the same report renders to the same
//! bytes.

use std::fmt::Write;

use crate::report::*;

fn descriptor_line(report: &Report) -> String {
    let Some(doc) = &report.descriptor else {
        return "monoid: (none)".into();
    };
    let value = serde_json::to_value(doc).expect("document serializes");
    let mut parts = vec![doc.family.clone()];
    if let serde_json::Value::Object(map) = value {
        for (k, v) in map.iter().filter(|(k, _)| *k != "family") {
            let shown = match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            parts.push(format!("{k}={shown}"));
        }
    }
    format!("monoid: {}", parts.join(" "))
}

fn set_text(items: &[u64]) -> String {
    let parts: Vec<String> = items.iter().map(u64::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn membership_lines(out: &mut String, m: &MembershipOut) {
    match (&m.certificate, &m.obstruction) {
        (Some(c), _) => {
            let _ = writeln!(out, "{}: member", m.element);
            let _ = writeln!(
                out,
                "certificate ({}): {}{}",
                c.kind,
                c.rendered,
                if c.verified { "" } else { "  [FAILED RECHECK]" }
            );
        }
        (None, Some(o)) => {
            let _ = writeln!(out, "{}: not a member", m.element);
            let _ = writeln!(
                out,
                "obstruction: {}{}",
                o.detail,
                if o.verified { "" } else { "  [FAILED RECHECK]" }
            );
        }
        (None, None) => {
            let _ = writeln!(out, "{}: undecided", m.element);
        }
    }
}

fn factorization_rows(out: &mut String, items: &[FactorizationOut]) {
    if items.is_empty() {
        let _ = writeln!(out, "  (none)");
    }
    for f in items {
        let _ = writeln!(out, "  length {}: {}", f.length, f.rendered);
    }
}

fn payload_lines(out: &mut String, p: &Payload) {
    match p {
        Payload::Classify(c) => {
            let width = c.flags.iter().map(|f| f.name.len()).max().unwrap_or(0);
            for f in &c.flags {
                let _ = writeln!(out, "  {:<width$}  {:<7}  {}", f.name, f.verdict, f.note);
            }
            let _ = writeln!(out, "membership: {}", c.membership_method);
        }
        Payload::Generators(g) => {
            for t in &g.generators {
                let ctrl = t.controlling_prime.map_or_else(|| "-".to_string(), |p| p.to_string());
                let _ = writeln!(out, "  a{:<4} {:<24} controlling prime {}", t.index, t.value, ctrl);
            }
            if g.finite {
                let _ = writeln!(out, "finite list of {} generators", g.generators.len());
            }
        }
        Payload::Decompose(d) => {
            for x in &d.decompositions {
                let _ = writeln!(out, "{}", x.rendered);
            }
            if let Some(o) = &d.obstruction {
                let _ = writeln!(out, "{}: not a member", d.element);
                let _ = writeln!(out, "obstruction: {}", o.detail);
            } else if d.decompositions.is_empty() {
                let _ = writeln!(out, "{}: no decomposition", d.element);
            }
        }
        Payload::Member(m) => membership_lines(out, m),
        Payload::Divides(d) => {
            let _ = writeln!(out, "does {} divide {}?", d.divisor, d.dividend);
            membership_lines(out, &d.membership);
        }
        Payload::Factorize(f) | Payload::Zlength(f) => {
            match f.length {
                Some(l) => {
                    let _ = writeln!(out, "Z({}, length {}) [{}]", f.element, l, f.completeness);
                }
                None => {
                    let _ = writeln!(out, "Z({}) [{}]", f.element, f.completeness);
                }
            }
            factorization_rows(out, &f.factorizations);
        }
        Payload::Lengths(l) => {
            let _ = writeln!(out, "L({}) = {}", l.element, set_text(&l.lengths));
            let _ = writeln!(out, "window: lengths up to {} [{}]", l.up_to, l.completeness);
            factorization_rows(out, &l.witnesses);
        }
        Payload::Atoms(a) => {
            for t in &a.atoms {
                let detail = match (&t.reason, &t.witness) {
                    (Some(r), _) => r.clone(),
                    (None, Some(w)) => format!("{} = {}", t.generator, w.rendered),
                    (None, None) => "undecided within bounds".into(),
                };
                let _ = writeln!(
                    out,
                    "  a{:<4} {:<20} {:<8} {}{}",
                    t.index,
                    t.generator,
                    t.verdict,
                    detail,
                    if t.verified { "" } else { "  [FAILED RECHECK]" }
                );
            }
        }
        Payload::Chain(c) => {
            if let Some(d) = &c.descent {
                let _ = writeln!(out, "descent measure of {}: (η, Σζ) = ({}, {})", d.element, d.eta, d.zeta_sum);
                match &d.chain_length_bound {
                    Some(b) => {
                        let _ = writeln!(out, "strict chains from {} have at most {} elements", d.element, b);
                    }
                    None => {
                        let _ = writeln!(out, "no length bound from {}", d.element);
                    }
                }
            } else {
                let _ = writeln!(out, "{} chain: {}", c.kind, c.elements.join(" > "));
                for (s, pair) in c.steps.iter().zip(c.elements.windows(2)) {
                    let _ = writeln!(
                        out,
                        "  step {}: {} − {} = {} = {}  {}",
                        s.step,
                        pair[0],
                        pair[1],
                        s.difference,
                        s.certificate.rendered,
                        if s.ok { "ok" } else { "FAILED" }
                    );
                }
            }
        }
    }
}

pub fn table(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", descriptor_line(report));
    if let Some(p) = &report.result {
        payload_lines(&mut out, p);
    }
    if let Some(e) = &report.error {
        let prefix = format!("{}: ", report.status.as_str());
        let _ = writeln!(out, "{}{}", if e.starts_with(&prefix) { "" } else { &prefix }, e);
    }
    for n in &report.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let b = &report.bounds;
    let _ = writeln!(
        out,
        "bounds: max_length={} max_index={} max_steps={} max_coeff={} node_budget={}",
        b.max_length, b.max_index, b.max_steps, b.max_coeff, b.node_budget
    );
    let _ = writeln!(out, "status: {}", report.status.as_str());
    out
}
