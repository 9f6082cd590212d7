//! The JSON descriptor document.
//!
//! `{"family": name, ...parameters}` with parameters `base`, `ell`, `q`,
//! `include_unit`, `k`, `numerators`, `denominators`, `primes` and `scale`.
//! Unknown fields and parameters that the family does not take are rejected.

use serde::{Deserialize, Serialize};

use crate::arith::ExactRational;
use crate::error::{Error, Result};
use crate::monoid::{Family, MonoidDescriptor};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorDocument {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub include_unit: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numerators: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominators: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<u64>>,
    /// Multiplies every generator of a builtin family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<String>,
}

pub const FAMILY_NAMES: [&str; 7] = [
    "prime_reciprocal",
    "grams",
    "gap",
    "geometric",
    "power_reciprocal",
    "mixed_5_2",
    "custom",
];

fn field_error(field: &str, reason: impl Into<String>) -> Error {
    Error::Descriptor {
        field: field.into(),
        reason: reason.into(),
    }
}

fn rational(field: &str, text: &str) -> Result<ExactRational> {
    text.parse()
        .map_err(|e: Error| field_error(field, e.to_string()))
}

impl DescriptorDocument {
    fn present(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        let mut add = |name, set: bool| {
            if set {
                v.push(name);
            }
        };
        add("base", self.base.is_some());
        add("ell", self.ell.is_some());
        add("q", self.q.is_some());
        add("include_unit", self.include_unit.is_some());
        add("k", self.k.is_some());
        add("numerators", self.numerators.is_some());
        add("denominators", self.denominators.is_some());
        add("primes", self.primes.is_some());
        add("scale", self.scale.is_some());
        v
    }

    pub fn to_descriptor(&self) -> Result<MonoidDescriptor> {
        let allowed: &[&str] = match self.family.as_str() {
            "prime_reciprocal" => &["primes", "scale"],
            "grams" => &["base", "primes", "scale"],
            "gap" => &["ell", "primes", "scale"],
            "geometric" => &["q", "include_unit", "scale"],
            "power_reciprocal" => &["base", "scale"],
            "mixed_5_2" => &["k", "primes", "scale"],
            "custom" => &["numerators", "denominators"],
            other => {
                return Err(field_error(
                    "family",
                    format!("unknown family `{other}`; expected one of {}", FAMILY_NAMES.join(", ")),
                ))
            }
        };
        if let Some(extra) = self.present().into_iter().find(|f| !allowed.contains(f)) {
            return Err(field_error(
                extra,
                format!("not a parameter of family {}", self.family),
            ));
        }
        let need = |name: &str| field_error(name, format!("required for family {}", self.family));
        let family = match self.family.as_str() {
            "prime_reciprocal" => Family::PrimeReciprocal,
            "grams" => Family::Grams {
                base: self.base.ok_or_else(|| need("base"))?,
            },
            "gap" => Family::Gap {
                ell: self.ell.ok_or_else(|| need("ell"))?,
            },
            "geometric" => Family::Geometric {
                ratio: rational("q", self.q.as_deref().ok_or_else(|| need("q"))?)?,
                include_unit: self.include_unit.unwrap_or(true),
            },
            "power_reciprocal" => Family::PowerReciprocal {
                base: self.base.ok_or_else(|| need("base"))?,
            },
            "mixed_5_2" => Family::Mixed {
                k: self.k.ok_or_else(|| need("k"))?,
            },
            "custom" => {
                let nums = self.numerators.as_ref().ok_or_else(|| need("numerators"))?;
                let dens = self.denominators.as_ref().ok_or_else(|| need("denominators"))?;
                return MonoidDescriptor::custom_pairs(nums, dens);
            }
            _ => unreachable!("checked above"),
        };
        let desc = MonoidDescriptor::with_primes(family, self.primes.clone())?;
        match &self.scale {
            Some(s) => {
                let f = rational("scale", s)?;
                if f.is_zero() {
                    return Err(field_error("scale", "must be positive"));
                }
                desc.scale(&f)
            }
            None => Ok(desc),
        }
    }

    pub fn from_descriptor(desc: &MonoidDescriptor) -> Result<Self> {
        let mut doc = DescriptorDocument {
            family: desc.family().name().to_string(),
            primes: desc.prime_prefix().map(|p| p.to_vec()),
            scale: desc.is_scaled().then(|| desc.scale_factor().to_string()),
            ..Default::default()
        };
        match desc.family() {
            Family::PrimeReciprocal => {}
            Family::Grams { base } | Family::PowerReciprocal { base } => doc.base = Some(*base),
            Family::Gap { ell } => doc.ell = Some(*ell),
            Family::Geometric {
                ratio,
                include_unit,
            } => {
                doc.q = Some(ratio.to_string());
                doc.include_unit = Some(*include_unit);
            }
            Family::Mixed { k } => doc.k = Some(*k),
            Family::Custom { terms } => {
                let pairs: Option<Vec<(u64, u64)>> = terms.iter().map(|t| t.to_u64_pair()).collect();
                let pairs = pairs.ok_or_else(|| {
                    Error::Unsupported("custom generators beyond 64-bit parts cannot be written".into())
                })?;
                doc.numerators = Some(pairs.iter().map(|p| p.0).collect());
                doc.denominators = Some(pairs.iter().map(|p| p.1).collect());
            }
        }
        Ok(doc)
    }
}

/// Parses a descriptor document.
pub fn parse_descriptor(text: &str) -> Result<MonoidDescriptor> {
    let doc: DescriptorDocument = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("descriptor document: {e}")))?;
    doc.to_descriptor()
}

pub fn descriptor_to_json(desc: &MonoidDescriptor) -> Result<String> {
    let doc = DescriptorDocument::from_descriptor(desc)?;
    Ok(serde_json::to_string(&doc).expect("plain data serializes"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_descriptor(r#"{"family":"prime_reciprocal"}"#).unwrap(),
            MonoidDescriptor::prime_reciprocal()
        );
        assert_eq!(
            parse_descriptor(r#"{"family":"gap","ell":1}"#).unwrap(),
            MonoidDescriptor::gap(1).unwrap()
        );
        let d = parse_descriptor(r#"{"family":"custom","numerators":[1,1],"denominators":[2,4]}"#).unwrap();
        assert!(!d.is_almost_reciprocal());
    }

    #[test]
    fn diagnostics_name_the_field() {
        let field_of = |text: &str| match parse_descriptor(text) {
            Err(Error::Descriptor { field, .. }) => field,
            other => panic!("{text}: {other:?}"),
        };
        assert_eq!(field_of(r#"{"family":"nope"}"#), "family");
        assert_eq!(field_of(r#"{"family":"gap"}"#), "ell");
        assert_eq!(field_of(r#"{"family":"gap","ell":1,"base":2}"#), "base");
        assert_eq!(
            field_of(r#"{"family":"custom","numerators":[1],"denominators":[2,3]}"#),
            "denominators"
        );
        assert_eq!(
            field_of(r#"{"family":"custom","numerators":[2],"denominators":[4]}"#),
            "numerators"
        );
        assert_eq!(field_of(r#"{"family":"geometric","q":"2/0"}"#), "q");
        assert_eq!(field_of(r#"{"family":"grams","base":2,"primes":[3,4]}"#), "primes");
        assert!(matches!(
            parse_descriptor(r#"{"family":"gap","ell":1,"colour":"red"}"#),
            Err(Error::Parse(m)) if m.contains("colour")
        ));
    }

    #[test]
    fn round_trip() {
        let descs = vec![
            MonoidDescriptor::prime_reciprocal(),
            MonoidDescriptor::grams(3).unwrap(),
            MonoidDescriptor::with_primes(Family::Grams { base: 2 }, Some(vec![3, 5, 7])).unwrap(),
            MonoidDescriptor::gap(2).unwrap(),
            MonoidDescriptor::geometric(rat(2, 3), false).unwrap(),
            MonoidDescriptor::power_reciprocal(5).unwrap(),
            MonoidDescriptor::mixed(3).unwrap(),
            MonoidDescriptor::custom(vec![rat(1, 3), rat(3, 5)]).unwrap(),
            MonoidDescriptor::prime_reciprocal().scale(&rat(2, 7)).unwrap(),
        ];
        for d in descs {
            let text = descriptor_to_json(&d).unwrap();
            assert_eq!(parse_descriptor(&text).unwrap(), d, "{text}");
        }
    }
}
