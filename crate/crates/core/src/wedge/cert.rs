//! Triviality certificates: witness pairs claimed to commute.
//!
//! Witness words may use symbolic exponents bound from the catalog
//! parameters: `p`, `nu` (the non-residue of `phi29`, 1 for `phi28`), `s`
//! (the inverse of `nu` mod `p`) and `g` (the primitive root of `phi15`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::pcgroup::{
    parse_word, primitive_root, smallest_nonresidue, CatalogParams, Family, PcGroup, Word,
};

use super::WedgeError;

/// Which group a certificate is about.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    /// Fully specified catalog member.
    Catalog(CatalogParams),
    /// A family whose parameters are supplied when the certificate is used.
    Family { family: Family },
    /// A presentation file, relative to the certificate.
    File { file: String },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    #[default]
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub group: GroupRef,
    pub witnesses: Vec<(String, String)>,
    #[serde(default)]
    pub expect: Expectation,
}

/// Values of the symbolic exponents.
pub type Bindings = BTreeMap<String, i64>;

/// Bindings derived from catalog parameters.
pub fn bindings_for(params: &CatalogParams) -> Bindings {
    let mut b = Bindings::new();
    match params {
        CatalogParams::Phi15 { p } => {
            b.insert("p".into(), *p as i64);
            b.insert("g".into(), primitive_root(*p) as i64);
        }
        CatalogParams::Phi28 { p } | CatalogParams::Phi29 { p } => {
            let nu = if matches!(params, CatalogParams::Phi29 { .. }) {
                smallest_nonresidue(*p)
            } else {
                1
            };
            b.insert("p".into(), *p as i64);
            b.insert("nu".into(), nu as i64);
            b.insert("s".into(), inverse_mod(nu, *p) as i64);
        }
        CatalogParams::FreestSpecial { p, .. } | CatalogParams::ElementaryAbelian { p, .. } => {
            b.insert("p".into(), *p as i64);
        }
        CatalogParams::Heisenberg { r, .. } => {
            b.insert("r".into(), *r as i64);
        }
        CatalogParams::Cyclic { n } => {
            b.insert("n".into(), *n as i64);
        }
        CatalogParams::DirectProduct { .. } => {}
    }
    b
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    (1..p)
        .find(|&s| s * a % p == 1)
        .expect("unit modulo a prime")
}

/// Replaces `^name` and `^-name` by the bound value.
pub fn substitute(text: &str, vars: &Bindings) -> Result<String, WedgeError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while i < chars.len() {
        out.push(chars[i]);
        if chars[i] != '^' {
            i += 1;
            continue;
        }
        i += 1;
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        if i < chars.len() && chars[i] == '-' {
            out.push('-');
            i += 1;
        }
        if i < chars.len() && (chars[i].is_alphabetic() || chars[i] == '_') {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            let v = vars
                .get(&name)
                .ok_or_else(|| WedgeError::UnboundExponent(name.clone()))?;
            out.push_str(&v.to_string());
        }
    }
    Ok(out)
}

impl Certificate {
    pub fn from_json(text: &str) -> Result<Self, WedgeError> {
        serde_json::from_str(text).map_err(|e| WedgeError::BadCertificate(e.to_string()))
    }

    /// Witness words parsed over the generators of `g`.
    pub fn witness_words(
        &self,
        g: &PcGroup,
        vars: &Bindings,
    ) -> Result<Vec<(Word, Word)>, WedgeError> {
        let names = g.presentation().names();
        self.witnesses
            .iter()
            .map(|(u, v)| {
                let pu = parse_word(&substitute(u, vars)?, names)
                    .map_err(|e| WedgeError::BadCertificate(e.to_string()))?;
                let pv = parse_word(&substitute(v, vars)?, names)
                    .map_err(|e| WedgeError::BadCertificate(e.to_string()))?;
                Ok((pu, pv))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution() {
        let vars: Bindings = [("p".to_string(), 7), ("s".to_string(), 4)]
            .into_iter()
            .collect();
        assert_eq!(substitute("a1*a^p", &vars).unwrap(), "a1*a^7");
        assert_eq!(substitute("a3*a^-s*a2^2", &vars).unwrap(), "a3*a^-4*a2^2");
        assert!(matches!(
            substitute("a^q", &vars),
            Err(WedgeError::UnboundExponent(_))
        ));
    }

    #[test]
    fn phi29_inverse_binding() {
        let b = bindings_for(&CatalogParams::Phi29 { p: 7 });
        assert_eq!(b["nu"] * b["s"] % 7, 1);
        let b = bindings_for(&CatalogParams::Phi28 { p: 5 });
        assert_eq!((b["nu"], b["s"]), (1, 1));
    }

    #[test]
    fn group_refs_parse() {
        let c = Certificate::from_json(
            r#"{"group": {"family": "phi28"}, "witnesses": [["a3*a", "a*a1^p"]]}"#,
        )
        .unwrap();
        assert_eq!(
            c.group,
            GroupRef::Family {
                family: Family::Phi28
            }
        );
        assert_eq!(c.expect, Expectation::Trivial);
        let c =
            Certificate::from_json(r#"{"group": {"family": "phi28", "p": 5}, "witnesses": []}"#)
                .unwrap();
        assert_eq!(c.group, GroupRef::Catalog(CatalogParams::Phi28 { p: 5 }));
        let c = Certificate::from_json(
            r#"{"group": {"file": "g.pc"}, "witnesses": [], "expect": "trivial"}"#,
        )
        .unwrap();
        assert_eq!(
            c.group,
            GroupRef::File {
                file: "g.pc".into()
            }
        );
    }
}
