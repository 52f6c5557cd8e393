//! JSON form of polynomials:
//! `{"vars":["x","xi"],"terms":[{"exp":[2,0],"re":"4","im":"0"}]}`.
//! `exp` is indexed by the order of `vars`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{Monomial, MultiPoly, Var, VarSet, NVARS};
use super::rational::{format_rational, parse_rational, GaussianRational, Rational};

#[derive(Serialize, Deserialize)]
struct TermDoc {
    exp: Vec<u32>,
    re: String,
    #[serde(default = "zero_str")]
    im: String,
}

fn zero_str() -> String {
    "0".into()
}

#[derive(Serialize, Deserialize)]
struct PolyDoc {
    vars: Vec<String>,
    terms: Vec<TermDoc>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let vars: Vec<Var> = self.vars().iter().collect();
        let doc = PolyDoc {
            vars: vars.iter().map(|v| v.name().to_string()).collect(),
            terms: self
                .terms()
                .rev()
                .map(|(m, c)| TermDoc {
                    exp: vars.iter().map(|v| m.exp(*v)).collect(),
                    re: format_rational(&c.re),
                    im: format_rational(&c.im),
                })
                .collect(),
        };
        doc.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = PolyDoc::deserialize(d)?;
        let vars =
            doc.vars.iter().map(|n| Var::from_name(n)).collect::<Result<Vec<_>, _>>().map_err(D::Error::custom)?;
        let set = VarSet::of(&vars);
        if set.len() != vars.len() {
            return Err(D::Error::custom("duplicate variable"));
        }
        let mut terms = Vec::with_capacity(doc.terms.len());
        for t in doc.terms {
            if t.exp.len() != vars.len() {
                return Err(D::Error::custom("exponent length does not match vars"));
            }
            let mut e = [0u32; NVARS];
            for (v, k) in vars.iter().zip(&t.exp) {
                e[v.index()] = *k;
            }
            let c = GaussianRational::parse(&t.re, &t.im).map_err(D::Error::custom)?;
            terms.push((Monomial(e), c));
        }
        Ok(MultiPoly::from_terms(set, terms))
    }
}

/// Serde adapter for rationals stored as `"num/den"` strings.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct GaussDoc {
    re: String,
    #[serde(default = "zero_str")]
    im: String,
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GaussDoc { re: format_rational(&self.re), im: format_rational(&self.im) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let g = GaussDoc::deserialize(d)?;
        GaussianRational::parse(&g.re, &g.im).map_err(D::Error::custom)
    }
}
