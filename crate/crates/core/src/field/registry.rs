use super::{CyclotomicField, Field, GaloisField, PrimeField, RationalField};
use crate::arith;
use crate::error::{Error, Result};

/// A family of field backends that recognises its own spec strings.
pub trait FieldFamily: Send + Sync {
    fn name(&self) -> &'static str;
    /// Grammar accepted by [`FieldFamily::parse`], for help output.
    fn grammar(&self) -> &'static str;
    /// `None` when the spec belongs to another family.
    fn parse(&self, spec: &str) -> Option<Result<Field>>;
}

struct Rationals;
struct FiniteFields;
struct Cyclotomics;

impl FieldFamily for Rationals {
    fn name(&self) -> &'static str {
        "rationals"
    }

    fn grammar(&self) -> &'static str {
        "Q"
    }

    fn parse(&self, spec: &str) -> Option<Result<Field>> {
        (spec == "Q").then(|| Ok(Field::new(RationalField)))
    }
}

fn parse_u64(s: &str, spec: &str) -> Result<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::ParseError(format!("field spec {spec:?}")));
    }
    s.parse().map_err(|_| Error::ParseError(format!("field spec {spec:?}")))
}

impl FieldFamily for FiniteFields {
    fn name(&self) -> &'static str {
        "finite"
    }

    fn grammar(&self) -> &'static str {
        "GF(p) | GF(p^k)"
    }

    fn parse(&self, spec: &str) -> Option<Result<Field>> {
        let inner = spec.strip_prefix("GF(")?.strip_suffix(')')?;
        Some((|| match inner.split_once('^') {
            Some((p, k)) => {
                let p = parse_u64(p, spec)?;
                let k = parse_u64(k, spec)? as u32;
                if k == 1 {
                    Ok(Field::new(PrimeField::new(p)?))
                } else {
                    Ok(Field::new(GaloisField::new(p, k)?))
                }
            }
            None => {
                let p = parse_u64(inner, spec)?;
                match arith::prime_power(p) {
                    Some((q, k)) if k > 1 => Err(Error::ParseError(format!(
                        "field spec {spec:?}: write prime powers as GF({q}^{k})"
                    ))),
                    _ => Ok(Field::new(PrimeField::new(p)?)),
                }
            }
        })())
    }
}

impl FieldFamily for Cyclotomics {
    fn name(&self) -> &'static str {
        "cyclotomic"
    }

    fn grammar(&self) -> &'static str {
        "Q(zeta_n)"
    }

    fn parse(&self, spec: &str) -> Option<Result<Field>> {
        let inner = spec.strip_prefix("Q(zeta_")?.strip_suffix(')')?;
        Some(parse_u64(inner, spec).and_then(|n| Ok(Field::new(CyclotomicField::new(n)?))))
    }
}

/// Name-keyed collection of field families; lookup tries each in
/// registration order.
pub struct FieldRegistry {
    families: Vec<Box<dyn FieldFamily>>,
}

impl FieldRegistry {
    pub fn empty() -> Self {
        FieldRegistry { families: Vec::new() }
    }

    pub fn register(&mut self, family: Box<dyn FieldFamily>) {
        self.families.push(family);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.families.iter().map(|f| f.name()).collect()
    }

    pub fn grammar(&self) -> String {
        self.families.iter().map(|f| f.grammar()).collect::<Vec<_>>().join(" | ")
    }

    pub fn parse(&self, spec: &str) -> Result<Field> {
        let spec = spec.trim();
        self.families
            .iter()
            .find_map(|f| f.parse(spec))
            .unwrap_or_else(|| {
                Err(Error::ParseError(format!("field spec {spec:?}; expected {}", self.grammar())))
            })
    }
}

impl Default for FieldRegistry {
    fn default() -> Self {
        let mut r = FieldRegistry::empty();
        r.register(Box::new(Rationals));
        r.register(Box::new(FiniteFields));
        r.register(Box::new(Cyclotomics));
        r
    }
}

/// Parses `"Q" | "GF(p)" | "GF(p^k)" | "Q(zeta_n)"` with the default registry.
pub fn field_from_spec(spec: &str) -> Result<Field> {
    FieldRegistry::default().parse(spec)
}
