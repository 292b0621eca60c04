//! Homomorphisms from a subgroup into the unit group of a field.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{input, Error, Result};
use crate::field::{Field, FieldValue};
use crate::group::{Group, Subgroup};

/// `η: H → 𝔽^×`, stored as values aligned with the sorted domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    field: Field,
    domain: Vec<usize>,
    values: Vec<FieldValue>,
}

impl Character {
    /// Validates nonzero values, `η(1) = 1` and `η(ab) = η(a)η(b)` on the
    /// whole domain.
    pub fn new(group: &Group, field: &Field, domain: &Subgroup, values: Vec<FieldValue>) -> Result<Self> {
        let dom = domain.elements();
        if values.len() != dom.len() {
            return input(format!("{} values for a domain of size {}", values.len(), dom.len()));
        }
        let ch = Character { field: field.clone(), domain: dom.to_vec(), values };
        if ch.values.iter().any(|v| field.is_zero(v)) {
            return Err(Error::NotHomomorphism("character takes the value 0".into()));
        }
        if !field.is_one(ch.value(group.identity()).expect("subgroup holds the identity")) {
            return Err(Error::NotHomomorphism("η(1) ≠ 1".into()));
        }
        for (i, &a) in dom.iter().enumerate() {
            for (j, &b) in dom.iter().enumerate() {
                let ab = ch.value(group.mul(a, b)).expect("subgroup is closed");
                if *ab != field.mul(&ch.values[i], &ch.values[j]) {
                    return Err(Error::NotHomomorphism(format!("η({a}·{b}) ≠ η({a})η({b})")));
                }
            }
        }
        Ok(ch)
    }

    pub fn trivial(field: &Field, domain: &Subgroup) -> Self {
        Character {
            field: field.clone(),
            domain: domain.elements().to_vec(),
            values: vec![field.one(); domain.len()],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn values(&self) -> &[FieldValue] {
        &self.values
    }

    pub fn value(&self, a: usize) -> Option<&FieldValue> {
        self.domain.binary_search(&a).ok().map(|i| &self.values[i])
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| self.field.is_one(v))
    }

    pub fn inverse(&self) -> Character {
        Character {
            field: self.field.clone(),
            domain: self.domain.clone(),
            values: self.values.iter().map(|v| self.field.inv(v).expect("unit")).collect(),
        }
    }

    /// Pointwise product; `None` when the domains differ.
    pub fn product(&self, other: &Character) -> Option<Character> {
        (self.domain == other.domain && self.field == other.field).then(|| Character {
            field: self.field.clone(),
            domain: self.domain.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| self.field.mul(a, b)).collect(),
        })
    }

    /// Restriction to a subgroup of the domain.
    pub fn restrict(&self, h: &Subgroup) -> Option<Character> {
        let values = h.elements().iter().map(|&a| self.value(a).cloned()).collect::<Option<_>>()?;
        Some(Character { field: self.field.clone(), domain: h.elements().to_vec(), values })
    }

    pub fn to_json(&self) -> Value {
        let map: BTreeMap<String, Value> = self
            .domain
            .iter()
            .zip(&self.values)
            .map(|(a, v)| (a.to_string(), self.field.value_to_json(v)))
            .collect();
        json!(map)
    }
}

/// Greedy generating sequence: each element not yet generated is added.
fn generating_sequence(group: &Group, domain: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = group.generated(&gens);
    for &a in domain {
        if span.binary_search(&a).is_err() {
            gens.push(a);
            span = group.generated(&gens);
        }
    }
    gens
}

/// All of `Hom(H, 𝔽^×)`, sorted by value tuple.
///
/// Each generator is sent to a root of unity whose order divides its own;
/// assignments are extended breadth-first and kept only if the result is
/// well defined and multiplicative on the full table.
pub fn homs_to_units(group: &Group, domain: &Subgroup, field: &Field) -> Vec<Character> {
    let dom = domain.elements();
    let gens = generating_sequence(group, dom);
    let choices: Vec<Vec<FieldValue>> =
        gens.iter().map(|&s| field.roots_of_unity(group.element_order(s))).collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; gens.len()];
    loop {
        if let Some(ch) = extend(group, field, domain, &gens, &choices, &pick) {
            out.push(ch);
        }
        // odometer over the choice lists
        let mut i = 0;
        while i < pick.len() {
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == pick.len() {
            break;
        }
    }
    out.sort_by(|a, b| a.values.cmp(&b.values));
    out.dedup_by(|a, b| a.values == b.values);
    out
}

fn extend(
    group: &Group,
    field: &Field,
    domain: &Subgroup,
    gens: &[usize],
    choices: &[Vec<FieldValue>],
    pick: &[usize],
) -> Option<Character> {
    let mut val: BTreeMap<usize, FieldValue> = BTreeMap::from([(group.identity(), field.one())]);
    let mut frontier = vec![group.identity()];
    while let Some(h) = frontier.pop() {
        for (k, &s) in gens.iter().enumerate() {
            let x = group.mul(h, s);
            let v = field.mul(&val[&h], &choices[k][pick[k]]);
            match val.get(&x) {
                Some(old) if *old != v => return None,
                Some(_) => {}
                None => {
                    val.insert(x, v);
                    frontier.push(x);
                }
            }
        }
    }
    let values: Vec<FieldValue> = domain.elements().iter().map(|a| val.remove(a)).collect::<Option<_>>()?;
    Character::new(group, field, domain, values).ok()
}
