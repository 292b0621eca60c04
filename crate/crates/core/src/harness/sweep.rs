use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::Value;

use super::{AtlasEntry, SweepLedger, SweepRow, Violation, GLOBAL_ORDER_CAP, MAX_INSTANCES};
use crate::error::{Error, Result};
use crate::field::{field_from_spec, Field, FieldValue};
use crate::function::FunctionOnX;
use crate::group::Group;
use crate::gset::{transitive_actions, GSet};
use crate::io::{group_from_value, read_json};
use crate::uncertainty::{analyze, coset_condition, greedy_translate_bound};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
pub enum ActionScope {
    #[default]
    #[serde(rename = "all-transitive")]
    AllTransitive,
    #[serde(rename = "regular")]
    Regular,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
pub enum Normalize {
    /// One representative per line: first nonzero value equal to 1.
    #[default]
    #[serde(rename = "leading-one")]
    LeadingOne,
    #[serde(rename = "none")]
    None,
}

fn default_max_order() -> usize {
    8
}

/// Groups are catalog names, file references, inline specs, or `"all"`
/// for every catalog group up to `max_order`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub groups: Vec<Value>,
    pub fields: Vec<String>,
    #[serde(default)]
    pub actions: ActionScope,
    #[serde(default = "default_max_order")]
    pub max_order: usize,
    #[serde(default)]
    pub normalize: Normalize,
    #[serde(default)]
    pub jobs: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl SweepConfig {
    pub fn new(groups: Vec<Value>, fields: Vec<String>) -> Self {
        SweepConfig {
            groups,
            fields,
            actions: ActionScope::AllTransitive,
            max_order: default_max_order(),
            normalize: Normalize::LeadingOne,
            jobs: 0,
            seed: 0,
            base_dir: PathBuf::new(),
        }
    }

    pub fn from_value(v: &Value, base_dir: &Path) -> Result<Self> {
        let mut cfg: SweepConfig =
            serde_json::from_value(v.clone()).map_err(|e| Error::ParseError(format!("sweep config: {e}")))?;
        cfg.base_dir = base_dir.to_path_buf();
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_value(&read_json(path)?, path.parent().unwrap_or(Path::new("")))
    }

    pub fn resolve_groups(&self) -> Result<Vec<Arc<Group>>> {
        if self.groups.is_empty() {
            return Err(Error::InputError("sweep needs at least one group".into()));
        }
        if self.max_order > GLOBAL_ORDER_CAP {
            return Err(Error::CapExceeded { what: format!("max_order {}", self.max_order), cap: GLOBAL_ORDER_CAP });
        }
        let mut out = Vec::new();
        for v in &self.groups {
            if v.as_str() == Some("all") {
                out.extend(Group::small_groups_up_to_8().into_iter().filter(|g| g.order() <= self.max_order).map(Arc::new));
                continue;
            }
            let g = group_from_value(v, &self.base_dir)?;
            if g.order() > self.max_order {
                return Err(Error::CapExceeded { what: format!("group {} of order {}", g.name(), g.order()), cap: self.max_order });
            }
            out.push(Arc::new(g));
        }
        Ok(out)
    }

    pub fn resolve_fields(&self) -> Result<Vec<Field>> {
        if self.fields.is_empty() {
            return Err(Error::InputError("sweep needs at least one field".into()));
        }
        self.fields
            .iter()
            .map(|s| {
                let f = field_from_spec(s)?;
                if f.size().is_none() {
                    return Err(Error::InputError(format!("{s}: exhaustive sweeps need a finite field")));
                }
                Ok(f)
            })
            .collect()
    }

    fn actions_of(&self, g: &Arc<Group>) -> Result<Vec<Arc<GSet>>> {
        Ok(match self.actions {
            ActionScope::Regular => vec![Arc::new(GSet::regular(g.clone()))],
            ActionScope::AllTransitive => transitive_actions(g.clone())?.into_iter().map(Arc::new).collect(),
        })
    }
}

/// `(q^m − 1)/(q − 1)` normalized functions per set, or `q^m − 1`.
pub fn expected_instances(q: u64, m: usize, normalize: Normalize) -> u128 {
    let all = (q as u128).pow(m as u32) - 1;
    match normalize {
        Normalize::LeadingOne => all / (q as u128 - 1),
        Normalize::None => all,
    }
}

struct Task {
    xs: Arc<GSet>,
    field: Field,
    elements: Vec<FieldValue>,
}

/// Decodes the base-q code of `f`: digit x is the index of `f(x)` in the
/// field's element list. `None` if the code is filtered out.
fn decode(task: &Task, code: u64, normalize: Normalize) -> Option<Vec<FieldValue>> {
    let q = task.elements.len() as u64;
    let m = task.xs.size();
    let mut digits = Vec::with_capacity(m);
    let mut c = code;
    for _ in 0..m {
        digits.push((c % q) as usize);
        c /= q;
    }
    let f = &task.field;
    if normalize == Normalize::LeadingOne {
        let lead = digits.iter().find(|&&d| !f.is_zero(&task.elements[d]))?;
        if !f.is_one(&task.elements[*lead]) {
            return None;
        }
    }
    Some(digits.into_iter().map(|d| task.elements[d].clone()).collect())
}

struct Outcome {
    row: Option<SweepRow>,
    atlas_sharp: Option<AtlasEntry>,
    atlas_classical: Option<AtlasEntry>,
    checks: Vec<(&'static str, bool)>,
    violations: Vec<Violation>,
}

fn examine(task: &Task, code: u64, values: Vec<FieldValue>) -> Result<Outcome> {
    let f = FunctionOnX::new(task.xs.clone(), task.field.clone(), values)?;
    let xs = &task.xs;
    let shown: Vec<String> = f.values().iter().map(|v| task.field.format_value(v)).collect();
    let mut out = Outcome { row: None, atlas_sharp: None, atlas_classical: None, checks: Vec::new(), violations: Vec::new() };
    let violation = |check: &str, message: String| Violation {
        check: check.into(),
        group: xs.group().name().into(),
        action: xs.label().into(),
        field: task.field.spec(),
        f_index: Some(code),
        values: shown.clone(),
        message,
    };
    let report = match analyze(&f, None) {
        Ok(r) => r,
        Err(Error::InvariantViolation(m)) => {
            out.checks.push(("bound", false));
            out.violations.push(violation("bound", m));
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    out.checks.push(("bound", true));

    let cond = coset_condition(&f, report.x0);
    let agree = matches!(&cond, Ok(c) if c.is_ok() == report.classical_equality);
    out.checks.push(("classical-certificate", agree));
    if !agree {
        out.violations.push(violation(
            "classical-certificate",
            format!("lhs = |X| is {} but the coset condition gave {:?}", report.classical_equality, cond.map(|c| c.is_ok())),
        ));
    }

    if report.supp_size < xs.size() {
        match greedy_translate_bound(&f, report.x0) {
            Ok(_) => out.checks.push(("greedy-cover", true)),
            Err(Error::InvariantViolation(m)) => {
                out.checks.push(("greedy-cover", false));
                out.violations.push(violation("greedy-cover", m));
            }
            Err(e) => return Err(e),
        }
    }

    let entry = AtlasEntry {
        group: report.group.clone(),
        action: report.action.clone(),
        field: report.field.clone(),
        f_index: code,
        values: shown.clone(),
        x0: report.x0,
        supp: report.supp_size,
        dim: report.dim,
        block: report.block_size,
    };
    if report.sharp_equality {
        out.atlas_sharp = Some(entry.clone());
    }
    if report.classical_equality {
        out.atlas_classical = Some(entry);
    }
    out.row = Some(SweepRow {
        group: report.group,
        action: report.action,
        field: report.field,
        f_index: code,
        supp: report.supp_size,
        dim: report.dim,
        block: report.block_size,
        lhs: report.lhs,
        rhs_sharp: report.rhs_sharp,
        rhs_classical: report.rhs_classical,
        sharp_eq: report.sharp_equality,
        classical_eq: report.classical_equality,
    });
    Ok(out)
}

/// Analyzes every nonzero function on every configured (group, action,
/// field), checking the bound, the classical-equality certificate and the
/// greedy translate count. The ledger is assembled in enumeration order,
/// so it does not depend on `jobs`.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepLedger> {
    let groups = cfg.resolve_groups()?;
    let fields = cfg.resolve_fields()?;
    let mut tasks = Vec::new();
    let mut expected: u128 = 0;
    for g in &groups {
        let actions = cfg.actions_of(g)?;
        for xs in &actions {
            for field in &fields {
                let elements = field.elements().expect("finite field");
                expected += expected_instances(elements.len() as u64, xs.size(), cfg.normalize);
                tasks.push(Task { xs: xs.clone(), field: field.clone(), elements });
            }
        }
    }
    if expected > MAX_INSTANCES {
        return Err(Error::CapExceeded { what: format!("{expected} sweep instances"), cap: MAX_INSTANCES as usize });
    }
    let mut items: Vec<(usize, u64)> = Vec::new();
    for (t, task) in tasks.iter().enumerate() {
        let total = (task.elements.len() as u64).pow(task.xs.size() as u32);
        items.extend((1..total).map(|c| (t, c)));
    }
    let work = || {
        items
            .par_iter()
            .filter_map(|&(t, c)| decode(&tasks[t], c, cfg.normalize).map(|v| examine(&tasks[t], c, v)))
            .collect::<Vec<Result<Outcome>>>()
    };
    let outcomes = if cfg.jobs == 0 {
        work()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::InputError(format!("thread pool: {e}")))?
            .install(work)
    };

    let mut ledger = SweepLedger { seed: cfg.seed, expected_instances: Some(expected as u64), ..Default::default() };
    for o in outcomes {
        let o = o?;
        ledger.instances += 1;
        for (check, ok) in o.checks {
            ledger.record(check, ok);
        }
        ledger.violations.extend(o.violations);
        ledger.equality_atlas.sharp.extend(o.atlas_sharp);
        ledger.equality_atlas.classical.extend(o.atlas_classical);
        ledger.rows.extend(o.row);
    }
    let complete = ledger.instances as u128 == expected;
    ledger.record("completeness", complete);
    if !complete {
        ledger.violations.push(Violation::bare(
            "completeness",
            format!("analyzed {} instances, closed form gives {expected}", ledger.instances),
        ));
    }
    Ok(ledger)
}

/// A one-instance ledger for `f`, built with the same checks as a sweep;
/// the instance index is 0.
pub fn single_instance_ledger(f: &FunctionOnX, seed: u64) -> Result<SweepLedger> {
    let task = Task { xs: f.gset().clone(), field: f.field().clone(), elements: Vec::new() };
    let o = examine(&task, 0, f.values().to_vec())?;
    let mut ledger = SweepLedger { seed, instances: 1, expected_instances: Some(1), ..Default::default() };
    for (check, ok) in o.checks {
        ledger.record(check, ok);
    }
    ledger.violations.extend(o.violations);
    ledger.equality_atlas.sharp.extend(o.atlas_sharp);
    ledger.equality_atlas.classical.extend(o.atlas_classical);
    ledger.rows.extend(o.row);
    Ok(ledger)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn closed_form_counts() {
        assert_eq!(expected_instances(2, 3, Normalize::LeadingOne), 7);
        assert_eq!(expected_instances(3, 3, Normalize::LeadingOne), 13);
        assert_eq!(expected_instances(3, 2, Normalize::None), 8);
    }

    #[test]
    fn small_sweep_is_clean_and_deterministic() {
        let mut cfg = SweepConfig::new(vec![json!("S3"), json!("Z4")], vec!["GF(2)".into(), "GF(3)".into()]);
        cfg.jobs = 1;
        let a = run_sweep(&cfg).unwrap();
        cfg.jobs = 3;
        let b = run_sweep(&cfg).unwrap();
        assert!(a.is_clean(), "{:?}", a.violations);
        assert_eq!(a, b);
        assert_eq!(Some(a.instances), a.expected_instances);
        assert!(a.tallies["greedy-cover"].passed > 0);
    }

    #[test]
    fn worked_example_ledger() {
        let xs = Arc::new(GSet::natural(Arc::new(Group::symmetric3())).unwrap());
        let f = FunctionOnX::from_i64(xs, field_from_spec("Q").unwrap(), &[1, -1, 0]).unwrap();
        let l = single_instance_ledger(&f, 0).unwrap();
        assert_eq!(l.equality_atlas.sharp.len(), 1);
        assert!(l.equality_atlas.classical.is_empty());
        assert!(l.is_clean());
        assert_eq!(l.rows.len(), 1);
    }

    #[test]
    fn config_errors() {
        let cfg = SweepConfig::new(vec![], vec!["GF(2)".into()]);
        assert!(matches!(run_sweep(&cfg), Err(Error::InputError(_))));
        let cfg = SweepConfig::new(vec![json!("S3")], vec!["Q".into()]);
        assert!(matches!(run_sweep(&cfg), Err(Error::InputError(_))));
        let cfg = SweepConfig::new(vec![json!("S4")], vec!["GF(2)".into()]);
        assert!(matches!(run_sweep(&cfg), Err(Error::CapExceeded { .. })));
        let v = json!({"groups": ["Z2"], "fields": ["GF(2)"], "actions": "regular", "bogus": 1});
        assert!(matches!(SweepConfig::from_value(&v, Path::new(".")), Err(Error::ParseError(_))));
    }
}
