use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::{donoho_stark_atlas, SweepLedger, Violation};
use crate::arith::smallest_prime_one_mod;
use crate::character::homs_to_units;
use crate::error::{Error, Result};
use crate::field::{field_from_spec, splitting_extension, Field, FieldValue};
use crate::fourier::{
    abelian_characters, build_dual_set, chebotarev_minor_check, fourier_transform, min_supp_witness, rank_support,
    DualSet, RepresentationBundle, DEFAULT_CHEBOTAREV_CAP,
};
use crate::function::{dim_fgf, FunctionOnX};
use crate::group::Group;
use crate::gset::{sorted, transitive_actions, GSet};
use crate::linalg;
use crate::uncertainty::{analyze, classify_equality_classical, coset_indicator_function, regular_analyze};

const S3_BUNDLE: &str = include_str!("../../../../fixtures/s3_bundle.json");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random instances per sampled property.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0, samples: 200 }
    }
}

/// A named batch of checks that records into a ledger.
pub trait VerifySuite: Send + Sync {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn run(&self, cfg: &VerifyConfig, ledger: &mut SweepLedger) -> Result<()>;
}

pub struct SuiteRegistry {
    suites: Vec<Box<dyn VerifySuite>>,
}

impl SuiteRegistry {
    pub fn empty() -> Self {
        SuiteRegistry { suites: Vec::new() }
    }

    pub fn register(&mut self, s: Box<dyn VerifySuite>) {
        self.suites.retain(|t| t.name() != s.name());
        self.suites.push(s);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn VerifySuite> {
        self.suites.iter().find(|s| s.name() == name).map(|s| s.as_ref())
    }

    pub fn describe(&self) -> Vec<(&'static str, &'static str)> {
        self.suites.iter().map(|s| (s.name(), s.about())).collect()
    }

    /// Runs the named suites in the given order; `"all"` runs every suite.
    pub fn run(&self, names: &[String], cfg: &VerifyConfig) -> Result<SweepLedger> {
        let mut ledger = SweepLedger { seed: cfg.seed, ..Default::default() };
        let picked: Vec<&dyn VerifySuite> = if names.iter().any(|n| n == "all") {
            self.suites.iter().map(|s| s.as_ref()).collect()
        } else {
            names
                .iter()
                .map(|n| self.get(n).ok_or_else(|| Error::InputError(format!("unknown suite {n:?}; known: {:?}", self.names()))))
                .collect::<Result<_>>()?
        };
        if picked.is_empty() {
            return Err(Error::InputError("no suite selected".into()));
        }
        for s in picked {
            s.run(cfg, &mut ledger)?;
        }
        Ok(ledger)
    }
}

impl Default for SuiteRegistry {
    fn default() -> Self {
        let mut r = SuiteRegistry::empty();
        r.register(Box::new(WorkedExample));
        r.register(Box::new(LiftAgreement));
        r.register(Box::new(ClosureLaws));
        r.register(Box::new(BlockProperties));
        r.register(Box::new(TranslateEquivalence));
        r.register(Box::new(ComplementCover));
        r.register(Box::new(RankSupport));
        r.register(Box::new(FourierIsomorphism));
        r.register(Box::new(Chebotarev));
        r.register(Box::new(DonohoStarkAtlas));
        r.register(Box::new(CosetIndicators));
        r
    }
}

pub fn verify_lemma_suite(cfg: &VerifyConfig, names: &[String]) -> Result<SweepLedger> {
    SuiteRegistry::default().run(names, cfg)
}

fn check(ledger: &mut SweepLedger, name: &str, ok: bool, detail: impl FnOnce() -> String) {
    ledger.record(name, ok);
    if !ok {
        ledger.violations.push(Violation::bare(name, detail()));
    }
}

/// Turns an invariant violation raised inside a library call into a
/// failed check; other errors abort the suite.
fn guarded<T>(ledger: &mut SweepLedger, name: &str, r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::InvariantViolation(m)) => {
            check(ledger, name, false, || m);
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn rng_for(cfg: &VerifyConfig, suite: &str) -> ChaCha8Rng {
    let salt = suite.bytes().fold(0u64, |h, b| h.wrapping_mul(131).wrapping_add(b as u64));
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt)
}

fn subset_from_mask(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

fn s3_z6_sets() -> Result<Vec<Arc<GSet>>> {
    let mut out = Vec::new();
    for g in [Group::symmetric3(), Group::cyclic(6)] {
        out.extend(transitive_actions(Arc::new(g))?.into_iter().map(Arc::new));
    }
    Ok(out)
}

/// Every transitive action of the catalog groups of order ≤ 8 and of A4,
/// S4, D5 and D6, for random sampling.
fn sampling_pool() -> Result<Vec<Arc<GSet>>> {
    let mut groups = Group::small_groups_up_to_8();
    groups.extend([Group::alternating4(), Group::symmetric4(), Group::dihedral(5), Group::dihedral(6)]);
    let mut out = Vec::new();
    for g in groups {
        out.extend(transitive_actions(Arc::new(g))?.into_iter().map(Arc::new));
    }
    Ok(out)
}

fn pick<'a>(rng: &mut ChaCha8Rng, pool: &'a [Arc<GSet>]) -> &'a Arc<GSet> {
    &pool[rng.gen_range(0..pool.len())]
}

fn stabilizer_size(xs: &GSet) -> usize {
    xs.group().order() / xs.size()
}

/// Golden values for `f = (1, -1, 0)` on the natural S3 set.
struct WorkedExample;

impl VerifySuite for WorkedExample {
    fn name(&self) -> &'static str {
        "worked-example"
    }

    fn about(&self) -> &'static str {
        "f = (1, -1, 0) on the natural S3 set over Q: every intermediate set and both bounds"
    }

    fn run(&self, _cfg: &VerifyConfig, ledger: &mut SweepLedger) -> Result<()> {
        let g = Arc::new(Group::symmetric3());
        let xs = Arc::new(GSet::natural(g.clone())?);
        let q = field_from_spec("Q")?;
        let f = FunctionOnX::from_i64(xs.clone(), q, &[1, -1, 0])?;
        let els = |cs: &[&str]| sorted(cs.iter().map(|c| g.element_from_cycles(c).expect("valid cycle")));
        ledger.instances += 1;
        let r = analyze(&f, Some(0))?;
        let name = "worked-example";
        check(ledger, name, r.supp_size == 2, || format!("supp = {}", r.supp_size));
        let stab = xs.point_stabilizer(0)?;
        check(ledger, name, stab.elements() == els(&["(1)", "(23)"]), || format!("G_x1 = {stab:?}"));
        check(ledger, name, r.lift == els(&["(1)", "(23)", "(12)", "(123)"]), || format!("lift = {:?}", r.lift));
        check(ledger, name, r.lift_stabilizer == els(&["(1)", "(23)"]), || format!("G_S = {:?}", r.lift_stabilizer));
        check(ledger, name, r.block == [0], || format!("X_S = {:?}", r.block));
        check(ledger, name, r.dim == 2, || format!("dim = {}", r.dim));
        check(ledger, name, r.lhs == 4 && r.rhs_sharp == 4 && r.sharp_equality, || format!("{r:?}"));
        check(ledger, name, r.rhs_classical == 3 && !r.classical_equality, || format!("{r:?}"));
        Ok(())
    }
}

/// The three descriptions of x₀-closed subsets agree, and `|𝒜| ≤ k·|𝒜x₀|`.
struct LiftAgreement;

impl LiftAgreement {
    fn one(ledger: &mut SweepLedger, xs: &GSet, x0: usize, a: &[usize]) -> Result<()> {
        ledger.instances += 1;
        if let Some(v) = guarded(ledger, "lift-agreement", xs.is_x0_closed(x0, a))? {
            let all = v.full_preimage == v.stable_under_stabilizer && v.full_preimage == v.counting;
            check(ledger, "lift-agreement", all, || format!("{v:?} for {a:?}"));
        }
        let image = xs.image(a, &[x0]);
        check(ledger, "lift-size-bound", a.len() <= stabilizer_size(xs) * image.len(), || {
            format!("|A| = {} > k·|Ax0| for {a:?}", a.len())
        });
        Ok(())
    }
}

impl VerifySuite for LiftAgreement {
    fn name(&self) -> &'static str {
        "lift-agreement"
    }

    fn about(&self) -> &'static str {
        "full preimage, right stabilizer invariance and counting agree on x0-closedness"
    }

    fn run(&self, cfg: &VerifyConfig, ledger: &mut SweepLedger) -> Result<()> {
        for xs in s3_z6_sets()? {
            let n = xs.group().order();
            for x0 in xs.points() {
                for mask in 0..1u64 << n {
                    Self::one(ledger, &xs, x0, &subset_from_mask(mask, n))?;
                }
            }
        }
        let pool = sampling_pool()?;
        let mut rng = rng_for(cfg, self.name());
        for i in 0..cfg.samples {
            let xs = pick(&mut rng, &pool);
            let x0 = rng.gen_range(0..xs.size());
            // Alternate arbitrary subsets with lifts, which are always closed.
            let a = if i % 2 == 0 {
                random_subset(&mut rng, xs.group().order())
            } else {
                xs.zeta_preimage(x0, &random_subset(&mut rng, xs.size()))?
            };
            Self::one(ledger, xs, x0, &a)?;
        }
        Ok(())
    }
}

/// Products, unions and intersections of x₀-closed sets are x₀-closed,
/// and `(𝒜∩ℬ)x₀ = 𝒜x₀ ∩ ℬx₀`.
struct ClosureLaws;

impl ClosureLaws {
    fn one(ledger: &mut SweepLedger, xs: &GSet, x0: usize, a: &[usize], b: &[usize]) -> Result<()> {
        ledger.instances += 1;
        let g = xs.group();
        let product = sorted(b.iter().flat_map(|&y| a.iter().map(move |&x| g.mul(y, x))));
        let union = sorted(a.iter().chain(b).copied());
        let inter: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
        for (name, set) in [("closure-product", &product), ("closure-union", &union), ("closure-intersection", &inter)] {
            if let Some(v) = guarded(ledger, name, xs.is_x0_closed(x0, set))? {
                check(ledger, name, v.closed(), || format!("{set:?} from {a:?}, {b:?}"));
            }
        }
        let ia = xs.image(a, &[x0]);
        let ib = xs.image(b, &[x0]);
        let meet: Vec<usize> = ia.iter().copied().filter(|x| ib.contains(x)).collect();
        check(ledger, "closure-image-meet", xs.image(&inter, &[x0]) == meet, || format!("{a:?}, {b:?}"));
        Ok(())
    }
}

impl VerifySuite for ClosureLaws {
    fn name(&self) -> &'static str {
        "closure-laws"
    }

    fn about(&self) -> &'static str {
        "x0-closed sets are closed under products, unions and intersections"
    }

    fn run(&self, cfg: &VerifyConfig, ledger: &mut SweepLedger) -> Result<()> {
        for xs in s3_z6_sets()? {
            let m = xs.size();
            let closed: Vec<Vec<usize>> =
                (0..1u64 << m).map(|mask| xs.zeta_preimage(0, &subset_from_mask(mask, m))).collect::<Result<_>>()?;
            for a in &closed {
                for b in &closed {
                    Self::one(ledger, &xs, 0, a, b)?;
                }
            }
        }
        let pool = sampling_pool()?;
        let mut rng = rng_for(cfg, self.name());
        for _ in 0..cfg.samples {
            let xs = pick(&mut rng, &pool);
            let x0 = rng.gen_range(0..xs.size());
            let a = xs.zeta_preimage(x0, &random_subset(&mut rng, xs.size()))?;
            let b = xs.zeta_preimage(x0, &random_subset(&mut rng, xs.size()))?;
            Self::one(ledger, xs, x0, &a, &b)?;
        }
        Ok(())
    }
}

/// Sizes, disjoint decomposition, intersection formula and complement
/// disjointness of the associated block.
struct BlockProperties;

impl BlockProperties {
    fn one(ledger: &mut SweepLedger, xs: &GSet, x0: usize, s: &[usize]) -> Result<()> {
        ledger.instances += 1;
        let g = xs.group();
        let k = stabilizer_size(xs);
        let lift = xs.zeta_preimage(x0, s)?;
        let Some(block) = guarded(ledger, "block-sizes", xs.associated_block(x0, s))? else {
            return Ok(());
        };
        let gs: Vec<usize> = g
            .elements()
            .filter(|&a| sorted(lift.iter().map(|&x| g.mul(x, a))) == lift)
            .collect();
        check(ledger, "block-sizes", lift.len() == k * s.len() && gs.len() == k * block.len(), || {
            format!("S = {s:?}: |lift| = {}, |G_S| = {}, |X_S| = {}", lift.len(), gs.len(), block.len())
        });

        if let Some(parts) = guarded(ledger, "block-decomposition", xs.block_decomposition(x0, s))? {
            let covered = sorted(parts.iter().flat_map(|(_, p)| p.iter().copied()));
            let sizes_ok = parts.iter().all(|(_, p)| p.len() == block.len());
            let total: usize = parts.iter().map(|(_, p)| p.len()).sum();
            check(ledger, "block-decomposition", covered == s && sizes_ok && total == s.len(), || {
                format!("S = {s:?}: parts {parts:?}")
            });
        }
        let is_block = xs.is_block(s)?;
        check(ledger, "block-decomposition", (s.len() == block.len()) == is_block, || {
            format!("S = {s:?}: |S| = |X_S| disagrees with the block test")
        });

        let mut inter: Vec<usize> = xs.points().collect();
        for &a in &lift {
            let back = xs.translate_set(g.inv(a), s);
            inter.retain(|x| back.contains(x));
        }
        check(ledger, "block-intersection", inter == block, || format!("S = {s:?}: ⋂ = {inter:?}, X_S = {block:?}"));

        let disjoint = g.elements().filter(|a| !lift.contains(a)).all(|a| {
            let t = xs.translate_set(g.inv(a), s);
            t.iter().all(|x| !block.contains(x))
        });
        check(ledger, "block-complement-disjoint", disjoint, || format!("S = {s:?}"));
        Ok(())
    }
}

impl VerifySuite for BlockProperties {
    fn name(&self) -> &'static str {
        "block-properties"
    }

    fn about(&self) -> &'static str {
        "associated block: sizes, decomposition of S, intersection formula, complement disjointness"
    }

    fn run(&self, cfg: &VerifyConfig, ledger: &mut SweepLedger) -> Result<()> {
        for xs in s3_z6_sets()? {
            let m = xs.size();
            for mask in 1..1u64 << m {
                let s = subset_from_mask(mask, m);
                for &x0 in &s {
                    Self::one(ledger, &xs, x0, &s)?;
                }
            }
        }
        let pool = sampling_pool()?;
        let mut rng = rng_for(cfg, self.name());
        for _ in 0..cfg.samples {
            let xs = pick(&mut rng, &pool);
            let mut s = random_subset(&mut rng, xs.size());
            if s.is_empty() {
                s.push(rng.gen_range(0..xs.size()));
            }
            let x0 = s[rng.gen_range(0..s.len())];
            Self::one(ledger, xs, x0, &s)?;
        }
        Ok(())
    }
}

/// `𝒜S ≠ X` iff some `x` has `𝒜⁻¹x ⊆ S′`.
struct TranslateEquivalence;

impl TranslateEquivalence {
    fn one(ledger: &mut SweepLedger, xs: &GSet, a: &[usize], s: &[usize]) {
        ledger.instances += 1;
        let g = xs.group();
        let lhs = xs.image(a, s).len() != xs.size();
        let inv: Vec<usize> = a.iter().map(|&x| g.inv(x)).collect();
        let rhs = xs.points().any(|x| inv.iter().all(|&b| !s.contains(&xs.act(b, x))));
        check(ledger, "translate-equivalence", lhs == rhs, || format!("A = {a:?}, S = {s:?}"));
    }
}

impl VerifySuite for TranslateEquivalence {
    fn name(&self) -> &'static str {
        "translate-equivalence"
    }

    fn about(&self) -> &'static str {
        "AS misses a point exactly when some inverse orbit avoids S"
    }

    fn run(&self, cfg: &VerifyConfig, ledger: &mut SweepLedger) -> Result<()> {
        for xs in s3_z6_sets()? {
            let n = xs.group().order();
            let m = xs.size();
            for am in 0..1u64 << n {
                let a = subset_from_mask(am, n);
                for sm in 0..1u64 << m {
                    Self::one(ledger, &xs, &a, &subset_from_mask(sm, m));
                }
            }
        }
        let pool = sampling_pool()?;
        let mut rng = rng_for(cfg, self.name());
        for _ in 0..cfg.samples {
            let xs = pick(&mut rng, &pool);
            let a = random_subset(&mut rng, xs.group().order());
            let s = random_subset(&mut rng, xs.size());
            Self::one(ledger, xs, &a, &s);
        }
        Ok(())
    }
}

/// `X = 𝒮′⁻¹S ⊔ X_S` for `∅ ≠ S ⊊ X`.
struct ComplementCover;

impl ComplementCover {
    fn one(ledger: &mut SweepLedger, xs: &GSet, x0: usize, s: &[usize]) -> Result<()> {
        ledger.instances += 1;
        if let Some(r) = guarded(ledger, "complement-cover", xs.complement_cover_check(x0, s))? {
            let g = xs.group();
            let lift = xs.zeta_preimage(x0, s)?;
            let mut hit = vec![0usize; xs.size()];
            for a in g.elements().filter(|a| !lift.contains(a)) {
                for x in xs.translate_set(g.inv(a), s) {
                    hit[x] = 1;
                }
            }
            for &x in &r.block {
                hit[x] += 2;
            }
            check(ledger, "complement-cover", hit.iter().all(|&h| h == 1 || h == 2), || format!("S = {s:?}, x0 = {x0}"));
        }
        Ok(())
    }
}

impl VerifySuite for ComplementCover {
    fn name(&self) -> &'static str {
        "complement-cover"
    }

    fn about(&self) -> &'static str {
        "complement translates of S and the associated block partition X"
    }

    fn run(&self, cfg: &VerifyConfig, ledger: &mut SweepLedger) -> Result<()> {
        for xs in s3_z6_sets()? {
            let m = xs.size();
            for mask in 1..(1u64 << m) - 1 {
                let s = subset_from_mask(mask, m);
                for &x0 in &s {
                    Self::one(ledger, &xs, x0, &s)?;
                }
            }
        }
        let pool: Vec<Arc<GSet>> = sampling_pool()?.into_iter().filter(|xs| xs.size() > 1).collect();
        let mut rng = rng_for(cfg, self.name());
        for _ in 0..cfg.samples {
            let xs = pick(&mut rng, &pool);
            let m = xs.size();
            let mask = rng.gen_range(1..(1u64 << m) - 1);
            let s = subset_from_mask(mask, m);
            let x0 = s[rng.gen_range(0..s.len())];
            Self::one(ledger, xs, x0, &s)?;
        }
        Ok(())
    }
}

fn s3_bundle() -> Result<Arc<RepresentationBundle>> {
    let v: Value = serde_json::from_str(S3_BUNDLE)?;
    Ok(Arc::new(RepresentationBundle::from_json(Arc::new(Group::symmetric3()), &v)?))
}

fn compare_rank_support(ledger: &mut SweepLedger, f: &FunctionOnX, ds: &DualSet) -> Result<()> {
    ledger.instances += 1;
    let rs = rank_support(&fourier_transform(f, ds)?);
    let dim = dim_fgf(f)?;
    check(ledger, "rank-support", rs == dim, || format!("{} on {:?}: rk-supp {rs} ≠ dim {dim}", ds.field().spec(), f.values()));
    Ok(())
}

/// `rk-supp f̂ = dim 𝔽Gf` on cyclic groups over split prime fields and on
/// the S3 sets with the bundled irreps.
struct RankSupport;

impl VerifySuite for RankSupport {
    fn name(&self) -> &'static str {
        "rank-support"
    }

    fn about(&self) -> &'static str {
        "rank support of the transform equals the dimension of the generated module"
    }

    fn run(&self, cfg: &VerifyConfig, ledger: &mut SweepLedger) -> Result<()> {
        for n in 2..=12usize {
            let g = Arc::new(Group::cyclic(n));
            let field = field_from_spec(&format!("GF({})", smallest_prime_one_mod(n as u64)))?;
            let xs = Arc::new(GSet::regular(g.clone()));
            let ds = build_dual_set(xs.clone(), Arc::new(abelian_characters(g, &field)?))?;
            for mask in 1..1u64 << n {
                let bits: Vec<i64> = (0..n).map(|i| (mask >> i & 1) as i64).collect();
                compare_rank_support(ledger, &FunctionOnX::from_i64(xs.clone(), field.clone(), &bits)?, &ds)?;
            }
        }
        let bundle = s3_bundle()?;
        let field = bundle.field().clone();
        let g = bundle.group().clone();
        let mut rng = rng_for(cfg, self.name());
        for xs in [GSet::natural(g.clone())?, GSet::regular(g)] {
            let xs = Arc::new(xs);
            let ds = build_dual_set(xs.clone(), bundle.clone())?;
            let m = xs.size();
            // Every {-1, 0, 1} pattern, then random rational functions.
            for code in 0..3u64.pow(m as u32) {
                let vals: Vec<i64> = (0..m).map(|i| (code / 3u64.pow(i as u32) % 3) as i64 - 1).collect();
                if vals.iter().all(|&v| v == 0) {
                    continue;
                }
                compare_rank_support(ledger, &FunctionOnX::from_i64(xs.clone(), field.clone(), &vals)?, &ds)?;
            }
            for _ in 0..1000 {
                let vals: Vec<i64> = loop {
                    let v: Vec<i64> =
                        (0..m).map(|_| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(-5..=5) }).collect();
                    if v.iter().any(|&x| x != 0) {
                        break v;
                    }
                };
                compare_rank_support(ledger, &FunctionOnX::from_i64(xs.clone(), field.clone(), &vals)?, &ds)?;
            }
        }
        Ok(())
    }
}

fn fourier_dual_sets() -> Result<Vec<DualSet>> {
    let mut out = Vec::new();
    for n in 2..=12usize {
        let g = Arc::new(Group::cyclic(n));
        let field = field_from_spec(&format!("GF({})", smallest_prime_one_mod(n as u64)))?;
        out.push(build_dual_set(Arc::new(GSet::regular(g.clone())), Arc::new(abelian_characters(g, &field)?))?);
    }
    for g in Group::small_groups_up_to_8().into_iter().filter(Group::is_abelian) {
        let g = Arc::new(g);
        let field = field_from_spec(&format!("GF({})", smallest_prime_one_mod(g.exponent())))?;
        let bundle = Arc::new(abelian_characters(g.clone(), &field)?);
        for xs in transitive_actions(g.clone())? {
            out.push(build_dual_set(Arc::new(xs), bundle.clone())?);
        }
        let q = splitting_extension(&field_from_spec("Q")?, &g)?;
        out.push(build_dual_set(Arc::new(GSet::regular(g.clone())), Arc::new(abelian_characters(g, &q)?))?);
    }
    let bundle = s3_bundle()?;
    for xs in transitive_actions(bundle.group().clone())? {
        out.push(build_dual_set(Arc::new(xs), bundle.clone())?);
    }
    Ok(out)
}

/// `Σ_x f(x)·λ(x)` for every dual function, written out directly.
fn direct_transform(f: &[FieldValue], ds: &DualSet) -> Vec<linalg::Matrix> {
    let e = ds.field();
    ds.blocks()
        .iter()
        .map(|b| {
            b.lambdas
                .iter()
                .map(|row| row.iter().map(|lam| f.iter().zip(lam).fold(e.zero(), |acc, (a, l)| e.add(&acc, &e.mul(a, l)))).collect())
                .collect()
        })
        .collect()
}

/// Invertible evaluation matrix, the transformation law of the dual
/// functions, and equivariance of the transform, each by direct evaluation.
struct FourierIsomorphism;

impl VerifySuite for FourierIsomorphism {
    fn name(&self) -> &'static str {
        "fourier-isomorphism"
    }

    fn about(&self) -> &'static str {
        "dual sets are bases, transform by the irreps, and make the transform equivariant"
    }

    fn run(&self, cfg: &VerifyConfig, ledger: &mut SweepLedger) -> Result<()> {
        let mut rng = rng_for(cfg, self.name());
        for ds in fourier_dual_sets()? {
            ledger.instances += 1;
            let e = ds.field().clone();
            let xs = ds.gset().clone();
            let g = xs.group();
            let label = format!("{} on {} over {}", g.name(), xs.label(), e.spec());
            let rows: linalg::Matrix =
                ds.blocks().iter().flat_map(|b| b.lambdas.iter().flatten().cloned()).collect();
            let det = linalg::determinant(&e, &rows);
            check(ledger, "dual-basis", rows.len() == xs.size() && !e.is_zero(&det), || format!("{label}: singular"));

            let mut law = true;
            for a in g.elements() {
                let ainv = g.inv(a);
                for (b, ir) in ds.blocks().iter().zip(ds.bundle().irreps()) {
                    for row in &b.lambdas {
                        for j in 0..ir.degree {
                            for x in xs.points() {
                                let moved = &row[j][xs.act(ainv, x)];
                                let mixed = (0..ir.degree).fold(e.zero(), |acc, k| e.add(&acc, &e.mul(&row[k][x], &ir.matrices[a][k][j])));
                                law &= *moved == mixed;
                            }
                        }
                    }
                }
            }
            check(ledger, "dual-transformation-law", law, || format!("{label}"));

            let mut equivariant = true;
            for _ in 0..100 {
                let f: Vec<FieldValue> = xs.points().map(|_| e.random_value(&mut rng)).collect();
                let base = direct_transform(&f, &ds);
                for a in g.elements() {
                    let ainv = g.inv(a);
                    let moved: Vec<FieldValue> = xs.points().map(|x| f[xs.act(ainv, x)].clone()).collect();
                    let lhs = direct_transform(&moved, &ds);
                    for ((l, b), ir) in lhs.iter().zip(&base).zip(ds.bundle().irreps()) {
                        equivariant &= b.is_empty() || *l == linalg::mat_mul(&e, b, &ir.matrices[ainv]);
                    }
                }
                let lib = fourier_transform(&FunctionOnX::new(xs.clone(), e.clone(), f)?, &ds)?;
                equivariant &= lib.blocks() == base.as_slice();
            }
            check(ledger, "transform-equivariance", equivariant, || format!("{label}"));

            let f: Vec<FieldValue> = xs.points().map(|_| e.random_value(&mut rng)).collect();
            let ft = fourier_transform(&FunctionOnX::new(xs.clone(), e.clone(), f)?, &ds)?;
            if let Some(w) = guarded(ledger, "min-supp-witness", min_supp_witness(&ft, 20, &mut rng))? {
                check(ledger, "min-supp-witness", w.summary.witness_count == rank_support(&ft), || format!("{label}"));
            }
        }
        Ok(())
    }
}

/// Nonvanishing minors of the prime-order DFT matrix, and the additive
/// support bound `|supp f| + |supp f̂| ≥ p + 1` it implies.
struct Chebotarev;

impl VerifySuite for Chebotarev {
    fn name(&self) -> &'static str {
        "chebotarev"
    }

    fn about(&self) -> &'static str {
        "every square minor of the p-point DFT matrix is nonzero; additive support bound"
    }

    fn run(&self, cfg: &VerifyConfig, ledger: &mut SweepLedger) -> Result<()> {
        let mut rng = rng_for(cfg, self.name());
        for p in [2u64, 3, 5, 7] {
            ledger.instances += 1;
            let r = chebotarev_minor_check(p, DEFAULT_CHEBOTAREV_CAP)?;
            check(ledger, "dft-minors", r.all_nonzero, || format!("p = {p}: a vanishing minor among {}", r.minors));
            let g = Arc::new(Group::cyclic(p as usize));
            let e = splitting_extension(&field_from_spec("Q")?, &g)?;
            let xs = Arc::new(GSet::regular(g.clone()));
            let ds = build_dual_set(xs.clone(), Arc::new(abelian_characters(g, &e)?))?;
            for _ in 0..100 {
                ledger.instances += 1;
                let k = rng.gen_range(1..=p as usize);
                let mut points: Vec<usize> = (0..p as usize).collect();
                for i in 0..k {
                    let j = rng.gen_range(i..points.len());
                    points.swap(i, j);
                }
                let mut vals = vec![e.zero(); p as usize];
                for &x in &points[..k] {
                    vals[x] = e.random_nonzero(&mut rng);
                }
                let f = FunctionOnX::new(xs.clone(), e.clone(), vals)?;
                let hat = fourier_transform(&f, &ds)?.blocks().iter().filter(|b| linalg::count_nonzero(&e, b) > 0).count();
                check(ledger, "additive-support", k + hat >= p as usize + 1, || format!("p = {p}: {k} + {hat}"));
            }
        }
        Ok(())
    }
}

/// Equality in `|supp f|·|supp f̂| ≥ |G|` exactly for `c·χ·I_{γH}`.
struct DonohoStarkAtlas;

impl VerifySuite for DonohoStarkAtlas {
    fn name(&self) -> &'static str {
        "donoho-stark-atlas"
    }

    fn about(&self) -> &'static str {
        "abelian equality cases of the support product bound are the scaled coset characters"
    }

    fn run(&self, _cfg: &VerifyConfig, ledger: &mut SweepLedger) -> Result<()> {
        for g in Group::small_groups_up_to_8().into_iter().filter(Group::is_abelian) {
            ledger.instances += 1;
            let field = field_from_spec(&format!("GF({})", smallest_prime_one_mod(g.exponent())))?;
            let r = donoho_stark_atlas(Arc::new(g), &field)?;
            let detail = format!("{} over {}: {:?}", r.group, r.field, r.discrepancies);
            check(ledger, "donoho-stark-atlas", r.is_clean() && r.family == r.equality, || detail);
        }
        Ok(())
    }
}

/// Every `c·η` on a coset of a subgroup reaches `|supp f|·dim = |G|`, and
/// classification returns a certificate for it.
struct CosetIndicators;

impl VerifySuite for CosetIndicators {
    fn name(&self) -> &'static str {
        "coset-indicators"
    }

    fn about(&self) -> &'static str {
        "scaled characters on cosets attain classical equality and are certified"
    }

    fn run(&self, cfg: &VerifyConfig, ledger: &mut SweepLedger) -> Result<()> {
        let mut rng = rng_for(cfg, self.name());
        for g in Group::small_groups_up_to_8() {
            let g = Arc::new(g);
            let field: Field = field_from_spec(&format!("GF({})", smallest_prime_one_mod(g.exponent())))?;
            for h in g.all_subgroups()? {
                let etas = homs_to_units(&g, &h, &field);
                for coset in g.left_cosets(&h) {
                    for eta in &etas {
                        ledger.instances += 1;
                        let c = field.random_nonzero(&mut rng);
                        let f = coset_indicator_function(g.clone(), &h, coset[0], eta, &c, &field)?;
                        let Some(r) = guarded(ledger, "coset-indicator-equality", regular_analyze(&f))? else {
                            continue;
                        };
                        check(ledger, "coset-indicator-equality", r.classical_equality, || {
                            format!("{} H = {:?} γ = {}", g.name(), h.elements(), coset[0])
                        });
                        if let Some(cl) = guarded(ledger, "coset-indicator-certificate", classify_equality_classical(&f, None))? {
                            check(ledger, "coset-indicator-certificate", cl.certificate.is_some(), || {
                                format!("{} H = {:?}: {:?}", g.name(), h.elements(), cl.refutation)
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        let r = SuiteRegistry::default();
        assert!(r.names().contains(&"closure-laws"));
        assert!(r.get("nope").is_none());
        let cfg = VerifyConfig { seed: 1, samples: 20 };
        assert!(matches!(r.run(&["nope".into()], &cfg), Err(Error::InputError(_))));
        let l = r.run(&["worked-example".into(), "complement-cover".into()], &cfg).unwrap();
        assert!(l.is_clean(), "{:?}", l.violations);
        assert_eq!(l.tallies["worked-example"].passed, 8);
    }

    #[test]
    fn seeded_runs_repeat() {
        let cfg = VerifyConfig { seed: 7, samples: 30 };
        let names = vec!["block-properties".to_string(), "translate-equivalence".to_string()];
        let a = verify_lemma_suite(&cfg, &names).unwrap();
        assert!(a.is_clean(), "{:?}", a.violations);
        assert_eq!(a, verify_lemma_suite(&cfg, &names).unwrap());
    }
}
