//! Embeddings between chains given layer by layer, checked through the
//! skeleton and layer-group conditions plus a direct check on elements.
//!
//! Spec files are JSON:
//!
//! ```json
//! {"skeleton_map": {"t": "t", "u": "u"}, "layer_maps": {"t": "id", "u": "id"}}
//! ```
//!
//! Layer maps use the hom grammar of bunch files and are typed against the
//! two bunches when the spec is loaded.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{Map, Value};

use crate::bunch::{Bunch, LayerClass};
use crate::chain::laws::random_element;
use crate::chain::{Chain, ChainElement};
use crate::error::{Error, Result};
use crate::ogroup::{GElem, Hom, HomExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingSpec {
    /// Target layer index for each source layer.
    skeleton_map: Vec<usize>,
    /// Hom from each source layer group to its target layer group.
    layer_maps: Vec<Hom>,
}

impl EmbeddingSpec {
    pub fn new(src: &Bunch, dst: &Bunch, skeleton_map: Vec<usize>, layer_maps: Vec<Hom>) -> Result<EmbeddingSpec> {
        if skeleton_map.len() != src.len() || layer_maps.len() != src.len() {
            return Err(Error::TypeMismatch(format!("an embedding spec needs one entry per source layer ({})", src.len())));
        }
        for (u, (&v, h)) in skeleton_map.iter().zip(&layer_maps).enumerate() {
            if v >= dst.len() {
                return Err(Error::TypeMismatch(format!("target layer index {v} out of range")));
            }
            if h.source() != src.group(u) || h.target() != dst.group(v) {
                return Err(Error::TypeMismatch(format!(
                    "layer map for `{}` is {} -> {}, expected {} -> {}",
                    src.layer(u).name,
                    h.source(),
                    h.target(),
                    src.group(u),
                    dst.group(v)
                )));
            }
        }
        Ok(EmbeddingSpec { skeleton_map, layer_maps })
    }

    /// Identity on every layer group, with the given skeleton map.
    pub fn coordinatewise_identity(src: &Bunch, dst: &Bunch, skeleton_map: Vec<usize>) -> Result<EmbeddingSpec> {
        let maps = (0..src.len()).map(|u| Hom::identity(src.group(u))).collect();
        EmbeddingSpec::new(src, dst, skeleton_map, maps)
    }

    pub fn skeleton_map(&self) -> &[usize] {
        &self.skeleton_map
    }

    pub fn layer_maps(&self) -> &[Hom] {
        &self.layer_maps
    }

    /// `(u, g, dot) ↦ (ι(u), ι_u(g), dot)`.
    pub fn map_element(&self, x: &ChainElement) -> ChainElement {
        ChainElement::new(self.skeleton_map[x.layer], self.layer_maps[x.layer].apply_unchecked(&x.g), x.dotted)
    }

    pub fn parse(text: &str, src: &Bunch, dst: &Bunch) -> Result<EmbeddingSpec> {
        let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: Some(e.line()),
            field: None,
            message: e.to_string(),
        })?;
        EmbeddingSpec::from_json(&doc, src, dst)
    }

    pub fn from_json(doc: &Value, src: &Bunch, dst: &Bunch) -> Result<EmbeddingSpec> {
        let obj = doc.as_object().ok_or_else(|| Error::parse_msg("an embedding spec is a JSON object"))?;
        if let Some(extra) = obj.keys().find(|k| *k != "skeleton_map" && *k != "layer_maps") {
            return Err(Error::parse(extra.clone(), "unknown field"));
        }
        let section = |key: &str| {
            obj.get(key).and_then(Value::as_object).ok_or_else(|| Error::parse(key, "expected an object keyed by source layer"))
        };
        let (skel, maps) = (section("skeleton_map")?, section("layer_maps")?);
        let mut skeleton_map = Vec::with_capacity(src.len());
        let mut layer_maps = Vec::with_capacity(src.len());
        for (u, layer) in src.layers().iter().enumerate() {
            let field = format!("skeleton_map.{}", layer.name);
            let target = skel.get(&layer.name).and_then(Value::as_str).ok_or_else(|| Error::parse(&field, "missing target layer"))?;
            let v = dst.index_of(target)?;
            let field = format!("layer_maps.{}", layer.name);
            let expr = HomExpr::from_json(maps.get(&layer.name).ok_or_else(|| Error::parse(&field, "missing layer map"))?)?;
            skeleton_map.push(v);
            layer_maps.push(Hom::new(&expr, src.group(u), dst.group(v))?);
        }
        EmbeddingSpec::new(src, dst, skeleton_map, layer_maps)
    }

    pub fn to_json(&self, src: &Bunch, dst: &Bunch) -> Value {
        let mut skel = Map::new();
        let mut maps = Map::new();
        for (u, (&v, h)) in self.skeleton_map.iter().zip(&self.layer_maps).enumerate() {
            let name = src.layer(u).name.clone();
            skel.insert(name.clone(), Value::from(dst.layer(v).name.clone()));
            maps.insert(name, h.expr().to_json());
        }
        let mut doc = Map::new();
        doc.insert("skeleton_map".into(), skel.into());
        doc.insert("layer_maps".into(), maps.into());
        Value::Object(doc)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EmbedClause {
    /// The skeleton map is strictly increasing.
    SkeletonOrder,
    /// The least layer goes to the least layer.
    LeastLayer,
    /// Partition classes are preserved.
    Partition,
    /// Each layer map is an injective order-preserving homomorphism.
    LayerMaps,
    /// Layer maps commute with the transitions.
    Commute,
    /// On `I` layers, `g ∈ H_u` iff its image lies in `H_{ι(u)}`.
    Subgroups,
    /// On `J` layers, the covers of the unit go to the covers of the unit.
    Covers,
    /// Direct check: the element map preserves the order.
    Order,
    /// Direct check: the element map preserves products.
    Product,
    /// Direct check: `t` and `f` are preserved and images are well formed.
    Constants,
}

/// How strongly a clause was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Structural or exhaustive.
    Proved,
    /// Checked on this many samples.
    Tested(usize),
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::Proved => write!(f, "proved"),
            Evidence::Tested(n) => write!(f, "tested on {n}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EmbedCheck {
    pub clause: EmbedClause,
    pub subject: String,
    pub evidence: Evidence,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct EmbeddingReport {
    pub checks: Vec<EmbedCheck>,
}

impl EmbeddingReport {
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.violations.is_empty())
    }

    pub fn has_violation(&self, clause: EmbedClause) -> bool {
        self.checks.iter().any(|c| c.clause == clause && !c.violations.is_empty())
    }

    /// Every clause passed and none relied on sampling.
    pub fn is_proved(&self) -> bool {
        self.is_ok() && self.checks.iter().all(|c| c.evidence == Evidence::Proved)
    }

    fn push(&mut self, clause: EmbedClause, subject: impl Into<String>, evidence: Evidence, violations: Vec<String>) {
        self.checks.push(EmbedCheck { clause, subject: subject.into(), evidence, violations });
    }
}

impl fmt::Display for EmbeddingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.violations.is_empty() { "ok" } else { "FAIL" };
            writeln!(f, "{:?} {} [{}]: {status}", c.clause, c.subject, c.evidence)?;
            for v in &c.violations {
                writeln!(f, "    {v}")?;
            }
        }
        write!(f, "{}", if self.is_ok() { "embedding" } else { "not an embedding" })
    }
}

fn group_sample(b: &Bunch, u: usize, samples: usize) -> (Vec<GElem>, Evidence) {
    let g = b.group(u);
    if g.is_trivial() {
        (vec![g.unit()], Evidence::Proved)
    } else {
        (g.enumerate().take(samples).collect(), Evidence::Tested(samples))
    }
}

/// Check that `spec` embeds `src` into `dst`. Infinite groups and chains are
/// checked on `samples` elements or pairs (random pairs drawn with `seed`).
pub fn check_embedding(src: &Chain, dst: &Chain, spec: &EmbeddingSpec, samples: usize, seed: u64) -> EmbeddingReport {
    let samples = samples.max(1);
    let (sb, db) = (src.bunch(), dst.bunch());
    let name = |b: &Bunch, u: usize| b.layer(u).name.clone();
    let mut report = EmbeddingReport::default();
    let iota = &spec.skeleton_map;

    let bad: Vec<String> = iota
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] >= w[1])
        .map(|(u, _)| format!("{} -> {} is not below {} -> {}", name(sb, u), name(db, iota[u]), name(sb, u + 1), name(db, iota[u + 1])))
        .collect();
    report.push(EmbedClause::SkeletonOrder, "skeleton", Evidence::Proved, bad);
    let least = if iota[0] == 0 { vec![] } else { vec![format!("t goes to `{}`", name(db, iota[0]))] };
    report.push(EmbedClause::LeastLayer, "skeleton", Evidence::Proved, least);
    let bad: Vec<String> = (0..sb.len())
        .filter(|&u| sb.class(u) != db.class(iota[u]))
        .map(|u| format!("`{}` ({}) goes to `{}` ({})", name(sb, u), sb.class(u).code(), name(db, iota[u]), db.class(iota[u]).code()))
        .collect();
    report.push(EmbedClause::Partition, "skeleton", Evidence::Proved, bad);

    for (u, h) in spec.layer_maps.iter().enumerate() {
        let check = h.check(samples);
        let mut bad = check.violations;
        let evidence = if h.source().is_trivial() || (h.is_structurally_injective() && bad.is_empty()) {
            Evidence::Proved
        } else {
            Evidence::Tested(check.pairs_checked)
        };
        if !h.is_structurally_injective() {
            let xs: Vec<GElem> = h.source().enumerate().take(samples).collect();
            let unit = h.target().unit();
            if let Some(x) = xs.iter().find(|x| **x != h.source().unit() && h.apply_unchecked(x) == unit) {
                bad.push(format!("{x} is in the kernel of {h}"));
            }
        }
        report.push(EmbedClause::LayerMaps, name(sb, u), evidence, bad);
    }

    // Consecutive layers suffice: transitions on both sides are composites.
    for u in 0..sb.len().saturating_sub(1) {
        let (xs, evidence) = group_sample(sb, u, samples);
        let there = db.transition_idx(iota[u], iota[u + 1].max(iota[u])).ok();
        let bad: Vec<String> = match there {
            None => vec!["skeleton map is not monotone".into()],
            Some(there) => xs
                .iter()
                .filter_map(|x| {
                    let up_then_over = spec.layer_maps[u + 1].apply_unchecked(&sb.step(u).apply_unchecked(x));
                    let over_then_up = there.apply_unchecked(&spec.layer_maps[u].apply_unchecked(x));
                    (up_then_over != over_then_up).then(|| format!("at {x}: {up_then_over} vs {over_then_up}"))
                })
                .take(5)
                .collect(),
        };
        report.push(EmbedClause::Commute, format!("{}->{}", name(sb, u), name(sb, u + 1)), evidence, bad);
    }

    for u in (0..sb.len()).filter(|&u| sb.class(u) == LayerClass::I) {
        let (h_src, h_dst) = (sb.layer(u).subgroup.as_ref(), db.layer(iota[u]).subgroup.as_ref());
        let (Some(h_src), Some(h_dst)) = (h_src, h_dst) else {
            report.push(EmbedClause::Subgroups, name(sb, u), Evidence::Proved, vec!["target layer has no subgroup".into()]);
            continue;
        };
        if h_src.is_whole() && h_dst.is_whole() {
            report.push(EmbedClause::Subgroups, name(sb, u), Evidence::Proved, vec![]);
            continue;
        }
        let (xs, evidence) = group_sample(sb, u, samples);
        let bad: Vec<String> = xs
            .iter()
            .filter_map(|x| {
                let y = spec.layer_maps[u].apply_unchecked(x);
                (h_src.contains(x) != h_dst.contains(&y)).then(|| format!("{x} ↦ {y} changes subgroup membership"))
            })
            .take(5)
            .collect();
        report.push(EmbedClause::Subgroups, name(sb, u), evidence, bad);
    }

    for u in (0..sb.len()).filter(|&u| sb.class(u) == LayerClass::J) {
        let (g, h) = (sb.group(u), db.group(iota[u]));
        let mut bad = Vec::new();
        for dir in [-1, 1] {
            let mapped = g.cover(&g.unit(), dir).map(|c| spec.layer_maps[u].apply_unchecked(&c));
            let wanted = h.cover(&h.unit(), dir);
            if mapped.is_none() || mapped != wanted {
                let which = if dir < 0 { "lower" } else { "upper" };
                bad.push(format!(
                    "{which} cover of the unit goes to {}, expected {}",
                    mapped.map(|m| m.to_string()).unwrap_or_else(|| "nothing".into()),
                    wanted.map(|m| m.to_string()).unwrap_or_else(|| "nothing".into())
                ));
            }
        }
        report.push(EmbedClause::Covers, name(sb, u), Evidence::Proved, bad);
    }

    direct_checks(src, dst, spec, samples, seed, &mut report);
    report
}

fn direct_checks(src: &Chain, dst: &Chain, spec: &EmbeddingSpec, samples: usize, seed: u64, report: &mut EmbeddingReport) {
    let finite: Option<Vec<ChainElement>> = src.is_finite().then(|| src.elements().collect());
    let pairs: Vec<(ChainElement, ChainElement)> = match &finite {
        Some(xs) if xs.len() * xs.len() <= samples => {
            xs.iter().flat_map(|x| xs.iter().map(move |y| (x.clone(), y.clone()))).collect()
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| (random_element(src, &mut rng, 6), random_element(src, &mut rng, 6))).collect()
        }
    };
    let exhaustive = matches!(&finite, Some(xs) if xs.len() * xs.len() <= samples);
    let evidence = if exhaustive { Evidence::Proved } else { Evidence::Tested(pairs.len()) };
    let show = |c: &Chain, z: &ChainElement| c.format_element(z);

    let mut order = Vec::new();
    let mut product = Vec::new();
    let mut constants = Vec::new();
    for (x, y) in &pairs {
        let (ix, iy) = (spec.map_element(x), spec.map_element(y));
        if dst.check_element(&ix).is_err() {
            if constants.len() < 5 {
                constants.push(format!("{} maps to the ill-formed {:?}", show(src, x), ix));
            }
            continue;
        }
        if dst.check_element(&iy).is_err() {
            continue;
        }
        if src.compare(x, y) != dst.compare(&ix, &iy) && order.len() < 5 {
            order.push(format!("{} vs {} is not preserved", show(src, x), show(src, y)));
        }
        let image = spec.map_element(&src.mul(x, y));
        let prod = dst.mul(&ix, &iy);
        if image != prod && product.len() < 5 {
            product.push(format!("ι({}·{}) = {} but ι·ι = {}", show(src, x), show(src, y), show(dst, &image), show(dst, &prod)));
        }
    }
    let (t, f) = src.constants();
    let (t2, f2) = dst.constants();
    if spec.map_element(&t) != t2 {
        constants.push("t is not preserved".into());
    }
    if spec.map_element(&f) != f2 {
        constants.push("f is not preserved".into());
    }
    report.push(EmbedClause::Order, "elements", evidence, order);
    report.push(EmbedClause::Product, "elements", evidence, product);
    report.push(EmbedClause::Constants, "elements", evidence, constants);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bunch::Layer;
    use crate::fixtures;
    use crate::ogroup::OGroup;

    fn chain(b: Bunch) -> Chain {
        Chain::new(b).unwrap()
    }

    #[test]
    fn identity_on_fixtures() {
        for (name, b) in fixtures::named() {
            let spec = EmbeddingSpec::coordinatewise_identity(&b, &b, (0..b.len()).collect()).unwrap();
            let c = chain(b);
            let r = check_embedding(&c, &c, &spec, 400, 0);
            assert!(r.is_ok(), "{name}:\n{r}");
        }
        let s3 = chain(fixtures::s3());
        let spec = EmbeddingSpec::coordinatewise_identity(s3.bunch(), s3.bunch(), vec![0, 1]).unwrap();
        assert!(check_embedding(&s3, &s3, &spec, 100, 0).is_proved());
    }

    #[test]
    fn swapped_partition_fails_e1() {
        // S3 into the 4-element even chain with classes I, I: t's class changes.
        let src = chain(fixtures::s3());
        let dst = chain(
            Bunch::new(
                vec![Layer::new("t", LayerClass::I, OGroup::Trivial), Layer::new("u", LayerClass::I, OGroup::Trivial)],
                vec![Hom::unit_map(&OGroup::Trivial, &OGroup::Trivial)],
            )
            .unwrap(),
        );
        let spec = EmbeddingSpec::coordinatewise_identity(src.bunch(), dst.bunch(), vec![0, 1]).unwrap();
        let r = check_embedding(&src, &dst, &spec, 100, 0);
        assert!(r.has_violation(EmbedClause::Partition));
    }

    #[test]
    fn doubling_ze_breaks_covers() {
        let ze = chain(fixtures::ze());
        let double = Hom::new(&HomExpr::ScaleInt(2), &OGroup::Int, &OGroup::Int).unwrap();
        let spec = EmbeddingSpec::new(ze.bunch(), ze.bunch(), vec![0], vec![double]).unwrap();
        let r = check_embedding(&ze, &ze, &spec, 200, 0);
        assert!(r.has_violation(EmbedClause::Covers));
        assert!(!r.has_violation(EmbedClause::LayerMaps));
        assert!(r.has_violation(EmbedClause::Constants) || r.has_violation(EmbedClause::Order));
    }

    #[test]
    fn collapsing_map_fails() {
        let lz = chain(fixtures::lz());
        let spec = EmbeddingSpec::new(
            lz.bunch(),
            lz.bunch(),
            vec![0, 1],
            vec![Hom::unit_map(&OGroup::Int, &OGroup::Int), Hom::identity(&OGroup::Int)],
        )
        .unwrap();
        let r = check_embedding(&lz, &lz, &spec, 200, 0);
        assert!(r.has_violation(EmbedClause::LayerMaps));
        assert!(r.has_violation(EmbedClause::Commute));
    }

    #[test]
    fn spec_files() {
        let lz2 = fixtures::lz2();
        let text = r#"{"skeleton_map": {"t": "t", "u": "u"}, "layer_maps": {"t": "id", "u": {"scale_int": 1}}}"#;
        let spec = EmbeddingSpec::parse(text, &lz2, &lz2).unwrap();
        assert_eq!(EmbeddingSpec::from_json(&spec.to_json(&lz2, &lz2), &lz2, &lz2).unwrap(), spec);
        let ill_typed = r#"{"skeleton_map": {"t": "t", "u": "u"}, "layer_maps": {"t": "int_to_rat", "u": "id"}}"#;
        assert!(matches!(EmbeddingSpec::parse(ill_typed, &lz2, &lz2), Err(Error::TypeMismatch(_))));
        let missing = r#"{"skeleton_map": {"t": "t"}, "layer_maps": {"t": "id", "u": "id"}}"#;
        assert!(EmbeddingSpec::parse(missing, &lz2, &lz2).is_err());
    }
}
