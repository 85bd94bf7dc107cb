//! Skeleton insertions, gap filling between two elements, and a driver that
//! separates every pair of an enumerated prefix.
//!
//! A new layer is always an `I` layer whose group is a copy of the group of
//! the layer it is inserted next to (the copy isomorphism is the identity on
//! the carrier) and whose subgroup is the whole group. New labels are
//! `v+K` (above `v`) and `v-K` (below `v`) for a counter `K` that increases
//! across insertions.

use std::fmt;

use crate::bunch::{Bunch, Layer, LayerClass};
use crate::chain::{Chain, ChainElement};
use crate::embed::EmbeddingSpec;
use crate::error::{Error, Result};
use crate::ogroup::{cmp_elems, GElem, Hom};

#[derive(Clone, Debug)]
pub struct InsertionReceipt {
    pub bunch: Bunch,
    /// Layer index, in the old bunch, next to which the new layer went.
    pub source_layer: usize,
    /// Index of the new layer in the new bunch.
    pub new_layer: usize,
    pub above: bool,
    /// Coordinatewise identity from the old bunch into the new one.
    pub embedding: EmbeddingSpec,
}

impl InsertionReceipt {
    pub fn new_layer_name(&self) -> &str {
        &self.bunch.layer(self.new_layer).name
    }

    /// The copy of `y ∈ G_v` in the new layer: the upper cover of `(v, y)`
    /// after an insertion above, the lower cover after one below.
    pub fn witness(&self, y: &GElem) -> ChainElement {
        ChainElement::plain(self.new_layer, y.clone())
    }

    /// Image of an old element in the new chain.
    pub fn embed(&self, x: &ChainElement) -> ChainElement {
        self.embedding.map_element(x)
    }
}

fn insert_at(b: &Bunch, source_layer: usize, above: bool) -> Result<InsertionReceipt> {
    let v = b.layer(source_layer);
    let label = format!("{}{}{}", v.name, if above { '+' } else { '-' }, b.next_label_counter());
    let at = if above { source_layer + 1 } else { source_layer };
    let mut layers = b.layers().to_vec();
    layers.insert(at, Layer::new(label, LayerClass::I, v.group.clone()));
    let mut steps = b.steps().to_vec();
    // Above v: v → v★ is the copy and v★ → next is the old step out of v.
    // Below v: prev → v⋆ is the old step into v and v⋆ → v is the copy.
    steps.insert(source_layer, Hom::identity(&v.group));
    let bunch = Bunch::new(layers, steps)?;
    let skeleton_map = (0..b.len()).map(|u| if u < at { u } else { u + 1 }).collect();
    let embedding = EmbeddingSpec::coordinatewise_identity(b, &bunch, skeleton_map)?;
    debug_assert!(bunch.validate().is_ok(), "insertion broke validity:\n{}", bunch.validate());
    Ok(InsertionReceipt { bunch, source_layer, new_layer: at, above, embedding })
}

/// Insert a copy of layer `v` just above it; `v` must not be a `J` layer.
pub fn insert_above(b: &Bunch, v: usize) -> Result<InsertionReceipt> {
    if b.class(v) == LayerClass::J {
        return Err(Error::LayerClass(b.layer(v).name.clone()));
    }
    insert_at(b, v, true)
}

/// Insert a copy of layer `v` just below it; `v` must not be the least layer.
///
/// The copy maps onto `G_v`, so an `I` layer `v` with a proper subgroup is
/// refused.
pub fn insert_below(b: &Bunch, v: usize) -> Result<InsertionReceipt> {
    if v == 0 {
        return Err(Error::LeastLayer(b.layer(0).name.clone()));
    }
    if b.layer(v).subgroup.as_ref().is_some_and(|h| !h.is_whole()) {
        return Err(Error::SubgroupObstruction(b.layer(v).name.clone()));
    }
    insert_at(b, v, false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GapCase {
    /// Distinct images, both in `t`.
    C1a,
    /// Distinct images, `y` undotted above `t`.
    C1b,
    /// Distinct images, `y` dotted, or `y` undotted in `t` below `x`.
    C1c,
    /// Equal images, `x` in a lower layer than `y`.
    C2a,
    /// Equal images in one `I` layer, `x` dotted.
    C2b,
    /// Equal images, `x` dotted in a higher `I` layer.
    C2c,
}

impl GapCase {
    pub fn tag(self) -> &'static str {
        match self {
            GapCase::C1a => "1a",
            GapCase::C1b => "1b",
            GapCase::C1c => "1c",
            GapCase::C2a => "2a",
            GapCase::C2b => "2b",
            GapCase::C2c => "2c",
        }
    }
}

impl fmt::Display for GapCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug)]
pub struct GapFill {
    pub case: GapCase,
    pub receipt: InsertionReceipt,
    /// `x` and `y` embedded in the new chain.
    pub x: ChainElement,
    pub y: ChainElement,
    pub witness: ChainElement,
}

/// Insert one layer so that some new element lies strictly between `x < y`.
pub fn fill_gap(c: &Chain, x: &ChainElement, y: &ChainElement) -> Result<GapFill> {
    if !c.bunch_type().is_odd() {
        return Err(Error::EvenTypeUnsupported);
    }
    c.check_element(x)?;
    c.check_element(y)?;
    if !c.lt(x, y) {
        return Err(Error::NotLess { x: c.format_element(x), y: c.format_element(y) });
    }
    let b = c.bunch();
    let (u, v) = (x.layer, y.layer);
    let top = u.max(v);
    let strict = cmp_elems(&c.image_in(top, x)?, &c.image_in(top, y)?).is_lt();

    // Each branch gives the case, the insertion and the witness's group
    // element and dot in the new layer.
    let dotted_above = |layer: usize, g: &GElem| Ok::<_, Error>((insert_above(b, layer)?, g.clone(), true));
    let below_or = |layer: usize, g: &GElem, dotted: bool, fallback: &dyn Fn() -> Result<(InsertionReceipt, GElem, bool)>| match insert_below(b, layer) {
        Ok(r) => Ok((r, g.clone(), dotted)),
        Err(Error::SubgroupObstruction(_)) => fallback(),
        Err(e) => Err(e),
    };
    // Insert above the layer under `layer`, copying `lower`'s image there.
    let above_predecessor = |layer: usize, lower: &ChainElement, dotted: bool| -> Result<(InsertionReceipt, GElem, bool)> {
        let p = layer - 1;
        if b.class(p) == LayerClass::J {
            return Err(Error::SubgroupObstruction(b.layer(layer).name.clone()));
        }
        Ok((insert_above(b, p)?, c.image_in(p, lower)?, dotted))
    };

    let (case, (receipt, g, dotted)) = if strict {
        if y.dotted {
            (GapCase::C1c, dotted_above(v, &y.g)?)
        } else if u == 0 && v == 0 {
            (GapCase::C1a, (insert_above(b, 0)?, x.g.clone(), false))
        } else if v > 0 {
            (GapCase::C1b, below_or(v, &y.g, false, &|| dotted_above(v, &y.g))?)
        } else {
            (GapCase::C1c, dotted_above(0, &y.g)?)
        }
    } else if u < v {
        (GapCase::C2a, below_or(v, &y.g, false, &|| above_predecessor(v, x, false))?)
    } else if u == v {
        (GapCase::C2b, below_or(v, &y.g, false, &|| Err(Error::SubgroupObstruction(b.layer(v).name.clone())))?)
    } else {
        (GapCase::C2c, below_or(u, &x.g, true, &|| above_predecessor(u, y, true))?)
    };
    let witness = ChainElement::new(receipt.new_layer, g, dotted);
    let (x2, y2) = (receipt.embed(x), receipt.embed(y));
    if cfg!(debug_assertions) {
        let ext = Chain::assume_valid(receipt.bunch.clone());
        debug_assert!(ext.lt(&x2, &witness) && ext.lt(&witness, &y2), "case {case}: witness not in between");
    }
    Ok(GapFill { case, receipt, x: x2, y: y2, witness })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub case: GapCase,
    pub inserted_layer: String,
    pub inserted_class: LayerClass,
    pub x: String,
    pub y: String,
    pub witness: String,
}

#[derive(Clone, Debug)]
pub struct Densified {
    pub bunch: Bunch,
    pub trace: Vec<TraceRecord>,
    /// The enumerated prefix, in the final chain.
    pub originals: Vec<ChainElement>,
    /// Prefix plus every witness, in the final chain.
    pub materialized: Vec<ChainElement>,
    /// Coordinatewise identity from the source bunch into the result.
    pub embedding: EmbeddingSpec,
}

/// Driver state: the current chain, the enumerated prefix and every element
/// materialized so far, all expressed in the current chain.
#[derive(Clone, Debug)]
pub struct Densifier {
    source: Bunch,
    chain: Chain,
    skeleton_map: Vec<usize>,
    originals: Vec<ChainElement>,
    materialized: Vec<ChainElement>,
    trace: Vec<TraceRecord>,
}

impl Densifier {
    /// Start from the first `prefix` enumerated elements.
    pub fn new(c: &Chain, prefix: usize) -> Result<Densifier> {
        if !c.bunch_type().is_odd() {
            return Err(Error::EvenTypeUnsupported);
        }
        let originals: Vec<ChainElement> = c.elements().take(prefix).collect();
        Ok(Densifier {
            source: c.bunch().clone(),
            chain: c.clone(),
            skeleton_map: (0..c.bunch().len()).collect(),
            materialized: originals.clone(),
            originals,
            trace: Vec::new(),
        })
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn trace(&self) -> &[TraceRecord] {
        &self.trace
    }

    /// Fill every adjacent pair of the materialized elements that has no
    /// materialized element strictly between it. Returns the insertion count.
    pub fn pass(&mut self) -> Result<usize> {
        self.pass_over(self.materialized.clone())
    }

    /// As [`Densifier::pass`], but only over adjacent pairs of the prefix.
    pub fn pass_over_prefix(&mut self) -> Result<usize> {
        self.pass_over(self.originals.clone())
    }

    fn pass_over(&mut self, mut targets: Vec<ChainElement>) -> Result<usize> {
        self.chain.sort_dedup(&mut targets);
        let before = self.trace.len();
        for i in 0..targets.len().saturating_sub(1) {
            let (x, y) = (&targets[i], &targets[i + 1]);
            if self.materialized.iter().any(|z| self.chain.lt(x, z) && self.chain.lt(z, y)) {
                continue;
            }
            let fill = fill_gap(&self.chain, x, y)?;
            let r = &fill.receipt;
            for list in [&mut targets, &mut self.materialized, &mut self.originals] {
                for z in list.iter_mut() {
                    *z = r.embed(z);
                }
            }
            for s in self.skeleton_map.iter_mut() {
                *s = r.embedding.skeleton_map()[*s];
            }
            let next = Chain::assume_valid(r.bunch.clone());
            self.trace.push(TraceRecord {
                case: fill.case,
                inserted_layer: r.new_layer_name().to_string(),
                inserted_class: r.bunch.class(r.new_layer),
                x: next.format_element(&fill.x),
                y: next.format_element(&fill.y),
                witness: next.format_element(&fill.witness),
            });
            self.materialized.push(fill.witness);
            self.chain = next;
        }
        Ok(self.trace.len() - before)
    }

    pub fn finish(self) -> Result<Densified> {
        let bunch = self.chain.into_bunch();
        let embedding = EmbeddingSpec::coordinatewise_identity(&self.source, &bunch, self.skeleton_map)?;
        Ok(Densified { bunch, trace: self.trace, originals: self.originals, materialized: self.materialized, embedding })
    }
}

/// Take the first `prefix` enumerated elements and run `rounds` passes.
pub fn densify(c: &Chain, prefix: usize, rounds: usize) -> Result<Densified> {
    let mut d = Densifier::new(c, prefix)?;
    for _ in 0..rounds {
        d.pass()?;
    }
    d.finish()
}

/// Every inserted layer went to the `I` class.
pub fn preserves_idempotent_symmetry(trace: &[TraceRecord]) -> bool {
    trace.iter().all(|r| r.inserted_class == LayerClass::I)
}

/// The bunch-level reading of idempotent symmetry used here: no `J` layers.
pub fn is_idempotent_symmetric(b: &Bunch) -> bool {
    b.is_j_free()
}
