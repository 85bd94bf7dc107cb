//! Bunches of layer groups.
//!
//! A bunch is a direct system of o-groups over a finite chain of layers (the
//! skeleton), with each layer tagged `o`, `J` or `I`, a subgroup `H_u` on
//! every `I` layer, and one transition homomorphism per covering pair of
//! layers. Transitions between arbitrary layers are composites of the
//! stored ones, so functoriality holds by construction.

mod io;
mod validate;

use std::borrow::Cow;
use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::ogroup::{GElem, Hom, OGroup, Subgroup};

pub use validate::{CheckMethod, Clause, ClauseCheck, ValidationReport, DEFAULT_LAYER_SAMPLES};

/// Partition class of a skeleton layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LayerClass {
    O,
    J,
    I,
}

impl LayerClass {
    pub fn code(self) -> &'static str {
        match self {
            LayerClass::O => "o",
            LayerClass::J => "J",
            LayerClass::I => "I",
        }
    }
}

/// The three kinds of bunch, read off the class of the least layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BunchType {
    Odd,
    EvenNonIdemF,
    EvenIdemF,
}

impl BunchType {
    pub fn is_odd(self) -> bool {
        self == BunchType::Odd
    }
}

impl fmt::Display for BunchType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BunchType::Odd => "Odd",
            BunchType::EvenNonIdemF => "EvenNonIdemF",
            BunchType::EvenIdemF => "EvenIdemF",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub name: String,
    pub class: LayerClass,
    pub group: OGroup,
    /// Present exactly on `I` layers.
    pub subgroup: Option<Subgroup>,
}

impl Layer {
    pub fn new(name: impl Into<String>, class: LayerClass, group: OGroup) -> Self {
        let subgroup = (class == LayerClass::I).then(|| Subgroup::whole(&group));
        Layer { name: name.into(), class, group, subgroup }
    }

    pub fn with_subgroup(mut self, subgroup: Subgroup) -> Self {
        self.subgroup = Some(subgroup);
        self
    }

    /// `g` lies in `H_u`; false on layers without a subgroup.
    pub(crate) fn in_subgroup(&self, g: &GElem) -> bool {
        self.subgroup.as_ref().is_some_and(|h| h.contains(g))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bunch {
    layers: Vec<Layer>,
    // steps[i] maps layer i to layer i + 1
    steps: Vec<Hom>,
}

fn valid_label(name: &str) -> bool {
    !name.is_empty() && !name.contains(':') && !name.contains("->") && name.trim() == name
}

impl Bunch {
    /// Assemble a bunch from layers in ascending skeleton order and the
    /// transitions between consecutive layers.
    ///
    /// Only structural completeness is checked here; the class conditions and
    /// direct-system conditions are checked by [`Bunch::validate`].
    pub fn new(layers: Vec<Layer>, steps: Vec<Hom>) -> Result<Bunch> {
        if layers.is_empty() {
            return Err(Error::parse("skeleton", "the skeleton is empty"));
        }
        let mut seen = HashSet::new();
        for layer in &layers {
            if !valid_label(&layer.name) {
                return Err(Error::parse("skeleton", format!("invalid layer label `{}`", layer.name)));
            }
            if !seen.insert(layer.name.as_str()) {
                return Err(Error::parse("skeleton", format!("duplicate layer `{}`", layer.name)));
            }
            match (&layer.subgroup, layer.class) {
                (None, LayerClass::I) => {
                    return Err(Error::parse(
                        format!("subgroups.{}", layer.name),
                        "missing subgroup for an I layer",
                    ))
                }
                (Some(_), LayerClass::O | LayerClass::J) => {
                    return Err(Error::parse(
                        format!("subgroups.{}", layer.name),
                        "subgroups are only given for I layers",
                    ))
                }
                (Some(h), LayerClass::I) if *h.ambient() != layer.group => {
                    return Err(Error::TypeMismatch(format!(
                        "subgroup of `{}` lives in {} but the layer group is {}",
                        layer.name,
                        h.ambient(),
                        layer.group
                    )))
                }
                _ => {}
            }
        }
        if steps.len() + 1 != layers.len() {
            return Err(Error::parse(
                "steps",
                format!("expected {} steps, found {}", layers.len() - 1, steps.len()),
            ));
        }
        for (i, step) in steps.iter().enumerate() {
            let (lo, hi) = (&layers[i], &layers[i + 1]);
            if *step.source() != lo.group || *step.target() != hi.group {
                return Err(Error::TypeMismatch(format!(
                    "step {}->{} is {} but should map {} -> {}",
                    lo.name, hi.name, step, lo.group, hi.group
                )));
            }
        }
        Ok(Bunch { layers, steps })
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layer(&self, i: usize) -> &Layer {
        &self.layers[i]
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Transition from layer `i` to layer `i + 1`.
    pub fn step(&self, i: usize) -> &Hom {
        &self.steps[i]
    }

    pub fn steps(&self) -> &[Hom] {
        &self.steps
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.layers
            .iter()
            .position(|l| l.name == name)
            .ok_or_else(|| Error::UnknownLayer(name.to_string()))
    }

    pub fn class(&self, i: usize) -> LayerClass {
        self.layers[i].class
    }

    pub fn group(&self, i: usize) -> &OGroup {
        &self.layers[i].group
    }

    pub fn bunch_type(&self) -> BunchType {
        match self.layers[0].class {
            LayerClass::O => BunchType::Odd,
            LayerClass::J => BunchType::EvenNonIdemF,
            LayerClass::I => BunchType::EvenIdemF,
        }
    }

    /// All groups trivial, hence a finite chain.
    pub fn is_finite(&self) -> bool {
        self.layers.iter().all(|l| l.group.is_trivial())
    }

    /// No layer in the J class.
    pub fn is_j_free(&self) -> bool {
        self.layers.iter().all(|l| l.class != LayerClass::J)
    }

    /// The transition between two named layers, as a composite hom.
    pub fn transition(&self, from: &str, to: &str) -> Result<Hom> {
        let (u, v) = (self.index_of(from)?, self.index_of(to)?);
        self.transition_idx(u, v)
    }

    pub fn transition_idx(&self, u: usize, v: usize) -> Result<Hom> {
        if u > v {
            return Err(Error::LayerOrder {
                from: self.layers[u].name.clone(),
                to: self.layers[v].name.clone(),
            });
        }
        let mut hom = Hom::identity(&self.layers[u].group);
        for step in &self.steps[u..v] {
            hom = if matches!(hom.kind(), crate::ogroup::HomKind::Identity) {
                step.clone()
            } else {
                Hom::compose(step, &hom)?
            };
        }
        Ok(hom)
    }

    /// Push `g ∈ G_u` up to `G_v` along the stored steps; requires `u ≤ v`.
    pub(crate) fn transport<'a>(&self, u: usize, v: usize, g: &'a GElem) -> Cow<'a, GElem> {
        debug_assert!(u <= v);
        let mut out = Cow::Borrowed(g);
        for step in &self.steps[u..v] {
            if matches!(step.kind(), crate::ogroup::HomKind::Identity) {
                continue;
            }
            out = Cow::Owned(step.apply_unchecked(&out));
        }
        out
    }

    /// Layer names carry an optional `+K`/`-K` counter suffix; the next free
    /// counter is one more than the largest in use.
    pub(crate) fn next_label_counter(&self) -> u64 {
        self.layers
            .iter()
            .filter_map(|l| {
                let cut = l.name.rfind(['+', '-'])?;
                l.name[cut + 1..].parse::<u64>().ok()
            })
            .max()
            .unwrap_or(0)
            + 1
    }
}
