//! The involutive FL_e-chain of a bunch of layer groups.
//!
//! Elements are triples `(layer, g, dotted)`: `g` lives in the layer group
//! `G_u`, and on an `I` layer every `h ∈ H_u` also has a dotted companion
//! `ḣ` sitting just below `h`. Comparison and multiplication push both
//! operands up to the larger of their layers along the transitions (ignoring
//! the dot) and break ties by layer and dot.

mod enumerate;
pub mod laws;
mod text;

use std::borrow::Cow;
use std::cmp::Ordering;

use crate::bunch::{Bunch, BunchType, LayerClass};
use crate::error::{Error, Result};
use crate::ogroup::{cmp_elems, inv_elem, op_elems, GElem};
use crate::table::CayleyTable;

pub use enumerate::ChainElements;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainElement {
    /// Index into the skeleton of the owning chain's bunch.
    pub layer: usize,
    pub g: GElem,
    pub dotted: bool,
}

impl ChainElement {
    pub fn new(layer: usize, g: GElem, dotted: bool) -> Self {
        ChainElement { layer, g, dotted }
    }

    pub fn plain(layer: usize, g: GElem) -> Self {
        ChainElement { layer, g, dotted: false }
    }

    pub fn dotted(layer: usize, g: GElem) -> Self {
        ChainElement { layer, g, dotted: true }
    }
}

/// Greatest and least elements of a bounded chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub top: ChainElement,
    pub bottom: ChainElement,
}

#[derive(Clone, Debug)]
pub struct Chain {
    bunch: Bunch,
}

impl Chain {
    /// Build the chain of a bunch, rejecting bunches that fail validation.
    pub fn new(bunch: Bunch) -> Result<Chain> {
        let report = bunch.validate();
        if !report.is_ok() {
            return Err(Error::InvalidBunch(Box::new(report)));
        }
        Ok(Chain { bunch })
    }

    /// Skip validation; the caller guarantees the bunch is valid (e.g. it
    /// is a skeleton extension of a valid bunch).
    pub fn assume_valid(bunch: Bunch) -> Chain {
        Chain { bunch }
    }

    pub fn bunch(&self) -> &Bunch {
        &self.bunch
    }

    pub fn into_bunch(self) -> Bunch {
        self.bunch
    }

    pub fn bunch_type(&self) -> BunchType {
        self.bunch.bunch_type()
    }

    pub fn check_element(&self, x: &ChainElement) -> Result<()> {
        if x.layer >= self.bunch.len() {
            return Err(Error::TypeMismatch(format!("layer index {} out of range", x.layer)));
        }
        let layer = self.bunch.layer(x.layer);
        layer.group.check(&x.g)?;
        if x.dotted && !(layer.class == LayerClass::I && layer.in_subgroup(&x.g)) {
            return Err(Error::TypeMismatch(format!(
                "{} has no dotted copy in layer `{}`",
                x.g, layer.name
            )));
        }
        Ok(())
    }

    /// Build a checked element from a layer name.
    pub fn element(&self, layer: &str, g: GElem, dotted: bool) -> Result<ChainElement> {
        let x = ChainElement::new(self.bunch.index_of(layer)?, g, dotted);
        self.check_element(&x)?;
        Ok(x)
    }

    fn lift<'a>(&self, x: &'a ChainElement, v: usize) -> Cow<'a, GElem> {
        self.bunch.transport(x.layer, v, &x.g)
    }

    /// The image of `x` in layer `v ≥ x.layer`: the transition applied to
    /// the group part, ignoring the dot.
    pub fn image_in(&self, v: usize, x: &ChainElement) -> Result<GElem> {
        if x.layer > v {
            return Err(Error::LayerOrder {
                from: self.bunch.layer(x.layer).name.clone(),
                to: self.bunch.layer(v).name.clone(),
            });
        }
        Ok(self.lift(x, v).into_owned())
    }

    pub fn compare(&self, x: &ChainElement, y: &ChainElement) -> Ordering {
        let w = x.layer.max(y.layer);
        match cmp_elems(&self.lift(x, w), &self.lift(y, w)) {
            Ordering::Equal => {}
            other => return other,
        }
        if x == y {
            return Ordering::Equal;
        }
        let x_class = self.bunch.class(x.layer);
        let less = (x.layer < y.layer && !y.dotted)
            || (x.layer == y.layer && x_class == LayerClass::I && x.dotted && !y.dotted)
            || (x.layer > y.layer && x_class == LayerClass::I && x.dotted);
        if less {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn le(&self, x: &ChainElement, y: &ChainElement) -> bool {
        self.compare(x, y) != Ordering::Greater
    }

    pub fn lt(&self, x: &ChainElement, y: &ChainElement) -> bool {
        self.compare(x, y) == Ordering::Less
    }

    pub fn mul(&self, x: &ChainElement, y: &ChainElement) -> ChainElement {
        let w = x.layer.max(y.layer);
        let p = op_elems(&self.lift(x, w), &self.lift(y, w));
        let layer = self.bunch.layer(w);
        let dotted = layer.class == LayerClass::I
            && if x.layer != y.layer {
                if x.layer > y.layer {
                    x.dotted
                } else {
                    y.dotted
                }
            } else {
                let undotted_member = |z: &ChainElement| !z.dotted && layer.in_subgroup(&z.g);
                layer.in_subgroup(&p) && !(undotted_member(x) && undotted_member(y))
            };
        ChainElement::new(w, p, dotted)
    }

    /// Residual complement `¬x = x → f`.
    pub fn try_negate(&self, x: &ChainElement) -> Result<ChainElement> {
        let layer = self.bunch.layer(x.layer);
        let inv = inv_elem(&x.g);
        Ok(match layer.class {
            LayerClass::I if !x.dotted && layer.in_subgroup(&x.g) => ChainElement::dotted(x.layer, inv),
            LayerClass::J if !x.dotted => {
                let below = layer.group.cover(&inv, -1).ok_or_else(|| Error::CoverMissing(layer.name.clone()))?;
                ChainElement::plain(x.layer, below)
            }
            _ => ChainElement::plain(x.layer, inv),
        })
    }

    pub fn negate(&self, x: &ChainElement) -> ChainElement {
        self.try_negate(x).expect("J layers of a valid bunch are discrete")
    }

    /// `x → y = ¬(x · ¬y)`.
    pub fn residuum(&self, x: &ChainElement, y: &ChainElement) -> ChainElement {
        self.negate(&self.mul(x, &self.negate(y)))
    }

    pub fn unit(&self) -> ChainElement {
        ChainElement::plain(0, self.bunch.group(0).unit())
    }

    pub fn falsum(&self) -> ChainElement {
        self.negate(&self.unit())
    }

    pub fn constants(&self) -> (ChainElement, ChainElement) {
        (self.unit(), self.falsum())
    }

    /// One element only: a single o layer over the trivial group.
    pub fn is_trivial(&self) -> bool {
        self.bunch.len() == 1 && self.bunch.class(0) == LayerClass::O && self.bunch.group(0).is_trivial()
    }

    pub fn is_finite(&self) -> bool {
        self.bunch.is_finite()
    }

    /// Top and bottom, when they exist: a nontrivial chain is bounded iff its
    /// greatest layer is an `I` layer over the trivial group.
    pub fn bounds(&self) -> Option<Bounds> {
        if self.is_trivial() {
            let t = self.unit();
            return Some(Bounds { top: t.clone(), bottom: t });
        }
        let top = self.bunch.len() - 1;
        let layer = self.bunch.layer(top);
        (layer.class == LayerClass::I && layer.group.is_trivial()).then(|| Bounds {
            top: ChainElement::plain(top, layer.group.unit()),
            bottom: ChainElement::dotted(top, layer.group.unit()),
        })
    }

    pub fn is_bounded(&self) -> bool {
        self.bounds().is_some()
    }

    /// Every element exactly once, dovetailing the layers.
    pub fn elements(&self) -> ChainElements<'_> {
        ChainElements::new(self)
    }

    /// All elements in ascending order; finite chains only.
    pub fn sorted_elements(&self) -> Result<Vec<ChainElement>> {
        if !self.is_finite() {
            return Err(Error::Infinite);
        }
        let mut xs: Vec<ChainElement> = self.elements().collect();
        xs.sort_by(|a, b| self.compare(a, b));
        Ok(xs)
    }

    /// Sort `xs` ascending and drop duplicates.
    pub fn sort_dedup(&self, xs: &mut Vec<ChainElement>) {
        xs.sort_by(|a, b| self.compare(a, b));
        xs.dedup();
    }

    /// The extensional table of a finite chain, with its carrier.
    pub fn cayley_table(&self) -> Result<(CayleyTable, Vec<ChainElement>)> {
        let xs = self.sorted_elements()?;
        let index = |z: &ChainElement| xs.iter().position(|x| x == z).expect("product stays in the carrier");
        let product = xs.iter().map(|x| xs.iter().map(|y| index(&self.mul(x, y))).collect()).collect();
        let table = CayleyTable::new(product, index(&self.unit()), index(&self.falsum()))?;
        Ok((table, xs))
    }
}
