//! From finite tables back to bunches, and identity checks on symbolic chains.
//!
//! On a finite chain the skeleton is the set of values `x → x`, the layer of
//! `x` is `x → x`, and each layer group is trivial; the only work is deciding
//! the partition and which elements are dotted.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bunch::{Bunch, Layer, LayerClass};
use crate::chain::laws::random_element;
use crate::chain::{Chain, ChainElement};
use crate::error::{Error, Result};
use crate::ogroup::{GElem, Hom, OGroup};
use crate::oracle::{check_flea_axioms, Axiom};
use crate::table::CayleyTable;

pub use crate::oracle::brute_residuum;

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub bunch: Bunch,
    /// The chain element standing for each table index.
    pub assignment: Vec<ChainElement>,
}

/// Operations of a table that has passed the axiom check.
struct Ops<'a> {
    tbl: &'a CayleyTable,
}

impl Ops<'_> {
    fn mul(&self, x: usize, y: usize) -> usize {
        self.tbl.mul(x, y)
    }

    fn res(&self, x: usize, z: usize) -> usize {
        brute_residuum(self.tbl, x, z).expect("checked tables are residuated")
    }

    fn neg(&self, x: usize) -> usize {
        self.res(x, self.tbl.falsum())
    }

    fn idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }
}

fn axiom_error(tbl: &CayleyTable) -> Option<Error> {
    let report = check_flea_axioms(tbl);
    if let Some(v) = report.first(Axiom::OddOrEven) {
        return Some(Error::NotOddOrEven { unit: v.witness[0], falsum: v.witness[1] });
    }
    if let Some(v) = report.violations.iter().find(|v| v.axiom != Axiom::Involution) {
        return Some(Error::AxiomFailure(format!("{:?} fails at {:?}", v.axiom, v.witness)));
    }
    report.first(Axiom::Involution).map(|v| Error::NotInvolutive(v.witness[0]))
}

/// Recover the bunch of a finite odd or even involutive FL_e-chain.
///
/// Layers are named `t`, `u1`, `u2`, … from the bottom of the skeleton.
pub fn decompose_table(tbl: &CayleyTable) -> Result<Decomposition> {
    if let Some(e) = axiom_error(tbl) {
        return Err(e);
    }
    let ops = Ops { tbl };
    let n = tbl.len();
    let (unit, falsum) = (tbl.unit(), tbl.falsum());

    let mut skeleton: Vec<usize> = (0..n).map(|x| ops.res(x, x)).collect();
    skeleton.sort_unstable();
    skeleton.dedup();
    if skeleton[0] != unit {
        return Err(Error::AxiomFailure(format!("least x → x is {}, not the unit {unit}", skeleton[0])));
    }

    let mut layers = Vec::with_capacity(skeleton.len());
    let mut assignment = vec![None; n];
    for (k, &u) in skeleton.iter().enumerate() {
        let neg_u = ops.neg(u);
        let class = if k == 0 && falsum == unit {
            LayerClass::O
        } else if ops.idempotent(neg_u) {
            LayerClass::I
        } else {
            LayerClass::J
        };
        let level: Vec<usize> = (0..n).filter(|&x| ops.res(x, x) == u).collect();
        let dotted: Vec<usize> = if class == LayerClass::I {
            let invertible = level.iter().filter(|&&x| ops.mul(x, neg_u) < x);
            invertible.map(|&x| ops.mul(x, neg_u)).collect()
        } else {
            Vec::new()
        };
        let group: Vec<usize> = level.iter().copied().filter(|x| !dotted.contains(x)).collect();
        let &[g] = group.as_slice() else {
            return Err(Error::AxiomFailure(format!("layer {u} has a group of {} elements", group.len())));
        };
        check_group_law(&ops, u, class, g)?;
        for &x in &level {
            assignment[x] = Some(ChainElement::new(k, GElem::Unit, dotted.contains(&x)));
        }
        let name = if k == 0 { "t".to_string() } else { format!("u{k}") };
        layers.push(Layer::new(name, class, OGroup::Trivial));
    }
    for w in skeleton.windows(2) {
        // ς_{u→v}(x) = v·x must land on the single group element of v.
        let (u, v) = (w[0], w[1]);
        let g = |layer: usize| (0..n).find(|&x| ops.res(x, x) == layer && assignment[x].as_ref().is_some_and(|a| !a.dotted));
        let (gu, gv) = (g(u).expect("layer has a group element"), g(v).expect("layer has a group element"));
        if ops.mul(v, gu) != gv {
            return Err(Error::AxiomFailure(format!("{v}·{gu} = {} is not the group element {gv}", ops.mul(v, gu))));
        }
    }
    let steps = (1..layers.len()).map(|_| Hom::unit_map(&OGroup::Trivial, &OGroup::Trivial)).collect();
    let bunch = Bunch::new(layers, steps)?;
    let report = bunch.validate();
    if !report.is_ok() {
        return Err(Error::InvalidBunch(Box::new(report)));
    }
    let assignment = assignment.into_iter().map(|a| a.expect("every index lies in some layer")).collect();
    Ok(Decomposition { bunch, assignment })
}

/// The group operation and inverse on layer `u`, with `g` its only element:
/// `x ·_u y = (xy → u) → u` on `I` layers and `xy` otherwise, `x⁻¹ = x → u`.
fn check_group_law(ops: &Ops, u: usize, class: LayerClass, g: usize) -> Result<()> {
    let gg = ops.mul(g, g);
    let product = if class == LayerClass::I { ops.res(ops.res(gg, u), u) } else { gg };
    if product != g {
        return Err(Error::AxiomFailure(format!("group product on layer {u} gives {product}, expected {g}")));
    }
    let inverse = ops.res(g, u);
    if inverse != g {
        return Err(Error::AxiomFailure(format!("group inverse on layer {u} gives {inverse}, expected {g}")));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct RoundTrip {
    pub decomposition: Decomposition,
    /// `bijection[i]` is the reconstructed element matched with index `i`.
    pub bijection: Vec<ChainElement>,
    pub cells_checked: usize,
}

/// Decompose, rebuild the chain and compare it with the input cell by cell.
pub fn roundtrip_table(tbl: &CayleyTable) -> Result<RoundTrip> {
    let decomposition = decompose_table(tbl)?;
    let chain = Chain::new(decomposition.bunch.clone())?;
    let (rebuilt, elems) = chain.cayley_table()?;
    if rebuilt.len() != tbl.len() {
        return Err(Error::AxiomFailure(format!("reconstruction has {} elements, table has {}", rebuilt.len(), tbl.len())));
    }
    // Both sides are listed in ascending order, so the order-isomorphism is
    // index-for-index; it must agree with the assignment.
    for (i, a) in decomposition.assignment.iter().enumerate() {
        if elems[i] != *a {
            let found = elems.iter().position(|x| x == a).unwrap_or(usize::MAX);
            return Err(Error::RoundTripMismatch { row: i, col: i, expected: i, found });
        }
    }
    let n = tbl.len();
    for row in 0..n {
        for col in 0..n {
            if rebuilt.mul(row, col) != tbl.mul(row, col) {
                return Err(Error::RoundTripMismatch { row, col, expected: tbl.mul(row, col), found: rebuilt.mul(row, col) });
            }
        }
    }
    if (rebuilt.unit(), rebuilt.falsum()) != (tbl.unit(), tbl.falsum()) {
        return Err(Error::AxiomFailure("constants differ after reconstruction".into()));
    }
    Ok(RoundTrip { bijection: elems, decomposition, cells_checked: n * n })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `x → x` is the unit of `x`'s layer.
    LayerOfElement,
    /// On an `I` layer `x · ¬u < x` exactly for the undotted members of
    /// `H_u`; on other layers every `x` has `x · (x → u) = u`.
    Invertibility,
    /// Multiplying by the unit of a higher layer `v` transports `x` to `v`.
    Transport,
    /// A dotted `ȧ` sits in layer `u` with image `a`, and `¬u · a = ȧ`.
    DottedCopies,
}

#[derive(Clone, Debug, Default)]
pub struct RecoveryReport {
    pub checked: usize,
    pub exhaustive: bool,
    pub failures: Vec<(Identity, String)>,
}

impl RecoveryReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for RecoveryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let how = if self.exhaustive { "exhaustive" } else { "sampled" };
        write!(f, "{} elements ({how}), {} failures", self.checked, self.failures.len())?;
        for (id, w) in &self.failures {
            write!(f, "\n  {id:?}: {w}")?;
        }
        Ok(())
    }
}

/// Check, on elements of a symbolic chain, that the layer data can be read
/// back from the chain operations alone.
pub fn recover_bunch_samples(chain: &Chain, samples: usize, seed: u64) -> RecoveryReport {
    let mut report = RecoveryReport::default();
    let xs: Vec<ChainElement> = if chain.is_finite() && chain.elements().count() <= samples {
        report.exhaustive = true;
        chain.elements().collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).map(|_| random_element(chain, &mut rng, 6)).collect()
    };
    let b = chain.bunch();
    let layer_unit = |u: usize| ChainElement::plain(u, b.group(u).unit());
    for x in &xs {
        report.checked += 1;
        let show = |z: &ChainElement| chain.format_element(z);
        let u = x.layer;
        let e_u = layer_unit(u);
        let mut fail = |id: Identity, w: String| report.failures.push((id, w));

        let xx = chain.residuum(x, x);
        if xx != e_u {
            fail(Identity::LayerOfElement, format!("{} → {} = {}", show(x), show(x), show(&xx)));
        }

        let layer = b.layer(u);
        let (holds, expected) = match layer.class {
            LayerClass::I => {
                let shrinks = chain.lt(&chain.mul(x, &chain.negate(&e_u)), x);
                (shrinks, !x.dotted && layer.in_subgroup(&x.g))
            }
            _ => (chain.mul(x, &chain.residuum(x, &e_u)) == e_u, true),
        };
        if holds != expected {
            fail(Identity::Invertibility, format!("{}: expected {expected}, found {holds}", show(x)));
        }

        for v in u..b.len() {
            let moved = chain.mul(&layer_unit(v), x);
            let want = ChainElement::plain(v, chain.image_in(v, x).expect("v is above u"));
            let want = if v == u { x.clone() } else { want };
            if moved != want {
                fail(Identity::Transport, format!("{} · {} = {}", show(&layer_unit(v)), show(x), show(&moved)));
            }
        }

        if x.dotted {
            let a = ChainElement::plain(u, x.g.clone());
            let neg_unit = chain.negate(&e_u);
            let ok = chain.image_in(u, x).ok() == Some(a.g.clone()) && chain.mul(&neg_unit, &a) == *x;
            if !ok {
                fail(Identity::DottedCopies, format!("{} is not ¬{} · {}", show(x), show(&e_u), show(&a)));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::enumerate_finite_chains_with_bound;

    fn s3_table() -> CayleyTable {
        CayleyTable::new(vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]], 1, 1).unwrap()
    }

    #[test]
    fn s3_decomposes_to_s3() {
        let d = decompose_table(&s3_table()).unwrap();
        let expected = Bunch::new(
            vec![Layer::new("t", LayerClass::O, OGroup::Trivial), Layer::new("u1", LayerClass::I, OGroup::Trivial)],
            vec![Hom::unit_map(&OGroup::Trivial, &OGroup::Trivial)],
        )
        .unwrap();
        assert_eq!(d.bunch, expected);
        assert_eq!(
            d.assignment,
            vec![ChainElement::dotted(1, GElem::Unit), ChainElement::plain(0, GElem::Unit), ChainElement::plain(1, GElem::Unit)]
        );
    }

    #[test]
    fn two_and_one_element_chains() {
        let two = CayleyTable::new(vec![vec![0, 0], vec![0, 1]], 1, 0).unwrap();
        let d = decompose_table(&two).unwrap();
        assert_eq!(d.bunch.len(), 1);
        assert_eq!(d.bunch.class(0), LayerClass::I);
        let rt = roundtrip_table(&two).unwrap();
        assert_eq!(rt.bijection, vec![ChainElement::dotted(0, GElem::Unit), ChainElement::plain(0, GElem::Unit)]);

        let one = CayleyTable::new(vec![vec![0]], 0, 0).unwrap();
        let d = decompose_table(&one).unwrap();
        assert_eq!(d.bunch, fixtures::trivial());
    }

    #[test]
    fn five_element_odd_chain_has_two_i_layers() {
        let five = enumerate_finite_chains_with_bound(5, 5).unwrap().pop().unwrap();
        let rt = roundtrip_table(&five).unwrap();
        let b = &rt.decomposition.bunch;
        assert_eq!(b.len(), 3);
        assert_eq!((b.class(1), b.class(2)), (LayerClass::I, LayerClass::I));
        assert_eq!(rt.cells_checked, 25);
    }

    #[test]
    fn finite_bunch_tables_round_trip() {
        for size in 1..=9 {
            for b in fixtures::finite_bunches(size) {
                let (tbl, _) = Chain::new(b.clone()).unwrap().cayley_table().unwrap();
                let rt = roundtrip_table(&tbl).unwrap_or_else(|e| panic!("{}: {e}", b.serialize()));
                assert_eq!(rt.decomposition.bunch.len(), b.len());
            }
        }
    }

    #[test]
    fn rejects_bad_tables() {
        let not_odd_or_even = CayleyTable::new(vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]], 1, 2).unwrap();
        assert!(matches!(decompose_table(&not_odd_or_even), Err(Error::NotOddOrEven { .. })));
        let broken = CayleyTable::new(vec![vec![0, 0, 2], vec![0, 1, 2], vec![2, 2, 2]], 1, 1).unwrap();
        assert!(matches!(decompose_table(&broken), Err(Error::AxiomFailure(_))));
        // A residuated chain whose complement is not an involution: the
        // three-element Gödel chain with f = 0 and unit on top.
        let goedel = CayleyTable::new(vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]], 2, 1).unwrap();
        assert!(matches!(decompose_table(&goedel), Err(Error::NotInvolutive(_))));
    }

    #[test]
    fn recovery_on_fixtures() {
        let s3 = Chain::new(fixtures::s3()).unwrap();
        let r = recover_bunch_samples(&s3, 1000, 0);
        assert!(r.exhaustive && r.is_ok(), "{r}");
        for b in [fixtures::zb(), fixtures::lz2(), fixtures::lz(), fixtures::ze()] {
            let r = recover_bunch_samples(&Chain::new(b).unwrap(), 1000, 0);
            assert!(r.is_ok(), "{r}");
            assert_eq!(r.checked, 1000);
        }
    }
}
