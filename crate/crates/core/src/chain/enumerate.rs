use super::{Chain, ChainElement};
use crate::bunch::LayerClass;
use crate::ogroup::Elements;

/// Round-robin over the layers, one group element per live layer per round;
/// a dotted copy follows its undotted original directly.
pub struct ChainElements<'a> {
    chain: &'a Chain,
    layers: Vec<Option<Elements>>,
    cursor: usize,
    pending: Option<ChainElement>,
}

impl<'a> ChainElements<'a> {
    pub(super) fn new(chain: &'a Chain) -> Self {
        let layers = chain.bunch.layers().iter().map(|l| Some(l.group.enumerate())).collect();
        ChainElements { chain, layers, cursor: 0, pending: None }
    }
}

impl Iterator for ChainElements<'_> {
    type Item = ChainElement;

    fn next(&mut self) -> Option<ChainElement> {
        if let Some(x) = self.pending.take() {
            return Some(x);
        }
        let n = self.layers.len();
        for _ in 0..n {
            let u = self.cursor;
            self.cursor = (self.cursor + 1) % n;
            let Some(it) = self.layers[u].as_mut() else { continue };
            match it.next() {
                Some(g) => {
                    let layer = self.chain.bunch.layer(u);
                    if layer.class == LayerClass::I && layer.in_subgroup(&g) {
                        self.pending = Some(ChainElement::dotted(u, g.clone()));
                    }
                    return Some(ChainElement::plain(u, g));
                }
                None => self.layers[u] = None,
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::fixtures;
    use crate::ogroup::GElem;

    #[test]
    fn zb_prefix() {
        let c = Chain::new(fixtures::zb()).unwrap();
        let got: Vec<ChainElement> = c.elements().take(5).collect();
        assert_eq!(
            got,
            vec![
                ChainElement::plain(0, GElem::int(0)),
                ChainElement::plain(1, GElem::Unit),
                ChainElement::dotted(1, GElem::Unit),
                ChainElement::plain(0, GElem::int(1)),
                ChainElement::plain(0, GElem::int(-1)),
            ]
        );
    }

    #[test]
    fn finite_chains_are_exhausted() {
        for size in 1..=6 {
            for b in fixtures::finite_bunches(size) {
                let c = Chain::new(b).unwrap();
                let xs: Vec<ChainElement> = c.elements().collect();
                assert_eq!(xs.len(), size);
                assert_eq!(xs.iter().collect::<HashSet<_>>().len(), size);
            }
        }
    }

    #[test]
    fn lz2_dots_only_the_subgroup() {
        let c = Chain::new(fixtures::lz2()).unwrap();
        for x in c.elements().take(300) {
            c.check_element(&x).unwrap();
        }
        let xs: HashSet<ChainElement> = c.elements().take(300).collect();
        assert_eq!(xs.len(), 300);
        assert!(xs.contains(&ChainElement::dotted(1, GElem::int(-2))));
    }
}
