//! Order-embedding an enumerated prefix of a bounded chain into the rationals
//! of `[0, 1]`, and finite lower approximations of the operation obtained by
//! taking suprema over the placed elements.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chain::{Chain, ChainElement};
use crate::error::{Error, Result};

/// Placed elements in increasing order, with strictly increasing rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPlacement {
    pairs: Vec<(ChainElement, BigRational)>,
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

impl RationalPlacement {
    pub fn pairs(&self) -> &[(ChainElement, BigRational)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    fn search(&self, chain: &Chain, x: &ChainElement) -> std::result::Result<usize, usize> {
        self.pairs.binary_search_by(|(p, _)| chain.compare(p, x))
    }

    pub fn get(&self, chain: &Chain, x: &ChainElement) -> Option<&BigRational> {
        self.search(chain, x).ok().map(|i| &self.pairs[i].1)
    }

    /// Place `x` at the midpoint of its placed neighbours; a no-op if placed.
    /// Needs both endpoints placed already.
    fn place(&mut self, chain: &Chain, x: ChainElement) -> &BigRational {
        let i = match self.search(chain, &x) {
            Ok(i) => i,
            Err(i) => {
                let q = (&self.pairs[i - 1].1 + &self.pairs[i].1) * half();
                self.pairs.insert(i, (x, q));
                i
            }
        };
        &self.pairs[i].1
    }

    /// Pairs `(x, y)` of placed elements, `x` before `y`, whose order
    /// disagrees with the order of their rationals.
    pub fn order_violations(&self, chain: &Chain) -> Vec<(ChainElement, ChainElement)> {
        let mut bad = Vec::new();
        for (i, (x, qx)) in self.pairs.iter().enumerate() {
            for (y, qy) in &self.pairs[i + 1..] {
                if chain.compare(x, y) != qx.cmp(qy) {
                    bad.push((x.clone(), y.clone()));
                }
            }
        }
        bad
    }

    /// Placed pairs on which complementation fails to reverse the order or to
    /// be an involution; complements need not be placed.
    pub fn negation_violations(&self, chain: &Chain) -> Vec<(ChainElement, ChainElement)> {
        let mut bad = Vec::new();
        for (i, (x, _)) in self.pairs.iter().enumerate() {
            let nx = chain.negate(x);
            if chain.negate(&nx) != *x {
                bad.push((x.clone(), x.clone()));
            }
            for (y, _) in &self.pairs[i + 1..] {
                if chain.compare(&nx, &chain.negate(y)) != Ordering::Greater {
                    bad.push((x.clone(), y.clone()));
                }
            }
        }
        bad
    }

    /// CSV with header `element,num,den`, in increasing order.
    pub fn to_csv(&self, chain: &Chain) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["element", "num", "den"]).expect("writing to memory");
        for (x, q) in &self.pairs {
            w.write_record([chain.format_element(x), q.numer().to_string(), q.denom().to_string()])
                .expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("writing to memory")).expect("CSV of UTF-8 fields")
    }

    pub fn parse_csv(text: &str, chain: &Chain) -> Result<RationalPlacement> {
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let mut pairs: Vec<(ChainElement, BigRational)> = Vec::new();
        for rec in reader.records() {
            let rec = rec.map_err(|e| Error::Parse {
                line: e.position().map(|p| p.line() as usize),
                field: None,
                message: e.to_string(),
            })?;
            let line = rec.position().map(|p| p.line() as usize);
            if rec.len() != 3 {
                return Err(Error::parse_msg(format!("expected 3 fields, found {}", rec.len())).at_line(line));
            }
            let x = chain.parse_element(&rec[0]).map_err(|e| e.at_line(line))?;
            let num = rec[1].parse().map_err(|_| Error::parse("num", format!("`{}` is not an integer", &rec[1])).at_line(line))?;
            let den: num_bigint::BigInt =
                rec[2].parse().map_err(|_| Error::parse("den", format!("`{}` is not an integer", &rec[2])).at_line(line))?;
            if den.is_zero() {
                return Err(Error::parse("den", "zero denominator").at_line(line));
            }
            pairs.push((x, BigRational::new(num, den)));
        }
        pairs.sort_by(|a, b| chain.compare(&a.0, &b.0));
        Ok(RationalPlacement { pairs })
    }
}

/// Place the bottom at 0, the top at 1, then each further enumerated element
/// at the midpoint of its placed neighbours, until `prefix` elements (counting
/// both endpoints) are placed or the chain runs out.
pub fn cantor_map(chain: &Chain, prefix: usize) -> Result<RationalPlacement> {
    if chain.is_trivial() {
        return Err(Error::TrivialChain);
    }
    let bounds = chain.bounds().ok_or(Error::Unbounded)?;
    let mut placement = RationalPlacement {
        pairs: vec![(bounds.bottom.clone(), BigRational::zero()), (bounds.top.clone(), BigRational::one())],
    };
    let rest = chain.elements().filter(|x| *x != bounds.top && *x != bounds.bottom);
    for x in rest.take(prefix.saturating_sub(2)) {
        placement.place(chain, x);
    }
    Ok(placement)
}

/// The operation `(a, b) ↦ sup{q(xy) : q(x) < a, q(y) < b}` over a base
/// placement, with up to `depth` products placed beyond it.
#[derive(Clone, Debug)]
pub struct SupExtension {
    placement: RationalPlacement,
    /// `(q(x), q(y), q(xy))` for base pairs whose product is placed.
    triples: Vec<(BigRational, BigRational, BigRational)>,
}

impl SupExtension {
    /// Products of base pairs `x ≤ y` (in placement order, row by row) that
    /// are not yet placed get placed in that order, the first `depth` of
    /// them; more depth only ever adds placements.
    pub fn new(chain: &Chain, base: &RationalPlacement, depth: usize) -> SupExtension {
        let mut placement = base.clone();
        let xs: Vec<ChainElement> = base.pairs.iter().map(|(x, _)| x.clone()).collect();
        let mut budget = depth;
        let mut triples = Vec::new();
        for (i, x) in xs.iter().enumerate() {
            for y in &xs[i..] {
                let p = chain.mul(x, y);
                let q = match placement.get(chain, &p) {
                    Some(q) => q.clone(),
                    None if budget > 0 => {
                        budget -= 1;
                        placement.place(chain, p).clone()
                    }
                    None => continue,
                };
                let (qx, qy) = (base.get(chain, x).expect("base element").clone(), base.get(chain, y).expect("base element").clone());
                triples.push((qx.clone(), qy.clone(), q.clone()));
                if qx != qy {
                    triples.push((qy, qx, q));
                }
            }
        }
        SupExtension { placement, triples }
    }

    /// The base placement plus the placed products.
    pub fn placement(&self) -> &RationalPlacement {
        &self.placement
    }

    /// 0 when no pair qualifies.
    pub fn eval(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.triples
            .iter()
            .filter(|(qx, qy, _)| qx < a && qy < b)
            .map(|(_, _, q)| q)
            .max()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }
}

pub fn sup_extend(chain: &Chain, placement: &RationalPlacement, a: &BigRational, b: &BigRational, depth: usize) -> BigRational {
    SupExtension::new(chain, placement, depth).eval(a, b)
}

/// The `n × n` grid `i/(n-1)` for `i = 0..n`.
pub fn rational_grid(n: usize) -> Vec<BigRational> {
    let d = n.saturating_sub(1).max(1);
    (0..n).map(|i| BigRational::new(i.into(), d.into())).collect()
}

/// Grid points where the extension is not monotone in `a`, in `b`, or (against
/// `deeper`) in the depth.
pub fn monotonicity_violations(ext: &SupExtension, deeper: &SupExtension, grid: &[BigRational]) -> usize {
    let vals: Vec<Vec<BigRational>> = grid.iter().map(|a| grid.iter().map(|b| ext.eval(a, b)).collect()).collect();
    let mut bad = 0;
    for i in 0..grid.len() {
        for j in 0..grid.len() {
            let v = &vals[i][j];
            if i + 1 < grid.len() && *v > vals[i + 1][j] {
                bad += 1;
            }
            if j + 1 < grid.len() && *v > vals[i][j + 1] {
                bad += 1;
            }
            if *v > deeper.eval(&grid[i], &grid[j]) {
                bad += 1;
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ogroup::GElem;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn chain(b: crate::bunch::Bunch) -> Chain {
        Chain::new(b).unwrap()
    }

    #[test]
    fn zb_replay() {
        let zb = chain(fixtures::zb());
        let p = cantor_map(&zb, 3).unwrap();
        assert_eq!(p.len(), 3);
        let at = |n| p.get(&zb, &ChainElement::plain(0, GElem::int(n))).cloned();
        assert_eq!(at(0), Some(q(1, 2)));
        let p4 = cantor_map(&zb, 4).unwrap();
        assert_eq!(p4.get(&zb, &ChainElement::plain(0, GElem::int(1))), Some(&q(3, 4)));
        let b = zb.bounds().unwrap();
        assert_eq!(p4.get(&zb, &b.bottom), Some(&q(0, 1)));
        assert_eq!(p4.get(&zb, &b.top), Some(&q(1, 1)));
    }

    #[test]
    fn s3_replay() {
        let s3 = chain(fixtures::s3());
        let p = cantor_map(&s3, 50).unwrap();
        let got: Vec<_> = p.pairs().iter().map(|(x, r)| (s3.format_element(x), r.clone())).collect();
        assert_eq!(got, vec![("u:d:e".into(), q(0, 1)), ("t:e".into(), q(1, 2)), ("u:e".into(), q(1, 1))]);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(cantor_map(&chain(fixtures::ze()), 5), Err(Error::Unbounded)));
        assert!(matches!(cantor_map(&chain(fixtures::lz()), 5), Err(Error::Unbounded)));
        assert!(matches!(cantor_map(&chain(fixtures::trivial()), 5), Err(Error::TrivialChain)));
    }

    #[test]
    fn zb_prefix_is_order_preserving() {
        let zb = chain(fixtures::zb());
        let p = cantor_map(&zb, 60).unwrap();
        assert_eq!(p.len(), 60);
        assert!(p.order_violations(&zb).is_empty());
        assert!(p.negation_violations(&zb).is_empty());
    }

    #[test]
    fn csv_round_trip() {
        let zb = chain(fixtures::zb());
        let p = cantor_map(&zb, 10).unwrap();
        let text = p.to_csv(&zb);
        assert!(text.starts_with("element,num,den\n"));
        assert_eq!(RationalPlacement::parse_csv(&text, &zb).unwrap(), p);
        assert!(RationalPlacement::parse_csv("element,num,den\nt:1,1,0\n", &zb).is_err());
    }

    #[test]
    fn sup_extension_on_zb() {
        let zb = chain(fixtures::zb());
        let p = cantor_map(&zb, 30).unwrap();
        let ext = SupExtension::new(&zb, &p, 0);
        assert_eq!(ext.eval(&q(0, 1), &q(1, 1)), q(0, 1));
        // Below the product of placed elements whenever that product is placed.
        for (x, qx) in p.pairs() {
            for (y, qy) in p.pairs() {
                if let Some(qxy) = p.get(&zb, &zb.mul(x, y)) {
                    assert!(ext.eval(qx, qy) <= *qxy);
                }
            }
        }
        let one = ChainElement::plain(0, GElem::int(1));
        let two = ChainElement::plain(0, GElem::int(2));
        let q1 = p.get(&zb, &one).unwrap().clone();
        let q2 = p.get(&zb, &two).unwrap().clone();
        assert!(ext.eval(&q1, &q1) < q2);
        // Just above q(1) the pair (1, 1) qualifies.
        let above = (&q1 + p.pairs().iter().map(|(_, r)| r).find(|r| **r > q1).unwrap()) * half();
        assert_eq!(ext.eval(&above, &above), q2);
    }

    #[test]
    fn sup_extension_is_monotone() {
        let zb = chain(fixtures::zb());
        let p = cantor_map(&zb, 20).unwrap();
        let grid = rational_grid(20);
        let exts: Vec<_> = [0, 5, 40, 400].iter().map(|&d| SupExtension::new(&zb, &p, d)).collect();
        for w in exts.windows(2) {
            assert_eq!(monotonicity_violations(&w[0], &w[1], &grid), 0);
            assert!(w[0].placement().len() <= w[1].placement().len());
        }
        assert!(exts[3].placement().order_violations(&zb).is_empty());
    }
}
