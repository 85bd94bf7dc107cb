use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::{rat_one, GElem, OGroup};

/// Stream of all elements of a group.
///
/// Orders: integers go `0, 1, -1, 2, -2, …`; rationals go `0` and then the
/// Calkin–Wilf sequence with each positive term followed by its negation;
/// lexicographic products dovetail the factor streams along diagonals,
/// taking the left index from high to low within a diagonal.
pub struct Elements {
    state: State,
}

enum State {
    Once(Option<GElem>),
    Int(u64),
    Rat { next: Option<BigRational>, pending_neg: Option<BigRational> },
    Lex(Box<LexState>),
}

struct LexState {
    left: Cache,
    right: Cache,
    diagonal: usize,
    // next left index to try on the current diagonal; `None` moves to the next diagonal
    left_index: Option<usize>,
}

struct Cache {
    source: Elements,
    items: Vec<GElem>,
    exhausted: bool,
}

impl Cache {
    fn get(&mut self, k: usize) -> Option<GElem> {
        while self.items.len() <= k && !self.exhausted {
            match self.source.next() {
                Some(x) => self.items.push(x),
                None => self.exhausted = true,
            }
        }
        self.items.get(k).cloned()
    }
}

impl Elements {
    pub(super) fn new(group: &OGroup) -> Self {
        let state = if group.is_trivial() {
            State::Once(Some(group.unit()))
        } else {
            match group {
                OGroup::Int => State::Int(0),
                OGroup::Rat => State::Rat { next: None, pending_neg: None },
                OGroup::Lex(a, b) => State::Lex(Box::new(LexState {
                    left: Cache { source: Elements::new(a), items: Vec::new(), exhausted: false },
                    right: Cache { source: Elements::new(b), items: Vec::new(), exhausted: false },
                    diagonal: 0,
                    left_index: Some(0),
                })),
                OGroup::Trivial => unreachable!(),
            }
        };
        Elements { state }
    }
}

fn calkin_wilf_next(q: &BigRational) -> BigRational {
    // 1 / (2⌊q⌋ − q + 1)
    let floor = q.numer().div_floor(q.denom());
    let two_floor = BigRational::from_integer(floor * BigInt::from(2));
    rat_one() / (two_floor - q + rat_one())
}

impl Iterator for Elements {
    type Item = GElem;

    fn next(&mut self) -> Option<GElem> {
        match &mut self.state {
            State::Once(x) => x.take(),
            State::Int(k) => {
                let i = *k;
                *k += 1;
                let v = if i == 0 {
                    BigInt::zero()
                } else if i % 2 == 1 {
                    BigInt::from(i.div_ceil(2))
                } else {
                    -BigInt::from(i / 2)
                };
                Some(GElem::Int(v))
            }
            State::Rat { next, pending_neg } => {
                if let Some(q) = pending_neg.take() {
                    return Some(GElem::Rat(-q));
                }
                match next {
                    None => {
                        *next = Some(rat_one());
                        Some(GElem::Rat(BigRational::zero()))
                    }
                    Some(q) => {
                        let out = q.clone();
                        *q = calkin_wilf_next(q);
                        *pending_neg = Some(out.clone());
                        Some(GElem::Rat(out))
                    }
                }
            }
            State::Lex(s) => loop {
                match s.left_index {
                    None => {
                        s.diagonal += 1;
                        s.left_index = Some(s.diagonal);
                    }
                    Some(i) => {
                        s.left_index = i.checked_sub(1);
                        let j = s.diagonal - i;
                        let Some(a) = s.left.get(i) else { continue };
                        let Some(b) = s.right.get(j) else { continue };
                        return Some(GElem::pair(a, b));
                    }
                }
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    #[test]
    fn declared_prefixes() {
        assert_eq!(OGroup::Trivial.enumerate().collect::<Vec<_>>(), vec![GElem::Unit]);
        let ints: Vec<_> = OGroup::Int.enumerate().take(5).collect();
        assert_eq!(ints, [0, 1, -1, 2, -2].map(GElem::int));
        let rats: Vec<_> = OGroup::Rat.enumerate().take(9).collect();
        let expected = [(0, 1), (1, 1), (-1, 1), (1, 2), (-1, 2), (2, 1), (-2, 1), (1, 3), (-1, 3)];
        assert_eq!(rats, expected.map(|(n, d)| GElem::rat(n, d)));
        let lex = OGroup::lex(OGroup::Int, OGroup::Int);
        let first: Vec<_> = lex.enumerate().take(3).collect();
        assert_eq!(
            first,
            vec![
                GElem::pair(GElem::int(0), GElem::int(0)),
                GElem::pair(GElem::int(1), GElem::int(0)),
                GElem::pair(GElem::int(0), GElem::int(1)),
            ]
        );
    }

    #[test]
    fn lex_with_trivial_factor() {
        let g = OGroup::lex(OGroup::Trivial, OGroup::Int);
        let first: Vec<_> = g.enumerate().take(3).collect();
        assert_eq!(first[2], GElem::pair(GElem::Unit, GElem::int(-1)));
        let g = OGroup::lex(OGroup::Trivial, OGroup::Trivial);
        assert_eq!(g.enumerate().count(), 1);
    }

    #[test]
    fn no_repeats_and_typed() {
        for g in [
            OGroup::Int,
            OGroup::Rat,
            OGroup::lex(OGroup::Int, OGroup::Rat),
            OGroup::lex(OGroup::lex(OGroup::Int, OGroup::Int), OGroup::Int),
        ] {
            let xs: Vec<_> = g.enumerate().take(500).collect();
            assert!(xs.iter().all(|x| g.contains(x)));
            let set: HashSet<_> = xs.iter().collect();
            assert_eq!(set.len(), xs.len(), "repeat in enumeration of {g}");
        }
    }

    #[test]
    fn calkin_wilf_reaches_small_fractions() {
        let xs: HashSet<_> = OGroup::Rat.enumerate().take(2000).collect();
        for n in -5..=5 {
            for d in 1..=5 {
                assert!(xs.contains(&GElem::rat(n, d)), "{n}/{d} missing");
            }
        }
    }
}
