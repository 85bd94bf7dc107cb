use num_integer::Integer;
use num_traits::One;

use super::{GElem, OGroup};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SubgroupKind {
    Whole,
    IntMultiples(u64),
    IntInRat,
    /// Elements `(unit, b)` of a lexicographic product.
    FirstZero,
}

/// A decidable subgroup of an ambient o-group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    kind: SubgroupKind,
    ambient: OGroup,
}

impl Subgroup {
    pub fn new(kind: SubgroupKind, ambient: &OGroup) -> Result<Subgroup> {
        let ok = match &kind {
            SubgroupKind::Whole => true,
            SubgroupKind::IntMultiples(k) => *k > 0 && *ambient == OGroup::Int,
            SubgroupKind::IntInRat => *ambient == OGroup::Rat,
            SubgroupKind::FirstZero => matches!(ambient, OGroup::Lex(..)),
        };
        if !ok {
            return Err(Error::TypeMismatch(format!("{kind:?} is not a subgroup of {ambient}")));
        }
        Ok(Subgroup { kind, ambient: ambient.clone() })
    }

    pub fn whole(ambient: &OGroup) -> Subgroup {
        Subgroup { kind: SubgroupKind::Whole, ambient: ambient.clone() }
    }

    pub fn kind(&self) -> &SubgroupKind {
        &self.kind
    }

    pub fn ambient(&self) -> &OGroup {
        &self.ambient
    }

    /// Membership is trivially total for `Whole`, and for any subgroup of a
    /// trivial group.
    pub fn is_whole(&self) -> bool {
        self.kind == SubgroupKind::Whole || self.ambient.is_trivial()
    }

    pub fn member(&self, x: &GElem) -> Result<bool> {
        self.ambient.check(x)?;
        Ok(self.contains(x))
    }

    pub(crate) fn contains(&self, x: &GElem) -> bool {
        match (&self.kind, x) {
            (SubgroupKind::Whole, _) => true,
            (SubgroupKind::IntMultiples(k), GElem::Int(n)) => n.is_multiple_of(&(*k).into()),
            (SubgroupKind::IntInRat, GElem::Rat(q)) => q.denom().is_one(),
            (SubgroupKind::FirstZero, GElem::Pair(a, _)) => match &self.ambient {
                OGroup::Lex(left, _) => **a == left.unit(),
                _ => unreachable!(),
            },
            _ => unreachable!("ill-typed membership query"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ogroup::{inv_elem, op_elems};

    #[test]
    fn membership_examples() {
        let evens = Subgroup::new(SubgroupKind::IntMultiples(2), &OGroup::Int).unwrap();
        assert!(evens.member(&GElem::int(4)).unwrap());
        assert!(!evens.member(&GElem::int(3)).unwrap());
        let lex = OGroup::lex(OGroup::Int, OGroup::Int);
        let fz = Subgroup::new(SubgroupKind::FirstZero, &lex).unwrap();
        assert!(fz.member(&GElem::pair(GElem::int(0), GElem::int(5))).unwrap());
        assert!(!fz.member(&GElem::pair(GElem::int(1), GElem::int(5))).unwrap());
        let z = Subgroup::new(SubgroupKind::IntInRat, &OGroup::Rat).unwrap();
        assert!(z.member(&GElem::rat(6, 3)).unwrap());
        assert!(!z.member(&GElem::rat(1, 3)).unwrap());
        assert!(evens.member(&GElem::rat(1, 1)).is_err());
    }

    #[test]
    fn ill_typed_subgroups_rejected() {
        assert!(Subgroup::new(SubgroupKind::IntMultiples(2), &OGroup::Rat).is_err());
        assert!(Subgroup::new(SubgroupKind::IntMultiples(0), &OGroup::Int).is_err());
        assert!(Subgroup::new(SubgroupKind::IntInRat, &OGroup::Int).is_err());
        assert!(Subgroup::new(SubgroupKind::FirstZero, &OGroup::Int).is_err());
    }

    #[test]
    fn closed_under_op_and_inverse() {
        let lex = OGroup::lex(OGroup::Int, OGroup::Rat);
        let cases = [
            Subgroup::new(SubgroupKind::IntMultiples(3), &OGroup::Int).unwrap(),
            Subgroup::new(SubgroupKind::IntInRat, &OGroup::Rat).unwrap(),
            Subgroup::new(SubgroupKind::FirstZero, &lex).unwrap(),
            Subgroup::whole(&lex),
        ];
        for s in cases {
            let g = s.ambient().clone();
            assert!(s.contains(&g.unit()));
            let members: Vec<_> = g.enumerate().take(400).filter(|x| s.contains(x)).take(30).collect();
            assert!(members.len() > 3);
            for x in &members {
                assert!(s.contains(&inv_elem(x)));
                for y in &members {
                    assert!(s.contains(&op_elems(x, y)));
                }
            }
        }
    }
}
