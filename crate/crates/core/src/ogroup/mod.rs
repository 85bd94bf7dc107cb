//! Decidable abelian o-groups.
//!
//! Groups come from a closed family: the trivial group, the integers, the
//! rationals, and binary lexicographic products. Keeping the family closed
//! keeps equality, membership and covers decidable, which the chain order
//! built on top of it relies on.

mod enumerate;
mod hom;
mod subgroup;
mod text;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};

pub use enumerate::Elements;
pub use hom::{Hom, HomCheckReport, HomExpr, HomKind};
pub use subgroup::{Subgroup, SubgroupKind};

/// A totally ordered abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OGroup {
    Trivial,
    Int,
    Rat,
    /// Lexicographic product; the left factor is the more significant one.
    Lex(Box<OGroup>, Box<OGroup>),
}

/// An element of some [`OGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GElem {
    Unit,
    Int(BigInt),
    Rat(BigRational),
    Pair(Box<GElem>, Box<GElem>),
}

impl GElem {
    pub fn int(n: i64) -> Self {
        GElem::Int(BigInt::from(n))
    }

    pub fn rat(num: i64, den: i64) -> Self {
        GElem::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn pair(a: GElem, b: GElem) -> Self {
        GElem::Pair(Box::new(a), Box::new(b))
    }
}

impl OGroup {
    pub fn lex(left: OGroup, right: OGroup) -> Self {
        OGroup::Lex(Box::new(left), Box::new(right))
    }

    pub fn unit(&self) -> GElem {
        match self {
            OGroup::Trivial => GElem::Unit,
            OGroup::Int => GElem::Int(BigInt::zero()),
            OGroup::Rat => GElem::Rat(BigRational::zero()),
            OGroup::Lex(a, b) => GElem::pair(a.unit(), b.unit()),
        }
    }

    /// True iff the group has exactly one element.
    pub fn is_trivial(&self) -> bool {
        match self {
            OGroup::Trivial => true,
            OGroup::Int | OGroup::Rat => false,
            OGroup::Lex(a, b) => a.is_trivial() && b.is_trivial(),
        }
    }

    /// Every element has both an upper and a lower cover.
    pub fn is_discrete(&self) -> bool {
        match self {
            OGroup::Trivial | OGroup::Rat => false,
            OGroup::Int => true,
            OGroup::Lex(a, b) => {
                if b.is_trivial() {
                    a.is_discrete()
                } else {
                    b.is_discrete()
                }
            }
        }
    }

    pub fn contains(&self, x: &GElem) -> bool {
        match (self, x) {
            (OGroup::Trivial, GElem::Unit)
            | (OGroup::Int, GElem::Int(_))
            | (OGroup::Rat, GElem::Rat(_)) => true,
            (OGroup::Lex(a, b), GElem::Pair(x, y)) => a.contains(x) && b.contains(y),
            _ => false,
        }
    }

    pub(crate) fn check(&self, x: &GElem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::TypeMismatch(format!("`{x}` is not an element of {self}")))
        }
    }

    pub fn compare(&self, x: &GElem, y: &GElem) -> Result<Ordering> {
        self.check(x)?;
        self.check(y)?;
        Ok(cmp_elems(x, y))
    }

    pub fn op(&self, x: &GElem, y: &GElem) -> Result<GElem> {
        self.check(x)?;
        self.check(y)?;
        Ok(op_elems(x, y))
    }

    pub fn inverse(&self, x: &GElem) -> Result<GElem> {
        self.check(x)?;
        Ok(inv_elem(x))
    }

    pub fn cover_up(&self, x: &GElem) -> Result<Option<GElem>> {
        self.check(x)?;
        Ok(self.cover(x, 1))
    }

    pub fn cover_down(&self, x: &GElem) -> Result<Option<GElem>> {
        self.check(x)?;
        Ok(self.cover(x, -1))
    }

    /// Neighbor of a well-typed element in direction `dir` (±1).
    pub(crate) fn cover(&self, x: &GElem, dir: i64) -> Option<GElem> {
        match (self, x) {
            (OGroup::Int, GElem::Int(n)) => Some(GElem::Int(n + dir)),
            (OGroup::Lex(a, b), GElem::Pair(x, y)) => {
                if b.is_trivial() {
                    a.cover(x, dir).map(|c| GElem::Pair(Box::new(c), y.clone()))
                } else {
                    b.cover(y, dir).map(|c| GElem::Pair(x.clone(), Box::new(c)))
                }
            }
            _ => None,
        }
    }

    /// Deterministic enumeration of every element exactly once.
    pub fn enumerate(&self) -> Elements {
        Elements::new(self)
    }

    /// A random element with small coordinates, for law sampling.
    pub fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, spread: i64) -> GElem {
        match self {
            OGroup::Trivial => GElem::Unit,
            OGroup::Int => GElem::int(rng.gen_range(-spread..=spread)),
            OGroup::Rat => GElem::rat(rng.gen_range(-spread..=spread), rng.gen_range(1..=4)),
            OGroup::Lex(a, b) => GElem::pair(a.random_elem(rng, spread), b.random_elem(rng, spread)),
        }
    }
}

/// Order on well-typed elements of the same group.
pub(crate) fn cmp_elems(x: &GElem, y: &GElem) -> Ordering {
    match (x, y) {
        (GElem::Unit, GElem::Unit) => Ordering::Equal,
        (GElem::Int(a), GElem::Int(b)) => a.cmp(b),
        (GElem::Rat(a), GElem::Rat(b)) => a.cmp(b),
        (GElem::Pair(a1, b1), GElem::Pair(a2, b2)) => cmp_elems(a1, a2).then_with(|| cmp_elems(b1, b2)),
        _ => unreachable!("comparison of elements from different groups: {x} vs {y}"),
    }
}

pub(crate) fn op_elems(x: &GElem, y: &GElem) -> GElem {
    match (x, y) {
        (GElem::Unit, GElem::Unit) => GElem::Unit,
        (GElem::Int(a), GElem::Int(b)) => GElem::Int(a + b),
        (GElem::Rat(a), GElem::Rat(b)) => GElem::Rat(a + b),
        (GElem::Pair(a1, b1), GElem::Pair(a2, b2)) => GElem::pair(op_elems(a1, a2), op_elems(b1, b2)),
        _ => unreachable!("product of elements from different groups: {x} vs {y}"),
    }
}

pub(crate) fn inv_elem(x: &GElem) -> GElem {
    match x {
        GElem::Unit => GElem::Unit,
        GElem::Int(a) => GElem::Int(-a),
        GElem::Rat(a) => GElem::Rat(-a),
        GElem::Pair(a, b) => GElem::pair(inv_elem(a), inv_elem(b)),
    }
}

impl fmt::Display for GElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GElem::Unit => write!(f, "e"),
            GElem::Int(n) => write!(f, "{n}"),
            GElem::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            GElem::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

impl fmt::Display for OGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OGroup::Trivial => write!(f, "trivial"),
            OGroup::Int => write!(f, "int"),
            OGroup::Rat => write!(f, "rat"),
            OGroup::Lex(a, b) => write!(f, "lex({a},{b})"),
        }
    }
}

pub(crate) fn rat_one() -> BigRational {
    BigRational::one()
}
