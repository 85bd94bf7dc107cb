use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{cmp_elems, inv_elem, op_elems, GElem, OGroup};
use crate::error::{Error, Result};

/// Untyped homomorphism expression, as written in bunch and embedding files.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HomExpr {
    UnitMap,
    Identity,
    ScaleInt(u64),
    IntToRat,
    InjectFirst,
    ProjectFirst,
    Compose(Box<HomExpr>, Box<HomExpr>),
}

impl HomExpr {
    pub fn compose(outer: HomExpr, inner: HomExpr) -> Self {
        HomExpr::Compose(Box::new(outer), Box::new(inner))
    }

    fn infer_target(&self, source: &OGroup) -> Option<OGroup> {
        match self {
            HomExpr::UnitMap | HomExpr::InjectFirst => None,
            HomExpr::Identity => Some(source.clone()),
            HomExpr::ScaleInt(_) => Some(OGroup::Int),
            HomExpr::IntToRat => Some(OGroup::Rat),
            HomExpr::ProjectFirst => match source {
                OGroup::Lex(a, _) => Some((**a).clone()),
                _ => None,
            },
            HomExpr::Compose(outer, inner) => {
                let mid = inner.infer_target(source)?;
                outer.infer_target(&mid)
            }
        }
    }

    fn infer_source(&self, target: &OGroup) -> Option<OGroup> {
        match self {
            HomExpr::UnitMap | HomExpr::ProjectFirst => None,
            HomExpr::Identity => Some(target.clone()),
            HomExpr::ScaleInt(_) | HomExpr::IntToRat => Some(OGroup::Int),
            HomExpr::InjectFirst => match target {
                OGroup::Lex(a, _) => Some((**a).clone()),
                _ => None,
            },
            HomExpr::Compose(outer, inner) => {
                let mid = outer.infer_source(target)?;
                inner.infer_source(&mid)
            }
        }
    }
}

/// A homomorphism expression resolved against its source and target groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hom {
    kind: HomKind,
    source: OGroup,
    target: OGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HomKind {
    UnitMap,
    Identity,
    ScaleInt(u64),
    IntToRat,
    InjectFirst,
    ProjectFirst,
    Compose(Box<Hom>, Box<Hom>),
}

fn mismatch(expr: &HomExpr, source: &OGroup, target: &OGroup) -> Error {
    Error::TypeMismatch(format!("`{expr}` is not a homomorphism {source} -> {target}"))
}

impl Hom {
    /// Type-check `expr` as a map `source -> target`.
    pub fn new(expr: &HomExpr, source: &OGroup, target: &OGroup) -> Result<Hom> {
        let kind = match expr {
            HomExpr::UnitMap => HomKind::UnitMap,
            HomExpr::Identity if source == target => HomKind::Identity,
            HomExpr::ScaleInt(k) if *k > 0 && *source == OGroup::Int && *target == OGroup::Int => {
                HomKind::ScaleInt(*k)
            }
            HomExpr::IntToRat if *source == OGroup::Int && *target == OGroup::Rat => HomKind::IntToRat,
            HomExpr::InjectFirst if matches!(target, OGroup::Lex(a, _) if **a == *source) => HomKind::InjectFirst,
            HomExpr::ProjectFirst if matches!(source, OGroup::Lex(a, _) if **a == *target) => HomKind::ProjectFirst,
            HomExpr::Compose(outer, inner) => {
                let mid = inner
                    .infer_target(source)
                    .or_else(|| outer.infer_source(target))
                    .ok_or_else(|| {
                        Error::TypeMismatch(format!("cannot infer the intermediate group of `{expr}`"))
                    })?;
                let inner = Hom::new(inner, source, &mid)?;
                let outer = Hom::new(outer, &mid, target)?;
                HomKind::Compose(Box::new(outer), Box::new(inner))
            }
            _ => return Err(mismatch(expr, source, target)),
        };
        Ok(Hom { kind, source: source.clone(), target: target.clone() })
    }

    pub fn identity(group: &OGroup) -> Hom {
        Hom { kind: HomKind::Identity, source: group.clone(), target: group.clone() }
    }

    pub fn unit_map(source: &OGroup, target: &OGroup) -> Hom {
        Hom { kind: HomKind::UnitMap, source: source.clone(), target: target.clone() }
    }

    /// `outer ∘ inner`; the inner target must be the outer source.
    pub fn compose(outer: &Hom, inner: &Hom) -> Result<Hom> {
        if inner.target != outer.source {
            return Err(Error::TypeMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                outer.source, outer.target, inner.source, inner.target
            )));
        }
        Ok(Hom {
            kind: HomKind::Compose(Box::new(outer.clone()), Box::new(inner.clone())),
            source: inner.source.clone(),
            target: outer.target.clone(),
        })
    }

    pub fn source(&self) -> &OGroup {
        &self.source
    }

    pub fn target(&self) -> &OGroup {
        &self.target
    }

    pub fn kind(&self) -> &HomKind {
        &self.kind
    }

    pub fn expr(&self) -> HomExpr {
        match &self.kind {
            HomKind::UnitMap => HomExpr::UnitMap,
            HomKind::Identity => HomExpr::Identity,
            HomKind::ScaleInt(k) => HomExpr::ScaleInt(*k),
            HomKind::IntToRat => HomExpr::IntToRat,
            HomKind::InjectFirst => HomExpr::InjectFirst,
            HomKind::ProjectFirst => HomExpr::ProjectFirst,
            HomKind::Compose(o, i) => HomExpr::compose(o.expr(), i.expr()),
        }
    }

    pub fn apply(&self, x: &GElem) -> Result<GElem> {
        self.source.check(x)?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &GElem) -> GElem {
        match (&self.kind, x) {
            (HomKind::UnitMap, _) => self.target.unit(),
            (HomKind::Identity, _) => x.clone(),
            (HomKind::ScaleInt(k), GElem::Int(n)) => GElem::Int(n * BigInt::from(*k)),
            (HomKind::IntToRat, GElem::Int(n)) => GElem::Rat(BigRational::from_integer(n.clone())),
            (HomKind::InjectFirst, _) => match &self.target {
                OGroup::Lex(_, b) => GElem::Pair(Box::new(x.clone()), Box::new(b.unit())),
                _ => unreachable!(),
            },
            (HomKind::ProjectFirst, GElem::Pair(a, _)) => (**a).clone(),
            (HomKind::Compose(outer, inner), _) => outer.apply_unchecked(&inner.apply_unchecked(x)),
            _ => unreachable!("ill-typed application of {self}"),
        }
    }

    /// Sends every element to the unit, by construction.
    pub fn is_constant_unit(&self) -> bool {
        self.source.is_trivial()
            || self.target.is_trivial()
            || match &self.kind {
                HomKind::UnitMap => true,
                HomKind::Compose(o, i) => o.is_constant_unit() || i.is_constant_unit(),
                _ => false,
            }
    }

    /// Injective by construction (a sufficient, not necessary, test).
    pub fn is_structurally_injective(&self) -> bool {
        self.source.is_trivial()
            || match &self.kind {
                HomKind::UnitMap => false,
                HomKind::Identity | HomKind::ScaleInt(_) | HomKind::IntToRat | HomKind::InjectFirst => true,
                HomKind::ProjectFirst => match &self.source {
                    OGroup::Lex(_, b) => b.is_trivial(),
                    _ => false,
                },
                HomKind::Compose(o, i) => {
                    matches!((&o.kind, &i.kind), (HomKind::ProjectFirst, HomKind::InjectFirst))
                        || (o.is_structurally_injective() && i.is_structurally_injective())
                }
            }
    }

    /// Checks op, unit, inverse and order preservation on enumerated pairs of
    /// the source.
    pub fn check(&self, samples: usize) -> HomCheckReport {
        let width = ((samples as f64).sqrt().ceil() as usize).max(1);
        let xs: Vec<GElem> = self.source.enumerate().take(width).collect();
        let images: Vec<GElem> = xs.iter().map(|x| self.apply_unchecked(x)).collect();
        let mut report = HomCheckReport {
            pairs_checked: 0,
            exhaustive: self.source.is_trivial(),
            violations: Vec::new(),
        };
        if self.apply_unchecked(&self.source.unit()) != self.target.unit() {
            report.violations.push(format!("unit not preserved by {self}"));
        }
        for (x, hx) in xs.iter().zip(&images) {
            if self.apply_unchecked(&inv_elem(x)) != inv_elem(hx) {
                report.violations.push(format!("inverse of {x} not preserved"));
            }
        }
        'outer: for (x, hx) in xs.iter().zip(&images) {
            for (y, hy) in xs.iter().zip(&images) {
                if report.pairs_checked >= samples {
                    break 'outer;
                }
                report.pairs_checked += 1;
                if self.apply_unchecked(&op_elems(x, y)) != op_elems(hx, hy) {
                    report.violations.push(format!("h({x}·{y}) ≠ h({x})·h({y})"));
                }
                let before = cmp_elems(x, y);
                let after = cmp_elems(hx, hy);
                let monotone = match before {
                    Ordering::Less => after != Ordering::Greater,
                    Ordering::Greater => after != Ordering::Less,
                    Ordering::Equal => after == Ordering::Equal,
                };
                if !monotone {
                    report.violations.push(format!("order of {x}, {y} not preserved"));
                }
            }
        }
        report
    }
}

#[derive(Clone, Debug)]
pub struct HomCheckReport {
    pub pairs_checked: usize,
    pub exhaustive: bool,
    pub violations: Vec<String>,
}

impl HomCheckReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for HomExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomExpr::UnitMap => write!(f, "unit"),
            HomExpr::Identity => write!(f, "id"),
            HomExpr::ScaleInt(k) => write!(f, "scale_int({k})"),
            HomExpr::IntToRat => write!(f, "int_to_rat"),
            HomExpr::InjectFirst => write!(f, "inject_first"),
            HomExpr::ProjectFirst => write!(f, "project_first"),
            HomExpr::Compose(o, i) => write!(f, "{o}∘{i}"),
        }
    }
}

impl fmt::Display for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.expr(), self.source, self.target)
    }
}
