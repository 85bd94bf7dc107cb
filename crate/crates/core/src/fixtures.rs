//! Named example bunches and generators used by tests, the CLI and the
//! acceptance suite.
//!
//! | name | skeleton | notes |
//! |------|----------|-------|
//! | `S3`  | t ∈ o, u ∈ I, trivial groups | the 3-element odd Sugihara chain |
//! | `ZB`  | t ∈ o (ℤ), u ∈ I (trivial) | ℤ with a new top and bottom |
//! | `ZE`  | t ∈ J (ℤ) | ℤ as an even chain with f = −1 |
//! | `LZ`  | t ∈ o (ℤ), u ∈ I (ℤ, H = ℤ), identity step | |
//! | `LZ2` | as `LZ` with H = 2ℤ and step ×2 | proper layer subgroup |

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bunch::{Bunch, Layer, LayerClass};
use crate::ogroup::{Hom, HomExpr, OGroup, Subgroup, SubgroupKind};

pub fn s3() -> Bunch {
    Bunch::new(
        vec![Layer::new("t", LayerClass::O, OGroup::Trivial), Layer::new("u", LayerClass::I, OGroup::Trivial)],
        vec![Hom::unit_map(&OGroup::Trivial, &OGroup::Trivial)],
    )
    .expect("S3 is well formed")
}

pub fn zb() -> Bunch {
    Bunch::new(
        vec![Layer::new("t", LayerClass::O, OGroup::Int), Layer::new("u", LayerClass::I, OGroup::Trivial)],
        vec![Hom::unit_map(&OGroup::Int, &OGroup::Trivial)],
    )
    .expect("ZB is well formed")
}

pub fn ze() -> Bunch {
    Bunch::new(vec![Layer::new("t", LayerClass::J, OGroup::Int)], vec![]).expect("ZE is well formed")
}

pub fn lz() -> Bunch {
    Bunch::new(
        vec![Layer::new("t", LayerClass::O, OGroup::Int), Layer::new("u", LayerClass::I, OGroup::Int)],
        vec![Hom::identity(&OGroup::Int)],
    )
    .expect("LZ is well formed")
}

pub fn lz2() -> Bunch {
    let evens = Subgroup::new(SubgroupKind::IntMultiples(2), &OGroup::Int).expect("2ℤ ≤ ℤ");
    Bunch::new(
        vec![
            Layer::new("t", LayerClass::O, OGroup::Int),
            Layer::new("u", LayerClass::I, OGroup::Int).with_subgroup(evens),
        ],
        vec![Hom::new(&HomExpr::ScaleInt(2), &OGroup::Int, &OGroup::Int).expect("×2 on ℤ")],
    )
    .expect("LZ2 is well formed")
}

/// The one-element odd chain.
pub fn trivial() -> Bunch {
    Bunch::new(vec![Layer::new("t", LayerClass::O, OGroup::Trivial)], vec![]).expect("trivial bunch")
}

pub fn named() -> Vec<(&'static str, Bunch)> {
    vec![("S3", s3()), ("ZB", zb()), ("ZE", ze()), ("LZ", lz()), ("LZ2", lz2())]
}

pub fn by_name(name: &str) -> Option<Bunch> {
    named().into_iter().find(|(n, _)| n.eq_ignore_ascii_case(name)).map(|(_, b)| b)
}

/// Every valid bunch with trivial layer groups whose chain has exactly
/// `size` elements. All class assignments over skeletons of up to `size`
/// layers are tried and the invalid ones dropped; an o layer contributes one
/// element and an I layer two.
pub fn finite_bunches(size: usize) -> Vec<Bunch> {
    const CLASSES: [LayerClass; 3] = [LayerClass::O, LayerClass::J, LayerClass::I];
    let mut out = Vec::new();
    for k in 1..=size {
        for code in 0..3usize.pow(k as u32) {
            let classes: Vec<LayerClass> = (0..k).map(|i| CLASSES[code / 3usize.pow(i as u32) % 3]).collect();
            let elements: usize = classes.iter().map(|c| if *c == LayerClass::I { 2 } else { 1 }).sum();
            if elements != size {
                continue;
            }
            let layers = classes
                .iter()
                .enumerate()
                .map(|(i, c)| Layer::new(if i == 0 { "t".to_string() } else { format!("u{i}") }, *c, OGroup::Trivial))
                .collect();
            let steps = (1..k).map(|_| Hom::unit_map(&OGroup::Trivial, &OGroup::Trivial)).collect();
            let b = Bunch::new(layers, steps).expect("finite bunch is well formed");
            if b.validate().is_ok() {
                out.push(b);
            }
        }
    }
    out
}

fn random_group<R: Rng + ?Sized>(rng: &mut R, discrete: bool) -> OGroup {
    if discrete {
        [OGroup::Int, OGroup::lex(OGroup::Int, OGroup::Int), OGroup::lex(OGroup::Rat, OGroup::Int)]
            .choose(rng)
            .unwrap()
            .clone()
    } else {
        [
            OGroup::Trivial,
            OGroup::Int,
            OGroup::Rat,
            OGroup::lex(OGroup::Int, OGroup::Int),
            OGroup::lex(OGroup::Int, OGroup::Rat),
        ]
        .choose(rng)
        .unwrap()
        .clone()
    }
}

fn random_subgroup<R: Rng + ?Sized>(rng: &mut R, g: &OGroup) -> Subgroup {
    let proper = match g {
        OGroup::Int => Some(SubgroupKind::IntMultiples(rng.gen_range(2..=3))),
        OGroup::Rat => Some(SubgroupKind::IntInRat),
        OGroup::Lex(..) => Some(SubgroupKind::FirstZero),
        OGroup::Trivial => None,
    };
    match proper {
        Some(kind) if rng.gen_bool(0.5) => Subgroup::new(kind, g).expect("kind chosen for its group"),
        _ => Subgroup::whole(g),
    }
}

/// Typed candidate transitions from `src` to `dst`, unit map last.
fn candidate_steps(src: &OGroup, dst: &OGroup) -> Vec<Hom> {
    use HomExpr::*;
    let exprs = vec![
        Identity,
        ScaleInt(1),
        ScaleInt(2),
        ScaleInt(3),
        IntToRat,
        HomExpr::compose(IntToRat, ScaleInt(2)),
        InjectFirst,
        HomExpr::compose(InjectFirst, ScaleInt(2)),
        HomExpr::compose(InjectFirst, IntToRat),
        ProjectFirst,
        HomExpr::compose(ScaleInt(2), ProjectFirst),
        HomExpr::compose(IntToRat, ProjectFirst),
        HomExpr::compose(InjectFirst, ProjectFirst),
    ];
    let mut out: Vec<Hom> = exprs.iter().filter_map(|e| Hom::new(e, src, dst).ok()).collect();
    out.push(Hom::unit_map(src, dst));
    out
}

/// A random bunch that passes [`Bunch::validate`]; 1–4 layers over small
/// lexicographic products of ℤ and ℚ.
pub fn random_bunch<R: Rng + ?Sized>(rng: &mut R) -> Bunch {
    loop {
        let k = rng.gen_range(1..=4);
        let mut layers = Vec::with_capacity(k);
        for i in 0..k {
            let class = match (i, rng.gen_range(0..3)) {
                (0, 0) => LayerClass::O,
                (_, 1) => LayerClass::J,
                _ => LayerClass::I,
            };
            let group = random_group(rng, class == LayerClass::J);
            let mut layer = Layer::new(if i == 0 { "t".to_string() } else { format!("u{i}") }, class, group);
            if class == LayerClass::I {
                layer.subgroup = Some(random_subgroup(rng, &layer.group));
            }
            layers.push(layer);
        }
        let steps: Vec<Hom> = layers
            .windows(2)
            .map(|pair| {
                let mut cands = candidate_steps(&pair[0].group, &pair[1].group);
                if pair[0].class == LayerClass::J || rng.gen_bool(0.25) {
                    cands.pop().unwrap()
                } else {
                    cands.pop();
                    cands.choose(rng).cloned().unwrap_or_else(|| Hom::unit_map(&pair[0].group, &pair[1].group))
                }
            })
            .collect();
        let Ok(b) = Bunch::new(layers, steps) else { continue };
        if b.validate().is_ok() {
            return b;
        }
    }
}
