//! Randomized (or, for small finite chains, exhaustive) checks of the
//! involutive FL_e-chain laws on triples of elements.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Chain, ChainElement};
use crate::bunch::LayerClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    /// `compare` is a total order: antisymmetric and `Equal` only on equal elements.
    Totality,
    Transitivity,
    Commutativity,
    Associativity,
    Unit,
    /// `x ≤ y ⇒ xz ≤ yz`.
    Monotonicity,
    /// `xy ≤ z ⇔ y ≤ x → z`.
    Adjointness,
    /// `¬¬x = x`.
    Involution,
    /// Products and complements are well-formed elements.
    Closure,
    /// `f = t` on odd chains; `f` is the lower cover of `t` on even ones.
    Constants,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LawConfig {
    pub triples: usize,
    /// Passed to [`crate::ogroup::OGroup::random_elem`].
    pub spread: i64,
    pub seed: u64,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig { triples: 10_000, spread: 6, seed: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct LawFailure {
    pub law: Law,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct LawReport {
    pub triples: usize,
    pub exhaustive: bool,
    pub failed: usize,
    /// The first few failures.
    pub failures: Vec<LawFailure>,
}

const KEPT_FAILURES: usize = 20;
const CHUNKS: usize = 32;

impl LawReport {
    pub fn is_ok(&self) -> bool {
        self.failed == 0
    }

    fn merge(mut self, other: LawReport) -> LawReport {
        self.triples += other.triples;
        self.failed += other.failed;
        let room = KEPT_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        self
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let how = if self.exhaustive { "exhaustive" } else { "sampled" };
        write!(f, "{} triples ({how}), {} failures", self.triples, self.failed)?;
        for fail in &self.failures {
            write!(f, "\n  {}: {}", fail.law, fail.elements.join(", "))?;
        }
        Ok(())
    }
}

/// A random element. Half the time the group part is pushed up from a lower
/// layer, so ties of the images across layers come up often.
pub fn random_element<R: Rng + ?Sized>(chain: &Chain, rng: &mut R, spread: i64) -> ChainElement {
    let b = chain.bunch();
    let u = rng.gen_range(0..b.len());
    let g = if u > 0 && rng.gen_bool(0.5) {
        let l = rng.gen_range(0..u);
        b.transport(l, u, &b.group(l).random_elem(rng, spread)).into_owned()
    } else {
        b.group(u).random_elem(rng, spread)
    };
    let layer = b.layer(u);
    let dotted = layer.class == LayerClass::I && layer.in_subgroup(&g) && rng.gen_bool(0.5);
    ChainElement::new(u, g, dotted)
}

/// Laws violated by the triple `(x, y, z)`.
pub fn check_triple(chain: &Chain, x: &ChainElement, y: &ChainElement, z: &ChainElement) -> Vec<Law> {
    let mut bad = Vec::new();
    let c = chain;
    let xy = c.compare(x, y);
    if xy != c.compare(y, x).reverse() || (xy.is_eq() != (x == y)) {
        bad.push(Law::Totality);
    }
    if c.le(x, y) && c.le(y, z) && !c.le(x, z) {
        bad.push(Law::Transitivity);
    }
    let p = c.mul(x, y);
    if p != c.mul(y, x) {
        bad.push(Law::Commutativity);
    }
    if c.mul(&p, z) != c.mul(x, &c.mul(y, z)) {
        bad.push(Law::Associativity);
    }
    if c.mul(&c.unit(), x) != *x {
        bad.push(Law::Unit);
    }
    if c.le(x, y) && !c.le(&c.mul(x, z), &c.mul(y, z)) {
        bad.push(Law::Monotonicity);
    }
    let r = c.residuum(x, z);
    if c.le(&p, z) != c.le(y, &r) {
        bad.push(Law::Adjointness);
    }
    let nx = c.negate(x);
    if c.negate(&nx) != *x {
        bad.push(Law::Involution);
    }
    if c.check_element(&p).is_err() || c.check_element(&nx).is_err() || c.check_element(&r).is_err() {
        bad.push(Law::Closure);
    }
    let (t, f) = c.constants();
    let constants_ok = if c.bunch_type().is_odd() {
        f == t
    } else {
        c.lt(&f, &t) && !(c.lt(&f, x) && c.lt(x, &t))
    };
    if !constants_ok {
        bad.push(Law::Constants);
    }
    bad
}

fn record(chain: &Chain, report: &mut LawReport, x: &ChainElement, y: &ChainElement, z: &ChainElement) {
    report.triples += 1;
    for law in check_triple(chain, x, y, z) {
        report.failed += 1;
        if report.failures.len() < KEPT_FAILURES {
            let elements = [x, y, z].iter().map(|e| chain.format_element(e)).collect();
            report.failures.push(LawFailure { law, elements });
        }
    }
}

/// Check the laws on `config.triples` triples. Finite chains small enough
/// for the budget are checked on every triple instead.
pub fn check_laws(chain: &Chain, config: &LawConfig) -> LawReport {
    if chain.is_finite() {
        let xs: Vec<ChainElement> = chain.elements().collect();
        if xs.len().pow(3) <= config.triples.max(1) {
            let mut report = xs
                .par_iter()
                .map(|x| {
                    let mut r = LawReport::default();
                    for y in &xs {
                        for z in &xs {
                            record(chain, &mut r, x, y, z);
                        }
                    }
                    r
                })
                .reduce(LawReport::default, LawReport::merge);
            report.exhaustive = true;
            return report;
        }
    }
    (0..CHUNKS)
        .into_par_iter()
        .map(|chunk| {
            let share = config.triples / CHUNKS + usize::from(chunk < config.triples % CHUNKS);
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_mul(CHUNKS as u64).wrapping_add(chunk as u64));
            let mut r = LawReport::default();
            for _ in 0..share {
                let x = random_element(chain, &mut rng, config.spread);
                let y = random_element(chain, &mut rng, config.spread);
                let z = random_element(chain, &mut rng, config.spread);
                record(chain, &mut r, &x, &y, &z);
            }
            r
        })
        .reduce(LawReport::default, LawReport::merge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_satisfy_the_laws() {
        let config = LawConfig { triples: 3000, ..LawConfig::default() };
        for (name, b) in fixtures::named() {
            let r = check_laws(&Chain::new(b).unwrap(), &config);
            assert!(r.is_ok(), "{name}: {r}");
            assert!(r.exhaustive || r.triples == 3000);
        }
    }

    #[test]
    fn random_bunches_satisfy_the_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let b = fixtures::random_bunch(&mut rng);
            let c = Chain::new(b.clone()).unwrap();
            let r = check_laws(&c, &LawConfig { triples: 2000, ..LawConfig::default() });
            assert!(r.is_ok(), "{}\n{r}", b.serialize());
        }
    }

    #[test]
    fn finite_chains_satisfy_the_laws() {
        for size in 1..=7 {
            for b in fixtures::finite_bunches(size) {
                let r = check_laws(&Chain::new(b).unwrap(), &LawConfig { triples: 400, ..LawConfig::default() });
                assert!(r.exhaustive && r.is_ok(), "size {size}: {r}");
            }
        }
    }

    #[test]
    fn small_finite_chains_are_exhaustive() {
        let c = Chain::new(fixtures::s3()).unwrap();
        let r = check_laws(&c, &LawConfig::default());
        assert!(r.exhaustive && r.is_ok());
        assert_eq!(r.triples, 27);
    }

    #[test]
    fn detects_a_broken_chain() {
        // Invalid: odd integers from t land outside H = 2ℤ.
        use crate::bunch::{Bunch, Layer};
        use crate::ogroup::{Hom, OGroup, Subgroup, SubgroupKind};
        let evens = Subgroup::new(SubgroupKind::IntMultiples(2), &OGroup::Int).unwrap();
        let b = Bunch::new(
            vec![
                Layer::new("t", LayerClass::O, OGroup::Int),
                Layer::new("u", LayerClass::I, OGroup::Int).with_subgroup(evens),
            ],
            vec![Hom::identity(&OGroup::Int)],
        )
        .unwrap();
        let r = check_laws(&Chain::assume_valid(b), &LawConfig { triples: 2000, ..LawConfig::default() });
        assert!(!r.is_ok());
    }

    #[test]
    fn seeded_runs_repeat() {
        let c = Chain::new(fixtures::lz2()).unwrap();
        let cfg = LawConfig { triples: 500, spread: 4, seed: 9 };
        let mut rng_a = ChaCha8Rng::seed_from_u64(1);
        let mut rng_b = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            assert_eq!(random_element(&c, &mut rng_a, 4), random_element(&c, &mut rng_b, 4));
        }
        assert_eq!(check_laws(&c, &cfg).triples, check_laws(&c, &cfg).triples);
    }
}
