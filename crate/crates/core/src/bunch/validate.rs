use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Bunch, LayerClass};
use crate::ogroup::GElem;

pub const DEFAULT_LAYER_SAMPLES: usize = 100;

// Beyond this many layers, composition is checked on a seeded sample of triples.
const MAX_EXHAUSTIVE_LAYERS: usize = 12;
const MAX_D2_TRIPLES: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    /// Each stored step is an order-preserving homomorphism.
    StepHom,
    /// The transition from a layer to itself is the identity.
    TransitionIdentity,
    /// Transitions compose along the skeleton.
    TransitionComposition,
    /// Only the least layer may be in the o class.
    OnlyLeastIsO,
    /// A `J` layer is discrete and every later transition identifies its
    /// unit with the unit's lower cover.
    JUnitCover,
    /// The step into an `I` layer lands in its subgroup.
    IntoSubgroup,
}

/// How a clause was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMethod {
    /// Follows from the shape of the data (e.g. a unit map lands in every subgroup).
    Structural,
    /// Every element of a finite domain was checked.
    Exhaustive,
    /// This many enumerated elements (or pairs) were checked.
    Sampled(usize),
}

#[derive(Clone, Debug)]
pub struct ClauseCheck {
    pub clause: Clause,
    pub subject: String,
    pub method: CheckMethod,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub checks: Vec<ClauseCheck>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.violations.is_empty())
    }

    pub fn violations(&self) -> impl Iterator<Item = (&ClauseCheck, &String)> {
        self.checks.iter().flat_map(|c| c.violations.iter().map(move |v| (c, v)))
    }

    pub fn has_violation(&self, clause: Clause) -> bool {
        self.checks.iter().any(|c| c.clause == clause && !c.violations.is_empty())
    }

    fn push(&mut self, clause: Clause, subject: impl Into<String>, method: CheckMethod, violations: Vec<String>) {
        self.checks.push(ClauseCheck { clause, subject: subject.into(), method, violations });
    }
}

impl fmt::Display for CheckMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckMethod::Structural => write!(f, "structural"),
            CheckMethod::Exhaustive => write!(f, "exhaustive"),
            CheckMethod::Sampled(n) => write!(f, "sampled {n}"),
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.violations.is_empty() { "ok" } else { "FAIL" };
            writeln!(f, "{:?} {} [{}]: {}", c.clause, c.subject, c.method, status)?;
            for v in &c.violations {
                writeln!(f, "    {v}")?;
            }
        }
        write!(f, "{}", if self.is_ok() { "valid" } else { "invalid" })
    }
}

impl Bunch {
    pub fn validate(&self) -> ValidationReport {
        self.validate_with(DEFAULT_LAYER_SAMPLES)
    }

    /// Check the class conditions, the transition laws and the step homomorphisms.
    /// Infinite layer groups are checked on their first `samples` enumerated
    /// elements; the report records the method used for every clause.
    pub fn validate_with(&self, samples: usize) -> ValidationReport {
        let samples = samples.max(1);
        let mut report = ValidationReport::default();
        let n = self.len();
        let name = |i: usize| self.layers[i].name.as_str();
        let sample_of = |i: usize| -> (Vec<GElem>, CheckMethod) {
            let g = self.group(i);
            if g.is_trivial() {
                (vec![g.unit()], CheckMethod::Exhaustive)
            } else {
                (g.enumerate().take(samples).collect(), CheckMethod::Sampled(samples))
            }
        };

        for (i, step) in self.steps.iter().enumerate() {
            let check = step.check(samples);
            let method = if check.exhaustive { CheckMethod::Exhaustive } else { CheckMethod::Sampled(check.pairs_checked) };
            report.push(Clause::StepHom, format!("{}->{}", name(i), name(i + 1)), method, check.violations);
        }

        report.push(Clause::TransitionIdentity, "all layers", CheckMethod::Structural, vec![]);

        // Composition holds because transitions are composites of the steps; re-check
        // the composed homs against stepwise transport within a fixed budget.
        let mut triples: Vec<(usize, usize, usize)> = Vec::new();
        if n <= MAX_EXHAUSTIVE_LAYERS {
            for u in 0..n {
                for v in u..n {
                    triples.extend((v..n).map(|w| (u, v, w)));
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..MAX_D2_TRIPLES {
                let mut t = [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)];
                t.sort_unstable();
                triples.push((t[0], t[1], t[2]));
            }
        }
        let per_triple = (samples * n.max(1) / triples.len().max(1)).clamp(1, samples);
        let mut d2 = Vec::new();
        for &(u, v, w) in &triples {
            let (Ok(uv), Ok(vw)) = (self.transition_idx(u, v), self.transition_idx(v, w)) else { continue };
            for x in self.group(u).enumerate().take(per_triple) {
                let direct = self.transport(u, w, &x);
                let staged = vw.apply_unchecked(&uv.apply_unchecked(&x));
                if *direct != staged {
                    d2.push(format!("{}->{} differs from {}->{}->{} at {x}", name(u), name(w), name(u), name(v), name(w)));
                }
            }
        }
        report.push(Clause::TransitionComposition, format!("{} triples", triples.len()), CheckMethod::Sampled(per_triple), d2);

        let bad_o: Vec<String> = (1..n)
            .filter(|&i| self.class(i) == LayerClass::O)
            .map(|i| format!("layer `{}` is in the o class but is not the least layer", name(i)))
            .collect();
        report.push(Clause::OnlyLeastIsO, "partition", CheckMethod::Structural, bad_o);

        for u in (0..n).filter(|&u| self.class(u) == LayerClass::J) {
            let g = self.group(u);
            if g.is_trivial() || !g.is_discrete() {
                report.push(
                    Clause::JUnitCover,
                    name(u),
                    CheckMethod::Structural,
                    vec![format!("G_{} = {g} is not discrete", name(u))],
                );
                continue;
            }
            let unit = g.unit();
            let below = g.cover(&unit, -1).expect("discrete group has covers");
            let mut bad = Vec::new();
            for v in u + 1..n {
                if self.transport(u, v, &unit) != self.transport(u, v, &below) {
                    bad.push(format!(
                        "transition {}->{} separates the unit from its lower cover {below}",
                        name(u),
                        name(v)
                    ));
                }
            }
            report.push(Clause::JUnitCover, name(u), CheckMethod::Structural, bad);
        }

        // Images of u -> v lie inside the image of pred(v) -> v, so checking
        // the step into each I layer covers every u below it.
        for v in (1..n).filter(|&v| self.class(v) == LayerClass::I) {
            let h = self.layers[v].subgroup.as_ref().expect("I layer has a subgroup");
            let step = &self.steps[v - 1];
            let subject = format!("{}->{}", name(v - 1), name(v));
            if h.is_whole() || step.is_constant_unit() {
                report.push(Clause::IntoSubgroup, subject, CheckMethod::Structural, vec![]);
                continue;
            }
            let (xs, method) = sample_of(v - 1);
            let bad: Vec<String> = xs
                .iter()
                .filter_map(|x| {
                    let y = step.apply_unchecked(x);
                    (!h.contains(&y)).then(|| format!("{x} ↦ {y} is not in H_{}", name(v)))
                })
                .take(5)
                .collect();
            report.push(Clause::IntoSubgroup, subject, method, bad);
        }
        report
    }
}
