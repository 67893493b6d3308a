//! The lower-bound argument run as a procedure against one concrete coloring.
//!
//! With few classes some class must be significant; a covering clique inside
//! it extends to a maximal clique that cannot leave the class, which makes
//! the class monochromatic on a maximal clique. Each step can fail at desk
//! scale and the outcome records where.

use serde::Serialize;

use super::lemmas::{is_significant, SignificanceReport};
use super::profile::Thresholds;
use super::witness::{construct_covering_clique, CliqueWitness, ConstructionFailure};
use crate::bitset::VertexSet;
use crate::cliques::{extend_to_maximal, is_maximal_clique, SearchEffort};
use crate::coloring::{verify_coloring, Coloring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::RngHandle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RefuteStage {
    Started,
    PickedRepresentatives,
    Averaging,
    FoundSignificantClass,
    BuiltClique,
    ExtendedMaximal,
    WitnessFound,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Representative {
    pub class: usize,
    pub class_size: usize,
    /// Outside vertex with the fewest non-neighbors in the class (lowest index on ties).
    pub vertex: usize,
    pub t: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RefuteFailure {
    /// The stage that could not be reached.
    pub stage: RefuteStage,
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<ConstructionFailure>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RefutationOutcome {
    pub n: usize,
    pub profile: String,
    pub seed: u64,
    pub classes: usize,
    pub s_max: usize,
    pub out_of_regime: bool,
    pub stage_reached: RefuteStage,
    pub failure: Option<RefuteFailure>,
    pub representatives: Vec<Representative>,
    pub chosen_class: Option<usize>,
    pub significance: Option<SignificanceReport>,
    pub construction: Option<CliqueWitness>,
    /// Monochromatic maximal clique produced by the argument.
    pub witness: Option<VertexSet>,
    pub witness_color: Option<usize>,
    /// Set when the argument failed but the coloring is invalid anyway.
    pub fallback_witness: Option<VertexSet>,
    pub fallback_color: Option<usize>,
}

impl RefutationOutcome {
    /// Witness from the argument, else from the fallback check.
    pub fn any_witness(&self) -> Option<(&VertexSet, usize)> {
        match (&self.witness, self.witness_color) {
            (Some(w), Some(c)) => Some((w, c)),
            _ => self.fallback_witness.as_ref().zip(self.fallback_color),
        }
    }
}

/// Tries to exhibit a monochromatic maximal clique of `g` under `c`.
pub fn refute_coloring(
    g: &Graph,
    c: &Coloring,
    thr: &Thresholds,
    rng: &mut RngHandle,
    effort: SearchEffort,
) -> Result<RefutationOutcome> {
    if c.len() != g.n() {
        return Err(Error::SizeMismatch {
            coloring: c.len(),
            graph: g.n(),
        });
    }
    let classes: Vec<(usize, VertexSet)> = c
        .classes()
        .into_iter()
        .enumerate()
        .filter(|(_, y)| !y.is_empty())
        .collect();
    let mut out = RefutationOutcome {
        n: g.n(),
        profile: thr.profile.name.clone(),
        seed: rng.seed(),
        classes: classes.len(),
        s_max: thr.s_max,
        out_of_regime: classes.len() > thr.s_max,
        stage_reached: RefuteStage::Started,
        failure: None,
        representatives: Vec::new(),
        chosen_class: None,
        significance: None,
        construction: None,
        witness: None,
        witness_color: None,
        fallback_witness: None,
        fallback_color: None,
    };

    if classes.len() == 1 {
        let verdict = verify_coloring(g, c)?;
        match verdict.witness {
            Some(w) => {
                out.stage_reached = RefuteStage::WitnessFound;
                out.chosen_class = verdict.color;
                out.witness = Some(w);
                out.witness_color = verdict.color;
            }
            None => fail(
                &mut out,
                RefuteStage::PickedRepresentatives,
                "one class and no edges".into(),
                None,
            ),
        }
        return Ok(out);
    }

    run_argument(g, thr, &classes, rng, effort, &mut out)?;
    if out.witness.is_none() {
        let verdict = verify_coloring(g, c)?;
        out.fallback_witness = verdict.witness;
        out.fallback_color = verdict.color;
    }
    Ok(out)
}

fn fail(out: &mut RefutationOutcome, stage: RefuteStage, reason: String, construction: Option<ConstructionFailure>) {
    out.failure = Some(RefuteFailure {
        stage,
        reason,
        construction,
    });
}

fn run_argument(
    g: &Graph,
    thr: &Thresholds,
    classes: &[(usize, VertexSet)],
    rng: &mut RngHandle,
    effort: SearchEffort,
    out: &mut RefutationOutcome,
) -> Result<()> {
    for (id, y) in classes {
        let (vertex, t) = y
            .complement()
            .iter()
            .map(|v| (v, y.len() - g.neighbors_in(v, y)))
            .min_by_key(|&(v, t)| (t, v))
            .expect("at least two nonempty classes");
        out.representatives.push(Representative {
            class: *id,
            class_size: y.len(),
            vertex,
            t,
        });
    }
    out.stage_reached = RefuteStage::PickedRepresentatives;

    let best = out
        .representatives
        .iter()
        .enumerate()
        .max_by_key(|&(i, r)| (r.t, std::cmp::Reverse(i)))
        .map(|(i, _)| i)
        .expect("nonempty");
    let (class, y) = &classes[best];
    out.chosen_class = Some(*class);
    let t = out.representatives[best].t;
    let needed = thr.sig_nonneighbor_for(y.len());
    if t < needed {
        fail(
            out,
            RefuteStage::Averaging,
            format!("largest t is {t}, below {needed}"),
            None,
        );
        return Ok(());
    }
    out.stage_reached = RefuteStage::Averaging;

    let report = is_significant(g, y, thr)?;
    let significant = report.significant();
    let bad = report.bad_vertices.len();
    out.significance = Some(report);
    if !significant {
        fail(
            out,
            RefuteStage::FoundSignificantClass,
            format!("{bad} bad vertices, cap {}", thr.bad_cap),
            None,
        );
        return Ok(());
    }
    out.stage_reached = RefuteStage::FoundSignificantClass;

    let witness = match construct_covering_clique(g, y, thr, rng, effort)? {
        Ok(w) => w,
        Err(f) => {
            fail(out, RefuteStage::BuiltClique, f.to_string(), Some(f));
            return Ok(());
        }
    };
    let k = witness.clique_set();
    out.construction = Some(witness);
    out.stage_reached = RefuteStage::BuiltClique;

    let maximal = extend_to_maximal(g, &k, rng)?;
    out.stage_reached = RefuteStage::ExtendedMaximal;

    if !maximal.is_subset(y) || maximal.len() < 2 || !is_maximal_clique(g, &maximal)?.is_maximal() {
        fail(
            out,
            RefuteStage::WitnessFound,
            format!("extension {maximal} leaves class {class}"),
            None,
        );
        return Ok(());
    }
    out.witness = Some(maximal);
    out.witness_color = Some(*class);
    out.stage_reached = RefuteStage::WitnessFound;
    Ok(())
}
