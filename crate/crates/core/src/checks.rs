//! Registry of machine-checkable identities.
//!
//! Each check compares two independently computed sides (closed form
//! against brute force, symbolic against symbolic) over a parameter range
//! and reports the first disagreement.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::census::Census;
use crate::error::{Error, Result};
use crate::paths::{SecondaryRule, DEFAULT_ENUMERATION_BOUND};
use crate::perm::Perm;
use crate::qt::{q_int, QTPoly};
use crate::quasisym::{factor_check_in, weighted_sum, withides_sides, QSymF};
use crate::schedules::{
    delta_merge, generate, leaf_polynomial, partitions_in_box, pref_all_l_closed_form,
    pref_closed_form, schedule_locality, shift_multiset, PartitionBox,
};
use crate::symfunc::{enk_sum_check, hmz_check, pn_identity_check, DEGREE_BOUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    ScheduleClosedForm,
    NoIdes,
    ShiftMultiset,
    ScheduleLocality,
    Parlem,
    Factor,
    WithIdes,
    InsertionTree,
    Hmz,
    PnIdentity,
    EnkSum,
    MainSquarePaths,
}

impl CheckId {
    pub const ALL: [CheckId; 12] = [
        CheckId::ScheduleClosedForm,
        CheckId::NoIdes,
        CheckId::ShiftMultiset,
        CheckId::ScheduleLocality,
        CheckId::Parlem,
        CheckId::Factor,
        CheckId::WithIdes,
        CheckId::InsertionTree,
        CheckId::Hmz,
        CheckId::PnIdentity,
        CheckId::EnkSum,
        CheckId::MainSquarePaths,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::ScheduleClosedForm => "thm-schedule-closed-form",
            CheckId::NoIdes => "cor-noides",
            CheckId::ShiftMultiset => "thm-shift-multiset",
            CheckId::ScheduleLocality => "lemma-locality",
            CheckId::Parlem => "lemma-parlem",
            CheckId::Factor => "lemma-factor",
            CheckId::WithIdes => "cor-withides",
            CheckId::InsertionTree => "insertion-tree",
            CheckId::Hmz => "thm-hmz",
            CheckId::PnIdentity => "thm-pn-identity",
            CheckId::EnkSum => "enk-sum",
            CheckId::MainSquarePaths => "main-square-paths",
        }
    }

    /// Default inclusive `n` range.
    pub fn default_range(self) -> (usize, usize) {
        match self {
            CheckId::ShiftMultiset | CheckId::ScheduleLocality => (1, 8),
            _ => (1, 6),
        }
    }

    fn max_n(self) -> usize {
        match self {
            CheckId::Hmz | CheckId::PnIdentity | CheckId::EnkSum => DEGREE_BOUND,
            CheckId::ShiftMultiset | CheckId::ScheduleLocality => 10,
            _ => DEFAULT_ENUMERATION_BOUND,
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check {s:?}")))
    }
}

/// Parameters for one check run.
#[derive(Clone, Debug)]
pub struct CheckSpec {
    pub id: CheckId,
    pub n_min: usize,
    pub n_max: usize,
    pub tau: Option<Perm>,
    pub l: Option<usize>,
    /// Box side for random partitions.
    pub max: u32,
    pub samples: usize,
    pub seed: u64,
    pub threads: usize,
    #[doc(hidden)]
    pub rule: SecondaryRule,
}

impl CheckSpec {
    pub fn new(id: CheckId) -> Self {
        let (n_min, n_max) = id.default_range();
        Self {
            id,
            n_min,
            n_max,
            tau: None,
            l: None,
            max: 12,
            samples: 1000,
            seed: 0,
            threads: 0,
            rule: SecondaryRule::Strict,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(Error::InvalidArgument(format!(
                "empty n range {}..{}",
                self.n_min, self.n_max
            )));
        }
        if self.n_max > self.id.max_n() {
            return Err(Error::BoundExceeded {
                what: "n",
                value: self.n_max,
                bound: self.id.max_n(),
            });
        }
        if self.max == 0 || self.max > 31 {
            return Err(Error::BoundExceeded {
                what: "box side",
                value: self.max as usize,
                bound: 31,
            });
        }
        Ok(())
    }

    /// Values of `n` to visit; a fixed `tau` pins `n` to its length.
    fn ns(&self) -> Vec<usize> {
        match &self.tau {
            Some(t) => vec![t.len()],
            None => (self.n_min..=self.n_max).collect(),
        }
    }

    fn perms(&self, n: usize) -> Vec<Perm> {
        match &self.tau {
            Some(t) => vec![t.clone()],
            None => Perm::all(n),
        }
    }

    /// Deviations to visit for `tau`, restricted to those `>= from`.
    fn deviations(&self, tau: &Perm, from: usize) -> Vec<usize> {
        let runs = tau.runs().len();
        match self.l {
            Some(l) if l < runs && l >= from => vec![l],
            Some(_) => Vec::new(),
            None => (from..runs).collect(),
        }
    }

    fn parameters(&self) -> Value {
        let mut p = serde_json::Map::new();
        match self.id {
            CheckId::Parlem => {
                p.insert("max".into(), json!(self.max));
                p.insert("samples".into(), json!(self.samples));
                p.insert("seed".into(), json!(self.seed));
            }
            _ => {
                p.insert("n".into(), json!([self.n_min, self.n_max]));
            }
        }
        if let Some(t) = &self.tau {
            p.insert("tau".into(), json!(t.to_string()));
        }
        if let Some(l) = self.l {
            p.insert("l".into(), json!(l));
        }
        Value::Object(p)
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub id: CheckId,
    pub parameters: Value,
    pub pass: bool,
    pub counterexample: Option<Value>,
    pub examined: u64,
    pub wall_ms: u128,
}

impl CheckReport {
    /// One JSON object; wall time only when asked for, since it is the
    /// one field that varies between runs.
    pub fn to_json(&self, with_time: bool) -> String {
        let mut v = json!({
            "id": self.id.as_str(),
            "parameters": self.parameters,
            "pass": self.pass,
            "counterexample": self.counterexample,
            "examined": self.examined,
        });
        if with_time {
            v["wall_ms"] = json!(self.wall_ms);
        }
        v.to_string()
    }
}

struct Tally {
    examined: u64,
    counterexample: Option<Value>,
}

impl Tally {
    fn new() -> Self {
        Self {
            examined: 0,
            counterexample: None,
        }
    }

    /// Records one comparison; returns false once a failure is held.
    fn record(&mut self, ok: bool, detail: impl FnOnce() -> Value) -> bool {
        self.examined += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(detail());
        }
        self.counterexample.is_none()
    }

    fn failed(&self) -> bool {
        self.counterexample.is_some()
    }
}

pub fn run_check(spec: &CheckSpec) -> Result<CheckReport> {
    spec.validate()?;
    if let Some(t) = &spec.tau {
        if let Some(l) = spec.l {
            crate::schedules::check_deviation(t, l)?;
        }
    }
    let start = Instant::now();
    let mut tally = Tally::new();
    match spec.id {
        CheckId::ScheduleClosedForm => schedule_closed_form(spec, &mut tally)?,
        CheckId::NoIdes => noides(spec, &mut tally)?,
        CheckId::ShiftMultiset => schedule_property(spec, &mut tally, shift_multiset)?,
        CheckId::ScheduleLocality => schedule_property(spec, &mut tally, schedule_locality)?,
        CheckId::Parlem => parlem(spec, &mut tally)?,
        CheckId::Factor => factor(spec, &mut tally)?,
        CheckId::WithIdes => withides(spec, &mut tally)?,
        CheckId::InsertionTree => insertion_tree(spec, &mut tally)?,
        CheckId::Hmz => symbolic(spec, &mut tally, hmz_check)?,
        CheckId::PnIdentity => symbolic(spec, &mut tally, pn_identity_check)?,
        CheckId::EnkSum => symbolic(spec, &mut tally, enk_sum_check)?,
        CheckId::MainSquarePaths => main_square_paths(spec, &mut tally)?,
    }
    Ok(CheckReport {
        id: spec.id,
        parameters: spec.parameters(),
        pass: !tally.failed(),
        counterexample: tally.counterexample,
        examined: tally.examined,
        wall_ms: start.elapsed().as_millis(),
    })
}

fn census(spec: &CheckSpec, n: usize) -> Result<Census> {
    Census::build_with(n, DEFAULT_ENUMERATION_BOUND, spec.threads, spec.rule)
}

fn schedule_closed_form(spec: &CheckSpec, tally: &mut Tally) -> Result<()> {
    for n in spec.ns() {
        let census = census(spec, n)?;
        for tau in spec.perms(n) {
            for l in spec.deviations(&tau, 0) {
                let closed = pref_closed_form(&tau, l)?;
                let brute = census.qt_sum(&tau, Some(l as u32));
                if !tally.record(closed == brute, || {
                    json!({"tau": tau.to_string(), "l": l,
                           "closed_form": closed.to_string(), "brute_force": brute.to_string()})
                }) {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn noides(spec: &CheckSpec, tally: &mut Tally) -> Result<()> {
    for n in spec.ns() {
        let census = census(spec, n)?;
        for tau in spec.perms(n) {
            let closed = pref_all_l_closed_form(&tau)?;
            let brute = census.qt_sum(&tau, None);
            let ok = closed.to_poly().as_ref() == Some(&brute);
            if !tally.record(ok, || {
                json!({"tau": tau.to_string(),
                       "closed_form": closed.to_string(), "brute_force": brute.to_string()})
            }) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn schedule_property(
    spec: &CheckSpec,
    tally: &mut Tally,
    property: fn(&Perm, usize) -> Result<bool>,
) -> Result<()> {
    for n in spec.ns() {
        for tau in spec.perms(n) {
            for l in spec.deviations(&tau, 1) {
                let ok = property(&tau, l)?;
                if !tally.record(ok, || json!({"tau": tau.to_string(), "l": l})) {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn parlem(spec: &CheckSpec, tally: &mut Tally) -> Result<()> {
    let side = spec.max.min(6);
    let mut boxes: Vec<PartitionBox> = Vec::new();
    for a in 1..=side {
        for b in 1..=side as usize {
            boxes.extend(partitions_in_box(a, b));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..spec.samples {
        let a = rng.gen_range(1..=spec.max);
        let b = rng.gen_range(1..=spec.max as usize);
        let mut lambda: Vec<u32> = (0..b).map(|_| rng.gen_range(0..=a)).collect();
        lambda.sort_unstable_by(|x, y| y.cmp(x));
        boxes.push(PartitionBox::new(lambda, a, b)?);
    }
    for pb in boxes {
        let dm = delta_merge(&pb);
        if !tally.record(
            dm.equal(),
            || json!({"lambda": pb.lambda(), "rows": dm.rows, "columns": dm.columns}),
        ) {
            return Ok(());
        }
    }
    Ok(())
}

fn factor(spec: &CheckSpec, tally: &mut Tally) -> Result<()> {
    for n in spec.ns() {
        let census = census(spec, n)?;
        for tau in spec.perms(n) {
            for l in spec.deviations(&tau, 0) {
                let fc = factor_check_in(&census, &tau, l)?;
                if !tally.record(fc.holds(), || {
                    json!({"tau": tau.to_string(), "l": l,
                           "lhs": qsym_value(&fc.lhs), "rhs": qsym_value(&fc.rhs)})
                }) {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn qsym_value(f: &QSymF) -> Value {
    serde_json::from_str(&f.to_json()).expect("valid json")
}

fn withides(spec: &CheckSpec, tally: &mut Tally) -> Result<()> {
    for n in spec.ns() {
        let census = census(spec, n)?;
        for tau in spec.perms(n) {
            let (lhs, rhs) = withides_sides(&census, &tau);
            if !tally.record(lhs == rhs, || {
                json!({"tau": tau.to_string(),
                       "lhs": qsym_value(&lhs), "rhs": qsym_value(&rhs)})
            }) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn insertion_tree(spec: &CheckSpec, tally: &mut Tally) -> Result<()> {
    for n in spec.ns() {
        let census = census(spec, n)?;
        for tau in spec.perms(n) {
            for l in spec.deviations(&tau, 0) {
                // generate validates every leaf against tau and l itself
                let outcome = generate(&tau, l);
                let detail = |msg: String| json!({"tau": tau.to_string(), "l": l, "error": msg});
                let leaves = match outcome {
                    Ok(leaves) => leaves,
                    Err(Error::Consistency(msg)) => {
                        tally.record(false, || detail(msg));
                        return Ok(());
                    }
                    Err(e) => return Err(e),
                };
                let distinct = leaves.windows(2).all(|w| w[0].pref != w[1].pref);
                let count = census.count(&tau, Some(l as u32));
                let poly = leaf_polynomial(&leaves);
                let brute = census.qt_sum(&tau, Some(l as u32));
                let ok = distinct && leaves.len() as u64 == count && poly == brute;
                if !tally.record(ok, || {
                    detail(format!(
                        "{} leaves (distinct: {distinct}), {count} expected; {poly} vs {brute}",
                        leaves.len()
                    ))
                }) {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn symbolic(spec: &CheckSpec, tally: &mut Tally, check: fn(usize) -> Result<bool>) -> Result<()> {
    for n in spec.ns() {
        let ok = match check(n) {
            Ok(ok) => ok,
            Err(Error::Consistency(msg)) => {
                tally.record(false, || json!({"n": n, "error": msg}));
                return Ok(());
            }
            Err(e) => return Err(e),
        };
        if !tally.record(ok, || json!({"n": n})) {
            return Ok(());
        }
    }
    Ok(())
}

/// Per touch value `k`, `[k] W_pref(touch = k) = [n] W_park(touch = k)`,
/// and then the total
/// `W_pref · prod_k [k] = sum_k [n] prod_(j != k) [j] · W_park(touch = k)`.
fn main_square_paths(spec: &CheckSpec, tally: &mut Tally) -> Result<()> {
    for n in spec.ns() {
        let qn = q_int(n as i64)?;
        let total = weighted_sum(n, spec.threads, |_| true)?;
        let mut rhs_total = QSymF::zero(n);
        let qk: Vec<QTPoly> = (1..=n as i64).map(q_int).collect::<Result<_>>()?;
        let all_k: QTPoly = qk.iter().fold(QTPoly::one(), |acc, p| &acc * p);
        for k in 1..=n {
            let pref = weighted_sum(n, spec.threads, |r| r.touch as usize == k)?;
            let park = weighted_sum(n, spec.threads, |r| r.is_parking() && r.touch as usize == k)?;
            let lhs = pref.scale(&qk[k - 1]);
            let rhs = park.scale(&qn);
            if !tally.record(
                lhs == rhs,
                || json!({"n": n, "touch": k, "lhs": qsym_value(&lhs), "rhs": qsym_value(&rhs)}),
            ) {
                return Ok(());
            }
            let others = qk
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k - 1)
                .fold(qn.clone(), |acc, (_, p)| &acc * p);
            rhs_total = rhs_total.add(&park.scale(&others));
        }
        let lhs_total = total.scale(&all_k);
        if !tally.record(
            lhs_total == rhs_total,
            || json!({"n": n, "lhs": qsym_value(&lhs_total), "rhs": qsym_value(&rhs_total)}),
        ) {
            return Ok(());
        }
    }
    Ok(())
}
