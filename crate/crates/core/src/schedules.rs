//! Diagonal words and schedules.
//!
//! The runs of a diagonal word are the diagonals of a preference function,
//! top diagonal first. Runs are indexed two ways: by position from the
//! left (`runs()[j]`) and by distance from the last run (`rho(i)`, with
//! `rho(0)` the last run's length). [`RunDecomposition`] converts between
//! the two.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::paths::{place, stats, PrefFunc};
use crate::perm::Perm;
use crate::qt::{q_int, QTPoly, QTRatio};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunDecomposition {
    tau: Perm,
    runs: Vec<Vec<u8>>,
    /// `run_of[car - 1]` is the left-based run index of `car`.
    run_of: Vec<usize>,
}

impl RunDecomposition {
    pub fn new(tau: &Perm) -> Self {
        let runs: Vec<Vec<u8>> = tau.runs().into_iter().map(|r| r.to_vec()).collect();
        let mut run_of = vec![0; tau.len()];
        for (j, run) in runs.iter().enumerate() {
            for &c in run {
                run_of[c as usize - 1] = j;
            }
        }
        Self {
            tau: tau.clone(),
            runs,
            run_of,
        }
    }

    pub fn tau(&self) -> &Perm {
        &self.tau
    }

    pub fn runs(&self) -> &[Vec<u8>] {
        &self.runs
    }

    pub fn num_runs(&self) -> usize {
        self.runs.len()
    }

    /// Length of the `i`-th run counted from the last one (`rho(0)` is the
    /// last run).
    pub fn rho(&self, i: usize) -> usize {
        self.runs[self.left_index(i)].len()
    }

    /// Run lengths listed `rho_r, ..., rho_1, rho_0`.
    pub fn rho_listed(&self) -> Vec<usize> {
        self.runs.iter().map(|r| r.len()).collect()
    }

    pub fn last_run_len(&self) -> usize {
        self.rho(0)
    }

    pub fn left_index(&self, from_last: usize) -> usize {
        self.runs.len() - 1 - from_last
    }

    pub fn from_last_index(&self, left: usize) -> usize {
        self.runs.len() - 1 - left
    }

    /// Run of `car`, counted from the last run.
    pub fn run_from_last(&self, car: u8) -> usize {
        self.from_last_index(self.run_of[car as usize - 1])
    }
}

pub(crate) fn check_deviation(tau: &Perm, l: usize) -> Result<()> {
    let runs = tau.runs().len();
    if l >= runs {
        return Err(Error::InadmissibleDeviation { l, runs });
    }
    Ok(())
}

/// Schedule `(w_1, ..., w_n)`; `w_i` belongs to car `tau[n - i]`
/// (reading `tau` right to left).
pub fn schedule0(tau: &Perm) -> Vec<u32> {
    let rd = RunDecomposition::new(tau);
    let w = tau.as_slice();
    let n = w.len();
    let k = rd.last_run_len();
    (1..=n)
        .map(|i| {
            if i <= k {
                return i as u32;
            }
            let car = w[n - i];
            let j = rd.run_of[car as usize - 1];
            let larger_own = rd.runs[j].iter().filter(|&&x| x > car).count();
            let smaller_next = rd.runs[j + 1].iter().filter(|&&x| x < car).count();
            (larger_own + smaller_next) as u32
        })
        .collect()
}

/// `l`-schedule numbers, indexed by `car - 1`.
///
/// Cars in the last `l` runs count smaller cars in their own run plus
/// larger cars in the previous run. Cars in the `(l+1)`-st run from the
/// end get their position counted from the right end of the run, so the
/// rightmost gets 1. All other cars count larger cars in their own run
/// plus smaller cars in the next run.
pub fn schedule_l(tau: &Perm, l: usize) -> Result<Vec<u32>> {
    check_deviation(tau, l)?;
    let rd = RunDecomposition::new(tau);
    let mut out = vec![0u32; tau.len()];
    for (j, run) in rd.runs.iter().enumerate() {
        let from_last = rd.from_last_index(j);
        for (pos, &car) in run.iter().enumerate() {
            let w = if from_last < l {
                let smaller_own = run.iter().filter(|&&x| x < car).count();
                let larger_prev = rd.runs[j - 1].iter().filter(|&&x| x > car).count();
                smaller_own + larger_prev
            } else if from_last == l {
                run.len() - pos
            } else {
                let larger_own = run.iter().filter(|&&x| x > car).count();
                let smaller_next = rd.runs[j + 1].iter().filter(|&&x| x < car).count();
                larger_own + smaller_next
            };
            out[car as usize - 1] = w as u32;
        }
    }
    Ok(out)
}

/// Everything schedule-related about one permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleData {
    pub runs: RunDecomposition,
    pub w0: Vec<u32>,
    /// `wl[l][car - 1]` for every admissible `l`.
    pub wl: Vec<Vec<u32>>,
    pub maj: usize,
}

impl ScheduleData {
    pub fn new(tau: &Perm) -> Self {
        let runs = RunDecomposition::new(tau);
        let wl = (0..runs.num_runs())
            .map(|l| schedule_l(tau, l).expect("admissible"))
            .collect();
        Self {
            w0: schedule0(tau),
            wl,
            maj: tau.maj(),
            runs,
        }
    }

    /// `l`-schedule values read along `tau`, grouped by run.
    pub fn wl_by_run(&self, l: usize) -> Vec<Vec<u32>> {
        self.runs
            .runs()
            .iter()
            .map(|run| run.iter().map(|&c| self.wl[l][c as usize - 1]).collect())
            .collect()
    }
}

fn q_int_product<'a>(ws: impl IntoIterator<Item = &'a u32>) -> QTPoly {
    ws.into_iter().fold(QTPoly::one(), |acc, &w| {
        &acc * &q_int(w as i64).expect("schedule numbers are positive")
    })
}

/// `t^maj(tau) * prod [w_i]_q`.
pub fn pf_closed_form(tau: &Perm) -> QTPoly {
    q_int_product(&schedule0(tau)).mul_monomial(0, tau.maj() as i32)
}

/// `t^maj(tau) q^(rho_0 + ... + rho_(l-1)) prod_c [w^(l)(c)]_q`.
pub fn pref_closed_form(tau: &Perm, l: usize) -> Result<QTPoly> {
    let w = schedule_l(tau, l)?;
    let rd = RunDecomposition::new(tau);
    let below: usize = (0..l).map(|i| rd.rho(i)).sum();
    Ok(q_int_product(&w).mul_monomial(below as i32, tau.maj() as i32))
}

/// `t^maj(tau) [n]_q / [k]_q prod [w_i]_q` with `k` the last run length.
///
/// Cross-checked against the sum of [`pref_closed_form`] over all
/// admissible deviations, which also certifies the ratio is a polynomial.
pub fn pref_all_l_closed_form(tau: &Perm) -> Result<QTRatio> {
    let n = tau.len() as i64;
    let k = RunDecomposition::new(tau).last_run_len() as i64;
    let ratio = QTRatio::new(&pf_closed_form(tau) * &q_int(n)?, q_int(k)?)?;
    let summed: QTPoly = (0..tau.runs().len())
        .map(|l| pref_closed_form(tau, l))
        .sum::<Result<QTPoly>>()?;
    if ratio.to_poly().as_ref() != Some(&summed) {
        return Err(Error::Consistency(format!(
            "all-deviation closed form for {tau}: {ratio} vs {summed}"
        )));
    }
    Ok(ratio)
}

fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut out = v.to_vec();
    out.sort_unstable();
    out
}

/// Whether the multiset of `l`-schedule numbers equals the multiset of
/// the schedule with one `rho_0` exchanged for one `rho_l`.
pub fn shift_multiset(tau: &Perm, l: usize) -> Result<bool> {
    let runs = tau.runs().len();
    if l == 0 || l >= runs {
        return Err(Error::InadmissibleDeviation { l, runs });
    }
    let rd = RunDecomposition::new(tau);
    let mut expected = schedule0(tau);
    let rho0 = rd.rho(0) as u32;
    match expected.iter().position(|&w| w == rho0) {
        Some(i) => {
            expected.swap_remove(i);
        }
        None => return Ok(false),
    }
    expected.push(rd.rho(l) as u32);
    Ok(sorted(&expected) == sorted(&schedule_l(tau, l)?))
}

/// Whether `w^(l-1)` and `w^(l)` agree on every car outside the `l`-th and
/// `(l+1)`-st runs from the end.
pub fn schedule_locality(tau: &Perm, l: usize) -> Result<bool> {
    if l == 0 {
        return Err(Error::InvalidArgument("locality needs l >= 1".into()));
    }
    let before = schedule_l(tau, l - 1)?;
    let after = schedule_l(tau, l)?;
    let rd = RunDecomposition::new(tau);
    Ok(tau.as_slice().iter().all(|&c| {
        let i = rd.run_from_last(c);
        // 1-based "l-th from last" is from_last index l-1
        i == l - 1 || i == l || before[c as usize - 1] == after[c as usize - 1]
    }))
}

/// A partition with exactly `b` (possibly zero) parts, each at most `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionBox {
    lambda: Vec<u32>,
    a: u32,
}

impl PartitionBox {
    pub fn new(lambda: Vec<u32>, a: u32, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidArgument("box sides must be positive".into()));
        }
        if lambda.len() != b {
            return Err(Error::InvalidArgument(format!(
                "partition has {} parts, expected {b}",
                lambda.len()
            )));
        }
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "{lambda:?} is not weakly decreasing"
            )));
        }
        if lambda.first().copied().unwrap_or(0) > a {
            return Err(Error::InvalidArgument(format!(
                "{lambda:?} exceeds width {a}"
            )));
        }
        Ok(Self { lambda, a })
    }

    pub fn lambda(&self) -> &[u32] {
        &self.lambda
    }

    /// Conjugate as a partition with exactly `a` parts.
    pub fn conjugate(&self) -> Vec<u32> {
        (1..=self.a)
            .map(|j| self.lambda.iter().filter(|&&x| x >= j).count() as u32)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMerge {
    /// Sorted entries of `(lambda + delta_b) ∪ delta_a`.
    pub rows: Vec<u32>,
    /// Sorted entries of `(lambda' + delta_a) ∪ delta_b`.
    pub columns: Vec<u32>,
}

impl DeltaMerge {
    pub fn equal(&self) -> bool {
        self.rows == self.columns
    }
}

/// The two staircase-shifted multisets of a boxed partition. The `k`-th
/// part is paired with `k - 1`.
pub fn delta_merge(pb: &PartitionBox) -> DeltaMerge {
    let a = pb.a;
    let b = pb.lambda.len() as u32;
    let shifted = |parts: &[u32], other: u32| -> Vec<u32> {
        let mut v: Vec<u32> = parts
            .iter()
            .enumerate()
            .map(|(k, &x)| x + k as u32)
            .chain(0..other)
            .collect();
        v.sort_unstable();
        v
    };
    DeltaMerge {
        rows: shifted(&pb.lambda, a),
        columns: shifted(&pb.conjugate(), b),
    }
}

/// Every partition in the `a × b` box, as [`PartitionBox`]es.
pub fn partitions_in_box(a: u32, b: usize) -> Vec<PartitionBox> {
    fn rec(a: u32, remaining: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        let cap = prefix.last().copied().unwrap_or(a);
        for x in (0..=cap).rev() {
            prefix.push(x);
            rec(a, remaining - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    rec(a, b, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|l| PartitionBox::new(l, a, b).expect("in box"))
        .collect()
}

/// A leaf of the insertion tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leaf {
    pub pref: PrefFunc,
    /// `(car, dinv added by its insertion, not counting tertiary dinv)` in
    /// insertion order.
    pub trace: Vec<(u8, u32)>,
}

/// Cars bottom row first, with their diagonals.
type RowSeq = Vec<(u8, i8)>;

fn valid_rows(seq: &RowSeq) -> bool {
    let (Some(first), Some(last)) = (seq.first(), seq.last()) else {
        return true;
    };
    if first.1 > 0 || last.1 < 0 {
        return false;
    }
    seq.windows(2).all(|w| {
        let ((pc, pd), (sc, sd)) = (w[0], w[1]);
        sd <= pd || (sd == pd + 1 && sc > pc)
    })
}

/// Primary and secondary dinv pairs between the car at `at` and the rest.
fn dinv_with(seq: &RowSeq, at: usize) -> u32 {
    let (c, d) = seq[at];
    let mut count = 0;
    for (i, &(x, e)) in seq.iter().enumerate() {
        if i == at {
            continue;
        }
        let c_lower_row = at < i;
        let counts = if e == d {
            // smaller car further left (= lower row within a diagonal)
            (c < x && c_lower_row) || (x < c && !c_lower_row)
        } else if e + 1 == d {
            // the smaller car sits one diagonal lower, in a higher row
            x < c && c_lower_row
        } else if e == d + 1 {
            c < x && !c_lower_row
        } else {
            false
        };
        count += counts as u32;
    }
    count
}

/// Builds every preference function with diagonal word `tau` and
/// deviation `l` by inserting one car at a time.
///
/// Cars of the first `k + 1 - l` runs go in right to left starting from
/// diagonal 0; the remaining `l` runs go in left to right starting from
/// diagonal -1. Each insertion must offer exactly `w^(l)(car)` positions
/// with distinct dinv increments `0, ..., w - 1`, and every leaf is
/// re-derived from its preference vector; any mismatch is an error.
/// Leaves come back sorted by preference vector.
pub fn generate(tau: &Perm, l: usize) -> Result<Vec<Leaf>> {
    let w = schedule_l(tau, l)?;
    let rd = RunDecomposition::new(tau);
    let cars = tau.as_slice();
    let n = cars.len();

    let nonneg_end: usize = rd.runs()[..rd.num_runs() - l].iter().map(|r| r.len()).sum();
    let order: Vec<u8> = cars[..nonneg_end]
        .iter()
        .rev()
        .chain(cars[nonneg_end..].iter())
        .copied()
        .collect();

    let mut level: Vec<(RowSeq, Vec<(u8, u32)>)> = vec![(Vec::new(), Vec::new())];
    for &car in &order {
        let diag = rd.run_from_last(car) as i8 - l as i8;
        let expected = w[car as usize - 1];
        let mut next = Vec::with_capacity(level.len() * expected as usize);
        for (seq, trace) in &level {
            let mut children: Vec<(u32, RowSeq)> = Vec::new();
            for pos in 0..=seq.len() {
                let mut child = seq.clone();
                child.insert(pos, (car, diag));
                if valid_rows(&child) {
                    children.push((dinv_with(&child, pos), child));
                }
            }
            children.sort_by_key(|(inc, _)| *inc);
            let increments: Vec<u32> = children.iter().map(|(i, _)| *i).collect();
            if increments != (0..expected).collect::<Vec<u32>>() {
                return Err(Error::Consistency(format!(
                    "inserting car {car} for tau={tau}, l={l}: increments {increments:?}, schedule {expected}"
                )));
            }
            for (inc, child) in children {
                let mut t = trace.clone();
                t.push((car, inc));
                next.push((child, t));
            }
        }
        level = next;
    }

    let baseline: usize = (0..l).map(|i| rd.rho(i)).sum();
    let mut leaves = Vec::with_capacity(level.len());
    for (seq, trace) in level {
        let f: Vec<u8> = {
            let mut f = vec![0u8; n];
            for (r, &(car, d)) in seq.iter().enumerate() {
                f[car as usize - 1] = (r as i32 + 1 - d as i32) as u8;
            }
            f
        };
        let pref = PrefFunc::new(f)?;
        let rec = stats(&pref);
        let rows: Vec<u8> = seq.iter().map(|&(c, _)| c).collect();
        let traced: u32 = trace.iter().map(|&(_, inc)| inc).sum();
        let ok = place(&pref).cars_by_row() == rows
            && &rec.diagword == tau
            && rec.deviation as usize == l
            && rec.area as usize == tau.maj()
            && rec.dinv.tertiary as usize == baseline
            && rec.dinv.primary + rec.dinv.secondary == traced;
        if !ok {
            return Err(Error::Consistency(format!(
                "leaf {pref} of tau={tau}, l={l} does not round-trip"
            )));
        }
        leaves.push(Leaf { pref, trace });
    }
    leaves.sort_by(|a, b| a.pref.cmp(&b.pref));
    Ok(leaves)
}

/// `sum t^area q^dinv` over a set of leaves.
pub fn leaf_polynomial(leaves: &[Leaf]) -> QTPoly {
    let mut counts: BTreeMap<(i32, i32), i64> = BTreeMap::new();
    for leaf in leaves {
        let s = stats(&leaf.pref);
        *counts
            .entry((s.dinv.total() as i32, s.area as i32))
            .or_default() += 1;
    }
    QTPoly::from_counts(counts.into_iter().map(|((q, t), c)| (q, t, c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qt::rat;

    fn perm(s: &str) -> Perm {
        s.parse().unwrap()
    }

    fn along(tau: &Perm, w: &[u32]) -> Vec<u32> {
        tau.as_slice().iter().map(|&c| w[c as usize - 1]).collect()
    }

    #[test]
    fn schedule_of_23145() {
        assert_eq!(schedule0(&perm("23145")), vec![1, 2, 3, 1, 2]);
        let w1 = schedule_l(&perm("23145"), 1).unwrap();
        // w(3)=1, w(2)=2, w(1)=2, w(4)=1, w(5)=2
        assert_eq!((w1[2], w1[1], w1[0], w1[3], w1[4]), (1, 2, 2, 1, 2));
    }

    #[test]
    fn schedule_table_of_37158264() {
        let tau = perm("37158264");
        let rows = [
            [2, 2, 2, 2, 2, 1, 1, 1],
            [2, 2, 2, 2, 2, 2, 1, 1],
            [2, 2, 3, 2, 1, 2, 2, 1],
            [2, 1, 2, 2, 2, 2, 2, 1],
        ];
        for (l, row) in rows.iter().enumerate() {
            assert_eq!(
                along(&tau, &schedule_l(&tau, l).unwrap()),
                row.to_vec(),
                "l={l}"
            );
        }
        assert!(schedule_l(&tau, 4).is_err());
    }

    #[test]
    fn zero_schedule_agrees_as_multiset() {
        for tau in Perm::all(6) {
            assert_eq!(
                sorted(&schedule0(&tau)),
                sorted(&schedule_l(&tau, 0).unwrap())
            );
        }
        assert_eq!(schedule0(&Perm::identity(5)), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn closed_forms_for_23145() {
        let tau = perm("23145");
        let one_q = QTPoly::from_counts([(0, 0, 1), (1, 0, 1)]);
        let expected = &(&one_q * &one_q) * &q_int(3).unwrap();
        assert_eq!(pf_closed_form(&tau), expected.mul_monomial(0, 2));
        assert_eq!(pf_closed_form(&tau).eval_at_one(), rat(12));

        let l1 = pref_closed_form(&tau, 1).unwrap();
        assert_eq!(l1, one_q.pow(3).mul_monomial(3, 2));
        assert_eq!(l1.eval_at_one(), rat(8));
        assert_eq!(pref_closed_form(&tau, 0).unwrap(), pf_closed_form(&tau));

        let all = pref_all_l_closed_form(&tau).unwrap();
        let expected = (&q_int(5).unwrap() * &one_q.pow(2)).mul_monomial(0, 2);
        assert_eq!(all.to_poly().unwrap(), expected);
        assert_eq!(expected.eval_at_one(), rat(20));
    }

    #[test]
    fn identity_gives_q_factorial() {
        let id = Perm::identity(5);
        assert_eq!(pf_closed_form(&id), crate::qt::q_factorial(5));
        assert_eq!(
            pref_all_l_closed_form(&id).unwrap().to_poly().unwrap(),
            crate::qt::q_factorial(5)
        );
        assert!(pref_closed_form(&id, 1).is_err());
    }

    #[test]
    fn shift_multiset_examples() {
        assert!(shift_multiset(&perm("23145"), 1).unwrap());
        for l in 1..=3 {
            assert!(shift_multiset(&perm("37158264"), l).unwrap());
            assert!(schedule_locality(&perm("37158264"), l).unwrap());
        }
        assert!(shift_multiset(&perm("37158264"), 0).is_err());
        assert!(shift_multiset(&perm("37158264"), 4).is_err());
    }

    #[test]
    fn single_descent_example() {
        let tau = perm("345812679");
        let w0 = along(&tau, &schedule_l(&tau, 0).unwrap());
        let w1 = along(&tau, &schedule_l(&tau, 1).unwrap());
        assert_eq!(w0, vec![5, 4, 3, 4, 5, 4, 3, 2, 1]);
        assert_eq!(w1, vec![4, 3, 2, 1, 4, 5, 3, 4, 4]);
        let pb = PartitionBox::new(vec![4, 2, 2, 2], 5, 4).unwrap();
        assert_eq!(pb.conjugate(), vec![4, 4, 1, 1, 0]);
    }

    #[test]
    fn delta_merge_example() {
        let pb = PartitionBox::new(vec![3, 3, 2, 1, 0], 4, 5).unwrap();
        let m = delta_merge(&pb);
        assert_eq!(m.rows, vec![0, 1, 2, 3, 3, 4, 4, 4, 4]);
        assert!(m.equal());

        let empty = delta_merge(&PartitionBox::new(vec![0; 3], 2, 3).unwrap());
        assert_eq!(empty.rows, vec![0, 0, 1, 1, 2]);
        assert!(empty.equal());

        assert!(PartitionBox::new(vec![5, 1], 4, 2).is_err());
        assert!(PartitionBox::new(vec![1, 2], 4, 2).is_err());
        assert!(PartitionBox::new(vec![1], 4, 2).is_err());
    }

    #[test]
    fn box_enumeration_size() {
        // C(a+b, b) partitions fit in an a × b box
        assert_eq!(partitions_in_box(3, 2).len(), 10);
        assert_eq!(partitions_in_box(4, 5).len(), 126);
    }

    #[test]
    fn insertion_trees_of_23145() {
        let tau = perm("23145");
        let l0 = generate(&tau, 0).unwrap();
        assert_eq!(l0.len(), 12);
        assert_eq!(leaf_polynomial(&l0), pf_closed_form(&tau));
        let l1 = generate(&tau, 1).unwrap();
        assert_eq!(l1.len(), 8);
        assert_eq!(leaf_polynomial(&l1), pref_closed_form(&tau, 1).unwrap());
        assert!(l1.iter().all(|leaf| stats(&leaf.pref).deviation == 1));
        assert!(generate(&tau, 2).is_err());
    }

    #[test]
    fn insertion_tree_trace_sums() {
        let tau = perm("37158264");
        let leaves = generate(&tau, 2).unwrap();
        let w = schedule_l(&tau, 2).unwrap();
        assert_eq!(leaves.len() as u32, w.iter().product::<u32>());
        for leaf in &leaves {
            let s = stats(&leaf.pref);
            let traced: u32 = leaf.trace.iter().map(|t| t.1).sum();
            assert_eq!(traced + s.dinv.tertiary, s.dinv.total());
        }
    }
}
