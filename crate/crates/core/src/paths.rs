//! Preference functions, their lattice placements, and path statistics.
//!
//! Cars preferring spot `c` are stacked in column `c`, smallest at the
//! bottom, taking the next free rows. Coordinates are 1-based and the
//! diagonal of a cell is `row - column`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{word_ides, Perm};
use crate::subset::Subset;
use crate::MAX_CARS;

/// Default upper bound on `n` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 8;

/// A map `f: [n] -> [n]`; `f(i)` is the spot car `i` prefers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrefFunc(Vec<u8>);

impl PrefFunc {
    pub fn new(f: Vec<u8>) -> Result<Self> {
        let n = f.len();
        if n == 0 || n > MAX_CARS {
            return Err(Error::InvalidArgument(format!(
                "preference function length {n} outside 1..={MAX_CARS}"
            )));
        }
        if let Some(bad) = f.iter().find(|&&v| v == 0 || v as usize > n) {
            return Err(Error::InvalidArgument(format!(
                "preference {bad} outside 1..={n}"
            )));
        }
        Ok(Self(f))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }
}

impl FromStr for PrefFunc {
    type Err = Error;

    /// Comma-separated preferences, e.g. `1,5,1,2,1`.
    fn from_str(s: &str) -> Result<Self> {
        let values: Option<Vec<u8>> = s
            .trim()
            .split(',')
            .map(|p| p.trim().parse::<u8>().ok())
            .collect();
        let values = values.ok_or_else(|| {
            Error::InvalidArgument(format!("cannot parse preference vector {s:?}"))
        })?;
        PrefFunc::new(values)
    }
}

impl fmt::Display for PrefFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub column: u8,
    pub row: u8,
    pub diagonal: i8,
}

/// Cell of every car, indexed by `car - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    cells: Vec<Cell>,
}

impl Placement {
    pub fn cell(&self, car: u8) -> Cell {
        self.cells[car as usize - 1]
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn n(&self) -> usize {
        self.cells.len()
    }

    /// Cars listed bottom row first.
    pub fn cars_by_row(&self) -> Vec<u8> {
        let mut by_row = vec![0u8; self.cells.len()];
        for (i, c) in self.cells.iter().enumerate() {
            by_row[c.row as usize - 1] = i as u8 + 1;
        }
        by_row
    }
}

pub fn place(p: &PrefFunc) -> Placement {
    let layout = Layout::new(p.values());
    Placement {
        cells: (0..layout.n)
            .map(|i| Cell {
                column: layout.col[i],
                row: layout.row[i],
                diagonal: layout.diag[i],
            })
            .collect(),
    }
}

/// `|f^{-1}([k])| >= k` for every `k`.
pub fn is_parking(p: &PrefFunc) -> bool {
    let n = p.n();
    let mut counts = [0usize; MAX_CARS + 1];
    for &v in p.values() {
        counts[v as usize] += 1;
    }
    let mut acc = 0;
    for (k, &count) in counts.iter().enumerate().take(n + 1).skip(1) {
        acc += count;
        if acc < k {
            return false;
        }
    }
    true
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DinvParts {
    pub primary: u32,
    pub secondary: u32,
    pub tertiary: u32,
}

impl DinvParts {
    pub fn total(&self) -> u32 {
        self.primary + self.secondary + self.tertiary
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatRecord {
    pub f: PrefFunc,
    pub area: u32,
    pub dinv: DinvParts,
    pub word: Vec<u8>,
    pub ides: Subset,
    pub diagword: Perm,
    pub deviation: u32,
    pub touch: u32,
    /// Present exactly for parking functions.
    pub comp: Option<Vec<u8>>,
}

impl StatRecord {
    pub fn is_parking(&self) -> bool {
        self.deviation == 0
    }

    pub fn to_json_line(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            n: usize,
            f: &'a [u8],
            area: u32,
            dinv: u32,
            dinv_parts: [u32; 3],
            word: &'a [u8],
            ides: Vec<u8>,
            diagword: &'a [u8],
            deviation: u32,
            touch: u32,
            comp: Option<&'a [u8]>,
            parking: bool,
        }
        let line = Line {
            n: self.f.n(),
            f: self.f.values(),
            area: self.area,
            dinv: self.dinv.total(),
            dinv_parts: [self.dinv.primary, self.dinv.secondary, self.dinv.tertiary],
            word: &self.word,
            ides: self.ides.elems(),
            diagword: self.diagword.as_slice(),
            deviation: self.deviation,
            touch: self.touch,
            comp: self.comp.as_deref(),
            parking: self.is_parking(),
        };
        serde_json::to_string(&line).expect("plain data serializes")
    }
}

/// Which diagonal gap secondary dinv looks at. Only `Strict` is correct;
/// the other variant exists so checks can be mutation-tested.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SecondaryRule {
    #[default]
    Strict,
    GapTwo,
}

pub fn stats(p: &PrefFunc) -> StatRecord {
    stats_with_rule(p, SecondaryRule::Strict)
}

#[doc(hidden)]
pub fn stats_with_rule(p: &PrefFunc, rule: SecondaryRule) -> StatRecord {
    let layout = Layout::new(p.values());
    let s = layout.summary(rule);
    let n = layout.n;

    let mut word: Vec<u8> = (1..=n as u8).collect();
    word.sort_by_key(|&c| {
        let i = c as usize - 1;
        (
            std::cmp::Reverse(layout.diag[i]),
            std::cmp::Reverse(layout.col[i]),
        )
    });
    let diagword = Perm::from_code(s.diagword, n);

    let comp = (s.deviation == 0).then(|| {
        let mut touch_rows: Vec<u8> = (0..n)
            .filter(|&i| layout.diag[i] == 0)
            .map(|i| layout.row[i])
            .collect();
        touch_rows.sort_unstable();
        touch_rows.push(n as u8 + 1);
        touch_rows.windows(2).map(|w| w[1] - w[0]).collect()
    });

    StatRecord {
        f: p.clone(),
        area: s.area,
        dinv: s.dinv,
        word,
        ides: s.ides,
        diagword,
        deviation: s.deviation,
        touch: s.touch,
        comp,
    }
}

/// Allocation-free statistics used by the enumeration kernels.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Summary {
    pub area: u32,
    pub dinv: DinvParts,
    pub ides: Subset,
    pub diagword: u64,
    pub deviation: u32,
    pub touch: u32,
}

pub(crate) struct Layout {
    n: usize,
    col: [u8; MAX_CARS],
    row: [u8; MAX_CARS],
    diag: [i8; MAX_CARS],
}

impl Layout {
    pub(crate) fn new(f: &[u8]) -> Self {
        let n = f.len();
        let mut layout = Layout {
            n,
            col: [0; MAX_CARS],
            row: [0; MAX_CARS],
            diag: [0; MAX_CARS],
        };
        let mut next_row = 1u8;
        for column in 1..=n as u8 {
            for (i, &pref) in f.iter().enumerate() {
                if pref == column {
                    layout.col[i] = column;
                    layout.row[i] = next_row;
                    layout.diag[i] = next_row as i8 - column as i8;
                    next_row += 1;
                }
            }
        }
        layout
    }

    pub(crate) fn summary(&self, rule: SecondaryRule) -> Summary {
        let n = self.n;
        let min_diag = self.diag[..n].iter().copied().min().unwrap_or(0);
        let deviation = (-min_diag).max(0) as u32;
        let area = self.diag[..n]
            .iter()
            .map(|&d| (d as i32 + deviation as i32) as u32)
            .sum();

        let gap = match rule {
            SecondaryRule::Strict => 1,
            SecondaryRule::GapTwo => 2,
        };
        let mut dinv = DinvParts::default();
        for a in 0..n {
            if self.diag[a] < 0 {
                dinv.tertiary += 1;
            }
            for b in a + 1..n {
                if self.diag[a] == self.diag[b] && self.col[a] < self.col[b] {
                    dinv.primary += 1;
                }
                let counts = self.diag[a] + gap == self.diag[b] && self.col[a] > self.col[b];
                if counts {
                    dinv.secondary += 1;
                }
            }
        }

        let mut word = [0u8; MAX_CARS];
        let mut diagword = [0u8; MAX_CARS];
        for i in 0..n {
            word[i] = i as u8 + 1;
            diagword[i] = i as u8 + 1;
        }
        word[..n].sort_unstable_by_key(|&c| {
            let i = c as usize - 1;
            (
                std::cmp::Reverse(self.diag[i]),
                std::cmp::Reverse(self.col[i]),
            )
        });
        diagword[..n].sort_by_key(|&c| std::cmp::Reverse(self.diag[c as usize - 1]));

        let touch = self.diag[..n].iter().filter(|&&d| d == min_diag).count() as u32;

        Summary {
            area,
            dinv,
            ides: word_ides(&word[..n]),
            diagword: Perm::code(&diagword[..n]),
            deviation,
            touch,
        }
    }
}

/// Every preference vector of length `n`, lexicographically.
#[derive(Clone, Debug)]
pub struct PrefIter {
    n: usize,
    current: Option<Vec<u8>>,
}

impl Iterator for PrefIter {
    type Item = PrefFunc;

    fn next(&mut self) -> Option<PrefFunc> {
        let cur = self.current.as_mut()?;
        let out = PrefFunc(cur.clone());
        if !odometer_step(cur, self.n as u8) {
            self.current = None;
        }
        Some(out)
    }
}

pub fn enumerate_all(n: usize) -> Result<PrefIter> {
    enumerate_all_bounded(n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_all_bounded(n: usize, max_n: usize) -> Result<PrefIter> {
    check_enumeration_bound(n, max_n)?;
    Ok(PrefIter {
        n,
        current: Some(vec![1; n]),
    })
}

pub(crate) fn check_enumeration_bound(n: usize, max_n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let bound = max_n.min(MAX_CARS);
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "n",
            value: n,
            bound,
        });
    }
    Ok(())
}

/// Advances to the lexicographic successor; `false` after `(n, ..., n)`.
pub(crate) fn odometer_step(f: &mut [u8], n: u8) -> bool {
    for slot in f.iter_mut().rev() {
        if *slot < n {
            *slot += 1;
            return true;
        }
        *slot = 1;
    }
    false
}

/// Calls `visit` on every preference vector of length `n` whose first
/// entry is `first`, in lexicographic order.
pub(crate) fn for_each_with_first<F: FnMut(&[u8])>(n: usize, first: u8, mut visit: F) {
    let mut f = [1u8; MAX_CARS];
    f[0] = first;
    loop {
        visit(&f[..n]);
        if n == 1 || !odometer_step(&mut f[1..n], n as u8) {
            break;
        }
    }
}

/// Every preference function with its record, split by `f(1)` and
/// evaluated on `threads` workers; the output order is lexicographic
/// regardless of `threads`.
pub fn par_records<P>(n: usize, max_n: usize, threads: usize, keep: P) -> Result<Vec<StatRecord>>
where
    P: Fn(&StatRecord) -> bool + Sync,
{
    check_enumeration_bound(n, max_n)?;
    let parts = crate::parallel::map_ordered(threads, 1..=n as u8, |first| {
        let mut out = Vec::new();
        for_each_with_first(n, first, |f| {
            let rec = stats(&PrefFunc(f.to_vec()));
            if keep(&rec) {
                out.push(rec);
            }
        });
        out
    })?;
    Ok(parts.into_iter().flatten().collect())
}

/// Area of a parking function counted as full cells between its path and
/// the main diagonal, column by column.
pub fn area_by_cells(p: &PrefFunc) -> u32 {
    let n = p.n();
    let mut counts = vec![0u32; n + 1];
    for &v in p.values() {
        counts[v as usize] += 1;
    }
    // height of the path over column i (0-based) is the number of north
    // steps taken before its east step
    let mut height = 0u32;
    let mut area = 0u32;
    for i in 0..n {
        height += counts[i + 1];
        area += height.saturating_sub(i as u32 + 1);
    }
    area
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pf(s: &str) -> PrefFunc {
        s.parse().unwrap()
    }

    #[test]
    fn placement_of_parking_example() {
        let pl = place(&pf("1,5,1,2,1"));
        let diags: Vec<i8> = (1..=5).map(|c| pl.cell(c).diagonal).collect();
        assert_eq!(diags, vec![0, 0, 1, 2, 2]);
        assert_eq!(pl.cars_by_row(), vec![1, 3, 5, 4, 2]);
    }

    #[test]
    fn placement_of_deviating_example() {
        let pl = place(&pf("3,5,3,2,3"));
        let cell = |col, row, diagonal| Cell {
            column: col,
            row,
            diagonal,
        };
        assert_eq!(pl.cell(4), cell(2, 1, -1));
        assert_eq!(pl.cell(1), cell(3, 2, -1));
        assert_eq!(pl.cell(3), cell(3, 3, 0));
        assert_eq!(pl.cell(5), cell(3, 4, 1));
        assert_eq!(pl.cell(2), cell(5, 5, 0));
    }

    #[test]
    fn placement_single_car() {
        let pl = place(&pf("1"));
        assert_eq!(
            pl.cell(1),
            Cell {
                column: 1,
                row: 1,
                diagonal: 0
            }
        );
    }

    #[test]
    fn parking_predicate() {
        assert!(is_parking(&pf("1,5,1,2,1")));
        assert!(!is_parking(&pf("3,5,3,2,3")));
        assert!(is_parking(&pf("1,1,1,1,1,1")));
        assert!(!is_parking(&pf("2,2")));
    }

    #[test]
    fn stats_of_parking_example() {
        let s = stats(&pf("1,5,1,2,1"));
        assert_eq!(s.area, 5);
        assert_eq!(
            s.dinv,
            DinvParts {
                primary: 1,
                secondary: 1,
                tertiary: 0
            }
        );
        assert_eq!(s.word, vec![4, 5, 3, 2, 1]);
        assert_eq!(s.ides.elems(), vec![1, 2, 3]);
        assert_eq!(s.diagword.as_slice(), &[4, 5, 3, 1, 2]);
        assert_eq!(s.deviation, 0);
        assert_eq!(s.touch, 2);
        assert_eq!(s.comp, Some(vec![4, 1]));
    }

    #[test]
    fn stats_of_deviating_example() {
        let s = stats(&pf("3,5,3,2,3"));
        assert_eq!(s.deviation, 1);
        assert_eq!(s.area, 4);
        assert_eq!(
            s.dinv,
            DinvParts {
                primary: 0,
                secondary: 1,
                tertiary: 2
            }
        );
        assert_eq!(s.word, vec![5, 2, 3, 1, 4]);
        assert_eq!(s.ides.elems(), vec![1, 4]);
        assert_eq!(s.diagword.as_slice(), &[5, 2, 3, 1, 4]);
        assert_eq!(s.touch, 2);
        assert_eq!(s.comp, None);
    }

    #[test]
    fn stats_single_car() {
        let s = stats(&pf("1"));
        assert_eq!((s.area, s.dinv.total(), s.deviation, s.touch), (0, 0, 0, 1));
        assert_eq!(s.word, vec![1]);
        assert!(s.ides.is_empty());
        assert_eq!(s.comp, Some(vec![1]));
    }

    #[test]
    fn json_line_format() {
        let s = stats(&pf("3,5,3,2,3"));
        assert_eq!(
            s.to_json_line(),
            r#"{"n":5,"f":[3,5,3,2,3],"area":4,"dinv":3,"dinv_parts":[0,1,2],"word":[5,2,3,1,4],"ides":[1,4],"diagword":[5,2,3,1,4],"deviation":1,"touch":2,"comp":null,"parking":false}"#
        );
    }

    #[test]
    fn rejects_malformed() {
        assert!(PrefFunc::new(vec![]).is_err());
        assert!(PrefFunc::new(vec![0, 1]).is_err());
        assert!(PrefFunc::new(vec![3, 1]).is_err());
        assert!("1,x".parse::<PrefFunc>().is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_all(1).unwrap().count(), 1);
        let all3: Vec<PrefFunc> = enumerate_all(3).unwrap().collect();
        assert_eq!(all3.len(), 27);
        assert!(all3.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all3.iter().filter(|p| is_parking(p)).count(), 16);
        let all5 = enumerate_all(5).unwrap();
        let (total, parking) = all5.fold((0, 0), |(t, k), p| (t + 1, k + is_parking(&p) as usize));
        assert_eq!((total, parking), (3125, 1296));
        assert!(matches!(enumerate_all(9), Err(Error::BoundExceeded { .. })));
        assert!(enumerate_all(0).is_err());
    }

    #[test]
    fn parallel_records_are_lexicographic() {
        let one = par_records(4, 8, 1, |_| true).unwrap();
        let many = par_records(4, 8, 3, |_| true).unwrap();
        assert_eq!(one, many);
        let serial: Vec<PrefFunc> = enumerate_all(4).unwrap().collect();
        let fs: Vec<PrefFunc> = one.into_iter().map(|r| r.f).collect();
        assert_eq!(fs, serial);
    }
}
