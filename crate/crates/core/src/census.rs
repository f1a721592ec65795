//! Brute-force tabulation of every preference function on `n` cars,
//! bucketed by diagonal word and deviation.
//!
//! This is the independent side of every enumeration identity: nothing
//! here knows about schedules or closed forms.

use std::collections::{BTreeMap, HashMap};

use crate::error::Result;
use crate::paths::{check_enumeration_bound, for_each_with_first, Layout, SecondaryRule};
use crate::perm::Perm;
use crate::qt::QTPoly;
use crate::quasisym::QSymF;
use crate::subset::Subset;

/// `(ides, area, dinv) -> number of preference functions`.
pub type StatCounts = BTreeMap<(Subset, u32, u32), u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    n: usize,
    buckets: BTreeMap<(Perm, u32), StatCounts>,
    total: u64,
}

type LocalCounts = HashMap<(u64, u32), HashMap<(u32, u32, u32), u64>>;

impl Census {
    pub fn build(n: usize, threads: usize) -> Result<Census> {
        Self::build_with(
            n,
            crate::paths::DEFAULT_ENUMERATION_BOUND,
            threads,
            SecondaryRule::Strict,
        )
    }

    #[doc(hidden)]
    pub fn build_with(
        n: usize,
        max_n: usize,
        threads: usize,
        rule: SecondaryRule,
    ) -> Result<Census> {
        check_enumeration_bound(n, max_n)?;
        let parts = crate::parallel::map_ordered(threads, 1..=n as u8, |first| {
            let mut local = LocalCounts::new();
            for_each_with_first(n, first, |f| {
                let s = Layout::new(f).summary(rule);
                *local
                    .entry((s.diagword, s.deviation))
                    .or_default()
                    .entry((s.ides.mask(), s.area, s.dinv.total()))
                    .or_default() += 1;
            });
            local
        })?;

        let mut buckets: BTreeMap<(Perm, u32), StatCounts> = BTreeMap::new();
        let mut total = 0;
        for local in parts {
            for ((code, dev), counts) in local {
                let bucket = buckets.entry((Perm::from_code(code, n), dev)).or_default();
                for ((mask, area, dinv), c) in counts {
                    *bucket
                        .entry((Subset::from_mask(mask), area, dinv))
                        .or_default() += c;
                    total += c;
                }
            }
        }
        Ok(Census { n, buckets, total })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of preference functions tabulated (`n^n`).
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn buckets(&self) -> impl Iterator<Item = (&Perm, u32, &StatCounts)> {
        self.buckets.iter().map(|((p, d), c)| (p, *d, c))
    }

    /// Diagonal words that occur, in lexicographic order.
    pub fn diagwords(&self) -> Vec<Perm> {
        let mut out: Vec<Perm> = self.buckets.keys().map(|(p, _)| p.clone()).collect();
        out.dedup();
        out
    }

    fn matching<'a>(
        &'a self,
        keep: impl Fn(&Perm, u32) -> bool + 'a,
    ) -> impl Iterator<Item = &'a StatCounts> + 'a {
        self.buckets
            .iter()
            .filter(move |((p, d), _)| keep(p, *d))
            .map(|(_, c)| c)
    }

    pub fn count_where(&self, keep: impl Fn(&Perm, u32) -> bool) -> u64 {
        self.matching(keep).flat_map(|c| c.values()).sum()
    }

    /// `sum t^area q^dinv` over the selected buckets.
    pub fn qt_where(&self, keep: impl Fn(&Perm, u32) -> bool) -> QTPoly {
        qt_of(self.matching(keep))
    }

    /// `sum t^area q^dinv Q_ides` over the selected buckets.
    pub fn qsym_where(&self, keep: impl Fn(&Perm, u32) -> bool) -> QSymF {
        qsym_of(self.n, self.matching(keep))
    }

    /// Buckets of one diagonal word, and of one deviation if given.
    fn of_tau<'a>(
        &'a self,
        tau: &Perm,
        deviation: Option<u32>,
    ) -> impl Iterator<Item = &'a StatCounts> + 'a {
        let (lo, hi) = match deviation {
            Some(l) => (l, l),
            None => (0, u32::MAX),
        };
        self.buckets
            .range((tau.clone(), lo)..=(tau.clone(), hi))
            .map(|(_, c)| c)
    }

    /// Restricted to one diagonal word, and to one deviation if given.
    pub fn qt_sum(&self, tau: &Perm, deviation: Option<u32>) -> QTPoly {
        qt_of(self.of_tau(tau, deviation))
    }

    pub fn qsym_sum(&self, tau: &Perm, deviation: Option<u32>) -> QSymF {
        qsym_of(self.n, self.of_tau(tau, deviation))
    }

    pub fn count(&self, tau: &Perm, deviation: Option<u32>) -> u64 {
        self.of_tau(tau, deviation).flat_map(|c| c.values()).sum()
    }
}

fn qt_of<'a>(counts: impl Iterator<Item = &'a StatCounts>) -> QTPoly {
    QTPoly::from_counts(
        counts
            .flat_map(|c| c.iter())
            .map(|(&(_, area, dinv), &c)| (dinv as i32, area as i32, c as i64)),
    )
}

fn qsym_of<'a>(n: usize, counts: impl Iterator<Item = &'a StatCounts>) -> QSymF {
    let mut grouped: BTreeMap<Subset, Vec<(i32, i32, i64)>> = BTreeMap::new();
    for c in counts {
        for (&(ides, area, dinv), &k) in c {
            grouped
                .entry(ides)
                .or_default()
                .push((dinv as i32, area as i32, k as i64));
        }
    }
    let mut out = QSymF::zero(n);
    for (s, terms) in grouped {
        out.add_term(s, &QTPoly::from_counts(terms));
    }
    out
}
