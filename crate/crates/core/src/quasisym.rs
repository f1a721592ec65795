//! Quasisymmetric functions in the fundamental basis.
//!
//! A degree-`n` quasisymmetric function is kept as its coordinates on the
//! fundamental basis `Q_S`, `S ⊆ {1..n-1}`. Explicit polynomials appear
//! only when converting from monomial data. `F_S` and `Q_S` name the same
//! basis element.

use std::collections::BTreeMap;

use crate::census::Census;
use crate::error::{Error, Result};
use crate::paths::{check_enumeration_bound, for_each_with_first, stats, PrefFunc, StatRecord};
use crate::perm::{inversions, next_permutation, word_ides, Perm};
use crate::qt::{q_int, QTPoly};
use crate::schedules;
use crate::subset::Subset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSymF {
    n: usize,
    coeffs: BTreeMap<Subset, QTPoly>,
}

impl QSymF {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    /// The single basis element `Q_S`.
    pub fn basis(s: Subset, n: usize) -> Result<Self> {
        check_subset(s, n)?;
        let mut out = Self::zero(n);
        out.add_term(s, &QTPoly::one());
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, s: Subset, c: &QTPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(s).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&s);
        }
    }

    pub fn coeff(&self, s: Subset) -> QTPoly {
        self.coeffs.get(&s).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Subset, &QTPoly)> {
        self.coeffs.iter().map(|(s, c)| (*s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &QTPoly) -> Self {
        let mut out = Self::zero(self.n);
        for (s, v) in &self.coeffs {
            out.add_term(*s, &(v * c));
        }
        out
    }

    pub fn add(&self, other: &QSymF) -> Self {
        assert_eq!(self.n, other.n, "degree mismatch");
        let mut out = self.clone();
        for (s, v) in &other.coeffs {
            out.add_term(*s, v);
        }
        out
    }

    pub fn sub(&self, other: &QSymF) -> Self {
        self.add(&other.scale(&QTPoly::from_int(-1)))
    }

    /// Forgets the basis index: the sum of all coordinates.
    pub fn specialize(&self) -> QTPoly {
        self.coeffs.values().cloned().sum()
    }

    /// JSON object from subset (sorted array, as a string key) to the
    /// canonical coefficient string; keys in lexicographic array order.
    pub fn to_json(&self) -> String {
        let mut entries: Vec<(Vec<u8>, &QTPoly)> =
            self.coeffs.iter().map(|(s, c)| (s.elems(), c)).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut map = serde_json::Map::new();
        for (elems, c) in entries {
            let key = serde_json::to_string(&elems).expect("array");
            map.insert(key, serde_json::Value::String(c.to_string()));
        }
        serde_json::Value::Object(map).to_string()
    }
}

fn check_subset(s: Subset, n: usize) -> Result<()> {
    if n == 0 || !s.is_subset_of(Subset::full(n)) {
        return Err(Error::InvalidArgument(format!(
            "{s} is not a subset of [{}]",
            n.saturating_sub(1)
        )));
    }
    Ok(())
}

/// Coordinates on the monomial quasisymmetric basis `M_α`, keyed by the
/// composition `α` of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialForm {
    n: usize,
    coeffs: BTreeMap<Vec<u8>, QTPoly>,
}

impl MonomialForm {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, composition: Vec<u8>, c: &QTPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(composition.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&composition);
        }
    }

    pub fn coeff(&self, composition: &[u8]) -> QTPoly {
        self.coeffs.get(composition).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &QTPoly)> {
        self.coeffs.iter().map(|(k, v)| (k.as_slice(), v))
    }
}

/// `Q_S = sum over T ⊇ S of M_T`.
pub fn q_fundamental(s: Subset, n: usize) -> Result<MonomialForm> {
    check_subset(s, n)?;
    let mut out = MonomialForm::zero(n);
    for t in Subset::all_of_degree(n).filter(|t| s.is_subset_of(*t)) {
        out.add_term(t.to_composition(n), &QTPoly::one());
    }
    Ok(out)
}

/// Inverse change of basis, `M_S = sum over T ⊇ S of (-1)^|T∖S| Q_T`.
pub fn expand_in_fundamentals(m: &MonomialForm) -> QSymF {
    let n = m.n;
    let mut out = QSymF::zero(n);
    for (composition, c) in &m.coeffs {
        let s = Subset::from_composition(composition);
        for t in Subset::all_of_degree(n).filter(|t| s.is_subset_of(*t)) {
            let sign = if t.difference(s).len() % 2 == 0 {
                1
            } else {
                -1
            };
            out.add_term(t, &c.scale(&crate::qt::rat(sign)));
        }
    }
    out
}

/// An explicit polynomial in `nvars` commuting variables with [`QTPoly`]
/// coefficients, keyed by exponent vector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u8>, QTPoly>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exponents: Vec<u8>, c: &QTPoly) {
        assert_eq!(exponents.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn coeff(&self, exponents: &[u8]) -> QTPoly {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &QTPoly)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Reads off the monomial quasisymmetric coordinates of a homogeneous
    /// degree-`n` quasisymmetric polynomial in at least `n` variables.
    pub fn to_monomial_form(&self, n: usize) -> Result<MonomialForm> {
        if self.nvars < n {
            return Err(Error::InvalidArgument(format!(
                "{} variables cannot resolve degree {n}",
                self.nvars
            )));
        }
        let mut out = MonomialForm::zero(n);
        let mut seen: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
        for (exps, c) in &self.terms {
            let degree: usize = exps.iter().map(|&e| e as usize).sum();
            if degree != n {
                return Err(Error::InvalidArgument(format!(
                    "term of degree {degree} in a degree-{n} polynomial"
                )));
            }
            let alpha: Vec<u8> = exps.iter().copied().filter(|&e| e > 0).collect();
            let mut leading = alpha.clone();
            leading.resize(self.nvars, 0);
            if &self.coeff(&leading) != c {
                return Err(Error::InvalidArgument(format!(
                    "not quasisymmetric at exponent {exps:?}"
                )));
            }
            *seen.entry(alpha.clone()).or_default() += 1;
            if exps == &leading {
                out.add_term(alpha, c);
            }
        }
        for (alpha, count) in seen {
            if count != binomial(self.nvars, alpha.len()) {
                return Err(Error::InvalidArgument(format!(
                    "not quasisymmetric: composition {alpha:?} appears {count} times"
                )));
            }
        }
        Ok(out)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Sum of `t^area q^dinv Q_ides` over the preference functions on `n` cars
/// whose record satisfies `keep`, reduced over `threads` workers.
pub fn weighted_sum<P>(n: usize, threads: usize, keep: P) -> Result<QSymF>
where
    P: Fn(&StatRecord) -> bool + Sync,
{
    check_enumeration_bound(n, crate::paths::DEFAULT_ENUMERATION_BOUND)?;
    let parts = crate::parallel::map_ordered(threads, 1..=n as u8, |first| {
        let mut counts: BTreeMap<(Subset, u32, u32), i64> = BTreeMap::new();
        for_each_with_first(n, first, |f| {
            let rec = stats(&PrefFunc::new(f.to_vec()).expect("enumerated values are valid"));
            if keep(&rec) {
                *counts
                    .entry((rec.ides, rec.area, rec.dinv.total()))
                    .or_default() += 1;
            }
        });
        counts
    })?;
    let mut out = QSymF::zero(n);
    for counts in parts {
        for ((s, area, dinv), c) in counts {
            out.add_term(s, &QTPoly::from_counts([(dinv as i32, area as i32, c)]));
        }
    }
    Ok(out)
}

/// Maximal sets of values `i, i+1, ..., j` that appear as adjacent,
/// left-to-right neighbours in a permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsecutiveBlocks {
    pub tau: Perm,
    /// In order of appearance in `tau`.
    pub blocks: Vec<Vec<u8>>,
}

pub fn consecutive_blocks(tau: &Perm) -> ConsecutiveBlocks {
    let w = tau.as_slice();
    let mut blocks: Vec<Vec<u8>> = Vec::new();
    for (i, &v) in w.iter().enumerate() {
        if i > 0 && w[i - 1] + 1 == v {
            blocks.last_mut().expect("nonempty").push(v);
        } else {
            blocks.push(vec![v]);
        }
    }
    ConsecutiveBlocks {
        tau: tau.clone(),
        blocks,
    }
}

impl ConsecutiveBlocks {
    /// Every element of the Young subgroup permuting values within blocks,
    /// as a one-line permutation of `1..=n`.
    pub fn young_subgroup(&self) -> Vec<Vec<u8>> {
        let n = self.tau.len();
        let mut blocks: Vec<Vec<u8>> = self.blocks.clone();
        blocks.iter_mut().for_each(|b| b.sort_unstable());
        let mut out = Vec::new();
        let mut current: Vec<Vec<u8>> = blocks.clone();
        loop {
            let mut word = vec![0u8; n];
            for (orig, perm) in blocks.iter().zip(&current) {
                for (pos, &v) in orig.iter().zip(perm) {
                    word[*pos as usize - 1] = v;
                }
            }
            out.push(word);
            // odometer over the blocks, last block fastest
            let mut advanced = false;
            for i in (0..current.len()).rev() {
                if next_permutation(&mut current[i]) {
                    advanced = true;
                    break;
                }
                current[i].sort_unstable();
            }
            if !advanced {
                break;
            }
        }
        out
    }
}

/// `(sum q^inv(π), sum q^inv(π) Q_{ides(τ) ∪ ides(π)})` over the Young
/// subgroup of the consecutive blocks of `tau`.
pub fn young_sums(tau: &Perm) -> (QTPoly, QSymF) {
    let n = tau.len();
    let base = tau.ides();
    let mut plain = QTPoly::zero();
    let mut graded = QSymF::zero(n);
    for pi in consecutive_blocks(tau).young_subgroup() {
        let w = QTPoly::q_pow(inversions(&pi) as i32);
        graded.add_term(base.union(word_ides(&pi)), &w);
        plain += &w;
    }
    (plain, graded)
}

#[derive(Clone, Debug)]
pub struct FactorCheck {
    pub lhs: QSymF,
    pub rhs: QSymF,
}

impl FactorCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Checks, in cross-multiplied form,
/// `(sum t^area q^dinv Q_ides) · Y = (sum t^area q^dinv) · Y_Q`
/// over preference functions with diagonal word `tau` and deviation `l`,
/// where `Y`, `Y_Q` are the Young subgroup sums of [`young_sums`].
/// The left sum comes from `census`; the ides-free sum from the closed form.
pub fn factor_check_in(census: &Census, tau: &Perm, l: usize) -> Result<FactorCheck> {
    let plain = schedules::pref_closed_form(tau, l)?;
    let lhs_sum = census.qsym_sum(tau, Some(l as u32));
    let (y, y_q) = young_sums(tau);
    Ok(FactorCheck {
        lhs: lhs_sum.scale(&y),
        rhs: y_q.scale(&plain),
    })
}

/// [`factor_check_in`] with a fresh brute-force census of `n = |tau|`.
pub fn factor_check(tau: &Perm, l: usize) -> Result<bool> {
    schedules::check_deviation(tau, l)?;
    let census = Census::build(tau.len(), 0)?;
    Ok(factor_check_in(&census, tau, l)?.holds())
}

/// `W_pref(τ)·[k]_q` and `[n]_q·W_pf(τ)` for the refinement by `ides` of
/// the all-deviations sum; equal when the refinement holds.
pub fn withides_sides(census: &Census, tau: &Perm) -> (QSymF, QSymF) {
    let n = tau.len() as i64;
    let k = tau.runs().last().map(|r| r.len()).unwrap_or(0) as i64;
    let all = census.qsym_sum(tau, None);
    let parking = census.qsym_sum(tau, Some(0));
    (
        all.scale(&q_int(k).expect("k >= 1")),
        parking.scale(&q_int(n).expect("n >= 1")),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qt::rat;

    /// Expands the defining sum over `a_1 <= ... <= a_n` with strict steps
    /// at `S`, in `nvars` variables.
    fn fundamental_polynomial(s: Subset, n: usize, nvars: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(nvars);
        let mut a = vec![1u8; n];
        loop {
            let ok = (1..n).all(|i| {
                let strict = s.contains(i as u8);
                if strict {
                    a[i - 1] < a[i]
                } else {
                    a[i - 1] <= a[i]
                }
            });
            if ok {
                let mut exps = vec![0u8; nvars];
                for &v in &a {
                    exps[v as usize - 1] += 1;
                }
                out.add_term(exps, &QTPoly::one());
            }
            if !crate::paths::odometer_step(&mut a, nvars as u8) {
                break;
            }
        }
        out
    }

    #[test]
    fn fundamental_matches_defining_sum() {
        for n in 1..=5 {
            for s in Subset::all_of_degree(n) {
                let poly = fundamental_polynomial(s, n, n);
                let from_poly = poly.to_monomial_form(n).unwrap();
                assert_eq!(from_poly, q_fundamental(s, n).unwrap(), "S={s} n={n}");
            }
        }
    }

    #[test]
    fn degenerate_fundamentals() {
        let n = 4;
        let h = q_fundamental(Subset::empty(), n).unwrap();
        assert_eq!(h.terms().count(), 1 << (n - 1));
        let e = q_fundamental(Subset::full(n), n).unwrap();
        assert_eq!(
            e.terms().map(|(a, _)| a.to_vec()).collect::<Vec<_>>(),
            vec![vec![1; n]]
        );

        let q1 = q_fundamental(Subset::from_elems([1]), 2).unwrap();
        assert_eq!(
            q1.terms().map(|(a, _)| a.to_vec()).collect::<Vec<_>>(),
            vec![vec![1, 1]]
        );
        let q0 = q_fundamental(Subset::empty(), 2).unwrap();
        assert_eq!(q0.coeff(&[2]), QTPoly::one());
        assert_eq!(q0.coeff(&[1, 1]), QTPoly::one());
        assert!(q_fundamental(Subset::from_elems([2]), 2).is_err());
    }

    #[test]
    fn basis_round_trip() {
        for n in 1..=8 {
            for s in Subset::all_of_degree(n) {
                let back = expand_in_fundamentals(&q_fundamental(s, n).unwrap());
                assert_eq!(back, QSymF::basis(s, n).unwrap());
            }
        }
    }

    #[test]
    fn h2_and_e2_from_polynomials() {
        let mut h2 = MultiPoly::zero(2);
        h2.add_term(vec![2, 0], &QTPoly::one());
        h2.add_term(vec![1, 1], &QTPoly::one());
        h2.add_term(vec![0, 2], &QTPoly::one());
        let f = expand_in_fundamentals(&h2.to_monomial_form(2).unwrap());
        assert_eq!(f, QSymF::basis(Subset::empty(), 2).unwrap());

        let mut e2 = MultiPoly::zero(2);
        e2.add_term(vec![1, 1], &QTPoly::one());
        let f = expand_in_fundamentals(&e2.to_monomial_form(2).unwrap());
        assert_eq!(f, QSymF::basis(Subset::from_elems([1]), 2).unwrap());

        let mut lopsided = MultiPoly::zero(2);
        lopsided.add_term(vec![2, 0], &QTPoly::one());
        assert!(lopsided.to_monomial_form(2).is_err());
    }

    #[test]
    fn weighted_sum_examples() {
        let one = weighted_sum(1, 1, |_| true).unwrap();
        assert_eq!(one, QSymF::basis(Subset::empty(), 1).unwrap());

        let target: PrefFunc = "1,5,1,2,1".parse().unwrap();
        let single = weighted_sum(5, 2, |r| r.f == target).unwrap();
        let mut expected = QSymF::zero(5);
        expected.add_term(
            Subset::from_elems([1, 2, 3]),
            &QTPoly::monomial(rat(1), 2, 5),
        );
        assert_eq!(single, expected);

        let tau: Perm = "23145".parse().unwrap();
        let fig = weighted_sum(5, 0, |r| r.deviation == 0 && r.diagword == tau).unwrap();
        assert_eq!(fig.specialize().eval_at_one(), rat(12));
    }

    #[test]
    fn weighted_sum_agrees_with_census() {
        let census = Census::build(4, 2).unwrap();
        let direct = weighted_sum(4, 3, |r| r.touch == 2).unwrap();
        let via = census.qsym_where(|p, _| p.runs().last().unwrap().len() == 2);
        assert_eq!(direct, via);
    }

    #[test]
    fn blocks_of_example() {
        let tau: Perm = "895467123".parse().unwrap();
        let b = consecutive_blocks(&tau);
        assert_eq!(
            b.blocks,
            vec![vec![8, 9], vec![5], vec![4], vec![6, 7], vec![1, 2, 3]]
        );
        assert_eq!(b.young_subgroup().len(), 2 * 2 * 6);
        assert_eq!(
            consecutive_blocks(&Perm::identity(4)).blocks,
            vec![vec![1, 2, 3, 4]]
        );
        assert_eq!(consecutive_blocks(&Perm::reverse(4)).blocks.len(), 4);
    }

    #[test]
    fn young_sum_is_product_of_q_factorials() {
        let tau: Perm = "34578126".parse().unwrap();
        let (plain, graded) = young_sums(&tau);
        let expected = &crate::qt::q_factorial(3) * &crate::qt::q_factorial(2);
        let expected = &expected * &crate::qt::q_factorial(2);
        assert_eq!(plain, expected);
        assert_eq!(graded.specialize(), plain);
    }

    #[test]
    fn factor_lemma_examples() {
        assert!(factor_check(&"23145".parse().unwrap(), 1).unwrap());
        assert!(factor_check(&Perm::identity(4), 0).unwrap());
        assert!(factor_check(&Perm::identity(4), 1).is_err());
    }

    #[test]
    fn json_serialization() {
        let mut f = QSymF::zero(3);
        f.add_term(Subset::from_elems([2]), &QTPoly::q());
        f.add_term(Subset::empty(), &QTPoly::one());
        f.add_term(Subset::from_elems([1, 2]), &QTPoly::t());
        assert_eq!(f.to_json(), r#"{"[]":"1","[1,2]":"t","[2]":"q"}"#);
    }
}
