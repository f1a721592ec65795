//! Symmetric functions in the power-sum basis.
//!
//! Coefficients are [`ZPoly`]s: Laurent in `z`, rational in `q` and `t`.
//! Both plethystic substitutions used here act on power sums one at a
//! time (`p_k -> c_k p_k` or `p_k -> p_k + a_k`), so everything stays in
//! this basis. Monomial and fundamental forms are derived on demand.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{BigInt, One};

use crate::error::{Error, Result};
use crate::qt::{poch_zq, q_int, q_pochhammer, QTPoly, QTRatio, Rational, ZPoly};
use crate::quasisym::{expand_in_fundamentals, MultiPoly, QSymF};

/// Largest degree the plethystic routines accept.
pub const DEGREE_BOUND: usize = 10;

/// An integer partition, parts weakly decreasing and positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u8>);

impl Partition {
    pub fn new(mut parts: Vec<u8>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    /// Multiset union of parts.
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::new(parts)
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(u8, usize)> {
        let mut out: Vec<(u8, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `z_λ = prod_i i^(m_i) m_i!`.
    pub fn z_lambda(&self) -> BigInt {
        self.multiplicities()
            .into_iter()
            .fold(BigInt::one(), |acc, (p, m)| {
                let fact: BigInt = (1..=m).map(BigInt::from).product();
                acc * BigInt::from(p).pow(m as u32) * fact
            })
    }

    /// Every partition of `n`.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(remaining: usize, cap: usize, prefix: &mut Vec<u8>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for p in (1..=remaining.min(cap)).rev() {
                prefix.push(p as u8);
                rec(remaining - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(&self.0).expect("array"))
    }
}

/// Compositions of `n` with exactly `k` parts, lexicographic.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<u8>> {
    fn rec(n: usize, k: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if k == 0 {
            if n == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for p in 1..=n.saturating_sub(k - 1) {
            prefix.push(p as u8);
            rec(n - p, k - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

/// A symmetric function as `partition -> coefficient` over power sums.
#[derive(Clone, Default)]
pub struct PExpansion {
    terms: BTreeMap<Partition, ZPoly>,
}

impl PExpansion {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Partition::empty(), ZPoly::one())
    }

    pub fn term(lambda: Partition, c: ZPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(lambda, c);
        out
    }

    pub fn add_term(&mut self, lambda: Partition, c: ZPoly) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&lambda) {
            Some(existing) => &existing + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(lambda, sum);
        }
    }

    pub fn coeff(&self, lambda: &Partition) -> ZPoly {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &ZPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &PExpansion) -> PExpansion {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PExpansion) -> PExpansion {
        self.add(&other.scale(&QTRatio::from(QTPoly::from_int(-1))))
    }

    pub fn mul(&self, other: &PExpansion) -> PExpansion {
        let mut out = PExpansion::zero();
        for (l1, c1) in &self.terms {
            for (l2, c2) in &other.terms {
                out.add_term(l1.merge(l2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &QTRatio) -> PExpansion {
        let mut out = PExpansion::zero();
        for (l, v) in &self.terms {
            out.add_term(l.clone(), v.scale(c));
        }
        out
    }

    pub fn scale_z(&self, c: &ZPoly) -> PExpansion {
        let mut out = PExpansion::zero();
        for (l, v) in &self.terms {
            out.add_term(l.clone(), v * c);
        }
        out
    }

    /// Degree of the largest partition present, if any.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|l| l.degree()).max()
    }

    pub fn is_homogeneous(&self, degree: usize) -> bool {
        self.terms.keys().all(|l| l.degree() == degree)
    }

    pub fn is_z_free(&self) -> bool {
        self.terms.values().all(|c| c.is_z_free())
    }

    /// Coefficient of `z^e`, partition by partition.
    pub fn z_coeff(&self, e: i32) -> PExpansion {
        let mut out = PExpansion::zero();
        for (l, v) in &self.terms {
            out.add_term(l.clone(), ZPoly::from(v.coeff(e)));
        }
        out
    }

    /// JSON object from partition (descending array, as a string key) to
    /// the canonical coefficient string.
    pub fn to_json(&self) -> String {
        let mut map = serde_json::Map::new();
        for (l, c) in &self.terms {
            map.insert(l.to_string(), serde_json::Value::String(c.to_string()));
        }
        serde_json::Value::Object(map).to_string()
    }
}

impl PartialEq for PExpansion {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl fmt::Debug for PExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PExpansion({})", self.to_json())
    }
}

fn check_degree(what: &'static str, n: usize) -> Result<()> {
    if n > DEGREE_BOUND {
        return Err(Error::BoundExceeded {
            what,
            value: n,
            bound: DEGREE_BOUND,
        });
    }
    Ok(())
}

fn newton(n: usize, signed: bool) -> Result<PExpansion> {
    check_degree("degree", n)?;
    let mut out = PExpansion::zero();
    for lambda in Partition::all(n) {
        let sign = if signed && (n - lambda.len()) % 2 == 1 {
            -1
        } else {
            1
        };
        let c = Rational::new(BigInt::from(sign), lambda.z_lambda());
        out.add_term(lambda, ZPoly::from(QTRatio::from_rational(c)));
    }
    Ok(out)
}

/// `e_n = sum over λ ⊢ n of (-1)^(n - ℓ(λ)) p_λ / z_λ`.
pub fn e_in_p(n: usize) -> Result<PExpansion> {
    newton(n, true)
}

/// `h_m = sum over λ ⊢ m of p_λ / z_λ`.
pub fn h_in_p(m: usize) -> Result<PExpansion> {
    newton(m, false)
}

pub fn p_pure(n: usize) -> Result<PExpansion> {
    check_degree("degree", n)?;
    if n == 0 {
        return Ok(PExpansion::one());
    }
    Ok(PExpansion::term(
        Partition::new(vec![n as u8]),
        ZPoly::one(),
    ))
}

/// How `p_k` transforms under a plethystic substitution, for `k = 1..`.
#[derive(Clone, Debug)]
pub enum AlphabetRule {
    /// `p_k -> c_k p_k`.
    Scale(Vec<ZPoly>),
    /// `p_k -> p_k + a_k`.
    Shift(Vec<ZPoly>),
}

impl AlphabetRule {
    /// `X -> X - (1 - 1/q)/z`: `a_k = -(1 - q^-k) z^-k`.
    pub fn creation_shift(max_k: usize) -> Self {
        AlphabetRule::Shift(
            (1..=max_k as i32)
                .map(|k| {
                    let c = QTPoly::q_pow(-k) - QTPoly::one();
                    ZPoly::monomial(-k, QTRatio::from(c))
                })
                .collect(),
        )
    }

    /// `X -> X (1 - z)/(1 - q)`: `c_k = (1 - z^k)/(1 - q^k)`.
    pub fn geometric_scale(max_k: usize) -> Self {
        AlphabetRule::Scale(
            (1..=max_k as i32)
                .map(|k| {
                    let inv = QTRatio::new(QTPoly::one(), QTPoly::one() - QTPoly::q_pow(k))
                        .expect("1 - q^k is nonzero");
                    let mut c = ZPoly::constant(inv.clone());
                    c.add_term(k, -inv);
                    c
                })
                .collect(),
        )
    }

    fn data(&self) -> &[ZPoly] {
        match self {
            AlphabetRule::Scale(v) | AlphabetRule::Shift(v) => v,
        }
    }

    fn get(&self, k: u8) -> Result<&ZPoly> {
        self.data()
            .get(k as usize - 1)
            .ok_or_else(|| Error::InvalidArgument(format!("substitution rule undefined for p_{k}")))
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Substitutes each `p_k` according to `rule` and re-expands.
pub fn pleth_apply(f: &PExpansion, rule: &AlphabetRule) -> Result<PExpansion> {
    let mut out = PExpansion::zero();
    for (lambda, c) in &f.terms {
        match rule {
            AlphabetRule::Scale(_) => {
                let mut factor = c.clone();
                for &k in lambda.parts() {
                    factor = &factor * rule.get(k)?;
                }
                out.add_term(lambda.clone(), factor);
            }
            AlphabetRule::Shift(_) => {
                // (p_k + a_k)^m = sum_j C(m, j) p_k^j a_k^(m-j), value by value
                let mut partial: Vec<(Vec<u8>, ZPoly)> = vec![(Vec::new(), c.clone())];
                for (k, m) in lambda.multiplicities() {
                    let a = rule.get(k)?;
                    let mut next = Vec::with_capacity(partial.len() * (m + 1));
                    for (parts, coef) in &partial {
                        for j in 0..=m {
                            let weight = QTRatio::from(QTPoly::from_int(binomial(m, j)));
                            let coef = (coef * &a.pow((m - j) as u32)).scale(&weight);
                            let mut parts = parts.clone();
                            parts.extend(std::iter::repeat_n(k, j));
                            next.push((parts, coef));
                        }
                    }
                    partial = next;
                }
                for (parts, coef) in partial {
                    out.add_term(Partition::new(parts), coef);
                }
            }
        }
    }
    Ok(out)
}

/// The creation operator
/// `C_a F = (-1/q)^(a-1) F[X - (1-1/q)/z] · sum_m z^m h_m[X] |_(z^a)`.
pub fn c_op(a: usize, f: &PExpansion) -> Result<PExpansion> {
    if a == 0 {
        return Err(Error::InvalidArgument("C_a needs a >= 1".into()));
    }
    if !f.is_z_free() {
        return Err(Error::ZDependent(f.to_json()));
    }
    let degree = f.max_degree().unwrap_or(0);
    check_degree("degree + a", degree + a)?;
    let max_part = f
        .terms
        .keys()
        .flat_map(|l| l.parts().iter().copied())
        .max()
        .unwrap_or(0);
    let shifted = pleth_apply(f, &AlphabetRule::creation_shift(max_part as usize))?;

    // z-exponents of the shifted form are >= -depth, so h_m with
    // m > a + depth cannot reach z^a.
    let depth = shifted
        .terms
        .values()
        .filter_map(|c| c.min_z())
        .map(|e| (-e).max(0) as usize)
        .max()
        .unwrap_or(0);
    debug_assert!(shifted.terms.values().all(|c| c.max_z().unwrap_or(0) <= 0));

    let sign = if (a - 1).is_multiple_of(2) { 1 } else { -1 };
    let prefactor = QTRatio::from(QTPoly::monomial(crate::qt::rat(sign), -(a as i32 - 1), 0));

    let mut out = PExpansion::zero();
    for m in 0..=a + depth {
        let h = h_in_p(m)?;
        let target = a as i32 - m as i32;
        for (lambda, g) in &shifted.terms {
            let c = g.coeff(target);
            if c.is_zero() {
                continue;
            }
            let c = &c * &prefactor;
            for (mu, hc) in &h.terms {
                out.add_term(lambda.merge(mu), hc.scale(&c));
            }
        }
    }
    if !out.is_z_free() {
        return Err(Error::ZDependent(out.to_json()));
    }
    if f.is_homogeneous(degree) && !out.is_homogeneous(degree + a) {
        return Err(Error::Consistency(format!(
            "C_{a} of a degree-{degree} function is not homogeneous"
        )));
    }
    Ok(out)
}

/// `C_(rho_1) ... C_(rho_k) 1`, applying `C_(rho_k)` first.
pub fn c_composition(rho: &[u8]) -> Result<PExpansion> {
    if rho.is_empty() || rho.contains(&0) {
        return Err(Error::InvalidArgument(format!(
            "{rho:?} is not a composition"
        )));
    }
    check_degree("degree", rho.iter().map(|&p| p as usize).sum())?;
    rho.iter()
        .rev()
        .try_fold(PExpansion::one(), |acc, &a| c_op(a as usize, &acc))
}

/// `E_(n,1), ..., E_(n,n)`, defined by
/// `e_n[X (1-z)/(1-q)] = sum_k (z;q)_k/(q;q)_k E_(n,k)`.
///
/// Solved top-down in `z`: only `k >= j` contributes to `z^j`. The full
/// identity, `z^0` included, is re-checked before returning.
pub fn e_nk(n: usize) -> Result<Vec<PExpansion>> {
    if n == 0 {
        return Err(Error::InvalidArgument("E_(n,k) needs n >= 1".into()));
    }
    check_degree("n", n)?;
    let lhs = pleth_apply(&e_in_p(n)?, &AlphabetRule::geometric_scale(n))?;
    let weights: Vec<ZPoly> = (0..=n)
        .map(|k| {
            poch_zq(k).scale(
                &QTRatio::from(QTPoly::one())
                    .div(&QTRatio::from(q_pochhammer(k)))
                    .expect("nonzero"),
            )
        })
        .collect();

    let mut e: Vec<PExpansion> = vec![PExpansion::zero(); n + 1];
    for j in (1..=n).rev() {
        let mut rest = lhs.z_coeff(j as i32);
        for (k, ek) in e.iter().enumerate().skip(j + 1) {
            rest = rest.sub(&ek.scale(&weights[k].coeff(j as i32)));
        }
        let pivot = weights[j].coeff(j as i32).inv()?;
        e[j] = rest.scale(&pivot);
        if !e[j].is_z_free() {
            return Err(Error::ZDependent(e[j].to_json()));
        }
    }

    let mut rebuilt = PExpansion::zero();
    for (k, ek) in e.iter().enumerate().skip(1) {
        rebuilt = rebuilt.add(&ek.scale_z(&weights[k]));
    }
    if rebuilt != lhs {
        return Err(Error::Consistency(format!(
            "E_(n,k) expansion for n={n} does not reproduce e_n[X(1-z)/(1-q)]"
        )));
    }
    e.remove(0);
    Ok(e)
}

/// Whether every `E_(n,k)` equals the sum of `C_(rho_1)...C_(rho_k) 1`
/// over compositions of `n` with `k` parts.
pub fn hmz_check(n: usize) -> Result<bool> {
    let e = e_nk(n)?;
    for (i, ek) in e.iter().enumerate() {
        let k = i + 1;
        let mut sum = PExpansion::zero();
        for rho in compositions(n, k) {
            sum = sum.add(&c_composition(&rho)?);
        }
        if &sum != ek {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `(-1)^(n-1) p_n = sum_k [n]_q/[k]_q E_(n,k)`.
pub fn pn_identity_check(n: usize) -> Result<bool> {
    let e = e_nk(n)?;
    let mut rhs = PExpansion::zero();
    for (i, ek) in e.iter().enumerate() {
        let ratio = QTRatio::new(q_int(n as i64)?, q_int(i as i64 + 1)?)?;
        rhs = rhs.add(&ek.scale(&ratio));
    }
    let sign = if (n - 1).is_multiple_of(2) { 1 } else { -1 };
    let lhs = p_pure(n)?.scale(&QTRatio::from(QTPoly::from_int(sign)));
    Ok(lhs == rhs)
}

/// Whether `sum_k E_(n,k) = e_n`.
pub fn enk_sum_check(n: usize) -> Result<bool> {
    let total = e_nk(n)?
        .iter()
        .fold(PExpansion::zero(), |acc, ek| acc.add(ek));
    Ok(total == e_in_p(n)?)
}

/// Expands a `z`-free function with polynomial coefficients into
/// monomials in `nvars` variables (`p_k = x_1^k + ... + x_nvars^k`).
pub fn to_monomials(f: &PExpansion, nvars: usize) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero(nvars);
    for (lambda, c) in &f.terms {
        if !c.is_z_free() {
            return Err(Error::ZDependent(c.to_string()));
        }
        let c = c
            .coeff(0)
            .to_poly()
            .ok_or_else(|| Error::NotPolynomial(c.to_string()))?;
        let mut power: HashMap<Vec<u8>, i64> = HashMap::from([(vec![0u8; nvars], 1)]);
        for &k in lambda.parts() {
            let mut next: HashMap<Vec<u8>, i64> = HashMap::new();
            for (exps, coef) in &power {
                for i in 0..nvars {
                    let mut e = exps.clone();
                    e[i] += k;
                    *next.entry(e).or_default() += coef;
                }
            }
            power = next;
        }
        let mut power: Vec<(Vec<u8>, i64)> = power.into_iter().collect();
        power.sort();
        for (exps, coef) in power {
            out.add_term(exps, &c.scale(&crate::qt::rat(coef)));
        }
    }
    Ok(out)
}

/// Fundamental-basis coordinates of a homogeneous degree-`n` function.
pub fn sym_to_qsym(f: &PExpansion, n: usize) -> Result<QSymF> {
    if !f.is_homogeneous(n) {
        return Err(Error::InvalidArgument(format!(
            "not homogeneous of degree {n}"
        )));
    }
    if !f.is_z_free() {
        return Err(Error::ZDependent(f.to_json()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let m = to_monomials(f, n)?.to_monomial_form(n)?;
    Ok(expand_in_fundamentals(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qt::{rat, rat_frac};
    use crate::subset::Subset;
    use num::Zero;

    fn p(parts: &[u8]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn c(x: Rational) -> ZPoly {
        ZPoly::from(QTRatio::from_rational(x))
    }

    #[test]
    fn partitions_and_z_lambda() {
        assert_eq!(Partition::all(4).len(), 5);
        assert_eq!(Partition::all(6).len(), 11);
        assert_eq!(p(&[2, 1, 1]).z_lambda(), BigInt::from(2 * 2));
        assert_eq!(p(&[1, 1, 1]).z_lambda(), BigInt::from(6));
        // sum of 1/z_λ over λ ⊢ n is 1
        for n in 1..=6 {
            let total: Rational = Partition::all(n)
                .iter()
                .map(|l| Rational::new(BigInt::one(), l.z_lambda()))
                .sum();
            assert_eq!(total, rat(1));
        }
        assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        assert_eq!((1..=5).map(|k| compositions(5, k).len()).sum::<usize>(), 16);
    }

    #[test]
    fn newton_expansions() {
        assert_eq!(e_in_p(1).unwrap(), h_in_p(1).unwrap());
        assert_eq!(e_in_p(1).unwrap(), p_pure(1).unwrap());
        let mut h2 = PExpansion::zero();
        h2.add_term(p(&[1, 1]), c(rat_frac(1, 2)));
        h2.add_term(p(&[2]), c(rat_frac(1, 2)));
        assert_eq!(h_in_p(2).unwrap(), h2);
        let mut e2 = PExpansion::zero();
        e2.add_term(p(&[1, 1]), c(rat_frac(1, 2)));
        e2.add_term(p(&[2]), c(rat_frac(-1, 2)));
        assert_eq!(e_in_p(2).unwrap(), e2);
        assert!(e_in_p(DEGREE_BOUND + 1).is_err());
    }

    #[test]
    fn e_n_monomials() {
        let m = to_monomials(&e_in_p(3).unwrap(), 3).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.coeff(&[1, 1, 1]), QTPoly::one());
    }

    #[test]
    fn plethysm_examples() {
        let f = e_in_p(3).unwrap();
        let ident = AlphabetRule::Scale(vec![ZPoly::one(); 3]);
        assert_eq!(pleth_apply(&f, &ident).unwrap(), f);

        let shifted = pleth_apply(&p_pure(1).unwrap(), &AlphabetRule::creation_shift(1)).unwrap();
        let mut expected = p_pure(1).unwrap();
        // -(1 - q^-1) z^-1
        expected.add_term(
            Partition::empty(),
            ZPoly::monomial(-1, QTRatio::from(QTPoly::q_pow(-1) - QTPoly::one())),
        );
        assert_eq!(shifted, expected);

        let scaled = pleth_apply(&e_in_p(1).unwrap(), &AlphabetRule::geometric_scale(1)).unwrap();
        let coef = scaled.coeff(&p(&[1]));
        let one_minus_q = QTRatio::from(QTPoly::one() - QTPoly::q());
        let mut expected = ZPoly::one();
        expected.add_term(1, QTRatio::from(QTPoly::from_int(-1)));
        assert_eq!(coef.scale(&one_minus_q), expected);

        assert!(pleth_apply(&p_pure(3).unwrap(), &AlphabetRule::geometric_scale(2)).is_err());
    }

    #[test]
    fn creation_operator_basics() {
        assert_eq!(c_op(1, &PExpansion::one()).unwrap(), p_pure(1).unwrap());
        assert_eq!(c_composition(&[1]).unwrap(), p_pure(1).unwrap());
        for a in 1..=4 {
            let out = c_op(a, &PExpansion::one()).unwrap();
            assert!(out.is_homogeneous(a) && out.is_z_free());
        }
        assert!(c_op(0, &PExpansion::one()).is_err());
        let zdep = PExpansion::term(Partition::empty(), ZPoly::monomial(1, QTRatio::one()));
        assert!(matches!(c_op(1, &zdep), Err(Error::ZDependent(_))));
        assert!(c_composition(&[]).is_err());
    }

    #[test]
    fn e_n1_for_n_1() {
        let e = e_nk(1).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0], p_pure(1).unwrap());
    }

    #[test]
    fn identities_small_n() {
        for n in 1..=4 {
            assert!(hmz_check(n).unwrap(), "hmz n={n}");
            assert!(pn_identity_check(n).unwrap(), "pn n={n}");
            assert!(enk_sum_check(n).unwrap(), "sum n={n}");
        }
    }

    #[test]
    fn n2_identity_by_hand() {
        let e = e_nk(2).unwrap();
        let rhs = e[0].scale(&QTRatio::from(q_int(2).unwrap())).add(&e[1]);
        let lhs = p_pure(2)
            .unwrap()
            .scale(&QTRatio::from(QTPoly::from_int(-1)));
        assert_eq!(lhs, rhs);
        assert_eq!(e[0], c_composition(&[2]).unwrap());
        assert_eq!(e[1], c_composition(&[1, 1]).unwrap());
    }

    #[test]
    fn to_fundamentals() {
        for n in 1..=4 {
            assert_eq!(
                sym_to_qsym(&h_in_p(n).unwrap(), n).unwrap(),
                QSymF::basis(Subset::empty(), n).unwrap()
            );
            assert_eq!(
                sym_to_qsym(&e_in_p(n).unwrap(), n).unwrap(),
                QSymF::basis(Subset::full(n), n).unwrap()
            );
        }
        let p2 = sym_to_qsym(&p_pure(2).unwrap(), 2).unwrap();
        let expected = QSymF::basis(Subset::empty(), 2)
            .unwrap()
            .sub(&QSymF::basis(Subset::from_elems([1]), 2).unwrap());
        assert_eq!(p2, expected);
        assert!(sym_to_qsym(&p_pure(2).unwrap(), 3).is_err());
    }

    #[test]
    fn to_fundamentals_is_linear() {
        let f = e_in_p(3).unwrap();
        let g = c_composition(&[2, 1]).unwrap();
        let lhs = sym_to_qsym(&f.add(&g), 3).unwrap();
        let rhs = sym_to_qsym(&f, 3)
            .unwrap()
            .add(&sym_to_qsym(&g, 3).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn scale_rule_is_multiplicative() {
        let rule = AlphabetRule::geometric_scale(4);
        let f = e_in_p(2).unwrap().add(&p_pure(1).unwrap());
        let g = h_in_p(2).unwrap();
        let lhs = pleth_apply(&f.mul(&g), &rule).unwrap();
        let rhs = pleth_apply(&f, &rule)
            .unwrap()
            .mul(&pleth_apply(&g, &rule).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn z_free_zero_is_ok() {
        assert!(PExpansion::zero().is_z_free());
        assert!(Rational::zero().is_zero());
    }
}
