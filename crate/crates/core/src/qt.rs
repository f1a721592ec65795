//! Exact coefficient arithmetic.
//!
//! [`QTPoly`] is a sparse Laurent polynomial in `q` and `t` over the
//! rationals. [`QTRatio`] is a quotient of two of them, compared by
//! cross-multiplication. [`ZPoly`] is a Laurent polynomial in a third
//! variable `z` whose coefficients are [`QTRatio`]s.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse Laurent polynomial in `q` and `t` with rational coefficients.
///
/// Terms are keyed by `(q exponent, t exponent)`; iteration order is
/// lexicographic on that pair, which is also the serialization order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct QTPoly {
    terms: BTreeMap<(i32, i32), Rational>,
}

impl QTPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn monomial(c: Rational, q_exp: i32, t_exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(q_exp, t_exp, c);
        p
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn t() -> Self {
        Self::t_pow(1)
    }

    pub fn q_pow(e: i32) -> Self {
        Self::monomial(Rational::one(), e, 0)
    }

    pub fn t_pow(e: i32) -> Self {
        Self::monomial(Rational::one(), 0, e)
    }

    /// Builds a polynomial from `(q exponent, t exponent, integer count)`
    /// triples, summing repeated keys.
    pub fn from_counts<I>(counts: I) -> Self
    where
        I: IntoIterator<Item = (i32, i32, i64)>,
    {
        let mut p = Self::zero();
        for (qe, te, c) in counts {
            p.add_term(qe, te, rat(c));
        }
        p
    }

    pub fn add_term(&mut self, q_exp: i32, t_exp: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (q_exp, t_exp);
        let remove = match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += c;
                existing.is_zero()
            }
            None => {
                self.terms.insert(key, c);
                false
            }
        };
        if remove {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i32, &Rational)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn coeff(&self, q_exp: i32, t_exp: i32) -> Rational {
        self.terms
            .get(&(q_exp, t_exp))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Largest term in lexicographic `(q, t)` order.
    pub fn leading(&self) -> Option<((i32, i32), &Rational)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c))
    }

    pub fn q_range(&self) -> Option<(i32, i32)> {
        let lo = self.terms.keys().map(|k| k.0).min()?;
        let hi = self.terms.keys().map(|k| k.0).max()?;
        Some((lo, hi))
    }

    pub fn t_range(&self) -> Option<(i32, i32)> {
        let lo = self.terms.keys().map(|k| k.1).min()?;
        let hi = self.terms.keys().map(|k| k.1).max()?;
        Some((lo, hi))
    }

    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|k| k.1 == 0)
    }

    pub fn has_nonnegative_exponents(&self) -> bool {
        self.terms.keys().all(|k| k.0 >= 0 && k.1 >= 0)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, q_exp: i32, t_exp: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a + q_exp, b + t_exp), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Sum of all coefficients, i.e. the value at `q = t = 1`.
    pub fn eval_at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, c| a + c)
    }

    /// Evaluates at rational `q`, `t`. Returns `None` when a negative power
    /// of a zero argument is required.
    pub fn eval(&self, q: &Rational, t: &Rational) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (&(a, b), c) in &self.terms {
            acc += c * rat_pow(q, a)? * rat_pow(t, b)?;
        }
        Some(acc)
    }

    /// Substitutes `t = 1`, leaving a polynomial in `q` alone.
    pub fn at_t_one(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, _), c) in &self.terms {
            out.add_term(a, 0, c.clone());
        }
        out
    }

    /// Exact division. Returns `None` unless `divisor` divides `self`
    /// with zero remainder.
    pub fn div_exact(&self, divisor: &QTPoly) -> Option<QTPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // The quotient of an exact division lives in this exponent box.
        let (aq, bq) = (self.q_range()?, divisor.q_range()?);
        let (at, bt) = (self.t_range()?, divisor.t_range()?);
        let q_lo = aq.0 - bq.0;
        let q_hi = aq.1 - bq.1;
        let t_lo = at.0 - bt.0;
        let t_hi = at.1 - bt.1;
        if q_lo > q_hi || t_lo > t_hi {
            return None;
        }
        let ((dq, dt), dc) = divisor.leading()?;
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some(((rq, rt), rc)) = rem.leading() {
            let (eq, et) = (rq - dq, rt - dt);
            if eq < q_lo || eq > q_hi || et < t_lo || et > t_hi {
                return None;
            }
            let c = rc / &dc;
            rem -= &divisor.mul_monomial(eq, et).scale(&c);
            quotient.add_term(eq, et, c);
        }
        Some(quotient)
    }

    fn single_term(&self) -> Option<(i32, i32, &Rational)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }
}

fn rat_pow(x: &Rational, e: i32) -> Option<Rational> {
    if e >= 0 {
        Some(num::pow::pow(x.clone(), e as usize))
    } else if x.is_zero() {
        None
    } else {
        Some(num::pow::pow(x.recip(), (-e) as usize))
    }
}

impl fmt::Debug for QTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QTPoly({self})")
    }
}

fn write_monomial(out: &mut String, var: &str, e: i32) {
    if e == 0 {
        return;
    }
    if !out.is_empty() {
        out.push('*');
    }
    out.push_str(var);
    if e != 1 {
        out.push('^');
        out.push_str(&e.to_string());
    }
}

/// Canonical form: terms ascending in `(q, t)`, e.g. `1 + q + q*t^2`,
/// `-1/2*q^-1 - 3*t`.
impl fmt::Display for QTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut mono = String::new();
            write_monomial(&mut mono, "q", a);
            write_monomial(&mut mono, "t", b);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add<&QTPoly> for &QTPoly {
    type Output = QTPoly;
    fn add(self, rhs: &QTPoly) -> QTPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&QTPoly> for &QTPoly {
    type Output = QTPoly;
    fn sub(self, rhs: &QTPoly) -> QTPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&QTPoly> for QTPoly {
    fn add_assign(&mut self, rhs: &QTPoly) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, c.clone());
        }
    }
}

impl SubAssign<&QTPoly> for QTPoly {
    fn sub_assign(&mut self, rhs: &QTPoly) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, -c.clone());
        }
    }
}

impl Mul<&QTPoly> for &QTPoly {
    type Output = QTPoly;
    fn mul(self, rhs: &QTPoly) -> QTPoly {
        let mut out = QTPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &QTPoly {
    type Output = QTPoly;
    fn neg(self) -> QTPoly {
        QTPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $m:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned_binop!(QTPoly, Add, add);
forward_owned_binop!(QTPoly, Sub, sub);
forward_owned_binop!(QTPoly, Mul, mul);

impl Neg for QTPoly {
    type Output = QTPoly;
    fn neg(self) -> QTPoly {
        -&self
    }
}

impl std::iter::Sum for QTPoly {
    fn sum<I: Iterator<Item = QTPoly>>(iter: I) -> QTPoly {
        let mut acc = QTPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

/// `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn q_int(n: i64) -> Result<QTPoly> {
    if n <= 0 {
        return Err(Error::InvalidArgument(format!(
            "q-integer needs n >= 1, got {n}"
        )));
    }
    Ok(QTPoly::from_counts((0..n as i32).map(|i| (i, 0, 1))))
}

pub fn q_factorial(n: usize) -> QTPoly {
    (1..=n).fold(QTPoly::one(), |acc, i| {
        &acc * &q_int(i as i64).expect("positive")
    })
}

/// `(q;q)_k = (1-q)(1-q^2)...(1-q^k)`.
pub fn q_pochhammer(k: usize) -> QTPoly {
    (1..=k as i32).fold(QTPoly::one(), |acc, i| {
        &acc * &(QTPoly::one() - QTPoly::q_pow(i))
    })
}

/// `(z;q)_k = (1-z)(1-zq)...(1-zq^(k-1))` as a polynomial in `z`.
pub fn poch_zq(k: usize) -> ZPoly {
    let mut acc = ZPoly::one();
    for i in 0..k as i32 {
        let mut factor = ZPoly::one();
        factor.add_term(1, QTRatio::from(-QTPoly::q_pow(i)));
        acc = &acc * &factor;
    }
    acc
}

/// Quotient of two [`QTPoly`]s.
///
/// Equality is decided by cross-multiplication. Constructors and
/// arithmetic cancel what is cheap to cancel: monomial denominators,
/// exact divisions, and univariate `q` gcds when neither side involves `t`.
#[derive(Clone)]
pub struct QTRatio {
    num: QTPoly,
    den: QTPoly,
}

impl QTRatio {
    pub fn new(num: QTPoly, den: QTPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::tidy(num, den))
    }

    pub fn zero() -> Self {
        Self {
            num: QTPoly::zero(),
            den: QTPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from(QTPoly::one())
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from(QTPoly::constant(c))
    }

    pub fn num(&self) -> &QTPoly {
        &self.num
    }

    pub fn den(&self) -> &QTPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The polynomial this ratio equals, if the division is exact.
    pub fn to_poly(&self) -> Option<QTPoly> {
        if self.den.is_one() {
            return Some(self.num.clone());
        }
        self.num.div_exact(&self.den)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &QTRatio) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::tidy(self.num.scale(c), self.den.clone())
    }

    pub fn eval(&self, q: &Rational, t: &Rational) -> Option<Rational> {
        let d = self.den.eval(q, t)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(q, t)? / d)
    }

    fn tidy(num: QTPoly, den: QTPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some((a, b, c)) = den.single_term() {
            return Self {
                num: num.mul_monomial(-a, -b).scale(&c.recip()),
                den: QTPoly::one(),
            };
        }
        if let Some(p) = num.div_exact(&den) {
            return Self {
                num: p,
                den: QTPoly::one(),
            };
        }
        let (mut num, mut den) = (num, den);
        if num.is_t_free() && den.is_t_free() {
            let g = univariate_gcd(&num, &den);
            if g.len() > 1 {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        // Shift so the denominator starts at q^0 t^0 and is monic.
        let (qlo, _) = den.q_range().expect("nonzero");
        let (tlo, _) = den.t_range().expect("nonzero");
        let lc = den.leading().expect("nonzero").1.recip();
        Self {
            num: num.mul_monomial(-qlo, -tlo).scale(&lc),
            den: den.mul_monomial(-qlo, -tlo).scale(&lc),
        }
    }
}

/// Gcd of two `t`-free Laurent polynomials, as a monic polynomial in `q`
/// with nonnegative exponents and nonzero constant term.
fn univariate_gcd(a: &QTPoly, b: &QTPoly) -> QTPoly {
    fn dense(p: &QTPoly) -> Vec<Rational> {
        let (lo, hi) = p.q_range().expect("nonzero");
        let mut v = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, _, c) in p.terms() {
            v[(e - lo) as usize] = c.clone();
        }
        v
    }
    fn trim(v: &mut Vec<Rational>) {
        while v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
    }
    let mut x = dense(a);
    let mut y = dense(b);
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        // x mod y
        let lead = y.last().unwrap().clone();
        while x.len() >= y.len() {
            let shift = x.len() - y.len();
            let c = x.last().unwrap() / &lead;
            for (i, yc) in y.iter().enumerate() {
                x[i + shift] -= &c * yc;
            }
            x.pop();
            trim(&mut x);
        }
        std::mem::swap(&mut x, &mut y);
    }
    let lead = x.last().cloned().unwrap_or_else(Rational::one);
    QTPoly::from_iter_dense(x.iter().map(|c| c / &lead))
}

impl QTPoly {
    fn from_iter_dense<I: Iterator<Item = Rational>>(coeffs: I) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.enumerate() {
            p.add_term(i as i32, 0, c);
        }
        p
    }
}

impl From<QTPoly> for QTRatio {
    fn from(num: QTPoly) -> Self {
        Self {
            num,
            den: QTPoly::one(),
        }
    }
}

/// `a/b = c/d` iff `a*d = c*b`.
pub fn ratio_eq(a: &QTRatio, b: &QTRatio) -> bool {
    &a.num * &b.den == &b.num * &a.den
}

impl PartialEq for QTRatio {
    fn eq(&self, other: &Self) -> bool {
        ratio_eq(self, other)
    }
}

impl fmt::Debug for QTRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QTRatio({self})")
    }
}

impl fmt::Display for QTRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add<&QTRatio> for &QTRatio {
    type Output = QTRatio;
    fn add(self, rhs: &QTRatio) -> QTRatio {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QTRatio::tidy(&self.num + &rhs.num, self.den.clone());
        }
        if let Some(k) = self.den.div_exact(&rhs.den) {
            return QTRatio::tidy(&self.num + &(&rhs.num * &k), self.den.clone());
        }
        if let Some(k) = rhs.den.div_exact(&self.den) {
            return QTRatio::tidy(&(&self.num * &k) + &rhs.num, rhs.den.clone());
        }
        QTRatio::tidy(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for &QTRatio {
    type Output = QTRatio;
    fn neg(self) -> QTRatio {
        QTRatio {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for QTRatio {
    type Output = QTRatio;
    fn neg(self) -> QTRatio {
        -&self
    }
}

impl Sub<&QTRatio> for &QTRatio {
    type Output = QTRatio;
    fn sub(self, rhs: &QTRatio) -> QTRatio {
        self + &(-rhs)
    }
}

impl Mul<&QTRatio> for &QTRatio {
    type Output = QTRatio;
    fn mul(self, rhs: &QTRatio) -> QTRatio {
        if self.is_zero() || rhs.is_zero() {
            return QTRatio::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QTRatio::from(&self.num * &rhs.num);
        }
        QTRatio::tidy(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

forward_owned_binop!(QTRatio, Add, add);
forward_owned_binop!(QTRatio, Sub, sub);
forward_owned_binop!(QTRatio, Mul, mul);

impl AddAssign<&QTRatio> for QTRatio {
    fn add_assign(&mut self, rhs: &QTRatio) {
        *self = &*self + rhs;
    }
}

/// Laurent polynomial in `z` with [`QTRatio`] coefficients.
#[derive(Clone, Default)]
pub struct ZPoly {
    terms: BTreeMap<i32, QTRatio>,
}

impl ZPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(QTRatio::one())
    }

    pub fn constant(c: QTRatio) -> Self {
        let mut p = Self::zero();
        p.add_term(0, c);
        p
    }

    pub fn monomial(e: i32, c: QTRatio) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn add_term(&mut self, e: i32, c: QTRatio) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(existing) => &existing + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &QTRatio)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, e: i32) -> QTRatio {
        self.terms.get(&e).cloned().unwrap_or_else(QTRatio::zero)
    }

    pub fn is_z_free(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    pub fn min_z(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_z(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &QTRatio) -> Self {
        let mut out = Self::zero();
        for (&e, v) in &self.terms {
            out.add_term(e, v * c);
        }
        out
    }

    pub fn mul_z_pow(&self, k: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes a rational value for `z`.
    pub fn eval_z(&self, z: &Rational) -> Option<QTRatio> {
        let mut acc = QTRatio::zero();
        for (&e, c) in &self.terms {
            acc += &c.scale(&rat_pow(z, e)?);
        }
        Some(acc)
    }
}

impl PartialEq for ZPoly {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly({self})")
    }
}

/// `z`-free values print as their coefficient; otherwise terms ascend in
/// `z` as `(c)*z^e`, with the `z^0` term as a bare `(c)`.
impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.is_z_free() {
            return write!(f, "{}", self.coeff(0));
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add<&ZPoly> for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub<&ZPoly> for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        self + &(-rhs)
    }
}

impl Mul<&ZPoly> for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        let mut out = ZPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

forward_owned_binop!(ZPoly, Add, add);
forward_owned_binop!(ZPoly, Sub, sub);
forward_owned_binop!(ZPoly, Mul, mul);

impl From<QTRatio> for ZPoly {
    fn from(c: QTRatio) -> Self {
        Self::constant(c)
    }
}

impl From<QTPoly> for ZPoly {
    fn from(p: QTPoly) -> Self {
        Self::constant(QTRatio::from(p))
    }
}
