//! Real-root isolation by Sturm sequences, positivity tests, and infima of
//! rational functions on the positive half-line.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::RationalFn;
use crate::scalar::{cmp_scalar, Scalar};

/// Default refinement width for isolated roots.
pub const DEFAULT_DELTA: f64 = 1e-12;

/// An interval of the real line; `None` bounds are infinite.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval<K> {
    pub lower: Option<K>,
    pub upper: Option<K>,
    pub closed_lower: bool,
    pub closed_upper: bool,
}

impl<K: Scalar> Interval<K> {
    pub fn new(lower: Option<K>, upper: Option<K>, closed_lower: bool, closed_upper: bool) -> Self {
        Interval { closed_lower: closed_lower && lower.is_some(), closed_upper: closed_upper && upper.is_some(), lower, upper }
    }

    pub fn open(lo: K, hi: K) -> Self {
        Self::new(Some(lo), Some(hi), false, false)
    }

    pub fn closed(lo: K, hi: K) -> Self {
        Self::new(Some(lo), Some(hi), true, true)
    }

    /// `(0, ∞)`.
    pub fn positive_half_line() -> Self {
        Self::new(Some(K::zero()), None, false, false)
    }

    /// `[0, ∞)`.
    pub fn nonnegative_half_line() -> Self {
        Self::new(Some(K::zero()), None, true, false)
    }

    pub fn real_line() -> Self {
        Self::new(None, None, false, false)
    }

    pub fn is_bounded(&self) -> bool {
        self.lower.is_some() && self.upper.is_some()
    }

    pub fn is_nonempty(&self) -> bool {
        match (&self.lower, &self.upper) {
            (Some(a), Some(b)) => a < b || (a == b && self.closed_lower && self.closed_upper),
            _ => true,
        }
    }

    pub fn contains(&self, x: &K) -> bool {
        let lo_ok = match &self.lower {
            None => true,
            Some(a) => x > a || (self.closed_lower && x == a),
        };
        let hi_ok = match &self.upper {
            None => true,
            Some(b) => x < b || (self.closed_upper && x == b),
        };
        lo_ok && hi_ok
    }

    /// A few distinct interior points, in a fixed order.
    pub fn interior_samples(&self) -> Vec<K> {
        let base: Vec<K> = match (&self.lower, &self.upper) {
            (Some(a), Some(b)) => {
                let w = b.clone() - a.clone();
                [(1, 2), (1, 3), (2, 3), (1, 7), (5, 7)].iter().map(|&(n, d)| a.clone() + w.clone() * K::ratio(n, d)).collect()
            }
            (Some(a), None) => [1, 2, 3, 5, 7].iter().map(|&k| a.clone() + K::from_i64(k)).collect(),
            (None, Some(b)) => [1, 2, 3, 5, 7].iter().map(|&k| b.clone() - K::from_i64(k)).collect(),
            (None, None) => [0, 1, -1, 2, -3].iter().map(|&k| K::from_i64(k)).collect(),
        };
        base
    }

    /// The reflected interval `-I`.
    pub fn reflect(&self) -> Self {
        Self::new(self.upper.clone().map(|u| -u), self.lower.clone().map(|l| -l), self.closed_upper, self.closed_lower)
    }

    /// The interval shifted by `s`.
    pub fn shift(&self, s: &K) -> Self {
        Self::new(
            self.lower.clone().map(|l| l + s.clone()),
            self.upper.clone().map(|u| u + s.clone()),
            self.closed_lower,
            self.closed_upper,
        )
    }
}

/// One real root of a polynomial, known to lie in `[lo, hi]` (exact when `lo == hi`).
#[derive(Clone, Debug, PartialEq)]
pub struct IsolatedRoot<K> {
    pub lo: K,
    pub hi: K,
    pub multiplicity: usize,
    /// Square-free factor that has this as its only root in `(lo, hi]`.
    pub factor: Poly<K>,
}

impl<K: Scalar> IsolatedRoot<K> {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> K {
        self.hi.clone() - self.lo.clone()
    }

    /// Midpoint, the working approximation of the root.
    pub fn approx(&self) -> K {
        if self.is_exact() {
            return self.lo.clone();
        }
        (self.lo.clone() + self.hi.clone()) * K::half()
    }

    /// One bisection step.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let m = self.approx();
        let fm = self.factor.eval(&m);
        if fm.is_zero() {
            self.lo = m.clone();
            self.hi = m;
            return;
        }
        let fh = self.factor.eval(&self.hi);
        if fm.sign() == fh.sign() {
            self.hi = m;
        } else {
            self.lo = m;
        }
    }

    /// Makes the root exact if the simplest value in `(lo, hi]` is a root.
    pub fn snap(&mut self) {
        if self.is_exact() {
            return;
        }
        if let Some(x) = K::simplest_between(&self.lo, &self.hi) {
            if x > self.lo && self.factor.eval(&x).is_zero() {
                self.lo = x.clone();
                self.hi = x;
            }
        }
    }

    /// Bisects until the width is below `delta`.
    pub fn refine(&mut self, delta: &K) {
        self.snap();
        let mut guard = 0;
        while !self.is_exact() && self.width() >= *delta && guard < 400 {
            self.bisect();
            guard += 1;
        }
        self.snap();
    }

    pub fn refined(mut self, delta: &K) -> Self {
        self.refine(delta);
        self
    }
}

/// Sturm sequence of a square-free polynomial. Every term after the first
/// is scaled by a positive constant (see [`Scalar::normalizer`]), which
/// leaves sign counts unchanged and keeps exact coefficients small.
pub fn sturm_chain<K: Scalar>(f: &Poly<K>) -> Vec<Poly<K>> {
    let unit = |p: Poly<K>| {
        let k = K::normalizer(p.coeffs());
        p.scale(&k)
    };
    let mut chain = vec![f.clone()];
    let d = f.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(unit(d));
    loop {
        let n = chain.len();
        let r = chain[n - 2].div_rem(&chain[n - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(unit(-&r));
    }
    chain
}

fn variations<K: Scalar>(chain: &[Poly<K>], x: &K) -> i64 {
    let mut last = 0;
    let mut v = 0;
    for p in chain {
        let s = p.eval(x).sign();
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// Number of distinct roots of a square-free `f` in `(a, b]`.
pub fn count_roots<K: Scalar>(chain: &[Poly<K>], a: &K, b: &K) -> i64 {
    variations(chain, a) - variations(chain, b)
}

/// A bound strictly exceeding the modulus of every root.
pub fn cauchy_bound<K: Scalar>(p: &Poly<K>) -> K {
    let lead = p.leading().abs();
    let mut m = K::zero();
    for c in &p.coeffs()[..p.coeffs().len().saturating_sub(1)] {
        let r = c.abs() / lead.clone();
        if r > m {
            m = r;
        }
    }
    m + K::one()
}

fn isolate_square_free<K: Scalar>(f: &Poly<K>, a: &K, b: &K, out: &mut Vec<(K, K)>) {
    let chain = sturm_chain(f);
    let n = count_roots(&chain, a, b);
    let mut stack = vec![(a.clone(), b.clone(), n, 0usize)];
    while let Some((lo, hi, n, depth)) = stack.pop() {
        if n <= 0 {
            continue;
        }
        if n == 1 || depth > 300 {
            if f.eval(&hi).is_zero() {
                out.push((hi.clone(), hi));
            } else {
                out.push((lo, hi));
            }
            continue;
        }
        let m = (lo.clone() + hi.clone()) * K::half();
        let nl = count_roots(&chain, &lo, &m);
        stack.push((m.clone(), hi, n - nl, depth + 1));
        stack.push((lo, m, nl, depth + 1));
    }
}

/// Isolates every real root of `p` in `interval`, sorted, pairwise disjoint.
pub fn isolate_real_roots<K: Scalar>(p: &Poly<K>, interval: &Interval<K>, delta: Option<&K>) -> Result<Vec<IsolatedRoot<K>>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots: Vec<IsolatedRoot<K>> = Vec::new();
    for (factor, mult) in p.square_free_decomposition() {
        let bound = cauchy_bound(&factor);
        let a = match &interval.lower {
            Some(l) => l.clone(),
            None => -bound.clone(),
        };
        let b = match &interval.upper {
            Some(u) => u.clone(),
            None => bound.clone(),
        };
        let mut raw = Vec::new();
        if interval.closed_lower && factor.eval(&a).is_zero() {
            raw.push((a.clone(), a.clone()));
        }
        if a < b {
            isolate_square_free(&factor, &a, &b, &mut raw);
        }
        for (lo, hi) in raw {
            if lo == hi && !interval.contains(&lo) {
                continue;
            }
            let mut root = IsolatedRoot { lo, hi, multiplicity: mult, factor: factor.clone() };
            root.snap();
            roots.push(root);
        }
    }
    roots.sort_by(|x, y| cmp_scalar(&x.lo, &y.lo));
    // Separate overlapping intervals coming from different factors.
    let mut guard = 0;
    loop {
        let mut clean = true;
        for i in 1..roots.len() {
            if roots[i - 1].hi >= roots[i].lo {
                clean = false;
                roots[i - 1].bisect();
                roots[i].bisect();
            }
        }
        roots.sort_by(|x, y| cmp_scalar(&x.lo, &y.lo));
        guard += 1;
        if clean || guard > 400 {
            break;
        }
    }
    if let Some(d) = delta {
        for r in &mut roots {
            r.refine(d);
        }
    }
    Ok(roots)
}

/// Distinct roots in the interval with their multiplicities, refined to `delta`.
pub fn real_roots_refined<K: Scalar>(p: &Poly<K>, interval: &Interval<K>, delta: f64) -> Result<Vec<IsolatedRoot<K>>> {
    isolate_real_roots(p, interval, Some(&K::from_f64(delta)))
}

fn nonroot_sample<K: Scalar>(p: &Poly<K>, interval: &Interval<K>) -> Option<K> {
    interval.interior_samples().into_iter().find(|x| !p.eval(x).is_zero())
}

/// `p(τ) > 0` for every `τ` in the interval.
pub fn is_positive_on<K: Scalar>(p: &Poly<K>, interval: &Interval<K>) -> bool {
    if p.is_zero() {
        return false;
    }
    match isolate_real_roots(p, interval, None) {
        Ok(r) if r.is_empty() => {}
        _ => return false,
    }
    match interval.interior_samples().first() {
        Some(x) => p.eval(x).sign() > 0,
        None => false,
    }
}

/// `p(τ) ≥ 0` for every `τ` in the interval.
pub fn is_nonnegative_on<K: Scalar>(p: &Poly<K>, interval: &Interval<K>) -> bool {
    if p.is_zero() {
        return true;
    }
    let open = Interval::new(interval.lower.clone(), interval.upper.clone(), false, false);
    let roots = match isolate_real_roots(p, &open, None) {
        Ok(r) => r,
        Err(_) => return false,
    };
    if roots.iter().any(|r| r.multiplicity % 2 == 1) {
        return false;
    }
    match nonroot_sample(p, &open) {
        Some(x) => p.eval(&x).sign() > 0,
        None => false,
    }
}

/// Smallest root in `(lower, ∞)`, if any.
pub fn first_root_above<K: Scalar>(p: &Poly<K>, lower: &K) -> Result<Option<IsolatedRoot<K>>> {
    let i = Interval::new(Some(lower.clone()), None, false, false);
    Ok(isolate_real_roots(p, &i, None)?.into_iter().next())
}

/// A point of the extended real line.
#[derive(Clone, Debug, PartialEq)]
pub enum Extended<K> {
    NegInfinity,
    Finite(K),
    PosInfinity,
}

impl<K: Scalar> Extended<K> {
    pub fn finite(&self) -> Option<&K> {
        match self {
            Extended::Finite(x) => Some(x),
            _ => None,
        }
    }

    fn le(&self, other: &Self) -> bool {
        match (self, other) {
            (Extended::NegInfinity, _) | (_, Extended::PosInfinity) => true,
            (Extended::Finite(a), Extended::Finite(b)) => a <= b,
            _ => false,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Extended::NegInfinity => f64::NEG_INFINITY,
            Extended::Finite(x) => x.to_f64(),
            Extended::PosInfinity => f64::INFINITY,
        }
    }
}

/// Where an infimum over `(0, ∞)` is approached.
#[derive(Clone, Debug, PartialEq)]
pub enum InfLocation<K> {
    Interior(IsolatedRoot<K>),
    AtZero,
    AtInfinity,
    AtPole(IsolatedRoot<K>),
}

/// Result of [`infimum_on_positive`].
#[derive(Clone, Debug, PartialEq)]
pub struct Infimum<K> {
    pub value: Extended<K>,
    pub attained: bool,
    pub location: InfLocation<K>,
}

/// Limit of `f` as `τ → 0⁺`.
pub fn limit_at_zero_right<K: Scalar>(f: &RationalFn<K>) -> Extended<K> {
    if let Some(v) = f.eval(&K::zero()) {
        return Extended::Finite(v);
    }
    let n = f.num();
    let d = f.den();
    let jn = n.low_order().unwrap_or(0);
    let jd = d.low_order().unwrap_or(0);
    let s = n.coeff(jn).sign() * d.coeff(jd).sign();
    if s > 0 {
        Extended::PosInfinity
    } else {
        Extended::NegInfinity
    }
}

/// Limit of `f` as `τ → +∞`.
pub fn limit_at_infinity<K: Scalar>(f: &RationalFn<K>) -> Extended<K> {
    match f.growth_degree() {
        None => Extended::Finite(K::zero()),
        Some(g) if g < 0 => Extended::Finite(K::zero()),
        Some(0) => Extended::Finite(f.num().leading() / f.den().leading()),
        Some(_) => {
            if (f.num().leading() / f.den().leading()).sign() > 0 {
                Extended::PosInfinity
            } else {
                Extended::NegInfinity
            }
        }
    }
}

/// Signs of `f` just left and right of a pole isolated by `root`.
fn pole_side_signs<K: Scalar>(f: &RationalFn<K>, root: &IsolatedRoot<K>) -> (i32, i32) {
    let others = {
        let rest = f.den().div_rem(&root.factor.pow(root.multiplicity as u32)).0;
        &rest * f.num()
    };
    let mut r = root.clone();
    let mut h = K::one();
    for _ in 0..200 {
        let (lo, hi) = if r.is_exact() { (r.lo.clone() - h.clone(), r.hi.clone() + h.clone()) } else { (r.lo.clone(), r.hi.clone()) };
        let clear = others.is_zero()
            || isolate_real_roots(&others, &Interval::closed(lo.clone(), hi.clone()), None).map(|v| v.is_empty()).unwrap_or(false);
        let factor_clear = r.is_exact() || (!r.factor.eval(&lo).is_zero() && lo > K::zero());
        if clear && factor_clear && lo > K::zero() {
            let sl = f.num().eval(&lo).sign() * f.den().eval(&lo).sign();
            let sh = f.num().eval(&hi).sign() * f.den().eval(&hi).sign();
            return (sl, sh);
        }
        if r.is_exact() {
            h = h * K::half();
        } else {
            r.bisect();
        }
    }
    (1, 1)
}

/// Infimum of a rational function over the open half-line `(0, ∞)`.
///
/// Poles inside the half-line are excluded as `+∞` limits unless `f`
/// tends to `−∞` on either side of one.
pub fn infimum_on_positive<K: Scalar>(f: &RationalFn<K>, delta: f64) -> Result<Infimum<K>> {
    let half_line = Interval::positive_half_line();
    let neg_inf = |loc| Infimum { value: Extended::NegInfinity, attained: false, location: loc };
    let at_zero = limit_at_zero_right(f);
    if at_zero == Extended::NegInfinity {
        return Ok(neg_inf(InfLocation::AtZero));
    }
    let at_inf = limit_at_infinity(f);
    if at_inf == Extended::NegInfinity {
        return Ok(neg_inf(InfLocation::AtInfinity));
    }
    if f.den().degree().unwrap_or(0) > 0 {
        for pole in isolate_real_roots(f.den(), &half_line, None)? {
            let (l, r) = pole_side_signs(f, &pole);
            if l < 0 || r < 0 {
                return Ok(neg_inf(InfLocation::AtPole(pole)));
            }
        }
    }
    // Limits: prefer the one at infinity on ties.
    let (mut best, mut attained, mut location) =
        if at_inf.le(&at_zero) { (at_inf, false, InfLocation::AtInfinity) } else { (at_zero, false, InfLocation::AtZero) };
    let dnum = f.derivative().num().clone();
    if !dnum.is_zero() {
        let d = K::from_f64(delta);
        for root in isolate_real_roots(&dnum, &half_line, Some(&d))? {
            let x = root.approx();
            let v = match f.eval(&x) {
                Some(v) => v,
                None => continue,
            };
            let cand = Extended::Finite(v);
            if cand.le(&best) {
                best = cand;
                attained = true;
                location = InfLocation::Interior(root);
            }
        }
    } else {
        // Constant function: every point attains the value.
        let one = K::one();
        if let Some(v) = f.eval(&one) {
            best = Extended::Finite(v);
            attained = true;
            location = InfLocation::Interior(IsolatedRoot {
                lo: one.clone(),
                hi: one,
                multiplicity: 1,
                factor: Poly::linear(-K::one(), K::one()),
            });
        }
    }
    Ok(Infimum { value: best, attained, location })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    type P = Poly<Rational>;
    type F = RationalFn<Rational>;

    fn p(cs: &[i64]) -> P {
        P::from_i64s(cs)
    }

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn pos() -> Interval<Rational> {
        Interval::positive_half_line()
    }

    #[test]
    fn isolates_simple_roots() {
        let r = isolate_real_roots(&p(&[0, 2, -1]), &pos(), None).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].lo <= q(2) && q(2) <= r[0].hi);
        let r = isolate_real_roots(&p(&[1, 0, -1]), &pos(), None).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].lo <= q(1) && q(1) <= r[0].hi);
        assert!(isolate_real_roots(&p(&[0, 2, 1]), &pos(), None).unwrap().is_empty());
        assert_eq!(isolate_real_roots(&P::zero(), &pos(), None), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn closed_and_open_endpoints() {
        let f = p(&[0, 2, -1]);
        let closed = Interval::closed(q(0), q(2));
        assert_eq!(isolate_real_roots(&f, &closed, None).unwrap().len(), 2);
        let open = Interval::open(q(0), q(2));
        assert!(isolate_real_roots(&f, &open, None).unwrap().is_empty());
    }

    #[test]
    fn multiplicities_and_refinement() {
        // (t-1)^2 (t-3) (t^2 - 2)
        let f = &(&p(&[-1, 1]).pow(2) * &p(&[-3, 1])) * &p(&[-2, 0, 1]);
        let d = Rational::from_f64(1e-12);
        let r = isolate_real_roots(&f, &Interval::real_line(), Some(&d)).unwrap();
        let got: Vec<(f64, usize)> = r.iter().map(|x| (x.approx().to_f64(), x.multiplicity)).collect();
        let want = [(-2f64.sqrt(), 1), (1.0, 2), (2f64.sqrt(), 1), (3.0, 1)];
        assert_eq!(got.len(), 4);
        for ((a, m), (b, n)) in got.iter().zip(want.iter()) {
            assert!((a - b).abs() < 1e-11, "{a} vs {b}");
            assert_eq!(m, n);
        }
        for x in &r {
            assert!(x.width() < d);
        }
    }

    #[test]
    fn positivity_examples() {
        assert!(is_positive_on(&p(&[0, 2, 1]), &pos()));
        assert!(!is_positive_on(&p(&[0, 2, -1]), &pos()));
        assert!(is_positive_on(&p(&[1]), &Interval::real_line()));
        assert!(!is_positive_on(&p(&[0, 2, 1]), &Interval::nonnegative_half_line()));
        assert!(is_nonnegative_on(&p(&[1, -2, 1]), &Interval::real_line()));
        assert!(!is_nonnegative_on(&p(&[0, 1]), &Interval::real_line()));
    }

    #[test]
    fn infimum_examples() {
        // 1/τ: 0, not attained, at infinity
        let f = F::new(p(&[1]), p(&[0, 1])).unwrap();
        let inf = infimum_on_positive(&f, 1e-12).unwrap();
        assert_eq!(inf.value, Extended::Finite(q(0)));
        assert!(!inf.attained);
        assert_eq!(inf.location, InfLocation::AtInfinity);
        // (τ-1)^2 + 1: 1 attained at τ = 1
        let g = F::from_poly(p(&[2, -2, 1]));
        let inf = infimum_on_positive(&g, 1e-12).unwrap();
        assert_eq!(inf.value, Extended::Finite(q(1)));
        assert!(inf.attained);
        match inf.location {
            InfLocation::Interior(r) => assert_eq!(r.approx(), q(1)),
            other => panic!("{other:?}"),
        }
        // τ - τ^3 is unbounded below
        let h = F::from_poly(p(&[0, 1, 0, -1]));
        assert_eq!(infimum_on_positive(&h, 1e-12).unwrap().value, Extended::NegInfinity);
        // 1/(τ-1) has a pole going to -∞ from the left
        let k = F::new(p(&[1]), p(&[-1, 1])).unwrap();
        assert_eq!(infimum_on_positive(&k, 1e-12).unwrap().value, Extended::NegInfinity);
        // 1/(τ-1)^2 + τ: the pole is +∞ on both sides and the local minimum
        // right of it exceeds the limit 1 at 0⁺
        let m = &F::new(p(&[1]), p(&[1, -2, 1])).unwrap() + &F::from_poly(p(&[0, 1]));
        let inf = infimum_on_positive(&m, 1e-12).unwrap();
        assert_eq!(inf.value, Extended::Finite(q(1)));
        assert!(!inf.attained);
        assert_eq!(inf.location, InfLocation::AtZero);
    }

    #[test]
    fn infimum_of_irrational_critical_point() {
        // τ + 2/τ has its minimum 2√2 at √2
        let f = F::new(p(&[2, 0, 1]), p(&[0, 1])).unwrap();
        let inf = infimum_on_positive(&f, 1e-12).unwrap();
        let v = inf.value.finite().unwrap().to_f64();
        assert!((v - 2.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    fn arb_roots() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-6i64..=6, 1..=6)
    }

    proptest! {
        #[test]
        fn product_roots_are_union(a in arb_roots(), b in arb_roots()) {
            let build = |rs: &[i64]| rs.iter().fold(P::one(), |acc, &r| &acc * &p(&[-r, 1]));
            let fa = build(&a);
            let fb = build(&b);
            let prod = &fa * &fb;
            let line = Interval::real_line();
            let roots = isolate_real_roots(&prod, &line, Some(&Rational::from_f64(1e-9))).unwrap();
            let mut expect = std::collections::BTreeMap::new();
            for r in a.iter().chain(b.iter()) {
                *expect.entry(*r).or_insert(0usize) += 1;
            }
            prop_assert_eq!(roots.len(), expect.len());
            for (root, (val, mult)) in roots.iter().zip(expect.iter()) {
                prop_assert!((root.approx().to_f64() - *val as f64).abs() < 1e-8);
                prop_assert_eq!(root.multiplicity, *mult);
            }
        }

        #[test]
        fn positivity_matches_sign_grid(cs in prop::collection::vec(-5i64..=5, 1..6)) {
            let f = p(&cs);
            prop_assume!(!f.is_zero());
            let i = Interval::closed(q(-3), q(3));
            let verdict = is_positive_on(&f, &i);
            let grid = (0..=10_000).all(|k| f.eval_f64(-3.0 + 6.0 * k as f64 / 10_000.0) > 0.0);
            if verdict {
                prop_assert!(grid);
            } else {
                let roots = isolate_real_roots(&f, &i, None).unwrap();
                prop_assert!(!grid || !roots.is_empty());
            }
        }

        #[test]
        fn infimum_is_a_lower_bound(num in prop::collection::vec(-4i64..=4, 1..5), den_shift in 1i64..4) {
            let n = p(&num);
            prop_assume!(!n.is_zero());
            let d = p(&[den_shift, 0, 1]);
            let f = F::new(n, d).unwrap();
            let inf = infimum_on_positive(&f, 1e-12).unwrap();
            let lo = inf.value.to_f64();
            for k in 1..=1000 {
                let x = 0.001 * k as f64 * (1.0 + (k % 7) as f64);
                prop_assert!(f.eval_f64(x) >= lo - 1e-9);
            }
            if let (true, InfLocation::Interior(r)) = (inf.attained, &inf.location) {
                let at = f.eval_f64(r.approx().to_f64());
                prop_assert!((at - lo).abs() < 1e-9);
            }
        }
    }
}
