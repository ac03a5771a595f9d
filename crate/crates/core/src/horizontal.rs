//! Spectral horizontal data and the derived functions `Q`, `R`, `P`.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::RationalFn;
use crate::roots::Interval;
use crate::scalar::{cmp_scalar, Scalar};

/// One eigenvalue `beta` of the curvature endomorphism, its multiplicity,
/// and the trace of the Ricci endomorphism over the eigenbundle.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralBlock<K> {
    pub beta: K,
    pub multiplicity: u32,
    pub ricci_trace: K,
}

impl<K: Scalar> SpectralBlock<K> {
    pub fn new(beta: K, multiplicity: u32, ricci_trace: K) -> Self {
        SpectralBlock { beta, multiplicity, ricci_trace }
    }

    /// `1 − beta τ`.
    pub fn factor(&self) -> Poly<K> {
        Poly::linear(K::one(), -self.beta.clone())
    }
}

pub type MomentumInterval<K> = Interval<K>;

/// Which sign convention to use for the atom constructor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AtomReading {
    /// `Q = (1 + (k/α) τ)^m`, compatible on `[0, ∞)`.
    #[default]
    Compatible,
    /// `Q = (1 − (k/α) τ)^m` on `[0, α/k)`.
    Literal,
}

/// Blocks with distinct betas (sorted ascending) and a compatible interval.
#[derive(Clone, Debug, PartialEq)]
pub struct HorizontalData<K> {
    blocks: Vec<SpectralBlock<K>>,
    interval: Interval<K>,
}

fn merge_blocks<K: Scalar>(mut blocks: Vec<SpectralBlock<K>>) -> Vec<SpectralBlock<K>> {
    blocks.sort_by(|a, b| cmp_scalar(&a.beta, &b.beta));
    let mut out: Vec<SpectralBlock<K>> = Vec::with_capacity(blocks.len());
    for b in blocks {
        match out.last_mut() {
            Some(last) if last.beta.approx_eq(&b.beta) => {
                last.multiplicity += b.multiplicity;
                last.ricci_trace = last.ricci_trace.clone() + b.ricci_trace;
            }
            _ => out.push(b),
        }
    }
    out
}

/// `1 − x beta > 0` (or `≥ 0` when `closed` is false) at a finite endpoint.
fn endpoint_ok<K: Scalar>(beta: &K, x: &K, closed: bool) -> bool {
    let v = K::one() - x.clone() * beta.clone();
    if closed {
        v.sign() > 0
    } else {
        v.sign() >= 0
    }
}

impl<K: Scalar> HorizontalData<K> {
    pub fn new(blocks: Vec<SpectralBlock<K>>, interval: Interval<K>) -> Result<Self> {
        if let Some(b) = blocks.iter().find(|b| b.multiplicity == 0) {
            return Err(Error::InvalidInput(format!("block with beta {} has multiplicity 0", b.beta)));
        }
        if let (Some(a), Some(b)) = (&interval.lower, &interval.upper) {
            if a >= b {
                return Err(Error::InvalidInput(format!("empty momentum interval ({a}, {b})")));
            }
        }
        let blocks = merge_blocks(blocks);
        for b in &blocks {
            let ok = match b.beta.sign() {
                0 => true,
                1 => interval.upper.as_ref().is_some_and(|u| endpoint_ok(&b.beta, u, interval.closed_upper)),
                _ => interval.lower.as_ref().is_some_and(|l| endpoint_ok(&b.beta, l, interval.closed_lower)),
            };
            if !ok {
                return Err(Error::Precondition(format!("block beta = {} is not compatible with the momentum interval", b.beta)));
            }
        }
        Ok(HorizontalData { blocks, interval })
    }

    /// Point base (no blocks) on the given interval.
    pub fn point_base(interval: Interval<K>) -> Self {
        HorizontalData { blocks: Vec::new(), interval }
    }

    /// Single block `(beta, multiplicity, ricci_trace)` on `[0, ∞)`.
    pub fn single(beta: K, multiplicity: u32, ricci_trace: K) -> Result<Self> {
        Self::new(vec![SpectralBlock::new(beta, multiplicity, ricci_trace)], Interval::nonnegative_half_line())
    }

    pub fn blocks(&self) -> &[SpectralBlock<K>] {
        &self.blocks
    }

    pub fn interval(&self) -> &Interval<K> {
        &self.interval
    }

    pub fn with_interval(&self, interval: Interval<K>) -> Result<Self> {
        Self::new(self.blocks.clone(), interval)
    }

    /// Base dimension `m`.
    pub fn dim(&self) -> u32 {
        self.blocks.iter().map(|b| b.multiplicity).sum()
    }

    /// All betas vanish: the bundle is flat.
    pub fn is_flat(&self) -> bool {
        self.blocks.iter().all(|b| b.beta.is_zero())
    }

    /// `Q(τ) = Π (1 − b_i τ)^{k_i}`.
    pub fn q(&self) -> Poly<K> {
        self.blocks.iter().fold(Poly::one(), |acc, b| &acc * &b.factor().pow(b.multiplicity))
    }

    /// `R(τ) = Σ r_i / (1 − b_i τ)`.
    pub fn r(&self) -> RationalFn<K> {
        self.blocks.iter().fold(RationalFn::zero(), |acc, b| {
            let term = RationalFn::new(Poly::constant(b.ricci_trace.clone()), b.factor()).expect("block factor is nonzero");
            &acc + &term
        })
    }

    /// `Q R` as a polynomial, built term by term.
    pub fn qr(&self) -> Poly<K> {
        let mut acc = Poly::zero();
        for (i, bi) in self.blocks.iter().enumerate() {
            let mut term = Poly::constant(bi.ricci_trace.clone());
            for (j, bj) in self.blocks.iter().enumerate() {
                let e = if i == j { bj.multiplicity - 1 } else { bj.multiplicity };
                term = &term * &bj.factor().pow(e);
            }
            acc = &acc + &term;
        }
        acc
    }

    /// `P = 2 Q R`.
    pub fn p(&self) -> Poly<K> {
        self.qr().scale(&K::from_i64(2))
    }

    /// Checks `P = 2·Q·R` with zero remainder.
    pub fn verify_p(&self) -> Result<()> {
        let qr = &RationalFn::from_poly(self.q()) * &self.r();
        match qr.as_poly() {
            Some(p) if p == self.qr() => Ok(()),
            _ => Err(Error::Invariant("P differs from 2QR".into())),
        }
    }

    /// `R(0) = Σ r_i`.
    pub fn r_at_zero(&self) -> K {
        self.blocks.iter().fold(K::zero(), |acc, b| acc + b.ricci_trace.clone())
    }

    /// `R(∞)`: the Ricci trace over the flat (`beta = 0`) block.
    pub fn r_infinity(&self) -> Result<K> {
        if self.interval.upper.is_some() {
            return Err(Error::Precondition("R(inf) needs an interval unbounded above".into()));
        }
        Ok(self.blocks.iter().filter(|b| b.beta.is_zero()).fold(K::zero(), |acc, b| acc + b.ricci_trace.clone()))
    }

    /// Product of data over the same interval; equal betas merge.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.interval != other.interval {
            return Err(Error::InvalidInput("product of data with different intervals".into()));
        }
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        Self::new(blocks, self.interval.clone())
    }

    /// Re-bases at `ω_M − a γ`: the momentum interval shifts by `−a`.
    pub fn translate(&self, a: &K) -> Result<Self> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let f = K::one() - a.clone() * b.beta.clone();
            if f.sign() <= 0 {
                return Err(Error::Precondition(format!("translation by {a} makes the base form degenerate (beta = {})", b.beta)));
            }
            blocks.push(SpectralBlock::new(b.beta.clone() / f.clone(), b.multiplicity, b.ricci_trace.clone() / f));
        }
        Self::new(blocks, self.interval.shift(&(-a.clone())))
    }

    /// Dual bundle: betas and the interval change sign.
    pub fn invert(&self) -> Result<Self> {
        let blocks = self.blocks.iter().map(|b| SpectralBlock::new(-b.beta.clone(), b.multiplicity, b.ricci_trace.clone())).collect();
        Self::new(blocks, self.interval.reflect())
    }

    /// Hodge manifold of dimension `m`, scalar curvature `sigma`, line bundle
    /// with curvature `−2π k ω / α`.
    pub fn make_atom(m: u32, sigma: K, k: u32, alpha: K, reading: AtomReading) -> Result<Self> {
        if m == 0 || k == 0 || alpha.sign() <= 0 {
            return Err(Error::InvalidInput("atom needs m >= 1, k >= 1, alpha > 0".into()));
        }
        let ratio = K::from_i64(k as i64) / alpha.clone();
        let block = |beta: K| vec![SpectralBlock::new(beta, m, sigma.clone())];
        match reading {
            AtomReading::Compatible => Self::new(block(-ratio), Interval::nonnegative_half_line()),
            AtomReading::Literal => Self::new(block(ratio.clone()), Interval::new(Some(K::zero()), Some(K::one() / ratio), true, false)),
        }
    }

    /// Projectivised stable bundle of rank `n` and degree `k` over a curve of
    /// genus `g`, with base form `s_C ω_C + s_F ω_F`; scales are in units of `2π`.
    pub fn make_stable_curve(g: u32, n: u32, k: i64, s_c: K, s_f: K) -> Result<Self> {
        if g < 2 || n < 2 || k > 0 || s_c.sign() <= 0 || s_f.sign() <= 0 {
            return Err(Error::InvalidInput("stable curve data needs g >= 2, n >= 2, k <= 0, positive scales".into()));
        }
        let nk = K::from_i64(n as i64);
        let horizontal = SpectralBlock::new(K::from_i64(k) / nk.clone() / s_c.clone(), 1, K::from_i64(2 - 2 * g as i64) / s_c);
        let vertical = SpectralBlock::new(-(K::one() / s_f.clone()), n - 1, nk.clone() * (nk - K::one()) / s_f);
        Self::new(vec![horizontal, vertical], Interval::nonnegative_half_line())
    }

    /// `(beta, 1, 0)` on `[0, ∞)` with `beta < 0`.
    pub fn make_flat_plane(beta: K) -> Result<Self> {
        if beta.sign() >= 0 {
            return Err(Error::InvalidInput("flat-plane data needs beta < 0".into()));
        }
        Self::single(beta, 1, K::zero())
    }

    /// `(−k/2, 1, 1)` on `[0, ∞)`: the family containing the Burns and
    /// Eguchi–Hanson metrics.
    pub fn d1(k: i64) -> Result<Self> {
        Self::single(K::ratio(-k, 2), 1, K::one())
    }

    /// `(beta, 1, lambda)` on `[0, ∞)`.
    pub fn d3(beta: K, lambda: K) -> Result<Self> {
        Self::single(beta, 1, lambda)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    type H = HorizontalData<Rational>;
    type P = Poly<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn blk(b: Rational, k: u32, r: Rational) -> SpectralBlock<Rational> {
        SpectralBlock::new(b, k, r)
    }

    #[test]
    fn q_examples() {
        assert_eq!(H::point_base(Interval::nonnegative_half_line()).q(), P::one());
        for k in 0..5 {
            let d = H::d1(k).unwrap();
            assert_eq!(d.q(), P::new(vec![q(1, 1), q(k, 2)]));
        }
        let d = H::new(vec![blk(q(-1, 1), 2, q(0, 1)), blk(q(-2, 1), 1, q(0, 1))], Interval::nonnegative_half_line()).unwrap();
        assert_eq!(d.q(), &P::from_i64s(&[1, 1]).pow(2) * &P::from_i64s(&[1, 2]));
    }

    #[test]
    fn r_and_p_examples() {
        let pb = H::point_base(Interval::nonnegative_half_line());
        assert!(pb.r().is_zero());
        assert!(pb.p().is_zero());
        let d = H::single(q(-1, 2), 1, q(1, 1)).unwrap();
        let expect = RationalFn::new(P::from_i64s(&[1]), P::new(vec![q(1, 1), q(1, 2)])).unwrap();
        assert_eq!(d.r(), expect);
        let flat = H::single(q(0, 1), 2, q(-3, 1)).unwrap();
        assert_eq!(flat.r(), RationalFn::constant(q(-3, 1)));
        let e = H::single(q(-1, 1), 1, q(1, 1)).unwrap();
        assert_eq!(e.p(), P::from_i64s(&[2]));
        assert_eq!(e.p().eval(&q(2, 1)), q(2, 1));
    }

    #[test]
    fn atom_data() {
        let a = H::make_atom(1, q(1, 1), 2, q(1, 1), AtomReading::Compatible).unwrap();
        assert_eq!(a.blocks(), &[blk(q(-2, 1), 1, q(1, 1))]);
        let z = H::make_atom(1, q(0, 1), 3, q(2, 1), AtomReading::Compatible).unwrap();
        assert!(z.r().is_zero());
        for m in 1..4u32 {
            let a = H::make_atom(m, q(3, 1), 2, q(3, 1), AtomReading::Compatible).unwrap();
            let base = P::new(vec![q(1, 1), q(2, 3)]);
            assert_eq!(a.q(), base.pow(m));
            assert_eq!(a.p(), base.pow(m - 1).scale(&q(6, 1)));
        }
        let lit = H::make_atom(2, q(1, 1), 1, q(1, 1), AtomReading::Literal).unwrap();
        assert_eq!(lit.q(), P::from_i64s(&[1, -1]).pow(2));
        assert_eq!(lit.interval().upper, Some(q(1, 1)));
    }

    #[test]
    fn stable_curve_and_flat_plane() {
        // g=2, n=2, k=-2 with both scales 2π (i.e. 1 in units of 2π)
        let d = H::make_stable_curve(2, 2, -2, q(1, 1), q(1, 1)).unwrap();
        assert_eq!(d.blocks(), &[blk(q(-1, 1), 2, q(0, 1))]);
        // vertical pairing n·beta_vert·s_F = −n
        let d = H::make_stable_curve(3, 4, -1, q(2, 1), q(3, 1)).unwrap();
        let vert = d.blocks().iter().find(|b| b.multiplicity == 3).unwrap();
        assert_eq!(q(4, 1) * vert.beta.clone() * q(3, 1), q(-4, 1));
        let f = H::make_flat_plane(q(-2, 1)).unwrap();
        assert_eq!(f.q(), P::from_i64s(&[1, 2]));
        assert!(f.r().is_zero());
        assert!(H::make_flat_plane(q(1, 1)).is_err());
    }

    #[test]
    fn r_infinity_cases() {
        assert_eq!(H::d1(1).unwrap().r_infinity().unwrap(), q(0, 1));
        let d = H::new(vec![blk(q(0, 1), 3, q(5, 1)), blk(q(-1, 1), 1, q(2, 1))], Interval::nonnegative_half_line()).unwrap();
        assert_eq!(d.r_infinity().unwrap(), q(5, 1));
        assert_eq!(H::make_flat_plane(q(-1, 1)).unwrap().r_infinity().unwrap(), q(0, 1));
        let bounded = H::point_base(Interval::closed(q(-1, 1), q(1, 1)));
        assert!(bounded.r_infinity().is_err());
    }

    #[test]
    fn merging_and_product() {
        let a = H::single(q(-1, 1), 1, q(1, 1)).unwrap();
        let p = a.product(&a).unwrap();
        assert_eq!(p.blocks(), &[blk(q(-1, 1), 2, q(2, 1))]);
        let pb = H::point_base(Interval::nonnegative_half_line());
        assert_eq!(a.product(&pb).unwrap(), a);
        let other = H::point_base(Interval::positive_half_line());
        assert!(a.product(&other).is_err());
    }

    #[test]
    fn translate_and_invert_examples() {
        let d = H::single(q(-1, 1), 1, q(2, 1)).unwrap();
        assert_eq!(d.translate(&q(0, 1)).unwrap(), d);
        let t = d.translate(&q(1, 1)).unwrap();
        assert_eq!(t.blocks(), &[blk(q(-1, 2), 1, q(1, 1))]);
        assert_eq!(t.translate(&q(-1, 1)).unwrap(), d);
        let neg = H::new(vec![blk(q(-1, 1), 1, q(1, 1))], Interval::new(None, Some(q(0, 1)), false, true));
        assert!(neg.is_err());
        let pos = H::new(vec![blk(q(1, 1), 1, q(1, 1))], Interval::new(None, Some(q(0, 1)), false, true)).unwrap();
        let inv = pos.invert().unwrap();
        assert_eq!(inv.blocks(), &[blk(q(-1, 1), 1, q(1, 1))]);
        assert_eq!(inv.interval(), &Interval::nonnegative_half_line());
        assert_eq!(inv.invert().unwrap(), pos);
        assert_eq!(inv.q(), pos.q().compose_affine(&q(-1, 1), &q(0, 1)));
    }

    #[test]
    fn compatibility_is_enforced() {
        assert!(H::single(q(1, 1), 1, q(0, 1)).is_err());
        let i = Interval::new(Some(q(0, 1)), Some(q(1, 1)), true, false);
        assert!(H::new(vec![blk(q(1, 1), 1, q(0, 1))], i.clone()).is_ok());
        let ic = Interval::closed(q(0, 1), q(1, 1));
        assert!(H::new(vec![blk(q(1, 1), 1, q(0, 1))], ic).is_err());
        assert!(H::new(vec![blk(q(-1, 1), 0, q(0, 1))], i).is_err());
    }

    pub(crate) fn arb_data() -> impl Strategy<Value = H> {
        prop::collection::vec((-6i64..=0, 1i64..=3, 1u32..=3, -5i64..=5, 1i64..=3), 0..=4).prop_map(|v| {
            let blocks = v.into_iter().map(|(bn, bd, k, rn, rd)| blk(q(bn, bd), k, q(rn, rd))).collect();
            H::new(blocks, Interval::nonnegative_half_line()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn q_r_p_invariants(d in arb_data()) {
            prop_assert_eq!(d.q().eval(&q(0, 1)), q(1, 1));
            prop_assert_eq!(d.r().eval(&q(0, 1)).unwrap(), d.r_at_zero());
            prop_assert!(d.verify_p().is_ok());
            prop_assert!(crate::roots::is_positive_on(&d.q(), d.interval()));
        }

        #[test]
        fn product_identities(a in arb_data(), b in arb_data()) {
            let p = a.product(&b).unwrap();
            prop_assert_eq!(p.q(), &a.q() * &b.q());
            prop_assert_eq!(p.r(), &a.r() + &b.r());
        }

        #[test]
        fn translate_identity(d in arb_data(), an in 0i64..=6, ad in 1i64..=3) {
            let a = q(an, ad);
            let t = d.translate(&a).unwrap();
            let shifted = d.q().compose_affine(&q(1, 1), &a);
            let norm = d.q().eval(&a);
            prop_assert_eq!(t.q(), shifted.scale(&(q(1, 1) / norm)));
            prop_assert_eq!(t.translate(&(-a)).unwrap(), d);
        }
    }
}
