//! Metrics on the total space of a vector bundle `E` of rank `n ≥ 2`, built
//! on the tautological line bundle over `P(E)` and blown down along `τ = 0`.

use crate::csc::{analyze, classify_profile, CscAnalysis, CscClassification, CscSetup, Family};
use crate::error::{Error, Result};
use crate::horizontal::{HorizontalData, SpectralBlock};
use crate::poly::Poly;
use crate::profile::{affine_parts, einstein_phi_q, scalar_curvature_from, u_of, EinsteinCheck, EinsteinFailure};
use crate::rational::RationalFn;
use crate::roots::Interval;
use crate::scalar::{cmp_scalar, Scalar};

/// Rank, horizontal blocks relative to the background `ω_M(τ0)`, and `τ0`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorBundleData<K> {
    rank: u32,
    blocks: Vec<SpectralBlock<K>>,
    tau0: K,
}

impl<K: Scalar> VectorBundleData<K> {
    /// Data relative to the background `ω_M(1)`.
    pub fn new(rank: u32, blocks: Vec<SpectralBlock<K>>) -> Result<Self> {
        Self::with_background(rank, blocks, K::one())
    }

    pub fn with_background(rank: u32, mut blocks: Vec<SpectralBlock<K>>, tau0: K) -> Result<Self> {
        if rank < 2 {
            return Err(Error::InvalidInput(format!("vector bundle rank must be at least 2, got {rank}")));
        }
        if !tau0.is_positive() {
            return Err(Error::InvalidInput("background tau0 must be positive".into()));
        }
        for b in &blocks {
            if b.multiplicity == 0 {
                return Err(Error::InvalidInput("block multiplicity must be positive".into()));
            }
            let at_zero = K::one() + tau0.clone() * b.beta.clone();
            if b.beta.is_positive() || !at_zero.is_positive() {
                return Err(Error::Precondition(format!("horizontal block beta = {} needs beta <= 0 and 1 + tau0 beta > 0", b.beta)));
            }
        }
        blocks.sort_by(|a, b| cmp_scalar(&a.beta, &b.beta));
        Ok(VectorBundleData { rank, blocks, tau0 })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn blocks(&self) -> &[SpectralBlock<K>] {
        &self.blocks
    }

    pub fn tau0(&self) -> &K {
        &self.tau0
    }

    /// Base dimension `d`.
    pub fn base_dim(&self) -> u32 {
        self.blocks.iter().map(|b| b.multiplicity).sum()
    }

    /// `1 − (τ − τ0) β`.
    fn factor(&self, b: &SpectralBlock<K>) -> Poly<K> {
        Poly::linear(K::one() + self.tau0.clone() * b.beta.clone(), -b.beta.clone())
    }

    fn n(&self) -> K {
        K::from_i64(self.rank as i64)
    }

    /// `Q = (τ/τ0)^{n−1} Π (1 − (τ − τ0) β)^k`.
    pub fn q(&self) -> Poly<K> {
        let vertical = Poly::monomial(K::one() / self.tau0.clone(), 1).pow(self.rank - 1);
        self.blocks.iter().fold(vertical, |acc, b| &acc * &self.factor(b).pow(b.multiplicity))
    }

    /// `R = n(n−1)/τ + Σ r/(1 − (τ − τ0)β)`.
    pub fn r(&self) -> RationalFn<K> {
        let n = self.n();
        let pole = RationalFn::new(Poly::constant(n.clone() * (n - K::one())), Poly::x()).expect("x is nonzero");
        self.blocks.iter().fold(pole, |acc, b| {
            let term = RationalFn::new(Poly::constant(b.ricci_trace.clone()), self.factor(b)).expect("nonzero factor");
            &acc + &term
        })
    }

    /// `R·Q`, which is a polynomial.
    pub fn qr(&self) -> Result<Poly<K>> {
        (&self.r() * &RationalFn::from_poly(self.q())).as_poly().ok_or_else(|| Error::Invariant("R Q is not a polynomial".into()))
    }

    /// `R(∞)`: the traces over flat blocks.
    pub fn r_infinity(&self) -> K {
        self.blocks.iter().filter(|b| b.beta.is_zero()).fold(K::zero(), |a, b| a + b.ricci_trace.clone())
    }

    /// The same geometry described relative to `ω_M(tau0)`.
    pub fn rebase(&self, tau0: &K) -> Result<Self> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let f = K::one() - (tau0.clone() - self.tau0.clone()) * b.beta.clone();
                if !f.is_positive() {
                    return Err(Error::Precondition(format!("background {tau0} degenerates the block beta = {}", b.beta)));
                }
                Ok(SpectralBlock::new(b.beta.clone() / f.clone(), b.multiplicity, b.ricci_trace.clone() / f))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_background(self.rank, blocks, tau0.clone())
    }

    /// Threshold setup; the pole of `R` forces `φ(0) = 0`, `φ'(0) = 2`.
    pub fn setup(&self) -> Result<CscSetup<K>> {
        let r_inf = self.r_infinity();
        let lower_bound = self.blocks.iter().filter(|b| !b.beta.is_zero()).fold(r_inf.clone(), |acc, b| {
            let at_zero = b.ricci_trace.clone() / (K::one() + self.tau0.clone() * b.beta.clone());
            acc + K::min_of(K::zero(), at_zero)
        });
        Ok(CscSetup { q: self.q(), qr: self.qr()?, r_inf, family: Family::C, lower_bound, r_zero: None })
    }

    /// Line-bundle data for `τ_E` over `P(E)` with base form `ω_M(τ0)`, in the
    /// momentum variable `τ − τ0`. Sweeping `τ0 → 0` collapses the zero section.
    pub fn line_data(&self) -> Result<HorizontalData<K>> {
        let n = self.n();
        let mut blocks = self.blocks.clone();
        blocks.push(SpectralBlock::new(-(K::one() / self.tau0.clone()), self.rank - 1, n.clone() * (n - K::one()) / self.tau0.clone()));
        HorizontalData::new(blocks, Interval::nonnegative_half_line())
    }

    /// Bundle of rank `n` and degree `k` over a curve of genus `g`, stable so
    /// that it carries a projectively flat connection; the base form has area
    /// `2π s` and the degree condition needs `k <= 0 < s − k/n`.
    pub fn make_stable_curve(g: u32, n: u32, k: i64, s: K) -> Result<Self> {
        let slope = K::from_i64(k) / K::from_i64(n as i64);
        let denom = s - slope.clone();
        if k > 0 || !denom.is_positive() {
            return Err(Error::InvalidInput("stable curve bundle needs k <= 0 and s > k/n".into()));
        }
        let block = SpectralBlock::new(slope / denom.clone(), 1, K::from_i64(2 - 2 * g as i64) / denom);
        Self::new(n, vec![block])
    }
}

/// `φQ = 2 ∫₀^τ (τ − x)(R − c) Q dx`.
pub fn csc_profile_c<K: Scalar>(v: &VectorBundleData<K>, c: &K) -> Result<RationalFn<K>> {
    Ok(v.setup()?.profile(c))
}

/// Scalar curvature of an arbitrary profile on vector-bundle data.
pub fn scalar_curvature_vb<K: Scalar>(v: &VectorBundleData<K>, phi: &RationalFn<K>) -> Result<RationalFn<K>> {
    Ok(scalar_curvature_from(&v.q(), &v.qr()?, phi))
}

/// Einstein profile with `(1/2Q)(φQ)' = n − λτ`.
pub fn einstein_profile_vb<K: Scalar>(v: &VectorBundleData<K>, lambda: &K) -> Result<RationalFn<K>> {
    let q = v.q();
    RationalFn::new(einstein_phi_q(&q, &v.n(), lambda), q)
}

/// `u = n − λτ` and `r + nβk = λ(1 + β)k` on every horizontal block, relative to `ω_M(1)`.
pub fn einstein_check_vb<K: Scalar>(v: &VectorBundleData<K>, phi: &RationalFn<K>) -> Result<EinsteinCheck<K>> {
    let base = if v.tau0 == K::one() { v.clone() } else { v.rebase(&K::one())? };
    let u = u_of(&base.q(), phi);
    let fail = |failure| Ok(EinsteinCheck { lambda: None, failure: Some(failure) });
    let Some((u0, u1)) = affine_parts(&u) else {
        return fail(EinsteinFailure::NotAffine);
    };
    let n = base.n();
    if !u0.approx_eq(&n) {
        return fail(EinsteinFailure::WrongOffset { expected: n, found: u0 });
    }
    let lambda = -u1;
    for (index, b) in base.blocks.iter().enumerate() {
        let k = K::from_i64(b.multiplicity as i64);
        let lhs = b.ricci_trace.clone() + n.clone() * b.beta.clone() * k.clone();
        let rhs = lambda.clone() * (K::one() + b.beta.clone()) * k;
        if !lhs.approx_eq(&rhs) {
            return fail(EinsteinFailure::BlockMismatch { index, beta: b.beta.clone(), lhs, rhs });
        }
    }
    // vertical block: Ricci eigenvalue n against π*ω_D eigenvalue 0 and γ eigenvalue −1
    debug_assert!((n.clone() + n.clone() * -K::one()).is_zero());
    Ok(EinsteinCheck { lambda: Some(lambda), failure: None })
}

/// Solves the block conditions for `λ` when they are consistent.
pub fn einstein_lambda_vb<K: Scalar>(v: &VectorBundleData<K>) -> Result<Option<K>> {
    let base = if v.tau0 == K::one() { v.clone() } else { v.rebase(&K::one())? };
    let n = base.n();
    let mut lambda: Option<K> = None;
    for b in &base.blocks {
        let k = K::from_i64(b.multiplicity as i64);
        let l = (b.ricci_trace.clone() + n.clone() * b.beta.clone() * k.clone()) / ((K::one() + b.beta.clone()) * k);
        match &lambda {
            Some(x) if !x.approx_eq(&l) => return Ok(None),
            _ => lambda = Some(l),
        }
    }
    Ok(Some(lambda.unwrap_or_else(K::zero)))
}

/// Scalar curvature `λ(n + d)` of the Einstein metric with constant `λ`.
pub fn einstein_scalar_curvature<K: Scalar>(v: &VectorBundleData<K>, lambda: &K) -> K {
    lambda.clone() * K::from_i64((v.rank + v.base_dim()) as i64)
}

pub fn c_threshold_vb<K: Scalar>(v: &VectorBundleData<K>) -> Result<CscAnalysis<K>> {
    analyze(&v.setup()?)
}

/// Classification with the Einstein test; habitat labels come from
/// [`crate::geometry::Habitat::vector_bundle_name`].
pub fn classify_csc_vb<K: Scalar>(v: &VectorBundleData<K>, c: &K) -> Result<CscClassification<K>> {
    let mut out = classify_profile(&v.setup()?, c)?;
    out.einstein = Some(einstein_check_vb(v, &out.phi)?);
    Ok(out)
}
