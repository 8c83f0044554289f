//! Dual F-signature machinery: the generator-count upper bound, the
//! surjection-chain lower bound, the two closed forms, the F-signature
//! estimate, and exact convergence tables.
//!
//! Two closed forms are in play and they do not agree in general:
//! `ceil(n/d) / n` and `ceil(d/n) / d`. The bounds computed here from exact
//! decompositions converge to the first; reports therefore surface both
//! values and an agreement flag instead of silently choosing one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::binomial;
use crate::frobenius::{decompose_roots, splitting_number, FrobeniusParams};
use crate::veronese::{GradedClass, VeroneseContext};

/// Cap on the bit length of `p^(n * e_max)` in [`convergence_table`].
const MAX_RANK_BITS: u64 = 4096;

/// One step of the surjection chain: `source_copies` copies of the class-`i`
/// summand surject onto `target_copies` copies of the canonical class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRecord {
    pub class_index: u32,
    pub source_copies: BigInt,
    pub target_copies: BigInt,
}

/// The chain of optimal surjections from the classes `0..=k` onto the
/// canonical class `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurjectionChain {
    ctx: VeroneseContext,
    canonical: GradedClass,
    records: Vec<ChainRecord>,
}

impl SurjectionChain {
    pub fn canonical_class(&self) -> GradedClass {
        self.canonical
    }

    /// Records for `i = 0..=k` in class order.
    pub fn records(&self) -> &[ChainRecord] {
        &self.records
    }

    pub fn record(&self, i: usize) -> &ChainRecord {
        &self.records[i]
    }
}

/// Build the chain from the base `(1, 1)` at the canonical class down to
/// class 0 through `e_i = (n+i) * e_{i+1}` and `f_i = (i+1) * f_{i+1}`.
///
/// The multiplier on the source side is `n+i`, which is what makes the ratio
/// `f_i/e_i = C(n+i-1, n-1) / C(n+k-1, n-1)` an exact identity; see the
/// chain tests.
pub fn surjection_chain(ctx: &VeroneseContext) -> SurjectionChain {
    let k = ctx.canonical_class().index();
    let n = ctx.variables() as u64;
    let mut records = vec![ChainRecord {
        class_index: k,
        source_copies: BigInt::one(),
        target_copies: BigInt::one(),
    }];
    for i in (0..k).rev() {
        let prev = records.last().expect("non-empty");
        records.push(ChainRecord {
            class_index: i,
            source_copies: (n + i as u64) * &prev.source_copies,
            target_copies: (i as u64 + 1) * &prev.target_copies,
        });
    }
    records.reverse();
    SurjectionChain {
        ctx: *ctx,
        canonical: ctx.canonical_class(),
        records,
    }
}

/// Generator-count upper bound on the number of canonical-class quotient
/// copies of the canonical root module:
/// `sum_{i=0..k} C(n+i-1, n-1) * n_i / C(n+k-1, n-1)`.
pub fn upper_bound(params: &FrobeniusParams) -> Result<BigRational> {
    let ctx = params.context();
    let k = ctx.canonical_class();
    let decomp = decompose_roots(params, k)?;
    let n = ctx.variables() as u64;
    let mut numerator = BigInt::zero();
    for i in 0..=k.index() as u64 {
        numerator += binomial(n + i - 1, n as i64 - 1) * decomp.multiplicity(i as usize);
    }
    Ok(BigRational::new(
        numerator,
        binomial(n + k.index() as u64 - 1, n as i64 - 1),
    ))
}

/// Chain-certified lower bound: `sum_{i=0..k} f_i * floor(n_i / e_i)` copies
/// of the canonical class are reachable by composing the chain surjections on
/// whole blocks of `e_i` summands; remainders are discarded, not packed.
pub fn lower_bound(params: &FrobeniusParams) -> Result<BigInt> {
    let ctx = params.context();
    let k = ctx.canonical_class();
    let decomp = decompose_roots(params, k)?;
    let chain = surjection_chain(ctx);
    let mut total = BigInt::zero();
    for rec in chain.records() {
        let n_i = decomp.multiplicity(rec.class_index as usize);
        total += &rec.target_copies * (n_i / &rec.source_copies);
    }
    Ok(total)
}

/// `ceil(n/d) / n`, the closed form the exact bounds converge to.
pub fn closed_form_limit(ctx: &VeroneseContext) -> BigRational {
    let n = ctx.variables() as u64;
    let d = ctx.degree() as u64;
    BigRational::new(BigInt::from(n.div_ceil(d)), BigInt::from(n))
}

/// `ceil(d/n) / d`, the alternative closed form; differs from
/// [`closed_form_limit`] whenever neither of `n`, `d` divides the other.
pub fn closed_form_alt(ctx: &VeroneseContext) -> BigRational {
    let n = ctx.variables() as u64;
    let d = ctx.degree() as u64;
    BigRational::new(BigInt::from(d.div_ceil(n)), BigInt::from(d))
}

pub fn closed_forms_agree(ctx: &VeroneseContext) -> bool {
    closed_form_limit(ctx) == closed_form_alt(ctx)
}

/// F-signature estimate at level `e`: splitting number over the root rank.
pub fn f_signature_estimate(params: &FrobeniusParams) -> Result<BigRational> {
    Ok(BigRational::new(
        splitting_number(params)?,
        params.root_rank(),
    ))
}

/// Exact signature data at one root exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureReport {
    pub variables: u32,
    pub degree: u32,
    pub prime: u64,
    pub exponent: u32,
    /// `p^{ne}`, the rank of the root module.
    pub rank: BigInt,
    pub upper_bound: BigRational,
    pub lower_bound: BigInt,
    pub upper_normalized: BigRational,
    pub lower_normalized: BigRational,
    /// Normalized `upper - lower`; how much the chain certificate leaves on
    /// the table at this exponent.
    pub gap_normalized: BigRational,
    pub closed_form_limit: BigRational,
    pub closed_form_alt: BigRational,
    pub closed_forms_agree: bool,
}

/// One report per exponent `e = 1..=e_max`.
pub fn convergence_table(
    ctx: &VeroneseContext,
    p: u64,
    e_max: u32,
) -> Result<Vec<SignatureReport>> {
    if e_max < 1 {
        return Err(Error::InvalidParameter("e_max must be at least 1".into()));
    }
    let bits_per_step = 64 - p.leading_zeros() as u64;
    let total_bits = ctx.variables() as u64 * e_max as u64 * bits_per_step;
    if total_bits > MAX_RANK_BITS {
        return Err(Error::GuardExceeded(format!(
            "p^(n*e_max) would need about {total_bits} bits, cap is {MAX_RANK_BITS}"
        )));
    }
    let limit_form = closed_form_limit(ctx);
    let alt_form = closed_form_alt(ctx);
    let agree = limit_form == alt_form;
    let mut out = Vec::with_capacity(e_max as usize);
    for e in 1..=e_max {
        let params = FrobeniusParams::new(*ctx, p, e)?;
        let rank = params.root_rank();
        let upper = upper_bound(&params)?;
        let lower = lower_bound(&params)?;
        let rank_rat = BigRational::from_integer(rank.clone());
        let upper_normalized = &upper / &rank_rat;
        let lower_normalized = BigRational::new(lower.clone(), rank.clone());
        out.push(SignatureReport {
            variables: ctx.variables(),
            degree: ctx.degree(),
            prime: p,
            exponent: e,
            rank,
            gap_normalized: &upper_normalized - &lower_normalized,
            upper_bound: upper,
            lower_bound: lower,
            upper_normalized,
            lower_normalized,
            closed_form_limit: limit_form.clone(),
            closed_form_alt: alt_form.clone(),
            closed_forms_agree: agree,
        });
    }
    Ok(out)
}
