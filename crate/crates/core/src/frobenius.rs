//! Decomposition of Frobenius root modules of graded classes into graded
//! classes with exact multiplicities.
//!
//! For coprime `p` and `d`, the module of `p^e`-th roots of the class-`j`
//! summand splits into class summands with multiplicities
//!
//! ```text
//! n_m = #{ b in {0,...,p^e-1}^n : sum(b) = j - m*p^e  (mod d) }
//! ```
//!
//! one copy per residue vector `b`, because the integer part of each root
//! monomial sweeps exactly one class once `sum(b)` is fixed. The counts are
//! computed by an `n`-fold cyclic convolution of the single-coordinate
//! residue counts, never by enumeration, so exponents with `p^{ne}` in the
//! billions stay cheap. A brute-force enumeration oracle with the identical
//! contract backs the convolution in tests.
//!
//! When `p` divides `d` the split of exponents behind the formula is no
//! longer unique and the decomposition here follows one literal reading of
//! the congruence conditions; results from that path are marked
//! experimental and double-checked at runtime.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::veronese::{GradedClass, VeroneseContext};

/// Default cap on `p^{ne}` for the enumeration oracle.
pub const DEFAULT_ENUMERATION_GUARD: u64 = 1_000_000;

/// Parameters of a Frobenius root computation: ambient context, prime `p`,
/// and root exponent `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrobeniusParams {
    ctx: VeroneseContext,
    prime: u64,
    exponent: u32,
}

impl FrobeniusParams {
    pub fn new(ctx: VeroneseContext, prime: u64, exponent: u32) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        if exponent < 1 {
            return Err(Error::InvalidParameter(
                "root exponent must be at least 1".into(),
            ));
        }
        if exponent.checked_mul(ctx.variables()).is_none() {
            return Err(Error::InvalidParameter(format!(
                "n * e = {} * {exponent} overflows",
                ctx.variables()
            )));
        }
        Ok(FrobeniusParams {
            ctx,
            prime,
            exponent,
        })
    }

    pub fn context(&self) -> &VeroneseContext {
        &self.ctx
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// `p^e` as an exact integer.
    pub fn root_rank_base(&self) -> BigInt {
        BigInt::from(self.prime).pow(self.exponent)
    }

    /// `p^{ne}`, the rank of the root module.
    pub fn root_rank(&self) -> BigInt {
        BigInt::from(self.prime).pow(self.exponent * self.ctx.variables())
    }

    /// Multiplicity of `p` in `d`.
    pub fn d_p_valuation(&self) -> u32 {
        let mut d = self.ctx.degree() as u64;
        let mut s = 0;
        while d.is_multiple_of(self.prime) {
            d /= self.prime;
            s += 1;
        }
        s
    }

    fn coprime(&self) -> bool {
        !(self.ctx.degree() as u64).is_multiple_of(self.prime)
    }
}

/// Multiplicities `n_m` of the class summands of a root module, indexed by
/// residue class `m = 0..d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionMultiset {
    multiplicities: Vec<BigInt>,
    total: BigInt,
    experimental: bool,
}

impl DecompositionMultiset {
    fn new(multiplicities: Vec<BigInt>, experimental: bool) -> Self {
        let total = multiplicities.iter().sum();
        DecompositionMultiset {
            multiplicities,
            total,
            experimental,
        }
    }

    /// Number of classes, i.e. `d`.
    pub fn class_count(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn multiplicity(&self, m: usize) -> &BigInt {
        &self.multiplicities[m]
    }

    pub fn multiplicities(&self) -> &[BigInt] {
        &self.multiplicities
    }

    /// Sum of all multiplicities: `p^{ne}` on the exact path, the number of
    /// contributing residue vectors on the experimental path.
    pub fn total(&self) -> &BigInt {
        &self.total
    }

    /// True when produced by the literal reading used for `p | d`.
    pub fn is_experimental(&self) -> bool {
        self.experimental
    }
}

/// `c_t = #{0 <= b < bound : b = t mod d}` for `t = 0..d`.
fn residue_counts(bound: &BigInt, d: u32) -> Vec<BigInt> {
    let d_big = BigInt::from(d);
    (0..d)
        .map(|t| {
            let t_big = BigInt::from(t);
            if t_big < *bound {
                (bound - &t_big - 1u32) / &d_big + 1u32
            } else {
                BigInt::zero()
            }
        })
        .collect()
}

/// Counts of `sum(b) mod d` over all `b` in `{0..bound-1}^n`:
/// the `n`-fold cyclic convolution of the single-coordinate counts.
fn sum_residue_counts(n: u32, bound: &BigInt, d: u32) -> Vec<BigInt> {
    let c = residue_counts(bound, d);
    let d = d as usize;
    let mut acc = vec![BigInt::zero(); d];
    acc[0] = BigInt::one();
    for _ in 0..n {
        let mut next = vec![BigInt::zero(); d];
        for (s, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, ct) in c.iter().enumerate() {
                next[(s + t) % d] += a * ct;
            }
        }
        acc = next;
    }
    acc
}

fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u32, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, m);
        }
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`; requires gcd(a, m) = 1.
fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "{a} is not invertible mod {m}");
    old_s.rem_euclid(m as i128) as u64
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut f = 3;
    while f * f <= p {
        if p.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// Decompose the `p^e`-th root module of the class-`source` summand into
/// class summands. Exact path; requires gcd(p, d) = 1.
pub fn decompose_roots(
    params: &FrobeniusParams,
    source: GradedClass,
) -> Result<DecompositionMultiset> {
    if !params.coprime() {
        return Err(Error::NotCoprime {
            p: params.prime,
            d: params.ctx.degree() as u64,
        });
    }
    let d = params.ctx.degree();
    let counts = sum_residue_counts(params.ctx.variables(), &params.root_rank_base(), d);
    let pe_mod = mod_pow(params.prime, params.exponent, d as u64);
    let j = source.index() as u64;
    let multiplicities = (0..d as u64)
        .map(|m| {
            let idx = (j + d as u64 - mod_mul(m, pe_mod, d as u64)) % d as u64;
            counts[idx as usize].clone()
        })
        .collect();
    let out = DecompositionMultiset::new(multiplicities, false);
    debug_assert_eq!(*out.total(), params.root_rank());
    Ok(out)
}

/// Literal-reading decomposition for `p | d`. Experimental: residue vectors
/// whose coordinate sum misses `source mod p^s` contribute nothing, and each
/// surviving vector is assigned one class through the two congruences
/// `m = source (mod p^s)` and `m = (source - sum(b)) / p^e (mod q)` where
/// `s` is the multiplicity of `p` in `d` and `q = d / p^s`.
pub fn decompose_roots_general(
    params: &FrobeniusParams,
    source: GradedClass,
) -> Result<DecompositionMultiset> {
    let s = params.d_p_valuation();
    if s == 0 {
        return Err(Error::InvalidParameter(format!(
            "p = {} does not divide d = {}; use the exact decomposition",
            params.prime,
            params.ctx.degree()
        )));
    }
    if params.exponent <= s {
        return Err(Error::InvalidParameter(format!(
            "root exponent {} must exceed the multiplicity {s} of p in d",
            params.exponent
        )));
    }
    let d = params.ctx.degree() as u64;
    let ps = params.prime.pow(s);
    let q = d / ps;
    let j = source.index() as u64;

    let counts = sum_residue_counts(
        params.ctx.variables(),
        &params.root_rank_base(),
        params.ctx.degree(),
    );
    let pe_inv_q = mod_inverse(mod_pow(params.prime, params.exponent, q.max(1)), q.max(1));
    let ps_inv_q = mod_inverse(ps % q.max(1), q.max(1));

    let mut multiplicities = vec![BigInt::zero(); d as usize];
    for (t, count) in counts.iter().enumerate() {
        let t = t as u64;
        if t % ps != j % ps || count.is_zero() {
            continue;
        }
        // class determined by the two congruences, combined explicitly
        let k_b = if q == 1 {
            0
        } else {
            mod_mul((j % q + q - t % q) % q, pe_inv_q, q)
        };
        let a = j % ps;
        let m = if q == 1 {
            a
        } else {
            a + ps * mod_mul((k_b + q - a % q) % q, ps_inv_q, q)
        };
        debug_assert!(m < d);
        multiplicities[m as usize] += count;
    }
    let out = DecompositionMultiset::new(multiplicities, true);

    // Runtime consistency check through an independent route: the surviving
    // mass must equal the count of vectors hitting `source mod p^s`, computed
    // directly with modulus p^s.
    let expected = sum_residue_counts(params.ctx.variables(), &params.root_rank_base(), ps as u32)
        [(j % ps) as usize]
        .clone();
    if *out.total() != expected {
        return Err(Error::InconsistentDecomposition(format!(
            "assigned mass {} does not match the {} vectors satisfying the \
             mod-p^s constraint",
            out.total(),
            expected
        )));
    }
    for (m, v) in out.multiplicities().iter().enumerate() {
        if !v.is_zero() && m as u64 % ps != j % ps {
            return Err(Error::InconsistentDecomposition(format!(
                "class {m} violates the mod-p^s constraint"
            )));
        }
    }
    Ok(out)
}

/// Brute-force oracle with the identical contract to [`decompose_roots`]
/// (and to [`decompose_roots_general`] when `p | d`), computed by explicit
/// enumeration of all residue vectors. Test-scale only.
pub fn enumerate_oracle(
    params: &FrobeniusParams,
    source: GradedClass,
    max_enum: u64,
) -> Result<DecompositionMultiset> {
    let n = params.ctx.variables();
    match params.prime.checked_pow(n * params.exponent) {
        Some(total) if total <= max_enum => {}
        _ => {
            return Err(Error::GuardExceeded(format!(
                "enumeration of p^(ne) = {}^{} vectors exceeds the cap {max_enum}",
                params.prime,
                n * params.exponent
            )));
        }
    }
    let pe = params.prime.pow(params.exponent);
    let d = params.ctx.degree() as u64;
    let j = source.index() as u64;
    let coprime = params.coprime();

    let (ps, q) = if coprime {
        (1, d)
    } else {
        let s = params.d_p_valuation();
        if params.exponent <= s {
            return Err(Error::InvalidParameter(format!(
                "root exponent {} must exceed the multiplicity {s} of p in d",
                params.exponent
            )));
        }
        let ps = params.prime.pow(s);
        (ps, d / ps)
    };
    let pe_inv_d = if coprime { mod_inverse(pe % d, d) } else { 0 };
    let pe_inv_q = mod_inverse(mod_pow(params.prime, params.exponent, q.max(1)), q.max(1));
    let ps_inv_q = mod_inverse(ps % q.max(1), q.max(1));

    let mut multiplicities = vec![BigInt::zero(); d as usize];
    let mut b = vec![0u64; n as usize];
    let mut sum = 0u64;
    loop {
        if coprime {
            let m = mod_mul((j + d - sum % d) % d, pe_inv_d, d);
            multiplicities[m as usize] += 1u32;
        } else if sum % ps == j % ps {
            let k_b = if q == 1 {
                0
            } else {
                mod_mul((j % q + q - sum % q) % q, pe_inv_q, q)
            };
            let a = j % ps;
            let m = if q == 1 {
                a
            } else {
                a + ps * mod_mul((k_b + q - a % q) % q, ps_inv_q, q)
            };
            multiplicities[m as usize] += 1u32;
        }
        // odometer step
        let mut i = 0;
        loop {
            if i == b.len() {
                return Ok(DecompositionMultiset::new(multiplicities, !coprime));
            }
            sum += 1;
            b[i] += 1;
            if b[i] < pe {
                break;
            }
            sum -= b[i];
            b[i] = 0;
            i += 1;
        }
    }
}

/// The `e`-th Frobenius splitting number: the multiplicity of the free class
/// in the decomposition of the root module of the subring itself.
pub fn splitting_number(params: &FrobeniusParams) -> Result<BigInt> {
    let zero_class = params.context().class(0)?;
    Ok(decompose_roots(params, zero_class)?.multiplicity(0).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: u32, d: u32, p: u64, e: u32) -> FrobeniusParams {
        FrobeniusParams::new(VeroneseContext::new(n, d).unwrap(), p, e).unwrap()
    }

    fn decompose_vec(n: u32, d: u32, p: u64, e: u32, j: u32) -> Vec<BigInt> {
        let pr = params(n, d, p, e);
        let cls = pr.context().class(j).unwrap();
        decompose_roots(&pr, cls).unwrap().multiplicities().to_vec()
    }

    #[test]
    fn smallest_worked_decomposition() {
        // nine residue vectors on two coordinates, five with even sum
        assert_eq!(
            decompose_vec(2, 2, 3, 1, 0),
            vec![BigInt::from(5), BigInt::from(4)]
        );
    }

    #[test]
    fn degree_one_is_free() {
        for (n, p, e) in [(1u32, 3u64, 4u32), (2, 2, 5), (3, 5, 2)] {
            let pr = params(n, 1, p, e);
            let m = decompose_roots(&pr, pr.context().class(0).unwrap()).unwrap();
            assert_eq!(m.class_count(), 1);
            assert_eq!(m.multiplicity(0), &pr.root_rank());
        }
    }

    #[test]
    fn multiplicity_window_on_the_worked_example() {
        // p^(ne) = 9, remainder 1 mod 2, so counts must be 4 or 5
        for v in decompose_vec(2, 2, 3, 1, 0) {
            assert!(v == BigInt::from(4) || v == BigInt::from(5));
        }
    }

    #[test]
    fn coprimality_is_required() {
        let pr = params(2, 4, 2, 3);
        let cls = pr.context().class(0).unwrap();
        assert!(matches!(
            decompose_roots(&pr, cls),
            Err(Error::NotCoprime { p: 2, d: 4 })
        ));
    }

    #[test]
    fn conservation_and_oracle_agreement() {
        for (n, d, p, emax) in [
            (2u32, 3u32, 2u64, 9u32),
            (2, 5, 3, 3),
            (3, 4, 3, 4),
            (1, 7, 2, 9),
        ] {
            for e in 1..=emax {
                let pr = params(n, d, p, e);
                for j in 0..d {
                    let cls = pr.context().class(j).unwrap();
                    let fast = decompose_roots(&pr, cls).unwrap();
                    let slow = enumerate_oracle(&pr, cls, DEFAULT_ENUMERATION_GUARD).unwrap();
                    assert_eq!(fast, slow, "n={n} d={d} p={p} e={e} j={j}");
                    assert_eq!(*fast.total(), pr.root_rank());
                }
            }
        }
    }

    #[test]
    fn oracle_guard_trips() {
        let pr = params(3, 4, 3, 4);
        let cls = pr.context().class(0).unwrap();
        assert!(enumerate_oracle(&pr, cls, 1000).is_err());
        // 3^12 = 531441 fits under the default guard
        assert!(enumerate_oracle(&pr, cls, DEFAULT_ENUMERATION_GUARD).is_ok());
    }

    #[test]
    fn source_shift_relabels_classes() {
        // decompose(j)_m = decompose(0)_{(m - j*inv(p^e)) mod d}
        for (n, d, p, e) in [(2u32, 5u32, 3u64, 2u32), (3, 4, 5, 1), (2, 7, 2, 3)] {
            let pr = params(n, d, p, e);
            let base = decompose_roots(&pr, pr.context().class(0).unwrap()).unwrap();
            let pe_inv = mod_inverse(mod_pow(p, e, d as u64), d as u64);
            for j in 0..d {
                let shifted = decompose_roots(&pr, pr.context().class(j).unwrap()).unwrap();
                for m in 0..d as u64 {
                    let m0 = (m + d as u64 - mod_mul(j as u64, pe_inv, d as u64)) % d as u64;
                    assert_eq!(
                        shifted.multiplicity(m as usize),
                        base.multiplicity(m0 as usize)
                    );
                }
            }
        }
    }

    #[test]
    fn splitting_number_examples() {
        assert_eq!(
            splitting_number(&params(2, 2, 3, 1)).unwrap(),
            BigInt::from(5)
        );
        assert_eq!(
            splitting_number(&params(2, 1, 3, 2)).unwrap(),
            BigInt::from(3u32).pow(4)
        );
    }

    #[test]
    fn splitting_ratio_approaches_reciprocal_degree() {
        // |a_e/p^(ne) - 1/d| <= d/p^(ne), checked where p^(ne) >= 1e5
        use num_rational::BigRational;
        use num_traits::Signed;
        let pr = params(2, 3, 7, 3); // 7^6 = 117649
        let a = splitting_number(&pr).unwrap();
        let rank = pr.root_rank();
        let lhs =
            BigRational::new(a, rank.clone()) - BigRational::new(BigInt::one(), BigInt::from(3));
        let bound = BigRational::new(BigInt::from(3), rank);
        assert!(lhs.abs() <= bound);
    }

    #[test]
    fn general_path_mass_lands_on_compatible_classes() {
        // d = p: all mass on classes divisible by p
        let pr = params(1, 3, 3, 3);
        let m = decompose_roots_general(&pr, pr.context().class(0).unwrap()).unwrap();
        assert!(m.is_experimental());
        assert_eq!(m.multiplicity(0), &BigInt::from(9)); // 27/3 vectors pass
        assert!(m.multiplicity(1).is_zero() && m.multiplicity(2).is_zero());
    }

    #[test]
    fn general_path_agrees_with_enumeration() {
        for (n, d, p, e) in [
            (2u32, 2u32, 2u64, 3u32),
            (2, 4, 2, 3),
            (1, 6, 2, 4),
            (2, 6, 3, 2),
        ] {
            let pr = params(n, d, p, e);
            for j in 0..d {
                let cls = pr.context().class(j).unwrap();
                let fast = decompose_roots_general(&pr, cls).unwrap();
                let slow = enumerate_oracle(&pr, cls, DEFAULT_ENUMERATION_GUARD).unwrap();
                assert_eq!(fast, slow, "n={n} d={d} p={p} e={e} j={j}");
            }
        }
    }

    #[test]
    fn general_path_requires_large_exponent() {
        let pr = params(2, 4, 2, 2); // s = 2, e = 2 not allowed
        assert!(decompose_roots_general(&pr, pr.context().class(0).unwrap()).is_err());
    }

    #[test]
    fn primality_is_checked() {
        let ctx = VeroneseContext::new(2, 3).unwrap();
        assert!(matches!(
            FrobeniusParams::new(ctx, 9, 1),
            Err(Error::NotPrime(9))
        ));
        assert!(FrobeniusParams::new(ctx, 2, 1).is_ok());
        assert!(FrobeniusParams::new(ctx, 97, 1).is_ok());
    }
}
