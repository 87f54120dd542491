use alloc::vec::Vec;

use num_rational::BigRational;

use super::{ratio, wilson, Z99};
use crate::error::{bail, Result};
use crate::field::Field;
use crate::group::{build_group, for_each_gl_shard, GroupFamily, GroupSpec, DEFAULT_CAP};
use crate::membership::{fixes_no_small_subspace, gl_tau_member, membership_set, Coset};
use crate::sampling::{
    gf2_fixes_no_small_subspace, gf2_sieve_polys, random_coset_gl, random_gl, random_gl2, seeded_rng,
};
use crate::series::{gl_no_small_factor_series, sl_coset_series};

/// What is being measured: `a_n(q,t,C,I)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProportionQuery {
    pub family: GroupFamily,
    pub n: usize,
    pub q: u32,
    pub t: usize,
    pub coset: Coset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Enumeration,
    Series,
    MonteCarlo { trials: u64, seed: u64 },
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Enumeration => "enumeration",
            Method::Series => "series",
            Method::MonteCarlo { .. } => "montecarlo",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Estimate {
    Exact(BigRational),
    /// Sample proportion with a 99% Wilson interval.
    Sampled { value: f64, lo: f64, hi: f64, hits: u64, trials: u64 },
}

impl Estimate {
    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Estimate::Exact(r) => Some(r),
            Estimate::Sampled { .. } => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        match self {
            Estimate::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Estimate::Sampled { value, .. } => *value,
        }
    }

    /// The interval contains `x` (exact values contain only themselves).
    pub fn covers(&self, x: f64) -> bool {
        match self {
            Estimate::Exact(_) => (self.to_f64() - x).abs() <= f64::EPSILON * 4.0,
            Estimate::Sampled { lo, hi, .. } => *lo <= x && x <= *hi,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProportionReport {
    pub query: ProportionQuery,
    pub method: Method,
    pub estimate: Estimate,
}

impl ProportionQuery {
    fn validate(&self) -> Result<()> {
        if self.t == 0 {
            bail!(Argument, "t must be at least 1");
        }
        GroupSpec::new(self.family, self.n, self.q)?;
        let linear = matches!(self.family, GroupFamily::Gl | GroupFamily::Sl);
        match self.coset {
            Coset::Tau if self.family != GroupFamily::Gl => bail!(Argument, "the τ-coset lives in GL"),
            Coset::Label(l) if linear && l >= self.q - 1 => {
                bail!(Argument, "determinant label {l} out of range for q = {}", self.q)
            }
            Coset::Label(l) if self.family == GroupFamily::Sl && l != 0 => {
                bail!(Argument, "SL has only the trivial coset")
            }
            _ => Ok(()),
        }
    }

    /// `(|C|-normalizer)`: `|L|` for a labelled coset or orthogonal set,
    /// `|I|` for the whole group and `|GL|` for the τ-coset.
    fn denominator(&self) -> Result<u128> {
        let spec = GroupSpec::new(self.family, self.n, self.q)?;
        Ok(match self.coset {
            Coset::All | Coset::Tau => spec.order(),
            Coset::Label(_) | Coset::OrthogonalS | Coset::OrthogonalO => spec.kernel().order(),
        })
    }

    /// Determinant label selected in a GL stream, if any.
    fn gl_label(&self) -> Option<u32> {
        match (self.family, self.coset) {
            (_, Coset::Label(l)) => Some(l),
            (GroupFamily::Sl, _) => Some(0),
            _ => None,
        }
    }
}

/// Number of elements of `A` met by shard `shard` of a `GL_n(q)` stream; the
/// shards add up to `|A|`. Linear families and the τ-coset only.
pub fn count_gl_stream(query: &ProportionQuery, shard: usize, shards: usize) -> Result<u128> {
    query.validate()?;
    if !matches!(query.family, GroupFamily::Gl | GroupFamily::Sl) {
        bail!(Argument, "streaming covers GL, its determinant cosets and the τ-coset");
    }
    if matches!(query.coset, Coset::OrthogonalS | Coset::OrthogonalO) {
        bail!(Argument, "orthogonal sets need an orthogonal group");
    }
    let f = Field::new(query.q)?;
    let label = query.gl_label();
    let (t, tau) = (query.t, query.coset == Coset::Tau);
    let mut hits = 0u128;
    for_each_gl_shard(query.n, &f, shard, shards, |g| {
        if let Some(l) = label {
            if f.discrete_log(g.det(&f)).expect("invertible") != l {
                return;
            }
        }
        let member = if tau { gl_tau_member(g, t, &f) } else { fixes_no_small_subspace(g, t, &f) };
        if member {
            hits += 1;
        }
    });
    Ok(hits)
}

/// `a_n(q,t,C,I) = |A_n(q,t,C,I)| / |L_n(q)|` by the requested method.
///
/// Enumeration streams `GL_n(q)` for the linear families and the τ-coset and
/// builds the group table otherwise; the series method covers `GL` and its
/// determinant cosets; Monte Carlo covers `GL`, its cosets and `GLτ`.
pub fn proportion(query: &ProportionQuery, method: Method) -> Result<ProportionReport> {
    query.validate()?;
    let linear = matches!(query.family, GroupFamily::Gl | GroupFamily::Sl);
    let estimate = match method {
        Method::Enumeration => {
            let hits = if linear {
                count_gl_stream(query, 0, 1)?
            } else {
                let spec = GroupSpec::new(query.family, query.n, query.q)?;
                let table = build_group(&spec, DEFAULT_CAP)?;
                membership_set(&table, query.t, query.coset)?.len() as u128
            };
            Estimate::Exact(ratio(hits, query.denominator()?))
        }
        Method::Series => {
            let q = query.q as u64;
            let s = match (query.family, query.coset) {
                (GroupFamily::Gl, Coset::All) => gl_no_small_factor_series(q, query.t, query.n)?,
                (GroupFamily::Gl | GroupFamily::Sl, Coset::Label(_) | Coset::All) => {
                    sl_coset_series(q, query.t, query.gl_label().unwrap_or(0) as u64, query.n)?
                }
                _ => bail!(Argument, "the series method covers GL and its determinant cosets only"),
            };
            Estimate::Exact(s.coeff(query.n).clone())
        }
        Method::MonteCarlo { trials, seed } => {
            if !linear {
                bail!(Argument, "Monte Carlo covers GL, its determinant cosets and the τ-coset only");
            }
            let hits = monte_carlo_hits(query, trials, seed)?;
            let (lo, hi) = wilson(hits, trials, Z99);
            Estimate::Sampled { value: hits as f64 / trials.max(1) as f64, lo, hi, hits, trials }
        }
    };
    Ok(ProportionReport { query: *query, method, estimate })
}

fn monte_carlo_hits(query: &ProportionQuery, trials: u64, seed: u64) -> Result<u64> {
    let f = Field::new(query.q)?;
    let mut rng = seeded_rng(seed);
    let (n, t) = (query.n, query.t);
    let label = query.gl_label();
    let mut hits = 0;
    if query.q == 2 && query.coset != Coset::Tau && n <= 64 {
        // GL_n(2) = SL_n(2); the packed path avoids the generic charpoly
        let sieve: Vec<Vec<bool>> = gf2_sieve_polys(t);
        for _ in 0..trials {
            let g = random_gl2(n, &mut rng);
            if t < n && gf2_fixes_no_small_subspace(&g, &sieve) {
                hits += 1;
            }
        }
        return Ok(hits);
    }
    for _ in 0..trials {
        let member = match (query.coset, label) {
            (Coset::Tau, _) => gl_tau_member(&random_gl(n, &f, &mut rng), t, &f),
            (_, Some(l)) => fixes_no_small_subspace(&random_coset_gl(n, &f, l, &mut rng)?, t, &f),
            _ => fixes_no_small_subspace(&random_gl(n, &f, &mut rng), t, &f),
        };
        if member {
            hits += 1;
        }
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(family: GroupFamily, n: usize, q: u32, t: usize, coset: Coset) -> ProportionQuery {
        ProportionQuery { family, n, q, t, coset }
    }

    #[test]
    fn gl2_over_gf2() {
        let r = proportion(&q(GroupFamily::Gl, 2, 2, 1, Coset::All), Method::Enumeration).unwrap();
        assert_eq!(r.estimate, Estimate::Exact(ratio(1, 3)));
    }

    #[test]
    fn methods_agree_on_small_cases() {
        for (n, qq, t, coset) in [(3, 2, 1, Coset::All), (3, 3, 1, Coset::Label(1)), (2, 5, 1, Coset::Label(2))] {
            let query = q(GroupFamily::Gl, n, qq, t, coset);
            let a = proportion(&query, Method::Enumeration).unwrap();
            let b = proportion(&query, Method::Series).unwrap();
            assert_eq!(a.estimate, b.estimate, "{query:?}");
            let c = proportion(&query, Method::MonteCarlo { trials: 4000, seed: 5 }).unwrap();
            assert!(c.estimate.covers(a.estimate.to_f64()), "{query:?} {c:?}");
        }
    }

    #[test]
    fn sl_family_is_the_trivial_coset() {
        let a = proportion(&q(GroupFamily::Sl, 2, 3, 1, Coset::All), Method::Enumeration).unwrap();
        let b = proportion(&q(GroupFamily::Gl, 2, 3, 1, Coset::Label(0)), Method::Enumeration).unwrap();
        assert_eq!(a.estimate, b.estimate);
        assert_eq!(a.estimate, Estimate::Exact(ratio(1, 4)));
    }

    #[test]
    fn shards_partition_the_count() {
        let query = q(GroupFamily::Gl, 3, 3, 1, Coset::Tau);
        let whole = count_gl_stream(&query, 0, 1).unwrap();
        let parts: u128 = (0..3).map(|s| count_gl_stream(&query, s, 3).unwrap()).sum();
        assert_eq!(whole, parts);
    }

    #[test]
    fn mismatched_methods_are_rejected() {
        let sp = q(GroupFamily::Sp, 4, 2, 1, Coset::All);
        assert!(proportion(&sp, Method::Series).is_err());
        assert!(proportion(&sp, Method::MonteCarlo { trials: 10, seed: 1 }).is_err());
        assert!(proportion(&q(GroupFamily::Sp, 4, 2, 1, Coset::Tau), Method::Enumeration).is_err());
        assert!(proportion(&q(GroupFamily::Gl, 3, 3, 0, Coset::All), Method::Enumeration).is_err());
    }
}
