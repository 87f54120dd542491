//! Counts of monic irreducible polynomials that parameterize the limiting
//! product formulas.
//!
//! `N` is the Moebius count. The conjugation families `N*`, `M*` (over GF(q))
//! and `N~`, `M~` (over GF(q^2)) are counted by exhaustive enumeration with
//! the conjugation maps. Closed forms for all five families are kept as a
//! second route; they are only used where enumeration is infeasible (large
//! or non-prime-power `q`) and are cross-checked against enumeration
//! everywhere enumeration runs.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::field::{prime_power, Field};
use crate::poly::{conjugate_star, conjugate_tilde, monic_irreducibles};

/// Polynomial families counted in a [`CountTable`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CountFamily {
    /// Monic irreducibles of degree j over GF(q) other than `z`.
    N,
    /// Self-conjugate (`f = f*`) monic irreducibles of degree j over GF(q).
    Nstar,
    /// Unordered pairs `{f, f*}` with `f != f*`, degree j over GF(q).
    Mstar,
    /// Self-conjugate (`f = f~`) monic irreducibles of degree j over GF(q^2).
    Ntilde,
    /// Unordered pairs `{f, f~}` with `f != f~`, degree j over GF(q^2).
    Mtilde,
}

impl CountFamily {
    pub const ALL: [CountFamily; 5] = [Self::N, Self::Nstar, Self::Mstar, Self::Ntilde, Self::Mtilde];

    pub fn name(self) -> &'static str {
        match self {
            Self::N => "N",
            Self::Nstar => "Nstar",
            Self::Mstar => "Mstar",
            Self::Ntilde => "Ntilde",
            Self::Mtilde => "Mtilde",
        }
    }
}

/// Largest number of candidate polynomials (`field size ^ j`) that
/// enumeration will scan.
pub const ENUMERATION_CAP: u64 = 1_000_000;

/// Where a count comes from.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CountSource {
    Enumeration,
    ClosedForm,
    /// Enumeration when the field is supported and within
    /// [`ENUMERATION_CAP`], otherwise the closed form.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub family: CountFamily,
    pub q: u64,
    pub values: BTreeMap<usize, u128>,
}

impl CountTable {
    pub fn build(family: CountFamily, q: u64, max_degree: usize, source: CountSource) -> Result<Self> {
        let mut values = BTreeMap::new();
        for j in 1..=max_degree {
            values.insert(j, count(family, q, j, source)?);
        }
        Ok(CountTable { family, q, values })
    }

    pub fn get(&self, j: usize) -> u128 {
        self.values.get(&j).copied().unwrap_or(0)
    }
}

pub(crate) fn mobius(n: u64) -> i32 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn checked_pow(q: u64, k: u64) -> Result<i128> {
    let mut acc: i128 = 1;
    for _ in 0..k {
        acc = match acc.checked_mul(q as i128) {
            Some(v) => v,
            None => bail!(Argument, "count overflow for q={q}, exponent {k}"),
        };
    }
    Ok(acc)
}

fn exact_div(num: i128, den: i128) -> Result<u128> {
    if num < 0 || num % den != 0 {
        bail!(Internal, "closed-form count {num}/{den} is not a nonnegative integer");
    }
    Ok((num / den) as u128)
}

/// `N(q;j)`: `q - 1` for `j = 1`, otherwise `(1/j) sum_{r|j} mu(r) q^{j/r}`.
/// Valid for every integer `q >= 2`.
pub fn count_n(q: u64, j: usize) -> Result<u128> {
    if j < 1 {
        bail!(Argument, "degree must be at least 1");
    }
    if q < 2 {
        bail!(Argument, "q must be at least 2");
    }
    if j == 1 {
        return Ok((q - 1) as u128);
    }
    let j = j as u64;
    let mut s: i128 = 0;
    for r in divisors(j) {
        s += mobius(r) as i128 * checked_pow(q, j / r)?;
    }
    exact_div(s, j as i128)
}

/// Closed-form counts: Meyn's count of self-reciprocal irreducibles for `N*`,
/// the odd-degree necklace count for `N~`, and the pair counts by complement.
pub fn count_closed_form(family: CountFamily, q: u64, j: usize) -> Result<u128> {
    if j < 1 {
        bail!(Argument, "degree must be at least 1");
    }
    if q < 2 {
        bail!(Argument, "q must be at least 2");
    }
    let odd_q = q % 2 == 1;
    match family {
        CountFamily::N => count_n(q, j),
        CountFamily::Nstar => {
            if j == 1 {
                return Ok(if odd_q { 2 } else { 1 });
            }
            if j % 2 == 1 {
                return Ok(0);
            }
            let m = (j / 2) as u64;
            let mut s: i128 = 0;
            for d in divisors(m).into_iter().filter(|d| d % 2 == 1) {
                s += mobius(d) as i128 * checked_pow(q, m / d)?;
            }
            if odd_q && m.is_power_of_two() {
                s -= 1;
            }
            exact_div(s, 2 * m as i128)
        }
        CountFamily::Mstar => {
            let n = count_n(q, j)? as i128;
            let ns = count_closed_form(CountFamily::Nstar, q, j)? as i128;
            exact_div(n - ns, 2)
        }
        CountFamily::Ntilde => {
            if j.is_multiple_of(2) {
                return Ok(0);
            }
            let j = j as u64;
            let mut s: i128 = 0;
            for d in divisors(j) {
                s += mobius(d) as i128 * (checked_pow(q, j / d)? + 1);
            }
            exact_div(s, j as i128)
        }
        CountFamily::Mtilde => {
            let q2 = match q.checked_mul(q) {
                Some(v) => v,
                None => bail!(Argument, "q^2 overflows"),
            };
            let n = count_n(q2, j)? as i128;
            let nt = count_closed_form(CountFamily::Ntilde, q, j)? as i128;
            exact_div(n - nt, 2)
        }
    }
}

/// Count by exhaustive enumeration of monic irreducibles (Moebius formula
/// for family `N`).
pub fn count_irreducibles(family: CountFamily, q: u64, j: usize) -> Result<u128> {
    if j < 1 {
        bail!(Argument, "degree must be at least 1");
    }
    if family == CountFamily::N {
        return count_n(q, j);
    }
    let unitary = matches!(family, CountFamily::Ntilde | CountFamily::Mtilde);
    let field_size = if unitary { q.checked_mul(q) } else { Some(q) };
    let Some(field_size) = field_size.filter(|&s| s <= crate::field::MAX_FIELD_SIZE as u64) else {
        bail!(Argument, "{} needs a field of size at most {}", family.name(), crate::field::MAX_FIELD_SIZE);
    };
    if prime_power(q).is_none() {
        bail!(Argument, "q = {q} is not a prime power");
    }
    if !enumerable(field_size, j) {
        bail!(Resource, "enumerating degree-{j} polynomials over GF({field_size}) exceeds the cap");
    }
    let field = Field::new(field_size as u32)?;
    let (fixed, total) = conjugation_census(&field, j, unitary)?;
    Ok(match family {
        CountFamily::Nstar | CountFamily::Ntilde => fixed,
        _ => (total - fixed) / 2,
    })
}

fn enumerable(field_size: u64, j: usize) -> bool {
    field_size.checked_pow(j as u32).is_some_and(|n| n <= ENUMERATION_CAP)
}

/// (#self-conjugate, #total) among monic irreducibles of degree `j` with
/// nonzero constant term.
fn conjugation_census(field: &Field, j: usize, unitary: bool) -> Result<(u128, u128)> {
    let mut fixed = 0u128;
    let mut total = 0u128;
    for f in monic_irreducibles(field, j) {
        if f.constant_term().is_zero() {
            continue;
        }
        total += 1;
        let c = if unitary { conjugate_tilde(&f, field)? } else { conjugate_star(&f, field)? };
        if c == f {
            fixed += 1;
        }
    }
    Ok((fixed, total))
}

/// Count with the given source policy.
pub fn count(family: CountFamily, q: u64, j: usize, source: CountSource) -> Result<u128> {
    match source {
        CountSource::Enumeration => count_irreducibles(family, q, j),
        CountSource::ClosedForm => count_closed_form(family, q, j),
        CountSource::Auto => {
            let fs = match family {
                CountFamily::Ntilde | CountFamily::Mtilde => q.saturating_mul(q),
                _ => q,
            };
            if family == CountFamily::N
                || (prime_power(q).is_some() && fs <= crate::field::MAX_FIELD_SIZE as u64 && enumerable(fs, j))
            {
                count_irreducibles(family, q, j)
            } else {
                count_closed_form(family, q, j)
            }
        }
    }
}

/// `counts[rho]` = number of monic irreducibles `f != z` of degree `j` with
/// `r(f) = rho` in Z/(q-1).
pub fn r_value_census(field: &Field, j: usize) -> Result<Vec<u64>> {
    let m = field.size() as usize - 1;
    let mut counts = vec![0u64; m];
    for f in monic_irreducibles(field, j) {
        if f.constant_term().is_zero() {
            continue;
        }
        counts[f.r_value(field)? as usize] += 1;
    }
    Ok(counts)
}
