//! Does `x` together with a random `s` generate the whole (enumerated) group?

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use super::{wilson, Estimate, Z99};
use crate::error::{bail, Result};
use crate::group::{subgroup_closure, ClosureOutcome, GroupTable};
use crate::matrix::Matrix;
use crate::sampling::seeded_rng;

/// `⟨x, s⟩` is the whole group: any subgroup with more than `|G|/2`
/// elements is `G`, so the closure stops there.
fn generates(table: &GroupTable, x: &Matrix, s: &Matrix) -> Result<bool> {
    let half = table.len() / 2;
    Ok(match subgroup_closure(&[x.clone(), s.clone()], table.field(), half, table.is_projective())? {
        ClosureOutcome::CapExceeded { .. } => true,
        ClosureOutcome::Complete(h) => h.len() == table.len(),
    })
}

fn identity_index(table: &GroupTable) -> usize {
    table.index_of(&Matrix::identity(table.dim())).expect("groups contain the identity")
}

/// Conjugacy classes, each sorted, found by closing under conjugation by the
/// table's generators.
pub fn conjugacy_classes(table: &GroupTable) -> Vec<Vec<usize>> {
    let f = table.field();
    let gens: Vec<(Matrix, Matrix)> =
        table.generators().iter().map(|s| (s.clone(), s.inverse(f).expect("invertible"))).collect();
    let mut class_of = vec![usize::MAX; table.len()];
    let mut classes = Vec::new();
    for start in 0..table.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[start] = id;
        let mut cls = vec![start];
        let mut i = 0;
        while i < cls.len() {
            let x = table.element(cls[i]);
            for (s, si) in &gens {
                let y = table.mul(&table.mul(s, &x), si);
                let j = table.index_of(&y).expect("closed under conjugation");
                if class_of[j] == usize::MAX {
                    class_of[j] = id;
                    cls.push(j);
                }
            }
            i += 1;
        }
        cls.sort_unstable();
        classes.push(cls);
    }
    classes
}

fn element_order(table: &GroupTable, i: usize) -> usize {
    let x = table.element(i);
    let id = Matrix::identity(table.dim());
    let mut y = x.clone();
    let mut k = 1;
    while table.index_of(&y) != table.index_of(&id) {
        y = table.mul(&y, &x);
        k += 1;
    }
    k
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenerationReport {
    pub x: usize,
    /// Exact proportion over all candidates, or a sampled estimate.
    pub estimate: Estimate,
}

/// Proportion of `s` in `candidates` (indices into the table, e.g. a coset)
/// with `⟨x, s⟩ = G`. `trials = None` scans every candidate; otherwise
/// candidates are drawn uniformly with the seeded generator.
pub fn generation_probe(
    table: &GroupTable,
    x: usize,
    candidates: &[usize],
    trials: Option<u64>,
    seed: u64,
) -> Result<GenerationReport> {
    if x == identity_index(table) {
        bail!(Argument, "x must be nontrivial");
    }
    if candidates.is_empty() {
        bail!(Argument, "no candidate partners");
    }
    let xm = table.element(x);
    let estimate = match trials {
        None => {
            let mut hits = 0u64;
            for &s in candidates {
                if generates(table, &xm, &table.element(s))? {
                    hits += 1;
                }
            }
            Estimate::Exact(BigRational::new(BigInt::from(hits), BigInt::from(candidates.len())))
        }
        Some(trials) => {
            let mut rng = seeded_rng(seed);
            let mut hits = 0u64;
            for _ in 0..trials {
                let s = candidates[rng.gen_range(0..candidates.len())];
                if generates(table, &xm, &table.element(s))? {
                    hits += 1;
                }
            }
            let (lo, hi) = wilson(hits, trials, Z99);
            Estimate::Sampled { value: hits as f64 / trials.max(1) as f64, lo, hi, hits, trials }
        }
    };
    Ok(GenerationReport { x, estimate })
}

/// Per-class generation data for one nontrivial class.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassProbe {
    pub representative: usize,
    pub class_size: usize,
    pub element_order: usize,
    pub exact: BigRational,
    pub sampled: Option<Estimate>,
}

/// Exhaustive 3/2-generation: every nontrivial element has a partner
/// generating the group. Returns the verdict and, per nontrivial class, the
/// exact proportion of partners (plus a sampled one when `trials` is given).
pub fn three_halves_generation(table: &GroupTable, trials: Option<u64>, seed: u64) -> Result<(bool, Vec<ClassProbe>)> {
    let all: Vec<usize> = (0..table.len()).collect();
    let id = identity_index(table);
    let mut every = true;
    for x in 0..table.len() {
        if x == id {
            continue;
        }
        let xm = table.element(x);
        let mut found = false;
        for s in 0..table.len() {
            if generates(table, &xm, &table.element(s))? {
                found = true;
                break;
            }
        }
        every &= found;
    }
    let mut rows = Vec::new();
    for (ci, cls) in conjugacy_classes(table).into_iter().enumerate() {
        let rep = cls[0];
        if rep == id {
            continue;
        }
        let exact = generation_probe(table, rep, &all, None, seed)?;
        let sampled = match trials {
            Some(n) => Some(generation_probe(table, rep, &all, Some(n), seed.wrapping_add(ci as u64))?.estimate),
            None => None,
        };
        rows.push(ClassProbe {
            representative: rep,
            class_size: cls.len(),
            element_order: element_order(table, rep),
            exact: exact.estimate.exact().expect("exhaustive").clone(),
            sampled,
        });
    }
    Ok((every, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::group::{build_group, GroupFamily, GroupSpec, DEFAULT_CAP};
    use num_traits::Zero;

    fn psl2(q: u32) -> GroupTable {
        let sl = build_group(&GroupSpec::new(GroupFamily::Sl, 2, q).unwrap(), DEFAULT_CAP).unwrap();
        let f = Field::new(q).unwrap();
        match subgroup_closure(sl.generators(), &f, DEFAULT_CAP as usize, true).unwrap() {
            ClosureOutcome::Complete(t) => t,
            ClosureOutcome::CapExceeded { .. } => unreachable!(),
        }
    }

    #[test]
    fn psl27_classes_and_generation() {
        let g = psl2(7);
        assert_eq!(g.len(), 168);
        let mut sizes: Vec<usize> = conjugacy_classes(&g).iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [1, 21, 24, 24, 42, 56]);
        let (ok, rows) = three_halves_generation(&g, None, 1).unwrap();
        assert!(ok);
        assert!(rows.iter().all(|r| !r.exact.is_zero()));
        let id = g.index_of(&Matrix::identity(2)).unwrap();
        assert!(generation_probe(&g, id, &[0], None, 0).is_err());
    }
}
