use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;
use num_bigint::BigInt;
use num_rational::BigRational;

use super::ratio;
use crate::action::ActionDomain;
use crate::error::{bail, Result};
use crate::field::Field;
use crate::group::GroupTable;
use crate::matrix::Matrix;

/// An element `g` or `gτ` of `GL_n(q)⟨τ⟩`.
pub type Twisted = (Matrix, bool);

#[derive(Clone, Debug, PartialEq)]
pub struct ExpectationReport {
    /// Average number of fixed points over the subset.
    pub value: BigRational,
    pub subset_size: usize,
    pub points: usize,
    /// Orbits of the kernel on the points; one orbit means transitive.
    pub orbit_count: usize,
    /// Average number of fixed points inside each kernel orbit.
    pub per_orbit: Vec<BigRational>,
    /// Leading constant predicted by the asymptotic lemmas, when supplied.
    pub predicted: Option<f64>,
}

impl ExpectationReport {
    pub fn is_transitive(&self) -> bool {
        self.orbit_count == 1
    }

    pub fn with_prediction(mut self, f: f64) -> Self {
        self.predicted = Some(f);
        self
    }
}

fn kernel_orbits(domain: &ActionDomain, kernel: &[Matrix]) -> (usize, Vec<usize>) {
    let gens: Vec<Twisted> = kernel.iter().map(|g| (g.clone(), false)).collect();
    let orbits = domain.orbits(&gens);
    let mut which = vec![0; domain.len()];
    for (i, o) in orbits.iter().enumerate() {
        for &p in o {
            which[p] = i;
        }
    }
    (orbits.len(), which)
}

fn average(domain: &ActionDomain, subset: &[Twisted], kernel: &[Matrix]) -> Result<ExpectationReport> {
    if subset.is_empty() {
        bail!(Argument, "the element subset is empty");
    }
    if subset.iter().any(|(_, tau)| *tau) && !domain.supports_tau() {
        bail!(Argument, "τ-elements do not act on this point set");
    }
    let (orbit_count, which) = kernel_orbits(domain, kernel);
    let mut per = vec![0u128; orbit_count];
    for (g, tau) in subset {
        for (p, fixed) in domain.fixed_mask(g, *tau).into_iter().enumerate() {
            if fixed {
                per[which[p]] += 1;
            }
        }
    }
    let total: u128 = per.iter().sum();
    let size = subset.len() as u128;
    Ok(ExpectationReport {
        value: ratio(total, size),
        subset_size: subset.len(),
        points: domain.len(),
        orbit_count,
        per_orbit: per.into_iter().map(|c| ratio(c, size)).collect(),
        predicted: None,
    })
}

/// Average number of fixed points over the coset with `label`. When the
/// kernel is transitive this is exactly 1; otherwise each kernel orbit
/// contributes its own average.
pub fn coset_average_fixed_points(table: &GroupTable, label: u32, domain: &ActionDomain) -> Result<ExpectationReport> {
    let coset: Vec<Twisted> = table.coset(label).into_iter().map(|i| (table.element(i), false)).collect();
    if coset.is_empty() {
        bail!(Argument, "coset {label} is empty");
    }
    average(domain, &coset, &table.kernel_generators())
}

/// Exact average of fixed points over a subset of the group (or of its τ-coset).
pub fn subset_expectation(subset: &[Twisted], domain: &ActionDomain, kernel: &[Matrix]) -> Result<ExpectationReport> {
    average(domain, subset, kernel)
}

fn conjugate(s: &Matrix, s_inv: &Matrix, x: &Twisted, f: &Field) -> Twisted {
    let (g, tau) = x;
    // s (gτ) s^{-1} = s g s^T τ
    let right = if *tau { s.transpose() } else { s_inv.clone() };
    (s.mul(g, f).mul(&right, f), *tau)
}

/// The subset is stable under conjugation by every generator in `gens`.
pub fn is_conjugation_stable(subset: &[Twisted], gens: &[Matrix], f: &Field) -> bool {
    let set: HashSet<&Twisted> = subset.iter().collect();
    gens.iter().all(|s| {
        let s_inv = s.inverse(f).expect("invertible generator");
        subset.iter().all(|x| set.contains(&conjugate(s, &s_inv, x, f)))
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct InequalityReport {
    /// `Pr_{a∈A}[x and a fix a common point]`.
    pub probability: BigRational,
    pub fpr_x: BigRational,
    pub expectation: BigRational,
    pub stable: bool,
    /// The kernel is transitive on the points, so they form one `G/M`.
    pub transitive: bool,
}

impl InequalityReport {
    pub fn bound(&self) -> BigRational {
        &self.fpr_x * &self.expectation
    }

    pub fn holds(&self) -> bool {
        self.probability <= self.bound()
    }

    /// The preconditions hold and so does the inequality.
    pub fn verified(&self) -> bool {
        self.stable && self.transitive && self.holds()
    }
}

/// Exact check of `Pr_{a∈A}[⟨x,a⟩ lies in a point stabilizer] <=
/// fpr(x) · (1/|A|) Σ_{a∈A} fp(a)`, together with its preconditions: `A` is
/// stable under conjugation by the kernel generators and the kernel is
/// transitive on the points.
pub fn expectation_inequality(
    subset: &[Twisted],
    x: &Twisted,
    domain: &ActionDomain,
    kernel: &[Matrix],
) -> Result<InequalityReport> {
    if subset.is_empty() {
        bail!(Argument, "the element subset is empty");
    }
    let f = domain.field();
    let fx = domain.fixed_mask(&x.0, x.1);
    let fp_x = fx.iter().filter(|&&b| b).count();
    let mut common = 0u128;
    let mut total = 0u128;
    for (g, tau) in subset {
        let m = domain.fixed_mask(g, *tau);
        total += m.iter().filter(|&&b| b).count() as u128;
        if m.iter().zip(&fx).any(|(&a, &b)| a && b) {
            common += 1;
        }
    }
    let size = subset.len() as u128;
    Ok(InequalityReport {
        probability: ratio(common, size),
        fpr_x: BigRational::new(BigInt::from(fp_x), BigInt::from(domain.len())),
        expectation: ratio(total, size),
        stable: is_conjugation_stable(subset, kernel, f),
        transitive: kernel_orbits(domain, kernel).0 == 1,
    })
}
