//! Brute-force checks of the structure of SL₂(F_p): cyclic subgroup counts,
//! eigenvalue trichotomy, conjugacy, normal subgroups, the normalizer of a
//! p-subgroup, and the noncyclic p·r subgroups that exist off Fermat primes.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::constructors::{self, sl2_matrices, Mat2, SemidirectParams};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::iso::is_isomorphic;
use crate::lattice;

/// Primes covered by default; 17 needs the construction cap raised past 4896.
pub const DEFAULT_CENSUS_PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub m: usize,
    pub predicted: usize,
    pub observed: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !arith::is_prime(p) {
        return Err(Error::BadParams(vec![format!("{p} is not an odd prime")]));
    }
    Ok(())
}

/// Number of cyclic subgroups of order m in SL₂(F_p), from (p, m) alone.
pub fn predicted_count(p: u64, m: usize) -> usize {
    let (p, m64) = (p as usize, m as u64);
    match m {
        1 | 2 => 1,
        _ if (p as u64 - 1) % m64 == 0 => p * (p + 1) / 2,
        _ if (2 * p as u64) % m64 == 0 => p + 1,
        _ if (p as u64 + 1) % m64 == 0 => p * (p - 1) / 2,
        _ => 0,
    }
}

fn observed_counts(g: &Group) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for c in lattice::cyclic_subgroups(g) {
        *counts.entry(c.order()).or_insert(0) += 1;
    }
    counts
}

/// One row per divisor of |SL₂(F_p)|.
pub fn cyclic_census(p: u64) -> Result<Vec<CensusRow>> {
    check_odd_prime(p)?;
    let g = constructors::sl2(p)?;
    Ok(census_of(&g, p))
}

fn census_of(g: &Group, p: u64) -> Vec<CensusRow> {
    let counts = observed_counts(g);
    arith::divisors(g.order() as u64)
        .into_iter()
        .map(|m| {
            let m = m as usize;
            let predicted = predicted_count(p, m);
            let observed = counts.get(&m).copied().unwrap_or(0);
            CensusRow { m, predicted, observed, matches: predicted == observed }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub p: u64,
    pub order: usize,
    pub order_matches: bool,
    pub unique_involution_is_minus_identity: bool,
    pub rows: Vec<CensusRow>,
    pub maximal_cyclic_orders: Vec<usize>,
    pub partition_identity: bool,
}

impl CensusSummary {
    pub fn all_match(&self) -> bool {
        self.order_matches
            && self.unique_involution_is_minus_identity
            && self.partition_identity
            && self.rows.iter().all(|r| r.matches)
            && self.maximal_cyclic_orders == expected_maximal_orders(self.p)
    }
}

fn expected_maximal_orders(p: u64) -> Vec<usize> {
    let p = p as usize;
    let set: BTreeSet<usize> = if p == 3 { [4, 6].into() } else { [p - 1, 2 * p, p + 1].into() };
    set.into_iter().collect()
}

/// Census plus the order, involution, maximal-order and partition checks.
pub fn census_summary(p: u64) -> Result<CensusSummary> {
    check_odd_prime(p)?;
    let g = constructors::sl2(p)?;
    let mats = sl2_matrices(p);
    let minus_one: Mat2 = [p - 1, 0, 0, p - 1];
    let involutions = g.involutions();
    let cyclic = lattice::cyclic_subgroups(&g);
    let maximal: Vec<&Subgroup> = cyclic
        .iter()
        .filter(|c| !cyclic.iter().any(|d| d.order() > c.order() && c.is_subgroup_of(d)))
        .collect();
    let maximal_orders: BTreeSet<usize> = maximal.iter().map(|c| c.order()).collect();
    // the maximal cyclic subgroups cover G and pairwise meet in {±I}
    let covered: usize = maximal.iter().map(|c| c.order() - 2).sum();
    let rows = census_of(&g, p);
    let (pu, order) = (p as usize, g.order());
    Ok(CensusSummary {
        p,
        order,
        order_matches: order == (pu - 1) * pu * (pu + 1),
        unique_involution_is_minus_identity: involutions.len() == 1 && mats[involutions[0]] == minus_one,
        rows,
        maximal_cyclic_orders: maximal_orders.into_iter().collect(),
        partition_identity: covered == order - 2,
    })
}

fn eigenvalue_count(p: u64, m: &Mat2) -> usize {
    // roots of x² − tr·x + 1 in F_p
    let tr = (m[0] + m[3]) % p;
    (0..p).filter(|&x| (x * x + p * p - tr * x + 1) % p == 0).count()
}

/// For α ∉ {±I}: two eigenvalues iff ord α | p−1, one iff ord α | 2p, none
/// iff ord α | p+1.
pub fn trichotomy_check(p: u64) -> Result<bool> {
    check_odd_prime(p)?;
    let g = constructors::sl2(p)?;
    let mats = sl2_matrices(p);
    let minus_one: Mat2 = [p - 1, 0, 0, p - 1];
    let orders = g.element_orders();
    let ok = (0..g.order()).filter(|&x| x != 0 && mats[x] != minus_one).all(|x| {
        let o = orders[x] as u64;
        let e = eigenvalue_count(p, &mats[x]);
        (e == 2) == ((p - 1) % o == 0) && (e == 1) == ((2 * p) % o == 0) && (e == 0) == ((p + 1) % o == 0)
    });
    Ok(ok)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyReport {
    pub p: u64,
    /// Cyclic subgroups of each order form one conjugacy class.
    pub equal_orders_conjugate: bool,
    /// Distinct cyclic subgroups of equal order meet inside {±I}.
    pub intersections_in_center: bool,
    pub normal_subgroup_orders: Vec<usize>,
    pub normals_as_expected: bool,
}

impl ConjugacyReport {
    pub fn holds(&self) -> bool {
        self.equal_orders_conjugate && self.intersections_in_center && self.normals_as_expected
    }
}

pub fn conjugacy_and_normals(p: u64) -> Result<ConjugacyReport> {
    check_odd_prime(p)?;
    let g = constructors::sl2(p)?;
    let center = lattice::center(&g);
    let mut by_order: BTreeMap<usize, Vec<Subgroup>> = BTreeMap::new();
    for c in lattice::cyclic_subgroups(&g) {
        by_order.entry(c.order()).or_default().push(c);
    }
    let mut conjugate = true;
    let mut meet = true;
    for subs in by_order.values() {
        let orbit: BTreeSet<Vec<usize>> =
            (0..g.order()).map(|x| subs[0].conjugate_by(x).elements().to_vec()).collect();
        conjugate &= subs.iter().all(|s| orbit.contains(s.elements()));
        for (i, a) in subs.iter().enumerate() {
            for b in &subs[i + 1..] {
                meet &= a.intersection(b).is_subgroup_of(&center);
            }
        }
    }
    let normals = lattice::normal_subgroups(&g)?;
    let orders: Vec<usize> = normals.iter().map(Subgroup::order).collect();
    let expected = if p == 3 {
        // SL₂(F₃) ≅ 2T: the quaternion 2-Sylow subgroup is normal
        let sylow = lattice::sylow_subgroup(&g, 2);
        let model = constructors::binary_tetrahedral_quaternions()?;
        sylow.is_normal() && is_isomorphic(&g, &model).is_some()
    } else {
        orders == vec![1, 2, g.order()] && normals[1] == center
    };
    Ok(ConjugacyReport {
        p,
        equal_orders_conjugate: conjugate,
        intersections_in_center: meet,
        normal_subgroup_orders: orders,
        normals_as_expected: expected,
    })
}

pub fn conjugacy_and_normals_check(p: u64) -> Result<bool> {
    Ok(conjugacy_and_normals(p)?.holds())
}

/// The normalizer of ⟨[[1,1],[0,1]]⟩ has order (p−1)p, is the upper
/// triangular subgroup, and is C_p ⋊ C_{p−1} with the generator acting as
/// b ↦ a²b for a primitive root a.
pub fn normalizer_structure_check(p: u64) -> Result<bool> {
    check_odd_prime(p)?;
    let g = constructors::sl2(p)?;
    let mats = sl2_matrices(p);
    let u = mats.iter().position(|m| *m == [1, 1, 0, 1]).expect("unipotent element");
    let cp = g.subgroup_generated(&[u]);
    let n = cp.normalizer();
    let upper: Vec<usize> = (0..g.order()).filter(|&x| mats[x][2] == 0).collect();
    let a = arith::primitive_root(p);
    let r = (a * a % p) as i64;
    let model = constructors::semidirect_cyclic(SemidirectParams::new(p as usize, p as usize - 1, r)?)?;
    Ok(n.order() == (p as usize - 1) * p as usize
        && n.elements() == upper.as_slice()
        && is_isomorphic(&n.to_group().0, &model).is_some())
}

/// A noncyclic subgroup of order p·r, r an odd prime dividing p−1. Such a
/// subgroup exists exactly when p is not a Fermat prime.
pub fn fermat_pq_witness(p: u64) -> Result<Option<Subgroup>> {
    check_odd_prime(p)?;
    let g = constructors::sl2(p)?;
    let odd: Vec<u64> = arith::prime_divisors(p - 1).into_iter().filter(|&r| r != 2).collect();
    let prime_subs = lattice::prime_order_subgroups(&g);
    let gen_of = |s: &Subgroup| s.elements()[1];
    let of_order = |k: u64| prime_subs.iter().filter(move |s| s.order() as u64 == k);
    for r in odd {
        let bound = (p * r) as usize;
        for cp in of_order(p) {
            for cr in of_order(r) {
                if let Some(els) = g.closure_bounded(&[gen_of(cp), gen_of(cr)], bound) {
                    let h = g.subgroup_from_elements(&els)?;
                    if h.order() == bound && !h.is_cyclic() {
                        return Ok(Some(h));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// PSL₂(F_p) as the quotient of SL₂(F_p) by {±I}.
pub fn psl2(p: u64) -> Result<Group> {
    check_odd_prime(p)?;
    let g = constructors::sl2(p)?;
    let (q, _) = lattice::quotient_group(&g, &lattice::center(&g))?;
    Ok(q.with_origin(format!("PSL2({p})")))
}

/// Nontrivial with no normal subgroups besides 1 and G.
pub fn is_simple(g: &Group) -> Result<bool> {
    Ok(g.order() > 1 && lattice::normal_subgroups(g)?.len() == 2)
}
