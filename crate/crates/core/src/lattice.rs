//! Subgroup enumeration, Sylow subgroups, derived series, normal subgroups
//! and quotients.

use std::collections::{HashMap, HashSet};

use crate::arith;
use crate::error::{Error, Result};
use crate::group::{Budget, Group, Homomorphism, Subgroup};

/// Default cap on the order of groups whose full subgroup lattice is enumerated.
pub const DEFAULT_SUBGROUP_CAP: usize = 2000;

/// All cyclic subgroups, deduplicated, sorted by (order, elements).
pub fn cyclic_subgroups(g: &Group) -> Vec<Subgroup> {
    let n = g.order();
    let orders = g.element_orders();
    let mut covered = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if covered[x] {
            continue;
        }
        let o = orders[x];
        let mut els = Vec::with_capacity(o);
        let mut y = 0;
        for k in 0..o {
            els.push(y);
            if arith::gcd(k as u64, o as u64) == 1 {
                covered[y] = true;
            }
            y = g.mul(y, x);
        }
        els.sort_unstable();
        out.push(Subgroup::from_sorted(g, els));
    }
    out.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    out
}

/// Cyclic subgroups of prime order.
pub fn prime_order_subgroups(g: &Group) -> Vec<Subgroup> {
    cyclic_subgroups(g)
        .into_iter()
        .filter(|s| arith::is_prime(s.order() as u64))
        .collect()
}

pub fn all_subgroups(g: &Group) -> Result<Vec<Subgroup>> {
    all_subgroups_within(g, DEFAULT_SUBGROUP_CAP, &Budget::unlimited())
}

/// Every subgroup exactly once, found by closing the cyclic subgroups under
/// joins with cyclic subgroups.
pub fn all_subgroups_within(g: &Group, cap: usize, budget: &Budget) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::CapExceeded { what: "subgroup enumeration", size: g.order(), cap });
    }
    let orders = g.element_orders();
    let cyclic = cyclic_subgroups(g);
    // one generator per cyclic subgroup
    let cyclic_gens: Vec<usize> = cyclic
        .iter()
        .map(|c| *c.elements().iter().find(|&&x| orders[x] == c.order()).unwrap())
        .collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut found: Vec<(Subgroup, Vec<usize>)> = Vec::new();
    for (c, &x) in cyclic.iter().zip(&cyclic_gens) {
        seen.insert(c.elements().to_vec());
        found.push((c.clone(), vec![x]));
    }
    let mut i = 0;
    while i < found.len() {
        budget.check()?;
        let (current, gens) = found[i].clone();
        for &x in &cyclic_gens {
            if current.contains(x) {
                continue;
            }
            let mut new_gens = gens.clone();
            new_gens.push(x);
            let joined = g.subgroup_generated(&new_gens);
            if seen.insert(joined.elements().to_vec()) {
                found.push((joined, new_gens));
            }
        }
        i += 1;
    }
    let mut subs: Vec<Subgroup> = found.into_iter().map(|(s, _)| s).collect();
    subs.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    Ok(subs)
}

/// A Sylow `p`-subgroup, grown from an order-`p` subgroup inside successive normalizers.
pub fn sylow_subgroup(g: &Group, p: u64) -> Subgroup {
    let n = g.order() as u64;
    if !arith::is_prime(p) || n % p != 0 {
        return g.trivial();
    }
    let target = p.pow(arith::valuation(n, p)) as usize;
    let orders = g.element_orders();
    let x = (0..g.order()).find(|&x| orders[x] as u64 == p).expect("Cauchy");
    let mut sylow = g.subgroup_generated(&[x]);
    while sylow.order() < target {
        let normalizer = sylow.normalizer();
        let y = normalizer
            .elements()
            .iter()
            .copied()
            .find(|&y| !sylow.contains(y) && sylow.contains(g.pow(y, p)))
            .expect("a non-Sylow p-subgroup has p | [N(P):P]");
        let mut gens = sylow.elements().to_vec();
        gens.push(y);
        sylow = g.subgroup_generated(&gens);
    }
    sylow
}

pub fn center(g: &Group) -> Subgroup {
    g.whole().centralizer()
}

/// Subgroup generated by commutators of elements of `h`.
pub fn derived_subgroup(h: &Subgroup) -> Subgroup {
    let g = h.parent();
    let mut comms: HashSet<usize> = HashSet::new();
    for &x in h.elements() {
        for &y in h.elements() {
            comms.insert(g.commutator(x, y));
        }
    }
    let gens: Vec<usize> = comms.into_iter().collect();
    g.subgroup_generated(&gens)
}

pub fn commutator_subgroup(g: &Group) -> Subgroup {
    derived_subgroup(&g.whole())
}

/// `G ⊇ G′ ⊇ G″ ⊇ …` until it stabilizes.
pub fn derived_series(g: &Group) -> Vec<Subgroup> {
    let mut series = vec![g.whole()];
    loop {
        let next = derived_subgroup(series.last().unwrap());
        if next.order() == series.last().unwrap().order() {
            return series;
        }
        series.push(next);
    }
}

pub fn is_solvable(g: &Group) -> bool {
    derived_series(g).last().unwrap().is_trivial()
}

pub fn is_perfect(g: &Group) -> bool {
    commutator_subgroup(g).is_whole()
}

/// Smallest normal subgroup containing `gens`.
pub fn normal_closure(g: &Group, gens: &[usize]) -> Subgroup {
    let mut conj: HashSet<usize> = HashSet::new();
    for &x in gens {
        for y in 0..g.order() {
            conj.insert(g.conjugate(x, y));
        }
    }
    let gens: Vec<usize> = conj.into_iter().collect();
    g.subgroup_generated(&gens)
}

pub fn normal_subgroups(g: &Group) -> Result<Vec<Subgroup>> {
    normal_subgroups_within(g, &Budget::unlimited())
}

/// Every normal subgroup: normal closures of the conjugacy classes, closed
/// under products.
pub fn normal_subgroups_within(g: &Group, budget: &Budget) -> Result<Vec<Subgroup>> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut found: Vec<Subgroup> = Vec::new();
    let mut minimal: Vec<Subgroup> = Vec::new();
    for class in g.conjugacy_classes() {
        let nc = normal_closure(g, &class[..1]);
        if seen.insert(nc.elements().to_vec()) {
            minimal.push(nc.clone());
            found.push(nc);
        }
    }
    let mut i = 0;
    while i < found.len() {
        budget.check()?;
        let current = found[i].clone();
        for m in &minimal {
            if m.is_subgroup_of(&current) {
                continue;
            }
            let joined = current.join(m);
            if seen.insert(joined.elements().to_vec()) {
                found.push(joined);
            }
        }
        i += 1;
    }
    found.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    Ok(found)
}

/// Summary of the basic structural operations.
#[derive(Clone, Debug)]
pub struct Structure {
    pub center: Subgroup,
    pub commutator_subgroup: Subgroup,
    pub derived_series: Vec<Subgroup>,
    pub conjugacy_classes: Vec<Vec<usize>>,
    pub normal_subgroups: Vec<Subgroup>,
    pub is_solvable: bool,
    pub is_perfect: bool,
}

pub fn structure_ops(g: &Group, cap: usize, budget: &Budget) -> Result<Structure> {
    if g.order() > cap {
        return Err(Error::CapExceeded { what: "normal subgroup enumeration", size: g.order(), cap });
    }
    let series = derived_series(g);
    let solvable = series.last().unwrap().is_trivial();
    Ok(Structure {
        center: center(g),
        commutator_subgroup: series.get(1).cloned().unwrap_or_else(|| g.whole()),
        is_perfect: series.len() == 1,
        derived_series: series,
        conjugacy_classes: g.conjugacy_classes().to_vec(),
        normal_subgroups: normal_subgroups_within(g, budget)?,
        is_solvable: solvable,
    })
}

/// `G/N` with the canonical projection. Cosets are labelled by their
/// smallest element.
pub fn quotient_group(g: &Group, normal: &Subgroup) -> Result<(Group, Homomorphism)> {
    if !normal.parent().same_as(g) {
        return Err(Error::ParentMismatch);
    }
    if !normal.is_normal() {
        return Err(Error::NotNormal);
    }
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &h in normal.elements() {
            coset_of[g.mul(x, h)] = id;
        }
    }
    let q = reps.len();
    let mut table = vec![0u16; q * q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i * q + j] = coset_of[g.mul(a, b)] as u16;
        }
    }
    let labels = reps.iter().map(|&r| format!("[{}]", g.label(r))).collect();
    let origin = format!("{} / subgroup of order {}", g.origin(), normal.order());
    let quotient = Group::from_table(table, labels, origin, None)?;
    let projection = Homomorphism { source: g.clone(), target: quotient.clone(), map: coset_of };
    Ok((quotient, projection))
}

/// Conjugacy classes of subgroups among `subs`, as index lists into `subs`.
pub fn subgroup_conjugacy_classes(subs: &[Subgroup]) -> Vec<Vec<usize>> {
    let index: HashMap<&[usize], usize> =
        subs.iter().enumerate().map(|(i, s)| (s.elements(), i)).collect();
    let mut class_of = vec![usize::MAX; subs.len()];
    let mut classes = Vec::new();
    for (i, s) in subs.iter().enumerate() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        for x in 0..s.parent().order() {
            let c = s.conjugate_by(x);
            if let Some(&j) = index.get(c.elements()) {
                if class_of[j] == usize::MAX {
                    class_of[j] = id;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

/// Elements whose order divides `m`, if they form a subgroup.
pub fn elements_of_order_dividing(g: &Group, m: usize) -> Vec<usize> {
    let orders = g.element_orders();
    (0..g.order()).filter(|&x| m % orders[x] == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{cyclic, direct_product, generalized_quaternion};

    #[test]
    fn cyclic_prime_has_two_subgroups() {
        assert_eq!(all_subgroups(&cyclic(7).unwrap()).unwrap().len(), 2);
    }

    #[test]
    fn q8_subgroups_and_structure() {
        let q8 = generalized_quaternion(8).unwrap();
        let subs = all_subgroups(&q8).unwrap();
        let orders: Vec<usize> = subs.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 8]);
        assert_eq!(center(&q8).order(), 2);
        assert_eq!(commutator_subgroup(&q8).order(), 2);
        assert!(is_solvable(&q8));
        assert!(subs.iter().all(|s| s.is_normal()));
        assert_eq!(normal_subgroups(&q8).unwrap().len(), 6);
    }

    #[test]
    fn c3xc3_has_six_subgroups() {
        let c3 = cyclic(3).unwrap();
        let g = direct_product(&c3, &c3).unwrap();
        assert_eq!(all_subgroups(&g).unwrap().len(), 6);
    }

    #[test]
    fn abelian_structure() {
        let g = cyclic(12).unwrap();
        let s = structure_ops(&g, DEFAULT_SUBGROUP_CAP, &Budget::unlimited()).unwrap();
        assert!(s.center.is_whole());
        assert!(s.commutator_subgroup.is_trivial());
        assert!(s.is_solvable && !s.is_perfect);
        assert_eq!(s.normal_subgroups.len(), 6);
    }

    #[test]
    fn sylow_in_c6() {
        let g = cyclic(6).unwrap();
        assert_eq!(sylow_subgroup(&g, 2).order(), 2);
        assert_eq!(sylow_subgroup(&g, 5).order(), 1);
    }

    #[test]
    fn quotient_by_whole_and_center() {
        let q8 = generalized_quaternion(8).unwrap();
        let (t, proj) = quotient_group(&q8, &q8.whole()).unwrap();
        assert_eq!(t.order(), 1);
        assert!(proj.verify());
        let (k4, proj) = quotient_group(&q8, &center(&q8)).unwrap();
        assert_eq!(k4.order(), 4);
        assert!(k4.element_orders().iter().all(|&o| o <= 2));
        assert_eq!(proj.kernel(), center(&q8));
    }

    #[test]
    fn enumeration_respects_cap_and_budget() {
        let g = cyclic(30).unwrap();
        assert!(matches!(
            all_subgroups_within(&g, 10, &Budget::unlimited()),
            Err(Error::CapExceeded { .. })
        ));
        let expired = Budget::with_timeout(std::time::Duration::ZERO);
        assert_eq!(all_subgroups_within(&g, 100, &expired), Err(Error::Cancelled));
    }
}
