//! Isomorphism testing by backtracking over images of a generating sequence.

use std::collections::VecDeque;

use crate::error::Result;
use crate::group::{Budget, Group, Homomorphism};

/// Sorted multiset of (element order, class size, centralizer order).
pub fn fingerprint(g: &Group) -> Vec<(usize, usize, usize)> {
    let orders = g.element_orders();
    let mut fp = Vec::with_capacity(g.order());
    for class in g.conjugacy_classes() {
        let c = class.len();
        for &x in class {
            fp.push((orders[x], c, g.order() / c));
        }
    }
    fp.sort_unstable();
    fp
}

fn class_sizes(g: &Group) -> Vec<usize> {
    let mut size = vec![0; g.order()];
    for class in g.conjugacy_classes() {
        for &x in class {
            size[x] = class.len();
        }
    }
    size
}

/// Greedy generating sequence, preferring elements of large order.
pub fn generating_sequence(g: &Group) -> Vec<usize> {
    let orders = g.element_orders();
    let mut candidates: Vec<usize> = (1..g.order()).collect();
    candidates.sort_by_key(|&x| (std::cmp::Reverse(orders[x]), x));
    let mut gens = Vec::new();
    let mut current = g.trivial();
    for x in candidates {
        if current.is_whole() {
            break;
        }
        if !current.contains(x) {
            gens.push(x);
            current = g.subgroup_generated(&gens);
        }
    }
    gens
}

const UNSET: usize = usize::MAX;

/// Propagate x·gᵢ ↦ φ(x)·φ(gᵢ) over ⟨gens⟩; None on any conflict.
fn propagate(g: &Group, h: &Group, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
    let (go, ho) = (g.element_orders(), h.element_orders());
    let mut map = vec![UNSET; g.order()];
    let mut used = vec![false; h.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&gi, &ii) in gens.iter().zip(imgs) {
            let y = g.mul(x, gi);
            let im = h.mul(map[x], ii);
            if map[y] == UNSET {
                if used[im] || go[y] != ho[im] {
                    return None;
                }
                map[y] = im;
                used[im] = true;
                queue.push_back(y);
            } else if map[y] != im {
                return None;
            }
        }
    }
    Some(map)
}

pub fn is_isomorphic(g: &Group, h: &Group) -> Option<Homomorphism> {
    is_isomorphic_within(g, h, &Budget::unlimited()).ok().flatten()
}

pub fn is_isomorphic_within(g: &Group, h: &Group, budget: &Budget) -> Result<Option<Homomorphism>> {
    if g.order() != h.order() || fingerprint(g) != fingerprint(h) {
        return Ok(None);
    }
    let gens = generating_sequence(g);
    if gens.is_empty() {
        return Ok(Some(Homomorphism::new(g, h, vec![0])?));
    }
    let (gsz, hsz) = (class_sizes(g), class_sizes(h));
    let (go, ho) = (g.element_orders(), h.element_orders());
    let mut candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| (0..h.order()).filter(|&y| ho[y] == go[x] && hsz[y] == gsz[x]).collect())
        .collect();
    // up to an inner automorphism of H the first image is a class representative
    let reps: Vec<usize> = h.conjugacy_classes().iter().map(|c| c[0]).collect();
    candidates[0].retain(|y| reps.contains(y));

    let mut imgs = Vec::with_capacity(gens.len());
    let found = search(g, h, &gens, &candidates, &mut imgs, budget)?;
    match found {
        Some(map) => {
            let hom = Homomorphism::new(g, h, map)?;
            debug_assert!(hom.is_bijective());
            Ok(Some(hom))
        }
        None => Ok(None),
    }
}

fn search(
    g: &Group,
    h: &Group,
    gens: &[usize],
    candidates: &[Vec<usize>],
    imgs: &mut Vec<usize>,
    budget: &Budget,
) -> Result<Option<Vec<usize>>> {
    let level = imgs.len();
    for &c in &candidates[level] {
        budget.check()?;
        imgs.push(c);
        if let Some(map) = propagate(g, h, &gens[..=level], imgs) {
            if level + 1 == gens.len() {
                if map.iter().all(|&m| m != UNSET) {
                    return Ok(Some(map));
                }
            } else if let Some(done) = search(g, h, gens, candidates, imgs, budget)? {
                return Ok(Some(done));
            }
        }
        imgs.pop();
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::*;
    use crate::error::Error;

    #[test]
    fn order_statistics_separate_c4_and_klein() {
        let c2 = cyclic(2).unwrap();
        let klein = direct_product(&c2, &c2).unwrap();
        assert!(is_isomorphic(&cyclic(4).unwrap(), &klein).is_none());
    }

    #[test]
    fn sl2_3_is_q8_extended_by_c3() {
        // Q8 ⋊ C3 with the generator of C3 cycling i → j → k
        let model = binary_polyhedral(PolyhedralKind::Dihedral(2)).unwrap();
        let lookup = |label: &str| (0..8).find(|&e| model.label(e) == label).unwrap();
        let (i, j, k) = (lookup("q(0,1,0,0)"), lookup("q(0,0,1,0)"), lookup("q(0,0,0,1)"));
        let minus_one = model.mul(i, i);
        let mut cycle = [usize::MAX; 8];
        for (a, b) in [(0, 0), (minus_one, minus_one), (i, j), (j, k), (k, i)] {
            cycle[a] = b;
            cycle[model.inv(a)] = model.inv(b);
        }
        let act = |e: usize, t: usize| (0..t).fold(e, |x, _| cycle[x]);
        let n = 24;
        let mul = |x: usize, y: usize| {
            let (a1, t1) = (x % 8, x / 8);
            let (a2, t2) = (y % 8, y / 8);
            model.mul(a1, act(a2, t1)) + 8 * ((t1 + t2) % 3)
        };
        let abstract_2t = crate::group::build_group(n, mul).unwrap();
        let s = sl2(3).unwrap();
        let w = is_isomorphic(&s, &abstract_2t).unwrap();
        assert!(w.verify() && w.is_bijective());
    }

    #[test]
    fn reflexive_and_symmetric() {
        let groups = vec![
            cyclic(12).unwrap(),
            dihedral(6).unwrap(),
            generalized_quaternion(16).unwrap(),
            sl2(3).unwrap(),
            semidirect_cyclic(SemidirectParams::new(7, 9, 2).unwrap()).unwrap(),
            binary_polyhedral(PolyhedralKind::Octahedral).unwrap(),
        ];
        for a in &groups {
            assert!(is_isomorphic(a, a).is_some());
            for b in &groups {
                assert_eq!(is_isomorphic(a, b).is_some(), is_isomorphic(b, a).is_some());
            }
        }
    }

    #[test]
    fn abelian_and_nonabelian_of_order_16() {
        let a = direct_product(&cyclic(4).unwrap(), &cyclic(4).unwrap()).unwrap();
        let b = direct_product(&generalized_quaternion(8).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert!(is_isomorphic(&a, &b).is_none());
    }

    #[test]
    fn cancellation() {
        let g = sl2(5).unwrap();
        let flag = std::sync::Arc::new(std::sync::atomic::AtomicBool::new(true));
        let budget = Budget::unlimited().with_cancel_flag(flag);
        assert_eq!(is_isomorphic_within(&g, &g, &budget).unwrap_err(), Error::Cancelled);
    }
}
