//! Finite groups as validated Cayley tables.
//!
//! Element `0` is always the identity. A [`Group`] is an immutable, cheaply
//! clonable handle; subgroups and homomorphisms hold such handles to their
//! parents so that elements of different groups can never be mixed up.

use std::collections::VecDeque;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::QuaternionModel;

/// Largest order for which associativity is checked on every triple.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 512;

/// Hard limit imposed by the `u16` table encoding.
pub const MAX_ORDER: usize = u16::MAX as usize;

static SAMPLING_SEED: AtomicU64 = AtomicU64::new(0x5eed_f00d);

/// Seed for the randomized associativity check used above
/// [`FULL_ASSOCIATIVITY_LIMIT`].
pub fn set_sampling_seed(seed: u64) {
    SAMPLING_SEED.store(seed, Ordering::Relaxed);
}

pub fn sampling_seed() -> u64 {
    SAMPLING_SEED.load(Ordering::Relaxed)
}

/// Caller-supplied deadline and cancellation flag for long enumerations.
#[derive(Clone, Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
    cancel: Option<Arc<AtomicBool>>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_timeout(timeout: Duration) -> Self {
        Budget { deadline: Some(Instant::now() + timeout), cancel: None }
    }

    pub fn with_cancel_flag(mut self, flag: Arc<AtomicBool>) -> Self {
        self.cancel = Some(flag);
        self
    }

    pub fn check(&self) -> Result<()> {
        if let Some(flag) = &self.cancel {
            if flag.load(Ordering::Relaxed) {
                return Err(Error::Cancelled);
            }
        }
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                return Err(Error::Cancelled);
            }
        }
        Ok(())
    }
}

struct GroupInner {
    order: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    labels: Vec<String>,
    origin: String,
    quaternions: Option<Arc<QuaternionModel>>,
    orders: OnceLock<Vec<usize>>,
    classes: OnceLock<Vec<Vec<usize>>>,
}

#[derive(Clone)]
pub struct Group(Arc<GroupInner>);

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.0.origin, self.0.order)
    }
}

/// Serialized form of a group: `{order, table, labels, origin}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupExport {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub labels: Vec<String>,
    pub origin: String,
}

/// Build a group from a multiplication oracle on `0..n`.
///
/// The oracle's identity is moved to index 0 if necessary.
pub fn build_group<F>(n: usize, oracle: F) -> Result<Group>
where
    F: Fn(usize, usize) -> usize,
{
    build_group_labeled(n, oracle, (0..n).map(|i| i.to_string()).collect(), "oracle".into())
}

pub(crate) fn build_group_labeled<F>(
    n: usize,
    oracle: F,
    labels: Vec<String>,
    origin: String,
) -> Result<Group>
where
    F: Fn(usize, usize) -> usize,
{
    if n == 0 {
        return Err(Error::NotAGroup("empty set".into()));
    }
    if n > MAX_ORDER {
        return Err(Error::CapExceeded { what: "group", size: n, cap: MAX_ORDER });
    }
    let mut raw = vec![0u16; n * n];
    for i in 0..n {
        for j in 0..n {
            let k = oracle(i, j);
            if k >= n {
                return Err(Error::NotAGroup(format!("product {i}*{j} = {k} out of range")));
            }
            raw[i * n + j] = k as u16;
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| raw[e * n + x] as usize == x && raw[x * n + e] as usize == x))
        .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
    let (table, labels) = if identity == 0 {
        (raw, labels)
    } else {
        // swap indices 0 and `identity`
        let swap = |x: usize| {
            if x == 0 {
                identity
            } else if x == identity {
                0
            } else {
                x
            }
        };
        let mut t = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                t[i * n + j] = swap(raw[swap(i) * n + swap(j)] as usize) as u16;
            }
        }
        let mut l = labels;
        l.swap(0, identity);
        (t, l)
    };
    Group::from_table(table, labels, origin, None)
}

impl Group {
    /// Validate a raw table with the identity already at index 0.
    pub(crate) fn from_table(
        table: Vec<u16>,
        labels: Vec<String>,
        origin: String,
        quaternions: Option<Arc<QuaternionModel>>,
    ) -> Result<Group> {
        let n = labels.len();
        if n == 0 || table.len() != n * n {
            return Err(Error::NotAGroup("table shape does not match label count".into()));
        }
        for x in 0..n {
            if table[x] as usize != x || table[x * n] as usize != x {
                return Err(Error::NotAGroup("index 0 is not the identity".into()));
            }
        }
        let mut seen = vec![0u32; n];
        for i in 0..n {
            let stamp = 2 * i as u32 + 1;
            for j in 0..n {
                let k = table[i * n + j] as usize;
                if seen[k] == stamp {
                    return Err(Error::NotAGroup(format!("row {i} repeats element {k}")));
                }
                seen[k] = stamp;
            }
        }
        for j in 0..n {
            let stamp = 2 * j as u32 + 2;
            for i in 0..n {
                let k = table[i * n + j] as usize;
                if seen[k] == stamp {
                    return Err(Error::NotAGroup(format!("column {j} repeats element {k}")));
                }
                seen[k] = stamp;
            }
        }
        let mut inverse = vec![0u16; n];
        for i in 0..n {
            let j = (0..n)
                .find(|&j| table[i * n + j] == 0)
                .expect("Latin rows contain the identity");
            if table[j * n + i] != 0 {
                return Err(Error::NotAGroup(format!("element {i} has no two-sided inverse")));
            }
            inverse[i] = j as u16;
        }
        check_associativity(&table, n)?;
        Ok(Group(Arc::new(GroupInner {
            order: n,
            table,
            inverse,
            labels,
            origin,
            quaternions,
            orders: OnceLock::new(),
            classes: OnceLock::new(),
        })))
    }

    pub fn import(export: &GroupExport) -> Result<Group> {
        let n = export.order;
        if export.table.len() != n || export.table.iter().any(|r| r.len() != n) {
            return Err(Error::NotAGroup("table is not square of the stated order".into()));
        }
        let labels = if export.labels.len() == n {
            export.labels.clone()
        } else {
            (0..n).map(|i| i.to_string()).collect()
        };
        build_group_labeled(n, |i, j| export.table[i][j], labels, export.origin.clone())
    }

    pub fn export(&self) -> GroupExport {
        let n = self.order();
        GroupExport {
            order: n,
            table: (0..n).map(|i| (0..n).map(|j| self.mul(i, j)).collect()).collect(),
            labels: self.0.labels.clone(),
            origin: self.0.origin.clone(),
        }
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.table[a * self.0.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inverse[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.0.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn origin(&self) -> &str {
        &self.0.origin
    }

    pub fn quaternion_model(&self) -> Option<&Arc<QuaternionModel>> {
        self.0.quaternions.as_ref()
    }

    /// Same group, new provenance string.
    pub fn with_origin(&self, origin: impl Into<String>) -> Group {
        Group(Arc::new(GroupInner {
            order: self.0.order,
            table: self.0.table.clone(),
            inverse: self.0.inverse.clone(),
            labels: self.0.labels.clone(),
            origin: origin.into(),
            quaternions: self.0.quaternions.clone(),
            orders: OnceLock::new(),
            classes: OnceLock::new(),
        }))
    }

    pub fn same_as(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn pow(&self, g: usize, k: u64) -> usize {
        let mut acc = 0;
        let mut base = g;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `x g x⁻¹`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn element_order(&self, g: usize) -> usize {
        self.element_orders()[g]
    }

    pub fn element_orders(&self) -> &[usize] {
        self.0.orders.get_or_init(|| {
            (0..self.order())
                .map(|g| {
                    let mut k = 1;
                    let mut x = g;
                    while x != 0 {
                        x = self.mul(x, g);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (i + 1..n).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.element_orders().iter().any(|&o| o == self.order())
    }

    pub fn involutions(&self) -> Vec<usize> {
        (0..self.order()).filter(|&g| self.element_order(g) == 2).collect()
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        self.0.classes.get_or_init(|| {
            let n = self.order();
            let mut class_of = vec![usize::MAX; n];
            let mut classes = Vec::new();
            for g in 0..n {
                if class_of[g] != usize::MAX {
                    continue;
                }
                let id = classes.len();
                let mut members = Vec::new();
                for x in 0..n {
                    let c = self.conjugate(g, x);
                    if class_of[c] == usize::MAX {
                        class_of[c] = id;
                        members.push(c);
                    }
                }
                members.sort_unstable();
                classes.push(members);
            }
            classes
        })
    }

    pub fn centralizer_order(&self, g: usize) -> usize {
        (0..self.order()).filter(|&x| self.mul(x, g) == self.mul(g, x)).count()
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { parent: self.clone(), elements: (0..self.order()).collect() }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup { parent: self.clone(), elements: vec![0] }
    }

    /// Least subgroup containing `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let elements = self
            .closure_bounded(gens, usize::MAX)
            .expect("unbounded closure always completes");
        Subgroup { parent: self.clone(), elements }
    }

    /// Breadth-first closure of `gens`; `None` once more than `bound`
    /// elements have been found.
    pub fn closure_bounded(&self, gens: &[usize], bound: usize) -> Option<Vec<usize>> {
        let n = self.order();
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut member = vec![false; n];
        let mut out = vec![0usize];
        member[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    out.push(y);
                    if out.len() > bound {
                        return None;
                    }
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        Some(out)
    }

    /// Subgroup from an explicit element list, checked for closure.
    pub fn subgroup_from_elements(&self, elements: &[usize]) -> Result<Subgroup> {
        let mut els: Vec<usize> = elements.to_vec();
        els.sort_unstable();
        els.dedup();
        if els.first() != Some(&0) || els.iter().any(|&x| x >= self.order()) {
            return Err(Error::NotAGroup("subset lacks identity or has invalid indices".into()));
        }
        let sub = Subgroup { parent: self.clone(), elements: els };
        for &a in &sub.elements {
            if !sub.contains(self.inv(a)) {
                return Err(Error::NotAGroup(format!("subset not closed under inverse at {a}")));
            }
            for &b in &sub.elements {
                if !sub.contains(self.mul(a, b)) {
                    return Err(Error::NotAGroup(format!("subset not closed at {a}*{b}")));
                }
            }
        }
        Ok(sub)
    }

    /// Count of `x` with `xⁿ ∈ class_set`; the set must be closed under conjugation.
    pub fn count_nth_roots(&self, class_set: &[usize], n: u64) -> Result<usize> {
        let mut member = vec![false; self.order()];
        for &c in class_set {
            member[c] = true;
        }
        for &c in class_set {
            for x in 0..self.order() {
                if !member[self.conjugate(c, x)] {
                    return Err(Error::NotConjugationClosed);
                }
            }
        }
        Ok((0..self.order()).filter(|&x| member[self.pow(x, n)]).count())
    }
}

fn check_associativity(table: &[u16], n: usize) -> Result<()> {
    let m = |a: usize, b: usize| table[a * n + b] as usize;
    let fail = |i: usize, j: usize, k: usize| {
        Err(Error::NotAGroup(format!("associativity fails for ({i}, {j}, {k})")))
    };
    if n <= FULL_ASSOCIATIVITY_LIMIT {
        for i in 0..n {
            for j in 0..n {
                let ij = m(i, j);
                for k in 0..n {
                    if m(ij, k) != m(i, m(j, k)) {
                        return fail(i, j, k);
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(sampling_seed());
        for _ in 0..10 * n * n {
            let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if m(m(i, j), k) != m(i, m(j, k)) {
                return fail(i, j, k);
            }
        }
    }
    Ok(())
}

/// A subgroup of a specific parent group, stored as a sorted element list.
#[derive(Clone)]
pub struct Subgroup {
    parent: Group,
    elements: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_as(&other.parent) && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {} of {:?}: {:?})", self.order(), self.parent, self.elements)
    }
}

impl Subgroup {
    pub(crate) fn from_sorted(parent: &Group, elements: Vec<usize>) -> Subgroup {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { parent: parent.clone(), elements }
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent.same_as(&other.parent) && self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent.order()
    }

    pub fn is_cyclic(&self) -> bool {
        let orders = self.parent.element_orders();
        self.elements.iter().any(|&g| orders[g] == self.order())
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.parent;
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn conjugate_by(&self, x: usize) -> Subgroup {
        let mut els: Vec<usize> = self.elements.iter().map(|&h| self.parent.conjugate(h, x)).collect();
        els.sort_unstable();
        Subgroup { parent: self.parent.clone(), elements: els }
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        (0..g.order()).all(|x| self.elements.iter().all(|&h| self.contains(g.conjugate(h, x))))
    }

    /// Subgroup generated by `self ∪ other`.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.elements.clone();
        gens.extend_from_slice(&other.elements);
        self.parent.subgroup_generated(&gens)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let els = self.elements.iter().copied().filter(|&g| other.contains(g)).collect();
        Subgroup { parent: self.parent.clone(), elements: els }
    }

    /// Elements of the normalizer `{x : x S x⁻¹ = S}`.
    pub fn normalizer(&self) -> Subgroup {
        let g = &self.parent;
        let els = (0..g.order())
            .filter(|&x| self.elements.iter().all(|&h| self.contains(g.conjugate(h, x))))
            .collect();
        Subgroup { parent: g.clone(), elements: els }
    }

    /// Elements commuting with every element of the subgroup.
    pub fn centralizer(&self) -> Subgroup {
        let g = &self.parent;
        let els = (0..g.order())
            .filter(|&x| self.elements.iter().all(|&h| g.mul(x, h) == g.mul(h, x)))
            .collect();
        Subgroup { parent: g.clone(), elements: els }
    }

    /// The subgroup as a standalone group, with the inclusion homomorphism.
    pub fn to_group(&self) -> (Group, Homomorphism) {
        let g = &self.parent;
        let n = self.order();
        let mut pos = vec![usize::MAX; g.order()];
        for (i, &e) in self.elements.iter().enumerate() {
            pos[e] = i;
        }
        let mut table = vec![0u16; n * n];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                table[i * n + j] = pos[g.mul(a, b)] as u16;
            }
        }
        let labels = self.elements.iter().map(|&e| g.label(e).to_string()).collect();
        let quaternions = g.quaternion_model().map(|model| {
            Arc::new(self.elements.iter().map(|&e| model[e].clone()).collect::<QuaternionModel>())
        });
        let origin = format!("subgroup of order {n} in {}", g.origin());
        let sub = Group::from_table(table, labels, origin, quaternions)
            .expect("closed subsets of a group form a group");
        let inclusion = Homomorphism { source: sub.clone(), target: g.clone(), map: self.elements.clone() };
        (sub, inclusion)
    }
}

/// A map between groups given elementwise.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    pub source: Group,
    pub target: Group,
    pub map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(source: &Group, target: &Group, map: Vec<usize>) -> Result<Homomorphism> {
        let h = Homomorphism { source: source.clone(), target: target.clone(), map };
        if h.verify() {
            Ok(h)
        } else {
            Err(Error::Inconsistent("map is not a homomorphism".into()))
        }
    }

    /// Full check of `map[xy] = map[x]·map[y]`.
    pub fn verify(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        self.map.len() == s.order()
            && self.map[0] == 0
            && self.map.iter().all(|&y| y < t.order())
            && (0..s.order()).all(|x| {
                (0..s.order()).all(|y| self.map[s.mul(x, y)] == t.mul(self.map[x], self.map[y]))
            })
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut hit = vec![false; self.target.order()];
        self.map.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    pub fn kernel(&self) -> Subgroup {
        let els = (0..self.source.order()).filter(|&x| self.map[x] == 0).collect();
        Subgroup::from_sorted(&self.source, els)
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Option<Homomorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.target.order()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(Homomorphism { source: self.target.clone(), target: self.source.clone(), map: inv })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_compose(p: &[usize], q: &[usize]) -> Vec<usize> {
        q.iter().map(|&i| p[i]).collect()
    }

    fn s3() -> Group {
        let perms: Vec<Vec<usize>> = vec![
            vec![1, 0, 2],
            vec![0, 1, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![0, 2, 1],
            vec![2, 1, 0],
        ];
        build_group(6, |i, j| {
            let c = perm_compose(&perms[i], &perms[j]);
            perms.iter().position(|p| *p == c).unwrap()
        })
        .unwrap()
    }

    #[test]
    fn trivial_oracle() {
        let g = build_group(1, |_, _| 0).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.element_order(0), 1);
    }

    #[test]
    fn addition_mod_five() {
        let g = build_group(5, |i, j| (i + j) % 5).unwrap();
        assert!((1..5).all(|x| g.element_order(x) == 5));
    }

    #[test]
    fn s3_from_permutations_relocates_identity() {
        let g = s3();
        let orders = g.element_orders();
        assert_eq!(orders.iter().filter(|&&o| o == 3).count(), 2);
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
        assert_eq!(g.label(0), "1");
    }

    #[test]
    fn rejects_non_groups() {
        // subtraction mod 3 has no two-sided identity
        assert!(matches!(build_group(3, |i, j| (i + 3 - j) % 3), Err(Error::NotAGroup(_))));
        // a Latin square with identity that is not associative (order-5 loop)
        let loop5 = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ];
        let err = build_group(5, |i, j| loop5[i][j]).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn closure_and_cyclic_subgroups() {
        let g = build_group(12, |i, j| (i + j) % 12).unwrap();
        assert_eq!(g.element_order(1), 12);
        assert_eq!(g.subgroup_generated(&[]).elements(), &[0]);
        assert_eq!(g.subgroup_generated(&[4, 6]).order(), 6);
        assert_eq!(g.closure_bounded(&[1], 5), None);
    }

    #[test]
    fn nth_roots_in_s3() {
        let g = s3();
        assert_eq!(g.count_nth_roots(&[0], 2).unwrap(), 4);
        assert_eq!(g.count_nth_roots(&[0], 6).unwrap(), 6);
        let tau = g.involutions()[0];
        assert_eq!(g.count_nth_roots(&[tau], 1), Err(Error::NotConjugationClosed));
    }

    #[test]
    fn export_round_trip() {
        let g = s3();
        let back = Group::import(&g.export()).unwrap();
        assert_eq!(back.export(), g.export());
    }

    #[test]
    fn budget_cancellation() {
        let flag = Arc::new(AtomicBool::new(false));
        let b = Budget::unlimited().with_cancel_flag(flag.clone());
        assert!(b.check().is_ok());
        flag.store(true, Ordering::Relaxed);
        assert_eq!(b.check(), Err(Error::Cancelled));
        assert_eq!(Budget::with_timeout(Duration::ZERO).check(), Err(Error::Cancelled));
    }
}
