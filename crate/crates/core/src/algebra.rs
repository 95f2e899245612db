//! The rational group algebra Q[G], subgroup norms, and norm relations of unity.
//!
//! A norm relation is an identity 1 = Σ a_H·N(H) with N(H) the sum of the
//! elements of a nontrivial subgroup H and a_H ∈ Q[G]. Since N(H) is a left
//! multiple of N(C) for any C ≤ H, the left ideal generated by all nontrivial
//! subgroup norms is already spanned by the vectors x·N(C) with C of prime
//! order, i.e. by indicator vectors of left cosets xC.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Budget, Group, Subgroup};
use crate::lattice;

/// Default bound on |G| for norm-relation searches.
pub const DEFAULT_NORM_CAP: usize = 256;

#[derive(Clone)]
pub struct GroupAlgebraElement {
    parent: Group,
    coeffs: Vec<BigRational>,
}

impl PartialEq for GroupAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_as(&other.parent) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support()
            .into_iter()
            .map(|x| format!("({})*[{}]", self.coeffs[x], self.parent.label(x)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl GroupAlgebraElement {
    pub fn zero(g: &Group) -> Self {
        GroupAlgebraElement { parent: g.clone(), coeffs: vec![BigRational::zero(); g.order()] }
    }

    pub fn one(g: &Group) -> Self {
        Self::basis(g, 0)
    }

    pub fn basis(g: &Group, x: usize) -> Self {
        let mut e = Self::zero(g);
        e.coeffs[x] = BigRational::one();
        e
    }

    pub fn from_coeffs(g: &Group, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != g.order() {
            return Err(Error::BadSize(format!("{} coefficients for a group of order {}", coeffs.len(), g.order())));
        }
        Ok(GroupAlgebraElement { parent: g.clone(), coeffs })
    }

    /// N(H), the sum of the elements of H.
    pub fn norm_element(h: &Subgroup) -> Self {
        let mut e = Self::zero(h.parent());
        for &x in h.elements() {
            e.coeffs[x] = BigRational::one();
        }
        e
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn coeff(&self, x: usize) -> &BigRational {
        &self.coeffs[x]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&x| !self.coeffs[x].is_zero()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_parent(&self, other: &Self) -> Result<()> {
        if self.parent.same_as(&other.parent) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_parent(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(GroupAlgebraElement { parent: self.parent.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        GroupAlgebraElement { parent: self.parent.clone(), coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Convolution product Σ x_g y_h [gh].
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_parent(other)?;
        let g = &self.parent;
        let mut out = Self::zero(g);
        let rhs = other.support();
        for a in self.support() {
            for &b in &rhs {
                out.coeffs[g.mul(a, b)] += &self.coeffs[a] * &other.coeffs[b];
            }
        }
        Ok(out)
    }
}

/// Coefficients a_H with Σ a_H·N(H) = 1.
#[derive(Clone, Debug)]
pub struct NormRelationCertificate {
    pub group: Group,
    pub terms: Vec<(Subgroup, GroupAlgebraElement)>,
    pub verified: bool,
}

impl NormRelationCertificate {
    /// Build from terms and check the identity by re-multiplication.
    pub fn new(group: &Group, terms: Vec<(Subgroup, GroupAlgebraElement)>) -> Self {
        let mut cert = NormRelationCertificate { group: group.clone(), terms, verified: false };
        cert.verified = verify_certificate(&cert);
        cert
    }

    /// Σ a_H·N(H).
    pub fn evaluate(&self) -> Result<GroupAlgebraElement> {
        let mut acc = GroupAlgebraElement::zero(&self.group);
        for (h, a) in &self.terms {
            if !h.parent().same_as(&self.group) {
                return Err(Error::ParentMismatch);
            }
            acc = acc.add(&a.mul(&GroupAlgebraElement::norm_element(h))?)?;
        }
        Ok(acc)
    }

    pub fn export(&self, group_spec: &str) -> CertificateExport {
        CertificateExport {
            group_spec: group_spec.to_string(),
            terms: self
                .terms
                .iter()
                .map(|(h, a)| TermExport {
                    subgroup_elements: h.elements().to_vec(),
                    coefficient: a.support().into_iter().map(|x| (x, a.coeff(x).to_string())).collect(),
                })
                .collect(),
            verified: self.verified,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermExport {
    pub subgroup_elements: Vec<usize>,
    pub coefficient: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateExport {
    pub group_spec: String,
    pub terms: Vec<TermExport>,
    pub verified: bool,
}

impl CertificateExport {
    /// Rebuild the certificate inside `g`, re-verifying it.
    pub fn import(&self, g: &Group) -> Result<NormRelationCertificate> {
        let mut terms = Vec::new();
        for t in &self.terms {
            let h = g.subgroup_from_elements(&t.subgroup_elements)?;
            let mut a = GroupAlgebraElement::zero(g);
            for (x, q) in &t.coefficient {
                if *x >= g.order() {
                    return Err(Error::BadSize(format!("element index {x} out of range")));
                }
                a.coeffs[*x] = q
                    .parse::<BigRational>()
                    .map_err(|_| Error::BadParams(vec![format!("bad rational {q}")]))?;
            }
            terms.push((h, a));
        }
        Ok(NormRelationCertificate::new(g, terms))
    }
}

/// True iff every subgroup is nontrivial and the terms sum to 1 exactly.
pub fn verify_certificate(c: &NormRelationCertificate) -> bool {
    if c.terms.iter().any(|(h, _)| h.is_trivial()) {
        return false;
    }
    match c.evaluate() {
        Ok(sum) => sum == GroupAlgebraElement::one(&c.group),
        Err(_) => false,
    }
}

/// Outcome of a norm-relation search.
#[derive(Clone, Debug)]
pub struct NormRelationSearch {
    pub certificate: Option<NormRelationCertificate>,
    /// Dimension of the left ideal spanned by the subgroup norms.
    pub ideal_dimension: usize,
}

/// A left coset xC of a prime-order subgroup, as a spanning vector.
struct CosetColumn {
    subgroup: usize,
    rep: usize,
    elements: Vec<usize>,
}

fn coset_columns(g: &Group, subgroups: &[Subgroup]) -> Vec<CosetColumn> {
    let mut cols = Vec::new();
    for (si, c) in subgroups.iter().enumerate() {
        let mut covered = vec![false; g.order()];
        for x in 0..g.order() {
            if covered[x] {
                continue;
            }
            let elements: Vec<usize> = c.elements().iter().map(|&h| g.mul(x, h)).collect();
            for &y in &elements {
                covered[y] = true;
            }
            cols.push(CosetColumn { subgroup: si, rep: x, elements });
        }
    }
    cols
}

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn invmod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, P - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base);
        }
        base = mulmod(base, base);
        e >>= 1;
    }
    acc
}

/// Incremental echelon basis over F_P.
struct ModEchelon {
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        for (p, b) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (vi, bi) in v.iter_mut().zip(b) {
                    if *bi != 0 {
                        *vi = (*vi + P - mulmod(c, *bi)) % P;
                    }
                }
            }
        }
        v
    }

    /// Insert v; true if it was independent.
    fn insert(&mut self, v: Vec<u64>) -> bool {
        let v = self.reduce(v);
        match v.iter().position(|&x| x != 0) {
            None => false,
            Some(p) => {
                let inv = invmod(v[p]);
                let v = v.into_iter().map(|x| mulmod(x, inv)).collect();
                self.rows.push((p, v));
                true
            }
        }
    }
}

/// Incremental echelon basis over Q with sparse rows.
pub struct RationalEchelon {
    n: usize,
    rows: Vec<(usize, Vec<(usize, BigRational)>)>,
}

impl RationalEchelon {
    pub fn new(n: usize) -> Self {
        RationalEchelon { n, rows: Vec::new() }
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        for (p, b) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (i, bi) in b {
                v[*i] -= &c * bi;
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    pub fn insert(&mut self, v: Vec<BigRational>) -> bool {
        debug_assert_eq!(v.len(), self.n);
        let v = self.reduce(v);
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let inv = v[p].recip();
                let row = v
                    .into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (i, x * &inv))
                    .collect();
                self.rows.push((p, row));
                true
            }
        }
    }
}

/// The left ideal of Q[G] generated by the norms of nontrivial subgroups,
/// computed exactly from prime-order cosets.
pub struct NormIdeal {
    group: Group,
    echelon: RationalEchelon,
}

impl NormIdeal {
    pub fn new(g: &Group, budget: &Budget) -> Result<Self> {
        let subs = lattice::prime_order_subgroups(g);
        let mut echelon = RationalEchelon::new(g.order());
        for col in coset_columns(g, &subs) {
            budget.check()?;
            if echelon.dimension() == g.order() {
                break;
            }
            let mut v = vec![BigRational::zero(); g.order()];
            for &y in &col.elements {
                v[y] = BigRational::one();
            }
            echelon.insert(v);
        }
        Ok(NormIdeal { group: g.clone(), echelon })
    }

    pub fn dimension(&self) -> usize {
        self.echelon.dimension()
    }

    pub fn contains(&self, x: &GroupAlgebraElement) -> Result<bool> {
        if !x.parent().same_as(&self.group) {
            return Err(Error::ParentMismatch);
        }
        Ok(self.echelon.contains(x.coeffs()))
    }
}

pub fn find_norm_relation(g: &Group) -> Result<NormRelationSearch> {
    find_norm_relation_within(g, DEFAULT_NORM_CAP, &Budget::unlimited())
}

/// Decide whether 1 lies in the left ideal spanned by the x·N(C), C of
/// prime order. A basis is chosen modulo a large prime, the coefficients are
/// then solved exactly over Q on that basis, and absence is confirmed by
/// exact elimination.
pub fn find_norm_relation_within(g: &Group, cap: usize, budget: &Budget) -> Result<NormRelationSearch> {
    let n = g.order();
    if n > cap {
        return Err(Error::CapExceeded { what: "norm relation search", size: n, cap });
    }
    let subs = lattice::prime_order_subgroups(g);
    let cols = coset_columns(g, &subs);

    let mut modular = ModEchelon { rows: Vec::new() };
    let mut basis = Vec::new();
    for (ci, col) in cols.iter().enumerate() {
        budget.check()?;
        if basis.len() == n {
            break;
        }
        let mut v = vec![0u64; n];
        for &y in &col.elements {
            v[y] = 1;
        }
        if modular.insert(v) {
            basis.push(ci);
        }
    }
    let mut unit = vec![0u64; n];
    unit[0] = 1;
    let unit_in_span = modular.reduce(unit).iter().all(|&x| x == 0);

    if unit_in_span {
        if let Some(lambda) = solve_exact(n, &cols, &basis, budget)? {
            let cert = assemble(g, &subs, &cols, &basis, &lambda);
            if cert.verified {
                return Ok(NormRelationSearch { certificate: Some(cert), ideal_dimension: basis.len() });
            }
        }
    }
    // exact confirmation: all spanning vectors with the unit appended last
    let ideal = NormIdeal::new(g, budget)?;
    let dim = ideal.dimension();
    if ideal.contains(&GroupAlgebraElement::one(g))? {
        let all: Vec<usize> = (0..cols.len()).collect();
        let lambda = solve_exact(n, &cols, &all, budget)?
            .ok_or_else(|| Error::Inconsistent("unit in ideal but exact solve failed".into()))?;
        let cert = assemble(g, &subs, &cols, &all, &lambda);
        if !cert.verified {
            return Err(Error::Inconsistent("norm relation failed verification".into()));
        }
        return Ok(NormRelationSearch { certificate: Some(cert), ideal_dimension: dim });
    }
    Ok(NormRelationSearch { certificate: None, ideal_dimension: dim })
}

/// Solve Σ λ_j·col_j = e₀ over Q for the selected columns, pivoting on the
/// entry of smallest numerator.
fn solve_exact(n: usize, cols: &[CosetColumn], selected: &[usize], budget: &Budget) -> Result<Option<Vec<BigRational>>> {
    let k = selected.len();
    let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); k + 1]; n];
    for (j, &ci) in selected.iter().enumerate() {
        for &y in &cols[ci].elements {
            m[y][j] = BigRational::one();
        }
    }
    m[0][k] = BigRational::one();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..k {
        budget.check()?;
        let pick = (row..n)
            .filter(|&r| !m[r][col].is_zero())
            .min_by(|&a, &b| {
                let ka = (m[a][col].numer().abs(), m[a][col].denom().clone());
                let kb = (m[b][col].numer().abs(), m[b][col].denom().clone());
                ka.cmp(&kb)
            });
        let Some(pr) = pick else { continue };
        m.swap(row, pr);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, line) in m.iter_mut().enumerate() {
            if r == row || line[col].is_zero() {
                continue;
            }
            let c = line[col].clone();
            for (x, p) in line.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &c * p;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    if m[row..].iter().any(|line| !line[k].is_zero()) {
        return Ok(None);
    }
    let mut lambda = vec![BigRational::zero(); k];
    for (r, &col) in pivot_cols.iter().enumerate() {
        lambda[col] = m[r][k].clone();
    }
    Ok(Some(lambda))
}

fn assemble(
    g: &Group,
    subs: &[Subgroup],
    cols: &[CosetColumn],
    selected: &[usize],
    lambda: &[BigRational],
) -> NormRelationCertificate {
    let mut coeffs: Vec<GroupAlgebraElement> = subs.iter().map(|_| GroupAlgebraElement::zero(g)).collect();
    for (j, &ci) in selected.iter().enumerate() {
        if lambda[j].is_zero() {
            continue;
        }
        let col = &cols[ci];
        coeffs[col.subgroup].coeffs[col.rep] += &lambda[j];
    }
    let terms = subs
        .iter()
        .cloned()
        .zip(coeffs)
        .filter(|(_, a)| !a.is_zero())
        .collect();
    NormRelationCertificate::new(g, terms)
}

/// 1 = (Σ N(Cᵢ) − N(G))/(k − 1) for subgroups whose nonidentity elements
/// partition G ∖ {1}.
pub fn partition_relation(g: &Group, parts: &[Subgroup]) -> Result<NormRelationCertificate> {
    let k = parts.len();
    if k < 2 {
        return Err(Error::NotAPartition("need at least two subgroups".into()));
    }
    let mut hits = vec![0usize; g.order()];
    for c in parts {
        if !c.parent().same_as(g) {
            return Err(Error::ParentMismatch);
        }
        if c.is_trivial() || c.is_whole() {
            return Err(Error::NotAPartition("parts must be proper and nontrivial".into()));
        }
        for &x in c.elements() {
            hits[x] += 1;
        }
    }
    if let Some(x) = (1..g.order()).find(|&x| hits[x] != 1) {
        return Err(Error::NotAPartition(format!("element {} lies in {} parts", g.label(x), hits[x])));
    }
    let w = BigRational::new(BigInt::one(), BigInt::from(k - 1));
    let mut terms: Vec<(Subgroup, GroupAlgebraElement)> =
        parts.iter().map(|c| (c.clone(), GroupAlgebraElement::one(g).scale(&w))).collect();
    terms.push((g.whole(), GroupAlgebraElement::one(g).scale(&-w)));
    Ok(NormRelationCertificate::new(g, terms))
}

fn find_label(g: &Group, label: &str) -> usize {
    (0..g.order()).find(|&x| g.label(x) == label).expect("constructor labels are stable")
}

fn half(k: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(k), BigInt::from(d))
}

/// In C₂×C₂ = ⟨σ₁, σ₂⟩: 2·1 = N H₁ + N H₂ − σ₁·N H₃ with H₁ = ⟨σ₁⟩,
/// H₂ = ⟨σ₂⟩, H₃ = ⟨σ₁σ₂⟩. With `twisted = false` the factor σ₁ is replaced
/// by 1, which does not give a relation.
pub fn wada_relation(twisted: bool) -> Result<NormRelationCertificate> {
    let c2 = crate::constructors::cyclic(2)?;
    let g = crate::constructors::direct_product(&c2, &c2)?;
    let s1 = find_label(&g, "(g,1)");
    let s2 = find_label(&g, "(1,g)");
    let s12 = g.mul(s1, s2);
    let one = GroupAlgebraElement::one(&g);
    let third = if twisted { GroupAlgebraElement::basis(&g, s1) } else { one.clone() };
    let terms = vec![
        (g.subgroup_generated(&[s1]), one.scale(&half(1, 2))),
        (g.subgroup_generated(&[s2]), one.scale(&half(1, 2))),
        (g.subgroup_generated(&[s12]), third.scale(&half(-1, 2))),
    ];
    Ok(NormRelationCertificate::new(&g, terms))
}

/// In C₃×C₃ = ⟨σ, τ⟩: 3·1 = N H₁ + N H₂ + N H₃ − (σ + στ)·N H₄ with
/// H₁ = ⟨σ⟩, H₂ = ⟨τ⟩, H₃ = ⟨στ⟩, H₄ = ⟨στ²⟩.
pub fn parry_relation() -> Result<NormRelationCertificate> {
    let c3 = crate::constructors::cyclic(3)?;
    let g = crate::constructors::direct_product(&c3, &c3)?;
    let s = find_label(&g, "(g,1)");
    let t = find_label(&g, "(1,g)");
    let st = g.mul(s, t);
    let st2 = g.mul(st, t);
    let one = GroupAlgebraElement::one(&g);
    let third = half(1, 3);
    let last = GroupAlgebraElement::basis(&g, s).add(&GroupAlgebraElement::basis(&g, st))?;
    let terms = vec![
        (g.subgroup_generated(&[s]), one.scale(&third)),
        (g.subgroup_generated(&[t]), one.scale(&third)),
        (g.subgroup_generated(&[st]), one.scale(&third)),
        (g.subgroup_generated(&[st2]), last.scale(&-third)),
    ];
    Ok(NormRelationCertificate::new(&g, terms))
}
