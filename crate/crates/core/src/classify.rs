//! Sylow types, the odd core O(G), the cycloidal type of G/O(G), the MCC
//! subgroup μ(G), and the freely-representable decision.

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::constructors::{self, PolyhedralKind};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::iso::is_isomorphic;
use crate::lattice;

/// Order of SL₂(F₁₇), the smallest SL₂ over a Fermat prime ≥ 17.
pub const SL2_17_ORDER: usize = 4896;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SylowKind {
    Cyclic,
    GeneralizedQuaternion,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowEntry {
    pub prime: u64,
    pub order: usize,
    pub kind: SylowKind,
    pub elements: Vec<usize>,
}

pub fn sylow_profile(g: &Group) -> Vec<SylowEntry> {
    arith::prime_divisors(g.order() as u64)
        .into_iter()
        .map(|p| {
            let s = lattice::sylow_subgroup(g, p);
            let kind = if s.is_cyclic() {
                SylowKind::Cyclic
            } else if p == 2 && s.order() >= 8 && is_generalized_quaternion(&s) {
                SylowKind::GeneralizedQuaternion
            } else {
                SylowKind::Other
            };
            SylowEntry { prime: p, order: s.order(), kind, elements: s.elements().to_vec() }
        })
        .collect()
}

fn is_generalized_quaternion(s: &Subgroup) -> bool {
    let g = s.parent();
    let involutions = s.elements().iter().filter(|&&x| g.element_order(x) == 2).count();
    if involutions != 1 || s.is_cyclic() {
        return false;
    }
    let model = constructors::generalized_quaternion(s.order()).expect("order is a power of two >= 8");
    is_isomorphic(&s.to_group().0, &model).is_some()
}

pub fn is_sylow_cyclic(profile: &[SylowEntry]) -> bool {
    profile.iter().all(|e| e.kind == SylowKind::Cyclic)
}

pub fn is_sylow_cycloidal(profile: &[SylowEntry]) -> bool {
    profile
        .iter()
        .all(|e| e.kind == SylowKind::Cyclic || (e.prime == 2 && e.kind == SylowKind::GeneralizedQuaternion))
}

/// The largest normal subgroup of odd order.
pub fn odd_core(g: &Group) -> Result<Subgroup> {
    let odd: Vec<Subgroup> = lattice::normal_subgroups(g)?
        .into_iter()
        .filter(|n| n.order() % 2 == 1)
        .collect();
    let core = odd.iter().max_by_key(|n| n.order()).cloned().unwrap_or_else(|| g.trivial());
    if !odd.iter().all(|n| n.is_subgroup_of(&core)) {
        return Err(Error::Inconsistent("odd normal subgroups have no maximum".into()));
    }
    Ok(core)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CycloidalType {
    SylowCyclic,
    QuaternionType,
    BinaryTetrahedralType,
    BinaryOctahedralType,
    NonSolvable,
    NotCycloidal,
}

/// Type of a Sylow-cycloidal group, read off from G/O(G).
pub fn cycloidal_type(g: &Group) -> Result<CycloidalType> {
    if !is_sylow_cycloidal(&sylow_profile(g)) {
        return Err(Error::NotCycloidal);
    }
    if !lattice::is_solvable(g) {
        return Ok(CycloidalType::NonSolvable);
    }
    let core = odd_core(g)?;
    let (q, _) = lattice::quotient_group(g, &core)?;
    let n = q.order();
    if !n.is_power_of_two() && n != 24 && n != 48 {
        return Err(Error::Inconsistent(format!("G/O(G) has order {n}")));
    }
    if q.is_cyclic() {
        return Ok(CycloidalType::SylowCyclic);
    }
    if n.is_power_of_two() && n >= 8 && is_isomorphic(&q, &constructors::generalized_quaternion(n)?).is_some() {
        return Ok(CycloidalType::QuaternionType);
    }
    if n == 24 && is_isomorphic(&q, &constructors::sl2(3)?).is_some() {
        return Ok(CycloidalType::BinaryTetrahedralType);
    }
    if n == 48 && is_isomorphic(&q, &constructors::binary_polyhedral(PolyhedralKind::Octahedral)?).is_some() {
        return Ok(CycloidalType::BinaryOctahedralType);
    }
    Err(Error::Inconsistent("G/O(G) matches none of the four solvable types".into()))
}

/// μ(G), the centralizer of G′ in a Sylow-cyclic group, after checking that
/// it is cyclic, the only subgroup of its order, equal to G′·Z(G), and larger
/// than its index.
pub fn mcc_subgroup(g: &Group) -> Result<Subgroup> {
    if !is_sylow_cyclic(&sylow_profile(g)) {
        return Err(Error::NotSylowCyclic);
    }
    let derived = lattice::commutator_subgroup(g);
    let mu = derived.centralizer();
    if !mu.is_cyclic() {
        return Err(Error::Inconsistent("centralizer of G' is not cyclic".into()));
    }
    let same_order = lattice::cyclic_subgroups(g).iter().filter(|c| c.order() == mu.order()).count();
    if same_order != 1 {
        return Err(Error::Inconsistent("mu(G) is not the unique subgroup of its order".into()));
    }
    if derived.join(&lattice::center(g)) != mu {
        return Err(Error::Inconsistent("mu(G) differs from G'Z(G)".into()));
    }
    if g.order() > 1 && mu.order() <= mu.index() {
        return Err(Error::Inconsistent("|mu(G)| does not exceed its index".into()));
    }
    Ok(mu)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiprimeCheck {
    pub holds: bool,
    /// A noncyclic subgroup of order pq when the property fails.
    pub witness: Option<Vec<usize>>,
}

/// Whether every subgroup of order p·q (p, q prime, possibly equal) is
/// cyclic. A noncyclic such subgroup is generated by two of its subgroups of
/// prime order, so pairs of prime-order subgroups suffice.
pub fn is_semiprime_cyclic(g: &Group) -> SemiprimeCheck {
    let subs = lattice::prime_order_subgroups(g);
    let gens: Vec<usize> = subs
        .iter()
        .map(|c| *c.elements().iter().find(|&&x| x != 0).expect("prime order subgroup is nontrivial"))
        .collect();
    for i in 0..subs.len() {
        for j in i + 1..subs.len() {
            let bound = subs[i].order() * subs[j].order();
            if let Some(els) = g.closure_bounded(&[gens[i], gens[j]], bound) {
                let h = g.subgroup_from_elements(&els).expect("closure is a subgroup");
                if !h.is_cyclic() {
                    return SemiprimeCheck { holds: false, witness: Some(h.elements().to_vec()) };
                }
            }
        }
    }
    SemiprimeCheck { holds: true, witness: None }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum YesCriterion {
    /// Solvable and semiprime-cyclic.
    SolvableSemiprimeCyclic,
    /// An index ≤ 2 subgroup SL₂(F₅) × M with |M| prime to 30 and M free.
    SuzukiZassenhaus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoWitness {
    NoncyclicSemiprime { order: usize, elements: Vec<usize> },
    EmbeddedSl2 { p: u64, elements: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum FrVerdict {
    Yes { criterion: YesCriterion, supporting: Vec<Vec<usize>> },
    No { witness: NoWitness },
}

impl FrVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, FrVerdict::Yes { .. })
    }
}

/// H ≅ SL₂(F_p) × M inside a normal subgroup of index ≤ 2.
struct Sl2Structure {
    p: u64,
    sl2: Subgroup,
    complement: Subgroup,
}

fn sl2_structure(g: &Group, p: u64) -> Result<Option<Sl2Structure>> {
    let s = ((p - 1) * p * (p + 1)) as usize;
    if g.order() < s {
        return Ok(None);
    }
    let candidates: Vec<Subgroup> = lattice::normal_subgroups(g)?
        .into_iter()
        .filter(|h| h.index() <= 2 && h.order() % s == 0)
        .collect();
    for h in candidates {
        let m = h.order() / s;
        if arith::gcd(m as u64, s as u64) != 1 {
            continue;
        }
        let power_one = |k: usize| -> Vec<usize> {
            h.elements().iter().copied().filter(|&x| g.pow(x, k as u64) == 0).collect()
        };
        let (se, me) = (power_one(s), power_one(m));
        if se.len() != s || me.len() != m {
            continue;
        }
        let (Ok(sl), Ok(mm)) = (g.subgroup_from_elements(&se), g.subgroup_from_elements(&me)) else {
            continue;
        };
        let commute = sl.elements().iter().all(|&a| mm.elements().iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
        if !commute {
            continue;
        }
        if is_isomorphic(&sl.to_group().0, &constructors::sl2(p)?).is_some() {
            return Ok(Some(Sl2Structure { p, sl2: sl, complement: mm }));
        }
    }
    Ok(None)
}

pub fn is_freely_representable(g: &Group) -> Result<FrVerdict> {
    let sp = is_semiprime_cyclic(g);
    if let Some(w) = sp.witness {
        return Ok(FrVerdict::No { witness: NoWitness::NoncyclicSemiprime { order: w.len(), elements: w } });
    }
    if lattice::is_solvable(g) {
        return Ok(FrVerdict::Yes { criterion: YesCriterion::SolvableSemiprimeCyclic, supporting: vec![] });
    }
    if g.order() >= SL2_17_ORDER {
        if let Some(st) = sl2_structure(g, 17)? {
            return Ok(FrVerdict::No { witness: NoWitness::EmbeddedSl2 { p: st.p, elements: st.sl2.elements().to_vec() } });
        }
    }
    if let Some(st) = sl2_structure(g, 5)? {
        let m = st.complement.order() as u64;
        if arith::gcd(m, 30) == 1 && is_freely_representable(&st.complement.to_group().0)?.is_yes() {
            return Ok(FrVerdict::Yes {
                criterion: YesCriterion::SuzukiZassenhaus,
                supporting: vec![st.sl2.elements().to_vec(), st.complement.elements().to_vec()],
            });
        }
    }
    Err(Error::Inconsistent(
        "non-solvable semiprime-cyclic group without a recognised SL2 structure".into(),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupSummary {
    pub order: usize,
    pub elements: Vec<usize>,
}

impl From<&Subgroup> for SubgroupSummary {
    fn from(s: &Subgroup) -> Self {
        SubgroupSummary { order: s.order(), elements: s.elements().to_vec() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub order: usize,
    pub origin: String,
    pub is_solvable: bool,
    pub sylow_profile: Vec<SylowEntry>,
    pub is_sylow_cyclic: bool,
    pub is_sylow_cycloidal: bool,
    pub odd_core: SubgroupSummary,
    pub cycloidal_type: CycloidalType,
    pub mcc: Option<SubgroupSummary>,
    pub unique_involution: Option<usize>,
    /// The normal subgroup {1, z} for the unique involution z.
    pub involution_subgroup: Option<SubgroupSummary>,
    pub semiprime_cyclic: SemiprimeCheck,
    pub fr_verdict: FrVerdict,
}

pub fn classify(g: &Group) -> Result<ClassificationReport> {
    let profile = sylow_profile(g);
    let sylow_cyclic = is_sylow_cyclic(&profile);
    let cycloidal = is_sylow_cycloidal(&profile);
    let ctype = if cycloidal { cycloidal_type(g)? } else { CycloidalType::NotCycloidal };
    let mcc = if sylow_cyclic { Some(mcc_subgroup(g)?) } else { None };
    let involutions = g.involutions();
    let unique_involution = (involutions.len() == 1).then(|| involutions[0]);
    let involution_subgroup = unique_involution.map(|z| SubgroupSummary::from(&g.subgroup_generated(&[z])));
    let semiprime = is_semiprime_cyclic(g);
    let verdict = is_freely_representable(g)?;

    if let Some(mu) = &mcc {
        let primes = arith::prime_divisors(g.order() as u64);
        let all_divide = primes.iter().all(|&p| mu.order() as u64 % p == 0);
        if all_divide != verdict.is_yes() {
            return Err(Error::Inconsistent("Sylow-cyclic FR criterion disagrees with the verdict".into()));
        }
    }
    if cycloidal && !sylow_cyclic && unique_involution.is_none() {
        return Err(Error::Inconsistent("non-Sylow-cyclic cycloidal group without a unique involution".into()));
    }
    if verdict.is_yes() && !cycloidal {
        return Err(Error::Inconsistent("freely representable group that is not Sylow-cycloidal".into()));
    }

    Ok(ClassificationReport {
        order: g.order(),
        origin: g.origin().to_string(),
        is_solvable: lattice::is_solvable(g),
        sylow_profile: profile,
        is_sylow_cyclic: sylow_cyclic,
        is_sylow_cycloidal: cycloidal,
        odd_core: SubgroupSummary::from(&odd_core(g)?),
        cycloidal_type: ctype,
        mcc: mcc.as_ref().map(SubgroupSummary::from),
        unique_involution,
        involution_subgroup,
        semiprime_cyclic: semiprime,
        fr_verdict: verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::*;

    fn kinds(g: &Group) -> Vec<(u64, usize, SylowKind)> {
        sylow_profile(g).into_iter().map(|e| (e.prime, e.order, e.kind)).collect()
    }

    #[test]
    fn sylow_profiles() {
        assert_eq!(kinds(&cyclic(12).unwrap()), vec![(2, 4, SylowKind::Cyclic), (3, 3, SylowKind::Cyclic)]);
        assert_eq!(
            kinds(&sl2(3).unwrap()),
            vec![(2, 8, SylowKind::GeneralizedQuaternion), (3, 3, SylowKind::Cyclic)]
        );
        assert_eq!(kinds(&symmetric(4).unwrap()), vec![(2, 8, SylowKind::Other), (3, 3, SylowKind::Cyclic)]);
    }

    #[test]
    fn odd_cores() {
        let g = semidirect_cyclic(SemidirectParams::new(7, 3, 2).unwrap()).unwrap();
        assert_eq!(odd_core(&g).unwrap().order(), 21);
        let d7 = binary_polyhedral(PolyhedralKind::Dihedral(7)).unwrap();
        assert_eq!(odd_core(&d7).unwrap().order(), 7);
        assert!(odd_core(&sl2(3).unwrap()).unwrap().is_trivial());
    }

    #[test]
    fn cycloidal_types() {
        let g21 = semidirect_cyclic(SemidirectParams::new(7, 3, 2).unwrap()).unwrap();
        assert_eq!(cycloidal_type(&g21).unwrap(), CycloidalType::SylowCyclic);
        let c7q8 = direct_product(&cyclic(7).unwrap(), &generalized_quaternion(8).unwrap()).unwrap();
        assert_eq!(cycloidal_type(&c7q8).unwrap(), CycloidalType::QuaternionType);
        let c5o = direct_product(&cyclic(5).unwrap(), &binary_polyhedral(PolyhedralKind::Octahedral).unwrap()).unwrap();
        assert_eq!(cycloidal_type(&c5o).unwrap(), CycloidalType::BinaryOctahedralType);
        assert_eq!(cycloidal_type(&sl2(3).unwrap()).unwrap(), CycloidalType::BinaryTetrahedralType);
        assert_eq!(cycloidal_type(&sl2(5).unwrap()).unwrap(), CycloidalType::NonSolvable);
        assert_eq!(cycloidal_type(&dihedral(4).unwrap()), Err(Error::NotCycloidal));
    }

    #[test]
    fn mcc() {
        assert_eq!(mcc_subgroup(&cyclic(10).unwrap()).unwrap().order(), 10);
        let g21 = semidirect_cyclic(SemidirectParams::new(7, 3, 2).unwrap()).unwrap();
        assert_eq!(mcc_subgroup(&g21).unwrap().order(), 7);
        let g63 = semidirect_cyclic(SemidirectParams::new(7, 9, 2).unwrap()).unwrap();
        let mu = mcc_subgroup(&g63).unwrap();
        assert_eq!(mu.order(), 21);
        // μ = A·K with K the kernel of the action of B, here ⟨b³⟩
        let a = g63.subgroup_generated(&[1]);
        let k = g63.subgroup_generated(&[7 * 3]);
        assert_eq!(a.join(&k), mu);
        assert_eq!(mcc_subgroup(&generalized_quaternion(8).unwrap()), Err(Error::NotSylowCyclic));
    }

    #[test]
    fn semiprime() {
        assert!(is_semiprime_cyclic(&generalized_quaternion(8).unwrap()).holds);
        let s3 = symmetric(3).unwrap();
        let res = is_semiprime_cyclic(&s3);
        assert_eq!(res.witness.map(|w| w.len()), Some(6));
        let s7 = sl2(7).unwrap();
        let res = is_semiprime_cyclic(&s7);
        let w = res.witness.unwrap();
        assert_eq!(w.len(), 21);
        assert!(!s7.subgroup_from_elements(&w).unwrap().is_cyclic());
    }

    #[test]
    fn verdicts() {
        assert!(is_freely_representable(&cyclic(9).unwrap()).unwrap().is_yes());
        match is_freely_representable(&dihedral(5).unwrap()).unwrap() {
            FrVerdict::No { witness: NoWitness::NoncyclicSemiprime { order, .. } } => assert_eq!(order, 10),
            other => panic!("unexpected {other:?}"),
        }
        let g63 = semidirect_cyclic(SemidirectParams::new(7, 9, 2).unwrap()).unwrap();
        assert!(is_freely_representable(&g63).unwrap().is_yes());
        let g = direct_product(&sl2(5).unwrap(), &cyclic(7).unwrap()).unwrap();
        match is_freely_representable(&g).unwrap() {
            FrVerdict::Yes { criterion, supporting } => {
                assert_eq!(criterion, YesCriterion::SuzukiZassenhaus);
                assert_eq!(supporting.iter().map(Vec::len).collect::<Vec<_>>(), vec![120, 7]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reports() {
        let r = classify(&generalized_quaternion(8).unwrap()).unwrap();
        assert_eq!(r.cycloidal_type, CycloidalType::QuaternionType);
        assert!(r.fr_verdict.is_yes() && r.unique_involution.is_some());
        let g210 = semidirect_cyclic(SemidirectParams::new(35, 6, 4).unwrap()).unwrap();
        let r = classify(&g210).unwrap();
        assert_eq!(r.cycloidal_type, CycloidalType::SylowCyclic);
        assert_eq!(r.mcc.unwrap().order, 35);
        assert!(!r.fr_verdict.is_yes());
        let r = classify(&binary_polyhedral(PolyhedralKind::Octahedral).unwrap()).unwrap();
        assert_eq!(r.cycloidal_type, CycloidalType::BinaryOctahedralType);
        assert!(r.fr_verdict.is_yes());
    }
}
