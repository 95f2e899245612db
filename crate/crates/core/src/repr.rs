//! Exact linear representations over cyclotomic fields and the freeness test
//! det(ρ(g) − I) ≠ 0 for g ≠ 1.

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::classify;
use crate::constructors;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{Group, Homomorphism, Subgroup};
use crate::iso;
use crate::lattice;

/// Square matrix over Q(ζₙ), row-major, all entries in conductor n.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RepMatrix {
    degree: usize,
    conductor: u32,
    entries: Vec<Cyclotomic>,
}

impl RepMatrix {
    pub fn from_entries(degree: usize, entries: Vec<Cyclotomic>) -> Result<Self> {
        if entries.len() != degree * degree || degree == 0 {
            return Err(Error::BadSize(format!("{} entries for degree {degree}", entries.len())));
        }
        let conductor = entries.iter().fold(1u64, |acc, e| arith::lcm(acc, e.conductor() as u64)) as u32;
        let entries = entries.iter().map(|e| e.lift(conductor)).collect::<Result<_>>()?;
        Ok(RepMatrix { degree, conductor, entries })
    }

    pub fn identity(degree: usize, conductor: u32) -> Self {
        Self::scalar(degree, &Cyclotomic::one(conductor))
    }

    pub fn scalar(degree: usize, s: &Cyclotomic) -> Self {
        let zero = Cyclotomic::zero(s.conductor());
        let entries = (0..degree * degree)
            .map(|k| if k / degree == k % degree { s.clone() } else { zero.clone() })
            .collect();
        RepMatrix { degree, conductor: s.conductor(), entries }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.degree + j]
    }

    pub fn lift(&self, m: u32) -> Result<Self> {
        Ok(RepMatrix {
            degree: self.degree,
            conductor: m,
            entries: self.entries.iter().map(|e| e.lift(m)).collect::<Result<_>>()?,
        })
    }

    fn aligned(&self, o: &Self) -> (Self, Self) {
        if self.conductor == o.conductor {
            return (self.clone(), o.clone());
        }
        let m = arith::lcm(self.conductor as u64, o.conductor as u64) as u32;
        (self.lift(m).unwrap(), o.lift(m).unwrap())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree, "degree mismatch");
        let (a, b) = self.aligned(o);
        let d = a.degree;
        let mut entries = vec![Cyclotomic::zero(a.conductor); d * d];
        for i in 0..d {
            for k in 0..d {
                let x = &a.entries[i * d + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let y = &b.entries[k * d + j];
                    if !y.is_zero() {
                        entries[i * d + j] = &entries[i * d + j] + &(x * y);
                    }
                }
            }
        }
        RepMatrix { degree: d, conductor: a.conductor, entries }
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b) = self.aligned(o);
        let entries = a.entries.iter().zip(&b.entries).map(|(x, y)| x + y).collect();
        RepMatrix { degree: a.degree, conductor: a.conductor, entries }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let (a, b) = self.aligned(o);
        let entries = a.entries.iter().zip(&b.entries).map(|(x, y)| x - y).collect();
        RepMatrix { degree: a.degree, conductor: a.conductor, entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.degree, self.conductor)
    }

    /// Kronecker product A ⊗ B.
    pub fn kron(&self, o: &Self) -> Self {
        let (a, b) = self.aligned(o);
        let (p, q) = (a.degree, b.degree);
        let d = p * q;
        let mut entries = Vec::with_capacity(d * d);
        for row in 0..d {
            for col in 0..d {
                let x = &a.entries[(row / q) * p + col / q];
                let y = &b.entries[(row % q) * q + col % q];
                entries.push(x * y);
            }
        }
        RepMatrix { degree: d, conductor: a.conductor, entries }
    }

    /// Exact determinant, by cofactor formulas up to degree 3 and Gaussian
    /// elimination above.
    pub fn det(&self) -> Cyclotomic {
        let d = self.degree;
        let e = |i: usize, j: usize| &self.entries[i * d + j];
        match d {
            1 => e(0, 0).clone(),
            2 => &(e(0, 0) * e(1, 1)) - &(e(0, 1) * e(1, 0)),
            3 => {
                let m = |r1: usize, r2: usize, c1: usize, c2: usize| &(e(r1, c1) * e(r2, c2)) - &(e(r1, c2) * e(r2, c1));
                let t0 = e(0, 0) * &m(1, 2, 1, 2);
                let t1 = e(0, 1) * &m(1, 2, 0, 2);
                let t2 = e(0, 2) * &m(1, 2, 0, 1);
                &(&t0 - &t1) + &t2
            }
            _ => {
                let mut a: Vec<Vec<Cyclotomic>> = (0..d).map(|i| (0..d).map(|j| e(i, j).clone()).collect()).collect();
                let mut det = Cyclotomic::one(self.conductor);
                for col in 0..d {
                    let Some(p) = (col..d).find(|&r| !a[r][col].is_zero()) else {
                        return Cyclotomic::zero(self.conductor);
                    };
                    if p != col {
                        a.swap(p, col);
                        det = -&det;
                    }
                    det = &det * &a[col][col];
                    let inv = a[col][col].inverse().expect("pivot is nonzero");
                    for r in col + 1..d {
                        if a[r][col].is_zero() {
                            continue;
                        }
                        let f = &a[r][col] * &inv;
                        for c in col..d {
                            let t = &f * &a[col][c];
                            a[r][c] = &a[r][c] - &t;
                        }
                    }
                }
                det
            }
        }
    }
}

/// A homomorphism G → GL_d(Q(ζₙ)), stored elementwise.
#[derive(Clone, Debug)]
pub struct Representation {
    group: Group,
    degree: usize,
    conductor: u32,
    images: Vec<RepMatrix>,
}

/// Above this order multiplicativity is checked on x·g for a generating
/// sequence g, which still determines the whole map.
pub const FULL_MULTIPLICATIVITY_LIMIT: usize = 128;

impl Representation {
    pub fn new(group: &Group, images: Vec<RepMatrix>) -> Result<Self> {
        if images.len() != group.order() {
            return Err(Error::BadSize(format!("{} images for a group of order {}", images.len(), group.order())));
        }
        let degree = images[0].degree();
        if images.iter().any(|m| m.degree() != degree) {
            return Err(Error::BadSize("images of different degrees".into()));
        }
        let conductor = images.iter().fold(1u64, |acc, m| arith::lcm(acc, m.conductor() as u64)) as u32;
        let images: Vec<RepMatrix> = images.iter().map(|m| m.lift(conductor)).collect::<Result<_>>()?;
        let rep = Representation { group: group.clone(), degree, conductor, images };
        rep.check_multiplicative()?;
        Ok(rep)
    }

    fn check_multiplicative(&self) -> Result<()> {
        let g = &self.group;
        if !self.images[0].is_identity() {
            return Err(Error::Inconsistent("identity does not map to I".into()));
        }
        let right: Vec<usize> = if g.order() <= FULL_MULTIPLICATIVITY_LIMIT {
            (0..g.order()).collect()
        } else {
            iso::generating_sequence(g)
        };
        for x in 0..g.order() {
            for &y in &right {
                if self.images[g.mul(x, y)] != self.images[x].mul(&self.images[y]) {
                    return Err(Error::Inconsistent(format!(
                        "rho({}) rho({}) != rho of the product",
                        g.label(x),
                        g.label(y)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn image(&self, g: usize) -> &RepMatrix {
        &self.images[g]
    }

    /// ρ(N(H)) = Σ_{h∈H} ρ(h).
    pub fn norm_image(&self, h: &Subgroup) -> RepMatrix {
        h.elements()
            .iter()
            .fold(RepMatrix::scalar(self.degree, &Cyclotomic::zero(self.conductor)), |acc, &x| acc.add(&self.images[x]))
    }

    pub fn restrict(&self, h: &Subgroup) -> Result<Representation> {
        let (_, inclusion) = h.to_group();
        self.pull_back(&inclusion)
    }

    /// ρ ∘ φ for a homomorphism φ into this representation's group.
    pub fn pull_back(&self, phi: &Homomorphism) -> Result<Representation> {
        if !phi.target.same_as(&self.group) {
            return Err(Error::ParentMismatch);
        }
        let images = phi.map.iter().map(|&y| self.images[y].clone()).collect();
        Representation::new(&phi.source, images)
    }

    pub fn export(&self, group_spec: &str) -> RepresentationExport {
        let images = self
            .images
            .iter()
            .map(|m| {
                let mut entries = Vec::new();
                for i in 0..self.degree {
                    for j in 0..self.degree {
                        let v = m.get(i, j);
                        if !v.is_zero() {
                            let coeffs = v.coefficients().iter().map(|q| q.to_string()).collect();
                            entries.push(EntryExport { row: i, col: j, value: coeffs });
                        }
                    }
                }
                entries
            })
            .collect();
        RepresentationExport {
            group_spec: group_spec.to_string(),
            degree: self.degree,
            conductor: self.conductor,
            images,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryExport {
    pub row: usize,
    pub col: usize,
    /// Coefficients of 1, ζ, ζ², … over the representation's conductor.
    pub value: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationExport {
    pub group_spec: String,
    pub degree: usize,
    pub conductor: u32,
    pub images: Vec<Vec<EntryExport>>,
}

impl RepresentationExport {
    /// Rebuild against `g`, re-running the multiplicativity check.
    pub fn import(&self, g: &Group) -> Result<Representation> {
        let n = self.conductor;
        let phi_deg = crate::cyclotomic::cyclotomic_polynomial(n).len() - 1;
        let mut images = Vec::with_capacity(self.images.len());
        for entries in &self.images {
            let mut cells = vec![Cyclotomic::zero(n); self.degree * self.degree];
            for e in entries {
                if e.row >= self.degree || e.col >= self.degree || e.value.len() != phi_deg {
                    return Err(Error::BadSize("entry outside the matrix or of wrong length".into()));
                }
                let mut v = Cyclotomic::zero(n);
                for (k, s) in e.value.iter().enumerate() {
                    let q: num_rational::BigRational =
                        s.parse().map_err(|_| Error::BadParams(vec![format!("bad rational {s}")]))?;
                    v = &v + &Cyclotomic::zeta_pow(n, k as i64).scale(&q);
                }
                cells[e.row * self.degree + e.col] = v;
            }
            images.push(RepMatrix::from_entries(self.degree, cells)?.lift(n)?);
        }
        Representation::new(g, images)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub free: bool,
    pub failing_element: Option<usize>,
    pub annihilation_checked: bool,
}

/// Exact det(ρ(g) − I) for every g ≠ 1; when free, also Σ_{h∈H} ρ(h) = 0 for
/// every nontrivial cyclic H.
pub fn verify_free(rep: &Representation) -> FreenessReport {
    let id = RepMatrix::identity(rep.degree, rep.conductor);
    let failing = (1..rep.group.order()).find(|&g| rep.images[g].sub(&id).det().is_zero());
    if failing.is_some() {
        return FreenessReport { free: false, failing_element: failing, annihilation_checked: false };
    }
    let annihilates = lattice::cyclic_subgroups(&rep.group)
        .iter()
        .filter(|h| !h.is_trivial())
        .all(|h| rep.norm_image(h).is_zero());
    if !annihilates {
        // cannot happen for a genuine free representation
        return FreenessReport { free: false, failing_element: None, annihilation_checked: true };
    }
    FreenessReport { free: true, failing_element: None, annihilation_checked: true }
}

fn generator_of(h: &Subgroup) -> Option<usize> {
    let g = h.parent();
    h.elements().iter().copied().find(|&x| g.element_order(x) == h.order())
}

/// Generator ↦ ζ_N·I_d.
pub fn scalar_representation(c: &Group, dim: usize) -> Result<Representation> {
    let n = c.order();
    let gen = generator_of(&c.whole()).ok_or(Error::NotCyclic)?;
    let mut images = vec![RepMatrix::identity(dim, n as u32); n];
    let mut x = 0;
    for k in 0..n {
        images[x] = RepMatrix::scalar(dim, &Cyclotomic::zeta_pow(n as u32, k as i64));
        x = c.mul(x, gen);
    }
    Representation::new(c, images)
}

/// Monomial representation induced from the faithful character
/// h₀ᵉ ↦ ζ_m^(k·e) of a cyclic subgroup H = ⟨h₀⟩ of order m.
pub fn induced_representation(g: &Group, h: &Subgroup, k: i64) -> Result<Representation> {
    if !h.parent().same_as(g) {
        return Err(Error::ParentMismatch);
    }
    let m = h.order();
    let h0 = generator_of(h).ok_or(Error::NotCyclic)?;
    if arith::gcd(k.unsigned_abs(), m as u64) != 1 {
        return Err(Error::NotFaithful { k, m });
    }
    let mut log = vec![usize::MAX; g.order()];
    let mut x = 0;
    for e in 0..m {
        log[x] = e;
        x = g.mul(x, h0);
    }
    // left coset representatives, each the least index in its coset
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] == usize::MAX {
            for &y in h.elements() {
                coset_of[g.mul(x, y)] = reps.len();
            }
            reps.push(x);
        }
    }
    let t = reps.len();
    let cond = m as u32;
    let chars: Vec<Cyclotomic> = (0..m).map(|e| Cyclotomic::zeta_pow(cond, k * e as i64)).collect();
    let images = (0..g.order())
        .map(|x| {
            let mut cells = vec![Cyclotomic::zero(cond); t * t];
            for (j, &rj) in reps.iter().enumerate() {
                let y = g.mul(x, rj);
                let i = coset_of[y];
                let hh = g.mul(g.inv(reps[i]), y);
                cells[i * t + j] = chars[log[hh]].clone();
            }
            RepMatrix { degree: t, conductor: cond, entries: cells }
        })
        .collect();
    Representation::new(g, images)
}

/// a + b𝐢 + c𝐣 + d𝐤 ↦ [[a + bi, c + di], [−c + di, a − bi]].
pub fn quaternion_embedding_rep(g: &Group) -> Result<Representation> {
    let model = g.quaternion_model().ok_or(Error::NoQuaternionLabels)?;
    let base = model[0].w.conductor();
    let n = arith::lcm(4, base as u64) as u32;
    let i = Cyclotomic::zeta_pow(n, n as i64 / 4);
    let images = model
        .iter()
        .map(|q| {
            let [a, b, c, d] = [&q.w, &q.x, &q.y, &q.z].map(|v| v.lift(n).expect("model conductor divides n"));
            let bi = &b * &i;
            let di = &d * &i;
            RepMatrix::from_entries(2, vec![&a + &bi, &c + &di, &(-&c) + &di, &a - &bi])
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(g, images)
}

/// ρ_A ⊗ ρ_B on A × B (elements indexed a·|B| + b) for coprime |A|, |B|.
pub fn tensor_product_rep(ra: &Representation, rb: &Representation) -> Result<Representation> {
    let (a, b) = (&ra.group, &rb.group);
    if arith::gcd(a.order() as u64, b.order() as u64) != 1 {
        return Err(Error::NotCoprime(a.order(), b.order()));
    }
    let prod = constructors::direct_product(a, b)?;
    let m = b.order();
    let images = (0..prod.order())
        .map(|x| ra.images[x / m].kron(&rb.images[x % m]))
        .collect();
    Representation::new(&prod, images)
}

/// Nontrivial normal N, M with G = N × M and gcd(|N|, |M|) = 1.
fn coprime_decomposition(g: &Group) -> Result<Option<(Subgroup, Subgroup)>> {
    let n = g.order();
    let normals = lattice::normal_subgroups(g)?;
    for a in &normals {
        let k = a.order();
        if k == 1 || k == n || arith::gcd(k as u64, (n / k) as u64) != 1 {
            continue;
        }
        if let Some(b) = normals.iter().find(|b| b.order() == n / k) {
            return Ok(Some((a.clone(), b.clone())));
        }
    }
    Ok(None)
}

/// Isomorphism G → A × B sending a·b to (a, b).
fn product_isomorphism(g: &Group, a: &Subgroup, b: &Subgroup, prod: &Group) -> Result<Homomorphism> {
    let m = b.order();
    let mut map = vec![usize::MAX; g.order()];
    for (i, &x) in a.elements().iter().enumerate() {
        for (j, &y) in b.elements().iter().enumerate() {
            map[g.mul(x, y)] = i * m + j;
        }
    }
    Homomorphism::new(g, prod, map)
}

/// How a free representation was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Scalar,
    QuaternionEmbedding,
    Induced,
    Tensor,
    Transported,
}

/// Construct a free representation of a freely representable group, or
/// None for shapes without an explicit construction here (binary
/// tetrahedral type with 9 | |G| among them).
pub fn build_free_representation(g: &Group) -> Result<Option<(Representation, Construction)>> {
    if !classify::is_freely_representable(g)?.is_yes() {
        return Err(Error::NotFreelyRepresentable);
    }
    let built = build_unchecked(g)?;
    if let Some((rep, _)) = &built {
        let report = verify_free(rep);
        if !report.free {
            return Err(Error::Inconsistent(format!("constructed representation is not free: {report:?}")));
        }
    }
    Ok(built)
}

fn build_unchecked(g: &Group) -> Result<Option<(Representation, Construction)>> {
    if g.is_cyclic() {
        return Ok(Some((scalar_representation(g, 1)?, Construction::Scalar)));
    }
    if g.quaternion_model().is_some() {
        return Ok(Some((quaternion_embedding_rep(g)?, Construction::QuaternionEmbedding)));
    }
    let prime_elements: Vec<usize> =
        (1..g.order()).filter(|&x| arith::is_prime(g.element_order(x) as u64)).collect();
    let hull = g.subgroup_generated(&prime_elements);
    if hull.is_cyclic() {
        let best = lattice::cyclic_subgroups(g)
            .into_iter()
            .filter(|c| hull.is_subgroup_of(c))
            .max_by_key(|c| c.order())
            .expect("the hull itself is cyclic");
        return Ok(Some((induced_representation(g, &best, 1)?, Construction::Induced)));
    }
    if let Some((a, b)) = coprime_decomposition(g)? {
        let (ga, _) = a.to_group();
        let (gb, _) = b.to_group();
        let (Some((ra, _)), Some((rb, _))) = (build_unchecked(&ga)?, build_unchecked(&gb)?) else {
            return Ok(None);
        };
        let t = tensor_product_rep(&ra, &rb)?;
        let phi = product_isomorphism(g, &a, &b, t.group())?;
        return Ok(Some((t.pull_back(&phi)?, Construction::Tensor)));
    }
    for model in [
        constructors::binary_tetrahedral_quaternions()?,
        constructors::binary_polyhedral(constructors::PolyhedralKind::Octahedral)?,
        constructors::binary_icosahedral_quaternions()?,
    ] {
        if model.order() != g.order() {
            continue;
        }
        if let Some(phi) = iso::is_isomorphic(g, &model) {
            let rep = quaternion_embedding_rep(&model)?;
            return Ok(Some((rep.pull_back(&phi)?, Construction::Transported)));
        }
    }
    Ok(None)
}
