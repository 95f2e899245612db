//! Exact quaternions over real subfields, the double cover ℍ₁ → SO(3), and
//! finite groups of unit quaternions.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::Group;

/// Exact coordinates of each element of a quaternion group, by element index.
pub type QuaternionModel = Vec<Quaternion<Cyclotomic>>;

/// Exact scalar field used for quaternion coordinates and matrix entries.
pub trait Scalar: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn rational_like(&self, q: &BigRational) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn recip(&self) -> Result<Self>;
    fn is_zero(&self) -> bool;
    fn to_cyclotomic(&self) -> Cyclotomic;
    /// Bring a batch of values into one canonical ambient field, so that
    /// structural equality agrees with numerical equality among them.
    fn unify(_xs: &mut [&mut Self]) {}
}

impl Scalar for Cyclotomic {
    fn zero_like(&self) -> Self {
        Cyclotomic::zero(self.conductor())
    }
    fn one_like(&self) -> Self {
        Cyclotomic::one(self.conductor())
    }
    fn rational_like(&self, q: &BigRational) -> Self {
        Cyclotomic::from_rational(self.conductor(), q)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn recip(&self) -> Result<Self> {
        self.inverse()
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn to_cyclotomic(&self) -> Cyclotomic {
        self.clone()
    }
    fn unify(xs: &mut [&mut Self]) {
        let m = xs.iter().fold(1u64, |acc, x| arith::lcm(acc, x.conductor() as u64)) as u32;
        for x in xs.iter_mut() {
            **x = x.lift(m).expect("conductor divides the lcm");
        }
    }
}

/// An element a + b√d of Q, Q(√2) or Q(√5). Rational values always carry
/// d = 1 so that equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadFieldElement {
    d: u8,
    a: BigRational,
    b: BigRational,
}

impl QuadFieldElement {
    pub fn new(d: u8, a: BigRational, b: BigRational) -> Result<Self> {
        if ![1, 2, 5].contains(&d) {
            return Err(Error::BadParams(vec![format!("unsupported quadratic field d = {d}")]));
        }
        if d == 1 && !b.is_zero() {
            return Err(Error::BadParams(vec!["d = 1 requires b = 0".into()]));
        }
        Ok(Self::canonical(d, a, b))
    }

    fn canonical(d: u8, a: BigRational, b: BigRational) -> Self {
        if b.is_zero() {
            QuadFieldElement { d: 1, a, b }
        } else {
            QuadFieldElement { d, a, b }
        }
    }

    pub fn rational(q: BigRational) -> Self {
        QuadFieldElement { d: 1, a: q, b: BigRational::zero() }
    }

    pub fn integer(k: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// b·√d for rational b.
    pub fn surd(d: u8, b: BigRational) -> Result<Self> {
        Self::new(d, BigRational::zero(), b)
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn parts(&self) -> (&BigRational, &BigRational) {
        (&self.a, &self.b)
    }

    fn joint_d(&self, o: &Self) -> u8 {
        match (self.d, o.d) {
            (1, e) | (e, 1) => e,
            (e, f) if e == f => e,
            (e, f) => panic!("cannot combine elements of Q(√{e}) and Q(√{f})"),
        }
    }
}

impl fmt::Debug for QuadFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*r{}", self.b, self.d),
            (false, false) => write!(f, "{}+{}*r{}", self.a, self.b, self.d),
        }
    }
}

impl Scalar for QuadFieldElement {
    fn zero_like(&self) -> Self {
        Self::integer(0)
    }
    fn one_like(&self) -> Self {
        Self::integer(1)
    }
    fn rational_like(&self, q: &BigRational) -> Self {
        Self::rational(q.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        Self::canonical(self.joint_d(o), &self.a + &o.a, &self.b + &o.b)
    }
    fn minus(&self, o: &Self) -> Self {
        Self::canonical(self.joint_d(o), &self.a - &o.a, &self.b - &o.b)
    }
    fn times(&self, o: &Self) -> Self {
        let d = self.joint_d(o);
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &o.a + &dd * &self.b * &o.b;
        let b = &self.a * &o.b + &self.b * &o.a;
        Self::canonical(d, a, b)
    }
    fn negate(&self) -> Self {
        QuadFieldElement { d: self.d, a: -&self.a, b: -&self.b }
    }
    fn recip(&self) -> Result<Self> {
        let dd = BigRational::from_integer(BigInt::from(self.d));
        let n = &self.a * &self.a - &dd * &self.b * &self.b;
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.d, &self.a / &n, -&self.b / &n))
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn to_cyclotomic(&self) -> Cyclotomic {
        let root = match self.d {
            1 => return Cyclotomic::from_rational(1, &self.a),
            2 => Cyclotomic::sqrt2(),
            _ => Cyclotomic::sqrt5(),
        };
        let n = root.conductor();
        &Cyclotomic::from_rational(n, &self.a) + &root.scale(&self.b)
    }
}

/// w + x𝐢 + y𝐣 + z𝐤.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quaternion<S> {
    pub w: S,
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> Quaternion<S> {
    pub fn new(w: S, x: S, y: S, z: S) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn one_like(s: &S) -> Self {
        Quaternion::new(s.one_like(), s.zero_like(), s.zero_like(), s.zero_like())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a1, b1, c1, d1) = (&self.w, &self.x, &self.y, &self.z);
        let (a2, b2, c2, d2) = (&o.w, &o.x, &o.y, &o.z);
        Quaternion {
            w: a1.times(a2).minus(&b1.times(b2)).minus(&c1.times(c2)).minus(&d1.times(d2)),
            x: a1.times(b2).plus(&b1.times(a2)).plus(&c1.times(d2)).minus(&d1.times(c2)),
            y: a1.times(c2).minus(&b1.times(d2)).plus(&c1.times(a2)).plus(&d1.times(b2)),
            z: a1.times(d2).plus(&b1.times(c2)).minus(&c1.times(b2)).plus(&d1.times(a2)),
        }
    }

    pub fn conj(&self) -> Self {
        Quaternion { w: self.w.clone(), x: self.x.negate(), y: self.y.negate(), z: self.z.negate() }
    }

    pub fn neg(&self) -> Self {
        Quaternion { w: self.w.negate(), x: self.x.negate(), y: self.y.negate(), z: self.z.negate() }
    }

    /// |q|² = q·conj(q).
    pub fn norm(&self) -> S {
        self.w
            .times(&self.w)
            .plus(&self.x.times(&self.x))
            .plus(&self.y.times(&self.y))
            .plus(&self.z.times(&self.z))
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().minus(&self.w.one_like()).is_zero()
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm().recip()?;
        let c = self.conj();
        Ok(Quaternion { w: c.w.times(&n), x: c.x.times(&n), y: c.y.times(&n), z: c.z.times(&n) })
    }

    pub fn coords_mut(&mut self) -> [&mut S; 4] {
        [&mut self.w, &mut self.x, &mut self.y, &mut self.z]
    }

    pub fn to_cyclotomic(&self) -> Quaternion<Cyclotomic> {
        Quaternion {
            w: self.w.to_cyclotomic(),
            x: self.x.to_cyclotomic(),
            y: self.y.to_cyclotomic(),
            z: self.z.to_cyclotomic(),
        }
    }
}

impl<S: Scalar> fmt::Debug for Quaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for Quaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q({},{},{},{})", self.w, self.x, self.y, self.z)
    }
}

/// A 3×3 matrix acting on the pure quaternions in the basis (𝐢, 𝐣, 𝐤).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RotationMatrix3<S> {
    pub m: [[S; 3]; 3],
}

impl<S: Scalar> RotationMatrix3<S> {
    pub fn identity_like(s: &S) -> Self {
        let (z, o) = (s.zero_like(), s.one_like());
        RotationMatrix3 {
            m: [
                [o.clone(), z.clone(), z.clone()],
                [z.clone(), o.clone(), z.clone()],
                [z.clone(), z, o],
            ],
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).fold(self.m[0][0].zero_like(), |acc, k| acc.plus(&self.m[i][k].times(&o.m[k][j])))
            })
        });
        RotationMatrix3 { m }
    }

    pub fn transpose(&self) -> Self {
        RotationMatrix3 { m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[j][i].clone())) }
    }

    pub fn det(&self) -> S {
        let m = &self.m;
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            m[r1][c1].times(&m[r2][c2]).minus(&m[r1][c2].times(&m[r2][c1]))
        };
        m[0][0]
            .times(&minor(1, 2, 1, 2))
            .minus(&m[0][1].times(&minor(1, 2, 0, 2)))
            .plus(&m[0][2].times(&minor(1, 2, 0, 1)))
    }

    pub fn is_identity(&self) -> bool {
        (0..3).all(|i| {
            (0..3).all(|j| {
                let e = &self.m[i][j];
                if i == j {
                    e.minus(&e.one_like()).is_zero()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// MᵀM = I and det M = 1, checked exactly.
    pub fn is_rotation(&self) -> bool {
        let s = &self.m[0][0];
        self.transpose().mul(self).is_identity() && self.det().minus(&s.one_like()).is_zero()
    }
}

/// The matrix of v ↦ h v h⁻¹ on the pure quaternions.
pub fn rotation_of<S: Scalar>(h: &Quaternion<S>) -> Result<RotationMatrix3<S>> {
    if !h.is_unit() {
        return Err(Error::NotUnit);
    }
    let (z, o) = (h.w.zero_like(), h.w.one_like());
    let hinv = h.conj();
    let basis = [
        Quaternion::new(z.clone(), o.clone(), z.clone(), z.clone()),
        Quaternion::new(z.clone(), z.clone(), o.clone(), z.clone()),
        Quaternion::new(z.clone(), z.clone(), z, o),
    ];
    let cols: Vec<Quaternion<S>> = basis.iter().map(|e| h.mul(e).mul(&hinv)).collect();
    let m = std::array::from_fn(|i| {
        std::array::from_fn(|j| match i {
            0 => cols[j].x.clone(),
            1 => cols[j].y.clone(),
            _ => cols[j].z.clone(),
        })
    });
    Ok(RotationMatrix3 { m })
}

/// Cap on the size of a generated quaternion group.
pub const DEFAULT_QUATERNION_CAP: usize = 2000;

/// Cayley table of the multiplicative group generated by unit quaternions.
pub fn finite_quaternion_group<S: Scalar>(gens: &[Quaternion<S>], cap: usize) -> Result<Group> {
    let origin = format!(
        "quat({})",
        gens.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
    );
    if gens.is_empty() {
        let one = Quaternion::one_like(&Cyclotomic::one(1));
        let labels = vec![one.to_string()];
        return Group::from_table(vec![0], labels, origin, Some(Arc::new(vec![one])));
    }
    let mut gens: Vec<Quaternion<S>> = gens.to_vec();
    if gens.iter().any(|g| !g.is_unit()) {
        return Err(Error::NotUnit);
    }
    {
        let mut all: Vec<&mut S> = gens.iter_mut().flat_map(|q| q.coords_mut()).collect();
        S::unify(&mut all);
    }
    let identity = Quaternion::one_like(&gens[0].w);
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Quaternion<S>, usize> = HashMap::from([(identity, 0)]);
    let mut head = 0;
    while head < elements.len() {
        let e = elements[head].clone();
        head += 1;
        for g in &gens {
            let p = e.mul(g);
            if !index.contains_key(&p) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded { what: "quaternion group", size: elements.len() + 1, cap });
                }
                index.insert(p.clone(), elements.len());
                elements.push(p);
            }
        }
    }
    let n = elements.len();
    let mut table = vec![0u16; n * n];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            table[i * n + j] = index[&a.mul(b)] as u16;
        }
    }
    let labels = elements.iter().map(|q| q.to_string()).collect();
    let mut model: QuaternionModel = elements.iter().map(|q| q.to_cyclotomic()).collect();
    {
        let mut all: Vec<&mut Cyclotomic> = model.iter_mut().flat_map(|q| q.coords_mut()).collect();
        Cyclotomic::unify(&mut all);
    }
    Group::from_table(table, labels, origin, Some(Arc::new(model)))
}

/// Finite subgroups of SO(3), and the binary groups lying over them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BinaryKind {
    Cyclic,
    BinaryDihedral,
    #[serde(rename = "2T")]
    BinaryTetrahedral,
    #[serde(rename = "2O")]
    BinaryOctahedral,
    #[serde(rename = "2I")]
    BinaryIcosahedral,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct So3Identification {
    pub kind: BinaryKind,
    /// |G| for cyclic groups, n for 2Dₙ, 0 otherwise.
    pub parameter: usize,
    pub image_order: usize,
    pub contains_minus_one: bool,
}

/// Classify a unit quaternion group through its image in SO(3).
pub fn identify_so3_image(g: &Group) -> Result<So3Identification> {
    let model = g.quaternion_model().ok_or(Error::NotQuaternionGroup)?;
    let rotations: Vec<RotationMatrix3<Cyclotomic>> =
        model.iter().map(rotation_of).collect::<Result<_>>()?;
    let kernel: Vec<usize> = (0..g.order()).filter(|&e| rotations[e].is_identity()).collect();
    let minus_one = Quaternion::one_like(&model[0].w).neg();
    if kernel.len() > 2 || kernel.iter().any(|&e| e != 0 && model[e] != minus_one) {
        return Err(Error::Inconsistent("kernel of the double cover exceeds {±1}".into()));
    }
    let image_order = g.order() / kernel.len();
    let in_kernel = |e: usize| kernel.contains(&e);
    // order of the image of e: least k with e^k in the kernel
    let image_orders: Vec<usize> = (0..g.order())
        .map(|e| {
            let mut k = 1;
            let mut x = e;
            while !in_kernel(x) {
                x = g.mul(x, e);
                k += 1;
            }
            k
        })
        .collect();
    let has = |k: usize| image_orders.contains(&k);
    let contains_minus_one = kernel.len() == 2;
    let (kind, parameter) = if has(image_order) {
        (BinaryKind::Cyclic, g.order())
    } else if image_order % 2 == 0 && has(image_order / 2) {
        (BinaryKind::BinaryDihedral, image_order / 2)
    } else {
        match image_order {
            12 => (BinaryKind::BinaryTetrahedral, 0),
            24 => (BinaryKind::BinaryOctahedral, 0),
            60 => (BinaryKind::BinaryIcosahedral, 0),
            _ => return Err(Error::Inconsistent(format!("no SO(3) subgroup of order {image_order} matches"))),
        }
    };
    if kind != BinaryKind::Cyclic && !contains_minus_one {
        return Err(Error::Inconsistent("noncyclic unit group without −1".into()));
    }
    Ok(So3Identification { kind, parameter, image_order, contains_minus_one })
}

pub fn quat_q(w: QuadFieldElement, x: QuadFieldElement, y: QuadFieldElement, z: QuadFieldElement) -> Quaternion<QuadFieldElement> {
    Quaternion::new(w, x, y, z)
}

/// 𝐢, 𝐣, 𝐤 and (1+𝐢+𝐣+𝐤)/2 over Q.
pub fn hurwitz_generators() -> Vec<Quaternion<QuadFieldElement>> {
    let h = QuadFieldElement::ratio(1, 2);
    let z = QuadFieldElement::integer(0);
    let o = QuadFieldElement::integer(1);
    vec![
        quat_q(h.clone(), h.clone(), h.clone(), h),
        quat_q(z.clone(), o, z.clone(), z),
    ]
}

/// (1+𝐢)/√2 over Q(√2).
pub fn octahedral_generator() -> Quaternion<QuadFieldElement> {
    let s = QuadFieldElement::surd(2, BigRational::new(BigInt::one(), BigInt::from(2))).unwrap();
    quat_q(s.clone(), s, QuadFieldElement::integer(0), QuadFieldElement::integer(0))
}

/// (1+𝐢+𝐣+𝐤)/2 and (φ + φ⁻¹𝐢 + 𝐣)/2 with φ the golden ratio, over Q(√5).
pub fn icosahedral_generators() -> Vec<Quaternion<QuadFieldElement>> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let phi_half = QuadFieldElement::new(5, quarter.clone(), quarter.clone()).unwrap();
    let phi_inv_half = QuadFieldElement::new(5, -quarter.clone(), quarter).unwrap();
    let h = QuadFieldElement::rational(half);
    let z = QuadFieldElement::integer(0);
    vec![
        quat_q(h.clone(), h.clone(), h.clone(), h.clone()),
        quat_q(phi_half, phi_inv_half, h, z),
    ]
}

/// cos(π/n) + sin(π/n)𝐢 and 𝐣 over Q(ζ_lcm(4,2n)).
pub fn binary_dihedral_generators(n: usize) -> Vec<Quaternion<Cyclotomic>> {
    let big = arith::lcm(4, 2 * n as u64) as u32;
    let step = (big as usize / (2 * n)) as i64;
    let z = Cyclotomic::zeta_pow(big, step);
    let zi = Cyclotomic::zeta_pow(big, -step);
    let i = Cyclotomic::zeta_pow(big, big as i64 / 4);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let cos = (&z + &zi).scale(&half);
    let sin = (&(&z - &zi) * &(-&i)).scale(&half);
    let zero = Cyclotomic::zero(big);
    let one = Cyclotomic::one(big);
    vec![
        Quaternion::new(cos, sin, zero.clone(), zero.clone()),
        Quaternion::new(zero.clone(), zero.clone(), one, zero),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qi() -> Quaternion<QuadFieldElement> {
        let (z, o) = (QuadFieldElement::integer(0), QuadFieldElement::integer(1));
        quat_q(z.clone(), o, z.clone(), z)
    }

    fn qj() -> Quaternion<QuadFieldElement> {
        let (z, o) = (QuadFieldElement::integer(0), QuadFieldElement::integer(1));
        quat_q(z.clone(), z.clone(), o, z)
    }

    #[test]
    fn basic_relations() {
        let k = qi().mul(&qj());
        let zero = QuadFieldElement::integer(0);
        assert_eq!(k, quat_q(zero.clone(), zero.clone(), zero, QuadFieldElement::integer(1)));
        assert!(hurwitz_generators()[0].is_unit());
    }

    #[test]
    fn eighth_root_of_unity_over_q_sqrt2() {
        let q = octahedral_generator();
        assert_eq!(q.mul(&q), qi());
        let one = Quaternion::one_like(&q.w);
        let mut p = q.clone();
        let mut k = 1;
        while p != one {
            p = p.mul(&q);
            k += 1;
        }
        assert_eq!(k, 8);
    }

    #[test]
    fn rotations() {
        let one = Quaternion::one_like(&QuadFieldElement::integer(1));
        assert!(rotation_of(&one).unwrap().is_identity());
        let r = rotation_of(&qi()).unwrap();
        let (o, m) = (QuadFieldElement::integer(1), QuadFieldElement::integer(-1));
        let z = QuadFieldElement::integer(0);
        assert_eq!(r.m, [[o, z.clone(), z.clone()], [z.clone(), m.clone(), z.clone()], [z.clone(), z, m]]);
        let quarter = rotation_of(&octahedral_generator()).unwrap();
        assert!(quarter.is_rotation());
        // fixes the i-axis; cosine of the turn is the (j, j) entry, 2r² − 1 = 0
        assert_eq!(quarter.m[0][0], QuadFieldElement::integer(1));
        assert!(quarter.m[1][1].is_zero());
        let two = QuadFieldElement::integer(2);
        assert_eq!(rotation_of(&quat_q(two.clone(), two.clone(), two.clone(), two)), Err(Error::NotUnit));
    }

    #[test]
    fn finite_groups() {
        let q8 = finite_quaternion_group(&[qi(), qj()], 100).unwrap();
        assert_eq!(q8.order(), 8);
        let t = finite_quaternion_group(&hurwitz_generators(), 100).unwrap();
        assert_eq!(t.order(), 24);
        let mut o_gens = hurwitz_generators();
        o_gens.push(octahedral_generator());
        let o = finite_quaternion_group(&o_gens, 100).unwrap();
        assert_eq!(o.order(), 48);
        let i = finite_quaternion_group(&icosahedral_generators(), 200).unwrap();
        assert_eq!(i.order(), 120);
        for g in [&q8, &t, &o, &i] {
            assert_eq!(g.involutions().len(), 1);
        }
        let ident: Vec<BinaryKind> = [&q8, &t, &o, &i].iter().map(|g| identify_so3_image(g).unwrap().kind).collect();
        assert_eq!(
            ident,
            vec![
                BinaryKind::BinaryDihedral,
                BinaryKind::BinaryTetrahedral,
                BinaryKind::BinaryOctahedral,
                BinaryKind::BinaryIcosahedral
            ]
        );
        assert_eq!(identify_so3_image(&q8).unwrap().parameter, 2);
        assert_eq!(identify_so3_image(&o).unwrap().image_order, 24);
    }

    #[test]
    fn cyclic_of_order_ten() {
        let g = finite_quaternion_group(&binary_dihedral_generators(5)[..1], 100).unwrap();
        assert_eq!(g.order(), 10);
        let id = identify_so3_image(&g).unwrap();
        assert_eq!((id.kind, id.image_order), (BinaryKind::Cyclic, 5));
    }

    #[test]
    fn binary_dihedral_orders() {
        for n in 2..=7 {
            let g = finite_quaternion_group(&binary_dihedral_generators(n), 200).unwrap();
            assert_eq!(g.order(), 4 * n);
            let id = identify_so3_image(&g).unwrap();
            assert_eq!((id.kind, id.parameter), (BinaryKind::BinaryDihedral, n));
        }
    }

    #[test]
    fn runaway_closure_hits_cap() {
        let three_fifths = QuadFieldElement::ratio(3, 5);
        let four_fifths = QuadFieldElement::ratio(4, 5);
        let z = QuadFieldElement::integer(0);
        let q = quat_q(three_fifths, four_fifths, z.clone(), z);
        assert!(matches!(finite_quaternion_group(&[q], 50), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn rotation_is_a_homomorphism_on_octahedral_units() {
        let mut gens = hurwitz_generators();
        gens.push(octahedral_generator());
        let g = finite_quaternion_group(&gens, 100).unwrap();
        let model = g.quaternion_model().unwrap();
        let r: Vec<_> = model.iter().map(|q| rotation_of(q).unwrap()).collect();
        for i in 0..48 {
            assert!(r[i].is_rotation());
            assert_eq!(rotation_of(&model[i].neg()).unwrap(), r[i]);
            for j in 0..48 {
                assert_eq!(r[g.mul(i, j)], r[i].mul(&r[j]));
            }
        }
        let kernel: Vec<usize> = (0..48).filter(|&e| r[e].is_identity()).collect();
        assert_eq!(kernel, vec![0, g.involutions()[0]]);
    }

    fn arb_quad() -> impl Strategy<Value = QuadFieldElement> {
        (-5i64..5, 1i64..4, -5i64..5, 1i64..4).prop_map(|(a, b, c, d)| {
            QuadFieldElement::new(
                2,
                BigRational::new(a.into(), b.into()),
                BigRational::new(c.into(), d.into()),
            )
            .unwrap()
        })
    }

    fn arb_quat() -> impl Strategy<Value = Quaternion<QuadFieldElement>> {
        (arb_quad(), arb_quad(), arb_quad(), arb_quad()).prop_map(|(w, x, y, z)| quat_q(w, x, y, z))
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in arb_quat(), b in arb_quat()) {
            prop_assert_eq!(a.mul(&b).norm(), a.norm().times(&b.norm()));
            prop_assert_eq!(a.mul(&b).conj(), b.conj().mul(&a.conj()));
            prop_assert_eq!(a.mul(&a.conj()).w, a.norm());
        }
    }
}
