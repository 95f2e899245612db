//! Named families of finite groups as validated Cayley tables.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::group::{build_group_labeled, Group, MAX_ORDER};
use crate::quaternion::{
    binary_dihedral_generators, finite_quaternion_group, hurwitz_generators, icosahedral_generators,
    octahedral_generator,
};

/// Default bound on the order of a constructed group. Large enough for SL₂(F₁₇).
pub const DEFAULT_CONSTRUCTION_CAP: usize = 5000;

static CONSTRUCTION_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_CONSTRUCTION_CAP);

pub fn set_construction_cap(cap: usize) {
    CONSTRUCTION_CAP.store(cap.min(MAX_ORDER), Ordering::Relaxed);
}

pub fn construction_cap() -> usize {
    CONSTRUCTION_CAP.load(Ordering::Relaxed)
}

fn check_cap(what: &'static str, size: usize) -> Result<()> {
    let cap = construction_cap();
    if size > cap {
        return Err(Error::CapExceeded { what, size, cap });
    }
    Ok(())
}

fn power_label(sym: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}^{k}"),
    }
}

fn join_label(parts: &[String]) -> String {
    let s: Vec<&str> = parts.iter().map(String::as_str).filter(|p| !p.is_empty()).collect();
    if s.is_empty() {
        "1".into()
    } else {
        s.join(" ")
    }
}

pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::BadSize("cyclic group order must be positive".into()));
    }
    check_cap("cyclic group", n)?;
    let labels = (0..n).map(|k| join_label(&[power_label("g", k)])).collect();
    build_group_labeled(n, |i, j| (i + j) % n, labels, format!("C{n}"))
}

/// Symmetries of the regular n-gon: ρⁿ = τ² = 1, τρτ = ρ⁻¹. Order 2n.
pub fn dihedral(n: usize) -> Result<Group> {
    if n < 2 {
        return Err(Error::BadSize("dihedral group needs n >= 2".into()));
    }
    check_cap("dihedral group", 2 * n)?;
    let labels = (0..2 * n)
        .map(|e| join_label(&[power_label("r", e % n), power_label("t", e / n)]))
        .collect();
    let mul = |a: usize, b: usize| {
        let (i, s) = (a % n, a / n);
        let (j, t) = (b % n, b / n);
        let k = if s == 0 { i + j } else { i + n - j } % n;
        k + n * ((s + t) % 2)
    };
    build_group_labeled(2 * n, mul, labels, format!("D{n}"))
}

/// Pairs (a, b) indexed a·|H| + b.
pub fn direct_product(g: &Group, h: &Group) -> Result<Group> {
    let (n, m) = (g.order(), h.order());
    check_cap("direct product", n * m)?;
    let labels = (0..n * m)
        .map(|e| format!("({},{})", g.label(e / m), h.label(e % m)))
        .collect();
    let mul = |x: usize, y: usize| g.mul(x / m, y / m) * m + h.mul(x % m, y % m);
    build_group_labeled(n * m, mul, labels, format!("prod({},{})", g.origin(), h.origin()))
}

/// Rⁱ Tʲ with R^(2^(k−1)) = 1, T² = R^(2^(k−2)), TRT⁻¹ = R⁻¹.
pub fn generalized_quaternion(size: usize) -> Result<Group> {
    if size < 8 || !size.is_power_of_two() {
        return Err(Error::BadSize(format!("generalized quaternion order {size} is not a power of 2 that is >= 8")));
    }
    check_cap("generalized quaternion group", size)?;
    let m = size / 2;
    let half = m / 2;
    let labels = (0..size)
        .map(|e| join_label(&[power_label("R", e % m), power_label("T", e / m)]))
        .collect();
    let mul = |x: usize, y: usize| {
        let (i, a) = (x % m, x / m);
        let (j, b) = (y % m, y / m);
        let twisted = if a == 0 { j } else { m - j };
        let k = (i + twisted + if a == 1 && b == 1 { half } else { 0 }) % m;
        k + m * ((a + b) % 2)
    };
    build_group_labeled(size, mul, labels, format!("Q{size}"))
}

/// Parameters of the cyclic extension C_m ⋊ C_n with b a b⁻¹ = a^r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemidirectParams {
    pub m: usize,
    pub n: usize,
    pub r: i64,
}

impl SemidirectParams {
    pub fn new(m: usize, n: usize, r: i64) -> Result<Self> {
        let p = SemidirectParams { m, n, r };
        p.validate()?;
        Ok(p)
    }

    /// r as a residue in [0, m).
    pub fn reduced_r(&self) -> u64 {
        if self.m <= 1 {
            0
        } else {
            self.r.rem_euclid(self.m as i64) as u64
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if self.m == 0 || self.n == 0 {
            problems.push("m and n must be positive".to_string());
            return Err(Error::BadParams(problems));
        }
        let (m, n) = (self.m as u64, self.n as u64);
        if arith::gcd(m, n) != 1 {
            problems.push(format!("gcd(m, n) = gcd({m}, {n}) != 1"));
        }
        if m > 1 {
            let r = self.reduced_r();
            if arith::gcd(r, m) != 1 {
                problems.push(format!("gcd(r, m) = gcd({}, {m}) != 1", self.r));
            }
            if arith::pow_mod(r, n, m) != 1 {
                problems.push(format!("r^n = {}^{n} is not 1 mod {m}", self.r));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::BadParams(problems))
        }
    }
}

/// Pairs (aⁱ, bʲ) indexed i + m·j with (aⁱ¹, bʲ¹)(aⁱ², bʲ²) = (a^(i₁ + i₂·r^j₁), b^(j₁+j₂)).
pub fn semidirect_cyclic(params: SemidirectParams) -> Result<Group> {
    params.validate()?;
    let (m, n) = (params.m, params.n);
    check_cap("semidirect product", m * n)?;
    let r = params.reduced_r();
    let rpow: Vec<usize> = (0..n).map(|j| arith::pow_mod(r, j as u64, m as u64) as usize).collect();
    let labels = (0..m * n)
        .map(|e| join_label(&[power_label("a", e % m), power_label("b", e / m)]))
        .collect();
    let mul = |x: usize, y: usize| {
        let (i1, j1) = (x % m, x / m);
        let (i2, j2) = (y % m, y / m);
        (i1 + i2 * rpow[j1]) % m + m * ((j1 + j2) % n)
    };
    build_group_labeled(m * n, mul, labels, format!("sd({m},{n},{})", params.r))
}

/// Entries (a, b, c, d) of [[a, b], [c, d]] over F_p.
pub type Mat2 = [u64; 4];

pub fn mat2_mul(p: u64, x: &Mat2, y: &Mat2) -> Mat2 {
    [
        (x[0] * y[0] + x[1] * y[2]) % p,
        (x[0] * y[1] + x[1] * y[3]) % p,
        (x[2] * y[0] + x[3] * y[2]) % p,
        (x[2] * y[1] + x[3] * y[3]) % p,
    ]
}

/// All determinant-one matrices over F_p, identity first.
pub fn sl2_matrices(p: u64) -> Vec<Mat2> {
    let mut out = vec![[1, 0, 0, 1]];
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let m = [a, b, c, d];
                    if (a * d + p * p - b * c) % p == 1 % p && m != [1, 0, 0, 1] {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

pub fn sl2(p: u64) -> Result<Group> {
    if !arith::is_prime(p) {
        return Err(Error::BadParams(vec![format!("{p} is not prime")]));
    }
    let size = ((p - 1) * p * (p + 1)) as usize;
    check_cap("SL2", size)?;
    let mats = sl2_matrices(p);
    debug_assert_eq!(mats.len(), size);
    let index: HashMap<Mat2, usize> = mats.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let labels = mats
        .iter()
        .map(|m| format!("[[{},{}],[{},{}]]", m[0], m[1], m[2], m[3]))
        .collect();
    let mul = |i: usize, j: usize| index[&mat2_mul(p, &mats[i], &mats[j])];
    build_group_labeled(size, mul, labels, format!("SL2({p})"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolyhedralKind {
    Tetrahedral,
    Octahedral,
    Icosahedral,
    Dihedral(usize),
}

/// 2T and 2I come from SL₂(F₃) and SL₂(F₅); 2O and 2Dₙ from unit quaternions.
pub fn binary_polyhedral(kind: PolyhedralKind) -> Result<Group> {
    match kind {
        PolyhedralKind::Tetrahedral => Ok(sl2(3)?.with_origin("2T")),
        PolyhedralKind::Icosahedral => Ok(sl2(5)?.with_origin("2I")),
        PolyhedralKind::Octahedral => {
            check_cap("binary octahedral group", 48)?;
            let mut gens = hurwitz_generators();
            gens.push(octahedral_generator());
            Ok(finite_quaternion_group(&gens, 48)?.with_origin("2O"))
        }
        PolyhedralKind::Dihedral(n) => {
            if n < 2 {
                return Err(Error::BadParams(vec!["binary dihedral group needs n >= 2".into()]));
            }
            check_cap("binary dihedral group", 4 * n)?;
            Ok(finite_quaternion_group(&binary_dihedral_generators(n), 4 * n)?.with_origin(format!("2D{n}")))
        }
    }
}

/// 2T as the Hurwitz units.
pub fn binary_tetrahedral_quaternions() -> Result<Group> {
    Ok(finite_quaternion_group(&hurwitz_generators(), 24)?.with_origin("quat 2T"))
}

/// 2I as unit icosians over Q(√5).
pub fn binary_icosahedral_quaternions() -> Result<Group> {
    Ok(finite_quaternion_group(&icosahedral_generators(), 120)?.with_origin("quat 2I"))
}

/// The symmetric group on n points, permutations composed right to left.
pub fn symmetric(n: usize) -> Result<Group> {
    let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut head = 0;
    let gens: Vec<Vec<usize>> = if n < 2 {
        vec![]
    } else {
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        vec![t, c]
    };
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(perms[0].clone(), 0)]);
    while head < perms.len() {
        let p = perms[head].clone();
        head += 1;
        for g in &gens {
            let q: Vec<usize> = (0..n).map(|i| p[g[i]]).collect();
            if !index.contains_key(&q) {
                check_cap("symmetric group", perms.len() + 1)?;
                index.insert(q.clone(), perms.len());
                perms.push(q);
            }
        }
    }
    let labels = perms
        .iter()
        .map(|p| format!("[{}]", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")))
        .collect();
    let mul = |a: usize, b: usize| {
        let q: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
        index[&q]
    };
    build_group_labeled(perms.len(), mul, labels, format!("S{n}"))
}
