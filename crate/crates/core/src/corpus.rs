//! A fixed test corpus of small groups built from the constructors, each
//! named by its group-spec string.

use crate::arith;
use crate::constructors::*;
use crate::error::Result;
use crate::group::Group;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub group: Group,
}

/// Valid nontrivial parameters (m, n, r) with m·n ≤ `max_mn`, one r per
/// residue class mod m.
pub fn semidirect_parameters(max_mn: usize) -> Vec<SemidirectParams> {
    let mut out = Vec::new();
    for m in 3..=max_mn / 2 {
        for n in 2..=max_mn / m {
            if arith::gcd(m as u64, n as u64) != 1 {
                continue;
            }
            for r in 2..m as i64 {
                if let Ok(p) = SemidirectParams::new(m, n, r) {
                    if p.validate().is_ok() {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn entry(name: String, group: Result<Group>) -> Result<CorpusEntry> {
    Ok(CorpusEntry { name, group: group? })
}

/// Constructor outputs of order at most `max_order` (capped at 200).
pub fn corpus(max_order: usize) -> Result<Vec<CorpusEntry>> {
    let max = max_order.min(200);
    let mut out = Vec::new();
    for n in 1..=60.min(max) {
        out.push(entry(format!("C{n}"), cyclic(n))?);
    }
    for n in 2..=24 {
        if 2 * n <= max {
            out.push(entry(format!("D{n}"), dihedral(n))?);
        }
    }
    for k in 3..=7 {
        let size = 1usize << k;
        if size <= max {
            out.push(entry(format!("Q{size}"), generalized_quaternion(size))?);
        }
    }
    for n in 3..=12 {
        if 4 * n <= max {
            out.push(entry(format!("2D{n}"), binary_polyhedral(PolyhedralKind::Dihedral(n)))?);
        }
    }
    if 24 <= max {
        out.push(entry("SL2(3)".into(), sl2(3))?);
    }
    if 48 <= max {
        out.push(entry("2O".into(), binary_polyhedral(PolyhedralKind::Octahedral))?);
    }
    if 120 <= max {
        out.push(entry("SL2(5)".into(), sl2(5))?);
    }
    for p in semidirect_parameters(max) {
        let name = format!("sd({},{},{})", p.m, p.n, p.r);
        out.push(entry(name, semidirect_cyclic(p))?);
    }
    let products: [(&str, &str); 16] = [
        ("C2", "C2"),
        ("C3", "C3"),
        ("C2", "C4"),
        ("C4", "C4"),
        ("C5", "C5"),
        ("C2", "D4"),
        ("C2", "Q8"),
        ("C3", "Q8"),
        ("C5", "Q8"),
        ("C7", "Q8"),
        ("C3", "D3"),
        ("C3", "Q16"),
        ("C5", "SL2(3)"),
        ("C7", "SL2(3)"),
        ("C3", "2O"),
        ("Q8", "Q8"),
    ];
    let find = |name: &str, out: &[CorpusEntry]| -> Result<Group> {
        match out.iter().find(|e| e.name == name) {
            Some(e) => Ok(e.group.clone()),
            None => Ok(match name {
                "C2" => cyclic(2)?,
                "C3" => cyclic(3)?,
                "Q8" => generalized_quaternion(8)?,
                "Q16" => generalized_quaternion(16)?,
                "SL2(3)" => sl2(3)?,
                "2O" => binary_polyhedral(PolyhedralKind::Octahedral)?,
                other => unreachable!("factor {other} not in corpus"),
            }),
        }
    };
    for (a, b) in products {
        let (ga, gb) = (find(a, &out)?, find(b, &out)?);
        if ga.order() * gb.order() <= max {
            let g = direct_product(&ga, &gb);
            out.push(entry(format!("prod({a},{b})"), g)?);
        }
    }
    Ok(out)
}

/// One parameter set of the order-210 survey: A = C_a normal, B = C_{210/a}
/// acting by r, with A the commutator subgroup.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SurveyRow {
    pub spec: String,
    pub a_order: usize,
    pub r: i64,
    pub mu_order: usize,
    pub expected_mu_order: usize,
    pub freely_representable: bool,
    /// Index of the isomorphism class among the surveyed groups.
    pub class: usize,
}

/// (|A|, r, expected |μ(G)|) for every A = G′ and r with r − 1 a unit mod |A|.
pub const SURVEY_210: [(usize, i64, usize); 16] = [
    (1, 1, 210),
    (3, -1, 105),
    (5, -1, 105),
    (7, -1, 105),
    (7, 2, 70),
    (7, 4, 70),
    (7, 3, 35),
    (7, 5, 35),
    (15, -1, 105),
    (21, -1, 105),
    (35, -1, 105),
    (35, 4, 35),
    (35, 9, 35),
    (35, 19, 35),
    (35, 24, 35),
    (105, -1, 105),
];

pub fn survey210() -> Result<Vec<SurveyRow>> {
    let mut groups: Vec<(usize, i64, usize, String, Group)> = Vec::new();
    for &(a, r, expected) in &SURVEY_210 {
        let (spec, g) = if a == 1 {
            ("C210".to_string(), cyclic(210)?)
        } else {
            (format!("sd({a},{},{r})", 210 / a), semidirect_cyclic(SemidirectParams::new(a, 210 / a, r)?)?)
        };
        groups.push((a, r, expected, spec, g));
    }
    let mut reps: Vec<Group> = Vec::new();
    let mut rows = Vec::new();
    for (a, r, expected, spec, g) in groups {
        let class = match reps.iter().position(|h| crate::iso::is_isomorphic(h, &g).is_some()) {
            Some(i) => i,
            None => {
                reps.push(g.clone());
                reps.len() - 1
            }
        };
        let mu = crate::classify::mcc_subgroup(&g)?;
        let fr = crate::classify::is_freely_representable(&g)?.is_yes();
        rows.push(SurveyRow {
            spec,
            a_order: a,
            r,
            mu_order: mu.order(),
            expected_mu_order: expected,
            freely_representable: fr,
            class,
        });
    }
    Ok(rows)
}
