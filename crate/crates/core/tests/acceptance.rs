//! The ten acceptance criteria, each reported on one PASS/FAIL line.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use freerep::algebra::{find_norm_relation, parry_relation, verify_certificate, wada_relation};
use freerep::arith;
use freerep::classify::{self, FrVerdict, NoWitness};
use freerep::constructors::*;
use freerep::corpus::{corpus, semidirect_parameters, survey210, CorpusEntry};
use freerep::iso::is_isomorphic;
use freerep::lattice;
use freerep::repr::{build_free_representation, verify_free};
use freerep::sl2;
use freerep::Group;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

fn fr(g: &Group) -> Result<bool, String> {
    Ok(ok(classify::is_freely_representable(g))?.is_yes())
}

fn norm_relation_dichotomy() -> Outcome {
    let entries = ok(corpus(128))?;
    let mut with_relation = 0;
    for CorpusEntry { name, group } in &entries {
        let search = ok(find_norm_relation(group))?;
        let found = match &search.certificate {
            Some(c) => {
                ensure(verify_certificate(c), || format!("{name}: certificate does not verify"))?;
                true
            }
            None => false,
        };
        ensure(found != fr(group)?, || format!("{name}: relation found = {found} disagrees with FR verdict"))?;
        with_relation += found as usize;
    }
    Ok(format!("{} groups, {} with a norm relation", entries.len(), with_relation))
}

fn wada_and_parry() -> Outcome {
    let w = ok(wada_relation(true))?;
    let p = ok(parry_relation())?;
    ensure(verify_certificate(&w), || "Wada relation fails".into())?;
    ensure(verify_certificate(&p), || "Parry relation fails".into())?;
    Ok("both relations hold exactly".into())
}

fn sl2_census() -> Outcome {
    let mut rows = 0;
    for p in sl2::DEFAULT_CENSUS_PRIMES {
        let s = ok(sl2::census_summary(p))?;
        ensure(s.all_match(), || format!("p = {p}: {s:?}"))?;
        rows += s.rows.len();
    }
    Ok(format!("{rows} census rows over p in {:?}", sl2::DEFAULT_CENSUS_PRIMES))
}

fn fermat_criterion() -> Outcome {
    for p in [3u64, 5] {
        ensure(ok(sl2::fermat_pq_witness(p))?.is_none(), || format!("unexpected witness for p = {p}"))?;
    }
    let mut orders = Vec::new();
    for p in [7u64, 11, 13] {
        let w = ok(sl2::fermat_pq_witness(p))?.ok_or(format!("no witness for p = {p}"))?;
        let r = w.order() as u64 / p;
        ensure(
            w.order() as u64 % p == 0 && arith::is_prime(r) && r != 2 && (p - 1) % r == 0 && !w.is_cyclic(),
            || format!("bad witness of order {} for p = {p}", w.order()),
        )?;
        orders.push(w.order());
    }
    Ok(format!("witness orders {orders:?}"))
}

fn order_63_landmark() -> Outcome {
    let g = ok(semidirect_cyclic(ok(SemidirectParams::new(7, 9, 2))?))?;
    ensure(fr(&g)? && !g.is_cyclic(), || "sd(7,9,2) should be free and noncyclic".into())?;
    let mu = ok(classify::mcc_subgroup(&g))?;
    ensure(mu.order() == 21, || format!("mu has order {}", mu.order()))?;
    let params: Vec<_> = semidirect_parameters(62).into_iter().filter(|p| (p.m * p.n) % 2 == 1).collect();
    for p in &params {
        let h = ok(semidirect_cyclic(*p))?;
        ensure(h.is_cyclic() || !fr(&h)?, || format!("sd({},{},{}) is free and noncyclic", p.m, p.n, p.r))?;
    }
    Ok(format!("{} smaller odd parameter sets, none free and noncyclic", params.len()))
}

fn order_210_survey() -> Outcome {
    let rows = ok(survey210())?;
    ensure(rows.len() == 16, || format!("{} rows", rows.len()))?;
    for r in &rows {
        ensure(r.mu_order == r.expected_mu_order, || format!("{}: mu order {}", r.spec, r.mu_order))?;
        ensure(r.freely_representable == (r.a_order == 1), || format!("{}: FR verdict", r.spec))?;
    }
    let classes = rows.iter().map(|r| r.class).max().map_or(0, |c| c + 1);
    ensure(classes == 12, || format!("{classes} isomorphism classes"))?;
    Ok("16 parameter sets, 12 classes, only the cyclic one free".into())
}

fn two_group_theorem() -> Outcome {
    let mut checked = 0;
    for CorpusEntry { name, group } in ok(corpus(64))? {
        let n = group.order();
        if n < 8 || !n.is_power_of_two() {
            continue;
        }
        let unique = group.involutions().len() == 1;
        let matches = is_isomorphic(&group, &ok(cyclic(n))?).is_some()
            || is_isomorphic(&group, &ok(generalized_quaternion(n))?).is_some();
        ensure(unique == matches, || format!("{name}: unique involution {unique}, matched {matches}"))?;
        if name.starts_with('D') {
            ensure(!matches, || format!("{name} accepted"))?;
        }
        checked += 1;
    }
    Ok(format!("{checked} 2-groups"))
}

fn free_representations() -> Outcome {
    let mut groups: Vec<(String, Group)> = Vec::new();
    for n in 1..=60 {
        groups.push((format!("C{n}"), ok(cyclic(n))?));
    }
    groups.push(("Q8".into(), ok(generalized_quaternion(8))?));
    groups.push(("Q16".into(), ok(generalized_quaternion(16))?));
    groups.push(("2T".into(), ok(binary_polyhedral(PolyhedralKind::Tetrahedral))?));
    groups.push(("2O".into(), ok(binary_polyhedral(PolyhedralKind::Octahedral))?));
    groups.push(("sd(7,9,2)".into(), ok(semidirect_cyclic(ok(SemidirectParams::new(7, 9, 2))?))?));
    groups.push((
        "prod(C5,Q8)".into(),
        ok(direct_product(&ok(cyclic(5))?, &ok(generalized_quaternion(8))?))?,
    ));
    groups.push(("2D7".into(), ok(binary_polyhedral(PolyhedralKind::Dihedral(7)))?));
    for (name, g) in &groups {
        let (rep, _) = ok(build_free_representation(g))?.ok_or(format!("{name}: no representation"))?;
        let report = verify_free(&rep);
        ensure(report.free && report.annihilation_checked, || format!("{name}: {report:?}"))?;
    }
    Ok(format!("{} groups certified", groups.len()))
}

fn structure_suites() -> Outcome {
    let entries = ok(corpus(200))?;
    let mut with_lattice = 0;
    for CorpusEntry { name, group: g } in &entries {
        let n = g.order() as u64;
        let orders = g.element_orders();
        for d in arith::divisors(n) {
            let count = orders.iter().filter(|&&o| d % o as u64 == 0).count() as u64;
            ensure(count % d == 0, || format!("{name}: x^{d} = 1 has {count} solutions"))?;
        }
        let subgroups = lattice::all_subgroups(g).ok();
        with_lattice += subgroups.is_some() as usize;
        for p in arith::prime_divisors(n) {
            let s = lattice::sylow_subgroup(g, p);
            // number of conjugates of P
            let count = s.normalizer().index();
            ensure(count as u64 % p == 1, || format!("{name}: {count} Sylow {p}-subgroups"))?;
            if let Some(subs) = &subgroups {
                let listed = subs.iter().filter(|h| h.order() == s.order()).count();
                ensure(listed == count, || format!("{name}: {listed} subgroups of Sylow order for p = {p}"))?;
            }
        }
        let profile = classify::sylow_profile(g);
        let cycloidal = classify::is_sylow_cycloidal(&profile);
        if let Some(subs) = &subgroups {
            let abelian_cyclic = subs.iter().filter(|h| h.is_abelian()).all(|h| h.is_cyclic());
            ensure(abelian_cyclic == cycloidal, || format!("{name}: cycloidal {cycloidal}"))?;
        }
        if classify::is_sylow_cyclic(&profile) {
            sylow_cyclic_structure(name, g, subgroups.as_deref())?;
        }
        let core = ok(classify::odd_core(g))?;
        let (q, _) = ok(lattice::quotient_group(g, &core))?;
        let (s2, t2) = (lattice::sylow_subgroup(g, 2), lattice::sylow_subgroup(&q, 2));
        ensure(is_isomorphic(&s2.to_group().0, &t2.to_group().0).is_some(), || {
            format!("{name}: 2-Sylow of G and G/O(G) differ")
        })?;
        if arith::prime_divisors(n).iter().all(|&p| arith::valuation(n, p) <= 1) {
            ensure(fr(g)? == g.is_cyclic(), || format!("{name}: square-free order"))?;
        }
    }
    Ok(format!("{} groups, {with_lattice} with the full subgroup lattice", entries.len()))
}

fn sylow_cyclic_structure(name: &str, g: &Group, subgroups: Option<&[freerep::Subgroup]>) -> Result<(), String> {
    let derived = lattice::commutator_subgroup(g);
    let k = derived.index();
    let (q, _) = ok(lattice::quotient_group(g, &derived))?;
    ensure(
        derived.is_cyclic() && q.is_cyclic() && derived.order() % 2 == 1 && arith::gcd(derived.order() as u64, k as u64) == 1,
        || format!("{name}: G' or G/G' misbehaves"),
    )?;
    let complements: Vec<_> = lattice::cyclic_subgroups(g).into_iter().filter(|c| c.order() == k).collect();
    ensure(complements.len() == derived.order(), || format!("{name}: {} complements", complements.len()))?;
    ensure(lattice::subgroup_conjugacy_classes(&complements).len() == 1, || format!("{name}: complements not conjugate"))?;
    let mu = ok(classify::mcc_subgroup(g))?;
    ensure(g.order() == 1 || mu.order() > mu.index(), || format!("{name}: |mu| <= index"))?;
    if let Some(&q) = arith::prime_divisors(g.order() as u64).last() {
        ensure(lattice::sylow_subgroup(g, q).is_normal(), || format!("{name}: largest Sylow not normal"))?;
    }
    if let Some(subs) = subgroups {
        for d in arith::divisors(g.order() as u64) {
            let of_order: Vec<_> = subs.iter().filter(|h| h.order() as u64 == d).cloned().collect();
            ensure(
                !of_order.is_empty() && lattice::subgroup_conjugacy_classes(&of_order).len() == 1,
                || format!("{name}: subgroups of order {d} not a single class"),
            )?;
        }
    }
    Ok(())
}

fn non_solvable_branch() -> Outcome {
    let s5 = ok(sl2(5))?;
    ensure(fr(&s5)?, || "SL2(5) not free".into())?;
    let c7s5 = ok(direct_product(&ok(cyclic(7))?, &s5))?;
    ensure(fr(&c7s5)?, || "C7 x SL2(5) not free".into())?;
    match ok(classify::is_freely_representable(&ok(sl2(7))?))? {
        FrVerdict::No { witness: NoWitness::NoncyclicSemiprime { order: 21, .. } } => {}
        other => return Err(format!("SL2(7): {other:?}")),
    }
    for p in [5, 7] {
        ensure(ok(sl2::is_simple(&ok(sl2::psl2(p))?))?, || format!("PSL2({p}) not simple"))?;
    }
    Ok("SL2(5), C7 x SL2(5) free; SL2(7) witness of order 21; PSL2(5), PSL2(7) simple".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("norm-relation dichotomy", norm_relation_dichotomy),
        ("Wada and Parry identities", wada_and_parry),
        ("SL2 census", sl2_census),
        ("Fermat criterion", fermat_criterion),
        ("order-63 landmark", order_63_landmark),
        ("order-210 survey", order_210_survey),
        ("2-group theorem", two_group_theorem),
        ("free representation certification", free_representations),
        ("structure property suites", structure_suites),
        ("non-solvable branch", non_solvable_branch),
    ];
    let results: Vec<(Outcome, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, f)| {
                s.spawn(move || {
                    let start = Instant::now();
                    let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
                    (out, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), (out, secs))) in criteria.iter().zip(&results).enumerate() {
        match out {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}; {secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({detail}; {secs:.1}s)", i + 1)
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
