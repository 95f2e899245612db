use serde::Serialize;
use serde_json::{json, Value};

use freerep::algebra::find_norm_relation_within;
use freerep::classify::{self, ClassificationReport, FrVerdict, NoWitness};
use freerep::corpus::{survey210, SurveyRow};
use freerep::repr::{build_free_representation, verify_free};
use freerep::{sl2, Budget, Error, Group};

use crate::spec::{parse_group_spec, GroupSpec, ParseError};

/// Limits shared by every command.
#[derive(Clone, Debug)]
pub struct Settings {
    pub cap: Option<usize>,
    pub budget: Budget,
}

impl Settings {
    fn norm_cap(&self) -> usize {
        self.cap.unwrap_or(freerep::algebra::DEFAULT_NORM_CAP)
    }

    fn quaternion_cap(&self) -> usize {
        self.cap.unwrap_or(freerep::quaternion::DEFAULT_QUATERNION_CAP)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliError {
    pub kind: String,
    pub detail: String,
    pub offending_input: Option<String>,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self.kind.as_str() {
            "cap_exceeded" | "deadline_exceeded" => 2,
            _ => 1,
        }
    }

    pub fn parse(input: &str, e: ParseError) -> Self {
        CliError { kind: "parse_error".into(), detail: e.to_string(), offending_input: Some(input.into()) }
    }

    pub fn library(input: Option<&str>, e: Error) -> Self {
        let kind = match e {
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::Cancelled => "deadline_exceeded",
            Error::Inconsistent(_) => "internal_error",
            _ => "construction_error",
        };
        CliError { kind: kind.into(), detail: e.to_string(), offending_input: input.map(str::to_string) }
    }
}

/// A finished command: JSON for `--json`, plain text otherwise.
pub struct Report {
    pub json: Value,
    pub text: String,
}

fn group_of(input: &str, settings: &Settings) -> Result<(GroupSpec, Group), CliError> {
    let spec = parse_group_spec(input).map_err(|e| CliError::parse(input, e))?;
    let g = spec.build(settings.quaternion_cap()).map_err(|e| CliError::library(Some(input), e))?;
    Ok((spec, g))
}

fn verdict_text(v: &FrVerdict) -> String {
    match v {
        FrVerdict::Yes { criterion, .. } => format!("yes ({criterion:?})"),
        FrVerdict::No { witness: NoWitness::NoncyclicSemiprime { order, .. } } => {
            format!("no (noncyclic subgroup of order {order})")
        }
        FrVerdict::No { witness: NoWitness::EmbeddedSl2 { p, .. } } => format!("no (contains SL2({p}))"),
    }
}

pub fn analyze(input: &str, settings: &Settings) -> Result<Report, CliError> {
    let (spec, g) = group_of(input, settings)?;
    settings.budget.check().map_err(|e| CliError::library(Some(input), e))?;
    let r: ClassificationReport = classify::classify(&g).map_err(|e| CliError::library(Some(input), e))?;
    let sylow: Vec<String> = r
        .sylow_profile
        .iter()
        .map(|e| format!("{}: {:?}({})", e.prime, e.kind, e.order))
        .collect();
    let mut text = format!("group: {spec} (order {})\n", r.order);
    text += &format!("solvable: {}\n", r.is_solvable);
    text += &format!("sylow: {}\n", sylow.join(", "));
    text += &format!("sylow-cyclic: {}, sylow-cycloidal: {}\n", r.is_sylow_cyclic, r.is_sylow_cycloidal);
    text += &format!("cycloidal type: {:?}\n", r.cycloidal_type);
    text += &format!("odd core order: {}\n", r.odd_core.order);
    if let Some(mu) = &r.mcc {
        text += &format!("mu order: {}\n", mu.order);
    }
    if let Some(z) = r.unique_involution {
        text += &format!("unique involution: {}\n", g.label(z));
    }
    text += &format!("semiprime-cyclic: {}\n", r.semiprime_cyclic.holds);
    text += &format!("freely representable: {}\n", verdict_text(&r.fr_verdict));
    Ok(Report { json: json!({ "spec": spec.to_string(), "report": r }), text })
}

pub fn norm_relation(input: &str, settings: &Settings) -> Result<Report, CliError> {
    let (spec, g) = group_of(input, settings)?;
    let search = find_norm_relation_within(&g, settings.norm_cap(), &settings.budget)
        .map_err(|e| CliError::library(Some(input), e))?;
    let name = spec.to_string();
    Ok(match search.certificate {
        Some(cert) => {
            let export = cert.export(&name);
            let mut text = format!("norm relation for {name} (ideal dimension {}):\n", search.ideal_dimension);
            for (h, a) in &cert.terms {
                let coeffs: Vec<String> =
                    a.support().iter().map(|&x| format!("{}*{}", a.coeff(x), g.label(x))).collect();
                let generator = g.label(h.elements()[1]);
                text += &format!("  ({}) * N<{generator}>\n", coeffs.join(" + "));
            }
            text += &format!("verified: {}\n", cert.verified);
            Report {
                json: json!({ "spec": name, "found": true, "ideal_dimension": search.ideal_dimension, "certificate": export }),
                text,
            }
        }
        None => Report {
            json: json!({ "spec": name, "found": false, "ideal_dimension": search.ideal_dimension }),
            text: format!("none (freely representable); ideal dimension {} of {}\n", search.ideal_dimension, g.order()),
        },
    })
}

pub fn represent(input: &str, settings: &Settings) -> Result<Report, CliError> {
    let (spec, g) = group_of(input, settings)?;
    let name = spec.to_string();
    match build_free_representation(&g) {
        Ok(Some((rep, how))) => {
            let check = verify_free(&rep);
            let text = format!(
                "free representation of {name}: degree {}, conductor {}, via {how:?}; free: {}\n",
                rep.degree(),
                rep.conductor(),
                check.free
            );
            Ok(Report {
                json: json!({
                    "spec": name,
                    "construction": format!("{how:?}"),
                    "free": check.free,
                    "representation": rep.export(&name),
                }),
                text,
            })
        }
        Ok(None) => Ok(Report {
            json: json!({ "spec": name, "unsupported": true }),
            text: format!("{name} is freely representable but its shape has no supported construction\n"),
        }),
        Err(Error::NotFreelyRepresentable) => Ok(Report {
            json: json!({ "spec": name, "freely_representable": false }),
            text: format!("{name} is not freely representable\n"),
        }),
        Err(e) => Err(CliError::library(Some(input), e)),
    }
}

/// Largest prime the census runs for without `--allow-large`.
pub const DEFAULT_CENSUS_LIMIT: u64 = 13;

pub fn census(p: u64, allow_large: bool, _settings: &Settings) -> Result<Report, CliError> {
    if p > DEFAULT_CENSUS_LIMIT && !allow_large {
        return Err(CliError {
            kind: "cap_exceeded".into(),
            detail: format!("census beyond p = {DEFAULT_CENSUS_LIMIT} needs --allow-large"),
            offending_input: Some(p.to_string()),
        });
    }
    let fail = |e| CliError::library(Some(&p.to_string()), e);
    let s = sl2::census_summary(p).map_err(fail)?;
    let trichotomy = sl2::trichotomy_check(p).map_err(fail)?;
    let conjugacy = sl2::conjugacy_and_normals(p).map_err(fail)?;
    let normalizer = sl2::normalizer_structure_check(p).map_err(fail)?;
    let witness = sl2::fermat_pq_witness(p).map_err(fail)?;
    let mut text = format!("SL2({p}), order {}\n{:>6} {:>9} {:>8}  match\n", s.order, "m", "predicted", "observed");
    for r in &s.rows {
        text += &format!("{:>6} {:>9} {:>8}  {}\n", r.m, r.predicted, r.observed, r.matches);
    }
    text += &format!("maximal cyclic orders: {:?}\n", s.maximal_cyclic_orders);
    text += &format!("all rows match: {}\n", s.all_match());
    text += &format!("eigenvalue trichotomy: {trichotomy}\n");
    text += &format!("conjugacy and normal subgroups: {}\n", conjugacy.holds());
    text += &format!("normalizer structure: {normalizer}\n");
    text += &match &witness {
        Some(w) => format!("noncyclic subgroup of order {}\n", w.order()),
        None => "no noncyclic p*r subgroup (Fermat prime)\n".into(),
    };
    Ok(Report {
        json: json!({
            "p": p,
            "summary": s,
            "all_match": s.all_match(),
            "trichotomy": trichotomy,
            "conjugacy": conjugacy,
            "normalizer_structure": normalizer,
            "fermat_witness_order": witness.map(|w| w.order()),
        }),
        text,
    })
}

pub fn survey(_settings: &Settings) -> Result<Report, CliError> {
    let rows: Vec<SurveyRow> = survey210().map_err(|e| CliError::library(None, e))?;
    let classes = rows.iter().map(|r| r.class).max().map_or(0, |c| c + 1);
    let agree = rows.iter().all(|r| r.mu_order == r.expected_mu_order);
    let mut text = format!("{:<16} {:>4} {:>4} {:>4} {:>9} {:>5}  free\n", "group", "|A|", "r", "|mu|", "expected", "class");
    for r in &rows {
        text += &format!(
            "{:<16} {:>4} {:>4} {:>4} {:>9} {:>5}  {}\n",
            r.spec, r.a_order, r.r, r.mu_order, r.expected_mu_order, r.class, r.freely_representable
        );
    }
    text += &format!("{} isomorphism classes; table agrees: {agree}\n", classes);
    Ok(Report { json: json!({ "rows": rows, "classes": classes, "table_agrees": agree }), text })
}
