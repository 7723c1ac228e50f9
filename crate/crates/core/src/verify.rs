//! A suite of theorem checks run against one arrangement. Every check that
//! applies must pass; a failure means the implementation is wrong.

use std::fmt;

use crate::arrangement::{essentialize, localization, restriction, Arrangement};
use crate::chambers::{walls_report, ChamberComplex};
use crate::error::Result;
use crate::factorization::{
    addition_deletion_check, consequences, find_factorization_with, section_lc_basis,
};
use crate::formality::{is_formal, relation_space, restriction_relation_maps};
use crate::kformality::KFormality;
use crate::lattice::{is_modular, is_modular_corank_one_pairwise, modular_complement, Lattice};
use crate::line_closure::verify_lc_basis;
use crate::report::{DEFAULT_CHAMBER_CAP, DEFAULT_FLAT_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub outcome: Outcome,
    /// Number of instances examined.
    pub cases: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| !matches!(c.outcome, Outcome::Fail(_)))
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.outcome {
                Outcome::Pass => writeln!(f, "PASS  {:<24} {} cases", c.name, c.cases)?,
                Outcome::Fail(why) => writeln!(f, "FAIL  {:<24} {why}", c.name)?,
                Outcome::Skipped(why) => writeln!(f, "SKIP  {:<24} {why}", c.name)?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub flat_cap: usize,
    pub chamber_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            flat_cap: DEFAULT_FLAT_CAP,
            chamber_cap: DEFAULT_CHAMBER_CAP,
        }
    }
}

fn check(name: &'static str, cases: usize, failure: Option<String>) -> Check {
    Check {
        name,
        outcome: failure.map_or(Outcome::Pass, Outcome::Fail),
        cases,
    }
}

fn skipped(name: &'static str, why: &str) -> Check {
    Check {
        name,
        outcome: Outcome::Skipped(why.to_string()),
        cases: 0,
    }
}

pub fn verify(a: &Arrangement, opts: &VerifyOptions) -> Result<VerifyReport> {
    let lattice = Lattice::build_with_cap(a, opts.flat_cap)?;
    let formal = is_formal(a).formal;
    let checks = vec![
        two_formality(a, &lattice, formal)?,
        nice_pipeline(a, &lattice)?,
        hereditary(a, &lattice, formal)?,
        modular_localizations(a, &lattice, formal)?,
        restriction_maps(a, &lattice)?,
        chamber_walls(a, &lattice, opts.chamber_cap)?,
    ];
    Ok(VerifyReport { checks })
}

fn two_formality(a: &Arrangement, lattice: &Lattice, formal: bool) -> Result<Check> {
    let mut kf = KFormality::with_lattice(a, lattice.clone());
    let r2 = kf.r2_as_relations()?;
    let f = relation_space(a).space;
    let failure = if r2 != f {
        Some("R_2 differs from the relation space".to_string())
    } else if kf.is_k_formal(2)? != formal {
        Some("2-formality differs from formality".to_string())
    } else {
        None
    };
    Ok(check("two-formality", 1, failure))
}

fn nice_pipeline(a: &Arrangement, lattice: &Lattice) -> Result<Check> {
    const NAME: &str = "nice-implies-lc-basis";
    let Some(p) = find_factorization_with(a, lattice) else {
        return Ok(skipped(NAME, "no factorization"));
    };
    let mut cases = 1;
    if !consequences(lattice, &p).all_hold() {
        return Ok(check(
            NAME,
            cases,
            Some(format!("{p} breaks a factorization count")),
        ));
    }
    let s = section_lc_basis(a, &p)?;
    let set = s.section.iter().copied().collect();
    if verify_lc_basis(a, &set)?.is_none() {
        return Ok(check(
            NAME,
            cases,
            Some(format!("section {set} is not an lc-basis")),
        ));
    }
    if !is_formal(a).formal {
        return Ok(check(NAME, cases, Some("nice but not formal".into())));
    }
    for h0 in p.blocks()[0].iter() {
        addition_deletion_check(a, &p, h0)?;
        cases += 1;
    }
    Ok(check(NAME, cases, None))
}

fn hereditary(a: &Arrangement, lattice: &Lattice, formal: bool) -> Result<Check> {
    const NAME: &str = "formality-hereditary";
    if !formal {
        return Ok(skipped(NAME, "not formal"));
    }
    for f in lattice.flats() {
        let res = restriction(a, &f.hyps)?;
        if !is_formal(&res.restricted).formal {
            return Ok(check(
                NAME,
                lattice.len(),
                Some(format!("restriction to {} is not formal", f.hyps)),
            ));
        }
    }
    Ok(check(NAME, lattice.len(), None))
}

fn modular_localizations(a: &Arrangement, lattice: &Lattice, formal: bool) -> Result<Check> {
    let r = lattice.rank();
    let mut cases = 0;
    for f in lattice.flats() {
        let modular = is_modular(a, lattice, &f.hyps)?;
        if r >= 1 && f.rank + 1 == r && modular != is_modular_corank_one_pairwise(a, &f.hyps) {
            return Ok(check(
                "modular-localizations",
                cases,
                Some(format!(
                    "corank-one modularity tests disagree on {}",
                    f.hyps
                )),
            ));
        }
        if !modular {
            continue;
        }
        cases += 1;
        modular_complement(a, lattice, &f.hyps)?;
        let local = is_formal(&localization(a, &f.hyps)?.arrangement).formal;
        if formal && !local {
            return Ok(check(
                "modular-localizations",
                cases,
                Some(format!("modular localization at {} is not formal", f.hyps)),
            ));
        }
        if f.rank + 1 == r && local != formal {
            return Ok(check(
                "modular-localizations",
                cases,
                Some(format!(
                    "corank-one modular flat {} changes formality",
                    f.hyps
                )),
            ));
        }
    }
    Ok(check("modular-localizations", cases, None))
}

fn restriction_maps(a: &Arrangement, lattice: &Lattice) -> Result<Check> {
    for f in lattice.flats() {
        let maps = restriction_relation_maps(a, &f.hyps)?;
        if !maps.checks.all_hold() {
            return Ok(check(
                "restriction-maps",
                lattice.len(),
                Some(format!("{:?} at {}", maps.checks, f.hyps)),
            ));
        }
    }
    Ok(check("restriction-maps", lattice.len(), None))
}

fn chamber_walls(a: &Arrangement, lattice: &Lattice, cap: usize) -> Result<Check> {
    const NAME: &str = "chamber-walls";
    if lattice.rank() > cap {
        return Ok(skipped(
            NAME,
            &format!("rank {} exceeds {cap}", lattice.rank()),
        ));
    }
    let e = essentialize(a).arrangement;
    let cx = ChamberComplex::new(&e)?;
    let mobius: i64 = (0..lattice.len()).map(|x| lattice.mobius(x).abs()).sum();
    if cx.len() as i64 != mobius {
        return Ok(check(
            NAME,
            cx.len(),
            Some(format!(
                "{} chambers but the Möbius sum is {mobius}",
                cx.len()
            )),
        ));
    }
    if cx.non_simplicial_chamber().is_some() {
        return Ok(skipped(NAME, "not simplicial"));
    }
    let rep = walls_report(&cx)?;
    let failure = (!rep.holds()).then(|| format!("{rep:?}"));
    Ok(check(NAME, rep.chambers, failure))
}
