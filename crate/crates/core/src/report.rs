//! The analysis report: one pass over every invariant the crate computes,
//! serialized with a fixed field order.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::arrangement::{essentialize, Arrangement};
use crate::chambers::ChamberComplex;
use crate::error::{Error, Result};
use crate::factorization::{find_factorization_with, section_lc_basis};
use crate::formality::is_formal;
use crate::kformality::KFormality;
use crate::lattice::Lattice;
use crate::line_closure::find_lc_basis;

pub const DEFAULT_FLAT_CAP: usize = 20_000;
pub const DEFAULT_CHAMBER_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    Lc,
    Factor,
    Chambers,
}

impl std::str::FromStr for Part {
    type Err = Error;

    fn from_str(s: &str) -> Result<Part> {
        match s {
            "lc" => Ok(Part::Lc),
            "factor" => Ok(Part::Factor),
            "chambers" => Ok(Part::Chambers),
            other => Err(Error::InvalidParams {
                name: "skip".into(),
                message: format!("unknown section `{other}` (expected lc, factor or chambers)"),
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Largest `k` in the formality profile.
    pub max_k: Option<usize>,
    pub skip: Vec<Part>,
    pub flat_cap: usize,
    /// Largest rank for which chambers are enumerated.
    pub chamber_cap: usize,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_k: None,
            skip: Vec::new(),
            flat_cap: DEFAULT_FLAT_CAP,
            chamber_cap: DEFAULT_CHAMBER_CAP,
            timings: false,
        }
    }
}

/// A computed section, or why it is absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Section<T> {
    Done(T),
    Status(String),
}

impl<T> Section<T> {
    pub fn done(&self) -> Option<&T> {
        match self {
            Section::Done(t) => Some(t),
            Section::Status(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrangementInfo {
    pub dim: usize,
    pub count: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeInfo {
    pub flats_per_rank: Vec<usize>,
    pub poincare: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalityInfo {
    pub formal: bool,
    #[serde(rename = "dim_F")]
    pub dim_f: usize,
    #[serde(rename = "dim_F2")]
    pub dim_f2: usize,
    pub pi2_rank: usize,
    pub profile: BTreeMap<usize, bool>,
    pub totally_formal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LcInfo {
    /// 1-based; `None` when no lc-basis exists.
    pub basis: Option<Vec<usize>>,
    pub trace_length: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationInfo {
    pub nice: bool,
    /// 1-based blocks.
    pub partition: Option<Vec<Vec<usize>>>,
    /// 1-based section with line closure `A`.
    pub section: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChambersInfo {
    pub count: usize,
    pub simplicial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub source: String,
    pub arrangement: ArrangementInfo,
    pub lattice: LatticeInfo,
    pub formality: FormalityInfo,
    pub lc: Section<LcInfo>,
    pub factorization: Section<FactorizationInfo>,
    pub chambers: Section<ChambersInfo>,
    /// Milliseconds per section, or `"disabled"`.
    pub timings: Section<BTreeMap<String, u128>>,
}

struct Clock {
    enabled: bool,
    laps: BTreeMap<String, u128>,
    last: Instant,
}

impl Clock {
    fn lap(&mut self, name: &str) {
        if self.enabled {
            let now = Instant::now();
            self.laps
                .insert(name.to_string(), now.duration_since(self.last).as_millis());
            self.last = now;
        }
    }
}

pub fn analyze(source: &str, a: &Arrangement, opts: &Options) -> Result<Report> {
    let mut clock = Clock {
        enabled: opts.timings,
        laps: BTreeMap::new(),
        last: Instant::now(),
    };
    let lattice = Lattice::build_with_cap(a, opts.flat_cap)?;
    let arrangement = ArrangementInfo {
        dim: a.dim(),
        count: a.len(),
        rank: lattice.rank(),
    };
    let lattice_info = LatticeInfo {
        flats_per_rank: lattice.counts(),
        poincare: lattice.poincare(),
    };
    clock.lap("lattice");

    let f = is_formal(a);
    let pi2_rank = f.dim_f2;
    let mut kf = KFormality::with_lattice(a, lattice.clone());
    let profile: BTreeMap<usize, bool> = kf
        .profile()?
        .into_iter()
        .filter(|(k, _)| opts.max_k.is_none_or(|m| *k <= m))
        .collect();
    let totally_formal = kf.is_totally_formal()?;
    let formality = FormalityInfo {
        formal: f.formal,
        dim_f: f.dim_f,
        dim_f2: f.dim_f2,
        pi2_rank,
        profile,
        totally_formal,
    };
    clock.lap("formality");

    let skipped = |p: Part| opts.skip.contains(&p);
    let lc = if skipped(Part::Lc) {
        Section::Status("skipped".into())
    } else {
        let cert = find_lc_basis(a);
        Section::Done(LcInfo {
            basis: cert.as_ref().map(|c| c.basis.to_one_based()),
            trace_length: cert.as_ref().map(|c| c.trace.len()),
        })
    };
    clock.lap("lc");

    let factorization = if skipped(Part::Factor) {
        Section::Status("skipped".into())
    } else {
        match find_factorization_with(a, &lattice) {
            None => Section::Done(FactorizationInfo {
                nice: false,
                partition: None,
                section: None,
            }),
            Some(p) => {
                let s = section_lc_basis(a, &p)?;
                Section::Done(FactorizationInfo {
                    nice: true,
                    partition: Some(p.blocks().iter().map(|b| b.to_one_based()).collect()),
                    section: Some(s.section.iter().map(|h| h + 1).collect()),
                })
            }
        }
    };
    clock.lap("factorization");

    let chambers = if skipped(Part::Chambers) {
        Section::Status("skipped".into())
    } else if lattice.rank() > opts.chamber_cap {
        Section::Status(format!(
            "capped: rank {} exceeds {}",
            lattice.rank(),
            opts.chamber_cap
        ))
    } else {
        let e = essentialize(a).arrangement;
        let cx = ChamberComplex::new(&e)?;
        Section::Done(ChambersInfo {
            count: cx.len(),
            simplicial: cx.non_simplicial_chamber().is_none(),
        })
    };
    clock.lap("chambers");

    let timings = if opts.timings {
        Section::Done(clock.laps)
    } else {
        Section::Status("disabled".into())
    };
    Ok(Report {
        source: source.to_string(),
        arrangement,
        lattice: lattice_info,
        formality,
        lc,
        factorization,
        chambers,
        timings,
    })
}

fn list(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let a = &self.arrangement;
        let _ = writeln!(s, "source        {}", self.source);
        let _ = writeln!(
            s,
            "hyperplanes   {} in dimension {}, rank {}",
            a.count, a.dim, a.rank
        );
        let _ = writeln!(s, "flats         {:?}", self.lattice.flats_per_rank);
        let _ = writeln!(s, "poincare      {:?}", self.lattice.poincare);
        let f = &self.formality;
        let _ = writeln!(
            s,
            "formal        {} (dim F = {}, dim F2 = {}, rank pi2 = {})",
            f.formal, f.dim_f, f.dim_f2, f.pi2_rank
        );
        let profile: Vec<String> = f.profile.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        let _ = writeln!(s, "k-formal      {}", profile.join(" "));
        let _ = writeln!(s, "totally       {}", f.totally_formal);
        match &self.lc {
            Section::Done(LcInfo {
                basis: Some(b),
                trace_length: Some(t),
            }) => {
                let _ = writeln!(s, "lc-basis      {} ({t} closure steps)", list(b));
            }
            Section::Done(_) => {
                let _ = writeln!(s, "lc-basis      none");
            }
            Section::Status(st) => {
                let _ = writeln!(s, "lc-basis      {st}");
            }
        }
        match &self.factorization {
            Section::Done(FactorizationInfo {
                partition: Some(p),
                section: Some(sec),
                ..
            }) => {
                let blocks: Vec<String> = p.iter().map(|b| list(b)).collect();
                let _ = writeln!(
                    s,
                    "nice          ({}), section {}",
                    blocks.join(", "),
                    list(sec)
                );
            }
            Section::Done(_) => {
                let _ = writeln!(s, "nice          no");
            }
            Section::Status(st) => {
                let _ = writeln!(s, "nice          {st}");
            }
        }
        match &self.chambers {
            Section::Done(c) => {
                let _ = writeln!(
                    s,
                    "chambers      {} (simplicial: {})",
                    c.count, c.simplicial
                );
            }
            Section::Status(st) => {
                let _ = writeln!(s, "chambers      {st}");
            }
        }
        if let Section::Done(t) = &self.timings {
            let laps: Vec<String> = t.iter().map(|(k, v)| format!("{k}={v}ms")).collect();
            let _ = writeln!(s, "timings       {}", laps.join(" "));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn ex51_report() {
        let r = analyze("builtin:ex51", &catalog::ex51(), &Options::default()).unwrap();
        assert!(r.formality.formal);
        assert_eq!(r.formality.pi2_rank, 6);
        assert_eq!(r.formality.dim_f, 6);
        assert_eq!(
            r.formality.profile,
            BTreeMap::from([(2, true), (3, true), (4, true)])
        );
        assert!(!r.formality.totally_formal);
        assert_eq!(r.lc.done().unwrap().basis, Some(vec![1, 2, 3, 4, 5]));
        assert_eq!(r.timings, Section::Status("disabled".into()));
    }

    #[test]
    fn json_shape() {
        let opts = Options {
            skip: vec![Part::Chambers],
            ..Options::default()
        };
        let r = analyze("builtin:braid:3", &catalog::braid(3), &opts).unwrap();
        let text = r.to_json();
        let order = [
            "source",
            "arrangement",
            "lattice",
            "formality",
            "lc",
            "factorization",
            "chambers",
            "timings",
        ];
        let positions: Vec<usize> = order
            .iter()
            .map(|k| text.find(&format!("\n  \"{k}\"")).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["chambers"], "skipped");
        assert_eq!(v["formality"]["profile"]["2"], true);
    }

    #[test]
    fn chamber_cap_status() {
        let opts = Options {
            chamber_cap: 2,
            ..Options::default()
        };
        let r = analyze("b", &catalog::boolean(3), &opts).unwrap();
        assert!(matches!(r.chambers, Section::Status(ref s) if s.starts_with("capped")));
    }
}
