use std::str::FromStr;

use corkatlas_core::families::FamilyInstance;
use rayon::prelude::*;

use crate::commands::Summary;
use crate::error::CliError;

/// Families an atlas can sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtlasFamily {
    A,
    ATilde,
    Bing,
    WPlus,
    WMinus,
}

impl FromStr for AtlasFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" => Ok(AtlasFamily::A),
            "At" => Ok(AtlasFamily::ATilde),
            "B" => Ok(AtlasFamily::Bing),
            "W+" => Ok(AtlasFamily::WPlus),
            "W-" => Ok(AtlasFamily::WMinus),
            other => Err(format!("unknown family '{other}' (expected A, At, B, W+ or W-)")),
        }
    }
}

/// An inclusive integer range written `a..b`; a single integer means `a..a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub lo: i64,
    pub hi: i64,
}

impl Range {
    fn values(self) -> impl Iterator<Item = i64> + Clone {
        self.lo..=self.hi
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("expected a range like -3..3, found '{s}'");
        match s.split_once("..") {
            Some((a, b)) => Ok(Range {
                lo: a.parse().map_err(|_| bad())?,
                hi: b.parse().map_err(|_| bad())?,
            }),
            None => {
                let v = s.parse().map_err(|_| bad())?;
                Ok(Range { lo: v, hi: v })
            }
        }
    }
}

pub struct Ranges {
    pub l: Option<Range>,
    pub m: Option<Range>,
    pub n: Option<Range>,
    pub k: Option<Range>,
}

fn need(r: Option<Range>, flag: &str, family: &str) -> Result<Range, CliError> {
    r.ok_or_else(|| CliError::Input(format!("atlas {family} needs a range for -{flag}")))
}

/// Instances of the box in lexicographic parameter order. `m = 0` is skipped
/// for `A` and `At`, whose boundary invariants need `m != 0`.
pub fn instances(family: AtlasFamily, r: &Ranges) -> Result<Vec<FamilyInstance>, CliError> {
    let mut out = Vec::new();
    match family {
        AtlasFamily::A | AtlasFamily::ATilde => {
            let tag = if family == AtlasFamily::A { "A" } else { "At" };
            let (ms, ns) = (need(r.m, "m", tag)?, need(r.n, "n", tag)?);
            for m in ms.values().filter(|&m| m != 0) {
                for n in ns.values() {
                    out.push(if family == AtlasFamily::A {
                        FamilyInstance::A { m, n }
                    } else {
                        FamilyInstance::ATilde { m, n }
                    });
                }
            }
        }
        AtlasFamily::Bing => {
            let (ls, ms, ns) = (need(r.l, "l", "B")?, need(r.m, "m", "B")?, need(r.n, "n", "B")?);
            for l in ls.values() {
                for m in ms.values() {
                    for n in ns.values() {
                        out.push(FamilyInstance::Bing { l, m, n });
                    }
                }
            }
        }
        AtlasFamily::WPlus | AtlasFamily::WMinus => {
            let tag = if family == AtlasFamily::WPlus { "W+" } else { "W-" };
            let (ls, ks) = (need(r.l, "l", tag)?, need(r.k, "k", tag)?);
            for l in ls.values() {
                for k in ks.values() {
                    out.push(if family == AtlasFamily::WPlus {
                        FamilyInstance::WPlus { l, k }
                    } else {
                        FamilyInstance::WMinus { l, k }
                    });
                }
            }
        }
    }
    Ok(out)
}

pub const HEADER: [&str; 7] = ["instance", "casson", "mazur_verdict", "cork_regime", "tb", "sl2_min", "homology"];

/// The atlas as CSV text with a header row.
pub fn atlas(family: AtlasFamily, ranges: Ranges) -> Result<String, CliError> {
    let insts = instances(family, &ranges)?;
    let rows: Vec<Vec<String>> = insts
        .par_iter()
        .map(|i| Summary::of(i).map(|s| s.row(i)))
        .collect::<Result<_, _>>()?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER).map_err(CliError::input)?;
    for r in rows {
        w.write_record(&r).map_err(CliError::input)?;
    }
    let bytes = w.into_inner().map_err(CliError::input)?;
    String::from_utf8(bytes).map_err(CliError::input)
}
