use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use corkatlas_core::error::FamilyError;
use corkatlas_core::families::{
    closed_form_alexander, distinguish, w_identification, CorkCertificate, FamilyInstance, KnotFamily, MazurVerdict,
};
use corkatlas_core::fixtures_dir;
use corkatlas_core::kirby::{replay, KirbyDiagram, MoveScript, ReplayError};
use corkatlas_core::legendrian::FrontDiagram;
use corkatlas_core::linkdiag::{alexander, seifert_matrix, PDCode, PdFileError};
use corkatlas_core::polyhedron::{builtin, Builtin, GleamAssignment, SpecialPolyhedron};
use corkatlas_core::shadowmap::{solve_framings, LedgerFamily};
use num_rational::Rational64;

use crate::error::CliError;

/// Finds a file given on the command line, falling back to the fixture
/// directory `sub`.
fn resolve(path: &Path, sub: &str) -> Result<PathBuf, CliError> {
    if path.exists() {
        return Ok(path.to_path_buf());
    }
    let fallback = fixtures_dir().join(sub).join(path);
    if fallback.exists() {
        Ok(fallback)
    } else {
        Err(CliError::Input(format!("{}: no such file", path.display())))
    }
}

fn read(path: &Path, sub: &str) -> Result<(PathBuf, String), CliError> {
    let p = resolve(path, sub)?;
    let text = std::fs::read_to_string(&p).map_err(|e| CliError::io(&p, e))?;
    Ok((p, text))
}

fn show_bool(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Everything the single-instance and atlas commands report.
pub struct Summary {
    pub casson: Option<i64>,
    pub mazur: MazurVerdict,
    pub cork: Option<CorkCertificate>,
    pub slopes: Vec<(String, Rational64)>,
}

impl Summary {
    pub fn of(inst: &FamilyInstance) -> Result<Self, CliError> {
        let casson = match inst.casson_boundary() {
            Ok(v) => Some(v),
            Err(FamilyError::UnsupportedFamily(_) | FamilyError::ZeroParameter) => None,
            Err(e) => return Err(CliError::domain(e)),
        };
        let mazur = inst.mazur_type_certificate().map_err(CliError::domain)?;
        let cork = if inst.in_cork_regime() {
            Some(inst.cork_certificate().map_err(CliError::domain)?)
        } else {
            None
        };
        let mut slopes = Vec::new();
        if let FamilyInstance::Bing { .. } = inst {
            let (b, g) = inst.gleams();
            let p = builtin(b);
            for r in p.internal_regions() {
                slopes.push((r.name.clone(), p.slope_length(&g, &r.name).map_err(CliError::domain)?));
            }
        }
        Ok(Self {
            casson,
            mazur,
            cork,
            slopes,
        })
    }

    fn sl2_min(&self) -> Option<Rational64> {
        self.slopes.iter().map(|(_, v)| *v).min()
    }

    pub fn row(&self, inst: &FamilyInstance) -> Vec<String> {
        let na = || "n/a".to_string();
        vec![
            inst.to_string(),
            self.casson.map_or_else(na, |v| v.to_string()),
            show_bool(self.mazur.verdict).to_string(),
            show_bool(self.cork.is_some()).to_string(),
            self.cork.as_ref().map_or_else(na, |c| c.tb.to_string()),
            self.sl2_min().map_or_else(na, |v| v.to_string()),
            self.mazur.presentation.to_string(),
        ]
    }
}

pub fn invariants(notation: &str) -> Result<String, CliError> {
    let inst: FamilyInstance = notation.parse().map_err(CliError::input)?;
    let s = Summary::of(&inst)?;
    let mut out = String::new();
    writeln!(out, "instance: {inst}").unwrap();
    if let FamilyInstance::WPlus { l, k } | FamilyInstance::WMinus { l, k } = inst {
        let sign = if matches!(inst, FamilyInstance::WPlus { .. }) { 1 } else { -1 };
        let w = w_identification(sign, l, k);
        let names: Vec<String> = w.instances.iter().map(ToString::to_string).collect();
        writeln!(out, "identified_with: {}", names.join(" ")).unwrap();
        writeln!(out, "class_key: {}", w.class_key).unwrap();
    }
    match s.casson {
        Some(v) => writeln!(out, "casson: {v}").unwrap(),
        None => writeln!(out, "casson: n/a").unwrap(),
    }
    writeln!(out, "mazur_type: {}", show_bool(s.mazur.verdict)).unwrap();
    writeln!(out, "mazur_evidence: {}", s.mazur.evidence).unwrap();
    writeln!(out, "homology: {}", s.mazur.presentation).unwrap();
    writeln!(out, "cork_regime: {}", show_bool(s.cork.is_some())).unwrap();
    if let Some(c) = &s.cork {
        writeln!(out, "tb: {}", c.tb).unwrap();
        writeln!(out, "stein_ok: {}", show_bool(c.stein_ok)).unwrap();
        writeln!(out, "symmetric_diagram: {}", show_bool(c.symmetric_diagram)).unwrap();
        writeln!(out, "contractible: {}", show_bool(c.contractible)).unwrap();
        writeln!(out, "homology_sphere_boundary: {}", show_bool(c.homology_sphere_boundary)).unwrap();
        if let Some(note) = &c.note {
            writeln!(out, "note: {note}").unwrap();
        }
    }
    for (r, v) in &s.slopes {
        writeln!(out, "sl2 {r}: {v}").unwrap();
    }
    if let Some(v) = s.sl2_min() {
        writeln!(out, "sl2_min: {v}").unwrap();
    }
    if let FamilyInstance::A { m, n } = inst {
        let other = FamilyInstance::A { m, n: n + 1 };
        writeln!(out, "versus {other}: {}", distinguish(&inst, &other)).unwrap();
    }
    Ok(out)
}

pub fn oracle(path: &Path, fox_degree: usize) -> Result<String, CliError> {
    let (_, text) = read(path, "pd")?;
    let pd = PDCode::parse(&text).map_err(|e| match e {
        PdFileError::Parse(p) => CliError::input(p),
        PdFileError::Link(l) => CliError::input(l),
    })?;
    let delta = alexander(&pd).map_err(CliError::domain)?;
    let sig = seifert_matrix(&pd).map_err(CliError::domain)?.signature();
    let mut out = String::new();
    writeln!(out, "crossings: {}", pd.crossings().len()).unwrap();
    writeln!(out, "alexander: {delta}").unwrap();
    writeln!(out, "pretty: {}", delta.pretty()).unwrap();
    writeln!(out, "delta(1): {}", delta.eval_at_one()).unwrap();
    writeln!(out, "delta''(1): {}", delta.second_derivative_at_one()).unwrap();
    writeln!(out, "signature: {sig}").unwrap();
    match delta.fox_milnor_factor(fox_degree) {
        Some(f) => writeln!(out, "fox_milnor: {}", f.pretty()).unwrap(),
        None => writeln!(out, "fox_milnor: none").unwrap(),
    }
    if let Some(r) = pd.metadata("ribbon") {
        writeln!(out, "ribbon: {r}").unwrap();
    }
    let family = match pd.metadata("family") {
        Some("A") => Some(KnotFamily::A),
        Some("At") => Some(KnotFamily::ATilde),
        _ => None,
    };
    if let (Some(fam), Some(m)) = (family, pd.metadata("m").and_then(|m| m.parse::<i64>().ok())) {
        let expected = closed_form_alexander(fam, m).map_err(CliError::domain)?;
        let tag = pd.metadata("family").unwrap_or_default();
        if expected == delta {
            writeln!(out, "closed_form: match ({tag}, m={m})").unwrap();
        } else {
            writeln!(out, "closed_form: mismatch ({tag}, m={m}), expected {expected}").unwrap();
        }
    }
    Ok(out)
}

pub fn gleam_solve(family: &str, l: Option<i64>, m: Option<i64>, n: Option<i64>) -> Result<String, CliError> {
    let fam: LedgerFamily = family.parse().map_err(CliError::input)?;
    let need = |v: Option<i64>, flag: &str| v.ok_or_else(|| CliError::Input(format!("gleam-solve {family} needs -{flag}")));
    let q = Rational64::from_integer;
    let target = match fam {
        LedgerFamily::A => GleamAssignment::from_pairs([("e1", q(need(m, "m")?)), ("e2", q(need(n, "n")?))]),
        LedgerFamily::ATilde => GleamAssignment::from_pairs([
            ("e1", q(need(m, "m")?)),
            ("e2", q(need(n, "n")?) - Rational64::new(1, 2)),
        ]),
        LedgerFamily::Bing => GleamAssignment::from_pairs([
            ("e3", q(need(l, "l")?)),
            ("e4", q(need(m, "m")?)),
            ("e5", q(need(n, "n")?)),
        ]),
    };
    let solved = solve_framings(fam, &target).map_err(CliError::domain)?;
    let mut out = String::new();
    for (region, v) in &target.0 {
        writeln!(out, "gleam {region}: {v}").unwrap();
    }
    for (sym, v) in solved {
        writeln!(out, "{sym}={v}").unwrap();
    }
    Ok(out)
}

pub fn stein_check(path: &Path) -> Result<String, CliError> {
    let (_, text) = read(path, "front")?;
    let f: FrontDiagram = text.parse().map_err(CliError::input)?;
    let mut out = String::new();
    writeln!(out, "writhe: {}", f.writhe()).unwrap();
    writeln!(out, "left_cusps: {}", f.left_cusps()).unwrap();
    writeln!(out, "tb: {}", f.thurston_bennequin()).unwrap();
    writeln!(out, "framing: {}", f.framing()).unwrap();
    writeln!(out, "stein_ok: {}", show_bool(f.eliashberg_stein_check())).unwrap();
    Ok(out)
}

pub fn kirby_replay(path: &Path) -> Result<String, CliError> {
    let (p, text) = read(path, "kirby")?;
    let script: MoveScript = text.parse().map_err(CliError::input)?;
    let dir = p.parent().unwrap_or_else(|| Path::new("."));
    let diagram_path = dir.join(&script.load);
    let dtext = std::fs::read_to_string(&diagram_path).map_err(|e| CliError::io(&diagram_path, e))?;
    let diagram: KirbyDiagram = dtext.parse().map_err(CliError::input)?;
    match replay(&script, &diagram) {
        Ok(report) => Ok(format!("{report}")),
        Err(ReplayError::Move { line, source }) => Err(CliError::Domain(format!("line {line}: {source}"))),
        Err(e) => {
            let ReplayError::Violation { monitor, before, after, .. } = &e else {
                unreachable!("move errors handled above")
            };
            Err(CliError::Violation(format!("{e}\n--- {monitor}\n- {before}\n+ {after}")))
        }
    }
}

fn load_polyhedron(arg: &str) -> Result<(String, SpecialPolyhedron), CliError> {
    if let Ok(b) = arg.parse::<Builtin>() {
        return Ok((b.name().to_string(), builtin(b)));
    }
    let (p, text) = read(Path::new(arg), "poly")?;
    let poly = text.parse().map_err(CliError::input)?;
    Ok((p.display().to_string(), poly))
}

pub fn shadow_info(arg: &str, gleams: &[String]) -> Result<String, CliError> {
    let (name, p) = load_polyhedron(arg)?;
    let mut out = String::new();
    let (v, e, r) = p.counts();
    writeln!(out, "polyhedron: {name}").unwrap();
    writeln!(out, "vertices: {v}").unwrap();
    writeln!(out, "edges: {e}").unwrap();
    writeln!(out, "regions: {r}").unwrap();
    writeln!(out, "euler_characteristic: {}", p.euler_characteristic()).unwrap();
    match p.homology() {
        Ok(h) => writeln!(out, "homology: {h}").unwrap(),
        Err(err) => writeln!(out, "homology: n/a ({err})").unwrap(),
    }
    if gleams.is_empty() {
        return Ok(out);
    }
    let mut g = GleamAssignment::new();
    for item in gleams {
        let (region, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("expected region=value, found '{item}'")))?;
        let value: Rational64 = value
            .parse()
            .map_err(|_| CliError::Input(format!("bad gleam value '{value}'")))?;
        g.0.insert(region.to_string(), value);
    }
    writeln!(out, "parity: {}", show_bool(p.check_gleam_parity(&g).map_err(CliError::domain)?)).unwrap();
    for r in p.internal_regions() {
        writeln!(out, "sl2 {}: {}", r.name, p.slope_length(&g, &r.name).map_err(CliError::domain)?).unwrap();
    }
    writeln!(out, "hyperbolic: {}", show_bool(p.hyperbolicity_criterion(&g).map_err(CliError::domain)?)).unwrap();
    Ok(out)
}
