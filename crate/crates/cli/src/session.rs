//! The line-oriented session file: one ring block, named module blocks and
//! an optional options block.
//!
//! ```text
//! ring R
//!   char 32003
//!   vars x y
//!   ideal x^2; x*y
//! end
//! module M over R
//!   gendeg 0 0
//!   relations
//!     x, y
//!     0, x^2
//! end
//! options
//!   seed 7
//! end
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use cmlab_core::algebra::{parse_polynomial, GbLimits, Polynomial, PrimeField};
use cmlab_core::graded::module::vector_from_row;
use cmlab_core::graded::{canonical_module, GradedModule, GradedRing};

use crate::error::{CliError, CliResult};

pub const DEFAULT_CHAR: u32 = 32003;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingBlock {
    pub name: String,
    pub char: u32,
    pub vars: Vec<String>,
    pub ideal: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleBlock {
    pub name: String,
    pub over: String,
    pub gendeg: Vec<i32>,
    pub relations: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OptionsBlock {
    pub seed: Option<u64>,
    pub max_pairs: Option<usize>,
    pub max_degree: Option<i32>,
    pub jmax: Option<usize>,
    pub nmax: Option<usize>,
    pub bound: Option<usize>,
}

impl OptionsBlock {
    fn is_empty(&self) -> bool {
        *self == OptionsBlock::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionFile {
    pub ring: RingBlock,
    pub modules: Vec<ModuleBlock>,
    pub options: OptionsBlock,
}

fn syntax(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Syntax { line, msg: msg.into() }
}

fn parse_num<T: std::str::FromStr>(line: usize, key: &str, s: &str) -> CliResult<T> {
    s.parse().map_err(|_| syntax(line, format!("{key}: cannot read '{s}' as a number")))
}

fn one_arg<'a>(line: usize, key: &str, rest: &'a str) -> CliResult<&'a str> {
    let mut it = rest.split_whitespace();
    match (it.next(), it.next()) {
        (Some(v), None) => Ok(v),
        _ => Err(syntax(line, format!("{key} takes exactly one value"))),
    }
}

fn split_list(s: &str) -> impl Iterator<Item = String> + '_ {
    s.split([';', ',']).map(str::trim).filter(|p| !p.is_empty()).map(String::from)
}

fn check_name(line: usize, name: &str) -> CliResult<()> {
    let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
    if ok {
        Ok(())
    } else {
        Err(syntax(line, format!("invalid name '{name}'")))
    }
}

enum Block {
    None,
    Ring(RingBlock, bool),
    Module(ModuleBlock, bool),
    Options(OptionsBlock),
}

/// Parses and validates a session file. Polynomials are checked against the
/// ring's variables, ideal generators must be homogeneous, and every
/// relation row must be homogeneous for the declared generator degrees.
pub fn parse_session(text: &str) -> CliResult<SessionFile> {
    let mut ring: Option<(RingBlock, usize)> = None;
    let mut modules: Vec<(ModuleBlock, usize, Vec<usize>)> = Vec::new();
    let mut row_lines: Vec<usize> = Vec::new();
    let mut ideal_lines: Vec<usize> = Vec::new();
    let mut options: Option<OptionsBlock> = None;
    let mut block = Block::None;
    let mut start = 0;
    let mut last = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (head, rest) = match content.split_once(char::is_whitespace) {
            Some((h, r)) => (h, r.trim()),
            None => (content, ""),
        };
        block = match block {
            Block::None => match head {
                "ring" => {
                    if ring.is_some() {
                        return Err(syntax(line, "only one ring block is allowed"));
                    }
                    let name = one_arg(line, "ring", rest)?;
                    check_name(line, name)?;
                    start = line;
                    Block::Ring(RingBlock { name: name.into(), char: DEFAULT_CHAR, vars: Vec::new(), ideal: Vec::new() }, false)
                }
                "module" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    if parts.len() != 3 || parts[1] != "over" {
                        return Err(syntax(line, "expected 'module NAME over RING'"));
                    }
                    check_name(line, parts[0])?;
                    start = line;
                    row_lines.clear();
                    Block::Module(
                        ModuleBlock { name: parts[0].into(), over: parts[2].into(), gendeg: Vec::new(), relations: Vec::new() },
                        false,
                    )
                }
                "options" => {
                    if options.is_some() {
                        return Err(syntax(line, "only one options block is allowed"));
                    }
                    if !rest.is_empty() {
                        return Err(syntax(line, "'options' takes no arguments"));
                    }
                    start = line;
                    Block::Options(OptionsBlock::default())
                }
                other => return Err(syntax(line, format!("expected 'ring', 'module' or 'options', found '{other}'"))),
            },
            Block::Ring(mut r, seen_char) => match head {
                "end" => {
                    ring = Some((r, start));
                    Block::None
                }
                "char" => {
                    if seen_char {
                        return Err(syntax(line, "char given twice"));
                    }
                    r.char = parse_num(line, "char", one_arg(line, "char", rest)?)?;
                    Block::Ring(r, true)
                }
                "vars" => {
                    if !r.vars.is_empty() {
                        return Err(syntax(line, "vars given twice"));
                    }
                    for v in rest.split_whitespace() {
                        check_name(line, v)?;
                        if r.vars.iter().any(|w| w == v) {
                            return Err(syntax(line, format!("variable '{v}' declared twice")));
                        }
                        r.vars.push(v.into());
                    }
                    Block::Ring(r, seen_char)
                }
                "ideal" => {
                    for g in split_list(rest) {
                        r.ideal.push(g);
                        ideal_lines.push(line);
                    }
                    Block::Ring(r, seen_char)
                }
                other => return Err(syntax(line, format!("unknown key '{other}' in ring block"))),
            },
            Block::Module(mut m, in_rows) => match head {
                "end" => {
                    modules.push((m, start, std::mem::take(&mut row_lines)));
                    Block::None
                }
                _ if in_rows => {
                    for row in content.split(';').map(str::trim).filter(|r| !r.is_empty()) {
                        m.relations.push(row.split(',').map(|e| e.trim().to_string()).collect());
                        row_lines.push(line);
                    }
                    Block::Module(m, true)
                }
                "gendeg" => {
                    if !m.gendeg.is_empty() {
                        return Err(syntax(line, "gendeg given twice"));
                    }
                    for d in rest.split_whitespace() {
                        m.gendeg.push(parse_num(line, "gendeg", d)?);
                    }
                    Block::Module(m, false)
                }
                "relations" => {
                    if !rest.is_empty() {
                        return Err(syntax(line, "relation rows start on the next line"));
                    }
                    Block::Module(m, true)
                }
                other => return Err(syntax(line, format!("unknown key '{other}' in module block"))),
            },
            Block::Options(mut o) => match head {
                "end" => {
                    options = Some(o);
                    Block::None
                }
                key => {
                    let v = one_arg(line, key, rest)?;
                    let dup = match key {
                        "seed" => o.seed.replace(parse_num(line, key, v)?).is_some(),
                        "max_pairs" => o.max_pairs.replace(parse_num(line, key, v)?).is_some(),
                        "max_degree" => o.max_degree.replace(parse_num(line, key, v)?).is_some(),
                        "jmax" => o.jmax.replace(parse_num(line, key, v)?).is_some(),
                        "nmax" => o.nmax.replace(parse_num(line, key, v)?).is_some(),
                        "bound" => o.bound.replace(parse_num(line, key, v)?).is_some(),
                        other => return Err(syntax(line, format!("unknown option '{other}'"))),
                    };
                    if dup {
                        return Err(syntax(line, format!("option '{key}' given twice")));
                    }
                    Block::Options(o)
                }
            },
        };
    }
    if !matches!(block, Block::None) {
        return Err(syntax(last.max(1), format!("block opened on line {start} is missing 'end'")));
    }
    let (ring, ring_line) = ring.ok_or_else(|| syntax(1, "no ring block"))?;
    let field = PrimeField::new(ring.char).map_err(|e| syntax(ring_line, e.to_string()))?;
    if ring.vars.len() > cmlab_core::algebra::MAX_VARS {
        return Err(syntax(ring_line, format!("at most {} variables", cmlab_core::algebra::MAX_VARS)));
    }
    for (g, &line) in ring.ideal.iter().zip(&ideal_lines) {
        let p = parse_entry(&field, &ring.vars, g, line)?;
        if !p.is_homogeneous() {
            return Err(syntax(line, format!("ideal generator '{g}' is not homogeneous")));
        }
        if p.degree() == Some(0) {
            return Err(syntax(line, "the ideal contains a unit"));
        }
    }
    let mut seen: Vec<&str> = vec![ring.name.as_str(), "k", "omega"];
    for (m, line, rows) in &modules {
        if seen.contains(&m.name.as_str()) {
            return Err(syntax(*line, format!("module name '{}' is already taken", m.name)));
        }
        seen.push(&m.name);
        if m.over != ring.name {
            return Err(syntax(*line, format!("module '{}' is over unknown ring '{}'", m.name, m.over)));
        }
        if m.gendeg.is_empty() {
            return Err(syntax(*line, format!("module '{}' needs gendeg", m.name)));
        }
        for (row, &rl) in m.relations.iter().zip(rows) {
            validate_row(&field, &ring.vars, &m.gendeg, row, rl)?;
        }
    }
    Ok(SessionFile {
        ring,
        modules: modules.into_iter().map(|(m, _, _)| m).collect(),
        options: options.unwrap_or_default(),
    })
}

fn parse_entry(field: &PrimeField, vars: &[String], s: &str, line: usize) -> CliResult<Polynomial> {
    parse_polynomial(field, vars, s).map_err(|e| syntax(line, format!("'{s}': {e}")))
}

fn validate_row(field: &PrimeField, vars: &[String], gendeg: &[i32], row: &[String], line: usize) -> CliResult<()> {
    if row.len() != gendeg.len() {
        return Err(syntax(line, format!("degree mismatch: row has {} entries for {} generators", row.len(), gendeg.len())));
    }
    let mut shift: Option<i64> = None;
    for (c, e) in row.iter().enumerate() {
        let p = parse_entry(field, vars, e, line)?;
        if p.is_zero() {
            continue;
        }
        if !p.is_homogeneous() {
            return Err(syntax(line, format!("entry '{e}' is not homogeneous")));
        }
        let d = p.degree().unwrap() as i64 + gendeg[c] as i64;
        match shift {
            None => shift = Some(d),
            Some(s) if s != d => {
                return Err(syntax(line, format!("degree mismatch: entry '{e}' has total degree {d}, expected {s}")));
            }
            _ => {}
        }
    }
    Ok(())
}

/// Canonical text of a session; parsing it gives back the same structure.
pub fn format_session(s: &SessionFile) -> String {
    let mut out = String::new();
    let r = &s.ring;
    let _ = writeln!(out, "ring {}", r.name);
    let _ = writeln!(out, "  char {}", r.char);
    if !r.vars.is_empty() {
        let _ = writeln!(out, "  vars {}", r.vars.join(" "));
    }
    if !r.ideal.is_empty() {
        let _ = writeln!(out, "  ideal {}", r.ideal.join("; "));
    }
    out.push_str("end\n");
    for m in &s.modules {
        let _ = writeln!(out, "module {} over {}", m.name, m.over);
        let d: Vec<String> = m.gendeg.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "  gendeg {}", d.join(" "));
        if !m.relations.is_empty() {
            out.push_str("  relations\n");
            for row in &m.relations {
                let _ = writeln!(out, "    {}", row.join(", "));
            }
        }
        out.push_str("end\n");
    }
    if !s.options.is_empty() {
        let o = &s.options;
        out.push_str("options\n");
        let pairs: [(&str, Option<String>); 6] = [
            ("seed", o.seed.map(|v| v.to_string())),
            ("max_pairs", o.max_pairs.map(|v| v.to_string())),
            ("max_degree", o.max_degree.map(|v| v.to_string())),
            ("jmax", o.jmax.map(|v| v.to_string())),
            ("nmax", o.nmax.map(|v| v.to_string())),
            ("bound", o.bound.map(|v| v.to_string())),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                let _ = writeln!(out, "  {k} {v}");
            }
        }
        out.push_str("end\n");
    }
    out
}

/// A parsed file turned into engine objects.
pub struct Session {
    pub file: SessionFile,
    pub ring: Arc<GradedRing>,
    modules: BTreeMap<String, GradedModule>,
}

impl Session {
    pub fn build(file: SessionFile) -> CliResult<Self> {
        let field = PrimeField::new(file.ring.char)?;
        let mut limits = GbLimits::default();
        // the environment overrides the file
        if std::env::var("CMLAB_MAX_PAIRS").is_err() {
            if let Some(p) = file.options.max_pairs {
                limits.max_pairs = p;
            }
        }
        if let Some(d) = file.options.max_degree {
            limits.max_degree = d;
        }
        let gens = file
            .ring
            .ideal
            .iter()
            .map(|g| parse_polynomial(&field, &file.ring.vars, g))
            .collect::<cmlab_core::Result<Vec<_>>>()?;
        let ring = GradedRing::new(file.ring.name.clone(), file.ring.vars.clone(), field, gens, limits)?;
        let mut modules = BTreeMap::new();
        modules.insert("k".to_string(), GradedModule::residue_field(ring.clone()));
        modules.insert(file.ring.name.clone(), GradedModule::ring_module(ring.clone()));
        for m in &file.modules {
            let rows = m
                .relations
                .iter()
                .map(|row| {
                    let polys = row
                        .iter()
                        .map(|e| parse_polynomial(&field, &file.ring.vars, e))
                        .collect::<cmlab_core::Result<Vec<_>>>()?;
                    Ok(vector_from_row(&ring, &polys))
                })
                .collect::<cmlab_core::Result<Vec<_>>>()?;
            modules.insert(m.name.clone(), GradedModule::new(ring.clone(), m.gendeg.clone(), rows)?);
        }
        Ok(Self { file, ring, modules })
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        Self::build(parse_session(text)?)
    }

    /// Declared modules plus `k`, the ring itself and `omega` (built on demand).
    pub fn module(&self, name: &str) -> CliResult<GradedModule> {
        if let Some(m) = self.modules.get(name) {
            return Ok(m.clone());
        }
        if name == "omega" {
            return Ok(canonical_module(&self.ring)?);
        }
        let known: Vec<&str> = self.modules.keys().map(String::as_str).chain(["omega"]).collect();
        Err(CliError::Usage(format!("unknown module '{name}' (known: {})", known.join(", "))))
    }

    pub fn seed(&self) -> Option<u64> {
        self.file.options.seed
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX: &str = "ring R\n  char 32003\n  vars x y\n  ideal x^2; x*y\nend\nmodule M over R\n  gendeg 0 0\n  relations\n    x, y;\n    0, x^2\nend\n";

    #[test]
    fn parses_example() {
        let s = parse_session(EX).unwrap();
        assert_eq!(s.ring.vars, vec!["x", "y"]);
        assert_eq!(s.ring.ideal, vec!["x^2", "x*y"]);
        assert_eq!(s.modules[0].relations, vec![vec!["x", "y"], vec!["0", "x^2"]]);
        assert_eq!(parse_session(&format_session(&s)).unwrap(), s);
    }

    #[test]
    fn empty_module_block_is_free() {
        let s = Session::parse("ring R\n vars x\nend\nmodule F over R\n gendeg 0 1\nend\n").unwrap();
        let f = s.module("F").unwrap();
        assert_eq!(f.rank(), 2);
        assert!(f.relations().is_empty());
    }

    #[test]
    fn rejects_inhomogeneous_entry() {
        let err = parse_session("ring R\n vars x\nend\nmodule M over R\n gendeg 0\n relations\n  x + 1\nend\n").unwrap_err();
        match err {
            CliError::Syntax { line, msg } => {
                assert_eq!(line, 7);
                assert!(msg.contains("homogeneous"), "{msg}");
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn rejects_degree_mismatch_and_unknown_keys() {
        let e = parse_session("ring R\n vars x y\nend\nmodule M over R\n gendeg 0 0\n relations\n  x, y^2\nend\n");
        assert!(matches!(e, Err(CliError::Syntax { line: 7, .. })));
        let e = parse_session("ring R\n vars x\n colour red\nend\n");
        assert!(matches!(e, Err(CliError::Syntax { line: 3, .. })));
        let e = parse_session("ring R\n vars x\nend\noptions\n speed 3\nend\n");
        assert!(matches!(e, Err(CliError::Syntax { line: 5, .. })));
        let e = parse_session("ring R\n vars x\n");
        assert!(matches!(e, Err(CliError::Syntax { .. })));
    }
}
