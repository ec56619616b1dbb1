//! Line-oriented specification files.
//!
//! ```text
//! # comment
//! [abelian A] factors = 2,3
//! [group S3] symmetric = 3
//! [action sign] from = S3, on = A
//! table
//! (12) -> 0 2 1 3 5 4
//! [cocycle pi] action = sign
//! id -> (0,0)
//! ```
//!
//! Values may sit on the header line or on the following lines. Every name
//! must be declared before it is used. A `#` starts a comment unless a digit
//! follows it, in which case it is a dense element index.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use regex::Regex;
use twistlab_core::coc::Cocycle;
use twistlab_core::dbl::{build_double, DoubleData};
use twistlab_core::grp::{AbelianGroup, FiniteGroup, GroupAction};
use twistlab_core::symp::{SymplecticHierarchy, SymplecticStructure};

#[derive(Debug)]
pub enum SpecError {
    Parse { line: usize, msg: String },
    Unresolved { line: usize, name: String },
    /// An object failed its own verification while loading.
    Invalid { line: usize, name: String, err: twistlab_core::Error },
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Parse { line, msg } => write!(f, "line {line}: parse error: {msg}"),
            SpecError::Unresolved { line, name } => write!(f, "line {line}: unresolved reference `{name}`"),
            SpecError::Invalid { line, name, err } => write!(f, "line {line}: `{name}` fails verification: {err}"),
        }
    }
}

impl std::error::Error for SpecError {}

#[derive(Clone, Debug)]
pub enum Object {
    Abelian(AbelianGroup, Arc<FiniteGroup>),
    Group(Arc<FiniteGroup>),
    Action(GroupAction),
    Symplectic(SymplecticStructure),
    Cocycle(Cocycle),
    Hierarchy(SymplecticHierarchy),
    Double(Box<DoubleData>),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Abelian(..) => "abelian",
            Object::Group(_) => "group",
            Object::Action(_) => "action",
            Object::Symplectic(_) => "symplectic",
            Object::Cocycle(_) => "cocycle",
            Object::Hierarchy(_) => "hierarchy",
            Object::Double(_) => "double",
        }
    }

    pub fn group(&self) -> Arc<FiniteGroup> {
        match self {
            Object::Abelian(_, g) | Object::Group(g) => Arc::clone(g),
            Object::Action(a) => Arc::clone(a.source()),
            Object::Symplectic(s) => Arc::clone(s.group()),
            Object::Cocycle(c) => Arc::clone(c.group()),
            Object::Hierarchy(h) => Arc::clone(h.group()),
            Object::Double(d) => Arc::clone(d.group()),
        }
    }
}

/// Parsed objects in declaration order.
#[derive(Clone, Debug, Default)]
pub struct SpecFile {
    names: Vec<String>,
    objects: HashMap<String, Object>,
}

impl SpecFile {
    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.get(name)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

struct Section {
    kind: String,
    name: String,
    line: usize,
    body: Vec<(usize, String)>,
}

fn header_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^\[\s*([a-z]+)\s+([A-Za-z_][A-Za-z0-9_]*)\s*\](.*)$").unwrap())
}

fn key_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"(?:^|,)\s*([A-Za-z_][A-Za-z0-9_]*)\s*=").unwrap())
}

fn split_sections(text: &str) -> Result<Vec<Section>, SpecError> {
    let mut out: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = strip_comment(raw);
        if t.is_empty() {
            continue;
        }
        if let Some(c) = header_re().captures(t) {
            out.push(Section { kind: c[1].to_string(), name: c[2].to_string(), line, body: Vec::new() });
            let rest = c[3].trim();
            if !rest.is_empty() {
                out.last_mut().unwrap().body.push((line, rest.to_string()));
            }
        } else if t.starts_with('[') {
            return Err(SpecError::Parse { line, msg: format!("malformed section header `{t}`") });
        } else {
            match out.last_mut() {
                Some(s) => s.body.push((line, t.to_string())),
                None => return Err(SpecError::Parse { line, msg: "content before the first section".into() }),
            }
        }
    }
    Ok(out)
}

/// Text before a comment; a `#` directly followed by a digit is an element
/// index, not a comment.
fn strip_comment(raw: &str) -> &str {
    let b = raw.as_bytes();
    for (i, &c) in b.iter().enumerate() {
        if c == b'#' && !b.get(i + 1).is_some_and(u8::is_ascii_digit) {
            return raw[..i].trim();
        }
    }
    raw.trim()
}

/// `key = value` pairs from one body line, or `None` if it has none.
fn key_values(text: &str) -> Option<Vec<(String, String)>> {
    let caps: Vec<_> = key_re().captures_iter(text).collect();
    if caps.is_empty() || caps[0].get(0).unwrap().start() != 0 {
        return None;
    }
    let mut out = Vec::new();
    for (k, c) in caps.iter().enumerate() {
        let end = caps.get(k + 1).map_or(text.len(), |n| n.get(0).unwrap().start());
        let v = text[c.get(0).unwrap().end()..end].trim().trim_end_matches(',').trim();
        out.push((c[1].to_string(), v.to_string()));
    }
    Some(out)
}

/// Splits on `sep` outside brackets.
fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(c);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

struct Body {
    keys: HashMap<String, (usize, String)>,
    lines: Vec<(usize, String)>,
}

fn body(s: &Section) -> Result<Body, SpecError> {
    let mut keys = HashMap::new();
    let mut lines = Vec::new();
    for (line, text) in &s.body {
        match key_values(text) {
            Some(kv) => {
                for (k, v) in kv {
                    if keys.insert(k.clone(), (*line, v)).is_some() {
                        return Err(SpecError::Parse { line: *line, msg: format!("key `{k}` given twice") });
                    }
                }
            }
            None => lines.push((*line, text.clone())),
        }
    }
    Ok(Body { keys, lines })
}

impl Body {
    fn need(&self, s: &Section, key: &str) -> Result<(usize, &str), SpecError> {
        self.keys
            .get(key)
            .map(|(l, v)| (*l, v.as_str()))
            .ok_or_else(|| SpecError::Parse { line: s.line, msg: format!("[{} {}] needs `{key} = ...`", s.kind, s.name) })
    }
}

fn int(line: usize, t: &str) -> Result<i64, SpecError> {
    t.trim().parse().map_err(|_| SpecError::Parse { line, msg: format!("`{t}` is not an integer") })
}

fn matrix(line: usize, t: &str) -> Result<Vec<Vec<i64>>, SpecError> {
    t.split(';').map(|row| row.split(',').map(|x| int(line, x)).collect()).collect()
}

fn element(line: usize, g: &FiniteGroup, t: &str) -> Result<usize, SpecError> {
    g.parse_element(t).map_err(|e| SpecError::Parse { line, msg: e.to_string() })
}

pub fn parse_spec(text: &str) -> Result<SpecFile, SpecError> {
    let mut spec = SpecFile::default();
    for s in split_sections(text)? {
        if spec.objects.contains_key(&s.name) {
            return Err(SpecError::Parse { line: s.line, msg: format!("`{}` declared twice", s.name) });
        }
        let obj = build(&spec, &s)?;
        spec.names.push(s.name.clone());
        spec.objects.insert(s.name.clone(), obj);
    }
    Ok(spec)
}

fn build(spec: &SpecFile, s: &Section) -> Result<Object, SpecError> {
    let b = body(s)?;
    let invalid = |line: usize, err| SpecError::Invalid { line, name: s.name.clone(), err };
    let lookup = |line: usize, name: &str| {
        spec.get(name.trim()).ok_or_else(|| SpecError::Unresolved { line, name: name.trim().to_string() })
    };
    let group_of = |line: usize, name: &str| -> Result<Arc<FiniteGroup>, SpecError> {
        match lookup(line, name)? {
            Object::Abelian(_, g) | Object::Group(g) => Ok(Arc::clone(g)),
            o => Err(SpecError::Parse { line, msg: format!("`{}` is a {}, expected a group", name.trim(), o.kind()) }),
        }
    };
    match s.kind.as_str() {
        "abelian" => {
            let (line, v) = b.need(s, "factors")?;
            let factors = v.split(',').map(|x| int(line, x).map(|n| n as u32)).collect::<Result<Vec<_>, _>>()?;
            let a = AbelianGroup::new(factors).map_err(|e| invalid(line, e))?;
            let g = Arc::new(FiniteGroup::abelian(&a));
            Ok(Object::Abelian(a, g))
        }
        "group" => {
            if let Some((line, v)) = b.keys.get("symmetric") {
                let n = int(*line, v)?;
                let g = FiniteGroup::symmetric(n as usize).map_err(|e| invalid(*line, e))?;
                return Ok(Object::Group(Arc::new(g)));
            }
            let (line, v) = b.need(s, "semidirect")?;
            let parts = split_top(v, ',');
            if parts.len() != 3 {
                return Err(SpecError::Parse { line, msg: "semidirect = ACTING, NORMAL, ACTION".into() });
            }
            let (k, h) = (group_of(line, &parts[0])?, group_of(line, &parts[1])?);
            let act = match lookup(line, &parts[2])? {
                Object::Action(a) => a.clone(),
                o => return Err(SpecError::Parse { line, msg: format!("`{}` is a {}, expected an action", parts[2], o.kind()) }),
            };
            let g = FiniteGroup::semidirect(k, h, act).map_err(|e| invalid(line, e))?;
            Ok(Object::Group(Arc::new(g)))
        }
        "action" => {
            let (line, from) = b.need(s, "from")?;
            let src = group_of(line, from)?;
            let (line, on) = b.need(s, "on")?;
            let tgt = group_of(line, on)?;
            action(s, &b, src, tgt).map(Object::Action)
        }
        "symplectic" => {
            let (line, on) = b.need(s, "on")?;
            let h = group_of(line, on)?;
            let (mline, m) = b.need(s, "matrix")?;
            let st = if m.trim() == "standard" {
                let a = h.as_abelian().ok_or_else(|| invalid(mline, twistlab_core::Error::NonAbelian))?;
                let r = a.rank() / 2;
                if a.rank() % 2 != 0 || a.factors()[..r] != a.factors()[r..] {
                    return Err(SpecError::Parse { line: mline, msg: format!("standard form needs H = K x K, got {a}") });
                }
                let k = AbelianGroup::new(a.factors()[..r].to_vec()).map_err(|e| invalid(mline, e))?;
                SymplecticStructure::standard(&k).and_then(|st| SymplecticStructure::new(h, st.matrix().to_vec()))
            } else {
                SymplecticStructure::new(h, matrix(mline, m)?)
            };
            st.map(Object::Symplectic).map_err(|e| invalid(mline, e))
        }
        "cocycle" => {
            let (line, name) = b.need(s, "action")?;
            let rho = match lookup(line, name)? {
                Object::Action(a) => a.clone(),
                o => return Err(SpecError::Parse { line, msg: format!("`{name}` is a {}, expected an action", o.kind()) }),
            };
            for (key, want) in [("G", rho.source()), ("A", rho.target())] {
                if let Some((l, v)) = b.keys.get(key) {
                    if *group_of(*l, v)? != **want {
                        return Err(SpecError::Parse { line: *l, msg: format!("`{key} = {v}` does not match the action") });
                    }
                }
            }
            let mut table = vec![usize::MAX; rho.source().order()];
            for (line, text) in b.lines.iter().filter(|(_, t)| t.trim_end_matches(':') != "table") {
                let (g, a) = arrow(*line, text)?;
                let (g, a) = (element(*line, rho.source(), g)?, element(*line, rho.target(), a)?);
                if table[g] != usize::MAX {
                    return Err(SpecError::Parse { line: *line, msg: "element listed twice".into() });
                }
                table[g] = a;
            }
            if let Some(g) = table.iter().position(|&a| a == usize::MAX) {
                return Err(SpecError::Parse { line: s.line, msg: format!("no value for {}", rho.source().label(g)) });
            }
            Cocycle::new(rho, table).map(Object::Cocycle).map_err(|e| invalid(s.line, e))
        }
        "hierarchy" => {
            let (line, v) = b.need(s, "levels")?;
            let mut first = None;
            let mut rest = Vec::new();
            for (i, lev) in split_top(v, ',').iter().enumerate() {
                let inner = lev.strip_prefix('(').and_then(|l| l.strip_suffix(')')).ok_or_else(|| SpecError::Parse {
                    line,
                    msg: format!("level `{lev}` should read (H, B) or (H, B, ACTION)"),
                })?;
                let parts = split_top(inner, ',');
                if parts.len() != if i == 0 { 2 } else { 3 } {
                    return Err(SpecError::Parse { line, msg: format!("level {} should have {} entries", i + 1, if i == 0 { 2 } else { 3 }) });
                }
                let h = group_of(line, &parts[0])?;
                let st = match lookup(line, &parts[1])? {
                    Object::Symplectic(st) if **st.group() == *h => st.clone(),
                    Object::Symplectic(_) => {
                        return Err(SpecError::Parse { line, msg: format!("`{}` is not defined on `{}`", parts[1], parts[0]) })
                    }
                    o => return Err(SpecError::Parse { line, msg: format!("`{}` is a {}, expected symplectic", parts[1], o.kind()) }),
                };
                if i == 0 {
                    first = Some(st);
                } else {
                    let act = match lookup(line, &parts[2])? {
                        Object::Action(a) => a.clone(),
                        o => return Err(SpecError::Parse { line, msg: format!("`{}` is a {}, expected an action", parts[2], o.kind()) }),
                    };
                    rest.push((st, act));
                }
            }
            let first = first.ok_or_else(|| SpecError::Parse { line, msg: "empty hierarchy".into() })?;
            SymplecticHierarchy::new(first, rest).map(Object::Hierarchy).map_err(|e| invalid(line, e))
        }
        "double" => {
            let (line, name) = b.need(s, "base")?;
            match lookup(line, name)? {
                Object::Cocycle(c) => build_double(c).map(|d| Object::Double(Box::new(d))).map_err(|e| invalid(line, e)),
                o => Err(SpecError::Parse { line, msg: format!("`{name}` is a {}, expected a cocycle", o.kind()) }),
            }
        }
        k => Err(SpecError::Parse { line: s.line, msg: format!("unknown section kind `{k}`") }),
    }
}

fn arrow(line: usize, text: &str) -> Result<(&str, &str), SpecError> {
    text.split_once("->")
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| SpecError::Parse { line, msg: format!("expected `x -> y`, got `{text}`") })
}

fn action(s: &Section, b: &Body, src: Arc<FiniteGroup>, tgt: Arc<FiniteGroup>) -> Result<GroupAction, SpecError> {
    let invalid = |line: usize, err| SpecError::Invalid { line, name: s.name.clone(), err };
    let words: Vec<&str> = b.lines.iter().map(|(_, t)| t.as_str()).collect();
    if words == ["trivial"] {
        return Ok(GroupAction::trivial(src, tgt));
    }
    if words.first() == Some(&"table") {
        let mut rows = vec![None; src.order()];
        for (line, text) in &b.lines[1..] {
            let (g, imgs) = arrow(*line, text)?;
            let g = element(*line, &src, g)?;
            let row = imgs.split_whitespace().map(|x| element(*line, &tgt, x)).collect::<Result<Vec<_>, _>>()?;
            if row.len() != tgt.order() {
                return Err(SpecError::Parse { line: *line, msg: format!("expected {} images, got {}", tgt.order(), row.len()) });
            }
            rows[g] = Some(row);
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(g, r)| r.ok_or_else(|| SpecError::Parse { line: s.line, msg: format!("no row for {}", src.label(g)) }))
            .collect::<Result<Vec<_>, _>>()?;
        return GroupAction::from_table(src, tgt, rows).map_err(|e| invalid(s.line, e));
    }
    let a = tgt.as_abelian().ok_or_else(|| invalid(s.line, twistlab_core::Error::NonAbelian))?.clone();
    let mut gens = Vec::new();
    for (line, text) in &b.lines {
        let rest = text.strip_prefix("gen").ok_or_else(|| SpecError::Parse {
            line: *line,
            msg: format!("expected `gen g -> matrix ...`, `table` or `trivial`, got `{text}`"),
        })?;
        let (g, m) = arrow(*line, rest)?;
        let m = m.strip_prefix("matrix").ok_or_else(|| SpecError::Parse { line: *line, msg: "expected `matrix r11,r12;...`".into() })?;
        gens.push((element(*line, &src, g)?, matrix(*line, m)?));
    }
    // rebuild over the declared target so later references share its Arc
    GroupAction::from_matrices(Arc::clone(&src), &a, gens)
        .and_then(|act| {
            let rows = (0..src.order()).map(|g| act.automorphism(g).iter().map(|&x| x as usize).collect()).collect();
            GroupAction::from_table(src, tgt, rows)
        })
        .map_err(|e| invalid(s.line, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file() {
        let spec = parse_spec("# one group\n[abelian Z3] factors = 3\n").unwrap();
        assert_eq!(spec.get("Z3").unwrap().group().order(), 3);
    }

    #[test]
    fn keys_on_separate_lines_and_index_labels() {
        let text = "[abelian A]\nfactors = 3\n[action t]\nfrom = A, on = A\ntable\n#1 -> 0 1 2 # identity\n#2 -> #0 #1 #2\n#0 -> 0 1 2\n";
        let spec = parse_spec(text).unwrap();
        assert!(matches!(spec.get("t"), Some(Object::Action(a)) if a.is_trivial()));
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_spec("[abelian A] factors = 3\n[double D] base = nothing\n").unwrap_err();
        assert!(matches!(e, SpecError::Unresolved { line: 2, .. }), "{e}");
        let e = parse_spec("[abelian A] factors = x\n").unwrap_err();
        assert!(matches!(e, SpecError::Parse { line: 1, .. }));
        let e = parse_spec("factors = 3\n").unwrap_err();
        assert!(matches!(e, SpecError::Parse { line: 1, .. }));
    }

    #[test]
    fn broken_cocycle_is_invalid() {
        let text = "[abelian A] factors = 3\n[action t] from = A, on = A\ntrivial\n[cocycle c] action = t\n0 -> 1\n1 -> 0\n2 -> 2\n";
        let e = parse_spec(text).unwrap_err();
        assert!(matches!(e, SpecError::Invalid { err: twistlab_core::Error::CocycleEquation(0, 0), .. }), "{e}");
    }

    #[test]
    fn top_level_split() {
        assert_eq!(split_top("(H1,B1), (H2,B2,r)", ','), vec!["(H1,B1)", "(H2,B2,r)"]);
    }
}
