use std::fmt;
use std::sync::Arc;

use super::abelian::AbelianGroup;
use super::action::GroupAction;
use crate::error::{Error, Result};

/// How a group was built; decides element labels and gives access to the
/// factors of structured groups.
#[derive(Clone, Debug)]
pub enum Structure {
    Abelian(AbelianGroup),
    /// `K ⋉ H` with elements in normal form `h·k`, index `h·|K| + k`.
    Semidirect(Box<SemidirectParts>),
    /// Permutations of `0..degree`, composed right to left.
    Permutation(Vec<Vec<u8>>),
    Table,
}

#[derive(Clone, Debug)]
pub struct SemidirectParts {
    pub acting: Arc<FiniteGroup>,
    pub normal: Arc<FiniteGroup>,
    pub action: GroupAction,
}

/// A finite group with a dense multiplication table; index 0 is the identity.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    structure: Structure,
}

pub(crate) fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    std::ptr::eq(a, b) || (a.order == b.order && a.table == b.table)
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        same_group(self, other)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.structure {
            Structure::Abelian(a) => format!("abelian {a}"),
            Structure::Semidirect(p) => {
                format!("semidirect |K|={} |H|={}", p.acting.order(), p.normal.order())
            }
            Structure::Permutation(_) => "permutation".to_string(),
            Structure::Table => "table".to_string(),
        };
        write!(f, "FiniteGroup(order {}, {kind})", self.order)
    }
}

impl FiniteGroup {
    fn with_table(order: usize, table: Vec<u32>, structure: Structure) -> Self {
        let mut inverses = vec![0u32; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inverses[a] = b as u32;
                    break;
                }
            }
        }
        FiniteGroup { order, table, inverses, structure }
    }

    /// Builds a group from an explicit Cayley table, checking every axiom.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::InvalidGroup("table is not square".into()));
            }
            if row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidGroup("table entry out of range".into()));
            }
            table.extend(row.iter().map(|&x| x as u32));
        }
        let g = Self::with_table(n, table, Structure::Table);
        g.verify_axioms()?;
        Ok(g)
    }

    pub fn abelian(a: &AbelianGroup) -> Self {
        let n = a.order();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(a.add(x, y) as u32);
            }
        }
        Self::with_table(n, table, Structure::Abelian(a.clone()))
    }

    /// Group of the given permutations of `0..degree`; the list must be closed
    /// under composition and start with the identity.
    pub fn from_permutations(perms: Vec<Vec<usize>>) -> Result<Self> {
        let n = perms.len();
        let degree = perms.first().map_or(0, Vec::len);
        if n == 0 || degree > u8::MAX as usize {
            return Err(Error::InvalidGroup("bad permutation list".into()));
        }
        let perms: Vec<Vec<u8>> = perms.into_iter().map(|p| p.into_iter().map(|x| x as u8).collect()).collect();
        if perms[0].iter().enumerate().any(|(i, &x)| i != x as usize) {
            return Err(Error::InvalidGroup("first permutation must be the identity".into()));
        }
        for p in &perms {
            let mut seen = vec![false; degree];
            if p.len() != degree {
                return Err(Error::InvalidGroup("permutations of different degrees".into()));
            }
            for &x in p {
                if x as usize >= degree || seen[x as usize] {
                    return Err(Error::InvalidGroup("not a permutation".into()));
                }
                seen[x as usize] = true;
            }
        }
        let lookup: std::collections::HashMap<&[u8], usize> =
            perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        if lookup.len() != n {
            return Err(Error::InvalidGroup("repeated permutation".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for s in &perms {
            for t in &perms {
                let st: Vec<u8> = t.iter().map(|&i| s[i as usize]).collect();
                let &idx = lookup
                    .get(st.as_slice())
                    .ok_or_else(|| Error::InvalidGroup("permutation list not closed".into()))?;
                table.push(idx as u32);
            }
        }
        Ok(Self::with_table(n, table, Structure::Permutation(perms)))
    }

    /// `S_n` with permutations in lexicographic order of their image lists.
    pub fn symmetric(degree: usize) -> Result<Self> {
        if degree == 0 || degree > 7 {
            return Err(Error::InvalidGroup("symmetric groups supported for degree 1..=7".into()));
        }
        let mut all = Vec::new();
        let mut p: Vec<usize> = (0..degree).collect();
        loop {
            all.push(p.clone());
            // next lexicographic permutation
            let Some(i) = (0..degree.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
                break;
            };
            let j = (i + 1..degree).rev().find(|&j| p[j] > p[i]).unwrap();
            p.swap(i, j);
            p[i + 1..].reverse();
        }
        Self::from_permutations(all)
    }

    /// `K ⋉ H` through `action: K -> Aut(H)`, with
    /// `(h1·k1)(h2·k2) = (h1·action(k1)(h2))·(k1·k2)`.
    pub fn semidirect(acting: Arc<FiniteGroup>, normal: Arc<FiniteGroup>, action: GroupAction) -> Result<Self> {
        if !same_group(action.source(), &acting) || !same_group(action.target(), &normal) {
            return Err(Error::InvalidAction("action does not go from K to H".into()));
        }
        let (nk, nh) = (acting.order(), normal.order());
        let n = nk * nh;
        let mut table = Vec::with_capacity(n * n);
        for h1 in 0..nh {
            for k1 in 0..nk {
                for h2 in 0..nh {
                    let moved = action.apply(k1, h2);
                    let h = normal.mul(h1, moved);
                    for k2 in 0..nk {
                        table.push((h * nk + acting.mul(k1, k2)) as u32);
                    }
                }
            }
        }
        // rows above are emitted in (h1,k1) x (h2,k2) order, matching index h·|K| + k
        Ok(Self::with_table(n, table, Structure::Semidirect(Box::new(SemidirectParts { acting, normal, action }))))
    }

    /// `A × B` with `(a, b)` at index `a·|B| + b`.
    pub fn direct_product(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Self {
        if let (Structure::Abelian(x), Structure::Abelian(y)) = (&a.structure, &b.structure) {
            return Self::abelian(&x.product(y));
        }
        let action = GroupAction::trivial(Arc::clone(b), Arc::clone(a));
        Self::semidirect(Arc::clone(b), Arc::clone(a), action).expect("trivial action is valid")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn as_abelian(&self) -> Option<&AbelianGroup> {
        match &self.structure {
            Structure::Abelian(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_semidirect(&self) -> Option<&SemidirectParts> {
        match &self.structure {
            Structure::Semidirect(p) => Some(p),
            _ => None,
        }
    }

    /// `(h, k)` for an element `h·k` of a semidirect product.
    pub fn semidirect_parts(&self, g: usize) -> Option<(usize, usize)> {
        self.as_semidirect().map(|p| (g / p.acting.order(), g % p.acting.order()))
    }

    pub fn semidirect_index(&self, h: usize, k: usize) -> Option<usize> {
        self.as_semidirect().map(|p| h * p.acting.order() + k)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn pow(&self, g: usize, mut e: u64) -> usize {
        let (mut acc, mut base) = (0usize, g);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// Exhaustive check of closure, identity, inverses and associativity.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.order;
        if self.table.len() != n * n || self.table.iter().any(|&x| x as usize >= n) {
            return Err(Error::InvalidGroup("table is not closed".into()));
        }
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::InvalidGroup("index 0 is not the identity".into()));
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return Err(Error::InvalidGroup(format!("element {a} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Short structural name, e.g. `Z3xZ3`, `S3`, `(Z3xZ3):(Z3xZ3)` for a
    /// semidirect product with the acting group on the left.
    pub fn describe(&self) -> String {
        match &self.structure {
            Structure::Abelian(a) => a.to_string(),
            Structure::Semidirect(p) => format!("({}):({})", p.acting.describe(), p.normal.describe()),
            Structure::Permutation(perms) => {
                let degree = perms[0].len();
                if (1..=degree).product::<usize>() == self.order {
                    format!("S{degree}")
                } else {
                    format!("Perm{degree}[{}]", self.order)
                }
            }
            Structure::Table => format!("Table[{}]", self.order),
        }
    }

    pub fn label(&self, g: usize) -> String {
        match &self.structure {
            Structure::Abelian(a) => a.label(g),
            Structure::Semidirect(p) => {
                let (h, k) = (g / p.acting.order(), g % p.acting.order());
                format!("[{};{}]", p.normal.label(h), p.acting.label(k))
            }
            Structure::Permutation(perms) => cycle_notation(&perms[g]),
            Structure::Table => format!("#{g}"),
        }
    }

    /// Parses an element label as produced by [`FiniteGroup::label`]; `#i`
    /// (dense index) is accepted for every group.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let t = text.trim();
        if let Some(i) = t.strip_prefix('#') {
            let i: usize = i.parse().map_err(|_| Error::Parse(format!("bad index `{t}`")))?;
            return if i < self.order {
                Ok(i)
            } else {
                Err(Error::Parse(format!("index {i} out of range")))
            };
        }
        match &self.structure {
            Structure::Abelian(a) => a.parse_element(t),
            Structure::Semidirect(p) => {
                let inner = t
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| Error::Parse(format!("expected `[h;k]`, got `{t}`")))?;
                let split = top_level_split(inner, ';')
                    .ok_or_else(|| Error::Parse(format!("expected `[h;k]`, got `{t}`")))?;
                let h = p.normal.parse_element(&inner[..split])?;
                let k = p.acting.parse_element(&inner[split + 1..])?;
                Ok(h * p.acting.order() + k)
            }
            Structure::Permutation(perms) => {
                let degree = perms[0].len();
                let p = parse_cycles(t, degree)?;
                perms
                    .iter()
                    .position(|q| *q == p)
                    .ok_or_else(|| Error::Parse(format!("`{t}` is not in the group")))
            }
            Structure::Table => Err(Error::Parse(format!("table groups take `#i` labels, got `{t}`"))),
        }
    }
}

fn top_level_split(s: &str, sep: char) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            c if c == sep && depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn cycle_notation(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&(i + 1).to_string());
            i = p[i] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        "id".to_string()
    } else {
        out
    }
}

fn parse_cycles(t: &str, degree: usize) -> Result<Vec<u8>> {
    let mut p: Vec<u8> = (0..degree as u8).collect();
    if matches!(t, "id" | "e" | "()") {
        return Ok(p);
    }
    let bad = || Error::Parse(format!("bad cycle notation `{t}`"));
    // cycles compose right to left, like the group law
    let mut cycles = Vec::new();
    let mut rest = t;
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = body.find(')').ok_or_else(bad)?;
        let digits: Vec<usize> = body[..close]
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
            .collect::<Result<_>>()?;
        if digits.iter().any(|&d| d == 0 || d > degree) {
            return Err(bad());
        }
        cycles.push(digits);
        rest = &body[close + 1..];
    }
    for cycle in cycles.iter().rev() {
        let mut c = vec![0u8; degree];
        for (i, slot) in c.iter_mut().enumerate() {
            *slot = i as u8;
        }
        for w in 0..cycle.len() {
            c[cycle[w] - 1] = (cycle[(w + 1) % cycle.len()] - 1) as u8;
        }
        // p <- c ∘ p
        p = p.iter().map(|&x| c[x as usize]).collect();
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3).unwrap()
    }

    #[test]
    fn symmetric_group() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        g.verify_axioms().unwrap();
        for i in 0..6 {
            assert_eq!(g.parse_element(&g.label(i)).unwrap(), i);
        }
        // right-to-left: (12)(23) sends 1 -> 1 -> 2, so it is (123)
        let a = g.parse_element("(12)").unwrap();
        let b = g.parse_element("(23)").unwrap();
        assert_eq!(g.label(g.mul(a, b)), "(123)");
        assert_eq!(g.parse_element("(12)(23)").unwrap(), g.mul(a, b));
    }

    #[test]
    fn table_group_rejects_non_associative() {
        // a Latin square that is not a group: the quasigroup x*y = 2x - y mod 3, shifted
        let bad = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
        assert!(FiniteGroup::from_table(bad).is_err());
        let z3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        assert_eq!(FiniteGroup::from_table(z3).unwrap().order(), 3);
    }

    #[test]
    fn abelian_tables_are_groups() {
        for f in [vec![2], vec![2, 3], vec![3, 3], vec![4, 2]] {
            let g = FiniteGroup::abelian(&AbelianGroup::new(f).unwrap());
            g.verify_axioms().unwrap();
            assert!(g.is_abelian());
        }
    }

    #[test]
    fn cycle_labels() {
        assert_eq!(cycle_notation(&[1, 2, 0]), "(123)");
        assert_eq!(cycle_notation(&[0, 1, 2]), "id");
        assert_eq!(parse_cycles("(123)", 3).unwrap(), vec![1, 2, 0]);
        assert!(parse_cycles("(14)", 3).is_err());
    }
}
