//! Finite groups given by multiplication tables.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::RepnError;

/// Default cap on group order.
pub const MAX_GROUP_ORDER: usize = 48;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    name: String,
    elements: Vec<String>,
    /// `table[a][b]` is the product `a·b`.
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

/// JSON form: element names, the multiplication table by index, and optional
/// generator names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDocument {
    #[serde(default)]
    pub name: Option<String>,
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
    #[serde(default)]
    pub generators: Option<Vec<String>>,
}

impl Group {
    /// Validates a multiplication table. Without explicit generators a
    /// generating set is chosen greedily in element order.
    pub fn from_table(
        name: impl Into<String>,
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
        generators: Option<Vec<usize>>,
    ) -> Result<Self, RepnError> {
        let n = elements.len();
        let bad = |m: &str| RepnError::MalformedGroup(m.to_string());
        if n == 0 {
            return Err(bad("empty group"));
        }
        if n > MAX_GROUP_ORDER {
            return Err(RepnError::GroupTooLarge { order: n, cap: MAX_GROUP_ORDER });
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(bad("table is not square over the element list"));
        }
        let distinct: BTreeSet<&String> = elements.iter().collect();
        if distinct.len() != n {
            return Err(bad("duplicate element names"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| bad("no identity element"))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| bad("element without inverse"))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(bad("multiplication is not associative"));
                    }
                }
            }
        }
        let mut g = Self { name: name.into(), elements, table, identity, inverse, generators: Vec::new() };
        g.generators = match generators {
            Some(gens) => {
                if g.closure(&gens).len() != n {
                    return Err(bad("generators do not generate the group"));
                }
                gens
            }
            None => {
                let mut gens = Vec::new();
                let mut span = g.closure(&gens);
                for a in 0..n {
                    if !span.contains(&a) {
                        gens.push(a);
                        span = g.closure(&gens);
                    }
                }
                gens
            }
        };
        Ok(g)
    }

    pub fn from_document(doc: &GroupDocument) -> Result<Self, RepnError> {
        let gens = match &doc.generators {
            None => None,
            Some(names) => {
                let index: HashMap<&str, usize> = doc.elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
                Some(
                    names
                        .iter()
                        .map(|s| index.get(s.as_str()).copied().ok_or_else(|| RepnError::MalformedGroup(format!("unknown generator {s:?}"))))
                        .collect::<Result<Vec<_>, _>>()?,
                )
            }
        };
        Self::from_table(doc.name.clone().unwrap_or_else(|| "G".into()), doc.elements.clone(), doc.table.clone(), gens)
    }

    pub fn to_document(&self) -> GroupDocument {
        GroupDocument {
            name: Some(self.name.clone()),
            elements: self.elements.clone(),
            table: self.table.clone(),
            generators: Some(self.generators.iter().map(|&g| self.elements[g].clone()).collect()),
        }
    }

    /// Builds a group from a closed set of permutations (as images of
    /// `0..degree`), listed from `gens` in breadth-first order.
    fn from_permutations(name: &str, degree: usize, gens: &[Vec<usize>], label: impl Fn(&[usize]) -> String) -> Self {
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id];
        let mut next = 0;
        while next < elems.len() {
            for g in gens {
                // apply g after the current element
                let p: Vec<usize> = elems[next].iter().map(|&i| g[i]).collect();
                if !elems.contains(&p) {
                    elems.push(p);
                }
            }
            next += 1;
        }
        let index: HashMap<Vec<usize>, usize> = elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        // a·b means b first, then a
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&b.iter().map(|&i| a[i]).collect::<Vec<_>>()]).collect())
            .collect();
        let names = elems.iter().map(|p| label(p)).collect();
        let gen_idx = gens.iter().map(|g| index[g]).collect();
        Self::from_table(name, names, table, Some(gen_idx)).expect("permutation groups are groups")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `C_n = ⟨a⟩`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            })
            .collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let gens = if n > 1 { vec![1] } else { Vec::new() };
        Self::from_table(format!("C{n}"), names, table, Some(gens)).expect("cyclic group")
    }

    /// `S_3` generated by the transposition `(0 1)` and the 3-cycle `(0 1 2)`.
    pub fn symmetric3() -> Self {
        Self::from_permutations("S3", 3, &[vec![1, 0, 2], vec![1, 2, 0]], cycle_notation)
    }

    /// The dihedral group of order 8, generated by a rotation `r` of order 4
    /// and a reflection `s`, as permutations of the square's corners.
    pub fn dihedral4() -> Self {
        Self::from_permutations("D4", 4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]], cycle_notation)
    }

    /// The quaternion group `{±1, ±i, ±j, ±k}` generated by `i` and `j`.
    pub fn quaternion8() -> Self {
        // (sign, unit) with units 1, i, j, k encoded 0..4
        let names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"];
        let unit_mul = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 1) => (true, 3),
                (2, 3) => (false, 1),
                (3, 2) => (true, 1),
                (3, 1) => (false, 2),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (neg, u) = unit_mul(a % 4, b % 4);
                        let sign = neg ^ (a >= 4) ^ (b >= 4);
                        u + if sign { 4 } else { 0 }
                    })
                    .collect()
            })
            .collect();
        Self::from_table("Q8", names.iter().map(|s| s.to_string()).collect(), table, Some(vec![1, 2])).expect("quaternion group")
    }

    /// Named presets: `C<n>`/`C_<n>`, `S3`, `D4`, `Q8`, `trivial`.
    pub fn preset(name: &str) -> Result<Self, RepnError> {
        let s = name.trim();
        match s {
            "S3" | "S_3" => Ok(Self::symmetric3()),
            "D4" | "D_4" => Ok(Self::dihedral4()),
            "Q8" | "Q_8" => Ok(Self::quaternion8()),
            "trivial" | "1" => Ok(Self::trivial()),
            _ => {
                let n = s
                    .strip_prefix("C_")
                    .or_else(|| s.strip_prefix('C'))
                    .and_then(|r| r.parse::<usize>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| RepnError::UnknownPreset(s.to_string()))?;
                if n > MAX_GROUP_ORDER {
                    return Err(RepnError::GroupTooLarge { order: n, cap: MAX_GROUP_ORDER });
                }
                Ok(Self::cyclic(n))
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order()).map(|a| self.element_order(a)).fold(1, |acc, o| acc / gcd(acc, o) * o)
    }

    pub fn is_abelian(&self) -> bool {
        self.is_abelian_set(&(0..self.order()).collect::<Vec<_>>())
    }

    pub fn is_abelian_set(&self, set: &[usize]) -> bool {
        set.iter().all(|&a| set.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if set.insert(b) {
                    frontier.push(b);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        !set.is_empty() && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        self.is_subgroup(set)
            && (0..self.order()).all(|g| set.iter().all(|&h| set.contains(&self.mul(self.mul(g, h), self.inv(g)))))
    }

    /// Elements given by name, as a sorted index set.
    pub fn subset(&self, names: &[&str]) -> Result<Vec<usize>, RepnError> {
        let mut out: Vec<usize> = names
            .iter()
            .map(|n| self.element(n).ok_or_else(|| RepnError::MalformedGroup(format!("unknown element {n:?}"))))
            .collect::<Result<_, _>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut i = p[start];
        while i != start {
            seen[i] = true;
            cyc.push(i);
            i = p[i];
        }
        out.push('(');
        out.push_str(&cyc.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}
