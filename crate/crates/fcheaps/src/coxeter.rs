//! Coxeter systems of types A_{n+1} and C̃_n, words and commutation classes.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heap::Heap;

/// Default length bound for commutation-class enumeration.
pub const DEFAULT_CLASS_BOUND: usize = 16;

/// Default length bound for FC enumeration.
pub const DEFAULT_ENUM_BOUND: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "A")]
    TypeA,
    #[serde(rename = "Ctilde")]
    TypeCtilde,
}

/// A Coxeter system with generators indexed `1..=n+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoxeterSpec {
    pub family: Family,
    pub n: usize,
}

impl CoxeterSpec {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        match family {
            Family::TypeA if n == 0 => Err(Error::input("type A requires n >= 1")),
            Family::TypeCtilde if n < 2 => Err(Error::input("type C~ requires n >= 2")),
            _ => Ok(CoxeterSpec { family, n }),
        }
    }

    pub fn type_a(n: usize) -> Self {
        Self::new(Family::TypeA, n).expect("valid type A rank")
    }

    pub fn ctilde(n: usize) -> Self {
        Self::new(Family::TypeCtilde, n).expect("valid type C~ rank")
    }

    /// Number of generators, `n + 1`.
    pub fn rank(&self) -> usize {
        self.n + 1
    }

    /// Box size of the associated diagrams.
    pub fn k(&self) -> usize {
        self.n + 2
    }

    pub fn is_ctilde(&self) -> bool {
        self.family == Family::TypeCtilde
    }

    pub fn check_index(&self, i: u8) -> Result<()> {
        if i == 0 || i as usize > self.rank() {
            Err(Error::input(format!(
                "generator {i} outside 1..={}",
                self.rank()
            )))
        } else {
            Ok(())
        }
    }

    /// `m(s_i, s_j)` without range checks. All orders are finite in both families.
    pub fn m(&self, i: u8, j: u8) -> u32 {
        if i == j {
            return 1;
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        if b - a > 1 {
            return 2;
        }
        match self.family {
            Family::TypeA => 3,
            Family::TypeCtilde => {
                if a == 1 || b as usize == self.rank() {
                    4
                } else {
                    3
                }
            }
        }
    }

    pub fn commute(&self, i: u8, j: u8) -> bool {
        i.abs_diff(j) > 1
    }

    /// Check that the word uses valid indices.
    pub fn check_word(&self, letters: &[u8]) -> Result<()> {
        letters.iter().try_for_each(|&l| self.check_index(l))
    }
}

impl fmt::Display for CoxeterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::TypeA => write!(f, "A_{}", self.n + 1),
            Family::TypeCtilde => write!(f, "C~_{}", self.n),
        }
    }
}

/// `m(s_i, s_j)`; `None` would denote an infinite order, which never occurs here.
pub fn braid_order(spec: CoxeterSpec, i: u8, j: u8) -> Result<Option<u32>> {
    spec.check_index(i)?;
    spec.check_index(j)?;
    Ok(Some(spec.m(i, j)))
}

/// A word over the generators of a Coxeter system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub spec: CoxeterSpec,
    pub letters: Vec<u8>,
}

impl Word {
    pub fn new(spec: CoxeterSpec, letters: Vec<u8>) -> Result<Self> {
        spec.check_word(&letters)?;
        Ok(Word { spec, letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All words reachable by swapping adjacent commuting letters, with the default bound.
pub fn commutation_class(w: &Word) -> Result<BTreeSet<Vec<u8>>> {
    commutation_class_bounded(w, DEFAULT_CLASS_BOUND)
}

pub fn commutation_class_bounded(w: &Word, bound: usize) -> Result<BTreeSet<Vec<u8>>> {
    if w.len() > bound {
        return Err(Error::resource(format!(
            "word length {} exceeds class bound {bound}",
            w.len()
        )));
    }
    let spec = w.spec;
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.letters.clone());
    queue.push_back(w.letters.clone());
    while let Some(cur) = queue.pop_front() {
        for p in 0..cur.len().saturating_sub(1) {
            if spec.commute(cur[p], cur[p + 1]) {
                let mut next = cur.clone();
                next.swap(p, p + 1);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// True if `letters` contains `ss` or an alternating factor of length `m(s,t) >= 3`.
fn has_forbidden_factor(spec: CoxeterSpec, letters: &[u8]) -> bool {
    for p in 0..letters.len() {
        let s = letters[p];
        if p + 1 < letters.len() && letters[p + 1] == s {
            return true;
        }
        if p + 1 < letters.len() {
            let t = letters[p + 1];
            let m = spec.m(s, t) as usize;
            if m >= 3 && p + m <= letters.len() {
                let alternating = (0..m).all(|q| letters[p + q] == if q % 2 == 0 { s } else { t });
                if alternating {
                    return true;
                }
            }
        }
    }
    false
}

/// Stembridge's test: no word in the commutation class has a factor `ss` or a full braid.
pub fn is_fc_reduced(w: &Word) -> Result<bool> {
    let class = commutation_class(w)?;
    Ok(!class.iter().any(|u| has_forbidden_factor(w.spec, u)))
}

/// Lexicographically minimal member of the commutation class.
pub fn canonical_representative(w: &Word) -> Result<Vec<u8>> {
    Ok(commutation_class(w)?.into_iter().next().unwrap_or_default())
}

/// One heap per FC element of length at most `max_len`, sorted by length then canonical word.
///
/// `None` enumerates until exhaustion and is only accepted for type A.
pub fn enumerate_fc(spec: CoxeterSpec, max_len: Option<usize>) -> Result<Vec<Heap>> {
    let limit = match (max_len, spec.family) {
        (Some(l), _) if l > DEFAULT_ENUM_BOUND => {
            return Err(Error::resource(format!(
                "max_len {l} exceeds enumeration bound {DEFAULT_ENUM_BOUND}"
            )))
        }
        (Some(l), _) => l,
        (None, Family::TypeA) => usize::MAX,
        (None, Family::TypeCtilde) => {
            return Err(Error::resource(
                "FC(C~_n) is infinite; a length bound is required",
            ))
        }
    };
    let mut out = vec![Heap::empty(spec)];
    let mut frontier = vec![Heap::empty(spec)];
    let mut len = 0;
    while len < limit && !frontier.is_empty() {
        let mut next: BTreeSet<Vec<u8>> = BTreeSet::new();
        for h in &frontier {
            for s in 1..=spec.rank() as u8 {
                let mut letters = h.word().to_vec();
                letters.push(s);
                let ext = Heap::from_letters(spec, &letters);
                if ext.is_fc() {
                    next.insert(ext.word().to_vec());
                }
            }
        }
        frontier = next
            .into_iter()
            .map(|w| Heap::from_letters(spec, &w))
            .collect();
        out.extend(frontier.iter().cloned());
        len += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let c5 = CoxeterSpec::ctilde(5);
        assert_eq!(braid_order(c5, 1, 2).unwrap(), Some(4));
        assert_eq!(braid_order(c5, 5, 6).unwrap(), Some(4));
        assert_eq!(braid_order(c5, 2, 3).unwrap(), Some(3));
        assert_eq!(braid_order(c5, 2, 5).unwrap(), Some(2));
        assert_eq!(braid_order(CoxeterSpec::type_a(3), 1, 1).unwrap(), Some(1));
        assert!(braid_order(c5, 0, 1).is_err());
        assert!(braid_order(c5, 1, 7).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(CoxeterSpec::new(Family::TypeCtilde, 1).is_err());
        assert!(CoxeterSpec::new(Family::TypeA, 0).is_err());
        assert_eq!(CoxeterSpec::ctilde(4).k(), 6);
    }

    #[test]
    fn class_bound_is_enforced() {
        let w = Word::new(CoxeterSpec::type_a(3), vec![1; 17]).unwrap();
        assert!(commutation_class(&w).unwrap_err().is_resource());
    }

    #[test]
    fn fc_examples() {
        let a = CoxeterSpec::type_a(3);
        let c2 = CoxeterSpec::ctilde(2);
        assert!(!is_fc_reduced(&Word::new(a, vec![1, 2, 1]).unwrap()).unwrap());
        assert!(is_fc_reduced(&Word::new(c2, vec![1, 2, 1]).unwrap()).unwrap());
        assert!(!is_fc_reduced(&Word::new(c2, vec![1, 2, 1, 2]).unwrap()).unwrap());
        assert!(!is_fc_reduced(&Word::new(c2, vec![3, 1, 3]).unwrap()).unwrap());
    }

    #[test]
    fn canonical_is_lex_min() {
        let w = Word::new(CoxeterSpec::type_a(3), vec![3, 1]).unwrap();
        assert_eq!(canonical_representative(&w).unwrap(), vec![1, 3]);
    }
}
