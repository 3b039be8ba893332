use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{multiplicity, Matching, MultiplicityVector, SubsetPair};
use crate::error::{Error, Result};
use crate::group::Element;

/// Streams every matching of a pair exactly once, in lexicographic order of
/// the assignment (smallest `a` decided first, partners tried ascending).
#[derive(Debug)]
pub struct Matchings {
    pair: Arc<SubsetPair>,
    /// Compatible `B`-indices for each `A`-index, ascending.
    candidates: Vec<Vec<usize>>,
    cursor: Vec<usize>,
    chosen: Vec<usize>,
    used: Vec<bool>,
    depth: usize,
    done: bool,
}

pub fn enumerate_matchings(pair: &SubsetPair, bound: usize) -> Result<Matchings> {
    if pair.len() > bound {
        return Err(Error::Resource {
            what: "|A| for enumeration",
            actual: pair.len(),
            limit: bound,
        });
    }
    let k = pair.len();
    let candidates: Vec<Vec<usize>> = pair
        .a()
        .iter()
        .map(|&a| {
            (0..k)
                .filter(|&j| pair.compatible(a, pair.b()[j]))
                .collect()
        })
        .collect();
    let done = candidates.iter().any(Vec::is_empty);
    Ok(Matchings {
        pair: Arc::new(pair.clone()),
        candidates,
        cursor: vec![0; k],
        chosen: vec![0; k],
        used: vec![false; k],
        depth: 0,
        done,
    })
}

impl Matchings {
    fn emit(&self) -> Matching {
        let b = self.pair.b();
        let assignment: Vec<Element> = self.chosen.iter().map(|&j| b[j]).collect();
        Matching::new_unchecked(Arc::clone(&self.pair), assignment)
    }
}

impl Iterator for Matchings {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        let k = self.candidates.len();
        while !self.done {
            if self.depth == k {
                let m = self.emit();
                self.depth -= 1;
                self.used[self.chosen[self.depth]] = false;
                return Some(m);
            }
            let d = self.depth;
            let opts = &self.candidates[d];
            match opts[self.cursor[d]..].iter().position(|&j| !self.used[j]) {
                Some(off) => {
                    let j = opts[self.cursor[d] + off];
                    self.cursor[d] += off + 1;
                    self.used[j] = true;
                    self.chosen[d] = j;
                    self.depth += 1;
                    if self.depth < k {
                        self.cursor[self.depth] = 0;
                    }
                }
                None if d == 0 => self.done = true,
                None => {
                    self.depth -= 1;
                    self.used[self.chosen[self.depth]] = false;
                }
            }
        }
        None
    }
}

/// One multiplicity class: all matchings sharing a multiplicity vector.
#[derive(Debug, Clone)]
pub struct MultiplicityClass {
    pub multiplicity: MultiplicityVector,
    pub count: u64,
    /// First matching of the class in enumeration order.
    pub witness: Matching,
}

#[derive(Debug, Clone)]
pub struct AcyclicityReport {
    pub total_matchings: u64,
    /// Sorted by multiplicity vector.
    pub classes: Vec<MultiplicityClass>,
    /// Witness of the first singleton class, if any; it is acyclic by
    /// definition.
    pub acyclic_witness: Option<Matching>,
}

impl AcyclicityReport {
    pub fn has_acyclic_matching(&self) -> bool {
        self.acyclic_witness.is_some()
    }

    /// Class sizes, sorted ascending.
    pub fn class_sizes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.classes.iter().map(|c| c.count).collect();
        v.sort_unstable();
        v
    }

    pub fn table(&self) -> ClassTable {
        ClassTable {
            total_matchings: self.total_matchings,
            classes: self
                .classes
                .iter()
                .map(|c| ClassRow {
                    multiplicity: c.multiplicity.clone(),
                    count: c.count,
                    witness: c.witness.assignment().iter().map(|e| e.0).collect(),
                })
                .collect(),
        }
    }
}

/// Serializable projection of an [`AcyclicityReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ClassTable {
    pub total_matchings: u64,
    pub classes: Vec<ClassRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ClassRow {
    pub multiplicity: MultiplicityVector,
    pub count: u64,
    pub witness: Vec<i64>,
}

impl ClassTable {
    pub fn min_class_size(&self) -> Option<u64> {
        self.classes.iter().map(|c| c.count).min()
    }
}

/// Buckets every matching by multiplicity vector.
pub fn acyclicity_report(pair: &SubsetPair, bound: usize) -> Result<AcyclicityReport> {
    let mut buckets: BTreeMap<MultiplicityVector, (u64, Matching)> = BTreeMap::new();
    let mut total: u64 = 0;
    for m in enumerate_matchings(pair, bound)? {
        total = total
            .checked_add(1)
            .ok_or(Error::Overflow("matching count"))?;
        let key = multiplicity(&m);
        match buckets.get_mut(&key) {
            Some((c, _)) => *c = c.checked_add(1).ok_or(Error::Overflow("class count"))?,
            None => {
                buckets.insert(key, (1, m));
            }
        }
    }
    let classes: Vec<MultiplicityClass> = buckets
        .into_iter()
        .map(|(multiplicity, (count, witness))| MultiplicityClass {
            multiplicity,
            count,
            witness,
        })
        .collect();
    let acyclic_witness = classes
        .iter()
        .find(|c| c.count == 1)
        .map(|c| c.witness.clone());
    Ok(AcyclicityReport {
        total_matchings: total,
        classes,
        acyclic_witness,
    })
}
