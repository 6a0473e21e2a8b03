//! Independent dimension count for the quotient of the path algebra by the
//! relation generators, with all paths longer than a bound set to zero.
//!
//! The count comes from a noncommutative Gröbner basis of the truncated
//! ideal. Words are compared shortest first and then lexicographically
//! greatest first, so rewriting a leading word only produces longer or
//! lexicographically smaller words and reduction terminates. Only the
//! relation generators are consulted; the engine's multiplication is not.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::field::{FieldSpec, Scalar};
use crate::presentation::Presentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("truncation bound {trunc} is unstable: {at_trunc} at {trunc}, {at_next} at {}", trunc + 1)]
    BoundTooSmall { trunc: usize, at_trunc: usize, at_next: usize },
    #[error("truncation bound must be positive")]
    ZeroBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub trunc: usize,
    pub dimension: usize,
    /// Size of the reduced Gröbner basis at `trunc`.
    pub groebner_size: usize,
}

type Word = Vec<u32>;

/// Ordering key: greater means "leads first".
#[derive(Clone, Debug, PartialEq, Eq)]
struct Key(Word);

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.len().cmp(&self.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
struct Poly(BTreeMap<Key, Scalar>);

impl Poly {
    fn lead(&self) -> Option<(&Word, &Scalar)> {
        self.0.iter().next_back().map(|(k, v)| (&k.0, v))
    }

    fn add(&mut self, word: Word, value: Scalar, trunc: usize) {
        if word.len() > trunc || value.is_zero() {
            return;
        }
        let key = Key(word);
        let sum = match self.0.get(&key) {
            Some(old) => old + &value,
            None => value,
        };
        if sum.is_zero() {
            self.0.remove(&key);
        } else {
            self.0.insert(key, sum);
        }
    }

    fn monic(self) -> Poly {
        let inv = self.lead().expect("nonzero").1.inv().expect("nonzero lead");
        Poly(self.0.into_iter().map(|(k, v)| (k, &v * &inv)).collect())
    }
}

struct Element {
    lead: Word,
    poly: Poly,
}

struct Groebner {
    trunc: usize,
    elements: Vec<Option<Element>>,
    // leading word -> slot in `elements`
    leads: HashMap<Word, usize>,
    max_lead: usize,
}

fn find_sub(word: &[u32], pat: &[u32]) -> Option<usize> {
    if pat.len() > word.len() {
        return None;
    }
    (0..=word.len() - pat.len()).find(|&i| &word[i..i + pat.len()] == pat)
}

impl Groebner {
    fn divisor(&self, word: &[u32]) -> Option<(usize, usize)> {
        for start in 0..word.len() {
            for len in 1..=self.max_lead.min(word.len() - start) {
                if let Some(&idx) = self.leads.get(&word[start..start + len]) {
                    return Some((idx, start));
                }
            }
        }
        None
    }

    /// Full reduction: no term keeps a leading word as a subword.
    fn reduce(&self, mut p: Poly) -> Poly {
        let mut done = Poly(BTreeMap::new());
        while let Some((key, coeff)) = p.0.pop_last() {
            match self.divisor(&key.0) {
                None => {
                    done.0.insert(key, coeff);
                }
                Some((idx, start)) => {
                    let g = self.elements[idx].as_ref().expect("live element");
                    let (pre, post) = (&key.0[..start], &key.0[start + g.lead.len()..]);
                    for (k, v) in g.poly.0.iter() {
                        if k.0 == g.lead {
                            continue;
                        }
                        let mut w = pre.to_vec();
                        w.extend_from_slice(&k.0);
                        w.extend_from_slice(post);
                        p.add(w, -&(&coeff * v), self.trunc);
                    }
                }
            }
        }
        done
    }

    fn s_polys(&self, a: &Element, b: &Element) -> Vec<Poly> {
        // suffix of a.lead overlapping a prefix of b.lead
        let (u, v) = (&a.lead, &b.lead);
        let mut out = Vec::new();
        for k in 1..u.len().min(v.len()) {
            if u[u.len() - k..] != v[..k] || u.len() + v.len() - k > self.trunc {
                continue;
            }
            let (x, z) = (&u[..u.len() - k], &v[k..]);
            let mut s = Poly(BTreeMap::new());
            for (w, c) in a.poly.0.iter() {
                let mut word = w.0.clone();
                word.extend_from_slice(z);
                s.add(word, c.clone(), self.trunc);
            }
            for (w, c) in b.poly.0.iter() {
                let mut word = x.to_vec();
                word.extend_from_slice(&w.0);
                s.add(word, -c, self.trunc);
            }
            out.push(s);
        }
        out
    }

    fn insert(&mut self, p: Poly, queue: &mut Vec<Poly>) {
        let r = self.reduce(p);
        if r.0.is_empty() {
            return;
        }
        let r = r.monic();
        let lead = r.lead().expect("nonzero").0.clone();
        for slot in self.elements.iter_mut() {
            if slot.as_ref().is_some_and(|e| find_sub(&e.lead, &lead).is_some()) {
                let old = slot.take().expect("checked");
                self.leads.remove(&old.lead);
                queue.push(old.poly);
            }
        }
        let new = Element { lead: lead.clone(), poly: r };
        for e in self.elements.iter().flatten() {
            queue.extend(self.s_polys(&new, e));
            queue.extend(self.s_polys(e, &new));
        }
        queue.extend(self.s_polys(&new, &new));
        self.leads.insert(lead.clone(), self.elements.len());
        self.max_lead = self.max_lead.max(lead.len());
        self.elements.push(Some(new));
    }

    fn run(&mut self, mut queue: Vec<Poly>) {
        loop {
            while let Some(p) = queue.pop() {
                self.insert(p, &mut queue);
            }
            // final sweep: every pair among the surviving elements
            let live: Vec<&Element> = self.elements.iter().flatten().collect();
            for a in &live {
                for b in &live {
                    for s in self.s_polys(a, b) {
                        if !self.reduce(s.clone()).0.is_empty() {
                            queue.push(s);
                        }
                    }
                }
            }
            if queue.is_empty() {
                return;
            }
        }
    }
}

struct PathGraph {
    // arrows leaving the target of each arrow
    next: Vec<Vec<u32>>,
    num_vertices: usize,
    num_arrows: usize,
}

fn truncated_dimension(p: &Presentation, graph: &PathGraph, trunc: usize) -> (usize, usize) {
    let field: FieldSpec = p.field();
    let mut gens = Vec::new();
    for g in p.relation_generators() {
        let mut poly = Poly(BTreeMap::new());
        for t in &g.terms {
            let word = t.path.arrows().iter().map(|a| a.index() as u32).collect();
            poly.add(word, t.coefficient.clone(), trunc);
        }
        if !poly.0.is_empty() {
            gens.push(poly);
        }
    }
    debug_assert!(gens.iter().all(|g| g.0.values().all(|v| v.field() == field)));
    let mut gb = Groebner { trunc, elements: Vec::new(), leads: HashMap::new(), max_lead: 0 };
    gb.run(gens);

    // count nonempty paths of length <= trunc avoiding every leading word
    let mut count = graph.num_vertices;
    let mut stack: Vec<Word> = (0..graph.num_arrows as u32).map(|a| vec![a]).collect();
    while let Some(w) = stack.pop() {
        let has_lead_suffix = (1..=gb.max_lead.min(w.len())).any(|k| gb.leads.contains_key(&w[w.len() - k..]));
        if has_lead_suffix {
            continue;
        }
        count += 1;
        if w.len() < trunc {
            for &b in &graph.next[*w.last().expect("nonempty") as usize] {
                let mut nw = w.clone();
                nw.push(b);
                stack.push(nw);
            }
        }
    }
    (count, gb.elements.iter().flatten().count())
}

/// Dimension of `KQ/(J + paths longer than trunc)`, checked stable at
/// `trunc + 1`. `trunc = None` uses three times the longest `B_α`.
pub fn oracle_quotient_dimension(p: &Presentation, trunc: Option<usize>) -> Result<OracleReport, OracleError> {
    let q = p.quiver();
    let trunc = match trunc {
        Some(0) => return Err(OracleError::ZeroBound),
        Some(t) => t,
        None => 3 * q.arrows().map(|a| p.cycle_len(a)).max().unwrap_or(1),
    };
    let graph = PathGraph {
        next: q.arrows().map(|a| q.out_arrows(q.target(a)).into_iter().map(|b| b.index() as u32).collect()).collect(),
        num_vertices: q.num_vertices(),
        num_arrows: q.num_arrows(),
    };
    let (at_trunc, groebner_size) = truncated_dimension(p, &graph, trunc);
    let (at_next, _) = truncated_dimension(p, &graph, trunc + 1);
    if at_trunc != at_next {
        return Err(OracleError::BoundTooSmall { trunc, at_trunc, at_next });
    }
    Ok(OracleReport { trunc, dimension: at_trunc, groebner_size })
}
