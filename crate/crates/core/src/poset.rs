//! Finite posets, structural predicates, incomparability graphs, and random
//! generators for test corpora.
//!
//! Elements are opaque string ids held in lexicographic order; an optional
//! labeling by distinct naturals is kept separate since only the unit
//! interval order machinery needs it. The strict order is stored as a dense
//! matrix (the transitive closure of the input covers), so comparability
//! checks are O(1) everywhere else in the crate.

use std::collections::{BTreeMap, HashMap};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An immutable finite poset. Shareable read-only; all operations are pure.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    /// Flattened n*n strict-order matrix; `lt[u*n + v]` means `u <_P v`.
    lt: Vec<bool>,
    labels: Option<Vec<u64>>,
    /// Incomparable pairs `(u, v)` with `u < v` as indices, in order.
    inc_pairs: Vec<(usize, usize)>,
    /// A linear extension: `topo_rank[u] < topo_rank[v]` whenever `u <_P v`.
    topo_rank: Vec<usize>,
}

/// Serialized form: `{"elements": [...], "covers": [[a,b],...], "labels": {..}?}`.
#[derive(Serialize, Deserialize)]
struct PosetJson {
    elements: Vec<String>,
    covers: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<BTreeMap<String, u64>>,
}

impl FinitePoset {
    /// Builds a poset from elements and cover relations; the stored order is
    /// the transitive closure of the covers. Rejects cyclic input and
    /// dangling ids. Elements are reordered lexicographically.
    pub fn build(
        elements: &[String],
        covers: &[(String, String)],
        labels: Option<&BTreeMap<String, u64>>,
    ) -> Result<FinitePoset> {
        let mut sorted: Vec<String> = elements.to_vec();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateElement(w[0].clone()));
            }
        }
        let index: HashMap<String, usize> =
            sorted.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let n = sorted.len();

        let mut lt = vec![false; n * n];
        for (lo, hi) in covers {
            let &u = index.get(lo).ok_or_else(|| Error::UnknownElement(lo.clone()))?;
            let &v = index.get(hi).ok_or_else(|| Error::UnknownElement(hi.clone()))?;
            lt[u * n + v] = true;
        }
        // Floyd-Warshall style transitive closure.
        for k in 0..n {
            for u in 0..n {
                if lt[u * n + k] {
                    for v in 0..n {
                        if lt[k * n + v] {
                            lt[u * n + v] = true;
                        }
                    }
                }
            }
        }
        for u in 0..n {
            if lt[u * n + u] {
                return Err(Error::Cycle(sorted[u].clone()));
            }
        }

        let labels = match labels {
            None => None,
            Some(map) => {
                let mut vals = Vec::with_capacity(n);
                for e in &sorted {
                    let &l = map
                        .get(e)
                        .ok_or_else(|| Error::InvalidInput(format!("element `{e}` has no label")))?;
                    vals.push(l);
                }
                let mut seen = std::collections::HashSet::new();
                for &l in &vals {
                    if !seen.insert(l) {
                        return Err(Error::DuplicateLabel(l));
                    }
                }
                Some(vals)
            }
        };

        let mut inc_pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !lt[u * n + v] && !lt[v * n + u] {
                    inc_pairs.push((u, v));
                }
            }
        }

        // Kahn's algorithm, smallest index first, for a deterministic
        // linear extension.
        let mut topo_rank = vec![0usize; n];
        let mut remaining: Vec<bool> = vec![true; n];
        for rank in 0..n {
            let next = (0..n)
                .find(|&v| {
                    remaining[v] && (0..n).all(|u| !remaining[u] || !lt[u * n + v])
                })
                .expect("acyclic relation always has a minimal element");
            topo_rank[next] = rank;
            remaining[next] = false;
        }

        Ok(FinitePoset { elements: sorted, index, lt, labels, inc_pairs, topo_rank })
    }

    pub fn from_json(text: &str) -> Result<FinitePoset> {
        let parsed: PosetJson = serde_json::from_str(text)?;
        FinitePoset::build(&parsed.elements, &parsed.covers, parsed.labels.as_ref())
    }

    /// Canonical JSON: elements sorted lexicographically, covers from the
    /// transitive reduction.
    pub fn to_json(&self) -> String {
        let covers = self
            .cover_relations()
            .into_iter()
            .map(|(u, v)| (self.elements[u].clone(), self.elements[v].clone()))
            .collect();
        let labels = self.labels.as_ref().map(|ls| {
            self.elements
                .iter()
                .zip(ls)
                .map(|(e, &l)| (e.clone(), l))
                .collect::<BTreeMap<_, _>>()
        });
        serde_json::to_string_pretty(&PosetJson { elements: self.elements.clone(), covers, labels })
            .expect("poset serialization cannot fail")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Element ids in canonical (lexicographic) order.
    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, u: usize) -> &str {
        &self.elements[u]
    }

    pub fn element_index(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// `u <_P v`.
    pub fn lt(&self, u: usize, v: usize) -> bool {
        self.lt[u * self.elements.len() + v]
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.lt(u, v) || self.lt(v, u)
    }

    pub fn incomparable(&self, u: usize, v: usize) -> bool {
        u != v && !self.comparable(u, v)
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    pub fn label(&self, u: usize) -> Result<u64> {
        Ok(self.labels.as_ref().ok_or(Error::MissingLabels)?[u])
    }

    /// Rank of `u` in a fixed linear extension of the order. Restricted to a
    /// chain this sorts by `<_P`, which is how rows are kept ordered.
    pub fn topo_rank(&self, u: usize) -> usize {
        self.topo_rank[u]
    }

    /// The covering pairs of the stored order (its transitive reduction).
    pub fn cover_relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut covers = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if self.lt(u, v) && !(0..n).any(|w| self.lt(u, w) && self.lt(w, v)) {
                    covers.push((u, v));
                }
            }
        }
        covers
    }

    /// Sorts a set of pairwise comparable elements into increasing order,
    /// panicking if two of them are incomparable.
    pub fn sort_chain(&self, items: &mut [usize]) {
        items.sort_unstable_by_key(|&u| self.topo_rank[u]);
        for w in items.windows(2) {
            assert!(
                self.lt(w[0], w[1]),
                "`{}` and `{}` are incomparable; not a chain",
                self.name(w[0]),
                self.name(w[1])
            );
        }
    }

    pub fn is_chain(&self, items: &[usize]) -> bool {
        let mut sorted = items.to_vec();
        sorted.sort_unstable_by_key(|&u| self.topo_rank[u]);
        sorted.windows(2).all(|w| self.lt(w[0], w[1]))
    }
}

/// The incomparability graph: vertices are the poset elements, edges the
/// incomparable pairs.
#[derive(Clone, Debug)]
pub struct IncGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<u64>>,
}

impl IncGraph {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Edges as index pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.contains(&key)
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }
}

pub fn incomparability_graph(poset: &FinitePoset) -> IncGraph {
    IncGraph {
        n: poset.len(),
        edges: poset.inc_pairs.clone(),
        labels: poset.labels.clone(),
    }
}

/// Searches for an induced subposet formed by an `a`-chain together with a
/// disjoint `b`-chain; returns the witness as (a-chain, b-chain) indices.
fn find_chain_plus_chain(poset: &FinitePoset, a: usize, b: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = poset.len();
    let k = a + b;
    if n < k {
        return None;
    }
    let mut subset: Vec<usize> = Vec::with_capacity(k);
    fn rec(
        poset: &FinitePoset,
        a: usize,
        b: usize,
        start: usize,
        subset: &mut Vec<usize>,
    ) -> Option<(Vec<usize>, Vec<usize>)> {
        if subset.len() == a + b {
            return check_split(poset, subset, a, b);
        }
        for v in start..poset.len() {
            subset.push(v);
            if let Some(w) = rec(poset, a, b, v + 1, subset) {
                return Some(w);
            }
            subset.pop();
        }
        None
    }
    fn check_split(
        poset: &FinitePoset,
        subset: &[usize],
        a: usize,
        _b: usize,
    ) -> Option<(Vec<usize>, Vec<usize>)> {
        // Try every way to split the subset into an a-chain and a b-chain
        // with all cross pairs incomparable.
        let k = subset.len();
        for mask in 0..(1u32 << k) {
            if (mask.count_ones() as usize) != a {
                continue;
            }
            let left: Vec<usize> =
                (0..k).filter(|&i| mask & (1 << i) != 0).map(|i| subset[i]).collect();
            let right: Vec<usize> =
                (0..k).filter(|&i| mask & (1 << i) == 0).map(|i| subset[i]).collect();
            if !poset.is_chain(&left) || !poset.is_chain(&right) {
                continue;
            }
            if left.iter().all(|&u| right.iter().all(|&v| poset.incomparable(u, v))) {
                let mut l = left;
                let mut r = right;
                poset.sort_chain(&mut l);
                poset.sort_chain(&mut r);
                return Some((l, r));
            }
        }
        None
    }
    rec(poset, a, b, 0, &mut subset)
}

/// Witness for a failed (3+1)-freeness check: a 3-chain plus an element
/// incomparable to all of it.
pub fn find_three_plus_one(poset: &FinitePoset) -> Option<(Vec<usize>, usize)> {
    find_chain_plus_chain(poset, 3, 1).map(|(chain, single)| (chain, single[0]))
}

pub fn is_three_plus_one_free(poset: &FinitePoset) -> bool {
    find_three_plus_one(poset).is_none()
}

pub fn find_two_plus_two(poset: &FinitePoset) -> Option<(Vec<usize>, Vec<usize>)> {
    find_chain_plus_chain(poset, 2, 2)
}

pub fn is_two_plus_two_free(poset: &FinitePoset) -> bool {
    find_two_plus_two(poset).is_none()
}

/// Checks the two natural unit interval order axioms against the labeling:
/// relations ascend in label order, and any element incomparable to both
/// ends of a relation has a label strictly between them.
pub fn is_natural_unit_interval_order(poset: &FinitePoset) -> Result<bool> {
    if !poset.has_labels() {
        return Err(Error::MissingLabels);
    }
    let n = poset.len();
    for u in 0..n {
        for w in 0..n {
            if !poset.lt(u, w) {
                continue;
            }
            if poset.label(u)? >= poset.label(w)? {
                return Ok(false);
            }
            for v in 0..n {
                if v != u && v != w && poset.incomparable(v, w) && poset.incomparable(v, u) {
                    let (lu, lv, lw) = (poset.label(u)?, poset.label(v)?, poset.label(w)?);
                    if !(lu < lv && lv < lw) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

fn zero_padded_names(n: usize) -> Vec<String> {
    let width = n.to_string().len();
    (1..=n).map(|i| format!("{i:0width$}")).collect()
}

/// Draws `n` reals, relates `u <_P v` when `u + 1 < v`, and labels the
/// elements `1..=n` in real order. Always a natural unit interval order.
pub fn random_nuio(n: usize, seed: u64) -> FinitePoset {
    assert!(n >= 1);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut reals: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..(n as f64 / 2.0))).collect();
    reals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let names = zero_padded_names(n);
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if reals[i] + 1.0 < reals[j] {
                covers.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    let labels: BTreeMap<String, u64> =
        names.iter().enumerate().map(|(i, e)| (e.clone(), i as u64 + 1)).collect();
    FinitePoset::build(&names, &covers, Some(&labels))
        .expect("generated relation is acyclic by construction")
}

pub const REJECTION_CAP: usize = 10_000;

/// Rejection-samples random cover sets until the closure is (3+1)-free.
/// Deterministic under `seed`; makes no uniformity claim.
pub fn random_31free_poset(n: usize, seed: u64) -> Result<FinitePoset> {
    assert!(n >= 1);
    let mut rng = StdRng::seed_from_u64(seed);
    let names = zero_padded_names(n);
    for _ in 0..REJECTION_CAP {
        let mut covers = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.random_bool(1.5 / n as f64) {
                    covers.push((names[i].clone(), names[j].clone()));
                }
            }
        }
        let poset = FinitePoset::build(&names, &covers, None)
            .expect("covers only go from smaller to larger index");
        if is_three_plus_one_free(&poset) {
            return Ok(poset);
        }
    }
    Err(Error::GenerationFailed(REJECTION_CAP))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Eight-element (3+1)-free poset used throughout the crate's tests:
    /// a chain a<b<c<d<e<f with g below b and h squeezed between {a,g} and d.
    pub fn fence() -> FinitePoset {
        let elements: Vec<String> = "abcdefgh".chars().map(|c| c.to_string()).collect();
        let covers: Vec<(String, String)> = [
            ("a", "b"),
            ("b", "c"),
            ("c", "d"),
            ("d", "e"),
            ("e", "f"),
            ("g", "b"),
            ("a", "h"),
            ("g", "h"),
            ("h", "d"),
        ]
        .iter()
        .map(|&(u, v)| (u.to_string(), v.to_string()))
        .collect();
        FinitePoset::build(&elements, &covers, None).unwrap()
    }

    fn build(elems: &[&str], covers: &[(&str, &str)]) -> Result<FinitePoset> {
        let e: Vec<String> = elems.iter().map(|s| s.to_string()).collect();
        let c: Vec<(String, String)> =
            covers.iter().map(|&(u, v)| (u.to_string(), v.to_string())).collect();
        FinitePoset::build(&e, &c, None)
    }

    #[test]
    fn fence_incomparable_pairs() {
        let p = fence();
        let pairs: Vec<(String, String)> = p
            .inc_pairs
            .iter()
            .map(|&(u, v)| (p.name(u).to_string(), p.name(v).to_string()))
            .collect();
        let expect = [("a", "g"), ("b", "h"), ("c", "h")];
        assert_eq!(pairs.len(), 3);
        for (u, v) in expect {
            assert!(pairs.contains(&(u.to_string(), v.to_string())));
        }
    }

    #[test]
    fn antichain_and_cycle() {
        let p = build(&["x", "y"], &[]).unwrap();
        assert!(p.incomparable(0, 1));
        assert!(matches!(
            build(&["x", "y"], &[("x", "y"), ("y", "x")]),
            Err(Error::Cycle(_))
        ));
    }

    #[test]
    fn dangling_cover_rejected() {
        assert!(matches!(build(&["x"], &[("x", "z")]), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn closure_is_idempotent() {
        // Re-building from the full relation as covers gives the same order.
        let p = fence();
        let n = p.len();
        let all: Vec<(String, String)> = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| true).map(move |v| (u, v)))
            .filter(|&(u, v)| p.lt(u, v))
            .map(|(u, v)| (p.name(u).to_string(), p.name(v).to_string()))
            .collect();
        let q = FinitePoset::build(&p.elements, &all, None).unwrap();
        assert_eq!(p.lt, q.lt);
    }

    #[test]
    fn fence_is_31_free_but_chain_plus_point_is_not() {
        assert!(is_three_plus_one_free(&fence()));
        let p = build(&["w", "x", "y", "z"], &[("x", "y"), ("y", "z")]).unwrap();
        let witness = find_three_plus_one(&p).unwrap();
        assert_eq!(witness.1, p.element_index("w").unwrap());
        assert!(!is_three_plus_one_free(&p));
    }

    #[test]
    fn quad_poset_is_31_free() {
        let q = build(&["a", "b", "c", "d"], &[("c", "a"), ("d", "a"), ("d", "b")]).unwrap();
        assert!(is_three_plus_one_free(&q));
    }

    #[test]
    fn two_plus_two_checks() {
        // Only three incomparable pairs exist in the fence, so no induced
        // 2+2 (which needs four) can occur.
        assert!(is_two_plus_two_free(&fence()));
        assert!(is_two_plus_two_free(&build(&["x", "y"], &[]).unwrap()));
        let two_chains = build(&["u", "v", "x", "y"], &[("x", "y"), ("u", "v")]).unwrap();
        assert!(!is_two_plus_two_free(&two_chains));
    }

    #[test]
    fn nuio_axioms() {
        let mk = |covers: &[(&str, &str)]| {
            let e: Vec<String> = ["1", "2", "3"].iter().map(|s| s.to_string()).collect();
            let c: Vec<(String, String)> =
                covers.iter().map(|&(u, v)| (u.to_string(), v.to_string())).collect();
            let labels: BTreeMap<String, u64> =
                e.iter().map(|s| (s.clone(), s.parse().unwrap())).collect();
            FinitePoset::build(&e, &c, Some(&labels)).unwrap()
        };
        assert!(is_natural_unit_interval_order(&mk(&[("1", "3")])).unwrap());
        // 2 <_P 3 forces the incomparable element 1 strictly between 2 and 3.
        assert!(!is_natural_unit_interval_order(&mk(&[("2", "3")])).unwrap());

        let unlabeled = build(&["1", "2"], &[]).unwrap();
        assert!(matches!(
            is_natural_unit_interval_order(&unlabeled),
            Err(Error::MissingLabels)
        ));

        let e: Vec<String> = vec!["1".into(), "2".into()];
        let labels: BTreeMap<String, u64> = [("1".into(), 1), ("2".into(), 2)].into();
        let antichain = FinitePoset::build(&e, &[], Some(&labels)).unwrap();
        assert!(is_natural_unit_interval_order(&antichain).unwrap());
    }

    #[test]
    fn incomparability_graph_extremes() {
        let chain = build(&["x", "y", "z"], &[("x", "y"), ("y", "z")]).unwrap();
        assert!(incomparability_graph(&chain).edges().is_empty());

        let anti = build(&["x", "y", "z"], &[]).unwrap();
        assert_eq!(incomparability_graph(&anti).edges().len(), 3);
    }

    #[test]
    fn generators_satisfy_their_validators() {
        for seed in 0..20 {
            let n = 1 + (seed as usize % 6);
            let p = random_nuio(n, seed);
            assert!(is_natural_unit_interval_order(&p).unwrap());
            assert!(is_three_plus_one_free(&p));
            assert!(is_two_plus_two_free(&p));

            let q = random_31free_poset(n, seed).unwrap();
            assert!(is_three_plus_one_free(&q));
        }
        assert_eq!(random_nuio(1, 7).len(), 1);
    }

    #[test]
    fn json_round_trip() {
        let p = fence();
        let q = FinitePoset::from_json(&p.to_json()).unwrap();
        assert_eq!(p.elements, q.elements);
        assert_eq!(p.lt, q.lt);

        let text = r#"{"elements":["b","a"],"covers":[["a","b"]],"labels":{"a":1,"b":2}}"#;
        let r = FinitePoset::from_json(text).unwrap();
        assert_eq!(r.elements(), ["a", "b"]);
        assert!(r.lt(0, 1));
        assert_eq!(r.label(0).unwrap(), 1);
    }
}
