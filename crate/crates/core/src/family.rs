//! Graph families up to isomorphism.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::canon::canonical_labeling;
use crate::graph::Graph;
use crate::graph6::{graph6_decode, graph6_encode};
use crate::subgraph::contains_subgraph;

/// A set of graphs keyed by canonical form. Each class is stored once, as its
/// canonically labeled representative, so iteration order and serialized
/// output are deterministic.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IsoClassSet {
    classes: BTreeMap<Vec<u8>, Graph>,
}

impl std::fmt::Debug for IsoClassSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.graph6_list()).finish()
    }
}

impl IsoClassSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts the class of `g`; returns false if it was already present.
    pub fn insert(&mut self, g: &Graph) -> bool {
        let lab = canonical_labeling(g);
        let key = lab.form();
        if self.classes.contains_key(&key) {
            return false;
        }
        self.classes.insert(key, lab.graph);
        true
    }

    pub fn contains(&self, g: &Graph) -> bool {
        self.classes.contains_key(&canonical_labeling(g).form())
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Canonical representatives in canonical-form order.
    pub fn iter(&self) -> impl Iterator<Item = &Graph> {
        self.classes.values()
    }

    pub fn extend(&mut self, other: &IsoClassSet) {
        for (k, g) in &other.classes {
            self.classes.entry(k.clone()).or_insert_with(|| g.clone());
        }
    }

    /// Sorted graph6 strings of the representatives.
    pub fn graph6_list(&self) -> Vec<String> {
        let mut v: Vec<String> = self.classes.values().map(graph6_encode).collect();
        v.sort();
        v
    }

    pub fn from_graph6_list<S: AsRef<str>>(items: &[S]) -> crate::Result<Self> {
        let mut set = IsoClassSet::new();
        for s in items {
            set.insert(&graph6_decode(s.as_ref())?);
        }
        Ok(set)
    }

    /// Members that contain no other member as a proper subgraph.
    pub fn subgraph_minimal(&self) -> IsoClassSet {
        let members: Vec<&Graph> = self.iter().collect();
        let mut out = IsoClassSet::new();
        for (i, g) in members.iter().enumerate() {
            let dominated = members
                .iter()
                .enumerate()
                .any(|(j, h)| i != j && (h.n(), h.edge_count()) <= (g.n(), g.edge_count()) && contains_subgraph(g, h));
            if !dominated {
                out.insert(g);
            }
        }
        out
    }
}

impl<'a> FromIterator<&'a Graph> for IsoClassSet {
    fn from_iter<I: IntoIterator<Item = &'a Graph>>(iter: I) -> Self {
        let mut s = IsoClassSet::new();
        for g in iter {
            s.insert(g);
        }
        s
    }
}

impl FromIterator<Graph> for IsoClassSet {
    fn from_iter<I: IntoIterator<Item = Graph>>(iter: I) -> Self {
        let mut s = IsoClassSet::new();
        for g in iter {
            s.insert(&g);
        }
        s
    }
}

impl Serialize for IsoClassSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.graph6_list().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IsoClassSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(deserializer)?;
        IsoClassSet::from_graph6_list(&items).map_err(serde::de::Error::custom)
    }
}
