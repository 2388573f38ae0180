use std::collections::{BTreeMap, BTreeSet};

use crate::{NetError, NetworkPath, NodeCapability};

/// An undirected link graph with a capability label per node.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Topology {
    links: BTreeMap<String, BTreeSet<String>>,
    caps: BTreeMap<String, NodeCapability>,
}

/// Non-blank, non-`#` lines split into exactly two fields.
fn pairs(text: &str) -> Result<Vec<(usize, String, String)>, NetError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            [a, b] => out.push((i + 1, a.to_string(), b.to_string())),
            _ => return Err(NetError::BadLine { line: i + 1, text: raw.to_string() }),
        }
    }
    Ok(out)
}

impl Topology {
    /// `edges`: lines `nodeA nodeB`. `caps`: lines `node KIND`.
    pub fn parse(edges: &str, caps: &str) -> Result<Self, NetError> {
        let mut t = Topology::default();
        for (_, a, b) in pairs(edges)? {
            t.links.entry(a.clone()).or_default().insert(b.clone());
            t.links.entry(b).or_default().insert(a);
        }
        for (line, node, kind) in pairs(caps)? {
            let k = kind.parse().map_err(|text| NetError::UnknownKind { line, text })?;
            t.caps.insert(node, k);
        }
        Ok(t)
    }

    pub fn nodes(&self) -> impl Iterator<Item = &str> {
        self.links.keys().map(String::as_str)
    }

    pub fn capability(&self, node: &str) -> Option<NodeCapability> {
        self.caps.get(node).copied()
    }

    pub fn adjacent(&self, a: &str, b: &str) -> bool {
        self.links.get(a).is_some_and(|n| n.contains(b))
    }

    /// The path through `nodes`, checking every hop is a link.
    pub fn path<S: AsRef<str>>(&self, nodes: &[S]) -> Result<NetworkPath, NetError> {
        if nodes.is_empty() {
            return Err(NetError::EmptyPath);
        }
        let names: Vec<String> = nodes.iter().map(|s| s.as_ref().to_string()).collect();
        for n in &names {
            if !self.links.contains_key(n) && !(names.len() == 1 && self.caps.contains_key(n)) {
                return Err(NetError::UnknownNode(n.clone()));
            }
        }
        for w in names.windows(2) {
            if !self.adjacent(&w[0], &w[1]) {
                return Err(NetError::NotAdjacent(w[0].clone(), w[1].clone()));
            }
        }
        let caps =
            names.iter().map(|n| self.capability(n).ok_or_else(|| NetError::NoCapability(n.clone()))).collect::<Result<Vec<_>, _>>()?;
        NetworkPath::with_nodes(caps, names)
    }
}
