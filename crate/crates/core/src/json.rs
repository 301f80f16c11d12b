//! JSON encoding of nets.
//!
//! Leaves are `{"i": 0, "path": "LR"}`, anchors are `"k<id>"`. Extended nets
//! list their anchors and give every link a `count`; a file without anchors
//! or counts reads as a simple net.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::NetFileError;
use crate::extended_net::{ExtendedNet, Node};
use crate::formula::{Formula, LeafRef, Sequent};
use crate::simple_net::SimpleNet;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetDoc {
    sequent: Vec<Formula>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    anchors: Vec<AnchorDoc>,
    links: Vec<LinkDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AnchorDoc {
    id: String,
    label: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinkDoc {
    src: NodeDoc,
    dst: NodeDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    count: Option<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum NodeDoc {
    Leaf(LeafRef),
    Anchor(String),
}

/// A net read from a file, in whichever category it was written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyNet {
    Simple(SimpleNet),
    Extended(ExtendedNet),
}

impl AnyNet {
    pub fn sequent(&self) -> &Sequent {
        match self {
            AnyNet::Simple(n) => n.sequent(),
            AnyNet::Extended(n) => n.sequent(),
        }
    }

    pub fn into_extended(self) -> ExtendedNet {
        match self {
            AnyNet::Simple(n) => ExtendedNet::from_simple(&n),
            AnyNet::Extended(n) => n,
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            AnyNet::Simple(n) => simple_to_json(n),
            AnyNet::Extended(n) => extended_to_json(n),
        }
    }
}

fn anchor_name(k: u32) -> String {
    format!("k{k}")
}

fn parse_anchor(s: &str) -> Result<u32, NetFileError> {
    s.strip_prefix('k').and_then(|d| d.parse().ok()).ok_or_else(|| NetFileError::AnchorRef(s.to_string()))
}

fn node_doc(n: &Node) -> NodeDoc {
    match n {
        Node::Leaf(l) => NodeDoc::Leaf(*l),
        Node::Anchor(k) => NodeDoc::Anchor(anchor_name(*k)),
    }
}

fn node(d: &NodeDoc) -> Result<Node, NetFileError> {
    Ok(match d {
        NodeDoc::Leaf(l) => Node::Leaf(*l),
        NodeDoc::Anchor(s) => Node::Anchor(parse_anchor(s)?),
    })
}

pub fn simple_to_json(n: &SimpleNet) -> String {
    let doc = NetDoc {
        sequent: n.sequent().formulas().to_vec(),
        anchors: Vec::new(),
        links: n
            .links()
            .iter()
            .map(|(a, b)| LinkDoc { src: NodeDoc::Leaf(*a), dst: NodeDoc::Leaf(*b), count: None })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("nets serialize")
}

pub fn extended_to_json(n: &ExtendedNet) -> String {
    let doc = NetDoc {
        sequent: n.sequent().formulas().to_vec(),
        anchors: n.anchors().iter().map(|(k, a)| AnchorDoc { id: anchor_name(*k), label: a.clone() }).collect(),
        links: n
            .links()
            .iter()
            .map(|((a, b), c)| LinkDoc { src: node_doc(a), dst: node_doc(b), count: Some(*c) })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("nets serialize")
}

/// Reads and validates a net.
pub fn net_from_json(text: &str) -> Result<AnyNet, NetFileError> {
    let doc: NetDoc = serde_json::from_str(text)?;
    let sequent = Sequent::new(doc.sequent);
    let extended = !doc.anchors.is_empty() || doc.links.iter().any(|l| l.count.is_some());
    if !extended {
        let mut links = BTreeSet::new();
        for l in &doc.links {
            match (node(&l.src)?, node(&l.dst)?) {
                (Node::Leaf(a), Node::Leaf(b)) => {
                    links.insert((a, b));
                }
                _ => return Err(NetFileError::NotSimple),
            }
        }
        return Ok(AnyNet::Simple(SimpleNet::new(sequent, links)?));
    }
    let mut anchors = BTreeMap::new();
    for a in &doc.anchors {
        if anchors.insert(parse_anchor(&a.id)?, a.label.clone()).is_some() {
            return Err(NetFileError::DuplicateAnchor(a.id.clone()));
        }
    }
    let mut links = BTreeMap::new();
    for l in &doc.links {
        *links.entry((node(&l.src)?, node(&l.dst)?)).or_insert(0) += l.count.unwrap_or(1);
    }
    Ok(AnyNet::Extended(ExtendedNet::new(sequent, anchors, links)?))
}

pub fn simple_from_json(text: &str) -> Result<SimpleNet, NetFileError> {
    match net_from_json(text)? {
        AnyNet::Simple(n) => Ok(n),
        AnyNet::Extended(n) => n.to_simple().filter(|_| n.links().values().all(|c| *c == 1)).ok_or(NetFileError::NotSimple),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_sequent;

    #[test]
    fn simple_round_trip() {
        let s = parse_sequent("~a, a & t").unwrap();
        let links = BTreeSet::from([
            (LeafRef::at(0, ""), LeafRef::at(1, "L")),
            (LeafRef::at(1, "R"), LeafRef::at(1, "R")),
        ]);
        let n = SimpleNet::new(s, links).unwrap();
        let text = simple_to_json(&n);
        assert!(text.contains(r#""path": "L""#));
        assert!(!text.contains("count"));
        assert_eq!(net_from_json(&text).unwrap(), AnyNet::Simple(n));
    }

    #[test]
    fn extended_round_trip() {
        let text = r#"{
          "sequent": [["or", "~a", "~a"], ["and", "a", "a"]],
          "anchors": [{"id": "k1", "label": "a"}],
          "links": [
            {"src": {"i": 0, "path": "L"}, "dst": "k1", "count": 1},
            {"src": {"i": 0, "path": "R"}, "dst": "k1", "count": 1},
            {"src": "k1", "dst": {"i": 1, "path": "L"}, "count": 1},
            {"src": "k1", "dst": {"i": 1, "path": "R"}, "count": 1}
          ]
        }"#;
        let n = net_from_json(text).unwrap();
        let AnyNet::Extended(e) = &n else { panic!("expected an extended net") };
        assert_eq!(e.anchors().len(), 1);
        assert_eq!(net_from_json(&n.to_json()).unwrap(), n);
    }

    #[test]
    fn errors_carry_positions_and_violations() {
        match net_from_json("{\"sequent\": [\"a\"],\n \"links\": [}") {
            Err(NetFileError::Json { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        let bad = r#"{"sequent": ["a", "a"], "links": [{"src": {"i": 0, "path": ""}, "dst": {"i": 1, "path": ""}}]}"#;
        assert!(matches!(net_from_json(bad), Err(NetFileError::Net(_))));
        let anchor = r#"{"sequent": ["a"], "anchors": [{"id": "x", "label": "a"}], "links": []}"#;
        assert!(matches!(net_from_json(anchor), Err(NetFileError::AnchorRef(_))));
    }
}
