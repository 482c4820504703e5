//! The versioned JSON document for digraphs and balls, and DOT rendering.

use std::fmt::Write as _;

use chdigraph::{BallDigraph, Digraph};
use serde::{Deserialize, Serialize};

pub const FORMAT: &str = "chdigraph-digraph";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Vertices {
    pub count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallMeta {
    pub root: usize,
    pub radius: usize,
    pub boundary: Vec<usize>,
    pub end_proxies: Vec<Vec<usize>>,
}

/// Canonical on-disk form: vertices ascending, edges lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DigraphDocument {
    pub format: String,
    pub version: u32,
    pub vertices: Vertices,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ball: Option<BallMeta>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentError(pub String);

impl std::fmt::Display for DocumentError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for DocumentError {}

impl DigraphDocument {
    /// Document for a plain digraph, without ball metadata.
    pub fn from_digraph(d: &Digraph) -> Self {
        DigraphDocument {
            format: FORMAT.into(),
            version: VERSION,
            vertices: Vertices {
                count: d.vertex_count(),
                labels: d.labels().map(<[String]>::to_vec),
            },
            edges: d.edges().map(|(u, v)| [u, v]).collect(),
            ball: None,
            spec: None,
            notes: Vec::new(),
        }
    }

    /// Document for a ball; exact balls carry no ball block.
    pub fn from_ball(b: &BallDigraph) -> Self {
        let mut doc = Self::from_digraph(&b.digraph);
        if !b.is_exact() {
            doc.ball = Some(BallMeta {
                root: b.root,
                radius: b.radius,
                boundary: b.boundary.clone(),
                end_proxies: b.end_proxies.clone(),
            });
        }
        doc
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    /// Parses and validates; the result is in canonical order.
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let mut doc: DigraphDocument =
            serde_json::from_str(text).map_err(|e| DocumentError(format!("malformed document: {e}")))?;
        if doc.format != FORMAT {
            return Err(DocumentError(format!("unknown format {:?}", doc.format)));
        }
        if doc.version != VERSION {
            return Err(DocumentError(format!("unsupported version {}", doc.version)));
        }
        doc.edges.sort_unstable();
        if let Some(ball) = &mut doc.ball {
            ball.boundary.sort_unstable();
            for p in &mut ball.end_proxies {
                p.sort_unstable();
            }
            ball.end_proxies.sort();
        }
        // validates ranges, loops and antisymmetry
        doc.to_ball()?;
        Ok(doc)
    }

    pub fn to_digraph(&self) -> Result<Digraph, DocumentError> {
        let d = Digraph::from_edge_list(self.vertices.count, self.edges.iter().map(|e| (e[0], e[1])))
            .map_err(|e| DocumentError(format!("invalid digraph: {e}")))?;
        match &self.vertices.labels {
            Some(labels) => d.with_labels(labels.clone()).map_err(|e| DocumentError(format!("invalid labels: {e}"))),
            None => Ok(d),
        }
    }

    pub fn to_ball(&self) -> Result<BallDigraph, DocumentError> {
        let d = self.to_digraph()?;
        let n = d.vertex_count();
        match &self.ball {
            None => Ok(BallDigraph::exact(d)),
            Some(meta) => {
                let in_range = |v: &usize| *v < n;
                if !in_range(&meta.root)
                    || !meta.boundary.iter().all(in_range)
                    || !meta.end_proxies.iter().flatten().all(in_range)
                {
                    return Err(DocumentError("ball metadata names a missing vertex".into()));
                }
                Ok(BallDigraph::from_parts(
                    d,
                    meta.root,
                    meta.radius,
                    meta.boundary.clone(),
                    meta.end_proxies.clone(),
                ))
            }
        }
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT rendering of a ball: boundary vertices dashed, root doubled.
pub fn ball_to_dot(b: &BallDigraph) -> String {
    let d = &b.digraph;
    let mut out = String::from("digraph G {\n");
    for v in d.vertices() {
        let mut attrs = vec![format!("label={}", quote(&d.label(v)))];
        if b.is_boundary(v) {
            attrs.push("style=dashed".into());
        }
        if !b.is_exact() && v == b.root {
            attrs.push("peripheries=2".into());
        }
        let _ = writeln!(out, "  {v} [{}];", attrs.join(", "));
    }
    for (u, v) in d.edges() {
        let _ = writeln!(out, "  {u} -> {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use chdigraph::{generate, FamilySpec};

    #[test]
    fn triangle_document() {
        let d = Digraph::from_edge_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let doc = DigraphDocument::from_digraph(&d);
        assert_eq!(doc.vertices.count, 3);
        assert_eq!(doc.edges.len(), 3);
        assert!(doc.ball.is_none());
        let text = doc.to_json();
        assert!(!text.contains("\"ball\""));
        assert_eq!(DigraphDocument::from_json(&text).unwrap().to_json(), text);
    }

    #[test]
    fn ball_document_round_trip() {
        let spec: FamilySpec = "M(kappa=3,m=2,r=3)".parse().unwrap();
        let g = generate(&spec).unwrap();
        let mut doc = DigraphDocument::from_ball(&g.ball);
        doc.spec = Some(spec.to_string());
        let text = doc.to_json();
        assert!(text.contains("\"boundary\"") && text.contains("\"end_proxies\""));
        let back = DigraphDocument::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert_eq!(back.to_ball().unwrap(), g.ball);
    }

    #[test]
    fn rejects_bad_documents() {
        let bad = [
            "{}",
            r#"{"format":"other","version":1,"vertices":{"count":2},"edges":[]}"#,
            r#"{"format":"chdigraph-digraph","version":9,"vertices":{"count":2},"edges":[]}"#,
            r#"{"format":"chdigraph-digraph","version":1,"vertices":{"count":2},"edges":[[0,5]]}"#,
            r#"{"format":"chdigraph-digraph","version":1,"vertices":{"count":2},"edges":[[0,1],[1,0]]}"#,
        ];
        for text in bad {
            assert!(DigraphDocument::from_json(text).is_err(), "{text}");
        }
    }

    #[test]
    fn dot_marks_boundary() {
        let g = generate(&"M(kappa=3,m=2,r=2)".parse().unwrap()).unwrap();
        let dot = ball_to_dot(&g.ball);
        assert!(dot.starts_with("digraph G {"));
        assert!(dot.contains("style=dashed"));
        assert_eq!(dot.matches(" -> ").count(), g.ball.digraph.edge_count());
    }
}
