//! JSON records for solver output. Field order is fixed, so serializing the
//! same result always gives the same bytes.

use serde::{Deserialize, Serialize};

use crate::chain::{Chain, MemSet, Objective, Seed};
use crate::dag::{LongestPathResult, Weighting};
use crate::error::{Error, Result};
use crate::gap::{Gap, GapAlignment};
use crate::graph::PangenomeGraph;
use crate::lcs::Alignment;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedChar {
    pub q: usize,
    pub vertex: String,
    pub offset: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapRecord {
    pub dq: usize,
    pub dg: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignmentReport {
    pub problem: String,
    pub score: usize,
    pub subsequence: String,
    pub embedding: Vec<EmbeddedChar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gaps: Option<Vec<GapRecord>>,
}

impl AlignmentReport {
    pub fn lcs(a: &Alignment, g: &PangenomeGraph) -> Self {
        AlignmentReport {
            problem: "lcs-sg".into(),
            score: a.score,
            subsequence: String::from_utf8_lossy(&a.subsequence).into_owned(),
            embedding: a
                .q_positions
                .iter()
                .zip(&a.g_positions)
                .map(|(&q, &(v, offset))| EmbeddedChar {
                    q,
                    vertex: g.id(v).to_string(),
                    offset,
                })
                .collect(),
            gaps: None,
        }
    }

    pub fn fglcs(a: &GapAlignment, g: &PangenomeGraph) -> Self {
        AlignmentReport {
            problem: "fglcs-sg".into(),
            gaps: Some(a.gaps.iter().map(|x| GapRecord { dq: x.dq, dg: x.dg }).collect()),
            ..Self::lcs(&a.alignment, g)
        }
    }

    /// Rebuilds the alignment, resolving vertex ids against `g` and reading
    /// characters from `q`.
    pub fn to_alignment(&self, q: &[u8], g: &PangenomeGraph) -> Result<Alignment> {
        let mut out = Alignment::empty();
        for e in &self.embedding {
            let v = g
                .index_of(&e.vertex)
                .ok_or_else(|| Error::UnknownVertex(e.vertex.clone()))?;
            let c = *q
                .get(e.q)
                .ok_or_else(|| Error::Malformed(format!("query index {} out of range", e.q)))?;
            out.q_positions.push(e.q);
            out.g_positions.push((v, e.offset));
            out.subsequence.push(c);
        }
        out.score = self.score;
        Ok(out)
    }

    pub fn to_gap_alignment(&self, q: &[u8], g: &PangenomeGraph) -> Result<GapAlignment> {
        let gaps = self
            .gaps
            .as_ref()
            .ok_or_else(|| Error::Malformed("report has no gaps".into()))?;
        Ok(GapAlignment {
            alignment: self.to_alignment(q, g)?,
            gaps: gaps.iter().map(|x| Gap { dq: x.dq, dg: x.dg }).collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedRecord {
    pub vertex: String,
    pub i: usize,
    pub i2: usize,
    pub j: usize,
    pub j2: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub problem: String,
    pub score: usize,
    pub chain: Vec<SeedRecord>,
}

impl ChainReport {
    pub fn new(c: &Chain, g: &PangenomeGraph) -> Self {
        ChainReport {
            problem: match c.objective {
                Objective::Length => "memc",
                Objective::Count => "msp",
            }
            .into(),
            score: c.score(),
            chain: c.seeds.iter().map(|s| seed_record(s, g)).collect(),
        }
    }

    pub fn to_seeds(&self, g: &PangenomeGraph) -> Result<Vec<Seed>> {
        self.chain
            .iter()
            .map(|r| {
                let v = g
                    .index_of(&r.vertex)
                    .ok_or_else(|| Error::UnknownVertex(r.vertex.clone()))?;
                Ok(Seed::new(v, (r.i, r.i2), (r.j, r.j2)))
            })
            .collect()
    }
}

fn seed_record(s: &Seed, g: &PangenomeGraph) -> SeedRecord {
    SeedRecord {
        vertex: g.id(s.vertex).to_string(),
        i: s.label.start,
        i2: s.label.end,
        j: s.query.start,
        j2: s.query.end,
    }
}

/// A bare seed set, as emitted by MEM enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedListReport {
    pub problem: String,
    pub count: usize,
    pub seeds: Vec<SeedRecord>,
}

impl SeedListReport {
    pub fn mems(ms: &MemSet, g: &PangenomeGraph) -> Self {
        SeedListReport {
            problem: "mems".into(),
            count: ms.len(),
            seeds: ms.seeds().iter().map(|s| seed_record(s, g)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathReport {
    pub problem: String,
    pub mode: String,
    pub score: u64,
    pub path: Vec<usize>,
}

impl PathReport {
    pub fn new(res: &LongestPathResult, mode: Weighting) -> Self {
        PathReport {
            problem: "lp".into(),
            mode: match mode {
                Weighting::Edge => "edge",
                Weighting::Vertex => "vertex",
            }
            .into(),
            score: res.score,
            path: res.path.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub problem: String,
    pub score: usize,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report types always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::solve_memc;
    use crate::gap::{solve_fglcs_sg, GapParams};
    use crate::graph::{parse_tsv, ReachMatrix};
    use crate::lcs::solve_lcs_sg;

    fn g() -> PangenomeGraph {
        parse_tsv(b"V a ab\nV b ba\nE a b\n").unwrap()
    }

    #[test]
    fn lcs_json_shape_and_roundtrip() {
        let g = g();
        let a = solve_lcs_sg(b"aba", &g);
        let rep = AlignmentReport::lcs(&a, &g);
        let json = to_json(&rep);
        assert!(json.starts_with(r#"{"problem":"lcs-sg","score":3,"subsequence":"aba","embedding":[{"q":0,"vertex":"a","offset":0}"#));
        assert!(!json.contains("gaps"));
        let back: AlignmentReport = serde_json::from_str(&json).unwrap();
        let a2 = back.to_alignment(b"aba", &g).unwrap();
        assert_eq!(a2, a);
        a2.validate(b"aba", &g, &ReachMatrix::new(&g)).unwrap();
    }

    #[test]
    fn fglcs_carries_gaps() {
        let g = g();
        let a = solve_fglcs_sg(b"aba", &g, GapParams::UNBOUNDED).unwrap();
        let rep = AlignmentReport::fglcs(&a, &g);
        let json = to_json(&rep);
        assert!(json.contains(r#""gaps":[{"dq":1,"dg":"#));
        let back: AlignmentReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_gap_alignment(b"aba", &g).unwrap(), a);
    }

    #[test]
    fn chain_roundtrip() {
        let g = g();
        let ms = MemSet::from_seeds([Seed::new(0, (0, 1), (0, 1)), Seed::new(1, (0, 1), (2, 3))]);
        let c = solve_memc(&ms, &g).unwrap();
        let rep = ChainReport::new(&c, &g);
        assert_eq!(
            to_json(&rep),
            r#"{"problem":"memc","score":4,"chain":[{"vertex":"a","i":0,"i2":1,"j":0,"j2":1},{"vertex":"b","i":0,"i2":1,"j":2,"j2":3}]}"#
        );
        assert_eq!(rep.to_seeds(&g).unwrap(), c.seeds);
        let bad = ChainReport {
            chain: vec![SeedRecord { vertex: "zz".into(), i: 0, i2: 0, j: 0, j2: 0 }],
            ..rep
        };
        assert!(bad.to_seeds(&g).is_err());
    }
}
