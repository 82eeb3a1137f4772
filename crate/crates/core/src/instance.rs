//! Modulator instances: a graph, a budget, a modulator whose deletion leaves
//! only components isomorphic to members of a fixed family.

use crate::exact::EdgeSet;
use crate::graph::{parse_graph_lines, ComponentView, Graph};
use crate::{Caps, EdsError, Result};
use std::collections::HashMap;
use std::fmt::Write as _;

/// Instance (G, k, X) with an optional family; an empty family means the
/// component structure is unchecked. Kernelization can drive `k` negative,
/// which downstream tooling reads as a trivially negative instance, so the
/// budget is signed; parsing enforces k >= 0 on fresh input files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModInstance {
    pub graph: Graph,
    pub k: i64,
    pub modulator: Vec<usize>,
    pub family: Vec<Graph>,
}

impl ModInstance {
    pub fn new(graph: Graph, k: i64, mut modulator: Vec<usize>, family: Vec<Graph>) -> Result<Self> {
        modulator.sort_unstable();
        modulator.dedup();
        if let Some(&v) = modulator.iter().find(|&&v| v >= graph.n()) {
            return Err(EdsError::InvalidInput(format!(
                "modulator vertex {v} outside 0..{}",
                graph.n()
            )));
        }
        Ok(ModInstance {
            graph,
            k,
            modulator,
            family,
        })
    }

    /// Components of G - X, each with original vertex ids.
    pub fn components(&self) -> Vec<ComponentView> {
        let (rest, map) = self
            .graph
            .delete_vertices(&self.modulator)
            .expect("modulator validated");
        rest.connected_components()
            .into_iter()
            .map(|c| ComponentView {
                vertices: c.vertices.iter().map(|&v| map[v]).collect(),
                local: c.local,
            })
            .collect()
    }

    /// Checks that every component of G - X is isomorphic to some family
    /// member; returns the matching member index per component. Family
    /// canonical keys are memoized so each member is canonized once.
    pub fn validate(&self, caps: &Caps) -> Result<Vec<usize>> {
        if self.family.is_empty() {
            return Err(EdsError::Precondition(
                "validate requires a nonempty family".into(),
            ));
        }
        let mut keys = HashMap::new();
        for (idx, member) in self.family.iter().enumerate() {
            if !member.is_connected() {
                continue; // disconnected members never match a component
            }
            caps.check("family member", caps.max_component_size, member.n())?;
            keys.entry(member.canonical_key()?).or_insert(idx);
        }
        let mut out = Vec::new();
        for (cid, comp) in self.components().into_iter().enumerate() {
            caps.check("component", caps.max_component_size, comp.local.n())?;
            let key = comp.local.canonical_key()?;
            match keys.get(&key) {
                Some(&idx) => out.push(idx),
                None => {
                    return Err(EdsError::FamilyMismatch {
                        component: cid,
                        vertices: comp.vertices,
                    })
                }
            }
        }
        Ok(out)
    }
}

/// Parses an instance file: graph lines, then `k <int>`, then
/// `x <id> <id> ...` (ids 1-based, possibly none), then optional witness
/// lines `f <u> <v>`.
pub fn parse_instance(text: &str) -> Result<(ModInstance, Option<EdgeSet>)> {
    let (graph, rest) = parse_graph_lines(text)?;
    let mut k: Option<i64> = None;
    let mut modulator: Option<Vec<usize>> = None;
    let mut witness: Vec<(usize, usize)> = Vec::new();
    for (line_no, line) in rest {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["k", value] => {
                if k.is_some() {
                    return Err(EdsError::Parse {
                        line: line_no,
                        msg: "duplicate k line".into(),
                    });
                }
                k = Some(value.parse::<i64>().map_err(|_| EdsError::Parse {
                    line: line_no,
                    msg: format!("malformed budget {value:?}"),
                })?);
            }
            ["x", ids @ ..] => {
                if modulator.is_some() {
                    return Err(EdsError::Parse {
                        line: line_no,
                        msg: "duplicate x line".into(),
                    });
                }
                let mut xs = Vec::new();
                for id in ids {
                    let v = id.parse::<usize>().map_err(|_| EdsError::Parse {
                        line: line_no,
                        msg: format!("malformed modulator id {id:?}"),
                    })?;
                    if v == 0 || v > graph.n() {
                        return Err(EdsError::Parse {
                            line: line_no,
                            msg: format!("modulator id {v} outside 1..={}", graph.n()),
                        });
                    }
                    xs.push(v - 1);
                }
                modulator = Some(xs);
            }
            ["f", u, v] => {
                let pu = u.parse::<usize>().ok();
                let pv = v.parse::<usize>().ok();
                match (pu, pv) {
                    (Some(pu), Some(pv)) if pu >= 1 && pv >= 1 => witness.push((pu - 1, pv - 1)),
                    _ => {
                        return Err(EdsError::Parse {
                            line: line_no,
                            msg: format!("malformed witness line {line:?}"),
                        })
                    }
                }
            }
            _ => {
                return Err(EdsError::Parse {
                    line: line_no,
                    msg: format!("unexpected line {line:?}"),
                })
            }
        }
    }
    let k = k.ok_or(EdsError::Parse {
        line: 0,
        msg: "missing k line".into(),
    })?;
    let modulator = modulator.ok_or(EdsError::Parse {
        line: 0,
        msg: "missing x line".into(),
    })?;
    let inst = ModInstance::new(graph, k, modulator, Vec::new())?;
    let witness = if witness.is_empty() {
        None
    } else {
        Some(EdgeSet::new(witness))
    };
    Ok((inst, witness))
}

/// Writes the instance format; edges sorted lexicographically, modulator ids
/// ascending, optional witness appended as `f` lines.
pub fn serialize_instance(inst: &ModInstance, witness: Option<&EdgeSet>) -> String {
    let mut out = crate::graph::serialize_graph(&inst.graph);
    let _ = writeln!(out, "k {}", inst.k);
    let mut line = String::from("x");
    for &v in &inst.modulator {
        let _ = write!(line, " {}", v + 1);
    }
    out.push_str(&line);
    out.push('\n');
    if let Some(f) = witness {
        for &(u, v) in f.edges() {
            let _ = writeln!(out, "f {} {}", u + 1, v + 1);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_two_p3s() {
        let g = Graph::path(3).disjoint_union(&Graph::path(3));
        let inst = ModInstance::new(g, 2, vec![], vec![Graph::path(3)]).unwrap();
        assert_eq!(inst.validate(&Caps::default()).unwrap(), vec![0, 0]);
    }

    #[test]
    fn validate_pendant_p5() {
        // P5 plus a pendant modulator vertex on one end
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let inst = ModInstance::new(g, 2, vec![5], vec![Graph::path(5)]).unwrap();
        assert_eq!(inst.validate(&Caps::default()).unwrap(), vec![0]);
    }

    #[test]
    fn validate_rejects_p4_against_p3_family() {
        let inst = ModInstance::new(Graph::path(4), 1, vec![], vec![Graph::path(3)]).unwrap();
        assert!(matches!(
            inst.validate(&Caps::default()),
            Err(EdsError::FamilyMismatch { component: 0, .. })
        ));
    }

    #[test]
    fn instance_round_trip() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let inst = ModInstance::new(g, 2, vec![5], vec![]).unwrap();
        let text = serialize_instance(&inst, None);
        let (back, w) = parse_instance(&text).unwrap();
        assert_eq!(back, inst);
        assert!(w.is_none());
    }

    #[test]
    fn witness_lines_round_trip() {
        let g = Graph::path(3);
        let inst = ModInstance::new(g, 1, vec![], vec![]).unwrap();
        let w = EdgeSet::new([(0, 1)]);
        let text = serialize_instance(&inst, Some(&w));
        let (_, back) = parse_instance(&text).unwrap();
        assert_eq!(back, Some(w));
    }

    #[test]
    fn negative_budget_round_trips() {
        let inst = ModInstance::new(Graph::empty(1), -1, vec![0], vec![]).unwrap();
        let text = serialize_instance(&inst, None);
        let (back, _) = parse_instance(&text).unwrap();
        assert_eq!(back.k, -1);
    }
}
