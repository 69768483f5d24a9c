use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::rep::PermRep;
use crate::error::{Error, Result};
use crate::groupkit::Word;

/// Directed edge `from → to = σ_gen(from)` of the Schreier graph; `gen` is 0
/// for `X` and 1 for `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub from: usize,
    pub gen: usize,
    pub to: usize,
}

/// Schreier graph data for the stabilizer `H` of point 0 (point 1 in
/// one-line notation).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchreierData {
    pub n: usize,
    pub tree: Vec<TreeEdge>,
    /// `tree_paths[v]` carries 0 to `v`.
    pub tree_paths: Vec<Word>,
    /// Edges outside the tree; the j-th one is dual to the pants curve `α_{j+1}`.
    pub non_tree: Vec<TreeEdge>,
    /// Free generators of `H`, one per non-tree edge.
    pub generators: Vec<Word>,
}

impl SchreierData {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }
}

/// Breadth-first spanning tree from point 0: `X` edges before `Y` edges,
/// and for each generator the smaller neighbour first. Each non-tree edge
/// `v → u` gives the generator `p(v)·g·p(u)⁻¹`.
pub fn schreier(rep: &PermRep) -> Result<SchreierData> {
    if !rep.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = rep.n;
    let gens = rep.generators();
    let invs = [rep.sigma_x.inverse(), rep.sigma_y.inverse()];
    let mut paths: Vec<Option<Word>> = vec![None; n];
    let mut in_tree = vec![[false; 2]; n];
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    paths[0] = Some(Word::empty());
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let pv = paths[v].clone().expect("visited");
        for g in 0..2 {
            let out = gens[g].apply(v);
            let inc = invs[g].apply(v);
            let mut cands = vec![(out, true), (inc, false)];
            cands.sort();
            for (u, forward) in cands {
                if paths[u].is_some() {
                    continue;
                }
                let letter = if forward {
                    g as i32 + 1
                } else {
                    -(g as i32 + 1)
                };
                let mut w = pv.clone();
                w.0.push(letter);
                paths[u] = Some(w);
                let e = if forward {
                    TreeEdge {
                        from: v,
                        gen: g,
                        to: u,
                    }
                } else {
                    TreeEdge {
                        from: u,
                        gen: g,
                        to: v,
                    }
                };
                in_tree[e.from][g] = true;
                tree.push(e);
                queue.push_back(u);
            }
        }
    }
    let tree_paths: Vec<Word> = paths.into_iter().map(|p| p.expect("transitive")).collect();
    let mut non_tree = Vec::new();
    let mut generators = Vec::new();
    for v in 0..n {
        for g in 0..2 {
            if in_tree[v][g] {
                continue;
            }
            let u = gens[g].apply(v);
            let e = TreeEdge {
                from: v,
                gen: g,
                to: u,
            };
            let w = tree_paths[v]
                .concat(&Word::gen(g))
                .concat(&tree_paths[u].inverse())
                .free_reduce();
            non_tree.push(e);
            generators.push(w);
        }
    }
    Ok(SchreierData {
        n,
        tree,
        tree_paths,
        non_tree,
        generators,
    })
}
