//! Isomorphism of small preference-action models by backtracking over
//! bijections, pruned with per-state signatures.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::formula::AgentId;
use crate::model::PreferenceActionModel;
use crate::relation::Relation;

/// Largest model (per side) the search handles.
pub const ISO_STATE_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("model has {states} states; isomorphism search is limited to {limit}")]
    SizeLimit { states: usize, limit: usize },
}

/// A bijection from the states of the left model to those of the right one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    pub mapping: BTreeMap<String, String>,
}

impl IsoWitness {
    pub fn inverse(&self) -> IsoWitness {
        IsoWitness {
            mapping: self
                .mapping
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
        }
    }

    /// Checks the bijection directly against every relation and atom.
    pub fn verify(&self, left: &PreferenceActionModel, right: &PreferenceActionModel) -> bool {
        let Some(aligned) = Aligned::new(left, right) else {
            return false;
        };
        if self.mapping.len() != left.len() {
            return false;
        }
        let mut map = vec![usize::MAX; left.len()];
        let mut hit = vec![false; right.len()];
        for (a, b) in &self.mapping {
            let (Some(x), Some(y)) = (left.state_index(a), right.state_index(b)) else {
                return false;
            };
            if hit[y] {
                return false;
            }
            hit[y] = true;
            map[x] = y;
        }
        (0..left.len()).all(|x| {
            aligned.vals.iter().all(|(l, r)| l[x] == r[map[x]])
                && (0..left.len()).all(|x2| {
                    aligned
                        .rels
                        .iter()
                        .all(|(l, r)| l.contains(x, x2) == r.contains(map[x], map[x2]))
                })
        })
    }
}

/// The two models' relations and valuations paired up by name.
struct Aligned<'a> {
    rels: Vec<(Relation, Relation)>,
    vals: Vec<(&'a [bool], &'a [bool])>,
}

impl<'a> Aligned<'a> {
    fn new(left: &'a PreferenceActionModel, right: &'a PreferenceActionModel) -> Option<Self> {
        if left.len() != right.len() {
            return None;
        }
        let agents: BTreeSet<&AgentId> = left.agents().iter().collect();
        if agents != right.agents().iter().collect() {
            return None;
        }
        let mut rels = Vec::new();
        for i in &agents {
            for j in &agents {
                rels.push((left.pref(i, j).into_owned(), right.pref(i, j).into_owned()));
            }
            match (left.eq(i), right.eq(i)) {
                (Some(a), Some(b)) => rels.push((a.clone(), b.clone())),
                (None, None) => {}
                _ => return None,
            }
        }
        if left.atoms().ne(right.atoms()) {
            return None;
        }
        let vals = left
            .val_entries()
            .zip(right.val_entries())
            .map(|((_, a), (_, b))| (a.as_slice(), b.as_slice()))
            .collect();
        Some(Aligned { rels, vals })
    }

    fn signature(&self, side: usize, x: usize) -> Vec<usize> {
        let mut sig = Vec::new();
        for (l, r) in &self.vals {
            sig.push([l, r][side][x] as usize);
        }
        for (l, r) in &self.rels {
            let rel = if side == 0 { l } else { r };
            sig.push(rel.out_degree(x));
            sig.push(rel.in_degree(x));
            sig.push(rel.contains(x, x) as usize);
        }
        sig
    }
}

/// Finds an isomorphism from `left` to `right`, if there is one.
pub fn isomorphic(
    left: &PreferenceActionModel,
    right: &PreferenceActionModel,
) -> Result<Option<IsoWitness>, IsoError> {
    for m in [left, right] {
        if m.len() > ISO_STATE_LIMIT {
            return Err(IsoError::SizeLimit {
                states: m.len(),
                limit: ISO_STATE_LIMIT,
            });
        }
    }
    let Some(aligned) = Aligned::new(left, right) else {
        return Ok(None);
    };
    let n = left.len();
    let lsig: Vec<_> = (0..n).map(|x| aligned.signature(0, x)).collect();
    let rsig: Vec<_> = (0..n).map(|y| aligned.signature(1, y)).collect();
    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if extend(&aligned, &lsig, &rsig, &mut map, &mut used) {
        Ok(Some(IsoWitness {
            mapping: map
                .iter()
                .enumerate()
                .map(|(x, &y)| {
                    (
                        left.state_name(x).to_owned(),
                        right.state_name(y).to_owned(),
                    )
                })
                .collect(),
        }))
    } else {
        Ok(None)
    }
}

fn extend(
    aligned: &Aligned<'_>,
    lsig: &[Vec<usize>],
    rsig: &[Vec<usize>],
    map: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let x = map.len();
    if x == lsig.len() {
        return true;
    }
    for y in 0..rsig.len() {
        if used[y] || lsig[x] != rsig[y] {
            continue;
        }
        let consistent = map.iter().enumerate().all(|(x2, &y2)| {
            aligned.rels.iter().all(|(l, r)| {
                l.contains(x, x2) == r.contains(y, y2) && l.contains(x2, x) == r.contains(y2, y)
            })
        });
        if !consistent {
            continue;
        }
        map.push(y);
        used[y] = true;
        if extend(aligned, lsig, rsig, map, used) {
            return true;
        }
        map.pop();
        used[y] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::AtomId;

    fn model(names: [&str; 2], p: &[&str]) -> PreferenceActionModel {
        let mut m = PreferenceActionModel::new(names, [AgentId::new("i")]).unwrap();
        m.set_pref(
            AgentId::new("i"),
            AgentId::new("i"),
            Relation::from_pairs(2, [(0, 1)]).closure(),
        )
        .unwrap();
        m.set_val(AtomId::new("p"), p.iter().copied()).unwrap();
        m
    }

    #[test]
    fn differing_valuation_is_not_isomorphic() {
        let a = model(["x", "y"], &["x"]);
        let b = model(["x", "y"], &["y"]);
        assert_eq!(isomorphic(&a, &b).unwrap(), None);
    }

    #[test]
    fn renamed_copy_is_isomorphic() {
        let a = model(["x", "y"], &["x"]);
        let b = model(["s", "t"], &["s"]);
        let w = isomorphic(&a, &b).unwrap().unwrap();
        assert_eq!(w.mapping["x"], "s");
        assert!(w.verify(&a, &b));
        assert!(w.inverse().verify(&b, &a));
    }

    #[test]
    fn too_large() {
        let names: Vec<String> = (0..11).map(|k| format!("w{k}")).collect();
        let m = PreferenceActionModel::new(names, []).unwrap();
        assert!(matches!(
            isomorphic(&m, &m),
            Err(IsoError::SizeLimit { .. })
        ));
    }
}
