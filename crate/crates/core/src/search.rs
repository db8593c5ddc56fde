//! Crossing-change search for upper bounds, with a layered unlink test.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{LinkDiagram, RawCrossing};
use crate::error::Result;
use crate::invariants::{kauffman_jones, linking_matrix, nullity, signatures_by_orientation, LaurentPoly};

/// R3 moves allowed between two crossing-reducing moves.
pub const DEFAULT_R3_BUDGET: usize = 8;
/// R3 moves allowed in one simplification run.
pub const MAX_R3_TOTAL: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    NotUnlink,
    ProbablyUnlink,
    CertifiedUnlink,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NotUnlink => "not-unlink",
            Verdict::ProbablyUnlink => "probably-unlink",
            Verdict::CertifiedUnlink => "certified-unlink",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Layer {
    Linking,
    SignatureNullity,
    Jones,
    Simplification,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Move {
    R1,
    R2,
    R3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnlinkVerdict {
    pub value: Verdict,
    /// The layer that rejected the diagram, if any.
    pub failed: Option<Layer>,
    /// Moves applied by the simplification layer.
    pub moves: Vec<Move>,
    /// Crossings left after simplification.
    pub residual_crossings: usize,
    /// The Jones layer was skipped because the diagram exceeded the cap.
    pub jones_skipped: bool,
}

impl UnlinkVerdict {
    fn reject(layer: Layer) -> Self {
        UnlinkVerdict {
            value: Verdict::NotUnlink,
            failed: Some(layer),
            moves: Vec::new(),
            residual_crossings: 0,
            jones_skipped: false,
        }
    }
}

/// Layered unlink test, cheapest first. `NotUnlink` is only returned when an
/// invariant differs from that of the unlink.
pub fn unlink_filter(d: &LinkDiagram, jones_cap: usize) -> UnlinkVerdict {
    let k = d.num_components();
    if linking_matrix(d).iter().flatten().any(|&v| v != 0) {
        return UnlinkVerdict::reject(Layer::Linking);
    }
    for part in d.connected_parts() {
        let Ok(p) = d.sublink(&part) else {
            return UnlinkVerdict::reject(Layer::SignatureNullity);
        };
        if p.num_crossings() == 0 {
            continue;
        }
        let eta = nullity(&p).ok();
        let sigs = signatures_by_orientation(&p).ok();
        let ok = eta == Some(p.num_components() - 1) && sigs.is_some_and(|s| s.iter().all(|&(_, s)| s == 0));
        if !ok {
            return UnlinkVerdict::reject(Layer::SignatureNullity);
        }
    }
    let mut jones_skipped = false;
    if d.num_crossings() <= jones_cap {
        match kauffman_jones(d, jones_cap) {
            Ok(v) if v == LaurentPoly::unlink(k) => {}
            Ok(_) => return UnlinkVerdict::reject(Layer::Jones),
            Err(_) => jones_skipped = true,
        }
    } else {
        jones_skipped = true;
    }
    let (s, moves) = simplify(d, DEFAULT_R3_BUDGET);
    let value = if s.num_crossings() == 0 { Verdict::CertifiedUnlink } else { Verdict::ProbablyUnlink };
    UnlinkVerdict { value, failed: None, moves, residual_crossings: s.num_crossings(), jones_skipped }
}

fn faces_by_corners(d: &LinkDiagram) -> Vec<Vec<(usize, usize)>> {
    let f = d.faces();
    let mut by: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, row) in f.corner_face.iter().enumerate() {
        for (j, &face) in row.iter().enumerate() {
            by.entry(face).or_default().push((c, j));
        }
    }
    by.into_values().collect()
}

/// Removes a kink, if there is one.
pub fn try_r1(d: &LinkDiagram) -> Option<LinkDiagram> {
    for (c, x) in d.crossings().iter().enumerate() {
        for j in 0..4 {
            if x.edges[j] == x.edges[(j + 1) % 4] {
                let mut remove = vec![false; d.num_crossings()];
                remove[c] = true;
                if let Ok(r) = d.remove_crossings(&remove, &vec![true; d.num_components()]) {
                    return Some(r);
                }
            }
        }
    }
    None
}

/// Removes a bigon whose one side passes over both crossings.
pub fn try_r2(d: &LinkDiagram) -> Option<LinkDiagram> {
    for face in faces_by_corners(d) {
        let [(c1, j1), (c2, _)] = face[..] else { continue };
        if c1 == c2 {
            continue;
        }
        // the two sides of the bigon at c1 sit at positions j1 and j1+1;
        // one of them is odd (over) and the other even (under)
        let x1 = d.crossings()[c1];
        let x2 = d.crossings()[c2];
        let e = x1.edges[j1];
        let f = x1.edges[(j1 + 1) % 4];
        let pos_in = |x: &crate::diagram::Crossing, e: usize| (0..4).filter(|&p| x.edges[p] == e).collect::<Vec<_>>();
        let (pe, pf) = (pos_in(&x2, e), pos_in(&x2, f));
        if pe.len() != 1 || pf.len() != 1 {
            continue;
        }
        if j1 % 2 != pe[0] % 2 || (j1 + 1) % 2 != pf[0] % 2 {
            continue;
        }
        let mut remove = vec![false; d.num_crossings()];
        remove[c1] = true;
        remove[c2] = true;
        if let Ok(r) = d.remove_crossings(&remove, &vec![true; d.num_components()]) {
            return Some(r);
        }
    }
    None
}

/// All diagrams reachable by one R3 move.
pub fn r3_moves(d: &LinkDiagram) -> Vec<LinkDiagram> {
    let mut out = Vec::new();
    let xs = d.crossings();
    for face in faces_by_corners(d) {
        let [(a, ja), (b, jb), (c, jc)] = face[..] else { continue };
        if a == b || b == c || a == c {
            continue;
        }
        let corners = [(a, ja), (b, jb), (c, jc)];
        // internal slots: the two positions of each corner
        let mut internal: Vec<(usize, usize)> = Vec::new();
        for &(x, j) in &corners {
            internal.push((x, j));
            internal.push((x, (j + 1) % 4));
        }
        let label = |s: (usize, usize)| xs[s.0].edges[s.1];
        // each internal edge must join two different triangle crossings
        let mut partner = BTreeMap::new();
        let mut ok = true;
        for &s in &internal {
            let others: Vec<(usize, usize)> =
                internal.iter().copied().filter(|&t| t != s && label(t) == label(s)).collect();
            match others[..] {
                [t] if t.0 != s.0 => {
                    partner.insert(s, t);
                }
                _ => ok = false,
            }
        }
        if !ok {
            continue;
        }
        // some side lies over at both ends, or under at both ends
        if !internal.iter().any(|&s| s.1 % 2 == partner[&s].1 % 2) {
            continue;
        }
        let mut edges: Vec<[usize; 4]> = xs.iter().map(|x| x.edges).collect();
        for &s in &internal {
            let t = partner[&s];
            let ext_s = (s.0, (s.1 + 2) % 4);
            let ext_t = (t.0, (t.1 + 2) % 4);
            edges[s.0][s.1] = label(ext_t);
            edges[ext_s.0][ext_s.1] = label(s);
        }
        let raw: Vec<RawCrossing> =
            xs.iter().zip(&edges).map(|(x, e)| RawCrossing { edges: *e, over_in: x.over_in }).collect();
        let comps: Vec<Option<usize>> =
            (0..d.num_components()).map(|i| d.component_edges(i).first().copied()).collect();
        if let Ok(r) = LinkDiagram::assemble(d.name().map(str::to_string), &raw, &comps, d.reversed().to_vec()) {
            out.push(r);
        }
    }
    out
}

fn reduce(d: &LinkDiagram) -> Option<(LinkDiagram, Move)> {
    try_r1(d).map(|r| (r, Move::R1)).or_else(|| try_r2(d).map(|r| (r, Move::R2)))
}

/// Greedy R1/R2 reduction; when stuck, up to `r3_budget` R3 moves are tried,
/// preferring one that enables a reduction.
pub fn simplify(d: &LinkDiagram, r3_budget: usize) -> (LinkDiagram, Vec<Move>) {
    let mut cur = d.clone();
    let mut moves = Vec::new();
    let mut total_r3 = 0;
    loop {
        if let Some((r, m)) = reduce(&cur) {
            cur = r;
            moves.push(m);
            continue;
        }
        let mut seen: HashSet<String> = HashSet::new();
        seen.insert(cur.to_pd_string());
        let mut used = 0;
        let mut progressed = false;
        while used < r3_budget && total_r3 < MAX_R3_TOTAL {
            let cands: Vec<LinkDiagram> =
                r3_moves(&cur).into_iter().filter(|r| !seen.contains(&r.to_pd_string())).collect();
            if cands.is_empty() {
                break;
            }
            let pick = cands.iter().position(|r| reduce(r).is_some()).unwrap_or(0);
            cur = cands[pick].clone();
            seen.insert(cur.to_pd_string());
            moves.push(Move::R3);
            used += 1;
            total_r3 += 1;
            if reduce(&cur).is_some() {
                progressed = true;
                break;
            }
        }
        if !progressed {
            return (cur, moves);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub changes: usize,
    pub witness: Vec<usize>,
    pub verdict: UnlinkVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_changes: usize,
    pub jones_cap: usize,
    /// Accept only certified unlinks.
    pub certify_only: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_changes: 6, jones_cap: crate::invariants::DEFAULT_JONES_CAP, certify_only: false }
    }
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Smallest set of crossings whose change passes the unlink filter, found
/// in size order and lexicographically within a size.
pub fn upper_bound_search(d: &LinkDiagram, opts: SearchOptions) -> Result<Option<SearchResult>> {
    let need = if opts.certify_only { Verdict::CertifiedUnlink } else { Verdict::ProbablyUnlink };
    for c in 0..=opts.max_changes.min(d.num_crossings()) {
        let found = subsets(d.num_crossings(), c).into_par_iter().find_map_first(|set| {
            let changed = d.change_crossings(&set).ok()?;
            let v = unlink_filter(&changed, opts.jones_cap);
            (v.value >= need).then_some(SearchResult { changes: c, witness: set, verdict: v })
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOPF: &str = "X 2 1 3 0\nX 0 3 1 2\n";

    #[test]
    fn subsets_in_lex_order() {
        assert_eq!(subsets(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn free_circles_are_certified() {
        let v = unlink_filter(&LinkDiagram::unlink(3), 16);
        assert_eq!(v.value, Verdict::CertifiedUnlink);
    }

    #[test]
    fn hopf_is_rejected_by_linking() {
        let d = LinkDiagram::parse_pd(HOPF).unwrap();
        assert_eq!(unlink_filter(&d, 16).failed, Some(Layer::Linking));
        let changed = d.change_crossing(0).unwrap();
        assert_eq!(unlink_filter(&changed, 16).value, Verdict::CertifiedUnlink);
    }

    #[test]
    fn kinks_and_bigons_reduce() {
        let kink = LinkDiagram::parse_pd("X 1 1 2 2\n").unwrap();
        assert_eq!(try_r1(&kink).unwrap().num_crossings(), 0);
        let hopf = LinkDiagram::parse_pd(HOPF).unwrap();
        assert!(try_r2(&hopf).is_none());
        let split = hopf.change_crossing(1).unwrap();
        assert_eq!(try_r2(&split).unwrap().num_crossings(), 0);
    }

    #[test]
    fn trefoil_is_rejected() {
        let d = LinkDiagram::parse_pd("X 1 5 2 4\nX 3 1 4 6\nX 5 3 6 2\n").unwrap();
        assert_eq!(unlink_filter(&d, 16).value, Verdict::NotUnlink);
        let r = upper_bound_search(&d, SearchOptions::default()).unwrap().unwrap();
        assert_eq!(r.changes, 1);
    }

    #[test]
    fn hopf_needs_one_change() {
        let d = LinkDiagram::parse_pd(HOPF).unwrap();
        let r = upper_bound_search(&d, SearchOptions::default()).unwrap().unwrap();
        assert_eq!((r.changes, r.witness.clone()), (1, vec![0]));
        assert_eq!(r.verdict.value, Verdict::CertifiedUnlink);
    }
}
