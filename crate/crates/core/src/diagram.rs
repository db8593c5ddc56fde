//! Oriented planar link diagrams built from PD codes.
//!
//! A crossing is a 4-tuple of edge labels listed counterclockwise, starting
//! at the incoming under-strand. The under-strand runs from position 0 to
//! position 2; the over-strand runs between positions 1 and 3, and
//! [`Crossing::over_in`] records which of the two is its incoming end.
//!
//! Every component has a *base* direction fixed at construction. It is read
//! off the under-passes of the PD code; a component that is never an
//! under-strand follows increasing edge labels instead. The user orientation
//! is a per-component reversal flag relative to the base direction.
//!
//! Edges are relabelled `0..2n` so that each component occupies a contiguous
//! run of labels in base order. Components without crossings are stored as
//! empty edge lists ("free circles").

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One end of an edge: a crossing and a position `0..4` in its tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub crossing: usize,
    pub pos: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    /// Edge labels counterclockwise from the incoming under-strand.
    pub edges: [usize; 4],
    /// Position (1 or 3) where the over-strand enters, in base direction.
    pub over_in: usize,
}

impl Crossing {
    /// Sign of the crossing with every component in base direction.
    pub fn base_sign(&self) -> i64 {
        if self.over_in == 3 {
            1
        } else {
            -1
        }
    }

    fn is_incoming(&self, pos: usize) -> bool {
        pos == 0 || pos == self.over_in
    }
}

/// Crossing with arbitrary (not yet compacted) edge labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct RawCrossing {
    pub edges: [usize; 4],
    pub over_in: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    name: Option<String>,
    crossings: Vec<Crossing>,
    components: Vec<Vec<usize>>,
    reversed: Vec<bool>,
    edge_component: Vec<usize>,
    head: Vec<Slot>,
    tail: Vec<Slot>,
}

/// Faces of a connected diagram, as orbits of the rotation system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Faces {
    pub count: usize,
    /// `corner_face[c][i]` is the face containing the corner between
    /// positions `i` and `i+1` of crossing `c`.
    pub corner_face: Vec<[usize; 4]>,
    /// The two faces on either side of each edge.
    pub edge_faces: Vec<[usize; 2]>,
}

impl LinkDiagram {
    /// Assembles a diagram from crossings whose labels are arbitrary.
    ///
    /// `components[i]` names one edge on component `i`, or `None` for a
    /// circle without crossings. Labels are compacted in component order.
    pub(crate) fn assemble(
        name: Option<String>,
        raw: &[RawCrossing],
        components: &[Option<usize>],
        reversed: Vec<bool>,
    ) -> Result<LinkDiagram> {
        if reversed.len() != components.len() {
            return Err(Error::OrientationLength { got: reversed.len(), expected: components.len() });
        }
        let mut slots: BTreeMap<usize, Vec<Slot>> = BTreeMap::new();
        for (c, x) in raw.iter().enumerate() {
            for (pos, &e) in x.edges.iter().enumerate() {
                slots.entry(e).or_default().push(Slot { crossing: c, pos });
            }
        }
        for (&e, s) in &slots {
            if s.len() == 1 {
                return Err(Error::DanglingEdge(e as i64));
            }
            if s.len() != 2 {
                return Err(Error::EdgeMultiplicity(e as i64, s.len()));
            }
        }
        let incoming = |s: Slot| s.pos == 0 || s.pos == raw[s.crossing].over_in;
        let mut head_of: HashMap<usize, Slot> = HashMap::new();
        for (&e, s) in &slots {
            match (incoming(s[0]), incoming(s[1])) {
                (true, false) => head_of.insert(e, s[0]),
                (false, true) => head_of.insert(e, s[1]),
                _ => return Err(Error::InconsistentOrientation(e as i64)),
            };
        }
        let other = |e: usize, s: Slot| {
            let v = &slots[&e];
            if v[0] == s {
                v[1]
            } else {
                v[0]
            }
        };

        let mut relabel: HashMap<usize, usize> = HashMap::new();
        let mut comp_edges: Vec<Vec<usize>> = Vec::with_capacity(components.len());
        let mut next = 0usize;
        for rep in components {
            let Some(start) = *rep else {
                comp_edges.push(Vec::new());
                continue;
            };
            if !slots.contains_key(&start) {
                return Err(Error::DanglingEdge(start as i64));
            }
            let mut list = Vec::new();
            let mut e = start;
            loop {
                if relabel.contains_key(&e) {
                    if e == start {
                        break;
                    }
                    return Err(Error::InconsistentOrientation(e as i64));
                }
                relabel.insert(e, next);
                list.push(next);
                next += 1;
                let h = head_of[&e];
                let out = Slot { crossing: h.crossing, pos: (h.pos + 2) % 4 };
                e = raw[out.crossing].edges[out.pos];
            }
            comp_edges.push(list);
        }
        if relabel.len() != slots.len() {
            let missing = slots.keys().find(|e| !relabel.contains_key(e)).copied().unwrap_or(0);
            return Err(Error::ComponentCount {
                declared: components.len(),
                found: components.len() + usize::from(missing > 0 || !slots.is_empty()),
            });
        }

        let crossings: Vec<Crossing> =
            raw.iter().map(|x| Crossing { edges: x.edges.map(|e| relabel[&e]), over_in: x.over_in }).collect();
        let n_edges = slots.len();
        let mut head = vec![Slot { crossing: 0, pos: 0 }; n_edges];
        let mut tail = head.clone();
        for &e in slots.keys() {
            let h = head_of[&e];
            head[relabel[&e]] = h;
            tail[relabel[&e]] = other(e, h);
        }
        let mut edge_component = vec![0; n_edges];
        for (i, list) in comp_edges.iter().enumerate() {
            for &e in list {
                edge_component[e] = i;
            }
        }
        let d = LinkDiagram { name, crossings, components: comp_edges, reversed, edge_component, head, tail };
        d.check_planar()?;
        Ok(d)
    }

    /// Parses the PD text format (see the crate documentation).
    pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
        let mut name = None;
        let mut declared: Option<(usize, usize)> = None;
        let mut orient: Option<(Vec<bool>, usize)> = None;
        let mut tuples: Vec<[usize; 4]> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let key = it.next().unwrap_or("");
            let rest: Vec<&str> = it.collect();
            let perr = |msg: String| Error::Parse { line: lineno, msg };
            match key {
                "name" => name = Some(rest.join(" ")),
                "components" => {
                    let [k] = rest[..] else {
                        return Err(perr("expected `components <k>`".into()));
                    };
                    let k = k.parse::<usize>().map_err(|e| perr(format!("bad component count: {e}")))?;
                    declared = Some((k, lineno));
                }
                "orient" => {
                    let mut v = Vec::new();
                    for t in rest {
                        match t {
                            "1" | "+1" | "+" => v.push(false),
                            "-1" | "-" => v.push(true),
                            _ => return Err(perr(format!("bad orientation entry `{t}`"))),
                        }
                    }
                    orient = Some((v, lineno));
                }
                "X" => {
                    if rest.len() != 4 {
                        return Err(perr(format!("crossing needs 4 labels, got {}", rest.len())));
                    }
                    let mut t = [0usize; 4];
                    for (i, s) in rest.iter().enumerate() {
                        t[i] = s.parse::<usize>().map_err(|e| perr(format!("bad edge label `{s}`: {e}")))?;
                    }
                    tuples.push(t);
                }
                other => return Err(perr(format!("unknown directive `{other}`"))),
            }
        }
        let declared_k = declared.map(|d| d.0);
        if tuples.is_empty() {
            match declared_k {
                Some(k) if k > 0 => {}
                _ => return Err(Error::NoCrossings),
            }
        }
        let (raw, reps) = orient_pd(&tuples)?;
        let found = reps.len();
        let k = declared_k.unwrap_or(found);
        if k < found {
            return Err(Error::ComponentCount { declared: k, found });
        }
        let mut comps: Vec<Option<usize>> = reps.into_iter().map(Some).collect();
        comps.resize(k, None);
        let reversed = match orient {
            None => vec![false; k],
            Some((v, lineno)) => {
                if v.len() != k {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("orientation has {} entries for {k} components", v.len()),
                    });
                }
                v
            }
        };
        LinkDiagram::assemble(name, &raw, &comps, reversed)
    }

    /// Diagram of `k` disjoint circles without crossings.
    pub fn unlink(k: usize) -> LinkDiagram {
        LinkDiagram {
            name: None,
            crossings: Vec::new(),
            components: vec![Vec::new(); k],
            reversed: vec![false; k],
            edge_component: Vec::new(),
            head: Vec::new(),
            tail: Vec::new(),
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn num_edges(&self) -> usize {
        self.head.len()
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, c: usize) -> Result<&Crossing> {
        self.crossings.get(c).ok_or(Error::UnknownCrossing(c))
    }

    /// Edge labels of component `i` in base direction (empty for a free circle).
    pub fn component_edges(&self, i: usize) -> &[usize] {
        &self.components[i]
    }

    pub fn edge_component(&self, e: usize) -> usize {
        self.edge_component[e]
    }

    pub fn edge_head(&self, e: usize) -> Slot {
        self.head[e]
    }

    pub fn edge_tail(&self, e: usize) -> Slot {
        self.tail[e]
    }

    /// Number of components that pass through no crossing.
    pub fn free_circles(&self) -> usize {
        self.components.iter().filter(|c| c.is_empty()).count()
    }

    /// Reversal flags relative to the base direction.
    pub fn reversed(&self) -> &[bool] {
        &self.reversed
    }

    /// Orientation as `±1` per component (`-1` = reversed).
    pub fn orientation_vector(&self) -> Vec<i64> {
        self.reversed.iter().map(|&r| if r { -1 } else { 1 }).collect()
    }

    pub fn with_orientation(&self, reversed: &[bool]) -> Result<LinkDiagram> {
        if reversed.len() != self.num_components() {
            return Err(Error::OrientationLength { got: reversed.len(), expected: self.num_components() });
        }
        let mut d = self.clone();
        d.reversed = reversed.to_vec();
        Ok(d)
    }

    pub fn reverse_all(&self) -> LinkDiagram {
        let mut d = self.clone();
        for r in d.reversed.iter_mut() {
            *r = !*r;
        }
        d
    }

    /// All `2^(k-1)` orientations up to global reversal (component 0 fixed).
    pub fn orientation_classes(&self) -> Vec<Vec<bool>> {
        let k = self.num_components();
        if k == 0 {
            return vec![Vec::new()];
        }
        (0..1usize << (k - 1)).map(|mask| (0..k).map(|i| i > 0 && (mask >> (i - 1)) & 1 == 1).collect()).collect()
    }

    pub fn under_component(&self, c: usize) -> usize {
        self.edge_component[self.crossings[c].edges[0]]
    }

    pub fn over_component(&self, c: usize) -> usize {
        self.edge_component[self.crossings[c].edges[1]]
    }

    /// `+1` for a positive crossing, `-1` for a negative one, under the
    /// current orientation.
    pub fn crossing_sign(&self, c: usize) -> Result<i64> {
        let x = self.crossing(c)?;
        let flip = self.reversed[self.under_component(c)] != self.reversed[self.over_component(c)];
        Ok(if flip { -x.base_sign() } else { x.base_sign() })
    }

    pub fn writhe(&self) -> i64 {
        (0..self.num_crossings()).map(|c| self.crossing_sign(c).unwrap_or(0)).sum()
    }

    /// Positions of the incoming and outgoing ends of both strands at `c`
    /// under the current orientation: `(under_in, under_out, over_in, over_out)`.
    pub fn oriented_positions(&self, c: usize) -> (usize, usize, usize, usize) {
        let x = &self.crossings[c];
        let (ui, uo) = if self.reversed[self.under_component(c)] { (2, 0) } else { (0, 2) };
        let base_oi = x.over_in;
        let base_oo = (base_oi + 2) % 4;
        let (oi, oo) = if self.reversed[self.over_component(c)] { (base_oo, base_oi) } else { (base_oi, base_oo) };
        (ui, uo, oi, oo)
    }

    /// Swaps over and under at crossing `c`.
    pub fn change_crossing(&self, c: usize) -> Result<LinkDiagram> {
        self.change_crossings(&[c])
    }

    pub fn change_crossings(&self, set: &[usize]) -> Result<LinkDiagram> {
        let mut d = self.clone();
        for &c in set {
            let x = *self.crossing(c)?;
            let [a, b, cc, dd] = x.edges;
            d.crossings[c] = if x.over_in == 3 {
                Crossing { edges: [dd, a, b, cc], over_in: 1 }
            } else {
                Crossing { edges: [b, cc, dd, a], over_in: 3 }
            };
        }
        d.recompute_slots();
        Ok(d)
    }

    /// Mirror image: every crossing changed.
    pub fn mirror(&self) -> LinkDiagram {
        let all: Vec<usize> = (0..self.num_crossings()).collect();
        self.change_crossings(&all).expect("all crossings exist")
    }

    fn recompute_slots(&mut self) {
        for (c, x) in self.crossings.iter().enumerate() {
            for (pos, &e) in x.edges.iter().enumerate() {
                let s = Slot { crossing: c, pos };
                if x.is_incoming(pos) {
                    self.head[e] = s;
                } else {
                    self.tail[e] = s;
                }
            }
        }
    }

    /// Keeps the listed components (in increasing index order). Crossings
    /// with a deleted strand disappear; the surviving strand is merged.
    pub fn sublink(&self, keep: &[usize]) -> Result<LinkDiagram> {
        if keep.is_empty() {
            return Err(Error::EmptySelection);
        }
        let mut keep_sorted = keep.to_vec();
        keep_sorted.sort_unstable();
        keep_sorted.dedup();
        let mut kept = vec![false; self.num_components()];
        for &i in &keep_sorted {
            if i >= self.num_components() {
                return Err(Error::UnknownComponent(i));
            }
            kept[i] = true;
        }
        let remove: Vec<bool> = (0..self.num_crossings())
            .map(|c| !kept[self.under_component(c)] || !kept[self.over_component(c)])
            .collect();
        let mut d = self.remove_crossings(&remove, &kept)?;
        if keep_sorted.len() == self.num_components() {
            return Ok(d);
        }
        d.name = self.name.as_ref().map(|n| {
            let ids: Vec<String> = keep_sorted.iter().map(|i| i.to_string()).collect();
            format!("{n}[{}]", ids.join(","))
        });
        Ok(d)
    }

    /// Deletes crossings flagged in `remove`, splicing the strands that pass
    /// through them, and keeps the components flagged in `keep_component`.
    /// Strands of deleted components must not survive at kept crossings.
    pub(crate) fn remove_crossings(&self, remove: &[bool], keep_component: &[bool]) -> Result<LinkDiagram> {
        let mut parent: Vec<usize> = (0..self.num_edges()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (c, x) in self.crossings.iter().enumerate() {
            if !remove[c] {
                continue;
            }
            for p in 0..2 {
                let a = find(&mut parent, x.edges[p]);
                let b = find(&mut parent, x.edges[p + 2]);
                parent[a] = b;
            }
        }
        let raw: Vec<RawCrossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(c, _)| !remove[*c])
            .map(|(_, x)| RawCrossing { edges: x.edges.map(|e| find(&mut parent, e)), over_in: x.over_in })
            .collect();
        let mut present = vec![false; self.num_edges()];
        for x in &raw {
            for &e in &x.edges {
                present[e] = true;
            }
        }
        let mut comps = Vec::new();
        let mut rev = Vec::new();
        for (i, edges) in self.components.iter().enumerate() {
            if !keep_component[i] {
                continue;
            }
            let rep = edges.iter().map(|&e| find(&mut parent, e)).find(|&e| present[e]);
            comps.push(rep);
            rev.push(self.reversed[i]);
        }
        LinkDiagram::assemble(self.name.clone(), &raw, &comps, rev)
    }

    /// Crossings grouped into connected pieces, together with the components
    /// in each piece. Free circles form their own pieces.
    pub fn connected_parts(&self) -> Vec<Vec<usize>> {
        let k = self.num_components();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for c in 0..self.num_crossings() {
            let a = find(&mut parent, self.under_component(c));
            let b = find(&mut parent, self.over_component(c));
            parent[a] = b;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..k {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut parts: Vec<Vec<usize>> = groups.into_values().collect();
        parts.sort();
        parts
    }

    /// Connected in the plane: one piece (a lone free circle counts).
    pub fn is_connected(&self) -> bool {
        self.connected_parts().len() == 1
    }

    /// Every component alternates over and under along its traversal.
    pub fn is_alternating(&self) -> bool {
        self.components.iter().all(|edges| {
            let overs: Vec<bool> = edges.iter().map(|&e| self.head[e].pos % 2 == 1).collect();
            overs.iter().zip(overs.iter().cycle().skip(1)).all(|(a, b)| a != b)
        })
    }

    fn other_end(&self, s: Slot) -> Slot {
        let e = self.crossings[s.crossing].edges[s.pos];
        if self.head[e] == s {
            self.tail[e]
        } else {
            self.head[e]
        }
    }

    /// Faces from the rotation system: orbits of "cross the edge, then turn
    /// to the next position counterclockwise".
    pub fn faces(&self) -> Faces {
        let n = self.num_crossings();
        let mut orbit = vec![[usize::MAX; 4]; n];
        let mut count = 0;
        for c in 0..n {
            for p in 0..4 {
                if orbit[c][p] != usize::MAX {
                    continue;
                }
                let mut s = Slot { crossing: c, pos: p };
                while orbit[s.crossing][s.pos] == usize::MAX {
                    orbit[s.crossing][s.pos] = count;
                    let t = self.other_end(s);
                    s = Slot { crossing: t.crossing, pos: (t.pos + 1) % 4 };
                }
                count += 1;
            }
        }
        let corner_face = (0..n)
            .map(|c| {
                let mut f = [0; 4];
                for (j, slot) in f.iter_mut().enumerate() {
                    *slot = orbit[c][(j + 1) % 4];
                }
                f
            })
            .collect();
        let edge_faces = (0..self.num_edges())
            .map(|e| {
                let h = self.head[e];
                let t = self.tail[e];
                [orbit[h.crossing][h.pos], orbit[t.crossing][t.pos]]
            })
            .collect();
        if n == 0 {
            // a single crossingless circle bounds an inner and an outer face
            count = 2 * self.num_components().min(1);
        }
        Faces { count, corner_face, edge_faces }
    }

    pub fn check_planar(&self) -> Result<()> {
        if self.num_crossings() == 0 {
            return Ok(());
        }
        let faces = self.faces();
        // faces per connected piece must be crossings + 2
        let parts = self.connected_parts();
        let mut piece_of_comp = vec![0; self.num_components()];
        for (i, p) in parts.iter().enumerate() {
            for &c in p {
                piece_of_comp[c] = i;
            }
        }
        let mut crossings_in = vec![0usize; parts.len()];
        for c in 0..self.num_crossings() {
            crossings_in[piece_of_comp[self.under_component(c)]] += 1;
        }
        let mut face_piece: BTreeMap<usize, usize> = BTreeMap::new();
        for c in 0..self.num_crossings() {
            for &f in &faces.corner_face[c] {
                face_piece.insert(f, piece_of_comp[self.under_component(c)]);
            }
        }
        let mut faces_in = vec![0usize; parts.len()];
        for (_, p) in face_piece {
            faces_in[p] += 1;
        }
        for (i, &nc) in crossings_in.iter().enumerate() {
            if nc > 0 && faces_in[i] != nc + 2 {
                return Err(Error::NonPlanar { faces: faces_in[i], expected: nc + 2 });
            }
        }
        Ok(())
    }

    /// Serializes in the PD text format with 1-based edge labels.
    pub fn to_pd_string(&self) -> String {
        let mut s = String::new();
        if let Some(n) = &self.name {
            s.push_str(&format!("name {n}\n"));
        }
        s.push_str(&format!("components {}\n", self.num_components()));
        if self.reversed.iter().any(|&r| r) {
            let v: Vec<String> = self.orientation_vector().iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("orient {}\n", v.join(" ")));
        }
        for x in &self.crossings {
            let e = x.edges.map(|e| e + 1);
            s.push_str(&format!("X {} {} {} {}\n", e[0], e[1], e[2], e[3]));
        }
        s
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}

/// Traces strands of a PD code and fixes each component's base direction.
/// Returns crossings with `over_in` resolved and one representative label
/// per component, ordered by smallest label.
pub(crate) fn orient_pd(tuples: &[[usize; 4]]) -> Result<(Vec<RawCrossing>, Vec<usize>)> {
    let mut slots: BTreeMap<usize, Vec<Slot>> = BTreeMap::new();
    for (c, t) in tuples.iter().enumerate() {
        for (pos, &e) in t.iter().enumerate() {
            slots.entry(e).or_default().push(Slot { crossing: c, pos });
        }
    }
    for (&e, s) in &slots {
        if s.len() == 1 {
            return Err(Error::DanglingEdge(e as i64));
        }
        if s.len() != 2 {
            return Err(Error::EdgeMultiplicity(e as i64, s.len()));
        }
    }
    let mut head: HashMap<usize, Slot> = HashMap::new();
    let mut reps = Vec::new();
    for (&start, s) in &slots {
        if head.contains_key(&start) {
            continue;
        }
        // trace with an arbitrary direction, then decide
        let mut seq: Vec<(usize, Slot)> = Vec::new();
        let mut e = start;
        let first = s[0];
        let mut into = first;
        loop {
            seq.push((e, into));
            let out = Slot { crossing: into.crossing, pos: (into.pos + 2) % 4 };
            let next = tuples[out.crossing][out.pos];
            let v = &slots[&next];
            let next_into = if v[0] == out { v[1] } else { v[0] };
            if next == start && next_into == first {
                break;
            }
            if seq.len() > 4 * tuples.len() + 4 {
                return Err(Error::InconsistentOrientation(start as i64));
            }
            e = next;
            into = next_into;
        }
        let mut votes = (0usize, 0usize);
        for &(_, into) in &seq {
            match into.pos {
                0 => votes.0 += 1,
                2 => votes.1 += 1,
                _ => {}
            }
        }
        let forward = match votes {
            (_, 0) if votes.0 > 0 => true,
            (0, _) if votes.1 > 0 => false,
            (0, 0) => {
                // no under-passes: follow increasing labels from the smallest
                let labels: Vec<usize> = seq.iter().map(|p| p.0).collect();
                let m = labels.len();
                let i = labels.iter().enumerate().min_by_key(|p| p.1).map(|p| p.0).unwrap_or(0);
                labels[(i + 1) % m] <= labels[(i + m - 1) % m]
            }
            _ => return Err(Error::InconsistentOrientation(start as i64)),
        };
        for &(e, into) in &seq {
            let h = if forward { into } else { other_slot(&slots[&e], into) };
            head.insert(e, h);
        }
        reps.push(*seq.iter().map(|(e, _)| e).min().unwrap_or(&start));
    }
    let raw = tuples
        .iter()
        .enumerate()
        .map(|(c, t)| {
            let h1 = head[&t[1]];
            let over_in = if h1 == (Slot { crossing: c, pos: 1 }) { 1 } else { 3 };
            RawCrossing { edges: *t, over_in }
        })
        .collect();
    reps.sort_unstable();
    Ok((raw, reps))
}

fn other_slot(v: &[Slot], s: Slot) -> Slot {
    if v[0] == s {
        v[1]
    } else {
        v[0]
    }
}

/// Checkerboard colouring of the faces of a connected diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shading {
    pub pick: bool,
    /// `true` for unshaded (white) faces.
    pub face_white: Vec<bool>,
    /// White faces in region order `R_0, …, R_n`.
    pub white_regions: Vec<usize>,
}

impl Shading {
    /// Relabels the white regions: `order[i]` is the index (into the current
    /// list) of the region that becomes `R_i`.
    pub fn with_region_order(&self, order: &[usize]) -> Result<Shading> {
        let n = self.white_regions.len();
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(Error::Dimension(format!("region order has {} entries, expected {n}", order.len())));
        }
        for &i in order {
            if i >= n || seen[i] {
                return Err(Error::Dimension("region order is not a permutation".into()));
            }
            seen[i] = true;
        }
        let mut s = self.clone();
        s.white_regions = order.iter().map(|&i| self.white_regions[i]).collect();
        Ok(s)
    }

    /// Whether the corners `{0,2}` of a crossing are white.
    pub fn even_corners_white(&self, faces: &Faces, c: usize) -> bool {
        self.face_white[faces.corner_face[c][0]]
    }
}

/// Two-colours the faces of a connected diagram. Colour class 0 contains
/// the corner between positions 0 and 1 of crossing 0; `pick = false`
/// leaves class 0 unshaded, `pick = true` leaves class 1 unshaded.
pub fn checkerboard(d: &LinkDiagram, pick: bool) -> Result<Shading> {
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    let faces = d.faces();
    if d.num_crossings() == 0 {
        // inner disk is class 0, outer region class 1
        let face_white = vec![!pick, pick];
        let white_regions = vec![if pick { 1 } else { 0 }];
        return Ok(Shading { pick, face_white, white_regions });
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); faces.count];
    for ef in &faces.edge_faces {
        adj[ef[0]].push(ef[1]);
        adj[ef[1]].push(ef[0]);
    }
    let mut color = vec![u8::MAX; faces.count];
    let start = faces.corner_face[0][0];
    color[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        for &g in &adj[f] {
            if color[g] == u8::MAX {
                color[g] = 1 - color[f];
                queue.push_back(g);
            } else if color[g] == color[f] {
                return Err(Error::NonPlanar { faces: faces.count, expected: d.num_crossings() + 2 });
            }
        }
    }
    let white = u8::from(pick);
    let face_white: Vec<bool> = color.iter().map(|&c| c == white).collect();
    let white_regions = (0..faces.count).filter(|&f| face_white[f]).collect();
    Ok(Shading { pick, face_white, white_regions })
}
