//! Knots in the complement of an unknotted axis, given as a tangle cut open
//! along a fence, and their double covers branched over the axis.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::bounds::{
    bound_det_square, bound_linking, bound_nullity, bound_signature, BoundContext, Certificate, MethodEntry, MethodId,
};
use crate::diagram::{orient_pd, LinkDiagram};
use crate::error::{Error, Result};
use crate::invariants::{kauffman_jones, LaurentPoly};

/// A tangle with `w` endpoints on each of its left and right boundary arcs.
///
/// Endpoints are listed from the axis outwards. The closure glues right
/// endpoint `i` to left endpoint `i`. Crossings use the usual PD convention.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnularTangle {
    pub name: Option<String>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub crossings: Vec<[usize; 4]>,
    /// Closed loops without crossings or endpoints.
    pub circles: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Occ {
    Slot(usize, usize),
    Left(usize),
    Right(usize),
}

impl AnnularTangle {
    pub fn parse(text: &str) -> Result<Self> {
        let mut t =
            AnnularTangle { name: None, left: Vec::new(), right: Vec::new(), crossings: Vec::new(), circles: 0 };
        let mut seen_left = false;
        let mut seen_right = false;
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
            let labels = |rest: &[&str]| -> Result<Vec<usize>> {
                rest.iter()
                    .map(|s| s.parse::<usize>().map_err(|e| perr(format!("bad edge label `{s}`: {e}"))))
                    .collect()
            };
            match key {
                "name" => t.name = Some(rest.join(" ")),
                "left" => {
                    t.left = labels(&rest)?;
                    seen_left = true;
                }
                "right" => {
                    t.right = labels(&rest)?;
                    seen_right = true;
                }
                "circles" => {
                    let [n] = rest[..] else {
                        return Err(perr("expected `circles <n>`".into()));
                    };
                    t.circles = n.parse().map_err(|e| perr(format!("bad circle count: {e}")))?;
                }
                "X" => {
                    let v = labels(&rest)?;
                    let Ok(x) = <[usize; 4]>::try_from(v) else {
                        return Err(perr(format!("crossing needs 4 labels, got {}", rest.len())));
                    };
                    t.crossings.push(x);
                }
                other => return Err(perr(format!("unknown directive `{other}`"))),
            }
        }
        if !seen_left || !seen_right {
            return Err(Error::EndpointMismatch("missing `left` or `right` line".into()));
        }
        t.validate()?;
        Ok(t)
    }

    pub fn width(&self) -> usize {
        self.left.len()
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    fn occurrences(&self) -> BTreeMap<usize, Vec<Occ>> {
        let mut occ: BTreeMap<usize, Vec<Occ>> = BTreeMap::new();
        for (c, x) in self.crossings.iter().enumerate() {
            for (p, &e) in x.iter().enumerate() {
                occ.entry(e).or_default().push(Occ::Slot(c, p));
            }
        }
        for (i, &e) in self.left.iter().enumerate() {
            occ.entry(e).or_default().push(Occ::Left(i));
        }
        for (i, &e) in self.right.iter().enumerate() {
            occ.entry(e).or_default().push(Occ::Right(i));
        }
        occ
    }

    fn validate(&self) -> Result<()> {
        if self.left.len() != self.right.len() {
            return Err(Error::EndpointMismatch(format!(
                "{} left endpoints but {} right endpoints",
                self.left.len(),
                self.right.len()
            )));
        }
        for (e, v) in self.occurrences() {
            if v.len() != 2 {
                return Err(Error::EndpointMismatch(format!("label {e} occurs {} times", v.len())));
            }
        }
        Ok(())
    }

    fn max_label(&self) -> usize {
        self.occurrences().keys().next_back().copied().map_or(0, |m| m + 1)
    }

    /// Directions in which the closure passes the fence: `+1` when leaving
    /// through right endpoint `i` and re-entering at left endpoint `i`.
    pub fn fence_directions(&self) -> Result<Vec<i64>> {
        let closure = self.closure_with_map()?;
        let occ = self.occurrences();
        let mut dir = vec![0i64; self.width()];
        let other = |e: usize, o: Occ| {
            let v = &occ[&e];
            if v[0] == o {
                v[1]
            } else {
                v[0]
            }
        };
        // walk from `start`, leaving label `e` at occurrence `o`
        let walk = |mut e: usize, mut o: Occ, dir: &mut Vec<i64>| loop {
            match other(e, o) {
                Occ::Slot(..) => return,
                Occ::Left(i) => {
                    if dir[i] != 0 {
                        return;
                    }
                    dir[i] = -1;
                    e = self.right[i];
                    o = Occ::Right(i);
                }
                Occ::Right(i) => {
                    if dir[i] != 0 {
                        return;
                    }
                    dir[i] = 1;
                    e = self.left[i];
                    o = Occ::Left(i);
                }
            }
        };
        for (c, x) in self.crossings.iter().enumerate() {
            for (p, &e) in x.iter().enumerate() {
                let edge = closure.crossing(c)?.edges[p];
                let tail = closure.edge_tail(edge);
                if tail.crossing == c && tail.pos == p {
                    walk(e, Occ::Slot(c, p), &mut dir);
                }
            }
        }
        // loops made only of passthrough strands
        for i in 0..self.width() {
            if dir[i] == 0 {
                dir[i] = 1;
                walk(self.left[i], Occ::Left(i), &mut dir);
            }
        }
        Ok(dir)
    }

    /// Signed number of strands through the fence, equal to the linking
    /// number with the axis.
    pub fn winding(&self) -> Result<i64> {
        Ok(self.fence_directions()?.iter().sum())
    }

    fn closure_with_map(&self) -> Result<LinkDiagram> {
        let glue: Vec<(usize, usize)> = self.right.iter().copied().zip(self.left.iter().copied()).collect();
        glue_crossings(self.name.clone(), &self.crossings, &glue, self.circles, self.max_label())
    }
}

/// Identifies labels pairwise and assembles the result; label classes that
/// meet no crossing become free circles.
fn glue_crossings(
    name: Option<String>,
    crossings: &[[usize; 4]],
    glue: &[(usize, usize)],
    circles: usize,
    labels: usize,
) -> Result<LinkDiagram> {
    let mut parent: Vec<usize> = (0..labels).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in glue {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let tuples: Vec<[usize; 4]> = crossings.iter().map(|x| x.map(|e| find(&mut parent, e))).collect();
    let mut used = vec![false; labels];
    for x in &tuples {
        for &e in x {
            used[e] = true;
        }
    }
    let mut loose: Vec<usize> =
        glue.iter().flat_map(|&(a, b)| [a, b]).map(|e| find(&mut parent, e)).filter(|&r| !used[r]).collect();
    loose.sort_unstable();
    loose.dedup();
    let extra = loose.len() + circles;
    if tuples.is_empty() {
        let d = LinkDiagram::unlink(extra);
        return Ok(match name {
            Some(n) => d.with_name(n),
            None => d,
        });
    }
    let (raw, reps) = orient_pd(&tuples)?;
    let mut comps: Vec<Option<usize>> = reps.into_iter().map(Some).collect();
    comps.extend(std::iter::repeat_n(None, extra));
    let k = comps.len();
    LinkDiagram::assemble(name, &raw, &comps, vec![false; k])
}

/// The knot or link obtained by gluing right endpoint `i` to left endpoint `i`.
pub fn annular_closure(t: &AnnularTangle) -> Result<LinkDiagram> {
    t.validate()?;
    t.closure_with_map()
}

/// Preimage of the closure under the double cover branched over the axis:
/// two copies of the tangle, the right side of each glued to the left side
/// of the other.
pub fn double_cover(t: &AnnularTangle) -> Result<LinkDiagram> {
    t.validate()?;
    let m = t.max_label();
    let copy = |e: usize, c: usize| e + c * m;
    let mut crossings = Vec::with_capacity(2 * t.num_crossings());
    for c in 0..2 {
        crossings.extend(t.crossings.iter().map(|x| x.map(|e| copy(e, c))));
    }
    let mut glue = Vec::new();
    for i in 0..t.width() {
        glue.push((copy(t.right[i], 0), copy(t.left[i], 1)));
        glue.push((copy(t.right[i], 1), copy(t.left[i], 0)));
    }
    let name = t.name.as_ref().map(|n| format!("{n}~"));
    glue_crossings(name, &crossings, &glue, 2 * t.circles, 2 * m)
}

/// The link of the axis and the closure, with the index of the axis
/// component. The axis passes over every strand next to the right endpoints
/// and under every strand next to the left endpoints.
pub fn axis_link(t: &AnnularTangle) -> Result<(LinkDiagram, usize)> {
    t.validate()?;
    let w = t.width();
    if w == 0 {
        let d = glue_crossings(t.name.clone(), &t.crossings, &[], t.circles + 1, t.max_label())?;
        let axis = d.num_components() - 1;
        return Ok((d, axis));
    }
    let dir = t.fence_directions()?;
    let mut next = t.max_label();
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let mut crossings = t.crossings.clone();
    // axis labels from the inner end outwards; the ends are shared
    let a0 = fresh();
    let z = fresh();
    let mut under = vec![a0];
    let mut over = vec![a0];
    for _ in 1..w {
        under.push(fresh());
        over.push(fresh());
    }
    under.push(z);
    over.push(z);
    let mut glue = Vec::new();
    for i in 0..w {
        let mid = fresh();
        let l = fresh();
        let r = fresh();
        glue.push((l, t.left[i]));
        glue.push((r, t.right[i]));
        crossings.push([under[i], mid, under[i + 1], l]);
        if dir[i] > 0 {
            crossings.push([r, over[i + 1], mid, over[i]]);
        } else {
            crossings.push([mid, over[i], r, over[i + 1]]);
        }
    }
    let d = glue_crossings(t.name.clone(), &crossings, &glue, t.circles, next)?;
    let axis = d.edge_component(d.crossing(t.num_crossings())?.edges[0]);
    Ok((d, axis))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringReport {
    pub winding: i64,
    pub cover_crossings: usize,
    pub cover_components: usize,
    /// Best lower bound found for the unlinking number of the cover.
    pub cover_bound: usize,
    pub cover_method: Option<MethodId>,
    pub obstructed: bool,
}

/// Bounds the unlinking number of the double cover. A value above 2 rules
/// out unlinking the ambient link by one crossing change within the knot.
pub fn covering_obstruction(t: &AnnularTangle, ctx: &BoundContext) -> Result<CoveringReport> {
    let winding = t.winding()?;
    if winding != 0 {
        return Err(Error::NonzeroWinding(winding));
    }
    let cover = double_cover(t)?;
    let mut entries = vec![bound_linking(&cover, ctx)?];
    if cover.is_connected() {
        entries.push(bound_signature(&cover)?);
        entries.push(bound_nullity(&cover)?);
        entries.push(bound_det_square(&cover)?);
    }
    let best = entries.iter().map(|e| e.bound).max().unwrap_or(0);
    let method = entries.iter().find(|e| e.bound == best && best > 0).map(|e| e.method);
    Ok(CoveringReport {
        winding,
        cover_crossings: cover.num_crossings(),
        cover_components: cover.num_components(),
        cover_bound: best,
        cover_method: method,
        obstructed: best > 2,
    })
}

/// Lower bound 2 for the link of the axis and a knotted closure when the
/// cover obstructs a single crossing change, else 0.
pub fn bound_covering(t: &AnnularTangle, ctx: &BoundContext) -> Result<MethodEntry> {
    let none = MethodEntry { method: MethodId::Covering, bound: 0, certificate: Certificate::None };
    let b = annular_closure(t)?;
    if b.num_components() != 1 || b.num_crossings() == 0 {
        return Ok(none);
    }
    if kauffman_jones(&b, b.num_crossings())? == LaurentPoly::one() {
        return Ok(none);
    }
    let r = covering_obstruction(t, ctx)?;
    if !r.obstructed {
        return Ok(none);
    }
    Ok(MethodEntry {
        method: MethodId::Covering,
        bound: 2,
        certificate: Certificate::Covering { covering_bound: r.cover_bound },
    })
}

/// Crossing multiset of a diagram, keyed by sign and component pair.
pub fn crossing_profile(d: &LinkDiagram) -> Result<HashMap<(i64, usize, usize), usize>> {
    let mut m = HashMap::new();
    for c in 0..d.num_crossings() {
        let a = d.under_component(c);
        let b = d.over_component(c);
        *m.entry((d.crossing_sign(c)?, a.min(b), a.max(b))).or_insert(0) += 1;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_strand_closes_to_unknot_and_covers_once() {
        let t = AnnularTangle::parse("left 1\nright 1\n").unwrap();
        let b = annular_closure(&t).unwrap();
        assert_eq!((b.num_components(), b.num_crossings()), (1, 0));
        assert_eq!(double_cover(&t).unwrap().num_components(), 1);
        assert_eq!(t.winding().unwrap().abs(), 1);
    }

    #[test]
    fn closed_loop_without_endpoints() {
        let t = AnnularTangle::parse("left\nright\ncircles 1\n").unwrap();
        let b = annular_closure(&t).unwrap();
        assert_eq!(b.num_components(), 1);
        assert_eq!(double_cover(&t).unwrap().num_components(), 2);
        assert_eq!(t.winding().unwrap(), 0);
    }

    #[test]
    fn two_parallel_strands_opposite_directions() {
        // a cap on each side: the closure is one circle crossing the fence twice
        let t = AnnularTangle::parse("left 1 1\nright 2 2\n").unwrap();
        assert_eq!(annular_closure(&t).unwrap().num_components(), 1);
        assert_eq!(t.winding().unwrap(), 0);
        assert_eq!(double_cover(&t).unwrap().num_components(), 2);
    }

    #[test]
    fn endpoint_errors() {
        assert!(matches!(AnnularTangle::parse("left 1 2\nright 1\n"), Err(Error::EndpointMismatch(_))));
        assert!(matches!(AnnularTangle::parse("left 1\nright 2\n"), Err(Error::EndpointMismatch(_))));
        assert!(matches!(AnnularTangle::parse("X 1 2 3 4\n"), Err(Error::EndpointMismatch(_))));
        assert!(matches!(AnnularTangle::parse("left 1\nright 1\nY\n"), Err(Error::Parse { line: 3, .. })));
    }
}
