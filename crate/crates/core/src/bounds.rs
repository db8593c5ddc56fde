//! Lower bounds on the unlinking number and their combination.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{checkerboard, LinkDiagram};
use crate::embeddings::find_embedding_with_system;
use crate::error::{Error, Result};
use crate::exactla::{inertia, presents_cyclic, IntSymMatrix};
use crate::invariants::{determinant, goeritz, kauffman_jones, nullity, signatures_by_orientation, LaurentPoly};

/// Lower-bound methods in attribution priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodId {
    Linking,
    Signature,
    Nullity,
    DetSquare,
    CyclicForm,
    Lattice,
    Covering,
}

impl MethodId {
    pub fn as_str(self) -> &'static str {
        match self {
            MethodId::Linking => "linking",
            MethodId::Signature => "signature",
            MethodId::Nullity => "nullity",
            MethodId::DetSquare => "det-square",
            MethodId::CyclicForm => "cyclic-form",
            MethodId::Lattice => "lattice",
            MethodId::Covering => "covering",
        }
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MethodId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "linking" => MethodId::Linking,
            "signature" => MethodId::Signature,
            "nullity" => MethodId::Nullity,
            "det-square" => MethodId::DetSquare,
            "cyclic-form" => MethodId::CyclicForm,
            "lattice" => MethodId::Lattice,
            "covering" => MethodId::Covering,
            _ => return Err(Error::Parse { line: 0, msg: format!("unknown method `{s}`") }),
        })
    }
}

/// Unknotting numbers of knots, recognized by Jones polynomial.
#[derive(Debug, Clone, Default)]
pub struct KnotUnknottingTable {
    values: BTreeMap<String, u32>,
    jones: Vec<(String, LaurentPoly)>,
    jones_cap: usize,
}

impl KnotUnknottingTable {
    /// Parses `knot value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [name, v] = parts[..] else {
                return Err(Error::Parse { line: i + 1, msg: "expected `knot value`".into() });
            };
            let v = v.parse::<u32>().map_err(|e| Error::Parse { line: i + 1, msg: format!("bad value: {e}") })?;
            values.insert(name.to_string(), v);
        }
        Ok(Self { values, jones: Vec::new(), jones_cap: crate::invariants::DEFAULT_JONES_CAP })
    }

    pub fn set(&mut self, name: &str, value: u32) {
        self.values.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> u32 {
        self.values.get(name).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Registers a diagram of a named knot for recognition.
    pub fn add_knot_diagram(&mut self, name: &str, d: &LinkDiagram) -> Result<()> {
        let v = kauffman_jones(d, self.jones_cap.max(d.num_crossings()))?;
        self.jones.push((name.to_string(), v));
        Ok(())
    }

    /// Names of registered knots whose Jones polynomial matches `d` or its mirror.
    pub fn recognize(&self, d: &LinkDiagram) -> Vec<String> {
        let Ok(v) = kauffman_jones(d, self.jones_cap) else {
            return Vec::new();
        };
        let m = v.mirror();
        self.jones.iter().filter(|(_, j)| *j == v || *j == m).map(|(n, _)| n.clone()).collect()
    }

    /// Lower bound for a one-component diagram: the smallest table value
    /// among recognized knots, 0 if nothing matches.
    pub fn knot_bound(&self, d: &LinkDiagram) -> u32 {
        self.recognize(d).iter().map(|n| self.get(n)).min().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Linking { side: Vec<usize>, orientation: Vec<i64>, lk: i64, parts: [usize; 2] },
    Signature { orientation: Vec<i64>, sigma: i64 },
    Nullity { k: usize, eta: usize },
    DetSquare { k: usize, det: String },
    CyclicForm { det: String, signatures: Vec<i64> },
    Lattice { obstructed: Vec<LatticeCase> },
    Covering { covering_bound: usize },
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodEntry {
    pub method: MethodId,
    pub bound: usize,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Determined,
    Bracketed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Determined => "determined",
            Status::Bracketed => "bracketed",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBound {
    pub value: usize,
    pub witness: Vec<usize>,
    pub verdict: crate::search::Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub entries: Vec<MethodEntry>,
    pub best_lower: usize,
    pub method: Option<MethodId>,
    pub upper: Option<UpperBound>,
    pub status: Status,
}

impl BoundReport {
    pub fn new(name: impl Into<String>, entries: Vec<MethodEntry>) -> Self {
        let mut r = BoundReport {
            name: name.into(),
            entries,
            best_lower: 0,
            method: None,
            upper: None,
            status: Status::Bracketed,
        };
        r.refresh();
        r
    }

    pub fn add_entry(&mut self, e: MethodEntry) {
        self.entries.push(e);
        self.refresh();
    }

    pub fn set_upper(&mut self, upper: Option<UpperBound>) {
        self.upper = upper;
        self.refresh();
    }

    pub fn entry(&self, m: MethodId) -> Option<&MethodEntry> {
        self.entries.iter().find(|e| e.method == m)
    }

    /// Methods attaining the best bound, in priority order.
    pub fn attaining(&self) -> Vec<MethodId> {
        let mut v: Vec<MethodId> =
            self.entries.iter().filter(|e| e.bound == self.best_lower && e.bound > 0).map(|e| e.method).collect();
        v.sort();
        v.dedup();
        v
    }

    fn refresh(&mut self) {
        self.best_lower = self.entries.iter().map(|e| e.bound).max().unwrap_or(0);
        self.method = self.attaining().first().copied();
        self.status = match &self.upper {
            Some(u) if u.value == self.best_lower => Status::Determined,
            _ => Status::Bracketed,
        };
    }
}

fn orientation_vec(o: &[bool]) -> Vec<i64> {
    o.iter().map(|&r| if r { -1 } else { 1 }).collect()
}

/// Shared state for recursive sublink bounds.
pub struct BoundContext<'a> {
    pub knots: &'a KnotUnknottingTable,
    memo: Mutex<HashMap<String, usize>>,
}

impl<'a> BoundContext<'a> {
    pub fn new(knots: &'a KnotUnknottingTable) -> Self {
        Self { knots, memo: Mutex::new(HashMap::new()) }
    }

    /// Best lower bound for a sublink diagram from the cheap methods.
    fn sublink_bound(&self, d: &LinkDiagram) -> usize {
        let key = d.to_pd_string();
        if let Some(&v) = self.memo.lock().expect("memo lock").get(&key) {
            return v;
        }
        let v = if d.num_components() == 1 {
            if d.num_crossings() == 0 {
                0
            } else {
                self.knots.knot_bound(d) as usize
            }
        } else {
            let mut best = bound_linking(d, self).map(|e| e.bound).unwrap_or(0);
            if d.is_connected() {
                for e in [bound_signature(d), bound_nullity(d), bound_det_square(d), bound_cyclic_form(d)]
                    .into_iter()
                    .flatten()
                {
                    best = best.max(e.bound);
                }
            }
            best
        };
        self.memo.lock().expect("memo lock").insert(key, v);
        v
    }
}

/// Max over bipartitions `L₁ ⊔ L₂` and orientations of
/// `u(L₁) + u(L₂) + |lk(L₁, L₂)|`, with sublink values bounded recursively.
pub fn bound_linking(d: &LinkDiagram, ctx: &BoundContext) -> Result<MethodEntry> {
    let k = d.num_components();
    let mut best = MethodEntry { method: MethodId::Linking, bound: 0, certificate: Certificate::None };
    if k < 2 {
        return Ok(best);
    }
    let lk = crate::invariants::linking_matrix(d);
    // masks containing component 0, excluding the full set
    for mask in 1usize..(1 << k) - 1 {
        if mask & 1 == 0 {
            continue;
        }
        let s1: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        let s2: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 0).collect();
        let b1 = ctx.sublink_bound(&d.sublink(&s1)?);
        let b2 = ctx.sublink_bound(&d.sublink(&s2)?);
        for o in d.orientation_classes() {
            let sgn = |i: usize| if o[i] { -1 } else { 1 };
            let mut total = 0i64;
            for &i in &s1 {
                for &j in &s2 {
                    total += sgn(i) * sgn(j) * lk[i][j];
                }
            }
            let v = b1 + b2 + total.unsigned_abs() as usize;
            if v > best.bound {
                best = MethodEntry {
                    method: MethodId::Linking,
                    bound: v,
                    certificate: Certificate::Linking {
                        side: s1.clone(),
                        orientation: orientation_vec(&o),
                        lk: total,
                        parts: [b1, b2],
                    },
                };
            }
        }
    }
    Ok(best)
}

/// Max over orientation classes of ⌈|σ|/2⌉.
pub fn bound_signature(d: &LinkDiagram) -> Result<MethodEntry> {
    let mut best = MethodEntry { method: MethodId::Signature, bound: 0, certificate: Certificate::None };
    for (o, s) in signatures_by_orientation(d)? {
        let v = s.unsigned_abs().div_ceil(2) as usize;
        if v > best.bound || matches!(best.certificate, Certificate::None) {
            best = MethodEntry {
                method: MethodId::Signature,
                bound: v,
                certificate: Certificate::Signature { orientation: orientation_vec(&o), sigma: s },
            };
        }
    }
    Ok(best)
}

/// `k − 1 − η`, floored at 0.
pub fn bound_nullity(d: &LinkDiagram) -> Result<MethodEntry> {
    let k = d.num_components();
    let eta = nullity(d)?;
    Ok(MethodEntry {
        method: MethodId::Nullity,
        bound: (k - 1).saturating_sub(eta),
        certificate: Certificate::Nullity { k, eta },
    })
}

pub fn is_square(n: &BigInt) -> bool {
    if n < &BigInt::zero() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

/// Whether `det = 2^{k−1} c²` for some integer `c`.
pub fn det_square_form(det: &BigInt, k: usize) -> bool {
    let p = BigInt::from(1) << (k - 1);
    if (det % &p) != BigInt::zero() {
        return false;
    }
    is_square(&(det / p))
}

/// `k` when `det L` is not of the form `2^{k−1}c²`, else 0.
pub fn bound_det_square(d: &LinkDiagram) -> Result<MethodEntry> {
    let k = d.num_components();
    let det = determinant(d)?;
    let bound = if det_square_form(&det, k) { 0 } else { k };
    Ok(MethodEntry {
        method: MethodId::DetSquare,
        bound,
        certificate: Certificate::DetSquare { k, det: det.to_string() },
    })
}

/// The three escape clauses for a two-component link whose Goeritz matrix
/// presents a cyclic group. `signatures` holds σ for every orientation class.
pub fn cyclic_form_escapes(det: &BigInt, signatures: &[i64]) -> bool {
    let four = BigInt::from(4);
    let sixteen = BigInt::from(16);
    let first = (det % &four).is_zero() && signatures.iter().any(|s| s.abs() == 1);
    let second = (det % &sixteen).is_zero();
    let third = (det % BigInt::from(2)).is_zero() && is_square(&(det / BigInt::from(2)));
    first || second || third
}

/// 3 for a two-component link with cyclic Goeritz group escaping all three
/// clauses, else 0.
pub fn bound_cyclic_form(d: &LinkDiagram) -> Result<MethodEntry> {
    let none = MethodEntry { method: MethodId::CyclicForm, bound: 0, certificate: Certificate::None };
    if d.num_components() != 2 {
        return Ok(none);
    }
    let gd = goeritz(d, &checkerboard(d, false)?)?;
    if !presents_cyclic(gd.g.matrix())? {
        return Ok(none);
    }
    let det = determinant(d)?;
    if det.is_zero() {
        return Ok(none);
    }
    let sigs: Vec<i64> = signatures_by_orientation(d)?.into_iter().map(|(_, s)| s).collect();
    let bound = if cyclic_form_escapes(&det, &sigs) { 0 } else { 3 };
    Ok(MethodEntry {
        method: MethodId::CyclicForm,
        bound,
        certificate: Certificate::CyclicForm { det: det.to_string(), signatures: sigs },
    })
}

/// Lower bounds on the number of positive and negative crossings changed in
/// any unlinking sequence for the current orientation: `(p_min, n_min)`.
pub fn min_positive_crossings(d: &LinkDiagram) -> Result<(usize, usize)> {
    let sigma = crate::invariants::signature(d)?;
    let eta = nullity(d)? as i64;
    let k = d.num_components() as i64;
    let p = ceil_half(-sigma - eta + k - 1).max(0) as usize;
    let n = ceil_half(sigma - eta + k - 1).max(0) as usize;
    Ok((p, n))
}

fn ceil_half(x: i64) -> i64 {
    x.div_euclid(2) + x.rem_euclid(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Obstruction {
    /// Too few positive crossings for the signed nullity lemma.
    PositiveLemma,
    /// The same lemma on the mirror image bounds the negative crossings.
    NegativeLemma,
    /// No embedding admits the required norm-2 system.
    Lattice,
    /// The lattice test on the mirror image.
    MirrorLattice,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeCase {
    pub orientation: Vec<i64>,
    pub p: usize,
    pub n: usize,
    pub reason: Obstruction,
}

/// Goeritz matrices that are positive definite for the given chirality,
/// collected from all supplied diagrams and both shadings.
fn definite_goeritz(diagrams: &[LinkDiagram], mirror: bool) -> Vec<IntSymMatrix> {
    let mut out: Vec<IntSymMatrix> = Vec::new();
    for d in diagrams {
        if !d.is_connected() {
            continue;
        }
        let d = if mirror { d.mirror() } else { d.clone() };
        for pick in [false, true] {
            let Ok(s) = checkerboard(&d, pick) else { continue };
            let Ok(gd) = goeritz(&d, &s) else { continue };
            if gd.g.dim() > 0 && inertia(&gd.g).is_positive_definite() && !out.contains(&gd.g) {
                out.push(gd.g);
            }
        }
    }
    out
}

/// True when some definite Goeritz matrix admits no embedding with a
/// primitive `q`-system of norm-2 vectors in its complement.
fn lattice_obstructs(gs: &[IntSymMatrix], k: usize, q: usize) -> Result<bool> {
    for g in gs {
        let m = g.dim();
        let l = m + 2 * q + 1 - k;
        if find_embedding_with_system(g, l, q)?.is_none() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub applicable: bool,
    pub bound: usize,
    pub obstructed: Vec<LatticeCase>,
}

struct SplitTester {
    pos: Vec<IntSymMatrix>,
    neg: Vec<IntSymMatrix>,
    k: usize,
    eta: i64,
    cache: HashMap<(bool, usize), bool>,
}

impl SplitTester {
    fn lattice(&mut self, mirror: bool, q: usize) -> Result<bool> {
        if let Some(&v) = self.cache.get(&(mirror, q)) {
            return Ok(v);
        }
        let gs = if mirror { &self.neg } else { &self.pos };
        let v = !gs.is_empty() && lattice_obstructs(gs, self.k, q)?;
        self.cache.insert((mirror, q), v);
        Ok(v)
    }

    /// Why the split `(p, n)` cannot occur for a class of signature `sigma`.
    fn classify(&mut self, sigma: i64, p: usize, n: usize) -> Result<Option<Obstruction>> {
        let k = self.k as i64;
        let (p, n) = (p as i64, n as i64);
        if p < ceil_half(-sigma - self.eta + k - 1) {
            return Ok(Some(Obstruction::PositiveLemma));
        }
        if n < ceil_half(sigma - self.eta + k - 1) {
            return Ok(Some(Obstruction::NegativeLemma));
        }
        let u = (p + n) as usize;
        if p == ceil_half(-sigma + k - 1) && self.lattice(false, u)? {
            return Ok(Some(Obstruction::Lattice));
        }
        if n == ceil_half(sigma + k - 1) && self.lattice(true, u)? {
            return Ok(Some(Obstruction::MirrorLattice));
        }
        Ok(None)
    }

    /// All obstructed splits of `u` for one class, and whether every split is.
    fn cases(&mut self, o: &[bool], sigma: i64, u: usize) -> Result<(Vec<LatticeCase>, bool)> {
        let mut cases = Vec::new();
        let mut all = true;
        for p in 0..=u {
            match self.classify(sigma, p, u - p)? {
                Some(reason) => cases.push(LatticeCase { orientation: orientation_vec(o), p, n: u - p, reason }),
                None => all = false,
            }
        }
        Ok((cases, all))
    }
}

/// Raises `start` while some orientation class obstructs every split
/// `p + n = u`. `others` are further diagrams of the same link in the same
/// chirality; any of them with a definite Goeritz matrix can supply the
/// lattice test. `max_u` caps the loop.
pub fn bound_lattice(d: &LinkDiagram, others: &[LinkDiagram], start: usize, max_u: usize) -> Result<LatticeReport> {
    let mut all = vec![d.clone()];
    all.extend(others.iter().cloned());
    let mut t = SplitTester {
        pos: definite_goeritz(&all, false),
        neg: definite_goeritz(&all, true),
        k: d.num_components(),
        eta: nullity(d)? as i64,
        cache: HashMap::new(),
    };
    if t.pos.is_empty() && t.neg.is_empty() {
        return Ok(LatticeReport { applicable: false, bound: 0, obstructed: Vec::new() });
    }
    let classes = signatures_by_orientation(d)?;
    let mut u = start;
    let mut log: Vec<LatticeCase> = Vec::new();
    let mut raised = false;
    'outer: while u < max_u {
        for (o, sigma) in &classes {
            let (cases, all) = t.cases(o, *sigma, u)?;
            if all {
                log.extend(cases);
                u += 1;
                raised = true;
                continue 'outer;
            }
        }
        break;
    }
    for (o, sigma) in &classes {
        for case in t.cases(o, *sigma, u)?.0 {
            if !log.contains(&case) {
                log.push(case);
            }
        }
    }
    Ok(LatticeReport { applicable: true, bound: if raised { u } else { 0 }, obstructed: log })
}

/// Runs every applicable method on `d`.
pub fn combine(d: &LinkDiagram, others: &[LinkDiagram], ctx: &BoundContext) -> Result<BoundReport> {
    let name = d.name().unwrap_or("link").to_string();
    let mut entries = vec![bound_linking(d, ctx)?];
    if d.is_connected() {
        entries.push(bound_signature(d)?);
        entries.push(bound_nullity(d)?);
        entries.push(bound_det_square(d)?);
        entries.push(bound_cyclic_form(d)?);
        let start = entries.iter().map(|e| e.bound).max().unwrap_or(0);
        let cap = d.num_crossings().max(start);
        let lat = bound_lattice(d, others, start, cap)?;
        if lat.applicable {
            entries.push(MethodEntry {
                method: MethodId::Lattice,
                bound: lat.bound,
                certificate: Certificate::Lattice { obstructed: lat.obstructed },
            });
        }
    } else if d.num_components() == 1 {
        let v = ctx.knots.knot_bound(d) as usize;
        entries.push(MethodEntry { method: MethodId::Linking, bound: v, certificate: Certificate::None });
    }
    Ok(BoundReport::new(name, entries))
}

/// Determinant as `i64` where it fits.
pub fn det_i64(d: &LinkDiagram) -> Result<i64> {
    determinant(d)?.to_i64().ok_or(Error::Overflow("determinant"))
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOPF: &str = "X 2 1 3 0\nX 0 3 1 2\n";

    #[test]
    fn det_square_oracle() {
        assert!(det_square_form(&BigInt::from(2), 2));
        assert!(!det_square_form(&BigInt::from(48), 2));
        assert!(!det_square_form(&BigInt::from(8), 3));
        assert!(det_square_form(&BigInt::from(16), 3));
        assert!(det_square_form(&BigInt::from(0), 4));
    }

    #[test]
    fn cyclic_escapes() {
        assert!(!cyclic_form_escapes(&BigInt::from(78), &[-3, -1]));
        assert!(cyclic_form_escapes(&BigInt::from(2), &[1]));
        assert!(cyclic_form_escapes(&BigInt::from(32), &[3]));
        assert!(cyclic_form_escapes(&BigInt::from(12), &[1, 3]));
        assert!(!cyclic_form_escapes(&BigInt::from(12), &[3]));
    }

    #[test]
    fn hopf_bounds() {
        let d = LinkDiagram::parse_pd(HOPF).unwrap();
        let table = KnotUnknottingTable::default();
        let ctx = BoundContext::new(&table);
        assert_eq!(bound_linking(&d, &ctx).unwrap().bound, 1);
        assert_eq!(bound_signature(&d).unwrap().bound, 1);
        assert_eq!(bound_det_square(&d).unwrap().bound, 0);
        assert_eq!(bound_cyclic_form(&d).unwrap().bound, 0);
        let r = combine(&d, &[], &ctx).unwrap();
        assert_eq!(r.best_lower, 1);
        assert_eq!(r.method, Some(MethodId::Linking));
    }

    #[test]
    fn unlink_bounds_vanish() {
        let d = LinkDiagram::unlink(2);
        let table = KnotUnknottingTable::default();
        let ctx = BoundContext::new(&table);
        assert_eq!(bound_linking(&d, &ctx).unwrap().bound, 0);
    }

    #[test]
    fn knot_table_parsing() {
        let t = KnotUnknottingTable::parse("# comment\n3_1 1\n5_1 2\n").unwrap();
        assert_eq!(t.get("5_1"), 2);
        assert_eq!(t.get("9_1"), 0);
        assert!(KnotUnknottingTable::parse("3_1\n").is_err());
    }

    #[test]
    fn trefoil_recognized_in_both_chiralities() {
        let mut t = KnotUnknottingTable::parse("3_1 1\n").unwrap();
        let tref = LinkDiagram::parse_pd("X 1 5 2 4\nX 3 1 4 6\nX 5 3 6 2\n").unwrap();
        t.add_knot_diagram("3_1", &tref).unwrap();
        assert_eq!(t.knot_bound(&tref.mirror()), 1);
        assert_eq!(t.knot_bound(&LinkDiagram::parse_pd("X 1 1 2 2\n").unwrap()), 0);
    }

    #[test]
    fn ceil_half_rounds_up() {
        assert_eq!(ceil_half(3), 2);
        assert_eq!(ceil_half(-3), -1);
        assert_eq!(ceil_half(4), 2);
    }

    #[test]
    fn method_names_round_trip() {
        for m in [
            MethodId::Linking,
            MethodId::Signature,
            MethodId::Nullity,
            MethodId::DetSquare,
            MethodId::CyclicForm,
            MethodId::Lattice,
            MethodId::Covering,
        ] {
            assert_eq!(m.as_str().parse::<MethodId>().unwrap(), m);
        }
    }
}
