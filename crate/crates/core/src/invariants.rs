//! Classical invariants of a connected, oriented diagram.
//!
//! Incidence numbers: with the under-strand on positions 0 and 2, a
//! crossing whose corners `{0,2}` are unshaded has ι = [`IOTA_EVEN_WHITE`],
//! and the opposite value when corners `{1,3}` are unshaded. A crossing is
//! of type I when ι·ε = −1 and of type II when ι·ε = +1, so a positive
//! crossing of type I has ι = −1.
//!
//! Jones normalization: `V(unknot) = 1`, `V = (−A³)^{−w} ⟨D⟩` with
//! `⟨O⟩ = 1`, `δ = −A² − A⁻²` and `t = A⁻⁴`. The `k`-component unlink maps to
//! `(−t^{1/2} − t^{−1/2})^{k−1}` and the positive Hopf link to
//! `−t^{1/2} − t^{5/2}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::diagram::{checkerboard, LinkDiagram, Shading};
use crate::error::{Error, Result};
use crate::exactla::{det_exact, inertia, snf, IntMatrix, IntSymMatrix, SnfResult};

/// Incidence number of a crossing whose even corners are unshaded.
pub const IOTA_EVEN_WHITE: i64 = 1;

/// Default crossing cap for the state sum.
pub const DEFAULT_JONES_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GlType {
    I,
    II,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingLocalData {
    pub epsilon: i64,
    pub iota: i64,
    pub gl_type: GlType,
}

/// Local data from the raw ingredients; `even_white` says whether corners
/// `{0,2}` are unshaded.
pub fn local_data(epsilon: i64, even_white: bool) -> CrossingLocalData {
    let iota = if even_white { IOTA_EVEN_WHITE } else { -IOTA_EVEN_WHITE };
    let gl_type = if iota * epsilon == -1 { GlType::I } else { GlType::II };
    CrossingLocalData { epsilon, iota, gl_type }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoeritzData {
    pub g_prime: IntMatrix,
    pub g: IntSymMatrix,
    pub shading: Shading,
    pub mu: i64,
    pub local: Vec<CrossingLocalData>,
}

pub fn crossing_local_data(d: &LinkDiagram, s: &Shading) -> Vec<CrossingLocalData> {
    let faces = d.faces();
    (0..d.num_crossings())
        .map(|c| local_data(d.crossing_sign(c).expect("crossing exists"), s.even_corners_white(&faces, c)))
        .collect()
}

pub fn goeritz(d: &LinkDiagram, s: &Shading) -> Result<GoeritzData> {
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    let faces = d.faces();
    let n1 = s.white_regions.len();
    let mut index = vec![usize::MAX; faces.count];
    for (i, &f) in s.white_regions.iter().enumerate() {
        index[f] = i;
    }
    let local = crossing_local_data(d, s);
    let mut gp = IntMatrix::zeros(n1, n1);
    for (c, data) in local.iter().enumerate() {
        let corners = &faces.corner_face[c];
        let (f1, f2) =
            if s.even_corners_white(&faces, c) { (corners[0], corners[2]) } else { (corners[1], corners[3]) };
        let (i, j) = (index[f1], index[f2]);
        if i == j {
            continue;
        }
        gp.set(i, j, gp.get(i, j) - data.iota);
        gp.set(j, i, gp.get(j, i) - data.iota);
    }
    for i in 0..n1 {
        let off: i64 = (0..n1).filter(|&j| j != i).map(|j| gp.get(i, j)).sum();
        gp.set(i, i, -off);
    }
    let g = IntSymMatrix::new(gp.delete_row_col(0))?;
    let mu = local.iter().filter(|x| x.gl_type == GlType::II).map(|x| x.iota).sum();
    Ok(GoeritzData { g_prime: gp, g, shading: s.clone(), mu, local })
}

/// Goeritz data for the default shading (`pick = false`, BFS region order).
pub fn default_goeritz(d: &LinkDiagram) -> Result<GoeritzData> {
    goeritz(d, &checkerboard(d, false)?)
}

/// σ = sign G − μ under the diagram's current orientation.
pub fn signature(d: &LinkDiagram) -> Result<i64> {
    let gd = default_goeritz(d)?;
    Ok(inertia(&gd.g).signature() - gd.mu)
}

/// σ with an explicit shading (used to check shading independence).
pub fn signature_with(d: &LinkDiagram, s: &Shading) -> Result<i64> {
    let gd = goeritz(d, s)?;
    Ok(inertia(&gd.g).signature() - gd.mu)
}

/// Signatures of every orientation class, keyed by reversal flags.
pub fn signatures_by_orientation(d: &LinkDiagram) -> Result<Vec<(Vec<bool>, i64)>> {
    d.orientation_classes()
        .into_iter()
        .map(|o| {
            let od = d.with_orientation(&o)?;
            Ok((o, signature(&od)?))
        })
        .collect()
}

/// |det G|; the unknot's empty Goeritz matrix has determinant 1.
pub fn determinant(d: &LinkDiagram) -> Result<BigInt> {
    let gd = default_goeritz(d)?;
    Ok(det_exact(gd.g.matrix())?.abs())
}

pub fn nullity(d: &LinkDiagram) -> Result<usize> {
    let gd = default_goeritz(d)?;
    Ok(inertia(&gd.g).nullity())
}

/// Linking number between the components flagged `true` and the rest.
pub fn linking_number(d: &LinkDiagram, side: &[bool]) -> Result<i64> {
    if side.len() != d.num_components() {
        return Err(Error::OrientationLength { got: side.len(), expected: d.num_components() });
    }
    if side.iter().all(|&x| x) || side.iter().all(|&x| !x) {
        return Err(Error::TrivialBipartition);
    }
    let mut twice = 0;
    for c in 0..d.num_crossings() {
        if side[d.under_component(c)] != side[d.over_component(c)] {
            twice += d.crossing_sign(c)?;
        }
    }
    Ok(twice / 2)
}

/// Pairwise linking numbers; the diagonal is zero.
pub fn linking_matrix(d: &LinkDiagram) -> Vec<Vec<i64>> {
    let k = d.num_components();
    let mut m = vec![vec![0i64; k]; k];
    for c in 0..d.num_crossings() {
        let (a, b) = (d.under_component(c), d.over_component(c));
        if a != b {
            let s = d.crossing_sign(c).expect("crossing exists");
            m[a][b] += s;
            m[b][a] += s;
        }
    }
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            *x /= 2;
        }
    }
    m
}

/// Laurent polynomial in `t^{1/2}`: keys are exponents of `t^{1/2}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coef · t^{half_exp/2}`.
    pub fn monomial(coef: i64, half_exp: i64) -> Self {
        let mut p = Self::default();
        p.add_term(coef, half_exp);
        p
    }

    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut p = Self::default();
        for &(c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    fn add_term(&mut self, coef: i64, half_exp: i64) {
        let v = self.terms.entry(half_exp).or_insert(0);
        *v += coef;
        if *v == 0 {
            self.terms.remove(&half_exp);
        }
    }

    /// `(coefficient, exponent of t^{1/2})` in increasing exponent order.
    pub fn terms(&self) -> Vec<(i64, i64)> {
        self.terms.iter().map(|(&e, &c)| (c, e)).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::default();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                p.add_term(c1 * c2, e1 + e2);
            }
        }
        p
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `t ↦ t⁻¹`, the Jones polynomial of the mirror image.
    pub fn mirror(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    /// Jones polynomial of the `k`-component unlink.
    pub fn unlink(k: usize) -> Self {
        Self::from_terms(&[(-1, 1), (-1, -1)]).pow(k.saturating_sub(1))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&e, &c) in &self.terms {
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            if !first {
                f.write_str(" ")?;
            }
            let a = c.abs();
            let var = match (e % 2 == 0, e / 2) {
                (true, 0) => String::new(),
                (true, 1) => "t".to_string(),
                (true, x) => format!("t^{x}"),
                (false, _) => format!("t^({e}/2)"),
            };
            if first {
                f.write_str(sign)?;
            } else {
                write!(f, "{sign} ")?;
            }
            if var.is_empty() {
                write!(f, "{a}")?;
            } else if a == 1 {
                f.write_str(&var)?;
            } else {
                write!(f, "{a}{var}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Jones polynomial by the Kauffman bracket state sum.
pub fn kauffman_jones(d: &LinkDiagram, cap: usize) -> Result<LaurentPoly> {
    let n = d.num_crossings();
    if n > cap {
        return Err(Error::CrossingCap { crossings: n, cap });
    }
    let free = d.free_circles();
    let ne = d.num_edges();
    // bracket coefficients keyed by exponent of A, grouped by loop count
    let mut by_loops: BTreeMap<(usize, i64), i64> = BTreeMap::new();
    let mut parent = vec![0usize; ne];
    for state in 0u64..(1u64 << n) {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut loops = ne;
        let mut a_minus_b = 0i64;
        for (c, x) in d.crossings().iter().enumerate() {
            let [a, b, cc, dd] = x.edges;
            let pairs = if state >> c & 1 == 0 {
                a_minus_b += 1;
                [(a, b), (cc, dd)]
            } else {
                a_minus_b -= 1;
                [(a, dd), (b, cc)]
            };
            for (u, v) in pairs {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru] = rv;
                    loops -= 1;
                }
            }
        }
        *by_loops.entry((loops + free, a_minus_b)).or_insert(0) += 1;
    }
    // δ = −A² − A⁻² in A-exponent form
    let delta = LaurentPoly::from_terms(&[(-1, 2), (-1, -2)]);
    let mut bracket = LaurentPoly::zero();
    for (&(loops, e), &c) in &by_loops {
        let term = LaurentPoly::monomial(c, e).mul(&delta.pow(loops.saturating_sub(1)));
        bracket = add(&bracket, &term);
    }
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let f = bracket.mul(&LaurentPoly::monomial(sign, -3 * w));
    // A^e = t^{-e/4} = (t^{1/2})^{-e/2}
    let mut out = LaurentPoly::zero();
    for (&e, &c) in &f.terms {
        debug_assert!(e % 2 == 0);
        out.add_term(c, -e / 2);
    }
    Ok(out)
}

fn add(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    let mut r = p.clone();
    for (&e, &c) in &q.terms {
        r.add_term(c, e);
    }
    r
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// Everything `invariants` reports for a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkInvariants {
    pub k: usize,
    pub sigma: i64,
    pub eta: usize,
    pub det: i64,
    pub lk_matrix: Vec<Vec<i64>>,
    pub goeritz: IntMatrix,
    pub snf: Vec<i64>,
    pub signatures: Vec<(Vec<i64>, i64)>,
}

pub fn link_invariants(d: &LinkDiagram, s: &Shading) -> Result<LinkInvariants> {
    let gd = goeritz(d, s)?;
    let inr = inertia(&gd.g);
    let det = det_exact(gd.g.matrix())?.abs().to_i64().ok_or(Error::Overflow("determinant"))?;
    let sn: SnfResult = snf(gd.g.matrix());
    let signatures = signatures_by_orientation(d)?
        .into_iter()
        .map(|(o, s)| (o.iter().map(|&r| if r { -1 } else { 1 }).collect(), s))
        .collect();
    Ok(LinkInvariants {
        k: d.num_components(),
        sigma: inr.signature() - gd.mu,
        eta: inr.nullity(),
        det,
        lk_matrix: linking_matrix(d),
        goeritz: gd.g.matrix().clone(),
        snf: sn.factors_i64().ok_or(Error::Overflow("invariant factors"))?,
        signatures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOPF: &str = "X 2 1 3 0\nX 0 3 1 2\n";

    fn trefoil() -> LinkDiagram {
        LinkDiagram::parse_pd("X 1 5 2 4\nX 3 1 4 6\nX 5 3 6 2\n").unwrap()
    }

    fn all_shadings(d: &LinkDiagram) -> Vec<Shading> {
        vec![checkerboard(d, false).unwrap(), checkerboard(d, true).unwrap()]
    }

    #[test]
    fn positive_hopf_has_signature_minus_one() {
        let d = LinkDiagram::parse_pd(HOPF).unwrap();
        let pos = d.with_orientation(&[false, true]).unwrap();
        assert_eq!(pos.writhe(), 2);
        for s in all_shadings(&pos) {
            assert_eq!(signature_with(&pos, &s).unwrap(), -1);
        }
        for s in all_shadings(&d) {
            assert_eq!(signature_with(&d, &s).unwrap(), 1);
        }
    }

    #[test]
    fn trefoil_signature_sign_matches_handedness() {
        let d = trefoil();
        let w = d.writhe();
        assert_eq!(w.abs(), 3);
        for s in all_shadings(&d) {
            assert_eq!(signature_with(&d, &s).unwrap(), -2 * w.signum());
        }
        let m = d.mirror();
        for s in all_shadings(&m) {
            assert_eq!(signature_with(&m, &s).unwrap(), 2 * w.signum());
        }
    }

    /// Crossing 0 of the Hopf diagram in all eight combinations of
    /// over/under, orientation and shading: (mirror, reversed, pick) →
    /// (ε, ι, type).
    #[test]
    fn local_data_conformance() {
        use GlType::{I, II};
        let golden = [
            ((false, false, false), (-1, 1, I)),
            ((false, false, true), (-1, -1, II)),
            ((false, true, false), (1, 1, II)),
            ((false, true, true), (1, -1, I)),
            ((true, false, false), (1, 1, II)),
            ((true, false, true), (1, -1, I)),
            ((true, true, false), (-1, 1, I)),
            ((true, true, true), (-1, -1, II)),
        ];
        let d = LinkDiagram::parse_pd(HOPF).unwrap();
        for ((mirror, rev, pick), want) in golden {
            let m = if mirror { d.mirror() } else { d.clone() };
            let od = m.with_orientation(&[false, rev]).unwrap();
            let x = crossing_local_data(&od, &checkerboard(&od, pick).unwrap())[0];
            assert_eq!((x.epsilon, x.iota, x.gl_type), want, "{mirror} {rev} {pick}");
        }
    }

    #[test]
    fn positive_type_one_has_negative_incidence() {
        for eps in [1, -1] {
            for even in [true, false] {
                let x = local_data(eps, even);
                if x.gl_type == GlType::I && eps == 1 {
                    assert_eq!(x.iota, -1);
                }
            }
        }
    }

    #[test]
    fn goeritz_rows_sum_to_zero() {
        let d = trefoil();
        for s in all_shadings(&d) {
            let gd = goeritz(&d, &s).unwrap();
            let n = gd.g_prime.rows();
            for i in 0..n {
                assert_eq!((0..n).map(|j| gd.g_prime.get(i, j)).sum::<i64>(), 0);
            }
        }
    }

    #[test]
    fn kink_goeritz_is_unit_or_empty() {
        let d = LinkDiagram::parse_pd("X 1 1 2 2\n").unwrap();
        let mut dims: Vec<(usize, Vec<Vec<i64>>)> = all_shadings(&d)
            .iter()
            .map(|s| {
                let g = goeritz(&d, s).unwrap().g;
                (g.dim(), g.matrix().to_rows())
            })
            .collect();
        dims.sort();
        assert_eq!(dims[0].0, 0);
        assert_eq!(dims[1].0, 1);
        assert_eq!(dims[1].1[0][0].abs(), 1);
        assert_eq!(signature(&d).unwrap(), 0);
        assert_eq!(determinant(&d).unwrap(), BigInt::from(1));
    }

    #[test]
    fn determinants_of_small_links() {
        assert_eq!(determinant(&LinkDiagram::parse_pd(HOPF).unwrap()).unwrap(), BigInt::from(2));
        assert_eq!(determinant(&trefoil()).unwrap(), BigInt::from(3));
        assert_eq!(nullity(&trefoil()).unwrap(), 0);
    }

    #[test]
    fn hopf_linking_number() {
        let d = LinkDiagram::parse_pd(HOPF).unwrap();
        assert_eq!(linking_number(&d, &[true, false]).unwrap(), -1);
        assert_eq!(linking_matrix(&d), vec![vec![0, -1], vec![-1, 0]]);
        assert_eq!(linking_number(&d, &[true, true]), Err(Error::TrivialBipartition));
        let changed = d.change_crossing(0).unwrap();
        assert_eq!(linking_number(&changed, &[true, false]).unwrap(), 0);
    }

    #[test]
    fn jones_anchors() {
        assert_eq!(kauffman_jones(&LinkDiagram::unlink(1), 16).unwrap(), LaurentPoly::one());
        assert_eq!(kauffman_jones(&LinkDiagram::unlink(2), 16).unwrap(), LaurentPoly::from_terms(&[(-1, 1), (-1, -1)]));
        let kink = LinkDiagram::parse_pd("X 1 1 2 2\n").unwrap();
        assert_eq!(kauffman_jones(&kink, 16).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn jones_of_hopf_and_trefoil() {
        let d = LinkDiagram::parse_pd(HOPF).unwrap().with_orientation(&[false, true]).unwrap();
        assert_eq!(kauffman_jones(&d, 16).unwrap(), LaurentPoly::from_terms(&[(-1, 1), (-1, 5)]));
        let t = trefoil();
        let right = LaurentPoly::from_terms(&[(1, 2), (1, 6), (-1, 8)]);
        let v = kauffman_jones(&t, 16).unwrap();
        if t.writhe() > 0 {
            assert_eq!(v, right);
        } else {
            assert_eq!(v, right.mirror());
        }
    }

    #[test]
    fn jones_cap_is_enforced() {
        let d = trefoil();
        assert_eq!(kauffman_jones(&d, 2), Err(Error::CrossingCap { crossings: 3, cap: 2 }));
    }

    #[test]
    fn laurent_display() {
        let p = LaurentPoly::from_terms(&[(1, 2), (1, 6), (-1, 8)]);
        assert_eq!(p.to_string(), "t + t^3 - t^4");
        assert_eq!(LaurentPoly::unlink(2).to_string(), "-t^(-1/2) - t^(1/2)");
    }
}
