#![allow(dead_code, clippy::needless_range_loop)]

// Randomized and dataset-wide property checks. Shared by the core property
// tests and the acceptance runner, so every check returns an error string
// instead of panicking.

use std::collections::{BTreeSet, HashMap};
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unlinking::diagram::{checkerboard, LinkDiagram};
use unlinking::embeddings::{automorphisms, canonicalize, orthogonal_embeddings};
use unlinking::exactla::{det_exact, inertia, snf, IntMatrix, IntSymMatrix};
use unlinking::invariants::{signature, signature_with};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Seed from `UNLINK_SEED`, or the fixed default.
pub fn seed() -> u64 {
    std::env::var("UNLINK_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ salt)
}

pub fn dataset_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../dataset")
}

fn collect_pd(dir: &Path, out: &mut Vec<PathBuf>) {
    let Ok(rd) = std::fs::read_dir(dir) else { return };
    for e in rd.flatten() {
        let p = e.path();
        if p.is_dir() {
            collect_pd(&p, out);
        } else if p.extension().and_then(|s| s.to_str()) == Some("pd") {
            out.push(p);
        }
    }
}

/// Every bundled diagram, knots included, in path order.
pub fn bundled_diagrams() -> Vec<(String, LinkDiagram)> {
    let mut paths = Vec::new();
    collect_pd(&dataset_dir(), &mut paths);
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).expect("readable");
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let d = LinkDiagram::parse_pd(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            (name, d)
        })
        .collect()
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize, range: i64) -> IntSymMatrix {
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-range..=range);
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    IntSymMatrix::from_rows(&rows).unwrap()
}

/// `XᵀDX` for a random `r × n` matrix `X`: singular whenever `r < n`.
fn random_low_rank(rng: &mut ChaCha8Rng, n: usize) -> IntSymMatrix {
    let r = rng.gen_range(0..n);
    let x: Vec<Vec<i64>> = (0..r).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
    let d: Vec<i64> = (0..r).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            rows[i][j] = (0..r).map(|k| x[k][i] * d[k] * x[k][j]).sum();
        }
    }
    IntSymMatrix::from_rows(&rows).unwrap()
}

/// Counts of the bump cases seen: (nullity unchanged, nullity changed).
pub fn diagonal_bump(count: usize) -> Result<(usize, usize), String> {
    let mut rng = rng(1);
    let (mut same, mut changed) = (0, 0);
    for t in 0..count {
        let n = rng.gen_range(1..=8);
        let a = if t % 2 == 0 { random_symmetric(&mut rng, n, 4) } else { random_low_rank(&mut rng, n) };
        let i = rng.gen_range(0..n);
        let b = a.bump_diagonal(i, rng.gen_range(1..=5));
        let (ia, ib) = (inertia(&a), inertia(&b));
        let dn = ib.nullity() as i64 - ia.nullity() as i64;
        let ds = ib.signature() - ia.signature();
        if dn.abs() > 1 {
            return Err(format!("nullity jumped by {dn} for {:?}", a.matrix().to_rows()));
        }
        if dn == 0 {
            same += 1;
            if ds != 0 && ds != 2 {
                return Err(format!("signature moved by {ds} at equal nullity for {:?}", a.matrix().to_rows()));
            }
        } else {
            changed += 1;
            if ds != 1 {
                return Err(format!("signature moved by {ds} with nullity change for {:?}", a.matrix().to_rows()));
            }
        }
    }
    Ok((same, changed))
}

fn submatrix(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> IntMatrix {
    let data = rows.iter().flat_map(|&r| cols.iter().map(move |&c| m.get(r, c))).collect();
    IntMatrix::new(rows.len(), cols.len(), data).unwrap()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        let rest: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let minor = cofactor_det(&submatrix(m, &rest, &cols));
        let term = minor * m.get(0, j);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// The product of the first `k` invariant factors equals the gcd of all
/// `k × k` minors.
pub fn snf_minor_gcd(count: usize) -> Result<(), String> {
    let mut rng = rng(2);
    for _ in 0..count {
        let r = rng.gen_range(1..=4);
        let c = rng.gen_range(1..=4);
        let scale = rng.gen_range(1..=3);
        let data = (0..r * c).map(|_| scale * rng.gen_range(-5..=5)).collect();
        let m = IntMatrix::new(r, c, data).unwrap();
        let f = snf(&m).invariant_factors;
        let mut prefix = BigInt::from(1);
        for k in 1..=r.min(c) {
            prefix *= &f[k - 1];
            let mut g = BigInt::zero();
            for rows in combinations(r, k) {
                for cols in combinations(c, k) {
                    g = g.gcd(&det_exact(&submatrix(&m, &rows, &cols)).unwrap());
                }
            }
            if prefix.abs() != g {
                return Err(format!("{:?}: factors {:?}, minor gcd {g} at k={k}", m.to_rows(), f));
            }
        }
        for w in f.windows(2) {
            if !w[0].is_zero() && !(&w[1] % &w[0]).is_zero() {
                return Err(format!("{:?}: factors {:?} not a divisor chain", m.to_rows(), f));
            }
        }
    }
    Ok(())
}

/// `U·M·V` for random products of elementary integer operations.
pub fn unimodular_mix(rng: &mut ChaCha8Rng, m: &IntMatrix, steps: usize) -> IntMatrix {
    let mut rows = m.to_rows();
    let (r, c) = (m.rows(), m.cols());
    for _ in 0..steps {
        let k = rng.gen_range(-2..=2);
        if rng.gen_bool(0.5) && r > 1 {
            let (i, j) = (rng.gen_range(0..r), rng.gen_range(0..r));
            if i != j {
                for x in 0..c {
                    rows[i][x] += k * rows[j][x];
                }
            }
        } else if c > 1 {
            let (i, j) = (rng.gen_range(0..c), rng.gen_range(0..c));
            if i != j {
                for row in rows.iter_mut() {
                    row[i] += k * row[j];
                }
            }
        }
    }
    IntMatrix::from_rows(&rows).unwrap()
}

/// Integer vectors of squared length `norm` in dimension `l`.
fn vectors_of_norm(l: usize, norm: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let b = (norm as f64).sqrt() as i64 + 1;
    let mut v = vec![-b; l];
    loop {
        if v.iter().map(|x| x * x).sum::<i64>() == norm {
            out.push(v.clone());
        }
        let mut i = 0;
        while i < l && v[i] == b {
            v[i] = -b;
            i += 1;
        }
        if i == l {
            return out;
        }
        v[i] += 1;
    }
}

fn brute_force_embeddings(g: &IntSymMatrix, l: usize) -> BTreeSet<IntMatrix> {
    let m = g.dim();
    let pools: Vec<Vec<Vec<i64>>> = (0..m).map(|j| vectors_of_norm(l, g.get(j, j))).collect();
    let autos = automorphisms(g);
    let mut out = BTreeSet::new();
    let mut cols: Vec<Vec<i64>> = Vec::new();
    fn rec(
        g: &IntSymMatrix,
        pools: &[Vec<Vec<i64>>],
        cols: &mut Vec<Vec<i64>>,
        autos: &[Vec<usize>],
        out: &mut BTreeSet<IntMatrix>,
    ) {
        let j = cols.len();
        if j == pools.len() {
            let l = cols[0].len();
            let rows: Vec<Vec<i64>> = (0..l).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
            out.insert(canonicalize(&IntMatrix::from_rows(&rows).unwrap(), autos));
            return;
        }
        for v in &pools[j] {
            let fits =
                cols.iter().enumerate().all(|(i, c)| c.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() == g.get(i, j));
            if fits {
                cols.push(v.clone());
                rec(g, pools, cols, autos, out);
                cols.pop();
            }
        }
    }
    rec(g, &pools, &mut cols, &autos, &mut out);
    out
}

fn random_definite(rng: &mut ChaCha8Rng) -> IntSymMatrix {
    loop {
        let m = rng.gen_range(1..=3);
        let g = if rng.gen_bool(0.6) {
            let r = rng.gen_range(m..=m + 2);
            let a: Vec<Vec<i64>> = (0..r).map(|_| (0..m).map(|_| rng.gen_range(-1..=1)).collect()).collect();
            IntMatrix::from_rows(&a).unwrap().gram()
        } else {
            let mut rows = vec![vec![0i64; m]; m];
            for i in 0..m {
                rows[i][i] = rng.gen_range(1..=5);
                for j in 0..i {
                    let v = rng.gen_range(-2..=2);
                    rows[i][j] = v;
                    rows[j][i] = v;
                }
            }
            IntMatrix::from_rows(&rows).unwrap()
        };
        let g = IntSymMatrix::new(g).unwrap();
        let fits = (0..g.dim()).all(|i| (1..=5).contains(&g.get(i, i)));
        if fits && inertia(&g).is_positive_definite() {
            return g;
        }
    }
}

/// Returns the number of instances that had at least one embedding.
pub fn embeddings_complete(count: usize) -> Result<usize, String> {
    let mut rng = rng(3);
    let mut nonempty = 0;
    for _ in 0..count {
        let g = random_definite(&mut rng);
        let l = rng.gen_range(g.dim()..=4);
        let got: BTreeSet<IntMatrix> =
            orthogonal_embeddings(&g, l).map_err(|e| e.to_string())?.into_iter().map(|s| s.a).collect();
        let want = brute_force_embeddings(&g, l);
        if got != want {
            return Err(format!(
                "G = {:?}, l = {l}: search found {}, brute force {}",
                g.matrix().to_rows(),
                got.len(),
                want.len()
            ));
        }
        if !got.is_empty() {
            nonempty += 1;
        }
    }
    Ok(nonempty)
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// σ agrees across both shadings and random white-region labelings, in
/// every orientation class of every connected bundled diagram.
pub fn signature_independence(diagrams: &[(String, LinkDiagram)]) -> Result<usize, String> {
    let mut rng = rng(4);
    let mut checked = 0;
    for (name, d) in diagrams {
        if !d.is_connected() {
            continue;
        }
        for o in d.orientation_classes() {
            let od = d.with_orientation(&o).map_err(|e| e.to_string())?;
            let base = signature(&od).map_err(|e| e.to_string())?;
            for pick in [false, true] {
                let s = checkerboard(&od, pick).map_err(|e| e.to_string())?;
                for _ in 0..3 {
                    let order = random_permutation(&mut rng, s.white_regions.len());
                    let relabeled = s.with_region_order(&order).map_err(|e| e.to_string())?;
                    let sigma = signature_with(&od, &relabeled).map_err(|e| e.to_string())?;
                    if sigma != base {
                        return Err(format!(
                            "{name} {o:?}: σ {sigma} with pick {pick} order {order:?}, {base} by default"
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

/// Round trips and structural identities that every parsed diagram must
/// satisfy: faces = crossings + 2 per connected piece, corner count 4n,
/// mirror/reversal/crossing-change involutions, and text round trip.
pub fn parse_invariants(diagrams: &[(String, LinkDiagram)]) -> Result<(), String> {
    for (name, d) in diagrams {
        let fail = |what: &str| Err(format!("{name}: {what}"));
        d.check_planar().map_err(|e| format!("{name}: {e}"))?;
        let n = d.num_crossings();
        let faces = d.faces();
        if d.is_connected() && n > 0 && faces.count != n + 2 {
            return fail("face count is not crossings + 2");
        }
        let mut corners: HashMap<usize, usize> = HashMap::new();
        for cf in &faces.corner_face {
            for &f in cf {
                *corners.entry(f).or_default() += 1;
            }
        }
        if corners.values().sum::<usize>() != 4 * n || d.num_edges() != 2 * n {
            return fail("corner or edge count");
        }
        if d.mirror().mirror() != *d {
            return fail("mirror is not an involution");
        }
        if d.reverse_all().reverse_all() != *d {
            return fail("reversal is not an involution");
        }
        for c in 0..n {
            let twice = d.change_crossing(c).and_then(|x| x.change_crossing(c)).map_err(|e| e.to_string())?;
            if twice != *d {
                return fail("crossing change is not an involution");
            }
        }
        let back = LinkDiagram::parse_pd(&d.to_pd_string()).map_err(|e| format!("{name}: reparse: {e}"))?;
        if back != *d {
            return fail("text round trip changed the diagram");
        }
        if d.writhe() != -d.mirror().writhe() {
            return fail("mirror does not negate the writhe");
        }
    }
    Ok(())
}

/// Inertia against floating-point eigenvalues.
pub fn inertia_vs_eigen(count: usize) -> Result<(), String> {
    let mut rng = rng(5);
    for t in 0..count {
        let n = rng.gen_range(1..=6);
        let a = if t % 2 == 0 { random_symmetric(&mut rng, n, 3) } else { random_low_rank(&mut rng, n) };
        let m = DMatrix::from_fn(n, n, |i, j| a.get(i, j) as f64);
        let eig = m.symmetric_eigen().eigenvalues;
        let pos = eig.iter().filter(|&&x| x > 1e-7).count();
        let neg = eig.iter().filter(|&&x| x < -1e-7).count();
        let i = inertia(&a);
        if (i.positive, i.negative, i.zero) != (pos, neg, n - pos - neg) {
            return Err(format!("{:?}: exact {i:?}, eigen +{pos} -{neg}", a.matrix().to_rows()));
        }
    }
    Ok(())
}

pub fn det_vs_cofactor(count: usize) -> Result<(), String> {
    let mut rng = rng(6);
    for _ in 0..count {
        let n = rng.gen_range(0..=6);
        let data = (0..n * n).map(|_| rng.gen_range(-9..=9)).collect();
        let m = IntMatrix::new(n, n, data).unwrap();
        let exact = det_exact(&m).map_err(|e| e.to_string())?;
        if exact != cofactor_det(&m) {
            return Err(format!("{:?}: det {exact}", m.to_rows()));
        }
    }
    Ok(())
}
