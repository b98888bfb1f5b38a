#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use equichain::cellmodel::{Complex, GroupAction};
use equichain::equivariant::FiltrationData;
use equichain::filtered::FilteredComplex;
use equichain::gf2::{Gf2Vector, Subspace};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// A random complex of dimension at most 3 with at most `max_cells` cells.
pub fn random_complex(rng: &mut ChaCha8Rng, max_cells: usize) -> Complex {
    let n = rng.gen_range(1..=7);
    let mut simplices: Vec<Vec<u32>> = Vec::new();
    let mut current = Complex::closure_of(labels(n), Vec::new()).unwrap();
    for _ in 0..rng.gen_range(0..8) {
        let size = rng.gen_range(2..=4.min(n).max(2));
        if size > n {
            break;
        }
        let mut vs: Vec<u32> = (0..n as u32).collect();
        vs.shuffle(rng);
        vs.truncate(size);
        simplices.push(vs);
        let next = Complex::closure_of(labels(n), simplices.clone()).unwrap();
        if next.total_cells() > max_cells {
            simplices.pop();
            continue;
        }
        current = next;
    }
    current
}

/// A random complex closed under an involution of its vertices, with at
/// most 40 cells. Some vertices are fixed, the rest swapped in pairs.
pub fn random_z2_complex(rng: &mut ChaCha8Rng) -> (Arc<Complex>, GroupAction) {
    z2_complex(rng, false)
}

/// As [`random_z2_complex`], but no cell is mapped to itself.
pub fn random_free_z2_complex(rng: &mut ChaCha8Rng) -> (Arc<Complex>, GroupAction) {
    z2_complex(rng, true)
}

fn z2_complex(rng: &mut ChaCha8Rng, free: bool) -> (Arc<Complex>, GroupAction) {
    let pairs = rng.gen_range(if free { 2..=4 } else { 1..=3 });
    let fixed = if free { 0 } else { rng.gen_range(0..=2) };
    let n = 2 * pairs + fixed;
    let tau: Vec<u32> = (0..n as u32)
        .map(|v| {
            let v = v as usize;
            if v < 2 * pairs {
                (v ^ 1) as u32
            } else {
                v as u32
            }
        })
        .collect();
    let mut simplices: Vec<Vec<u32>> = Vec::new();
    let mut current = Complex::closure_of(labels(n), Vec::new()).unwrap();
    for _ in 0..rng.gen_range(1..8) {
        let size = rng.gen_range(2..=3.min(n));
        let mut vs: Vec<u32> = (0..n as u32).collect();
        vs.shuffle(rng);
        vs.truncate(size);
        if free && vs.iter().any(|&v| vs.contains(&tau[v as usize])) {
            continue;
        }
        let image: Vec<u32> = vs.iter().map(|&v| tau[v as usize]).collect();
        simplices.push(vs);
        simplices.push(image);
        let next = Complex::closure_of(labels(n), simplices.clone()).unwrap();
        if next.total_cells() > 40 {
            simplices.truncate(simplices.len() - 2);
            continue;
        }
        current = next;
    }
    let x = Arc::new(current);
    let act = GroupAction::involution(x.clone(), tau).unwrap();
    (x, act)
}

/// Valid filtration data whose negative levels are nested spans of
/// invariant boundaries, so every axiom holds by construction.
pub fn random_filtration(rng: &mut ChaCha8Rng, action: &GroupAction) -> FiltrationData {
    let x = action.complex().clone();
    let g = action.sigma_index().unwrap();
    let layers = x.counts().len();
    let levels = (0..layers)
        .map(|k| {
            let mut per = vec![Subspace::zero(x.count(k))];
            let mut gens: Vec<Gf2Vector> = Vec::new();
            for _ in -(k as i32)..=-1 {
                if k + 1 < layers && rng.gen_bool(0.6) {
                    let c = Gf2Vector::from_bools(&(0..x.count(k + 1)).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
                    let b = x.boundary_matrix(k + 1).mul_vec(&c);
                    gens.push(action.act_vector(g, k, &b));
                    gens.push(b);
                }
                per.push(Subspace::span(x.count(k), &gens));
            }
            per.push(Subspace::full(x.count(k)));
            per
        })
        .collect();
    FiltrationData::new(action.clone(), levels).unwrap()
}

/// Rank over GF(2) by inserting rows into an xor basis keyed by leading bit.
pub fn rank(rows: &[Vec<bool>]) -> usize {
    let mut basis: Vec<Vec<bool>> = Vec::new();
    for r in rows {
        let mut r = r.clone();
        for b in &basis {
            let lead = b.iter().position(|&x| x).unwrap();
            if r[lead] {
                for (x, y) in r.iter_mut().zip(b) {
                    *x ^= *y;
                }
            }
        }
        if let Some(lead) = r.iter().position(|&x| x) {
            // Keep the basis reduced at `lead` so later insertions stay correct.
            for b in basis.iter_mut() {
                if b[lead] {
                    for (x, y) in b.iter_mut().zip(&r) {
                        *x ^= *y;
                    }
                }
            }
            basis.push(r);
        }
    }
    basis.len()
}

/// `∂_k` as rows indexed by `k`-cells, computed from vertex lists.
pub fn boundary_rows(x: &Complex, k: usize) -> Vec<Vec<bool>> {
    (0..x.count(k))
        .map(|i| {
            let s = x.simplex(k, i);
            let mut row = vec![false; x.count(k - 1)];
            for skip in 0..s.len() {
                let face: Vec<u32> = s.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
                let (_, f) = x.find(&face).unwrap();
                row[f] ^= true;
            }
            row
        })
        .collect()
}

/// Betti numbers from ranks of boundary rows.
pub fn betti(x: &Complex) -> Vec<usize> {
    let layers = x.counts().len();
    let ranks: Vec<usize> = (0..=layers)
        .map(|k| if k == 0 || k >= layers { 0 } else { rank(&boundary_rows(x, k)) })
        .collect();
    (0..layers).map(|k| x.count(k) - ranks[k] - ranks[k + 1]).collect()
}

/// The image of `k`-cell `i` under the vertex permutation `p`.
pub fn permute_cell(x: &Complex, p: &[u32], k: usize, i: usize) -> usize {
    let mut s: Vec<u32> = x.simplex(k, i).iter().map(|&v| p[v as usize]).collect();
    s.sort_unstable();
    x.find(&s).unwrap().1
}

pub fn to_bools(v: &Gf2Vector) -> Vec<bool> {
    v.to_bools()
}

/// All elements of the span of `basis`, as bit vectors.
pub fn span_elements(basis: &[Gf2Vector], len: usize) -> Vec<Vec<bool>> {
    let mut out = vec![vec![false; len]];
    for b in basis {
        let b = b.to_bools();
        let more: Vec<Vec<bool>> = out.iter().map(|e| e.iter().zip(&b).map(|(x, y)| x ^ y).collect()).collect();
        out.extend(more);
    }
    out
}

pub fn sigma_bits(act: &GroupAction, k: usize, v: &[bool]) -> Vec<bool> {
    let mut out = vec![false; v.len()];
    for (i, _) in v.iter().enumerate().filter(|(_, &b)| b) {
        out[act.cell_image(1, k, i)] = true;
    }
    out
}

pub fn xor(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

/// Cells of dimension `k` all of whose vertices are fixed.
pub fn fixed_cells(act: &GroupAction, k: usize) -> Vec<bool> {
    let x = act.complex();
    (0..x.count(k))
        .map(|i| x.simplex(k, i).iter().all(|&v| act.cell_image(1, 0, v as usize) == v as usize))
        .collect()
}

/// Smith data by enumerating every chain of the relevant levels.
pub struct Enumerated {
    pub fixed: usize,
    pub transfer: usize,
    pub kernel: usize,
    pub image: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl Enumerated {
    pub fn exact(&self) -> bool {
        self.injective && self.surjective && self.image == self.kernel
    }
}

fn log2(n: usize) -> usize {
    n.trailing_zeros() as usize
}

pub fn enumerate_smith(fd: &FiltrationData, k: usize, alpha: i32) -> Enumerated {
    let act = fd.action();
    let n = fd.complex().count(k);
    let fixed = fixed_cells(act, k);
    let middle: HashSet<Vec<bool>> = span_elements(fd.level(k, alpha).basis(), n).into_iter().collect();
    let next = span_elements(fd.level(k, alpha + 1).basis(), n);
    let kernel: HashSet<Vec<bool>> = middle.iter().filter(|c| sigma_bits(act, k, c) == **c).cloned().collect();
    let a: HashSet<Vec<bool>> = middle.iter().map(|c| c.iter().zip(&fixed).map(|(x, f)| *x && *f).collect()).collect();
    let b: HashSet<Vec<bool>> = next
        .iter()
        .map(|t| xor(t, &sigma_bits(act, k, t)))
        .filter(|d| middle.contains(d))
        .collect();
    let mut image = HashSet::new();
    for x in &a {
        for y in &b {
            image.insert(xor(x, y));
        }
    }
    let zero = vec![false; n];
    let right: HashSet<Vec<bool>> = middle.iter().map(|c| xor(c, &sigma_bits(act, k, c))).collect();
    Enumerated {
        fixed: log2(a.len()),
        transfer: log2(b.len()),
        kernel: log2(kernel.len()),
        image: log2(image.len()),
        injective: a.intersection(&b).all(|v| *v == zero),
        surjective: middle.len() / kernel.len() == right.len(),
    }
}

/// Smith exactness from ranks alone. Transfers vanish on fixed cells, so
/// the sequence is exact iff the two summands fill the invariant chains.
pub fn smith_exact_by_rank(fd: &FiltrationData, k: usize, alpha: i32) -> bool {
    let act = fd.action();
    let fixed = fixed_cells(act, k);
    let mid: Vec<Vec<bool>> = fd.level(k, alpha).basis().iter().map(|b| b.to_bools()).collect();
    let next: Vec<Vec<bool>> = fd.level(k, alpha + 1).basis().iter().map(|b| b.to_bools()).collect();
    let a: Vec<Vec<bool>> = mid.iter().map(|c| c.iter().zip(&fixed).map(|(x, f)| *x && *f).collect()).collect();
    let w: Vec<Vec<bool>> = next.iter().map(|t| xor(t, &sigma_bits(act, k, t))).collect();
    let both: Vec<Vec<bool>> = w.iter().chain(&mid).cloned().collect();
    let transfer = rank(&w) + rank(&mid) - rank(&both);
    let right: Vec<Vec<bool>> = mid.iter().map(|c| xor(c, &sigma_bits(act, k, c))).collect();
    let kernel = rank(&mid) - rank(&right);
    rank(&a) + transfer == kernel
}

/// A filtration by cells: every cell is born no earlier than its faces.
pub fn births(rng: &mut ChaCha8Rng, x: &Complex, width: i32) -> Vec<Vec<i32>> {
    let mut b: Vec<Vec<i32>> = Vec::new();
    for k in 0..x.counts().len() {
        let layer = (0..x.count(k))
            .map(|i| {
                let floor = if k == 0 { 0 } else { x.facet_indices(k, i).iter().map(|&f| b[k - 1][f]).max().unwrap() };
                rng.gen_range(floor..width).max(floor)
            })
            .collect();
        b.push(layer);
    }
    b
}

pub fn cellwise(x: &Complex, b: &[Vec<i32>], width: i32) -> FilteredComplex {
    let levels = (0..x.counts().len())
        .map(|k| {
            (0..width)
                .map(|p| {
                    let gens: Vec<Gf2Vector> = (0..x.count(k)).filter(|&i| b[k][i] <= p).map(|i| Gf2Vector::unit(x.count(k), i)).collect();
                    Subspace::span(x.count(k), &gens)
                })
                .collect()
        })
        .collect();
    FilteredComplex::new(x.chain_complex(), 0, levels).unwrap()
}
