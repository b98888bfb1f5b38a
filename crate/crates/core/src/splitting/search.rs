use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::cellmodel::{barycentric_subdivide, ClosedSubcomplex};
use crate::error::{Error, Result};

use super::verify::{verify_split, Certificate};
use super::SplitProblem;

/// Exhaustive search is only attempted up to this many orbits of top cells.
pub const MAX_EXHAUSTIVE_ORBITS: usize = 20;

/// How a split was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchMethod {
    /// Connected growth outward from a seed vertex.
    Growth { seed: String },
    /// Growth followed by representative swaps.
    Repair { seed: String, swaps: usize },
    /// Enumeration of representative assignments.
    Exhaustive { tried: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitOptions {
    /// Fall back to enumeration when the heuristics fail.
    pub exhaustive: bool,
    /// Barycentric subdivisions to try when no split exists on the input.
    pub max_subdivisions: usize,
    pub repair_passes: usize,
}

impl Default for SplitOptions {
    fn default() -> Self {
        Self {
            exhaustive: true,
            max_subdivisions: 0,
            repair_passes: 32,
        }
    }
}

/// A verified decomposition of the top cells into `a ∪ σ(a)`.
#[derive(Clone, Debug)]
pub struct SplitResult {
    /// The problem actually split; differs from the input after subdivision.
    pub problem: SplitProblem,
    /// Chosen top cells, sorted.
    pub a: Vec<usize>,
    /// `closure(A) ∩ closure(σA)`.
    pub s: ClosedSubcomplex,
    pub certificate: Certificate,
    pub method: SearchMethod,
    pub subdivisions: usize,
}

/// Finds a split with growth, repair and (for small inputs) enumeration.
pub fn find_split(p: &SplitProblem) -> Result<SplitResult> {
    find_split_with(p, &SplitOptions::default())
}

pub fn find_split_with(p: &SplitProblem, options: &SplitOptions) -> Result<SplitResult> {
    let mut problem = p.clone();
    let mut subdivisions = 0;
    loop {
        match search(&problem, options) {
            Ok((a, certificate, method)) => {
                let s = certificate.s(&problem);
                return Ok(SplitResult {
                    problem,
                    a,
                    s,
                    certificate,
                    method,
                    subdivisions,
                });
            }
            Err(e) if subdivisions == options.max_subdivisions => return Err(e),
            Err(_) => {
                let sd = barycentric_subdivide(problem.complex().clone());
                problem = SplitProblem::new(sd.transport_action(problem.action())?)?;
                subdivisions += 1;
            }
        }
    }
}

fn search(p: &SplitProblem, options: &SplitOptions) -> Result<(Vec<usize>, Certificate, SearchMethod)> {
    let x = p.complex();
    let mut seeds: Vec<usize> = (0..x.num_vertices()).filter(|&v| !p.fixed_vertex[v]).collect();
    seeds.extend((0..x.num_vertices()).filter(|&v| p.fixed_vertex[v]));
    let mut grown = Vec::with_capacity(seeds.len());
    for &seed in &seeds {
        let a = grow(p, seed);
        let cert = verify_split(p, &a);
        if cert.passed() {
            let seed = x.label(seed as u32).to_string();
            return Ok((a, cert, SearchMethod::Growth { seed }));
        }
        grown.push((seed, a, cert));
    }
    for (seed, a, cert) in grown {
        if let Some((a, cert, swaps)) = repair(p, a, cert, options.repair_passes) {
            let seed = x.label(seed as u32).to_string();
            return Ok((a, cert, SearchMethod::Repair { seed, swaps }));
        }
    }
    let orbits = p.orbits().len();
    if !options.exhaustive {
        return Err(Error::NoSplitFound(format!(
            "growth from {} seeds and repair failed; exhaustive search disabled",
            seeds.len()
        )));
    }
    if orbits > MAX_EXHAUSTIVE_ORBITS {
        return Err(Error::NoSplitFound(format!(
            "heuristics failed and {orbits} orbits exceed the exhaustive limit of {MAX_EXHAUSTIVE_ORBITS}"
        )));
    }
    exhaustive(p).ok_or_else(|| {
        Error::NoSplitFound(format!("no representative assignment over {orbits} orbits is a split"))
    })
}

/// Picks one top cell per orbit, nearest the seed vertex first, keeping the
/// chosen set connected in the dual graph.
pub(crate) fn grow(p: &SplitProblem, seed: usize) -> Vec<usize> {
    let x = p.complex();
    let n = p.n();
    let mut adjacent = vec![Vec::new(); x.num_vertices()];
    for e in x.cells(1) {
        adjacent[e[0] as usize].push(e[1] as usize);
        adjacent[e[1] as usize].push(e[0] as usize);
    }
    let mut dist = vec![usize::MAX; x.num_vertices()];
    dist[seed] = 0;
    let mut queue = VecDeque::from([seed]);
    while let Some(v) = queue.pop_front() {
        for &w in &adjacent[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let key = |t: usize| {
        let d = x.simplex(n, t).iter().map(|&v| dist[v as usize]).min().unwrap_or(usize::MAX);
        (d, t)
    };
    let start = (0..p.top_cells()).min_by_key(|&t| key(t)).expect("nonempty");
    let mut chosen = vec![false; p.top_cells()];
    let mut taken = vec![false; p.top_cells()];
    let mut heap = BinaryHeap::from([Reverse(key(start))]);
    while let Some(Reverse((_, t))) = heap.pop() {
        if taken[t] {
            continue;
        }
        chosen[t] = true;
        taken[t] = true;
        taken[p.partner[t]] = true;
        for &u in &p.dual[t] {
            if !taken[u] {
                heap.push(Reverse(key(u)));
            }
        }
    }
    (0..p.top_cells()).filter(|&t| chosen[t]).collect()
}

fn score(cert: &Certificate) -> (usize, usize) {
    (
        cert.checks.iter().filter(|c| !c.passed).count(),
        cert.defect_vertices.len(),
    )
}

/// Swaps orbit representatives touching defects while that strictly lowers
/// the defect score.
fn repair(p: &SplitProblem, mut a: Vec<usize>, mut cert: Certificate, passes: usize) -> Option<(Vec<usize>, Certificate, usize)> {
    let x = p.complex();
    let n = p.n();
    let mut swaps = 0;
    for _ in 0..passes {
        let mut bad = vec![false; x.num_vertices()];
        for &v in &cert.defect_vertices {
            bad[v] = true;
        }
        let current = score(&cert);
        let mut improved = false;
        for i in 0..a.len() {
            let t = a[i];
            let touches = |c: usize| x.simplex(n, c).iter().any(|&v| bad[v as usize]);
            if !touches(t) && !touches(p.partner[t]) {
                continue;
            }
            let mut trial = a.clone();
            trial[i] = p.partner[t];
            trial.sort_unstable();
            let c = verify_split(p, &trial);
            if score(&c) < current {
                a = trial;
                cert = c;
                swaps += 1;
                improved = true;
                break;
            }
        }
        if cert.passed() {
            return Some((a, cert, swaps));
        }
        if !improved {
            return None;
        }
    }
    None
}

/// Tries every assignment with the first orbit's smaller cell fixed; a
/// candidate and its image under `σ` always get the same verdict.
fn exhaustive(p: &SplitProblem) -> Option<(Vec<usize>, Certificate, SearchMethod)> {
    let orbits = p.orbits();
    let free = orbits.len().saturating_sub(1);
    for mask in 0u64..(1u64 << free) {
        let a: Vec<usize> = {
            let mut a: Vec<usize> = orbits
                .iter()
                .enumerate()
                .map(|(i, &(s, t))| if i > 0 && mask >> (i - 1) & 1 == 1 { t } else { s })
                .collect();
            a.sort_unstable();
            a
        };
        let cert = verify_split(p, &a);
        if cert.passed() {
            return Some((a, cert, SearchMethod::Exhaustive { tried: mask + 1 }));
        }
    }
    None
}
