use std::fmt;

use crate::cellmodel::ClosedSubcomplex;
use crate::gf2::Gf2Vector;

use super::SplitProblem;

/// Names of the conditions checked by [`verify_split`], in transcript order.
pub const CONDITIONS: [&str; 7] = [
    "representatives",
    "cover",
    "disjoint",
    "parity",
    "interface",
    "invariant",
    "link-parity",
];

/// One line of a verification transcript.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{} {verdict} {}", self.name, self.detail)
    }
}

/// The full transcript for one candidate; never short-circuits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub checks: Vec<Check>,
    /// The interface: `(n-1)`-faces with exactly one coface in `a`.
    pub interface: Vec<usize>,
    /// `closure(A) ∩ closure(σA)` as per-dimension membership.
    pub s_cells: Vec<Vec<bool>>,
    /// Vertices of offending cells, used to steer repair.
    pub(crate) defect_vertices: Vec<usize>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Pass/fail per condition, comparable across candidates.
    pub fn verdicts(&self) -> Vec<(&'static str, bool)> {
        self.checks.iter().map(|c| (c.name, c.passed)).collect()
    }

    pub fn s(&self, problem: &SplitProblem) -> ClosedSubcomplex {
        let x = problem.complex().clone();
        let cells = self
            .s_cells
            .iter()
            .map(|layer| Gf2Vector::from_bools(layer))
            .collect();
        ClosedSubcomplex::new(x, cells).expect("intersection of closures is closed")
    }
}

/// Closure of a set of `k`-cells, as membership layers for dimensions `0..=n`.
fn closure(p: &SplitProblem, k: usize, cells: &[bool]) -> Vec<Vec<bool>> {
    let n = p.n();
    let mut layers: Vec<Vec<bool>> = (0..=n).map(|d| vec![false; p.complex().count(d)]).collect();
    layers[k] = cells.to_vec();
    for d in (1..=k).rev() {
        let (lower, upper) = layers.split_at_mut(d);
        for (i, _) in upper[0].iter().enumerate().filter(|(_, &m)| m) {
            for &f in &p.facets[d][i] {
                lower[d - 1][f] = true;
            }
        }
    }
    layers
}

fn apply_sigma(p: &SplitProblem, layers: &[Vec<bool>]) -> Vec<Vec<bool>> {
    layers
        .iter()
        .enumerate()
        .map(|(k, layer)| {
            let mut out = vec![false; layer.len()];
            for (i, _) in layer.iter().enumerate().filter(|(_, &m)| m) {
                out[p.sigma[k][i]] = true;
            }
            out
        })
        .collect()
}

fn names(p: &SplitProblem, k: usize, cells: impl Iterator<Item = usize>) -> String {
    let v: Vec<String> = cells.take(6).map(|i| p.complex().simplex_name(k, i)).collect();
    v.join(",")
}

/// Checks a candidate set of top cells against every split condition.
pub fn verify_split(p: &SplitProblem, a: &[usize]) -> Certificate {
    let n = p.n();
    let top = p.top_cells();
    let mut in_a = vec![false; top];
    for &t in a.iter().filter(|&&t| t < top) {
        in_a[t] = true;
    }
    let mut checks = Vec::with_capacity(CONDITIONS.len());

    let out_of_range: Vec<usize> = a.iter().copied().filter(|&t| t >= top).collect();
    let doubled: Vec<usize> = p.orbits().into_iter().filter(|&(s, t)| in_a[s] && in_a[t]).map(|(s, _)| s).collect();
    let missing: Vec<usize> = p.orbits().into_iter().filter(|&(s, t)| !in_a[s] && !in_a[t]).map(|(s, _)| s).collect();
    checks.push(Check {
        name: "representatives",
        passed: doubled.is_empty() && out_of_range.is_empty(),
        detail: if !out_of_range.is_empty() {
            format!("unknown top cells {out_of_range:?}")
        } else if doubled.is_empty() {
            format!("{} cells, at most one per orbit", in_a.iter().filter(|&&m| m).count())
        } else {
            format!("both cells of the orbit of {{{}}}", names(p, n, doubled.into_iter()))
        },
    });
    checks.push(Check {
        name: "cover",
        passed: missing.is_empty(),
        detail: if missing.is_empty() {
            "a ∪ σ(a) is every top cell".into()
        } else {
            format!("no cell chosen from the orbit of {{{}}}", names(p, n, missing.into_iter()))
        },
    });
    let overlap: Vec<usize> = (0..top).filter(|&t| in_a[t] && in_a[p.partner[t]]).collect();
    checks.push(Check {
        name: "disjoint",
        passed: overlap.is_empty(),
        detail: format!("|a ∩ σ(a)| = {}", overlap.len()),
    });

    // Interface faces against the odd-incidence boundary of [A].
    let interface: Vec<usize> = (0..p.cofaces.len())
        .filter(|&f| in_a[p.cofaces[f][0]] != in_a[p.cofaces[f][1]])
        .collect();
    let mut boundary = vec![false; p.cofaces.len()];
    for t in (0..top).filter(|&t| in_a[t]) {
        for &f in &p.facets[n][t] {
            boundary[f] ^= true;
        }
    }
    let mut is_interface = vec![false; p.cofaces.len()];
    for &f in &interface {
        is_interface[f] = true;
    }
    let parity_bad: Vec<usize> = (0..p.cofaces.len()).filter(|&f| boundary[f] != is_interface[f]).collect();
    checks.push(Check {
        name: "parity",
        passed: parity_bad.is_empty(),
        detail: format!(
            "{} faces checked, |∂[A]| = {}, {} mismatches",
            p.cofaces.len(),
            boundary.iter().filter(|&&b| b).count(),
            parity_bad.len()
        ),
    });

    let closure_a = closure(p, n, &in_a);
    let closure_sa = apply_sigma(p, &closure_a);
    let s_cells: Vec<Vec<bool>> = closure_a
        .iter()
        .zip(&closure_sa)
        .map(|(x, y)| x.iter().zip(y).map(|(&a, &b)| a && b).collect())
        .collect();
    let closure_i = closure(p, n - 1, &is_interface);
    let mut junk = Vec::new();
    let mut absent = Vec::new();
    for k in 0..=n {
        for i in 0..s_cells[k].len() {
            match (s_cells[k][i], closure_i[k][i]) {
                (true, false) => junk.push((k, i)),
                (false, true) => absent.push((k, i)),
                _ => {}
            }
        }
    }
    checks.push(Check {
        name: "interface",
        passed: junk.is_empty() && absent.is_empty(),
        detail: if junk.is_empty() && absent.is_empty() {
            format!("A ∩ σ(A) is the closure of {} interface faces", interface.len())
        } else {
            let show = |v: &[(usize, usize)]| {
                v.iter().take(6).map(|&(k, i)| p.complex().simplex_name(k, i)).collect::<Vec<_>>().join(",")
            };
            format!("extra {{{}}} missing {{{}}}", show(&junk), show(&absent))
        },
    });

    let mut moved = 0;
    for (k, layer) in s_cells.iter().enumerate() {
        moved += (0..layer.len()).filter(|&i| layer[i] && !layer[p.sigma[k][i]]).count();
    }
    checks.push(Check {
        name: "invariant",
        passed: moved == 0,
        detail: format!("{moved} cells of S leave S under σ"),
    });

    // χ(A ∩ link(v)) mod 2 is the number of cells of A strictly containing v.
    let x = p.complex();
    let mut star_count = vec![0usize; x.num_vertices()];
    for (k, layer) in closure_a.iter().enumerate().skip(1) {
        for (i, _) in layer.iter().enumerate().filter(|(_, &m)| m) {
            for &v in x.simplex(k, i) {
                star_count[v as usize] += 1;
            }
        }
    }
    let checked: Vec<usize> = (0..x.num_vertices())
        .filter(|&v| s_cells[0][v] && !p.fixed_vertex[v])
        .collect();
    let even: Vec<usize> = checked.iter().copied().filter(|&v| star_count[v].is_multiple_of(2)).collect();
    checks.push(Check {
        name: "link-parity",
        passed: even.is_empty(),
        detail: if even.is_empty() {
            format!("{} non-fixed vertices of S have odd link Euler characteristic in A", checked.len())
        } else {
            format!("even link parity at {{{}}}", names(p, 0, even.iter().copied()))
        },
    });

    let mut defect_vertices: Vec<usize> = junk
        .iter()
        .chain(&absent)
        .flat_map(|&(k, i)| x.simplex(k, i).iter().map(|&v| v as usize))
        .chain(even)
        .collect();
    defect_vertices.sort_unstable();
    defect_vertices.dedup();

    Certificate {
        checks,
        interface,
        s_cells,
        defect_vertices,
    }
}
