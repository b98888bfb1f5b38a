use std::collections::HashMap;

use crate::gf2::Subspace;

use super::FilteredComplex;

/// Dimensions of one page and the ranks of its differential.
///
/// Entries are indexed by filtration degree `p` and total degree `n = p + q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Page {
    pub r: usize,
    p_min: i32,
    dims: Vec<Vec<usize>>,
    diff_ranks: Vec<Vec<usize>>,
}

impl Page {
    /// `dim E^r_{p, n-p}`.
    pub fn dim_at(&self, p: i32, n: usize) -> usize {
        lookup(&self.dims, self.p_min, p, n)
    }

    /// `dim E^r_{p,q}`.
    pub fn dim(&self, p: i32, q: i32) -> usize {
        usize::try_from(p + q).map_or(0, |n| self.dim_at(p, n))
    }

    /// Rank of `d^r : E^r_{p, n-p} → E^r_{p-r, n-p+r-1}`.
    pub fn differential_rank(&self, p: i32, n: usize) -> usize {
        lookup(&self.diff_ranks, self.p_min, p, n)
    }

    pub fn total(&self) -> usize {
        self.dims.iter().flatten().sum()
    }

    pub fn total_in_degree(&self, n: usize) -> usize {
        self.dims.get(n).map_or(0, |row| row.iter().sum())
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }

    pub fn has_zero_differential(&self) -> bool {
        self.diff_ranks.iter().flatten().all(|&r| r == 0)
    }

    /// Nonzero entries as `(p, n, dim)`.
    pub fn entries(&self) -> impl Iterator<Item = (i32, usize, usize)> + '_ {
        self.dims.iter().enumerate().flat_map(move |(n, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(move |(i, &d)| (self.p_min + i as i32, n, d))
        })
    }
}

fn lookup(table: &[Vec<usize>], p_min: i32, p: i32, n: usize) -> usize {
    let Some(row) = table.get(n) else { return 0 };
    usize::try_from(p - p_min)
        .ok()
        .and_then(|i| row.get(i).copied())
        .unwrap_or(0)
}

/// Pages `E^0, E^1, …` of the spectral sequence of a filtered complex, run
/// until every later differential vanishes, plus the limit page.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralSequence {
    pages: Vec<Page>,
    infinity: Page,
    stable_page: usize,
    homology_filtration: Vec<Vec<usize>>,
    p_min: i32,
}

impl SpectralSequence {
    pub fn pages(&self) -> &[Page] {
        &self.pages
    }

    pub fn page(&self, r: usize) -> &Page {
        self.pages.get(r).unwrap_or(&self.infinity)
    }

    pub fn infinity(&self) -> &Page {
        &self.infinity
    }

    /// First `r ≥ 1` whose page already equals `E^∞`.
    pub fn stable_page(&self) -> usize {
        self.stable_page
    }

    /// `dim F_p H_n` of the induced filtration on homology.
    pub fn homology_level(&self, p: i32, n: usize) -> usize {
        let Some(row) = self.homology_filtration.get(n) else { return 0 };
        match usize::try_from(p - self.p_min) {
            Err(_) => 0,
            Ok(i) => row.get(i).or(row.last()).copied().unwrap_or(0),
        }
    }
}

struct Workspace<'a> {
    fc: &'a FilteredComplex,
    z: HashMap<(i32, i32, usize), Subspace>,
}

impl Workspace<'_> {
    /// `Z^r_p = {x ∈ F_p : ∂x ∈ F_{p-r}}` in degree `n`.
    fn z(&mut self, r: i32, p: i32, n: usize) -> Subspace {
        if let Some(s) = self.z.get(&(r, p, n)) {
            return s.clone();
        }
        let fp = self.fc.level(n, p);
        let s = if n == 0 {
            fp
        } else {
            let target = self.fc.level(n - 1, p - r);
            let pre = Subspace::preimage(&self.fc.complex().boundary(n), &target).expect("shapes");
            fp.intersection(&pre).expect("same ambient")
        };
        self.z.insert((r, p, n), s.clone());
        s
    }

    /// `B^r_p = F_p ∩ ∂ F_{p+r-1}` in degree `n`.
    fn b(&self, r: i32, p: i32, n: usize) -> Subspace {
        let c = self.fc.complex();
        let fp = self.fc.level(n, p);
        if n + 1 >= c.len() {
            return Subspace::zero(c.dim(n));
        }
        let img = self
            .fc
            .level(n + 1, p + r - 1)
            .image_under(&c.boundary(n + 1))
            .expect("shapes");
        fp.intersection(&img).expect("same ambient")
    }

    fn e_dim(&mut self, r: i32, p: i32, n: usize) -> usize {
        let top = self.z(r, p, n);
        let below = self.z(r - 1, p - 1, n).sum(&self.b(r, p, n)).expect("same ambient");
        top.dim() - below.dim()
    }

    fn d_rank(&mut self, r: i32, p: i32, n: usize) -> usize {
        let top = self.z(r, p, n);
        let ker = self.z(r + 1, p, n).sum(&self.z(r - 1, p - 1, n)).expect("same ambient");
        top.dim() - ker.dim()
    }
}

/// Computes every page up to the one past which all differentials vanish.
pub fn spectral_sequence(fc: &FilteredComplex) -> SpectralSequence {
    let (p_min, p_max) = (fc.p_min(), fc.p_max());
    let len = fc.complex().len();
    let width = (p_max - p_min + 1) as usize;
    // d^r leaves the filtration window once r exceeds its width.
    let last_r = width + 1;
    let mut ws = Workspace { fc, z: HashMap::new() };
    let mut pages = Vec::with_capacity(last_r + 1);
    for r in 0..=last_r {
        let ri = r as i32;
        let mut dims = vec![vec![0; width]; len];
        let mut ranks = vec![vec![0; width]; len];
        for n in 0..len {
            for i in 0..width {
                let p = p_min + i as i32;
                dims[n][i] = ws.e_dim(ri, p, n);
                if n > 0 {
                    ranks[n][i] = ws.d_rank(ri, p, n);
                }
            }
        }
        pages.push(Page {
            r,
            p_min,
            dims,
            diff_ranks: ranks,
        });
    }

    let c = fc.complex();
    let mut inf = vec![vec![0; width]; len];
    let mut hf = vec![vec![0; width]; len];
    for n in 0..len {
        let ker = c.cycles(n);
        let im = c.boundaries(n);
        for i in 0..width {
            let p = p_min + i as i32;
            let zp = fc.level(n, p).intersection(&ker).expect("same ambient");
            let zq = fc.level(n, p - 1).intersection(&ker).expect("same ambient");
            let bp = fc.level(n, p).intersection(&im).expect("same ambient");
            inf[n][i] = zp.dim() - zq.sum(&bp).expect("same ambient").dim();
            hf[n][i] = zp.sum(&im).expect("same ambient").dim() - im.dim();
        }
    }
    let infinity = Page {
        r: usize::MAX,
        p_min,
        dims: inf,
        diff_ranks: vec![vec![0; width]; len],
    };
    let stable_page = (1..pages.len())
        .find(|&r| pages[r].dims == infinity.dims)
        .unwrap_or(last_r);
    SpectralSequence {
        pages,
        infinity,
        stable_page,
        homology_filtration: hf,
        p_min,
    }
}
