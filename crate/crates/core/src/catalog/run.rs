use std::str::FromStr;

use crate::cellmodel::{quotient_complex, Complex};
use crate::equivariant::{quotient_comparison, verify_smith_exactness, Decomposer};
use crate::error::{Error, Result};
use crate::filtered::cellular::{additivity_for, blowup_square};
use crate::filtered::{canonical_filtration, is_acyclic, simple_complex, spectral_sequence, ConeShift};
use crate::gf2::Gf2Vector;
use crate::splitting::{find_split_with, SearchMethod, SplitOptions, SplitProblem};

use super::document::{Document, FiltrationDecl};
use super::report::{list, table, Record, Report};

/// Invariant subspaces up to this dimension are decomposed element by
/// element; larger ones through a basis, which suffices by linearity.
pub const MAX_ENUMERATED_DIM: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Homology,
    Ss,
    Smith,
    Decompose,
    Split,
    Quotient,
    CheckAll,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Validate,
        Command::Homology,
        Command::Ss,
        Command::Smith,
        Command::Decompose,
        Command::Split,
        Command::Quotient,
        Command::CheckAll,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Homology => "homology",
            Command::Ss => "ss",
            Command::Smith => "smith",
            Command::Decompose => "decompose",
            Command::Split => "split",
            Command::Quotient => "quotient",
            Command::CheckAll => "check-all",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown command `{s}`")))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub alpha: Option<i32>,
    pub chain: Option<String>,
    pub filtration: Option<String>,
    /// Let `split` fall back to enumeration.
    pub exhaustive: bool,
    pub cone_shift: ConeShift,
}

/// Runs one command on a parsed document. Record names are relative to the
/// document; `check-all` over the catalog prefixes them with the entry name.
pub fn run(cmd: Command, doc: &Document, opts: &Options) -> Result<Report> {
    match cmd {
        Command::Validate => Ok(validate(doc)),
        Command::Homology => Ok(homology(doc)),
        Command::Ss => Ok(ss(doc)),
        Command::Smith => {
            let f = doc.default_filtration(opts.filtration.as_deref())?;
            match opts.alpha {
                Some(a) => smith_at(f, a),
                None => smith_all(f),
            }
        }
        Command::Decompose => match &opts.chain {
            Some(c) => decompose_one(doc, c, opts),
            None => decompose_all(doc.default_filtration(opts.filtration.as_deref())?),
        },
        Command::Split => {
            let name = match &opts.filtration {
                Some(f) => doc
                    .filtration(f)?
                    .action
                    .clone()
                    .ok_or_else(|| Error::Precondition(format!("filtration `{f}` has the trivial action")))?,
                None => match doc.actions.as_slice() {
                    [a] => a.name.clone(),
                    [] => return Err(Error::Input("document declares no action".into())),
                    _ => return Err(Error::Input("document declares several actions; pass --filtration".into())),
                },
            };
            split(doc, &name, opts)
        }
        Command::Quotient => quotient(doc.default_filtration(opts.filtration.as_deref())?),
        Command::CheckAll => check_all(doc, opts),
    }
}

fn validate(doc: &Document) -> Report {
    let mut r = Report::default();
    for d in &doc.complexes {
        r.push(Record::new(format!("validate/{}", d.name), true).field("counts", list(&d.complex.counts())));
    }
    for d in &doc.subcomplexes {
        r.push(Record::new(format!("validate/{}", d.name), true).field("counts", list(&d.sub.counts())));
    }
    for d in &doc.actions {
        r.push(
            Record::new(format!("validate/{}", d.name), true)
                .field("order", d.action.order())
                .field("free", d.action.is_free()),
        );
    }
    for d in &doc.maps {
        r.push(Record::new(format!("validate/{}", d.name), true).field("injective", d.map.is_injective()));
    }
    for d in &doc.squares {
        r.push(Record::new(format!("validate/{}", d.name), true).field("y_tilde", list(&d.square.y_tilde().counts())));
    }
    for d in &doc.filtrations {
        let rec = match d.data.validate() {
            Ok(rep) => Record::new(format!("validate/{}", d.name), true).field("dims", table(&rep.dims)),
            Err(e) => Record::new(format!("validate/{}", d.name), false).field("error", e.to_string().replace(' ', "_")),
        };
        r.push(rec);
    }
    for d in &doc.chains {
        r.push(
            Record::new(format!("validate/{}", d.name), true)
                .field("dim", d.chain.k())
                .field("cells", d.chain.len()),
        );
    }
    r
}

fn homology(doc: &Document) -> Report {
    let mut r = Report::default();
    for d in &doc.complexes {
        let b = d.complex.betti();
        for (k, v) in b.iter().enumerate() {
            r.note(format!("{}: H{k} = {v}", d.name));
        }
        r.push(Record::new(format!("homology/{}", d.name), true).field("betti", list(&b)));
    }
    r
}

fn ss(doc: &Document) -> Report {
    let mut r = Report::default();
    for d in &doc.complexes {
        let cc = d.complex.chain_complex();
        let s = spectral_sequence(&canonical_filtration(&cc));
        let totals: Vec<usize> = s.pages().iter().skip(1).map(|p| p.total()).collect();
        let monotone = totals.windows(2).all(|w| w[1] <= w[0]);
        let h: usize = cc.betti().iter().sum();
        let e1 = s.page(1).total();
        let einf = s.infinity().total();
        r.note(format!("{}: page totals from E1: {}; E-infinity {einf}", d.name, list(&totals)));
        r.push(
            Record::new(format!("ss/{}", d.name), monotone && einf == h)
                .field("e1", e1)
                .field("einf", einf)
                .field("homology", h)
                .field("stable", s.stable_page()),
        );
    }
    r
}

fn alphas(f: &FiltrationDecl) -> std::ops::RangeInclusive<i32> {
    -(f.data.len() as i32)..=0
}

fn smith_at(f: &FiltrationDecl, alpha: i32) -> Result<Report> {
    let rep = verify_smith_exactness(&f.data, alpha)?;
    let mut r = Report::default();
    let c = f.data.complex();
    let yn = |b: bool| if b { "yes" } else { "no" };
    for d in &rep.degrees {
        let mut line = format!(
            "k={} alpha={alpha}: fixed {} transfer {} middle {} kernel {} image {}; injective {} exact {} surjective {}",
            d.k,
            d.fixed_dim,
            d.transfer_dim,
            d.middle_dim,
            d.kernel_dim,
            d.image_dim,
            yn(d.left_injective),
            yn(d.exact_middle),
            yn(d.right_surjective)
        );
        if let Some(w) = &d.witness {
            line.push_str(&format!("; witness {}", cell_names(c, d.k, w)));
        }
        r.note(line);
    }
    let failing: Vec<usize> = rep.degrees.iter().filter(|d| !d.is_exact()).map(|d| d.k).collect();
    r.push(
        Record::new(format!("smith/{}/{alpha}", f.name), failing.is_empty())
            .field("kernel", list(&rep.degrees.iter().map(|d| d.kernel_dim).collect::<Vec<_>>()))
            .field("image", list(&rep.degrees.iter().map(|d| d.image_dim).collect::<Vec<_>>()))
            .field("failing", if failing.is_empty() { "none".into() } else { list(&failing) }),
    );
    Ok(r)
}

fn smith_all(f: &FiltrationDecl) -> Result<Report> {
    let mut r = Report::default();
    for alpha in alphas(f) {
        r.extend(smith_at(f, alpha)?);
    }
    Ok(r)
}

fn cell_names(c: &Complex, k: usize, v: &Gf2Vector) -> String {
    let names: Vec<String> = v.ones().map(|i| c.simplex_name(k, i).replace(' ', "-")).collect();
    if names.is_empty() {
        "0".into()
    } else {
        names.join(",")
    }
}

fn decompose_one(doc: &Document, name: &str, opts: &Options) -> Result<Report> {
    let chain = doc.chain(name)?;
    let f = match &opts.filtration {
        Some(n) => doc.filtration(n)?,
        None => {
            let on: Vec<&FiltrationDecl> = doc.filtrations.iter().filter(|f| f.complex == chain.complex).collect();
            match on.as_slice() {
                [f] => *f,
                [] => return Err(Error::Input(format!("no filtration on `{}`", chain.complex))),
                _ => return Err(Error::Input(format!("several filtrations on `{}`; pass --filtration", chain.complex))),
            }
        }
    };
    if f.complex != chain.complex {
        return Err(Error::Input(format!("chain `{name}` does not live on `{}`", f.complex)));
    }
    let k = usize::try_from(chain.chain.k()).map_err(|_| Error::Input("negative chain degree".into()))?;
    let alpha = match opts.alpha {
        Some(a) => a,
        None => (-(k as i32) - 1..=0)
            .find(|&a| f.data.level(k, a).contains(chain.chain.support()))
            .unwrap_or(0),
    };
    let solution = Decomposer::new(&f.data, k, alpha)?.decompose(chain.chain.support())?;
    let c = f.data.complex();
    let mut r = Report::default();
    r.note(format!("{name} = h + sigma(h) with h = {}", cell_names(c, k, &solution)));
    r.push(
        Record::new(format!("decompose/{name}"), true)
            .field("alpha", alpha)
            .field("cells", solution.count_ones())
            .field("h", cell_names(c, k, &solution)),
    );
    Ok(r)
}

/// Decomposes every invariant chain of `N_α C_k` at every `k` and `α`.
fn decompose_all(f: &FiltrationDecl) -> Result<Report> {
    let mut tested = 0usize;
    let mut failures = Vec::new();
    for k in 0..f.data.len() {
        for alpha in -(k as i32) - 1..=0 {
            let dec = Decomposer::new(&f.data, k, alpha)?;
            let inv = f.data.invariant_subspace(k, alpha);
            let chains: Vec<Gf2Vector> = if inv.dim() <= MAX_ENUMERATED_DIM {
                inv.elements().collect()
            } else {
                inv.basis().to_vec()
            };
            for c in chains {
                tested += 1;
                if dec.decompose(&c).is_err() {
                    failures.push(format!("{k}:{alpha}"));
                }
            }
        }
    }
    failures.dedup();
    let mut r = Report::default();
    r.note(format!("{}: {tested} invariant chains decomposed, {} failing positions", f.name, failures.len()));
    r.push(
        Record::new(format!("decompose/{}", f.name), failures.is_empty())
            .field("tested", tested)
            .field("failing", if failures.is_empty() { "none".into() } else { failures.join(",") }),
    );
    Ok(r)
}

fn method_name(m: &SearchMethod) -> &'static str {
    match m {
        SearchMethod::Growth { .. } => "growth",
        SearchMethod::Repair { .. } => "repair",
        SearchMethod::Exhaustive { .. } => "exhaustive",
    }
}

fn split(doc: &Document, action: &str, opts: &Options) -> Result<Report> {
    let decl = doc.action(action)?;
    let problem = SplitProblem::new(decl.action.clone())?;
    let options = SplitOptions {
        exhaustive: opts.exhaustive,
        ..SplitOptions::default()
    };
    let mut r = Report::default();
    match find_split_with(&problem, &options) {
        Ok(res) => {
            let x = res.problem.complex();
            let n = res.problem.n();
            let a: Vec<String> = res.a.iter().map(|&t| x.simplex_name(n, t).replace(' ', "-")).collect();
            r.note(format!("a = {}", a.join(" ")));
            r.note(format!("method: {:?}", res.method));
            for c in &res.certificate.checks {
                r.note(c.to_string());
            }
            let mut rec = Record::new(format!("split/{action}"), true)
                .field("a", res.a.len())
                .field("s", list(&res.s.counts()))
                .field("interface", res.certificate.interface.len())
                .field("method", method_name(&res.method));
            if res.subdivisions > 0 {
                rec = rec.field("subdivisions", res.subdivisions);
            }
            r.push(rec);
        }
        Err(Error::NoSplitFound(msg)) => {
            r.note(format!("no split: {msg}"));
            r.push(Record::new(format!("split/{action}"), false).field("a", "none"));
        }
        Err(e) => return Err(e),
    }
    Ok(r)
}

fn quotient(f: &FiltrationDecl) -> Result<Report> {
    let q = quotient_complex(f.data.action())?;
    let cmp = quotient_comparison(&f.data, None)?;
    let mut r = Report::default();
    for row in &cmp.rows {
        r.note(format!(
            "k={} alpha={}: invariant {} transfer {} quotient {}{}",
            row.k,
            row.alpha,
            row.invariant_dim,
            row.transfer_dim,
            row.quotient_dim,
            if row.holds() { "" } else { " MISMATCH" }
        ));
    }
    let inv: Vec<usize> = cmp.rows.iter().filter(|r| r.alpha == 0).map(|r| r.invariant_dim).collect();
    r.push(
        Record::new(format!("quotient/{}", f.name), cmp.holds())
            .field("betti", list(&q.complex.betti()))
            .field("invariant", list(&inv))
            .field("subdivisions", cmp.subdivisions),
    );
    Ok(r)
}

/// Every applicable check on every entity of the document.
pub fn check_all(doc: &Document, opts: &Options) -> Result<Report> {
    let mut r = validate(doc);
    r.extend(homology(doc));
    r.extend(ss(doc));
    for f in &doc.filtrations {
        let dims: Vec<Vec<usize>> = (0..f.data.len())
            .map(|k| (-(k as i32) - 1..=0).map(|a| f.data.invariant_subspace(k, a).dim()).collect())
            .collect();
        r.push(Record::new(format!("invariant/{}", f.name), true).field("dims", table(&dims)));
        if f.data.action().sigma_index().is_err() {
            continue;
        }
        let mut failing = Vec::new();
        for alpha in alphas(f) {
            if !verify_smith_exactness(&f.data, alpha)?.is_exact() {
                failing.push(alpha);
            }
        }
        r.push(
            Record::new(format!("smith/{}", f.name), failing.is_empty())
                .field("failing", if failing.is_empty() { "none".into() } else { list(&failing) }),
        );
        let mut d = decompose_all(f)?;
        d.detail.clear();
        r.extend(d);
        let act = f.data.action();
        if !act.is_trivial() && act.is_free() {
            let mut q = quotient(f)?;
            q.detail.clear();
            r.extend(q);
        }
    }
    for a in &doc.actions {
        if SplitProblem::new(a.action.clone()).is_ok() {
            let mut s = split(doc, &a.name, opts)?;
            s.detail.clear();
            r.extend(s);
        }
    }
    for sq in &doc.squares {
        let fc = simple_complex(&blowup_square(&sq.square)?, opts.cone_shift)?;
        let h: usize = fc.complex().betti().iter().sum();
        r.push(
            Record::new(format!("square/{}", sq.name), true)
                .field("acyclic", is_acyclic(&fc))
                .field("homology", h),
        );
    }
    for y in &doc.subcomplexes {
        let rep = additivity_for(&y.sub, opts.cone_shift)?;
        r.push(Record::new(format!("additivity/{}", y.name), rep.is_quasi_iso).field("quasi_iso", rep.is_quasi_iso));
    }
    Ok(r)
}
