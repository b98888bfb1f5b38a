use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use crate::cellmodel::{CellularMap, Chain, ClosedSubcomplex, Complex, GroupAction, PullbackSquare};
use crate::equivariant::FiltrationData;
use crate::error::{Error, Result};
use crate::gf2::{Gf2Vector, Subspace};

use super::document::*;

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn is_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '.' | '\''))
}

struct PendingComplex {
    name: String,
    labels: Vec<String>,
    index: HashMap<String, u32>,
    /// Vertices were listed on the `complex` line; simplex lines may not add more.
    closed: bool,
    simplices: Vec<Vec<u32>>,
    built: Option<Arc<Complex>>,
}

impl PendingComplex {
    fn freeze(&mut self) -> Result<Arc<Complex>> {
        if self.built.is_none() {
            let c = Complex::closure_of(self.labels.clone(), std::mem::take(&mut self.simplices))?;
            self.built = Some(Arc::new(c));
        }
        Ok(self.built.clone().expect("just built"))
    }
}

struct PendingFiltration {
    line: usize,
    name: String,
    complex: String,
    action: Option<String>,
    group: GroupAction,
    levels: BTreeMap<(usize, i32), Subspace>,
}

#[derive(Default)]
struct Parser {
    doc: Document,
    complexes: Vec<PendingComplex>,
    names: HashSet<String>,
    filtration: Option<PendingFiltration>,
}

/// Parses the text format. Entities must be declared before they are
/// referenced; a complex accepts no further simplices once referenced.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut p = Parser::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let keyword = content.split_whitespace().next().unwrap_or("");
        if keyword != "level" {
            p.close_filtration()?;
        }
        let result = match keyword {
            "complex" => p.complex_line(line, content),
            "simplex" => p.simplex_line(line, content),
            "subcomplex" => p.subcomplex_line(line, content),
            "action" => p.action_line(line, content),
            "map" => p.map_line(line, content),
            "square" => p.square_line(line, content),
            "filtration" => p.filtration_line(line, content),
            "level" => p.level_line(line, content),
            "chain" => p.chain_line(line, content),
            other => Err(syntax(line, format!("unknown declaration `{other}`"))),
        };
        result.map_err(|e| e.at_line(line))?;
    }
    p.close_filtration()?;
    let Parser { mut doc, complexes, .. } = p;
    for mut c in complexes {
        let complex = c.freeze()?;
        doc.complexes.push(ComplexDecl { name: c.name, complex });
    }
    Ok(doc)
}

/// Splits `head: rest` at the first colon.
fn split_colon(line: usize, content: &str) -> Result<(&str, &str)> {
    content
        .split_once(':')
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| syntax(line, "expected `:`"))
}

/// Matches whitespace-separated tokens against a pattern in which `_` is a
/// placeholder; returns the placeholders in order.
fn header<'a>(line: usize, text: &'a str, pattern: &[&str]) -> Result<Vec<&'a str>> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let expected = || syntax(line, format!("expected `{}`", pattern.join(" ").replace('_', "NAME")));
    if tokens.len() != pattern.len() {
        return Err(expected());
    }
    let mut out = Vec::new();
    for (t, p) in tokens.iter().zip(pattern) {
        if *p == "_" {
            out.push(*t);
        } else if t != p {
            return Err(expected());
        }
    }
    Ok(out)
}

fn pairs(line: usize, text: &str) -> Result<Vec<(String, String)>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|p| {
            let (a, b) = p
                .split_once("->")
                .ok_or_else(|| syntax(line, format!("expected `v->w`, found `{}`", p.trim())))?;
            let (a, b) = (a.trim(), b.trim());
            if !is_label(a) || !is_label(b) {
                return Err(syntax(line, format!("malformed vertex pair `{}`", p.trim())));
            }
            Ok((a.to_string(), b.to_string()))
        })
        .collect()
}

fn vertex(c: &Complex, label: &str) -> Result<u32> {
    c.vertex(label)
        .ok_or_else(|| Error::Input(format!("vertex `{label}` is not declared in this complex")))
}

/// A simplex written as labels joined by `-`.
fn simplex_token(line: usize, c: &Complex, token: &str) -> Result<(usize, usize)> {
    let labels: Vec<&str> = token.split('-').collect();
    if !labels.iter().all(|l| is_label(l)) {
        return Err(syntax(line, format!("malformed simplex `{token}`")));
    }
    for l in &labels {
        vertex(c, l)?;
    }
    c.find_labels(&labels)
        .ok_or_else(|| Error::Input(format!("`{token}` is not a simplex of the complex")))
}

fn cells_of_dim(line: usize, c: &Complex, k: usize, text: &str) -> Result<Gf2Vector> {
    let mut v = Gf2Vector::zeros(c.count(k));
    for token in text.split_whitespace() {
        let (d, i) = simplex_token(line, c, token)?;
        if d != k {
            return Err(Error::Input(format!("`{token}` has dimension {d}, expected {k}")));
        }
        v.flip(i);
    }
    Ok(v)
}

fn parse_int<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("expected {what}, found `{token}`")))
}

impl Parser {
    fn declare(&mut self, line: usize, name: &str) -> Result<()> {
        if !is_label(name) {
            return Err(syntax(line, format!("invalid name `{name}`")));
        }
        if !self.names.insert(name.to_string()) {
            return Err(Error::Input(format!("`{name}` is declared twice")));
        }
        Ok(())
    }

    fn pending(&mut self, name: &str) -> Result<&mut PendingComplex> {
        self.complexes
            .iter_mut()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::Input(format!("no complex named `{name}`")))
    }

    fn use_complex(&mut self, name: &str) -> Result<Arc<Complex>> {
        self.pending(name)?.freeze()
    }

    fn complex_line(&mut self, line: usize, content: &str) -> Result<()> {
        let (head, vertices) = match content.split_once(':') {
            Some((h, v)) => (h.trim(), Some(v)),
            None => (content, None),
        };
        let name = header(line, head, &["complex", "_"])?[0];
        self.declare(line, name)?;
        let mut c = PendingComplex {
            name: name.to_string(),
            labels: Vec::new(),
            index: HashMap::new(),
            closed: vertices.is_some(),
            simplices: Vec::new(),
            built: None,
        };
        for l in vertices.unwrap_or("").split_whitespace() {
            if !is_label(l) {
                return Err(syntax(line, format!("invalid vertex label `{l}`")));
            }
            if c.index.insert(l.to_string(), c.labels.len() as u32).is_some() {
                return Err(Error::Input(format!("vertex `{l}` listed twice")));
            }
            c.labels.push(l.to_string());
        }
        self.complexes.push(c);
        Ok(())
    }

    fn simplex_line(&mut self, line: usize, content: &str) -> Result<()> {
        let (head, rest) = split_colon(line, content)?;
        let name = header(line, head, &["simplex", "_"])?[0];
        let c = self.pending(name)?;
        if c.built.is_some() {
            return Err(Error::Input(format!("complex `{name}` is already in use and cannot grow")));
        }
        let labels: Vec<&str> = rest.split_whitespace().collect();
        if labels.is_empty() {
            return Err(syntax(line, "a simplex needs at least one vertex"));
        }
        let mut s = Vec::with_capacity(labels.len());
        for l in labels {
            if !is_label(l) {
                return Err(syntax(line, format!("invalid vertex label `{l}`")));
            }
            let v = match c.index.get(l) {
                Some(&v) => v,
                None if c.closed => {
                    return Err(Error::Input(format!("vertex `{l}` is not declared in complex `{name}`")))
                }
                None => {
                    let v = c.labels.len() as u32;
                    c.index.insert(l.to_string(), v);
                    c.labels.push(l.to_string());
                    v
                }
            };
            if s.contains(&v) {
                return Err(Error::Input(format!("vertex `{l}` repeated in a simplex")));
            }
            s.push(v);
        }
        c.simplices.push(s);
        Ok(())
    }

    fn subcomplex_line(&mut self, line: usize, content: &str) -> Result<()> {
        let (head, rest) = split_colon(line, content)?;
        let h = header(line, head, &["subcomplex", "_", "of", "_"])?;
        self.declare(line, h[0])?;
        let c = self.use_complex(h[1])?;
        let gens = rest
            .split_whitespace()
            .map(|t| simplex_token(line, &c, t))
            .collect::<Result<Vec<_>>>()?;
        self.doc.subcomplexes.push(SubcomplexDecl {
            name: h[0].to_string(),
            complex: h[1].to_string(),
            sub: ClosedSubcomplex::closure_of(c, gens),
        });
        Ok(())
    }

    fn action_line(&mut self, line: usize, content: &str) -> Result<()> {
        let (head, rest) = split_colon(line, content)?;
        let h = header(line, head, &["action", "_", "on", "_", "order", "_"])?;
        self.declare(line, h[0])?;
        let order: usize = parse_int(line, h[2], "a group order")?;
        if order == 0 {
            return Err(syntax(line, "group order must be positive"));
        }
        let c = self.use_complex(h[1])?;
        let mut generator: Vec<u32> = (0..c.num_vertices() as u32).collect();
        let mut assigned = vec![false; generator.len()];
        for (a, b) in pairs(line, rest)? {
            let (a, b) = (vertex(&c, &a)?, vertex(&c, &b)?);
            if assigned[a as usize] {
                return Err(Error::Input(format!("vertex `{}` is mapped twice", c.label(a))));
            }
            assigned[a as usize] = true;
            generator[a as usize] = b;
        }
        if order == 2 {
            // Listing one direction of each swap is enough.
            for v in 0..generator.len() {
                let w = generator[v] as usize;
                if assigned[v] && !assigned[w] {
                    assigned[w] = true;
                    generator[w] = v as u32;
                }
            }
        }
        let action = GroupAction::from_generators(c.clone(), vec![generator.clone()])?;
        if action.order() != order {
            return Err(Error::Input(format!(
                "action `{}` generates a group of order {}, not {order}",
                h[0],
                action.order()
            )));
        }
        self.doc.actions.push(ActionDecl {
            name: h[0].to_string(),
            complex: h[1].to_string(),
            generator,
            action,
        });
        Ok(())
    }

    fn map_line(&mut self, line: usize, content: &str) -> Result<()> {
        let mut parts = content.splitn(3, ':');
        let head = parts.next().unwrap_or("").trim();
        let ends = parts.next().ok_or_else(|| syntax(line, "expected `map NAME: SOURCE -> TARGET: ...`"))?;
        let rest = parts.next().ok_or_else(|| syntax(line, "expected `:` after the target"))?;
        let name = header(line, head, &["map", "_"])?[0];
        let e = header(line, ends, &["_", "->", "_"])?;
        self.declare(line, name)?;
        let source = self.use_complex(e[0])?;
        let target = self.use_complex(e[1])?;
        let mut vm = vec![None; source.num_vertices()];
        for (a, b) in pairs(line, rest.trim())? {
            let (a, b) = (vertex(&source, &a)?, vertex(&target, &b)?);
            if vm[a as usize].replace(b).is_some() {
                return Err(Error::Input(format!("vertex `{}` is mapped twice", source.label(a))));
            }
        }
        let vm = vm
            .iter()
            .enumerate()
            .map(|(v, w)| w.ok_or_else(|| Error::Input(format!("vertex `{}` has no image", source.label(v as u32)))))
            .collect::<Result<Vec<_>>>()?;
        self.doc.maps.push(MapDecl {
            name: name.to_string(),
            source: e[0].to_string(),
            target: e[1].to_string(),
            map: CellularMap::new(source, target, vm)?,
        });
        Ok(())
    }

    fn square_line(&mut self, line: usize, content: &str) -> Result<()> {
        let (head, rest) = split_colon(line, content)?;
        let name = header(line, head, &["square", "_"])?[0];
        let r = header(line, rest, &["map", "_", "over", "_"])?;
        self.declare(line, name)?;
        let pi = self.doc.map(r[0])?.map.clone();
        let y = self.doc.subcomplex(r[1])?.sub.clone();
        self.doc.squares.push(SquareDecl {
            name: name.to_string(),
            map: r[0].to_string(),
            over: r[1].to_string(),
            square: PullbackSquare::new(pi, y)?,
        });
        Ok(())
    }

    fn filtration_line(&mut self, line: usize, content: &str) -> Result<()> {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let h = if tokens.len() == 4 {
            header(line, content, &["filtration", "_", "on", "_"])?
        } else {
            header(line, content, &["filtration", "_", "on", "_", "action", "_"])?
        };
        self.declare(line, h[0])?;
        let c = self.use_complex(h[1])?;
        let group = match h.get(2) {
            Some(a) => {
                let decl = self.doc.action(a)?;
                if decl.complex != h[1] {
                    return Err(Error::Input(format!("action `{a}` does not act on `{}`", h[1])));
                }
                decl.action.clone()
            }
            None => GroupAction::trivial(c),
        };
        self.filtration = Some(PendingFiltration {
            line,
            name: h[0].to_string(),
            complex: h[1].to_string(),
            action: h.get(2).map(|s| s.to_string()),
            group,
            levels: BTreeMap::new(),
        });
        Ok(())
    }

    fn level_line(&mut self, line: usize, content: &str) -> Result<()> {
        let f = self
            .filtration
            .as_mut()
            .ok_or_else(|| syntax(line, "`level` outside a filtration"))?;
        let (head, rest) = split_colon(line, content)?;
        let h = header(line, head, &["level", "_", "_"])?;
        let k: usize = parse_int(line, h[0], "a dimension")?;
        let alpha: i32 = parse_int(line, h[1], "a level index")?;
        let c = f.group.complex().clone();
        if c.dim().is_none_or(|d| k > d) {
            return Err(Error::Input(format!("no {k}-cells in `{}`", f.complex)));
        }
        if alpha < -(k as i32) || alpha > -1 {
            return Err(Error::Input(format!(
                "level {alpha} of C_{k} is fixed; only {}..=-1 may be given",
                -(k as i32)
            )));
        }
        let mut gens = Vec::new();
        let mut text = rest;
        while !text.is_empty() {
            let body = text
                .strip_prefix('{')
                .ok_or_else(|| syntax(line, "expected `{` to open a chain"))?;
            let (inner, after) = body.split_once('}').ok_or_else(|| syntax(line, "unclosed `{`"))?;
            gens.push(cells_of_dim(line, &c, k, inner)?);
            text = after.trim_start();
            if let Some(next) = text.strip_prefix(',') {
                text = next.trim_start();
                if text.is_empty() {
                    return Err(syntax(line, "trailing `,`"));
                }
            } else if !text.is_empty() {
                return Err(syntax(line, "expected `,` between chains"));
            }
        }
        if f.levels.insert((k, alpha), Subspace::span(c.count(k), &gens)).is_some() {
            return Err(Error::Input(format!("level {k} {alpha} given twice")));
        }
        Ok(())
    }

    fn close_filtration(&mut self) -> Result<()> {
        let Some(f) = self.filtration.take() else {
            return Ok(());
        };
        let c = f.group.complex().clone();
        let levels = (0..c.counts().len())
            .map(|k| {
                let mut layer = vec![Subspace::zero(c.count(k))];
                for alpha in -(k as i32)..=-1 {
                    let next = f.levels.get(&(k, alpha)).cloned().unwrap_or_else(|| layer.last().expect("nonempty").clone());
                    layer.push(next);
                }
                layer.push(Subspace::full(c.count(k)));
                layer
            })
            .collect();
        let data = FiltrationData::new(f.group, levels).map_err(|e| e.at_line(f.line))?;
        self.doc.filtrations.push(FiltrationDecl {
            name: f.name,
            complex: f.complex,
            action: f.action,
            data,
        });
        Ok(())
    }

    fn chain_line(&mut self, line: usize, content: &str) -> Result<()> {
        let (head, rest) = split_colon(line, content)?;
        let tokens: Vec<&str> = head.split_whitespace().collect();
        let (name, complex, k) = if tokens.len() == 4 {
            let h = header(line, head, &["chain", "_", "dim", "_"])?;
            let last = self
                .complexes
                .last()
                .ok_or_else(|| Error::Input("chain declared before any complex".into()))?;
            (h[0], last.name.clone(), h[1])
        } else {
            let h = header(line, head, &["chain", "_", "on", "_", "dim", "_"])?;
            (h[0], h[1].to_string(), h[2])
        };
        let k: usize = parse_int(line, k, "a dimension")?;
        self.declare(line, name)?;
        let c = self.use_complex(&complex)?;
        if c.dim().is_none_or(|d| k > d) {
            return Err(Error::Input(format!("no {k}-cells in `{complex}`")));
        }
        let support = cells_of_dim(line, &c, k, rest)?;
        self.doc.chains.push(ChainDecl {
            name: name.to_string(),
            complex,
            chain: Chain::from_vector(k as isize, support),
        });
        Ok(())
    }
}
