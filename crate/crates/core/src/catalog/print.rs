use std::fmt::{self, Write};

use crate::cellmodel::{ClosedSubcomplex, Complex};
use crate::gf2::Gf2Vector;

use super::document::Document;

fn token(c: &Complex, k: usize, i: usize) -> String {
    let labels: Vec<&str> = c.simplex(k, i).iter().map(|&v| c.label(v)).collect();
    labels.join("-")
}

fn cells(c: &Complex, k: usize, v: &Gf2Vector) -> String {
    let t: Vec<String> = v.ones().map(|i| token(c, k, i)).collect();
    t.join(" ")
}

/// Maximal cells of a subcomplex, highest dimension first.
fn maximal(y: &ClosedSubcomplex) -> Vec<(usize, usize)> {
    let c = y.parent();
    let layers = c.counts().len();
    let mut out = Vec::new();
    for k in (0..layers).rev() {
        let cofaces = if k + 1 < layers { c.cofaces(k + 1) } else { vec![Vec::new(); c.count(k)] };
        for i in (0..c.count(k)).filter(|&i| y.contains(k, i)) {
            if !cofaces[i].iter().any(|&j| y.contains(k + 1, j)) {
                out.push((k, i));
            }
        }
    }
    out
}

/// Writes the canonical form: complexes, subcomplexes, actions, maps,
/// squares, filtrations and chains, one blank line between declarations.
/// Parsing the output gives back an equal document.
pub fn print_document(doc: &Document) -> String {
    let mut blocks: Vec<String> = Vec::new();
    for d in &doc.complexes {
        let c = &d.complex;
        let mut s = format!("complex {}:", d.name);
        for l in c.labels() {
            write!(s, " {l}").ok();
        }
        let whole = ClosedSubcomplex::whole(c.clone());
        for (k, i) in maximal(&whole).into_iter().filter(|&(k, _)| k > 0) {
            let labels: Vec<&str> = c.simplex(k, i).iter().map(|&v| c.label(v)).collect();
            write!(s, "\nsimplex {}: {}", d.name, labels.join(" ")).ok();
        }
        blocks.push(s);
    }
    for d in &doc.subcomplexes {
        let c = d.sub.parent();
        let t: Vec<String> = maximal(&d.sub).into_iter().map(|(k, i)| token(c, k, i)).collect();
        blocks.push(format!("subcomplex {} of {}: {}", d.name, d.complex, t.join(" ")).trim_end().to_string());
    }
    for d in &doc.actions {
        let c = d.action.complex();
        let order = d.action.order();
        let shown: Vec<String> = d
            .generator
            .iter()
            .enumerate()
            .filter(|&(v, &w)| v as u32 != w && (order != 2 || (v as u32) < w))
            .map(|(v, &w)| format!("{}->{}", c.label(v as u32), c.label(w)))
            .collect();
        blocks.push(format!("action {} on {} order {order}: {}", d.name, d.complex, shown.join(", ")).trim_end().to_string());
    }
    for d in &doc.maps {
        let (s, t) = (d.map.source(), d.map.target());
        let shown: Vec<String> = d
            .map
            .vertex_map()
            .iter()
            .enumerate()
            .map(|(v, &w)| format!("{}->{}", s.label(v as u32), t.label(w)))
            .collect();
        blocks.push(format!("map {}: {} -> {}: {}", d.name, d.source, d.target, shown.join(", ")).trim_end().to_string());
    }
    for d in &doc.squares {
        blocks.push(format!("square {}: map {} over {}", d.name, d.map, d.over));
    }
    for d in &doc.filtrations {
        let mut s = format!("filtration {} on {}", d.name, d.complex);
        if let Some(a) = &d.action {
            write!(s, " action {a}").ok();
        }
        let c = d.data.complex();
        for k in 0..d.data.len() {
            for alpha in -(k as i32)..=-1 {
                let level = d.data.level(k, alpha);
                if level == d.data.level(k, alpha - 1) {
                    continue;
                }
                let groups: Vec<String> = level.basis().iter().map(|v| format!("{{{}}}", cells(c, k, v))).collect();
                write!(s, "\nlevel {k} {alpha}: {}", groups.join(", ")).ok();
            }
        }
        blocks.push(s);
    }
    for d in &doc.chains {
        let c = doc.complex(&d.complex).map(|c| c.complex.clone());
        let body = match (c, usize::try_from(d.chain.k())) {
            (Ok(c), Ok(k)) => cells(&c, k, d.chain.support()),
            _ => String::new(),
        };
        blocks.push(format!("chain {} on {} dim {}: {body}", d.name, d.complex, d.chain.k()).trim_end().to_string());
    }
    let mut out = blocks.join("\n\n");
    out.push('\n');
    out
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_document(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, parse_document};

    #[test]
    fn catalog_sources_are_canonical() {
        for e in catalog() {
            let doc = e.document().unwrap();
            assert_eq!(print_document(&doc), e.source, "{}", e.name);
        }
    }

    #[test]
    fn isolated_vertices_and_vertex_order_survive() {
        let doc = parse_document("complex a\nsimplex a: z\nsimplex a: x y\nsimplex a: w\n").unwrap();
        let text = print_document(&doc);
        assert_eq!(text, "complex a: z x y w\nsimplex a: x y\n");
        let again = parse_document(&text).unwrap();
        assert_eq!(again.complex("a").unwrap().complex, doc.complex("a").unwrap().complex);
    }

    #[test]
    fn omitted_levels_are_not_printed() {
        let src = "complex t: 1 2 3 4\nsimplex t: 1 2 3\nsimplex t: 1 2 4\nsimplex t: 1 3 4\nsimplex t: 2 3 4\n\n\
            filtration f on t\nlevel 2 -2: {1-2-3 1-2-4 1-3-4 2-3-4}\n";
        let doc = parse_document(src).unwrap();
        assert_eq!(print_document(&doc), src);
        assert_eq!(doc.filtration("f").unwrap().data.level(2, -1).dim(), 1);
    }

    #[test]
    fn cyclic_actions_print_every_moved_vertex() {
        let src = "complex c: 1 2 3\nsimplex c: 1 2\nsimplex c: 1 3\nsimplex c: 2 3\n\naction r on c order 3: 1->2, 2->3, 3->1\n";
        assert_eq!(print_document(&parse_document(src).unwrap()), src);
    }
}
