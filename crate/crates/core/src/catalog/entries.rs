use crate::error::{Error, Result};

use super::document::Document;
use super::parse::parse_document;
use super::report::{Record, Report};
use super::run::{check_all, Options};

/// One expected field of one check, with where the value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub check: &'static str,
    pub key: &'static str,
    pub value: &'static str,
    pub note: &'static str,
}

const fn ex(check: &'static str, key: &'static str, value: &'static str, note: &'static str) -> Expected {
    Expected {
        check,
        key,
        value,
        note,
    }
}

/// A named worked example: its document and the values it must produce.
#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub source: &'static str,
    pub expected: &'static [Expected],
}

impl CatalogEntry {
    pub fn document(&self) -> Result<Document> {
        parse_document(self.source)
    }
}

const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "hexagon-antipodal",
        source: include_str!("../../catalog/hexagon-antipodal.eq"),
        expected: &[
            ex("homology/hexagon", "betti", "1,1", "a circle"),
            ex("invariant/canonical", "dims", "0,3/0,1,3", "orbits of cells; the cycle is the only invariant cycle"),
            ex("quotient/canonical", "betti", "1,1", "the orbit space is again a circle"),
            ex("smith/canonical", "failing", "none", "checked by enumeration in the test suite"),
            ex("split/antipodal", "a", "3", "half of six edges"),
            ex("split/antipodal", "s", "2", "an arc meets its antipode in two points"),
        ],
    },
    CatalogEntry {
        name: "octahedron-antipodal",
        source: include_str!("../../catalog/octahedron-antipodal.eq"),
        expected: &[
            ex("homology/octahedron", "betti", "1,0,1", "a 2-sphere"),
            ex("quotient/equators", "betti", "1,1,1", "the projective plane mod 2"),
            ex("quotient/equators", "subdivisions", "1", "the orbit complex of the octahedron is not simplicial"),
            ex("invariant/equators", "dims", "0,3/0,3,6/0,1,3,4", "equators, hemisphere pairs and the sphere"),
            ex("smith/equators", "failing", "none", "checked by enumeration in the test suite"),
            ex("split/antipodal", "a", "4", "one triangle per antipodal pair"),
            ex("split/antipodal", "s", "4,4", "a hemisphere meets its antipode in an equator"),
        ],
    },
    CatalogEntry {
        name: "square-reflection",
        source: include_str!("../../catalog/square-reflection.eq"),
        expected: &[
            ex("homology/square", "betti", "1,1", "a circle"),
            ex("invariant/canonical", "dims", "0,3/0,1,2", "two fixed vertices and one swapped pair"),
            ex("smith/canonical", "failing", "none", "checked by enumeration in the test suite"),
            ex("split/reflection", "a", "2", "half of four edges"),
            ex("split/reflection", "s", "2", "the two fixed vertices"),
        ],
    },
    CatalogEntry {
        name: "square-antipodal",
        source: include_str!("../../catalog/square-antipodal.eq"),
        expected: &[
            ex("homology/square", "betti", "1,1", "a circle"),
            ex("quotient/canonical", "betti", "1,1", "the orbit space is a circle"),
            ex("quotient/canonical", "subdivisions", "1", "antipodal edges would be glued into a loop"),
            ex("smith/canonical", "failing", "none", "checked by enumeration in the test suite"),
        ],
    },
    CatalogEntry {
        name: "torus-swap",
        source: include_str!("../../catalog/torus-swap.eq"),
        expected: &[
            ex("homology/torus", "betti", "1,2,1", "a torus"),
            ex("invariant/lines", "dims", "0,6/0,5,15/0,1,4,9", "rank oracle in the test suite"),
            ex("smith/lines", "failing", "none", "rank oracle in the test suite"),
            ex("split/swap", "a", "9", "half of eighteen triangles"),
            ex("split/swap", "s", "7,9", "recomputed from the chosen triangles in the test suite"),
        ],
    },
    CatalogEntry {
        name: "two-triangles-swap",
        source: include_str!("../../catalog/two-triangles-swap.eq"),
        expected: &[
            ex("homology/triangles", "betti", "2,2", "two circles"),
            ex("invariant/components", "dims", "0,3/0,1,3", "three swapped edge pairs"),
            ex("quotient/components", "betti", "1,1", "the orbit space is one circle"),
            ex("quotient/components", "invariant", "3,3", "one invariant chain per orbit"),
            ex("smith/components", "failing", "none", "free action"),
        ],
    },
    CatalogEntry {
        name: "circle-minus-point",
        source: include_str!("../../catalog/circle-minus-point.eq"),
        expected: &[
            ex("homology/circle", "betti", "1,1", "a circle"),
            ex("additivity/point", "quasi_iso", "true", "an open interval has the cone of the point inclusion as its model"),
        ],
    },
    CatalogEntry {
        name: "blowup-square",
        source: include_str!("../../catalog/blowup-square.eq"),
        expected: &[
            ex("homology/path", "betti", "1,0", "an interval"),
            ex("square/blowup", "homology", "0", "the total complex is exact"),
            ex("square/blowup", "acyclic", "false", "E1 has two classes cancelled by d1; see the test suite"),
        ],
    },
    CatalogEntry {
        name: "hexagon-rotation",
        source: include_str!("../../catalog/hexagon-rotation.eq"),
        expected: &[
            ex("homology/hexagon", "betti", "1,1", "a circle"),
            ex("invariant/canonical", "dims", "0,1/0,1,1", "one orbit per dimension under the cyclic group"),
            ex("validate/rotation", "order", "6", "generated by one rotation"),
        ],
    },
];

pub fn catalog() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn entry(name: &str) -> Result<&'static CatalogEntry> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Input(format!("no catalog entry named `{name}`")))
}

/// Runs `check-all` on one entry and compares against its expected table.
/// Record names are prefixed with the entry name.
pub fn check_entry(e: &CatalogEntry, opts: &Options) -> Result<Report> {
    let doc = e.document()?;
    let mut rep = check_all(&doc, opts)?;
    for r in &mut rep.records {
        r.name = format!("{}/{}", e.name, r.name);
    }
    rep.detail.clear();
    for x in e.expected {
        let actual = rep
            .record(&format!("{}/{}", e.name, x.check))
            .and_then(|r| r.get(x.key))
            .map(str::to_string);
        let rec = Record::new(format!("{}/expect/{}/{}", e.name, x.check, x.key), actual.as_deref() == Some(x.value))
            .field("actual", actual.as_deref().unwrap_or("missing"))
            .field("expected", x.value);
        rep.push(rec);
    }
    Ok(rep)
}

/// `check-all` over the whole catalog.
pub fn check_catalog(opts: &Options) -> Result<Report> {
    let mut rep = Report::default();
    for e in ENTRIES {
        rep.extend(check_entry(e, opts)?);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Format;

    #[test]
    fn required_entries_exist() {
        assert!(catalog().len() >= 8);
        for name in ["hexagon-antipodal", "octahedron-antipodal", "two-triangles-swap"] {
            assert!(entry(name).is_ok(), "{name}");
        }
        assert!(entry("klein-bottle").is_err());
        let mut names: Vec<&str> = catalog().iter().map(|e| e.name).collect();
        names.dedup();
        assert_eq!(names.len(), catalog().len());
    }

    #[test]
    fn every_entry_meets_its_expectations() {
        let rep = check_catalog(&Options::default()).unwrap();
        let failed: Vec<&str> = rep.records.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
        assert!(failed.is_empty(), "{failed:?}");
        let expectations: usize = catalog().iter().map(|e| e.expected.len()).sum();
        assert_eq!(rep.records.iter().filter(|r| r.name.contains("/expect/")).count(), expectations);
    }

    #[test]
    fn stale_expectations_fail() {
        let e = CatalogEntry {
            name: "hexagon-antipodal",
            source: entry("hexagon-antipodal").unwrap().source,
            expected: &[
                Expected {
                    check: "homology/hexagon",
                    key: "betti",
                    value: "1,2",
                    note: "",
                },
                Expected {
                    check: "homology/nowhere",
                    key: "betti",
                    value: "1",
                    note: "",
                },
            ],
        };
        let rep = check_entry(&e, &Options::default()).unwrap();
        let wrong = rep.record("hexagon-antipodal/expect/homology/hexagon/betti").unwrap();
        assert!(!wrong.passed);
        assert_eq!(wrong.get("actual"), Some("1,1"));
        assert_eq!(
            rep.record("hexagon-antipodal/expect/homology/nowhere/betti").unwrap().get("actual"),
            Some("missing")
        );
    }

    #[test]
    fn catalog_facts() {
        let rep = check_catalog(&Options::default()).unwrap();
        let get = |name: &str, key: &str| rep.record(name).and_then(|r| r.get(key)).map(str::to_string);
        assert_eq!(get("octahedron-antipodal/quotient/equators", "betti").as_deref(), Some("1,1,1"));
        let inv = get("two-triangles-swap/invariant/components", "dims").unwrap();
        assert_eq!(inv.split('/').nth(1).unwrap().split(',').last(), Some("3"));
        assert_eq!(rep.render(Format::Machine), check_catalog(&Options::default()).unwrap().render(Format::Machine));
    }
}
