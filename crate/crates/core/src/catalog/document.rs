use std::sync::Arc;

use crate::cellmodel::{CellularMap, Chain, ClosedSubcomplex, Complex, GroupAction, PullbackSquare};
use crate::equivariant::FiltrationData;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ComplexDecl {
    pub name: String,
    pub complex: Arc<Complex>,
}

#[derive(Clone, Debug)]
pub struct SubcomplexDecl {
    pub name: String,
    pub complex: String,
    pub sub: ClosedSubcomplex,
}

#[derive(Clone, Debug)]
pub struct ActionDecl {
    pub name: String,
    pub complex: String,
    /// The generating vertex permutation.
    pub generator: Vec<u32>,
    pub action: GroupAction,
}

#[derive(Clone, Debug)]
pub struct MapDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub map: CellularMap,
}

#[derive(Clone, Debug)]
pub struct SquareDecl {
    pub name: String,
    pub map: String,
    pub over: String,
    pub square: PullbackSquare,
}

#[derive(Clone, Debug)]
pub struct FiltrationDecl {
    pub name: String,
    pub complex: String,
    /// `None` means the trivial action.
    pub action: Option<String>,
    pub data: FiltrationData,
}

#[derive(Clone, Debug)]
pub struct ChainDecl {
    pub name: String,
    pub complex: String,
    pub chain: Chain,
}

/// A parsed document. Every reference between entities has been resolved,
/// and names are unique across all kinds.
#[derive(Clone, Debug, Default)]
pub struct Document {
    pub complexes: Vec<ComplexDecl>,
    pub subcomplexes: Vec<SubcomplexDecl>,
    pub actions: Vec<ActionDecl>,
    pub maps: Vec<MapDecl>,
    pub squares: Vec<SquareDecl>,
    pub filtrations: Vec<FiltrationDecl>,
    pub chains: Vec<ChainDecl>,
}

fn lookup<'a, T>(items: &'a [T], name: &str, kind: &str, key: impl Fn(&T) -> &str) -> Result<&'a T> {
    items
        .iter()
        .find(|t| key(t) == name)
        .ok_or_else(|| Error::Input(format!("no {kind} named `{name}`")))
}

impl Document {
    pub fn complex(&self, name: &str) -> Result<&ComplexDecl> {
        lookup(&self.complexes, name, "complex", |d| &d.name)
    }

    pub fn subcomplex(&self, name: &str) -> Result<&SubcomplexDecl> {
        lookup(&self.subcomplexes, name, "subcomplex", |d| &d.name)
    }

    pub fn action(&self, name: &str) -> Result<&ActionDecl> {
        lookup(&self.actions, name, "action", |d| &d.name)
    }

    pub fn map(&self, name: &str) -> Result<&MapDecl> {
        lookup(&self.maps, name, "map", |d| &d.name)
    }

    pub fn square(&self, name: &str) -> Result<&SquareDecl> {
        lookup(&self.squares, name, "square", |d| &d.name)
    }

    pub fn filtration(&self, name: &str) -> Result<&FiltrationDecl> {
        lookup(&self.filtrations, name, "filtration", |d| &d.name)
    }

    pub fn chain(&self, name: &str) -> Result<&ChainDecl> {
        lookup(&self.chains, name, "chain", |d| &d.name)
    }

    /// Every declared name, in declaration-kind order.
    pub fn names(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.complexes.iter().map(|d| d.name.as_str()).collect();
        v.extend(self.subcomplexes.iter().map(|d| d.name.as_str()));
        v.extend(self.actions.iter().map(|d| d.name.as_str()));
        v.extend(self.maps.iter().map(|d| d.name.as_str()));
        v.extend(self.squares.iter().map(|d| d.name.as_str()));
        v.extend(self.filtrations.iter().map(|d| d.name.as_str()));
        v.extend(self.chains.iter().map(|d| d.name.as_str()));
        v
    }

    /// The filtration to use when none is named: the only one, if unique.
    pub fn default_filtration(&self, name: Option<&str>) -> Result<&FiltrationDecl> {
        match name {
            Some(n) => self.filtration(n),
            None => match self.filtrations.as_slice() {
                [f] => Ok(f),
                [] => Err(Error::Input("document declares no filtration".into())),
                _ => Err(Error::Input("document declares several filtrations; pass --filtration".into())),
            },
        }
    }
}
