use crate::cellmodel::Chain;
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector, Solver, Subspace};

use super::FiltrationData;

/// Solves `(1+σ) c' = c + c|X^G` with `c' ∈ N_{α+1} C_k`, factored once per
/// `(k, α)` so many chains can be split quickly.
#[derive(Clone, Debug)]
pub struct Decomposer {
    k: usize,
    alpha: i32,
    one_plus: Gf2Matrix,
    fixed_layer: Gf2Vector,
    invariants: Subspace,
    next_level: Subspace,
    /// Coordinates in the basis of `N_{α+1}`; maps back through `basis`.
    basis: Gf2Matrix,
    solver: Solver,
}

impl Decomposer {
    pub fn new(fd: &FiltrationData, k: usize, alpha: i32) -> Result<Self> {
        let g = fd.action().sigma_index()?;
        let one_plus = fd.action().one_plus(g, k);
        let next_level = fd.level(k, alpha + 1);
        let basis = next_level.basis_matrix().transpose();
        let solver = Solver::new(&one_plus.mul(&basis));
        Ok(Self {
            k,
            alpha,
            fixed_layer: fd.action().fixed_subcomplex().layer(k),
            invariants: fd.invariant_subspace(k, alpha),
            next_level,
            one_plus,
            basis,
            solver,
        })
    }

    /// `c'` with `c = c|X^G + (1+σ)c'`; the identity is re-checked before returning.
    pub fn decompose(&self, c: &Gf2Vector) -> Result<Gf2Vector> {
        if c.len() != self.fixed_layer.len() {
            return Err(Error::DimensionMismatch(format!(
                "chain has length {}, C_{} has {}",
                c.len(),
                self.k,
                self.fixed_layer.len()
            )));
        }
        if !self.invariants.contains(c) {
            return Err(Error::Precondition(format!(
                "chain is not an invariant member of N_{} C_{}",
                self.alpha, self.k
            )));
        }
        let rhs = c.and_not(&self.fixed_layer);
        let coords = self.solver.solve(&rhs).ok_or_else(|| Error::Exactness {
            message: format!(
                "no c' in N_{} C_{} with (1+σ)c' = c - c|X^G",
                self.alpha + 1,
                self.k
            ),
            witness: rhs.ones().collect(),
        })?;
        let solution = self.basis.mul_vec(&coords);
        let mut back = self.one_plus.mul_vec(&solution);
        back.xor_assign(&c.and(&self.fixed_layer));
        if &back != c || !self.next_level.contains(&solution) {
            return Err(Error::Exactness {
                message: "decomposition failed to re-verify".into(),
                witness: rhs.ones().collect(),
            });
        }
        Ok(solution)
    }
}

/// Splits an invariant chain `c ∈ (N_α C_k)^G` as `c|X^G + (1+σ)c'`.
pub fn decompose_invariant_chain(fd: &FiltrationData, c: &Chain, alpha: i32) -> Result<Chain> {
    let k = usize::try_from(c.k())
        .map_err(|_| Error::Input("chains of negative dimension have no decomposition".into()))?;
    if k >= fd.len() {
        return Err(Error::DimensionMismatch(format!("no {k}-cells in the complex")));
    }
    let solution = Decomposer::new(fd, k, alpha)?.decompose(c.support())?;
    Ok(Chain::from_vector(c.k(), solution))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellmodel::shapes;

    fn hexagon_fd() -> FiltrationData {
        let (x, act) = shapes::hexagon_antipodal();
        let cycle = Gf2Vector::from_indices(6, 0..6);
        FiltrationData::new(
            act,
            vec![
                vec![Subspace::zero(6), Subspace::full(6)],
                vec![Subspace::zero(6), Subspace::span(6, &[cycle]), Subspace::full(x.count(1))],
            ],
        )
        .unwrap()
    }

    #[test]
    fn zero_decomposes_to_zero() {
        let fd = hexagon_fd();
        let c = Chain::zero(fd.complex(), 1);
        assert!(decompose_invariant_chain(&fd, &c, 0).unwrap().is_zero());
    }

    #[test]
    fn hexagon_cycle_is_half_plus_its_image() {
        let fd = hexagon_fd();
        let x = fd.complex().clone();
        let c = Chain::from_cells(&x, 1, 0..6);
        let half = decompose_invariant_chain(&fd, &c, -1).unwrap();
        assert_eq!(half.len(), 3);
        let sigma = fd.action().act(1, &half);
        assert_eq!(half.add(&sigma), c);
        // Three consecutive edges form a path.
        assert_eq!(x.boundary(&half).len(), 2);
    }

    #[test]
    fn square_reflection_cycle() {
        let (x, act) = shapes::square_reflection();
        let fd = FiltrationData::pure_default(act);
        let c = Chain::from_cells(&x, 1, 0..4);
        let half = decompose_invariant_chain(&fd, &c, -1).unwrap();
        assert_eq!(half.len(), 2);
        assert!(fd.action().fixed_subcomplex().layer(1).is_zero());
    }

    #[test]
    fn non_invariant_rejected() {
        let fd = hexagon_fd();
        let c = Chain::from_cells(fd.complex(), 1, [0]);
        assert!(matches!(decompose_invariant_chain(&fd, &c, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn missing_transfer_reported_with_witness() {
        let (x, act) = shapes::octahedron_antipodal();
        let fd = FiltrationData::pure_default(act);
        let total = Chain::from_cells(&x, 2, 0..8);
        // N_{-1} C_2 holds only the sphere itself, and (1+σ) kills it.
        let err = decompose_invariant_chain(&fd, &total, -2).unwrap_err();
        match err {
            Error::Exactness { witness, .. } => assert_eq!(witness.len(), 8),
            other => panic!("unexpected {other:?}"),
        }
    }
}
