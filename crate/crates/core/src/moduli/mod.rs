//! Orbit dimension through the infinitesimal action, and sampling of the
//! parameter space.
//!
//! The moduli dimension is `31 − 3 = 28` when the `SL₂` stabilizer of a
//! point is finite, i.e. when the four generators below act with rank 4.

mod sampling;

use crate::binary_forms::{BinaryForm, Var};
use crate::error::Result;
use crate::field::{Field, Gq};
use crate::poly::rank;
use crate::surface::{block_degree, CoefficientPoint, NormalForm, POINT_DIMENSION};

pub use sampling::{
    random_rational, sample_family, sample_normal_form, stratum_stats, stratum_stats_with, Family, StratumCounts,
};

/// A generator of `gl₂` acting on the blocks `q_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `x ∂/∂y`
    E,
    /// `y ∂/∂x`
    F,
    /// `x ∂/∂x − y ∂/∂y`
    H,
    /// Multiplication of `q_k` by its weight `10 − 2k`.
    Grading,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::E, Generator::F, Generator::H, Generator::Grading];

    pub fn apply_to_form<K: Field>(&self, k: usize, q: &BinaryForm<K>) -> BinaryForm<K> {
        let d = q.degree();
        let lift = |f: BinaryForm<K>, deg: usize| if f.degree() == deg { f } else { BinaryForm::zero(deg) };
        match self {
            Generator::E => lift(q.derivative(Var::Y).mul(&BinaryForm::x()), d),
            Generator::F => lift(q.derivative(Var::X).mul(&BinaryForm::y()), d),
            Generator::H => {
                let dx = lift(q.derivative(Var::X).mul(&BinaryForm::x()), d);
                let dy = lift(q.derivative(Var::Y).mul(&BinaryForm::y()), d);
                dx.sub(&dy)
            }
            Generator::Grading => q.scale(&K::from_i64(block_degree(k) as i64)),
        }
    }

    pub fn apply<K: Field>(&self, nf: &NormalForm<K>) -> NormalForm<K> {
        let blocks = std::array::from_fn(|k| self.apply_to_form(k, nf.q(k)));
        NormalForm::new(blocks).expect("generators preserve block degrees")
    }
}

fn coordinates<K: Field>(nf: &NormalForm<K>) -> Vec<K> {
    (0..=3).rev().flat_map(|k| nf.q(k).coeffs().iter().cloned()).collect()
}

/// The 32×4 matrix whose column `c` is generator `c` applied to `p`, in the
/// coordinate order of [`CoefficientPoint`].
pub fn infinitesimal_action_matrix<K: Field>(p: &CoefficientPoint<K>) -> Vec<Vec<K>> {
    let nf = p.to_normal_form();
    let columns: Vec<Vec<K>> = Generator::ALL.iter().map(|g| coordinates(&g.apply(&nf))).collect();
    (0..POINT_DIMENSION).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    pub orbit_dim: usize,
    /// `31 − (rank − 1)`: the projective parameter space modulo `SL₂`.
    pub moduli_dim_estimate: usize,
    /// `32 − rank`: the affine parameter space modulo `GL₂`.
    pub moduli_dim_affine: usize,
    pub stabilizer_finite: bool,
}

impl RankReport {
    pub fn from_rank(rank: usize) -> Self {
        RankReport {
            rank,
            orbit_dim: rank,
            moduli_dim_estimate: (POINT_DIMENSION - 1) - rank.saturating_sub(1),
            moduli_dim_affine: POINT_DIMENSION - rank,
            stabilizer_finite: rank == 4,
        }
    }
}

pub fn orbit_rank(p: &CoefficientPoint<Gq>) -> Result<RankReport> {
    Ok(RankReport::from_rank(rank(infinitesimal_action_matrix(p))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::tests::nf;
    use crate::surface::point_index;

    fn point(s: &str) -> CoefficientPoint<Gq> {
        CoefficientPoint::from_normal_form(&nf(s)).unwrap()
    }

    #[test]
    fn fermat_columns() {
        let m = infinitesimal_action_matrix(&point("z^5 + x^10 + y^10"));
        let x10 = point_index(0, 10, 0).unwrap();
        let y10 = point_index(0, 0, 10).unwrap();
        let xy9 = point_index(0, 1, 9).unwrap();
        let x9y = point_index(0, 9, 1).unwrap();
        assert_eq!(m[x10][2], Gq::from(10));
        assert_eq!(m[y10][2], Gq::from(-10));
        assert_eq!(m[xy9][0], Gq::from(10));
        assert_eq!(m[x9y][1], Gq::from(10));
        assert_eq!((m[x10][3].clone(), m[y10][3].clone()), (Gq::from(10), Gq::from(10)));
        let nonzero = m.iter().flatten().filter(|c| !c.is_zero()).count();
        assert_eq!(nonzero, 6);
        assert_eq!(orbit_rank(&point("z^5 + x^10 + y^10")).unwrap(), RankReport::from_rank(4));
    }

    #[test]
    fn single_monomial_has_rank_two() {
        let m = infinitesimal_action_matrix(&point("z^5 + x^10"));
        assert!(m.iter().all(|row| row[0].is_zero()));
        let r = orbit_rank(&point("z^5 + x^10")).unwrap();
        assert_eq!((r.rank, r.stabilizer_finite), (2, false));
    }

    #[test]
    fn dimension_bookkeeping() {
        let r = RankReport::from_rank(4);
        assert_eq!((r.moduli_dim_estimate, r.moduli_dim_affine), (28, 28));
        assert_eq!(31 - (r.rank - 1), r.moduli_dim_estimate);
    }

    #[test]
    fn matrix_is_linear_in_the_point() {
        let p = point("z^5 + x^3*y*z^3 - 2*x^6*z^2 + x^10 + 3*x*y^9");
        let scaled = CoefficientPoint::new(p.entries().iter().map(|c| c.clone() * Gq::ratio(-3, 7)).collect()).unwrap();
        let a = infinitesimal_action_matrix(&p);
        let b = infinitesimal_action_matrix(&scaled);
        for (ra, rb) in a.iter().zip(&b) {
            for (ca, cb) in ra.iter().zip(rb) {
                assert_eq!(ca.clone() * Gq::ratio(-3, 7), *cb);
            }
        }
    }
}
