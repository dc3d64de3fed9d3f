//! The obstruction value `sum_j eps_j f^4(gamma_j)` in `I^{⊗4}`: the
//! image of the fourth cup power of the canonical class under the map from
//! four-cochains onto `N / J N`.

use crate::delta_complex::{klein_bottle_squared, DeltaComplex};
use crate::error::Result;
use crate::group_ring::{IdealTensor, PairElement};
use crate::groupring_linalg::{row_reduce, sigma, EpsilonSign};
use crate::twisted_cohomology::{cf_one_cochain, coboundary_matrix, cup_power4};

/// `sum_j eps_j f^4(gamma_j)` for a complex and signs.
pub fn obstruction_value_with(
    x: &DeltaComplex<PairElement>,
    eps: &EpsilonSign,
) -> Result<IdealTensor> {
    let f4 = cup_power4(x, &cf_one_cochain(x))?;
    Ok(sigma(eps, &f4)?.unwrap_or_else(|| IdealTensor::zero(4)))
}

/// The obstruction value on `K×K`, with signs read off the reduced matrix.
pub fn obstruction_value() -> Result<IdealTensor> {
    let x = klein_bottle_squared();
    let (reduced, _) = row_reduce(&coboundary_matrix(&x, 3)?)?;
    obstruction_value_with(&x, &EpsilonSign::from_reduced(&reduced)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstruction::{reduce_full_ring, Outcome};
    use crate::twisted_cohomology::{as_tensor_cochain, cup};

    const GOLDEN: &str = include_str!("../../fixtures/obstruction_value.json");

    /// Same value through the iterated cup product and the congruence signs.
    fn step_oracle() -> IdealTensor {
        let x = klein_bottle_squared();
        let f = as_tensor_cochain(&cf_one_cochain(&x));
        let mut acc = f.clone();
        for _ in 0..3 {
            acc = cup(&x, &acc, &f).unwrap();
        }
        let eps = EpsilonSign::from_congruence(24);
        let mut out = IdealTensor::zero(4);
        for (j, v) in acc.values() {
            out.add_scaled(v, eps.get(j));
        }
        out
    }

    #[test]
    fn matches_step_oracle_and_golden() {
        let v = obstruction_value().unwrap();
        assert_eq!(v, step_oracle());
        let rows: Vec<Vec<i64>> = serde_json::from_str(GOLDEN).unwrap();
        assert_eq!(v, IdealTensor::from_rows(4, &rows).unwrap());
    }

    #[test]
    fn vanishes_in_the_full_tensor_power() {
        let v = obstruction_value().unwrap().to_group_tensor();
        let cert = reduce_full_ring(v.terms(), 4, 8).unwrap();
        assert_eq!(cert.outcome, Outcome::Zero, "{:?}", cert.note);
    }
}
