//! Basis-wise values of I_{Q₀} and of I_ν on the canonical basis of K⊗H.
//!
//! Two rows here are not in the usual printed tables. For
//! (x_i⊗y_i − x₁⊗y₁)⊗y_k with 1 < k < i the value of I_{Q₀} is (g+1)μ and
//! hence I_ν = 1/2 for every ν; this follows from the closed form of
//! ∫_{b_k}α_iβ_i and agrees with κ_ν and with quadrature. The fourth
//! case-(2) row is read with third factor y₁.

use crate::combinat::HalfInt;
use crate::homology::{Gen, KCase};

use super::{Curve, QmodZ};

/// I_{Q₀}(β ⊗ third) for a basis element β of K.
pub fn i_q0_table(curve: &Curve, case: &KCase, third: Gen) -> QmodZ {
    let g = curve.genus() as i64;
    let m = |k: i64| curve.mu_multiple(k);
    let k = third.index();
    match *case {
        KCase::Mixed { first, second } => {
            if k == second.index() {
                // I(a⊗b⊗c) ≡ −I(b⊗a⊗c)
                return -i_q0_table(
                    curve,
                    &KCase::Mixed {
                        first: second,
                        second: first,
                    },
                    third,
                );
            }
            if k != first.index() || third == first {
                return QmodZ::zero();
            }
            let (i, j) = (first.index() as i64, second.index() as i64);
            match (first, second) {
                (Gen::X(_), Gen::X(_)) => m(1),
                (Gen::X(_), Gen::Y(_)) if i < j => m(g - j + 1),
                (Gen::X(_), Gen::Y(_)) => m(2 * g - j + 2),
                (Gen::Y(_), Gen::X(_)) => m(2 * g + 1),
                (Gen::Y(_), Gen::Y(_)) if i < j => m(g + j + 1),
                (Gen::Y(_), Gen::Y(_)) => m(j),
            }
        }
        KCase::TraceDiff { i } => match third {
            Gen::X(k) if k == i => m(g + 2),
            Gen::Y(k) if k == i => m(2 * g - i as i64 + 2),
            Gen::X(1) => m(g),
            Gen::Y(1) => m(g + 2),
            Gen::Y(k) if 1 < k && k < i => m(g + 1),
            _ => QmodZ::zero(),
        },
        KCase::Symmetric { .. } => QmodZ::zero(),
        KCase::Square { gen } => QmodZ::from(square_value(gen, third)),
    }
}

fn square_value(gen: Gen, third: Gen) -> HalfInt {
    if third == gen.dual() {
        HalfInt::Half
    } else {
        HalfInt::Zero
    }
}

/// I_ν(β ⊗ third) read off the list of basis elements where it equals 1/2.
pub fn theorem_table(case: &KCase, third: Gen, nu: usize) -> HalfInt {
    let half_if = |b: bool| if b { HalfInt::Half } else { HalfInt::Zero };
    let pair_nu = |j: usize| nu == 2 * j - 1 || nu == 2 * j;
    // the condition on rows with one x and two y (or one y and two x) letters
    let cond = |i: usize, j: usize| (i < j && nu > 2 * j - 1) || (i > j && nu <= 2 * j - 1);
    match *case {
        KCase::Mixed { first, second } => {
            let k = third.index();
            let (ia, ib) = (first.index(), second.index());
            if k != ia && k != ib {
                return HalfInt::Zero;
            }
            let other = if k == ia { ib } else { ia };
            match (first, second, third) {
                (Gen::X(_), Gen::X(_), Gen::Y(_)) => half_if(pair_nu(other)),
                (Gen::Y(_), Gen::Y(_), Gen::X(_)) => half_if(cond(k, other)),
                (Gen::X(_), Gen::Y(_), Gen::Y(_)) if ia == k => half_if(cond(k, other)),
                (Gen::Y(_), Gen::X(_), Gen::Y(_)) if ib == k => half_if(cond(k, other)),
                (Gen::Y(_), Gen::X(_), Gen::X(_)) if ia == k => half_if(pair_nu(other)),
                (Gen::X(_), Gen::Y(_), Gen::X(_)) if ib == k => half_if(pair_nu(other)),
                _ => HalfInt::Zero,
            }
        }
        KCase::TraceDiff { i } => match third {
            Gen::X(k) if k == i => half_if(!pair_nu(i)),
            Gen::Y(k) if k == i => half_if(nu <= 2 * i - 1),
            Gen::X(1) => half_if(!pair_nu(1)),
            Gen::Y(1) => half_if(nu > 1),
            Gen::Y(k) if 1 < k && k < i => HalfInt::Half,
            _ => HalfInt::Zero,
        },
        KCase::Symmetric { .. } => HalfInt::Zero,
        KCase::Square { gen } => square_value(gen, third),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Gen::{X, Y};

    #[test]
    fn proposition_spot_values() {
        let c = Curve::new(2).unwrap();
        let mixed = |a, b| KCase::Mixed { first: a, second: b };
        assert_eq!(i_q0_table(&c, &mixed(X(1), X(2)), Y(1)), c.mu_multiple(1));
        assert_eq!(i_q0_table(&c, &mixed(X(1), Y(2)), Y(1)), c.mu_multiple(1));
        assert!(i_q0_table(&c, &KCase::Symmetric { i: 1 }, Y(2)).is_zero());
        assert_eq!(
            i_q0_table(&c, &KCase::Square { gen: X(1) }, Y(1)),
            QmodZ::half()
        );
        // antisymmetric reduction: x₂⊗x₁⊗y₁ = −(x₁⊗x₂⊗y₁)
        assert_eq!(i_q0_table(&c, &mixed(X(2), X(1)), Y(1)), c.mu_multiple(-1));
    }

    #[test]
    fn theorem_rows_at_genus_two() {
        let mixed = |a, b| KCase::Mixed { first: a, second: b };
        assert_eq!(theorem_table(&mixed(X(1), X(2)), Y(1), 3), HalfInt::Half);
        assert_eq!(theorem_table(&mixed(X(1), X(2)), Y(1), 4), HalfInt::Half);
        assert_eq!(theorem_table(&mixed(X(1), X(2)), Y(1), 1), HalfInt::Zero);
        assert_eq!(
            theorem_table(&KCase::TraceDiff { i: 2 }, X(2), 4),
            HalfInt::Zero
        );
        assert_eq!(
            theorem_table(&KCase::TraceDiff { i: 2 }, X(2), 1),
            HalfInt::Half
        );
    }

    #[test]
    fn composed_equals_table_on_basis() {
        use crate::homology::k_basis;
        for g in 2..=5 {
            let c = Curve::new(g).unwrap();
            for e in k_basis(g).unwrap() {
                for third in Gen::all(g) {
                    let a = e.tensor.tensor_gen(third);
                    for nu in 0..2 * g + 2 {
                        let composed = i_q0_table(&c, &e.case, third) + c.lambda_nu(&a, nu).unwrap();
                        let table = theorem_table(&e.case, third, nu);
                        assert_eq!(
                            composed,
                            QmodZ::from(table),
                            "g={g} ν={nu} {}⊗{third}",
                            e.case
                        );
                    }
                }
            }
        }
    }
}
