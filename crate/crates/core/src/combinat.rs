//! The ℤ/2 counting formula for the pointed harmonic volume: ψ_ν, κ_ν and
//! its branch-basis form κ′_ν.

use std::fmt;
use std::ops::{Add, Neg};

use crate::error::{Error, Result};
use crate::homology::{f_to_branch_basis, to_f_basis, F2Tensor, HTensor};

/// An element of ½ℤ/ℤ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum HalfInt {
    #[default]
    Zero,
    Half,
}

impl HalfInt {
    pub fn from_parity(n: usize) -> Self {
        if n % 2 == 1 {
            HalfInt::Half
        } else {
            HalfInt::Zero
        }
    }

    pub fn is_half(self) -> bool {
        self == HalfInt::Half
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        if self == rhs {
            HalfInt::Zero
        } else {
            HalfInt::Half
        }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        self
    }
}

impl std::iter::Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> HalfInt {
        iter.fold(HalfInt::Zero, Add::add)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HalfInt::Zero => write!(f, "0"),
            HalfInt::Half => write!(f, "1/2"),
        }
    }
}

fn distinct(t: [usize; 3]) -> usize {
    let [i, j, k] = t;
    1 + usize::from(j != i) + usize::from(k != i && k != j)
}

/// ψ_ν(f_i⊗f_j⊗f_k): 1 iff exactly two of i, j, k are distinct.
pub fn psi(i: usize, j: usize, k: usize, nu: usize) -> Result<u8> {
    if let Some(&index) = [i, j, k].iter().find(|&&x| x == nu) {
        return Err(Error::IndexIsBase { index, nu });
    }
    Ok(u8::from(distinct([i, j, k]) == 2))
}

/// ½ · #{triples with exactly two distinct indices, none equal to `skip`}.
pub fn count_two_distinct(t: &F2Tensor, skip: Option<usize>) -> HalfInt {
    let n = t
        .terms()
        .iter()
        .filter(|p| skip.is_none_or(|s| !p.contains(&s)))
        .filter(|&&p| distinct(p) == 2)
        .count();
    HalfInt::from_parity(n)
}

/// κ_ν(A), counted in the f-basis with f_ν = 0.
pub fn kappa(a: &HTensor, nu: usize) -> Result<HalfInt> {
    a.check_in_k_tensor_h()?;
    Ok(count_two_distinct(&to_f_basis(a, nu)?, None))
}

/// κ′_ν(A), counted in the branch basis ignoring triples that touch ν.
pub fn kappa_prime(a: &HTensor, nu: usize) -> Result<HalfInt> {
    a.check_in_k_tensor_h()?;
    let branch = f_to_branch_basis(&to_f_basis(a, nu)?)?;
    Ok(count_two_distinct(&branch, Some(nu)))
}

/// Checks that ψ_ν vanishes on the relation Σ_{p≠ν} f_p = 0 in every slot,
/// for every choice of the other two indices.
pub fn relation_kill_holds(g: usize, nu: usize) -> bool {
    let idx: Vec<usize> = (0..2 * g + 2).filter(|&p| p != nu).collect();
    (0..3).all(|slot| {
        idx.iter().all(|&j| {
            idx.iter().all(|&k| {
                let s: u32 = idx
                    .iter()
                    .map(|&p| {
                        let t = match slot {
                            0 => [p, j, k],
                            1 => [j, p, k],
                            _ => [j, k, p],
                        };
                        psi(t[0], t[1], t[2], nu).expect("indices avoid ν") as u32
                    })
                    .sum();
                s % 2 == 0
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{F2Basis, Gen};
    use Gen::{X, Y};

    #[test]
    fn psi_examples() {
        assert_eq!(psi(1, 4, 1, 3).unwrap(), 1);
        assert_eq!(psi(1, 1, 1, 0).unwrap(), 0);
        assert_eq!(psi(1, 2, 3, 0).unwrap(), 0);
        assert_eq!(
            psi(1, 3, 1, 3),
            Err(Error::IndexIsBase { index: 3, nu: 3 })
        );
    }

    #[test]
    fn half_int_arithmetic() {
        use HalfInt::*;
        assert_eq!(Half + Half, Zero);
        assert_eq!(Half + Zero, Half);
        assert_eq!(-Half, Half);
        assert_eq!([Half, Half, Half].into_iter().sum::<HalfInt>(), Half);
    }

    #[test]
    fn kappa_examples() {
        let a = HTensor::monomial(2, &[X(1), X(2), Y(1)]).unwrap();
        assert_eq!(kappa(&a, 3).unwrap(), HalfInt::Half);
        assert_eq!(kappa_prime(&a, 3).unwrap(), HalfInt::Half);

        let b = HTensor::monomial(2, &[X(2), X(1), Y(2)]).unwrap();
        assert_eq!(kappa(&b, 5).unwrap(), HalfInt::Zero);
        // six two-index terms: (3,1,1),(3,1,3),(3,2,2),(3,2,3),(4,1,1),(4,2,2)
        let f = to_f_basis(&b, 5).unwrap();
        let n = f.terms().iter().filter(|&&p| distinct(p) == 2).count();
        assert_eq!(n, 6);

        let c = HTensor::monomial(2, &[X(1), Y(2), Y(1)]).unwrap();
        assert_eq!(kappa(&c, 0).unwrap(), HalfInt::Zero);
        assert_eq!(kappa_prime(&c, 0).unwrap(), HalfInt::Zero);

        assert_eq!(kappa_prime(&HTensor::zero(3, 3), 2).unwrap(), HalfInt::Zero);
    }

    #[test]
    fn kappa_rejects_outside_k() {
        let a = HTensor::monomial(2, &[X(1), Y(1), X(2)]).unwrap();
        assert!(matches!(kappa(&a, 0), Err(Error::NotInK { .. })));
        assert!(matches!(kappa_prime(&a, 0), Err(Error::NotInK { .. })));
    }

    #[test]
    fn relation_kill_exhaustive() {
        for g in 2..=4 {
            for nu in 0..2 * g + 2 {
                assert!(relation_kill_holds(g, nu), "g={g} ν={nu}");
            }
        }
    }

    #[test]
    fn count_skips_base_index() {
        let t = F2Tensor::from_triples(2, F2Basis::Branch, [[0, 0, 1], [1, 1, 2]]).unwrap();
        assert_eq!(count_two_distinct(&t, None), HalfInt::Zero);
        assert_eq!(count_two_distinct(&t, Some(0)), HalfInt::Half);
    }
}
