//! H₁(C; ℤ/2) in the f-basis and the branch basis e′₀…e′_{2g+1}.

use std::collections::BTreeSet;
use std::fmt;

use super::{check_genus, Gen, HTensor, HVector};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum F2Basis {
    /// f₀…f_{2g+1} with f_ν eliminated.
    F { nu: usize },
    /// e′₀…e′_{2g+1}.
    Branch,
}

/// A degree-3 tensor over ℤ/2, stored as the set of index triples with
/// coefficient one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Tensor {
    genus: usize,
    basis: F2Basis,
    terms: BTreeSet<[usize; 3]>,
}

impl F2Tensor {
    pub fn empty(genus: usize, basis: F2Basis) -> Self {
        Self {
            genus,
            basis,
            terms: BTreeSet::new(),
        }
    }

    pub fn from_triples(
        genus: usize,
        basis: F2Basis,
        triples: impl IntoIterator<Item = [usize; 3]>,
    ) -> Result<Self> {
        let mut t = Self::empty(genus, basis);
        for p in triples {
            for &i in &p {
                if i > 2 * genus + 1 {
                    return Err(Error::IndexOutOfRange {
                        what: "branch index",
                        value: i as i64,
                        min: 0,
                        max: 2 * genus as i64 + 1,
                    });
                }
                if let F2Basis::F { nu } = basis {
                    if i == nu {
                        return Err(Error::IndexIsBase { index: i, nu });
                    }
                }
            }
            t.toggle(p);
        }
        Ok(t)
    }

    /// Adds one triple mod 2.
    pub fn toggle(&mut self, p: [usize; 3]) {
        if !self.terms.remove(&p) {
            self.terms.insert(p);
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn basis(&self) -> F2Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeSet<[usize; 3]> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum over ℤ/2 (symmetric difference).
    pub fn add(&self, other: &F2Tensor) -> Result<F2Tensor> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        if self.basis != other.basis {
            return Err(Error::InvalidArgument(format!(
                "cannot add tensors in bases {:?} and {:?}",
                self.basis, other.basis
            )));
        }
        let terms = self
            .terms
            .symmetric_difference(&other.terms)
            .copied()
            .collect();
        Ok(F2Tensor {
            genus: self.genus,
            basis: self.basis,
            terms,
        })
    }

    /// Relabels every index through `sigma` (which must fix ν for f-basis
    /// tensors).
    pub fn relabel(&self, sigma: &[usize]) -> F2Tensor {
        let mut out = F2Tensor::empty(self.genus, self.basis);
        for p in &self.terms {
            out.toggle(p.map(|i| sigma[i]));
        }
        out
    }
}

impl fmt::Display for F2Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.basis {
            F2Basis::F { .. } => "f",
            F2Basis::Branch => "e",
        };
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|[p, q, r]| format!("{name}{p}⊗{name}{q}⊗{name}{r}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn check_nu(g: usize, nu: usize) -> Result<()> {
    if nu > 2 * g + 1 {
        return Err(Error::IndexOutOfRange {
            what: "base index ν",
            value: nu as i64,
            min: 0,
            max: 2 * g as i64 + 1,
        });
    }
    Ok(())
}

/// The f-indices of a generator mod 2 before removing f_ν:
/// x_i = f_{2i−1} + f_{2i}, y_i = f₀ + … + f_{2i−1}.
pub fn f_expansion(gen: Gen) -> Vec<usize> {
    match gen {
        Gen::X(i) => vec![2 * i - 1, 2 * i],
        Gen::Y(i) => (0..2 * i).collect(),
    }
}

/// Reduces A mod 2 and rewrites it in the f-basis with f_ν = 0.
pub fn to_f_basis(a: &HTensor, nu: usize) -> Result<F2Tensor> {
    let g = a.genus();
    check_genus(g)?;
    check_nu(g, nu)?;
    if a.degree() != 3 {
        return Err(Error::DegreeMismatch {
            expected: 3,
            got: a.degree(),
        });
    }
    let mut out = F2Tensor::empty(g, F2Basis::F { nu });
    for (factors, c) in a.terms() {
        if c.rem_euclid(2) == 0 {
            continue;
        }
        let slots: Vec<Vec<usize>> = factors
            .iter()
            .map(|&z| f_expansion(z).into_iter().filter(|&i| i != nu).collect())
            .collect();
        for &p in &slots[0] {
            for &q in &slots[1] {
                for &r in &slots[2] {
                    out.toggle([p, q, r]);
                }
            }
        }
    }
    Ok(out)
}

/// Slotwise substitution i ↦ {ν, i} for i ≠ ν and ν ↦ {ν}. On f-indices this
/// is f_i = e′_ν + e′_i; it is an involution on arbitrary triples.
pub(crate) fn substitute(terms: &BTreeSet<[usize; 3]>, nu: usize) -> BTreeSet<[usize; 3]> {
    let img = |i: usize| if i == nu { vec![nu] } else { vec![nu, i] };
    let mut out = BTreeSet::new();
    for &[p, q, r] in terms {
        for a in img(p) {
            for b in img(q) {
                for c in img(r) {
                    let t = [a, b, c];
                    if !out.remove(&t) {
                        out.insert(t);
                    }
                }
            }
        }
    }
    out
}

/// Rewrites an f-basis tensor in the branch basis via f_i = e′_ν + e′_i.
pub fn f_to_branch_basis(t: &F2Tensor) -> Result<F2Tensor> {
    let F2Basis::F { nu } = t.basis else {
        return Err(Error::InvalidArgument(
            "f_to_branch_basis expects an f-basis tensor".into(),
        ));
    };
    Ok(F2Tensor {
        genus: t.genus,
        basis: F2Basis::Branch,
        terms: substitute(&t.terms, nu),
    })
}

/// v(h mod 2) over the 2g+2 redundant generators e′₀…e′_{2g+1}.
pub fn v_map_redundant(h: &HVector) -> Vec<u8> {
    let g = h.genus();
    let mut out = vec![0u8; 2 * g + 2];
    for (c, &k) in h.coords().iter().enumerate() {
        if k.rem_euclid(2) == 1 {
            for i in f_expansion(Gen::from_coord(c, g)) {
                out[i] ^= 1;
            }
        }
    }
    out
}

/// v(h mod 2) in the basis e′₀…e′_{2g}, eliminating e′_{2g+1} = Σ_{i≤2g} e′_i.
pub fn v_map(h: &HVector) -> Vec<u8> {
    let mut out = v_map_redundant(h);
    if out.pop() == Some(1) {
        for x in out.iter_mut() {
            *x ^= 1;
        }
    }
    out
}

/// The 2g × (2g+1) matrix of v over ℤ/2, rows indexed by x₁…x_g, y₁…y_g.
pub fn v_matrix(g: usize) -> Vec<Vec<u8>> {
    Gen::all(g).map(|z| v_map(&HVector::basis(g, z))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::linalg::rank_f2;
    use Gen::{X, Y};

    fn set(v: &[[usize; 3]]) -> BTreeSet<[usize; 3]> {
        v.iter().copied().collect()
    }

    #[test]
    fn f_basis_examples() {
        let a = HTensor::monomial(2, &[X(1), X(2), Y(1)]).unwrap();
        let t = to_f_basis(&a, 3).unwrap();
        assert_eq!(t.terms(), &set(&[[1, 4, 0], [1, 4, 1], [2, 4, 0], [2, 4, 1]]));

        let a = HTensor::monomial(2, &[X(1), Y(2), Y(1)]).unwrap();
        let t = to_f_basis(&a, 0).unwrap();
        assert_eq!(
            t.terms(),
            &set(&[[1, 1, 1], [1, 2, 1], [1, 3, 1], [2, 1, 1], [2, 2, 1], [2, 3, 1]])
        );
        assert!(to_f_basis(&a.scale(2), 0).unwrap().is_empty());
        assert!(to_f_basis(&a, 6).is_err());
    }

    #[test]
    fn eight_term_expansion() {
        let t = F2Tensor::from_triples(2, F2Basis::F { nu: 0 }, [[1, 2, 3]]).unwrap();
        let b = f_to_branch_basis(&t).unwrap();
        assert_eq!(
            b.terms(),
            &set(&[
                [1, 2, 3],
                [1, 2, 0],
                [1, 0, 3],
                [1, 0, 0],
                [0, 2, 3],
                [0, 2, 0],
                [0, 0, 3],
                [0, 0, 0]
            ])
        );
        assert!(f_to_branch_basis(&F2Tensor::empty(2, F2Basis::F { nu: 1 }))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn substitution_is_an_involution() {
        let terms = set(&[[1, 2, 3], [3, 3, 1], [4, 0, 4], [5, 5, 5]]);
        for nu in 0..6 {
            let once = substitute(&terms, nu);
            assert_eq!(substitute(&once, nu), terms);
        }
    }

    #[test]
    fn v_examples() {
        let g = 2;
        assert_eq!(v_map(&HVector::basis(g, X(1))), vec![0, 1, 1, 0, 0]);
        assert_eq!(v_map(&HVector::basis(g, Y(1))), vec![1, 1, 0, 0, 0]);
        // x_g touches e′_{2g}, still inside the basis
        assert_eq!(v_map(&HVector::basis(g, X(2))), vec![0, 0, 0, 1, 1]);
    }

    #[test]
    fn v_injective_and_augmented() {
        for g in 2..=6 {
            assert_eq!(rank_f2(&v_matrix(g)), 2 * g, "g={g}");
            for z in Gen::all(g) {
                let r = v_map_redundant(&HVector::basis(g, z));
                assert_eq!(r.iter().map(|&b| b as usize).sum::<usize>() % 2, 0);
            }
        }
    }

    #[test]
    fn f_basis_is_linear() {
        let a = HTensor::monomial(3, &[X(1), X(2), Y(1)]).unwrap();
        let b = HTensor::from_terms(3, 3, [(3, vec![Y(3), X(2), Y(1)]), (1, vec![X(1), X(2), Y(1)])])
            .unwrap();
        for nu in 0..8 {
            let lhs = to_f_basis(&a.add(&b).unwrap(), nu).unwrap();
            let rhs = to_f_basis(&a, nu).unwrap().add(&to_f_basis(&b, nu).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
