//! H = H₁(C; ℤ) in the symplectic basis {x_i, y_i}, tensors over it, the
//! subgroup K ⊂ H⊗H, and the ℤ/2 reductions used by the counting formula.

mod f2;
pub mod linalg;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::Rational;

pub use f2::{
    f_expansion, f_to_branch_basis, to_f_basis, v_map, v_map_redundant, v_matrix, F2Basis,
    F2Tensor,
};

/// A symplectic basis element, 1-based: `X(i)` is x_i, `Y(i)` is y_i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    X(usize),
    Y(usize),
}

impl Gen {
    pub fn index(self) -> usize {
        match self {
            Gen::X(i) | Gen::Y(i) => i,
        }
    }

    pub fn is_x(self) -> bool {
        matches!(self, Gen::X(_))
    }

    /// Position in the coordinate order (x₁…x_g, y₁…y_g).
    pub fn coord(self, g: usize) -> usize {
        match self {
            Gen::X(i) => i - 1,
            Gen::Y(i) => g + i - 1,
        }
    }

    pub fn from_coord(c: usize, g: usize) -> Gen {
        if c < g {
            Gen::X(c + 1)
        } else {
            Gen::Y(c - g + 1)
        }
    }

    /// The other letter with the same index.
    pub fn dual(self) -> Gen {
        match self {
            Gen::X(i) => Gen::Y(i),
            Gen::Y(i) => Gen::X(i),
        }
    }

    /// All 2g generators in coordinate order.
    pub fn all(g: usize) -> impl Iterator<Item = Gen> {
        (0..2 * g).map(move |c| Gen::from_coord(c, g))
    }

    fn check(self, g: usize) -> Result<()> {
        let i = self.index();
        if i == 0 || i > g {
            return Err(Error::IndexOutOfRange {
                what: "generator index",
                value: i as i64,
                min: 1,
                max: g as i64,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::X(i) => write!(f, "x{i}"),
            Gen::Y(i) => write!(f, "y{i}"),
        }
    }
}

/// Intersection number of two generators; (x_i, y_i) = 1.
pub fn pair(a: Gen, b: Gen) -> i64 {
    match (a, b) {
        (Gen::X(i), Gen::Y(j)) if i == j => 1,
        (Gen::Y(i), Gen::X(j)) if i == j => -1,
        _ => 0,
    }
}

pub fn check_genus(g: usize) -> Result<()> {
    if g < 2 {
        Err(Error::InvalidGenus(g))
    } else {
        Ok(())
    }
}

/// An element of H with integer coordinates (x₁…x_g, y₁…y_g).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HVector {
    genus: usize,
    coords: Vec<i64>,
}

impl HVector {
    pub fn new(genus: usize, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != 2 * genus {
            return Err(Error::DegreeMismatch {
                expected: 2 * genus,
                got: coords.len(),
            });
        }
        Ok(Self { genus, coords })
    }

    pub fn basis(genus: usize, gen: Gen) -> Self {
        let mut coords = vec![0; 2 * genus];
        coords[gen.coord(genus)] = 1;
        Self { genus, coords }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }
}

/// Σ_i (u_{x_i} v_{y_i} − u_{y_i} v_{x_i}).
pub fn intersection_pairing(u: &HVector, v: &HVector) -> Result<i64> {
    if u.genus != v.genus {
        return Err(Error::GenusMismatch(u.genus, v.genus));
    }
    let g = u.genus;
    Ok((0..g)
        .map(|i| u.coords[i] * v.coords[g + i] - u.coords[g + i] * v.coords[i])
        .sum())
}

/// A sparse integer tensor of degree 1, 2 or 3 over the symplectic basis.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HTensor {
    genus: usize,
    degree: usize,
    terms: BTreeMap<Vec<Gen>, i64>,
}

impl HTensor {
    pub fn zero(genus: usize, degree: usize) -> Self {
        Self {
            genus,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(genus: usize, factors: &[Gen]) -> Result<Self> {
        Self::from_terms(genus, factors.len(), [(1, factors.to_vec())])
    }

    pub fn from_terms(
        genus: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (i64, Vec<Gen>)>,
    ) -> Result<Self> {
        if !(1..=3).contains(&degree) {
            return Err(Error::InvalidArgument(format!(
                "tensor degree must be 1, 2 or 3, got {degree}"
            )));
        }
        let mut t = Self::zero(genus, degree);
        for (c, factors) in terms {
            if factors.len() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: factors.len(),
                });
            }
            for f in &factors {
                f.check(genus)?;
            }
            t.add_term(c, factors);
        }
        Ok(t)
    }

    fn add_term(&mut self, c: i64, factors: Vec<Gen>) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(factors).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Gen], i64)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, factors: &[Gen]) -> i64 {
        self.terms.get(factors).copied().unwrap_or(0)
    }

    fn compatible(&self, other: &HTensor) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &HTensor) -> Result<HTensor> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (k, &v) in &other.terms {
            out.add_term(v, k.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HTensor) -> Result<HTensor> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> HTensor {
        let mut out = HTensor::zero(self.genus, self.degree);
        if k != 0 {
            for (f, &c) in &self.terms {
                out.terms.insert(f.clone(), c * k);
            }
        }
        out
    }

    /// `self ⊗ gen`, raising the degree by one.
    pub fn tensor_gen(&self, gen: Gen) -> HTensor {
        let mut out = HTensor::zero(self.genus, self.degree + 1);
        for (f, &c) in &self.terms {
            let mut f = f.clone();
            f.push(gen);
            out.terms.insert(f, c);
        }
        out
    }

    /// Exchanges the first two tensor factors of every term.
    pub fn swap_first_two(&self) -> HTensor {
        let mut out = HTensor::zero(self.genus, self.degree);
        for (f, &c) in &self.terms {
            let mut f = f.clone();
            if f.len() >= 2 {
                f.swap(0, 1);
            }
            out.add_term(c, f);
        }
        out
    }

    /// Σ coeff · (first, second) for a degree-2 tensor.
    pub fn pairing_contraction(&self) -> i64 {
        self.terms
            .iter()
            .map(|(f, &c)| c * pair(f[0], f[1]))
            .sum()
    }

    /// Splits a degree-3 tensor as Σ_c A_c ⊗ c by its last factor.
    pub fn slices(&self) -> BTreeMap<Gen, HTensor> {
        let mut out: BTreeMap<Gen, HTensor> = BTreeMap::new();
        for (f, &c) in &self.terms {
            let (last, head) = f.split_last().expect("degree ≥ 1");
            out.entry(*last)
                .or_insert_with(|| HTensor::zero(self.genus, self.degree - 1))
                .add_term(c, head.to_vec());
        }
        out
    }

    /// Checks that a degree-3 tensor lies in K⊗H: every slice must pair to zero.
    pub fn check_in_k_tensor_h(&self) -> Result<()> {
        if self.degree != 3 {
            return Err(Error::DegreeMismatch {
                expected: 3,
                got: self.degree,
            });
        }
        for (third, slice) in self.slices() {
            let contraction = slice.pairing_contraction();
            if contraction != 0 {
                return Err(Error::NotInK { contraction, third });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> TensorJson {
        TensorJson {
            g: self.genus,
            terms: self
                .terms
                .iter()
                .map(|(f, &c)| TermJson {
                    coeff: c,
                    factors: f
                        .iter()
                        .map(|g| {
                            let l = if g.is_x() { "x" } else { "y" };
                            (l.to_string(), g.index())
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Parses the tensor JSON schema. `default_degree` is used when the
    /// term list is empty.
    pub fn from_json_str(s: &str, default_degree: usize) -> Result<HTensor> {
        let raw: TensorJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
        raw.into_tensor(default_degree)
    }
}

impl fmt::Display for HTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (factors, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "−" } else { "+" };
            if n > 0 {
                write!(f, " {sign} ")?;
            } else if c < 0 {
                write!(f, "−")?;
            }
            if c.abs() != 1 {
                write!(f, "{}·", c.abs())?;
            }
            let s: Vec<String> = factors.iter().map(Gen::to_string).collect();
            write!(f, "{}", s.join("⊗"))?;
        }
        Ok(())
    }
}

/// `{"g": int, "terms": [{"coeff": int, "factors": [["x"|"y", index], …]}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub g: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: i64,
    pub factors: Vec<(String, usize)>,
}

impl TensorJson {
    pub fn into_tensor(self, default_degree: usize) -> Result<HTensor> {
        check_genus(self.g)?;
        let degree = self
            .terms
            .first()
            .map_or(default_degree, |t| t.factors.len());
        let mut terms = Vec::with_capacity(self.terms.len());
        for (n, t) in self.terms.into_iter().enumerate() {
            let factors = t
                .factors
                .into_iter()
                .map(|(letter, i)| match letter.as_str() {
                    "x" => Ok(Gen::X(i)),
                    "y" => Ok(Gen::Y(i)),
                    other => Err(Error::Json(format!(
                        "term {n}: factor letter must be \"x\" or \"y\", got {other:?}"
                    ))),
                })
                .collect::<Result<Vec<_>>>()?;
            terms.push((t.coeff, factors));
        }
        HTensor::from_terms(self.g, degree, terms)
    }
}

/// The four families of the chosen basis of K.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KCase {
    /// (1) z_i⊗z′_j with i ≠ j.
    Mixed { first: Gen, second: Gen },
    /// (2) x_i⊗y_i − x₁⊗y₁ with i ≠ 1.
    TraceDiff { i: usize },
    /// (3) x_i⊗y_i + y_i⊗x_i.
    Symmetric { i: usize },
    /// (4) z_i⊗z_i.
    Square { gen: Gen },
}

impl KCase {
    pub fn case_number(&self) -> u8 {
        match self {
            KCase::Mixed { .. } => 1,
            KCase::TraceDiff { .. } => 2,
            KCase::Symmetric { .. } => 3,
            KCase::Square { .. } => 4,
        }
    }

    pub fn tensor(&self, g: usize) -> HTensor {
        let terms = match *self {
            KCase::Mixed { first, second } => vec![(1, vec![first, second])],
            KCase::TraceDiff { i } => vec![
                (1, vec![Gen::X(i), Gen::Y(i)]),
                (-1, vec![Gen::X(1), Gen::Y(1)]),
            ],
            KCase::Symmetric { i } => vec![
                (1, vec![Gen::X(i), Gen::Y(i)]),
                (1, vec![Gen::Y(i), Gen::X(i)]),
            ],
            KCase::Square { gen } => vec![(1, vec![gen, gen])],
        };
        HTensor::from_terms(g, 2, terms).expect("basis indices in range")
    }
}

impl fmt::Display for KCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            KCase::Mixed { first, second } => write!(f, "{first}⊗{second}"),
            KCase::TraceDiff { i } => write!(f, "(x{i}⊗y{i}−x1⊗y1)"),
            KCase::Symmetric { i } => write!(f, "(x{i}⊗y{i}+y{i}⊗x{i})"),
            KCase::Square { gen } => write!(f, "{gen}⊗{gen}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KBasisElement {
    pub case: KCase,
    pub tensor: HTensor,
}

/// The 4g² − 1 basis elements of K in canonical order: case (1) by (i, j)
/// then letter pattern xx, xy, yx, yy; case (2) by i; case (3) by i; case (4)
/// by i with x before y.
pub fn k_basis(g: usize) -> Result<Vec<KBasisElement>> {
    check_genus(g)?;
    let mut cases = Vec::with_capacity(4 * g * g - 1);
    for i in 1..=g {
        for j in (1..=g).filter(|&j| j != i) {
            for (a, b) in [
                (Gen::X(i), Gen::X(j)),
                (Gen::X(i), Gen::Y(j)),
                (Gen::Y(i), Gen::X(j)),
                (Gen::Y(i), Gen::Y(j)),
            ] {
                cases.push(KCase::Mixed {
                    first: a,
                    second: b,
                });
            }
        }
    }
    cases.extend((2..=g).map(|i| KCase::TraceDiff { i }));
    cases.extend((1..=g).map(|i| KCase::Symmetric { i }));
    for i in 1..=g {
        cases.push(KCase::Square { gen: Gen::X(i) });
        cases.push(KCase::Square { gen: Gen::Y(i) });
    }
    Ok(cases
        .into_iter()
        .map(|case| {
            let tensor = case.tensor(g);
            debug_assert!(is_in_k(&tensor));
            KBasisElement { case, tensor }
        })
        .collect())
}

/// Whether a degree-2 tensor lies in the kernel of the intersection pairing.
pub fn is_in_k(t: &HTensor) -> bool {
    t.degree == 2 && t.pairing_contraction() == 0
}

/// One coefficient of an expansion A = Σ c · (basis element) ⊗ third.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KCoeff {
    pub basis: usize,
    pub third: Gen,
    pub coeff: i64,
}

fn vec_index(a: Gen, b: Gen, g: usize) -> usize {
    a.coord(g) * 2 * g + b.coord(g)
}

/// The K basis of one genus together with an exact left inverse of its
/// coordinate matrix, for expanding elements of K⊗H.
#[derive(Debug, Clone)]
pub struct KBasis {
    genus: usize,
    elements: Vec<KBasisElement>,
    /// Row p maps a vectorised degree-2 tensor to the p-th coordinate.
    left_inverse: Vec<Vec<(usize, Rational)>>,
}

impl KBasis {
    pub fn new(g: usize) -> Result<Self> {
        let elements = k_basis(g)?;
        let dim = 4 * g * g;
        let cols = elements.len();
        // [M | I] with M the dim × cols coordinate matrix
        let mut aug = vec![vec![Rational::from_integer(0.into()); cols + dim]; dim];
        for (p, e) in elements.iter().enumerate() {
            for (f, c) in e.tensor.terms() {
                aug[vec_index(f[0], f[1], g)][p] = Rational::from_integer(c.into());
            }
        }
        for (r, row) in aug.iter_mut().enumerate() {
            row[cols + r] = Rational::from_integer(1.into());
        }
        let pivots = linalg::rref(&mut aug);
        debug_assert!(pivots.iter().take(cols).copied().eq(0..cols));
        let left_inverse = aug
            .iter()
            .take(cols)
            .map(|row| {
                row[cols..]
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
                    .map(|(k, x)| (k, x.clone()))
                    .collect()
            })
            .collect();
        Ok(Self {
            genus: g,
            elements,
            left_inverse,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn elements(&self) -> &[KBasisElement] {
        &self.elements
    }

    /// Index of a basis element by case.
    pub fn position(&self, case: &KCase) -> Option<usize> {
        self.elements.iter().position(|e| e.case == *case)
    }

    /// The integer coordinate matrix (4g² rows, 4g² − 1 columns).
    pub fn coordinate_matrix(&self) -> Vec<Vec<i64>> {
        let g = self.genus;
        let mut m = vec![vec![0i64; self.elements.len()]; 4 * g * g];
        for (p, e) in self.elements.iter().enumerate() {
            for (f, c) in e.tensor.terms() {
                m[vec_index(f[0], f[1], g)][p] = c;
            }
        }
        m
    }

    /// Coordinates of a degree-2 tensor of K over the basis.
    pub fn coordinates(&self, t: &HTensor) -> Result<Vec<Rational>> {
        if t.genus != self.genus {
            return Err(Error::GenusMismatch(self.genus, t.genus));
        }
        let g = self.genus;
        let v: BTreeMap<usize, i64> = t
            .terms()
            .map(|(f, c)| (vec_index(f[0], f[1], g), c))
            .collect();
        Ok(self
            .left_inverse
            .iter()
            .map(|row| {
                row.iter()
                    .filter_map(|(k, x)| v.get(k).map(|&c| x * Rational::from_integer(c.into())))
                    .sum()
            })
            .collect())
    }

    /// Expands A ∈ K⊗H as Σ c · β ⊗ z over basis elements β and generators z.
    pub fn expand(&self, a: &HTensor) -> Result<Vec<KCoeff>> {
        if a.genus != self.genus {
            return Err(Error::GenusMismatch(self.genus, a.genus));
        }
        a.check_in_k_tensor_h()?;
        let mut out = Vec::new();
        for (third, slice) in a.slices() {
            let coords = self.coordinates(&slice)?;
            let mut rebuilt = HTensor::zero(self.genus, 2);
            for (p, c) in coords.iter().enumerate() {
                if num_traits::Zero::is_zero(c) {
                    continue;
                }
                if !linalg::is_integral(c) {
                    return Err(Error::NonIntegralExpansion(c.to_string()));
                }
                let c: i64 = c.to_integer().try_into().map_err(|_| {
                    Error::InvalidArgument(format!("coefficient {c} exceeds 64 bits"))
                })?;
                rebuilt = rebuilt.add(&self.elements[p].tensor.scale(c))?;
                out.push(KCoeff {
                    basis: p,
                    third,
                    coeff: c,
                });
            }
            debug_assert_eq!(rebuilt, slice);
        }
        out.sort_by_key(|k| (k.basis, k.third));
        Ok(out)
    }

    /// Σ c · β ⊗ z.
    pub fn reconstruct(&self, coeffs: &[KCoeff]) -> HTensor {
        let mut out = HTensor::zero(self.genus, 3);
        for k in coeffs {
            let t = self.elements[k.basis].tensor.tensor_gen(k.third).scale(k.coeff);
            out = out.add(&t).expect("same genus and degree");
        }
        out
    }
}

/// Expands A ∈ K⊗H over (K basis) × {x_k, y_k}.
pub fn expand_in_k_basis(a: &HTensor) -> Result<Vec<KCoeff>> {
    KBasis::new(a.genus)?.expand(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Gen::{X, Y};

    #[test]
    fn pairing_examples() {
        let g = 2;
        let v = |x| HVector::basis(g, x);
        assert_eq!(intersection_pairing(&v(X(1)), &v(Y(1))).unwrap(), 1);
        assert_eq!(intersection_pairing(&v(X(1)), &v(X(2))).unwrap(), 0);
        assert_eq!(intersection_pairing(&v(Y(2)), &v(X(2))).unwrap(), -1);
        assert!(intersection_pairing(&v(X(1)), &HVector::basis(3, X(1))).is_err());
    }

    #[test]
    fn pairing_matrix_is_standard_symplectic() {
        for g in 2..=4 {
            for a in Gen::all(g) {
                for b in Gen::all(g) {
                    let expect = match (a.coord(g), b.coord(g)) {
                        (i, j) if i < g && j == i + g => 1,
                        (i, j) if i >= g && j + g == i => -1,
                        _ => 0,
                    };
                    let got =
                        intersection_pairing(&HVector::basis(g, a), &HVector::basis(g, b)).unwrap();
                    assert_eq!(got, expect, "({a},{b})");
                    assert_eq!(pair(a, b), expect);
                }
            }
        }
    }

    #[test]
    fn k_basis_sizes_and_membership() {
        assert_eq!(k_basis(2).unwrap().len(), 15);
        assert_eq!(k_basis(3).unwrap().len(), 35);
        for g in 2..=5 {
            let b = k_basis(g).unwrap();
            assert_eq!(b.len(), 4 * g * g - 1);
            assert!(b.iter().all(|e| is_in_k(&e.tensor)));
        }
        assert!(k_basis(1).is_err());
    }

    #[test]
    fn k_basis_enumeration_rule_is_stable_across_genus() {
        // restricting the g = 3 enumeration to indices ≤ 2 reproduces g = 2
        let small: Vec<KCase> = k_basis(2).unwrap().into_iter().map(|e| e.case).collect();
        let max_index = |c: &KCase| match *c {
            KCase::Mixed { first, second } => first.index().max(second.index()),
            KCase::TraceDiff { i } | KCase::Symmetric { i } => i,
            KCase::Square { gen } => gen.index(),
        };
        let restricted: Vec<KCase> = k_basis(3)
            .unwrap()
            .into_iter()
            .map(|e| e.case)
            .filter(|c| max_index(c) <= 2)
            .collect();
        assert_eq!(small, restricted);
        assert_eq!(small[0], KCase::Mixed { first: X(1), second: X(2) });
        assert_eq!(small[3], KCase::Mixed { first: Y(1), second: Y(2) });
    }

    #[test]
    fn membership_examples() {
        let g = 2;
        let t = HTensor::from_terms(g, 2, [(1, vec![X(1), Y(1)]), (-1, vec![X(2), Y(2)])]).unwrap();
        assert!(is_in_k(&t));
        assert!(!is_in_k(&HTensor::monomial(g, &[X(1), Y(1)]).unwrap()));
        assert!(is_in_k(&HTensor::monomial(g, &[X(1), X(1)]).unwrap()));
    }

    #[test]
    fn expand_basis_elements() {
        let kb = KBasis::new(2).unwrap();
        let a = HTensor::monomial(2, &[X(1), X(2), Y(1)]).unwrap();
        let c = kb.expand(&a).unwrap();
        assert_eq!(
            c,
            vec![KCoeff {
                basis: kb
                    .position(&KCase::Mixed { first: X(1), second: X(2) })
                    .unwrap(),
                third: Y(1),
                coeff: 1
            }]
        );
        let s = KCase::Symmetric { i: 1 }.tensor(2).tensor_gen(X(1));
        let c = kb.expand(&s).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(kb.elements()[c[0].basis].case, KCase::Symmetric { i: 1 });
        assert_eq!(c[0].coeff, 1);
    }

    #[test]
    fn expand_rejects_tensors_outside_k() {
        let kb = KBasis::new(2).unwrap();
        let a = HTensor::monomial(2, &[X(1), Y(1), X(1)]).unwrap();
        assert_eq!(
            kb.expand(&a),
            Err(Error::NotInK {
                contraction: 1,
                third: X(1)
            })
        );
        // x1⊗y1 + y1⊗x1 pairs to zero but 2·x1⊗y1 does not
        let b = HTensor::from_terms(2, 3, [(2, vec![X(1), Y(1), Y(2)])]).unwrap();
        assert!(matches!(kb.expand(&b), Err(Error::NotInK { contraction: 2, .. })));
    }

    #[test]
    fn k_basis_is_unimodular() {
        use num_traits::One;
        for g in 2..=4 {
            let kb = KBasis::new(g).unwrap();
            let inv = linalg::smith_invariants(&kb.coordinate_matrix());
            assert_eq!(inv.len(), 4 * g * g - 1);
            assert!(inv.iter().all(|d| d.is_one()), "g={g}: {inv:?}");
        }
    }

    #[test]
    fn json_round_trip() {
        let a = HTensor::from_terms(3, 3, [(2, vec![X(1), Y(3), X(2)]), (-1, vec![Y(1), Y(1), X(3)])])
            .unwrap();
        let s = serde_json::to_string(&a.to_json()).unwrap();
        assert_eq!(HTensor::from_json_str(&s, 3).unwrap(), a);
    }

    #[test]
    fn json_errors() {
        let bad_letter = r#"{"g": 2, "terms": [{"coeff": 1, "factors": [["z", 1], ["x", 1], ["y", 1]]}]}"#;
        assert!(matches!(HTensor::from_json_str(bad_letter, 3), Err(Error::Json(_))));
        let out_of_range = r#"{"g": 2, "terms": [{"coeff": 1, "factors": [["x", 3], ["x", 1], ["y", 1]]}]}"#;
        assert!(matches!(
            HTensor::from_json_str(out_of_range, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
        let err = HTensor::from_json_str("{\"g\": 2, \"terms\": [", 3).unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
        let empty = HTensor::from_json_str(r#"{"g": 2, "terms": []}"#, 3).unwrap();
        assert!(empty.is_zero());
        assert_eq!(empty.degree(), 3);
    }
}
