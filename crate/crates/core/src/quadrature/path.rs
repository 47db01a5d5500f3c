//! Words in the paths e_j, their images under ι, and inverses.
//!
//! e_j runs from Q₀ = (0, √−1) through the branch point P_j = (ζ^j, 0) to
//! Q₁ = (0, −√−1). ι swaps Q₀ and Q₁; inversion reverses a path.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Point {
    Q0,
    Q1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub j: usize,
    pub iota: bool,
    pub inverse: bool,
}

impl Letter {
    pub fn e(j: usize) -> Self {
        Self {
            j,
            iota: false,
            inverse: false,
        }
    }

    pub fn iota_e(j: usize) -> Self {
        Self {
            j,
            iota: true,
            inverse: false,
        }
    }

    pub fn start(self) -> Point {
        if self.iota ^ self.inverse {
            Point::Q1
        } else {
            Point::Q0
        }
    }

    pub fn end(self) -> Point {
        if self.iota ^ self.inverse {
            Point::Q0
        } else {
            Point::Q1
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv = if self.inverse { "⁻¹" } else { "" };
        if self.iota {
            write!(f, "ι(e{}){inv}", self.j)
        } else {
            write!(f, "e{}{inv}", self.j)
        }
    }
}

/// A composable word in the letters (ι?)(e_j)^{±1}, read left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathWord {
    genus: usize,
    letters: Vec<Letter>,
}

impl PathWord {
    pub fn new(genus: usize, letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::MalformedWord("empty word".into()));
        }
        for l in &letters {
            if l.j > 2 * genus + 1 {
                return Err(Error::MalformedWord(format!(
                    "letter {l}: index exceeds 2g+1 = {}",
                    2 * genus + 1
                )));
            }
        }
        for (n, w) in letters.windows(2).enumerate() {
            if w[0].end() != w[1].start() {
                return Err(Error::MalformedWord(format!(
                    "letter {} ({}) ends at {:?} but letter {} ({}) starts at {:?}",
                    n,
                    w[0],
                    w[0].end(),
                    n + 1,
                    w[1],
                    w[1].start()
                )));
            }
        }
        Ok(Self { genus, letters })
    }

    /// a_k = e_{2k−1}·ι(e_{2k}).
    pub fn a(genus: usize, k: usize) -> Result<Self> {
        check_loop_index(genus, k)?;
        Self::new(genus, vec![Letter::e(2 * k - 1), Letter::iota_e(2 * k)])
    }

    /// b_k = e_{2k−1}·ι(e_{2k−2})·⋯·e₁·ι(e₀).
    pub fn b(genus: usize, k: usize) -> Result<Self> {
        check_loop_index(genus, k)?;
        let letters = (1..=k)
            .rev()
            .flat_map(|m| [Letter::e(2 * m - 1), Letter::iota_e(2 * m - 2)])
            .collect();
        Self::new(genus, letters)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn start(&self) -> Point {
        self.letters[0].start()
    }

    pub fn end(&self) -> Point {
        self.letters[self.letters.len() - 1].end()
    }

    pub fn is_loop(&self) -> bool {
        self.start() == self.end()
    }

    pub fn inverse(&self) -> Self {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| Letter {
                inverse: !l.inverse,
                ..*l
            })
            .collect();
        Self {
            genus: self.genus,
            letters,
        }
    }

    pub fn iota(&self) -> Self {
        let letters = self
            .letters
            .iter()
            .map(|l| Letter { iota: !l.iota, ..*l })
            .collect();
        Self {
            genus: self.genus,
            letters,
        }
    }

    pub fn concat(&self, other: &PathWord) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self::new(self.genus, letters)
    }
}

fn check_loop_index(genus: usize, k: usize) -> Result<()> {
    if k == 0 || k > genus {
        return Err(Error::IndexOutOfRange {
            what: "loop index",
            value: k as i64,
            min: 1,
            max: genus as i64,
        });
    }
    Ok(())
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(Letter::to_string).collect();
        write!(f, "{}", parts.join("·"))
    }
}
