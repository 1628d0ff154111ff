//! Exact dense-matrix arithmetic for three-qubit Pauli words.
//!
//! Every entry is a Gaussian integer, so products and equality tests are
//! exact; there is no floating point anywhere. This crate is deliberately
//! naive (explicit 8x8 multiplication, no bit tricks) so it can serve as an
//! independent reference against which symplectic-side implementations are
//! tested. Keep it free of any dependency on the crates it checks.

use num_complex::Complex;

pub type Entry = Complex<i64>;

/// Dense square matrix over the Gaussian integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    dim: usize,
    data: Vec<Entry>,
}

impl Matrix {
    pub fn zero(dim: usize) -> Matrix {
        Matrix {
            dim,
            data: vec![Entry::new(0, 0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Matrix {
        let mut m = Matrix::zero(dim);
        for i in 0..dim {
            *m.at_mut(i, i) = Entry::new(1, 0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, row: usize, col: usize) -> Entry {
        self.data[row * self.dim + col]
    }

    fn at_mut(&mut self, row: usize, col: usize) -> &mut Entry {
        &mut self.data[row * self.dim + col]
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Matrix::zero(n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = Entry::new(0, 0);
                for k in 0..n {
                    acc += self.at(r, k) * rhs.at(k, c);
                }
                *out.at_mut(r, c) = acc;
            }
        }
        out
    }

    /// Kronecker product, `self` acting on the more significant factor.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let (n, m) = (self.dim, rhs.dim);
        let mut out = Matrix::zero(n * m);
        for a in 0..n {
            for b in 0..n {
                for c in 0..m {
                    for d in 0..m {
                        *out.at_mut(a * m + c, b * m + d) = self.at(a, b) * rhs.at(c, d);
                    }
                }
            }
        }
        out
    }

    /// The matrix scaled by i^k.
    pub fn scaled_by_i_power(&self, k: u8) -> Matrix {
        let unit = i_power(k);
        let mut out = self.clone();
        for e in &mut out.data {
            *e *= unit;
        }
        out
    }
}

/// i^k as a Gaussian integer.
pub fn i_power(k: u8) -> Entry {
    match k % 4 {
        0 => Entry::new(1, 0),
        1 => Entry::new(0, 1),
        2 => Entry::new(-1, 0),
        _ => Entry::new(0, -1),
    }
}

/// The 2x2 matrix of a single Pauli letter.
///
/// Panics on anything other than I, X, Y, Z: this is test support code and a
/// bad letter is a bug in the test itself.
pub fn letter_matrix(letter: char) -> Matrix {
    let c = |re: i64, im: i64| Entry::new(re, im);
    let rows: [[Entry; 2]; 2] = match letter {
        'I' => [[c(1, 0), c(0, 0)], [c(0, 0), c(1, 0)]],
        'X' => [[c(0, 0), c(1, 0)], [c(1, 0), c(0, 0)]],
        'Y' => [[c(0, 0), c(0, -1)], [c(0, 1), c(0, 0)]],
        'Z' => [[c(1, 0), c(0, 0)], [c(0, 0), c(-1, 0)]],
        other => panic!("not a Pauli letter: {other:?}"),
    };
    let mut m = Matrix::zero(2);
    for (r, row) in rows.iter().enumerate() {
        for (col, e) in row.iter().enumerate() {
            *m.at_mut(r, col) = *e;
        }
    }
    m
}

/// The 8x8 representative of a three-letter word such as "XYZ"; the first
/// letter acts on qubit 1, the most significant tensor factor.
pub fn word_matrix(word: &str) -> Matrix {
    let letters: Vec<char> = word.chars().collect();
    assert_eq!(letters.len(), 3, "want a three-letter word, got {word:?}");
    letter_matrix(letters[0])
        .kron(&letter_matrix(letters[1]))
        .kron(&letter_matrix(letters[2]))
}

/// Product of word representatives, multiplied left to right.
pub fn product(words: &[&str]) -> Matrix {
    let mut acc = Matrix::identity(8);
    for w in words {
        acc = acc.mul(&word_matrix(w));
    }
    acc
}

/// The exponent k such that `m == i^k * reference`, if one exists.
pub fn phase_relative_to(m: &Matrix, reference: &Matrix) -> Option<u8> {
    (0..4).find(|&k| *m == reference.scaled_by_i_power(k))
}

/// Whether the representatives of two words commute as matrices.
pub fn commute(a: &str, b: &str) -> bool {
    let (ma, mb) = (word_matrix(a), word_matrix(b));
    ma.mul(&mb) == mb.mul(&ma)
}
