//! The 63 nontrivial three-qubit Pauli observables and their exact sign
//! arithmetic.
//!
//! An observable is a nonzero vector of GF(2)^6 together with its canonical
//! +1-phase tensor representative (Y stands for the Hermitian product of the
//! X and Z representatives). All phase bookkeeping is small-integer
//! arithmetic mod 4; no matrices are ever materialized here.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    /// III names the center of the group, which is not a point of the space.
    #[error("III is the identity, not an observable of the space")]
    IdentityNotAPoint,
    #[error("label {0:?} must have exactly three letters")]
    BadLength(String),
    #[error("letter {0:?} is not one of I, X, Y, Z")]
    BadLetter(char),
    #[error("observable id {0} is outside 1..=63")]
    IdOutOfRange(u8),
}

/// Single-qubit tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];

    /// Two-bit code (x high, z low): I=0, Z=1, X=2, Y=3.
    pub fn code(self) -> u8 {
        match self {
            Letter::I => 0,
            Letter::Z => 1,
            Letter::X => 2,
            Letter::Y => 3,
        }
    }

    pub fn from_code(code: u8) -> Letter {
        match code & 3 {
            0 => Letter::I,
            1 => Letter::Z,
            2 => Letter::X,
            _ => Letter::Y,
        }
    }

    pub fn x_bit(self) -> u8 {
        self.code() >> 1
    }

    pub fn z_bit(self) -> u8 {
        self.code() & 1
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(ch: char) -> Result<Letter, PauliError> {
        match ch {
            'I' => Ok(Letter::I),
            'X' => Ok(Letter::X),
            'Y' => Ok(Letter::Y),
            'Z' => Ok(Letter::Z),
            other => Err(PauliError::BadLetter(other)),
        }
    }

    /// Single-letter product: the resulting letter and the power of i it
    /// picks up. XY = iZ, YX = -iZ, and cyclically.
    pub fn mul(self, rhs: Letter) -> (Letter, u8) {
        use Letter::*;
        match (self, rhs) {
            (I, r) => (r, 0),
            (l, I) => (l, 0),
            (l, r) if l == r => (I, 0),
            (X, Y) => (Z, 1),
            (Y, X) => (Z, 3),
            (Y, Z) => (X, 1),
            (Z, Y) => (X, 3),
            (Z, X) => (Y, 1),
            (X, Z) => (Y, 3),
            _ => unreachable!(),
        }
    }
}

/// Observable class by identity-letter count: A has two I letters, B one,
/// C none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObservableKind {
    A,
    B,
    C,
}

impl fmt::Display for ObservableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObservableKind::A => "A",
            ObservableKind::B => "B",
            ObservableKind::C => "C",
        })
    }
}

/// A nontrivial three-qubit Pauli observable.
///
/// The id packs the per-qubit letter codes with qubit 1 most significant:
/// id = code(q1)*16 + code(q2)*4 + code(q3), so ids run 1..=63 and the
/// bit layout is [x1 z1 x2 z2 x3 z3]. GF(2) addition of vectors is XOR of
/// ids. Ordering and equality follow the id.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliObservable {
    id: u8,
}

/// Bit positions of the z-coordinates inside an id.
const Z_BITS: u8 = 0b010101;

impl PauliObservable {
    pub const COUNT: usize = 63;

    pub fn from_id(id: u8) -> Result<PauliObservable, PauliError> {
        if (1..=63).contains(&id) {
            Ok(PauliObservable { id })
        } else {
            Err(PauliError::IdOutOfRange(id))
        }
    }

    pub fn from_letters(letters: [Letter; 3]) -> Result<PauliObservable, PauliError> {
        let id = letters[0].code() * 16 + letters[1].code() * 4 + letters[2].code();
        if id == 0 {
            return Err(PauliError::IdentityNotAPoint);
        }
        Ok(PauliObservable { id })
    }

    pub fn id(self) -> u8 {
        self.id
    }

    /// Zero-based position in id order, for indexing tables of length 63.
    pub fn index(self) -> usize {
        self.id as usize - 1
    }

    /// The id-indexed bit of this observable in a 64-bit point mask.
    pub fn bit(self) -> u64 {
        1u64 << self.id
    }

    /// All 63 observables in ascending id order.
    pub fn all() -> impl Iterator<Item = PauliObservable> {
        (1..=63).map(|id| PauliObservable { id })
    }

    pub fn letter(self, qubit: usize) -> Letter {
        debug_assert!(qubit < 3);
        Letter::from_code(self.id >> (4 - 2 * qubit))
    }

    pub fn letters(self) -> [Letter; 3] {
        [self.letter(0), self.letter(1), self.letter(2)]
    }

    /// The three x-coordinates as a 3-bit value, qubit 1 most significant.
    pub fn x_bits(self) -> u8 {
        ((self.id >> 5) & 1) << 2 | ((self.id >> 3) & 1) << 1 | ((self.id >> 1) & 1)
    }

    /// The three z-coordinates as a 3-bit value, qubit 1 most significant.
    pub fn z_bits(self) -> u8 {
        ((self.id >> 4) & 1) << 2 | ((self.id >> 2) & 1) << 1 | (self.id & 1)
    }

    /// GF(2) vector sum; None when the summands are equal (the sum would be
    /// the identity, which is not a point).
    pub fn gf2_sum(self, other: PauliObservable) -> Option<PauliObservable> {
        let id = self.id ^ other.id;
        (id != 0).then_some(PauliObservable { id })
    }

    pub fn kind(self) -> ObservableKind {
        let identities = self
            .letters()
            .iter()
            .filter(|l| **l == Letter::I)
            .count();
        match identities {
            2 => ObservableKind::A,
            1 => ObservableKind::B,
            0 => ObservableKind::C,
            _ => unreachable!("III is not constructible"),
        }
    }

    /// Whether the observable lies on the Klein quadric: the letterwise Y
    /// count is even, equivalently sum_j x_j z_j = 0 over GF(2).
    pub fn is_symmetric(self) -> bool {
        ((self.id >> 1) & self.id & Z_BITS).count_ones() % 2 == 0
    }
}

impl fmt::Display for PauliObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PauliObservable {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<PauliObservable, PauliError> {
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != 3 {
            return Err(PauliError::BadLength(s.to_string()));
        }
        let mut letters = [Letter::I; 3];
        for (slot, ch) in letters.iter_mut().zip(chars) {
            *slot = Letter::from_char(ch)?;
        }
        PauliObservable::from_letters(letters)
    }
}

/// The symplectic form sum_j (a.x_j b.z_j + b.x_j a.z_j) over GF(2).
/// Zero exactly when the representatives commute.
pub fn symplectic_form(a: PauliObservable, b: PauliObservable) -> u8 {
    let ab = ((a.id() >> 1) & b.id() & Z_BITS).count_ones();
    let ba = ((b.id() >> 1) & a.id() & Z_BITS).count_ones();
    ((ab + ba) % 2) as u8
}

pub fn commutes(a: PauliObservable, b: PauliObservable) -> bool {
    symplectic_form(a, b) == 0
}

/// A sign, the value of any real phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// A power of i accumulated by multiplying representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase {
    exponent: u8,
}

impl Phase {
    pub const ONE: Phase = Phase { exponent: 0 };
    pub const MINUS_ONE: Phase = Phase { exponent: 2 };

    pub fn from_exponent(k: u8) -> Phase {
        Phase { exponent: k & 3 }
    }

    /// The exponent k of i^k, reduced mod 4.
    pub fn exponent(self) -> u8 {
        self.exponent
    }

    pub fn compose(self, rhs: Phase) -> Phase {
        Phase::from_exponent(self.exponent + rhs.exponent)
    }

    pub fn is_real(self) -> bool {
        self.exponent % 2 == 0
    }

    /// The phase as a sign, when real.
    pub fn sign(self) -> Option<Sign> {
        match self.exponent {
            0 => Some(Sign::Plus),
            2 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.exponent {
            0 => "+1",
            1 => "i",
            2 => "-1",
            _ => "-i",
        })
    }
}

/// The product of a list of representatives taken left to right: the GF(2)
/// sum of the vectors plus the exact global phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedProduct {
    vector: u8,
    phase: Phase,
}

impl SignedProduct {
    /// The 6-bit GF(2) sum; zero encodes the identity word.
    pub fn vector(self) -> u8 {
        self.vector
    }

    pub fn is_identity(self) -> bool {
        self.vector == 0
    }

    /// The sum as an observable, or None when the product is scalar.
    pub fn observable(self) -> Option<PauliObservable> {
        PauliObservable::from_id(self.vector).ok()
    }

    pub fn phase(self) -> Phase {
        self.phase
    }
}

/// Multiplies representatives in the order given. The phase is accumulated
/// letterwise mod 4 and is exact; for a pairwise-commuting list it is always
/// real and independent of the order.
pub fn signed_product(factors: &[PauliObservable]) -> SignedProduct {
    let mut word = [Letter::I; 3];
    let mut exponent = 0u8;
    for f in factors {
        for (slot, letter) in word.iter_mut().zip(f.letters()) {
            let (result, k) = slot.mul(letter);
            *slot = result;
            exponent = (exponent + k) & 3;
        }
    }
    let vector = word[0].code() * 16 + word[1].code() * 4 + word[2].code();
    SignedProduct {
        vector,
        phase: Phase::from_exponent(exponent),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(label: &str) -> PauliObservable {
        label.parse().unwrap()
    }

    #[test]
    fn parse_and_bits() {
        let xii = o("XII");
        assert_eq!(xii.id(), 32);
        assert_eq!(xii.x_bits(), 0b100);
        assert_eq!(xii.z_bits(), 0b000);

        let yyx = o("YYX");
        assert_eq!(yyx.x_bits(), 0b111);
        assert_eq!(yyx.z_bits(), 0b110);

        assert_eq!(o("IIZ").id(), 1);
        assert_eq!(o("ZZZ").id(), 21);
    }

    #[test]
    fn parse_rejects_malformed_labels() {
        assert_eq!("III".parse::<PauliObservable>(), Err(PauliError::IdentityNotAPoint));
        assert_eq!(
            "XY".parse::<PauliObservable>(),
            Err(PauliError::BadLength("XY".into()))
        );
        assert_eq!(
            "XYZW".parse::<PauliObservable>(),
            Err(PauliError::BadLength("XYZW".into()))
        );
        assert_eq!("XQZ".parse::<PauliObservable>(), Err(PauliError::BadLetter('Q')));
        assert_eq!("xyz".parse::<PauliObservable>(), Err(PauliError::BadLetter('x')));
    }

    #[test]
    fn labels_round_trip_and_ids_are_a_bijection() {
        let mut seen = std::collections::BTreeSet::new();
        for a in Letter::ALL {
            for b in Letter::ALL {
                for c in Letter::ALL {
                    let label: String = [a, b, c].iter().map(|l| l.as_char()).collect();
                    match label.parse::<PauliObservable>() {
                        Ok(obs) => {
                            assert_eq!(obs.to_string(), label);
                            assert_eq!(PauliObservable::from_id(obs.id()), Ok(obs));
                            seen.insert(obs.id());
                        }
                        Err(e) => {
                            assert_eq!(label, "III");
                            assert_eq!(e, PauliError::IdentityNotAPoint);
                        }
                    }
                }
            }
        }
        assert_eq!(seen.len(), 63);
        assert_eq!(seen.iter().copied().collect::<Vec<_>>(), (1..=63).collect::<Vec<_>>());
    }

    #[test]
    fn from_id_bounds() {
        assert_eq!(PauliObservable::from_id(0), Err(PauliError::IdOutOfRange(0)));
        assert_eq!(PauliObservable::from_id(64), Err(PauliError::IdOutOfRange(64)));
        assert!(PauliObservable::from_id(63).is_ok());
    }

    #[test]
    fn symplectic_form_examples() {
        assert_eq!(symplectic_form(o("XII"), o("ZII")), 1);
        assert_eq!(symplectic_form(o("XII"), o("IZI")), 0);
        assert_eq!(symplectic_form(o("XXX"), o("XYY")), 0);
        assert_eq!(symplectic_form(o("XYZ"), o("XYZ")), 0);
    }

    #[test]
    fn signed_product_of_xx_yy_zz_is_minus_identity() {
        let set = [o("XXI"), o("YYI"), o("ZZI")];
        // Pairwise commuting, so every order must give the same real phase.
        let orders: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        for idx in orders {
            let perm = [set[idx[0]], set[idx[1]], set[idx[2]]];
            let p = signed_product(&perm);
            assert!(p.is_identity());
            assert_eq!(p.phase(), Phase::MINUS_ONE);
        }
    }

    #[test]
    fn signed_product_examples() {
        let plus = signed_product(&[o("XII"), o("IXI"), o("XXI")]);
        assert!(plus.is_identity());
        assert_eq!(plus.phase(), Phase::ONE);

        let ghz = signed_product(&[o("XXX"), o("XYY"), o("YXY"), o("YYX")]);
        assert!(ghz.is_identity());
        assert_eq!(ghz.phase(), Phase::MINUS_ONE);

        let pair = signed_product(&[o("XXI"), o("YYI")]);
        assert_eq!(pair.observable(), Some(o("ZZI")));
        assert_eq!(pair.phase(), Phase::MINUS_ONE);

        // Anticommuting factors give imaginary phases.
        let xz = signed_product(&[o("XII"), o("ZII")]);
        assert_eq!(xz.observable(), Some(o("YII")));
        assert!(!xz.phase().is_real());
    }

    #[test]
    fn kind_census_is_9_27_27() {
        let mut counts = [0usize; 3];
        for obs in PauliObservable::all() {
            counts[match obs.kind() {
                ObservableKind::A => 0,
                ObservableKind::B => 1,
                ObservableKind::C => 2,
            }] += 1;
        }
        assert_eq!(counts, [9, 27, 27]);
        assert_eq!(o("IIX").kind(), ObservableKind::A);
        assert_eq!(o("IXX").kind(), ObservableKind::B);
        assert_eq!(o("XYZ").kind(), ObservableKind::C);
    }

    #[test]
    fn symmetric_census_is_35() {
        assert!(o("XXX").is_symmetric());
        assert!(o("XYY").is_symmetric());
        assert!(!o("YII").is_symmetric());
        assert!(!o("YXX").is_symmetric());
        let count = PauliObservable::all().filter(|o| o.is_symmetric()).count();
        assert_eq!(count, 35);
    }

    #[test]
    fn gf2_sum_matches_letterwise_xor() {
        assert_eq!(o("XII").gf2_sum(o("IXI")), Some(o("XXI")));
        assert_eq!(o("XXX").gf2_sum(o("XYY")), Some(o("IZZ")));
        assert_eq!(o("XYZ").gf2_sum(o("XYZ")), None);
    }

    #[test]
    fn phase_and_sign_arithmetic() {
        assert_eq!(Phase::ONE.sign(), Some(Sign::Plus));
        assert_eq!(Phase::MINUS_ONE.sign(), Some(Sign::Minus));
        assert_eq!(Phase::from_exponent(1).sign(), None);
        assert_eq!(Phase::from_exponent(5).exponent(), 1);
        assert_eq!(
            Phase::from_exponent(3).compose(Phase::from_exponent(1)),
            Phase::ONE
        );
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(Sign::Plus * Sign::Minus, Sign::Minus);
        assert_eq!(Sign::Minus.value(), -1);
    }
}
