//! Labels for computational basis states.
//!
//! Arrays are little-endian: position 1 of a binary or spin vector is qubit 1,
//! which is also the least significant bit of the integer index. Bra-Ket
//! strings display the reverse (big-endian) order, so qubit 1 is the
//! rightmost glyph.
//!
//! Bit 0 corresponds to spin +1 (up) and bit 1 to spin -1 (down).

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest qubit count a [`StateIndex`] can address.
pub const MAX_LABEL_QUBITS: usize = 63;

/// A validated little-endian vector of bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryVector(Vec<u8>);

/// A validated little-endian vector of spins (+1 / -1).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinVector(Vec<i8>);

/// Integer index of a basis state, `sum_k bits[k] * 2^(k-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateIndex(pub u64);

/// Glyph set used when rendering Bra-Ket strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Glyphs {
    #[default]
    Unicode,
    /// `u`/`d` for spins and `|...>` delimiters.
    Ascii,
}

impl Glyphs {
    fn up(self) -> char {
        match self {
            Glyphs::Unicode => '↑',
            Glyphs::Ascii => 'u',
        }
    }

    fn down(self) -> char {
        match self {
            Glyphs::Unicode => '↓',
            Glyphs::Ascii => 'd',
        }
    }

    fn close(self) -> char {
        match self {
            Glyphs::Unicode => '⟩',
            Glyphs::Ascii => '>',
        }
    }
}

impl BinaryVector {
    pub fn new<T: Copy + Into<i64>>(bits: &[T]) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyLabel);
        }
        bits.iter()
            .enumerate()
            .map(|(k, &b)| match b.into() {
                0 => Ok(0u8),
                1 => Ok(1u8),
                value => Err(Error::InvalidBit {
                    position: k + 1,
                    value,
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(BinaryVector)
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl SpinVector {
    pub fn new<T: Copy + Into<i64>>(spins: &[T]) -> Result<Self> {
        if spins.is_empty() {
            return Err(Error::EmptyLabel);
        }
        spins
            .iter()
            .enumerate()
            .map(|(k, &s)| match s.into() {
                1 => Ok(1i8),
                -1 => Ok(-1i8),
                value => Err(Error::InvalidSpin {
                    position: k + 1,
                    value,
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(SpinVector)
    }

    pub fn spins(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn binary_to_spin(b: &BinaryVector) -> SpinVector {
    SpinVector(b.0.iter().map(|&bit| 1 - 2 * bit as i8).collect())
}

pub fn spin_to_binary(s: &SpinVector) -> BinaryVector {
    BinaryVector(s.0.iter().map(|&spin| ((1 - spin) / 2) as u8).collect())
}

pub fn binary_to_int(b: &BinaryVector) -> Result<StateIndex> {
    if b.len() > MAX_LABEL_QUBITS {
        return Err(Error::TooManyQubits {
            n: b.len(),
            max: MAX_LABEL_QUBITS,
        });
    }
    Ok(StateIndex(
        b.0.iter()
            .enumerate()
            .map(|(k, &bit)| (bit as u64) << k)
            .sum(),
    ))
}

pub fn int_to_binary(v: StateIndex, n: usize) -> Result<BinaryVector> {
    if n == 0 {
        return Err(Error::EmptyLabel);
    }
    if n > MAX_LABEL_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            max: MAX_LABEL_QUBITS,
        });
    }
    if v.0 >> n != 0 {
        return Err(Error::IndexOutOfRange {
            value: v.0,
            n_qubits: n,
        });
    }
    Ok(BinaryVector(
        (0..n).map(|k| ((v.0 >> k) & 1) as u8).collect(),
    ))
}

pub fn spin_to_int(s: &SpinVector) -> Result<StateIndex> {
    binary_to_int(&spin_to_binary(s))
}

pub fn int_to_spin(v: StateIndex, n: usize) -> Result<SpinVector> {
    int_to_binary(v, n).map(|b| binary_to_spin(&b))
}

pub fn spin_to_braket(s: &SpinVector) -> String {
    spin_to_braket_with(s, Glyphs::Unicode)
}

pub fn spin_to_braket_with(s: &SpinVector, glyphs: Glyphs) -> String {
    let mut out = String::with_capacity(s.len() * 3 + 4);
    out.push('|');
    for &spin in s.0.iter().rev() {
        out.push(if spin > 0 { glyphs.up() } else { glyphs.down() });
    }
    out.push(glyphs.close());
    out
}

pub fn binary_to_braket(b: &BinaryVector) -> String {
    binary_to_braket_with(b, Glyphs::Unicode)
}

pub fn binary_to_braket_with(b: &BinaryVector, glyphs: Glyphs) -> String {
    let mut out = String::with_capacity(b.len() + 4);
    out.push('|');
    for &bit in b.0.iter().rev() {
        out.push(if bit == 0 { '0' } else { '1' });
    }
    out.push(glyphs.close());
    out
}

/// Spin of qubit `k` (0-based) in basis state `index`.
#[inline]
pub(crate) fn spin_of(index: usize, k: usize) -> f64 {
    if (index >> k) & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_conversions() {
        let b = BinaryVector::new(&[0, 0, 1]).unwrap();
        assert_eq!(binary_to_spin(&b).spins(), &[1, 1, -1]);
        assert_eq!(binary_to_int(&b).unwrap(), StateIndex(4));
        let s = SpinVector::new(&[1, 1, -1]).unwrap();
        assert_eq!(spin_to_braket(&s), "|↓↑↑⟩");
        assert_eq!(binary_to_braket(&b), "|100⟩");
    }

    #[test]
    fn small_cases() {
        let zero = BinaryVector::new(&[0]).unwrap();
        assert_eq!(binary_to_spin(&zero).spins(), &[1]);
        let ones = BinaryVector::new(&[1, 1]).unwrap();
        assert_eq!(binary_to_spin(&ones).spins(), &[-1, -1]);
        let down = SpinVector::new(&[-1]).unwrap();
        assert_eq!(spin_to_binary(&down).bits(), &[1]);
        assert_eq!(
            binary_to_int(&BinaryVector::new(&[1, 0, 1]).unwrap()).unwrap(),
            StateIndex(5)
        );
        assert_eq!(
            binary_to_int(&BinaryVector::new(&[0, 0, 0]).unwrap()).unwrap(),
            StateIndex(0)
        );
        assert_eq!(int_to_binary(StateIndex(0), 2).unwrap().bits(), &[0, 0]);
        assert_eq!(int_to_binary(StateIndex(5), 3).unwrap().bits(), &[1, 0, 1]);
        assert_eq!(spin_to_braket(&SpinVector::new(&[1]).unwrap()), "|↑⟩");
        assert_eq!(spin_to_braket(&SpinVector::new(&[-1, 1]).unwrap()), "|↑↓⟩");
        assert_eq!(binary_to_braket(&BinaryVector::new(&[0]).unwrap()), "|0⟩");
        assert_eq!(
            binary_to_braket(&BinaryVector::new(&[1, 0]).unwrap()),
            "|01⟩"
        );
    }

    #[test]
    fn ascii_fallback() {
        let s = SpinVector::new(&[1, 1, -1]).unwrap();
        assert_eq!(spin_to_braket_with(&s, Glyphs::Ascii), "|duu>");
    }

    #[test]
    fn rejects_bad_elements() {
        assert_eq!(
            BinaryVector::new(&[0, 2]),
            Err(Error::InvalidBit {
                position: 2,
                value: 2
            })
        );
        assert_eq!(
            SpinVector::new(&[1, 0]),
            Err(Error::InvalidSpin {
                position: 2,
                value: 0
            })
        );
        assert_eq!(BinaryVector::new::<i32>(&[]), Err(Error::EmptyLabel));
        assert_eq!(
            int_to_binary(StateIndex(8), 3),
            Err(Error::IndexOutOfRange {
                value: 8,
                n_qubits: 3
            })
        );
    }

    #[test]
    fn braket_length_and_reversal() {
        let s = SpinVector::new(&[1, -1, -1, 1, 1]).unwrap();
        let fwd: Vec<char> = spin_to_braket(&s).chars().collect();
        assert_eq!(fwd.len(), s.len() + 2);
        let mut rev = s.spins().to_vec();
        rev.reverse();
        let back: Vec<char> = spin_to_braket(&SpinVector(rev)).chars().collect();
        let inner_fwd: Vec<char> = fwd[1..fwd.len() - 1].to_vec();
        let mut inner_back: Vec<char> = back[1..back.len() - 1].to_vec();
        inner_back.reverse();
        assert_eq!(inner_fwd, inner_back);
    }
}
