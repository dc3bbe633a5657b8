//! Published reference tables for the r3 and h3 codes, and comparison helpers.

use super::{build_h3_code, right_unit_error, H3Second};
use crate::linalg::apply_site;
use crate::quaternion::Quaternion;

/// One row `|code_in>|00> -> sign |code_out>|ancilla_out>` of the r3 correction table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RcorrRow {
    pub code_in: usize,
    pub code_out: usize,
    pub ancilla_out: usize,
    pub sign: f64,
}

impl RcorrRow {
    /// Index of the input in the five-bit register (code bits first).
    pub fn input_index(&self) -> usize {
        self.code_in << 2
    }

    pub fn output_index(&self) -> usize {
        (self.code_out << 2) | self.ancilla_out
    }
}

const fn row(code_in: usize, code_out: usize, ancilla_out: usize, sign: f64) -> RcorrRow {
    RcorrRow {
        code_in,
        code_out,
        ancilla_out,
        sign,
    }
}

/// The eight non-trivial rows of the r3 correction operator.
pub const RCORR_ROWS: [RcorrRow; 8] = [
    row(0b000, 0b000, 0b00, 1.0),
    row(0b111, 0b111, 0b00, 1.0),
    row(0b100, 0b000, 0b10, 1.0),
    row(0b011, 0b111, 0b10, -1.0),
    row(0b010, 0b000, 0b01, 1.0),
    row(0b101, 0b111, 0b01, -1.0),
    row(0b001, 0b000, 0b11, 1.0),
    row(0b110, 0b111, 0b11, -1.0),
];

/// Ancilla slot for each entry of the SO(2) error set `(I, G@0, G@1, G@2)`
/// that reproduces [`RCORR_ROWS`].
pub const RCORR_ANCILLA_LABELS: [usize; 4] = [0b00, 0b10, 0b01, 0b11];

/// The four kets labelling an H-qubit basis in the printed h3 table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum H3Symbol {
    E,
    I,
    J,
    K,
}

/// How the printed symbols map to quaternion units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum H3Reading {
    /// `E, I, J, K -> 1, i, j, k`.
    Direct,
    /// `E, I, J, K -> 1, j, i, k`.
    SwapIJ,
}

impl H3Reading {
    pub const ALL: [Self; 2] = [Self::Direct, Self::SwapIJ];

    pub fn unit(self, s: H3Symbol) -> Quaternion {
        match (self, s) {
            (_, H3Symbol::E) => Quaternion::ONE,
            (_, H3Symbol::K) => Quaternion::K,
            (Self::Direct, H3Symbol::I) | (Self::SwapIJ, H3Symbol::J) => Quaternion::I,
            (Self::Direct, H3Symbol::J) | (Self::SwapIJ, H3Symbol::I) => Quaternion::J,
        }
    }

    /// The second codeword unit implied by the printed `|JJJ>` row.
    pub fn second(self) -> H3Second {
        match self {
            Self::Direct => H3Second::J,
            Self::SwapIJ => H3Second::I,
        }
    }
}

/// A printed entry `sign |first c c>` where `c` is the codeword symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H3Entry {
    pub sign: f64,
    pub first: H3Symbol,
}

const fn entry(sign: f64, first: H3Symbol) -> H3Entry {
    H3Entry { sign, first }
}

/// Codeword symbols of the two printed rows.
pub const H3_ROW_SYMBOLS: [H3Symbol; 2] = [H3Symbol::E, H3Symbol::J];

/// Column errors: right multiplication of the first site by `i`, `j`, `k`.
pub const H3_COLUMN_UNITS: [Quaternion; 3] = [Quaternion::I, Quaternion::J, Quaternion::K];

/// The printed first-site error table of the h3 code.
pub const H3_PRINTED: [[H3Entry; 3]; 2] = [
    [entry(1.0, H3Symbol::J), entry(1.0, H3Symbol::I), entry(1.0, H3Symbol::K)],
    [entry(-1.0, H3Symbol::E), entry(-1.0, H3Symbol::K), entry(1.0, H3Symbol::I)],
];

/// `sign * |basis index>` in the 64-dimensional h3 space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedKet {
    pub sign: f64,
    pub index: usize,
}

fn unit_index(q: Quaternion) -> usize {
    Quaternion::BASIS
        .iter()
        .position(|b| *b == q)
        .expect("a basis unit")
}

/// Applies each column error to each codeword and reads off the signed basis ket.
pub fn derive_h3_table(second: H3Second) -> [[SignedKet; 3]; 2] {
    let code = build_h3_code(second);
    let mut out = [[SignedKet { sign: 0.0, index: 0 }; 3]; 2];
    for (r, w) in code.codewords().iter().enumerate() {
        for (c, unit) in H3_COLUMN_UNITS.iter().enumerate() {
            let img = apply_site(&right_unit_error(*unit, 0), w).expect("site 0 exists");
            let (index, amp) = img
                .amplitudes()
                .iter()
                .enumerate()
                .find(|(_, a)| a.norm() > 0.5)
                .expect("unit error maps a basis ket to a signed basis ket");
            out[r][c] = SignedKet {
                sign: amp.re.signum(),
                index,
            };
        }
    }
    out
}

/// The printed table translated to signed kets under `reading`.
pub fn printed_h3_table(reading: H3Reading) -> [[SignedKet; 3]; 2] {
    let mut out = [[SignedKet { sign: 0.0, index: 0 }; 3]; 2];
    for (r, cw) in H3_ROW_SYMBOLS.iter().enumerate() {
        let rest = unit_index(reading.unit(*cw));
        for c in 0..3 {
            let e = H3_PRINTED[r][c];
            out[r][c] = SignedKet {
                sign: e.sign,
                index: unit_index(reading.unit(e.first)) * 16 + rest * 4 + rest,
            };
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H3Mismatch {
    pub row: usize,
    pub column: usize,
    pub printed: SignedKet,
    pub derived: SignedKet,
}

/// Cells where the derived table differs from the printed one under `reading`.
pub fn compare_h3_table(reading: H3Reading) -> Vec<H3Mismatch> {
    let derived = derive_h3_table(reading.second());
    let printed = printed_h3_table(reading);
    let mut out = Vec::new();
    for row in 0..2 {
        for column in 0..3 {
            if derived[row][column] != printed[row][column] {
                out.push(H3Mismatch {
                    row,
                    column,
                    printed: printed[row][column],
                    derived: derived[row][column],
                });
            }
        }
    }
    out
}
