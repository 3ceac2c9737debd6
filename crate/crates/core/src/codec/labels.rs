//! Output label tables for 16-state, `k0 = 2`, `n0 = 6` trellis codes.
//!
//! Text format: `#` starts a comment line, blank lines are ignored, and
//! each of the 16 data lines reads `SSSS o1 o2 o3 o4` with the binary state
//! `s1s2s3s4` followed by the octal labels for inputs `u1u2 = 00, 01, 10, 11`.
//! States appear in ascending order.

use alloc::format;
use alloc::string::String;
use core::fmt::Write;

use crate::error::{Error, Result};

pub const STATES: usize = 16;
pub const INPUTS: usize = 4;
/// Input bits per trellis section.
pub const K0: usize = 2;
/// Output bits per trellis section.
pub const N0: usize = 6;

/// Shipped labels for user 1 (low ones density).
pub const NLTC_USER1: &str = include_str!("tables/nltc_user1.lbl");
/// Shipped labels for user 2 (ones density one half).
pub const NLTC_USER2: &str = include_str!("tables/nltc_user2.lbl");

/// `labels[state][input]`, each a 6-bit word whose most significant bit
/// is sent first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabelTable {
    labels: [[u8; INPUTS]; STATES],
}

impl LabelTable {
    pub fn new(labels: [[u8; INPUTS]; STATES]) -> Result<Self> {
        for (state, row) in labels.iter().enumerate() {
            for (input, &v) in row.iter().enumerate() {
                if v >= 1 << N0 {
                    return Err(Error::LabelRange {
                        state,
                        input,
                        value: v as u32,
                    });
                }
            }
        }
        Ok(LabelTable { labels })
    }

    pub fn user1() -> Self {
        parse_label_table(NLTC_USER1).expect("shipped table parses")
    }

    pub fn user2() -> Self {
        parse_label_table(NLTC_USER2).expect("shipped table parses")
    }

    #[inline]
    pub fn label(&self, state: usize, input: usize) -> u8 {
        self.labels[state][input]
    }

    pub fn rows(&self) -> &[[u8; INPUTS]; STATES] {
        &self.labels
    }

    /// Bit `j` (0 = first sent) of the label on branch `(state, input)`.
    #[inline]
    pub fn bit(&self, state: usize, input: usize, j: usize) -> u8 {
        (self.labels[state][input] >> (N0 - 1 - j)) & 1
    }

    /// Average ones weight per output bit with every branch equally likely.
    pub fn uniform_density(&self) -> f64 {
        let ones: u32 = self.labels.iter().flatten().map(|v| v.count_ones()).sum();
        ones as f64 / (STATES * INPUTS * N0) as f64
    }
}

/// Parses the text format described in the module docs.
pub fn parse_label_table(text: &str) -> Result<LabelTable> {
    let mut labels = [[0u8; INPUTS]; STATES];
    let mut row = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::LabelParse { line: line_no, msg };
        if row == STATES {
            return Err(err(format!("unexpected data row after {STATES} states")));
        }
        let mut tokens = line.split_whitespace();
        let state_tok = tokens.next().unwrap_or_default();
        let state = parse_state(state_tok)
            .ok_or_else(|| err(format!("row {row}: bad state field {state_tok:?}")))?;
        if state != row {
            return Err(err(format!(
                "row {row}: state {state_tok} out of order, expected {row:04b}"
            )));
        }
        let mut n = 0;
        for (col, tok) in tokens.enumerate() {
            if col >= INPUTS {
                return Err(err(format!(
                    "row {row} (state {state_tok}): more than {INPUTS} labels"
                )));
            }
            let v = u32::from_str_radix(tok, 8).map_err(|_| {
                err(format!(
                    "row {row} (state {state_tok}), column {col}: {tok:?} is not octal"
                ))
            })?;
            if v >= 1 << N0 {
                return Err(Error::LabelRange {
                    state,
                    input: col,
                    value: v,
                });
            }
            labels[row][col] = v as u8;
            n += 1;
        }
        if n != INPUTS {
            return Err(err(format!(
                "row {row} (state {state_tok}): expected {INPUTS} labels, found {n}"
            )));
        }
        row += 1;
    }
    if row != STATES {
        return Err(Error::LabelParse {
            line: text.lines().count(),
            msg: format!("expected {STATES} data rows, found {row}"),
        });
    }
    LabelTable::new(labels)
}

fn parse_state(tok: &str) -> Option<usize> {
    if tok.len() != 4 || !tok.bytes().all(|b| b == b'0' || b == b'1') {
        return None;
    }
    usize::from_str_radix(tok, 2).ok()
}

/// Writes the 16 data lines of `table`, without comments.
pub fn format_label_table(table: &LabelTable) -> String {
    let mut out = String::new();
    for (state, row) in table.labels.iter().enumerate() {
        let _ = write!(out, "{state:04b}");
        for v in row {
            let _ = write!(out, " {v:02o}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data_lines(text: &str) -> String {
        let mut s = String::new();
        for l in text
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        {
            s.push_str(l);
            s.push('\n');
        }
        s
    }

    #[test]
    fn first_rows_of_shipped_tables() {
        let t1 = LabelTable::user1();
        assert_eq!(t1.rows()[0], [0o40, 0o20, 0o10, 0o04]);
        assert_eq!(t1.bit(0, 0, 0), 1);
        assert_eq!(t1.bit(0, 0, 1), 0);
        assert_eq!(LabelTable::user2().rows()[0], [0o07, 0o34, 0o62, 0o51]);
    }

    #[test]
    fn shipped_tables_round_trip_exactly() {
        for text in [NLTC_USER1, NLTC_USER2] {
            let t = parse_label_table(text).unwrap();
            assert_eq!(format_label_table(&t), data_lines(text));
            assert_eq!(parse_label_table(&format_label_table(&t)).unwrap(), t);
        }
    }

    #[test]
    fn label_weights() {
        // User 2 labels all have weight 3; user 1 labels weight 1 or 2.
        assert!(LabelTable::user2()
            .rows()
            .iter()
            .flatten()
            .all(|v| v.count_ones() == 3));
        assert!((LabelTable::user2().uniform_density() - 0.5).abs() < 1e-15);
        assert!((LabelTable::user1().uniform_density() - 5.0 / 24.0).abs() < 1e-15);
    }

    #[test]
    fn short_row_is_reported_with_its_line() {
        let mut text = String::from(NLTC_USER1);
        text = text.replace("0011 04 10 01 02", "0011 04 10 01");
        match parse_label_table(&text) {
            Err(Error::LabelParse { line, msg }) => {
                assert_eq!(line, 6);
                assert!(msg.contains("row 3"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_tables() {
        let bad_octal = NLTC_USER1.replace("0000 40", "0000 48");
        assert!(matches!(
            parse_label_table(&bad_octal),
            Err(Error::LabelParse { .. })
        ));
        let too_big = NLTC_USER1.replace("0000 40", "0000 100");
        assert!(matches!(
            parse_label_table(&too_big),
            Err(Error::LabelRange {
                state: 0,
                input: 0,
                value: 64
            })
        ));
        let swapped = NLTC_USER1.replace("0000 40", "0001 40");
        assert!(matches!(
            parse_label_table(&swapped),
            Err(Error::LabelParse { .. })
        ));
        let missing: String = NLTC_USER1
            .lines()
            .take(10)
            .collect::<alloc::vec::Vec<_>>()
            .join("\n");
        assert!(matches!(
            parse_label_table(&missing),
            Err(Error::LabelParse { .. })
        ));
        assert!(LabelTable::new([[0o100; 4]; 16]).is_err());
    }
}
