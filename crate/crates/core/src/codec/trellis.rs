//! Table-driven trellis encoder.
//!
//! States are numbered `8 s1 + 4 s2 + 2 s3 + s4` and inputs `2 u1 + u2`,
//! matching the row and column order of a [`LabelTable`].

use alloc::vec::Vec;

use super::labels::{LabelTable, INPUTS, K0, N0, STATES};
use crate::error::{Error, Result};

/// Transition structure of the constituent encoders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NextStateRule {
    /// Feedback-free shift register: `(s1, s2, s3, s4) -> (u1, u2, s1, s2)`.
    ShiftRegister,
    /// `next = A s + B u` over GF(2). Row `i` of `A` (the mask applied to
    /// the state to produce next-state bit `s_{i+1}`) is nibble `i` of `a`,
    /// and row `i` of `B` is bit pair `i` of `b`.
    Linear { a: u16, b: u8 },
    /// An explicit `next[state][input]` table.
    Table([[u8; INPUTS]; STATES]),
}

impl NextStateRule {
    /// Recursive rule used by default.
    pub const RECURSIVE: NextStateRule = NextStateRule::Linear { a: 0x04e0, b: 0x57 };

    pub fn table(&self) -> [[u8; INPUTS]; STATES] {
        match *self {
            NextStateRule::ShiftRegister => {
                let mut t = [[0u8; INPUTS]; STATES];
                for (s, row) in t.iter_mut().enumerate() {
                    for (u, next) in row.iter_mut().enumerate() {
                        *next = ((u << 2) | (s >> 2)) as u8;
                    }
                }
                t
            }
            NextStateRule::Linear { a, b } => {
                let mut t = [[0u8; INPUTS]; STATES];
                for (s, row) in t.iter_mut().enumerate() {
                    for (u, next) in row.iter_mut().enumerate() {
                        let mut n = 0u32;
                        for i in 0..4 {
                            let ra = (a as u32 >> (4 * i)) & 0xF;
                            let rb = (b as u32 >> (2 * i)) & 0x3;
                            let bit =
                                ((ra & s as u32).count_ones() + (rb & u as u32).count_ones()) & 1;
                            n |= bit << (3 - i);
                        }
                        *next = n as u8;
                    }
                }
                t
            }
            NextStateRule::Table(t) => t,
        }
    }
}

/// A label table together with its next-state function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrellisSpec {
    labels: LabelTable,
    rule: NextStateRule,
    next: [[u8; INPUTS]; STATES],
    /// `(from_state, input)` pairs entering each state.
    incoming: [Vec<(u8, u8)>; STATES],
}

impl TrellisSpec {
    pub fn new(labels: LabelTable, rule: NextStateRule) -> Result<Self> {
        let next = rule.table();
        let mut incoming: [Vec<(u8, u8)>; STATES] = Default::default();
        for (s, row) in next.iter().enumerate() {
            for (u, &t) in row.iter().enumerate() {
                if t as usize >= STATES {
                    return Err(Error::Config(alloc::format!(
                        "next state {t} of state {s} is out of range"
                    )));
                }
                if row[..u].contains(&t) {
                    return Err(Error::Config(alloc::format!(
                        "state {s:04b} has repeated successor {t:04b}"
                    )));
                }
                incoming[t as usize].push((s as u8, u as u8));
            }
        }
        Ok(TrellisSpec {
            labels,
            rule,
            next,
            incoming,
        })
    }

    /// Shift-register trellis for `labels`.
    pub fn shift_register(labels: LabelTable) -> Self {
        TrellisSpec::new(labels, NextStateRule::ShiftRegister)
            .expect("shift register is well formed")
    }

    /// [`NextStateRule::RECURSIVE`] trellis for `labels`.
    pub fn recursive(labels: LabelTable) -> Self {
        TrellisSpec::new(labels, NextStateRule::RECURSIVE).expect("recursive rule is well formed")
    }

    pub fn labels(&self) -> &LabelTable {
        &self.labels
    }

    pub fn rule(&self) -> NextStateRule {
        self.rule
    }

    #[inline]
    pub fn next_state(&self, state: usize, input: usize) -> usize {
        self.next[state][input] as usize
    }

    #[inline]
    pub fn label(&self, state: usize, input: usize) -> u8 {
        self.labels.label(state, input)
    }

    pub fn incoming(&self, state: usize) -> &[(u8, u8)] {
        &self.incoming[state]
    }

    /// Stationary state distribution under uniform inputs, by power
    /// iteration from state 0.
    pub fn stationary(&self) -> [f64; STATES] {
        let mut p = [0.0; STATES];
        p[0] = 1.0;
        // Average two consecutive iterates so periodic chains converge too.
        for _ in 0..2000 {
            let mut q = [0.0; STATES];
            for (s, &w) in p.iter().enumerate() {
                for u in 0..INPUTS {
                    q[self.next_state(s, u)] += 0.25 * w;
                }
            }
            for s in 0..STATES {
                p[s] = 0.5 * (p[s] + q[s]);
            }
        }
        p
    }

    /// Long-run ones density of the output under uniform inputs.
    pub fn stationary_density(&self) -> f64 {
        let pi = self.stationary();
        let mut d = 0.0;
        for (s, &w) in pi.iter().enumerate() {
            for u in 0..INPUTS {
                d += w * 0.25 * self.label(s, u).count_ones() as f64;
            }
        }
        d / N0 as f64
    }
}

/// Encodes `info` (pairs `u1 u2`) from state 0; 6 output bits per pair.
pub fn trellis_encode(info: &[u8], spec: &TrellisSpec) -> Result<Vec<u8>> {
    if info.len() % K0 != 0 {
        return Err(Error::Length {
            expected: info.len() + 1,
            actual: info.len(),
        });
    }
    let mut out = Vec::with_capacity(info.len() / K0 * N0);
    let mut state = 0;
    for pair in info.chunks_exact(K0) {
        let u = ((pair[0] & 1) << 1 | (pair[1] & 1)) as usize;
        push_label(&mut out, spec.label(state, u));
        state = spec.next_state(state, u);
    }
    Ok(out)
}

/// Appends the `N0` bits of `label`, most significant first.
#[inline]
pub(crate) fn push_label(out: &mut Vec<u8>, label: u8) {
    for j in (0..N0).rev() {
        out.push((label >> j) & 1);
    }
}

/// Pair symbols `2 u1 + u2` of an info bit sequence.
pub fn pairs_to_symbols(info: &[u8]) -> Vec<u8> {
    info.chunks_exact(K0)
        .map(|p| (p[0] & 1) << 1 | (p[1] & 1))
        .collect()
}

pub fn symbols_to_pairs(symbols: &[u8]) -> Vec<u8> {
    symbols
        .iter()
        .flat_map(|&u| [(u >> 1) & 1, u & 1])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_register_successors_are_distinct() {
        let t = TrellisSpec::shift_register(LabelTable::user1());
        for s in 0..STATES {
            let mut succ: Vec<usize> = (0..INPUTS).map(|u| t.next_state(s, u)).collect();
            succ.sort();
            succ.dedup();
            assert_eq!(succ.len(), 4);
            assert_eq!(t.incoming(s).len(), 4);
        }
        assert_eq!(t.next_state(0b0000, 0b10), 0b1000);
        assert_eq!(t.next_state(0b1100, 0b01), 0b0111);
    }

    #[test]
    fn linear_rule_reproduces_the_shift_register() {
        // s1' = u1, s2' = u2, s3' = s1, s4' = s2.
        let rule = NextStateRule::Linear { a: 0x4800, b: 0x06 };
        assert_eq!(rule.table(), NextStateRule::ShiftRegister.table());
    }

    #[test]
    fn rejects_repeated_successor() {
        let mut next = NextStateRule::ShiftRegister.table();
        next[3][1] = next[3][0];
        assert!(TrellisSpec::new(LabelTable::user1(), NextStateRule::Table(next)).is_err());
    }

    #[test]
    fn encode_examples() {
        let t = TrellisSpec::shift_register(LabelTable::user1());
        assert_eq!(trellis_encode(&[0, 0], &t).unwrap(), [1, 0, 0, 0, 0, 0]);
        assert!(trellis_encode(&[], &t).unwrap().is_empty());
        assert!(matches!(
            trellis_encode(&[1, 0, 1], &t),
            Err(Error::Length { .. })
        ));
        // All-zero input stays in state 0, whose label 40 has weight 1.
        let out = trellis_encode(&[0; 200], &t).unwrap();
        assert_eq!(out.len(), 600);
        assert_eq!(out.iter().filter(|&&b| b == 1).count(), 100);
    }

    #[test]
    fn stationary_density_of_regular_trellis() {
        let t = TrellisSpec::shift_register(LabelTable::user1());
        for p in t.stationary() {
            assert!((p - 1.0 / 16.0).abs() < 1e-12);
        }
        assert!((t.stationary_density() - 5.0 / 24.0).abs() < 1e-12);
    }

    #[test]
    fn symbol_packing() {
        let s = pairs_to_symbols(&[1, 0, 0, 1, 1, 1]);
        assert_eq!(s, [2, 1, 3]);
        assert_eq!(symbols_to_pairs(&s), [1, 0, 0, 1, 1, 1]);
    }
}
