use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A permutation of pair-symbol positions: output `i` takes input
/// `perm[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interleaver {
    perm: Vec<u32>,
    inverse: Vec<u32>,
}

impl Interleaver {
    /// Uniformly random permutation of `0..len` drawn from `seed`.
    pub fn random(len: usize, seed: u64) -> Self {
        let mut perm: Vec<u32> = (0..len as u32).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        Interleaver::from_permutation(perm).expect("shuffle is a bijection")
    }

    pub fn identity(len: usize) -> Self {
        Interleaver::from_permutation((0..len as u32).collect()).expect("identity")
    }

    pub fn from_permutation(perm: Vec<u32>) -> Result<Self> {
        let mut inverse = alloc::vec![u32::MAX; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            let slot = inverse.get_mut(p as usize).ok_or_else(|| {
                Error::Config(alloc::format!("interleaver entry {p} out of range"))
            })?;
            if *slot != u32::MAX {
                return Err(Error::Config(alloc::format!(
                    "interleaver entry {p} repeated"
                )));
            }
            *slot = i as u32;
        }
        Ok(Interleaver { perm, inverse })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn permutation(&self) -> &[u32] {
        &self.perm
    }

    pub fn interleave<T: Copy>(&self, x: &[T]) -> Vec<T> {
        self.perm.iter().map(|&p| x[p as usize]).collect()
    }

    pub fn deinterleave<T: Copy>(&self, x: &[T]) -> Vec<T> {
        self.inverse.iter().map(|&i| x[i as usize]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_is_a_bijection() {
        let il = Interleaver::random(2048, 7);
        let mut p = il.permutation().to_vec();
        p.sort();
        assert!(p.iter().enumerate().all(|(i, &v)| i as u32 == v));
        let x: Vec<u32> = (0..2048).map(|i| i * 3).collect();
        assert_eq!(il.deinterleave(&il.interleave(&x)), x);
        assert_ne!(il.interleave(&x), x);
        assert_eq!(Interleaver::random(2048, 7), il);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Interleaver::from_permutation(alloc::vec![0, 0, 1]).is_err());
        assert!(Interleaver::from_permutation(alloc::vec![0, 3, 1]).is_err());
    }
}
