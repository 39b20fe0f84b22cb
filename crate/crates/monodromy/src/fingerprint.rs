//! 128-bit fingerprints of permutations, and collision-checked fingerprint
//! sets used to deduplicate class enumerations.
//!
//! A fingerprint is SipHash-2-4 with fixed keys over the little-endian image
//! table, so it is deterministic across runs and platforms. Class
//! enumeration stores members as fingerprints only (16 bytes instead of a
//! full image table). A false merge would require two distinct permutations
//! sharing 128 bits, which has negligible probability for class sizes up to
//! ~1e9; as a guard, a 1/256 subsample of members keeps its full image
//! table, and any fingerprint re-insertion is verified against the stored
//! witness. A detected mismatch aborts the enumeration rather than
//! producing a wrong count.

use std::collections::{HashMap, HashSet};
use std::hash::{BuildHasherDefault, Hasher};

use siphasher::sip128::{Hasher128, SipHasher24};
use thiserror::Error;

use crate::perm::Permutation;

const KEY0: u64 = 0x7f4a_7c15_9e37_79b9;
const KEY1: u64 = 0x85eb_ca77_c2b2_ae63;

/// Witness tables are kept for fingerprints whose low byte is zero.
const WITNESS_MASK: u128 = 0xff;

/// Deterministic 128-bit fingerprint of a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint(u128);

impl Fingerprint {
    pub fn of(p: &Permutation) -> Self {
        Self::of_images(p.images())
    }

    pub fn of_images(images: &[u16]) -> Self {
        let mut hasher = SipHasher24::new_with_keys(KEY0, KEY1);
        for &img in images {
            hasher.write_u16(img);
        }
        Fingerprint(hasher.finish128().as_u128())
    }

    pub fn as_u128(self) -> u128 {
        self.0
    }
}

/// Two distinct permutations produced the same fingerprint.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("fingerprint collision detected on {fingerprint:#034x}; enumeration aborted")]
pub struct FingerprintCollision {
    pub fingerprint: u128,
}

/// Pass-through hasher for keys that are already uniform 128-bit hashes.
#[derive(Default)]
pub struct FingerprintHasher(u64);

impl Hasher for FingerprintHasher {
    #[inline]
    fn write_u128(&mut self, v: u128) {
        self.0 = (v as u64) ^ ((v >> 64) as u64);
    }

    fn write(&mut self, _bytes: &[u8]) {
        unreachable!("FingerprintHasher only hashes u128 fingerprints");
    }

    #[inline]
    fn finish(&self) -> u64 {
        self.0
    }
}

type FpBuildHasher = BuildHasherDefault<FingerprintHasher>;

/// The members of a conjugacy class as a fingerprint set with witness
/// subsampling.
#[derive(Default)]
pub struct MemberSet {
    set: HashSet<u128, FpBuildHasher>,
    witnesses: HashMap<u128, Box<[u16]>, FpBuildHasher>,
}

impl MemberSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(capacity: usize) -> Self {
        MemberSet {
            set: HashSet::with_capacity_and_hasher(capacity, FpBuildHasher::default()),
            witnesses: HashMap::with_hasher(FpBuildHasher::default()),
        }
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    #[inline]
    pub fn contains(&self, fp: Fingerprint) -> bool {
        self.set.contains(&fp.0)
    }

    /// Inserts a permutation (as its image table) by fingerprint. Returns
    /// `Ok(true)` if it was new, `Ok(false)` if this exact permutation was
    /// already present, and an error if the fingerprint is already present
    /// for a *different* permutation (checked against the witness
    /// subsample).
    pub fn insert(
        &mut self,
        fp: Fingerprint,
        images: &[u16],
    ) -> Result<bool, FingerprintCollision> {
        if !self.set.insert(fp.0) {
            if let Some(witness) = self.witnesses.get(&fp.0) {
                if witness.as_ref() != images {
                    return Err(FingerprintCollision { fingerprint: fp.0 });
                }
            }
            return Ok(false);
        }
        if fp.0 & WITNESS_MASK == 0 {
            self.witnesses.insert(fp.0, images.into());
        }
        Ok(true)
    }
}
