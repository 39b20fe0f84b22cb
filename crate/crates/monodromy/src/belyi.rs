//! Certification of rational maps branched over 0, 1, and infinity.
//!
//! A map is handed over as two of the three polynomials (p, q, r) tied by
//! the exact identity `p = q + r`; the third is derived. The map itself is
//! `p / q`, its value 1 locus is `r / q`, and all arithmetic is exact, so
//! every certificate below is a proof, not an approximation:
//!
//! - coprimality of p and q (the fraction is in lowest terms, pinning the
//!   map degree to `max(deg p, deg q)`),
//! - the multiplicity profile of each of the three fibers, by squarefree
//!   decomposition, with the point at infinity accounted for,
//! - the degree count `sum of fiber defects = 2n - 2`, which certifies at
//!   once that the genus is 0 and that no branching exists anywhere else,
//! - the matching between fiber profiles and a claimed cycle type triple.

use thiserror::Error;

use crate::perm::CycleType;
use crate::poly::{multiplicity_multiset, poly_gcd, PolyError, ScaledPoly};

#[derive(Debug, Error)]
pub enum BelyiError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("polynomial {0} must be nonzero")]
    ZeroPolynomial(&'static str),
    #[error("fiber multiplicity {0} exceeds the supported degree range")]
    DegreeRange(usize),
}

/// Which two of (p, q, r) are being supplied to [`BelyiMap::from_pair`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuppliedPair {
    PQ,
    PR,
    QR,
}

/// The polynomial triple of a candidate map, with `p = q + r` holding by
/// construction and re-checkable via [`BelyiMap::identity_holds`].
#[derive(Debug, Clone)]
pub struct BelyiMap {
    p: ScaledPoly,
    q: ScaledPoly,
    r: ScaledPoly,
    degree: usize,
}

impl BelyiMap {
    /// Builds the full triple from two supplied polynomials. Rejects any
    /// triple with a zero entry (the map would be constant or undefined).
    pub fn from_pair(
        pair: SuppliedPair,
        first: ScaledPoly,
        second: ScaledPoly,
    ) -> Result<BelyiMap, BelyiError> {
        let (p, q, r) = match pair {
            SuppliedPair::PQ => {
                let r = first.sub(&second);
                (first, second, r)
            }
            SuppliedPair::PR => {
                let q = first.sub(&second);
                (first, q, second)
            }
            SuppliedPair::QR => {
                let p = first.add(&second);
                (p, first, second)
            }
        };
        for (poly, name) in [(&p, "p"), (&q, "q"), (&r, "r")] {
            if poly.is_zero() {
                return Err(BelyiError::ZeroPolynomial(name));
            }
        }
        let degree = p.degree().unwrap().max(q.degree().unwrap());
        Ok(BelyiMap { p, q, r, degree })
    }

    pub fn p(&self) -> &ScaledPoly {
        &self.p
    }

    pub fn q(&self) -> &ScaledPoly {
        &self.q
    }

    pub fn r(&self) -> &ScaledPoly {
        &self.r
    }

    /// Degree of the map `p / q` once coprimality is certified.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Re-verifies `p - q - r = 0` by exact arithmetic.
    pub fn identity_holds(&self) -> bool {
        self.p.sub(&self.q.add(&self.r)).is_zero()
    }

    /// The greatest common divisor of p and q; the map is in lowest terms
    /// exactly when this is constant.
    pub fn numerator_denominator_gcd(&self) -> ScaledPoly {
        ScaledPoly::from_int_poly(poly_gcd(self.p.primitive(), self.q.primitive()))
    }

    pub fn is_coprime(&self) -> bool {
        self.numerator_denominator_gcd().degree() == Some(0)
    }

    /// Exact multiplicity profiles of the fibers over 0, 1, and infinity.
    pub fn fiber_profiles(&self) -> Result<FiberProfiles, BelyiError> {
        Ok(FiberProfiles {
            over_zero: fiber_profile(&self.p, self.degree)?,
            over_one: fiber_profile(&self.r, self.degree)?,
            over_infinity: fiber_profile(&self.q, self.degree)?,
        })
    }
}

/// Multiplicity profile of one fiber: one part per point of the projective
/// line in the fiber, each part the local multiplicity. Finite points are
/// the roots of the fiber polynomial; the point at infinity joins the fiber
/// exactly when the polynomial degree falls short of the map degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberProfile {
    profile: CycleType,
    infinite_part: Option<u16>,
}

impl FiberProfile {
    pub fn profile(&self) -> &CycleType {
        &self.profile
    }

    /// Multiplicity at the point at infinity, when it lies in this fiber.
    pub fn infinite_part(&self) -> Option<u16> {
        self.infinite_part
    }

    /// Number of sheets minus number of points: this fiber's contribution
    /// to the total branching.
    pub fn defect(&self) -> usize {
        self.profile.ramification_index()
    }
}

fn fiber_profile(poly: &ScaledPoly, n: usize) -> Result<FiberProfile, BelyiError> {
    let finite = multiplicity_multiset(poly.primitive())?;
    let deg = poly.degree().expect("fiber polynomial is nonzero");
    debug_assert!(deg <= n);
    let mut parts = finite.parts().to_vec();
    let infinite_part = if deg < n {
        let m = n - deg;
        let m = u16::try_from(m).map_err(|_| BelyiError::DegreeRange(m))?;
        parts.push(m);
        Some(m)
    } else {
        None
    };
    Ok(FiberProfile {
        profile: CycleType::from_parts(parts),
        infinite_part,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberProfiles {
    pub over_zero: FiberProfile,
    pub over_one: FiberProfile,
    pub over_infinity: FiberProfile,
}

impl FiberProfiles {
    pub fn all(&self) -> [&FiberProfile; 3] {
        [&self.over_zero, &self.over_one, &self.over_infinity]
    }
}

/// The exact degree count over the three fibers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCountCertificate {
    /// Sum of the three fiber defects.
    pub total_defect: usize,
    /// `2n - 2` for a degree-n map.
    pub required: usize,
    pub holds: bool,
}

/// Checks `sum of defects = 2n - 2`. Equality proves the cover has genus 0
/// and is unbranched away from 0, 1, and infinity; a smaller sum means
/// branching was missed elsewhere, a larger one is impossible for a valid
/// map of this degree.
pub fn degree_count(profiles: &FiberProfiles, degree: usize) -> DegreeCountCertificate {
    let total_defect = profiles.all().iter().map(|f| f.defect()).sum();
    let required = 2 * degree - 2;
    DegreeCountCertificate {
        total_defect,
        required,
        holds: total_defect == required,
    }
}

/// A verified correspondence between the fibers over (0, 1, infinity) and
/// a cycle type triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileMatch {
    /// `assignment[f]` is the index into the supplied types for fiber `f`,
    /// fibers ordered (0, 1, infinity). First match in lexicographic order.
    pub assignment: [usize; 3],
    /// Whether the assignment is the only one that works. Repeated types in
    /// the triple make the choice non-unique without weakening the match.
    pub unique: bool,
}

/// Matches the three fiber profiles against three claimed cycle types, in
/// any correspondence. `None` when no assignment matches.
pub fn match_profiles(profiles: &FiberProfiles, types: [&CycleType; 3]) -> Option<ProfileMatch> {
    let fibers = profiles.all();
    let mut found: Option<[usize; 3]> = None;
    let mut count = 0;
    for perm in [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ] {
        if (0..3).all(|f| fibers[f].profile() == types[perm[f]]) {
            count += 1;
            if found.is_none() {
                found = Some(perm);
            }
        }
    }
    found.map(|assignment| ProfileMatch {
        assignment,
        unique: count == 1,
    })
}
