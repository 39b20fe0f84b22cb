//! Permutations of `{0, ..., n-1}` stored as explicit image tables, and
//! cycle types as integer partitions.
//!
//! Points are 0-based everywhere in the API; the textual cycle notation read
//! by [`Permutation::parse`] and produced by `Display` is 1-based, matching
//! the usual convention for printed permutation data.
//!
//! Composition is left-to-right: `a.compose(&b)` maps `i` to `b(a(i))`.

use std::fmt;

use thiserror::Error;

/// Errors from parsing or validating permutation data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {point} appears twice")]
    RepeatedPoint { point: usize },
    #[error("image table is not a bijection")]
    NotBijective,
    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },
}

/// A permutation of `{0, ..., n-1}` as a full image table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub const MAX_DEGREE: usize = u16::MAX as usize;

    /// The identity on `n` points.
    pub fn identity(n: usize) -> Self {
        assert!(n <= Self::MAX_DEGREE);
        Permutation {
            images: (0..n as u16).collect(),
        }
    }

    /// Builds a permutation from its image table, checking bijectivity.
    pub fn from_images(images: Vec<u16>) -> Result<Self, PermError> {
        let n = images.len();
        if n > Self::MAX_DEGREE {
            return Err(PermError::DegreeTooLarge {
                degree: n,
                max: Self::MAX_DEGREE,
            });
        }
        let mut seen = vec![false; n];
        for &img in &images {
            if img as usize >= n {
                return Err(PermError::PointOutOfRange {
                    point: img as usize,
                    degree: n,
                });
            }
            if seen[img as usize] {
                return Err(PermError::NotBijective);
            }
            seen[img as usize] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Parses 1-based disjoint cycle notation, e.g. `(1,5,2)(3,4)`, as a
    /// permutation on `n` points. Whitespace (including newlines) is ignored
    /// everywhere, so wrapped multi-line cycle strings parse unchanged. The
    /// empty string and `()` denote the identity. Points must lie in
    /// `1..=n` and may appear at most once.
    pub fn parse(text: &str, n: usize) -> Result<Self, PermError> {
        if n > Self::MAX_DEGREE {
            return Err(PermError::DegreeTooLarge {
                degree: n,
                max: Self::MAX_DEGREE,
            });
        }
        let bytes = text.as_bytes();
        let mut pos = 0usize;
        let mut images: Vec<u16> = (0..n as u16).collect();
        let mut used = vec![false; n];

        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let parse_point = |pos: &mut usize| -> Result<u16, PermError> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if *pos == start {
                return Err(PermError::Parse {
                    offset: start,
                    message: "expected a point number".into(),
                });
            }
            let value: usize =
                text[start..*pos].parse().map_err(|_| PermError::Parse {
                    offset: start,
                    message: "point number too large".into(),
                })?;
            if value == 0 || value > n {
                return Err(PermError::PointOutOfRange {
                    point: value,
                    degree: n,
                });
            }
            Ok((value - 1) as u16)
        };

        loop {
            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
            if bytes[pos] != b'(' {
                return Err(PermError::Parse {
                    offset: pos,
                    message: "expected '('".into(),
                });
            }
            pos += 1;
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b')' {
                // "()" is an explicit identity cycle.
                pos += 1;
                continue;
            }
            let mut cycle = Vec::new();
            loop {
                skip_ws(&mut pos);
                let p = parse_point(&mut pos)?;
                if used[p as usize] {
                    return Err(PermError::RepeatedPoint {
                        point: p as usize + 1,
                    });
                }
                used[p as usize] = true;
                cycle.push(p);
                skip_ws(&mut pos);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b')') => {
                        pos += 1;
                        break;
                    }
                    _ => {
                        return Err(PermError::Parse {
                            offset: pos,
                            message: "expected ',' or ')'".into(),
                        })
                    }
                }
            }
            for w in 0..cycle.len() {
                images[cycle[w] as usize] = cycle[(w + 1) % cycle.len()];
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a single point.
    #[inline]
    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| img as usize == i)
    }

    /// Left-to-right composition: the result maps `i` to `other(self(i))`.
    ///
    /// Panics if the degrees differ.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            other.degree(),
            "composing permutations of different degrees"
        );
        let images = self
            .images
            .iter()
            .map(|&img| other.images[img as usize])
            .collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u16;
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// The conjugate `g^{-1} * self * g` (left-to-right products), i.e.
    /// `self` with every point relabelled through `g`.
    ///
    /// Panics if the degrees differ.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            g.degree(),
            "conjugating by a permutation of different degree"
        );
        let mut images = vec![0u16; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[img as usize];
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// `self^k` for any integer exponent, by rotating each cycle.
    pub fn pow(&self, k: i64) -> Permutation {
        let n = self.degree();
        let mut images = vec![0u16; n];
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start as u16;
            loop {
                cycle.push(p);
                seen[p as usize] = true;
                p = self.images[p as usize];
                if p as usize == start {
                    break;
                }
            }
            let len = cycle.len() as i64;
            let shift = (k.rem_euclid(len)) as usize;
            for (idx, &point) in cycle.iter().enumerate() {
                images[point as usize] = cycle[(idx + shift) % cycle.len()];
            }
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Nontrivial cycles, each rotated to start at its smallest point,
    /// sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<u16>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start as u16;
            loop {
                cycle.push(p);
                seen[p as usize] = true;
                p = self.images[p as usize];
                if p as usize == start {
                    break;
                }
            }
            out.push(cycle);
        }
        out
    }

    /// The multiset of cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> CycleType {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u16;
            let mut p = start as u16;
            loop {
                seen[p as usize] = true;
                len += 1;
                p = self.images[p as usize];
                if p as usize == start {
                    break;
                }
            }
            parts.push(len);
        }
        CycleType::from_parts(parts)
    }

    /// Degree minus number of cycles (fixed points count as cycles); the
    /// contribution of this element to the Riemann-Hurwitz sum.
    pub fn ramification_index(&self) -> usize {
        self.cycle_type().ramification_index()
    }

    /// Multiplicative order, as the lcm of the cycle lengths.
    pub fn order(&self) -> u128 {
        self.cycle_type().element_order()
    }

    /// Smallest point not fixed, if any.
    pub fn min_moved_point(&self) -> Option<u16> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &img)| img as usize != i)
            .map(|(i, _)| i as u16)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

/// An integer partition, used both as the cycle type of a permutation and
/// as the multiset of root multiplicities of a polynomial fiber.
///
/// Parts are kept sorted in descending order. The textual form is
/// `len^mult` factors joined by dots, e.g. `8^5.4^3` or `2^24.1^4`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    parts: Vec<u16>,
}

impl CycleType {
    pub fn from_parts(mut parts: Vec<u16>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "partition parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    /// Parses the dotted `len^mult` form; the exponent is optional
    /// (`4^13.1^3`, `11^7`, `52`, `2^25.1^5` are all valid).
    pub fn parse(text: &str) -> Result<Self, PermError> {
        let mut parts = Vec::new();
        for (i, chunk) in text.split('.').enumerate() {
            let chunk = chunk.trim();
            let err = |message: &str| PermError::Parse {
                offset: i,
                message: format!("{message} in partition component '{chunk}'"),
            };
            let (len_s, mult_s) = match chunk.split_once('^') {
                Some((l, m)) => (l.trim(), Some(m.trim())),
                None => (chunk, None),
            };
            let len: u16 = len_s.parse().map_err(|_| err("bad part length"))?;
            let mult: usize = match mult_s {
                Some(m) => m.parse().map_err(|_| err("bad multiplicity"))?,
                None => 1,
            };
            if len == 0 || mult == 0 {
                return Err(err("parts and multiplicities must be positive"));
            }
            parts.extend(std::iter::repeat(len).take(mult));
        }
        if parts.is_empty() {
            return Err(PermError::Parse {
                offset: 0,
                message: "empty partition".into(),
            });
        }
        Ok(CycleType::from_parts(parts))
    }

    /// Parts in descending order.
    pub fn parts(&self) -> &[u16] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn total(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Sum minus number of parts.
    pub fn ramification_index(&self) -> usize {
        self.total() - self.num_parts()
    }

    /// lcm of the parts; the order of any permutation with this cycle type.
    pub fn element_order(&self) -> u128 {
        self.parts.iter().fold(1u128, |acc, &p| {
            let p = p as u128;
            acc / gcd_u128(acc, p) * p
        })
    }

    /// `(length, multiplicity)` pairs in descending length order.
    pub fn run_lengths(&self) -> Vec<(u16, usize)> {
        let mut runs: Vec<(u16, usize)> = Vec::new();
        for &p in &self.parts {
            match runs.last_mut() {
                Some((len, mult)) if *len == p => *mult += 1,
                _ => runs.push((p, 1)),
            }
        }
        runs
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (len, mult)) in self.run_lengths().into_iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{len}^{mult}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycleType[{self}]")
    }
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
