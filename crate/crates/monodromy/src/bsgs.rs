//! Permutation groups via stabilizer chains (base and strong generating
//! sets), built with the deterministic Schreier-Sims algorithm.
//!
//! A [`PermGroup`] is a generator list; its [`StabilizerChain`] is built
//! lazily on first use and then shared. The chain stores, per level, a base
//! point, the generators of the stabilizer of all earlier base points, the
//! fundamental orbit of the base point under those generators, and an
//! explicit transversal. Group order is the product of fundamental orbit
//! sizes; membership is decided by sifting through the transversals.
//!
//! Base points are chosen deterministically (smallest moved point), so for
//! a transitive group the first base point is point 0 and the second chain
//! level generates the full point stabilizer, which is what
//! [`PermGroup::subdegrees`] reads off.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("a permutation group needs at least one generator")]
    NoGenerators,
    #[error("generator degrees differ: {left} vs {right}")]
    MixedDegrees { left: usize, right: usize },
    #[error("operation requires a transitive group")]
    NotTransitive,
}

/// A permutation group given by generators, with a lazily built stabilizer
/// chain.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
}

impl PermGroup {
    pub fn new(generators: Vec<Permutation>) -> Result<Self, GroupError> {
        let first = generators.first().ok_or(GroupError::NoGenerators)?;
        let degree = first.degree();
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::MixedDegrees {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::build(&self.generators, self.degree))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order().clone()
    }

    /// Membership test by sifting. Permutations of a different degree are
    /// never members.
    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.chain().sift(p.clone()).is_none()
    }

    /// Orbit of a point under the generators, in discovery order.
    pub fn orbit(&self, point: u16) -> Vec<u16> {
        assert!((point as usize) < self.degree);
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point as usize] = true;
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    orbit.push(q);
                }
            }
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// Orbit sizes of the stabilizer of point 0, sorted ascending; the
    /// subdegrees of a transitive group.
    pub fn subdegrees(&self) -> Result<Vec<usize>, GroupError> {
        if !self.is_transitive() {
            return Err(GroupError::NotTransitive);
        }
        if self.degree == 1 {
            return Ok(vec![1]);
        }
        let chain = self.chain();
        // A transitive group moves point 0, and bases are chosen as
        // smallest moved points, so level 0 stabilizes nothing before 0.
        debug_assert_eq!(chain.levels[0].base, 0);
        let stab_gens: &[Permutation] = chain
            .levels
            .get(1)
            .map(|level| level.gens.as_slice())
            .unwrap_or(&[]);
        let mut seen = vec![false; self.degree];
        let mut sizes = Vec::new();
        for start in 0..self.degree as u16 {
            if seen[start as usize] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start as usize] = true;
            let mut head = 0;
            while head < orbit.len() {
                let p = orbit[head];
                head += 1;
                for g in stab_gens {
                    let q = g.apply(p);
                    if !seen[q as usize] {
                        seen[q as usize] = true;
                        orbit.push(q);
                    }
                }
            }
            sizes.push(orbit.len());
        }
        sizes.sort_unstable();
        Ok(sizes)
    }

    /// The finest block system whose block containing `a` also contains
    /// `b`, as a partition of the points (each block sorted, blocks ordered
    /// by smallest element). Atkinson's union-find closure.
    pub fn minimal_block(&self, a: u16, b: u16) -> Vec<Vec<u16>> {
        assert!((a as usize) < self.degree && (b as usize) < self.degree);
        let mut uf = UnionFind::new(self.degree);
        let mut queue: Vec<(u16, u16)> = Vec::new();
        if uf.union(a, b) {
            queue.push((a, b));
        }
        while let Some((u, v)) = queue.pop() {
            for g in &self.generators {
                let (gu, gv) = (g.apply(u), g.apply(v));
                if uf.union(gu, gv) {
                    queue.push((gu, gv));
                }
            }
        }
        let mut blocks: Vec<Vec<u16>> = vec![Vec::new(); self.degree];
        for p in 0..self.degree as u16 {
            blocks[uf.find(p) as usize].push(p);
        }
        blocks.retain(|b| !b.is_empty());
        blocks
    }

    /// True iff the group is transitive and admits no nontrivial block
    /// system, checked over every minimal block system containing
    /// `{0, w}`.
    pub fn is_primitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        if self.degree == 1 {
            return true;
        }
        for w in 1..self.degree as u16 {
            let blocks = self.minimal_block(0, w);
            let block0_len = blocks
                .iter()
                .find(|b| b.contains(&0))
                .map(|b| b.len())
                .unwrap();
            if block0_len < self.degree {
                return false;
            }
        }
        true
    }
}

struct UnionFind {
    parent: Vec<u16>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u16).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, x: u16) -> u16 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    /// Returns true if the two classes were distinct and got merged.
    fn union(&mut self, x: u16, y: u16) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (big, small) = if self.size[rx as usize] >= self.size[ry as usize] {
            (rx, ry)
        } else {
            (ry, rx)
        };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        true
    }
}

/// A base and strong generating set with explicit transversals.
pub struct StabilizerChain {
    levels: Vec<Level>,
    order: BigUint,
}

struct Level {
    base: u16,
    /// All strong generators fixing every earlier base point. Lists are
    /// cumulative: a generator assigned here also appears at every earlier
    /// level.
    gens: Vec<Permutation>,
    /// Fundamental orbit of `base` under `gens`, in BFS order.
    orbit: Vec<u16>,
    /// `transversal[p]` maps `base` to `p`, for `p` in the orbit.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: u16, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
        };
        level.recompute_orbit(degree);
        level
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.transversal = vec![None; degree];
        self.orbit.push(self.base);
        self.transversal[self.base as usize] = Some(Permutation::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for g in &self.gens {
                let q = g.apply(p);
                if self.transversal[q as usize].is_none() {
                    let u_p = self.transversal[p as usize].as_ref().unwrap();
                    self.transversal[q as usize] = Some(u_p.compose(g));
                    self.orbit.push(q);
                }
            }
        }
    }
}

impl StabilizerChain {
    /// Deterministic Schreier-Sims construction. The first base point is
    /// the smallest point moved by any generator, so a transitive group
    /// always gets base point 0 first.
    pub fn build(generators: &[Permutation], degree: usize) -> Self {
        let mut chain = StabilizerChain {
            levels: Vec::new(),
            order: BigUint::one(),
        };
        if let Some(base0) = generators.iter().filter_map(|g| g.min_moved_point()).min() {
            chain.levels.push(Level::new(base0, degree));
        }
        for g in generators {
            if !g.is_identity() {
                chain.add_generator(0, g.clone(), degree);
            }
        }
        chain.verify(degree);
        chain.order = chain
            .levels
            .iter()
            .map(|l| BigUint::from(l.orbit.len()))
            .product();
        chain
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Base points in chain order.
    pub fn base(&self) -> Vec<u16> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Fundamental orbit sizes in chain order; the order is their product.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Sifts `p` through the chain; `None` means membership, otherwise the
    /// non-identity residue and the level it stuck at.
    pub fn sift(&self, p: Permutation) -> Option<(Permutation, usize)> {
        let (residue, level) = self.sift_from(0, p);
        if residue.is_identity() {
            None
        } else {
            Some((residue, level))
        }
    }

    fn sift_from(&self, start: usize, mut h: Permutation) -> (Permutation, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(start) {
            if h.is_identity() {
                return (h, j);
            }
            let img = h.apply(level.base);
            match &level.transversal[img as usize] {
                None => return (h, j),
                Some(u) => h = h.compose(&u.inverse()),
            }
        }
        (h, self.levels.len())
    }

    /// Pushes a non-identity `g` (which must fix the bases of all levels
    /// before `start`) into level `start` and every deeper level whose base
    /// it also fixes, creating a new level when it fixes every existing
    /// base. Returns the deepest level it entered.
    fn add_generator(&mut self, start: usize, g: Permutation, degree: usize) -> usize {
        debug_assert!(!g.is_identity());
        let mut j = start;
        loop {
            if j == self.levels.len() {
                let base = g.min_moved_point().unwrap();
                self.levels.push(Level::new(base, degree));
            }
            self.levels[j].gens.push(g.clone());
            self.levels[j].recompute_orbit(degree);
            if g.apply(self.levels[j].base) == self.levels[j].base {
                j += 1;
            } else {
                return j;
            }
        }
    }

    /// Restores the strong generating property: at every level, each
    /// Schreier generator must sift to identity through the deeper levels.
    /// Works from the deepest level up; a failed sift inserts the residue
    /// and jumps back down to the deepest changed level. Every insertion
    /// strictly enlarges a fundamental orbit, so the loop terminates.
    fn verify(&mut self, degree: usize) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        loop {
            let mut inserted: Option<usize> = None;
            'scan: for oi in 0.. {
                if oi >= self.levels[i].orbit.len() {
                    break;
                }
                for gi in 0..self.levels[i].gens.len() {
                    let level = &self.levels[i];
                    let p = level.orbit[oi];
                    let g = &level.gens[gi];
                    let q = g.apply(p);
                    let u_p = level.transversal[p as usize].as_ref().unwrap();
                    let u_q = level.transversal[q as usize].as_ref().unwrap();
                    let schreier = u_p.compose(g).compose(&u_q.inverse());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, _) = self.sift_from(i + 1, schreier);
                    if residue.is_identity() {
                        continue;
                    }
                    inserted = Some(self.add_generator(i + 1, residue, degree));
                    break 'scan;
                }
            }
            match inserted {
                Some(j) => i = j,
                None if i == 0 => break,
                None => i -= 1,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(gens: &[&str], n: usize) -> PermGroup {
        PermGroup::new(
            gens.iter()
                .map(|s| Permutation::parse(s, n).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn validates_generator_lists() {
        assert!(matches!(
            PermGroup::new(vec![]),
            Err(GroupError::NoGenerators)
        ));
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(
            PermGroup::new(vec![a, b]),
            Err(GroupError::MixedDegrees { .. })
        ));
    }

    #[test]
    fn cyclic_group_order_is_degree() {
        let g = group(&["(1,2,3,4,5,6,7,8,9,10,11,12,13)"], 13);
        assert_eq!(g.order(), BigUint::from(13u32));
        assert!(g.is_transitive());
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        assert_eq!(s4.order(), BigUint::from(24u32));
        let a4 = group(&["(1,2,3)", "(2,3,4)"], 4);
        assert_eq!(a4.order(), BigUint::from(12u32));
        let s8 = group(&["(1,2)", "(1,2,3,4,5,6,7,8)"], 8);
        assert_eq!(s8.order(), BigUint::from(40320u32));
    }

    #[test]
    fn membership_by_sifting() {
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let a4 = group(&["(1,2,3)", "(2,3,4)"], 4);
        let swap = Permutation::parse("(1,2)", 4).unwrap();
        let three = Permutation::parse("(1,3,2)", 4).unwrap();
        assert!(s4.contains(&swap));
        assert!(s4.contains(&three));
        assert!(!a4.contains(&swap));
        assert!(a4.contains(&three));
        assert!(a4.contains(&Permutation::identity(4)));
        // Degree mismatch is never a member.
        assert!(!s4.contains(&Permutation::identity(5)));
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::new(vec![Permutation::identity(4)]).unwrap();
        assert_eq!(g.order(), BigUint::one());
        assert!(g.contains(&Permutation::identity(4)));
        assert!(!g.contains(&Permutation::parse("(1,2)", 4).unwrap()));
        assert!(!g.is_transitive());
        assert_eq!(g.subdegrees(), Err(GroupError::NotTransitive));
    }

    #[test]
    fn transitivity_detection() {
        let g = group(&["(1,2,3)"], 4);
        assert!(!g.is_transitive());
        assert!(group(&["(1,2,3,4)"], 4).is_transitive());
    }

    #[test]
    fn subdegrees_of_small_groups() {
        // Dihedral group of order 10 acting on 5 points: stabilizer of a
        // vertex is generated by the reflection through it.
        let d5 = group(&["(1,2,3,4,5)", "(2,5)(3,4)"], 5);
        assert_eq!(d5.order(), BigUint::from(10u32));
        assert_eq!(d5.subdegrees().unwrap(), vec![1, 2, 2]);
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        assert_eq!(s4.subdegrees().unwrap(), vec![1, 3]);
        let c4 = group(&["(1,2,3,4)"], 4);
        assert_eq!(c4.subdegrees().unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn block_systems_and_primitivity() {
        let c4 = group(&["(1,2,3,4)"], 4);
        let blocks = c4.minimal_block(0, 2);
        assert_eq!(blocks, vec![vec![0, 2], vec![1, 3]]);
        assert!(!c4.is_primitive());

        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        assert!(s4.is_primitive());
        let a4 = group(&["(1,2,3)", "(2,3,4)"], 4);
        assert!(a4.is_primitive());

        // Prime-degree cyclic groups are primitive.
        let c5 = group(&["(1,2,3,4,5)"], 5);
        assert!(c5.is_primitive());

        // D6 on 6 points has the antipodal block system.
        let d6 = group(&["(1,2,3,4,5,6)", "(2,6)(3,5)"], 6);
        assert!(!d6.is_primitive());
        let blocks = d6.minimal_block(0, 3);
        assert!(blocks.contains(&vec![0, 3]));

        // Intransitive groups are never primitive.
        assert!(!group(&["(1,2,3)"], 4).is_primitive());
    }

    #[test]
    fn chain_shape_is_deterministic() {
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let chain = s4.chain();
        assert_eq!(chain.base(), vec![0, 1, 2]);
        assert_eq!(chain.orbit_sizes(), vec![4, 3, 2]);
    }

    #[test]
    fn sift_residue_reported_for_non_members() {
        let a4 = group(&["(1,2,3)", "(2,3,4)"], 4);
        let swap = Permutation::parse("(1,2)", 4).unwrap();
        let (residue, _) = a4.chain().sift(swap).unwrap();
        assert!(!residue.is_identity());
    }
}
