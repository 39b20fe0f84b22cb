//! Conjugacy classes by orbit closure under generator conjugation.
//!
//! A class is enumerated breadth-first: conjugating a member by every group
//! generator reaches the whole class. Members are stored as 128-bit
//! fingerprints ([`MemberSet`]); the pending queue keeps raw image tables in
//! a packed byte ring so peak memory stays near one byte per point per
//! pending element. Enumeration is budgeted by member count and wall-clock
//! time, and a budget overrun is always reported as an explicit resource
//! error or [`Tri::Unknown`], never as a wrong answer.
//!
//! Whole-group tables ([`all_classes`]) are discovered by seeded random
//! subproducts plus power closure of found representatives; the table is
//! complete exactly when the class sizes sum to the group order, which is
//! checked, not assumed.

use std::collections::VecDeque;
use std::time::Instant;

use num_bigint::BigUint;
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded, BudgetKind, Tri};
use crate::bsgs::PermGroup;
use crate::fingerprint::{Fingerprint, FingerprintCollision, MemberSet};
use crate::perm::{CycleType, Permutation};

#[derive(Debug, Error)]
pub enum ClassError {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Collision(#[from] FingerprintCollision),
}

/// Cheap conjugation invariants: the cycle type together with the cycle
/// types of the p-th powers for every prime p dividing the element order.
/// Equal invariants do not prove conjugacy; distinct invariants refute it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassInvariant {
    pub ctype: CycleType,
    pub power_types: Vec<(u64, CycleType)>,
}

pub fn class_invariant(p: &Permutation) -> ClassInvariant {
    let ctype = p.cycle_type();
    let order = ctype.element_order();
    let power_types = prime_divisors(order)
        .into_iter()
        .map(|q| (q, p.pow(q as i64).cycle_type()))
        .collect();
    ClassInvariant { ctype, power_types }
}

fn prime_divisors(mut m: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= m {
        if m % d == 0 {
            out.push(d as u64);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m as u64);
    }
    out
}

/// A fully enumerated conjugacy class: representative, exact size, cheap
/// invariants, and the member fingerprint set.
pub struct ConjugacyClass {
    rep: Permutation,
    size: u64,
    invariant: ClassInvariant,
    members: MemberSet,
}

impl ConjugacyClass {
    pub fn rep(&self) -> &Permutation {
        &self.rep
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn cycle_type(&self) -> &CycleType {
        &self.invariant.ctype
    }

    pub fn invariant(&self) -> &ClassInvariant {
        &self.invariant
    }

    pub fn members(&self) -> &MemberSet {
        &self.members
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.contains(Fingerprint::of(p))
    }
}

/// FIFO of image tables packed at one byte per point (two for degrees
/// above 256), so a multi-million-element BFS frontier stays compact.
struct PackedQueue {
    buf: VecDeque<u8>,
    degree: usize,
    wide: bool,
}

impl PackedQueue {
    fn new(degree: usize) -> Self {
        PackedQueue {
            buf: VecDeque::new(),
            degree,
            wide: degree > 256,
        }
    }

    fn push(&mut self, images: &[u16]) {
        debug_assert_eq!(images.len(), self.degree);
        if self.wide {
            for &v in images {
                self.buf.push_back(v as u8);
                self.buf.push_back((v >> 8) as u8);
            }
        } else {
            for &v in images {
                self.buf.push_back(v as u8);
            }
        }
    }

    fn pop_into(&mut self, out: &mut Vec<u16>) -> bool {
        if self.buf.is_empty() {
            return false;
        }
        out.clear();
        if self.wide {
            for _ in 0..self.degree {
                let lo = self.buf.pop_front().unwrap() as u16;
                let hi = self.buf.pop_front().unwrap() as u16;
                out.push(lo | (hi << 8));
            }
        } else {
            for _ in 0..self.degree {
                out.push(self.buf.pop_front().unwrap() as u16);
            }
        }
        true
    }
}

/// Writes the conjugate `g⁻¹ a g` (left-to-right products) into `out`:
/// `out[g[i]] = g[a[i]]`.
fn conjugate_images(a: &[u16], g: &[u16], out: &mut Vec<u16>) {
    out.clear();
    out.resize(a.len(), 0);
    for (i, &ai) in a.iter().enumerate() {
        out[g[i] as usize] = g[ai as usize];
    }
}

fn members_exceeded(rep: &Permutation, reached: u64) -> BudgetExceeded {
    BudgetExceeded {
        kind: BudgetKind::ClassMembers,
        class_rep: rep.to_string(),
        reached,
    }
}

fn time_exceeded(rep: &Permutation, reached: u64) -> BudgetExceeded {
    BudgetExceeded {
        kind: BudgetKind::Time,
        class_rep: rep.to_string(),
        reached,
    }
}

const TIME_CHECK_INTERVAL: u64 = 1024;
#[cfg(feature = "parallel")]
const PARALLEL_CHUNK: usize = 512;

/// Core breadth-first closure. `on_member` sees every member exactly once,
/// as its raw image table, in a discovery order that is identical for the
/// sequential and parallel paths (candidates are merged in FIFO order).
pub(crate) fn enumerate_class<F>(
    gens: &[Permutation],
    rep: &Permutation,
    budget: &Budget,
    parallel: bool,
    mut on_member: F,
) -> Result<(MemberSet, u64), ClassError>
where
    F: FnMut(&[u16]) -> Result<(), ClassError>,
{
    let degree = rep.degree();
    let start = Instant::now();
    let mut members = MemberSet::new();
    let mut queue = PackedQueue::new(degree);
    members.insert(Fingerprint::of(rep), rep.images())?;
    on_member(rep.images())?;
    queue.push(rep.images());
    let mut size: u64 = 1;

    #[cfg(feature = "parallel")]
    if parallel {
        let mut chunk: Vec<Vec<u16>> = Vec::with_capacity(PARALLEL_CHUNK);
        loop {
            chunk.clear();
            loop {
                let mut buf = Vec::with_capacity(degree);
                if !queue.pop_into(&mut buf) {
                    break;
                }
                chunk.push(buf);
                if chunk.len() == PARALLEL_CHUNK {
                    break;
                }
            }
            if chunk.is_empty() {
                break;
            }
            if start.elapsed() > budget.class_time_limit {
                return Err(time_exceeded(rep, size).into());
            }
            let produced: Vec<Vec<(Fingerprint, Vec<u16>)>> = chunk
                .par_iter()
                .map(|cur| {
                    gens.iter()
                        .map(|g| {
                            let mut conj = Vec::new();
                            conjugate_images(cur, g.images(), &mut conj);
                            (Fingerprint::of_images(&conj), conj)
                        })
                        .collect()
                })
                .collect();
            for candidates in &produced {
                for (fp, conj) in candidates {
                    if members.insert(*fp, conj)? {
                        size += 1;
                        if size > budget.max_class_members {
                            return Err(members_exceeded(rep, size).into());
                        }
                        on_member(conj)?;
                        queue.push(conj);
                    }
                }
            }
        }
        return Ok((members, size));
    }
    let _ = parallel;

    let mut processed: u64 = 0;
    let mut cur: Vec<u16> = Vec::with_capacity(degree);
    let mut conj: Vec<u16> = Vec::with_capacity(degree);
    while queue.pop_into(&mut cur) {
        processed += 1;
        if processed % TIME_CHECK_INTERVAL == 0 && start.elapsed() > budget.class_time_limit {
            return Err(time_exceeded(rep, size).into());
        }
        for g in gens {
            conjugate_images(&cur, g.images(), &mut conj);
            let fp = Fingerprint::of_images(&conj);
            if members.insert(fp, &conj)? {
                size += 1;
                if size > budget.max_class_members {
                    return Err(members_exceeded(rep, size).into());
                }
                on_member(&conj)?;
                queue.push(&conj);
            }
        }
    }
    Ok((members, size))
}

/// Enumerates the conjugacy class of `rep` in `group` to closure.
pub fn class_orbit(
    group: &PermGroup,
    rep: &Permutation,
    budget: &Budget,
) -> Result<ConjugacyClass, ClassError> {
    class_orbit_with_mode(group, rep, budget, cfg!(feature = "parallel"))
}

#[doc(hidden)]
pub fn class_orbit_with_mode(
    group: &PermGroup,
    rep: &Permutation,
    budget: &Budget,
    parallel: bool,
) -> Result<ConjugacyClass, ClassError> {
    debug_assert!(group.contains(rep));
    let (members, size) = enumerate_class(group.generators(), rep, budget, parallel, |_| Ok(()))?;
    Ok(ConjugacyClass {
        rep: rep.clone(),
        size,
        invariant: class_invariant(rep),
        members,
    })
}

/// Seeded random-subproduct walk over the group, used to discover classes.
pub(crate) struct SubproductSampler {
    gens: Vec<Permutation>,
    order: Vec<usize>,
    acc: Permutation,
    rng: StdRng,
}

impl SubproductSampler {
    pub(crate) fn new(gens: &[Permutation], degree: usize, seed: u64) -> Self {
        SubproductSampler {
            gens: gens.to_vec(),
            order: (0..gens.len()).collect(),
            acc: Permutation::identity(degree),
            rng: StdRng::seed_from_u64(seed),
        }
    }

    pub(crate) fn next_element(&mut self) -> Permutation {
        self.order.shuffle(&mut self.rng);
        for &i in &self.order {
            if self.rng.random() {
                self.acc = self.acc.compose(&self.gens[i]);
            }
        }
        self.acc.clone()
    }
}

/// A class whose enumeration hit the budget: its representative and cheap
/// invariants are known, its size and members are not.
pub struct SkippedClass {
    pub rep: Permutation,
    pub invariant: ClassInvariant,
    pub reason: BudgetExceeded,
}

pub struct ClassTable {
    classes: Vec<ConjugacyClass>,
    complete: bool,
    group_order: BigUint,
    covered: BigUint,
    skipped: Vec<SkippedClass>,
}

impl ClassTable {
    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    /// True exactly when the enumerated class sizes sum to the group order.
    pub fn complete(&self) -> bool {
        self.complete
    }

    pub fn group_order(&self) -> &BigUint {
        &self.group_order
    }

    pub fn covered(&self) -> &BigUint {
        &self.covered
    }

    pub fn skipped(&self) -> &[SkippedClass] {
        &self.skipped
    }

    /// Index of the class containing `p`, if `p` lies in an enumerated one.
    pub fn find_class_of(&self, p: &Permutation) -> Option<usize> {
        let inv = class_invariant(p);
        let fp = Fingerprint::of(p);
        self.classes
            .iter()
            .position(|c| c.invariant == inv && c.members.contains(fp))
    }

    pub fn classes_with_type(&self, t: &CycleType) -> Vec<usize> {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.cycle_type() == t)
            .map(|(i, _)| i)
            .collect()
    }

    /// Whether class `idx` is rational: rep^k stays in the class for every
    /// k coprime to the element order. Needs only this class's member set.
    pub fn is_rational(&self, idx: usize) -> bool {
        class_is_rational(&self.classes[idx])
    }
}

fn class_is_rational(class: &ConjugacyClass) -> bool {
    let rep = &class.rep;
    let m = rep.order() as u64;
    for k in 2..m {
        if k.gcd(&m) == 1 && !class.members.contains(Fingerprint::of(&rep.pow(k as i64))) {
            return false;
        }
    }
    true
}

/// Consecutive already-covered random samples tolerated before concluding
/// that discovery has stalled.
const DISCOVERY_MISS_CAP: u32 = 16384;

/// Power-closure exponent ceiling: for representatives of order above this,
/// only divisor exponents are seeded beyond it.
const POWER_SEED_CAP: u64 = 128;

/// Discovers every conjugacy class of `group` within the budget. A class
/// whose enumeration overruns the budget is recorded in `skipped` and the
/// table comes back with `complete() == false`; only fingerprint collisions
/// are hard errors.
pub fn all_classes(group: &PermGroup, budget: &Budget, seed: u64) -> Result<ClassTable, ClassError> {
    let group_order = group.order();
    let degree = group.degree();
    let mut table = ClassTable {
        classes: Vec::new(),
        complete: false,
        group_order: group_order.clone(),
        covered: BigUint::ZERO,
        skipped: Vec::new(),
    };
    let mut pending: VecDeque<Permutation> = VecDeque::new();
    pending.push_back(Permutation::identity(degree));
    for g in group.generators() {
        pending.push_back(g.clone());
    }
    let mut sampler = SubproductSampler::new(group.generators(), degree, seed);
    let mut misses: u32 = 0;
    while table.covered < group_order {
        let (candidate, sampled) = match pending.pop_front() {
            Some(c) => (c, false),
            None => (sampler.next_element(), true),
        };
        let inv = class_invariant(&candidate);
        let fp = Fingerprint::of(&candidate);
        let known = table
            .classes
            .iter()
            .any(|c| c.invariant == inv && c.members.contains(fp))
            || table.skipped.iter().any(|s| s.invariant == inv);
        if known {
            if sampled {
                misses += 1;
                if misses >= DISCOVERY_MISS_CAP {
                    break;
                }
            }
            continue;
        }
        match class_orbit(group, &candidate, budget) {
            Ok(class) => {
                misses = 0;
                table.covered += BigUint::from(class.size);
                let m = candidate.order() as u64;
                for k in 2..m.min(POWER_SEED_CAP + 1) {
                    pending.push_back(candidate.pow(k as i64));
                }
                if m > POWER_SEED_CAP {
                    let mut d = 2u64;
                    while d * d <= m {
                        if m % d == 0 {
                            if d > POWER_SEED_CAP {
                                pending.push_back(candidate.pow(d as i64));
                            }
                            if m / d > POWER_SEED_CAP {
                                pending.push_back(candidate.pow((m / d) as i64));
                            }
                        }
                        d += 1;
                    }
                }
                table.classes.push(class);
            }
            Err(ClassError::Budget(reason)) => {
                misses = 0;
                table.skipped.push(SkippedClass {
                    rep: candidate,
                    invariant: inv,
                    reason,
                });
            }
            Err(e) => return Err(e),
        }
    }
    table.complete = table.covered == group_order;
    Ok(table)
}

/// Tri-state conjugacy test: "no" needs an invariant mismatch or a fully
/// enumerated class without `b`; "yes" needs a fingerprint hit; budget
/// overruns surface as `Unknown`.
pub fn is_conjugate(
    group: &PermGroup,
    a: &Permutation,
    b: &Permutation,
    budget: &Budget,
) -> Result<Tri, ClassError> {
    if a == b {
        return Ok(Tri::Yes);
    }
    if class_invariant(a) != class_invariant(b) {
        return Ok(Tri::No);
    }
    match class_orbit(group, a, budget) {
        Ok(class) => Ok(if class.contains(b) { Tri::Yes } else { Tri::No }),
        Err(ClassError::Budget(e)) => Ok(Tri::Unknown(e)),
        Err(e) => Err(e),
    }
}

/// Tri-state class rationality: yes iff rep^k is conjugate to rep for every
/// k coprime to the element order.
pub fn is_rational_class(
    group: &PermGroup,
    rep: &Permutation,
    budget: &Budget,
) -> Result<Tri, ClassError> {
    let class = match class_orbit(group, rep, budget) {
        Ok(c) => c,
        Err(ClassError::Budget(e)) => return Ok(Tri::Unknown(e)),
        Err(e) => return Err(e),
    };
    Ok(if class_is_rational(&class) {
        Tri::Yes
    } else {
        Tri::No
    })
}

const TYPE_SEARCH_SAMPLES: u32 = 4096;

/// Tri-state existence of an element with cycle type `t`: "yes" from any
/// witness (seeded random search or a discovered class), "no" only from a
/// complete class table.
pub fn exists_cycle_type(
    group: &PermGroup,
    t: &CycleType,
    budget: &Budget,
    seed: u64,
) -> Result<Tri, ClassError> {
    debug_assert_eq!(t.total(), group.degree());
    if Permutation::identity(group.degree()).cycle_type() == *t {
        return Ok(Tri::Yes);
    }
    for g in group.generators() {
        if g.cycle_type() == *t {
            return Ok(Tri::Yes);
        }
    }
    let mut sampler = SubproductSampler::new(group.generators(), group.degree(), seed);
    for _ in 0..TYPE_SEARCH_SAMPLES {
        if sampler.next_element().cycle_type() == *t {
            return Ok(Tri::Yes);
        }
    }
    let table = all_classes(group, budget, seed)?;
    if table.classes().iter().any(|c| c.cycle_type() == t)
        || table.skipped().iter().any(|s| s.invariant.ctype == *t)
    {
        return Ok(Tri::Yes);
    }
    if table.complete() {
        Ok(Tri::No)
    } else {
        let reason = table
            .skipped
            .first()
            .map(|s| s.reason.clone())
            .unwrap_or_else(|| BudgetExceeded {
                kind: BudgetKind::Time,
                class_rep: "<class discovery stalled>".into(),
                reached: DISCOVERY_MISS_CAP as u64,
            });
        Ok(Tri::Unknown(reason))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Duration;

    fn group(gens: &[&str], n: usize) -> PermGroup {
        PermGroup::new(
            gens.iter()
                .map(|s| Permutation::parse(s, n).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn big_budget() -> Budget {
        Budget {
            max_class_members: 1 << 30,
            class_time_limit: Duration::from_secs(60),
        }
    }

    #[test]
    fn transposition_class_of_s4() {
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let rep = Permutation::parse("(1,2)", 4).unwrap();
        let class = class_orbit(&s4, &rep, &big_budget()).unwrap();
        assert_eq!(class.size(), 6);
        assert!(class.contains(&Permutation::parse("(3,4)", 4).unwrap()));
        assert!(!class.contains(&Permutation::parse("(1,2)(3,4)", 4).unwrap()));
    }

    #[test]
    fn class_orbit_is_rep_independent() {
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let a = Permutation::parse("(1,2,3)", 4).unwrap();
        let g0 = Permutation::parse("(1,4)", 4).unwrap();
        let b = a.conjugate_by(&g0);
        let ca = class_orbit(&s4, &a, &big_budget()).unwrap();
        let cb = class_orbit(&s4, &b, &big_budget()).unwrap();
        assert_eq!(ca.size(), cb.size());
        assert!(ca.contains(&b) && cb.contains(&a));
    }

    #[test]
    fn member_budget_is_enforced() {
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let rep = Permutation::parse("(1,2)", 4).unwrap();
        let tight = Budget {
            max_class_members: 3,
            class_time_limit: Duration::from_secs(60),
        };
        match class_orbit(&s4, &rep, &tight) {
            Err(ClassError::Budget(e)) => {
                assert_eq!(e.kind, BudgetKind::ClassMembers);
                assert_eq!(e.reached, 4);
            }
            other => panic!("expected a member budget error, got {:?}", other.map(|c| c.size())),
        }
    }

    #[test]
    fn full_tables_of_small_symmetric_groups() {
        let s3 = group(&["(1,2)", "(1,2,3)"], 3);
        let table = all_classes(&s3, &big_budget(), 7).unwrap();
        assert!(table.complete());
        let mut sizes: Vec<u64> = table.classes().iter().map(|c| c.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);

        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let table = all_classes(&s4, &big_budget(), 7).unwrap();
        assert!(table.complete());
        let mut sizes: Vec<u64> = table.classes().iter().map(|c| c.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn table_discovery_is_seed_deterministic() {
        let a5 = group(&["(1,2,3,4,5)", "(1,2,3)"], 5);
        let t1 = all_classes(&a5, &big_budget(), 42).unwrap();
        let t2 = all_classes(&a5, &big_budget(), 42).unwrap();
        assert!(t1.complete() && t2.complete());
        let reps1: Vec<String> = t1.classes().iter().map(|c| c.rep().to_string()).collect();
        let reps2: Vec<String> = t2.classes().iter().map(|c| c.rep().to_string()).collect();
        assert_eq!(reps1, reps2);
        // A5 has 5 classes: 1, 15, 20, 12, 12.
        let mut sizes: Vec<u64> = t1.classes().iter().map(|c| c.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
    }

    #[test]
    fn incomplete_table_reports_skips() {
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let tight = Budget {
            max_class_members: 5,
            class_time_limit: Duration::from_secs(60),
        };
        let table = all_classes(&s4, &tight, 3).unwrap();
        assert!(!table.complete());
        assert!(!table.skipped().is_empty());
        // Classes within the budget are still enumerated exactly.
        for c in table.classes() {
            assert!(c.size() <= 5);
        }
    }

    #[test]
    fn conjugacy_tri_state() {
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let a4 = group(&["(1,2,3)", "(2,3,4)"], 4);
        let b = big_budget();
        let t12 = Permutation::parse("(1,2)", 4).unwrap();
        let t34 = Permutation::parse("(3,4)", 4).unwrap();
        let double = Permutation::parse("(1,2)(3,4)", 4).unwrap();
        assert!(is_conjugate(&s4, &t12, &t34, &b).unwrap().is_yes());
        assert!(is_conjugate(&s4, &t12, &double, &b).unwrap().is_no());
        // (1,2,3) and its inverse fall into the two distinct 3-classes of A4.
        let r = Permutation::parse("(1,2,3)", 4).unwrap();
        assert!(is_conjugate(&a4, &r, &r.inverse(), &b).unwrap().is_no());
        assert!(is_conjugate(&s4, &r, &r.inverse(), &b).unwrap().is_yes());
        let tight = Budget {
            max_class_members: 2,
            class_time_limit: Duration::from_secs(60),
        };
        assert!(is_conjugate(&s4, &t12, &t34, &tight).unwrap().is_unknown());
    }

    #[test]
    fn rationality_of_classes() {
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let a4 = group(&["(1,2,3)", "(2,3,4)"], 4);
        let c5 = group(&["(1,2,3,4,5)"], 5);
        let b = big_budget();
        let r3 = Permutation::parse("(1,2,3)", 4).unwrap();
        assert!(is_rational_class(&s4, &r3, &b).unwrap().is_yes());
        assert!(is_rational_class(&a4, &r3, &b).unwrap().is_no());
        let r5 = Permutation::parse("(1,2,3,4,5)", 5).unwrap();
        assert!(is_rational_class(&c5, &r5, &b).unwrap().is_no());
        let id = Permutation::identity(4);
        assert!(is_rational_class(&s4, &id, &b).unwrap().is_yes());
    }

    #[test]
    fn cycle_type_existence() {
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let a4 = group(&["(1,2,3)", "(2,3,4)"], 4);
        let b = big_budget();
        let four = CycleType::parse("4").unwrap();
        let trans = CycleType::parse("2.1^2").unwrap();
        assert!(exists_cycle_type(&s4, &four, &b, 1).unwrap().is_yes());
        assert!(exists_cycle_type(&a4, &trans, &b, 1).unwrap().is_no());
        assert!(exists_cycle_type(&a4, &four, &b, 1).unwrap().is_no());
    }

    #[test]
    fn power_invariants_separate_inverse_classes_cheaply() {
        // In A4 the two 3-classes share every power type (their power maps
        // swap the classes), so the invariant must NOT separate them; the
        // membership test is what decides. This pins the fallback path.
        let a = Permutation::parse("(1,2,3)", 4).unwrap();
        assert_eq!(class_invariant(&a), class_invariant(&a.inverse()));
    }

    #[test]
    fn sequential_and_parallel_modes_agree() {
        let s5 = group(&["(1,2)", "(1,2,3,4,5)"], 5);
        let rep = Permutation::parse("(1,2,3,4,5)", 5).unwrap();
        let b = big_budget();
        let seq = class_orbit_with_mode(&s5, &rep, &b, false).unwrap();
        let par = class_orbit_with_mode(&s5, &rep, &b, cfg!(feature = "parallel")).unwrap();
        assert_eq!(seq.size(), par.size());
        assert_eq!(seq.size(), 24);
        assert!(par.contains(&rep.inverse()));
    }
}
