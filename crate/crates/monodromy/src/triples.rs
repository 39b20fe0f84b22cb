//! Predicates on permutation triples (x, y, z) with xyz = 1: closure,
//! genus from cycle types, generation, a subdegree divisibility criterion
//! for primitivity, rigidity censuses, and a scanner for class triples that
//! pass every requirement at once.
//!
//! A census counts, exactly, the triples with prescribed conjugacy classes
//! and product one. The count is anchored at a fixed representative of the
//! smallest class (every anchor in a class sees the same count, so the
//! total is the anchored count times the class size), streams the smaller
//! of the remaining two classes, and tests the determined third element
//! against a member fingerprint set. Orbit counts under simultaneous
//! conjugation use the free-action formula `total / |G|`, reported only
//! for triples where freeness is justified (all pairs generate; callers
//! certify a trivial centre separately).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::budget::Budget;
use crate::bsgs::PermGroup;
use crate::classes::{enumerate_class, ClassError, ClassTable, ConjugacyClass};
use crate::fingerprint::Fingerprint;
use crate::perm::{CycleType, Permutation};

#[derive(Debug, Error)]
pub enum TripleError {
    #[error("the class table is incomplete; every class is needed")]
    IncompleteTable,
    #[error(transparent)]
    Class(#[from] ClassError),
}

/// Completes (x, y) to the triple (x, y, z) with xyz = 1.
pub fn close_triple(x: &Permutation, y: &Permutation) -> (Permutation, Permutation, Permutation) {
    let z = x.compose(y).inverse();
    debug_assert!(x.compose(y).compose(&z).is_identity());
    (x.clone(), y.clone(), z)
}

/// Genus of a degree-`n` cover ramified over three points with the given
/// cycle types, from the Riemann-Hurwitz relation
/// `2g - 2 = -2n + Σ (n - #cycles)`. `None` when the parity is impossible.
pub fn genus_from_types(types: &[&CycleType], degree: usize) -> Option<i64> {
    let total: i64 = types
        .iter()
        .map(|t| t.ramification_index() as i64)
        .sum();
    let twice = total - 2 * degree as i64 + 2;
    if twice.rem_euclid(2) != 0 {
        return None;
    }
    Some(twice / 2)
}

/// Whether the pair generates a group of the target order. When the target
/// is transitive, intransitivity of the pair is used as an early exit.
pub fn pair_generates(
    x: &Permutation,
    y: &Permutation,
    target_order: &BigUint,
    target_transitive: bool,
) -> bool {
    let sub = PermGroup::new(vec![x.clone(), y.clone()]).expect("two generators");
    if target_transitive && !sub.is_transitive() {
        return false;
    }
    sub.order() == *target_order
}

/// Outcome of the arithmetic primitivity criterion from subdegrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisibilityOutcome {
    /// No divisor d of the degree with 1 < d < n is 1 plus a subset sum of
    /// the nontrivial subdegrees, so no nontrivial block can exist.
    CertifiedPrimitive,
    /// The criterion does not decide: a candidate block size exists. The
    /// summands are the subdegrees making up `block_size - 1`.
    Inconclusive {
        block_size: usize,
        summands: Vec<usize>,
    },
}

/// A block containing the anchor point is the anchor plus a union of
/// nontrivial stabilizer orbits, and its size divides the degree. If no
/// divisor is expressible that way the group is certified primitive.
pub fn divisibility_primitivity(degree: usize, subdegrees: &[usize]) -> DivisibilityOutcome {
    assert_eq!(
        subdegrees.iter().sum::<usize>(),
        degree,
        "subdegrees must partition the degree"
    );
    let mut rest = subdegrees.to_vec();
    let anchor = rest
        .iter()
        .position(|&d| d == 1)
        .expect("subdegrees of a transitive group include the trivial orbit");
    rest.remove(anchor);

    // 0/1 knapsack over the suborbit sizes; dp[s] remembers the last
    // summand index reaching s, for witness reconstruction.
    let mut dp: Vec<Option<usize>> = vec![None; degree.max(1)];
    dp[0] = Some(usize::MAX);
    for (idx, &d) in rest.iter().enumerate() {
        for s in (d..degree).rev() {
            if dp[s].is_none() && dp[s - d].is_some() {
                dp[s] = Some(idx);
            }
        }
    }
    for d in 2..degree {
        if degree % d == 0 && dp[d - 1].is_some() {
            let mut summands = Vec::new();
            let mut s = d - 1;
            while s > 0 {
                let idx = dp[s].unwrap();
                summands.push(rest[idx]);
                s -= rest[idx];
            }
            summands.sort_unstable();
            return DivisibilityOutcome::Inconclusive {
                block_size: d,
                summands,
            };
        }
    }
    DivisibilityOutcome::CertifiedPrimitive
}

/// Exact census of the triples (e1, e2, e3) with product one, e1 in C1,
/// e2 in C2, e3 in the *inverse* class of C3, equivalently the pairs
/// (e1, e2) with `compose(e1, e2)` in C3.
#[derive(Debug, Clone)]
pub struct TripleCensus {
    /// Pairs with the C1 slot anchored at its representative.
    pub pair_count: u64,
    /// The subset of those whose pair generates the whole group.
    pub generating_pair_count: u64,
    pub all_generate: bool,
    /// Pairs over the whole of C1: `pair_count * |C1|`.
    pub triple_count: BigUint,
    pub generating_triple_count: BigUint,
    /// `triple_count / |G|`; meaningful as an orbit count only under a free
    /// action, so it is reported only when every counted pair generates.
    pub orbit_count: Option<BigRational>,
    /// `generating_triple_count / |G|`.
    pub generating_orbit_count: BigRational,
}

/// Counts pairs (a, b) in C1 x C2 with `compose(a, b)` in C3, plus how many
/// of them generate. The enumeration anchors the smallest of the three
/// classes and streams the smaller of the other two, so cost is governed by
/// the two smallest classes.
pub fn count_class_triples(
    group: &PermGroup,
    c1: &ConjugacyClass,
    c2: &ConjugacyClass,
    c3: &ConjugacyClass,
    budget: &Budget,
) -> Result<TripleCensus, ClassError> {
    let degree = group.degree();
    let group_order = group.order();
    let group_transitive = group.is_transitive();

    // Slot layout for the product-one form: slot 0 holds C1, slot 1 holds
    // C2, slot 2 holds the inverse class of C3 (same size as C3). Slot
    // elements of slot 2 are inverses of enumerated C3 members.
    let slot_classes = [c1, c2, c3];
    let sizes = [c1.size(), c2.size(), c3.size()];
    let pivot = (0..3).min_by_key(|&i| (sizes[i], i)).unwrap();
    let next = (pivot + 1) % 3;
    let prev = (pivot + 2) % 3;
    let stream = if sizes[next] <= sizes[prev] { next } else { prev };
    let tested = 3 - pivot - stream;

    let slot_element = |slot: usize| -> Permutation {
        let rep = slot_classes[slot].rep();
        if slot == 2 {
            rep.inverse()
        } else {
            rep.clone()
        }
    };
    let anchor = slot_element(pivot);

    let mut counted: u64 = 0;
    let mut generating: u64 = 0;
    {
        let mut product: Vec<u16> = Vec::with_capacity(degree);
        let mut third: Vec<u16> = Vec::with_capacity(degree);
        let mut slot_form: Vec<u16> = Vec::with_capacity(degree);
        let tested_members = slot_classes[tested].members();
        let on_member = |raw: &[u16]| -> Result<(), ClassError> {
            // The streamed slot element: raw image table, inverted for
            // slot 2 (enumerating C3 and inverting walks its inverse class).
            slot_form.clear();
            if stream == 2 {
                slot_form.resize(degree, 0);
                for (i, &img) in raw.iter().enumerate() {
                    slot_form[img as usize] = i as u16;
                }
            } else {
                slot_form.extend_from_slice(raw);
            }
            // Solve the product-one relation for the remaining slot: with
            // v in the slot cyclically after the anchor, the third element
            // is (anchor * v)^-1; otherwise it is (v * anchor)^-1.
            product.clear();
            if stream == next {
                for &img in anchor.images() {
                    product.push(slot_form[img as usize]);
                }
            } else {
                for &img in &slot_form {
                    product.push(anchor.apply(img));
                }
            }
            // Membership of the third element u = product^-1 in its slot:
            // for slot 2 this is `u in inv(C3)` i.e. `product in C3`, so the
            // product fingerprint is tested directly; for slots 0 and 1 the
            // inverse is materialized.
            let hit = if tested == 2 {
                tested_members.contains(Fingerprint::of_images(&product))
            } else {
                third.clear();
                third.resize(degree, 0);
                for (i, &img) in product.iter().enumerate() {
                    third[img as usize] = i as u16;
                }
                tested_members.contains(Fingerprint::of_images(&third))
            };
            if hit {
                counted += 1;
                let v = Permutation::from_images(slot_form.clone()).expect("valid image table");
                if pair_generates(&anchor, &v, &group_order, group_transitive) {
                    generating += 1;
                }
            }
            Ok(())
        };
        enumerate_class(
            group.generators(),
            slot_classes[stream].rep(),
            budget,
            cfg!(feature = "parallel"),
            on_member,
        )?;
    }

    let pivot_size = BigUint::from(sizes[pivot]);
    let triple_count = BigUint::from(counted) * &pivot_size;
    let generating_triple_count = BigUint::from(generating) * &pivot_size;
    let c1_size = BigUint::from(c1.size());
    let (pair_count, rem) = triple_count.div_rem(&c1_size);
    assert!(rem.is_zero(), "anchored census must divide evenly");
    let (generating_pair_count, rem) = generating_triple_count.div_rem(&c1_size);
    assert!(rem.is_zero(), "anchored census must divide evenly");
    let all_generate = counted == generating;
    let order_int = BigInt::from(group_order);
    let orbit_count = if all_generate {
        Some(BigRational::new(
            BigInt::from(triple_count.clone()),
            order_int.clone(),
        ))
    } else {
        None
    };
    let generating_orbit_count =
        BigRational::new(BigInt::from(generating_triple_count.clone()), order_int);
    Ok(TripleCensus {
        pair_count: u64::try_from(pair_count).expect("bounded by |C2|"),
        generating_pair_count: u64::try_from(generating_pair_count).expect("bounded by |C2|"),
        all_generate,
        triple_count,
        generating_triple_count,
        orbit_count,
        generating_orbit_count,
    })
}

/// Census aggregated over every ordered class combination matching three
/// cycle types.
#[derive(Debug)]
pub struct TypesCensus {
    /// Class-index combinations (into the table) and their censuses.
    pub combos: Vec<(usize, usize, usize, TripleCensus)>,
    /// Sum of the generating orbit counts over all combinations: the number
    /// of generating triples with these cycle types up to simultaneous
    /// conjugation (free-action formula).
    pub generating_orbit_count: BigRational,
    /// Whether the table was complete, making a zero answer definitive.
    pub table_complete: bool,
}

pub fn count_triples_by_types(
    group: &PermGroup,
    table: &ClassTable,
    t1: &CycleType,
    t2: &CycleType,
    t3: &CycleType,
    budget: &Budget,
) -> Result<TypesCensus, ClassError> {
    let mut combos = Vec::new();
    let mut total = BigRational::zero();
    for &i in &table.classes_with_type(t1) {
        for &j in &table.classes_with_type(t2) {
            for &k in &table.classes_with_type(t3) {
                let census = count_class_triples(
                    group,
                    &table.classes()[i],
                    &table.classes()[j],
                    &table.classes()[k],
                    budget,
                )?;
                total += &census.generating_orbit_count;
                combos.push((i, j, k, census));
            }
        }
    }
    Ok(TypesCensus {
        combos,
        generating_orbit_count: total,
        table_complete: table.complete(),
    })
}

/// Group-level facts the scanner cannot derive from the permutations alone.
#[derive(Debug, Clone, Copy)]
pub struct GroupMeta {
    pub is_almost_simple: bool,
    pub is_sym_or_alt: bool,
}

/// One class multiset passing every requirement, with its census.
#[derive(Debug)]
pub struct NiceTriple {
    /// Indices into the table's class list, sorted ascending.
    pub classes: (usize, usize, usize),
    pub types: (CycleType, CycleType, CycleType),
    pub census: TripleCensus,
    /// Number of distinct ordered arrangements of this class multiset.
    pub ordered_variants: u32,
}

/// Scans all class multisets {C1, C2, C3} for: genus 0 from the types, all
/// three classes rational, exactly one orbit of generating triples, a
/// primitive action, and an almost simple group that is not symmetric or
/// alternating. Requires a complete class table. For rational classes the
/// census is invariant under reordering the multiset, so each multiset is
/// counted once and its ordered multiplicity is reported alongside.
pub fn scan_nice_triples(
    group: &PermGroup,
    table: &ClassTable,
    meta: GroupMeta,
    budget: &Budget,
) -> Result<Vec<NiceTriple>, TripleError> {
    if !table.complete() {
        return Err(TripleError::IncompleteTable);
    }
    if !meta.is_almost_simple || meta.is_sym_or_alt || !group.is_primitive() {
        return Ok(Vec::new());
    }
    let n = group.degree();
    let k = table.classes().len();
    let mut rational: Vec<Option<bool>> = vec![None; k];
    let is_rational = |table: &ClassTable, idx: usize, cache: &mut Vec<Option<bool>>| -> bool {
        if cache[idx].is_none() {
            cache[idx] = Some(table.is_rational(idx));
        }
        cache[idx].unwrap()
    };
    let one = BigRational::one();
    let mut out = Vec::new();
    for i in 0..k {
        for j in i..k {
            for l in j..k {
                let (ci, cj, cl) = (
                    &table.classes()[i],
                    &table.classes()[j],
                    &table.classes()[l],
                );
                let types = [ci.cycle_type(), cj.cycle_type(), cl.cycle_type()];
                if genus_from_types(&types, n) != Some(0) {
                    continue;
                }
                if !is_rational(table, i, &mut rational)
                    || !is_rational(table, j, &mut rational)
                    || !is_rational(table, l, &mut rational)
                {
                    continue;
                }
                let census = count_class_triples(group, ci, cj, cl, budget)?;
                if census.generating_pair_count == 0 || census.generating_orbit_count != one {
                    continue;
                }
                let ordered_variants = if i == j && j == l {
                    1
                } else if i == j || j == l {
                    3
                } else {
                    6
                };
                out.push(NiceTriple {
                    classes: (i, j, l),
                    types: (
                        ci.cycle_type().clone(),
                        cj.cycle_type().clone(),
                        cl.cycle_type().clone(),
                    ),
                    census,
                    ordered_variants,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{all_classes, class_orbit};
    use std::time::Duration;

    fn group(gens: &[&str], n: usize) -> PermGroup {
        PermGroup::new(
            gens.iter()
                .map(|s| Permutation::parse(s, n).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn budget() -> Budget {
        Budget {
            max_class_members: 1 << 30,
            class_time_limit: Duration::from_secs(60),
        }
    }

    fn rational_one() -> BigRational {
        BigRational::one()
    }

    #[test]
    fn close_triple_has_product_one() {
        let x = Permutation::parse("(1,2,3,4)", 4).unwrap();
        let y = Permutation::parse("(1,3)", 4).unwrap();
        let (x, y, z) = close_triple(&x, &y);
        assert!(x.compose(&y).compose(&z).is_identity());
    }

    #[test]
    fn genus_from_small_types() {
        let t3 = CycleType::parse("3").unwrap();
        let t21 = CycleType::parse("2.1").unwrap();
        assert_eq!(genus_from_types(&[&t3, &t21, &t21], 3), Some(0));
        let id3 = CycleType::parse("1^3").unwrap();
        assert_eq!(genus_from_types(&[&t21, &id3, &id3], 3), None);
        // Two n-cycles and an identity: genus 0 as well.
        let t4 = CycleType::parse("4").unwrap();
        let id4 = CycleType::parse("1^4").unwrap();
        assert_eq!(genus_from_types(&[&t4, &t4, &id4], 4), Some(0));
    }

    #[test]
    fn divisibility_criterion_examples() {
        // Regular C6: every subdegree is 1, blocks of size 2 and 3 exist.
        match divisibility_primitivity(6, &[1, 1, 1, 1, 1, 1]) {
            DivisibilityOutcome::Inconclusive {
                block_size,
                summands,
            } => {
                assert_eq!(block_size, 2);
                assert_eq!(summands, vec![1]);
            }
            other => panic!("expected inconclusive, got {other:?}"),
        }
        // S5 on unordered pairs (degree 10, subdegrees 1, 3, 6): divisors 2
        // and 5 would need subset sums 1 and 4, neither of which exists.
        assert_eq!(
            divisibility_primitivity(10, &[1, 3, 6]),
            DivisibilityOutcome::CertifiedPrimitive
        );
        // Prime degree is always certified.
        assert_eq!(
            divisibility_primitivity(5, &[1, 2, 2]),
            DivisibilityOutcome::CertifiedPrimitive
        );
    }

    #[test]
    fn census_of_s3_transposition_triple() {
        let s3 = group(&["(1,2)", "(1,2,3)"], 3);
        let b = budget();
        let c2 = class_orbit(&s3, &Permutation::parse("(1,2)", 3).unwrap(), &b).unwrap();
        let c3 = class_orbit(&s3, &Permutation::parse("(1,2,3)", 3).unwrap(), &b).unwrap();
        let census = count_class_triples(&s3, &c2, &c2, &c3, &b).unwrap();
        assert_eq!(census.pair_count, 2);
        assert!(census.all_generate);
        assert_eq!(census.orbit_count, Some(rational_one()));
        assert_eq!(census.generating_orbit_count, rational_one());
    }

    #[test]
    fn census_of_s4_classical_triple() {
        // Transposition times 3-cycle landing on a 4-cycle: one orbit, all
        // generating.
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let b = budget();
        let c2 = class_orbit(&s4, &Permutation::parse("(1,2)", 4).unwrap(), &b).unwrap();
        let c3 = class_orbit(&s4, &Permutation::parse("(1,2,3)", 4).unwrap(), &b).unwrap();
        let c4 = class_orbit(&s4, &Permutation::parse("(1,2,3,4)", 4).unwrap(), &b).unwrap();
        let census = count_class_triples(&s4, &c2, &c3, &c4, &b).unwrap();
        assert_eq!(census.pair_count, 4);
        assert!(census.all_generate);
        assert_eq!(census.orbit_count, Some(rational_one()));
    }

    #[test]
    fn census_reports_non_generating_pairs() {
        // Double transpositions multiply into the Klein four group: pairs
        // exist but none generate, so no orbit count is reported.
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let b = budget();
        let v = class_orbit(&s4, &Permutation::parse("(1,2)(3,4)", 4).unwrap(), &b).unwrap();
        let census = count_class_triples(&s4, &v, &v, &v, &b).unwrap();
        assert_eq!(census.pair_count, 2);
        assert_eq!(census.generating_pair_count, 0);
        assert!(!census.all_generate);
        assert_eq!(census.orbit_count, None);
        assert!(census.generating_orbit_count.is_zero());
    }

    #[test]
    fn census_with_identity_third_class() {
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let b = budget();
        let v = class_orbit(&s4, &Permutation::parse("(1,2)(3,4)", 4).unwrap(), &b).unwrap();
        let t = class_orbit(&s4, &Permutation::parse("(1,2)", 4).unwrap(), &b).unwrap();
        let id = class_orbit(&s4, &Permutation::identity(4), &b).unwrap();
        // C2 is the class of the anchor's inverse: exactly one pair, not
        // generating.
        let census = count_class_triples(&s4, &v, &v, &id, &b).unwrap();
        assert_eq!(census.pair_count, 1);
        assert_eq!(census.generating_pair_count, 0);
        // C2 does not contain the anchor's inverse: no pairs at all.
        let census = count_class_triples(&s4, &v, &t, &id, &b).unwrap();
        assert_eq!(census.pair_count, 0);
        assert!(census.all_generate, "vacuously true on zero pairs");
    }

    #[test]
    fn by_types_census_sums_combinations() {
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let b = budget();
        let table = all_classes(&s4, &b, 5).unwrap();
        let t2 = CycleType::parse("2.1^2").unwrap();
        let t3 = CycleType::parse("3.1").unwrap();
        let t4 = CycleType::parse("4").unwrap();
        let census = count_triples_by_types(&s4, &table, &t2, &t3, &t4, &b).unwrap();
        assert_eq!(census.combos.len(), 1);
        assert_eq!(census.generating_orbit_count, rational_one());
        // Types with no matching class give an empty, definitive census:
        // A4 has no single transpositions.
        let a4 = group(&["(1,2,3)", "(2,3,4)"], 4);
        let table = all_classes(&a4, &b, 5).unwrap();
        let census = count_triples_by_types(&a4, &table, &t2, &t3, &t3, &b).unwrap();
        assert!(census.combos.is_empty());
        assert!(census.generating_orbit_count.is_zero());
        assert!(census.table_complete);
    }

    #[test]
    fn scan_finds_the_s3_triple() {
        // S3 with the gate flags forced open: the transposition pair with a
        // 3-cycle product is its unique nice class multiset.
        let s3 = group(&["(1,2)", "(1,2,3)"], 3);
        let b = budget();
        let table = all_classes(&s3, &b, 5).unwrap();
        let meta = GroupMeta {
            is_almost_simple: true,
            is_sym_or_alt: false,
        };
        let found = scan_nice_triples(&s3, &table, meta, &b).unwrap();
        assert_eq!(found.len(), 1);
        let t = &found[0];
        assert_eq!(t.census.orbit_count, Some(rational_one()));
        assert_eq!(t.ordered_variants, 3);
        let mut type_names: Vec<String> =
            vec![t.types.0.to_string(), t.types.1.to_string(), t.types.2.to_string()];
        type_names.sort();
        assert_eq!(type_names, vec!["2^1.1^1", "2^1.1^1", "3^1"]);
    }

    #[test]
    fn scan_respects_gates() {
        let s3 = group(&["(1,2)", "(1,2,3)"], 3);
        let b = budget();
        let table = all_classes(&s3, &b, 5).unwrap();
        let gated = GroupMeta {
            is_almost_simple: true,
            is_sym_or_alt: true,
        };
        assert!(scan_nice_triples(&s3, &table, gated, &b).unwrap().is_empty());
        let gated = GroupMeta {
            is_almost_simple: false,
            is_sym_or_alt: false,
        };
        assert!(scan_nice_triples(&s3, &table, gated, &b).unwrap().is_empty());
        // C4 is imprimitive: gate closes even with flags forced open.
        let c4 = group(&["(1,2,3,4)"], 4);
        let table = all_classes(&c4, &b, 5).unwrap();
        let open = GroupMeta {
            is_almost_simple: true,
            is_sym_or_alt: false,
        };
        assert!(scan_nice_triples(&c4, &table, open, &b).unwrap().is_empty());
    }

    #[test]
    fn scan_requires_a_complete_table() {
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let tight = Budget {
            max_class_members: 5,
            class_time_limit: Duration::from_secs(60),
        };
        let table = all_classes(&s4, &tight, 5).unwrap();
        assert!(!table.complete());
        let meta = GroupMeta {
            is_almost_simple: true,
            is_sym_or_alt: false,
        };
        assert!(matches!(
            scan_nice_triples(&s4, &table, meta, &tight),
            Err(TripleError::IncompleteTable)
        ));
    }

    #[test]
    fn nongenerating_triple_rejected_by_scan() {
        // A5 on 6 points: the only genus-0 all-rational multiset is
        // {2^2.1^2, 3^2, 3^2}, whose triples generate A4 subgroups only, so
        // the scan comes back empty even with open gates.
        let a5 = group(&["(1,2,3,4,5)", "(1,6)(2,5)"], 6);
        assert_eq!(a5.order(), BigUint::from(60u32));
        let b = budget();
        let table = all_classes(&a5, &b, 5).unwrap();
        assert!(table.complete());
        let meta = GroupMeta {
            is_almost_simple: true,
            is_sym_or_alt: false,
        };
        assert!(scan_nice_triples(&a5, &table, meta, &b).unwrap().is_empty());
    }
}
