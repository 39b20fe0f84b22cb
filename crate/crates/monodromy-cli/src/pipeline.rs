//! The verification and scan pipelines behind the CLI.
//!
//! `run_verify` executes a fixed sequence of certifying steps against one
//! fixture and never aborts on a mathematical failure: each step reports
//! pass, fail, or skipped, and the overall verdict comes from
//! [`VerifyReport::conclude`]. A step is skipped either because a budget ran
//! out or because an earlier step it depends on did not produce its inputs.
//! Budgets never influence any reported value; they only decide whether a
//! step ran to completion.

use std::time::Duration;

use num_rational::BigRational;
use num_traits::One;

use monodromy::belyi::{degree_count, match_profiles, BelyiMap, FiberProfiles, SuppliedPair};
use monodromy::bsgs::{GroupError, PermGroup};
use monodromy::classes::{all_classes, class_orbit, is_rational_class, ClassError};
use monodromy::poly::parse_factored;
use monodromy::triples::{
    close_triple, count_class_triples, count_triples_by_types, divisibility_primitivity,
    genus_from_types, scan_nice_triples, DivisibilityOutcome, GroupMeta, TripleCensus,
    TripleError,
};
use monodromy::{Budget, CycleType, Permutation};

use crate::fixture::Fixture;
use crate::report::{
    ScanReport, ScanTriple, SkipReason, StepReport, VerifyReport, SCHEMA_VERSION,
};

pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub budget: Budget,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            budget: Budget::default(),
            seed: DEFAULT_SEED,
        }
    }
}

/// Budget precedence: command-line flags over fixture keys over defaults.
pub fn resolve_config(
    fx: &Fixture,
    class_members: Option<u64>,
    seconds: Option<u64>,
    seed: Option<u64>,
) -> RunConfig {
    let members = class_members
        .or(fx.budget_class_size)
        .unwrap_or(Budget::DEFAULT_MAX_CLASS_MEMBERS);
    let time = seconds
        .or(fx.budget_seconds)
        .map(Duration::from_secs)
        .unwrap_or(Budget::DEFAULT_CLASS_TIME_LIMIT);
    RunConfig {
        budget: Budget::new(members, time),
        seed: seed.unwrap_or(DEFAULT_SEED),
    }
}

fn dependency(name: &'static str, needs: &str) -> StepReport {
    StepReport::skipped(name, SkipReason::Dependency, format!("needs {needs}"))
}

pub fn run_verify(fx: &Fixture, cfg: &RunConfig) -> VerifyReport {
    let n = fx.degree;
    let budget = &cfg.budget;
    let mut steps: Vec<StepReport> = Vec::new();

    // parse: x and y must be permutations of exactly n points.
    let parsed: Option<(Permutation, Permutation)> = match (
        Permutation::parse(&fx.x_text, n),
        Permutation::parse(&fx.y_text, n),
    ) {
        (Ok(x), Ok(y)) => {
            steps.push(StepReport::pass(
                "parse",
                format!("x and y are permutations of {n} points"),
            ));
            Some((x, y))
        }
        (rx, ry) => {
            let mut problems = Vec::new();
            if let Err(e) = rx {
                problems.push(format!("x: {e}"));
            }
            if let Err(e) = ry {
                problems.push(format!("y: {e}"));
            }
            steps.push(StepReport::fail("parse", problems.join("; ")));
            None
        }
    };

    // closure: build z and recheck x*y*z = 1 by composition.
    let triple: Option<(Permutation, Permutation, Permutation)> = match &parsed {
        Some((x, y)) => {
            let (x, y, z) = close_triple(x, y);
            if x.compose(&y).compose(&z).is_identity() {
                steps.push(
                    StepReport::pass("closure", "x * y * z recomposes to the identity")
                        .with("z_cycle_type", z.cycle_type()),
                );
                Some((x, y, z))
            } else {
                steps.push(StepReport::fail("closure", "x * y * z is not the identity"));
                None
            }
        }
        None => {
            steps.push(dependency("closure", "parsed permutations"));
            None
        }
    };

    // types: computed cycle types against the claims. Later steps use the
    // computed types either way, so a claim mismatch fails here without
    // blocking the rest of the report.
    let types: Option<[CycleType; 3]> = match &triple {
        Some((x, y, z)) => {
            let computed = [x.cycle_type(), y.cycle_type(), z.cycle_type()];
            let mismatches: Vec<String> = ["x", "y", "z"]
                .iter()
                .zip(computed.iter().zip(&fx.claimed_types))
                .filter(|(_, (got, want))| got != want)
                .map(|(w, (got, want))| format!("{w}: computed {got}, claimed {want}"))
                .collect();
            let step = if mismatches.is_empty() {
                StepReport::pass("types", "computed cycle types match the claims")
            } else {
                StepReport::fail("types", mismatches.join("; "))
            };
            steps.push(
                step.with("type_x", &computed[0])
                    .with("type_y", &computed[1])
                    .with("type_z", &computed[2]),
            );
            Some(computed)
        }
        None => {
            steps.push(dependency("types", "the closed triple"));
            None
        }
    };

    // genus: the three computed types must give genus 0.
    match &types {
        Some(t) => {
            let refs = [&t[0], &t[1], &t[2]];
            match genus_from_types(&refs, n) {
                Some(0) => steps.push(
                    StepReport::pass("genus", "the cycle types give genus 0").with("genus", 0),
                ),
                Some(g) => steps.push(
                    StepReport::fail("genus", format!("the cycle types give genus {g}"))
                        .with("genus", g),
                ),
                None => steps.push(StepReport::fail(
                    "genus",
                    "total ramification is odd, impossible for a cover",
                )),
            }
        }
        None => steps.push(dependency("genus", "computed cycle types")),
    }

    // order: the certified order of <x, y>.
    let group: Option<PermGroup> = match &triple {
        Some((x, y, _)) => match PermGroup::new(vec![x.clone(), y.clone()]) {
            Ok(g) => {
                let order = g.order();
                steps.push(
                    StepReport::pass("order", format!("|<x, y>| = {order}")).with("order", &order),
                );
                Some(g)
            }
            Err(e) => {
                steps.push(StepReport::fail("order", e.to_string()));
                None
            }
        },
        None => {
            steps.push(dependency("order", "parsed permutations"));
            None
        }
    };

    // transitivity.
    let transitive = match &group {
        Some(g) => {
            let t = g.is_transitive();
            steps.push(if t {
                StepReport::pass("transitivity", "<x, y> is transitive")
            } else {
                StepReport::fail("transitivity", "<x, y> is not transitive")
            });
            t
        }
        None => {
            steps.push(dependency("transitivity", "the group"));
            false
        }
    };

    // subdegrees: point-stabilizer orbit sizes against the claims.
    let subdegrees: Option<Vec<usize>> = match &group {
        Some(g) if transitive => match g.subdegrees() {
            Ok(subs) => {
                let fmt = |v: &[usize]| {
                    v.iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                let step = if subs == fx.claimed_subdegrees {
                    StepReport::pass("subdegrees", "computed subdegrees match the claims")
                } else {
                    StepReport::fail(
                        "subdegrees",
                        format!(
                            "computed {} but claimed {}",
                            fmt(&subs),
                            fmt(&fx.claimed_subdegrees)
                        ),
                    )
                };
                steps.push(
                    step.with("computed", fmt(&subs))
                        .with("claimed", fmt(&fx.claimed_subdegrees)),
                );
                Some(subs)
            }
            Err(e) => {
                steps.push(StepReport::fail("subdegrees", e.to_string()));
                None
            }
        },
        _ => {
            steps.push(dependency("subdegrees", "a transitive group"));
            None
        }
    };

    // divisibility: the subdegree criterion. Both outcomes are valid
    // reports; certification is one-sided, so inconclusive is not a failure.
    match &subdegrees {
        Some(subs) => match divisibility_primitivity(n, subs) {
            DivisibilityOutcome::CertifiedPrimitive => steps.push(
                StepReport::pass(
                    "divisibility",
                    "no proper divisor d of n has a suborbit union of size d - 1",
                )
                .with("outcome", "certified_primitive"),
            ),
            DivisibilityOutcome::Inconclusive {
                block_size,
                summands,
            } => {
                let sum = summands
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(" + ");
                steps.push(
                    StepReport::pass(
                        "divisibility",
                        format!(
                            "inconclusive: {block_size} divides {n} and {block_size} - 1 = 1 + {sum}"
                        ),
                    )
                    .with("outcome", "inconclusive")
                    .with("block_size", block_size),
                );
            }
        },
        None => steps.push(dependency("divisibility", "computed subdegrees")),
    }

    // primitivity: the full minimal-blocks certificate.
    match &group {
        Some(g) => {
            if g.is_primitive() {
                steps.push(StepReport::pass(
                    "primitivity",
                    "every minimal block system is trivial",
                ));
            } else {
                steps.push(StepReport::fail("primitivity", "the action is imprimitive"));
            }
        }
        None => steps.push(dependency("primitivity", "the group")),
    }

    // rationality: each of the three classes closed under coprime powers.
    match (&group, &triple) {
        (Some(g), Some((x, y, z))) => {
            let mut step = StepReport::pass("rationality", "all three classes are rational");
            let mut failures = Vec::new();
            let mut unknowns = Vec::new();
            for (label, rep) in [("x", x), ("y", y), ("z", z)] {
                match is_rational_class(g, rep, budget) {
                    Ok(tri) => {
                        step = step.with(label, &tri);
                        match tri {
                            monodromy::budget::Tri::Yes => {}
                            monodromy::budget::Tri::No => {
                                failures.push(format!("the class of {label} is not rational"))
                            }
                            monodromy::budget::Tri::Unknown(e) => unknowns.push(format!("{label}: {e}")),
                        }
                    }
                    Err(e) => {
                        step = step.with(label, format!("error: {e}"));
                        failures.push(format!("{label}: {e}"));
                    }
                }
            }
            if !failures.is_empty() {
                step.status = crate::report::StepStatus::Fail;
                step.detail = failures.join("; ");
            } else if !unknowns.is_empty() {
                step.status = crate::report::StepStatus::Skipped;
                step.skip_reason = Some(SkipReason::Budget);
                step.detail = unknowns.join("; ");
            }
            steps.push(step);
        }
        _ => steps.push(dependency("rationality", "the group and the triple")),
    }

    // rigidity: the census over the fixture's own classes. The third slot
    // is the class of x*y, so the counted pairs are exactly the triples
    // conjugate to (x, y, z) in type.
    match (&group, &triple) {
        (Some(g), Some((x, y, _))) => {
            let xy = x.compose(y);
            let result: Result<(u64, u64, u64, TripleCensus), ClassError> = (|| {
                let c1 = class_orbit(g, x, budget)?;
                let c2 = class_orbit(g, y, budget)?;
                let c3 = class_orbit(g, &xy, budget)?;
                let census = count_class_triples(g, &c1, &c2, &c3, budget)?;
                Ok((c1.size(), c2.size(), c3.size(), census))
            })();
            match result {
                Ok((s1, s2, s3, census)) => {
                    // Rigid means the generating triples with these classes
                    // form exactly one orbit under simultaneous conjugation.
                    // Pairs generating a proper subgroup do not count
                    // against rigidity; they are reported as evidence.
                    let rigid = census.generating_pair_count > 0
                        && census.generating_orbit_count == BigRational::one();
                    let step = if rigid {
                        StepReport::pass(
                            "rigidity",
                            format!(
                                "the {} generating triples form one orbit ({} of {} anchored pairs generate)",
                                census.generating_triple_count,
                                census.generating_pair_count,
                                census.pair_count
                            ),
                        )
                    } else {
                        StepReport::fail(
                            "rigidity",
                            format!(
                                "{} of {} anchored pairs generate, giving {} orbits of generating triples",
                                census.generating_pair_count,
                                census.pair_count,
                                census.generating_orbit_count
                            ),
                        )
                    };
                    steps.push(
                        step.with("class_size_x", s1)
                            .with("class_size_y", s2)
                            .with("class_size_xy", s3)
                            .with("pair_count", census.pair_count)
                            .with("generating_pair_count", census.generating_pair_count)
                            .with("triple_count", &census.triple_count)
                            .with("generating_triple_count", &census.generating_triple_count)
                            .with("all_generate", census.all_generate)
                            .with("generating_orbit_count", &census.generating_orbit_count),
                    );
                }
                Err(ClassError::Budget(e)) => {
                    steps.push(StepReport::skipped("rigidity", SkipReason::Budget, e.to_string()))
                }
                Err(e) => steps.push(StepReport::fail("rigidity", e.to_string())),
            }
        }
        _ => steps.push(dependency("rigidity", "the group and the triple")),
    }

    // uniqueness: across the whole class table, triples with these cycle
    // types form exactly one generating orbit. Needs a complete table.
    match (&group, &types) {
        (Some(g), Some(t)) => match all_classes(g, budget, cfg.seed) {
            Err(e) => steps.push(StepReport::fail("uniqueness", e.to_string())),
            Ok(table) => {
                if !table.complete() {
                    steps.push(StepReport::skipped(
                        "uniqueness",
                        SkipReason::Budget,
                        format!(
                            "class table incomplete: covered {} of {} elements ({} classes skipped)",
                            table.covered(),
                            table.group_order(),
                            table.skipped().len()
                        ),
                    ));
                } else {
                    match count_triples_by_types(g, &table, &t[0], &t[1], &t[2], budget) {
                        Ok(census) => {
                            let unique = census.generating_orbit_count == BigRational::one();
                            let step = if unique {
                                StepReport::pass(
                                    "uniqueness",
                                    format!(
                                        "one generating orbit with these types across {} class combination(s)",
                                        census.combos.len()
                                    ),
                                )
                            } else {
                                StepReport::fail(
                                    "uniqueness",
                                    format!(
                                        "{} generating orbits with these types",
                                        census.generating_orbit_count
                                    ),
                                )
                            };
                            steps.push(
                                step.with("class_count", table.classes().len())
                                    .with("combo_count", census.combos.len())
                                    .with(
                                        "generating_orbit_count",
                                        &census.generating_orbit_count,
                                    ),
                            );
                        }
                        Err(ClassError::Budget(e)) => steps.push(StepReport::skipped(
                            "uniqueness",
                            SkipReason::Budget,
                            e.to_string(),
                        )),
                        Err(e) => steps.push(StepReport::fail("uniqueness", e.to_string())),
                    }
                }
            }
        },
        _ => steps.push(dependency("uniqueness", "the group and computed cycle types")),
    }

    // belyi_identity: parse the two supplied polynomials, derive the third
    // from p = q + r, and certify the identity, coprimality, and the degree.
    let letters = match fx.supplied {
        SuppliedPair::PQ => ("p", "q"),
        SuppliedPair::PR => ("p", "r"),
        SuppliedPair::QR => ("q", "r"),
    };
    let map: Option<BelyiMap> = {
        match (
            parse_factored(&fx.first_poly_text),
            parse_factored(&fx.second_poly_text),
        ) {
            (Ok(first), Ok(second)) => {
                match BelyiMap::from_pair(fx.supplied, first.expand(), second.expand()) {
                    Ok(map) => {
                        let deg = |p: &monodromy::poly::ScaledPoly| {
                            p.degree().map_or("-".to_string(), |d| d.to_string())
                        };
                        let mut problems = Vec::new();
                        if !map.identity_holds() {
                            problems.push("p - (q + r) is not zero".to_string());
                        }
                        if !map.is_coprime() {
                            problems.push("p and q share a nonconstant factor".to_string());
                        }
                        if map.degree() != n {
                            problems.push(format!(
                                "map degree {} does not equal the fixture degree {n}",
                                map.degree()
                            ));
                        }
                        let step = if problems.is_empty() {
                            StepReport::pass(
                                "belyi_identity",
                                format!("p = q + r holds, p and q are coprime, degree {n}"),
                            )
                        } else {
                            StepReport::fail("belyi_identity", problems.join("; "))
                        };
                        let gcd_degree = map
                            .numerator_denominator_gcd()
                            .degree()
                            .map_or("-".to_string(), |d| d.to_string());
                        let ok = problems.is_empty();
                        steps.push(
                            step.with("deg_p", deg(map.p()))
                                .with("deg_q", deg(map.q()))
                                .with("deg_r", deg(map.r()))
                                .with("gcd_degree", gcd_degree),
                        );
                        // Fiber profiles are only meaningful in lowest terms
                        // at the right degree, so a failed identity step
                        // withholds the map from the later steps.
                        ok.then_some(map)
                    }
                    Err(e) => {
                        steps.push(StepReport::fail("belyi_identity", e.to_string()));
                        None
                    }
                }
            }
            (first, second) => {
                let mut problems = Vec::new();
                if let Err(e) = first {
                    problems.push(format!("{}: {e}", letters.0));
                }
                if let Err(e) = second {
                    problems.push(format!("{}: {e}", letters.1));
                }
                steps.push(StepReport::fail("belyi_identity", problems.join("; ")));
                None
            }
        }
    };

    // profiles: exact fiber multiplicity profiles over 0, 1, and infinity.
    let profiles: Option<FiberProfiles> = match &map {
        Some(m) => match m.fiber_profiles() {
            Ok(p) => {
                let infinity_note = [
                    ("0", &p.over_zero),
                    ("1", &p.over_one),
                    ("infinity", &p.over_infinity),
                ]
                .iter()
                .find_map(|(at, f)| {
                    f.infinite_part()
                        .map(|m| format!("the point at infinity lies over {at} with multiplicity {m}"))
                })
                .unwrap_or_else(|| "every fiber point is finite".to_string());
                let partitions = p.all().iter().all(|f| f.profile().total() == n);
                let step = if partitions {
                    StepReport::pass(
                        "profiles",
                        format!("all three fiber profiles are partitions of {n}; {infinity_note}"),
                    )
                } else {
                    StepReport::fail("profiles", "a fiber profile does not sum to the degree")
                };
                steps.push(
                    step.with("over_zero", p.over_zero.profile())
                        .with("over_one", p.over_one.profile())
                        .with("over_infinity", p.over_infinity.profile()),
                );
                partitions.then_some(p)
            }
            Err(e) => {
                steps.push(StepReport::fail("profiles", e.to_string()));
                None
            }
        },
        None => {
            steps.push(dependency("profiles", "a certified map"));
            None
        }
    };

    // degree_count: total defect exactly 2n - 2, which pins genus 0 and
    // rules out branching anywhere else.
    match &profiles {
        Some(p) => {
            let cert = degree_count(p, n);
            let step = if cert.holds {
                StepReport::pass(
                    "degree_count",
                    format!("total defect {} equals 2n - 2 = {}", cert.total_defect, cert.required),
                )
            } else {
                StepReport::fail(
                    "degree_count",
                    format!("total defect {} but 2n - 2 = {}", cert.total_defect, cert.required),
                )
            };
            steps.push(
                step.with("total_defect", cert.total_defect)
                    .with("required", cert.required),
            );
        }
        None => steps.push(dependency("degree_count", "fiber profiles")),
    }

    // profile_match: fibers over (0, 1, infinity) against the triple types.
    match (&profiles, &types) {
        (Some(p), Some(t)) => match match_profiles(p, [&t[0], &t[1], &t[2]]) {
            Some(m) => {
                let letter = ["x", "y", "z"];
                let assignment = format!(
                    "over 0 -> {}, over 1 -> {}, over infinity -> {}",
                    letter[m.assignment[0]], letter[m.assignment[1]], letter[m.assignment[2]]
                );
                steps.push(
                    StepReport::pass("profile_match", format!("fibers match the triple: {assignment}"))
                        .with("assignment", assignment)
                        .with("unique", m.unique),
                );
            }
            None => steps.push(StepReport::fail(
                "profile_match",
                "no assignment of fibers to the three cycle types matches",
            )),
        },
        _ => steps.push(dependency("profile_match", "fiber profiles and computed cycle types")),
    }

    let mut report = VerifyReport {
        schema_version: SCHEMA_VERSION,
        fixture: fx.name.clone(),
        group: fx.group_label.clone(),
        degree: n,
        seed: cfg.seed,
        budget_class_members: budget.max_class_members,
        budget_seconds: budget.class_time_limit.as_secs(),
        steps,
        pass: false,
        budget_limited: false,
    };
    report.conclude();
    report
}

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error("permutation {0} does not parse: {1}")]
    Permutation(&'static str, String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("computational failure: {0}")]
    Classes(String),
}

/// Enumerates every class multiset of the fixture's group that passes the
/// full filter chain: genus 0, all classes rational, one generating orbit,
/// primitive action, almost simple but not symmetric or alternating.
pub fn run_scan(fx: &Fixture, cfg: &RunConfig) -> Result<ScanReport, ScanError> {
    let n = fx.degree;
    let x = Permutation::parse(&fx.x_text, n)
        .map_err(|e| ScanError::Permutation("x", e.to_string()))?;
    let y = Permutation::parse(&fx.y_text, n)
        .map_err(|e| ScanError::Permutation("y", e.to_string()))?;
    let group = PermGroup::new(vec![x, y])?;
    let meta = GroupMeta {
        is_almost_simple: fx.almost_simple,
        is_sym_or_alt: fx.sym_or_alt,
    };

    let mut report = ScanReport {
        schema_version: SCHEMA_VERSION,
        fixture: fx.name.clone(),
        group: fx.group_label.clone(),
        degree: n,
        seed: cfg.seed,
        budget_class_members: cfg.budget.max_class_members,
        budget_seconds: cfg.budget.class_time_limit.as_secs(),
        group_order: group.order().to_string(),
        class_count: 0,
        table_complete: true,
        triples: Vec::new(),
        ordered_total: 0,
        gate: None,
        budget_stop: None,
    };

    // Structural gates decide the scan without any class enumeration.
    if !meta.is_almost_simple {
        report.gate = Some("the group is not almost simple".into());
        return Ok(report);
    }
    if meta.is_sym_or_alt {
        report.gate = Some("the group is symmetric or alternating".into());
        return Ok(report);
    }
    if !group.is_primitive() {
        report.gate = Some("the action is not primitive".into());
        return Ok(report);
    }

    let table =
        all_classes(&group, &cfg.budget, cfg.seed).map_err(|e| ScanError::Classes(e.to_string()))?;
    report.class_count = table.classes().len();
    report.table_complete = table.complete();
    if !table.complete() {
        return Ok(report);
    }

    let nice = match scan_nice_triples(&group, &table, meta, &cfg.budget) {
        Ok(nice) => nice,
        Err(TripleError::IncompleteTable) => unreachable!("completeness checked above"),
        Err(TripleError::Class(ClassError::Budget(e))) => {
            report.budget_stop = Some(e.to_string());
            return Ok(report);
        }
        Err(TripleError::Class(e)) => return Err(ScanError::Classes(e.to_string())),
    };
    for t in nice {
        let (i, j, l) = t.classes;
        let size = |idx: usize| table.classes()[idx].size().to_string();
        report.ordered_total += t.ordered_variants;
        report.triples.push(ScanTriple {
            types: [
                t.types.0.to_string(),
                t.types.1.to_string(),
                t.types.2.to_string(),
            ],
            class_indices: [i, j, l],
            class_sizes: [size(i), size(j), size(l)],
            pair_count: t.census.pair_count.to_string(),
            generating_pair_count: t.census.generating_pair_count.to_string(),
            generating_orbit_count: t.census.generating_orbit_count.to_string(),
            ordered_variants: t.ordered_variants,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture::parse_fixture;
    use crate::report::StepStatus;

    const TOY: &str = "\
name = toy
group = S3
degree = 3
almost_simple = true
sym_or_alt = false
x = (1, 2, 3)
y = (1, 2)
type_x = 3
type_y = 2.1
type_z = 2.1
subdegrees = 1, 2
p = X^2 (3 - 2X)
r = -(X - 1)^2 (2X + 1)
";

    fn status(report: &VerifyReport, name: &str) -> StepStatus {
        report
            .steps
            .iter()
            .find(|s| s.name == name)
            .unwrap_or_else(|| panic!("step {name} missing"))
            .status
    }

    #[test]
    fn toy_fixture_passes_every_step() {
        let fx = parse_fixture(TOY).unwrap();
        let report = run_verify(&fx, &RunConfig::default());
        for step in &report.steps {
            assert_eq!(step.status, StepStatus::Pass, "step {}: {}", step.name, step.detail);
        }
        assert!(report.pass);
        assert!(!report.budget_limited);
        let order = &report.steps.iter().find(|s| s.name == "order").unwrap().evidence["order"];
        assert_eq!(order, "6");
    }

    #[test]
    fn step_names_come_in_pipeline_order() {
        let fx = parse_fixture(TOY).unwrap();
        let report = run_verify(&fx, &RunConfig::default());
        let names: Vec<&str> = report.steps.iter().map(|s| s.name).collect();
        assert_eq!(
            names,
            [
                "parse",
                "closure",
                "types",
                "genus",
                "order",
                "transitivity",
                "subdegrees",
                "divisibility",
                "primitivity",
                "rationality",
                "rigidity",
                "uniqueness",
                "belyi_identity",
                "profiles",
                "degree_count",
                "profile_match"
            ]
        );
    }

    #[test]
    fn tampered_permutation_fails_types_not_parse() {
        let fx = parse_fixture(&TOY.replace("y = (1, 2)", "y = ()")).unwrap();
        let report = run_verify(&fx, &RunConfig::default());
        assert_eq!(status(&report, "parse"), StepStatus::Pass);
        assert_eq!(status(&report, "types"), StepStatus::Fail);
        assert!(!report.pass);
    }

    #[test]
    fn unparseable_permutation_skips_dependent_steps() {
        let fx = parse_fixture(&TOY.replace("y = (1, 2)", "y = (1, 9)")).unwrap();
        let report = run_verify(&fx, &RunConfig::default());
        assert_eq!(status(&report, "parse"), StepStatus::Fail);
        assert_eq!(status(&report, "closure"), StepStatus::Skipped);
        assert_eq!(status(&report, "profile_match"), StepStatus::Skipped);
        // The polynomial side is independent of the permutations.
        assert_eq!(status(&report, "belyi_identity"), StepStatus::Pass);
        assert_eq!(status(&report, "degree_count"), StepStatus::Pass);
        assert!(!report.pass, "a skipped required step cannot pass");
    }

    #[test]
    fn wrong_subdegree_claim_fails_only_that_step() {
        let fx = parse_fixture(&TOY.replace("subdegrees = 1, 2", "subdegrees = 1, 1, 1")).unwrap();
        let report = run_verify(&fx, &RunConfig::default());
        assert_eq!(status(&report, "subdegrees"), StepStatus::Fail);
        assert_eq!(status(&report, "divisibility"), StepStatus::Pass);
        assert!(!report.pass);
    }

    #[test]
    fn tight_budget_skips_census_steps_but_not_certificates() {
        let fx = parse_fixture(TOY).unwrap();
        let cfg = RunConfig {
            budget: Budget::new(1, Duration::from_secs(600)),
            seed: DEFAULT_SEED,
        };
        let report = run_verify(&fx, &cfg);
        assert_eq!(status(&report, "rationality"), StepStatus::Skipped);
        assert_eq!(status(&report, "rigidity"), StepStatus::Skipped);
        assert_eq!(status(&report, "uniqueness"), StepStatus::Skipped);
        assert_eq!(status(&report, "degree_count"), StepStatus::Pass);
        assert!(report.pass, "budget skips on optional steps keep the verdict");
        assert!(report.budget_limited);
    }

    #[test]
    fn scan_gates_and_finds_the_toy_triple() {
        let fx = parse_fixture(TOY).unwrap();
        let cfg = RunConfig::default();
        let open = run_scan(&fx, &cfg).unwrap();
        assert_eq!(open.triples.len(), 1);
        assert_eq!(open.ordered_total, 3);
        assert_eq!(open.triples[0].generating_orbit_count, "1");
        assert!(open.table_complete);
        assert!(open.gate.is_none());

        let gated = parse_fixture(&TOY.replace("sym_or_alt = false", "sym_or_alt = true")).unwrap();
        let report = run_scan(&gated, &cfg).unwrap();
        assert_eq!(report.triples.len(), 0);
        assert!(report.gate.is_some());

        let not_as =
            parse_fixture(&TOY.replace("almost_simple = true", "almost_simple = false")).unwrap();
        assert!(run_scan(&not_as, &cfg).unwrap().gate.is_some());
    }

    #[test]
    fn scan_reports_an_incomplete_table() {
        let fx = parse_fixture(TOY).unwrap();
        let cfg = RunConfig {
            budget: Budget::new(1, Duration::from_secs(600)),
            seed: DEFAULT_SEED,
        };
        let report = run_scan(&fx, &cfg).unwrap();
        assert!(!report.table_complete);
        assert!(report.triples.is_empty());
    }

    #[test]
    fn config_resolution_prefers_flags_over_fixture_keys() {
        let mut fx = parse_fixture(TOY).unwrap();
        fx.budget_class_size = Some(123);
        fx.budget_seconds = Some(7);
        let cfg = resolve_config(&fx, None, None, None);
        assert_eq!(cfg.budget.max_class_members, 123);
        assert_eq!(cfg.budget.class_time_limit, Duration::from_secs(7));
        assert_eq!(cfg.seed, DEFAULT_SEED);
        let cfg = resolve_config(&fx, Some(9), Some(11), Some(42));
        assert_eq!(cfg.budget.max_class_members, 9);
        assert_eq!(cfg.budget.class_time_limit, Duration::from_secs(11));
        assert_eq!(cfg.seed, 42);
        fx.budget_class_size = None;
        fx.budget_seconds = None;
        let cfg = resolve_config(&fx, None, None, None);
        assert_eq!(cfg.budget.max_class_members, Budget::DEFAULT_MAX_CLASS_MEMBERS);
    }
}
