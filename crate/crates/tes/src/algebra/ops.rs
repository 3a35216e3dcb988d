//! Product and division of components.
//!
//! The product composes every composable pair of behaviors; the division
//! recovers the behaviors that can still compose with the divisor into
//! the dividend. Both sides are finite-prefix approximations: the
//! product acceptor searches for a decomposition of a prefix between the
//! two operands, and the division acceptor searches the divisor's
//! generator for a witness.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::component::{Component, EventSet, EventType};
use crate::stream::{Observable, Observation, TesPrefix, Verdict};

use super::lift::{lift_composition, ObsComposition, TesRelation};

/// Node cap for the product acceptor's decomposition search. Exhausting
/// it yields `Pending`, never a spurious `Fail`.
pub const DECOMPOSITION_BUDGET: usize = 200_000;

/// How one observation of a composite prefix is attributed to the
/// operands.
enum Attribution<E: EventType> {
    LeftOnly,
    RightOnly,
    Split(Observable<E>, Observable<E>),
}

/// All attributions of `obs` consistent with the operand interfaces and
/// the composition function. Either operand may also simply not observe
/// at this instant, when the whole observable fits the other side.
fn attributions<E: EventType>(
    obs: &Observable<E>,
    left_scope: &EventSet<E>,
    right_scope: &EventSet<E>,
    plus: &ObsComposition<E>,
) -> Vec<Attribution<E>> {
    let mut options = Vec::new();
    if left_scope.contains_all(obs) {
        options.push(Attribution::LeftOnly);
    }
    if right_scope.contains_all(obs) {
        options.push(Attribution::RightOnly);
    }
    let events: Vec<&E> = obs.iter().collect();
    let left_pool: Vec<&E> = events
        .iter()
        .copied()
        .filter(|e| left_scope.contains(e))
        .collect();
    let right_pool: Vec<&E> = events
        .iter()
        .copied()
        .filter(|e| right_scope.contains(e))
        .collect();
    for left_mask in 0..(1u32 << left_pool.len()) {
        let left: Observable<E> = left_pool
            .iter()
            .enumerate()
            .filter(|(i, _)| left_mask & (1 << i) != 0)
            .map(|(_, e)| (*e).clone())
            .collect();
        for right_mask in 0..(1u32 << right_pool.len()) {
            let right: Observable<E> = right_pool
                .iter()
                .enumerate()
                .filter(|(i, _)| right_mask & (1 << i) != 0)
                .map(|(_, e)| (*e).clone())
                .collect();
            if plus.combine(&left, &right) == *obs {
                options.push(Attribution::Split(left.clone(), right));
            }
        }
    }
    options
}

struct DecompositionSearch<'a, E: EventType> {
    prefix: &'a TesPrefix<E>,
    left: &'a Component<E>,
    right: &'a Component<E>,
    rel: &'a TesRelation<E>,
    plus: &'a ObsComposition<E>,
    nodes_left: usize,
    exhausted: bool,
}

impl<E: EventType> DecompositionSearch<'_, E> {
    /// Depth-first over attributions, pruning on any operand `Fail` and
    /// on relation refutation (both are extension-closed, so pruning is
    /// sound). Returns the verdict of the first surviving decomposition.
    fn run(
        &mut self,
        index: usize,
        left_prefix: &TesPrefix<E>,
        right_prefix: &TesPrefix<E>,
    ) -> Option<Verdict> {
        if self.nodes_left == 0 {
            self.exhausted = true;
            return None;
        }
        self.nodes_left -= 1;

        let left_verdict = self.left.accepts(left_prefix);
        if left_verdict.is_fail() {
            return None;
        }
        let right_verdict = self.right.accepts(right_prefix);
        if right_verdict.is_fail() {
            return None;
        }
        if self
            .rel
            .check(
                left_prefix,
                right_prefix,
                self.left.interface(),
                self.right.interface(),
            )
            .is_fail()
        {
            return None;
        }

        let Some(obs) = self.prefix.get(index) else {
            // Every observation attributed; confirm the decomposition
            // reassembles the prefix.
            if lift_composition(self.plus, left_prefix, right_prefix) != *self.prefix {
                return None;
            }
            let verdict = if left_verdict.is_pass() && right_verdict.is_pass() {
                Verdict::Pass
            } else {
                Verdict::Pending
            };
            return Some(verdict);
        };

        for option in attributions(
            &obs.observable,
            self.left.interface(),
            self.right.interface(),
            self.plus,
        ) {
            let (next_left, next_right) = match option {
                Attribution::LeftOnly => (
                    left_prefix.extended(obs.clone()).ok(),
                    Some(right_prefix.clone()),
                ),
                Attribution::RightOnly => (
                    Some(left_prefix.clone()),
                    right_prefix.extended(obs.clone()).ok(),
                ),
                Attribution::Split(l, r) => (
                    left_prefix
                        .extended(Observation::new(l, obs.time))
                        .ok(),
                    right_prefix
                        .extended(Observation::new(r, obs.time))
                        .ok(),
                ),
            };
            let (Some(next_left), Some(next_right)) = (next_left, next_right) else {
                continue;
            };
            if let Some(verdict) = self.run(index + 1, &next_left, &next_right) {
                return Some(verdict);
            }
        }
        None
    }
}

/// The product of two components under a composability relation and a
/// composition function.
///
/// Interface: the union of the operand interfaces. Generation composes
/// every pair of generated prefixes the relation does not refute.
/// Acceptance searches for a decomposition of the prefix into operand
/// prefixes that the relation and both acceptors tolerate and whose
/// merge is the prefix itself; `Fail` means the exhaustive search found
/// none, and running out of budget yields `Pending`.
pub fn product<E: EventType>(
    c1: &Component<E>,
    c2: &Component<E>,
    rel: TesRelation<E>,
    plus: ObsComposition<E>,
) -> Component<E> {
    let label = format!("({} × {})", c1.label(), c2.label());
    let interface = c1.interface().clone().union(c2.interface().clone());

    let gen_c1 = c1.clone();
    let gen_c2 = c2.clone();
    let gen_rel = rel.clone();
    let gen_plus = plus.clone();
    let generator = Arc::new(move |depth: usize, seed: u64| {
        let left_set = gen_c1.generate(depth, seed);
        let right_set = gen_c2.generate(depth, seed);
        let mut out = BTreeSet::new();
        for p1 in &left_set {
            for p2 in &right_set {
                let composable = gen_rel
                    .check(p1, p2, gen_c1.interface(), gen_c2.interface())
                    != Verdict::Fail;
                if composable {
                    out.insert(lift_composition(&gen_plus, p1, p2));
                }
            }
        }
        out
    });

    let acc_c1 = c1.clone();
    let acc_c2 = c2.clone();
    let acceptor = Arc::new(move |p: &TesPrefix<E>| {
        let mut search = DecompositionSearch {
            prefix: p,
            left: &acc_c1,
            right: &acc_c2,
            rel: &rel,
            plus: &plus,
            nodes_left: DECOMPOSITION_BUDGET,
            exhausted: false,
        };
        match search.run(0, &TesPrefix::empty(), &TesPrefix::empty()) {
            Some(verdict) => verdict,
            None if search.exhausted => Verdict::Pending,
            None => Verdict::Fail,
        }
    });

    Component::new(label, interface, acceptor, generator)
}

/// Witness search bounds for [`divide`].
///
/// `exhaustive` asserts that the divisor's generator enumerates its
/// whole behavior up to `depth` (true for finite-universe components);
/// only then may a fruitless search conclude `Fail`. Otherwise the
/// search running out of budget is reported as `Pending`, which is how
/// budget exhaustion stays distinguishable from refutation.
#[derive(Clone, Copy, Debug)]
pub struct WitnessSearch {
    pub depth: usize,
    pub seeds: u64,
    pub exhaustive: bool,
}

impl Default for WitnessSearch {
    fn default() -> Self {
        WitnessSearch {
            depth: 4,
            seeds: 4,
            exhaustive: false,
        }
    }
}

/// The division of `c1` by `c2`: the component over `c1`'s interface
/// whose behaviors compose with some behavior of `c2` into a behavior of
/// `c1`.
pub fn divide<E: EventType>(
    c1: &Component<E>,
    c2: &Component<E>,
    rel: TesRelation<E>,
    plus: ObsComposition<E>,
    search: WitnessSearch,
) -> Component<E> {
    let label = format!("({} / {})", c1.label(), c2.label());
    let interface = c1.interface().clone();

    let acc_c1 = c1.clone();
    let acc_c2 = c2.clone();
    let acc_rel = rel.clone();
    let acc_plus = plus.clone();
    let acceptor: Arc<dyn Fn(&TesPrefix<E>) -> Verdict + Send + Sync> =
        Arc::new(move |p: &TesPrefix<E>| {
            for seed in 0..search.seeds {
                for witness in acc_c2.generate(search.depth, seed) {
                    let composable = acc_rel
                        .check(p, &witness, acc_c1.interface(), acc_c2.interface())
                        != Verdict::Fail;
                    if !composable {
                        continue;
                    }
                    let merged = lift_composition(&acc_plus, p, &witness);
                    let verdict = acc_c1.accepts(&merged);
                    if !verdict.is_fail() {
                        return if verdict.is_pass() {
                            Verdict::Pass
                        } else {
                            Verdict::Pending
                        };
                    }
                }
            }
            if search.exhaustive {
                Verdict::Fail
            } else {
                Verdict::Pending
            }
        });

    let gen_c1 = c1.clone();
    let gen_acceptor = Arc::clone(&acceptor);
    let generator = Arc::new(move |depth: usize, seed: u64| {
        gen_c1
            .generate(depth, seed)
            .into_iter()
            .filter(|p| !gen_acceptor(p).is_fail())
            .collect()
    });

    Component::new(label, interface, acceptor, generator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::kappa::kappa_sync;
    use crate::algebra::lift::lift_relation;
    use crate::algebra::relation::PairRelation;
    use crate::component::alternating_component;
    use crate::stream::observable;
    use crate::time::TimeStamp;

    fn t(n: u32) -> TimeStamp {
        TimeStamp::from_int(n)
    }

    fn prefix(steps: &[(&[char], u32)]) -> TesPrefix<char> {
        TesPrefix::new(
            steps
                .iter()
                .map(|(ev, at)| Observation::new(ev.iter().copied().collect(), t(*at)))
                .collect(),
        )
        .unwrap()
    }

    fn behavior(prefixes: &[&[(&[char], u32)]]) -> BTreeSet<TesPrefix<char>> {
        prefixes.iter().map(|steps| prefix(steps)).collect()
    }

    fn component(
        label: &str,
        events: &[char],
        prefixes: &[&[(&[char], u32)]],
    ) -> Component<char> {
        Component::from_behavior(
            label,
            EventSet::finite(events.iter().copied()),
            behavior(prefixes),
        )
    }

    #[test]
    fn free_product_of_disjoint_components_merges_everything() {
        let left = component("L", &['a'], &[&[], &[(&['a'], 1)]]);
        let right = component("R", &['c'], &[&[], &[(&['c'], 2)]]);
        let prod = product(
            &left,
            &right,
            TesRelation::Free,
            ObsComposition::union(),
        );
        let got = prod.generate(3, 0);
        let want = behavior(&[
            &[],
            &[(&['a'], 1)],
            &[(&['c'], 2)],
            &[(&['a'], 1), (&['c'], 2)],
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn product_with_void_component_is_void() {
        let left = component("L", &['a'], &[&[(&['a'], 1)]]);
        let void = Component::void("V", EventSet::finite(['c']));
        let prod = product(&left, &void, TesRelation::Free, ObsComposition::union());
        assert!(prod.generate(3, 0).is_empty());
        assert_eq!(prod.accepts(&prefix(&[(&['a'], 1)])), Verdict::Fail);
    }

    #[test]
    fn product_acceptor_finds_decompositions() {
        let rel = PairRelation::new(
            [(observable(['a']), observable(['c']))],
            (observable(['a', 'b']), observable(['c', 'd'])),
            true,
        )
        .unwrap()
        .handle();
        let left = component("L", &['a', 'b'], &[&[(&['a'], 1), (&['b'], 2)]]);
        let right = component("R", &['c', 'd'], &[&[(&['c'], 1)]]);
        let prod = product(
            &left,
            &right,
            lift_relation(kappa_sync(rel)),
            ObsComposition::union(),
        );
        // {a,c}@1 then {b}@2 decomposes into the two behaviors above.
        let good = prefix(&[(&['a', 'c'], 1), (&['b'], 2)]);
        assert_ne!(prod.accepts(&good), Verdict::Fail);
        // a relates to c, so observing them at different instants leaves
        // no decomposition the relation tolerates.
        let bad = prefix(&[(&['a'], 1), (&['c'], 2)]);
        assert_eq!(prod.accepts(&bad), Verdict::Fail);
        // {a}@1 alone stays open: the right stream may first observe
        // beyond this prefix, so refutation is impossible.
        let open = prefix(&[(&['a'], 1), (&['b'], 2)]);
        assert_eq!(prod.accepts(&open), Verdict::Pending);
        // Events outside both interfaces cannot be attributed at all.
        let alien = prefix(&[(&['z'], 1)]);
        assert_eq!(prod.accepts(&alien), Verdict::Fail);
    }

    #[test]
    fn product_generator_equals_acceptor_view() {
        // Everything the product generates, its acceptor tolerates.
        let rel = PairRelation::new(
            [(observable(['a']), observable(['c']))],
            (observable(['a']), observable(['c'])),
            true,
        )
        .unwrap()
        .handle();
        let left = component("L", &['a'], &[&[], &[(&['a'], 1)], &[(&['a'], 2)]]);
        let right = component("R", &['c'], &[&[], &[(&['c'], 1)], &[(&['c'], 2)]]);
        let prod = product(
            &left,
            &right,
            lift_relation(kappa_sync(rel)),
            ObsComposition::union(),
        );
        for p in prod.generate(3, 0) {
            assert_ne!(prod.accepts(&p), Verdict::Fail, "generated {p:?}");
        }
    }

    #[test]
    fn divide_recovers_the_left_operand_under_free() {
        let left = component("L", &['a'], &[&[], &[(&['a'], 1)]]);
        let right = component("R", &['c'], &[&[], &[(&['c'], 2)]]);
        let prod = product(&left, &right, TesRelation::Free, ObsComposition::union());
        let quotient = divide(
            &prod,
            &right,
            TesRelation::Free,
            ObsComposition::union(),
            WitnessSearch {
                depth: 3,
                seeds: 1,
                exhaustive: true,
            },
        );
        // Every behavior of the left operand is accepted by the quotient.
        for p in left.generate(3, 0) {
            assert_ne!(quotient.accepts(&p), Verdict::Fail, "lost {p:?}");
        }
    }

    #[test]
    fn divide_by_void_never_passes() {
        let left = alternating_component('x', 'y');
        let void = Component::void("V", EventSet::finite(['z']));
        let q = divide(
            &left,
            &void,
            TesRelation::Free,
            ObsComposition::union(),
            WitnessSearch {
                depth: 3,
                seeds: 2,
                exhaustive: true,
            },
        );
        assert_eq!(q.accepts(&prefix(&[])), Verdict::Fail);
        let lenient = divide(
            &left,
            &void,
            TesRelation::Free,
            ObsComposition::union(),
            WitnessSearch {
                depth: 3,
                seeds: 2,
                exhaustive: false,
            },
        );
        // Without exhaustiveness the fruitless search stays undecided.
        assert_eq!(lenient.accepts(&prefix(&[])), Verdict::Pending);
    }
}
