//! Lifting observation-level ingredients to streams.
//!
//! A composability relation on observations lifts to streams as the
//! greatest fixed point of a step functional: check the two heads, then
//! advance the side with the earlier timestamp (both when equal). On
//! finite prefixes that walk can only *refute*: the first violated head
//! pair yields `Fail`, and exhausting either prefix without a violation
//! yields `Pending` — membership in the greatest fixed point is never
//! confirmed by finite data.
//!
//! A composition function on observables lifts to the timestamp-ordered
//! merge that combines simultaneous observations and interleaves the
//! rest.

use std::sync::Arc;

use crate::component::{EventSet, EventType};
use crate::stream::{Observable, Observation, TesPrefix, Verdict};

use super::kappa::ObsKappa;

/// A composition function on observables, with declared algebraic flags.
#[derive(Clone)]
pub struct ObsComposition<E: EventType> {
    combine: Arc<dyn Fn(&Observable<E>, &Observable<E>) -> Observable<E> + Send + Sync>,
    commutative: bool,
    idempotent: bool,
}

impl<E: EventType> ObsComposition<E> {
    pub fn new(
        commutative: bool,
        idempotent: bool,
        combine: impl Fn(&Observable<E>, &Observable<E>) -> Observable<E> + Send + Sync + 'static,
    ) -> Self {
        ObsComposition {
            combine: Arc::new(combine),
            commutative,
            idempotent,
        }
    }

    /// Set union, the default composition on observables.
    pub fn union() -> Self {
        ObsComposition::new(true, true, |a, b| a.union(b).cloned().collect())
    }

    pub fn combine(&self, left: &Observable<E>, right: &Observable<E>) -> Observable<E> {
        (self.combine)(left, right)
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_idempotent(&self) -> bool {
        self.idempotent
    }
}

/// A composability relation on stream prefixes: free, or the lifting of
/// a relation on observations.
#[derive(Clone)]
pub enum TesRelation<E: EventType> {
    /// ⊤ — every pair of streams composes.
    Free,
    /// The greatest-fixed-point lifting of an observation relation.
    Lifted(ObsKappa<E>),
}

impl<E: EventType> TesRelation<E> {
    /// Walks the step functional over two prefixes.
    ///
    /// `Fail` is refutation-sound: it persists under every extension of
    /// either prefix, because the walk revisits the same head pairs.
    pub fn check(
        &self,
        left: &TesPrefix<E>,
        right: &TesPrefix<E>,
        left_scope: &EventSet<E>,
        right_scope: &EventSet<E>,
    ) -> Verdict {
        match self {
            TesRelation::Free => Verdict::Pending,
            TesRelation::Lifted(kappa) => {
                let mut i = 0;
                let mut j = 0;
                while let (Some(o1), Some(o2)) = (left.get(i), right.get(j)) {
                    if !kappa.check(o1, o2, left_scope, right_scope) {
                        return Verdict::Fail;
                    }
                    if o1.time < o2.time {
                        i += 1;
                    } else if o2.time < o1.time {
                        j += 1;
                    } else {
                        i += 1;
                        j += 1;
                    }
                }
                Verdict::Pending
            }
        }
    }

    pub fn is_symmetric(&self) -> bool {
        match self {
            TesRelation::Free => true,
            TesRelation::Lifted(kappa) => kappa.is_symmetric(),
        }
    }
}

/// Lifts a composability relation on observations to stream prefixes.
pub fn lift_relation<E: EventType>(kappa: ObsKappa<E>) -> TesRelation<E> {
    TesRelation::Lifted(kappa)
}

/// Lifts a composition function to prefixes: interleave by time,
/// combine observables at shared instants. The result is well-formed and
/// `|merge| = |left| + |right| − #shared timestamps`.
pub fn lift_composition<E: EventType>(
    plus: &ObsComposition<E>,
    left: &TesPrefix<E>,
    right: &TesPrefix<E>,
) -> TesPrefix<E> {
    let mut items = Vec::with_capacity(left.len() + right.len());
    let mut i = 0;
    let mut j = 0;
    loop {
        match (left.get(i), right.get(j)) {
            (Some(o1), Some(o2)) => {
                if o1.time < o2.time {
                    items.push(o1.clone());
                    i += 1;
                } else if o2.time < o1.time {
                    items.push(o2.clone());
                    j += 1;
                } else {
                    items.push(Observation::new(
                        plus.combine(&o1.observable, &o2.observable),
                        o1.time,
                    ));
                    i += 1;
                    j += 1;
                }
            }
            (Some(o1), None) => {
                items.push(o1.clone());
                i += 1;
            }
            (None, Some(o2)) => {
                items.push(o2.clone());
                j += 1;
            }
            (None, None) => break,
        }
    }
    TesPrefix::new(items).expect("merge of well-formed prefixes is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::kappa::{kappa_sync, kappa_true};
    use crate::algebra::relation::PairRelation;
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

    fn sync_rel() -> TesRelation<char> {
        let rel = PairRelation::new(
            [(observable(['a']), observable(['c']))],
            (observable(['a', 'b']), observable(['c', 'd'])),
            true,
        )
        .unwrap()
        .handle();
        lift_relation(kappa_sync(rel))
    }

    fn scopes() -> (EventSet<char>, EventSet<char>) {
        (EventSet::finite(['a', 'b']), EventSet::finite(['c', 'd']))
    }

    #[test]
    fn free_lifting_never_fails() {
        let (e1, e2) = scopes();
        let free: TesRelation<char> = TesRelation::Free;
        let also_free = lift_relation(kappa_true());
        for (p, q) in [
            (prefix(&[]), prefix(&[])),
            (prefix(&[(&['a'], 1)]), prefix(&[(&['c'], 5)])),
            (prefix(&[(&['a'], 1), (&['b'], 2)]), prefix(&[(&['d'], 1)])),
        ] {
            assert_eq!(free.check(&p, &q, &e1, &e2), Verdict::Pending);
            assert_eq!(also_free.check(&p, &q, &e1, &e2), Verdict::Pending);
        }
    }

    #[test]
    fn lifted_sync_refutes_time_mismatch() {
        let (e1, e2) = scopes();
        let rel = sync_rel();
        let same = (prefix(&[(&['a'], 1)]), prefix(&[(&['c'], 1)]));
        let skew = (prefix(&[(&['a'], 1)]), prefix(&[(&['c'], 2)]));
        assert_eq!(rel.check(&same.0, &same.1, &e1, &e2), Verdict::Pending);
        assert_eq!(rel.check(&skew.0, &skew.1, &e1, &e2), Verdict::Fail);
    }

    #[test]
    fn fail_survives_extension() {
        let (e1, e2) = scopes();
        let rel = sync_rel();
        let p = prefix(&[(&['a'], 1)]);
        let q = prefix(&[(&['c'], 2)]);
        assert_eq!(rel.check(&p, &q, &e1, &e2), Verdict::Fail);
        let p2 = p
            .extended(Observation::new(observable(['b']), t(3)))
            .unwrap();
        assert_eq!(rel.check(&p2, &q, &e1, &e2), Verdict::Fail);
    }

    #[test]
    fn merge_is_the_timestamp_ordered_union() {
        let union = ObsComposition::union();
        let robotish = prefix(&[(&['a'], 1), (&['b'], 2)]);
        let batteryish = prefix(&[(&['c'], 2), (&['d'], 4)]);
        let merged = lift_composition(&union, &robotish, &batteryish);
        assert_eq!(
            merged,
            prefix(&[(&['a'], 1), (&['b', 'c'], 2), (&['d'], 4)])
        );
    }

    #[test]
    fn empty_prefix_is_neutral_for_merge() {
        let union = ObsComposition::union();
        let p = prefix(&[(&['a'], 1), (&['b', 'd'], 3)]);
        assert_eq!(lift_composition(&union, &p, &prefix(&[])), p);
        assert_eq!(lift_composition(&union, &prefix(&[]), &p), p);
    }

    #[test]
    fn merge_length_law() {
        let union = ObsComposition::union();
        let p = prefix(&[(&['a'], 1), (&['b'], 2), (&['a'], 5)]);
        let q = prefix(&[(&['c'], 2), (&['d'], 3), (&['c'], 5)]);
        let shared = 2; // times 2 and 5
        assert_eq!(
            lift_composition(&union, &p, &q).len(),
            p.len() + q.len() - shared
        );
    }
}
