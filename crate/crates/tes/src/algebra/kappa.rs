//! Composability relations on observations.
//!
//! A composability relation κ judges pairs of observations, given the
//! two interfaces in play. The synchronous relation forces related
//! observables to coincide in time; the mutual-exclusion relation
//! forbids related observables from coinciding. Relations combine by
//! pointwise intersection.

use std::sync::Arc;

use crate::component::{EventSet, EventType};
use crate::stream::{Observable, Observation};

use super::relation::RelationHandle;

type KappaFn<E> =
    dyn Fn(&Observation<E>, &Observation<E>, &EventSet<E>, &EventSet<E>) -> bool + Send + Sync;

/// A composability relation on observations, with its declared symmetry.
#[derive(Clone)]
pub struct ObsKappa<E: EventType> {
    check: Arc<KappaFn<E>>,
    symmetric: bool,
}

impl<E: EventType> ObsKappa<E> {
    pub fn new(
        symmetric: bool,
        check: impl Fn(&Observation<E>, &Observation<E>, &EventSet<E>, &EventSet<E>) -> bool
            + Send
            + Sync
            + 'static,
    ) -> Self {
        ObsKappa {
            check: Arc::new(check),
            symmetric,
        }
    }

    pub fn check(
        &self,
        left: &Observation<E>,
        right: &Observation<E>,
        left_scope: &EventSet<E>,
        right_scope: &EventSet<E>,
    ) -> bool {
        (self.check)(left, right, left_scope, right_scope)
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }
}

/// The free composability relation: every pair of observations composes.
pub fn kappa_true<E: EventType>() -> ObsKappa<E> {
    ObsKappa::new(true, |_, _, _, _| true)
}

/// Relation that composes only identical observations (same observable,
/// same instant). Satisfies the side condition of the idempotence law.
pub fn kappa_head_equal<E: EventType>() -> ObsKappa<E> {
    ObsKappa::new(true, |o1, o2, _, _| o1 == o2)
}

/// All ways of writing `o` as a union `first ∪ second` (the parts may
/// overlap). Observables are small, so the 3^|o| enumeration is cheap.
fn union_splits<E: EventType>(o: &Observable<E>) -> Vec<(Observable<E>, Observable<E>)> {
    let events: Vec<&E> = o.iter().collect();
    let n = events.len();
    let mut splits = Vec::with_capacity(3usize.pow(n as u32));
    // Each event goes to the first part, the second, or both.
    let mut assignment = vec![0u8; n];
    loop {
        let mut first = Observable::new();
        let mut second = Observable::new();
        for (i, &e) in events.iter().enumerate() {
            match assignment[i] {
                0 => {
                    first.insert(e.clone());
                }
                1 => {
                    second.insert(e.clone());
                }
                _ => {
                    first.insert(e.clone());
                    second.insert(e.clone());
                }
            }
        }
        splits.push((first, second));
        let mut i = 0;
        loop {
            if i == n {
                return splits;
            }
            assignment[i] += 1;
            if assignment[i] < 3 {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// Synchronous composability from a relation on observables.
///
/// Two observations compose exactly when:
/// - the earlier one's observable relates to nothing drawn from the
///   other side's interface (unrelated observables may occur alone), or
/// - they are simultaneous and decompose as one related pair plus
///   remainders that relate to nothing, or are both empty.
pub fn kappa_sync<E: EventType>(rel: RelationHandle<E>) -> ObsKappa<E> {
    let symmetric = rel.is_symmetric();
    ObsKappa::new(symmetric, move |o1, o2, e1, e2| {
        if o1.time < o2.time {
            !rel.has_partner_in_right(&o1.observable, e2)
        } else if o2.time < o1.time {
            !rel.has_partner_in_left(&o2.observable, e1)
        } else {
            if o1.observable.is_empty() && o2.observable.is_empty() {
                return true;
            }
            for (left_core, left_rest) in union_splits(&o1.observable) {
                if rel.has_partner_in_right(&left_rest, e2) {
                    continue;
                }
                for (right_core, right_rest) in union_splits(&o2.observable) {
                    if rel.related(&left_core, &right_core)
                        && !rel.has_partner_in_left(&right_rest, e1)
                    {
                        return true;
                    }
                }
            }
            false
        }
    })
}

/// Mutual exclusion from a relation on observables: simultaneous
/// observations must not embed any related pair. A composite observable
/// gathering a forbidden pair counts, hence the subset reading.
pub fn kappa_excl<E: EventType>(rel: RelationHandle<E>) -> ObsKappa<E> {
    let symmetric = rel.is_symmetric();
    ObsKappa::new(symmetric, move |o1, o2, _e1, _e2| {
        o1.time != o2.time || !rel.related_subsets(&o1.observable, &o2.observable)
    })
}

/// Pointwise conjunction of two composability relations.
pub fn kappa_intersect<E: EventType>(k1: ObsKappa<E>, k2: ObsKappa<E>) -> ObsKappa<E> {
    let symmetric = k1.symmetric && k2.symmetric;
    ObsKappa::new(symmetric, move |o1, o2, e1, e2| {
        k1.check(o1, o2, e1, e2) && k2.check(o1, o2, e1, e2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::relation::PairRelation;
    use crate::stream::observable;
    use crate::time::TimeStamp;

    fn rel() -> RelationHandle<char> {
        PairRelation::new(
            [(observable(['a']), observable(['c']))],
            (observable(['a', 'b']), observable(['c', 'd'])),
            true,
        )
        .unwrap()
        .handle()
    }

    fn scopes() -> (EventSet<char>, EventSet<char>) {
        (EventSet::finite(['a', 'b']), EventSet::finite(['c', 'd']))
    }

    fn at(events: &[char], num: i64, den: i64) -> Observation<char> {
        Observation::new(events.iter().copied().collect(), TimeStamp::new(num, den).unwrap())
    }

    #[test]
    fn sync_forbids_related_observable_going_first() {
        let k = kappa_sync(rel());
        let (e1, e2) = scopes();
        // {a} relates to {c}, so it may not occur strictly earlier...
        assert!(!k.check(&at(&['a'], 1, 1), &at(&['d'], 2, 1), &e1, &e2));
        // ...but it may occur strictly later than an unrelated {d}.
        assert!(k.check(&at(&['a'], 1, 1), &at(&['d'], 1, 2), &e1, &e2));
    }

    #[test]
    fn sync_allows_related_pair_simultaneously() {
        let k = kappa_sync(rel());
        let (e1, e2) = scopes();
        assert!(k.check(&at(&['a'], 3, 1), &at(&['c'], 3, 1), &e1, &e2));
        // Unrelated remainders ride along.
        assert!(k.check(&at(&['a', 'b'], 3, 1), &at(&['c', 'd'], 3, 1), &e1, &e2));
        // A simultaneous nonempty pair with no related core has no valid
        // decomposition and is not composable.
        assert!(!k.check(&at(&['b'], 3, 1), &at(&['d'], 3, 1), &e1, &e2));
    }

    #[test]
    fn sync_admits_the_empty_pair() {
        let k = kappa_sync(rel());
        let (e1, e2) = scopes();
        assert!(k.check(&at(&[], 1, 1), &at(&[], 1, 1), &e1, &e2));
        // A lone silent observation next to a related one has no related
        // decomposition.
        assert!(!k.check(&at(&['a'], 1, 1), &at(&[], 1, 1), &e1, &e2));
    }

    #[test]
    fn excl_forbids_related_pairs_at_equal_times() {
        let k = kappa_excl(rel());
        let (e1, e2) = scopes();
        assert!(!k.check(&at(&['a'], 2, 1), &at(&['c'], 2, 1), &e1, &e2));
        assert!(k.check(&at(&['a'], 1, 1), &at(&['c'], 2, 1), &e1, &e2));
        assert!(k.check(&at(&['b'], 2, 1), &at(&['d'], 2, 1), &e1, &e2));
        // Subset reading: a gathered observation still clashes.
        assert!(!k.check(&at(&['a', 'b'], 2, 1), &at(&['c', 'd'], 2, 1), &e1, &e2));
    }

    #[test]
    fn intersect_is_conjunction() {
        let (e1, e2) = scopes();
        let mix = kappa_intersect(kappa_sync(rel()), kappa_excl(rel()));
        // Sync wants the related pair simultaneous, excl forbids it:
        // related observables can never occur at all under the mix.
        assert!(!mix.check(&at(&['a'], 2, 1), &at(&['c'], 2, 1), &e1, &e2));
        assert!(mix.check(&at(&['b'], 1, 1), &at(&['d'], 2, 1), &e1, &e2));

        // Intersecting with the free relation changes nothing.
        let k = kappa_sync(rel());
        let both = kappa_intersect(kappa_sync(rel()), kappa_true());
        for (o1, o2) in [
            (at(&['a'], 1, 1), at(&['c'], 1, 1)),
            (at(&['a'], 1, 1), at(&['d'], 2, 1)),
            (at(&['b'], 1, 1), at(&['c'], 1, 2)),
            (at(&[], 1, 1), at(&[], 1, 1)),
        ] {
            assert_eq!(
                both.check(&o1, &o2, &e1, &e2),
                k.check(&o1, &o2, &e1, &e2)
            );
        }
    }

    #[test]
    fn intersect_is_idempotent_on_samples() {
        let (e1, e2) = scopes();
        let k = kappa_sync(rel());
        let twice = kappa_intersect(kappa_sync(rel()), kappa_sync(rel()));
        for (o1, o2) in [
            (at(&['a'], 1, 1), at(&['c'], 1, 1)),
            (at(&['a'], 1, 1), at(&['c'], 2, 1)),
            (at(&['b', 'a'], 1, 1), at(&['d'], 1, 1)),
        ] {
            assert_eq!(
                twice.check(&o1, &o2, &e1, &e2),
                k.check(&o1, &o2, &e1, &e2)
            );
        }
    }

    #[test]
    fn symmetric_relation_gives_symmetric_kappa() {
        let k = kappa_sync(rel());
        assert!(k.is_symmetric());
        let (e1, e2) = scopes();
        for (o1, o2) in [
            (at(&['a'], 1, 1), at(&['c'], 1, 1)),
            (at(&['a'], 1, 1), at(&['d'], 2, 1)),
            (at(&['a', 'b'], 2, 1), at(&['c'], 2, 1)),
            (at(&[], 1, 1), at(&['c'], 1, 1)),
        ] {
            assert_eq!(
                k.check(&o1, &o2, &e1, &e2),
                k.check(&o2, &o1, &e2, &e1),
                "symmetry violated on {o1:?} / {o2:?}"
            );
        }
    }

    #[test]
    fn asymmetric_pairs_give_asymmetric_sync() {
        let asym = PairRelation::new(
            [(observable(['a']), observable(['c']))],
            (observable(['a', 'b']), observable(['c', 'd'])),
            false,
        )
        .unwrap()
        .handle();
        let k = kappa_sync(asym);
        assert!(!k.is_symmetric());
        let (e1, e2) = scopes();
        let fwd = k.check(&at(&['a'], 1, 1), &at(&['c'], 1, 1), &e1, &e2);
        let bwd = k.check(&at(&['c'], 1, 1), &at(&['a'], 1, 1), &e2, &e1);
        assert!(fwd && !bwd);
    }
}
