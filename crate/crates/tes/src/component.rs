//! Components: an interface plus an intensionally represented behavior.
//!
//! A component is a pair of an event set and a set of streams over it.
//! Behaviors are infinite objects, so they are represented here by two
//! functions: an *acceptor* that judges finite prefixes with a
//! three-valued verdict, and a *generator* that deterministically emits
//! finite sample prefixes for a `(depth, seed)` pair. The brute-force
//! oracle supplies the extensional view on tiny universes.
//!
//! Everything is immutable and the functions are pure, so components can
//! be shared and evaluated concurrently without coordination.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use crate::stream::{Observation, TesPrefix, Verdict};
use crate::time::{seeded_sequence, TimeStamp};

/// Bounds every event type used by the algebra.
pub trait EventType: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync + 'static {}

impl<T: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync + 'static> EventType for T {}

/// An event set, finite or described by a membership predicate.
///
/// Scenario components range over continuous payload domains, so their
/// interfaces cannot be enumerated; a predicate keeps membership exact.
#[derive(Clone)]
pub struct EventSet<E: EventType> {
    inner: Inner<E>,
}

#[derive(Clone)]
enum Inner<E: EventType> {
    Any,
    Finite(BTreeSet<E>),
    Predicate {
        label: String,
        test: Arc<dyn Fn(&E) -> bool + Send + Sync>,
    },
    Union(Vec<EventSet<E>>),
}

impl<E: EventType> EventSet<E> {
    /// The universal event set.
    pub fn any() -> Self {
        EventSet { inner: Inner::Any }
    }

    pub fn finite(events: impl IntoIterator<Item = E>) -> Self {
        EventSet {
            inner: Inner::Finite(events.into_iter().collect()),
        }
    }

    pub fn empty() -> Self {
        Self::finite([])
    }

    pub fn predicate(
        label: impl Into<String>,
        test: impl Fn(&E) -> bool + Send + Sync + 'static,
    ) -> Self {
        EventSet {
            inner: Inner::Predicate {
                label: label.into(),
                test: Arc::new(test),
            },
        }
    }

    pub fn union(self, other: EventSet<E>) -> EventSet<E> {
        match (self.inner, other.inner) {
            (Inner::Any, _) | (_, Inner::Any) => EventSet::any(),
            (Inner::Finite(a), Inner::Finite(b)) => EventSet {
                inner: Inner::Finite(a.into_iter().chain(b).collect()),
            },
            (a, b) => EventSet {
                inner: Inner::Union(vec![EventSet { inner: a }, EventSet { inner: b }]),
            },
        }
    }

    pub fn contains(&self, event: &E) -> bool {
        match &self.inner {
            Inner::Any => true,
            Inner::Finite(set) => set.contains(event),
            Inner::Predicate { test, .. } => test(event),
            Inner::Union(parts) => parts.iter().any(|p| p.contains(event)),
        }
    }

    pub fn contains_all<'a>(&self, events: impl IntoIterator<Item = &'a E>) -> bool {
        events.into_iter().all(|e| self.contains(e))
    }

    /// The underlying finite set, when there is one.
    pub fn as_finite(&self) -> Option<&BTreeSet<E>> {
        match &self.inner {
            Inner::Finite(set) => Some(set),
            _ => None,
        }
    }

    /// `Some(answer)` when superset-ness is decidable, `None` otherwise.
    pub fn is_superset_of(&self, other: &EventSet<E>) -> Option<bool> {
        match (&self.inner, &other.inner) {
            (Inner::Any, _) => Some(true),
            (_, Inner::Finite(set)) => Some(set.iter().all(|e| self.contains(e))),
            (_, Inner::Union(parts)) => {
                let mut all = true;
                for part in parts {
                    match self.is_superset_of(part) {
                        Some(true) => {}
                        Some(false) => all = false,
                        None => return None,
                    }
                }
                Some(all)
            }
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match &self.inner {
            Inner::Any => "any".into(),
            Inner::Finite(set) => format!("{} events", set.len()),
            Inner::Predicate { label, .. } => label.clone(),
            Inner::Union(parts) => parts
                .iter()
                .map(|p| p.label())
                .collect::<Vec<_>>()
                .join(" ∪ "),
        }
    }
}

impl<E: EventType> fmt::Debug for EventSet<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EventSet({})", self.label())
    }
}

pub type Acceptor<E> = Arc<dyn Fn(&TesPrefix<E>) -> Verdict + Send + Sync>;
pub type Generator<E> = Arc<dyn Fn(usize, u64) -> BTreeSet<TesPrefix<E>> + Send + Sync>;

/// Interface plus intensional behavior.
///
/// Invariants the constructors here maintain, and that composite
/// constructors must preserve:
/// - every event in an accepted or generated prefix lies in the
///   interface;
/// - the acceptor is Fail-monotone: once a prefix fails, all of its
///   extensions fail;
/// - generation is deterministic in `(depth, seed)` and never emits a
///   prefix the acceptor fails.
#[derive(Clone)]
pub struct Component<E: EventType> {
    label: String,
    interface: EventSet<E>,
    acceptor: Acceptor<E>,
    generator: Generator<E>,
}

impl<E: EventType> Component<E> {
    pub fn new(
        label: impl Into<String>,
        interface: EventSet<E>,
        acceptor: Acceptor<E>,
        generator: Generator<E>,
    ) -> Self {
        Component {
            label: label.into(),
            interface,
            acceptor,
            generator,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn interface(&self) -> &EventSet<E> {
        &self.interface
    }

    pub fn accepts(&self, prefix: &TesPrefix<E>) -> Verdict {
        (self.acceptor)(prefix)
    }

    pub fn generate(&self, depth: usize, seed: u64) -> BTreeSet<TesPrefix<E>> {
        (self.generator)(depth, seed)
    }

    /// A component with the given behavior sample set, judged
    /// extensionally: a prefix fails unless it can still grow into (or
    /// already is) one of the listed prefixes.
    pub fn from_behavior(
        label: impl Into<String>,
        interface: EventSet<E>,
        behavior: BTreeSet<TesPrefix<E>>,
    ) -> Self {
        let accept_set = Arc::new(behavior);
        let gen_set = Arc::clone(&accept_set);
        Component::new(
            label,
            interface,
            Arc::new(move |p: &TesPrefix<E>| {
                let reachable = accept_set
                    .iter()
                    .any(|b| b.len() >= p.len() && b.observations()[..p.len()] == *p.observations());
                if reachable {
                    Verdict::Pending
                } else {
                    Verdict::Fail
                }
            }),
            Arc::new(move |depth, _seed| {
                gen_set
                    .iter()
                    .filter(|p| p.len() <= depth)
                    .cloned()
                    .collect()
            }),
        )
    }

    /// A component with no behavior at all: everything fails.
    pub fn void(label: impl Into<String>, interface: EventSet<E>) -> Self {
        Component::new(
            label,
            interface,
            Arc::new(|_: &TesPrefix<E>| Verdict::Fail),
            Arc::new(|_, _| BTreeSet::new()),
        )
    }

    /// A component that accepts every well-formed prefix over its
    /// interface and generates silent prefixes.
    pub fn free(label: impl Into<String>, interface: EventSet<E>) -> Self {
        let scope = interface.clone();
        Component::new(
            label,
            interface,
            Arc::new(move |p: &TesPrefix<E>| {
                for obs in p {
                    if !scope.contains_all(&obs.observable) {
                        return Verdict::Fail;
                    }
                }
                Verdict::Pending
            }),
            Arc::new(|depth, seed| {
                let times = seeded_sequence(depth, seed);
                let obs = times.into_iter().map(Observation::silent).collect();
                BTreeSet::from([TesPrefix::new(obs).expect("seeded times increase")])
            }),
        )
    }
}

impl<E: EventType> fmt::Debug for Component<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Component({})", self.label)
    }
}

/// Error from a component constructor.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComponentError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// The component of all discrete samplings of a function of time.
///
/// Each behavior picks an initial value `d0` and observes exactly
/// `{f(d0, t)}` at every instant `t` it samples; any strictly increasing
/// time sequence is allowed. `depth` caps the length of generated sample
/// prefixes.
pub fn function_component<E: EventType>(
    f: impl Fn(&E, TimeStamp) -> E + Send + Sync + 'static,
    initials: BTreeSet<E>,
    depth: usize,
) -> Result<Component<E>, ComponentError> {
    if initials.is_empty() {
        return Err(ComponentError::InvalidArgument(
            "function component needs at least one initial value".into(),
        ));
    }
    let f = Arc::new(f);
    let accept_f = Arc::clone(&f);
    let accept_initials = initials.clone();
    Ok(Component::new(
        "sampled-function",
        EventSet::any(),
        Arc::new(move |p: &TesPrefix<E>| {
            let consistent = accept_initials.iter().any(|d0| {
                p.iter().all(|obs| {
                    obs.observable.len() == 1
                        && obs.observable.contains(&accept_f(d0, obs.time))
                })
            });
            if consistent {
                Verdict::Pending
            } else {
                Verdict::Fail
            }
        }),
        Arc::new(move |gen_depth, seed| {
            let times = seeded_sequence(gen_depth.min(depth), seed);
            initials
                .iter()
                .map(|d0| {
                    let obs = times
                        .iter()
                        .map(|&t| Observation::new(BTreeSet::from([f(d0, t)]), t))
                        .collect();
                    TesPrefix::new(obs).expect("seeded times increase")
                })
                .collect()
        }),
    ))
}

/// The two-event component whose observables alternate between `{a}` and
/// `{b}`, oblivious to time.
pub fn alternating_component<E: EventType>(a: E, b: E) -> Component<E> {
    let pair = [a.clone(), b.clone()];
    let gen_pair = pair.clone();
    Component::new(
        "alternating",
        EventSet::finite(pair.clone()),
        Arc::new(move |p: &TesPrefix<E>| {
            let singleton_of = |obs: &Observation<E>| -> Option<usize> {
                if obs.observable.len() != 1 {
                    return None;
                }
                pair.iter().position(|e| obs.observable.contains(e))
            };
            let mut previous: Option<usize> = None;
            for obs in p {
                let Some(which) = singleton_of(obs) else {
                    return Verdict::Fail;
                };
                if previous == Some(which) {
                    return Verdict::Fail;
                }
                previous = Some(which);
            }
            Verdict::Pending
        }),
        Arc::new(move |depth, seed| {
            let times = seeded_sequence(depth, seed);
            (0..2)
                .map(|start| {
                    let obs = times
                        .iter()
                        .enumerate()
                        .map(|(i, &t)| {
                            let e = gen_pair[(start + i) % 2].clone();
                            Observation::new(BTreeSet::from([e]), t)
                        })
                        .collect();
                    TesPrefix::new(obs).expect("seeded times increase")
                })
                .collect()
        }),
    )
}
