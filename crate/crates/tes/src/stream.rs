//! Observations and finite timed-event stream prefixes.
//!
//! A timed-event stream is an infinite sequence of observations with
//! strictly increasing, non-Zeno timestamps. At desk scale we work with
//! finite prefixes and three-valued verdicts: `Fail` refutes membership
//! irrevocably, `Pass` confirms it irrevocably, and `Pending` means the
//! prefix has decided nothing yet. Non-Zeno-ness cannot be observed on a
//! finite prefix at all; generators guarantee it by construction instead.

use std::collections::BTreeSet;

use crate::time::TimeStamp;

/// A finite set of events observed atomically together.
pub type Observable<E> = BTreeSet<E>;

/// Convenience constructor for an observable.
pub fn observable<E: Ord>(events: impl IntoIterator<Item = E>) -> Observable<E> {
    events.into_iter().collect()
}

/// A set of events stamped with the instant they occurred.
///
/// The observable may be empty: a silent observation is still an
/// observation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Observation<E: Ord> {
    pub observable: Observable<E>,
    pub time: TimeStamp,
}

impl<E: Ord> Observation<E> {
    pub fn new(observable: Observable<E>, time: TimeStamp) -> Self {
        Observation { observable, time }
    }

    pub fn silent(time: TimeStamp) -> Self {
        Observation {
            observable: Observable::new(),
            time,
        }
    }

    pub fn is_silent(&self) -> bool {
        self.observable.is_empty()
    }
}

/// Three-valued membership verdict for a finite prefix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Verdict {
    /// Irrevocably satisfied: every extension stays inside.
    Pass,
    /// Irrevocably violated: every extension stays outside.
    Fail,
    /// Undetermined on the data seen so far.
    Pending,
}

impl Verdict {
    pub fn is_fail(self) -> bool {
        self == Verdict::Fail
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    /// Conjunction: any `Fail` dominates, then any `Pending`.
    pub fn meet(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Pending, _) | (_, Verdict::Pending) => Verdict::Pending,
            (Verdict::Pass, Verdict::Pass) => Verdict::Pass,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Pending => "pending",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Checks the stream well-formedness conditions on a raw observation
/// sequence: strictly increasing timestamps. Returns `Fail` on the first
/// violation, `Pass` otherwise (an empty sequence is vacuously fine).
pub fn validate_prefix<E: Ord>(items: &[Observation<E>]) -> Verdict {
    for pair in items.windows(2) {
        if pair[0].time >= pair[1].time {
            return Verdict::Fail;
        }
    }
    Verdict::Pass
}

/// Error building a [`TesPrefix`] from raw observations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum StreamError {
    #[error("timestamps must strictly increase")]
    NonIncreasingTime,
    #[error("an observation already exists at that time")]
    TimeOccupied,
}

/// A finite, well-formed stream prefix: strictly increasing timestamps.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct TesPrefix<E: Ord> {
    items: Vec<Observation<E>>,
}

impl<E: Ord + Clone> TesPrefix<E> {
    pub fn new(items: Vec<Observation<E>>) -> Result<Self, StreamError> {
        if validate_prefix(&items).is_fail() {
            return Err(StreamError::NonIncreasingTime);
        }
        Ok(TesPrefix { items })
    }

    pub fn empty() -> Self {
        TesPrefix { items: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Observation<E>> {
        self.items.get(i)
    }

    pub fn observations(&self) -> &[Observation<E>] {
        &self.items
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Observation<E>> {
        self.items.iter()
    }

    /// The observable at index `i` (the first projection).
    pub fn observable_at(&self, i: usize) -> Option<&Observable<E>> {
        self.items.get(i).map(|o| &o.observable)
    }

    /// The timestamp at index `i` (the second projection).
    pub fn time_at(&self, i: usize) -> Option<TimeStamp> {
        self.items.get(i).map(|o| o.time)
    }

    pub fn first(&self) -> Option<&Observation<E>> {
        self.items.first()
    }

    pub fn last(&self) -> Option<&Observation<E>> {
        self.items.last()
    }

    /// The stream derivative: everything after the head.
    pub fn tail(&self) -> TesPrefix<E> {
        TesPrefix {
            items: self.items.iter().skip(1).cloned().collect(),
        }
    }

    /// The first `n` observations.
    pub fn take(&self, n: usize) -> TesPrefix<E> {
        TesPrefix {
            items: self.items.iter().take(n).cloned().collect(),
        }
    }

    /// Appends an observation; its time must exceed the current last.
    pub fn extended(&self, obs: Observation<E>) -> Result<TesPrefix<E>, StreamError> {
        if let Some(last) = self.items.last() {
            if last.time >= obs.time {
                return Err(StreamError::NonIncreasingTime);
            }
        }
        let mut items = self.items.clone();
        items.push(obs);
        Ok(TesPrefix { items })
    }

    /// Inserts an observation at its time position; the time must be
    /// fresh.
    pub fn inserted(&self, obs: Observation<E>) -> Result<TesPrefix<E>, StreamError> {
        let mut items = self.items.clone();
        let at = items.partition_point(|o| o.time < obs.time);
        if items.get(at).is_some_and(|o| o.time == obs.time) {
            return Err(StreamError::TimeOccupied);
        }
        items.insert(at, obs);
        Ok(TesPrefix { items })
    }

    /// The same observables under a different timestamp sequence.
    pub fn retimed(&self, times: &[TimeStamp]) -> Result<TesPrefix<E>, StreamError> {
        if times.len() < self.items.len() {
            return Err(StreamError::NonIncreasingTime);
        }
        let items = self
            .items
            .iter()
            .zip(times)
            .map(|(o, &t)| Observation::new(o.observable.clone(), t))
            .collect();
        TesPrefix::new(items)
    }

    /// All events occurring anywhere in the prefix.
    pub fn event_support(&self) -> BTreeSet<E> {
        self.items
            .iter()
            .flat_map(|o| o.observable.iter().cloned())
            .collect()
    }
}

impl<E: Ord + Clone> FromIterator<Observation<E>> for Result<TesPrefix<E>, StreamError> {
    fn from_iter<T: IntoIterator<Item = Observation<E>>>(iter: T) -> Self {
        TesPrefix::new(iter.into_iter().collect())
    }
}

impl<'a, E: Ord> IntoIterator for &'a TesPrefix<E> {
    type Item = &'a Observation<E>;
    type IntoIter = std::slice::Iter<'a, Observation<E>>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: u32) -> TimeStamp {
        TimeStamp::from_int(n)
    }

    fn obs(events: &[char], at: u32) -> Observation<char> {
        Observation::new(events.iter().copied().collect(), t(at))
    }

    #[test]
    fn validate_accepts_increasing_times() {
        let items = vec![obs(&['a'], 1), obs(&['b'], 2)];
        assert_eq!(validate_prefix(&items), Verdict::Pass);
    }

    #[test]
    fn validate_accepts_empty() {
        assert_eq!(validate_prefix::<char>(&[]), Verdict::Pass);
    }

    #[test]
    fn validate_rejects_decreasing_times() {
        let items = vec![obs(&[], 2), obs(&[], 1)];
        assert_eq!(validate_prefix(&items), Verdict::Fail);
        assert!(TesPrefix::new(items).is_err());
    }

    #[test]
    fn validate_rejects_equal_times() {
        let items = vec![obs(&['a'], 1), obs(&['b'], 1)];
        assert_eq!(validate_prefix(&items), Verdict::Fail);
    }

    #[test]
    fn insert_keeps_order_and_rejects_collisions() {
        let p = TesPrefix::new(vec![obs(&['a'], 1), obs(&['b'], 3)]).unwrap();
        let q = p.inserted(obs(&['c'], 2)).unwrap();
        assert_eq!(q.time_at(1), Some(t(2)));
        assert_eq!(q.len(), 3);
        assert_eq!(p.inserted(obs(&['c'], 3)), Err(StreamError::TimeOccupied));
    }

    #[test]
    fn retime_preserves_observables() {
        let p = TesPrefix::new(vec![obs(&['a'], 1), obs(&['b'], 2)]).unwrap();
        let q = p.retimed(&[t(5), t(9)]).unwrap();
        assert_eq!(q.observable_at(0), p.observable_at(0));
        assert_eq!(q.time_at(1), Some(t(9)));
        assert!(p.retimed(&[t(5), t(5)]).is_err());
    }

    #[test]
    fn verdict_meet_prefers_fail() {
        use Verdict::*;
        assert_eq!(Pass.meet(Pass), Pass);
        assert_eq!(Pass.meet(Pending), Pending);
        assert_eq!(Pending.meet(Fail), Fail);
        assert_eq!(Fail.meet(Pass), Fail);
    }
}
