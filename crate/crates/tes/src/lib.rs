//! Components as sets of timed-event streams, with exogenous composition.
//!
//! A *timed-event stream* is an infinite sequence of observations — sets
//! of events stamped with strictly increasing rational instants. A
//! *component* couples an event interface with a set of such streams.
//! Components compose through explicitly supplied ingredients: a
//! composability relation saying which stream pairs may interact, and a
//! composition function merging them. Both are built at the observation
//! level and lifted to streams, which keeps interaction logic outside the
//! components themselves.
//!
//! The crate provides:
//! - the stream and component core ([`time`], [`stream`], [`component`]);
//! - the composition algebra: synchronous and mutually exclusive
//!   relations, their stream lifting, product and division of components
//!   ([`algebra`]);
//! - trace properties, behavior (hyper) properties, and bounded checking
//!   ([`property`]);
//! - a brute-force extensional oracle and algebraic law suites on tiny
//!   finite universes ([`oracle`]);
//! - a robot/battery/field scenario with its physics and interaction
//!   relations ([`cps`]);
//! - JSONL trace serialization ([`trace_io`]).
//!
//! Physical payloads are generic over the floating-point scalar
//! ([`scalar::Real`]); timestamps are exact rationals throughout.

pub mod algebra;
pub mod component;
pub mod cps;
pub mod event;
pub mod oracle;
pub mod property;
pub mod scalar;
pub mod stream;
pub mod time;
pub mod trace_io;

pub use component::{Component, EventSet, EventType};
pub use event::{AgentId, Direction, Event, EventCodec, Position, Switch};
pub use scalar::Real;
pub use stream::{observable, Observable, Observation, TesPrefix, Verdict};
pub use time::TimeStamp;

/// Event payloads in `f64`, the scalar used by the CLI and trace files.
pub type Event64 = Event<f64>;
/// Observation over [`Event64`].
pub type Observation64 = Observation<Event64>;
/// Stream prefix over [`Event64`].
pub type Prefix64 = TesPrefix<Event64>;
/// Component over [`Event64`].
pub type Component64 = Component<Event64>;
