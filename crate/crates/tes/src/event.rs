//! Structured events for the robot/battery/field world.
//!
//! An event is an uninterpreted observable atom: a kind, an agent, and a
//! typed payload. Each kind fixes its payload type. Events carry an
//! injective canonical text form (`kind(agent);payload`, or a bare
//! symbol), which is the wire representation used by trace files and
//! reports.
//!
//! Energy payloads are watt-seconds (joules) throughout; watt-hours
//! appear only at configuration and display boundaries. Rates are watts,
//! positions meters, forces newtons.

use std::fmt;
use std::str::FromStr;

use crate::scalar::{Finite, NotFinite, Real};

/// Cardinal movement direction.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Direction {
    North,
    East,
    South,
    West,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::North,
        Direction::East,
        Direction::South,
        Direction::West,
    ];

    /// Unit vector, x east, y north.
    pub fn unit<F: Real>(self) -> (F, F) {
        let one = F::one();
        let zero = F::zero();
        match self {
            Direction::North => (zero, one),
            Direction::East => (one, zero),
            Direction::South => (zero, -one),
            Direction::West => (-one, zero),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Direction::North => 'N',
            Direction::East => 'E',
            Direction::South => 'S',
            Direction::West => 'W',
        };
        write!(f, "{c}")
    }
}

impl FromStr for Direction {
    type Err = CodecError;

    fn from_str(s: &str) -> Result<Self, CodecError> {
        match s {
            "N" => Ok(Direction::North),
            "E" => Ok(Direction::East),
            "S" => Ok(Direction::South),
            "W" => Ok(Direction::West),
            other => Err(CodecError::bad(format!("unknown direction {other:?}"))),
        }
    }
}

/// Charging switch state.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Switch {
    On,
    Off,
}

impl fmt::Display for Switch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Switch::On => write!(f, "ON"),
            Switch::Off => write!(f, "OFF"),
        }
    }
}

/// Identifier of a component instance (robot, battery, or field object).
///
/// Restricted to `[A-Za-z0-9_]+` so the canonical encoding stays
/// unambiguous.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AgentId(String);

impl AgentId {
    pub fn new(name: impl Into<String>) -> Result<Self, CodecError> {
        let name = name.into();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(CodecError::bad(format!(
                "agent id {name:?} must match [A-Za-z0-9_]+"
            )));
        }
        Ok(AgentId(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A position on the field, meters east and north of the origin.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Position<F: Real> {
    x: Finite<F>,
    y: Finite<F>,
}

impl<F: Real> Position<F> {
    pub fn new(x: F, y: F) -> Result<Self, NotFinite> {
        Ok(Position {
            x: Finite::new(x)?,
            y: Finite::new(y)?,
        })
    }

    pub fn x(&self) -> F {
        self.x.get()
    }

    pub fn y(&self) -> F {
        self.y.get()
    }
}

impl<F: Real> fmt::Display for Position<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// One observable atom. The payload type is fixed by the variant.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Event<F: Real> {
    /// `read(loc,R);(x,y)` — a robot reads its position.
    ReadLoc { agent: AgentId, pos: Position<F> },
    /// `read(bat,R);b` — a robot reads its battery level (watt-seconds).
    ReadBat { agent: AgentId, level: Finite<F> },
    /// `move(A);(d,m)` — a robot demands a move (m in watts) or a field
    /// object is moved (m in newtons of traction).
    Move {
        agent: AgentId,
        dir: Direction,
        magnitude: Finite<F>,
    },
    /// `charge(R);ON|OFF` — a robot toggles charging.
    ChargeSwitch { agent: AgentId, state: Switch },
    /// `read(B);b` — a battery reports its level (watt-seconds).
    BatteryRead { agent: AgentId, level: Finite<F> },
    /// `discharge(B);w` — a battery discharges at w watts.
    Discharge { agent: AgentId, rate: Finite<F> },
    /// `charge(B);w` — a battery charges at w watts.
    ChargeRate { agent: AgentId, rate: Finite<F> },
    /// `loc(I);(x,y)` — the field reports an object's position.
    Loc { agent: AgentId, pos: Position<F> },
    /// A bare uninterpreted symbol, for abstract components.
    Symbol(String),
}

impl<F: Real> Event<F> {
    pub fn read_loc(agent: &AgentId, x: F, y: F) -> Result<Self, NotFinite> {
        Ok(Event::ReadLoc {
            agent: agent.clone(),
            pos: Position::new(x, y)?,
        })
    }

    pub fn read_bat(agent: &AgentId, level: F) -> Result<Self, NotFinite> {
        Ok(Event::ReadBat {
            agent: agent.clone(),
            level: Finite::new(level)?,
        })
    }

    pub fn movement(agent: &AgentId, dir: Direction, magnitude: F) -> Result<Self, NotFinite> {
        Ok(Event::Move {
            agent: agent.clone(),
            dir,
            magnitude: Finite::new(magnitude)?,
        })
    }

    pub fn charge_switch(agent: &AgentId, state: Switch) -> Self {
        Event::ChargeSwitch {
            agent: agent.clone(),
            state,
        }
    }

    pub fn battery_read(agent: &AgentId, level: F) -> Result<Self, NotFinite> {
        Ok(Event::BatteryRead {
            agent: agent.clone(),
            level: Finite::new(level)?,
        })
    }

    pub fn discharge(agent: &AgentId, rate: F) -> Result<Self, NotFinite> {
        Ok(Event::Discharge {
            agent: agent.clone(),
            rate: Finite::new(rate)?,
        })
    }

    pub fn charge_rate(agent: &AgentId, rate: F) -> Result<Self, NotFinite> {
        Ok(Event::ChargeRate {
            agent: agent.clone(),
            rate: Finite::new(rate)?,
        })
    }

    pub fn loc(agent: &AgentId, x: F, y: F) -> Result<Self, NotFinite> {
        Ok(Event::Loc {
            agent: agent.clone(),
            pos: Position::new(x, y)?,
        })
    }

    pub fn symbol(name: impl Into<String>) -> Result<Self, CodecError> {
        let name = name.into();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(CodecError::bad(format!(
                "symbol {name:?} must match [A-Za-z0-9_]+"
            )));
        }
        Ok(Event::Symbol(name))
    }

    /// The agent that observes this event, if it is not a bare symbol.
    pub fn agent(&self) -> Option<&AgentId> {
        match self {
            Event::ReadLoc { agent, .. }
            | Event::ReadBat { agent, .. }
            | Event::Move { agent, .. }
            | Event::ChargeSwitch { agent, .. }
            | Event::BatteryRead { agent, .. }
            | Event::Discharge { agent, .. }
            | Event::ChargeRate { agent, .. }
            | Event::Loc { agent, .. } => Some(agent),
            Event::Symbol(_) => None,
        }
    }
}

/// Canonical text encoding; two events are equal iff their encodings are.
pub trait EventCodec: Sized {
    fn encode(&self) -> String;
    fn decode(text: &str) -> Result<Self, CodecError>;
}

/// Error decoding a canonical event string.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed event: {reason}")]
pub struct CodecError {
    reason: String,
}

impl CodecError {
    fn bad(reason: impl Into<String>) -> Self {
        CodecError {
            reason: reason.into(),
        }
    }
}

impl<F: Real> EventCodec for Event<F> {
    fn encode(&self) -> String {
        match self {
            Event::ReadLoc { agent, pos } => format!("read(loc,{agent});{pos}"),
            Event::ReadBat { agent, level } => format!("read(bat,{agent});{level}"),
            Event::Move {
                agent,
                dir,
                magnitude,
            } => format!("move({agent});({dir},{magnitude})"),
            Event::ChargeSwitch { agent, state } => format!("charge({agent});{state}"),
            Event::BatteryRead { agent, level } => format!("read({agent});{level}"),
            Event::Discharge { agent, rate } => format!("discharge({agent});{rate}"),
            Event::ChargeRate { agent, rate } => format!("charge({agent});{rate}"),
            Event::Loc { agent, pos } => format!("loc({agent});{pos}"),
            Event::Symbol(name) => name.clone(),
        }
    }

    fn decode(text: &str) -> Result<Self, CodecError> {
        decode_event(text)
    }
}

fn parse_scalar<F: Real>(s: &str) -> Result<Finite<F>, CodecError> {
    let value = F::from_str(s).map_err(|_| CodecError::bad(format!("bad number {s:?}")))?;
    Finite::new(value).map_err(|_| CodecError::bad(format!("non-finite number {s:?}")))
}

fn parse_position<F: Real>(s: &str) -> Result<Position<F>, CodecError> {
    let inner = s
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| CodecError::bad(format!("expected (x,y), got {s:?}")))?;
    let (x, y) = inner
        .split_once(',')
        .ok_or_else(|| CodecError::bad(format!("expected (x,y), got {s:?}")))?;
    Ok(Position {
        x: parse_scalar(x)?,
        y: parse_scalar(y)?,
    })
}

fn decode_event<F: Real>(text: &str) -> Result<Event<F>, CodecError> {
    let Some(open) = text.find('(') else {
        // No structure: a bare symbol.
        return Event::symbol(text);
    };
    let kind = &text[..open];
    let rest = &text[open + 1..];
    let close = rest
        .find(')')
        .ok_or_else(|| CodecError::bad(format!("missing ')' in {text:?}")))?;
    let head = &rest[..close];
    let payload = rest[close + 1..]
        .strip_prefix(';')
        .ok_or_else(|| CodecError::bad(format!("missing ';' separator in {text:?}")))?;

    match kind {
        "read" => match head.split_once(',') {
            Some(("loc", agent)) => Ok(Event::ReadLoc {
                agent: AgentId::new(agent)?,
                pos: parse_position(payload)?,
            }),
            Some(("bat", agent)) => Ok(Event::ReadBat {
                agent: AgentId::new(agent)?,
                level: parse_scalar(payload)?,
            }),
            Some((tag, _)) => Err(CodecError::bad(format!("unknown read tag {tag:?}"))),
            None => Ok(Event::BatteryRead {
                agent: AgentId::new(head)?,
                level: parse_scalar(payload)?,
            }),
        },
        "move" => {
            let inner = payload
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| CodecError::bad(format!("expected (dir,n) in {text:?}")))?;
            let (dir, magnitude) = inner
                .split_once(',')
                .ok_or_else(|| CodecError::bad(format!("expected (dir,n) in {text:?}")))?;
            Ok(Event::Move {
                agent: AgentId::new(head)?,
                dir: dir.parse()?,
                magnitude: parse_scalar(magnitude)?,
            })
        }
        "charge" => match payload {
            "ON" => Ok(Event::ChargeSwitch {
                agent: AgentId::new(head)?,
                state: Switch::On,
            }),
            "OFF" => Ok(Event::ChargeSwitch {
                agent: AgentId::new(head)?,
                state: Switch::Off,
            }),
            rate => Ok(Event::ChargeRate {
                agent: AgentId::new(head)?,
                rate: parse_scalar(rate)?,
            }),
        },
        "discharge" => Ok(Event::Discharge {
            agent: AgentId::new(head)?,
            rate: parse_scalar(payload)?,
        }),
        "loc" => Ok(Event::Loc {
            agent: AgentId::new(head)?,
            pos: parse_position(payload)?,
        }),
        other => Err(CodecError::bad(format!("unknown event kind {other:?}"))),
    }
}

impl EventCodec for char {
    fn encode(&self) -> String {
        self.to_string()
    }

    fn decode(text: &str) -> Result<Self, CodecError> {
        let mut chars = text.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Ok(c),
            _ => Err(CodecError::bad(format!(
                "expected a single character, got {text:?}"
            ))),
        }
    }
}
