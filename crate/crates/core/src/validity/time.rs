//! Instants, durations and time intervals.
//!
//! An undefined interval endpoint means "unbounded" on that side, so
//! `interval(undefined, undefined)` is the universal interval. The explicit
//! [`TimeInterval::Bottom`] is the empty interval.

use std::fmt;

use chrono::{DateTime, NaiveDate, NaiveDateTime, Utc};

use crate::error::AlgebraError;

/// A point in time at second precision (UTC), or `undefined`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Instant {
    At(i64),
    Undefined,
}

impl Instant {
    /// Parses an `xsd:dateTime` lexical form. A leading `+` (Wikidata dumps)
    /// and a bare date (`YYYY-MM-DD`) are accepted; offsets are normalized to UTC.
    pub fn parse(text: &str) -> Result<Instant, AlgebraError> {
        let t = text.trim();
        let t = t.strip_prefix('+').unwrap_or(t);
        if let Ok(dt) = DateTime::parse_from_rfc3339(t) {
            return Ok(Instant::At(dt.timestamp()));
        }
        let naive = t.strip_suffix('Z').unwrap_or(t);
        if let Ok(dt) = NaiveDateTime::parse_from_str(naive, "%Y-%m-%dT%H:%M:%S") {
            return Ok(Instant::At(dt.and_utc().timestamp()));
        }
        if let Ok(d) = NaiveDate::parse_from_str(naive, "%Y-%m-%d") {
            return Ok(Instant::At(
                d.and_hms_opt(0, 0, 0)
                    .expect("midnight")
                    .and_utc()
                    .timestamp(),
            ));
        }
        Err(AlgebraError::BadDateTime(text.to_string()))
    }

    pub fn from_ymd(y: i32, m: u32, d: u32) -> Instant {
        let date = NaiveDate::from_ymd_opt(y, m, d).expect("valid calendar date");
        Instant::At(
            date.and_hms_opt(0, 0, 0)
                .expect("midnight")
                .and_utc()
                .timestamp(),
        )
    }

    pub fn is_defined(self) -> bool {
        matches!(self, Instant::At(_))
    }

    pub fn seconds(self) -> Option<i64> {
        match self {
            Instant::At(s) => Some(s),
            Instant::Undefined => None,
        }
    }

    /// `YYYY-MM-DDThh:mm:ssZ`, or `None` for undefined.
    pub fn to_xsd(self) -> Option<String> {
        self.seconds().map(format_seconds)
    }

    /// Strict order on defined instants.
    pub fn lt(self, other: Instant) -> Result<bool, AlgebraError> {
        match (self, other) {
            (Instant::At(a), Instant::At(b)) => Ok(a < b),
            _ => Err(AlgebraError::UndefinedInstant),
        }
    }

    pub fn le(self, other: Instant) -> Result<bool, AlgebraError> {
        match (self, other) {
            (Instant::At(a), Instant::At(b)) => Ok(a <= b),
            _ => Err(AlgebraError::UndefinedInstant),
        }
    }

    /// Hull minimum: an undefined operand (unbounded) wins.
    pub fn min(self, other: Instant) -> Instant {
        match (self, other) {
            (Instant::At(a), Instant::At(b)) => Instant::At(a.min(b)),
            _ => Instant::Undefined,
        }
    }

    /// Hull maximum: an undefined operand (unbounded) wins.
    pub fn max(self, other: Instant) -> Instant {
        match (self, other) {
            (Instant::At(a), Instant::At(b)) => Instant::At(a.max(b)),
            _ => Instant::Undefined,
        }
    }

    /// Later of two interval starts; a defined start beats an unbounded one.
    pub fn max_start(self, other: Instant) -> Instant {
        match (self, other) {
            (Instant::At(a), Instant::At(b)) => Instant::At(a.max(b)),
            (Instant::At(a), Instant::Undefined) | (Instant::Undefined, Instant::At(a)) => {
                Instant::At(a)
            }
            _ => Instant::Undefined,
        }
    }

    /// Earlier of two interval ends; a defined end beats an unbounded one.
    pub fn min_end(self, other: Instant) -> Instant {
        match (self, other) {
            (Instant::At(a), Instant::At(b)) => Instant::At(a.min(b)),
            (Instant::At(a), Instant::Undefined) | (Instant::Undefined, Instant::At(a)) => {
                Instant::At(a)
            }
            _ => Instant::Undefined,
        }
    }

    pub fn union(self, other: Instant) -> Instant {
        if self == other {
            self
        } else {
            Instant::Undefined
        }
    }

    pub fn inter(self, other: Instant) -> Instant {
        self.union(other)
    }

    pub fn test_intersect(self, other: Instant) -> bool {
        self == other
    }

    pub fn minus(self, other: Instant) -> Duration {
        match (self, other) {
            (Instant::At(a), Instant::At(b)) => Duration::Seconds(a - b),
            _ => Duration::Undefined,
        }
    }

    pub fn plus(self, d: Duration) -> Instant {
        match (self, d) {
            (Instant::At(a), Duration::Seconds(s)) => Instant::At(a + s),
            _ => Instant::Undefined,
        }
    }

    /// Position as an interval start: undefined is -inf.
    fn as_start(self) -> Bound {
        match self {
            Instant::At(s) => Bound::At(s),
            Instant::Undefined => Bound::NegInf,
        }
    }

    /// Position as an interval end: undefined is +inf.
    fn as_end(self) -> Bound {
        match self {
            Instant::At(s) => Bound::At(s),
            Instant::Undefined => Bound::PosInf,
        }
    }
}

impl fmt::Display for Instant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_xsd() {
            Some(s) => f.write_str(&s),
            None => f.write_str("undefined"),
        }
    }
}

pub(crate) fn format_seconds(s: i64) -> String {
    let dt = DateTime::<Utc>::from_timestamp(s, 0).expect("timestamp in chrono range");
    dt.format("%Y-%m-%dT%H:%M:%SZ").to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Bound {
    NegInf,
    At(i64),
    PosInf,
}

/// Length of an interval in seconds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Duration {
    Seconds(i64),
    Undefined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TimeInterval {
    Interval { start: Instant, end: Instant },
    Bottom,
}

impl Default for TimeInterval {
    fn default() -> Self {
        TimeInterval::universal()
    }
}

impl TimeInterval {
    pub const fn universal() -> Self {
        TimeInterval::Interval {
            start: Instant::Undefined,
            end: Instant::Undefined,
        }
    }

    /// `interval(start, end)`; rejects `start > end` when both are defined.
    pub fn new(start: Instant, end: Instant) -> Result<Self, AlgebraError> {
        if let (Instant::At(s), Instant::At(e)) = (start, end) {
            if s > e {
                return Err(AlgebraError::InvertedInterval {
                    start: start.to_string(),
                    end: end.to_string(),
                });
            }
        }
        Ok(TimeInterval::Interval { start, end })
    }

    /// `interval(start, duration)`: the end is `start + d`.
    pub fn with_duration(start: Instant, d: Duration) -> Result<Self, AlgebraError> {
        if let Duration::Seconds(s) = d {
            if s < 0 {
                return Err(AlgebraError::Domain("negative duration".into()));
            }
        }
        TimeInterval::new(start, start.plus(d))
    }

    pub fn point(t: Instant) -> Self {
        TimeInterval::Interval { start: t, end: t }
    }

    pub fn is_universal(&self) -> bool {
        *self == TimeInterval::universal()
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, TimeInterval::Bottom)
    }

    pub fn start_time(&self) -> Instant {
        match self {
            TimeInterval::Interval { start, .. } => *start,
            TimeInterval::Bottom => Instant::Undefined,
        }
    }

    pub fn end_time(&self) -> Instant {
        match self {
            TimeInterval::Interval { end, .. } => *end,
            TimeInterval::Bottom => Instant::Undefined,
        }
    }

    pub fn duration(&self) -> Duration {
        self.end_time().minus(self.start_time())
    }

    /// Whether `x` lies in the closed interval.
    pub fn contains(&self, x: Instant) -> Result<bool, AlgebraError> {
        let Instant::At(t) = x else {
            return Err(AlgebraError::UndefinedInstant);
        };
        Ok(match self {
            TimeInterval::Bottom => false,
            TimeInterval::Interval { start, end } => {
                start.as_start() <= Bound::At(t) && Bound::At(t) <= end.as_end()
            }
        })
    }

    pub fn disjoint(&self, other: &TimeInterval) -> bool {
        match (self, other) {
            (
                TimeInterval::Interval { start: s1, end: e1 },
                TimeInterval::Interval { start: s2, end: e2 },
            ) => !(s1.as_start() <= e2.as_end() && s2.as_start() <= e1.as_end()),
            _ => true,
        }
    }

    pub fn test_intersect(&self, other: &TimeInterval) -> bool {
        !self.disjoint(other)
    }

    /// Meet: `[maxStart, minEnd]`, or bottom when disjoint.
    pub fn inter(&self, other: &TimeInterval) -> TimeInterval {
        if self.disjoint(other) {
            return TimeInterval::Bottom;
        }
        TimeInterval::Interval {
            start: self.start_time().max_start(other.start_time()),
            end: self.end_time().min_end(other.end_time()),
        }
    }

    /// Hull of overlapping intervals; disjoint intervals give the universal
    /// interval. Bottom is the identity.
    pub fn union(&self, other: &TimeInterval) -> TimeInterval {
        match (self, other) {
            (TimeInterval::Bottom, x) | (x, TimeInterval::Bottom) => *x,
            _ if self.disjoint(other) => TimeInterval::universal(),
            _ => TimeInterval::Interval {
                start: self.start_time().min(other.start_time()),
                end: self.end_time().max(other.end_time()),
            },
        }
    }

    /// Inclusion: every instant of `self` lies in `other`.
    pub fn incl(&self, other: &TimeInterval) -> bool {
        match (self, other) {
            (TimeInterval::Bottom, _) => true,
            (_, TimeInterval::Bottom) => false,
            (
                TimeInterval::Interval { start: s1, end: e1 },
                TimeInterval::Interval { start: s2, end: e2 },
            ) => s2.as_start() <= s1.as_start() && e1.as_end() <= e2.as_end(),
        }
    }

    /// Total comparison used only for deterministic output ordering.
    pub fn cmp_key(&self) -> (u8, Option<i64>, Option<i64>) {
        match self {
            TimeInterval::Bottom => (1, None, None),
            TimeInterval::Interval { start, end } => (0, start.seconds(), end.seconds()),
        }
    }
}
