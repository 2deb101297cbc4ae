//! The validity-context sort: a region over time × space.

mod space;
mod time;

pub use space::{Containment, SpaceRegion};
pub use time::{Duration, Instant, TimeInterval};

use crate::error::AlgebraError;

/// Where and when a statement holds. The default is valid everywhere and
/// always; a context with an empty component is BOTTOM (holds nowhere).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ValidityContext {
    pub time: TimeInterval,
    pub space: SpaceRegion,
}

impl ValidityContext {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn time_validity(time: TimeInterval) -> Self {
        ValidityContext {
            time,
            space: SpaceRegion::Universal,
        }
    }

    pub fn space_validity(space: SpaceRegion) -> Self {
        ValidityContext {
            time: TimeInterval::universal(),
            space,
        }
    }

    pub fn timespace(time: TimeInterval, space: SpaceRegion) -> Self {
        ValidityContext { time, space }
    }

    pub fn is_empty(&self) -> bool {
        self.time.is_universal() && self.space.is_universal()
    }

    pub fn is_bottom(&self) -> bool {
        self.time.is_bottom() || self.space.is_bottom()
    }

    pub fn extract_time(&self) -> TimeInterval {
        self.time
    }

    pub fn extract_space(&self) -> SpaceRegion {
        self.space.clone()
    }

    pub fn set_time(&self, time: TimeInterval) -> Self {
        ValidityContext {
            time,
            space: self.space.clone(),
        }
    }

    pub fn set_space(&self, space: SpaceRegion) -> Self {
        ValidityContext {
            time: self.time,
            space,
        }
    }

    pub fn inter(&self, other: &Self, containment: &Containment) -> Result<Self, AlgebraError> {
        Ok(ValidityContext {
            time: self.time.inter(&other.time),
            space: containment.inter(&self.space, &other.space)?,
        })
    }

    /// Componentwise hull; an unconstrained component absorbs.
    pub fn union(&self, other: &Self, containment: &Containment) -> Result<Self, AlgebraError> {
        Ok(ValidityContext {
            time: self.time.union(&other.time),
            space: containment.union(&self.space, &other.space)?,
        })
    }

    /// True iff the two contexts share at least one point.
    pub fn test_intersect(
        &self,
        other: &Self,
        containment: &Containment,
    ) -> Result<bool, AlgebraError> {
        Ok(!self.inter(other, containment)?.is_bottom())
    }

    pub fn incl(&self, other: &Self, containment: &Containment) -> Result<bool, AlgebraError> {
        Ok(self.time.incl(&other.time) && containment.inside(&self.space, &other.space)?)
    }
}
