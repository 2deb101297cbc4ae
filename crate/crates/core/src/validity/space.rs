//! Entity-based space regions and the containment relation between them.
//!
//! A region value is either the universal space or a set of named regions
//! read as their union; the empty set is the bottom space. Sets are kept as
//! antichains under `inside` (no member is inside another member).

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::AlgebraError;
use crate::iri::Iri;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum SpaceRegion {
    #[default]
    Universal,
    Regions(BTreeSet<Iri>),
}

impl SpaceRegion {
    pub fn region(iri: Iri) -> Self {
        SpaceRegion::Regions(BTreeSet::from([iri]))
    }

    pub fn bottom() -> Self {
        SpaceRegion::Regions(BTreeSet::new())
    }

    pub fn is_universal(&self) -> bool {
        matches!(self, SpaceRegion::Universal)
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, SpaceRegion::Regions(r) if r.is_empty())
    }
}

/// Reflexive-transitive closure of `inner inside outer` facts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Containment {
    ancestors: HashMap<Iri, HashSet<Iri>>,
}

impl Containment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds the closure from direct facts.
    pub fn from_facts<I>(facts: I) -> Self
    where
        I: IntoIterator<Item = (Iri, Iri)>,
    {
        let mut direct: HashMap<Iri, HashSet<Iri>> = HashMap::new();
        for (inner, outer) in facts {
            direct.entry(outer.clone()).or_default();
            direct.entry(inner).or_default().insert(outer);
        }
        let mut ancestors = HashMap::with_capacity(direct.len());
        for start in direct.keys() {
            let mut seen: HashSet<Iri> = HashSet::new();
            let mut stack: Vec<&Iri> = direct[start].iter().collect();
            while let Some(r) = stack.pop() {
                if seen.insert(r.clone()) {
                    stack.extend(direct[r].iter());
                }
            }
            seen.remove(start);
            ancestors.insert(start.clone(), seen);
        }
        Containment { ancestors }
    }

    pub fn is_known(&self, r: &Iri) -> bool {
        self.ancestors.contains_key(r)
    }

    pub fn regions(&self) -> impl Iterator<Item = &Iri> {
        self.ancestors.keys()
    }

    /// `inside(a, b)` on named regions. Equal regions are always inside each
    /// other; otherwise both must be known.
    pub fn region_inside(&self, a: &Iri, b: &Iri) -> Result<bool, AlgebraError> {
        if a == b {
            return Ok(true);
        }
        let up = self
            .ancestors
            .get(a)
            .ok_or_else(|| AlgebraError::UnknownRegion(a.to_string()))?;
        if !self.is_known(b) {
            return Err(AlgebraError::UnknownRegion(b.to_string()));
        }
        Ok(up.contains(b))
    }

    /// Every point of `a` is in `b`.
    pub fn inside(&self, a: &SpaceRegion, b: &SpaceRegion) -> Result<bool, AlgebraError> {
        match (a, b) {
            (_, SpaceRegion::Universal) => Ok(true),
            (SpaceRegion::Universal, SpaceRegion::Regions(_)) => Ok(false),
            (SpaceRegion::Regions(xs), SpaceRegion::Regions(ys)) => {
                for x in xs {
                    let mut found = false;
                    for y in ys {
                        if self.region_inside(x, y)? {
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Meet: pairwise keeps the smaller of comparable regions; incomparable
    /// regions contribute nothing. Universal is the identity.
    pub fn inter(&self, a: &SpaceRegion, b: &SpaceRegion) -> Result<SpaceRegion, AlgebraError> {
        match (a, b) {
            (SpaceRegion::Universal, x) | (x, SpaceRegion::Universal) => Ok(x.clone()),
            (SpaceRegion::Regions(xs), SpaceRegion::Regions(ys)) => {
                let mut out = BTreeSet::new();
                for x in xs {
                    for y in ys {
                        if self.region_inside(x, y)? {
                            out.insert(x.clone());
                        } else if self.region_inside(y, x)? {
                            out.insert(y.clone());
                        }
                    }
                }
                self.normalize(out)
            }
        }
    }

    /// Join: the union of the region sets, reduced to maximal members.
    /// Universal absorbs.
    pub fn union(&self, a: &SpaceRegion, b: &SpaceRegion) -> Result<SpaceRegion, AlgebraError> {
        match (a, b) {
            (SpaceRegion::Universal, _) | (_, SpaceRegion::Universal) => Ok(SpaceRegion::Universal),
            (SpaceRegion::Regions(xs), SpaceRegion::Regions(ys)) => {
                self.normalize(xs.iter().chain(ys.iter()).cloned().collect())
            }
        }
    }

    pub fn test_intersect(&self, a: &SpaceRegion, b: &SpaceRegion) -> Result<bool, AlgebraError> {
        Ok(!self.inter(a, b)?.is_bottom())
    }

    fn normalize(&self, set: BTreeSet<Iri>) -> Result<SpaceRegion, AlgebraError> {
        let mut keep = BTreeSet::new();
        for x in &set {
            let mut dominated = false;
            for y in &set {
                if x != y && self.region_inside(x, y)? {
                    dominated = true;
                    break;
                }
            }
            if !dominated {
                keep.insert(x.clone());
            }
        }
        Ok(SpaceRegion::Regions(keep))
    }
}
