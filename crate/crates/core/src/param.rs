//! Parameters `(omega, m)_R` of irreducible modules of a single fiber:
//! the group fibers (`R != 0`, `omega` the action of the canonical Casimir)
//! and the motion-group fiber (`R = 0`, `c` the action of `Omega_inf`).

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{wall_index, KTypeSet};
use crate::scalar::GaussianRational;

type Gr = GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Fiber at `R`; `None` for the point `r = 0`, which lies outside `Xinf`.
    Group { big_r: Option<Gr> },
    Motion,
}

impl Flavor {
    pub fn group(big_r: Gr) -> Self {
        Flavor::Group { big_r: Some(big_r) }
    }

    pub fn is_motion(&self) -> bool {
        matches!(self, Flavor::Motion)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("({level},{m}): minimal K-type {m} forces level {expected}")]
    ForcedLevel { level: String, m: i64, expected: i64 },
    #[error("R = 0 is the motion fiber, not a group fiber")]
    ZeroR,
}

/// Which row of the dual tables a parameter falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum RowKind {
    /// Full parity class of K-types.
    Generic,
    /// Finite-dimensional module with K-types `-k..k`.
    Window,
    /// Limit of discrete series, `(-1, +-1)_R`.
    LimitRay,
    /// Discrete series `(d(d-+2), d)_R`, `|d| > 1`.
    DiscreteRay,
    /// One-dimensional module of the motion group.
    Character,
}

/// `(level, m)` on the fiber named by `flavor`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualParam {
    pub flavor: Flavor,
    pub level: Gr,
    pub m: i64,
}

impl DualParam {
    pub fn new(flavor: Flavor, level: Gr, m: i64) -> Result<Self, ParamError> {
        let p = Self { flavor, level, m };
        p.validate()?;
        Ok(p)
    }

    pub fn group(level: Gr, m: i64, big_r: Gr) -> Result<Self, ParamError> {
        if big_r.is_zero() {
            return Err(ParamError::ZeroR);
        }
        Self::new(Flavor::group(big_r), level, m)
    }

    pub fn motion(level: Gr, m: i64) -> Result<Self, ParamError> {
        Self::new(Flavor::Motion, level, m)
    }

    /// The level forced by the minimal K-type, for `|m| > 1`.
    pub fn forced_level(flavor: &Flavor, m: i64) -> Option<i64> {
        match (flavor, m) {
            (_, -1..=1) => None,
            (Flavor::Motion, _) => Some(0),
            (Flavor::Group { .. }, d) if d > 1 => Some(d * (d - 2)),
            (Flavor::Group { .. }, d) => Some(d * (d + 2)),
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if let Flavor::Group { big_r: Some(r) } = &self.flavor {
            if r.is_zero() {
                return Err(ParamError::ZeroR);
            }
        }
        match Self::forced_level(&self.flavor, self.m) {
            Some(e) if self.level != Gr::from_int(e) => Err(ParamError::ForcedLevel {
                level: self.level.to_string(),
                m: self.m,
                expected: e,
            }),
            _ => Ok(()),
        }
    }

    pub fn row_kind(&self) -> RowKind {
        let m = self.m;
        match self.flavor {
            Flavor::Motion => {
                if m.abs() > 1 || self.level.is_zero() {
                    RowKind::Character
                } else {
                    RowKind::Generic
                }
            }
            Flavor::Group { .. } => {
                if m.abs() > 1 {
                    return RowKind::DiscreteRay;
                }
                match wall_index(&self.level) {
                    Some(-1) if m != 0 => RowKind::LimitRay,
                    Some(k) if k >= 0 && k.rem_euclid(2) == m.rem_euclid(2) => RowKind::Window,
                    _ => RowKind::Generic,
                }
            }
        }
    }

    /// K-types of the module named by the parameter.
    pub fn ktypes(&self) -> KTypeSet {
        let m = self.m;
        let parity_class = if m.rem_euclid(2) == 0 { KTypeSet::AllEven } else { KTypeSet::AllOdd };
        match self.row_kind() {
            RowKind::Generic => parity_class,
            RowKind::Window => KTypeSet::Window {
                k: wall_index(&self.level).expect("window level"),
            },
            RowKind::LimitRay | RowKind::DiscreteRay if m > 0 => KTypeSet::RayUp { start: m },
            RowKind::LimitRay | RowKind::DiscreteRay => KTypeSet::RayDown { start: m },
            RowKind::Character => KTypeSet::Singleton { n: m },
        }
    }

    pub fn big_r(&self) -> Option<&Gr> {
        match &self.flavor {
            Flavor::Group { big_r } => big_r.as_ref(),
            Flavor::Motion => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

impl fmt::Display for DualParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})_", self.level, self.m)?;
        match &self.flavor {
            Flavor::Motion => write!(f, "0"),
            Flavor::Group { big_r: Some(r) } => write!(f, "{r}"),
            Flavor::Group { big_r: None } => write!(f, "[r=0]"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum FlavorTag {
    Group,
    Motion,
}

#[derive(Serialize, Deserialize)]
struct ParamRepr {
    flavor: FlavorTag,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    big_r: Option<Option<Gr>>,
    level: Gr,
    m: i64,
}

impl Serialize for DualParam {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (flavor, big_r) = match &self.flavor {
            Flavor::Group { big_r } => (FlavorTag::Group, Some(big_r.clone())),
            Flavor::Motion => (FlavorTag::Motion, None),
        };
        ParamRepr {
            flavor,
            big_r,
            level: self.level.clone(),
            m: self.m,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DualParam {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ParamRepr::deserialize(deserializer)?;
        let flavor = match repr.flavor {
            FlavorTag::Group => Flavor::Group {
                big_r: repr.big_r.flatten(),
            },
            FlavorTag::Motion => Flavor::Motion,
        };
        DualParam::new(flavor, repr.level, repr.m).map_err(serde::de::Error::custom)
    }
}
