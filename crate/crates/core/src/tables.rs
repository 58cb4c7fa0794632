//! Row listings of the classification of families by minimal K-type and of
//! the admissible duals of the group and motion-group fibers.

use serde_json::{json, Value};

use crate::families::KTypeSet;
use crate::param::{DualParam, Flavor, RowKind};
use crate::scalar::GaussianRational;

type Gr = GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Table {
    /// Families `(m, I, c(r))`.
    Families,
    /// Group fiber `R != 0`.
    GroupDual,
    /// Motion-group fiber `R = 0`.
    MotionDual,
}

impl Table {
    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(Table::Families),
            2 => Some(Table::GroupDual),
            3 => Some(Table::MotionDual),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Table::Families => 1,
            Table::GroupDual => 2,
            Table::MotionDual => 3,
        }
    }
}

fn kind(k: RowKind) -> Value {
    serde_json::to_value(k).expect("serializable")
}

fn ray(m: i64) -> KTypeSet {
    if m > 0 {
        KTypeSet::RayUp { start: m }
    } else {
        KTypeSet::RayDown { start: m }
    }
}

fn parity_class(m: i64) -> KTypeSet {
    if m.rem_euclid(2) == 0 {
        KTypeSet::AllEven
    } else {
        KTypeSet::AllOdd
    }
}

fn forced(m: i64) -> i64 {
    DualParam::forced_level(&Flavor::group(Gr::from_int(1)), m).expect("|m| > 1")
}

fn discrete_domain(m: i64) -> &'static str {
    if m > 0 {
        "1<d"
    } else {
        "d<-1"
    }
}

/// Symbolic rows for every `|m| <= max_m`, in increasing `m`.
pub fn table_rows(table: Table, max_m: i64) -> Vec<Value> {
    let key = if table == Table::Families { "casimir" } else { "level" };
    let mut rows = Vec::new();
    for m in -max_m..=max_m {
        let pc = parity_class(m).notation();
        let k_range = if m == 0 { "even k≥0" } else { "odd k≥-1" };
        let window_range = if m == 0 { "even k≥0" } else { "odd k≥1" };
        match (table, m.abs()) {
            (Table::MotionDual, a) if a <= 1 => {
                rows.push(json!({"m": m, "kind": kind(RowKind::Generic), "ktypes": pc, "level": "c≠0", "domain": null}));
                rows.push(json!({
                    "m": m,
                    "kind": kind(RowKind::Character),
                    "ktypes": KTypeSet::Singleton { n: m }.notation(),
                    "level": 0,
                    "domain": null,
                }));
            }
            (Table::MotionDual, _) => rows.push(json!({
                "m": m,
                "kind": kind(RowKind::Character),
                "ktypes": KTypeSet::Singleton { n: m }.notation(),
                "level": 0,
                "domain": discrete_domain(m),
            })),
            (_, a) if a <= 1 => {
                let (generic, name) = if table == Table::Families {
                    ("c2*r^2+c1*r+c0", "c(r)≢k(k+2)")
                } else {
                    ("ω", "ω≠k(k+2)")
                };
                rows.push(json!({
                    "m": m,
                    "kind": kind(RowKind::Generic),
                    "ktypes": pc,
                    key: generic,
                    "domain": format!("{name} for {k_range}"),
                }));
                rows.push(json!({
                    "m": m,
                    "kind": kind(RowKind::Window),
                    "ktypes": "{-k,...,k}",
                    key: "k(k+2)",
                    "domain": window_range,
                }));
                if m != 0 {
                    rows.push(json!({
                        "m": m,
                        "kind": kind(RowKind::LimitRay),
                        "ktypes": ray(m).notation(),
                        key: -1,
                        "domain": null,
                    }));
                }
            }
            _ => rows.push(json!({
                "m": m,
                "kind": kind(RowKind::DiscreteRay),
                "ktypes": ray(m).notation(),
                key: forced(m),
                "domain": discrete_domain(m),
            })),
        }
    }
    rows
}

/// Concrete parameters at the given levels, classified into rows. Only the
/// dual tables have instances; forced levels replace the grid for `|m| > 1`.
pub fn table_instances(table: Table, max_m: i64, levels: &[Gr], big_r: &Gr) -> Vec<Value> {
    let flavor = match table {
        Table::Families => return Vec::new(),
        Table::GroupDual => Flavor::group(big_r.clone()),
        Table::MotionDual => Flavor::Motion,
    };
    let atlas = crate::duals::DualAtlas {
        flavor,
        max_m,
        levels: levels.to_vec(),
    };
    atlas
        .params()
        .map(|p| {
            json!({
                "param": p.to_string(),
                "m": p.m,
                "level": p.level.to_string(),
                "kind": kind(p.row_kind()),
                "ktypes": p.ktypes().notation(),
            })
        })
        .collect()
}

/// `{"table", "M", "rows"}`, plus `"instances"` when levels are given.
pub fn table_json(table: Table, max_m: i64, levels: Option<&[Gr]>, big_r: &Gr) -> Value {
    let mut out = json!({
        "table": table.index(),
        "M": max_m,
        "rows": table_rows(table, max_m),
    });
    if let Some(levels) = levels {
        out["instances"] = Value::Array(table_instances(table, max_m, levels, big_r));
    }
    out
}
