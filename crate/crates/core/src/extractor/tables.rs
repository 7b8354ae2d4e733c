//! The two endpoint tables: where a linking path `R` may attach on each
//! side, and what each pairing yields.

use std::fmt;

use serde::Serialize;

/// A named piece of the working configuration. Segment names follow path
/// notation, so `V2R2P1` is the part of rim segment 2 from `v2` to `p1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Part {
    R1,
    R2,
    R3,
    R4,
    V2R2P1,
    P1R2V3,
    V4R4Q3,
    Q3R4V1,
    P1,
    P2,
    P3,
    P4,
    P,
    Q,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Part::R1 => "R1",
            Part::R2 => "R2",
            Part::R3 => "R3",
            Part::R4 => "R4",
            Part::V2R2P1 => "v2R2p1",
            Part::P1R2V3 => "p1R2v3",
            Part::V4R4Q3 => "v4R4q3",
            Part::Q3R4V1 => "q3R4v1",
            Part::P1 => "P1",
            Part::P2 => "P2",
            Part::P3 => "P3",
            Part::P4 => "P4",
            Part::P => "P",
            Part::Q => "Q",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RowClass {
    K5Minus,
    ShorterW4,
    Residual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub id: &'static str,
    pub g1: Part,
    pub g2: Part,
    pub class: RowClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EndpointTable {
    pub name: &'static str,
    pub g1_parts: &'static [Part],
    pub g2_parts: &'static [Part],
    pub rows: &'static [TableRow],
}

impl EndpointTable {
    pub fn lookup(&self, g1: Part, g2: Part) -> Option<&'static TableRow> {
        self.rows.iter().find(|r| r.g1 == g1 && r.g2 == g2)
    }
}

const fn row(id: &'static str, g1: Part, g2: Part, class: RowClass) -> TableRow {
    TableRow { id, g1, g2, class }
}

use Part::*;
use RowClass::{K5Minus as K, Residual as X, ShorterW4 as S};

/// Case (c)(i): `G1 = R1 ∪ R2 ∪ P1 ∪ P2 ∪ P`, `G2 = R3 ∪ R4 ∪ P3 ∪ P4 ∪ Q`.
pub const TABLE_C1: EndpointTable = EndpointTable {
    name: "c1",
    g1_parts: &[R1, V2R2P1, P1R2V3, P1, P2, P],
    g2_parts: &[R3, V4R4Q3, Q3R4V1, P3, P4, Q],
    rows: &[
        row("1", R1, R3, K),
        row("2a", R1, V4R4Q3, K),
        row("2b", R1, Q3R4V1, X),
        row("3", R1, P3, S),
        row("4", R1, P4, K),
        row("5", R1, Q, K),
        row("6a", V2R2P1, R3, K),
        row("7a", V2R2P1, V4R4Q3, K),
        row("7c", V2R2P1, Q3R4V1, X),
        row("8a", V2R2P1, P3, S),
        row("9a", V2R2P1, P4, S),
        row("10a", V2R2P1, Q, K),
        row("6b", P1R2V3, R3, X),
        row("7b", P1R2V3, V4R4Q3, X),
        row("7d", P1R2V3, Q3R4V1, X),
        row("8b", P1R2V3, P3, S),
        row("9b", P1R2V3, P4, S),
        row("10b", P1R2V3, Q, X),
        row("11", P1, R3, S),
        row("12", P1, V4R4Q3, S),
        row("12", P1, Q3R4V1, S),
        row("13", P1, P3, X),
        row("14", P1, P4, S),
        row("15", P1, Q, S),
        row("16", P2, R3, K),
        row("17a", P2, V4R4Q3, S),
        row("17b", P2, Q3R4V1, S),
        row("18", P2, P3, S),
        row("19", P2, P4, S),
        row("20", P2, Q, S),
        row("21", P, R3, K),
        row("22a", P, V4R4Q3, K),
        row("22b", P, Q3R4V1, X),
        row("23", P, P3, S),
        row("24", P, P4, S),
        row("25", P, Q, K),
    ],
};

/// Case (d)(i): `G1 = R1 ∪ R2 ∪ P2`, `G2 = R3 ∪ R4 ∪ P4`.
pub const TABLE_D1: EndpointTable = EndpointTable {
    name: "d1",
    g1_parts: &[R1, R2, P2],
    g2_parts: &[R3, R4, P4],
    rows: &[
        row("1", R1, R3, K),
        row("2", R1, R4, X),
        row("3", R1, P4, S),
        row("4", R2, R3, X),
        row("5", R2, R4, K),
        row("6", R2, P4, S),
        row("7", P2, R3, S),
        row("8", P2, R4, S),
        row("9", P2, P4, S),
    ],
};

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn ids(t: &EndpointTable, class: RowClass) -> BTreeSet<&'static str> {
        t.rows.iter().filter(|r| r.class == class).map(|r| r.id).collect()
    }

    fn set(s: &[&'static str]) -> BTreeSet<&'static str> {
        s.iter().copied().collect()
    }

    #[test]
    fn c1_classes() {
        let t = TABLE_C1;
        assert_eq!(t.rows.len(), 36);
        assert_eq!(
            ids(&t, RowClass::K5Minus),
            set(&["1", "2a", "4", "5", "6a", "7a", "10a", "16", "21", "22a", "25"])
        );
        assert_eq!(
            ids(&t, RowClass::ShorterW4),
            set(&["3", "8a", "8b", "9a", "9b", "11", "12", "14", "15", "17a", "17b", "18", "19", "20", "23", "24"])
        );
        assert_eq!(
            ids(&t, RowClass::Residual),
            set(&["2b", "6b", "7b", "7c", "7d", "10b", "13", "22b"])
        );
        for &a in t.g1_parts {
            for &b in t.g2_parts {
                assert!(t.lookup(a, b).is_some(), "{a} {b}");
            }
        }
    }

    #[test]
    fn d1_classes() {
        let t = TABLE_D1;
        assert_eq!(ids(&t, RowClass::K5Minus), set(&["1", "5"]));
        assert_eq!(ids(&t, RowClass::ShorterW4), set(&["3", "6", "7", "8", "9"]));
        assert_eq!(ids(&t, RowClass::Residual), set(&["2", "4"]));
        assert_eq!(t.lookup(Part::P2, Part::P4).unwrap().id, "9");
    }
}
