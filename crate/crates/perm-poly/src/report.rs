use std::fmt::Write;

use serde::Serialize;

use crate::ResidueVector;

/// Outcome of an exhaustive bijectivity sweep.
///
/// `is_bijection == false` always comes with either a collision (two inputs,
/// one image) or an escape (an input of the restricted domain whose image
/// lies outside it).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectivityReport {
    /// Human-readable description of the map, e.g. `thm2 n=3 m=2`.
    pub map: String,
    pub is_bijection: bool,
    pub domain_size: u64,
    /// Whether the all-odd tuples were excluded from the domain.
    pub restricted: bool,
    /// First collision in lexicographic input order: `(earlier, later)`.
    pub first_collision: Option<(ResidueVector, ResidueVector)>,
    /// First `(input, image)` whose image left the restricted domain.
    pub first_escape: Option<(ResidueVector, ResidueVector)>,
}

impl BijectivityReport {
    /// `field=value` lines, one per field.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let pair = |p: &Option<(ResidueVector, ResidueVector)>| match p {
            Some((a, b)) => format!("{a} {b}"),
            None => "none".to_owned(),
        };
        writeln!(s, "map={}", self.map).unwrap();
        writeln!(s, "restricted={}", self.restricted).unwrap();
        writeln!(s, "domain_size={}", self.domain_size).unwrap();
        writeln!(s, "is_bijection={}", self.is_bijection).unwrap();
        writeln!(s, "first_collision={}", pair(&self.first_collision)).unwrap();
        writeln!(s, "first_escape={}", pair(&self.first_escape)).unwrap();
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
