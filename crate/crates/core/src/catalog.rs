//! Shipped diagrams.

use crate::diagram::{parse_pd, Diagram};
use crate::error::{Error, Result};
use crate::twist::pretzel;

const FILES: &[(&str, &str)] = &[
    ("unknot", include_str!("../data/unknot.pd")),
    ("3_1", include_str!("../data/3_1.pd")),
    ("4_1", include_str!("../data/4_1.pd")),
    ("5_1", include_str!("../data/5_1.pd")),
    ("5_2", include_str!("../data/5_2.pd")),
    ("6_1", include_str!("../data/6_1.pd")),
    ("6_2", include_str!("../data/6_2.pd")),
    ("6_3", include_str!("../data/6_3.pd")),
    ("7_4", include_str!("../data/7_4.pd")),
    ("8_19", include_str!("../data/8_19.pd")),
    ("8_20", include_str!("../data/8_20.pd")),
    ("8_21", include_str!("../data/8_21.pd")),
    ("10_152", include_str!("../data/10_152.pd")),
    ("L2a1", include_str!("../data/L2a1.pd")),
    ("L4a1", include_str!("../data/L4a1.pd")),
    ("P(2,2,-2,-2)", include_str!("../data/pretzel_2_2_-2_-2.pd")),
];

/// Names of the shipped diagrams, including derived ones.
pub fn names() -> Vec<&'static str> {
    FILES.iter().map(|(n, _)| *n).chain(["3_1m", "figure-eight", "trefoil", "trefoil-right"]).collect()
}

/// Raw PD text of a shipped data file.
pub fn pd_text(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Load a shipped diagram by name. `3_1m` and `trefoil-right` are the mirror
/// of the table trefoil; `trefoil` and `figure-eight` are aliases.
pub fn load(name: &str) -> Result<Diagram> {
    let alias = match name {
        "trefoil" => "3_1",
        "figure-eight" => "4_1",
        other => other,
    };
    if let Some(text) = pd_text(alias) {
        return parse_pd(text);
    }
    match name {
        "3_1m" | "trefoil-right" => Ok(parse_pd(pd_text("3_1").unwrap())?.mirror().with_name(name)),
        _ => Err(Error::InvalidArgument(format!("unknown catalog diagram {name:?}"))),
    }
}

/// Every shipped diagram with its name.
pub fn all() -> Vec<(&'static str, Diagram)> {
    names().into_iter().map(|n| (n, load(n).expect("shipped diagrams parse"))).collect()
}

/// The shipped pretzel file, regenerated from the construction.
pub fn pretzel_file_text() -> String {
    pretzel(&[2, 2, -2, -2]).expect("valid pretzel").to_pd_text()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_entries_parse_and_validate() {
        for (name, d) in all() {
            assert!(d.validate().is_empty(), "{name}");
        }
    }

    #[test]
    fn pretzel_file_matches_generator() {
        assert_eq!(pd_text("P(2,2,-2,-2)").unwrap(), pretzel_file_text());
    }

    #[test]
    fn spot_counts() {
        assert_eq!(load("10_152").unwrap().crossing_count(), 10);
        assert_eq!(load("unknot").unwrap().crossing_count(), 0);
        assert!(load("nope").is_err());
    }
}
