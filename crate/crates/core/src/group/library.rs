//! Group tables bundled with the crate.

use super::table::GroupTable;

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../data/groups/", $name, ".grp")))),*]
    };
}

const SOURCES: &[(&str, &str)] = bundled!(
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "S3", "D4", "Q8",
    "C2xC2", "A4", "D6",
);

pub fn names() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn group(name: &str) -> Option<GroupTable> {
    source(name).map(|s| GroupTable::parse(s).expect("bundled table is valid"))
}

pub fn all() -> Vec<GroupTable> {
    names().filter_map(group).collect()
}
