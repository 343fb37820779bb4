//! Instances shipped with the crate.

use crate::instance::Instance;

pub const K3: &str = include_str!("../fixtures/k3.txt");
pub const PATH: &str = include_str!("../fixtures/path.txt");
pub const TET4: &str = include_str!("../fixtures/tet4.txt");
pub const TWIN3: &str = include_str!("../fixtures/twin3.txt");

pub const ALL: [(&str, &str); 4] = [("k3", K3), ("path", PATH), ("tet4", TET4), ("twin3", TWIN3)];

/// Looks a fixture up by name (`k3`, `path`, `tet4`, `twin3`).
pub fn fixture(name: &str) -> Option<Instance> {
    ALL.iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(n, text)| Instance::parse(*n, text).expect("fixtures parse"))
}

pub fn all() -> Vec<Instance> {
    ALL.iter().map(|(n, _)| fixture(n).unwrap()).collect()
}
