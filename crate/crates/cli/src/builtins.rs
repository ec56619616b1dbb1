//! Spec files shipped with the binary.

pub const BUILTINS: [(&str, &str, &str); 5] = [
    ("example43", "S3 acting on Z2 x Z3, its cocycle and the order-36 double", include_str!("../fixtures/example43.spec")),
    ("JB9", "standard symplectic form on Z3 x Z3", include_str!("../fixtures/jb9.spec")),
    ("JB25", "standard symplectic form on Z5 x Z5", include_str!("../fixtures/jb25.spec")),
    ("H81", "length-two hierarchy of order 81", include_str!("../fixtures/hier81.spec")),
    ("unit2", "Z3 alone, for exporting the unit tensor", include_str!("../fixtures/unit2.spec")),
];

/// Spec text of a builtin, matched case-insensitively.
pub fn lookup(name: &str) -> Option<(&'static str, &'static str)> {
    BUILTINS.iter().find(|(n, _, _)| n.eq_ignore_ascii_case(name)).map(|(n, _, t)| (*n, *t))
}
