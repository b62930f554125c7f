//! Instances bundled with the binary, looked up by name.

pub const ENTRIES: &[(&str, &str)] = &[
    ("cohn_rose1", include_str!("../corpus/cohn_rose1.json")),
    ("cohn_rose2", include_str!("../corpus/cohn_rose2.json")),
    ("cuntz_pair", include_str!("../corpus/cuntz_pair.json")),
    ("edge", include_str!("../corpus/edge.json")),
    ("ep_cohn_rose1", include_str!("../corpus/ep_cohn_rose1.json")),
    ("ep_edge", include_str!("../corpus/ep_edge.json")),
    ("ep_golden", include_str!("../corpus/ep_golden.json")),
    ("ep_rose1", include_str!("../corpus/ep_rose1.json")),
    ("ep_rose2", include_str!("../corpus/ep_rose2.json")),
    ("ep_rose3", include_str!("../corpus/ep_rose3.json")),
    ("gaussian", include_str!("../corpus/gaussian.json")),
    ("golden", include_str!("../corpus/golden.json")),
    ("group_ring_z2", include_str!("../corpus/group_ring_z2.json")),
    ("katsura_1_2", include_str!("../corpus/katsura_1_2.json")),
    ("katsura_2_1", include_str!("../corpus/katsura_2_1.json")),
    ("m2q", include_str!("../corpus/m2q.json")),
    ("odometer", include_str!("../corpus/odometer.json")),
    ("pair2", include_str!("../corpus/pair2.json")),
    ("pair3", include_str!("../corpus/pair3.json")),
    ("point", include_str!("../corpus/point.json")),
    ("rose1", include_str!("../corpus/rose1.json")),
    ("rose2", include_str!("../corpus/rose2.json")),
    ("rose3", include_str!("../corpus/rose3.json")),
    ("rose4", include_str!("../corpus/rose4.json")),
    ("rose5", include_str!("../corpus/rose5.json")),
    ("rose6", include_str!("../corpus/rose6.json")),
    ("s3", include_str!("../corpus/s3.json")),
    ("s3_parallel", include_str!("../corpus/s3_parallel.json")),
    ("s3_regular", include_str!("../corpus/s3_regular.json")),
    ("s4_parallel", include_str!("../corpus/s4_parallel.json")),
    ("union", include_str!("../corpus/union.json")),
    ("union_graded", include_str!("../corpus/union_graded.json")),
    ("units_z", include_str!("../corpus/units_z.json")),
    ("units_z2_plus_z", include_str!("../corpus/units_z2_plus_z.json")),
    ("z2", include_str!("../corpus/z2.json")),
    ("z2_double_swap", include_str!("../corpus/z2_double_swap.json")),
    ("z2_fixed_phi", include_str!("../corpus/z2_fixed_phi.json")),
    ("z2_swap", include_str!("../corpus/z2_swap.json")),
    ("z2_swap_phi", include_str!("../corpus/z2_swap_phi.json")),
    ("z2_swap_signed", include_str!("../corpus/z2_swap_signed.json")),
    ("z2_trivial", include_str!("../corpus/z2_trivial.json")),
    ("z2_twisted", include_str!("../corpus/z2_twisted.json")),
    ("z3", include_str!("../corpus/z3.json")),
    ("z3_rotate", include_str!("../corpus/z3_rotate.json")),
    ("z_identity", include_str!("../corpus/z_identity.json")),
    ("z_swap_cancel", include_str!("../corpus/z_swap_cancel.json")),
];

/// Accepts `name`, `name.json` or `corpus/name.json`.
pub fn lookup(key: &str) -> Option<&'static str> {
    let stem = key.strip_prefix("corpus/").unwrap_or(key);
    let stem = stem.strip_suffix(".json").unwrap_or(stem);
    ENTRIES.iter().find(|(n, _)| *n == stem).map(|(_, s)| *s)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|(n, _)| *n)
}
