//! Brute-force flexibility oracles, tree enumeration and display counting.

mod bruteforce;
mod count;
mod enumerate;

pub use bruteforce::{
    assignment_count, is_flexible_bruteforce, is_flexible_bruteforce_with_budget, FlexReport,
    TreeAssignment, DEFAULT_BRUTEFORCE_BUDGET,
};
pub use count::{
    count_displaying, count_displaying_triples, defining_triples, disjoint_count_formula,
    is_unique_display, is_unique_display_on,
};
pub use enumerate::{
    enumerate_binary_trees, enumerate_binary_trees_with_cap, rooted_binary_tree_count,
    DEFAULT_ENUMERATION_CAP,
};
