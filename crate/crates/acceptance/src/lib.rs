//! Acceptance criteria for `nfduality` live in `tests/acceptance.rs`.
