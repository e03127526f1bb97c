//! Acceptance criteria; see tests/acceptance.rs.
