//! Acceptance suite for `lattice-opoly`; see `tests/acceptance.rs`.
