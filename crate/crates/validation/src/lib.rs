//! Holds no code. `cargo test -p mhx-validation --test acceptance` runs the
//! acceptance checks and prints one PASS or FAIL line per criterion.
