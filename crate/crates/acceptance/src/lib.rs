//! Holds the `acceptance` test target, which checks every acceptance
//! criterion of `radii-lab` at its pinned tolerance and prints one line per
//! criterion. Run it with `cargo test -p radii-lab-acceptance`.
