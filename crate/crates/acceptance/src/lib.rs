//! Holds only the `acceptance` test target; run it with
//! `cargo test -p msep-workspace-acceptance --test acceptance`.
