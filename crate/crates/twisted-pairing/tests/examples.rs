macro_rules! example {
    ($name:ident, $file:literal) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $name() {
            $name::run_example().expect("example runs");
        }
    };
}

example!(exact_linear_algebra, "exact_linear_algebra.rs");
example!(simplicial_cup, "simplicial_cup.rs");
example!(cyclic_cover, "cyclic_cover.rs");
example!(bullet_pairing, "bullet_pairing.rs");
example!(cone_pairing, "cone_pairing.rs");
example!(hexagon_cardy, "hexagon_cardy.rs");
example!(supertrace_identities, "supertrace_identities.rs");
example!(rank_bounds, "rank_bounds.rs");
example!(documents, "documents.rs");
