macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(solve_cloud, "solve_cloud.rs", solve_cloud_runs);
example!(degenerate_inputs, "degenerate_inputs.rs", degenerate_inputs_runs);
example!(orientations, "orientations.rs", orientations_runs);
example!(hull_oracle, "hull_oracle.rs", hull_oracle_runs);
example!(repair_loop, "repair_loop.rs", repair_loop_runs);
example!(file_roundtrip, "file_roundtrip.rs", file_roundtrip_runs);
example!(convergence, "convergence.rs", convergence_runs);
example!(scaling, "scaling.rs", scaling_runs);
