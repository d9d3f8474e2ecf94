macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run_example().unwrap();
        }
    };
}

example!(formulas);
example!(paths);
example!(compile_code);
example!(wire_spectrum);
example!(reduce_verify);
example!(compose);
example!(fock_identities);
example!(majorana_chain);
example!(fuzz);
