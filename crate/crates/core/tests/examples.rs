//! Every example runs to completion.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run_example().expect("example should run");
        }
    };
}

example!(color_and_depth);
example!(pixel_order);
example!(pdp_roundtrip);
example!(framing);
example!(link_budget);
example!(lossy_channel);
example!(reconstruct);
example!(image_net);
