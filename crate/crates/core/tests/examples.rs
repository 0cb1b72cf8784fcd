mod graph_distances {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/graph_distances.rs"));
}
mod lattice_corners {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lattice_corners.rs"));
}
mod routing_loads {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/routing_loads.rs"));
}
mod wavelength_colouring {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/wavelength_colouring.rs"));
}
mod bound_brackets {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/bound_brackets.rs"));
}
mod sweep_report {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sweep_report.rs"));
}

#[test]
fn graph_distances_runs() {
    graph_distances::run_example().expect("graph example should run");
}

#[test]
fn lattice_corners_runs() {
    lattice_corners::run_example().expect("lattice example should run");
}

#[test]
fn routing_loads_runs() {
    routing_loads::run_example().expect("routing example should run");
}

#[test]
fn wavelength_colouring_runs() {
    wavelength_colouring::run_example().expect("colouring example should run");
}

#[test]
fn bound_brackets_runs() {
    bound_brackets::run_example().expect("bounds example should run");
}

#[test]
fn sweep_report_runs() {
    sweep_report::run_example().expect("report example should run");
}
