#[allow(dead_code)]
mod free_algebra {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/free_algebra.rs"));
}

#[test]
fn free_algebra_example_runs() {
    free_algebra::run_example().expect("free_algebra example should run");
}

#[allow(dead_code)]
mod brackets {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/brackets.rs"));
}

#[test]
fn brackets_example_runs() {
    brackets::run_example().expect("brackets example should run");
}

#[allow(dead_code)]
mod pbw_certificate {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/pbw_certificate.rs"));
}

#[test]
fn pbw_certificate_example_runs() {
    pbw_certificate::run_example().expect("pbw_certificate example should run");
}

#[allow(dead_code)]
mod hopf_sixth {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/hopf_sixth.rs"));
}

#[test]
fn hopf_sixth_example_runs() {
    hopf_sixth::run_example().expect("hopf_sixth example should run");
}

#[allow(dead_code)]
mod hopf_fourth {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/hopf_fourth.rs"));
}

#[test]
fn hopf_fourth_example_runs() {
    hopf_fourth::run_example().expect("hopf_fourth example should run");
}

#[allow(dead_code)]
mod matrix_reps {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/matrix_reps.rs"));
}

#[test]
fn matrix_reps_example_runs() {
    matrix_reps::run_example().expect("matrix_reps example should run");
}

#[allow(dead_code)]
mod definition_files {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/definition_files.rs"));
}

#[test]
fn definition_files_example_runs() {
    definition_files::run_example().expect("definition_files example should run");
}
