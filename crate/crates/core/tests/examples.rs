//! Every example compiles into this test and runs to completion.

#[path = "../examples/factor_backends.rs"]
mod factor_backends;

#[test]
fn factor_backends_example_runs() {
    factor_backends::run().expect("factor_backends example should run");
}

#[path = "../examples/rees_profile.rs"]
mod rees_profile;

#[test]
fn rees_profile_example_runs() {
    rees_profile::run().expect("rees_profile example should run");
}

#[path = "../examples/consistent_systems.rs"]
mod consistent_systems;

#[test]
fn consistent_systems_example_runs() {
    consistent_systems::run().expect("consistent_systems example should run");
}

#[path = "../examples/normalize.rs"]
mod normalize;

#[test]
fn normalize_example_runs() {
    normalize::run().expect("normalize example should run");
}

#[path = "../examples/closed_forms.rs"]
mod closed_forms;

#[test]
fn closed_forms_example_runs() {
    closed_forms::run().expect("closed_forms example should run");
}

#[path = "../examples/uniformize.rs"]
mod uniformize;

#[test]
fn uniformize_example_runs() {
    uniformize::run().expect("uniformize example should run");
}

#[path = "../examples/multi_ideal.rs"]
mod multi_ideal;

#[test]
fn multi_ideal_example_runs() {
    multi_ideal::run().expect("multi_ideal example should run");
}

#[path = "../examples/residue_plan.rs"]
mod residue_plan;

#[test]
fn residue_plan_example_runs() {
    residue_plan::run().expect("residue_plan example should run");
}

#[path = "../examples/equivalence.rs"]
mod equivalence;

#[test]
fn equivalence_example_runs() {
    equivalence::run().expect("equivalence example should run");
}

#[path = "../examples/chain_json.rs"]
mod chain_json;

#[test]
fn chain_json_example_runs() {
    chain_json::run().expect("chain_json example should run");
}
