use derivator::cli::{run_command, Binding, Command, Format, SidesArg, Workspace};
use derivator::repder::{random_diagram, Policy};
use derivator::Error;
use proptest::prelude::*;

const BASIC: &str = include_str!("../examples/workspaces/basic.toml");

fn policy() -> Policy {
    Policy { seed: 7, samples: 4, max_dim: 3 }
}

fn basic() -> Workspace {
    Workspace::parse(BASIC).unwrap()
}

#[test]
fn three_bindings() {
    let ws = Workspace::parse(
        r#"
        [category.one]
        standard = "ordinal"
        n = 1
        [category.corner]
        standard = "corner"
        [functor.i1]
        source = "one"
        target = "corner"
        objects = ["(0,0)", "(1,0)"]
        "#,
    )
    .unwrap();
    assert_eq!(ws.len(), 3);
    assert!(matches!(ws.get("i1").unwrap(), Binding::Functor(_)));
}

#[test]
fn non_natural_cell_names_the_square() {
    let text = r#"
        [category.one]
        standard = "ordinal"
        n = 1
        [category.e]
        standard = "terminal"
        [functor.zero]
        source = "e"
        target = "one"
        objects = ["0"]
        [functor.ide]
        source = "e"
        target = "e"
        objects = ["*"]
        [square.bad]
        top = "ide"
        left = "ide"
        bottom = "zero"
        right = "zero"
        orientation = "down-left"
        cell = ["0->1"]
        "#;
    let err = Workspace::parse(text).unwrap_err();
    assert!(err.to_string().contains("square bad"), "{err}");
}

#[test]
fn undefined_category_is_dangling() {
    let err = Workspace::parse(
        r#"
        [functor.f]
        source = "nowhere"
        target = "nowhere"
        objects = []
        "#,
    )
    .unwrap_err();
    assert!(matches!(err, Error::Dangling(_)), "{err}");
}

#[test]
fn syntax_errors_carry_a_location() {
    let err = Workspace::parse("[category.one\nstandard = 1").unwrap_err();
    assert!(matches!(err, Error::Parse(ref m) if m.contains("line")), "{err}");
}

#[test]
fn print_then_parse_round_trips() {
    let ws = basic();
    let printed = ws.print().unwrap();
    let again = Workspace::parse(&printed).unwrap();
    assert!(ws == again);
    assert_eq!(again.print().unwrap(), printed);
}

#[test]
fn cofiber_of_zero_map() {
    let r = run_command(&basic(), &Command::Cofiber { f: "zero_map".into() }, &policy()).unwrap();
    assert!(r.passed);
    assert_eq!(r.body["cofiber_dim"], 1);
    let r = run_command(&basic(), &Command::Cofiber { f: "incl".into() }, &policy()).unwrap();
    assert_eq!(r.body["cofiber_dim"], 1);
}

#[test]
fn exact_check_of_adjoint_square() {
    let ws = basic();
    let cmd = Command::ExactCheck { square: "adjsq".into(), side: SidesArg::Right };
    let r = run_command(&ws, &cmd, &policy()).unwrap();
    assert!(r.passed);
    let cmd = Command::ExactCheck { square: "notexact".into(), side: SidesArg::Both };
    let r = run_command(&ws, &cmd, &policy()).unwrap();
    assert!(!r.passed);
    assert!(r.render(Format::Text).contains("witness"));
}

#[test]
fn every_command_runs_on_the_basic_workspace() {
    use derivator::cli::SideArg;
    let ws = basic();
    let cmds = [
        Command::Validate { name: None },
        Command::Validate { name: Some("both".into()) },
        Command::Comma { u: "i1".into(), v: "i1".into() },
        Command::Kan { u: "i1".into(), x: "incl".into(), side: SideArg::Left },
        Command::Kan { u: "icorner".into(), x: "span".into(), side: SideArg::Left },
        Command::Mate { square: "adjsq".into(), x: "point".into(), side: SideArg::Right },
        Command::ExtZero { u: "i1".into(), x: "incl".into() },
        Command::ExcAdjoint { y: "span".into(), against: Some("incl".into()) },
        Command::Cocontinuous { phi: "tensor2".into(), u: "pid2".into() },
        Command::EmitDot { name: "square".into() },
        Command::EmitDot { name: "span".into() },
    ];
    for cmd in &cmds {
        let r = run_command(&ws, cmd, &policy()).unwrap_or_else(|e| panic!("{cmd:?}: {e}"));
        assert!(r.passed, "{cmd:?}");
        assert!(!r.render(Format::Text).is_empty());
        assert!(r.render(Format::Json).contains("\"seed\": 7"));
    }
}

#[test]
fn k0_guard_on_non_cocartesian_input() {
    let ws = basic();
    let e = run_command(&ws, &Command::K0Check { x: "span".into() }, &policy()).unwrap_err();
    assert!(matches!(e, Error::Shape(_)));
}

#[test]
fn dot_has_one_edge_per_non_identity_morphism() {
    let r = run_command(&basic(), &Command::EmitDot { name: "square".into() }, &policy()).unwrap();
    let dot = r.render(Format::Text);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.lines().filter(|l| l.contains("\" -> \"")).count(), 5);
    assert_eq!(dot.lines().filter(|l| l.ends_with(';') && !l.contains("->")).count(), 4);
}

#[test]
fn unknown_names_are_errors() {
    let e = run_command(&basic(), &Command::Cofiber { f: "nope".into() }, &policy()).unwrap_err();
    assert!(matches!(e, Error::Dangling(_)));
    let e = run_command(&basic(), &Command::Cofiber { f: "i1".into() }, &policy()).unwrap_err();
    assert!(matches!(e, Error::Shape(_)));
}

#[test]
fn output_is_deterministic() {
    let ws = basic();
    let cmd = Command::Cocontinuous { phi: "plus1".into(), u: "pid2".into() };
    let a = run_command(&ws, &cmd, &policy()).unwrap().render(Format::Json);
    let b = run_command(&ws, &cmd, &policy()).unwrap().render(Format::Json);
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn random_diagrams_round_trip(seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut ws = basic();
        let shape = ws.category("square").unwrap().clone();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x = random_diagram(&shape, 3, &mut rng);
        ws.insert("x", Binding::Diagram(x)).unwrap();
        let again = Workspace::parse(&ws.print().unwrap()).unwrap();
        prop_assert!(ws == again);
    }
}
