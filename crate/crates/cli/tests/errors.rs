use fqav_cli::{parse_input, run, CliError, ErrorCode};

fn input(factors: &str, holonomy: &str, translation: &str) -> String {
    format!(
        r#"{{"schema_version": 1, "factors": {factors},
            "generators": [{{"holonomy": {holonomy}, "translation": {translation}}}]}}"#
    )
}

fn code_of(text: &str) -> ErrorCode {
    parse_input(text).unwrap_err().code
}

fn exit_of(args: &[&str], stdin: &str) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("fqav").chain(args.iter().copied()),
        &mut stdin.as_bytes(),
        &mut out,
        &mut err,
    );
    assert!(
        code == 0 || out.is_empty(),
        "a failing run wrote a document"
    );
    (code, String::from_utf8(err).unwrap())
}

#[test]
fn ex51_fixture_parses() {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../gallery/ex51.json"
    ))
    .unwrap();
    let a = parse_input(&text).unwrap();
    assert_eq!(a.variety.dim(), 2);
    assert_eq!(a.variety.to_string(), "E_i × E_i");
    assert_eq!(a.generators.len(), 1);
    assert!(a.generators[0].translation().is_zero());
    assert_eq!(a.input.options.group_cap, 10_000);
}

#[test]
fn tau_on_a_generic_factor_is_rejected() {
    let t = input(r#"[{"cm": "generic"}]"#, "[[[0, 1]]]", r#"["0", "0"]"#);
    let e = parse_input(&t).unwrap_err();
    assert_eq!(e.code, ErrorCode::NotAnEndomorphism);
    assert_eq!(e.path, "generators[0].holonomy");
    assert!(e.to_string().contains("not an endomorphism"));
}

#[test]
fn maps_between_distinct_curves_are_rejected() {
    let t = input(
        r#"[{"cm": "generic", "label": "E"}, {"cm": "generic", "label": "F"}]"#,
        "[[[0, 0], [1, 0]], [[1, 0], [0, 0]]]",
        r#"["0", "0", "0", "0"]"#,
    );
    assert_eq!(code_of(&t), ErrorCode::NotAnEndomorphism);
}

#[test]
fn thirds_are_order_three_torsion() {
    let t = input(r#"[{"cm": "zeta6"}]"#, "[[[1, 0]]]", r#"["1/3", "-2/6"]"#);
    let a = parse_input(&t).unwrap();
    assert_eq!(a.generators[0].translation().order(), 3u32.into());
    assert_eq!(a.input.generators[0].translation, vec!["1/3", "2/3"]);
}

#[test]
fn malformed_translations() {
    for bad in [
        r#"["0.5", "0"]"#,
        r#"["1/0", "0"]"#,
        r#"["x", "0"]"#,
        r#"["1/2/3", "0"]"#,
        r#"["", "0"]"#,
    ] {
        let t = input(r#"[{"cm": "zeta4"}]"#, "[[[1, 0]]]", bad);
        let e = parse_input(&t).unwrap_err();
        assert_eq!(e.code, ErrorCode::Translation, "{bad}");
        assert_eq!(e.path, "generators[0].translation[0]");
    }
    let floats = input(r#"[{"cm": "zeta4"}]"#, "[[[1, 0]]]", "[0.5, 0]");
    assert_eq!(code_of(&floats), ErrorCode::Schema);
}

#[test]
fn infinite_order_holonomy() {
    let t = input(
        r#"[{"cm": "generic", "label": "E"}, {"cm": "generic", "label": "E"}]"#,
        "[[[1, 0], [1, 0]], [[0, 0], [1, 0]]]",
        r#"["0", "0", "0", "0"]"#,
    );
    assert_eq!(code_of(&t), ErrorCode::FiniteOrder);
}

#[test]
fn non_invertible_holonomy() {
    let t = input(r#"[{"cm": "zeta4"}]"#, "[[[2, 0]]]", r#"["0", "0"]"#);
    assert_eq!(code_of(&t), ErrorCode::NotAnEndomorphism);
}

#[test]
fn schema_violations_are_located() {
    let e = parse_input(
        "{\"schema_version\": 1,\n \"factors\": [{\"cm\": \"zeta5\"}], \"generators\": []}",
    )
    .unwrap_err();
    assert_eq!(e.code, ErrorCode::Schema);
    assert_eq!(e.path, "factors[0].cm");
    assert_eq!(e.line, Some(2));

    let unknown =
        r#"{"schema_version": 1, "factors": [{"cm": "zeta4"}], "generators": [], "extra": 1}"#;
    assert_eq!(code_of(unknown), ErrorCode::Schema);
    let version = r#"{"schema_version": 2, "factors": [{"cm": "zeta4"}], "generators": []}"#;
    assert_eq!(parse_input(version).unwrap_err().path, "schema_version");
    let shape = input(
        r#"[{"cm": "zeta4"}]"#,
        "[[[1, 0], [0, 0]]]",
        r#"["0", "0"]"#,
    );
    assert_eq!(code_of(&shape), ErrorCode::Schema);
    assert_eq!(
        code_of(r#"{"schema_version": 1, "factors": [], "generators": []}"#),
        ErrorCode::Schema
    );
    assert_eq!(code_of("not json"), ErrorCode::Schema);
}

#[test]
fn error_codes_are_distinct() {
    let codes = [
        ErrorCode::Io,
        ErrorCode::Schema,
        ErrorCode::NotAnEndomorphism,
        ErrorCode::Translation,
        ErrorCode::FiniteOrder,
        ErrorCode::GroupCap,
        ErrorCode::Field,
    ];
    let mut names: Vec<_> = codes.iter().map(|c| c.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    assert_eq!(names.len(), codes.len());
}

#[test]
fn exit_codes() {
    let ex51 = concat!(env!("CARGO_MANIFEST_DIR"), "/../../gallery/ex51.json");
    assert_eq!(exit_of(&["validate", ex51], "").0, 0);

    let (code, msg) = exit_of(&["classify", ex51, "--cap", "2"], "");
    assert_eq!(code, 1);
    assert!(msg.contains("E_GROUP_CAP"));

    let (code, msg) = exit_of(&["classify", ex51, "--field", "10"], "");
    assert_eq!(code, 1);
    assert!(msg.contains("E_FIELD"));

    let (code, msg) = exit_of(&["classify", "/nonexistent/input.json"], "");
    assert_eq!(code, 1);
    assert!(msg.contains("E_IO"));

    assert_eq!(exit_of(&["classify", "-"], "{").0, 1);
    assert_eq!(exit_of(&["frobnicate", ex51], "").0, 1);
    assert_eq!(exit_of(&["--help"], "").0, 0);
}

#[test]
fn too_small_field_is_an_input_error() {
    // Order 5 on E⁴ needs ℚ(ζ₆₀).
    let t = input(
        r#"[{"cm": "generic", "label": "E"}, {"cm": "generic", "label": "E"}, {"cm": "generic", "label": "E"}, {"cm": "generic", "label": "E"}]"#,
        "[[[0,0],[0,0],[0,0],[-1,0]], [[1,0],[0,0],[0,0],[-1,0]], [[0,0],[1,0],[0,0],[-1,0]], [[0,0],[0,0],[1,0],[-1,0]]]",
        r#"["0", "0", "0", "0", "0", "0", "0", "0"]"#,
    );
    let (code, msg) = exit_of(&["reidtai", "-", "--field", "12"], &t);
    assert_eq!(code, 1);
    assert!(msg.contains("E_FIELD"), "{msg}");
    assert_eq!(exit_of(&["reidtai", "-", "--field", "60"], &t).0, 0);
}

#[test]
fn certificate_failures_exit_with_two() {
    let e = CliError::from(fqav_core::Error::Certificate("normality".into()));
    assert_eq!(e.exit_code(), 2);
    let e = CliError::from(fqav_core::Error::GroupOrderExceedsCap(3));
    assert_eq!(e.exit_code(), 1);
}
