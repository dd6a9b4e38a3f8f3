use freelie::{parse, LiePoly};
use freelie_cli::{read_generator_file, run, EXIT_COUNTEREXAMPLE, EXIT_ERROR, EXIT_OK};
use proptest::prelude::*;

struct Run {
    status: i32,
    out: String,
    err: String,
}

fn freelie(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("freelie").chain(args.iter().copied());
    let status = run(argv, &mut out, &mut err);
    Run {
        status,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.push("--json");
    let r = freelie(&a);
    assert_eq!(r.status, EXIT_OK, "{}", r.err);
    serde_json::from_str(&r.out).unwrap()
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(freelie(&["--help"]).status, EXIT_OK);
    assert_eq!(freelie(&["--version"]).status, EXIT_OK);
    assert!(freelie(&["--help"]).out.contains("conjecture"));
}

#[test]
fn usage_and_parse_errors_exit_with_one() {
    assert_eq!(freelie(&[]).status, EXIT_OK);
    assert_eq!(freelie(&["frobnicate"]).status, EXIT_ERROR);
    assert_eq!(freelie(&["hall"]).status, EXIT_ERROR);
    assert_eq!(
        freelie(&["hall", "--degree", "3", "--multidegree", "1,2"]).status,
        EXIT_ERROR
    );
    let r = freelie(&["normalize", "[y,x"]);
    assert_eq!(r.status, EXIT_ERROR);
    assert!(r.err.starts_with("error:"));
    assert_eq!(freelie(&["normalize", "[y,z]"]).status, EXIT_ERROR);
    assert_eq!(
        freelie(&["pseudodet", "--a", "[x,y]", "--b", "x"]).status,
        EXIT_ERROR
    );
    assert_eq!(
        freelie(&["conjecture", "--shape", "square"]).status,
        EXIT_ERROR
    );
    assert_eq!(freelie(&["analyze-monomial", "[y,x,y]"]).status, EXIT_ERROR);
}

#[test]
fn normalize_prints_hall_form() {
    let r = freelie(&["normalize", "[x,y]"]);
    assert_eq!(r.out, "-[y,x]\n");
    let r = freelie(&["normalize", "[y,x,y] + [x,[y,x]]"]);
    assert_eq!(r.out, "-[y,x,x] + [y,x,y]\n");
    assert_eq!(freelie(&["normalize", "[x,x]"]).out, "0\n");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_polynomials_survive_the_command_line(
        words in proptest::collection::vec((1u32..=6, any::<prop::sample::Index>(), -4i64..=4), 1..5),
    ) {
        let mut p = LiePoly::zero();
        for (d, idx, c) in words {
            let basis = freelie::hall_basis(d).unwrap();
            p.add_term(idx.get(&basis).clone(), freelie::poly::scalar(c));
        }
        let text = p.to_string();
        let r = freelie(&["normalize", &text]);
        prop_assert_eq!(r.status, EXIT_OK);
        prop_assert_eq!(r.out.trim_end(), text.as_str());
        let v = json(&["normalize", &text]);
        let back: LiePoly = serde_json::from_value(v["value"]["terms"].clone()).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn delta_and_nilpotency() {
    assert_eq!(freelie(&["delta", "[y,x,y]"]).out, "[y,x,x]\n");
    assert_eq!(
        freelie(&["delta", "[y,x,y,y]", "--power", "2"]).out,
        "2*[y,x,x,x]\n"
    );
    assert_eq!(freelie(&["nilindex", "[y,x,y,y]"]).out, "3\n");
    assert_eq!(json(&["nilindex", "y"])["index"], 2);
}

#[test]
fn hall_listing() {
    let r = freelie(&["hall", "--degree", "4"]);
    assert_eq!(r.out, "[y,x,x,x]\n[y,x,x,y]\n[y,x,y,y]\n");
    let v = json(&["hall", "--multidegree", "2,3"]);
    assert_eq!(v["count"], 2);
    assert_eq!(json(&["hall", "--degree", "10"])["count"], 99);
}

#[test]
fn constants_of_one_bidegree() {
    let v = json(&["constants", "--multidegree", "3,3"]);
    assert_eq!(v["deg_x"], 3);
    assert_eq!(v["deg_y"], 3);
    assert_eq!(v["dim"], 1);
    let f: LiePoly = serde_json::from_value(v["basis"][0].clone()).unwrap();
    assert!(f.ratio_to(&parse("[[y,x,y],[y,x,x]]").unwrap()).is_some());
    let r = freelie(&["constants", "--multidegree", "(4, 3)"]);
    assert!(r.out.starts_with("(4,3): dim 2\n"));
}

#[test]
fn constants_table_is_ordered_by_degree() {
    let v = json(&["constants", "--max-degree", "4"]);
    let order: Vec<(u64, u64)> = v["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["deg_x"].as_u64().unwrap(), c["deg_y"].as_u64().unwrap()))
        .collect();
    let mut sorted = order.clone();
    sorted.sort_by_key(|&(a, b)| (a + b, a));
    assert_eq!(order, sorted);
}

#[test]
fn pseudodeterminant_commands() {
    let r = freelie(&[
        "pseudodet",
        "--a",
        "[y,x,y]",
        "--b",
        "[y,x,y]",
        "--m",
        "1",
        "--k",
        "0",
    ]);
    assert_eq!(r.out, "U^(1,0)_{[y,x,y], [y,x,y]} = -2*[y,x,y,[y,x,x]]\n");
    let v = json(&[
        "pseudodet",
        "--a",
        "y",
        "--b",
        "[y,x,y]",
        "--m",
        "0",
        "--k",
        "1",
    ]);
    assert_eq!(v["negated"], true);
    assert_eq!(v["A"], serde_json::json!([["y", "x"], "y"]));
    assert_eq!((v["m"].as_u64(), v["k"].as_u64()), (Some(1), Some(0)));
    let v = json(&["pseudodet", "--enumerate", "--max-degree", "6"]);
    for u in v.as_array().unwrap() {
        let value: LiePoly = serde_json::from_value(u["value"].clone()).unwrap();
        assert!(freelie::delta(&value).is_zero());
    }
    let v = json(&[
        "pseudodet",
        "--enumerate",
        "--max-degree",
        "6",
        "--shape",
        "k0-only",
    ]);
    assert!(v.as_array().unwrap().iter().all(|u| u["k"] == 0));
}

#[test]
fn decomposition_command_checks_itself() {
    let v = json(&["decompose", "[y,x,y] + 2*[y,x,x]", "--k", "1"]);
    assert_eq!(v["equal"], true);
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    assert_eq!(freelie(&["decompose", "0"]).status, EXIT_ERROR);
}

#[test]
fn monomial_analysis() {
    let v = json(&["analyze-monomial", "[[y,x,y],[y,x,x]]"]);
    assert_eq!(v["class"]["kind"], "one-factor-constant");
    assert_eq!(v["class"]["coeff"], "-1/2");
    let v = json(&["analyze-monomial", "--scan", "--max-degree", "8"]);
    assert_eq!(v["count"], 18);
    assert_eq!(v["summary"]["neither-constant"], 0);
}

#[test]
fn subalgebra_from_a_file_and_from_flags() {
    let dir = std::env::temp_dir().join(format!("freelie-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gens.txt");
    std::fs::write(&path, "# generators\nx\n\n[y,x]   # second\n").unwrap();
    let path = path.to_str().unwrap();
    let from_file = json(&[
        "subalgebra",
        "--generators",
        path,
        "--max-degree",
        "7",
        "--check",
    ]);
    let from_flags = json(&[
        "subalgebra",
        "--gen",
        "x",
        "--gen",
        "[y,x]",
        "--max-degree",
        "7",
        "--check",
    ]);
    assert_eq!(from_file, from_flags);
    assert_eq!(from_file["containment"]["contained"], false);
    let r = freelie(&[
        "subalgebra",
        "--generators",
        path,
        "--max-degree",
        "7",
        "--check",
    ]);
    assert!(r.out.contains("NOT contained"));
    std::fs::remove_dir_all(&dir).unwrap();

    let v = json(&[
        "subalgebra",
        "--gen",
        "x",
        "--gen",
        "[y,x]",
        "--gen",
        "[[y,x,y],[y,x,x]]",
        "--max-degree",
        "7",
        "--check",
    ]);
    assert_eq!(v["containment"]["contained"], true);
    assert_eq!(
        freelie(&["subalgebra", "--max-degree", "3"]).status,
        EXIT_ERROR
    );
    assert_eq!(
        freelie(&[
            "subalgebra",
            "--generators",
            "/nonexistent/gens",
            "--max-degree",
            "3"
        ])
        .status,
        EXIT_ERROR
    );
}

#[test]
fn generator_files_report_the_bad_line() {
    let err = read_generator_file("x\n[y,\n").unwrap_err();
    assert!(err.to_string().starts_with("line 2:"));
    assert_eq!(read_generator_file("# only comments\n\n").unwrap(), vec![]);
}

#[test]
fn verify_command_passes() {
    let r = freelie(&["verify-paper"]);
    assert_eq!(r.status, EXIT_OK, "{}", r.out);
    assert!(r.out.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn conjecture_exit_codes() {
    let r = freelie(&["conjecture", "--max-degree", "7"]);
    assert_eq!(r.status, EXIT_OK);
    assert!(r
        .out
        .contains("verdict: all constants lie in the generated subalgebra"));
    let r = freelie(&["conjecture", "--max-degree", "10"]);
    assert_eq!(r.status, EXIT_COUNTEREXAMPLE);
    assert!(r.out.contains("outside:"));
    assert!(r.out.contains("does not by itself refute"));
    let v: serde_json::Value =
        serde_json::from_str(&freelie(&["conjecture", "--max-degree", "10", "--json"]).out)
            .unwrap();
    let failing: Vec<_> = v["report"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["contained"] == false)
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|e| e["counterexample"].is_array()));
}

#[test]
fn dimension_listing() {
    let v = json(&["dims", "--max-degree", "7"]);
    for row in v["components"].as_array().unwrap() {
        assert_eq!(row["hall"], row["witt"]);
    }
    let r = freelie(&["dims", "--max-degree", "5", "--no-kernel"]);
    assert!(r.out.lines().skip(1).all(|l| l.trim_end().ends_with('-')));
}
