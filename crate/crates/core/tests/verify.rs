use polymoment::verify::{run, run_roundtrip, Suite};

#[test]
fn suite_names_round_trip() {
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
    }
    assert!("nope".parse::<Suite>().is_err());
}

#[test]
fn brion_suite() {
    let r = run(Suite::Brion, 1).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.cases, 5 + 100 + 10 + 1);
}

#[test]
fn detfactor_suite() {
    let r = run(Suite::Detfactor, 3).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn roundtrip_suite() {
    let r = run(Suite::Roundtrip, 7).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.cases, 200);
    assert_eq!(run_roundtrip(7, 12).unwrap().cases, 12);
}

#[test]
fn rebase_suite() {
    let r = run(Suite::Rebase, 5).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn density_suite() {
    let r = run(Suite::DensityOp, 9).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.cases, 75);
}

#[test]
fn reports_are_deterministic() {
    assert_eq!(
        run(Suite::Rebase, 2).unwrap(),
        run(Suite::Rebase, 2).unwrap()
    );
}
