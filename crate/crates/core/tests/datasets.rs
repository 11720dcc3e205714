use egl::datasets::{builtin, load_csv, parse_csv, ColumnSelector, BUILTIN_NAMES};
use egl::Error;
use std::io::Write;

const BLADDER_SHA256: &str = "8ec33585d2fd50a8d489e908e3645dea8f77000f08542fb393ff00782b1ff5f2";
const BANK_SHA256: &str = "0ef5d4722afa53cc152c5cf1faf5040db4612a007c043a5d0a29eb6ae1a73f92";

fn min_max(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

#[test]
fn builtin_counts_and_ranges() {
    let b = builtin("bladder").unwrap();
    assert_eq!(b.len(), 128);
    assert_eq!(min_max(b.values()), (0.08, 79.05));
    let k = builtin("bank").unwrap();
    assert_eq!(k.len(), 100);
    assert_eq!(min_max(k.values()), (0.8, 38.5));
    let mean = k.values().iter().sum::<f64>() / 100.0;
    assert!((1.0 / mean - 0.101).abs() < 0.002, "mean {mean}");
}

#[test]
fn builtin_digests_are_frozen() {
    assert_eq!(builtin("bladder").unwrap().digest(), BLADDER_SHA256);
    assert_eq!(builtin("bank").unwrap().digest(), BANK_SHA256);
    for name in BUILTIN_NAMES {
        assert_eq!(builtin(name).unwrap(), builtin(name).unwrap());
    }
}

#[test]
fn unknown_builtin() {
    assert!(matches!(builtin("iris"), Err(Error::UnknownDataset(_))));
}

#[test]
fn csv_one_value_per_line() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "1.0\n2.5\n").unwrap();
    let d = load_csv(f.path(), &ColumnSelector::default()).unwrap();
    assert_eq!(d.values(), &[1.0, 2.5]);
    assert!(d.source().starts_with("file:"));
}

#[test]
fn csv_negative_value_reports_line() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "-1.0\n2.0\n").unwrap();
    match load_csv(f.path(), &ColumnSelector::default()) {
        Err(Error::InvalidDataAt { line, .. }) => assert_eq!(line, 1),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn csv_named_column_with_header() {
    let text = "id,time\n# comment\n1, 3.5\n2, 0.25\n\n3,7\n";
    let d = parse_csv("t", text, &"time".parse().unwrap()).unwrap();
    assert_eq!(d.values(), &[3.5, 0.25, 7.0]);
    let d = parse_csv("t", "a b\n1 2\n3 4\n", &ColumnSelector::Index(1)).unwrap();
    assert_eq!(d.values(), &[2.0, 4.0]);
}

#[test]
fn csv_errors() {
    assert!(matches!(
        parse_csv("t", "x\n1\nabc\n", &ColumnSelector::default()),
        Err(Error::Parse { line: 3, .. })
    ));
    assert!(matches!(
        parse_csv("t", "1\nNaN\n", &ColumnSelector::default()),
        Err(Error::InvalidDataAt { line: 2, .. })
    ));
    assert!(parse_csv("t", "1\n2\n", &"time".parse().unwrap()).is_err());
    assert!(parse_csv("t", "# nothing\n", &ColumnSelector::default()).is_err());
    assert!(matches!(
        load_csv("/nonexistent/file.csv", &ColumnSelector::default()),
        Err(Error::Io(_))
    ));
}

#[test]
fn exported_builtin_reloads_identically() {
    for name in BUILTIN_NAMES {
        let b = builtin(name).unwrap();
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(b.to_csv().as_bytes()).unwrap();
        let d = load_csv(f.path(), &ColumnSelector::default()).unwrap();
        assert_eq!(d.values(), b.values());
        assert_eq!(d.digest(), b.digest());
    }
}
