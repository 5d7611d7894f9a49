// Kept in its own test binary: the override is read from the process
// environment.

use std::fs;

use relcomm::catalog::{builtin_catalog, data_dir, named_group, DATA_DIR_ENV};
use relcomm::group::DEFAULT_ORDER_CAP;
use relcomm::Error;

#[test]
fn environment_overrides_data_directory() {
    let default = data_dir();
    let dir = tempfile::tempdir().unwrap();
    for file in ["T04_01.tbl", "T04_02.tbl"] {
        fs::copy(default.join(file), dir.path().join(file)).unwrap();
    }
    let manifest: String = fs::read_to_string(default.join("MANIFEST"))
        .unwrap()
        .lines()
        .filter(|l| l.contains("T04_"))
        .map(|l| format!("{l}\n"))
        .collect();
    fs::write(dir.path().join("MANIFEST"), manifest).unwrap();

    std::env::set_var(DATA_DIR_ENV, dir.path());
    assert_eq!(data_dir(), dir.path());
    assert_eq!(named_group("T04_02", DEFAULT_ORDER_CAP).unwrap().order(), 4);
    assert!(matches!(
        named_group("T08_01", DEFAULT_ORDER_CAP),
        Err(Error::UnknownGroup(_))
    ));
    let stored: Vec<String> = builtin_catalog(8)
        .unwrap()
        .into_iter()
        .map(|e| e.name)
        .filter(|n| n.starts_with('T'))
        .collect();
    assert_eq!(stored, ["T04_01", "T04_02"]);

    std::env::set_var(DATA_DIR_ENV, dir.path().join("absent"));
    assert!(matches!(builtin_catalog(8), Err(Error::Data(_))));

    std::env::remove_var(DATA_DIR_ENV);
    assert_eq!(data_dir(), default);
}
