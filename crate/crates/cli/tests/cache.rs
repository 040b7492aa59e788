use overcubic::qseries::PartitionTable;
use overcubic_cli::{cache, CliError};

#[test]
fn round_trip() {
    let t = PartitionTable::new(250).unwrap();
    let text = cache::encode(&t);
    assert_eq!(cache::decode(&text, "mem").unwrap(), t);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table");
    cache::write(&path, &t).unwrap();
    assert_eq!(cache::read(&path).unwrap(), t);
}

#[test]
fn corruption_is_detected() {
    let text = cache::encode(&PartitionTable::new(40).unwrap());
    let tampered = text.replacen("\n3,", "\n3,1", 1);
    assert_ne!(tampered, text);
    assert!(matches!(cache::decode(&tampered, "mem"), Err(CliError::Cache { .. })));

    let truncated: String = text.lines().filter(|l| !l.starts_with("17,")).map(|l| format!("{l}\n")).collect();
    assert!(cache::decode(&truncated, "mem").is_err());
    assert!(cache::decode("not a table\n", "mem").is_err());
}

#[test]
fn load_or_build_extends_a_short_cache() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table");
    cache::write(&path, &PartitionTable::new(20).unwrap()).unwrap();
    let t = cache::load_or_build(Some(&path), 100).unwrap();
    assert_eq!(t.nmax(), 100);
    assert_eq!(cache::read(&path).unwrap(), t);
    // A covering cache is used as is.
    assert_eq!(cache::load_or_build(Some(&path), 50).unwrap().nmax(), 100);
}
