//! Byte-stable golden files. Set `LIARLAB_BLESS=1` to regenerate.

use std::fmt::Write;
use std::path::PathBuf;

use liarlab_core::presburger::{enumerate_formulas, even_representer, serialize, Presburger};

const COUNT: usize = 1000;

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn check(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("LIARLAB_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    if expected != actual {
        let line = expected
            .lines()
            .zip(actual.lines())
            .position(|(a, b)| a != b)
            .map_or_else(|| "length".to_string(), |i| format!("line {}", i + 1));
        panic!("{name} differs from the golden file at {line}");
    }
}

fn enumeration_text() -> String {
    enumerate_formulas(COUNT).iter().fold(String::new(), |mut out, f| {
        writeln!(out, "{}", serialize(f)).unwrap();
        out
    })
}

fn naming_text() -> String {
    let p = Presburger::new();
    p.assignments(COUNT).unwrap().iter().fold(String::new(), |mut out, a| {
        writeln!(out, "{} {} {}", a.index, a.name, a.parity().as_str()).unwrap();
        out
    })
}

#[test]
fn enumeration_golden() {
    let text = enumeration_text();
    assert_eq!(text, enumeration_text());
    check("enumeration.txt", &text);
    assert_eq!(text.lines().next(), Some("0 = 0"));
}

#[test]
fn naming_golden() {
    let text = naming_text();
    assert_eq!(text, naming_text());
    check("naming.txt", &text);
    assert_eq!(text.lines().next(), Some("0 0 even"));
}

#[test]
fn even_representer_position() {
    let fs = enumerate_formulas(1300);
    let index = fs.iter().position(|f| *f == even_representer()).expect("within the size-6 block");
    let p = Presburger::new();
    let name = p.assignment(index).unwrap().name;
    println!("E y. y+y = x: index {index}, name {name}");
    assert_eq!((index, name), EVEN_REPRESENTER_AT);
}

const EVEN_REPRESENTER_AT: (usize, u64) = (985, 1431);
