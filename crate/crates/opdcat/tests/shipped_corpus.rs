//! The corpus directory shipped at the repository root must be exactly
//! what the default seed regenerates, so readers can trust that editing
//! the generator and re-rendering never silently drifts from the data
//! the tests run against.

use std::path::Path;

#[test]
fn shipped_corpus_matches_default_seed() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let rendered = opdcat::corpus::render_corpus(opdcat::corpus::DEFAULT_SEED);
    assert!(!rendered.is_empty());

    let mut expected_files: Vec<String> = rendered.iter().map(|(p, _)| p.clone()).collect();
    expected_files.sort();
    let mut on_disk: Vec<String> = std::fs::read_dir(&dir)
        .expect("corpus directory exists")
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    on_disk.sort();
    assert_eq!(expected_files, on_disk, "corpus file listing drifted");

    for (path, text) in &rendered {
        let shipped = std::fs::read_to_string(dir.join(path))
            .unwrap_or_else(|e| panic!("read {path}: {e}"));
        assert_eq!(&shipped, text, "shipped {path} differs from the rendered corpus");
    }
}

#[test]
fn shipped_corpus_documents_all_validate() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let manifest: opdcat::corpus::Manifest = serde_json::from_str(
        &std::fs::read_to_string(dir.join("manifest.json")).expect("manifest exists"),
    )
    .expect("manifest parses");
    assert_eq!(manifest.seed, opdcat::corpus::DEFAULT_SEED);
    assert!(manifest.documents.len() >= 60);

    for entry in &manifest.documents {
        let text = std::fs::read_to_string(dir.join(&entry.path))
            .unwrap_or_else(|e| panic!("read {}: {e}", entry.path));
        let doc = opdcat::corpus::Document::parse(&text)
            .unwrap_or_else(|e| panic!("parse {}: {e}", entry.path));
        assert_eq!(doc.name(), entry.name);
        assert_eq!(doc.kind(), entry.kind);
        let findings = opdcat::corpus::validate_document(&doc);
        assert!(findings.is_empty(), "{}: {findings:?}", entry.name);
    }
}
