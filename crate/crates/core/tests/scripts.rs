//! The bundled derivation documents in `examples/` are the serialized
//! form of the derivations built in code. Set `CCTT_BLESS=1` to rewrite
//! them after changing a derivation.

use std::path::PathBuf;

use cctt::prooftheory::{check_script, scripts, Document};
use cctt::registry::{default_registry, default_word_size};
use cctt::semantics::TestBudget;

fn path(id: &str) -> PathBuf {
    let file = match id {
        "fib-verified" => "fib",
        other => other,
    };
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(format!("{file}.deriv.json"))
}

#[test]
fn bundled_documents_match_the_builders() {
    let bless = std::env::var_os("CCTT_BLESS").is_some();
    for (id, doc) in scripts::bundled(&default_word_size()) {
        let text = doc.to_json() + "\n";
        let p = path(id);
        if bless {
            std::fs::write(&p, &text).unwrap();
        }
        let on_disk = std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
        assert!(on_disk == text, "{} is stale; rerun with CCTT_BLESS=1", p.display());
        assert_eq!(Document::from_json(&on_disk).unwrap(), doc, "{id} does not round-trip");
    }
}

#[test]
fn bundled_documents_check_from_disk() {
    for (id, _) in scripts::bundled(&default_word_size()) {
        let rep = check_script(&path(id), &default_registry(), &TestBudget::default()).unwrap();
        assert!(rep.verdict.is_holds(), "{id}: {:?}", rep.report.first());
    }
}
