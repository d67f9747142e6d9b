// Building a records document, printing it canonically and running the CLI on it.

use clap::Parser;
use twisted_pairing::cli::{run, Cli};
use twisted_pairing::cycles::figure_eight_records;
use twisted_pairing::document::{Document, Payload, RecordsDoc};
use twisted_pairing::Field;

pub fn run_example() -> twisted_pairing::Result<()> {
    let f = Field::prime(7)?;
    let doc = Document::new(Some(f), Payload::Records(RecordsDoc::from_records(&figure_eight_records(f))));
    let text = doc.to_canonical();
    assert_eq!(Document::parse(&text)?, doc);
    let path = std::env::temp_dir().join(format!("figure-eight-{}.json", std::process::id()));
    std::fs::write(&path, &text)?;
    let cli = Cli::try_parse_from(["twisted-pairing", "bullet", path.to_str().expect("utf-8 path")])
        .map_err(|e| twisted_pairing::Error::Parse(e.to_string()))?;
    let report = run(&cli);
    std::fs::remove_file(&path)?;
    print!("{}", report.text);
    assert_eq!(report.exit, 0);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
