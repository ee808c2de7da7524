// Write a cloud in every supported format and read it back bit-exactly.

use minisphere::io::{parse_points, write_points, Format};
use minisphere::{generate, CloudKind, GenParams};

pub fn run_example() -> minisphere::Result<()> {
    let cloud = generate(CloudKind::Clustered, 5, 2, &GenParams::default())?;
    for format in [Format::Csv, Format::Xyz, Format::Json] {
        let mut buf = Vec::new();
        write_points(&mut buf, &cloud, format)?;
        let text = String::from_utf8(buf).expect("utf-8");
        println!("--- {format} ---\n{}", text.trim_end());
        assert_eq!(parse_points(&text, format)?, cloud);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> minisphere::Result<()> {
    run_example()
}
