use sgdkit::enumerate::{pipeline, Generator, PipelineOptions, SystemArchitecture, EnumOptions};
use sgdkit::laurent::LaurentPoly;
use sgdkit::yamada::{canonicalize, Mode};
use std::time::Instant;

fn main() {
    // Four trivalent components: a 4-cycle 1-3-2-4 with the 1-2 and 3-4
    // connections doubled.
    let arch = SystemArchitecture::from_json(
        r#"{"model":"pliable","nodes":[
            {"id":"1","ports":["a","b","c"]},{"id":"2","ports":["a","b","c"]},
            {"id":"3","ports":["a","b","c"]},{"id":"4","ports":["a","b","c"]}],
            "edges":[
            {"id":"p1","from":["1","a"],"to":["2","a"]},
            {"id":"p2","from":["1","b"],"to":["2","b"]},
            {"id":"q1","from":["3","a"],"to":["4","a"]},
            {"id":"q2","from":["3","b"],"to":["4","b"]},
            {"id":"s1","from":["1","c"],"to":["3","c"]},
            {"id":"s2","from":["2","c"],"to":["4","c"]}]}"#,
    ).unwrap();
    let k_max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let table1: Vec<(usize, LaurentPoly)> = vec![
        (1, "A^-3 + A^-2 + 3*A^-1 + 2 + 3*A + A^2 + A^3".parse().unwrap()),
        (2, "A^-4 + A^-3 + A^-2 + 2*A^-2 + 2*A + 2*A^3 + A^4 + A^5 + A^6".parse().unwrap()),
        (3, "A^-7 + A^-6 + 3*A^-5 + 3*A^-4 + 4*A^-3 + 3*A^-2 + 3*A^-1 - 3*A^2 - 2*A^3 - 2*A^4 - A^5 + A^6 + A^8".parse().unwrap()),
        (4, "A^-7 + A^-6 + A^-5 + 2*A^-4 + 2*A^-3 + A^-2 + 3*A^-1 + 2*A - A^2 - A^5 + A^6".parse().unwrap()),
    ];
    let t0 = Instant::now();
    let opts = PipelineOptions { k_max, generator: Generator::Exhaustive, enum_opts: EnumOptions::default(), limit_diagrams: None };
    let (report, stats) = pipeline(&arch, &opts).unwrap();
    eprintln!("total {:?} (gen {:?}, cls {:?})", t0.elapsed(), stats.generation, stats.classification);
    eprintln!("shadows per k: {:?}  diagrams {}", stats.shadows_per_k, report.totals.diagrams);
    for c in &report.classes {
        println!("class {} (min_k={}, members={}): {}", c.id, c.min_crossings, c.member_count, c.polynomial);
    }
    for (row, p) in &table1 {
        let canon = canonicalize(p, Mode::Pliable).to_string();
        let hit = report.classes.iter().find(|c| c.polynomial == canon);
        println!("Table1 row {row}: {}", match hit { Some(c) => format!("FOUND as class {} (min_k {})", c.id, c.min_crossings), None => format!("MISSING (canonical: {canon})") });
    }
}
