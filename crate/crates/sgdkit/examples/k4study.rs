use sgdkit::enumerate::{pipeline, Generator, PipelineOptions, SystemArchitecture, EnumOptions};
use std::time::Instant;

fn main() {
    let arch = SystemArchitecture::from_json(
        r#"{"model":"pliable","nodes":[
            {"id":"1","ports":["a","b","c"]},{"id":"2","ports":["a","b","c"]},
            {"id":"3","ports":["a","b","c"]},{"id":"4","ports":["a","b","c"]}],
            "edges":[
            {"id":"e12","from":["1","a"],"to":["2","a"]},
            {"id":"e13","from":["1","b"],"to":["3","a"]},
            {"id":"e14","from":["1","c"],"to":["4","a"]},
            {"id":"e23","from":["2","b"],"to":["3","b"]},
            {"id":"e24","from":["2","c"],"to":["4","b"]},
            {"id":"e34","from":["3","c"],"to":["4","c"]}]}"#,
    ).unwrap();
    let k_max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let t0 = Instant::now();
    let opts = PipelineOptions { k_max, generator: Generator::Exhaustive, enum_opts: EnumOptions::default(), limit_diagrams: None };
    let (report, stats) = pipeline(&arch, &opts).unwrap();
    eprintln!("total {:?} (gen {:?}, res {:?}, cls {:?})", t0.elapsed(), stats.generation, stats.resolution, stats.classification);
    eprintln!("shadows per k: {:?}", stats.shadows_per_k);
    eprintln!("diagrams: {}, classes: {}", report.totals.diagrams, report.totals.classes);
    for c in &report.classes {
        println!("class {} (min_k={}, members={}): {}", c.id, c.min_crossings, c.member_count, c.polynomial);
    }
}
