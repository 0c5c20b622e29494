use sgdkit::diagram::{emit_pd, parse_pd};
use sgdkit::enumerate::{enumerate_shadows, resolve, EnumOptions, SystemArchitecture};
use sgdkit::laurent::LaurentPoly;
use sgdkit::yamada::YamadaCtx;

fn main() {
    let arch = SystemArchitecture::from_json(
        r#"{"model":"pliable","nodes":[{"id":"1","ports":["a","b","c"]},{"id":"2","ports":["a","b","c"]}],
            "edges":[{"id":"e1","from":["1","a"],"to":["2","a"]},{"id":"e2","from":["1","b"],"to":["2","b"]},{"id":"e3","from":["1","c"],"to":["2","c"]}]}"#,
    ).unwrap();
    let e3: LaurentPoly = "A^4 + A^3 + A^2 + A - A^-2 - A^-3 - A^-4 - A^-5".parse().unwrap();
    let e4: LaurentPoly = "A^6 - A^2 - 1 - A^-2 - A^-3 - A^-4 - A^-5 - A^-6".parse().unwrap();
    let mut ctx = YamadaCtx::new();
    for k in [2usize, 3] {
        let shadows = enumerate_shadows(&arch, k, EnumOptions::default()).unwrap();
        eprintln!("k={k}: {} shadows", shadows.len());
        let mut found3 = 0;
        let mut found4 = 0;
        for s in &shadows {
            for d in resolve(s) {
                let y = ctx.yamada(&d);
                if y == e3 && found3 < 2 {
                    found3 += 1;
                    println!("== k={k} Example3 match ==\n{}", emit_pd(&d));
                    let roundtrip = parse_pd(&emit_pd(&d)).unwrap();
                    assert_eq!(ctx.yamada(&roundtrip), e3);
                }
                if y == e4 && found4 < 3 {
                    found4 += 1;
                    println!("== k={k} Example4 match ==\n{}", emit_pd(&d));
                }
            }
        }
        eprintln!("k={k}: e3 matches: {found3}, e4 matches: {found4}");
    }
}
