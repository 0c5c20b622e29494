use sgdkit::diagram::{emit_pd, parse_pd, Smoothing};
use sgdkit::laurent::LaurentPoly;
use sgdkit::yamada::YamadaCtx;

fn main() {
    let e3: LaurentPoly = "A^4 + A^3 + A^2 + A - A^-2 - A^-3 - A^-4 - A^-5".parse().unwrap();
    let e4pd = "V1[1,2,3]\nV2[1,4,5]\nX1[3,6,7,8]\nX2[9,4,8,7]\nX3[5,9,6,2]";
    let e4 = parse_pd(e4pd).unwrap();
    let mut ctx = YamadaCtx::new();
    for c in ["1", "2", "3"] {
        for (kind, label) in [(Smoothing::Plus, "plus"), (Smoothing::Minus, "minus")] {
            let s = e4.smooth(c, kind).unwrap();
            let y = ctx.yamada(&s);
            let tag = if y == e3 { "  <-- EXAMPLE 3" } else { "" };
            println!("smooth X{c} {label}: {y}{tag}");
            if y == e3 {
                println!("{}", emit_pd(&s));
                println!("graph: verts={} edges={}", s.abstract_graph().vertex_count(), s.abstract_graph().edge_count());
            }
        }
    }
}
