use sgdkit::diagram::{emit_pd, parse_pd, MoveSpec};
use sgdkit::yamada::{yamada, Mode};

fn main() {
    let theta = parse_pd("V1[a,b,c] V2[c,b,a]").unwrap();
    let k4 = parse_pd("V1[a,b,c] V2[a,f,d] V3[b,d,e] V4[c,e,f]").unwrap();
    for (name, base) in [("theta", &theta), ("k4", &k4)] {
        let r0 = yamada(base);
        println!("== {name}: {r0}");
        for slot in 0..3 {
            for (over, ccw) in [(true, true), (true, false), (false, true), (false, false)] {
                let spec = MoveSpec::R5Insert { vertex: "1".into(), slot, over, ccw };
                let d = base.apply_move(&spec, Mode::Ribbon).unwrap();
                let r = yamada(&d);
                println!("  slot{slot} over={over} ccw={ccw}: exact={} planar={} r={r}", r == r0, d.is_planar());
                if name == "theta" && slot == 0 && over && ccw {
                    println!("--- PD ---\n{}\n---", emit_pd(&d));
                }
            }
        }
    }
}
