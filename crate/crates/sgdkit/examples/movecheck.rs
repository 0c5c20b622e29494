use sgdkit::diagram::{moves::find, parse_pd};
use sgdkit::yamada::{canonicalize, yamada, Mode};

fn main() {
    let theta = parse_pd("V1[a,b,c] V2[c,b,a]").unwrap();
    let k4 = parse_pd("V1[a,b,c] V2[a,f,d] V3[b,d,e] V4[c,e,f]").unwrap();
    for (name, base) in [("theta", &theta), ("k4", &k4)] {
        let r0 = yamada(base);
        println!("== {name}: {r0}");
        let mut checks = vec![];
        checks.extend(find::r2_inserts(base, 8).into_iter().map(|m| ("R2", m)));
        checks.extend(find::r4_inserts(base, 8).into_iter().map(|m| ("R4", m)));
        checks.extend(find::r5_inserts(base, 8).into_iter().map(|m| ("R5", m)));
        for (kind, m) in checks {
            let d2 = base.apply_move(&m, Mode::Ribbon).unwrap();
            let r = yamada(&d2);
            let exact = r == r0;
            let upto = canonicalize(&r, Mode::Pliable) == canonicalize(&r0, Mode::Pliable);
            if !exact {
                println!("  {kind} NOT EXACT (up-to-monomial: {upto}): {m:?} -> {r}");
            }
        }
        // R1 and R6 factors
        for m in find::r1_inserts(base).into_iter().take(4) {
            let r = yamada(&base.apply_move(&m, Mode::Pliable).unwrap());
            println!("  R1 {m:?}: ratio-check vs A^2/A^-2: {}", r);
        }
        for m in find::r6_inserts(base).into_iter().take(4) {
            let r = yamada(&base.apply_move(&m, Mode::Pliable).unwrap());
            println!("  R6 {m:?} -> {}", r);
        }
        println!("  all R2/R4/R5 exact unless noted");
    }
}
