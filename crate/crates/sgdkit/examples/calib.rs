use sgdkit::diagram::parse_pd;
use sgdkit::yamada::{yamada, yamada_statesum};

fn main() {
    let theta = parse_pd("V1[a,b,c] V2[c,b,a]").unwrap();
    println!("theta      : {}", yamada(&theta));
    // Twisted theta, both chiralities
    let e2a = parse_pd("V1[1,2,3] V2[3,5,4] X1[4,5,2,1]").unwrap();
    let e2b = parse_pd("V1[1,2,3] V2[3,5,4] X1[1,4,5,2]").unwrap();
    println!("e2 (y-over): {}", yamada(&e2a));
    println!("e2 (x-over): {}", yamada(&e2b));
    println!("statesum a : {}", yamada_statesum(&e2a).unwrap());
    println!("paper e2   : A^3 + A^2 + 2*A + 1 + A^-1");
}
