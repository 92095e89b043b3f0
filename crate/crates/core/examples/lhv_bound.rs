//! Enumerates the 16 deterministic local strategies and their CHSH values.

use decaybell::bell::{lhv_extremes, ChshConfig, LocalStrategy};

fn main() {
    for s in LocalStrategy::all() {
        println!("alice {:>2?} bob {:>2?}  S = {:+}", s.alice, s.bob, s.chsh());
    }
    let (lo, hi) = lhv_extremes(&ChshConfig::optimal_planar());
    println!("local range: [{lo}, {hi}]");
}
