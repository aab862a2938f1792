//! Lattice profiling scratch.
use prymcover::perm::{PermGroup, SubgroupMode};

fn main() {
    let s6 = PermGroup::symmetric(6);
    let phases = std::env::args().nth(1).unwrap_or_default();
    if phases == "all" {
        let t0 = std::time::Instant::now();
        let all = s6.subgroups(SubgroupMode::All);
        println!("S6: {} subgroups in {:?}", all.len(), t0.elapsed());
    } else {
        let t1 = std::time::Instant::now();
        let reps = s6.subgroups(SubgroupMode::UpToConjugacy);
        println!("S6: {} classes in {:?}", reps.len(), t1.elapsed());
    }
}
