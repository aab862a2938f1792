//! Debugging probe for the trigonal sampling case.
use prymcover::covers::{RamPoint, RamificationStructure, CoverType};
use prymcover::perm::{PermGroup, SubgroupMode};

fn main() {
    let s6 = PermGroup::symmetric(6);
    let wanted = RamPoint(vec![(1, 2), (2, 2)]);
    for h in s6.subgroups(SubgroupMode::UpToConjugacy) {
        let g = h.group;
        if !g.is_transitive() || g.order() != 24 {
            continue;
        }
        println!("order 24 transitive: classes:");
        for (i, c) in g.conjugacy_classes().iter().enumerate() {
            println!("  class {i}: rep {} size {} order {}", c.representative, c.size, c.element_order);
        }
        let h_x = g.stabilizer(1).group;
        println!("H_X order {}", h_x.order());
        for k in g.subgroups_containing(&h_x) {
            if g.order() / k.order() == 3 {
                let action = g.coset_action(&k).unwrap();
                println!("  H_Y: order {} found; types of classes on G/H_Y:", k.order());
                for c in g.conjugacy_classes() {
                    println!("    {} -> {:?}", c.representative, action.act(&c.representative).cycle_type());
                }
            }
        }
        let _ = &wanted;
        // case check
        let case = CoverType {
            g_x: 5, g_y: 3, d_x: 2, d_y: 3,
            ramification: RamificationStructure::new(vec![RamPoint(vec![(2,2),(1,2)]); 10]),
            y_ramification: None,
        };
        println!("case validates: {:?}", case.validate());
    }
}
