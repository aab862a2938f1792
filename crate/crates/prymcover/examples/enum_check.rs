//! Scratch driver used while calibrating the enumeration against known
//! cover families.

use std::collections::BTreeMap;

use prymcover::covers::{genus, CoverType, RamPoint, RamificationStructure};
use prymcover::enumerate::{enumerate, EnumerationConfig, Strategy};
use prymcover::perm::PermGroup;
use prymcover::prym::{find_prym_complements, AnalysisOptions};

fn yp(parts: &[(u32, u32)]) -> Option<RamPoint> {
    Some(RamPoint(parts.to_vec()))
}

fn summarize(name: &str, case: &CoverType, cfg: &EnumerationConfig) {
    let t0 = std::time::Instant::now();
    let out = enumerate(case, cfg).unwrap();
    let mut families: BTreeMap<(usize, u32), usize> = BTreeMap::new();
    let mut details: BTreeMap<(usize, u32, bool, Vec<u32>, Vec<usize>, String), usize> =
        BTreeMap::new();
    for q in &out {
        let trivial = PermGroup::trivial(q.sigma.degree);
        let g_z = genus(&q.sigma, &q.group, &trivial).unwrap();
        *families.entry((q.group.order(), g_z)).or_insert(0) += 1;
        let report = find_prym_complements(q, Some(case), AnalysisOptions::default()).unwrap();
        *details
            .entry((
                q.group.order(),
                g_z,
                report.x_hyperelliptic,
                report.family_dims.clone(),
                report.family_degrees.clone(),
                format!("{:?}", report.verdict),
            ))
            .or_insert(0) += 1;
    }
    println!(
        "{name}: {} quadruples in {:?}; families {:?}",
        out.len(),
        t0.elapsed(),
        families
    );
    for ((order, g_z, hyp, dims, degs, verdict), count) in details {
        println!(
            "  (|G|,g_Z)=({order},{g_z}) hyp={hyp} dims={dims:?} deg={degs:?} {verdict}: {count}"
        );
    }
}

fn main() {
    let cfg = EnumerationConfig::default();
    let ram22 = RamPoint(vec![(2, 2)]);

    // rr-spec: degree 4, six (2,2) points, the last two with trivial Y-fiber
    let rr_spec = CoverType {
        g_x: 3,
        g_y: 1,
        d_x: 2,
        d_y: 2,
        ramification: RamificationStructure::new(vec![ram22.clone(); 6]),
        y_ramification: Some(vec![
            yp(&[(2, 1)]),
            yp(&[(2, 1)]),
            yp(&[(2, 1)]),
            yp(&[(2, 1)]),
            yp(&[(1, 2)]),
            yp(&[(1, 2)]),
        ]),
    };
    summarize("rr-spec", &rr_spec, &cfg);

    // rr-gen: degree 4: four (2,2) at Y-branch, two (2,1,1), one merged (2,2)
    let ram211 = RamPoint(vec![(1, 2), (2, 1)]);
    let rr_gen = CoverType {
        g_x: 3,
        g_y: 1,
        d_x: 2,
        d_y: 2,
        ramification: RamificationStructure::new(vec![
            ram22.clone(),
            ram22.clone(),
            ram22.clone(),
            ram22.clone(),
            ram211.clone(),
            ram211.clone(),
            ram22.clone(),
        ]),
        y_ramification: Some(vec![
            yp(&[(2, 1)]),
            yp(&[(2, 1)]),
            yp(&[(2, 1)]),
            yp(&[(2, 1)]),
            yp(&[(1, 2)]),
            yp(&[(1, 2)]),
            yp(&[(1, 2)]),
        ]),
    };
    summarize("rr-gen", &rr_gen, &cfg);

    // g2-3: degree 6, four (2,2,2), one merged (2,2,1,1)
    let ram23 = RamPoint(vec![(2, 3)]);
    let g2_3 = CoverType {
        g_x: 2,
        g_y: 1,
        d_x: 3,
        d_y: 2,
        ramification: RamificationStructure::new(vec![
            ram23.clone(),
            ram23.clone(),
            ram23.clone(),
            ram23.clone(),
            RamPoint(vec![(2, 2), (1, 2)]),
        ]),
        y_ramification: Some(vec![
            yp(&[(2, 1)]),
            yp(&[(2, 1)]),
            yp(&[(2, 1)]),
            yp(&[(2, 1)]),
            yp(&[(1, 2)]),
        ]),
    };
    summarize("g2-3", &g2_3, &cfg);

    // total-3: degree 6, merged total point first, then four (2,2,2)
    let total_3 = CoverType {
        g_x: 3,
        g_y: 1,
        d_x: 3,
        d_y: 2,
        ramification: RamificationStructure::new(vec![
            RamPoint(vec![(3, 2)]),
            ram23.clone(),
            ram23.clone(),
            ram23.clone(),
            ram23.clone(),
        ]),
        y_ramification: Some(vec![
            yp(&[(1, 2)]),
            yp(&[(2, 1)]),
            yp(&[(2, 1)]),
            yp(&[(2, 1)]),
            yp(&[(2, 1)]),
        ]),
    };
    summarize("total-3", &total_3, &cfg);

    // strategy agreement check on g2-2
    let g2_2 = CoverType {
        g_x: 2,
        g_y: 1,
        d_x: 2,
        d_y: 2,
        ramification: RamificationStructure::new(vec![ram22.clone(); 5]),
        y_ramification: Some(vec![
            yp(&[(2, 1)]),
            yp(&[(2, 1)]),
            yp(&[(2, 1)]),
            yp(&[(2, 1)]),
            yp(&[(1, 2)]),
        ]),
    };
    let mut tf = cfg.clone();
    tf.strategy = Some(Strategy::TupleFirst);
    summarize("g2-2 group-first", &g2_2, &cfg);
    summarize("g2-2 tuple-first", &g2_2, &tf);
}
