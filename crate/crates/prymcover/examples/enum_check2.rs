//! Second calibration driver: the larger families.
use std::collections::BTreeMap;

use prymcover::covers::{genus, CoverType, RamPoint, RamificationStructure};
use prymcover::enumerate::{enumerate, sample_quadruples, EnumerationConfig, SampleConfig};
use prymcover::perm::PermGroup;
use prymcover::prym::{find_prym_complements, AnalysisOptions};

fn yp(parts: &[(u32, u32)]) -> Option<RamPoint> {
    Some(RamPoint(parts.to_vec()))
}

fn summarize(name: &str, case: &CoverType, cfg: &EnumerationConfig) {
    let t0 = std::time::Instant::now();
    let out = if cfg.sample.is_some() {
        let (q, outcome) = sample_quadruples(case, cfg).unwrap();
        println!("{name}: sampling outcome {:?}", outcome);
        q
    } else {
        enumerate(case, cfg).unwrap()
    };
    let enum_time = t0.elapsed();
    let mut details: BTreeMap<(usize, u32, bool, Vec<u32>, Vec<usize>, String), usize> =
        BTreeMap::new();
    for q in &out {
        let trivial = PermGroup::trivial(q.sigma.degree);
        let g_z = genus(&q.sigma, &q.group, &trivial).unwrap();
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
        "{name}: {} quadruples; enum {:?}, total {:?}",
        out.len(),
        enum_time,
        t0.elapsed()
    );
    for ((order, g_z, hyp, dims, degs, verdict), count) in details {
        println!(
            "  (|G|,g_Z)=({order},{g_z}) hyp={hyp} dims={dims:?} deg={degs:?} {verdict}: {count}"
        );
    }
}

fn main() {
    let which = std::env::args().nth(1).unwrap_or_default();
    let mut cfg = EnumerationConfig::default();
    if std::env::args().nth(2).as_deref() == Some("max") { cfg.require_maximal_hx_in_hy = true; }

    if which == "etale3" || which.is_empty() {
        let ram23 = RamPoint(vec![(2, 3)]);
        let etale_3 = CoverType {
            g_x: 4, g_y: 2, d_x: 3, d_y: 2,
            ramification: RamificationStructure::new(vec![ram23.clone(); 6]),
            y_ramification: Some(vec![yp(&[(2, 1)]); 6]),
        };
        summarize("etale-3", &etale_3, &cfg);
    }

    if which == "g2-4" || which.is_empty() {
        let ram24 = RamPoint(vec![(2, 4)]);
        let g2_4 = CoverType {
            g_x: 2, g_y: 1, d_x: 4, d_y: 2,
            ramification: RamificationStructure::new(vec![
                ram24.clone(), ram24.clone(), ram24.clone(), ram24.clone(),
                RamPoint(vec![(2, 2), (1, 4)]),
            ]),
            y_ramification: Some(vec![
                yp(&[(2, 1)]), yp(&[(2, 1)]), yp(&[(2, 1)]), yp(&[(2, 1)]), yp(&[(1, 2)]),
            ]),
        };
        summarize("g2-4", &g2_4, &cfg);
    }

    if which == "total4" || which.is_empty() {
        let ram24 = RamPoint(vec![(2, 4)]);
        let total_4 = CoverType {
            g_x: 4, g_y: 1, d_x: 4, d_y: 2,
            ramification: RamificationStructure::new(vec![
                RamPoint(vec![(4, 2)]),
                ram24.clone(), ram24.clone(), ram24.clone(), ram24.clone(),
            ]),
            y_ramification: Some(vec![
                yp(&[(1, 2)]),
                yp(&[(2, 1)]), yp(&[(2, 1)]), yp(&[(2, 1)]), yp(&[(2, 1)]),
            ]),
        };
        summarize("total-4", &total_4, &cfg);
    }

    if which == "3131" || which.is_empty() {
        let ram24 = RamPoint(vec![(2, 4)]);
        let c3131 = CoverType {
            g_x: 3, g_y: 1, d_x: 4, d_y: 2,
            ramification: RamificationStructure::new(vec![
                ram24.clone(), ram24.clone(), ram24.clone(), ram24.clone(),
                RamPoint(vec![(3, 2), (1, 2)]),
            ]),
            y_ramification: Some(vec![
                yp(&[(2, 1)]), yp(&[(2, 1)]), yp(&[(2, 1)]), yp(&[(2, 1)]), yp(&[(1, 2)]),
            ]),
        };
        summarize("3131", &c3131, &cfg);
    }

    if which == "3orig" || which.is_empty() {
        // degree 6, ten (2,2,1,1) points, trigonal middle cover
        let rambruin = RamPoint(vec![(2, 2), (1, 2)]);
        let orig3 = CoverType {
            g_x: 5, g_y: 3, d_x: 2, d_y: 3,
            ramification: RamificationStructure::new(vec![rambruin.clone(); 10]),
            y_ramification: Some(vec![yp(&[(2, 1), (1, 1)]); 10]),
        };
        let mut scfg = cfg.clone();
        scfg.sample = Some(SampleConfig { count: 4000, seed: 42, acceptance_floor: 0.002 });
        summarize("3-orig sampled", &orig3, &scfg);
    }
}
