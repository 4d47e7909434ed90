use std::fs;

use periodsets::certify::{certify_incremental_pair, certify_rules, check_bpr_direct, check_bpr_via_fw, check_fpr};
use periodsets::format::{gamma_file_name, read_gamma, render_gamma};
use periodsets::gamma::{
    enumerate_range, gamma_up_to, incremental_gamma_with_dying, project_down, with_jobs, Certifier, GammaSet,
};
use periodsets::oracle::brute_force_gamma;

const DYING: [usize; 12] = [0, 0, 0, 0, 0, 1, 1, 2, 1, 3, 2, 8];

#[test]
fn incremental_matches_oracle_for_every_certifier() {
    let truth: Vec<GammaSet> = (1..=16).map(|n| brute_force_gamma(n, 2, false).unwrap()).collect();
    for c in Certifier::ALL {
        let got = gamma_up_to(16, c);
        assert_eq!(got.len(), 16);
        for (g, t) in got.iter().zip(&truth) {
            assert_eq!(g, t, "certifier {c} n={}", g.n);
        }
    }
}

#[test]
fn dying_counts() {
    let mut g = GammaSet::base();
    let mut counts = vec![0];
    for n in 2..=12 {
        let (next, dying) = incremental_gamma_with_dying(n, &g, Certifier::Pair).unwrap();
        counts.push(dying.len());
        g = next;
    }
    assert_eq!(counts, DYING);
}

#[test]
fn fast_checks_agree_with_direct_ones_on_candidates() {
    let mut g = GammaSet::base();
    for n in 2..=20 {
        for parent in &g.sets {
            let (same, ext) = parent.candidates();
            // the shortcut is only claimed once the forward rule holds
            for cand in [&same, &ext].into_iter().filter(|c| check_fpr(c).is_valid()) {
                assert_eq!(
                    check_bpr_via_fw(cand).is_valid(),
                    check_bpr_direct(cand).is_valid(),
                    "{cand} n={n}"
                );
            }
            let (a, b) = certify_incremental_pair(parent);
            assert_eq!(a.is_valid(), certify_rules(same.periods(), n).is_valid(), "{same} n={n}");
            assert_eq!(b.is_valid(), certify_rules(ext.periods(), n).is_valid(), "{ext} n={n}");
        }
        g = incremental_gamma_with_dying(n, &g, Certifier::Rules).unwrap().0;
    }
}

#[test]
fn structural_invariants() {
    let layers = gamma_up_to(24, Certifier::Pair);
    for w in layers.windows(2) {
        let (prev, cur) = (&w[0], &w[1]);
        // projection recovers every parent except those that die
        let (_, dying) = incremental_gamma_with_dying(cur.n, prev, Certifier::Rules).unwrap();
        let mut back = project_down(cur).unwrap().sets;
        back.extend(dying);
        back.sort();
        assert_eq!(back, prev.sets);
        for set in &cur.sets {
            if !set.contains(cur.n - 1) {
                assert!(prev.contains(&set.at_length(prev.n).unwrap()));
            }
        }
        assert!(cur.sets.windows(2).all(|p| p[0] < p[1]), "order at n={}", cur.n);
        let total: usize = cur.sets.iter().map(|s| s.weight()).sum();
        assert!(total <= cur.n * cur.kappa());
    }
}

#[test]
fn known_counts() {
    let kappa: Vec<usize> = gamma_up_to(30, Certifier::Pair).iter().map(GammaSet::kappa).collect();
    assert_eq!(
        kappa,
        [
            1, 2, 3, 4, 6, 8, 10, 13, 17, 21, 27, 30, 37, 47, 57, 62, 75, 87, 102, 116, 135, 155, 180, 194,
            220, 254, 289, 312, 359, 392
        ]
    );
}

#[test]
fn files_stream_resume_and_match_memory() {
    let dir = tempfile::tempdir().unwrap();
    let mut lines = Vec::new();
    enumerate_range(10, dir.path(), None, Certifier::Pair, |s| lines.push((s.n, s.kappa, s.dying))).unwrap();
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[5], (6, 8, 1));

    let mem = gamma_up_to(14, Certifier::Rules);
    // resume from the files already written and continue to 14
    let mut resumed = Vec::new();
    enumerate_range(14, dir.path(), Some(dir.path()), Certifier::Lothaire, |s| resumed.push(s.n)).unwrap();
    assert_eq!(resumed, [11, 12, 13, 14]);
    for g in &mem {
        let path = dir.path().join(gamma_file_name(g.n));
        assert_eq!(fs::read_to_string(&path).unwrap(), render_gamma(g));
        assert_eq!(&read_gamma(&path).unwrap(), g);
    }
    let leftovers: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| !e.file_name().to_string_lossy().ends_with(".gamma"))
        .collect();
    assert!(leftovers.is_empty());
}

#[test]
fn corrupt_resume_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    enumerate_range(6, dir.path(), None, Certifier::Pair, |_| {}).unwrap();
    let path = dir.path().join(gamma_file_name(6));
    let text = fs::read_to_string(&path).unwrap().replace("count=8", "count=9");
    fs::write(&path, text).unwrap();
    assert!(enumerate_range(8, dir.path(), Some(dir.path()), Certifier::Pair, |_| {}).is_err());
}

#[test]
fn files_are_identical_across_job_counts() {
    let render = |jobs: usize| {
        let dir = tempfile::tempdir().unwrap();
        with_jobs(jobs, || enumerate_range(18, dir.path(), None, Certifier::Pair, |_| {})).unwrap();
        (1..=18)
            .map(|n| fs::read(dir.path().join(gamma_file_name(n))).unwrap())
            .collect::<Vec<_>>()
    };
    let one = render(1);
    assert_eq!(render(2), one);
    assert_eq!(render(0), one);
}
