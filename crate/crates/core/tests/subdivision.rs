mod common;

use common::{brute_bispindle, brute_two_blocks, random_digraph, rng};
use dicolor::subdivision::{
    check_certificate, detect, find_two_blocks_cycle, Detection, PatternSpec, SearchLimits,
};

#[test]
fn two_blocks_detector_matches_enumeration() {
    let mut r = rng(11);
    let mut verdicts = [0usize; 2];
    for trial in 0..200 {
        let n = 4 + trial % 9;
        let d = random_digraph(n, 0.35, &mut r);
        for (k1, k2) in [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)] {
            let spec = PatternSpec::two_blocks(k1, k2).unwrap();
            let got = detect(&d, &spec, SearchLimits::default()).unwrap();
            let expect = brute_two_blocks(&d, k1, k2);
            verdicts[usize::from(expect)] += 1;
            match got {
                Detection::Found(c) => {
                    assert!(expect, "trial {trial} {spec}: spurious certificate");
                    check_certificate(&d, &c, &spec).unwrap();
                }
                Detection::Absent => assert!(!expect, "trial {trial} {spec}: missed"),
                Detection::Unknown => panic!("exact mode never answers unknown"),
            }
        }
    }
    assert!(verdicts[0] > 100 && verdicts[1] > 100, "{verdicts:?}");
}

#[test]
fn bispindle_detector_matches_enumeration() {
    let mut r = rng(12);
    let mut verdicts = [0usize; 2];
    for trial in 0..200 {
        let n = 4 + trial % 6;
        let d = random_digraph(n, 0.45, &mut r);
        for (k1, k2, k3) in [(1, 1, 1), (2, 1, 1), (2, 2, 1), (2, 1, 2), (3, 1, 3), (2, 2, 2), (3, 3, 3)] {
            let spec = PatternSpec::bispindle(k1, k2, k3).unwrap();
            let got = detect(&d, &spec, SearchLimits::default()).unwrap();
            let expect = brute_bispindle(&d, k1, k2, k3);
            verdicts[usize::from(expect)] += 1;
            match got {
                Detection::Found(c) => {
                    assert!(expect, "trial {trial} {spec}: spurious certificate");
                    check_certificate(&d, &c, &spec).unwrap();
                }
                Detection::Absent => assert!(!expect, "trial {trial} {spec}: missed"),
                Detection::Unknown => panic!("exact mode never answers unknown"),
            }
        }
    }
    assert!(verdicts[0] > 100 && verdicts[1] > 100, "{verdicts:?}");
}

#[test]
fn smaller_parameters_keep_the_certificate() {
    let mut r = rng(13);
    for _ in 0..100 {
        let d = random_digraph(9, 0.4, &mut r);
        if let Some(c) = find_two_blocks_cycle(&d, 3, 3).unwrap() {
            for (k1, k2) in [(3, 2), (2, 2), (2, 1), (1, 1)] {
                let spec = PatternSpec::two_blocks(k1, k2).unwrap();
                check_certificate(&d, &c, &spec).unwrap();
                assert!(find_two_blocks_cycle(&d, k1, k2).unwrap().is_some());
            }
        }
    }
}
