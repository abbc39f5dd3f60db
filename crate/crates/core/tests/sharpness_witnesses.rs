use std::cmp::Ordering;
use std::time::Instant;

use num_bigint::BigInt;
use permbinom::sharpness::{sharpness_probe, Expansion};

#[test]
fn p73_witnesses() {
    let start = Instant::now();
    let probe = sharpness_probe(73, 35, 30).unwrap();
    for f in &probe.findings {
        println!("k={} {} m={} d={} 2cos={} gcd_ok={}", f.k, f.source, f.m, f.deviation_decimal, f.two_cos_decimal, f.gcd_ok);
    }
    println!("elapsed {:?}", start.elapsed());

    let high = probe.finding(1217).expect("k = 1217 probed");
    assert_eq!(high.source, Expansion::Turn);
    // d_1217 > 1.999998451823
    let c = BigInt::from(1_999_998_451_823u64);
    let scale = BigInt::from(10).pow(12);
    assert_eq!(high.deviation.scaled(&scale).cmp_int(&c), Ordering::Greater);
    assert!(high.deviation_decimal.starts_with("1.99999845182"));

    let low = probe.finding(1578).expect("k = 1578 probed");
    assert_eq!(low.source, Expansion::HalfTurn);
    // d_1578 < -1.99999906282
    let c = BigInt::from(-199_999_906_282i64);
    let scale = BigInt::from(10).pow(11);
    assert_eq!(low.deviation.scaled(&scale).cmp_int(&c), Ordering::Less);
    assert!(low.deviation_decimal.starts_with("-1.99999906282"));

    assert!(probe.findings.iter().all(|f| f.within_window));
}
