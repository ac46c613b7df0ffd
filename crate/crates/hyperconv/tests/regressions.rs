use hyperconv::format::{parse_space, FormatError, Space, SpaceDocument};
use hyperconv::generate::{cap_exhaustive, conv_exhaustive, half_grid, random_batch, small_grid};
use hyperconv::oracle::FrameOracle;
use hyperconv_core::cap::level_set;
use hyperconv_core::setcalc::{is_saturated, rdc};
use hyperconv_core::{
    frames, CapSpace, Carrier, CarrierMode, ConvSpace, HyperFilter, HyperSpace, Kernel, SetFamily, Value,
};

fn v(s: &str) -> Value {
    s.parse().unwrap()
}

fn fixture(name: &str) -> Space {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    parse_space(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Counts centered limit tables by brute force over every assignment of a
/// limit set to each nonempty kernel.
fn brute_force_convergences(n: usize) -> usize {
    let kernels = (1u32 << n) - 1;
    let choices = 1u64 << n;
    let mut count = 0;
    for code in 0..choices.pow(kernels) {
        let lim = |k: u32| ((code >> ((k - 1) as u64 * n as u64)) & (choices - 1)) as u32;
        let centered = (0..n).all(|x| lim(1 << x) & (1 << x) != 0);
        let antitone = (1..=kernels).all(|a| (1..=kernels).all(|b| a & !b != 0 || lim(b) & !lim(a) == 0));
        if centered && antitone {
            count += 1;
        }
    }
    count
}

#[test]
fn convergence_counts_are_frozen() {
    let frozen = [1, 9, 2744];
    for (n, &expected) in (1..=3).zip(&frozen) {
        let all = conv_exhaustive(n);
        assert_eq!(all.len(), expected, "n = {n}");
        assert_eq!(brute_force_convergences(n), expected, "n = {n}");
        assert!(all.iter().all(ConvSpace::is_centered));
        let mut tables: Vec<_> = all.iter().map(|c| c.table().to_vec()).collect();
        tables.sort();
        tables.dedup();
        assert_eq!(tables.len(), expected);
    }
}

#[test]
fn approach_table_counts() {
    // Per point, the three kernel values (a, b, c) need a ≤ c and b ≤ c; with
    // c the i-th grid value there are (i+1)² choices for (a, b).
    let per_point = |g: usize| (1..=g).map(|i| i * i).sum::<usize>();
    assert_eq!(cap_exhaustive(1, &small_grid()).len(), 3);
    assert_eq!(cap_exhaustive(2, &small_grid()).len(), per_point(3).pow(2));
    assert_eq!(cap_exhaustive(2, &half_grid()).len(), per_point(4).pow(2));
}

#[test]
fn random_stream_replays() {
    let a = random_batch(7, 0, 0, 100, &[3], &half_grid());
    let b = random_batch(7, 0, 0, 100, &[3], &half_grid());
    assert_eq!(a.len(), 100);
    for (x, y) in a.iter().zip(&b) {
        assert_eq!((&x.id, &x.space, x.seed), (&y.id, &y.space, y.seed));
        // every generated instance survives its own validator
        let doc = SpaceDocument::from_space(&x.space, Some(&x.id));
        assert_eq!(doc.to_space().unwrap(), x.space);
    }
    assert_ne!(random_batch(8, 0, 0, 100, &[3], &half_grid())[..10], a[..10]);
}

#[test]
fn fixtures_round_trip() {
    let Space::Conv(p3) = fixture("P3.json") else { panic!("P3 is a convergence") };
    let c = p3.carrier().clone();
    let set = |s: &[&str]| c.set_of(s.iter().copied()).unwrap();
    let vic = [set(&["a"]), set(&["a", "b"]), set(&["b", "c"])];
    assert_eq!(p3, ConvSpace::pretopology(c.clone(), &vic).unwrap());
    let json = serde_json::to_string(&SpaceDocument::from_conv(&p3, Some("P3"))).unwrap();
    assert_eq!(parse_space(&json).unwrap(), Space::Conv(p3));

    let q2 = fixture("Q2.json");
    let d = vec![vec![v("0"), v("1")], vec![v("inf"), v("0")]];
    assert_eq!(q2, Space::Cap(CapSpace::from_distances(Carrier::numbered(2), &d).unwrap()));
}

#[test]
fn non_monotone_document_names_the_axiom() {
    let doc = r#"{"kind": "cap", "carrier": ["a", "b"], "lambda": [
        {"kernel": ["a"], "values": {"a": "0", "b": "2"}},
        {"kernel": ["b"], "values": {"a": "0", "b": "0"}},
        {"kernel": ["a", "b"], "values": {"a": "0", "b": "1"}}]}"#;
    match parse_space(doc) {
        Err(FormatError::Axiom { axiom, .. }) => assert_eq!(axiom, "monotone"),
        other => panic!("accepted or misreported: {other:?}"),
    }
    let prap = r#"{"kind": "cap", "carrier": ["a", "b"], "completion": "prap", "lambda": [
        {"kernel": ["a", "b"], "values": {"a": "0", "b": "0"}}]}"#;
    assert!(parse_space(prap).is_err());
}

#[test]
fn q2_upper_vietoris_of_the_full_filter() {
    let Space::Cap(q2) = fixture("Q2.json") else { panic!("Q2 is an approach table") };
    let h = HyperSpace::new(q2, CarrierMode::Closed).unwrap();
    let f = HyperFilter::principal(Kernel::from_bits(0b11));
    let a = Kernel::from_bits(0b01);
    let oracle = FrameOracle::new(&h);
    assert_eq!(oracle.lambda_uv(&f, a), Value::INFINITY);
    assert_eq!(frames::lambda_uv(&h, &f, a).unwrap(), Value::INFINITY);
}

/// With saturation read literally, `{∅}` is saturated (its union has no
/// closed subset but `∅`), and it meets the filter generated by `{∅}`, yet
/// its reduction `∅` meets nothing.
#[test]
fn grill_lemma_needs_nonempty_saturation() {
    let p3 = match fixture("P3.json") {
        Space::Conv(c) => c,
        _ => unreachable!(),
    };
    let closed = p3.closed_sets();
    let h = SetFamily::single(Kernel::EMPTY);
    assert!(is_saturated(&h, &closed));
    let f = HyperFilter::principal(Kernel::EMPTY);
    let in_grill = f.family().iter().any(|k| h.contains(k));
    let reduced_meets = rdc(&h).meets(f.rdc());
    assert!(in_grill && !reduced_meets);
}

/// On a pre-approach space that is not approach, the inclusion
/// `{adh 𝓕 < ε}^(0) ⊆ {adh 𝓕 ≤ ε}` can fail.
#[test]
fn remark_inclusion_fails_without_the_approach_law() {
    let inf = Value::INFINITY;
    let d = vec![vec![v("0"), v("1/2"), inf], vec![inf, v("0"), v("0")], vec![inf, inf, v("0")]];
    let cap = CapSpace::from_distances(Carrier::numbered(3), &d).unwrap();
    assert!(cap.is_prap());
    assert!(!cap.is_approach());
    let adh = cap.adh(&SetFamily::single(Kernel::singleton(0)));
    let eps = v("1");
    let inner = cap.enlarge(level_set(&adh, |x| x < eps), Value::ZERO);
    let outer = level_set(&adh, |x| x <= eps);
    assert!(inner.contains(2) && !outer.contains(2));
}
