//! Small hand-checked values on the two reference spaces: the non-topological
//! pretopology `P3` on `{a,b,c}` and the two-point quasi-metric space `Q2`.

use hyperconv_core::frames::{self, DClosure, FrameFn};
use hyperconv_core::hyper::measure_compactness;
use hyperconv_core::setcalc::{contour_kernel, erect, grill, is_saturated, mesh, minimal_transversals, rdc};
use hyperconv_core::values::{lambda_v_eval, oslash, trunc_sub, ValueKernel};
use hyperconv_core::{
    CapSpace, Carrier, CarrierMode, ConvSpace, HyperFilter, HyperSpace, Kernel, SelectorMap, SetFamily, Structure,
    Value,
};

fn v(s: &str) -> Value {
    s.parse().unwrap()
}

fn abc() -> Carrier {
    Carrier::new(["a", "b", "c"]).unwrap()
}

fn set(c: &Carrier, labels: &[&str]) -> Kernel {
    c.set_of(labels.iter().copied()).unwrap()
}

fn fam(c: &Carrier, sets: &[&[&str]]) -> SetFamily {
    SetFamily::new(sets.iter().map(|s| set(c, s)))
}

/// `lim{a} = {a,b}`, `lim{b} = {b,c}`, `lim{c} = {c}`, extended as a pretopology.
fn p3() -> ConvSpace {
    let c = abc();
    let vic = [set(&c, &["a"]), set(&c, &["a", "b"]), set(&c, &["b", "c"])];
    ConvSpace::pretopology(c, &vic).unwrap()
}

/// `d(0,1) = 1`, `d(1,0) = ∞`.
fn q2() -> CapSpace {
    let d = vec![vec![v("0"), v("1")], vec![v("inf"), v("0")]];
    CapSpace::from_distances(Carrier::numbered(2), &d).unwrap()
}

fn k(bits: u32) -> Kernel {
    Kernel::from_bits(bits)
}

#[test]
fn truncated_subtraction_and_division() {
    assert_eq!(trunc_sub(v("3/2"), v("1")), v("1/2"));
    assert_eq!(trunc_sub(v("inf"), v("inf")), v("0"));
    assert_eq!(trunc_sub(v("inf"), v("5")), v("inf"));
    assert_eq!(oslash(v("1"), v("0")).unwrap(), v("inf"));
    assert_eq!(oslash(v("1"), v("inf")).unwrap(), v("0"));
    assert_eq!(oslash(v("1"), v("1/2")).unwrap(), v("2"));
}

#[test]
fn value_kernel_evaluation() {
    let ker = |xs: &[&str]| ValueKernel::new(xs.iter().map(|s| v(s))).unwrap();
    assert_eq!(lambda_v_eval(&ker(&["0", "1"]), v("2")), v("2"));
    assert_eq!(lambda_v_eval(&ker(&["3/2"]), v("3/2")), v("0"));
    assert_eq!(lambda_v_eval(&ker(&["inf"]), v("3")), v("0"));
}

#[test]
fn set_calculus() {
    let ab = Carrier::new(["a", "b"]).unwrap();
    assert_eq!(grill(&fam(&ab, &[&["a"]]), 2), fam(&ab, &[&["a"], &["a", "b"]]));
    assert_eq!(grill(&SetFamily::empty(), 2).len(), 4);
    assert!(mesh(&fam(&ab, &[&["a"]]), &fam(&ab, &[&["a", "b"]])));
    assert!(!mesh(&fam(&ab, &[&["a"]]), &fam(&ab, &[&["b"]])));
    assert_eq!(rdc(&fam(&ab, &[&["a"], &["b"]])), ab.full());
    assert_eq!(rdc(&SetFamily::single(Kernel::EMPTY)), Kernel::EMPTY);

    let c = abc();
    let closed = fam(&c, &[&[], &["c"], &["b", "c"], &["a", "b", "c"]]);
    assert_eq!(erect(set(&c, &["b", "c"]), &closed), fam(&c, &[&[], &["c"], &["b", "c"]]));
    assert_eq!(erect(Kernel::EMPTY, &closed), SetFamily::single(Kernel::EMPTY));
    assert!(is_saturated(&fam(&c, &[&[], &["c"]]), &closed));
    assert!(!is_saturated(&fam(&c, &[&["b", "c"]]), &closed));

    assert_eq!(minimal_transversals(&fam(&c, &[&["a", "b"], &["b", "c"]]), 3), fam(&c, &[&["b"], &["a", "c"]]));
    assert!(minimal_transversals(&SetFamily::single(Kernel::EMPTY), 3).is_empty());

    let constant = SelectorMap::new(vec![set(&c, &["a"]); 3]).unwrap();
    assert_eq!(contour_kernel(&constant, set(&c, &["a", "b"])), set(&c, &["a"]));
    let identity = SelectorMap::new((0..3).map(Kernel::singleton).collect()).unwrap();
    assert_eq!(contour_kernel(&identity, set(&c, &["a", "b"])), set(&c, &["a", "b"]));
}

#[test]
fn p3_convergence() {
    let p = p3();
    let c = p.carrier().clone();
    assert_eq!(p.lim(set(&c, &["a"])), set(&c, &["a", "b"]));
    assert_eq!(p.adh(&fam(&c, &[&["a"]])), set(&c, &["a", "b"]));
    assert_eq!(p.adh(&SetFamily::single(c.full())), c.full());
    assert_eq!(p.closed_sets(), fam(&c, &[&[], &["c"], &["b", "c"], &["a", "b", "c"]]));
    assert_eq!(p.open_sets(), fam(&c, &[&[], &["a"], &["a", "b"], &["a", "b", "c"]]));
    assert!(p.is_pretopological());
    assert!(!p.is_topological());
    assert_eq!(p.reflect_s0(), p);
    let t = p.reflect_t();
    assert!(t.is_topological());
    assert_eq!(t.closed_sets(), p.closed_sets());
    assert!(p.is_finer_than(&t));
}

#[test]
fn p3_embedding() {
    let i = CapSpace::from_conv(&p3());
    assert_eq!(i.d(0, 1), Value::ZERO);
    assert_eq!(i.d(0, 2), Value::INFINITY);
    assert_eq!(i.coreflect_c(), p3());
    assert_eq!(i.reflect_r(), p3());
    let class = i.classify();
    assert!(class.prap);
    assert!(!class.approach);
    assert_ne!(class.diagonality_points, Kernel::from_bits(0b111));
    // Two steps a → b → c cost nothing, the direct step is infinite.
    assert_eq!(DClosure::new(&i).get(0, 2), Value::ZERO);
}

#[test]
fn p3_hyperspace() {
    let p = p3();
    let c = p.carrier().clone();
    let h = HyperSpace::new(CapSpace::from_conv(&p), CarrierMode::All).unwrap();
    let f = h.filter(fam(&c, &[&["a"]])).unwrap();
    let closed = p.closed_sets();
    let lk: Vec<Kernel> = closed.iter().filter(|&a| h.lambda_lk(&f, a).unwrap().is_zero()).collect();
    assert_eq!(lk, vec![Kernel::EMPTY]);
    for a in closed.iter() {
        assert_eq!(frames::lambda_lv(&h, &f, a).unwrap(), Value::ZERO);
    }
}

#[test]
fn q2_space() {
    let q = q2();
    assert_eq!(q.eval(k(0b11), 1), v("1"));
    assert!(q.eval(k(0b01), 1) <= q.eval(k(0b11), 1));
    assert_eq!(q.adh(&SetFamily::single(k(0b01))), vec![v("0"), v("1")]);
    assert_eq!(q.adh(&SetFamily::single(Kernel::EMPTY)), vec![Value::INFINITY; 2]);
    assert_eq!(q.enlarge(k(0b01), v("1")), k(0b11));
    let c = q.coreflect_c();
    assert_eq!((c.lim(k(0b01)), c.lim(k(0b10)), c.lim(k(0b11))), (k(0b01), k(0b10), Kernel::EMPTY));
    let r = q.reflect_r();
    assert_eq!((r.lim(k(0b01)), r.lim(k(0b10))), (k(0b11), k(0b10)));
    assert_eq!(q.layer(v("1/2")).lim(k(0b01)), k(0b01));
    assert_eq!(q.layer(v("1")).lim(k(0b01)), k(0b11));
    assert_eq!(q.tower().assemble(), q);
    let class = q.classify();
    assert!(class.centered && class.prap && class.approach);
    assert!(!frames::is_contraction(&q, &FrameFn::new(vec![v("0"), v("2")])));
    assert_eq!(DClosure::new(&q).get(0, 1), v("1"));
    assert_eq!(measure_compactness(&q, k(0b11)), Value::ZERO);
}

#[test]
fn q2_hyperspace() {
    let h = HyperSpace::new(q2(), CarrierMode::Closed).unwrap();
    let f = HyperFilter::principal(k(0b01));
    let at = |s: Structure, a: u32| h.lambda(s, &f, k(a)).unwrap();
    assert_eq!(at(Structure::UK, 0b01), v("1"));
    assert_eq!(at(Structure::UK, 0b11), Value::ZERO);
    assert_eq!(at(Structure::LK, 0b10), v("1"));
    assert_eq!(at(Structure::LK, 0b01), Value::ZERO);
    assert_eq!(at(Structure::K, 0b01), v("1"));
    assert_eq!(at(Structure::UF, 0b00), Value::INFINITY);
    assert_eq!(at(Structure::UF, 0b01), Value::ZERO);
    assert_eq!(at(Structure::LV, 0b10), v("1"));
    for s in Structure::ALL {
        assert_eq!(at(s, 0b01).min(h.lambda(s, &HyperFilter::principal(k(0b10)), k(0b10)).unwrap()), Value::ZERO);
    }
}
