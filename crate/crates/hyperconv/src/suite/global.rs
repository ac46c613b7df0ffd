//! Checks on the value algebra and on set combinatorics, independent of any
//! instance.

use hyperconv_core::setcalc::{
    all_subsets, contour_kernel, grill, isotone_hull, mesh, minimal_elements, minimal_transversals, nonempty_subsets,
    rdc,
};
use hyperconv_core::values::{inf, lambda_v_eval, oslash, sup, trunc_sub, ValueKernel};
use hyperconv_core::{Kernel, SelectorMap, SetFamily, Value};
use rand::Rng;

use super::{fail, fail_family, Check, Runner, Verdict};
use crate::generate::rng_for;
use crate::oracle;

pub(super) static CHECKS: &[Check] = &[
    Check {
        id: "values.tsub_cases",
        statement: "truncated difference: finite case and both infinite cases",
        runner: Runner::Global(tsub_cases),
    },
    Check {
        id: "values.oslash_cases",
        statement: "x ⊘ y: division, 0 at y = ∞, ∞ at y = 0, undefined for infinite x",
        runner: Runner::Global(oslash_cases),
    },
    Check {
        id: "values.oslash_inf_law",
        statement: "1 ⊘ ⋀A = ⋁ 1 ⊘ a for finite A ⊆ [0,∞]",
        runner: Runner::Global(oslash_inf_law),
    },
    Check {
        id: "values.oslash_galois", statement: "1 ⊘ x ≤ y ⟺ 1 ⊘ y ≤ x", runner: Runner::Global(oslash_galois)
    },
    Check {
        id: "values.tsub_monotonicity",
        statement: "x ⊖ y ≤ x, antitone in y, monotone in x",
        runner: Runner::Global(tsub_monotonicity),
    },
    Check {
        id: "oracle.lambda_v_principal",
        statement: "λ_V on a principal filter is v ⊖ min K (against every meshing value set)",
        runner: Runner::Global(lambda_v_principal),
    },
    Check {
        id: "setcalc.grill_laws",
        statement: "grills are antitone, mesh ⟺ inclusion in the grill, mesh is symmetric, 𝒜^## = 𝒜^↑",
        runner: Runner::Global(grill_laws),
    },
    Check {
        id: "oracle.minimal_transversals",
        statement: "minimal transversals are exactly the minimal meshing sets",
        runner: Runner::Global(transversals),
    },
    Check {
        id: "oracle.contour_kernel",
        statement: "contour kernel equals the literal ⋃_F ⋂_{t∈F} 𝒢(t); monotone in the filter and in 𝒢",
        runner: Runner::Global(contour),
    },
    Check {
        id: "oracle.rdc_kernel",
        statement: "kernel of the reduction is the least union of a superfamily",
        runner: Runner::Global(rdc_kernel),
    },
];

fn v(s: &str) -> Value {
    s.parse().expect("value literal")
}

fn grid() -> Vec<Value> {
    ["0", "1/4", "1/2", "1", "2", "3", "inf"].iter().map(|s| v(s)).collect()
}

fn one_over(x: Value) -> Value {
    oslash(Value::ONE, x).expect("finite numerator")
}

fn tsub_cases(_: u64) -> Verdict {
    let cases = [
        ("3/2", "1", "1/2"),
        ("inf", "inf", "0"),
        ("inf", "5", "inf"),
        ("inf", "0", "inf"),
        ("0", "inf", "0"),
        ("5", "inf", "0"),
        ("1", "2", "0"),
        ("2", "2", "0"),
    ];
    for (x, y, want) in cases {
        let got = trunc_sub(v(x), v(y));
        if got != v(want) {
            return fail(format!("{x} ⊖ {y} = {got}, expected {want}"));
        }
    }
    Verdict::Pass
}

fn oslash_cases(_: u64) -> Verdict {
    for (x, y, want) in
        [("1", "0", "inf"), ("1", "inf", "0"), ("1", "1/2", "2"), ("3", "2", "3/2"), ("0", "0", "inf"), ("0", "2", "0")]
    {
        match oslash(v(x), v(y)) {
            Ok(got) if got == v(want) => {}
            other => return fail(format!("{x} ⊘ {y} gave {other:?}, expected {want}")),
        }
    }
    if oslash(Value::INFINITY, Value::ONE).is_ok() {
        return fail("∞ ⊘ 1 was accepted");
    }
    Verdict::Pass
}

fn oslash_inf_law(seed: u64) -> Verdict {
    let g = grid();
    let law = |a: &[Value]| one_over(inf(a.iter().copied())) == sup(a.iter().map(|&x| one_over(x)));
    for mask in 0u32..1 << g.len() {
        let a: Vec<Value> = (0..g.len()).filter(|i| mask & (1 << i) != 0).map(|i| g[i]).collect();
        if !law(&a) {
            return fail(format!("fails for {a:?}"));
        }
    }
    let mut rng = rng_for(seed, 0x0510);
    for _ in 0..500 {
        let len = rng.random_range(1..=6);
        let a: Vec<Value> = (0..len)
            .map(|_| {
                if rng.random_bool(0.1) {
                    Value::INFINITY
                } else {
                    Value::ratio(rng.random_range(0..40), rng.random_range(1..12))
                }
            })
            .collect();
        if !law(&a) {
            return fail(format!("fails for {a:?}"));
        }
    }
    Verdict::Pass
}

fn oslash_galois(_: u64) -> Verdict {
    let g = grid();
    for &x in &g {
        for &y in &g {
            if (one_over(x) <= y) != (one_over(y) <= x) {
                return fail(format!("fails at x = {x}, y = {y}"));
            }
        }
    }
    Verdict::Pass
}

fn tsub_monotonicity(_: u64) -> Verdict {
    let g = grid();
    for &x in &g {
        for &y in &g {
            if trunc_sub(x, y) > x {
                return fail(format!("{x} ⊖ {y} exceeds {x}"));
            }
            for &z in &g {
                if y <= z && trunc_sub(x, z) > trunc_sub(x, y) {
                    return fail(format!("not antitone in the subtrahend at {x}, {y} ≤ {z}"));
                }
                if x <= z && trunc_sub(x, y) > trunc_sub(z, y) {
                    return fail(format!("not monotone in the minuend at {x} ≤ {z}, {y}"));
                }
            }
        }
    }
    Verdict::Pass
}

fn lambda_v_principal(_: u64) -> Verdict {
    let universe: Vec<Value> = ["0", "1/2", "1", "2", "inf"].iter().map(|s| v(s)).collect();
    for mask in 1u32..1 << universe.len() {
        let kernel: Vec<Value> = (0..universe.len()).filter(|i| mask & (1 << i) != 0).map(|i| universe[i]).collect();
        let vk = ValueKernel::new(kernel.iter().copied()).expect("nonempty");
        for &x in &universe {
            let fast = lambda_v_eval(&vk, x);
            let slow = oracle::lambda_v(&kernel, x, &universe);
            if fast != slow {
                return fail(format!("kernel {kernel:?} at {x}: {fast} vs {slow}"));
            }
        }
    }
    let two = lambda_v_eval(&ValueKernel::new([Value::ZERO, Value::ONE]).expect("nonempty"), v("2"));
    if two != v("2") {
        return fail(format!("λ_V({{0,1}})(2) = {two}"));
    }
    Verdict::Pass
}

/// Every family of subsets of an `n`-point set, indexed by bitmask over subsets.
fn all_families(n: usize) -> Vec<SetFamily> {
    let subsets: Vec<Kernel> = all_subsets(n).collect();
    (0u32..1 << subsets.len())
        .map(|mask| (0..subsets.len()).filter(|i| mask & (1 << i) != 0).map(|i| subsets[i]).collect())
        .collect()
}

fn grill_laws(_: u64) -> Verdict {
    for n in 1..=3 {
        let fams = all_families(n);
        let grills: Vec<SetFamily> = fams.iter().map(|f| grill(f, n)).collect();
        if grills[0].len() != 1 << n {
            return fail("grill of the empty family is not every subset");
        }
        for (i, a) in fams.iter().enumerate() {
            if a.contains(Kernel::EMPTY) && !grills[i].is_empty() {
                return fail_family("family containing ∅ has a nonempty grill", a);
            }
            if grill(&grills[i], n) != isotone_hull(a, n) {
                return fail_family("double grill differs from the isotone hull", a);
            }
            for (j, b) in fams.iter().enumerate() {
                let m = mesh(a, b);
                if m != mesh(b, a) || m != a.is_subfamily(&grills[j]) {
                    return fail_family(format!("mesh with {b:?} disagrees with the grill"), a);
                }
                // i ⊆ j as masks means a ⊆ b as families
                if i & j == i && !grills[j].is_subfamily(&grills[i]) {
                    return fail_family(format!("grill not antitone against {b:?}"), a);
                }
            }
        }
    }
    Verdict::Pass
}

fn transversals(_: u64) -> Verdict {
    for n in 1..=3 {
        for fam in all_families(n) {
            let fast = minimal_transversals(&fam, n);
            let meshing: Vec<Kernel> = oracle::meshing_kernels(fam.members(), n).collect();
            let slow = SetFamily::new(minimal_elements(meshing));
            if fast != slow {
                return fail_family(format!("got {fast:?}, brute force {slow:?}"), &fam);
            }
            if fast.is_empty() != fam.contains(Kernel::EMPTY) {
                return fail_family("empty result does not match ∅ ∈ family", &fam);
            }
        }
    }
    let k = |p: &[usize]| Kernel::from_points(p.iter().copied());
    let example = minimal_transversals(&SetFamily::new([k(&[0, 1]), k(&[1, 2])]), 3);
    if example != SetFamily::new([k(&[1]), k(&[0, 2])]) {
        return fail(format!("{{ab, bc}} gave {example:?}"));
    }
    Verdict::Pass
}

fn contour(_: u64) -> Verdict {
    for n in 1..=3 {
        let kernels: Vec<Kernel> = nonempty_subsets(n).collect();
        let total = kernels.len().pow(n as u32);
        let maps: Vec<SelectorMap> = (0..total)
            .map(|code| {
                let mut c = code;
                let images = (0..n)
                    .map(|_| {
                        let k = kernels[c % kernels.len()];
                        c /= kernels.len();
                        k
                    })
                    .collect();
                SelectorMap::new(images).expect("nonempty images")
            })
            .collect();
        for g in &maps {
            for &f in &kernels {
                let fast = contour_kernel(g, f);
                if oracle::contour_literal(g, f, n) != Some(fast) {
                    return fail(format!("selector {:?}, filter {f:?}", g.images()));
                }
                for &f2 in kernels.iter().filter(|f2| f.is_subset(**f2)) {
                    if !fast.is_subset(contour_kernel(g, f2)) {
                        return fail(format!("not monotone in the filter: {f:?} ⊆ {f2:?}"));
                    }
                }
            }
        }
        for g in &maps {
            for h in maps.iter().filter(|h| (0..n).all(|t| g.image(t).is_subset(h.image(t)))) {
                for &f in &kernels {
                    if !contour_kernel(g, f).is_subset(contour_kernel(h, f)) {
                        return fail(format!("not monotone in the selector: {:?} ≤ {:?}", g.images(), h.images()));
                    }
                }
            }
        }
    }
    Verdict::Pass
}

fn rdc_kernel(_: u64) -> Verdict {
    let n = 3;
    let points: Vec<Kernel> = all_subsets(n).collect();
    for fam in all_families(n).into_iter().skip(1) {
        let fast = rdc(&fam);
        let slow = oracle::rdc_literal(fam.members(), &points);
        if fast != slow {
            return fail_family(format!("got {fast:?}, literal {slow:?}"), &fam);
        }
    }
    if rdc(&SetFamily::single(Kernel::EMPTY)) != Kernel::EMPTY {
        return fail("rdc {∅} is not ∅");
    }
    Verdict::Pass
}
