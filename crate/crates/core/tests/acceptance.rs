//! Acceptance criteria, one line per criterion.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use common::Sampler;
use freealg::algebra::{associator, teichmuller_residual};
use freealg::cli;
use freealg::fixtures::{self, q};
use freealg::homomorphism::{quat_auto_check, QuatVerdict};
use freealg::linmap::{
    build_b_matrix, components_from_coords, compose_expansions, coords_from_components, generator_basis,
    orbit_subspace, sandwich_apply, GeneratorSet, MapExpansion, RepError,
};
use freealg::omega::{cyclic_ring, interchange_holds, ring_interchange_report, FiniteOpAlgebra, Interchange};
use freealg::polylinear::{PermTensor, PolyForm};
use freealg::tensor::tensor_structural_constants;
use freealg::{AlgElem, Algebra, Field, LinMap, Matrix, Tensor};

const SAMPLES: usize = 100;
const Q: Field = Field::Rational;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    dir.to_string_lossy().into_owned()
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv: Vec<String> = std::iter::once("freealg".to_string())
        .chain(args.iter().map(|a| {
            if a.contains('.') && !a.starts_with('-') {
                fixture(a)
            } else {
                a.to_string()
            }
        }))
        .collect();
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn cyclic_matrix() -> Matrix {
    Matrix::from_i64(Q, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 1, 0, 0]])
}

fn quaternion_automorphisms() -> Check {
    let expected = [
        ("identity4.map", 0, "PASS\n"),
        ("cyclic-quaternion.map", 0, "PASS\n"),
        ("twice-identity4.map", 1, "FAIL r^1_1 = r^2_2 r^3_3 - r^2_3 r^3_2 (2 != 4)\n"),
    ];
    for (file, code, text) in expected {
        let got = run_cli(&["quat-auto", "--matrix", file]);
        ensure(got.0 == code && got.1 == text, || format!("quat-auto {file}: {got:?}"))?;
    }
    for m in [Matrix::identity(Q, 4), cyclic_matrix()] {
        let r = quat_auto_check(&m).map_err(|e| e.to_string())?;
        ensure(r.passes() && r.consistent() && m.rank() == 4, || format!("{m}"))?;
    }
    let twice = quat_auto_check(&Matrix::identity(Q, 4).scale(&Q.from_i64(2))).unwrap();
    ensure(matches!(twice.verdict, QuatVerdict::Fail(_)) && twice.consistent(), || {
        "2·identity verdicts disagree".into()
    })
}

/// The published ±1/4 table, keyed by `(i, j)`.
fn published_table(h: &Algebra) -> Tensor {
    let plus = [(0, 0), (0, 1), (0, 2), (0, 3)];
    let minus = [
        (1, 1), (2, 2), (3, 3),
        (1, 0), (2, 0), (3, 0),
        (3, 2), (2, 3), (3, 1), (1, 3), (2, 1), (1, 2),
    ];
    let mut t = Tensor::zeros(vec![h.clone(), h.clone()]).unwrap();
    for (i, j) in plus {
        t.set(&[i, j], q(1, 4));
    }
    for (i, j) in minus {
        t.set(&[i, j], q(-1, 4));
    }
    t
}

fn example_standard_components() -> Check {
    let h = fixtures::quaternions(Q);
    let r = LinMap::new(h.clone(), h.clone(), cyclic_matrix()).unwrap();
    let gens = GeneratorSet::identity(&h);
    let dec = components_from_coords(&r, &gens).map_err(|e| e.to_string())?;
    let table = published_table(&h);
    ensure(dec.expansion.components() == [table.clone()], || {
        format!("components differ:\n{}", dec.expansion.components()[0])
    })?;
    ensure(dec.nullity == 0, || format!("nullity {}", dec.nullity))?;
    let back = coords_from_components(&MapExpansion::new(gens, vec![table]).unwrap()).unwrap();
    ensure(back == r, || format!("coordinates differ:\n{back}"))?;

    let (code, out, _) = run_cli(&["std-components", "quaternion.alg", "--map", "cyclic-quaternion.map"]);
    let mut expected = String::new();
    for i in 0..4 {
        for j in 0..4 {
            let v = if i == 0 { "1/4" } else { "-1/4" };
            expected.push_str(&format!("0 ({i},{j}) {v}\n"));
        }
    }
    expected.push_str("nullity 0\n");
    ensure(code == 0 && out == expected, || format!("std-components output:\n{out}"))?;
    let (code, out, _) = run_cli(&["coords", "quaternion.alg", "--components", "cyclic-quaternion.tensor"]);
    ensure(code == 0 && out == "1 0 0 0\n0 0 1 0\n0 0 0 1\n0 1 0 0\n", || format!("coords output:\n{out}"))
}

fn generator_counts() -> Check {
    let h = fixtures::quaternions(Q);
    let gh = generator_basis(&h).map_err(|e| e.to_string())?;
    ensure(gh.set.len() == 1 && gh.set.generators()[0].is_identity(), || {
        format!("quaternion generators: {}", gh.set.len())
    })?;
    let rank = build_b_matrix(&h, &LinMap::identity(&h)).unwrap().rank();
    ensure(rank == 16, || format!("B rank {rank}"))?;

    let c = fixtures::complex(Q);
    let gc = generator_basis(&c).map_err(|e| e.to_string())?;
    ensure(gc.set.len() == 2 && gc.set.generators()[0].is_identity(), || {
        format!("complex generators: {}", gc.set.len())
    })?;
    ensure(gc.orbit_dims == [2, 2] && gc.union_dim == 4, || {
        format!("orbit dims {:?}, union {}", gc.orbit_dims, gc.union_dim)
    })?;
    let conj = LinMap::new(c.clone(), c.clone(), Matrix::from_i64(Q, &[&[1, 0], &[0, -1]])).unwrap();
    let over_delta = components_from_coords(&conj, &GeneratorSet::identity(&c));
    ensure(over_delta == Err(RepError::NoSolution), || "conjugation solvable over the identity alone".into())?;
    let over_all = components_from_coords(&conj, &gc.set).map_err(|e| e.to_string())?;
    let back = coords_from_components(&over_all.expansion).unwrap();
    ensure(back == conj, || "conjugation not reconstructed".into())?;

    let (code, out, _) = run_cli(&["generators", "complex.alg"]);
    ensure(code == 0 && out.starts_with("generators 2\n") && out.contains("orbit dims 2 2\n"), || {
        format!("generators output:\n{out}")
    })
}

fn left_shift_identity(a: &AlgElem, b: &AlgElem, x: &AlgElem) -> bool {
    let lhs = a.left_shift_matrix().mul(&b.left_shift_matrix()).unwrap().mul_vec(x.coords());
    let lab = a.mul(b).unwrap().left_shift_matrix().mul_vec(x.coords());
    let rhs = AlgElem::new(x.algebra().clone(), lab).unwrap().sub(&associator(a, b, x).unwrap()).unwrap();
    lhs == rhs.coords()
}

fn right_shift_identity(a: &AlgElem, b: &AlgElem, x: &AlgElem) -> bool {
    let lhs = a.right_shift_matrix().mul(&b.right_shift_matrix()).unwrap().mul_vec(x.coords());
    let rba = b.mul(a).unwrap().right_shift_matrix().mul_vec(x.coords());
    let rhs = AlgElem::new(x.algebra().clone(), rba).unwrap().add(&associator(x, b, a).unwrap()).unwrap();
    lhs == rhs.coords()
}

fn tensor_consistency(prod: &Algebra, a: &AlgElem, b: &AlgElem, c: &AlgElem, d: &AlgElem) -> bool {
    let ab = Tensor::from_vectors(&[a.clone(), b.clone()]).unwrap();
    let cd = Tensor::from_vectors(&[c.clone(), d.clone()]).unwrap();
    let slotwise = Tensor::from_vectors(&[a.mul(c).unwrap(), b.mul(d).unwrap()]).unwrap();
    let by_constants = ab.flatten(prod).unwrap().mul(&cd.flatten(prod).unwrap()).unwrap();
    ab.mul(&cd).unwrap() == slotwise && by_constants.coords() == slotwise.components()
}

fn identity_suites() -> Check {
    let mut s = Sampler::new(0x5eed_0004);
    for field in common::fields() {
        for alg in common::algebras(field) {
            let name = format!("{} over {}", alg.name(), field);
            let prod = tensor_structural_constants(&[alg.clone(), alg.clone()]).unwrap();
            for _ in 0..SAMPLES {
                let [a, b, c, d] = [0; 4].map(|_| s.elem(&alg));
                ensure(teichmuller_residual(&a, &b, &c, &d).unwrap().is_zero(), || {
                    format!("Teichmüller residual on {name}")
                })?;
                ensure(left_shift_identity(&a, &b, &c) && right_shift_identity(&a, &b, &c), || {
                    format!("shift identity on {name}")
                })?;
                ensure(tensor_consistency(&prod, &a, &b, &c, &d), || format!("tensor product on {name}"))?;
            }
            if alg.dim() <= 4 {
                let n = alg.dim();
                let e = |i: usize| AlgElem::basis(&alg, i);
                for t in 0..n.pow(4) {
                    let (i, j, k, l) = (t / (n * n * n), t / (n * n) % n, t / n % n, t % n);
                    ensure(teichmuller_residual(&e(i), &e(j), &e(k), &e(l)).unwrap().is_zero(), || {
                        format!("Teichmüller residual on basis of {name}")
                    })?;
                    ensure(left_shift_identity(&e(i), &e(j), &e(k)) && right_shift_identity(&e(i), &e(j), &e(k)), || {
                        format!("shift identity on basis of {name}")
                    })?;
                    ensure(tensor_consistency(&prod, &e(i), &e(j), &e(k), &e(l)), || {
                        format!("tensor product on basis of {name}")
                    })?;
                }
            }
        }

        let h = fixtures::quaternions(field);
        let hh = [h.clone(), h.clone()];
        for _ in 0..SAMPLES {
            let (c, a, f) = (s.tensor(&hh), s.tensor(&hh), s.map(&h, &h));
            let lhs = sandwich_apply(&c.twisted_mul(&a).unwrap(), &f).unwrap();
            let rhs = sandwich_apply(&c, &sandwich_apply(&a, &f).unwrap()).unwrap();
            ensure(lhs == rhs, || format!("representation law over {field}"))?;
        }

        let gens = GeneratorSet::identity(&h);
        for _ in 0..SAMPLES {
            let [a, b, c, d] = [0; 4].map(|_| s.elem(&h));
            let g = MapExpansion::new(gens.clone(), vec![Tensor::from_vectors(&[a.clone(), b.clone()]).unwrap()]).unwrap();
            let f = MapExpansion::new(gens.clone(), vec![Tensor::from_vectors(&[c.clone(), d.clone()]).unwrap()]).unwrap();
            let composed = compose_expansions(&g, &f).map_err(|e| e.to_string())?;
            let expected = Tensor::from_vectors(&[a.mul(&c).unwrap(), d.mul(&b).unwrap()]).unwrap();
            ensure(composed.components() == [expected], || format!("composition rule over {field}"))?;
            let direct = coords_from_components(&g).unwrap().compose(&coords_from_components(&f).unwrap()).unwrap();
            ensure(coords_from_components(&composed).unwrap() == direct, || {
                format!("composition versus matrix product over {field}")
            })?;
        }

        for alg in [fixtures::quaternions(field), fixtures::complex(field)] {
            let pair = [alg.clone(), alg.clone()];
            let mut invertible = 0;
            for _ in 0..SAMPLES {
                let (a, f) = (s.tensor(&pair), s.map(&alg, &alg));
                let g = sandwich_apply(&a, &f).unwrap();
                let (og, of) = (orbit_subspace(&g).unwrap(), orbit_subspace(&f).unwrap());
                ensure(og.is_subspace_of(&of), || format!("orbit monotonicity on {}", alg.name()))?;
                if a.twisted_inverse().unwrap().is_some() {
                    invertible += 1;
                    ensure(og == of, || format!("orbit equality on {}", alg.name()))?;
                }
            }
            ensure(invertible > 0, || format!("no invertible tensor sampled on {}", alg.name()))?;
        }
    }
    Ok(())
}

fn polylinear_suite() -> Check {
    let h = fixtures::quaternions(Q);
    let el = |c: [i64; 4]| fixtures::elem(&h, &c);
    let a = [el([1, 1, 0, 0]), el([0, 2, -1, 1]), el([3, 0, 1, 0]), el([1, -1, 1, 2])];
    let x = [el([0, 1, 0, 3]), el([2, 0, 1, -1]), el([1, 1, 1, 1])];
    let pt = PermTensor::new(Tensor::from_vectors(&a).unwrap(), vec![1, 0, 2]).map_err(|e| e.to_string())?;
    let d = LinMap::identity(&h);
    let maps = [d.clone(), d.clone(), d.clone()];
    let got = pt.eval(&maps, &x).map_err(|e| e.to_string())?;
    // a0 x2 a1 x1 a2 x3 a3, multiplied left to right
    let chain = [&x[1], &a[1], &x[0], &a[2], &x[2], &a[3]];
    let expected = chain.iter().fold(a[0].clone(), |acc, y| acc.mul(y).unwrap());
    ensure(got == expected, || format!("worked example gave {got}, expected {expected}"))?;
    ensure(pt.form(&maps).unwrap().eval(&x).unwrap() == expected, || "component route disagrees".into())?;

    let mut s = Sampler::new(0x5eed_0005);
    for field in common::fields() {
        let hf = fixtures::quaternions(field);
        let forms = [
            PolyForm::multiplication(&hf),
            PolyForm::from_evaluator(vec![hf.clone(), hf.clone()], hf.clone(), |x| x[0].commutator(&x[1]).unwrap()).unwrap(),
            PolyForm::from_evaluator(vec![hf.clone(); 3], hf.clone(), |x| associator(&x[0], &x[1], &x[2]).unwrap()).unwrap(),
        ];
        for f in &forms {
            let back = PolyForm::from_evaluator(f.sources().to_vec(), hf.clone(), |x| f.eval(x).unwrap()).unwrap();
            ensure(&back == f, || "evaluator round trip".into())?;
            let cur = f.curry(1).unwrap();
            ensure(&cur.uncurry().unwrap() == f, || "curry round trip".into())?;
        }
        let m = &forms[0];
        for _ in 0..SAMPLES {
            let (h1, h2) = (s.invertible(field, 4), s.invertible(field, 4));
            let changed = m.basis_change(&[h1.clone(), h2.clone()]).unwrap();
            let (u, v) = (s.elem(&hf), s.elem(&hf));
            let old = |h: &Matrix, y: &AlgElem| AlgElem::new(hf.clone(), h.mul_vec(y.coords())).unwrap();
            ensure(
                changed.eval(&[u.clone(), v.clone()]).unwrap() == m.eval(&[old(&h1, &u), old(&h2, &v)]).unwrap(),
                || format!("basis change invariance over {field}"),
            )?;
        }
        let cm = PolyForm::multiplication(&fixtures::complex(field));
        ensure(cm.is_symmetric().unwrap() && !cm.is_skew().unwrap(), || "complex multiplication".into())?;
        ensure(forms[1].is_skew().unwrap() && !forms[1].is_symmetric().unwrap(), || {
            "quaternion commutator".into()
        })?;
        ensure(!m.is_symmetric().unwrap() && !m.is_skew().unwrap(), || "quaternion multiplication".into())?;
    }
    Ok(())
}

fn interchange_checker() -> Check {
    let (add2, mul2) = cyclic_ring(2).unwrap();
    let holds = interchange_holds(&FiniteOpAlgebra::new(add2.clone(), add2.clone()).unwrap()).unwrap();
    ensure(holds.holds(), || "(Z/2, +, +) fails".into())?;

    let outcome = interchange_holds(&FiniteOpAlgebra::new(add2.clone(), mul2.clone()).unwrap()).unwrap();
    let Interchange::Counterexample { args, lhs, rhs } = outcome else {
        return Err("(Z/2, +, ·) holds".into());
    };
    // hand expansion: lhs = a11 a12 + a21 a22, rhs = (a11 + a21)(a12 + a22)
    let (a11, a12, a21, a22) = (args[0][0], args[0][1], args[1][0], args[1][1]);
    ensure((a11, a12, a21, a22) == (0, 1, 1, 0), || format!("first witness {args:?}"))?;
    let by_hand_lhs = (a11 * a12 + a21 * a22) % 2;
    let by_hand_rhs = ((a11 + a21) * (a12 + a22)) % 2;
    let cross = (a11 * a22 + a21 * a12) % 2;
    ensure(lhs == by_hand_lhs && rhs == by_hand_rhs, || format!("lhs {lhs} rhs {rhs}"))?;
    ensure((by_hand_lhs + cross) % 2 == by_hand_rhs && cross == 1, || "cross terms".into())?;
    let report = ring_interchange_report(&add2, &mul2).unwrap();
    ensure(report.cross_terms(&mul2, &add2) == Some(1), || "reported cross terms".into())?;

    let (add3, mul3) = cyclic_ring(3).unwrap();
    ensure(!ring_interchange_report(&add3, &mul3).unwrap().outcome.holds(), || "(Z/3, +, ·) holds".into())?;

    let (code, out, _) = run_cli(&["interchange", "z2-ring.ops"]);
    ensure(code == 1 && out == "COUNTEREXAMPLE\n0 1\n1 0\nlhs 0\nrhs 1\n", || format!("interchange output:\n{out}"))?;
    let (code, out, _) = run_cli(&["interchange", "z2-add-add.ops"]);
    ensure(code == 0 && out == "HOLDS\n", || format!("interchange output:\n{out}"))?;
    let (code, _, _) = run_cli(&["interchange", "z3-ring.ops"]);
    ensure(code == 1, || "Z/3 exit code".into())
}

fn deterministic_reports() -> Check {
    let commands: [&[&str]; 9] = [
        &["check", "octonion.alg"],
        &["check", "quaternion-f5.alg"],
        &["b-matrix", "quaternion.alg"],
        &["std-components", "complex.alg", "--map", "complex-conjugation.map", "--generators", "auto"],
        &["generators", "n2-unital.alg"],
        &["orbit-equal", "complex.alg", "--a", "complex-identity.map", "--b", "complex-conjugation.map"],
        &["hom-check", "complex.alg", "complex.alg", "--matrix", "complex-stretch.map"],
        &["interchange", "--ring", "z3-ring.ops"],
        &["mul", "octonion.alg", "--a", "0,1,0,0,0,0,0,-1/2", "--b", "1/3,0,1,0,0,0,0,0"],
    ];
    for args in commands {
        let first = run_cli(args);
        let second = run_cli(args);
        ensure(first == second, || format!("{args:?} output differs between runs"))?;
        ensure(first.0 != 2, || format!("{args:?} failed: {}", first.2))?;
    }
    let (code, _, err) = run_cli(&["check", "bad-unit.alg"]);
    ensure(code == 2 && err.contains("unit"), || format!("bad unit: {code} {err}"))?;
    let digest = |seed| {
        let mut s = Sampler::new(seed);
        let h = fixtures::quaternions(Q);
        (0..10).map(|_| s.elem(&h).to_string()).collect::<Vec<_>>()
    };
    ensure(digest(7) == digest(7), || "seeded sampling is not reproducible".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 7] = [
        ("quaternion automorphism fixtures", quaternion_automorphisms),
        ("standard components of the cyclic quaternion map", example_standard_components),
        ("generator counts for quaternions and complex numbers", generator_counts),
        ("identity suites over Q and F5", identity_suites),
        ("polylinear suite", polylinear_suite),
        ("interchange checker", interchange_checker),
        ("deterministic reports", deterministic_reports),
    ];
    let start = Instant::now();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, (title, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panic".into())));
        match outcome {
            Ok(()) => println!("criterion {} PASS {title}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {title}: {why}", n + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
