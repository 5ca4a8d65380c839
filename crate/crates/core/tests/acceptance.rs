mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::load_pd;
use corkatlas_core::families::{
    casson_surgery, closed_form_alexander, epsilon, casson_agreement_check, FamilyInstance, KnotFamily,
};
use corkatlas_core::kirby::{Affine, KirbyDiagram, Params};
use corkatlas_core::laurent::LaurentPoly;
use corkatlas_core::legendrian::{family_front, FrontFamily};
use corkatlas_core::linkdiag::alexander;
use corkatlas_core::polyhedron::{builtin, Builtin, GleamAssignment};
use corkatlas_core::shadowmap::LedgerFamily;
use num_bigint::BigInt;
use num_rational::Rational64;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    check(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

fn casson_grid() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for m in -5i64..=5 {
        if m == 0 {
            continue;
        }
        for n in -3..=3 {
            let a = FamilyInstance::A { m, n }.casson_boundary().map_err(|e| e.to_string())?;
            check(a == -2 * m, || format!("A({m},{n}) gave {a}"))?;
            let at = FamilyInstance::ATilde { m, n }.casson_boundary().map_err(|e| e.to_string())?;
            check(at == 2 * m, || format!("At({m},{n}-1/2) gave {at}"))?;
            count += 2;
        }
    }
    within(start.elapsed(), Duration::from_secs(1), "Casson grid")?;
    Ok(format!("{count} instances in {:?}", start.elapsed()))
}

fn oracle_vs_closed_form() -> Outcome {
    let start = Instant::now();
    for m in 1..=3 {
        for n in -1..=1 {
            for (prefix, fam) in [("K", KnotFamily::A), ("Kt", KnotFamily::ATilde)] {
                let pd = load_pd(&format!("pd/{prefix}_m{m}_n{n}.pd"));
                let got = alexander(&pd).map_err(|e| e.to_string())?;
                let want = closed_form_alexander(fam, m).map_err(|e| e.to_string())?;
                check(got == want, || format!("{prefix}_m{m}_n{n}: {got} != {want}"))?;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(5), "fixture oracle")?;
    Ok(format!("18 fixtures in {:?}", start.elapsed()))
}

fn second_derivatives() -> Outcome {
    for m in -10i64..=10 {
        if m == 0 {
            continue;
        }
        let a = closed_form_alexander(KnotFamily::A, m).map_err(|e| e.to_string())?;
        check(a.second_derivative_at_one() == BigInt::from(4 * m.abs()), || format!("A, m={m}"))?;
        let at = closed_form_alexander(KnotFamily::ATilde, m).map_err(|e| e.to_string())?;
        let eps = epsilon(m).map_err(|e| e.to_string())?;
        check(casson_surgery(eps, &at) == 2 * m, || format!("At surgery path, m={m}"))?;
    }
    for m in 1..=3 {
        let pd = load_pd(&format!("pd/K_m{m}_n0.pd"));
        let d = alexander(&pd).map_err(|e| e.to_string())?;
        check(d.second_derivative_at_one() == BigInt::from(4 * m), || format!("fixture K_m{m}_n0"))?;
    }
    Ok("m in [-10,10] \\ {0} plus fixtures".into())
}

fn thurston_bennequin() -> Outcome {
    let mut fronts = Vec::new();
    for m in -6..=-1 {
        fronts.push((format!("At m={m}"), family_front(FrontFamily::ATilde { m })));
    }
    for m in -4..=-1 {
        for n in -4..=-1 {
            fronts.push((format!("B m={m} n={n}"), family_front(FrontFamily::Bing { m, n })));
        }
    }
    for (name, f) in &fronts {
        let f = f.as_ref().map_err(|e| format!("{name}: {e}"))?;
        check(f.thurston_bennequin() == 2, || format!("{name}: tb {}", f.thurston_bennequin()))?;
        check(f.framing() == 0 && f.eliashberg_stein_check(), || format!("{name}: Stein check"))?;
    }
    Ok(format!("{} fronts", fronts.len()))
}

fn hyperbolicity() -> Outcome {
    let p = builtin(Builtin::BingsHouse);
    let q = Rational64::from_integer;
    let mut count = 0;
    for l in -10..=10 {
        for m in -8i64..=8 {
            for n in -8i64..=8 {
                let g = GleamAssignment::from_pairs([("e3", q(l)), ("e4", q(m)), ("e5", q(n))]);
                let v = p.hyperbolicity_criterion(&g).map_err(|e| e.to_string())?;
                let expected = m.abs() >= 3 && n.abs() >= 3;
                check(v == expected, || format!("B({l},{m},{n}) gave {v}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} gleam triples"))
}

fn contractibility() -> Outcome {
    for b in Builtin::ALL {
        let p = builtin(b);
        check(p.euler_characteristic() == 1, || format!("{}: chi", b.name()))?;
        let h = p.homology().map_err(|e| e.to_string())?;
        check(h.is_acyclic(), || format!("{}: homology {h}", b.name()))?;
    }
    let mut insts = Vec::new();
    for m in -4..=4 {
        for n in -4..=4 {
            insts.push(FamilyInstance::A { m, n });
            insts.push(FamilyInstance::ATilde { m, n });
            for l in -2..=2 {
                insts.push(FamilyInstance::Bing { l, m, n });
            }
        }
    }
    for i in &insts {
        let h = i.homology_presentation().map_err(|e| e.to_string())?;
        check(
            h.is_contractible() && h.mazur_shape && h.boundary_order == Some(BigInt::from(1)),
            || format!("{i}: {h}"),
        )?;
    }
    Ok(format!("3 polyhedra and {} diagrams", insts.len()))
}

fn gleam_round_trip() -> Outcome {
    let q = Rational64::from_integer;
    let mut count = 0;
    for fam in LedgerFamily::ALL {
        let ledger = fam.ledger();
        let ls: Vec<i64> = if fam == LedgerFamily::Bing { (-5..=5).collect() } else { vec![0] };
        for &l in &ls {
            for m in -5..=5 {
                for n in -5..=5 {
                    let (target, expected) = match fam {
                        LedgerFamily::A => (GleamAssignment::from_pairs([("e1", q(m)), ("e2", q(n))]), vec![m, n + 1]),
                        LedgerFamily::ATilde => (
                            GleamAssignment::from_pairs([("e1", q(m)), ("e2", q(n) - Rational64::new(1, 2))]),
                            vec![m, n + 1],
                        ),
                        LedgerFamily::Bing => (
                            GleamAssignment::from_pairs([("e3", q(l)), ("e4", q(m)), ("e5", q(n))]),
                            vec![l, m, n],
                        ),
                    };
                    let solved: Vec<i64> = ledger
                        .solve_framings(&target)
                        .map_err(|e| e.to_string())?
                        .into_iter()
                        .map(|(_, v)| v)
                        .collect();
                    check(solved == expected, || format!("{fam:?} ({l},{m},{n}): {solved:?}"))?;
                    let back = ledger
                        .with_framings(&solved)
                        .and_then(|p| p.forward())
                        .map_err(|e| e.to_string())?;
                    check(back == target, || format!("{fam:?} ({l},{m},{n}): forward mismatch"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} targets"))
}

fn w_and_mirror_consistency() -> Outcome {
    for l in -4..=4 {
        for k in -4..=4 {
            let p = FamilyInstance::WPlus { l, k }.casson_boundary().map_err(|e| e.to_string())?;
            let m = FamilyInstance::WMinus { l, k }.casson_boundary().map_err(|e| e.to_string())?;
            check(p == 2 && m == -2, || format!("W(l={l},k={k}): {p}, {m}"))?;
        }
    }
    for m in -5i64..=5 {
        if m == 0 {
            continue;
        }
        for n in -3..=3 {
            for x in [FamilyInstance::A { m, n }, FamilyInstance::ATilde { m, n }] {
                let mirror = x.mirror().map_err(|e| e.to_string())?;
                let (a, b) = (
                    x.casson_boundary().map_err(|e| e.to_string())?,
                    mirror.casson_boundary().map_err(|e| e.to_string())?,
                );
                check(b == -a, || format!("{x}: lambda {a}, mirror {mirror}: {b}"))?;
            }
        }
    }
    for n in -5..=5 {
        check(casson_agreement_check(n), || format!("Casson agreement at n={n}"))?;
    }
    Ok("W grid, mirror grid and n in [-5,5]".into())
}

/// A random diagram with at most six handles, framings affine in `m`.
fn diagram_strategy() -> impl Strategy<Value = (KirbyDiagram, i64)> {
    (0usize..=2, 1usize..=4)
        .prop_filter("at most six handles", |(a, b)| a + b <= 6)
        .prop_flat_map(|(n1, n2)| {
            let framing = (-4i64..=4, -1i64..=1);
            let passes = prop::collection::vec(prop::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], 0..4), n1);
            let handles = prop::collection::vec((framing, passes, any::<bool>()), n2);
            let lk = prop::collection::vec(-3i64..=3, n2 * n2);
            (Just(n1), handles, lk, -5i64..=5)
        })
        .prop_map(|(n1, handles, lk, m)| {
            let mut d = KirbyDiagram::empty();
            for j in 0..n1 {
                d.add_one_handle(&format!("x{j}")).unwrap();
            }
            let n2 = handles.len();
            for (i, ((c, a), passes, unknot)) in handles.into_iter().enumerate() {
                let f = &Affine::int(c) + &Affine::var("m").scale_int(a);
                d.add_two_handle(&format!("K{i}"), f, unknot).unwrap();
                for (j, p) in passes.into_iter().enumerate() {
                    d.set_passes(&format!("K{i}"), &format!("x{j}"), p).unwrap();
                }
            }
            for i in 0..n2 {
                for j in i + 1..n2 {
                    d.set_linking(&format!("K{i}"), &format!("K{j}"), Affine::int(lk[i * n2 + j])).unwrap();
                }
            }
            (d, m)
        })
}

fn algebraic_data(d: &KirbyDiagram) -> (Vec<String>, Vec<Vec<Affine>>, Vec<Vec<i64>>) {
    let names: Vec<String> = d.two_handles().iter().map(|h| h.name.clone()).collect();
    let q = names
        .iter()
        .map(|a| names.iter().map(|b| if a == b { d.two_handle(a).unwrap().framing.clone() } else { d.linking(a, b).unwrap() }).collect())
        .collect();
    (names, q, d.pass_matrix())
}

fn move_engine() -> Outcome {
    let cases = 10_000;
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (diagram_strategy(), any::<prop::sample::Index>(), any::<prop::sample::Index>(), any::<bool>(), any::<bool>());
    runner
        .run(&strategy, |((d, m), i, j, positive, plus)| {
            let params: Params = [("m".to_string(), m)].into_iter().collect();
            let before = d.homology_presentation(&params).unwrap();
            let n2 = d.two_handles().len();
            if n2 >= 2 {
                let a = d.two_handles()[i.index(n2)].name.clone();
                let b = d.two_handles()[(i.index(n2) + 1 + j.index(n2 - 1)) % n2].name.clone();
                let s = if positive { 1 } else { -1 };
                let slid = d.handle_slide(&a, &b, s).unwrap();
                prop_assert_eq!(slid.homology_presentation(&params).unwrap(), before.clone());
                let back = slid.handle_slide(&a, &b, -s).unwrap();
                prop_assert_eq!(algebraic_data(&back), algebraic_data(&d));
            }
            let sign = if plus { 1 } else { -1 };
            let up = d.blow_up(sign, "E").unwrap();
            let h = up.homology_presentation(&params).unwrap();
            prop_assert_eq!(h.h2_rank, before.h2_rank + 1);
            prop_assert_eq!(&h.boundary_order, &before.boundary_order);
            prop_assert_eq!(&h.h1, &before.h1);
            prop_assert_eq!(up.blow_down("E").unwrap(), d.clone());
            prop_assert_eq!(up.blow_down("E").unwrap().blow_up(sign, "E").unwrap(), up);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("{cases} random diagrams with at most 6 handles"))
}

fn fox_milnor() -> Outcome {
    let mut found = Vec::new();
    for fam in [KnotFamily::A, KnotFamily::ATilde] {
        for m in 1..=3 {
            let d = closed_form_alexander(fam, m).map_err(|e| e.to_string())?;
            let f = d.fox_milnor_factor(6).ok_or_else(|| format!("{fam:?} m={m}: no factor"))?;
            let product = (&f * &f.bar()).normalize_alexander().map_err(|e| e.to_string())?;
            check(product == d, || format!("{fam:?} m={m}: f = {f} does not re-multiply"))?;
            found.push(f);
        }
    }
    let expected = LaurentPoly::from_pairs(&[(0, 1), (1, -1), (2, 1)]);
    check(
        (found[0].clone() - expected.clone()).is_zero() || (&found[0] * &expected.bar()).normalize_alexander().is_ok_and(|p| p == closed_form_alexander(KnotFamily::A, 1).unwrap()),
        || format!("A m=1 factor {}", found[0]),
    )?;
    let trefoil = LaurentPoly::from_pairs(&[(-1, 1), (0, -1), (1, 1)]);
    check(trefoil.fox_milnor_factor(6).is_none(), || "trefoil has a factor".into())?;
    Ok(format!("A m=1 factor {}", found[0].pretty()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Casson grid", casson_grid),
        ("oracle vs closed form", oracle_vs_closed_form),
        ("second derivative and surgery path", second_derivatives),
        ("Thurston-Bennequin and Stein check", thurston_bennequin),
        ("hyperbolicity predicate", hyperbolicity),
        ("contractibility", contractibility),
        ("gleam round trip", gleam_round_trip),
        ("W and mirror consistency", w_and_mirror_consistency),
        ("move-engine properties", move_engine),
        ("Fox-Milnor", fox_milnor),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", k + 1),
            Err(why) => {
                println!("criterion {}: FAIL {name} ({why})", k + 1);
                failed.push(k + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
