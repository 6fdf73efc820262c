//! One PASS/FAIL line per acceptance criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ncspectra::closed_forms::{
    evaluate, standard_sweep, verify_many, FormulaId, PredictedValue, Status, Variant, DEFAULT_VERIFY_CAP,
};
use ncspectra::compare::{case_studies, frobenius_scan, REMARK_PAIRS};
use ncspectra::groups::{construct, GroupFamilySpec, Order16Group};
use ncspectra::integral_families::{certify_integral, fib_lucas_check, integral_graph_instances, square_table, square_table_csv};
use ncspectra::ncgraph::{adjacency_matrix, multipartite_graph, MultipartiteShape};
use ncspectra::oracle::brute_force;
use ncspectra::spectra::{
    all_ones_spectrum, exact_spectrum, kron_spectrum, multipartite_adjacency_spectrum, multipartite_laplacian_spectrum,
    numeric_eigenvalues, EnergyValue, SpectrumKind, SpectrumMultiset, Verdict,
};
use ncspectra::IntegerMatrix;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn exactly(e: &EnergyValue, n: i64) -> bool {
    e.as_rational() == Some(int(n))
}

fn sorted_approx(s: &SpectrumMultiset) -> Vec<f64> {
    let mut v = s.approx_values().expect("finite multiplicities");
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

fn criterion_1() -> Outcome {
    let specs = standard_sweep();
    let records = verify_many(&specs, DEFAULT_VERIFY_CAP);
    let mut refuted = Vec::new();
    let mut judged = 0;
    for r in &records {
        ensure(!r.is_skipped(), || format!("{} skipped: {:?}", r.spec, r.skipped))?;
        let checks = r.checks.as_ref().ok_or_else(|| format!("{} has no group checks", r.spec))?;
        ensure(checks.consistent(), || format!("{} order/center/quotient mismatch", r.spec))?;
        ensure(!r.outcomes.is_empty(), || format!("{} has no applicable formula", r.spec))?;
        for o in &r.outcomes {
            judged += 1;
            match &o.status {
                Status::Confirmed | Status::CorrectedVariantConfirmed => {}
                Status::Refuted(_) => refuted.push((r.spec.clone(), o.id(), o.variant())),
                Status::Skipped(why) => return Err(format!("{} {} skipped: {why}", r.spec, o.id())),
            }
        }
    }
    let odd_sd: Vec<u64> = specs
        .iter()
        .filter_map(|s| match s {
            GroupFamilySpec::SemiDihedral { n } if n % 2 == 1 && *n >= 3 => Some(*n),
            _ => None,
        })
        .collect();
    let mut expected = Vec::new();
    for &n in &odd_sd {
        for id in [FormulaId::SD8nOddSpec, FormulaId::SD8nOddE] {
            expected.push((GroupFamilySpec::SemiDihedral { n }, id, Variant::AsPrinted));
        }
    }
    let key = |x: &(GroupFamilySpec, FormulaId, Variant)| format!("{} {} {}", x.0, x.1, x.2.as_str());
    let mut got: Vec<String> = refuted.iter().map(key).collect();
    let mut want: Vec<String> = expected.iter().map(key).collect();
    got.sort();
    want.sort();
    ensure(got == want, || format!("refuted {got:?}, expected {want:?}"))?;
    Ok(format!("{} groups, {judged} formula checks, refuted only SD_8n odd as-printed spectrum and E at n = {odd_sd:?}", records.len()))
}

fn criterion_2() -> Outcome {
    for n in (3..=21u64).step_by(2) {
        let spec = GroupFamilySpec::SemiDihedral { n };
        let preds = evaluate(FormulaId::SD8nOddSpec, &spec).map_err(|e| e.to_string())?;
        let vertices = 8 * n as i64 - 4;
        let two_e = vertices * vertices - (n as i64 * 16 + (4 * n as i64 - 4).pow(2));
        for p in preds {
            let PredictedValue::Spectrum(s) = &p.value else { return Err("spectrum expected".into()) };
            let trace = s.power_sum(1);
            let squares = s.power_sum(2);
            let float_trace: f64 = s.entries().iter().map(|(v, m)| v.approx() * *m as f64).sum();
            match p.variant {
                Variant::AsPrinted => ensure(trace.is_exactly(&int(0)) == Some(false) && float_trace.abs() > 0.5, || {
                    format!("n = {n}: as-printed trace is zero")
                })?,
                Variant::TraceCorrected => {
                    ensure(trace.is_exactly(&int(0)) == Some(true), || format!("n = {n}: corrected trace {trace:?}"))?;
                    ensure(squares.is_exactly(&int(two_e)) == Some(true), || {
                        format!("n = {n}: corrected sum of squares {squares:?}, want {two_e}")
                    })?;
                    let top = s.multiplicity(&ncspectra::spectra::AlgebraicValue::int(-4));
                    ensure(top == (n - 1) as u128, || format!("n = {n}: (-4) has multiplicity {top}"))?;
                }
            }
        }
    }
    Ok("as-printed trace nonzero and corrected variant passes trace and 2|e| for odd n in 3..=21".into())
}

fn criterion_3() -> Outcome {
    let mut cases: Vec<(GroupFamilySpec, i64)> = vec![
        (GroupFamilySpec::V { n: 1 }, 8),
        (GroupFamilySpec::Dihedral { m: 4 }, 8),
        (GroupFamilySpec::Quaternion { m: 2 }, 8),
        (GroupFamilySpec::HanakiV { n: 2 }, 16),
    ];
    for (p, n) in [(2u32, 1u32), (3, 1), (2, 2)] {
        let (p, n) = (p as i64, n);
        cases.push((GroupFamilySpec::HanakiP { n, p: p as u32 }, 2 * (p.pow(3 * n) - p.pow(2 * n))));
    }
    for (spec, want) in &cases {
        let b = brute_force(&construct(spec).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(exactly(&b.energy, *want) && exactly(&b.laplacian_energy, *want), || {
            format!("{spec}: E = {}, LE = {}, want {want}", b.energy, b.laplacian_energy)
        })?;
    }
    Ok(format!("E = LE exactly for {} groups", cases.len()))
}

fn criterion_4() -> Outcome {
    let all = case_studies().map_err(|e| e.to_string())?;
    let get = |s: GroupFamilySpec| {
        let name = s.to_string();
        all.iter().find(|c| c.group == name).ok_or_else(|| format!("{name} missing")).cloned()
    };
    let prod = |a, b| GroupFamilySpec::DirectProduct(Box::new(a), Box::new(b));
    let exact = [
        (GroupFamilySpec::Alternating { n: 4 }, "6 + 2*sqrt(33)", "224/11"),
        (GroupFamilySpec::Sz2, "12 + 8*sqrt(6)", "690/19"),
        (GroupFamilySpec::SL23, "16 + 8*sqrt(7)", "552/11"),
        (prod(GroupFamilySpec::Dihedral { m: 3 }, GroupFamilySpec::Cyclic { n: 3 }), "6 + 6*sqrt(7)", "198/5"),
        (prod(GroupFamilySpec::Alternating { n: 4 }, GroupFamilySpec::Cyclic { n: 2 }), "12 + 4*sqrt(33)", "544/11"),
    ];
    for (spec, e, le) in exact {
        let c = get(spec)?;
        ensure(c.e.to_string() == e && c.le.to_string() == le, || format!("{}: E = {}, LE = {}", c.group, c.e, c.le))?;
        ensure(c.claim_matches() == (Some(true), Some(true)), || format!("{}: claims not matched", c.group))?;
        ensure(c.verdict == Verdict::Less, || format!("{}: verdict {}", c.group, c.verdict))?;
    }
    let a5 = get(GroupFamilySpec::Alternating { n: 5 })?;
    ensure((a5.e.approx() - 111.89).abs() <= 0.01, || format!("A5 E = {}", a5.e))?;
    ensure(a5.le.to_string() == "8580/59", || format!("A5 LE = {}", a5.le))?;
    ensure(a5.has_flag("spectrum-sign"), || format!("A5 flags {:?}", a5.flags))?;
    let s4 = get(GroupFamilySpec::Symmetric { n: 4 })?;
    ensure((s4.e.approx() - (35.866 + 4.0 * 5f64.sqrt())).abs() <= 0.01, || format!("S4 E = {}", s4.e))?;
    ensure(s4.le.to_string() == "1072/23 + 4*sqrt(13)", || format!("S4 LE = {}", s4.le))?;
    let sl = get(GroupFamilySpec::SL23)?;
    ensure(sl.has_flag("charpoly-degree"), || format!("SL(2,3) flags {:?}", sl.flags))?;
    for c in &all {
        ensure(c.verdict.is_at_most(), || format!("{}: verdict {}", c.group, c.verdict))?;
        ensure(!c.is_discrepant(), || format!("{}: {:?}", c.group, c.flags))?;
    }
    let order16 = [Order16Group::M16, Order16Group::Z4SemiZ4, Order16Group::D8CentralZ4, Order16Group::Sg16_3];
    for g in order16 {
        let c = get(GroupFamilySpec::Order16(g))?;
        ensure(exactly(&c.e, 16) && exactly(&c.le, 16), || format!("{}: E = {}, LE = {}", c.group, c.e, c.le))?;
    }
    Ok(format!("{} case studies match; A5 sign and SL(2,3) degree flags raised", all.len()))
}

fn criterion_5() -> Outcome {
    let golden = include_str!("../../cli/tests/data/square_table_28.csv");
    let csv = square_table_csv(28).map_err(|e| e.to_string())?;
    ensure(csv == golden, || "square table differs from the golden file".into())?;
    let last = square_table(28).pop().unwrap();
    ensure(last.n.to_string() == "7442093853169599697985", || format!("last row {}", last.n))?;
    let report = fib_lucas_check(28);
    ensure(report.ok && report.rows.len() == 28, || "Fibonacci/Lucas mismatch".into())?;
    for r in square_table(28) {
        let id = &r.sqrt_5n_minus_1 * &r.sqrt_5n_minus_1 - BigInt::from(5) * &r.sqrt_n_minus_1 * &r.sqrt_n_minus_1;
        ensure(id == BigInt::from(4), || format!("L^2 - 5F^2 = {id} at n = {}", r.n))?;
    }
    Ok("28 rows byte-exact, Fibonacci/Lucas and L^2 - 5F^2 = 4 hold".into())
}

fn criterion_6() -> Outcome {
    let instances = integral_graph_instances(10);
    for (i, case, shape) in &instances {
        let cert = certify_integral(shape);
        ensure(cert.integral, || format!("index {i} case {case}: {shape} not integral"))?;
        let total: u128 = cert.roots.iter().map(|(_, m)| m).sum();
        ensure(total == shape.total_vertices(), || format!("{shape}: roots cover {total} vertices"))?;
        let trace: BigInt = cert.roots.iter().map(|(r, m)| r * BigInt::from(*m)).sum();
        ensure(trace == BigInt::from(0), || format!("{shape}: trace {trace}"))?;
    }
    let k32 = MultipartiteShape::from_part_sizes(&[3, 2]).map_err(|e| e.to_string())?;
    ensure(!certify_integral(&k32).integral, || "K_{3,2} certified integral".into())?;
    Ok(format!("{} instances integral, K_{{3,2}} rejected", instances.len()))
}

fn criterion_7() -> Outcome {
    let rows = frobenius_scan(200, DEFAULT_VERIFY_CAP).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for c in &rows {
        let GroupFamilySpec::Frobenius { p, q } = c.spec.clone().unwrap() else { unreachable!() };
        let lt = c.condition("q2_lt").and_then(|v| v.as_bool()).unwrap();
        ensure(lt == (q * q < q + p + 1), || format!("{}: q2_lt wrong", c.group))?;
        ensure(!c.has_flag("discrepant: LE formula") && !c.has_flag("discrepant: E formula"), || {
            format!("{}: {:?}", c.group, c.flags)
        })?;
        if lt && p <= 200 {
            checked += 1;
            ensure(c.verdict.is_at_most(), || format!("{}: verdict {}", c.group, c.verdict))?;
        }
    }
    for (p, q) in REMARK_PAIRS {
        let name = GroupFamilySpec::Frobenius { p, q }.to_string();
        let c = rows.iter().find(|c| c.group == name).ok_or_else(|| format!("{name} missing"))?;
        let claimed = c.claims.as_ref().and_then(|cl| cl.verdict);
        ensure(claimed == Some(Verdict::Greater), || format!("{name}: claim {claimed:?}"))?;
        ensure(c.verdict == Verdict::Less, || format!("{name}: verdict {}", c.verdict))?;
        let indep = c.condition("independent_verdict").and_then(|v| v.as_str());
        ensure(indep == Some("E<LE"), || format!("{name}: independent verdict {indep:?}"))?;
        ensure(c.is_discrepant(), || format!("{name}: not flagged"))?;
    }
    Ok(format!("{} pairs scanned, {checked} with q^2 < q+p+1 all E<=LE; 4 remark pairs flagged", rows.len()))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 0..50 {
        let parts = rng.gen_range(2..=8);
        let mut sizes: Vec<u128> = (0..parts).map(|_| rng.gen_range(1..=15)).collect();
        while sizes.iter().sum::<u128>() > 120 {
            let i = sizes.iter().position(|&s| s > 1).unwrap();
            sizes[i] -= 1;
        }
        let shape = MultipartiteShape::from_part_sizes(&sizes).map_err(|e| e.to_string())?;
        let adj = multipartite_adjacency_spectrum(&shape).map_err(|e| e.to_string())?;
        let m = adjacency_matrix(&multipartite_graph(&shape).map_err(|e| e.to_string())?);
        let mut num = numeric_eigenvalues(&m, 1e-10).map_err(|e| e.to_string())?.values;
        num.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let exact = sorted_approx(&adj);
        ensure(exact.len() == num.len(), || format!("shape {k}: length mismatch"))?;
        let gap = exact.iter().zip(&num).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        ensure(gap <= 1e-6, || format!("{shape}: max gap {gap:e}"))?;
        let lap = multipartite_laplacian_spectrum(&shape).map_err(|e| e.to_string())?;
        let n: u128 = sizes.iter().sum();
        let two_e = n * n - sizes.iter().map(|s| s * s).sum::<u128>();
        ensure(lap.power_sum(1).is_exactly(&BigRational::from_integer(two_e.into())) == Some(true), || {
            format!("{shape}: Laplacian trace is not 2|e| = {two_e}")
        })?;
    }
    Ok("50 random shapes agree within 1e-6; Laplacian traces equal 2|e|".into())
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let d = rng.gen_range(1..=4);
        let mut x = IntegerMatrix::zeros(d);
        for i in 0..d {
            for j in i..d {
                let v = rng.gen_range(-3..=3);
                x.set(i, j, v);
                x.set(j, i, v);
            }
        }
        let k = rng.gen_range(1..=5);
        let product = x.kron(&IntegerMatrix::all_ones(k));
        let xs = exact_spectrum(&x, SpectrumKind::Adjacency).map_err(|e| e.to_string())?;
        let predicted = kron_spectrum(&xs, &all_ones_spectrum(k as u128)).map_err(|e| e.to_string())?;
        let mut num = numeric_eigenvalues(&product, 1e-12).map_err(|e| e.to_string())?.values;
        num.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let want = sorted_approx(&predicted);
        ensure(want.len() == num.len(), || "size mismatch".into())?;
        let gap = want.iter().zip(&num).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        ensure(gap <= 1e-8, || format!("X = {:?}, k = {k}: gap {gap:e}", x.as_slice()))?;
    }
    Ok("20 random X (x) J_k products match kron_spectrum within 1e-8".into())
}

fn criterion_10() -> Outcome {
    let mut specs = standard_sweep();
    specs.extend(ncspectra::compare::case_study_groups());
    specs.extend([5u32, 6].map(|n| GroupFamilySpec::QuasiDihedral { n }));
    for spec in &specs {
        let g = construct(spec).map_err(|e| format!("{spec}: {e}"))?;
        g.check_axioms().map_err(|e| format!("{spec}: {e}"))?;
        ensure(g.order() as u128 == spec.predicted_order(), || format!("{spec}: order {}", g.order()))?;
        if let Some(z) = spec.predicted_center_order() {
            ensure(g.center().len() as u128 == z, || format!("{spec}: |Z| = {}, predicted {z}", g.center().len()))?;
        }
        let want = match spec {
            GroupFamilySpec::V { .. } => Some(2),
            GroupFamilySpec::SemiDihedral { n } => Some(if n % 2 == 1 { 4 } else { 2 }),
            GroupFamilySpec::Frobenius { .. } => Some(1),
            GroupFamilySpec::HanakiV { n } => Some(1usize << n),
            _ => None,
        };
        if let Some(w) = want {
            ensure(g.center().len() == w, || format!("{spec}: |Z| = {}, want {w}", g.center().len()))?;
        }
    }
    Ok(format!("{} groups pass the axioms, orders and center orders", specs.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("closed-form agreement sweep", criterion_1),
        ("trace detector", criterion_2),
        ("boundary equalities", criterion_3),
        ("case studies", criterion_4),
        ("square table", criterion_5),
        ("integrality", criterion_6),
        ("Frobenius scan", criterion_7),
        ("oracle consistency", criterion_8),
        ("Kronecker law", criterion_9),
        ("group sanity", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why} ({secs:.1}s)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
