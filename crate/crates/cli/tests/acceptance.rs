//! Acceptance suite: one PASS/FAIL line per criterion, each timed against
//! its budget. Reference values come from the hand-checked oracle in
//! `oracle/`, which shares no code with the engine.

mod oracle;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use gordual::{parse_dsl, run};
use gordual_core::chart::{parse_chart, Chart, Dot, Edge, EdgeKind, Orientation};
use gordual_core::complex::{ext_complex, ext_into_ring, free_resolution, koszul_complex, minimize};
use gordual_core::degreewise::{expand_degreewise, matlis_dual};
use gordual_core::duality::{gorenstein_check, k_level_ses, uct_verify};
use gordual_core::groebner::{buchberger, normal_form, TermOrder};
use gordual_core::local_cohomology::local_cohomology;
use gordual_core::poly::monomials_of_degree;
use gordual_core::ring::make_ring;
use gordual_core::{CoefficientRing, FreeModule, FreeVector, GradedRing, GroupDescriptor, ModulePresentation, Poly};
use oracle::{int, koszul, var, Elt, Group, Resolution, Ring};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut argv = vec!["gordual"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn to_descriptor(g: &Group, field: bool) -> GroupDescriptor {
    if field {
        GroupDescriptor::free(g.free)
    } else {
        GroupDescriptor { free_rank: g.free, torsion: g.torsion.clone() }
    }
}

// ---------------------------------------------------------------- 1

fn shift_json(args: &[&str]) -> Result<serde_json::Value, String> {
    let mut a = vec!["--format", "json", "shift"];
    a.extend_from_slice(args);
    let (code, out, err) = cli(&a, "");
    ensure(code == 0, || format!("shift {args:?} exited {code}: {err}"))?;
    serde_json::from_str(&out).map_err(|e| e.to_string())
}

fn criterion_1() -> Check {
    let mut checked = 0;
    for p in [2u64, 3, 5] {
        let v = shift_json(&["--hz", &p.to_string()])?;
        ensure(v["a"] == -1, || format!("HZ_({p}): a = {}", v["a"]))?;
        checked += 1;
    }
    let (code, out, _) = cli(&["shift", "--bp", "2", "1"], "");
    ensure(code == 0 && out.contains("D=2") && out.contains("a=-4"), || format!("ku: {out}"))?;
    for p in [2i64, 3, 5] {
        for n in 0..=6u32 {
            let explicit: i64 = (1..=n).map(|i| 2 * (p.pow(i) - 1)).sum();
            let closed = 2 * ((p.pow(n + 1) - 1) / (p - 1) - (n as i64 + 1));
            ensure(explicit == closed, || format!("closed form fails at p={p} n={n}"))?;
            let a = -explicit - (n as i64 + 1);
            let bp = shift_json(&["--bp", &p.to_string(), &n.to_string()])?;
            ensure(bp["degree_sum"] == serde_json::json!([closed, explicit]) && bp["a"] == a, || {
                format!("BP<{n}> at {p}: {bp}")
            })?;
            let jw = shift_json(&["--jw", &p.to_string(), &n.to_string()])?;
            ensure(jw["a"] == a && jw["modulus"] == 2 * (p.pow(n + 1) - 1), || format!("E({}) at {p}: {jw}", n + 1))?;
            checked += 2;
        }
        for n in 1..=4u32 {
            let lt = shift_json(&["--lubin-tate", &p.to_string(), &n.to_string()])?;
            let a = lt["a"].as_i64().unwrap();
            ensure(lt["modulus"] == 2 && (a + n as i64 + 1) % 2 == 0, || format!("Lubin-Tate n={n}: {lt}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} shifts"))
}

// ---------------------------------------------------------------- 2

fn engine_ring(r: &Ring) -> GradedRing {
    let coeff = if r.field { CoefficientRing::prime_field(r.p) } else { CoefficientRing::p_local(r.p) }.unwrap();
    let names: Vec<String> = (0..r.weights.len()).map(|i| format!("x{i}")).collect();
    let gens: Vec<(&str, i64)> = names.iter().map(String::as_str).zip(r.weights.iter().copied()).collect();
    make_ring(coeff, &gens, &[]).unwrap()
}

fn residue_resolution(r: &Ring) -> Resolution {
    let mut elems: Vec<(Elt, i64)> = (0..r.weights.len()).map(|i| (var(r, i, 1), r.weights[i])).collect();
    if !r.field {
        elems.push((int(r, r.p as i64), 0));
    }
    koszul(&elems)
}

fn criterion_2() -> Check {
    let rings = [
        Ring::new(2, true, &[1]),
        Ring::new(3, true, &[2]),
        Ring::new(2, true, &[1, 1]),
        Ring::new(3, true, &[2, 4]),
        Ring::new(5, true, &[1, 2, 3]),
        Ring::new(2, false, &[2]),
        Ring::new(3, false, &[4]),
        Ring::new(2, false, &[2, 6]),
        Ring::new(5, false, &[6]),
        Ring::new(2, false, &[1, 3, 5]),
    ];
    for r in &rings {
        let (n, b) = (r.dim(), r.b());
        // oracle: Hom of the Koszul resolution of k
        let hom = residue_resolution(r).hom();
        let mut nonzero = Vec::new();
        for t in b - 3..=3 {
            for i in 0..=n {
                let g = hom.homology(r, i, t);
                if !g.is_zero() {
                    nonzero.push((i, t, g));
                }
            }
        }
        ensure(nonzero == vec![(n, b, r.k())], || format!("oracle on {r:?}: {nonzero:?}"))?;
        let ring = engine_ring(r);
        let report = gorenstein_check(&ring, None, None).map_err(|e| e.to_string())?;
        let k = to_descriptor(&r.k(), r.field);
        ensure(report.passed() && report.nonzero == vec![(n, b, k)] && report.observed == Some((n, b)), || report.to_text())?;
        let c = -i64::from(!r.field);
        ensure(report.symbolic.a == b + c - r.weights.len() as i64 && report.symbolic.a == b - n as i64, || report.to_text())?;
    }
    Ok(format!("{} rings", rings.len()))
}

// ---------------------------------------------------------------- 3

/// A torsion fixture: DSL text, oracle ring, hand-written resolution and
/// hand-computed degree pieces.
struct Fixture {
    label: &'static str,
    text: String,
    ring: Ring,
    resolution: Resolution,
    pieces: BTreeMap<i64, Group>,
}

fn fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    for k in 1..=3u32 {
        let r = Ring::new(2, true, &[1]);
        out.push(Fixture {
            label: ["F2[x]/(x)", "F2[x]/(x^2)", "F2[x]/(x^3)"][k as usize - 1],
            text: format!("ring A = Fp(2)[x:1]; module M over A {{ gen m:0; rel x^{k}*m; }}"),
            resolution: Resolution { degrees: vec![vec![0], vec![k as i64]], diffs: vec![vec![vec![var(&r, 0, k)]]] },
            pieces: (0..k as i64).map(|d| (d, Group::dim(1))).collect(),
            ring: r,
        });
    }
    let r = Ring::new(2, true, &[1, 1]);
    let (x, y) = (|e| var(&r, 0, e), |e| var(&r, 1, e));
    let xy: Elt = vec![(1, vec![1, 1])];
    out.push(Fixture {
        label: "F2[x,y]/(x^2,xy,y^3)",
        text: fs(&fixture("fxy.gor")),
        resolution: Resolution {
            degrees: vec![vec![0], vec![2, 2, 3], vec![3, 4]],
            diffs: vec![
                vec![vec![x(2), xy.clone(), y(3)]],
                vec![vec![y(1), oracle::zero()], vec![oracle::neg(&x(1)), y(2)], vec![oracle::zero(), oracle::neg(&x(1))]],
            ],
        },
        pieces: [(0, Group::dim(1)), (1, Group::dim(2)), (2, Group::dim(1))].into_iter().collect(),
        ring: r.clone(),
    });
    // A / (c, v^e) for a unit-free constant c = p^j: Koszul on the pair
    let pair = |label, text: String, p: u64, w: i64, c: i64, e: u32, pieces: Vec<(i64, Group)>| {
        let r = Ring::new(p, false, &[w]);
        Fixture {
            label,
            text,
            resolution: koszul(&[(int(&r, c), 0), (var(&r, 0, e), w * e as i64)]),
            pieces: pieces.into_iter().collect(),
            ring: r,
        }
    };
    out.push(pair("Z(2)[v1]/(8,v1^2)", fs(&fixture("ku_torsion.gor")), 2, 2, 8, 2, vec![(0, Group::cyclic(&[3])), (2, Group::cyclic(&[3]))]));
    out.push(pair(
        "Z(2)[v1]/(2,v1^3)",
        fs(&fixture("ku_mod2.gor")),
        2,
        2,
        2,
        3,
        vec![(0, Group::cyclic(&[1])), (2, Group::cyclic(&[1])), (4, Group::cyclic(&[1]))],
    ));
    out.push(pair("Z(3)[v1]/(9,v1^2)", fs(&fixture("ku3.gor")), 3, 4, 9, 2, vec![(0, Group::cyclic(&[2])), (4, Group::cyclic(&[2]))]));
    out.push(pair(
        "Z(2)[v1]/(2,v1)",
        "ring R = Zp(2)[v1:2]; module M over R { gen m:0; rel 2*m; rel v1*m; }".into(),
        2,
        2,
        2,
        1,
        vec![(0, Group::cyclic(&[1]))],
    ));
    let r = Ring::new(3, true, &[2, 4]);
    out.push(Fixture {
        label: "F3[x,y]/(x^2,y)",
        text: "ring A = Fp(3)[x:2, y:4]; module M over A { gen m:0; rel x^2*m; rel y*m; }".into(),
        resolution: koszul(&[(var(&r, 0, 2), 4), (var(&r, 1, 1), 4)]),
        pieces: [(0, Group::dim(1)), (2, Group::dim(1))].into_iter().collect(),
        ring: r,
    });
    out
}

fn fs(path: &str) -> String {
    std::fs::read_to_string(path).unwrap()
}

fn module_of(f: &Fixture) -> ModulePresentation {
    parse_dsl(&f.text).unwrap().1.remove(0)
}

const UCT_WINDOW: (i64, i64) = (-12, 4);

fn criterion_3() -> Check {
    let fixtures = fixtures();
    for f in &fixtures {
        let r = &f.ring;
        let (n, b) = (r.dim(), r.b());
        let res = &f.resolution;
        // the hand resolution is a complex, exact, with H_0 = M
        for d in -2..=14 {
            ensure(res.chain().squares_to_zero(r, d), || format!("{}: d^2 != 0 in degree {d}", f.label))?;
            for i in 0..=res.length() {
                let want = if i == 0 { f.pieces.get(&d).cloned().unwrap_or_default() } else { Group::zero() };
                ensure(res.homology(r, i, d) == want, || format!("{}: H_{i} in degree {d}", f.label))?;
            }
        }
        // oracle Ext: concentrated at n, equal to M_{b-t} there
        let hom = res.hom();
        let m = module_of(f);
        let engine = ext_into_ring(&m, n + 1, UCT_WINDOW).map_err(|e| e.to_string())?;
        for t in UCT_WINDOW.0..=UCT_WINDOW.1 {
            for i in 0..=n {
                let g = hom.homology(r, i, t);
                let want = if i == n { f.pieces.get(&(b - t)).cloned().unwrap_or_default() } else { Group::zero() };
                ensure(g == want, || format!("{}: oracle Ext^{i}_{t} = {g:?}, expected {want:?}", f.label))?;
                ensure(engine.get(i, t) == to_descriptor(&g, r.field), || format!("{}: engine Ext^{i}_{t} = {:?}", f.label, engine.get(i, t)))?;
            }
        }
        let report = uct_verify(&m, UCT_WINDOW).map_err(|e| e.to_string())?;
        ensure(report.verdict && report.concentrated && report.n == n && report.b == b, || report.to_text())?;
        for row in &report.degrees {
            let want = to_descriptor(&f.pieces.get(&(b - row.degree)).cloned().unwrap_or_default(), r.field);
            ensure(row.dual == want && row.ext == want, || format!("{}: row {row:?}", f.label))?;
        }
        ensure(!report.actions.is_empty() || f.pieces.len() == 1, || format!("{}: no action rows", f.label))?;
    }
    let (code, out, _) = cli(&["uct-verify", "-m", &fixture("ku_torsion.gor"), "--window", "-10", "10"], "");
    ensure(code == 0 && out.contains("verdict: PASS"), || out)?;
    Ok(format!("{} modules", fixtures.len()))
}

// ---------------------------------------------------------------- 4

fn criterion_4() -> Check {
    for p in [2u64, 3] {
        let r = Ring::new(p, true, &[1, 1]);
        let ring = engine_ring(&r);
        let m = ModulePresentation::free(&ring, vec![0]).map_err(|e| e.to_string())?;
        let ideal: Vec<Poly> = (0..2).map(|i| Poly::var(&ring, i)).collect();
        let h = local_cohomology(&m, &ideal, (-10, 2)).map_err(|e| e.to_string())?;
        for t in -10..=2 {
            for i in 0..=2 {
                let want = if i == 2 { oracle::monomials(&r.weights, r.b() - t).len() } else { 0 };
                ensure(h.get(i, t) == GroupDescriptor::free(want), || format!("F_{p}[x,y]: H^{i}_{t} = {:?}", h.get(i, t)))?;
            }
        }
    }
    let fixtures = fixtures();
    for f in &fixtures {
        let m = module_of(f);
        let ring = &m.ring;
        let mut ideal: Vec<Poly> = (0..ring.nvars()).map(|i| Poly::var(ring, i)).collect();
        if !f.ring.field {
            ideal.push(Poly::constant(ring, ring.coeff.from_int(f.ring.p as i64)));
        }
        let window = (-4, 10);
        let h = local_cohomology(&m, &ideal, window).map_err(|e| e.to_string())?;
        for d in window.0..=window.1 {
            for i in 0..=f.ring.dim() {
                let want = if i == 0 { f.pieces.get(&d).cloned().unwrap_or_default() } else { Group::zero() };
                ensure(h.get(i, d) == to_descriptor(&want, f.ring.field), || format!("{}: H^{i}_{d} = {:?}", f.label, h.get(i, d)))?;
            }
        }
    }
    Ok(format!("2 polynomial rings, {} torsion modules", fixtures.len()))
}

// ---------------------------------------------------------------- 5

fn criterion_5() -> Check {
    let (fig1, fig2) = (fixture("fig1.chart"), fixture("fig2.chart"));
    let (code, dual, err) = cli(&["chart", "dual", &fig2, "--shift", "-4"], "");
    ensure(code == 0, || err)?;
    let (code, diff, err) = cli(&["chart", "compare", "-", &fig1], &dual);
    ensure(code == 0 && diff.ends_with("no differences\n"), || format!("{diff}{err}"))?;
    ensure(dual.lines().any(|l| l == "dot 34 0"), || "dual lacks dot 34 0".into())?;
    let (_, traced, _) = cli(&["chart", "dual", &fig2, "--shift", "-4", "--trace"], "");
    ensure(traced.lines().any(|l| l == "# (30,7) -> (34,0)"), || "anchor (30,7) -> (34,0) missing".into())?;
    let skipped = diff.lines().next().unwrap_or_default().to_string();
    Ok(skipped)
}

// ---------------------------------------------------------------- 6

fn criterion_6() -> Check {
    let m = parse_dsl(&fs(&fixture("mixed.gor"))).unwrap().1.remove(0);
    let window = (-6, 10);
    let report = k_level_ses(&m, window).map_err(|e| e.to_string())?;
    ensure(report.verdict && !report.p_torsion, || report.to_text())?;
    // M_0 = Z_(2), M_2 = Z/2, a = -4: Hom part at t = 3, Ext part at t = 6
    for row in &report.rows {
        let (ext, hom) = match row.t {
            3 => (GroupDescriptor::zero(), GroupDescriptor::free(1)),
            6 => (GroupDescriptor::torsion(vec![1]), GroupDescriptor::zero()),
            _ => (GroupDescriptor::zero(), GroupDescriptor::zero()),
        };
        ensure(row.ext_part == ext && row.hom_part == hom, || format!("mixed: row {row:?}"))?;
        ensure(row.torsion_length == ext.torsion.iter().sum::<u32>() && row.free_rank == hom.free_rank, || format!("mixed: counts {row:?}"))?;
    }
    // oracle: the hand resolution 0 -> A(-4) -> A(-4) + A(-2) -> A gives the same Ext^1 and Ext^2
    let r = Ring::new(2, false, &[2]);
    let res = Resolution {
        degrees: vec![vec![0], vec![4, 2], vec![4]],
        diffs: vec![
            vec![vec![var(&r, 0, 2), vec![(2, vec![1])]]],
            vec![vec![int(&r, 2)], vec![oracle::neg(&var(&r, 0, 1))]],
        ],
    };
    let hom = res.hom();
    for row in &report.rows {
        let top = to_descriptor(&hom.homology(&r, 2, 2 - row.t), false);
        let next = to_descriptor(&hom.homology(&r, 1, 1 - row.t), false);
        ensure(row.engine_top == top && row.engine_next == next, || format!("mixed: oracle Ext disagrees at t={}", row.t))?;
    }
    // purely p-torsion fixtures: no Hom part, Ext part equal to the uct-verify orders
    for name in ["ku_torsion.gor", "ku_mod2.gor", "ku3.gor"] {
        let m = parse_dsl(&fs(&fixture(name))).unwrap().1.remove(0);
        let ses = k_level_ses(&m, window).map_err(|e| e.to_string())?;
        let uct = uct_verify(&m, (-12, 8)).map_err(|e| e.to_string())?;
        ensure(ses.verdict && ses.p_torsion, || ses.to_text())?;
        for row in &ses.rows {
            let deg = ses.n as i64 - row.t;
            let Some(u) = uct.degrees.iter().find(|u| u.degree == deg) else { continue };
            ensure(row.hom_part.is_zero() && row.ext_part == u.ext, || format!("{name}: t={} {row:?} vs {u:?}", row.t))?;
        }
    }
    let (code, out, _) = cli(&["ses-k", "-m", &fixture("mixed.gor"), "--window", "-6", "10"], "");
    ensure(code == 0, || out)?;
    Ok("mixed module and 3 torsion fixtures".into())
}

// ---------------------------------------------------------------- 7

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config { cases, failure_persistence: None, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn prop_ring(kind: u8, degs: &[i64]) -> GradedRing {
    let p = if kind.is_multiple_of(2) { 2 } else { 3 };
    engine_ring(&Ring::new(p, kind % 4 < 2, degs))
}

fn prop_poly(ring: &GradedRing, d: i64, coeffs: &[i8]) -> Poly {
    let c = ring.coeff;
    let terms = monomials_of_degree(&ring.weights(), d).into_iter().zip(coeffs).map(|(m, &k)| (m, c.from_int(k as i64))).collect();
    Poly::from_terms(&c, terms)
}

fn prop_module(ring: &GradedRing, powers: &[u32], pk: u32, extra: &[i8]) -> ModulePresentation {
    let c = ring.coeff;
    let mut rels: Vec<Poly> = (0..ring.nvars()).map(|i| Poly::var(ring, i).pow(&c, ring.nvars(), powers[i])).collect();
    if !c.is_field() {
        rels.push(Poly::constant(ring, c.p_power(pk)));
    }
    rels.push(prop_poly(ring, 2, extra));
    let rels = rels.into_iter().filter(|p| !p.is_zero()).map(|p| FreeVector::from_polys(&[p])).collect();
    ModulePresentation::cyclic(ring, rels).unwrap()
}

fn module_strategy() -> impl Strategy<Value = (u8, Vec<i64>, Vec<u32>, u32, Vec<i8>)> {
    (any::<u8>(), prop::collection::vec(1i64..=3, 1..=2), prop::collection::vec(1u32..=3, 2), 1u32..=3, prop::collection::vec(-3i8..=3, 0..4))
}

fn criterion_7() -> Check {
    let fail = |what: &str, e: String| format!("{what}: {e}");
    runner(40)
        .run(&module_strategy(), |(kind, degs, powers, pk, extra)| {
            let ring = prop_ring(kind, &degs);
            let m = prop_module(&ring, &powers, pk, &extra);
            let res = free_resolution(&m, ring.krull_dimension() + 1).unwrap();
            prop_assert!(res.is_complex() && minimize(&res).is_complex());
            prop_assert!(ext_complex(&m, ring.krull_dimension() + 1).unwrap().is_complex());
            let vars: Vec<Poly> = (0..ring.nvars()).map(|i| Poly::var(&ring, i)).collect();
            prop_assert!(koszul_complex(&ring, &vars).unwrap().is_complex());
            Ok(())
        })
        .map_err(|e| fail("d^2 = 0", e.to_string()))?;
    for f in fixtures() {
        for d in -2..=10 {
            ensure(f.resolution.hom().squares_to_zero(&f.ring, d), || format!("oracle Hom complex of {}", f.label))?;
        }
    }
    runner(50)
        .run(&(module_strategy(), -3i64..=3), |((kind, degs, powers, pk, extra), s)| {
            let ring = prop_ring(kind, &degs);
            let m = expand_degreewise(&prop_module(&ring, &powers, pk, &extra), (-2, 14)).unwrap().shift(s);
            prop_assert_eq!(matlis_dual(&matlis_dual(&m)), m);
            Ok(())
        })
        .map_err(|e| fail("Matlis double dual", e.to_string()))?;
    let gb_case = (
        any::<u8>(),
        prop::collection::vec(1i64..=2, 2..=3),
        prop::collection::vec((1i64..=3, prop::collection::vec(-4i8..=4, 1..6)), 1..=3),
        prop::collection::vec(prop::collection::vec(-3i8..=3, 1..6), 3),
    );
    runner(100)
        .run(&gb_case, |(kind, degs, gens, mults)| {
            let ring = prop_ring(kind, &degs);
            let c = ring.coeff;
            let gens: Vec<Poly> = gens.iter().map(|(d, k)| prop_poly(&ring, *d, k)).filter(|p| !p.is_zero()).collect();
            if gens.is_empty() {
                return Ok(());
            }
            let vecs: Vec<FreeVector> = gens.iter().map(|p| FreeVector::from_polys(std::slice::from_ref(p))).collect();
            let gb = buchberger(&ring, &FreeModule::new(vec![0]), &vecs, TermOrder::default()).unwrap();
            let mut f = Poly::zero();
            for (g, k) in gens.iter().zip(&mults) {
                let d = g.homogeneous_degree().unwrap().unwrap();
                f = f.add(&c, &g.mul(&c, &prop_poly(&ring, 4 - d, k)));
            }
            prop_assert!(normal_form(&FreeVector::from_polys(&[f]), &gb).unwrap().is_zero());
            Ok(())
        })
        .map_err(|e| fail("Groebner membership", e.to_string()))?;
    let chart_case = (prop::collection::btree_set((0i64..12, 0i64..5), 0..20), any::<bool>());
    runner(100)
        .run(&chart_case, |(pts, cohom)| {
            let dots: std::collections::BTreeSet<Dot> = pts.iter().map(|&(x, y)| Dot { x, y }).collect();
            let mut edges = std::collections::BTreeSet::new();
            for d in &dots {
                let up = Dot { x: d.x, y: d.y + 1 };
                if dots.contains(&up) {
                    edges.insert(Edge { from: *d, to: up, kind: EdgeKind::Vertical });
                }
            }
            let orientation = if cohom { Orientation::Cohomology } else { Orientation::Homology };
            let c = Chart { name: "r".into(), orientation, dots, edges, ..Chart::default() };
            let text = c.emit();
            prop_assert_eq!(parse_chart(&text).unwrap().emit(), text);
            Ok(())
        })
        .map_err(|e| fail("chart round trip", e.to_string()))?;
    for name in ["fig1.chart", "fig2.chart"] {
        let c = parse_chart(&fs(&fixture(name))).unwrap();
        let text = c.emit();
        ensure(parse_chart(&text).unwrap().emit() == text, || format!("{name} round trip"))?;
    }
    Ok("d^2=0 x40, Matlis x50, Groebner x100, charts x100".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 shift table", criterion_1, Duration::from_secs(1)),
        ("2 Gorenstein check", criterion_2, Duration::from_secs(30)),
        ("3 UCT verification", criterion_3, Duration::from_secs(120)),
        ("4 local cohomology", criterion_4, Duration::from_secs(60)),
        ("5 chart duality", criterion_5, Duration::from_secs(1)),
        ("6 SES composition factors", criterion_6, Duration::from_secs(10)),
        ("7 property suites", criterion_7, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (name, f, budget) in criteria {
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        let (verdict, detail) = match result {
            Ok(d) if took <= budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over budget {budget:?}")),
            Err(e) => ("FAIL", e),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("criterion {name}: {verdict} ({:.2}s) {}", took.as_secs_f64(), detail.replace('\n', " | "));
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
