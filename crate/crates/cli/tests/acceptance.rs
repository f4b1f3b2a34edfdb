//! Acceptance suite: one pass/fail line per criterion, exact arithmetic throughout.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tropforms_cli::document::Document;
use tropforms_core::complexes::{LinearStructure, WeightedComplex};
use tropforms_core::currents::{
    boundary_ddoubleprime, boundary_dprime, check_balanced, check_flat, corner_locus, fiber_integral_form, pull_back_flat, push_forward,
    PolyhedralCurrent, PwlMap, Summand,
};
use tropforms_core::exactlin::random::{random_automorphism, random_rat, random_simplex, random_vector};
use tropforms_core::exactlin::rat::{axpy, int, vector, zeros};
use tropforms_core::exactlin::{AffineMap, Polyhedron, Rat, Vector, Weight};
use tropforms_core::integrate::{integrate_cell, stokes_check};
use tropforms_core::intersection::random::{random_curve, random_fan_surface, random_pwl, random_quadrant_curve};
use tropforms_core::intersection::{diagonal_vertical_pairing, green_min, line_cycle, primitive_rhs, stable_intersect};
use tropforms_core::metgraph::random::{random_divisor, random_graph, random_graph_pwl, random_point};
use tropforms_core::metgraph::{green_solve, harmonic_morphism_check, laplacian, pairing};
use tropforms_core::newton::random::{random_block_matrix, random_matrix, random_series};
use tropforms_core::newton::{dvr_length, level_bound_check, PiSeries};
use tropforms_core::superforms::random::{random_form, random_poly};
use tropforms_core::superforms::{Form, Side, SuperForm};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x7f4a_7c15 ^ salt)
}

fn positive(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let r = random_rat(rng, 9, 4).abs();
        if r.is_positive() {
            return r;
        }
    }
}

fn integer_map(rng: &mut ChaCha8Rng, n: usize, m: usize) -> AffineMap {
    loop {
        let rows: Vec<Vector> = (0..m).map(|_| (0..n).map(|_| int(rng.gen_range(-2..=2))).collect()).collect();
        if tropforms_core::exactlin::matrix::rank(&rows, n) == n.min(m) {
            return AffineMap::linear(rows, n).unwrap();
        }
    }
}

fn interior_point(rng: &mut ChaCha8Rng, p: &Polyhedron) -> Vector {
    let ws: Vec<Rat> = p.vertices().iter().map(|_| int(rng.gen_range(1..=5))).collect();
    let total: Rat = ws.iter().sum();
    ws.iter().zip(p.vertices()).fold(zeros(p.ambient_dim()), |x, (w, v)| axpy(&x, &(w / &total), v))
}

fn green_min_identity() -> Outcome {
    for r in 1..=5 {
        let g = green_min(r).map_err(e)?;
        ensure(g.holds && g.current.equals(&g.expected).map_err(e)?, || format!("r = {r}: green current differs from x·Δ"))?;
    }
    Ok("r = 1..5 equal to x·Δ".into())
}

fn pairing_identity() -> Outcome {
    let mut rng = rng(2);
    for i in 0..30 {
        let (a, b, c) = (positive(&mut rng), positive(&mut rng), positive(&mut rng));
        let r = diagonal_vertical_pairing(&line_cycle(&a, &b, &c).map_err(e)?).map_err(e)?;
        let want = primitive_rhs(&a, &b, &c);
        ensure(r.lhs == r.rhs && r.lhs == want, || format!("line {i} ({a}u+{b}w={c}): lhs {} rhs {} expected {want}", r.lhs, r.rhs))?;
    }
    for i in 0..20 {
        let d = rng.gen_range(1..=2);
        let c = random_quadrant_curve(&mut rng, d).map_err(e)?;
        ensure(check_balanced(c.current(), &LinearStructure::affine(2)).map_err(e)?.balanced, || format!("quadrant curve {i} not balanced"))?;
        let r = diagonal_vertical_pairing(&c).map_err(e)?;
        ensure(r.holds, || format!("quadrant curve {i}: lhs {} rhs {}", r.lhs, r.rhs))?;
    }
    Ok("30 lines and 20 quadrant curves".into())
}

fn corner_loci_balanced() -> Outcome {
    let mut rng = rng(3);
    let l = LinearStructure::affine(3);
    for i in 0..100 {
        let terms = rng.gen_range(3..=4);
        let fan = random_fan_surface(&mut rng, terms).map_err(e)?;
        let phi = random_pwl(&mut rng, 3, 3).map_err(e)?;
        let div = corner_locus(&phi, &fan, &l).map_err(e)?;
        let rep = check_balanced(div.current(), &l).map_err(e)?;
        ensure(rep.balanced, || format!("case {i}: unbalanced at {:?}", rep.violations.first().map(|v| v.face.vertices().to_vec())))?;
    }
    Ok("100 corner loci balanced".into())
}

fn stokes() -> Outcome {
    let mut rng = rng(4);
    for i in 0..200 {
        let d = rng.gen_range(1..=3);
        let n = rng.gen_range(d..=3);
        let s = random_simplex(&mut rng, n, d);
        let mu = Weight::lattice_of(&s);
        let alpha = SuperForm::on_cell(&s, &random_form(&mut rng, n, d - 1, d, 3)).map_err(e)?;
        let beta = SuperForm::on_cell(&s, &random_form(&mut rng, n, d, d - 1, 3)).map_err(e)?;
        let r = stokes_check(&s, &mu, &alpha, &beta).map_err(e)?;
        ensure(r.holds(), || format!("case {i}: {r:?}"))?;
    }
    Ok("200 simplices".into())
}

fn bezout() -> Outcome {
    let mut rng = rng(5);
    for i in 0..30 {
        let (d, e_) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let c1 = random_curve(&mut rng, d).map_err(e)?;
        let c2 = random_curve(&mut rng, e_).map_err(e)?;
        let fwd = stable_intersect(&c1, &c2).map_err(|x| format!("case {i}: {x}"))?;
        ensure(fwd.displacement.vector != fwd.check.vector, || format!("case {i}: a single displacement was used"))?;
        let deg = fwd.cycle.degree().map_err(e)?;
        ensure(deg == int((d * e_) as i64), || format!("case {i}: degree {deg}, expected {}", d * e_))?;
        let bwd = stable_intersect(&c2, &c1).map_err(e)?;
        ensure(fwd.cycle.equals(&bwd.cycle).map_err(e)?, || format!("case {i}: not commutative"))?;
    }
    Ok("30 pairs with d, e ≤ 3".into())
}

fn flatness() -> Outcome {
    let seg = |a: &[i64], b: &[i64]| Polyhedron::segment(vector(a), vector(b));
    let lattice = |cells: Vec<Polyhedron>, n| WeightedComplex::from_carriers(n, cells.into_iter().map(|c| (c.clone(), Weight::lattice_of(&c))).collect()).unwrap();
    let x = lattice(vec![seg(&[0, 0, 0], &[0, 1, 0]), seg(&[0, 0, 1], &[1, 0, 1])], 3);
    let wedge = lattice(vec![seg(&[0, 0], &[0, 1]), seg(&[0, 0], &[1, 0])], 2);
    let rep = check_flat(&x, &wedge, &PwlMap::affine(AffineMap::projection(3, &[0, 1]))).map_err(e)?;
    ensure(!rep.flat, || "disjoint segments onto a wedge reported flat".into())?;
    let sigma = Polyhedron::cone(vector(&[0, 0]), &[vector(&[1, 0]), vector(&[1, 1])]).map_err(e)?;
    let cone = WeightedComplex::from_carriers(2, vec![(sigma, Weight::standard(2))]).map_err(e)?;
    let line = WeightedComplex::from_carriers(1, vec![(Polyhedron::whole_space(1), Weight::standard(1))]).map_err(e)?;
    ensure(check_flat(&cone, &line, &PwlMap::affine(AffineMap::projection(2, &[0]))).map_err(e)?.flat, || "projection reported not flat".into())?;

    let mut rng = rng(6);
    for i in 0..50 {
        let n = rng.gen_range(2..=3);
        let m = rng.gen_range(1..n);
        let y = WeightedComplex::from_carriers(m, vec![(Polyhedron::whole_space(m), Weight::standard(m))]).map_err(e)?;
        let (p, x, f, pf) = loop {
            let p = random_simplex(&mut rng, n, n);
            let x = WeightedComplex::from_carriers(n, vec![(p.clone(), Weight::standard(n))]).map_err(e)?;
            let f = integer_map(&mut rng, n, m);
            let pf = PwlMap::affine(f.clone());
            if check_flat(&x, &y, &pf).map_err(e)?.flat {
                break (p, x, f, pf);
            }
        };
        let t = if rng.gen_bool(0.5) {
            PolyhedralCurrent::dirac(f.apply(&interior_point(&mut rng, &p)), random_rat(&mut rng, 3, 2))
        } else {
            let (a, b) = (rng.gen_range(0..=m), rng.gen_range(0..=m));
            let beta = random_form(&mut rng, m, a, b, 2);
            PolyhedralCurrent::new(m, vec![Summand::from_ambient(Polyhedron::whole_space(m), Weight::standard(m), &beta).map_err(e)?]).map_err(e)?
        };
        let (a, b) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let alpha = random_form(&mut rng, n, a, b, 2);
        let pulled = pull_back_flat(&t, &x, &y, &pf).map_err(e)?;
        let lhs = push_forward(&pulled.wedge_ambient(&alpha).map_err(e)?, &pf).map_err(e)?;
        let eta = PolyhedralCurrent::of_complex(&x).map_err(e)?.wedge_ambient(&alpha).map_err(e)?;
        let pws = fiber_integral_form(&eta, &y, &pf).map_err(e)?;
        let cells: Vec<Polyhedron> = pws.pieces.iter().map(|(c, _)| c.clone()).collect();
        let rhs = t.normalize_with(&cells).map_err(e)?.wedge_left(|c| pws.on(c)).map_err(e)?;
        ensure(lhs.equals(&rhs).map_err(e)?, || format!("projection formula case {i} ({n} → {m})"))?;
    }
    Ok("not flat / flat as expected, 50 projection formulas".into())
}

fn pushforward() -> Outcome {
    let mut rng = rng(7);
    for i in 0..50 {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=n);
        let m = rng.gen_range(1..=3);
        let mut summands = Vec::new();
        for _ in 0..rng.gen_range(1..=2) {
            let s = random_simplex(&mut rng, n, k);
            let w = Weight::lattice_of(&s);
            summands.push(Summand::from_ambient(s, w, &random_form(&mut rng, n, k, k, 2)).map_err(e)?);
        }
        let t = PolyhedralCurrent::new(n, summands).map_err(e)?;
        let f = AffineMap::new((0..m).map(|_| random_vector(&mut rng, n, 2, 1)).collect(), random_vector(&mut rng, m, 2, 2), n).map_err(e)?;
        let pushed = push_forward(&t, &PwlMap::affine(f)).map_err(e)?;
        let (a, b) = (t.integrate().map_err(e)?, pushed.integrate().map_err(e)?);
        ensure(a == b, || format!("integral case {i}: {a} before, {b} after"))?;
    }
    for i in 0..20 {
        let d = rng.gen_range(1..=2);
        let c = random_curve(&mut rng, d).map_err(e)?;
        let pushed = push_forward(c.current(), &PwlMap::affine(integer_map(&mut rng, 2, 3))).map_err(e)?;
        ensure(check_balanced(&pushed, &LinearStructure::affine(3)).map_err(e)?.balanced, || format!("balance case {i}"))?;
    }
    Ok("50 integrals preserved, 20 balanced images".into())
}

fn transformation_rule() -> Outcome {
    let mut rng = rng(8);
    for i in 0..50 {
        let n = 2 + i % 2;
        let p = random_simplex(&mut rng, n, n);
        let f = random_automorphism(&mut rng, n);
        let q = p.image(&f.inverse().map_err(e)?).map_err(e)?;
        let eta = SuperForm::on_cell(&p, &Form::top(n, random_poly(&mut rng, n, 3))).map_err(e)?;
        let lhs = integrate_cell(&eta.pullback(&f, &q.chart()).map_err(e)?, &q, &Weight::standard(n)).map_err(e)?;
        let rhs = integrate_cell(&eta, &p, &Weight::standard(n)).map_err(e)? * f.determinant().map_err(e)?.abs();
        ensure(lhs == rhs, || format!("case {i} in ℝ^{n}: {lhs} ≠ {rhs}"))?;
    }
    Ok("25 automorphisms of ℝ², 25 of ℝ³".into())
}

fn newton_bounds() -> Outcome {
    let mut rng = rng(9);
    let mut i = 0;
    for (q, h) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        let pure = level_bound_check(&PiSeries::pure(q, h).map_err(e)?, 3).map_err(e)?;
        ensure(pure.holds && pure.first_equality, || format!("pure series q = {q}, h = {h} misses the bound"))?;
        for _ in 0..25 {
            let s = random_series(&mut rng, q, h).map_err(e)?;
            let r = level_bound_check(&s, 3).map_err(e)?;
            ensure(r.holds, || format!("series {i} (q = {q}, h = {h}): {r:?}"))?;
            ensure(!s.is_pure() || r.first_equality, || format!("series {i}: pure without equality"))?;
            i += 1;
        }
    }
    Ok(format!("{i} series, depth 3"))
}

fn dvr_lengths() -> Outcome {
    let mut rng = rng(10);
    for p in [2, 3, 5] {
        for i in 0..100 {
            let n = rng.gen_range(1..=4);
            let m = random_matrix(&mut rng, n, p).map_err(e)?;
            let r = dvr_length(&m, None).map_err(e)?;
            ensure(r.holds, || format!("p = {p}, matrix {i}: length {} vs v(det) {}", r.length, r.det_valuation))?;
        }
    }
    for i in 0..20 {
        let blocks = rng.gen_range(1..=3);
        let p = [2, 3, 5][i % 3];
        let (m, sizes) = random_block_matrix(&mut rng, blocks, p).map_err(e)?;
        let r = dvr_length(&m, Some(&sizes)).map_err(e)?;
        let sum: Rat = r.blocks.iter().map(|b| &b.per_unit * Rat::from_integer(b.size.into())).sum();
        ensure(r.holds && r.blocks_hold && sum == r.det_valuation, || format!("block matrix {i}: {r:?}"))?;
    }
    Ok("300 matrices, 20 block matrices".into())
}

fn metric_graphs() -> Outcome {
    let mut rng = rng(11);
    for i in 0..50 {
        let (v, extra) = (rng.gen_range(1..=6), rng.gen_range(0..=4));
        let g = random_graph(&mut rng, v, extra).map_err(e)?;
        let phi = random_graph_pwl(&mut rng, &g).map_err(e)?;
        let mass = laplacian(&phi, &g).map_err(e)?.degree();
        ensure(mass.is_zero(), || format!("graph {i}: total mass {mass}"))?;
        let size = rng.gen_range(1..=4);
        let d = random_divisor(&mut rng, &g, size).map_err(e)?;
        let base = random_point(&mut rng, &g);
        let f = green_solve(&g, &d, &base).map_err(e)?;
        ensure(laplacian(&f, &g).map_err(e)? == d, || format!("graph {i}: Δ(green) differs from the divisor"))?;
    }
    for i in 0..100 {
        let (v, extra) = (rng.gen_range(1..=6), rng.gen_range(0..=4));
        let g = random_graph(&mut rng, v, extra).map_err(e)?;
        let f1 = random_graph_pwl(&mut rng, &g).map_err(e)?;
        let f2 = random_graph_pwl(&mut rng, &g).map_err(e)?;
        let p = pairing(&f1, &f2, &g).map_err(e)?;
        ensure(p.symmetric && p.value == p.reversed, || format!("pair {i}: {} vs {}", p.value, p.reversed))?;
    }
    let interval = |a: i64, b: i64| WeightedComplex::from_carriers(1, vec![(Polyhedron::segment(vector(&[a]), vector(&[b])), Weight::standard(1))]).unwrap();
    let fold = PwlMap::new(
        1,
        1,
        vec![
            (Polyhedron::cone(vector(&[1]), &[vector(&[-1])]).map_err(e)?, AffineMap::identity(1)),
            (Polyhedron::cone(vector(&[1]), &[vector(&[1])]).map_err(e)?, AffineMap::new(vec![vector(&[-1])], vector(&[2]), 1).map_err(e)?),
        ],
    )
    .map_err(e)?;
    let h = harmonic_morphism_check(&interval(0, 2), &interval(0, 1), &fold).map_err(e)?;
    ensure(h.flat && h.degree == Some(int(2)), || format!("fold: flat {} degree {:?}", h.flat, h.degree))?;
    Ok("50 masses and Green functions, 100 pairings, fold of degree 2".into())
}

fn boundary_operator() -> Outcome {
    let half = Polyhedron::cone(vector(&[0]), &[vector(&[1])]).map_err(e)?;
    let s = Summand::from_ambient(half, Weight::standard(1), &Form::basis_one_form(1, 0, Side::DoublePrime)).map_err(e)?;
    let b = boundary_dprime(&PolyhedralCurrent::new(1, vec![s]).map_err(e)?).map_err(e)?;
    ensure(b.neg().equals(&PolyhedralCurrent::dirac(vector(&[0]), int(1))).map_err(e)?, || "−∂′ of the Heaviside form is not δ₀".into())?;
    let unit = Polyhedron::segment(vector(&[0]), vector(&[1]));
    let s = Summand::from_ambient(unit, Weight::standard(1), &Form::basis_one_form(1, 0, Side::DoublePrime)).map_err(e)?;
    let b = boundary_dprime(&PolyhedralCurrent::new(1, vec![s]).map_err(e)?).map_err(e)?;
    let ends = PolyhedralCurrent::dirac(vector(&[0]), int(1)).add(&PolyhedralCurrent::dirac(vector(&[1]), int(-1))).map_err(e)?;
    ensure(b.neg().equals(&ends).map_err(e)?, || "−∂′ of d″x on [0, 1] is not δ₀ − δ₁".into())?;
    let mut rng = rng(12);
    for i in 0..50 {
        let n = rng.gen_range(1..=3);
        let phi = random_pwl(&mut rng, n, 3).map_err(e)?;
        let (a, b) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let alpha = random_form(&mut rng, n, a, b, 3);
        let summands = phi.pieces().iter().map(|(c, _)| Summand::from_ambient(c.clone(), Weight::standard(n), &alpha)).collect::<Result<_, _>>().map_err(e)?;
        let t = PolyhedralCurrent::new(n, summands).map_err(e)?;
        ensure(boundary_dprime(&t).map_err(e)?.is_zero().map_err(e)?, || format!("case {i}: ∂′ ≠ 0"))?;
        ensure(boundary_ddoubleprime(&t).map_err(e)?.is_zero().map_err(e)?, || format!("case {i}: ∂″ ≠ 0"))?;
    }
    Ok("−∂′ of the Heaviside form is δ₀, 50 polynomial forms closed".into())
}

fn tropforms(args: &[&str]) -> Result<(i32, Value), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_tropforms")).args(args).output().map_err(e)?;
    let report = serde_json::from_slice(&out.stdout).map_err(|x| format!("{args:?}: report is not JSON: {x}"))?;
    Ok((out.status.code().unwrap_or(-1), report))
}

fn cli_corpus() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files = 0;
    let mut entries: Vec<_> = std::fs::read_dir(&dir).map_err(e)?.map(|x| x.unwrap().path()).collect();
    entries.sort();
    for path in entries.iter().filter(|p| p.extension().is_some_and(|x| x == "json")) {
        let text = std::fs::read_to_string(path).map_err(e)?;
        let doc = Document::parse(&text).map_err(|x| format!("{}: {x}", path.display()))?;
        ensure(doc.to_text() == text, || format!("{} is not byte-stable", path.display()))?;
        files += 1;
    }
    let file = |n: &str| dir.join(n).to_string_lossy().into_owned();
    let violations: [Vec<String>; 3] = [
        vec!["balance".into(), file("unbalanced_line.json"), "--object".into(), "line".into()],
        vec!["flat-check".into(), file("disjoint_axes.json"), "--map".into(), "projection".into(), "--source".into(), "source".into(), "--target".into(), "target".into()],
        vec!["validate".into(), file("invalid/discontinuous.json")],
    ];
    for args in &violations {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, r) = tropforms(&args)?;
        ensure(code == 1, || format!("{} exited {code}", args[0]))?;
        let witness = r["witness"].as_array().cloned().unwrap_or_default();
        let face_level = witness.iter().any(|w| w.get("face").is_some() || w.get("point").is_some());
        ensure(face_level, || format!("{} gave no face-level witness", args[0]))?;
    }
    Ok(format!("{files} documents byte-stable, {} violations exit 1 with witnesses", violations.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 13] = [
        ("green current of min equals x·Δ", green_min_identity, Some(Duration::from_secs(10))),
        ("diagonal and vertical pairings agree", pairing_identity, Some(Duration::from_secs(30))),
        ("corner loci on fans are balanced", corner_loci_balanced, None),
        ("Stokes on simplices", stokes, Some(Duration::from_secs(60))),
        ("stable intersection Bézout", bezout, None),
        ("flatness and projection formula", flatness, None),
        ("pushforward", pushforward, None),
        ("transformation rule", transformation_rule, None),
        ("Newton level bounds", newton_bounds, None),
        ("DVR length", dvr_lengths, None),
        ("metric graphs", metric_graphs, None),
        ("boundary operator", boundary_operator, None),
        ("command-line corpus", cli_corpus, None),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let took = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if took > *l => Err(format!("took {took:.2?}, limit {l:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
