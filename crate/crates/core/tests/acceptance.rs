//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Every expected value is produced by an oracle written here, independently
//! of the library, or is a literal constant fixed before the library was run.
//! Criteria listed in `KNOWN_FAILURES` fail for reasons analyzed in the
//! project notes; the run fails if any other criterion fails, or if a known
//! failure starts passing.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use mvdyn::deduction::{check_proof, AxiomSource, Justification};
use mvdyn::dynamics::{
    average_truth_value, box_hitting_search, classify_1d, empirical_statistics, full_rational_orbit, orbit,
    orbit_closure_check, reachability_substitution, rotation_homeomorphism, rotation_points, tent_on, tent_product,
    tent_substitution, tsujii_differential, validate_homeomorphism, InducedMap, MapClass, OrbitStatus,
};
use mvdyn::formula::random::{random_formula, random_substitution, FormulaShape};
use mvdyn::formula::{eval, ChainBase, Node};
use mvdyn::odometer::{derive_from_nontautology, induced_permutation, odometer_substitution};
use mvdyn::pwl::{affine_from_simplex_pair, pwl_to_formula_1d, AffinePieceZ, CellComplex, PwlFunction};
use mvdyn::rational::{int, rat};
use mvdyn::spectra::{
    duality_check, finite_chain, free_boolean, prime_filter_check, product_algebra, two, FiniteAlgebra,
};
use mvdyn::{parse_formula, Formula, Point, Rational, RationalBox, Semantics, Substitution};
use num::{BigInt, Integer, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed;

/// The stated value of the integral of `¬x0 ∨ tent(x0)` contradicts its own
/// piecewise description, which integrates to 2/3.
const KNOWN_FAILURES: &[u32] = &[11];

// Pinned limits and tolerances.
const LIMIT_MATRIX: Duration = Duration::from_millis(1);
const LIMIT_TABLES: Duration = Duration::from_secs(1);
const LIMIT_LAWS: Duration = Duration::from_secs(10);
const LIMIT_ODOMETER: Duration = Duration::from_secs(5);
const LIMIT_DEDUCTION: Duration = Duration::from_secs(30);
const LIMIT_DUALITY: Duration = Duration::from_secs(60);
const STATS_ITERATIONS: usize = 1_000_000;
const STATS_TOLERANCE: f64 = 0.05;
const STATS_JITTER: f64 = 1e-9;
const INTEGRAL_STATED: (i64, i64) = (13, 18);

/// Independent reference semantics.
mod oracle {
    use super::*;

    #[derive(Clone, Copy, Debug)]
    pub enum TNorm {
        Godel,
        Product,
        Lukasiewicz,
    }

    pub const TNORMS: [TNorm; 3] = [TNorm::Godel, TNorm::Product, TNorm::Lukasiewicz];

    impl TNorm {
        pub fn semantics(self) -> Semantics {
            match self {
                TNorm::Godel => Semantics::Godel,
                TNorm::Product => Semantics::Product,
                TNorm::Lukasiewicz => Semantics::Lukasiewicz,
            }
        }
    }

    /// The tables of the three continuous t-norms and their residua.
    pub fn star(t: TNorm, a: &Rational, b: &Rational) -> Rational {
        match t {
            TNorm::Godel => a.min(b).clone(),
            TNorm::Product => a * b,
            TNorm::Lukasiewicz => (a + b - int(1)).max(int(0)),
        }
    }

    pub fn implies(t: TNorm, a: &Rational, b: &Rational) -> Rational {
        if a <= b {
            return int(1);
        }
        match t {
            TNorm::Godel => b.clone(),
            TNorm::Product => b / a,
            TNorm::Lukasiewicz => int(1) - a + b,
        }
    }

    pub fn neg(t: TNorm, a: &Rational) -> Rational {
        match t {
            TNorm::Lukasiewicz => int(1) - a,
            _ if a.is_zero() => int(1),
            _ => int(0),
        }
    }

    /// Łukasiewicz value of a formula, by recursion on its syntax.
    pub fn luk(f: &Formula, p: &[Rational]) -> Rational {
        let t = TNorm::Lukasiewicz;
        match f.node() {
            Node::Var(i) => p[*i].clone(),
            Node::Zero => int(0),
            Node::One => int(1),
            Node::Star(a, b) => star(t, &luk(a, p), &luk(b, p)),
            Node::Impl(a, b) => implies(t, &luk(a, p), &luk(b, p)),
            Node::Neg(a) => int(1) - luk(a, p),
            Node::And(a, b) => luk(a, p).min(luk(b, p)),
            Node::Or(a, b) => luk(a, p).max(luk(b, p)),
            Node::OPlus(a, b) => (luk(a, p) + luk(b, p)).min(int(1)),
        }
    }

    /// Classical value; valuation bit `i` is `x_i`.
    pub fn boolean(f: &Formula, v: u32) -> bool {
        match f.node() {
            Node::Var(i) => (v >> i) & 1 == 1,
            Node::Zero => false,
            Node::One => true,
            Node::Star(a, b) | Node::And(a, b) => boolean(a, v) && boolean(b, v),
            Node::Impl(a, b) => !boolean(a, v) || boolean(b, v),
            Node::Neg(a) => !boolean(a, v),
            Node::Or(a, b) | Node::OPlus(a, b) => boolean(a, v) || boolean(b, v),
        }
    }

    pub fn is_boolean_tautology(f: &Formula, n: usize) -> bool {
        (0..1u32 << n).all(|v| boolean(f, v))
    }

    pub fn tent(x: &Rational) -> Rational {
        (x * int(2)).min(int(2) - x * int(2))
    }

    pub fn den(p: &[Rational]) -> BigInt {
        p.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// Exact `∫ g` over `[lo, hi]` for `g` affine between consecutive points
    /// of the grid of step `1/steps`.
    pub fn trapezoid(g: impl Fn(&Rational) -> Rational, lo: &Rational, hi: &Rational, steps: i64) -> Rational {
        let a = (lo * int(steps)).to_integer();
        let b = (hi * int(steps)).to_integer();
        let mut total = int(0);
        let mut k = a.clone();
        while k < b {
            let x0 = Rational::new(k.clone(), steps.into());
            let x1 = Rational::new(&k + 1, steps.into());
            total += (g(&x0) + g(&x1)) / int(2) * (&x1 - &x0);
            k += 1;
        }
        total
    }

    /// Affine map sending the triangle `src` onto `dst`: returns `A`.
    pub fn linear_part(src: &[Point], dst: &[Point]) -> [[Rational; 2]; 2] {
        let e = |p: &[Point], i: usize, c: usize| &p[i][c] - &p[0][c];
        let (s00, s01, s10, s11) = (e(src, 1, 0), e(src, 2, 0), e(src, 1, 1), e(src, 2, 1));
        let det = &s00 * &s11 - &s01 * &s10;
        let inv = [[&s11 / &det, -&s01 / &det], [-&s10 / &det, &s00 / &det]];
        let d = [[e(dst, 1, 0), e(dst, 2, 0)], [e(dst, 1, 1), e(dst, 2, 1)]];
        let mut a: [[Rational; 2]; 2] = Default::default();
        for (r, row) in a.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x = &d[r][0] * &inv[0][c] + &d[r][1] * &inv[1][c];
            }
        }
        a
    }

    /// Filters by definition: contain 1 and closed under Modus Ponens.
    pub fn filters(a: &FiniteAlgebra) -> Vec<u64> {
        let n = a.len();
        (0..1u64 << n)
            .filter(|&s| {
                let has = |x: usize| (s >> x) & 1 == 1;
                has(a.one()) && (0..n).all(|x| !has(x) || (0..n).all(|y| !has(a.implies(x, y)) || has(y)))
            })
            .collect()
    }

    /// Prime: proper, and contains `x → y` or `y → x` for all `x, y`.
    pub fn is_prime(a: &FiniteAlgebra, f: u64) -> bool {
        let has = |x: usize| (f >> x) & 1 == 1;
        let n = a.len();
        !has(a.zero()) && (0..n).all(|x| (0..n).all(|y| has(a.implies(x, y)) || has(a.implies(y, x))))
    }

    /// Number of unions of the sets `{p : x ∉ p}`.
    pub fn open_count(a: &FiniteAlgebra, primes: &[u64]) -> usize {
        let basic: Vec<u64> = (0..a.len())
            .map(|x| primes.iter().enumerate().filter(|(_, &p)| (p >> x) & 1 == 0).fold(0, |acc, (i, _)| acc | 1 << i))
            .collect();
        let mut opens: HashSet<u64> = HashSet::from([0]);
        loop {
            let next: HashSet<u64> = opens.iter().flat_map(|&o| basic.iter().map(move |&b| o | b)).collect();
            let before = opens.len();
            opens.extend(next);
            if opens.len() == before {
                return opens.len();
            }
        }
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn random_unit(rng: &mut ChaCha8Rng, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    rat(rng.gen_range(0..=d), d)
}

fn f(s: &str) -> Formula {
    parse_formula(s).expect("valid formula")
}

fn criterion_1() -> Outcome {
    let [p0, p1, p2, ..] = rotation_points();
    let corner = vec![int(1), int(0)];
    let start = Instant::now();
    let m = affine_from_simplex_pair(&[p0.clone(), corner.clone(), p1.clone()], &[p1, corner, p2]);
    let elapsed = start.elapsed();
    let Ok(m) = m else { return outcome(false, "no affine map") };
    let a = vec![vec![int(-1), int(-5)], vec![int(1), int(4)]];
    let b = vec![int(2), int(-1)];
    let pass = m.a == a && m.b == b && elapsed < LIMIT_MATRIX;
    let show = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    outcome(pass, format!("A = [[{}], [{}]], B = ({}), {elapsed:?}", show(&m.a[0]), show(&m.a[1]), show(&m.b)))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pairs: Vec<(Rational, Rational)> =
        vec![(int(0), int(0)), (int(0), int(1)), (int(1), int(0)), (int(1), int(1)), (rat(1, 2), rat(1, 2))];
    while pairs.len() < 50 {
        let a = random_unit(&mut rng, 12);
        let b = if rng.gen_ratio(1, 5) { a.clone() } else { random_unit(&mut rng, 12) };
        pairs.push((a, b));
    }
    let (star, imp, neg) = (f("x0 * x1"), f("x0 -> x1"), f("!x0"));
    let start = Instant::now();
    let mut mismatches = 0;
    for t in oracle::TNORMS {
        let sem = t.semantics();
        for (a, b) in &pairs {
            let p = [a.clone(), b.clone()];
            let want = [oracle::star(t, a, b), oracle::implies(t, a, b), oracle::neg(t, a)];
            let got = [
                eval(&star, sem, &p).unwrap(),
                eval(&imp, sem, &p).unwrap(),
                eval(&neg, sem, &p).unwrap(),
            ];
            let direct = [sem.star(a, b), sem.implies(a, b), sem.neg(a)];
            mismatches += usize::from(got != want) + usize::from(direct != want);
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && elapsed < LIMIT_TABLES,
        format!("{} pairs x 3 t-norms, {mismatches} mismatches, {elapsed:?}", pairs.len()),
    )
}

fn criterion_3() -> Outcome {
    let laws = [
        ("x0 * x1", "x0 & x1"),
        ("x0", "x1 -> (x0 * x1)"),
        ("(x0 -> x1) * (x1 -> x2)", "x0 -> x2"),
        ("(x0 -> x1) * (x2 -> x3)", "(x0 * x2) -> (x1 * x3)"),
        ("(x0 -> x1) * (x2 -> x3)", "(x1 -> x2) -> (x0 -> x3)"),
    ]
    .map(|(l, r)| (f(l), f(r)));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let start = Instant::now();
    let mut violations = 0;
    for t in oracle::TNORMS {
        let sem = t.semantics();
        for _ in 0..10_000 {
            let p: Vec<Rational> = (0..4).map(|_| random_unit(&mut rng, 16)).collect();
            let (a, b, c) = (&p[0], &p[1], &p[2]);
            if (sem.star(c, a) <= *b) != (*c <= sem.implies(a, b)) {
                violations += 1;
            }
            for (l, r) in &laws {
                if eval(l, sem, &p).unwrap() > eval(r, sem, &p).unwrap() {
                    violations += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        violations == 0 && elapsed < LIMIT_LAWS,
        format!("adjointness and five order laws at 10000 tuples x 3 t-norms, {violations} violations, {elapsed:?}"),
    )
}

fn criterion_4() -> Outcome {
    let mut library = Duration::ZERO;
    let mut bad = Vec::new();
    for n in 1..=12usize {
        let sigma = odometer_substitution(n).unwrap();
        let start = Instant::now();
        let perm = induced_permutation(&sigma).unwrap();
        let single = perm.is_single_cycle();
        library += start.elapsed();
        let size = 1u32 << n;
        let by_oracle: Vec<u32> = (0..size)
            .map(|v| {
                sigma.images().iter().enumerate().fold(0, |acc, (i, g)| acc | (u32::from(oracle::boolean(g, v)) << i))
            })
            .collect();
        let plus_one: Vec<u32> = (0..size).map(|v| (v + 1) % size).collect();
        let mut len = 1;
        let mut v = plus_one[0];
        while v != 0 {
            v = by_oracle[v as usize];
            len += 1;
        }
        if perm.map != plus_one || by_oracle != plus_one || len != size || !single {
            bad.push(n);
        }
    }
    outcome(
        bad.is_empty() && library < LIMIT_ODOMETER,
        format!("n = 1..12, failing {bad:?}, {library:?}"),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let start = Instant::now();
    let mut ok = 0;
    let mut lines = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let r = loop {
            let r = random_formula(&mut rng, FormulaShape::new(n, 4));
            if !oracle::is_boolean_tautology(&r, n) {
                break r;
            }
        };
        let target = random_formula(&mut rng, FormulaShape::new(n, 3));
        let Ok(proof) = derive_from_nontautology(&r, &target, n) else { continue };
        let sigma = odometer_substitution(n).unwrap();
        let rules_ok = proof.lines.iter().all(|l| match &l.just {
            Justification::Subst(_, s) => *s == sigma,
            Justification::Mp(..) | Justification::Axiom | Justification::Hypothesis(_) => true,
        });
        let checked = check_proof(&proof, &AxiomSource::boolean_oracle()).is_valid();
        if rules_ok && checked && proof.hypotheses == [r] && proof.conclusion() == Some(&target) {
            ok += 1;
        }
        lines += proof.lines.len();
    }
    let elapsed = start.elapsed();
    outcome(ok == 100 && elapsed < LIMIT_DEDUCTION, format!("{ok}/100 proofs valid, {lines} lines, {elapsed:?}"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut violations = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=3);
        let s = random_substitution(&mut rng, n, 4);
        let p: Point = (0..n).map(|_| random_unit(&mut rng, 30)).collect();
        let img: Point = s.images().iter().map(|g| eval(g, Semantics::Lukasiewicz, &p).unwrap()).collect();
        if !oracle::den(&p).is_multiple_of(&oracle::den(&img)) {
            violations += 1;
        }
    }
    let mut misses = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let d: i64 = rng.gen_range(1..=24);
        let mut p: Point = (0..n).map(|_| rat(rng.gen_range(0..=d), d)).collect();
        p[0] = rat(1, d);
        let divisors: Vec<i64> = (1..=d).filter(|e| d % e == 0).collect();
        let e = divisors[rng.gen_range(0..divisors.len())];
        let q: Point = (0..n).map(|_| rat(rng.gen_range(0..=e), e)).collect();
        let hit = reachability_substitution(&p, &q)
            .map(|s| s.images().iter().map(|g| oracle::luk(g, &p)).collect::<Point>() == q)
            .unwrap_or(false);
        misses += usize::from(!hit);
    }
    outcome(
        violations == 0 && misses == 0,
        format!("denominator divides: {violations} violations in 1000; reach: {misses} misses in 200"),
    )
}

/// Every formula in `x0`, 0 and 1 of depth at most 2.
fn formulas_up_to_depth_2() -> Vec<Formula> {
    let leaves = vec![Formula::var(0), Formula::zero(), Formula::one()];
    let grow = |fs: &[Formula]| {
        let mut out = fs.to_vec();
        for a in fs {
            out.push(Formula::neg(a.clone()));
            for b in fs {
                out.push(Formula::star(a.clone(), b.clone()));
                out.push(Formula::implies(a.clone(), b.clone()));
                out.push(Formula::and(a.clone(), b.clone()));
                out.push(Formula::or(a.clone(), b.clone()));
                out.push(Formula::oplus(a.clone(), b.clone()));
            }
        }
        out
    };
    grow(&grow(&leaves))
}

fn criterion_7() -> Outcome {
    let Ok((_, map)) = rotation_homeomorphism() else { return outcome(false, "rotation does not build") };
    let report = validate_homeomorphism(&map).unwrap();
    let cx = &map.complex;
    let mut dets = HashSet::new();
    let mut area = int(0);
    let images = map.vertex_images().unwrap();
    for (j, cell) in cx.cells().iter().enumerate() {
        let a = &map.maps[j].a;
        dets.insert(&a[0][0] * &a[1][1] - &a[0][1] * &a[1][0]);
        let t: Vec<&Point> = cell.iter().map(|&v| &images[v]).collect();
        let cross = (&t[1][0] - &t[0][0]) * (&t[2][1] - &t[0][1]) - (&t[2][0] - &t[0][0]) * (&t[1][1] - &t[0][1]);
        area += cross.abs() / int(2);
    }
    let det_ok = dets.len() == 1 && dets.iter().all(|d| d.abs().is_one());
    let rotation_ok = det_ok && area == int(1) && report.invertible && report.measure_preserving;

    let candidates = formulas_up_to_depth_2();
    let (mut bijective, mut wrong) = (0, 0);
    let identity = PwlFunction::projection(1, 0);
    let flip = PwlFunction::from_formula(&f("!x0"), 1).unwrap();
    for g in &candidates {
        let pwl = PwlFunction::from_formula(g, 1).unwrap();
        let slopes: Vec<&BigInt> = pwl.pieces().iter().map(|p| &p.a[0]).collect();
        let monotone = slopes.iter().all(|s| s.is_positive()) || slopes.iter().all(|s| s.is_negative());
        let ends = [oracle::luk(g, &[int(0)]), oracle::luk(g, &[int(1)])];
        let is_bijection = monotone && ends[0] != ends[1] && ends.iter().all(|e| e.is_zero() || e.is_one());
        let class = classify_1d(&pwl).unwrap();
        if is_bijection {
            bijective += 1;
            let expected = if ends[0].is_zero() { MapClass::Identity } else { MapClass::Flip };
            let reference = if ends[0].is_zero() { &identity } else { &flip };
            if class != expected || !pwl.equal(reference).unwrap() {
                wrong += 1;
            }
        } else if class != MapClass::NotBijective {
            wrong += 1;
        }
    }
    outcome(
        rotation_ok && wrong == 0,
        format!(
            "dets {:?}, image area {area}, measure preserving {}; {} one-variable formulas, {bijective} bijective, {wrong} misclassified",
            dets.iter().map(ToString::to_string).collect::<Vec<_>>(),
            report.measure_preserving,
            candidates.len()
        ),
    )
}

fn criterion_8() -> Outcome {
    let algebras: Vec<(&str, FiniteAlgebra)> = vec![
        ("2", two()),
        ("2x2", product_algebra(&two(), &two()).unwrap()),
        ("free Boolean(2)", free_boolean(2).unwrap()),
        ("L2", finite_chain(2, ChainBase::Lukasiewicz).unwrap()),
        ("L3", finite_chain(3, ChainBase::Lukasiewicz).unwrap()),
        ("L5", finite_chain(5, ChainBase::Lukasiewicz).unwrap()),
        (
            "L2xL3",
            product_algebra(
                &finite_chain(2, ChainBase::Lukasiewicz).unwrap(),
                &finite_chain(3, ChainBase::Lukasiewicz).unwrap(),
            )
            .unwrap(),
        ),
        ("G1", finite_chain(1, ChainBase::Godel).unwrap()),
        ("G2", finite_chain(2, ChainBase::Godel).unwrap()),
        ("G3", finite_chain(3, ChainBase::Godel).unwrap()),
        ("G4", finite_chain(4, ChainBase::Godel).unwrap()),
    ];
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for (name, a) in &algebras {
        let filters = oracle::filters(a);
        let primes: Vec<u64> = filters.iter().copied().filter(|&f| oracle::is_prime(a, f)).collect();
        let opens = oracle::open_count(a, &primes);
        let report = duality_check(a).unwrap();
        let clauses = prime_filter_check(a).unwrap();
        let clauses_match = clauses.filters.iter().all(|c| {
            let bits = c.filter.iter().fold(0u64, |acc, &x| acc | 1 << x);
            c.consistent() && c.meet_irreducible == oracle::is_prime(a, bits)
        });
        let ok = report.holds()
            && report.filters == filters.len()
            && report.opens == opens
            && report.points == primes.len()
            && filters.len() == opens
            && clauses.discrepancies == 0
            && clauses_match;
        if !ok {
            failures.push(*name);
        }
        summary.push(format!("{name}:{}/{}", filters.len(), primes.len()));
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && elapsed < LIMIT_DUALITY,
        format!("filters/primes {}; failing {failures:?}; {elapsed:?}", summary.join(" ")),
    )
}

fn criterion_9() -> Outcome {
    let k = 6;
    let mu = RationalBox::new(vec![int(0)], vec![rat(1, 4)]).unwrap();
    let Ok(report) = average_truth_value(&Formula::var(0), &tent_substitution(), k, &mu, 100_000) else {
        return outcome(false, "average failed");
    };
    let expected: Vec<Rational> = (0..=k)
        .map(|j| {
            let g = |x: &Rational| (0..j).fold(x.clone(), |y, _| oracle::tent(&y));
            oracle::trapezoid(g, &int(0), &rat(1, 4), 1 << (j + 2)) * int(4)
        })
        .collect();
    let stated = [rat(1, 8), rat(1, 4), rat(1, 2), rat(1, 2)];
    let pass = report.values == expected
        && report.values[..4] == stated
        && report.values[2..].iter().all(|v| *v == rat(1, 2))
        && report.lebesgue == rat(1, 2);
    let shown: Vec<String> = report.values.iter().map(ToString::to_string).collect();
    outcome(pass, format!("values {}, f_lambda {}", shown.join(", "), report.lebesgue))
}

fn tent_iterate(x: &Rational, times: usize) -> Rational {
    (0..times).fold(x.clone(), |y, _| oracle::tent(&y))
}

fn criterion_10() -> Outcome {
    let tent = InducedMap::new(&tent_substitution()).unwrap();
    let tent2 = InducedMap::new(&tent_product(2)).unwrap();
    let one = empirical_statistics(&tent, &[0.1234567], STATS_ITERATIONS, 16, STATS_JITTER, SEED).unwrap();
    let two_d = empirical_statistics(&tent2, &[0.1234567, 0.7654321], STATS_ITERATIONS, 4, STATS_JITTER, SEED).unwrap();
    let stats_ok = one.max_discrepancy < STATS_TOLERANCE && two_d.max_discrepancy < STATS_TOLERANCE;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    let mut closure_failures = 0;
    for n in 1..=2usize {
        let mut maps: Vec<Substitution> = vec![tent_product(n), Substitution::identity(n), tent_on(n, 0)];
        if n == 2 {
            maps.push(rotation_homeomorphism().unwrap().0);
        } else {
            maps.push(mvdyn::dynamics::flip_substitution());
        }
        maps.extend((0..4).map(|_| random_substitution(&mut rng, n, 4)));
        let induced: Vec<InducedMap> = maps.iter().map(|s| InducedMap::formulas_only(s)).collect();
        for d in 1..=12u64 {
            let points = full_rational_orbit(n, d, 1 << 20).unwrap();
            let size = (d + 1).pow(n as u32);
            let dd = BigInt::from(d);
            let grid_ok = points.len() as u64 == size && points.iter().all(|p| dd.is_multiple_of(&oracle::den(p)));
            let closed = orbit_closure_check(&points, &dd, &induced).unwrap().is_none();
            let finite = points.iter().all(|p| {
                matches!(orbit(&induced[0], p, size as usize + 1).unwrap().status, OrbitStatus::CycleEntered { .. })
            });
            closure_failures += usize::from(!(grid_ok && closed && finite));
        }
    }

    let q = InducedMap::new(&tent_on(2, 0)).unwrap();
    let r = InducedMap::new(&tent_on(2, 1)).unwrap();
    let random_box = |rng: &mut ChaCha8Rng| {
        let (lo, hi): (Vec<Rational>, Vec<Rational>) = (0..2)
            .map(|_| {
                let w = rng.gen_range(4..=10);
                let lo = rng.gen_range(0..=40 - w);
                (rat(lo, 40), rat(lo + w, 40))
            })
            .unzip();
        RationalBox::new(lo, hi).unwrap()
    };
    let mut hits = 0;
    let mut worst = (0, 0);
    for _ in 0..20 {
        let (a, b) = (random_box(&mut rng), random_box(&mut rng));
        if let Some(hit) = box_hitting_search(&q, &r, &a, &b, 12, 12, 97).unwrap() {
            let w = &hit.witness;
            let image = vec![tent_iterate(&w[0], hit.h), tent_iterate(&w[1], hit.k)];
            if a.contains(w) && b.contains_interior(&image) && image == hit.image && hit.h <= 12 && hit.k <= 12 {
                hits += 1;
                worst = (worst.0.max(hit.h), worst.1.max(hit.k));
            }
        }
    }
    outcome(
        stats_ok && closure_failures == 0 && hits == 20,
        format!(
            "discrepancy tent {:.4}, tent x tent {:.4}; closure failures {closure_failures}; box hits {hits}/20 (max h {}, max k {})",
            one.max_discrepancy, two_d.max_discrepancy, worst.0, worst.1
        ),
    )
}

/// A random continuous integer-affine function `[0,1] → [0,1]`.
fn random_mcnaughton(rng: &mut ChaCha8Rng) -> PwlFunction {
    let in_range = |a: i64, b: i64, x: &Rational| {
        let v = x * int(a) + int(b);
        v >= int(0) && v <= int(1)
    };
    'retry: loop {
        let mut piece = (rng.gen_range(-4..=4), rng.gen_range(0..=1));
        let mut breaks = vec![int(0)];
        let mut pieces = Vec::new();
        for _ in 0..rng.gen_range(0..=5) {
            let x = breaks.last().unwrap().clone();
            let next = (0..60).find_map(|_| {
                let (a, b) = (rng.gen_range(-4..=4i64), rng.gen_range(-4..=5i64));
                if a == piece.0 {
                    return None;
                }
                let at = Rational::new((b - piece.1).into(), (piece.0 - a).into());
                (at > x && at < int(1) && in_range(piece.0, piece.1, &at)).then_some(((a, b), at))
            });
            let Some((p, at)) = next else { break };
            pieces.push(piece);
            breaks.push(at);
            piece = p;
        }
        if !in_range(piece.0, piece.1, &int(1)) {
            continue 'retry;
        }
        pieces.push(piece);
        breaks.push(int(1));
        let vertices = breaks.into_iter().map(|x| vec![x]).collect();
        let cells = (0..pieces.len()).map(|i| vec![i, i + 1]).collect();
        let pieces = pieces.iter().map(|&(a, b)| AffinePieceZ::from_i64(&[a], b)).collect();
        return PwlFunction::new(CellComplex::new(1, vertices, cells).unwrap(), pieces).unwrap();
    }
}

struct PwlEngine {
    faithful_mismatches: usize,
    round_trip_failures: usize,
    integral: Rational,
    oracle_integral: Rational,
}

fn pwl_engine() -> PwlEngine {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 11);
    let mut faithful_mismatches = 0;
    for _ in 0..500 {
        let g = random_formula(&mut rng, FormulaShape::new(2, 6));
        let pwl = PwlFunction::from_formula(&g, 2).unwrap();
        for _ in 0..20 {
            let p = vec![random_unit(&mut rng, 40), random_unit(&mut rng, 40)];
            faithful_mismatches += usize::from(pwl.eval(&p).unwrap() != oracle::luk(&g, &p));
        }
    }
    let mut round_trip_failures = 0;
    for _ in 0..100 {
        let h = random_mcnaughton(&mut rng);
        let ok = pwl_to_formula_1d(&h).is_ok_and(|g| {
            let back = PwlFunction::from_formula(&g, 1).unwrap();
            let vs = h.complex().vertices();
            let samples = vs.iter().map(|v| v[0].clone()).chain(vs.windows(2).map(|w| (&w[0][0] + &w[1][0]) / int(2)));
            h.equal(&back).unwrap() && samples.into_iter().all(|x| oracle::luk(&g, &[x.clone()]) == h.eval(&[x]).unwrap())
        });
        round_trip_failures += usize::from(!ok);
    }
    let figure = f("!x0 | ((x0 & !x0) (+) (x0 & !x0))");
    let integral = PwlFunction::from_formula(&figure, 1).unwrap().integral();
    let oracle_integral = oracle::trapezoid(|x| oracle::luk(&figure, &[x.clone()]), &int(0), &int(1), 6);
    PwlEngine { faithful_mismatches, round_trip_failures, integral, oracle_integral }
}

fn criterion_11() -> Outcome {
    let e = pwl_engine();
    let stated = rat(INTEGRAL_STATED.0, INTEGRAL_STATED.1);
    let pass = e.faithful_mismatches == 0 && e.round_trip_failures == 0 && e.integral == stated;
    outcome(
        pass,
        format!(
            "faithfulness {} mismatches in 10000; round trip {} failures in 100; integral {} (independent oracle {}, stated {stated})",
            e.faithful_mismatches, e.round_trip_failures, e.integral, e.oracle_integral
        ),
    )
}

fn criterion_12() -> Outcome {
    let (sigma, map) = rotation_homeomorphism().unwrap();
    let images = map.vertex_images().unwrap();
    let cx = &map.complex;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 12);
    let mut interior_mismatches = 0;
    for _ in 0..50 {
        let j = rng.gen_range(0..cx.cells().len());
        let cell = &cx.cells()[j];
        let w: Vec<i64> = (0..3).map(|_| rng.gen_range(1..=20)).collect();
        let total: i64 = w.iter().sum();
        let p: Point = (0..2)
            .map(|c| (0..3).map(|k| &cx.vertices()[cell[k]][c] * rat(w[k], total)).sum())
            .collect();
        let v: Point = loop {
            let v = vec![int(rng.gen_range(-5..=5)), int(rng.gen_range(-5..=5))];
            if v.iter().any(|x| !x.is_zero()) {
                break v;
            }
        };
        let src: Vec<Point> = cell.iter().map(|&k| cx.vertices()[k].clone()).collect();
        let dst: Vec<Point> = cell.iter().map(|&k| images[k].clone()).collect();
        let a = oracle::linear_part(&src, &dst);
        let want: Point = (0..2).map(|r| &a[r][0] * &v[0] + &a[r][1] * &v[1]).collect();
        interior_mismatches += usize::from(tsujii_differential(&map, &p, &v).ok() != Some(want));
    }

    // One-sided quotients at creases, from the formulas rather than the pieces.
    let quotient = |g: &Substitution, p: &[Rational], v: &[Rational]| -> Point {
        let h = rat(1, 1_000_000);
        let moved: Point = p.iter().zip(v).map(|(x, d)| x + &h * d).collect();
        g.images().iter().map(|c| (oracle::luk(c, &moved) - oracle::luk(c, p)) / &h).collect()
    };
    let tent = InducedMap::new(&tent_substitution()).unwrap();
    let tent_map = tent.pwl().unwrap();
    let mut crease_failures = 0;
    let mut tent_values = Vec::new();
    let half = vec![rat(1, 2)];
    for v in [int(1), int(-1), int(3), rat(-2, 7)] {
        let d = tsujii_differential(tent_map, &half, &[v.clone()]).unwrap();
        tent_values.push(format!("{v}:{}", d[0]));
        crease_failures += usize::from(d != quotient(&tent_substitution(), &half, &[v.clone()]));
        for c in [rat(1, 3), int(2), int(5)] {
            let scaled = tsujii_differential(tent_map, &half, &[&c * &v]).unwrap();
            crease_failures += usize::from(scaled != vec![&c * &d[0]]);
        }
    }
    for p in rotation_points() {
        let v: Point = vec![int(rng.gen_range(-3..=3)), int(rng.gen_range(-3..=3))];
        let d = tsujii_differential(&map, &p, &v).unwrap();
        crease_failures += usize::from(d != quotient(&sigma, &p, &v));
        let c = rat(5, 2);
        let scaled: Point = v.iter().map(|x| x * &c).collect();
        let ds = tsujii_differential(&map, &p, &scaled).unwrap();
        crease_failures += usize::from(ds != d.iter().map(|x| x * &c).collect::<Point>());
    }
    outcome(
        interior_mismatches == 0 && crease_failures == 0,
        format!(
            "interior {interior_mismatches}/50 mismatches; crease failures {crease_failures}; tent at 1/2 {}",
            tent_values.join(" ")
        ),
    )
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 12] = [
        (1, "simplex-pair matrix", criterion_1),
        (2, "t-norm truth tables", criterion_2),
        (3, "residuation and order laws", criterion_3),
        (4, "odometer permutation", criterion_4),
        (5, "deductions from non-tautologies", criterion_5),
        (6, "denominators and reachability", criterion_6),
        (7, "rotation homeomorphism and flips", criterion_7),
        (8, "filter/open duality", criterion_8),
        (9, "average truth values", criterion_9),
        (10, "statistics, finite orbits, box hits", criterion_10),
        (11, "PWL engine", criterion_11),
        (12, "directional derivatives", criterion_12),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let known = if !o.pass && KNOWN_FAILURES.contains(&id) { " (known)" } else { "" };
        println!("{tag} criterion {id:>2} {name}: {}{known} [{:.2?}]", o.detail, start.elapsed());
        if o.pass == KNOWN_FAILURES.contains(&id) {
            unexpected.push(id);
        }
    }
    // The rest of the engine criterion must hold even though the stated
    // integral does not.
    let e = pwl_engine();
    let engine_ok = e.faithful_mismatches == 0 && e.round_trip_failures == 0 && e.integral == e.oracle_integral;
    println!(
        "{} engine without the stated integral: integral {} equals oracle {}",
        if engine_ok { "PASS" } else { "FAIL" },
        e.integral,
        e.oracle_integral
    );
    if !unexpected.is_empty() || !engine_ok {
        eprintln!("unexpected outcomes for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
