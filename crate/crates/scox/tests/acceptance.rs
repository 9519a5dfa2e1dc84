//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p scox --test acceptance`. The process exits with a
//! non-zero status if any criterion fails.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scox::io::parse_expression;
use scox::relations::TableRow;
use scox::webs::*;
use scox::{CoxeterSystem, DoubleCoset, Element, Expression, GenSubset, RelationKind, ScoxError, Step};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn named(name: &str) -> CoxeterSystem {
    CoxeterSystem::named(name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

// ---------------------------------------------------------------------------
// 1. Switchback tables of the exceptional types.
// ---------------------------------------------------------------------------

/// `(a, b, c)` rows with `c` written without separators, as listed for each
/// exceptional type (only `a ≤ b`; the rest follow by flipping).
const E6_ROWS: &[(usize, usize, &str)] = &[
    (1, 1, "6"),
    (1, 2, "31"),
    (1, 3, "52"),
    (1, 4, "435"),
    (1, 5, "26"),
    (6, 6, "1"),
    (2, 3, "36"),
    (2, 4, "4242"),
    (2, 5, "51"),
    (2, 6, "65"),
    (5, 5, "464"),
    (5, 6, "23"),
    (3, 3, "414"),
    (3, 4, "546"),
    (3, 6, "12"),
    (4, 5, "143"),
    (4, 6, "354"),
];

const E7_ROWS: &[(usize, usize, &str)] = &[
    (1, 2, "27"),
    (1, 3, "3131"),
    (1, 4, "4363"),
    (1, 5, "5242"),
    (1, 6, "61"),
    (1, 7, "76"),
    (6, 7, "71"),
    (2, 3, "657"),
    (2, 4, "5152"),
    (2, 5, "4251"),
    (2, 6, "375"),
    (2, 7, "12"),
    (5, 6, "732"),
    (5, 7, "623"),
    (3, 4, "6341"),
    (3, 5, "5474"),
    (3, 6, "4143"),
    (3, 7, "265"),
    (4, 5, "7453"),
    (4, 6, "6464"),
    (4, 7, "5354"),
];

const E8_ROWS: &[(usize, usize, &str)] = &[
    (1, 2, "3128"),
    (1, 3, "2821"),
    (1, 4, "437573"),
    (1, 5, "525152"),
    (1, 6, "6161"),
    (1, 7, "7686"),
    (1, 8, "81"),
    (2, 3, "7238"),
    (2, 4, "658562"),
    (2, 5, "515251"),
    (2, 6, "426585"),
    (2, 7, "3832"),
    (2, 8, "1312"),
    (7, 8, "8787"),
    (3, 4, "757341"),
    (3, 5, "635484"),
    (3, 6, "548453"),
    (3, 7, "414375"),
    (3, 8, "2723"),
    (6, 7, "8671"),
    (6, 8, "7176"),
    (4, 5, "845363"),
    (4, 6, "746474"),
    (4, 7, "647464"),
    (4, 8, "536354"),
    (5, 6, "856242"),
    (5, 7, "734143"),
    (5, 8, "624265"),
];

const F4_ROWS: &[(usize, usize, &str)] =
    &[(1, 2, "2121"), (1, 3, "3242"), (1, 4, "41"), (2, 3, "4231"), (2, 4, "3132"), (3, 4, "4343")];

const H3_ROWS: &[(usize, usize, &str)] = &[(1, 2, "3231"), (1, 3, "2132"), (2, 3, "3121")];

const H4_ROWS: &[(usize, usize, &str)] = &[
    (1, 2, "21212121"),
    (1, 3, "3242313242"),
    (1, 4, "4341434143"),
    (2, 3, "4231324231"),
    (2, 4, "3132423132"),
    (3, 4, "4143414341"),
];

fn digits(c: &str) -> Vec<usize> {
    c.chars().map(|d| d.to_digit(10).expect("digit") as usize).collect()
}

/// Checks the regenerated table of `name` against the listed rows and their
/// flips: every listed row matches verbatim, `(b, a)` carries the reversed
/// sequence, and the table has no other rows.
fn check_table(name: &str, listed: &[(usize, usize, &str)]) -> Result<usize, String> {
    let sys = named(name);
    let table: Vec<TableRow> = sys.switchback_table().map_err(|e| format!("{name}: {e}"))?;
    let got: BTreeMap<(usize, usize), Vec<usize>> = table.into_iter().map(|r| ((r.a, r.b), r.c)).collect();
    let mut expected: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &(a, b, c) in listed {
        let c = digits(c);
        let mut rev = c.clone();
        rev.reverse();
        expected.insert((a, b), c);
        expected.insert((b, a), rev);
    }
    for (&(a, b), c) in &expected {
        match got.get(&(a, b)) {
            Some(g) if g == c => {}
            Some(g) => return Err(format!("{name} ({a},{b}): expected {c:?}, computed {g:?}")),
            None => return Err(format!("{name} ({a},{b}): no switchback computed")),
        }
    }
    ensure!(got.len() == expected.len(), "{name}: {} computed rows, {} expected", got.len(), expected.len());
    Ok(listed.len())
}

fn criterion_tables() -> Outcome {
    let start = Instant::now();
    let mut rows = 0;
    for (name, listed) in [("E6", E6_ROWS), ("E7", E7_ROWS), ("F4", F4_ROWS), ("H3", H3_ROWS), ("H4", H4_ROWS)] {
        rows += check_table(name, listed)?;
    }
    let small = start.elapsed();
    let start = Instant::now();
    rows += check_table("E8", E8_ROWS)?;
    let e8 = start.elapsed();
    ensure!(
        E6_ROWS.len() == 17 && E7_ROWS.len() == 21 && E8_ROWS.len() == 28 && F4_ROWS.len() == 6 && H3_ROWS.len() == 3 && H4_ROWS.len() == 6,
        "row counts of the transcribed tables"
    );
    ensure!(small < Duration::from_secs(10), "E6/E7/F4/H3/H4 took {small:?}");
    ensure!(e8 < Duration::from_secs(600), "E8 took {e8:?}");
    Ok(format!("{rows} listed rows plus flips; E6/E7/F4/H3/H4 in {small:.2?}, E8 in {e8:.2?}"))
}

// ---------------------------------------------------------------------------
// 2. Closed-form families.
// ---------------------------------------------------------------------------

/// The computed table of `sys` as a map, with `None` for pairs that have no
/// switchback.
fn table_map(sys: &CoxeterSystem) -> BTreeMap<(usize, usize), Option<Vec<usize>>> {
    let s = sys.all();
    let mut out = BTreeMap::new();
    for a in 0..sys.rank() {
        for b in 0..sys.rank() {
            let v = match sys.rotation_sequence(s.without(a), a, b) {
                Ok(r) => Some(r.c().into_iter().map(|g| g + 1).collect()),
                Err(ScoxError::NoRotation) => None,
                Err(e) => panic!("{}: {e}", sys.type_name()),
            };
            out.insert((a + 1, b + 1), v);
        }
    }
    out
}

fn flipped(c: &[usize]) -> Vec<usize> {
    c.iter().rev().copied().collect()
}

fn criterion_closed_forms() -> Result<String, String> {
    let mut checked = 0;
    // Type A_n: c = a + b, or a + b − n − 1, none when a + b = n + 1.
    for n in 1..=8usize {
        let t = table_map(&named(&format!("A{n}")));
        for a in 1..=n {
            for b in 1..=n {
                let want = match a + b {
                    x if x == n + 1 => None,
                    x if x <= n => Some(vec![x]),
                    x => Some(vec![x - n - 1]),
                };
                ensure!(t[&(a, b)] == want, "A{n} ({a},{b}): {:?} vs {want:?}", t[&(a, b)]);
                checked += 1;
            }
        }
    }
    // Type B_{n+1}, nodes 0..n with the double bond between 0 and 1; node k
    // is generator k + 1. For a < b: c = (n + 1 − b + a, a); a > b by flipping.
    for n in 1..=5usize {
        let t = table_map(&named(&format!("B{}", n + 1)));
        for a in 0..=n {
            for b in 0..=n {
                let want = match a.cmp(&b) {
                    std::cmp::Ordering::Equal => None,
                    std::cmp::Ordering::Less => Some(vec![n + 1 - b + a + 1, a + 1]),
                    std::cmp::Ordering::Greater => Some(flipped(&[n + 1 - a + b + 1, b + 1])),
                };
                ensure!(t[&(a + 1, b + 1)] == want, "B{} ({a},{b}): {:?} vs {want:?}", n + 1, t[&(a + 1, b + 1)]);
                checked += 1;
            }
        }
    }
    // Type D_{n+2}: nodes 0, 0̄, 1, …, n as generators 1, 2, 3, …, n + 2.
    let mut case2_rule = BTreeSet::new();
    for n in 1..=4usize {
        let t = table_map(&named(&format!("D{}", n + 2)));
        let g = |k: usize| k + 2; // node k ≥ 1
        let bar = |x: usize| 3 - x; // 1 ↔ 2
        let mut expected: BTreeMap<(usize, usize), Option<Vec<usize>>> = BTreeMap::new();
        for a in [1, 2] {
            // Case (1): the other branch node (up to conjugation by w₀).
            let b = if n % 2 == 0 { bar(a) } else { a };
            expected.insert((a, b), Some(vec![g(n)]));
            expected.insert((a, if n % 2 == 0 { a } else { bar(a) }), None);
            // Case (2): 1 ≤ b < n, c = (n − b, a or ā) — resolved by computation below.
            for b in 1..n {
                let got = t[&(a, g(b))].clone().ok_or_else(|| format!("D{} ({a},{b}): no switchback", n + 2))?;
                ensure!(got.len() == 2 && got[0] == g(n - b), "D{} case 2 ({a},{b}): {got:?}", n + 2);
                ensure!(got[1] == a || got[1] == bar(a), "D{} case 2 ({a},{b}): {got:?}", n + 2);
                case2_rule.insert(((n - b) % 2, got[1] == a));
                expected.insert((a, g(b)), Some(got));
            }
            // Case (3).
            expected.insert((a, g(n)), Some(vec![bar(a)]));
        }
        // Case (4): 1 ≤ a < b ≤ n.
        for a in 1..=n {
            for b in a + 1..=n {
                expected.insert((g(a), g(b)), Some(vec![g(n + 1 - b + a), g(a)]));
            }
            expected.insert((g(a), g(a)), None);
        }
        // Remaining pairs by flipping.
        let listed: Vec<_> = expected.iter().map(|(k, v)| (*k, v.clone())).collect();
        for ((a, b), c) in listed {
            expected.entry((b, a)).or_insert_with(|| c.as_deref().map(flipped));
        }
        ensure!(expected.len() == (n + 2) * (n + 2), "D{}: expected table covers {} pairs", n + 2, expected.len());
        for (k, want) in &expected {
            ensure!(&t[k] == want, "D{} {k:?}: {:?} vs {want:?}", n + 2, t[k]);
            checked += 1;
        }
    }
    // Case (2) must follow one parity rule of n − b.
    let parity_rule: BTreeMap<usize, bool> = case2_rule.iter().copied().collect();
    ensure!(parity_rule.len() == case2_rule.len(), "type D case 2 is not a function of the parity of n − b: {case2_rule:?}");
    // Dihedral I₂(m), J = {s}: adding t and removing t (m odd) or s (m even)
    // gives c = s, t, s, … of length m − 2; the added and removed letters of
    // the right-hand side spell the two sides of the braid relation.
    for m in 3..=8u32 {
        let sys = named(&format!("I2({m})"));
        let (s, t) = (0, 1);
        let b = if m % 2 == 1 { t } else { s };
        let rel = sys.switchback(GenSubset::singleton(s), t, b).map_err(|e| format!("I2({m}): {e}"))?;
        let c = match &rel.kind {
            RelationKind::Switchback(r) => r.c(),
            other => return Err(format!("I2({m}): unexpected relation {other:?}")),
        };
        let alt = |first: usize, len: usize| (0..len).map(|k| if k % 2 == 0 { first } else { 1 - first }).collect::<Vec<_>>();
        ensure!(c == alt(s, m as usize - 2), "I2({m}): c = {c:?}");
        let plus: Vec<usize> = std::iter::once(s).chain(rel.rhs.steps().iter().filter(|x| x.sign == scox::Sign::Plus).map(|x| x.gen)).collect();
        let minus: Vec<usize> = std::iter::once(t).chain(rel.rhs.steps().iter().filter(|x| x.sign == scox::Sign::Minus).map(|x| x.gen)).collect();
        ensure!(plus == alt(s, m as usize) && minus == alt(t, m as usize), "I2({m}): braid words {plus:?} / {minus:?}");
        let w_st = sys.element_from_word(&plus).unwrap();
        let w_ts = sys.element_from_word(&minus).unwrap();
        ensure!(w_st == w_ts && sys.length(&w_st) == m as usize, "I2({m}): braid words differ as elements");
        ensure!(sys.evaluate(&rel.lhs) == sys.evaluate(&rel.rhs), "I2({m}): sides evaluate differently");
        checked += 1;
    }
    let rule: Vec<String> =
        parity_rule.iter().map(|(p, same)| format!("n−b {}: c = {}", if *p == 0 { "even" } else { "odd" }, if *same { "a" } else { "ā" })).collect();
    Ok(format!("{checked} pairs over A1–A8, B2–B6, D3–D6, I2(3..8); type D case (2): {}", rule.join(", ")))
}

// ---------------------------------------------------------------------------
// 3. Matsumoto's theorem.
// ---------------------------------------------------------------------------

fn criterion_matsumoto() -> Outcome {
    let mut summary = Vec::new();
    let fast = ["A1×A1", "A2", "B2", "I2(5)", "I2(6)", "I2(7)", "I2(8)", "A3", "B3"];
    for name in fast.iter().copied().chain(["H3"]) {
        let start = Instant::now();
        let sys = named(name);
        let report = sys.matsumoto_verify().map_err(|e| format!("{name}: {e}"))?;
        ensure!(report.failures().is_empty(), "{name}: {} disconnected graphs", report.failures().len());
        ensure!(report.entries.iter().all(|e| e.rex_count > 0), "{name}: a coset without reduced expressions");
        // Every coset of every pair of subsets is covered: compare with the
        // number of orbit pairs from the element list.
        if name != "H3" {
            let elems = sys.elements(1 << 20).unwrap();
            let mut expected = 0;
            for j in sys.all().subsets() {
                for i in sys.all().subsets() {
                    expected += elems.iter().filter(|w| (sys.left_descents(w).bits() & j.bits()) == 0 && (sys.right_descents(w).bits() & i.bits()) == 0).count();
                }
            }
            ensure!(report.entries.len() == expected, "{name}: {} cosets checked, {expected} expected", report.entries.len());
        }
        summary.push(format!("{name} {} cosets ({:.1?})", report.entries.len(), start.elapsed()));
    }
    Ok(summary.join(", "))
}

// ---------------------------------------------------------------------------
// 4. Equivalence of the reducedness criteria.
// ---------------------------------------------------------------------------

fn all_expressions(sys: &CoxeterSystem, max_width: usize) -> Vec<Expression> {
    let mut out = Vec::new();
    let mut frontier: Vec<(GenSubset, Vec<Step>)> = sys.all().subsets().filter(|&j| sys.is_finitary(j)).map(|j| (j, Vec::new())).collect();
    for width in 0..=max_width {
        let mut next = Vec::new();
        for (start, steps) in frontier {
            out.push(Expression::new(sys, start, steps.clone()).unwrap());
            if width == max_width {
                continue;
            }
            let cur = steps.iter().fold(start, |acc, s| s.apply(acc));
            for g in 0..sys.rank() {
                let st = if cur.contains(g) { Step::minus(g) } else { Step::plus(g) };
                if sys.is_finitary(st.apply(cur)) {
                    let mut v = steps.clone();
                    v.push(st);
                    next.push((start, v));
                }
            }
        }
        frontier = next;
    }
    out
}

fn criterion_reducedness() -> Outcome {
    let mut counts = Vec::new();
    for (name, width) in [("A2", 6), ("B2", 5)] {
        let sys = named(name);
        let exprs = all_expressions(&sys, width);
        let mut reduced = 0;
        for e in &exprs {
            let by_length = sys.expr_lengths(e).total == sys.coset_lengths(&sys.evaluate(e)).total;
            let williamson = sys.is_reduced_williamson(e);
            let certificate = sys.is_reduced(e);
            let multistep = sys.is_reduced_multistep(&sys.singlestep_to_multistep(e));
            ensure!(
                by_length == williamson && by_length == certificate && by_length == multistep,
                "{name} {}: length {by_length}, Williamson {williamson}, certificate {certificate}, multistep {multistep}",
                sys.fmt_expression(e)
            );
            reduced += usize::from(by_length);
        }
        counts.push(format!("{name}: {} expressions ({reduced} reduced)", exprs.len()));
    }
    for name in ["A2", "B2", "A3"] {
        let sys = named(name);
        let rep = sys.halfspace_check(100_000).map_err(|e| e.to_string())?;
        ensure!(rep.passed() && rep.checks > 0, "{name} halfspace: {:?}", rep.failures);
    }
    Ok(format!("{}; halfspace on A2, B2, A3", counts.join(", ")))
}

// ---------------------------------------------------------------------------
// 5. Micro-facts.
// ---------------------------------------------------------------------------

fn letters_a3() -> CoxeterSystem {
    let m = scox::CoxeterMatrix::new(vec![
        vec![Some(1), Some(3), Some(2)],
        vec![Some(3), Some(1), Some(3)],
        vec![Some(2), Some(3), Some(1)],
    ])
    .unwrap();
    CoxeterSystem::from_matrix(m, vec!["s".into(), "t".into(), "u".into()]).unwrap()
}

fn criterion_micro_facts() -> Outcome {
    // {sts}: the (∅, ∅)-coset of the longest element of S3.
    let a2 = named("A2");
    let w0 = a2.longest_element(a2.all()).unwrap();
    let p = a2.coset_of(GenSubset::EMPTY, &w0, GenSubset::EMPTY).unwrap();
    let n = a2.rex_set(&p).unwrap().len();
    ensure!(n == 6, "{{sts}} has {n} reduced expressions");

    let a3 = letters_a3();
    let e = parse_expression(&a3, "[[st,stu,tu]]").unwrap();
    let q = a3.evaluate(&e);
    let rexes = a3.rex_set(&q).unwrap();
    ensure!(rexes == vec![e.clone()], "[[st,stu,tu]] has {} reduced expressions", rexes.len());

    let st = GenSubset::from_gens([0, 1]);
    let top = a3.coset_of(st, &a3.longest_element(a3.all()).unwrap(), st).unwrap();
    let low = a3.low_road(&top);
    let want = parse_expression(&a3, "[st,s,su,s,st]").unwrap();
    ensure!(low == want, "low road is {}", a3.fmt_expression(&low));

    let g = a2.build_complex(GenSubset::EMPTY, 1000).unwrap();
    ensure!(g.vertices.len() == 13, "Cox_∅(S3) has {} vertices", g.vertices.len());
    let full = a2.coset_of(GenSubset::EMPTY, &a2.identity().unwrap(), a2.all()).unwrap();
    let t = a2.element_from_word(&[1]).unwrap();
    let flagged = a2.coset_of(GenSubset::EMPTY, &t, GenSubset::singleton(0)).unwrap();
    let (from, to) = (g.vertex_index(&full).unwrap(), g.vertex_index(&flagged).unwrap());
    ensure!(a2.coset_elements(&flagged, 10).unwrap().len() == 2, "{{t, ts}} has the wrong size");
    ensure!(!g.edges.iter().any(|x| x.from == from && x.to == to), "Cox_∅(S3) contains the edge W → {{t, ts}}");

    let a3n = named("A3");
    for w in a3n.elements(100).unwrap() {
        let p = a3n.coset_of(GenSubset::EMPTY, &w, GenSubset::EMPTY).unwrap();
        ensure!(a3n.coset_lengths(&p).total == 2 * a3n.length(&w), "ℓ({{w}}) ≠ 2ℓ(w) for {}", a3n.fmt_element(&w));
    }
    Ok("6 rexes of sts; [[st,stu,tu]] unique; low road [st,s,su,s,st]; Cox_∅(S3) 13 vertices without W → {t,ts}; ℓ({w}) = 2ℓ(w) on S4".into())
}

// ---------------------------------------------------------------------------
// 6. Normalization.
// ---------------------------------------------------------------------------

fn random_expression(sys: &CoxeterSystem, rng: &mut ChaCha8Rng, width: usize) -> Expression {
    let n = sys.rank();
    let start = GenSubset::from_bits(rng.gen_range(0..(1u64 << n)));
    let mut cur = start;
    let mut steps = Vec::new();
    for _ in 0..width {
        let g = rng.gen_range(0..n);
        let st = if cur.contains(g) { Step::minus(g) } else { Step::plus(g) };
        cur = st.apply(cur);
        steps.push(st);
    }
    Expression::new(sys, start, steps).unwrap()
}

fn criterion_normalization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5c0c);
    let mut total_steps = 0;
    let mut count = 0;
    for name in ["A3", "B3"] {
        let sys = named(name);
        for _ in 0..10_000 {
            let width = rng.gen_range(0..=10);
            let e = random_expression(&sys, &mut rng, width);
            let tr = sys.normalize(&e);
            tr.replay(&sys).map_err(|err| format!("{name} {}: replay failed: {err}", sys.fmt_expression(&e)))?;
            let p = sys.evaluate(&e);
            ensure!(sys.evaluate(&tr.final_expr) == p, "{name} {}: coset changed", sys.fmt_expression(&e));
            ensure!(
                sys.expr_lengths(&tr.final_expr).total == sys.coset_lengths(&p).total,
                "{name} {}: result {} is not reduced",
                sys.fmt_expression(&e),
                sys.fmt_expression(&tr.final_expr)
            );
            for st in &tr.steps {
                if st.relation.kind == RelationKind::StarQuadratic {
                    ensure!(st.relation.is_length_reducing(), "{name} {}: quadratic expansion used", sys.fmt_expression(&e));
                }
            }
            total_steps += tr.steps.len();
            count += 1;
        }
    }
    Ok(format!("{count} random expressions on A3 and B3, {total_steps} replayed steps"))
}

// ---------------------------------------------------------------------------
// 7. Karoubi envelope.
// ---------------------------------------------------------------------------

fn criterion_karoubi() -> Outcome {
    let sys = named("A3");
    let elems = sys.elements(100).unwrap();
    let subsets: Vec<GenSubset> = sys.all().subsets().collect();
    let mut cosets: BTreeMap<(u64, u64), Vec<DoubleCoset>> = BTreeMap::new();
    for &j in &subsets {
        for &i in &subsets {
            let ps = sys.all_cosets(j, i, 100).unwrap();
            let maxima: HashSet<Element> = ps.iter().map(|p| p.max().clone()).collect();
            ensure!(maxima.len() == ps.len(), "({j:?},{i:?}): p ↦ p̄ is not injective");
            let image: HashSet<Element> =
                elems.iter().filter(|w| j.is_subset(sys.left_descents(w)) && i.is_subset(sys.right_descents(w))).cloned().collect();
            ensure!(maxima == image, "({j:?},{i:?}): p ↦ p̄ is not onto {{w : J ⊆ λ(w), I ⊆ ρ(w)}}");
            cosets.insert((j.bits(), i.bits()), ps);
        }
    }
    // Composition: q̄ ⋆ p̄ is the Bruhat-maximum of {uv : u ≤ q̄, v ≤ p̄}.
    let below: BTreeMap<Vec<usize>, Vec<&Element>> =
        elems.iter().map(|x| (sys.reduced_word(x), elems.iter().filter(|u| sys.bruhat_leq(u, x)).collect())).collect();
    let mut demazure: BTreeMap<(Vec<usize>, Vec<usize>), Element> = BTreeMap::new();
    for x in &elems {
        for y in &elems {
            let products: Vec<Element> =
                below[&sys.reduced_word(x)].iter().flat_map(|u| below[&sys.reduced_word(y)].iter().map(|v| sys.mul(u, v))).collect();
            let top = products.iter().max_by_key(|z| sys.length(z)).unwrap().clone();
            ensure!(products.iter().all(|z| sys.bruhat_leq(z, &top)), "no Bruhat-maximal product");
            demazure.insert((sys.reduced_word(x), sys.reduced_word(y)), top);
        }
    }
    let mut compositions = 0;
    for &k in &subsets {
        for &j in &subsets {
            for &i in &subsets {
                for q in &cosets[&(k.bits(), j.bits())] {
                    for p in &cosets[&(j.bits(), i.bits())] {
                        let r = sys.compose(q, p).unwrap();
                        let want = &demazure[&(sys.reduced_word(q.max()), sys.reduced_word(p.max()))];
                        ensure!(r.max() == want, "composite maximum is not q̄ ⋆ p̄");
                        ensure!(r.left() == k && r.right() == i, "composite has the wrong endpoints");
                        compositions += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{} Hom-sets, {compositions} compositions on S4", cosets.len()))
}

// ---------------------------------------------------------------------------
// 8. Webs.
// ---------------------------------------------------------------------------

fn compositions(n: usize) -> Vec<ObjectSeq> {
    if n == 0 {
        return vec![ObjectSeq(Vec::new())];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first).into_iter().map(|s| s.0) {
            rest.insert(0, first);
            out.push(ObjectSeq(rest));
        }
    }
    out
}

fn random_web(rng: &mut ChaCha8Rng, total: usize, layers: usize) -> Web {
    let comps = compositions(total);
    let bottom = comps[rng.gen_range(0..comps.len())].clone();
    let mut cur = bottom.0.clone();
    let mut out = Vec::new();
    for _ in 0..layers {
        let k = rng.gen_range(0..cur.len());
        let layer = if cur[k] > 1 && (rng.gen_bool(0.5) || k + 1 >= cur.len()) {
            let a = rng.gen_range(1..cur[k]);
            Layer::Split { at: k, a, b: cur[k] - a }
        } else if k + 1 < cur.len() {
            Layer::Merge { at: k, a: cur[k], b: cur[k + 1] }
        } else {
            continue;
        };
        cur = layer.act(&cur).unwrap();
        out.push(layer);
    }
    Web::new(bottom, out).unwrap()
}

fn layer_degree_sum(w: &Web) -> usize {
    w.layers()
        .iter()
        .map(|l| match *l {
            Layer::Merge { a, b, .. } | Layer::Split { a, b, .. } => a * b,
        })
        .sum()
}

fn criterion_webs() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xeb5);
    let mut checks = 0usize;
    let mut by_relation: BTreeMap<&'static str, usize> = BTreeMap::new();
    // Soundness and degree bookkeeping on random sites.
    while checks < 20_000 {
        let total = rng.gen_range(2..=6);
        let len = rng.gen_range(0..12);
        let mut w = random_web(&mut rng, total, len);
        if rng.gen_bool(0.3) {
            let slices = w.slices();
            let layer = rng.gen_range(0..slices.len());
            let entries: Vec<usize> = (0..slices[layer].len()).filter(|&k| slices[layer].0[k] > 1).collect();
            if let Some(&entry) = entries.get(rng.gen_range(0..entries.len().max(1))) {
                let m = slices[layer].0[entry];
                let a = rng.gen_range(1..m);
                let w2 = insert_bigon(&w, layer, entry, a).unwrap();
                ensure!(w2.degree() == w.degree() + 2 * a * (m - a), "bigon insertion degree");
                w = w2;
            }
        }
        let sys = symmetric_group(total);
        let e = expression_from_web(&w);
        ensure!(w.degree() == layer_degree_sum(&w), "degree is not the sum of ab");
        ensure!(w.degree() == sys.expr_lengths(&e).total, "degree ≠ ℓ of the expression for {}", w.to_text());
        let p = evaluate_web(&w);
        ensure!(p == sys.evaluate(&e), "web evaluation differs from expression evaluation");
        let reduced = w.degree() == sys.coset_lengths(&p).total;
        ensure!(reduced == sys.is_reduced(&e), "degree criterion disagrees with reducedness");
        let sites = web_relation_sites(&w);
        if sites.is_empty() {
            continue;
        }
        let site = sites[rng.gen_range(0..sites.len())];
        let w2 = apply_web_relation(&w, site).map_err(|err| err.to_string())?;
        ensure!(evaluate_web(&w2) == p, "{} at layer {} of {} changes the evaluation", site.relation.name(), site.layer, w.to_text());
        ensure!(w2.top() == w.top() && w2.bottom() == w.bottom(), "boundary changed");
        match site.relation {
            WebRelation::Bigon => {
                let Layer::Split { a, b, .. } = w.layers()[site.layer] else { return Err("bigon site is not a split".into()) };
                ensure!(w2.degree() + 2 * a * b == w.degree(), "bigon removal must drop the degree by 2ab");
            }
            WebRelation::NonRedSquare => {
                let drops = w2.degree() < w.degree();
                ensure!(drops == (site.direction == WebDirection::Forward), "non-reduced square degree change");
            }
            r => ensure!(r.preserves_degree() && w2.degree() == w.degree(), "{} changes the degree", r.name()),
        }
        *by_relation.entry(site.relation.name()).or_default() += 1;
        checks += 1;
    }
    ensure!(by_relation.len() == WebRelation::ALL.len(), "not every relation was exercised: {by_relation:?}");

    // Relation classes versus hom counts.
    let mut pairs = 0;
    for total in 1..=5usize {
        let sys = symmetric_group(total);
        let comps = compositions(total);
        for n in &comps {
            for m in &comps {
                let cosets = sys.all_cosets(n.to_subset(), m.to_subset(), 1000).unwrap();
                let hom = hom_count(n, m).unwrap();
                ensure!(hom == cosets.len() as u64, "hom_count {n}→{m} = {hom}, {} cosets", cosets.len());
                let classes = if total <= 4 {
                    let dmax = cosets.iter().map(|p| sys.coset_lengths(p).total).max().unwrap();
                    web_class_count(n, m, dmax, 10_000_000).map_err(|e| e.to_string())?
                } else {
                    reduced_web_class_count(n, m, 10_000_000).map_err(|e| e.to_string())?
                };
                ensure!(classes as u64 == hom, "{n} → {m}: {classes} classes, {hom} cosets");
                pairs += 1;
            }
        }
    }
    // Every web normalizes, by recorded relation steps, to a reduced web (so
    // at N = 5 the reduced-web classes are all the classes).
    for _ in 0..2_000 {
        let total = rng.gen_range(2..=6);
        let len = rng.gen_range(0..14);
        let w = random_web(&mut rng, total, len);
        let d = web_normalize(&w).map_err(|e| e.to_string())?;
        let end = d.replay().map_err(|e| e.to_string())?;
        let p = evaluate_web(&w);
        ensure!(evaluate_web(&end) == p && end.degree() == symmetric_group(total).coset_lengths(&p).total, "normalization of {} is not reduced", w.to_text());
    }
    Ok(format!("{checks} sound relation applications ({by_relation:?}); class counts match for {pairs} boundary pairs with N ≤ 5; 2000 normalizations"))
}

// ---------------------------------------------------------------------------

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("switchback tables", criterion_tables),
        ("closed-form families", criterion_closed_forms),
        ("Matsumoto verification", criterion_matsumoto),
        ("reducedness criteria", criterion_reducedness),
        ("micro-facts", criterion_micro_facts),
        ("normalization", criterion_normalization),
        ("Karoubi envelope", criterion_karoubi),
        ("webs", criterion_webs),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|x| name.contains(x.as_str()) || *x == (k + 1).to_string()) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} — {detail} [{:.1?}]", k + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} — {why} [{:.1?}]", k + 1, start.elapsed());
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
