//! Acceptance battery. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::time::{Duration, Instant};

use mobinad::arith::{self, ArithError, Op};
use mobinad::logic::Logic;
use mobinad::oracle::OracleError;
use mobinad::order::{self, LatticeStrategy};
use mobinad::table::{self, Regime};
use mobinad::{Mark, Mobinad, NeutrosophicTriple, OrderResult, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use LatticeStrategy::{OrderFirst, Reduction};

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn m(text: &str) -> Mobinad {
    text.parse().unwrap_or_else(|e| panic!("literal {text}: {e}"))
}

fn triple(t: &str, i: &str, f: &str) -> NeutrosophicTriple {
    NeutrosophicTriple::new(m(t), m(i), m(f))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_rational(r: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Scalar {
    Scalar::ratio(r.gen_range(lo * den..=hi * den), den)
}

fn random_mark(r: &mut ChaCha8Rng) -> Mark {
    Mark::ALL[r.gen_range(0..7)]
}

/// Three pairwise distinct values, each with a random mark.
fn distinct_triple(r: &mut ChaCha8Rng) -> [Mobinad; 3] {
    loop {
        let v: Vec<Scalar> = (0..3).map(|_| random_rational(r, -5, 5, 64)).collect();
        if v[0] != v[1] && v[1] != v[2] && v[0] != v[2] {
            return [0, 1, 2].map(|i| Mobinad::new(v[i].clone(), random_mark(r)));
        }
    }
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let logic = Logic::default();
    let p1 = triple("0.3^{0+}", "0.2^{-+}", "0.4^{+}");
    let p2 = triple("0.6^{-0}", "0.1^{-0+}", "0.5^{+}");
    let cases = [
        ("conjunction", logic.and(&p1, &p2), triple("0.18^{-0+}", "0.28^{-0+}", "0.70^{-0+}")),
        ("disjunction", logic.or(&p1, &p2), triple("0.72^{-0+}", "0.02^{-0+}", "0.20^{+}")),
        ("negation", logic.not(&p1), triple("0.4^{+}", "0.2^{-+}", "0.3^{0+}")),
        ("implication", logic.implies(&p1, &p2), triple("0.76^{-0+}", "0.02^{-0+}", "0.15^{+}")),
    ];
    for (name, got, want) in cases {
        out.check(got == want, || format!("{name}: got {got}, expected {want}"));
    }
    let elapsed = start.elapsed();
    out.check(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"));
    out
}

fn criterion_2() -> Outcome {
    use Mark::*;
    let mut out = Outcome::new();
    let mut cell = |op: Op, regime: Regime, x: Mark, y: Mark, want: Mark| {
        let got = table::cached_table(op, regime).get(x, y);
        out.check(got == Some(want), || {
            format!("{op} {regime} [{x}][{y}]: got {got:?}, expected {want}")
        });
    };
    cell(Op::Add, Regime::PosPos, L, L, L);
    for regime in Regime::ALL {
        cell(Op::Sub, regime, L, L, L0R);
    }
    cell(Op::Div, Regime::PosPos, L, L, L0R);
    cell(Op::Mul, Regime::PosPos, L0, L0R, L0R);
    cell(Op::Pow, Regime::PosPos, R0, L0, L0R);
    out
}

fn excluded(op: Op, e: &ArithError) -> bool {
    matches!(
        (op, e),
        (Op::Pow, ArithError::NonpositivePowerBase)
            | (Op::Pow, ArithError::Oracle(OracleError::NonpositivePowerBase))
            | (Op::Div, ArithError::DivisionByZeroNeighborhood)
    )
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let mut r = rng(3);
    let mut cells = 0;
    for op in Op::ALL {
        for regime in Regime::ALL {
            let (a, b) = regime.values();
            let t = table::cached_table(op, regime);
            // a few extra values of the same signs besides the representatives
            let mut values = vec![(a.clone(), b.clone())];
            for _ in 0..3 {
                let va = random_rational(&mut r, 1, 4, 97);
                let vb = random_rational(&mut r, 1, 4, 89);
                let sa = if a.signum() < 0 { -va } else { va };
                let sb = if b.signum() < 0 { -vb } else { vb };
                values.push((sa, sb));
            }
            for x in Mark::ALL {
                for y in Mark::ALL {
                    for (va, vb) in &values {
                        let (mx, my) = (Mobinad::new(va.clone(), x), Mobinad::new(vb.clone(), y));
                        match arith::apply(op, &mx, &my) {
                            Ok(z) => {
                                cells += 1;
                                out.check(Mark::ALL.contains(&z.mark), || format!("{op} {mx} {my}: {z}"));
                            }
                            Err(e) => out.check(excluded(op, &e), || format!("{op} {mx} {my}: escaped with {e}")),
                        }
                    }
                    let oracle_cell = t.get(x, y);
                    let precondition = op == Op::Pow && a.signum() < 0;
                    out.check(oracle_cell.is_some() != precondition, || {
                        format!("{op} {regime} [{x}][{y}]: oracle cell {oracle_cell:?}")
                    });
                }
            }
        }
    }
    let elapsed = start.elapsed();
    out.note(format!("{cells} results classified"));
    out.check(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"));
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    let mut derivable = 0;
    for op in Op::ALL {
        for regime in Regime::ALL {
            for mismatch in table::cross_check(op, regime) {
                out.check(false, || mismatch.to_string());
            }
            derivable += 49 - table::cached_table(op, regime).error_cells();
            let fine = table::derive_mark_table_at(op, regime, 30);
            let finer = table::derive_mark_table_at(op, regime, 31);
            for x in Mark::ALL {
                for y in Mark::ALL {
                    out.check(fine.get(x, y) == finer.get(x, y), || {
                        format!(
                            "{op} {regime} [{x}][{y}]: delta 2^-30 gives {:?}, 2^-31 gives {:?}",
                            fine.get(x, y),
                            finer.get(x, y)
                        )
                    });
                }
            }
        }
    }
    out.note(format!("{derivable} derivable cells"));
    out
}

fn lattice_laws(out: &mut Outcome, [x, y, z]: &[Mobinad; 3], s: LatticeStrategy, idempotency: &mut Vec<(Mark, String)>) {
    let inf = |a: &Mobinad, b: &Mobinad| order::inf_n(a, b, s);
    let sup = |a: &Mobinad, b: &Mobinad| order::sup_n(a, b, s);
    out.check(inf(x, y) == inf(y, x), || format!("inf commutativity at {x}, {y}"));
    out.check(sup(x, y) == sup(y, x), || format!("sup commutativity at {x}, {y}"));
    out.check(inf(x, &inf(y, z)) == inf(&inf(x, y), z), || format!("inf associativity at {x}, {y}, {z}"));
    out.check(sup(x, &sup(y, z)) == sup(&sup(x, y), z), || format!("sup associativity at {x}, {y}, {z}"));
    for a in [x, y, z] {
        if inf(a, a) != *a || sup(a, a) != *a {
            idempotency.push((a.mark, format!("inf({a}, {a}) = {}, sup = {}", inf(a, a), sup(a, a))));
        }
    }
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    let v = Scalar::ratio(3, 10);
    let mut idem = Vec::new();
    for x in Mark::ALL {
        for y in Mark::ALL {
            for z in Mark::ALL {
                let t = [x, y, z].map(|k| Mobinad::new(v.clone(), k));
                lattice_laws(&mut out, &t, Reduction, &mut idem);
            }
        }
    }
    let mut r = rng(5);
    for _ in 0..1000 {
        lattice_laws(&mut out, &distinct_triple(&mut r), Reduction, &mut idem);
    }
    if let Some((_, first)) = idem.first() {
        let mut marks: Vec<Mark> = idem.iter().map(|(k, _)| *k).collect();
        marks.sort_by_key(|k| k.index());
        marks.dedup();
        let marks: Vec<&str> = marks.iter().map(|k| k.as_str()).collect();
        out.check(false, || {
            format!(
                "idempotency under reduction: {} failing operands, marks [{}], e.g. {first}",
                idem.len(),
                marks.join(" ")
            )
        });
    }

    let simple = [Mark::L, Mark::Std, Mark::R];
    for x in simple {
        for y in simple {
            let (a, b) = (Mobinad::new(v.clone(), x), Mobinad::new(v.clone(), y));
            for bad in order::absorption_violations(&a, &b, Reduction) {
                out.check(false, || format!("absorption on simple marks: {bad}"));
            }
        }
    }
    for _ in 0..1000 {
        let [a, b, _] = distinct_triple(&mut r);
        for bad in order::absorption_violations(&a, &b, Reduction) {
            if simple.contains(&a.mark) && simple.contains(&b.mark) {
                out.check(false, || format!("absorption on simple marks: {bad}"));
            }
        }
    }
    let mut comparable = 0;
    for x in Mark::ALL {
        for y in Mark::ALL {
            let (a, b) = (Mobinad::new(v.clone(), x), Mobinad::new(v.clone(), y));
            if order::compare(&a, &b) == OrderResult::Incomparable {
                continue;
            }
            comparable += 1;
            for bad in order::absorption_violations(&a, &b, OrderFirst) {
                out.check(false, || format!("absorption on comparable pair under order-first: {bad}"));
            }
        }
    }
    let report = order::absorption_report(&v, Reduction);
    out.check(!report.is_empty(), || "composite-mark absorption report is empty".into());
    out.note(format!(
        "{comparable} comparable pairs, {} composite absorption violations reported",
        report.len()
    ));
    out
}

fn criterion_6() -> Outcome {
    use Mark::*;
    let mut out = Outcome::new();
    let mut r = rng(6);
    for _ in 0..100 {
        let (a, b) = loop {
            let a = random_rational(&mut r, -10, 10, 1000);
            let b = random_rational(&mut r, -10, 10, 1000);
            if a != b {
                break if a.cmp_value(&b).is_lt() { (a, b) } else { (b, a) };
            }
        };
        for x in Mark::ALL {
            for y in Mark::ALL {
                let (p, q) = (Mobinad::new(a.clone(), x), Mobinad::new(b.clone(), y));
                let c = order::compare(&p, &q);
                out.check(c == OrderResult::Less, || format!("{p} vs {q}: {c:?}"));
            }
        }
    }

    let a = Scalar::ratio(7, 3);
    let at = |k: Mark| Mobinad::new(a.clone(), k);
    let less = |x: Mark, y: Mark| order::compare(&at(x), &at(y)) == OrderResult::Less;
    let leq = |x: Mark, y: Mark| order::leq(&at(x), &at(y));
    let incomparable = |x: Mark, y: Mark| order::compare(&at(x), &at(y)) == OrderResult::Incomparable;
    out.check(less(L, Std), || "a^{-} < a".into());
    out.check(less(L, R), || "a^{-} < a^{+}".into());
    out.check(less(Std, R), || "a < a^{+}".into());
    out.check(leq(L, LR), || "a^{-} <= a^{-+}".into());
    out.check(leq(LR, R), || "a^{-+} <= a^{+}".into());
    out.check(incomparable(Std, LR), || "a and a^{-+} should be unordered".into());
    out.check(incomparable(Std, L0R), || "a and a^{-0+} should be unordered".into());
    for w in [L, L0, Std, R0, R].windows(2) {
        out.check(leq(w[0], w[1]), || format!("chain link {} <= {}", w[0], w[1]));
    }
    for w in [L, LR, R].windows(2) {
        out.check(leq(w[0], w[1]), || format!("chain link {} <= {}", w[0], w[1]));
    }

    let monadic = [L, L0, Std, R0, R];
    for x in monadic {
        for y in monadic {
            out.check(!incomparable(x, y), || format!("{x} and {y} unordered without binads"));
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    let top = Mobinad::int(1, Mark::R);
    let bottom = Mobinad::int(0, Mark::L);
    let mut r = rng(7);
    let mut values = vec![Scalar::zero(), Scalar::one()];
    values.extend((0..98).map(|_| random_rational(&mut r, 0, 1, 10_000)));
    for v in &values {
        for k in Mark::ALL {
            let a = Mobinad::new(v.clone(), k);
            let i = order::inf_n(&a, &top, OrderFirst);
            let s = order::sup_n(&a, &bottom, OrderFirst);
            out.check(i == a, || format!("inf({a}, 1^{{+}}) = {i}"));
            out.check(s == a, || format!("sup({a}, 0^{{-}}) = {s}"));
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    let mut r = rng(8);
    for _ in 0..1000 {
        let n = r.gen_range(1..=12);
        let nums: Vec<(i64, i64)> = (0..n)
            .map(|_| (r.gen_range(-10_000..=10_000), r.gen_range(1..=500)))
            .collect();
        let classical: Vec<BigRational> = nums
            .iter()
            .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
            .collect();
        let lo = classical.iter().min().unwrap().clone();
        let hi = classical.iter().max().unwrap().clone();
        let set: Vec<Mobinad> = nums.iter().map(|&(p, q)| Mobinad::ratio(p, q, Mark::Std)).collect();
        for s in [Reduction, OrderFirst] {
            let inf = order::inf_fold(&set, s).unwrap();
            let sup = order::sup_fold(&set, s).unwrap();
            let want_inf = Mobinad::new(Scalar::from_rational(lo.clone()), Mark::Std);
            let want_sup = Mobinad::new(Scalar::from_rational(hi.clone()), Mark::Std);
            out.check(inf == want_inf, || format!("{s}: inf of {nums:?} gave {inf}"));
            out.check(sup == want_sup, || format!("{s}: sup of {nums:?} gave {sup}"));
        }
    }
    out
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("reference connective examples", criterion_1),
        ("mark laws in the derived tables", criterion_2),
        ("closure over ops, regimes and mark pairs", criterion_3),
        ("kernel equals oracle, stable under halving delta", criterion_4),
        ("lattice laws", criterion_5),
        ("order suite", criterion_6),
        ("unit interval identities under order-first", criterion_7),
        ("folded inf and sup of plain reals", criterion_8),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let status = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {} {name}: {status} ({elapsed:.2?}", i + 1);
        for n in &outcome.notes {
            line.push_str(&format!("; {n}"));
        }
        line.push(')');
        println!("{line}");
        for f in outcome.failures.iter().take(5) {
            println!("    {f}");
        }
        if outcome.failures.len() > 5 {
            println!("    ... {} more", outcome.failures.len() - 5);
        }
        if !outcome.failures.is_empty() {
            failed += 1;
        }
    }
    let elapsed = total.elapsed();
    let ok = elapsed < Duration::from_secs(60);
    println!(
        "criterion 9 full battery under 60 s: {} ({elapsed:.2?})",
        if ok { "PASS" } else { "FAIL" }
    );
    if !ok {
        failed += 1;
    }
    if failed > 0 {
        println!("{failed} of 9 criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
