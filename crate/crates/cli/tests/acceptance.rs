//! Acceptance battery: ten criteria, each at exact-zero tolerance, one
//! PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use qmacdo::{suites, Cli, Report, SuiteConfig};
use qmacdo_core::certify::{certify_sum, CertifyMode};
use qmacdo_core::diffop::{shift_key, DiffOp};
use qmacdo_core::mono::bank_swap_perm;
use qmacdo_core::operators::{deformed_mr, deformed_ns, Family, MrRoute};
use qmacdo_core::partition::{fat_hook_contains, partitions_up_to};
use qmacdo_core::superpoly::{is_in_lambda_nm, minus_q_inv_pow, scale_y, super_p, super_q};
use qmacdo_core::{Bank, Params, RatFunc};

#[derive(Default)]
struct Outcome {
    checks: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn report(&mut self, r: &Report) {
        if r.records.is_empty() {
            self.check(false, || format!("{} produced no checks", r.config.suite));
        }
        for rec in &r.records {
            self.check(rec.passed(), || format!("{} {} {}: {}", rec.suite, rec.instance, rec.check, shorten(&rec.residual)));
        }
    }
}

fn shorten(s: &str) -> String {
    let flat = s.replace('\n', "; ");
    if flat.chars().count() > 120 {
        flat.chars().take(120).chain("...".chars()).collect()
    } else {
        flat
    }
}

fn suite(args: &[&str]) -> Report {
    let cli = Cli::try_parse_from(std::iter::once("qmacdo").chain(args.iter().copied())).expect("valid arguments");
    let cfg = SuiteConfig::from_cli(&cli).expect("valid configuration");
    suites::run(&cfg)
}

fn kajihara() -> Outcome {
    let mut o = Outcome::default();
    for (k, l) in [("1", "1"), ("2", "1"), ("1", "2"), ("2", "2")] {
        for seed in ["1", "2", "3"] {
            let r = suite(&["kajihara", "--K", k, "--L", l, "--order", "4", "--seed", seed]);
            o.report(&r);
            if k == "1" && l == "1" {
                let heine = r.records.iter().filter(|x| x.instance.starts_with("heine")).count();
                o.check(heine == 5, || format!("Heine records missing for seed {seed}"));
            }
        }
    }
    o
}

fn kernels() -> Outcome {
    let mut o = Outcome::default();
    for [n, m, bn, bm] in [["1", "1", "1", "1"], ["2", "1", "1", "1"], ["1", "2", "2", "1"], ["2", "2", "1", "1"], ["1", "1", "1", "0"]] {
        o.report(&suite(&[
            "kernel", "--n", n, "--m", m, "--N", bn, "--M", bm, "--rmax", "2", "--deg", "4", "--q", "2/3", "--t", "5/2",
        ]));
    }
    o
}

fn commutativity() -> Outcome {
    let mut o = Outcome::default();
    for (n, m) in [("1", "1"), ("2", "1"), ("1", "2")] {
        o.report(&suite(&["commute", "--n", n, "--m", m, "--rmax", "3", "--symbolic"]));
    }
    for (q, t) in [("2", "3"), ("3", "7")] {
        o.report(&suite(&["commute", "--n", "2", "--m", "2", "--rmax", "4", "--q", q, "--t", t]));
    }
    o
}

fn eigenvalues() -> Outcome {
    let mut o = Outcome::default();
    for (n, m) in [("1", "1"), ("2", "1")] {
        o.report(&suite(&["eigen", "--n", n, "--m", m, "--deg", "5", "--rmax", "3", "--symbolic"]));
    }
    o
}

fn super_polynomial_facts() -> Outcome {
    let mut o = Outcome::default();
    let s = Params::symbolic();
    for (n, m) in [(1usize, 1usize), (2, 1), (1, 2)] {
        for lam in partitions_up_to(6) {
            let inside = fat_hook_contains(n, m, &lam);
            if !inside {
                o.check(super_p(&lam, n, m, &s).is_zero(), || format!("SP_{lam} nonzero outside the ({n},{m}) hook"));
            } else if lam.weight() <= 5 {
                let sp = super_p(&lam, n, m, &s);
                o.check(!sp.is_zero() && is_in_lambda_nm(&sp, n, m, &s), || format!("SP_{lam} not a nonzero member on ({n},{m})"));
            }
        }
    }
    let inv = s.inverted();
    let c = s.qt(-1, -1);
    for (n, m) in [(1usize, 1usize), (2, 1), (1, 2)] {
        let perm = bank_swap_perm(Bank::X, Bank::Y, n.max(m));
        for lam in partitions_up_to(4) {
            let sp = super_p(&lam, n, m, &s);
            let inverted = super_p(&lam, n, m, &inv);
            o.check(inverted == scale_y(&sp, m, &c), || format!("inversion symmetry fails for {lam} on ({n},{m})"));
            let dual = super_q(&lam.conjugate(), m, n, &s.dual()).permute(&perm);
            o.check(dual == sp.mul_term(&minus_q_inv_pow(&s, lam.weight())), || {
                format!("duality symmetry fails for {lam} on ({n},{m})")
            });
        }
    }
    o
}

fn recurrences() -> Outcome {
    let mut o = Outcome::default();
    o.report(&suite(&["wronski", "--n", "2", "--m", "2", "--order", "5", "--rmax", "0", "--symbolic"]));
    o.report(&suite(&["newton", "--n", "2", "--m", "2", "--order", "5", "--symbolic"]));
    o.report(&suite(&["wronski", "--n", "1", "--m", "1", "--order", "0", "--rmax", "3", "--symbolic"]));
    o
}

fn harish_chandra() -> Outcome {
    let mut o = Outcome::default();
    for (n, m) in [("1", "1"), ("2", "1")] {
        o.report(&suite(&["hc-generators", "--n", n, "--m", m, "--rmax", "4", "--order", "4", "--deg", "4", "--symbolic"]));
    }
    o
}

fn independence() -> Outcome {
    let mut o = Outcome::default();
    for (n, m) in [("1", "1"), ("2", "1"), ("1", "2"), ("2", "2")] {
        let r = suite(&["independence", "--n", n, "--m", m, "--symbolic"]);
        o.report(&r);
        if (n, m) == ("2", "1") {
            let w = r.records.iter().any(|x| x.check == "witness coefficient" && x.passed());
            o.check(w, || "witness coefficient not reproduced on (2,1)".into());
        }
    }
    o
}

fn restriction_and_preservation() -> Outcome {
    let mut o = Outcome::default();
    let r = suite(&["restriction", "--n", "1", "--m", "1", "--deg", "3", "--rmax", "2", "--q", "2/3", "--t", "5/2"]);
    let stable = r.records.iter().filter(|x| x.check.ends_with("stable")).count();
    o.check(stable == 2 * 2 * partitions_up_to(3).len(), || format!("expected N+1 checks for every case, found {stable}"));
    o.report(&r);
    o.report(&suite(&["preserve", "--n", "2", "--m", "2", "--deg", "3", "--rmax", "2", "--symbolic"]));
    o
}

fn op(f: Family, r: u32, n: usize, m: usize, p: &Params) -> DiffOp {
    match f {
        Family::Ns => deformed_ns(r, n, m, p),
        Family::Mr => deformed_mr(r, n, m, p, MrRoute::Direct),
    }
}

fn certification() -> Outcome {
    use Family::{Mr, Ns};
    let mut o = Outcome::default();
    let p = Params::symbolic();
    let pairs = [
        (1, 1, Ns, 1, Ns, 2),
        (1, 1, Ns, 1, Mr, 1),
        (1, 1, Ns, 2, Mr, 1),
        (1, 1, Mr, 1, Mr, 2),
        (1, 1, Ns, 1, Mr, 2),
        (2, 1, Ns, 1, Ns, 2),
        (2, 1, Ns, 1, Mr, 1),
        (2, 1, Mr, 1, Mr, 2),
        (1, 2, Ns, 1, Ns, 2),
        (1, 2, Ns, 1, Mr, 1),
    ];
    for (k, &(n, m, f, r, g, s)) in pairs.iter().enumerate() {
        let a = op(f, r, n, m, &p);
        let b = op(g, s, n, m, &p);
        let ab = a.compose(&b);
        let ba = b.compose(&a).neg();
        let label = format!("[{f:?}{r},{g:?}{s}] on ({n},{m})");
        let coeff = certify_sum(&[&ab, &ba], n, m, CertifyMode::Coefficients).expect("convention");
        let special = certify_sum(&[&ab, &ba], n, m, CertifyMode::Specialization).expect("convention");
        o.check(coeff.zero && special.zero, || format!("{label}: zero commutator not certified"));

        // Perturb by a single term T_{q,x}^μ T_{t,y}^{-ν} with a nonconstant
        // coefficient; both modes must report it as the pivot.
        let mu: Vec<i32> = (0..n).map(|i| ((k + i) % 3) as i32).collect();
        let nu: Vec<i32> = (0..m).map(|j| -(((k + j) % 2) as i32)).collect();
        let shift = shift_key(Bank::X, &mu).mul(&shift_key(Bank::Y, &nu));
        let coef = &RatFunc::var(Bank::X.var(0)) + &RatFunc::from_int(k as i64 + 1);
        let bump = DiffOp::monomial(&p, ab.arity(), shift, coef);
        let expected = (mu.iter().map(|&e| e as u32).collect::<Vec<_>>(), nu.iter().map(|&e| (-e) as u32).collect::<Vec<_>>());
        let coeff = certify_sum(&[&ab, &ba, &bump], n, m, CertifyMode::Coefficients).expect("convention");
        let special = certify_sum(&[&ab, &ba, &bump], n, m, CertifyMode::Specialization).expect("convention");
        o.check(!coeff.zero && !special.zero, || format!("{label} + bump: not detected as nonzero"));
        o.check(special.pivot.as_ref() == Some(&expected), || format!("{label} + bump: specialization pivot {:?}", special.pivot));
        o.check(coeff.pivot == special.pivot, || format!("{label} + bump: modes disagree on the pivot"));
    }
    o
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Kajihara and Heine transformations", kajihara),
        ("kernel identities", kernels),
        ("commutativity", commutativity),
        ("eigenvalue equations", eigenvalues),
        ("fat-hook vanishing, membership, symmetries", super_polynomial_facts),
        ("Wronski and Newton relations", recurrences),
        ("Harish-Chandra layer", harish_chandra),
        ("algebraic independence", independence),
        ("restriction and preservation", restriction_and_preservation),
        ("zero-certification cross-validation", certification),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        if o.failures.is_empty() {
            println!("criterion {} ({name}): PASS, {} checks, {secs:.1}s", i + 1, o.checks);
        } else {
            all = false;
            println!("criterion {} ({name}): FAIL, {} of {} checks failed, {secs:.1}s", i + 1, o.failures.len(), o.checks);
            for msg in o.failures.iter().take(5) {
                println!("    {msg}");
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
