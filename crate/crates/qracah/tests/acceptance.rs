//! One PASS/FAIL line per acceptance criterion.

use std::path::PathBuf;
use std::process::ExitCode;

use qracah::cli::suites::SuiteContext;
use qracah::cli::RunConfig;

fn config(name: &str) -> RunConfig {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name);
    RunConfig::load(&path).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn parse(text: &str) -> RunConfig {
    RunConfig::parse(text).unwrap_or_else(|e| panic!("{e}"))
}

/// One measured residual against its bound.
#[derive(Clone)]
struct Check {
    label: String,
    residual: f64,
    bound: f64,
    error: Option<String>,
}

impl Check {
    fn ok(&self) -> bool {
        self.error.is_none() && self.residual.is_finite() && self.residual < self.bound
    }
}

fn suite(ctx: &SuiteContext, tag: &str, name: &str, bound: f64) -> Check {
    let r = ctx.run(name).expect("known suite");
    Check { label: format!("{tag}:{name}"), residual: r.max_residual, bound, error: r.error }
}

fn report(id: usize, title: &str, checks: Vec<Check>) -> bool {
    let ok = checks.iter().all(Check::ok);
    let worst = checks
        .iter()
        .max_by(|a, b| (a.residual / a.bound).total_cmp(&(b.residual / b.bound)))
        .expect("at least one check");
    println!(
        "{} criterion {id:>2} {title}: worst {} = {:.3e} (bound {:.0e})",
        if ok { "PASS" } else { "FAIL" },
        worst.label,
        worst.residual,
        worst.bound
    );
    for c in checks.iter().filter(|c| !c.ok()) {
        println!("       {} = {:.3e} (bound {:.0e}) {}", c.label, c.residual, c.bound, c.error.as_deref().unwrap_or(""));
    }
    ok
}

fn one_variable() -> Vec<Check> {
    let mut checks = Vec::new();
    for level in 1..=8 {
        let trig = parse(&format!("kind = trig\nn = 1\nN = {level}\ng = 0\nga = 0.7\ngb = 0.6\ngc = 0.3\ngd = -0.15\n"));
        let ctx = SuiteContext::new(&trig);
        checks.push(suite(&ctx, &format!("trig N={level}"), "closed-form-weights", 1e-13));
        checks.push(suite(&ctx, &format!("trig N={level}"), "closed-forms", 1e-11));
        let racah = parse(&format!("kind = racah\nn = 1\nN = {level}\ng = 0\nga = 0.35\ngc = 0.15\ngd = 0.2\n"));
        let ctx = SuiteContext::new(&racah);
        checks.push(suite(&ctx, &format!("racah N={level}"), "racah-closed-forms", 1e-11));
    }
    checks
}

fn main() -> ExitCode {
    let (a, b, sd, r, one) = (config("a.conf"), config("b.conf"), config("sd.conf"), config("r.conf"), config("one.conf"));
    let (ca, cb, csd, cr, cone) =
        (SuiteContext::new(&a), SuiteContext::new(&b), SuiteContext::new(&sd), SuiteContext::new(&r), SuiteContext::new(&one));
    let ab = [("A", &ca), ("B", &cb)];
    let on_ab = |name: &str, bound: f64| -> Vec<Check> { ab.iter().map(|(t, c)| suite(c, t, name, bound)).collect() };

    let mut ok = true;
    ok &= report(1, "one-variable closed forms", one_variable());
    ok &= report(2, "orthogonality", on_ab("gram", 1e-9));
    ok &= report(3, "norm formula", on_ab("norms", 1e-9));
    ok &= report(
        4,
        "evaluation and duality",
        [on_ab("evaluation", 1e-10), on_ab("duality", 1e-9), on_ab("dual-invariance", 1e-12)].concat(),
    );
    ok &= report(
        5,
        "transform",
        [
            on_ab("orthogonal", 1e-8),
            on_ab("round-trip", 1e-9),
            on_ab("diagonalization", 1e-7),
            vec![suite(&csd, "SD", "symmetric-kernel", 1e-9), suite(&csd, "SD", "involution", 1e-8)],
        ]
        .concat(),
    );
    ok &= report(
        6,
        "operator identities",
        [on_ab("flip", 1e-12), on_ab("vanishing", 1e-12), on_ab("symmetry", 1e-11)].concat(),
    );
    ok &= report(
        7,
        "Pieri and norm recurrence",
        [
            vec![suite(&csd, "SD rational", "pieri", 1e-9), suite(&csd, "SD", "norm-recurrence", 1e-9)],
            on_ab("pieri", 1e-9),
            on_ab("norm-recurrence", 1e-9),
        ]
        .concat(),
    );
    ok &= report(
        8,
        "cross-construction",
        vec![
            suite(&ca, "A", "macdonald", 1e-8),
            suite(&ca, "A", "interpolation", 1e-9),
            suite(&ca, "A", "triangularity", 1e-8),
        ],
    );
    ok &= report(
        9,
        "outside-alcove vanishing",
        vec![suite(&cone, "n=1", "exterior", 1e-10), suite(&ca, "A", "exterior", 1e-7)],
    );
    ok &= report(
        10,
        "Racah degeneration",
        vec![
            suite(&cr, "R", "racah-gram", 1e-9),
            suite(&cr, "R", "racah-norms", 1e-9),
            suite(&cr, "R", "limit", 1e-2),
        ],
    );
    ok &= report(11, "positivity", on_ab("positivity", 1e-12));

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
