//! Command-line front end. `dispatch` returns the process exit status:
//! 0 on success, 1 when a check fails (or a computation errors), 2 on
//! usage errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::acceptance;
use crate::algebra::rational::to_string;
use crate::combinat::partitions;
use crate::cutjoin::CutJoin;
use crate::error::{Error, Result};
use crate::oracle::graph::verify_multiplicity_lemma;
use crate::oracle::{steps, Budget, Flavor, Mode, Oracle};
use crate::structure::{describe, quasipoly_check};
use crate::toprec::check_conjecture;
use crate::wavefunction::{
    check_quantum_curve, coefficient_table, differences, wavefunction_closed, wavefunction_from_numbers,
};

/// Environment variable naming the default cut-and-join cache file.
pub const CACHE_ENV: &str = "HURWITZ_CACHE";

#[derive(Parser, Debug)]
#[command(
    name = "hurwitz",
    version,
    about = "Hurwitz numbers with an order-a orbifold point: enumeration, cut-and-join, wave function, topological recursion"
)]
pub struct Cli {
    /// Cut-and-join cache file (default: $HURWITZ_CACHE, else none).
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub g: usize,
    /// Comma-separated parts.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub mu: Vec<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count factorisations by enumeration.
    Oracle {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "monotone-orbifold")]
        flavor: FlavorArg,
        /// Enumerate every σ₀ of the cycle type instead of the special one.
        #[arg(long)]
        free: bool,
        /// Also compare this many random keys with the cut-and-join engine.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// `H^[a]_g(μ)` by the cut-and-join recursion.
    Cutjoin {
        #[command(flatten)]
        target: Target,
    },
    /// Refined number `H^{[a],ℓ}_g(μ₁ | rest)`.
    Refined {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        mu1: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        rest: Vec<usize>,
        /// Cross-check against enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Group factorisations by monodromy graph and check multiplicities.
    Graphs {
        #[command(flatten)]
        target: Target,
    },
    /// Wave function coefficients.
    Wavefunction {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        xorder: usize,
        #[arg(long)]
        horder: i64,
        /// Build from the numbers and compare with the closed form.
        #[arg(long)]
        compare: bool,
    },
    /// Apply the quantum curve to the wave function.
    Qcurve {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        xorder: usize,
        #[arg(long)]
        horder: i64,
    },
    /// Topological recursion against cut-and-join.
    Toprec {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        mu_max: usize,
        #[arg(long, default_value_t = 512)]
        prec: u32,
    },
    /// Finite-difference quasi-polynomiality check.
    Polycheck {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bound: usize,
    },
    /// The full acceptance suite.
    VerifyAll {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        only: Vec<usize>,
        /// Append the running time to every line.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(clap::ValueEnum, Clone, Copy, Debug)]
pub enum FlavorArg {
    Simple,
    Orbifold,
    Monotone,
    MonotoneOrbifold,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Simple => Flavor::Simple,
            FlavorArg::Orbifold => Flavor::Orbifold,
            FlavorArg::Monotone => Flavor::Monotone,
            FlavorArg::MonotoneOrbifold => Flavor::MonotoneOrbifold,
        }
    }
}

/// Outcome of a subcommand: what to print and whether the check passed.
struct Outcome {
    text: String,
    passed: bool,
}

fn emit<T: Serialize>(json: bool, value: &T, human: String, passed: bool) -> Outcome {
    let text = if json { serde_json::to_string_pretty(value).expect("serialisable") } else { human };
    Outcome { text, passed }
}

fn check_target(t: &Target) -> Result<()> {
    if t.a == 0 || t.mu.is_empty() || t.mu.contains(&0) {
        return Err(Error::InvalidInput("need a ≥ 1 and positive parts in --mu".into()));
    }
    Ok(())
}

fn random_spot_checks(n: usize, seed: u64, cj: &CutJoin, oracle: &mut Oracle) -> Result<Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let budget = oracle.budget();
    let mut done = 0;
    while done < n {
        let a = rng.gen_range(1..=3);
        let d = a * rng.gen_range(1..=budget.max_degree / a);
        let parts = partitions(d);
        let mu = &parts[rng.gen_range(0..parts.len())];
        let g = rng.gen_range(0..=2);
        if steps(a, g, mu.len(), d).is_none_or(|m| m > budget.max_steps) {
            continue;
        }
        done += 1;
        let (o, c) = (oracle.hurwitz(a, g, mu)?, cj.hurwitz(a, g, mu)?);
        if o != c {
            failures.push(format!("a={a} g={g} μ={mu:?}: {} vs {}", to_string(&o), to_string(&c)));
        }
    }
    Ok(failures)
}

fn execute(cli: &Cli, cj: &CutJoin) -> Result<Outcome> {
    let json = cli.json;
    match &cli.command {
        Command::Oracle { target, flavor, free, random, seed } => {
            check_target(target)?;
            let mut oracle = Oracle::new(Budget::default());
            let mode = if *free { Mode::Free } else { Mode::FixedSigma0 };
            let v = oracle.count((*flavor).into(), target.a, target.g, &target.mu, mode)?;
            let failures = random_spot_checks(*random, *seed, cj, &mut oracle)?;
            let value = serde_json::json!({
                "a": target.a, "g": target.g, "mu": target.mu, "value": to_string(&v),
                "random_checks": random, "seed": seed, "failures": failures,
            });
            let mut human = to_string(&v);
            if *random > 0 {
                human.push_str(&format!("\n{} random checks, {} failures", random, failures.len()));
                for f in &failures {
                    human.push_str(&format!("\n  {f}"));
                }
            }
            Ok(emit(json, &value, human, failures.is_empty()))
        }
        Command::Cutjoin { target } => {
            check_target(target)?;
            let v = cj.hurwitz(target.a, target.g, &target.mu)?;
            let value = serde_json::json!({"a": target.a, "g": target.g, "mu": target.mu, "value": to_string(&v)});
            Ok(emit(json, &value, to_string(&v), true))
        }
        Command::Refined { a, g, mu1, ell, rest, oracle } => {
            let v = cj.refined(*a, *g, *mu1, *ell, rest)?;
            let o = if *oracle { Some(Oracle::default().refined(*a, *g, *mu1, *ell, rest)?) } else { None };
            let passed = o.as_ref().is_none_or(|o| *o == v);
            let value = serde_json::json!({
                "a": a, "g": g, "mu1": mu1, "ell": ell, "rest": rest,
                "value": to_string(&v), "oracle": o.as_ref().map(to_string),
            });
            let mut human = to_string(&v);
            if let Some(o) = &o {
                human.push_str(&format!("\noracle {} {}", to_string(o), if passed { "PASS" } else { "FAIL" }));
            }
            Ok(emit(json, &value, human, passed))
        }
        Command::Graphs { target } => {
            check_target(target)?;
            let rep = verify_multiplicity_lemma(target.a, target.g, &target.mu, &mut Oracle::default())?;
            let mut human = String::new();
            for t in &rep.graphs {
                human.push_str(&format!("{}  count {}  m {}\n", t.canonical, t.factorisations, t.multiplicity));
            }
            human.push_str(&format!("total {} expected {}\n", rep.total, rep.expected_total));
            for v in &rep.violations {
                human.push_str(&format!("violation: {v}\n"));
            }
            human.push_str(if rep.passed() { "PASS" } else { "FAIL" });
            let passed = rep.passed();
            Ok(emit(json, &rep, human, passed))
        }
        Command::Wavefunction { a, xorder, horder, compare } => {
            if *a == 0 || *horder < 0 {
                return Err(Error::InvalidInput("need a ≥ 1 and a non-negative ħ order".into()));
            }
            let closed = wavefunction_closed(*a, *xorder, *horder);
            let table = coefficient_table(&closed);
            let diff = if *compare {
                Some(differences(&wavefunction_from_numbers(*a, *xorder, *horder, cj)?, &closed, *horder))
            } else {
                None
            };
            let passed = diff.as_ref().is_none_or(|d| d.is_empty());
            let value = serde_json::json!({
                "a": a, "xorder": xorder, "horder": horder,
                "coefficients": table.iter().map(|(d, e, v)| serde_json::json!({"x": d, "hbar": e, "value": v})).collect::<Vec<_>>(),
                "differences": diff,
            });
            let mut human: String = table.iter().map(|(d, e, v)| format!("x^{d} hbar^{e}  {v}\n")).collect();
            if let Some(d) = &diff {
                human.push_str(&if d.is_empty() { "PASS".to_string() } else { format!("FAIL differences at {d:?}") });
            }
            Ok(emit(json, &value, human.trim_end().to_string(), passed))
        }
        Command::Qcurve { a, xorder, horder } => {
            if *a == 0 || *horder < 0 {
                return Err(Error::InvalidInput("need a ≥ 1 and a non-negative ħ order".into()));
            }
            let rep = check_quantum_curve(*a, *xorder, *horder);
            let human = if rep.passed() {
                format!("PASS boundary degree {}", rep.boundary)
            } else {
                format!("FAIL nonzero below boundary degree {} at {:?}", rep.boundary, rep.nonzero_below)
            };
            let passed = rep.passed();
            Ok(emit(json, &rep, human, passed))
        }
        Command::Toprec { a, g, n, mu_max, prec } => {
            if *prec < 64 {
                return Err(Error::InvalidInput("precision must be at least 64 bits".into()));
            }
            let rep = check_conjecture(*g, *n, *a, *mu_max, *prec, cj)?;
            let mut human = format!("# {}\n# tolerance 2^{}\n", rep.convention, rep.tolerance_log2);
            for e in &rep.entries {
                human.push_str(&format!(
                    "{:?}  tr {}  cutjoin {}  abs_err {}  {}\n",
                    e.mu,
                    e.tr,
                    e.cutjoin,
                    e.abs_err,
                    if e.exact { "exact" } else { "inexact" }
                ));
            }
            human.push_str(if rep.passed() { "PASS" } else { "FAIL" });
            let passed = rep.passed();
            Ok(emit(json, &rep, human, passed))
        }
        Command::Polycheck { a, g, n, bound } => {
            let rep = quasipoly_check(*a, *g, *n, *bound, cj)?;
            let mut human = describe(&rep);
            if !rep.symmetry_violations.is_empty() {
                human.push_str(&format!("symmetry violations {:?}\n", rep.symmetry_violations));
            }
            human.push_str(if rep.passed() { "PASS" } else { "FAIL" });
            let passed = rep.passed();
            Ok(emit(json, &rep, human, passed))
        }
        Command::VerifyAll { only, timings } => {
            let ids: Vec<usize> = if only.is_empty() { (1..=10).collect() } else { only.clone() };
            if let Some(bad) = ids.iter().find(|&&i| !(1..=10).contains(&i)) {
                return Err(Error::InvalidInput(format!("no criterion {bad}")));
            }
            let results: Vec<_> = ids.iter().map(|&i| acceptance::run(i, cj)).collect();
            let passed = results.iter().all(|r| r.passed);
            let human =
                results.iter().map(|r| if *timings { r.timed_line() } else { r.line() }).collect::<Vec<_>>().join("\n");
            Ok(emit(json, &results, human, passed))
        }
    }
}

/// Parses `argv`, runs the subcommand and returns the exit status.
pub fn dispatch<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let cache = cli.cache.clone().or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    let cj = match &cache {
        Some(p) => match CutJoin::open(p) {
            Ok(c) => c,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return 1;
            }
        },
        None => CutJoin::new(),
    };
    let status = match execute(&cli, &cj) {
        Ok(o) => {
            let _ = writeln!(out, "{}", o.text);
            if o.passed {
                0
            } else {
                1
            }
        }
        Err(Error::InvalidInput(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    };
    if let Err(e) = cj.flush() {
        let _ = writeln!(err, "error: {e}");
        return 1;
    }
    status
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["hurwitz"];
        argv.extend_from_slice(args);
        let code = dispatch(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn cutjoin_values() {
        assert_eq!(run(&["cutjoin", "--a", "2", "--g", "0", "--mu", "4"]), (0, "1/2\n".into(), String::new()));
        assert_eq!(run(&["cutjoin", "--a", "2", "--g", "0", "--mu", "3"]).1, "0\n");
    }

    #[test]
    fn qcurve_reports_the_boundary() {
        let (code, out, _) = run(&["qcurve", "--a", "1", "--xorder", "3", "--horder", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "PASS boundary degree 3");
    }

    #[test]
    fn usage_errors_exit_2() {
        let (code, _, err) = run(&["cutjoin", "--a", "2", "--bogus"]);
        assert_eq!(code, 2);
        assert!(!err.is_empty());
        assert_eq!(run(&["cutjoin", "--a", "0", "--g", "0", "--mu", "1"]).0, 2);
    }
}
