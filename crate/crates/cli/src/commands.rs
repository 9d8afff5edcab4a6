use std::fmt::Write as _;
use std::io::Write as _;

use serde_json::{json, Value};

use sclosure::closure::{
    briancon_skoda_check, definition_oracle, degree_bound_check, jumping_numbers, s_closure, tight_closure_collapse,
    weak_s_closure, BSQuery, ClosureReport,
};
use sclosure::monomial::{format_ideal, format_monomial, parse_ideal_with, parse_monomial_text};
use sclosure::multiplicity::{closure_multiplicity_consistency, richardson_estimate, s_multiplicity_sequence};
use sclosure::newton::{integral_closure, rational_power};
use sclosure::suite::{random_ideals, run_check, Check};
use sclosure::{MixedPowerSpec, MonomialIdeal, Prime, ScaleFactor, VarNames};

use crate::output::{ideal_json, meta, monomials, verdict, Rendered};
use crate::{Cli, Command, Failure, Format, Session};

const CONSISTENCY_LIMIT: f64 = 32.0;
const MAX_INFERRED_VARS: usize = 16;

fn rational(text: &str) -> Result<ScaleFactor, Failure> {
    Ok(text.parse::<ScaleFactor>()?)
}

/// Resolves variable names and parses the ideal. Without `--vars` or
/// `--nvars` the smallest default naming that parses the text is used.
fn parse_input(session: &Session, text: &str) -> Result<(MonomialIdeal, VarNames), Failure> {
    let vars = match (&session.vars, session.nvars) {
        (Some(list), n) => {
            let vars = VarNames::parse_list(list)?;
            if n.is_some_and(|n| n != vars.len()) {
                return Err(Failure::Usage(format!("--nvars {} disagrees with {} names in --vars", n.unwrap(), vars.len())));
            }
            vars
        }
        (None, Some(n)) => VarNames::default_for(n)?,
        (None, None) => {
            let mut first_err = None;
            for n in 1..=MAX_INFERRED_VARS {
                let vars = VarNames::default_for(n)?;
                match parse_ideal_with(text, &vars) {
                    Ok(ideal) => return Ok((ideal, vars)),
                    Err(e) => {
                        first_err.get_or_insert(e);
                    }
                }
            }
            return Err(first_err.expect("at least one attempt").into());
        }
    };
    let ideal = parse_ideal_with(text, &vars)?;
    Ok((ideal, vars))
}

fn closure_rendered(r: &ClosureReport, vars: &VarNames, command: &str) -> Rendered {
    let json = ideal_json(
        &r.result,
        vars,
        meta(&[
            ("command", json!(command)),
            ("input", json!(format_ideal(&r.input, vars))),
            ("s", json!(r.s)),
            ("new_generators", json!(r.new_generators)),
            ("iterations", json!(r.iterations)),
            ("route", json!(r.route)),
        ]),
    );
    Rendered { plain: format_ideal(&r.result, vars), json }
}

pub fn run(cli: &Cli) -> Result<(), Failure> {
    let session = &cli.session;
    let p = Prime::new(session.p)?;
    let mut suite_failed = false;
    let rendered = match &cli.command {
        Command::Closure { ideal, s } => {
            let (i, vars) = parse_input(session, &ideal.ideal)?;
            closure_rendered(&weak_s_closure(&i, &rational(s)?)?, &vars, "closure")
        }
        Command::SClosure { ideal, s } => {
            let (i, vars) = parse_input(session, &ideal.ideal)?;
            let r = s_closure(&i, &rational(s)?)?;
            let mut out = closure_rendered(&r, &vars, "s-closure");
            out.plain = format!("{}\niterations: {}", out.plain, r.iterations);
            out
        }
        Command::IntegralClosure { ideal } => {
            let (i, vars) = parse_input(session, &ideal.ideal)?;
            let c = integral_closure(&i)?;
            let json = ideal_json(&c, &vars, meta(&[("command", json!("integral-closure"))]));
            Rendered { plain: format_ideal(&c, &vars), json }
        }
        Command::RationalPower { ideal, alpha } => {
            let (i, vars) = parse_input(session, &ideal.ideal)?;
            let alpha = rational(alpha)?;
            let r = rational_power(&i, &alpha)?;
            let json = ideal_json(&r, &vars, meta(&[("command", json!("rational-power")), ("alpha", json!(alpha))]));
            Rendered { plain: format_ideal(&r, &vars), json }
        }
        Command::MixedPower { ideal, s, q } => {
            let (i, vars) = parse_input(session, &ideal.ideal)?;
            let spec = MixedPowerSpec::with_q(rational(s)?, p, *q)?;
            let r = i.mixed_power(&spec)?;
            let json = ideal_json(
                &r,
                &vars,
                meta(&[("command", json!("mixed-power")), ("s", json!(spec.s())), ("q", json!(q)), ("p", json!(p.get()))]),
            );
            Rendered { plain: format_ideal(&r, &vars), json }
        }
        Command::JumpingNumbers { ideal, from, to } => {
            let (i, vars) = parse_input(session, &ideal.ideal)?;
            let jumps = jumping_numbers(&i, &rational(from)?, &rational(to)?)?;
            let plain = jumps.iter().map(|j| j.s.to_string()).collect::<Vec<_>>().join(", ");
            let items: Vec<Value> = jumps
                .iter()
                .map(|j| {
                    json!({
                        "s": j.s,
                        "at": ideal_json(&j.at, &vars, meta(&[])),
                        "after": ideal_json(&j.after, &vars, meta(&[])),
                    })
                })
                .collect();
            let json = json!({
                "command": "jumping-numbers",
                "input": ideal_json(&i, &vars, meta(&[])),
                "from": from, "to": to,
                "jumping_numbers": items,
            });
            Rendered { plain, json }
        }
        Command::BsCheck { ideal, t, s, nmax } => {
            let (i, vars) = parse_input(session, &ideal.ideal)?;
            let q = BSQuery::new(i.clone(), rational(t)?, rational(s)?, *nmax)?;
            let rows = briancon_skoda_check(&q)?;
            suite_failed = rows.iter().any(|r| !r.holds);
            let mut plain = format!("t = {}, s = {}, r = {}\n", q.t, q.s, q.r);
            for r in &rows {
                let _ = writeln!(plain, "n = {}: wsc_t(I^{}) ⊆ wsc_s(I^{}) {}", r.n, r.n + q.r, r.n, verdict(r.holds));
            }
            let items: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "lhs": ideal_json(&r.lhs, &vars, meta(&[])),
                        "rhs": ideal_json(&r.rhs, &vars, meta(&[])),
                        "holds": r.holds,
                    })
                })
                .collect();
            let json = json!({
                "command": "bs-check",
                "input": ideal_json(&i, &vars, meta(&[])),
                "t": q.t, "s": q.s, "r": q.r, "n_max": q.n_max,
                "rows": items,
            });
            Rendered { plain: plain.trim_end().to_string(), json }
        }
        Command::Collapse { ideal, s } => {
            let (i, vars) = parse_input(session, &ideal.ideal)?;
            let s = rational(s)?;
            let r = tight_closure_collapse(&i, &s)?;
            suite_failed = !r.within_bound();
            let plain = match r.n {
                Some(n) => format!("collapse at n = {n} (bound {})", r.bound),
                None => format!("no collapse up to n = {} (bound {})", r.bound.max(1), r.bound),
            };
            let json = json!({
                "command": "collapse",
                "input": ideal_json(&i, &vars, meta(&[])),
                "s": s, "bound": r.bound, "n": r.n, "within_bound": r.within_bound(),
            });
            Rendered { plain, json }
        }
        Command::DegreeCheck { ideal, s } => {
            let (i, vars) = parse_input(session, &ideal.ideal)?;
            let s = rational(s)?;
            let r = degree_bound_check(&i, &s, false)?;
            suite_failed = !r.holds();
            let mut plain = format!(
                "delta_min = {}, delta_max = {}\nlower bound: {}",
                format_monomial(&r.bounds.delta_min, &vars),
                format_monomial(&r.bounds.delta_max, &vars),
                verdict(r.lower_violations.is_empty()),
            );
            match r.upper_checked {
                Some(k) => {
                    let _ = write!(plain, "\nupper bound: {} ({k} monomials checked)", verdict(r.upper_violations.is_empty()));
                }
                None => plain.push_str("\nupper bound: skipped (ideal is not m-primary)"),
            }
            if !r.holds() {
                let bad = [r.lower_violations.clone(), r.upper_violations.clone()].concat();
                let _ = write!(plain, "\nviolations: {}", monomials(&bad, &vars));
            }
            let json = json!({
                "command": "degree-check",
                "input": ideal_json(&i, &vars, meta(&[])),
                "s": s,
                "delta_min": r.bounds.delta_min, "delta_max": r.bounds.delta_max,
                "lower_violations": r.lower_violations,
                "upper_checked": r.upper_checked,
                "upper_violations": r.upper_violations,
                "holds": r.holds(),
            });
            Rendered { plain, json }
        }
        Command::Multiplicity { ideal, s, kmax, consistency } => {
            let (i, vars) = parse_input(session, &ideal.ideal)?;
            let s = rational(s)?;
            let records = s_multiplicity_sequence(&i, &s, p, *kmax)?;
            let mut plain = String::from("q\tcolength\tnormalized");
            for r in &records {
                let _ = write!(plain, "\n{}\t{}\t{}", r.q, r.colength, r.normalized);
            }
            let estimate = richardson_estimate(&records);
            if let Some(e) = &estimate {
                let _ = write!(plain, "\nestimate (extrapolated, not certified): {e}");
            }
            let mut json = json!({
                "command": "multiplicity",
                "input": ideal_json(&i, &vars, meta(&[])),
                "s": s, "p": p.get(),
                "records": records,
                "estimate": estimate.map(|e| e.to_string()),
            });
            if *consistency {
                let c = closure_multiplicity_consistency(&i, &s, p, *kmax, None, CONSISTENCY_LIMIT)?;
                suite_failed = !c.passes();
                match &c.adjoined {
                    Some(g) => {
                        let _ = write!(plain, "\nconsistency with I + ({}):", format_monomial(g, &vars));
                        for r in &c.rows {
                            let _ = write!(plain, "\n{}\t{}\t{}\tq*gap = {:.4}", r.q, r.normalized_i, r.normalized_j, r.scaled_gap);
                        }
                        let _ = write!(plain, "\nC = {:.4} (limit {}): {}", c.c, c.c_limit, verdict(c.passes()));
                    }
                    None => plain.push_str("\nconsistency: closure adds nothing, trivially holds"),
                }
                json["consistency"] = json!(c);
            }
            Rendered { plain, json }
        }
        Command::Oracle { ideal, s, monomial, kmax, cbound } => {
            let (i, vars) = parse_input(session, &ideal.ideal)?;
            let s = rational(s)?;
            let m = parse_monomial_text(monomial, &vars)?;
            let c_bound = match cbound {
                Some(c) => *c,
                None => 2 * i.max_exponents().map_or(0, |g| g.coords().iter().copied().max().unwrap_or(0)),
            };
            let w = definition_oracle(&i, &s, &m, p, *kmax, c_bound)?;
            let verdict_text = serde_json::to_value(w.verdict).expect("serializable");
            let verdict_text = verdict_text.as_str().expect("string");
            let plain = format!(
                "{verdict_text}\nc = {}\nq = {}",
                format_monomial(&w.c, &vars),
                w.checked_q.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
            );
            let json = json!({
                "command": "oracle",
                "input": ideal_json(&i, &vars, meta(&[])),
                "s": s, "monomial": m, "p": p.get(), "c_bound": c_bound,
                "witness": w,
            });
            Rendered { plain, json }
        }
        Command::Verify { suite, size } => {
            let checks: Vec<Check> = if suite == "all" {
                Check::ALL.to_vec()
            } else {
                let c = Check::from_name(suite).ok_or_else(|| {
                    let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
                    Failure::Usage(format!("unknown suite `{suite}`; expected all or one of {}", names.join(", ")))
                })?;
                vec![c]
            };
            let ideals = random_ideals(session.seed, *size);
            let mut plain = format!("seed {}, {} ideals", session.seed, ideals.len());
            let mut items = Vec::new();
            for c in checks {
                let o = run_check(c, &ideals, session.seed)?;
                suite_failed |= !o.passed();
                let _ = write!(plain, "\n{}: {} ({} cases)", c.name(), if o.passed() { "pass" } else { "FAIL" }, o.cases);
                for f in &o.failures {
                    let _ = write!(plain, "\n  {f}");
                }
                items.push(json!({ "check": c.name(), "passed": o.passed(), "cases": o.cases, "failures": o.failures }));
            }
            let json = json!({ "command": "verify", "seed": session.seed, "size": size, "checks": items });
            Rendered { plain, json }
        }
    };

    let text = match session.output {
        Format::Plain => rendered.plain,
        Format::Json => serde_json::to_string(&rendered.json).expect("serializable"),
    };
    match &session.out {
        Some(path) => std::fs::write(path, format!("{text}\n"))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}")?;
        }
    }
    if suite_failed {
        Err(Failure::Suite)
    } else {
        Ok(())
    }
}
