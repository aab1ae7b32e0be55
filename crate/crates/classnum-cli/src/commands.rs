//! One function per CLI verb. Each returns the rendered output plus a
//! flag marking whether the run produced a result that contradicts the
//! established theory — the binary maps that flag to exit code 1 so CI
//! can tell a math-core bug apart from a usage error.

use std::fmt::Write as _;

use classnum::diokit::{
    bs_consistency, cohn_scan, count_bs_solutions, ljunggren_scan, prop1_member, prop2_find_root,
    BSInstance, BSSolutionSet, BsVerdict, HMembership,
};
use classnum::fieldcase::{
    build_case, check_conditions, odd_primes_up_to, scan_theorem2, theorem4_case, verify, Verdict,
};
use classnum::intarith::gcd_u64;
use classnum::quadforms::{form_order, prime_form};
use classnum::Result;
use serde::Serialize;
use serde_json::json;

use crate::tabulate::verdict_str;

/// Rendered output plus the theorem-violation flag.
pub struct Outcome {
    pub output: String,
    pub violation: bool,
}

impl Outcome {
    fn new(output: String, violation: bool) -> Self {
        Outcome { output, violation }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Human,
}

fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("reports serialize infallibly");
    out.push('\n');
    out
}

#[derive(Serialize)]
struct CaseReport {
    p: u64,
    q: u64,
    n: u32,
    v: i64,
    m: u64,
    d: i64,
    #[serde(rename = "D")]
    disc: i64,
}

#[derive(Serialize)]
struct ConditionsReport {
    size_ok: bool,
    star_fail: bool,
    cube_path: bool,
    pcube_fail_a: bool,
    pcube_fail_b: bool,
    verdict: &'static str,
    marker: &'static str,
}

#[derive(Serialize)]
struct VerificationReport {
    h: u64,
    divisible: bool,
    order_p: Option<u64>,
    order_matches: Option<bool>,
}

/// `check`: full pipeline for one `(p, q, n)`.
pub fn check(p: u64, q: u64, n: u32, format: Format) -> Result<Outcome> {
    let case = build_case(p, q, n)?;
    let report = check_conditions(&case);
    let result = verify(&case, &report)?;
    let violation = report.verdict == Verdict::Pass
        && (!result.divisible || result.order_matches == Some(false));
    let output = match format {
        Format::Json => to_json_line(&json!({
            "case": CaseReport {
                p, q, n, v: case.v, m: case.m, d: case.d, disc: case.disc,
            },
            "conditions": ConditionsReport {
                size_ok: report.size_ok,
                star_fail: report.star_fail,
                cube_path: report.cube_path,
                pcube_fail_a: report.pcube_fail_a,
                pcube_fail_b: report.pcube_fail_b,
                verdict: verdict_str(report.verdict),
                marker: report.marker.as_str(),
            },
            "verification": VerificationReport {
                h: result.h,
                divisible: result.divisible,
                order_p: result.order_p,
                order_matches: result.order_matches,
            },
        })),
        Format::Human => {
            let mut s = String::new();
            writeln!(
                s,
                "K(p={p}, q={q}, n={n}): v = {}, v = {}^2 * ({}), D = {}",
                case.v, case.m, case.d, case.disc
            )
            .unwrap();
            writeln!(
                s,
                "conditions: star_fail={} cube_path={} pcube_fail_a={} pcube_fail_b={} -> {}{}",
                report.star_fail,
                report.cube_path,
                report.pcube_fail_a,
                report.pcube_fail_b,
                verdict_str(report.verdict),
                if report.marker.as_str().is_empty() {
                    String::new()
                } else {
                    format!(" (marker {})", report.marker)
                }
            )
            .unwrap();
            write!(s, "h = {}, {} | h: {}", result.h, n, result.divisible).unwrap();
            if let Some(order) = result.order_p {
                write!(s, ", order of prime above p = {order}").unwrap();
            }
            s.push('\n');
            s
        }
    };
    Ok(Outcome::new(output, violation))
}

/// `order`: order of the class of the prime form above `p`.
pub fn order(p: u64, q: u64, n: u32, format: Format) -> Result<Outcome> {
    let case = build_case(p, q, n)?;
    let report = check_conditions(&case);
    let form = prime_form(case.disc, p)?;
    let ord = form_order(&form)?;
    let violation = report.verdict == Verdict::Pass && ord != n as u64;
    let output = match format {
        Format::Json => to_json_line(&json!({
            "p": p, "q": q, "n": n, "D": case.disc,
            "form": { "a": form.a(), "b": form.b(), "c": form.c() },
            "order": ord,
            "expected_order": if report.verdict == Verdict::Pass { Some(n) } else { None },
        })),
        Format::Human => format!(
            "prime form above {p} in Cl({}) is {form}, order {ord}\n",
            case.disc
        ),
    };
    Ok(Outcome::new(output, violation))
}

#[derive(Serialize)]
struct RootReport {
    a: i64,
    b: i64,
    halved: bool,
}

/// `prop2`: exhaustive root search for each prime `ell | n` (or one given `ell`).
pub fn prop2(p: u64, q: u64, n: u32, ell: Option<u32>, format: Format) -> Result<Outcome> {
    let case = build_case(p, q, n)?;
    let report = check_conditions(&case);
    let ells: Vec<u32> = match ell {
        Some(l) => vec![l],
        None => {
            let fac = classnum::intarith::factorize(n as i64)?;
            fac.factors.iter().map(|&(p, _)| p as u32).collect()
        }
    };
    let mut results = Vec::new();
    let mut violation = false;
    for l in &ells {
        let root = prop2_find_root(&case, *l)?;
        if root.is_some() && report.verdict == Verdict::Pass {
            violation = true;
        }
        results.push((*l, root));
    }
    let output = match format {
        Format::Json => to_json_line(&json!({
            "p": p, "q": q, "n": n, "d": case.d, "m": case.m,
            "verdict": verdict_str(report.verdict),
            "results": results.iter().map(|(l, root)| json!({
                "ell": l,
                "root": root.map(|r| RootReport { a: r.a, b: r.b, halved: r.halved }),
            })).collect::<Vec<_>>(),
        })),
        Format::Human => {
            let mut s = String::new();
            for (l, root) in &results {
                match root {
                    Some(r) if r.halved => writeln!(
                        s,
                        "ell={l}: alpha = (({} + {} sqrt({}))/2)^{l}",
                        r.a, r.b, case.d
                    )
                    .unwrap(),
                    Some(r) => writeln!(
                        s,
                        "ell={l}: alpha = ({} + {} sqrt({}))^{l}",
                        r.a, r.b, case.d
                    )
                    .unwrap(),
                    None => writeln!(s, "ell={l}: none").unwrap(),
                }
            }
            s
        }
    };
    Ok(Outcome::new(output, violation))
}

/// `prop1`: sweep the half-integer power membership over a `d` range.
pub fn prop1(
    d_min: i64,
    d_max: i64,
    ab_max: i64,
    ells: &[u32],
    format: Format,
) -> Result<Outcome> {
    if d_min > d_max {
        return Err(classnum::Error::InvalidArgument("dmin must be <= dmax".into()));
    }
    let ds: Vec<i64> = (d_min..=d_max)
        .filter(|d| d.rem_euclid(8) == 5 && (*d < 0 || !classnum::intarith::is_square(*d as u64)))
        .collect();
    let odd_values: Vec<i64> = (1..=ab_max)
        .filter(|v| v % 2 == 1)
        .flat_map(|v| [v, -v])
        .collect();
    let mut per_ell = Vec::new();
    let mut violation = false;
    for &ell in ells {
        let mut members = 0u64;
        let mut total = 0u64;
        for &d in &ds {
            for &a in &odd_values {
                for &b in &odd_values {
                    total += 1;
                    if prop1_member(d, a, b, ell)? {
                        members += 1;
                    }
                }
            }
        }
        // The classical statement: membership holds always for ell = 3
        // and never for any other odd prime.
        if (ell == 3 && members != total) || (ell != 3 && members != 0) {
            violation = true;
        }
        per_ell.push((ell, members, total));
    }
    let output = match format {
        Format::Json => to_json_line(&json!({
            "dmin": d_min, "dmax": d_max, "abmax": ab_max,
            "d_count": ds.len(),
            "results": per_ell.iter().map(|(ell, members, total)| json!({
                "ell": ell, "members": members, "total": total,
            })).collect::<Vec<_>>(),
        })),
        Format::Human => {
            let mut s = String::new();
            for (ell, members, total) in &per_ell {
                writeln!(s, "ell={ell}: {members}/{total} powers land in Z[sqrt(d)]").unwrap();
            }
            s
        }
    };
    Ok(Outcome::new(output, violation))
}

fn h_membership_json(h: HMembership) -> serde_json::Value {
    match h {
        HMembership::Member { r, s } => json!({ "member": true, "r": r, "s": s }),
        HMembership::NotMember => json!({ "member": false }),
        HMembership::Undetermined => json!({ "member": false, "undetermined": true }),
    }
}

fn solution_set_json(set: &BSSolutionSet) -> serde_json::Value {
    json!({
        "instance": {
            "lambda2": set.instance.lambda_sq,
            "d1": set.instance.d1,
            "d2": set.instance.d2,
            "p": set.instance.p,
            "ymax": set.instance.y_max,
        },
        // x as a decimal string: it outgrows every fixed JSON number width.
        "solutions": set.solutions.iter().map(|s| json!({
            "x": s.x.to_string(), "y": s.y,
        })).collect::<Vec<_>>(),
        "memberships": {
            "e": set.in_e,
            "f": set.in_f,
            "g": set.in_g,
            "h": h_membership_json(set.in_h),
        },
        "verdict": match bs_consistency(set) {
            BsVerdict::Ok => "OK",
            BsVerdict::Violation => "VIOLATION",
        },
    })
}

/// `bs`: solve one equation instance and report memberships.
pub fn bs(lambda_sq: u8, d1: u64, d2: u64, p: u64, y_max: u32, format: Format) -> Result<Outcome> {
    let inst = BSInstance::new(lambda_sq, d1, d2, p, y_max)?;
    let set = count_bs_solutions(&inst);
    let violation = bs_consistency(&set) == BsVerdict::Violation;
    let output = match format {
        Format::Json => to_json_line(&solution_set_json(&set)),
        Format::Human => {
            let mut s = format!(
                "{} x^2 + {} = {} * {}^y, y <= {}: {} solution(s)\n",
                d1, d2, lambda_sq, p, y_max,
                set.solutions.len()
            );
            for sol in &set.solutions {
                writeln!(s, "  (x, y) = ({}, {})", sol.x, sol.y).unwrap();
            }
            writeln!(
                s,
                "memberships: E={} F={} G={:?} H={:?}; verdict {}",
                set.in_e,
                set.in_f,
                set.in_g,
                set.in_h,
                if violation { "VIOLATION" } else { "OK" }
            )
            .unwrap();
            s
        }
    };
    Ok(Outcome::new(output, violation))
}

/// `bs-sweep`: all coprime instances in range; report every instance
/// with two or more solutions and flag unexplained ones.
pub fn bs_sweep(
    d1_max: u64,
    d2_max: u64,
    p_max: u64,
    y_max: u32,
    format: Format,
) -> Result<Outcome> {
    let mut multi = Vec::new();
    let mut total = 0u64;
    let mut violations = 0u64;
    for lambda_sq in [1u8, 2, 4] {
        let mut primes = odd_primes_up_to(p_max);
        if lambda_sq == 4 && p_max >= 2 {
            primes.insert(0, 2);
        }
        for &p in &primes {
            for d1 in 1..=d1_max {
                for d2 in 1..=d2_max {
                    if gcd_u64(d1, d2) != 1 || d1 % p == 0 || d2 % p == 0 {
                        continue;
                    }
                    let inst = BSInstance::new(lambda_sq, d1, d2, p, y_max)?;
                    let set = count_bs_solutions(&inst);
                    total += 1;
                    if set.solutions.len() >= 2 {
                        if bs_consistency(&set) == BsVerdict::Violation {
                            violations += 1;
                        }
                        multi.push(set);
                    }
                }
            }
        }
    }
    let violation = violations > 0;
    let output = match format {
        Format::Json => to_json_line(&json!({
            "d1max": d1_max, "d2max": d2_max, "pmax": p_max, "ymax": y_max,
            "total_instances": total,
            "multi_solution": multi.iter().map(solution_set_json).collect::<Vec<_>>(),
            "unexplained": violations,
        })),
        Format::Human => {
            let mut s = format!(
                "{total} instances swept; {} with >= 2 solutions; {} unexplained\n",
                multi.len(),
                violations
            );
            for set in &multi {
                let i = &set.instance;
                writeln!(
                    s,
                    "  lambda2={} {} x^2 + {} = ... * {}^y: {} solutions, E={} F={} G={:?} H={:?}",
                    i.lambda_sq,
                    i.d1,
                    i.d2,
                    i.p,
                    set.solutions.len(),
                    set.in_e,
                    set.in_f,
                    set.in_g,
                    set.in_h
                )
                .unwrap();
            }
            s
        }
    };
    Ok(Outcome::new(output, violation))
}

/// `cohn`: perfect squares in the Lucas sequence up to `k_max`.
pub fn cohn(k_max: u32, format: Format) -> Result<Outcome> {
    let squares = cohn_scan(k_max);
    // Anything besides L_1 = 1 and L_3 = 4 contradicts the classification.
    let violation = squares.iter().any(|(k, _)| *k != 1 && *k != 3);
    let output = match format {
        Format::Json => to_json_line(&json!({
            "kmax": k_max,
            "squares": squares.iter().map(|(k, v)| json!({
                "k": k, "value": v.to_string(),
            })).collect::<Vec<_>>(),
        })),
        Format::Human => {
            let mut s = String::new();
            for (k, v) in &squares {
                writeln!(s, "L_{k} = {v} is a perfect square").unwrap();
            }
            s
        }
    };
    Ok(Outcome::new(output, violation))
}

/// `ljunggren`: repunit squares with odd exponent.
pub fn ljunggren(x_max: u64, n_max: u32, format: Format) -> Result<Outcome> {
    let solutions = ljunggren_scan(x_max, n_max);
    let violation = solutions.iter().any(|&(x, n, _)| (x, n) != (3, 5));
    let output = match format {
        Format::Json => to_json_line(&json!({
            "xmax": x_max, "nmax": n_max,
            "solutions": solutions.iter().map(|(x, n, y)| json!({
                "x": x, "n": n, "y": y.to_string(),
            })).collect::<Vec<_>>(),
        })),
        Format::Human => {
            let mut s = String::new();
            for (x, n, y) in &solutions {
                writeln!(s, "({x}^{n} - 1)/({x} - 1) = {y}^2").unwrap();
            }
            if solutions.is_empty() {
                s.push_str("no repunit squares in range\n");
            }
            s
        }
    };
    Ok(Outcome::new(output, violation))
}

/// `theorem4`: check divisibility of `h(Q(sqrt(1 - p^n)))` by `n` for
/// every `(p, n)` with `p^n <= bound`; `(3, 5)` is the lone exception.
pub fn theorem4(bound: u64, format: Format) -> Result<Outcome> {
    let mut cases = Vec::new();
    let mut exceptions = Vec::new();
    for p in odd_primes_up_to(classnum::intarith::integer_nth_root(bound, 3).0) {
        let mut n = 3u32;
        loop {
            match p.checked_pow(n) {
                Some(pn) if pn <= bound => {
                    let (case, result) = theorem4_case(p, n)?;
                    if !result.divisible {
                        exceptions.push((p, n));
                    }
                    cases.push((p, n, case.v, case.d, result.h, result.divisible));
                }
                _ => break,
            }
            n += 2;
        }
    }
    cases.sort();
    // Exactly (3, 5) must fail, and only when the bound reaches it.
    let expected: Vec<(u64, u32)> = if bound >= 243 { vec![(3, 5)] } else { vec![] };
    let violation = exceptions != expected;
    let output = match format {
        Format::Json => to_json_line(&json!({
            "pnmax": bound,
            "cases": cases.iter().map(|(p, n, v, d, h, divisible)| json!({
                "p": p, "n": n, "v": v, "d": d, "h": h, "divisible": divisible,
            })).collect::<Vec<_>>(),
            "exceptions": exceptions.iter().map(|(p, n)| json!({
                "p": p, "n": n,
            })).collect::<Vec<_>>(),
        })),
        Format::Human => {
            let mut s = format!("{} cases with p^n <= {bound}\n", cases.len());
            for (p, n) in &exceptions {
                writeln!(s, "  NOT divisible: (p, n) = ({p}, {n})").unwrap();
            }
            if exceptions.is_empty() {
                s.push_str("  every case divisible\n");
            }
            s
        }
    };
    Ok(Outcome::new(output, violation))
}

/// `scan-t2`: star-condition failures over `p` for fixed `(q, n)`;
/// every failure must have `|d| <= q + 1`.
pub fn scan_t2(q: u64, n: u32, p_max: u64, format: Format) -> Result<Outcome> {
    let scan = scan_theorem2(q, n, p_max)?;
    let violation = scan
        .failing
        .iter()
        .any(|f| f.d.unsigned_abs() > q + 1);
    let output = match format {
        Format::Json => to_json_line(&json!({
            "q": q, "n": n, "pmax": p_max,
            "checked": scan.checked,
            "skipped": scan.skipped,
            "failing": scan.failing.iter().map(|f| json!({
                "p": f.p, "d": f.d,
            })).collect::<Vec<_>>(),
            "distinct_d": scan.distinct_d,
        })),
        Format::Human => {
            let mut s = format!(
                "q={q}, n={n}, p <= {p_max}: {} cases, {} star failures, {} distinct d\n",
                scan.checked,
                scan.failing.len(),
                scan.distinct_d
            );
            for f in &scan.failing {
                writeln!(s, "  p={} fails with d={} (|d| <= q+1 = {})", f.p, f.d, q + 1).unwrap();
            }
            s
        }
    };
    Ok(Outcome::new(output, violation))
}
