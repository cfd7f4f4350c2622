use std::collections::BTreeMap;
use std::fmt::Write;

use itertools::Itertools;
use serde_json::{json, Value};

use unitri::diagram::build_diagram;
use unitri::invariants::{
    cell_relations, compute_invariants, independence_ranks, parse_phi, verify_invariance,
    verify_on_variety, x_d_phi, CellRelations,
};
use unitri::poly::{fmt_q, Poly, Q};
use unitri::root::{enumerate_basic, BasicSubset, Root};
use unitri::weyl::{factorize, is_homogeneous, reflection_product, w_d, Permutation};

use crate::args::{Cli, Format, PhiArgs, SubsetArgs, Verb};

/// Exit status and the text destined for stdout and stderr.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Output {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

pub fn run(cli: &Cli) -> Output {
    match dispatch(&cli.verb) {
        Ok(out) | Err(out) => out,
    }
}

fn dispatch(verb: &Verb) -> Result<Output, Output> {
    match verb {
        Verb::Diagram(s) => diagram(&subset(s)?, s.format),
        Verb::Wd(s) => wd(&subset(s)?, s.format),
        Verb::Factor(s) => factor(&subset(s)?, s.format),
        Verb::Invariants(s) => invariants(&subset(s)?, s.format),
        Verb::Relations { subset: s, phi } => {
            let d = subset(s)?;
            let phi = values(&d, phi)?;
            Ok(relations(&d, phi.as_ref(), s.format))
        }
        Verb::Verify {
            subset: s,
            phi,
            seed,
            trials,
        } => {
            let d = subset(s)?;
            let phi = values(&d, phi)?;
            verify(&d, phi.as_ref(), *seed, *trials, s.format)
        }
        Verb::Enumerate { n, format } => Ok(enumerate(*n, *format)),
    }
}

fn subset(args: &SubsetArgs) -> Result<BasicSubset, Output> {
    let d = match (&args.d_json, args.n) {
        (Some(text), n) => {
            let d: BasicSubset = serde_json::from_str(text).map_err(Output::usage)?;
            if n.is_some_and(|n| n != d.n()) {
                return Err(Output::usage(format!(
                    "--n {} disagrees with n = {} in --d-json",
                    n.unwrap(),
                    d.n()
                )));
            }
            d
        }
        (None, Some(n)) => {
            BasicSubset::parse(n, args.d.as_deref().unwrap_or("")).map_err(Output::usage)?
        }
        (None, None) => return Err(Output::usage("--n is required unless --d-json is given")),
    };
    Ok(d)
}

fn values(d: &BasicSubset, args: &PhiArgs) -> Result<Option<BTreeMap<Root, Q>>, Output> {
    let Some(text) = &args.phi else {
        return Ok(None);
    };
    let phi = parse_phi(text).map_err(Output::usage)?;
    x_d_phi(d, &phi).map_err(Output::usage)?;
    Ok(Some(phi))
}

fn internal(e: unitri::error::Error) -> Output {
    Output {
        code: 1,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

fn render(format: Format, value: Value, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string(&value).expect("JSON value")),
        Format::Text => text(),
    }
}

fn root_list(roots: &[Root]) -> String {
    if roots.is_empty() {
        "∅".into()
    } else {
        roots.iter().join(" ")
    }
}

fn diagram(d: &BasicSubset, format: Format) -> Result<Output, Output> {
    let dg = build_diagram(d);
    let c = dg.extension();
    Ok(Output::ok(render(
        format,
        json!({ "D": d, "diagram": dg.to_json() }),
        || format!("{}C(D) = {}\n", dg.render_ascii(), root_list(&c)),
    )))
}

fn wd(d: &BasicSubset, format: Format) -> Result<Output, Output> {
    let w = w_d(d);
    let hom = is_homogeneous(&w);
    Ok(Output::ok(render(
        format,
        json!({ "D": d, "w": w, "homogeneous": hom }),
        || format!("{w}\n\n{}\n\nhomogeneous={hom}\n", w.render_two_line()),
    )))
}

fn factor(d: &BasicSubset, format: Format) -> Result<Output, Output> {
    let c = factorize(d);
    let product = reflection_product(d.n(), &c);
    let w = w_d(d);
    let equal = product == w;
    let stdout = render(
        format,
        json!({ "D": d, "reflections": c, "product": product, "w": w, "equal": equal }),
        || {
            let rs = c.iter().map(|r| format!("r{r}")).join(" ");
            format!("reflections: {rs}\nproduct: {product}\nw_D: {w}\nequal={equal}\n")
        },
    );
    Ok(Output {
        code: if equal { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    })
}

fn invariants(d: &BasicSubset, format: Format) -> Result<Output, Output> {
    let inv = compute_invariants(d).map_err(internal)?;
    Ok(Output::ok(render(format, inv.to_json(), || {
        inv.extension
            .iter()
            .map(|xi| format!("F{xi} = {}\n", inv.generators[xi]))
            .collect()
    })))
}

fn minors_json(list: &[(Root, Poly)]) -> Value {
    Value::Object(
        list.iter()
            .map(|(r, p)| (r.to_string(), json!(p.to_string())))
            .collect(),
    )
}

fn relations_json(rel: &CellRelations) -> Value {
    json!({ "vanishing": minors_json(&rel.vanishing), "nonvanishing": minors_json(&rel.nonvanishing) })
}

/// `P_ξ(X_{D,φ})` for `ξ ∈ D`.
fn variety_values(rel: &CellRelations, d: &BasicSubset, phi: &BTreeMap<Root, Q>) -> Vec<(Root, Q)> {
    let base = x_d_phi(d, phi).expect("validated φ");
    rel.nonvanishing
        .iter()
        .map(|(r, p)| (*r, p.evaluate(&base)))
        .collect()
}

fn relations(d: &BasicSubset, phi: Option<&BTreeMap<Root, Q>>, format: Format) -> Output {
    let rel = cell_relations(d);
    let variety = phi.map(|phi| variety_values(&rel, d, phi));
    let mut value = relations_json(&rel);
    value["D"] = json!(d);
    if let Some(v) = &variety {
        value["variety"] = Value::Object(
            v.iter()
                .map(|(r, c)| (r.to_string(), json!(fmt_q(c))))
                .collect(),
        );
    }
    Output::ok(render(format, value, || {
        let mut s = String::from("vanishing:\n");
        for (r, p) in &rel.vanishing {
            writeln!(s, "  P{r} = {p}").unwrap();
        }
        s.push_str("nonvanishing:\n");
        for (r, p) in &rel.nonvanishing {
            writeln!(s, "  P{r} = {p}").unwrap();
        }
        if let Some(v) = &variety {
            s.push_str("variety:\n");
            for (r, c) in v {
                writeln!(s, "  P{r} = {}", fmt_q(c)).unwrap();
            }
        }
        s
    }))
}

fn verify(
    d: &BasicSubset,
    phi: Option<&BTreeMap<Root, Q>>,
    seed: u64,
    trials: usize,
    format: Format,
) -> Result<Output, Output> {
    let inv = compute_invariants(d).map_err(internal)?;
    let report = match phi {
        Some(phi) => verify_on_variety(d, phi, trials, seed),
        None => verify_invariance(d, trials, seed),
    }
    .map_err(internal)?;
    let ranks = independence_ranks(&inv, phi, seed).map_err(internal)?;
    let passed = report.passed() && ranks.passed();

    let mut value = inv.to_json();
    value["cell_relations"] = relations_json(&cell_relations(d));
    value["invariance"] = report.to_json();
    value["jacobian_rank"] = json!(ranks.rank);
    value["ranks"] = ranks.to_json();
    value["passed"] = json!(passed);
    let stdout = render(format, value, || {
        let mut s = String::new();
        writeln!(s, "D = {d}").unwrap();
        writeln!(
            s,
            "trials: {} (seed {seed}, {} resamples)",
            report.trials, report.resamples
        )
        .unwrap();
        let verdict = if report.passed() {
            "pass".to_string()
        } else {
            format!("{} failures", report.failures.len())
        };
        writeln!(s, "invariance: {verdict}").unwrap();
        writeln!(
            s,
            "jacobian rank: {} (expected |C(D)| = {})",
            ranks.rank, ranks.expected
        )
        .unwrap();
        writeln!(
            s,
            "restricted rank: {} (expected |C(D)| - |D| = {})",
            ranks.restricted_rank, ranks.restricted_expected
        )
        .unwrap();
        if let Some(f) = report.failures.first() {
            writeln!(s, "counterexample: {}", f.to_json()).unwrap();
        }
        s
    });
    Ok(Output {
        code: if passed { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    })
}

fn enumerate(n: usize, format: Format) -> Output {
    let subsets = enumerate_basic(n);
    let rows: Vec<(BasicSubset, usize, Permutation)> = subsets
        .into_iter()
        .map(|d| {
            let c = factorize(&d).len();
            let w = w_d(&d);
            (d, c, w)
        })
        .collect();
    let homogeneous = Permutation::all(n).filter(is_homogeneous).count();
    let value = json!({
        "n": n,
        "subsets": rows.iter().map(|(d, c, w)| json!({ "D": d, "c": c, "w": w })).collect::<Vec<_>>(),
        "basic_subsets": rows.len(),
        "homogeneous_elements": homogeneous,
    });
    Output::ok(render(format, value, || {
        let width = rows
            .iter()
            .map(|(d, _, _)| d.to_string().len())
            .max()
            .unwrap_or(0);
        let mut s = String::new();
        for (d, c, w) in &rows {
            writeln!(s, "{:<width$}  |C(D)| = {c}  w_D = {w}", d.to_string()).unwrap();
        }
        writeln!(s, "basic subsets: {}", rows.len()).unwrap();
        writeln!(s, "homogeneous elements: {homogeneous}").unwrap();
        s
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn go(args: &[&str]) -> Output {
        let mut full = vec!["unitri"];
        full.extend(args);
        run(&Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn subset_sources() {
        let a = go(&["wd", "--n", "4", "--d", "(3,1),(4,2)", "--format", "json"]);
        let b = go(&[
            "wd",
            "--d-json",
            r#"{"n":4,"roots":[[4,2],[3,1]]}"#,
            "--format",
            "json",
        ]);
        assert_eq!(a, b);
        let empty = go(&["wd", "--n", "3"]);
        assert!(empty.stdout.starts_with("1 2 3\n"));
        let clash = go(&["wd", "--n", "5", "--d-json", r#"{"n":4,"roots":[]}"#]);
        assert_eq!(clash.code, 2);
        assert!(clash.stderr.contains("disagrees"));
    }

    #[test]
    fn rejects_non_basic_json() {
        let out = go(&["invariants", "--d-json", r#"{"n":4,"roots":[[3,1],[3,2]]}"#]);
        assert_eq!(out.code, 2);
        assert!(out.stdout.is_empty());
    }

    #[test]
    fn phi_must_cover_d() {
        let out = go(&[
            "relations",
            "--n",
            "4",
            "--d",
            "(3,1),(4,2)",
            "--phi",
            "(3,1)=1",
        ]);
        assert_eq!(out.code, 2);
        let out = go(&["relations", "--n", "4", "--d", "(3,1)", "--phi", "(3,1)=x"]);
        assert_eq!(out.code, 2);
    }

    #[test]
    fn empty_subset_verifies() {
        let out = go(&["verify", "--n", "3", "--trials", "2"]);
        assert_eq!(out.code, 0, "{}", out.stdout);
        assert!(out.stdout.contains("jacobian rank: 0"));
    }

    #[test]
    fn enumerate_counts() {
        let out = go(&["enumerate", "--n", "5", "--format", "json"]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["basic_subsets"], 52);
        assert_eq!(v["homogeneous_elements"], 52);
    }
}
