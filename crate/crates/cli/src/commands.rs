use std::fmt::Write as _;

use parkfn::circular::{circular_park, decompose, linearize};
use parkfn::enumerate::{
    count_prime_restricted, count_restricted, enum_prime_restricted, enum_restricted,
    ones_distribution,
};
use parkfn::formulas::{
    catalan_triangle, mod_count_general, ones_poly_subtractive, ppf_total, prime_alternating,
    prime_subtractive, restricted_alternating, restricted_subtractive,
};
use parkfn::park::park;
use parkfn::{BigCount, Error, PreferenceList, RestrictionSet};
use serde_json::{json, Value};

use crate::{Failure, Family, Format, Kind, Method, Outcome, RestrictionArgs};

/// Quotes a CSV field when it contains a separator or quote.
pub fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

enum Shape {
    Segment(usize),
    Set,
    Modular { g: usize, s: usize, k: usize },
}

struct Resolved {
    n: usize,
    set: RestrictionSet,
    shape: Shape,
}

impl Resolved {
    fn json(&self) -> Value {
        match self.shape {
            Shape::Segment(s) => json!({"kind": "segment", "s": s}),
            Shape::Set => json!({"kind": "set", "elements": self.set.elements()}),
            Shape::Modular { g, s, k } => json!({"kind": "modular", "g": g, "s": s, "k": k}),
        }
    }

    fn label(&self) -> String {
        match self.shape {
            Shape::Segment(s) => format!("[{s}]"),
            Shape::Set => self.set.to_string(),
            Shape::Modular { g, s, k } => format!("g={g} s={s} k={k}"),
        }
    }

    /// Size of the unpruned search space `|S|^n`, saturating.
    fn space(&self) -> u128 {
        (self.set.len() as u128)
            .checked_pow(self.n as u32)
            .unwrap_or(u128::MAX)
    }
}

fn resolve(args: &RestrictionArgs) -> Result<Resolved, Error> {
    if let (Some(g), Some(s), Some(k)) = (args.g, args.s, args.k) {
        if g == 0 || s == 0 || k == 0 || k > g * s {
            return Err(Error::Domain(format!(
                "need g, s >= 1 and 1 <= k <= gs, got g={g}, s={s}, k={k}"
            )));
        }
        let n = g * s - k;
        if args.n.is_some_and(|m| m != n) {
            return Err(Error::Domain(format!("--n must equal g*s - k = {n}")));
        }
        return Ok(Resolved {
            n,
            set: RestrictionSet::modular(g, n)?,
            shape: Shape::Modular { g, s, k },
        });
    }
    let n = args
        .n
        .ok_or_else(|| Error::Domain("--n is required unless --g, --s, --k are given".into()))?;
    if let Some(text) = &args.set {
        let set = RestrictionSet::parse(n, text)?;
        // An explicit initial segment still gets the closed forms.
        let elements = set.elements();
        if !elements.is_empty() && elements.iter().enumerate().all(|(i, &e)| e == i + 1) {
            let s = elements.len();
            return Ok(Resolved {
                n,
                set,
                shape: Shape::Segment(s),
            });
        }
        return Ok(Resolved {
            n,
            set,
            shape: Shape::Set,
        });
    }
    let s = args.s.unwrap_or(n);
    Ok(Resolved {
        n,
        set: RestrictionSet::initial_segment(n, s)?,
        shape: Shape::Segment(s),
    })
}

fn check_budget(r: &Resolved, budget: u128) -> Result<(), Error> {
    let required = r.space();
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

fn brute(kind: Kind, r: &Resolved) -> Result<BigCount, Error> {
    match kind {
        Kind::Pf if r.set.is_empty() && r.n > 0 => Ok(BigCount::from(0)),
        Kind::Pf => count_restricted(r.n, &r.set),
        Kind::Ppf => count_prime_restricted(r.n, &r.set),
    }
}

fn closed_form(kind: Kind, r: &Resolved, method: Method) -> Result<Option<BigCount>, Error> {
    let alternating = method == Method::Alternating;
    let value = match (kind, &r.shape) {
        (Kind::Pf, Shape::Segment(s)) if alternating => restricted_alternating(r.n, *s)?,
        (Kind::Pf, Shape::Segment(s)) => restricted_subtractive(r.n, *s)?,
        (Kind::Ppf, Shape::Segment(s)) if *s == r.n => ppf_total(r.n)?,
        (Kind::Ppf, Shape::Segment(s)) if alternating => prime_alternating(r.n, *s)?,
        (Kind::Ppf, Shape::Segment(s)) => prime_subtractive(r.n, *s)?,
        (Kind::Pf, Shape::Modular { g, s, k }) if method == Method::Auto => {
            mod_count_general(*g, *s, *k)?
        }
        _ => return Ok(None),
    };
    Ok(Some(value))
}

pub fn count(
    kind: Kind,
    args: &RestrictionArgs,
    method: Method,
    budget: u128,
    format: Format,
) -> Outcome {
    let r = resolve(args)?;
    let (value, mismatch) = match method {
        Method::Brute => {
            check_budget(&r, budget)?;
            (brute(kind, &r)?, None)
        }
        Method::Subtractive | Method::Alternating => match closed_form(kind, &r, method)? {
            Some(v) => (v, None),
            None => {
                return Err(Failure::Domain(
                    format!("no {method:?} closed form for restriction {}", r.label())
                        .to_lowercase(),
                ))
            }
        },
        Method::Auto => match closed_form(kind, &r, Method::Auto)? {
            Some(v) => {
                let mut others = Vec::new();
                if let Some(alt) = closed_form(kind, &r, Method::Alternating)? {
                    others.push(("alternating", alt));
                }
                if r.space() <= budget {
                    others.push(("brute", brute(kind, &r)?));
                }
                let bad = others.into_iter().find(|(_, o)| *o != v);
                (v, bad)
            }
            None => {
                check_budget(&r, budget)?;
                (brute(kind, &r)?, None)
            }
        },
    };
    let family = match kind {
        Kind::Pf => "pf",
        Kind::Ppf => "ppf",
    };
    let out = match format {
        Format::Json => format!(
            "{}\n",
            json!({"family": family, "n": r.n, "restriction": r.json(), "count": value.to_string()})
        ),
        Format::Csv => format!(
            "family,n,restriction,count\n{family},{},{},{value}\n",
            r.n,
            csv_field(&r.label())
        ),
        Format::Text | Format::Lines => format!("{value}\n"),
    };
    match mismatch {
        None => Ok(out),
        Some((by, other)) => Err(Failure::Mismatch(format!("{out}{by} gives {other}\n"))),
    }
}

pub fn enumerate(kind: Kind, args: &RestrictionArgs, budget: u128, format: Format) -> Outcome {
    let r = resolve(args)?;
    check_budget(&r, budget)?;
    let lists: Vec<PreferenceList> = match kind {
        Kind::Pf if r.set.is_empty() && r.n > 0 => Vec::new(),
        Kind::Pf => enum_restricted(r.n, &r.set)?.collect(),
        Kind::Ppf => enum_prime_restricted(r.n, &r.set)?.collect(),
    };
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str("prefs,outcome,ones\n");
    }
    for pi in &lists {
        match format {
            Format::Text | Format::Lines => {
                let _ = writeln!(out, "{pi}");
            }
            Format::Json | Format::Csv => {
                let outcome = park(pi, r.n)?
                    .outcome()
                    .expect("every enumerated list parks");
                if format == Format::Json {
                    let _ = writeln!(
                        out,
                        "{}",
                        json!({"prefs": pi, "outcome": outcome, "ones": pi.ones()})
                    );
                } else {
                    let _ = writeln!(
                        out,
                        "\"{}\",\"{}\",{}",
                        join(pi.as_slice(), ","),
                        join(outcome.as_slice(), ","),
                        pi.ones()
                    );
                }
            }
        }
    }
    Ok(out)
}

fn show_spots(occupancy: &[Option<usize>]) -> String {
    occupancy
        .iter()
        .map(|c| c.map_or_else(|| ".".to_string(), |c| c.to_string()))
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_circle(text: &str) -> Result<(usize, usize), Error> {
    let bad = || Error::Domain(format!("--circular expects g,s, got {text:?}"));
    let (g, s) = text.split_once(',').ok_or_else(bad)?;
    Ok((
        g.trim().parse().map_err(|_| bad())?,
        s.trim().parse().map_err(|_| bad())?,
    ))
}

pub fn simulate(
    prefs: &PreferenceList,
    spots: Option<usize>,
    circle: Option<&str>,
    format: Format,
) -> Outcome {
    if let Some(text) = circle {
        let (g, s) = parse_circle(text)?;
        let state = circular_park(prefs, g, s)?;
        let parts = decompose(&state).ok();
        let lin = linearize(&state);
        let empty = state.empty_spots();
        return Ok(match format {
            Format::Json => format!(
                "{}\n",
                json!({
                    "occupancy": state.occupancy,
                    "unparked": [],
                    "defect": 0,
                    "outcome": null,
                    "g": g,
                    "s": s,
                    "empty": empty,
                    "lambda": parts.as_ref().map(|d| d.lambda.parts().to_vec()),
                    "mu": parts.as_ref().map(|d| d.mu.parts().to_vec()),
                    "anchor": parts.as_ref().map(|d| d.anchor),
                    "linearization": lin,
                })
            ),
            Format::Csv => {
                let mut out = "spot,car\n".to_string();
                for (j, c) in state.occupancy.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "{},{}",
                        j + 1,
                        c.map_or(String::new(), |c| c.to_string())
                    );
                }
                out
            }
            Format::Text | Format::Lines => {
                let mut out = String::new();
                let _ = writeln!(out, "occupancy: {}", show_spots(&state.occupancy));
                let _ = writeln!(out, "empty: {}", join(&empty, " "));
                if let Some(d) = &parts {
                    let _ = writeln!(out, "lambda: ({})", join(d.lambda.parts(), ","));
                    let _ = writeln!(out, "mu: ({})", join(d.mu.parts(), ","));
                    let _ = writeln!(out, "anchor: {}", d.anchor);
                }
                let _ = writeln!(
                    out,
                    "linearization: {}",
                    lin.map_or_else(|| "none".to_string(), |p| p.to_string())
                );
                out
            }
        });
    }
    let m = spots.ok_or_else(|| Error::Domain("--spots or --circular is required".into()))?;
    let res = park(prefs, m)?;
    let outcome = res.outcome();
    Ok(match format {
        Format::Json => format!(
            "{}\n",
            json!({
                "occupancy": res.occupancy,
                "unparked": res.unparked,
                "defect": res.defect(),
                "outcome": outcome,
            })
        ),
        Format::Csv => {
            let mut out = "spot,car\n".to_string();
            for (j, c) in res.occupancy.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{},{}",
                    j + 1,
                    c.map_or(String::new(), |c| c.to_string())
                );
            }
            out
        }
        Format::Text | Format::Lines => {
            let mut out = String::new();
            let _ = writeln!(out, "occupancy: {}", show_spots(&res.occupancy));
            let unparked = if res.unparked.is_empty() {
                "none".to_string()
            } else {
                join(&res.unparked, " ")
            };
            let _ = writeln!(out, "unparked: {unparked}");
            let _ = writeln!(out, "defect: {}", res.defect());
            let _ = writeln!(
                out,
                "outcome: {}",
                outcome.map_or_else(|| "none".to_string(), |p| p.to_string())
            );
            out
        }
    })
}

/// One labelled row of a table.
struct Row {
    key: Vec<(&'static str, usize)>,
    values: Vec<BigCount>,
}

fn render(rows: &[Row], column: &str, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut obj = serde_json::Map::new();
                    for (k, v) in &r.key {
                        obj.insert((*k).to_string(), json!(v));
                    }
                    let values: Vec<String> = r.values.iter().map(ToString::to_string).collect();
                    obj.insert("values".into(), json!(values));
                    Value::Object(obj)
                })
                .collect();
            let _ = writeln!(out, "{}", Value::Array(items));
        }
        Format::Csv => {
            let keys: Vec<&str> = rows
                .first()
                .map_or(Vec::new(), |r| r.key.iter().map(|k| k.0).collect());
            let _ = writeln!(out, "{},{column},value", keys.join(","));
            for r in rows {
                let prefix = join(&r.key.iter().map(|k| k.1).collect::<Vec<_>>(), ",");
                for (j, v) in r.values.iter().enumerate() {
                    let idx = if column == "s" { j + 1 } else { j };
                    let _ = writeln!(out, "{prefix},{idx},{v}");
                }
            }
        }
        Format::Text | Format::Lines => {
            for r in rows {
                let label = r
                    .key
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                let _ = writeln!(out, "{label}: {}", join(&r.values, ", "));
            }
        }
    }
    out
}

pub fn table(
    family: Family,
    n_max: usize,
    n: Option<usize>,
    s: Option<usize>,
    budget: u128,
    format: Format,
) -> Outcome {
    let mut rows = Vec::new();
    let column = match family {
        Family::PfRestricted | Family::PpfRestricted => {
            for n in 1..=n_max {
                let values = (1..=n)
                    .map(|s| match family {
                        Family::PfRestricted => restricted_subtractive(n, s),
                        _ if s == n => ppf_total(n),
                        _ => prime_subtractive(n, s),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                rows.push(Row {
                    key: vec![("n", n)],
                    values,
                });
            }
            "s"
        }
        Family::CatalanTriangle => {
            rows.push(Row {
                key: vec![("n", 0)],
                values: vec![BigCount::from(1)],
            });
            for n in 1..=n_max {
                let mut values = (0..n)
                    .map(|k| catalan_triangle(n, k))
                    .collect::<Result<Vec<_>, _>>()?;
                values.push(values[n - 1].clone());
                rows.push(Row {
                    key: vec![("n", n)],
                    values,
                });
            }
            "k"
        }
        Family::Ones => {
            let n = n.ok_or_else(|| Error::Domain("the ones table needs --n".into()))?;
            let s = s.unwrap_or(n);
            let poly = ones_poly_subtractive(n, s)?;
            let values: Vec<BigCount> = (0..=n).map(|d| poly.coeff(d)).collect();
            let row = Row {
                key: vec![("n", n), ("s", s)],
                values: values.clone(),
            };
            let space = (s as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
            if space <= budget && ones_distribution(n, s)? != values {
                return Err(Failure::Mismatch(render(&[row], "i", format)));
            }
            rows.push(row);
            "i"
        }
    };
    Ok(render(&rows, column, format))
}
