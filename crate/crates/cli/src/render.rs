//! Rendering of each subcommand into CSV, JSON or plain text.

use lucas_index::empirical::{compare as compare_rows, write_compare_csv, PrimeSource};
use lucas_index::kummer::{chi_decompose, decomposition_period};
use lucas_index::rational::format_ratio;
use lucas_index::{scan, ConditionContext, DensityProfile, Error, LucasParams};
use serde_json::{json, Value};

use crate::Format;

type Out = Result<String, Error>;

fn csv_table(header: &[&str], rows: Vec<Vec<String>>) -> Out {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Resource(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Resource(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn json_out(v: Value) -> Out {
    Ok(serde_json::to_string_pretty(&v).expect("json values serialize") + "\n")
}

fn header(params: &LucasParams) -> String {
    format!(
        "a1 = {}, a2 = {}, D_u = {}, field discriminant {}\n",
        params.a1(),
        params.a2(),
        params.discriminant(),
        params.field().disc()
    )
}

pub fn decompose(params: &LucasParams, fmt: Format) -> Out {
    let ctx = ConditionContext::new(params)?;
    let chi = chi_decompose(&ctx)?;
    let dec = ctx.decomposition();
    let period = decomposition_period(&ctx);
    match fmt {
        Format::Csv => csv_table(
            &["m", "c"],
            chi.terms.iter().map(|(m, c)| vec![m.to_string(), format_ratio(c)]).collect(),
        ),
        Format::Json => json_out(json!({
            "a1": params.a1(),
            "a2": params.a2(),
            "discriminant": params.discriminant(),
            "field_discriminant": params.field().disc(),
            "gamma": params.gamma().to_string(),
            "s": dec.s,
            "h": dec.h,
            "gamma0": dec.gamma0.to_string(),
            "period": period,
            "chi": chi.terms.iter().map(|(m, c)| json!({"m": m, "c": format_ratio(c)})).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = header(params);
            s += &format!("gamma = {}\n", params.gamma());
            s += &format!("s = {}, h = {}, gamma0 = {}\n", dec.s, dec.h, dec.gamma0);
            s += &format!("P = {period}\n");
            let terms: Vec<String> = chi.terms.iter().map(|(m, c)| format!("{}*chi_{m}", format_ratio(c))).collect();
            s += &format!("chi = {}\n", terms.join(" + ").replace("+ -", "- "));
            Ok(s)
        }
    }
}

pub fn gtable(params: &LucasParams, fmt: Format) -> Out {
    let profile = DensityProfile::new(params)?;
    let period = profile.gu_period();
    match fmt {
        Format::Csv => csv_table(
            &["residue", "g_u"],
            (0..period)
                .map(|r| vec![r.to_string(), format_ratio(&profile.g_u(if r == 0 { period } else { r }))])
                .collect(),
        ),
        Format::Json => json_out(json!({
            "period": period,
            "classes": profile.gu_classes().iter().map(|(v, res)| json!({"g_u": format_ratio(v), "residues": res})).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = header(params);
            for (v, residues) in profile.gu_classes() {
                let list: Vec<String> = residues.iter().map(u64::to_string).collect();
                s += &format!("G_u(t) = {:<8} if t mod {period} in {{{}}}\n", format_ratio(&v), list.join(", "));
            }
            Ok(s)
        }
    }
}

pub fn density(params: &LucasParams, t_max: u64, fmt: Format) -> Out {
    if t_max == 0 {
        return Err(Error::InvalidArgument("--t-max must be positive".into()));
    }
    let profile = DensityProfile::new(params)?;
    let values: Vec<_> = (1..=t_max).map(|t| profile.delta(t)).collect();
    match fmt {
        Format::Csv => csv_table(
            &["t", "coefficient", "delta"],
            values
                .iter()
                .map(|d| vec![d.t.to_string(), format_ratio(&d.coefficient), format!("{:.6}", d.value)])
                .collect(),
        ),
        Format::Json => json_out(json!(values
            .iter()
            .map(|d| json!({"t": d.t, "coefficient": format_ratio(&d.coefficient), "delta": format!("{:.6}", d.value)}))
            .collect::<Vec<_>>())),
        Format::Text => {
            let mut s = header(params);
            s += &format!("{:>4}  {:>10}  {}\n", "t", "delta", "delta / A");
            for d in &values {
                s += &format!("{:>4}  {:>10.6}  {}\n", d.t, d.value, format_ratio(&d.coefficient));
            }
            Ok(s)
        }
    }
}

pub fn oracle(params: &LucasParams, t: u64, terms: u64, fmt: Format) -> Out {
    if t == 0 || terms == 0 {
        return Err(Error::InvalidArgument("--t and --terms must be positive".into()));
    }
    let profile = DensityProfile::new(params)?;
    let series = profile.delta_series(t, terms);
    let closed = profile.delta(t).value;
    let within = (series.value - closed).abs() <= series.remainder_bound;
    match fmt {
        Format::Csv => csv_table(
            &["t", "terms", "series", "remainder_bound", "delta", "within_bound"],
            vec![vec![
                t.to_string(),
                terms.to_string(),
                format!("{:.6}", series.value),
                format!("{:.6}", series.remainder_bound),
                format!("{closed:.6}"),
                within.to_string(),
            ]],
        ),
        Format::Json => json_out(json!({
            "t": t,
            "terms": terms,
            "series": series.value,
            "remainder_bound": series.remainder_bound,
            "delta": closed,
            "within_bound": within,
        })),
        Format::Text => Ok(format!(
            "{}series({t}, {terms} terms) = {:.6} +- {:.6}\nclosed form         = {closed:.6}\n{}\n",
            header(params),
            series.value,
            series.remainder_bound,
            if within { "agree within the bound" } else { "DISAGREE beyond the bound" }
        )),
    }
}

pub fn compare(
    params: &LucasParams,
    t_max: u64,
    primes: u64,
    workers: usize,
    sieve_limit: Option<u64>,
    fmt: Format,
) -> Out {
    if t_max == 0 || primes == 0 || workers == 0 {
        return Err(Error::InvalidArgument("--t-max, --primes and --workers must be positive".into()));
    }
    let profile = DensityProfile::new(params)?;
    let source = match sieve_limit {
        Some(limit) => PrimeSource::with_limit(primes, limit)?,
        None => PrimeSource::first(primes)?,
    };
    let table = scan(params, &source, primes, workers)?;
    let rows = compare_rows(&profile, &table, t_max);
    let flagged: Vec<u64> = rows.iter().filter(|r| r.flagged).map(|r| r.t).collect();
    match fmt {
        Format::Csv => {
            let mut buf = Vec::new();
            write_compare_csv(&rows, &mut buf)?;
            Ok(String::from_utf8(buf).expect("csv output is utf-8"))
        }
        Format::Json => json_out(json!({
            "a1": params.a1(),
            "a2": params.a2(),
            "primes": primes,
            "largest_prime": table.x,
            "skipped": table.skipped,
            "flagged": flagged,
            "rows": rows.iter().map(|r| json!({
                "t": r.t,
                "delta": r.delta_str(),
                "delta_tilde": r.delta_tilde_str(),
                "error_pct": r.error_str(),
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = header(params);
            s += &format!("first {primes} primes (up to {}), skipped {:?}\n", table.x, table.skipped);
            let cell = |i: usize| {
                let r = &rows[i];
                format!("{:>3}  {}  {}  {:>7}", r.t, r.delta_str(), r.delta_tilde_str(), r.error_str())
            };
            let half = rows.len().div_ceil(2);
            s += &format!("{:>3}  {:>8}  {:>8}  {:>7}", "t", "delta", "tilde", "error");
            if rows.len() > 1 {
                s += &format!("  |  {:>3}  {:>8}  {:>8}  {:>7}", "t", "delta", "tilde", "error");
            }
            s.push('\n');
            for i in 0..half {
                s += &cell(i);
                if i + half < rows.len() {
                    s += "  |  ";
                    s += &cell(i + half);
                }
                s.push('\n');
            }
            if !flagged.is_empty() {
                s += &format!("zero density but primes found at t = {flagged:?}\n");
            }
            Ok(s)
        }
    }
}

pub fn conditions(params: &LucasParams, n_max: u64, fmt: Format) -> Out {
    if n_max == 0 {
        return Err(Error::InvalidArgument("--n-max must be positive".into()));
    }
    let ctx = ConditionContext::new(params)?;
    let rows: Vec<_> = (1..=n_max).map(|n| ctx.diagnostics(n)).collect();
    match fmt {
        Format::Csv => csv_table(
            &["n", "case", "c_size", "field_degree", "ratio"],
            rows.iter()
                .map(|r| vec![r.n.to_string(), r.case.to_string(), r.c_size.to_string(), r.field_degree.to_string(), format_ratio(&r.ratio)])
                .collect(),
        ),
        Format::Json => json_out(json!(rows
            .iter()
            .map(|r| json!({
                "n": r.n,
                "case": r.case.to_string(),
                "c_size": r.c_size,
                "field_degree": r.field_degree,
                "ratio": format_ratio(&r.ratio),
            }))
            .collect::<Vec<_>>())),
        Format::Text => {
            let mut s = header(params);
            s += &format!("{:>4}  {:>4}  {:>3}  {:>8}  {}\n", "n", "case", "#C", "[K_n:Q]", "ratio");
            for r in &rows {
                s += &format!("{:>4}  {:>4}  {:>3}  {:>8}  {}\n", r.n, r.case.to_string(), r.c_size, r.field_degree, format_ratio(&r.ratio));
            }
            Ok(s)
        }
    }
}
