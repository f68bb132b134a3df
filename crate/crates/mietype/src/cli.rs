//! Command-line front end.
//!
//! Subcommands: `spectrum`, `degeneracy`, `expect`, `wavefunction`,
//! `ladder`, `verify`. Output is JSON (one document), CSV or an aligned
//! text table; every float is printed in shortest round-trip form so
//! golden files diff losslessly. Exit codes: 0 success, 1 physics or
//! verification failure, 2 usage error.
//!
//! A flat key-value config file (`--config FILE`, lines of `key = value`)
//! mirrors the long flags; explicit flags win.

use crate::error::Error;
use crate::ladder::{apply_lower, apply_raise, casimir_eigenvalue, commutator_check, hamiltonian_via_l0, FixedEpsilonFamily};
use crate::model::{Channel, KratzerForm, KratzerVariant, PotentialParams};
use crate::observables;
use crate::quadrature::radial_inner_product;
use crate::report::{build_report, ItemStatus, SweepConfig, VerificationReport};
use crate::spectrum;
use crate::wavefunction::{linear_spaced, log_spaced, RadialState};
use std::collections::BTreeMap;
use std::io::Write;

const USAGE: &str = "usage: mietype <spectrum|degeneracy|expect|wavefunction|ladder|verify> [flags]

potential:        --A X --B X --C X  or  --kratzer-fues|--modified-kratzer --kappa X --re X
units:            --mu X --hbar X            (default 1, 1)
channels:         --N LIST --l RANGE --nr RANGE   (e.g. --N 3,4,5 --l 0..1 --nr 0..2)
output:           --format json|csv|table    (default table)
degeneracy:       --n RANGE | --paper-table
wavefunction:     --grid lin:LO:HI:COUNT | log:LO:HI:COUNT, --check-norm
verify:           --strict-literal, --tolerance KEY=VAL (repeatable)
misc:             --config FILE, --skip-unphysical";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

/// Everything a channel-sweeping command needs, resolved from flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: PotentialParams,
    pub dims: Vec<u32>,
    pub ells: Vec<u32>,
    pub n_rs: Vec<u32>,
    pub format: OutputFormat,
    pub skip_unphysical: bool,
    pub strict_literal: bool,
    pub check_norm: bool,
    pub paper_table: bool,
    pub grid: Option<Vec<f64>>,
    pub principal: Vec<u32>,
    pub tolerance_overrides: Vec<(String, f64)>,
}

/// Entry point used by the binary and the end-to-end tests. Returns the
/// process exit code.
pub fn run<O: Write, E: Write>(args: &[String], out: &mut O, err: &mut E) -> i32 {
    match dispatch(args, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            let _ = writeln!(err, "{USAGE}");
            2
        }
        Err(Failure::Physics(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Io) => 1,
    }
}

enum Failure {
    Usage(String),
    Physics(String),
    Io,
}

impl From<std::io::Error> for Failure {
    fn from(_: std::io::Error) -> Self {
        Failure::Io
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn physics(err: Error) -> Failure {
    Failure::Physics(err.to_string())
}

fn dispatch<O: Write>(args: &[String], out: &mut O) -> Result<i32, Failure> {
    let command = args.first().ok_or_else(|| usage("missing subcommand"))?;
    let flags = Flags::parse(&args[1..])?;
    match command.as_str() {
        "spectrum" => cmd_spectrum(&flags, out),
        "degeneracy" => cmd_degeneracy(&flags, out),
        "expect" => cmd_expect(&flags, out),
        "wavefunction" => cmd_wavefunction(&flags, out),
        "ladder" => cmd_ladder(&flags, out),
        "verify" => cmd_verify(&flags, out),
        other => Err(usage(format!("unknown subcommand `{other}`"))),
    }
}

const BOOL_FLAGS: &[&str] = &[
    "kratzer-fues",
    "modified-kratzer",
    "paper-table",
    "check-norm",
    "strict-literal",
    "skip-unphysical",
];

const VALUE_FLAGS: &[&str] = &[
    "A", "B", "C", "mu", "hbar", "kappa", "re", "N", "l", "nr", "n", "grid", "format",
    "tolerance", "config",
];

/// Parsed flags: booleans plus possibly repeated key-value pairs, with
/// config-file values underneath explicit ones.
struct Flags {
    values: BTreeMap<String, Vec<String>>,
    bools: Vec<String>,
}

impl Flags {
    fn parse(args: &[String]) -> Result<Self, Failure> {
        let mut values: BTreeMap<String, Vec<String>> = BTreeMap::new();
        let mut bools = Vec::new();
        let mut iter = args.iter().peekable();
        while let Some(token) = iter.next() {
            let stripped = token
                .strip_prefix("--")
                .ok_or_else(|| usage(format!("unexpected argument `{token}`")))?;
            let (name, inline) = match stripped.split_once('=') {
                Some((n, v)) => (n, Some(v.to_string())),
                None => (stripped, None),
            };
            if BOOL_FLAGS.contains(&name) {
                if inline.is_some() {
                    return Err(usage(format!("flag --{name} takes no value")));
                }
                bools.push(name.to_string());
            } else if VALUE_FLAGS.contains(&name) {
                let value = match inline {
                    Some(v) => v,
                    None => iter
                        .next()
                        .ok_or_else(|| usage(format!("flag --{name} needs a value")))?
                        .clone(),
                };
                values.entry(name.to_string()).or_default().push(value);
            } else {
                return Err(usage(format!("unknown flag --{name}")));
            }
        }

        // config file sits underneath: only fill in what flags left unset
        if let Some(paths) = values.get("config").cloned() {
            for path in paths {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| usage(format!("cannot read config {path}: {e}")))?;
                for line in text.lines() {
                    let line = line.split('#').next().unwrap_or("").trim();
                    if line.is_empty() {
                        continue;
                    }
                    let (key, value) = line
                        .split_once('=')
                        .or_else(|| line.split_once(char::is_whitespace))
                        .ok_or_else(|| usage(format!("malformed config line `{line}`")))?;
                    let key = key.trim();
                    let value = value.trim();
                    if BOOL_FLAGS.contains(&key) {
                        if value == "true" && !bools.iter().any(|b| b == key) {
                            bools.push(key.to_string());
                        }
                    } else if VALUE_FLAGS.contains(&key) {
                        if key == "tolerance" {
                            values.entry(key.to_string()).or_default().push(value.to_string());
                        } else {
                            values
                                .entry(key.to_string())
                                .or_insert_with(|| vec![value.to_string()]);
                        }
                    } else {
                        return Err(usage(format!("unknown config key `{key}`")));
                    }
                }
            }
        }

        Ok(Self { values, bools })
    }

    fn has(&self, name: &str) -> bool {
        self.bools.iter().any(|b| b == name)
    }

    fn get(&self, name: &str) -> Option<&str> {
        self.values.get(name).and_then(|v| v.first()).map(|s| s.as_str())
    }

    fn get_all(&self, name: &str) -> impl Iterator<Item = &str> {
        self.values.get(name).into_iter().flatten().map(|s| s.as_str())
    }

    fn get_f64(&self, name: &str, default: f64) -> Result<f64, Failure> {
        match self.get(name) {
            None => Ok(default),
            Some(text) => text
                .parse()
                .map_err(|_| usage(format!("flag --{name}: `{text}` is not a number"))),
        }
    }
}

/// `3`, `3,4,5` or `0..4` (inclusive on both ends).
fn parse_u32_sequence(text: &str, flag: &str) -> Result<Vec<u32>, Failure> {
    let bad = || usage(format!("flag --{flag}: cannot parse `{text}`"));
    let mut out = Vec::new();
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        if hi < lo {
            return Err(bad());
        }
        out.extend(lo..=hi);
    } else {
        for part in text.split(',') {
            out.push(part.trim().parse().map_err(|_| bad())?);
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn parse_grid(text: &str) -> Result<Vec<f64>, Failure> {
    let bad = || usage(format!("flag --grid: cannot parse `{text}` (want lin:LO:HI:COUNT or log:LO:HI:COUNT)"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 4 {
        return Err(bad());
    }
    let lo: f64 = parts[1].parse().map_err(|_| bad())?;
    let hi: f64 = parts[2].parse().map_err(|_| bad())?;
    let count: usize = parts[3].parse().map_err(|_| bad())?;
    if !((2..=1_000_000).contains(&count) && hi > lo) {
        return Err(bad());
    }
    match parts[0] {
        "lin" | "linear" => {
            if !(lo >= 0.0) {
                return Err(bad());
            }
            let mut grid = linear_spaced(lo, hi, count);
            if grid[0] == 0.0 {
                grid.remove(0);
            }
            Ok(grid)
        }
        "log" => {
            if !(lo > 0.0) {
                return Err(bad());
            }
            Ok(log_spaced(lo, hi, count))
        }
        _ => Err(bad()),
    }
}

fn resolve_config(flags: &Flags) -> Result<RunConfig, Failure> {
    let kf = flags.has("kratzer-fues");
    let mk = flags.has("modified-kratzer");
    if kf && mk {
        return Err(usage("--kratzer-fues and --modified-kratzer are mutually exclusive"));
    }
    let mu = flags.get_f64("mu", 1.0)?;
    let hbar = flags.get_f64("hbar", 1.0)?;
    let params = if kf || mk {
        let kappa = flags
            .get("kappa")
            .ok_or_else(|| usage("Kratzer forms need --kappa"))?
            .parse()
            .map_err(|_| usage("flag --kappa: not a number"))?;
        let r_e = flags
            .get("re")
            .ok_or_else(|| usage("Kratzer forms need --re"))?
            .parse()
            .map_err(|_| usage("flag --re: not a number"))?;
        let variant = if kf {
            KratzerVariant::KratzerFues
        } else {
            KratzerVariant::ModifiedKratzer
        };
        let form = KratzerForm::new(kappa, r_e, variant).map_err(|e| usage(e.to_string()))?;
        let base = PotentialParams::from_kratzer(&form).map_err(|e| usage(e.to_string()))?;
        PotentialParams::new(base.a, base.b, base.c, mu, hbar).map_err(|e| usage(e.to_string()))?
    } else {
        let a = flags
            .get("A")
            .ok_or_else(|| usage("need --A (or a Kratzer form)"))?
            .parse()
            .map_err(|_| usage("flag --A: not a number"))?;
        let b = flags.get_f64("B", 0.0)?;
        let c = flags.get_f64("C", 0.0)?;
        PotentialParams::new(a, b, c, mu, hbar).map_err(|e| usage(e.to_string()))?
    };

    let format = match flags.get("format").unwrap_or("table") {
        "json" => OutputFormat::Json,
        "csv" => OutputFormat::Csv,
        "table" => OutputFormat::Table,
        other => return Err(usage(format!("unknown format `{other}`"))),
    };

    let dims = match flags.get("N") {
        Some(text) => parse_u32_sequence(text, "N")?,
        None => vec![3],
    };
    let ells = match flags.get("l") {
        Some(text) => parse_u32_sequence(text, "l")?,
        None => vec![0],
    };
    let n_rs = match flags.get("nr") {
        Some(text) => parse_u32_sequence(text, "nr")?,
        None => vec![0, 1, 2],
    };
    let principal = match flags.get("n") {
        Some(text) => parse_u32_sequence(text, "n")?,
        None => (1..=5).collect(),
    };

    let grid = match flags.get("grid") {
        Some(text) => Some(parse_grid(text)?),
        None => None,
    };

    let mut tolerance_overrides = Vec::new();
    for entry in flags.get_all("tolerance") {
        let (key, value) = entry
            .split_once('=')
            .ok_or_else(|| usage(format!("--tolerance wants KEY=VAL, got `{entry}`")))?;
        let value: f64 = value
            .parse()
            .map_err(|_| usage(format!("--tolerance {key}: `{value}` is not a number")))?;
        tolerance_overrides.push((key.to_string(), value));
    }

    Ok(RunConfig {
        params,
        dims,
        ells,
        n_rs,
        format,
        skip_unphysical: flags.has("skip-unphysical"),
        strict_literal: flags.has("strict-literal"),
        check_norm: flags.has("check-norm"),
        paper_table: flags.has("paper-table"),
        grid,
        principal,
        tolerance_overrides,
    })
}

// ---------------------------------------------------------------------
// row-based output plumbing

#[derive(Debug, Clone)]
enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => format!("{v}"),
            Cell::Float(v) => format!("{v}"),
            Cell::Text(v) => v.clone(),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => serde_json::Value::from(*v),
            Cell::Float(v) => serde_json::Value::from(*v),
            Cell::Text(v) => serde_json::Value::from(v.clone()),
        }
    }

    fn is_numeric(&self) -> bool {
        !matches!(self, Cell::Text(_))
    }
}

struct Section {
    name: &'static str,
    headers: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

fn csv_quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn emit<O: Write>(
    out: &mut O,
    command: &str,
    format: OutputFormat,
    sections: &[Section],
) -> Result<(), Failure> {
    match format {
        OutputFormat::Json => {
            let mut doc = serde_json::Map::new();
            doc.insert("command".into(), serde_json::Value::from(command));
            for section in sections {
                let rows: Vec<serde_json::Value> = section
                    .rows
                    .iter()
                    .map(|row| {
                        let mut object = serde_json::Map::new();
                        for (header, cell) in section.headers.iter().zip(row) {
                            object.insert((*header).into(), cell.to_json());
                        }
                        serde_json::Value::Object(object)
                    })
                    .collect();
                doc.insert(section.name.into(), serde_json::Value::from(rows));
            }
            writeln!(out, "{}", serde_json::Value::Object(doc))?;
        }
        OutputFormat::Csv => {
            for (i, section) in sections.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                writeln!(out, "{}", section.headers.join(","))?;
                for row in &section.rows {
                    let line: Vec<String> =
                        row.iter().map(|c| csv_quote(&c.render())).collect();
                    writeln!(out, "{}", line.join(","))?;
                }
            }
        }
        OutputFormat::Table => {
            for (i, section) in sections.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                let mut widths: Vec<usize> =
                    section.headers.iter().map(|h| h.len()).collect();
                let rendered: Vec<Vec<String>> = section
                    .rows
                    .iter()
                    .map(|row| row.iter().map(Cell::render).collect())
                    .collect();
                for row in &rendered {
                    for (w, cell) in widths.iter_mut().zip(row) {
                        *w = (*w).max(cell.len());
                    }
                }
                let header_line: Vec<String> = section
                    .headers
                    .iter()
                    .zip(&widths)
                    .map(|(h, w)| format!("{h:<w$}"))
                    .collect();
                writeln!(out, "{}", header_line.join("  ").trim_end())?;
                for (row, cells) in rendered.iter().zip(&section.rows) {
                    let line: Vec<String> = row
                        .iter()
                        .zip(cells)
                        .zip(&widths)
                        .map(|((text, cell), w)| {
                            if cell.is_numeric() {
                                format!("{text:>w$}")
                            } else {
                                format!("{text:<w$}")
                            }
                        })
                        .collect();
                    writeln!(out, "{}", line.join("  ").trim_end())?;
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------
// subcommands

/// Channels of the config in deterministic (N, l, n_r) order, with
/// unphysical ones skipped or fatal per the config.
fn channels(config: &RunConfig) -> Result<Vec<Channel>, Failure> {
    let mut out = Vec::new();
    for &n_dim in &config.dims {
        for &ell in &config.ells {
            for &n_r in &config.n_rs {
                let ch = Channel::new(n_dim, ell, n_r).map_err(|e| usage(e.to_string()))?;
                match config.params.derive(&ch) {
                    Ok(_) => out.push(ch),
                    Err(e @ Error::UnphysicalChannel { .. }) => {
                        if !config.skip_unphysical {
                            return Err(physics(e));
                        }
                    }
                    Err(e) => return Err(physics(e)),
                }
            }
        }
    }
    Ok(out)
}

fn cmd_spectrum<O: Write>(flags: &Flags, out: &mut O) -> Result<i32, Failure> {
    let config = resolve_config(flags)?;
    let mut rows = Vec::new();
    for ch in channels(&config)? {
        let d = config.params.derive(&ch).map_err(physics)?;
        let level = spectrum::energy(&config.params, &ch).map_err(physics)?;
        rows.push(vec![
            Cell::Int(ch.n_dim as i64),
            Cell::Int(ch.ell as i64),
            Cell::Int(ch.n_r as i64),
            Cell::Float(d.v),
            Cell::Float(d.nu),
            Cell::Float(d.epsilon),
            Cell::Float(level.energy),
            Cell::Float(level.k),
        ]);
    }
    emit(
        out,
        "spectrum",
        config.format,
        &[Section {
            name: "rows",
            headers: vec!["N", "l", "nr", "v", "nu", "epsilon", "energy", "K"],
            rows,
        }],
    )?;
    Ok(0)
}

fn cmd_degeneracy<O: Write>(flags: &Flags, out: &mut O) -> Result<i32, Failure> {
    // degeneracy counting is pure combinatorics; no potential involved
    let format = match flags.get("format").unwrap_or("table") {
        "json" => OutputFormat::Json,
        "csv" => OutputFormat::Csv,
        "table" => OutputFormat::Table,
        other => return Err(usage(format!("unknown format `{other}`"))),
    };
    let (dims, principal) = if flags.has("paper-table") {
        ((3..=10).collect::<Vec<u32>>(), (1..=5).collect::<Vec<u32>>())
    } else {
        let dims = match flags.get("N") {
            Some(text) => parse_u32_sequence(text, "N")?,
            None => vec![3],
        };
        let principal = match flags.get("n") {
            Some(text) => parse_u32_sequence(text, "n")?,
            None => (1..=5).collect(),
        };
        (dims, principal)
    };
    for &n_dim in &dims {
        if n_dim < 3 {
            return Err(usage(format!(
                "degeneracy counting is defined for N >= 3, got {n_dim}"
            )));
        }
    }
    let mut rows = Vec::new();
    for &n_dim in &dims {
        for &n in &principal {
            let count = spectrum::degeneracy(n, n_dim).map_err(|e| usage(e.to_string()))?;
            rows.push(vec![
                Cell::Int(n_dim as i64),
                Cell::Int(n as i64),
                Cell::Int(count as i64),
            ]);
        }
    }
    emit(
        out,
        "degeneracy",
        format,
        &[Section {
            name: "rows",
            headers: vec!["N", "n", "count"],
            rows,
        }],
    )?;
    Ok(0)
}

fn cmd_expect<O: Write>(flags: &Flags, out: &mut O) -> Result<i32, Failure> {
    let config = resolve_config(flags)?;
    let mut rows = Vec::new();
    for ch in channels(&config)? {
        let hft = observables::virial(&config.params, &ch).map_err(physics)?;
        let state = RadialState::new(&config.params, &ch).map_err(physics)?;
        let n1 = ch.n_dim as i32 - 1;
        let quad_inv_r = radial_inner_product(&state, &state, -1, n1).map_err(physics)?;
        let quad_inv_r2 = radial_inner_product(&state, &state, -2, n1).map_err(physics)?;
        let virial_residual =
            (hft.virial_lhs - hft.virial_rhs).abs() / hft.virial_rhs.abs().max(1e-300);
        rows.push(vec![
            Cell::Int(ch.n_dim as i64),
            Cell::Int(ch.ell as i64),
            Cell::Int(ch.n_r as i64),
            Cell::Float(hft.inv_r),
            Cell::Float(quad_inv_r),
            Cell::Float(hft.inv_r2),
            Cell::Float(quad_inv_r2),
            Cell::Float(hft.beta),
            Cell::Float(hft.kinetic),
            Cell::Float(hft.potential),
            Cell::Float(virial_residual),
        ]);
    }
    emit(
        out,
        "expect",
        config.format,
        &[Section {
            name: "rows",
            headers: vec![
                "N",
                "l",
                "nr",
                "inv_r_closed",
                "inv_r_quad",
                "inv_r2_closed",
                "inv_r2_quad",
                "beta",
                "kinetic",
                "potential",
                "virial_residual",
            ],
            rows,
        }],
    )?;
    Ok(0)
}

fn cmd_wavefunction<O: Write>(flags: &Flags, out: &mut O) -> Result<i32, Failure> {
    let config = resolve_config(flags)?;
    let grid = config
        .grid
        .clone()
        .ok_or_else(|| usage("wavefunction needs --grid"))?;
    let mut rows = Vec::new();
    let mut norm_rows = Vec::new();
    for ch in channels(&config)? {
        let state = RadialState::new(&config.params, &ch).map_err(physics)?;
        for &r in &grid {
            let value = state.eval(r).map_err(physics)?;
            let reduced = state.reduced(r).map_err(physics)?;
            rows.push(vec![
                Cell::Int(ch.n_dim as i64),
                Cell::Int(ch.ell as i64),
                Cell::Int(ch.n_r as i64),
                Cell::Float(r),
                Cell::Float(value),
                Cell::Float(reduced),
            ]);
        }
        if config.check_norm {
            let norm = radial_inner_product(&state, &state, 0, ch.n_dim as i32 - 1)
                .map_err(physics)?;
            norm_rows.push(vec![
                Cell::Int(ch.n_dim as i64),
                Cell::Int(ch.ell as i64),
                Cell::Int(ch.n_r as i64),
                Cell::Float(norm),
            ]);
        }
    }
    let mut sections = vec![Section {
        name: "rows",
        headers: vec!["N", "l", "nr", "r", "R", "U"],
        rows,
    }];
    if config.check_norm {
        sections.push(Section {
            name: "norms",
            headers: vec!["N", "l", "nr", "norm"],
            rows: norm_rows,
        });
    }
    emit(out, "wavefunction", config.format, &sections)?;
    Ok(0)
}

fn cmd_ladder<O: Write>(flags: &Flags, out: &mut O) -> Result<i32, Failure> {
    let config = resolve_config(flags)?;
    let mut rows = Vec::new();
    for &n_dim in &config.dims {
        for &ell in &config.ells {
            let anchor = Channel::new(n_dim, ell, *config.n_rs.iter().min().unwrap())
                .map_err(|e| usage(e.to_string()))?;
            let family = match FixedEpsilonFamily::from_channel(&config.params, &anchor) {
                Ok(f) => f,
                Err(e @ Error::UnphysicalChannel { .. }) => {
                    if config.skip_unphysical {
                        continue;
                    }
                    return Err(physics(e));
                }
                Err(e) => return Err(physics(e)),
            };
            for &n_r in &config.n_rs {
                let coeffs = family.coeffs(n_r).map_err(physics)?;
                let state = family.state(n_r).map_err(physics)?;
                let down = apply_lower(&state).map_err(physics)?;
                let up = apply_raise(&state).map_err(physics)?;
                let commutator = commutator_check(&family, n_r).map_err(physics)?;
                let casimir = casimir_eigenvalue(&family).map_err(physics)?;
                let ch = Channel::new(n_dim, ell, n_r).map_err(physics)?;
                let e_l0 = hamiltonian_via_l0(&config.params, &ch).map_err(physics)?;
                let lower_res = if n_r == 0 {
                    down.residual / down.source_sup.max(1e-300)
                } else {
                    down.residual / down.target_sup.max(1e-300)
                };
                rows.push(vec![
                    Cell::Int(n_dim as i64),
                    Cell::Int(ell as i64),
                    Cell::Int(n_r as i64),
                    Cell::Float(family.epsilon),
                    Cell::Float(coeffs.ell_minus),
                    Cell::Float(coeffs.ell_plus),
                    Cell::Float(coeffs.ell_zero),
                    Cell::Float(lower_res),
                    Cell::Float(up.residual / up.target_sup.max(1e-300)),
                    Cell::Float(commutator),
                    Cell::Float(casimir),
                    Cell::Float(e_l0),
                ]);
            }
        }
    }
    emit(
        out,
        "ladder",
        config.format,
        &[Section {
            name: "rows",
            headers: vec![
                "N",
                "l",
                "nr",
                "epsilon",
                "ell_minus",
                "ell_plus",
                "ell_zero",
                "lower_residual",
                "raise_residual",
                "commutator",
                "casimir",
                "energy_l0",
            ],
            rows,
        }],
    )?;
    Ok(0)
}


fn cmd_verify<O: Write>(flags: &Flags, out: &mut O) -> Result<i32, Failure> {
    // verify has its own default sweep; channel flags narrow it
    let mut sweep = SweepConfig::default();
    if let Some(text) = flags.get("N") {
        sweep.dims = parse_u32_sequence(text, "N")?;
    }
    if let Some(text) = flags.get("l") {
        sweep.ells = parse_u32_sequence(text, "l")?;
    }
    if let Some(text) = flags.get("nr") {
        sweep.n_rs = parse_u32_sequence(text, "nr")?;
    }
    if let Some(a) = flags.get("A") {
        let a: f64 = a.parse().map_err(|_| usage("flag --A: not a number"))?;
        let b = flags.get_f64("B", 0.0)?;
        let c = flags.get_f64("C", 0.0)?;
        sweep.potentials = vec![(a, b, c)];
    }
    sweep.mu = flags.get_f64("mu", 1.0)?;
    sweep.hbar = flags.get_f64("hbar", 1.0)?;
    sweep.strict_literal = flags.has("strict-literal");
    for entry in flags.get_all("tolerance") {
        let (key, value) = entry
            .split_once('=')
            .ok_or_else(|| usage(format!("--tolerance wants KEY=VAL, got `{entry}`")))?;
        let value: f64 = value
            .parse()
            .map_err(|_| usage(format!("--tolerance {key}: `{value}` is not a number")))?;
        sweep.tolerances.set(key, value);
    }
    let format = match flags.get("format").unwrap_or("table") {
        "json" => OutputFormat::Json,
        "csv" => OutputFormat::Csv,
        "table" => OutputFormat::Table,
        other => return Err(usage(format!("unknown format `{other}`"))),
    };

    let report = build_report(&sweep).map_err(physics)?;
    write_report(out, &report, format)?;
    Ok(if report.mismatches() == 0 { 0 } else { 1 })
}

fn status_text(status: ItemStatus) -> &'static str {
    match status {
        ItemStatus::Match => "match",
        ItemStatus::FlaggedDiscrepancy => "flagged_discrepancy",
        ItemStatus::Mismatch => "mismatch",
    }
}

fn write_report<O: Write>(
    out: &mut O,
    report: &VerificationReport,
    format: OutputFormat,
) -> Result<(), Failure> {
    match format {
        OutputFormat::Json => {
            let mut doc = serde_json::Map::new();
            doc.insert("command".into(), "verify".into());
            doc.insert(
                "header".into(),
                serde_json::json!({
                    "tool": "mietype",
                    "version": env!("CARGO_PKG_VERSION"),
                    "config": serde_json::to_value(&report.config).map_err(|_| Failure::Io)?,
                }),
            );
            doc.insert(
                "summary".into(),
                serde_json::json!({
                    "items": report.items.len(),
                    "matches": report.items.len() - report.flagged() - report.mismatches(),
                    "flagged": report.flagged(),
                    "mismatches": report.mismatches(),
                }),
            );
            doc.insert(
                "items".into(),
                serde_json::to_value(&report.items).map_err(|_| Failure::Io)?,
            );
            writeln!(out, "{}", serde_json::Value::Object(doc))?;
        }
        OutputFormat::Csv | OutputFormat::Table => {
            let rows: Vec<Vec<Cell>> = report
                .items
                .iter()
                .map(|item| {
                    vec![
                        Cell::Text(item.name.clone()),
                        Cell::Text(status_text(item.status).to_string()),
                        Cell::Float(item.computed),
                        Cell::Float(item.oracle),
                        Cell::Float(item.rel_error),
                        Cell::Float(item.tolerance),
                        Cell::Text(item.literal_form.clone()),
                        Cell::Text(item.detail.clone()),
                    ]
                })
                .collect();
            let headers = vec![
                "name",
                "status",
                "computed",
                "oracle",
                "rel_error",
                "tolerance",
                "literal_form",
                "detail",
            ];
            let fmt = format;
            emit(
                out,
                "verify",
                fmt,
                &[Section {
                    name: "items",
                    headers,
                    rows,
                }],
            )?;
            if format == OutputFormat::Table {
                writeln!(
                    out,
                    "\nitems: {}  matches: {}  flagged: {}  mismatches: {}",
                    report.items.len(),
                    report.items.len() - report.flagged() - report.mismatches(),
                    report.flagged(),
                    report.mismatches()
                )?;
            }
        }
    }
    Ok(())
}
