//! Command-line front end. [`run`] is the whole program; `main` only forwards
//! `std::env::args` and the exit code.
//!
//! Exit codes: 0 all checks pass, 1 a check failed or an internal consistency
//! error, 2 parse error, 3 constraint violation, 4 size guard, 5 non-standard
//! local model.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::cohomology::{
    cocycles_cohomologous, cohomology_rank, cup_product_boxtimes, epsilon_cocycle, extension_factor_set,
    lhs_edge_map, torsor_group, verify_coboundary_identity, Cochain, FiniteAbelianGroup,
};
use crate::conic::{check_artin, count_fiber_points, ConicBundle};
use crate::error::Error;
use crate::field::{
    is_irreducible, parse_place, parse_ratfunc, FiniteField, Kummer, Place, Poly, RatFunc, ResidueClass,
};
use crate::symbol::{
    ramification_divisor, reciprocity_report, residue_cocycle_route, tame_residue, SymbolClass,
};

#[derive(Parser, Debug)]
#[command(name = "brauer", version, about = "Residues of n-torsion Brauer classes over F_q(t)")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Order of the constant field F_q.
    #[arg(long)]
    q: u64,
    /// Torsion order; must divide q - 1.
    #[arg(long)]
    n: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Residue of a symbol class at one place.
    Residue {
        #[command(flatten)]
        field: FieldArgs,
        /// e.g. "(t, 2)_2 + 3*(t+1, t)_2"
        #[arg(long, allow_hyphen_values = true)]
        symbol: String,
        /// Monic irreducible polynomial, or "inf".
        #[arg(long)]
        place: String,
    },
    /// All nonzero residues.
    Ramification {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        symbol: String,
    },
    /// Sum of corestricted residues over all places.
    Reciprocity {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        symbol: String,
    },
    /// Group cohomology checks for the torsor group and the extension Gamma
    #[command(subcommand)]
    Cohomology(CohomologyCommand),
    /// Component torsors of the conic bundle a x^2 + b y^2 = z^2 against residues.
    Conic {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Randomized consistency checks; seed from BRAUER_SEED.
    Selftest {
        #[arg(long, default_value_t = 20)]
        cases: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CohomologyCommand {
    /// Edge map of 1_boxtimes_1 on mu_n x Z/n.
    Edge {
        #[arg(long)]
        n: u64,
    },
    /// Coboundary identity for the epsilon cocycle.
    Epsilon {
        #[arg(long)]
        n: u64,
    },
    /// Factor set of the matrix group extension.
    Gamma {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
    },
    /// Elementary divisors of H^k(G, Z/m).
    Rank {
        /// Cyclic factor orders, e.g. "2,2".
        #[arg(long, value_delimiter = ',', required = true)]
        group: Vec<u64>,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        k: usize,
    },
}

struct Report {
    command: &'static str,
    params: Map<String, Value>,
    results: Value,
    pass: bool,
    lines: Vec<String>,
}

impl Report {
    fn new(command: &'static str, params: Value) -> Self {
        let params = match params {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        Report { command, params, results: Value::Null, pass: true, lines: Vec::new() }
    }

    fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "pass": self.pass,
        })
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::ZeroSymbolArgument | Error::ModulusMismatch(..) => 2,
        Error::ModulusDoesNotDivide { .. }
        | Error::EvenCharacteristic(_)
        | Error::NotIrreducible(_)
        | Error::NotPrimePower(_)
        | Error::RamifiedGamma(_)
        | Error::BadZeta(_) => 3,
        Error::SizeGuard(_) | Error::FieldTooLarge(_) | Error::Overflow(_) => 4,
        Error::NonStandard(_) => 5,
        _ => 1,
    }
}

/// Runs the program on `args` (including the program name), writing the
/// report to `out` and diagnostics to stderr. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = e.print();
                    2
                }
            };
        }
    };
    let report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let written = match cli.format {
        Format::Text => report.lines.iter().try_for_each(|l| writeln!(out, "{l}")),
        Format::Json => {
            let s = serde_json::to_string_pretty(&report.to_json()).expect("values serialize");
            writeln!(out, "{s}")
        }
    };
    if written.is_err() {
        return 1;
    }
    if report.pass {
        0
    } else {
        1
    }
}

fn dispatch(cmd: &Command) -> crate::Result<Report> {
    match cmd {
        Command::Residue { field, symbol, place } => cmd_residue(field, symbol, place),
        Command::Ramification { field, symbol } => cmd_ramification(field, symbol),
        Command::Reciprocity { field, symbol } => cmd_reciprocity(field, symbol),
        Command::Cohomology(c) => cmd_cohomology(c),
        Command::Conic { q, a, b } => cmd_conic(*q, a, b),
        Command::Selftest { cases } => cmd_selftest(*cases),
    }
}

fn kummer_for(args: &FieldArgs) -> crate::Result<Kummer> {
    let field = FiniteField::new(args.q)?;
    Kummer::new(&field, args.n)
}

fn class_json(r: &ResidueClass) -> Value {
    serde_json::to_value(r.to_json()).expect("plain struct")
}

fn cmd_residue(args: &FieldArgs, symbol: &str, place: &str) -> crate::Result<Report> {
    let kummer = kummer_for(args)?;
    let alpha = SymbolClass::parse(&kummer, symbol)?;
    let place = parse_place(kummer.field(), place)?;
    let r = tame_residue(&alpha, &place)?;
    let mut report = Report::new(
        "residue",
        json!({"q": args.q, "n": args.n, "symbol": symbol, "place": place.to_string()}),
    );
    report.results = json!({"place": place.to_string(), "residue": class_json(&r)});
    report.lines.push(format!("{} (zeta={})", r.value(), r.zeta()));
    Ok(report)
}

fn cmd_ramification(args: &FieldArgs, symbol: &str) -> crate::Result<Report> {
    let kummer = kummer_for(args)?;
    let alpha = SymbolClass::parse(&kummer, symbol)?;
    let divisor = ramification_divisor(&alpha)?;
    let mut report = Report::new("ramification", json!({"q": args.q, "n": args.n, "symbol": symbol}));
    let entries: Vec<Value> = divisor
        .entries
        .iter()
        .map(|(p, r)| json!({"place": p.to_string(), "residue": class_json(r)}))
        .collect();
    report.results = json!({"divisor": entries, "zeta": kummer.zeta().to_string()});
    report.lines.push(divisor.to_string());
    Ok(report)
}

fn cmd_reciprocity(args: &FieldArgs, symbol: &str) -> crate::Result<Report> {
    let kummer = kummer_for(args)?;
    let alpha = SymbolClass::parse(&kummer, symbol)?;
    let rec = reciprocity_report(&alpha)?;
    let mut report = Report::new("reciprocity", json!({"q": args.q, "n": args.n, "symbol": symbol}));
    let rows: Vec<Value> = rec
        .places
        .iter()
        .map(|r| {
            json!({
                "place": r.place.to_string(),
                "degree": r.place.degree(),
                "residue": class_json(&r.residue),
                "corestricted": class_json(&r.corestricted),
            })
        })
        .collect();
    for r in &rec.places {
        report.lines.push(format!(
            "{}: residue={} corestricted={}",
            r.place, r.residue, r.corestricted
        ));
    }
    report.lines.push(format!("sum={}", rec.sum));
    report.pass = rec.sum.is_zero();
    report.results = json!({"places": rows, "sum": class_json(&rec.sum)});
    Ok(report)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_cohomology(cmd: &CohomologyCommand) -> crate::Result<Report> {
    match cmd {
        CohomologyCommand::Edge { n } => {
            let n = *n;
            check_modulus(n)?;
            let image = lhs_edge_map(&cup_product_boxtimes(n)?)?;
            let ok = image.class == 1 % n;
            let mut report = Report::new("cohomology edge", json!({"n": n}));
            report.results = json!({"class": image.class, "cochain": image.cochain.values()});
            report.lines.push(format!("1_boxtimes_1 -> {} : {}", image.class, verdict(ok)));
            report.pass = ok;
            Ok(report)
        }
        CohomologyCommand::Epsilon { n } => {
            let n = *n;
            check_modulus(n)?;
            let identity = verify_coboundary_identity(n)?;
            let eps = epsilon_cocycle(n);
            let cocycle = eps.is_cocycle();
            let a = eps.cyclic_element();
            let ok = identity && cocycle && a.pi_valuation() == Some(-1);
            let mut report = Report::new("cohomology epsilon", json!({"n": n}));
            report.results = json!({
                "coboundary_identity": identity,
                "epsilon_is_cocycle": cocycle,
                "cyclic_element": a.to_string(),
            });
            report.lines.push(format!("epsilon is a 2-cocycle : {}", verdict(cocycle)));
            report.lines.push(format!("cyclic element = {a}"));
            report.lines.push(format!("d(pi^(b/n)) = eps^-1 * (1_boxtimes_1) : {}", verdict(identity)));
            report.pass = ok;
            Ok(report)
        }
        CohomologyCommand::Gamma { n, q } => {
            let (n, q) = (*n, *q);
            check_modulus(n)?;
            let s = extension_factor_set(n, q)?;
            let target = cup_product_boxtimes(n)?.scale(-1);
            let matches = cocycles_cohomologous(&s.cochain, &target)?;
            let zero = Cochain::zero(&torsor_group(n)?, 2, n)?;
            let nontrivial = !cocycles_cohomologous(&s.cochain, &zero)?;
            let ok = matches && nontrivial;
            let mut report = Report::new("cohomology gamma", json!({"n": n, "q": q}));
            report.results = json!({
                "gamma_order": s.gamma_order,
                "cohomologous_to_minus_boxtimes": matches,
                "nontrivial": nontrivial,
                "factor_set": s.cochain.values(),
            });
            report.lines.push(format!("|Gamma| = {}", s.gamma_order));
            report.lines.push(format!("factor set ~ -(1x1) : {}", verdict(matches)));
            report.lines.push(format!("factor set not ~ 0 : {}", verdict(nontrivial)));
            report.pass = ok;
            Ok(report)
        }
        CohomologyCommand::Rank { group, m, k } => {
            let g = FiniteAbelianGroup::new(group.clone())?;
            let inv = cohomology_rank(&g, *m, *k)?;
            let mut report = Report::new("cohomology rank", json!({"group": group, "m": m, "k": k}));
            report.results = json!({"invariants": inv});
            let shape = if inv.is_empty() {
                "0".to_string()
            } else {
                inv.iter().map(|e| format!("Z/{e}")).collect::<Vec<_>>().join(" x ")
            };
            report.lines.push(format!("H^{k}({g}, Z/{m}) = {shape}"));
            Ok(report)
        }
    }
}

fn check_modulus(n: u64) -> crate::Result<()> {
    if n < 2 {
        return Err(Error::ModulusDoesNotDivide { n, q: 0 });
    }
    Ok(())
}

fn cmd_conic(q: u64, a: &str, b: &str) -> crate::Result<Report> {
    let field = FiniteField::new(q)?;
    if field.characteristic() == 2 {
        return Err(Error::EvenCharacteristic(q));
    }
    let conic = ConicBundle::new(&parse_ratfunc(&field, a)?, &parse_ratfunc(&field, b)?)?;
    let rows = check_artin(&conic)?;
    let mut report = Report::new("conic", json!({"q": q, "a": a, "b": b}));
    let mut out = Vec::new();
    for row in &rows {
        // 1 point when the two lines are conjugate, 2|κ|+1 when both are rational
        let points = match count_fiber_points(&conic, &row.place, 1) {
            Ok(p) => Some(p),
            Err(Error::SizeGuard(_)) => None,
            Err(e) => return Err(e),
        };
        let kappa = row.place.residue_field().order();
        let expected = if row.geometric.is_zero() { 2 * kappa + 1 } else { 1 };
        let points_ok = points.is_none_or(|p| p == expected);
        report.pass &= row.agree && points_ok;
        let pts = points.map_or("-".to_string(), |p| p.to_string());
        report.lines.push(format!(
            "{}: geometric={} residue={} points={} agree={}",
            row.place, row.geometric, row.residue, pts, row.agree && points_ok
        ));
        out.push(json!({
            "place": row.place.to_string(),
            "geometric": class_json(&row.geometric),
            "residue": class_json(&row.residue),
            "points": points,
            "agree": row.agree && points_ok,
        }));
    }
    if rows.is_empty() {
        report.lines.push("unramified everywhere".to_string());
    }
    report.results = json!({"rows": out});
    Ok(report)
}

fn random_poly(rng: &mut ChaCha8Rng, field: &FiniteField, max_deg: usize) -> Poly {
    let d = rng.gen_range(0..=max_deg);
    let coeffs = (0..=d).map(|_| field.element(rng.gen_range(0..field.order()))).collect();
    Poly::new(field, coeffs)
}

fn random_nonzero(rng: &mut ChaCha8Rng, field: &FiniteField, max_deg: usize) -> RatFunc {
    loop {
        let p = random_poly(rng, field, max_deg);
        if !p.is_zero() {
            return RatFunc::from_poly(p);
        }
    }
}

fn random_place(rng: &mut ChaCha8Rng, field: &FiniteField, max_deg: usize) -> Place {
    loop {
        let mut p = random_poly(rng, field, max_deg);
        if p.is_zero() || p.is_constant() {
            continue;
        }
        p = p.monic();
        if is_irreducible(&p) {
            return Place::finite(p).expect("monic irreducible");
        }
    }
}

fn cmd_selftest(cases: usize) -> crate::Result<Report> {
    let seed = match std::env::var("BRAUER_SEED") {
        Ok(s) => s.trim().parse::<u64>().map_err(|_| Error::Parse(format!("BRAUER_SEED `{s}` is not an integer")))?,
        Err(_) => 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let configs = [(5u64, 2u64), (5, 4), (13, 2), (13, 4)];
    let mut checks: Vec<(&str, usize)> = vec![("reciprocity", 0), ("route agreement", 0), ("steinberg", 0), ("conic", 0)];
    for i in 0..cases {
        let (q, n) = configs[i % configs.len()];
        let field = FiniteField::new(q)?;
        let kummer = Kummer::new(&field, n)?;

        let mut alpha = SymbolClass::zero(&kummer);
        for _ in 0..rng.gen_range(1..=3) {
            let (a, b) = (random_nonzero(&mut rng, &field, 3), random_nonzero(&mut rng, &field, 3));
            alpha.push(&a, &b, rng.gen_range(1..n as i64))?;
        }
        if reciprocity_report(&alpha)?.sum.is_zero() {
            checks[0].1 += 1;
        }

        let place = random_place(&mut rng, &field, 2);
        let u = loop {
            let u = random_nonzero(&mut rng, &field, 3);
            if place.valuation(&u)? == 0 {
                break u;
            }
        };
        let j = rng.gen_range(0..n as i64);
        let theta = SymbolClass::symbol(&kummer, &place.uniformizer().pow(j)?, &u)?;
        if residue_cocycle_route(j, &u, &place, &kummer)? == tame_residue(&theta, &place)? {
            checks[1].1 += 1;
        }

        let a = random_nonzero(&mut rng, &field, 3);
        let one_minus = RatFunc::from_int(&field, 1).sub(&a);
        let steinberg_ok = if one_minus.is_zero() {
            true
        } else {
            let st = SymbolClass::symbol(&kummer, &a, &one_minus)?;
            ramification_divisor(&st)?.is_empty()
        };
        if steinberg_ok {
            checks[2].1 += 1;
        }

        let conic = ConicBundle::new(&random_nonzero(&mut rng, &field, 4), &random_nonzero(&mut rng, &field, 4))?;
        let mut conic_ok = true;
        for row in check_artin(&conic)? {
            let kappa = row.place.residue_field().order();
            let expected = if row.geometric.is_zero() { 2 * kappa + 1 } else { 1 };
            conic_ok &= row.agree && count_fiber_points(&conic, &row.place, 1)? == expected;
        }
        if conic_ok {
            checks[3].1 += 1;
        }
    }
    let mut report = Report::new("selftest", json!({"cases": cases, "seed": seed}));
    let mut rows = Vec::new();
    for (name, passed) in &checks {
        let ok = *passed == cases;
        report.pass &= ok;
        report.lines.push(format!("{name}: {passed}/{cases} {}", verdict(ok)));
        rows.push(json!({"name": name, "passed": passed, "total": cases, "pass": ok}));
    }
    report.results = json!({"checks": rows});
    Ok(report)
}
