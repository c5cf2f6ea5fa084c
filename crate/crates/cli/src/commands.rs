use std::fs;
use std::io::Write;
use std::sync::Arc;

use serde::Serialize;
use zsl_core::ellcurve::{
    lambda_total, lambda_total_symmetry, motive_factors, real_axis_hypothesis, root_number, EllipticCurveQ,
    EllipticL, LambdaTotal, MotiveFactor,
};
use zsl_core::ffield::{base_change, frobenius_eigenvalues, function_field_catalog, CurveOverFq, FfReport, ZetaPolynomial};
use zsl_core::mellin::TestFunction;
use zsl_core::pairing::{
    funceq_identity_residual, gram_matrix, hermitian_eigenvalues, numeric_rank, pair, singular_values, spectralize,
    suspend, suspend_exact, suspension_twist_check, Form, PairingReport, SuspendedSpectrum,
};
use zsl_core::report::{ser_round12, ComplexJson};
use zsl_core::surd::QuadSurd;
use zsl_core::zerofind::{scan_zero_count, scan_zeros, CompletedL, FamilyTag, RiemannXi, ZeroCatalog};
use zsl_core::Complex;

use crate::args::{CatalogSource, Cli, Command, EcArgs, FamilyArgs, FfArgs, Format, GramArgs, PairArgs, SuspendArgs, VerifyArgs};
use crate::complex_arg::{parse_eigenvalue, Eigenvalue};
use crate::error::CliError;
use crate::verify;

type Result<T> = std::result::Result<T, CliError>;

/// Runs the parsed command; the returned code is 0, or 1 when a reported
/// self-check failed.
pub fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Zeros(a) => zeros(cli, a, out),
        Command::Pair(a) => pair_cmd(cli, a, out),
        Command::Gram(a) => gram(cli, a, out),
        Command::Ff(a) => ff(cli, a, out),
        Command::Ec(a) => ec(cli, a, out),
        Command::Suspend(a) => suspend_cmd(cli, a, out),
        Command::Verify(a) => verify_cmd(cli, a, out),
    }
}

fn emit(cli: &Cli, text: &str, out: &mut dyn Write) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Write { path: path.clone(), source }),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn json_only(cli: &Cli, command: &str) -> Result<()> {
    if cli.format == Format::Csv {
        return Err(CliError::usage("csv", format!("`{command}` writes JSON only")));
    }
    Ok(())
}

fn write_csv<R: IntoIterator<Item = Vec<String>>>(header: &[&str], rows: R) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(std::io::Error::other(e));
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

enum Family {
    Riemann,
    Elliptic(EllipticCurveQ),
    Curve(CurveOverFq),
    Numerator(ZetaPolynomial),
}

fn parse_family(text: &str) -> Result<Family> {
    let t = text.trim();
    if t == "riemann" {
        return Ok(Family::Riemann);
    }
    if t.starts_with("ell:") || t.starts_with("counts:") {
        return Ok(Family::Curve(t.parse()?));
    }
    if t.starts_with("ec:") {
        return Ok(Family::Elliptic(t.parse()?));
    }
    if t.starts_with("elliptic(") || t.starts_with("function-field(") {
        return match t.parse::<FamilyTag>()? {
            FamilyTag::Riemann => Ok(Family::Riemann),
            FamilyTag::Elliptic(id) => Ok(Family::Elliptic(id.parse()?)),
            FamilyTag::FunctionField { q, numerator } => Ok(Family::Numerator(ZetaPolynomial::new(
                q,
                numerator.into_iter().map(i128::from).collect(),
            )?)),
        };
    }
    t.parse::<EllipticCurveQ>().map(Family::Elliptic).map_err(|_| {
        CliError::usage(
            t,
            "expected riemann, an elliptic curve (11a1, 37a1, ec:...) or a curve over a finite field (ell:..., counts:...)",
        )
    })
}

fn scan(l: &dyn CompletedL, args: &FamilyArgs, step: f64) -> Result<ZeroCatalog> {
    Ok(match (args.count, args.t_max) {
        (Some(n), _) => scan_zero_count(l, n, step)?,
        (None, Some(t)) => scan_zeros(l, t, step)?,
        (None, None) => unreachable!("checked before scanning"),
    })
}

fn build_catalog(args: &FamilyArgs, step: f64) -> Result<ZeroCatalog> {
    let family = parse_family(&args.family)?;
    let analytic = matches!(family, Family::Riemann | Family::Elliptic(_));
    if analytic && args.count.is_none() && args.t_max.is_none() {
        return Err(CliError::usage(&args.family, "give --count or --t-max"));
    }
    if !analytic && args.t_max.is_some() {
        return Err(CliError::usage("--t-max", "function-field catalogs always cover one period"));
    }
    let p = match family {
        Family::Riemann => return scan(&RiemannXi, args, step),
        Family::Elliptic(curve) => return scan(&EllipticL::new(curve)?, args, step),
        Family::Curve(curve) => curve.zeta_numerator()?,
        Family::Numerator(p) => p,
    };
    let catalog = function_field_catalog(&p)?;
    Ok(match args.count {
        Some(n) => catalog.truncated(n),
        None => catalog,
    })
}

fn load_catalog(source: &CatalogSource, step: f64) -> Result<ZeroCatalog> {
    let Some(path) = &source.catalog else {
        return build_catalog(&source.family, step);
    };
    let text = fs::read_to_string(path).map_err(|e| CliError::Read { path: path.clone(), source: e })?;
    ZeroCatalog::from_json(&text).map_err(|e| CliError::Document { path: path.clone(), source: e })
}

/// Identifies a catalog by content, so a report built from a file matches
/// the one built in memory.
fn catalog_ref(catalog: &ZeroCatalog) -> String {
    format!("{}/{}", catalog.family, catalog.zeros.len())
}

fn zeros(cli: &Cli, args: &FamilyArgs, out: &mut dyn Write) -> Result<i32> {
    let catalog = build_catalog(args, cli.step)?;
    let text = match cli.format {
        Format::Json => {
            let mut text = catalog.to_json();
            text.push('\n');
            text
        }
        Format::Csv => {
            let critical = catalog
                .zeros
                .iter()
                .map(|z| vec!["critical".to_string(), z.gamma.to_string(), z.mult.to_string()]);
            let real = catalog
                .real_zeros
                .iter()
                .map(|z| vec!["real".to_string(), z.sigma.to_string(), z.mult.to_string()]);
            write_csv(&["kind", "location", "mult"], critical.chain(real))?
        }
    };
    emit(cli, &text, out)?;
    Ok(0)
}

#[derive(Serialize)]
struct SelfCheck {
    name: &'static str,
    #[serde(serialize_with = "ser_round12")]
    residual: f64,
    passed: bool,
}

#[derive(Serialize)]
struct PairOutput {
    #[serde(flatten)]
    report: PairingReport,
    self_checks: Vec<SelfCheck>,
}

fn parse_functions(exprs: &[String]) -> Result<Vec<TestFunction>> {
    exprs.iter().map(|e| Ok(e.parse::<TestFunction>()?)).collect()
}

fn pair_cmd(cli: &Cli, args: &PairArgs, out: &mut dyn Write) -> Result<i32> {
    json_only(cli, "pair")?;
    if args.functions.len() != 2 {
        return Err(CliError::usage(
            format!("--fn x{}", args.functions.len()),
            "`pair` takes exactly two --fn expressions",
        ));
    }
    let fs = parse_functions(&args.functions)?;
    let catalog = Arc::new(load_catalog(&args.source, cli.step)?);
    let u = spectralize(&fs[0], catalog.clone())?;
    let v = spectralize(&fs[1], catalog.clone())?;
    let forward = pair(args.form, &u, &v)?;
    let backward = pair(args.form, &v, &u)?.value;

    // The symmetry of each form holds term by term, so it is checked exactly.
    let (name, residual) = match args.form {
        Form::Antisym => ("antisymmetry", (forward.value + backward).norm()),
        Form::Sym => ("symmetry", (forward.value - backward).norm()),
        Form::Hermitian => ("hermitian-symmetry", (forward.value - backward.conj()).norm()),
    };
    let scale = u.norm() * v.norm();
    let trace = if scale > 0.0 { funceq_identity_residual(&u, &v)? / scale } else { 0.0 };
    let self_checks = vec![
        SelfCheck { name, residual, passed: residual == 0.0 },
        SelfCheck { name: "functional-equation-trace", residual: trace, passed: trace <= cli.tol },
    ];
    let passed = self_checks.iter().all(|c| c.passed);
    let report = PairOutput {
        report: PairingReport::new(args.form, catalog.weight, &catalog_ref(&catalog), &forward),
        self_checks,
    };
    emit(cli, &to_json(&report)?, out)?;
    Ok(if passed { 0 } else { 1 })
}

#[derive(Serialize)]
struct GramOutput {
    form: &'static str,
    catalog_ref: String,
    labels: Vec<String>,
    entries: Vec<Vec<ComplexJson>>,
    #[serde(serialize_with = "ser_round12")]
    truncation_bound: f64,
    singular_values: Vec<Rounded>,
    rank: usize,
    rank_threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigenvalues: Option<Vec<Rounded>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    psd: Option<bool>,
}

#[derive(Serialize)]
#[serde(transparent)]
struct Rounded(#[serde(serialize_with = "ser_round12")] f64);

fn gram(cli: &Cli, args: &GramArgs, out: &mut dyn Write) -> Result<i32> {
    let family = if args.functions.is_empty() {
        TestFunction::default_family()
    } else {
        parse_functions(&args.functions)?
    };
    let catalog = Arc::new(load_catalog(&args.source, cli.step)?);
    let g = gram_matrix(&family, args.form, catalog.clone())?;
    if cli.format == Format::Csv {
        emit(cli, &g.to_csv()?, out)?;
        return Ok(0);
    }
    let sv = singular_values(&g.entries)?;
    let rank = numeric_rank(&g.entries, args.rank_threshold)?;
    let (eigenvalues, psd) = if args.form == Form::Hermitian {
        let eig = hermitian_eigenvalues(&g.entries)?;
        let top = eig.iter().fold(0.0f64, |m, e| m.max(e.abs()));
        let psd = eig[0] >= -cli.tol * top;
        (Some(eig.into_iter().map(Rounded).collect()), Some(psd))
    } else {
        (None, None)
    };
    let report = GramOutput {
        form: args.form.name(),
        catalog_ref: catalog_ref(&catalog),
        labels: g.labels.clone(),
        entries: g.entries.iter().map(|row| row.iter().map(|&z| z.into()).collect()).collect(),
        truncation_bound: g.truncation_bound,
        singular_values: sv.into_iter().map(Rounded).collect(),
        rank,
        rank_threshold: args.rank_threshold,
        eigenvalues,
        psd,
    };
    emit(cli, &to_json(&report)?, out)?;
    Ok(0)
}

fn ff(cli: &Cli, args: &FfArgs, out: &mut dyn Write) -> Result<i32> {
    json_only(cli, "ff")?;
    let curve: CurveOverFq = args.curve.parse()?;
    if args.base_change == 0 {
        return Err(CliError::usage("0", "--base-change must be at least 1"));
    }
    let mut p = curve.zeta_numerator()?;
    if args.base_change > 1 {
        p = base_change(&p, args.base_change)?;
    }
    let mut text = FfReport::new(&p)?.to_json();
    text.push('\n');
    emit(cli, &text, out)?;
    Ok(0)
}

#[derive(Serialize)]
struct RootNumberJson {
    epsilon: i8,
    #[serde(serialize_with = "ser_round12")]
    residual_plus: f64,
    #[serde(serialize_with = "ser_round12")]
    residual_minus: f64,
}

#[derive(Serialize)]
struct FunctionalEquationJson {
    points: usize,
    #[serde(serialize_with = "ser_round12")]
    max_residual: f64,
    passed: bool,
}

#[derive(Serialize)]
struct RealZeroJson {
    #[serde(serialize_with = "ser_round12")]
    sigma: f64,
    mult: u32,
    parity_forced: bool,
}

#[derive(Serialize)]
struct RealAxisJson {
    satisfied: bool,
    real_zeros: Vec<RealZeroJson>,
}

#[derive(Serialize)]
struct EcOutput {
    label: String,
    conductor: u64,
    root_number: RootNumberJson,
    central_value: ComplexJson,
    functional_equation: FunctionalEquationJson,
    real_axis: RealAxisJson,
    catalog: ZeroCatalog,
    lambda_total: LambdaTotal,
    #[serde(serialize_with = "ser_round12")]
    lambda_total_symmetry: f64,
    motives: Vec<MotiveFactor>,
}

/// Points s = σ + it with σ ∈ [0.3, 1.63] and |t| ≤ 10 where the
/// functional equation is checked.
pub(crate) fn functional_equation_grid() -> Vec<Complex> {
    (0..20)
        .map(|i| Complex::new(0.3 + 0.07 * f64::from(i), -10.0 + 20.0 * f64::from(i) / 19.0))
        .collect()
}

fn ec(cli: &Cli, args: &EcArgs, out: &mut dyn Write) -> Result<i32> {
    json_only(cli, "ec")?;
    let curve: EllipticCurveQ = args.curve.parse()?;
    let l = EllipticL::new(curve)?;
    let rn = root_number(&l)?;
    let grid = functional_equation_grid();
    let mut max_residual: f64 = 0.0;
    for &s in &grid {
        max_residual = max_residual.max(l.functional_equation_residual(s)?);
    }
    let real_axis = real_axis_hypothesis(&l)?;
    let catalog = scan_zeros(&l, args.t_max, cli.step)?;
    let passed = max_residual <= cli.tol;
    let report = EcOutput {
        label: l.label().to_string(),
        conductor: l.conductor(),
        root_number: RootNumberJson {
            epsilon: rn.epsilon,
            residual_plus: rn.residual_plus,
            residual_minus: rn.residual_minus,
        },
        central_value: l.lambda(Complex::new(1.0, 0.0))?.into(),
        functional_equation: FunctionalEquationJson { points: grid.len(), max_residual, passed },
        real_axis: RealAxisJson {
            satisfied: real_axis.satisfied,
            real_zeros: real_axis
                .real_zeros
                .iter()
                .map(|z| RealZeroJson { sigma: z.sigma, mult: z.mult, parity_forced: z.parity_forced })
                .collect(),
        },
        catalog,
        lambda_total: lambda_total(&l, args.at)?,
        lambda_total_symmetry: lambda_total_symmetry(&l, args.at)?,
        motives: motive_factors(&l),
    };
    emit(cli, &to_json(&report)?, out)?;
    Ok(if passed { 0 } else { 1 })
}

#[derive(Serialize)]
struct SuspendedJson {
    s0: ComplexJson,
    alpha: ComplexJson,
    mult: u32,
    real: bool,
    exact: Option<String>,
}

#[derive(Serialize)]
struct TwistJson {
    m: i32,
    #[serde(serialize_with = "ser_round12")]
    eigen_deviation: f64,
    #[serde(serialize_with = "ser_round12")]
    pairing_deviation: f64,
    exact: Option<bool>,
    passed: bool,
}

#[derive(Serialize)]
struct SuspendOutput {
    q: u64,
    #[serde(serialize_with = "ser_round12")]
    period: f64,
    entries: Vec<SuspendedJson>,
    twists: Vec<TwistJson>,
}

fn suspended_spectrum(args: &SuspendArgs) -> Result<SuspendedSpectrum> {
    if let Some(text) = &args.zeta {
        let coeffs = text
            .split(',')
            .map(|c| c.trim().parse::<i128>().map_err(|_| CliError::usage(c.trim(), "zeta coefficients are integers")))
            .collect::<Result<Vec<_>>>()?;
        let spectrum = frobenius_eigenvalues(&ZetaPolynomial::new(args.q, coeffs)?)?;
        return Ok(match spectrum.exact() {
            Some(exact) => suspend_exact(args.q, &exact)?,
            None => suspend(args.q, &spectrum.numeric())?,
        });
    }
    if args.eigenvalues.is_empty() {
        return Err(CliError::usage("--eigenvalue", "give --eigenvalue or --zeta"));
    }
    let parsed = args
        .eigenvalues
        .iter()
        .map(|e| parse_eigenvalue(e).map_err(|m| CliError::usage(e, m)))
        .collect::<Result<Vec<_>>>()?;
    let integers: Option<Vec<(QuadSurd, u32)>> = parsed
        .iter()
        .map(|&(v, m)| match v {
            Eigenvalue::Integer(n) => Some((QuadSurd::integer(n), m)),
            Eigenvalue::Complex(_) => None,
        })
        .collect();
    if let Some(exact) = integers {
        return Ok(suspend_exact(args.q, &exact)?);
    }
    let numeric: Vec<(Complex, u32)> = parsed
        .iter()
        .map(|&(v, m)| match v {
            Eigenvalue::Integer(n) => (Complex::new(n as f64, 0.0), m),
            Eigenvalue::Complex(z) => (z, m),
        })
        .collect();
    Ok(suspend(args.q, &numeric)?)
}

fn suspend_cmd(cli: &Cli, args: &SuspendArgs, out: &mut dyn Write) -> Result<i32> {
    let s = suspended_spectrum(args)?;
    if cli.format == Format::Csv {
        let rows = s.entries.iter().map(|e| {
            vec![
                e.s0.re.to_string(),
                e.s0.im.to_string(),
                e.alpha.re.to_string(),
                e.alpha.im.to_string(),
                e.mult.to_string(),
                e.is_real().to_string(),
            ]
        });
        emit(cli, &write_csv(&["s0_re", "s0_im", "alpha_re", "alpha_im", "mult", "real"], rows)?, out)?;
        return Ok(0);
    }
    let twists = args
        .twist
        .iter()
        .map(|&m| {
            let v = suspension_twist_check(&s, m)?;
            Ok(TwistJson {
                m,
                eigen_deviation: v.eigen_deviation,
                pairing_deviation: v.pairing_deviation,
                exact: v.exact,
                passed: v.passed,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = twists.iter().all(|t| t.passed);
    let report = SuspendOutput {
        q: args.q,
        period: s.period,
        entries: s
            .entries
            .iter()
            .map(|e| SuspendedJson {
                s0: e.s0.into(),
                alpha: e.alpha.into(),
                mult: e.mult,
                real: e.is_real(),
                exact: e.exact.map(|x| x.to_string()),
            })
            .collect(),
        twists,
    };
    emit(cli, &to_json(&report)?, out)?;
    Ok(if passed { 0 } else { 1 })
}

fn verify_cmd(cli: &Cli, args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let mut ids: Vec<u8> = if args.only.is_empty() { (1..=10).collect() } else { args.only.clone() };
    ids.sort_unstable();
    ids.dedup();
    let mut buffer = Vec::new();
    let sink: &mut dyn Write = if cli.out.is_some() { &mut buffer } else { out };
    let mut failed = 0;
    for &id in &ids {
        let outcome = verify::run(id);
        failed += usize::from(!outcome.passed);
        writeln!(sink, "{outcome}")?;
        sink.flush()?;
    }
    writeln!(sink, "{} of {} criteria passed", ids.len() - failed, ids.len())?;
    if let Some(path) = &cli.out {
        fs::write(path, &buffer).map_err(|source| CliError::Write { path: path.clone(), source })?;
    }
    Ok(if failed == 0 { 0 } else { 1 })
}
