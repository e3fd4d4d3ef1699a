use std::fmt::Write;

use zariski_core::{
    evaluate_curve, flag_green, golden, green_curve, green_from_sigma, pl_family, threshold_psef,
    zariski_decompose, Class, ConeMode, DivisorClass, Error, ExactField, Lattice,
    RealDivisorialValuation, Scalar, Sigma,
};

use crate::problem::{LoadError, Problem};

pub struct Output {
    pub text: String,
    pub csv: Option<String>,
    /// Set when the report itself is the diagnosis of an engine error.
    pub failure: Option<Error>,
}

impl Output {
    fn text(text: String) -> Self {
        Output {
            text,
            csv: None,
            failure: None,
        }
    }

    fn with_csv(text: String, csv: String) -> Self {
        Output {
            text,
            csv: Some(csv),
            failure: None,
        }
    }
}

pub type CmdResult = Result<Output, LoadError>;

fn default_grid() -> Vec<Scalar> {
    [(0, 1), (1, 2), (1, 1), (2, 1)]
        .iter()
        .map(|&(n, d)| Scalar::from_ratio(n, d))
        .collect()
}

fn join(xs: &[Scalar]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn checked_lattice(problem: &Problem) -> Result<(Lattice, crate::problem::Names), LoadError> {
    let (lattice, names) = problem.lattice()?;
    let report = lattice.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidLattice(v.to_string()).into());
    }
    Ok((lattice, names))
}

pub fn validate(problem: &Problem) -> CmdResult {
    let (lattice, _) = problem.lattice()?;
    let report = lattice.validate();
    let mut out = String::new();
    writeln!(out, "rank = {}", lattice.rank()).unwrap();
    writeln!(out, "basis = {}", lattice.basis_labels().join(", ")).unwrap();
    let mode = match lattice.mode() {
        ConeMode::Curves => "curves",
        ConeMode::Quadric => "quadric",
    };
    writeln!(out, "mode = {mode}").unwrap();
    let s = &report.signature;
    writeln!(out, "signature = ({}, {}, {})", s.positive, s.negative, s.zero).unwrap();
    writeln!(out, "ample = {}", lattice.format_class(lattice.ample())).unwrap();
    for (labels, negdef) in &report.negative_definite_subsets {
        if *negdef {
            writeln!(out, "negative definite: {{{}}}", labels.join(", ")).unwrap();
        }
    }
    for v in &report.violations {
        writeln!(out, "violation: {v}").unwrap();
    }
    let failure = report
        .violations
        .first()
        .map(|v| Error::InvalidLattice(v.to_string()));
    writeln!(out, "status = {}", if failure.is_some() { "invalid" } else { "valid" }).unwrap();
    Ok(Output {
        failure,
        ..Output::text(out)
    })
}

pub fn decompose(problem: &Problem, class: &str) -> CmdResult {
    let (lattice, names) = checked_lattice(problem)?;
    let theta = problem.class(&names, class)?;
    let z = zariski_decompose(&lattice, &theta)?;
    let mut out = String::new();
    writeln!(out, "class = {}", lattice.format_class(&theta)).unwrap();
    writeln!(
        out,
        "P = {}, N = {}",
        lattice.format_class(&z.positive),
        lattice.format_divisor(&z.negative)
    )
    .unwrap();
    writeln!(out, "support = {{{}}}", z.support_labels(&lattice).join(", ")).unwrap();
    writeln!(out, "P^2 = {}", lattice.intersect(&z.positive, &z.positive)?).unwrap();
    writeln!(out, "certificate = verified").unwrap();
    Ok(Output::text(out))
}

pub fn threshold(problem: &Problem, omega: &str, direction: &str) -> CmdResult {
    let (lattice, names) = checked_lattice(problem)?;
    let omega = problem.class(&names, omega)?;
    let d = problem.class(&names, direction)?;
    let lambda = threshold_psef(&lattice, &omega, &d)?;
    let mut out = String::new();
    writeln!(out, "omega = {}", lattice.format_class(&omega)).unwrap();
    writeln!(out, "D = {}", lattice.format_class(&d)).unwrap();
    writeln!(out, "lambda_psef = {lambda}").unwrap();
    writeln!(out, "rational = {}", lambda.is_rational()).unwrap();
    Ok(Output::text(out))
}

pub fn family(problem: &Problem, omega: &str, direction: &str) -> CmdResult {
    let (lattice, names) = checked_lattice(problem)?;
    let omega = problem.class(&names, omega)?;
    let d = problem.class(&names, direction)?;
    let fam = pl_family(&lattice, &omega, &d)?;
    let mut out = String::new();
    writeln!(out, "omega = {}", lattice.format_class(&omega)).unwrap();
    writeln!(out, "D = {}", lattice.format_class(&d)).unwrap();
    writeln!(out, "lambda_psef = {}", fam.lambda_psef).unwrap();
    writeln!(out, "breakpoints = {}", join(&fam.breakpoints())).unwrap();
    for s in &fam.segments {
        let support: Vec<&str> = s.support.iter().map(|&i| lattice.prime_label(i)).collect();
        writeln!(
            out,
            "[{}, {}]: support = {{{}}}, N = {}, slope = {}",
            s.start,
            s.end,
            support.join(", "),
            lattice.format_divisor(&s.value),
            lattice.format_divisor(&s.slope)
        )
        .unwrap();
    }
    Ok(Output::with_csv(out, fam.to_csv(&lattice)))
}

fn sigma_text(sigma: &Sigma) -> String {
    sigma
        .valuations()
        .iter()
        .map(|v| format!("{}*ord_{}", v.scale, v.divisor))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn green(problem: &Problem, omega: Option<&str>, grid: Option<&str>) -> CmdResult {
    let (lattice, names) = checked_lattice(problem)?;
    let omega = problem.omega(&lattice, &names, omega)?;
    let sigma = problem.sigma(&lattice)?;
    let g = green_from_sigma(&lattice, &omega, &sigma)?;
    let mut out = String::new();
    writeln!(out, "omega = {}", lattice.format_class(&omega)).unwrap();
    writeln!(out, "sigma = {{{}}}", sigma_text(&sigma)).unwrap();
    writeln!(out, "D = {}", lattice.format_divisor(sigma.divisor())).unwrap();
    writeln!(out, "tau = {}", g.tau()).unwrap();
    match g.is_rational_pl() {
        Ok(r) => writeln!(out, "rational_PL = {r}").unwrap(),
        Err(e) => writeln!(out, "rational_PL = unavailable ({e})").unwrap(),
    }
    for (i, (lambda, b)) in g.breakpoints().iter().zip(g.divisors()).enumerate() {
        writeln!(out, "B_{i}: lambda = {lambda}, B = {}", lattice.format_divisor(b)).unwrap();
    }
    writeln!(out, "center = {{{}}}", g.center_divisorial().join(", ")).unwrap();
    let grid = match grid {
        Some(src) => problem.grid(src)?,
        None => default_grid(),
    };
    let csv = g.profile_csv(g.prime_labels(), &grid)?;
    Ok(Output::with_csv(out, csv))
}

pub fn eval(problem: &Problem, omega: Option<&str>, divisor: &str, t: &str) -> CmdResult {
    let (lattice, names) = checked_lattice(problem)?;
    let omega = problem.omega(&lattice, &names, omega)?;
    let sigma = problem.sigma(&lattice)?;
    let g = green_from_sigma(&lattice, &omega, &sigma)?;
    let t = problem.scalar(t)?;
    Ok(Output::text(format!("{}\n", g.evaluate_at(divisor, &t)?)))
}

pub fn flag(problem: &Problem, grid: Option<&str>) -> CmdResult {
    let cfg = problem.flag()?;
    let g = flag_green(&cfg)?;
    let surface = cfg.surface();
    let mut out = String::new();
    writeln!(out, "omega|_S = {}", surface.format_class(cfg.omega())).unwrap();
    writeln!(out, "Z = {}", surface.format_class(cfg.z())).unwrap();
    writeln!(out, "S|_S = {}", surface.format_class(cfg.s_restr())).unwrap();
    writeln!(out, "lambda_nef = {}", g.lambda_s_nef()).unwrap();
    writeln!(out, "rational_PL = {}", g.is_rational_pl()).unwrap();
    writeln!(out, "tau = {}", g.tau()).unwrap();
    let grid = match grid {
        Some(src) => problem.grid(src)?,
        None => default_grid(),
    };
    let mut csv = String::from("valuation,t,vb_z,vb_s,phi\n");
    // t ord_Z vanishes to order t along both ideals, t ord_S only along b_S
    for (name, z_factor) in [("ord_Z", true), ("ord_S", false)] {
        for t in &grid {
            let vb_z = if z_factor { t.clone() } else { Scalar::from(0) };
            let phi = g.evaluate(&vb_z, t)?;
            writeln!(out, "phi({t}*{name}) = {phi}").unwrap();
            writeln!(csv, "{name},{t},{vb_z},{t},{phi}").unwrap();
        }
    }
    Ok(Output::with_csv(out, csv))
}

pub fn curve(problem: &Problem, grid: Option<&str>) -> CmdResult {
    let cs = problem.curve()?;
    let g = green_curve(&cs);
    let mut out = String::new();
    writeln!(out, "degree = {}", cs.degree()).unwrap();
    let pts: Vec<String> = cs
        .points()
        .iter()
        .map(|(l, t)| format!("{t}*ord_{l}"))
        .collect();
    writeln!(out, "sigma = {{{}}}", pts.join(", ")).unwrap();
    writeln!(out, "A = {}", cs.a()).unwrap();
    writeln!(out, "tau = {}", g.tau()).unwrap();
    writeln!(out, "rational_PL = {}", g.is_rational_pl()).unwrap();
    let grid = match grid {
        Some(src) => problem.grid(src)?,
        None => default_grid(),
    };
    let mut csv = String::from("point,t,phi\n");
    for (label, _) in cs.points() {
        for t in &grid {
            let phi = evaluate_curve(&cs, label, t)?;
            writeln!(out, "phi({t}*ord_{label}) = {phi}").unwrap();
            writeln!(csv, "{label},{t},{phi}").unwrap();
        }
    }
    Ok(Output::with_csv(out, csv))
}

type Check = (&'static str, fn() -> Result<bool, Error>);

fn q(n: i64) -> Scalar {
    Scalar::from(n)
}

fn root() -> Scalar {
    q(3) - Scalar::sqrt_of(7u32)
}

fn check_bl_decomposition() -> Result<bool, Error> {
    let bl = golden::blowup_plane::<Scalar>();
    let z = zariski_decompose(&bl, &Class::from_ints(&[1, 1]))?;
    Ok(bl.format_class(&z.positive) == "1*H" && bl.format_divisor(&z.negative) == "1*E")
}

fn check_bl_green() -> Result<bool, Error> {
    let bl = golden::blowup_plane::<Scalar>();
    let sigma = Sigma::new(&bl, vec![RealDivisorialValuation::ord("C")])?;
    let g = green_from_sigma(&bl, &DivisorClass::from_ints(&[2, -1]), &sigma)?;
    Ok(g.breakpoints() == [q(0), q(1), q(2)]
        && g.evaluate_at("C", &q(1))? == q(0)
        && g.evaluate_at("C", &Scalar::from_ratio(1, 2))? == q(1)
        && g.evaluate_at("E", &q(1))? == q(1))
}

fn check_abelian() -> Result<bool, Error> {
    let ab = golden::abelian_surface::<Scalar>();
    let sigma = Sigma::new(&ab, vec![RealDivisorialValuation::ord("E")])?;
    let g = green_from_sigma(&ab, &DivisorClass::from_ints(&[1, 0]), &sigma)?;
    Ok(*g.tau() == root() && !g.is_rational_pl()? && g.breakpoints().len() == 2)
}

fn check_cutkosky() -> Result<bool, Error> {
    let g = flag_green(&golden::cutkosky_flag::<Scalar>())?;
    Ok(*g.lambda_s_nef() == root()
        && g.tau() == q(1)
        && g.evaluate(&q(1), &q(1))? == q(0)
        && g.evaluate(&q(0), &q(1))? == root()
        && !g.is_rational_pl())
}

fn check_curves() -> Result<bool, Error> {
    let one = golden::curve_degree_one::<Scalar>();
    let three = golden::curve_degree_three::<Scalar>();
    let half = Scalar::from_ratio(1, 2);
    Ok(*one.a() == q(1)
        && evaluate_curve(&one, "p", &q(1))? == q(0)
        && evaluate_curve(&one, "p", &half)? == half
        && *three.a() == q(1)
        && evaluate_curve(&three, "q", &Scalar::from_ratio(1, 4))? == half)
}

pub fn selftest() -> (String, bool) {
    let checks: [Check; 5] = [
        ("blowup decomposition", check_bl_decomposition),
        ("blowup chamber crossing", check_bl_green),
        ("abelian surface", check_abelian),
        ("cutkosky flag", check_cutkosky),
        ("curve case", check_curves),
    ];
    let mut out = String::new();
    let mut all = true;
    for (name, check) in checks {
        let verdict = match check() {
            Ok(true) => "PASS".to_string(),
            Ok(false) => "FAIL".to_string(),
            Err(e) => format!("FAIL (E{}: {e})", e.code()),
        };
        all &= verdict == "PASS";
        writeln!(out, "{verdict} {name}").unwrap();
    }
    writeln!(out, "selftest {}", if all { "passed" } else { "failed" }).unwrap();
    (out, all)
}
