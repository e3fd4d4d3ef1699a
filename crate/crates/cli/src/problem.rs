//! Problem files: TOML documents describing a lattice, named classes, a
//! valuation set, a flag, and curve data.

use std::collections::BTreeMap;

use serde::Deserialize;
use zariski_core::{
    Class, ConeOracle, Curve, CurveData, Error, ExactField, Flag, Lattice, RealDivisorialValuation, Scalar,
    Sigma,
};

use crate::expr::{self, Env};

#[derive(Debug)]
pub enum LoadError {
    Parse(String),
    Engine(Error),
}

impl From<Error> for LoadError {
    fn from(e: Error) -> Self {
        LoadError::Engine(e)
    }
}

/// A scalar or class given either as a TOML integer, an expression string,
/// or (for classes) a coefficient vector.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
    Vector(Vec<Entry>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub sqrt: Option<u64>,
    pub lattice: Option<LatticeSpec>,
    #[serde(default)]
    pub classes: BTreeMap<String, Entry>,
    #[serde(default)]
    pub sigma: Vec<SigmaEntry>,
    pub flag: Option<FlagSpec>,
    pub curve: Option<CurveSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub basis: Vec<String>,
    pub gram: Vec<Vec<Entry>>,
    pub cone: ConeSpec,
    pub ample: Entry,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
pub enum ConeMode {
    Curves,
    Quadric,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeSpec {
    pub mode: ConeMode,
    #[serde(default)]
    pub generators: Vec<Entry>,
    #[serde(default)]
    pub curves: Vec<CurveEntry>,
    pub polarization: Option<Entry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveEntry {
    pub label: String,
    pub class: Entry,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaEntry {
    pub divisor: String,
    pub t: Entry,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagSpec {
    pub lattice: LatticeSpec,
    pub omega_restr: Entry,
    pub z_restr: Entry,
    pub s_restr: Option<Entry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub degree: Entry,
    pub points: Vec<PointEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointEntry {
    pub label: String,
    pub t: Entry,
}

/// Names visible to expressions: named classes first, then curve labels,
/// then basis labels.
#[derive(Debug, Clone, Default)]
pub struct Names {
    rank: usize,
    entries: Vec<(String, Class)>,
}

impl Names {
    fn basis(labels: &[String]) -> Self {
        let rank = labels.len();
        Names {
            rank,
            entries: labels
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), Class::unit(rank, i)))
                .collect(),
        }
    }

    fn shadow(&mut self, name: &str, class: Class) {
        self.entries.insert(0, (name.to_string(), class));
    }

    fn get(&self, name: &str) -> Option<Class> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c.clone())
    }
}

fn with_env<T>(names: &Names, radicand: Option<u64>, f: impl FnOnce(&Env) -> T) -> T {
    let lookup = |n: &str| names.get(n);
    let env = Env {
        rank: names.rank,
        lookup: &lookup,
        radicand,
    };
    f(&env)
}

fn parse_scalar(entry: &Entry, radicand: Option<u64>, what: &str) -> Result<Scalar, LoadError> {
    match entry {
        Entry::Int(n) => Ok(Scalar::from(*n)),
        Entry::Text(s) => with_env(&Names::default(), radicand, |env| expr::scalar(s, env))
            .map_err(|e| LoadError::Parse(format!("{what}: {e}"))),
        Entry::Vector(_) => Err(LoadError::Parse(format!("{what}: expected a scalar"))),
    }
}

fn parse_class(
    entry: &Entry,
    names: &Names,
    radicand: Option<u64>,
    what: &str,
) -> Result<Class, LoadError> {
    match entry {
        Entry::Vector(items) => {
            if items.len() != names.rank {
                return Err(LoadError::Parse(format!(
                    "{what}: expected {} coefficients, found {}",
                    names.rank,
                    items.len()
                )));
            }
            let coeffs = items
                .iter()
                .map(|e| parse_scalar(e, radicand, what))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Class::new(coeffs))
        }
        Entry::Text(s) => with_env(names, radicand, |env| expr::class(s, env))
            .map_err(|e| LoadError::Parse(format!("{what}: {e}"))),
        Entry::Int(0) => Ok(Class::zero(names.rank)),
        Entry::Int(_) => Err(LoadError::Parse(format!("{what}: expected a class"))),
    }
}

fn build_lattice(spec: &LatticeSpec, radicand: Option<u64>) -> Result<(Lattice, Names), LoadError> {
    let mut names = Names::basis(&spec.basis);
    let gram = spec
        .gram
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| parse_scalar(e, radicand, "gram"))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let cone = match spec.cone.mode {
        ConeMode::Curves => {
            if spec.cone.polarization.is_some() {
                return Err(LoadError::Parse("curve mode takes no polarization".into()));
            }
            let mut curves = Vec::new();
            for c in &spec.cone.curves {
                let class = parse_class(&c.class, &names, radicand, &format!("curve {}", c.label))?;
                curves.push(Curve::new(c.label.clone(), class));
            }
            for c in &curves {
                names.shadow(&c.label, c.class.clone());
            }
            let generators = spec
                .cone
                .generators
                .iter()
                .map(|g| parse_class(g, &names, radicand, "generator"))
                .collect::<Result<Vec<_>, _>>()?;
            ConeOracle::Curves { generators, curves }
        }
        ConeMode::Quadric => {
            if !spec.cone.curves.is_empty() || !spec.cone.generators.is_empty() {
                return Err(LoadError::Parse(
                    "quadric mode takes only a polarization".into(),
                ));
            }
            let h = spec
                .cone
                .polarization
                .as_ref()
                .ok_or_else(|| LoadError::Parse("quadric mode requires a polarization".into()))?;
            ConeOracle::Quadric {
                polarization: parse_class(h, &names, radicand, "polarization")?,
            }
        }
    };
    let ample = parse_class(&spec.ample, &names, radicand, "ample")?;
    let lattice = Lattice::new(spec.basis.clone(), gram, cone, ample)?;
    Ok((lattice, names))
}

/// A loaded problem; sections are built lazily by the commands that need
/// them, so unrelated sections may be absent.
pub struct Problem {
    file: ProblemFile,
}

impl Problem {
    pub fn parse(text: &str) -> Result<Self, LoadError> {
        let file: ProblemFile = toml::from_str(text).map_err(|e| LoadError::Parse(e.to_string()))?;
        if let Some(d) = file.sqrt {
            if Scalar::sqrt_of(d).is_rational() {
                return Err(LoadError::Parse(format!("sqrt = {d} is a perfect square")));
            }
        }
        Ok(Problem { file })
    }

    /// The main lattice together with the names visible in expressions.
    pub fn lattice(&self) -> Result<(Lattice, Names), LoadError> {
        let spec = self
            .file
            .lattice
            .as_ref()
            .ok_or_else(|| LoadError::Parse("missing [lattice] section".into()))?;
        let (lattice, mut names) = build_lattice(spec, self.file.sqrt)?;
        let base = names.clone();
        for (name, entry) in &self.file.classes {
            let class = parse_class(entry, &base, self.file.sqrt, &format!("class {name}"))?;
            names.shadow(name, class);
        }
        Ok((lattice, names))
    }

    pub fn class(&self, names: &Names, src: &str) -> Result<Class, LoadError> {
        parse_class(&Entry::Text(src.to_string()), names, self.file.sqrt, src)
    }

    pub fn scalar(&self, src: &str) -> Result<Scalar, LoadError> {
        parse_scalar(&Entry::Text(src.to_string()), self.file.sqrt, src)
    }

    pub fn grid(&self, src: &str) -> Result<Vec<Scalar>, LoadError> {
        src.split(',').map(|s| self.scalar(s.trim())).collect()
    }

    /// `omega` for Green's function commands: an explicit expression, else
    /// the class named `omega`, else the declared ample class.
    pub fn omega(&self, lattice: &Lattice, names: &Names, explicit: Option<&str>) -> Result<Class, LoadError> {
        match explicit {
            Some(src) => self.class(names, src),
            None => Ok(names
                .get("omega")
                .filter(|_| self.file.classes.contains_key("omega"))
                .unwrap_or_else(|| lattice.ample().clone())),
        }
    }

    pub fn sigma(&self, lattice: &Lattice) -> Result<Sigma, LoadError> {
        if self.file.sigma.is_empty() {
            return Err(LoadError::Parse("missing [[sigma]] entries".into()));
        }
        let mut vals = Vec::new();
        for s in &self.file.sigma {
            let t = parse_scalar(&s.t, self.file.sqrt, &format!("sigma {}", s.divisor))?;
            vals.push(RealDivisorialValuation::new(s.divisor.clone(), t)?);
        }
        Ok(Sigma::new(lattice, vals)?)
    }

    pub fn flag(&self) -> Result<Flag, LoadError> {
        let spec = self
            .file
            .flag
            .as_ref()
            .ok_or_else(|| LoadError::Parse("missing [flag] section".into()))?;
        let radicand = self.file.sqrt;
        let (surface, names) = build_lattice(&spec.lattice, radicand)?;
        let omega = parse_class(&spec.omega_restr, &names, radicand, "omega_restr")?;
        let z = parse_class(&spec.z_restr, &names, radicand, "z_restr")?;
        let s = spec
            .s_restr
            .as_ref()
            .map(|e| parse_class(e, &names, radicand, "s_restr"))
            .transpose()?;
        Ok(Flag::new(surface, omega, z, s)?)
    }

    pub fn curve(&self) -> Result<CurveData, LoadError> {
        let spec = self
            .file
            .curve
            .as_ref()
            .ok_or_else(|| LoadError::Parse("missing [curve] section".into()))?;
        let radicand = self.file.sqrt;
        let degree = parse_scalar(&spec.degree, radicand, "degree")?;
        let points = spec
            .points
            .iter()
            .map(|p| Ok((p.label.clone(), parse_scalar(&p.t, radicand, &p.label)?)))
            .collect::<Result<Vec<_>, LoadError>>()?;
        Ok(CurveData::new(degree, points)?)
    }
}
