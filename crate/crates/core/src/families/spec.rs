//! Symbolic family descriptions and their canonical text form.

use std::fmt;
use std::str::FromStr;

use super::FamilyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TournamentKind {
    Trivial,
    Triangle,
    Linear,
    CircularP,
    PaleyGeneric,
}

impl TournamentKind {
    pub fn name(self) -> &'static str {
        match self {
            TournamentKind::Trivial => "trivial",
            TournamentKind::Triangle => "triangle",
            TournamentKind::Linear => "linear",
            TournamentKind::CircularP => "circular_P",
            TournamentKind::PaleyGeneric => "paley_generic",
        }
    }

    fn parse(s: &str) -> Result<Self, FamilyError> {
        Ok(match s {
            "trivial" => TournamentKind::Trivial,
            "triangle" => TournamentKind::Triangle,
            "linear" => TournamentKind::Linear,
            "circular_P" => TournamentKind::CircularP,
            "paley_generic" => TournamentKind::PaleyGeneric,
            other => return Err(FamilyError::Parse(format!("unknown tournament kind `{other}`"))),
        })
    }
}

/// A catalog family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// Semi-regular tree: sources of out-degree κ, sinks of in-degree λ.
    T { kappa: usize, lambda: usize, r: usize },
    /// Complete bipartite digraph, all edges from the κ side to the λ side.
    K { kappa: usize, lambda: usize },
    /// `K_{κ,κ}` minus a perfect matching, edges from one side to the other.
    CP { kappa: usize },
    /// Cycle of length `2m` with alternating orientation.
    C { m: usize },
    /// Tree of `K_κ` blocks, every vertex in `λ` blocks.
    XUndirected { kappa: usize, lambda: usize, r: usize },
    /// Tree of tournament blocks, every vertex in `λ` blocks.
    XLambdaT {
        tournament: TournamentKind,
        n: Option<usize>,
        lambda: usize,
        out: Option<usize>,
        r: usize,
    },
    /// Every vertex in two copies of a bipartite digraph, as a source in one
    /// and a sink in the other.
    DL { inner: Box<FamilySpec>, r: usize },
    M { kappa: usize, m: usize, r: usize },
    /// `M'(2m)`.
    MPrime { m: usize, r: usize },
    Tournament { kind: TournamentKind, n: Option<usize> },
    GenericBipartite { n: usize, t: usize, seed: u64 },
    LineOf { inner: Box<FamilySpec> },
}

impl FamilySpec {
    pub fn kind_name(&self) -> &'static str {
        match self {
            FamilySpec::T { .. } => "T",
            FamilySpec::K { .. } => "K",
            FamilySpec::CP { .. } => "CP",
            FamilySpec::C { .. } => "C",
            FamilySpec::XUndirected { .. } => "X_undirected",
            FamilySpec::XLambdaT { .. } => "X_lambda_T",
            FamilySpec::DL { .. } => "DL",
            FamilySpec::M { .. } => "M",
            FamilySpec::MPrime { .. } => "Mprime",
            FamilySpec::Tournament { .. } => "tournament",
            FamilySpec::GenericBipartite { .. } => "generic_bipartite",
            FamilySpec::LineOf { .. } => "line_of",
        }
    }

    /// Whether generation yields an exact finite digraph.
    pub fn is_finite(&self) -> bool {
        matches!(
            self,
            FamilySpec::K { .. }
                | FamilySpec::CP { .. }
                | FamilySpec::C { .. }
                | FamilySpec::Tournament { .. }
                | FamilySpec::GenericBipartite { .. }
        )
    }

    /// The same family with the given radius; finite kinds are unchanged.
    pub fn with_radius(&self, radius: usize) -> FamilySpec {
        let mut s = self.clone();
        match &mut s {
            FamilySpec::T { r, .. }
            | FamilySpec::XUndirected { r, .. }
            | FamilySpec::XLambdaT { r, .. }
            | FamilySpec::DL { r, .. }
            | FamilySpec::M { r, .. }
            | FamilySpec::MPrime { r, .. } => *r = radius,
            FamilySpec::LineOf { inner } => **inner = inner.with_radius(radius),
            _ => {}
        }
        s
    }

    pub fn radius(&self) -> Option<usize> {
        match self {
            FamilySpec::T { r, .. }
            | FamilySpec::XUndirected { r, .. }
            | FamilySpec::XLambdaT { r, .. }
            | FamilySpec::DL { r, .. }
            | FamilySpec::M { r, .. }
            | FamilySpec::MPrime { r, .. } => Some(*r),
            FamilySpec::LineOf { inner } => inner.radius(),
            _ => None,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::T { kappa, lambda, r } => write!(f, "T(kappa={kappa},lambda={lambda},r={r})"),
            FamilySpec::K { kappa, lambda } => write!(f, "K(kappa={kappa},lambda={lambda})"),
            FamilySpec::CP { kappa } => write!(f, "CP(kappa={kappa})"),
            FamilySpec::C { m } => write!(f, "C(m={m})"),
            FamilySpec::XUndirected { kappa, lambda, r } => {
                write!(f, "X_undirected(kappa={kappa},lambda={lambda},r={r})")
            }
            FamilySpec::XLambdaT {
                tournament,
                n,
                lambda,
                out,
                r,
            } => {
                write!(f, "X_lambda_T(T={}", tournament.name())?;
                if let Some(n) = n {
                    write!(f, ",n={n}")?;
                }
                write!(f, ",lambda={lambda}")?;
                if let Some(out) = out {
                    write!(f, ",out={out}")?;
                }
                write!(f, ",r={r})")
            }
            FamilySpec::DL { inner, r } => write!(f, "DL({inner},r={r})"),
            FamilySpec::M { kappa, m, r } => write!(f, "M(kappa={kappa},m={m},r={r})"),
            FamilySpec::MPrime { m, r } => write!(f, "Mprime(m={m},r={r})"),
            FamilySpec::Tournament { kind, n } => {
                write!(f, "tournament(kind={}", kind.name())?;
                if let Some(n) = n {
                    write!(f, ",n={n}")?;
                }
                write!(f, ")")
            }
            FamilySpec::GenericBipartite { n, t, seed } => {
                write!(f, "generic_bipartite(n={n},t={t},seed={seed})")
            }
            FamilySpec::LineOf { inner } => write!(f, "line_of({inner})"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser {
            src: compact.as_bytes(),
            pos: 0,
        };
        let spec = p.spec()?;
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(spec)
    }
}

enum Arg {
    Pair(String, String),
    Nested(FamilySpec),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> FamilyError {
        FamilyError::Parse(format!("{what} at offset {}", self.pos))
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), FamilyError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn word(&mut self) -> Result<String, FamilyError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a name or number"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn spec(&mut self) -> Result<FamilySpec, FamilyError> {
        let name = self.word()?;
        self.expect(b'(')?;
        let mut args = Vec::new();
        if self.peek() != Some(b')') {
            loop {
                args.push(self.arg()?);
                if self.peek() == Some(b',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(b')')?;
        build(&name, args)
    }

    fn arg(&mut self) -> Result<Arg, FamilyError> {
        let save = self.pos;
        let key = self.word()?;
        match self.peek() {
            Some(b'=') => {
                self.pos += 1;
                let value = self.word()?;
                Ok(Arg::Pair(key, value))
            }
            Some(b'(') => {
                self.pos = save;
                Ok(Arg::Nested(self.spec()?))
            }
            _ => Err(self.error("expected `=` or `(`")),
        }
    }
}

struct Args {
    kind: String,
    pairs: Vec<(String, String)>,
    nested: Vec<FamilySpec>,
}

impl Args {
    fn take(&mut self, key: &str) -> Option<String> {
        let i = self.pairs.iter().position(|(k, _)| k == key)?;
        Some(self.pairs.remove(i).1)
    }

    fn number(&mut self, key: &str) -> Result<Option<u64>, FamilyError> {
        match self.take(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| {
                FamilyError::Parse(format!("{}: `{key}` expects an integer, got `{v}`", self.kind))
            }),
        }
    }

    fn required(&mut self, key: &str) -> Result<usize, FamilyError> {
        self.number(key)?
            .map(|v| v as usize)
            .ok_or_else(|| FamilyError::Parse(format!("{}: missing `{key}`", self.kind)))
    }

    fn optional(&mut self, key: &str) -> Result<Option<usize>, FamilyError> {
        Ok(self.number(key)?.map(|v| v as usize))
    }

    fn inner(&mut self) -> Result<FamilySpec, FamilyError> {
        if self.nested.len() != 1 {
            return Err(FamilyError::Parse(format!(
                "{} expects exactly one nested family",
                self.kind
            )));
        }
        Ok(self.nested.remove(0))
    }

    fn finish(self, spec: FamilySpec) -> Result<FamilySpec, FamilyError> {
        if let Some((k, _)) = self.pairs.first() {
            return Err(FamilyError::Parse(format!("{}: unexpected parameter `{k}`", self.kind)));
        }
        if !self.nested.is_empty() {
            return Err(FamilyError::Parse(format!("{}: unexpected nested family", self.kind)));
        }
        Ok(spec)
    }
}

fn build(name: &str, raw: Vec<Arg>) -> Result<FamilySpec, FamilyError> {
    let mut args = Args {
        kind: name.to_string(),
        pairs: Vec::new(),
        nested: Vec::new(),
    };
    for a in raw {
        match a {
            Arg::Pair(k, v) => {
                if args.pairs.iter().any(|(k2, _)| *k2 == k) {
                    return Err(FamilyError::Parse(format!("{name}: `{k}` given twice")));
                }
                args.pairs.push((k, v));
            }
            Arg::Nested(s) => args.nested.push(s),
        }
    }
    let spec = match name {
        "T" => FamilySpec::T {
            kappa: args.required("kappa")?,
            lambda: args.required("lambda")?,
            r: args.required("r")?,
        },
        "K" => FamilySpec::K {
            kappa: args.required("kappa")?,
            lambda: args.required("lambda")?,
        },
        "CP" => FamilySpec::CP {
            kappa: args.required("kappa")?,
        },
        "C" => FamilySpec::C {
            m: args.required("m")?,
        },
        "X_undirected" => FamilySpec::XUndirected {
            kappa: args.required("kappa")?,
            lambda: args.required("lambda")?,
            r: args.required("r")?,
        },
        "X_lambda_T" => {
            let tournament = match args.take("T") {
                Some(t) => TournamentKind::parse(&t)?,
                None => return Err(FamilyError::Parse("X_lambda_T: missing `T`".into())),
            };
            FamilySpec::XLambdaT {
                tournament,
                n: args.optional("n")?,
                lambda: args.required("lambda")?,
                out: args.optional("out")?,
                r: args.required("r")?,
            }
        }
        "DL" => FamilySpec::DL {
            inner: Box::new(args.inner()?),
            r: args.required("r")?,
        },
        "M" => FamilySpec::M {
            kappa: args.required("kappa")?,
            m: args.required("m")?,
            r: args.required("r")?,
        },
        "Mprime" => FamilySpec::MPrime {
            m: args.required("m")?,
            r: args.required("r")?,
        },
        "tournament" => {
            let kind = match args.take("kind") {
                Some(t) => TournamentKind::parse(&t)?,
                None => return Err(FamilyError::Parse("tournament: missing `kind`".into())),
            };
            FamilySpec::Tournament {
                kind,
                n: args.optional("n")?,
            }
        }
        "generic_bipartite" => FamilySpec::GenericBipartite {
            n: args.required("n")?,
            t: args.required("t")?,
            seed: args
                .number("seed")?
                .ok_or_else(|| FamilyError::Parse("generic_bipartite: missing `seed`".into()))?,
        },
        "line_of" => FamilySpec::LineOf {
            inner: Box::new(args.inner()?),
        },
        other => return Err(FamilyError::Parse(format!("unknown family kind `{other}`"))),
    };
    args.finish(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trip() {
        for s in [
            "T(kappa=2,lambda=3,r=2)",
            "K(kappa=2,lambda=3)",
            "CP(kappa=3)",
            "C(m=2)",
            "X_undirected(kappa=3,lambda=2,r=3)",
            "X_lambda_T(T=triangle,lambda=2,r=2)",
            "X_lambda_T(T=linear,n=3,lambda=2,r=2)",
            "X_lambda_T(T=trivial,lambda=3,out=2,r=4)",
            "DL(C(m=2),r=3)",
            "DL(K(kappa=2,lambda=3),r=4)",
            "M(kappa=3,m=2,r=5)",
            "Mprime(m=2,r=4)",
            "tournament(kind=triangle)",
            "tournament(kind=paley_generic,n=7)",
            "generic_bipartite(n=16,t=2,seed=7)",
            "line_of(DL(C(m=2),r=4))",
        ] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn whitespace_and_order() {
        let spec: FamilySpec = " M ( m = 2 , kappa = 3, r=5 ) ".parse().unwrap();
        assert_eq!(spec.to_string(), "M(kappa=3,m=2,r=5)");
        let spec: FamilySpec = "DL(r=3, C(m=2))".parse().unwrap();
        assert_eq!(spec.to_string(), "DL(C(m=2),r=3)");
    }

    #[test]
    fn rejects_bad_input() {
        for s in [
            "Q(m=2)",
            "M(kappa=3,m=2)",
            "M(kappa=3,m=2,r=5,x=1)",
            "M(kappa=3,kappa=4,m=2,r=5)",
            "C(m=two)",
            "C(m=2",
            "C(m=2))",
            "DL(r=3)",
            "tournament(kind=square)",
        ] {
            assert!(s.parse::<FamilySpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn radius_rewrite() {
        let spec: FamilySpec = "line_of(DL(C(m=2),r=4))".parse().unwrap();
        assert_eq!(spec.with_radius(6).to_string(), "line_of(DL(C(m=2),r=6))");
        assert_eq!(spec.radius(), Some(4));
        assert_eq!("CP(kappa=3)".parse::<FamilySpec>().unwrap().radius(), None);
    }
}
