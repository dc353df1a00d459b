//! Constructors for the named graph families.
//!
//! Labeling conventions (stable, relied on by golden tests):
//! - path `0-1-…-(n-1)`, cycle closes `n-1 ~ 0`;
//! - star: centre `0`, leaves `1..n`;
//! - `K_{m,n}`: first part `0..m`, second part `m..m+n`;
//! - windmill `D_m^n` (friendship is `m = 3`): apex `0`, blade `b` uses the
//!   consecutive block `1 + b(m-1) .. 1 + (b+1)(m-1)` walked as a path that
//!   closes through the apex;
//! - book `B_n`: spine `0 ~ 1`, page `p` adds `2+2p ~ 0`, `3+2p ~ 1`,
//!   `2+2p ~ 3+2p`;
//! - Petersen: outer cycle `0..5`, spokes `i ~ i+5`, inner pentagram
//!   `5+i ~ 5+(i+2)%5`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("{family}: parameter {param} = {got} is below the minimum {min}")]
    BelowMinimum {
        family: &'static str,
        param: &'static str,
        min: usize,
        got: usize,
    },
    #[error("{family}: missing required parameter --{param}")]
    MissingParam {
        family: &'static str,
        param: &'static str,
    },
    #[error("unknown family '{name}' (known: {known})")]
    UnknownFamily { name: String, known: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// `S_n = K_{1,n-1}` on `n` vertices.
    Star(usize),
    CompleteBipartite {
        m: usize,
        n: usize,
    },
    /// `F_n`: `n` triangles sharing the apex.
    Friendship(usize),
    /// `D_m^n`: `n` copies of `C_m` sharing the apex.
    DutchWindmill {
        m: usize,
        n: usize,
    },
    /// `B_n`: `n` quadrilaterals sharing the spine edge.
    Book(usize),
    Petersen,
}

impl FamilySpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            FamilySpec::Path(_) => "path",
            FamilySpec::Cycle(_) => "cycle",
            FamilySpec::Complete(_) => "complete",
            FamilySpec::Star(_) => "star",
            FamilySpec::CompleteBipartite { .. } => "bipartite",
            FamilySpec::Friendship(_) => "friendship",
            FamilySpec::DutchWindmill { .. } => "windmill",
            FamilySpec::Book(_) => "book",
            FamilySpec::Petersen => "petersen",
        }
    }

    /// Rejects parameters below each family's minimum.
    pub fn validate(&self) -> Result<(), GenError> {
        let family = self.family_name();
        let check = |param, min, got| {
            if got < min {
                Err(GenError::BelowMinimum {
                    family,
                    param,
                    min,
                    got,
                })
            } else {
                Ok(())
            }
        };
        match *self {
            FamilySpec::Path(n) | FamilySpec::Complete(n) => check("n", 1, n),
            FamilySpec::Cycle(n) => check("n", 3, n),
            FamilySpec::Star(n) => check("n", 2, n),
            FamilySpec::CompleteBipartite { m, n } => {
                check("m", 1, m)?;
                check("n", 1, n)
            }
            FamilySpec::Friendship(n) | FamilySpec::Book(n) => check("n", 1, n),
            FamilySpec::DutchWindmill { m, n } => {
                check("m", 3, m)?;
                check("n", 1, n)
            }
            FamilySpec::Petersen => Ok(()),
        }
    }

    /// `(vertices, edges)` of the generated graph.
    pub fn expected_size(&self) -> (usize, usize) {
        match *self {
            FamilySpec::Path(n) => (n, n - 1),
            FamilySpec::Cycle(n) => (n, n),
            FamilySpec::Complete(n) => (n, n * (n - 1) / 2),
            FamilySpec::Star(n) => (n, n - 1),
            FamilySpec::CompleteBipartite { m, n } => (m + n, m * n),
            FamilySpec::Friendship(n) => (2 * n + 1, 3 * n),
            FamilySpec::DutchWindmill { m, n } => ((m - 1) * n + 1, m * n),
            FamilySpec::Book(n) => (2 * n + 2, 3 * n + 1),
            FamilySpec::Petersen => (10, 15),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::CompleteBipartite { m, n } | FamilySpec::DutchWindmill { m, n } => {
                write!(f, "{}(m={m}, n={n})", self.family_name())
            }
            FamilySpec::Petersen => write!(f, "petersen"),
            FamilySpec::Path(n)
            | FamilySpec::Cycle(n)
            | FamilySpec::Complete(n)
            | FamilySpec::Star(n)
            | FamilySpec::Friendship(n)
            | FamilySpec::Book(n) => write!(f, "{}(n={n})", self.family_name()),
        }
    }
}

fn windmill(m: usize, n: usize) -> Graph {
    let blade = m - 1;
    let mut g = Graph::empty(blade * n + 1);
    for b in 0..n {
        let first = 1 + b * blade;
        g.set_edge(0, first);
        for i in 0..blade - 1 {
            g.set_edge(first + i, first + i + 1);
        }
        g.set_edge(first + blade - 1, 0);
    }
    g
}

pub fn generate(spec: &FamilySpec) -> Result<Graph, GenError> {
    spec.validate()?;
    let g = match *spec {
        FamilySpec::Path(n) => {
            let mut g = Graph::empty(n);
            for i in 1..n {
                g.set_edge(i - 1, i);
            }
            g
        }
        FamilySpec::Cycle(n) => {
            let mut g = Graph::empty(n);
            for i in 0..n {
                g.set_edge(i, (i + 1) % n);
            }
            g
        }
        FamilySpec::Complete(n) => {
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    g.set_edge(u, v);
                }
            }
            g
        }
        FamilySpec::Star(n) => {
            let mut g = Graph::empty(n);
            for v in 1..n {
                g.set_edge(0, v);
            }
            g
        }
        FamilySpec::CompleteBipartite { m, n } => {
            let mut g = Graph::empty(m + n);
            for u in 0..m {
                for v in m..m + n {
                    g.set_edge(u, v);
                }
            }
            g
        }
        FamilySpec::Friendship(n) => windmill(3, n),
        FamilySpec::DutchWindmill { m, n } => windmill(m, n),
        FamilySpec::Book(n) => {
            let mut g = Graph::empty(2 * n + 2);
            g.set_edge(0, 1);
            for p in 0..n {
                let (a, b) = (2 + 2 * p, 3 + 2 * p);
                g.set_edge(0, a);
                g.set_edge(1, b);
                g.set_edge(a, b);
            }
            g
        }
        FamilySpec::Petersen => {
            let mut g = Graph::empty(10);
            for i in 0..5 {
                g.set_edge(i, (i + 1) % 5);
                g.set_edge(i, i + 5);
                g.set_edge(5 + i, 5 + (i + 2) % 5);
            }
            g
        }
    };
    Ok(g)
}

/// Raw family parameters as they arrive from the command line.
#[derive(Debug, Clone, Copy, Default)]
pub struct FamilyArgs {
    pub n: Option<usize>,
    pub m: Option<usize>,
}

/// A named, runtime-selectable graph family.
pub trait GraphFamily: Send + Sync {
    fn name(&self) -> &'static str;
    fn aliases(&self) -> &'static [&'static str] {
        &[]
    }
    /// Parameter names this family reads, in `--flag` form.
    fn params(&self) -> &'static [&'static str];
    fn spec(&self, args: FamilyArgs) -> Result<FamilySpec, GenError>;

    fn build(&self, args: FamilyArgs) -> Result<Graph, GenError> {
        generate(&self.spec(args)?)
    }
}

struct OneParam {
    name: &'static str,
    aliases: &'static [&'static str],
    make: fn(usize) -> FamilySpec,
}

impl GraphFamily for OneParam {
    fn name(&self) -> &'static str {
        self.name
    }
    fn aliases(&self) -> &'static [&'static str] {
        self.aliases
    }
    fn params(&self) -> &'static [&'static str] {
        &["n"]
    }
    fn spec(&self, args: FamilyArgs) -> Result<FamilySpec, GenError> {
        let n = args.n.ok_or(GenError::MissingParam {
            family: self.name,
            param: "n",
        })?;
        let spec = (self.make)(n);
        spec.validate()?;
        Ok(spec)
    }
}

struct TwoParam {
    name: &'static str,
    aliases: &'static [&'static str],
    make: fn(usize, usize) -> FamilySpec,
}

impl GraphFamily for TwoParam {
    fn name(&self) -> &'static str {
        self.name
    }
    fn aliases(&self) -> &'static [&'static str] {
        self.aliases
    }
    fn params(&self) -> &'static [&'static str] {
        &["m", "n"]
    }
    fn spec(&self, args: FamilyArgs) -> Result<FamilySpec, GenError> {
        let m = args.m.ok_or(GenError::MissingParam {
            family: self.name,
            param: "m",
        })?;
        let n = args.n.ok_or(GenError::MissingParam {
            family: self.name,
            param: "n",
        })?;
        let spec = (self.make)(m, n);
        spec.validate()?;
        Ok(spec)
    }
}

struct PetersenFamily;

impl GraphFamily for PetersenFamily {
    fn name(&self) -> &'static str {
        "petersen"
    }
    fn params(&self) -> &'static [&'static str] {
        &[]
    }
    fn spec(&self, _: FamilyArgs) -> Result<FamilySpec, GenError> {
        Ok(FamilySpec::Petersen)
    }
}

/// Families looked up by name or alias.
pub struct FamilyRegistry {
    families: Vec<Box<dyn GraphFamily>>,
    by_name: BTreeMap<&'static str, usize>,
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        FamilyRegistry {
            families: Vec::new(),
            by_name: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, family: Box<dyn GraphFamily>) {
        let idx = self.families.len();
        self.by_name.insert(family.name(), idx);
        for alias in family.aliases() {
            self.by_name.insert(alias, idx);
        }
        self.families.push(family);
    }

    pub fn standard() -> Self {
        let mut r = Self::empty();
        let one: [(
            &'static str,
            &'static [&'static str],
            fn(usize) -> FamilySpec,
        ); 6] = [
            ("path", &["p"], FamilySpec::Path),
            ("cycle", &["c"], FamilySpec::Cycle),
            ("complete", &["k"], FamilySpec::Complete),
            ("star", &["s"], FamilySpec::Star),
            ("friendship", &["f"], FamilySpec::Friendship),
            ("book", &["b"], FamilySpec::Book),
        ];
        for (name, aliases, make) in one {
            r.register(Box::new(OneParam {
                name,
                aliases,
                make,
            }));
        }
        r.register(Box::new(TwoParam {
            name: "bipartite",
            aliases: &["complete-bipartite", "kmn"],
            make: |m, n| FamilySpec::CompleteBipartite { m, n },
        }));
        r.register(Box::new(TwoParam {
            name: "windmill",
            aliases: &["dutch-windmill", "dutch"],
            make: |m, n| FamilySpec::DutchWindmill { m, n },
        }));
        r.register(Box::new(PetersenFamily));
        r
    }

    pub fn get(&self, name: &str) -> Result<&dyn GraphFamily, GenError> {
        let key = name.to_ascii_lowercase();
        self.by_name
            .get(key.as_str())
            .map(|&i| self.families[i].as_ref())
            .ok_or_else(|| GenError::UnknownFamily {
                name: name.to_string(),
                known: self.names().join(", "),
            })
    }

    /// Primary names in registration order.
    pub fn names(&self) -> Vec<&'static str> {
        self.families.iter().map(|f| f.name()).collect()
    }
}
