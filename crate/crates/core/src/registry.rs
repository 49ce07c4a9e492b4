//! Meta-level functions and relations named by `cff`, `op`, `arith`
//! and `rel` nodes, plus the evaluator configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type UnaryFn = Arc<dyn Fn(&BigUint) -> BigUint + Send + Sync>;
pub type BinaryFn = Arc<dyn Fn(&BigUint, &BigUint) -> BigUint + Send + Sync>;
pub type Rel2Fn = Arc<dyn Fn(&BigUint, &BigUint) -> bool + Send + Sync>;
pub type Rel3Fn = Arc<dyn Fn(&BigUint, &BigUint, &BigUint) -> bool + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Unary,
    Binary,
    Rel2,
    Rel3,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Unary => "unary function",
            Kind::Binary => "binary function",
            Kind::Rel2 => "binary relation",
            Kind::Rel3 => "ternary relation",
        })
    }
}

/// Something to register under a name.
#[derive(Clone)]
pub enum Entry {
    Unary(UnaryFn),
    /// Total binary function.
    Binary(BinaryFn),
    /// Binary function undefined when the second argument is zero.
    BinaryNonzero(BinaryFn),
    Rel2(Rel2Fn),
    Rel3(Rel3Fn),
}

impl Entry {
    pub fn unary(f: impl Fn(&BigUint) -> BigUint + Send + Sync + 'static) -> Entry {
        Entry::Unary(Arc::new(f))
    }

    pub fn binary(f: impl Fn(&BigUint, &BigUint) -> BigUint + Send + Sync + 'static) -> Entry {
        Entry::Binary(Arc::new(f))
    }

    pub fn rel2(f: impl Fn(&BigUint, &BigUint) -> bool + Send + Sync + 'static) -> Entry {
        Entry::Rel2(Arc::new(f))
    }

    pub fn rel3(f: impl Fn(&BigUint, &BigUint, &BigUint) -> bool + Send + Sync + 'static) -> Entry {
        Entry::Rel3(Arc::new(f))
    }

    pub fn kind(&self) -> Kind {
        match self {
            Entry::Unary(_) => Kind::Unary,
            Entry::Binary(_) | Entry::BinaryNonzero(_) => Kind::Binary,
            Entry::Rel2(_) => Kind::Rel2,
            Entry::Rel3(_) => Kind::Rel3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("no {kind} named `{name}`")]
    Unregistered { kind: Kind, name: String },
    #[error("{kind} `{name}` is already registered")]
    Duplicate { kind: Kind, name: String },
    #[error("`{name}` is undefined at ({args})")]
    Undefined { name: String, args: String },
}

#[derive(Clone)]
struct Binary {
    f: BinaryFn,
    nonzero_rhs: bool,
}

/// Immutable name tables; `register` returns an extended copy.
#[derive(Clone, Default)]
pub struct Registry {
    unary: BTreeMap<String, UnaryFn>,
    binary: BTreeMap<String, Binary>,
    rel2: BTreeMap<String, Rel2Fn>,
    rel3: BTreeMap<String, Rel3Fn>,
}

impl fmt::Debug for Registry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Registry")
            .field("unary", &self.unary.keys().collect::<Vec<_>>())
            .field("binary", &self.binary.keys().collect::<Vec<_>>())
            .field("rel2", &self.rel2.keys().collect::<Vec<_>>())
            .field("rel3", &self.rel3.keys().collect::<Vec<_>>())
            .finish()
    }
}

fn gcd(m: &BigUint, n: &BigUint) -> BigUint {
    m.gcd(n)
}

/// The arithmetic set `+ - × ÷ % max`, the relations `< ≤ =`, and
/// `gcdProp(d, m, n)`, which holds when `d` is the gcd of `m` and `n`.
pub fn default_registry() -> Registry {
    let entries: Vec<(&str, Entry)> = vec![
        ("+", Entry::binary(|m, n| m + n)),
        ("-", Entry::binary(|m, n| if m > n { m - n } else { BigUint::zero() })),
        ("×", Entry::binary(|m, n| m * n)),
        ("÷", Entry::BinaryNonzero(Arc::new(|m, n| m / n))),
        ("%", Entry::BinaryNonzero(Arc::new(|m, n| m % n))),
        ("max", Entry::binary(|m, n| m.max(n).clone())),
        ("<", Entry::rel2(|m, n| m < n)),
        ("≤", Entry::rel2(|m, n| m <= n)),
        ("=", Entry::rel2(|m, n| m == n)),
        ("gcdProp", Entry::rel3(|d, m, n| *d == gcd(m, n))),
    ];
    entries.into_iter().fold(Registry::default(), |reg, (name, entry)| {
        reg.register(name, entry).expect("default names are distinct")
    })
}

impl Registry {
    pub fn empty() -> Registry {
        Registry::default()
    }

    pub fn register(&self, name: &str, entry: Entry) -> Result<Registry, RegistryError> {
        let kind = entry.kind();
        if self.contains(kind, name) {
            return Err(RegistryError::Duplicate { kind, name: name.to_string() });
        }
        let mut out = self.clone();
        let key = name.to_string();
        match entry {
            Entry::Unary(f) => {
                out.unary.insert(key, f);
            }
            Entry::Binary(f) => {
                out.binary.insert(key, Binary { f, nonzero_rhs: false });
            }
            Entry::BinaryNonzero(f) => {
                out.binary.insert(key, Binary { f, nonzero_rhs: true });
            }
            Entry::Rel2(f) => {
                out.rel2.insert(key, f);
            }
            Entry::Rel3(f) => {
                out.rel3.insert(key, f);
            }
        }
        Ok(out)
    }

    pub fn contains(&self, kind: Kind, name: &str) -> bool {
        match kind {
            Kind::Unary => self.unary.contains_key(name),
            Kind::Binary => self.binary.contains_key(name),
            Kind::Rel2 => self.rel2.contains_key(name),
            Kind::Rel3 => self.rel3.contains_key(name),
        }
    }

    pub fn names(&self, kind: Kind) -> Vec<&str> {
        match kind {
            Kind::Unary => self.unary.keys().map(String::as_str).collect(),
            Kind::Binary => self.binary.keys().map(String::as_str).collect(),
            Kind::Rel2 => self.rel2.keys().map(String::as_str).collect(),
            Kind::Rel3 => self.rel3.keys().map(String::as_str).collect(),
        }
    }

    /// True when the binary function is undefined at a zero second argument.
    pub fn requires_nonzero_rhs(&self, name: &str) -> bool {
        self.binary.get(name).is_some_and(|b| b.nonzero_rhs)
    }

    fn unregistered(kind: Kind, name: &str) -> RegistryError {
        RegistryError::Unregistered { kind, name: name.to_string() }
    }

    pub fn apply1(&self, name: &str, m: &BigUint) -> Result<BigUint, RegistryError> {
        let f = self.unary.get(name).ok_or_else(|| Self::unregistered(Kind::Unary, name))?;
        Ok(f(m))
    }

    pub fn apply2(&self, name: &str, m: &BigUint, n: &BigUint) -> Result<BigUint, RegistryError> {
        let b = self.binary.get(name).ok_or_else(|| Self::unregistered(Kind::Binary, name))?;
        if b.nonzero_rhs && n.is_zero() {
            return Err(RegistryError::Undefined { name: name.to_string(), args: format!("{m}, {n}") });
        }
        Ok((b.f)(m, n))
    }

    pub fn holds2(&self, name: &str, m: &BigUint, n: &BigUint) -> Result<bool, RegistryError> {
        let r = self.rel2.get(name).ok_or_else(|| Self::unregistered(Kind::Rel2, name))?;
        Ok(r(m, n))
    }

    pub fn holds3(
        &self,
        name: &str,
        x: &BigUint,
        y: &BigUint,
        z: &BigUint,
    ) -> Result<bool, RegistryError> {
        let r = self.rel3.get(name).ok_or_else(|| Self::unregistered(Kind::Rel3, name))?;
        Ok(r(x, y, z))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Sequential steps; the step count is the cost.
    #[default]
    Seq,
    /// Maximal parallel steps; the step count is the span.
    Par,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Seq => "seq",
            Mode::Par => "par",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "seq" => Ok(Mode::Seq),
            "par" => Ok(Mode::Par),
            other => Err(format!("unknown mode `{other}` (expected seq or par)")),
        }
    }
}

pub const DEFAULT_FUEL: u64 = 10_000_000;

pub fn default_word_size() -> BigUint {
    BigUint::one() << 31u32
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    /// Exclusive bound on `op`/`arith` operands.
    pub word_size: BigUint,
    pub mode: Mode,
    /// Maximum number of steps before evaluation gives up.
    pub fuel: u64,
    /// Record every intermediate term.
    pub trace: bool,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { word_size: default_word_size(), mode: Mode::Seq, fuel: DEFAULT_FUEL, trace: false }
    }
}

impl EvalConfig {
    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_fuel(mut self, fuel: u64) -> Self {
        self.fuel = fuel;
        self
    }

    pub fn with_word_size(mut self, w: BigUint) -> Self {
        self.word_size = w;
        self
    }

    pub fn with_trace(mut self, trace: bool) -> Self {
        self.trace = trace;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: u64) -> BigUint {
        BigUint::from(k)
    }

    #[test]
    fn default_functions() {
        let r = default_registry();
        assert_eq!(r.apply2("%", &n(7), &n(3)).unwrap(), n(1));
        assert_eq!(r.apply2("-", &n(1), &n(5)).unwrap(), n(0));
        assert_eq!(r.apply2("-", &n(5), &n(1)).unwrap(), n(4));
        assert_eq!(r.apply2("max", &n(2), &n(9)).unwrap(), n(9));
        assert_eq!(r.apply2("×", &n(6), &n(7)).unwrap(), n(42));
        assert!(matches!(r.apply2("÷", &n(1), &n(0)), Err(RegistryError::Undefined { .. })));
        assert!(matches!(r.apply2("%", &n(1), &n(0)), Err(RegistryError::Undefined { .. })));
        assert!(r.requires_nonzero_rhs("%") && !r.requires_nonzero_rhs("+"));
    }

    #[test]
    fn gcd_prop() {
        let r = default_registry();
        assert!(r.holds3("gcdProp", &n(2), &n(2), &n(4)).unwrap());
        assert!(r.holds3("gcdProp", &n(9), &n(0), &n(9)).unwrap());
        assert!(r.holds3("gcdProp", &n(0), &n(0), &n(0)).unwrap());
        assert!(!r.holds3("gcdProp", &n(1), &n(2), &n(4)).unwrap());
    }

    #[test]
    fn register_is_persistent() {
        let r = default_registry();
        let r2 = r.register("double", Entry::unary(|k| k * 2u32)).unwrap();
        assert_eq!(r2.apply1("double", &n(3)).unwrap(), n(6));
        assert!(r.apply1("double", &n(3)).is_err());
        assert!(matches!(
            r.register("+", Entry::binary(|m, _| m.clone())),
            Err(RegistryError::Duplicate { .. })
        ));
        // a relation may share a name with a function without conflict
        assert!(r.register("+", Entry::rel2(|_, _| true)).is_ok());
    }
}
